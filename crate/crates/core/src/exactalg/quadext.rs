use std::fmt;

use crate::error::{Error, Result};
use crate::polyalg::{RatFunc, VarImage};

/// `a + b·s` with `s² = radicand`, coefficients rational functions.
#[derive(Clone)]
pub struct QuadExt {
    pub a: RatFunc,
    pub b: RatFunc,
    radicand: RatFunc,
}

impl QuadExt {
    pub fn new(a: RatFunc, b: RatFunc, radicand: RatFunc) -> Self {
        QuadExt { a, b, radicand }
    }

    /// Embeds a rational function (`b = 0`).
    pub fn rational(a: RatFunc, radicand: &RatFunc) -> Self {
        let b = RatFunc::zero(a.table());
        QuadExt {
            a,
            b,
            radicand: radicand.clone(),
        }
    }

    /// The formal square root `s` itself.
    pub fn root(radicand: &RatFunc) -> Self {
        let t = radicand.table();
        QuadExt {
            a: RatFunc::zero(t),
            b: RatFunc::one(t),
            radicand: radicand.clone(),
        }
    }

    pub fn radicand(&self) -> &RatFunc {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `Some(a)` when the element lies in the base field.
    pub fn as_rational(&self) -> Option<&RatFunc> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            radicand: self.radicand.clone(),
        }
    }

    /// `a² − b²·radicand`.
    pub fn norm(&self) -> RatFunc {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.radicand)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        QuadExt {
            a: &self.a * c,
            b: &self.b * c,
            radicand: self.radicand.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.recip()?;
        Ok(self.conj().scale(&inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// Applies a derivation, using `D(s) = D(radicand)/(2·radicand) · s`.
    pub fn derivation<'a>(&self, image: &impl Fn(usize) -> Option<VarImage<'a>>) -> Result<Self> {
        let da = self.a.derivation(image);
        let db = self.b.derivation(image);
        let dr = self.radicand.derivation(image);
        let half = crate::exactalg::Rational::new(1, 2);
        let ds_over_s = dr.checked_div(&self.radicand)?.scale(&half);
        Ok(QuadExt {
            a: da,
            b: &db + &(&self.b * &ds_over_s),
            radicand: self.radicand.clone(),
        })
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.a.equals(&other.a) && self.b.equals(&other.b)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl std::ops::Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            radicand: self.radicand.clone(),
        }
    }
}

impl std::ops::Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            radicand: self.radicand.clone(),
        }
    }
}

impl std::ops::Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            radicand: self.radicand.clone(),
        }
    }
}

impl std::ops::Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let bb = &(&self.b * &rhs.b) * &self.radicand;
        QuadExt {
            a: &(&self.a * &rhs.a) + &bb,
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
            radicand: self.radicand.clone(),
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "({})*sqrt({})", self.b, self.radicand);
        }
        write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.radicand)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_expression, VarTable};
    use proptest::prelude::*;

    fn elem(t: &crate::polyalg::TableRef, a: &str, b: &str, r: &RatFunc) -> QuadExt {
        QuadExt::new(parse_expression(a, t).unwrap(), parse_expression(b, t).unwrap(), r.clone())
    }

    #[test]
    fn root_squares_to_radicand() {
        let t = VarTable::new(&["x", "y"]).unwrap();
        let r = parse_expression("x^2 - y", &t).unwrap();
        let s = QuadExt::root(&r);
        assert_eq!((&s * &s).as_rational().unwrap(), &r);
        let inv = s.recip().unwrap();
        assert!((&s * &inv).as_rational().unwrap().is_one());
    }

    #[test]
    fn zero_norm_division_fails() {
        let t = VarTable::new(&["x"]).unwrap();
        let r = parse_expression("x^2", &t).unwrap();
        let z = elem(&t, "x", "-1", &r);
        assert!(z.norm().is_zero());
        assert_eq!(z.recip().unwrap_err(), Error::DivisionByZero);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn associative_and_conjugation_multiplicative(c in proptest::collection::vec(-5i64..6, 6)) {
            let t = VarTable::new(&["x", "y"]).unwrap();
            let r = parse_expression("x*y + 2", &t).unwrap();
            let x = elem(&t, &format!("{}*x + 1", c[0]), &format!("{}", c[1]), &r);
            let y = elem(&t, &format!("{}*y", c[2]), &format!("x - {}", c[3]), &r);
            let z = elem(&t, &format!("{}", c[4]), &format!("{}*x*y + 1", c[5]), &r);
            prop_assert!((&(&x * &y) * &z).equals(&(&x * &(&y * &z))));
            prop_assert!((&x * &y).conj().equals(&(&x.conj() * &y.conj())));
        }
    }
}
