use std::fmt;

use super::monomial::Monomial;
use super::poly::{write_monomial, MultiPoly, VarImage};
use super::vartable::{unify_tables, TableRef};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Quotient of polynomials with a partially factored denominator.
///
/// The denominator is `mono · Π q_i^{e_i}` where each `q_i` is primitive
/// (integer coefficients with gcd 1, positive leading coefficient, no
/// monomial content) and the `q_i` are pairwise distinct. All rational
/// content lives in the numerator. Cancellation is best effort: common
/// factors that are whole `q_i` or monomials are removed, nothing else.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    mono: Monomial,
    factors: Vec<(MultiPoly, u32)>,
}

impl RatFunc {
    pub fn zero(table: &TableRef) -> Self {
        Self::from_poly(MultiPoly::zero(table))
    }

    pub fn one(table: &TableRef) -> Self {
        Self::from_poly(MultiPoly::one(table))
    }

    pub fn constant(table: &TableRef, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(table, c))
    }

    pub fn var(table: &TableRef, v: usize) -> Self {
        Self::from_poly(MultiPoly::var(table, v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            mono: Monomial::one(),
            factors: Vec::new(),
        }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        Self::from_parts(num, Monomial::one(), vec![(den, 1)])
    }

    /// `num / (mono · Π p^e)` with arbitrary nonzero `p`, normalized.
    fn from_parts(num: MultiPoly, mono: Monomial, parts: Vec<(MultiPoly, u32)>) -> Result<Self> {
        let mut table = num.table().clone();
        let mut scale = Rational::one();
        let mut mono = mono;
        let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
        for (p, e) in parts {
            if p.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if e == 0 {
                continue;
            }
            table = unify_tables(&table, p.table()).ok_or(Error::TableMismatch)?;
            let c = p.content();
            scale = &scale * &c.pow(e);
            let m = p.monomial_content();
            let q = p.scale(&c.recip());
            let q = if m.is_one() {
                q
            } else {
                mono = mono.mul(&m.pow(e));
                let mut terms = Vec::with_capacity(q.len());
                for (t, k) in q.terms() {
                    terms.push((t.div(&m).unwrap(), k.clone()));
                }
                MultiPoly::from_terms(&table, terms)
            };
            if q.is_constant() {
                continue;
            }
            push_factor(&mut factors, q, e);
        }
        let num = num.scale(&scale.recip()).with_table(&table);
        let mut r = RatFunc { num, mono, factors };
        r.cancel();
        Ok(r)
    }

    /// Removes monomials and whole factors that divide the numerator.
    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.mono = Monomial::one();
            self.factors.clear();
            return;
        }
        if !self.mono.is_one() {
            let g = self.num.monomial_content().gcd(&self.mono);
            if !g.is_one() {
                self.mono = self.mono.div(&g).unwrap();
                let t = self.num.table().clone();
                self.num = MultiPoly::from_terms(&t, self.num.terms().iter().map(|(m, c)| (m.div(&g).unwrap(), c.clone())));
            }
        }
        let mut i = 0;
        while i < self.factors.len() {
            while self.factors[i].1 > 0 && plausibly_divides(&self.factors[i].0, &self.num) {
                match self.num.div_exact(&self.factors[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.factors[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.factors[i].1 == 0 {
                self.factors.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn table(&self) -> &TableRef {
        self.num.table()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    /// The denominator expanded into a single polynomial.
    pub fn denom(&self) -> MultiPoly {
        let t = self.num.table();
        let mut d = MultiPoly::term(t, self.mono.clone(), Rational::one());
        for (q, e) in &self.factors {
            d = &d * &q.pow(*e);
        }
        d
    }

    pub fn denom_monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn denom_factors(&self) -> &[(MultiPoly, u32)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.mono.is_one() && self.factors.is_empty()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(MultiPoly::as_constant)
    }

    pub fn is_one(&self) -> bool {
        self.is_polynomial() && self.num.is_one()
    }

    /// Variables occurring in numerator or denominator.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs = self.num.variables();
        vs.extend(self.mono.iter().map(|p| p.0));
        for (q, _) in &self.factors {
            vs.extend(q.variables());
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.table());
        }
        RatFunc {
            num: self.num.scale(c),
            mono: self.mono.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        self * &RatFunc::from_poly(p.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = self.num.table().clone();
        let num = self
            .factors
            .iter()
            .fold(MultiPoly::term(&t, self.mono.clone(), Rational::one()), |acc, (q, e)| &acc * &q.pow(*e));
        Self::from_parts(num, Monomial::one(), vec![(self.num.clone(), 1)])
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        if k == 0 {
            return Ok(Self::one(self.table()));
        }
        Ok(RatFunc {
            num: base.num.pow(k),
            mono: base.mono.pow(k),
            factors: base.factors.iter().map(|(q, f)| (q.clone(), f * k)).collect(),
        })
    }

    /// Common denominator data: the lcm as (monomial, factors) and the
    /// cofactors turning each denominator into it.
    fn lcm_with(&self, other: &Self) -> (Monomial, Vec<(MultiPoly, u32)>, MultiPoly, MultiPoly) {
        let t = unify_tables(self.table(), other.table()).expect("incompatible variable tables");
        let mut mono = self.mono.clone();
        for (v, e) in other.mono.iter() {
            if e > mono.exponent(v) {
                mono = mono.mul(&Monomial::var_pow(v, e - mono.exponent(v)));
            }
        }
        let mut factors = self.factors.clone();
        for (q, e) in &other.factors {
            match factors.iter_mut().find(|f| &f.0 == q) {
                Some(f) => f.1 = f.1.max(*e),
                None => factors.push((q.clone(), *e)),
            }
        }
        let cof = |r: &RatFunc| {
            let mut c = MultiPoly::term(&t, mono.div(&r.mono).unwrap(), Rational::one());
            for (q, e) in &factors {
                let have = r.factors.iter().find(|f| &f.0 == q).map_or(0, |f| f.1);
                if *e > have {
                    c = &c * &q.pow(e - have);
                }
            }
            c
        };
        let (ca, cb) = (cof(self), cof(other));
        (mono, factors, ca, cb)
    }

    fn add_sub(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let (mono, factors, ca, cb) = self.lcm_with(other);
        let a = &self.num * &ca;
        let b = &other.num * &cb;
        let num = if negate { &a - &b } else { &a + &b };
        let mut r = RatFunc { num, mono, factors };
        r.cancel();
        r
    }

    /// Applies a derivation given by the images of variables (see
    /// [`MultiPoly::derivation`]).
    pub fn derivation<'a>(&self, image: &impl Fn(usize) -> Option<VarImage<'a>>) -> Self {
        let dn = self.num.derivation(image);
        if self.is_polynomial() {
            return RatFunc::from_poly(dn);
        }
        let t = dn.table().clone();
        // D(n/d) = (D(n)·M·S − n·Σ (D(p)/p)·M·S) / (d·M·S) over the denominator parts p with D(p) ≠ 0
        let mono_vars: Vec<(usize, u32, MultiPoly)> = self
            .mono
            .iter()
            .filter_map(|(v, e)| {
                let d = MultiPoly::var(&t, v).derivation(image);
                (!d.is_zero()).then_some((v, e, d))
            })
            .collect();
        let fac_ders: Vec<(usize, MultiPoly)> = self
            .factors
            .iter()
            .enumerate()
            .filter_map(|(i, (q, _))| {
                let d = q.derivation(image);
                (!d.is_zero()).then_some((i, d))
            })
            .collect();
        if mono_vars.is_empty() && fac_ders.is_empty() {
            let mut r = RatFunc {
                num: dn,
                mono: self.mono.clone(),
                factors: self.factors.clone(),
            };
            r.cancel();
            return r;
        }
        let mm = mono_vars.iter().fold(Monomial::one(), |acc, (v, _, _)| acc.mul(&Monomial::var(*v)));
        let s_all = fac_ders
            .iter()
            .fold(MultiPoly::term(&t, mm.clone(), Rational::one()), |acc, (i, _)| &acc * &self.factors[*i].0);
        let mut sum = MultiPoly::zero(&t);
        for (v, e, d) in &mono_vars {
            let rest = mm.div(&Monomial::var(*v)).unwrap();
            let others = fac_ders.iter().fold(d.mul_term(&rest, &Rational::from_int(*e as i64)), |acc, (i, _)| {
                &acc * &self.factors[*i].0
            });
            sum = &sum + &others;
        }
        for (k, (i, d)) in fac_ders.iter().enumerate() {
            let mut term = d.mul_term(&mm, &Rational::from_int(self.factors[*i].1 as i64));
            for (j, (i2, _)) in fac_ders.iter().enumerate() {
                if j != k {
                    term = &term * &self.factors[*i2].0;
                }
            }
            sum = &sum + &term;
        }
        let num = &(&dn * &s_all) - &(&self.num * &sum);
        let mut factors = self.factors.clone();
        for (i, _) in &fac_ders {
            factors[*i].1 += 1;
        }
        let mut r = RatFunc {
            num,
            mono: self.mono.mul(&mm),
            factors,
        };
        r.cancel();
        r
    }

    pub fn partial(&self, v: usize) -> Self {
        self.derivation(&|w| (w == v).then_some(VarImage::One))
    }

    /// Substitutes rational functions for variables (identity where `image`
    /// is `None`).
    pub fn substitute(&self, target: &TableRef, image: &impl Fn(usize) -> Option<RatFunc>) -> Result<Self> {
        let mut cache: Vec<(usize, Option<RatFunc>)> = Vec::new();
        for v in self.variables() {
            cache.push((v, image(v)));
        }
        let lookup = |v: usize| cache.iter().find(|c| c.0 == v).and_then(|c| c.1.clone());
        let all_poly = cache.iter().all(|c| c.1.as_ref().is_none_or(RatFunc::is_polynomial));
        if all_poly {
            let pim = |v: usize| lookup(v).map(|r| r.num);
            let num = self.num.substitute(target, &pim);
            let mono = MultiPoly::term(self.table(), self.mono.clone(), Rational::one()).substitute(target, &pim);
            let mut parts = vec![(mono, 1)];
            for (q, e) in &self.factors {
                parts.push((q.substitute(target, &pim), *e));
            }
            return Self::from_parts(num, Monomial::one(), parts);
        }
        let sub_poly = |p: &MultiPoly| -> Result<RatFunc> {
            let mut acc = RatFunc::zero(target);
            for (m, c) in p.terms() {
                let mut t = RatFunc::constant(target, c.clone());
                for (v, e) in m.iter() {
                    let x = lookup(v).unwrap_or_else(|| RatFunc::var(target, v));
                    t = &t * &x.pow(e as i32)?;
                }
                acc = &acc + &t;
            }
            Ok(acc)
        };
        let mut den = sub_poly(&MultiPoly::term(self.table(), self.mono.clone(), Rational::one()))?;
        for (q, e) in &self.factors {
            den = &den * &sub_poly(q)?.pow(*e as i32)?;
        }
        sub_poly(&self.num)?.checked_div(&den)
    }

    pub fn eval(&self, value: &impl Fn(usize) -> Rational) -> Result<Rational> {
        let d = self.denom().eval(value);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(value) / &d)
    }

    /// Exact equality by cross-multiplication over the common denominator.
    pub fn equals(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (_, _, ca, cb) = self.lcm_with(other);
        &self.num * &ca == &other.num * &cb
    }
}

fn push_factor(factors: &mut Vec<(MultiPoly, u32)>, q: MultiPoly, e: u32) {
    match factors.iter_mut().find(|f| f.0 == q) {
        Some(f) => f.1 += e,
        None => factors.push((q, e)),
    }
}

/// Cheap necessary condition for `d | n`: per-variable degrees fit.
fn plausibly_divides(d: &MultiPoly, n: &MultiPoly) -> bool {
    if d.total_degree() > n.total_degree() || d.len() > 1 && n.len() < 2 {
        return false;
    }
    d.variables().iter().all(|&v| d.degree_in(v) <= n.degree_in(v))
}

/// True iff `f.num·g.den − g.num·f.den` vanishes.
pub fn ratfunc_equal(f: &RatFunc, g: &RatFunc) -> Result<bool> {
    unify_tables(f.table(), g.table()).ok_or(Error::TableMismatch)?;
    Ok(f.equals(g))
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl std::ops::Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_sub(rhs, false)
    }
}

impl std::ops::Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_sub(rhs, true)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.scale(&Rational::from_int(-1))
    }
}

impl std::ops::Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let t = unify_tables(self.table(), rhs.table()).expect("incompatible variable tables");
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(&t);
        }
        // cancel each numerator against the other denominator first
        let mut a = RatFunc {
            num: self.num.clone(),
            mono: rhs.mono.clone(),
            factors: rhs.factors.clone(),
        };
        a.cancel();
        let mut b = RatFunc {
            num: rhs.num.clone(),
            mono: self.mono.clone(),
            factors: self.factors.clone(),
        };
        b.cancel();
        let mut factors = a.factors;
        for (q, e) in b.factors {
            push_factor(&mut factors, q, e);
        }
        RatFunc {
            num: &a.num * &b.num,
            mono: a.mono.mul(&b.mono),
            factors,
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let single = self.mono.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1;
        let mut first = true;
        if !self.mono.is_one() {
            write_monomial(f, self.table(), &self.mono)?;
            first = false;
        }
        for (q, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if q.is_monomial() || single {
                write!(f, "{q}")?;
            } else {
                write!(f, "({q})")?;
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::VarTable;

    fn t() -> TableRef {
        VarTable::new(&["x", "y"]).unwrap()
    }

    fn lin(t: &TableRef, a: i64, b: i64, c: i64) -> MultiPoly {
        MultiPoly::from_terms(
            t,
            vec![
                (Monomial::var(0), Rational::from_int(a)),
                (Monomial::var(1), Rational::from_int(b)),
                (Monomial::one(), Rational::from_int(c)),
            ],
        )
    }

    #[test]
    fn cancels_whole_factors() {
        let t = t();
        let xm1 = lin(&t, 1, 0, -1);
        let xp1 = lin(&t, 1, 0, 1);
        let r = RatFunc::new(&xm1 * &xp1, xm1.clone()).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &xp1);
        let s = &RatFunc::new(xp1.clone(), xm1.clone()).unwrap() * &RatFunc::from_poly(xm1);
        assert_eq!(s.as_poly(), Some(&xp1));
    }

    #[test]
    fn denominator_sign_and_content() {
        let t = t();
        let r = RatFunc::new(MultiPoly::one(&t), lin(&t, -2, 4, 0)).unwrap();
        // 1/(-2x + 4y) = (-1/2)/(x - 2y)
        assert_eq!(r.to_string(), "(-1/2)/(x - 2*y)");
    }

    #[test]
    fn quotient_rule() {
        let t = t();
        let inv_x = RatFunc::new(MultiPoly::one(&t), MultiPoly::var(&t, 0)).unwrap();
        let d = inv_x.partial(0);
        let expect = RatFunc::new(MultiPoly::constant(&t, Rational::from_int(-1)), MultiPoly::var(&t, 0).pow(2)).unwrap();
        assert!(d.equals(&expect));
        let f = RatFunc::new(lin(&t, 1, 1, 0), lin(&t, 1, -1, 3)).unwrap();
        let g = f.partial(0).partial(1);
        let h = f.partial(1).partial(0);
        assert!(g.equals(&h));
    }

    #[test]
    fn sums_share_denominators() {
        let t = t();
        let a = RatFunc::new(MultiPoly::one(&t), lin(&t, 1, 0, -1)).unwrap();
        let b = RatFunc::new(MultiPoly::one(&t), lin(&t, 1, 0, 1)).unwrap();
        let s = &a + &b;
        let expect = RatFunc::new(lin(&t, 2, 0, 0), &lin(&t, 1, 0, -1) * &lin(&t, 1, 0, 1)).unwrap();
        assert!(s.equals(&expect));
        assert!((&a - &a).is_zero());
    }
}
