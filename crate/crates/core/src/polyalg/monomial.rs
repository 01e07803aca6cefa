use std::cmp::Ordering;

use smallvec::SmallVec;

/// Sparse power product: `(variable index, exponent)` pairs sorted by index,
/// exponents nonzero. Ordered graded-lexicographically with lower variable
/// indices ranking higher.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    deg: u32,
    vars: SmallVec<[(u16, u16); 6]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let e16 = u16::try_from(e).expect("exponent overflow");
        let mut vars = SmallVec::new();
        vars.push((v as u16, e16));
        Monomial { deg: e, vars }
    }

    /// From a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Self::one();
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                m.vars.push((v as u16, u16::try_from(e).expect("exponent overflow")));
                m.deg += e;
            }
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        match self.vars.binary_search_by_key(&(v as u16), |p| p.0) {
            Ok(i) => self.vars[i].1 as u32,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.vars.iter().map(|&(v, e)| (v as usize, e as u32))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars.last().map(|p| p.0 as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut vars = SmallVec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.vars, &other.vars);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    vars.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).expect("exponent overflow");
                    vars.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&a[i..]);
        vars.extend_from_slice(&b[j..]);
        Monomial {
            deg: self.deg + other.deg,
            vars,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg > self.deg {
            return None;
        }
        let mut vars = SmallVec::with_capacity(self.vars.len());
        let mut j = 0;
        let b = &other.vars;
        for &(v, e) in &self.vars {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => vars.push((v, e - b[j].1)),
                }
                j += 1;
            } else {
                vars.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            vars,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Lowers the exponent of `v` by one; `None` if `v` is absent.
    pub fn without_one(&self, v: usize) -> Option<Monomial> {
        let i = self.vars.binary_search_by_key(&(v as u16), |p| p.0).ok()?;
        let mut m = self.clone();
        if m.vars[i].1 == 1 {
            m.vars.remove(i);
        } else {
            m.vars[i].1 -= 1;
        }
        m.deg -= 1;
        Some(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.vars, &other.vars);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    let e = a[i].1.min(b[j].1);
                    m.vars.push((a[i].0, e));
                    m.deg += e as u32;
                    i += 1;
                    j += 1;
                }
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let mut m = self.clone();
        for p in m.vars.iter_mut() {
            let x = (p.1 as u32).checked_mul(e).expect("exponent overflow");
            p.1 = u16::try_from(x).expect("exponent overflow");
        }
        m.vars.retain(|p| p.1 > 0);
        m.deg *= e;
        m
    }

    /// Rewrites variable indices through `map`; the image must be injective.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Monomial {
        let mut vars: SmallVec<[(u16, u16); 6]> =
            self.vars.iter().map(|&(v, e)| (map(v as usize) as u16, e)).collect();
        vars.sort_unstable_by_key(|p| p.0);
        Monomial { deg: self.deg, vars }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.vars.iter().zip(other.vars.iter()) {
                if a.0 != b.0 {
                    // the monomial carrying the earlier variable is larger
                    return if a.0 < b.0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.vars.len().cmp(&other.vars.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x3 = Monomial::from_exponents(&[3, 0]);
        let xy2 = Monomial::from_exponents(&[1, 2]);
        let y4 = Monomial::from_exponents(&[0, 4]);
        let x2 = Monomial::from_exponents(&[2, 0]);
        assert!(x3 > xy2);
        assert!(y4 > x3);
        assert!(xy2 > x2);
    }

    #[test]
    fn mul_div_gcd() {
        let a = Monomial::from_exponents(&[2, 1, 0, 3]);
        let b = Monomial::from_exponents(&[1, 0, 2]);
        let p = a.mul(&b);
        assert_eq!(p, Monomial::from_exponents(&[3, 1, 2, 3]));
        assert_eq!(p.div(&b).unwrap(), a);
        assert!(a.div(&b).is_none());
        assert_eq!(a.gcd(&b), Monomial::from_exponents(&[1]));
        assert_eq!(a.without_one(3).unwrap(), Monomial::from_exponents(&[2, 1, 0, 2]));
    }
}
