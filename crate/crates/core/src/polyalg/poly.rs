use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::vartable::{unify_tables, TableRef};
use crate::exactalg::rational::{denominator_lcm, numerator_gcd};
use crate::exactalg::Rational;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted in decreasing graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly {
    table: TableRef,
    terms: Vec<(Monomial, Rational)>,
}

/// Image of a variable under a derivation, specialised for the common cases.
pub enum VarImage<'a> {
    One,
    Var(usize),
    Poly(&'a MultiPoly),
}

fn unify(a: &TableRef, b: &TableRef) -> TableRef {
    unify_tables(a, b).expect("polynomials over incompatible variable tables")
}

impl MultiPoly {
    pub fn zero(table: &TableRef) -> Self {
        MultiPoly {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(table: &TableRef, c: Rational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn one(table: &TableRef) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn var(table: &TableRef, v: usize) -> Self {
        Self::term(table, Monomial::var(v), Rational::one())
    }

    pub fn term(table: &TableRef, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(table: &TableRef, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(table, acc)
    }

    fn from_map(table: &TableRef, acc: FxHashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub(crate) fn with_table(mut self, table: &TableRef) -> Self {
        self.table = table.clone();
        self
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.iter().flat_map(|(m, _)| m.iter().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            // multiplication by a monomial preserves the order
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let table = unify(&self.table, &other.table);
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    terms.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        terms.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            terms.push((t.0.clone(), c));
        }
        MultiPoly { table, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(&self.table);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Self::term(&self.table, m.pow(e), c.pow(e));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable index `v`.
    pub fn partial(&self, v: usize) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                terms.push((m.without_one(v).unwrap(), c * &Rational::from_int(e as i64)));
            }
        }
        Self::from_terms(&self.table, terms)
    }

    /// Applies the derivation `Σ_v image(v) ∂/∂v`; variables mapped to
    /// `None` are treated as constants.
    pub fn derivation<'a>(&self, image: &impl Fn(usize) -> Option<VarImage<'a>>) -> Self {
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        let mut table = self.table.clone();
        let mut add = |m: Monomial, c: Rational| {
            if let Some(v) = acc.get_mut(&m) {
                *v += &c;
            } else {
                acc.insert(m, c);
            }
        };
        for (m, c) in &self.terms {
            for (v, e) in m.iter() {
                let Some(img) = image(v) else { continue };
                let rest = m.without_one(v).unwrap();
                let k = c * &Rational::from_int(e as i64);
                match img {
                    VarImage::One => add(rest, k),
                    VarImage::Var(w) => add(rest.mul(&Monomial::var(w)), k),
                    VarImage::Poly(p) => {
                        table = unify(&table, &p.table);
                        for (pm, pc) in &p.terms {
                            add(rest.mul(pm), &k * pc);
                        }
                    }
                }
            }
        }
        Self::from_map(&table, acc)
    }

    /// Evaluates with `value(v)` for every occurring variable.
    pub fn eval(&self, value: &impl Fn(usize) -> Rational) -> Rational {
        let mut cache: FxHashMap<usize, Rational> = FxHashMap::default();
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = cache.entry(v).or_insert_with(|| value(v));
                t = &t * &x.pow(e);
            }
            sum += &t;
        }
        sum
    }

    /// Substitutes polynomials for variables (identity where `image` is `None`),
    /// producing a polynomial over `target`.
    pub fn substitute(&self, target: &TableRef, image: &impl Fn(usize) -> Option<MultiPoly>) -> MultiPoly {
        let mut powers: FxHashMap<(usize, u32), MultiPoly> = FxHashMap::default();
        let mut images: FxHashMap<usize, Option<MultiPoly>> = FxHashMap::default();
        let mut acc = MultiPoly::zero(target);
        let mut table = target.clone();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            let mut keep = Monomial::one();
            for (v, e) in m.iter() {
                let img = images.entry(v).or_insert_with(|| image(v));
                match img {
                    None => keep = keep.mul(&Monomial::var_pow(v, e)),
                    Some(p) => {
                        table = unify(&table, &p.table);
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        t = &t * &*pw;
                    }
                }
            }
            acc = &acc + &t.mul_term(&keep, &Rational::one());
        }
        acc.table = unify(&acc.table, &table);
        acc
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero(&self.table));
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let terms: Option<Vec<_>> = self
                .terms
                .iter()
                .map(|(m, c)| Some((m.div(&dm)?, c / &dc)))
                .collect();
            return Some(MultiPoly {
                table: unify(&self.table, &d.table),
                terms: terms?,
            });
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        // the remainder's leading monomial must stay divisible by lm(d)
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let dinv = dc.recip();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&dm)?;
            let qc = &c * &dinv;
            for (tm, tc) in &d.terms[1..] {
                let key = tm.mul(&qm);
                let delta = &qc * tc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let v = o.get() - &delta;
                        if v.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MultiPoly {
            table: unify(&self.table, &d.table),
            terms: quot,
        })
    }

    /// Largest monomial dividing every term (1 for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut g = first.0.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Rational content `c` with `self / c` integral, coprime and with positive
    /// leading coefficient.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let l = denominator_lcm(self.terms.iter().map(|t| &t.1));
        let g = numerator_gcd(self.terms.iter().map(|t| &t.1));
        let mut c = Rational::from_big(num_rational::BigRational::new(g, l));
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        c
    }

    pub fn primitive_part(&self) -> MultiPoly {
        let c = self.content();
        if c.is_one() {
            self.clone()
        } else {
            self.scale(&c.recip())
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero()
            && !self.terms[0].1.is_negative()
            && self.terms.iter().all(|t| t.1.is_integer())
            && self.content().is_one()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let table = unify(&self.table, &rhs.table);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(&table);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1).with_table(&table);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1).with_table(&table);
        }
        let mut acc: FxHashMap<Monomial, Rational> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * rhs.terms.len() / 2, Default::default());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_map(&table, acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, table: &TableRef, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, e) in m.iter() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", table.name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.table, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::VarTable;

    fn xy() -> TableRef {
        VarTable::new(&["x", "y", "z"]).unwrap()
    }

    fn p(t: &TableRef, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(t, terms.iter().map(|(e, c)| (Monomial::from_exponents(e), Rational::from_int(*c))))
    }

    #[test]
    fn printing_is_grlex() {
        let t = xy();
        let f = p(&t, &[(&[1, 2], 3), (&[3, 0], 1), (&[], -2)]);
        assert_eq!(f.to_string(), "x^3 + 3*x*y^2 - 2");
    }

    #[test]
    fn exact_division() {
        let t = xy();
        let a = p(&t, &[(&[1], 1), (&[0, 1], 1)]);
        let b = p(&t, &[(&[1], 1), (&[0, 1], -1), (&[0, 0, 1], 2)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let c = &prod + &MultiPoly::one(&t);
        assert!(c.div_exact(&a).is_none());
    }

    #[test]
    fn content_and_primitive() {
        let t = xy();
        let f = MultiPoly::from_terms(
            &t,
            vec![
                (Monomial::from_exponents(&[1]), Rational::new(-3, 2)),
                (Monomial::from_exponents(&[0, 1]), Rational::new(9, 4)),
            ],
        );
        let pp = f.primitive_part();
        assert!(pp.is_primitive());
        assert_eq!(pp.to_string(), "2*x - 3*y");
        assert_eq!(f.content(), Rational::new(-3, 4));
    }

    #[test]
    fn substitution_composes() {
        let t = xy();
        let f = p(&t, &[(&[2], 1), (&[0, 1], 1)]);
        let g = f.substitute(&t, &|v| (v == 0).then(|| p(&t, &[(&[0, 1], 1), (&[], 1)])));
        // (y+1)^2 + y
        assert_eq!(g, p(&t, &[(&[0, 2], 1), (&[0, 1], 3), (&[], 1)]));
    }
}
