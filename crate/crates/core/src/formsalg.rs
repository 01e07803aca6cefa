//! Binary and ternary forms: restriction of jet functions, Sylvester
//! resultants and discriminants, algebraic invariants and SL2-equivalence of
//! cubics and quartics.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Rational};
use crate::jets::{multi_indices, JetContext, JetFunction, MultiIndex};
use crate::polyalg::{parse_polynomial, scan_names, Monomial, MultiPoly, RatFunc, TableRef, VarTable};

const AXES: [&str; 3] = ["x", "y", "z"];

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| &acc * &Rational::from_int(k))
}

fn multi_factorial(s: &[u32]) -> Rational {
    s.iter().fold(Rational::one(), |acc, &k| &acc * &factorial(k))
}

fn coeff_name(sigma: &[u32]) -> String {
    let parts: Vec<String> = sigma.iter().map(u32::to_string).collect();
    format!("b[{}]", parts.join(","))
}

/// A homogeneous form `φ = Σ b_σ x^σ/σ!` of degree `n` in 2 or 3 variables.
/// Coefficients are polynomials in parameter symbols; the table starts with
/// the axis variables.
#[derive(Clone)]
pub struct Form {
    arity: usize,
    degree: usize,
    table: TableRef,
    coeffs: Vec<MultiPoly>,
}

impl Form {
    /// Builds a form from its `b_σ`, ordered as [`multi_indices`].
    pub fn new(arity: usize, degree: usize, table: TableRef, coeffs: Vec<MultiPoly>) -> Result<Self> {
        if !(2..=3).contains(&arity) {
            return Err(Error::Unsupported(format!("forms in {arity} variables")));
        }
        if table.len() < arity || (0..arity).any(|i| table.name(i) != AXES[i]) {
            return Err(Error::Invalid("form table must start with the axis variables".into()));
        }
        let n = multi_indices(arity, degree as u32).len();
        if coeffs.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| c.variables().iter().any(|&v| v < arity)) {
            return Err(Error::Invalid("form coefficients must not contain axis variables".into()));
        }
        Ok(Form {
            arity,
            degree,
            table,
            coeffs,
        })
    }

    /// The table `x, y (, z), b[σ]…` of the generic form of degree `n`.
    pub fn generic_table(arity: usize, degree: usize) -> Result<TableRef> {
        let mut names: Vec<String> = AXES[..arity].iter().map(|s| s.to_string()).collect();
        names.extend(multi_indices(arity, degree as u32).iter().map(|s| coeff_name(s)));
        VarTable::new(&names)
    }

    /// `Σ b[σ] x^σ/σ!` with symbolic coefficients.
    pub fn generic(arity: usize, degree: usize) -> Result<Self> {
        let table = Self::generic_table(arity, degree)?;
        let coeffs = (0..multi_indices(arity, degree as u32).len())
            .map(|i| MultiPoly::var(&table, arity + i))
            .collect();
        Form::new(arity, degree, table, coeffs)
    }

    /// Parses a homogeneous polynomial of the declared degree; symbols other
    /// than the axes become parameters in order of first appearance.
    pub fn parse(text: &str, arity: usize, degree: usize) -> Result<Self> {
        let mut names: Vec<String> = AXES[..arity].iter().map(|s| s.to_string()).collect();
        for n in scan_names(text)? {
            if AXES.contains(&n.as_str()) && !names.contains(&n) {
                return Err(Error::Invalid(format!("`{n}` is not a variable of a form in {arity} variables")));
            }
            if !names.contains(&n) {
                names.push(n);
            }
        }
        let table = VarTable::new(&names)?;
        let p = parse_polynomial(text, &table)?;
        Self::from_polynomial(&p, arity, degree)
    }

    /// Parses either a polynomial or a coefficient list `b[i,j]=value, …`.
    pub fn from_text(text: &str, arity: usize, degree: Option<usize>) -> Result<Self> {
        if text.contains('=') {
            let f = Self::from_coefficients(text, arity)?;
            if degree.is_some_and(|d| d != f.degree) {
                return Err(Error::Invalid(format!(
                    "coefficient list has degree {}, expected {}",
                    f.degree,
                    degree.unwrap()
                )));
            }
            return Ok(f);
        }
        let degree = match degree {
            Some(d) => d,
            None => {
                let mut names: Vec<String> = AXES[..arity].iter().map(|a| a.to_string()).collect();
                for n in crate::polyalg::scan_names(text)? {
                    if !names.contains(&n) {
                        names.push(n);
                    }
                }
                let t = VarTable::new(&names)?;
                let p = parse_polynomial(text, &t)?;
                let axis_degree = |m: &Monomial| (0..arity).map(|i| m.exponent(i)).sum::<u32>();
                p.terms().iter().map(|(m, _)| axis_degree(m)).max().unwrap_or(0) as usize
            }
        };
        Self::parse(text, arity, degree)
    }

    /// Parses `b[i,j]=value, …`; missing coefficients are zero.
    pub fn from_coefficients(text: &str, arity: usize) -> Result<Self> {
        let mut entries: Vec<(MultiIndex, Rational)> = Vec::new();
        // indices contain commas, so entries are split after each value
        let mut rest = text.trim();
        while !rest.is_empty() {
            let rest1 = rest
                .strip_prefix("b[")
                .ok_or_else(|| Error::Invalid(format!("expected `b[..]=value`, found `{rest}`")))?;
            let (inner, tail) = rest1
                .split_once(']')
                .ok_or_else(|| Error::Invalid("unterminated coefficient index".into()))?;
            let idx: MultiIndex = inner
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Invalid(format!("bad coefficient index `{inner}`")))?;
            if idx.len() != arity {
                return Err(Error::Arity {
                    expected: arity,
                    got: idx.len(),
                });
            }
            let tail = tail
                .trim_start()
                .strip_prefix('=')
                .ok_or_else(|| Error::Invalid("expected `=` after coefficient".into()))?;
            let (value, next) = match tail.find([',', ';']) {
                Some(p) => (&tail[..p], &tail[p + 1..]),
                None => (tail, ""),
            };
            let v = Rational::from_str(value.trim()).map_err(|e| Error::Invalid(e.0))?;
            entries.push((idx, v));
            rest = next.trim();
        }
        let degree = entries
            .first()
            .map(|e| e.0.iter().sum::<u32>() as usize)
            .ok_or_else(|| Error::Invalid("empty coefficient list".into()))?;
        if entries.iter().any(|e| e.0.iter().sum::<u32>() as usize != degree) {
            return Err(Error::Invalid("coefficient indices of different degrees".into()));
        }
        let table = VarTable::new(&AXES[..arity])?;
        let coeffs = multi_indices(arity, degree as u32)
            .iter()
            .map(|s| {
                let v = entries.iter().filter(|e| &e.0 == s).fold(Rational::zero(), |a, e| &a + &e.1);
                MultiPoly::constant(&table, v)
            })
            .collect();
        Form::new(arity, degree, table, coeffs)
    }

    /// Reads off `b_σ = σ!·[x^σ]p`; `p` must be homogeneous of degree `n` in
    /// the axis variables.
    pub fn from_polynomial(p: &MultiPoly, arity: usize, degree: usize) -> Result<Self> {
        let table = p.table().clone();
        let sigmas = multi_indices(arity, degree as u32);
        let mut coeffs = vec![MultiPoly::zero(&table); sigmas.len()];
        for (m, c) in p.terms() {
            let sigma: MultiIndex = (0..arity).map(|i| m.exponent(i)).collect();
            if sigma.iter().sum::<u32>() as usize != degree {
                return Err(Error::NotHomogeneous(format!("polynomial is not homogeneous of degree {degree}")));
            }
            let rest = without_axes(m, arity);
            let pos = sigmas.iter().position(|s| *s == sigma).expect("index");
            let t = MultiPoly::term(&table, rest, c * &multi_factorial(&sigma));
            coeffs[pos] = &coeffs[pos] + &t;
        }
        Form::new(arity, degree, table, coeffs)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, sigma: &[u32]) -> Option<&MultiPoly> {
        multi_indices(self.arity, self.degree as u32)
            .iter()
            .position(|s| s == sigma)
            .map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Rational coefficient values when the form has no parameters.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(MultiPoly::as_constant).collect()
    }

    /// The form as a polynomial over its table.
    pub fn polynomial(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero(&self.table);
        for (s, c) in multi_indices(self.arity, self.degree as u32).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let m = Monomial::from_exponents(s);
            acc = &acc + &c.mul_term(&m, &multi_factorial(s).recip());
        }
        acc
    }

    /// `∂φ/∂x_axis`, a form of degree `n − 1`.
    pub fn partial(&self, axis: usize) -> Result<Form> {
        if self.degree == 0 {
            return Err(Error::Degenerate("derivative of a constant form".into()));
        }
        let coeffs = multi_indices(self.arity, self.degree as u32 - 1)
            .iter()
            .map(|s| {
                let mut up = s.clone();
                up[axis] += 1;
                self.coeff(&up).expect("index").clone()
            })
            .collect();
        Form::new(self.arity, self.degree - 1, self.table.clone(), coeffs)
    }

    /// `φ ∘ A⁻¹`.
    pub fn transform(&self, a: &ExactMatrix) -> Result<Form> {
        if a.rows() != self.arity || a.cols() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: a.rows(),
            });
        }
        let b = a.inverse().ok_or_else(|| Error::Degenerate("singular matrix".into()))?;
        let t = &self.table;
        let images: Vec<MultiPoly> = (0..self.arity)
            .map(|i| {
                MultiPoly::from_terms(t, (0..self.arity).map(|j| (Monomial::var(j), b.get(i, j).clone())))
            })
            .collect();
        let p = self
            .polynomial()
            .substitute(t, &|v| (v < self.arity).then(|| images[v].clone()));
        Form::from_polynomial(&p, self.arity, self.degree)
    }

    /// Replaces the `b[σ]` of a generic-form expression by this form's
    /// coefficients.
    pub fn evaluate(&self, expr: &RatFunc) -> Result<RatFunc> {
        let gt = expr.table().clone();
        let sigmas = multi_indices(self.arity, self.degree as u32);
        let map: Vec<Option<MultiPoly>> = (0..gt.len())
            .map(|v| {
                let name = gt.name(v);
                if v < self.arity && name == AXES[v] {
                    return Some(MultiPoly::var(&self.table, v));
                }
                sigmas
                    .iter()
                    .position(|s| coeff_name(s) == name)
                    .map(|i| self.coeffs[i].clone())
            })
            .collect();
        for v in expr.variables() {
            if map[v].is_none() {
                return Err(Error::UnknownVariable(gt.name(v).to_string()));
            }
        }
        let images: Vec<Option<RatFunc>> = map.into_iter().map(|m| m.map(RatFunc::from_poly)).collect();
        expr.substitute(&self.table, &|v| images[v].clone())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.polynomial())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({}, deg {}: {})", self.arity, self.degree, self.polynomial())
    }
}

fn without_axes(m: &Monomial, arity: usize) -> Monomial {
    m.iter()
        .filter(|&(v, _)| v >= arity)
        .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var_pow(v, e)))
}

/// `f|_φ`: every `u_σ` becomes `∂_σ φ`.
pub fn restrict(f: &JetFunction, phi: &Form) -> Result<RatFunc> {
    let ctx = f.ctx();
    if ctx.indep() != phi.arity {
        return Err(Error::Arity {
            expected: phi.arity,
            got: ctx.indep(),
        });
    }
    let base = phi.polynomial();
    let mut images: Vec<(usize, RatFunc)> = Vec::new();
    for v in f.value().variables() {
        let Some(s) = ctx.sigma(v) else { continue };
        let mut g = base.clone();
        for (axis, &k) in s.iter().enumerate() {
            for _ in 0..k {
                g = g.partial(axis);
            }
        }
        images.push((v, RatFunc::from_poly(g)));
    }
    f.value()
        .substitute(&phi.table, &|v| images.iter().find(|i| i.0 == v).map(|i| i.1.clone()))
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>, table: &TableRef) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(table);
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(table);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MultiPoly::zero(table);
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Coefficients of `φ(x, 1)` from `x^n` down to `x^0`.
fn dehomogenized(phi: &Form) -> Vec<MultiPoly> {
    let n = phi.degree as u32;
    (0..=n)
        .rev()
        .map(|i| phi.coeff(&[i, n - i]).expect("index").scale(&multi_factorial(&[i, n - i]).recip()))
        .collect()
}

/// Sylvester determinant of `φ(x, 1)` and `ψ(x, 1)` with formal degrees.
pub fn sylvester_resultant(phi: &Form, psi: &Form) -> Result<RatFunc> {
    if phi.arity != 2 || psi.arity != 2 {
        return Err(Error::Unsupported("resultants are defined for binary forms".into()));
    }
    if phi.is_zero() || psi.is_zero() {
        return Err(Error::Degenerate("resultant of a zero form".into()));
    }
    let table = crate::polyalg::unify_tables(&phi.table, &psi.table).ok_or(Error::TableMismatch)?;
    let (n, m) = (phi.degree, psi.degree);
    let f = dehomogenized(phi);
    let g = dehomogenized(psi);
    let size = n + m;
    if size == 0 {
        return Ok(RatFunc::one(&table));
    }
    let zero = MultiPoly::zero(&table);
    let mut rows = Vec::with_capacity(size);
    for r in 0..m {
        let mut row = vec![zero.clone(); size];
        for (i, c) in f.iter().enumerate() {
            row[r + i] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..n {
        let mut row = vec![zero.clone(); size];
        for (i, c) in g.iter().enumerate() {
            row[r + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(RatFunc::from_poly(bareiss_det(rows, &table)))
}

/// `Discr(φ) = Res(φ_x, φ_y)`.
pub fn discriminant(phi: &Form) -> Result<RatFunc> {
    if phi.arity != 2 || phi.degree < 2 {
        return Err(Error::Unsupported("discriminants need a binary form of degree ≥ 2".into()));
    }
    let fx = phi.partial(0)?;
    let fy = phi.partial(1)?;
    if fx.is_zero() && fy.is_zero() {
        return Err(Error::Degenerate("both partial derivatives vanish".into()));
    }
    if fx.is_zero() || fy.is_zero() {
        return Ok(RatFunc::zero(&phi.table));
    }
    sylvester_resultant(&fx, &fy)
}

/// Bracket-product resultant `Π [l_i, m_j]` of forms given by linear factors
/// `a x + b y`; `[l, m] = a_l b_m − b_l a_m`.
pub fn bracket_resultant(phi: &[(Rational, Rational)], psi: &[(Rational, Rational)]) -> Rational {
    let mut acc = Rational::one();
    for (a1, b1) in phi {
        for (a2, b2) in psi {
            acc = &acc * &(&(a1 * b2) - &(b1 * a2));
        }
    }
    acc
}

/// Binary form with the given linear factors.
pub fn form_from_factors(factors: &[(Rational, Rational)]) -> Result<Form> {
    let table = VarTable::new(&["x", "y"])?;
    let p = factors.iter().fold(MultiPoly::one(&table), |acc, (a, b)| {
        let l = MultiPoly::from_terms(&table, [(Monomial::var(0), a.clone()), (Monomial::var(1), b.clone())]);
        &acc * &l
    });
    Form::from_polynomial(&p, 2, factors.len())
}

/// Renames `u_σ` (all of order `n`) to `b[σ]` over the generic-form table.
pub fn algebraic_invariant(f: &JetFunction, n: usize) -> Result<RatFunc> {
    let ctx = f.ctx();
    let arity = ctx.indep();
    let table = Form::generic_table(arity, n)?;
    let sigmas = multi_indices(arity, n as u32);
    let mut images: Vec<(usize, RatFunc)> = Vec::new();
    for v in f.value().variables() {
        match ctx.sigma(v) {
            Some(s) if s.iter().sum::<u32>() as usize == n => {
                let pos = sigmas.iter().position(|t| t == s).expect("index");
                images.push((v, RatFunc::var(&table, arity + pos)));
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "`{}` is not a jet variable of order {n}",
                    ctx.table().name(v)
                )))
            }
        }
    }
    f.value()
        .substitute(&table, &|v| images.iter().find(|i| i.0 == v).map(|i| i.1.clone()))
}

/// The Hankel apolar `α = 4 b13 b31 − b40 b04 − 3 b22²` of a quartic.
pub fn hankel_alpha() -> RatFunc {
    let ctx = JetContext::new(2, 4).unwrap();
    let f = ctx.parse("4*u[1,3]*u[3,1] - u[4,0]*u[0,4] - 3*u[2,2]^2").unwrap();
    algebraic_invariant(&f, 4).unwrap()
}

/// The Hankel determinant `δ` of a quartic.
pub fn hankel_delta() -> RatFunc {
    let ctx = JetContext::new(2, 4).unwrap();
    let f = ctx
        .parse("u[2,2]*u[4,0]*u[0,4] - u[0,4]*u[3,1]^2 - u[4,0]*u[1,3]^2 + 2*u[1,3]*u[2,2]*u[3,1] - u[2,2]^3")
        .unwrap();
    algebraic_invariant(&f, 4).unwrap()
}

/// Result of an equivalence test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Equivalent,
    Inequivalent,
    Irregular,
}

/// Value of one generating invariant on both forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub name: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub status: Status,
    pub witness: Vec<WitnessEntry>,
    pub notes: Vec<String>,
}

fn invariant_value(phi: &Form, expr: &RatFunc) -> Result<Rational> {
    phi.evaluate(expr)?
        .as_constant()
        .ok_or_else(|| Error::Invalid("form has symbolic coefficients".into()))
}

/// SL2-equivalence of rational binary cubics (by the discriminant) or
/// quartics (by the pair `α, δ`).
pub fn sl2_equivalent(phi: &Form, psi: &Form) -> Result<EquivalenceVerdict> {
    if phi.arity != 2 || psi.arity != 2 || phi.degree != psi.degree {
        return Err(Error::Invalid("both forms must be binary of the same degree".into()));
    }
    if phi.rational_coeffs().is_none() || psi.rational_coeffs().is_none() {
        return Err(Error::Invalid("forms must have rational coefficients".into()));
    }
    let mut notes = Vec::new();
    let (names, exprs): (Vec<&str>, Vec<RatFunc>) = match phi.degree {
        3 => {
            let g = Form::generic(2, 3)?;
            (vec!["Discr"], vec![discriminant(&g)?])
        }
        4 => {
            notes.push("quartic verdicts compare the generators alpha, delta of the invariant field".into());
            (vec!["alpha", "delta"], vec![hankel_alpha(), hankel_delta()])
        }
        d => return Err(Error::Unsupported(format!("equivalence of forms of degree {d}"))),
    };
    let mut witness = Vec::new();
    let mut vals = Vec::new();
    for (name, e) in names.iter().zip(&exprs) {
        let a = invariant_value(phi, e)?;
        let b = invariant_value(psi, e)?;
        witness.push(WitnessEntry {
            name: name.to_string(),
            first: a.to_string(),
            second: b.to_string(),
        });
        vals.push((a, b));
    }
    let regular = |pick: fn(&(Rational, Rational)) -> &Rational| -> bool {
        if phi.degree == 3 {
            !pick(&vals[0]).is_zero()
        } else {
            !(pick(&vals[0]).is_zero() && pick(&vals[1]).is_zero())
        }
    };
    let (r1, r2) = (regular(|p| &p.0), regular(|p| &p.1));
    let status = if !r1 || !r2 {
        if !r1 {
            notes.push("first form is irregular".into());
        }
        if !r2 {
            notes.push("second form is irregular".into());
        }
        Status::Irregular
    } else if vals.iter().all(|(a, b)| a == b) {
        Status::Equivalent
    } else {
        Status::Inequivalent
    };
    Ok(EquivalenceVerdict { status, witness, notes })
}

/// The cubic `x³ + a1 x²y + a2 xy² + a3 y³`.
pub fn cubic_example() -> Form {
    Form::parse("x^3 + a1*x^2*y + a2*x*y^2 + a3*y^3", 2, 3).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2inv::delta2;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn parse_and_print_round_trip() {
        let f = Form::parse("x^3 + 3*x*y^2", 2, 3).unwrap();
        assert_eq!(f.coeff(&[3, 0]).unwrap().as_constant(), Some(q(6)));
        assert_eq!(f.coeff(&[1, 2]).unwrap().as_constant(), Some(q(6)));
        assert_eq!(f.to_string(), "x^3 + 3*x*y^2");
        assert!(Form::parse("x^3 + y", 2, 3).is_err());
        let g = Form::from_coefficients("b[3,0]=6, b[1,2]=6", 2).unwrap();
        assert_eq!(g.polynomial(), f.polynomial());
    }

    #[test]
    fn restriction_examples() {
        let ctx = JetContext::new(2, 2).unwrap();
        assert!(restrict(&delta2(), &Form::parse("x^3", 2, 3).unwrap()).unwrap().is_zero());
        let phi = cubic_example();
        let got = restrict(&delta2(), &phi).unwrap();
        let t = phi.table();
        let want = crate::polyalg::parse_expression(
            "4*(3*a2 - a1^2)*x^2 + 4*(9*a3 - a1*a2)*x*y + 4*(3*a1*a3 - a2^2)*y^2",
            t,
        )
        .unwrap();
        assert!(got.equals(&want));
        let u = restrict(&ctx.parse("u[0,0]").unwrap(), &phi).unwrap();
        assert!(u.equals(&RatFunc::from_poly(phi.polynomial())));
    }

    #[test]
    fn small_resultants() {
        let a = Form::parse("x^2 - y^2", 2, 2).unwrap();
        let b = Form::parse("x*y", 2, 2).unwrap();
        assert_eq!(sylvester_resultant(&a, &b).unwrap().as_constant(), Some(q(-1)));
        let fa = [(q(1), q(-1)), (q(1), q(1))];
        let fb = [(q(1), q(0)), (q(0), q(1))];
        assert_eq!(bracket_resultant(&fa, &fb), q(-1));
        let s = Form::parse("x^2", 2, 2).unwrap();
        assert!(sylvester_resultant(&s, &s).unwrap().is_zero());
        assert!(discriminant(&s).unwrap().is_zero());
        assert!(!discriminant(&Form::parse("x^2 + y^2", 2, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn cubic_discriminant_constant() {
        let phi = cubic_example();
        let d = discriminant(&phi).unwrap();
        let printed = crate::polyalg::parse_expression(
            "12*a1^3*a3 - 3*a1^2*a2^2 - 54*a1*a2*a3 + 12*a2^3 + 81*a3^2",
            phi.table(),
        )
        .unwrap();
        assert!(d.equals(&printed));
    }

    #[test]
    fn algebraic_renaming() {
        let g = algebraic_invariant(&delta2(), 2).unwrap();
        assert_eq!(g.to_string(), "b[2,0]*b[0,2] - b[1,1]^2");
        let ctx = JetContext::new(2, 2).unwrap();
        assert!(algebraic_invariant(&ctx.parse("u[0,0]*u[2,0]").unwrap(), 2).is_err());
    }

    #[test]
    fn transform_preserves_discriminant() {
        let phi = Form::parse("x^3 + 2*x^2*y - 5*y^3", 2, 3).unwrap();
        let a = ExactMatrix::from_i64_rows(&[&[2, 3], &[1, 2]]);
        let t = phi.transform(&a).unwrap();
        assert!(discriminant(&phi).unwrap().equals(&discriminant(&t).unwrap()));
        let v = sl2_equivalent(&phi, &t).unwrap();
        assert_eq!(v.status, Status::Equivalent);
    }

    #[test]
    fn equivalence_verdicts() {
        let c = Form::parse("x^3", 2, 3).unwrap();
        let d = Form::parse("x^3 + y^3", 2, 3).unwrap();
        assert_eq!(sl2_equivalent(&c, &d).unwrap().status, Status::Irregular);
        let q1 = Form::parse("x^4 + y^4", 2, 4).unwrap();
        let q2 = Form::parse("x^4 + 6*x^2*y^2 + y^4", 2, 4).unwrap();
        let v = sl2_equivalent(&q1, &q2).unwrap();
        assert_ne!(v.status, Status::Irregular);
        assert_eq!(sl2_equivalent(&q1, &q1).unwrap().status, Status::Equivalent);
    }
}
