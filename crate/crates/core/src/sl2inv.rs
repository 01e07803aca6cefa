//! Differential SL2 invariants of functions on the plane: built-in invariants,
//! the invariant frame and coframe, Poisson bracket, composition, weights and
//! the expansion of the Taylor tensors `Θ_k` in an invariant coframe.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::jets::{
    multi_indices, prolong_field, total_derivative, total_derivative_multi, Derivation, HorizontalForm,
    JetContext, JetFunction, MultiIndex, PointField,
};
use crate::polyalg::{Monomial, RatFunc};

/// Which coframe a [`SymTensor`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `dx, dy (, dz)`
    Coordinate,
    /// an invariant coframe `ω1, ω2 (, ω3)`
    Invariant,
}

/// A symmetric tensor `Σ_τ c_τ e^τ/τ!` of degree `k`; coefficients are
/// stored in the order of [`multi_indices`].
#[derive(Clone, Debug)]
pub struct SymTensor {
    arity: usize,
    degree: usize,
    basis: Basis,
    coeffs: Vec<JetFunction>,
}

impl SymTensor {
    pub fn new(arity: usize, degree: usize, basis: Basis, coeffs: Vec<JetFunction>) -> Result<Self> {
        let n = multi_indices(arity, degree as u32).len();
        if coeffs.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: coeffs.len(),
            });
        }
        Ok(SymTensor {
            arity,
            degree,
            basis,
            coeffs,
        })
    }

    /// `Θ_k = Σ u_σ dx^σ/σ!`.
    pub fn theta(arity: usize, k: usize) -> Result<Self> {
        let ctx = JetContext::new(arity, k)?;
        let coeffs = multi_indices(arity, k as u32).iter().map(|s| ctx.var_fn(ctx.u(s))).collect();
        SymTensor::new(arity, k, Basis::Coordinate, coeffs)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn indices(&self) -> Vec<MultiIndex> {
        multi_indices(self.arity, self.degree as u32)
    }

    pub fn coeffs(&self) -> &[JetFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, tau: &[u32]) -> Option<&JetFunction> {
        self.indices().iter().position(|t| t == tau).map(|i| &self.coeffs[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (MultiIndex, &JetFunction)> {
        self.indices().into_iter().zip(&self.coeffs)
    }
}

impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.basis {
            Basis::Coordinate => ["dx", "dy", "dz"],
            Basis::Invariant => ["w1", "w2", "w3"],
        };
        let mut parts = Vec::new();
        for (tau, c) in self.entries() {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = tau
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { sym[i].to_string() } else { format!("{}^{e}", sym[i]) })
                .collect();
            let fact: u64 = tau.iter().map(|&e| (1..=e as u64).product::<u64>()).product();
            let head = if fact == 1 {
                format!("({c})")
            } else {
                format!("({c})/{fact}")
            };
            parts.push(if mono.is_empty() {
                head
            } else {
                format!("{head}*{}", mono.join("*"))
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

type OmegaPoly = FxHashMap<MultiIndex, RatFunc>;

fn omega_mul(a: &OmegaPoly, b: &OmegaPoly) -> OmegaPoly {
    let mut out: OmegaPoly = FxHashMap::default();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: MultiIndex = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let p = va * vb;
            let e = out.remove(&k);
            let s = match e {
                Some(prev) => &prev + &p,
                None => p,
            };
            if !s.is_zero() {
                out.insert(k, s);
            }
        }
    }
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| &acc * &Rational::from_int(k))
}

fn multi_factorial(s: &[u32]) -> Rational {
    s.iter().fold(Rational::one(), |acc, &k| &acc * &factorial(k))
}

/// Rewrites a coordinate tensor in the coframe dual to `frame`:
/// `dx_a = Σ_i ∇_i(x_a) ω_i`, coefficients returned in the same divided-power
/// normalization.
pub fn expand_in_frame(t: &SymTensor, frame: &[Derivation]) -> Result<SymTensor> {
    if t.basis != Basis::Coordinate {
        return Err(Error::Invalid("tensor is already written in an invariant coframe".into()));
    }
    let n = t.arity;
    if frame.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: frame.len(),
        });
    }
    let ctx = frame
        .iter()
        .try_fold(t.coeffs[0].ctx(), |c, d| c.merge(&d.ctx()))?;
    let table = ctx.table();
    let unit = |i: usize| -> MultiIndex {
        let mut s = vec![0; n];
        s[i] = 1;
        s
    };
    // powers[a][e] = (dx_a)^e as a polynomial in ω
    let mut powers: Vec<Vec<OmegaPoly>> = Vec::with_capacity(n);
    for a in 0..n {
        let lin: OmegaPoly = (0..n)
            .filter(|&i| !frame[i].coeffs()[a].is_zero())
            .map(|i| (unit(i), frame[i].coeffs()[a].clone()))
            .collect();
        let mut row = vec![std::iter::once((vec![0; n], RatFunc::one(table))).collect::<OmegaPoly>()];
        for e in 1..=t.degree {
            let next = omega_mul(&row[e - 1], &lin);
            row.push(next);
        }
        powers.push(row);
    }
    let mut total: OmegaPoly = FxHashMap::default();
    for (sigma, c) in t.entries() {
        if c.is_zero() {
            continue;
        }
        let mut prod = powers[0][sigma[0] as usize].clone();
        for a in 1..n {
            prod = omega_mul(&prod, &powers[a][sigma[a] as usize]);
        }
        let w = c.value().scale(&multi_factorial(&sigma).recip());
        for (k, v) in prod {
            let term = &v * &w;
            let s = match total.remove(&k) {
                Some(prev) => &prev + &term,
                None => term,
            };
            if !s.is_zero() {
                total.insert(k, s);
            }
        }
    }
    let coeffs = t
        .indices()
        .iter()
        .map(|tau| {
            let v = total.get(tau).map_or_else(|| RatFunc::zero(table), |v| v.scale(&multi_factorial(tau)));
            JetFunction::new(ctx, v)
        })
        .collect::<Result<Vec<_>>>()?;
    SymTensor::new(n, t.degree, Basis::Invariant, coeffs)
}

fn ctx2() -> JetContext {
    JetContext::new(2, 2).expect("order 2 chart")
}

fn parse2(text: &str) -> JetFunction {
    ctx2().parse(text).expect("builtin expression")
}

/// `Δ2 = u20 u02 − u11²`.
pub fn delta2() -> JetFunction {
    parse2("u[2,0]*u[0,2] - u[1,1]^2")
}

/// The flex invariant `J21 = u01² u20 − 2 u10 u01 u11 + u10² u02`.
pub fn j21() -> JetFunction {
    parse2("u[0,1]^2*u[2,0] - 2*u[1,0]*u[0,1]*u[1,1] + u[1,0]^2*u[0,2]")
}

/// The invariant frame `(∇1, ∇2)`.
pub fn sl2_frame() -> [Derivation; 2] {
    let ctx = ctx2();
    let c = |s: &str| parse2(s).into_value();
    let n1 = Derivation::new(ctx, vec![c("u[0,1]"), c("-u[1,0]")]).unwrap();
    let n2 = Derivation::new(
        ctx,
        vec![
            c("2*(u[0,2]*u[1,0] - u[1,1]*u[0,1])/(u[2,0]*u[0,2] - u[1,1]^2)"),
            c("2*(u[2,0]*u[0,1] - u[1,1]*u[1,0])/(u[2,0]*u[0,2] - u[1,1]^2)"),
        ],
    )
    .unwrap();
    [n1, n2]
}

/// The invariant coframe `(ω1, ω2)` dual to [`sl2_frame`].
pub fn sl2_coframe() -> [HorizontalForm; 2] {
    let ctx = ctx2();
    let j = "(u[0,1]^2*u[2,0] - 2*u[1,0]*u[0,1]*u[1,1] + u[1,0]^2*u[0,2])";
    let c = |s: String| parse2(&s).into_value();
    let w1 = HorizontalForm::new(
        ctx,
        vec![
            c(format!("(u[2,0]*u[0,1] - u[1,1]*u[1,0])/{j}")),
            c(format!("-(u[0,2]*u[1,0] - u[1,1]*u[0,1])/{j}")),
        ],
    )
    .unwrap();
    let half = format!("(u[2,0]*u[0,2] - u[1,1]^2)/(2*{j})");
    let w2 = HorizontalForm::new(ctx, vec![c(format!("{half}*u[1,0]")), c(format!("{half}*u[0,1]"))]).unwrap();
    [w1, w2]
}

/// `[φ, ψ] = dφ/dx dψ/dy − dφ/dy dψ/dx`.
pub fn poisson(f: &JetFunction, g: &JetFunction) -> Result<JetFunction> {
    if f.ctx().indep() != 2 || g.ctx().indep() != 2 {
        return Err(Error::Unsupported("the Poisson bracket needs 2 independent variables".into()));
    }
    let fx = total_derivative(f, 0)?;
    let fy = total_derivative(f, 1)?;
    let gx = total_derivative(g, 0)?;
    let gy = total_derivative(g, 1)?;
    Ok(&(&fx * &gy) - &(&fy * &gx))
}

/// `φ ∗ ψ`: every `u_σ` in `φ` is replaced by `D_σ ψ`.
pub fn compose(phi: &JetFunction, psi: &JetFunction) -> Result<JetFunction> {
    let pc = phi.ctx();
    if pc.indep() != psi.ctx().indep() {
        return Err(Error::TableMismatch);
    }
    let ctx = pc.ensure(phi.order() + psi.order())?.merge(&psi.ctx())?;
    let mut images: FxHashMap<usize, RatFunc> = FxHashMap::default();
    for v in phi.value().variables() {
        if let Some(s) = pc.sigma(v) {
            images.insert(v, total_derivative_multi(psi, s)?.into_value());
        }
    }
    let value = phi.value().substitute(ctx.table(), &|v| images.get(&v).cloned())?;
    JetFunction::new(ctx, value)
}

fn monomial_weight(m: &Monomial, var_weight: &impl Fn(usize) -> i64) -> i64 {
    m.iter().map(|(v, e)| var_weight(v) * e as i64).sum()
}

/// Eigenvalue of `f` under a diagonal weight field: `L(f) = w f`, where `lie`
/// computes `L` and `var_weight` gives the weight of each coordinate.
pub(crate) fn eigen_weight(
    f: &JetFunction,
    lie: impl Fn(&JetFunction) -> Result<JetFunction>,
    var_weight: impl Fn(usize) -> i64,
) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero function has no weight".into()));
    }
    let v = f.value();
    let lead = v.numer().leading().expect("nonzero");
    let mut w = monomial_weight(&lead.0, &var_weight) - monomial_weight(v.denom_monomial(), &var_weight);
    for (q, e) in v.denom_factors() {
        w -= *e as i64 * monomial_weight(&q.leading().expect("nonzero").0, &var_weight);
    }
    let lf = lie(f)?;
    if lf.equals(&f.scale(&Rational::from_int(w))) {
        Ok(w)
    } else {
        Err(Error::NotHomogeneous(f.to_string()))
    }
}

/// Weight of `f` under `V* = pr(x∂x + y∂y)`.
pub fn weight(f: &JetFunction) -> Result<i64> {
    let ctx = f.ctx();
    if ctx.indep() != 2 {
        return Err(Error::Unsupported("weights are defined for 2 independent variables".into()));
    }
    let v = PointField::parse(2, &["x", "y"])?;
    let pr = prolong_field(&v, f.order())?;
    eigen_weight(f, |g| pr.apply(g), |var| {
        if var < 2 {
            1
        } else {
            -(ctx.var_order(var) as i64)
        }
    })
}

/// `Θ_k` written in the coframe `(ω1, ω2)`: the coefficients are `I_{i,k−i}`.
pub fn theta_expand_sl2(k: usize) -> Result<SymTensor> {
    expand_in_frame(&SymTensor::theta(2, k)?, &sl2_frame())
}

/// `I_{i,j}`.
pub fn theta_coefficient(i: u32, j: u32) -> Result<JetFunction> {
    let t = theta_expand_sl2((i + j) as usize)?;
    Ok(t.coeff(&[i, j]).expect("index in range").clone())
}

/// Position invariants `ρ_i = ω_i(x d/dx + y d/dy)`.
pub fn position_invariants() -> [JetFunction; 2] {
    let ctx = ctx2();
    let r = Derivation::new(ctx, vec![parse2("x").into_value(), parse2("y").into_value()]).unwrap();
    let [w1, w2] = sl2_coframe();
    [w1.pair(&r), w2.pair(&r)]
}

/// `I_{i,j}` for `i + j ≤ k` together with the position invariants: a full
/// set of functionally independent invariants of order `k` for `k ≥ 2`.
pub fn order_invariants(k: usize) -> Result<Vec<JetFunction>> {
    let mut out = Vec::new();
    for m in 0..=k {
        out.extend(theta_expand_sl2(m)?.coeffs().iter().filter(|c| !c.is_zero()).cloned());
    }
    out.extend(position_invariants());
    Ok(out)
}

/// Structure functions `(A, B)` with `[∇a, ∇b] = A ∇a + B ∇b`.
pub fn frame_bracket(a: &Derivation, b: &Derivation) -> Result<(JetFunction, JetFunction)> {
    if a.ctx().indep() != 2 {
        return Err(Error::Unsupported("frame_bracket needs 2 independent variables".into()));
    }
    let c = a.bracket(b)?;
    let (a0, a1) = (&a.coeffs()[0], &a.coeffs()[1]);
    let (b0, b1) = (&b.coeffs()[0], &b.coeffs()[1]);
    let (c0, c1) = (&c.coeffs()[0], &c.coeffs()[1]);
    let det = &(a0 * b1) - &(a1 * b0);
    if det.is_zero() {
        return Err(Error::Degenerate("derivations are dependent".into()));
    }
    let big_a = (&(c0 * b1) - &(c1 * b0)).checked_div(&det)?;
    let big_b = (&(a0 * c1) - &(a1 * c0)).checked_div(&det)?;
    Ok((JetFunction::new(c.ctx(), big_a)?, JetFunction::new(c.ctx(), big_b)?))
}

/// A named built-in object.
#[derive(Clone, Debug)]
pub enum Builtin {
    Function(JetFunction),
    Derivation(Derivation),
    Form(HorizontalForm),
}

/// Parses `I[i,j]` or `I[i,j]@k` (with `k = i + j`).
pub(crate) fn parse_indexed(name: &str, head: &str, arity: usize) -> Option<(Vec<u32>, Option<u32>)> {
    let rest = name.strip_prefix(head)?.strip_prefix('[')?;
    let (inner, tail) = rest.split_once(']')?;
    let idx: Vec<u32> = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    if idx.len() != arity {
        return None;
    }
    let order = match tail.trim() {
        "" => None,
        t => Some(t.strip_prefix('@')?.trim().parse().ok()?),
    };
    Some((idx, order))
}

pub fn builtin(name: &str) -> Result<Builtin> {
    Ok(match name {
        "Delta2" => Builtin::Function(delta2()),
        "J21" => Builtin::Function(j21()),
        "rho1" | "rho2" => {
            let [r1, r2] = position_invariants();
            Builtin::Function(if name == "rho1" { r1 } else { r2 })
        }
        "nabla1" | "nabla2" => {
            let [n1, n2] = sl2_frame();
            Builtin::Derivation(if name == "nabla1" { n1 } else { n2 })
        }
        "omega1" | "omega2" => {
            let [w1, w2] = sl2_coframe();
            Builtin::Form(if name == "omega1" { w1 } else { w2 })
        }
        _ => {
            let (idx, order) = parse_indexed(name, "I", 2).ok_or_else(|| Error::UnknownName(name.into()))?;
            if order.is_some_and(|k| k != idx[0] + idx[1]) {
                return Err(Error::Invalid(format!("{name}: order must equal i + j")));
            }
            Builtin::Function(theta_coefficient(idx[0], idx[1])?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{algebra, euler_reduce, lie_check, Algebra};

    fn p(s: &str) -> JetFunction {
        JetContext::new(2, 0).unwrap().parse(s).unwrap()
    }

    #[test]
    fn frame_and_coframe_are_dual() {
        let fr = sl2_frame();
        let co = sl2_coframe();
        for (i, w) in co.iter().enumerate() {
            for (j, d) in fr.iter().enumerate() {
                let v = w.pair(d);
                assert!(if i == j { v.value().is_one() || v.equals(&p("1")) } else { v.is_zero() });
            }
        }
    }

    #[test]
    fn nabla1_kills_u00() {
        let [n1, _] = sl2_frame();
        assert!(n1.apply(&p("u[0,0]")).unwrap().is_zero());
    }

    #[test]
    fn poisson_bracket_example() {
        let got = poisson(&p("u[0,0]"), &delta2()).unwrap();
        let want = p("u[0,1]*(2*u[1,1]*u[2,1] - u[0,2]*u[3,0] - u[2,0]*u[1,2]) + u[1,0]*(u[0,2]*u[2,1] + u[2,0]*u[0,3] - 2*u[1,1]*u[1,2])");
        assert!(got.equals(&want));
        assert!(poisson(&delta2(), &delta2()).unwrap().is_zero());
    }

    #[test]
    fn composition_rules() {
        let psi = j21();
        assert!(compose(&p("u[0,0]"), &psi).unwrap().equals(&psi));
        assert!(compose(&p("u[1,0]"), &psi)
            .unwrap()
            .equals(&total_derivative(&psi, 0).unwrap()));
        let d = compose(&delta2(), &p("u[1,0]")).unwrap();
        assert!(d.equals(&p("u[3,0]*u[1,2] - u[2,1]^2")));
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&p("u[2,1]")).unwrap(), -3);
        assert_eq!(weight(&p("x")).unwrap(), 1);
        assert_eq!(weight(&delta2()).unwrap(), -4);
        assert!(matches!(weight(&p("x + u[0,0]")), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn low_order_theta_expansions() {
        let t1 = theta_expand_sl2(1).unwrap();
        assert!(t1.coeff(&[1, 0]).unwrap().is_zero());
        let expect = j21().scale(&Rational::from_int(2)).checked_div(&delta2()).unwrap();
        assert!(t1.coeff(&[0, 1]).unwrap().equals(&expect));
        let t2 = theta_expand_sl2(2).unwrap();
        // coefficient of ω1² is J21/2, of ω2² is 2 J21/Δ2
        assert!(t2.coeff(&[2, 0]).unwrap().equals(&j21()));
        assert!(t2.coeff(&[1, 1]).unwrap().is_zero());
        assert!(t2.coeff(&[0, 2]).unwrap().equals(&expect.scale(&Rational::from_int(2))));
    }

    #[test]
    fn bracket_structure_on_euler_equation() {
        let [n1, n2] = sl2_frame();
        let (a, b) = frame_bracket(&n1, &n2).unwrap();
        for n in [3usize, 4] {
            let ra = euler_reduce(&a, n).unwrap();
            let want = Rational::new(2 * (2 - n as i64), n as i64 - 1);
            assert_eq!(ra.value().as_constant(), Some(want));
            assert!(euler_reduce(&b, n).unwrap().is_zero());
        }
        let dx = Derivation::coordinate(ctx2(), 0);
        let dy = Derivation::coordinate(ctx2(), 1);
        let (a, b) = frame_bracket(&dx, &dy).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn builtins_are_invariant() {
        let sl2 = algebra(Algebra::Sl2);
        for name in ["Delta2", "J21", "rho1", "rho2", "I[2,1]@3"] {
            let Builtin::Function(f) = builtin(name).unwrap() else { panic!() };
            assert!(lie_check(&f, &sl2).unwrap(), "{name}");
        }
        assert!(lie_check(&p("x*u[1,0] + y*u[0,1]"), &sl2).unwrap());
        assert!(matches!(builtin("I[2,1]@4"), Err(Error::Invalid(_))));
        assert!(matches!(builtin("K"), Err(Error::UnknownName(_))));
    }
}
