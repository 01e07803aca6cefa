//! Connections on coordinate space and affine differential invariants of the
//! plane and of plane algebraic curves.

use crate::error::{Error, Result};
use crate::exactalg::{QuadExt, Rational};
use crate::jets::{
    algebra, lie_check, linalg, multi_indices, total_derivative, tresse_frame, Algebra, Derivation, HorizontalForm,
    JetContext, JetFunction, MultiIndex,
};
use crate::polyalg::{RatFunc, VarImage};
use crate::sl2inv::{delta2, eigen_weight, expand_in_frame, j21, parse_indexed, Basis, SymTensor};

fn base_ctx(n: usize) -> Result<JetContext> {
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("dimension {n}")));
    }
    JetContext::new(n, 0)
}

/// Parses a function of the base coordinates only.
fn parse_base(ctx: &JetContext, text: &str) -> Result<RatFunc> {
    let f = ctx.parse(text)?;
    if f.value().variables().iter().any(|&v| v >= ctx.indep()) {
        return Err(Error::Invalid(format!("`{text}` depends on jet variables")));
    }
    Ok(f.into_value())
}

/// Christoffel symbols `Γ^k_ij` with `∇_{∂i} ∂j = Σ_k Γ^k_ij ∂k`.
#[derive(Clone, Debug)]
pub struct Christoffels {
    ctx: JetContext,
    gamma: Vec<RatFunc>,
}

impl Christoffels {
    /// The trivial connection.
    pub fn zero(n: usize) -> Result<Self> {
        let ctx = base_ctx(n)?;
        Self::from_fn(n, |_, _, _| RatFunc::zero(ctx.table()))
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> RatFunc) -> Result<Self> {
        let ctx = base_ctx(n)?;
        let mut gamma = Vec::with_capacity(n * n * n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let g = f(k, i, j);
                    if g.variables().iter().any(|&v| v >= n) {
                        return Err(Error::Invalid("Christoffel symbols must depend on base coordinates only".into()));
                    }
                    gamma.push(g);
                }
            }
        }
        Ok(Christoffels { ctx, gamma })
    }

    /// Zero except for the listed `((k, i, j), expression)` entries.
    pub fn parse(n: usize, entries: &[((usize, usize, usize), &str)]) -> Result<Self> {
        let ctx = base_ctx(n)?;
        let mut parsed = Vec::with_capacity(entries.len());
        for &((k, i, j), text) in entries {
            if k >= n || i >= n || j >= n {
                return Err(Error::AxisOutOfRange {
                    axis: k.max(i).max(j),
                    indep: n,
                });
            }
            parsed.push(((k, i, j), parse_base(&ctx, text)?));
        }
        Self::from_fn(n, |k, i, j| {
            parsed
                .iter()
                .rev()
                .find(|(key, _)| *key == (k, i, j))
                .map_or_else(|| RatFunc::zero(ctx.table()), |(_, v)| v.clone())
        })
    }

    pub fn dim(&self) -> usize {
        self.ctx.indep()
    }

    pub fn ctx(&self) -> JetContext {
        self.ctx
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &RatFunc {
        let n = self.dim();
        &self.gamma[(k * n + i) * n + j]
    }

    pub fn is_torsion_free(&self) -> bool {
        connection_tensors(self).0.is_zero()
    }
}

/// `T^k_ij = Γ^k_ij − Γ^k_ji`.
#[derive(Clone, Debug)]
pub struct Torsion {
    n: usize,
    comps: Vec<RatFunc>,
}

impl Torsion {
    pub fn get(&self, k: usize, i: usize, j: usize) -> &RatFunc {
        &self.comps[(k * self.n + i) * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }
}

/// `C^i_{jkl}`: the `∂i` component of `C(∂k, ∂l) ∂j`.
#[derive(Clone, Debug)]
pub struct Curvature {
    n: usize,
    comps: Vec<RatFunc>,
}

impl Curvature {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &RatFunc {
        let n = self.n;
        &self.comps[((i * n + j) * n + k) * n + l]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }
}

/// Torsion and curvature in coordinates:
/// `C^i_{jkl} = ∂k Γ^i_lj − ∂l Γ^i_kj + Σ_m (Γ^m_lj Γ^i_km − Γ^m_kj Γ^i_lm)`.
pub fn connection_tensors(g: &Christoffels) -> (Torsion, Curvature) {
    let n = g.dim();
    let ctx = g.ctx;
    let mut t = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                t.push(g.get(k, i, j) - g.get(k, j, i));
            }
        }
    }
    let mut c = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut v = &g.get(i, l, j).partial(ctx.x(k)) - &g.get(i, k, j).partial(ctx.x(l));
                    for m in 0..n {
                        v = &v + &(&(g.get(m, l, j) * g.get(i, k, m)) - &(g.get(m, k, j) * g.get(i, l, m)));
                    }
                    c.push(v);
                }
            }
        }
    }
    (Torsion { n, comps: t }, Curvature { n, comps: c })
}

/// A symmetric 2-tensor `g_ij` on coordinate space.
#[derive(Clone, Debug)]
pub struct Metric {
    ctx: JetContext,
    g: Vec<Vec<RatFunc>>,
}

impl Metric {
    pub fn new(n: usize, g: Vec<Vec<RatFunc>>) -> Result<Self> {
        let ctx = base_ctx(n)?;
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::Arity {
                expected: n,
                got: g.len(),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if !g[i][j].equals(&g[j][i]) {
                    return Err(Error::Invalid("metric is not symmetric".into()));
                }
            }
        }
        Ok(Metric { ctx, g })
    }

    pub fn parse(n: usize, rows: &[&[&str]]) -> Result<Self> {
        let ctx = base_ctx(n)?;
        let g = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_base(&ctx, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, g)
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.g[i][j]
    }
}

/// `Γ^k_ij = ½ Σ_l g^{kl} (∂j g_il + ∂i g_jl − ∂l g_ij)`.
pub fn levi_civita(g: &Metric) -> Result<Christoffels> {
    let n = g.g.len();
    let ctx = g.ctx;
    let inv = linalg::inverse(&g.g).map_err(|_| Error::Degenerate("metric determinant vanishes".into()))?;
    let half = Rational::new(1, 2);
    let mut table = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFunc::zero(ctx.table());
                for (l, ginv) in inv[k].iter().enumerate() {
                    if ginv.is_zero() {
                        continue;
                    }
                    let s = &(&g.g[i][l].partial(ctx.x(j)) + &g.g[j][l].partial(ctx.x(i))) - &g.g[i][j].partial(ctx.x(l));
                    acc = &acc + &(ginv * &s);
                }
                table.push(acc.scale(&half));
            }
        }
    }
    Christoffels::from_fn(n, |k, i, j| table[(k * n + i) * n + j].clone())
}

/// `∂k g_ij = Σ_m (Γ^m_ki g_mj + Γ^m_kj g_im)` for all index triples.
pub fn metric_compatible(g: &Metric, c: &Christoffels) -> bool {
    let n = g.g.len();
    let ctx = g.ctx;
    (0..n).all(|k| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut v = g.g[i][j].partial(ctx.x(k));
                for m in 0..n {
                    v = &v - &(&(c.get(m, k, i) * &g.g[m][j]) + &(c.get(m, k, j) * &g.g[i][m]));
                }
                v.is_zero()
            })
        })
    })
}

/// `θ_k(f) = (d^s_∇)^k f`, components of the symmetric tensor indexed by
/// multi-index (so `θ_2 = Σ_{i,j} (∂ij f − Σ Γ^m_ij ∂m f) d_i·d_j`).
/// Derivatives are total derivatives, so `θ_k(u0…0)` with the trivial
/// connection is `Θ_k`.
pub fn symmetric_differential(f: &JetFunction, g: &Christoffels, k: usize) -> Result<SymTensor> {
    let n = g.dim();
    if f.ctx().indep() != n {
        return Err(Error::Arity {
            expected: n,
            got: f.ctx().indep(),
        });
    }
    if !g.is_torsion_free() {
        return Err(Error::Torsion);
    }
    let gam = |m: usize, a: usize, b: usize| JetFunction::new(g.ctx, g.get(m, a, b).clone());
    let mut comps: Vec<JetFunction> = vec![f.clone()];
    for deg in 0..k {
        let idx = multi_indices(n, deg as u32);
        let pos = |s: &[u32]| idx.iter().position(|t| t.as_slice() == s).expect("multi-index");
        let next = multi_indices(n, deg as u32 + 1);
        let mut out = Vec::with_capacity(next.len());
        for rho in &next {
            let mut acc = f.ctx().constant(Rational::zero());
            for j in 0..n {
                if rho[j] == 0 {
                    continue;
                }
                let mut sigma = rho.clone();
                sigma[j] -= 1;
                // (∇T)_{j; σ}
                let mut nt = total_derivative(&comps[pos(&sigma)], j)?;
                for i in 0..n {
                    if sigma[i] == 0 {
                        continue;
                    }
                    for m in 0..n {
                        let gm = gam(m, j, i)?;
                        if gm.is_zero() {
                            continue;
                        }
                        let mut tau = sigma.clone();
                        tau[i] -= 1;
                        tau[m] += 1;
                        let term = (&gm * &comps[pos(&tau)]).scale(&Rational::from_int(sigma[i] as i64));
                        nt = &nt - &term;
                    }
                }
                acc = &acc + &nt.scale(&Rational::new(rho[j] as i64, deg as i64 + 1));
            }
            out.push(acc);
        }
        comps = out;
    }
    SymTensor::new(n, k, Basis::Coordinate, comps)
}

/// `Σ c_i d/dx_i` with coefficients in the quadratic extension by `√Δ2`.
#[derive(Clone, Debug)]
pub struct QuadDerivation {
    ctx: JetContext,
    coeffs: Vec<QuadExt>,
}

impl QuadDerivation {
    pub fn new(ctx: JetContext, coeffs: Vec<QuadExt>) -> Result<Self> {
        if coeffs.len() != ctx.indep() {
            return Err(Error::Arity {
                expected: ctx.indep(),
                got: coeffs.len(),
            });
        }
        Ok(QuadDerivation { ctx, coeffs })
    }

    pub fn from_rational(d: &Derivation) -> Self {
        let r = radicand();
        QuadDerivation {
            ctx: d.ctx(),
            coeffs: d.coeffs().iter().map(|c| QuadExt::rational(c.clone(), &r)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn apply(&self, f: &JetFunction) -> Result<QuadExt> {
        let r = radicand();
        let mut acc = QuadExt::rational(RatFunc::zero(self.ctx.table()), &r);
        for (i, c) in self.coeffs.iter().enumerate() {
            let d = total_derivative(f, i)?;
            acc = &acc + &c.scale(d.value());
        }
        Ok(acc)
    }
}

/// `Σ g_i dx_i` with coefficients in the quadratic extension.
#[derive(Clone, Debug)]
pub struct QuadForm {
    coeffs: Vec<QuadExt>,
}

impl QuadForm {
    pub fn new(coeffs: Vec<QuadExt>) -> Self {
        QuadForm { coeffs }
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn pair(&self, d: &QuadDerivation) -> QuadExt {
        let mut it = self.coeffs.iter().zip(&d.coeffs).map(|(a, b)| a * b);
        let first = it.next().expect("nonempty form");
        it.fold(first, |acc, t| &acc + &t)
    }
}

fn ctx2(order: usize) -> JetContext {
    JetContext::new(2, order).expect("plane chart")
}

fn radicand() -> RatFunc {
    delta2().into_value()
}

fn q(text: &str, order: usize) -> RatFunc {
    ctx2(order).parse(text).expect("builtin expression").into_value()
}

/// `I0 = u00`.
pub fn i0() -> JetFunction {
    ctx2(0).parse("u[0,0]").expect("u00")
}

/// `I2 = J21/Δ2`.
pub fn i2() -> JetFunction {
    j21().checked_div(&delta2()).expect("Δ2 ≠ 0")
}

/// The frame fixed by `2∇1⌟Θ2 = Θ1`, `Θ2(∇1, ∇2) = 0`,
/// `Θ2(∇1, ∇1) = Θ2(∇2, ∇2)`; `∇2` carries `1/√Δ2`.
pub fn affine_frame() -> (Derivation, QuadDerivation) {
    let d = radicand();
    let dinv = d.recip().expect("Δ2 ≠ 0");
    let n1 = Derivation::new(
        ctx2(2),
        vec![
            &q("u[0,2]*u[1,0] - u[1,1]*u[0,1]", 2) * &dinv,
            &q("u[2,0]*u[0,1] - u[1,1]*u[1,0]", 2) * &dinv,
        ],
    )
    .expect("affine ∇1");
    let z = RatFunc::zero(d.table());
    // 1/√Δ2 = √Δ2/Δ2
    let n2 = QuadDerivation::new(
        ctx2(2),
        vec![
            QuadExt::new(z.clone(), &q("-u[0,1]", 1) * &dinv, d.clone()),
            QuadExt::new(z, &q("u[1,0]", 1) * &dinv, d),
        ],
    )
    .expect("affine ∇2");
    (n1, n2)
}

/// The coframe dual to [`affine_frame`].
pub fn affine_coframe() -> [QuadForm; 2] {
    let d = radicand();
    let i2inv = i2().recip().expect("I2 ≠ 0").into_value();
    let z = RatFunc::zero(d.table());
    let w1 = QuadForm::new(vec![
        QuadExt::rational(&q("u[1,0]", 1) * &i2inv, &d),
        QuadExt::rational(&q("u[0,1]", 1) * &i2inv, &d),
    ]);
    // 1/(I2 √Δ2) = √Δ2/(I2 Δ2)
    let s = &i2inv * &d.recip().expect("Δ2 ≠ 0");
    let w2 = QuadForm::new(vec![
        QuadExt::new(z.clone(), &q("u[1,1]*u[1,0] - u[0,1]*u[2,0]", 2) * &s, d.clone()),
        QuadExt::new(z, &q("u[1,0]*u[0,2] - u[1,1]*u[0,1]", 2) * &s, d),
    ]);
    [w1, w2]
}

/// Coefficient of `dx∧dy` in `ω1∧ω2`.
pub fn affine_volume() -> QuadExt {
    let [w1, w2] = affine_coframe();
    &(&w1.coeffs[0] * &w2.coeffs[1]) - &(&w1.coeffs[1] * &w2.coeffs[0])
}

/// `k!·Θ_k(v_1, …, v_k)` for `Θ_k = Σ u_σ dx^σ/σ!` on the plane, with `Θ_k`
/// polarized by averaging; equivalently `Σ u_{σ(a)} Π v_m[a_m]` over ordered
/// index sequences `a`. On frame vectors this is the expansion coefficient
/// `I_τ`, and `2∇⌟Θ2` is `theta_apply(∇, ·)`.
pub fn theta_apply(vectors: &[&[QuadExt]]) -> Result<QuadExt> {
    let k = vectors.len();
    let ctx = JetContext::new(2, k)?;
    let r = radicand();
    let mut acc = QuadExt::rational(RatFunc::zero(ctx.table()), &r);
    for bits in 0..(1u32 << k) {
        let mut sigma = [0u32; 2];
        let mut prod = QuadExt::rational(RatFunc::one(ctx.table()), &r);
        for (m, v) in vectors.iter().enumerate() {
            let a = ((bits >> m) & 1) as usize;
            sigma[a] += 1;
            prod = &prod * &v[a];
            if prod.is_zero() {
                break;
            }
        }
        if prod.is_zero() {
            continue;
        }
        let u = RatFunc::var(ctx.table(), ctx.u(&sigma));
        acc = &acc + &prod.scale(&u);
    }
    Ok(acc)
}

/// `I_{i,j} = Θ_{i+j}(∇1, …, ∇1, ∇2, …, ∇2)` in the radical frame; `j` odd gives
/// a pure multiple of `√Δ2`.
pub fn radical_invariant(i: usize, j: usize) -> Result<QuadExt> {
    let (n1, n2) = affine_frame();
    let n1 = QuadDerivation::from_rational(&n1);
    let mut vs: Vec<&[QuadExt]> = vec![n1.coeffs(); i];
    vs.extend(std::iter::repeat_n(n2.coeffs(), j));
    if vs.is_empty() {
        return Ok(QuadExt::rational(i0().into_value(), &radicand()));
    }
    theta_apply(&vs)
}

/// `ω1 = d̂u00`, `ω2 = d̂I2`.
pub fn affine_tresse_coframe() -> Result<[HorizontalForm; 2]> {
    Ok([
        crate::jets::total_differential(&i0())?,
        crate::jets::total_differential(&i2())?,
    ])
}

/// The Tresse frame dual to [`affine_tresse_coframe`].
pub fn affine_tresse_frame() -> Result<Vec<Derivation>> {
    tresse_frame(&[i0(), i2()])
}

/// `τ_i = A_i1 d/dx + A_i2 d/dy` with `A = [[u10, dI2/dx], [u01, dI2/dy]]^{-1}`.
pub fn printed_tresse_frame() -> Result<[Derivation; 2]> {
    let i2 = i2();
    let ix = total_derivative(&i2, 0)?;
    let iy = total_derivative(&i2, 1)?;
    let ctx = ix.ctx();
    let m = vec![
        vec![q("u[1,0]", 1), ix.value().clone()],
        vec![q("u[0,1]", 1), iy.value().clone()],
    ];
    let a = linalg::inverse(&m)?;
    Ok([
        Derivation::new(ctx, a[0].clone())?,
        Derivation::new(ctx, a[1].clone())?,
    ])
}

/// `Θ_k = Σ I_{i,k−i} ω1^i/i! ω2^{k−i}/(k−i)!` in the Tresse coframe.
pub fn theta_expand_affine(k: usize) -> Result<SymTensor> {
    if k == 0 {
        return Err(Error::Invalid("expansion order must be at least 1".into()));
    }
    expand_in_frame(&SymTensor::theta(2, k)?, &affine_tresse_frame()?)
}

/// `I_{i,j}` of [`theta_expand_affine`].
pub fn affine_coefficient(i: u32, j: u32) -> Result<JetFunction> {
    let t = theta_expand_affine((i + j) as usize)?;
    Ok(t.coeff(&[i, j]).expect("index in range").clone())
}

/// `𝔞2 = I2/I0`.
pub fn curve_a2() -> JetFunction {
    i2().checked_div(&i0()).expect("I0 ≠ 0")
}

/// `I_{i,j} I0^{i+j−1}`: the weight-zero curve invariant built from the
/// Tresse-coframe coefficient.
pub fn curve_invariant(i: u32, j: u32) -> Result<JetFunction> {
    let c = affine_coefficient(i, j)?;
    Ok(&c * &i0().pow(i as i32 + j as i32 - 1)?)
}

/// `𝔞_{i,j} = I_{i,j}/I0` from the radical frame.
pub fn radical_curve_invariant(i: usize, j: usize) -> Result<QuadExt> {
    let inv = i0().recip()?.into_value();
    Ok(radical_invariant(i, j)?.scale(&inv))
}

/// `γ = Σ u_σ ∂/∂u_σ`.
pub fn gamma(f: &JetFunction) -> JetFunction {
    let ctx = f.ctx();
    let n = ctx.indep();
    let v = f.value().derivation(&|var| (var >= n).then_some(VarImage::Var(var)));
    JetFunction::new(ctx, v).expect("γ preserves the chart")
}

/// Eigenvalue of `γ` on `f`.
pub fn gamma_weight(f: &JetFunction) -> Result<i64> {
    let n = f.ctx().indep();
    eigen_weight(f, |g| Ok(gamma(g)), |v| if v < n { 0 } else { 1 })
}

/// Eigenvalue of `γ` on `a + b√Δ2`, with `γ(√Δ2) = √Δ2`.
pub fn gamma_weight_quad(x: &QuadExt) -> Result<i64> {
    let ctx = JetContext::new(2, 0)?;
    let lift = |r: &RatFunc| JetFunction::new(ctx, r.clone());
    let wa = if x.a.is_zero() { None } else { Some(gamma_weight(&lift(&x.a)?)?) };
    let wb = if x.b.is_zero() { None } else { Some(gamma_weight(&lift(&x.b)?)? + 1) };
    match (wa, wb) {
        (Some(a), Some(b)) if a != b => Err(Error::NotHomogeneous(x.to_string())),
        (Some(w), _) | (None, Some(w)) => Ok(w),
        (None, None) => Err(Error::Invalid("the zero function has no weight".into())),
    }
}

/// True iff `f` satisfies the Lie equation for `𝔞ff2`.
pub fn affine_lie_check(f: &JetFunction) -> Result<bool> {
    lie_check(f, &algebra(Algebra::Aff2))
}

/// Named affine invariants: `I0`, `I2`, `a2`, `I[i,j]@k` (Tresse coframe),
/// `a[i,j]@k` (`I_{i,j} I0^{k−1}`).
pub fn builtin(name: &str) -> Result<JetFunction> {
    match name {
        "I0" => return Ok(i0()),
        "I2" => return Ok(i2()),
        "a2" => return Ok(curve_a2()),
        _ => {}
    }
    for (head, curve) in [("I", false), ("a", true)] {
        if let Some((idx, at)) = parse_indexed(name, head, 2) {
            let k = idx[0] + idx[1];
            if at.is_some_and(|m| m != k) {
                return Err(Error::Invalid(format!("`{name}`: order must equal i + j")));
            }
            if k == 0 {
                return Err(Error::Invalid(format!("`{name}`: order must be at least 1")));
            }
            return if curve {
                curve_invariant(idx[0], idx[1])
            } else {
                affine_coefficient(idx[0], idx[1])
            };
        }
    }
    Err(Error::UnknownName(name.into()))
}

/// Multi-indices of the coefficients of an order-`k` plane expansion.
pub fn plane_indices(k: usize) -> Vec<MultiIndex> {
    multi_indices(2, k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::JetContext;

    fn base(text: &str) -> RatFunc {
        let ctx = JetContext::new(2, 0).unwrap();
        parse_base(&ctx, text).unwrap()
    }

    #[test]
    fn trivial_and_torsion() {
        let (t, c) = connection_tensors(&Christoffels::zero(2).unwrap());
        assert!(t.is_zero() && c.is_zero());
        let g = Christoffels::parse(2, &[((0, 0, 1), "1")]).unwrap();
        let (t, _) = connection_tensors(&g);
        assert_eq!(t.get(0, 0, 1).to_string(), "1");
        assert_eq!(t.get(0, 1, 0).to_string(), "-1");
        assert!(!g.is_torsion_free());
        assert!(Christoffels::parse(2, &[((0, 0, 0), "u[1,0]")]).is_err());
    }

    #[test]
    fn polar_metric_is_flat() {
        let g = Metric::parse(2, &[&["1", "0"], &["0", "x^2"]]).unwrap();
        let c = levi_civita(&g).unwrap();
        assert!(c.get(1, 0, 1).equals(&base("1/x")));
        assert!(c.get(1, 1, 0).equals(&base("1/x")));
        assert!(c.get(0, 1, 1).equals(&base("-x")));
        assert!(c.is_torsion_free());
        assert!(metric_compatible(&g, &c));
        assert!(connection_tensors(&c).1.is_zero());
    }

    #[test]
    fn half_plane_curvature() {
        let g = Metric::parse(2, &[&["1/y^2", "0"], &["0", "1/y^2"]]).unwrap();
        let c = levi_civita(&g).unwrap();
        assert!(metric_compatible(&g, &c));
        let r = connection_tensors(&c).1;
        // sectional curvature −1: g(C(∂1,∂2)∂2, ∂1) = −(g11 g22 − g12²)
        assert!(r.get(0, 1, 0, 1).equals(&base("-1/y^2")));
        assert!(r.get(0, 1, 1, 0).equals(&base("1/y^2")));
    }

    #[test]
    fn symmetric_differentials() {
        let ctx = JetContext::new(2, 0).unwrap();
        let f = ctx.parse("x^2*y").unwrap();
        let triv = Christoffels::zero(2).unwrap();
        let t1 = symmetric_differential(&f, &triv, 1).unwrap();
        assert_eq!(t1.coeff(&[1, 0]).unwrap().to_string(), "2*x*y");
        let t2 = symmetric_differential(&f, &triv, 2).unwrap();
        assert_eq!(t2.coeff(&[2, 0]).unwrap().to_string(), "2*y");
        assert_eq!(t2.coeff(&[1, 1]).unwrap().to_string(), "2*x");
        for k in 1..=3 {
            let t = symmetric_differential(&i0(), &triv, k).unwrap();
            let theta = SymTensor::theta(2, k).unwrap();
            assert!(t.coeffs().iter().zip(theta.coeffs()).all(|(a, b)| a.equals(b)));
        }
        let g = Christoffels::parse(2, &[((0, 0, 1), "1")]).unwrap();
        assert_eq!(symmetric_differential(&f, &g, 2).unwrap_err(), Error::Torsion);
        // θ2 with a symmetric connection: ∂ij f − Γ^m_ij ∂m f
        let g = Christoffels::parse(2, &[((0, 0, 1), "y"), ((0, 1, 0), "y")]).unwrap();
        let t2 = symmetric_differential(&f, &g, 2).unwrap();
        assert!(t2.coeff(&[1, 1]).unwrap().value().equals(&base("2*x - 2*x*y^2")));
    }

    #[test]
    fn frame_conditions() {
        let (n1, n2) = affine_frame();
        assert!(n1.apply(&i0()).unwrap().equals(&i2()));
        let q1 = QuadDerivation::from_rational(&n1);
        let c1 = q1.coeffs();
        let c2 = n2.coeffs();
        // 2∇1⌟Θ2 = Θ1
        for (axis, u) in [(0usize, "u[1,0]"), (1, "u[0,1]")] {
            let e: Vec<QuadExt> = (0..2)
                .map(|i| QuadExt::rational(RatFunc::constant(radicand().table(), Rational::from_int((i == axis) as i64)), &radicand()))
                .collect();
            let v = theta_apply(&[c1, &e]).unwrap();
            assert!(v.as_rational().unwrap().equals(&q(u, 1)));
        }
        assert!(theta_apply(&[c1, c2]).unwrap().is_zero());
        assert!((&theta_apply(&[c1, c1]).unwrap() - &theta_apply(&[c2, c2]).unwrap()).is_zero());
        let [w1, w2] = affine_coframe();
        let one = QuadExt::rational(RatFunc::one(radicand().table()), &radicand());
        assert!(w1.pair(&q1) == one && w2.pair(&n2) == one);
        assert!(w1.pair(&n2).is_zero() && w2.pair(&q1).is_zero());
        let vol = affine_volume();
        assert!(vol.a.is_zero());
        assert!(vol.b.equals(&i2().recip().unwrap().into_value()));
    }

    #[test]
    fn tresse_pair() {
        let frame = affine_tresse_frame().unwrap();
        let printed = printed_tresse_frame().unwrap();
        let co = affine_tresse_coframe().unwrap();
        for i in 0..2 {
            assert!(frame[i].equals(&printed[i]));
            for (j, w) in co.iter().enumerate() {
                let p = w.pair(&frame[i]);
                assert_eq!(p.value().as_constant(), Some(Rational::from_int((i == j) as i64)));
            }
        }
    }

    #[test]
    fn weights_and_invariance() {
        assert_eq!(gamma_weight(&i0()).unwrap(), 1);
        assert_eq!(gamma_weight(&i2()).unwrap(), 1);
        assert_eq!(gamma_weight(&curve_a2()).unwrap(), 0);
        for k in 1..=2u32 {
            for i in 0..=k {
                let c = affine_coefficient(i, k - i).unwrap();
                if c.is_zero() {
                    continue;
                }
                assert_eq!(gamma_weight(&c).unwrap(), 1 - k as i64);
                assert!(affine_lie_check(&c).unwrap(), "I[{i},{}]", k - i);
                assert_eq!(gamma_weight(&curve_invariant(i, k - i).unwrap()).unwrap(), 0);
            }
        }
        assert!(affine_lie_check(&i2()).unwrap());
        let r = radical_invariant(2, 1).unwrap();
        assert_eq!(gamma_weight_quad(&r).unwrap(), 1);
        let sq = &r * &r;
        let ctx = JetContext::new(2, 0).unwrap();
        assert!(affine_lie_check(&JetFunction::new(ctx, sq.as_rational().unwrap().clone()).unwrap()).unwrap());
    }

    #[test]
    fn builtins() {
        assert!(builtin("I2").unwrap().equals(&i2()));
        assert!(builtin("a[2,0]@2").is_ok());
        assert!(builtin("a[2,0]@3").is_err());
        assert!(builtin("nope").is_err());
    }
}
