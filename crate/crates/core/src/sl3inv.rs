//! SL3 invariants of ternary forms: the Hessian determinant `A`, the coframe
//! `(Θ1, d̂A, ω3)`, its dual frame, the generators `J1…J5` and the expansion of
//! `Θ_m` in the invariant coframe.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::jets::{
    algebra, linalg, total_derivative, total_differential, Algebra, Derivation, HorizontalForm, JetContext,
    JetFunction,
};
use crate::polyalg::RatFunc;
use crate::sl2inv::{expand_in_frame, parse_indexed, Builtin, SymTensor};

/// Rewrites compact jet names `u012` as `u[0,1,2]`.
fn ternary(text: &str) -> String {
    let b = text.as_bytes();
    let mut out = String::with_capacity(text.len() * 2);
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'u' && i + 3 < b.len() && b[i + 1..i + 4].iter().all(u8::is_ascii_digit) {
            out.push_str(&format!("u[{},{},{}]", b[i + 1] as char, b[i + 2] as char, b[i + 3] as char));
            i += 4;
        } else {
            out.push(b[i] as char);
            i += 1;
        }
    }
    out
}

fn ctx3(order: usize) -> JetContext {
    JetContext::new(3, order).expect("ternary chart")
}

fn parse3(text: &str) -> JetFunction {
    ctx3(0).parse(&ternary(text)).expect("builtin expression")
}

const A_TEXT: &str = "u002*u020*u200 - u002*u110^2 - u011^2*u200 + 2*u011*u101*u110 - u020*u101^2";

const A1_TEXT: &str = "u002*u020*u300 - 2*u002*u110*u210 + u002*u120*u200 - u011^2*u300 \
    + 2*u011*u101*u210 + 2*u011*u110*u201 - 2*u011*u111*u200 - 2*u020*u101*u201 \
    + u020*u102*u200 - u101^2*u120 + 2*u101*u110*u111 - u102*u110^2";

const A2_TEXT: &str = "u002*u020*u210 + u002*u030*u200 - 2*u002*u110*u120 - u011^2*u210 - 2*u011*u021*u200 \
    + 2*u011*u101*u120 + 2*u011*u110*u111 + u012*u020*u200 - u012*u110^2 - 2*u020*u101*u111 \
    + 2*u021*u101*u110 - u030*u101^2";

const A3_TEXT: &str = "u002*u020*u201 + u002*u021*u200 - 2*u002*u110*u111 + u003*u020*u200 \
    - u003*u110^2 - u011^2*u201 - 2*u011*u012*u200 + 2*u011*u101*u111 + 2*u011*u102*u110 \
    + 2*u012*u101*u110 - 2*u020*u101*u102 - u021*u101^2";

/// `(c1, c2, c3)` with `F_i = c1 A1 + c2 A2 + c3 A3`.
const F_TEXT: [[&str; 3]; 3] = [
    ["u001*u110 - u010*u101", "-u001*u200 + u100*u101", "u010*u200 - u100*u110"],
    ["u001*u020 - u010*u011", "-u001*u110 + u011*u100", "u010*u110 - u020*u100"],
    ["u001*u011 - u002*u010", "-u001*u101 + u002*u100", "u010*u101 - u011*u100"],
];

/// `A = det(u_{e_i+e_j})`.
pub fn hessian3() -> JetFunction {
    parse3(A_TEXT)
}

/// The symmetric matrix `(u_{e_i+e_j})`.
pub fn hessian_matrix() -> Vec<Vec<RatFunc>> {
    let ctx = ctx3(2);
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut s = [0u32; 3];
                    s[i] += 1;
                    s[j] += 1;
                    RatFunc::var(ctx.table(), ctx.u(&s))
                })
                .collect()
        })
        .collect()
}

/// The printed `A1, A2, A3`.
pub fn printed_a_components() -> [JetFunction; 3] {
    [parse3(A1_TEXT), parse3(A2_TEXT), parse3(A3_TEXT)]
}

/// The printed `F1, F2, F3` with `F3` equal to the common denominator.
pub fn printed_f_components() -> [JetFunction; 3] {
    let a = printed_a_components();
    F_TEXT.map(|row| {
        let mut acc = ctx3(0).constant(Rational::zero());
        for (c, ai) in row.iter().zip(&a) {
            acc = &acc + &(&parse3(c) * ai);
        }
        acc
    })
}

/// The printed `Θ2^{-1}` as a symmetric matrix `M`, so that
/// `Θ2^{-1}(α, β) = αᵀ M β`.
pub fn printed_theta2_inverse() -> Vec<Vec<RatFunc>> {
    let two_over_a = hessian3().recip().expect("A ≠ 0").scale(&Rational::from_int(2)).into_value();
    let e = |s: &str| &parse3(s).into_value() * &two_over_a;
    let xx = e("u002*u020 - u011^2");
    let yy = e("u002*u200 - u101^2");
    let zz = e("u020*u200 - u110^2");
    // off-diagonal entries are half the printed ∂i∂j coefficients
    let xy = e("-(u002*u110 - u011*u101)");
    let xz = e("u011*u110 - u020*u101");
    let yz = e("-(u011*u200 - u101*u110)");
    vec![
        vec![xx, xy.clone(), xz.clone()],
        vec![xy, yy, yz.clone()],
        vec![xz, yz, zz],
    ]
}

/// `α ↦ Θ2^{-1}(α, β)` for horizontal forms.
pub fn theta2_inverse_pair(a: &HorizontalForm, b: &HorizontalForm) -> JetFunction {
    let m = printed_theta2_inverse();
    let ctx = a.ctx().merge(&b.ctx()).expect("ternary charts");
    let mut acc = RatFunc::zero(ctx.table());
    for (i, row) in m.iter().enumerate() {
        for (j, mij) in row.iter().enumerate() {
            acc = &acc + &(&(mij * &a.coeffs()[i]) * &b.coeffs()[j]);
        }
    }
    JetFunction::new(ctx, acc).expect("ternary chart")
}

/// `ω1 = Θ1`, `ω2 = d̂A`, `ω3 = F1 dx + F2 dy + F3 dz`.
pub fn sl3_coframe() -> Result<[HorizontalForm; 3]> {
    let w1 = total_differential(&parse3("u000"))?;
    let w2 = total_differential(&hessian3())?;
    let f = printed_f_components();
    let ctx = f[2].ctx();
    let w3 = HorizontalForm::new(ctx, f.iter().map(|g| g.value().clone()).collect())?;
    Ok([w1, w2, w3])
}

static FRAME: OnceLock<[Derivation; 3]> = OnceLock::new();

fn build_frame() -> Result<[Derivation; 3]> {
    let co = sl3_coframe()?;
    let ctx = co.iter().try_fold(co[0].ctx(), |c, w| c.merge(&w.ctx()))?;
    let m: Vec<Vec<RatFunc>> = co.iter().map(|w| w.coeffs().to_vec()).collect();
    let inv = linalg::inverse(&m).map_err(|_| Error::Degenerate("coframe matrix is singular".into()))?;
    let col = |j: usize| Derivation::new(ctx, (0..3).map(|a| inv[a][j].clone()).collect());
    Ok([col(0)?, col(1)?, col(2)?])
}

/// The frame dual to [`sl3_coframe`].
pub fn sl3_frame() -> Result<[Derivation; 3]> {
    if let Some(f) = FRAME.get() {
        return Ok(f.clone());
    }
    let f = build_frame()?;
    Ok(FRAME.get_or_init(|| f).clone())
}

/// `J1 = u000`, `J2 = A`, `J3 = ∇1(A)`, `J4 = ∇2(A)`, `J5 = ∇3(A)`.
pub fn sl3_generators() -> Result<[JetFunction; 5]> {
    let [n1, n2, n3] = sl3_frame()?;
    let a = hessian3();
    Ok([parse3("u000"), a.clone(), n1.apply(&a)?, n2.apply(&a)?, n3.apply(&a)?])
}

/// `Θ_m = Σ I_{ijk} ω1^i/i! ω2^j/j! ω3^k/k!`.
pub fn theta_expand_sl3(m: usize) -> Result<SymTensor> {
    if m == 0 {
        return Err(Error::Invalid("expansion order must be at least 1".into()));
    }
    expand_in_frame(&SymTensor::theta(3, m)?, &sl3_frame()?)
}

/// True iff `f` satisfies the Lie equation for `X1 … X8`.
pub fn sl3_lie_check(f: &JetFunction) -> Result<bool> {
    crate::jets::lie_check(f, &algebra(Algebra::Sl3))
}

/// `d̂f` components.
pub fn total_gradient(f: &JetFunction) -> Result<[JetFunction; 3]> {
    Ok([total_derivative(f, 0)?, total_derivative(f, 1)?, total_derivative(f, 2)?])
}

/// Named objects: `A`, `J1`…`J5`, `omega1`…`omega3`, `nabla1`…`nabla3`,
/// `I[i,j,k]@m`.
pub fn builtin(name: &str) -> Result<Builtin> {
    if name == "A" {
        return Ok(Builtin::Function(hessian3()));
    }
    let digit = |head: &str| {
        name.strip_prefix(head)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| d >= 1)
    };
    if let Some(d) = digit("J").filter(|&d| d <= 5) {
        return Ok(Builtin::Function(sl3_generators()?[d - 1].clone()));
    }
    if let Some(d) = digit("omega").filter(|&d| d <= 3) {
        return Ok(Builtin::Form(sl3_coframe()?[d - 1].clone()));
    }
    if let Some(d) = digit("nabla").filter(|&d| d <= 3) {
        return Ok(Builtin::Derivation(sl3_frame()?[d - 1].clone()));
    }
    let (idx, order) = parse_indexed(name, "I", 3).ok_or_else(|| Error::UnknownName(name.into()))?;
    let m: u32 = idx.iter().sum();
    if order.is_some_and(|k| k != m) || m == 0 {
        return Err(Error::Invalid(format!("{name}: order must equal i + j + k ≥ 1")));
    }
    let t = theta_expand_sl3(m as usize)?;
    Ok(Builtin::Function(t.coeff(&idx).expect("index in range").clone()))
}
