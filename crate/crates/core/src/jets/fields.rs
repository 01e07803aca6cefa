use rustc_hash::FxHashMap;

use super::{apply_vector_field, total_derivative_raw, JetContext, JetFunction, MultiIndex};
use crate::error::{Error, Result};
use crate::polyalg::RatFunc;

/// A vector field `Σ a_i ∂/∂x_i` on the base, coefficients free of jet variables.
#[derive(Clone, Debug)]
pub struct PointField {
    indep: usize,
    coeffs: Vec<RatFunc>,
    name: String,
}

impl PointField {
    pub fn new(ctx: &JetContext, coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.len() != ctx.indep() {
            return Err(Error::Arity {
                expected: ctx.indep(),
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            if c.variables().iter().any(|&v| v >= ctx.indep()) {
                return Err(Error::Invalid("point field coefficients must not contain jet variables".into()));
            }
        }
        let name = describe(ctx, &coeffs);
        Ok(PointField {
            indep: ctx.indep(),
            coeffs,
            name,
        })
    }

    /// Parses one coefficient expression per independent variable.
    pub fn parse(indep: usize, coeffs: &[&str]) -> Result<Self> {
        let ctx = JetContext::new(indep, 0)?;
        let cs = coeffs
            .iter()
            .map(|s| ctx.parse(s).map(JetFunction::into_value))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ctx, cs)
    }

    pub fn indep(&self) -> usize {
        self.indep
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `[X, Y]` as base vector fields.
    pub fn bracket(&self, other: &PointField) -> PointField {
        let ctx = JetContext::new(self.indep, 0).unwrap();
        let xs: Vec<(usize, RatFunc)> = self.coeffs.iter().cloned().enumerate().collect();
        let ys: Vec<(usize, RatFunc)> = other.coeffs.iter().cloned().enumerate().collect();
        let coeffs: Vec<RatFunc> = (0..self.indep)
            .map(|i| &apply_vector_field(&other.coeffs[i], &xs) - &apply_vector_field(&self.coeffs[i], &ys))
            .collect();
        let name = describe(&ctx, &coeffs);
        PointField {
            indep: self.indep,
            coeffs,
            name,
        }
    }
}

fn describe(ctx: &JetContext, coeffs: &[RatFunc]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        parts.push(format!("({c})*d{}", ctx.table().name(i)));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The prolongation of a point field to order `k`, as components on the
/// chart variables.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    base: PointField,
    ctx: JetContext,
    comps: Vec<(usize, RatFunc)>,
}

impl ProlongedField {
    pub fn order(&self) -> usize {
        self.ctx.max_order()
    }

    pub fn base(&self) -> &PointField {
        &self.base
    }

    /// Coefficient of `∂/∂u_σ`.
    pub fn coefficient(&self, sigma: &[u32]) -> RatFunc {
        let v = self.ctx.u(sigma);
        self.component(v)
    }

    /// Coefficient of `∂/∂v` for a chart variable index.
    pub fn component(&self, v: usize) -> RatFunc {
        self.comps
            .iter()
            .find(|c| c.0 == v)
            .map(|c| c.1.clone())
            .unwrap_or_else(|| RatFunc::zero(self.ctx.table()))
    }

    pub fn components(&self) -> &[(usize, RatFunc)] {
        &self.comps
    }

    /// `X^{(k)}(f)`; `f` must have order at most `k`.
    pub fn apply(&self, f: &JetFunction) -> Result<JetFunction> {
        if f.order() > self.order() {
            return Err(Error::Invalid(format!(
                "function of order {} exceeds prolongation order {}",
                f.order(),
                self.order()
            )));
        }
        Ok(JetFunction::from_ratfunc(f.ctx().merge(&self.ctx)?, apply_vector_field(f.value(), &self.comps)))
    }

    /// Components of the commutator `[self, other]` on the chart.
    pub fn commutator(&self, other: &ProlongedField) -> Vec<(usize, RatFunc)> {
        let dim = self.ctx.dim().min(other.ctx.dim());
        (0..dim)
            .map(|v| {
                let a = apply_vector_field(&other.component(v), &self.comps);
                let b = apply_vector_field(&self.component(v), &other.comps);
                (v, &a - &b)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Componentwise equality with a list of components.
    pub fn matches(&self, comps: &[(usize, RatFunc)]) -> bool {
        let dim = self.ctx.dim();
        (0..dim).all(|v| {
            let other = comps
                .iter()
                .find(|c| c.0 == v)
                .map(|c| c.1.clone())
                .unwrap_or_else(|| RatFunc::zero(self.ctx.table()));
            self.component(v).equals(&other)
        })
    }
}

/// Prolongs `X = Σ a_i ∂_i` to order `k` with characteristic
/// `Q = −Σ a_i u_{e_i}`: the coefficient of `∂/∂u_σ` is
/// `D_σ(Q) + Σ a_i u_{σ+e_i}`.
pub fn prolong_field(x: &PointField, k: usize) -> Result<ProlongedField> {
    let ctx = JetContext::new(x.indep, k)?;
    // Q and its derivatives reach order k + 1
    let big = ctx.ensure(k + 1)?;
    let t = ctx.table();
    let n = x.indep;
    let unit = |i: usize| -> MultiIndex {
        let mut s = vec![0; n];
        s[i] = 1;
        s
    };
    let mut q = RatFunc::zero(t);
    for i in 0..n {
        q = &q - &(&x.coeffs[i] * &RatFunc::var(t, ctx.u(&unit(i))));
    }
    let mut dq: FxHashMap<MultiIndex, RatFunc> = FxHashMap::default();
    dq.insert(vec![0; n], q);
    let mut comps: Vec<(usize, RatFunc)> = Vec::new();
    for i in 0..n {
        if !x.coeffs[i].is_zero() {
            comps.push((i, x.coeffs[i].clone()));
        }
    }
    for sigma in ctx.all_sigmas() {
        let d = match dq.get(&sigma) {
            Some(d) => d.clone(),
            None => {
                let axis = sigma.iter().position(|&s| s > 0).unwrap();
                let mut prev = sigma.clone();
                prev[axis] -= 1;
                let d = total_derivative_raw(&big, &dq[&prev], axis);
                dq.insert(sigma.clone(), d.clone());
                d
            }
        };
        let mut c = d;
        for i in 0..n {
            if x.coeffs[i].is_zero() {
                continue;
            }
            let mut up = sigma.clone();
            up[i] += 1;
            c = &c + &(&x.coeffs[i] * &RatFunc::var(t, big.u(&up)));
        }
        if !c.is_zero() {
            comps.push((ctx.u(&sigma), c));
        }
    }
    Ok(ProlongedField {
        base: x.clone(),
        ctx,
        comps,
    })
}

/// True iff `X^{(k)}(I) = 0` for every generator, `k = order(I)`.
pub fn lie_check(i: &JetFunction, algebra: &[PointField]) -> Result<bool> {
    let k = i.order();
    for x in algebra {
        if x.indep != i.ctx().indep() {
            return Err(Error::TableMismatch);
        }
        let pr = prolong_field(x, k)?;
        if !pr.apply(i)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Named Lie algebras of point fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    /// `x∂y, y∂x, x∂x − y∂y`
    Sl2,
    /// `X1 … X8` on three variables
    Sl3,
    /// `∂x, ∂y, x∂x, x∂y, y∂x, y∂y`
    Aff2,
    /// `∂x, ∂y`
    Translations2,
    /// `∂x`
    LineTranslations,
    /// `∂x, x∂x`
    LineAffine,
    /// `∂x, x∂x, x²∂x`
    LineSl2,
}

impl std::str::FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sl2" => Algebra::Sl2,
            "sl3" => Algebra::Sl3,
            "aff2" => Algebra::Aff2,
            "translations" => Algebra::Translations2,
            "line-translations" => Algebra::LineTranslations,
            "line-affine" => Algebra::LineAffine,
            "line-sl2" => Algebra::LineSl2,
            _ => return Err(Error::UnknownName(s.into())),
        })
    }
}

/// Generators of a named algebra.
pub fn algebra(which: Algebra) -> Vec<PointField> {
    let fields: (usize, &[&[&str]]) = match which {
        Algebra::Sl2 => (2, &[&["0", "x"], &["y", "0"], &["x", "-y"]]),
        Algebra::Sl3 => (
            3,
            &[
                &["x", "-y", "0"],
                &["x", "0", "-z"],
                &["y", "0", "0"],
                &["z", "0", "0"],
                &["0", "x", "0"],
                &["0", "z", "0"],
                &["0", "0", "x"],
                &["0", "0", "y"],
            ],
        ),
        Algebra::Aff2 => (
            2,
            &[&["1", "0"], &["0", "1"], &["x", "0"], &["0", "x"], &["y", "0"], &["0", "y"]],
        ),
        Algebra::Translations2 => (2, &[&["1", "0"], &["0", "1"]]),
        Algebra::LineTranslations => (1, &[&["1"]]),
        Algebra::LineAffine => (1, &[&["1"], &["x"]]),
        Algebra::LineSl2 => (1, &[&["1"], &["x"], &["x^2"]]),
    };
    fields
        .1
        .iter()
        .map(|cs| PointField::parse(fields.0, cs).expect("builtin field"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prolongation_of_shear() {
        // x∂y: the flow f(x, y − tx) gives −u01 ∂/∂u10 at first order
        let x = PointField::parse(2, &["0", "x"]).unwrap();
        let pr = prolong_field(&x, 1).unwrap();
        let ctx = JetContext::new(2, 1).unwrap();
        assert!(pr.coefficient(&[1, 0]).equals(&ctx.parse("-u[0,1]").unwrap().into_value()));
        assert!(pr.coefficient(&[0, 1]).is_zero());
        assert!(pr.coefficient(&[0, 0]).is_zero());
    }

    #[test]
    fn translations_prolong_trivially() {
        let x = PointField::parse(2, &["1", "0"]).unwrap();
        let pr = prolong_field(&x, 3).unwrap();
        assert_eq!(pr.components().len(), 1);
    }

    #[test]
    fn prolongation_is_a_homomorphism() {
        for alg in [Algebra::Sl2, Algebra::Sl3] {
            let gens = algebra(alg);
            for k in 1..=2 {
                for a in &gens {
                    for b in &gens {
                        let lhs = prolong_field(&a.bracket(b), k).unwrap();
                        let pa = prolong_field(a, k).unwrap();
                        let pb = prolong_field(b, k).unwrap();
                        assert!(lhs.matches(&pa.commutator(&pb)), "{} {}", a.name(), b.name());
                    }
                }
            }
        }
    }

    #[test]
    fn hessian_is_invariant_and_u10_is_not() {
        let ctx = JetContext::new(2, 2).unwrap();
        let sl2 = algebra(Algebra::Sl2);
        assert!(lie_check(&ctx.parse("u[2,0]*u[0,2] - u[1,1]^2").unwrap(), &sl2).unwrap());
        assert!(!lie_check(&ctx.parse("u[1,0]").unwrap(), &sl2).unwrap());
    }
}
