use std::fmt;

use rustc_hash::FxHashMap;

use super::linalg;
use super::{total_derivative, JetContext, JetFunction, MultiIndex};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::polyalg::{MultiPoly, RatFunc};

/// `Σ c_i d/dx_i` with rational jet-function coefficients.
#[derive(Clone)]
pub struct Derivation {
    ctx: JetContext,
    coeffs: Vec<RatFunc>,
}

impl Derivation {
    pub fn new(ctx: JetContext, coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.len() != ctx.indep() {
            return Err(Error::Arity {
                expected: ctx.indep(),
                got: coeffs.len(),
            });
        }
        let f = JetFunction::new(ctx, coeffs.iter().fold(RatFunc::zero(ctx.table()), |a, c| &a + c))?;
        Ok(Derivation { ctx: f.ctx(), coeffs })
    }

    /// `d/dx_axis`.
    pub fn coordinate(ctx: JetContext, axis: usize) -> Self {
        let t = ctx.table();
        let coeffs = (0..ctx.indep())
            .map(|i| if i == axis { RatFunc::one(t) } else { RatFunc::zero(t) })
            .collect();
        Derivation { ctx, coeffs }
    }

    pub fn ctx(&self) -> JetContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> JetFunction {
        JetFunction::from_ratfunc(self.ctx, self.coeffs[i].clone())
    }

    pub fn apply(&self, f: &JetFunction) -> Result<JetFunction> {
        let mut acc: Option<JetFunction> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = total_derivative(f, i)?;
            let term = JetFunction::from_ratfunc(d.ctx().merge(&self.ctx)?, c * d.value());
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        Ok(acc.unwrap_or_else(|| JetFunction::from_ratfunc(self.ctx, RatFunc::zero(self.ctx.table()))))
    }

    /// Commutator; total derivatives commute, so only coefficients move.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        let ctx = self.ctx.merge(&other.ctx)?;
        let coeffs = (0..ctx.indep())
            .map(|i| {
                let a = self.apply(&other.coeff(i))?;
                let b = other.apply(&self.coeff(i))?;
                Ok((&a - &b).into_value())
            })
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(ctx, coeffs)
    }

    pub fn scale(&self, f: &RatFunc) -> Derivation {
        Derivation {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn equals(&self, other: &Derivation) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.equals(b))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*D{}", self.ctx.table().name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ g_i dx_i`.
#[derive(Clone)]
pub struct HorizontalForm {
    ctx: JetContext,
    coeffs: Vec<RatFunc>,
}

impl HorizontalForm {
    pub fn new(ctx: JetContext, coeffs: Vec<RatFunc>) -> Result<Self> {
        let d = Derivation::new(ctx, coeffs)?;
        Ok(HorizontalForm {
            ctx: d.ctx,
            coeffs: d.coeffs,
        })
    }

    pub fn ctx(&self) -> JetContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> JetFunction {
        JetFunction::from_ratfunc(self.ctx, self.coeffs[i].clone())
    }

    /// `ω(∇) = Σ g_i c_i`.
    pub fn pair(&self, d: &Derivation) -> JetFunction {
        let ctx = self.ctx.merge(&d.ctx).expect("arity");
        let v = self
            .coeffs
            .iter()
            .zip(&d.coeffs)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(RatFunc::zero(ctx.table()), |acc, (a, b)| &acc + &(a * b));
        JetFunction::from_ratfunc(ctx, v)
    }

    pub fn scale(&self, f: &RatFunc) -> HorizontalForm {
        HorizontalForm {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }
}

impl fmt::Display for HorizontalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*d{}", self.ctx.table().name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for HorizontalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `d̂f = Σ (df/dx_i) dx_i`.
pub fn total_differential(f: &JetFunction) -> Result<HorizontalForm> {
    let n = f.ctx().indep();
    let comps = (0..n).map(|i| total_derivative(f, i)).collect::<Result<Vec<_>>>()?;
    let ctx = comps.iter().fold(f.ctx(), |c, g| c.merge(&g.ctx()).unwrap());
    Ok(HorizontalForm {
        ctx,
        coeffs: comps.into_iter().map(JetFunction::into_value).collect(),
    })
}

/// Derivations `τ_i` with `τ_i(f_j) = δ_ij`, from the inverse of the matrix
/// `M_ij = d f_i / dx_j`.
pub fn tresse_frame(fs: &[JetFunction]) -> Result<Vec<Derivation>> {
    let Some(first) = fs.first() else {
        return Err(Error::Arity { expected: 1, got: 0 });
    };
    let n = first.ctx().indep();
    if fs.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: fs.len(),
        });
    }
    let forms = fs.iter().map(total_differential).collect::<Result<Vec<_>>>()?;
    let ctx = forms.iter().fold(first.ctx(), |c, w| c.merge(&w.ctx).unwrap());
    let m: Vec<Vec<RatFunc>> = forms.iter().map(|w| w.coeffs.clone()).collect();
    let inv = linalg::inverse(&m).map_err(|_| Error::Degenerate("functions are not in general position".into()))?;
    Ok((0..n)
        .map(|i| Derivation {
            ctx,
            coeffs: (0..n).map(|j| inv[j][i].clone()).collect(),
        })
        .collect())
}

pub fn tresse_derivative(g: &JetFunction, frame: &[Derivation], i: usize) -> Result<JetFunction> {
    let d = frame.get(i).ok_or(Error::AxisOutOfRange {
        axis: i,
        indep: frame.len(),
    })?;
    d.apply(g)
}

/// Restriction to the prolonged Euler equation of degree `n`: every `u_σ`
/// with `|σ| < n` is rewritten through order-`n` variables, and `u_σ` with
/// `|σ| > n` is set to zero.
pub fn euler_reduce(f: &JetFunction, n: usize) -> Result<JetFunction> {
    let indep = f.ctx().indep();
    if indep < 2 {
        return Err(Error::Unsupported("Euler reduction needs 2 or 3 independent variables".into()));
    }
    let ctx = f.ctx().ensure(n)?;
    let t = ctx.table();
    let mut memo: FxHashMap<MultiIndex, MultiPoly> = FxHashMap::default();
    fn reduce(ctx: &JetContext, n: usize, s: &MultiIndex, memo: &mut FxHashMap<MultiIndex, MultiPoly>) -> MultiPoly {
        if let Some(p) = memo.get(s) {
            return p.clone();
        }
        let t = ctx.table();
        let ord = s.iter().sum::<u32>() as usize;
        let p = if ord > n {
            MultiPoly::zero(t)
        } else if ord == n {
            MultiPoly::var(t, ctx.u(s))
        } else {
            let mut acc = MultiPoly::zero(t);
            for i in 0..ctx.indep() {
                let mut up = s.clone();
                up[i] += 1;
                let e = reduce(ctx, n, &up, memo);
                acc = &acc + &(&MultiPoly::var(t, i) * &e);
            }
            acc.scale(&Rational::new(1, (n - ord) as i64))
        };
        memo.insert(s.clone(), p.clone());
        p
    }
    for v in f.value().variables() {
        if let Some(s) = ctx.sigma(v) {
            if (s.iter().sum::<u32>() as usize) < n {
                reduce(&ctx, n, s, &mut memo);
            }
        }
    }
    let image = |v: usize| -> Option<RatFunc> {
        let s = ctx.sigma(v)?;
        let ord = s.iter().sum::<u32>() as usize;
        if ord == n {
            None
        } else if ord > n {
            Some(RatFunc::zero(t))
        } else {
            memo.get(s).cloned().map(RatFunc::from_poly)
        }
    };
    let value = f.value().substitute(t, &image)?;
    JetFunction::new(ctx, value)
}
