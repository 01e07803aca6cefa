use super::{multi_indices, JetContext, JetFunction};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Rational};
use crate::polyalg::{Monomial, MultiPoly, VarTable};

/// Rational values for every coordinate of a jet chart, indexed by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetPoint {
    ctx: JetContext,
    values: Vec<Rational>,
}

impl JetPoint {
    pub fn new(ctx: JetContext, values: Vec<Rational>) -> Result<Self> {
        if values.len() != ctx.dim() {
            return Err(Error::Arity {
                expected: ctx.dim(),
                got: values.len(),
            });
        }
        Ok(JetPoint { ctx, values })
    }

    /// The jet of a polynomial `f(x, y, …)` at `point`.
    pub fn of_polynomial(ctx: JetContext, f: &MultiPoly, point: &[Rational]) -> Result<Self> {
        let n = ctx.indep();
        if point.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: point.len(),
            });
        }
        let mut values: Vec<Rational> = point.to_vec();
        for sigma in ctx.all_sigmas() {
            let mut g = f.clone();
            for (axis, &k) in sigma.iter().enumerate() {
                for _ in 0..k {
                    g = g.partial(axis);
                }
            }
            values.push(g.eval(&|v| point[v].clone()));
        }
        Ok(JetPoint { ctx, values })
    }

    pub fn ctx(&self) -> JetContext {
        self.ctx
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn eval(&self, f: &JetFunction) -> Result<Rational> {
        if f.order() > self.ctx.max_order() || f.ctx().indep() != self.ctx.indep() {
            return Err(Error::Invalid("function is not defined on this jet chart".into()));
        }
        f.value().eval(&|v| self.values[v].clone())
    }
}

/// Rank of the Jacobian of `fs` with respect to all chart coordinates at `p`.
pub fn jacobian_rank(fs: &[JetFunction], p: &JetPoint) -> Result<usize> {
    let dim = p.ctx.dim();
    let mut rows = Vec::with_capacity(fs.len());
    for f in fs {
        if f.order() > p.ctx.max_order() {
            return Err(Error::Invalid("function is not defined on this jet chart".into()));
        }
        let row = (0..dim)
            .map(|v| f.value().partial(v).eval(&|w| p.values[w].clone()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(ExactMatrix::from_rows(rows).rank())
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| &acc * &Rational::from_int(k))
}

fn sigma_factorial(s: &[u32]) -> Rational {
    s.iter().fold(Rational::one(), |acc, &k| &acc * &factorial(k))
}

/// Transports a jet by a unimodular linear map: `[f]_p ↦ [f∘A⁻¹]_{Ap}`.
pub fn act_on_jet(a: &ExactMatrix, p: &JetPoint) -> Result<JetPoint> {
    let n = p.ctx.indep();
    if a.rows() != n || a.cols() != n {
        return Err(Error::Arity {
            expected: n,
            got: a.rows(),
        });
    }
    let det = a.det();
    if !det.is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let binv = a.inverse().expect("unimodular");
    let b: Vec<Vec<Rational>> = (0..n).map(|i| binv.row(i).to_vec()).collect();

    let wt = VarTable::new(&["w0", "w1", "w2"][..n]).unwrap();
    // l_i = (B w)_i
    let lin: Vec<MultiPoly> = (0..n)
        .map(|i| {
            MultiPoly::from_terms(&wt, (0..n).map(|j| (Monomial::var(j), b[i][j].clone())))
        })
        .collect();

    let mut values = Vec::with_capacity(p.values.len());
    for i in 0..n {
        let v = (0..n).fold(Rational::zero(), |acc, j| &acc + &(a.get(i, j) * &p.values[j]));
        values.push(v);
    }
    for m in 0..=p.ctx.max_order() as u32 {
        let sigmas = multi_indices(n, m);
        let mut taylor = MultiPoly::zero(&wt);
        for s in &sigmas {
            let u = &p.values[p.ctx.u(s)];
            if u.is_zero() {
                continue;
            }
            let mut term = MultiPoly::constant(&wt, u / &sigma_factorial(s));
            for (i, &k) in s.iter().enumerate() {
                if k > 0 {
                    term = &term * &lin[i].pow(k);
                }
            }
            taylor = &taylor + &term;
        }
        for s in &sigmas {
            let c = taylor.coeff(&Monomial::from_exponents(s));
            values.push(&c * &sigma_factorial(s));
        }
    }
    Ok(JetPoint { ctx: p.ctx, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_polynomial;

    #[test]
    fn shear_moves_jet_of_square() {
        let ctx = JetContext::new(2, 2).unwrap();
        let t = ctx.table();
        let f = parse_polynomial("x^2", t).unwrap();
        let zero = [Rational::zero(), Rational::zero()];
        let p = JetPoint::of_polynomial(ctx, &f, &zero).unwrap();
        let a = ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let q = act_on_jet(&a, &p).unwrap();
        let g = parse_polynomial("(x - y)^2", t).unwrap();
        assert_eq!(q, JetPoint::of_polynomial(ctx, &g, &zero).unwrap());
    }

    #[test]
    fn identity_and_non_unimodular() {
        let ctx = JetContext::new(2, 1).unwrap();
        let vals: Vec<Rational> = (1..=5).map(Rational::from_int).collect();
        let p = JetPoint::new(ctx, vals).unwrap();
        assert_eq!(act_on_jet(&ExactMatrix::identity(2), &p).unwrap(), p);
        let a = ExactMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(matches!(act_on_jet(&a, &p), Err(Error::NotUnimodular(_))));
    }
}
