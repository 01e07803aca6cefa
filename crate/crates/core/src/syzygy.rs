//! Polynomial relations among restricted invariants: verification of given
//! relations and discovery by an exponent-bounded ansatz solved with an exact
//! nullspace.

use std::fmt;
use std::time::Instant;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Rational};
use crate::formsalg::{cubic_example, discriminant, hankel_alpha, hankel_delta, restrict, Form};
use crate::jets::JetContext;
use crate::polyalg::{parse_polynomial, unify_tables, Monomial, MultiPoly, RatFunc, TableRef, VarTable};
use crate::sl2inv::{delta2, sl2_frame};

/// A slot variable of a relation and the quantity it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    pub binding: String,
}

impl Slot {
    pub fn new(name: &str, binding: &str) -> Self {
        Slot {
            name: name.into(),
            binding: binding.into(),
        }
    }
}

/// `R(Z_0, …, Z_r) = 0` with rational coefficients.
#[derive(Clone, Debug)]
pub struct Relation {
    poly: MultiPoly,
    slots: Vec<Slot>,
}

fn slot_table(slots: &[Slot]) -> Result<TableRef> {
    let names: Vec<&str> = slots.iter().map(|s| s.name.as_str()).collect();
    VarTable::new(&names)
}

impl Relation {
    /// Wraps a polynomial over the slot table, normalized to coprime integer
    /// coefficients with a positive leading coefficient.
    pub fn new(poly: MultiPoly, slots: Vec<Slot>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::Invalid("the zero relation".into()));
        }
        if poly.table().len() != slots.len() {
            return Err(Error::Arity {
                expected: slots.len(),
                got: poly.table().len(),
            });
        }
        Ok(Relation {
            poly: poly.primitive_part(),
            slots,
        })
    }

    pub fn parse(text: &str, slots: Vec<Slot>) -> Result<Self> {
        let t = slot_table(&slots)?;
        let text = text.trim();
        let lhs = text.strip_suffix("= 0").or_else(|| text.strip_suffix("=0")).unwrap_or(text);
        Relation::new(parse_polynomial(lhs, &t)?, slots)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    /// True iff `self = c·other` for a nonzero rational `c`.
    pub fn proportional(&self, other: &Relation) -> bool {
        let a = &self.poly;
        let b = other.poly.clone().with_table(a.table());
        let (Some((ma, ca)), Some((mb, cb))) = (a.leading(), b.leading()) else {
            return false;
        };
        ma == mb && a.scale(cb) == b.scale(ca)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binds: Vec<String> = self.slots.iter().map(|s| format!("{}={}", s.name, s.binding)).collect();
        write!(f, "{} = 0 where {}", self.poly, binds.join(", "))
    }
}

fn common_table(values: &[RatFunc]) -> Result<TableRef> {
    let mut t = values
        .first()
        .ok_or_else(|| Error::Invalid("no values".into()))?
        .table()
        .clone();
    for v in &values[1..] {
        t = unify_tables(&t, v.table()).ok_or(Error::TableMismatch)?;
    }
    Ok(t)
}

/// Substitutes `values` for the slots and tests for identical vanishing.
pub fn verify_relation(r: &Relation, values: &[RatFunc]) -> Result<bool> {
    if values.len() != r.slots.len() {
        return Err(Error::Arity {
            expected: r.slots.len(),
            got: values.len(),
        });
    }
    let target = common_table(values)?;
    let sub = RatFunc::from_poly(r.poly.clone()).substitute(&target, &|v| Some(values[v].clone()))?;
    Ok(sub.is_zero())
}

/// Options for [`discover_relation`].
#[derive(Clone, Debug, Default)]
pub struct DiscoverOptions {
    /// Weight of each slot; when set, only monomials of equal weight are
    /// combined.
    pub weights: Option<Vec<i64>>,
    /// Slot names and bindings (default `Z0, Z1, …`).
    pub slots: Option<Vec<Slot>>,
    /// Wall-clock budget in seconds.
    pub timeout_seconds: Option<f64>,
}

/// Exponent vectors with `|α| ≤ bound`, graded by total degree and
/// lexicographically descending within a degree.
fn exponent_vectors(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=bound {
        out.extend(crate::jets::multi_indices(n, d));
    }
    out
}

struct Deadline(Option<(Instant, f64)>);

impl Deadline {
    fn check(&self) -> Result<()> {
        match self.0 {
            Some((start, secs)) if start.elapsed().as_secs_f64() > secs => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }
}

/// Finds the polynomial relations of total degree `≤ bound` among `values`.
///
/// Each value `p_i/q_i` is linearized by multiplying the ansatz with
/// `Π q_i^bound`. Relations come out minimal: a relation is reported only if
/// it is not a combination of monomial multiples of relations already
/// found. Output is ordered by degree, then by weight class.
pub fn discover_relation(values: &[RatFunc], bound: u32, opts: &DiscoverOptions) -> Result<Vec<Relation>> {
    let deadline = Deadline(opts.timeout_seconds.map(|s| (Instant::now(), s)));
    let n = values.len();
    if bound == 0 || n == 0 {
        return Ok(Vec::new());
    }
    let slots = match &opts.slots {
        Some(s) if s.len() == n => s.clone(),
        Some(s) => {
            return Err(Error::Arity {
                expected: n,
                got: s.len(),
            })
        }
        None => (0..n).map(|i| Slot::new(&format!("Z{i}"), &format!("value {i}"))).collect(),
    };
    if let Some(w) = &opts.weights {
        if w.len() != n {
            return Err(Error::Arity {
                expected: n,
                got: w.len(),
            });
        }
    }
    let stable = slot_table(&slots)?;
    let target = common_table(values)?;
    let nums: Vec<MultiPoly> = values.iter().map(|v| v.numer().clone().with_table(&target)).collect();
    let dens: Vec<MultiPoly> = values.iter().map(|v| v.denom().with_table(&target)).collect();
    let pow_table = |base: &MultiPoly| -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::one(&target)];
        for k in 1..=bound as usize {
            out.push(&out[k - 1] * base);
        }
        out
    };
    let np: Vec<Vec<MultiPoly>> = nums.iter().map(pow_table).collect();
    let dp: Vec<Vec<MultiPoly>> = dens.iter().map(pow_table).collect();

    let alphas = exponent_vectors(n, bound);
    let weight_of = |a: &[u32]| -> i64 {
        opts.weights
            .as_ref()
            .map_or(0, |w| a.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum())
    };
    // expansions of Π p_i^{α_i} q_i^{bound − α_i}
    let mut expansions: Vec<MultiPoly> = Vec::with_capacity(alphas.len());
    for a in &alphas {
        deadline.check()?;
        let mut t = MultiPoly::one(&target);
        for i in 0..n {
            t = &t * &np[i][a[i] as usize];
            t = &t * &dp[i][(bound - a[i]) as usize];
        }
        expansions.push(t);
    }

    let mut classes: Vec<i64> = alphas.iter().map(|a| weight_of(a)).collect();
    classes.sort_unstable();
    classes.dedup();

    let mut found: Vec<MultiPoly> = Vec::new();
    let mut out: Vec<Relation> = Vec::new();
    for d in 1..=bound {
        for &w in &classes {
            deadline.check()?;
            let cols: Vec<usize> = (0..alphas.len())
                .filter(|&i| alphas[i].iter().sum::<u32>() <= d && weight_of(&alphas[i]) == w)
                .collect();
            if cols.is_empty() {
                continue;
            }
            let kernel = kernel_of(&cols, &expansions);
            if kernel.is_empty() {
                continue;
            }
            let col_index: FxHashMap<&[u32], usize> =
                cols.iter().enumerate().map(|(j, &c)| (alphas[c].as_slice(), j)).collect();
            // span of monomial multiples of relations already found
            let mut span: Vec<Vec<Rational>> = Vec::new();
            for r in &found {
                for beta in exponent_vectors(n, d) {
                    let m = Monomial::from_exponents(&beta);
                    let prod = r.mul_term(&m, &Rational::one());
                    let mut row = vec![Rational::zero(); cols.len()];
                    let mut fits = true;
                    for (mm, c) in prod.terms() {
                        let e: Vec<u32> = (0..n).map(|i| mm.exponent(i)).collect();
                        match col_index.get(e.as_slice()) {
                            Some(&j) => row[j] = c.clone(),
                            None => {
                                fits = false;
                                break;
                            }
                        }
                    }
                    if fits {
                        span.push(row);
                    }
                }
            }
            let mut rank = matrix(&span, cols.len()).rank();
            for v in kernel {
                span.push(v.clone());
                let r2 = matrix(&span, cols.len()).rank();
                if r2 == rank {
                    span.pop();
                    continue;
                }
                rank = r2;
                let poly = MultiPoly::from_terms(
                    &stable,
                    cols.iter()
                        .zip(&v)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(&c, x)| (Monomial::from_exponents(&alphas[c]), x.clone())),
                );
                let rel = Relation::new(poly, slots.clone())?;
                if !verify_relation(&rel, values)? {
                    return Err(Error::Invalid("discovered relation failed re-verification".into()));
                }
                found.push(rel.poly.clone());
                out.push(rel);
            }
        }
    }
    Ok(out)
}

fn matrix(rows: &[Vec<Rational>], cols: usize) -> ExactMatrix {
    ExactMatrix::from_entries(rows.len(), cols, rows.iter().flatten().cloned().collect())
}

/// Kernel of the coefficient-matching system for the chosen columns.
fn kernel_of(cols: &[usize], expansions: &[MultiPoly]) -> Vec<Vec<Rational>> {
    let mut row_of: FxHashMap<&Monomial, usize> = FxHashMap::default();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (j, &c) in cols.iter().enumerate() {
        for (m, coef) in expansions[c].terms() {
            let r = *row_of.entry(m).or_insert_with(|| {
                rows.push(vec![Rational::zero(); cols.len()]);
                rows.len() - 1
            });
            rows[r][j] = coef.clone();
        }
    }
    matrix(&rows, cols.len()).nullspace()
}

/// Slot values for the cubic case: `J1 = Δ2`, `J2 = ∇1(Δ2)`, `J3 = Δ2 ∇2(u00)`
/// restricted to `x³ + a1 x²y + a2 xy² + a3 y³`, and `D = Discr`.
pub fn cubic_values() -> Result<(Vec<RatFunc>, Vec<Slot>)> {
    let phi = cubic_example();
    let [n1, n2] = sl2_frame();
    let ctx = JetContext::new(2, 0)?;
    let j1 = delta2();
    let j2 = n1.apply(&j1)?;
    let j3 = &j1 * &n2.apply(&ctx.parse("u[0,0]")?)?;
    let values = vec![
        restrict(&j1, &phi)?,
        restrict(&j2, &phi)?,
        restrict(&j3, &phi)?,
        discriminant(&phi)?,
    ];
    let slots = vec![
        Slot::new("Z0", "J1|phi"),
        Slot::new("Z1", "J2|phi"),
        Slot::new("Z2", "J3|phi"),
        Slot::new("D", "Discr(phi)"),
    ];
    Ok((values, slots))
}

/// `V*`-weights of the cubic slots.
pub const CUBIC_WEIGHTS: [i64; 4] = [-4, -6, -4, -12];

/// The printed cubic relation.
pub fn cubic_relation() -> Relation {
    let (_, slots) = cubic_values().expect("cubic values");
    Relation::parse("Z0^5 + Z1^2*Z0^2 - 16*D*Z2^2", slots).expect("cubic relation")
}

/// Slot values for the quartic case on the generic quartic `Σ b_{i,4−i}
/// x^i y^{4−i}/(i!(4−i)!)`: `J0 = u00`, `J2 = Δ2`, `J3 = −∇1(J2)`, `α`, `δ`.
pub fn quartic_values() -> Result<(Vec<RatFunc>, Vec<Slot>)> {
    let phi = Form::generic(2, 4)?;
    let [n1, _] = sl2_frame();
    let ctx = JetContext::new(2, 0)?;
    let j0 = ctx.parse("u[0,0]")?;
    let j2 = delta2();
    let j3 = -&n1.apply(&j2)?;
    let values = vec![
        restrict(&j0, &phi)?,
        restrict(&j2, &phi)?,
        restrict(&j3, &phi)?,
        phi.evaluate(&hankel_alpha())?,
        phi.evaluate(&hankel_delta())?,
    ];
    let slots = vec![
        Slot::new("Z0", "J0|phi"),
        Slot::new("Z2", "J2|phi"),
        Slot::new("Z3", "J3|phi"),
        Slot::new("A", "alpha(phi)"),
        Slot::new("B", "delta(phi)"),
    ];
    Ok((values, slots))
}

/// `V*`-weights of the quartic slots.
pub const QUARTIC_WEIGHTS: [i64; 5] = [0, -4, -6, -8, -12];

/// The printed quartic relation.
pub fn quartic_relation() -> Relation {
    let (_, slots) = quartic_values().expect("quartic values");
    Relation::parse("9*Z3^2 + 16*Z2^3 + 144*A*Z0^2*Z2 + 864*B*Z0^3", slots).expect("quartic relation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tbl() -> TableRef {
        VarTable::new(&["x"]).unwrap()
    }

    #[test]
    fn verify_trivial() {
        let t = tbl();
        let f = RatFunc::var(&t, 0);
        let r = Relation::parse("Z0 - Z1", vec![Slot::new("Z0", "f"), Slot::new("Z1", "f")]).unwrap();
        assert!(verify_relation(&r, &[f.clone(), f.clone()]).unwrap());
        assert!(verify_relation(&r, &[f]).is_err());
    }

    #[test]
    fn discover_simple_relations() {
        let t = tbl();
        let x = RatFunc::var(&t, 0);
        let rels = discover_relation(&[x.clone(), x.clone()], 1, &DiscoverOptions::default()).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].poly().to_string(), "Z0 - Z1");
        let one_minus = &RatFunc::one(&t) - &(&x * &x);
        let rels = discover_relation(&[x, one_minus], 2, &DiscoverOptions::default()).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].poly().to_string(), "Z0^2 + Z1 - 1");
    }

    #[test]
    fn rational_values_are_linearized() {
        let t = tbl();
        let x = RatFunc::var(&t, 0);
        let inv = x.recip().unwrap();
        let rels = discover_relation(&[x, inv], 2, &DiscoverOptions::default()).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].poly().to_string(), "Z0*Z1 - 1");
    }

    #[test]
    fn printed_relations_hold() {
        let (v, _) = cubic_values().unwrap();
        assert!(verify_relation(&cubic_relation(), &v).unwrap());
        let (v, _) = quartic_values().unwrap();
        assert!(verify_relation(&quartic_relation(), &v).unwrap());
    }
}
