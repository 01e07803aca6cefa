//! Jet coordinates in one to three independent variables.
//!
//! All jet variables of a given arity live in one shared [`VarTable`] laid
//! out as `x, y, z` followed by `u_σ` ordered by `|σ|` and, within an order,
//! lexicographically descending. The chart of order `k` is therefore the
//! index prefix `0..dim(k)`.

mod action;
mod fields;
mod frames;
pub mod linalg;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::polyalg::{parse_expression, RatFunc, TableKind, TableRef, VarImage, VarTable};

pub use action::{act_on_jet, jacobian_rank, JetPoint};
pub use fields::{algebra, lie_check, prolong_field, Algebra, PointField, ProlongedField};
pub use frames::{euler_reduce, total_differential, tresse_derivative, tresse_frame, Derivation, HorizontalForm};

pub type MultiIndex = Vec<u32>;

const AXIS_NAMES: [&str; 3] = ["x", "y", "z"];

/// Largest order held by the shared table for each arity.
fn table_order(indep: usize) -> usize {
    match indep {
        1 => 60,
        2 => 40,
        _ => 24,
    }
}

pub(crate) struct JetLayout {
    table: TableRef,
    sigma: Vec<Option<MultiIndex>>,
    index: FxHashMap<MultiIndex, usize>,
    /// `shift[v][i]` is the index of `u_{σ+e_i}` for `v = u_σ`.
    shift: Vec<Vec<usize>>,
}

/// Multi-indices of order `m` in the table order (lexicographically descending).
pub fn multi_indices(indep: usize, m: u32) -> Vec<MultiIndex> {
    fn rec(indep: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == indep {
            prefix.push(m);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=m).rev() {
            prefix.push(first);
            rec(indep, m - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(indep, m, &mut Vec::new(), &mut out);
    out
}

fn jet_name(sigma: &[u32]) -> String {
    let parts: Vec<String> = sigma.iter().map(u32::to_string).collect();
    format!("u[{}]", parts.join(","))
}

fn build_layout(indep: usize) -> JetLayout {
    let top = table_order(indep) as u32;
    let mut names: Vec<String> = AXIS_NAMES[..indep].iter().map(|s| s.to_string()).collect();
    let mut sigma = vec![None; indep];
    let mut index = FxHashMap::default();
    for m in 0..=top {
        for s in multi_indices(indep, m) {
            index.insert(s.clone(), names.len());
            names.push(jet_name(&s));
            sigma.push(Some(s));
        }
    }
    let mut shift = vec![Vec::new(); names.len()];
    for (v, s) in sigma.iter().enumerate() {
        if let Some(s) = s {
            if (s.iter().sum::<u32>()) < top {
                shift[v] = (0..indep)
                    .map(|i| {
                        let mut t = s.clone();
                        t[i] += 1;
                        index[&t]
                    })
                    .collect();
            }
        }
    }
    let table = VarTable::build(names, TableKind::Jet { indep }).expect("jet table");
    JetLayout {
        table,
        sigma,
        index,
        shift,
    }
}

pub(crate) fn layout(indep: usize) -> &'static JetLayout {
    static LAYOUTS: [OnceLock<JetLayout>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    LAYOUTS[indep - 1].get_or_init(|| build_layout(indep))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Order cap for automatic context extension (`JETINV_MAX_ORDER`, default 12).
pub fn order_cap() -> usize {
    std::env::var("JETINV_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(12)
}

/// A jet chart: number of independent variables and the maximal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JetContext {
    indep: usize,
    max_order: usize,
}

impl JetContext {
    pub fn new(indep: usize, max_order: usize) -> Result<Self> {
        if !(1..=3).contains(&indep) {
            return Err(Error::Unsupported(format!("{indep} independent variables")));
        }
        let cap = order_cap().min(table_order(indep));
        if max_order > cap {
            return Err(Error::OrderCap {
                requested: max_order,
                cap,
            });
        }
        Ok(JetContext { indep, max_order })
    }

    pub fn indep(&self) -> usize {
        self.indep
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn table(&self) -> &'static TableRef {
        &layout(self.indep).table
    }

    /// Number of chart coordinates: `indep + C(indep + k, indep)`.
    pub fn dim(&self) -> usize {
        self.indep + binomial(self.indep + self.max_order, self.indep)
    }

    /// This context or an extension reaching `order`.
    pub fn ensure(&self, order: usize) -> Result<Self> {
        if order <= self.max_order {
            Ok(*self)
        } else {
            JetContext::new(self.indep, order)
        }
    }

    pub fn merge(&self, other: &JetContext) -> Result<Self> {
        if self.indep != other.indep {
            return Err(Error::TableMismatch);
        }
        Ok(JetContext {
            indep: self.indep,
            max_order: self.max_order.max(other.max_order),
        })
    }

    /// Variable index of the independent variable `i`.
    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.indep);
        i
    }

    /// Variable index of `u_σ`.
    pub fn u(&self, sigma: &[u32]) -> usize {
        assert_eq!(sigma.len(), self.indep, "multi-index length");
        layout(self.indep).index[sigma]
    }

    /// `σ` for a jet variable, `None` for an independent variable.
    pub fn sigma(&self, v: usize) -> Option<&'static MultiIndex> {
        layout(self.indep).sigma[v].as_ref()
    }

    pub fn var_order(&self, v: usize) -> usize {
        self.sigma(v).map_or(0, |s| s.iter().sum::<u32>() as usize)
    }

    pub(crate) fn shift(&self, v: usize, axis: usize) -> usize {
        layout(self.indep).shift[v][axis]
    }

    /// Multi-indices of all jet variables up to `max_order`.
    pub fn all_sigmas(&self) -> Vec<MultiIndex> {
        (0..=self.max_order as u32).flat_map(|m| multi_indices(self.indep, m)).collect()
    }

    pub fn var_fn(&self, v: usize) -> JetFunction {
        JetFunction::from_ratfunc(*self, RatFunc::var(self.table(), v))
    }

    pub fn u_fn(&self, sigma: &[u32]) -> Result<JetFunction> {
        let ctx = self.ensure(sigma.iter().sum::<u32>() as usize)?;
        Ok(ctx.var_fn(ctx.u(sigma)))
    }

    pub fn constant(&self, c: Rational) -> JetFunction {
        JetFunction::from_ratfunc(*self, RatFunc::constant(self.table(), c))
    }

    /// Parses an expression in `x, y, z` and `u[..]`, extending the order as
    /// needed.
    pub fn parse(&self, text: &str) -> Result<JetFunction> {
        let names = crate::polyalg::scan_names(text)?;
        let mut order = self.max_order;
        for n in &names {
            if let Some(v) = self.table().index_of(n) {
                order = order.max(self.var_order(v));
            } else {
                return Err(Error::UnknownVariable(n.clone()));
            }
        }
        let ctx = self.ensure(order)?;
        let value = parse_expression(text, ctx.table())?;
        Ok(JetFunction { ctx, value })
    }
}

/// A rational function on a jet chart.
#[derive(Clone)]
pub struct JetFunction {
    ctx: JetContext,
    value: RatFunc,
}

impl JetFunction {
    /// Wraps `value`, extending the context to the order of its variables.
    pub fn new(ctx: JetContext, value: RatFunc) -> Result<Self> {
        let table = ctx.table();
        if !Arc::ptr_eq(value.table(), table) && crate::polyalg::unify_tables(value.table(), table).is_none() {
            return Err(Error::TableMismatch);
        }
        let order = value.variables().into_iter().map(|v| ctx.var_order(v)).max().unwrap_or(0);
        let ctx = ctx.ensure(order)?;
        Ok(JetFunction { ctx, value })
    }

    pub(crate) fn from_ratfunc(ctx: JetContext, value: RatFunc) -> Self {
        JetFunction { ctx, value }
    }

    pub fn ctx(&self) -> JetContext {
        self.ctx
    }

    pub fn value(&self) -> &RatFunc {
        &self.value
    }

    pub fn into_value(self) -> RatFunc {
        self.value
    }

    /// Largest `|σ|` of an occurring `u_σ` (0 if none).
    pub fn order(&self) -> usize {
        self.value
            .variables()
            .into_iter()
            .map(|v| self.ctx.var_order(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn equals(&self, other: &JetFunction) -> bool {
        self.value.equals(&other.value)
    }

    fn lift(&self, value: RatFunc, other: &JetFunction) -> JetFunction {
        let ctx = self.ctx.merge(&other.ctx).expect("jet functions of different arity");
        JetFunction { ctx, value }
    }

    pub fn scale(&self, c: &Rational) -> JetFunction {
        JetFunction {
            ctx: self.ctx,
            value: self.value.scale(c),
        }
    }

    pub fn checked_div(&self, other: &JetFunction) -> Result<JetFunction> {
        Ok(self.lift(self.value.checked_div(&other.value)?, other))
    }

    pub fn pow(&self, e: i32) -> Result<JetFunction> {
        Ok(JetFunction {
            ctx: self.ctx,
            value: self.value.pow(e)?,
        })
    }

    pub fn recip(&self) -> Result<JetFunction> {
        Ok(JetFunction {
            ctx: self.ctx,
            value: self.value.recip()?,
        })
    }

    /// `d/dx_axis`.
    pub fn total_derivative(&self, axis: usize) -> Result<JetFunction> {
        total_derivative(self, axis)
    }
}

impl PartialEq for JetFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

macro_rules! jet_ops {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr for &JetFunction {
            type Output = JetFunction;
            fn $m(self, rhs: &JetFunction) -> JetFunction {
                self.lift(std::ops::$tr::$m(&self.value, &rhs.value), rhs)
            }
        }
        impl std::ops::$tr for JetFunction {
            type Output = JetFunction;
            fn $m(self, rhs: JetFunction) -> JetFunction {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}
jet_ops!(Add, add);
jet_ops!(Sub, sub);
jet_ops!(Mul, mul);

impl std::ops::Neg for &JetFunction {
    type Output = JetFunction;
    fn neg(self) -> JetFunction {
        JetFunction {
            ctx: self.ctx,
            value: -&self.value,
        }
    }
}

impl fmt::Display for JetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for JetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Total derivative of a rational function on the chart of `ctx`.
pub(crate) fn total_derivative_raw(ctx: &JetContext, f: &RatFunc, axis: usize) -> RatFunc {
    f.derivation(&|v| {
        if v < ctx.indep {
            (v == axis).then_some(VarImage::One)
        } else {
            Some(VarImage::Var(ctx.shift(v, axis)))
        }
    })
}

pub fn total_derivative(f: &JetFunction, axis: usize) -> Result<JetFunction> {
    let ctx = f.ctx;
    if axis >= ctx.indep {
        return Err(Error::AxisOutOfRange {
            axis,
            indep: ctx.indep,
        });
    }
    let ctx = ctx.ensure(f.order() + 1)?;
    Ok(JetFunction {
        ctx,
        value: total_derivative_raw(&ctx, &f.value, axis),
    })
}

/// `D_σ f`, applying the axes in increasing order.
pub fn total_derivative_multi(f: &JetFunction, sigma: &[u32]) -> Result<JetFunction> {
    let mut g = f.clone();
    for (axis, &k) in sigma.iter().enumerate() {
        for _ in 0..k {
            g = total_derivative(&g, axis)?;
        }
    }
    Ok(g)
}

/// `Σ c_v ∂/∂v` applied to `f`.
pub(crate) fn apply_vector_field(f: &RatFunc, comps: &[(usize, RatFunc)]) -> RatFunc {
    let vars = f.variables();
    let active: Vec<&(usize, RatFunc)> = comps
        .iter()
        .filter(|(v, c)| !c.is_zero() && vars.binary_search(v).is_ok())
        .collect();
    if active.iter().all(|(_, c)| c.is_polynomial()) {
        let img: FxHashMap<usize, &crate::polyalg::MultiPoly> =
            active.iter().map(|(v, c)| (*v, c.as_poly().unwrap())).collect();
        return f.derivation(&|v| img.get(&v).map(|p| VarImage::Poly(p)));
    }
    let mut acc = RatFunc::zero(f.table());
    for (v, c) in active {
        acc = &acc + &(c * &f.partial(*v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_orders_variables() {
        let ctx = JetContext::new(2, 2).unwrap();
        let names: Vec<&str> = (0..ctx.dim()).map(|v| ctx.table().name(v)).collect();
        assert_eq!(
            names,
            ["x", "y", "u[0,0]", "u[1,0]", "u[0,1]", "u[2,0]", "u[1,1]", "u[0,2]"]
        );
        assert_eq!(JetContext::new(3, 3).unwrap().dim(), 3 + 20);
        assert_eq!(JetContext::new(1, 4).unwrap().dim(), 6);
    }

    #[test]
    fn total_derivatives() {
        let ctx = JetContext::new(2, 2).unwrap();
        let u = ctx.parse("u[0,0]").unwrap();
        assert!(total_derivative(&u, 0).unwrap().equals(&ctx.parse("u[1,0]").unwrap()));
        let h = ctx.parse("u[2,0]*u[0,2] - u[1,1]^2").unwrap();
        let dh = total_derivative(&h, 0).unwrap();
        assert!(dh.equals(&ctx.parse("u[3,0]*u[0,2] + u[2,0]*u[1,2] - 2*u[1,1]*u[2,1]").unwrap()));
        assert_eq!(dh.order(), 3);
        assert!(matches!(total_derivative(&h, 2), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn total_derivatives_commute() {
        let ctx = JetContext::new(3, 1).unwrap();
        let f = ctx.parse("(x*u[1,0,0] + z*u[0,0,1]^2)/(y + u[0,1,0])").unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let ab = total_derivative(&total_derivative(&f, a).unwrap(), b).unwrap();
            let ba = total_derivative(&total_derivative(&f, b).unwrap(), a).unwrap();
            assert!(ab.equals(&ba));
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let ctx = JetContext::new(1, 0).unwrap();
        assert!(matches!(ctx.parse("u[40]"), Err(Error::OrderCap { .. })));
        assert!(matches!(ctx.parse("v"), Err(Error::UnknownVariable(_))));
    }
}
