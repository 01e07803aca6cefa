//! The `jetinv` command line: argument parsing, dispatch to the library and
//! JSON or plain rendering of results.

use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::affineinv;
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::formsalg::{discriminant, restrict, sl2_equivalent, sylvester_resultant, Form};
use crate::jets::{
    algebra, euler_reduce, lie_check, tresse_derivative, tresse_frame, Algebra, JetContext, JetFunction, JetPoint,
};
use crate::polyalg::{parse_expression, parse_polynomial, scan_names, RatFunc, VarTable};
use crate::sl2inv::{self, Builtin};
use crate::sl3inv;
use crate::syzygy::{
    cubic_relation, cubic_values, discover_relation, quartic_relation, quartic_values, verify_relation,
    DiscoverOptions, Relation, Slot, CUBIC_WEIGHTS, QUARTIC_WEIGHTS,
};

#[derive(Parser, Debug)]
#[command(name = "jetinv", version, about = "Exact rational differential invariants of forms and plane curves")]
pub struct Cli {
    /// Print the bare result instead of JSON.
    #[arg(long, global = true)]
    pub plain: bool,
    /// Wall-clock budget for the command.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub timeout_seconds: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Sl2,
    Sl3,
    Aff2,
}

impl Group {
    fn indep(self) -> usize {
        match self {
            Group::Sl3 => 3,
            _ => 2,
        }
    }

    fn algebra(self) -> Algebra {
        match self {
            Group::Sl2 => Algebra::Sl2,
            Group::Sl3 => Algebra::Sl3,
            Group::Aff2 => Algebra::Aff2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Group::Sl2 => "sl2",
            Group::Sl3 => "sl3",
            Group::Aff2 => "aff2",
        }
    }
}

/// A jet function given by expression or by built-in name.
#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Expression in x, y, z and u[..].
    #[arg(long, conflicts_with = "name", allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Built-in name (Delta2, J21, I[i,j]@k, I0, I2, a2, A, J1..J5, …).
    #[arg(long)]
    pub name: Option<String>,
    /// Group whose built-in names are used.
    #[arg(long, value_enum, default_value = "sl2")]
    pub group: Group,
    /// Number of independent variables for --expr (default from the group).
    #[arg(long)]
    pub indep: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Cubic,
    Quartic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a named or parsed invariant, optionally at a jet point.
    Eval {
        #[command(flatten)]
        target: Target,
        /// Values of chart variables, e.g. "x=1, u[1,0]=2".
        #[arg(long, conflicts_with = "jet_of", allow_hyphen_values = true)]
        at: Option<String>,
        /// Evaluate at the jet of this polynomial (with --point).
        #[arg(long, requires = "point", allow_hyphen_values = true)]
        jet_of: Option<String>,
        /// Base point for --jet-of, e.g. "1,2".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Reduce modulo the Euler equation of this degree.
        #[arg(long)]
        euler: Option<usize>,
    },
    /// Restrict a jet function to a form.
    Restrict {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Discriminant Res(φx, φy) of a binary form.
    Discriminant {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Sylvester resultant of two binary forms.
    Resultant {
        #[arg(long, allow_hyphen_values = true)]
        form1: String,
        #[arg(long, allow_hyphen_values = true)]
        form2: String,
        #[arg(long)]
        degree1: Option<usize>,
        #[arg(long)]
        degree2: Option<usize>,
    },
    /// Check the Lie equation against the generators of a group.
    LieCheck {
        #[command(flatten)]
        target: Target,
    },
    /// Weight under the scaling field (or under γ with --gamma).
    Weight {
        #[command(flatten)]
        target: Target,
        /// Use γ = Σ u_σ ∂/∂u_σ instead of the scaling field.
        #[arg(long)]
        gamma: bool,
    },
    /// Tresse derivatives of a function with respect to chosen invariants.
    Tresse {
        /// Comma-separated invariants, one per independent variable.
        #[arg(long, allow_hyphen_values = true)]
        invariants: String,
        /// Function to differentiate.
        #[arg(long, allow_hyphen_values = true)]
        apply: String,
        #[arg(long, default_value_t = 2)]
        indep: usize,
    },
    /// Verify or discover polynomial relations.
    Syzygy {
        #[command(subcommand)]
        action: SyzygyAction,
    },
    /// SL2-equivalence of two binary cubics or quartics.
    Equiv {
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true)]
        form1: String,
        #[arg(long, allow_hyphen_values = true)]
        form2: String,
    },
    /// Ternary-form invariants.
    Sl3 {
        #[command(subcommand)]
        action: Sl3Action,
    },
    /// The affine frame and coframe with the radical of the Hessian.
    AffineFrame,
    /// The rational affine Tresse coframe and its dual frame.
    TresseCoframe,
}

#[derive(Subcommand, Debug)]
pub enum SyzygyAction {
    /// Check a printed relation on its restricted invariants.
    Verify {
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Search for relations up to a total-degree bound.
    Discover {
        #[arg(long)]
        bound: u32,
        /// Built-in slot values (ignored with --values).
        #[arg(long, value_enum, default_value = "cubic")]
        case: Case,
        /// Custom values separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
        /// Slot weights separated by ','; built-in cases use their own.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Combine monomials of all weights.
        #[arg(long)]
        no_weight_filter: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Sl3Action {
    /// J1 … J5 with their Lie-equation status.
    Generators,
}

/// Outcome of one command.
#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: &'static str,
    pub command: String,
    pub result: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub plain: String,
    #[serde(skip)]
    pub exit_code: i32,
}

impl CommandResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable result")
    }

    fn error(command: &str, reason: &str, message: String, exit_code: i32) -> Self {
        CommandResult {
            status: "error",
            command: command.into(),
            result: json!({ "reason": reason, "message": message }),
            diagnostics: Vec::new(),
            plain: message,
            exit_code,
        }
    }
}

struct Output {
    result: Map<String, Value>,
    diagnostics: Vec<String>,
    plain: String,
}

impl Output {
    fn new(plain: impl Into<String>) -> Self {
        Output {
            result: Map::new(),
            diagnostics: Vec::new(),
            plain: plain.into(),
        }
    }

    fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.result.insert(key.into(), v.into());
        self
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.diagnostics.push(s.into());
        self
    }
}

pub fn reason_code(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::UnknownVariable(_) => "unknown-variable",
        Error::TableMismatch => "table-mismatch",
        Error::AxisOutOfRange { .. } => "axis-out-of-range",
        Error::OrderCap { .. } => "order-cap",
        Error::DivisionByZero => "division-by-zero",
        Error::Degenerate(_) => "degenerate",
        Error::NotHomogeneous(_) => "not-homogeneous",
        Error::NotUnimodular(_) => "not-unimodular",
        Error::Torsion => "torsion",
        Error::Unsupported(_) => "unsupported",
        Error::UnknownName(_) => "unknown-name",
        Error::Arity { .. } => "arity",
        Error::Invalid(_) => "invalid",
        Error::BudgetExceeded => "budget-exceeded",
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Eval { .. } => "eval".into(),
        Command::Restrict { .. } => "restrict".into(),
        Command::Discriminant { .. } => "discriminant".into(),
        Command::Resultant { .. } => "resultant".into(),
        Command::LieCheck { .. } => "lie-check".into(),
        Command::Weight { .. } => "weight".into(),
        Command::Tresse { .. } => "tresse".into(),
        Command::Syzygy { action } => match action {
            SyzygyAction::Verify { .. } => "syzygy verify".into(),
            SyzygyAction::Discover { .. } => "syzygy discover".into(),
        },
        Command::Equiv { .. } => "equiv".into(),
        Command::Sl3 { .. } => "sl3 generators".into(),
        Command::AffineFrame => "affine-frame".into(),
        Command::TresseCoframe => "tresse-coframe".into(),
    }
}

/// Splits at `sep` outside brackets and parentheses.
fn split_top(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

enum Resolved {
    Function(JetFunction),
    Object(Builtin),
}

fn resolve(t: &Target) -> Result<Resolved> {
    if let Some(e) = &t.expr {
        let n = t.indep.unwrap_or(t.group.indep());
        return Ok(Resolved::Function(JetContext::new(n, 0)?.parse(e)?));
    }
    let name = t
        .name
        .as_deref()
        .ok_or_else(|| Error::Invalid("give --expr or --name".into()))?;
    let b = match t.group {
        Group::Sl2 => sl2inv::builtin(name)?,
        Group::Sl3 => sl3inv::builtin(name)?,
        Group::Aff2 => Builtin::Function(affineinv::builtin(name)?),
    };
    Ok(match b {
        Builtin::Function(f) => Resolved::Function(f),
        other => Resolved::Object(other),
    })
}

fn resolve_function(t: &Target) -> Result<JetFunction> {
    match resolve(t)? {
        Resolved::Function(f) => Ok(f),
        Resolved::Object(_) => Err(Error::Invalid("this name denotes a derivation or form, not a function".into())),
    }
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Invalid(format!("bad number `{s}`: {}", e.0)))
}

fn point_from_assignments(f: &JetFunction, text: &str) -> Result<JetPoint> {
    let ctx = f.ctx();
    let mut values: Vec<Option<Rational>> = vec![None; ctx.dim()];
    for item in split_top(text, ',') {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected name=value, got `{item}`")))?;
        let idx = ctx
            .table()
            .index_of(k.trim())
            .filter(|&i| i < ctx.dim())
            .ok_or_else(|| Error::UnknownVariable(k.trim().into()))?;
        values[idx] = Some(parse_rational(v)?);
    }
    let needed = f.value().variables();
    let missing: Vec<&str> = needed
        .iter()
        .filter(|&&v| values[v].is_none())
        .map(|&v| ctx.table().name(v))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Invalid(format!("no value for {}", missing.join(", "))));
    }
    JetPoint::new(ctx, values.into_iter().map(Option::unwrap_or_default).collect())
}

fn point_from_polynomial(f: &JetFunction, poly: &str, point: &str) -> Result<JetPoint> {
    let ctx = f.ctx();
    let axes = &["x", "y", "z"][..ctx.indep()];
    let t = VarTable::new(axes)?;
    let p = parse_polynomial(poly, &t)?;
    let coords = split_top(point, ',')
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()?;
    JetPoint::of_polynomial(ctx, &p, &coords)
}

fn describe_object(b: &Builtin) -> Output {
    match b {
        Builtin::Derivation(d) => Output::new(d.to_string())
            .with("kind", "derivation")
            .with("components", strings(d.coeffs())),
        Builtin::Form(w) => Output::new(w.to_string())
            .with("kind", "form")
            .with("components", strings(w.coeffs())),
        Builtin::Function(f) => Output::new(f.to_string()).with("expression", f.to_string()),
    }
}

fn form_arg(text: &str, degree: Option<usize>) -> Result<Form> {
    Form::from_text(text, 2, degree)
}

fn relation_output(r: &Relation, verified: bool) -> Output {
    Output::new(if verified { "true" } else { "false" })
        .with("relation", r.to_string())
        .with("verified", verified)
}

fn eval(
    target: &Target,
    at: &Option<String>,
    jet_of: &Option<String>,
    point: &Option<String>,
    euler: Option<usize>,
) -> Result<Output> {
    let f = match resolve(target)? {
        Resolved::Function(f) => f,
        Resolved::Object(b) => return Ok(describe_object(&b)),
    };
    let f = match euler {
        Some(n) => euler_reduce(&f, n)?,
        None => f,
    };
    let mut out = Output::new(f.to_string())
        .with("expression", f.to_string())
        .with("order", f.order());
    let p = match (at, jet_of, point) {
        (Some(a), _, _) => Some(point_from_assignments(&f, a)?),
        (None, Some(poly), Some(pt)) => Some(point_from_polynomial(&f, poly, pt)?),
        _ => None,
    };
    if let Some(p) = p {
        let v = p.eval(&f)?;
        out.plain = v.to_string();
        out = out.with("value", v.to_string());
    }
    Ok(out)
}

fn syzygy_discover(
    bound: u32,
    case: Case,
    values: &Option<String>,
    weights: &Option<String>,
    no_filter: bool,
    timeout: Option<f64>,
) -> Result<Output> {
    let parse_weights = |w: &str| -> Result<Vec<i64>> {
        w.split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Invalid(format!("bad weight `{s}`"))))
            .collect()
    };
    let (vals, slots, default_w) = match values {
        Some(text) => {
            let items: Vec<String> = text.split(';').map(|s| s.trim().to_string()).collect();
            let mut names: Vec<String> = Vec::new();
            for it in &items {
                for n in scan_names(it)? {
                    if !names.contains(&n) {
                        names.push(n);
                    }
                }
            }
            let t = VarTable::new(&names)?;
            let vals = items
                .iter()
                .map(|s| parse_expression(s, &t))
                .collect::<Result<Vec<RatFunc>>>()?;
            let slots = items
                .iter()
                .enumerate()
                .map(|(i, s)| Slot::new(&format!("Z{i}"), s))
                .collect();
            (vals, slots, None)
        }
        None => match case {
            Case::Cubic => {
                let (v, s) = cubic_values()?;
                (v, s, Some(CUBIC_WEIGHTS.to_vec()))
            }
            Case::Quartic => {
                let (v, s) = quartic_values()?;
                (v, s, Some(QUARTIC_WEIGHTS.to_vec()))
            }
        },
    };
    let weights = if no_filter {
        None
    } else {
        match weights {
            Some(w) => Some(parse_weights(w)?),
            None => default_w,
        }
    };
    let opts = DiscoverOptions {
        weights: weights.clone(),
        slots: Some(slots),
        timeout_seconds: timeout,
    };
    let rels = discover_relation(&vals, bound, &opts)?;
    let texts = strings(&rels);
    let mut out = Output::new(texts.join("\n"))
        .with("relations", texts)
        .with("bound", bound)
        .with("weights", weights.clone().map_or(Value::Null, |w| json!(w)));
    if values.is_none() {
        let printed = match case {
            Case::Cubic => cubic_relation(),
            Case::Quartic => quartic_relation(),
        };
        let hits = rels.iter().filter(|r| r.proportional(&printed)).count();
        out = out.note(format!("{hits} of {} relations proportional to the printed relation", rels.len()));
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Eval {
            target,
            at,
            jet_of,
            point,
            euler,
        } => eval(target, at, jet_of, point, *euler),
        Command::Restrict { target, form, degree } => {
            let f = resolve_function(target)?;
            let phi = Form::from_text(form, f.ctx().indep(), *degree)?;
            let r = restrict(&f, &phi)?;
            Ok(Output::new(r.to_string()).with("expression", r.to_string()))
        }
        Command::Discriminant { form, degree } => {
            let phi = form_arg(form, *degree)?;
            let d = discriminant(&phi)?;
            let deg = d.numer().terms().first().map(|(m, _)| {
                m.iter()
                    .filter(|(v, _)| *v >= 2)
                    .map(|(_, e)| e)
                    .sum::<u32>()
            });
            Ok(Output::new(d.to_string())
                .with("expression", d.to_string())
                .with("coefficient_degree", deg.map_or(Value::Null, |d| json!(d)))
                .note("Res(phi_x, phi_y) as a Sylvester determinant, dehomogenized at y = 1"))
        }
        Command::Resultant {
            form1,
            form2,
            degree1,
            degree2,
        } => {
            let a = form_arg(form1, *degree1)?;
            let b = form_arg(form2, *degree2)?;
            let r = sylvester_resultant(&a, &b)?;
            Ok(Output::new(r.to_string())
                .with("expression", r.to_string())
                .note(format!(
                    "Sylvester determinant with formal degrees ({}, {}), dehomogenized at y = 1",
                    a.degree(),
                    b.degree()
                )))
        }
        Command::LieCheck { target } => {
            let f = resolve_function(target)?;
            let ok = lie_check(&f, &algebra(target.group.algebra()))?;
            Ok(Output::new(ok.to_string())
                .with("invariant", ok)
                .with("group", target.group.label())
                .with("order", f.order()))
        }
        Command::Weight { target, gamma } => {
            let f = resolve_function(target)?;
            let w = if *gamma {
                affineinv::gamma_weight(&f)?
            } else {
                sl2inv::weight(&f)?
            };
            Ok(Output::new(w.to_string())
                .with("weight", w)
                .with("field", if *gamma { "gamma" } else { "V*" }))
        }
        Command::Tresse {
            invariants,
            apply,
            indep,
        } => {
            let ctx = JetContext::new(*indep, 0)?;
            let fs = split_top(invariants, ',')
                .iter()
                .map(|s| ctx.parse(s))
                .collect::<Result<Vec<_>>>()?;
            let g = ctx.parse(apply)?;
            let frame = tresse_frame(&fs)?;
            let ds = (0..frame.len())
                .map(|i| tresse_derivative(&g, &frame, i))
                .collect::<Result<Vec<_>>>()?;
            let comps: Vec<Vec<String>> = frame.iter().map(|d| strings(d.coeffs())).collect();
            Ok(Output::new(strings(&ds).join("\n"))
                .with("frame", json!(comps))
                .with("derivatives", strings(&ds)))
        }
        Command::Syzygy { action } => match action {
            SyzygyAction::Verify { case } => {
                let (rel, (vals, _)) = match case {
                    Case::Cubic => (cubic_relation(), cubic_values()?),
                    Case::Quartic => (quartic_relation(), quartic_values()?),
                };
                let ok = verify_relation(&rel, &vals)?;
                let mut out = relation_output(&rel, ok);
                if *case == Case::Cubic {
                    out = out.note(
                        "D = Res(phi_x, phi_y) equals the printed discriminant with 81*a3^2 (constant 1)",
                    );
                }
                Ok(out)
            }
            SyzygyAction::Discover {
                bound,
                case,
                values,
                weights,
                no_weight_filter,
            } => syzygy_discover(*bound, *case, values, weights, *no_weight_filter, cli.timeout_seconds),
        },
        Command::Equiv { degree, form1, form2 } => {
            let a = form_arg(form1, Some(*degree))?;
            let b = form_arg(form2, Some(*degree))?;
            let v = sl2_equivalent(&a, &b)?;
            let status = serde_json::to_value(v.status).expect("status");
            let plain = status.as_str().unwrap_or_default().to_string();
            let mut out = Output::new(plain)
                .with("verdict", status)
                .with("witness", serde_json::to_value(&v.witness).expect("witness"));
            out.diagnostics.extend(v.notes);
            Ok(out)
        }
        Command::Sl3 {
            action: Sl3Action::Generators,
        } => {
            let gens = sl3inv::sl3_generators()?;
            let mut list = Vec::new();
            for (i, g) in gens.iter().enumerate() {
                let inv = sl3inv::sl3_lie_check(g)?;
                list.push(json!({ "name": format!("J{}", i + 1), "expression": g.to_string(), "invariant": inv }));
            }
            Ok(Output::new(strings(&gens).join("\n"))
                .with("generators", list)
                .note("J3 = nabla1(A), J4 = nabla2(A), J5 = nabla3(A) with omega2 = dA"))
        }
        Command::AffineFrame => {
            let (n1, n2) = affineinv::affine_frame();
            let [w1, w2] = affineinv::affine_coframe();
            let vol = affineinv::affine_volume();
            Ok(Output::new(format!("nabla1 = {n1}"))
                .with("nabla1", strings(n1.coeffs()))
                .with("nabla2", strings(n2.coeffs()))
                .with("omega1", strings(w1.coeffs()))
                .with("omega2", strings(w2.coeffs()))
                .with("volume", vol.to_string())
                .note("sqrt(...) is the formal root of the Hessian u[2,0]*u[0,2] - u[1,1]^2"))
        }
        Command::TresseCoframe => {
            let co = affineinv::affine_tresse_coframe()?;
            let fr = affineinv::affine_tresse_frame()?;
            Ok(Output::new(format!("omega1 = {}\nomega2 = {}", co[0], co[1]))
                .with("omega1", strings(co[0].coeffs()))
                .with("omega2", strings(co[1].coeffs()))
                .with("tau1", strings(fr[0].coeffs()))
                .with("tau2", strings(fr[1].coeffs())))
        }
    }
}

fn finish(cli: &Cli, r: Result<Output>) -> CommandResult {
    let command = command_name(&cli.command);
    match r {
        Ok(o) => CommandResult {
            status: "ok",
            command,
            result: Value::Object(o.result),
            diagnostics: o.diagnostics,
            plain: o.plain,
            exit_code: 0,
        },
        Err(e) => {
            let code = if e == Error::BudgetExceeded { 3 } else { 1 };
            CommandResult::error(&command, reason_code(&e), e.to_string(), code)
        }
    }
}

/// Runs a parsed command, honouring `--timeout-seconds`.
pub fn run_cli(cli: Cli) -> CommandResult {
    let command = command_name(&cli.command);
    let timeout = cli.timeout_seconds;
    let (tx, rx) = mpsc::channel();
    let worker = std::thread::Builder::new()
        .stack_size(64 << 20)
        .spawn(move || {
            let r = dispatch(&cli);
            let _ = tx.send(finish(&cli, r));
        });
    if let Err(e) = worker {
        return CommandResult::error(&command, "internal", e.to_string(), 2);
    }
    let got = match timeout {
        Some(s) if s.is_finite() && s >= 0.0 => rx.recv_timeout(Duration::from_secs_f64(s)).map_err(|e| match e {
            mpsc::RecvTimeoutError::Timeout => true,
            mpsc::RecvTimeoutError::Disconnected => false,
        }),
        _ => rx.recv().map_err(|_| false),
    };
    match got {
        Ok(r) => r,
        Err(true) => CommandResult::error(&command, "budget-exceeded", Error::BudgetExceeded.to_string(), 3),
        Err(false) => CommandResult::error(&command, "internal", "internal error".into(), 2),
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn run_command<I, T>(argv: I) -> std::result::Result<CommandResult, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv).map(run_cli)
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let r = CommandResult::error("", "usage", e.to_string().trim().to_string(), 1);
            println!("{}", r.to_json());
            return 1;
        }
    };
    let plain = cli.plain;
    let r = run_cli(cli);
    if plain {
        if r.status == "ok" {
            println!("{}", r.plain);
        } else {
            eprintln!("error: {}", r.plain);
        }
    } else {
        println!("{}", r.to_json());
    }
    r.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        let mut v = vec!["jetinv"];
        v.extend_from_slice(args);
        run_command(v).unwrap()
    }

    #[test]
    fn weight_of_hessian() {
        let r = run(&["weight", "--expr", "u[2,0]*u[0,2]-u[1,1]^2"]);
        assert_eq!(r.status, "ok");
        assert_eq!(r.result["weight"], json!(-4));
        assert_eq!(r.plain, "-4");
    }

    #[test]
    fn errors_carry_reasons() {
        let r = run(&["weight", "--expr", "x + u[0,0]"]);
        assert_eq!((r.status, r.exit_code), ("error", 1));
        assert_eq!(r.result["reason"], json!("not-homogeneous"));
        let r = run(&["eval", "--expr", "u[2,0]*"]);
        assert_eq!(r.result["reason"], json!("syntax"));
        let r = run(&["eval", "--name", "Nope"]);
        assert_eq!(r.result["reason"], json!("unknown-name"));
    }

    #[test]
    fn equivalence_and_lie_check() {
        let r = run(&["equiv", "--degree", "3", "--form1", "x^3+y^3", "--form2", "x^3+y^3"]);
        assert_eq!(r.result["verdict"], json!("equivalent"));
        let r = run(&["lie-check", "--name", "J21"]);
        assert_eq!(r.result["invariant"], json!(true));
    }

    #[test]
    fn evaluation_at_points() {
        let r = run(&["eval", "--name", "Delta2", "--jet-of", "x^2+y^2", "--point", "1,1"]);
        assert_eq!(r.result["value"], json!("4"));
        let r = run(&["eval", "--expr", "u[1,0]*x", "--at", "x=2, u[1,0]=3/2"]);
        assert_eq!(r.plain, "3");
        let r = run(&["eval", "--expr", "u[1,0]*x", "--at", "x=2"]);
        assert_eq!(r.status, "error");
    }

    #[test]
    fn split_respects_brackets() {
        assert_eq!(split_top("u[1,0], u[0,1]", ','), vec!["u[1,0]", "u[0,1]"]);
    }

    #[test]
    fn zero_budget_expires() {
        let r = run(&["--timeout-seconds", "0", "syzygy", "discover", "--bound", "5"]);
        assert_eq!(r.exit_code, 3);
        assert_eq!(r.result["reason"], json!("budget-exceeded"));
    }
}
