use jetinv::cli::{run_command, CommandResult};
use jetinv::formsalg::{discriminant, restrict, sl2_equivalent, sylvester_resultant, Form};
use jetinv::jets::{algebra, lie_check, tresse_derivative, tresse_frame, Algebra, JetContext};
use jetinv::sl2inv::{self, j21, weight};
use jetinv::syzygy::{cubic_relation, cubic_values, verify_relation};
use serde_json::{json, Value};

fn run(args: &[&str]) -> CommandResult {
    let mut v = vec!["jetinv"];
    v.extend_from_slice(args);
    run_command(v).expect("valid arguments")
}

fn expr(r: &CommandResult) -> &str {
    r.result["expression"].as_str().expect("expression")
}

#[test]
fn schema_is_fixed() {
    let r = run(&["weight", "--expr", "u[2,0]*u[0,2]-u[1,1]^2"]);
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "diagnostics", "result", "status"]);
    assert_eq!(v["status"], json!("ok"));
    assert_eq!(v["command"], json!("weight"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["syzygy", "discover", "--bound", "5"][..],
        &["eval", "--name", "I[1,2]@3"],
        &["resultant", "--form1", "x^2 - y^2", "--form2", "x*y + y^2"],
    ] {
        assert_eq!(run(args).to_json(), run(args).to_json());
    }
}

#[test]
fn documented_examples() {
    let r = run(&["syzygy", "verify", "--case", "cubic"]);
    assert_eq!((r.status, r.exit_code), ("ok", 0));
    assert_eq!(r.result["verified"], json!(true));
    assert_eq!(run(&["weight", "--expr", "u[2,0]*u[0,2]-u[1,1]^2"]).result["weight"], json!(-4));
    let r = run(&["equiv", "--degree", "3", "--form1", "x^3+y^3", "--form2", "x^3+y^3"]);
    assert_eq!(r.result["verdict"], json!("equivalent"));
}

#[test]
fn parity_with_library() {
    let ctx = JetContext::new(2, 0).unwrap();
    let f = ctx.parse("u[0,1]^2*u[2,0] - 2*u[1,0]*u[0,1]*u[1,1] + u[1,0]^2*u[0,2]").unwrap();
    assert_eq!(expr(&run(&["eval", "--name", "J21"])), j21().to_string());
    assert_eq!(
        run(&["weight", "--name", "I[3,0]@3"]).result["weight"],
        json!(weight(&sl2inv::theta_coefficient(3, 0).unwrap()).unwrap())
    );
    let phi = Form::from_text("x^3 + a1*x^2*y + a2*x*y^2 + a3*y^3", 2, Some(3)).unwrap();
    let r = run(&["restrict", "--name", "J21", "--form", "x^3 + a1*x^2*y + a2*x*y^2 + a3*y^3"]);
    assert_eq!(expr(&r), restrict(&f, &phi).unwrap().to_string());
    let r = run(&["discriminant", "--form", "x^3 + a1*x^2*y + a2*x*y^2 + a3*y^3"]);
    assert_eq!(expr(&r), discriminant(&phi).unwrap().to_string());
    assert_eq!(r.result["coefficient_degree"], json!(4));
    let (a, b) = (
        Form::from_text("x^2 - y^2", 2, None).unwrap(),
        Form::from_text("x*y + y^2", 2, None).unwrap(),
    );
    let r = run(&["resultant", "--form1", "x^2 - y^2", "--form2", "x*y + y^2"]);
    assert_eq!(expr(&r), sylvester_resultant(&a, &b).unwrap().to_string());
    let r = run(&["lie-check", "--expr", "u[1,0]*u[0,1]", "--group", "sl2"]);
    assert_eq!(r.result["invariant"], json!(lie_check(&ctx.parse("u[1,0]*u[0,1]").unwrap(), &algebra(Algebra::Sl2)).unwrap()));
    let (p, q) = (
        Form::from_text("x^4 + y^4", 2, Some(4)).unwrap(),
        Form::from_text("x^4 - y^4", 2, Some(4)).unwrap(),
    );
    let r = run(&["equiv", "--degree", "4", "--form1", "x^4 + y^4", "--form2", "x^4 - y^4"]);
    let v = sl2_equivalent(&p, &q).unwrap();
    assert_eq!(r.result["verdict"], serde_json::to_value(v.status).unwrap());
    assert_eq!(r.result["witness"], serde_json::to_value(&v.witness).unwrap());
    let (vals, _) = cubic_values().unwrap();
    assert_eq!(
        run(&["syzygy", "verify", "--case", "cubic"]).result["verified"],
        json!(verify_relation(&cubic_relation(), &vals).unwrap())
    );
}

#[test]
fn tresse_matches_library() {
    let ctx = JetContext::new(2, 0).unwrap();
    let fs = [ctx.parse("u[0,0]").unwrap(), ctx.parse("u[1,0]").unwrap()];
    let g = ctx.parse("u[0,1]").unwrap();
    let fr = tresse_frame(&fs).unwrap();
    let r = run(&["tresse", "--invariants", "u[0,0],u[1,0]", "--apply", "u[0,1]"]);
    let want: Vec<String> = (0..2).map(|i| tresse_derivative(&g, &fr, i).unwrap().to_string()).collect();
    assert_eq!(r.result["derivatives"], json!(want));
}

#[test]
fn groups_and_errors() {
    assert_eq!(run(&["lie-check", "--name", "A", "--group", "sl3"]).result["invariant"], json!(true));
    assert_eq!(run(&["lie-check", "--name", "a2", "--group", "aff2"]).result["invariant"], json!(true));
    assert_eq!(run(&["weight", "--name", "a2", "--group", "aff2", "--gamma"]).result["weight"], json!(0));
    let r = run(&["sl3", "generators"]);
    assert_eq!(r.result["generators"].as_array().unwrap().len(), 5);
    let r = run(&["eval", "--name", "omega1"]);
    assert_eq!(r.result["kind"], json!("form"));
    let r = run(&["equiv", "--degree", "5", "--form1", "x^5", "--form2", "y^5"]);
    assert_eq!((r.status, r.result["reason"].clone()), ("error", json!("unsupported")));
    let r = run(&["discriminant", "--form", "x^2 + y"]);
    assert_eq!(r.result["reason"], json!("not-homogeneous"));
    let r = run(&["syzygy", "discover", "--bound", "4", "--case", "quartic"]);
    assert_eq!(r.result["relations"].as_array().unwrap().len(), 1);
    let r = run(&["syzygy", "discover", "--bound", "2", "--values", "x; x^2", "--no-weight-filter"]);
    assert_eq!(r.result["relations"], json!(["Z0^2 - Z1 = 0 where Z0=x, Z1=x^2"]));
}

#[test]
fn affine_commands() {
    let r = run(&["affine-frame"]);
    assert_eq!(r.status, "ok");
    assert!(r.result["nabla2"][0].as_str().unwrap().contains("sqrt"));
    let r = run(&["tresse-coframe"]);
    assert_eq!(r.result["omega1"], json!(["u[1,0]", "u[0,1]"]));
}

#[test]
fn usage_errors_exit_with_one() {
    assert!(run_command(["jetinv", "nonsense"]).is_err());
    assert_eq!(jetinv::cli::main_with_args(["jetinv", "nonsense"]), 1);
}
