//! SL3 frame and generators for functions of three variables.

use jetinv::jets::{JetContext, JetPoint};
use jetinv::polyalg::{parse_polynomial, VarTable};
use jetinv::sl3inv::{hessian3, sl3_coframe, sl3_frame, sl3_generators, sl3_lie_check};
use jetinv::{Rational, Result};

fn main() -> Result<()> {
    let gens = sl3_generators()?;
    for (i, g) in gens.iter().enumerate() {
        let text = g.to_string();
        let shown = if text.len() > 70 { format!("{}…", &text[..70]) } else { text };
        println!("J{} = {shown} (invariant: {})", i + 1, sl3_lie_check(g)?);
    }

    let frame = sl3_frame()?;
    let coframe = sl3_coframe()?;
    for (i, w) in coframe.iter().enumerate() {
        let row: Vec<String> = frame.iter().map(|d| w.pair(d).to_string()).collect();
        println!("omega{}(nabla_j) = {}", i + 1, row.join(", "));
    }

    let t = VarTable::new(&["x", "y", "z"])?;
    let cubic = parse_polynomial("x^3 + y^3 + z^3 - 3*x*y*z + x^2*z", &t)?;
    let p = JetPoint::of_polynomial(JetContext::new(3, 2)?, &cubic, &[1, 2, -1].map(Rational::from_int))?;
    println!("A at the 2-jet of a cubic: {}", p.eval(&hessian3())?);
    Ok(())
}
