//! Resultants, discriminants and SL2-equivalence of binary forms.

use jetinv::exactalg::ExactMatrix;
use jetinv::formsalg::{cubic_example, discriminant, restrict, sl2_equivalent, sylvester_resultant, Form};
use jetinv::sl2inv::{delta2, j21};
use jetinv::Result;

fn main() -> Result<()> {
    let phi = cubic_example();
    println!("phi = {}", phi.polynomial());
    println!("Discr(phi) = {}", discriminant(&phi)?);
    println!("Delta2|phi = {}", restrict(&delta2(), &phi)?);
    println!("J21|phi    = {}", restrict(&j21(), &phi)?);

    let f = Form::from_text("x^2 - 3*x*y + y^2", 2, None)?;
    let g = Form::from_text("x^3 + 2*y^3", 2, None)?;
    let a = ExactMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
    println!(
        "Res(f, g) = {}, after a unimodular change = {}",
        sylvester_resultant(&f, &g)?,
        sylvester_resultant(&f.transform(&a)?, &g.transform(&a)?)?
    );

    let quartic = Form::from_text("x^4 + 6*x^2*y^2 - 3*y^4", 2, Some(4))?;
    let moved = quartic.transform(&a)?;
    for (p, q) in [(&quartic, &moved), (&quartic, &Form::from_text("x^4 + y^4", 2, Some(4))?)] {
        let v = sl2_equivalent(p, q)?;
        println!("{} vs {}: {:?}", p.polynomial(), q.polynomial(), v.status);
        for w in &v.witness {
            println!("  {} = {} / {}", w.name, w.first, w.second);
        }
    }
    Ok(())
}
