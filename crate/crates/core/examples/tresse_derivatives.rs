//! Tresse derivatives for translations and for groups acting on the line.

use jetinv::jets::{algebra, lie_check, tresse_derivative, tresse_frame, Algebra, JetContext};
use jetinv::Result;

fn main() -> Result<()> {
    let plane = JetContext::new(2, 0)?;
    let fs = [plane.parse("u[0,0]")?, plane.parse("u[1,0]")?];
    let frame = tresse_frame(&fs)?;
    let f = plane.parse("u[0,1]")?;
    for i in 0..2 {
        println!("d/df{} = {}", i + 1, frame[i]);
        println!("  applied to u01: {}", tresse_derivative(&f, &frame, i)?);
    }

    let line = JetContext::new(1, 0)?;
    let a = line.parse("u[0]")?;
    let da = tresse_frame(&[a])?;
    for (group, b) in [
        (Algebra::LineAffine, "u[2]/u[1]^2"),
        (Algebra::LineSl2, "u[3]/u[1]^3 - 3*u[2]^2/(2*u[1]^4)"),
    ] {
        let b = line.parse(b)?;
        let db = tresse_derivative(&b, &da, 0)?;
        println!("{group:?}: db/da = {db} (invariant: {})", lie_check(&db, &algebra(group))?);
    }
    Ok(())
}
