//! Invariant frame of SL2 acting on functions of two variables.

use jetinv::jets::{euler_reduce, JetContext};
use jetinv::sl2inv::{delta2, frame_bracket, j21, poisson, sl2_coframe, sl2_frame, theta_expand_sl2, weight};
use jetinv::Result;

fn main() -> Result<()> {
    let [n1, n2] = sl2_frame();
    let [w1, w2] = sl2_coframe();
    println!("nabla1 = {n1}\nnabla2 = {n2}");
    println!("omega1 = {w1}\nomega2 = {w2}");
    println!("Delta2 = {} (weight {})", delta2(), weight(&delta2())?);
    println!("J21    = {} (weight {})", j21(), weight(&j21())?);

    let (a, b) = frame_bracket(&n1, &n2)?;
    for n in 3..=5 {
        println!("[nabla1, nabla2] on E{n}: A = {}, B = {}", euler_reduce(&a, n)?, euler_reduce(&b, n)?);
    }

    let j3 = poisson(&JetContext::new(2, 0)?.parse("u[0,0]")?, &delta2())?;
    println!("[u00, Delta2] = {j3}");

    for k in 1..=3 {
        for (tau, c) in theta_expand_sl2(k)?.entries() {
            if !c.is_zero() {
                println!("I{tau:?} has weight {}", weight(c)?);
            }
        }
    }
    Ok(())
}
