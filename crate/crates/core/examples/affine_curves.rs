//! Connections and affine invariants of plane curves `u = 0`.

use jetinv::affineinv::{
    affine_frame, affine_tresse_coframe, connection_tensors, curve_a2, curve_invariant, gamma_weight, levi_civita,
    radical_curve_invariant, symmetric_differential, Metric,
};
use jetinv::jets::JetContext;
use jetinv::Result;

fn main() -> Result<()> {
    let polar = Metric::parse(2, &[&["1", "0"], &["0", "x^2"]])?;
    let gamma = levi_civita(&polar)?;
    let (torsion, curvature) = connection_tensors(&gamma);
    println!("polar metric: torsion-free {}, flat {}", torsion.is_zero(), curvature.is_zero());

    let f = JetContext::new(2, 0)?.parse("u[0,0]")?;
    let d2 = symmetric_differential(&f, &gamma, 2)?;
    for (tau, c) in d2.entries() {
        println!("d^2 u in polar chart, component {tau:?}: {c}");
    }

    let (n1, n2) = affine_frame();
    let n2: Vec<String> = n2.coeffs().iter().map(ToString::to_string).collect();
    println!("nabla1 = {n1}\nnabla2 components: {}", n2.join(", "));
    let [w1, w2] = affine_tresse_coframe()?;
    println!("Tresse coframe: {w1}, {w2}");

    println!("a2 = {} (gamma-weight {})", curve_a2(), gamma_weight(&curve_a2())?);
    let a21 = curve_invariant(2, 1)?;
    println!("a[2,1] has order {} and gamma-weight {}", a21.order(), gamma_weight(&a21)?);
    println!("radical a[0,2] = {}", radical_curve_invariant(0, 2)?);
    Ok(())
}
