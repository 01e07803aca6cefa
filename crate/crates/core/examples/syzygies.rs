//! Relations among restricted invariants of binary cubics and quartics.

use jetinv::syzygy::{
    cubic_relation, cubic_values, discover_relation, quartic_relation, quartic_values, verify_relation,
    DiscoverOptions, CUBIC_WEIGHTS, QUARTIC_WEIGHTS,
};
use jetinv::Result;

fn main() -> Result<()> {
    let (cubic, cubic_slots) = cubic_values()?;
    let (quartic, quartic_slots) = quartic_values()?;
    println!("{}: {}", cubic_relation(), verify_relation(&cubic_relation(), &cubic)?);
    println!("{}: {}", quartic_relation(), verify_relation(&quartic_relation(), &quartic)?);

    let runs = [
        ("cubic", cubic, cubic_slots, CUBIC_WEIGHTS.to_vec(), 5),
        ("quartic", quartic, quartic_slots, QUARTIC_WEIGHTS.to_vec(), 4),
    ];
    for (name, values, slots, weights, bound) in runs {
        let opts = DiscoverOptions {
            weights: Some(weights),
            slots: Some(slots),
            timeout_seconds: Some(60.0),
        };
        for r in discover_relation(&values, bound, &opts)? {
            println!("discovered ({name}, bound {bound}): {r}");
        }
    }
    Ok(())
}
