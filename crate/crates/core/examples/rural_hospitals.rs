//! Without ties every stable matching covers the same people.

use smti::generate::{gen_instance, GenParams};
use smti::oracle::rural_hospitals_check;

fn main() -> smti::Result<()> {
    for seed in 0..10 {
        let inst = gen_instance(&GenParams::new(6, 0.5, seed));
        let r = rural_hospitals_check(&inst)?;
        println!(
            "seed {seed}: {} stable matchings, equal size {}, same matched set {}",
            r.stable_matchings, r.equal_cardinality, r.same_matched_persons
        );
    }
    Ok(())
}
