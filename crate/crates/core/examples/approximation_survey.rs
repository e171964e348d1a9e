//! Worst observed approximation ratios over random instances.
//!
//! Usage: `cargo run --release --example approximation_survey -- [COUNT] [N]`

use num_rational::Ratio;
use smti::generate::{gen_instance, GenParams};
use smti::mechanisms::{onetm_mechanism, tiebreak_mechanism};
use smti::oracle::approx_ratio;
use smti::Side;

fn main() -> smti::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);

    let mut worst = [Ratio::from_integer(1u64); 3];
    for seed in 0..count {
        let smti = gen_instance(&GenParams::new(n, 0.6, seed).with_ties(0.5, 0.5));
        let one_tm = gen_instance(&GenParams::new(n, 0.6, seed).with_ties(0.5, 0.0).one_tm());
        let ratios = [
            approx_ratio(&smti, &tiebreak_mechanism(&smti, Side::Man))?,
            approx_ratio(&smti, &tiebreak_mechanism(&smti, Side::Woman))?,
            approx_ratio(&one_tm, &onetm_mechanism(&one_tm)?)?,
        ];
        for (w, r) in worst.iter_mut().zip(ratios) {
            *w = (*w).max(r);
        }
    }
    println!("{count} instances, n = {n}");
    println!("tiebreak-man   worst {} (bound 2)", worst[0]);
    println!("tiebreak-woman worst {} (bound 2)", worst[1]);
    println!("onetm-15       worst {} (bound 3/2)", worst[2]);
    Ok(())
}
