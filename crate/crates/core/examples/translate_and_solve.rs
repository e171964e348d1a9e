//! Shows the tie-free rewriting of a one-sided-ties instance and the
//! matching it produces.

use smti::generate::{gen_instance, GenParams};
use smti::mechanisms::{onetm_trace, TranslatedMan, TranslatedWoman};
use smti::oracle::approx_ratio;
use smti::text::serialize_instance;

fn main() -> smti::Result<()> {
    let inst = gen_instance(&GenParams::new(4, 0.7, 11).with_ties(0.6, 0.0).one_tm());
    print!("original\n{}", serialize_instance(&inst));
    let run = onetm_trace(&inst)?;
    print!("translated\n{}", serialize_instance(&run.translated));
    for (man, woman) in run.intermediate.pairs() {
        let a = match run.map.man_role(*man) {
            TranslatedMan::A(i) => format!("a{i}"),
            TranslatedMan::B(j) => format!("b{j}"),
        };
        let b = match run.map.woman_role(*woman) {
            TranslatedWoman::S(j) => format!("s{j}"),
            TranslatedWoman::T(j) => format!("t{j}"),
        };
        println!("  {a} - {b}");
    }
    println!(
        "result {} ratio {}",
        run.matching,
        approx_ratio(&inst, &run.matching)?
    );
    Ok(())
}
