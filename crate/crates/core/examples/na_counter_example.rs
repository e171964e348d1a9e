//! The unilateral manipulation of the NA mechanism: m1 reorders his list and
//! trades w3 for w2.

use smti::generate::{builtin_instance, Builtin};
use smti::mechanisms::kiraly_na;
use smti::oracle::{find_manipulation, StrategySpace};
use smti::text::{format_list, serialize_instance};
use smti::{MechanismId, PersonId, Side};

fn main() -> smti::Result<()> {
    let truth = builtin_instance(Builtin::NaTrue);
    print!("{}", serialize_instance(&truth));
    println!("honest outcome      {}", kiraly_na(&truth)?);
    let lie = builtin_instance(Builtin::NaManip);
    println!("manipulated outcome {}", kiraly_na(&lie)?);

    let m1 = PersonId::man(1);
    match find_manipulation(
        &truth,
        &MechanismId::KiralyNa,
        m1,
        &StrategySpace::permute(),
    )? {
        Some(w) => println!(
            "search: {m1} reports \"{}\" and moves from {} to {}",
            format_list(Side::Man, &w.falsified[0]),
            w.honest
                .partner(m1)
                .map_or("nobody".into(), |p| p.to_string()),
            w.manipulated
                .partner(m1)
                .map_or("nobody".into(), |p| p.to_string()),
        ),
        None => println!("search: no manipulation"),
    }
    Ok(())
}
