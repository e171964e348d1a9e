//! Unilateral and coalition searches over random instances, in parallel.

use smti::generate::{gen_instance, GenParams};
use smti::oracle::{find_coalition_manipulation_with, SearchOptions, StrategySpace};
use smti::{Mechanism, MechanismId, PersonId, Side};

fn main() -> smti::Result<()> {
    let opts = SearchOptions { jobs: 4 };
    let mut searches = 0;
    let mut found = 0;
    for seed in 0..40 {
        let inst = gen_instance(&GenParams::new(3, 0.7, seed).with_ties(0.5, 0.0).one_tm());
        for mech in [
            MechanismId::OneTmFifteen,
            MechanismId::TiebreakMan,
            MechanismId::KiralyNa,
        ] {
            if !mech.admits(&inst) {
                continue;
            }
            let men: Vec<PersonId> = inst.persons(Side::Man).collect();
            let mut coalitions: Vec<Vec<PersonId>> = men.iter().map(|&p| vec![p]).collect();
            if men.len() >= 2 {
                coalitions.push(men[..2].to_vec());
            }
            for coalition in coalitions {
                let space = if coalition.len() == 1 {
                    StrategySpace::exhaustive_with_ties()
                } else {
                    StrategySpace::permute()
                };
                searches += 1;
                if let Some(w) =
                    find_coalition_manipulation_with(&inst, &mech, &coalition, &space, &opts)?
                {
                    found += 1;
                    println!(
                        "seed {seed} {mech}: {:?} {} -> {}",
                        w.manipulators, w.honest, w.manipulated
                    );
                }
            }
        }
    }
    println!("{searches} searches, {found} manipulations");
    Ok(())
}
