//! Király's tie-aware proposal algorithm in its deterministic,
//! single-round form, without the special acceptance rule for a woman's
//! first and second proposals. Not strategy-proof; used as a
//! counter-example subject.

use crate::error::{Error, Result};
use crate::model::{Instance, Matching, PersonId};

pub fn kiraly_na(inst: &Instance) -> Result<Matching> {
    if inst.classify().women_have_ties {
        return Err(Error::RequiresStrictWomen);
    }
    let n = inst.num_men();
    let num_women = inst.num_women();
    let mut lists: Vec<Vec<Vec<usize>>> = inst
        .men_lists()
        .iter()
        .map(|l| l.groups().to_vec())
        .collect();
    let mut wife: Vec<Option<usize>> = vec![None; n + 1];
    let mut husband: Vec<Option<usize>> = vec![None; num_women + 1];

    let delete = |lists: &mut Vec<Vec<Vec<usize>>>, man: usize, woman: usize| {
        let groups = &mut lists[man - 1];
        for g in groups.iter_mut() {
            g.retain(|&w| w != woman);
        }
        groups.retain(|g| !g.is_empty());
    };

    while let Some(man) = (1..=n).find(|&m| wife[m].is_none() && !lists[m - 1].is_empty()) {
        let top = &lists[man - 1][0];
        let engaged = |w: usize| w <= num_women && husband[w].is_some();
        let woman = if top.len() == 1 {
            top[0]
        } else {
            match top.iter().copied().filter(|&w| !engaged(w)).min() {
                Some(free) => free,
                None => *top.iter().min().expect("tie-groups are non-empty"),
            }
        };

        let new_rank = match woman {
            w if w >= 1 && w <= num_women => inst.list(PersonId::woman(w)).rank_of(man),
            _ => None,
        };
        let Some(new_rank) = new_rank else {
            delete(&mut lists, man, woman);
            continue;
        };
        match husband[woman] {
            None => {
                husband[woman] = Some(man);
                wife[man] = Some(woman);
            }
            Some(rival) => {
                let rival_rank = inst
                    .list(PersonId::woman(woman))
                    .rank_of(rival)
                    .expect("engaged partner is acceptable");
                if rival_rank < new_rank {
                    delete(&mut lists, man, woman);
                } else {
                    husband[woman] = Some(man);
                    wife[man] = Some(woman);
                    wife[rival] = None;
                    delete(&mut lists, rival, woman);
                }
            }
        }
    }

    Matching::from_pairs((1..=n).filter_map(|m| wife[m].map(|w| (m, w))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{builtin_instance, Builtin};
    use crate::stability::is_stable;

    #[test]
    fn counter_example_true_lists() {
        let inst = builtin_instance(Builtin::NaTrue);
        let out = kiraly_na(&inst).unwrap();
        assert_eq!(out, Matching::from_pairs([(2, 1), (3, 3), (4, 2)]).unwrap());
        assert!(is_stable(&inst, &out).unwrap());
    }

    #[test]
    fn counter_example_manipulated_lists() {
        let inst = builtin_instance(Builtin::NaManip);
        let out = kiraly_na(&inst).unwrap();
        assert_eq!(out, Matching::from_pairs([(1, 2), (2, 3), (4, 1)]).unwrap());
        assert!(is_stable(&inst, &out).unwrap());
    }

    #[test]
    fn all_engaged_tie_goes_to_smallest_index() {
        // m1: w2, m2: w1, m3: (w2 w1); w1: m3 m2, w2: m3 m1
        let inst = Instance::new(
            3,
            2,
            vec![
                crate::model::PreferenceList::strict([2]),
                crate::model::PreferenceList::strict([1]),
                crate::model::PreferenceList::new(vec![vec![2, 1]]),
            ],
            vec![
                crate::model::PreferenceList::strict([3, 2]),
                crate::model::PreferenceList::strict([3, 1]),
            ],
        )
        .unwrap();
        // m1-w2, m2-w1, then m3 faces an all-engaged tie and proposes to w1
        let out = kiraly_na(&inst).unwrap();
        assert_eq!(out, Matching::from_pairs([(1, 2), (3, 1)]).unwrap());
    }
}
