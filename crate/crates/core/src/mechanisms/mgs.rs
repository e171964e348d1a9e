//! Man-oriented Gale-Shapley for instances with incomplete strict lists.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{Instance, Matching, PersonId};

/// Man-optimal stable matching of an instance without ties.
pub fn mgs(inst: &Instance) -> Result<Matching> {
    if inst.classify().has_ties() {
        return Err(Error::RequiresStrictLists);
    }
    Ok(propose(inst))
}

/// Woman-optimal stable matching of an instance without ties.
pub fn wgs(inst: &Instance) -> Result<Matching> {
    Ok(mgs(&inst.swap_roles())?.swapped())
}

/// Deferred acceptance with men proposing. Lists are read in stored order,
/// so callers must pass tie-free instances.
///
/// The smallest-index free man with a non-empty list proposes next. A woman
/// rejects any man she does not list. Rejected women are deleted from a
/// private copy of the man's list.
pub(crate) fn propose(inst: &Instance) -> Matching {
    let n = inst.num_men();
    let num_women = inst.num_women();
    let mut lists: Vec<VecDeque<usize>> = inst
        .men_lists()
        .iter()
        .map(|l| l.iter().collect())
        .collect();
    let mut wife: Vec<Option<usize>> = vec![None; n + 1];
    let mut husband: Vec<Option<usize>> = vec![None; num_women + 1];

    while let Some(man) = (1..=n).find(|&m| wife[m].is_none() && !lists[m - 1].is_empty()) {
        let woman = lists[man - 1][0];
        let new_rank = match woman {
            w if w >= 1 && w <= num_women => inst.list(PersonId::woman(w)).rank_of(man),
            _ => None,
        };
        let Some(new_rank) = new_rank else {
            lists[man - 1].pop_front();
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
                    lists[man - 1].pop_front();
                } else {
                    husband[woman] = Some(man);
                    wife[man] = Some(woman);
                    wife[rival] = None;
                    lists[rival - 1].retain(|&w| w != woman);
                }
            }
        }
    }

    Matching::from_pairs((1..=n).filter_map(|m| wife[m].map(|w| (m, w))))
        .expect("deferred acceptance keeps partners unique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{builtin_instance, Builtin};
    use crate::model::PreferenceList;

    #[test]
    fn single_pair() {
        let inst = Instance::new(
            1,
            1,
            vec![PreferenceList::strict([1])],
            vec![PreferenceList::strict([1])],
        )
        .unwrap();
        assert_eq!(mgs(&inst).unwrap(), Matching::from_pairs([(1, 1)]).unwrap());
    }

    #[test]
    fn empty_men_lists() {
        let inst = Instance::from_lists_unchecked(
            2,
            2,
            vec![PreferenceList::empty(); 2],
            vec![PreferenceList::strict([1, 2]); 2],
        );
        assert!(mgs(&inst).unwrap().is_empty());
    }

    #[test]
    fn tie_broken_i1() {
        // men: m1 gets w2 first; m2 is rejected by w2 (m1 ranks first after
        // tie-breaking) and settles for w3
        let inst = builtin_instance(Builtin::I1).tie_broken();
        assert_eq!(
            mgs(&inst).unwrap(),
            Matching::from_pairs([(1, 2), (2, 3)]).unwrap()
        );
    }

    #[test]
    fn ties_are_refused() {
        let inst = builtin_instance(Builtin::I1);
        assert_eq!(mgs(&inst), Err(Error::RequiresStrictLists));
        assert_eq!(wgs(&inst), Err(Error::RequiresStrictLists));
    }

    #[test]
    fn classic_three_by_three() {
        // m1: w1 w2 w3, m2: w1 w3 w2, m3: w2 w1 w3
        // w1: m2 m1 m3, w2: m1 m3 m2, w3: m3 m1 m2
        let inst = Instance::new(
            3,
            3,
            vec![
                PreferenceList::strict([1, 2, 3]),
                PreferenceList::strict([1, 3, 2]),
                PreferenceList::strict([2, 1, 3]),
            ],
            vec![
                PreferenceList::strict([2, 1, 3]),
                PreferenceList::strict([1, 3, 2]),
                PreferenceList::strict([3, 1, 2]),
            ],
        )
        .unwrap();
        // m1->w1, m2->w1 (w1 takes m2, m1 out), m1->w2, m3->w2 (w2 keeps m1),
        // m3->w1 (rejected), m3->w3
        assert_eq!(
            mgs(&inst).unwrap(),
            Matching::from_pairs([(1, 2), (2, 1), (3, 3)]).unwrap()
        );
        // women propose: w1->m2, w2->m1, w3->m3, nobody competes
        assert_eq!(
            wgs(&inst).unwrap(),
            Matching::from_pairs([(1, 2), (2, 1), (3, 3)]).unwrap()
        );
    }
}
