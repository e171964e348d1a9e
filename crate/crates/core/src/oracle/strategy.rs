//! Manipulation search over falsified preference lists.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;
use crate::model::{Instance, Matching, PersonId, PreferenceList};

pub const DEFAULT_MAX_OPPOSITE_STRICT: usize = 5;
pub const DEFAULT_MAX_OPPOSITE_TIES: usize = 3;
pub const DEFAULT_MAX_CANDIDATES: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Every strict order of every subset of the opposite side.
    ExhaustiveStrict,
    /// Every sequence of tie-groups over every subset of the opposite side.
    ExhaustiveWithTies,
    /// Every prefix (in whole tie-groups) of the true list.
    Truncate,
    /// Every strict reordering of the true list's members.
    Permute,
}

impl StrategyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StrategyKind::ExhaustiveStrict => "exhaustive-strict",
            StrategyKind::ExhaustiveWithTies => "exhaustive-ties",
            StrategyKind::Truncate => "truncate",
            StrategyKind::Permute => "permute",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            StrategyKind::ExhaustiveStrict,
            StrategyKind::ExhaustiveWithTies,
            StrategyKind::Truncate,
            StrategyKind::Permute,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown strategy space {s:?}")))
    }
}

/// The set of lists a manipulator may submit.
///
/// Candidates are ordered by subset (ascending size, then lexicographic),
/// then lexicographically by the list itself, so "first witness" is well
/// defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrategySpace {
    pub kind: StrategyKind,
    /// Largest opposite side the exhaustive kinds will enumerate.
    pub max_opposite: Option<usize>,
    /// Largest number of candidate lists (or joint candidates for a
    /// coalition) a search will try.
    pub max_candidates: Option<u128>,
}

impl StrategySpace {
    pub fn new(kind: StrategyKind) -> Self {
        StrategySpace {
            kind,
            max_opposite: None,
            max_candidates: None,
        }
    }

    pub fn exhaustive_strict() -> Self {
        Self::new(StrategyKind::ExhaustiveStrict)
    }

    pub fn exhaustive_with_ties() -> Self {
        Self::new(StrategyKind::ExhaustiveWithTies)
    }

    pub fn truncate() -> Self {
        Self::new(StrategyKind::Truncate)
    }

    pub fn permute() -> Self {
        Self::new(StrategyKind::Permute)
    }

    pub fn with_max_opposite(mut self, cap: usize) -> Self {
        self.max_opposite = Some(cap);
        self
    }

    pub fn with_max_candidates(mut self, cap: u128) -> Self {
        self.max_candidates = Some(cap);
        self
    }

    fn opposite_cap(&self) -> usize {
        self.max_opposite.unwrap_or(match self.kind {
            StrategyKind::ExhaustiveWithTies => DEFAULT_MAX_OPPOSITE_TIES,
            _ => DEFAULT_MAX_OPPOSITE_STRICT,
        })
    }

    fn candidate_cap(&self) -> u128 {
        self.max_candidates.unwrap_or(DEFAULT_MAX_CANDIDATES)
    }

    /// Candidate lists for someone whose true list is `truth` and whose
    /// opposite side has `opposite` members.
    pub fn candidates(
        &self,
        truth: &PreferenceList,
        opposite: usize,
    ) -> Result<Vec<PreferenceList>> {
        let out = match self.kind {
            StrategyKind::ExhaustiveStrict | StrategyKind::ExhaustiveWithTies => {
                if opposite > self.opposite_cap() {
                    return Err(Error::SpaceTooLarge(format!(
                        "{} over {opposite} persons exceeds the cap of {}",
                        self.kind,
                        self.opposite_cap()
                    )));
                }
                let universe: Vec<usize> = (1..=opposite).collect();
                let mut out = Vec::new();
                for size in 0..=opposite {
                    for subset in combinations(&universe, size) {
                        if self.kind == StrategyKind::ExhaustiveStrict {
                            out.extend(
                                permutations(&subset)
                                    .into_iter()
                                    .map(PreferenceList::strict),
                            );
                        } else {
                            let mut parts = ordered_partitions(&subset);
                            parts.sort();
                            out.extend(parts.into_iter().map(PreferenceList::new));
                        }
                    }
                }
                out
            }
            StrategyKind::Truncate => (0..=truth.groups().len())
                .map(|k| truth.truncated(k))
                .collect(),
            StrategyKind::Permute => {
                let mut support: Vec<usize> = truth.iter().collect();
                support.sort_unstable();
                if factorial(support.len()) > self.candidate_cap() {
                    return Err(Error::SpaceTooLarge(format!(
                        "{}! reorderings exceed the cap of {}",
                        support.len(),
                        self.candidate_cap()
                    )));
                }
                permutations(&support)
                    .into_iter()
                    .map(PreferenceList::strict)
                    .collect()
            }
        };
        if out.len() as u128 > self.candidate_cap() {
            return Err(Error::SpaceTooLarge(format!(
                "{} candidates exceed the cap of {}",
                out.len(),
                self.candidate_cap()
            )));
        }
        Ok(out)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `k`-subsets of `items` in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        if items.len() - i < k {
            break;
        }
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All orderings of `items` (given sorted) in lexicographic order.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// All sequences of non-empty, internally sorted groups covering `items`.
fn ordered_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for size in 1..=items.len() {
        for first in combinations(items, size) {
            let rest: Vec<usize> = items
                .iter()
                .copied()
                .filter(|x| !first.contains(x))
                .collect();
            for mut tail in ordered_partitions(&rest) {
                tail.insert(0, first.clone());
                out.push(tail);
            }
        }
    }
    out
}

/// Evidence that falsified lists made every manipulator strictly better off
/// under their true lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipulationWitness {
    pub manipulators: Vec<PersonId>,
    /// Submitted lists, aligned with `manipulators`.
    pub falsified: Vec<PreferenceList>,
    pub honest: Matching,
    pub manipulated: Matching,
}

/// How a search is executed. Results do not depend on `jobs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: 1 }
    }
}

/// First successful unilateral deviation of `person`, if any.
pub fn find_manipulation<M: Mechanism + ?Sized>(
    inst: &Instance,
    mech: &M,
    person: PersonId,
    space: &StrategySpace,
) -> Result<Option<ManipulationWitness>> {
    find_manipulation_with(inst, mech, person, space, &SearchOptions::default())
}

pub fn find_manipulation_with<M: Mechanism + ?Sized>(
    inst: &Instance,
    mech: &M,
    person: PersonId,
    space: &StrategySpace,
    opts: &SearchOptions,
) -> Result<Option<ManipulationWitness>> {
    find_coalition_manipulation_with(inst, mech, &[person], space, opts)
}

/// First joint deviation that makes every coalition member strictly better
/// off, if any.
pub fn find_coalition_manipulation<M: Mechanism + ?Sized>(
    inst: &Instance,
    mech: &M,
    coalition: &[PersonId],
    space: &StrategySpace,
) -> Result<Option<ManipulationWitness>> {
    find_coalition_manipulation_with(inst, mech, coalition, space, &SearchOptions::default())
}

pub fn find_coalition_manipulation_with<M: Mechanism + ?Sized>(
    inst: &Instance,
    mech: &M,
    coalition: &[PersonId],
    space: &StrategySpace,
    opts: &SearchOptions,
) -> Result<Option<ManipulationWitness>> {
    let Some(first) = coalition.first() else {
        return Err(Error::InvalidArgument("empty coalition".into()));
    };
    for (i, p) in coalition.iter().enumerate() {
        if !inst.contains_person(*p) {
            return Err(Error::UnknownPerson(*p));
        }
        if p.side != first.side {
            return Err(Error::InvalidArgument(
                "coalition members must be on one side".into(),
            ));
        }
        if coalition[..i].contains(p) {
            return Err(Error::InvalidArgument(format!(
                "{p} listed twice in coalition"
            )));
        }
    }
    if !mech.admits(inst) {
        return Err(Error::Inadmissible {
            mechanism: mech.name(),
            instance: "the honest instance".into(),
        });
    }
    let honest = mech.run(inst)?;

    let opposite = inst.count(first.side.opposite());
    let per_member: Vec<Vec<PreferenceList>> = coalition
        .iter()
        .map(|p| space.candidates(inst.list(*p), opposite))
        .collect::<Result<_>>()?;
    let total: u128 = per_member.iter().map(|c| c.len() as u128).product();
    if total > space.candidate_cap() {
        return Err(Error::SpaceTooLarge(format!(
            "{total} joint candidates exceed the cap of {}",
            space.candidate_cap()
        )));
    }

    // joint candidate index -> one list per member, first member most
    // significant
    let decode = |mut idx: u128| -> Vec<&PreferenceList> {
        let mut picks = vec![&per_member[0][0]; coalition.len()];
        for (slot, cands) in per_member.iter().enumerate().rev() {
            let len = cands.len() as u128;
            picks[slot] = &cands[(idx % len) as usize];
            idx /= len;
        }
        picks
    };
    let evaluate = |idx: u128| -> Option<Result<ManipulationWitness>> {
        let picks = decode(idx);
        let mut alt = inst.clone();
        for (p, list) in coalition.iter().zip(&picks) {
            alt = alt.with_list(*p, (*list).clone());
        }
        if !mech.admits(&alt) {
            return None;
        }
        let out = match mech.run(&alt) {
            Ok(out) => out,
            Err(e) => return Some(Err(e)),
        };
        coalition
            .iter()
            .all(|p| inst.prefers(*p, &out, &honest))
            .then(|| {
                Ok(ManipulationWitness {
                    manipulators: coalition.to_vec(),
                    falsified: picks.into_iter().cloned().collect(),
                    honest: honest.clone(),
                    manipulated: out,
                })
            })
    };

    let found = if opts.jobs <= 1 {
        (0..total).find_map(evaluate)
    } else {
        let total = u64::try_from(total).expect("capped candidate count fits in u64");
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| {
            (0..total)
                .into_par_iter()
                .find_map_first(|i| evaluate(i as u128))
        })
    };
    found.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{builtin_instance, Builtin};
    use crate::mechanisms::MechanismId;

    #[test]
    fn space_sizes_follow_closed_forms() {
        let empty = PreferenceList::empty();
        // sum_k C(n,k) k!
        let strict = StrategySpace::exhaustive_strict();
        assert_eq!(strict.candidates(&empty, 3).unwrap().len(), 16);
        assert_eq!(strict.candidates(&empty, 5).unwrap().len(), 326);
        // sum_k C(n,k) Fubini(k): 1 + 3*1 + 3*3 + 13
        let ties = StrategySpace::exhaustive_with_ties();
        assert_eq!(ties.candidates(&empty, 3).unwrap().len(), 26);
        assert_eq!(ties.candidates(&empty, 2).unwrap().len(), 6);
        assert!(matches!(
            ties.candidates(&empty, 4),
            Err(Error::SpaceTooLarge(_))
        ));
        assert_eq!(
            ties.with_max_opposite(4)
                .candidates(&empty, 4)
                .unwrap()
                .len(),
            1 + 4 + 6 * 3 + 4 * 13 + 75
        );
    }

    #[test]
    fn candidate_order() {
        let ties = StrategySpace::exhaustive_with_ties();
        let c = ties.candidates(&PreferenceList::empty(), 2).unwrap();
        let expected = vec![
            PreferenceList::empty(),
            PreferenceList::strict([1]),
            PreferenceList::strict([2]),
            PreferenceList::new(vec![vec![1], vec![2]]),
            PreferenceList::new(vec![vec![1, 2]]),
            PreferenceList::new(vec![vec![2], vec![1]]),
        ];
        assert_eq!(c, expected);

        let truth = PreferenceList::new(vec![vec![3], vec![1, 2]]);
        assert_eq!(
            StrategySpace::truncate().candidates(&truth, 3).unwrap(),
            vec![
                PreferenceList::empty(),
                PreferenceList::strict([3]),
                truth.clone()
            ]
        );
        let perms = StrategySpace::permute().candidates(&truth, 3).unwrap();
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], PreferenceList::strict([1, 2, 3]));
    }

    #[test]
    fn na_counter_example_is_found() {
        let inst = builtin_instance(Builtin::NaTrue);
        let w = find_manipulation(
            &inst,
            &MechanismId::KiralyNa,
            PersonId::man(1),
            &StrategySpace::permute(),
        )
        .unwrap()
        .expect("m1 can manipulate");
        assert_eq!(w.falsified, vec![PreferenceList::strict([1, 2])]);
        assert_eq!(
            w.honest,
            Matching::from_pairs([(2, 1), (3, 3), (4, 2)]).unwrap()
        );
        assert_eq!(
            w.manipulated,
            Matching::from_pairs([(1, 2), (2, 3), (4, 1)]).unwrap()
        );

        let coalition = find_coalition_manipulation(
            &inst,
            &MechanismId::KiralyNa,
            &[PersonId::man(1)],
            &StrategySpace::permute(),
        )
        .unwrap();
        assert_eq!(coalition, Some(w));
    }

    #[test]
    fn parallel_search_agrees() {
        let inst = builtin_instance(Builtin::NaTrue);
        for p in inst.persons(crate::model::Side::Man) {
            let seq = find_manipulation(
                &inst,
                &MechanismId::KiralyNa,
                p,
                &StrategySpace::exhaustive_strict().with_max_opposite(4),
            )
            .unwrap();
            let par = find_manipulation_with(
                &inst,
                &MechanismId::KiralyNa,
                p,
                &StrategySpace::exhaustive_strict().with_max_opposite(4),
                &SearchOptions { jobs: 4 },
            )
            .unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn tiebreak_on_i1_resists_m1() {
        let inst = builtin_instance(Builtin::I1);
        let found = find_manipulation(
            &inst,
            &MechanismId::TiebreakMan,
            PersonId::man(1),
            &StrategySpace::exhaustive_with_ties(),
        )
        .unwrap();
        assert_eq!(found, None);
    }

    #[test]
    fn truncating_to_the_full_list_is_not_a_manipulation() {
        let inst = builtin_instance(Builtin::NaTrue);
        let full_only = StrategySpace::truncate();
        let truth = inst.list(PersonId::man(3));
        // m3 has a single tie-group, so the only non-empty prefix is the list itself
        assert_eq!(full_only.candidates(truth, 4).unwrap().last(), Some(truth));
        assert_eq!(
            find_manipulation(&inst, &MechanismId::KiralyNa, PersonId::man(3), &full_only).unwrap(),
            None
        );
    }

    #[test]
    fn bad_coalitions_are_rejected() {
        let inst = builtin_instance(Builtin::I3);
        let space = StrategySpace::truncate();
        let mech = MechanismId::OneTmFifteen;
        assert!(find_coalition_manipulation(&inst, &mech, &[], &space).is_err());
        assert!(find_coalition_manipulation(
            &inst,
            &mech,
            &[PersonId::man(1), PersonId::woman(1)],
            &space
        )
        .is_err());
        assert!(find_coalition_manipulation(
            &inst,
            &mech,
            &[PersonId::man(1), PersonId::man(1)],
            &space
        )
        .is_err());
        assert_eq!(
            find_coalition_manipulation(&inst, &mech, &[PersonId::man(9)], &space),
            Err(Error::UnknownPerson(PersonId::man(9)))
        );
        let i1 = builtin_instance(Builtin::I1);
        assert!(find_manipulation(&i1, &mech, PersonId::man(1), &space)
            .unwrap_err()
            .is_precondition());
    }
}
