//! Exhaustive ground truth for small instances.
//!
//! Everything here trades speed for certainty: stable matchings are
//! enumerated by backtracking, manipulation searches try every candidate
//! list of a strategy space, and the audits replay the case analyses behind
//! the approximation lower bounds on their gadget instances.

mod audit;
mod strategy;

pub use audit::{gadget_audit, AuditResult, BranchOutcome, Gadget, Verdict};
pub use strategy::{
    find_coalition_manipulation, find_coalition_manipulation_with, find_manipulation,
    find_manipulation_with, ManipulationWitness, SearchOptions, StrategyKind, StrategySpace,
};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::model::{Instance, Matching, PersonId};
use crate::stability::{is_stable, matching_problem};

/// Default cap on the backtracking search tree: the product over men of
/// (number of mutually acceptable women + 1).
pub const DEFAULT_SEARCH_CAP: u128 = 50_000_000;

/// Upper bound on the leaves visited by [`enumerate_stable_matchings`].
pub fn search_bound(inst: &Instance) -> u128 {
    inst.persons(crate::model::Side::Man)
        .map(|m| inst.mutual_degree(m) as u128 + 1)
        .product()
}

pub fn enumerate_stable_matchings(inst: &Instance) -> Result<Vec<Matching>> {
    enumerate_stable_matchings_capped(inst, DEFAULT_SEARCH_CAP)
}

/// All stable matchings, in canonical (sorted pair list) order.
pub fn enumerate_stable_matchings_capped(inst: &Instance, cap: u128) -> Result<Vec<Matching>> {
    let bound = search_bound(inst);
    if bound > cap {
        return Err(Error::OracleTooLarge { bound, cap });
    }
    let n = inst.num_men();
    let options: Vec<Vec<usize>> = (1..=n)
        .map(|m| {
            inst.list(PersonId::man(m))
                .iter()
                .filter(|&w| inst.mutually_acceptable(m, w))
                .collect()
        })
        .collect();
    let mut search = Search {
        inst,
        options: &options,
        wife: vec![None; n + 1],
        husband: vec![None; inst.num_women() + 1],
        found: Vec::new(),
    };
    search.descend(1)?;
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}

struct Search<'a> {
    inst: &'a Instance,
    options: &'a [Vec<usize>],
    wife: Vec<Option<usize>>,
    husband: Vec<Option<usize>>,
    found: Vec<Matching>,
}

impl Search<'_> {
    fn descend(&mut self, man: usize) -> Result<()> {
        if man > self.inst.num_men() {
            let m = self.current();
            if is_stable(self.inst, &m)? {
                self.found.push(m);
            }
            return Ok(());
        }
        // stay single
        if !self.decided_pair_blocks(man) {
            self.descend(man + 1)?;
        }
        for &w in &self.options[man - 1] {
            if self.husband[w].is_some() {
                continue;
            }
            self.wife[man] = Some(w);
            self.husband[w] = Some(man);
            if !self.decided_pair_blocks(man) {
                self.descend(man + 1)?;
            }
            self.wife[man] = None;
            self.husband[w] = None;
        }
        Ok(())
    }

    /// Pruning: a pair whose two members both have final partners already
    /// (a decided man and a woman matched to a decided man) and that blocks
    /// now will block every completion.
    fn decided_pair_blocks(&self, man: usize) -> bool {
        for w in 1..=self.inst.num_women() {
            if self.husband[w].is_some() && self.blocks(man, w) {
                return true;
            }
        }
        if let Some(w) = self.wife[man] {
            for x in 1..man {
                if self.blocks(x, w) {
                    return true;
                }
            }
        }
        false
    }

    fn blocks(&self, man: usize, woman: usize) -> bool {
        let better = |list: &crate::model::PreferenceList, q: usize, current: Option<usize>| match (
            list.rank_of(q),
            current,
        ) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(r), Some(cur)) => list.rank_of(cur).is_some_and(|c| r < c),
        };
        self.inst.mutually_acceptable(man, woman)
            && better(self.inst.list(PersonId::man(man)), woman, self.wife[man])
            && better(
                self.inst.list(PersonId::woman(woman)),
                man,
                self.husband[woman],
            )
    }

    fn current(&self) -> Matching {
        Matching::from_pairs((1..self.wife.len()).filter_map(|m| self.wife[m].map(|w| (m, w))))
            .expect("search keeps partners unique")
    }
}

/// Size of a maximum stable matching, with the canonically first witness.
pub fn max_stable_size(inst: &Instance) -> Result<(usize, Matching)> {
    let all = enumerate_stable_matchings(inst)?;
    let best = all.iter().map(Matching::len).max().unwrap_or(0);
    let witness = all
        .into_iter()
        .find(|m| m.len() == best)
        .unwrap_or_default();
    Ok((best, witness))
}

/// Every stable matching of maximum size.
pub fn maximum_stable_matchings(inst: &Instance) -> Result<Vec<Matching>> {
    let all = enumerate_stable_matchings(inst)?;
    let best = all.iter().map(Matching::len).max().unwrap_or(0);
    Ok(all.into_iter().filter(|m| m.len() == best).collect())
}

/// `|M_opt| / |M|` as an exact rational; `1` when both are empty.
pub fn approx_ratio(inst: &Instance, m: &Matching) -> Result<Ratio<u64>> {
    if let Some(problem) = matching_problem(inst, m) {
        return Err(Error::InvalidMatching(problem));
    }
    if !is_stable(inst, m)? {
        return Err(Error::Unstable);
    }
    let (opt, _) = max_stable_size(inst)?;
    if m.is_empty() {
        // a stable empty matching means no pair is mutually acceptable
        debug_assert_eq!(opt, 0);
        return Ok(Ratio::from_integer(1));
    }
    Ok(Ratio::new(opt as u64, m.len() as u64))
}

/// A component `m_i - w_j - m_k - w_l` of the union of `output` and `opt`
/// where `(m_i, w_j)` and `(m_k, w_l)` come from `opt` and `(m_k, w_j)` from
/// `output`. Returned as `(i, j, k, l)`. A stable `output` of a women-strict
/// instance produced by the translation mechanism never has one.
pub fn forbidden_path(output: &Matching, opt: &Matching) -> Option<(usize, usize, usize, usize)> {
    output.pairs().iter().find_map(|&(k, j)| {
        let i = opt.husband(j)?;
        let l = opt.wife(k)?;
        (i != k && l != j && output.wife(i).is_none() && output.husband(l).is_none())
            .then_some((i, j, k, l))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuralHospitalsReport {
    pub stable_matchings: usize,
    /// All stable matchings have the same size.
    pub equal_cardinality: bool,
    /// All stable matchings match exactly the same persons.
    pub same_matched_persons: bool,
}

impl RuralHospitalsReport {
    pub fn holds(&self) -> bool {
        self.equal_cardinality && self.same_matched_persons
    }
}

/// Checks the rural hospitals property on an instance without ties.
pub fn rural_hospitals_check(inst: &Instance) -> Result<RuralHospitalsReport> {
    if inst.classify().has_ties() {
        return Err(Error::RequiresStrictLists);
    }
    let all = enumerate_stable_matchings(inst)?;
    let matched = |m: &Matching| {
        let mut men: Vec<usize> = m.pairs().iter().map(|p| p.0).collect();
        let mut women: Vec<usize> = m.pairs().iter().map(|p| p.1).collect();
        men.sort_unstable();
        women.sort_unstable();
        (men, women)
    };
    let equal_cardinality = all.windows(2).all(|w| w[0].len() == w[1].len());
    let same_matched_persons = all.windows(2).all(|w| matched(&w[0]) == matched(&w[1]));
    Ok(RuralHospitalsReport {
        stable_matchings: all.len(),
        equal_cardinality,
        same_matched_persons,
    })
}
