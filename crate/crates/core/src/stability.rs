//! Weak stability: matching validity, blocking pairs and the stability
//! predicate.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Instance, Matching, PersonId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockReason {
    Single,
    PrefersOverPartner,
}

impl fmt::Display for BlockReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockReason::Single => f.write_str("single"),
            BlockReason::PrefersOverPartner => f.write_str("prefers over partner"),
        }
    }
}

/// A mutually acceptable pair in which both sides would rather be together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingPair {
    pub man: usize,
    pub woman: usize,
    pub man_reason: BlockReason,
    pub woman_reason: BlockReason,
}

impl fmt::Display for BlockingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m{} w{} (man: {}, woman: {})",
            self.man, self.woman, self.man_reason, self.woman_reason
        )
    }
}

/// Why a matching fails to be a matching of `inst`, if it does.
pub fn matching_problem(inst: &Instance, m: &Matching) -> Option<String> {
    m.pairs()
        .iter()
        .find(|&&(man, woman)| !inst.mutually_acceptable(man, woman))
        .map(|&(man, woman)| format!("(m{man},w{woman}) is not mutually acceptable"))
}

/// Every pair is mutually acceptable and nobody appears twice (the latter is
/// guaranteed by [`Matching`] itself).
pub fn is_valid_matching(inst: &Instance, m: &Matching) -> bool {
    matching_problem(inst, m).is_none()
}

/// Reason `p` would leave its current partner for `q`, or `None` if `p`
/// would not. Indifference never blocks.
fn wants(inst: &Instance, m: &Matching, p: PersonId, q: PersonId) -> Option<BlockReason> {
    let list = inst.list(p);
    let new_rank = list.rank_of(q.index)?;
    match m.partner(p) {
        None => Some(BlockReason::Single),
        Some(current) => match list.rank_of(current.index) {
            Some(cur) if new_rank < cur => Some(BlockReason::PrefersOverPartner),
            _ => None,
        },
    }
}

/// All blocking pairs of `m`, sorted by (man, woman).
pub fn blocking_pairs(inst: &Instance, m: &Matching) -> Result<Vec<BlockingPair>> {
    if let Some(problem) = matching_problem(inst, m) {
        return Err(Error::InvalidMatching(problem));
    }
    let mut out = Vec::new();
    for man in 1..=inst.num_men() {
        for woman in inst.list(PersonId::man(man)).iter() {
            if !inst.mutually_acceptable(man, woman) {
                continue;
            }
            let Some(man_reason) = wants(inst, m, PersonId::man(man), PersonId::woman(woman))
            else {
                continue;
            };
            let Some(woman_reason) = wants(inst, m, PersonId::woman(woman), PersonId::man(man))
            else {
                continue;
            };
            out.push(BlockingPair {
                man,
                woman,
                man_reason,
                woman_reason,
            });
        }
    }
    out.sort_by_key(|b| (b.man, b.woman));
    Ok(out)
}

pub fn is_stable(inst: &Instance, m: &Matching) -> Result<bool> {
    Ok(blocking_pairs(inst, m)?.is_empty())
}
