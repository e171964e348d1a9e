//! Replays the lower-bound case analyses on the gadget instances.
//!
//! On each gadget every maximum stable matching can be undone by one
//! person deleting one entry: the deletion leaves a unique maximum stable
//! matching that the deleter likes better. A mechanism that always meets
//! the ratio on both the gadget and the altered instance therefore hands
//! the deleter a successful strategy. The audit runs the mechanism on the
//! gadget, follows the branch selected by its output, and reports which of
//! the two horns the mechanism chose.

use std::fmt;

use num_rational::Ratio;

use super::max_stable_size;
use super::strategy::ManipulationWitness;
use crate::error::{Error, Result};
use crate::generate::{builtin_instance, Builtin};
use crate::mechanisms::Mechanism;
use crate::model::{Instance, Matching, PersonId};
use crate::stability::is_stable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gadget {
    I1,
    I2,
    I3,
}

impl Gadget {
    pub fn instance(self) -> Instance {
        builtin_instance(match self {
            Gadget::I1 => Builtin::I1,
            Gadget::I2 => Builtin::I2,
            Gadget::I3 => Builtin::I3,
        })
    }

    /// The ratio any manipulation-free mechanism must exceed on this gadget.
    pub fn bound(self) -> Ratio<u64> {
        match self {
            Gadget::I1 | Gadget::I2 => Ratio::from_integer(2),
            Gadget::I3 => Ratio::new(3, 2),
        }
    }

    /// `(maximum stable matching, deleter, deleted entry)` per branch.
    fn branches(self) -> Vec<(Matching, PersonId, PersonId)> {
        let m = |pairs: &[(usize, usize)]| {
            Matching::from_pairs(pairs.iter().copied()).expect("static matchings are valid")
        };
        match self {
            Gadget::I1 => vec![
                (m(&[(1, 1), (2, 2)]), PersonId::man(1), PersonId::woman(1)),
                (m(&[(1, 2), (2, 3)]), PersonId::man(2), PersonId::woman(3)),
            ],
            Gadget::I2 => vec![
                (m(&[(1, 1), (2, 2)]), PersonId::woman(1), PersonId::man(1)),
                (m(&[(2, 1), (3, 2)]), PersonId::woman(2), PersonId::man(3)),
            ],
            Gadget::I3 => vec![
                (
                    m(&[(1, 1), (2, 2), (3, 3)]),
                    PersonId::man(1),
                    PersonId::woman(1),
                ),
                (
                    m(&[(1, 2), (2, 3), (3, 4)]),
                    PersonId::man(3),
                    PersonId::woman(4),
                ),
            ],
        }
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gadget::I1 => f.write_str("I1"),
            Gadget::I2 => f.write_str("I2"),
            Gadget::I3 => f.write_str("I3"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The output on the gadget itself is below maximum size.
    RatioViolated,
    /// The branch deletion pays off for the deleter.
    ManipulationFound,
    /// The mechanism gives up size on the branch instance instead.
    Consistent,
}

/// What happened on the altered instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOutcome {
    pub deleter: PersonId,
    pub deleted: PersonId,
    pub instance: Instance,
    pub output: Matching,
    pub max_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditResult {
    pub gadget: Gadget,
    pub mechanism: String,
    pub output: Matching,
    pub max_size: usize,
    pub branch: Option<BranchOutcome>,
    pub verdict: Verdict,
    pub witness: Option<ManipulationWitness>,
    pub detail: String,
}

fn ratio_text(r: Ratio<u64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn gadget_audit<M: Mechanism + ?Sized>(mech: &M, gadget: Gadget) -> Result<AuditResult> {
    let inst = gadget.instance();
    let inadmissible = |what: &str| Error::Inadmissible {
        mechanism: mech.name(),
        instance: format!("{gadget}{what}"),
    };
    if !mech.admits(&inst) {
        return Err(inadmissible(""));
    }
    let output = mech.run(&inst)?;
    if !is_stable(&inst, &output)? {
        return Err(Error::Unstable);
    }
    let (max_size, _) = max_stable_size(&inst)?;
    let bound = ratio_text(gadget.bound());

    let mut result = AuditResult {
        gadget,
        mechanism: mech.name(),
        output: output.clone(),
        max_size,
        branch: None,
        verdict: Verdict::RatioViolated,
        witness: None,
        detail: String::new(),
    };
    if output.len() < max_size {
        result.detail = format!(
            "output {output} has size {} of maximum {max_size}: not ({bound}-e)-approximate",
            output.len()
        );
        return Ok(result);
    }

    let (_, deleter, deleted) = gadget
        .branches()
        .into_iter()
        .find(|(target, _, _)| *target == output)
        .ok_or_else(|| {
            Error::InvalidMatching(format!("output {output} is outside the case analysis"))
        })?;
    let altered = inst.with_list(deleter, inst.list(deleter).without(deleted.index));
    if !mech.admits(&altered) {
        return Err(inadmissible(" after deletion"));
    }
    let branch_output = mech.run(&altered)?;
    let (branch_max, _) = max_stable_size(&altered)?;

    if inst.prefers(deleter, &branch_output, &output) {
        result.verdict = Verdict::ManipulationFound;
        result.detail =
            format!(
            "{deleter} deletes {deleted}: output {branch_output} gives {deleter} {} instead of {}",
            branch_output.partner(deleter).expect("preferred outcome is matched"),
            output
                .partner(deleter)
                .map_or_else(|| "nobody".to_string(), |p| p.to_string()),
        );
        result.witness = Some(ManipulationWitness {
            manipulators: vec![deleter],
            falsified: vec![altered.list(deleter).clone()],
            honest: output,
            manipulated: branch_output.clone(),
        });
    } else {
        result.verdict = Verdict::Consistent;
        let approx = if branch_output.len() < branch_max {
            format!("not ({bound}-e)-approximate")
        } else {
            "maximum size".to_string()
        };
        result.detail = format!(
            "output size {} on deletion branch ({deleter} deletes {deleted}, maximum {branch_max}): {approx}; no manipulation",
            branch_output.len()
        );
    }
    result.branch = Some(BranchOutcome {
        deleter,
        deleted,
        instance: altered,
        output: branch_output,
        max_size: branch_max,
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanisms::MechanismId;

    #[test]
    fn tiebreak_man_on_i1_gives_up_size() {
        let r = gadget_audit(&MechanismId::TiebreakMan, Gadget::I1).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert!(r.witness.is_none());
        let branch = r.branch.unwrap();
        assert_eq!(branch.deleter, PersonId::man(2));
        assert_eq!(branch.output, Matching::from_pairs([(1, 2)]).unwrap());
        assert_eq!(branch.max_size, 2);
        assert!(
            r.detail.contains("output size 1 on deletion branch"),
            "{}",
            r.detail
        );
        assert!(r.detail.contains("not (2-e)-approximate"));
    }

    #[test]
    fn onetm_needs_strict_women() {
        assert!(matches!(
            gadget_audit(&MechanismId::OneTmFifteen, Gadget::I1),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn gadgets_have_their_claimed_maxima() {
        for g in [Gadget::I1, Gadget::I2, Gadget::I3] {
            let inst = g.instance();
            let maxima = super::super::maximum_stable_matchings(&inst).unwrap();
            let targets: Vec<_> = g.branches().into_iter().map(|b| b.0).collect();
            assert_eq!(maxima, targets, "{g}");
            // each deletion leaves exactly the other branch's matching on top
            for (i, (_, deleter, deleted)) in g.branches().into_iter().enumerate() {
                let altered = inst.with_list(deleter, inst.list(deleter).without(deleted.index));
                let maxima = super::super::maximum_stable_matchings(&altered).unwrap();
                assert_eq!(maxima, vec![targets[1 - i].clone()], "{g} branch {i}");
            }
        }
    }
}
