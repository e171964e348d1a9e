//! Deterministic mechanisms mapping instances to matchings.
//!
//! | id               | admits                  | output                               |
//! |------------------|-------------------------|--------------------------------------|
//! | `mgs-man`        | no ties                 | man-optimal stable matching          |
//! | `mgs-woman`      | no ties                 | woman-optimal stable matching        |
//! | `tiebreak-man`   | anything                | men propose after index tie-breaking |
//! | `tiebreak-woman` | anything                | women propose after index tie-breaking |
//! | `onetm-15`       | women's lists strict    | translated instance, men propose     |
//! | `kiraly-na`      | women's lists strict    | tie-aware proposals, smallest index  |
//!
//! The tie-breaking mechanisms are 2-approximate and one-side strategy-proof;
//! `onetm-15` is 3/2-approximate and man-strategy-proof when only men have
//! ties. `kiraly-na` is kept as a manipulable reference.

mod kiraly;
mod mgs;
mod translate;

use std::fmt;
use std::str::FromStr;

pub use kiraly::kiraly_na;
pub use mgs::{mgs, wgs};
pub use translate::{
    onetm_mechanism, onetm_trace, translate_1tm, OneTmRun, TranslatedMan, TranslatedWoman,
    TranslationMap,
};

use crate::error::{Error, Result};
use crate::model::{Instance, Matching, Side};

/// Something that maps instances to matchings. Implemented by
/// [`MechanismId`]; audits also accept foreign implementations.
pub trait Mechanism: Sync {
    fn name(&self) -> String;

    /// Whether the instance satisfies the mechanism's input restrictions.
    fn admits(&self, inst: &Instance) -> bool;

    fn run(&self, inst: &Instance) -> Result<Matching>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MechanismId {
    MgsMan,
    MgsWoman,
    TiebreakMan,
    TiebreakWoman,
    OneTmFifteen,
    KiralyNa,
}

impl MechanismId {
    pub const ALL: [MechanismId; 6] = [
        MechanismId::MgsMan,
        MechanismId::MgsWoman,
        MechanismId::TiebreakMan,
        MechanismId::TiebreakWoman,
        MechanismId::OneTmFifteen,
        MechanismId::KiralyNa,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MechanismId::MgsMan => "mgs-man",
            MechanismId::MgsWoman => "mgs-woman",
            MechanismId::TiebreakMan => "tiebreak-man",
            MechanismId::TiebreakWoman => "tiebreak-woman",
            MechanismId::OneTmFifteen => "onetm-15",
            MechanismId::KiralyNa => "kiraly-na",
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MechanismId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MechanismId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mechanism {s:?}")))
    }
}

impl Mechanism for MechanismId {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn admits(&self, inst: &Instance) -> bool {
        let class = inst.classify();
        match self {
            MechanismId::MgsMan | MechanismId::MgsWoman => !class.has_ties(),
            MechanismId::TiebreakMan | MechanismId::TiebreakWoman => true,
            MechanismId::OneTmFifteen | MechanismId::KiralyNa => class.is_one_tm(),
        }
    }

    fn run(&self, inst: &Instance) -> Result<Matching> {
        match self {
            MechanismId::MgsMan => mgs(inst),
            MechanismId::MgsWoman => wgs(inst),
            MechanismId::TiebreakMan => Ok(tiebreak_mechanism(inst, Side::Man)),
            MechanismId::TiebreakWoman => Ok(tiebreak_mechanism(inst, Side::Woman)),
            MechanismId::OneTmFifteen => onetm_mechanism(inst),
            MechanismId::KiralyNa => kiraly_na(inst),
        }
    }
}

/// Flattens every tie so that its members appear in increasing index order.
pub fn break_ties_by_index(inst: &Instance) -> Instance {
    inst.tie_broken()
}

/// Index tie-breaking followed by Gale-Shapley with `side` proposing. The
/// result is stable for the original instance.
pub fn tiebreak_mechanism(inst: &Instance, side: Side) -> Matching {
    match side {
        Side::Man => mgs::propose(&inst.tie_broken()),
        Side::Woman => mgs::propose(&inst.swap_roles().tie_broken()).swapped(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{builtin_instance, Builtin};
    use crate::model::{PersonId, PreferenceList};
    use crate::stability::is_stable;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn ids_round_trip_through_strings() {
        for id in MechanismId::ALL {
            assert_eq!(id.as_str().parse::<MechanismId>().unwrap(), id);
        }
        assert!("gs".parse::<MechanismId>().is_err());
    }

    #[test]
    fn tie_breaking() {
        let i1 = break_ties_by_index(&builtin_instance(Builtin::I1));
        assert_eq!(i1.list(PersonId::woman(2)), &PreferenceList::strict([1, 2]));
        assert!(!i1.classify().has_ties());

        let tied = PreferenceList::new(vec![vec![4, 1]]);
        assert_eq!(tied.tie_broken(), PreferenceList::strict([1, 4]));

        let strict = builtin_instance(Builtin::I1).tie_broken();
        assert_eq!(break_ties_by_index(&strict), strict);
    }

    #[test]
    fn tiebreak_on_i1() {
        let i1 = builtin_instance(Builtin::I1);
        let out = tiebreak_mechanism(&i1, Side::Man);
        assert_eq!(out, m(&[(1, 2), (2, 3)]));
        assert!(is_stable(&i1, &out).unwrap());
    }

    #[test]
    fn tiebreak_woman_mirrors_tiebreak_man() {
        let i1 = builtin_instance(Builtin::I1);
        let i2 = builtin_instance(Builtin::I2);
        let women = tiebreak_mechanism(&i2, Side::Woman);
        assert_eq!(women, tiebreak_mechanism(&i1, Side::Man).swapped());
        assert_eq!(women, m(&[(2, 1), (3, 2)]));
        assert!(is_stable(&i2, &women).unwrap());
    }

    #[test]
    fn tiebreak_on_empty_lists() {
        let inst = Instance::empty(3, 2);
        assert!(tiebreak_mechanism(&inst, Side::Man).is_empty());
        assert!(tiebreak_mechanism(&inst, Side::Woman).is_empty());
    }

    #[test]
    fn admissibility() {
        let i1 = builtin_instance(Builtin::I1);
        let i3 = builtin_instance(Builtin::I3);
        assert!(!MechanismId::OneTmFifteen.admits(&i1));
        assert!(MechanismId::OneTmFifteen.admits(&i3));
        assert!(!MechanismId::MgsMan.admits(&i3));
        assert!(MechanismId::TiebreakWoman.admits(&i1));
        assert_eq!(
            MechanismId::MgsMan.run(&i3),
            Err(Error::RequiresStrictLists)
        );
        assert_eq!(
            MechanismId::KiralyNa.run(&i1),
            Err(Error::RequiresStrictWomen)
        );
    }
}
