//! Instances, preference lists with ties, matchings, and the preference
//! relations every other module is built on.
//!
//! Persons are addressed by a [`PersonId`] carrying a side and a 1-based
//! index. Preference lists are sequences of tie-groups; everyone inside one
//! group is equally preferred, and anyone missing from the list is
//! unacceptable.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Man,
    Woman,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Man => Side::Woman,
            Side::Woman => Side::Man,
        }
    }

    /// Token prefix used in the text formats (`m` or `w`).
    pub fn letter(self) -> char {
        match self {
            Side::Man => 'm',
            Side::Woman => 'w',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Man => f.write_str("man"),
            Side::Woman => f.write_str("woman"),
        }
    }
}

/// A person, identified by side and 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PersonId {
    pub side: Side,
    pub index: usize,
}

impl PersonId {
    pub const fn man(index: usize) -> Self {
        PersonId {
            side: Side::Man,
            index,
        }
    }

    pub const fn woman(index: usize) -> Self {
        PersonId {
            side: Side::Woman,
            index,
        }
    }
}

impl fmt::Display for PersonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.index)
    }
}

impl FromStr for PersonId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let side = match s.chars().next() {
            Some('m') => Side::Man,
            Some('w') => Side::Woman,
            _ => return Err(Error::InvalidArgument(format!("bad person token {s:?}"))),
        };
        let index: usize = s[1..]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad person token {s:?}")))?;
        if index == 0 {
            return Err(Error::InvalidArgument(format!(
                "person indices start at 1: {s:?}"
            )));
        }
        Ok(PersonId { side, index })
    }
}

/// Position of the tie-group holding a person in someone's list. Smaller is
/// better; persons in the same tie-group have equal rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank(pub usize);

/// An ordered sequence of tie-groups over opposite-side indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceList {
    groups: Vec<Vec<usize>>,
}

impl PreferenceList {
    /// Builds a list from tie-groups. Empty groups are dropped.
    pub fn new(groups: Vec<Vec<usize>>) -> Self {
        PreferenceList {
            groups: groups.into_iter().filter(|g| !g.is_empty()).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// A list without ties.
    pub fn strict<I: IntoIterator<Item = usize>>(order: I) -> Self {
        PreferenceList {
            groups: order.into_iter().map(|i| vec![i]).collect(),
        }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Number of listed persons (not tie-groups).
    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Listed persons in list order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.groups.iter().flatten().copied()
    }

    pub fn has_ties(&self) -> bool {
        self.groups.iter().any(|g| g.len() > 1)
    }

    pub fn rank_of(&self, target: usize) -> Option<Rank> {
        self.groups
            .iter()
            .position(|g| g.contains(&target))
            .map(Rank)
    }

    pub fn contains(&self, target: usize) -> bool {
        self.rank_of(target).is_some()
    }

    /// The same list with `target` removed.
    pub fn without(&self, target: usize) -> Self {
        Self::new(
            self.groups
                .iter()
                .map(|g| g.iter().copied().filter(|&x| x != target).collect())
                .collect(),
        )
    }

    /// The first `groups` tie-groups of the list.
    pub fn truncated(&self, groups: usize) -> Self {
        PreferenceList {
            groups: self.groups.iter().take(groups).cloned().collect(),
        }
    }

    /// Flattens every tie into ascending index order.
    pub fn tie_broken(&self) -> Self {
        Self::strict(self.groups.iter().flat_map(|g| {
            let mut g = g.clone();
            g.sort_unstable();
            g
        }))
    }
}

/// Problem family an instance falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Sm,
    Smi,
    Smt,
    Smti,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceClass {
    pub kind: ProblemKind,
    pub men_have_ties: bool,
    pub women_have_ties: bool,
    pub lists_complete: bool,
}

impl InstanceClass {
    /// Ties appear in men's lists only (women strict).
    pub fn is_one_tm(&self) -> bool {
        !self.women_have_ties
    }

    pub fn has_ties(&self) -> bool {
        self.men_have_ties || self.women_have_ties
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CountMismatch {
        side: Side,
        declared: usize,
        lists: usize,
    },
    DuplicateEntry {
        owner: PersonId,
        target: PersonId,
    },
    OutOfRange {
        owner: PersonId,
        target: PersonId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CountMismatch {
                side,
                declared,
                lists,
            } => write!(
                f,
                "declared {declared} of side {side} but found {lists} lists"
            ),
            Violation::DuplicateEntry { owner, target } => {
                write!(f, "{owner} lists {target} more than once")
            }
            Violation::OutOfRange { owner, target } => {
                write!(f, "{owner} lists {target}, which is out of range")
            }
        }
    }
}

/// Problems found by [`Instance::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// A two-sided preference structure with ties and incomplete lists.
///
/// Acceptability may be asymmetric in the raw lists; matching logic always
/// uses [`Instance::mutually_acceptable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    num_men: usize,
    num_women: usize,
    men: Vec<PreferenceList>,
    women: Vec<PreferenceList>,
}

impl Instance {
    /// Builds an instance and validates it.
    pub fn new(
        num_men: usize,
        num_women: usize,
        men: Vec<PreferenceList>,
        women: Vec<PreferenceList>,
    ) -> std::result::Result<Self, ValidationReport> {
        let inst = Self::from_lists_unchecked(num_men, num_women, men, women);
        let report = inst.validate();
        if report.is_valid() {
            Ok(inst)
        } else {
            Err(report)
        }
    }

    /// Builds an instance without validation; see [`Instance::validate`].
    pub fn from_lists_unchecked(
        num_men: usize,
        num_women: usize,
        men: Vec<PreferenceList>,
        women: Vec<PreferenceList>,
    ) -> Self {
        Instance {
            num_men,
            num_women,
            men,
            women,
        }
    }

    /// Instance in which nobody finds anybody acceptable.
    pub fn empty(num_men: usize, num_women: usize) -> Self {
        Instance {
            num_men,
            num_women,
            men: vec![PreferenceList::empty(); num_men],
            women: vec![PreferenceList::empty(); num_women],
        }
    }

    pub fn num_men(&self) -> usize {
        self.num_men
    }

    pub fn num_women(&self) -> usize {
        self.num_women
    }

    pub fn count(&self, side: Side) -> usize {
        match side {
            Side::Man => self.num_men,
            Side::Woman => self.num_women,
        }
    }

    pub fn men_lists(&self) -> &[PreferenceList] {
        &self.men
    }

    pub fn women_lists(&self) -> &[PreferenceList] {
        &self.women
    }

    pub fn lists(&self, side: Side) -> &[PreferenceList] {
        match side {
            Side::Man => &self.men,
            Side::Woman => &self.women,
        }
    }

    pub fn persons(&self, side: Side) -> impl Iterator<Item = PersonId> {
        (1..=self.count(side)).map(move |index| PersonId { side, index })
    }

    pub fn contains_person(&self, p: PersonId) -> bool {
        p.index >= 1 && p.index <= self.count(p.side) && p.index <= self.lists(p.side).len()
    }

    /// The preference list of `p`. Panics if `p` is not in the instance.
    pub fn list(&self, p: PersonId) -> &PreferenceList {
        &self.lists(p.side)[p.index - 1]
    }

    /// Copy of the instance with `p`'s list replaced.
    pub fn with_list(&self, p: PersonId, list: PreferenceList) -> Instance {
        let mut out = self.clone();
        match p.side {
            Side::Man => out.men[p.index - 1] = list,
            Side::Woman => out.women[p.index - 1] = list,
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for side in [Side::Man, Side::Woman] {
            let declared = self.count(side);
            let lists = self.lists(side);
            if lists.len() != declared {
                violations.push(Violation::CountMismatch {
                    side,
                    declared,
                    lists: lists.len(),
                });
            }
            let bound = self.count(side.opposite());
            for (i, list) in lists.iter().enumerate() {
                let owner = PersonId { side, index: i + 1 };
                let mut seen = vec![false; bound + 1];
                for target in list.iter() {
                    let tid = PersonId {
                        side: side.opposite(),
                        index: target,
                    };
                    if target == 0 || target > bound {
                        violations.push(Violation::OutOfRange { owner, target: tid });
                    } else if seen[target] {
                        violations.push(Violation::DuplicateEntry { owner, target: tid });
                    } else {
                        seen[target] = true;
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn classify(&self) -> InstanceClass {
        let men_have_ties = self.men.iter().any(PreferenceList::has_ties);
        let women_have_ties = self.women.iter().any(PreferenceList::has_ties);
        let lists_complete = self.men.iter().all(|l| l.len() == self.num_women)
            && self.women.iter().all(|l| l.len() == self.num_men);
        let kind = match (men_have_ties || women_have_ties, lists_complete) {
            (false, true) => ProblemKind::Sm,
            (false, false) => ProblemKind::Smi,
            (true, true) => ProblemKind::Smt,
            (true, false) => ProblemKind::Smti,
        };
        InstanceClass {
            kind,
            men_have_ties,
            women_have_ties,
            lists_complete,
        }
    }

    /// Rank of `target` in `owner`'s list, or `None` if unacceptable.
    pub fn rank(&self, owner: PersonId, target: PersonId) -> Result<Option<Rank>> {
        if owner.side == target.side {
            return Err(Error::SameSide(owner, target));
        }
        for p in [owner, target] {
            if !self.contains_person(p) {
                return Err(Error::UnknownPerson(p));
            }
        }
        Ok(self.list(owner).rank_of(target.index))
    }

    pub fn mutually_acceptable(&self, man: usize, woman: usize) -> bool {
        man >= 1
            && woman >= 1
            && man <= self.men.len()
            && woman <= self.women.len()
            && self.men[man - 1].contains(woman)
            && self.women[woman - 1].contains(man)
    }

    /// Number of mutually acceptable partners of `p`.
    pub fn mutual_degree(&self, p: PersonId) -> usize {
        self.list(p)
            .iter()
            .filter(|&q| match p.side {
                Side::Man => self.mutually_acceptable(p.index, q),
                Side::Woman => self.mutually_acceptable(q, p.index),
            })
            .count()
    }

    /// Whether `p` prefers `new` to `old`: either both give `p` a partner
    /// and the new one sits in a strictly better tie-group, or `p` is single
    /// in `old` and matched in `new` to someone `p` finds acceptable.
    pub fn prefers(&self, p: PersonId, new: &Matching, old: &Matching) -> bool {
        let Some(new_partner) = new.partner(p) else {
            return false;
        };
        let Ok(Some(new_rank)) = self.rank(p, new_partner) else {
            return false;
        };
        match old.partner(p) {
            None => true,
            Some(old_partner) => match self.rank(p, old_partner) {
                Ok(Some(old_rank)) => new_rank < old_rank,
                _ => false,
            },
        }
    }

    /// Men become women and vice versa; indices are kept.
    pub fn swap_roles(&self) -> Instance {
        Instance {
            num_men: self.num_women,
            num_women: self.num_men,
            men: self.women.clone(),
            women: self.men.clone(),
        }
    }

    /// Every tie flattened into ascending index order.
    pub fn tie_broken(&self) -> Instance {
        Instance {
            num_men: self.num_men,
            num_women: self.num_women,
            men: self.men.iter().map(PreferenceList::tie_broken).collect(),
            women: self.women.iter().map(PreferenceList::tie_broken).collect(),
        }
    }
}

/// A partial one-to-one assignment of men to women, stored as
/// `(man, woman)` pairs sorted by man.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails if a man or a woman appears twice.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidMatching(format!("m{} appears twice", w[0].0)));
            }
        }
        let mut women: Vec<_> = pairs.iter().map(|&(_, w)| w).collect();
        women.sort_unstable();
        for w in women.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidMatching(format!("w{} appears twice", w[0])));
            }
        }
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn wife(&self, man: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&man, |&(m, _)| m)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn husband(&self, woman: usize) -> Option<usize> {
        self.pairs
            .iter()
            .find(|&&(_, w)| w == woman)
            .map(|&(m, _)| m)
    }

    pub fn partner(&self, p: PersonId) -> Option<PersonId> {
        match p.side {
            Side::Man => self.wife(p.index).map(PersonId::woman),
            Side::Woman => self.husband(p.index).map(PersonId::man),
        }
    }

    pub fn contains(&self, man: usize, woman: usize) -> bool {
        self.wife(man) == Some(woman)
    }

    /// The same matching seen from a role-swapped instance.
    pub fn swapped(&self) -> Matching {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(m, w)| (w, m)).collect();
        pairs.sort_unstable();
        Matching { pairs }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (m, w)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "(m{m},w{w})")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{builtin_instance, Builtin};

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn builtin_instances_validate() {
        for id in Builtin::ALL {
            assert!(builtin_instance(id).validate().is_valid(), "{id:?}");
        }
    }

    #[test]
    fn duplicate_entry_is_reported() {
        let inst = Instance::from_lists_unchecked(
            1,
            1,
            vec![PreferenceList::strict([1, 1])],
            vec![PreferenceList::strict([1])],
        );
        let report = inst.validate();
        assert_eq!(
            report.violations,
            vec![Violation::DuplicateEntry {
                owner: PersonId::man(1),
                target: PersonId::woman(1)
            }]
        );
    }

    #[test]
    fn out_of_range_is_reported() {
        let inst = Instance::from_lists_unchecked(
            1,
            2,
            vec![PreferenceList::strict([3])],
            vec![PreferenceList::empty(), PreferenceList::empty()],
        );
        let report = inst.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::OutOfRange { .. }));
    }

    #[test]
    fn count_mismatch_is_reported() {
        let inst = Instance::from_lists_unchecked(
            2,
            1,
            vec![PreferenceList::empty()],
            vec![PreferenceList::empty()],
        );
        assert!(matches!(
            inst.validate().violations[..],
            [Violation::CountMismatch {
                side: Side::Man,
                declared: 2,
                lists: 1
            }]
        ));
    }

    #[test]
    fn classification() {
        let i1 = builtin_instance(Builtin::I1).classify();
        assert_eq!(i1.kind, ProblemKind::Smti);
        assert!(i1.women_have_ties);
        assert!(!i1.is_one_tm());

        let i3 = builtin_instance(Builtin::I3).classify();
        assert_eq!(i3.kind, ProblemKind::Smti);
        assert!(!i3.women_have_ties);
        assert!(i3.is_one_tm());

        let sm = Instance::new(
            2,
            2,
            vec![
                PreferenceList::strict([1, 2]),
                PreferenceList::strict([2, 1]),
            ],
            vec![
                PreferenceList::strict([1, 2]),
                PreferenceList::strict([1, 2]),
            ],
        )
        .unwrap();
        assert_eq!(sm.classify().kind, ProblemKind::Sm);
    }

    #[test]
    fn rank_queries() {
        let i1 = builtin_instance(Builtin::I1);
        let (m1, m2, m3) = (PersonId::man(1), PersonId::man(2), PersonId::man(3));
        let (w1, w2) = (PersonId::woman(1), PersonId::woman(2));
        assert_eq!(i1.rank(w2, m1).unwrap(), i1.rank(w2, m2).unwrap());
        assert!(i1.rank(w2, m1).unwrap().is_some());
        assert!(i1.rank(m1, w2).unwrap() < i1.rank(m1, w1).unwrap());
        for w in i1.persons(Side::Woman) {
            assert_eq!(i1.rank(m3, w).unwrap(), None);
        }
        assert_eq!(i1.rank(m1, m2), Err(Error::SameSide(m1, m2)));
    }

    #[test]
    fn prefers_matching_examples() {
        let i1 = builtin_instance(Builtin::I1);
        let m1 = m(&[(1, 1), (2, 2)]);
        let m2 = m(&[(1, 2), (2, 3)]);
        assert!(i1.prefers(PersonId::man(1), &m2, &m1));
        assert!(!i1.prefers(PersonId::man(1), &m1, &m2));
        assert!(!i1.prefers(PersonId::man(1), &m1, &m1));
        // w2 is indifferent between m1 and m2
        assert!(!i1.prefers(PersonId::woman(2), &m2, &m1));
        assert!(!i1.prefers(PersonId::woman(2), &m1, &m2));

        let na = builtin_instance(Builtin::NaTrue);
        let manipulated = m(&[(1, 2), (2, 3), (4, 1)]);
        let honest = m(&[(2, 1), (3, 3), (4, 2)]);
        assert!(na.prefers(PersonId::man(1), &manipulated, &honest));
        // matched -> single is never preferred
        assert!(!na.prefers(PersonId::man(3), &manipulated, &honest));
    }

    #[test]
    fn swap_roles_examples() {
        let i1 = builtin_instance(Builtin::I1);
        let swapped = i1.swap_roles();
        assert_eq!(swapped.list(PersonId::man(2)).groups(), &[vec![1, 2]]);
        assert!(swapped.men_lists().iter().any(PreferenceList::has_ties));
        let i3 = builtin_instance(Builtin::I3);
        assert_eq!(i3.swap_roles().swap_roles(), i3);
        // I2 is I1 with the sides exchanged
        assert_eq!(swapped, builtin_instance(Builtin::I2));
    }

    #[test]
    fn matching_rejects_repeats() {
        assert!(Matching::from_pairs([(1, 1), (1, 2)]).is_err());
        assert!(Matching::from_pairs([(1, 1), (2, 1)]).is_err());
        let mm = m(&[(2, 3), (1, 2)]);
        assert_eq!(mm.pairs(), &[(1, 2), (2, 3)]);
        assert_eq!(mm.husband(3), Some(2));
        assert_eq!(mm.to_string(), "{(m1,w2), (m2,w3)}");
    }

    #[test]
    fn person_tokens() {
        assert_eq!("m3".parse::<PersonId>().unwrap(), PersonId::man(3));
        assert_eq!("w12".parse::<PersonId>().unwrap(), PersonId::woman(12));
        assert!("x1".parse::<PersonId>().is_err());
        assert!("m0".parse::<PersonId>().is_err());
    }
}
