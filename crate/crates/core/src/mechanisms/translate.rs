//! The 3/2-approximate man-strategy-proof mechanism for instances where only
//! men's lists have ties.
//!
//! The instance is rewritten into one without ties: every man `m_i` becomes
//! `a_i`, and every woman `w_j` becomes a man `b_j` plus two women `s_j` and
//! `t_j`. A tie `(w_j1 .. w_jk)` in `m_i`'s list (members ascending) turns
//! into `t_j1 .. t_jk s_j1 .. s_jk` in `a_i`'s list, and
//!
//! ```text
//! b_j: s_j t_j
//! s_j: Q(w_j) b_j
//! t_j: b_j Q(w_j)
//! ```
//!
//! where `Q(w_j)` is `w_j`'s list with every `m_i` replaced by `a_i`.
//! Men-proposing Gale-Shapley on the rewritten instance always matches `b_j`
//! to `s_j` or `t_j`; whichever of the two is left stands in for `w_j`.
//!
//! Indexing in the rewritten instance: `a_i` is man `i`, `b_j` is man
//! `n + j`, `s_j` is woman `j`, and `t_j` is woman `W + j`, where `n` and `W`
//! are the original numbers of men and women.

use crate::error::{Error, Result};
use crate::model::{Instance, Matching, PreferenceList};

use super::mgs;

/// Index bookkeeping between an instance and its rewritten form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslationMap {
    num_men: usize,
    num_women: usize,
}

/// Role of a man of the rewritten instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslatedMan {
    /// `a_i`, standing for original man `i`.
    A(usize),
    /// `b_j`, attached to original woman `j`.
    B(usize),
}

/// Role of a woman of the rewritten instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslatedWoman {
    S(usize),
    T(usize),
}

impl TranslationMap {
    pub fn new(num_men: usize, num_women: usize) -> Self {
        TranslationMap { num_men, num_women }
    }

    pub fn a(&self, man: usize) -> usize {
        man
    }

    pub fn b(&self, woman: usize) -> usize {
        self.num_men + woman
    }

    pub fn s(&self, woman: usize) -> usize {
        woman
    }

    pub fn t(&self, woman: usize) -> usize {
        self.num_women + woman
    }

    pub fn translated_men(&self) -> usize {
        self.num_men + self.num_women
    }

    pub fn translated_women(&self) -> usize {
        2 * self.num_women
    }

    pub fn man_role(&self, man: usize) -> TranslatedMan {
        if man <= self.num_men {
            TranslatedMan::A(man)
        } else {
            TranslatedMan::B(man - self.num_men)
        }
    }

    pub fn woman_role(&self, woman: usize) -> TranslatedWoman {
        if woman <= self.num_women {
            TranslatedWoman::S(woman)
        } else {
            TranslatedWoman::T(woman - self.num_women)
        }
    }
}

/// Rewrites an instance whose women's lists are strict into an equivalent
/// instance without ties.
pub fn translate_1tm(inst: &Instance) -> Result<(Instance, TranslationMap)> {
    if inst.classify().women_have_ties {
        return Err(Error::RequiresStrictWomen);
    }
    let map = TranslationMap::new(inst.num_men(), inst.num_women());

    let mut men = Vec::with_capacity(map.translated_men());
    for list in inst.men_lists() {
        let mut order = Vec::with_capacity(2 * list.len());
        for group in list.groups() {
            let mut group = group.clone();
            group.sort_unstable();
            order.extend(group.iter().map(|&j| map.t(j)));
            order.extend(group.iter().map(|&j| map.s(j)));
        }
        men.push(PreferenceList::strict(order));
    }
    for j in 1..=inst.num_women() {
        men.push(PreferenceList::strict([map.s(j), map.t(j)]));
    }

    let q: Vec<Vec<usize>> = inst
        .women_lists()
        .iter()
        .map(|l| l.iter().map(|i| map.a(i)).collect())
        .collect();
    let mut women = Vec::with_capacity(map.translated_women());
    for (j, q) in q.iter().enumerate() {
        let b = map.b(j + 1);
        women.push(PreferenceList::strict(q.iter().copied().chain([b])));
    }
    for (j, q) in q.iter().enumerate() {
        let b = map.b(j + 1);
        women.push(PreferenceList::strict(
            [b].into_iter().chain(q.iter().copied()),
        ));
    }

    let translated =
        Instance::from_lists_unchecked(map.translated_men(), map.translated_women(), men, women);
    Ok((translated, map))
}

/// Everything the mechanism computes on the way to its output.
#[derive(Clone, Debug)]
pub struct OneTmRun {
    pub translated: Instance,
    pub map: TranslationMap,
    /// Men-proposing stable matching of the rewritten instance.
    pub intermediate: Matching,
    pub matching: Matching,
}

impl OneTmRun {
    /// Partner of `b_j` in the intermediate matching.
    pub fn b_partner(&self, woman: usize) -> Option<TranslatedWoman> {
        self.intermediate
            .wife(self.map.b(woman))
            .map(|w| self.map.woman_role(w))
    }
}

pub fn onetm_trace(inst: &Instance) -> Result<OneTmRun> {
    let (translated, map) = translate_1tm(inst)?;
    let intermediate = mgs::propose(&translated);
    let matching =
        Matching::from_pairs(intermediate.pairs().iter().filter_map(|&(man, woman)| {
            match (map.man_role(man), map.woman_role(woman)) {
                (TranslatedMan::A(i), TranslatedWoman::S(j) | TranslatedWoman::T(j)) => {
                    Some((i, j))
                }
                (TranslatedMan::B(_), _) => None,
            }
        }))?;
    Ok(OneTmRun {
        translated,
        map,
        intermediate,
        matching,
    })
}

/// Translate, run men-proposing Gale-Shapley, and map `(a_i, s_j)` or
/// `(a_i, t_j)` back to `(m_i, w_j)`.
pub fn onetm_mechanism(inst: &Instance) -> Result<Matching> {
    Ok(onetm_trace(inst)?.matching)
}
