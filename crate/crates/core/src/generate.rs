//! Seeded random instances and the fixed instances from the literature.
//!
//! Generation order for [`gen_instance`], all draws from one
//! `ChaCha8Rng::seed_from_u64(seed)` stream:
//!
//! 1. for each man `m` ascending, for each woman `w` ascending: one
//!    Bernoulli(`acceptance_probability`) draw; a success puts the pair on
//!    both lists;
//! 2. for each man ascending: shuffle his acceptable women, then one
//!    Bernoulli(`tie_probability_men`) draw per adjacent position (left to
//!    right) deciding whether the entry joins the previous tie-group;
//! 3. the same for each woman ascending with `tie_probability_women`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, PreferenceList};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub num_men: usize,
    pub num_women: usize,
    pub acceptance_probability: f64,
    pub tie_probability_men: f64,
    pub tie_probability_women: f64,
    /// Forces `tie_probability_women` to zero.
    pub one_tm: bool,
    pub seed: u64,
}

impl GenParams {
    /// Square instance with strict lists and the given acceptance rate.
    pub fn new(n: usize, acceptance_probability: f64, seed: u64) -> Self {
        GenParams {
            num_men: n,
            num_women: n,
            acceptance_probability,
            tie_probability_men: 0.0,
            tie_probability_women: 0.0,
            one_tm: false,
            seed,
        }
    }

    pub fn with_ties(mut self, men: f64, women: f64) -> Self {
        self.tie_probability_men = men;
        self.tie_probability_women = women;
        self
    }

    pub fn one_tm(mut self) -> Self {
        self.one_tm = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("acceptance probability", self.acceptance_probability),
            ("men's tie probability", self.tie_probability_men),
            ("women's tie probability", self.tie_probability_women),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!(
                    "{name} {p} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

fn shuffled_with_ties(rng: &mut ChaCha8Rng, mut members: Vec<usize>, tie_p: f64) -> PreferenceList {
    members.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, x) in members.into_iter().enumerate() {
        if k > 0 && rng.gen_bool(tie_p) {
            groups.last_mut().expect("k > 0").push(x);
        } else {
            groups.push(vec![x]);
        }
    }
    PreferenceList::new(groups)
}

/// Random instance with mutual acceptability. Panics if a probability lies
/// outside `[0, 1]`; see [`GenParams::validate`].
pub fn gen_instance(p: &GenParams) -> Instance {
    p.validate().expect("generator parameters out of range");
    let women_tie_p = if p.one_tm {
        0.0
    } else {
        p.tie_probability_women
    };
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);

    let mut men_acc = vec![Vec::new(); p.num_men];
    let mut women_acc = vec![Vec::new(); p.num_women];
    for m in 1..=p.num_men {
        for w in 1..=p.num_women {
            if rng.gen_bool(p.acceptance_probability) {
                men_acc[m - 1].push(w);
                women_acc[w - 1].push(m);
            }
        }
    }
    let men = men_acc
        .into_iter()
        .map(|acc| shuffled_with_ties(&mut rng, acc, p.tie_probability_men))
        .collect();
    let women = women_acc
        .into_iter()
        .map(|acc| shuffled_with_ties(&mut rng, acc, women_tie_p))
        .collect();
    Instance::from_lists_unchecked(p.num_men, p.num_women, men, women)
}

/// The fixed instances reproduced by the demos and audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Two maximum stable matchings; ties on the women's side.
    I1,
    /// `I1` with the sides exchanged.
    I2,
    /// Men-only ties; the two size-3 stable matchings lie on opposite sides
    /// of a one-man deletion.
    I3,
    /// True lists of the NA counter-example.
    NaTrue,
    /// NA counter-example after `m1` swaps his two entries.
    NaManip,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::I1,
        Builtin::I2,
        Builtin::I3,
        Builtin::NaTrue,
        Builtin::NaManip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Builtin::I1 => "i1",
            Builtin::I2 => "i2",
            Builtin::I3 => "i3",
            Builtin::NaTrue => "na-true",
            Builtin::NaManip => "na-manip",
        }
    }
}

impl std::str::FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown instance {s:?}")))
    }
}

fn lists(spec: &[&[&[usize]]]) -> Vec<PreferenceList> {
    spec.iter()
        .map(|groups| PreferenceList::new(groups.iter().map(|g| g.to_vec()).collect()))
        .collect()
}

pub fn builtin_instance(id: Builtin) -> Instance {
    let (n, w, men, women): (usize, usize, Vec<PreferenceList>, Vec<PreferenceList>) = match id {
        Builtin::I1 => (
            3,
            3,
            lists(&[&[&[2], &[1]], &[&[2], &[3]], &[]]),
            lists(&[&[&[1]], &[&[1, 2]], &[&[2]]]),
        ),
        Builtin::I2 => (
            3,
            3,
            lists(&[&[&[1]], &[&[1, 2]], &[&[2]]]),
            lists(&[&[&[2], &[1]], &[&[2], &[3]], &[]]),
        ),
        Builtin::I3 => (
            4,
            4,
            lists(&[&[&[2], &[1]], &[&[2, 3]], &[&[3], &[4]], &[]]),
            lists(&[&[&[1]], &[&[2], &[1]], &[&[2], &[3]], &[&[3]]]),
        ),
        Builtin::NaTrue => (
            4,
            4,
            lists(&[&[&[2], &[1]], &[&[1, 3]], &[&[3]], &[&[1], &[2]]]),
            lists(&[&[&[2], &[4], &[1]], &[&[4], &[1]], &[&[2], &[3]], &[]]),
        ),
        Builtin::NaManip => (
            4,
            4,
            lists(&[&[&[1], &[2]], &[&[1, 3]], &[&[3]], &[&[1], &[2]]]),
            lists(&[&[&[2], &[4], &[1]], &[&[4], &[1]], &[&[2], &[3]], &[]]),
        ),
    };
    Instance::new(n, w, men, women).expect("built-in instances are valid")
}
