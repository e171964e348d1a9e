#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smti::generate::{gen_instance, GenParams};
use smti::oracle::StrategySpace;
use smti::{Instance, PreferenceList};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Ties on both sides.
    Smti,
    /// Ties in men's lists only.
    OneTm,
    /// No ties.
    Smi,
}

/// Random instance of the family with between `min_n` and `max_n` persons
/// per side; all parameters derive from `seed`.
pub fn random_instance(family: Family, seed: u64, min_n: usize, max_n: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed_0000_0000);
    let num_men = rng.gen_range(min_n..=max_n);
    let num_women = rng.gen_range(min_n..=max_n);
    let accept = rng.gen_range(0.25..0.9);
    let ties = rng.gen_range(0.0..0.7);
    let (tm, tw) = match family {
        Family::Smti => (ties, rng.gen_range(0.0..0.7)),
        Family::OneTm => (ties, 0.0),
        Family::Smi => (0.0, 0.0),
    };
    gen_instance(&GenParams {
        num_men,
        num_women,
        acceptance_probability: accept,
        tie_probability_men: tm,
        tie_probability_women: tw,
        one_tm: family == Family::OneTm,
        seed,
    })
}

/// Every list (with ties) over every subset of `opposite` persons.
pub fn all_lists(opposite: usize, with_ties: bool) -> Vec<PreferenceList> {
    let space = if with_ties {
        StrategySpace::exhaustive_with_ties()
    } else {
        StrategySpace::exhaustive_strict()
    };
    space
        .with_max_opposite(opposite)
        .candidates(&PreferenceList::empty(), opposite)
        .unwrap()
}

/// Every instance with the given counts; women's lists are strict when
/// `one_tm` is set.
pub fn all_instances(num_men: usize, num_women: usize, one_tm: bool) -> Vec<Instance> {
    let men_lists = all_lists(num_women, true);
    let women_lists = all_lists(num_men, !one_tm);
    let slots = num_men + num_women;
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots];
    loop {
        let men = (0..num_men).map(|i| men_lists[idx[i]].clone()).collect();
        let women = (0..num_women)
            .map(|j| women_lists[idx[num_men + j]].clone())
            .collect();
        out.push(Instance::new(num_men, num_women, men, women).unwrap());
        // odometer
        let mut k = 0;
        loop {
            if k == slots {
                return out;
            }
            idx[k] += 1;
            let len = if k < num_men {
                men_lists.len()
            } else {
                women_lists.len()
            };
            if idx[k] < len {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
