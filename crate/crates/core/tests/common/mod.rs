//! Seeded corpus builders shared by the integration suites.

use multibeta::{BaseTuple, EpWord, Expansion, Mode, Policy, Scalar, Transform, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One deterministic stream per criterion.
pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x0BA5E5_u64.wrapping_mul(stream + 1))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::from_ratio(p, q).unwrap()
}

/// A rational base in `(1, 2]`, as `1 + p/q` with `1 ≤ p ≤ q`.
pub fn rand_base_unit(rng: &mut ChaCha8Rng) -> Scalar {
    let q = rng.random_range(1..=12i64);
    let p = rng.random_range(1..=q);
    ratio(q + p, q)
}

/// A constant tuple `(β, …, β)` with `β ∈ (1, m + 1]`, which always passes
/// the admissibility check.
pub fn rand_constant_tuple(rng: &mut ChaCha8Rng, max_m: usize) -> BaseTuple {
    let m = rng.random_range(1..=max_m);
    let q = rng.random_range(1..=10i64);
    let p = rng.random_range(1..=q);
    // β = 1 + m·p/q ∈ (1, m+1].
    let beta = ratio(q + m as i64 * p, q);
    BaseTuple::constant(beta, m).unwrap()
}

/// A pair `(β₀, β₁) ∈ (1, 2]²`, which always passes the admissibility
/// check.
pub fn rand_pair_tuple(rng: &mut ChaCha8Rng) -> BaseTuple {
    let b0 = rand_base_unit(rng);
    let b1 = rand_base_unit(rng);
    BaseTuple::new(vec![b0, b1]).unwrap()
}

/// A constant tuple over an integer base, whose orbits always close into
/// cycles for rational start values (states keep a bounded denominator).
pub fn rand_integer_tuple(rng: &mut ChaCha8Rng) -> BaseTuple {
    let beta = rng.random_range(2..=4i64);
    let m = rng.random_range((beta as usize - 1)..=4);
    BaseTuple::constant(Scalar::from_integer(beta), m).unwrap()
}

/// A random admissible tuple with alphabet maximum at most `max_m`,
/// sampled from the families known to be admissible plus filtered random
/// candidates.
pub fn rand_admissible_tuple(rng: &mut ChaCha8Rng, max_m: usize) -> BaseTuple {
    for _ in 0..200 {
        let candidate = match rng.random_range(0..4u8) {
            0 => rand_constant_tuple(rng, max_m),
            1 if max_m >= 1 => rand_pair_tuple(rng),
            _ => {
                let len = rng.random_range(2..=max_m + 1);
                let betas = (0..len).map(|_| rand_base_unit(rng)).collect();
                BaseTuple::new(betas).unwrap()
            }
        };
        if candidate.validate().unwrap().is_admissible() {
            return candidate;
        }
    }
    // Practically unreachable; the constant family alone always succeeds.
    rand_constant_tuple(rng, max_m)
}

/// A point of the tuple's domain, `U·p/q` with small `q`.
pub fn rand_point(rng: &mut ChaCha8Rng, tuple: &BaseTuple) -> Scalar {
    let q = rng.random_range(1..=24i64);
    let p = rng.random_range(0..=q);
    tuple.upper_bound().checked_mul(&ratio(p, q)).unwrap()
}

pub fn rand_epword(rng: &mut ChaCha8Rng, m: u8, max_pre: usize, max_per: usize) -> EpWord {
    let pre_len = rng.random_range(0..=max_pre);
    let per_len = rng.random_range(1..=max_per);
    let pre = (0..pre_len).map(|_| rng.random_range(0..=m)).collect();
    let period = (0..per_len).map(|_| rng.random_range(0..=m)).collect();
    EpWord::new(pre, period, m).unwrap()
}

pub fn rand_finite_word(rng: &mut ChaCha8Rng, m: u8, max_len: usize) -> Word {
    let len = rng.random_range(1..=max_len);
    let digits = (0..len).map(|_| rng.random_range(0..=m)).collect();
    Word::new(digits, m).unwrap()
}

pub fn expand(tuple: &BaseTuple, policy: Policy, x: &Scalar, depth: usize) -> Expansion {
    Transform::canonical(tuple, policy)
        .unwrap()
        .expand(x, depth)
        .unwrap()
}

pub fn exact(text: &str) -> Scalar {
    Scalar::parse(text, &Mode::Exact).unwrap()
}

pub fn exact_tuple(text: &str) -> BaseTuple {
    BaseTuple::parse_list(text, &Mode::Exact).unwrap()
}

/// Ground truth for "is `w` the `policy` expansion of its own value",
/// obtained by regenerating the expansion. Starts shallow — a matching
/// word's orbit closes within its own tail count, and a mismatch usually
/// shows within a few digits — and deepens only when still undecided.
pub fn regeneration_truth(bt: &BaseTuple, policy: Policy, w: &EpWord) -> Option<bool> {
    let x = w.project(bt).unwrap();
    for depth in [32, 320] {
        if let Some(truth) = matches_expansion(w, &expand(bt, policy, &x, depth)) {
            return Some(truth);
        }
    }
    None
}

/// Whether the eventually periodic word equals the (possibly truncated)
/// expansion, judged on the digits the expansion actually knows.
/// `None` means the expansion truncated without revealing a difference.
pub fn matches_expansion(w: &EpWord, expansion: &Expansion) -> Option<bool> {
    match expansion {
        Expansion::Periodic {
            word,
            approximate: false,
        } => Some(w == word),
        _ => {
            let known = match expansion {
                Expansion::Periodic { word, .. } => word.distinct_tails(),
                Expansion::Truncated { prefix } => prefix.len(),
            };
            for i in 0..known {
                if w.digit_at(i) != expansion.digit_at(i).unwrap() {
                    return Some(false);
                }
            }
            None
        }
    }
}
