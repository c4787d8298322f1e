//! The measurement cascade: commuting propositions applied one after another
//! route each common eigenstate to exactly one of `N` detectors.
//!
//! Detector numbering follows the column codes of the standard system: the
//! answer word `(1…1)` lands on `D_1`, `(0…0)` on `D_N`, i.e.
//! `detector = N − value(word)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::error::{Result, SieveError};
use crate::matrix::{StateVector, Tolerance};
use crate::system::{eigenvalue_bits, standard_diagonal_entry, PropositionSystem};
use crate::MAX_STATS_N;

/// Seedable, portable generator used by every sampling routine.
pub type SieveRng = ChaCha8Rng;

/// Per-trial generator; trial `t` of a run seeded with `seed` uses `seed + t`.
pub fn trial_rng(seed: u64, trial: u64) -> SieveRng {
    SieveRng::seed_from_u64(seed.wrapping_add(trial))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorOutcome {
    /// Eigenvalue of projector `i` at step `i`.
    pub answer_bits: Vec<u8>,
    /// 1-based.
    pub detector: usize,
}

/// `N − value(bits)`, first bit most significant.
pub fn detector_for_bits(bits: &[u8]) -> usize {
    let value = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
    (1usize << bits.len()) - value
}

/// Runs basis vector `index` (1-based) through the sieve. Fails when the
/// vector is not a common eigenvector; use [`measure_state`] for those.
pub fn route_basis_state(
    system: &PropositionSystem,
    basis: &Basis,
    index: usize,
    tol: Tolerance,
) -> Result<DetectorOutcome> {
    if system.dim() != basis.dim() {
        return Err(SieveError::dims(system.dim(), basis.dim()));
    }
    let answer_bits = eigenvalue_bits(system.projectors(), basis, index, tol)?;
    Ok(DetectorOutcome {
        detector: detector_for_bits(&answer_bits),
        answer_bits,
    })
}

/// Detector click probabilities, indexed by detector number − 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDistribution {
    #[serde(rename = "detectors")]
    pub probabilities: Vec<f64>,
}

impl MeasurementDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// The detector carrying all the weight, if any does.
    pub fn point_mass(&self, tol: Tolerance) -> Option<usize> {
        let (k, &p) = self
            .probabilities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))?;
        ((p - 1.0).abs() <= tol.eps()).then_some(k + 1)
    }
}

fn check_normalized(state: &StateVector, tol: Tolerance) -> Result<()> {
    let norm_sq = state.norm_sqr();
    if (norm_sq - 1.0).abs() > tol.eps() {
        return Err(SieveError::Unnormalized { norm_sq });
    }
    Ok(())
}

/// Exact detector distribution, applying the projectors in index order.
pub fn measure_state(
    system: &PropositionSystem,
    state: &StateVector,
    tol: Tolerance,
) -> Result<MeasurementDistribution> {
    let order: Vec<usize> = (1..=system.n()).collect();
    measure_state_in_order(system, state, &order, tol)
}

/// Exact detector distribution with the projectors applied in `order`
/// (1-based projector numbers). Detector labels always refer to the
/// projectors' own indices, so commuting systems give the same answer for
/// every order.
pub fn measure_state_in_order(
    system: &PropositionSystem,
    state: &StateVector,
    order: &[usize],
    tol: Tolerance,
) -> Result<MeasurementDistribution> {
    let n = system.n();
    if state.dim() != system.dim() {
        return Err(SieveError::dims(system.dim(), state.dim()));
    }
    check_order(order, n)?;
    check_normalized(state, tol)?;

    // Each branch is the state filtered by the answers so far; `code` holds
    // the answer of projector i at bit (n − 1 − i).
    let mut branches: Vec<(usize, StateVector)> = vec![(0, state.clone())];
    for &which in order {
        let p = &system.projectors()[which - 1];
        let shift = n - which;
        let mut next = Vec::with_capacity(branches.len() * 2);
        for (code, v) in branches {
            let yes = p.apply(&v)?;
            let no = StateVector::new(
                v.amplitudes()
                    .iter()
                    .zip(yes.amplitudes())
                    .map(|(a, b)| a - b)
                    .collect(),
            )?;
            for (bit, w) in [(1usize, yes), (0, no)] {
                // exactly-zero branches carry no probability
                if w.norm_sqr() > 0.0 {
                    next.push((code | (bit << shift), w));
                }
            }
        }
        branches = next;
    }

    let dim = system.dim();
    let mut probabilities = vec![0.0; dim];
    for (code, v) in branches {
        probabilities[dim - code - 1] += v.norm_sqr();
    }
    Ok(MeasurementDistribution { probabilities })
}

fn check_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(SieveError::InvalidPermutation(format!(
            "order lists {} projectors, system has {n}",
            order.len()
        )));
    }
    for &i in order {
        if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
            return Err(SieveError::InvalidPermutation(format!(
                "bad projector number {i} in order"
            )));
        }
    }
    Ok(())
}

/// One sequential run with collapse after each answer.
pub fn sample_outcome<R: Rng + ?Sized>(
    system: &PropositionSystem,
    state: &StateVector,
    rng: &mut R,
    tol: Tolerance,
) -> Result<DetectorOutcome> {
    if state.dim() != system.dim() {
        return Err(SieveError::dims(system.dim(), state.dim()));
    }
    check_normalized(state, tol)?;
    let mut v = state.clone();
    let mut answer_bits = Vec::with_capacity(system.n());
    for p in system.projectors() {
        let yes = p.apply(&v)?;
        let p_yes = yes.norm_sqr() / v.norm_sqr();
        if rng.gen::<f64>() < p_yes {
            answer_bits.push(1);
            v = yes;
        } else {
            answer_bits.push(0);
            v = StateVector::new(
                v.amplitudes()
                    .iter()
                    .zip(yes.amplitudes())
                    .map(|(a, b)| a - b)
                    .collect(),
            )?;
        }
    }
    Ok(DetectorOutcome {
        detector: detector_for_bits(&answer_bits),
        answer_bits,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCounts {
    pub seed: u64,
    pub shots: u64,
    /// Clicks per detector, indexed by detector number − 1.
    pub counts: Vec<u64>,
}

/// Monte-Carlo clicks; shot `t` draws from [`trial_rng`]`(seed, t)`.
pub fn sample_detectors(
    system: &PropositionSystem,
    state: &StateVector,
    shots: u64,
    seed: u64,
    tol: Tolerance,
) -> Result<SampleCounts> {
    let dim = system.dim();
    let detectors = (0..shots)
        .into_par_iter()
        .map(|t| sample_outcome(system, state, &mut trial_rng(seed, t), tol).map(|o| o.detector))
        .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0u64; dim];
    for d in detectors {
        counts[d - 1] += 1;
    }
    Ok(SampleCounts { seed, shots, counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Naive,
    Sieve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionCountRecord {
    pub state_index: usize,
    pub questions_asked: usize,
    pub strategy: Strategy,
}

/// Question counting never builds matrices, so it accepts `n` up to [`MAX_STATS_N`].
fn check_stats_n(n: usize) -> Result<()> {
    if (1..=MAX_STATS_N).contains(&n) {
        Ok(())
    } else {
        Err(SieveError::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_STATS_N,
        })
    }
}

/// Asks "is the system in state `i`?" for `i` in `question_order` until the
/// answer is yes. The last question is counted even when it is forced by the
/// previous `N − 1` noes, unless `infer_last` is set.
pub fn naive_search(
    n: usize,
    target: usize,
    question_order: &[usize],
    infer_last: bool,
) -> Result<QuestionCountRecord> {
    check_stats_n(n)?;
    let dim = 1usize << n;
    if target == 0 || target > dim {
        return Err(SieveError::OutOfRange {
            what: "target index",
            value: target,
            min: 1,
            max: dim,
        });
    }
    if question_order.len() != dim {
        return Err(SieveError::InvalidPermutation(format!(
            "question order has {} entries, expected {dim}",
            question_order.len()
        )));
    }
    let mut seen = vec![false; dim];
    for &q in question_order {
        if q == 0 || q > dim || std::mem::replace(&mut seen[q - 1], true) {
            return Err(SieveError::InvalidPermutation(format!(
                "bad state {q} in question order"
            )));
        }
    }
    let position = question_order
        .iter()
        .position(|&q| q == target)
        .expect("order is a permutation")
        + 1;
    let asked = if infer_last && position == dim {
        dim - 1
    } else {
        position
    };
    Ok(QuestionCountRecord {
        state_index: target,
        questions_asked: asked,
        strategy: Strategy::Naive,
    })
}

/// Standard-basis sieve search: one question per standard projector, answered
/// from its diagonal. Always `n` questions.
pub fn sieve_search(n: usize, target: usize) -> Result<QuestionCountRecord> {
    check_stats_n(n)?;
    let dim = 1usize << n;
    if target == 0 || target > dim {
        return Err(SieveError::OutOfRange {
            what: "target index",
            value: target,
            min: 1,
            max: dim,
        });
    }
    let answers: Vec<u8> = (1..=n).map(|i| standard_diagonal_entry(n, i, target - 1)).collect();
    debug_assert_eq!(detector_for_bits(&answers), target);
    Ok(QuestionCountRecord {
        state_index: target,
        questions_asked: answers.len(),
        strategy: Strategy::Sieve,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyStats {
    pub strategy: Strategy,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub naive: StrategyStats,
    pub sieve: StrategyStats,
    /// `(N + 1)/2`, or `(N + 1)/2 − 1/N` when the forced question is dropped.
    pub exact_naive_mean: f64,
    pub infer_last: bool,
}

/// Uniform random target and uniform random question order per trial.
/// Results depend only on `(n, trials, seed, infer_last)`, not on thread count.
pub fn question_count_stats(n: usize, trials: u64, seed: u64, infer_last: bool) -> Result<StatsSummary> {
    check_stats_n(n)?;
    if trials == 0 {
        return Err(SieveError::OutOfRange {
            what: "trials",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let dim = 1usize << n;
    let per_trial = |t: u64| -> Result<(usize, usize)> {
        let mut rng = trial_rng(seed, t);
        let target = rng.gen_range(1..=dim);
        let mut order: Vec<usize> = (1..=dim).collect();
        order.shuffle(&mut rng);
        let naive = naive_search(n, target, &order, infer_last)?.questions_asked;
        let sieve = sieve_search(n, target)?.questions_asked;
        Ok((naive, sieve))
    };
    let counts = (0..trials).into_par_iter().map(per_trial).collect::<Result<Vec<_>>>()?;

    let summarize = |strategy, pick: fn(&(usize, usize)) -> usize| {
        let total: u64 = counts.iter().map(|c| pick(c) as u64).sum();
        StrategyStats {
            strategy,
            n,
            trials,
            seed,
            mean: total as f64 / trials as f64,
            max: counts.iter().map(pick).max().unwrap_or(0),
        }
    };
    let exact = (dim as f64 + 1.0) / 2.0 - if infer_last { 1.0 / dim as f64 } else { 0.0 };
    Ok(StatsSummary {
        naive: summarize(Strategy::Naive, |c| c.0),
        sieve: summarize(Strategy::Sieve, |c| c.1),
        exact_naive_mean: exact,
        infer_last,
    })
}
