//! Proposition systems: `n` commuting projectors on a `2^n`-dimensional space
//! that together single out every state of a basis.
//!
//! The standard system is the binary-search sieve: projector `i` answers
//! "particle `i` is in state `+`", splitting every block of the previous step
//! in half. Equivalent systems over the standard basis are exactly the
//! rearrangements of its diagonal columns, so there are `N!` of them.

use serde::{Deserialize, Serialize};

use crate::basis::{check_n, Basis};
use crate::error::{Result, SieveError};
use crate::matrix::{commutator_norm, is_projector, projector_eigenvalue, ComplexMatrix, Tolerance};
use crate::partition::{is_atomic, labelled_partition, meet, meet_all, Partition};
use crate::MAX_FULL_ENUMERATION_N;

/// Ordered projectors on a `2^n`-dimensional space, with `n` the number of projectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemJson", into = "SystemJson")]
pub struct PropositionSystem {
    projectors: Vec<ComplexMatrix>,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    n: usize,
    projectors: Vec<ComplexMatrix>,
}

impl TryFrom<SystemJson> for PropositionSystem {
    type Error = SieveError;
    fn try_from(j: SystemJson) -> Result<Self> {
        if j.n != j.projectors.len() {
            return Err(SieveError::InvalidSystem(format!(
                "n = {} but {} projectors given",
                j.n,
                j.projectors.len()
            )));
        }
        PropositionSystem::new(j.projectors)
    }
}

impl From<PropositionSystem> for SystemJson {
    fn from(s: PropositionSystem) -> Self {
        SystemJson {
            n: s.projectors.len(),
            projectors: s.projectors,
        }
    }
}

impl PropositionSystem {
    /// Structural check only: `n` square matrices of side `2^n`. Use
    /// [`PropositionSystem::certify`] for the projector invariants.
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let n = projectors.len();
        check_n(n)?;
        let dim = 1usize << n;
        for p in &projectors {
            let d = p.square_dim()?;
            if d != dim {
                return Err(SieveError::dims(format!("{dim}x{dim} for n = {n}"), format!("{d}x{d}")));
            }
        }
        Ok(PropositionSystem { projectors })
    }

    /// System whose `i`-th projector is `diag(diagonals[i])` with 0/1 entries.
    pub fn from_diagonals(diagonals: &[Vec<u8>]) -> Result<Self> {
        PropositionSystem::new(
            diagonals
                .iter()
                .map(|d| ComplexMatrix::from_real_diagonal(&d.iter().map(|&b| f64::from(b)).collect::<Vec<_>>()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.projectors.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.projectors.len()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Every projector is Hermitian and idempotent, all pairs commute, and
    /// every trace is `N/2`.
    pub fn certify(&self, tol: Tolerance) -> Result<()> {
        let half = (self.dim() / 2) as f64;
        for (i, p) in self.projectors.iter().enumerate() {
            if !is_projector(p, tol) {
                return Err(SieveError::InvalidSystem(format!("O{} is not a projector", i + 1)));
            }
            let tr = p.trace();
            if (tr.re - half).abs() > tol.eps() || tr.im.abs() > tol.eps() {
                return Err(SieveError::InvalidSystem(format!(
                    "trace of O{} is {tr}, expected {half}",
                    i + 1
                )));
            }
        }
        if let Some((i, j, norm)) = non_commuting_pair(&self.projectors, tol)? {
            return Err(SieveError::InvalidSystem(format!(
                "[O{i}, O{j}] has max entry {norm:e}"
            )));
        }
        Ok(())
    }

    /// Rows of 0/1 diagonal entries, one per projector. Fails unless every
    /// projector is diagonal with entries in `{0, 1}`.
    pub fn diagonal_bits(&self, tol: Tolerance) -> Result<Vec<Vec<u8>>> {
        self.projectors
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let err = SieveError::NotDiagonal { projector: i + 1 };
                if !p.is_diagonal(tol) {
                    return Err(err);
                }
                p.diagonal()
                    .iter()
                    .map(|z| {
                        if z.im.abs() > tol.eps() {
                            None
                        } else if (z.re - 1.0).abs() <= tol.eps() {
                            Some(1)
                        } else if z.re.abs() <= tol.eps() {
                            Some(0)
                        } else {
                            None
                        }
                    })
                    .collect::<Option<Vec<u8>>>()
                    .ok_or(err)
            })
            .collect()
    }
}

/// First pair `(i, j)` (1-based) whose commutator exceeds tolerance.
fn non_commuting_pair(projectors: &[ComplexMatrix], tol: Tolerance) -> Result<Option<(usize, usize, f64)>> {
    for i in 0..projectors.len() {
        for j in i + 1..projectors.len() {
            let norm = commutator_norm(&projectors[i], &projectors[j])?;
            if norm > tol.eps() {
                return Ok(Some((i + 1, j + 1, norm)));
            }
        }
    }
    Ok(None)
}

/// Diagonal of the `i`-th (1-based) standard projector: `2^{i−1}` alternating
/// runs of ones then zeros, each of length `N / 2^i`.
pub fn standard_diagonal(n: usize, i: usize) -> Vec<u8> {
    (0..1usize << n).map(|k| standard_diagonal_entry(n, i, k)).collect()
}

/// Entry `k` (0-based) of [`standard_diagonal`] without building the vector.
pub fn standard_diagonal_entry(n: usize, i: usize, k: usize) -> u8 {
    u8::from((k >> (n - i)) & 1 == 0)
}

pub fn standard_system(n: usize) -> Result<PropositionSystem> {
    check_n(n)?;
    let diagonals: Vec<Vec<u8>> = (1..=n).map(|i| standard_diagonal(n, i)).collect();
    PropositionSystem::from_diagonals(&diagonals)
}

/// Eigenvalues of every projector on basis vector `index` (1-based).
pub fn eigenvalue_bits(projectors: &[ComplexMatrix], basis: &Basis, index: usize, tol: Tolerance) -> Result<Vec<u8>> {
    let v = basis.vector(index)?;
    projectors
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.rows() != v.dim() {
                return Err(SieveError::dims(p.rows(), v.dim()));
            }
            projector_eigenvalue(p, v, tol).ok_or(SieveError::NotEigenvector {
                projector: i + 1,
                vector: index,
            })
        })
        .collect()
}

/// Whether the eigenvalue words of the basis vectors are pairwise distinct.
///
/// Errors, rather than answering `false`, when some basis vector is not an
/// eigenvector of some projector.
pub fn separates(projectors: &[ComplexMatrix], basis: &Basis, tol: Tolerance) -> Result<bool> {
    let mut words = (1..=basis.dim())
        .map(|k| eigenvalue_bits(projectors, basis, k, tol))
        .collect::<Result<Vec<_>>>()?;
    words.sort_unstable();
    Ok(words.windows(2).all(|w| w[0] != w[1]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    NotEigenvector {
        projector: usize,
        vector: usize,
    },
    NonCommuting {
        first: usize,
        second: usize,
        norm: f64,
    },
    Unbalanced {
        projector: usize,
        block_sizes: Vec<usize>,
    },
    NotHalving {
        first: usize,
        second: usize,
        block_sizes: Vec<usize>,
    },
}

/// Outcome of checking co-measurability, the 50:50 split, and pairwise halving.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequirementReport {
    pub eigenbasis: bool,
    pub co_measurable: bool,
    pub balanced: bool,
    pub halving: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl RequirementReport {
    pub fn all_pass(&self) -> bool {
        self.eigenbasis && self.co_measurable && self.balanced && self.halving
    }
}

pub fn verify_requirements(system: &PropositionSystem, basis: &Basis, tol: Tolerance) -> Result<RequirementReport> {
    if system.dim() != basis.dim() {
        return Err(SieveError::dims(system.dim(), basis.dim()));
    }
    let projectors = system.projectors();
    let dim = system.dim();
    let mut counterexamples = Vec::new();

    let mut co_measurable = true;
    for i in 0..projectors.len() {
        for j in i + 1..projectors.len() {
            let norm = commutator_norm(&projectors[i], &projectors[j])?;
            if norm > tol.eps() {
                co_measurable = false;
                counterexamples.push(Counterexample::NonCommuting {
                    first: i + 1,
                    second: j + 1,
                    norm,
                });
            }
        }
    }

    let mut partitions = Vec::with_capacity(projectors.len());
    for (i, p) in projectors.iter().enumerate() {
        match labelled_partition(p, i + 1, basis, tol) {
            Ok(part) => partitions.push(part),
            Err(SieveError::NotEigenvector { projector, vector }) => {
                counterexamples.push(Counterexample::NotEigenvector { projector, vector });
                return Ok(RequirementReport {
                    eigenbasis: false,
                    co_measurable,
                    balanced: false,
                    halving: false,
                    counterexamples,
                });
            }
            Err(e) => return Err(e),
        }
    }

    let mut balanced = true;
    for (i, part) in partitions.iter().enumerate() {
        let sizes = part.block_sizes();
        if sizes != [dim / 2, dim / 2] {
            balanced = false;
            counterexamples.push(Counterexample::Unbalanced {
                projector: i + 1,
                block_sizes: sizes,
            });
        }
    }

    let mut halving = true;
    for i in 0..partitions.len() {
        for j in i + 1..partitions.len() {
            let m = meet(&partitions[i], &partitions[j])?;
            let sizes = m.block_sizes();
            if sizes.len() != 4 || sizes.iter().any(|&s| s != dim / 4) {
                halving = false;
                counterexamples.push(Counterexample::NotHalving {
                    first: i + 1,
                    second: j + 1,
                    block_sizes: sizes,
                });
            }
        }
    }

    Ok(RequirementReport {
        eigenbasis: true,
        co_measurable,
        balanced,
        halving,
        counterexamples,
    })
}

/// Partitions induced by each projector over `basis`.
pub fn system_partitions(system: &PropositionSystem, basis: &Basis, tol: Tolerance) -> Result<Vec<Partition>> {
    system
        .projectors()
        .iter()
        .enumerate()
        .map(|(i, p)| labelled_partition(p, i + 1, basis, tol))
        .collect()
}

/// Bijection on diagonal positions. Column `k` moves to position `target(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemPermutation {
    targets: Vec<usize>,
}

impl SystemPermutation {
    /// From 1-based targets: column `k` moves to `targets[k − 1]`.
    pub fn from_targets(targets: &[usize]) -> Result<Self> {
        let n = targets.len();
        let mut hit = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &t in targets {
            if t == 0 || t > n {
                return Err(SieveError::InvalidPermutation(format!("target {t} outside 1..={n}")));
            }
            if std::mem::replace(&mut hit[t - 1], true) {
                return Err(SieveError::InvalidPermutation(format!("target {t} hit twice")));
            }
            zero_based.push(t - 1);
        }
        Ok(SystemPermutation { targets: zero_based })
    }

    pub(crate) fn from_zero_based(targets: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = targets.clone();
            s.sort_unstable();
            s.iter().copied().eq(0..targets.len())
        });
        SystemPermutation { targets }
    }

    pub fn identity(size: usize) -> Self {
        SystemPermutation {
            targets: (0..size).collect(),
        }
    }

    /// `k ↦ N + 1 − k`.
    pub fn reversal(size: usize) -> Self {
        SystemPermutation {
            targets: (0..size).rev().collect(),
        }
    }

    /// Exchanges two 1-based positions.
    pub fn transposition(size: usize, a: usize, b: usize) -> Result<Self> {
        let mut targets: Vec<usize> = (1..=size).collect();
        if a == 0 || b == 0 || a > size || b > size {
            return Err(SieveError::InvalidPermutation(format!(
                "cannot swap {a} and {b} in 1..={size}"
            )));
        }
        targets.swap(a - 1, b - 1);
        SystemPermutation::from_targets(&targets)
    }

    pub fn random<R: rand::Rng + ?Sized>(size: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut targets: Vec<usize> = (0..size).collect();
        targets.shuffle(rng);
        SystemPermutation { targets }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// 1-based target of each 1-based position.
    pub fn targets(&self) -> Vec<usize> {
        self.targets.iter().map(|t| t + 1).collect()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &SystemPermutation) -> Result<Self> {
        if self.len() != first.len() {
            return Err(SieveError::InvalidPermutation("size mismatch in composition".into()));
        }
        Ok(SystemPermutation {
            targets: first.targets.iter().map(|&t| self.targets[t]).collect(),
        })
    }

    fn apply<T: Clone + Default>(&self, row: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); row.len()];
        for (k, v) in row.iter().enumerate() {
            out[self.targets[k]] = v.clone();
        }
        out
    }
}

/// Moves diagonal column `k` of every projector to position `perm(k)`.
pub fn permute_system(
    system: &PropositionSystem,
    perm: &SystemPermutation,
    tol: Tolerance,
) -> Result<PropositionSystem> {
    if perm.len() != system.dim() {
        return Err(SieveError::dims(system.dim(), perm.len()));
    }
    let diagonals = system.diagonal_bits(tol)?;
    let moved: Vec<Vec<u8>> = diagonals.iter().map(|d| perm.apply(d)).collect();
    PropositionSystem::from_diagonals(&moved)
}

/// One diagonal position read across all projectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnCode {
    /// 1-based.
    pub position: usize,
    pub bits: Vec<u8>,
}

impl ColumnCode {
    /// Bits as a binary number, first projector most significant.
    pub fn value(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
    }
}

pub fn column_codes(system: &PropositionSystem, tol: Tolerance) -> Result<Vec<ColumnCode>> {
    let diagonals = system.diagonal_bits(tol)?;
    Ok((0..system.dim())
        .map(|k| ColumnCode {
            position: k + 1,
            bits: diagonals.iter().map(|d| d[k]).collect(),
        })
        .collect())
}

/// Permutations of `0..size` in lexicographic order, via successor steps.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    current: Option<Vec<usize>>,
}

impl LexPermutations {
    pub fn new(size: usize) -> Self {
        LexPermutations {
            current: Some((0..size).collect()),
        }
    }
}

impl Iterator for LexPermutations {
    type Item = SystemPermutation;

    fn next(&mut self) -> Option<SystemPermutation> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(SystemPermutation::from_zero_based(out))
    }
}

/// Advances to the lexicographic successor; false when `items` was the last.
fn next_permutation(items: &mut [usize]) -> bool {
    let Some(pivot) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let swap_with = items
        .iter()
        .rposition(|&x| x > items[pivot])
        .expect("pivot has a larger successor");
    items.swap(pivot, swap_with);
    items[pivot + 1..].reverse();
    true
}

/// Lazily yields the column rearrangements of the standard system.
#[derive(Debug, Clone)]
pub struct SystemEnumeration {
    diagonals: Vec<Vec<u8>>,
    perms: LexPermutations,
    remaining: Option<usize>,
}

impl SystemEnumeration {
    /// Like [`Iterator::next`] but also returns the permutation applied.
    pub fn next_with_permutation(&mut self) -> Option<(SystemPermutation, PropositionSystem)> {
        if self.remaining == Some(0) {
            return None;
        }
        let perm = self.perms.next()?;
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        let moved: Vec<Vec<u8>> = self.diagonals.iter().map(|d| perm.apply(d)).collect();
        let system = PropositionSystem::from_diagonals(&moved).expect("standard shape is preserved");
        Some((perm, system))
    }
}

impl Iterator for SystemEnumeration {
    type Item = PropositionSystem;
    fn next(&mut self) -> Option<PropositionSystem> {
        self.next_with_permutation().map(|(_, s)| s)
    }
}

/// All `N!` systems equivalent to the standard one, in lexicographic
/// permutation order. Without a `limit` this is refused for `n` above
/// [`MAX_FULL_ENUMERATION_N`] unless `force` is set.
pub fn enumerate_systems(n: usize, limit: Option<usize>, force: bool) -> Result<SystemEnumeration> {
    check_n(n)?;
    if limit.is_none() && n > MAX_FULL_ENUMERATION_N && !force {
        return Err(SieveError::ResourceGuard {
            what: "full enumeration",
            n,
        });
    }
    Ok(SystemEnumeration {
        diagonals: (1..=n).map(|i| standard_diagonal(n, i)).collect(),
        perms: LexPermutations::new(1 << n),
        remaining: limit,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveScan {
    /// Number of 0/1 diagonal projectors on the `2^n` space.
    pub candidates: usize,
    pub subsets_checked: usize,
    pub separating_subsets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedProjector {
    /// 1-based index of the omitted standard projector.
    pub dropped: usize,
    pub largest_block: usize,
    pub atomic: bool,
}

/// Evidence that fewer than `n` binary propositions cannot separate `2^n` states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub n: usize,
    pub states: usize,
    /// Upper bound `2^(n−1)` on the classes `n − 1` binary propositions can distinguish.
    pub max_classes_with_fewer: usize,
    pub bound_rules_out_fewer: bool,
    /// Every subset of `n − 1` diagonal 0/1 projectors; present for small `n`.
    pub exhaustive: Option<ExhaustiveScan>,
    /// Meets of the standard system with one projector left out.
    pub dropped_standard: Option<Vec<DroppedProjector>>,
}

impl MinimalityReport {
    pub fn holds(&self) -> bool {
        self.bound_rules_out_fewer
            && self.exhaustive.as_ref().is_none_or(|e| e.separating_subsets == 0)
            && self
                .dropped_standard
                .as_ref()
                .is_none_or(|d| d.iter().all(|x| !x.atomic && x.largest_block >= 2))
    }
}

pub const MAX_EXHAUSTIVE_MINIMALITY_N: usize = 2;
pub const MAX_DROPPED_CHECK_N: usize = 4;

pub fn minimality_certificate(n: usize, tol: Tolerance) -> Result<MinimalityReport> {
    check_n(n)?;
    let states = 1usize << n;
    let max_classes = 1usize << (n - 1);
    let basis = crate::basis::standard_basis(n)?;

    let exhaustive = if n <= MAX_EXHAUSTIVE_MINIMALITY_N {
        Some(scan_diagonal_subsets(n, &basis, tol)?)
    } else {
        None
    };

    let dropped_standard = if n <= MAX_DROPPED_CHECK_N {
        let parts = system_partitions(&standard_system(n)?, &basis, tol)?;
        Some(
            (0..n)
                .map(|skip| {
                    let kept = parts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| p);
                    let m = meet_all(kept)?.unwrap_or_else(|| Partition::trivial(states));
                    Ok(DroppedProjector {
                        dropped: skip + 1,
                        largest_block: m.largest_block(),
                        atomic: is_atomic(&m),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };

    Ok(MinimalityReport {
        n,
        states,
        max_classes_with_fewer: max_classes,
        bound_rules_out_fewer: max_classes < states,
        exhaustive,
        dropped_standard,
    })
}

/// Tries every set of `n − 1` distinct 0/1 diagonal projectors.
fn scan_diagonal_subsets(n: usize, basis: &Basis, tol: Tolerance) -> Result<ExhaustiveScan> {
    let dim = 1usize << n;
    let candidates = 1usize << dim;
    let diag = |mask: usize| {
        let d: Vec<f64> = (0..dim).map(|k| ((mask >> k) & 1) as f64).collect();
        ComplexMatrix::from_real_diagonal(&d)
    };
    let k = n - 1;
    let mut subsets_checked = 0;
    let mut separating_subsets = 0;
    let mut chosen: Vec<usize> = (0..k).collect();
    loop {
        let projectors: Vec<ComplexMatrix> = chosen.iter().map(|&m| diag(m)).collect();
        subsets_checked += 1;
        if separates(&projectors, basis, tol)? {
            separating_subsets += 1;
        }
        // next k-combination of 0..candidates
        let Some(i) = (0..k).rev().find(|&i| chosen[i] < candidates - k + i) else {
            break;
        };
        chosen[i] += 1;
        for j in i + 1..k {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
    Ok(ExhaustiveScan {
        candidates,
        subsets_checked,
        separating_subsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{ghz_basis, standard_basis, transformed_system};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn bits(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn standard_three_particle_diagonals() {
        let s = standard_system(3).unwrap();
        let d = s.diagonal_bits(tol()).unwrap();
        assert_eq!(d, vec![bits("11110000"), bits("11001100"), bits("10101010")]);
    }

    #[test]
    fn standard_small_cases() {
        assert_eq!(
            standard_system(1).unwrap().diagonal_bits(tol()).unwrap(),
            vec![bits("10")]
        );
        assert_eq!(
            standard_system(2).unwrap().diagonal_bits(tol()).unwrap(),
            vec![bits("1100"), bits("1010")]
        );
        assert!(standard_system(0).is_err());
        assert!(standard_system(11).is_err());
    }

    #[test]
    fn two_particle_system_separates_by_brute_force() {
        // Independent check: the 4 length-2 words read down the columns are distinct.
        let d = standard_system(2).unwrap().diagonal_bits(tol()).unwrap();
        let mut words: Vec<(u8, u8)> = (0..4).map(|k| (d[0][k], d[1][k])).collect();
        words.sort();
        words.dedup();
        assert_eq!(words.len(), 4);
    }

    #[test]
    fn standard_system_is_certified() {
        for n in 1..=4 {
            standard_system(n).unwrap().certify(tol()).unwrap();
        }
    }

    #[test]
    fn requirements_hold_for_standard_and_ghz() {
        let r = verify_requirements(&standard_system(3).unwrap(), &standard_basis(3).unwrap(), tol()).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let (gb, u) = ghz_basis();
        let g = transformed_system(&u.matrix, &standard_system(3).unwrap(), tol()).unwrap();
        assert!(verify_requirements(&g, &gb, tol()).unwrap().all_pass());
    }

    #[test]
    fn duplicated_projector_fails_halving() {
        let o1 = standard_system(2).unwrap().projectors()[0].clone();
        let dup = PropositionSystem::new(vec![o1.clone(), o1]).unwrap();
        let r = verify_requirements(&dup, &standard_basis(2).unwrap(), tol()).unwrap();
        assert!(r.co_measurable && r.balanced && !r.halving);
        assert_eq!(
            r.counterexamples,
            vec![Counterexample::NotHalving {
                first: 1,
                second: 2,
                block_sizes: vec![2, 2]
            }]
        );
    }

    #[test]
    fn wrong_basis_is_reported_not_raised() {
        let (gb, _) = ghz_basis();
        let r = verify_requirements(&standard_system(3).unwrap(), &gb, tol()).unwrap();
        assert!(!r.eigenbasis && !r.all_pass());
        assert!(verify_requirements(&standard_system(2).unwrap(), &gb, tol()).is_err());
    }

    #[test]
    fn swap_first_two_columns() {
        let s = standard_system(3).unwrap();
        let p = SystemPermutation::transposition(8, 1, 2).unwrap();
        let d = permute_system(&s, &p, tol()).unwrap().diagonal_bits(tol()).unwrap();
        assert_eq!(d, vec![bits("11110000"), bits("11001100"), bits("01101010")]);
    }

    #[test]
    fn reversal_is_last_table_entry() {
        let s = standard_system(3).unwrap();
        let d = permute_system(&s, &SystemPermutation::reversal(8), tol())
            .unwrap()
            .diagonal_bits(tol())
            .unwrap();
        assert_eq!(d, vec![bits("00001111"), bits("00110011"), bits("01010101")]);
    }

    #[test]
    fn identity_permutation_fixes_system() {
        let s = standard_system(3).unwrap();
        assert_eq!(permute_system(&s, &SystemPermutation::identity(8), tol()).unwrap(), s);
    }

    #[test]
    fn permute_rejects_bad_input() {
        let s = standard_system(3).unwrap();
        assert!(permute_system(&s, &SystemPermutation::identity(4), tol()).is_err());
        let (_, u) = ghz_basis();
        let g = transformed_system(&u.matrix, &s, tol()).unwrap();
        assert_eq!(
            permute_system(&g, &SystemPermutation::identity(8), tol()),
            Err(SieveError::NotDiagonal { projector: 3 })
        );
        assert!(SystemPermutation::from_targets(&[1, 1, 2]).is_err());
        assert!(SystemPermutation::from_targets(&[0, 1]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_systems(1, None, false).unwrap().count(), 2);
        assert_eq!(enumerate_systems(2, None, false).unwrap().count(), 24);
        assert_eq!(enumerate_systems(4, Some(5), false).unwrap().count(), 5);
        assert!(matches!(
            enumerate_systems(4, None, false),
            Err(SieveError::ResourceGuard { n: 4, .. })
        ));
    }

    #[test]
    fn enumeration_of_one_particle() {
        let all: Vec<_> = enumerate_systems(1, None, false)
            .unwrap()
            .map(|s| s.diagonal_bits(tol()).unwrap())
            .collect();
        assert_eq!(all, vec![vec![bits("10")], vec![bits("01")]]);
    }

    #[test]
    fn enumeration_starts_at_standard_in_lex_order() {
        let mut e = enumerate_systems(2, None, false).unwrap();
        let (p0, s0) = e.next_with_permutation().unwrap();
        assert_eq!(p0, SystemPermutation::identity(4));
        assert_eq!(s0, standard_system(2).unwrap());
        let (p1, _) = e.next_with_permutation().unwrap();
        assert_eq!(p1.targets(), vec![1, 2, 4, 3]);
        let last = e.last().unwrap();
        assert_eq!(
            last,
            permute_system(&standard_system(2).unwrap(), &SystemPermutation::reversal(4), tol()).unwrap()
        );
    }

    #[test]
    fn column_codes_of_standard_three() {
        let codes = column_codes(&standard_system(3).unwrap(), tol()).unwrap();
        assert_eq!(codes[0].bits, vec![1, 1, 1]);
        assert_eq!(codes[0].value(), 7);
        assert_eq!(codes[7].bits, vec![0, 0, 0]);
        let values: Vec<usize> = codes.iter().map(ColumnCode::value).collect();
        assert_eq!(values, (0..8).rev().collect::<Vec<_>>());
    }

    #[test]
    fn column_codes_of_cereceda_preimage() {
        let s = PropositionSystem::from_diagonals(&[bits("01101001"), bits("01100110"), bits("01011010")]).unwrap();
        let codes = column_codes(&s, tol()).unwrap();
        assert_eq!(codes[1].position, 2);
        assert_eq!(codes[1].bits, vec![1, 1, 1]);
    }

    #[test]
    fn separation() {
        let b3 = standard_basis(3).unwrap();
        assert!(separates(standard_system(3).unwrap().projectors(), &b3, tol()).unwrap());
        let b2 = standard_basis(2).unwrap();
        let o1 = standard_system(2).unwrap().projectors()[0].clone();
        assert!(!separates(&[o1], &b2, tol()).unwrap());
        let (gb, u) = ghz_basis();
        let g = transformed_system(&u.matrix, &standard_system(3).unwrap(), tol()).unwrap();
        assert!(separates(g.projectors(), &gb, tol()).unwrap());
        assert!(matches!(
            separates(standard_system(3).unwrap().projectors(), &gb, tol()),
            Err(SieveError::NotEigenvector { .. })
        ));
    }

    #[test]
    fn minimality_small_cases() {
        let m1 = minimality_certificate(1, tol()).unwrap();
        assert_eq!(m1.max_classes_with_fewer, 1);
        assert_eq!(m1.exhaustive.as_ref().unwrap().subsets_checked, 1);
        assert!(m1.holds());

        let m2 = minimality_certificate(2, tol()).unwrap();
        let scan = m2.exhaustive.as_ref().unwrap();
        assert_eq!(
            (scan.candidates, scan.subsets_checked, scan.separating_subsets),
            (16, 16, 0)
        );
        assert!(m2.holds());

        let m3 = minimality_certificate(3, tol()).unwrap();
        assert!(m3.exhaustive.is_none());
        assert_eq!((m3.max_classes_with_fewer, m3.states), (4, 8));
        assert!(m3.holds());
    }

    #[test]
    fn system_json_shape() {
        let s = standard_system(1).unwrap();
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["n"], 1);
        assert_eq!(j["projectors"][0]["rows"], 2);
        let back: PropositionSystem = serde_json::from_value(j.clone()).unwrap();
        assert_eq!(back, s);
        let mut bad = j;
        bad["n"] = 2.into();
        assert!(serde_json::from_value::<PropositionSystem>(bad).is_err());
    }
}
