//! Partitions of basis indices induced by projectors, and their meet.
//!
//! Indices are 1-based throughout this module: a partition of a basis with
//! `N` elements covers `{1, …, N}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::error::{Result, SieveError};
use crate::matrix::{projector_eigenvalue, ComplexMatrix, Tolerance};

/// Canonical form: blocks ascending internally and sorted by their smallest
/// element, so derived equality is partition equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition {
    ground: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    ground: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<PartitionJson> for Partition {
    type Error = SieveError;
    fn try_from(j: PartitionJson) -> Result<Self> {
        Partition::new(j.ground, j.blocks)
    }
}

impl From<Partition> for PartitionJson {
    fn from(p: Partition) -> Self {
        PartitionJson {
            ground: p.ground,
            blocks: p.blocks,
        }
    }
}

impl Partition {
    /// Validates and canonicalizes `blocks` as a partition of `{1..ground}`.
    pub fn new(ground: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(SieveError::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i == 0 || i > ground {
                    return Err(SieveError::OutOfRange {
                        what: "partition element",
                        value: i,
                        min: 1,
                        max: ground,
                    });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(SieveError::InvalidPartition(format!("element {i} appears twice")));
                }
            }
        }
        if let Some(missing) = (1..=ground).find(|&i| !seen[i]) {
            return Err(SieveError::InvalidPartition(format!(
                "element {missing} is not covered"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { ground, blocks })
    }

    /// Partition of `{1..ground}` into one block.
    pub fn trivial(ground: usize) -> Self {
        Partition {
            ground,
            blocks: vec![(1..=ground).collect()],
        }
    }

    /// Groups elements by key; `keys[i]` belongs to element `i + 1`.
    pub fn from_keys<K: Ord>(keys: &[K]) -> Self {
        let mut groups: BTreeMap<&K, Vec<usize>> = BTreeMap::new();
        for (i, k) in keys.iter().enumerate() {
            groups.entry(k).or_default().push(i + 1);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition {
            ground: keys.len(),
            blocks,
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.ground != coarser.ground {
            return false;
        }
        let owner = coarser.block_of();
        self.blocks.iter().all(|b| b.iter().all(|&i| owner[i] == owner[b[0]]))
    }

    /// Block number (0-based) of each element, indexed by element.
    fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.ground + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                owner[i] = k;
            }
        }
        owner
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

/// Splits the basis into eigenvalue-1 and eigenvalue-0 indices. A projector
/// with a single eigenvalue on the basis yields one block.
pub fn partition_from_projector(p: &ComplexMatrix, basis: &Basis, tol: Tolerance) -> Result<Partition> {
    labelled_partition(p, 1, basis, tol)
}

/// As [`partition_from_projector`], reporting failures against projector `number`.
pub(crate) fn labelled_partition(p: &ComplexMatrix, number: usize, basis: &Basis, tol: Tolerance) -> Result<Partition> {
    let dim = p.square_dim()?;
    if dim != basis.dim() {
        return Err(SieveError::dims(basis.dim(), dim));
    }
    let bits = basis
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            projector_eigenvalue(p, v, tol).ok_or(SieveError::NotEigenvector {
                projector: number,
                vector: i + 1,
            })
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(Partition::from_keys(&bits))
}

/// Common refinement: all non-empty pairwise block intersections.
pub fn meet(a: &Partition, b: &Partition) -> Result<Partition> {
    if a.ground != b.ground {
        return Err(SieveError::dims(a.ground, b.ground));
    }
    let (oa, ob) = (a.block_of(), b.block_of());
    let keys: Vec<(usize, usize)> = (1..=a.ground).map(|i| (oa[i], ob[i])).collect();
    Ok(Partition::from_keys(&keys))
}

/// Meet of a non-empty list of partitions.
pub fn meet_all<'a>(parts: impl IntoIterator<Item = &'a Partition>) -> Result<Option<Partition>> {
    let mut iter = parts.into_iter();
    let Some(first) = iter.next() else {
        return Ok(None);
    };
    iter.try_fold(first.clone(), |acc, p| meet(&acc, p)).map(Some)
}

pub fn is_atomic(p: &Partition) -> bool {
    p.blocks.iter().all(|b| b.len() == 1)
}
