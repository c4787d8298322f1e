//! Named orthonormal bases and the unitaries that produce them from the
//! standard basis.
//!
//! Every catalog unitary `U` carries its basis in its columns, `|b_i⟩ = U|e_i⟩`.
//! Hard-coded entries are integer numerators over square-root denominators;
//! each radical is evaluated once.
//!
//! Two of the transcribed bases (W and equal-weight) list their kets in a
//! weight-ordered sequence `+++, ++−, +−+, −++, +−−, −+−, −−+, −−−`. The
//! catalog takes the matrices as authoritative, so their columns are what the
//! vectors below hold.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SieveError};
use crate::matrix::{conjugate, unitarity_deviation, ComplexMatrix, StateVector, Tolerance};
use crate::system::PropositionSystem;
use crate::MAX_N;

/// Ordered orthonormal basis with display labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BasisJson", into = "BasisJson")]
pub struct Basis {
    labels: Vec<String>,
    vectors: Vec<StateVector>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    labels: Vec<String>,
    vectors: Vec<StateVector>,
}

impl TryFrom<BasisJson> for Basis {
    type Error = SieveError;
    fn try_from(j: BasisJson) -> Result<Self> {
        Basis::new(j.vectors, j.labels, Tolerance::default())
    }
}

impl From<Basis> for BasisJson {
    fn from(b: Basis) -> Self {
        BasisJson {
            labels: b.labels,
            vectors: b.vectors,
        }
    }
}

impl Basis {
    /// Checks that the vectors form an orthonormal basis of their space.
    pub fn new(vectors: Vec<StateVector>, labels: Vec<String>, tol: Tolerance) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(SieveError::InvalidBasis("no vectors".into()));
        }
        if labels.len() != dim {
            return Err(SieveError::InvalidBasis(format!(
                "{dim} vectors but {} labels",
                labels.len()
            )));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(SieveError::dims(dim, v.dim()));
        }
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                let g = a.inner(b);
                if (g - Complex64::new(expected, 0.0)).norm() > tol.eps() {
                    return Err(SieveError::InvalidBasis(format!(
                        "<b{}|b{}> = {g}, expected {expected}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Basis { labels, vectors })
    }

    /// Basis formed by the columns of `u`.
    pub fn from_unitary(u: &ComplexMatrix, labels: Vec<String>, tol: Tolerance) -> Result<Self> {
        let dim = u.square_dim()?;
        Basis::new((0..dim).map(|j| u.column(j)).collect(), labels, tol)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Vector by 1-based index.
    pub fn vector(&self, index: usize) -> Result<&StateVector> {
        index
            .checked_sub(1)
            .and_then(|i| self.vectors.get(i))
            .ok_or(SieveError::OutOfRange {
                what: "basis index",
                value: index,
                min: 1,
                max: self.dim(),
            })
    }

    /// Matrix with the basis vectors as columns.
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.vectors).expect("basis vectors share a dimension")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitaryName {
    Ghz,
    W,
    /// The equal-weight transform. Its source printing reuses the W symbol;
    /// the two are distinct matrices.
    EqualWeight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedUnitary {
    pub name: UnitaryName,
    pub matrix: ComplexMatrix,
}

impl NamedUnitary {
    fn certified(name: UnitaryName, matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let deviation = unitarity_deviation(&matrix)?;
        if deviation > tol.eps() {
            return Err(SieveError::NotUnitary { deviation });
        }
        Ok(NamedUnitary { name, matrix })
    }
}

/// CLI-facing basis key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKey {
    Standard,
    Ghz,
    W,
    EqualWeight,
}

impl BasisKey {
    pub const ALL: [BasisKey; 4] = [BasisKey::Standard, BasisKey::Ghz, BasisKey::W, BasisKey::EqualWeight];

    pub fn as_str(self) -> &'static str {
        match self {
            BasisKey::Standard => "standard",
            BasisKey::Ghz => "ghz",
            BasisKey::W => "w",
            BasisKey::EqualWeight => "equal_weight",
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisKey {
    type Err = SieveError;
    fn from_str(s: &str) -> Result<Self> {
        BasisKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| SieveError::InvalidBasis(format!("unknown basis key {s:?}")))
    }
}

/// Looks up a catalog basis. Only the standard basis exists for every `n`; the
/// others are three-particle bases.
pub fn catalog(key: BasisKey, n: usize) -> Result<(Basis, Option<NamedUnitary>)> {
    if key != BasisKey::Standard && n != 3 {
        return Err(SieveError::OutOfRange {
            what: "n for a three-particle basis",
            value: n,
            min: 3,
            max: 3,
        });
    }
    Ok(match key {
        BasisKey::Standard => (standard_basis(n)?, None),
        BasisKey::Ghz => {
            let (b, u) = ghz_basis();
            (b, Some(u))
        }
        BasisKey::W => {
            let (b, u) = w_basis();
            (b, Some(u))
        }
        BasisKey::EqualWeight => {
            let (b, u) = equal_weight_basis();
            (b, Some(u))
        }
    })
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(SieveError::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_N,
        })
    }
}

/// `|+…+⟩`-style label of the 0-based standard index `k`: bit 1 is `−`.
pub fn spin_label(n: usize, k: usize) -> String {
    let spins: String = (0..n)
        .map(|i| if (k >> (n - 1 - i)) & 1 == 0 { '+' } else { '-' })
        .collect();
    format!("|{spins}⟩")
}

/// Canonical unit vectors, `|++…+⟩` first and `|−−…−⟩` last.
pub fn standard_basis(n: usize) -> Result<Basis> {
    check_n(n)?;
    let dim = 1 << n;
    Ok(Basis {
        labels: (0..dim).map(|k| spin_label(n, k)).collect(),
        vectors: (0..dim).map(|k| StateVector::unit(dim, k)).collect(),
    })
}

fn labels(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}{i}")).collect()
}

fn scaled_integer_matrix(rows: &[[i32; 8]; 8], scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(8, 8, |r, c| Complex64::new(f64::from(rows[r][c]) * scale, 0.0))
}

const GHZ_NUMERATORS: [[i32; 8]; 8] = [
    [1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 1, -1],
    [0, 0, 0, 0, 1, -1, 0, 0],
    [0, 0, 1, -1, 0, 0, 0, 0],
    [1, -1, 0, 0, 0, 0, 0, 0],
];

pub fn ghz_unitary() -> ComplexMatrix {
    scaled_integer_matrix(&GHZ_NUMERATORS, 1.0 / 2f64.sqrt())
}

/// The eight three-particle GHZ states `ψ1..ψ8` and `U^GHZ`.
pub fn ghz_basis() -> (Basis, NamedUnitary) {
    let u = NamedUnitary::certified(UnitaryName::Ghz, ghz_unitary(), Tolerance::default())
        .expect("transcribed GHZ matrix is unitary");
    let basis =
        Basis::from_unitary(&u.matrix, labels("ψ", 8), Tolerance::default()).expect("GHZ columns are orthonormal");
    (basis, u)
}

/// `(numerator, radicand)`; the entry is `numerator / sqrt(radicand)`.
type Surd = (i32, u32);

const W_SURDS: [[Surd; 8]; 8] = {
    const O: Surd = (0, 1);
    const I: Surd = (1, 1);
    [
        [I, O, O, O, O, O, O, O],
        [O, (1, 3), (-1, 2), (-1, 6), O, O, O, O],
        [O, (1, 3), O, (2, 6), O, O, O, O],
        [O, (1, 3), (1, 2), (-1, 6), O, O, O, O],
        [O, O, O, O, (1, 3), (-1, 2), (-1, 6), O],
        [O, O, O, O, (1, 3), O, (2, 6), O],
        [O, O, O, O, (1, 3), (1, 2), (-1, 6), O],
        [O, O, O, O, O, O, O, I],
    ]
};

pub fn w_unitary() -> ComplexMatrix {
    let radicals = [2u32, 3, 6].map(|r| (r, 1.0 / f64::from(r).sqrt()));
    let inv_sqrt = |rad: u32| radicals.iter().find(|(r, _)| *r == rad).map_or(1.0, |&(_, v)| v);
    ComplexMatrix::from_fn(8, 8, |r, c| {
        let (num, rad) = W_SURDS[r][c];
        Complex64::new(f64::from(num) * inv_sqrt(rad), 0.0)
    })
}

/// W-family basis `φ1..φ8` (columns of `U^W`; `φ2` is the W state).
pub fn w_basis() -> (Basis, NamedUnitary) {
    let u = NamedUnitary::certified(UnitaryName::W, w_unitary(), Tolerance::default())
        .expect("transcribed W matrix is unitary");
    let basis =
        Basis::from_unitary(&u.matrix, labels("φ", 8), Tolerance::default()).expect("W columns are orthonormal");
    (basis, u)
}

const EQUAL_WEIGHT_NUMERATORS: [[i32; 8]; 8] = [
    [1, 1, 1, 1, 2, 0, 0, 0],
    [1, 1, 1, -1, -1, 1, -1, -1],
    [1, 1, -1, 1, -1, -1, 1, -1],
    [1, 1, -1, -1, 0, 0, 0, 2],
    [1, -1, 1, 1, -1, -1, -1, 1],
    [1, -1, 1, -1, 0, 0, 2, 0],
    [1, -1, -1, 1, 0, 2, 0, 0],
    [1, -1, -1, -1, 1, -1, -1, -1],
];

pub fn equal_weight_unitary() -> ComplexMatrix {
    scaled_integer_matrix(&EQUAL_WEIGHT_NUMERATORS, 1.0 / 8f64.sqrt())
}

/// Basis `ρ1..ρ8` from the columns of the equal-weight transform. The first
/// four columns weight all standard states equally.
pub fn equal_weight_basis() -> (Basis, NamedUnitary) {
    let u = NamedUnitary::certified(UnitaryName::EqualWeight, equal_weight_unitary(), Tolerance::default())
        .expect("transcribed equal-weight matrix is unitary");
    let basis = Basis::from_unitary(&u.matrix, labels("ρ", 8), Tolerance::default())
        .expect("equal-weight columns are orthonormal");
    (basis, u)
}

/// GHZ-type basis for any `n`: columns `2j, 2j+1` are `(|e_j⟩ ± |e_{N−1−j}⟩)/√2`.
/// At `n = 3` this coincides with [`ghz_unitary`].
pub fn ghz_family_unitary(n: usize) -> Result<ComplexMatrix> {
    check_n(n)?;
    let dim = 1usize << n;
    let h = 1.0 / 2f64.sqrt();
    Ok(ComplexMatrix::from_fn(dim, dim, |r, c| {
        let j = c / 2;
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        let v = if r == j {
            h
        } else if r == dim - 1 - j {
            sign * h
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    }))
}

pub fn ghz_family_basis(n: usize) -> Result<Basis> {
    let u = ghz_family_unitary(n)?;
    Basis::from_unitary(&u, labels("ψ", 1 << n), Tolerance::default())
}

/// Conjugates every projector by `u` and certifies the result.
pub fn transformed_system(u: &ComplexMatrix, system: &PropositionSystem, tol: Tolerance) -> Result<PropositionSystem> {
    let projectors = system
        .projectors()
        .iter()
        .map(|p| conjugate(u, p, tol))
        .collect::<Result<Vec<_>>>()?;
    let out = PropositionSystem::new(projectors)?;
    out.certify(tol)?;
    Ok(out)
}

/// Code words printed next to `ψ1..ψ8` in the GHZ listing.
pub const PRINTED_GHZ_CODES: [&str; 8] = ["111", "110", "101", "011", "100", "010", "001", "000"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhzCodeEntry {
    pub state: usize,
    pub computed: String,
    pub printed: String,
    pub agrees: bool,
}

/// Eigenvalue code of each GHZ state under the conjugated standard system,
/// alongside the printed code word.
pub fn ghz_code_report(tol: Tolerance) -> Result<Vec<GhzCodeEntry>> {
    let (basis, u) = ghz_basis();
    let system = transformed_system(&u.matrix, &crate::system::standard_system(3)?, tol)?;
    basis
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let bits = crate::system::eigenvalue_bits(system.projectors(), &basis, i + 1, tol)?;
            let computed: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
            let printed = PRINTED_GHZ_CODES[i].to_string();
            Ok(GhzCodeEntry {
                state: i + 1,
                agrees: computed == printed,
                computed,
                printed,
            })
        })
        .collect()
}
