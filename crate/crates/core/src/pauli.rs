//! Single-site Pauli embeddings and propositions of the form `½(1 + σ_a ⊗ σ_b ⊗ …)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{check_n, ghz_unitary};
use crate::error::{Result, SieveError};
use crate::matrix::{conjugate, tensor, ComplexMatrix, Tolerance, ONE, ZERO};
use crate::system::PropositionSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn as_char(self) -> char {
        match self {
            PauliAxis::X => 'x',
            PauliAxis::Y => 'y',
            PauliAxis::Z => 'z',
        }
    }
}

impl TryFrom<char> for PauliAxis {
    type Error = SieveError;
    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_lowercase() {
            'x' => Ok(PauliAxis::X),
            'y' => Ok(PauliAxis::Y),
            'z' => Ok(PauliAxis::Z),
            other => Err(SieveError::InvalidAxes(format!("unknown axis {other:?}"))),
        }
    }
}

/// One axis per particle site. Parses from and prints as strings like `"xyy"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AxisAssignment(Vec<PauliAxis>);

impl AxisAssignment {
    pub fn new(axes: Vec<PauliAxis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(SieveError::InvalidAxes("at least one site is required".into()));
        }
        check_n(axes.len())?;
        Ok(AxisAssignment(axes))
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for AxisAssignment {
    type Err = SieveError;
    fn from_str(s: &str) -> Result<Self> {
        AxisAssignment::new(s.chars().map(PauliAxis::try_from).collect::<Result<_>>()?)
    }
}

impl TryFrom<String> for AxisAssignment {
    type Error = SieveError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AxisAssignment> for String {
    fn from(a: AxisAssignment) -> String {
        a.to_string()
    }
}

impl fmt::Display for AxisAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|a| write!(f, "{}", a.as_char()))
    }
}

pub fn pauli(axis: PauliAxis) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let data = match axis {
        PauliAxis::X => vec![ZERO, ONE, ONE, ZERO],
        PauliAxis::Y => vec![ZERO, -i, i, ZERO],
        PauliAxis::Z => vec![ONE, ZERO, ZERO, -ONE],
    };
    ComplexMatrix::new(2, 2, data).expect("2x2")
}

/// `1_{2^{site−1}} ⊗ σ_axis ⊗ 1_{2^{n−site}}` for a 1-based `site`.
pub fn embed(axis: PauliAxis, site: usize, n: usize) -> Result<ComplexMatrix> {
    check_n(n)?;
    if site == 0 || site > n {
        return Err(SieveError::OutOfRange {
            what: "site",
            value: site,
            min: 1,
            max: n,
        });
    }
    let left = ComplexMatrix::identity(1 << (site - 1));
    let right = ComplexMatrix::identity(1 << (n - site));
    tensor(&tensor(&left, &pauli(axis))?, &right)
}

/// `½(1 + Π_i σ_{i, axes[i]})`.
pub fn sigma_product_proposition(assignment: &AxisAssignment) -> Result<ComplexMatrix> {
    let n = assignment.len();
    let dim = 1usize << n;
    let mut product = ComplexMatrix::identity(dim);
    for (i, &axis) in assignment.axes().iter().enumerate() {
        product = &product * &embed(axis, i + 1, n)?;
    }
    Ok((&ComplexMatrix::identity(dim) + &product).scale(Complex64::new(0.5, 0.0)))
}

/// Diagonal preimages `D_i` of the Cereceda propositions, `T_i = U^GHZ D_i U^GHZ†`.
pub const CERECEDA_PREIMAGES: [[u8; 8]; 3] = [
    [0, 1, 1, 0, 1, 0, 0, 1],
    [0, 1, 1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 1, 0, 1, 0],
];

pub const CERECEDA_AXES: [&str; 3] = ["xyy", "yxy", "yyx"];

/// `T1 = ½(1+σ1x σ2y σ3y)`, `T2 = ½(1+σ1y σ2x σ3y)`, `T3 = ½(1+σ1y σ2y σ3x)`.
pub fn cereceda_system() -> PropositionSystem {
    let projectors = CERECEDA_AXES
        .iter()
        .map(|a| sigma_product_proposition(&a.parse().expect("valid axes")).expect("n = 3"))
        .collect();
    PropositionSystem::new(projectors).expect("three 8x8 projectors")
}

/// `D_i` conjugated by `U^GHZ`; equals [`cereceda_system`].
pub fn cereceda_from_preimages(tol: Tolerance) -> Result<PropositionSystem> {
    let u = ghz_unitary();
    let projectors = CERECEDA_PREIMAGES
        .iter()
        .map(|d| {
            let diag: Vec<f64> = d.iter().map(|&b| f64::from(b)).collect();
            conjugate(&u, &ComplexMatrix::from_real_diagonal(&diag), tol)
        })
        .collect::<Result<_>>()?;
    PropositionSystem::new(projectors)
}

/// `n`-particle GHZ-type sieve: `½(1 + σ_{1z} σ_{(k+1)z})` for `k = 1..n−1`
/// (particle `k+1` has the same `z` spin as particle 1), then
/// `½(1 + σ_{1x} ⋯ σ_{nx})` (even number of spins down along `x`).
pub fn ghz_parity_system(n: usize) -> Result<PropositionSystem> {
    check_n(n)?;
    let dim = 1usize << n;
    let mut projectors = Vec::with_capacity(n);
    for k in 2..=n {
        let zz = &embed(PauliAxis::Z, 1, n)? * &embed(PauliAxis::Z, k, n)?;
        projectors.push((&ComplexMatrix::identity(dim) + &zz).scale(Complex64::new(0.5, 0.0)));
    }
    projectors.push(sigma_product_proposition(&AxisAssignment::new(vec![PauliAxis::X; n])?)?);
    PropositionSystem::new(projectors)
}
