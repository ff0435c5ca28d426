//! Δ matrices, complex and modular Cartan matrices, and decomposition
//! matrices, all labeled by characters and composed by label.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chartab::{CharTabError, CharacterTable};
use crate::group::PairSubgroup;
use crate::matrix::{IntMatrix, LabeledMatrix, MatrixError};

#[derive(Debug, Error)]
pub enum CartanError {
    #[error(transparent)]
    CharTab(#[from] CharTabError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("delta matrices carry different label lists")]
    DeltaLabelMismatch,
    #[error("multiplicity vector length {0} does not match pool size {1}")]
    MultiplicityLength(usize, usize),
    #[error("expected a complex Cartan matrix, got {0}")]
    NotComplex(String),
    #[error("decomposition matrix label {0} is missing from the Cartan matrix")]
    UnmatchedLabel(String),
    #[error("decomposition matrix invalid: {0}")]
    InvalidDecomposition(String),
    #[error("dimension sum rule violated: got {0}, expected {1}")]
    DimensionSumRule(BigInt, BigInt),
}

/// Δ(L): entry (chi, eta) is the average of chi ⊗ eta-bar over L.
#[derive(Debug, Clone)]
pub struct DeltaMatrix {
    pub labeled: LabeledMatrix,
    pub subgroup_order: usize,
}

impl DeltaMatrix {
    pub fn is_identity(&self) -> bool {
        self.labeled.matrix.is_identity()
    }
}

/// Assemble Δ(L) for a character table and a subgroup of G×G. Uses the
/// factored H1 × H2 evaluation automatically when the subgroup carries that
/// structure. The dimension sum rule
/// sum over (chi, eta) of chi(1) eta(1) Δ_{chi,eta} = |G|^2 / |L|
/// is checked before returning.
pub fn delta_matrix(
    table: &CharacterTable,
    subgroup: &PairSubgroup,
) -> Result<DeltaMatrix, CartanError> {
    let r = table.rows().len();
    let mut m = IntMatrix::zero(r, r);
    for chi in 0..r {
        for eta in 0..r {
            m.set(chi, eta, table.subgroup_average(chi, eta, subgroup)?);
        }
    }
    let mut weighted = BigInt::zero();
    for chi in 0..r {
        for eta in 0..r {
            weighted += table.rows()[chi].degree() * table.rows()[eta].degree() * m.at(chi, eta);
        }
    }
    let order = BigInt::from(table.group().order());
    let expected = &order * &order / BigInt::from(subgroup.order());
    if weighted != expected {
        return Err(CartanError::DimensionSumRule(weighted, expected));
    }
    Ok(DeltaMatrix {
        labeled: LabeledMatrix::square(table.labels(), m),
        subgroup_order: subgroup.order(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    Complex,
    ModP(u64),
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Complex => write!(f, "complex"),
            FieldTag::ModP(p) => write!(f, "mod-{p}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CartanMatrix {
    pub labeled: LabeledMatrix,
    pub field: FieldTag,
}

impl CartanMatrix {
    pub fn det(&self) -> BigInt {
        self.labeled.matrix.det().expect("Cartan matrices are square")
    }

    pub fn rank(&self) -> usize {
        self.labeled.matrix.rank()
    }

    /// Append the 1×1 block for the simple module with apex z, giving the
    /// Cartan matrix of the uncontracted algebra.
    pub fn uncontracted(&self) -> CartanMatrix {
        let n = self.labeled.matrix.rows;
        let mut m = IntMatrix::zero(n + 1, n + 1);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, self.labeled.matrix.at(r, c).clone());
            }
        }
        m.set(n, n, BigInt::one());
        let mut labels = self.labeled.row_labels.clone();
        labels.push("apex_z".to_string());
        CartanMatrix {
            labeled: LabeledMatrix::square(labels, m),
            field: self.field.clone(),
        }
    }
}

/// C = identity + sum over L of z_L Δ(L), the Cartan matrix of the contracted
/// complex monoid algebra.
pub fn complex_cartan(
    deltas: &[DeltaMatrix],
    multiplicities: &[u64],
) -> Result<CartanMatrix, CartanError> {
    if deltas.len() != multiplicities.len() {
        return Err(CartanError::MultiplicityLength(
            multiplicities.len(),
            deltas.len(),
        ));
    }
    let labels: Vec<String> = deltas
        .first()
        .map(|d| d.labeled.row_labels.clone())
        .unwrap_or_default();
    for d in deltas {
        if d.labeled.row_labels != labels {
            return Err(CartanError::DeltaLabelMismatch);
        }
    }
    let n = labels.len();
    let mut acc = IntMatrix::identity(n);
    for (d, &z) in deltas.iter().zip(multiplicities) {
        if z == 0 {
            continue;
        }
        acc = acc.add(&d.labeled.matrix.scale(&BigInt::from(z)))?;
    }
    Ok(CartanMatrix {
        labeled: LabeledMatrix::square(labels, acc),
        field: FieldTag::Complex,
    })
}

/// Decomposition matrix: ordinary characters (rows) × p-modular characters
/// (columns).
#[derive(Debug, Clone)]
pub struct DecompositionMatrix {
    pub prime: u64,
    pub labeled: LabeledMatrix,
}

impl DecompositionMatrix {
    pub fn new(
        prime: u64,
        ordinary_labels: Vec<String>,
        modular_labels: Vec<String>,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<Self, CartanError> {
        if rows.len() != ordinary_labels.len() {
            return Err(CartanError::InvalidDecomposition(format!(
                "{} rows for {} ordinary labels",
                rows.len(),
                ordinary_labels.len()
            )));
        }
        for row in &rows {
            if row.len() != modular_labels.len() {
                return Err(CartanError::InvalidDecomposition(format!(
                    "row of length {} for {} modular labels",
                    row.len(),
                    modular_labels.len()
                )));
            }
            if row.iter().any(|x| x.is_negative()) {
                return Err(CartanError::InvalidDecomposition(
                    "negative entry".to_string(),
                ));
            }
        }
        let matrix = IntMatrix::from_rows(rows);
        if matrix.rank() != matrix.cols {
            return Err(CartanError::InvalidDecomposition(
                "matrix does not have full column rank".to_string(),
            ));
        }
        Ok(DecompositionMatrix {
            prime,
            labeled: LabeledMatrix {
                row_labels: ordinary_labels,
                col_labels: modular_labels,
                matrix,
            },
        })
    }

    pub fn ordinary_labels(&self) -> &[String] {
        &self.labeled.row_labels
    }

    pub fn modular_labels(&self) -> &[String] {
        &self.labeled.col_labels
    }

    /// For p not dividing |G| the matrix must be a permutation of the
    /// identity.
    pub fn validate_against_group_order(&self, group_order: usize) -> Result<(), CartanError> {
        if group_order as u64 % self.prime != 0 {
            let m = &self.labeled.matrix;
            let square = m.rows == m.cols;
            let perm_identity = square
                && (0..m.rows).all(|r| {
                    m.row(r).iter().filter(|x| x.is_one()).count() == 1
                        && m.row(r).iter().filter(|x| x.is_zero()).count() == m.cols - 1
                })
                && (0..m.cols).all(|c| {
                    (0..m.rows).filter(|&r| m.at(r, c).is_one()).count() == 1
                });
            if !perm_identity {
                return Err(CartanError::InvalidDecomposition(format!(
                    "prime {} does not divide the group order {}, so the matrix must be a permutation of the identity",
                    self.prime, group_order
                )));
            }
        }
        Ok(())
    }

    pub fn gram(&self) -> IntMatrix {
        let d = &self.labeled.matrix;
        d.transpose().mul(d).expect("transpose product dimensions agree")
    }
}

/// D-transpose · C · D, matched by ordinary label (never by position).
pub fn modular_cartan(
    complex: &CartanMatrix,
    decomposition: &DecompositionMatrix,
) -> Result<CartanMatrix, CartanError> {
    if complex.field != FieldTag::Complex {
        return Err(CartanError::NotComplex(complex.field.to_string()));
    }
    for label in decomposition.ordinary_labels() {
        if !complex.labeled.row_labels.contains(label) {
            return Err(CartanError::UnmatchedLabel(label.clone()));
        }
    }
    if decomposition.ordinary_labels().len() != complex.labeled.row_labels.len() {
        return Err(CartanError::UnmatchedLabel(
            complex
                .labeled
                .row_labels
                .iter()
                .find(|l| !decomposition.ordinary_labels().contains(l))
                .cloned()
                .unwrap_or_default(),
        ));
    }
    let ordered = complex.labeled.reordered(
        decomposition.ordinary_labels(),
        decomposition.ordinary_labels(),
    )?;
    let d = &decomposition.labeled.matrix;
    let product = d.transpose().mul(&ordered.matrix)?.mul(d)?;
    Ok(CartanMatrix {
        labeled: LabeledMatrix {
            row_labels: decomposition.modular_labels().to_vec(),
            col_labels: decomposition.modular_labels().to_vec(),
            matrix: product,
        },
        field: FieldTag::ModP(decomposition.prime),
    })
}
