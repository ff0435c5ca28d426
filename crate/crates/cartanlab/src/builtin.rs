//! Built-in groups, subgroups, decomposition matrices, and the ready-made
//! S3 configuration that reproduces the published counterexample in one
//! command.

use num_bigint::BigInt;
use num_traits::One;

use crate::cartan::DecompositionMatrix;
use crate::chartab::CharacterTable;
use crate::group::{GroupError, PairSubgroup, PermGroup, Subgroup};
use crate::perm::Permutation;

pub const S3_ORDINARY_LABELS: [&str; 3] = ["chi_(3)", "chi_(2,1)", "chi_(1^3)"];
pub const S3_MODULAR_LABELS_P3: [&str; 2] = ["psi_(3)", "psi_(2,1)"];

pub fn group_names() -> &'static [&'static str] {
    &[
        "trivial", "C2", "C3", "C4", "C6", "S3", "S4", "D4", "Q8",
    ]
}

pub fn group(name: &str) -> Result<PermGroup, GroupError> {
    let cyc = |deg: usize| -> Permutation {
        Permutation::from_cycles_one_based(deg, &[(1..=deg).collect()]).unwrap()
    };
    match name {
        "trivial" => PermGroup::generated(1, vec![]),
        "C2" => PermGroup::generated(2, vec![cyc(2)]),
        "C3" => PermGroup::generated(3, vec![cyc(3)]),
        "C4" => PermGroup::generated(4, vec![cyc(4)]),
        "C6" => PermGroup::generated(6, vec![cyc(6)]),
        "S3" => PermGroup::generated(
            3,
            vec![
                Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap(),
                cyc(3),
            ],
        ),
        "S4" => PermGroup::generated(
            4,
            vec![
                Permutation::from_cycles_one_based(4, &[vec![1, 2]]).unwrap(),
                cyc(4),
            ],
        ),
        "D4" => PermGroup::generated(
            4,
            vec![
                cyc(4),
                Permutation::from_cycles_one_based(4, &[vec![2, 4]]).unwrap(),
            ],
        ),
        // quaternion group in its regular representation on
        // {1, -1, i, -i, j, -j, k, -k}
        "Q8" => PermGroup::generated(
            8,
            vec![
                Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap(),
                Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap(),
            ],
        ),
        other => Err(GroupError::NotInParent(format!(
            "unknown built-in group {other:?}"
        ))),
    }
}

/// Built-in subgroups of S3 × S3 from the published example. `La` is the
/// diagonal {(g, g)}: the set {(g, g^-1)} appearing in the source is not
/// closed under the componentwise product for nonabelian G, while the
/// diagonal is the stabilizer of 1 in the regular biset and yields the
/// asserted identity Δ. See README for the discrepancy note.
pub fn s3_pair_subgroup(g: &PermGroup, name: &str) -> Result<PairSubgroup, GroupError> {
    let transposition = Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap();
    let three_cycle = Permutation::from_cycles_one_based(3, &[vec![1, 2, 3]]).unwrap();
    match name {
        "diag" | "La" => Ok(PairSubgroup::diagonal(g)),
        "Lb" => {
            let h1 = Subgroup::trivial(g);
            let h2 = Subgroup::generated(g, std::slice::from_ref(&transposition))?;
            Ok(PairSubgroup::product(h1, h2))
        }
        "Lc" => {
            let h1 = Subgroup::whole(g);
            let h2 = Subgroup::generated(g, std::slice::from_ref(&three_cycle))?;
            Ok(PairSubgroup::product(h1, h2))
        }
        other => Err(GroupError::NotInParent(format!(
            "unknown built-in subgroup {other:?}"
        ))),
    }
}

/// The decomposition matrix of S3 at p = 3.
pub fn s3_decomposition_p3() -> DecompositionMatrix {
    DecompositionMatrix::new(
        3,
        S3_ORDINARY_LABELS.iter().map(|s| s.to_string()).collect(),
        S3_MODULAR_LABELS_P3.iter().map(|s| s.to_string()).collect(),
        vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(1)],
        ],
    )
    .expect("built-in decomposition matrix is valid")
}

/// Identity decomposition matrix for a prime not dividing |G|.
pub fn identity_decomposition(labels: &[String], prime: u64) -> DecompositionMatrix {
    let n = labels.len();
    let matrix: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::from(0) })
                .collect()
        })
        .collect();
    DecompositionMatrix::new(prime, labels.to_vec(), labels.to_vec(), matrix)
        .expect("identity decomposition matrix is valid")
}

/// If the table is recognized as a built-in one with published labels,
/// return them in the table's canonical row order.
pub fn builtin_labels(table: &CharacterTable) -> Option<Vec<String>> {
    let group = table.group();
    let sizes: Vec<usize> = group.classes().iter().map(|c| c.size()).collect();
    if group.order() != 6 || group.degree() != 3 || sizes != [1, 3, 2] {
        return None;
    }
    // S3: identify rows by (degree, value at the transposition class)
    let mut labels = Vec::with_capacity(3);
    for row in table.rows() {
        let degree = row.degree();
        let at_transposition = row.values[1].as_integer()?;
        let label = if degree == BigInt::from(2) {
            "chi_(2,1)"
        } else if at_transposition == BigInt::one() {
            "chi_(3)"
        } else {
            "chi_(1^3)"
        };
        labels.push(label.to_string());
    }
    Some(labels)
}

/// The published S3 configuration: multiplicities (4, 2, 165) on
/// (diag, Lb, Lc) with the p = 3 decomposition matrix.
pub struct PaperConfig {
    pub subgroup_names: Vec<&'static str>,
    pub multiplicities: Vec<u64>,
    pub prime: u64,
}

pub fn paper_s3_config() -> PaperConfig {
    PaperConfig {
        subgroup_names: vec!["diag", "Lb", "Lc"],
        multiplicities: vec![4, 2, 165],
        prime: 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_group_orders() {
        let expect = [
            ("trivial", 1),
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("C6", 6),
            ("S3", 6),
            ("S4", 24),
            ("D4", 8),
            ("Q8", 8),
        ];
        for (name, order) in expect {
            assert_eq!(group(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn q8_exponent_is_four() {
        assert_eq!(group("Q8").unwrap().exponent(), 4);
    }

    #[test]
    fn s3_exponent_is_six() {
        assert_eq!(group("S3").unwrap().exponent(), 6);
    }

    #[test]
    fn s3_subgroup_orders() {
        let g = group("S3").unwrap();
        assert_eq!(s3_pair_subgroup(&g, "diag").unwrap().order(), 6);
        assert_eq!(s3_pair_subgroup(&g, "Lb").unwrap().order(), 2);
        assert_eq!(s3_pair_subgroup(&g, "Lc").unwrap().order(), 18);
    }
}
