//! Exact complex character tables of enumerated permutation groups.
//!
//! Tables are produced by the Dixon–Schneider algorithm: split the common
//! eigenspaces of the class matrices modulo an admissible prime, recover the
//! degrees from modular orthogonality, then lift each value to an exact
//! cyclotomic through a discrete Fourier transform over the eigenvalue
//! multiplicities of powers of the class representative. Both orthogonality
//! relations are verified exactly before a table is returned.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cyclo::{CycloError, Cyclotomic, Rat};
use crate::dixon::{self, DixonError, Fp};
use crate::group::{PairKind, PairSubgroup, PermGroup, Subgroup};

pub const DIXON_PRIME_RETRIES: usize = 25;

#[derive(Debug, Error)]
pub enum CharTabError {
    #[error(transparent)]
    Dixon(#[from] DixonError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("all {DIXON_PRIME_RETRIES} admissible primes failed; last error: {0}")]
    PrimesExhausted(String),
    #[error("row orthogonality violated for rows {0} and {1}: inner product {2}")]
    RowOrthogonality(String, String, String),
    #[error("column orthogonality violated for classes {0} and {1}")]
    ColumnOrthogonality(usize, usize),
    #[error("degree sum of squares is {0}, expected group order {1}")]
    DegreeSumOfSquares(BigInt, usize),
    #[error("subgroup average of ({0},{1}) is not a non-negative integer: {2}")]
    NotANonNegativeInteger(String, String, String),
    #[error("rows belong to different tables")]
    TableMismatch,
    #[error("unknown character label {0}")]
    UnknownLabel(String),
    #[error("loaded table mismatch: {0}")]
    LoadValidation(String),
}

#[derive(Debug, Clone)]
pub struct CharRow {
    pub label: String,
    pub values: Vec<Cyclotomic>,
}

impl CharRow {
    pub fn degree(&self) -> BigInt {
        self.values[0]
            .as_integer()
            .expect("character degree is an integer")
    }
}

/// An exact character table, rows in canonical order (degree ascending, then
/// lexicographic on value vectors), classes in the parent group's class order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<PermGroup>,
    conductor: usize,
    rows: Vec<CharRow>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn rows(&self) -> &[CharRow] {
        &self.rows
    }

    pub fn labels(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.label.clone()).collect()
    }

    pub fn row_by_label(&self, label: &str) -> Result<usize, CharTabError> {
        self.rows
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| CharTabError::UnknownLabel(label.to_string()))
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.rows.len());
        for (row, label) in self.rows.iter_mut().zip(labels) {
            row.label = label;
        }
    }

    /// Value of row `i` at the class of group element index `elem`.
    pub fn value_at_element(&self, i: usize, elem: usize) -> &Cyclotomic {
        &self.rows[i].values[self.group.class_of(elem)]
    }

    /// Compute the table with the Dixon–Schneider algorithm.
    pub fn dixon(group: Arc<PermGroup>) -> Result<Self, CharTabError> {
        let exponent = group.exponent();
        let class_mats = dixon::class_matrices(&group);
        let identity_class = group.class_of(group.identity_index());
        let mut last_err: Option<DixonError> = None;
        for e in dixon::admissible_primes(exponent, group.order()).take(DIXON_PRIME_RETRIES) {
            match Self::dixon_with_prime(&group, &class_mats, identity_class, exponent, e) {
                Ok(mut table) => {
                    table.verify_orthogonality()?;
                    table.sort_canonical();
                    table.autolabel();
                    return Ok(table);
                }
                Err(err) => last_err = Some(err),
            }
        }
        Err(CharTabError::PrimesExhausted(
            last_err
                .map(|e| e.to_string())
                .unwrap_or_else(|| "no admissible prime tried".into()),
        ))
    }

    fn dixon_with_prime(
        group: &Arc<PermGroup>,
        class_mats: &[dixon::FpMatrix],
        identity_class: usize,
        exponent: usize,
        e: u64,
    ) -> Result<Self, DixonError> {
        let f = Fp { p: e };
        let omegas = dixon::central_characters(class_mats, identity_class, f)?;
        let r = class_mats.len();
        let class_sizes: Vec<u64> = group.classes().iter().map(|c| c.size() as u64).collect();
        let inv_class: Vec<usize> = (0..r).map(|k| group.inverse_class(k)).collect();
        let order_mod = (group.order() as u64) % e;

        // degrees from modular orthogonality:
        // d^2 * sum_k omega_k omega_{k'} / |C_k| = |G|  (mod e)
        let mut degrees: Vec<u64> = Vec::with_capacity(r);
        for omega in &omegas {
            let mut s = 0u64;
            for k in 0..r {
                let term = f.mul(
                    f.mul(omega[k], omega[inv_class[k]]),
                    f.inv(class_sizes[k] % e),
                );
                s = f.add(s, term);
            }
            if s == 0 {
                return Err(DixonError::DegreeRecovery(e));
            }
            let d2 = f.mul(order_mod, f.inv(s));
            let bound = (group.order() as f64).sqrt() as u64 + 1;
            let d = (1..=bound).find(|&d| f.mul(d % e, d % e) == d2);
            let Some(d) = d else {
                return Err(DixonError::DegreeRecovery(e));
            };
            degrees.push(d);
        }

        // modular character values per class
        let mut modular: Vec<Vec<u64>> = Vec::with_capacity(r);
        for (omega, &d) in omegas.iter().zip(&degrees) {
            modular.push(
                (0..r)
                    .map(|k| f.mul(f.mul(d % e, omega[k]), f.inv(class_sizes[k] % e)))
                    .collect(),
            );
        }

        // power map: class of rep^j for each class
        let n = exponent;
        let lambda_n = f.pow(f.primitive_root(), (e - 1) / n as u64);
        let mut rows = Vec::with_capacity(r);
        for chi in 0..r {
            let mut values = Vec::with_capacity(r);
            for k in 0..r {
                let rep = group.classes()[k].representative;
                let m = group.classes()[k].element_order;
                let lambda_m = f.pow(lambda_n, (n / m) as u64);
                // multiplicities of zeta_m^t among the eigenvalues of the
                // representation at the class rep, recovered mod e
                let mut value = Cyclotomic::zero(n);
                let minv = f.inv(m as u64 % e);
                for t in 0..m {
                    let mut acc = 0u64;
                    for j in 0..m {
                        let cls = group.class_of(power_index(group, rep, j));
                        let phase = f.inv(f.pow(lambda_m, (j * t) as u64 % (e - 1)));
                        acc = f.add(acc, f.mul(modular[chi][cls], phase));
                    }
                    let c = f.mul(acc, minv);
                    if c > degrees[chi] {
                        return Err(DixonError::LiftOutOfRange(c, degrees[chi], e));
                    }
                    if c != 0 {
                        let term = Cyclotomic::root_of_unity(n, (n / m) * t)
                            .scale(&Rat::from_integer(BigInt::from(c)));
                        value = value.add(&term).expect("single conductor");
                    }
                }
                values.push(value);
            }
            rows.push(CharRow {
                label: String::new(),
                values,
            });
        }
        Ok(CharacterTable {
            group: Arc::clone(group),
            conductor: n,
            rows,
        })
    }

    fn sort_canonical(&mut self) {
        self.rows.sort_by(|a, b| {
            a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.values.iter().zip(&b.values) {
                    match x.lex_cmp(y) {
                        std::cmp::Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
    }

    fn autolabel(&mut self) {
        if let Some(labels) = crate::builtin::builtin_labels(self) {
            self.set_labels(labels);
        } else {
            for (i, row) in self.rows.iter_mut().enumerate() {
                row.label = format!("X{}", i + 1);
            }
        }
    }

    /// Build a table from explicit data (used by the loader); validates fully.
    pub fn from_rows(
        group: Arc<PermGroup>,
        conductor: usize,
        rows: Vec<CharRow>,
    ) -> Result<Self, CharTabError> {
        let table = CharacterTable {
            group,
            conductor,
            rows,
        };
        table.verify_orthogonality()?;
        Ok(table)
    }

    pub fn verify_orthogonality(&self) -> Result<(), CharTabError> {
        let order = BigInt::from(self.group.order());
        let sum_sq: BigInt = self.rows.iter().map(|r| {
            let d = r.degree();
            &d * &d
        }).sum();
        if sum_sq != order {
            return Err(CharTabError::DegreeSumOfSquares(sum_sq, self.group.order()));
        }
        for d in self.rows.iter().map(|r| r.degree()) {
            if (&order % &d) != BigInt::zero() {
                return Err(CharTabError::LoadValidation(format!(
                    "degree {d} does not divide the group order"
                )));
            }
        }
        // rows
        for i in 0..self.rows.len() {
            for j in i..self.rows.len() {
                let ip = self.inner_product(i, j)?;
                let expected = if i == j { Rat::one() } else { Rat::zero() };
                if ip != expected {
                    return Err(CharTabError::RowOrthogonality(
                        self.rows[i].label.clone(),
                        self.rows[j].label.clone(),
                        ip.to_string(),
                    ));
                }
            }
        }
        // columns
        let r = self.rows.len();
        let classes = self.group.classes();
        for a in 0..classes.len() {
            for b in a..classes.len() {
                let mut sum = Cyclotomic::zero(self.conductor);
                for row in &self.rows {
                    let term = row.values[a].mul(&row.values[b].conj())?;
                    sum = sum.add(&term)?;
                }
                let expected = if a == b {
                    // centralizer order |G| / |C_a|
                    Rat::from_integer(BigInt::from(self.group.order() / classes[a].size()))
                } else {
                    Rat::zero()
                };
                if sum.as_rational() != Some(expected) {
                    return Err(CharTabError::ColumnOrthogonality(a, b));
                }
            }
        }
        let _ = r;
        Ok(())
    }

    /// (chi, eta) = (1/|G|) sum_g chi(g) conj(eta(g)), computed classwise.
    pub fn inner_product(&self, i: usize, j: usize) -> Result<Rat, CharTabError> {
        let mut sum = Cyclotomic::zero(self.conductor);
        for (k, class) in self.group.classes().iter().enumerate() {
            let term = self.rows[i].values[k]
                .mul(&self.rows[j].values[k].conj())?
                .scale(&Rat::from_integer(BigInt::from(class.size())));
            sum = sum.add(&term)?;
        }
        let sum = sum.scale(&Rat::new(BigInt::one(), BigInt::from(self.group.order())));
        sum.as_rational().ok_or_else(|| {
            CharTabError::NotANonNegativeInteger(
                self.rows[i].label.clone(),
                self.rows[j].label.clone(),
                sum.to_string(),
            )
        })
    }

    /// Inner product of an arbitrary class function (values per class) with row `i`.
    pub fn inner_product_with(&self, values: &[Cyclotomic], i: usize) -> Result<Rat, CharTabError> {
        let mut sum = Cyclotomic::zero(self.conductor);
        for (k, class) in self.group.classes().iter().enumerate() {
            let term = values[k]
                .mul(&self.rows[i].values[k].conj())?
                .scale(&Rat::from_integer(BigInt::from(class.size())));
            sum = sum.add(&term)?;
        }
        let sum = sum.scale(&Rat::new(BigInt::one(), BigInt::from(self.group.order())));
        sum.as_rational()
            .ok_or_else(|| CharTabError::TableMismatch)
    }

    /// (1/|L|) sum over (a,b) in L of chi(a) conj(eta(b)): the multiplicity of
    /// the trivial character in the restriction of chi⊗eta-bar to L. Always a
    /// non-negative integer; anything else is a hard inconsistency error.
    pub fn subgroup_average(
        &self,
        chi: usize,
        eta: usize,
        subgroup: &PairSubgroup,
    ) -> Result<BigInt, CharTabError> {
        if let PairKind::Product { left, right } = &subgroup.kind {
            return self.product_subgroup_average(chi, eta, left, right);
        }
        let mut sum = Cyclotomic::zero(self.conductor);
        for &(a, b) in &subgroup.elements {
            let term = self
                .value_at_element(chi, a)
                .mul(&self.value_at_element(eta, b).conj())?;
            sum = sum.add(&term)?;
        }
        let avg = sum.scale(&Rat::new(BigInt::one(), BigInt::from(subgroup.order())));
        self.expect_nonneg_integer(chi, eta, avg)
    }

    /// Factored evaluation over H1 × H2: chi(avg of H1) * conj(eta)(avg of H2).
    pub fn product_subgroup_average(
        &self,
        chi: usize,
        eta: usize,
        h1: &Subgroup,
        h2: &Subgroup,
    ) -> Result<BigInt, CharTabError> {
        let a = self.average_over(chi, h1, false)?;
        let b = self.average_over(eta, h2, true)?;
        let prod = a.mul(&b)?;
        self.expect_nonneg_integer(chi, eta, prod)
    }

    fn average_over(
        &self,
        row: usize,
        h: &Subgroup,
        conjugated: bool,
    ) -> Result<Cyclotomic, CycloError> {
        let mut sum = Cyclotomic::zero(self.conductor);
        for &g in &h.element_indices {
            let v = self.value_at_element(row, g);
            let v = if conjugated { v.conj() } else { v.clone() };
            sum = sum.add(&v)?;
        }
        Ok(sum.scale(&Rat::new(BigInt::one(), BigInt::from(h.order()))))
    }

    fn expect_nonneg_integer(
        &self,
        chi: usize,
        eta: usize,
        value: Cyclotomic,
    ) -> Result<BigInt, CharTabError> {
        match value.as_integer() {
            Some(n) if !n.is_negative() => Ok(n),
            _ => Err(CharTabError::NotANonNegativeInteger(
                self.rows[chi].label.clone(),
                self.rows[eta].label.clone(),
                value.to_string(),
            )),
        }
    }
}

fn power_index(group: &PermGroup, elem: usize, j: usize) -> usize {
    let mut cur = group.identity_index();
    for _ in 0..j {
        cur = group.mul_idx(cur, elem);
    }
    cur
}

/// The permutation character of G acting on its natural points, as values per
/// class (fixed-point counts). Used in tests as an independent class function.
pub fn natural_permutation_character(table: &CharacterTable) -> Vec<Cyclotomic> {
    let group = table.group();
    group
        .classes()
        .iter()
        .map(|c| {
            let p = group.element(c.representative);
            let fixed = (0..group.degree()).filter(|&x| p.apply(x) == x).count();
            Cyclotomic::from_integer(table.conductor(), fixed as i64)
        })
        .collect()
}

pub type RatExt = BigRational;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn trivial_group_table() {
        let g = Arc::new(builtin::group("trivial").unwrap());
        let t = CharacterTable::dixon(g).unwrap();
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.rows()[0].degree(), BigInt::one());
    }

    #[test]
    fn s3_table_matches_published_values() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(g).unwrap();
        let degrees: Vec<BigInt> = t.rows().iter().map(|r| r.degree()).collect();
        assert_eq!(degrees, vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]);
        // classes are ordered (), transpositions, 3-cycles
        let triv = t.row_by_label("chi_(3)").unwrap();
        let sign = t.row_by_label("chi_(1^3)").unwrap();
        let std2 = t.row_by_label("chi_(2,1)").unwrap();
        let ints = |i: usize| -> Vec<BigInt> {
            t.rows()[i].values.iter().map(|v| v.as_integer().unwrap()).collect()
        };
        assert_eq!(ints(triv), vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        assert_eq!(ints(std2), vec![BigInt::from(2), BigInt::from(0), BigInt::from(-1)]);
        assert_eq!(ints(sign), vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn c3_table_has_cyclotomic_rows() {
        let g = Arc::new(builtin::group("C3").unwrap());
        let t = CharacterTable::dixon(g).unwrap();
        assert_eq!(t.rows().len(), 3);
        let z = Cyclotomic::root_of_unity(3, 1);
        let z2 = Cyclotomic::root_of_unity(3, 2);
        let mut non_trivial_rows: Vec<Vec<Cyclotomic>> = t
            .rows()
            .iter()
            .filter(|r| !r.values.iter().all(|v| v.as_integer() == Some(BigInt::one())))
            .map(|r| r.values.clone())
            .collect();
        assert_eq!(non_trivial_rows.len(), 2);
        non_trivial_rows.sort_by(|a, b| a[1].lex_cmp(&b[1]));
        // one row has (1, z3, z3^2), the other (1, z3^2, z3), in some class order
        let pair: std::collections::HashSet<String> = non_trivial_rows
            .iter()
            .map(|r| format!("{},{}", r[1], r[2]))
            .collect();
        assert!(pair.contains(&format!("{z},{z2}")));
        assert!(pair.contains(&format!("{z2},{z}")));
    }

    #[test]
    fn natural_character_of_s3_contains_standard_once() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(g).unwrap();
        let pi = natural_permutation_character(&t);
        let std2 = t.row_by_label("chi_(2,1)").unwrap();
        let triv = t.row_by_label("chi_(3)").unwrap();
        let sign = t.row_by_label("chi_(1^3)").unwrap();
        assert_eq!(t.inner_product_with(&pi, std2).unwrap(), Rat::one());
        assert_eq!(t.inner_product_with(&pi, triv).unwrap(), Rat::one());
        assert_eq!(t.inner_product_with(&pi, sign).unwrap(), Rat::zero());
    }

    #[test]
    fn diagonal_average_is_kronecker_delta() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let diag = PairSubgroup::diagonal(&g);
        for i in 0..3 {
            for j in 0..3 {
                let expected = BigInt::from(if i == j { 1 } else { 0 });
                assert_eq!(t.subgroup_average(i, j, &diag).unwrap(), expected);
            }
        }
    }

    #[test]
    fn trivial_pair_subgroup_average_is_degree_product() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let trivial = PairSubgroup::generated_by_indices(&g, &[]);
        for i in 0..3 {
            for j in 0..3 {
                let expected = t.rows()[i].degree() * t.rows()[j].degree();
                assert_eq!(t.subgroup_average(i, j, &trivial).unwrap(), expected);
            }
        }
    }

    #[test]
    fn nontrivial_character_averages_to_zero_over_whole_group() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let whole = Subgroup::whole(&g);
        let std2 = t.row_by_label("chi_(2,1)").unwrap();
        assert_eq!(
            t.product_subgroup_average(std2, std2, &whole, &whole).unwrap(),
            BigInt::zero()
        );
    }
}
