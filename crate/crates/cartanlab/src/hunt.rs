//! Counterexample search: find multiplicities z over a pool of subgroups of
//! G×G so that the complex Cartan matrix is non-singular while its image
//! under the decomposition matrix is singular.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{
    complex_cartan, delta_matrix, modular_cartan, CartanError, CartanMatrix, DecompositionMatrix,
    DeltaMatrix,
};
use crate::chartab::CharacterTable;
use crate::group::{GroupError, PairSubgroup, PermGroup};
use crate::matrix::IntMatrix;
use crate::monoid::{self, Biset, MonoidError};

pub const DEFAULT_BOX_BOUND: u64 = 10;
pub const DEFAULT_KERNEL_BOUND: i64 = 32;
pub const DEFAULT_Z_BOUND: u64 = 500;
pub const DEFAULT_POOL_CANDIDATE_CAP: usize = 512;

#[derive(Debug, Error)]
pub enum HuntError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Matrix(#[from] crate::matrix::MatrixError),
    #[error("pool Δ labels do not match the decomposition matrix ordinary labels")]
    LabelMismatch,
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

/// One search candidate: a conjugacy-class representative subgroup of G×G
/// with its precomputed Δ matrix.
pub struct Candidate {
    pub name: String,
    pub subgroup: PairSubgroup,
    pub delta: DeltaMatrix,
}

pub struct CandidatePool {
    pub candidates: Vec<Candidate>,
    pub truncated: bool,
}

impl CandidatePool {
    pub fn from_subgroups(
        table: &CharacterTable,
        named: Vec<(String, PairSubgroup)>,
    ) -> Result<Self, HuntError> {
        let mut candidates = Vec::new();
        for (name, subgroup) in named {
            let delta = delta_matrix(table, &subgroup)?;
            candidates.push(Candidate {
                name,
                subgroup,
                delta,
            });
        }
        Ok(CandidatePool {
            candidates,
            truncated: false,
        })
    }

    /// Indices of the default active subset: candidates whose Δ is not the
    /// identity, plus the diagonal if present (identity-Δ candidates other
    /// than the diagonal only rescale the δ term).
    pub fn default_active(&self, group: &PermGroup) -> Vec<usize> {
        let diag = PairSubgroup::diagonal(group);
        self.candidates
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                !c.delta.is_identity()
                    || conjugacy_canonical_form(group, &c.subgroup)
                        == conjugacy_canonical_form(group, &diag)
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Canonical form of a subgroup of G×G under conjugacy: the minimal sorted
/// element list over all conjugates.
pub fn conjugacy_canonical_form(group: &PermGroup, sub: &PairSubgroup) -> Vec<(usize, usize)> {
    let n = group.order();
    let mut best = sub.elements.clone();
    for t1 in 0..n {
        for t2 in 0..n {
            let conj = sub.conjugate(group, t1, t2).elements;
            if conj < best {
                best = conj;
            }
        }
    }
    best
}

/// Brute-force enumeration of subgroups of G×G up to conjugacy, generated by
/// at most `max_generators` elements, with order at most `order_cap`.
/// Deterministic order: by (order, canonical element list).
pub fn enumerate_pair_subgroups(
    group: &PermGroup,
    table: &CharacterTable,
    order_cap: usize,
    max_generators: usize,
    candidate_cap: usize,
) -> Result<CandidatePool, HuntError> {
    let n = group.order();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            pairs.push((a, b));
        }
    }
    let mut seen_sets: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut canon_forms: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut reps: Vec<(Vec<(usize, usize)>, PairSubgroup)> = Vec::new();
    let mut truncated = false;

    let mut consider = |gens: &[(usize, usize)],
                        reps: &mut Vec<(Vec<(usize, usize)>, PairSubgroup)>,
                        truncated: &mut bool|
     -> bool {
        let sub = PairSubgroup::generated_by_indices(group, gens);
        if sub.order() > order_cap {
            return true;
        }
        if !seen_sets.insert(sub.elements.clone()) {
            return true;
        }
        let canon = conjugacy_canonical_form(group, &sub);
        if canon_forms.insert(canon.clone()) {
            if reps.len() >= candidate_cap {
                *truncated = true;
                return false;
            }
            reps.push((canon, sub));
        }
        true
    };

    'outer: {
        if !consider(&[], &mut reps, &mut truncated) {
            break 'outer;
        }
        if max_generators >= 1 {
            for &p in &pairs {
                if !consider(&[p], &mut reps, &mut truncated) {
                    break 'outer;
                }
            }
        }
        if max_generators >= 2 {
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    if !consider(&[pairs[i], pairs[j]], &mut reps, &mut truncated) {
                        break 'outer;
                    }
                }
            }
        }
    }

    reps.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));
    let named: Vec<(String, PairSubgroup)> = reps
        .into_iter()
        .enumerate()
        .map(|(i, (_, sub))| (format!("L{}", i + 1), sub))
        .collect();
    let mut pool = CandidatePool::from_subgroups(table, named)?;
    pool.truncated = truncated;
    Ok(pool)
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub multiplicities: Vec<u64>,
    pub candidate_names: Vec<String>,
    pub complex_labels: Vec<String>,
    pub complex_rows: Vec<Vec<BigInt>>,
    pub modular_labels: Vec<String>,
    pub modular_rows: Vec<Vec<BigInt>>,
    pub det_complex: BigInt,
    pub det_modular: BigInt,
    pub kernel_vector: Vec<BigInt>,
}

impl Counterexample {
    fn build(
        pool: &CandidatePool,
        z: &[u64],
        complex: CartanMatrix,
        modular: CartanMatrix,
    ) -> Self {
        let det_complex = complex.det();
        let det_modular = modular.det();
        let kernel_vector = modular
            .labeled
            .matrix
            .kernel_vector()
            .unwrap_or_default();
        Counterexample {
            multiplicities: z.to_vec(),
            candidate_names: pool.candidates.iter().map(|c| c.name.clone()).collect(),
            complex_labels: complex.labeled.row_labels.clone(),
            complex_rows: rows_of(&complex.labeled.matrix),
            modular_labels: modular.labeled.row_labels.clone(),
            modular_rows: rows_of(&modular.labeled.matrix),
            det_complex,
            det_modular,
            kernel_vector,
        }
    }
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows).map(|r| m.row(r).to_vec()).collect()
}

#[derive(Debug, Serialize)]
pub enum SearchOutcome {
    Found(Vec<Counterexample>),
    Exhausted,
}

fn check_labels(pool: &CandidatePool, decomposition: &DecompositionMatrix) -> Result<(), HuntError> {
    if let Some(c) = pool.candidates.first() {
        let mut a = c.delta.labeled.row_labels.clone();
        let mut b = decomposition.ordinary_labels().to_vec();
        a.sort();
        b.sort();
        if a != b {
            return Err(HuntError::LabelMismatch);
        }
    }
    Ok(())
}

fn try_candidate(
    pool: &CandidatePool,
    decomposition: &DecompositionMatrix,
    z: &[u64],
) -> Result<Option<Counterexample>, HuntError> {
    let deltas: Vec<DeltaMatrix> = pool.candidates.iter().map(|c| c.delta.clone()).collect();
    let complex = complex_cartan(&deltas, z)?;
    if complex.det().is_zero() {
        return Ok(None);
    }
    let modular = modular_cartan(&complex, decomposition)?;
    if !modular.det().is_zero() {
        return Ok(None);
    }
    Ok(Some(Counterexample::build(pool, z, complex, modular)))
}

/// Scan z over the box [0, bound]^active in deterministic lexicographic order
/// (last active coordinate varies fastest). Returns the first verified hit,
/// or all hits up to the bound when `all_hits` is set.
pub fn search_bruteforce(
    pool: &CandidatePool,
    decomposition: &DecompositionMatrix,
    bound: u64,
    active: Option<Vec<usize>>,
    all_hits: bool,
) -> Result<SearchOutcome, HuntError> {
    check_labels(pool, decomposition)?;
    let k = pool.candidates.len();
    if k == 0 {
        return Ok(SearchOutcome::Exhausted);
    }
    let active = active.unwrap_or_else(|| (0..k).collect());
    let mut z = vec![0u64; k];
    let mut hits = Vec::new();
    if active.is_empty() {
        if let Some(hit) = try_candidate(pool, decomposition, &z)? {
            hits.push(hit);
        }
        return Ok(done(hits));
    }
    'scan: loop {
        if let Some(hit) = try_candidate(pool, decomposition, &z)? {
            hits.push(hit);
            if !all_hits {
                return Ok(SearchOutcome::Found(hits));
            }
        }
        // odometer increment over the active coordinates
        for pos in (0..active.len()).rev() {
            let idx = active[pos];
            if z[idx] < bound {
                z[idx] += 1;
                continue 'scan;
            }
            z[idx] = 0;
        }
        break;
    }
    Ok(done(hits))
}

fn done(hits: Vec<Counterexample>) -> SearchOutcome {
    if hits.is_empty() {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::Found(hits)
    }
}

/// Kernel-guided search. For each primitive integer vector v with entries in
/// [-kernel_bound, kernel_bound] (up to sign), solve
///   sum_L z_L (D^T Δ(L) D) v = -(D^T D) v
/// for non-negative integers z_L ≤ z_bound by exact elimination plus bounded
/// enumeration of the free coordinates, and verify det of the complex Cartan
/// matrix is nonzero.
pub fn search_kernel_guided(
    pool: &CandidatePool,
    decomposition: &DecompositionMatrix,
    kernel_bound: i64,
    z_bound: u64,
    all_hits: bool,
) -> Result<SearchOutcome, HuntError> {
    check_labels(pool, decomposition)?;
    let m = decomposition.modular_labels().len();
    let d = &decomposition.labeled.matrix;
    let dt = d.transpose();
    let gram = dt.mul(d)?;
    // D^T Δ(L) D per candidate, with Δ reordered to D's ordinary label order
    let mut folded: Vec<IntMatrix> = Vec::with_capacity(pool.candidates.len());
    for c in &pool.candidates {
        let ordered = c.delta.labeled.reordered(
            decomposition.ordinary_labels(),
            decomposition.ordinary_labels(),
        )?;
        folded.push(dt.mul(&ordered.matrix)?.mul(d)?);
    }
    let mut hits = Vec::new();
    let mut seen_z: HashSet<Vec<u64>> = HashSet::new();
    let mut v = vec![-kernel_bound; m];
    'vectors: loop {
        if admissible_kernel_vector(&v) {
            let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            // right-hand side b = -(D^T D) v, columns a_L = (D^T Δ D) v
            let b: Vec<BigInt> = mat_vec(&gram, &vb).iter().map(|x| -x).collect();
            let cols: Vec<Vec<BigInt>> = folded.iter().map(|f| mat_vec(f, &vb)).collect();
            for z in solve_nonneg(&cols, &b, z_bound) {
                if !seen_z.insert(z.clone()) {
                    continue;
                }
                if let Some(hit) = try_candidate(pool, decomposition, &z)? {
                    hits.push(hit);
                    if !all_hits {
                        return Ok(SearchOutcome::Found(hits));
                    }
                }
            }
        }
        for pos in (0..m).rev() {
            if v[pos] < kernel_bound {
                v[pos] += 1;
                continue 'vectors;
            }
            v[pos] = -kernel_bound;
        }
        break;
    }
    Ok(done(hits))
}

/// Nonzero, primitive, and sign-normalized (first nonzero entry positive).
fn admissible_kernel_vector(v: &[i64]) -> bool {
    let first = v.iter().find(|&&x| x != 0);
    match first {
        None => false,
        Some(&x) if x < 0 => false,
        _ => {
            let g = v.iter().fold(0u64, |acc, &x| {
                num_integer::gcd(acc, x.unsigned_abs())
            });
            g == 1
        }
    }
}

fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
        })
        .collect()
}

/// All solutions z in [0, bound]^k of sum_L z_L cols[L] = b, by reduced row
/// echelon elimination over Q and odometer enumeration of the free columns.
fn solve_nonneg(cols: &[Vec<BigInt>], b: &[BigInt], bound: u64) -> Vec<Vec<u64>> {
    let k = cols.len();
    let m = b.len();
    // rational RREF of [A | b]
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            (0..=k)
                .map(|c| {
                    let v = if c < k { &cols[c][r] } else { &b[r] };
                    BigRational::from_integer(v.clone())
                })
                .collect()
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for c in 0..=k {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..=k {
                    let v = &a[r][c] - &factor * &a[row][c];
                    a[r][c] = v;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == m {
            break;
        }
    }
    // inconsistent system: a zero row of A with nonzero rhs
    for r in row..m {
        if !a[r][k].is_zero() {
            return Vec::new();
        }
    }
    let free: Vec<usize> = (0..k).filter(|&c| pivot_of_col[c].is_none()).collect();
    let mut out = Vec::new();
    let mut assignment = vec![0u64; free.len()];
    loop {
        // back-substitute pivots for this assignment of the free columns
        let mut z = vec![BigRational::zero(); k];
        for (fi, &c) in free.iter().enumerate() {
            z[c] = BigRational::from_integer(BigInt::from(assignment[fi]));
        }
        let mut ok = true;
        for col in 0..k {
            if let Some(r) = pivot_of_col[col] {
                let mut val = a[r][k].clone();
                for &fc in &free {
                    val -= &a[r][fc] * &z[fc];
                }
                if !val.is_integer() || val.is_negative()
                    || val.to_integer() > BigInt::from(bound)
                {
                    ok = false;
                    break;
                }
                z[col] = val;
            }
        }
        if ok {
            out.push(z.iter().map(|x| x.to_integer().try_into().unwrap()).collect());
        }
        // odometer over free coordinates; when there are none, one pass only
        if free.is_empty() {
            break;
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if assignment[pos] < bound {
                assignment[pos] += 1;
                for p in pos + 1..free.len() {
                    assignment[p] = 0;
                }
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub claims: Vec<Claim>,
    pub counterexample: Counterexample,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

/// Recompute everything from scratch for a multiset of subgroups with
/// multiplicities: Δ via subgroup averages and, when the biset fits the point
/// cap and `use_oracle` is set, independently via the explicit coset biset's
/// permutation-character multiplicities. Any disagreement between the two
/// routes is an internal inconsistency (hard error), not a failed claim.
pub fn verify_counterexample(
    table: &CharacterTable,
    named: &[(String, PairSubgroup)],
    multiplicities: &[u64],
    decomposition: &DecompositionMatrix,
    use_oracle: bool,
    point_cap: usize,
) -> Result<VerificationReport, HuntError> {
    let group = table.group();
    let pool = CandidatePool::from_subgroups(
        table,
        named.to_vec().into_iter().collect(),
    )?;
    check_labels(&pool, decomposition)?;
    decomposition.validate_against_group_order(group.order())?;
    if use_oracle {
        // per-subgroup single-block bisets
        for c in &pool.candidates {
            let biset = Biset::build(group, std::slice::from_ref(&c.subgroup), point_cap)?;
            for chi in 0..table.rows().len() {
                for eta in 0..table.rows().len() {
                    let direct = c.delta.labeled.matrix.at(chi, eta).clone();
                    let oracle = monoid::perm_char_multiplicity(&biset, table, chi, eta)?;
                    if direct != oracle {
                        return Err(HuntError::Inconsistency(format!(
                            "Δ({}) entry ({},{}) is {} by subgroup average but {} by the permutation-character oracle",
                            c.name, chi, eta, direct, oracle
                        )));
                    }
                }
            }
        }
        // the full biset: entries of C minus the identity must match
        let mut all_blocks = Vec::new();
        for (c, &z) in pool.candidates.iter().zip(multiplicities) {
            for _ in 0..z {
                all_blocks.push(c.subgroup.clone());
            }
        }
        let full = Biset::build(group, &all_blocks, point_cap)?;
        let deltas: Vec<DeltaMatrix> =
            pool.candidates.iter().map(|c| c.delta.clone()).collect();
        let complex = complex_cartan(&deltas, multiplicities)?;
        for chi in 0..table.rows().len() {
            for eta in 0..table.rows().len() {
                let expected = complex.labeled.matrix.at(chi, eta)
                    - BigInt::from(u64::from(chi == eta));
                let oracle = monoid::perm_char_multiplicity(&full, table, chi, eta)?;
                if expected != oracle {
                    return Err(HuntError::Inconsistency(format!(
                        "full-biset oracle disagrees at ({chi},{eta}): {expected} vs {oracle}"
                    )));
                }
            }
        }
    }
    let deltas: Vec<DeltaMatrix> = pool.candidates.iter().map(|c| c.delta.clone()).collect();
    let complex = complex_cartan(&deltas, multiplicities)?;
    let modular = modular_cartan(&complex, decomposition)?;
    let det_complex = complex.det();
    let det_modular = modular.det();
    let claims = vec![
        Claim {
            name: "complex Cartan matrix is non-singular".to_string(),
            passed: !det_complex.is_zero(),
            detail: format!("det = {det_complex}"),
        },
        Claim {
            name: format!("mod-{} Cartan matrix is singular", decomposition.prime),
            passed: det_modular.is_zero(),
            detail: format!("det = {det_modular}"),
        },
    ];
    let counterexample = Counterexample::build(&pool, multiplicities, complex, modular);
    Ok(VerificationReport {
        claims,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::chartab::CharacterTable;
    use std::sync::Arc;

    fn s3_pool() -> (Arc<PermGroup>, CharacterTable, CandidatePool, DecompositionMatrix) {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let named = vec![
            ("diag".to_string(), builtin::s3_pair_subgroup(&g, "diag").unwrap()),
            ("Lb".to_string(), builtin::s3_pair_subgroup(&g, "Lb").unwrap()),
            ("Lc".to_string(), builtin::s3_pair_subgroup(&g, "Lc").unwrap()),
        ];
        let pool = CandidatePool::from_subgroups(&t, named).unwrap();
        (g, t, pool, builtin::s3_decomposition_p3())
    }

    #[test]
    fn box_search_finds_small_counterexample() {
        let (_, _, pool, d) = s3_pool();
        let outcome = search_bruteforce(&pool, &d, 10, None, false).unwrap();
        let SearchOutcome::Found(hits) = outcome else {
            panic!("expected a hit");
        };
        assert_eq!(hits[0].multiplicities, vec![0, 1, 6]);
        assert_eq!(hits[0].det_complex, BigInt::from(16));
        assert_eq!(hits[0].det_modular, BigInt::zero());
    }

    #[test]
    fn box_search_exhausts_when_decomposition_is_invertible() {
        let (_, t, pool, _) = s3_pool();
        let d = builtin::identity_decomposition(&t.labels(), 5);
        let outcome = search_bruteforce(&pool, &d, 4, None, false).unwrap();
        assert!(matches!(outcome, SearchOutcome::Exhausted));
    }

    #[test]
    fn empty_pool_exhausts_immediately() {
        let (_, t, _, d) = s3_pool();
        let pool = CandidatePool::from_subgroups(&t, vec![]).unwrap();
        let outcome = search_bruteforce(&pool, &d, 10, None, false).unwrap();
        assert!(matches!(outcome, SearchOutcome::Exhausted));
    }

    #[test]
    fn kernel_guided_reaches_published_multiplicities() {
        let (_, _, pool, d) = s3_pool();
        let outcome = search_kernel_guided(&pool, &d, 32, 500, true).unwrap();
        let SearchOutcome::Found(hits) = outcome else {
            panic!("expected hits");
        };
        assert!(hits
            .iter()
            .any(|h| h.multiplicities == vec![4, 2, 165]));
    }

    #[test]
    fn kernel_guided_exhausts_for_invertible_decomposition() {
        let (_, t, pool, _) = s3_pool();
        let d = builtin::identity_decomposition(&t.labels(), 5);
        let outcome = search_kernel_guided(&pool, &d, 4, 20, false).unwrap();
        assert!(matches!(outcome, SearchOutcome::Exhausted));
    }

    #[test]
    fn verify_paper_configuration() {
        let (_, t, _, d) = s3_pool();
        let g = t.group().clone();
        let named = vec![
            ("diag".to_string(), builtin::s3_pair_subgroup(&g, "diag").unwrap()),
            ("Lb".to_string(), builtin::s3_pair_subgroup(&g, "Lb").unwrap()),
            ("Lc".to_string(), builtin::s3_pair_subgroup(&g, "Lc").unwrap()),
        ];
        let report =
            verify_counterexample(&t, &named, &[4, 2, 165], &d, true, 50_000).unwrap();
        assert!(report.passed());
        assert_eq!(report.counterexample.det_complex, BigInt::from(6050));
        assert_eq!(report.counterexample.det_modular, BigInt::zero());
        assert_eq!(
            report.counterexample.kernel_vector,
            vec![BigInt::from(16), BigInt::from(-17)]
        );
    }

    #[test]
    fn verify_reports_failure_for_zero_multiplicities() {
        let (_, t, _, d) = s3_pool();
        let g = t.group().clone();
        let named = vec![(
            "diag".to_string(),
            builtin::s3_pair_subgroup(&g, "diag").unwrap(),
        )];
        let report = verify_counterexample(&t, &named, &[0], &d, false, 50_000).unwrap();
        assert!(!report.passed());
        // det of D^T D = 3
        assert_eq!(report.counterexample.det_modular, BigInt::from(3));
    }

    #[test]
    fn enumerated_pool_for_c2_has_five_subgroups() {
        let g = Arc::new(builtin::group("C2").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let pool = enumerate_pair_subgroups(&g, &t, 100, 2, 512).unwrap();
        assert!(!pool.truncated);
        assert_eq!(pool.candidates.len(), 5);
    }

    #[test]
    fn enumerated_pool_for_s3_contains_builtin_subgroups() {
        let g = Arc::new(builtin::group("S3").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let pool = enumerate_pair_subgroups(&g, &t, 100, 2, 512).unwrap();
        assert!(!pool.truncated);
        for name in ["diag", "Lb", "Lc"] {
            let target = conjugacy_canonical_form(
                &g,
                &builtin::s3_pair_subgroup(&g, name).unwrap(),
            );
            assert!(
                pool.candidates
                    .iter()
                    .any(|c| conjugacy_canonical_form(&g, &c.subgroup) == target),
                "{name} missing from the enumerated pool"
            );
        }
    }

    #[test]
    fn trivial_group_pool() {
        let g = Arc::new(builtin::group("trivial").unwrap());
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let pool = enumerate_pair_subgroups(&g, &t, 100, 2, 512).unwrap();
        assert_eq!(pool.candidates.len(), 1);
    }

    #[test]
    fn default_active_excludes_nondiagonal_identity_deltas() {
        let (g, _, pool, _) = s3_pool();
        let active = pool.default_active(&g);
        // diag has identity Δ but stays; Lb and Lc have non-identity Δ
        assert_eq!(active, vec![0, 1, 2]);
    }
}
