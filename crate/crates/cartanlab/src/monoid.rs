//! Explicit construction of the biset X = ⊎ (G×G)/L_i, the monoid
//! M(G, X) = G ⊎ X ⊎ {z} with its full multiplication table, Green's
//! J-classes, and the brute-force permutation-character oracle for Δ entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::chartab::{CharTabError, CharacterTable};
use crate::cyclo::Rat;
use crate::group::{PairSubgroup, PermGroup};

pub const DEFAULT_POINT_CAP: usize = 50_000;
pub const DEFAULT_MONOID_CAP: usize = 4_000;
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 400;
pub const SAMPLED_ASSOC_TRIPLES: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum MonoidError {
    #[error("biset would exceed the point cap of {0} points")]
    PointCapExceeded(usize),
    #[error("monoid of size {0} exceeds the table cap of {1} elements")]
    TableCapExceeded(usize, usize),
    #[error(transparent)]
    CharTab(#[from] CharTabError),
    #[error("permutation-character multiplicity of ({0},{1}) is not a non-negative integer: {2}")]
    NotAnInteger(String, String, String),
}

/// One block of the biset: the coset space (G×G)/L with both monoid actions.
/// Cosets are labeled by their minimal element under the canonical pair
/// order, making point indices deterministic.
#[derive(Debug)]
pub struct BisetBlock {
    pub subgroup: PairSubgroup,
    /// minimal coset representatives, sorted
    pub cosets: Vec<(usize, usize)>,
}

/// The (G,G)-biset ⊎_i (G×G)/L_i as an explicit point set with action
/// tables. Point p of block i is global index `offsets[i] + p`.
#[derive(Debug)]
pub struct Biset {
    pub blocks: Vec<BisetBlock>,
    pub offsets: Vec<usize>,
    pub size: usize,
    /// left[g][x] = g·x, right[g][x] = x·g
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl Biset {
    /// Build from subgroups of G×G; each subgroup contributes one coset block.
    /// Repeat a subgroup in the slice to take multiple copies.
    pub fn build(
        group: &PermGroup,
        subgroups: &[PairSubgroup],
        point_cap: usize,
    ) -> Result<Self, MonoidError> {
        let order_sq = group.order() * group.order();
        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut size = 0usize;
        for sub in subgroups {
            let count = order_sq / sub.order();
            if size + count > point_cap {
                return Err(MonoidError::PointCapExceeded(point_cap));
            }
            offsets.push(size);
            size += count;
            blocks.push(BisetBlock {
                subgroup: sub.clone(),
                cosets: enumerate_cosets(group, sub),
            });
        }
        let mut biset = Biset {
            blocks,
            offsets,
            size,
            left: Vec::new(),
            right: Vec::new(),
        };
        biset.build_action_tables(group);
        Ok(biset)
    }

    fn build_action_tables(&mut self, group: &PermGroup) {
        let n = group.order();
        let mut left = vec![vec![0usize; self.size]; n];
        let mut right = vec![vec![0usize; self.size]; n];
        for (bi, block) in self.blocks.iter().enumerate() {
            let base = self.offsets[bi];
            let lookup: std::collections::HashMap<(usize, usize), usize> = block
                .cosets
                .iter()
                .enumerate()
                .map(|(i, &rep)| (rep, base + i))
                .collect();
            for g in 0..n {
                let ginv = group.inv_idx(g);
                for (i, &(a, b)) in block.cosets.iter().enumerate() {
                    // left: g·(a,b)L = (ga, b)L ; right: (a,b)L·g = (a, g^-1 b)L
                    let l_rep = coset_rep(group, &block.subgroup, group.mul_idx(g, a), b);
                    let r_rep = coset_rep(group, &block.subgroup, a, group.mul_idx(ginv, b));
                    left[g][base + i] = lookup[&l_rep];
                    right[g][base + i] = lookup[&r_rep];
                }
            }
        }
        self.left = left;
        self.right = right;
    }

    #[inline]
    pub fn left_act(&self, g: usize, x: usize) -> usize {
        self.left[g][x]
    }

    #[inline]
    pub fn right_act(&self, g: usize, x: usize) -> usize {
        self.right[g][x]
    }

    pub fn block_of(&self, x: usize) -> usize {
        match self.offsets.binary_search(&x) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    /// Fixed points of the pair (g, h) acting by x -> g·x·h^-1.
    pub fn fixed_points(&self, group: &PermGroup, g: usize, h: usize) -> usize {
        let hinv = group.inv_idx(h);
        (0..self.size)
            .filter(|&x| self.right_act(hinv, self.left_act(g, x)) == x)
            .count()
    }
}

fn enumerate_cosets(group: &PermGroup, sub: &PairSubgroup) -> Vec<(usize, usize)> {
    // BFS over the transitive G×G-action starting from the trivial coset
    let id = group.identity_index();
    let start = coset_rep(group, sub, id, id);
    let mut seen = std::collections::HashSet::new();
    seen.insert(start);
    let mut queue = std::collections::VecDeque::from([start]);
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for g in group.generators() {
        let gi = group.index_of(g).expect("generator is a member");
        gens.push((gi, id));
        gens.push((id, gi));
    }
    while let Some((a, b)) = queue.pop_front() {
        for &(ga, gb) in &gens {
            let rep = coset_rep(group, sub, group.mul_idx(ga, a), group.mul_idx(gb, b));
            if seen.insert(rep) {
                queue.push_back(rep);
            }
        }
    }
    let mut cosets: Vec<(usize, usize)> = seen.into_iter().collect();
    cosets.sort_unstable();
    cosets
}

/// Minimal element of the left coset (a,b)·L under the canonical pair order.
fn coset_rep(group: &PermGroup, sub: &PairSubgroup, a: usize, b: usize) -> (usize, usize) {
    sub.elements
        .iter()
        .map(|&(l1, l2)| (group.mul_idx(a, l1), group.mul_idx(b, l2)))
        .min()
        .expect("subgroups are nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElementKind {
    Group,
    Biset,
    Zero,
}

/// The finite monoid M(G, X) with its full multiplication table.
/// Element order: the G-block (canonical group order, identity first), the
/// X-block (point order), then the zero z.
pub struct Monoid {
    pub group_order: usize,
    pub biset_size: usize,
    table: Vec<u32>,
}

impl Monoid {
    pub fn build(group: &PermGroup, biset: &Biset) -> Result<Self, MonoidError> {
        Self::build_with_cap(group, biset, DEFAULT_MONOID_CAP)
    }

    pub fn build_with_cap(
        group: &PermGroup,
        biset: &Biset,
        cap: usize,
    ) -> Result<Self, MonoidError> {
        let n = group.order();
        let m = n + biset.size + 1;
        if m > cap {
            return Err(MonoidError::TableCapExceeded(m, cap));
        }
        let zero = m - 1;
        let mut table = vec![zero as u32; m * m];
        for a in 0..n {
            for b in 0..n {
                table[a * m + b] = group.mul_idx(a, b) as u32;
            }
            for x in 0..biset.size {
                table[a * m + (n + x)] = (n + biset.left_act(a, x)) as u32;
                table[(n + x) * m + a] = (n + biset.right_act(a, x)) as u32;
            }
        }
        // x·y = z for x, y in X, and z absorbs; both already hold from the
        // zero initialization of the table.
        Ok(Monoid {
            group_order: n,
            biset_size: biset.size,
            table,
        })
    }

    pub fn size(&self) -> usize {
        self.group_order + self.biset_size + 1
    }

    pub fn zero_index(&self) -> usize {
        self.size() - 1
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b] as usize
    }

    pub fn kind(&self, a: usize) -> ElementKind {
        if a < self.group_order {
            ElementKind::Group
        } else if a < self.group_order + self.biset_size {
            ElementKind::Biset
        } else {
            ElementKind::Zero
        }
    }

    /// Exhaustive associativity check up to `EXHAUSTIVE_ASSOC_LIMIT` elements;
    /// above that, a fixed-size seeded random sample of triples.
    pub fn check_associativity(&self, seed: u64) -> AssociativityReport {
        let m = self.size();
        if m <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..m {
                for b in 0..m {
                    let ab = self.mul(a, b);
                    for c in 0..m {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return AssociativityReport {
                                exhaustive: true,
                                triples_checked: m * m * m,
                                failure: Some((a, b, c)),
                            };
                        }
                    }
                }
            }
            AssociativityReport {
                exhaustive: true,
                triples_checked: m * m * m,
                failure: None,
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                let c = rng.gen_range(0..m);
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return AssociativityReport {
                        exhaustive: false,
                        triples_checked: SAMPLED_ASSOC_TRIPLES,
                        failure: Some((a, b, c)),
                    };
                }
            }
            AssociativityReport {
                exhaustive: false,
                triples_checked: SAMPLED_ASSOC_TRIPLES,
                failure: None,
            }
        }
    }

    /// Structural invariants besides associativity: z absorbs, X·X = {z},
    /// the G-block restriction is the group multiplication (true by
    /// construction but re-checked from the table).
    pub fn check_structure(&self, group: &PermGroup) -> bool {
        let m = self.size();
        let z = self.zero_index();
        let n = self.group_order;
        for a in 0..m {
            if self.mul(a, z) != z || self.mul(z, a) != z {
                return false;
            }
        }
        for x in n..n + self.biset_size {
            for y in n..n + self.biset_size {
                if self.mul(x, y) != z {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.mul(a, b) != group.mul_idx(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Green's J-classes by mutual two-sided principal ideal membership,
    /// with a regularity flag per class.
    pub fn green_j_report(&self) -> JClassReport {
        let m = self.size();
        let words = m.div_ceil(64);
        // ideal[x] = bitset of M x M
        let mut ideals: Vec<Vec<u64>> = Vec::with_capacity(m);
        for x in 0..m {
            let mut bits = vec![0u64; words];
            // Mx first, then union of rows wM
            let mut mx = Vec::with_capacity(m);
            let mut seen = vec![false; m];
            for a in 0..m {
                let w = self.mul(a, x);
                if !seen[w] {
                    seen[w] = true;
                    mx.push(w);
                }
            }
            for w in mx {
                for b in 0..m {
                    let y = self.mul(w, b);
                    bits[y / 64] |= 1 << (y % 64);
                }
            }
            ideals.push(bits);
        }
        let in_ideal = |ideal: &[u64], y: usize| ideal[y / 64] & (1 << (y % 64)) != 0;
        let mut class_of = vec![usize::MAX; m];
        let mut classes: Vec<JClass> = Vec::new();
        for x in 0..m {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (x..m)
                .filter(|&y| {
                    class_of[y] == usize::MAX
                        && in_ideal(&ideals[x], y)
                        && in_ideal(&ideals[y], x)
                })
                .collect();
            let regular = members.iter().any(|&v| {
                (0..m).any(|a| self.mul(self.mul(v, a), v) == v)
            });
            let id = classes.len();
            for &v in &members {
                class_of[v] = id;
            }
            classes.push(JClass { members, regular });
        }
        JClassReport { classes }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AssociativityReport {
    pub exhaustive: bool,
    pub triples_checked: usize,
    pub failure: Option<(usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JClass {
    pub members: Vec<usize>,
    pub regular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct JClassReport {
    pub classes: Vec<JClass>,
}

impl JClassReport {
    pub fn non_regular_count(&self) -> usize {
        self.classes.iter().filter(|c| !c.regular).count()
    }
}

/// Independent oracle for Δ entries: the multiplicity of chi ⊗ eta-bar in the
/// permutation character of X, computed from fixed-point counts classwise
/// over pairs of conjugacy classes.
pub fn perm_char_multiplicity(
    biset: &Biset,
    table: &CharacterTable,
    chi: usize,
    eta: usize,
) -> Result<BigInt, MonoidError> {
    let group = table.group();
    let classes = group.classes();
    let conductor = table.conductor();
    let mut sum = crate::cyclo::Cyclotomic::zero(conductor);
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let fix = biset.fixed_points(group, ci.representative, cj.representative);
            if fix == 0 {
                continue;
            }
            let weight = BigInt::from(ci.size() * cj.size() * fix);
            let term = table.rows()[chi].values[i]
                .conj()
                .mul(&table.rows()[eta].values[j])
                .map_err(CharTabError::from)?
                .scale(&Rat::from_integer(weight));
            sum = sum.add(&term).map_err(CharTabError::from)?;
        }
    }
    let order_sq = BigInt::from(group.order()) * BigInt::from(group.order());
    let avg = sum.scale(&BigRational::new(BigInt::one(), order_sq));
    match avg.as_integer() {
        Some(v) if !v.is_negative() => Ok(v),
        _ => Err(MonoidError::NotAnInteger(
            table.rows()[chi].label.clone(),
            table.rows()[eta].label.clone(),
            avg.to_string(),
        )),
    }
}

/// Plain-text multiplication table, one row of element indices per line.
pub fn export_table_text(monoid: &Monoid) -> String {
    let m = monoid.size();
    let mut out = String::new();
    for a in 0..m {
        for b in 0..m {
            if b > 0 {
                out.push(' ');
            }
            out.push_str(&monoid.mul(a, b).to_string());
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
pub struct MonoidExport {
    pub size: usize,
    pub group_order: usize,
    pub biset_size: usize,
    pub elements: Vec<MonoidElementMeta>,
}

#[derive(Debug, Serialize)]
pub struct MonoidElementMeta {
    pub index: usize,
    pub kind: ElementKind,
    pub block: Option<usize>,
    pub description: String,
}

pub fn export_metadata(group: &PermGroup, biset: &Biset, monoid: &Monoid) -> MonoidExport {
    let n = group.order();
    let elements = (0..monoid.size())
        .map(|i| {
            let (kind, block, description) = match monoid.kind(i) {
                ElementKind::Group => (
                    ElementKind::Group,
                    None,
                    group.element(i).to_string(),
                ),
                ElementKind::Biset => {
                    let x = i - n;
                    let b = biset.block_of(x);
                    let (a, c) = biset.blocks[b].cosets[x - biset.offsets[b]];
                    (
                        ElementKind::Biset,
                        Some(b),
                        format!(
                            "coset ({},{})",
                            group.element(a),
                            group.element(c)
                        ),
                    )
                }
                ElementKind::Zero => (ElementKind::Zero, None, "z".to_string()),
            };
            MonoidElementMeta {
                index: i,
                kind,
                block,
                description,
            }
        })
        .collect();
    MonoidExport {
        size: monoid.size(),
        group_order: n,
        biset_size: biset.size,
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use num_traits::Zero;
    use crate::chartab::CharacterTable;
    use std::sync::Arc;

    fn s3() -> Arc<PermGroup> {
        Arc::new(builtin::group("S3").unwrap())
    }

    #[test]
    fn biset_sizes() {
        let g = s3();
        let whole = PairSubgroup::generated_by_indices(
            &g,
            &(0..g.order())
                .flat_map(|i| [(i, 0), (0, i)])
                .collect::<Vec<_>>(),
        );
        assert_eq!(whole.order(), 36);
        let b = Biset::build(&g, &[whole], DEFAULT_POINT_CAP).unwrap();
        assert_eq!(b.size, 1);

        let lb = builtin::s3_pair_subgroup(&g, "Lb").unwrap();
        let b = Biset::build(&g, &[lb], DEFAULT_POINT_CAP).unwrap();
        assert_eq!(b.size, 18);
    }

    #[test]
    fn published_configuration_point_count() {
        let g = s3();
        let mut subs = Vec::new();
        for _ in 0..4 {
            subs.push(builtin::s3_pair_subgroup(&g, "diag").unwrap());
        }
        for _ in 0..2 {
            subs.push(builtin::s3_pair_subgroup(&g, "Lb").unwrap());
        }
        for _ in 0..165 {
            subs.push(builtin::s3_pair_subgroup(&g, "Lc").unwrap());
        }
        let b = Biset::build(&g, &subs, DEFAULT_POINT_CAP).unwrap();
        // indices: 36/6 = 6 for the diagonal, 36/2 = 18 for Lb, 36/18 = 2 for Lc
        assert_eq!(b.size, 4 * 6 + 2 * 18 + 165 * 2);
    }

    #[test]
    fn biset_actions_commute() {
        let g = s3();
        let lb = builtin::s3_pair_subgroup(&g, "Lb").unwrap();
        let diag = builtin::s3_pair_subgroup(&g, "diag").unwrap();
        let b = Biset::build(&g, &[lb, diag], DEFAULT_POINT_CAP).unwrap();
        for gi in 0..g.order() {
            for h in 0..g.order() {
                for x in 0..b.size {
                    assert_eq!(
                        b.right_act(h, b.left_act(gi, x)),
                        b.left_act(gi, b.right_act(h, x))
                    );
                }
            }
        }
    }

    #[test]
    fn empty_biset_monoid_is_group_with_zero() {
        let g = s3();
        let b = Biset::build(&g, &[], DEFAULT_POINT_CAP).unwrap();
        let m = Monoid::build(&g, &b).unwrap();
        assert_eq!(m.size(), 7);
        assert!(m.check_associativity(0).passed());
        assert!(m.check_structure(&g));
        let report = m.green_j_report();
        assert_eq!(report.classes.len(), 2);
        assert!(report.classes.iter().all(|c| c.regular));
    }

    #[test]
    fn lb_monoid_structure() {
        let g = s3();
        let lb = builtin::s3_pair_subgroup(&g, "Lb").unwrap();
        let b = Biset::build(&g, &[lb], DEFAULT_POINT_CAP).unwrap();
        let m = Monoid::build(&g, &b).unwrap();
        assert_eq!(m.size(), 25);
        assert!(m.check_associativity(0).passed());
        assert!(m.check_structure(&g));
        let report = m.green_j_report();
        assert_eq!(report.classes.len(), 3);
        assert_eq!(report.non_regular_count(), 1);
        let non_regular = report.classes.iter().find(|c| !c.regular).unwrap();
        assert_eq!(non_regular.members.len(), 18);
    }

    #[test]
    fn oracle_agrees_with_subgroup_average() {
        let g = s3();
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        for name in ["diag", "Lb", "Lc"] {
            let sub = builtin::s3_pair_subgroup(&g, name).unwrap();
            let b = Biset::build(&g, std::slice::from_ref(&sub), DEFAULT_POINT_CAP).unwrap();
            for chi in 0..3 {
                for eta in 0..3 {
                    assert_eq!(
                        perm_char_multiplicity(&b, &t, chi, eta).unwrap(),
                        t.subgroup_average(chi, eta, &sub).unwrap(),
                        "{name} ({chi},{eta})"
                    );
                }
            }
        }
    }

    #[test]
    fn empty_biset_multiplicities_vanish() {
        let g = s3();
        let t = CharacterTable::dixon(Arc::clone(&g)).unwrap();
        let b = Biset::build(&g, &[], DEFAULT_POINT_CAP).unwrap();
        for chi in 0..3 {
            for eta in 0..3 {
                assert_eq!(
                    perm_char_multiplicity(&b, &t, chi, eta).unwrap(),
                    BigInt::zero()
                );
            }
        }
    }

    #[test]
    fn point_cap_enforced() {
        let g = s3();
        let lb = builtin::s3_pair_subgroup(&g, "Lb").unwrap();
        let err = Biset::build(&g, &[lb], 10).unwrap_err();
        assert!(matches!(err, MonoidError::PointCapExceeded(10)));
    }
}
