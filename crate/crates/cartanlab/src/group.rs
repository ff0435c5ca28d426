//! Finite permutation groups by full element enumeration, their conjugacy
//! classes, subgroups, and subgroups of G×G given as pairs.
//!
//! Everything is deterministic: elements are listed in lexicographic order on
//! image arrays, classes are ordered by (element order, size, minimal
//! representative). All matrix row/column orders downstream inherit from this.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use thiserror::Error;

use crate::perm::{PermError, Permutation};

pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generators have mixed degrees: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("closure exceeded the element cap of {0}")]
    ElementCapExceeded(usize),
    #[error("element {0} does not lie in the parent group")]
    NotInParent(String),
    #[error("explicit element set is not closed: product of {0} and {1} is missing")]
    NotClosed(String, String),
    #[error("explicit element set is empty")]
    EmptySet,
}

/// A conjugacy class: indices into the parent group's element list.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub element_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite permutation group with its full element list enumerated.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Vec<usize>, usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    inverse_of: Vec<usize>,
}

impl PermGroup {
    pub fn generated(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::generated_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generated_with_cap(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut elements = closure(degree, &generators, cap, Permutation::identity(degree), |a, b| {
            a.mul(b)
        })?;
        elements.sort();
        let index: HashMap<Vec<usize>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        let mut group = PermGroup {
            degree,
            generators,
            elements,
            index,
            classes: Vec::new(),
            class_of: Vec::new(),
            inverse_of: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p.images()).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Product by element indices.
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul(&self.elements[b]);
        self.index[p.images()]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.inverse_of[a]
    }

    pub fn identity_index(&self) -> usize {
        // identity is lexicographically minimal, hence element 0
        0
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    /// Class index of the inverse of the representative of class `k`.
    pub fn inverse_class(&self, k: usize) -> usize {
        let rep = self.classes[k].representative;
        self.class_of[self.inverse_of[rep]]
    }

    pub fn exponent(&self) -> usize {
        self.elements
            .iter()
            .fold(1usize, |acc, p| acc.lcm(&p.order()))
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        self.inverse_of = (0..n)
            .map(|i| self.index[self.elements[i].inverse().images()])
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            // conjugation orbit of `start` under the generators
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            class_of[start] = usize::MAX - 1; // visited marker
            while let Some(cur) = queue.pop_front() {
                for g in &self.generators {
                    let conj = self.elements[cur].conjugate_by(g);
                    let idx = self.index[conj.images()];
                    if class_of[idx] == usize::MAX {
                        class_of[idx] = usize::MAX - 1;
                        members.push(idx);
                        queue.push_back(idx);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: members[0],
                element_order: self.elements[members[0]].order(),
                members,
            });
        }
        classes.sort_by(|a, b| {
            (a.element_order, a.size(), a.representative)
                .cmp(&(b.element_order, b.size(), b.representative))
        });
        for (k, class) in classes.iter().enumerate() {
            for &m in &class.members {
                class_of[m] = k;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }
}

/// A subgroup of an enumerated group, kept as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub element_indices: Vec<usize>,
}

impl Subgroup {
    pub fn generated(parent: &PermGroup, generators: &[Permutation]) -> Result<Self, GroupError> {
        let mut gen_idx = Vec::new();
        for g in generators {
            let idx = parent
                .index_of(g)
                .ok_or_else(|| GroupError::NotInParent(g.to_string()))?;
            gen_idx.push(idx);
        }
        Ok(Self::generated_by_indices(parent, &gen_idx))
    }

    pub fn generated_by_indices(parent: &PermGroup, gen_idx: &[usize]) -> Self {
        let id = parent.identity_index();
        let mut seen = vec![false; parent.order()];
        seen[id] = true;
        let mut elements = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(cur) = queue.pop_front() {
            for &g in gen_idx {
                let next = parent.mul_idx(cur, g);
                if !seen[next] {
                    seen[next] = true;
                    elements.push(next);
                    queue.push_back(next);
                }
            }
        }
        elements.sort_unstable();
        Subgroup {
            element_indices: elements,
        }
    }

    pub fn trivial(parent: &PermGroup) -> Self {
        Subgroup {
            element_indices: vec![parent.identity_index()],
        }
    }

    pub fn whole(parent: &PermGroup) -> Self {
        Subgroup {
            element_indices: (0..parent.order()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.element_indices.len()
    }
}

/// How a subgroup of G×G was built; `Product` and `Diagonal` enable the
/// factored evaluation path for Δ entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairKind {
    General,
    Diagonal,
    Product { left: Subgroup, right: Subgroup },
}

/// A subgroup of G×G, stored as sorted pairs of element indices into G.
#[derive(Debug, Clone)]
pub struct PairSubgroup {
    pub elements: Vec<(usize, usize)>,
    pub kind: PairKind,
}

impl PairSubgroup {
    pub fn generated(
        parent: &PermGroup,
        generator_pairs: &[(Permutation, Permutation)],
    ) -> Result<Self, GroupError> {
        Self::generated_with_cap(parent, generator_pairs, DEFAULT_ELEMENT_CAP)
    }

    pub fn generated_with_cap(
        parent: &PermGroup,
        generator_pairs: &[(Permutation, Permutation)],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let mut gens = Vec::new();
        for (a, b) in generator_pairs {
            let ia = parent
                .index_of(a)
                .ok_or_else(|| GroupError::NotInParent(a.to_string()))?;
            let ib = parent
                .index_of(b)
                .ok_or_else(|| GroupError::NotInParent(b.to_string()))?;
            gens.push((ia, ib));
        }
        Ok(Self::generated_by_indices_with_cap(parent, &gens, cap)?)
    }

    pub fn generated_by_indices(parent: &PermGroup, gens: &[(usize, usize)]) -> Self {
        Self::generated_by_indices_with_cap(parent, gens, DEFAULT_ELEMENT_CAP)
            .expect("pair closure within |G|^2 must fit the default cap")
    }

    pub fn generated_by_indices_with_cap(
        parent: &PermGroup,
        gens: &[(usize, usize)],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let id = (parent.identity_index(), parent.identity_index());
        let mut seen = HashMap::new();
        seen.insert(id, ());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some((a, b)) = queue.pop_front() {
            for &(ga, gb) in gens {
                let next = (parent.mul_idx(a, ga), parent.mul_idx(b, gb));
                if !seen.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(GroupError::ElementCapExceeded(cap));
                    }
                    seen.insert(next, ());
                    elements.push(next);
                    queue.push_back(next);
                }
            }
        }
        elements.sort_unstable();
        Ok(PairSubgroup {
            elements,
            kind: PairKind::General,
        })
    }

    /// Accept an explicit element list as-is, verifying closure under the
    /// pairwise product (a witness pair is reported on failure). The set is
    /// never silently completed.
    pub fn from_element_set(
        parent: &PermGroup,
        pairs: &[(Permutation, Permutation)],
    ) -> Result<Self, GroupError> {
        if pairs.is_empty() {
            return Err(GroupError::EmptySet);
        }
        let mut elements = Vec::new();
        for (a, b) in pairs {
            let ia = parent
                .index_of(a)
                .ok_or_else(|| GroupError::NotInParent(a.to_string()))?;
            let ib = parent
                .index_of(b)
                .ok_or_else(|| GroupError::NotInParent(b.to_string()))?;
            elements.push((ia, ib));
        }
        elements.sort_unstable();
        elements.dedup();
        let member: std::collections::HashSet<(usize, usize)> = elements.iter().copied().collect();
        for &(a1, b1) in &elements {
            for &(a2, b2) in &elements {
                let prod = (parent.mul_idx(a1, a2), parent.mul_idx(b1, b2));
                if !member.contains(&prod) {
                    return Err(GroupError::NotClosed(
                        format!("({},{})", parent.element(a1), parent.element(b1)),
                        format!("({},{})", parent.element(a2), parent.element(b2)),
                    ));
                }
            }
        }
        Ok(PairSubgroup {
            elements,
            kind: PairKind::General,
        })
    }

    /// The diagonal {(g, g) : g in G}.
    pub fn diagonal(parent: &PermGroup) -> Self {
        PairSubgroup {
            elements: (0..parent.order()).map(|i| (i, i)).collect(),
            kind: PairKind::Diagonal,
        }
    }

    /// The direct product H1 × H2 of two subgroups of G.
    pub fn product(h1: Subgroup, h2: Subgroup) -> Self {
        let mut elements = Vec::with_capacity(h1.order() * h2.order());
        for &a in &h1.element_indices {
            for &b in &h2.element_indices {
                elements.push((a, b));
            }
        }
        elements.sort_unstable();
        PairSubgroup {
            elements,
            kind: PairKind::Product {
                left: h1,
                right: h2,
            },
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Conjugate by (t1, t2) in G×G.
    pub fn conjugate(&self, parent: &PermGroup, t1: usize, t2: usize) -> Self {
        let it1 = parent.inv_idx(t1);
        let it2 = parent.inv_idx(t2);
        let mut elements: Vec<(usize, usize)> = self
            .elements
            .iter()
            .map(|&(a, b)| {
                (
                    parent.mul_idx(parent.mul_idx(t1, a), it1),
                    parent.mul_idx(parent.mul_idx(t2, b), it2),
                )
            })
            .collect();
        elements.sort_unstable();
        PairSubgroup {
            elements,
            kind: PairKind::General,
        }
    }
}

fn closure<T, F>(
    _degree: usize,
    generators: &[Permutation],
    cap: usize,
    identity: T,
    mul: F,
) -> Result<Vec<T>, GroupError>
where
    T: Clone + std::hash::Hash + Eq,
    F: Fn(&T, &Permutation) -> T,
{
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(cur) = queue.pop_front() {
        for g in generators {
            let next = mul(&cur, g);
            if !seen.contains(&next) {
                if elements.len() >= cap {
                    return Err(GroupError::ElementCapExceeded(cap));
                }
                seen.insert(next.clone());
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn s3() -> PermGroup {
        PermGroup::generated(
            3,
            vec![
                Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap(),
                Permutation::from_cycles_one_based(3, &[vec![1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_generating_set_gives_trivial_group() {
        let g = PermGroup::generated(1, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes().len(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn s3_closure_and_classes() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(g.exponent(), 6);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn cyclic_group_order_equals_element_order() {
        let c4 = PermGroup::generated(
            4,
            vec![Permutation::from_cycles_one_based(4, &[vec![1, 2, 3, 4]]).unwrap()],
        )
        .unwrap();
        assert_eq!(c4.order(), 4);
        // abelian: singleton classes
        assert!(c4.classes().iter().all(|c| c.size() == 1));
        assert_eq!(c4.classes().len(), 4);
    }

    #[test]
    fn closure_is_generator_order_independent() {
        let a = Permutation::from_cycles_one_based(4, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles_one_based(4, &[vec![1, 2, 3, 4]]).unwrap();
        let g1 = PermGroup::generated(4, vec![a.clone(), b.clone()]).unwrap();
        let g2 = PermGroup::generated(4, vec![b, a]).unwrap();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn element_cap_is_enforced() {
        let a = Permutation::from_cycles_one_based(4, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles_one_based(4, &[vec![1, 2, 3, 4]]).unwrap();
        let err = PermGroup::generated_with_cap(4, vec![a, b], 10).unwrap_err();
        assert!(matches!(err, GroupError::ElementCapExceeded(10)));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap();
        assert!(matches!(
            PermGroup::generated(4, vec![a]),
            Err(GroupError::DegreeMismatch(4, 3))
        ));
    }

    #[test]
    fn diagonal_pair_subgroup_has_group_order() {
        let g = s3();
        let t = Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap();
        let c = Permutation::from_cycles_one_based(3, &[vec![1, 2, 3]]).unwrap();
        let diag = PairSubgroup::generated(&g, &[(t.clone(), t), (c.clone(), c)]).unwrap();
        assert_eq!(diag.order(), 6);
        assert_eq!(diag.elements, PairSubgroup::diagonal(&g).elements);
    }

    #[test]
    fn lb_has_order_two() {
        let g = s3();
        let id = Permutation::identity(3);
        let t = Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap();
        let lb = PairSubgroup::generated(&g, &[(id, t)]).unwrap();
        assert_eq!(lb.order(), 2);
    }

    #[test]
    fn antidiagonal_set_rejected_as_not_closed() {
        // {(g, g^-1)} is not closed under componentwise product in nonabelian G
        let g = s3();
        let pairs: Vec<(Permutation, Permutation)> = g
            .elements()
            .iter()
            .map(|p| (p.clone(), p.inverse()))
            .collect();
        let err = PairSubgroup::from_element_set(&g, &pairs).unwrap_err();
        assert!(matches!(err, GroupError::NotClosed(_, _)));
    }

    #[test]
    fn group_axioms_hold_on_sampled_triples() {
        let g = s3();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul_idx(g.mul_idx(a, b), c), g.mul_idx(a, g.mul_idx(b, c)));
                }
                assert_eq!(g.mul_idx(a, g.inv_idx(a)), g.identity_index());
            }
        }
    }
}
