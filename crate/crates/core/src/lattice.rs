//! The intersection poset of B(n,k,A).
//!
//! An intersection X is identified by its closure: the set of all L with
//! X ⊆ D_L, computed as span membership of the discriminantal normals. The
//! enumeration is level-by-level (rank r elements meet single hyperplanes),
//! deduplicated by the closure key, and deterministic: candidates are
//! generated in lexicographic order and each level is sorted by closure.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use crate::arrangement::Label;
use crate::combin::k_subsets;
use crate::discriminantal::{Discriminantal, IndexSet};
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::par;

/// An element of the intersection poset, identified by its closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    /// Sorted positions (into the lexicographic hyperplane list) of all D_L
    /// containing this intersection.
    closure: Vec<u32>,
    rank: usize,
    /// The greedy independent subset of the closure, in ascending position
    /// order; spans the same subspace complement.
    generators: Vec<u32>,
}

impl Intersection {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of hyperplanes D_L containing the intersection.
    pub fn multiplicity(&self) -> usize {
        self.closure.len()
    }

    pub fn closure_indices(&self) -> &[u32] {
        &self.closure
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    pub fn closure_sets(&self, b: &Discriminantal) -> Vec<IndexSet> {
        self.closure
            .iter()
            .map(|&i| b.hyperplane(i as usize).set.clone())
            .collect()
    }

    /// Rebuilds the span of the closure normals.
    pub fn span(&self, b: &Discriminantal) -> RowSpace {
        let mut space = RowSpace::new(b.n());
        for &i in &self.generators {
            space.insert(&b.hyperplane(i as usize).normal);
        }
        space
    }
}

/// The unique canonical presentation of an intersection: the maximal sets S
/// whose every (k+1)-subset indexes a hyperplane containing X, together with
/// the Athanasiadis rank a_X = Σ (|S_i| - k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPresentation {
    pub components: Vec<IndexSet>,
    pub a: usize,
}

impl CanonicalPresentation {
    pub fn union(&self) -> IndexSet {
        IndexSet::union_of(&self.components)
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }
}

fn close_span(b: &Discriminantal, space: &RowSpace, known: &[u32]) -> Vec<u32> {
    let mut closure = Vec::new();
    let mut ki = 0;
    for idx in 0..b.len() as u32 {
        if ki < known.len() && known[ki] == idx {
            ki += 1;
            closure.push(idx);
            continue;
        }
        if space.contains(&b.hyperplane(idx as usize).normal) {
            closure.push(idx);
        }
    }
    closure
}

fn greedy_generators(b: &Discriminantal, closure: &[u32]) -> (Vec<u32>, RowSpace) {
    let mut space = RowSpace::new(b.n());
    let mut gens = Vec::new();
    for &idx in closure {
        if space.insert(&b.hyperplane(idx as usize).normal) {
            gens.push(idx);
        }
    }
    (gens, space)
}

/// Closes a generating family: the intersection of all D_L for L in `gens`,
/// as a poset element. Idempotent: re-closing the closure gives the same
/// element.
pub fn closure(b: &Discriminantal, gens: &[IndexSet]) -> Result<Intersection> {
    if gens.is_empty() {
        return Err(Error::ContractViolation("closure of an empty family".into()));
    }
    let mut positions = Vec::with_capacity(gens.len());
    for set in gens {
        let pos = b.position_of(set).ok_or_else(|| {
            Error::ContractViolation(format!("no hyperplane D_{set} in this arrangement"))
        })?;
        positions.push(pos as u32);
    }
    positions.sort_unstable();
    positions.dedup();
    let (_, space) = greedy_generators(b, &positions);
    let rank = space.rank();
    let closure = close_span(b, &space, &positions);
    let (generators, _) = greedy_generators(b, &closure);
    Ok(Intersection {
        closure,
        rank,
        generators,
    })
}

/// The canonical presentation of an intersection. A set S is complete when
/// every (k+1)-subset of S lies in the closure; components are the maximal
/// complete sets. The search grows complete sets in ascending label order
/// (every complete set is reached exactly once from its sorted prefix), and
/// tests maximality against all labels of the support.
pub fn components(b: &Discriminantal, x: &Intersection) -> CanonicalPresentation {
    let k = b.k();
    let edge_sets: Vec<IndexSet> = x.closure_sets(b);
    let edges: BTreeSet<&[Label]> = edge_sets.iter().map(IndexSet::as_slice).collect();
    let universe: Vec<Label> = IndexSet::union_of(&edge_sets).as_slice().to_vec();

    // true iff S (sorted) stays complete after adding j: every (k+1)-subset
    // through j must be an edge
    let extends = |s: &[Label], j: Label| -> bool {
        for mut sub in k_subsets(s, k) {
            let at = sub.partition_point(|&l| l < j);
            sub.insert(at, j);
            if !edges.contains(sub.as_slice()) {
                return false;
            }
        }
        true
    };

    let mut maximal: Vec<IndexSet> = Vec::new();
    let mut stack: Vec<Vec<Label>> = edge_sets
        .iter()
        .map(|s| s.as_slice().to_vec())
        .collect();
    while let Some(s) = stack.pop() {
        let last = *s.last().expect("complete sets are nonempty");
        let mut is_maximal = true;
        for &j in &universe {
            if s.binary_search(&j).is_ok() {
                continue;
            }
            if extends(&s, j) {
                is_maximal = false;
                if j > last {
                    let mut bigger = s.clone();
                    bigger.push(j);
                    stack.push(bigger);
                }
            }
        }
        if is_maximal {
            maximal.push(IndexSet::new(s));
        }
    }
    maximal.sort();
    maximal.dedup();
    let a = maximal.iter().map(|s| s.len() - k).sum();
    CanonicalPresentation {
        components: maximal,
        a,
    }
}

struct LevelElem {
    closure: Vec<u32>,
    space: RowSpace,
    generators: Vec<u32>,
}

fn bfs_levels(b: &Discriminantal, candidates_pool: &[u32], max_rank: usize) -> Vec<Intersection> {
    let mut out: Vec<Intersection> = Vec::new();
    if max_rank == 0 || candidates_pool.is_empty() {
        return out;
    }

    // level 1: the hyperplanes themselves
    let mut level: Vec<LevelElem> = candidates_pool
        .iter()
        .map(|&idx| {
            let mut space = RowSpace::new(b.n());
            space.insert(&b.hyperplane(idx as usize).normal);
            // distinct hyperplanes have distinct supports, so singleton
            // closures never merge and need no span scan
            LevelElem {
                closure: vec![idx],
                space,
                generators: vec![idx],
            }
        })
        .collect();
    push_level(&mut out, &level);

    for _rank in 2..=max_rank {
        let mut candidates: Vec<(usize, u32)> = Vec::new();
        for (i, elem) in level.iter().enumerate() {
            let last = *elem.generators.last().expect("nonempty");
            for &idx in candidates_pool {
                if idx > last && elem.closure.binary_search(&idx).is_err() {
                    candidates.push((i, idx));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let produced = par::map_collect(&candidates, |&(i, idx)| {
            let elem = &level[i];
            let mut space = elem.space.clone();
            space.insert(&b.hyperplane(idx as usize).normal);
            let mut known = elem.closure.clone();
            let at = known.partition_point(|&p| p < idx);
            known.insert(at, idx);
            let closure: Vec<u32> = close_span(b, &space, &known)
                .into_iter()
                .filter(|i| candidates_pool.binary_search(i).is_ok())
                .collect();
            (closure, space)
        });
        let mut next: BTreeMap<Vec<u32>, LevelElem> = BTreeMap::new();
        for (closure, space) in produced {
            if let Entry::Vacant(slot) = next.entry(closure.clone()) {
                let (generators, _) = greedy_generators(b, &closure);
                slot.insert(LevelElem {
                    closure,
                    space,
                    generators,
                });
            }
        }
        level = next.into_values().collect();
        if level.is_empty() {
            break;
        }
        push_level(&mut out, &level);
    }
    out
}

fn push_level(out: &mut Vec<Intersection>, level: &[LevelElem]) {
    for elem in level {
        out.push(Intersection {
            closure: elem.closure.clone(),
            rank: elem.space.rank(),
            generators: elem.generators.clone(),
        });
    }
}

/// All distinct intersections of rank at most `max_rank`, in increasing rank
/// and lexicographic closure order within each rank.
pub fn enumerate_intersections(b: &Discriminantal, max_rank: usize) -> Vec<Intersection> {
    let pool: Vec<u32> = (0..b.len() as u32).collect();
    bfs_levels(b, &pool, max_rank)
}

/// All intersections strictly containing x (larger subspaces, smaller rank).
/// These are exactly the poset elements of the sub-arrangement
/// {D_L : L in closure(x)} of rank below rank(x).
pub fn intersections_above(b: &Discriminantal, x: &Intersection) -> Vec<Intersection> {
    if x.rank() <= 1 {
        return Vec::new();
    }
    bfs_levels(b, &x.closure, x.rank() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::discriminantal::build_discriminantal;
    use crate::scalar::Scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ivec(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn set(xs: &[i64]) -> IndexSet {
        IndexSet::new(xs.to_vec())
    }

    fn braid(n: usize) -> Discriminantal {
        // k = 1 with all normals equal: D_{ij} has normal e_i - e_j
        let a = Arrangement::new(1, vec![ivec(&[1]); n], None).unwrap();
        build_discriminantal(&a).unwrap()
    }

    fn random_generic(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Arrangement {
        loop {
            let normals: Vec<Vec<Scalar>> = (0..n)
                .map(|_| {
                    (0..k)
                        .map(|_| Scalar::from_int(rng.gen_range(-50..=50)))
                        .collect()
                })
                .collect();
            if normals.iter().any(|v| v.iter().all(Scalar::is_zero)) {
                continue;
            }
            let a = Arrangement::new(k, normals, None).unwrap();
            if a.is_generic() {
                return a;
            }
        }
    }

    #[test]
    fn singleton_closure_and_idempotence() {
        let b = braid(4);
        let x = closure(&b, &[set(&[1, 2])]).unwrap();
        assert_eq!(x.rank(), 1);
        assert_eq!(x.closure_sets(&b), vec![set(&[1, 2])]);
        let again = closure(&b, &x.closure_sets(&b)).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn empty_generators_rejected() {
        let b = braid(3);
        assert!(closure(&b, &[]).is_err());
    }

    #[test]
    fn braid_triple_closes_up() {
        let b = braid(4);
        // e1-e2 and e2-e3 span e1-e3 as well
        let x = closure(&b, &[set(&[1, 2]), set(&[2, 3])]).unwrap();
        assert_eq!(x.rank(), 2);
        assert_eq!(
            x.closure_sets(&b),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );
        let p = components(&b, &x);
        assert_eq!(p.components, vec![set(&[1, 2, 3])]);
        assert_eq!(p.a, 2);
        // rank = a here: the braid intersection is very generic
    }

    #[test]
    fn components_of_single_hyperplane() {
        let b = braid(4);
        let x = closure(&b, &[set(&[2, 4])]).unwrap();
        let p = components(&b, &x);
        assert_eq!(p.components, vec![set(&[2, 4])]);
        assert_eq!(p.a, 1);
    }

    /// Brute-force oracle for components: scan all subsets of the support.
    fn components_brute(b: &Discriminantal, x: &Intersection) -> Vec<IndexSet> {
        let k = b.k();
        let edge_sets = x.closure_sets(b);
        let edges: BTreeSet<&[Label]> = edge_sets.iter().map(IndexSet::as_slice).collect();
        let universe: Vec<Label> = IndexSet::union_of(&edge_sets).as_slice().to_vec();
        let mut complete: Vec<Vec<Label>> = Vec::new();
        for size in k + 1..=universe.len() {
            for s in k_subsets(&universe, size) {
                if k_subsets(&s, k + 1)
                    .iter()
                    .all(|sub| edges.contains(sub.as_slice()))
                {
                    complete.push(s);
                }
            }
        }
        let mut maximal: Vec<IndexSet> = Vec::new();
        'outer: for s in &complete {
            for t in &complete {
                if t.len() > s.len() && s.iter().all(|l| t.contains(l)) {
                    continue 'outer;
                }
            }
            maximal.push(IndexSet::new(s.clone()));
        }
        maximal.sort();
        maximal
    }

    #[test]
    fn components_match_brute_force_on_braid_poset() {
        let b = braid(5);
        for x in enumerate_intersections(&b, 3) {
            let p = components(&b, &x);
            assert_eq!(p.components, components_brute(&b, &x), "x = {:?}", x.closure_sets(&b));
            // every closure set is covered by some component
            for l in x.closure_sets(&b) {
                assert!(p.components.iter().any(|c| l.is_subset_of(c)));
            }
            assert!(x.rank() <= p.a);
        }
    }

    #[test]
    fn single_hyperplane_arrangement_has_one_element() {
        // n = k+1 gives exactly one (k+1)-subset
        let a = Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])], None).unwrap();
        let b = build_discriminantal(&a).unwrap();
        assert_eq!(b.len(), 1);
        let all = enumerate_intersections(&b, 3);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].rank(), 1);
    }

    /// Brute-force rank-2 oracle: all pairs, closures by exhaustive span test.
    fn rank2_brute(b: &Discriminantal) -> BTreeSet<Vec<u32>> {
        let n = b.len();
        let mut found = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut space = RowSpace::new(b.n());
                space.insert(&b.hyperplane(i).normal);
                space.insert(&b.hyperplane(j).normal);
                if space.rank() != 2 {
                    continue;
                }
                let closure: Vec<u32> = (0..n as u32)
                    .filter(|&t| space.contains(&b.hyperplane(t as usize).normal))
                    .collect();
                found.insert(closure);
            }
        }
        found
    }

    #[test]
    fn enumeration_matches_pairwise_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = random_generic(&mut rng, 6, 3);
        let b = build_discriminantal(&a).unwrap();
        assert_eq!(b.len(), 15);
        let enumerated: BTreeSet<Vec<u32>> = enumerate_intersections(&b, 2)
            .into_iter()
            .filter(|x| x.rank() == 2)
            .map(|x| x.closure_indices().to_vec())
            .collect();
        assert_eq!(enumerated, rank2_brute(&b));
    }

    #[test]
    fn above_a_single_hyperplane_is_empty() {
        let b = braid(4);
        let x = closure(&b, &[set(&[1, 2])]).unwrap();
        assert!(intersections_above(&b, &x).is_empty());
    }

    #[test]
    fn above_returns_strictly_larger_subspaces() {
        let b = braid(5);
        let x = closure(&b, &[set(&[1, 2]), set(&[2, 3]), set(&[3, 4])]).unwrap();
        assert_eq!(x.rank(), 3);
        let above = intersections_above(&b, &x);
        assert!(!above.is_empty());
        let closure_set: BTreeSet<u32> = x.closure_indices().iter().copied().collect();
        for y in &above {
            assert!(y.rank() < x.rank());
            assert!(y
                .closure_indices()
                .iter()
                .all(|i| closure_set.contains(i)));
            // y's closure is a strict subset
            assert!(y.closure_indices().len() < x.closure_indices().len());
        }
        // the rank-1 elements above are exactly the closure hyperplanes
        let rank1 = above.iter().filter(|y| y.rank() == 1).count();
        assert_eq!(rank1, x.multiplicity());
    }

    #[test]
    fn enumeration_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let a = random_generic(&mut rng, 6, 2);
        let b = build_discriminantal(&a).unwrap();
        let run1: Vec<Vec<u32>> = enumerate_intersections(&b, 3)
            .iter()
            .map(|x| x.closure_indices().to_vec())
            .collect();
        let run2: Vec<Vec<u32>> = enumerate_intersections(&b, 3)
            .iter()
            .map(|x| x.closure_indices().to_vec())
            .collect();
        assert_eq!(run1, run2);
    }
}
