//! The discriminantal arrangement B(n,k,A).
//!
//! Coordinates on the translation space are the right-hand sides of the
//! hyperplane equations: the translate of hyperplane i by t_i is
//! {x : α_i · x = t_i}. With a central input arrangement every D_L passes
//! through the origin, so B(n,k,A) is again central and each D_L is recorded
//! by a single normal vector in n-space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Label};
use crate::combin::k_subsets;
use crate::error::{Error, Result};
use crate::linalg::{primitive_normalize, Matrix};
use crate::par;
use crate::scalar::Scalar;

/// A sorted set of hyperplane labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<Label>);

impl IndexSet {
    pub fn new(mut labels: Vec<Label>) -> IndexSet {
        labels.sort_unstable();
        labels.dedup();
        IndexSet(labels)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn contains(&self, label: Label) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&l| other.contains(l))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IndexSet::new(v)
    }

    pub fn union_of<'a>(sets: impl IntoIterator<Item = &'a IndexSet>) -> IndexSet {
        let mut v = Vec::new();
        for s in sets {
            v.extend_from_slice(&s.0);
        }
        IndexSet::new(v)
    }

    pub fn intersection_len(&self, other: &IndexSet) -> usize {
        self.0.iter().filter(|&&l| other.contains(l)).count()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One hyperplane D_L of the discriminantal arrangement, with its primitive
/// normal in n-space. The normal is supported exactly on the coordinates of L
/// when the source arrangement is generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantalHyperplane {
    pub set: IndexSet,
    pub normal: Vec<Scalar>,
}

/// B(n,k,A): one hyperplane per (k+1)-subset of labels, in lexicographic
/// order of the subsets.
#[derive(Clone, Debug)]
pub struct Discriminantal {
    arrangement: Arrangement,
    hyperplanes: Vec<DiscriminantalHyperplane>,
}

impl Discriminantal {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn n(&self) -> usize {
        self.arrangement.n()
    }

    pub fn k(&self) -> usize {
        self.arrangement.k()
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[DiscriminantalHyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, idx: usize) -> &DiscriminantalHyperplane {
        &self.hyperplanes[idx]
    }

    /// Position of D_L in the lexicographic listing.
    pub fn position_of(&self, set: &IndexSet) -> Option<usize> {
        self.hyperplanes
            .binary_search_by(|h| h.set.cmp(set))
            .ok()
    }
}

/// The normal vector of D_L by the cofactor formula: for L = {i_1 < ... <
/// i_{k+1}}, the coordinate at i_t is (-1)^(t+1) times the minor of the
/// normal matrix with column i_t removed, zero elsewhere; the result is
/// primitive-normalized. A translation t lies on D_L exactly when this vector
/// is orthogonal to t.
pub fn discriminantal_normal(a: &Arrangement, set: &IndexSet) -> Result<Vec<Scalar>> {
    let k = a.k();
    if set.len() != k + 1 {
        return Err(Error::Dimension(format!(
            "L must have k+1 = {} labels, got {}",
            k + 1,
            set.len()
        )));
    }
    let positions: Vec<usize> = set
        .iter()
        .map(|&l| a.position_of(l))
        .collect::<Result<_>>()?;
    let mut normal = vec![Scalar::zero(); a.n()];
    let mut any_nonzero = false;
    for (t, &pos) in positions.iter().enumerate() {
        let rows: Vec<Vec<Scalar>> = positions
            .iter()
            .filter(|&&p| p != pos)
            .map(|&p| a.normals()[p].clone())
            .collect();
        let minor = Matrix::from_rows(rows)?.det()?;
        if minor.is_zero() {
            continue;
        }
        any_nonzero = true;
        normal[pos] = if t % 2 == 0 { minor } else { -minor };
    }
    if !any_nonzero {
        return Err(Error::Degenerate(format!(
            "all k x k minors of {set} vanish; the hyperplanes indexed by {set} are not in general position"
        )));
    }
    primitive_normalize(&normal)
}

/// Semantic membership test for D_L: true iff the translated hyperplanes
/// {x : α_i · x = t_i} for i in L share a point. This solves the linear
/// system directly and is independent of the cofactor formula.
pub fn translation_in_dl(a: &Arrangement, set: &IndexSet, t: &[Scalar]) -> Result<bool> {
    let k = a.k();
    if set.len() != k + 1 {
        return Err(Error::Dimension(format!(
            "L must have k+1 = {} labels, got {}",
            k + 1,
            set.len()
        )));
    }
    if t.len() != a.n() {
        return Err(Error::Dimension(format!(
            "translation vector has length {}, expected n = {}",
            t.len(),
            a.n()
        )));
    }
    let mut rows = Vec::with_capacity(set.len());
    let mut rhs = Vec::with_capacity(set.len());
    for &label in set.iter() {
        let pos = a.position_of(label)?;
        rows.push(a.normals()[pos].clone());
        rhs.push(t[pos].clone());
    }
    Ok(Matrix::from_rows(rows)?.solve(&rhs)?.is_some())
}

/// Builds B(n,k,A) for a generic arrangement: C(n, k+1) hyperplanes in
/// lexicographic order of their label sets. Per-set normals are computed
/// independently (in parallel under the `parallel` feature).
pub fn build_discriminantal(a: &Arrangement) -> Result<Discriminantal> {
    if !a.is_generic() {
        return Err(Error::NonGeneric(
            "the discriminantal arrangement requires a generic input arrangement".into(),
        ));
    }
    let mut labels = a.labels().to_vec();
    labels.sort_unstable();
    let sets: Vec<IndexSet> = k_subsets(&labels, a.k() + 1)
        .into_iter()
        .map(IndexSet::new)
        .collect();
    let normals = par::map_collect(&sets, |set| discriminantal_normal(a, set));
    let hyperplanes = sets
        .into_iter()
        .zip(normals)
        .map(|(set, normal)| Ok(DiscriminantalHyperplane { set, normal: normal? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Discriminantal {
        arrangement: a.clone(),
        hyperplanes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ivec(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn set(xs: &[i64]) -> IndexSet {
        IndexSet::new(xs.to_vec())
    }

    #[test]
    fn line_arrangement_normal() {
        // k = 1, two copies of the same normal: translations agree iff equal
        let a = Arrangement::new(1, vec![ivec(&[1]), ivec(&[1])], None).unwrap();
        let n = discriminantal_normal(&a, &set(&[1, 2])).unwrap();
        assert_eq!(n, ivec(&[1, -1]));
    }

    #[test]
    fn wrong_set_size_rejected() {
        let a = Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])], None).unwrap();
        assert!(discriminantal_normal(&a, &set(&[1, 2])).is_err());
        assert!(translation_in_dl(&a, &set(&[1, 2]), &vec![Scalar::zero(); 3]).is_err());
    }

    #[test]
    fn build_counts() {
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, -1])],
            None,
        )
        .unwrap();
        let b = build_discriminantal(&a).unwrap();
        assert_eq!(b.len(), 4); // C(4,3)
        for h in b.hyperplanes() {
            // support is exactly the label set
            for (pos, &label) in a.labels().iter().enumerate() {
                assert_eq!(h.normal[pos].is_zero(), !h.set.contains(label));
            }
        }
        assert_eq!(b.position_of(&set(&[1, 2, 3])), Some(0));
        assert_eq!(b.position_of(&set(&[2, 3, 4])), Some(3));
    }

    #[test]
    fn non_generic_input_rejected() {
        let a = Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[2, 0]), ivec(&[0, 1])], None).unwrap();
        assert!(matches!(
            build_discriminantal(&a),
            Err(Error::NonGeneric(_))
        ));
    }

    #[test]
    fn zero_translation_is_always_on_dl() {
        let a = Arrangement::new(
            3,
            vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1]), ivec(&[1, 1, 1]), ivec(&[1, 2, 3])],
            None,
        )
        .unwrap();
        let t = vec![Scalar::zero(); 5];
        for s in k_subsets(&[1i64, 2, 3, 4, 5], 4) {
            assert!(translation_in_dl(&a, &IndexSet::new(s), &t).unwrap());
        }
    }

    #[test]
    fn translations_through_a_common_point_lie_on_every_dl() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, -1]), ivec(&[2, 3])],
            None,
        )
        .unwrap();
        for _ in 0..10 {
            let x0 = ivec(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
            let t: Vec<Scalar> = a.normals().iter().map(|nv| dot(nv, &x0)).collect();
            for s in k_subsets(a.labels(), 3) {
                assert!(translation_in_dl(&a, &IndexSet::new(s), &t).unwrap());
            }
        }
    }

    #[test]
    fn oracle_agreement_exhaustive_small() {
        // n = 4, k = 2, all integer translations in {-2..2}^4
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, -1])],
            None,
        )
        .unwrap();
        let sets: Vec<IndexSet> = k_subsets(a.labels(), 3).into_iter().map(IndexSet::new).collect();
        let normals: Vec<Vec<Scalar>> = sets
            .iter()
            .map(|s| discriminantal_normal(&a, s).unwrap())
            .collect();
        let mut t = [-2i64; 4];
        loop {
            let tv = ivec(&t);
            for (s, nv) in sets.iter().zip(&normals) {
                let semantic = translation_in_dl(&a, s, &tv).unwrap();
                let algebraic = dot(nv, &tv).is_zero();
                assert_eq!(semantic, algebraic, "t = {t:?}, L = {s}");
            }
            let mut i = 0;
            loop {
                if i == 4 {
                    return;
                }
                t[i] += 1;
                if t[i] <= 2 {
                    break;
                }
                t[i] = -2;
                i += 1;
            }
        }
    }

    #[test]
    fn rescaling_all_normals_preserves_the_hyperplane() {
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 2]), ivec(&[0, 1]), ivec(&[3, 1]), ivec(&[1, -1])],
            None,
        )
        .unwrap();
        let c = Scalar::ratio(-3, 7);
        let scaled: Vec<Vec<Scalar>> = a
            .normals()
            .iter()
            .map(|v| v.iter().map(|s| s * &c).collect())
            .collect();
        let b = Arrangement::new(2, scaled, None).unwrap();
        for s in k_subsets(a.labels(), 3) {
            let s = IndexSet::new(s);
            let n1 = discriminantal_normal(&a, &s).unwrap();
            let n2 = discriminantal_normal(&b, &s).unwrap();
            // same zero set: primitive normals agree up to overall sign
            assert!(n1 == n2 || n1.iter().zip(&n2).all(|(x, y)| x == &-y));
        }
    }
}
