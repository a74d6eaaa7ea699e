//! Gale diagrams and the adjoint point-arrangement.
//!
//! The Gale diagram of n normals in k-space is a configuration of n points in
//! (n-k)-space whose row space is the orthogonal complement of the normals'
//! row space. It is unique up to an invertible change of basis; we fix the
//! representative coming from the deterministic kernel computation, with rows
//! primitive-normalized. Every check downstream (ranks, kernels) is invariant
//! under the basis ambiguity.

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Label};
use crate::combin::k_subsets;
use crate::discriminantal::{discriminantal_normal, IndexSet};
use crate::error::{Error, Result};
use crate::linalg::{primitive_normalize, Matrix};
use crate::par;
use crate::scalar::{Field, Scalar};

/// n labeled points in (n-k)-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    dim: usize,
    field: Field,
    labels: Vec<Label>,
    points: Vec<Vec<Scalar>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Scalar>>, labels: Vec<Label>) -> Result<PointConfiguration> {
        if labels.len() != points.len() {
            return Err(Error::Dimension("one label per point required".into()));
        }
        let mut field = Field::Rational;
        for p in &points {
            if p.len() != dim {
                return Err(Error::Dimension(format!(
                    "point of length {}, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().all(Scalar::is_zero) {
                return Err(Error::Degenerate("zero point in configuration".into()));
            }
            for s in p {
                if let Some(d) = s.quadratic_d() {
                    match field {
                        Field::Rational => field = Field::Quadratic(d),
                        Field::Quadratic(d0) if d0 == d => {}
                        Field::Quadratic(d0) => {
                            return Err(Error::FieldMismatch(format!(
                                "points mix sqrt({d0}) and sqrt({d})"
                            )))
                        }
                    }
                }
            }
        }
        Ok(PointConfiguration {
            dim,
            field,
            labels,
            points,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn point_of(&self, label: Label) -> Result<&[Scalar]> {
        let pos = self
            .labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))?;
        Ok(&self.points[pos])
    }

    /// The dim x n matrix with the points as columns.
    pub fn point_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.len());
        for (c, p) in self.points.iter().enumerate() {
            for (r, s) in p.iter().enumerate() {
                *m.at_mut(r, c) = s.clone();
            }
        }
        m
    }

    /// True iff every dim-subset of points is linearly independent.
    pub fn in_general_position(&self) -> bool {
        let idx: Vec<usize> = (0..self.len()).collect();
        let subsets = k_subsets(&idx, self.dim);
        par::all(&subsets, |cols| {
            let m = Matrix::from_rows(cols.iter().map(|&c| self.points[c].clone()).collect())
                .expect("square");
            !m.det().expect("square").is_zero()
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PointFile::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<PointConfiguration> {
        let f: PointFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        PointConfiguration::new(f.dim, f.points, f.labels)
    }
}

#[derive(Serialize, Deserialize)]
struct PointFile {
    dim: usize,
    field: Field,
    labels: Vec<Label>,
    points: Vec<Vec<Scalar>>,
}

impl From<&PointConfiguration> for PointFile {
    fn from(p: &PointConfiguration) -> PointFile {
        PointFile {
            dim: p.dim,
            field: p.field,
            labels: p.labels.clone(),
            points: p.points.clone(),
        }
    }
}

/// The Gale diagram of an arrangement: an (n-k) x n matrix B with
/// A Bᵀ = 0 and rank(B) = n - k; the points are the columns of B.
pub fn gale_diagram(a: &Arrangement) -> Result<PointConfiguration> {
    let m = a.normal_matrix();
    if m.rank() != a.k() {
        return Err(Error::Degenerate(
            "normals do not span k-space; the Gale diagram needs full rank".into(),
        ));
    }
    let kernel = m.right_kernel_basis(); // n x (n-k), columns span ker(A)
    let dim = kernel.cols();
    debug_assert_eq!(dim, a.n() - a.k());
    let mut rows = Vec::with_capacity(dim);
    for c in 0..dim {
        rows.push(primitive_normalize(&kernel.column(c))?);
    }
    let b = Matrix::from_rows(rows)?;
    let points: Vec<Vec<Scalar>> = (0..a.n()).map(|c| b.column(c)).collect();
    PointConfiguration::new(dim, points, a.labels().to_vec())
}

/// The primitive normal of the hyperplane spanned by dim-1 independent
/// points: the one-dimensional right kernel of the stacked points.
pub fn span_normal(points: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    let dim = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Dimension("no points given".into()))?;
    if points.len() + 1 != dim {
        return Err(Error::Dimension(format!(
            "{} points cannot span a hyperplane in {dim}-space",
            points.len()
        )));
    }
    let m = Matrix::from_rows(points.to_vec())?;
    let kernel = m.right_kernel_basis();
    if kernel.cols() != 1 {
        return Err(Error::Degenerate(
            "points are linearly dependent; they span no hyperplane".into(),
        ));
    }
    primitive_normalize(&kernel.column(0))
}

/// A hyperplane of the adjoint arrangement, labeled by the point subset that
/// spans it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointHyperplane {
    pub set: IndexSet,
    pub normal: Vec<Scalar>,
}

/// All hyperplanes spanned by (dim-1)-subsets of the configuration, in
/// lexicographic label order: C(n, n-k-1) hyperplanes in (n-k)-space.
pub fn adjoint_arrangement(p: &PointConfiguration) -> Result<Vec<AdjointHyperplane>> {
    let mut labels = p.labels().to_vec();
    labels.sort_unstable();
    let subsets = k_subsets(&labels, p.dim() - 1);
    let normals = par::map_collect(&subsets, |sub| {
        let pts: Result<Vec<Vec<Scalar>>> = sub
            .iter()
            .map(|&l| p.point_of(l).map(<[Scalar]>::to_vec))
            .collect();
        span_normal(&pts?)
    });
    subsets
        .into_iter()
        .zip(normals)
        .map(|(sub, normal)| {
            Ok(AdjointHyperplane {
                set: IndexSet::new(sub),
                normal: normal?,
            })
        })
        .collect()
}

/// Per-family outcomes of the rank comparison in [`falk_rank_equivalence`].
pub fn falk_rank_report(a: &Arrangement, families: &[Vec<IndexSet>]) -> Result<Vec<bool>> {
    let gale = gale_diagram(a)?;
    let all_labels = IndexSet::new(a.labels().to_vec());
    let outcomes = par::map_collect(families, |family| -> Result<bool> {
        let mut disc_rows = Vec::with_capacity(family.len());
        let mut adj_rows = Vec::with_capacity(family.len());
        for l in family {
            disc_rows.push(discriminantal_normal(a, l)?);
            let complement: Vec<Label> = all_labels
                .iter()
                .filter(|&&lab| !l.contains(lab))
                .copied()
                .collect();
            let pts: Result<Vec<Vec<Scalar>>> = complement
                .iter()
                .map(|&lab| gale.point_of(lab).map(<[Scalar]>::to_vec))
                .collect();
            adj_rows.push(span_normal(&pts?)?);
        }
        Ok(Matrix::from_rows(disc_rows)?.rank() == Matrix::from_rows(adj_rows)?.rank())
    });
    outcomes.into_iter().collect()
}

/// Rank-function comparison behind the linear equivalence of the essential
/// discriminantal arrangement with the adjoint: for every family F of
/// (k+1)-subsets, the discriminantal normals {α_L : L ∈ F} and the adjoint
/// normals {γ_{[n]∖L} : L ∈ F} must have equal rank.
pub fn falk_rank_equivalence(a: &Arrangement, families: &[Vec<IndexSet>]) -> Result<bool> {
    Ok(falk_rank_report(a, families)?.into_iter().all(|ok| ok))
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

    #[test]
    fn two_lines_in_one_dimension() {
        let a = Arrangement::new(1, vec![ivec(&[1]), ivec(&[1])], None).unwrap();
        let g = gale_diagram(&a).unwrap();
        assert_eq!(g.dim(), 1);
        assert_eq!(g.points(), &[ivec(&[1]), ivec(&[-1])]);
    }

    #[test]
    fn gale_product_is_zero_and_ranks_add() {
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, -1]), ivec(&[2, 3])],
            None,
        )
        .unwrap();
        let g = gale_diagram(&a).unwrap();
        let prod = a.normal_matrix().mul(&g.point_matrix().transpose()).unwrap();
        assert!(prod.is_zero());
        assert_eq!(g.point_matrix().rank(), a.n() - a.k());
        assert!(g.in_general_position());
    }

    #[test]
    fn rank_deficient_input_rejected() {
        // all normals on a line in k = 2
        let r = Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[2, 0]), ivec(&[3, 0])], None).unwrap();
        assert!(matches!(gale_diagram(&r), Err(Error::Degenerate(_))));
    }

    #[test]
    fn double_dual_recovers_the_row_space() {
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, -1]), ivec(&[2, 3])],
            None,
        )
        .unwrap();
        let g = gale_diagram(&a).unwrap();
        // treat the Gale points as an arrangement and dualize again
        let ga = Arrangement::new(g.dim(), g.points().to_vec(), Some(g.labels().to_vec())).unwrap();
        let gg = gale_diagram(&ga).unwrap();
        // row space of gg equals row space of the original normals: stacking
        // does not increase the rank
        let original = a.normal_matrix();
        let double = gg.point_matrix();
        let mut stacked_rows = Vec::new();
        for r in 0..original.rows() {
            stacked_rows.push(original.row(r).to_vec());
        }
        for r in 0..double.rows() {
            stacked_rows.push(double.row(r).to_vec());
        }
        let stacked = Matrix::from_rows(stacked_rows).unwrap();
        assert_eq!(original.rank(), a.k());
        assert_eq!(double.rank(), a.k());
        assert_eq!(stacked.rank(), a.k());
    }

    #[test]
    fn span_normal_standard_basis() {
        let points = vec![ivec(&[1, 0, 0, 0]), ivec(&[0, 1, 0, 0]), ivec(&[0, 0, 1, 0])];
        assert_eq!(span_normal(&points).unwrap(), ivec(&[0, 0, 0, 1]));
    }

    #[test]
    fn span_normal_random_pairs_match_kernel_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let p1 = ivec(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(1..=5)]);
            let p2 = ivec(&[rng.gen_range(-5..=5), rng.gen_range(1..=5), rng.gen_range(-5..=5)]);
            let m = Matrix::from_rows(vec![p1.clone(), p2.clone()]).unwrap();
            if m.rank() != 2 {
                continue;
            }
            let gamma = span_normal(&[p1.clone(), p2.clone()]).unwrap();
            assert!(dot(&gamma, &p1).is_zero());
            assert!(dot(&gamma, &p2).is_zero());
            let kernel = m.right_kernel_basis();
            assert_eq!(kernel.cols(), 1);
            assert_eq!(primitive_normalize(&kernel.column(0)).unwrap(), gamma);
        }
    }

    #[test]
    fn span_normal_rejects_dependent_points() {
        let p1 = ivec(&[1, 2, 0, 1]);
        let p2 = ivec(&[0, 1, 1, 0]);
        let sum: Vec<Scalar> = p1.iter().zip(&p2).map(|(a, b)| a + b).collect();
        assert!(matches!(
            span_normal(&[p1, p2, sum]),
            Err(Error::Degenerate(_))
        ));
        // wrong point count for the ambient dimension
        assert!(span_normal(&[ivec(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn adjoint_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        // n = 6, k = 2: adjoint lives in 4-space with C(6,3) = 20 hyperplanes
        let a = loop {
            let normals: Vec<Vec<Scalar>> = (0..6)
                .map(|_| ivec(&[rng.gen_range(-9..=9), rng.gen_range(-9..=9)]))
                .collect();
            if normals.iter().any(|v| v.iter().all(Scalar::is_zero)) {
                continue;
            }
            let a = Arrangement::new(2, normals, None).unwrap();
            if a.is_generic() {
                break a;
            }
        };
        let g = gale_diagram(&a).unwrap();
        assert_eq!(g.dim(), 4);
        let adjoint = adjoint_arrangement(&g).unwrap();
        assert_eq!(adjoint.len(), 20);
    }

    #[test]
    fn falk_holds_on_singleton_families() {
        let a = Arrangement::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[1, -1]), ivec(&[2, 3])],
            None,
        )
        .unwrap();
        let sets: Vec<Vec<IndexSet>> = k_subsets(a.labels(), 3)
            .into_iter()
            .map(|s| vec![IndexSet::new(s)])
            .collect();
        assert!(falk_rank_equivalence(&a, &sets).unwrap());
    }

    #[test]
    fn point_file_round_trip() {
        let p = PointConfiguration::new(
            2,
            vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, -2])],
            vec![1, 2, 3],
        )
        .unwrap();
        let round = PointConfiguration::from_json(&p.to_json()).unwrap();
        assert_eq!(p, round);
    }
}
