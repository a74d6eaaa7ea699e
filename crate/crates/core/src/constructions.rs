//! Deterministic, seeded generators for arrangement families with designed
//! non-very-generic intersections. Every generator verifies its own output
//! (genericity, witness membership, ranks, minimality) before returning, so a
//! [`ConstructionResult`] always reproduces its expected certificate when the
//! pipeline is re-run on the emitted arrangement.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{Arrangement, Label};
use crate::classify::{classify, ClassificationReport, IntersectionClass};
use crate::discriminantal::{
    build_discriminantal, translation_in_dl, Discriminantal, IndexSet,
};
use crate::error::{Error, Result};
use crate::gale::gale_diagram;
use crate::lattice::{closure, Intersection};
use crate::linalg::{dot, primitive_normalize, Matrix, RowSpace};
use crate::scalar::Scalar;

const RETRY_CAP: u32 = 64;
const COORD_SPAN: i64 = 1000;

/// The certificate a construction promises; re-running the pipeline on the
/// emitted arrangement must reproduce these values exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedCertificate {
    pub rank: usize,
    pub a: usize,
    pub class: IntersectionClass,
    pub minimal: bool,
    pub sparse: bool,
    pub dense: bool,
    pub multiplicity: usize,
}

impl ExpectedCertificate {
    fn from_report(report: &ClassificationReport) -> ExpectedCertificate {
        ExpectedCertificate {
            rank: report.rank,
            a: report.a,
            class: report.class,
            minimal: report.minimal,
            sparse: report.sparse,
            dense: report.dense,
            multiplicity: report.multiplicity,
        }
    }

    pub fn matches(&self, report: &ClassificationReport) -> bool {
        self == &ExpectedCertificate::from_report(report)
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub arrangement: Arrangement,
    /// Generating sets of the distinguished intersection.
    pub target: Vec<IndexSet>,
    pub expected: ExpectedCertificate,
    pub seed: u64,
    pub retries_used: u32,
}

/// The 2k index sets K_{k,i} = [k+1] \ {i} ∪ {-i} (i in [k]) and their
/// complements in [±(k+1)], listed K_{k,1..k} then K_{k,-1..-k}.
pub fn u_k_family(k: usize) -> Result<Vec<IndexSet>> {
    Ok(u_k_indexed(k)?.into_iter().map(|(_, s)| s).collect())
}

fn u_k_indexed(k: usize) -> Result<Vec<(Label, IndexSet)>> {
    if k < 2 {
        return Err(Error::UnsupportedParameter(format!(
            "the doubled family needs k >= 2, got {k}"
        )));
    }
    let kk = k as Label;
    let full: Vec<Label> = signed_range(kk + 1);
    let mut out = Vec::with_capacity(2 * k);
    for i in 1..=kk {
        let mut labels: Vec<Label> = (1..=kk + 1).filter(|&l| l != i).collect();
        labels.push(-i);
        out.push((i, IndexSet::new(labels)));
    }
    for i in 1..=kk {
        let positive = &out[(i - 1) as usize].1;
        let complement: Vec<Label> = full.iter().copied().filter(|&l| !positive.contains(l)).collect();
        out.push((-i, IndexSet::new(complement)));
    }
    Ok(out)
}

/// [-m, ..., -1, 1, ..., m] in ascending order.
fn signed_range(m: Label) -> Vec<Label> {
    (-m..=m).filter(|&l| l != 0).collect()
}

fn sample_int(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-COORD_SPAN..=COORD_SPAN)
}

fn sample_nonzero_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| sample_int(rng)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(Scalar::from_int).collect();
        }
    }
}

/// Normal and offset of the affine hull of `points` (k points in k-space):
/// the hull is {x : normal · x = offset} when the points are affinely
/// independent.
fn affine_hull_normal(points: &[Vec<Scalar>]) -> Result<(Vec<Scalar>, Scalar)> {
    let dim = points[0].len();
    if points.len() != dim {
        return Err(Error::Dimension(format!(
            "affine hull of {} points in {dim}-space is not a hyperplane",
            points.len()
        )));
    }
    let diffs: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(x, y)| x - y).collect())
        .collect();
    let kernel = Matrix::from_rows(diffs)?.right_kernel_basis();
    if kernel.cols() != 1 {
        return Err(Error::Degenerate(
            "points are affinely dependent; no unique hull hyperplane".into(),
        ));
    }
    let normal = primitive_normalize(&kernel.column(0))?;
    let offset = dot(&normal, &points[0]);
    Ok((normal, offset))
}

fn subfamilies_transversal(
    b: &Discriminantal,
    positions: &[usize],
    max_size: usize,
) -> std::result::Result<(), String> {
    let m = positions.len();
    assert!(m <= 30);
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size < 2 || size > max_size {
            continue;
        }
        let mut space = RowSpace::new(b.n());
        for (i, &pos) in positions.iter().enumerate() {
            if mask >> i & 1 == 1 {
                space.insert(&b.hyperplane(pos).normal);
            }
        }
        if space.rank() != size {
            let members: Vec<String> = positions
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &pos)| b.hyperplane(pos).set.to_string())
                .collect();
            return Err(format!(
                "subfamily {{{}}} has rank {} < {size}",
                members.join(", "),
                space.rank()
            ));
        }
    }
    Ok(())
}

fn run_pipeline(
    a: &Arrangement,
    target: &[IndexSet],
) -> std::result::Result<(Discriminantal, Intersection, ClassificationReport), String> {
    let b = build_discriminantal(a).map_err(|e| e.to_string())?;
    let x = closure(&b, target).map_err(|e| e.to_string())?;
    let report = classify(&b, &x);
    Ok((b, x, report))
}

fn sorted(sets: &[IndexSet]) -> Vec<IndexSet> {
    let mut v = sets.to_vec();
    v.sort();
    v
}

/// Arrangement of 2k+2 hyperplanes in k-space whose discriminantal
/// arrangement contains a minimal dense intersection of rank k+1 and
/// Athanasiadis rank 2k.
///
/// For k >= 3 the canonical presentation is the doubled family from
/// [`u_k_family`]: hyperplane i is the direction of the affine hull of the
/// sampled points {v_j : i in K_{k,j}}, and the hull offsets form a
/// translation witnessing that all designed hyperplanes of the discriminantal
/// arrangement really meet.
///
/// At k = 2 that family is not realizable: labels 2 and -1 lie in exactly the
/// same two sets of U_2, which forces their hyperplanes to coincide. The
/// dense k = 2 case is instead the classical six-line configuration (the
/// complete quadrilateral over four sampled points), whose presentation is
/// four triples pairwise sharing one label; it has rank 3, Athanasiadis rank
/// 4 and multiplicity 4.
pub fn dense_uk(k: usize, seed: u64) -> Result<ConstructionResult> {
    if k == 2 {
        return dense_quadrilateral(seed);
    }
    let family = u_k_indexed(k)?;
    let target: Vec<IndexSet> = family.iter().map(|(_, s)| s.clone()).collect();
    let target_sorted = sorted(&target);
    let labels = signed_range(k as Label + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();

    for attempt in 0..RETRY_CAP {
        let outcome = (|| -> std::result::Result<ConstructionResult, String> {
            let points: Vec<Vec<Scalar>> = family
                .iter()
                .map(|_| sample_nonzero_vec(&mut rng, k))
                .collect();
            let mut normals = Vec::with_capacity(labels.len());
            let mut witness = Vec::with_capacity(labels.len());
            for &i in &labels {
                let incident: Vec<Vec<Scalar>> = family
                    .iter()
                    .zip(&points)
                    .filter(|((_, set), _)| set.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                debug_assert_eq!(incident.len(), k);
                let (normal, offset) = affine_hull_normal(&incident).map_err(|e| e.to_string())?;
                normals.push(normal);
                witness.push(offset);
            }
            let a = Arrangement::new(k, normals, Some(labels.clone())).map_err(|e| e.to_string())?;
            if !a.is_generic() {
                return Err("sampled arrangement is not generic".into());
            }
            let (b, x, report) = run_pipeline(&a, &target)?;
            for set in &target {
                if !translation_in_dl(&a, set, &witness).map_err(|e| e.to_string())? {
                    return Err(format!("witness translation misses D_{set}"));
                }
            }
            if x.closure_sets(&b) != target_sorted {
                return Err(format!(
                    "closure is {:?}, expected exactly the doubled family",
                    x.closure_sets(&b)
                ));
            }
            if x.rank() != k + 1 {
                return Err(format!("rank {} instead of k+1 = {}", x.rank(), k + 1));
            }
            let positions: Vec<usize> = target
                .iter()
                .map(|s| b.position_of(s).expect("in closure"))
                .collect();
            subfamilies_transversal(&b, &positions, k + 1)?;
            if report.presentation.components != target_sorted {
                return Err(format!(
                    "canonical presentation {:?} differs from the doubled family",
                    report.presentation.components
                ));
            }
            let want = ExpectedCertificate {
                rank: k + 1,
                a: 2 * k,
                class: IntersectionClass::Anvg,
                minimal: true,
                sparse: k == 2,
                dense: true,
                multiplicity: 2 * k,
            };
            if !want.matches(&report) {
                return Err(format!(
                    "classification {:?} does not match the dense certificate {want:?}",
                    ExpectedCertificate::from_report(&report)
                ));
            }
            Ok(ConstructionResult {
                arrangement: a,
                target: target.clone(),
                expected: want,
                seed,
                retries_used: attempt,
            })
        })();
        match outcome {
            Ok(result) => return Ok(result),
            Err(reason) => last_failure = reason,
        }
    }
    Err(Error::RetryCapExceeded {
        attempts: RETRY_CAP,
        last_failure,
    })
}

/// The six-line dense instance: lines through the pairs of four sampled
/// points. Each point is a triple point of the translated arrangement, and
/// the four triples form the canonical presentation.
fn dense_quadrilateral(seed: u64) -> Result<ConstructionResult> {
    // pairs of points in lexicographic order, labeled over [±3]
    let pairs: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let labels: Vec<Label> = signed_range(3);
    let target: Vec<IndexSet> = (0..4)
        .map(|point| {
            IndexSet::new(
                pairs
                    .iter()
                    .zip(&labels)
                    .filter(|((u, v), _)| *u == point || *v == point)
                    .map(|(_, &l)| l)
                    .collect(),
            )
        })
        .collect();
    let target_sorted = sorted(&target);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();

    for attempt in 0..RETRY_CAP {
        let outcome = (|| -> std::result::Result<ConstructionResult, String> {
            let points: Vec<Vec<Scalar>> = (0..4).map(|_| sample_nonzero_vec(&mut rng, 2)).collect();
            let mut normals = Vec::with_capacity(6);
            let mut witness = Vec::with_capacity(6);
            for &(u, v) in &pairs {
                let dx = &points[v][0] - &points[u][0];
                let dy = &points[v][1] - &points[u][1];
                if dx.is_zero() && dy.is_zero() {
                    return Err("coincident sample points".into());
                }
                let normal = primitive_normalize(&[-&dy, dx]).map_err(|e| e.to_string())?;
                witness.push(dot(&normal, &points[u]));
                normals.push(normal);
            }
            let a = Arrangement::new(2, normals, Some(labels.clone())).map_err(|e| e.to_string())?;
            if !a.is_generic() {
                return Err("two of the six lines are parallel".into());
            }
            let (b, x, report) = run_pipeline(&a, &target)?;
            for set in &target {
                if !translation_in_dl(&a, set, &witness).map_err(|e| e.to_string())? {
                    return Err(format!("witness translation misses D_{set}"));
                }
            }
            if x.closure_sets(&b) != target_sorted {
                return Err("closure is larger than the four designed triples".into());
            }
            if x.rank() != 3 {
                return Err(format!("rank {} instead of 3", x.rank()));
            }
            if report.presentation.components != target_sorted {
                return Err("canonical presentation differs from the four triples".into());
            }
            let want = ExpectedCertificate {
                rank: 3,
                a: 4,
                class: IntersectionClass::Anvg,
                minimal: true,
                sparse: true,
                dense: true,
                multiplicity: 4,
            };
            if !want.matches(&report) {
                return Err(format!(
                    "classification {:?} does not match the six-line certificate",
                    ExpectedCertificate::from_report(&report)
                ));
            }
            Ok(ConstructionResult {
                arrangement: a,
                target: target.clone(),
                expected: want,
                seed,
                retries_used: attempt,
            })
        })();
        match outcome {
            Ok(result) => return Ok(result),
            Err(reason) => last_failure = reason,
        }
    }
    Err(Error::RetryCapExceeded {
        attempts: RETRY_CAP,
        last_failure,
    })
}

/// 2m hyperplanes in 3-space, the rotation orbit of {z = p x} under the
/// rotation by π/m about the z-axis, over Q(√3) (m = 3, 6) or Q(√2) (m = 4).
/// The target family is the m four-sets S_i = {i, i+1, i+m, i+m+1} (mod 2m);
/// opposite normals sum to the constant (0,0,-2), which makes the four
/// orbit minors constant and the α_{S_i} dependent, so the intersection is
/// always non-very-generic with rank m - 1.
///
/// Writing σ_i = t_i + t_{i+m}, each D_{S_i} is {σ_i = σ_{i+1}}; the
/// intersection forces all σ equal, so its closure picks up every
/// opposite-pair quadruple {i, j, i+m, j+m}. For m = 3 those are exactly the
/// three designed sets and the intersection is sparse with a_X = m; for
/// larger m the canonical presentation has all C(m,2) quadruples as
/// components and the certificate records the computed values.
pub fn a2m(m: usize, p: &BigRational) -> Result<ConstructionResult> {
    let (cos, sin) = match m {
        3 => (Scalar::ratio(1, 2), &Scalar::ratio(1, 2) * &Scalar::sqrt_of(3)),
        4 => (
            &Scalar::ratio(1, 2) * &Scalar::sqrt_of(2),
            &Scalar::ratio(1, 2) * &Scalar::sqrt_of(2),
        ),
        6 => (&Scalar::ratio(1, 2) * &Scalar::sqrt_of(3), Scalar::ratio(1, 2)),
        _ => {
            return Err(Error::UnsupportedParameter(format!(
                "rotation angle π/{m} is not exact over a quadratic field; m must be 3, 4 or 6"
            )))
        }
    };
    if p.is_zero() {
        return Err(Error::UnsupportedParameter("p must be nonzero".into()));
    }
    let n = 2 * m;
    let ps = Scalar::from_rational(p.clone());
    let wrap = |x: usize| -> usize { (x - 1) % n + 1 };

    // iterate the rotation: (cos iπ/m, sin iπ/m) for i = 1..2m
    let mut normals = Vec::with_capacity(n);
    let mut ci = Scalar::one();
    let mut si = Scalar::zero();
    for _ in 0..n {
        let next_c = &(&ci * &cos) - &(&si * &sin);
        let next_s = &(&si * &cos) + &(&ci * &sin);
        ci = next_c;
        si = next_s;
        normals.push(vec![&ps * &ci, &ps * &si, Scalar::from_int(-1)]);
    }
    let a = Arrangement::new(3, normals.clone(), None)?;
    if !a.is_generic() {
        return Err(Error::NonGeneric(format!(
            "the rotation orbit with p = {p} is degenerate; try a different p"
        )));
    }

    // the four families of 3x3 minors along the orbit must each be constant
    let minor = |idx: [usize; 3]| -> Result<Scalar> {
        Matrix::from_rows(idx.iter().map(|&i| normals[i - 1].clone()).collect())?.det()
    };
    for (fam, pick) in [
        [1usize, 2, 3],     // drop i:      (i+1, i+m, i+m+1)
        [0, 2, 3],          // drop i+1:    (i,   i+m, i+m+1)
        [0, 1, 3],          // drop i+m:    (i,   i+1, i+m+1)
        [0, 1, 2],          // drop i+m+1:  (i,   i+1, i+m)
    ]
    .iter()
    .enumerate()
    {
        let offsets = [0usize, 1, m, m + 1];
        let value_at = |i: usize| -> Result<Scalar> {
            minor([
                wrap(i + offsets[pick[0]]),
                wrap(i + offsets[pick[1]]),
                wrap(i + offsets[pick[2]]),
            ])
        };
        let first = value_at(1)?;
        for i in 2..=m {
            if value_at(i)? != first {
                return Err(Error::Degenerate(format!(
                    "minor family {fam} is not constant along the orbit"
                )));
            }
        }
    }

    let target: Vec<IndexSet> = (1..=m)
        .map(|i| IndexSet::new(vec![
            wrap(i) as Label,
            wrap(i + 1) as Label,
            wrap(i + m) as Label,
            wrap(i + m + 1) as Label,
        ]))
        .collect();
    let designed_rank = Matrix::from_rows(
        target
            .iter()
            .map(|s| crate::discriminantal::discriminantal_normal(&a, s))
            .collect::<Result<_>>()?,
    )?
    .rank();
    if designed_rank >= m {
        return Err(Error::Degenerate(format!(
            "the α_S of the designed four-sets have rank {designed_rank}, expected < {m}"
        )));
    }
    let (_, x, report) = run_pipeline(&a, &target).map_err(Error::Degenerate)?;
    if x.rank() == report.a {
        return Err(Error::Degenerate(
            "designed intersection came out very generic".into(),
        ));
    }
    if m == 3
        && !(report.a == 3 && report.sparse && report.presentation.components == sorted(&target))
    {
        return Err(Error::Degenerate(format!(
            "the six-plane orbit must give the sparse certificate, got a = {}, sparse = {}",
            report.a, report.sparse
        )));
    }
    Ok(ConstructionResult {
        arrangement: a,
        target,
        expected: ExpectedCertificate::from_report(&report),
        seed: 0,
        retries_used: 0,
    })
}

/// The literal 8-hyperplanes-in-5-space example: a generic arrangement whose
/// discriminantal arrangement has a rank-2 intersection of multiplicity 4.
pub fn example_8_5() -> ConstructionResult {
    let columns: [[i64; 5]; 8] = [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [1, 1, 1, 1, 1],
        [2, -2, 3, -1, 1],
        [3, -1, 2, -2, 1],
    ];
    let normals: Vec<Vec<Scalar>> = columns
        .iter()
        .map(|c| c.iter().map(|&x| Scalar::from_int(x)).collect())
        .collect();
    let a = Arrangement::new(5, normals, None).expect("well-formed");
    let target = vec![
        IndexSet::new(vec![1, 2, 3, 4, 5, 6]),
        IndexSet::new(vec![1, 2, 3, 4, 7, 8]),
        IndexSet::new(vec![1, 2, 5, 6, 7, 8]),
        IndexSet::new(vec![3, 4, 5, 6, 7, 8]),
    ];
    let (_, _, report) = run_pipeline(&a, &target).expect("the printed arrangement is generic");
    let expected = ExpectedCertificate::from_report(&report);
    assert_eq!(
        expected,
        ExpectedCertificate {
            rank: 2,
            a: 4,
            class: IntersectionClass::Anvg,
            minimal: true,
            sparse: false,
            dense: false,
            multiplicity: 4,
        },
        "the printed example must classify as the rank-2 multiplicity-4 ANVG intersection"
    );
    ConstructionResult {
        arrangement: a,
        target,
        expected,
        seed: 0,
        retries_used: 0,
    }
}

fn verify_rank2_target(
    a: &Arrangement,
    target: &[IndexSet],
    multiplicity: usize,
) -> std::result::Result<ClassificationReport, String> {
    let target_sorted = sorted(target);
    let (b, x, report) = run_pipeline(a, target)?;
    if x.rank() != 2 {
        return Err(format!("designed intersection has rank {}", x.rank()));
    }
    if x.closure_sets(&b) != target_sorted {
        return Err(format!(
            "closure {:?} is not exactly the designed family",
            x.closure_sets(&b)
        ));
    }
    if report.presentation.components != target_sorted {
        return Err("presentation differs from the designed family".into());
    }
    if report.a != multiplicity || report.multiplicity != multiplicity {
        return Err(format!(
            "expected multiplicity {multiplicity}, got a = {}, multiplicity = {}",
            report.a, report.multiplicity
        ));
    }
    if !report.minimal {
        return Err("rank-2 intersection must be minimal".into());
    }
    Ok(report)
}

/// Rank-2 intersection of multiplicity n/2 in B(n, n-3): n centrally
/// symmetric points (x,y,1) / (-x,-y,1) in 3-space, so each opposite pair
/// spans a plane through (0,0,1); Gale duality turns the point configuration
/// into the arrangement. Even n >= 6.
pub fn rank2_symmetric(n: usize, seed: u64) -> Result<ConstructionResult> {
    if n < 6 || n % 2 != 0 {
        return Err(Error::UnsupportedParameter(format!(
            "need an even n >= 6, got {n}"
        )));
    }
    let k = n - 3;
    let half = n / 2;
    let labels: Vec<Label> = (1..=n as Label).collect();
    let target: Vec<IndexSet> = (1..=half)
        .map(|i| {
            IndexSet::new(
                labels
                    .iter()
                    .copied()
                    .filter(|&l| l != i as Label && l != (i + half) as Label)
                    .collect(),
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();

    for attempt in 0..RETRY_CAP {
        let outcome = (|| -> std::result::Result<ConstructionResult, String> {
            let mut points = vec![Vec::new(); n];
            for i in 0..half {
                let (x, y) = loop {
                    let x = sample_int(&mut rng);
                    let y = sample_int(&mut rng);
                    if x != 0 || y != 0 {
                        break (x, y);
                    }
                };
                points[i] = vec![Scalar::from_int(x), Scalar::from_int(y), Scalar::from_int(1)];
                points[i + half] =
                    vec![Scalar::from_int(-x), Scalar::from_int(-y), Scalar::from_int(1)];
            }
            let config = crate::gale::PointConfiguration::new(3, points, labels.clone())
                .map_err(|e| e.to_string())?;
            if !config.in_general_position() {
                return Err("sampled points are not in general position".into());
            }
            // dualize: the kernel of the 3 x n point matrix gives the normals
            let as_arrangement = Arrangement::new(3, config.points().to_vec(), Some(labels.clone()))
                .map_err(|e| e.to_string())?;
            let dual = gale_diagram(&as_arrangement).map_err(|e| e.to_string())?;
            let a = Arrangement::new(k, dual.points().to_vec(), Some(labels.clone()))
                .map_err(|e| e.to_string())?;
            if !a.is_generic() {
                return Err("dual arrangement is not generic".into());
            }
            let report = verify_rank2_target(&a, &target, half)?;
            if report.class != IntersectionClass::Anvg {
                return Err(format!(
                    "rank n-k-1 intersection must be ANVG, classified {}",
                    report.class
                ));
            }
            Ok(ConstructionResult {
                arrangement: a,
                target: target.clone(),
                expected: ExpectedCertificate::from_report(&report),
                seed,
                retries_used: attempt,
            })
        })();
        match outcome {
            Ok(result) => return Ok(result),
            Err(reason) => last_failure = reason,
        }
    }
    Err(Error::RetryCapExceeded {
        attempts: RETRY_CAP,
        last_failure,
    })
}

/// Rank-2 intersection of multiplicity n/(n-k-1) in B(n,k), for any n, k with
/// n-k-1 dividing n and n-2 > k > 1: the sharpness witness for the rank-2
/// Athanasiadis bound. Points are sampled on n/(n-k-1) hyperplanes through a
/// fixed codimension-2 subspace of (n-k)-space and Gale-dualized.
pub fn rank2_general(n: usize, k: usize, seed: u64) -> Result<ConstructionResult> {
    if !(k > 1 && n > k + 2) {
        return Err(Error::UnsupportedParameter(format!(
            "need n - 2 > k > 1, got n = {n}, k = {k}"
        )));
    }
    let q = n - k - 1;
    if n % q != 0 {
        return Err(Error::UnsupportedParameter(format!(
            "n - k - 1 = {q} must divide n = {n}"
        )));
    }
    let m = n / q;
    let d = n - k; // ambient dimension of the point side
    let labels: Vec<Label> = (1..=n as Label).collect();
    let target: Vec<IndexSet> = (0..m)
        .map(|i| {
            let group: Vec<Label> = (1..=n as Label)
                .filter(|&l| {
                    let l0 = (l - 1) as usize;
                    l0 / q != i
                })
                .collect();
            IndexSet::new(group)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();

    for attempt in 0..RETRY_CAP {
        let outcome = (|| -> std::result::Result<ConstructionResult, String> {
            // group i lies on the hyperplane {a_i x_1 + b_i x_2 = 0}, which
            // contains the fixed codimension-2 subspace {x_1 = x_2 = 0}
            let mut points = Vec::with_capacity(n);
            for _group in 0..m {
                let (ai, bi) = loop {
                    let ai = sample_int(&mut rng);
                    let bi = sample_int(&mut rng);
                    if ai != 0 || bi != 0 {
                        break (ai, bi);
                    }
                };
                for _j in 0..q {
                    let c = loop {
                        let c = sample_int(&mut rng);
                        if c != 0 {
                            break c;
                        }
                    };
                    // c times the in-plane direction (-b_i, a_i), plus a free
                    // component inside the codimension-2 subspace
                    let mut beta = vec![
                        Scalar::from_int(-bi.checked_mul(c).expect("coordinates stay small")),
                        Scalar::from_int(ai.checked_mul(c).expect("coordinates stay small")),
                    ];
                    for _ in 2..d {
                        beta.push(Scalar::from_int(sample_int(&mut rng)));
                    }
                    points.push(beta);
                }
            }
            let config = crate::gale::PointConfiguration::new(d, points, labels.clone())
                .map_err(|e| e.to_string())?;
            if !config.in_general_position() {
                return Err("sampled points are not in general position".into());
            }
            let as_arrangement = Arrangement::new(d, config.points().to_vec(), Some(labels.clone()))
                .map_err(|e| e.to_string())?;
            let dual = gale_diagram(&as_arrangement).map_err(|e| e.to_string())?;
            let a = Arrangement::new(k, dual.points().to_vec(), Some(labels.clone()))
                .map_err(|e| e.to_string())?;
            if !a.is_generic() {
                return Err("dual arrangement is not generic".into());
            }
            let report = verify_rank2_target(&a, &target, m)?;
            Ok(ConstructionResult {
                arrangement: a,
                target: target.clone(),
                expected: ExpectedCertificate::from_report(&report),
                seed,
                retries_used: attempt,
            })
        })();
        match outcome {
            Ok(result) => return Ok(result),
            Err(reason) => last_failure = reason,
        }
    }
    Err(Error::RetryCapExceeded {
        attempts: RETRY_CAP,
        last_failure,
    })
}
