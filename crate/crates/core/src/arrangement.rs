//! Central hyperplane arrangements given by exact normal vectors.
//!
//! An arrangement is n hyperplanes through the origin of k-space, each
//! recorded by its normal. Labels are carried explicitly (signed labels are
//! allowed) so that constructions indexed by sets like [±(k+1)] survive a
//! round trip through files.

use serde::{Deserialize, Serialize};

use crate::combin::k_subsets;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par;
use crate::scalar::{Field, Scalar};

pub type Label = i64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    k: usize,
    field: Field,
    labels: Vec<Label>,
    /// One normal per hyperplane, each of length k.
    normals: Vec<Vec<Scalar>>,
}

impl Arrangement {
    /// Builds an arrangement; genericity is not required here and is checked
    /// separately by [`Arrangement::is_generic`].
    pub fn new(k: usize, normals: Vec<Vec<Scalar>>, labels: Option<Vec<Label>>) -> Result<Arrangement> {
        let n = normals.len();
        if k < 1 {
            return Err(Error::InvalidArrangement("k must be at least 1".into()));
        }
        if n <= k {
            return Err(Error::InvalidArrangement(format!(
                "need more hyperplanes than dimensions, got n = {n}, k = {k}"
            )));
        }
        let labels = labels.unwrap_or_else(|| (1..=n as Label).collect());
        if labels.len() != n {
            return Err(Error::InvalidArrangement(format!(
                "{} labels for {n} normals",
                labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArrangement("duplicate labels".into()));
        }
        let mut field = Field::Rational;
        for (normal, &label) in normals.iter().zip(&labels) {
            if normal.len() != k {
                return Err(Error::InvalidArrangement(format!(
                    "normal of hyperplane {label} has length {}, expected {k}",
                    normal.len()
                )));
            }
            if normal.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidArrangement(format!(
                    "normal of hyperplane {label} is zero"
                )));
            }
            for s in normal {
                if let Some(d) = s.quadratic_d() {
                    match field {
                        Field::Rational => field = Field::Quadratic(d),
                        Field::Quadratic(d0) if d0 == d => {}
                        Field::Quadratic(d0) => {
                            return Err(Error::FieldMismatch(format!(
                                "normals mix sqrt({d0}) and sqrt({d})"
                            )))
                        }
                    }
                }
            }
        }
        Ok(Arrangement {
            k,
            field,
            labels,
            normals,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn normals(&self) -> &[Vec<Scalar>] {
        &self.normals
    }

    pub fn position_of(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    pub fn normal_of(&self, label: Label) -> Result<&[Scalar]> {
        Ok(&self.normals[self.position_of(label)?])
    }

    /// The k x n matrix whose columns are the normals, in label order.
    pub fn normal_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.k, self.n());
        for (c, normal) in self.normals.iter().enumerate() {
            for (r, s) in normal.iter().enumerate() {
                *m.at_mut(r, c) = s.clone();
            }
        }
        m
    }

    /// True iff every k of the normals are linearly independent, i.e. every
    /// k x k minor of the normal matrix is nonzero.
    pub fn is_generic(&self) -> bool {
        let idx: Vec<usize> = (0..self.n()).collect();
        let subsets = k_subsets(&idx, self.k);
        par::all(&subsets, |cols| {
            let m = Matrix::from_rows(cols.iter().map(|&c| self.normals[c].clone()).collect())
                .expect("square by construction");
            !m.det().expect("square").is_zero()
        })
    }

    /// Removes the hyperplane with the given label, keeping the others. The
    /// result may have n <= k (such arrangements carry no (k+1)-subsets and
    /// hence an empty discriminantal arrangement).
    pub fn delete(&self, label: Label) -> Result<Arrangement> {
        let pos = self.position_of(label)?;
        let mut labels = self.labels.clone();
        let mut normals = self.normals.clone();
        labels.remove(pos);
        normals.remove(pos);
        Ok(Arrangement {
            k: self.k,
            field: self.field,
            labels,
            normals,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ArrangementFile::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Arrangement> {
        let file: ArrangementFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_arrangement()
    }
}

/// On-disk form. Normals are listed one hyperplane at a time (each inner list
/// is one normal vector, i.e. one column of the normal matrix).
#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    k: usize,
    field: Field,
    labels: Vec<Label>,
    normals: Vec<Vec<Scalar>>,
}

impl From<&Arrangement> for ArrangementFile {
    fn from(a: &Arrangement) -> ArrangementFile {
        ArrangementFile {
            k: a.k,
            field: a.field,
            labels: a.labels.clone(),
            normals: a.normals.clone(),
        }
    }
}

impl ArrangementFile {
    fn into_arrangement(self) -> Result<Arrangement> {
        let a = Arrangement::new(self.k, self.normals, Some(self.labels))?;
        // the declared tag must cover every scalar actually present
        match (self.field, a.field) {
            (Field::Rational, Field::Quadratic(d)) => Err(Error::FieldMismatch(format!(
                "file declares rational field but contains sqrt({d}) scalars"
            ))),
            (Field::Quadratic(d0), Field::Quadratic(d)) if d0 != d => Err(Error::FieldMismatch(
                format!("file declares sqrt({d0}) but contains sqrt({d})"),
            )),
            (declared, _) => Ok(Arrangement { field: declared, ..a }),
        }
    }
}
