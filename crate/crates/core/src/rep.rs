//! Representation spaces and coordinate vectors.
//!
//! Coordinate layouts:
//!
//! | space | coordinates |
//! |---|---|
//! | `Symm{n}` | upper triangle `i <= j`, row-major |
//! | `Alt{n}` | strict upper triangle `i < j`, row-major |
//! | `Square{n}`, `Rect{m,n}` | all entries, row-major |
//! | `Plain{n}` | the vector itself |
//! | `Wedge{d,n}` | sorted `d`-subsets in colex order |
//! | `Cubic` | `(a0, a1, a2, a3)` for `a0 x^3 + a1 x^2 y + a2 x y^2 + a3 y^3` |
//! | `TriTensor` | `a[i][j][k]` at index `4i + 2j + k` |

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Ring};
use crate::matrix::Matrix;
use crate::wedge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Symm { n: usize },
    Alt { n: usize },
    Square { n: usize },
    Rect { m: usize, n: usize },
    Plain { n: usize },
    Wedge { d: usize, n: usize },
    Cubic,
    TriTensor,
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::Symm { n } => n * (n + 1) / 2,
            Space::Alt { n } => n * n.saturating_sub(1) / 2,
            Space::Square { n } => n * n,
            Space::Rect { m, n } => m * n,
            Space::Plain { n } => n,
            Space::Wedge { d, n } => wedge::binom(n, d),
            Space::Cubic => 4,
            Space::TriTensor => 8,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Space::Symm { .. } => "symm",
            Space::Alt { .. } => "alt",
            Space::Square { .. } => "square",
            Space::Rect { .. } => "rect",
            Space::Plain { .. } => "plain",
            Space::Wedge { .. } => "wedge",
            Space::Cubic => "cubic",
            Space::TriTensor => "tritensor",
        }
    }

    pub fn params_json(&self) -> Value {
        match *self {
            Space::Symm { n } | Space::Alt { n } | Space::Square { n } | Space::Plain { n } => json!({ "n": n }),
            Space::Rect { m, n } => json!({ "m": m, "n": n }),
            Space::Wedge { d, n } => json!({ "d": d, "n": n }),
            Space::Cubic | Space::TriTensor => json!({}),
        }
    }

    /// Shape of the matrix view, for the matrix spaces.
    pub fn matrix_shape(&self) -> Option<(usize, usize)> {
        match *self {
            Space::Symm { n } | Space::Alt { n } | Space::Square { n } => Some((n, n)),
            Space::Rect { m, n } => Some((m, n)),
            _ => None,
        }
    }

    /// Number of JSON entries: full matrices for matrix spaces, coordinates otherwise.
    fn json_len(&self) -> usize {
        match self.matrix_shape() {
            Some((m, n)) => m * n,
            None => self.dim(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Space::Symm { n } | Space::Alt { n } | Space::Square { n } | Space::Plain { n } => n >= 1,
            Space::Rect { m, n } => m >= 1 && n >= 1,
            Space::Wedge { d, n } => d >= 1 && d <= n,
            Space::Cubic | Space::TriTensor => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("invalid space parameters {self}")))
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Space::Symm { n } => write!(f, "symm({n})"),
            Space::Alt { n } => write!(f, "alt({n})"),
            Space::Square { n } => write!(f, "square({n})"),
            Space::Rect { m, n } => write!(f, "rect({m}x{n})"),
            Space::Plain { n } => write!(f, "plain({n})"),
            Space::Wedge { d, n } => write!(f, "wedge({d},{n})"),
            Space::Cubic => write!(f, "cubic"),
            Space::TriTensor => write!(f, "tritensor"),
        }
    }
}

/// An element of a [`Space`] with coordinates in a [`Ring`].
#[derive(Clone, PartialEq)]
pub struct RepVector<R = FieldElement> {
    space: Space,
    coords: Vec<R>,
}

impl<R: Ring> fmt::Debug for RepVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.space, self.coords)
    }
}

impl<R: Ring> RepVector<R> {
    pub fn new(space: Space, coords: Vec<R>) -> Self {
        assert_eq!(coords.len(), space.dim(), "wrong number of coordinates for {space}");
        RepVector { space, coords }
    }

    pub fn zero(space: Space, field: Field) -> Self {
        RepVector::new(space, vec![R::zero_in(field); space.dim()])
    }

    /// The `i`-th coordinate basis vector.
    pub fn basis(space: Space, field: Field, i: usize) -> Self {
        let mut v = RepVector::zero(space, field);
        v.coords[i] = R::one_in(field);
        v
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    pub fn field(&self) -> Field {
        self.coords.first().map(|c| c.field()).unwrap_or(Field::Rational)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.space, rhs.space, "adding vectors of different spaces");
        RepVector::new(self.space, self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.space, rhs.space, "subtracting vectors of different spaces");
        RepVector::new(self.space, self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        RepVector::new(self.space, self.coords.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplies every coordinate by a ring element.
    pub fn scale_by(&self, c: &R) -> Self {
        RepVector::new(self.space, self.coords.iter().map(|a| a.mul(c)).collect())
    }

    /// `sum_i c_i v_i`.
    pub fn combination(space: Space, field: Field, terms: &[(FieldElement, &RepVector<R>)]) -> Self {
        let mut acc = RepVector::zero(space, field);
        for (c, v) in terms {
            acc = acc.add(&v.scale(c));
        }
        acc
    }

    /// Full matrix view of a matrix-space vector.
    pub fn to_matrix(&self) -> Result<Matrix<R>> {
        let field = self.field();
        match self.space {
            Space::Symm { n } => {
                let mut m = Matrix::zeros(field, n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m.set(i, j, self.coords[k].clone());
                        m.set(j, i, self.coords[k].clone());
                        k += 1;
                    }
                }
                Ok(m)
            }
            Space::Alt { n } => {
                let mut m = Matrix::zeros(field, n, n);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        m.set(i, j, self.coords[k].clone());
                        m.set(j, i, self.coords[k].neg());
                        k += 1;
                    }
                }
                Ok(m)
            }
            Space::Square { n } => Ok(Matrix::from_vec(n, n, self.coords.clone())),
            Space::Rect { m, n } => Ok(Matrix::from_vec(m, n, self.coords.clone())),
            other => Err(Error::Unsupported(format!("{other} has no matrix view"))),
        }
    }

    /// Reads coordinates back from a full matrix (upper triangle for symmetric
    /// and alternating spaces).
    pub fn from_matrix(space: Space, m: &Matrix<R>) -> Result<Self> {
        let shape = space
            .matrix_shape()
            .ok_or_else(|| Error::Unsupported(format!("{space} has no matrix view")))?;
        if (m.rows(), m.cols()) != shape {
            return Err(Error::SpaceMismatch {
                expected: format!("{}x{}", shape.0, shape.1),
                found: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let coords = match space {
            Space::Symm { n } => (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).clone()).collect(),
            Space::Alt { n } => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| m.get(i, j).clone())
                .collect(),
            _ => m.data().to_vec(),
        };
        Ok(RepVector::new(space, coords))
    }
}

impl RepVector<FieldElement> {
    /// Builds a vector from integer coordinates.
    pub fn from_ints(space: Space, field: Field, coords: &[i64]) -> Self {
        RepVector::new(space, coords.iter().map(|&x| field.int(x)).collect())
    }

    /// Builds a matrix-space vector from integer rows, checking the symmetry type.
    pub fn from_int_rows(space: Space, field: Field, rows: &[&[i64]]) -> Result<Self> {
        let m = Matrix::from_ints(field, rows);
        check_matrix_type(space, &m)?;
        RepVector::from_matrix(space, &m)
    }

    /// The coordinates lifted to constant polynomials.
    pub fn to_poly(&self) -> RepVector<crate::poly::Poly> {
        RepVector::new(self.space, self.coords.iter().cloned().map(crate::poly::Poly::constant).collect())
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<String> = match self.space.matrix_shape() {
            Some(_) => self.to_matrix().expect("matrix view").data().iter().map(|x| x.to_string()).collect(),
            None => self.coords.iter().map(|x| x.to_string()).collect(),
        };
        json!({
            "space": self.space.tag(),
            "params": self.space.params_json(),
            "field": self.field().descriptor(),
            "entries": entries,
        })
    }

    /// Parses the JSON encoding. A `"field"` key, when present, must agree with `field`.
    pub fn from_json(value: &Value, field: Field) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("vector must be a JSON object".into()))?;
        if let Some(f) = obj.get("field").and_then(Value::as_str) {
            let declared: Field = f.parse()?;
            if declared != field {
                return Err(Error::FieldMismatch(declared.to_string(), field.to_string()));
            }
        }
        let tag = obj
            .get("space")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"space\"".into()))?;
        let empty = json!({});
        let params = obj.get("params").unwrap_or(&empty);
        let param = |key: &str| -> Result<usize> {
            params
                .get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("space {tag:?} needs integer param {key:?}")))
        };
        let space = match tag {
            "symm" => Space::Symm { n: param("n")? },
            "alt" => Space::Alt { n: param("n")? },
            "square" => Space::Square { n: param("n")? },
            "rect" => Space::Rect { m: param("m")?, n: param("n")? },
            "plain" => Space::Plain { n: param("n")? },
            "wedge" => Space::Wedge { d: param("d")?, n: param("n")? },
            "cubic" => Space::Cubic,
            "tritensor" => Space::TriTensor,
            other => return Err(Error::Parse(format!("unknown space {other:?}"))),
        };
        space.validate()?;
        let entries = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"entries\" array".into()))?;
        if entries.len() != space.json_len() {
            return Err(Error::Parse(format!(
                "{space} expects {} entries, got {}",
                space.json_len(),
                entries.len()
            )));
        }
        let values = entries
            .iter()
            .map(|e| match e {
                Value::String(s) => field.parse_element(s),
                Value::Number(n) => field.parse_element(&n.to_string()),
                _ => Err(Error::Parse(format!("entry {e} is not a number or \"p/q\" string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        match space.matrix_shape() {
            Some((m, n)) => {
                let mat = Matrix::from_vec(m, n, values);
                check_matrix_type(space, &mat)?;
                RepVector::from_matrix(space, &mat)
            }
            None => Ok(RepVector::new(space, values)),
        }
    }
}

fn check_matrix_type(space: Space, m: &Matrix) -> Result<()> {
    match space {
        Space::Symm { .. } if !m.is_symmetric() => Err(Error::Parse("matrix is not symmetric".into())),
        Space::Alt { .. } if !m.is_alternating() => Err(Error::Parse("matrix is not alternating".into())),
        _ => Ok(()),
    }
}
