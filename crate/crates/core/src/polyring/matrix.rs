use std::fmt;

use num_traits::{One, Zero};

use super::{format_rational, Form, ProjPoint, Rational};

/// A 3×3 matrix over the rationals, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    rows: [[Rational; 3]; 3],
}

impl Mat3 {
    pub fn new(rows: [[Rational; 3]; 3]) -> Mat3 {
        Mat3 { rows }
    }

    pub fn from_rows(rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3 {
            rows: rows.map(|r| r.map(|v| Rational::from_integer(v.into()))),
        }
    }

    pub fn from_columns(cols: [&[Rational; 3]; 3]) -> Mat3 {
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
        Mat3 { rows }
    }

    pub fn identity() -> Mat3 {
        Mat3::from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn rows(&self) -> &[[Rational; 3]; 3] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn det(&self) -> Rational {
        let m = &self.rows;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Classical adjoint: `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.rows;
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let minor = &m[rs[0]][cs[0]] * &m[rs[1]][cs[1]] - &m[rs[0]][cs[1]] * &m[rs[1]][cs[0]];
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        // adj = transpose of the cofactor matrix
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)));
        Mat3 { rows }
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let inv = det.recip();
        let adj = self.adjugate();
        Some(Mat3 {
            rows: adj.rows.map(|r| r.map(|v| v * &inv)),
        })
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let rows = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(Rational::zero(), |acc, k| {
                    acc + &self.rows[i][k] * &other.rows[k][j]
                })
            })
        });
        Mat3 { rows }
    }

    pub fn mul_vec(&self, v: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(Rational::zero(), |acc, k| acc + &self.rows[i][k] * &v[k])
        })
    }

    /// Image of a point; `None` never happens for invertible matrices.
    pub fn apply(&self, p: &ProjPoint) -> Option<ProjPoint> {
        ProjPoint::new(self.mul_vec(p.coords())).ok()
    }

    pub fn scale(&self, c: &Rational) -> Mat3 {
        Mat3 {
            rows: self.rows.clone().map(|r| r.map(|v| v * c)),
        }
    }

    pub fn is_scalar_multiple_of_identity(&self) -> bool {
        let d = &self.rows[0][0];
        !d.is_zero()
            && (0..3).all(|i| {
                (0..3).all(|j| {
                    if i == j {
                        &self.rows[i][j] == d
                    } else {
                        self.rows[i][j].is_zero()
                    }
                })
            })
    }

    /// Row `i` as the linear form `Σ_j M[i][j] x_j`.
    pub fn row_forms(&self) -> [Form; 3] {
        std::array::from_fn(|i| Form::linear(&self.rows[i]))
    }

    /// Invertible matrix sending `[0:0:1]` to `p`: the last column is `p`,
    /// the other two are the standard basis vectors other than `e_k`, where
    /// `k` is the index of the last nonzero coordinate of `p`.
    pub fn moving_origin_to(p: &ProjPoint) -> Mat3 {
        let c = p.coords();
        let k = (0..3)
            .rev()
            .find(|&i| !c[i].is_zero())
            .expect("nonzero point");
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let unit = |i: usize| -> [Rational; 3] {
            std::array::from_fn(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
        };
        let (e1, e2) = (unit(others[0]), unit(others[1]));
        Mat3::from_columns([&e1, &e2, c])
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(format_rational).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
