//! Sparse orthogonal bases for hyperplanes whose normal has no zero
//! coordinate, built recursively by gluing two smaller bases block-diagonally
//! under a new dense top row.
//!
//! Matrices are kept with their integer displays (rows are orthogonal but not
//! unit); [`ExactMatrix::normalize_rows`] turns them into orthonormal bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{RadicalScalar, Rational};

/// An `(n−1)×n` matrix with pairwise orthogonal rows spanning the hyperplane
/// orthogonal to `normal`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneBasis {
    matrix: ExactMatrix,
    normal: Vec<Rational>,
    sparsity: usize,
}

/// How the dense top row of a combination is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopRowMode {
    /// All-ones top row. Each block must be orthogonal to the all-ones vector,
    /// or contain an all-ones row, which is then swapped for the block normal.
    Ones,
    /// Top row `(‖v‖²·u | −‖u‖²·v)` from the block normals `u`, `v`; always valid.
    Weighted,
}

impl HyperplaneBasis {
    fn from_rows(rows: Vec<Vec<Rational>>, normal: Vec<Rational>) -> Self {
        let matrix = ExactMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(RadicalScalar::from_rational).collect())
                .collect(),
        )
        .expect("hyperplane rows are nonempty and rectangular");
        let sparsity = matrix.sparsity();
        Self {
            matrix,
            normal,
            sparsity,
        }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn sparsity(&self) -> usize {
        self.sparsity
    }

    /// Ambient dimension `n`.
    pub fn dimension(&self) -> usize {
        self.matrix.cols()
    }

    fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.matrix
            .row_iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.as_rational().expect("hyperplane entries are rational"))
                    .collect()
            })
            .collect()
    }

    /// Rows of an orthogonal basis of `1^⊥` in the same ambient space, if one
    /// is available without changing the support pattern.
    fn ones_complement_rows(&self) -> Option<Vec<Vec<Rational>>> {
        let mut rows = self.rational_rows();
        if self.normal.iter().all(|x| x == &self.normal[0]) {
            return Some(rows);
        }
        let ones = rows.iter().position(|r| r.iter().all(One::is_one))?;
        rows[ones] = self.normal.clone();
        Some(rows)
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn norm2(v: &[Rational]) -> Rational {
    v.iter().map(|x| x * x).sum()
}

/// Positive rescaling of a rational vector to coprime integers.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

fn int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
        .collect()
}

/// The displayed bases for `n = 2, 3, 4`.
pub fn base_case(n: usize) -> Result<HyperplaneBasis> {
    let (rows, normal) = match n {
        2 => (int_rows(&[[1, 1]]), vec![1, -1]),
        3 => (int_rows(&[[1, 2, 1], [0, -1, 2]]), vec![-5, 2, 1]),
        4 => (
            int_rows(&[[1, 1, 1, 1], [1, -1, 0, 0], [0, 0, 1, -1]]),
            vec![1, 1, -1, -1],
        ),
        _ => {
            return Err(Error::Domain(format!(
                "base cases exist for n = 2, 3, 4; got {n}"
            )))
        }
    };
    Ok(HyperplaneBasis::from_rows(
        rows,
        normal.into_iter().map(int).collect(),
    ))
}

/// Glues `first` (over ℝ^p) and `second` (over ℝ^q) into a basis over ℝ^{p+q}
/// with rows `[top; first ⊕ 0; 0 ⊕ second]`.
pub fn combine(
    first: &HyperplaneBasis,
    second: &HyperplaneBasis,
    mode: TopRowMode,
) -> Result<HyperplaneBasis> {
    let p = first.dimension();
    let q = second.dimension();
    let (top, lower_first, lower_second, normal) = match mode {
        TopRowMode::Ones => {
            let (Some(k1), Some(k2)) = (first.ones_complement_rows(), second.ones_complement_rows())
            else {
                return Err(Error::Mode(
                    "the all-ones row is not orthogonal to every block row; use Weighted".into(),
                ));
            };
            let top = vec![Rational::one(); p + q];
            let normal: Vec<Rational> = std::iter::repeat_n(int(q as i64), p)
                .chain(std::iter::repeat_n(int(-(p as i64)), q))
                .collect();
            (top, k1, k2, primitive(&normal))
        }
        TopRowMode::Weighted => {
            let u = &first.normal;
            let v = &second.normal;
            let (nu, nv) = (norm2(u), norm2(v));
            let top: Vec<Rational> = u
                .iter()
                .map(|x| x * &nv)
                .chain(v.iter().map(|x| -(x * &nu)))
                .collect();
            let normal: Vec<Rational> = u.iter().chain(v.iter()).cloned().collect();
            (
                primitive(&top),
                first.rational_rows(),
                second.rational_rows(),
                primitive(&normal),
            )
        }
    };
    let mut rows = Vec::with_capacity(p + q - 1);
    rows.push(top);
    rows.extend(lower_first.into_iter().map(|mut r| {
        r.resize(p + q, Rational::zero());
        r
    }));
    rows.extend(lower_second.into_iter().map(|r| {
        let mut padded = vec![Rational::zero(); p];
        padded.extend(r);
        padded
    }));
    Ok(HyperplaneBasis::from_rows(rows, normal))
}

/// Block sizes `(p, q)` with `p + q = n` used by [`build`], larger block
/// first; `None` for the base cases `n ≤ 4`.
///
/// * `n ≡ 0 (mod 4)`: two copies of `n/2`.
/// * `n ≡ 2 (mod 4)`: `n/2 + 1` and `n/2 − 1`.
/// * odd `n = 2^k + 1 + 2i` (`2^k` the largest power of two below `n`):
///   `2^{k−1} + 2i` and `2^{k−1} + 1`.
pub fn split(n: usize) -> Option<(usize, usize)> {
    if n <= 4 {
        return None;
    }
    let (a, b) = if n.is_multiple_of(4) {
        (n / 2, n / 2)
    } else if n.is_multiple_of(2) {
        (n / 2 + 1, n / 2 - 1)
    } else {
        let pow = 1usize << (usize::BITS - 1 - (n - 1).leading_zeros());
        let i = (n - 1 - pow) / 2;
        (pow / 2 + 2 * i, pow / 2 + 1)
    };
    Some((a.max(b), a.min(b)))
}

/// Recursive construction for any `n ≥ 2`; the all-ones top row is used
/// whenever both blocks admit it.
pub fn build(n: usize) -> Result<HyperplaneBasis> {
    if n < 2 {
        return Err(Error::Domain(format!("hyperplane bases need n >= 2, got {n}")));
    }
    let Some((p, q)) = split(n) else {
        return base_case(n);
    };
    let first = build(p)?;
    let second = build(q)?;
    match combine(&first, &second, TopRowMode::Ones) {
        Ok(h) => Ok(h),
        Err(Error::Mode(_)) => combine(&first, &second, TopRowMode::Weighted),
        Err(e) => Err(e),
    }
}

/// Sparsity of [`build`]`(n)` from the recurrences alone. Every combination
/// adds a dense top row of length `n` to the two block sparsities, e.g.
/// `s(4m) = 2·s(2m) + 4m` and `s(2m + 2) = s(m + 2) + s(m) + 2m + 2`.
pub fn predicted_sparsity(n: usize) -> Result<usize> {
    match n {
        0 | 1 => Err(Error::Domain(format!("hyperplane bases need n >= 2, got {n}"))),
        2 => Ok(2),
        3 => Ok(5),
        4 => Ok(8),
        _ if n.is_multiple_of(4) => Ok(2 * predicted_sparsity(n / 2)? + n),
        _ if n.is_multiple_of(2) => {
            let m = n / 2 - 1;
            Ok(predicted_sparsity(m + 2)? + predicted_sparsity(m)? + 2 * m + 2)
        }
        _ => {
            let (p, q) = split(n).expect("n > 4");
            Ok(n + predicted_sparsity(p)? + predicted_sparsity(q)?)
        }
    }
}
