//! Unit-norm 2-tight frames: arithmetic-progression blocks with their
//! reversal doubling, and weight-in-front frames built from two-row tables.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{RadicalScalar, Rational};
use crate::unitary::ones_minus_twice_identity;

fn root(q: &Rational) -> RadicalScalar {
    RadicalScalar::sqrt_rational(q).expect("nonnegative radicand")
}

fn inv_root(q: &Rational) -> RadicalScalar {
    RadicalScalar::inv_sqrt_rational(q).expect("positive radicand")
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Square block with magnitudes `√mags[j]` in column `j` and the signs of `J − 2I`.
fn signed_block(mags: &[Rational]) -> ExactMatrix {
    let n = mags.len();
    ExactMatrix::from_fn(n, n, |i, j| {
        let v = root(&mags[j]);
        if i == j {
            -v
        } else {
            v
        }
    })
}

/// The 8×4 unit-norm 2-tight frame `[A; A^RC]` whose top row has squared
/// magnitudes `a+3b, a+2b, a+b, a` over `4a+6b`.
pub fn ap_two_tight(a: &Rational, b: &Rational) -> Result<ExactMatrix> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::Domain(format!("ap_two_tight needs a > 0 and b >= 0, got a={a}, b={b}")));
    }
    let total = a * int(4) + b * int(6);
    let mags: Vec<Rational> = (0..4).map(|j| (a + b * int(3 - j)) / &total).collect();
    let top = signed_block(&mags);
    top.vstack(&top.reverse_both())
}

/// `[[A, B], [A, −B], [B^RC, A^RC], [B^RC, −A^RC]]` for equal-shape blocks.
///
/// No scaling is applied; normalize the rows to get a unit-norm frame.
pub fn iterate_two_tight(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.shape() != b.shape() {
        return Err(Error::dimension(
            "iterate_two_tight",
            format!("blocks {:?} and {:?} differ", a.shape(), b.shape()),
        ));
    }
    let (arc, brc) = (a.reverse_both(), b.reverse_both());
    let rows = [
        a.hstack(b)?,
        a.hstack(&b.neg())?,
        brc.hstack(&arc)?,
        brc.hstack(&arc.neg())?,
    ];
    ExactMatrix::vstack_all(&rows)
}

/// The 16×8 frame from one doubling step: squared magnitudes `a+7b, …, a`
/// split across the two blocks, normalized by `1/√(8a+28b)`.
pub fn ap_two_tight_doubled(a: &Rational, b: &Rational) -> Result<ExactMatrix> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::Domain(format!("ap_two_tight needs a > 0 and b >= 0, got a={a}, b={b}")));
    }
    let mags: Vec<Rational> = (0..8).map(|j| a + b * int(7 - j)).collect();
    let left = signed_block(&mags[..4]);
    let right = signed_block(&mags[4..]);
    let scale = inv_root(&(a * int(8) + b * int(28)));
    Ok(iterate_two_tight(&left, &right)?.scale(&scale))
}

/// ±1 matrix of order `2^j` with orthogonal columns: `J − 2I` at order 4,
/// then `[[S, S], [S, −S]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMatrix {
    matrix: ExactMatrix,
}

impl SignMatrix {
    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn is_negative(&self, i: usize, j: usize) -> bool {
        self.matrix[(i, j)] != RadicalScalar::one()
    }
}

pub fn sign_matrix(j: u32) -> Result<SignMatrix> {
    if !(2..=16).contains(&j) {
        return Err(Error::Domain(format!("sign_matrix order exponent must be in 2..=16, got {j}")));
    }
    let mut s = ones_minus_twice_identity(4);
    for _ in 2..j {
        let top = s.hstack(&s)?;
        let bottom = s.hstack(&s.neg())?;
        s = top.vstack(&bottom)?;
    }
    Ok(SignMatrix { matrix: s })
}

/// Two rows of `2^k` nonnegative weights whose column pairs sum to `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoRowTable {
    top: Vec<Rational>,
    bottom: Vec<Rational>,
    m: Rational,
}

impl TwoRowTable {
    /// Validates the table; every violated identity is reported.
    pub fn new(top: Vec<Rational>, bottom: Vec<Rational>, m: Rational) -> Result<Self> {
        let mut problems = Vec::new();
        let len = top.len();
        if len != bottom.len() {
            problems.push(format!("rows have lengths {len} and {}", bottom.len()));
        }
        if len < 4 || !len.is_power_of_two() {
            problems.push(format!("row length {len} is not a power of two >= 4"));
        }
        if !m.is_positive() {
            problems.push(format!("pair sum m = {m} is not positive"));
        }
        for (j, (t, b)) in top.iter().zip(&bottom).enumerate() {
            if t.is_negative() || b.is_negative() {
                problems.push(format!("column {}: negative entry ({t}, {b})", j + 1));
            }
            let s = t + b;
            if s != m {
                problems.push(format!("column {}: {t} + {b} = {s}, expected {m}", j + 1));
            }
        }
        let expected = &m * int(len as i64 / 2);
        let (ts, bs): (Rational, Rational) = (top.iter().sum(), bottom.iter().sum());
        if ts != expected || bs != expected {
            problems.push(format!("row sums: top {ts}, bottom {bs}, expected {expected}"));
        }
        if !problems.is_empty() {
            return Err(Error::Validation { problems });
        }
        Ok(Self { top, bottom, m })
    }

    pub fn top(&self) -> &[Rational] {
        &self.top
    }

    pub fn bottom(&self) -> &[Rational] {
        &self.bottom
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// Number of columns, `2^k`.
    pub fn width(&self) -> usize {
        self.top.len()
    }

    pub fn k(&self) -> u32 {
        self.width().trailing_zeros()
    }

    /// The common row sum `2^{k−1}·m`.
    pub fn row_sum(&self) -> Rational {
        &self.m * int(self.width() as i64 / 2)
    }
}

/// Table `(values | m − rev(values))` over `(m − values | rev(values))`.
pub fn make_two_row_table(values: &[Rational], m: &Rational) -> Result<TwoRowTable> {
    if values.len() < 2 || !values.len().is_power_of_two() {
        return Err(Error::Domain(format!(
            "need a power-of-two count >= 2 of values, got {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_positive()) {
        return Err(Error::Domain(format!("values must be positive, got {v}")));
    }
    if let Some(v) = values.iter().find(|v| *v > m) {
        return Err(Error::Domain(format!("m = {m} is below value {v}; m - {v} would be negative")));
    }
    let complement = |v: &Rational| m - v;
    let top = values
        .iter()
        .cloned()
        .chain(values.iter().rev().map(complement))
        .collect();
    let bottom = values
        .iter()
        .map(complement)
        .chain(values.iter().rev().cloned())
        .collect();
    TwoRowTable::new(top, bottom, m.clone())
}

/// The eight-column table for `a, b, c, d` with `m = a + b + c + d`.
pub fn abcd_outline(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<TwoRowTable> {
    let vals = [a, b, c, d];
    if let Some(v) = vals.iter().find(|v| !v.is_positive()) {
        return Err(Error::Domain(format!("abcd_outline needs positive parameters, got {v}")));
    }
    let m: Rational = vals.iter().copied().sum();
    let top = vals
        .iter()
        .map(|v| (*v).clone())
        .chain(vals.iter().rev().map(|v| &m - *v))
        .collect();
    let bottom = vals
        .iter()
        .map(|v| &m - *v)
        .chain(vals.iter().rev().map(|v| (*v).clone()))
        .collect();
    TwoRowTable::new(top, bottom, m)
}

/// Each row of the table repeated `2^k` times under the signs of
/// `sign_matrix(k)`, without normalization.
pub fn weight_in_front_unnormalized(table: &TwoRowTable) -> Result<ExactMatrix> {
    let signs = sign_matrix(table.k())?;
    let n = table.width();
    let half = |row: &[Rational]| {
        let mags: Vec<RadicalScalar> = row.iter().map(root).collect();
        ExactMatrix::from_fn(n, n, |i, j| {
            if signs.is_negative(i, j) {
                -&mags[j]
            } else {
                mags[j].clone()
            }
        })
    };
    half(table.top()).vstack(&half(table.bottom()))
}

/// Unit-norm 2-tight frame of `2^{k+1}` vectors in `2^k` dimensions.
pub fn weight_in_front(table: &TwoRowTable) -> Result<ExactMatrix> {
    let raw = weight_in_front_unnormalized(table)?;
    Ok(raw.scale(&inv_root(&table.row_sum())))
}
