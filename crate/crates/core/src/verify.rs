//! Exact certification of unitarity, tightness, hyperplane bases and
//! unbiasedness.
//!
//! Every check compares exact Gram entries against their target values; no
//! tolerance is involved except in [`float_tight_residual`] and in the float
//! fallback of the hyperplane normal computation.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{RadicalScalar, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    Unitary,
    TightFrame,
    OrthogonalColumns,
    HyperplaneBasis,
    UnbiasedPair,
    EqualNormRows,
}

/// Which pair of vectors a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Rows,
    Columns,
    /// Row `i` of the first basis against row `j` of the second.
    Cross,
    /// Coordinate `i` of the hyperplane normal.
    Normal,
}

/// A failing entry: 1-based indices as they appear in printed matrices, and
/// the exact difference from the expected value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub axis: Axis,
    pub i: usize,
    pub j: usize,
    pub residual: String,
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} ({}, {}): residual {} ({})",
            self.axis, self.i, self.j, self.residual, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub property: Property,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Tightness constant, present on passing tight-frame reports.
    #[serde(serialize_with = "ser_opt_rational", skip_serializing_if = "Option::is_none")]
    pub k_value: Option<Rational>,
    /// Hyperplane normal, one entry per coordinate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<String>>,
    /// Set when part of the check ran in floating point.
    pub approximate: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<VerifyReport>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl VerifyReport {
    fn pass(property: Property) -> Self {
        Self {
            passed: true,
            property,
            witness: None,
            k_value: None,
            normal: None,
            approximate: false,
            subchecks: Vec::new(),
        }
    }

    fn fail(property: Property, witness: Witness) -> Self {
        Self {
            passed: false,
            witness: Some(witness),
            ..Self::pass(property)
        }
    }

    /// True when this report and all of its subchecks passed.
    pub fn all_passed(&self) -> bool {
        self.passed && self.subchecks.iter().all(VerifyReport::all_passed)
    }

    pub fn subcheck(&self, property: Property) -> Option<&VerifyReport> {
        self.subchecks.iter().find(|r| r.property == property)
    }
}

fn witness(axis: Axis, i: usize, j: usize, residual: &RadicalScalar, detail: impl Into<String>) -> Witness {
    Witness {
        axis,
        i: i + 1,
        j: j + 1,
        residual: residual.to_string(),
        detail: detail.into(),
    }
}

/// First entry (upper triangle, row-major) where `gram` differs from `target·I`.
fn gram_defect(gram: &ExactMatrix, target: &RadicalScalar, axis: Axis) -> Option<Witness> {
    let n = gram.rows();
    for i in 0..n {
        for j in i..n {
            let g = &gram[(i, j)];
            if i == j {
                let r = g - target;
                if !r.is_zero() {
                    return Some(witness(axis, i, j, &r, format!("squared norm {g}, expected {target}")));
                }
            } else if !g.is_zero() {
                return Some(witness(axis, i, j, g, format!("inner product {g}, expected 0")));
            }
        }
    }
    None
}

/// Passes iff `AᵀA = I`. For square matrices this is equivalent to `AAᵀ = I`,
/// which is what is computed so that witnesses name rows.
pub fn check_unitary(a: &ExactMatrix) -> Result<VerifyReport> {
    if !a.is_square() {
        return Err(Error::dimension(
            "check_unitary",
            format!("{}x{} is not square", a.rows(), a.cols()),
        ));
    }
    let gram = a.gram_rows();
    Ok(match gram_defect(&gram, &RadicalScalar::one(), Axis::Rows) {
        None => VerifyReport::pass(Property::Unitary),
        Some(w) => VerifyReport::fail(Property::Unitary, w),
    })
}

pub fn check_orthogonal_columns(a: &ExactMatrix) -> VerifyReport {
    let gram = a.gram_columns();
    let n = gram.rows();
    for i in 0..n {
        if gram[(i, i)].is_zero() {
            return VerifyReport::fail(
                Property::OrthogonalColumns,
                witness(Axis::Columns, i, i, &gram[(i, i)], "zero column"),
            );
        }
        for j in i + 1..n {
            if !gram[(i, j)].is_zero() {
                return VerifyReport::fail(
                    Property::OrthogonalColumns,
                    witness(Axis::Columns, i, j, &gram[(i, j)], "columns not orthogonal"),
                );
            }
        }
    }
    VerifyReport::pass(Property::OrthogonalColumns)
}

/// Passes iff every row has squared norm exactly 1.
pub fn check_unit_rows(a: &ExactMatrix) -> VerifyReport {
    let one = RadicalScalar::one();
    for i in 0..a.rows() {
        let n2 = a.row_dot(i, a, i);
        if n2 != one {
            return VerifyReport::fail(
                Property::EqualNormRows,
                witness(Axis::Rows, i, i, &(&n2 - &one), format!("squared norm {n2}, expected 1")),
            );
        }
    }
    VerifyReport::pass(Property::EqualNormRows)
}

/// Passes iff `AᵀA = k·I` for a rational `k > 0`; the unit-norm-rows result
/// is attached as an [`Property::EqualNormRows`] subcheck.
pub fn check_tight_frame(a: &ExactMatrix) -> VerifyReport {
    let gram = a.gram_columns();
    let k = gram[(0, 0)].as_rational().filter(|q| q.is_positive());
    let mut report = match k {
        None => VerifyReport::fail(
            Property::TightFrame,
            witness(
                Axis::Columns,
                0,
                0,
                &gram[(0, 0)],
                "first column norm is not a positive rational",
            ),
        ),
        Some(k) => match gram_defect(&gram, &RadicalScalar::from_rational(k.clone()), Axis::Columns) {
            None => VerifyReport {
                k_value: Some(k),
                ..VerifyReport::pass(Property::TightFrame)
            },
            Some(w) => VerifyReport::fail(Property::TightFrame, w),
        },
    };
    report.subchecks.push(check_unit_rows(a));
    report
}

/// A hyperplane normal, exact when the rows could be brought to rational form.
#[derive(Debug, Clone, PartialEq)]
pub enum Normal {
    Exact(Vec<Rational>),
    Approximate(Vec<f64>),
}

impl Normal {
    pub fn zero_coordinates(&self) -> Vec<usize> {
        match self {
            Normal::Exact(v) => (0..v.len()).filter(|&i| v[i].is_zero()).collect(),
            Normal::Approximate(v) => (0..v.len()).filter(|&i| v[i].abs() <= FLOAT_ZERO).collect(),
        }
    }

    fn render(&self) -> Vec<String> {
        match self {
            Normal::Exact(v) => v.iter().map(ToString::to_string).collect(),
            Normal::Approximate(v) => v.iter().map(|x| format!("{x:e}")).collect(),
        }
    }
}

const FLOAT_ZERO: f64 = 1e-9;

/// Brings a row to rational form if all entries are rational multiples of a
/// single common root (a row scaling, which leaves the null space unchanged).
fn rational_row(row: &[RadicalScalar]) -> Option<Vec<Rational>> {
    let mut radicand = None;
    let mut out = Vec::with_capacity(row.len());
    for x in row {
        match x.num_terms() {
            0 => out.push(Rational::zero()),
            1 => {
                let (r, q) = x.terms().next().expect("one term");
                if *radicand.get_or_insert(r) != r {
                    return None;
                }
                out.push(q.clone());
            }
            _ => return None,
        }
    }
    Some(out)
}

/// Null-space basis of a rational matrix via reduced row echelon form.
pub(crate) fn rational_null_space(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn float_null_space(rows: &[Vec<f64>], cols: usize) -> Vec<Vec<f64>> {
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let (p, best) = (r..m.len())
            .map(|i| (i, m[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= FLOAT_ZERO {
            continue;
        }
        m.swap(r, p);
        let inv = 1.0 / m[r][c];
        for x in &mut m[r] {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0.0; cols];
            v[free] = 1.0;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free];
            }
            v
        })
        .collect()
}

/// Null space of the row span, exact whenever every row is a rational
/// multiple of a single root, otherwise by float elimination.
pub fn hyperplane_normals(a: &ExactMatrix) -> (Vec<Normal>, bool) {
    let exact: Option<Vec<Vec<Rational>>> = a.row_iter().map(rational_row).collect();
    match exact {
        Some(rows) => (
            rational_null_space(&rows, a.cols())
                .into_iter()
                .map(Normal::Exact)
                .collect(),
            false,
        ),
        None => {
            let rows: Vec<Vec<f64>> = a
                .row_iter()
                .map(|r| r.iter().map(RadicalScalar::to_f64).collect())
                .collect();
            (
                float_null_space(&rows, a.cols())
                    .into_iter()
                    .map(Normal::Approximate)
                    .collect(),
                true,
            )
        }
    }
}

/// Passes iff the `(n−1)×n` input has pairwise orthogonal nonzero rows and
/// its row span is a hyperplane whose normal has no zero coordinate (so it
/// contains no span of standard basis vectors).
pub fn check_hyperplane_basis(a: &ExactMatrix) -> Result<VerifyReport> {
    if a.rows() + 1 != a.cols() {
        return Err(Error::dimension(
            "check_hyperplane_basis",
            format!("expected (n-1)xn, got {}x{}", a.rows(), a.cols()),
        ));
    }
    let gram = a.gram_rows();
    for i in 0..a.rows() {
        if gram[(i, i)].is_zero() {
            return Ok(VerifyReport::fail(
                Property::HyperplaneBasis,
                witness(Axis::Rows, i, i, &gram[(i, i)], "zero row"),
            ));
        }
        for j in i + 1..a.rows() {
            if !gram[(i, j)].is_zero() {
                return Ok(VerifyReport::fail(
                    Property::HyperplaneBasis,
                    witness(Axis::Rows, i, j, &gram[(i, j)], "rows not orthogonal"),
                ));
            }
        }
    }
    let (normals, approximate) = hyperplane_normals(a);
    // nonzero orthogonal rows are independent, so the null space is 1-dimensional
    let normal = normals
        .into_iter()
        .next()
        .expect("orthogonal nonzero rows leave a one-dimensional complement");
    let mut report = match normal.zero_coordinates().first() {
        None => VerifyReport::pass(Property::HyperplaneBasis),
        Some(&c) => VerifyReport::fail(
            Property::HyperplaneBasis,
            witness(
                Axis::Normal,
                c,
                c,
                &RadicalScalar::zero(),
                "normal vanishes on this coordinate, so the hyperplane contains a basis vector",
            ),
        ),
    };
    report.normal = Some(normal.render());
    report.approximate = approximate;
    Ok(report)
}

fn require_orthonormal(b: &ExactMatrix, name: &str) -> Result<()> {
    match gram_defect(&b.gram_rows(), &RadicalScalar::one(), Axis::Rows) {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!("{name} basis is not orthonormal: {w}"))),
    }
}

/// Passes iff `⟨row_i(B1), row_j(B2)⟩² = 1/n` exactly for all `i, j`.
pub fn check_unbiased_pair(b1: &ExactMatrix, b2: &ExactMatrix) -> Result<VerifyReport> {
    if !b1.is_square() || b1.shape() != b2.shape() {
        return Err(Error::dimension(
            "check_unbiased_pair",
            format!("bases of shape {:?} and {:?}", b1.shape(), b2.shape()),
        ));
    }
    require_orthonormal(b1, "first")?;
    require_orthonormal(b2, "second")?;
    let n = b1.rows();
    let target = RadicalScalar::from_rational(Rational::new(1.into(), (n as i64).into()));
    for i in 0..n {
        for j in 0..n {
            let sq = b1.row_dot(i, b2, j).square();
            if sq != target {
                return Ok(VerifyReport::fail(
                    Property::UnbiasedPair,
                    witness(
                        Axis::Cross,
                        i,
                        j,
                        &(&sq - &target),
                        format!("squared inner product {sq}, expected {target}"),
                    ),
                ));
            }
        }
    }
    Ok(VerifyReport::pass(Property::UnbiasedPair))
}

/// `max |(AᵀA − kI)_ij|` in floating point.
pub fn float_tight_residual(a: &ExactMatrix, k: f64) -> f64 {
    let (m, n) = a.shape();
    let v = a.to_f64();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in p..n {
            let dot: f64 = (0..m).map(|i| v[i * n + p] * v[i * n + q]).sum();
            let target = if p == q { k } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}
