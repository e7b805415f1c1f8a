//! Unitary matrix families: constant first row, constant-modulus first two
//! rows, two-constant matrices, block weaving, and three unbiased bases of ℝ⁴.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{rational, RadicalScalar, Rational};
use crate::verify::{check_orthogonal_columns, check_unitary};

/// `c / √d` for positive `d`.
fn over_root(c: i64, d: i64) -> RadicalScalar {
    RadicalScalar::inv_sqrt_rational(&rational(d, 1))
        .expect("positive denominator")
        .scale(&rational(c, 1))
}

/// `J − 2I` of order `n`: minus ones on the diagonal, ones elsewhere.
pub fn ones_minus_twice_identity(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| RadicalScalar::from_integer(if i == j { -1 } else { 1 }))
}

/// `n×n` unitary with constant first row `1/√n`; row `j ≥ 2` is supported on
/// the last `w = n − j + 2` columns as `(−(w−1), 1, …, 1) / √(w(w−1))`.
pub fn constant_first_row(n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::Domain("constant_first_row needs n >= 1".into()));
    }
    let n_i = n as i64;
    let first = over_root(1, n_i);
    let mut out = ExactMatrix::zeros(n, n);
    for c in 0..n {
        out.set_block(0, c, &ExactMatrix::from_fn(1, 1, |_, _| first.clone()));
    }
    for row in 1..n {
        let width = (n - row + 1) as i64;
        let norm = width * (width - 1);
        let lead = over_root(-(width - 1), norm);
        let rest = over_root(1, norm);
        let start = n - width as usize;
        let stair = ExactMatrix::from_fn(1, width as usize, |_, j| {
            if j == 0 {
                lead.clone()
            } else {
                rest.clone()
            }
        });
        out.set_block(row, start, &stair);
    }
    Ok(out)
}

/// `2n×2n` unitary whose first two rows have constant modulus `1/√(2n)`.
///
/// Row 1 is all positive, row 2 negative on the first `n` columns; each half
/// then carries the lower staircase of [`constant_first_row`]`(n)`. For
/// dimension 4 the `(J − 2I)/2` matrix is returned instead.
pub fn constant_two_rows(two_n: usize) -> Result<ExactMatrix> {
    if two_n < 4 || !two_n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "constant_two_rows needs an even size >= 4, got {two_n}"
        )));
    }
    if two_n == 4 {
        return Ok(ones_minus_twice_identity(4).scale_rational(&rational(1, 2)));
    }
    let n = two_n / 2;
    let c = over_root(1, two_n as i64);
    let mut out = ExactMatrix::zeros(two_n, two_n);
    let head = ExactMatrix::from_fn(2, two_n, |i, j| {
        if i == 1 && j < n {
            -&c
        } else {
            c.clone()
        }
    });
    out.set_block(0, 0, &head);
    let stair = constant_first_row(n)?.row_slice(1, n)?;
    out.set_block(2, 0, &stair);
    out.set_block(n + 1, n, &stair);
    Ok(out)
}

/// `(1/n)·(2J − nI)`: diagonal `−(n−2)/n`, off-diagonal `2/n`.
pub fn two_constant_diag(n: usize) -> Result<ExactMatrix> {
    if n < 2 {
        return Err(Error::Domain("two_constant_diag needs n >= 2".into()));
    }
    let n_i = n as i64;
    let diag = RadicalScalar::from_rational(rational(-(n_i - 2), n_i));
    let off = RadicalScalar::from_rational(rational(2, n_i));
    Ok(ExactMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag.clone()
        } else {
            off.clone()
        }
    }))
}

/// Layout used by [`block_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockPairForm {
    /// `[[aA, bB], [aA, −bB]]`: unitary only when `a² = b² = 1/2`.
    Paper,
    /// `[[aA, bB], [bA, −aB]]`: unitary for every `a² + b² = 1`.
    Corrected,
}

/// Raw `[[aA, bB], [aA, −bB]]` assembly without any checks.
pub fn paper_form_layout(
    a_mat: &ExactMatrix,
    b_mat: &ExactMatrix,
    a: &RadicalScalar,
    b: &RadicalScalar,
) -> Result<ExactMatrix> {
    let top = a_mat.scale(a).hstack(&b_mat.scale(b))?;
    let bottom = a_mat.scale(a).hstack(&b_mat.scale(&-b))?;
    top.vstack(&bottom)
}

fn corrected_layout(
    a_mat: &ExactMatrix,
    b_mat: &ExactMatrix,
    a: &RadicalScalar,
    b: &RadicalScalar,
) -> Result<ExactMatrix> {
    let top = a_mat.scale(a).hstack(&b_mat.scale(b))?;
    let bottom = a_mat.scale(b).hstack(&b_mat.scale(&-a))?;
    top.vstack(&bottom)
}

/// Two-block unitary from unitaries `A`, `B` and scalars with `a² + b² = 1`.
pub fn block_pair(
    a_mat: &ExactMatrix,
    b_mat: &ExactMatrix,
    a: &RadicalScalar,
    b: &RadicalScalar,
    form: BlockPairForm,
) -> Result<ExactMatrix> {
    if !a_mat.is_square() || a_mat.shape() != b_mat.shape() {
        return Err(Error::dimension(
            "block_pair",
            format!("blocks {:?} and {:?} must be equal and square", a_mat.shape(), b_mat.shape()),
        ));
    }
    for (name, m) in [("A", a_mat), ("B", b_mat)] {
        if let Some(w) = check_unitary(m)?.witness {
            return Err(Error::Precondition(format!("{name} is not unitary: {w}")));
        }
    }
    let (a2, b2) = (a.square(), b.square());
    let sum = &a2 + &b2;
    if !sum.is_one() {
        return Err(Error::Precondition(format!("a² + b² = {sum}, expected 1")));
    }
    match form {
        BlockPairForm::Corrected => corrected_layout(a_mat, b_mat, a, b),
        BlockPairForm::Paper => {
            let half = RadicalScalar::from_rational(rational(1, 2));
            if a2 != half {
                let d = &a2 - &b2;
                return Err(Error::Refused {
                    reason: format!(
                        "[[aA, bB], [aA, -bB]] has Gram diag(2a²·I, 2b²·I) = diag({}·I, {}·I)",
                        &a2 + &a2,
                        &b2 + &b2
                    ),
                    defect: format!("diag(({d})·I, ({})·I)", -&d),
                });
            }
            paper_form_layout(a_mat, b_mat, a, b)
        }
    }
}

/// The 8×8 two-constant matrix `[[aH, bH], [bH, −aH]]` with `H = J − 2I`
/// (order 4), unitary when `4a² + 4b² = 1`.
pub fn second_case(a: &RadicalScalar, b: &RadicalScalar) -> Result<ExactMatrix> {
    let four = rational(4, 1);
    let norm = (&a.square() + &b.square()).scale(&four);
    if !norm.is_one() {
        return Err(Error::Precondition(format!("4a² + 4b² = {norm}, expected 1")));
    }
    let h = ones_minus_twice_identity(4);
    corrected_layout(&h, &h, a, b)
}

/// [`second_case`] with `b = 1/√20` and `a = 2b`.
pub fn second_case_example() -> ExactMatrix {
    let b = RadicalScalar::inv_sqrt_rational(&rational(20, 1)).expect("positive");
    let a = b.scale(&rational(2, 1));
    second_case(&a, &b).expect("4a² + 4b² = 1")
}

/// Coefficient matrix `(a_ij)` for [`weave`], with exactly orthogonal nonzero columns.
#[derive(Debug, Clone, PartialEq)]
pub struct WeaveCoefficients {
    coeffs: ExactMatrix,
}

impl WeaveCoefficients {
    pub fn new(coeffs: ExactMatrix) -> Result<Self> {
        if let Some(w) = check_orthogonal_columns(&coeffs).witness {
            return Err(Error::Precondition(format!(
                "weave coefficients need orthogonal columns: {w}"
            )));
        }
        Ok(Self { coeffs })
    }

    /// Rotation `[[c, −s], [s, c]]`; requires `c² + s² = 1`.
    pub fn rotation(c: &RadicalScalar, s: &RadicalScalar) -> Result<Self> {
        let n = &c.square() + &s.square();
        if !n.is_one() {
            return Err(Error::Precondition(format!("c² + s² = {n}, expected 1")));
        }
        Self::new(ExactMatrix::from_rows(vec![
            vec![c.clone(), -s],
            vec![s.clone(), c.clone()],
        ])?)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.coeffs
    }

    /// True when the coefficient matrix is square with orthonormal columns.
    pub fn is_orthonormal(&self) -> bool {
        self.coeffs.is_square() && check_unitary(&self.coeffs).is_ok_and(|r| r.passed)
    }
}

/// Block matrix whose `(i, j)` block is `a_ij·blocks[j]`.
///
/// With `r×k_j` blocks that have orthogonal columns the result is an
/// `mr × Σk_j` matrix with orthogonal columns; with orthonormal square
/// coefficients and unitary blocks it is unitary; with orthonormal
/// coefficients and unit-norm `k`-tight blocks it is a unit-norm `k`-tight frame.
pub fn weave(coeffs: &WeaveCoefficients, blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
    let c = coeffs.matrix();
    if blocks.len() != c.cols() {
        return Err(Error::dimension(
            "weave",
            format!("{} blocks for {} coefficient columns", blocks.len(), c.cols()),
        ));
    }
    let r = blocks[0].rows();
    if let Some(bad) = blocks.iter().position(|b| b.rows() != r) {
        return Err(Error::dimension(
            "weave",
            format!("block {} has {} rows, expected {r}", bad + 1, blocks[bad].rows()),
        ));
    }
    for (idx, b) in blocks.iter().enumerate() {
        if let Some(w) = check_orthogonal_columns(b).witness {
            return Err(Error::Precondition(format!(
                "block {} lacks orthogonal columns: {w}",
                idx + 1
            )));
        }
    }
    let width: usize = blocks.iter().map(ExactMatrix::cols).sum();
    let mut out = ExactMatrix::zeros(c.rows() * r, width);
    for i in 0..c.rows() {
        let mut col = 0;
        for (j, b) in blocks.iter().enumerate() {
            out.set_block(i * r, col, &b.scale(&c[(i, j)]));
            col += b.cols();
        }
    }
    Ok(out)
}

/// The 6×6 unitary with `a = √(1/12)` and `b = 1/2`, solving
/// `3a² + 3b² = 1` and `3a² − b² = 0`.
pub fn third_case() -> ExactMatrix {
    let a = RadicalScalar::sqrt_rational(&Rational::new(1.into(), 12.into())).expect("positive");
    let b = RadicalScalar::from_rational(rational(1, 2));
    // 1 = a, 2 = b, negative = minus sign
    const PATTERN: [[i8; 6]; 6] = [
        [1, 1, 1, -2, -2, 2],
        [1, 1, 1, -2, 2, -2],
        [1, 1, 1, 2, -2, -2],
        [-2, 2, 2, 1, 1, 1],
        [2, -2, 2, 1, 1, 1],
        [2, 2, -2, 1, 1, 1],
    ];
    ExactMatrix::from_fn(6, 6, |i, j| {
        let code = PATTERN[i][j];
        let v = if code.abs() == 1 { &a } else { &b };
        if code < 0 {
            -v
        } else {
            v.clone()
        }
    })
}

/// Three pairwise unbiased orthonormal bases of ℝ⁴: the standard basis,
/// `(J − 2I)/2`, and a normalized Sylvester-type Hadamard matrix.
pub fn mub_r4() -> [ExactMatrix; 3] {
    let half = rational(1, 2);
    let hadamard = ExactMatrix::from_integers(&[
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ])
    .expect("4x4");
    [
        ExactMatrix::identity(4),
        ones_minus_twice_identity(4).scale_rational(&half),
        hadamard.scale_rational(&half),
    ]
}

/// The third ℝ⁴ basis exactly as printed; it is not orthogonal.
pub fn mub_r4_printed_third() -> ExactMatrix {
    ExactMatrix::from_integers(&[
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, -1, -1],
        [1, -1, 1, -1],
    ])
    .expect("4x4")
    .scale_rational(&rational(1, 2))
}
