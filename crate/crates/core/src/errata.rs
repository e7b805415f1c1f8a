//! Executable fixtures for printed results that do not check out, each
//! paired with the corrected form that does.

use serde::Serialize;

use crate::error::Error;
use crate::frames::{ap_two_tight, TwoRowTable};
use crate::hyperplane;
use crate::matrix::ExactMatrix;
use crate::scalar::{rational, RadicalScalar, Rational};
use crate::unitary::{block_pair, mub_r4, mub_r4_printed_third, paper_form_layout, BlockPairForm};
use crate::verify::{check_hyperplane_basis, check_unbiased_pair, check_unitary};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    /// What the printed version claims.
    pub printed: String,
    /// What exact computation finds instead.
    pub finding: String,
    /// The printed version fails exactly as described.
    pub discrepancy_confirmed: bool,
    /// The corrected version passes its checks.
    pub correction_passes: bool,
}

impl Erratum {
    pub fn holds(&self) -> bool {
        self.discrepancy_confirmed && self.correction_passes
    }
}

fn rs(text: &str) -> RadicalScalar {
    text.parse().expect("fixture literal")
}

/// `[[aA, bB], [aA, −bB]]` with `a = √3/2`, `b = 1/2` and `A = B = I₂`.
pub fn block_pair_form() -> Erratum {
    let id = ExactMatrix::identity(2);
    let (a, b) = (rs("1/2*sqrt(3)"), rs("1/2"));
    let raw = paper_form_layout(&id, &id, &a, &b).expect("square blocks");
    let gram = raw.gram_columns();
    let expected = ExactMatrix::block_diag(&[
        id.scale_rational(&rational(3, 2)),
        id.scale_rational(&rational(1, 2)),
    ])
    .expect("blocks");
    let refused = matches!(
        block_pair(&id, &id, &a, &b, BlockPairForm::Paper),
        Err(Error::Refused { ref defect, .. }) if defect == "diag((1/2)·I, (-1/2)·I)"
    );
    let witness = check_unitary(&raw).expect("square").witness;
    let corrected = block_pair(&id, &id, &a, &b, BlockPairForm::Corrected)
        .map(|m| check_unitary(&m).is_ok_and(|r| r.passed))
        .unwrap_or(false);
    Erratum {
        id: "block-pair-form",
        printed: "[[aA, bB], [aA, -bB]] is unitary whenever a² + b² = 1".into(),
        finding: format!(
            "with a = √3/2, b = 1/2 the Gram matrix is diag(3/2·I, 1/2·I); {}",
            witness.map_or("no witness".into(), |w| w.to_string())
        ),
        discrepancy_confirmed: gram == expected && refused,
        correction_passes: corrected,
    }
}

/// The third orthonormal basis of ℝ⁴ as printed.
pub fn printed_third_basis() -> Erratum {
    let report = check_unitary(&mub_r4_printed_third()).expect("square");
    let confirmed = report
        .witness
        .as_ref()
        .is_some_and(|w| (w.i, w.j) == (1, 3) && w.residual == "-1/2");
    let [b1, b2, b3] = mub_r4();
    let corrected = check_unitary(&b3).is_ok_and(|r| r.passed)
        && [(&b1, &b2), (&b1, &b3), (&b2, &b3)]
            .iter()
            .all(|(x, y)| check_unbiased_pair(x, y).is_ok_and(|r| r.passed));
    Erratum {
        id: "third-basis",
        printed: "rows (1,1,1,1), (1,1,-1,-1), (1,-1,-1,-1), (1,-1,1,-1), each over 2, are orthonormal".into(),
        finding: report.witness.map_or("passes".into(), |w| w.to_string()),
        discrepancy_confirmed: confirmed,
        correction_passes: corrected,
    }
}

/// The two-row table offered as a non-decreasing example.
pub fn inconsistent_table() -> Erratum {
    let q = |v: &[i64]| v.iter().map(|&n| rational(n, 1)).collect::<Vec<Rational>>();
    let result = TwoRowTable::new(
        q(&[20, 24, 19, 25, 1, 7, 2, 6]),
        q(&[6, 2, 7, 1, 25, 14, 24, 20]),
        rational(26, 1),
    );
    let (confirmed, finding) = match result {
        Err(Error::Validation { problems }) => (
            problems.len() == 2 && problems[0].starts_with("column 6:"),
            problems.join("; "),
        ),
        Err(e) => (false, e.to_string()),
        Ok(_) => (false, "accepted".into()),
    };
    let fixed = TwoRowTable::new(
        q(&[20, 24, 19, 25, 1, 7, 2, 6]),
        q(&[6, 2, 7, 1, 25, 19, 24, 20]),
        rational(26, 1),
    );
    Erratum {
        id: "two-row-table",
        printed: "table 20 24 19 25 1 7 2 6 / 6 2 7 1 25 14 24 20 has column sums m and row sums 2^(k-1)m".into(),
        finding,
        discrepancy_confirmed: confirmed,
        correction_passes: fixed.is_ok(),
    }
}

/// The printed sparsity count for the five-dimensional hyperplane basis.
pub fn five_dimensional_sparsity() -> Erratum {
    let basis = hyperplane::build(5).expect("n = 5");
    let count = basis.sparsity();
    let support: usize = basis
        .matrix()
        .support()
        .iter()
        .map(|row| row.iter().filter(|&&s| s).count())
        .sum();
    let passes = check_hyperplane_basis(basis.matrix()).is_ok_and(|r| r.passed);
    Erratum {
        id: "hyperplane-5-sparsity",
        printed: "the 4x5 basis has sparsity 11".into(),
        finding: format!("the printed pattern has {count} nonzero entries"),
        discrepancy_confirmed: count == 12 && support == 12,
        correction_passes: passes,
    }
}

/// The column reversal of the first 8×4 block as displayed.
pub fn column_reversal_display() -> Erratum {
    let a = ap_two_tight(&rational(1, 1), &rational(2, 1))
        .and_then(|m| m.row_slice(0, 4))
        .expect("8x4");
    let reversed = a.reverse_cols();
    let root = |n: u64| RadicalScalar::sqrt(n).expect("positive");
    // the printed display, parameterized by its entry (1,3) and scale factor
    let display = |corner: u64, factor: Rational| {
        ExactMatrix::from_rows(vec![
            vec![root(1), root(3), root(corner), -root(7)],
            vec![root(1), root(3), -root(5), root(7)],
            vec![root(1), -root(3), root(5), root(7)],
            vec![-root(1), root(3), root(5), root(7)],
        ])
        .expect("4x4")
        .scale_rational(&factor)
    };
    let printed = display(3, rational(1, 16));
    let differing = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| printed[(i, j)] != reversed[(i, j)])
        .count();
    Erratum {
        id: "column-reversal",
        printed: "A^C = (1/16)[[√1, √3, √3, -√7], ...]".into(),
        finding: format!(
            "the printed matrix differs from the column reversal at {} entries; the factor is 1/4 and entry (1,3) is √5",
            differing
        ),
        discrepancy_confirmed: differing == 16,
        correction_passes: display(5, rational(1, 4)) == reversed,
    }
}

pub fn all() -> Vec<Erratum> {
    vec![
        block_pair_form(),
        printed_third_basis(),
        inconsistent_table(),
        five_dimensional_sparsity(),
        column_reversal_display(),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_fixture_holds() {
        for e in super::all() {
            assert!(e.holds(), "{e:?}");
        }
    }
}
