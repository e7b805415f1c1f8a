//! Construction requests: a family name plus textual parameters, built and
//! immediately re-verified.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frames::{
    abcd_outline, ap_two_tight, ap_two_tight_doubled, make_two_row_table, weight_in_front,
    weight_in_front_unnormalized,
};
use crate::hyperplane;
use crate::io::Format;
use crate::matrix::ExactMatrix;
use crate::scalar::{RadicalScalar, Rational};
use crate::unitary::{
    block_pair, constant_first_row, constant_two_rows, mub_r4, third_case, two_constant_diag, weave,
    BlockPairForm, WeaveCoefficients,
};
use crate::verify::{check_hyperplane_basis, check_tight_frame, check_unitary, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Hyperplane,
    ConstantFirstRow,
    ConstantTwoRows,
    TwoConstantDiag,
    BlockPair,
    Weave,
    ThirdCase,
    MubR4,
    ApTwoTight,
    IterateTwoTight,
    WeightInFront,
    AbcdOutline,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Hyperplane,
        Family::ConstantFirstRow,
        Family::ConstantTwoRows,
        Family::TwoConstantDiag,
        Family::BlockPair,
        Family::Weave,
        Family::ThirdCase,
        Family::MubR4,
        Family::ApTwoTight,
        Family::IterateTwoTight,
        Family::WeightInFront,
        Family::AbcdOutline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Hyperplane => "hyperplane",
            Family::ConstantFirstRow => "constant-first-row",
            Family::ConstantTwoRows => "constant-two-rows",
            Family::TwoConstantDiag => "two-constant-diag",
            Family::BlockPair => "block-pair",
            Family::Weave => "weave",
            Family::ThirdCase => "third-case",
            Family::MubR4 => "mub-r4",
            Family::ApTwoTight => "ap-two-tight",
            Family::IterateTwoTight => "iterate-two-tight",
            Family::WeightInFront => "weight-in-front",
            Family::AbcdOutline => "abcd-outline",
        }
    }

    /// Required parameters, then optional ones.
    fn params(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Family::Hyperplane
            | Family::ConstantFirstRow
            | Family::ConstantTwoRows
            | Family::TwoConstantDiag => (&["n"], &[]),
            Family::BlockPair => (&["n", "a", "b"], &["form"]),
            Family::Weave => (&["n", "a", "b"], &[]),
            Family::ThirdCase => (&[], &[]),
            Family::MubR4 => (&[], &["basis"]),
            Family::ApTwoTight | Family::IterateTwoTight => (&["a", "b"], &[]),
            Family::WeightInFront => (&["values", "m"], &["normalize"]),
            Family::AbcdOutline => (&["values"], &["normalize"]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::parse("family", format!("unknown family {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionRequest {
    pub family: Family,
    pub params: BTreeMap<String, String>,
    pub output_format: Format,
}

/// A built matrix with the report of its immediate re-verification.
#[derive(Debug, Clone)]
pub struct Construction {
    pub matrix: ExactMatrix,
    pub report: VerifyReport,
}

fn param_error(key: &str, message: impl Into<String>) -> Error {
    Error::parse(format!("--{key}"), message)
}

impl ConstructionRequest {
    /// Rejects unknown and missing parameters before anything is built.
    pub fn new(family: Family, params: BTreeMap<String, String>, output_format: Format) -> Result<Self> {
        let (required, optional) = family.params();
        if let Some(key) = params
            .keys()
            .find(|k| !required.contains(&k.as_str()) && !optional.contains(&k.as_str()))
        {
            return Err(param_error(key, format!("not a parameter of {family}")));
        }
        if let Some(key) = required.iter().find(|k| !params.contains_key(**k)) {
            return Err(param_error(key, format!("required by {family}")));
        }
        Ok(Self { family, params, output_format })
    }

    fn text(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let raw = self.text(key).ok_or_else(|| param_error(key, "missing"))?;
        raw.trim()
            .parse()
            .map_err(|_| param_error(key, format!("{raw:?} is not a nonnegative integer")))
    }

    fn rational(&self, key: &str) -> Result<Rational> {
        let raw = self.text(key).ok_or_else(|| param_error(key, "missing"))?;
        parse_rational(raw).map_err(|m| param_error(key, m))
    }

    fn scalar(&self, key: &str) -> Result<RadicalScalar> {
        let raw = self.text(key).ok_or_else(|| param_error(key, "missing"))?;
        raw.parse::<RadicalScalar>().map_err(|e| param_error(key, e.to_string()))
    }

    fn values(&self) -> Result<Vec<Rational>> {
        let raw = self.text("values").ok_or_else(|| param_error("values", "missing"))?;
        raw.split(',')
            .map(|v| parse_rational(v).map_err(|m| param_error("values", m)))
            .collect()
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.text(key) {
            None | Some("false") => Ok(false),
            Some("true") | Some("") => Ok(true),
            Some(other) => Err(param_error(key, format!("{other:?} is not true or false"))),
        }
    }

    fn matrix(&self) -> Result<ExactMatrix> {
        match self.family {
            Family::Hyperplane => Ok(hyperplane::build(self.usize("n")?)?.into_matrix()),
            Family::ConstantFirstRow => constant_first_row(self.usize("n")?),
            Family::ConstantTwoRows => constant_two_rows(self.usize("n")?),
            Family::TwoConstantDiag => two_constant_diag(self.usize("n")?),
            Family::BlockPair => {
                let n = self.usize("n")?;
                let form = match self.text("form").unwrap_or("corrected") {
                    "corrected" => BlockPairForm::Corrected,
                    "paper" => BlockPairForm::Paper,
                    other => return Err(param_error("form", format!("{other:?} is not paper or corrected"))),
                };
                block_pair(
                    &constant_first_row(n)?,
                    &two_constant_diag(n)?,
                    &self.scalar("a")?,
                    &self.scalar("b")?,
                    form,
                )
            }
            Family::Weave => {
                let n = self.usize("n")?;
                let coeffs = WeaveCoefficients::rotation(&self.scalar("a")?, &self.scalar("b")?)?;
                weave(&coeffs, &[constant_first_row(n)?, two_constant_diag(n)?])
            }
            Family::ThirdCase => Ok(third_case()),
            Family::MubR4 => {
                let basis = match self.text("basis") {
                    None => 3,
                    Some(_) => self.usize("basis")?,
                };
                let [b1, b2, b3] = mub_r4();
                match basis {
                    1 => Ok(b1),
                    2 => Ok(b2),
                    3 => Ok(b3),
                    _ => Err(param_error("basis", "must be 1, 2 or 3")),
                }
            }
            Family::ApTwoTight => ap_two_tight(&self.rational("a")?, &self.rational("b")?),
            Family::IterateTwoTight => ap_two_tight_doubled(&self.rational("a")?, &self.rational("b")?),
            Family::WeightInFront | Family::AbcdOutline => {
                let values = self.values()?;
                let table = if self.family == Family::WeightInFront {
                    make_two_row_table(&values, &self.rational("m")?)?
                } else {
                    let [a, b, c, d] = values.as_slice() else {
                        return Err(param_error("values", "abcd-outline takes exactly four values"));
                    };
                    abcd_outline(a, b, c, d)?
                };
                if self.flag("normalize")? {
                    weight_in_front(&table)
                } else {
                    weight_in_front_unnormalized(&table)
                }
            }
        }
    }

    /// Builds the matrix and re-runs the checker for its family.
    pub fn build(&self) -> Result<Construction> {
        let matrix = self.matrix()?;
        let raw_table = matches!(self.family, Family::WeightInFront | Family::AbcdOutline)
            && !self.flag("normalize")?;
        let mut report = match self.family {
            Family::Hyperplane => check_hyperplane_basis(&matrix)?,
            Family::ApTwoTight
            | Family::IterateTwoTight
            | Family::WeightInFront
            | Family::AbcdOutline => check_tight_frame(&matrix),
            _ => check_unitary(&matrix)?,
        };
        if raw_table {
            // rows have squared norm 2^{k-1}m until normalized
            report.subchecks.clear();
        }
        Ok(Construction { matrix, report })
    }
}

/// `p`, `p/q` or `-p/q`; decimals are rejected to keep parameters exact.
pub fn parse_rational(raw: &str) -> std::result::Result<Rational, String> {
    let t = raw.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(format!("{t:?} is not an exact rational; write it as p/q"));
    }
    let q: Rational = t.parse().map_err(|_| format!("{t:?} is not a rational p/q"))?;
    Ok(q)
}
