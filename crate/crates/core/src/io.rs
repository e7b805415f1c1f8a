//! Matrix serialization.
//!
//! `ExactJson` is the lossless interchange format:
//!
//! ```text
//! {"rows":R,"cols":C,"entries":[[[{"num":-1,"den":4,"rad":7}],[]],...]}
//! ```
//!
//! Each entry is a list of terms `num/den·√rad` with ascending radicands; zero
//! is the empty list. Integers that do not fit in 64 bits are written as JSON
//! strings. `Csv` uses the scalar text grammar, `FloatCsv` 17 significant
//! digits, and `Latex` a `bmatrix` body.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{squarefree_split, RadicalScalar, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    ExactJson,
    Csv,
    Latex,
    FloatCsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-json" | "json" => Ok(Format::ExactJson),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            "float-csv" => Ok(Format::FloatCsv),
            other => Err(Error::parse("format", format!("unknown format {other:?}"))),
        }
    }
}

fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

fn entry_json(x: &RadicalScalar) -> Value {
    Value::Array(
        x.terms()
            .map(|(rad, q)| {
                let mut term = Map::new();
                term.insert("num".into(), int_value(q.numer()));
                term.insert("den".into(), int_value(q.denom()));
                term.insert("rad".into(), json!(rad));
                Value::Object(term)
            })
            .collect(),
    )
}

pub fn to_exact_json(a: &ExactMatrix) -> String {
    let entries: Vec<Value> = a
        .row_iter()
        .map(|row| Value::Array(row.iter().map(entry_json).collect()))
        .collect();
    let mut root = Map::new();
    root.insert("rows".into(), json!(a.rows()));
    root.insert("cols".into(), json!(a.cols()));
    root.insert("entries".into(), Value::Array(entries));
    Value::Object(root).to_string()
}

/// Positional decimal with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let exp: i32 = exp.parse().expect("integer exponent");
    let mut out = String::new();
    if x < 0.0 {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    } else if (exp as usize) < digits.len() - 1 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        let _ = write!(out, "{int}.{frac}");
    } else {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', exp as usize + 1 - digits.len()));
    }
    out
}

fn latex_term(out: &mut String, rad: u64, q: &Rational) {
    let (n, d) = (q.numer().abs(), q.denom());
    let unit = n.is_one() && d.is_one();
    if !unit || rad == 1 {
        if d.is_one() {
            let _ = write!(out, "{n}");
        } else {
            let _ = write!(out, "\\frac{{{n}}}{{{d}}}");
        }
    }
    if rad != 1 {
        let _ = write!(out, "\\sqrt{{{rad}}}");
    }
}

pub fn scalar_latex(x: &RadicalScalar) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(u64, &Rational)> = x.terms().filter(|(r, _)| *r != 1).collect();
    terms.extend(x.terms().filter(|(r, _)| *r == 1));
    let mut out = String::new();
    for (idx, (rad, q)) in terms.into_iter().enumerate() {
        match (idx, q.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        latex_term(&mut out, rad, q);
    }
    out
}

pub fn serialize(a: &ExactMatrix, format: Format) -> String {
    let rows = |cell: &dyn Fn(&RadicalScalar) -> String, sep: &str, end: &str| {
        let mut out = String::new();
        for row in a.row_iter() {
            let cells: Vec<String> = row.iter().map(cell).collect();
            out.push_str(&cells.join(sep));
            out.push_str(end);
        }
        out
    };
    match format {
        Format::ExactJson => to_exact_json(a) + "\n",
        Format::Csv => rows(&|x| x.to_string(), ",", "\n"),
        Format::FloatCsv => rows(&|x| format_float(x.to_f64()), ",", "\n"),
        Format::Latex => {
            let body = rows(&scalar_latex, " & ", " \\\\\n");
            format!("\\begin{{bmatrix}}\n{body}\\end{{bmatrix}}\n")
        }
    }
}

/// A parsed matrix plus notes about inputs that were normalized on the way in.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub matrix: ExactMatrix,
    pub notes: Vec<String>,
}

fn big_int(v: &Value, loc: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::parse(loc, format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::parse(loc, format!("{s:?} is not an integer"))),
        other => Err(Error::parse(loc, format!("expected an integer, found {other}"))),
    }
}

fn parse_term(v: &Value, loc: &str, notes: &mut Vec<String>) -> Result<RadicalScalar> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(loc, "term must be an object with num, den, rad"))?;
    if let Some(key) = obj.keys().find(|k| !matches!(k.as_str(), "num" | "den" | "rad")) {
        return Err(Error::parse(loc, format!("unknown key {key:?}")));
    }
    let field = |key: &str| -> Result<Option<BigInt>> {
        obj.get(key).map(|v| big_int(v, &format!("{loc}.{key}"))).transpose()
    };
    let num = field("num")?.ok_or_else(|| Error::parse(loc, "missing num"))?;
    let den = field("den")?.unwrap_or_else(BigInt::one);
    if den.sign() == num_bigint::Sign::NoSign {
        return Err(Error::parse(format!("{loc}.den"), "zero denominator"));
    }
    let rad = field("rad")?.unwrap_or_else(BigInt::one);
    let rad = rad
        .to_i64()
        .filter(|r| *r >= 1)
        .ok_or_else(|| Error::parse(format!("{loc}.rad"), format!("radicand {rad} must be a positive 64-bit integer")))?;
    let (square, core) = squarefree_split(rad as u64);
    if square != 1 {
        notes.push(format!("{loc}: radicand {rad} normalized to {square}*sqrt({core})"));
    }
    RadicalScalar::make(Rational::new(num, den), rad)
}

fn expect_usize(root: &Map<String, Value>, key: &str) -> Result<usize> {
    root.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::parse(key, "expected a nonnegative integer"))
}

pub fn from_exact_json(text: &str) -> Result<Parsed> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let root = root
        .as_object()
        .ok_or_else(|| Error::parse("$", "expected an object with rows, cols, entries"))?;
    let (rows, cols) = (expect_usize(root, "rows")?, expect_usize(root, "cols")?);
    let entries = root
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("entries", "expected an array of rows"))?;
    if entries.len() != rows {
        return Err(Error::parse("entries", format!("{} rows, header says {rows}", entries.len())));
    }
    let mut notes = Vec::new();
    let mut flat = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(format!("entries[{i}]"), "expected an array"))?;
        if row.len() != cols {
            return Err(Error::parse(
                format!("entries[{i}]"),
                format!("{} entries, header says {cols}", row.len()),
            ));
        }
        for (j, cell) in row.iter().enumerate() {
            let terms = cell
                .as_array()
                .ok_or_else(|| Error::parse(format!("entries[{i}][{j}]"), "expected an array of terms"))?;
            let mut x = RadicalScalar::zero();
            for (t, term) in terms.iter().enumerate() {
                x += &parse_term(term, &format!("entries[{i}][{j}][{t}]"), &mut notes)?;
            }
            flat.push(x);
        }
    }
    Ok(Parsed { matrix: ExactMatrix::new(rows, cols, flat)?, notes })
}

pub fn from_csv(text: &str) -> Result<Parsed> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let row = line
            .split(',')
            .enumerate()
            .map(|(j, cell)| {
                cell.trim().parse::<RadicalScalar>().map_err(|e| match e {
                    Error::Parse { message, .. } => {
                        Error::parse(format!("line {} field {}", i + 1, j + 1), message)
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Parsed { matrix: ExactMatrix::from_rows(rows)?, notes: Vec::new() })
}

/// Reads ExactJson when the text starts with `{`, otherwise exact CSV.
pub fn deserialize(text: &str) -> Result<Parsed> {
    if text.trim_start().starts_with('{') {
        from_exact_json(text)
    } else {
        from_csv(text)
    }
}
