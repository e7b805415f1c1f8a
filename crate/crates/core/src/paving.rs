//! Brute-force 2-paving of projections built from tight frames.
//!
//! For a projection `G` the quantity measured is, over all splittings of the
//! index set into `S` and its complement, the smallest value of
//! `max(‖P_S(2G − I)P_S‖, ‖P_Sᶜ(2G − I)P_Sᶜ‖)`. Norms are floating point.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{RadicalScalar, Rational};
use crate::verify::check_tight_frame;

/// Largest size enumerated exhaustively; beyond this use [`paving_sampled`].
pub const MAX_EXHAUSTIVE: usize = 24;
/// Upper size for sampling, limited by the 64-bit partition masks.
pub const MAX_SAMPLED: usize = 64;

const EIGEN_TOLERANCE: f64 = 1e-10;
const TIE_TOLERANCE: f64 = 1e-12;

/// `(1/k)·AAᵀ` for an exactly `k`-tight frame `A`.
pub fn gram_projection(a: &ExactMatrix, k: &Rational) -> Result<ExactMatrix> {
    let report = check_tight_frame(a);
    match (&report.k_value, &report.witness) {
        (Some(found), None) if found == k => {}
        (_, Some(w)) => return Err(Error::Precondition(format!("frame is not tight: {w}"))),
        (found, None) => {
            let found = found.as_ref().map_or("none".to_string(), ToString::to_string);
            return Err(Error::Precondition(format!("frame is tight with k = {found}, not {k}")));
        }
    }
    Ok(a.gram_rows().scale_rational(&k.recip()))
}

/// Exact test that `G` is symmetric and idempotent.
pub fn is_projection(g: &ExactMatrix) -> bool {
    g.is_square() && g.transpose() == *g && g.matmul(g).is_ok_and(|gg| gg == *g)
}

/// Exact column square sums with the split between the first `n − 1`
/// columns and the last one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    #[serde(serialize_with = "texts")]
    pub column_sums: Vec<RadicalScalar>,
    #[serde(serialize_with = "text")]
    pub leading: RadicalScalar,
    #[serde(serialize_with = "text")]
    pub trailing: RadicalScalar,
}

fn text<S: serde::Serializer>(v: &RadicalScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn texts<S: serde::Serializer>(v: &[RadicalScalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub fn weight_profile(a: &ExactMatrix) -> WeightProfile {
    let column_sums: Vec<RadicalScalar> = (0..a.cols()).map(|j| a.col_dot(j, j)).collect();
    let (last, init) = column_sums.split_last().expect("matrices are nonempty");
    WeightProfile {
        leading: init.iter().sum(),
        trailing: last.clone(),
        column_sums,
    }
}

/// Outcome of a paving search. Partitions use 1-based indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PavingResult {
    pub matrix_id: String,
    pub size: usize,
    pub best_partition: (Vec<usize>, Vec<usize>),
    pub best_value: f64,
    /// Norms of the two compressions for the best partition.
    pub block_norms: (f64, f64),
    /// Best value for each balance `min(|S|, |Sᶜ|)` that was examined.
    pub per_size_histogram: BTreeMap<usize, f64>,
    pub partitions_examined: u64,
    pub sampled: bool,
    pub approximate: bool,
}

/// `2G − I` in floating point, checking exact symmetry first.
fn reflection(g: &ExactMatrix) -> Result<DMatrix<f64>> {
    if !g.is_square() {
        return Err(Error::dimension("paving", format!("{:?} is not square", g.shape())));
    }
    if g.transpose() != *g {
        return Err(Error::Precondition("paving needs a symmetric matrix".into()));
    }
    let n = g.rows();
    let vals = g.to_f64();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        2.0 * vals[i * n + j] - if i == j { 1.0 } else { 0.0 }
    }))
}

/// Spectral norm of the principal submatrix on `idx`.
fn compressed_norm(f: &DMatrix<f64>, idx: &[usize]) -> f64 {
    match idx.len() {
        0 => 0.0,
        1 => f[(idx[0], idx[0])].abs(),
        n => {
            let sub = DMatrix::from_fn(n, n, |i, j| f[(idx[i], idx[j])]);
            SymmetricEigen::try_new(sub, EIGEN_TOLERANCE, 0)
                .expect("unbounded iterations converge")
                .eigenvalues
                .iter()
                .fold(0.0, |m, v| m.max(v.abs()))
        }
    }
}

/// Index 0 is always in `S`; bit `t` of `mask` places index `t + 1` in `S`.
fn split(mask: u64, n: usize) -> (Vec<usize>, Vec<usize>) {
    (0..n).partition(|&i| i == 0 || mask >> (i - 1) & 1 == 1)
}

fn evaluate(f: &DMatrix<f64>, mask: u64) -> (f64, f64) {
    let (s, c) = split(mask, f.nrows());
    (compressed_norm(f, &s), compressed_norm(f, &c))
}

fn reduce(
    f: &DMatrix<f64>,
    masks: &[u64],
    matrix_id: &str,
    sampled: bool,
) -> PavingResult {
    let n = f.nrows();
    let norms: Vec<(f64, f64)> = masks.par_iter().map(|&m| evaluate(f, m)).collect();
    let mut best: Option<(usize, f64, Vec<usize>)> = None;
    let mut histogram = BTreeMap::new();
    for (idx, (&mask, &(a, b))) in masks.iter().zip(&norms).enumerate() {
        let value = a.max(b);
        let (s, c) = split(mask, n);
        let slot = histogram.entry(s.len().min(c.len())).or_insert(f64::INFINITY);
        *slot = value.min(*slot);
        let better = match &best {
            None => true,
            Some((_, bv, bs)) => value < bv - TIE_TOLERANCE || (value <= bv + TIE_TOLERANCE && s < *bs),
        };
        if better {
            best = Some((idx, value, s));
        }
    }
    let (idx, best_value, _) = best.expect("at least one partition");
    let (s, c) = split(masks[idx], n);
    let one_based = |v: Vec<usize>| v.into_iter().map(|i| i + 1).collect();
    PavingResult {
        matrix_id: matrix_id.to_string(),
        size: n,
        best_partition: (one_based(s), one_based(c)),
        best_value,
        block_norms: norms[idx],
        per_size_histogram: histogram,
        partitions_examined: masks.len() as u64,
        sampled,
        approximate: true,
    }
}

/// Exhaustive search over all `2^{M−1}` splittings of a symmetric `M×M` matrix.
pub fn paving_epsilon(g: &ExactMatrix, blocks: usize, matrix_id: &str) -> Result<PavingResult> {
    if blocks != 2 {
        return Err(Error::Domain(format!("only 2-pavings are supported, got {blocks} blocks")));
    }
    let f = reflection(g)?;
    let n = f.nrows();
    if n > MAX_EXHAUSTIVE {
        return Err(Error::Resource(format!(
            "{n}x{n} needs 2^{} partitions; exhaustive search stops at {MAX_EXHAUSTIVE}, use sampling instead",
            n - 1
        )));
    }
    let masks: Vec<u64> = (0..1u64 << (n - 1)).collect();
    Ok(reduce(&f, &masks, matrix_id, false))
}

/// Search over `samples` random splittings drawn from a seeded generator.
/// The result is an upper bound for the exhaustive value.
pub fn paving_sampled(g: &ExactMatrix, samples: usize, seed: u64, matrix_id: &str) -> Result<PavingResult> {
    if samples == 0 {
        return Err(Error::Domain("sample count must be positive".into()));
    }
    let f = reflection(g)?;
    let n = f.nrows();
    if n > MAX_SAMPLED {
        return Err(Error::Resource(format!("sampling supports at most {MAX_SAMPLED} indices, got {n}")));
    }
    let width = n - 1;
    let limit = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let masks: Vec<u64> = (0..samples).map(|_| rng.gen::<u64>() & limit).collect();
    Ok(reduce(&f, &masks, matrix_id, true))
}
