//! Hand transcriptions of the printed matrices, in a compact token syntax:
//! `p` or `p/q` is a rational, `√x` the square root of a rational `x`,
//! `p/√d` a rational over the root of an integer; any token may start with `-`.
#![allow(dead_code)]

use tightframe::{ExactMatrix, RadicalScalar, Rational};

pub fn token(tok: &str) -> RadicalScalar {
    let (neg, body) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let value = if let Some(x) = body.strip_prefix('√') {
        RadicalScalar::sqrt_rational(&x.parse::<Rational>().unwrap()).unwrap()
    } else if let Some((p, d)) = body.split_once("/√") {
        let d: Rational = d.parse().unwrap();
        RadicalScalar::inv_sqrt_rational(&d).unwrap().scale(&p.parse().unwrap())
    } else {
        RadicalScalar::from_rational(body.parse().unwrap())
    };
    if neg {
        -value
    } else {
        value
    }
}

/// `factor · rows`, rows given as whitespace-separated tokens.
pub fn display(factor: &str, rows: &[&str]) -> ExactMatrix {
    let rows = rows
        .iter()
        .map(|r| r.split_whitespace().map(token).collect())
        .collect();
    ExactMatrix::from_rows(rows).unwrap().scale(&token(factor))
}

/// Nonzero pattern from rows of `*` and `0`.
pub fn pattern(rows: &[&str]) -> Vec<Vec<bool>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(|t| t == "*").collect())
        .collect()
}

pub fn hyperplane_2() -> ExactMatrix {
    display("1", &["1 1"])
}

pub fn hyperplane_3() -> ExactMatrix {
    display("1", &["1 2 1", "0 -1 2"])
}

pub fn hyperplane_4() -> ExactMatrix {
    display("1", &["1 1 1 1", "1 -1 0 0", "0 0 1 -1"])
}

pub fn hyperplane_5_pattern() -> Vec<Vec<bool>> {
    pattern(&["* * * * *", "* * * 0 0", "0 * * 0 0", "0 0 0 * *"])
}

pub fn hyperplane_6() -> ExactMatrix {
    display(
        "1",
        &[
            "1 1 1 1 1 1",
            "1 1 -1 -1 0 0",
            "1 -1 0 0 0 0",
            "0 0 1 -1 0 0",
            "0 0 0 0 1 -1",
        ],
    )
}

pub fn hyperplane_7_pattern() -> Vec<Vec<bool>> {
    pattern(&[
        "* * * * * * *",
        "* * * * 0 0 0",
        "* * 0 0 0 0 0",
        "0 0 * * 0 0 0",
        "0 0 0 0 * * *",
        "0 0 0 0 0 * *",
    ])
}

pub fn hyperplane_8() -> ExactMatrix {
    display(
        "1",
        &[
            "1 1 1 1 1 1 1 1",
            "1 1 -1 -1 0 0 0 0",
            "1 -1 0 0 0 0 0 0",
            "0 0 1 -1 0 0 0 0",
            "0 0 0 0 1 1 -1 -1",
            "0 0 0 0 1 -1 0 0",
            "0 0 0 0 0 0 1 -1",
        ],
    )
}

pub fn first_row_3() -> ExactMatrix {
    display(
        "1",
        &[
            "1/√3 1/√3 1/√3",
            "-2/√6 1/√6 1/√6",
            "0 -1/√2 1/√2",
        ],
    )
}

pub fn first_row_4() -> ExactMatrix {
    display(
        "1",
        &[
            "1/√4 1/√4 1/√4 1/√4",
            "-3/√12 1/√12 1/√12 1/√12",
            "0 -2/√6 1/√6 1/√6",
            "0 0 -1/√2 1/√2",
        ],
    )
}

/// Printed without the factor; the rows have norm 2.
pub fn two_rows_4_unscaled() -> ExactMatrix {
    display("1", &["-1 1 1 1", "1 -1 1 1", "1 1 -1 1", "1 1 1 -1"])
}

pub fn two_rows_6() -> ExactMatrix {
    display(
        "1",
        &[
            "√1/6 √1/6 √1/6 √1/6 √1/6 √1/6",
            "-√1/6 -√1/6 -√1/6 √1/6 √1/6 √1/6",
            "-√2/3 √1/6 √1/6 0 0 0",
            "0 -√1/2 √1/2 0 0 0",
            "0 0 0 -√2/3 √1/6 √1/6",
            "0 0 0 0 -√1/2 √1/2",
        ],
    )
}

pub fn two_rows_8() -> ExactMatrix {
    display(
        "1",
        &[
            "√1/8 √1/8 √1/8 √1/8 √1/8 √1/8 √1/8 √1/8",
            "-√1/8 -√1/8 -√1/8 -√1/8 √1/8 √1/8 √1/8 √1/8",
            "-√3/4 √1/12 √1/12 √1/12 0 0 0 0",
            "0 -√2/3 √1/6 √1/6 0 0 0 0",
            "0 0 -√1/2 √1/2 0 0 0 0",
            "0 0 0 0 -√3/4 √1/12 √1/12 √1/12",
            "0 0 0 0 0 -√2/3 √1/6 √1/6",
            "0 0 0 0 0 0 -√1/2 √1/2",
        ],
    )
}

pub fn two_constant_3() -> ExactMatrix {
    display("1/3", &["-1 2 2", "2 -1 2", "2 2 -1"])
}

pub fn two_constant_6() -> ExactMatrix {
    display(
        "1/3",
        &[
            "-2 1 1 1 1 1",
            "1 -2 1 1 1 1",
            "1 1 -2 1 1 1",
            "1 1 1 -2 1 1",
            "1 1 1 1 -2 1",
            "1 1 1 1 1 -2",
        ],
    )
}

pub fn two_constant_6_sixths() -> ExactMatrix {
    display(
        "1/6",
        &[
            "-4 2 2 2 2 2",
            "2 -4 2 2 2 2",
            "2 2 -4 2 2 2",
            "2 2 2 -4 2 2",
            "2 2 2 2 -4 2",
            "2 2 2 2 2 -4",
        ],
    )
}

/// Sign pattern of the 8×8 second case; `±1` marks `a`, `±2` marks `b`.
pub fn second_case_pattern() -> [[i8; 8]; 8] {
    [
        [-1, 1, 1, 1, -2, 2, 2, 2],
        [1, -1, 1, 1, 2, -2, 2, 2],
        [1, 1, -1, 1, 2, 2, -2, 2],
        [1, 1, 1, -1, 2, 2, 2, -2],
        [-2, 2, 2, 2, 1, -1, -1, -1],
        [2, -2, 2, 2, -1, 1, -1, -1],
        [2, 2, -2, 2, -1, -1, 1, -1],
        [2, 2, 2, -2, -1, -1, -1, 1],
    ]
}

pub fn from_codes<const N: usize>(codes: &[[i8; N]; N], a: &str, b: &str) -> ExactMatrix {
    let (a, b) = (token(a), token(b));
    ExactMatrix::from_fn(N, N, |i, j| {
        let c = codes[i][j];
        let v = if c.abs() == 1 { a.clone() } else { b.clone() };
        if c < 0 {
            -v
        } else {
            v
        }
    })
}

pub fn second_case() -> ExactMatrix {
    from_codes(&second_case_pattern(), "2/√20", "1/√20")
}

pub fn third_case() -> ExactMatrix {
    const CODES: [[i8; 6]; 6] = [
        [1, 1, 1, -2, -2, 2],
        [1, 1, 1, -2, 2, -2],
        [1, 1, 1, 2, -2, -2],
        [-2, 2, 2, 1, 1, 1],
        [2, -2, 2, 1, 1, 1],
        [2, 2, -2, 1, 1, 1],
    ];
    from_codes(&CODES, "√1/12", "1/2")
}

pub fn ap_8x4() -> ExactMatrix {
    display(
        "1",
        &[
            "-√7/16 √5/16 √3/16 √1/16",
            "√7/16 -√5/16 √3/16 √1/16",
            "√7/16 √5/16 -√3/16 √1/16",
            "√7/16 √5/16 √3/16 -√1/16",
            "-√1/16 √3/16 √5/16 √7/16",
            "√1/16 -√3/16 √5/16 √7/16",
            "√1/16 √3/16 -√5/16 √7/16",
            "√1/16 √3/16 √5/16 -√7/16",
        ],
    )
}

pub fn ap_block_reversed_rows() -> ExactMatrix {
    display(
        "1/√16",
        &["√7 √5 √3 -√1", "√7 √5 -√3 √1", "√7 -√5 √3 √1", "-√7 √5 √3 √1"],
    )
}

/// Column reversal as it should read: the printed factor is 1/16 and its
/// entry (1,3) shows √3 where the reversal puts √5.
pub fn ap_block_reversed_cols() -> ExactMatrix {
    display(
        "1/4",
        &["√1 √3 √5 -√7", "√1 √3 -√5 √7", "√1 -√3 √5 √7", "-√1 √3 √5 √7"],
    )
}

pub fn ap_block_reversed_cols_printed() -> ExactMatrix {
    display(
        "1/16",
        &["√1 √3 √3 -√7", "√1 √3 -√5 √7", "√1 -√3 √5 √7", "-√1 √3 √5 √7"],
    )
}

pub fn ap_block_reversed_both() -> ExactMatrix {
    display(
        "1",
        &[
            "-√1/16 √3/16 √5/16 √7/16",
            "√1/16 -√3/16 √5/16 √7/16",
            "√1/16 √3/16 -√5/16 √7/16",
            "√1/16 √3/16 √5/16 -√7/16",
        ],
    )
}

pub fn ap_16x8() -> ExactMatrix {
    display(
        "1/√64",
        &[
            "-√15 √13 √11 √9 -√7 √5 √3 √1",
            "√15 -√13 √11 √9 √7 -√5 √3 √1",
            "√15 √13 -√11 √9 √7 √5 -√3 √1",
            "√15 √13 √11 -√9 √7 √5 √3 -√1",
            "-√15 √13 √11 √9 √7 -√5 -√3 -√1",
            "√15 -√13 √11 √9 -√7 √5 -√3 -√1",
            "√15 √13 -√11 √9 -√7 -√5 √3 -√1",
            "√15 √13 √11 -√9 -√7 -√5 -√3 √1",
            "-√1 √3 √5 √7 -√9 √11 √13 √15",
            "√1 -√3 √5 √7 √9 -√11 √13 √15",
            "√1 √3 -√5 √7 √9 √11 -√13 √15",
            "√1 √3 √5 -√7 √9 √11 √13 -√15",
            "-√1 √3 √5 √7 √9 -√11 -√13 -√15",
            "√1 -√3 √5 √7 -√9 √11 -√13 -√15",
            "√1 √3 -√5 √7 -√9 -√11 √13 -√15",
            "√1 √3 √5 -√7 -√9 -√11 -√13 √15",
        ],
    )
}

pub fn weight_in_front_16x8() -> ExactMatrix {
    display(
        "1/√64",
        &[
            "-√15 √14 √13 √12 -√4 √3 √2 √1",
            "√15 -√14 √13 √12 √4 -√3 √2 √1",
            "√15 √14 -√13 √12 √4 √3 -√2 √1",
            "√15 √14 √13 -√12 √4 √3 √2 -√1",
            "-√15 √14 √13 √12 √4 -√3 -√2 -√1",
            "√15 -√14 √13 √12 -√4 √3 -√2 -√1",
            "√15 √14 -√13 √12 -√4 -√3 √2 -√1",
            "√15 √14 √13 -√12 -√4 -√3 -√2 √1",
            "-√1 √2 √3 √4 -√12 √13 √14 √15",
            "√1 -√2 √3 √4 √12 -√13 √14 √15",
            "√1 √2 -√3 √4 √12 √13 -√14 √15",
            "√1 √2 √3 -√4 √12 √13 √14 -√15",
            "-√1 √2 √3 √4 √12 -√13 -√14 -√15",
            "√1 -√2 √3 √4 -√12 √13 -√14 -√15",
            "√1 √2 -√3 √4 -√12 -√13 √14 -√15",
            "√1 √2 √3 -√4 -√12 -√13 -√14 √15",
        ],
    )
}

pub fn unbiased_second() -> ExactMatrix {
    display("1/2", &["-1 1 1 1", "1 -1 1 1", "1 1 -1 1", "1 1 1 -1"])
}

pub fn unbiased_third_printed() -> ExactMatrix {
    display("1/2", &["1 1 1 1", "1 1 -1 -1", "1 -1 -1 -1", "1 -1 1 -1"])
}
