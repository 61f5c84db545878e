//! The plain-text matrix file.
//!
//! ```text
//! CFF <N> <T> <w> <r> <d>
//! <row 0: N characters from {0,1}>
//! ...
//! <row T-1>
//! ```
//!
//! Single spaces, LF line endings, no trailing whitespace. Unclaimed
//! parameters are written as `0`. Every line, including the last row, ends
//! with a newline.

use crate::error::{Error, Result};
use crate::matrix::IncidenceMatrix;

/// The `(w, r, d)` recorded in a file header. Zeros mean "unclaimed".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Claim {
    pub w: usize,
    pub r: usize,
    pub d: usize,
}

impl Claim {
    pub fn new(w: usize, r: usize, d: usize) -> Self {
        Self { w, r, d }
    }

    pub fn is_claimed(&self) -> bool {
        self.w > 0 && self.r > 0
    }
}

pub fn write_matrix(m: &IncidenceMatrix, claim: Claim) -> String {
    let mut out = String::with_capacity((m.num_points() + 1) * (m.num_blocks() + 1) + 32);
    out.push_str(&format!(
        "CFF {} {} {} {} {}\n",
        m.num_points(),
        m.num_blocks(),
        claim.w,
        claim.r,
        claim.d
    ));
    for row in m.row_strings() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn format_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Format {
        line,
        message: message.into(),
    })
}

pub fn parse_matrix(text: &str) -> Result<(IncidenceMatrix, Claim)> {
    if text.contains('\r') {
        return format_err(1, "CR characters are not allowed; use LF line endings");
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 6 || fields[0] != "CFF" {
        return format_err(
            1,
            "header must be `CFF <N> <T> <w> <r> <d>` with single spaces",
        );
    }
    let mut nums = [0usize; 5];
    for (slot, field) in nums.iter_mut().zip(&fields[1..]) {
        if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
            return format_err(1, format!("`{field}` is not a non-negative integer"));
        }
        *slot = field.parse().map_err(|_| Error::Format {
            line: 1,
            message: format!("`{field}` is out of range"),
        })?;
    }
    let [n, t, w, r, d] = nums;
    if n == 0 || t == 0 {
        return format_err(1, "N and T must be positive");
    }

    let mut m = IncidenceMatrix::zeros(t, n);
    let mut count = 0;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if i >= t {
            return format_err(lineno, format!("more than T = {t} rows"));
        }
        if line.len() != n {
            return format_err(
                lineno,
                format!("row has {} characters, expected {n}", line.len()),
            );
        }
        for (j, b) in line.bytes().enumerate() {
            match b {
                b'1' => m.set(i, j, true),
                b'0' => {}
                _ => return format_err(lineno, format!("invalid character at column {}", j + 1)),
            }
        }
        count += 1;
    }
    if count != t {
        return format_err(count + 2, format!("expected {t} rows, found {count}"));
    }
    Ok((m, Claim { w, r, d }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_bytes() {
        let m = IncidenceMatrix::from_rows(&[vec![true, true, false], vec![false, true, true]])
            .unwrap();
        let s = write_matrix(&m, Claim::new(1, 1, 0));
        assert_eq!(s, "CFF 3 2 1 1 0\n110\n011\n");
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "CFF 3 2 1 1 0\n110\n",           // too few rows
            "CFF 3 2 1 1 0\n110\n011\n111\n", // too many rows
            "CFF 3 2 1 1 0\n110\n0112\n",     // long row
            "CFF 3 2 1 1 0\n110\n01x\n",      // bad char
            "CFF  3 2 1 1 0\n110\n011\n",     // double space
            "CFF 3 2 1 1 0 \n110\n011\n",     // trailing space
            "CFF 3 2 1 1 0\r\n110\r\n011\r\n",
            "CFF 3 2 1 1\n110\n011\n",
            "XFF 3 2 1 1 0\n110\n011\n",
            "CFF 3 2 -1 1 0\n110\n011\n",
            "CFF 3 2 1 1 0\n110 \n011\n",
        ];
        for text in bad {
            assert!(parse_matrix(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn missing_final_newline_is_tolerated() {
        let (m, c) = parse_matrix("CFF 2 1 0 0 0\n10").unwrap();
        assert_eq!(m.block_points(0), vec![0]);
        assert!(!c.is_claimed());
    }

    proptest! {
        #[test]
        fn write_then_parse(rows in (1usize..70, 1usize..10).prop_flat_map(|(n, t)|
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), t)),
            w in 0usize..4, r in 0usize..4, d in 0usize..4)
        {
            let m = IncidenceMatrix::from_rows(&rows).unwrap();
            let text = write_matrix(&m, Claim::new(w, r, d));
            let (back, claim) = parse_matrix(&text).unwrap();
            prop_assert_eq!(back, m);
            prop_assert_eq!(claim, Claim::new(w, r, d));
        }
    }
}
