//! Closed-form bounds on the side count `k` and on the number of vertices of
//! Venn diagrams made of convex k-gons. Integer arithmetic only.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` the tables support.
pub const MAX_N: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {n} is outside the supported range {min}..={MAX_N}")]
    CurveCount { n: u32, min: u32 },
    #[error("k = {0} is too small: polygons need at least 3 sides")]
    SideCount(u32),
    #[error("invalid range {0}..={1}")]
    Range(u32, u32),
    #[error("value overflows 128 bits")]
    Overflow,
}

fn check_n(n: u32, min: u32) -> Result<(), BoundsError> {
    if n < min || n > MAX_N {
        return Err(BoundsError::CurveCount { n, min });
    }
    Ok(())
}

fn check_k(k: u32) -> Result<(), BoundsError> {
    if k < 3 {
        return Err(BoundsError::SideCount(k));
    }
    Ok(())
}

fn pairs(n: u32) -> u128 {
    let n = n as u128;
    n * (n - 1) / 2
}

fn ceil_div(num: u128, den: u128) -> u128 {
    num.div_ceil(den)
}

/// Two convex k-gons cross at most `2k` times, over `C(n, 2)` pairs.
pub fn lemma1_max_vertices(n: u32, k: u32) -> Result<u128, BoundsError> {
    check_n(n, 2)?;
    check_k(k)?;
    pairs(n)
        .checked_mul(2 * k as u128)
        .ok_or(BoundsError::Overflow)
}

/// `ceil((2^(n-1) - 1) / C(n, 2))`: from `2^n - 2` vertices against the
/// pairwise crossing cap.
pub fn lemma2_min_k(n: u32) -> Result<u128, BoundsError> {
    check_n(n, 3)?;
    Ok(ceil_div((1u128 << (n - 1)) - 1, pairs(n)))
}

/// `ceil((2^n - 2 - n) / (n (n - 2)))`.
pub fn theorem_min_k(n: u32) -> Result<u128, BoundsError> {
    check_n(n, 3)?;
    let n128 = n as u128;
    Ok(ceil_div((1u128 << n) - 2 - n128, n128 * (n128 - 2)))
}

/// `2k C(n, 2) - n (k - 1)`.
pub fn theorem_vertex_cap(n: u32, k: u32) -> Result<u128, BoundsError> {
    check_n(n, 3)?;
    check_k(k)?;
    let total = lemma1_max_vertices(n, k)?;
    Ok(total - n as u128 * (k as u128 - 1))
}

/// Best known upper bound on the minimum k: tight up to seven curves, and a
/// convex `2^(n-2)`-gon from the general convex construction beyond that.
pub fn known_upper_k(n: u32) -> Result<u128, BoundsError> {
    check_n(n, 3)?;
    if n <= 7 {
        theorem_min_k(n)
    } else {
        Ok(1u128 << (n - 2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: u32,
    pub lemma2_min_k: u128,
    pub theorem_min_k: u128,
    pub upper_k: u128,
}

impl BoundsRow {
    pub fn lemma1_max_vertices(&self, k: u32) -> Result<u128, BoundsError> {
        lemma1_max_vertices(self.n, k)
    }

    pub fn theorem_vertex_cap(&self, k: u32) -> Result<u128, BoundsError> {
        theorem_vertex_cap(self.n, k)
    }
}

pub fn bounds_row(n: u32) -> Result<BoundsRow, BoundsError> {
    Ok(BoundsRow {
        n,
        lemma2_min_k: lemma2_min_k(n)?,
        theorem_min_k: theorem_min_k(n)?,
        upper_k: known_upper_k(n)?,
    })
}

pub fn bounds_table(n_min: u32, n_max: u32) -> Result<Vec<BoundsRow>, BoundsError> {
    if n_min > n_max {
        return Err(BoundsError::Range(n_min, n_max));
    }
    check_n(n_min, 3)?;
    check_n(n_max, 3)?;
    (n_min..=n_max).map(bounds_row).collect()
}

/// Aligned text rendering: one header row and the two bound rows.
pub fn format_table(rows: &[BoundsRow]) -> String {
    let cells = |label: &str, f: &dyn Fn(&BoundsRow) -> String| {
        std::iter::once(label.to_string())
            .chain(rows.iter().map(f))
            .collect::<Vec<_>>()
    };
    let lines = [
        cells("n", &|r| r.n.to_string()),
        cells("k >=", &|r| r.theorem_min_k.to_string()),
        cells("k <=", &|r| r.upper_k.to_string()),
    ];
    let columns = lines[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &lines {
        let mut text = format!("{:<w$} |", line[0], w = widths[0]);
        for c in 1..columns {
            text.push_str(&format!(" {:>w$}", line[c], w = widths[c]));
        }
        out.push_str(&text);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma1_examples() {
        assert_eq!(lemma1_max_vertices(7, 3), Ok(126));
        assert_eq!(lemma1_max_vertices(2, 3), Ok(6));
        assert_eq!(lemma1_max_vertices(7, 4), Ok(168));
        assert!(lemma1_max_vertices(1, 3).is_err());
        assert!(lemma1_max_vertices(7, 2).is_err());
    }

    #[test]
    fn lemma2_examples() {
        assert_eq!(lemma2_min_k(7), Ok(3));
        assert_eq!(lemma2_min_k(6), Ok(3));
        assert_eq!(lemma2_min_k(3), Ok(1));
        assert!(lemma2_min_k(2).is_err());
    }

    #[test]
    fn theorem_min_k_examples() {
        assert_eq!(theorem_min_k(7), Ok(4));
        assert_eq!(theorem_min_k(10), Ok(13));
        assert_eq!(theorem_min_k(14), Ok(98));
        assert!(theorem_min_k(65).is_err());
    }

    #[test]
    fn vertex_cap_examples() {
        assert_eq!(theorem_vertex_cap(7, 4), Ok(147));
        assert_eq!(theorem_vertex_cap(7, 3), Ok(112));
        assert_eq!(theorem_vertex_cap(3, 3), Ok(12));
    }

    #[test]
    fn table_rows() {
        let rows = bounds_table(3, 14).unwrap();
        let lower: Vec<u128> = rows.iter().map(|r| r.theorem_min_k).collect();
        let upper: Vec<u128> = rows.iter().map(|r| r.upper_k).collect();
        assert_eq!(lower, [1, 2, 2, 3, 4, 6, 8, 13, 21, 35, 58, 98]);
        assert_eq!(upper, [1, 2, 2, 3, 4, 64, 128, 256, 512, 1024, 2048, 4096]);
        assert!(bounds_table(8, 7).is_err());
        assert!(bounds_table(2, 7).is_err());
    }

    #[test]
    fn extremes_do_not_overflow() {
        let row = bounds_row(64).unwrap();
        assert_eq!(row.upper_k, 1u128 << 62);
        assert!(row.theorem_min_k > 0);
    }

    #[test]
    fn theorem_is_at_least_lemma2_and_cap_is_tighter() {
        for n in 4..=MAX_N {
            assert!(
                theorem_min_k(n).unwrap() >= lemma2_min_k(n).unwrap(),
                "n={n}"
            );
        }
        for n in 3..=30 {
            for k in 3..=64 {
                assert!(theorem_vertex_cap(n, k).unwrap() < lemma1_max_vertices(n, k).unwrap());
            }
        }
    }
}
