//! Integer Smith normal form and abelian invariants of a presentation.
//!
//! Abelianization sends a presentation to the cokernel of its relator
//! exponent-sum matrix; the invariant factors come out of the Smith normal
//! form. Arithmetic runs in `i128`; entries of the matrices that arise
//! here are tiny, and every intermediate operation is checked.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::Presentation;

/// Invariant factors of the abelianization: `ℤ^free_rank ⊕ ℤ/d₁ ⊕ ℤ/d₂ …`
/// with `d₁ | d₂ | …`, every `dᵢ ≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i128>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `ℤ^r` with no torsion?
    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.free_rank == r && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.free_rank > 0 {
            write!(f, "Z^{}", self.free_rank)?;
            first = false;
        }
        for d in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Smith normal form of an integer matrix (rows × cols, row-major).
///
/// Returns the diagonal `d₁, d₂, …` of length `min(rows, cols)` with
/// `dᵢ ≥ 0` and `d₁ | d₂ | …` (zeros sorted last).
#[allow(clippy::needless_range_loop)] // simultaneous row/column surgery reads clearer indexed
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> Vec<i128> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let n = rows.min(cols);
    let mut diag = vec![0i128; n];

    for t in 0..n {
        // Deterministic pivot: smallest |entry| > 0, then smallest (row, col).
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut progressed = false;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = div_round(m[i][t], m[t][t]);
                    for j in t..cols {
                        m[i][j] = checked(m[i][j] - q * m[t][j]);
                    }
                    if m[i][t] != 0 {
                        // Remainder smaller than the pivot: swap it up.
                        m.swap(t, i);
                        progressed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = div_round(m[t][j], m[t][t]);
                    for row in m.iter_mut().take(rows).skip(t) {
                        row[j] = checked(row[j] - q * row[t]);
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        progressed = true;
                    }
                }
            }
            if progressed {
                continue;
            }
            // Row and column are clear. If the pivot fails to divide some
            // remaining entry, fold that row in and keep going.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % m[t][t] != 0 {
                        for jj in t..cols {
                            m[t][jj] = checked(m[t][jj] + m[i][jj]);
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        diag[t] = m[t][t].abs();
    }

    // Enforce the divisibility chain.
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i], diag[j]);
            if a == 0 && b != 0 {
                diag[i] = b;
                diag[j] = 0;
            } else if a != 0 && b % a != 0 {
                let g = gcd(a, b);
                diag[i] = g;
                diag[j] = checked(a / g * b);
            }
        }
    }
    diag
}

fn div_round(a: i128, b: i128) -> i128 {
    // Round-to-nearest keeps remainders at most |b|/2, so entries shrink.
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + r.signum() * b.signum()
    } else {
        q
    }
}

fn checked(v: i128) -> i128 {
    // Entries here stay minuscule; this documents the assumption.
    debug_assert!(v.abs() < i128::MAX / 4);
    v
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Abelian invariants of the presentation: Smith normal form of the
/// relator exponent matrix.
pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    let matrix = p.exponent_matrix();
    let diag = smith_normal_form(&matrix);
    let nonzero = diag.iter().filter(|&&d| d != 0).count();
    let torsion: Vec<i128> = diag.iter().copied().filter(|&d| d >= 2).collect();
    AbelianInvariants {
        free_rank: p.ngens() - nonzero,
        torsion,
    }
}

/// Renders the SNF diagonal for evidence reports.
pub fn diagonal_display(diag: &[i128]) -> String {
    use core::fmt::Write;
    let mut s = String::from("diag(");
    for (i, d) in diag.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{d}");
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_presentation;

    #[test]
    fn snf_diag_2_3() {
        // diag(2,3) → diag(1,6)
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(smith_normal_form(&m), vec![1, 6]);
    }

    #[test]
    fn snf_zero_and_identity() {
        let z = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(smith_normal_form(&z), vec![0, 0]);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(smith_normal_form(&id), vec![1, 1]);
    }

    #[test]
    fn abelianize_free_abelian() {
        let p = parse_presentation("<a, b | [a,b]>", "Z2").unwrap();
        assert_eq!(abelianize(&p), AbelianInvariants::free(2));
    }

    #[test]
    fn abelianize_cyclic() {
        let p = parse_presentation("<a | a^3>", "Z3").unwrap();
        let inv = abelianize(&p);
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![3]);
    }

    #[test]
    fn abelianize_bounds() {
        let p = parse_presentation("<a, b, c | a*b, c^4>", "t").unwrap();
        let inv = abelianize(&p);
        assert!(inv.free_rank + inv.torsion.len() <= p.ngens());
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion, vec![4]);
    }
}
