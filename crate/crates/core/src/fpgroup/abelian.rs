//! Abelian invariants of a presentation via Smith normal form of the
//! relator exponent matrix. Serves as an independent cross-check on
//! quotient searches: every abelian quotient order must divide the order
//! of the abelianization.

use super::Presentation;

/// Invariant factors of the abelianization, in divisibility order, with
/// factors of 1 omitted and `0` denoting an infinite (free) factor.
///
/// For ⟨a,c | a³, c⁴⟩ this is `[12]`; for a free abelian group of rank 2,
/// `[0, 0]`.
pub fn abelianization(pres: &Presentation) -> Vec<u64> {
    let n = pres.generator_count();
    let m: Vec<Vec<i64>> = pres
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for &l in r.letters() {
                let g = l.unsigned_abs() as usize - 1;
                row[g] += if l > 0 { 1 } else { -1 };
            }
            row
        })
        .collect();
    let k = m.len().min(n);
    let diag = smith_diagonal(m, n);
    let mut factors: Vec<u64> = diag.iter().copied().filter(|&d| d >= 2).collect();
    let zero_count = diag.iter().filter(|&&d| d == 0).count() + (n - k);
    factors.extend(std::iter::repeat_n(0, zero_count));
    factors
}

/// Diagonal of the Smith normal form of an integer matrix: nonnegative
/// entries `d1 | d2 | …` (min(rows, cols) of them).
// Row operations read one row while writing another, so index loops are the
// honest form here.
#[allow(clippy::needless_range_loop)]
pub(crate) fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<u64> {
    let rows = m.len();
    let k = rows.min(cols);
    let mut diag = vec![0u64; k];
    for t in 0..k {
        'pivot: loop {
            // Pick the nonzero entry of smallest magnitude as the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Remaining submatrix is zero; diagonal stays 0 from here on.
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = m[t][t];

            // Reduce the pivot column; leftover remainders restart the loop
            // with a smaller pivot.
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / pivot;
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
            }
            if (t + 1..rows).any(|i| m[i][t] != 0) {
                continue 'pivot;
            }
            // Reduce the pivot row.
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / pivot;
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                }
            }
            if (t + 1..cols).any(|j| m[t][j] != 0) {
                continue 'pivot;
            }
            // Enforce the divisibility chain: fold any offending row into
            // row t and retry.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % pivot != 0 {
                        for jj in t..cols {
                            m[t][jj] += m[i][jj];
                        }
                        continue 'pivot;
                    }
                }
            }
            diag[t] = pivot.unsigned_abs();
            break;
        }
    }
    diag
}
