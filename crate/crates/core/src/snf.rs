//! Smith normal form of integer matrices.
//!
//! Boundary matrices are sparse with mostly unit entries, so a sparse
//! pre-reduction splits off one divisor-1 factor per unit pivot using only
//! unimodular row operations (clearing a unit pivot's column leaves its row
//! removable by column operations that touch nothing else). The small
//! residual with no unit entries goes through a dense reduction.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::matrix::SparseIntMatrix;

type SparseRow = Vec<(usize, BigInt)>;

/// Elementary divisors d_1 | d_2 | ... of an integer matrix, each positive.
/// The number of divisors equals the rank.
pub fn smith_normal_form(m: &SparseIntMatrix) -> Vec<u64> {
    let (unit_pivots, residual) = unit_reduce(m);
    let mut divisors = vec![1u64; unit_pivots];
    divisors.extend(dense_snf(residual));
    divisors
}

/// Split off unit pivots sparsely. Returns the number removed and the dense
/// residual matrix (rows of the remaining submatrix, columns compressed).
fn unit_reduce(m: &SparseIntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Option<SparseRow>> = m
        .row_vectors()
        .into_iter()
        .map(|r| {
            let row: SparseRow = r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect();
            (!row.is_empty()).then_some(row)
        })
        .collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols()];
    let mut col_count = vec![0usize; m.cols()];
    for (i, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for (c, _) in row {
                col_rows[*c].push(i);
                col_count[*c] += 1;
            }
        }
    }

    let mut removed_cols = vec![false; m.cols()];
    let mut unit_pivots = 0usize;
    loop {
        // sparsest unit entry, ties by (row, col)
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let rlen = row.len();
            for (c, v) in row {
                if !v.abs().is_one() {
                    continue;
                }
                let cand = ((rlen - 1) * (col_count[*c] - 1), i, *c);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        unit_pivots += 1;
        removed_cols[pc] = true;

        let pivot_row = rows[pr].take().expect("pivot row is live");
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        let pivot_val =
            pivot_row.iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone()).unwrap();

        let victims: Vec<usize> = std::mem::take(&mut col_rows[pc])
            .into_iter()
            .filter(|&i| i != pr)
            .collect();
        for i in victims {
            let Some(row) = rows[i].take() else { continue };
            let Some(entry) = row.iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone()) else {
                rows[i] = Some(row);
                col_rows[pc].push(i);
                continue;
            };
            // pivot is a unit: row_i - entry * pivot * row_p zeroes the column
            let factor = &entry * &pivot_val;
            for (c, _) in &row {
                col_count[*c] -= 1;
            }
            let mut merged: SparseRow = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut a, mut b) = (row.iter().peekable(), pivot_row.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some((ca, va)), Some((cb, vb))) => {
                        if ca < cb {
                            merged.push((*ca, va.clone()));
                            a.next();
                        } else if cb < ca {
                            merged.push((*cb, -(&factor * vb)));
                            b.next();
                        } else {
                            let v = va - &factor * vb;
                            if !v.is_zero() {
                                merged.push((*ca, v));
                            }
                            a.next();
                            b.next();
                        }
                    }
                    (Some((ca, va)), None) => {
                        merged.push((*ca, va.clone()));
                        a.next();
                    }
                    (None, Some((cb, vb))) => {
                        merged.push((*cb, -(&factor * vb)));
                        b.next();
                    }
                    (None, None) => break,
                }
            }
            if merged.is_empty() {
                continue;
            }
            for (c, _) in &merged {
                col_rows[*c].push(i);
                col_count[*c] += 1;
            }
            rows[i] = Some(merged);
        }
    }

    // compress the residual into a dense matrix
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !removed_cols[c]).collect();
    let col_index: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = Vec::new();
    for row in rows.into_iter().flatten() {
        let mut out = vec![BigInt::zero(); live_cols.len()];
        for (c, v) in row {
            out[col_index[&c]] = v;
        }
        dense.push(out);
    }
    (unit_pivots, dense)
}

fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<u64> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut divisors: Vec<BigInt> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing submatrix, ties by index
        let mut pivot: Option<(BigInt, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let mag = a[i][j].abs();
                if pivot.as_ref().map_or(true, |(m, _, _)| mag < *m) {
                    pivot = Some((mag, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        // clear row and column t by remainder steps; restart whenever a
        // remainder survives, since it is smaller than the pivot
        'reduce: loop {
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][t], &a[t][t]);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[t][j], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'reduce;
                }
            }
            // divisibility: fold in any entry not divisible by the pivot
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if (&a[i][j] % &a[t][t]).is_zero() {
                        continue;
                    }
                    for jj in t..cols {
                        let v = &a[t][jj] + &a[i][jj];
                        a[t][jj] = v;
                    }
                    continue 'reduce;
                }
            }
            break;
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }

    divisors
        .into_iter()
        .map(|d| u64::try_from(&d).expect("elementary divisor fits in u64 at this scale"))
        .collect()
}

/// Quotient rounded toward the nearest integer, which keeps remainders at
/// most half the divisor in magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    if (&r * 2u8).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_examples() {
        let m = SparseIntMatrix::from_dense(&[&[2, 4], &[6, 8]]);
        assert_eq!(smith_normal_form(&m), vec![2, 4]);

        let id = SparseIntMatrix::from_dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(smith_normal_form(&id), vec![1, 1, 1]);

        let z = SparseIntMatrix::new(2, 3);
        assert_eq!(smith_normal_form(&z), Vec::<u64>::new());
    }

    #[test]
    fn snf_known_diagonal() {
        let m = SparseIntMatrix::from_dense(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        assert_eq!(smith_normal_form(&m), vec![1, 3, 21]);
    }

    #[test]
    fn divisibility_chain() {
        let m = SparseIntMatrix::from_dense(&[&[2, 0], &[0, 3]]);
        let d = smith_normal_form(&m);
        assert_eq!(d, vec![1, 6]);
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn unit_reduction_agrees_with_dense_route() {
        // mixed unit and non-unit structure
        let m = SparseIntMatrix::from_dense(&[
            &[1, 2, 0, 0],
            &[0, 4, 6, 0],
            &[0, 0, 8, 3],
            &[2, 0, 0, 12],
        ]);
        let fast = smith_normal_form(&m);
        let slow = {
            let a: Vec<Vec<BigInt>> = (0..4)
                .map(|i| (0..4).map(|j| BigInt::from(m.get(i, j))).collect())
                .collect();
            dense_snf(a)
        };
        assert_eq!(fast, slow);
        for w in fast.windows(2) {
            assert_eq!(w[1] % w[0], 0, "{fast:?}");
        }
    }
}
