//! Exact rank computation and kernel bases over the rationals and over odd
//! prime fields.
//!
//! Rational ranks use division-free cross-multiplication on arbitrary
//! precision integers, with the row content removed after every update to
//! keep entries small. Pivots are chosen Markowitz-style (sparsest product
//! of row and column counts) with a deterministic index tie-break, so runs
//! are reproducible.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use thiserror::Error;

use crate::matrix::SparseIntMatrix;

/// Coefficient field for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    /// Integers mod an odd prime.
    PrimeField(u64),
}

impl FieldSpec {
    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rational => "q".to_string(),
            FieldSpec::PrimeField(p) => format!("zp:{p}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum RankError {
    #[error("modulus {0} must be an odd prime")]
    NotOddPrime(u64),
}

pub fn check_odd_prime(p: u64) -> Result<(), RankError> {
    if p < 3 || p % 2 == 0 {
        return Err(RankError::NotOddPrime(p));
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return Err(RankError::NotOddPrime(p));
        }
        d += 2;
    }
    Ok(())
}

/// Exact rank of an integer matrix over the given field.
pub fn rank_over_field(m: &SparseIntMatrix, field: FieldSpec) -> Result<usize, RankError> {
    match field {
        FieldSpec::Rational => Ok(rank_fraction_free(m)),
        FieldSpec::PrimeField(p) => {
            check_odd_prime(p)?;
            Ok(rank_mod_p(m, p))
        }
    }
}

type SparseRow = Vec<(usize, BigInt)>;

fn row_content(row: &SparseRow) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Rank over the rationals by integer-preserving elimination:
/// new_row = pivot * row - row[c] * pivot_row, then divide out the content.
pub fn rank_fraction_free(m: &SparseIntMatrix) -> usize {
    let mut rows: Vec<Option<SparseRow>> = m
        .row_vectors()
        .into_iter()
        .map(|r| {
            let row: SparseRow = r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect();
            (!row.is_empty()).then_some(row)
        })
        .collect();

    // column occupancy among live rows, maintained lazily
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

    let mut rank = 0;
    loop {
        // Markowitz pivot: minimize (row_len - 1) * (col_count - 1)
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let rlen = row.len();
            for (c, _) in row {
                let score = (rlen - 1) * (col_count[*c] - 1);
                let cand = (score, i, *c);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        rank += 1;

        let pivot_row = rows[pr].take().expect("pivot row is live");
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        let pivot_val = pivot_row
            .iter()
            .find(|(c, _)| *c == pc)
            .map(|(_, v)| v.clone())
            .expect("pivot entry present");

        let victims: Vec<usize> = std::mem::take(&mut col_rows[pc])
            .into_iter()
            .filter(|&i| i != pr)
            .collect();
        for i in victims {
            let Some(row) = rows[i].take() else { continue };
            let Some(factor) = row.iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone()) else {
                // stale occupancy entry
                rows[i] = Some(row);
                col_rows[pc].push(i);
                continue;
            };
            for (c, _) in &row {
                col_count[*c] -= 1;
            }
            let mut merged: SparseRow = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut a, mut b) = (row.iter().peekable(), pivot_row.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some((ca, va)), Some((cb, vb))) => {
                        if ca < cb {
                            merged.push((*ca, &pivot_val * va));
                            a.next();
                        } else if cb < ca {
                            merged.push((*cb, -(&factor * vb)));
                            b.next();
                        } else {
                            let v = &pivot_val * va - &factor * vb;
                            if !v.is_zero() {
                                merged.push((*ca, v));
                            }
                            a.next();
                            b.next();
                        }
                    }
                    (Some((ca, va)), None) => {
                        merged.push((*ca, &pivot_val * va));
                        a.next();
                    }
                    (None, Some((cb, vb))) => {
                        merged.push((*cb, -(&factor * vb)));
                        b.next();
                    }
                    (None, None) => break,
                }
            }
            debug_assert!(merged.iter().all(|(c, _)| *c != pc));
            if merged.is_empty() {
                continue;
            }
            let content = row_content(&merged);
            if !content.is_one() {
                for (_, v) in &mut merged {
                    *v = &*v / &content;
                }
            }
            for (c, _) in &merged {
                col_rows[*c].push(i);
                col_count[*c] += 1;
            }
            rows[i] = Some(merged);
        }
    }
    rank
}

fn mod_p(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(v: u64, p: u64) -> u64 {
    pow_mod(v, p - 2, p)
}

/// Rank over Z/p (p an odd prime, not checked here).
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let mut rows: Vec<Option<Vec<(usize, u64)>>> = m
        .row_vectors()
        .into_iter()
        .map(|r| {
            let row: Vec<(usize, u64)> = r
                .into_iter()
                .filter_map(|(c, v)| {
                    let v = mod_p(v, p);
                    (v != 0).then_some((c, v))
                })
                .collect();
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

    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let rlen = row.len();
            for (c, _) in row {
                let score = (rlen - 1) * (col_count[*c] - 1);
                let cand = (score, i, *c);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        rank += 1;

        let pivot_row = rows[pr].take().expect("pivot row is live");
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        let pivot_val = pivot_row.iter().find(|(c, _)| *c == pc).map(|(_, v)| *v).unwrap();
        let pivot_inv = inv_mod(pivot_val, p);

        let victims: Vec<usize> = std::mem::take(&mut col_rows[pc])
            .into_iter()
            .filter(|&i| i != pr)
            .collect();
        for i in victims {
            let Some(row) = rows[i].take() else { continue };
            let Some(entry) = row.iter().find(|(c, _)| *c == pc).map(|(_, v)| *v) else {
                rows[i] = Some(row);
                col_rows[pc].push(i);
                continue;
            };
            let factor = mul_mod(entry, pivot_inv, p);
            for (c, _) in &row {
                col_count[*c] -= 1;
            }
            let mut merged: Vec<(usize, u64)> = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut a, mut b) = (row.iter().peekable(), pivot_row.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (Some((ca, va)), Some((cb, vb))) => {
                        if ca < cb {
                            merged.push((*ca, *va));
                            a.next();
                        } else if cb < ca {
                            let v = (p - mul_mod(factor, *vb, p)) % p;
                            if v != 0 {
                                merged.push((*cb, v));
                            }
                            b.next();
                        } else {
                            let v = (*va + p - mul_mod(factor, *vb, p)) % p;
                            if v != 0 {
                                merged.push((*ca, v));
                            }
                            a.next();
                            b.next();
                        }
                    }
                    (Some((ca, va)), None) => {
                        merged.push((*ca, *va));
                        a.next();
                    }
                    (None, Some((cb, vb))) => {
                        let v = (p - mul_mod(factor, *vb, p)) % p;
                        if v != 0 {
                            merged.push((*cb, v));
                        }
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
    rank
}

/// Kernel basis of an integer matrix over the rationals, with denominators
/// cleared so each basis vector has integer entries. Dense; intended for the
/// small matrices that feed induced-map checks.
pub fn kernel_basis_rational(m: &SparseIntMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); cols]; rows];
    for (r, c, v) in m.iter() {
        a[r][c] = BigRational::from_integer(BigInt::from(v));
    }
    // reduced row echelon form
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pr);
        let inv = a[r][c].recip();
        for j in c..cols {
            let v = &a[r][j] * &inv;
            a[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        // clear denominators
        let mut lcm = BigInt::one();
        for x in &v {
            lcm = lcm.lcm(x.denom());
        }
        let ints: Vec<BigInt> =
            v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        basis.push(ints);
    }
    basis
}

/// Kernel basis over Z/p. Dense, for small matrices.
pub fn kernel_basis_mod_p(m: &SparseIntMatrix, p: u64) -> Vec<Vec<u64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = vec![vec![0u64; cols]; rows];
    for (r, c, v) in m.iter() {
        a[r][c] = mod_p(v, p);
    }
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = mul_mod(a[r][j], inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    a[i][j] = (a[i][j] + p - mul_mod(f, a[r][j], p)) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - a[i][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let m = SparseIntMatrix::from_dense(&[&[2, 4], &[6, 8]]);
        assert_eq!(rank_over_field(&m, FieldSpec::Rational).unwrap(), 2);
        assert_eq!(rank_over_field(&m, FieldSpec::PrimeField(3)).unwrap(), 2);
        assert!(rank_over_field(&m, FieldSpec::PrimeField(2)).is_err());

        let z = SparseIntMatrix::new(3, 4);
        assert_eq!(rank_over_field(&z, FieldSpec::Rational).unwrap(), 0);
        assert_eq!(rank_over_field(&z, FieldSpec::PrimeField(5)).unwrap(), 0);
    }

    #[test]
    fn rank_detects_field_dependence() {
        // determinant 3: full rank over Q, rank 1 over Z/3
        let m = SparseIntMatrix::from_dense(&[&[1, 1], &[1, 4]]);
        assert_eq!(rank_over_field(&m, FieldSpec::Rational).unwrap(), 2);
        assert_eq!(rank_over_field(&m, FieldSpec::PrimeField(3)).unwrap(), 1);
    }

    #[test]
    fn odd_prime_validation() {
        assert!(check_odd_prime(3).is_ok());
        assert!(check_odd_prime(97).is_ok());
        for p in [0, 1, 2, 4, 9, 15, 91] {
            assert!(check_odd_prime(p).is_err(), "{p} accepted");
        }
    }

    #[test]
    fn kernel_bases_agree_with_rank() {
        let m = SparseIntMatrix::from_dense(&[&[1, 2, 3], &[2, 4, 6]]);
        let kq = kernel_basis_rational(&m);
        assert_eq!(kq.len(), 2);
        for v in &kq {
            // check m * v = 0
            for r in 0..m.rows() {
                let s: BigInt =
                    (0..m.cols()).map(|c| BigInt::from(m.get(r, c)) * &v[c]).sum();
                assert!(s.is_zero());
            }
        }
        let kp = kernel_basis_mod_p(&m, 5);
        assert_eq!(kp.len(), 2);
        for v in &kp {
            for r in 0..m.rows() {
                let s: u64 =
                    (0..m.cols()).map(|c| mod_p(m.get(r, c), 5) * v[c] % 5).sum::<u64>() % 5;
                assert_eq!(s, 0);
            }
        }
    }
}
