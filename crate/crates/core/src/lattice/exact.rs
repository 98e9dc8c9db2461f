//! Exact linear algebra helpers: fraction-free elimination, mod-2 solving,
//! pivoted LDLᵀ and integer row echelon forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type IntMatrix = Vec<Vec<BigInt>>;

pub(crate) fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Leading principal minors by Bareiss elimination without pivoting.
/// Stops after the first vanishing minor, which is included.
pub(crate) fn leading_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &pivot - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant by Bareiss elimination with row pivoting.
pub(crate) fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &pivot - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    sign * &a[n - 1][n - 1]
}

/// Positive definite iff every leading principal minor is positive.
pub(crate) fn is_positive_definite(m: &IntMatrix) -> bool {
    let minors = leading_minors(m);
    minors.len() == m.len() && minors.iter().all(|d| d.is_positive())
}

/// Unique solution of `m·x ≡ rhs (mod 2)`, or `None` when `m` is singular
/// over the field with two elements.
pub(crate) fn solve_mod2(m: &[Vec<i64>], rhs: &[bool]) -> Option<Vec<bool>> {
    let n = m.len();
    let words = (n + 1).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..n {
                if m[i][j].rem_euclid(2) == 1 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            if rhs[i] {
                row[n / 64] |= 1 << (n % 64);
            }
            row
        })
        .collect();
    let bit = |row: &[u64], j: usize| (row[j / 64] >> (j % 64)) & 1 == 1;

    for col in 0..n {
        let pivot = (col..n).find(|&r| bit(&rows[r], col))?;
        rows.swap(col, pivot);
        let prow = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && bit(row, col) {
                for (w, p) in row.iter_mut().zip(&prow) {
                    *w ^= p;
                }
            }
        }
    }
    Some(rows.iter().map(|row| bit(row, n)).collect())
}

/// `Q = L·D·Lᵀ` for a positive definite `Q`, with variables reordered so
/// that the variable eliminated next always has the smallest remaining
/// Schur-complement diagonal.
///
/// `order[t]` is the variable eliminated at step `t`; `lower[s][t]` (for
/// `s > t`) and `diag[t]` refer to the reordered variables.
pub(crate) struct PivotedLdl {
    pub order: Vec<usize>,
    pub diag: Vec<BigRational>,
    pub lower: Vec<Vec<BigRational>>,
}

pub(crate) fn pivoted_ldl(q: &IntMatrix) -> PivotedLdl {
    let n = q.len();
    let mut s: Vec<Vec<BigRational>> = q
        .iter()
        .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
        .collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    // column of L for each eliminated variable, indexed by original variable
    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(n);

    while !remaining.is_empty() {
        let (pos, &r) = remaining
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| s[a][a].cmp(&s[b][b]).then(a.cmp(&b)))
            .expect("nonempty");
        remaining.remove(pos);
        let d = s[r][r].clone();
        let mut col = vec![BigRational::zero(); n];
        for &j in &remaining {
            col[j] = &s[j][r] / &d;
        }
        for &i in &remaining {
            if col[i].is_zero() {
                continue;
            }
            for &j in &remaining {
                let delta = &col[i] * &s[r][j];
                s[i][j] -= delta;
            }
        }
        order.push(r);
        diag.push(d);
        columns.push(col);
    }

    let mut lower = vec![vec![BigRational::zero(); n]; n];
    for t in 0..n {
        for s_ in t + 1..n {
            lower[s_][t] = columns[t][order[s_]].clone();
        }
    }
    PivotedLdl { order, diag, lower }
}

/// A basis of the integer row span of `rows`, by Euclidean row reduction.
pub(crate) fn row_basis(mut rows: IntMatrix) -> IntMatrix {
    let m = rows.len();
    if m == 0 {
        return rows;
    }
    let n = rows[0].len();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    rows.truncate(r);
    rows
}

pub(crate) fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub(crate) fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `B·Q·Bᵀ`.
pub(crate) fn congruence(b: &IntMatrix, q: &IntMatrix) -> IntMatrix {
    mat_mul(&mat_mul(b, q), &transpose(b))
}
