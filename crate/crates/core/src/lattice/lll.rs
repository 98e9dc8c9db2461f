//! Integral LLL reduction of a positive definite Gram matrix.
//!
//! All quantities are integers: `d[i]` is the Gram determinant of the first
//! `i` basis vectors and `lam[k][j] = d[j]·μ_{k,j}`. The returned transform
//! is unimodular, so the reduced lattice is the same lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::exact::IntMatrix;

// Lovász parameter 99/100
const DELTA_NUM: i64 = 99;
const DELTA_DEN: i64 = 100;

pub(crate) struct Reduced {
    /// Rows are the new basis vectors in the old coordinates.
    pub transform: IntMatrix,
    pub gram: IntMatrix,
}

struct State {
    n: usize,
    // 1-indexed, slot 0 unused for vectors
    gram: IntMatrix,
    h: IntMatrix,
    d: Vec<BigInt>,
    lam: IntMatrix,
}

impl State {
    fn redi(&mut self, k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= self.d[l] {
            return;
        }
        // nearest integer to lam/d
        let q = (&two_lam + &self.d[l]).div_floor(&(&self.d[l] * 2));
        self.sub_row(k, l, &q);
        let ql = &q * &self.d[l];
        self.lam[k][l] -= ql;
        for i in 1..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    /// b_k ← b_k − q·b_l
    fn sub_row(&mut self, k: usize, l: usize, q: &BigInt) {
        let hl = self.h[l].clone();
        for (x, y) in self.h[k].iter_mut().zip(&hl) {
            *x -= q * y;
        }
        for j in 1..=self.n {
            let t = q * &self.gram[l][j];
            self.gram[k][j] -= t;
        }
        for i in 1..=self.n {
            let t = q * &self.gram[i][l];
            self.gram[i][k] -= t;
        }
    }

    fn swapi(&mut self, k: usize, kmax: usize) {
        self.h.swap(k, k - 1);
        self.gram.swap(k, k - 1);
        for row in self.gram.iter_mut() {
            row.swap(k, k - 1);
        }
        for j in 1..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = t;
        }
        let lam = self.lam[k][k - 1].clone();
        let b = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&b * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = b;
    }

    fn gso_row(&mut self, k: usize) {
        for j in 1..=k {
            let mut u = self.gram[k][j].clone();
            for i in 1..j {
                u = (&self.d[i] * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i - 1];
            }
            if j < k {
                self.lam[k][j] = u;
            } else {
                self.d[k] = u;
            }
        }
    }

    fn lovasz_fails(&self, k: usize) -> bool {
        let lhs = &self.d[k] * &self.d[k - 2] * DELTA_DEN;
        let rhs = &self.d[k - 1] * &self.d[k - 1] * DELTA_NUM - &self.lam[k][k - 1] * &self.lam[k][k - 1] * DELTA_DEN;
        lhs < rhs
    }
}

/// LLL-reduce the lattice with positive definite Gram matrix `q`.
pub(crate) fn lll(q: &IntMatrix) -> Reduced {
    let n = q.len();
    let mut gram = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            gram[i + 1][j + 1] = q[i][j].clone();
        }
    }
    let mut h = vec![vec![BigInt::zero(); n]; n + 1];
    for (i, row) in h.iter_mut().enumerate().skip(1) {
        row[i - 1] = BigInt::one();
    }
    let mut st = State {
        n,
        gram,
        h,
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
    };

    if n > 1 {
        st.d[0] = BigInt::one();
        st.d[1] = st.gram[1][1].clone();
        let mut k = 2;
        let mut kmax = 1;
        while k <= n {
            if k > kmax {
                kmax = k;
                st.gso_row(k);
            }
            loop {
                st.redi(k, k - 1);
                if st.lovasz_fails(k) {
                    st.swapi(k, kmax);
                    k = (k - 1).max(2);
                } else {
                    for l in (1..k - 1).rev() {
                        st.redi(k, l);
                    }
                    k += 1;
                    break;
                }
            }
        }
    }

    Reduced {
        transform: st.h.into_iter().skip(1).collect(),
        gram: st.gram.into_iter().skip(1).map(|r| r.into_iter().skip(1).collect()).collect(),
    }
}
