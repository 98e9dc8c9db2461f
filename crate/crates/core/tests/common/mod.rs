//! Generators and naive oracles shared by the integration tests and the
//! acceptance suite. Nothing here uses the search code under test.
#![allow(dead_code)]

use num_integer::Integer;
use rand::Rng;
use splice_d::lattice::GramLattice;
use splice_d::plumbing::seifert_lattice;
use splice_d::seifert::SeifertData;

pub fn pairwise_coprime(a: &[u64]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, x)| a[i + 1..].iter().all(|y| x.gcd(y) == 1))
}

/// Nudge each entry upward (wrapping inside `[2, max]`) until it is coprime
/// to all earlier ones.
pub fn make_coprime(raw: &[u64], max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(raw.len());
    for &x in raw {
        let mut v = 2 + (x.max(2) - 2) % (max - 1);
        let mut tries = 0;
        while out.iter().any(|&y| y.gcd(&v) != 1) {
            v = if v >= max { 2 } else { v + 1 };
            tries += 1;
            if tries > max {
                // every value in range shares a factor; fall back to 1
                v = 1;
                break;
            }
        }
        out.push(v);
    }
    out
}

pub fn random_coprime<R: Rng>(rng: &mut R, len: usize, max: u64) -> Vec<u64> {
    loop {
        let a: Vec<u64> = (0..len).map(|_| rng.gen_range(2..=max)).collect();
        if pairwise_coprime(&a) {
            return a;
        }
    }
}

pub fn lattice_of(a: &[u64]) -> GramLattice {
    seifert_lattice(&SeifertData::positive(a).unwrap()).unwrap()
}

/// Plumbing lattices of Seifert triples and quadruples, with rank in `[lo, hi]`.
pub fn random_plumbing_lattice<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> (Vec<u64>, GramLattice) {
    loop {
        let len = rng.gen_range(3..=4);
        let a = random_coprime(rng, len, 13);
        let l = lattice_of(&a);
        if (lo..=hi).contains(&l.rank()) {
            return (a, l);
        }
    }
}

/// Maximum of `xᵀGx` over all `x ≡ parity (mod 2)` with `|xᵢ| ≤ bound`, by
/// exhaustive enumeration.
pub fn brute_max_char_norm(g: &[Vec<i64>], parity: &[i64], bound: i64) -> i64 {
    let n = g.len();
    if n == 0 {
        return 0;
    }
    let values: Vec<Vec<i64>> = parity
        .iter()
        .map(|&p| (-bound..=bound).filter(|v| (v - p).rem_euclid(2) == 0).collect())
        .collect();
    let mut idx = vec![0usize; n];
    let mut best = i64::MIN;
    loop {
        let x: Vec<i64> = (0..n).map(|i| values[i][idx[i]]).collect();
        let mut norm = 0i64;
        for i in 0..n {
            let mut s = 0;
            for j in 0..n {
                s += g[i][j] * x[j];
            }
            norm += x[i] * s;
        }
        best = best.max(norm);
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            idx[k] += 1;
            if idx[k] < values[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Characteristic parity class by brute force over `{0,1}ⁿ`.
pub fn brute_char_parity(g: &[Vec<i64>]) -> Vec<i64> {
    let n = g.len();
    for mask in 0u32..(1 << n) {
        let x: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
        let ok = (0..n).all(|j| {
            let gx: i64 = (0..n).map(|k| g[j][k] * x[k]).sum();
            (gx - g[j][j]).rem_euclid(2) == 0
        });
        if ok {
            return x;
        }
    }
    panic!("no characteristic vector");
}

/// Random unimodular matrix as a product of elementary row operations and
/// sign changes.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = [-1i64, 1][rng.gen_range(0..2)];
        let rj = u[j].clone();
        for (a, b) in u[i].iter_mut().zip(&rj) {
            *a += c * b;
        }
        if rng.gen_bool(0.1) {
            u[i].iter_mut().for_each(|a| *a = -*a);
        }
    }
    u
}

pub fn elapsed_ms(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}
