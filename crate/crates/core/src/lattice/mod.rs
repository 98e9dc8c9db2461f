//! Integral lattices given by Gram matrices, and the lattice d-invariant
//!
//! `d(L) = max { (⟨χ,χ⟩ + rank L) / 4 : χ ∈ Char(L) }`
//!
//! of a unimodular negative-definite lattice, computed exactly: the problem is
//! a closest-vector search in the coset `χ₀ + 2L`, solved by branch and bound
//! on an LDLᵀ factorization of the positive form `−G` with rational
//! arithmetic throughout. Before the search the lattice is LLL-reduced and
//! every orthogonal summand `⟨−1⟩` is split off, which leaves only small
//! blocks for the enumeration.

mod enumerate;
mod exact;
mod lll;
mod reduce;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use enumerate::{minimize_coset, Levels};
use exact::{determinant, is_positive_definite, solve_mod2, to_big, IntMatrix};

/// Symmetric integer matrix of an integral lattice, with one label per basis
/// vector (for plumbing lattices, the vertex ids).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GramLattice {
    rows: Vec<Vec<i64>>,
    labels: Vec<usize>,
}

impl TryFrom<Vec<Vec<i64>>> for GramLattice {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        GramLattice::new(rows)
    }
}

impl From<GramLattice> for Vec<Vec<i64>> {
    fn from(l: GramLattice) -> Self {
        l.rows
    }
}

impl GramLattice {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (0..rows.len()).collect();
        Self::with_labels(rows, labels)
    }

    pub fn with_labels(rows: Vec<Vec<i64>>, labels: Vec<usize>) -> Result<Self> {
        let n = rows.len();
        if labels.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(GramLattice { rows, labels })
    }

    /// `diag(−1,…,−1)`.
    pub fn minus_identity(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { -1 } else { 0 }).collect())
            .collect();
        GramLattice::new(rows).expect("square")
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i128 {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let gy: i128 = (0..n).map(|j| self.rows[i][j] as i128 * y[j] as i128).sum();
                x[i] as i128 * gy
            })
            .sum()
    }

    pub fn norm(&self, x: &[i64]) -> i128 {
        self.inner(x, x)
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&to_big(&self.rows))
    }

    pub fn is_negative_definite(&self) -> bool {
        is_positive_definite(&self.negated())
    }

    /// Negative definite and `|det| = 1`.
    pub fn validate(&self) -> Result<()> {
        if !self.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        let det = self.determinant();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(())
    }

    /// `U·G·Uᵀ`.
    pub fn transformed(&self, u: &[Vec<i64>]) -> Result<GramLattice> {
        let g = exact::congruence(&to_big(u), &to_big(&self.rows));
        let rows = g
            .iter()
            .map(|r| r.iter().map(|v| v.to_i64().ok_or(Error::Overflow("Gram entry"))).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        GramLattice::new(rows)
    }

    fn negated(&self) -> IntMatrix {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(-v)).collect())
            .collect()
    }

    /// `(Gx)ⱼ ≡ Gⱼⱼ (mod 2)` for all `j`.
    pub fn is_characteristic(&self, x: &[i64]) -> bool {
        let n = self.rank();
        x.len() == n
            && (0..n).all(|j| {
                let gx: i128 = (0..n).map(|k| self.rows[j][k] as i128 * x[k] as i128).sum();
                (gx - self.rows[j][j] as i128).rem_euclid(2) == 0
            })
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(&self.rows).map_err(|_| fmt::Error)?)
    }
}

/// Block-diagonal sum `L₁ ⊕ L₂`.
pub fn direct_sum(a: &GramLattice, b: &GramLattice) -> GramLattice {
    let (n, m) = (a.rank(), b.rank());
    let mut rows = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        rows[i][..n].copy_from_slice(&a.rows[i]);
    }
    for i in 0..m {
        rows[n + i][n..].copy_from_slice(&b.rows[i]);
    }
    GramLattice::new(rows).expect("block diagonal of symmetric matrices")
}

/// A characteristic vector, in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CharVector(pub Vec<i64>);

/// An even integer d-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DValue(i64);

impl DValue {
    pub fn new(value: i64) -> Result<Self> {
        if value.rem_euclid(2) != 0 {
            return Err(Error::OddD(value));
        }
        Ok(DValue(value))
    }

    pub const ZERO: DValue = DValue(0);

    pub fn get(self) -> i64 {
        self.0
    }
}

impl std::ops::Neg for DValue {
    type Output = DValue;
    fn neg(self) -> DValue {
        DValue(-self.0)
    }
}

impl std::ops::Add for DValue {
    type Output = DValue;
    fn add(self, rhs: DValue) -> DValue {
        DValue(self.0 + rhs.0)
    }
}

impl fmt::Display for DValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The `{0,1}` characteristic vector of a plumbing basis and `μ̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WuClass {
    pub coordinates: Vec<i64>,
    pub mu_bar: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Enumeration nodes visited, including the splitting searches.
    pub nodes: u64,
    /// Number of `⟨−1⟩` summands split off.
    pub unit_summands: usize,
    /// Ranks of the blocks left for branch and bound.
    pub block_ranks: Vec<usize>,
}

/// A characteristic vector of maximal square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxChar {
    pub vector: CharVector,
    /// `⟨χ,χ⟩`, non-positive.
    pub norm: i64,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Split off `⟨−1⟩` summands and orthogonal blocks before enumerating.
    pub split: bool,
    /// Worker threads for the enumeration; `None` uses the rayon pool size.
    pub threads: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            split: true,
            threads: None,
        }
    }
}

impl SearchOptions {
    /// Plain branch and bound over the whole lattice in its given basis.
    pub fn unsplit() -> Self {
        SearchOptions {
            split: false,
            threads: Some(1),
        }
    }

    fn thread_count(&self) -> usize {
        self.threads.unwrap_or_else(rayon::current_num_threads).max(1)
    }
}

fn char_rep_of(rows: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rhs: Vec<bool> = (0..rows.len()).map(|j| rows[j][j].rem_euclid(2) == 1).collect();
    let x = solve_mod2(rows, &rhs).ok_or(Error::Singular)?;
    Ok(x.into_iter().map(i64::from).collect())
}

/// The characteristic vector with coordinates in `{0,1}`; `Char(L)` is
/// this vector plus `2L`.
pub fn characteristic_rep(lattice: &GramLattice) -> Result<CharVector> {
    char_rep_of(&lattice.rows).map(CharVector)
}

/// Maximize `⟨χ,χ⟩` over `Char(L)` for a negative definite lattice.
pub fn max_norm_char(lattice: &GramLattice) -> Result<MaxChar> {
    max_norm_char_with(lattice, &SearchOptions::default())
}

pub fn max_norm_char_with(lattice: &GramLattice, options: &SearchOptions) -> Result<MaxChar> {
    let n = lattice.rank();
    if n == 0 {
        return Ok(MaxChar {
            vector: CharVector(Vec::new()),
            norm: 0,
            stats: SearchStats::default(),
        });
    }
    if !lattice.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let chi0 = characteristic_rep(lattice)?;
    let q = lattice.negated();
    let threads = options.thread_count();
    let mut stats = SearchStats::default();

    let mut chi = vec![BigInt::from(0); n];
    let mut total: i64 = 0;

    let blocks = if options.split {
        let dec = reduce::decompose(&q)?;
        stats.nodes += dec.nodes;
        stats.unit_summands = dec.units.len();
        for v in &dec.units {
            for (c, x) in chi.iter_mut().zip(v) {
                *c += x;
            }
        }
        total += dec.units.len() as i64;
        dec.blocks
    } else {
        let identity = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect();
        vec![reduce::Block { basis: identity, gram: q }]
    };

    for block in &blocks {
        let k = block.gram.len();
        stats.block_ranks.push(k);
        let gram_i64: Vec<Vec<i64>> = block.gram.iter().map(|r| reduce::to_i64(r)).collect::<Result<_>>()?;
        let start = if options.split {
            char_rep_of(&gram_i64)?
        } else {
            chi0.0.clone()
        };
        let start_value: i128 = (0..k)
            .map(|i| (0..k).map(|j| gram_i64[i][j] as i128 * start[i] as i128 * start[j] as i128).sum::<i128>())
            .sum();
        let start_value = i64::try_from(start_value).map_err(|_| Error::Overflow("incumbent norm"))?;
        let levels = Levels::new(&block.gram);
        let parity: Vec<i64> = start.iter().map(|x| x.rem_euclid(2)).collect();
        let min = minimize_coset(&levels, &parity, &start, start_value, threads)?;
        stats.nodes += min.nodes;
        total += min.value;
        for (i, &xi) in min.x.iter().enumerate() {
            for (c, b) in chi.iter_mut().zip(&block.basis[i]) {
                *c += b * xi;
            }
        }
    }

    let vector = reduce::to_i64(&chi)?;
    if !lattice.is_characteristic(&vector) || lattice.norm(&vector) != -(total as i128) {
        return Err(Error::Internal("assembled maximizer fails verification".into()));
    }
    Ok(MaxChar {
        vector: CharVector(vector),
        norm: -total,
        stats,
    })
}

/// `(⟨χ*,χ*⟩ + rank) / 4` for a unimodular negative definite lattice.
pub fn d_invariant(lattice: &GramLattice) -> Result<DValue> {
    d_invariant_with(lattice, &SearchOptions::default()).map(|(d, _)| d)
}

pub fn d_invariant_with(lattice: &GramLattice, options: &SearchOptions) -> Result<(DValue, MaxChar)> {
    lattice.validate()?;
    let best = max_norm_char_with(lattice, options)?;
    let numerator = best.norm + lattice.rank() as i64;
    if numerator.rem_euclid(8) != 0 {
        return Err(Error::ParityViolation(format!("{numerator}/4")));
    }
    Ok((DValue(numerator / 4), best))
}

/// Wu class of a plumbing basis and `μ̄ = (sign − ⟨w,w⟩)/8` with
/// `sign = −rank`.
pub fn wu_mu_bar(lattice: &GramLattice) -> Result<WuClass> {
    let w = characteristic_rep(lattice)?.0;
    let numerator = -(lattice.rank() as i128) - lattice.norm(&w);
    if numerator.rem_euclid(8) != 0 {
        return Err(Error::NonIntegerMuBar(format!("{numerator}/8")));
    }
    let mu_bar = i64::try_from(numerator / 8).map_err(|_| Error::Overflow("mu-bar"))?;
    Ok(WuClass {
        coordinates: w,
        mu_bar,
    })
}
