//! Exact orthogonal splitting of a positive definite unimodular lattice.
//!
//! Every vector `v` with `v·v = 1` spans an orthogonal summand, `L = ℤv ⊕ v^⊥`,
//! and contributes exactly one unit to the minimal characteristic norm. These
//! summands are split off one at a time (after LLL reduction, which makes
//! them cheap to find), and what remains is cut into connected blocks of its
//! Gram matrix. All basis changes are integral and invertible.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::enumerate::{short_vector, Levels};
use super::exact::{congruence, mat_mul, row_basis, IntMatrix};
use super::lll::lll;
use crate::error::{Error, Result};

/// An orthogonal summand: rows of `basis` are vectors in the input
/// coordinates, `gram` is their Gram matrix.
pub(crate) struct Block {
    pub basis: IntMatrix,
    pub gram: IntMatrix,
}

pub(crate) struct Decomposition {
    /// Vectors of norm 1, in input coordinates.
    pub units: Vec<Vec<BigInt>>,
    pub blocks: Vec<Block>,
    pub nodes: u64,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn find_unit(gram: &IntMatrix) -> Result<(Option<Vec<BigInt>>, u64)> {
    let n = gram.len();
    if let Some(i) = (0..n).find(|&i| gram[i][i].is_one()) {
        let mut c = vec![BigInt::zero(); n];
        c[i] = BigInt::one();
        return Ok((Some(c), 0));
    }
    let levels = Levels::new(gram);
    let (v, nodes) = short_vector(&levels, 1)?;
    Ok((v.map(|x| x.into_iter().map(BigInt::from).collect()), nodes))
}

/// Split `q` (positive definite, unimodular) into norm-1 vectors and blocks.
pub(crate) fn decompose(q: &IntMatrix) -> Result<Decomposition> {
    let n = q.len();
    let mut basis = identity(n);
    let mut gram = q.clone();
    let mut units = Vec::new();
    let mut nodes = 0;

    while !gram.is_empty() {
        let red = lll(&gram);
        basis = mat_mul(&red.transform, &basis);
        gram = red.gram;

        let (unit, visited) = find_unit(&gram)?;
        nodes += visited;
        let Some(c) = unit else { break };

        // projections e_i − (e_i·v)·v span v^⊥
        let qc: Vec<BigInt> = gram.iter().map(|row| row.iter().zip(&c).map(|(a, b)| a * b).sum()).collect();
        let gens: IntMatrix = (0..gram.len())
            .map(|i| {
                c.iter()
                    .enumerate()
                    .map(|(j, cj)| {
                        let e = if i == j { BigInt::one() } else { BigInt::zero() };
                        e - &qc[i] * cj
                    })
                    .collect()
            })
            .collect();
        let perp = row_basis(gens);
        if perp.len() + 1 != gram.len() {
            return Err(Error::Internal("orthogonal complement has wrong rank".into()));
        }
        let v: Vec<BigInt> = (0..n).map(|k| c.iter().zip(&basis).map(|(ci, row)| ci * &row[k]).sum()).collect();
        units.push(v);
        gram = congruence(&perp, &gram);
        basis = mat_mul(&perp, &basis);
    }

    let blocks = components(&gram)
        .into_iter()
        .map(|idx| Block {
            basis: idx.iter().map(|&i| basis[i].clone()).collect(),
            gram: idx.iter().map(|&i| idx.iter().map(|&j| gram[i][j].clone()).collect()).collect(),
        })
        .collect();
    Ok(Decomposition { units, blocks, nodes })
}

/// Connected components of the graph with an edge wherever `gram[i][j] ≠ 0`.
fn components(gram: &IntMatrix) -> Vec<Vec<usize>> {
    let n = gram.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for w in 0..n {
                if !seen[w] && !gram[u][w].is_zero() {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub(crate) fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow("lattice coordinates")))
        .collect()
}
