//! Depth-first enumeration of lattice points (or points of a coset
//! `p + 2ℤⁿ`) inside an ellipsoid `xᵀQx < bound`, in exact arithmetic.
//!
//! With `Q = L·D·Lᵀ` the form splits as `Σₜ Dₜ·(xₜ − cₜ)²`, where the center
//! `cₜ` depends only on the coordinates above level `t`. Levels are visited
//! from the top down; at each level candidates are taken in order of
//! increasing contribution, alternating around the center, and a side stops as
//! soon as its contribution no longer fits under the bound.

use std::sync::atomic::{AtomicI64, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::exact::{pivoted_ldl, IntMatrix};
use crate::error::{Error, Result};

/// Parallel search is only worth its setup cost above this rank.
const PARALLEL_MIN_RANK: usize = 12;

/// Per-level data of the factored form.
pub(crate) struct Levels {
    n: usize,
    /// `order[t]` is the variable handled at level `t`.
    order: Vec<usize>,
    den: Vec<BigInt>,
    /// Level `t`: `(s, a)` with `s > t` and `a = L[s][t]·den[t]`.
    coef: Vec<Vec<(usize, BigInt)>>,
    /// `D[t] / den[t]²`
    weight: Vec<BigRational>,
}

impl Levels {
    pub(crate) fn new(q: &IntMatrix) -> Levels {
        let n = q.len();
        let f = pivoted_ldl(q);
        let mut den = Vec::with_capacity(n);
        let mut coef = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for t in 0..n {
            let dt = (t + 1..n).fold(BigInt::one(), |acc, s| acc.lcm(f.lower[s][t].denom()));
            let c: Vec<(usize, BigInt)> = (t + 1..n)
                .filter(|&s| !f.lower[s][t].is_zero())
                .map(|s| {
                    let a = &f.lower[s][t] * BigRational::from_integer(dt.clone());
                    (s, a.to_integer())
                })
                .collect();
            weight.push(&f.diag[t] / BigRational::from_integer(&dt * &dt));
            den.push(dt);
            coef.push(c);
        }
        Levels {
            n,
            order: f.order,
            den,
            coef,
            weight,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.n
    }

    /// Rearrange a vector given per variable into per-level order.
    pub(crate) fn to_levels(&self, x: &[i64]) -> Vec<i64> {
        self.order.iter().map(|&v| x[v]).collect()
    }

    /// Rearrange a per-level vector into per-variable order.
    pub(crate) fn to_variables(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for (t, &v) in self.order.iter().enumerate() {
            out[v] = x[t];
        }
        out
    }
}

/// Controls the bound and receives leaves.
trait Visitor {
    /// `(bound, inclusive)`: admit points with value `< bound`, or `≤ bound`.
    fn bound(&self) -> (i64, bool);
    /// Returns `true` to stop the whole search.
    fn leaf(&mut self, x: &[i64], value: i64) -> bool;
}

struct Walker<'a> {
    levels: &'a Levels,
    /// Required parity of each level, or `None` for the full lattice.
    parity: Option<&'a [i64]>,
    nodes: u64,
    bad_leaf: bool,
}

fn round_div(num: &BigInt, den: &BigInt) -> i64 {
    let two = BigInt::from(2);
    (num * &two + den)
        .div_floor(&(den * &two))
        .to_i64()
        .expect("enumeration center out of range")
}

impl<'a> Walker<'a> {
    fn new(levels: &'a Levels, parity: Option<&'a [i64]>) -> Self {
        Walker {
            levels,
            parity,
            nodes: 0,
            bad_leaf: false,
        }
    }

    /// Candidates at level `t` given the coordinates above it:
    /// `x = p + step·k`, and the contribution of each `k`.
    fn level_setup(&self, t: usize, x: &[i64]) -> (i64, i64, BigInt, i64) {
        let lv = self.levels;
        let s: BigInt = lv.coef[t].iter().map(|(j, a)| a * x[*j]).sum();
        let (p, step) = match self.parity {
            Some(par) => (par[t], 2),
            None => (0, 1),
        };
        // center of k: (−s − p·den) / (step·den)
        let num = -&s - BigInt::from(p) * &lv.den[t];
        let den = &lv.den[t] * step;
        let k0 = round_div(&num, &den);
        (p, step, s, k0)
    }

    fn term(&self, t: usize, value: i64, s: &BigInt) -> BigRational {
        let y = BigInt::from(value) * &self.levels.den[t] + s;
        &self.levels.weight[t] * BigRational::from_integer(&y * &y)
    }

    /// Explore the subtree with `rem` unassigned levels below the fixed ones.
    fn descend<V: Visitor>(&mut self, rem: usize, partial: &BigRational, x: &mut [i64], v: &mut V) -> bool {
        self.nodes += 1;
        if rem == 0 {
            if !partial.is_integer() {
                self.bad_leaf = true;
                return true;
            }
            let value = partial.to_integer().to_i64().expect("norm out of range");
            return v.leaf(x, value);
        }
        let t = rem - 1;
        let (p, step, s, k0) = self.level_setup(t, x);
        let mut up = (k0, self.term(t, p + step * k0, &s));
        let mut down = (k0 - 1, self.term(t, p + step * (k0 - 1), &s));
        let (mut up_open, mut down_open) = (true, true);
        loop {
            let (bound, inclusive) = v.bound();
            let limit = BigRational::from_integer(bound.into()) - partial;
            let fits = |term: &BigRational| if inclusive { *term <= limit } else { *term < limit };
            up_open &= fits(&up.1);
            down_open &= fits(&down.1);
            let take_up = match (up_open, down_open) {
                (false, false) => return false,
                (true, false) => true,
                (false, true) => false,
                (true, true) => up.1 <= down.1,
            };
            let (k, term) = if take_up {
                let next = (up.0 + 1, self.term(t, p + step * (up.0 + 1), &s));
                std::mem::replace(&mut up, next)
            } else {
                let next = (down.0 - 1, self.term(t, p + step * (down.0 - 1), &s));
                std::mem::replace(&mut down, next)
            };
            x[t] = p + step * k;
            let next_partial = partial + term;
            if self.descend(t, &next_partial, x, v) {
                return true;
            }
        }
    }

    /// Children of a node, each as `(x, partial)` with level `rem − 1` set.
    fn children(&mut self, rem: usize, partial: &BigRational, x: &[i64], bound: i64) -> Vec<(Vec<i64>, BigRational)> {
        let t = rem - 1;
        let (p, step, s, k0) = self.level_setup(t, x);
        let limit = BigRational::from_integer(bound.into()) - partial;
        let mut out = Vec::new();
        for dir in [1i64, -1] {
            let mut k = if dir == 1 { k0 } else { k0 - 1 };
            loop {
                let term = self.term(t, p + step * k, &s);
                if term >= limit {
                    break;
                }
                let mut y = x.to_vec();
                y[t] = p + step * k;
                out.push((y, partial + term));
                k += dir;
            }
        }
        out
    }
}

/// Result of a minimization.
pub(crate) struct Minimum {
    /// Per-variable coordinates of the minimizer.
    pub x: Vec<i64>,
    pub value: i64,
    pub nodes: u64,
}

struct Incumbent {
    best: i64,
    witness: Vec<i64>,
}

impl Visitor for Incumbent {
    fn bound(&self) -> (i64, bool) {
        (self.best, false)
    }
    fn leaf(&mut self, x: &[i64], value: i64) -> bool {
        if value < self.best {
            self.best = value;
            self.witness = x.to_vec();
        }
        false
    }
}

struct SharedIncumbent<'a> {
    best: &'a AtomicI64,
}

impl Visitor for SharedIncumbent<'_> {
    fn bound(&self) -> (i64, bool) {
        (self.best.load(Ordering::Relaxed), false)
    }
    fn leaf(&mut self, _: &[i64], value: i64) -> bool {
        self.best.fetch_min(value, Ordering::Relaxed);
        false
    }
}

/// First point in search order with value `≤ target`, skipping the origin
/// when `skip_zero` is set.
struct FirstAtMost {
    target: i64,
    skip_zero: bool,
    found: Option<(Vec<i64>, i64)>,
}

impl Visitor for FirstAtMost {
    fn bound(&self) -> (i64, bool) {
        (self.target, true)
    }
    fn leaf(&mut self, x: &[i64], value: i64) -> bool {
        if self.skip_zero && x.iter().all(|&c| c == 0) {
            return false;
        }
        self.found = Some((x.to_vec(), value));
        true
    }
}

fn leaf_error() -> Error {
    Error::Internal("enumeration reached a non-integral norm".into())
}

/// Minimize `xᵀQx` over the coset `x ≡ parity (mod 2)`, starting from an
/// incumbent in that coset.
///
/// The minimizer returned is the incumbent itself if nothing beats it, and
/// otherwise the first minimizer in depth-first order; both are independent
/// of the thread count.
pub(crate) fn minimize_coset(
    levels: &Levels,
    parity: &[i64],
    incumbent: &[i64],
    incumbent_value: i64,
    threads: usize,
) -> Result<Minimum> {
    let n = levels.rank();
    let parity_lv = levels.to_levels(parity);
    if threads > 1 && n >= PARALLEL_MIN_RANK {
        return minimize_parallel(levels, &parity_lv, incumbent, incumbent_value, threads);
    }
    let mut walker = Walker::new(levels, Some(&parity_lv));
    let mut v = Incumbent {
        best: incumbent_value,
        witness: levels.to_levels(incumbent),
    };
    let mut x = vec![0i64; n];
    walker.descend(n, &BigRational::zero(), &mut x, &mut v);
    if walker.bad_leaf {
        return Err(leaf_error());
    }
    Ok(Minimum {
        x: levels.to_variables(&v.witness),
        value: v.best,
        nodes: walker.nodes,
    })
}

fn minimize_parallel(
    levels: &Levels,
    parity_lv: &[i64],
    incumbent: &[i64],
    incumbent_value: i64,
    threads: usize,
) -> Result<Minimum> {
    let n = levels.rank();
    let target = 8 * threads;

    // breadth-first frontier over the top levels
    let mut walker = Walker::new(levels, Some(parity_lv));
    let mut frontier: Vec<(Vec<i64>, BigRational)> = vec![(vec![0; n], BigRational::zero())];
    let mut rem = n;
    while rem > 1 && !frontier.is_empty() && frontier.len() < target {
        let mut next = Vec::new();
        for (x, partial) in &frontier {
            walker.nodes += 1;
            next.extend(walker.children(rem, partial, x, incumbent_value));
        }
        frontier = next;
        rem -= 1;
    }

    let best = AtomicI64::new(incumbent_value);
    let nodes = AtomicU64::new(walker.nodes);
    let bad = frontier
        .into_par_iter()
        .map(|(mut x, partial)| {
            let mut w = Walker::new(levels, Some(parity_lv));
            let mut v = SharedIncumbent { best: &best };
            w.descend(rem, &partial, &mut x, &mut v);
            nodes.fetch_add(w.nodes, Ordering::Relaxed);
            w.bad_leaf
        })
        .reduce(|| false, |a, b| a || b);
    if bad {
        return Err(leaf_error());
    }
    let value = best.load(Ordering::Relaxed);
    let mut total = nodes.load(Ordering::Relaxed);

    if value == incumbent_value {
        return Ok(Minimum {
            x: incumbent.to_vec(),
            value,
            nodes: total,
        });
    }

    // deterministic witness: first minimizer in sequential search order
    let mut w = Walker::new(levels, Some(parity_lv));
    let mut v = FirstAtMost {
        target: value,
        skip_zero: false,
        found: None,
    };
    let mut x = vec![0i64; n];
    w.descend(n, &BigRational::zero(), &mut x, &mut v);
    total += w.nodes;
    if w.bad_leaf {
        return Err(leaf_error());
    }
    let (x, found) = v
        .found
        .ok_or_else(|| Error::Internal("parallel minimum has no witness".into()))?;
    if found != value {
        return Err(Error::Internal("witness value differs from minimum".into()));
    }
    Ok(Minimum {
        x: levels.to_variables(&x),
        value,
        nodes: total,
    })
}

/// Some nonzero lattice vector with `xᵀQx ≤ bound`, with the node count.
pub(crate) fn short_vector(levels: &Levels, bound: i64) -> Result<(Option<Vec<i64>>, u64)> {
    let n = levels.rank();
    let mut walker = Walker::new(levels, None);
    let mut v = FirstAtMost {
        target: bound,
        skip_zero: true,
        found: None,
    };
    let mut x = vec![0i64; n];
    walker.descend(n, &BigRational::zero(), &mut x, &mut v);
    if walker.bad_leaf {
        return Err(leaf_error());
    }
    Ok((v.found.map(|(x, _)| levels.to_variables(&x)), walker.nodes))
}
