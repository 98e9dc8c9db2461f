//! Seifert fibered homology spheres `±Σ(a₁,…,aₙ)` and the fiber calculus on
//! their multiplicities: normalization of the Seifert invariants,
//! stabilization, and pinch decomposition into a splice of two pieces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// The orientation bounding the negative-definite star-shaped plumbing.
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Pairwise coprime multiplicities together with an orientation.
///
/// The stored order is the order the caller gave; fiber indices refer to it.
/// Equality compares canonical forms (ascending, multiplicities equal to 1
/// dropped) and orientations.
#[derive(Debug, Clone)]
pub struct SeifertData {
    multiplicities: Vec<u64>,
    orientation: Orientation,
}

impl SeifertData {
    pub fn new(multiplicities: Vec<u64>, orientation: Orientation) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::EmptyData);
        }
        if multiplicities.contains(&0) {
            return Err(Error::ZeroMultiplicity);
        }
        for (i, &a) in multiplicities.iter().enumerate() {
            for &b in &multiplicities[i + 1..] {
                if a.gcd(&b) != 1 {
                    return Err(Error::NotCoprime(a, b));
                }
            }
        }
        Ok(SeifertData {
            multiplicities,
            orientation,
        })
    }

    /// Positively oriented `Σ(a)`.
    pub fn positive(a: &[u64]) -> Result<Self> {
        Self::new(a.to_vec(), Orientation::Positive)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn reversed(&self) -> Self {
        SeifertData {
            multiplicities: self.multiplicities.clone(),
            orientation: self.orientation.reversed(),
        }
    }

    /// Same multiplicities with positive orientation.
    pub fn positive_part(&self) -> Self {
        SeifertData {
            multiplicities: self.multiplicities.clone(),
            orientation: Orientation::Positive,
        }
    }

    pub fn canonical(&self) -> Vec<u64> {
        let mut a: Vec<u64> = self.multiplicities.iter().copied().filter(|&x| x > 1).collect();
        a.sort_unstable();
        a
    }

    pub fn singular_fiber_count(&self) -> usize {
        self.multiplicities.iter().filter(|&&x| x > 1).count()
    }

    /// Fewer than three singular fibers: the manifold is S³.
    pub fn is_sphere(&self) -> bool {
        self.singular_fiber_count() < 3
    }

    /// Product of all multiplicities except the one at `index`.
    pub fn complement_product(&self, index: usize) -> Result<u64> {
        self.check_index(index)?;
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != index)
            .try_fold(1u64, |acc, (_, &a)| acc.checked_mul(a))
            .ok_or(Error::Overflow("product of multiplicities"))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.multiplicities.len() {
            Ok(())
        } else {
            Err(Error::BadIndex {
                index,
                len: self.multiplicities.len(),
            })
        }
    }

    /// Copy with the multiplicity at `index` replaced. Coprimality is
    /// rechecked.
    pub(crate) fn with_multiplicity(&self, index: usize, value: u64) -> Result<Self> {
        self.check_index(index)?;
        let mut a = self.multiplicities.clone();
        a[index] = value;
        Self::new(a, self.orientation)
    }
}

impl PartialEq for SeifertData {
    fn eq(&self, other: &Self) -> bool {
        self.orientation == other.orientation && self.canonical() == other.canonical()
    }
}

impl Eq for SeifertData {}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientation == Orientation::Negative {
            f.write_str("-")?;
        }
        let canon = self.canonical();
        if canon.is_empty() {
            return f.write_str("sigma(1)");
        }
        let parts: Vec<String> = canon.iter().map(u64::to_string).collect();
        write!(f, "sigma({})", parts.join(","))
    }
}

/// Reference to a singular fiber, by position or by its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberRef {
    Index(usize),
    Order(u64),
}

impl FiberRef {
    pub fn resolve(self, data: &SeifertData) -> Result<usize> {
        match self {
            FiberRef::Index(i) => {
                data.check_index(i)?;
                Ok(i)
            }
            FiberRef::Order(r) => {
                // order 1 is a regular fiber and cannot be named by order
                if r <= 1 {
                    return Err(Error::NoSuchFiber(r));
                }
                let mut hits = data.multiplicities.iter().enumerate().filter(|&(_, &a)| a == r);
                match (hits.next(), hits.next()) {
                    (Some((i, _)), None) => Ok(i),
                    (Some(_), Some(_)) => Err(Error::AmbiguousFiber(r)),
                    (None, _) => Err(Error::NoSuchFiber(r)),
                }
            }
        }
    }
}

/// A Seifert homology sphere with one marked fiber, the knot used for
/// surgery and splicing. Equality compares the data and the fiber order.
#[derive(Debug, Clone)]
pub struct MarkedSeifert {
    pub data: SeifertData,
    pub fiber: usize,
}

impl MarkedSeifert {
    pub fn new(data: SeifertData, fiber: FiberRef) -> Result<Self> {
        let fiber = fiber.resolve(&data)?;
        Ok(MarkedSeifert { data, fiber })
    }

    pub fn order(&self) -> u64 {
        self.data.multiplicities[self.fiber]
    }

    pub fn fiber_ref(&self) -> FiberRef {
        FiberRef::Index(self.fiber)
    }
}

impl PartialEq for MarkedSeifert {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && self.order() == other.order()
    }
}

impl Eq for MarkedSeifert {}

impl fmt::Display for MarkedSeifert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.data, self.order())
    }
}

/// Normalized Seifert invariants `(e, b)` with `0 ≤ bⱼ < aⱼ` and
/// `a₁⋯aₙ·(Σ bⱼ/aⱼ − e) = −1`. `b` is aligned with the data's order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedSeifert {
    pub e: i64,
    pub b: Vec<u64>,
}

fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let (x, m) = (x as i128, m as i128);
    let g = x.extended_gcd(&m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m) as u64)
}

/// Solve for the normalized Seifert invariants.
///
/// Modulo `aⱼ` the defining equation reads `bⱼ·(P/aⱼ) ≡ −1`, which fixes each
/// `bⱼ` in `[0, aⱼ)`; `e` then follows by exact division. The defining identity
/// is rechecked in rational arithmetic before returning.
pub fn normalize(data: &SeifertData) -> Result<NormalizedSeifert> {
    let a = data.multiplicities();
    let mut b = Vec::with_capacity(a.len());
    for (j, &aj) in a.iter().enumerate() {
        if aj == 1 {
            b.push(0);
            continue;
        }
        let cofactor = a
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(1u128, |acc, (_, &ak)| acc * (ak % aj) as u128 % aj as u128) as u64;
        let inv = mod_inverse(cofactor, aj).ok_or(Error::Internal("cofactor not invertible".into()))?;
        b.push((aj - inv) % aj);
    }

    let product: BigInt = a.iter().map(|&x| BigInt::from(x)).product();
    let numerator: BigInt = a
        .iter()
        .zip(&b)
        .map(|(&aj, &bj)| BigInt::from(bj) * (&product / BigInt::from(aj)))
        .sum::<BigInt>()
        + BigInt::one();
    let (e, rem) = numerator.div_rem(&product);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("no integral Euler number for {data}")));
    }

    // P·(Σ bⱼ/aⱼ − e) = −1
    let sum: BigRational = a
        .iter()
        .zip(&b)
        .map(|(&aj, &bj)| BigRational::new(bj.into(), aj.into()))
        .sum();
    let check = BigRational::from_integer(product.clone()) * (sum - BigRational::from_integer(e.clone()));
    if check != BigRational::from_integer(-BigInt::one()) {
        return Err(Error::Internal(format!("normalization identity fails for {data}")));
    }
    let e = e.to_i64().ok_or(Error::Overflow("Euler number"))?;
    Ok(NormalizedSeifert { e, b })
}

/// `a_f ← a_f + Π_{j≠f} aⱼ`.
pub fn stabilize(data: &SeifertData, fiber: FiberRef) -> Result<SeifertData> {
    let f = fiber.resolve(data)?;
    let p = data.complement_product(f)?;
    let new = data.multiplicities[f]
        .checked_add(p)
        .ok_or(Error::Overflow("stabilization"))?;
    data.with_multiplicity(f, new)
}

/// `a_f ← a_f − Π_{j≠f} aⱼ`, defined only on stabilized fibers.
pub fn destabilize(data: &SeifertData, fiber: FiberRef) -> Result<SeifertData> {
    let f = fiber.resolve(data)?;
    let p = data.complement_product(f)?;
    let a = data.multiplicities[f];
    if a <= p {
        return Err(Error::NotStabilized {
            order: a,
            complement: p,
            side: None,
        });
    }
    data.with_multiplicity(f, a - p)
}

/// A fiber is stabilized when its order exceeds the product of the others.
pub fn is_stabilized(data: &SeifertData, fiber: FiberRef) -> Result<bool> {
    let f = fiber.resolve(data)?;
    Ok(data.multiplicities[f] > data.complement_product(f)?)
}

/// The two pieces of a pinch at position `k`; `Y` is their splice along the
/// marked fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pinch {
    /// `Σ(a₁,…,a_k, a_{k+1}⋯aₙ)` marked at the product fiber.
    pub first: MarkedSeifert,
    /// `Σ(a₁⋯a_k, a_{k+1},…,aₙ)` marked at the product fiber.
    pub second: MarkedSeifert,
}

pub fn pinch_decompose(data: &SeifertData, k: usize) -> Result<Pinch> {
    let a = data.multiplicities();
    let n = a.len();
    if n < 3 || k == 0 || k >= n {
        return Err(Error::BadIndex { index: k, len: n });
    }
    let head: u64 = a[..k]
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or(Error::Overflow("pinch product"))?;
    let tail: u64 = a[k..]
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or(Error::Overflow("pinch product"))?;

    let mut first = a[..k].to_vec();
    first.push(tail);
    let mut second = vec![head];
    second.extend_from_slice(&a[k..]);

    Ok(Pinch {
        first: MarkedSeifert {
            data: SeifertData::new(first, data.orientation())?,
            fiber: k,
        },
        second: MarkedSeifert {
            data: SeifertData::new(second, data.orientation())?,
            fiber: 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(a: &[u64]) -> SeifertData {
        SeifertData::positive(a).unwrap()
    }

    /// Direct search over `0 ≤ bⱼ < aⱼ`, kept independent of the modular solve.
    fn brute_normalize(a: &[u64]) -> (i64, Vec<u64>) {
        let p: i128 = a.iter().map(|&x| x as i128).product();
        let mut b = vec![0u64; a.len()];
        loop {
            let s: i128 = a.iter().zip(&b).map(|(&aj, &bj)| bj as i128 * (p / aj as i128)).sum();
            if (s + 1) % p == 0 {
                return (((s + 1) / p) as i64, b);
            }
            let mut i = 0;
            loop {
                b[i] += 1;
                if b[i] < a[i] {
                    break;
                }
                b[i] = 0;
                i += 1;
                assert!(i < a.len(), "no solution for {a:?}");
            }
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(brute_normalize(&[2, 3, 5]), (2, vec![1, 2, 4]));
        assert_eq!(brute_normalize(&[2, 3, 1]), (1, vec![1, 1, 0]));
        assert_eq!(brute_normalize(&[2, 5, 7]), (1, vec![1, 1, 2]));

        let n = normalize(&sigma(&[2, 3, 5])).unwrap();
        assert_eq!((n.e, n.b), (2, vec![1, 2, 4]));
        let n = normalize(&sigma(&[2, 3, 1])).unwrap();
        assert_eq!((n.e, n.b), (1, vec![1, 1, 0]));
        let n = normalize(&sigma(&[2, 5, 7])).unwrap();
        assert_eq!((n.e, n.b), (1, vec![1, 1, 2]));
    }

    #[test]
    fn normalize_matches_brute_force() {
        for a in [[3u64, 11, 13, 20], [33, 13, 20, 1], [7, 9, 10, 11], [2, 3, 5, 7]] {
            let n = normalize(&sigma(&a)).unwrap();
            assert_eq!((n.e, n.b), brute_normalize(&a), "{a:?}");
        }
        for a in [[3u64, 11, 260], [2, 5, 23], [5, 7, 36]] {
            let n = normalize(&sigma(&a)).unwrap();
            assert_eq!((n.e, n.b), brute_normalize(&a), "{a:?}");
        }
    }

    #[test]
    fn rejects_common_factor() {
        assert_eq!(SeifertData::positive(&[2, 4, 5]), Err(Error::NotCoprime(2, 4)));
        assert_eq!(SeifertData::positive(&[]), Err(Error::EmptyData));
        assert_eq!(SeifertData::positive(&[0, 3]), Err(Error::ZeroMultiplicity));
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(sigma(&[5, 1, 3, 2]), sigma(&[2, 3, 5]));
        assert_ne!(sigma(&[2, 3, 5]), sigma(&[2, 3, 5]).reversed());
        assert_eq!(sigma(&[5, 3, 2, 1]).to_string(), "sigma(2,3,5)");
        assert_eq!(sigma(&[2, 5, 17]).reversed().to_string(), "-sigma(2,5,17)");
        assert_eq!(sigma(&[1, 1]).to_string(), "sigma(1)");
    }

    #[test]
    fn fiber_refs() {
        let y = sigma(&[2, 5, 13]);
        assert_eq!(FiberRef::Order(13).resolve(&y), Ok(2));
        assert_eq!(FiberRef::Order(7).resolve(&y), Err(Error::NoSuchFiber(7)));
        assert_eq!(FiberRef::Index(3).resolve(&y), Err(Error::BadIndex { index: 3, len: 3 }));
        let ones = sigma(&[1, 1, 5]);
        assert_eq!(FiberRef::Order(1).resolve(&ones), Err(Error::NoSuchFiber(1)));
        assert_eq!(FiberRef::Index(0).resolve(&ones), Ok(0));
    }

    #[test]
    fn stabilization_examples() {
        assert_eq!(stabilize(&sigma(&[2, 3, 5]), FiberRef::Order(5)).unwrap(), sigma(&[2, 3, 11]));
        assert_eq!(stabilize(&sigma(&[2, 5, 3]), FiberRef::Order(3)).unwrap(), sigma(&[2, 5, 13]));
        assert_eq!(stabilize(&sigma(&[2, 5, 7]), FiberRef::Order(7)).unwrap(), sigma(&[2, 5, 17]));

        assert_eq!(destabilize(&sigma(&[2, 5, 13]), FiberRef::Order(13)).unwrap(), sigma(&[2, 5, 3]));
        assert_eq!(destabilize(&sigma(&[2, 5, 17]), FiberRef::Order(17)).unwrap(), sigma(&[2, 5, 7]));
        assert_eq!(
            destabilize(&sigma(&[2, 3, 5]), FiberRef::Order(5)),
            Err(Error::NotStabilized {
                order: 5,
                complement: 6,
                side: None
            })
        );

        assert!(is_stabilized(&sigma(&[2, 5, 13]), FiberRef::Order(13)).unwrap());
        assert!(!is_stabilized(&sigma(&[33, 13, 20]), FiberRef::Order(33)).unwrap());
        assert!(is_stabilized(&sigma(&[3, 11, 260]), FiberRef::Order(260)).unwrap());
    }

    #[test]
    fn orientation_survives_stabilization() {
        let y = sigma(&[2, 5, 7]).reversed();
        let s = stabilize(&y, FiberRef::Order(7)).unwrap();
        assert_eq!(s, sigma(&[2, 5, 17]).reversed());
    }

    #[test]
    fn pinch_examples() {
        let p = pinch_decompose(&sigma(&[3, 11, 13, 20]), 2).unwrap();
        assert_eq!(p.first.data, sigma(&[3, 11, 260]));
        assert_eq!(p.first.order(), 260);
        assert_eq!(p.second.data, sigma(&[33, 13, 20]));
        assert_eq!(p.second.order(), 33);

        let p = pinch_decompose(&sigma(&[2, 3, 5]), 1).unwrap();
        assert_eq!(p.first.data, sigma(&[2, 15]));
        assert_eq!(p.first.order(), 15);
        assert!(p.first.data.is_sphere());
        assert_eq!(p.second.data, sigma(&[2, 3, 5]));
        assert_eq!(p.second.order(), 2);

        let p = pinch_decompose(&sigma(&[2, 3, 5, 7]), 2).unwrap();
        assert_eq!(p.first.data, sigma(&[2, 3, 35]));
        assert_eq!(p.first.order(), 35);
        assert_eq!(p.second.data, sigma(&[6, 5, 7]));
        assert_eq!(p.second.order(), 6);

        assert!(matches!(pinch_decompose(&sigma(&[2, 3, 5]), 3), Err(Error::BadIndex { .. })));
        assert!(matches!(pinch_decompose(&sigma(&[2, 3, 5]), 0), Err(Error::BadIndex { .. })));
        assert!(matches!(pinch_decompose(&sigma(&[2, 3]), 1), Err(Error::BadIndex { .. })));
    }
}
