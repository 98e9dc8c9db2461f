//! d-invariants of Seifert homology spheres, surgery on Seifert fibers and
//! torus knots, and bounds for gluings of two knot exteriors.
//!
//! A gluing is described by two knots and the boundary identification
//! `±A`, `A = [[−n₁, 1], [1 − n₁n₂, n₂]]`; `n₁ = n₂ = 0` is the splice. Its
//! d-invariant lies between `Σᵢ d(Yᵢ(Kᵢ; 1/(nᵢ+1)))` and
//! `Σᵢ d(Yᵢ(Kᵢ; 1/(nᵢ−1)))`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{d_invariant_with, wu_mu_bar, DValue, GramLattice, MaxChar, SearchOptions};
use crate::plumbing::{gram_matrix, plumbing_graph, PlumbingGraph};
use crate::seifert::{is_stabilized, MarkedSeifert, Orientation, SeifertData};

/// `±[[−n₁, 1], [1 − n₁n₂, n₂]]`, of determinant −1.
pub fn gluing_matrix(n1: i64, n2: i64, sign: i64) -> Result<[[i64; 2]; 2]> {
    let s = if sign < 0 { -1 } else { 1 };
    let c = n1
        .checked_mul(n2)
        .and_then(|p| 1i64.checked_sub(p))
        .ok_or(Error::Overflow("gluing matrix"))?;
    let m = [[-n1 * s, s], [c * s, n2 * s]];
    let det = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
    if det != -1 {
        return Err(Error::Internal(format!("gluing matrix has determinant {det}")));
    }
    Ok(m)
}

/// Everything computed on the way to `d` for a Seifert homology sphere.
#[derive(Debug, Clone)]
pub struct SeifertComputation {
    /// d of the data as given, orientation applied.
    pub d: DValue,
    /// Plumbing of the positively oriented representative.
    pub graph: PlumbingGraph,
    pub lattice: GramLattice,
    pub best: MaxChar,
}

pub fn compute_seifert(data: &SeifertData, options: &SearchOptions) -> Result<SeifertComputation> {
    let graph = plumbing_graph(&data.positive_part())?;
    let lattice = gram_matrix(&graph)?;
    let (d, best) = d_invariant_with(&lattice, options)?;
    let d = match data.orientation() {
        Orientation::Positive => d,
        Orientation::Negative => -d,
    };
    Ok(SeifertComputation { d, graph, lattice, best })
}

/// d of `±Σ(a)`, with `d(−Y) = −d(Y)`.
pub fn d_seifert(data: &SeifertData) -> Result<DValue> {
    if data.is_sphere() {
        return Ok(DValue::ZERO);
    }
    compute_seifert(data, &SearchOptions::default()).map(|c| c.d)
}

/// Which 1/m-surgeries on Seifert fibers are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SurgeryCalculus {
    /// Only surgeries that stay positively oriented relative to the input,
    /// i.e. repeated stabilization or destabilization of a stabilized fiber.
    #[default]
    Strict,
    /// Also allow surgeries that pass through `a_f = m·P` and reverse the
    /// orientation: `Z(K_f; 1/m) = sign(a_f − mP)·Σ(…, |a_f − mP|, …)`.
    Extended,
}

/// `Y(K; 1/m)` for the marked fiber `K` of order `a_f` in `Y = ±Z`, where
/// the other multiplicities multiply to `P`.
///
/// On `Z` this replaces `a_f` by `a_f − m·P`; on `−Z` surgery with
/// coefficient `1/m` is `−(Z(K; −1/m))`.
pub fn surgery_on_fiber(knot: &MarkedSeifert, m: i64, calculus: SurgeryCalculus) -> Result<SeifertData> {
    let data = &knot.data;
    let f = knot.fiber;
    if m == 0 {
        return Ok(data.clone());
    }
    let a = knot.order() as i128;
    let p = data.complement_product(f)? as i128;
    let m_z = m as i128 * data.orientation().sign() as i128;
    let r = a - m_z * p;
    let (value, orientation) = match r.signum() {
        1 => (r, data.orientation()),
        // only possible with P = 1, where every filling is S³
        0 => (1, Orientation::Positive),
        _ => {
            if calculus == SurgeryCalculus::Strict {
                return Err(Error::NotStabilized {
                    order: knot.order(),
                    complement: u64::try_from(m_z.unsigned_abs() * p as u128).unwrap_or(u64::MAX),
                    side: None,
                });
            }
            (-r, data.orientation().reversed())
        }
    };
    let value = u64::try_from(value).map_err(|_| Error::Overflow("surgered multiplicity"))?;
    let mut out = data.with_multiplicity(f, value)?;
    if out.orientation() != orientation {
        out = out.reversed();
    }
    Ok(out)
}

/// ±1-surgery on a fiber: `−1` stabilizes, `+1` destabilizes (for positive
/// orientation; the roles swap for `−Z`). Fails on a `+1`-surgery that would
/// leave the calculus.
pub fn fiber_surgery(knot: &MarkedSeifert, eps: i64) -> Result<SeifertData> {
    surgery_on_fiber(knot, eps.signum(), SurgeryCalculus::Strict)
}

/// A knot together with what is known about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotSpec {
    /// A singular fiber of a Seifert homology sphere.
    Fiber(MarkedSeifert),
    /// The positive `(p,q)` torus knot in S³, or its mirror.
    Torus { p: u64, q: u64, mirrored: bool },
    /// d of the two surgeries `1/(n+1)` and `1/(n−1)` for the `n` in use.
    Surgeries { d_plus: i64, d_minus: i64 },
    /// A knot in S³ given by `V₀(K)` and `V₀(−K)`.
    V0 { v0: i64, v0_mirror: i64 },
}

impl KnotSpec {
    pub fn torus(p: u64, q: u64, mirrored: bool) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        if num_integer::gcd(p, q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        Ok(KnotSpec::Torus { p, q, mirrored })
    }

    pub fn surgeries(d_plus: i64, d_minus: i64) -> Result<Self> {
        for d in [d_plus, d_minus] {
            DValue::new(d)?;
        }
        Ok(KnotSpec::Surgeries { d_plus, d_minus })
    }

    pub fn v0(v0: i64, v0_mirror: i64) -> Result<Self> {
        for v in [v0, v0_mirror] {
            if v < 0 {
                return Err(Error::NegativeV(v));
            }
        }
        Ok(KnotSpec::V0 { v0, v0_mirror })
    }

    /// `(V₀(K), V₀(−K))` for knots in S³.
    pub fn v0_pair(&self) -> Result<Option<(i64, i64)>> {
        Ok(match *self {
            KnotSpec::Torus { p, q, mirrored } => {
                let (a, b) = (v0_torus(p, q, false)?, v0_torus(p, q, true)?);
                Some(if mirrored { (b, a) } else { (a, b) })
            }
            KnotSpec::V0 { v0, v0_mirror } => Some((v0, v0_mirror)),
            _ => None,
        })
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Fiber(m) => m.fmt(f),
            KnotSpec::Torus { p, q, mirrored } => {
                write!(f, "{}torus({p},{q})", if *mirrored { "-" } else { "" })
            }
            KnotSpec::Surgeries { d_plus, d_minus } => write!(f, "knot(dplus={d_plus}, dminus={d_minus})"),
            KnotSpec::V0 { v0, v0_mirror } => write!(f, "knot(v0={v0}, v0mirror={v0_mirror})"),
        }
    }
}

/// Two knots glued along `sign·A(n₁, n₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSpec {
    pub knots: [KnotSpec; 2],
    pub twists: [i64; 2],
    /// `+1` or `−1`.
    pub sign: i64,
}

impl GluingSpec {
    pub fn splice(first: KnotSpec, second: KnotSpec) -> Self {
        GluingSpec {
            knots: [first, second],
            twists: [0, 0],
            sign: 1,
        }
    }

    pub fn is_splice(&self) -> bool {
        self.twists == [0, 0]
    }

    pub fn matrix(&self) -> Result<[[i64; 2]; 2]> {
        gluing_matrix(self.twists[0], self.twists[1], self.sign)
    }
}

impl fmt::Display for GluingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = &self.knots;
        if self.is_splice() && self.sign > 0 {
            write!(f, "splice({a}, {b})")
        } else {
            let s = if self.sign < 0 { '-' } else { '+' };
            write!(f, "glue({a}, {b}; n1={}, n2={}, sign={s})", self.twists[0], self.twists[1])
        }
    }
}

/// Even lower and upper bounds on a d-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DInterval {
    pub lower: i64,
    pub upper: i64,
}

impl DInterval {
    pub fn new(lower: i64, upper: i64) -> Result<Self> {
        DValue::new(lower)?;
        DValue::new(upper)?;
        if lower > upper {
            return Err(Error::EmptyInterval { lower, upper });
        }
        Ok(DInterval { lower, upper })
    }

    pub fn point(d: DValue) -> Self {
        DInterval {
            lower: d.get(),
            upper: d.get(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lower <= d && d <= self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "stabilized-additivity")]
    StabilizedAdditivity,
    #[serde(rename = "theorem-1.1")]
    SurgeryBounds,
    #[serde(rename = "prop-1.2")]
    V0Bounds,
}

/// The JSON report for splice and gluing computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub d: Option<i64>,
    pub lower: i64,
    pub upper: i64,
    pub exact: bool,
    pub method: Method,
}

impl Report {
    pub fn new(interval: DInterval, method: Method) -> Self {
        Report {
            d: interval.is_exact().then_some(interval.lower),
            lower: interval.lower,
            upper: interval.upper,
            exact: interval.is_exact(),
            method,
        }
    }
}

/// `d(S³(K; 1/m))` from `V₀(K)` and `V₀(−K)`: `−2V₀(K)` for `m > 0`,
/// `2V₀(−K)` for `m < 0`, and 0 for `m = 0`.
fn d_from_v0(v0: i64, v0_mirror: i64, m: i64) -> i64 {
    match m.signum() {
        1 => -2 * v0,
        -1 => 2 * v0_mirror,
        _ => 0,
    }
}

/// `V₀` of the positive `(p,q)` torus knot or of its mirror, from
/// `S³(T; +1) = −Σ(p,q,pq−1)` and `S³(T; −1) = Σ(p,q,pq+1)`.
pub fn v0_torus(p: u64, q: u64, mirrored: bool) -> Result<i64> {
    if p == 0 || q == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    if p == 1 || q == 1 {
        return Ok(0);
    }
    let pq = p.checked_mul(q).ok_or(Error::Overflow("torus knot"))?;
    let d = if mirrored {
        d_seifert(&SeifertData::positive(&[p, q, pq + 1])?)?.get()
    } else {
        d_seifert(&SeifertData::positive(&[p, q, pq - 1])?)?.get()
    };
    let v = d / 2;
    if v < 0 {
        return Err(Error::Internal(format!("negative V0 {v} for torus({p},{q})")));
    }
    Ok(v)
}

/// `d(Y(K; 1/(n+1)))` and `d(Y(K; 1/(n−1)))`.
pub fn d_pm_surgeries(knot: &KnotSpec, n: i64, calculus: SurgeryCalculus) -> Result<(i64, i64)> {
    let plus = n.checked_add(1).ok_or(Error::Overflow("surgery coefficient"))?;
    let minus = n.checked_sub(1).ok_or(Error::Overflow("surgery coefficient"))?;
    match knot {
        KnotSpec::Fiber(marked) => {
            let d = |m| -> Result<i64> { Ok(d_seifert(&surgery_on_fiber(marked, m, calculus)?)?.get()) };
            Ok((d(plus)?, d(minus)?))
        }
        KnotSpec::Surgeries { d_plus, d_minus } => Ok((*d_plus, *d_minus)),
        KnotSpec::Torus { .. } | KnotSpec::V0 { .. } => {
            let (v, w) = knot.v0_pair()?.expect("knot in S³");
            Ok((d_from_v0(v, w, plus), d_from_v0(v, w, minus)))
        }
    }
}

/// The interval `[Σ d(Yᵢ(Kᵢ; 1/(nᵢ+1))), Σ d(Yᵢ(Kᵢ; 1/(nᵢ−1)))]`, valid for
/// either sign of the gluing matrix.
pub fn surgery_bounds(g: &GluingSpec) -> Result<DInterval> {
    surgery_bounds_with(g, SurgeryCalculus::Strict)
}

pub fn surgery_bounds_with(g: &GluingSpec, calculus: SurgeryCalculus) -> Result<DInterval> {
    g.matrix()?;
    let mut lower = 0;
    let mut upper = 0;
    for (i, (knot, &n)) in g.knots.iter().zip(&g.twists).enumerate() {
        let (dp, dm) = d_pm_surgeries(knot, n, calculus).map_err(|e| with_side(e, i + 1))?;
        lower += dp;
        upper += dm;
    }
    DInterval::new(lower, upper)
}

fn with_side(e: Error, side: usize) -> Error {
    match e {
        Error::NotStabilized { order, complement, .. } => Error::NotStabilized {
            order,
            complement,
            side: Some(side),
        },
        other => other,
    }
}

/// The same interval for knots in S³ given by `(V₀(Kᵢ), V₀(−Kᵢ))`:
/// `[−2Σ εᵢ⁺V₀(εᵢ⁺Kᵢ), −2Σ εᵢ⁻V₀(εᵢ⁻Kᵢ)]` with `εᵢ^± = sign(nᵢ ± 1)`; a
/// vanishing `nᵢ ± 1` contributes 0.
pub fn v0_bounds(first: (i64, i64), second: (i64, i64), n1: i64, n2: i64) -> Result<DInterval> {
    let mut lower = 0;
    let mut upper = 0;
    for ((v, w), n) in [(first, n1), (second, n2)] {
        for x in [v, w] {
            if x < 0 {
                return Err(Error::NegativeV(x));
            }
        }
        lower += d_from_v0(v, w, n + 1);
        upper += d_from_v0(v, w, n - 1);
    }
    DInterval::new(lower, upper)
}

/// Bounds by the V₀ formula when both knots live in S³, otherwise by
/// surgeries.
pub fn gluing_report(g: &GluingSpec, calculus: SurgeryCalculus) -> Result<Report> {
    g.matrix()?;
    if let (Some(a), Some(b)) = (g.knots[0].v0_pair()?, g.knots[1].v0_pair()?) {
        let interval = v0_bounds(a, b, g.twists[0], g.twists[1])?;
        return Ok(Report::new(interval, Method::V0Bounds));
    }
    Ok(Report::new(surgery_bounds_with(g, calculus)?, Method::SurgeryBounds))
}

fn fiber_of(knot: &KnotSpec) -> Result<&MarkedSeifert> {
    match knot {
        KnotSpec::Fiber(m) => Ok(m),
        other => Err(Error::MissingData(format!(
            "{other} is not a Seifert fiber; use bounds for general knots"
        ))),
    }
}

/// `d(Y₁) + d(Y₂)`, an upper bound on d of the splice of two positively
/// oriented Seifert spheres.
pub fn splice_upper_bound(first: &MarkedSeifert, second: &MarkedSeifert) -> Result<DValue> {
    for (i, m) in [first, second].into_iter().enumerate() {
        if m.data.orientation() != Orientation::Positive {
            return Err(Error::WrongOrientation(i + 1));
        }
    }
    Ok(d_seifert(&first.data)? + d_seifert(&second.data)?)
}

/// d of a splice along stabilized fibers, where ±1-surgery on either fiber
/// does not change d and the surgery interval collapses to
/// `d(Y₁) + d(Y₂)`.
pub fn splice_d_stabilized(first: &MarkedSeifert, second: &MarkedSeifert) -> Result<DValue> {
    for (i, m) in [first, second].into_iter().enumerate() {
        if !is_stabilized(&m.data, m.fiber_ref())? {
            return Err(Error::NotStabilized {
                order: m.order(),
                complement: m.data.complement_product(m.fiber)?,
                side: Some(i + 1),
            });
        }
    }
    Ok(d_seifert(&first.data)? + d_seifert(&second.data)?)
}

/// Splice of two fibers by stabilized additivity.
pub fn splice_report(g: &GluingSpec) -> Result<Report> {
    if !g.is_splice() {
        return Err(Error::NotASplice);
    }
    let d = splice_d_stabilized(fiber_of(&g.knots[0])?, fiber_of(&g.knots[1])?)?;
    Ok(Report::new(DInterval::point(d), Method::StabilizedAdditivity))
}

/// `ε·d(Z₂) ≤ ε·d(Z₁)` when `Z₂` is `ε`-surgery on a knot in `Z₁`.
pub fn surgery_monotone(d1: i64, d2: i64, eps: i64) -> bool {
    eps.signum() * d2 <= eps.signum() * d1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    pub before: i64,
    pub after: i64,
    pub eps: i64,
    pub holds: bool,
}

/// Compare d before and after `eps`-surgery on the marked fiber.
pub fn monotonicity_check(knot: &MarkedSeifert, eps: i64) -> Result<Monotonicity> {
    let before = d_seifert(&knot.data)?.get();
    let after = d_seifert(&fiber_surgery(knot, eps)?)?.get();
    Ok(Monotonicity {
        before,
        after,
        eps: eps.signum(),
        holds: surgery_monotone(before, after, eps),
    })
}

/// `χ(HF_red) = d/2 + λ` for a user supplied Casson invariant `λ`.
pub fn casson_euler(d: i64, lambda: i64) -> Result<i64> {
    DValue::new(d)?;
    (d / 2).checked_add(lambda).ok_or(Error::Overflow("Euler characteristic"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuBarReport {
    pub d: i64,
    pub mu_bar: i64,
    /// `−2μ̄`
    pub bound: i64,
    pub equality: bool,
}

/// Check `d(Y) ≥ −2μ̄(Y)`, and equality if asked.
pub fn mu_bar_check(data: &SeifertData, expect_equality: bool) -> Result<MuBarReport> {
    if data.orientation() != Orientation::Positive {
        return Err(Error::NegativeOrientation);
    }
    let lattice = gram_matrix(&plumbing_graph(data)?)?;
    let mu_bar = wu_mu_bar(&lattice)?.mu_bar;
    let d = d_seifert(data)?.get();
    let bound = -2 * mu_bar;
    if d < bound {
        return Err(Error::InequalityViolated { d, bound });
    }
    if expect_equality && d != bound {
        return Err(Error::EqualityFailed { d, bound });
    }
    Ok(MuBarReport {
        d,
        mu_bar,
        bound,
        equality: d == bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::FiberRef;

    fn sigma(a: &[u64]) -> SeifertData {
        SeifertData::positive(a).unwrap()
    }

    fn marked(a: &[u64], order: u64) -> MarkedSeifert {
        MarkedSeifert::new(sigma(a), FiberRef::Order(order)).unwrap()
    }

    #[test]
    fn gluing_matrices() {
        assert_eq!(gluing_matrix(0, 0, 1).unwrap(), [[0, 1], [1, 0]]);
        assert_eq!(gluing_matrix(1, 1, 1).unwrap(), [[-1, 1], [0, 1]]);
        assert_eq!(gluing_matrix(2, -3, -1).unwrap(), [[2, -1], [-7, 3]]);
    }

    #[test]
    fn seifert_d_values() {
        assert_eq!(d_seifert(&sigma(&[2, 3, 5])).unwrap().get(), 2);
        assert_eq!(d_seifert(&sigma(&[2, 5, 7])).unwrap().get(), 0);
        assert_eq!(d_seifert(&sigma(&[2, 3, 5]).reversed()).unwrap().get(), -2);
        assert_eq!(d_seifert(&sigma(&[2, 5, 17]).reversed()).unwrap().get(), 0);
        assert_eq!(d_seifert(&sigma(&[2, 3, 1])).unwrap().get(), 0);
    }

    #[test]
    fn fiber_surgeries() {
        let y = marked(&[2, 5, 13], 13);
        assert_eq!(fiber_surgery(&y, 1).unwrap(), sigma(&[2, 3, 5]));
        let p = marked(&[2, 3, 5], 5);
        assert_eq!(fiber_surgery(&p, -1).unwrap(), sigma(&[2, 3, 11]));
        assert!(matches!(fiber_surgery(&p, 1), Err(Error::NotStabilized { .. })));
        // on −Z the roles of ±1 swap
        let r = MarkedSeifert::new(sigma(&[2, 3, 5]).reversed(), FiberRef::Order(5)).unwrap();
        assert_eq!(fiber_surgery(&r, 1).unwrap(), sigma(&[2, 3, 11]).reversed());
    }

    #[test]
    fn extended_surgery_flips_orientation() {
        let p = marked(&[2, 3, 5], 5);
        let out = surgery_on_fiber(&p, 1, SurgeryCalculus::Extended).unwrap();
        assert_eq!(out, sigma(&[2, 3, 1]).reversed());
        let q = marked(&[33, 13, 20], 33);
        let out = surgery_on_fiber(&q, 1, SurgeryCalculus::Extended).unwrap();
        assert_eq!(out, sigma(&[227, 13, 20]).reversed());
        assert_eq!(surgery_on_fiber(&q, -2, SurgeryCalculus::Strict).unwrap(), sigma(&[553, 13, 20]));
    }

    #[test]
    fn torus_knot_as_regular_fiber() {
        // T(2,3) is the order-1 fiber of Σ(2,3,1) = S³
        let s3 = MarkedSeifert::new(sigma(&[2, 3, 1]), FiberRef::Index(2)).unwrap();
        let plus = surgery_on_fiber(&s3, 1, SurgeryCalculus::Extended).unwrap();
        assert_eq!(plus, sigma(&[2, 3, 5]).reversed());
        let minus = surgery_on_fiber(&s3, -1, SurgeryCalculus::Strict).unwrap();
        assert_eq!(minus, sigma(&[2, 3, 7]));
    }

    #[test]
    fn surgery_pairs() {
        let y = KnotSpec::Fiber(marked(&[2, 5, 13], 13));
        assert_eq!(d_pm_surgeries(&y, 0, SurgeryCalculus::Strict).unwrap(), (2, 2));
        let t = KnotSpec::torus(2, 3, false).unwrap();
        assert_eq!(d_pm_surgeries(&t, 0, SurgeryCalculus::Strict).unwrap(), (-2, 0));
        let a = KnotSpec::surgeries(0, 0).unwrap();
        assert_eq!(d_pm_surgeries(&a, 5, SurgeryCalculus::Strict).unwrap(), (0, 0));
    }

    #[test]
    fn torus_v0() {
        assert_eq!(v0_torus(1, 7, false).unwrap(), 0);
        assert_eq!(v0_torus(2, 3, false).unwrap(), 1);
        assert_eq!(v0_torus(2, 3, true).unwrap(), 0);
        assert_eq!(v0_torus(2, 4, false), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn fig2_splice() {
        let a = marked(&[2, 5, 13], 13);
        let b = MarkedSeifert::new(sigma(&[2, 5, 17]).reversed(), FiberRef::Order(17)).unwrap();
        assert_eq!(splice_d_stabilized(&a, &b).unwrap().get(), 2);
        let g = GluingSpec::splice(KnotSpec::Fiber(a.clone()), KnotSpec::Fiber(b));
        assert_eq!(surgery_bounds(&g).unwrap(), DInterval { lower: 2, upper: 2 });
        assert_eq!(splice_d_stabilized(&a, &a).unwrap().get(), 4);
    }

    #[test]
    fn unstabilized_splice_is_refused() {
        let a = marked(&[33, 13, 20], 33);
        let b = marked(&[3, 11, 260], 260);
        assert_eq!(
            splice_d_stabilized(&a, &b),
            Err(Error::NotStabilized {
                order: 33,
                complement: 260,
                side: Some(1)
            })
        );
    }

    #[test]
    fn v0_formula() {
        assert_eq!(v0_bounds((0, 0), (0, 0), 0, 0).unwrap(), DInterval { lower: 0, upper: 0 });
        assert_eq!(v0_bounds((1, 0), (1, 0), 2, 2).unwrap(), DInterval { lower: -4, upper: -4 });
        assert_eq!(v0_bounds((1, 0), (0, 0), 0, 0).unwrap(), DInterval { lower: -2, upper: 0 });
        assert_eq!(v0_bounds((-1, 0), (0, 0), 0, 0), Err(Error::NegativeV(-1)));
    }

    #[test]
    fn upper_bound_and_checks() {
        let a = marked(&[2, 5, 13], 13);
        let b = marked(&[2, 5, 17], 17);
        assert_eq!(splice_upper_bound(&a, &b).unwrap().get(), 2);
        let neg = MarkedSeifert::new(sigma(&[2, 5, 17]).reversed(), FiberRef::Order(17)).unwrap();
        assert_eq!(splice_upper_bound(&a, &neg), Err(Error::WrongOrientation(2)));

        assert_eq!(casson_euler(0, 0).unwrap(), 0);
        assert_eq!(casson_euler(2, -1).unwrap(), 0);
        assert_eq!(casson_euler(2, -3).unwrap(), -2);

        let r = mu_bar_check(&sigma(&[2, 3, 5]), true).unwrap();
        assert_eq!((r.d, r.mu_bar, r.bound), (2, -1, 2));
        assert!(mu_bar_check(&sigma(&[2, 5, 7]), false).is_ok());
        assert_eq!(mu_bar_check(&sigma(&[2, 3, 1]), true).unwrap().bound, 0);

        let m = monotonicity_check(&marked(&[2, 3, 5], 5), -1).unwrap();
        assert!(m.holds);
        assert!(m.after >= 2);
    }

    #[test]
    fn display_forms() {
        let g = GluingSpec {
            knots: [KnotSpec::torus(2, 3, true).unwrap(), KnotSpec::v0(1, 0).unwrap()],
            twists: [2, -1],
            sign: -1,
        };
        assert_eq!(g.to_string(), "glue(-torus(2,3), knot(v0=1, v0mirror=0); n1=2, n2=-1, sign=-)");
    }
}
