//! The star-shaped negative-definite plumbing bounded by a positively
//! oriented Seifert homology sphere, and its intersection lattice.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::seifert::{normalize, Orientation, SeifertData};

/// Hirzebruch–Jung expansion `a/b = k₁ − 1/(k₂ − ⋯ − 1/k_m)` with all `kᵢ ≥ 2`.
pub fn neg_cont_frac(a: u64, b: u64) -> Result<Vec<u64>> {
    if b == 0 || b >= a || num_integer::gcd(a, b) != 1 {
        return Err(Error::BadFraction { a, b });
    }
    let (mut p, mut q) = (a, b);
    let mut ks = Vec::new();
    while q > 0 {
        // ceiling division; the remainder q·k − p lies in [0, q)
        let k = p.div_ceil(q);
        ks.push(k);
        (p, q) = (q, q * k - p);
    }
    if evaluate_cont_frac(&ks) != BigRational::new(a.into(), b.into()) {
        return Err(Error::Internal(format!("expansion of {a}/{b} does not evaluate back")));
    }
    Ok(ks)
}

/// Value of `k₁ − 1/(k₂ − ⋯ − 1/k_m)`.
pub fn evaluate_cont_frac(ks: &[u64]) -> BigRational {
    let mut it = ks.iter().rev();
    let Some(&last) = it.next() else {
        return BigRational::from_integer(0.into());
    };
    it.fold(BigRational::from_integer(last.into()), |acc, &k| {
        BigRational::from_integer(k.into()) - acc.recip()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub framing: i64,
}

/// Framed tree. For graphs built by [`plumbing_graph`], vertex ids equal
/// their positions, the center is vertex 0 and each leg starts next to the
/// center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub center: usize,
    /// One leg per multiplicity greater than 1, in data order.
    pub legs: Vec<Vec<usize>>,
}

impl Serialize for PlumbingGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PlumbingGraph", 3)?;
        st.serialize_field("vertices", &self.vertices)?;
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(u, v)| [u, v]).collect();
        st.serialize_field("edges", &edges)?;
        st.serialize_field("center", &self.center)?;
        st.end()
    }
}

impl PlumbingGraph {
    pub fn framing(&self, id: usize) -> Option<i64> {
        self.vertices.iter().find(|v| v.id == id).map(|v| v.framing)
    }

    pub fn leg_framings(&self) -> Vec<Vec<i64>> {
        self.legs
            .iter()
            .map(|leg| leg.iter().map(|&id| self.framing(id).expect("leg vertex")).collect())
            .collect()
    }
}

pub fn plumbing_graph(data: &SeifertData) -> Result<PlumbingGraph> {
    if data.orientation() == Orientation::Negative {
        return Err(Error::NegativeOrientation);
    }
    let norm = normalize(data)?;
    let mut vertices = vec![Vertex { id: 0, framing: -norm.e }];
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    for (&a, &b) in data.multiplicities().iter().zip(&norm.b) {
        if a == 1 {
            continue;
        }
        let mut leg = Vec::new();
        let mut prev = 0;
        for k in neg_cont_frac(a, b)? {
            let id = vertices.len();
            let framing = -i64::try_from(k).map_err(|_| Error::Overflow("framing"))?;
            vertices.push(Vertex { id, framing });
            edges.push((prev, id));
            leg.push(id);
            prev = id;
        }
        legs.push(leg);
    }
    Ok(PlumbingGraph {
        vertices,
        edges,
        center: 0,
        legs,
    })
}

fn check_tree(g: &PlumbingGraph) -> Result<Vec<usize>> {
    let n = g.vertices.len();
    let mut pos = std::collections::HashMap::new();
    for (i, v) in g.vertices.iter().enumerate() {
        if pos.insert(v.id, i).is_some() {
            return Err(Error::NotATree(format!("duplicate vertex id {}", v.id)));
        }
    }
    if n == 0 {
        return Err(Error::NotATree("no vertices".into()));
    }
    if g.edges.len() + 1 != n {
        return Err(Error::NotATree(format!("{} vertices but {} edges", n, g.edges.len())));
    }
    // union-find; a cycle shows up as an edge inside one component
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &g.edges {
        let (Some(&i), Some(&j)) = (pos.get(&u), pos.get(&v)) else {
            return Err(Error::NotATree(format!("edge ({u}, {v}) has an unknown end")));
        };
        let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
        if ri == rj {
            return Err(Error::NotATree(format!("edge ({u}, {v}) closes a cycle")));
        }
        parent[ri] = rj;
    }
    if !pos.contains_key(&g.center) {
        return Err(Error::NotATree(format!("center {} is not a vertex", g.center)));
    }
    Ok(g.edges
        .iter()
        .flat_map(|&(u, v)| [pos[&u], pos[&v]])
        .collect())
}

/// Intersection form of the plumbing, checked to be negative definite and
/// unimodular. Basis order follows `g.vertices`; labels are vertex ids.
pub fn gram_matrix(g: &PlumbingGraph) -> Result<GramLattice> {
    let ends = check_tree(g)?;
    let n = g.vertices.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, v) in g.vertices.iter().enumerate() {
        rows[i][i] = v.framing;
    }
    for pair in ends.chunks(2) {
        rows[pair[0]][pair[1]] = 1;
        rows[pair[1]][pair[0]] = 1;
    }
    let labels = g.vertices.iter().map(|v| v.id).collect();
    let lattice = GramLattice::with_labels(rows, labels)?;
    if !lattice.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let det = lattice.determinant();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    Ok(lattice)
}

/// Plumbing lattice of a positively oriented Seifert homology sphere.
pub fn seifert_lattice(data: &SeifertData) -> Result<GramLattice> {
    gram_matrix(&plumbing_graph(data)?)
}
