//! The strongly regular graph and the two-weight code of a two-character
//! set of PG(3, q²).
//!
//! Vertices are the q⁸ vectors of GF(q²)⁴, i.e. the affine points of
//! PG(4, q²) off the hyperplane Π ≅ PG(3, q²). Two vertices are adjacent when
//! their difference spans a point of the set. The graph is a Cayley graph
//! with connection set N = {λx : x ∈ set, λ ≠ 0}, and is never materialized.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::projgeom::{PointSet, Space, Vec4};
use crate::quasi::{plane_counts, plane_spectrum};

/// Largest q for the exhaustive λ/μ mode.
pub const EXHAUSTIVE_MAX_Q: u32 = 3;

pub const DEFAULT_PAIRS: usize = 10_000;
pub const DEFAULT_DEGREE_SAMPLES: usize = 100;

pub type Vertex = u32;

pub struct LinearRepGraph<'a> {
    space: &'a Space,
    set: PointSet,
    q2: u32,
    /// Members of the connection set N, as vertices.
    connection: Vec<Vertex>,
    in_connection: FixedBitSet,
}

impl<'a> LinearRepGraph<'a> {
    /// Refuses sets with more than two plane intersection sizes.
    pub fn new(space: &'a Space, set: &PointSet) -> Result<Self> {
        let sizes: Vec<usize> = plane_spectrum(space, set).into_keys().collect();
        if sizes.len() > 2 {
            return Err(Error::NotTwoCharacter(sizes));
        }
        let f = space.field();
        let q2 = space.q2();
        let n = (q2 as usize).pow(4);
        let mut in_connection = FixedBitSet::with_capacity(n);
        let mut connection = Vec::with_capacity(set.len() * (q2 as usize - 1));
        for p in set.iter() {
            let x = space.coords(p);
            for l in f.elements().filter(|l| !l.is_zero()) {
                let v = encode(q2, &x.map(|c| f.mul(l, c)));
                in_connection.insert(v as usize);
                connection.push(v);
            }
        }
        connection.sort_unstable();
        Ok(LinearRepGraph { space, set: set.clone(), q2, connection, in_connection })
    }

    pub fn num_vertices(&self) -> usize {
        (self.q2 as usize).pow(4)
    }

    pub fn set(&self) -> &PointSet {
        &self.set
    }

    /// (q² − 1)|set|
    pub fn nominal_degree(&self) -> usize {
        self.connection.len()
    }

    fn diff(&self, u: Vertex, v: Vertex) -> Vertex {
        let f = self.space.field();
        let (a, b) = (decode(self.q2, u), decode(self.q2, v));
        let mut d = [Fe::ZERO; 4];
        for k in 0..4 {
            d[k] = f.sub(b[k], a[k]);
        }
        encode(self.q2, &d)
    }

    fn shift(&self, u: Vertex, by: Vertex) -> Vertex {
        let f = self.space.field();
        let (a, b) = (decode(self.q2, u), decode(self.q2, by));
        let mut s = [Fe::ZERO; 4];
        for k in 0..4 {
            s[k] = f.add(a[k], b[k]);
        }
        encode(self.q2, &s)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.in_connection.contains(self.diff(u, v) as usize)
    }

    /// Neighbours of u counted by scanning every vertex.
    pub fn degree(&self, u: Vertex) -> usize {
        (0..self.num_vertices() as Vertex).filter(|&v| self.adjacent(u, v)).count()
    }

    pub fn common_neighbours(&self, u: Vertex, v: Vertex) -> usize {
        self.connection
            .iter()
            .filter(|&&d| {
                let w = self.shift(u, d);
                w != v && self.adjacent(v, w)
            })
            .count()
    }
}

fn encode(q2: u32, v: &Vec4) -> Vertex {
    v.iter().fold(0, |acc, x| acc * q2 + x.code() as u32)
}

fn decode(q2: u32, mut id: Vertex) -> Vec4 {
    let mut v = [Fe::ZERO; 4];
    for k in (0..4).rev() {
        v[k] = Fe::from_code((id % q2) as u8);
        id /= q2;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphParams {
    pub n: usize,
    pub k: usize,
    pub lambda: Option<usize>,
    pub mu: Option<usize>,
    pub srg_ok: bool,
    pub degree_samples: usize,
    pub adjacent_pairs: usize,
    pub nonadjacent_pairs: usize,
    pub exhaustive: bool,
    /// Every distinct value seen, for diagnostics.
    pub degrees_seen: Vec<usize>,
    pub lambdas_seen: Vec<usize>,
    pub mus_seen: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub pairs: usize,
    pub degree_samples: usize,
    pub seed: u64,
    pub exhaustive: bool,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { pairs: DEFAULT_PAIRS, degree_samples: DEFAULT_DEGREE_SAMPLES, seed: 0, exhaustive: false }
    }
}

fn distinct(values: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = values.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn single(values: &[usize]) -> Option<usize> {
    (values.len() == 1).then(|| values[0])
}

/// Degree, λ and μ by exact counts at seeded random vertices and pairs, or
/// at every pair (0, d) in exhaustive mode.
///
/// Translations are automorphisms, so the pairs (0, d) cover every pair of
/// vertices.
pub fn graph_params(space: &Space, set: &PointSet, opts: Sampling) -> Result<GraphParams> {
    let g = LinearRepGraph::new(space, set)?;
    let n = g.num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let sample_vertices: Vec<Vertex> = (0..opts.degree_samples).map(|_| rng.gen_range(0..n as Vertex)).collect();
    let degrees = distinct(sample_vertices.par_iter().map(|&u| g.degree(u)).collect::<Vec<_>>());

    let (adj, non): (Vec<usize>, Vec<usize>) = if opts.exhaustive {
        if space.q() > EXHAUSTIVE_MAX_Q {
            return Err(Error::BoundExceeded { what: "exhaustive λ/μ", q: space.q(), max: EXHAUSTIVE_MAX_Q });
        }
        let counts: Vec<(bool, usize)> =
            (1..n as Vertex).into_par_iter().map(|d| (g.adjacent(0, d), g.common_neighbours(0, d))).collect();
        split(counts)
    } else {
        // Alternate adjacent and non-adjacent pairs so both kinds appear.
        let pairs: Vec<(Vertex, Vertex)> = (0..opts.pairs)
            .filter_map(|i| {
                let u = rng.gen_range(0..n as Vertex);
                let v = if i % 2 == 0 && !g.connection.is_empty() {
                    g.shift(u, g.connection[rng.gen_range(0..g.connection.len())])
                } else {
                    let v = rng.gen_range(0..n as Vertex);
                    if v == u {
                        return None;
                    }
                    v
                };
                Some((u, v))
            })
            .collect();
        let counts: Vec<(bool, usize)> =
            pairs.par_iter().map(|&(u, v)| (g.adjacent(u, v), g.common_neighbours(u, v))).collect();
        split(counts)
    };

    let (adjacent_pairs, nonadjacent_pairs) = (adj.len(), non.len());
    let (lambdas_seen, mus_seen) = (distinct(adj), distinct(non));
    let k = g.nominal_degree();
    let srg_ok = degrees == [k]
        && lambdas_seen.len() <= 1
        && mus_seen.len() <= 1
        && (adjacent_pairs == 0 || lambdas_seen.len() == 1)
        && (nonadjacent_pairs == 0 || mus_seen.len() == 1);
    Ok(GraphParams {
        n,
        k,
        lambda: single(&lambdas_seen),
        mu: single(&mus_seen),
        srg_ok,
        degree_samples: opts.degree_samples,
        adjacent_pairs,
        nonadjacent_pairs,
        exhaustive: opts.exhaustive,
        degrees_seen: degrees,
        lambdas_seen,
        mus_seen,
    })
}

fn split(counts: Vec<(bool, usize)>) -> (Vec<usize>, Vec<usize>) {
    let (a, b): (Vec<_>, Vec<_>) = counts.into_iter().partition(|(adj, _)| *adj);
    (a.into_iter().map(|x| x.1).collect(), b.into_iter().map(|x| x.1).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    /// Codeword weight → number of nonzero codewords. Weight 0 appears
    /// when the set lies in a plane.
    pub weights: BTreeMap<usize, usize>,
    pub length: usize,
}

impl WeightDistribution {
    pub fn total(&self) -> usize {
        self.weights.values().sum()
    }
}

/// Weights by plane sweep: a plane meeting the set in h points gives q² − 1
/// codewords of weight |set| − h.
pub fn weight_distribution(space: &Space, set: &PointSet) -> WeightDistribution {
    let scale = space.q2() as usize - 1;
    let mut weights = BTreeMap::new();
    for h in plane_counts(space, set) {
        *weights.entry(set.len() - h as usize).or_insert(0) += scale;
    }
    WeightDistribution { weights, length: set.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasi::{assemble, QuasiKind};

    #[test]
    fn encode_round_trip() {
        let s = Space::for_q(3).unwrap();
        let q2 = s.q2();
        for id in [0, 1, 80, 6560, 1234] {
            assert_eq!(encode(q2, &decode(q2, id)), id);
        }
    }

    #[test]
    fn empty_set_is_edgeless() {
        let s = Space::for_q(3).unwrap();
        let empty = PointSet::empty(s.num_points());
        let opts = Sampling { pairs: 50, degree_samples: 3, ..Sampling::default() };
        let p = graph_params(&s, &empty, opts).unwrap();
        assert_eq!((p.n, p.k, p.degrees_seen.clone()), (6561, 0, vec![0]));
        assert_eq!(p.adjacent_pairs, 0);
        assert_eq!(p.mu, Some(0));
        assert!(p.srg_ok);
    }

    #[test]
    fn refuses_three_characters() {
        let s = Space::for_q(3).unwrap();
        let set = PointSet::from_ids(s.num_points(), [0, 1, 2, 3, 4]);
        assert!(matches!(LinearRepGraph::new(&s, &set), Err(Error::NotTwoCharacter(_))));
    }

    #[test]
    fn sweep_total_is_all_nonzero_codewords() {
        let s = Space::for_q(3).unwrap();
        let set = assemble(&s, QuasiKind::all(3)[0]).unwrap();
        let w = weight_distribution(&s, &set);
        assert_eq!(w.total(), 6560);
        assert_eq!(w.weights.len(), 2);
    }
}
