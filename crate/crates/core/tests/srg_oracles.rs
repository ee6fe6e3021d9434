//! Graph parameters and code weights checked against the character-sum
//! eigenvalues and against direct codeword enumeration.

use std::collections::BTreeMap;

use quasiherm_core::quasi::{assemble, plane_spectrum, QuasiKind};
use quasiherm_core::srg::{graph_params, weight_distribution, Sampling};
use quasiherm_core::varieties::hermitian_surface;
use quasiherm_core::{PointSet, Space};

/// Nontrivial eigenvalues Q·h − n from the plane sizes, then
/// λ = k + r + s + rs and μ = k + rs.
fn eigen_params(q: u32, n: i64, sizes: (i64, i64)) -> (i64, i64, i64) {
    let big_q = (q * q) as i64;
    let k = (big_q - 1) * n;
    let (r, s) = (big_q * sizes.0 - n, big_q * sizes.1 - n);
    (k, k + r + s + r * s, k + r * s)
}

/// Weight of every nonzero codeword a ↦ (a·x)_{x ∈ set}.
fn direct_weights(space: &Space, set: &PointSet) -> BTreeMap<usize, usize> {
    let f = space.field();
    let elems: Vec<_> = f.elements().collect();
    let cols: Vec<_> = set.iter().map(|p| space.coords(p)).collect();
    let mut out = BTreeMap::new();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let u = [a, b, c, d];
                    if u.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let w = cols.iter().filter(|x| !space.dot(&u, x).is_zero()).count();
                    *out.entry(w).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

#[test]
fn quasi_set_graph_matches_eigenvalues() {
    let s = Space::for_q(3).unwrap();
    let set = assemble(&s, QuasiKind::SH2 { j: 1 }).unwrap();
    assert_eq!(set.len(), 280);
    let spec: Vec<i64> = plane_spectrum(&s, &set).keys().map(|&h| h as i64).collect();
    let (k, lambda, mu) = eigen_params(3, 280, (spec[0], spec[1]));
    let p = graph_params(&s, &set, Sampling { pairs: 2000, degree_samples: 10, seed: 7, exhaustive: false }).unwrap();
    assert!(p.srg_ok, "{p:?}");
    assert_eq!((p.n, p.k as i64), (6561, k));
    assert_eq!(p.k, 2240);
    assert_eq!(p.lambda.map(|x| x as i64), Some(lambda));
    assert_eq!(p.mu.map(|x| x as i64), Some(mu));
}

#[test]
fn exhaustive_agrees_with_sampling() {
    let s = Space::for_q(3).unwrap();
    let set = hermitian_surface(&s);
    let a = graph_params(&s, &set, Sampling { pairs: 500, degree_samples: 2, seed: 1, exhaustive: false }).unwrap();
    let b = graph_params(&s, &set, Sampling { pairs: 0, degree_samples: 2, seed: 1, exhaustive: true }).unwrap();
    assert!(a.srg_ok && b.srg_ok);
    assert_eq!((a.k, a.lambda, a.mu), (b.k, b.lambda, b.mu));
    assert_eq!(b.adjacent_pairs + b.nonadjacent_pairs, 6560);
}

#[test]
fn hermitian_surface_has_same_params_as_quasi_set() {
    let s = Space::for_q(3).unwrap();
    let opts = Sampling { pairs: 400, degree_samples: 2, seed: 3, exhaustive: false };
    let h = graph_params(&s, &hermitian_surface(&s), opts).unwrap();
    for kind in QuasiKind::all(3) {
        let set = assemble(&s, kind).unwrap();
        let p = graph_params(&s, &set, opts).unwrap();
        assert_eq!((p.n, p.k, p.lambda, p.mu), (h.n, h.k, h.lambda, h.mu), "{kind:?}");
        assert_eq!(weight_distribution(&s, &set), weight_distribution(&s, &hermitian_surface(&s)));
    }
}

#[test]
fn sweep_matches_direct_enumeration() {
    let s = Space::for_q(3).unwrap();
    let np = s.num_points();
    let cases = [
        assemble(&s, QuasiKind::SH2 { j: 1 }).unwrap(),
        PointSet::from_ids(np, [17]),
        PointSet::full(np),
        PointSet::empty(np),
    ];
    for set in cases {
        let sweep = weight_distribution(&s, &set);
        assert_eq!(sweep.weights, direct_weights(&s, &set), "|set| = {}", set.len());
        assert_eq!(sweep.total(), 6560);
    }
}

#[test]
fn quasi_weights_q3() {
    let s = Space::for_q(3).unwrap();
    let set = assemble(&s, QuasiKind::SH2 { j: 1 }).unwrap();
    let w = weight_distribution(&s, &set);
    // h = 28 on 540 planes and h = 37 on 280 planes.
    assert_eq!(w.weights, BTreeMap::from([(243, 2240), (252, 4320)]));
}

#[test]
fn single_point_and_full_space() {
    let s = Space::for_q(3).unwrap();
    let np = s.num_points();
    let w = weight_distribution(&s, &PointSet::from_ids(np, [0]));
    assert_eq!(w.weights, BTreeMap::from([(0, 8 * 91), (1, 8 * 729)]));
    let w = weight_distribution(&s, &PointSet::full(np));
    assert_eq!(w.weights, BTreeMap::from([(729, 6560)]));
}
