//! The Klein correspondence: lines of PG(3, q²) as points of the Klein
//! quadric 𝒦 ⊂ PG(5, q²), and the induced 6 × 6 action of PGL(2, q²).
//!
//! The displayed 6 × 6 matrix is not trusted as typed. A change of
//! coordinates B with B·∧²(A^q ⊗ A) ∝ M(A)·B is searched for on the group
//! generators and then confirmed on every group element; if none exists
//! the orbit lengths fall back to the images M(A)·R_ω directly.

use std::collections::HashSet;

use serde::Serialize;

use crate::gf::{Fe, Field};
use crate::group::{enumerate_group, generators, GroupKind, Mat2};
use crate::projgeom::{canonical6, klein_form, LineId, Space, Vec6, PLUECKER_PAIRS};

pub type Mat6 = [[Fe; 6]; 6];

/// The displayed matrix for A = [[a, b], [c, d]], Δ = ad − bc.
pub fn display_matrix(f: &Field, m: &Mat2) -> Mat6 {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let q = |x: Fe| f.frob(x);
    let mul = |x: Fe, y: Fe| f.mul(x, y);
    let neg = |x: Fe| f.neg(x);
    let delta = m.det(f);
    let dq = f.powu(delta, f.q() - 1);
    let dinv = f.inv(delta);
    let (aq, bq, cq, dq_) = (q(a), q(b), q(c), q(d));
    let z = Fe::ZERO;
    let mid1 = mul(f.sub(mul(f.norm(a), f.norm(d)), mul(f.norm(b), f.norm(c))), dinv);
    let mid2 = mul(f.sub(mul(mul(aq, b), mul(c, dq_)), mul(mul(a, bq), mul(cq, d))), dinv);
    [
        [mul(aq, aq), z, mul(aq, bq), neg(mul(aq, bq)), z, mul(bq, bq)],
        [z, mul(mul(a, a), dq), mul(mul(a, b), dq), mul(mul(a, b), dq), neg(mul(mul(b, b), dq)), z],
        [mul(aq, cq), mul(mul(a, c), dq), mid1, mid2, neg(mul(mul(b, d), dq)), mul(bq, dq_)],
        [neg(mul(aq, cq)), mul(mul(a, c), dq), mid2, mid1, neg(mul(mul(b, d), dq)), neg(mul(bq, dq_))],
        [z, neg(mul(mul(c, c), dq)), neg(mul(mul(c, d), dq)), neg(mul(mul(c, d), dq)), mul(mul(d, d), dq), z],
        [mul(cq, cq), z, mul(cq, dq_), neg(mul(cq, dq_)), z, mul(dq_, dq_)],
    ]
}

/// Second compound of the 4 × 4 matrix A^q ⊗ A in the order
/// (p01, p02, p03, p12, p13, p23).
pub fn compound(f: &Field, m: &Mat2) -> Mat6 {
    let k = m.kron(f);
    let mut out = [[Fe::ZERO; 6]; 6];
    for (r, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
        for (c, &(s, t)) in PLUECKER_PAIRS.iter().enumerate() {
            out[r][c] = f.sub(f.mul(k[i][s], k[j][t]), f.mul(k[i][t], k[j][s]));
        }
    }
    out
}

pub fn mat6_mul(f: &Field, x: &Mat6, y: &Mat6) -> Mat6 {
    let mut out = [[Fe::ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = Fe::ZERO;
            for k in 0..6 {
                acc = f.add(acc, f.mul(x[i][k], y[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn apply6(f: &Field, m: &Mat6, v: &Vec6) -> Vec6 {
    let mut out = [Fe::ZERO; 6];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(v).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
    }
    out
}

/// True iff x = λ·y for some nonzero λ.
pub fn proportional(f: &Field, x: &Mat6, y: &Mat6) -> bool {
    let xs: Vec<Fe> = x.iter().flatten().copied().collect();
    let ys: Vec<Fe> = y.iter().flatten().copied().collect();
    let Some(i) = ys.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    if xs[i].is_zero() {
        return false;
    }
    let lam = f.mul(xs[i], f.inv(ys[i]));
    xs.iter().zip(&ys).all(|(&a, &b)| a == f.mul(lam, b))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(f: &Field, rows: &mut [Vec<Fe>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let t = rows[i][c];
                for k in 0..ncols {
                    let sub = f.mul(t, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn null_space(f: &Field, mut rows: Vec<Vec<Fe>>, ncols: usize) -> Vec<Vec<Fe>> {
    let pivots = rref(f, &mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Fe::ZERO; ncols];
            v[fc] = Fe::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][fc]);
            }
            v
        })
        .collect()
}

pub fn is_invertible6(f: &Field, m: &Mat6) -> bool {
    let mut rows: Vec<Vec<Fe>> = m.iter().map(|r| r.to_vec()).collect();
    rref(f, &mut rows, 6).len() == 6
}

fn det6(f: &Field, m: &Mat6) -> Fe {
    let mut a = *m;
    let mut det = Fe::ONE;
    for c in 0..6 {
        let Some(p) = (c..6).find(|&r| !a[r][c].is_zero()) else {
            return Fe::ZERO;
        };
        if p != c {
            a.swap(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, a[c][c]);
        let inv = f.inv(a[c][c]);
        for r in c + 1..6 {
            let t = f.mul(a[r][c], inv);
            for k in c..6 {
                let sub = f.mul(t, a[c][k]);
                a[r][k] = f.sub(a[r][k], sub);
            }
        }
    }
    det
}

/// Which matrix of the pair the display is indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Identity,
    Transpose,
    Inverse,
    InverseTranspose,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Identity, Variant::Transpose, Variant::Inverse, Variant::InverseTranspose];

    pub fn apply(self, f: &Field, m: &Mat2) -> Mat2 {
        match self {
            Variant::Identity => *m,
            Variant::Transpose => m.transpose(),
            Variant::Inverse => m.inverse(f),
            Variant::InverseTranspose => m.inverse(f).transpose(),
        }
    }
}

/// A change of coordinates B from our Plücker vectors to the display's.
#[derive(Clone, Debug, Serialize)]
pub struct Convention {
    pub variant: Variant,
    pub b: Mat6,
}

/// Solutions B of B·C = μ·M·B for one choice of μ per generator.
fn intertwiners(f: &Field, pairs: &[(Mat6, Mat6, Fe)]) -> Vec<Mat6> {
    let mut rows = Vec::new();
    // Unknown B[i][k] at index 6i + k; equation for entry (i, j):
    // Σ_k B[i][k] C[k][j] − μ Σ_k M[i][k] B[k][j] = 0.
    for (c, m, mu) in pairs {
        for i in 0..6 {
            for j in 0..6 {
                let mut row = vec![Fe::ZERO; 36];
                for k in 0..6 {
                    row[6 * i + k] = f.add(row[6 * i + k], c[k][j]);
                    let t = f.mul(*mu, m[i][k]);
                    row[6 * k + j] = f.sub(row[6 * k + j], t);
                }
                rows.push(row);
            }
        }
    }
    null_space(f, rows, 36)
        .into_iter()
        .map(|v| {
            let mut b = [[Fe::ZERO; 6]; 6];
            for i in 0..6 {
                for k in 0..6 {
                    b[i][k] = v[6 * i + k];
                }
            }
            b
        })
        .collect()
}

fn sixth_roots(f: &Field, target: Fe) -> Vec<Fe> {
    f.elements().filter(|&x| !x.is_zero() && f.powu(x, 6) == target).collect()
}

/// Searches the four variants for an invertible intertwiner on the
/// generators of G, then confirms it on every element of G.
pub fn find_convention(f: &Field) -> Option<Convention> {
    let gens: Vec<Mat2> = generators(f, GroupKind::G).into_iter().map(|g| g.mat).collect();
    for variant in Variant::ALL {
        let data: Vec<(Mat6, Mat6, Vec<Fe>)> = gens
            .iter()
            .map(|g| {
                let c = compound(f, g);
                let m = display_matrix(f, &variant.apply(f, g));
                let dm = det6(f, &m);
                let mus = if dm.is_zero() { Vec::new() } else { sixth_roots(f, f.mul(det6(f, &c), f.inv(dm))) };
                (c, m, mus)
            })
            .collect();
        if data.iter().any(|d| d.2.is_empty()) {
            continue;
        }
        // Every combination of μ choices.
        let mut idx = vec![0usize; data.len()];
        loop {
            let pairs: Vec<(Mat6, Mat6, Fe)> = data.iter().zip(&idx).map(|(d, &i)| (d.0, d.1, d.2[i])).collect();
            let basis = intertwiners(f, &pairs);
            if let Some(b) = invertible_combination(f, &basis) {
                let conv = Convention { variant, b };
                if confirm(f, &conv) {
                    return Some(conv);
                }
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < data[pos].2.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    None
}

/// An invertible element of the span, trying the basis and then sums with
/// small coefficients.
fn invertible_combination(f: &Field, basis: &[Mat6]) -> Option<Mat6> {
    if basis.is_empty() {
        return None;
    }
    for b in basis {
        if is_invertible6(f, b) {
            return Some(*b);
        }
    }
    let coeffs: Vec<Fe> = f.elements().filter(|x| !x.is_zero()).take(4).collect();
    let n = basis.len().min(4);
    let mut idx = vec![0usize; n];
    loop {
        let mut m = [[Fe::ZERO; 6]; 6];
        for (t, &ci) in idx.iter().enumerate() {
            for i in 0..6 {
                for j in 0..6 {
                    m[i][j] = f.add(m[i][j], f.mul(coeffs[ci], basis[t][i][j]));
                }
            }
        }
        if is_invertible6(f, &m) {
            return Some(m);
        }
        let mut pos = 0;
        while pos < n {
            idx[pos] += 1;
            if idx[pos] < coeffs.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == n {
            return None;
        }
    }
}

/// B·C(A) ∝ M(variant(A))·B for every A in G.
pub fn confirm(f: &Field, conv: &Convention) -> bool {
    enumerate_group(f, GroupKind::G).iter().all(|g| {
        let lhs = mat6_mul(f, &conv.b, &compound(f, &g.mat));
        let rhs = mat6_mul(f, &display_matrix(f, &conv.variant.apply(f, &g.mat)), &conv.b);
        proportional(f, &lhs, &rhs)
    })
}

/// R_ω = (0, ω, 1, 0, 0, 1).
pub fn r_omega(omega: Fe) -> Vec6 {
    [Fe::ZERO, omega, Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE]
}

/// Klein image of a line in the display's coordinates.
pub fn klein_map(space: &Space, conv: &Convention, line: LineId) -> Vec6 {
    let f = space.field();
    canonical6(f, apply6(f, &conv.b, &space.pluecker(line))).expect("B is invertible")
}

/// The Klein relation transported to the display's coordinates.
pub fn on_klein_quadric(f: &Field, conv: &Convention, v: &Vec6) -> bool {
    let binv = inverse6(f, &conv.b);
    klein_form(f, &apply6(f, &binv, v)).is_zero()
}

pub fn inverse6(f: &Field, m: &Mat6) -> Mat6 {
    let mut rows: Vec<Vec<Fe>> = (0..6)
        .map(|i| {
            let mut r = m[i].to_vec();
            r.extend((0..6).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            r
        })
        .collect();
    rref(f, &mut rows, 6);
    let mut out = [[Fe::ZERO; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = rows[i][6 + j];
        }
    }
    out
}

/// |{M(A)·R_ω : A ∈ PGL(2, q²)}| with the display matrix applied directly.
pub fn klein_orbit_length(f: &Field, omega: Fe) -> usize {
    let r = r_omega(omega);
    let mut seen = HashSet::new();
    for g in enumerate_group(f, GroupKind::G) {
        if let Some(v) = canonical6(f, apply6(f, &display_matrix(f, &g.mat), &r)) {
            seen.insert(v);
        }
    }
    seen.len()
}

pub fn expected_orbit_length(q: u32, omega: Fe) -> usize {
    let q = q as usize;
    let full = q.pow(6) - q * q;
    if omega.is_zero() || omega == Fe::ONE {
        full
    } else {
        full / 2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KleinCensus {
    pub convention: Option<Convention>,
    pub r_on_quadric: bool,
    /// (ω code, orbit length, expected)
    pub orbits: Vec<(u8, usize, usize)>,
    /// Σ of orbit lengths against the number of points of 𝒦.
    pub covered: usize,
    pub quadric_points: usize,
}

pub fn klein_census(space: &Space) -> KleinCensus {
    let f = space.field();
    let convention = find_convention(f);
    let r_on_quadric = match &convention {
        Some(c) => f.elements().all(|w| on_klein_quadric(f, c, &r_omega(w))),
        None => false,
    };
    let orbits: Vec<(u8, usize, usize)> =
        f.elements().map(|w| (w.code(), klein_orbit_length(f, w), expected_orbit_length(f.q(), w))).collect();
    let covered = orbits.iter().map(|o| o.1).sum();
    KleinCensus { convention, r_on_quadric, orbits, covered, quadric_points: space.num_lines() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compound_is_multiplicative() {
        let f = Field::for_q(3).unwrap();
        let g = enumerate_group(&f, GroupKind::G);
        for x in g.iter().step_by(37) {
            for y in g.iter().step_by(53) {
                let xy = x.mat.mul(&f, &y.mat);
                let lhs = compound(&f, &xy);
                let rhs = mat6_mul(&f, &compound(&f, &x.mat), &compound(&f, &y.mat));
                assert!(proportional(&f, &lhs, &rhs));
            }
        }
    }

    #[test]
    fn compound_moves_pluecker_vectors() {
        let s = Space::for_q(3).unwrap();
        let f = s.field();
        let g = &enumerate_group(f, GroupKind::G)[17];
        for l in s.line_ids().step_by(97) {
            let (a, b) = s.line_basis(l);
            let img = s.line_through(g.apply(f, &a), g.apply(f, &b)).unwrap();
            let moved = canonical6(f, apply6(f, &compound(f, &g.mat), &s.pluecker(l))).unwrap();
            assert_eq!(moved, s.pluecker(img));
        }
    }

    #[test]
    fn convention_is_a_signed_permutation() {
        let f = Field::for_q(3).unwrap();
        let c = find_convention(&f).expect("the display is a projective representation");
        assert_eq!(c.variant, Variant::Identity);
        for row in c.b.iter() {
            let nz: Vec<&Fe> = row.iter().filter(|x| !x.is_zero()).collect();
            assert_eq!(nz.len(), 1);
            assert!(*nz[0] == Fe::ONE || *nz[0] == f.neg(Fe::ONE));
        }
    }

    #[test]
    fn klein_map_is_equivariant() {
        let s = Space::for_q(3).unwrap();
        let f = s.field();
        let c = find_convention(f).unwrap();
        for g in enumerate_group(f, GroupKind::G).iter().step_by(41) {
            let m = display_matrix(f, &g.mat);
            for l in s.line_ids().step_by(131) {
                let (a, b) = s.line_basis(l);
                let img = s.line_through(g.apply(f, &a), g.apply(f, &b)).unwrap();
                let moved = canonical6(f, apply6(f, &m, &klein_map(&s, &c, l))).unwrap();
                assert_eq!(moved, klein_map(&s, &c, img));
                assert!(on_klein_quadric(f, &c, &moved));
            }
        }
    }

    #[test]
    fn orbit_lengths_q3() {
        let s = Space::for_q(3).unwrap();
        let census = klein_census(&s);
        assert!(census.r_on_quadric);
        for (w, got, want) in census.orbits {
            assert_eq!(got, want, "omega code {w}");
        }
        assert_eq!(census.covered, 2 * 720 + 7 * 360);
    }
}
