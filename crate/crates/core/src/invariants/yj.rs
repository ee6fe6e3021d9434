//! The point sets 𝒴_j of PG(3, q²) and the net of quadrics of PG(7, q)
//! obtained from them by field reduction X = Y + 𝒊Z.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::gf::{Fe, Field};
use crate::invariants::tables::Formulas;
use crate::projgeom::{Space, Vec4};
use crate::varieties::{check_s_index, quadric_form};

/// ξ^j N(X1) + N(X2) + ξ^{i+j} N(X3) + ξ^i N(X4).
pub fn pen_value(f: &Field, i: u32, j: u32, x: &Vec4) -> Fe {
    let c = [f.xi_pow(j as i64), Fe::ONE, f.xi_pow((i + j) as i64), f.xi_pow(i as i64)];
    c.iter().zip(x).fold(Fe::ZERO, |acc, (&ci, &xi)| f.add(acc, f.mul(ci, f.norm(xi))))
}

/// Points of PG(3, q²) on the pencil base locus whose quadric value is a
/// nonzero square.
pub fn count_yj(space: &Space, i: u32, j: u32) -> Result<u64> {
    let q = space.q();
    check_s_index(q, i)?;
    check_s_index(q, j)?;
    let f = space.field();
    Ok(space
        .point_ids()
        .filter(|&p| {
            let x = space.coords(p);
            if !pen_value(f, i, j, &x).is_zero() {
                return false;
            }
            let qv = quadric_form(f, &x);
            !qv.is_zero() && f.is_square(qv)
        })
        .count() as u64)
}

/// Whether (i, j) is the pair with the large 𝒴_j count.
pub fn yj_is_exceptional(q: u32, i: u32, j: u32, src: Formulas) -> bool {
    let one = q % 4 == 1;
    // Printed: j = i for q ≡ −1 (mod 4), j = q+1−i for q ≡ 1 (mod 4).
    let same = one == (src == Formulas::Corrected);
    if same {
        j == i
    } else {
        j == q + 1 - i
    }
}

pub fn yj_formula(q: u32, i: u32, j: u32, src: Formulas) -> u64 {
    let exceptional = yj_is_exceptional(q, i, j, src);
    let q = q as u64;
    if exceptional {
        (q + 1) * (q * q * q + q * q - q + 1) / 2
    } else {
        (q * q - 1) * (q * q - 1) / 2
    }
}

/// An 8 × 8 symmetric bilinear Gram matrix over GF(q), coordinates ordered
/// (Y1, Z1, Y2, Z2, Y3, Z3, Y4, Z4). The quadratic form is x^T B x / 2.
pub type Sym8 = [[Fe; 8]; 8];

/// Q₁, H₁^φ and H₂^φ.
pub fn net_generators(f: &Field, i: u32, j: u32) -> [Sym8; 3] {
    let s = f.s();
    let two = f.from_int(2);
    let (xj0, xj1) = f.decompose(f.xi_pow(j as i64));
    let (xi0, xi1) = f.decompose(f.xi_pow(i as i64));
    let (x30, x31) = f.decompose(f.xi_pow((i + j) as i64));

    let mut q1 = [[Fe::ZERO; 8]; 8];
    let one = Fe::ONE;
    let m1 = f.neg(one);
    for (a, b, v) in [(0, 7, one), (6, 1, one), (2, 5, m1), (4, 3, m1)] {
        q1[a][b] = v;
        q1[b][a] = v;
    }

    // Each c·N(Y + 𝒊Z) = c·Y² − s·c·Z² contributes 2c and −2sc.
    let diag = |coef: [Fe; 4]| {
        let mut m = [[Fe::ZERO; 8]; 8];
        for (k, &c) in coef.iter().enumerate() {
            m[2 * k][2 * k] = f.mul(two, c);
            m[2 * k + 1][2 * k + 1] = f.neg(f.mul(f.mul(two, s), c));
        }
        m
    };
    let h1 = diag([xj0, one, x30, xi0]);
    let h2 = diag([xj1, Fe::ZERO, x31, xi1]);
    [q1, h1, h2]
}

pub fn combine(f: &Field, gens: &[Sym8; 3], c: [Fe; 3]) -> Sym8 {
    let mut m = [[Fe::ZERO; 8]; 8];
    for (g, &cg) in gens.iter().zip(&c) {
        for r in 0..8 {
            for k in 0..8 {
                m[r][k] = f.add(m[r][k], f.mul(cg, g[r][k]));
            }
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QuadricType {
    Hyperbolic,
    Elliptic,
    Parabolic,
}

/// Rank and type of a symmetric matrix over GF(q) by congruence
/// diagonalization. Even rank 2m is hyperbolic iff (−1)^m times the
/// product of the nonzero diagonal entries is a square.
pub fn classify_quadric(f: &Field, m: &Sym8) -> (u32, QuadricType) {
    let mut a = *m;
    let n = 8;
    let mut diag = Vec::new();
    let mut k = 0;
    while k < n {
        // Bring a nonzero diagonal entry to (k, k).
        let piv = (k..n).find(|&r| !a[r][r].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|r| (r + 1..n).map(move |c| (r, c))).find(|&(r, c)| !a[r][c].is_zero());
                match off {
                    None => break,
                    Some((r, c)) => {
                        // row_r += row_c, col_r += col_c gives a[r][r] = 2a[r][c] + a[c][c].
                        for t in 0..n {
                            a[r][t] = f.add(a[r][t], a[c][t]);
                        }
                        for t in 0..n {
                            a[t][r] = f.add(a[t][r], a[t][c]);
                        }
                        r
                    }
                }
            }
        };
        a.swap(k, piv);
        for row in a.iter_mut() {
            row.swap(k, piv);
        }
        let d = a[k][k];
        let di = f.inv(d);
        for r in k + 1..n {
            let factor = f.mul(a[r][k], di);
            if factor.is_zero() {
                continue;
            }
            for t in k..n {
                let v = f.mul(factor, a[k][t]);
                a[r][t] = f.sub(a[r][t], v);
            }
        }
        for r in k + 1..n {
            a[k][r] = Fe::ZERO;
            a[r][k] = Fe::ZERO;
        }
        diag.push(d);
        k += 1;
    }
    let rank = diag.len() as u32;
    if rank % 2 == 1 {
        return (rank, QuadricType::Parabolic);
    }
    let mut disc = diag.iter().fold(Fe::ONE, |acc, &d| f.mul(acc, d));
    if (rank / 2) % 2 == 1 {
        disc = f.neg(disc);
    }
    let kind = if f.is_square_in_subfield(disc) { QuadricType::Hyperbolic } else { QuadricType::Elliptic };
    (rank, kind)
}

/// Counts of net members by (rank, type), keyed like "rank6 elliptic".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NetCensus {
    pub members: usize,
    pub counts: BTreeMap<String, usize>,
}

impl NetCensus {
    fn add(&mut self, rank: u32, kind: QuadricType, n: usize) {
        self.members += n;
        *self.counts.entry(census_key(rank, kind)).or_insert(0) += n;
    }

    pub fn rank_count(&self, rank: u32) -> usize {
        let prefix = format!("rank{rank} ");
        self.counts.iter().filter(|(k, _)| k.starts_with(&prefix)).map(|(_, &v)| v).sum()
    }
}

pub fn census_key(rank: u32, kind: QuadricType) -> String {
    let k = match kind {
        QuadricType::Hyperbolic => "hyperbolic",
        QuadricType::Elliptic => "elliptic",
        QuadricType::Parabolic => "parabolic",
    };
    format!("rank{rank} {k}")
}

/// Nonzero vectors of GF(q)^n with first nonzero coordinate 1.
pub fn projective_points(f: &Field, n: usize) -> Vec<Vec<Fe>> {
    let sub: Vec<Fe> = f.subfield().collect();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = sub.len().pow(free as u32);
        for mut idx in 0..total {
            let mut v = vec![Fe::ZERO; n];
            v[lead] = Fe::ONE;
            for slot in v[lead + 1..].iter_mut() {
                *slot = sub[idx % sub.len()];
                idx /= sub.len();
            }
            out.push(v);
        }
    }
    out
}

pub fn net_rank_census(f: &Field, i: u32, j: u32) -> Result<NetCensus> {
    check_s_index(f.q(), i)?;
    check_s_index(f.q(), j)?;
    let gens = net_generators(f, i, j);
    let mut census = NetCensus::default();
    for c in projective_points(f, 3) {
        let m = combine(f, &gens, [c[0], c[1], c[2]]);
        let (r, t) = classify_quadric(f, &m);
        census.add(r, t, 1);
    }
    Ok(census)
}

/// The census predicted for (i, j).
pub fn net_expected(q: u32, i: u32, j: u32, src: Formulas) -> NetCensus {
    let mut c = NetCensus::default();
    let generic = j != i && j != q + 1 - i;
    let exceptional = yj_is_exceptional(q, i, j, src);
    let q = q as usize;
    if generic {
        c.add(6, QuadricType::Elliptic, 2 * (q + 1));
        c.add(8, QuadricType::Hyperbolic, q * q - q - 1);
    } else if exceptional {
        c.add(4, QuadricType::Hyperbolic, 1);
        c.add(6, QuadricType::Elliptic, q + 1);
        c.add(8, QuadricType::Hyperbolic, q * q - 1);
    } else {
        c.add(4, QuadricType::Hyperbolic, 1);
        c.add(6, QuadricType::Elliptic, 3 * q + 1);
        c.add(8, QuadricType::Hyperbolic, q * q - 2 * q - 1);
    }
    c
}

/// Points of a quadric of PG(7, q) with the given rank and type.
pub fn quadric_point_count(q: u64, rank: u32, kind: QuadricType) -> u64 {
    let vertex = (q.pow(8 - rank) - 1) / (q - 1);
    let m = rank / 2;
    let base = match kind {
        QuadricType::Hyperbolic => (q.pow(m) - 1) * (q.pow(m - 1) + 1) / (q - 1),
        QuadricType::Elliptic => (q.pow(m) + 1) * (q.pow(m - 1) - 1) / (q - 1),
        QuadricType::Parabolic => (q.pow(2 * m) - 1) / (q - 1),
    };
    vertex + q.pow(8 - rank) * base
}

/// |ℬ| from the member point counts: every point off ℬ lies on exactly
/// q + 1 members of the net.
pub fn base_locus_from_net(f: &Field, i: u32, j: u32) -> u64 {
    let q = f.q() as u64;
    let gens = net_generators(f, i, j);
    let total: u64 = projective_points(f, 3)
        .into_iter()
        .map(|c| {
            let (r, t) = classify_quadric(f, &combine(f, &gens, [c[0], c[1], c[2]]));
            quadric_point_count(q, r, t)
        })
        .sum();
    let space = (q.pow(8) - 1) / (q - 1);
    (total - space * (q + 1)) / (q * q)
}

/// Points of PG(7, q) on all three generators of the net.
pub fn base_locus_size(f: &Field, i: u32, j: u32) -> u64 {
    let gens = net_generators(f, i, j);
    let on = |m: &Sym8, x: &[Fe]| {
        let mut acc = Fe::ZERO;
        for r in 0..8 {
            if x[r].is_zero() {
                continue;
            }
            let mut row = Fe::ZERO;
            for k in 0..8 {
                row = f.add(row, f.mul(m[r][k], x[k]));
            }
            acc = f.add(acc, f.mul(x[r], row));
        }
        acc.is_zero()
    };
    projective_points(f, 8).iter().filter(|x| gens.iter().all(|g| on(g, x))).count() as u64
}
