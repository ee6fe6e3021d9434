//! The groups K ≅ PSL(2, q²), G ≅ PGL(2, q²) and G′ = ⟨G, ι⟩ acting on
//! PG(3, q²) through A ↦ A^q ⊗ A.
//!
//! Points are column vectors: the image of P under A is (A^q ⊗ A)·P. With
//! this convention (s, t)^q ⊗ (s, t) goes to (A(s, t))^q ⊗ A(s, t), so the
//! curve 𝒪 is carried to itself point by point as PG(1, q²) is by A. Planes
//! transform by the contragredient (A^{-T})^q ⊗ A^{-T}.
//!
//! Orbits come from union-find over generator permutations of the point
//! indices. Stabilizers and merge witnesses come from a scan of the whole
//! group, which is at most 2·q²(q⁴−1) elements.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::projgeom::{PointId, PointSet, Space, Vec4};
use crate::varieties::{reps, Classifier, PointRole};

pub type Mat4 = [[Fe; 4]; 4];

/// A 2 × 2 matrix over GF(q²), read row by row as [[a, b], [c, d]].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: Fe::ONE, b: Fe::ZERO, c: Fe::ZERO, d: Fe::ONE };

    /// Rejects singular matrices.
    pub fn new(f: &Field, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Mat2> {
        let m = Mat2 { a, b, c, d };
        if m.det(f).is_zero() {
            Err(Error::SingularMatrix)
        } else {
            Ok(m)
        }
    }

    pub fn det(&self, f: &Field) -> Fe {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    /// Whether the projective class lies in K, i.e. det is a square.
    pub fn in_k(&self, f: &Field) -> bool {
        f.is_square(self.det(f))
    }

    /// Scalar multiple whose first nonzero entry is 1.
    pub fn canonical(&self, f: &Field) -> Mat2 {
        let lead = if self.a.is_zero() { self.b } else { self.a };
        let s = f.inv(lead);
        self.scale(f, s)
    }

    pub fn scale(&self, f: &Field, s: Fe) -> Mat2 {
        Mat2 { a: f.mul(self.a, s), b: f.mul(self.b, s), c: f.mul(self.c, s), d: f.mul(self.d, s) }
    }

    pub fn mul(&self, f: &Field, o: &Mat2) -> Mat2 {
        Mat2 {
            a: f.add(f.mul(self.a, o.a), f.mul(self.b, o.c)),
            b: f.add(f.mul(self.a, o.b), f.mul(self.b, o.d)),
            c: f.add(f.mul(self.c, o.a), f.mul(self.d, o.c)),
            d: f.add(f.mul(self.c, o.b), f.mul(self.d, o.d)),
        }
    }

    /// The exact inverse.
    pub fn inverse(&self, f: &Field) -> Mat2 {
        let di = f.inv(self.det(f));
        Mat2 { a: self.d, b: f.neg(self.b), c: f.neg(self.c), d: self.a }.scale(f, di)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    pub fn frob(&self, f: &Field) -> Mat2 {
        Mat2 { a: f.frob(self.a), b: f.frob(self.b), c: f.frob(self.c), d: f.frob(self.d) }
    }

    pub fn rows(&self) -> [[Fe; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// A^q ⊗ A, with coordinate index 2·r + s for the pair (r, s).
    pub fn kron(&self, f: &Field) -> Mat4 {
        let x = self.frob(f).rows();
        let y = self.rows();
        let mut m = [[Fe::ZERO; 4]; 4];
        for (i1, xr) in x.iter().enumerate() {
            for (i2, yr) in y.iter().enumerate() {
                for (j1, &xv) in xr.iter().enumerate() {
                    for (j2, &yv) in yr.iter().enumerate() {
                        m[2 * i1 + i2][2 * j1 + j2] = f.mul(xv, yv);
                    }
                }
            }
        }
        m
    }

    /// All canonical nonsingular matrices, in a fixed order.
    pub fn all(f: &Field) -> Vec<Mat2> {
        let els: Vec<Fe> = f.elements().collect();
        let mut out = Vec::with_capacity(pgl_order(f.q()) as usize);
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    let m = Mat2 { a: Fe::ONE, b, c, d };
                    if !m.det(f).is_zero() {
                        out.push(m);
                    }
                }
            }
        }
        for &c in &els[1..] {
            for &d in &els {
                out.push(Mat2 { a: Fe::ZERO, b: Fe::ONE, c, d });
            }
        }
        out
    }
}

pub fn apply4(f: &Field, m: &Mat4, x: &Vec4) -> Vec4 {
    let mut y = [Fe::ZERO; 4];
    for (yi, row) in y.iter_mut().zip(m.iter()) {
        let mut acc = Fe::ZERO;
        for (r, xv) in row.iter().zip(x.iter()) {
            acc = f.add(acc, f.mul(*r, *xv));
        }
        *yi = acc;
    }
    y
}

/// |PGL(2, q²)| = q²(q⁴ − 1).
pub fn pgl_order(q: u32) -> u64 {
    let q2 = (q as u64) * (q as u64);
    q2 * (q2 * q2 - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    K,
    G,
    GPrime,
}

impl GroupKind {
    pub fn order(self, q: u32) -> u64 {
        match self {
            GroupKind::K => pgl_order(q) / 2,
            GroupKind::G => pgl_order(q),
            GroupKind::GPrime => 2 * pgl_order(q),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::K => "K",
            GroupKind::G => "G",
            GroupKind::GPrime => "Gp",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupKind> {
        match s {
            "K" | "k" => Ok(GroupKind::K),
            "G" | "g" => Ok(GroupKind::G),
            "Gp" | "gp" | "G'" => Ok(GroupKind::GPrime),
            _ => Err(Error::Invalid(format!("unknown group {s:?}, expected K, G or Gp"))),
        }
    }
}

/// A collineation x ↦ ι^e (A^q ⊗ A) x, where ι swaps X2 and X3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElem {
    pub mat: Mat2,
    pub iota: bool,
}

impl GroupElem {
    pub fn from_mat(mat: Mat2) -> GroupElem {
        GroupElem { mat, iota: false }
    }

    pub fn iota() -> GroupElem {
        GroupElem { mat: Mat2::IDENTITY, iota: true }
    }

    pub fn matrix(&self, f: &Field) -> Mat4 {
        let mut m = self.mat.kron(f);
        if self.iota {
            m.swap(1, 2);
        }
        m
    }

    /// Matrix acting on dual coordinates of planes.
    pub fn plane_matrix(&self, f: &Field) -> Mat4 {
        let mut m = self.mat.inverse(f).transpose().kron(f);
        if self.iota {
            m.swap(1, 2);
        }
        m
    }

    pub fn apply(&self, f: &Field, x: &Vec4) -> Vec4 {
        apply4(f, &self.matrix(f), x)
    }
}

/// Every element of the group, duplicate free.
pub fn enumerate_group(f: &Field, kind: GroupKind) -> Vec<GroupElem> {
    let mats = Mat2::all(f);
    match kind {
        GroupKind::K => mats.into_iter().filter(|m| m.in_k(f)).map(GroupElem::from_mat).collect(),
        GroupKind::G => mats.into_iter().map(GroupElem::from_mat).collect(),
        GroupKind::GPrime => {
            mats.into_iter().flat_map(|mat| [GroupElem { mat, iota: false }, GroupElem { mat, iota: true }]).collect()
        }
    }
}

/// u(1), w and diag(ξ, ξ⁻¹) generate SL(2, q²); G adds diag(1, ξ) and G′
/// adds ι.
pub fn generators(f: &Field, kind: GroupKind) -> Vec<GroupElem> {
    let xi = f.xi();
    let mut gens = vec![
        Mat2 { a: Fe::ONE, b: Fe::ONE, c: Fe::ZERO, d: Fe::ONE },
        Mat2 { a: Fe::ZERO, b: Fe::ONE, c: f.neg(Fe::ONE), d: Fe::ZERO },
        Mat2 { a: xi, b: Fe::ZERO, c: Fe::ZERO, d: f.inv(xi) },
    ];
    if kind != GroupKind::K {
        gens.push(Mat2 { a: Fe::ONE, b: Fe::ZERO, c: Fe::ZERO, d: xi });
    }
    let mut out: Vec<GroupElem> = gens.into_iter().map(GroupElem::from_mat).collect();
    if kind == GroupKind::GPrime {
        out.push(GroupElem::iota());
    }
    out
}

/// Orbit labels for a group given by permutations of 0..n. Labels are
/// numbered by least member.
pub fn orbit_partition(n: usize, perms: &[Vec<u32>]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for perm in perms {
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi as usize] = lo;
            }
        }
    }
    let mut label = vec![u32::MAX; n];
    let mut out = vec![0u32; n];
    let mut next = 0;
    for i in 0..n {
        let r = find(&mut parent, i as u32) as usize;
        if label[r] == u32::MAX {
            label[r] = next;
            next += 1;
        }
        out[i] = label[r];
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub label: String,
    pub roles: Vec<PointRole>,
    pub size: usize,
    pub rep: PointId,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitDecomposition {
    pub kind: GroupKind,
    /// Orbit index of each point.
    #[serde(skip)]
    pub orbit_of: Vec<u32>,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }

    pub fn members(&self, idx: usize) -> impl Iterator<Item = PointId> + '_ {
        self.orbit_of.iter().enumerate().filter(move |(_, &o)| o as usize == idx).map(|(p, _)| p as PointId)
    }

    pub fn orbit_set(&self, idx: usize) -> PointSet {
        PointSet::from_ids(self.orbit_of.len(), self.members(idx))
    }

    /// Index of the orbit containing the given role.
    pub fn find_role(&self, role: PointRole) -> Option<usize> {
        self.orbits.iter().position(|o| o.roles.contains(&role))
    }
}

/// Named points tried, in order, as orbit representatives.
fn candidate_reps(f: &Field) -> Vec<Vec4> {
    let q = f.q();
    let mut v = vec![[Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE], reps::u(f), reps::s1(f), reps::s2(f)];
    v.extend((1..=q).map(|j| reps::r(f, j)));
    v.extend((1..q.saturating_sub(1)).map(|k| reps::q(f, k)));
    v.push(reps::t1(f));
    v.push(reps::t2(f));
    v.extend([0, q - 1].map(|k| reps::q(f, k)));
    v
}

/// A group acting on the points of a fixed space, with cached generator
/// permutations.
pub struct Action<'a> {
    space: &'a Space,
    kind: GroupKind,
    gens: Vec<GroupElem>,
    perms: Vec<Vec<PointId>>,
}

impl<'a> Action<'a> {
    pub fn new(space: &'a Space, kind: GroupKind) -> Action<'a> {
        let f = space.field();
        let gens = generators(f, kind);
        let perms = gens.iter().map(|g| point_permutation(space, g)).collect();
        Action { space, kind, gens, perms }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn space(&self) -> &Space {
        self.space
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.gens
    }

    pub fn permutations(&self) -> &[Vec<PointId>] {
        &self.perms
    }

    pub fn order(&self) -> u64 {
        self.kind.order(self.space.q())
    }

    /// Breadth-first closure of one point.
    pub fn orbit_of(&self, p: PointId) -> PointSet {
        let mut seen = PointSet::empty(self.space.num_points());
        seen.insert(p);
        let mut queue = vec![p];
        while let Some(x) = queue.pop() {
            for perm in &self.perms {
                let y = perm[x as usize];
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    /// True iff every generator maps the set into itself.
    pub fn is_invariant(&self, set: &PointSet) -> bool {
        self.perms.iter().all(|perm| set.iter().all(|p| set.contains(perm[p as usize])))
    }

    pub fn decomposition(&self) -> OrbitDecomposition {
        let space = self.space;
        let f = space.field();
        let raw = orbit_partition(space.num_points(), &self.perms);
        let count = raw.iter().max().map_or(0, |&m| m as usize + 1);
        let classifier = Classifier::new(f);
        let roles = classifier.classify_all(space);
        let mut role_sets: Vec<Vec<PointRole>> = vec![Vec::new(); count];
        let mut sizes = vec![0usize; count];
        for (p, &o) in raw.iter().enumerate() {
            sizes[o as usize] += 1;
            let rs = &mut role_sets[o as usize];
            if !rs.contains(&roles[p]) {
                rs.push(roles[p]);
            }
        }
        for rs in &mut role_sets {
            rs.sort();
        }
        let cands: Vec<PointId> = candidate_reps(f).iter().map(|v| space.id_of(v)).collect();
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by(|&a, &b| role_sets[a].cmp(&role_sets[b]));
        let mut remap = vec![0u32; count];
        let mut orbits = Vec::with_capacity(count);
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u32;
            let rep = cands
                .iter()
                .copied()
                .find(|&c| raw[c as usize] as usize == old)
                .unwrap_or_else(|| raw.iter().position(|&o| o as usize == old).unwrap() as PointId);
            let label = role_sets[old].iter().map(|r| r.label(space.q())).collect::<Vec<_>>().join("+");
            orbits.push(Orbit { label, roles: role_sets[old].clone(), size: sizes[old], rep });
        }
        let orbit_of = raw.iter().map(|&o| remap[o as usize]).collect();
        OrbitDecomposition { kind: self.kind, orbit_of, orbits }
    }

    /// Number of group elements fixing the point, by a full scan.
    pub fn stabilizer_order(&self, p: PointId) -> u64 {
        let space = self.space;
        let f = space.field();
        let x = space.coords(p);
        enumerate_group(f, self.kind).par_iter().filter(|g| space.id_of(&g.apply(f, &x)) == p).count() as u64
    }

    /// First element, in enumeration order, mapping `from` to `to`.
    pub fn witness(&self, from: PointId, to: PointId) -> Option<GroupElem> {
        let space = self.space;
        let f = space.field();
        let x = space.coords(from);
        enumerate_group(f, self.kind).into_iter().find(|g| space.id_of(&g.apply(f, &x)) == to)
    }
}

pub fn point_permutation(space: &Space, g: &GroupElem) -> Vec<PointId> {
    let f = space.field();
    let m = g.matrix(f);
    space.point_ids().map(|p| space.id_of(&apply4(f, &m, &space.coords(p)))).collect()
}

pub fn plane_permutation(space: &Space, g: &GroupElem) -> Vec<PointId> {
    let f = space.field();
    let m = g.plane_matrix(f);
    space.point_ids().map(|p| space.id_of(&apply4(f, &m, &space.coords(p)))).collect()
}
