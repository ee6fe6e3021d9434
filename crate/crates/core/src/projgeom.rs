//! Points, planes and lines of PG(3, q²) with dense integer indices.
//!
//! A point is stored as its canonical representative: the first nonzero
//! coordinate is 1. Its index is the block offset of the leading position
//! plus the remaining coordinates read as base-q² digits (using field
//! codes). Planes reuse the same scheme on dual coordinates, so a plane id
//! and a point id live in the same range and the incidence relation
//! `Σ u_i x_i = 0` is symmetric between them.
//!
//! Lines are indexed through the reduced row echelon form of a 2 × 4 basis
//! matrix. The two echelon rows are already canonical points, and every
//! other point of the line is `row1 + λ·row2`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};

pub type Vec4 = [Fe; 4];
pub type Vec6 = [Fe; 6];
pub type PointId = u32;
pub type PlaneId = u32;
pub type LineId = u32;

/// Pivot columns and free entries of each echelon pattern, in index order.
const LINE_PATTERNS: [(usize, usize, &[usize], &[usize]); 6] = [
    (0, 1, &[2, 3], &[2, 3]),
    (0, 2, &[1, 3], &[3]),
    (0, 3, &[1, 2], &[]),
    (1, 2, &[3], &[3]),
    (1, 3, &[2], &[]),
    (2, 3, &[], &[]),
];

/// Index pairs of the six Plücker coordinates.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone)]
pub struct Space {
    field: Field,
    q2: u32,
    offsets: [u32; 4],
    npoints: u32,
    line_offsets: [u32; 6],
    nlines: u32,
    points: Vec<Vec4>,
    /// Canonical points of PG(2, q²), used to walk the points of a plane.
    plane_frame: Vec<[Fe; 3]>,
}

impl Space {
    pub fn new(field: Field) -> Space {
        let q2 = field.q2();
        let offsets = [0, q2 * q2 * q2, q2 * q2 * q2 + q2 * q2, q2 * q2 * q2 + q2 * q2 + q2];
        let npoints = offsets[3] + 1;
        let mut line_offsets = [0u32; 6];
        let mut acc = 0;
        for (slot, pat) in line_offsets.iter_mut().zip(LINE_PATTERNS.iter()) {
            *slot = acc;
            acc += q2.pow((pat.2.len() + pat.3.len()) as u32);
        }
        let nlines = acc;
        let mut space =
            Space { field, q2, offsets, npoints, line_offsets, nlines, points: Vec::new(), plane_frame: Vec::new() };
        space.points = (0..npoints).map(|i| space.decode_point(i)).collect();
        let q2u = q2 as usize;
        let mut frame = Vec::with_capacity(q2u * q2u + q2u + 1);
        for a in 0..q2 {
            for b in 0..q2 {
                frame.push([Fe::ONE, Fe::from_code(a as u8), Fe::from_code(b as u8)]);
            }
        }
        for b in 0..q2 {
            frame.push([Fe::ZERO, Fe::ONE, Fe::from_code(b as u8)]);
        }
        frame.push([Fe::ZERO, Fe::ZERO, Fe::ONE]);
        space.plane_frame = frame;
        space
    }

    pub fn for_q(q: u32) -> Result<Space> {
        Ok(Space::new(Field::for_q(q)?))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    #[inline]
    pub fn q2(&self) -> u32 {
        self.q2
    }
    #[inline]
    pub fn num_points(&self) -> usize {
        self.npoints as usize
    }
    #[inline]
    pub fn num_planes(&self) -> usize {
        self.npoints as usize
    }
    #[inline]
    pub fn num_lines(&self) -> usize {
        self.nlines as usize
    }
    /// Number of points on a plane (and of planes through a point).
    pub fn plane_size(&self) -> usize {
        self.plane_frame.len()
    }
    pub fn line_size(&self) -> usize {
        self.q2 as usize + 1
    }

    pub fn point_ids(&self) -> std::ops::Range<PointId> {
        0..self.npoints
    }
    pub fn line_ids(&self) -> std::ops::Range<LineId> {
        0..self.nlines
    }

    /// Canonical coordinates of a point (or dual coordinates of a plane).
    #[inline]
    pub fn coords(&self, id: PointId) -> Vec4 {
        self.points[id as usize]
    }

    fn decode_point(&self, id: u32) -> Vec4 {
        let pos = (0..4).rev().find(|&k| id >= self.offsets[k]).unwrap();
        let mut rest = id - self.offsets[pos];
        let mut v = [Fe::ZERO; 4];
        v[pos] = Fe::ONE;
        for k in (pos + 1..4).rev() {
            v[k] = Fe::from_code((rest % self.q2) as u8);
            rest /= self.q2;
        }
        v
    }

    /// Scales `v` so that its first nonzero coordinate is 1.
    pub fn canonicalize(&self, v: Vec4) -> Result<Vec4> {
        let lead = v.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        let s = self.field.inv(v[lead]);
        Ok(v.map(|x| self.field.mul(x, s)))
    }

    /// Index of a vector that is already canonical.
    #[inline]
    pub fn index_canonical(&self, v: &Vec4) -> PointId {
        let pos = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
        debug_assert_eq!(v[pos], Fe::ONE);
        let mut idx = 0u32;
        for x in &v[pos + 1..] {
            idx = idx * self.q2 + x.code() as u32;
        }
        self.offsets[pos] + idx
    }

    pub fn point_id(&self, v: Vec4) -> Result<PointId> {
        Ok(self.index_canonical(&self.canonicalize(v)?))
    }

    /// Index of a nonzero vector; panics on the zero vector.
    #[inline]
    pub fn id_of(&self, v: &Vec4) -> PointId {
        let f = &self.field;
        let pos = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
        let s = f.inv(v[pos]);
        let mut idx = 0u32;
        for x in &v[pos + 1..] {
            idx = idx * self.q2 + f.mul(*x, s).code() as u32;
        }
        self.offsets[pos] + idx
    }

    #[inline]
    pub fn dot(&self, u: &Vec4, x: &Vec4) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for k in 0..4 {
            acc = f.add(acc, f.mul(u[k], x[k]));
        }
        acc
    }

    #[inline]
    pub fn incident(&self, point: PointId, plane: PlaneId) -> bool {
        self.dot(&self.coords(plane), &self.coords(point)).is_zero()
    }

    /// Calls `visit` with every point on the plane with dual coordinates `u`.
    /// Because incidence is symmetric this also walks the planes through a
    /// point.
    pub fn for_each_on_plane(&self, u: &Vec4, mut visit: impl FnMut(PointId)) {
        let f = &self.field;
        let lead = u.iter().position(|x| !x.is_zero()).expect("nonzero plane");
        let inv = f.neg(f.inv(u[lead]));
        let mut free = [0usize; 3];
        let mut n = 0;
        for k in 0..4 {
            if k != lead {
                free[n] = k;
                n += 1;
            }
        }
        let coef = free.map(|k| f.mul(u[k], inv));
        for w in &self.plane_frame {
            let mut x = [Fe::ZERO; 4];
            let mut solved = Fe::ZERO;
            for m in 0..3 {
                x[free[m]] = w[m];
                solved = f.add(solved, f.mul(coef[m], w[m]));
            }
            x[lead] = solved;
            visit(self.id_of(&x));
        }
    }

    pub fn plane_points(&self, plane: PlaneId) -> Vec<PointId> {
        let mut out = Vec::with_capacity(self.plane_size());
        self.for_each_on_plane(&self.coords(plane), |p| out.push(p));
        out
    }

    pub fn planes_through(&self, point: PointId) -> Vec<PlaneId> {
        self.plane_points(point)
    }

    // ---- lines ----

    /// Reduced echelon basis of the span of `a` and `b`.
    pub fn echelon(&self, a: Vec4, b: Vec4) -> Result<(Vec4, Vec4, usize, usize)> {
        let f = &self.field;
        let (mut r1, mut r2) = (a, b);
        let c1 = (0..4).find(|&k| !r1[k].is_zero() || !r2[k].is_zero()).ok_or(Error::ZeroVector)?;
        if r1[c1].is_zero() {
            std::mem::swap(&mut r1, &mut r2);
        }
        let s = f.inv(r1[c1]);
        r1 = r1.map(|x| f.mul(x, s));
        let t = r2[c1];
        for k in 0..4 {
            r2[k] = f.sub(r2[k], f.mul(t, r1[k]));
        }
        let c2 = (c1 + 1..4).find(|&k| !r2[k].is_zero()).ok_or(Error::CoincidentPoints)?;
        let s = f.inv(r2[c2]);
        r2 = r2.map(|x| f.mul(x, s));
        let t = r1[c2];
        for k in 0..4 {
            r1[k] = f.sub(r1[k], f.mul(t, r2[k]));
        }
        Ok((r1, r2, c1, c2))
    }

    /// The line spanned by two independent vectors.
    pub fn line_through(&self, a: Vec4, b: Vec4) -> Result<LineId> {
        let (r1, r2, c1, c2) = self.echelon(a, b)?;
        let pat = LINE_PATTERNS.iter().position(|p| p.0 == c1 && p.1 == c2).unwrap();
        let (_, _, f1, f2) = LINE_PATTERNS[pat];
        let mut idx = 0u32;
        for &k in f1 {
            idx = idx * self.q2 + r1[k].code() as u32;
        }
        for &k in f2 {
            idx = idx * self.q2 + r2[k].code() as u32;
        }
        Ok(self.line_offsets[pat] + idx)
    }

    pub fn line_id(&self, p: PointId, q: PointId) -> Result<LineId> {
        if p == q {
            return Err(Error::CoincidentPoints);
        }
        self.line_through(self.coords(p), self.coords(q))
    }

    /// The echelon basis rows of a line; both are canonical points.
    pub fn line_basis(&self, line: LineId) -> (Vec4, Vec4) {
        let pat = (0..6).rev().find(|&k| line >= self.line_offsets[k]).unwrap();
        let (c1, c2, f1, f2) = LINE_PATTERNS[pat];
        let mut rest = line - self.line_offsets[pat];
        let mut r1 = [Fe::ZERO; 4];
        let mut r2 = [Fe::ZERO; 4];
        r1[c1] = Fe::ONE;
        r2[c2] = Fe::ONE;
        for &k in f2.iter().rev() {
            r2[k] = Fe::from_code((rest % self.q2) as u8);
            rest /= self.q2;
        }
        for &k in f1.iter().rev() {
            r1[k] = Fe::from_code((rest % self.q2) as u8);
            rest /= self.q2;
        }
        (r1, r2)
    }

    /// Visits the q² + 1 points of a line: `row2` first, then `row1 + λ row2`
    /// for λ in code order.
    pub fn for_each_on_line(&self, line: LineId, mut visit: impl FnMut(PointId)) {
        let f = &self.field;
        let (r1, r2) = self.line_basis(line);
        visit(self.index_canonical(&r2));
        for lam in f.elements() {
            let mut x = r1;
            for k in 0..4 {
                x[k] = f.add(x[k], f.mul(lam, r2[k]));
            }
            visit(self.index_canonical(&x));
        }
    }

    pub fn line_points(&self, line: LineId) -> Vec<PointId> {
        let mut out = Vec::with_capacity(self.line_size());
        self.for_each_on_line(line, |p| out.push(p));
        out
    }

    /// True iff every point of the line lies on the plane.
    pub fn line_in_plane(&self, line: LineId, plane: PlaneId) -> bool {
        let (r1, r2) = self.line_basis(line);
        let u = self.coords(plane);
        self.dot(&u, &r1).is_zero() && self.dot(&u, &r2).is_zero()
    }

    /// Basis of the solutions of `u1·x = u2·x = 0` for independent u1, u2.
    pub fn null_space(&self, u1: Vec4, u2: Vec4) -> Result<(Vec4, Vec4)> {
        let f = &self.field;
        let (r1, r2, c1, c2) = self.echelon(u1, u2)?;
        let mut free = (0..4).filter(|&k| k != c1 && k != c2);
        let mut basis = [[Fe::ZERO; 4]; 2];
        for b in basis.iter_mut() {
            let k = free.next().unwrap();
            b[k] = Fe::ONE;
            b[c1] = f.neg(r1[k]);
            b[c2] = f.neg(r2[k]);
        }
        Ok((basis[0], basis[1]))
    }

    /// The line in which two distinct planes meet.
    pub fn meet_planes(&self, a: PlaneId, b: PlaneId) -> Result<LineId> {
        if a == b {
            return Err(Error::CoincidentPoints);
        }
        let (x, y) = self.null_space(self.coords(a), self.coords(b))?;
        self.line_through(x, y)
    }

    /// Canonical Plücker vector `(p01, p02, p03, p12, p13, p23)` of a line.
    pub fn pluecker(&self, line: LineId) -> Vec6 {
        let (a, b) = self.line_basis(line);
        pluecker_of(&self.field, &a, &b)
    }

    // ---- polarities ----

    /// Dual coordinates of the orthogonal polar plane with respect to
    /// X1X4 − X2X3 (Gram matrix antidiag(1, −1, −1, 1)).
    pub fn quadric_polar(&self, x: &Vec4) -> Vec4 {
        let f = &self.field;
        [x[3], f.neg(x[2]), f.neg(x[1]), x[0]]
    }

    /// Dual coordinates of the unitary polar plane with respect to the
    /// Hermitian form X1^q X4 + X1 X4^q − X2^{q+1} − X3^{q+1}.
    pub fn unitary_polar(&self, x: &Vec4) -> Vec4 {
        let f = &self.field;
        [f.frob(x[3]), f.neg(f.frob(x[1])), f.neg(f.frob(x[2])), f.frob(x[0])]
    }

    pub fn perp_quadric(&self, p: PointId) -> PlaneId {
        self.id_of(&self.quadric_polar(&self.coords(p)))
    }

    pub fn perp_unitary(&self, p: PointId) -> PlaneId {
        self.id_of(&self.unitary_polar(&self.coords(p)))
    }

    /// The semilinear involution (X1, X2, X3, X4) ↦ (X1^q, X3^q, X2^q, X4^q).
    pub fn tau_vec(&self, x: &Vec4) -> Vec4 {
        let f = &self.field;
        [f.frob(x[0]), f.frob(x[2]), f.frob(x[1]), f.frob(x[3])]
    }

    pub fn tau(&self, p: PointId) -> PointId {
        self.id_of(&self.tau_vec(&self.coords(p)))
    }

    /// The polar line of `line` under the orthogonal polarity.
    pub fn perp_line(&self, line: LineId) -> LineId {
        let (a, b) = self.line_basis(line);
        let (x, y) =
            self.null_space(self.quadric_polar(&a), self.quadric_polar(&b)).expect("polarity is nondegenerate");
        self.line_through(x, y).unwrap()
    }

    /// Image of a line under a point map given on vectors.
    pub fn map_line(&self, line: LineId, map: impl Fn(&Vec4) -> Vec4) -> LineId {
        let (a, b) = self.line_basis(line);
        self.line_through(map(&a), map(&b)).expect("point map must be injective")
    }

    /// Points of the set lying on the line.
    pub fn line_meet_count(&self, line: LineId, set: &PointSet) -> usize {
        let mut n = 0;
        self.for_each_on_line(line, |p| n += set.contains(p) as usize);
        n
    }

    /// True iff every point of the line is in the set.
    pub fn line_inside(&self, line: LineId, set: &PointSet) -> bool {
        let f = &self.field;
        let (r1, r2) = self.line_basis(line);
        if !set.contains(self.index_canonical(&r2)) {
            return false;
        }
        f.elements().all(|lam| {
            let mut x = r1;
            for k in 0..4 {
                x[k] = f.add(x[k], f.mul(lam, r2[k]));
            }
            set.contains(self.index_canonical(&x))
        })
    }

    /// Points of the set lying on the plane.
    pub fn plane_meet_count(&self, plane: PlaneId, set: &PointSet) -> usize {
        let mut n = 0;
        self.for_each_on_plane(&self.coords(plane), |p| n += set.contains(p) as usize);
        n
    }
}

/// Plücker coordinates of the span of `a` and `b`, scaled to lead with 1.
pub fn pluecker_of(f: &Field, a: &Vec4, b: &Vec4) -> Vec6 {
    let mut p = [Fe::ZERO; 6];
    for (slot, &(i, j)) in p.iter_mut().zip(PLUECKER_PAIRS.iter()) {
        *slot = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    }
    canonical6(f, p).expect("independent vectors")
}

pub fn canonical6(f: &Field, v: Vec6) -> Option<Vec6> {
    let lead = v.iter().position(|x| !x.is_zero())?;
    let s = f.inv(v[lead]);
    Some(v.map(|x| f.mul(x, s)))
}

/// The Klein quadric relation p01 p23 − p02 p13 + p03 p12.
pub fn klein_form(f: &Field, p: &Vec6) -> Fe {
    let t1 = f.mul(p[0], p[5]);
    let t2 = f.mul(p[1], p[4]);
    let t3 = f.mul(p[2], p[3]);
    f.add(f.sub(t1, t2), t3)
}

/// A subset of the points of PG(3, q²) as a dense bitmask with a cached size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    bits: FixedBitSet,
    len: usize,
}

impl PointSet {
    pub fn empty(capacity: usize) -> PointSet {
        PointSet { bits: FixedBitSet::with_capacity(capacity), len: 0 }
    }

    pub fn full(capacity: usize) -> PointSet {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        PointSet { bits, len: capacity }
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = PointId>) -> PointSet {
        let mut s = PointSet::empty(capacity);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Collects the points of `space` accepted by `pred`.
    pub fn from_predicate(space: &Space, pred: impl Fn(&Vec4) -> bool) -> PointSet {
        let mut s = PointSet::empty(space.num_points());
        for id in space.point_ids() {
            if pred(&space.coords(id)) {
                s.insert(id);
            }
        }
        s
    }

    pub fn insert(&mut self, id: PointId) -> bool {
        let fresh = !self.bits.put(id as usize);
        self.len += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, id: PointId) -> bool {
        let present = self.bits.contains(id as usize);
        if present {
            self.bits.set(id as usize, false);
            self.len -= 1;
        }
        present
    }

    #[inline]
    pub fn contains(&self, id: PointId) -> bool {
        self.bits.contains(id as usize)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = PointId> + '_ {
        self.bits.ones().map(|i| i as PointId)
    }

    fn rebuild(bits: FixedBitSet) -> PointSet {
        let len = bits.count_ones(..);
        PointSet { bits, len }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PointSet::rebuild(bits)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PointSet::rebuild(bits)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PointSet::rebuild(bits)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn count_among(&self, ids: impl IntoIterator<Item = PointId>) -> usize {
        ids.into_iter().filter(|&p| self.contains(p)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn space(q: u32) -> Space {
        Space::for_q(q).unwrap()
    }

    /// Every nonzero vector of GF(q²)^4, reduced to canonical form by a
    /// search over scalars rather than by the leading-entry rule.
    fn brute_force_classes(s: &Space) -> HashSet<Vec4> {
        let f = s.field();
        let els: Vec<Fe> = f.elements().collect();
        let mut seen = HashSet::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        let v = [a, b, c, d];
                        if v.iter().all(|x| x.is_zero()) {
                            continue;
                        }
                        let rep = els[1..].iter().map(|&l| v.map(|x| f.mul(x, l))).min().unwrap();
                        seen.insert(rep);
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn point_counts_match_enumeration() {
        let s = space(3);
        assert_eq!(brute_force_classes(&s).len(), 820);
        assert_eq!(s.num_points(), 820);
        assert_eq!(s.num_planes(), 820);
        assert_eq!(space(5).num_points(), 16276);
    }

    #[test]
    fn index_round_trip() {
        let s = space(3);
        for id in s.point_ids() {
            let v = s.coords(id);
            assert_eq!(s.index_canonical(&v), id);
            let scaled = v.map(|x| s.field().mul(x, s.field().xi_pow(5)));
            assert_eq!(s.point_id(scaled).unwrap(), id);
        }
    }

    #[test]
    fn canonicalize_examples() {
        let s = space(3);
        let f = s.field();
        let five = f.from_int(5);
        assert_eq!(
            s.canonicalize([Fe::ZERO, Fe::ZERO, Fe::ZERO, five]).unwrap(),
            [Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]
        );
        assert_eq!(
            s.canonicalize([f.xi(), f.xi(), Fe::ZERO, Fe::ZERO]).unwrap(),
            [Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ZERO]
        );
        assert_eq!(s.canonicalize([Fe::ZERO; 4]), Err(Error::ZeroVector));
    }

    #[test]
    fn line_count_by_span_enumeration() {
        let s = space(3);
        assert_eq!(s.num_lines(), 7462);
        // Span enumeration: every pair of distinct points, lines as sorted
        // point lists computed without the echelon index.
        let f = s.field();
        let mut lines: HashSet<Vec<PointId>> = HashSet::new();
        let n = s.num_points() as u32;
        for a in 0..n {
            for b in (a + 1)..n {
                let (va, vb) = (s.coords(a), s.coords(b));
                let mut pts: Vec<PointId> = f
                    .elements()
                    .map(|l| {
                        let mut x = va;
                        for k in 0..4 {
                            x[k] = f.add(x[k], f.mul(l, vb[k]));
                        }
                        s.point_id(x).unwrap()
                    })
                    .chain(std::iter::once(b))
                    .collect();
                pts.sort();
                if pts[0] == a {
                    lines.insert(pts);
                }
            }
        }
        assert_eq!(lines.len(), 7462);
    }

    #[test]
    fn lines_are_consistent() {
        let s = space(3);
        let mut seen = HashSet::new();
        for l in s.line_ids() {
            let pts = s.line_points(l);
            assert_eq!(pts.len(), 10);
            let distinct: HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), 10);
            assert_eq!(s.line_id(pts[3], pts[7]).unwrap(), l);
            let pl = s.pluecker(l);
            assert!(klein_form(s.field(), &pl).is_zero());
            let (a, b) = s.line_basis(l);
            assert_eq!(pluecker_of(s.field(), &b, &a), pl);
            assert!(seen.insert(pl));
        }
    }

    #[test]
    fn every_pair_on_one_line() {
        let s = space(3);
        let mut pair_count = vec![0u8; 820 * 820];
        for l in s.line_ids() {
            let pts = s.line_points(l);
            for &a in &pts {
                for &b in &pts {
                    if a != b {
                        pair_count[a as usize * 820 + b as usize] += 1;
                    }
                }
            }
        }
        for a in 0..820 {
            for b in 0..820 {
                assert_eq!(pair_count[a * 820 + b], (a != b) as u8);
            }
        }
    }

    #[test]
    fn planes_and_incidence() {
        let s = space(3);
        for plane in s.point_ids().step_by(7) {
            let pts = s.plane_points(plane);
            assert_eq!(pts.len(), 91);
            assert!(pts.iter().all(|&p| s.incident(p, plane)));
            let distinct: HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), 91);
        }
        assert_eq!(s.planes_through(17).len(), 91);
        // Each line lies on q²+1 planes, and its points lie on each of them.
        for l in s.line_ids().step_by(97) {
            let planes: Vec<PlaneId> = s.point_ids().filter(|&pl| s.line_in_plane(l, pl)).collect();
            assert_eq!(planes.len(), 10);
            for &pl in &planes {
                assert!(s.line_points(l).iter().all(|&p| s.incident(p, pl)));
            }
        }
    }

    #[test]
    fn meet_of_planes() {
        let s = space(3);
        let (a, b) = (5, 400);
        let l = s.meet_planes(a, b).unwrap();
        for p in s.line_points(l) {
            assert!(s.incident(p, a) && s.incident(p, b));
        }
    }

    #[test]
    fn polarities_are_involutions() {
        for q in [3, 5] {
            let s = space(q);
            for p in s.point_ids() {
                assert_eq!(s.perp_quadric(s.perp_quadric(p)), p);
                assert_eq!(s.perp_unitary(s.perp_unitary(p)), p);
                assert_eq!(s.tau(s.tau(p)), p);
                // τ∘⊥ = ⊥∘τ is the unitary polarity.
                assert_eq!(s.perp_unitary(p), s.tau(s.perp_quadric(p)));
                assert_eq!(s.perp_unitary(p), s.perp_quadric(s.tau(p)));
            }
        }
    }

    #[test]
    fn self_conjugate_points_of_orthogonal_polarity() {
        let s = space(3);
        let f = s.field();
        for p in s.point_ids() {
            let x = s.coords(p);
            let on_quadric = f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2])).is_zero();
            assert_eq!(s.incident(p, s.perp_quadric(p)), on_quadric);
        }
    }

    #[test]
    fn tau_fixed_points() {
        for q in [3, 5] {
            let s = space(q);
            let fixed = s.point_ids().filter(|&p| s.tau(p) == p).count() as u32;
            assert_eq!(fixed, q * q * q + q * q + q + 1);
        }
    }

    #[test]
    fn perp_line_is_involution() {
        let s = space(3);
        for l in s.line_ids().step_by(11) {
            let m = s.perp_line(l);
            assert_eq!(s.perp_line(m), l);
            let (a, _) = s.line_basis(l);
            let u = s.quadric_polar(&a);
            for p in s.line_points(m) {
                assert!(s.dot(&u, &s.coords(p)).is_zero());
            }
        }
    }

    #[test]
    fn point_set_operations() {
        let mut a = PointSet::empty(100);
        assert!(a.insert(3));
        assert!(!a.insert(3));
        a.insert(50);
        let b = PointSet::from_ids(100, [50, 60]);
        assert_eq!(a.union(&b).len(), 3);
        assert_eq!(a.intersection(&b).len(), 1);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert!(a.remove(3));
        assert!(a.is_subset(&b));
        assert_eq!(PointSet::full(100).len(), 100);
    }
}
