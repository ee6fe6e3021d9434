//! The distinguished point sets of PG(3, q²): the Hermitian surface, the
//! hyperbolic quadric, the Baer subgeometry fixed by τ, the curve 𝒪 and the
//! one-parameter family F_γ = 0 that the group K stabilizes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::projgeom::{PointId, PointSet, Space, Vec4};

/// X1^q X4 + X1 X4^q − X2^{q+1} − X3^{q+1}; always lies in GF(q).
pub fn hermitian_form(f: &Field, x: &Vec4) -> Fe {
    let a = f.add(f.mul(f.frob(x[0]), x[3]), f.mul(x[0], f.frob(x[3])));
    f.sub(f.sub(a, f.norm(x[1])), f.norm(x[2]))
}

/// X1 X4 − X2 X3.
pub fn quadric_form(f: &Field, x: &Vec4) -> Fe {
    f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2]))
}

/// F_γ = H − γ Q^{(q+1)/2}. Both terms scale by λ^{q+1} under x ↦ λx.
pub fn f_gamma(f: &Field, x: &Vec4, gamma: Fe) -> Fe {
    let qpow = f.powu(quadric_form(f, x), f.q().div_ceil(2));
    f.sub(hermitian_form(f, x), f.mul(gamma, qpow))
}

/// True iff the point is projectively fixed by τ, i.e. has a multiple of
/// the shape (a, b, b^q, c) with a, c in GF(q).
pub fn in_sigma(space: &Space, x: &Vec4) -> bool {
    space.id_of(&space.tau_vec(x)) == space.id_of(x)
}

/// Parameter set of the 𝒮 family: {1..q} without (q+1)/2.
pub fn s_indices(q: u32) -> Vec<u32> {
    (1..=q).filter(|&j| j != q.div_ceil(2)).collect()
}

/// Parameter set of the ℰ family: {0..q−1} without (q−1)/2.
pub fn e_indices(q: u32) -> Vec<u32> {
    (0..q).filter(|&k| k != (q - 1) / 2).collect()
}

/// The ℰ indices other than 0 and q−1: {1..q−2} without (q−1)/2. Empty
/// for q = 3.
pub fn e_inner_indices(q: u32) -> Vec<u32> {
    (1..q.saturating_sub(1)).filter(|&k| k != (q - 1) / 2).collect()
}

pub fn check_s_index(q: u32, j: u32) -> Result<()> {
    if s_indices(q).contains(&j) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "j",
            value: j as i64,
            allowed: format!("{{1..{q}}} \\ {{{}}}", q.div_ceil(2)),
        })
    }
}

pub fn check_e_index(q: u32, k: u32) -> Result<()> {
    if e_indices(q).contains(&k) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "k",
            value: k as i64,
            allowed: format!("{{0..{}}} \\ {{{}}}", q - 1, (q - 1) / 2),
        })
    }
}

pub fn check_e_inner_index(q: u32, k: u32) -> Result<()> {
    let allowed = e_inner_indices(q);
    if allowed.is_empty() {
        return Err(Error::EmptyFamily(format!("the inner E_k family (k in {{1..q-2}} \\ {{(q-1)/2}}) at q = {q}")));
    }
    if allowed.contains(&k) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "k",
            value: k as i64,
            allowed: format!("{{1..{}}} \\ {{{}}}", q - 2, (q - 1) / 2),
        })
    }
}

/// γ = ξ^{j(q−1)/2} + ξ^{−j(q−1)/2}.
pub fn gamma_s(f: &Field, j: u32) -> Fe {
    let e = j as i64 * (f.q() as i64 - 1) / 2;
    f.add(f.xi_pow(e), f.xi_pow(-e))
}

/// γ = ξ^{k(q+1)/2} + ξ^{−k(q+1)/2}.
pub fn gamma_e(f: &Field, k: u32) -> Fe {
    let e = k as i64 * (f.q() as i64 + 1) / 2;
    f.add(f.xi_pow(e), f.xi_pow(-e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SurfaceId {
    Hermitian,
    HyperbolicQuadric,
    Baer,
    CurveO,
    S(u32),
    E(u32),
}

impl SurfaceId {
    pub fn validate(self, q: u32) -> Result<()> {
        match self {
            SurfaceId::S(j) => check_s_index(q, j),
            SurfaceId::E(k) => check_e_index(q, k),
            _ => Ok(()),
        }
    }

    /// The γ of the defining equation, for family members.
    pub fn gamma(self, f: &Field) -> Option<Fe> {
        match self {
            SurfaceId::S(j) => Some(gamma_s(f, j)),
            SurfaceId::E(k) => Some(gamma_e(f, k)),
            SurfaceId::Hermitian => Some(Fe::ZERO),
            _ => None,
        }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceId::Hermitian => write!(f, "H"),
            SurfaceId::HyperbolicQuadric => write!(f, "Q+"),
            SurfaceId::Baer => write!(f, "Sigma"),
            SurfaceId::CurveO => write!(f, "O"),
            SurfaceId::S(j) => write!(f, "S:{j}"),
            SurfaceId::E(k) => write!(f, "E:{k}"),
        }
    }
}

impl std::str::FromStr for SurfaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SurfaceId> {
        let bad = || Error::Invalid(format!("unknown surface id {s:?}"));
        let parse_idx = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        match s.trim() {
            "H" | "hermitian" => Ok(SurfaceId::Hermitian),
            "Q+" | "Q" | "quadric" => Ok(SurfaceId::HyperbolicQuadric),
            "Sigma" | "baer" => Ok(SurfaceId::Baer),
            "O" | "curve" => Ok(SurfaceId::CurveO),
            t => match t.split_once(':') {
                Some(("S", j)) => Ok(SurfaceId::S(parse_idx(j)?)),
                Some(("E", k)) => Ok(SurfaceId::E(parse_idx(k)?)),
                _ => Err(bad()),
            },
        }
    }
}

pub fn hermitian_surface(space: &Space) -> PointSet {
    let f = space.field();
    PointSet::from_predicate(space, |x| hermitian_form(f, x).is_zero())
}

pub fn quadric_surface(space: &Space) -> PointSet {
    let f = space.field();
    PointSet::from_predicate(space, |x| quadric_form(f, x).is_zero())
}

pub fn baer_subgeometry(space: &Space) -> PointSet {
    PointSet::from_predicate(space, |x| in_sigma(space, x))
}

/// Parametrized points (1, t, t^q, t^{q+1}) and (0, 0, 0, 1).
pub fn curve_o_points(space: &Space) -> Vec<PointId> {
    let f = space.field();
    let mut pts: Vec<PointId> = f.elements().map(|t| space.id_of(&[Fe::ONE, t, f.frob(t), f.norm(t)])).collect();
    pts.push(space.id_of(&[Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]));
    pts
}

pub fn curve_o(space: &Space) -> PointSet {
    PointSet::from_ids(space.num_points(), curve_o_points(space))
}

pub fn build_surface(space: &Space, id: SurfaceId) -> Result<PointSet> {
    id.validate(space.q())?;
    let f = space.field();
    Ok(match id {
        SurfaceId::Hermitian => hermitian_surface(space),
        SurfaceId::HyperbolicQuadric => quadric_surface(space),
        SurfaceId::Baer => baer_subgeometry(space),
        SurfaceId::CurveO => curve_o(space),
        SurfaceId::S(_) | SurfaceId::E(_) => {
            let g = id.gamma(f).unwrap();
            PointSet::from_predicate(space, |x| f_gamma(f, x, g).is_zero())
        }
    })
}

/// The K-orbit a point belongs to, decided from the forms alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointRole {
    O,
    Sigma1,
    Sigma2,
    QuadricRest,
    H1,
    H2,
    /// 𝒮_j \ 𝒪
    S(u32),
    /// ℰ_k \ 𝒪 for k in {1..q−2} \ {(q−1)/2}
    E(u32),
    /// ℰ_0 \ Σ
    E0Rest,
    /// ℰ_{q−1} \ Σ
    ELastRest,
}

impl PointRole {
    pub fn label(&self, q: u32) -> String {
        match self {
            PointRole::O => "O".into(),
            PointRole::Sigma1 => "Sigma1".into(),
            PointRole::Sigma2 => "Sigma2".into(),
            PointRole::QuadricRest => "Q+\\O".into(),
            PointRole::H1 => "H1".into(),
            PointRole::H2 => "H2".into(),
            PointRole::S(j) => format!("S{j}\\O"),
            PointRole::E(k) => format!("E{k}\\O"),
            PointRole::E0Rest => "E0\\Sigma".into(),
            PointRole::ELastRest => format!("E{}\\Sigma", q - 1),
        }
    }

    /// All roles present for the given q, in a fixed order.
    pub fn all(q: u32) -> Vec<PointRole> {
        let mut v = vec![
            PointRole::O,
            PointRole::Sigma1,
            PointRole::Sigma2,
            PointRole::QuadricRest,
            PointRole::H1,
            PointRole::H2,
        ];
        v.extend(s_indices(q).into_iter().map(PointRole::S));
        v.extend(e_inner_indices(q).into_iter().map(PointRole::E));
        v.push(PointRole::E0Rest);
        v.push(PointRole::ELastRest);
        v
    }
}

/// Precomputed constants for classifying points without group action.
#[derive(Debug, Clone)]
pub struct Classifier {
    s_gammas: Vec<(u32, Fe)>,
    e_gammas: Vec<(u32, Fe)>,
    two: Fe,
    h1_is_square: bool,
}

impl Classifier {
    pub fn new(f: &Field) -> Classifier {
        let q = f.q();
        let two = f.from_int(2);
        Classifier {
            s_gammas: s_indices(q).into_iter().map(|j| (j, gamma_s(f, j))).collect(),
            e_gammas: e_indices(q).into_iter().map(|k| (k, gamma_e(f, k))).collect(),
            two,
            // R_{(q+1)/2} lies in H1 and has X1X4 − X2X3 = ξ^{(q+1)/2}.
            h1_is_square: q % 4 == 3,
        }
    }

    pub fn classify(&self, space: &Space, x: &Vec4) -> PointRole {
        let f = space.field();
        let h = hermitian_form(f, x);
        let qv = quadric_form(f, x);
        match (h.is_zero(), qv.is_zero()) {
            (true, true) => return PointRole::O,
            (false, true) => return PointRole::QuadricRest,
            (true, false) => {
                return if f.is_square(qv) == self.h1_is_square { PointRole::H1 } else { PointRole::H2 };
            }
            _ => {}
        }
        let gamma = f.mul(h, f.inv(f.powu(qv, f.q().div_ceil(2))));
        if in_sigma(space, x) {
            return if gamma == self.two { PointRole::Sigma1 } else { PointRole::Sigma2 };
        }
        if let Some(&(j, _)) = self.s_gammas.iter().find(|(_, g)| *g == gamma) {
            return PointRole::S(j);
        }
        let (k, _) = self
            .e_gammas
            .iter()
            .find(|(_, g)| *g == gamma)
            .copied()
            .expect("every point off H and Q+ lies on one family member");
        let q = f.q();
        if k == 0 {
            PointRole::E0Rest
        } else if k == q - 1 {
            PointRole::ELastRest
        } else {
            PointRole::E(k)
        }
    }

    /// Role of every point of the space, by point id.
    pub fn classify_all(&self, space: &Space) -> Vec<PointRole> {
        space.point_ids().map(|p| self.classify(space, &space.coords(p))).collect()
    }
}

/// The named orbit representatives used throughout.
pub mod reps {
    use super::*;

    pub fn u(_f: &Field) -> Vec4 {
        [Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO]
    }
    pub fn s1(_f: &Field) -> Vec4 {
        [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE]
    }
    pub fn s2(f: &Field) -> Vec4 {
        [Fe::ONE, Fe::ZERO, Fe::ZERO, f.xi_pow(f.q() as i64 + 1)]
    }
    pub fn t1(f: &Field) -> Vec4 {
        [f.xi(), Fe::ONE, Fe::ONE, Fe::ZERO]
    }
    pub fn t2(f: &Field) -> Vec4 {
        let w = f.xi_pow(f.q() as i64 - 1);
        [w, w, Fe::ONE, Fe::ZERO]
    }
    /// (ξ^j, 0, 0, 1)
    pub fn r(f: &Field, j: u32) -> Vec4 {
        [f.xi_pow(j as i64), Fe::ZERO, Fe::ZERO, Fe::ONE]
    }
    /// (0, ξ^k, 1, 0)
    pub fn q(f: &Field, k: u32) -> Vec4 {
        [Fe::ZERO, f.xi_pow(k as i64), Fe::ONE, Fe::ZERO]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(q: u32) -> Space {
        Space::for_q(q).unwrap()
    }

    #[test]
    fn hermitian_examples() {
        let s = space(3);
        let f = s.field();
        for t in f.elements() {
            let x = [Fe::ONE, t, f.frob(t), f.norm(t)];
            assert!(hermitian_form(f, &x).is_zero());
        }
        assert!(hermitian_form(f, &[Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO]).is_zero());
        for p in s.point_ids() {
            assert!(f.in_subfield(hermitian_form(f, &s.coords(p))));
        }
        assert_eq!(hermitian_surface(&s).len(), 280);
    }

    #[test]
    fn quadric_examples() {
        let s = space(3);
        let f = s.field();
        assert_eq!(quadric_surface(&s).len(), 100);
        let one = [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE];
        assert_eq!(quadric_form(f, &one), Fe::ONE);
        for x1 in f.elements().step_by(2) {
            for y2 in f.elements().step_by(3) {
                let (x2, y1) = (f.xi(), f.xi_pow(5));
                let seg = [f.mul(x1, x2), f.mul(x1, y2), f.mul(x2, y1), f.mul(y1, y2)];
                assert!(quadric_form(f, &seg).is_zero());
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let s = space(3);
        let f = s.field();
        let xi = f.xi();
        assert!(in_sigma(&s, &[Fe::ONE, xi, f.frob(xi), Fe::ONE]));
        assert!(!in_sigma(&s, &[Fe::ONE, xi, xi, Fe::ONE]));
        assert_eq!(baer_subgeometry(&s).len(), 40);
    }

    #[test]
    fn curve_o_is_pairwise_intersection() {
        for q in [3, 5] {
            let s = space(q);
            let o = curve_o(&s);
            assert_eq!(o.len() as u32, q * q + 1);
            let h = hermitian_surface(&s);
            let qq = quadric_surface(&s);
            let sig = baer_subgeometry(&s);
            assert_eq!(h.intersection(&qq), o);
            assert_eq!(h.intersection(&sig), o);
            assert_eq!(qq.intersection(&sig), o);
        }
    }

    #[test]
    fn no_three_points_of_o_collinear() {
        let s = space(3);
        let pts = curve_o_points(&s);
        let o = curve_o(&s);
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                let l = s.line_id(a, b).unwrap();
                assert_eq!(s.line_meet_count(l, &o), 2);
            }
        }
    }

    #[test]
    fn f_gamma_properties() {
        let s = space(3);
        let f = s.field();
        let h = hermitian_surface(&s);
        let zero_set = PointSet::from_predicate(&s, |x| f_gamma(f, x, Fe::ZERO).is_zero());
        assert_eq!(zero_set, h);
        for p in curve_o_points(&s) {
            for g in f.elements() {
                assert!(f_gamma(f, &s.coords(p), g).is_zero());
            }
        }
        let g = gamma_s(f, 1);
        for p in s.point_ids().step_by(13) {
            let x = s.coords(p);
            for lam in f.elements().skip(1) {
                let y = x.map(|c| f.mul(c, lam));
                let expected = f.mul(f.powu(lam, f.q() + 1), f_gamma(f, &x, g));
                assert_eq!(f_gamma(f, &y, g), expected);
            }
        }
    }

    #[test]
    fn gammas_are_distinct() {
        for q in [3, 5, 7, 9] {
            let f = Field::for_q(q).unwrap();
            let mut all: Vec<Fe> = s_indices(q).iter().map(|&j| gamma_s(&f, j)).collect();
            all.extend(e_indices(q).iter().map(|&k| gamma_e(&f, k)));
            let n = all.len();
            all.sort();
            all.dedup();
            assert_eq!(n, all.len());
            assert_eq!(n as u32, 2 * (q - 1));
            assert!(all.iter().all(|&g| !g.is_zero()));
        }
    }

    #[test]
    fn surface_sizes() {
        let s = space(3);
        assert_eq!(build_surface(&s, SurfaceId::S(1)).unwrap().len(), 100);
        assert_eq!(build_surface(&s, SurfaceId::E(0)).unwrap().len(), 145);
        let s5 = space(5);
        assert_eq!(build_surface(&s5, SurfaceId::E(1)).unwrap().len(), 1976);
    }

    #[test]
    fn parameter_errors() {
        let s = space(3);
        assert!(build_surface(&s, SurfaceId::S(2)).is_err());
        assert!(build_surface(&s, SurfaceId::E(1)).is_err());
        assert!(build_surface(&s, SurfaceId::S(4)).is_err());
        assert!(check_e_inner_index(3, 1).is_err());
        assert!(e_inner_indices(3).is_empty());
        assert_eq!(e_inner_indices(5), vec![1, 3]);
        assert_eq!("S:3".parse::<SurfaceId>().unwrap(), SurfaceId::S(3));
        assert!("X:1".parse::<SurfaceId>().is_err());
    }

    #[test]
    fn family_members_meet_in_o() {
        let s = space(5);
        let o = curve_o(&s);
        let mut ids: Vec<SurfaceId> = s_indices(5).into_iter().map(SurfaceId::S).collect();
        ids.extend(e_indices(5).into_iter().map(SurfaceId::E));
        let sets: Vec<PointSet> = ids.iter().map(|&i| build_surface(&s, i).unwrap()).collect();
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                assert_eq!(sets[a].intersection(&sets[b]), o);
            }
        }
    }

    #[test]
    fn roles_partition_the_space() {
        for q in [3, 5] {
            let s = space(q);
            let f = s.field();
            let c = Classifier::new(f);
            let roles = c.classify_all(&s);
            let e0 = build_surface(&s, SurfaceId::E(0)).unwrap();
            let el = build_surface(&s, SurfaceId::E(q - 1)).unwrap();
            for p in s.point_ids() {
                match roles[p as usize] {
                    PointRole::Sigma1 => assert!(e0.contains(p)),
                    PointRole::Sigma2 => assert!(el.contains(p)),
                    _ => {}
                }
            }
            let count = |r: PointRole| roles.iter().filter(|&&x| x == r).count() as u32;
            let q2 = q * q;
            assert_eq!(count(PointRole::O), q2 + 1);
            assert_eq!(count(PointRole::Sigma1), count(PointRole::Sigma2));
            assert_eq!(count(PointRole::H1), q2 * (q2 + 1) * (q - 1) / 2);
            assert_eq!(count(PointRole::H2), q2 * (q2 + 1) * (q + 1) / 2);
            assert_eq!(c.classify(&s, &reps::r(f, q.div_ceil(2))), PointRole::H1);
            assert_eq!(c.classify(&s, &reps::q(f, (q - 1) / 2)), PointRole::H2);
            assert_eq!(c.classify(&s, &reps::s1(f)), PointRole::Sigma1);
            assert_eq!(c.classify(&s, &reps::s2(f)), PointRole::Sigma2);
            for j in s_indices(q) {
                assert_eq!(c.classify(&s, &reps::r(f, j)), PointRole::S(j));
            }
        }
    }
}
