//! Quasi-Hermitian surfaces assembled from K-orbits, and exhaustive plane
//! spectra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::OrbitDecomposition;
use crate::projgeom::{PointSet, Space};
use crate::varieties::{
    build_surface, check_e_inner_index, check_s_index, e_inner_indices, s_indices, Classifier, PointRole, SurfaceId,
};

/// The three orbit unions of size |ℋ(3, q²)|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuasiKind {
    /// 𝒮_j ∪ ℰ_k
    SE { j: u32, k: u32 },
    /// ℋ₁ ∪ ℰ_k
    H1E { k: u32 },
    /// 𝒮_j ∪ ℋ₂
    SH2 { j: u32 },
}

impl QuasiKind {
    pub fn validate(self, q: u32) -> Result<()> {
        match self {
            QuasiKind::SE { j, k } => {
                check_s_index(q, j)?;
                check_e_inner_index(q, k)
            }
            QuasiKind::H1E { k } => check_e_inner_index(q, k),
            QuasiKind::SH2 { j } => check_s_index(q, j),
        }
    }

    /// Every valid member of all three families at this q.
    pub fn all(q: u32) -> Vec<QuasiKind> {
        let js = s_indices(q);
        let ks = e_inner_indices(q);
        let mut v = Vec::new();
        for &j in &js {
            for &k in &ks {
                v.push(QuasiKind::SE { j, k });
            }
        }
        v.extend(ks.iter().map(|&k| QuasiKind::H1E { k }));
        v.extend(js.iter().map(|&j| QuasiKind::SH2 { j }));
        v
    }

    /// Parses "SE", "H1E" or "SH2" with the indices supplied separately.
    pub fn parse(kind: &str, j: Option<u32>, k: Option<u32>) -> Result<QuasiKind> {
        let need =
            |name: &'static str, v: Option<u32>| v.ok_or_else(|| Error::Invalid(format!("kind {kind} needs --{name}")));
        match kind {
            "SE" => Ok(QuasiKind::SE { j: need("j", j)?, k: need("k", k)? }),
            "H1E" => Ok(QuasiKind::H1E { k: need("k", k)? }),
            "SH2" => Ok(QuasiKind::SH2 { j: need("j", j)? }),
            _ => Err(Error::Invalid(format!("unknown kind {kind:?}, expected SE, H1E or SH2"))),
        }
    }
}

impl fmt::Display for QuasiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiKind::SE { j, k } => write!(f, "S{j}+E{k}"),
            QuasiKind::H1E { k } => write!(f, "H1+E{k}"),
            QuasiKind::SH2 { j } => write!(f, "S{j}+H2"),
        }
    }
}

impl FromStr for QuasiKind {
    type Err = Error;

    /// Accepts the display form, e.g. "S1+E3", "H1+E1", "S1+H2".
    fn from_str(s: &str) -> Result<QuasiKind> {
        let bad = || Error::Invalid(format!("unknown quasi-Hermitian kind {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let (a, b) = s.split_once('+').ok_or_else(bad)?;
        match (a, b) {
            ("H1", e) if e.starts_with('E') => Ok(QuasiKind::H1E { k: num(&e[1..])? }),
            (sj, "H2") if sj.starts_with('S') => Ok(QuasiKind::SH2 { j: num(&sj[1..])? }),
            (sj, e) if sj.starts_with('S') && e.starts_with('E') => {
                Ok(QuasiKind::SE { j: num(&sj[1..])?, k: num(&e[1..])? })
            }
            _ => Err(bad()),
        }
    }
}

/// Points with the given role.
pub fn role_set(space: &Space, classifier: &Classifier, role: PointRole) -> PointSet {
    PointSet::from_predicate(space, |x| classifier.classify(space, x) == role)
}

pub fn assemble(space: &Space, kind: QuasiKind) -> Result<PointSet> {
    kind.validate(space.q())?;
    let c = Classifier::new(space.field());
    Ok(match kind {
        QuasiKind::SE { j, k } => build_surface(space, SurfaceId::S(j))?.union(&build_surface(space, SurfaceId::E(k))?),
        QuasiKind::H1E { k } => role_set(space, &c, PointRole::H1).union(&build_surface(space, SurfaceId::E(k))?),
        QuasiKind::SH2 { j } => build_surface(space, SurfaceId::S(j))?.union(&role_set(space, &c, PointRole::H2)),
    })
}

/// Union of the chosen orbits of a decomposition.
pub fn assemble_orbits(dec: &OrbitDecomposition, orbits: &[usize]) -> PointSet {
    let mut set = PointSet::empty(dec.orbit_of.len());
    for (p, &o) in dec.orbit_of.iter().enumerate() {
        if orbits.contains(&(o as usize)) {
            set.insert(p as u32);
        }
    }
    set
}

/// Intersection size with every plane, by plane id.
pub fn plane_counts(space: &Space, set: &PointSet) -> Vec<u32> {
    let n = space.num_planes();
    // Walk whichever of the set and its complement is smaller.
    let complement = set.len() * 2 > set.capacity();
    let walk: Vec<u32> =
        if complement { (0..n as u32).filter(|&p| !set.contains(p)).collect() } else { set.iter().collect() };
    let counts = walk
        .par_chunks(256)
        .fold(
            || vec![0u32; n],
            |mut acc, chunk| {
                for &p in chunk {
                    space.for_each_on_plane(&space.coords(p), |pl| acc[pl as usize] += 1);
                }
                acc
            },
        )
        .reduce(
            || vec![0u32; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    if complement {
        let full = space.plane_size() as u32;
        counts.into_iter().map(|c| full - c).collect()
    } else {
        counts
    }
}

/// Multiset of plane intersection sizes: size → number of planes.
pub fn plane_spectrum(space: &Space, set: &PointSet) -> BTreeMap<usize, usize> {
    let mut spec = BTreeMap::new();
    for c in plane_counts(space, set) {
        *spec.entry(c as usize).or_insert(0) += 1;
    }
    spec
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiReport {
    pub size: usize,
    pub spectrum: BTreeMap<usize, usize>,
    pub is_quasi: bool,
    /// (q³+1, q³+q²+1)
    pub sizes: (usize, usize),
    /// Planes meeting the set in q³+1 and in q³+q²+1 points.
    pub multiplicities: (usize, usize),
}

pub fn verify_quasi_hermitian(space: &Space, set: &PointSet) -> QuasiReport {
    let q = space.q() as usize;
    let small = q * q * q + 1;
    let big = small + q * q;
    let target = small * (q * q + 1);
    let spectrum = plane_spectrum(space, set);
    let mult = (spectrum.get(&small).copied().unwrap_or(0), spectrum.get(&big).copied().unwrap_or(0));
    let is_quasi = set.len() == target && spectrum.len() == 2 && mult == (space.num_planes() - target, target);
    QuasiReport { size: set.len(), spectrum, is_quasi, sizes: (small, big), multiplicities: mult }
}
