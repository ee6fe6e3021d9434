//! Extended sublines of Σ: lines of PG(3, q²) meeting Σ in q + 1 points.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::gf::{Fe, Field};
use crate::invariants::Check;
use crate::projgeom::{LineId, PointId, PointSet, Space};
use crate::varieties::{Classifier, PointRole};

/// Points of Σ with their GF(q) coordinates (a, b0, b1, c), where the
/// τ-fixed representative is (a, b0 + 𝒊b1, b0 − 𝒊b1, c).
pub fn sigma_frame(space: &Space) -> Vec<(PointId, [Fe; 4])> {
    let f = space.field();
    let sub: Vec<Fe> = f.subfield().collect();
    let mut seen = BTreeMap::new();
    for &a in &sub {
        for &b0 in &sub {
            for &b1 in &sub {
                for &c in &sub {
                    if [a, b0, b1, c].iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let b = f.compose(b0, b1);
                    let id = space.id_of(&[a, b, f.frob(b), c]);
                    seen.entry(id).or_insert([a, b0, b1, c]);
                }
            }
        }
    }
    seen.into_iter().collect()
}

pub fn sigma_set(space: &Space) -> PointSet {
    PointSet::from_ids(space.num_points(), sigma_frame(space).into_iter().map(|(p, _)| p))
}

pub fn extended_sublines(space: &Space) -> Vec<LineId> {
    let pts: Vec<PointId> = sigma_frame(space).into_iter().map(|(p, _)| p).collect();
    let mut lines = BTreeSet::new();
    for (n, &a) in pts.iter().enumerate() {
        for &b in &pts[n + 1..] {
            lines.insert(space.line_id(a, b).unwrap());
        }
    }
    lines.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SublineKind {
    Tangent1,
    Tangent2,
    Secant,
    External,
}

#[derive(Clone, Debug, Serialize)]
pub struct SublineReport {
    pub total: usize,
    pub tangent: usize,
    pub secant: usize,
    pub external: usize,
    pub t1: usize,
    pub t2: usize,
    pub checks: Vec<Check>,
}

/// Counts of each role along a line.
fn role_counts(space: &Space, roles: &[PointRole], line: LineId) -> BTreeMap<PointRole, usize> {
    let mut m = BTreeMap::new();
    space.for_each_on_line(line, |p| *m.entry(roles[p as usize]).or_insert(0) += 1);
    m
}

/// Tangent sublines go to 𝒯ᵢ by the Σᵢ holding their other Baer points.
pub fn subline_kind(counts: &BTreeMap<PointRole, usize>) -> Option<SublineKind> {
    let get = |r| counts.get(&r).copied().unwrap_or(0);
    match get(PointRole::O) {
        0 => Some(SublineKind::External),
        2 => Some(SublineKind::Secant),
        1 if get(PointRole::Sigma2) == 0 => Some(SublineKind::Tangent1),
        1 if get(PointRole::Sigma1) == 0 => Some(SublineKind::Tangent2),
        _ => None,
    }
}

pub fn classify_sublines(space: &Space, roles: &[PointRole]) -> Vec<(LineId, Option<SublineKind>)> {
    extended_sublines(space).into_iter().map(|l| (l, subline_kind(&role_counts(space, roles, l)))).collect()
}

pub fn extended_subline_census(space: &Space) -> SublineReport {
    let f: &Field = space.field();
    let q = space.q() as usize;
    let roles = Classifier::new(f).classify_all(space);
    let classified = classify_sublines(space, &roles);
    let count = |k| classified.iter().filter(|(_, c)| *c == Some(k)).count();
    let (t1, t2) = (count(SublineKind::Tangent1), count(SublineKind::Tangent2));
    let (secant, external) = (count(SublineKind::Secant), count(SublineKind::External));
    let half_tangent = (q + 1) * (q * q + 1) / 2;
    let mut checks = vec![
        Check::eq("sublines: total", classified.len(), (q * q + 1) * (q * q + q + 1)),
        Check::eq("sublines: tangent split", (t1, t2), (half_tangent, half_tangent)),
        Check::eq(
            "sublines: secant and external",
            (secant, external),
            (q * q * (q * q + 1) / 2, q * q * (q * q + 1) / 2),
        ),
    ];

    let mut cover = vec![0u32; space.num_points()];
    let mut bad_pattern = 0;
    let mut bad_property = 0;
    for &(l, kind) in &classified {
        let c = role_counts(space, &roles, l);
        let get = |r| c.get(&r).copied().unwrap_or(0);
        let (s1, s2) = (get(PointRole::Sigma1), get(PointRole::Sigma2));
        let ok = match kind {
            Some(SublineKind::Tangent1) => s1 == q,
            Some(SublineKind::Tangent2) => s2 == q,
            Some(SublineKind::Secant) => s1 == (q - 1) / 2 && s2 == (q - 1) / 2,
            Some(SublineKind::External) => s1 == q.div_ceil(2) && s2 == q.div_ceil(2),
            None => false,
        };
        bad_pattern += !ok as usize;
        for (&role, &n) in &c {
            let need = match role {
                PointRole::H1 | PointRole::S(_) => Some((SublineKind::Secant, q - 1)),
                PointRole::H2 | PointRole::E(_) => Some((SublineKind::External, q + 1)),
                _ => None,
            };
            if let Some((k, m)) = need {
                bad_property += (kind != Some(k) || n != m) as usize;
            }
        }
        space.for_each_on_line(l, |p| cover[p as usize] += 1);
    }
    checks.push(Check::eq("sublines: Σ-point patterns", bad_pattern, 0));
    checks.push(Check::eq("sublines: meeting ℋ₁/𝒮_j/ℋ₂/ℰ_k", bad_property, 0));
    let sigma = sigma_set(space);
    let uncovered = space.point_ids().filter(|&p| !sigma.contains(p) && cover[p as usize] != 1).count();
    checks.push(Check::eq("sublines: unique subline off Σ", uncovered, 0));

    let kind_of: BTreeMap<LineId, Option<SublineKind>> = classified.iter().copied().collect();
    let want = if q % 4 == 3 { SublineKind::Tangent1 } else { SublineKind::Tangent2 };
    let bad_perp = classified
        .iter()
        .filter(|(_, k)| *k == Some(SublineKind::Tangent1))
        .filter(|(l, _)| kind_of.get(&space.perp_line(*l)).copied().flatten() != Some(want))
        .count();
    checks.push(Check::eq("sublines: polar of a 𝒯₁ line", bad_perp, 0));

    // Off-Σ points of 𝒯₁ and 𝒯₂ lines.
    for (kind, role) in [(SublineKind::Tangent1, PointRole::E0Rest), (SublineKind::Tangent2, PointRole::ELastRest)] {
        let mut on = PointSet::empty(space.num_points());
        for &(l, k) in &classified {
            if k == Some(kind) {
                space.for_each_on_line(l, |p| {
                    if !sigma.contains(p) {
                        on.insert(p);
                    }
                });
            }
        }
        let target = PointSet::from_ids(space.num_points(), space.point_ids().filter(|&p| roles[p as usize] == role));
        checks.push(Check::eq(
            format!("sublines: {kind:?} points off Σ form {}", role.label(space.q())),
            on == target,
            true,
        ));
    }

    SublineReport { total: classified.len(), tangent: t1 + t2, secant, external, t1, t2, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::baer_subgeometry;

    #[test]
    fn frame_is_sigma() {
        for q in [3, 5] {
            let s = Space::for_q(q).unwrap();
            assert_eq!(sigma_set(&s), baer_subgeometry(&s));
        }
    }

    #[test]
    fn census_q3() {
        let s = Space::for_q(3).unwrap();
        let r = extended_subline_census(&s);
        assert_eq!((r.tangent, r.secant, r.external), (40, 45, 45));
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn census_q5() {
        let s = Space::for_q(5).unwrap();
        let r = extended_subline_census(&s);
        assert_eq!((r.t1, r.t2, r.secant, r.external), (78, 78, 325, 325));
        for c in &r.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
