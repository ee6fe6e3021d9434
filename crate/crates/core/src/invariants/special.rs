//! The line families ℒ (lines of ℋ(3, q²) meeting 𝒪 once) and ℒ_k (lines
//! of ℰ_k meeting 𝒪 once), and the intersection bounds for 𝒮_j and ℰ_k.

use serde::Serialize;

use crate::error::Result;
use crate::invariants::lines::{contained_lines, line_meet_counts};
use crate::invariants::sublines::sigma_set;
use crate::invariants::tables::Formulas;
use crate::invariants::Check;
use crate::projgeom::{LineId, PointSet, Space};
use crate::varieties::{
    build_surface, check_e_inner_index, check_s_index, curve_o, hermitian_surface, Classifier, PointRole, SurfaceId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LineFamily {
    /// ℒ
    H2Lines,
    /// ℒ_k
    ELines(u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialLines {
    pub family: LineFamily,
    pub lines: Vec<LineId>,
    pub checks: Vec<Check>,
}

fn role_set(space: &Space, roles: &[PointRole], want: PointRole) -> PointSet {
    PointSet::from_ids(space.num_points(), space.point_ids().filter(|&p| roles[p as usize] == want))
}

/// Lines inside `host` meeting 𝒪 in exactly one point.
fn once_through_o(space: &Space, host: &PointSet, o: &PointSet) -> Vec<LineId> {
    contained_lines(space, host).into_iter().filter(|&l| space.line_meet_count(l, o) == 1).collect()
}

/// Number of lines of the family through each point of `set`, checked to
/// be `want` everywhere.
fn through_check(space: &Space, lines: &[LineId], set: &PointSet, want: usize, name: &str) -> Check {
    let mut through = vec![0usize; space.num_points()];
    for &l in lines {
        space.for_each_on_line(l, |p| through[p as usize] += 1);
    }
    let bad = set.iter().filter(|&p| through[p as usize] != want).count();
    Check::eq(format!("{name}: {want} lines through each point"), bad, 0)
}

/// Index of the ℰ family polar to ℒ_k: ℰ_{q−1−k} as printed; with the
/// corrections, ℰ_{q−1−k} for q ≡ 1 (mod 4) and ℰ_k for q ≡ −1 (mod 4).
pub fn polar_e_index(q: u32, k: u32, src: Formulas) -> u32 {
    if src == Formulas::Printed || q % 4 == 1 {
        q - 1 - k
    } else {
        k
    }
}

pub fn special_lines(space: &Space, family: LineFamily, src: Formulas) -> Result<SpecialLines> {
    let q = space.q() as usize;
    let f = space.field();
    let roles = Classifier::new(f).classify_all(space);
    let o = curve_o(space);
    let sigma = sigma_set(space);
    let expected = (q + 1) * (q * q + 1);
    let mut checks = Vec::new();

    let (name, lines, carrier) = match family {
        LineFamily::H2Lines => {
            let h = hermitian_surface(space);
            let lines = once_through_o(space, &h, &o);
            let h2 = role_set(space, &roles, PointRole::H2);
            let h1 = role_set(space, &roles, PointRole::H1);
            let inside = h2.union(&o);
            checks.push(Check::eq(
                "ℒ: contained in ℋ₂ ∪ 𝒪",
                lines.iter().filter(|&&l| !space.line_inside(l, &inside)).count(),
                0,
            ));
            // Lines of ℋ meet ℋ₁ in at most (q²+1)/2 points, and ℋ₂ too
            // unless they lie in ℒ.
            let cap = (q * q).div_ceil(2);
            let all = contained_lines(space, &h);
            let worst_h1 = all.iter().map(|&l| space.line_meet_count(l, &h1)).max().unwrap_or(0);
            let worst_h2 = all
                .iter()
                .filter(|l| lines.binary_search(l).is_err())
                .map(|&l| space.line_meet_count(l, &h2))
                .max()
                .unwrap_or(0);
            checks.push(Check::new("ℋ-lines: |ℓ ∩ ℋ₁| ≤ (q²+1)/2", worst_h1 <= cap, format!("max {worst_h1}")));
            checks.push(Check::new("ℋ-lines off ℒ: |ℓ ∩ ℋ₂| ≤ (q²+1)/2", worst_h2 <= cap, format!("max {worst_h2}")));
            ("ℒ".to_string(), lines, h2)
        }
        LineFamily::ELines(k) => {
            check_e_inner_index(space.q(), k)?;
            let ek = build_surface(space, SurfaceId::E(k))?;
            let lines = once_through_o(space, &ek, &o);
            let rest = role_set(space, &roles, PointRole::E(k));
            let name = format!("ℒ_{k}");

            let d = polar_e_index(space.q(), k, src);
            let dual = build_surface(space, SurfaceId::E(d))?;
            let bad_polar = lines.iter().filter(|&&l| !space.line_inside(space.perp_line(l), &dual)).count();
            checks.push(Check::eq(format!("{name}: ℓ^⊥ ⊆ ℰ_{d}"), bad_polar, 0));
            let bad_planes = dual
                .difference(&o)
                .iter()
                .filter(|&p| {
                    let plane = space.perp_quadric(p);
                    lines.iter().filter(|&&l| space.line_in_plane(l, plane)).count() != 2
                })
                .count();
            checks.push(Check::eq(format!("{name}: two lines in P^⊥ for P ∈ ℰ_{d}\\𝒪"), bad_planes, 0));
            (name, lines, rest)
        }
    };

    checks.insert(0, Check::eq(format!("{name}: size"), lines.len(), expected));
    checks.push(through_check(space, &lines, &carrier, 2, &name));
    checks.push(through_check(space, &lines, &o, q + 1, &name));
    checks.push(Check::eq(
        format!("{name}: one point of Σ per line"),
        lines.iter().filter(|&&l| space.line_meet_count(l, &sigma) != 1).count(),
        0,
    ));
    Ok(SpecialLines { family, lines, checks })
}

/// Largest |ℓ ∩ 𝒮_j| over all lines.
pub fn max_meet_s(space: &Space, j: u32) -> Result<usize> {
    check_s_index(space.q(), j)?;
    let s = build_surface(space, SurfaceId::S(j))?;
    Ok(line_meet_counts(space, &s).into_iter().max().unwrap_or(0) as usize)
}

/// Largest |ℓ ∩ ℰ_k| over lines not in ℒ_k.
pub fn max_meet_e_off_family(space: &Space, k: u32, family: &[LineId]) -> Result<usize> {
    check_e_inner_index(space.q(), k)?;
    let e = build_surface(space, SurfaceId::E(k))?;
    let counts = line_meet_counts(space, &e);
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(l, _)| family.binary_search(&(*l as LineId)).is_err())
        .map(|(_, &c)| c as usize)
        .max()
        .unwrap_or(0))
}

/// The 2q + 2 bounds for every 𝒮_j and every ℰ_k off ℒ_k.
pub fn line_bound_checks(space: &Space) -> Result<Vec<Check>> {
    let q = space.q();
    let bound = 2 * q as usize + 2;
    let mut checks = Vec::new();
    for j in crate::varieties::s_indices(q) {
        let m = max_meet_s(space, j)?;
        checks.push(Check::new(format!("|ℓ ∩ 𝒮_{j}| ≤ 2q+2"), m <= bound, format!("max {m}")));
    }
    for k in crate::varieties::e_inner_indices(q) {
        let fam = special_lines(space, LineFamily::ELines(k), Formulas::Corrected)?;
        let m = max_meet_e_off_family(space, k, &fam.lines)?;
        checks.push(Check::new(format!("|ℓ ∩ ℰ_{k}| ≤ 2q+2 off ℒ_{k}"), m <= bound, format!("max {m}")));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all(checks: &[Check]) {
        for c in checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn h2_lines_q3() {
        let s = Space::for_q(3).unwrap();
        let r = special_lines(&s, LineFamily::H2Lines, Formulas::Printed).unwrap();
        assert_eq!(r.lines.len(), 40);
        assert_all(&r.checks);
    }

    #[test]
    fn e_lines_q5() {
        let s = Space::for_q(5).unwrap();
        for k in [1, 3] {
            let r = special_lines(&s, LineFamily::ELines(k), Formulas::Printed).unwrap();
            assert_eq!(r.lines.len(), 156);
            assert_all(&r.checks);
        }
    }

    #[test]
    fn e_lines_polar_family_q7() {
        let s = Space::for_q(7).unwrap();
        let r = special_lines(&s, LineFamily::ELines(1), Formulas::Corrected).unwrap();
        assert_eq!(r.lines.len(), 400);
        assert_all(&r.checks);
        let printed = special_lines(&s, LineFamily::ELines(1), Formulas::Printed).unwrap();
        let failed: Vec<&str> = printed.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["ℒ_1: ℓ^⊥ ⊆ ℰ_5", "ℒ_1: two lines in P^⊥ for P ∈ ℰ_5\\𝒪"]);
    }

    #[test]
    fn e_lines_need_inner_k() {
        let s = Space::for_q(3).unwrap();
        assert!(special_lines(&s, LineFamily::ELines(1), Formulas::Printed).is_err());
    }

    #[test]
    fn bounds_q3() {
        let s = Space::for_q(3).unwrap();
        assert_all(&line_bound_checks(&s).unwrap());
    }

    #[test]
    fn bounds_q5() {
        let s = Space::for_q(5).unwrap();
        let checks = line_bound_checks(&s).unwrap();
        assert_eq!(checks.len(), 4 + 2);
        assert_all(&checks);
    }
}
