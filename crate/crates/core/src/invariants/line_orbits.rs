//! Orbits of G ≅ PGL(2, q²) on the lines of PG(3, q²), with the orbits
//! that have a geometric description tagged.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{apply4, generators, orbit_partition, GroupKind};
use crate::invariants::lines::contained_lines;
use crate::invariants::special::{special_lines, LineFamily};
use crate::invariants::sublines::{classify_sublines, SublineKind};
use crate::invariants::tables::Formulas;
use crate::invariants::Check;
use crate::projgeom::{LineId, Space};
use crate::varieties::{e_inner_indices, hermitian_surface, quadric_surface, Classifier};

pub const MAX_Q: u32 = 5;

/// Line permutation of one group element.
pub fn line_permutation(space: &Space, m: &crate::group::Mat4) -> Vec<LineId> {
    let f = space.field();
    let lines: Vec<LineId> = space.line_ids().collect();
    lines.into_par_iter().map(|l| space.map_line(l, |x| apply4(f, m, x))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TaggedOrbits {
    pub tag: String,
    /// Orbit indices meeting the family.
    pub orbits: Vec<u32>,
    pub sizes: Vec<usize>,
    pub expected_sizes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineOrbitCensus {
    pub count: usize,
    pub expected: usize,
    pub sizes: Vec<usize>,
    pub tags: Vec<TaggedOrbits>,
    pub checks: Vec<Check>,
}

pub fn line_orbit_census(space: &Space) -> Result<LineOrbitCensus> {
    let q = space.q();
    if q > MAX_Q {
        return Err(Error::BoundExceeded { what: "line orbit census", q, max: MAX_Q });
    }
    let f = space.field();
    let perms: Vec<Vec<LineId>> =
        generators(f, GroupKind::G).iter().map(|g| line_permutation(space, &g.matrix(f))).collect();
    let orbit_of = orbit_partition(space.num_lines(), &perms);
    // The first three generators generate K.
    let k_orbit_of = orbit_partition(space.num_lines(), &perms[..3]);
    let count = orbit_of.iter().map(|&o| o as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0usize; count];
    for &o in &orbit_of {
        sizes[o as usize] += 1;
    }

    let qq = q as usize;
    let q2 = qq * qq;
    let mut families: Vec<(String, Vec<LineId>, Vec<usize>)> = Vec::new();
    let q_lines = contained_lines(space, &quadric_surface(space));
    families.push(("C- and C'-tangents (lines of Q+)".into(), q_lines, vec![q2 + 1, q2 + 1]));

    let roles = Classifier::new(f).classify_all(space);
    let subl = classify_sublines(space, &roles);
    let pick = |want: &[SublineKind]| -> Vec<LineId> {
        subl.iter().filter(|(_, k)| k.is_some_and(|k| want.contains(&k))).map(|(l, _)| *l).collect()
    };
    families.push(("secant extended sublines".into(), pick(&[SublineKind::Secant]), vec![q2 * (q2 + 1) / 2]));
    families.push(("external extended sublines".into(), pick(&[SublineKind::External]), vec![q2 * (q2 + 1) / 2]));
    families.push((
        "tangent extended sublines".into(),
        pick(&[SublineKind::Tangent1, SublineKind::Tangent2]),
        vec![(qq + 1) * (q2 + 1)],
    ));

    let l_family = special_lines(space, LineFamily::H2Lines, Formulas::Corrected)?.lines;
    let h_rest: Vec<LineId> = contained_lines(space, &hermitian_surface(space))
        .into_iter()
        .filter(|l| l_family.binary_search(l).is_err())
        .collect();
    families.push(("L (lines of H meeting O once)".into(), l_family, vec![(qq + 1) * (q2 + 1)]));
    let mut k_checks = Vec::new();
    for k in e_inner_indices(q).into_iter().filter(|&k| 2 * k < q - 1) {
        let dual = q - 1 - k;
        let a = special_lines(space, LineFamily::ELines(k), Formulas::Corrected)?.lines;
        let b = special_lines(space, LineFamily::ELines(dual), Formulas::Corrected)?.lines;
        for (idx, fam) in [(k, &a), (dual, &b)] {
            let mut hit: BTreeMap<u32, usize> = BTreeMap::new();
            fam.iter().for_each(|&l| *hit.entry(k_orbit_of[l as usize]).or_insert(0) += 1);
            let half = fam.len() / 2;
            let ok = hit.len() == 2
                && hit.iter().all(|(&o, &n)| n == half && k_orbit_of.iter().filter(|&&x| x == o).count() == half);
            k_checks.push(Check::new(
                format!("line orbits: L_{idx} is two K-orbits of equal size"),
                ok,
                format!("{:?}", hit.values().collect::<Vec<_>>()),
            ));
        }
        // diag(1, ξ) swaps E_k and E_{q-1-k}; each G-orbit takes half of both.
        let balanced = {
            let mut per: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
            a.iter().for_each(|&l| per.entry(orbit_of[l as usize]).or_default().0 += 1);
            b.iter().for_each(|&l| per.entry(orbit_of[l as usize]).or_default().1 += 1);
            per.values().all(|&(x, y)| x == y)
        };
        k_checks.push(Check::new(
            format!("line orbits: G-orbits in L_{k} ∪ L_{dual} meet both halves equally"),
            balanced,
            String::new(),
        ));
        let union = a.into_iter().chain(b).collect();
        families.push((format!("L_{k} ∪ L_{dual}"), union, vec![(qq + 1) * (q2 + 1); 2]));
    }
    families.push(("other lines of H".into(), h_rest, vec![q2 * (q2 - 1) / 2, q2 * (q2 - 1) / 2]));

    let mut tags = Vec::new();
    let mut checks = Vec::new();
    for (tag, lines, expected_sizes) in families {
        let mut hit: BTreeMap<u32, usize> = BTreeMap::new();
        for l in &lines {
            *hit.entry(orbit_of[*l as usize]).or_insert(0) += 1;
        }
        let orbits: Vec<u32> = hit.keys().copied().collect();
        let mut got: Vec<usize> = orbits.iter().map(|&o| sizes[o as usize]).collect();
        got.sort_unstable();
        // The family must be a union of whole orbits of the stated sizes.
        let whole = hit.iter().all(|(&o, &n)| sizes[o as usize] == n);
        let mut want = expected_sizes.clone();
        want.sort_unstable();
        checks.push(Check::new(
            format!("line orbits: {tag}"),
            whole && got == want,
            format!("orbit sizes {got:?}, expected {want:?}, union of whole orbits: {whole}"),
        ));
        tags.push(TaggedOrbits { tag, orbits, sizes: got, expected_sizes: want });
    }

    checks.extend(k_checks);
    let expected = 2 * q2 + 2 * qq + 4;
    checks.insert(0, Check::eq("line orbits: number of G-orbits", count, expected));
    let mut sorted = sizes.clone();
    sorted.sort_unstable();
    Ok(LineOrbitCensus { count, expected, sizes: sorted, tags, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_q3() {
        let s = Space::for_q(3).unwrap();
        let c = line_orbit_census(&s).unwrap();
        assert_eq!(c.sizes.iter().sum::<usize>(), s.num_lines());
        for ch in &c.checks[1..] {
            assert!(ch.pass, "{}: {}", ch.name, ch.detail);
        }
    }

    #[test]
    fn census_q5() {
        let s = Space::for_q(5).unwrap();
        let c = line_orbit_census(&s).unwrap();
        assert_eq!(c.count, 64);
        for ch in &c.checks {
            assert!(ch.pass, "{}: {}", ch.name, ch.detail);
        }
    }

    #[test]
    fn refuses_large_q() {
        let s = Space::for_q(7).unwrap();
        assert!(matches!(line_orbit_census(&s), Err(Error::BoundExceeded { .. })));
    }
}
