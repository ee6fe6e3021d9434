use quasiherm_core::group::Action;
use quasiherm_core::invariants::klein::{expected_orbit_length, klein_census, klein_orbit_length};
use quasiherm_core::invariants::known::v4_expected;
use quasiherm_core::invariants::known::{build_known, known_report, signatures, v2_default, KnownKind, SigmaQuadric};
use quasiherm_core::invariants::line_orbits::line_orbit_census;
use quasiherm_core::invariants::lines::lines_in_set;
use quasiherm_core::invariants::special::{line_bound_checks, special_lines, LineFamily};
use quasiherm_core::invariants::sublines::extended_subline_census;
use quasiherm_core::invariants::tables::{g_table, k_table, Formulas};
use quasiherm_core::invariants::yj::{
    base_locus_size, count_yj, net_expected, net_rank_census, yj_formula, yj_is_exceptional,
};
use quasiherm_core::invariants::Check;
use quasiherm_core::quasi::{assemble, verify_quasi_hermitian, QuasiKind};
use quasiherm_core::srg::{graph_params, weight_distribution, Sampling};
use quasiherm_core::varieties::{
    build_surface, check_s_index, e_indices, e_inner_indices, hermitian_surface, s_indices,
};
use quasiherm_core::{Error, Fe, Field, GroupKind, PointSet, Space, SurfaceId};
use serde_json::{json, Value};

use crate::output::{elem, vec_json};
use crate::{Construction, LinesWhat, QuadricArg, SetArgs};

pub type Out = Result<(String, Value, Vec<Check>), Error>;

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `xi^k`, `ξ^k` or an integer in the polynomial basis.
pub fn parse_fe(f: &Field, s: &str) -> Result<Fe, Error> {
    let bad = || Error::Invalid(format!("cannot read field element {s:?}; use xi^k or an integer"));
    let s = s.trim();
    if let Some(k) = s.strip_prefix("xi^").or_else(|| s.strip_prefix("ξ^")) {
        return Ok(f.xi_pow(k.parse::<i64>().map_err(|_| bad())?));
    }
    f.from_value(s.parse::<u32>().map_err(|_| bad())?).ok_or_else(bad)
}

/// The set named by `--kind/--j/--k`, with its quasi kind when it is an
/// orbit union. A missing index defaults to the smallest admissible one.
pub fn resolve_set(space: &Space, args: &SetArgs) -> Result<(String, PointSet, Option<QuasiKind>), Error> {
    if args.kind == "H" {
        return Ok(("H".into(), hermitian_surface(space), None));
    }
    let q = space.q();
    let j = args.j.or_else(|| s_indices(q).first().copied());
    let k = args.k.or_else(|| e_inner_indices(q).first().copied());
    let kind = QuasiKind::parse(&args.kind, j, k)?;
    kind.validate(space.q())?;
    Ok((kind.to_string(), assemble(space, kind)?, Some(kind)))
}

pub fn field_info(space: &Space) -> Out {
    let f = space.field();
    let elements: Vec<Value> = f
        .elements_by_value()
        .map(|a| {
            json!({
                "value": f.value(a),
                "elem": elem(f, a),
                "poly": f.poly_string(a),
                "in_subfield": f.in_subfield(a),
                "is_square": f.is_square(a),
                "norm": elem(f, f.norm(a)),
            })
        })
        .collect();
    let squares = f.elements().filter(|a| !a.is_zero() && f.is_square(*a)).count();
    let fixed = f.elements().filter(|&a| f.frob(a) == a).count();
    let checks = vec![
        Check::eq("nonzero squares", squares, (f.q2() as usize - 1) / 2),
        Check::eq("elements fixed by Frobenius", fixed, f.q() as usize),
    ];
    Ok(("field-info".into(), json!({ "info": f.info(), "elements": elements }), checks))
}

pub fn geometry(space: &Space) -> Out {
    let q2 = space.q2() as usize;
    let planes_through_first = space.planes_through(0).len();
    let tau_fixed = space.point_ids().filter(|&p| space.tau(p) == p).count();
    let q = space.q() as usize;
    let checks = vec![
        Check::eq("points", space.num_points(), q2 * q2 * q2 + q2 * q2 + q2 + 1),
        Check::eq("lines", space.num_lines(), (q2 * q2 + 1) * (q2 * q2 + q2 + 1)),
        Check::eq("planes through a point", planes_through_first, space.plane_size()),
        Check::eq("tau-fixed points", tau_fixed, q * q * q + q * q + q + 1),
        Check::eq("tau is an involution", space.point_ids().all(|p| space.tau(space.tau(p)) == p), true),
    ];
    let result = json!({
        "points": space.num_points(),
        "lines": space.num_lines(),
        "planes": space.num_planes(),
        "points_per_line": space.line_size(),
        "points_per_plane": space.plane_size(),
        "tau_fixed_points": tau_fixed,
    });
    Ok(("geometry".into(), result, checks))
}

pub fn surface_size(q: u32, id: SurfaceId) -> usize {
    let q = q as usize;
    let (q2, q3) = (q * q, q * q * q);
    match id {
        SurfaceId::Hermitian => (q3 + 1) * (q2 + 1),
        SurfaceId::HyperbolicQuadric => (q2 + 1) * (q2 + 1),
        SurfaceId::Baer => (q + 1) * (q2 + 1),
        SurfaceId::CurveO => q2 + 1,
        SurfaceId::S(_) => q2 * (q2 + 1) * (q - 1) / 2 + q2 + 1,
        SurfaceId::E(k) if k == 0 || k as usize == q - 1 => q3 * (q2 + 1) / 2 + q2 + 1,
        SurfaceId::E(_) => q2 * (q2 + 1) * (q + 1) / 2 + q2 + 1,
    }
}

pub fn surfaces(space: &Space, one: Option<&str>) -> Out {
    let q = space.q();
    let ids: Vec<SurfaceId> = match one {
        Some(s) => {
            let id: SurfaceId = s.parse()?;
            id.validate(q)?;
            vec![id]
        }
        None => [SurfaceId::Hermitian, SurfaceId::HyperbolicQuadric, SurfaceId::Baer, SurfaceId::CurveO]
            .into_iter()
            .chain(s_indices(q).into_iter().map(SurfaceId::S))
            .chain(e_indices(q).into_iter().map(SurfaceId::E))
            .collect(),
    };
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for id in ids {
        let size = build_surface(space, id)?.len();
        let want = surface_size(q, id);
        checks.push(Check::eq(format!("|{id}|"), size, want));
        rows.push(json!({ "surface": id.to_string(), "size": size, "expected": want }));
    }
    if one.is_none() {
        let o = build_surface(space, SurfaceId::CurveO)?;
        let family: Vec<SurfaceId> =
            s_indices(q).into_iter().map(SurfaceId::S).chain(e_indices(q).into_iter().map(SurfaceId::E)).collect();
        let sets = family.iter().map(|&id| build_surface(space, id)).collect::<Result<Vec<_>, _>>()?;
        let mut bad = Vec::new();
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                if sets[a].intersection(&sets[b]) != o {
                    bad.push(format!("{} and {}", family[a], family[b]));
                }
            }
        }
        let pairs = sets.len() * sets.len().saturating_sub(1) / 2;
        checks.push(Check::new(
            "S and E family members meet pairwise in O",
            bad.is_empty(),
            if bad.is_empty() { format!("{pairs} pairs") } else { bad.join("; ") },
        ));
    }
    Ok(("surfaces".into(), Value::Array(rows), checks))
}

pub fn orbits(space: &Space, kind: GroupKind) -> Out {
    let f = space.field();
    let act = Action::new(space, kind);
    let dec = act.decomposition();
    let order = act.order();
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (n, o) in dec.orbits.iter().enumerate() {
        let stab = act.stabilizer_order(o.rep);
        checks.push(Check::eq(format!("orbit {n} ({}): size x stabilizer", o.label), o.size as u64 * stab, order));
        rows.push(json!({
            "index": n,
            "label": o.label,
            "size": o.size,
            "representative": vec_json(f, &space.coords(o.rep)),
            "stabilizer_order": stab,
        }));
    }
    let total: usize = dec.sizes().iter().sum();
    checks.push(Check::eq("orbit sizes sum to the number of points", total, space.num_points()));
    let result = json!({ "group": kind.to_string(), "group_order": order, "count": dec.len(), "orbits": rows });
    Ok(("orbits".into(), result, checks))
}

pub fn tables(space: &Space, kind: GroupKind, src: Formulas) -> Out {
    let dec = Action::new(space, kind).decomposition();
    let table = match kind {
        GroupKind::K => k_table(space, &dec, src),
        _ => g_table(space, &dec, src),
    };
    let checks = table
        .rows
        .iter()
        .map(|r| Check::eq(format!("row {}", r.label), r.computed.clone(), r.expected.clone()))
        .collect();
    Ok(("tables".into(), to_json(&table), checks))
}

pub fn verify_quasi(space: &Space, args: &SetArgs) -> Out {
    let (name, set, _) = resolve_set(space, args)?;
    let r = verify_quasi_hermitian(space, &set);
    let checks =
        vec![Check::new(format!("{name} is quasi-Hermitian"), r.is_quasi, format!("spectrum {:?}", r.spectrum))];
    Ok(("verify-quasi".into(), json!({ "set": name, "report": r }), checks))
}

pub fn verify_quasi_all(space: &Space) -> Out {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for kind in QuasiKind::all(space.q()) {
        let r = verify_quasi_hermitian(space, &assemble(space, kind)?);
        checks.push(Check::new(format!("{kind} is quasi-Hermitian"), r.is_quasi, format!("spectrum {:?}", r.spectrum)));
        rows.push(json!({ "set": kind.to_string(), "report": r }));
    }
    Ok(("verify-quasi".into(), Value::Array(rows), checks))
}

pub fn lines(space: &Space, what: LinesWhat, args: &SetArgs, src: Formulas) -> Out {
    match what {
        LinesWhat::Census => {
            let (name, set, kind) = resolve_set(space, args)?;
            let census = lines_in_set(space, &set);
            let mut checks = vec![Check::eq(
                "incidences = (q^2+1) x lines",
                census.incidences(),
                census.contained_lines * space.line_size(),
            )];
            if let Some(kind) = kind {
                checks.push(Check::eq("orbit-union prediction", census.clone(), v4_expected(space, kind)?));
            }
            Ok(("lines census".into(), json!({ "set": name, "census": census }), checks))
        }
        LinesWhat::Sublines => {
            let mut r = extended_subline_census(space);
            let checks = std::mem::take(&mut r.checks);
            Ok(("lines sublines".into(), to_json(&r), checks))
        }
        LinesWhat::Special => {
            let family = match args.k {
                Some(k) => LineFamily::ELines(k),
                None => LineFamily::H2Lines,
            };
            let r = special_lines(space, family, src)?;
            let result = json!({ "family": r.family, "lines": r.lines.len() });
            Ok(("lines special".into(), result, r.checks))
        }
        LinesWhat::Bounds => {
            let checks = line_bound_checks(space)?;
            Ok(("lines bounds".into(), json!({ "bound": 2 * space.q() + 2 }), checks))
        }
        LinesWhat::Orbits => {
            let mut r = line_orbit_census(space)?;
            let checks = std::mem::take(&mut r.checks);
            Ok(("lines orbits".into(), to_json(&r), checks))
        }
    }
}

fn pairs(q: u32, i: Option<u32>, j: Option<u32>) -> Result<Vec<(u32, u32)>, Error> {
    match (i, j) {
        (Some(i), Some(j)) => {
            check_s_index(q, i)?;
            check_s_index(q, j)?;
            Ok(vec![(i, j)])
        }
        (None, None) => {
            let idx = s_indices(q);
            Ok(idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).collect())
        }
        _ => Err(Error::Invalid("give both --i and --j, or neither".into())),
    }
}

pub fn yj(space: &Space, i: Option<u32>, j: Option<u32>, src: Formulas) -> Out {
    let q = space.q();
    let list = pairs(q, i, j)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &(i, j) in &list {
        let count = count_yj(space, i, j)?;
        let want = yj_formula(q, i, j, src);
        checks.push(Check::eq(format!("|Y| for (i, j) = ({i}, {j})"), count, want));
        let mut row =
            json!({ "i": i, "j": j, "count": count, "expected": want, "exceptional": yj_is_exceptional(q, i, j, src) });
        if list.len() == 1 {
            let base = base_locus_size(space.field(), i, j);
            checks.push(Check::eq("base locus in PG(7, q) is twice |Y|", base, 2 * count));
            row["base_locus"] = json!(base);
        }
        rows.push(row);
    }
    Ok(("yj".into(), Value::Array(rows), checks))
}

pub fn net_census(space: &Space, i: Option<u32>, j: Option<u32>, src: Formulas) -> Out {
    let q = space.q();
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (i, j) in pairs(q, i, j)? {
        let got = net_rank_census(space.field(), i, j)?;
        let want = net_expected(q, i, j, src);
        checks.push(Check::eq(format!("net census for (i, j) = ({i}, {j})"), got.counts.clone(), want.counts.clone()));
        rows.push(json!({ "i": i, "j": j, "members": got.members, "counts": got.counts, "expected": want.counts }));
    }
    Ok(("net-census".into(), Value::Array(rows), checks))
}

pub fn known(
    space: &Space,
    construction: Construction,
    z: u32,
    alpha: Option<&str>,
    beta: Option<&str>,
    quadric: QuadricArg,
    src: Formulas,
) -> Out {
    let f = space.field();
    let kind = match construction {
        Construction::V1 => KnownKind::V1 { z },
        Construction::V2 => {
            let (da, db) = v2_default(f);
            let alpha = alpha.map(|s| parse_fe(f, s)).transpose()?.unwrap_or(da);
            let beta = beta.map(|s| parse_fe(f, s)).transpose()?.unwrap_or(db);
            KnownKind::V2 { alpha, beta }
        }
        Construction::V3 => KnownKind::V3 {
            quadric: match quadric {
                QuadricArg::Elliptic => SigmaQuadric::Elliptic,
                QuadricArg::Hyperbolic => SigmaQuadric::Hyperbolic,
            },
        },
        Construction::Signatures => {
            let sigs = signatures(space)?;
            let mut checks = Vec::new();
            for (a, x) in sigs.iter().enumerate() {
                for y in &sigs[a + 1..] {
                    if x.0.starts_with("V3") && y.0.starts_with("V3") {
                        continue;
                    }
                    checks.push(Check::new(format!("{} differs from {}", x.0, y.0), x.1 != y.1, ""));
                }
            }
            let rows: Vec<Value> = sigs.iter().map(|(n, c)| json!({ "set": n, "census": c })).collect();
            return Ok(("known signatures".into(), Value::Array(rows), checks));
        }
    };
    build_known(space, kind)?;
    let mut r = known_report(space, kind, src)?;
    let checks = std::mem::take(&mut r.checks);
    let mut result = to_json(&r);
    if let KnownKind::V2 { alpha, beta } = kind {
        result["alpha"] = to_json(&elem(f, alpha));
        result["beta"] = to_json(&elem(f, beta));
    }
    Ok(("known".into(), result, checks))
}

pub fn klein(space: &Space, omega: Option<&str>) -> Out {
    let f = space.field();
    match omega {
        Some(s) => {
            let w = parse_fe(f, s)?;
            let len = klein_orbit_length(f, w);
            let want = expected_orbit_length(f.q(), w);
            let result = json!({ "omega": elem(f, w), "orbit_length": len, "expected": want });
            Ok(("klein".into(), result, vec![Check::eq("orbit length", len, want)]))
        }
        None => {
            let c = klein_census(space);
            let mut checks = vec![
                Check::eq("display matrix is a projective representation", c.convention.is_some(), true),
                Check::eq("R_omega lies on the Klein quadric", c.r_on_quadric, true),
            ];
            let rows: Vec<Value> = c
                .orbits
                .iter()
                .map(|&(code, len, want)| {
                    let w = Fe::from_code(code);
                    checks.push(Check::eq(format!("orbit length for omega = {}", elem(f, w).code), len, want));
                    json!({ "omega": elem(f, w), "orbit_length": len, "expected": want })
                })
                .collect();
            let result = json!({
                "convention": c.convention,
                "orbits": rows,
                "covered": c.covered,
                "quadric_points": c.quadric_points,
            });
            Ok(("klein".into(), result, checks))
        }
    }
}

pub fn srg(space: &Space, args: &SetArgs, pairs: usize, degree_samples: usize, seed: u64, exhaustive: bool) -> Out {
    let (name, set, _) = resolve_set(space, args)?;
    let p = graph_params(space, &set, Sampling { pairs, degree_samples, seed, exhaustive })?;
    let nominal = (space.q2() as usize - 1) * set.len();
    let checks = vec![
        Check::eq("degree is (q^2-1)|set| at every sampled vertex", p.degrees_seen.clone(), vec![nominal]),
        Check::new("lambda and mu constant", p.srg_ok, format!("lambda {:?}, mu {:?}", p.lambdas_seen, p.mus_seen)),
    ];
    Ok(("srg".into(), json!({ "set": name, "seed": seed, "params": p }), checks))
}

pub fn code_weights(space: &Space, args: &SetArgs) -> Out {
    let (name, set, _) = resolve_set(space, args)?;
    let w = weight_distribution(space, &set);
    let total = (space.q2() as usize).pow(4) - 1;
    let checks =
        vec![Check::eq("nonzero codewords", w.total(), total), Check::eq("number of weights", w.weights.len(), 2)];
    Ok(("code-weights".into(), json!({ "set": name, "length": w.length, "weights": w.weights }), checks))
}
