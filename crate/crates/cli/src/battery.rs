use quasiherm_core::invariants::line_orbits;
use quasiherm_core::invariants::tables::Formulas;
use quasiherm_core::invariants::Check;
use quasiherm_core::srg::{DEFAULT_DEGREE_SAMPLES, DEFAULT_PAIRS, EXHAUSTIVE_MAX_Q};
use quasiherm_core::varieties::e_inner_indices;
use quasiherm_core::{Error, GroupKind, QuasiKind, Space};
use serde_json::{json, Value};

use crate::commands::{self, Out};
use crate::{Construction, LinesWhat, QuadricArg, SetArgs};

struct Row {
    item: String,
    status: &'static str,
    detail: String,
}

fn set_args(kind: QuasiKind) -> SetArgs {
    let (name, j, k) = match kind {
        QuasiKind::SE { j, k } => ("SE", Some(j), Some(k)),
        QuasiKind::H1E { k } => ("H1E", None, Some(k)),
        QuasiKind::SH2 { j } => ("SH2", Some(j), None),
    };
    SetArgs { kind: name.into(), j, k }
}

fn hermitian() -> SetArgs {
    SetArgs { kind: "H".into(), j: None, k: None }
}

fn summarize(checks: &[Check]) -> (&'static str, String) {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        ("PASS", format!("{} checks", checks.len()))
    } else {
        ("FAIL", format!("{} of {} failed: {}", failed.len(), checks.len(), failed.join("; ")))
    }
}

/// Runs every command for this q and collects one row per item. Items that
/// do not exist for this q are marked N/A and carry no checks.
pub fn report(space: &Space, src: Formulas) -> Out {
    let q = space.q();
    let mut rows = Vec::new();
    let mut all = Vec::new();
    let mut add = |item: String, out: Out| -> Result<(), Error> {
        let (_, _, checks) = out?;
        let (status, detail) = summarize(&checks);
        all.push(Check::new(item.clone(), status == "PASS", detail.clone()));
        rows.push(Row { item, status, detail });
        Ok(())
    };
    let mut na = Vec::new();

    add("field arithmetic".into(), commands::field_info(space))?;
    add("point, line and plane counts".into(), commands::geometry(space))?;
    add("surface sizes".into(), commands::surfaces(space, None))?;
    for kind in [GroupKind::K, GroupKind::G, GroupKind::GPrime] {
        add(format!("{kind} point orbits and stabilizers"), commands::orbits(space, kind))?;
    }
    for kind in [GroupKind::K, GroupKind::G] {
        add(format!("{kind} plane distribution table"), commands::tables(space, kind, src))?;
    }
    add("Hermitian surface plane spectrum".into(), commands::verify_quasi(space, &hermitian()))?;
    let kinds = QuasiKind::all(q);
    for &kind in &kinds {
        let args = set_args(kind);
        add(format!("{kind} is quasi-Hermitian"), commands::verify_quasi(space, &args))?;
        add(format!("{kind} contained-line census"), commands::lines(space, LinesWhat::Census, &args, src))?;
    }
    if e_inner_indices(q).is_empty() {
        na.push(("SE and H1E orbit unions", format!("no admissible k for q = {q}")));
    }
    add(
        "extended sublines of the Baer subgeometry".into(),
        commands::lines(space, LinesWhat::Sublines, &hermitian(), src),
    )?;
    add("lines of the family L".into(), commands::lines(space, LinesWhat::Special, &hermitian(), src))?;
    for k in e_inner_indices(q) {
        let args = SetArgs { kind: "H".into(), j: None, k: Some(k) };
        add(format!("lines of the family L_{k}"), commands::lines(space, LinesWhat::Special, &args, src))?;
    }
    add("largest line intersections".into(), commands::lines(space, LinesWhat::Bounds, &hermitian(), src))?;
    if q <= line_orbits::MAX_Q {
        add("G-orbits on lines".into(), commands::lines(space, LinesWhat::Orbits, &hermitian(), src))?;
    } else {
        na.push(("G-orbits on lines", format!("only computed for q <= {}", line_orbits::MAX_Q)));
    }
    add("sizes of Y for every (i, j)".into(), commands::yj(space, None, None, src))?;
    add("rank census of the quadric nets".into(), commands::net_census(space, None, None, src))?;
    for z in 0..=2 {
        add(
            format!("V1 with z = {z}"),
            commands::known(space, Construction::V1, z, None, None, QuadricArg::Elliptic, src),
        )?;
    }
    add(
        "V2 with default alpha, beta".into(),
        commands::known(space, Construction::V2, 0, None, None, QuadricArg::Elliptic, src),
    )?;
    for (name, quadric) in [("elliptic", QuadricArg::Elliptic), ("hyperbolic", QuadricArg::Hyperbolic)] {
        add(
            format!("V3 on the {name} quadric"),
            commands::known(space, Construction::V3, 0, None, None, quadric, src),
        )?;
    }
    add(
        "line censuses separate the constructions".into(),
        commands::known(space, Construction::Signatures, 0, None, None, QuadricArg::Elliptic, src),
    )?;
    add("Klein quadric orbit lengths".into(), commands::klein(space, None))?;
    if let Some(&first) = kinds.first() {
        let args = set_args(first);
        if q <= EXHAUSTIVE_MAX_Q {
            add(
                format!("{first} graph is strongly regular"),
                commands::srg(space, &args, DEFAULT_PAIRS, DEFAULT_DEGREE_SAMPLES, 0, true),
            )?;
        } else {
            na.push((
                "strongly regular graph",
                format!("exhaustive check only for q <= {EXHAUSTIVE_MAX_Q}; use the srg command to sample"),
            ));
        }
        add(format!("{first} code has two weights"), commands::code_weights(space, &args))?;
    }

    let mut result: Vec<Value> =
        rows.into_iter().map(|r| json!({ "item": r.item, "status": r.status, "detail": r.detail })).collect();
    result.extend(na.into_iter().map(|(item, why)| json!({ "item": item, "status": "N/A", "detail": why })));
    let passed = all.iter().filter(|c| c.pass).count();
    let summary = json!({ "passed": passed, "failed": all.len() - passed, "not_applicable": result.len() - all.len() });
    Ok(("report".into(), json!({ "summary": summary, "items": result }), all))
}
