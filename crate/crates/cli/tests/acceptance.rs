//! Acceptance gate: one PASS/FAIL line per criterion. All checks are exact;
//! the only tolerance is the per-row wall-clock bound of criterion 1.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use connobs_cli::{catalog_command, CatalogOptions, Status};
use connobs_core::fixtures::{builtin_catalog, CatalogEntry};
use connobs_core::groebner::{audited, submodule_equal, syzygy_matrix};
use connobs_core::modules::{direct_sum, PresentedModule};
use connobs_core::obstructions::{
    check_connection, full_report, ks_kernel, lclass, lclass_with, verify_connection, KsLift, ObstructionReport,
};
use connobs_core::{free_resolution, MonomialOrder, PolyMatrix, QuotientRing, Submodule};

type Check = Result<String, String>;
type Criterion = (&'static str, fn(&[CatalogEntry]) -> Check);

/// Wall-clock bound for each table row.
const ROW_LIMIT: Duration = Duration::from_secs(60);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |err| format!("{ctx}: {err}")
}

fn entry<'a>(cat: &'a [CatalogEntry], id: &str) -> &'a CatalogEntry {
    cat.iter().find(|e| e.id == id).unwrap_or_else(|| panic!("catalog lacks {id}"))
}

fn module<'a>(cat: &'a [CatalogEntry], id: &str, name: &str) -> &'a PresentedModule {
    &entry(cat, id).modules.iter().find(|m| m.name == name).unwrap_or_else(|| panic!("{id} lacks {name}")).module
}

fn criterion_1(_: &[CatalogEntry]) -> Check {
    let rows = [
        ("monomial-curve-345", "p", (1, 0, 1)),
        ("cubic-cone", "M3", (1, 0, 0)),
        ("cubic-cone", "M4", (1, 0, 0)),
        ("threefold-E6", "m", (1, 0, 0)),
    ];
    let mut slowest = 0f64;
    for id in ["monomial-curve-345", "cubic-cone", "threefold-E6"] {
        let mut out = Vec::new();
        let opts = CatalogOptions { verify: true, show: false };
        let status = catalog_command(Some(id), opts, None, &mut out).map_err(e(id))?;
        ensure(status == Status::Pass, || format!("{id}: status {status:?}"))?;
        let text = String::from_utf8(out).unwrap();
        for (_, name, (a, k, l)) in rows.iter().filter(|r| r.0 == id) {
            let prefix = format!("{name} | {a} | {k} | {l} | ");
            let line = text
                .lines()
                .find(|s| s.starts_with(&prefix))
                .ok_or_else(|| format!("{id}: no row `{prefix}` in\n{text}"))?;
            let ms: f64 = line[prefix.len()..].split_whitespace().next().unwrap().parse().unwrap();
            ensure(ms <= ROW_LIMIT.as_secs_f64() * 1e3, || format!("{id}/{name} took {ms} ms"))?;
            slowest = slowest.max(ms);
        }
    }
    Ok(format!("4 rows exact, slowest {slowest:.1} ms"))
}

fn connection_checked(id: &str, name: &str, m: &PresentedModule) -> Result<(), String> {
    let out = lclass(m).map_err(e(name))?;
    ensure(out.result.vanishes, || format!("{id}/{name}: lclass does not vanish"))?;
    let c = out.connection.ok_or_else(|| format!("{id}/{name}: no connection extracted"))?;
    ensure(verify_connection(&c), || format!("{id}/{name}: connection rejected"))
}

fn criterion_2(cat: &[CatalogEntry]) -> Check {
    let mut n = 0;
    for dim in ["curve", "surface"] {
        for t in ["A1", "A2", "A3", "A4", "A5", "D4", "E6"] {
            let id = format!("{dim}-{t}");
            for m in entry(cat, &id).modules.iter().filter(|m| m.mf.is_some()) {
                connection_checked(&id, &m.name, &m.module)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} factorization modules carry verified connections"))
}

fn criterion_3(cat: &[CatalogEntry]) -> Check {
    let (mut n, mut free) = (0, 0);
    for t in ["A1", "A2", "A3", "A4", "A5", "D4"] {
        let id = format!("threefold-{t}");
        for m in &entry(cat, &id).modules {
            if m.mf.is_some() {
                let out = lclass(&m.module).map_err(e(&id))?;
                ensure(!out.result.vanishes, || format!("{id}/{}: lclass vanishes", m.name))?;
                n += 1;
            } else {
                let rep = full_report(&m.name, &m.module).map_err(e(&id))?;
                ensure(m.module.has_free_presentation(), || format!("{id}/{}: not free", m.name))?;
                ensure(rep.verdicts() == (Some(0), Some(0), Some(0)), || {
                    format!("{id}/{}: free module has {:?}", m.name, rep.verdicts())
                })?;
                free += 1;
            }
        }
    }
    Ok(format!("{n} non-free modules obstructed, {free} free modules unobstructed"))
}

fn criterion_4(cat: &[CatalogEntry]) -> Check {
    let pairs = [
        ("curve-A1", "phi1", "A"),
        ("curve-A3", "phi1", "phi2"),
        ("cubic-cone", "M3", "M4"),
        ("threefold-A1", "phi1", "A"),
        ("surface-D4", "y", "phi1"),
    ];
    let mut summary = Vec::new();
    for (id, a, b) in pairs {
        let (m, n) = (module(cat, id, a), module(cat, id, b));
        let sum = direct_sum(m, n).map_err(e(id))?;
        let (km, kn, ks) = (ks_kernel(m), ks_kernel(n), ks_kernel(&sum));
        let (km, kn, ks) = (km.map_err(e(id))?, kn.map_err(e(id))?, ks.map_err(e(id))?);
        let meet = km.v.span().intersect(kn.v.span()).map_err(e(id))?;
        ensure(submodule_equal(ks.v.span(), &meet).map_err(e(id))?, || {
            format!("{id}: V({a}+{b}) differs from the intersection")
        })?;
        let l = |m: &PresentedModule| lclass(m).map(|o| o.result.vanishes).map_err(e(id));
        let (lm, ln, ls) = (l(m)?, l(n)?, l(&sum)?);
        ensure(ls == (lm && ln), || format!("{id}: lclass {ls} vs summands {lm}, {ln}"))?;
        summary.push(format!("{id}:{a}+{b}={}", u8::from(!ls)));
    }
    Ok(summary.join(", "))
}

fn criterion_5(cat: &[CatalogEntry]) -> Check {
    let (mut lifts, mut conns, mut mfs) = (0, 0, 0);
    for en in cat {
        for m in &en.modules {
            let ctx = format!("{}/{}", en.id, m.name);
            if let Some(mf) = &m.mf {
                let f_id = PolyMatrix::identity(mf.ambient(), mf.size()).scale(mf.potential());
                let pq = mf.phi().mul(mf.psi()).map_err(e(&ctx))?;
                let qp = mf.psi().mul(mf.phi()).map_err(e(&ctx))?;
                ensure(pq == f_id && qp == f_id, || format!("{ctx}: factorization identity fails"))?;
                mfs += 1;
            }
            let ks = ks_kernel(&m.module).map_err(e(&ctx))?;
            let d0 = m.module.presentation();
            for d in ks.v.generators() {
                let res = ks.ks_class(&m.module, d).map_err(e(&ctx))?;
                let lift = KsLift::from_result(&res).ok_or_else(|| format!("{ctx}: {d} has no witness"))?;
                let rhs = d0.mul(&lift.q).and_then(|dq| dq.sub(&lift.p.mul(d0)?)).map_err(e(&ctx))?;
                ensure(d.apply_matrix(d0).equals(&rhs), || format!("{ctx}: witness for {d} fails"))?;
                lifts += 1;
            }
            let out = lclass_with(&m.module, &ks).map_err(e(&ctx))?;
            if let Some(c) = out.connection {
                check_connection(&c).map_err(e(&ctx))?;
                conns += 1;
            }
        }
    }
    Ok(format!("{lifts} Kodaira-Spencer witnesses, {conns} connections, {mfs} factorizations"))
}

fn criterion_6(cat: &[CatalogEntry]) -> Check {
    for (id, name) in [("monomial-curve-345", "p"), ("cubic-cone", "M3"), ("curve-D5", "phi1")] {
        let m = module(cat, id, name);
        let base = full_report(name, m).map_err(e(id))?.verdicts();
        let once = m.with_redundant_pair().map_err(e(id))?;
        let twice = once.with_redundant_pair().map_err(e(id))?;
        for p in [&once, &twice] {
            let v = full_report(name, p).map_err(e(id))?.verdicts();
            ensure(v == base, || format!("{id}/{name}: padded {v:?} vs {base:?}"))?;
        }
    }
    let mut n = 0;
    for en in cat {
        let lex = en.with_order(MonomialOrder::Lex).map_err(e(&en.id))?;
        for (m, ml) in en.modules.iter().zip(&lex.modules) {
            let a = full_report(&m.name, &m.module).map_err(e(&en.id))?.verdicts();
            let b = full_report(&m.name, &ml.module).map_err(e(&en.id))?.verdicts();
            ensure(a == b, || format!("{}/{}: dp {a:?} vs lp {b:?}", en.id, m.name))?;
            ensure(m.expected.matches(a), || format!("{}/{}: {a:?} unexpected", en.id, m.name))?;
            n += 1;
        }
    }
    Ok(format!("padding stable on 3 fixtures, {n} modules agree under dp and lp"))
}

fn criterion_7(cat: &[CatalogEntry]) -> Check {
    let (reports, log) = audited(|| {
        cat.iter()
            .flat_map(|en| en.modules.iter().map(move |m| (en, m)))
            .map(|(en, m)| full_report(&m.name, &m.module).map_err(e(&en.id)))
            .collect::<Result<Vec<ObstructionReport>, String>>()
    });
    let reports = reports?;
    ensure(log.checked > 0 && log.failures == 0, || format!("{} of {} bases fail", log.failures, log.checked))?;

    let r = QuotientRing::from_strings(&["x", "y", "z"], MonomialOrder::DegRevLex, &[]).map_err(e("ring"))?;
    let koszul = |text: &str, ranks: &[usize]| -> Result<(), String> {
        let m = PolyMatrix::parse(&r, text).map_err(e(text))?;
        let res = free_resolution(&m, ranks.len() - 1).map_err(e(text))?;
        ensure(res.ranks() == ranks && res.is_complex(), || format!("{text}: ranks {:?}", res.ranks()))
    };
    koszul("[[x, y]]", &[1, 2, 1])?;
    koszul("[[x, y, z]]", &[1, 3, 3, 1])?;
    let xy = PolyMatrix::parse(&r, "[[x, y]]").map_err(e("xy"))?;
    let expected = Submodule::from_columns(&PolyMatrix::parse(&r, "[[-y], [x]]").map_err(e("xy"))?);
    ensure(submodule_equal(&Submodule::from_columns(&syzygy_matrix(&xy)), &expected).map_err(e("xy"))?, || {
        "syzygy of (x, y) is not the Koszul relation".into()
    })?;

    let mut resolutions = 0;
    for en in cat {
        for m in &en.modules {
            let res = free_resolution(m.module.presentation(), 3).map_err(e(&en.id))?;
            ensure(res.is_complex(), || format!("{}/{}: resolution is not a complex", en.id, m.name))?;
            resolutions += 1;
        }
    }
    Ok(format!(
        "{} bases over {} modules satisfy the criterion, Koszul recovered, {resolutions} resolutions are complexes",
        log.checked,
        reports.len()
    ))
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let cat = builtin_catalog().expect("builtin catalog");
    let criteria: [Criterion; 7] = [
        ("1 table rows", criterion_1),
        ("2 dimension <= 2 connections", criterion_2),
        ("3 dimension 3 obstructions", criterion_3),
        ("4 direct sums", criterion_4),
        ("5 witness oracles", criterion_5),
        ("6 presentation and order independence", criterion_6),
        ("7 engine suite", criterion_7),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome = check(&cat);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1} s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
