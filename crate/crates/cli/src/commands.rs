use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};
use tczeta::abelian::{lattice_reidemeister, lattice_zeta, parse_matrix, profinite_approximation, Count};
use tczeta::chartable::{compute_character_table, tbft_basis_check, DualMap, Representation};
use tczeta::group::{class_map, conjugacy_classes};
use tczeta::shift::{counterexample_certificate, shift_reidemeister_data, shift_rt_counts, shift_zetas, DEFAULT_MOVES};
use tczeta::twisted::{reidemeister_classes, reidemeister_number};
use tczeta::zeta::{
    functional_equation_check, gauss_congruence_report, orbit_decomposition, series_matches_rational, zeta_rational,
    zeta_series,
};
use tczeta::Error;

use crate::input;
use crate::report::{big, bigs, join, rational, CliError, CliResult, Output};

fn verification(message: impl Into<String>) -> CliError {
    CliError::Lib(Error::VerificationFailed(message.into()))
}

pub fn classes(group: &str) -> CliResult<Output> {
    let g = input::group(group)?.group;
    let p = conjugacy_classes(&g);
    let mut out = Output::default();
    out.line(format!("order: {}", g.order()));
    out.line(format!("classes: {}", p.count()));
    out.line("class  size  order  representative");
    let mut rows = Vec::new();
    for c in 0..p.count() {
        let r = p.reps[c];
        let label = g.label(r);
        out.line(format!("{c:>5}  {:>4}  {:>5}  {label}", p.sizes[c], g.element_order(r)));
        rows.push(json!({
            "class": c,
            "size": p.sizes[c],
            "element_order": g.element_order(r),
            "representative": r,
            "label": label,
        }));
    }
    out.set("order", json!(g.order()));
    out.set("class_count", json!(p.count()));
    out.set("classes", Value::Array(rows));
    Ok(out)
}

fn counts(phi: &tczeta::group::Endomorphism, max_n: u32) -> Vec<BigInt> {
    (1..=max_n).map(|n| BigInt::from(reidemeister_number(phi, n))).collect()
}

pub fn reid(group: &str, endo: &str, max_n: u32) -> CliResult<Output> {
    let g = input::group(group)?;
    let phi = input::endomorphism(&g, endo)?;
    let p = reidemeister_classes(&phi);
    let counts = counts(&phi, max_n);
    let mut out = Output::default();
    out.line(format!("R(phi): {}", p.count()));
    let mut sizes = vec![0usize; p.count()];
    for &c in &p.class_of {
        sizes[c] += 1;
    }
    out.line("class  size  representative");
    let mut rows = Vec::new();
    for (c, &r) in p.reps.iter().enumerate() {
        out.line(format!("{c:>5}  {:>4}  {}", sizes[c], g.group.label(r)));
        rows.push(json!({"class": c, "size": sizes[c], "representative": r, "label": g.group.label(r)}));
    }
    out.line("n  R(phi^n)");
    for (n, c) in counts.iter().enumerate() {
        out.line(format!("{}  {c}", n + 1));
    }
    out.set("reidemeister_number", json!(p.count()));
    out.set("classes", Value::Array(rows));
    out.set("counts", bigs(&counts));
    Ok(out)
}

pub struct ZetaFlags {
    pub check_congruences: bool,
    pub check_fe: bool,
}

pub fn zeta(group: &str, endo: &str, max_n: u32, flags: ZetaFlags) -> CliResult<Output> {
    let g = input::group(group)?;
    let phi = input::endomorphism(&g, endo)?;
    let cm = class_map(&phi)?;
    let r = zeta_rational(&cm)?;
    let counts = counts(&phi, max_n);
    let mut out = Output::default();
    out.line(format!("counts: {}", join(&counts)));
    out.line(format!("zeta: {r}"));
    if !series_matches_rational(&zeta_series(&counts), &r) {
        return Err(verification(format!("{r} does not match the series of the counts")));
    }
    out.line(format!("series match to order {max_n}: true"));
    let gauss = gauss_congruence_report(&counts);
    out.line(format!("congruence residues: {}", join(&gauss.residues)));
    out.set("counts", bigs(&counts));
    out.set("zeta", rational(&r));
    out.set("series_match", json!(true));
    out.set("congruence_residues", bigs(&gauss.residues));
    if flags.check_congruences && !gauss.all_zero() {
        return Err(verification("nonzero congruence residue"));
    }
    if flags.check_fe {
        let od = orbit_decomposition(&cm.sigma);
        let fe = functional_equation_check(&r, &od)?;
        out.line(format!(
            "functional equation (a={}, b={}): {}",
            od.a, od.b, fe.identity_holds
        ));
        if let Some(d) = fe.det_sigma {
            out.line(format!("det(sigma): {d}"));
        }
        out.set(
            "functional_equation",
            json!({"a": od.a, "b": od.b, "holds": fe.holds(), "identity_holds": fe.identity_holds, "det_sigma": fe.det_sigma}),
        );
        if !fe.holds() {
            return Err(verification("functional equation fails"));
        }
    }
    Ok(out)
}

fn dual_map(group: &str, endo: &str) -> CliResult<DualMap> {
    let g = input::group(group)?;
    let phi = input::endomorphism(&g, endo)?;
    let table = Arc::new(compute_character_table(&g.group)?);
    Ok(DualMap::new(&table, &phi)?)
}

pub fn tbft(group: &str, endo: &str, max_n: u32, reps: &[String]) -> CliResult<Output> {
    let d = dual_map(group, endo)?;
    let report = d.tbft_check(max_n);
    let mut out = Output::default();
    out.line("n  R  fixed  RT");
    let mut rows = Vec::new();
    for r in &report.rows {
        out.line(format!("{}  {}  {}  {}", r.n, r.reidemeister, r.fixed_classes, r.rt));
        rows.push(json!({"n": r.n, "reidemeister": r.reidemeister, "fixed_classes": r.fixed_classes, "rt": r.rt}));
    }
    out.line(format!("all equal: {}", report.all_equal()));
    out.set("rows", Value::Array(rows));
    out.set("all_equal", json!(report.all_equal()));
    if !report.all_equal() {
        return Err(verification("R, Tr B^n and RT disagree"));
    }
    if !reps.is_empty() {
        let reps: Vec<Representation> = reps
            .iter()
            .map(|p| Ok(Representation::from_data(&d.table, &input::rep(p)?)?))
            .collect::<CliResult<_>>()?;
        let basis = tbft_basis_check(&d, &reps)?;
        out.line(format!("fixed characters: {}", join(&basis.fixed)));
        let mut fns = Vec::new();
        for t in &basis.functions {
            out.line(format!(
                "chi{}: intertwiner residual {:.3e}, class deviation {:.3e}",
                t.rho_index, t.intertwiner_residual, t.class_deviation
            ));
            fns.push(json!({
                "character": t.rho_index,
                "intertwiner_residual": t.intertwiner_residual,
                "class_deviation_residual": t.class_deviation,
            }));
        }
        out.line(format!("rank: {} (R = {})", basis.rank, basis.reidemeister));
        out.set(
            "basis",
            json!({"fixed": basis.fixed, "functions": fns, "rank": basis.rank, "reidemeister": basis.reidemeister, "holds": basis.holds()}),
        );
        if !basis.holds() {
            return Err(verification("twisted class functions do not form a basis"));
        }
    }
    Ok(out)
}

pub fn chartable(group: &str) -> CliResult<Output> {
    let g = input::group(group)?.group;
    let table = compute_character_table(&g)?;
    let classes = table.classes();
    let mut out = Output::default();
    out.line(format!(
        "order {}, {} classes, exponent {}, prime {}",
        g.order(),
        table.count(),
        table.exponent(),
        table.prime()
    ));
    out.line(format!("w = exp(2 pi i / {})", table.exponent()));
    let labels: Vec<String> = classes.reps.iter().map(|&r| g.label(r)).collect();
    out.line(format!("class reps: {}", labels.join("  ")));
    out.line(format!("class sizes: {}", join(&classes.sizes)));
    let mut chars = Vec::new();
    for chi in 0..table.count() {
        let values: Vec<String> = table.values(chi).iter().map(|m| table.format_value(m)).collect();
        out.line(format!("chi{chi}: {}", values.join("  |  ")));
        chars.push(json!({
            "degree": table.degrees()[chi],
            "values": values,
            "multiplicities": table.values(chi),
        }));
    }
    out.set("order", json!(g.order()));
    out.set("exponent", json!(table.exponent()));
    out.set("prime", json!(table.prime()));
    out.set("class_sizes", json!(classes.sizes));
    out.set("class_labels", json!(labels));
    out.set("characters", Value::Array(chars));
    Ok(out)
}

pub fn rt_zeta(group: &str, endo: &str) -> CliResult<Output> {
    let d = dual_map(group, endo)?;
    let rt = d.rt_zeta()?;
    let fe = &rt.functional_equation;
    let mut out = Output::default();
    out.line(format!("fixed characters: {}", join(&d.fixed_set)));
    out.line(format!("subsystem: {}", join(&rt.subsystem.members)));
    let orbits: Vec<Vec<usize>> = rt
        .orbits
        .orbits
        .iter()
        .map(|o| o.iter().map(|&i| rt.subsystem.members[i]).collect())
        .collect();
    let shown: Vec<String> = orbits.iter().map(|o| format!("({})", join(o))).collect();
    out.line(format!("periodic orbits: {}", shown.join(" ")));
    out.line(format!("RT zeta: {}", rt.rational));
    out.line(format!(
        "functional equation (a={}, b={}): {}",
        rt.orbits.a, rt.orbits.b, fe.identity_holds
    ));
    if let Some(det) = fe.det_sigma {
        out.line(format!("det(sigma): {det}"));
    }
    out.set("fixed", json!(d.fixed_set));
    out.set("subsystem", json!(rt.subsystem.members));
    out.set("orbits", json!(orbits));
    out.set("rt_zeta", rational(&rt.rational));
    out.set(
        "functional_equation",
        json!({"a": rt.orbits.a, "b": rt.orbits.b, "holds": fe.holds(), "identity_holds": fe.identity_holds, "det_sigma": fe.det_sigma}),
    );
    if !fe.holds() {
        return Err(verification("functional equation fails"));
    }
    Ok(out)
}

pub fn abelian(matrix: &str, max_n: u32, profinite: Option<u32>) -> CliResult<Output> {
    let m = parse_matrix(matrix)?;
    let mut out = Output::default();
    out.line(format!("M: {m}"));
    let shown: Vec<String> = (1..=max_n).map(|n| lattice_reidemeister(&m, n).to_string()).collect();
    out.line(format!("counts: {}", shown.join(" ")));
    if let Some(n) = (1..=max_n.max(2)).find(|&n| lattice_reidemeister(&m, n) == Count::Infinite) {
        return Err(CliError::Lib(Error::InfiniteReidemeister(n)));
    }
    let z = lattice_zeta(&m, max_n)?;
    out.line(format!("Lefschetz zeta: {}", z.lefschetz));
    out.line(format!("sigma: {}, r: {}", z.sigma, z.r));
    out.line(format!("zeta: {}", z.zeta));
    out.set("matrix", json!(m.to_string()));
    out.set("counts", bigs(&z.counts));
    out.set("lefschetz", rational(&z.lefschetz));
    out.set("sigma", json!(z.sigma));
    out.set("r", json!(z.r));
    out.set("zeta", rational(&z.zeta));
    if let Some(i_max) = profinite {
        let report = profinite_approximation(&m, i_max, max_n)?;
        out.line("i  c_i  counts  agree  first discrepancy");
        let mut rows = Vec::new();
        for r in &report.rows {
            let first = r.first_discrepancy.map_or("none".to_string(), |j| j.to_string());
            out.line(format!(
                "{}  {}  {}  {}  {first}",
                r.i,
                r.modulus,
                join(&r.quotient_counts),
                r.counts_agree && r.series_agree
            ));
            rows.push(json!({
                "i": r.i,
                "modulus": big(&r.modulus),
                "quotient_counts": bigs(&r.quotient_counts),
                "counts_agree": r.counts_agree,
                "series_agree": r.series_agree,
                "first_discrepancy": r.first_discrepancy,
                "explicit_model_agrees": r.explicit_model_agrees,
            }));
        }
        out.set("profinite", Value::Array(rows));
        if !report.holds() {
            return Err(verification("quotient zetas disagree below their order"));
        }
    }
    Ok(out)
}

pub fn shift(base: &str, max_n: u32, seed: u64) -> CliResult<Output> {
    let f = input::group(base)?.group;
    let cert = shift_reidemeister_data(&f, max_n, DEFAULT_MOVES, seed)?;
    let (rt, rtf) = shift_rt_counts(&f, max_n);
    let zetas = shift_zetas(&f)?;
    let ce = counterexample_certificate(&f);
    let mut out = Output::default();
    out.line(format!("|F| = {}, classes = {}, |F^ab| = {}", ce.r, ce.rt, ce.rt_f));
    out.line(format!(
        "random moves: {}, invariant failures: {}, reduction failures: {}, injective: {}",
        cert.moves, cert.invariant_failures, cert.reduction_failures, cert.injective
    ));
    out.line(format!("R counts: {}", join(&cert.counts)));
    out.line(format!("R: {}", zetas.r));
    out.line(format!("RT: {}", zetas.rt));
    out.line(format!("RTf: {}", zetas.rt_f));
    out.line(format!("TBFT fails: {}", ce.tbft_fails));
    out.line(format!("TBFTf fails: {}", ce.tbft_f_fails));
    out.set(
        "certificate",
        json!({
            "moves": cert.moves,
            "seed": seed,
            "invariant_failures": cert.invariant_failures,
            "reduction_failures": cert.reduction_failures,
            "injective": cert.injective,
        }),
    );
    out.set(
        "counts",
        json!({"r": bigs(&cert.counts), "rt": bigs(&rt), "rt_f": bigs(&rtf)}),
    );
    out.set(
        "zetas",
        json!({"r": rational(&zetas.r), "rt": rational(&zetas.rt), "rt_f": rational(&zetas.rt_f)}),
    );
    out.set(
        "counterexample",
        json!({"order": ce.r, "classes": ce.rt, "abelianization": ce.rt_f, "tbft_fails": ce.tbft_fails, "tbft_f_fails": ce.tbft_f_fails}),
    );
    if !cert.holds() {
        return Err(verification("shift invariant certificate failed"));
    }
    if !ce.consistent() {
        return Err(verification("TBFT failure flags disagree with commutativity"));
    }
    Ok(out)
}
