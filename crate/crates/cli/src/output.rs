//! Text, JSON and CSV rendering. Every renderer returns the full output so the
//! caller decides when to print.

use std::fmt::Write as _;

use clap::ValueEnum;
use littleadj::characters::LayerDecomposition;
use littleadj::gradedmult::{height_table, GradedMultiplicity, HeightTable, Method};
use littleadj::verify::SuiteReport;
use littleadj::{Family, RootSystem};
use serde_json::{json, Value};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn tag(rs: &RootSystem) -> String {
    format!("{}{}", rs.family(), rs.rank())
}

fn lambda_name(g: &GradedMultiplicity) -> &'static str {
    if g.weight.is_zero() {
        "trivial"
    } else {
        "little-adjoint"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn gm_json(rs: &RootSystem, g: &GradedMultiplicity) -> Value {
    serde_json::to_value(g.report(rs)).expect("reports serialize")
}

pub fn gm(
    rs: &RootSystem,
    results: &[GradedMultiplicity],
    skipped: &[(Method, String)],
    single: bool,
    agree: bool,
    format: Format,
) -> String {
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    match format {
        Format::Json if single => {
            let mut v = gm_json(rs, &results[0]);
            v["schema"] = json!("littleadj.gm.v1");
            json_string(&v)
        }
        Format::Json => {
            let lambda = results
                .first()
                .map(|g| json!(g.weight))
                .unwrap_or(Value::Null);
            json_string(&json!({
                "schema": "littleadj.gm-all.v1",
                "type": rs.family(),
                "rank": rs.rank(),
                "lambda": lambda,
                "routes": results.iter().map(|g| gm_json(rs, g)).collect::<Vec<_>>(),
                "skipped": skipped
                    .iter()
                    .map(|(m, why)| json!({"method": m, "reason": why}))
                    .collect::<Vec<_>>(),
                "verdict": verdict,
            }))
        }
        Format::Csv => csv_string(
            &["method", "degree", "coefficient"],
            results
                .iter()
                .flat_map(|g| {
                    g.coefficients()
                        .into_iter()
                        .map(move |(d, c)| vec![g.method.to_string(), d.to_string(), c.to_string()])
                })
                .collect(),
        ),
        Format::Text if single => {
            let g = &results[0];
            let c = g.checks(rs);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{} {} λ = {} via {}",
                tag(rs),
                lambda_name(g),
                g.weight,
                g.method
            );
            let _ = writeln!(s, "GM(q) = {}", g.poly);
            if g.method == Method::Closed {
                let _ = writeln!(s, "factored: {}", g.display_factored());
            }
            let degree = c.degree.map_or("-".to_string(), |d| d.to_string());
            let _ = writeln!(
                s,
                "degree {degree}, value at 1: {}, palindromic: {}, nonnegative: {}",
                c.value_at_1,
                yes_no(c.palindromic),
                yes_no(c.nonnegative)
            );
            s
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(g) = results.first() {
                let _ = writeln!(s, "{} {} λ = {}", tag(rs), lambda_name(g), g.weight);
            }
            for g in results {
                let _ = writeln!(s, "  {:<11} {}", g.method.to_string(), g.poly);
            }
            for (m, why) in skipped {
                let _ = writeln!(s, "  {:<11} skipped: {why}", m.to_string());
            }
            let _ = writeln!(s, "verdict: {verdict}");
            s
        }
    }
}

fn counts_by_height(t: &HeightTable) -> Vec<(i64, u32)> {
    t.counts.iter().map(|(&n, &c)| (n, c)).collect()
}

pub fn exponents(rs: &RootSystem, format: Format) -> String {
    let h = rs.special_exponents().ascending();
    let t = height_table(rs);
    let rows = counts_by_height(&t);
    match format {
        Format::Json => json_string(&json!({
            "schema": "littleadj.exponents.v1",
            "type": rs.family(),
            "rank": rs.rank(),
            "exponents": h,
            "heights": rows,
            "boxes": rs.special_exponents().size(),
        })),
        Format::Csv => csv_string(
            &["height", "count"],
            rows.iter()
                .map(|(n, c)| vec![n.to_string(), c.to_string()])
                .collect(),
        ),
        Format::Text => {
            let list: Vec<String> = h.iter().map(u32::to_string).collect();
            let mut s = format!("{} h = [{}]\n", tag(rs), list.join(", "));
            let _ = writeln!(
                s,
                "special heights of the short positive coroots (one row per height):"
            );
            for (n, c) in &rows {
                let _ = writeln!(s, "  {n:>3} | {}", "[]".repeat(*c as usize));
            }
            let _ = writeln!(
                s,
                "{} boxes; column lengths give the exponents",
                rs.special_exponents().size()
            );
            s
        }
    }
}

pub fn decomposition(rs: &RootSystem, layer: &LayerDecomposition, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(layer).expect("decompositions serialize");
            v["schema"] = json!("littleadj.decompose.v1");
            v["type"] = json!(rs.family());
            v["rank"] = json!(rs.rank());
            v["dimension"] = json!(layer.reconstructed_dimension().to_string());
            json_string(&v)
        }
        Format::Csv => csv_string(
            &["highest_weight", "dimension", "multiplicity"],
            layer
                .constituents
                .iter()
                .map(|c| {
                    vec![
                        c.highest_weight.to_string(),
                        c.dimension.to_string(),
                        c.multiplicity.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = format!(
                "{} exterior power {} of V_θs: dimension {}\n",
                tag(rs),
                layer.degree,
                layer.reconstructed_dimension()
            );
            for c in &layer.constituents {
                let _ = writeln!(
                    s,
                    "  V{:<12} dim {:<8} multiplicity {}",
                    c.highest_weight.to_string(),
                    c.dimension,
                    c.multiplicity
                );
            }
            s
        }
    }
}

fn all_tables() -> (Vec<HeightTable>, HeightTable, HeightTable) {
    let sys = |f, r| RootSystem::from_family(f, r).expect("table types are valid");
    let c = (3..=6).map(|r| height_table(&sys(Family::C, r))).collect();
    (
        c,
        height_table(&sys(Family::F, 4)),
        height_table(&sys(Family::G, 2)),
    )
}

fn coeffs(v: &[i32]) -> String {
    let parts: Vec<String> = v.iter().map(i32::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn tables(format: Format) -> String {
    let (c, f4, g2) = all_tables();
    match format {
        Format::Json => json_string(&json!({
            "schema": "littleadj.tables.v1",
            "type_c": c,
            "f4": f4,
            "g2": g2,
        })),
        Format::Csv => {
            let mut rows = Vec::new();
            for t in c.iter().chain([&f4, &g2]) {
                for r in &t.rows {
                    rows.push(vec![
                        format!("{}{}", t.family, t.rank),
                        coeffs(&r.root),
                        coeffs(&r.coroot),
                        r.sigma_height.to_string(),
                        r.special_height.to_string(),
                        r.part.map(String::from).unwrap_or_default(),
                    ]);
                }
            }
            csv_string(
                &[
                    "type",
                    "root",
                    "coroot",
                    "sigma_height",
                    "special_height",
                    "part",
                ],
                rows,
            )
        }
        Format::Text => {
            let mut s = String::new();
            for t in &c {
                let _ = writeln!(
                    s,
                    "C{}: multiplicities of special heights of short coroots",
                    t.rank
                );
                let _ = writeln!(s, "  {:>3}  {:>4}  {:>4}  {:>4}", "n", "h_J", "h_K", "h_R");
                let j = t.j_counts.clone().unwrap_or_default();
                let k = t.k_counts.clone().unwrap_or_default();
                for (&n, &hr) in &t.counts {
                    let _ = writeln!(
                        s,
                        "  {n:>3}  {:>4}  {:>4}  {hr:>4}",
                        j.get(&n).copied().unwrap_or(0),
                        k.get(&n).copied().unwrap_or(0)
                    );
                }
                s.push('\n');
            }
            for t in [&f4, &g2] {
                let _ = writeln!(s, "{}{}: short positive roots", t.family, t.rank);
                let _ = writeln!(
                    s,
                    "  {:<12} {:<12} {:>5} {:>5}",
                    "root", "coroot", "(σ,α)", "(ρ,α∨)"
                );
                for r in &t.rows {
                    let _ = writeln!(
                        s,
                        "  {:<12} {:<12} {:>5} {:>5}",
                        coeffs(&r.root),
                        coeffs(&r.coroot),
                        r.sigma_height,
                        r.special_height
                    );
                }
                s.push('\n');
            }
            s
        }
    }
}

pub fn verify(reports: &[SuiteReport], format: Format) -> String {
    let pass = reports.iter().all(SuiteReport::passed);
    match format {
        Format::Json => json_string(&json!({
            "schema": "littleadj.verify.v1",
            "suites": reports,
            "pass": pass,
        })),
        Format::Csv => csv_string(
            &["suite", "check", "pass", "detail"],
            reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        vec![
                            r.suite.to_string(),
                            c.name.clone(),
                            c.pass.to_string(),
                            c.detail.clone(),
                        ]
                    })
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                for c in &r.checks {
                    let verdict = if c.pass { "PASS" } else { "FAIL" };
                    let _ = write!(s, "[{}] {verdict} {}", r.suite, c.name);
                    if !c.detail.is_empty() {
                        let _ = write!(s, ": {}", c.detail);
                    }
                    s.push('\n');
                }
                let n_pass = r.checks.iter().filter(|c| c.pass).count();
                let _ = writeln!(
                    s,
                    "suite {}: {} ({n_pass}/{})",
                    r.suite,
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.checks.len()
                );
            }
            let _ = writeln!(s, "overall: {}", if pass { "PASS" } else { "FAIL" });
            s
        }
    }
}
