use std::fmt::Write as _;

use serde::Serialize;

use coverdepth::coverage::{
    expectation_chain_oracle, expectation_exact, mds_lower_bound, run_method, verify_all_methods,
    CheckOutcome, ExpectationResult, Method, SimulationConfig, VerificationReport,
};
use coverdepth::enumeration::{
    beta, extended_enumerator, extension_weight_distribution, macwilliams_dual, support_census,
    weight_distribution, ExtendedEnumerator, WeightDistribution, CENSUS_MAX_N,
};
use coverdepth::numeric::round_significant;
use coverdepth::{ExactRational, LinearCode};

use crate::Format;
use coverdepth_cli::source::CodeSpec;

/// Rendered output plus whether the command succeeded. Hard errors never get
/// this far; `success = false` means a verification check failed.
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            success: true,
        }
    }
}

fn decimal(x: f64) -> String {
    round_significant(x, 12).to_string()
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        w.write_record(row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn describe(spec: &CodeSpec, code: &LinearCode) -> String {
    format!("{spec} [{}, {}]_{}", code.n(), code.k(), code.q())
}

fn compute(
    spec: &CodeSpec,
    method: Method,
    sim: SimulationConfig,
) -> Result<ExpectationResult, String> {
    if method == Method::ClosedForm {
        let value = spec
            .closed_form()
            .ok_or_else(|| format!("no closed form for {spec}"))??;
        return Ok(ExpectationResult::exact(method, value));
    }
    let code = spec.build()?;
    run_method(&code, method, None, sim).map_err(|e| e.to_string())
}

pub fn expect(
    spec: &CodeSpec,
    method: &str,
    sim: SimulationConfig,
    format: Format,
) -> Result<Outcome, String> {
    let method: Method = method
        .parse()
        .map_err(|e: coverdepth::Error| e.to_string())?;
    let result = compute(spec, method, sim)?;
    let output = match format {
        Format::Json => to_json(&result)?,
        Format::Csv => {
            let mc = result.mc.as_ref();
            to_csv(
                &[
                    "code",
                    "method",
                    "exact",
                    "approx",
                    "mc_mean",
                    "mc_stderr",
                    "trials",
                    "seed",
                ],
                &[vec![
                    spec.to_string(),
                    result.method.clone(),
                    result
                        .exact
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    decimal(result.approx()),
                    mc.map(|m| decimal(m.mean)).unwrap_or_default(),
                    mc.map(|m| decimal(m.stderr)).unwrap_or_default(),
                    mc.map(|m| m.trials.to_string()).unwrap_or_default(),
                    mc.map(|m| m.seed.to_string()).unwrap_or_default(),
                ]],
            )?
        }
        Format::Human => {
            let mut s = format!("code    {spec}\nmethod  {}\n", result.method);
            match (&result.exact, &result.mc) {
                (Some(v), _) => writeln!(s, "E       {v} ~ {}", decimal(v.to_f64())),
                (None, Some(mc)) => writeln!(
                    s,
                    "E       ~ {} +/- {} ({} trials, seed {})",
                    decimal(mc.mean),
                    decimal(mc.stderr),
                    mc.trials,
                    mc.seed
                ),
                (None, None) => Ok(()),
            }
            .expect("writing to a String");
            s
        }
    };
    Ok(Outcome::ok(output))
}

#[derive(Serialize)]
struct Extension {
    m: u32,
    weights: WeightDistribution,
}

#[derive(Serialize)]
struct WeightsReport {
    code: String,
    n: usize,
    k: usize,
    q: u64,
    weights: WeightDistribution,
    dual: WeightDistribution,
    extended: Option<ExtendedEnumerator>,
    extensions: Vec<Extension>,
}

fn nonzero_terms(w: &WeightDistribution) -> String {
    let terms: Vec<String> = w
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.into())
        .map(|(i, c)| format!("W_{i}={c}"))
        .collect();
    terms.join(" ")
}

fn polynomial(coeffs: &[i64]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        let mag = c.unsigned_abs();
        let body = match (deg, mag) {
            (0, _) => mag.to_string(),
            (1, 1) => "U".to_string(),
            (1, _) => format!("{mag} U"),
            (_, 1) => format!("U^{deg}"),
            _ => format!("{mag} U^{deg}"),
        };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (sign, body)) in terms.iter().enumerate() {
        match (i, *sign) {
            (0, "+") => out.push_str(body),
            (0, _) => write!(out, "-{body}").expect("writing to a String"),
            _ => write!(out, " {sign} {body}").expect("writing to a String"),
        }
    }
    out
}

pub fn weights(
    spec: &CodeSpec,
    extended: bool,
    ms: &[u32],
    format: Format,
) -> Result<Outcome, String> {
    let code = spec.build()?;
    let err = |e: coverdepth::Error| e.to_string();
    let w = weight_distribution(&code).map_err(err)?;
    let dual = macwilliams_dual(&w, code.q(), code.k()).map_err(err)?;
    let enumerator = if extended || !ms.is_empty() {
        Some(extended_enumerator(&code).map_err(err)?)
    } else {
        None
    };
    let extensions = match &enumerator {
        Some(e) => ms
            .iter()
            .map(|&m| {
                extension_weight_distribution(e, code.q(), m)
                    .map(|weights| Extension { m, weights })
                    .map_err(err)
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let report = WeightsReport {
        code: spec.to_string(),
        n: code.n(),
        k: code.k(),
        q: code.q(),
        weights: w,
        dual,
        extended: enumerator,
        extensions,
    };

    let output = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            let mut dist = |section: &str, param: String, w: &WeightDistribution| {
                for (i, c) in w.counts().iter().enumerate() {
                    rows.push(vec![
                        section.to_string(),
                        param.clone(),
                        i.to_string(),
                        c.to_string(),
                    ]);
                }
            };
            dist("weights", String::new(), &report.weights);
            dist("dual", String::new(), &report.dual);
            for ext in &report.extensions {
                dist("extension", ext.m.to_string(), &ext.weights);
            }
            if let Some(e) = &report.extended {
                for (t, b) in e.b_polys().iter().enumerate() {
                    for (deg, c) in b.iter().enumerate() {
                        rows.push(vec![
                            "enumerator".into(),
                            t.to_string(),
                            deg.to_string(),
                            c.to_string(),
                        ]);
                    }
                }
            }
            to_csv(&["section", "param", "index", "value"], &rows)?
        }
        Format::Human => {
            let mut s = format!("code    {}\n", describe(spec, &code));
            writeln!(s, "weights {}", nonzero_terms(&report.weights)).expect("writing to a String");
            writeln!(s, "dual    {}", nonzero_terms(&report.dual)).expect("writing to a String");
            if let Some(e) = &report.extended {
                for (t, b) in e.b_polys().iter().enumerate() {
                    writeln!(s, "B_{t}(U) = {}", polynomial(b)).expect("writing to a String");
                }
            }
            for ext in &report.extensions {
                writeln!(s, "m={}     {}", ext.m, nonzero_terms(&ext.weights))
                    .expect("writing to a String");
            }
            s
        }
    };
    Ok(Outcome::ok(output))
}

fn check(report: &mut VerificationReport, name: &str, result: Result<(bool, String), String>) {
    let (passed, detail) = match result {
        Ok(r) => r,
        Err(e) => (false, e),
    };
    report.checks.push(CheckOutcome {
        check: name.to_string(),
        passed,
        detail,
    });
}

/// Structural checks on one code beyond the expectation methods.
fn property_checks(code: &LinearCode, report: &mut VerificationReport) {
    let err = |e: coverdepth::Error| e.to_string();
    check(
        report,
        "macwilliams matches dual enumeration",
        (|| {
            let w = weight_distribution(code).map_err(err)?;
            let via = macwilliams_dual(&w, code.q(), code.k()).map_err(err)?;
            let direct = weight_distribution(&code.dual()).map_err(err)?;
            Ok((via == direct, format!("dual weights {:?}", direct.counts())))
        })(),
    );
    check(
        report,
        "census duality",
        (|| {
            let primal = support_census(code).map_err(err)?;
            let dual = support_census(&code.dual()).map_err(err)?;
            let (n, k) = (code.n() as i64, code.k() as i64);
            let mut bad = 0;
            for s in 0..=n {
                for ell in 0..=k {
                    if beta(&primal, ell, s as usize) != beta(&dual, ell + s - k, (n - s) as usize)
                    {
                        bad += 1;
                    }
                }
            }
            Ok((bad == 0, format!("{bad} mismatched (ell, s) pairs")))
        })(),
    );
    check(
        report,
        "extended enumerator at m = 1",
        (|| {
            let e = extended_enumerator(code).map_err(err)?;
            let at_one = extension_weight_distribution(&e, code.q(), 1).map_err(err)?;
            let zero = extension_weight_distribution(&e, code.q(), 0).map_err(err)?;
            let ok = at_one == weight_distribution(code).map_err(err)?
                && zero == WeightDistribution::delta(code.n());
            Ok((ok, "m = 1 gives the code, m = 0 the zero code".into()))
        })(),
    );
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    code: String,
    n: usize,
    k: usize,
    q: u64,
    passed: bool,
    values: &'a [ExpectationResult],
    checks: &'a [CheckOutcome],
}

pub fn verify(spec: &CodeSpec, sim: SimulationConfig, format: Format) -> Result<Outcome, String> {
    let code = spec.build()?;
    let closed = spec.closed_form();
    let mut report = verify_all_methods(&code, closed.clone().and_then(Result::ok), Some(sim));
    if let Some(Err(e)) = closed {
        check(&mut report, "closed-form runs", Err(e));
    }
    property_checks(&code, &mut report);
    let passed = report.passed();

    let output = match format {
        Format::Json => to_json(&VerifyOutput {
            code: spec.to_string(),
            n: code.n(),
            k: code.k(),
            q: code.q(),
            passed,
            values: &report.values,
            checks: &report.checks,
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.check.clone(), c.passed.to_string(), c.detail.clone()])
                .collect();
            to_csv(&["check", "passed", "detail"], &rows)?
        }
        Format::Human => {
            let mut s = format!("code    {}\n", describe(spec, &code));
            for v in &report.values {
                let shown = match (&v.exact, &v.mc) {
                    (Some(x), _) => format!("{x} ~ {}", decimal(x.to_f64())),
                    (None, Some(mc)) => {
                        format!("~ {} +/- {}", decimal(mc.mean), decimal(mc.stderr))
                    }
                    (None, None) => String::new(),
                };
                writeln!(s, "  {:<12} {shown}", v.method).expect("writing to a String");
            }
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{tag}  {}: {}", c.check, c.detail).expect("writing to a String");
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            writeln!(s, "{} checks, {failed} failed", report.checks.len())
                .expect("writing to a String");
            s
        }
    };
    Ok(Outcome {
        output,
        success: passed,
    })
}

const TABLE_HEADER: [&str; 15] = [
    "family",
    "q",
    "k",
    "r",
    "s",
    "n",
    "length",
    "dimension",
    "method",
    "exact",
    "decimal",
    "mds_bound",
    "mds_decimal",
    "closed_form_agrees",
    "error",
];

#[derive(Serialize, Default)]
struct TableRow {
    family: String,
    q: Option<u64>,
    k: Option<u64>,
    r: Option<u64>,
    s: Option<u64>,
    n: Option<u64>,
    length: Option<usize>,
    dimension: Option<usize>,
    method: String,
    exact: Option<String>,
    decimal: Option<String>,
    mds_bound: Option<String>,
    mds_decimal: Option<String>,
    closed_form_agrees: Option<bool>,
    error: Option<String>,
}

impl TableRow {
    fn cells(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        vec![
            self.family.clone(),
            opt(&self.q),
            opt(&self.k),
            opt(&self.r),
            opt(&self.s),
            opt(&self.n),
            opt(&self.length),
            opt(&self.dimension),
            self.method.clone(),
            opt(&self.exact),
            opt(&self.decimal),
            opt(&self.mds_bound),
            opt(&self.mds_decimal),
            opt(&self.closed_form_agrees),
            opt(&self.error),
        ]
    }
}

/// Closed form against an independent exact route: the census when it fits,
/// otherwise the chain oracle.
fn closed_form_agrees(spec: &CodeSpec, code: &LinearCode) -> Option<bool> {
    let closed: ExactRational = spec.closed_form()?.ok()?;
    let reference = if code.n() <= CENSUS_MAX_N {
        expectation_exact(code)
    } else {
        expectation_chain_oracle(code)
    };
    reference.ok().map(|v| v == closed)
}

fn table_row(spec: &CodeSpec, method: Method, sim: SimulationConfig) -> TableRow {
    let mut row = TableRow {
        family: spec.family.to_string(),
        q: spec.params.q,
        k: spec.params.k,
        r: spec.params.r,
        s: spec.params.s,
        n: spec.params.n,
        method: method.name().to_string(),
        ..TableRow::default()
    };
    let code = match spec.build() {
        Ok(c) => c,
        Err(e) => {
            row.error = Some(e);
            return row;
        }
    };
    row.length = Some(code.n());
    row.dimension = Some(code.k());
    if let Ok(bound) = mds_lower_bound(code.n(), code.k()) {
        row.mds_decimal = Some(decimal(bound.to_f64()));
        row.mds_bound = Some(bound.to_string());
    }
    row.closed_form_agrees = closed_form_agrees(spec, &code);
    match compute(spec, method, sim) {
        Ok(result) => {
            row.decimal = Some(decimal(result.approx()));
            row.exact = result.exact.map(|v| v.to_string());
        }
        Err(e) => row.error = Some(e),
    }
    row
}

pub fn table(
    specs: &[CodeSpec],
    method: &str,
    sim: SimulationConfig,
    format: Format,
) -> Result<Outcome, String> {
    let method: Method = method
        .parse()
        .map_err(|e: coverdepth::Error| e.to_string())?;
    let rows: Vec<TableRow> = specs.iter().map(|s| table_row(s, method, sim)).collect();
    let output = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => to_csv(
            &TABLE_HEADER,
            &rows.iter().map(TableRow::cells).collect::<Vec<_>>(),
        )?,
        Format::Human => {
            let mut grid: Vec<Vec<String>> =
                vec![TABLE_HEADER.iter().map(|h| h.to_string()).collect()];
            grid.extend(rows.iter().map(TableRow::cells));
            let widths: Vec<usize> = (0..TABLE_HEADER.len())
                .map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0))
                .collect();
            let mut s = String::new();
            for r in &grid {
                let line: Vec<String> = r
                    .iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:<w$}"))
                    .collect();
                writeln!(s, "{}", line.join("  ").trim_end()).expect("writing to a String");
            }
            s
        }
    };
    Ok(Outcome::ok(output))
}
