use std::fmt::Write as _;
use std::time::Instant;

use quotdeg_core::chain::{enumerate_chains, ChainCounter};
use quotdeg_core::indices::parse_entries;
use quotdeg_core::vafa::{vi_correlator, vi_degree, CorrelatorSpec, NumericError, NumericResult};
use quotdeg_core::{degree_recurrence, quot_degree, CompositeIndex, NumericConfig, SchubertSymbol};

use crate::report::{
    to_json, ChainReport, CorrelatorReport, MethodResult, Request, RunReport, TableReport,
    TableRow, VerifyReport,
};
use crate::verify::{run_sweep, SweepConfig};
use crate::{
    ChainsArgs, CorrelatorArgs, DegreeArgs, Format, Method, Outcome, TableArgs, VerifyArgs,
    EXIT_DIMENSION, EXIT_DISAGREEMENT, EXIT_OK, EXIT_TOLERANCE,
};

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn format_raw(result: &NumericResult) -> String {
    format!("{:e}{:+e}i", result.raw.re, result.raw.im)
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("writing to memory");
    for row in rows {
        writer.write_record(row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// The Schubert symbol a `degree` invocation refers to, with the optional q.
fn resolve_degree_target(args: &DegreeArgs) -> Result<(SchubertSymbol, Option<u32>), String> {
    let symbol = if let (Some(alpha), Some(n)) = (&args.alpha, args.n) {
        let entries = parse_entries(alpha).map_err(|e| e.to_string())?;
        let alpha = CompositeIndex::new(entries, n).map_err(|e| e.to_string())?;
        alpha.to_schubert().map_err(|e| e.to_string())?
    } else {
        let (Some(m), Some(p)) = (args.m, args.p) else {
            return Err("give either --m and --p, or --n and --alpha".into());
        };
        if m == 0 || p == 0 {
            return Err(format!(
                "m and p must both be positive (got m = {m}, p = {p})"
            ));
        }
        match &args.i {
            Some(i) => {
                let columns = parse_entries(i).map_err(|e| e.to_string())?;
                if columns.len() != m {
                    return Err(format!("--i has {} entries but m = {m}", columns.len()));
                }
                SchubertSymbol::new(columns, args.d.unwrap_or(0), m as u32 + p)
                    .map_err(|e| e.to_string())?
            }
            None => {
                let Some(q) = args.q else {
                    return Err("--m and --p need either --q or --i".into());
                };
                SchubertSymbol::top(m, p, q).map_err(|e| e.to_string())?
            }
        }
    };
    if let Some(q) = args.q {
        if symbol.offset() > q {
            return Err(format!("offset d = {} exceeds q = {q}", symbol.offset()));
        }
    }
    Ok((symbol, args.q))
}

fn numeric_failure(method: &str, err: &NumericError, verbose: bool) -> MethodResult {
    let result = err.result();
    MethodResult {
        method: method.into(),
        status: "error".into(),
        value: None,
        error: Some(err.to_string()),
        raw: result.filter(|_| verbose).map(format_raw),
        residual: result
            .filter(|_| verbose)
            .map(|r| format!("{:e}", r.residual)),
        elapsed_ms: None,
    }
}

fn run_method(
    method: Method,
    symbol: &SchubertSymbol,
    config: &NumericConfig,
    verbose: bool,
) -> (MethodResult, bool) {
    let alpha = symbol.to_composite();
    let ok = |value: String| MethodResult {
        method: method.name().into(),
        status: "ok".into(),
        value: Some(value),
        error: None,
        raw: None,
        residual: None,
        elapsed_ms: None,
    };
    let failed = |error: String| MethodResult {
        method: method.name().into(),
        status: "error".into(),
        value: None,
        error: Some(error),
        raw: None,
        residual: None,
        elapsed_ms: None,
    };
    match method {
        Method::Chain => {
            match ChainCounter::with_execution(alpha.n(), config.execution).degree(&alpha) {
                Ok(value) => (ok(value.to_string()), false),
                Err(e) => (failed(e.to_string()), false),
            }
        }
        Method::Recurrence => {
            let tuple: Vec<i64> = alpha.entries().iter().map(|&a| i64::from(a)).collect();
            match degree_recurrence(&tuple, alpha.n()) {
                Ok(value) => (ok(value.to_string()), false),
                Err(e) => (failed(e.to_string()), false),
            }
        }
        Method::Vi => match vi_degree(symbol, config) {
            Ok(result) => {
                let mut entry = ok(result.rounded.to_string());
                if verbose {
                    entry.raw = Some(format_raw(&result));
                    entry.residual = Some(format!("{:e}", result.residual));
                }
                (entry, false)
            }
            Err(e) => (numeric_failure(method.name(), &e, verbose), true),
        },
        Method::All => unreachable!("expanded before dispatch"),
    }
}

pub fn degree(args: &DegreeArgs) -> Outcome {
    let (symbol, q) = match resolve_degree_target(args) {
        Ok(target) => target,
        Err(message) => return Outcome::usage(message),
    };
    let config = args.common.numeric();
    let alpha = symbol.to_composite();
    let mut results = Vec::new();
    let mut numeric_failed = false;
    for &method in args.method.expand() {
        let start = Instant::now();
        let (mut result, failed) = run_method(method, &symbol, &config, args.verbose);
        if args.timings {
            result.elapsed_ms = Some(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
        }
        numeric_failed |= failed;
        results.push(result);
    }
    let values: Vec<&String> = results.iter().filter_map(|r| r.value.as_ref()).collect();
    let consistent = values.windows(2).all(|w| w[0] == w[1]);
    let agreement = consistent && values.len() == results.len();
    let report = RunReport {
        command: "degree".into(),
        request: Request {
            m: symbol.m().to_string(),
            p: symbol.p().to_string(),
            n: symbol.n().to_string(),
            q: q.map(|q| q.to_string()),
            i: join(symbol.columns()),
            d: symbol.offset().to_string(),
            alpha: alpha.to_string(),
            dim: symbol.dimension().to_string(),
        },
        precision: config.precision.to_string(),
        tolerance: format!("{:e}", config.tolerance),
        results,
        agreement,
    };
    let stdout = match args.common.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .results
                .iter()
                .map(|r| {
                    vec![
                        report.request.m.clone(),
                        report.request.p.clone(),
                        report.request.n.clone(),
                        report.request.i.clone(),
                        report.request.d.clone(),
                        report.request.alpha.clone(),
                        report.request.dim.clone(),
                        r.method.clone(),
                        r.status.clone(),
                        r.value.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(
                &[
                    "m", "p", "n", "i", "d", "alpha", "dim", "method", "status", "value",
                ],
                &rows,
            )
        }
        Format::Text => {
            let mut out = format!(
                "symbol ({};{}) alpha=({}) n={} dim={}\n",
                report.request.i,
                report.request.d,
                report.request.alpha,
                report.request.n,
                report.request.dim
            );
            for r in &report.results {
                match (&r.value, &r.error) {
                    (Some(value), _) => writeln!(out, "{}: {value}", r.method),
                    (None, error) => writeln!(
                        out,
                        "{}: error: {}",
                        r.method,
                        error.as_deref().unwrap_or("")
                    ),
                }
                .expect("writing to a string");
                if let (Some(raw), Some(residual)) = (&r.raw, &r.residual) {
                    writeln!(out, "  raw={raw} residual={residual}").expect("writing to a string");
                }
                if let Some(ms) = &r.elapsed_ms {
                    writeln!(out, "  elapsed_ms={ms}").expect("writing to a string");
                }
            }
            writeln!(out, "agreement: {}", report.agreement).expect("writing to a string");
            out
        }
    };
    let code = if !consistent {
        EXIT_DISAGREEMENT
    } else if numeric_failed {
        EXIT_TOLERANCE
    } else if !agreement {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    };
    let mut stderr = String::new();
    for r in report.results.iter().filter(|r| r.status != "ok") {
        writeln!(
            stderr,
            "{}: {}",
            r.method,
            r.error.as_deref().unwrap_or("failed")
        )
        .expect("writing to a string");
    }
    if !consistent {
        stderr.push_str("methods disagree\n");
    }
    Outcome {
        stdout,
        stderr,
        code,
    }
}

pub fn correlator(args: &CorrelatorArgs) -> Outcome {
    let powers = match parse_powers(&args.powers) {
        Ok(powers) => powers,
        Err(message) => return Outcome::usage(message),
    };
    if powers.len() != args.m {
        return Outcome::usage(format!(
            "--powers has {} entries but m = {}",
            powers.len(),
            args.m
        ));
    }
    let spec = match CorrelatorSpec::new(powers, args.p) {
        Ok(spec) => spec,
        Err(err @ NumericError::DimensionMismatch { .. }) => {
            return Outcome::failure(EXIT_DIMENSION, format!("error: {err}"))
        }
        Err(err) => return Outcome::usage(err),
    };
    let config = args.common.numeric();
    let (result, code) = match vi_correlator(&spec, &config) {
        Ok(value) => {
            let mut entry = MethodResult {
                method: "vi".into(),
                status: "ok".into(),
                value: Some(value.rounded.to_string()),
                error: None,
                raw: None,
                residual: None,
                elapsed_ms: None,
            };
            if args.verbose {
                entry.raw = Some(format_raw(&value));
                entry.residual = Some(format!("{:e}", value.residual));
            }
            (entry, EXIT_OK)
        }
        Err(err) => (numeric_failure("vi", &err, args.verbose), EXIT_TOLERANCE),
    };
    let report = CorrelatorReport {
        command: "correlator".into(),
        m: spec.m().to_string(),
        p: spec.p().to_string(),
        n: spec.n().to_string(),
        powers: join(spec.powers()),
        q: spec.q().to_string(),
        precision: config.precision.to_string(),
        tolerance: format!("{:e}", config.tolerance),
        result,
    };
    let value = report.result.value.clone().unwrap_or_default();
    let stdout = match args.common.format {
        Format::Json => to_json(&report),
        Format::Csv => csv_text(
            &["m", "p", "n", "powers", "q", "value"],
            &[vec![
                report.m.clone(),
                report.p.clone(),
                report.n.clone(),
                report.powers.clone(),
                report.q.clone(),
                value,
            ]],
        ),
        Format::Text => match &report.result.value {
            Some(value) => format!("{value} (q={})\n", report.q),
            None => format!("error (q={})\n", report.q),
        },
    };
    let stderr = report
        .result
        .error
        .as_ref()
        .map(|e| format!("error: {e}\n"))
        .unwrap_or_default();
    Outcome {
        stdout,
        stderr,
        code,
    }
}

fn parse_powers(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| format!("cannot parse exponent {part:?}"))
        })
        .collect()
}

pub fn table(args: &TableArgs) -> Outcome {
    if args.m == 0 || args.p == 0 {
        return Outcome::usage(format!(
            "m and p must both be positive (got m = {}, p = {})",
            args.m, args.p
        ));
    }
    let (m, p) = (args.m, args.p);
    let n = m as u32 + p;
    let config = args.common.numeric();
    let methods = args.method.expand();
    let mut counter = ChainCounter::with_execution(n, config.execution);
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    let mut stderr = String::new();
    for q in 0..=args.max_q {
        let symbol = SchubertSymbol::top(m, p, q).expect("positive m and p");
        let mut values: Vec<String> = Vec::new();
        for &method in methods {
            let value = match method {
                Method::Chain => counter
                    .degree(&symbol.to_composite())
                    .map(|v| v.to_string())
                    .map_err(|e| (EXIT_DISAGREEMENT, e.to_string())),
                Method::Recurrence => quot_degree(m, p, q)
                    .map(|v| v.to_string())
                    .map_err(|e| (EXIT_DISAGREEMENT, e.to_string())),
                Method::Vi => vi_degree(&symbol, &config)
                    .map(|r| r.rounded.to_string())
                    .map_err(|e| (EXIT_TOLERANCE, e.to_string())),
                Method::All => unreachable!("expanded before dispatch"),
            };
            match value {
                Ok(value) => values.push(value),
                Err((failure, message)) => {
                    writeln!(stderr, "q={q} {}: {message}", method.name())
                        .expect("writing to a string");
                    code = code.max(failure);
                }
            }
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            writeln!(stderr, "q={q}: methods disagree ({})", values.join(" vs "))
                .expect("writing to a string");
            code = EXIT_DISAGREEMENT;
        }
        let degree = values.first().cloned().unwrap_or_default();
        let dual_degree = if args.dual {
            let dual = quot_degree(p as usize, m as u32, q)
                .map(|v| v.to_string())
                .unwrap_or_default();
            if dual != degree {
                writeln!(stderr, "q={q}: dual degree {dual} differs from {degree}")
                    .expect("writing to a string");
                code = EXIT_DISAGREEMENT;
            }
            Some(dual)
        } else {
            None
        };
        rows.push(TableRow {
            m: m.to_string(),
            p: p.to_string(),
            q: q.to_string(),
            n: n.to_string(),
            dim: symbol.dimension().to_string(),
            degree,
            methods: methods
                .iter()
                .map(|m| m.name())
                .collect::<Vec<_>>()
                .join(","),
            dual_degree,
        });
    }
    let report = TableReport {
        command: "table".into(),
        rows,
    };
    let stdout = match args.common.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut header = vec!["m", "p", "q", "n", "dim", "degree"];
            if args.dual {
                header.push("dual_degree");
            }
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.m.clone(),
                        r.p.clone(),
                        r.q.clone(),
                        r.n.clone(),
                        r.dim.clone(),
                        r.degree.clone(),
                    ];
                    row.extend(r.dual_degree.clone());
                    row
                })
                .collect();
            csv_text(&header, &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for r in &report.rows {
                write!(out, "q={:<3} dim={:<5} degree={}", r.q, r.dim, r.degree)
                    .expect("writing to a string");
                if let Some(dual) = &r.dual_degree {
                    write!(out, " dual={dual}").expect("writing to a string");
                }
                out.push('\n');
            }
            out
        }
    };
    Outcome {
        stdout,
        stderr,
        code,
    }
}

pub fn chains(args: &ChainsArgs) -> Outcome {
    let alpha = match parse_entries(&args.alpha).and_then(|e| CompositeIndex::new(e, args.n)) {
        Ok(alpha) => alpha,
        Err(err) => return Outcome::usage(err),
    };
    let listing = match enumerate_chains(&alpha, args.cap) {
        Ok(listing) => listing,
        Err(err) => return Outcome::usage(err),
    };
    let report = ChainReport {
        command: "chains".into(),
        n: alpha.n().to_string(),
        alpha: alpha.to_string(),
        count: listing.total.to_string(),
        truncated: listing.truncated,
        chains: listing.chains.iter().map(ToString::to_string).collect(),
    };
    let stdout = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .chains
                .iter()
                .enumerate()
                .map(|(k, chain)| vec![(k + 1).to_string(), chain.clone()])
                .collect();
            csv_text(&["index", "chain"], &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for chain in &report.chains {
                writeln!(out, "{chain}").expect("writing to a string");
            }
            writeln!(out, "count={}", report.count).expect("writing to a string");
            out
        }
    };
    let stderr = if report.truncated {
        format!(
            "listing stopped at {} of {} chains\n",
            report.chains.len(),
            report.count
        )
    } else {
        String::new()
    };
    Outcome {
        stdout,
        stderr,
        code: EXIT_OK,
    }
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let config = SweepConfig {
        max_n: args.max_n,
        max_dimension: args.max_dim,
        numeric: args.common.numeric(),
        inject_fault: args.inject_fault,
    };
    let suites = run_sweep(&config);
    let passed = suites.iter().all(|s| s.failures == "0");
    let report = VerifyReport {
        command: "verify".into(),
        max_n: args.max_n.to_string(),
        max_dim: args.max_dim.to_string(),
        precision: config.numeric.precision.to_string(),
        tolerance: format!("{:e}", config.numeric.tolerance),
        suites,
        passed,
    };
    let stdout = match args.common.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .suites
                .iter()
                .map(|s| {
                    vec![
                        s.name.clone(),
                        s.checked.clone(),
                        s.failures.clone(),
                        s.first_failure.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&["suite", "checked", "failures", "first_failure"], &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for s in &report.suites {
                writeln!(
                    out,
                    "{:<14} checked={:<8} failures={}",
                    s.name, s.checked, s.failures
                )
                .expect("writing to a string");
            }
            writeln!(out, "passed={}", report.passed).expect("writing to a string");
            out
        }
    };
    let mut stderr = String::new();
    for s in &report.suites {
        if let Some(failure) = &s.first_failure {
            writeln!(stderr, "{}: {failure}", s.name).expect("writing to a string");
        }
    }
    Outcome {
        stdout,
        stderr,
        code: if passed { EXIT_OK } else { EXIT_DISAGREEMENT },
    }
}
