use std::fs;
use std::path::Path;
use std::time::Instant;

use thiserror::Error;

use qcpart::circuit::{import_real, parse_circuit, render_circuit, Circuit, CircuitError};
use qcpart::exec::render_trace_table;
use qcpart::generators::{generate, random_circuit};
use qcpart::oracle::{oracle_partition_with_cap, DEFAULT_ORACLE_CAP};
use qcpart::partition::{
    dp_partition_with, DpOptions, PartitionError, PartitionResult, DEFAULT_QUBIT_CAP, MAX_QUBITS,
};
use qcpart::pipeline::weights_of;
use qcpart::report::{Method, ReportFlags, RunReport};
use qcpart::{compute_metrics, qc_to_bigraph};

use crate::ranges::{parse_gen, parse_list};
use crate::{BenchArgs, Format, GenArgs, Input, OracleArgs, PartitionArgs};

pub const ORACLE_CAP_ENV: &str = "QCPART_ORACLE_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    TooLarge(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::TooLarge(_) => 3,
        }
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        match e {
            CircuitError::UnknownGenerator(_) | CircuitError::GeneratorSize(_) => {
                CliError::Infeasible(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn partition_error(e: PartitionError, oracle: bool) -> CliError {
    match e {
        PartitionError::TooManyQubits { .. } if oracle => CliError::TooLarge(format!(
            "{e}; use `partition` instead, or raise the cap with {ORACLE_CAP_ENV}"
        )),
        PartitionError::TooManyQubits { .. } => CliError::TooLarge(format!(
            "{e}; pass --force to lift the cap (the search grows as 3^n)"
        )),
        _ => CliError::Infeasible(e.to_string()),
    }
}

fn load_file(path: &Path, decompose_mct: bool) -> Result<Circuit, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let is_real = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("real"));
    let mut circuit = if is_real {
        import_real(&text, decompose_mct)
    } else {
        parse_circuit(&text)
    }
    .map_err(|e| CliError::from(e).with_context(&path.display().to_string()))?;
    if let Some(stem) = path.file_stem() {
        circuit.set_name(stem.to_string_lossy());
    }
    Ok(circuit)
}

impl CliError {
    fn with_context(self, what: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{what}: {m}")),
            CliError::Infeasible(m) => CliError::Infeasible(format!("{what}: {m}")),
            CliError::TooLarge(m) => CliError::TooLarge(format!("{what}: {m}")),
        }
    }
}

fn load(input: &Input, decompose_mct: bool) -> Result<Circuit, CliError> {
    match (&input.circuit, &input.gen) {
        (Some(path), _) => load_file(path, decompose_mct),
        (None, Some(spec)) => {
            let (name, sizes) = parse_gen(spec).map_err(CliError::Infeasible)?;
            match sizes.as_slice() {
                [size] => Ok(generate(&name, *size)?),
                _ => Err(CliError::Infeasible(format!(
                    "`--gen {spec}` must name a single size"
                ))),
            }
        }
        (None, None) => Err(CliError::Input("no circuit given".into())),
    }
}

fn parts_list(spec: &str) -> Result<Vec<usize>, CliError> {
    parse_list(spec).map_err(|e| CliError::Infeasible(format!("--parts: {e}")))
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

const CSV_HEADER: &str = "name,n,gates,k,cost,r,time_ms";

fn csv_row(report: &RunReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        report.circuit_name,
        report.width,
        report.gate_count,
        report.k,
        report.cost,
        report.ratio_r,
        report.wall_time_ms.map_or(String::new(), |t| t.to_string())
    )
}

fn emit(
    reports: &[RunReport],
    tables: &[Option<String>],
    format: Format,
) -> Result<String, CliError> {
    let mut out = String::new();
    match format {
        Format::Json => {
            let json = match reports {
                [single] => serde_json::to_string_pretty(single),
                many => serde_json::to_string_pretty(many),
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            out.push_str(&json);
            out.push('\n');
        }
        Format::Text => {
            for (i, report) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&report.to_text());
                if let Some(trace) = &report.trace {
                    out.push('\n');
                    out.push_str(&render_trace_table(trace));
                }
                if let Some(Some(table)) = tables.get(i) {
                    out.push('\n');
                    out.push_str(table);
                }
            }
        }
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for report in reports {
                out.push_str(&csv_row(report));
                out.push('\n');
            }
            for table in tables.iter().flatten() {
                out.push('\n');
                out.push_str(table);
            }
        }
    }
    Ok(out)
}

pub fn partition(args: &PartitionArgs) -> Result<String, CliError> {
    let circuit = load(&args.input, args.decompose_mct)?;
    if let Some(path) = &args.dot {
        fs::write(path, qc_to_bigraph(&circuit).to_dot())
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let w = weights_of(&circuit);
    let opts = DpOptions {
        qubit_cap: if args.force {
            MAX_QUBITS
        } else {
            DEFAULT_QUBIT_CAP
        },
        max_part_size: args.max_part_size,
        threads: args.threads,
        retain_table: args.table,
    };
    let mut reports = Vec::new();
    let mut tables = Vec::new();
    for k in parts_list(&args.parts)? {
        let start = Instant::now();
        let result = dp_partition_with(&w, k, &opts).map_err(|e| partition_error(e, false))?;
        let mut report = RunReport::new(
            &circuit,
            &result,
            flags(&circuit, &result, args),
            args.trace,
        );
        if !args.no_timing {
            report.wall_time_ms = Some(elapsed_ms(start));
        }
        // Text and CSV carry the table as its own CSV block; JSON embeds it.
        tables.push(match args.format {
            Format::Json => None,
            _ => result.table.as_ref().map(|t| t.to_csv()),
        });
        if args.format != Format::Json {
            report.dp_table = None;
        }
        reports.push(report);
    }
    emit(&reports, &tables, args.format)
}

fn flags(circuit: &Circuit, result: &PartitionResult, args: &PartitionArgs) -> ReportFlags {
    ReportFlags {
        method: Method::Dp,
        max_part_size: args.max_part_size,
        constrained: result.constrained,
        threads: args.threads,
        decompose_mct: args.decompose_mct,
        approximate: circuit.is_approximate(),
        force: args.force,
    }
}

fn oracle_cap() -> Result<usize, CliError> {
    match std::env::var(ORACLE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Infeasible(format!("{ORACLE_CAP_ENV}=`{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

pub fn oracle(args: &OracleArgs) -> Result<String, CliError> {
    let circuit = load(&args.input, args.decompose_mct)?;
    let w = weights_of(&circuit);
    let cap = oracle_cap()?;
    let mut reports = Vec::new();
    for k in parts_list(&args.parts)? {
        let start = Instant::now();
        let result = oracle_partition_with_cap(&w, k, cap).map_err(|e| partition_error(e, true))?;
        let elapsed = elapsed_ms(start);
        let flags = ReportFlags {
            method: Method::Oracle,
            max_part_size: None,
            constrained: false,
            threads: 1,
            decompose_mct: args.decompose_mct,
            approximate: circuit.is_approximate(),
            force: false,
        };
        let mut report = RunReport::new(&circuit, &result, flags, args.trace);
        if args.compare_dp {
            let opts = DpOptions {
                qubit_cap: MAX_QUBITS,
                ..DpOptions::default()
            };
            let dp = dp_partition_with(&w, k, &opts).map_err(|e| partition_error(e, false))?;
            report.matches_dp = Some(dp.cost == result.cost);
        }
        if !args.no_timing {
            report.wall_time_ms = Some(elapsed);
        }
        reports.push(report);
    }
    emit(&reports, &[], args.format)
}

pub fn bench(args: &BenchArgs) -> Result<String, CliError> {
    let ks = parts_list(&args.parts)?;
    let mut circuits: Vec<(String, Result<Circuit, CliError>)> = Vec::new();
    for path in &args.circuit {
        let name = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        circuits.push((name, load_file(path, args.decompose_mct)));
    }
    for spec in &args.gen {
        let (name, sizes) = parse_gen(spec).map_err(CliError::Infeasible)?;
        for size in sizes {
            circuits.push((
                format!("{name}{size}"),
                generate(&name, size).map_err(CliError::from),
            ));
        }
    }

    let opts = DpOptions {
        qubit_cap: if args.force {
            MAX_QUBITS
        } else {
            DEFAULT_QUBIT_CAP
        },
        max_part_size: args.max_part_size,
        threads: args.threads,
        retain_table: false,
    };
    let mut out = format!("{CSV_HEADER},error\n");
    for (name, loaded) in &circuits {
        let circuit = match loaded {
            Ok(c) => c,
            Err(e) => {
                out.push_str(&format!("{name},,,,,,,{}\n", csv_field(&e.to_string())));
                continue;
            }
        };
        let w = weights_of(circuit);
        for &k in &ks {
            let start = Instant::now();
            match dp_partition_with(&w, k, &opts) {
                Ok(result) => {
                    let time = if args.no_timing {
                        String::new()
                    } else {
                        elapsed_ms(start).to_string()
                    };
                    let metrics = compute_metrics(circuit, &result);
                    out.push_str(&format!(
                        "{},{},{},{k},{},{},{time},\n",
                        circuit.name(),
                        circuit.width(),
                        circuit.len(),
                        result.cost,
                        metrics.ratio_display()
                    ));
                }
                Err(e) => out.push_str(&format!(
                    "{},{},{},{k},,,,{}\n",
                    circuit.name(),
                    circuit.width(),
                    circuit.len(),
                    csv_field(&e.to_string())
                )),
            }
        }
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn gen(args: &GenArgs) -> Result<String, CliError> {
    let circuit = match args.name.as_str() {
        "random" => random_circuit(
            args.qubits,
            args.gates.unwrap_or(4 * args.qubits),
            args.seed,
        )?,
        name => generate(name, args.qubits)?,
    };
    let text = render_circuit(&circuit);
    match &args.output {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
