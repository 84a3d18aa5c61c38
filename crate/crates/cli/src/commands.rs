use std::fmt::Write as _;

use linalg_core::{hermitian_eigenvalues, validate_density, DensityMatrix, DEFAULT_TOLERANCE};
use metrics::{Metric, Metrics, MetricsReport, StateLabel};
use paper_formulas::{closed_forms_with, ClosedFormReport};
use serde::Serialize;
use states::{FamilySelector, StateFamily};
use sweep::{
    evaluate_figure_claim, figure_claims, figure_data, find_threshold, report_table, sweep, sweep_table, table1,
    ClaimStatus, Predicate, SweepConfig, Table,
};
use teleport_sim::{run, singlet_to_phi_plus, TeleportRun};

use crate::matrix_file::read_matrix;
use crate::{CliError, Command, Format, OutArgs, StateArgs};

struct ResolvedState {
    label: StateLabel,
    rho: DensityMatrix,
    family: Option<StateFamily>,
}

fn parse_selector(s: &str) -> Result<FamilySelector, CliError> {
    Ok(s.parse::<FamilySelector>()?)
}

fn resolve(args: &StateArgs) -> Result<ResolvedState, CliError> {
    if let Some(path) = &args.matrix {
        let m = read_matrix(path)?;
        let rho = validate_density(m, DEFAULT_TOLERANCE).map_err(|e| CliError::Validation(e.to_string()))?;
        return Ok(ResolvedState {
            label: StateLabel::custom(format!("matrix:{}", path.display())),
            rho,
            family: None,
        });
    }
    let Some(token) = &args.family else {
        return Err(CliError::Usage("a family selector or --matrix is required".into()));
    };
    let sel = parse_selector(token)?;
    let p = match (args.p, sel.family.is_fixed()) {
        (Some(p), _) => p,
        (None, true) => 0.0,
        (None, false) => return Err(CliError::Usage(format!("--p is required for family '{token}'"))),
    };
    let fam = sel.at(p)?;
    Ok(ResolvedState { label: StateLabel::from(&fam), rho: fam.materialize()?, family: Some(fam) })
}

fn describe(label: &StateLabel) -> String {
    let mut s = label.family.clone();
    if let Some(b) = label.bell {
        write!(s, ":{}", b.label()).unwrap();
    }
    if let Some(p) = label.param {
        write!(s, " @ p = {p}").unwrap();
    }
    s
}

fn write_outputs(table: &Table, out: &OutArgs, stem: &str) -> Result<(), CliError> {
    table.write(&out.out, stem)?;
    Ok(())
}

fn emit(table: &Table, format: Format, pretty: impl FnOnce() -> String) -> Result<(), CliError> {
    match format {
        Format::Pretty => print!("{}", pretty()),
        Format::Json => println!("{}", table.to_json_string()),
        Format::Csv => print!("{}", table.to_csv()?),
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output types serialise")
}

#[derive(Serialize)]
struct MetricsOutput<'a> {
    #[serde(flatten)]
    report: &'a MetricsReport,
    #[serde(rename = "closedForms")]
    closed_forms: &'a [ClosedFormReport],
}

fn metrics_cmd(state: &StateArgs, format: Format) -> Result<(), CliError> {
    let s = resolve(state)?;
    let m = Metrics::compute(&s.rho)?;
    let report = MetricsReport::new(&s.label, &m);
    let forms = s.family.map(|f| closed_forms_with(&f, &s.rho, &m)).unwrap_or_default();
    match format {
        Format::Json => println!("{}", json(&MetricsOutput { report: &report, closed_forms: &forms })),
        Format::Csv => print!("{}", report_table([(&report, forms.as_slice())], &Metric::ALL).to_csv()?),
        Format::Pretty => {
            let yes = |b| if b { "yes" } else { "no" };
            println!("{}", describe(&s.label));
            println!("  C  {:.4}", report.concurrence);
            println!("  f  {:.4}", report.fidelity);
            println!("  N  {:.4}", report.n_value);
            println!("  L  {:.4}", report.linear_entropy);
            println!("  M  {:.4}", report.m_value);
            println!(
                "  X-state {}; useful for teleportation {}; violates Bell-CHSH {}",
                yes(report.is_x),
                yes(report.useful),
                yes(report.violates)
            );
            if !forms.is_empty() {
                println!("closed forms:");
                for c in &forms {
                    println!(
                        "  {:<8} {:<3} {:>10.6} (generic {:.6}, delta {:.1e})  {}",
                        c.status.to_string(),
                        c.quantity.to_string(),
                        c.value,
                        c.generic_value,
                        c.abs_delta,
                        c.source
                    );
                }
            }
        }
    }
    Ok(())
}

fn sweep_cmd(
    families: &[String],
    start: f64,
    stop: f64,
    step: f64,
    metrics: &[String],
    out: &OutArgs,
) -> Result<(), CliError> {
    let families = if families.is_empty() {
        FamilySelector::all()
    } else {
        families.iter().map(|f| parse_selector(f)).collect::<Result<_, _>>()?
    };
    let metrics = if metrics.is_empty() {
        Metric::ALL.to_vec()
    } else {
        metrics
            .iter()
            .map(|m| m.parse::<Metric>().map_err(|e| CliError::Usage(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let cfg = SweepConfig { families, start, stop, step, metrics };
    let rows = sweep(&cfg)?;
    let table = sweep_table(&rows, &cfg.metrics);
    write_outputs(&table, out, "sweep")?;
    emit(&table, out.format, || {
        let mismatches = rows.iter().flat_map(|r| &r.closed_forms).filter(|c| !c.is_match()).count();
        let checks: usize = rows.iter().map(|r| r.closed_forms.len()).sum();
        format!(
            "{} rows over {} families; closed-form mismatches {mismatches}/{checks}; wrote {}\n",
            rows.len(),
            cfg.families.len(),
            out.out.join("sweep.csv").display()
        )
    })
}

fn thresholds_cmd(
    family: Option<&str>,
    metric: Option<&str>,
    above: Option<f64>,
    bracket: &[f64],
    tol: f64,
    out: &OutArgs,
) -> Result<(), CliError> {
    if let (Some(f), Some(m), Some(v)) = (family, metric, above) {
        let &[lo, hi] = bracket else {
            return Err(CliError::Usage(format!("--bracket takes two values lo,hi, got {}", bracket.len())));
        };
        let sel = parse_selector(f)?;
        let metric: Metric = m.parse().map_err(|e: metrics::UnknownMetric| CliError::Usage(e.to_string()))?;
        let pred = Predicate::greater(metric, v, v.to_string());
        let r = find_threshold(sel, &pred, (lo, hi), tol)?;
        match out.format {
            Format::Pretty => {
                println!("{} {}: root {:.7} in [{}, {}]", r.family, r.predicate, r.root, r.bracket[0], r.bracket[1])
            }
            _ => println!("{}", json(&r)),
        }
        return Ok(());
    }
    let outcomes = sweep::evaluate_threshold_claims()?;
    let mut t = Table::new([
        "id",
        "family",
        "predicate",
        "claimed",
        "generic_root",
        "generic_boundaries",
        "printed_root",
        "status",
    ]);
    for o in &outcomes {
        let bounds = o.generic_boundaries.iter().map(|b| format!("{b:.6}")).collect::<Vec<_>>().join(" ");
        t.push(vec![
            o.id.into(),
            o.family.into(),
            o.predicate.clone().into(),
            o.claimed.into(),
            o.generic_root.into(),
            bounds.into(),
            o.printed_root.into(),
            format!("{:?}", o.status).into(),
        ]);
    }
    write_outputs(&t, out, "thresholds")?;
    match out.format {
        Format::Json => println!("{}", json(&outcomes)),
        Format::Csv => print!("{}", t.to_csv()?),
        Format::Pretty => {
            for o in &outcomes {
                let root = o.generic_root.map_or("none".into(), |r| format!("{r:.4}"));
                let printed = o.printed_root.map_or("none".into(), |r| format!("{r:.4}"));
                let all = o.generic_boundaries.iter().map(|b| format!("{b:.4}")).collect::<Vec<_>>().join(", ");
                println!(
                    "{:<11} {:<38} claimed {:<6} generic {:<7} printed {:<7} all generic [{all}]",
                    format!("{:?}", o.status),
                    o.id,
                    o.claimed,
                    root,
                    printed
                );
            }
            let open = outcomes.iter().filter(|o| o.status == ClaimStatus::Unexplained).count();
            println!("{} claims, {open} unexplained", outcomes.len());
        }
    }
    Ok(())
}

fn table1_cmd(out: &OutArgs) -> Result<(), CliError> {
    let t = table1()?;
    let table = t.to_table();
    write_outputs(&table, out, "table1")?;
    emit(&table, out.format, || {
        let dev = t.deviations();
        let mut s = t.render();
        writeln!(s, "{} of 44 cells differ from the printed table", dev.len()).unwrap();
        for d in dev {
            writeln!(
                s,
                "  p = {} {}: computed {:.2} (raw {:.6}), printed {:.2}",
                d.param, d.column, d.rounded, d.raw, d.printed
            )
            .unwrap();
        }
        s
    })
}

fn figures_cmd(id: Option<u8>, out: &OutArgs) -> Result<(), CliError> {
    let ids: Vec<u8> = id.map_or((1..=4).collect(), |i| vec![i]);
    let claims = figure_claims();
    let mut all = Vec::new();
    let mut summary = String::new();
    for i in ids {
        let data = figure_data(i)?;
        let table = data.to_table();
        write_outputs(&table, out, &format!("figure{i}"))?;
        let names: Vec<&str> = data.curves.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(summary, "figure {i}: {} points, curves {}", data.params.len(), names.join(", ")).unwrap();
        for c in claims.iter().filter(|c| c.figure == i) {
            let o = evaluate_figure_claim(c, &data);
            let verdict = if o.holds() { "holds" } else { "fails" };
            let first = o.first_failure.map_or(String::new(), |p| format!(", first failure at p = {p}"));
            writeln!(summary, "  {verdict}: {} ({} of {} points fail{first})", o.id, o.failures, o.checked).unwrap();
            all.push(o);
        }
    }
    match out.format {
        Format::Pretty => print!("{summary}"),
        _ => println!("{}", json(&all)),
    }
    Ok(())
}

fn simulate_cmd(state: &StateArgs, samples: u64, seed: u64, align: bool) -> Result<(), CliError> {
    let s = resolve(state)?;
    let optimum = metrics::teleport_fidelity(&s.rho)?;
    let mut tr = TeleportRun::new(s.rho, samples, seed);
    if align {
        let (a, b) = singlet_to_phi_plus();
        tr = tr.with_pre_rotation(a, b);
    }
    let r = run(&tr).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{}", json(&r));
    eprintln!(
        "{}: mean fidelity {:.5} +- {:.5} over {} samples (seed {}); optimal fidelity {:.5}",
        describe(&s.label),
        r.mean_fidelity,
        r.std_error,
        r.samples,
        r.seed,
        optimum
    );
    Ok(())
}

fn validate_cmd(state: &StateArgs, all: Option<usize>) -> Result<(), CliError> {
    if let Some(points) = all {
        if points < 2 {
            return Err(CliError::Usage("--all needs at least 2 grid points".into()));
        }
        let mut failures = Vec::new();
        let selectors = FamilySelector::all();
        for sel in &selectors {
            for x in paper_formulas::unit_grid(points) {
                if let Err(e) = sel.at(x).and_then(|f| f.materialize()) {
                    failures.push(format!("{sel}@{x}: {e}"));
                }
            }
        }
        if !failures.is_empty() {
            return Err(CliError::Validation(failures.join("\n")));
        }
        println!("{} selectors x {points} points: all valid", selectors.len());
        return Ok(());
    }
    let s = resolve(state)?;
    let eig = hermitian_eigenvalues(s.rho.matrix()).map_err(|e| CliError::Runtime(e.to_string()))?;
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    println!(
        "{}: valid density matrix (trace {:.12}, min eigenvalue {:.3e}, purity {:.6})",
        describe(&s.label),
        s.rho.matrix().trace().re,
        min,
        s.rho.purity()
    );
    Ok(())
}

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Metrics { state, format } => metrics_cmd(&state, format),
        Command::Sweep { families, start, stop, step, metrics, out } => {
            sweep_cmd(&families, start, stop, step, &metrics, &out)
        }
        Command::Thresholds { family, metric, above, bracket, tol, out } => {
            thresholds_cmd(family.as_deref(), metric.as_deref(), above, &bracket, tol, &out)
        }
        Command::Table1 { out } => table1_cmd(&out),
        Command::Figures { id, out } => figures_cmd(id, &out),
        Command::Simulate { state, samples, seed, align_singlet } => simulate_cmd(&state, samples, seed, align_singlet),
        Command::Validate { state, all } => validate_cmd(&state, all),
    }
}
