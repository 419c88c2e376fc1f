//! Command implementations. Each returns the process exit code:
//! 0 on success, 1 when an invariant violation was detected in the computed
//! data; usage and i/o problems surface as [`CliError`] and exit with 2.

use jc_gqd::discord::{
    gqd_ab_closed, gqd_abc_closed, gqd_ac_closed, gqd_b_ac_closed, gqd_ba_closed, gqd_bc_closed,
    gqd_measurement_min, gqd_qubit_qudit,
};
use jc_gqd::model::{
    amplitudes, rho_ab, rho_abc, rho_ac, rho_ba, rho_bac, rho_bc, SystemParams,
};
use jc_gqd::monogamy::{self, MonogamyReport, Side, SweepSummary};
use jc_gqd::spectrum::{analyze, sample_series, Peak, DEFAULT_MIN_SEPARATION_BINS};
use jc_gqd::DensityMatrix;
use serde::Serialize;

use crate::config::{self, resolve_enum, resolve_f64, Defaults, EVOLVE_DEFAULTS, SPECTRUM_DEFAULTS};
use crate::figures::{self, FigureId};
use crate::output::{write_file, Cell, Table};
use crate::{
    Cli, CliError, Command, DiscordArgs, EvolveArgs, FigureArgs, MonogamyArgs, PathArg,
    SpectrumArgs, SideArg, WhichArg,
};

/// Cross-route disagreement beyond this is reported as an invariant
/// violation (exit code 1); it is the measurement-minimization tolerance,
/// the loosest of the three routes.
pub const DISCREPANCY_LIMIT: f64 = 1e-6;

pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Evolve(args) => evolve(args),
        Command::Discord(args) => discord(args),
        Command::Monogamy(args) => monogamy_sweep(args),
        Command::Spectrum(args) => spectrum(args),
        Command::Figure(args) => figure(args),
    }
}

fn evolve(args: EvolveArgs) -> Result<i32, CliError> {
    let (settings, _) = config::resolve(&args.common, &EVOLVE_DEFAULTS)?;
    let ts = config::time_grid(settings.t_max, settings.samples)?;
    let mut table = Table::new(
        ["t", "p1", "p2", "p3", "p4"]
            .map(String::from)
            .to_vec(),
    );
    for &t in &ts {
        let pr = amplitudes(&settings.params, t).probabilities();
        table.push_row(vec![
            Cell::Float(t),
            Cell::Float(pr[0]),
            Cell::Float(pr[1]),
            Cell::Float(pr[2]),
            Cell::Float(pr[3]),
        ]);
    }
    write_file(&settings.output, &table.render(settings.format))?;
    Ok(0)
}

#[derive(Debug, Clone, Copy)]
enum Quantity {
    Ab,
    Ac,
    Bc,
    Abc,
    BAc,
    Ba,
}

impl Quantity {
    fn label(self) -> &'static str {
        match self {
            Quantity::Ab => "ab",
            Quantity::Ac => "ac",
            Quantity::Bc => "bc",
            Quantity::Abc => "abc",
            Quantity::BAc => "b_ac",
            Quantity::Ba => "ba",
        }
    }

    fn closed(self, p: &SystemParams, t: f64) -> f64 {
        match self {
            Quantity::Ab => gqd_ab_closed(p, t).value,
            Quantity::Ac => gqd_ac_closed(p, t).value,
            Quantity::Bc => gqd_bc_closed(p, t).value,
            Quantity::Abc => gqd_abc_closed(p, t).value,
            Quantity::BAc => gqd_b_ac_closed(p, t).value,
            Quantity::Ba => gqd_ba_closed(p, t).value,
        }
    }

    /// State with the measured qubit first, shared by the pipeline and
    /// minimization routes.
    fn state(self, p: &SystemParams, t: f64) -> DensityMatrix {
        match self {
            Quantity::Ab => rho_ab(p, t),
            Quantity::Ac => rho_ac(p, t),
            Quantity::Bc => rho_bc(p, t),
            Quantity::Abc => rho_abc(p, t),
            Quantity::BAc => rho_bac(p, t),
            Quantity::Ba => rho_ba(p, t),
        }
    }
}

fn discord(args: DiscordArgs) -> Result<i32, CliError> {
    let (settings, file) = config::resolve(&args.common, &EVOLVE_DEFAULTS)?;
    let which = resolve_enum(args.which, &file, "which")?.unwrap_or(WhichArg::All);
    let path = resolve_enum(args.path, &file, "path")?.unwrap_or(PathArg::Closed);

    let quantities: Vec<Quantity> = match which {
        WhichArg::Ab => vec![Quantity::Ab],
        WhichArg::Ac => vec![Quantity::Ac],
        WhichArg::Bc => vec![Quantity::Bc],
        WhichArg::Abc => vec![Quantity::Abc],
        WhichArg::BAc => vec![Quantity::BAc],
        WhichArg::Ba => vec![Quantity::Ba],
        WhichArg::All => vec![
            Quantity::Ab,
            Quantity::Ac,
            Quantity::Bc,
            Quantity::Abc,
            Quantity::BAc,
            Quantity::Ba,
        ],
    };
    let run_closed = matches!(path, PathArg::Closed | PathArg::All);
    let run_pipeline = matches!(path, PathArg::Pipeline | PathArg::All);
    let run_minimize = matches!(path, PathArg::Minimize | PathArg::All);
    let with_discrepancy = matches!(path, PathArg::All);

    let mut columns = vec!["t".to_string()];
    for q in &quantities {
        if run_closed {
            columns.push(format!("{}_closed", q.label()));
        }
        if run_pipeline {
            columns.push(format!("{}_pipeline", q.label()));
        }
        if run_minimize {
            columns.push(format!("{}_minimize", q.label()));
        }
    }
    if with_discrepancy {
        columns.push("discrepancy".to_string());
    }

    let ts = config::time_grid(settings.t_max, settings.samples)?;
    let mut table = Table::new(columns);
    let mut worst_discrepancy: f64 = 0.0;
    for &t in &ts {
        let mut row = vec![Cell::Float(t)];
        let mut row_discrepancy: f64 = 0.0;
        for q in &quantities {
            let mut values = Vec::with_capacity(3);
            if run_closed {
                values.push(q.closed(&settings.params, t));
            }
            if run_pipeline || run_minimize {
                let state = q.state(&settings.params, t);
                if run_pipeline {
                    values.push(gqd_qubit_qudit(&state)?.value);
                }
                if run_minimize {
                    values.push(gqd_measurement_min(&state, 0)?.value);
                }
            }
            for &v in &values {
                row.push(Cell::Float(v));
            }
            for a in &values {
                for b in &values {
                    row_discrepancy = row_discrepancy.max((a - b).abs());
                }
            }
        }
        if with_discrepancy {
            row.push(Cell::Float(row_discrepancy));
            worst_discrepancy = worst_discrepancy.max(row_discrepancy);
        }
        table.push_row(row);
    }
    write_file(&settings.output, &table.render(settings.format))?;

    if with_discrepancy && worst_discrepancy > DISCREPANCY_LIMIT {
        eprintln!(
            "cross-path discrepancy {worst_discrepancy:.3e} exceeds {DISCREPANCY_LIMIT:.0e}"
        );
        return Ok(1);
    }
    Ok(0)
}

/// Exit code for a finished monogamy sweep.
pub fn monogamy_exit_code(summary: &SweepSummary) -> i32 {
    if summary.has_violations() {
        1
    } else {
        0
    }
}

fn report_table(reports: &[MonogamyReport]) -> Table {
    let mut table = Table::new(
        [
            "alpha", "n", "g", "t", "side", "d_total", "d_pair1", "d_pair2", "residual", "branch",
        ]
        .map(String::from)
        .to_vec(),
    );
    for r in reports {
        table.push_row(vec![
            Cell::Float(r.params.alpha()),
            Cell::Int(r.params.n() as i64),
            Cell::Float(r.params.g()),
            Cell::Float(r.t),
            Cell::Text(r.side.to_string()),
            Cell::Float(r.d_total),
            Cell::Float(r.d_pair1),
            Cell::Float(r.d_pair2),
            Cell::Float(r.residual),
            Cell::Text(r.branch.to_string()),
        ]);
    }
    table
}

fn monogamy_sweep(args: MonogamyArgs) -> Result<i32, CliError> {
    let (settings, file) = config::resolve(&args.common, &EVOLVE_DEFAULTS)?;
    let side = resolve_enum(args.side, &file, "side")?.unwrap_or(SideArg::Both);
    let sides: Vec<Side> = match side {
        SideArg::A => vec![Side::A],
        SideArg::B => vec![Side::B],
        SideArg::Both => vec![Side::A, Side::B],
    };

    let params_grid: Vec<SystemParams> = if args.standard_grid {
        let mut grid = Vec::new();
        for alpha in [
            0.0,
            std::f64::consts::PI / 12.0,
            std::f64::consts::FRAC_PI_6,
            std::f64::consts::FRAC_PI_4,
        ] {
            for n in [0u32, 1, 3, 5] {
                grid.push(SystemParams::resonant(
                    alpha,
                    n,
                    settings.params.g(),
                    settings.params.nu(),
                )?);
            }
        }
        grid
    } else {
        vec![settings.params]
    };

    let ts = config::time_grid(settings.t_max, settings.samples)?;
    let (reports, summary) = monogamy::sweep(&params_grid, &ts, &sides)?;
    write_file(
        &settings.output,
        &report_table(&reports).render(settings.format),
    )?;

    let argmin = &reports[summary.argmin];
    println!(
        "{} reports; min residual {:.3e} at alpha={:.6}, n={}, t={:.6}, side {}; violations: {}",
        reports.len(),
        summary.min_residual,
        argmin.params.alpha(),
        argmin.params.n(),
        argmin.t,
        argmin.side,
        summary.violations
    );
    if summary.has_violations() {
        eprintln!("monogamy violations detected");
    }
    Ok(monogamy_exit_code(&summary))
}

#[derive(Serialize)]
struct PeaksDocument<'a> {
    params: &'a SystemParams,
    peaks: &'a [Peak],
}

fn spectrum(args: SpectrumArgs) -> Result<i32, CliError> {
    let (settings, file) = config::resolve(&args.common, &SPECTRUM_DEFAULTS)?;
    let threshold = resolve_f64(args.threshold, &file, "threshold")?
        .unwrap_or(jc_gqd::spectrum::DEFAULT_THRESHOLD_FRACTION);

    let series = sample_series(&settings.params, settings.t_max, settings.samples)?;
    let spec = analyze(&series, threshold, DEFAULT_MIN_SEPARATION_BINS)?;

    let mut table = Table::new(["omega", "magnitude"].map(String::from).to_vec());
    for (w, m) in spec.omega.iter().zip(&spec.magnitude) {
        table.push_row(vec![Cell::Float(*w), Cell::Float(*m)]);
    }
    write_file(&settings.output, &table.render(settings.format))?;

    let peaks_doc = PeaksDocument {
        params: &settings.params,
        peaks: &spec.peaks,
    };
    let peaks_json = serde_json::to_string_pretty(&peaks_doc)
        .expect("peak serialization cannot fail")
        + "\n";
    let peaks_path = settings.output.with_extension("peaks.json");
    write_file(&peaks_path, &peaks_json)?;

    println!("{} peaks", spec.peaks.len());
    for peak in &spec.peaks {
        println!("  omega = {:.6}, height = {:.6e}", peak.omega, peak.height);
    }
    Ok(0)
}

fn figure(args: FigureArgs) -> Result<i32, CliError> {
    let defaults: &Defaults = if args.id == FigureId::F5 {
        &SPECTRUM_DEFAULTS
    } else {
        &EVOLVE_DEFAULTS
    };
    let (settings, _) = config::resolve(&args.common, defaults)?;
    let n = args.variant.fock_number();
    let g = settings.params.g();
    let nu = settings.params.nu();

    let (x_name, xs, curves) = match args.id {
        FigureId::F5 => {
            let (xs, curves) =
                figures::spectrum_curves(n, g, nu, settings.t_max, settings.samples)?;
            ("log10_omega", xs, curves)
        }
        id => {
            let (xs, curves) = figures::time_curves(id, n, g, nu, settings.t_max, settings.samples)?;
            ("t", xs, curves)
        }
    };

    let mut columns = vec![x_name.to_string()];
    columns.extend(figures::alpha_column_names().map(String::from));
    let mut table = Table::new(columns);
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![Cell::Float(x)];
        for curve in &curves {
            row.push(Cell::Float(curve[i]));
        }
        table.push_row(row);
    }
    write_file(&settings.output, &table.render(settings.format))?;

    if args.gnuplot {
        let script = figures::gnuplot_script(args.id, &settings.output.display().to_string());
        write_file(&settings.output.with_extension("gp"), &script)?;
    }
    Ok(0)
}
