//! Command-line driver for the sphere-ramsey library.
//!
//! Every subcommand prints a single JSON report to stdout: the echoed
//! command line, tool version, timestamp, a pass flag, the worst residual
//! observed, any violated invariants, and a command-specific payload.
//! Floats carry 17 significant digits in both the JSON and the optional CSV
//! outputs, and identical invocations produce byte-identical reports once
//! the timestamp field is ignored.
//!
//! The exit status is 0 when every check passes and 1 when a check fails or
//! a computation errors; usage errors exit with status 2.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sphere_ramsey::coloring::{find_monochromatic, verify_chi, Color, ColoringRule, ConfigSpec};
use sphere_ramsey::geom::{intersect_circles_with, CircleIntersection, PlanePair, SpherePoint};
use sphere_ramsey::propagation::{diamond_params, simulate_propagation, DiamondVariant};
use sphere_ramsey::{isosceles, sqrt2, sqrt3, Tolerances, Vec3};

#[derive(Parser)]
#[command(name = "sphere-ramsey", version)]
#[command(about = "Numeric certificates for chord constructions and two-colorings of small spheres")]
struct Cli {
    /// Override the solver tolerance used by intersections and root finding.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the coloring of S(1/sqrt2) for monochromatic orthogonal triples.
    VerifyChi {
        /// Random triples to test on top of the structured boundary sweep.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify a diamond fold and simulate its arc growth.
    Propagate {
        /// Chord length carried by the fold.
        #[arg(long)]
        a: f64,
        /// Sphere radius.
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value_t = FoldArg::Equilateral)]
        variant: FoldArg,
        /// Angular grid density of the simulation.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Sample a constraint curve and report the worst residuals.
    Curve {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Sample count; the sqrt3 case splits it across its two admissible
        /// intervals.
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// Write per-sample rows to this CSV file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the height-doubling recursion to a circle of diameter above 1.
    Enlarge,
    /// Certify the sign-change root of the return-to-unit-chord equation on
    /// S(1/sqrt3).
    Ivt,
    /// Build the isosceles separation system and its connecting path.
    Isosceles {
        /// Leg length, strictly between sqrt(3/2) and sqrt2.
        #[arg(long)]
        a: f64,
        /// Distinguished start point: e (in plane) or estar (tilted).
        #[arg(long, value_enum, default_value_t = StartArg::E)]
        variant: StartArg,
        /// March samples per path branch.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Write the path polyline to this CSV file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersect two plane sections of one sphere.
    Intersect {
        /// First plane normal as "x,y,z".
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        n1: Vec3,
        /// First plane offset, measured against the normal as given.
        #[arg(long, allow_negative_numbers = true)]
        o1: f64,
        /// Second plane normal as "x,y,z".
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        n2: Vec3,
        #[arg(long, allow_negative_numbers = true)]
        o2: f64,
        /// Sphere radius.
        #[arg(long)]
        r: f64,
    },
    /// Search rotations of a rigid configuration for a monochromatic
    /// placement.
    Search {
        #[arg(long, value_enum)]
        config: ConfigArg,
        /// Side length of the configuration (the base, for isosceles).
        #[arg(long)]
        a: f64,
        #[arg(long, value_enum, default_value_t = ColorArg::Red)]
        color: ColorArg,
        /// Per-axis density of the Euler-angle grid.
        #[arg(long, default_value_t = 24)]
        grid: usize,
        /// Refinement iterations after a grid hit.
        #[arg(long, default_value_t = 40)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON coloring file; defaults to the built-in coloring of
        /// S(1/sqrt2).
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FoldArg {
    Equilateral,
    Asymmetric,
}

impl From<FoldArg> for DiamondVariant {
    fn from(v: FoldArg) -> DiamondVariant {
        match v {
            FoldArg::Equilateral => DiamondVariant::Equilateral,
            FoldArg::Asymmetric => DiamondVariant::Asymmetric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Sqrt2,
    Sqrt3,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    E,
    Estar,
}

impl From<StartArg> for isosceles::StartVariant {
    fn from(v: StartArg) -> isosceles::StartVariant {
        match v {
            StartArg::E => isosceles::StartVariant::InPlane,
            StartArg::Estar => isosceles::StartVariant::Tilted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConfigArg {
    Pair,
    Equilateral,
    Isosceles,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Red,
    Blue,
}

impl From<ColorArg> for Color {
    fn from(v: ColorArg) -> Color {
        match v {
            ColorArg::Red => Color::Red,
            ColorArg::Blue => Color::Blue,
        }
    }
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected \"x,y,z\", got \"{s}\""));
    }
    let mut vals = [0.0f64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad coordinate \"{part}\": {e}"))?;
    }
    Ok(Vec3::new(vals[0], vals[1], vals[2]))
}

/// The envelope every subcommand prints. `failures` lists each violated
/// invariant together with the worst offending input; it is empty on pass.
#[derive(Serialize)]
struct Report {
    command: String,
    version: &'static str,
    timestamp: String,
    pass: bool,
    max_residual: f64,
    failures: Vec<String>,
    payload: serde_json::Value,
}

struct Outcome {
    pass: bool,
    max_residual: f64,
    failures: Vec<String>,
    payload: serde_json::Value,
}

/// Writes floats as `d.dddddddddddddddde±x`: 17 significant digits, which
/// round-trips any f64 and stays stable across runs.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn print_report(report: &Report) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let mut ser = serde_json::Serializer::with_formatter(&mut lock, SciFormatter);
    report.serialize(&mut ser).context("serializing report")?;
    lock.write_all(b"\n")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let outcome = run(&cli).unwrap_or_else(|e| Outcome {
        pass: false,
        max_residual: 0.0,
        failures: vec![format!("computation failed: {e:#}")],
        payload: serde_json::Value::Null,
    });
    let report = Report {
        command,
        version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339(),
        pass: outcome.pass,
        max_residual: outcome.max_residual,
        failures: outcome.failures,
        payload: outcome.payload,
    };
    if let Err(e) = print_report(&report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let tol = match cli.tolerance {
        Some(t) => {
            anyhow::ensure!(t > 0.0, "tolerance must be positive, got {t}");
            Tolerances::with_solve(t)
        }
        None => Tolerances::default(),
    };
    match &cli.command {
        Command::VerifyChi { samples, seed } => verify_chi_cmd(*samples, *seed, &tol),
        Command::Propagate { a, r, variant, grid } => propagate_cmd(*a, *r, *variant, *grid),
        Command::Curve { case, samples, out } => curve_cmd(*case, *samples, out.as_deref(), &tol),
        Command::Enlarge => enlarge_cmd(),
        Command::Ivt => ivt_cmd(&tol),
        Command::Isosceles { a, variant, grid, out } => {
            isosceles_cmd(*a, *variant, *grid, out.as_deref(), &tol)
        }
        Command::Intersect { n1, o1, n2, o2, r } => intersect_cmd(*n1, *o1, *n2, *o2, *r, &tol),
        Command::Search { config, a, color, grid, steps, seed, coloring } => {
            search_cmd(*config, *a, *color, *grid, *steps, *seed, coloring.as_deref(), &tol)
        }
    }
}

fn verify_chi_cmd(samples: u64, seed: u64, tol: &Tolerances) -> anyhow::Result<Outcome> {
    let v = verify_chi(samples, seed, tol);
    let mut failures = Vec::new();
    if v.monochromatic_count > 0 {
        let witness = v
            .counterexample
            .as_ref()
            .and_then(|w| serde_json::to_string(&w.points).ok())
            .unwrap_or_default();
        failures.push(format!(
            "invariant 'no monochromatic orthogonal triple' violated: {} found, first at {witness}",
            v.monochromatic_count
        ));
    }
    if v.worst_identity_residual > 1e-10 {
        failures.push(format!(
            "invariant 'sampled triples are orthogonal to rounding' violated: worst residual {}",
            sci(v.worst_identity_residual)
        ));
    }
    let pass = v.pass && failures.is_empty();
    Ok(Outcome {
        pass,
        max_residual: v.worst_identity_residual,
        failures,
        payload: serde_json::to_value(&v)?,
    })
}

fn propagate_cmd(a: f64, r: f64, variant: FoldArg, grid: usize) -> anyhow::Result<Outcome> {
    anyhow::ensure!(grid >= 8, "simulation grid must be at least 8, got {grid}");
    let report = diamond_params(a, r, variant.into())?;
    let mut failures = Vec::new();
    let mut max_residual = 0.0f64;
    let sim = if report.degenerate {
        None
    } else {
        let sim = simulate_propagation(&report, grid)?;
        let budget = (sim.steps.len() as f64 + 1.0) * 2.0 * PI / grid as f64;
        max_residual = sim.max_endpoint_deviation;
        if sim.max_endpoint_deviation > budget {
            failures.push(format!(
                "invariant 'simulated arc endpoints track the analytic recurrence' violated: \
                 deviation {} exceeds the grid budget {} at a = {a}, r = {r}",
                sci(sim.max_endpoint_deviation),
                sci(budget)
            ));
        }
        let gamma_gap = (sim.gamma_measured - sim.gamma_analytic).abs();
        if gamma_gap > 1e-6 {
            failures.push(format!(
                "invariant 'measured cut angle matches the closed form' violated: \
                 gap {} at a = {a}, r = {r}",
                sci(gamma_gap)
            ));
        }
        Some(sim)
    };
    let pass = failures.is_empty();
    Ok(Outcome {
        pass,
        max_residual,
        failures,
        payload: serde_json::json!({ "fold": report, "simulation": sim }),
    })
}

fn curve_cmd(
    case: CaseArg,
    samples: usize,
    out: Option<&Path>,
    tol: &Tolerances,
) -> anyhow::Result<Outcome> {
    match case {
        CaseArg::Sqrt2 => {
            anyhow::ensure!(samples >= 2, "need at least two samples, got {samples}");
            let mut rows = Vec::with_capacity(samples);
            let mut worst = (0.0f64, 0.0f64);
            for k in 0..samples {
                let alpha = 2.0 * PI * k as f64 / samples as f64;
                let s = sqrt2::curve_sample(alpha);
                let res = s.max_residual();
                if res > worst.0 {
                    worst = (res, alpha);
                }
                let c = s.point.coords();
                rows.push(vec![alpha, c.x, c.y, c.z, res]);
            }
            if let Some(path) = out {
                write_rows(path, "alpha,x,y,z,residual_max", &rows)?;
            }
            finish_curve("sqrt2", rows.len(), worst)
        }
        CaseArg::Sqrt3 => {
            anyhow::ensure!(
                samples >= 4,
                "need at least four samples (two per admissible interval), got {samples}"
            );
            let list = sqrt3::sample_curve(samples / 2, tol)?;
            let mut rows = Vec::with_capacity(list.len());
            let mut worst = (0.0f64, 0.0f64);
            for s in &list {
                let res = s.max_residual();
                if res > worst.0 {
                    worst = (res, s.pair.alpha);
                }
                let p1 = s.pair.d1_prime.coords();
                let p2 = s.pair.d2_prime.coords();
                rows.push(vec![s.pair.alpha, p1.x, p1.y, p1.z, p2.x, p2.y, p2.z, res]);
            }
            if let Some(path) = out {
                write_rows(
                    path,
                    "alpha,d1p_x,d1p_y,d1p_z,d2p_x,d2p_y,d2p_z,residual_max",
                    &rows,
                )?;
            }
            finish_curve("sqrt3", rows.len(), worst)
        }
    }
}

fn finish_curve(case: &str, rows: usize, worst: (f64, f64)) -> anyhow::Result<Outcome> {
    let mut failures = Vec::new();
    if worst.0 > 1e-10 {
        failures.push(format!(
            "invariant 'curve satisfies its defining constraints to rounding' violated: \
             residual {} at alpha = {}",
            sci(worst.0),
            sci(worst.1)
        ));
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        max_residual: worst.0,
        failures,
        payload: serde_json::json!({
            "case": case,
            "rows": rows,
            "max_residual": worst.0,
            "worst_alpha": worst.1,
        }),
    })
}

fn write_rows(path: &Path, header: &str, rows: &[Vec<f64>]) -> anyhow::Result<()> {
    let mut file = std::fs::File::create(path)
        .with_context(|| format!("creating {}", path.display()))?;
    writeln!(file, "{header}")?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| sci(v)).collect();
        writeln!(file, "{}", cells.join(","))?;
    }
    Ok(())
}

fn enlarge_cmd() -> anyhow::Result<Outcome> {
    let cert = sqrt2::enlargement_certificate()?;
    let mut failures = Vec::new();
    if !cert.exceeds_unit {
        failures.push(format!(
            "invariant 'final circle diameter exceeds 1' violated: diameter {}",
            sci(cert.diameter)
        ));
    }
    if cert.witness_residual_max > 1e-12 {
        failures.push(format!(
            "invariant 'witness identities hold to 1e-12' violated: worst residual {}",
            sci(cert.witness_residual_max)
        ));
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        max_residual: cert.witness_residual_max,
        failures,
        payload: serde_json::to_value(cert)?,
    })
}

fn ivt_cmd(tol: &Tolerances) -> anyhow::Result<Outcome> {
    let cert = sqrt3::ivt_certificate(tol)?;
    let max_residual = cert.max_residual();
    let mut failures = Vec::new();
    if max_residual > 1e-10 {
        failures.push(format!(
            "invariant 'root point satisfies its chord constraints' violated: \
             worst residual {} at alpha = {}",
            sci(max_residual),
            sci(cert.root_alpha)
        ));
    }
    if !(cert.root_alpha > 0.0 && cert.root_alpha < FRAC_PI_2) {
        failures.push(format!(
            "invariant 'root lies strictly inside (0, pi/2)' violated: alpha = {}",
            sci(cert.root_alpha)
        ));
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        max_residual,
        failures,
        payload: serde_json::to_value(&cert)?,
    })
}

/// Path facts without the polyline; the polyline itself goes to CSV.
#[derive(Serialize)]
struct PathSummary {
    psi_star: f64,
    samples: usize,
    junction_gap: f64,
    endpoint_angle: f64,
    start_endpoint_gap: f64,
    max_chord_residual: f64,
    max_adjacent_gap: f64,
    crossings_per_fan_point: Vec<usize>,
    total_crossings: usize,
}

fn isosceles_cmd(
    a: f64,
    variant: StartArg,
    grid: usize,
    out: Option<&Path>,
    tol: &Tolerances,
) -> anyhow::Result<Outcome> {
    anyhow::ensure!(grid >= 8, "march grid must be at least 8, got {grid}");
    let variant_name = match variant {
        StartArg::E => "e",
        StartArg::Estar => "estar",
    };
    let frame = isosceles::frame(a, variant.into())?;
    let (peak_psi, peak_value) = isosceles::peak_margin(&frame);
    let system = isosceles::separation_system(&frame)?;
    let cert = isosceles::tangency_certificate(&frame)?;
    let path = isosceles::red_path(&frame, grid, tol)?;

    let mut failures = Vec::new();
    let mut max_residual = 0.0f64;
    let residual_checks = [
        ("fan junctions close", system.junction_residual, 1e-9),
        (
            "arc endpoints sit at chord a from their fan points",
            system.chord_residual,
            1e-9,
        ),
        (
            "neighbouring fan circles meet tangentially",
            cert.max_collinearity_residual,
            1e-9,
        ),
        ("path branches join at the tangency", path.junction_gap, 1e-9),
        (
            "path free ends span the fan step angle",
            (path.endpoint_angle - 2.0 * frame.params.beta).abs(),
            1e-9,
        ),
        (
            "one free end is the distinguished point",
            path.start_endpoint_gap,
            1e-9,
        ),
        (
            "path vertices keep chord a to their rotation partners",
            path.max_chord_residual,
            1e-10,
        ),
    ];
    for (name, value, bound) in residual_checks {
        max_residual = max_residual.max(value);
        if value > bound {
            failures.push(format!(
                "invariant '{name}' violated: residual {} exceeds {} at a = {a}, \
                 variant {variant_name}",
                sci(value),
                sci(bound)
            ));
        }
    }
    if peak_value <= 0.0 {
        failures.push(format!(
            "invariant 'intersection margin peaks strictly positive' violated: \
             peak {} at psi = {} for a = {a}, variant {variant_name}",
            sci(peak_value),
            sci(peak_psi)
        ));
    }
    if !system.covers_circle {
        failures.push(format!(
            "invariant 'the arc chain wraps the whole circle' violated at a = {a}"
        ));
    }
    if cert.midpoint_crossings.iter().any(|&c| c % 2 == 0) {
        failures.push(format!(
            "invariant 'every midpoint hop crosses a fan circle an odd number of times' \
             violated: counts {:?} at a = {a}, variant {variant_name}",
            cert.midpoint_crossings
        ));
    }
    if path.total_crossings == 0 {
        failures.push(format!(
            "invariant 'the path crosses at least one fan circle' violated at a = {a}, \
             variant {variant_name}"
        ));
    }
    // The march parameter collapses like a square root at the junction, so
    // the largest legitimate vertex spacing shrinks only as 1/sqrt(grid). A
    // branch-labelling bug instead produces gaps of order 1.
    let gap_bound = (4.0 / (grid as f64).sqrt()).min(0.5);
    if path.max_adjacent_gap > gap_bound {
        failures.push(format!(
            "invariant 'consecutive path vertices stay close' violated: gap {} exceeds {} \
             at a = {a}, variant {variant_name}",
            sci(path.max_adjacent_gap),
            sci(gap_bound)
        ));
    }

    if let Some(csv) = out {
        let mut file = std::fs::File::create(csv)
            .with_context(|| format!("creating {}", csv.display()))?;
        writeln!(file, "index,x,y,z")?;
        for (i, p) in path.polyline.iter().enumerate() {
            let c = p.coords();
            writeln!(file, "{i},{},{},{}", sci(c.x), sci(c.y), sci(c.z))?;
        }
    }

    let summary = PathSummary {
        psi_star: path.psi_star,
        samples: path.samples,
        junction_gap: path.junction_gap,
        endpoint_angle: path.endpoint_angle,
        start_endpoint_gap: path.start_endpoint_gap,
        max_chord_residual: path.max_chord_residual,
        max_adjacent_gap: path.max_adjacent_gap,
        crossings_per_fan_point: path.crossings_per_fan_point.clone(),
        total_crossings: path.total_crossings,
    };
    Ok(Outcome {
        pass: failures.is_empty(),
        max_residual,
        failures,
        payload: serde_json::json!({
            "frame": frame,
            "peak_margin": { "psi": peak_psi, "value": peak_value },
            "separation": system,
            "tangency": cert,
            "path": summary,
        }),
    })
}

fn plane_residual(p: &SpherePoint, planes: &PlanePair) -> f64 {
    let c = p.coords();
    let sphere = (c.norm() - planes.sphere_radius).abs();
    let pl1 = (c.dot(planes.normal1) - planes.offset1).abs() / planes.normal1.norm();
    let pl2 = (c.dot(planes.normal2) - planes.offset2).abs() / planes.normal2.norm();
    sphere.max(pl1).max(pl2)
}

fn intersect_cmd(
    n1: Vec3,
    o1: f64,
    n2: Vec3,
    o2: f64,
    r: f64,
    tol: &Tolerances,
) -> anyhow::Result<Outcome> {
    let planes = PlanePair {
        normal1: n1,
        offset1: o1,
        normal2: n2,
        offset2: o2,
        sphere_radius: r,
    };
    let result = intersect_circles_with(&planes, tol)?;
    let max_residual = match &result {
        CircleIntersection::Empty => 0.0,
        CircleIntersection::Tangent { point } => plane_residual(point, &planes),
        CircleIntersection::Pair { first, second } => {
            plane_residual(first, &planes).max(plane_residual(second, &planes))
        }
    };
    let bound = (10.0 * tol.solve).max(1e-10);
    let mut failures = Vec::new();
    if max_residual > bound {
        failures.push(format!(
            "invariant 'intersection points lie on the sphere and both planes' violated: \
             residual {} exceeds {} for normals {:?} and {:?}",
            sci(max_residual),
            sci(bound),
            n1,
            n2
        ));
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        max_residual,
        failures,
        payload: serde_json::json!({
            "planes": {
                "normal1": n1,
                "offset1": o1,
                "normal2": n2,
                "offset2": o2,
                "sphere_radius": r,
            },
            "result": result,
        }),
    })
}

#[allow(clippy::too_many_arguments)]
fn search_cmd(
    config: ConfigArg,
    a: f64,
    color: ColorArg,
    grid: usize,
    steps: usize,
    seed: u64,
    coloring: Option<&Path>,
    tol: &Tolerances,
) -> anyhow::Result<Outcome> {
    let rule = match coloring {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            ColoringRule::from_json(&text)?
        }
        None => ColoringRule::chi(),
    };
    let spec = match config {
        ConfigArg::Pair => ConfigSpec::Pair { a },
        ConfigArg::Equilateral => ConfigSpec::Equilateral { a },
        ConfigArg::Isosceles => ConfigSpec::Isosceles { base: a },
    };
    let witness = find_monochromatic(&rule, spec, color.into(), grid, steps, seed, tol)?;
    let mut failures = Vec::new();
    let mut max_residual = 0.0f64;
    if let Some(w) = &witness {
        max_residual = w.residuals.iter().fold(0.0f64, |acc, &v| acc.max(v));
        if max_residual > 1e-8 {
            failures.push(format!(
                "invariant 'witness distances match the configuration' violated: \
                 residual {} for points {}",
                sci(max_residual),
                serde_json::to_string(&w.points).unwrap_or_default()
            ));
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        max_residual,
        failures,
        payload: serde_json::json!({
            "found": witness.is_some(),
            "witness": witness,
            "sphere_radius": rule.sphere_radius,
            "grid": grid,
            "refine_iters": steps,
            "seed": seed,
        }),
    })
}
