//! `ulrich` — command-line frontend for the exact computer-algebra library.
//!
//! Subcommands cover the randomized end-to-end construction and its
//! certification (`construct`, `certify`, `sweep`, `export-oracle`),
//! resolution tools on arbitrary input ideals (`betti`, `hilbert`), and the
//! closed-form invariant calculators (`chern`, `bgn`, `dims`).
//!
//! All state flows through flags; environment variables are never consulted,
//! so a command line is a complete record of a run.  Exit status is 0 exactly
//! when the requested verdict (or computation) succeeds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ulrich::gb::{GbOptions, Ideal};
use ulrich::invariants as inv;
use ulrich::mpoly::fmt::{read_ideal_file, write_ideal_file};
use ulrich::pipeline::{
    certify_pair, oracle_script, run_pipeline, sweep, CertificationReport, PipelineConfig,
};
use ulrich::resolve::{
    betti_table, degree_genus, free_resolution, hilbert_polynomial, BettiTable,
    ModulePresentation,
};

#[derive(Parser)]
#[command(
    name = "ulrich",
    version,
    about = "Exact construction and certification of a rank-3 Ulrich bundle \
             on an intersection of two quadrics in P^5",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full randomized construction; write ideals and the report.
    Construct(ConstructArgs),
    /// Re-certify a curve/pencil pair from ideal files (no randomness).
    Certify(CertifyArgs),
    /// Betti table of the minimal free resolution of S/I.
    Betti(IdealFileArgs),
    /// Hilbert polynomial, dimension, and degree of S/I.
    Hilbert(IdealFileArgs),
    /// Chern data of the rank-r Ulrich bundle.
    Chern(RankArgs),
    /// Brill-Noether nonemptiness of W^{k-1}_{r,d} on a genus-g curve.
    Bgn(BgnArgs),
    /// Moduli, orthogonality, and jumping-locus dimension counts.
    Dims(RankArgs),
    /// Run the pipeline over consecutive seeds and print the pass rate.
    ///
    /// Exits 0 when at least four fifths of the seeds pass.
    Sweep(SweepArgs),
    /// Run the pipeline and write the cross-validation oracle script.
    ExportOracle(ExportOracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ConstructArgs {
    /// Field characteristic.
    #[arg(long, default_value_t = 997)]
    prime: u32,
    /// Seed for the deterministic random stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum retries per randomized stage.
    #[arg(long, default_value_t = 5)]
    attempts: u32,
    /// Also verify smoothness of X by the Jacobian criterion (slow).
    #[arg(long = "check-smooth")]
    check_smooth: bool,
    /// Print per-stage timings to stderr while running.
    #[arg(long)]
    progress: bool,
    /// Directory for the emitted ideal files and report.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    /// Ideal file of the curve D in P^5.
    curve: PathBuf,
    /// Ideal file of the quadric pencil cutting X.
    pencil: PathBuf,
    /// Also verify smoothness of X by the Jacobian criterion (slow).
    #[arg(long = "check-smooth")]
    check_smooth: bool,
    /// Directory for report.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct IdealFileArgs {
    /// Ideal file (header line plus one generator per line).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RankArgs {
    /// Bundle rank r.
    #[arg(long, default_value_t = 3)]
    rank: i128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BgnArgs {
    /// Curve genus g.
    g: i128,
    /// Bundle rank r.
    r: i128,
    /// Bundle degree d.
    d: i128,
    /// Required section count k.
    k: i128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Field characteristic.
    #[arg(long, default_value_t = 997)]
    prime: u32,
    /// First seed of the range.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of consecutive seeds to run.
    #[arg(long, default_value_t = 10)]
    count: u64,
    /// Maximum retries per randomized stage.
    #[arg(long, default_value_t = 5)]
    attempts: u32,
    /// Also verify smoothness of X in every run (slow).
    #[arg(long = "check-smooth")]
    check_smooth: bool,
    /// Print per-stage timings to stderr while running.
    #[arg(long)]
    progress: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ExportOracleArgs {
    /// Field characteristic.
    #[arg(long, default_value_t = 997)]
    prime: u32,
    /// Seed for the deterministic random stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum retries per randomized stage.
    #[arg(long, default_value_t = 5)]
    attempts: u32,
    /// Output path for the script.
    #[arg(long, default_value = "oracle.m2")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Construct(a) => cmd_construct(a),
        Cmd::Certify(a) => cmd_certify(a),
        Cmd::Betti(a) => cmd_betti(a),
        Cmd::Hilbert(a) => cmd_hilbert(a),
        Cmd::Chern(a) => cmd_chern(a),
        Cmd::Bgn(a) => cmd_bgn(a),
        Cmd::Dims(a) => cmd_dims(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::ExportOracle(a) => cmd_export_oracle(a),
    }
}

fn exit_by(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn load_ideal(path: &Path) -> Result<Ideal> {
    let (ring, gens) =
        read_ideal_file(path).with_context(|| path.display().to_string())?;
    Ok(Ideal::new(ring, gens))
}

fn write_report(dir: &Path, rep: &CertificationReport) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join("report.json");
    std::fs::write(&path, rep.to_json_string())
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn print_value(format: Format, v: &Value, text: &str) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(v).expect("value serializes")
        ),
        Format::Text => print!("{text}"),
    }
}

// ---------------------------------------------------------------------
// construct / certify / sweep / export-oracle
// ---------------------------------------------------------------------

fn cmd_construct(a: ConstructArgs) -> Result<ExitCode> {
    let cfg = PipelineConfig {
        prime: a.prime,
        seed: a.seed,
        max_attempts: a.attempts,
        check_x_smoothness: a.check_smooth,
        run_hilbert_series_check: true,
        progress: a.progress,
    };
    let run = run_pipeline(&cfg)?;
    write_report(&a.out, &run.report)?;
    let mut written = vec!["report.json".to_string()];
    if let Some(art) = &run.artifacts {
        for (name, ring, ideal) in [
            ("IDprime.ideal", &art.cox_ring, &art.i_d_prime),
            ("IGamma.ideal", &art.plane_ring, &art.i_gamma),
            ("IDelta.ideal", &art.plane_ring, &art.i_delta),
            ("ID.ideal", &art.p5_ring, &art.i_d),
            ("IX.ideal", &art.p5_ring, &art.i_x),
        ] {
            let path = a.out.join(name);
            write_ideal_file(&path, ring, ideal.gens())
                .with_context(|| format!("writing {}", path.display()))?;
            written.push(name.to_string());
        }
    }
    match a.format {
        Format::Json => print!("{}", run.report.to_json_string()),
        Format::Text => {
            print!("{}", report_text(&run.report));
            println!("wrote {} in {}", written.join(", "), a.out.display());
        }
    }
    Ok(exit_by(run.report.verdict()))
}

fn cmd_certify(a: CertifyArgs) -> Result<ExitCode> {
    let i_d = load_ideal(&a.curve)?;
    let i_x = load_ideal(&a.pencil)?;
    let rep = certify_pair(&i_d, &i_x, a.check_smooth)?;
    write_report(&a.out, &rep)?;
    match a.format {
        Format::Json => print!("{}", rep.to_json_string()),
        Format::Text => print!("{}", report_text(&rep)),
    }
    Ok(exit_by(rep.verdict()))
}

fn cmd_sweep(a: SweepArgs) -> Result<ExitCode> {
    if a.count == 0 {
        bail!("--count must be at least 1");
    }
    let cfg = PipelineConfig {
        prime: a.prime,
        seed: a.seed,
        max_attempts: a.attempts,
        check_x_smoothness: a.check_smooth,
        run_hilbert_series_check: true,
        progress: a.progress,
    };
    let seeds: Vec<u64> = (a.seed..a.seed + a.count).collect();
    let entries = sweep(&cfg, &seeds);
    let passed = entries.iter().filter(|e| e.verdict).count();
    let total = entries.len();
    match a.format {
        Format::Json => {
            let v = json!({
                "prime": a.prime,
                "entries": entries
                    .iter()
                    .map(|e| json!({
                        "seed": e.seed,
                        "verdict": if e.verdict { "pass" } else { "fail" },
                    }))
                    .collect::<Vec<_>>(),
                "passed": passed,
                "total": total,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        }
        Format::Text => {
            for e in &entries {
                println!(
                    "seed {}: {}",
                    e.seed,
                    if e.verdict { "pass" } else { "fail" }
                );
            }
            println!("passed {passed}/{total}");
        }
    }
    Ok(exit_by(passed * 5 >= total * 4))
}

fn cmd_export_oracle(a: ExportOracleArgs) -> Result<ExitCode> {
    let cfg = PipelineConfig {
        prime: a.prime,
        seed: a.seed,
        max_attempts: a.attempts,
        check_x_smoothness: false,
        run_hilbert_series_check: true,
        progress: false,
    };
    let run = run_pipeline(&cfg)?;
    let Some(art) = &run.artifacts else {
        bail!("construction aborted before completing; nothing to export");
    };
    std::fs::write(&a.out, oracle_script(art))
        .with_context(|| format!("writing {}", a.out.display()))?;
    println!("wrote {}", a.out.display());
    Ok(exit_by(run.report.verdict()))
}

// ---------------------------------------------------------------------
// betti / hilbert
// ---------------------------------------------------------------------

fn cmd_betti(a: IdealFileArgs) -> Result<ExitCode> {
    let ideal = load_ideal(&a.file)?;
    let res = free_resolution(
        &ModulePresentation::quotient_ring(&ideal),
        true,
        &GbOptions::default(),
    )?;
    let bt = betti_table(&res)?;
    print_value(a.format, &bt.to_json(), &betti_text(&bt));
    Ok(ExitCode::SUCCESS)
}

fn cmd_hilbert(a: IdealFileArgs) -> Result<ExitCode> {
    let ideal = load_ideal(&a.file)?;
    let res = free_resolution(
        &ModulePresentation::quotient_ring(&ideal),
        true,
        &GbOptions::default(),
    )?;
    let p = hilbert_polynomial(&res)?;
    let dg = degree_genus(&ideal)?;

    let coeffs: Vec<Value> = p
        .coefficients()
        .iter()
        .map(|c| {
            json!([
                i64::try_from(*c.numer()).expect("coefficient fits"),
                i64::try_from(*c.denom()).expect("coefficient fits"),
            ])
        })
        .collect();
    let v = json!({
        "dim": dg.dim,
        "degree": dg.degree,
        "genus": dg.genus,
        "hilbert_polynomial": coeffs,
    });

    let mut text = String::new();
    let _ = writeln!(text, "Krull dimension: {}", dg.dim);
    let _ = writeln!(text, "degree: {}", dg.degree);
    if let Some(g) = dg.genus {
        let _ = writeln!(text, "genus: {g}");
    }
    let _ = writeln!(text, "P(d) = {p}");
    print_value(a.format, &v, &text);
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// chern / bgn / dims
// ---------------------------------------------------------------------

fn cmd_chern(a: RankArgs) -> Result<ExitCode> {
    let cd = inv::fm_chern(a.rank)?;
    let v = json!({
        "rank": cd.rank as i64,
        "chern": cd.chern.iter().map(|&c| c as i64).collect::<Vec<_>>(),
        "curve_rank": cd.curve_rank as i64,
        "curve_degree": cd.curve_degree as i64,
        "line_bundle_obstruction": cd.line_bundle_obstruction,
    });
    let mut text = format!(
        "({}, {}, {}, {}); (s,d) = ({},{})\n",
        cd.chern[0], cd.chern[1], cd.chern[2], cd.chern[3], cd.curve_rank, cd.curve_degree
    );
    if cd.line_bundle_obstruction {
        text.push_str("note: no Ulrich line bundle exists; no line bundle attains this Chern character\n");
    }
    print_value(a.format, &v, &text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_bgn(a: BgnArgs) -> Result<ExitCode> {
    let q = inv::BNQuery::new(a.g, a.r, a.d, a.k)?;
    let nonempty = inv::bgn_nonempty(q);
    let rho = inv::bn_rho(q);
    let v = json!({
        "nonempty": nonempty,
        "rho": rho as i64,
    });
    let text = format!("{}\n", if nonempty { "nonempty" } else { "empty" });
    print_value(a.format, &v, &text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_dims(a: RankArgs) -> Result<ExitCode> {
    let r = a.rank;
    let m = inv::ulrich_moduli_dims(r)?;
    let o = inv::r3_orthogonality_dims();
    let jump = inv::jumping_locus_bounds(r).ok();

    let mut v = serde_json::Map::new();
    v.insert("rank".into(), json!(r as i64));
    v.insert(
        "moduli".into(),
        json!({
            "moduli_dim": m.moduli_dim as i64,
            "strict_ss_dim": m.strict_ss_dim.map(|x| x as i64),
            "ext1_dim": m.ext1_dim.map(|x| x as i64),
            "chi_ee": m.chi_ee as i64,
        }),
    );
    if let Some(j) = &jump {
        v.insert(
            "jumping_locus".into(),
            json!({
                "ext1_dim": j.ext1_dim as i64,
                "family_dim": j.family_dim as i64,
                "swept_dim": j.swept_dim as i64,
                "ambient_dim": j.ambient_dim as i64,
            }),
        );
    }
    v.insert(
        "rank3_orthogonality".into(),
        json!({
            "case1": o.case1 as i64,
            "case2": o.case2 as i64,
            "case3": o.case3 as i64,
            "case4": o.case4 as i64,
            "ambient": o.ambient as i64,
        }),
    );

    let mut text = String::new();
    let _ = writeln!(text, "rank {r}:");
    let _ = writeln!(text, "  stable moduli dimension: {}", m.moduli_dim);
    if let (Some(ss), Some(e1)) = (m.strict_ss_dim, m.ext1_dim) {
        let _ = writeln!(
            text,
            "  strictly semistable locus: at most {ss} (< {})",
            m.moduli_dim
        );
        let _ = writeln!(text, "  ext^1 between summands: {e1}");
    }
    let _ = writeln!(text, "  chi(E (x) E*): {}", m.chi_ee);
    if let Some(j) = &jump {
        let _ = writeln!(
            text,
            "  jumping locus: ext^1 {}, family <= {}, swept <= {} (< {})",
            j.ext1_dim, j.family_dim, j.swept_dim, j.ambient_dim
        );
    }
    let _ = writeln!(
        text,
        "rank-3 orthogonality case bounds: {}, {}, {}, {} (each < {})",
        o.case1, o.case2, o.case3, o.case4, o.ambient
    );
    print_value(a.format, &Value::Object(v), &text);
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------
// Text renderers
// ---------------------------------------------------------------------

fn report_text(rep: &CertificationReport) -> String {
    let mut s = String::new();
    match rep.seed {
        Some(seed) => {
            let _ = writeln!(s, "prime {}, seed {}", rep.prime, seed);
        }
        None => {
            let _ = writeln!(s, "prime {}", rep.prime);
        }
    }
    for st in &rep.stages {
        let _ = writeln!(
            s,
            "  {:<24} {}  ({} checks)",
            st.name,
            if st.pass() { "pass" } else { "FAIL" },
            st.checks.len()
        );
        for c in &st.checks {
            if !c.pass {
                let _ = writeln!(s, "    {}: expected {}, got {}", c.name, c.expected, c.got);
            }
        }
    }
    if !rep.complete {
        let _ = writeln!(s, "  (aborted before the final stage)");
    }
    let _ = writeln!(s, "verdict: {}", if rep.verdict() { "pass" } else { "fail" });
    s
}

/// Renders a Betti table in the conventional layout: column = homological
/// index, row = (total degree) - (homological index).
fn betti_text(bt: &BettiTable) -> String {
    let totals = bt.totals();
    let ncols = totals.len();
    let mut grid: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (&(i, d), &c) in bt.entries() {
        let row = d.totweight() - i as i64;
        grid.entry(row).or_insert_with(|| vec![0; ncols])[i] += c;
    }
    let w = totals
        .iter()
        .map(|t| t.to_string().len())
        .max()
        .unwrap_or(1)
        .max(ncols.to_string().len())
        + 2;
    let label_w = grid
        .keys()
        .map(|r| r.to_string().len())
        .max()
        .unwrap_or(1)
        .max("total".len());

    let mut s = String::new();
    let _ = write!(s, "{:>label_w$} ", "");
    for i in 0..ncols {
        let _ = write!(s, "{i:>w$}");
    }
    s.push('\n');
    let _ = write!(s, "{:>label_w$}:", "total");
    for t in &totals {
        let _ = write!(s, "{t:>w$}");
    }
    s.push('\n');
    for (row, cells) in &grid {
        let _ = write!(s, "{row:>label_w$}:");
        for &c in cells {
            if c == 0 {
                let _ = write!(s, "{:>w$}", ".");
            } else {
                let _ = write!(s, "{c:>w$}");
            }
        }
        s.push('\n');
    }
    s
}
