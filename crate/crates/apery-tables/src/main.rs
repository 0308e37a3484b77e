//! Batch front door: builds tables, runs the verification suites, emits the
//! irrationality certificate and continued-fraction traces.
//!
//! Exit codes: 0 pass, 1 mathematical check failed, 2 config/parse error,
//! 3 insufficient precision.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use apery_tables::asymptotics::{
    apery_diagonal_check, check_limit_eigen, check_transfer_on_table, empirical_rate,
    irrationality_certificate, transfer_matrix, QSqrt2,
};
use apery_tables::ball::BallReal;
use apery_tables::contfrac::{bridge_identity, convergents, first_column_forms, omega_tail};
use apery_tables::convergence::{
    check_delta_closed_forms, check_delta_identities, check_telescoping, zeta3_cross_checked,
    zeta3_enclosure,
};
use apery_tables::error::Error;
use apery_tables::integrality::{verify_integrality, IntegralityMode};
use apery_tables::poly::{
    format_rat, parse_pair_file, parse_rat, preset, search_pairs, verify_conditions, PolyPair,
    Rat, DEFAULT_SEARCH_CAP,
};
use apery_tables::report::{eps_csv, table_csv, EpsRow, Report, Status};
use apery_tables::table::{build, BoundarySpec, TableMode};

#[derive(Parser)]
#[command(name = "apery-tables", version, about = "Exact Apéry-table toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Omit the timestamp for byte-identical reruns
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Streaming,
}

impl Mode {
    fn table_mode(self) -> TableMode {
        match self {
            Mode::Full => TableMode::Full,
            Mode::Streaming => TableMode::TwoRowStreaming,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the structural conditions on a polynomial pair
    CheckPair {
        #[arg(long, default_value = "zeta3")]
        pair: String,
    },
    /// Build the tables and export them
    Build {
        #[arg(long, default_value = "zeta3")]
        pair: String,
        #[arg(long, default_value_t = 10)]
        size: u32,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Run the full verification suite (recurrences, integrality,
    /// cross-differences, enclosure)
    Verify {
        #[arg(long, default_value = "zeta3")]
        pair: String,
        #[arg(long, default_value_t = 30)]
        size: u32,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Emit the irrationality certificate for zeta(3)
    Certify {
        #[arg(long, default_value_t = 50)]
        size: u32,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Transfer matrices, eigen-data and empirical rates
    Asymptotics {
        #[arg(long, default_value_t = 30)]
        size: u32,
        #[arg(long, default_value_t = 40)]
        digits: u32,
    },
    /// Continued-fraction convergents, tails and the bridge identity
    Cfrac {
        /// Evaluation point of the continued fraction (rational, "num/den")
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 60)]
        depth: usize,
        #[arg(long, default_value_t = 40)]
        digits: u32,
        /// Check the bridge identity at this row instead of plain convergents
        #[arg(long)]
        bridge: bool,
        #[arg(long, default_value_t = 3)]
        i: u32,
    },
    /// Exhaustive search for admissible pairs in a coefficient box
    Search {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 2)]
        height: u32,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u128,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Domain(_) | Error::NonHomogeneous { .. } => 2,
        Error::InsufficientPrecision { .. } => 3,
        _ => 1,
    }
}

fn load_pair(spec: &str) -> Result<PolyPair, Error> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        return parse_pair_file(&text);
    }
    preset(spec).ok_or_else(|| Error::Parse(format!("unknown pair {spec:?}")))
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Error> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    };
    write_out(cli, &text)
}

fn write_out(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::CheckPair { pair } => cmd_check_pair(cli, pair),
        Cmd::Build { pair, size, mode } => cmd_build(cli, pair, *size, *mode),
        Cmd::Verify { pair, size, mode } => cmd_verify(cli, pair, *size, *mode),
        Cmd::Certify { size, digits } => cmd_certify(cli, *size, *digits),
        Cmd::Asymptotics { size, digits } => cmd_asymptotics(cli, *size, *digits),
        Cmd::Cfrac {
            x,
            depth,
            digits,
            bridge,
            i,
        } => cmd_cfrac(cli, x, *depth, *digits, *bridge, *i),
        Cmd::Search {
            degree,
            height,
            cap,
        } => cmd_search(cli, *degree, *height, *cap),
    }
}

fn cmd_check_pair(cli: &Cli, pair_spec: &str) -> Result<ExitCode, Error> {
    let pair = load_pair(pair_spec)?;
    let cond = verify_conditions(&pair, 10);
    let mut report = Report::new(
        serde_json::json!({"cmd": "check-pair", "pair": pair.name}),
        !cli.no_timestamp,
    );
    report.push("cond1 splitting identity", pass_fail(cond.cond1), format!("{}", cond.cond1));
    report.push("cond2 shift identity", pass_fail(cond.cond2), format!("{}", cond.cond2));
    report.push(
        "cond3 cubic boundary",
        Status::Info,
        format!("{} (informational: empirical integrality applies when false)", cond.cond3),
    );
    report.push("cond4 positivity", Status::Info, format!("{:?}", cond.cond4));
    report.finish();
    emit(cli, &report)?;
    Ok(if cond.admissible() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_build(cli: &Cli, pair_spec: &str, size: u32, mode: Mode) -> Result<ExitCode, Error> {
    if size < 1 {
        return Err(Error::Domain("--size must be at least 1".into()));
    }
    let pair = load_pair(pair_spec)?;
    let q = build(&pair, &BoundarySpec::Unit, size, size, mode.table_mode())?;
    let p = build(&pair, &BoundarySpec::Series, size, size, mode.table_mode())?;
    if cli.format == Format::Csv {
        let mut text = String::from("# unit boundary\n");
        text.push_str(&table_csv(&q));
        text.push_str("# series boundary\n");
        text.push_str(&table_csv(&p));
        write_out(cli, &text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut report = Report::new(
        serde_json::json!({"cmd": "build", "pair": pair.name, "size": size}),
        !cli.no_timestamp,
    );
    report.push(
        "tables built",
        Status::Pass,
        format!(
            "{0}x{0}; q diag ends {1}; p diag ends {2}",
            size,
            format_rat(q.diag(size)?),
            format_rat(p.diag(size)?)
        ),
    );
    report.finish();
    emit(cli, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, pair_spec: &str, size: u32, mode: Mode) -> Result<ExitCode, Error> {
    if size < 2 {
        return Err(Error::Domain("--size must be at least 2".into()));
    }
    let pair = load_pair(pair_spec)?;
    let mut report = Report::new(
        serde_json::json!({"cmd": "verify", "pair": pair.name, "size": size}),
        !cli.no_timestamp,
    );

    let cond = verify_conditions(&pair, 10);
    report.push("structural conditions", pass_fail(cond.admissible()), format!("{cond:?}"));

    let q = build(&pair, &BoundarySpec::Unit, size, size, mode.table_mode())?;
    let p = build(&pair, &BoundarySpec::Series, size, size, mode.table_mode())?;
    report.push("row/column recurrences", pass_fail(q.verify_consistency() && p.verify_consistency()), "exact");

    let int_mode = if cond.cond3 {
        IntegralityMode::Strict
    } else {
        IntegralityMode::Empirical
    };
    let ints = verify_integrality(&q, &p, size, int_mode)?;
    report.push(
        "integrality",
        pass_fail(ints.pass),
        format!(
            "{:?}; max denominator {}; first failure {:?}",
            int_mode, ints.max_denominator, ints.first_failure
        ),
    );

    if mode == Mode::Full {
        check_delta_identities(&pair, &p, &q, size - 1)?;
        report.push("cross-difference identities", Status::Pass, "exact");
        check_telescoping(&p, &q, size - 1)?;
        report.push("ratio telescoping", Status::Pass, "exact");
    }

    if pair.name == "zeta3" {
        if mode == Mode::Full {
            check_delta_closed_forms(&p, &q, size - 1)?;
            report.push("delta closed forms", Status::Pass, "j^-3 / i^-3 exact");
        }
        let enc = zeta3_enclosure(&q, &p, size)?;
        let oracle = zeta3_cross_checked(&enc, 40)?;
        report.push(
            "zeta(3) enclosure",
            Status::Pass,
            format!(
                "width {} at N = {size}; oracle mid {}",
                format_rat(&enc.width()),
                oracle.mid_decimal()
            ),
        );
        first_column_forms(&p, &q, size)?;
        report.push("first-column closed forms", Status::Pass, "exact");
        apery_diagonal_check(&q, size - 1)?;
        apery_diagonal_check(&p, size - 1)?;
        report.push("diagonal three-term recurrence", Status::Pass, "exact");
    }

    report.finish();
    emit(cli, &report)?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_certify(cli: &Cli, size: u32, digits: Option<u32>) -> Result<ExitCode, Error> {
    if size < 5 {
        return Err(Error::Domain("--size must be at least 5 for the certificate".into()));
    }
    if let Some(d) = digits {
        if d < 10 {
            return Err(Error::Domain("--digits must be at least 10".into()));
        }
    }
    let cert = irrationality_certificate(size, digits)?;
    if cli.format == Format::Csv {
        let rows: Vec<EpsRow> = cert
            .rows
            .iter()
            .map(|r| EpsRow {
                n: r.n,
                q: Rat::from_integer(r.b.clone()),
                p: Rat::from_integer(r.a.clone()),
                eps: r.eps.clone(),
                root: r.eps_root.clone(),
            })
            .collect();
        write_out(cli, &eps_csv(&rows))?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut report = Report::new(
        serde_json::json!({"cmd": "certify", "size": size, "digits": cert.digits}),
        !cli.no_timestamp,
    );
    for r in &cert.rows {
        report.push(
            &format!("n = {}", r.n),
            Status::Info,
            format!(
                "a = {}, b = {}, |a - b zeta(3)| mid {}, rad {}, (1/n)log mid {}",
                r.a,
                r.b,
                r.scaled.abs().mid_decimal(),
                r.scaled.rad_decimal(),
                r.log_scaled_over_n.mid_decimal()
            ),
        );
    }
    report.push("all linear forms nonzero", pass_fail(cert.all_nonzero), "ball excludes 0");
    report.push(
        "|eps| strictly decreasing",
        pass_fail(cert.eps_strictly_decreasing),
        "certified by balls",
    );
    report.push(
        "scaled forms below 1 (n >= 5)",
        pass_fail(cert.scaled_below_one),
        "certified by balls",
    );
    report.push(
        "scaled forms strictly decreasing (n >= 5)",
        Status::Info,
        format!(
            "{} (lcm jumps at prime powers break monotonicity)",
            cert.scaled_strictly_decreasing
        ),
    );
    report.push(
        "decay constant",
        Status::Info,
        format!(
            "(1/n)log|d_n^3 eps| = {} vs 3 + log(17 - 12 sqrt 2) = {}; |diff| = {}",
            cert.rows.last().map(|r| r.log_scaled_over_n.mid_decimal()).unwrap_or_default(),
            cert.target_log.mid_decimal(),
            format_rat(&cert.final_log_deviation)
        ),
    );
    report.finish();
    emit(cli, &report)?;
    Ok(if cert.all_nonzero && cert.scaled_below_one {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_asymptotics(cli: &Cli, size: u32, digits: u32) -> Result<ExitCode, Error> {
    if size < 6 {
        return Err(Error::Domain("--size must be at least 6".into()));
    }
    let pair = preset("zeta3").expect("preset exists");
    let q = build(&pair, &BoundarySpec::Unit, size, size + 1, TableMode::TwoRowStreaming)?;
    let mut report = Report::new(
        serde_json::json!({"cmd": "asymptotics", "size": size, "digits": digits}),
        !cli.no_timestamp,
    );

    let dets_ok = (1..=200u32).all(|n| {
        let n_i = n as i64;
        transfer_matrix(n).det()
            == Rat::new((n_i.pow(3)).into(), ((n_i + 1).pow(3)).into())
    });
    report.push("det A_n = n^3/(n+1)^3 (n <= 200)", pass_fail(dets_ok), "exact");

    check_transfer_on_table(&q, size - 1)?;
    report.push("transfer matrices map table vectors", Status::Pass, "exact");
    report.push("A e = lambda e over Q(sqrt 2)", pass_fail(check_limit_eigen()), "exact");

    let series: Vec<Rat> = (0..=size).map(|n| q.diag(n).unwrap().clone()).collect();
    let rate = empirical_rate(&series, &QSqrt2::from_ints(17, 12), digits)?;
    report.push(
        "q diagonal growth",
        Status::Info,
        format!(
            "final ratio {} vs 17 + 12 sqrt 2; relative deviation {}",
            BallReal::from_rational(&rate.ratios.last().unwrap().1, 12).mid_decimal(),
            BallReal::from_rational(&rate.final_ratio_deviation.unwrap(), 12).mid_decimal()
        ),
    );

    report.finish();
    emit(cli, &report)?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_cfrac(
    cli: &Cli,
    x_text: &str,
    depth: usize,
    digits: u32,
    bridge: bool,
    i: u32,
) -> Result<ExitCode, Error> {
    if depth < 2 {
        return Err(Error::Domain("--depth must be at least 2".into()));
    }
    if digits < 10 {
        return Err(Error::Domain("--digits must be at least 10".into()));
    }
    let mut report = Report::new(
        serde_json::json!({"cmd": "cfrac", "x": x_text, "depth": depth, "bridge": bridge, "i": i}),
        !cli.no_timestamp,
    );
    if bridge {
        let residual = bridge_identity(i, depth, digits)?;
        let shallow = bridge_identity(i, depth / 2, digits)?;
        report.push(
            "bridge identity residual",
            Status::Info,
            format!(
                "row {i}, depth {depth}: |value - zeta(3)| mid {}; half depth {}",
                residual.mid_decimal(),
                shallow.mid_decimal()
            ),
        );
        let omega = omega_tail(i, depth, digits)?;
        report.push(
            "omega tail",
            Status::Info,
            format!(
                "mid {}, heuristic radius {}",
                omega.value.mid_decimal(),
                omega.value.rad_decimal()
            ),
        );
        report.finish();
        emit(cli, &report)?;
        return Ok(ExitCode::SUCCESS);
    }

    let x = parse_rat(x_text)?;
    // the Hurwitz oracle needs x + 1 > 0
    let shifted = &x + Rat::from_integer(1.into());
    if shifted <= Rat::from_integer(0.into()) {
        return Err(Error::Domain(format!("x + 1 must be positive, got x = {x_text}")));
    }
    let convs = convergents(&x, depth)?;
    let oracle = apery_tables::refvalues::hurwitz_zeta3(&shifted, digits)?;
    if cli.format == Format::Csv {
        write_out(cli, &apery_tables::report::cf_csv(&convs, &oracle))?;
        return Ok(ExitCode::SUCCESS);
    }
    let last = convs.last().expect("depth >= 2");
    let residual = oracle.add_rat(&-last.value()).abs();
    report.push(
        "continued fraction",
        Status::Info,
        format!(
            "x = {}, depth {depth}: value mid {}, residual vs zeta(3, x+1) mid {}",
            x_text,
            BallReal::from_rational(&last.value(), digits).mid_decimal(),
            residual.mid_decimal()
        ),
    );
    report.finish();
    emit(cli, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(cli: &Cli, degree: u32, height: u32, cap: u128) -> Result<ExitCode, Error> {
    if degree < 1 || height < 1 {
        return Err(Error::Domain("--degree and --height must be at least 1".into()));
    }
    let found = search_pairs(degree, height, cap)?;
    let mut report = Report::new(
        serde_json::json!({"cmd": "search", "degree": degree, "height": height}),
        !cli.no_timestamp,
    );
    let nontrivial = found.iter().filter(|f| f.nontrivial).count();
    report.push(
        "search space",
        Status::Info,
        format!("{} admissible pairs, {} nontrivial", found.len(), nontrivial),
    );
    for f in &found {
        report.push(
            &f.pair.name,
            Status::Info,
            format!("nontrivial: {}", f.nontrivial),
        );
    }
    report.finish();
    emit(cli, &report)?;
    Ok(ExitCode::SUCCESS)
}
