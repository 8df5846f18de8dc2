//! Command-line front end: every pipeline behind a stable, grep-able
//! textual surface. `run` is a pure-by-value entry point (argv in, report
//! and exit code out) so integration tests can drive it in-process; the
//! binary only forwards `std::env::args` and prints.

use crate::cartan::{cartan, CartanValue};
use crate::certificates::{
    check_certificate, check_eisenstein_tuple, check_falbel_tetrahedron,
    check_octahedron_cube_values, derived_constants, lower_bound_certificate, read_certificate,
    theorem_bounds, verify_cartan_table, verify_symmetry_lemmas, write_certificate,
};
use crate::cochain::{cup_sq_full_oracle, cup_sq_reduced};
use crate::exact::RealValue;
use crate::hermitian::{
    convert_model, heisenberg_coords, parse_group_file, parse_point_file, BoundaryPoint,
    GeometryError, HeisenbergPoint, HermitianModel,
};
use crate::search::{search, SearchOptions};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use std::fmt::Write as _;
use std::path::PathBuf;

/// Outcome of one invocation: exit code 0 (success), 1 (a verification
/// report failed), or 2 (usage or input error); the full textual report;
/// and the serialized certificate when a search produced one.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub exit_code: i32,
    pub report: String,
    pub certificate: Option<String>,
}

impl CommandResult {
    fn success(report: String) -> Self {
        CommandResult {
            exit_code: 0,
            report,
            certificate: None,
        }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        let mut report = msg.into();
        if !report.ends_with('\n') {
            report.push('\n');
        }
        CommandResult {
            exit_code: 2,
            report: format!("error: {report}"),
            certificate: None,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Ball,
    Siegel,
}

impl From<ModelArg> for HermitianModel {
    fn from(m: ModelArg) -> HermitianModel {
        match m {
            ModelArg::Ball => HermitianModel::Ball,
            ModelArg::Siegel => HermitianModel::Siegel,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Siegel,
    Heis,
}

#[derive(Parser, Debug)]
#[command(
    name = "chplane",
    version,
    about = "Exact boundary geometry of the complex hyperbolic plane"
)]
struct Cli {
    /// Accepted for interface stability; the pipelines are single-threaded.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan angular invariant of a boundary triple
    Cartan {
        /// Point literals: `ball: s,s,s`, `siegel: s,s,s`, `heis: zr, zi ; t`,
        /// `heis: inf`, or bare coordinates `s,s,s` read in --model.
        p: String,
        q: String,
        r: String,
        /// Model for bare coordinate literals
        #[arg(long, value_enum, default_value_t = ModelArg::Ball)]
        model: ModelArg,
    },
    /// Alternating cup square of the doubled invariant on five points
    Cupsq {
        p0: String,
        p1: String,
        p2: String,
        p3: String,
        p4: String,
        /// Evaluate by the full 120-term alternation instead of the
        /// 3-term reduced formula
        #[arg(long)]
        oracle: bool,
        /// Model for bare coordinate literals
        #[arg(long, value_enum, default_value_t = ModelArg::Ball)]
        model: ModelArg,
    },
    /// Run the whole verification battery and print one report per section
    VerifyPaper,
    /// Derived constants for a surface with Euler characteristic chi
    Constants {
        #[arg(long)]
        chi: i64,
    },
    /// Search a point/group configuration for a certified lower bound
    Search {
        /// Point file: one `ball:`/`siegel:`/`heis:` literal per line
        #[arg(long)]
        points: PathBuf,
        /// Group file: one `holo:`/`anti:` matrix per line
        #[arg(long)]
        group: PathBuf,
        /// Cap on enumerated 5-tuples
        #[arg(long, default_value_t = SearchOptions::default().max_tuples)]
        max_tuples: usize,
        /// Word-length cap when closing the generators
        #[arg(long, default_value_t = SearchOptions::default().word_length)]
        word_length: usize,
        /// Admit antiholomorphic generators for face identification
        #[arg(long)]
        include_anti: bool,
        /// Write the certificate to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file independently
    CheckCert { file: PathBuf },
    /// Convert a point literal to another coordinate system
    Convert {
        #[arg(long, value_enum)]
        to: TargetArg,
        point: String,
        /// Model for bare coordinate literals
        #[arg(long, value_enum, default_value_t = ModelArg::Ball)]
        model: ModelArg,
    },
}

/// Parses argv and executes one subcommand. Never prints or exits; the
/// caller decides what to do with the report and the code.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let mut report = e.to_string();
            if !report.ends_with('\n') {
                report.push('\n');
            }
            return CommandResult {
                exit_code: code,
                report,
                certificate: None,
            };
        }
    };
    match cli.command {
        Command::Cartan { p, q, r, model } => cmd_cartan(&p, &q, &r, model.into()),
        Command::Cupsq {
            p0,
            p1,
            p2,
            p3,
            p4,
            oracle,
            model,
        } => cmd_cupsq([&p0, &p1, &p2, &p3, &p4], oracle, model.into()),
        Command::VerifyPaper => cmd_verify(),
        Command::Constants { chi } => cmd_constants(chi),
        Command::Search {
            points,
            group,
            max_tuples,
            word_length,
            include_anti,
            out,
        } => cmd_search(&points, &group, max_tuples, word_length, include_anti, out),
        Command::CheckCert { file } => cmd_check_cert(&file),
        Command::Convert { to, point, model } => cmd_convert(to, &point, model.into()),
    }
}

/// A point argument is either a tagged file-format literal or bare
/// coordinates `s,s,s` read in the default model.
fn parse_point_arg(
    text: &str,
    default_model: HermitianModel,
) -> Result<BoundaryPoint, GeometryError> {
    let line = if text.contains(':') {
        text.trim().to_string()
    } else {
        format!("{}: {}", default_model.name(), text.trim())
    };
    let points = parse_point_file(&line)?;
    points.into_iter().next().ok_or(GeometryError::EmptyInput)
}

fn parse_point_args<const N: usize>(
    texts: [&str; N],
    default_model: HermitianModel,
) -> Result<[BoundaryPoint; N], CommandResult> {
    let mut parsed = Vec::with_capacity(N);
    for (i, text) in texts.iter().enumerate() {
        match parse_point_arg(text, default_model) {
            Ok(p) => parsed.push(p),
            Err(e) => return Err(CommandResult::input_error(format!("point {}: {e}", i + 1))),
        }
    }
    Ok(std::array::from_fn(|i| parsed[i].clone()))
}

fn cmd_cartan(p: &str, q: &str, r: &str, model: HermitianModel) -> CommandResult {
    let [p, q, r] = match parse_point_args([p, q, r], model) {
        Ok(pts) => pts,
        Err(res) => return res,
    };
    match cartan(&p, &q, &r) {
        Ok(CartanValue::Angle(angle)) => {
            CommandResult::success(format!("{}\n", RealValue::from(&angle)))
        }
        Ok(CartanValue::Degenerate) => {
            CommandResult::success("degenerate (c_phi = 0)\n".to_string())
        }
        Err(e) => CommandResult::input_error(e.to_string()),
    }
}

fn cmd_cupsq(texts: [&str; 5], oracle: bool, model: HermitianModel) -> CommandResult {
    let points = match parse_point_args(texts, model) {
        Ok(pts) => pts,
        Err(res) => return res,
    };
    let value = if oracle {
        cup_sq_full_oracle(&points)
    } else {
        cup_sq_reduced(&points)
    };
    match value {
        Ok(v) => CommandResult::success(format!("{v}\n")),
        Err(e) => CommandResult::input_error(e.to_string()),
    }
}

fn cmd_verify() -> CommandResult {
    let mut out = String::new();
    let mut all_pass = true;

    for report in [verify_cartan_table(), verify_symmetry_lemmas()] {
        all_pass &= report.passed();
        let _ = writeln!(out, "{report}");
    }

    let cert = lower_bound_certificate();
    let check = check_certificate(&cert);
    all_pass &= check.passed();
    out.push_str("== certified lower bound ==\n");
    let _ = writeln!(out, "bound: {}", RealValue::exact(cert.bound.clone(), 2));
    let lambda: Vec<String> = cert.lambda.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "lambda: {}", lambda.join(", "));
    let (lower, upper) = theorem_bounds();
    let _ = writeln!(
        out,
        "bracket: {lower} <= sup norm of the cup square <= {upper}"
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "{check}");

    for report in [
        check_falbel_tetrahedron(),
        check_octahedron_cube_values(),
        check_eisenstein_tuple(),
    ] {
        all_pass &= report.passed();
        let _ = writeln!(out, "{report}");
    }

    out.push_str(
        "note: the simplicial-volume coefficient is fixed at 9/pi^2 (giving the\n\
         note: upper bound 24*chi); the alternative normalization 9/(4*pi^2) seen\n\
         note: in one statement of the bound is inconsistent with the identity\n\
         note: volume = norm * (omega-norm) and is documented here, not used.\n",
    );

    CommandResult {
        exit_code: if all_pass { 0 } else { 1 },
        report: out,
        certificate: None,
    }
}

fn cmd_constants(chi: i64) -> CommandResult {
    let c = match derived_constants(chi) {
        Ok(c) => c,
        Err(e) => return CommandResult::input_error(e.to_string()),
    };
    let mut out = String::new();
    let _ = writeln!(out, "chi: {}", c.chi);
    let _ = writeln!(out, "volume: {}", c.volume);
    let _ = writeln!(
        out,
        "omega-norm bracket: [{}, {}]",
        c.omega_norm.0, c.omega_norm.1
    );
    let _ = writeln!(
        out,
        "simplicial-volume bracket: [{}, {}]",
        c.simplicial_volume.0, c.simplicial_volume.1
    );
    let _ = writeln!(out, "flat-bundle euler bound: {}", c.milnor_wood);
    let _ = writeln!(out, "cp2 volume: {}", c.cp2_volume);
    let _ = writeln!(out, "cp2 chi: {}", c.cp2_chi);
    CommandResult::success(out)
}

fn cmd_search(
    points_path: &PathBuf,
    group_path: &PathBuf,
    max_tuples: usize,
    word_length: usize,
    include_anti: bool,
    out_path: Option<PathBuf>,
) -> CommandResult {
    let points_text = match std::fs::read_to_string(points_path) {
        Ok(t) => t,
        Err(e) => return CommandResult::input_error(format!("{}: {e}", points_path.display())),
    };
    let points = match parse_point_file(&points_text) {
        Ok(p) => p,
        Err(e) => return CommandResult::input_error(format!("{}: {e}", points_path.display())),
    };
    let model = match points.first() {
        Some(p) => p.model(),
        None => return CommandResult::input_error(format!("{}: no points", points_path.display())),
    };
    let group_text = match std::fs::read_to_string(group_path) {
        Ok(t) => t,
        Err(e) => return CommandResult::input_error(format!("{}: {e}", group_path.display())),
    };
    let group = match parse_group_file(&group_text, model) {
        Ok(g) => g,
        Err(e) => return CommandResult::input_error(format!("{}: {e}", group_path.display())),
    };

    let opts = SearchOptions {
        max_tuples,
        word_length,
        include_antiholomorphic: include_anti,
    };
    let (cert, stats) = match search(&points, &group, &opts) {
        Ok(r) => r,
        Err(e) => return CommandResult::input_error(e.to_string()),
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "points: {}, generators: {}, closure: {}",
        points.len(),
        group.len(),
        stats.closure_size
    );
    let _ = writeln!(
        out,
        "tuples: {} enumerated, {} dropped as inexact, {} in certificate",
        stats.tuples_enumerated,
        stats.tuples_inexact_dropped,
        cert.tuples.len()
    );
    let _ = writeln!(
        out,
        "orbits: {} free, {} forced zero; kernel dimension {}",
        stats.free_orbits, stats.forced_zero_orbits, stats.kernel_dimension
    );
    let _ = writeln!(out, "bound: {}", RealValue::exact(cert.bound.clone(), 2));
    let lambda: Vec<String> = cert.lambda.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "lambda: {}", lambda.join(", "));

    let text = write_certificate(&cert);
    if let Some(path) = &out_path {
        if let Err(e) = std::fs::write(path, &text) {
            return CommandResult::input_error(format!("{}: {e}", path.display()));
        }
        let _ = writeln!(out, "certificate written to {}", path.display());
    }

    CommandResult {
        exit_code: 0,
        report: out,
        certificate: Some(text),
    }
}

fn cmd_check_cert(path: &PathBuf) -> CommandResult {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return CommandResult::input_error(format!("{}: {e}", path.display())),
    };
    let cert = match read_certificate(&text) {
        Ok(c) => c,
        Err(e) => return CommandResult::input_error(format!("{}: {e}", path.display())),
    };
    let report = check_certificate(&cert);
    CommandResult {
        exit_code: if report.passed() { 0 } else { 1 },
        report: format!("{report}"),
        certificate: None,
    }
}

fn format_complex64(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { "-" } else { "+" };
    format!("{:.12}{sign}{:.12}i", c.re, c.im.abs())
}

fn cmd_convert(target: TargetArg, text: &str, model: HermitianModel) -> CommandResult {
    let point = match parse_point_arg(text, model) {
        Ok(p) => p,
        Err(e) => return CommandResult::input_error(e.to_string()),
    };
    let siegel = convert_model(&point, HermitianModel::Siegel);
    match target {
        TargetArg::Siegel => {
            if let Some(entries) = siegel.rep().exact_entries() {
                CommandResult::success(format!(
                    "siegel: {}, {}, {}\n",
                    entries[0], entries[1], entries[2]
                ))
            } else {
                let v = siegel.rep().to_complex64();
                CommandResult::success(format!(
                    "siegel: {}, {}, {} (inexact)\n",
                    format_complex64(v[0]),
                    format_complex64(v[1]),
                    format_complex64(v[2])
                ))
            }
        }
        TargetArg::Heis => {
            if siegel.is_exact() {
                match heisenberg_coords(&siegel) {
                    Ok(HeisenbergPoint::Infinity) => {
                        CommandResult::success("heis: inf\n".to_string())
                    }
                    Ok(HeisenbergPoint::Finite { zeta, t }) => {
                        CommandResult::success(format!("heis: {}, {} ; {}\n", zeta.re, zeta.im, t))
                    }
                    Err(e) => CommandResult::input_error(e.to_string()),
                }
            } else {
                let v = siegel.rep().to_complex64();
                if v[2].norm() <= 1e-12 * (v[0].norm() + v[1].norm() + v[2].norm()) {
                    return CommandResult::success("heis: inf (inexact)\n".to_string());
                }
                let zeta = v[1] / v[2];
                let t = 2.0 * (v[0] / v[2]).im;
                CommandResult::success(format!(
                    "heis: {:.12}, {:.12} ; {:.12} (inexact)\n",
                    zeta.re, zeta.im, t
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(std::iter::once("chplane").chain(args.iter().copied()))
    }

    #[test]
    fn cartan_prints_exact_angles() {
        let res = run_args(&["cartan", "ball: 1,0,1", "ball: i,0,1", "ball: 0,1,1"]);
        assert_eq!(res.exit_code, 0);
        assert_eq!(res.report, "1/4*pi\n");

        // Bare coordinates read in --model (ball is the default).
        let res = run_args(&["cartan", "1,0,1", "i,0,1", "0,1,1"]);
        assert_eq!(res.report, "1/4*pi\n");

        let res = run_args(&["cartan", "ball: 0,1,1", "ball: i,0,1", "ball: 1,0,1"]);
        assert_eq!(res.report, "-1/4*pi\n");
    }

    #[test]
    fn cartan_degenerate_and_errors() {
        let res = run_args(&["cartan", "ball: 1,0,1", "ball: 1,0,1", "ball: 0,1,1"]);
        assert_eq!(res.exit_code, 0);
        assert_eq!(res.report, "degenerate (c_phi = 0)\n");

        // Malformed literal: exit 2 with a position-annotated message.
        let res = run_args(&["cartan", "ball: 1,0", "ball: i,0,1", "ball: 0,1,1"]);
        assert_eq!(res.exit_code, 2);
        assert!(res.report.contains("point 1"), "{}", res.report);

        // Not null: exit 2.
        let res = run_args(&["cartan", "ball: 1,0,2", "ball: i,0,1", "ball: 0,1,1"]);
        assert_eq!(res.exit_code, 2);
        assert!(res.report.contains("null"), "{}", res.report);

        // Mixed models: exit 2.
        let res = run_args(&["cartan", "ball: 1,0,1", "siegel: 1,0,0", "ball: 0,1,1"]);
        assert_eq!(res.exit_code, 2);
    }

    #[test]
    fn cupsq_reduced_and_oracle() {
        let tuple = [
            "ball: 1,0,1",
            "ball: i,0,1",
            "ball: 0,1,1",
            "ball: 0,i,1",
            "ball: 0,-i,1",
        ];
        let mut args = vec!["cupsq"];
        args.extend_from_slice(&tuple);
        let res = run_args(&args);
        assert_eq!(res.exit_code, 0);
        assert_eq!(res.report, "1/6*pi^2\n");

        let mut args = vec!["cupsq"];
        args.extend_from_slice(&tuple);
        args.push("--oracle");
        let res = run_args(&args);
        assert_eq!(res.report, "1/6*pi^2\n");

        let second = [
            "ball: 1,0,1",
            "ball: i,0,1",
            "ball: 0,1,1",
            "ball: 0,i,1",
            "ball: 1/2+1/2i,1/2+1/2i,1",
        ];
        let mut args = vec!["cupsq"];
        args.extend_from_slice(&second);
        let res = run_args(&args);
        assert_eq!(res.report, "-1/4*pi^2\n");
    }

    #[test]
    fn verify_paper_passes_and_names_the_bound() {
        let res = run_args(&["verify-paper"]);
        assert_eq!(res.exit_code, 0, "{}", res.report);
        assert!(res.report.contains("bound: 2/9*pi^2"), "{}", res.report);
        assert!(
            res.report.contains("== angular invariant table =="),
            "{}",
            res.report
        );
        assert!(
            res.report.contains("== symmetry lemmas =="),
            "{}",
            res.report
        );
        assert!(res.report.contains("note:"), "{}", res.report);
        assert!(!res.report.contains("FAIL"), "{}", res.report);
        // Stable output across runs.
        assert_eq!(run_args(&["verify-paper"]).report, res.report);
    }

    #[test]
    fn constants_report_and_input_error() {
        let res = run_args(&["constants", "--chi", "1"]);
        assert_eq!(res.exit_code, 0);
        assert!(res.report.contains("volume: 8/3*pi^2"), "{}", res.report);
        assert!(
            res.report.contains("simplicial-volume bracket: [16/3, 24]"),
            "{}",
            res.report
        );
        assert!(
            res.report.contains("flat-bundle euler bound: 3/2"),
            "{}",
            res.report
        );
        assert!(res.report.contains("cp2 volume: 8*pi^2"), "{}", res.report);

        let res = run_args(&["constants", "--chi", "0"]);
        assert_eq!(res.exit_code, 2);
        assert!(res.report.contains("Euler"), "{}", res.report);
    }

    #[test]
    fn convert_covers_both_targets() {
        // Exact Siegel point to Heisenberg coordinates and back.
        let res = run_args(&["convert", "--to", "heis", "siegel: 1,0,0"]);
        assert_eq!(res.exit_code, 0);
        assert_eq!(res.report, "heis: inf\n");

        let res = run_args(&["convert", "--to", "heis", "heis: 1/2, 0 ; 3"]);
        assert_eq!(res.report, "heis: 1/2, 0 ; 3\n");

        let res = run_args(&["convert", "--to", "siegel", "heis: 0, 0 ; 1"]);
        assert_eq!(res.report, "siegel: 1/2i, 0, 1\n");

        // Ball to Siegel crosses the Cayley intertwiner: inexact, flagged.
        let res = run_args(&["convert", "--to", "siegel", "ball: 1,0,1"]);
        assert_eq!(res.exit_code, 0);
        assert!(res.report.contains("(inexact)"), "{}", res.report);
        assert!(
            res.report.starts_with("siegel: 1.414213562373"),
            "{}",
            res.report
        );

        let res = run_args(&["convert", "--to", "heis", "ball: 0,1,1"]);
        assert_eq!(res.exit_code, 0);
        assert!(res.report.contains("(inexact)"), "{}", res.report);
    }

    #[test]
    fn usage_errors_and_help() {
        let res = run_args(&["cartan", "ball: 1,0,1"]);
        assert_eq!(res.exit_code, 2);

        let res = run_args(&["no-such-command"]);
        assert_eq!(res.exit_code, 2);

        let res = run_args(&["--help"]);
        assert_eq!(res.exit_code, 0);
        assert!(res.report.contains("verify-paper"), "{}", res.report);
    }

    #[test]
    fn search_and_check_cert_round_trip_through_files() {
        let dir = std::env::temp_dir().join(format!("chplane-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let points = dir.join("points.txt");
        let group = dir.join("group.txt");
        let cert = dir.join("cert.txt");
        std::fs::write(
            &points,
            "ball: 1, 0, 1\nball: i, 0, 1\nball: 0, 1, 1\nball: 0, i, 1\n\
             ball: 0, -i, 1\nball: 1/2+1/2i, 1/2+1/2i, 1\n",
        )
        .unwrap();
        std::fs::write(
            &group,
            "holo: [[1,0,0],[0,-1,0],[0,0,1]]\nholo: [[-i,0,0],[0,1,0],[0,0,1]]\n\
             holo: [[1,0,0],[0,i,0],[0,0,1]]\nholo: [[0,1,0],[1,0,0],[0,0,1]]\n\
             holo: [[-1+i,0,1],[0,-i,0],[i,0,1-i]]\n",
        )
        .unwrap();

        let res = run_args(&[
            "search",
            "--points",
            points.to_str().unwrap(),
            "--group",
            group.to_str().unwrap(),
            "--out",
            cert.to_str().unwrap(),
        ]);
        assert_eq!(res.exit_code, 0, "{}", res.report);
        assert!(res.report.contains("bound: 2/9*pi^2"), "{}", res.report);
        let text = res.certificate.expect("search returns the certificate");
        assert_eq!(std::fs::read_to_string(&cert).unwrap(), text);

        let res = run_args(&["check-cert", cert.to_str().unwrap()]);
        assert_eq!(res.exit_code, 0, "{}", res.report);
        assert!(res.report.contains("result: PASS"), "{}", res.report);

        // A tampered file still parses but fails the check with exit 1.
        let tampered = text.replace("bound: 2/9 *pi^2", "bound: 1/3 *pi^2");
        assert_ne!(tampered, text);
        std::fs::write(&cert, tampered).unwrap();
        let res = run_args(&["check-cert", cert.to_str().unwrap()]);
        assert_eq!(res.exit_code, 1, "{}", res.report);

        // A malformed file is an input error: exit 2 with a line number.
        std::fs::write(&cert, "certificate v1\nmodel: klein\n").unwrap();
        let res = run_args(&["check-cert", cert.to_str().unwrap()]);
        assert_eq!(res.exit_code, 2);
        assert!(res.report.contains("line 2"), "{}", res.report);

        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn search_reports_missing_files_as_input_errors() {
        let res = run_args(&[
            "search",
            "--points",
            "/nonexistent/points.txt",
            "--group",
            "/nonexistent/group.txt",
        ]);
        assert_eq!(res.exit_code, 2);
    }
}
