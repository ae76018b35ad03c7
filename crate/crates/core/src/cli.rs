//! The `lissajous` command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::Psl2Mat;
use crate::classify::{enumerate_labels, enumerate_p0, level_slope_of, radii_of, LevelSlope};
use crate::error::{Error, Result};
use crate::lissajous::{build_w_frieze, normalize, reduce_to_p0, TypeMN};
use crate::report::Report;
use crate::shapetrace::{sample_span, svg_halfplane, svg_shape, write_csv, DEFAULT_RATIO};
use crate::surd::{cf_expand, far_endpoint, matches_cluster_period};
use crate::syzygy::{omega, syzygy_sequence};
use crate::verify::{run_suite, Suite, VerifyOptions};
use crate::words::Slope;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_COLLISION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lissajous", version, about = "Classify Lissajous 3-braids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for a type given as `m,n`.
    Classify {
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: TypeMN,
        #[arg(long)]
        json: bool,
    },
    /// Full report for the type carrying a level and slope.
    FromLabel {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        slope: Slope,
        #[arg(long)]
        json: bool,
    },
    /// Far endpoint of the W axis and its continued fraction.
    Cf {
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: TypeMN,
        #[arg(long)]
        json: bool,
    },
    /// Syzygy sequence of the class of a type.
    Syzygy {
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: TypeMN,
        #[arg(long, default_value_t = 1)]
        periods: usize,
        /// insert a dot after every |Ω| letters
        #[arg(long)]
        group: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write an SVG picture.
    Plot {
        #[arg(long = "type", allow_hyphen_values = true)]
        ty: TypeMN,
        #[arg(long, value_enum, default_value_t = PlotKind::Shape)]
        kind: PlotKind,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RATIO)]
        ratio: f64,
        #[arg(long, default_value_t = 4000)]
        steps: usize,
        #[arg(long = "max-den", default_value_t = 5)]
        max_den: i64,
        /// also write the sampled curve as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Stream primitive types or labels as JSON lines.
    Enumerate {
        #[arg(long = "max-m", default_value_t = 20)]
        max_m: i64,
        /// enumerate labels with N ≤ max-level and p+q ≤ max-sum instead
        #[arg(long)]
        labels: bool,
        #[arg(long = "max-level", default_value_t = 3)]
        max_level: u32,
        #[arg(long = "max-sum", default_value_t = 30)]
        max_sum: i64,
    },
    /// Run a consistency suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long = "max-m")]
        max_m: Option<i64>,
        #[arg(long = "max-sum", default_value_t = 100)]
        max_sum: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// print failing cases only
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Shape,
    Halfplane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Epsilon,
    Collision,
    Bijection,
    Cf,
    Cluster,
    Syzygy,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Epsilon => Suite::Epsilon,
            SuiteArg::Collision => Suite::Collision,
            SuiteArg::Bijection => Suite::Bijection,
            SuiteArg::Cf => Suite::Cf,
            SuiteArg::Cluster => Suite::Cluster,
            SuiteArg::Syzygy => Suite::Syzygy,
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn bracketed(terms: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn emit_report(report: &Report, as_json: bool, out: &mut dyn Write) -> Result<()> {
    if as_json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Classify { ty, json } => match Report::for_type(ty) {
            Ok(report) => {
                emit_report(&report, json, out)?;
                Ok(EXIT_OK)
            }
            Err(Error::CollisionType { .. }) => {
                writeln!(out, "{}", json!({ "collision_free": false }))?;
                Ok(EXIT_COLLISION)
            }
            Err(e) => Err(e),
        },
        Command::FromLabel { level, slope, json } => {
            let report = Report::for_label(LevelSlope::new(level, slope)?)?;
            emit_report(&report, json, out)?;
            Ok(EXIT_OK)
        }
        Command::Cf { ty, json } => {
            let nt = normalize(ty)?;
            let w = build_w_frieze(&nt)?;
            let far = far_endpoint(&w.matrix())?;
            let cf = cf_expand(&far);
            let radii = radii_of(level_slope_of(reduce_to_p0(&nt)?)?)?;
            if json {
                let value = json!({
                    "far_endpoint": far,
                    "approx": far.approx(),
                    "cf": cf,
                    "radii": radii,
                    "matches_clusters": matches_cluster_period(&cf, &radii),
                });
                writeln!(out, "{value}")?;
            } else {
                writeln!(out, "far endpoint: {far}")?;
                writeln!(out, "approx: {}", far.approx())?;
                writeln!(out, "preperiod: {}", bracketed(&cf.preperiod))?;
                writeln!(out, "period: {}", bracketed(&cf.period))?;
            }
            Ok(EXIT_OK)
        }
        Command::Syzygy {
            ty,
            periods,
            group,
            json,
        } => {
            let p0 = reduce_to_p0(&normalize(ty)?)?;
            let ls = level_slope_of(p0)?;
            let om = omega(ls)?;
            let seq = syzygy_sequence(p0, periods)?;
            let shown = if group {
                seq.grouped(om.len()).trim_end_matches('.').to_string()
            } else {
                seq.to_string()
            };
            if json {
                let value = json!({
                    "p0": p0,
                    "omega": om,
                    "length": seq.len(),
                    "sequence": shown,
                });
                writeln!(out, "{value}")?;
            } else {
                writeln!(out, "{shown}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Plot {
            ty,
            kind,
            out: path,
            ratio,
            steps,
            max_den,
            csv,
        } => {
            let nt = normalize(ty)?;
            match kind {
                PlotKind::Shape => {
                    svg_shape(&nt, ratio, steps, &path)?;
                }
                PlotKind::Halfplane => {
                    let mat: Psl2Mat = build_w_frieze(&nt)?.matrix();
                    svg_halfplane(&mat, max_den, &path)?;
                }
            }
            if let Some(csv) = csv {
                write_csv(&sample_span(&nt, ratio, steps, 1.0)?, csv)?;
            }
            writeln!(out, "wrote {}", path.display())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            max_m,
            labels,
            max_level,
            max_sum,
        } => {
            if labels {
                for ls in enumerate_labels(max_level, max_sum) {
                    let t = crate::classify::type_of(ls)?;
                    writeln!(
                        out,
                        "{}",
                        json!({ "level": ls.level, "slope": ls.slope, "m": t.m, "n": t.n })
                    )?;
                }
            } else {
                for t in enumerate_p0(max_m) {
                    let ls = level_slope_of(t)?;
                    writeln!(
                        out,
                        "{}",
                        json!({ "m": t.m, "n": t.n, "level": ls.level, "slope": ls.slope })
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            max_m,
            max_sum,
            seed,
            quiet,
        } => {
            let outcome = run_suite(
                suite.into(),
                &VerifyOptions {
                    max_m,
                    max_sum,
                    seed,
                },
            );
            for case in &outcome.cases {
                if !quiet || !case.passed() {
                    writeln!(out, "{case}")?;
                }
            }
            writeln!(out, "{}", outcome.summary())?;
            Ok(if outcome.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["lissajous"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_codes() {
        let (code, out, _) = call(&["classify", "--type", "4,-5", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"friezeW\":\"dbdpqp\""));
        let (code, out, _) = call(&["classify", "--type", "-5,7", "--json"]);
        assert_eq!(code, 2);
        assert_eq!(out.trim(), "{\"collision_free\":false}");
        let (code, _, err) = call(&["classify", "--type", "3,2"]);
        assert_eq!(code, 1);
        assert!(err.contains("divisible by 3"), "{err}");
        let (code, _, _) = call(&["classify", "--type", "x"]);
        assert_eq!(code, 1);
        let (code, _, _) = call(&["bogus"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn from_label_and_syzygy() {
        let (code, out, _) = call(&["from-label", "--level", "1", "--slope", "2/3", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"input\":{\"m\":-11,\"n\":16}"));
        let (code, _, _) = call(&["from-label", "--level", "1", "--slope", "1/2"]);
        assert_eq!(code, 1);
        let (code, out, _) = call(&["syzygy", "--type", "-8,13", "--periods", "1", "--group"]);
        assert_eq!(code, 0);
        assert_eq!(
            out.trim(),
            "1231312.3123231.2312123.1231312.3123231.2312123"
        );
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = call(&["verify", "--suite", "bijection", "--max-m", "20"]);
        assert_eq!(code, 0);
        assert!(out.trim_end().ends_with("cases pass"));
    }
}
