//! Command-line front end: JSON in, JSON out, deterministic bytes.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decomp::{prepare, DecompMode};
use crate::fixture::sl5_example;
use crate::gkm::dual_membership;
use crate::json::{
    domain_hash, DualFnJson, FamilyJson, FracJson, GallerificationJson, GalleryJson, SequenceJson,
};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "gallerion",
    version,
    about = "Gallery combinatorics and fixed-point module calculus for Bott-Samelson varieties"
)]
struct Cli {
    /// Worker threads for parallel checks (fallback: GALLERION_THREADS).
    /// Output does not depend on this setting.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum ModeArg {
    /// Split along all maximal pairs.
    Maximal,
    /// Keep the span constraint on the first factor.
    Closed,
}

impl From<ModeArg> for DecompMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Maximal => DecompMode::Maximal,
            ModeArg::Closed => DecompMode::Closed,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate all galleries over a sequence.
    Galleries { input: Option<PathBuf> },
    /// Decide gallery type and print a witness.
    Gallerify { input: Option<PathBuf> },
    /// Enumerate the galleries satisfying a family's constraints.
    ConstrainedGalleries { input: Option<PathBuf> },
    /// Compute the decomposition data of a family.
    Decompose {
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
        input: Option<PathBuf>,
    },
    /// Test membership of a fraction-valued function in the dual module.
    DualCheck { input: Option<PathBuf> },
    /// Apply the twisted product to dual functions on the factors.
    TwistProduct {
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
        input: Option<PathBuf>,
    },
    /// Run the bundled example end to end and report.
    VerifyExample,
}

/// Runs the CLI against explicit streams. Exit codes: 0 success, 1 a
/// verification check failed, 2 invalid input.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not failures.
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("GALLERION_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let result = match threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, cli.pretty)),
            Err(e) => Err(Error::InvalidInput(e.to_string())),
        },
        _ => dispatch(&cli.command, cli.pretty),
    };
    match result {
        Ok((text, failed)) => {
            let _ = writeln!(out, "{text}");
            i32::from(failed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable output")
    } else {
        serde_json::to_string(value).expect("serializable output")
    }
}

#[derive(Serialize)]
struct GalleriesOut {
    galleries: Vec<GalleryJson>,
}

#[derive(Serialize)]
struct GallerifyOut {
    gallery_type: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<GallerificationJson>,
}

#[derive(Serialize)]
struct DecomposeOut {
    mode: String,
    f_pairs: Vec<(i64, i64)>,
    reduced: SequenceJson,
    gallerification: GallerificationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<Vec<usize>>,
    first_factor: FamilyJson,
    segments: Vec<FamilyJson>,
    first_domain_hash: String,
    segment_domain_hashes: Vec<String>,
    domain_hash: String,
}

#[derive(Serialize)]
struct DualCheckOut {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_subset: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_value: Option<FracJson>,
}

#[derive(serde::Deserialize)]
struct DualCheckIn {
    family: FamilyJson,
    alpha: DualFnJson,
}

#[derive(serde::Deserialize)]
struct TwistProductIn {
    family: FamilyJson,
    first: DualFnJson,
    segments: Vec<DualFnJson>,
}

#[derive(Serialize)]
struct CheckCount {
    matched: usize,
    total: usize,
}

#[derive(Serialize)]
struct ThetaOut {
    constrained: usize,
    first: usize,
    segments: Vec<usize>,
    round_trip_ok: bool,
}

#[derive(Serialize)]
struct VerifyOut {
    twisted_product: CheckCount,
    dual_membership: CheckCount,
    theta_bijection: ThetaOut,
    pass: bool,
}

fn dispatch(cmd: &Command, pretty: bool) -> Result<(String, bool)> {
    match cmd {
        Command::Galleries { input } => {
            let seq: SequenceJson = parse(&read_input(input)?)?;
            let s = seq.to_sequence()?;
            let galleries = s
                .enumerate_galleries()
                .iter()
                .map(GalleryJson::from_gallery)
                .collect();
            Ok((render(&GalleriesOut { galleries }, pretty), false))
        }
        Command::Gallerify { input } => {
            let seq: SequenceJson = parse(&read_input(input)?)?;
            let s = seq.to_sequence()?;
            let witness = s.gallerify().map(|g| {
                let rs = s.system();
                GallerificationJson {
                    x: rs.canonical_word(&g.x),
                    t: g.seq
                        .letters()
                        .iter()
                        .map(|w| rs.canonical_word(w))
                        .collect(),
                    gamma: g.gallery.bits().iter().map(|&b| u8::from(b)).collect(),
                }
            });
            let out = GallerifyOut {
                gallery_type: witness.is_some(),
                witness,
            };
            Ok((render(&out, pretty), false))
        }
        Command::ConstrainedGalleries { input } => {
            let family: FamilyJson = parse(&read_input(input)?)?;
            let cf = family.to_family()?;
            let galleries = cf
                .enumerate_constrained()
                .iter()
                .map(GalleryJson::from_gallery)
                .collect();
            Ok((render(&GalleriesOut { galleries }, pretty), false))
        }
        Command::Decompose { mode, input } => {
            let family: FamilyJson = parse(&read_input(input)?)?;
            let cf = family.to_family()?;
            let dd = prepare(&cf, (*mode).into())?;
            let rs = cf.seq().system();
            let gal = dd.gallerification();
            let out = DecomposeOut {
                mode: match mode {
                    ModeArg::Maximal => "maximal".into(),
                    ModeArg::Closed => "closed".into(),
                },
                f_pairs: dd.projection().f_pairs().to_vec(),
                reduced: SequenceJson::from_sequence(dd.projection().reduced().seq()),
                gallerification: GallerificationJson {
                    x: rs.canonical_word(&gal.x),
                    t: gal
                        .seq
                        .letters()
                        .iter()
                        .map(|w| rs.canonical_word(w))
                        .collect(),
                    gamma: gal.gallery.bits().iter().map(|&b| u8::from(b)).collect(),
                },
                target: dd.target().map(|w| rs.canonical_word(w)),
                first_factor: FamilyJson::from_family(dd.first_family()),
                segments: dd
                    .segment_families()
                    .iter()
                    .map(FamilyJson::from_family)
                    .collect(),
                first_domain_hash: domain_hash(dd.first_domain()),
                segment_domain_hashes: dd
                    .segment_domains()
                    .iter()
                    .map(|d| domain_hash(d))
                    .collect(),
                domain_hash: domain_hash(dd.domain()),
            };
            Ok((render(&out, pretty), false))
        }
        Command::DualCheck { input } => {
            let payload: DualCheckIn = parse(&read_input(input)?)?;
            let cf = payload.family.to_family()?;
            let rs = cf.seq().system().clone();
            let domain = Arc::new(cf.enumerate_constrained());
            let alpha = payload.alpha.to_function(domain, &rs)?;
            let m = dual_membership(&alpha, &cf)?;
            let member = m.member;
            let (witness_subset, witness_value) = match m.witness {
                Some((labels, value)) => (Some(labels), Some(FracJson::from_fraction(&value))),
                None => (None, None),
            };
            let out = DualCheckOut {
                member,
                witness_subset,
                witness_value,
            };
            Ok((render(&out, pretty), !member))
        }
        Command::TwistProduct { mode, input } => {
            let payload: TwistProductIn = parse(&read_input(input)?)?;
            let cf = payload.family.to_family()?;
            let rs = cf.seq().system().clone();
            let dd = prepare(&cf, (*mode).into())?;
            if payload.segments.len() != dd.segment_domains().len() {
                return Err(Error::DomainMismatch(format!(
                    "{} segment functions for {} projected pairs",
                    payload.segments.len(),
                    dd.segment_domains().len()
                )));
            }
            let alpha = payload.first.to_function(dd.first_domain().clone(), &rs)?;
            let alphas = payload
                .segments
                .iter()
                .zip(dd.segment_domains())
                .map(|(j, dom)| j.to_function(dom.clone(), &rs))
                .collect::<Result<Vec<_>>>()?;
            let product = dd.d_mu(&alpha, &alphas)?;
            Ok((render(&DualFnJson::from_function(&product), pretty), false))
        }
        Command::VerifyExample => verify_example(pretty),
    }
}

/// Runs the bundled example: the twisted product against the listed
/// values, the three dual memberships, and the assembling bijection.
fn verify_example(pretty: bool) -> Result<(String, bool)> {
    let fx = sl5_example();
    let dd = prepare(&fx.family, DecompMode::Closed)?;

    let product = dd.d_mu(&fx.b, std::slice::from_ref(&fx.c))?;
    let matched = product
        .values()
        .iter()
        .zip(fx.a.values())
        .filter(|(got, want)| got == want)
        .count();
    let twisted_product = CheckCount {
        matched,
        total: fx.a.values().len(),
    };

    let memberships = [
        dual_membership(&fx.b, &fx.b_family)?,
        dual_membership(&fx.c, &fx.c_family)?,
        dual_membership(&fx.a, &fx.family)?,
    ];
    let membership_count = CheckCount {
        matched: memberships.iter().filter(|m| m.member).count(),
        total: memberships.len(),
    };

    let pd = dd.projection();
    let mut round_trip_ok = true;
    for lam in dd.domain().iter() {
        let image = pd.project_fixed(lam)?;
        let segments: Vec<_> = pd
            .f_pairs()
            .iter()
            .map(|&(a, b)| lam.restrict(a, b))
            .collect();
        if &pd.theta(&image, &segments)? != lam {
            round_trip_ok = false;
        }
    }
    let seg_sizes: Vec<usize> = dd.segment_domains().iter().map(|d| d.len()).collect();
    let product_count: usize = dd.first_domain().len() * seg_sizes.iter().product::<usize>();
    let theta = ThetaOut {
        constrained: dd.domain().len(),
        first: dd.first_domain().len(),
        segments: seg_sizes,
        round_trip_ok: round_trip_ok && product_count == dd.domain().len(),
    };

    let pass = twisted_product.matched == twisted_product.total
        && membership_count.matched == membership_count.total
        && theta.round_trip_ok;

    let out = VerifyOut {
        twisted_product,
        dual_membership: membership_count,
        theta_bijection: theta,
        pass,
    };
    let text = if pretty {
        let mut t = String::new();
        t.push_str(&format!(
            "twisted-product   {}/{}\n",
            out.twisted_product.matched, out.twisted_product.total
        ));
        t.push_str(&format!(
            "dual-membership   {}/{}\n",
            out.dual_membership.matched, out.dual_membership.total
        ));
        t.push_str(&format!(
            "theta-bijection   {} = {} x {}{}\n",
            out.theta_bijection.constrained,
            out.theta_bijection.first,
            out.theta_bijection
                .segments
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" x "),
            if out.theta_bijection.round_trip_ok {
                ", round-trip ok"
            } else {
                ", round-trip FAILED"
            }
        ));
        t.push_str(&format!(
            "overall           {}",
            if out.pass { "pass" } else { "FAIL" }
        ));
        t
    } else {
        render(&out, false)
    };
    Ok((text, !out.pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_temp(name: &str, contents: &str) -> PathBuf {
        let path =
            std::env::temp_dir().join(format!("gallerion-test-{name}-{}", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn galleries_counts() {
        let p = write_temp("galleries", r#"{"system":"A2","letters":[[1],[2],[1]]}"#);
        let (code, out, _) = run_str(&["gallerion", "galleries", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["galleries"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn gallerify_witness() {
        let p = write_temp("gallerify", r#"{"system":"A2","letters":[[1,2,1]]}"#);
        let (code, out, _) = run_str(&["gallerion", "gallerify", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gallery_type"], true);
        assert_eq!(v["witness"]["x"], serde_json::json!([1]));
        assert_eq!(v["witness"]["t"], serde_json::json!([[2]]));
        assert_eq!(v["witness"]["gamma"], serde_json::json!([0]));
    }

    #[test]
    fn gallerify_reports_absence() {
        let p = write_temp(
            "no-witness",
            r#"{"system":"A3","letters":[[2,3,2],[1],[2],[3]]}"#,
        );
        let (code, out, _) = run_str(&["gallerion", "gallerify", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gallery_type"], false);
        assert!(v.get("witness").is_none());
    }

    #[test]
    fn malformed_input_is_exit_2() {
        let p = write_temp("bad", r#"{"system":"A2","letters":[[1,2,1]"#);
        let (code, _, err) = run_str(&["gallerion", "gallerify", p.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("line"));
        let p2 = write_temp("badsys", r#"{"system":"Q9","letters":[[1]]}"#);
        let (code2, _, err2) = run_str(&["gallerion", "galleries", p2.to_str().unwrap()]);
        assert_eq!(code2, 2);
        assert!(err2.contains("Q9"));
    }

    #[test]
    fn verify_example_passes_and_is_deterministic() {
        let (code, out, _) = run_str(&["gallerion", "verify-example"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["twisted_product"]["matched"], 25);
        assert_eq!(v["dual_membership"]["matched"], 3);
        assert_eq!(v["pass"], true);
        let (code2, out2, _) = run_str(&["gallerion", "verify-example"]);
        assert_eq!(code2, 0);
        assert_eq!(out, out2);
        let (code3, out3, _) = run_str(&["gallerion", "--threads", "3", "verify-example"]);
        assert_eq!(code3, 0);
        assert_eq!(out, out3);
    }
}
