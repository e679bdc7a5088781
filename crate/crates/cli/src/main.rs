//! `exotic4` — build, verify, and export the fiber-sum manifold
//! families and their building blocks.
//!
//! Exit codes: 0 all claims verified, 1 undecided (caps exhausted),
//! 2 usage error, 3 a claim was refuted.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use exotic4_core::blocks::lemma_certificates;
use exotic4_core::certificate::verify_certificate;
use exotic4_core::constructions::{
    verify_pi1, verify_simply_connected, Pi1Status, Pi1Verdict, VerifyCaps, DEFAULT_COSET_CAP,
};
use exotic4_core::grammar::{print_presentation, print_word};
use exotic4_core::surface::curve_words;
use exotic4_core::tietze::TietzeBudget;

use exotic4_cli::families::{build_family, build_from_recipe, Built, ExpectedClaim, Params};
use exotic4_cli::manifest::{block_manifest, manifold_manifest, Manifest};

#[derive(Parser)]
#[command(name = "exotic4", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance and emit its JSON manifest.
    Build(BuildArgs),
    /// Verify the fundamental-group claim of one or more instances.
    Verify(VerifyArgs),
    /// Export a presentation (fp-text) or full manifest (json).
    Export(ExportArgs),
    /// Dump the vanishing-cycle curve words for parameters (k, n).
    Curves(CurvesArgs),
}

#[derive(Args)]
struct FamilyParams {
    /// Blow-up count parameter n.
    #[arg(long)]
    n: Option<usize>,
    /// Genus parameter k.
    #[arg(long)]
    k: Option<usize>,
    /// Surgery numerator m (Xm, block:lutB).
    #[arg(long)]
    m: Option<i64>,
    /// Genus g (block:hyperelliptic).
    #[arg(long)]
    g: Option<usize>,
    /// Surgery coefficients p (repeat per index).
    #[arg(long = "p", action = clap::ArgAction::Append)]
    p: Vec<i64>,
    /// Surgery coefficients q (repeat per index).
    #[arg(long = "q", action = clap::ArgAction::Append)]
    q: Vec<i64>,
}

impl FamilyParams {
    fn params(&self) -> Params {
        Params {
            n: self.n,
            k: self.k,
            m: self.m,
            g: self.g,
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }
}

#[derive(Args)]
struct CapArgs {
    /// Coset cap for enumeration (env EXOTIC4_COSET_CAP overrides the
    /// default; this flag overrides both).
    #[arg(long)]
    coset_cap: Option<usize>,
    /// Relator-length budget for Tietze simplification.
    #[arg(long)]
    tietze_budget: Option<usize>,
}

impl CapArgs {
    fn caps(&self) -> VerifyCaps {
        let env_cap = std::env::var("EXOTIC4_COSET_CAP")
            .ok()
            .and_then(|v| v.parse().ok());
        VerifyCaps {
            coset_cap: self.coset_cap.or(env_cap).unwrap_or(DEFAULT_COSET_CAP),
            tietze: self
                .tietze_budget
                .map(TietzeBudget::with_relator_len)
                .unwrap_or_default(),
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    /// Family: X, Xm, X0, Xfree, Xcyclic, or block:{korkmaz, gurtas,
    /// hyperelliptic, lutA, lutB}.
    family: String,
    #[command(flatten)]
    params: FamilyParams,
    #[command(flatten)]
    caps: CapArgs,
    /// Output format: json (manifest) or fp-text (presentation only).
    #[arg(long, default_value = "json")]
    format: String,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family name; omit when verifying a stored manifest.
    family: Option<String>,
    /// Verify a stored manifest: rebuild from its recipe and re-check.
    #[arg(long)]
    manifest: Option<std::path::PathBuf>,
    /// n values; repeat the flag to verify a grid.
    #[arg(long = "n", action = clap::ArgAction::Append)]
    n: Vec<usize>,
    /// k values; repeat the flag to verify a grid.
    #[arg(long = "k", action = clap::ArgAction::Append)]
    k: Vec<usize>,
    /// m values (Xm); repeat the flag to verify several.
    #[arg(long = "m", action = clap::ArgAction::Append)]
    m: Vec<i64>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long = "p", action = clap::ArgAction::Append)]
    p: Vec<i64>,
    #[arg(long = "q", action = clap::ArgAction::Append)]
    q: Vec<i64>,
    #[command(flatten)]
    caps: CapArgs,
    /// Verify independent instances in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct ExportArgs {
    /// Family name; omit when exporting a stored manifest.
    family: Option<String>,
    /// Export from a stored manifest instead of rebuilding.
    #[arg(long)]
    manifest: Option<std::path::PathBuf>,
    #[command(flatten)]
    params: FamilyParams,
    /// Output format: fp-text or json.
    #[arg(long, default_value = "fp-text")]
    format: String,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Export(args) => cmd_export(args),
        Command::Curves(args) => cmd_curves(args),
    }
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

/// Builds the object and (for manifold families) runs verification so
/// the manifest carries a verdict and, when trivial, the homeo type.
fn build_with_verdict(
    family: &str,
    params: &Params,
    caps: &VerifyCaps,
) -> Result<(Manifest, Option<(ExpectedClaim, Pi1Verdict)>)> {
    let t0 = Instant::now();
    let (recipe, built) = build_family(family, params)?;
    match built {
        Built::Manifold {
            manifold,
            keep,
            claim,
        } => {
            let verdict = match claim {
                ExpectedClaim::HomologyOnly => {
                    verify_pi1(&manifold.identified(keep), &no_enumeration_caps(caps))
                }
                _ => verify_simply_connected(&manifold, caps),
            };
            let m = manifold_manifest(
                recipe,
                &manifold,
                keep,
                Some(&verdict),
                t0.elapsed().as_millis(),
            );
            Ok((m, Some((claim, verdict))))
        }
        Built::Block(block) => {
            let m = block_manifest(recipe, &block, t0.elapsed().as_millis());
            Ok((m, None))
        }
    }
}

/// For homology-only families the enumerator must not run at all: their
/// groups are infinite and enumeration over the trivial subgroup would
/// only burn the cap.
fn no_enumeration_caps(caps: &VerifyCaps) -> VerifyCaps {
    VerifyCaps {
        coset_cap: 1,
        ..*caps
    }
}

fn cmd_build(args: BuildArgs) -> Result<u8> {
    let (manifest, _) = build_with_verdict(&args.family, &args.params.params(), &args.caps.caps())?;
    let content = match args.format.as_str() {
        "json" => manifest.to_json(),
        "fp-text" => format!("{}\n", manifest.presentation),
        other => return Err(anyhow!("unknown format `{other}` (json, fp-text)")),
    };
    emit(args.out.as_deref(), &content)?;
    Ok(0)
}

struct InstanceReport {
    heading: String,
    lines: Vec<String>,
    exit: u8,
}

fn claim_exit(claim: ExpectedClaim, verdict: &Pi1Verdict) -> (u8, String) {
    match claim {
        ExpectedClaim::Trivial => match verdict.status {
            Pi1Status::Trivial => (
                0,
                format!("Trivial; cosets={}", verdict.coset_index.unwrap_or(1)),
            ),
            Pi1Status::Undecided => (1, "Undecided (cap exhausted)".to_string()),
            _ => (
                3,
                format!(
                    "refuted: verdict {} with H1 = {}",
                    verdict.status, verdict.h1
                ),
            ),
        },
        ExpectedClaim::InfiniteCyclic => {
            if verdict.is_infinite_cyclic() {
                (0, "InfiniteCyclic (Z)".to_string())
            } else if verdict.h1.is_free_of_rank(1) {
                (
                    1,
                    format!(
                        "Undecided: H1 = Z but the group structure is unconfirmed \
                         (simplified to {} generators, {} relators)",
                        verdict.simplified_gens, verdict.simplified_relators
                    ),
                )
            } else {
                (3, format!("refuted: H1 = {}", verdict.h1))
            }
        }
        ExpectedClaim::FreeOfRank(r) => {
            if verdict.is_free_of_rank(r) {
                (0, format!("FreeOfRank({r})"))
            } else if verdict.h1.is_free_of_rank(r) {
                (1, format!("Undecided: H1 = Z^{r} but Tietze did not close"))
            } else {
                (3, format!("refuted: H1 = {}", verdict.h1))
            }
        }
        ExpectedClaim::HomologyOnly => (0, format!("AbelianEvidence: H1 = {}", verdict.h1)),
    }
}

fn verify_one(family: &str, params: &Params, caps: &VerifyCaps) -> Result<InstanceReport> {
    let (recipe, built) = build_family(family, params)?;
    match built {
        Built::Manifold {
            manifold,
            keep,
            claim,
        } => {
            let verdict = match claim {
                ExpectedClaim::HomologyOnly => {
                    verify_pi1(&manifold.identified(keep), &no_enumeration_caps(caps))
                }
                _ => verify_simply_connected(&manifold, caps),
            };
            let (exit, headline) = claim_exit(claim, &verdict);
            let mut lines = vec![
                format!("H1 = {}", verdict.h1),
                format!(
                    "tietze: {} generators, {} relators",
                    verdict.simplified_gens, verdict.simplified_relators
                ),
            ];
            if let Some(n) = verdict.cosets_defined {
                lines.push(format!(
                    "cosets: index {:?}, defined {}",
                    verdict.coset_index, n
                ));
            }
            for t in &verdict.tietze_trace {
                lines.push(format!("  {t}"));
            }
            Ok(InstanceReport {
                heading: format!("{}: {}", manifold.label, headline),
                lines,
                exit,
            })
        }
        Built::Block(block) => {
            let h1 = exotic4_core::snf::abelianize(&block.complement_presentation);
            let mut lines = vec![format!("H1 = {h1}")];
            let mut exit = 0;
            if matches!(recipe.family.as_str(), "block:korkmaz" | "block:gurtas") {
                let k = recipe.k.expect("fibration block recipe carries k");
                let n = recipe.n.unwrap_or(1);
                for (name, target, cert) in lemma_certificates(k, n) {
                    let ok = verify_certificate(&block.complement_presentation, &target, &cert)
                        .map_err(|e| anyhow!("{e}"))?;
                    lines.push(format!(
                        "certificate {name}: {}",
                        if ok { "verified" } else { "REFUTED" }
                    ));
                    if !ok {
                        exit = 3;
                    }
                }
            }
            Ok(InstanceReport {
                heading: format!(
                    "{}: {}",
                    block.label,
                    if exit == 0 { "ok" } else { "refuted" }
                ),
                lines,
                exit,
            })
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let caps = args.caps.caps();

    if let Some(path) = &args.manifest {
        let src =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let stored = Manifest::from_json(&src)?;
        let (_, rebuilt) = build_from_recipe(&stored.recipe)?;
        let rebuilt_text = match &rebuilt {
            Built::Manifold { manifold, keep, .. } => {
                print_presentation(&manifold.identified(*keep))
            }
            Built::Block(b) => print_presentation(&b.complement_presentation),
        };
        if rebuilt_text != stored.presentation {
            println!(
                "{}: REFUTED — stored presentation does not match its recipe",
                stored.label
            );
            return Ok(3);
        }
        println!("{}: manifest round-trip ok; re-verifying", stored.label);
        let params = Params {
            n: stored.recipe.n,
            k: stored.recipe.k,
            m: stored.recipe.m,
            g: stored.recipe.g,
            p: stored.recipe.p.clone().unwrap_or_default(),
            q: stored.recipe.q.clone().unwrap_or_default(),
        };
        let report = verify_one(&stored.recipe.family, &params, &caps)?;
        print_report(&report);
        return Ok(report.exit);
    }

    let family = args
        .family
        .clone()
        .ok_or_else(|| anyhow!("a family name or --manifest is required"))?;

    // Instance grid: the cartesian product of the provided value lists.
    let ns: Vec<Option<usize>> = if args.n.is_empty() {
        vec![None]
    } else {
        args.n.iter().copied().map(Some).collect()
    };
    let ks: Vec<Option<usize>> = if args.k.is_empty() {
        vec![None]
    } else {
        args.k.iter().copied().map(Some).collect()
    };
    let ms: Vec<Option<i64>> = if args.m.is_empty() {
        vec![None]
    } else {
        args.m.iter().copied().map(Some).collect()
    };
    let mut instances = Vec::new();
    for &n in &ns {
        for &k in &ks {
            for &m in &ms {
                instances.push(Params {
                    n,
                    k,
                    m,
                    g: args.g,
                    p: args.p.clone(),
                    q: args.q.clone(),
                });
            }
        }
    }

    let jobs = args.jobs.max(1);
    let reports: Vec<Result<InstanceReport>> = if jobs == 1 || instances.len() == 1 {
        instances
            .iter()
            .map(|p| verify_one(&family, p, &caps))
            .collect()
    } else {
        let mut out: Vec<Option<Result<InstanceReport>>> =
            (0..instances.len()).map(|_| None).collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots = std::sync::Mutex::new(&mut out);
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(instances.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= instances.len() {
                        break;
                    }
                    let r = verify_one(&family, &instances[i], &caps);
                    slots.lock().unwrap()[i] = Some(r);
                });
            }
        });
        out.into_iter()
            .map(|r| r.expect("worker filled slot"))
            .collect()
    };

    let mut exit = 0u8;
    for report in reports {
        let report = report?;
        print_report(&report);
        exit = exit.max(report.exit);
    }
    Ok(exit)
}

fn print_report(report: &InstanceReport) {
    println!("{}", report.heading);
    for line in &report.lines {
        println!("  {line}");
    }
}

fn cmd_export(args: ExportArgs) -> Result<u8> {
    let manifest = if let Some(path) = &args.manifest {
        let src =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Manifest::from_json(&src)?
    } else {
        let family = args
            .family
            .clone()
            .ok_or_else(|| anyhow!("a family name or --manifest is required"))?;
        let t0 = Instant::now();
        let (recipe, built) = build_family(&family, &args.params.params())?;
        match built {
            Built::Manifold { manifold, keep, .. } => {
                manifold_manifest(recipe, &manifold, keep, None, t0.elapsed().as_millis())
            }
            Built::Block(block) => block_manifest(recipe, &block, t0.elapsed().as_millis()),
        }
    };
    let content = match args.format.as_str() {
        "fp-text" => format!("{}\n", manifest.presentation),
        "json" => manifest.to_json(),
        other => return Err(anyhow!("unknown format `{other}` (fp-text, json)")),
    };
    emit(args.out.as_deref(), &content)?;
    Ok(0)
}

fn cmd_curves(args: CurvesArgs) -> Result<u8> {
    let catalog = curve_words(args.k, args.n).map_err(|e| anyhow!("{e}"))?;
    let names = catalog.ambient_names();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    match args.format.as_str() {
        "text" => {
            for (label, word) in catalog.entries() {
                println!("{label} = {}", print_word(word, &refs));
            }
        }
        "json" => {
            let map: serde_json::Map<String, serde_json::Value> = catalog
                .entries()
                .map(|(l, w)| (l.clone(), serde_json::Value::String(print_word(w, &refs))))
                .collect();
            println!("{}", serde_json::to_string_pretty(&map)?);
        }
        other => return Err(anyhow!("unknown format `{other}` (text, json)")),
    }
    Ok(0)
}
