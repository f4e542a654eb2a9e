use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gentle_core::blocks::{rho_blocks, BlockKind};
use gentle_core::cluster::{bangle, bangle_lamination, verify_bangle_equals_generic};
use gentle_core::io::{self, ComponentJson, ModuleFile};
use gentle_core::quiver::{jacobian_failure, GentleAlgebra};
use gentle_core::schemes::{self, ComponentLabel};
use gentle_core::surface::{build_qt, CurveSpec, Surface};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gentle", version, about = "Gentle algebras, module varieties and surface laminations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct Common {
    /// algebra file for check/components/smooth, triangulation file otherwise
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// write the result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Gentleness, Jacobian test and block census
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Irreducible components of mod(A, d)
    Components {
        #[command(flatten)]
        common: Common,
        /// dimension vector, comma separated
        #[arg(long)]
        dims: String,
        /// longest word tried when decomposing generic points
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
    },
    /// Is a module a smooth point of its module scheme
    Smooth {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: PathBuf,
    },
    /// Bangle function of a curve or of a lamination
    Bangle {
        #[command(flatten)]
        common: Common,
        /// curve as JSON, e.g. '{"loop": {"crossings": ["1", "2"]}}'
        #[arg(long, conflicts_with = "lamination")]
        curve: Option<String>,
        #[arg(long)]
        lamination: Option<PathBuf>,
        /// set all y-variables to 1
        #[arg(long)]
        y_one: bool,
    },
    /// Shear coordinates of a lamination
    Shear {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lamination: PathBuf,
    },
    /// Decorated component attached to a lamination
    Eta {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lamination: PathBuf,
    },
    /// Compare the bangle function with the generic dual CC function
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lamination: PathBuf,
    },
}

/// Text to print and the exit status of the verdict.
struct Outcome {
    text: String,
    verdict: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_algebra(path: &Path) -> Result<GentleAlgebra> {
    io::parse_algebra(&read(path)?).with_context(|| path.display().to_string())
}

fn load_surface(path: &Path) -> Result<Surface> {
    let spec = io::parse_triangulation(&read(path)?).with_context(|| path.display().to_string())?;
    Ok(build_qt(&spec)?)
}

fn load_lamination(s: &Surface, path: &Path) -> Result<gentle_core::surface::Lamination> {
    let entries = io::parse_lamination_file(&read(path)?).with_context(|| path.display().to_string())?;
    Ok(io::build_lamination(s, &entries)?)
}

/// Shear and bangle are defined curve by curve, so any multiset will do.
fn load_multicurve(s: &Surface, path: &Path) -> Result<gentle_core::surface::Lamination> {
    let entries = io::parse_lamination_file(&read(path)?).with_context(|| path.display().to_string())?;
    Ok(io::build_multicurve(s, &entries)?)
}

fn render(format: Format, human: String, value: serde_json::Value) -> String {
    match format {
        Format::Human => human,
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize"),
    }
}

fn vector(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn check(c: &Common) -> Result<Outcome> {
    let text = read(&c.input)?;
    let alg = match io::parse_algebra(&text) {
        Ok(a) => a,
        Err(gentle_core::Error::NotGentle(why)) => {
            let out = render(c.format, format!("not gentle: {why}"), json!({"gentle": false, "reason": why}));
            return Ok(Outcome { text: out, verdict: false });
        }
        Err(e) => return Err(anyhow!(e)).context(c.input.display().to_string()),
    };
    let blocks = rho_blocks(&alg)?;
    let mut sizes: Vec<usize> = blocks.iter().map(|b| b.kind.num_vertices()).collect();
    sizes.sort_by(|a, b| b.cmp(a));
    let kinds: Vec<String> = blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Linear(m) => format!("C{m}"),
            BlockKind::Cyclic(m) => format!("C~{m}"),
        })
        .collect();
    let failure = jacobian_failure(&alg);
    let human = match &failure {
        None => format!("gentle Jacobian; blocks: {}", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")),
        Some(why) => format!("gentle; not Jacobian ({why})"),
    };
    let value = json!({
        "gentle": true,
        "jacobian": failure.is_none(),
        "reason": failure,
        "blocks": sizes,
        "block_types": kinds,
    });
    Ok(Outcome { text: render(c.format, human, value), verdict: true })
}

fn label_text(l: &ComponentLabel) -> String {
    match l {
        ComponentLabel::Str(s) => format!("string {s}"),
        ComponentLabel::Band(b) => format!("band {b}"),
    }
}

fn components(c: &Common, dims: &str, max_len: usize) -> Result<Outcome> {
    let alg = load_algebra(&c.input)?;
    let d = io::parse_dims(dims)?;
    let jacobian = jacobian_failure(&alg).is_none();
    let zs = schemes::components(&alg, &d)?;
    let mut human = vec![format!("{} component(s), dim GL_d = {}", zs.len(), schemes::dim_gl(&d))];
    let mut values = Vec::new();
    for (k, z) in zs.iter().enumerate() {
        let dim = schemes::component_dim(&alg, z)?;
        let reduced = schemes::is_generically_reduced(&alg, z);
        let tau = if jacobian { Some(schemes::is_tau_reduced(&alg, z)?) } else { None };
        let dec = schemes::canonical_decomposition(&alg, z, max_len, c.seed).ok();
        let ceh = schemes::ceh_values(&alg, z, c.seed)?;
        let kind = match &dec {
            Some(d) if d.strings.is_empty() && !d.bands.is_empty() => "band",
            Some(d) if d.bands.is_empty() => "string",
            Some(_) => "mixed",
            None => "unknown",
        };
        let ranks: Vec<String> = (0..alg.num_arrows()).map(|a| format!("{}={}", alg.arrow_id(a), z.r[a])).collect();
        human.push(format!(
            "[{k}] ranks {}; dim {dim}; {kind}; generically {}reduced{}; ceh ({}, {}, {})",
            ranks.join(" "),
            if reduced { "" } else { "non-" },
            match tau {
                Some(true) => "; tau-reduced",
                Some(false) => "; not tau-reduced",
                None => "",
            },
            ceh.c,
            ceh.e,
            ceh.h
        ));
        if let Some(dec) = &dec {
            for l in &dec.labels {
                human.push(format!("    {}", label_text(l)));
            }
        }
        values.push(json!({
            "component": ComponentJson::new(&alg, z, None),
            "dim": dim,
            "kind": kind,
            "generically_reduced": reduced,
            "tau_reduced": tau,
            "ceh": ceh,
            "decomposition": dec.as_ref().map(|d| d.labels.iter().map(label_text).collect::<Vec<_>>()),
        }));
    }
    let value = json!({"d": d, "dim_gl": schemes::dim_gl(&d), "components": values});
    Ok(Outcome { text: render(c.format, human.join("\n"), value), verdict: true })
}

fn smooth(c: &Common, module: &Path) -> Result<Outcome> {
    let alg = load_algebra(&c.input)?;
    let m = ModuleFile::parse(&read(module)?)
        .and_then(|f| f.build(&alg))
        .with_context(|| module.display().to_string())?;
    let smooth = schemes::is_smooth_point(&alg, &m);
    let r = m.rank_function();
    let count = schemes::containing_components(&alg, &m.dims, &r)?;
    let human = if smooth {
        format!("smooth point (in {count} component(s))")
    } else {
        format!("singular point (in {count} component(s))")
    };
    let value = json!({"smooth": smooth, "components": count, "d": m.dims, "ranks": r});
    Ok(Outcome { text: render(c.format, human, value), verdict: smooth })
}

fn bangle_cmd(c: &Common, curve: Option<&str>, lamination: Option<&Path>, y_one: bool) -> Result<Outcome> {
    let s = load_surface(&c.input)?;
    let mut p = match (curve, lamination) {
        (Some(text), None) => {
            let spec: CurveSpec = serde_json::from_str(text).context("--curve")?;
            bangle(&s, &s.curve_from_spec(&spec)?)?
        }
        (None, Some(path)) => bangle_lamination(&s, &load_multicurve(&s, path)?)?,
        _ => bail!("give either --curve or --lamination"),
    };
    if y_one {
        p = p.at_y_one();
    }
    let value = json!({"terms": p.to_json(), "num_terms": p.num_terms()});
    Ok(Outcome { text: render(c.format, p.to_string(), value), verdict: true })
}

fn shear_cmd(c: &Common, lamination: &Path) -> Result<Outcome> {
    let s = load_surface(&c.input)?;
    let l = load_multicurve(&s, lamination)?;
    let v = s.shear_lamination(&l);
    Ok(Outcome { text: render(c.format, vector(&v), json!(v)), verdict: true })
}

fn eta_cmd(c: &Common, lamination: &Path) -> Result<Outcome> {
    let s = load_surface(&c.input)?;
    let l = load_lamination(&s, lamination)?;
    let z = s.eta(&l)?;
    let j = ComponentJson::new(&s.alg, &z.component, Some(z.v.clone()));
    let ranks: Vec<String> = j.ranks.iter().map(|(a, r)| format!("{a}={r}")).collect();
    let human = format!("d {:?}; ranks {}; decoration {:?}", j.d, ranks.join(" "), z.v);
    Ok(Outcome { text: render(c.format, human, serde_json::to_value(&j)?), verdict: true })
}

fn verify_cmd(c: &Common, lamination: &Path) -> Result<Outcome> {
    let s = load_surface(&c.input)?;
    let l = load_lamination(&s, lamination)?;
    let v = verify_bangle_equals_generic(&s, &l, c.seed)?;
    let human = match &v.difference {
        None => "EQUAL".to_string(),
        Some(d) => format!("DIFFERENT: {d}"),
    };
    Ok(Outcome { text: render(c.format, human, serde_json::to_value(&v)?), verdict: v.equal })
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let (out, common) = match &cli.command {
        Command::Check { common } => (check(common)?, common),
        Command::Components { common, dims, max_len } => (components(common, dims, *max_len as usize)?, common),
        Command::Smooth { common, module } => (smooth(common, module)?, common),
        Command::Bangle { common, curve, lamination, y_one } => {
            (bangle_cmd(common, curve.as_deref(), lamination.as_deref(), *y_one)?, common)
        }
        Command::Shear { common, lamination } => (shear_cmd(common, lamination)?, common),
        Command::Eta { common, lamination } => (eta_cmd(common, lamination)?, common),
        Command::Verify { common, lamination } => (verify_cmd(common, lamination)?, common),
    };
    Ok((out, common.output.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, path)) => {
            let mut text = out.text;
            text.push('\n');
            if let Some(p) = path {
                if let Err(e) = std::fs::write(&p, &text) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
