use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use windex_core::catalog::{catalog, label};
use windex_core::enumerate::{enumerate_wis, poset_of, HasseDiagram, SystemClass};
use windex_core::fibration::{transport, transport_combined, transport_transfer, FamilyMap};
use windex_core::hull::{multiplicative_hull, DEFAULT_PRODUCT_BOUND};
use windex_core::json::{
    family_from_json, parse_group, rep_to_json, sieve_to_json, transfer_from_json, transfer_to_json,
    wis_from_json, wis_from_json_over,
};
use windex_core::reps::named_rep;
use windex_core::sieve::{enumerate_sieves, fiber_from_sieve, fiber_shape, scope_of};
use windex_core::transfer::f_r;
use windex_core::windex::{default_bound, validate_wic};
use windex_core::{BackendSpec, Error, OrbitalPresentation, WeakIndexingSystem};

#[derive(Parser)]
#[command(name = "windex", version, about = "Weak indexing systems over finite orbital presentations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    /// Cyclic group of order p^n
    Cpn,
    /// The one-object category
    Point,
    /// One-object groupoid BG
    Bg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate a class of systems and emit its Hasse diagram
    Enumerate {
        #[arg(long, value_enum, default_value = "cpn")]
        backend: Backend,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Group order for the BG backend
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// ae_unital, almost_unital, unital or indexing
        #[arg(long, default_value = "ae_unital")]
        class: String,
        /// Output path; format follows the extension unless --format is given
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check a system against the axioms
    Validate {
        file: PathBuf,
        #[arg(long, env = "WINDEX_BOUND")]
        bound: Option<u64>,
    },
    /// Join of two systems over the same presentation
    Join { a: PathBuf, b: PathBuf },
    /// Unital systems in the fiber of (fR, ∇) over a transfer system and family
    Fiber {
        #[arg(long = "R")]
        r: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Cocartesian transport of a system
    Transport {
        /// color, unit, fold, fr or combined
        #[arg(long)]
        map: String,
        /// Target family (or transfer system for fr and combined)
        #[arg(long)]
        to: PathBuf,
        /// Target family for the combined map
        #[arg(long)]
        family: Option<PathBuf>,
        file: PathBuf,
    },
    /// Fixed-point data and arity support of a named representation
    Rep {
        #[arg(long)]
        name: String,
        #[arg(long)]
        group: String,
    },
    /// Multiplicative hull of a one-colour system over a group
    Hull {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRODUCT_BOUND)]
        product_bound: u64,
    },
}

enum Failure {
    Invalid(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidSpec(_) | Error::TooLarge(_) | Error::MixedPresentation => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Out = Result<(), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_wis(path: &Path) -> Result<WeakIndexingSystem, Failure> {
    Ok(wis_from_json(&read_json(path)?)?)
}

// Write errors (a closed pipe, usually) are not worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json prints") + "\n"));
}

fn system_json(w: &WeakIndexingSystem) -> Value {
    windex_core::json::wis_to_json(w)
}

fn annotations(w: &WeakIndexingSystem) -> Value {
    let p = w.presentation();
    let f = w.families();
    let mut v = json!({
        "classification": w.classify(),
        "c": f.c.ids(p),
        "upsilon": f.upsilon.ids(p),
        "nabla": f.nabla.ids(p),
        "epsilon": f.epsilon.ids(p),
    });
    if let Ok(r) = f_r(w) {
        v["fR"] = transfer_to_json(&r)["pairs"].clone();
    }
    v
}

fn enumerate(backend: Backend, p: u64, n: u32, order: usize, class: &str, out: Option<PathBuf>, format: Option<Format>) -> Out {
    let spec = match backend {
        Backend::Cpn => BackendSpec::Chain { p, n },
        Backend::Point => BackendSpec::Point,
        Backend::Bg => BackendSpec::Bg { order },
    };
    let pres = OrbitalPresentation::build(&spec)?;
    let class: SystemClass = class.parse()?;
    let systems = enumerate_wis(&pres, class)?;
    let labels = label(&systems, &catalog(&pres)?);
    let mut diagram = HasseDiagram::new(&poset_of(&systems)?, labels);
    for (node, w) in diagram.nodes.iter_mut().zip(&systems) {
        if let Value::Object(m) = annotations(w) {
            node.annotations = m;
        }
        node.annotations.insert("system".into(), system_json(w));
    }
    let format = format.unwrap_or(match out.as_ref().and_then(|o| o.extension()).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        _ => Format::Dot,
    });
    let text = match format {
        Format::Dot => diagram.to_dot(),
        Format::Json => serde_json::to_string_pretty(&json!({
            "backend": spec,
            "class": format!("{class:?}"),
            "count": systems.len(),
            "diagram": diagram.to_json(),
        }))
        .expect("json prints"),
    };
    match out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            eprintln!("{} systems, {} covers -> {}", systems.len(), diagram.edges.len(), path.display());
        }
        None => emit(&text),
    }
    Ok(())
}

fn validate(path: &Path, bound: Option<u64>) -> Out {
    let w = read_wis(path)?;
    let report = validate_wic(&w, bound.unwrap_or_else(default_bound));
    let ok = report.axioms_pass();
    print(&json!({ "valid": ok, "checks": report.checks, "classification": w.classify() }));
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid("axiom check failed".into()))
    }
}

fn fiber(r: &Path, family: &Path) -> Out {
    let rv = read_json(r)?;
    let pres = windex_core::json::presentation_from_value(rv.get("backend").unwrap_or(&Value::Null))?;
    let r = transfer_from_json(&pres, &rv)?;
    let f = family_from_json(&pres, &read_json(family)?)?;
    let shape = fiber_shape(&r, f)?;
    let mut members = Vec::new();
    if r.domain().is_subset(f) {
        for s in enumerate_sieves(&r, scope_of(&r, f))? {
            let w = fiber_from_sieve(&r, f, &s)?;
            members.push(json!({ "sieve": sieve_to_json(&s), "system": system_json(&w) }));
        }
    }
    print(&json!({ "shape": shape, "count": members.len(), "members": members }));
    Ok(())
}

fn transport_cmd(map: &str, to: &Path, family: Option<&Path>, file: &Path) -> Out {
    let w = read_wis(file)?;
    let pres: &Arc<OrbitalPresentation> = w.presentation();
    let target = read_json(to)?;
    let moved = match map {
        "fr" | "fR" => transport_transfer(&w, &transfer_from_json(pres, &target)?)?,
        "combined" => {
            let f = family.ok_or_else(|| Failure::Input("--family is required for the combined map".into()))?;
            let f = family_from_json(pres, &read_json(f)?)?;
            transport_combined(&w, &transfer_from_json(pres, &target)?, f)?
        }
        other => {
            let m: FamilyMap = other.parse()?;
            transport(m, &w, family_from_json(pres, &target)?)?
        }
    };
    print(&system_json(&moved));
    Ok(())
}

fn rep(name: &str, group: &str) -> Out {
    let pres = OrbitalPresentation::build(&parse_group(group)?)?;
    let v = named_rep(&pres, name)?;
    let support = v.arity_support()?;
    print(&json!({
        "rep": rep_to_json(&v),
        "arity_support": system_json(&support),
        "annotations": annotations(&support),
    }));
    Ok(())
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Enumerate { backend, p, n, order, class, out, format } => enumerate(backend, p, n, order, &class, out, format),
        Cmd::Validate { file, bound } => validate(&file, bound),
        Cmd::Join { a, b } => {
            let a = read_wis(&a)?;
            let bv = read_json(&b)?;
            let b = wis_from_json_over(a.presentation(), &bv)?;
            print(&system_json(&a.join(&b)?));
            Ok(())
        }
        Cmd::Fiber { r, family } => fiber(&r, &family),
        Cmd::Transport { map, to, family, file } => transport_cmd(&map, &to, family.as_deref(), &file),
        Cmd::Rep { name, group } => rep(&name, &group),
        Cmd::Hull { file, product_bound } => {
            let w = read_wis(&file)?;
            print(&system_json(&multiplicative_hull(&w, product_bound)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("windex: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("windex: {m}");
            ExitCode::from(2)
        }
    }
}
