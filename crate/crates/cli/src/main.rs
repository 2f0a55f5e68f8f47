//! `lodi`: query and verify the derived categories of `A_L` and `D_L`.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 2 on bad input, 3 when two independent computations disagree or a
//! verification check fails.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use lodi_core::config::RunConfig;
use lodi_core::export;
use lodi_core::literal::{format_component, format_dobj, format_obj, parse_component, parse_obj};
use lodi_core::model::{HomRules, Model};
use lodi_core::objects::IndObj;
use lodi_core::oracle::{build_oracle, OracleApi};
use lodi_core::probing;
use lodi_core::tilting;
use lodi_core::verify::{self, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "lodi", version, about = "Derived categories of representations over locally discrete orders")]
struct Cli {
    /// TOML or JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// rational, gf2 or gf<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Extra successor steps around the window for the oracle.
    #[arg(long, global = true)]
    margin: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Swap in a deliberately wrong Ext rule (negative control).
    #[arg(long, global = true, hide = true)]
    sabotage_ext: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hom dimension by the closed form and by the oracle.
    Hom { x: String, y: String },
    /// Cone of the map `x -> y[shift]`, by the oracle and by probing.
    Cone {
        x: String,
        y: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        shift: i64,
    },
    /// Quasi-simple probes, component and fiber of an object.
    Probe { x: String },
    /// The tilting set generated by a quasi-simple.
    Tilt { s: String },
    /// Window-restricted AR component as a graph.
    Export {
        component: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Run a verification suite and print the report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

enum Output {
    Json(Value),
    Text(String),
}

/// What to print and whether the two sides agreed.
struct Outcome {
    output: Output,
    agree: bool,
}

impl Outcome {
    fn json(v: Value, agree: bool) -> Self {
        Outcome { output: Output::Json(v), agree }
    }
}

struct Ctx {
    cfg: RunConfig,
    rules: HomRules,
}

impl Ctx {
    fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut cfg = match &cli.config {
            Some(p) => RunConfig::load(p).map_err(input)?,
            None => RunConfig::default(),
        };
        if let Some(f) = &cli.field {
            cfg.field = f.parse().map_err(input)?;
        }
        if let Some(m) = cli.margin {
            cfg.margin = m;
        }
        if let Some(s) = cli.seed {
            cfg.seed = s;
        }
        cfg.validate().map_err(input)?;
        let rules = if cli.sabotage_ext { HomRules::OffByOneExt } else { HomRules::Standard };
        Ok(Ctx { cfg, rules })
    }

    fn model(&self) -> Model {
        Model::new(self.cfg.poset.clone(), self.cfg.shift_range).with_rules(self.rules)
    }

    fn oracle(&self) -> Result<Box<dyn OracleApi>, CliError> {
        build_oracle(&self.cfg.poset, self.cfg.margin, self.cfg.field).map_err(|e| CliError::Internal(e.to_string()))
    }

    fn obj(&self, s: &str) -> Result<IndObj, CliError> {
        let x = parse_obj(&self.cfg.poset, s).map_err(input)?;
        self.model().check(&x).map_err(|e| CliError::Input(format!("{s}: {e}")))?;
        Ok(x)
    }

    fn lit(&self, x: &IndObj) -> String {
        format_obj(&self.cfg.poset, x)
    }
}

fn cmd_hom(ctx: &Ctx, x: &str, y: &str) -> Result<Outcome, CliError> {
    let (x, y) = (ctx.obj(x)?, ctx.obj(y)?);
    let dim = ctx.model().hom_dim(&x, &y).map_err(input)?;
    let oracle_dim = ctx.oracle()?.hom(&x, &y).map_err(input)?;
    let agree = dim == oracle_dim;
    let v = json!({
        "x": ctx.lit(&x),
        "y": ctx.lit(&y),
        "dim": dim,
        "oracle_dim": oracle_dim,
        "agree": agree,
        "field": ctx.cfg.field.name(),
    });
    Ok(Outcome::json(v, agree))
}

fn cmd_cone(ctx: &Ctx, x: &str, y: &str, shift: i64) -> Result<Outcome, CliError> {
    let x = ctx.obj(x)?;
    let y = ctx.obj(y)?.shifted(shift);
    let model = ctx.model();
    let oracle = ctx.oracle()?;
    let cone = model.cone(oracle.as_ref(), &x, &y).map_err(input)?;
    let spec = &ctx.cfg.poset;
    // cone(x -> y) is the middle term of y -> M -> x[1] -> y[1].
    let (by_probing, agree) = match probing::cone_by_probing(&model, &x.shifted(1), &y) {
        Ok(p) => (Value::String(format_dobj(spec, &p)), Value::Bool(p == cone)),
        Err(e) => {
            eprintln!("lodi: probing cannot decide this cone: {e}");
            (Value::Null, Value::Null)
        }
    };
    let ok = agree != Value::Bool(false);
    let v = json!({
        "x": ctx.lit(&x),
        "y": ctx.lit(&y),
        "cone": format_dobj(spec, &cone),
        "by_probing": by_probing,
        "agree": agree,
    });
    Ok(Outcome::json(v, ok))
}

fn cmd_probe(ctx: &Ctx, x: &str) -> Result<Outcome, CliError> {
    let x = ctx.obj(x)?;
    let model = ctx.model();
    let probes = probing::phi_o(&model, &x).map_err(input)?;
    let fiber = probing::identify(&model, &probes);
    let comp = x.component();
    let spec = &ctx.cfg.poset;
    let v = json!({
        "object": ctx.lit(&x),
        "phi_o": probes.iter().map(|s| ctx.lit(s)).collect::<Vec<_>>(),
        "component": format_component(spec, &comp),
        "shape": comp.shape().to_string(),
        "phi_c": probing::phi_c(&comp).iter().map(|c| format_component(spec, c)).collect::<Vec<_>>(),
        "fiber": fiber.iter().map(|s| ctx.lit(s)).collect::<Vec<_>>(),
    });
    Ok(Outcome::json(v, true))
}

fn cmd_tilt(ctx: &Ctx, s: &str) -> Result<Outcome, CliError> {
    let s = ctx.obj(s)?;
    let model = ctx.model();
    let t = tilting::tilting_set(&model, &s).map_err(input)?;
    let v = json!({
        "source": ctx.lit(&t.source),
        "elements": t.elements.iter().map(|x| ctx.lit(x)).collect::<Vec<_>>(),
        "shape": t.shape,
        "peripheral_pair": t.peripheral_pair.map(|(a, b)| [ctx.lit(&a), ctx.lit(&b)]),
        "partial_tilting": model.is_partial_tilting(&t.elements),
    });
    Ok(Outcome::json(v, true))
}

fn cmd_export(ctx: &Ctx, component: &str, format: Format) -> Result<Outcome, CliError> {
    let spec = &ctx.cfg.poset;
    let comp = parse_component(spec, component).map_err(input)?;
    let g = export::mesh(spec, &comp).map_err(input)?;
    let output = match format {
        Format::Dot => Output::Text(export::to_dot(&g)),
        Format::Json => Output::Json(serde_json::to_value(&g).map_err(|e| CliError::Internal(e.to_string()))?),
    };
    Ok(Outcome { output, agree: true })
}

fn cmd_verify(ctx: &Ctx, suite: &str) -> Result<Outcome, CliError> {
    let suite: Suite = suite.parse().map_err(input)?;
    let opts = VerifyOptions { rules: ctx.rules, ..VerifyOptions::from_config(&ctx.cfg) };
    let report = verify::run_suite(suite, &ctx.cfg, &opts).map_err(|e| CliError::Internal(e.to_string()))?;
    for c in &report.checks {
        eprintln!("{} {:<24} {:>9} checked {:>7} ms", if c.passed { "PASS" } else { "FAIL" }, c.name, c.checked, c.millis);
    }
    let passed = report.passed;
    let v = serde_json::to_value(&report).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Outcome::json(v, passed))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Ctx::from_cli(cli)?;
    match &cli.command {
        Command::Hom { x, y } => cmd_hom(&ctx, x, y),
        Command::Cone { x, y, shift } => cmd_cone(&ctx, x, y, *shift),
        Command::Probe { x } => cmd_probe(&ctx, x),
        Command::Tilt { s } => cmd_tilt(&ctx, s),
        Command::Export { component, format } => cmd_export(&ctx, component, *format),
        Command::Verify { suite } => cmd_verify(&ctx, suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("lodi: cannot set up {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match out.output {
                Output::Json(v) => println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize")),
                Output::Text(t) => print!("{t}"),
            }
            if out.agree {
                ExitCode::SUCCESS
            } else {
                eprintln!("lodi: disagreement");
                ExitCode::from(3)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("lodi: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("lodi: internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
