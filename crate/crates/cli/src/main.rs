use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cayley_compact::cayley::{Geodesic, Q};
use cayley_compact::geometric::GeometricBoundary;
use cayley_compact::harness::{
    cmd_boundary, cmd_distance, cmd_validate, export_dot, geometric_section, hull_report, oracle_ball, parse_instance,
    parse_weight, run_algebraic, HarnessError, Instance, Options, Route,
};

#[derive(Parser)]
#[command(name = "cayley", version, about = "Boundaries of Cayley compactifications of abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Geo,
    Alg,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(clap::Args)]
struct Common {
    /// Instance JSON file, `-` for stdin
    instance: PathBuf,
    /// Perturb the costs by (1/D, 1/D^2, ...)
    #[arg(long, value_name = "D")]
    perturb: Option<u64>,
    /// Node budget for oracle searches and S-pair budget for completions
    #[arg(long, value_name = "B")]
    budget: Option<usize>,
}

impl Common {
    fn options(&self) -> Options {
        let mut opts = Options { perturb: self.perturb, ..Options::default() };
        if let Some(b) = self.budget {
            opts.node_budget = b;
            opts.pair_budget = b;
            opts.candidate_budget = b as u64;
        }
        opts
    }
}

#[derive(Subcommand)]
enum Command {
    /// Convex hull of the generators and its face counts
    Hull {
        #[command(flatten)]
        common: Common,
    },
    /// Boundary points by orbit (geometric) or by standard pair (algebraic)
    Boundary {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "geo")]
        route: RouteArg,
        /// Cap on free exponents and coset coordinates when listing points
        #[arg(long, value_name = "K", default_value_t = 2)]
        caps: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reduced Gröbner basis of the lattice ideal and its genericity
    Groebner {
        #[command(flatten)]
        common: Common,
    },
    /// Standard pairs of the initial ideal
    StandardPairs {
        #[command(flatten)]
        common: Common,
    },
    /// Oracle distance between two group elements, e.g. `3,-1`
    Distance {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        from: String,
        #[arg(allow_hyphen_values = true)]
        to: String,
        /// Give up beyond this distance
        #[arg(long, default_value = "1000")]
        max: String,
    },
    /// Limit of phi_{y,z} along `base, then block repeated`
    Valuation {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        /// Generator indices of one block, e.g. `0,2`
        #[arg(long)]
        block: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 50)]
        horizon: usize,
        /// Number of trailing steps that must agree
        #[arg(long, value_name = "W")]
        window: Option<usize>,
    },
    /// Invariant suites within a weight window; exit code 2 on failure
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "W", default_value = "6")]
        window: String,
        /// Drop this Gröbner basis element first (fault injection)
        #[arg(long, hide = true)]
        drop_gb_element: Option<usize>,
    },
    /// Closure order on the orbits
    Poset {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

fn read_instance(path: &PathBuf) -> Result<Instance, HarnessError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| HarnessError::Schema(format!("{}: {e}", path.display())))?;
    let (inst, notes) = parse_instance(&text)?;
    for n in notes {
        eprintln!("note: {n}");
    }
    Ok(inst)
}

fn parse_ints(text: &str) -> Result<Vec<i64>, HarnessError> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| HarnessError::Schema(format!("cannot parse {text:?} as integers"))))
        .collect()
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn run(cli: Cli) -> Result<(String, u8), HarnessError> {
    match cli.command {
        Command::Hull { common } => {
            let inst = read_instance(&common.instance)?;
            Ok((serde_json::to_string_pretty(&hull_report(&inst)?).expect("serializes"), 0))
        }
        Command::Boundary { common, route, caps, format } => {
            let inst = read_instance(&common.instance)?;
            let route = match route {
                RouteArg::Geo => Route::Geometric,
                RouteArg::Alg => Route::Algebraic,
                RouteArg::Both => Route::Both,
            };
            let opts = Options { caps, ..common.options() };
            let report = cmd_boundary(&inst, route, &opts)?;
            let code = if report.discrepancies.is_empty() { 0 } else { 2 };
            let out = match (format, &report.geometric) {
                (Format::Dot, Some(g)) => export_dot(g),
                (Format::Dot, None) => {
                    return Err(HarnessError::Inapplicable("DOT output needs the geometric route".into()));
                }
                (Format::Json, _) => report.to_json(),
            };
            Ok((out, code))
        }
        Command::Groebner { common } => {
            let inst = read_instance(&common.instance)?;
            let run = run_algebraic(&inst, &common.options())?;
            let v = json!({
                "schema": 1,
                "costs": run.order.costs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "generic": run.basis.is_generic(),
                "ties": run.basis.ties().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "lattice_rank": run.ideal.basis.rows(),
                "basis": run.basis.elements().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "initial_ideal": run.basis.initial_ideal().generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            Ok((pretty(&v), 0))
        }
        Command::StandardPairs { common } => {
            let inst = read_instance(&common.instance)?;
            let run = run_algebraic(&inst, &common.options())?;
            let v = json!({
                "schema": 1,
                "generic": run.basis.is_generic(),
                "standard_pairs": run.pairs.iter().map(|p| json!({"base": p.base.0, "free": p.free, "code": p.to_string()})).collect::<Vec<_>>(),
            });
            Ok((pretty(&v), 0))
        }
        Command::Distance { common, from, to, max } => {
            let inst = read_instance(&common.instance)?;
            let max = parse_weight(&max).ok_or_else(|| HarnessError::Schema(format!("--max {max:?} is not a number")))?;
            let d = cmd_distance(&inst, &parse_ints(&from)?, &parse_ints(&to)?, &max)?;
            Ok((pretty(&json!({"schema": 1, "distance": d.to_string()})), 0))
        }
        Command::Valuation { common, base, block, y, z, horizon, window } => {
            let inst = read_instance(&common.instance)?;
            let graph = inst.graph();
            let block: Vec<usize> = parse_ints(&block)?.into_iter().map(|i| i as usize).collect();
            if let Some(&bad) = block.iter().find(|&&i| i >= inst.generators.len()) {
                return Err(HarnessError::Schema(format!("--block: generator {bad} out of range")));
            }
            let gamma = Geodesic::new(parse_ints(&base)?, block);
            let (y, z) = (parse_ints(&y)?, parse_ints(&z)?);
            let ball = oracle_ball(&graph, &[&gamma], &[y.clone(), z.clone()], horizon, common.options().node_budget)?;
            let est = ball.estimate_valuation(&gamma, &y, &z, horizon, window)?;
            let v = json!({
                "schema": 1,
                "value": est.value.to_string(),
                "stabilized": est.stabilized,
                "horizon": est.horizon,
                "window": est.window,
            });
            Ok((pretty(&v), 0))
        }
        Command::Validate { common, window, drop_gb_element } => {
            let inst = read_instance(&common.instance)?;
            let window: Q =
                parse_weight(&window).ok_or_else(|| HarnessError::Schema(format!("--window {window:?} is not a number")))?;
            let opts = Options { window, drop_basis_element: drop_gb_element, ..common.options() };
            let report = cmd_validate(&inst, &opts)?;
            let code = if report.passed { 0 } else { 2 };
            Ok((report.to_json(), code))
        }
        Command::Poset { common, format } => {
            let inst = read_instance(&common.instance)?;
            let geo = GeometricBoundary::from_graph(&inst.graph())
                .map_err(|e| HarnessError::Inapplicable(format!("geometric route: {e}")))?;
            let section = geometric_section(&geo, 0);
            let out = match format {
                Format::Dot => export_dot(&section),
                Format::Json => pretty(&json!({"schema": 1, "nodes": section.orbits.iter().map(|o| &o.node).collect::<Vec<_>>(), "edges": section.poset})),
            };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            println!("{}", out.trim_end());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
