use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermat_dc::analysis::{classify_point, solve_special, uniqueness_check, SpecialInstance};
use fermat_dc::dca::{multi_start_solve, DcaConfig};
use fermat_dc::inner::{InnerConfig, InnerMethod};
use fermat_dc::oracle::{grid_search, local_refine, GridSpec};
use fermat_dc::{default_tol, ConvexSet, Diagnostic, ProblemInstance, Role, Vector};

use crate::cities;
use crate::error::{CliError, CliResult};
use crate::instance::{load_instance, write_instance};
use crate::points::{load_points_csv, write_points_csv, PointShape};
use crate::report::{
    to_json, write_trajectory_csv, ClassifyDoc, ExistenceDoc, OracleDoc, SolutionsDoc, SolveDoc,
};

/// Generalized Fermat-Torricelli problems with attracting and repelling
/// convex sets.
#[derive(Debug, Parser)]
#[command(name = "fermat-dc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimize the objective with the DCA from one or more starts.
    Solve(SolveArgs),
    /// Apply the existence conditions to an instance.
    Existence(InstanceArgs),
    /// Classify a point of a one-attraction, one-repulsion instance.
    Classify(ClassifyArgs),
    /// Brute-force grid minimum of the objective.
    Oracle(OracleArgs),
    /// Generate data files.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance document (JSON).
    pub instance: PathBuf,
    /// Report path; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Weiszfeld,
    Subgradient,
    Auto,
}

#[derive(Debug, Args)]
pub struct SolverFlags {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_outer: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub outer_tol: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub inner_method: MethodArg,
    #[arg(long, default_value_t = 1000)]
    pub inner_iters: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub inner_tol: f64,
    /// Scale `s` of the subgradient step `s / l`.
    #[arg(long, default_value_t = 1.0)]
    pub step_scale: f64,
}

impl SolverFlags {
    pub fn config(&self, record_trajectory: bool) -> DcaConfig {
        DcaConfig {
            lambda: self.lambda,
            max_outer: self.max_outer,
            outer_step_tol: self.outer_tol,
            inner: InnerConfig {
                method: match self.inner_method {
                    MethodArg::Weiszfeld => InnerMethod::Weiszfeld,
                    MethodArg::Subgradient => InnerMethod::Subgradient,
                    MethodArg::Auto => InnerMethod::Auto,
                },
                max_iters: self.inner_iters,
                step_tol: self.inner_tol,
                subgradient_step_scale: self.step_scale,
            },
            record_trajectory,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub io: InstanceArgs,
    #[command(flatten)]
    pub solver: SolverFlags,
    /// Number of starts; start 0 is --x0 when given.
    #[arg(long, default_value_t = 1)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated first start point.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Write the trajectory of the best start as CSV.
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    /// Include the existence report.
    #[arg(long)]
    pub existence: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub io: InstanceArgs,
    /// Comma-separated point.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub io: InstanceArgs,
    /// Grid `lo..hi@m`: the cube [lo, hi]^n with m points per axis.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Pattern-search rounds started from the grid minimum.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Write the synthetic two-group city point lists.
    Cities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Build an instance document from point lists.
    Instance {
        #[arg(long)]
        attractions: PathBuf,
        #[arg(long)]
        repulsions: Option<PathBuf>,
        /// `point` or `square:H`.
        #[arg(long, default_value = "point")]
        shape: String,
        /// `ball:c_1,...,c_n,r` or `space`.
        #[arg(long, allow_hyphen_values = true)]
        constraint: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

pub fn parse_vector(text: &str) -> CliResult<Vector> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Validation(format!("bad point {text:?}")))?;
    Ok(Vector::from_vec(coords))
}

/// `lo..hi@m`.
pub fn parse_grid(text: &str, dimension: usize) -> CliResult<GridSpec> {
    let bad = || CliError::Validation(format!("bad grid {text:?}, expected lo..hi@m"));
    let (range, m) = text.split_once('@').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let m: usize = m.trim().parse().map_err(|_| bad())?;
    Ok(GridSpec::cube(dimension, lo, hi, m)?)
}

/// `ball:c_1,...,c_n,r` or `space`.
pub fn parse_constraint(text: &str, dimension: usize) -> CliResult<ConvexSet> {
    if text == "space" {
        return Ok(ConvexSet::whole_space(dimension));
    }
    let bad = || CliError::Validation(format!("bad constraint {text:?}"));
    let params = text.strip_prefix("ball:").ok_or_else(bad)?;
    let values = parse_vector(params)?;
    if values.len() != dimension + 1 {
        return Err(bad());
    }
    ConvexSet::ball(values.rows(0, dimension).into_owned(), values[dimension])
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn warnings(inst: &ProblemInstance) -> Vec<String> {
    let list: Vec<String> = inst
        .diagnostics()
        .iter()
        .filter(|d| !d.is_error())
        .map(Diagnostic::to_string)
        .collect();
    for w in &list {
        eprintln!("warning: {w}");
    }
    list
}

fn check_point(inst: &ProblemInstance, x: &Vector) -> CliResult<()> {
    if x.len() != inst.dimension {
        return Err(CliError::Validation(format!(
            "point has {} coordinates, instance dimension is {}",
            x.len(),
            inst.dimension
        )));
    }
    Ok(())
}

pub fn solve(args: &SolveArgs) -> CliResult<String> {
    let inst = load_instance(&args.io.instance)?;
    let warnings = warnings(&inst);
    let cfg = args.solver.config(args.trajectory.is_some());
    cfg.validate()?;
    let x0 = args.x0.as_deref().map(parse_vector).transpose()?;
    if let Some(x0) = &x0 {
        check_point(&inst, x0)?;
        let d = inst.constraint.distance(x0)?;
        if d > default_tol(x0) {
            return Err(CliError::Validation(format!(
                "x0 lies outside the constraint set (distance {d})"
            )));
        }
    }
    let ms = multi_start_solve(&inst, x0.as_ref(), args.starts, args.seed, &cfg)?;
    if let Some(path) = &args.trajectory {
        let traj = ms.best().report.trajectory.as_deref().unwrap_or_default();
        write_trajectory_csv(path, traj)?;
    }
    let existence = args
        .existence
        .then(|| ExistenceDoc::from(&inst.existence_classify()));
    Ok(to_json(&SolveDoc::new(&ms, warnings, existence)))
}

pub fn existence(args: &InstanceArgs) -> CliResult<String> {
    let inst = load_instance(&args.instance)?;
    warnings(&inst);
    Ok(to_json(&ExistenceDoc::from(&inst.existence_classify())))
}

pub fn special_instance(inst: &ProblemInstance) -> CliResult<SpecialInstance> {
    if inst.attractions.len() != 1 || inst.repulsions.len() != 1 {
        return Err(CliError::Validation(format!(
            "classify needs exactly one attraction and one repulsion, got {} and {}",
            inst.attractions.len(),
            inst.repulsions.len()
        )));
    }
    let (a, r) = (&inst.attractions[0], &inst.repulsions[0]);
    SpecialInstance::new(a.set.clone(), r.set.clone(), a.weight, r.weight)
        .map_err(|e| CliError::Validation(e.to_string()))
}

pub fn classify(args: &ClassifyArgs) -> CliResult<String> {
    let inst = load_instance(&args.io.instance)?;
    let special = special_instance(&inst)?;
    let x = parse_vector(&args.x)?;
    check_point(&inst, &x)?;
    let mut notes = Vec::new();
    if !inst.constraint.is_whole_space() {
        notes.push("constraint ignored: the classification is over the whole space".into());
    }
    let class = classify_point(&special, &x, args.tol)?;
    let solutions = match solve_special(&special) {
        Ok(s) => Some(SolutionsDoc::from(&s)),
        Err(e) => {
            notes.push(format!("solution set not computed: {e}"));
            None
        }
    };
    let unique = uniqueness_check(&special, args.tol);
    Ok(to_json(&ClassifyDoc::new(
        &x, &class, unique, solutions, notes,
    )))
}

pub fn oracle(args: &OracleArgs) -> CliResult<String> {
    let inst = load_instance(&args.io.instance)?;
    let grid = parse_grid(&args.grid, inst.dimension)?;
    let result = grid_search(&inst, &grid)?;
    let mut doc = OracleDoc::from(&result);
    if args.refine > 0 {
        let refined = local_refine(&inst, &result.best_x, result.spacing, args.refine)?;
        doc.refined = Some(Box::new(OracleDoc::from(&refined)));
    }
    Ok(to_json(&doc))
}

pub fn gen(cmd: &GenCommand) -> CliResult<Option<String>> {
    match cmd {
        GenCommand::Cities { seed, out_dir } => {
            std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
            let c = cities::generate(*seed);
            write_points_csv(&out_dir.join("group_a.csv"), &["lat", "lon"], &c.group_a)?;
            write_points_csv(&out_dir.join("group_b.csv"), &["lat", "lon"], &c.group_b)?;
            Ok(None)
        }
        GenCommand::Instance {
            attractions,
            repulsions,
            shape,
            constraint,
            alpha,
            beta,
            output,
        } => {
            let shape: PointShape = shape.parse().map_err(CliError::Validation)?;
            let a = load_points_csv(attractions, Role::Attraction, shape, *alpha)?;
            let r = match repulsions {
                Some(path) => load_points_csv(path, Role::Repulsion, shape, *beta)?,
                None => Vec::new(),
            };
            let dimension = a[0].set.dim();
            let s = parse_constraint(constraint, dimension)?;
            let inst =
                ProblemInstance::new(a, r, s).map_err(|e| CliError::Validation(e.to_string()))?;
            let text = write_instance(&inst);
            match output {
                Some(path) => {
                    emit(Some(path), &text)?;
                    Ok(None)
                }
                None => Ok(Some(text)),
            }
        }
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let outcome = match &cli.command {
        Command::Solve(a) => solve(a).and_then(|t| emit(a.io.output.as_deref(), &t)),
        Command::Existence(a) => existence(a).and_then(|t| emit(a.output.as_deref(), &t)),
        Command::Classify(a) => classify(a).and_then(|t| emit(a.io.output.as_deref(), &t)),
        Command::Oracle(a) => oracle(a).and_then(|t| emit(a.io.output.as_deref(), &t)),
        Command::Gen(g) => gen(g).and_then(|t| match t {
            Some(text) => emit(None, &text),
            None => Ok(()),
        }),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
