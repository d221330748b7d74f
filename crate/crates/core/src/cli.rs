//! Command-line front end. [`run`] takes the argument vector and returns the
//! exit code together with everything written to stdout and stderr.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms::{catalog_listing, instances, AxiomName, InstanceBounds};
use crate::formula::{analyze, check_atom_name, parse, Formula};
use crate::kripke::{
    frame_report, parse_model_file, to_dot, validate_model, KripkeModel, ModelClass,
};
use crate::proofkit::{builtin_scripts, check_proof, parse_script};
use crate::search::{compare_classes, find_countermodel, EnumParams, FramePredicate};
use crate::semantics::{eval, eval_diamond_unguarded};

#[derive(Debug, Parser)]
#[command(
    name = "modalbench",
    version,
    about = "Constructive and intuitionistic modal logic workbench"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Ck,
    Ckb,
    Ik,
    Ikb,
}

impl From<ClassArg> for ModelClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Ck => ModelClass::CK,
            ClassArg::Ckb => ModelClass::CKB,
            ClassArg::Ik => ModelClass::IK,
            ClassArg::Ikb => ModelClass::IKB,
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Override the file's `preceq-closure` directive.
    #[arg(long, value_enum)]
    pub preceq_closure: Option<Switch>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 3)]
    pub max_worlds: usize,
    /// Comma-separated propositions; defaults to the atoms of the formulas.
    #[arg(long)]
    pub props: Option<String>,
    #[arg(long)]
    pub require_symmetric: bool,
    #[arg(long)]
    pub require_fwd_confluent: bool,
    #[arg(long)]
    pub require_bwd_confluent: bool,
    /// Only enumerate models without fallible worlds.
    #[arg(long)]
    pub no_fallible: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and print its canonical form and statistics.
    Parse {
        #[arg(long = "formula", conflicts_with = "text")]
        formula: Option<String>,
        text: Option<String>,
    },
    /// Validate a model file.
    CheckModel(ModelArgs),
    /// Evaluate a formula at a world.
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
        /// Read diamonds existentially along the modal relation.
        #[arg(long)]
        unguarded: bool,
    },
    /// Report frame properties and class membership.
    Classify(ModelArgs),
    /// Search for a countermodel within the given bounds.
    FindCountermodel {
        #[arg(long = "formula", conflicts_with = "text")]
        formula: Option<String>,
        text: Option<String>,
        #[arg(long, value_enum, default_value = "ck")]
        class: ClassArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Compare bounded countermodel search across two classes.
    CompareClasses {
        #[arg(long = "formula")]
        formulas: Vec<String>,
        #[arg(long)]
        formulas_file: Option<PathBuf>,
        /// Comma-separated schema names whose instances are compared.
        #[arg(long)]
        schemas: Option<String>,
        /// Maximum size of instantiating formulas for --schemas.
        #[arg(long, default_value_t = 2)]
        inst_size: usize,
        /// Atoms for --schemas instances.
        #[arg(long, default_value = "p")]
        atoms: String,
        /// Exactly two classes, given as `--class a --class b`.
        #[arg(long = "class", value_enum, num_args = 1, required = true)]
        classes: Vec<ClassArg>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check a Hilbert proof script.
    CheckProof {
        path: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        builtin: Option<String>,
    },
    /// Axiom catalog.
    Axioms {
        #[command(subcommand)]
        action: AxiomsAction,
    },
    /// Write a Graphviz rendering of a model.
    ExportDot {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AxiomsAction {
    List,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(i32, String), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_model(args: &ModelArgs) -> Result<KripkeModel, Failure> {
    let text = read(&args.model)?;
    let mut raw =
        parse_model_file(&text).map_err(|e| Failure(format!("{}: {e}", args.model.display())))?;
    if let Some(s) = args.preceq_closure {
        raw.close_preceq = s == Switch::On;
    }
    validate_model(&raw).map_err(|errs| {
        let lines: Vec<String> = errs.iter().map(|e| format!("violation: {e}")).collect();
        Failure(format!(
            "{}: invalid model\n{}",
            args.model.display(),
            lines.join("\n")
        ))
    })
}

fn formula_arg(flag: &Option<String>, positional: &Option<String>) -> Result<Formula, Failure> {
    let text = flag
        .as_ref()
        .or(positional.as_ref())
        .ok_or_else(|| Failure("a formula is required".into()))?;
    Ok(parse(text)?)
}

fn csv(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn params(
    bounds: &BoundArgs,
    class: ModelClass,
    formulas: &[Formula],
) -> Result<EnumParams, Failure> {
    let props = match &bounds.props {
        Some(text) => {
            let props = csv(text);
            for p in &props {
                check_atom_name(p)?;
            }
            props
        }
        None => formulas
            .iter()
            .flat_map(|f| f.atoms())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let prop_refs: Vec<&str> = props.iter().map(String::as_str).collect();
    let mut p = EnumParams::new(bounds.max_worlds, &prop_refs, class);
    p.allow_fallible = !bounds.no_fallible && !class.forbids_fallible();
    p.frame = FramePredicate {
        require_symmetric: bounds.require_symmetric,
        require_forward_confluent: bounds.require_fwd_confluent,
        require_backward_confluent: bounds.require_bwd_confluent,
        custom: None,
    };
    Ok(p)
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Parse { formula, text } => {
            let f = formula_arg(&formula, &text)?;
            let s = analyze(&f);
            let atoms: Vec<&str> = s.atoms.iter().map(String::as_str).collect();
            Ok((
                0,
                format!(
                    "{f}\nmodal_depth: {}\nsize: {}\natoms: {}\ndiamond_free: {}\n",
                    s.modal_depth,
                    s.size,
                    atoms.join(","),
                    s.diamond_free
                ),
            ))
        }
        Command::CheckModel(args) => {
            let m = load_model(&args)?;
            Ok((0, format!("OK {} worlds\n", m.len())))
        }
        Command::Eval {
            model,
            world,
            formula,
            unguarded,
        } => {
            let m = load_model(&model)?;
            let f = parse(&formula)?;
            let v = if unguarded {
                eval_diamond_unguarded(&m, &world, &f)?
            } else {
                eval(&m, &world, &f)?
            };
            Ok((0, format!("{v}\n")))
        }
        Command::Classify(args) => {
            let m = load_model(&args)?;
            let r = frame_report(&m);
            let classes: Vec<&str> = r.classes.iter().map(|c| c.name()).collect();
            Ok((
                0,
                format!(
                    "{}\nsymmetric: {}\nforward_confluent: {}\nbackward_confluent: {}\nfallible_r_back_closed: {}\n",
                    classes.join(" "),
                    r.symmetric,
                    r.forward_confluent,
                    r.backward_confluent,
                    r.fallible_r_back_closed
                ),
            ))
        }
        Command::FindCountermodel {
            formula,
            text,
            class,
            bounds,
        } => {
            let f = formula_arg(&formula, &text)?;
            let p = params(&bounds, class.into(), std::slice::from_ref(&f))?;
            let v = find_countermodel(&f, &p)?;
            let code = if v.is_counterexample() { 2 } else { 0 };
            Ok((code, format!("{v}\n")))
        }
        Command::CompareClasses {
            formulas,
            formulas_file,
            schemas,
            inst_size,
            atoms,
            classes,
            bounds,
        } => {
            if classes.len() != 2 {
                return Err(Failure(
                    "compare-classes needs exactly two --class values".into(),
                ));
            }
            let mut fs: Vec<Formula> = Vec::new();
            for t in &formulas {
                fs.push(parse(t)?);
            }
            if let Some(path) = &formulas_file {
                for (i, line) in read(path)?.lines().enumerate() {
                    let t = line.trim();
                    if t.is_empty() || t.starts_with('#') {
                        continue;
                    }
                    fs.push(
                        parse(t)
                            .map_err(|e| Failure(format!("{}:{}: {e}", path.display(), i + 1)))?,
                    );
                }
            }
            if let Some(list) = &schemas {
                let names = csv(list)
                    .iter()
                    .map(|n| n.parse::<AxiomName>())
                    .collect::<Result<Vec<_>, _>>()?;
                let atoms = csv(&atoms);
                for a in &atoms {
                    check_atom_name(a)?;
                }
                fs.extend(instances(
                    &names,
                    &atoms,
                    InstanceBounds {
                        max_size: inst_size,
                        max_depth: inst_size,
                    },
                ));
            }
            let (a, b): (ModelClass, ModelClass) = (classes[0].into(), classes[1].into());
            let p = params(&bounds, a, &fs)?;
            let report = compare_classes(&fs, a, b, &p)?;
            Ok((0, format!("{report}\n")))
        }
        Command::CheckProof { path, builtin } => {
            let script = match (path, builtin) {
                (Some(path), None) => parse_script(&read(&path)?)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                (None, Some(name)) => builtin_scripts()
                    .remove(name.as_str())
                    .ok_or_else(|| Failure(format!("no built-in script `{name}`")))?,
                _ => return Err(Failure("give a script path or --builtin NAME".into())),
            };
            let v = check_proof(&script);
            Ok((if v.is_accepted() { 0 } else { 1 }, format!("{v}\n")))
        }
        Command::Axioms {
            action: AxiomsAction::List,
        } => Ok((0, catalog_listing())),
        Command::ExportDot { model, out } => {
            let m = load_model(&model)?;
            let dot = to_dot(&m);
            match out {
                Some(path) => {
                    fs::write(&path, dot)
                        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    Ok((0, String::new()))
                }
                None => Ok((0, dot)),
            }
        }
    }
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => CliOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure(msg)) => CliOutput {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn parse_prints_canonical_form() {
        let out = run(["modalbench", "parse", "~p & (q | r)"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("(p -> false) & (q | r)\n"));
        let out = run(["modalbench", "parse", "p ->"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("position 4"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["modalbench"]).code, 1);
        assert_eq!(run(["modalbench", "frobnicate"]).code, 1);
        let out = run([
            "modalbench",
            "compare-classes",
            "--class",
            "ck",
            "--formula",
            "p",
        ]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn eval_unknown_world_is_an_error() {
        let m = data("fig2.km");
        let out = run([
            "modalbench",
            "eval",
            "--model",
            &m,
            "--world",
            "x",
            "--formula",
            "p",
        ]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("unknown world"));
    }

    #[test]
    fn builtin_proof() {
        let out = run(["modalbench", "check-proof", "--builtin", "n_in_ckb"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "ACCEPTED\n"));
    }
}
