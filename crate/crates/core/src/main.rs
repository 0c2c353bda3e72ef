use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use graded_lab::exec::Executor;
use graded_lab::harness::examples::{render, reproduce};
use graded_lab::harness::{run_claims, Budget, Instance, Selector, StructureFile};
use graded_lab::localization::localize;
use graded_lab::module::GradedModule;
use graded_lab::primality::{classify, ElementSet};
use graded_lab::{AlgebraError, Subset};

#[derive(Parser)]
#[command(name = "graded-lab", version, about = "Graded weakly primal submodules over finite graded rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a structure file.
    Validate { file: PathBuf },
    /// Print the primality verdict of one submodule.
    Classify {
        file: PathBuf,
        /// gen:<elems>, members:<elems>, index:<k>, zero or whole. Defaults
        /// to the designated submodule of a (Z_n, dZ_n) instance.
        #[arg(long)]
        submodule: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the claim registry.
    Claims {
        #[command(subcommand)]
        action: ClaimsAction,
    },
    /// Worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Print R_S, M_S and the canonical map.
    Localize {
        file: PathBuf,
        /// Comma-separated generators of S; the multiplicative closure is used.
        #[arg(long)]
        s: String,
    },
}

#[derive(Subcommand)]
enum ClaimsAction {
    Run {
        #[arg(long)]
        budget: Option<PathBuf>,
        #[arg(long)]
        claim: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Disable the data-parallel executor.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    Reproduce,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Validate { file } => validate(&file),
        Command::Classify { file, submodule, json } => classify_cmd(&file, submodule.as_deref(), json),
        Command::Claims { action: ClaimsAction::Run { budget, claim, out, sequential } } => claims_run(budget.as_deref(), claim.as_deref(), out.as_deref(), sequential),
        Command::Examples { action: ExamplesAction::Reproduce } => examples(),
        Command::Localize { file, s } => localize_cmd(&file, &s),
    }
}

fn load(path: &Path) -> Result<(StructureFile, Instance), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let f = StructureFile::parse(&text).map_err(Failure::Input)?;
    let inst = f.descriptor().build()?;
    Ok((f, inst))
}

fn finite(inst: &Instance) -> Result<(&Arc<GradedModule>, Option<&graded_lab::module::GradedSubmodule>), Failure> {
    match inst {
        Instance::Finite { module, designated } => Ok((module, designated.as_ref())),
        Instance::Integer(z) => Err(Failure::Input(format!("{} has no finite table model", z.label()))),
    }
}

fn list(s: &Subset) -> String {
    format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn validate(path: &Path) -> Result<(), Failure> {
    let (f, inst) = load(path)?;
    println!("instance: {}", f.descriptor().label());
    match &inst {
        Instance::Integer(z) => {
            let s = z.residue_reduction()?;
            println!("integer instance, residue surrogate: {}", s.surrogate);
        }
        Instance::Finite { module, .. } => {
            let r = module.ring();
            println!("ring order {}, grading group {:?}", r.order(), r.group().cyclic_orders());
            for w in r.warnings() {
                println!("warning: {w}");
            }
            println!("module order {}, homogeneous elements {}", module.order(), module.homogeneous_elements().len());
            for sel in &f.submodules {
                let n = sel.resolve(module, module.order().max(64))?;
                println!("submodule {sel:?}: {}", list(n.members()));
            }
            for s in &f.s_sets {
                let set = r.multiplicative_set(r.subset(s.iter().copied())?)?;
                println!("multiplicative set {}", list(set.members()));
            }
        }
    }
    println!("valid");
    Ok(())
}

fn print_set(name: &str, s: &ElementSet) {
    let w: Vec<String> = s.witnesses.iter().map(|w| format!("{}·{}", w.scalar, w.vector)).collect();
    println!("{name} = {}  witnesses [{}]", list(&s.members), w.join(", "));
}

fn classify_cmd(path: &Path, sel: Option<&str>, json: bool) -> Result<(), Failure> {
    let (_, inst) = load(path)?;
    if let Instance::Integer(z) = &inst {
        let s = z.residue_reduction()?;
        if json {
            println!("{}", serde_json::to_string_pretty(&s).map_err(|e| Failure::Internal(e.to_string()))?);
        } else {
            println!("{}: weakly primal {}, primal {}, weakly prime {}, weakly primary {}", z.label(), s.is_weakly_primal, s.is_primal, s.is_weakly_prime, s.is_weakly_primary);
            println!("gw = {}\ng = {}\nw = {}\n(N:M) = {}", s.gw, s.g, s.w, s.colon);
        }
        return Ok(());
    }
    let (module, designated) = finite(&inst)?;
    let n = match (sel, designated) {
        (None, Some(d)) => d.clone(),
        (sel, _) => {
            let selector: Selector = sel.unwrap_or("zero").parse().map_err(Failure::Input)?;
            selector.resolve(module, module.order().max(64))?
        }
    };
    let v = classify(module, &n);
    if json {
        println!("{}", serde_json::to_string_pretty(&v).map_err(|e| Failure::Internal(e.to_string()))?);
        return Ok(());
    }
    println!("N = {}", list(n.members()));
    println!(
        "weakly primal {}, primal {}, weakly prime {}, weakly primary {}",
        v.is_weakly_primal, v.is_primal, v.is_weakly_prime, v.is_weakly_primary
    );
    print_set("gw", &v.gw_set);
    print_set("g", &v.g_set);
    print_set("w", &v.w_set);
    match &v.adjoint {
        Some(p) => println!("adjoint = {}", list(p.members())),
        None => println!("adjoint = none"),
    }
    if let Some(cf) = &v.gw_closure_failure {
        let terms: Vec<String> = cf.expression.iter().map(|(r, g)| format!("{r}·{g}")).collect();
        println!("gw closure fails at {} = {}", cf.target, terms.join(" + "));
    }
    if let Some(cf) = &v.g_closure_failure {
        let terms: Vec<String> = cf.expression.iter().map(|(r, g)| format!("{r}·{g}")).collect();
        println!("g closure fails at {} = {}", cf.target, terms.join(" + "));
    }
    Ok(())
}

fn claims_run(budget: Option<&Path>, claim: Option<&str>, out: Option<&Path>, sequential: bool) -> Result<(), Failure> {
    let budget = Budget::resolve(budget).map_err(Failure::Input)?;
    let exec = if sequential { Executor::Sequential } else { Executor::default() };
    let report = run_claims(&budget, claim, exec).map_err(Failure::Input)?;
    let json = report.to_json();
    match out {
        Some(p) => {
            std::fs::write(p, &json).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?;
            print!("{}", report.summary());
        }
        None => print!("{json}"),
    }
    if !report.errors.is_empty() {
        return Err(Failure::Internal(report.errors.join("\n")));
    }
    Ok(())
}

fn examples() -> Result<(), Failure> {
    let blocks = reproduce().map_err(Failure::Internal)?;
    print!("{}", render(&blocks));
    if let Some(e) = blocks.iter().flat_map(|b| &b.checks).find_map(|c| c.clone().err()) {
        return Err(Failure::Internal(e));
    }
    Ok(())
}

fn localize_cmd(path: &Path, s: &str) -> Result<(), Failure> {
    let (f, inst) = load(path)?;
    let (module, _) = finite(&inst)?;
    let r = module.ring();
    let gens: Vec<usize> = s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().map_err(|e| Failure::Input(format!("bad element `{t}`: {e}")))).collect::<Result<_, _>>()?;
    if let Some(&x) = gens.iter().find(|&&x| x >= r.order()) {
        return Err(AlgebraError::OutOfRange(x).into());
    }
    let set = r.multiplicative_closure(gens).ok_or_else(|| Failure::Input("the multiplicative closure contains 0 or a non-homogeneous element".into()))?;
    let lm = localize(module, &set)?;
    let lr = lm.localized_ring();
    println!("S = {}", list(set.members()));
    println!("R_S: {} classes", lr.classes().len());
    for (i, c) in lr.classes().iter().enumerate() {
        let deg = lr.ring().degree(i).map(|d| format!("{:?}", lr.ring().group().tuple(d))).unwrap_or_else(|| "-".into());
        println!("  [{i}] {}/{}  degree {deg}  ({} pairs)", c.rep.0, c.rep.1, c.members.len());
    }
    println!("M_S: {} classes", lm.classes().len());
    for (i, c) in lm.classes().iter().enumerate() {
        println!("  [{i}] {}/{}  ({} pairs)", c.rep.0, c.rep.1, c.members.len());
    }
    let phi: Vec<String> = module.elements().map(|m| format!("{m}->{}", lm.phi(m))).collect();
    println!("phi: {}", phi.join(" "));
    if let Some(v) = lm.phi_violation() {
        return Err(Failure::Internal(format!("phi is not a degree-e homomorphism: {v}")));
    }
    for sel in &f.submodules {
        let n = sel.resolve(module, module.order().max(64))?;
        let e = lm.extend(&n)?;
        println!("N = {} -> N_S = {}, N_S ∩ M = {}", list(n.members()), list(e.members()), list(lm.contract(&e).members()));
    }
    Ok(())
}
