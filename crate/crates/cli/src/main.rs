//! Command-line toolbox over the `translucent` library: iterated deletion,
//! rationalizability search, model checking, structure validation, canonical
//! witnesses, fixture generation, and the verification harness.
//!
//! Exit codes: 0 the query holds or the check passes, 1 it does not, 2 the
//! input is invalid (unknown flags, unreadable files, parse errors).

use std::any::Any;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use translucent::domination::{
    iterated_strict_dominance, nsd_fixpoint, restricted_pool_agrees, serialize_trace,
    DeletionKind, DeletionTrace,
};
use translucent::game::{ladder, parse_game, random_game, serialize_game, translucent_pd, Game};
use translucent::harness;
use translucent::logic::{parse_formula, satisfying_states, EvalMode};
use translucent::minimax_rat::{minimax_rationalizable_profiles, WitnessSets};
use translucent::structures::{
    pd_naive_structure, random_appropriate_structure, serialize_structure,
    translucent_pd_structure, CounterfactualStructure, StructureDoc, Violation,
};
use translucent::witness::{build_canonical_witness, family_witness_sets, verify_ccbr_witness};
use translucent::Rational;

#[derive(Parser)]
#[command(
    name = "translucent",
    version,
    about = "Solver and epistemic model checker for finite games with translucent players"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run iterated deletion on a game, or search for rationalizable profiles
    Solve(SolveArgs),
    /// Model-check a formula against a structure
    Mc(McArgs),
    /// Check a structure's belief and switch conditions, or measure its leak
    Validate(ValidateArgs),
    /// Build and verify the canonical structure certifying a profile
    Witness(WitnessArgs),
    /// Write built-in or seeded random games and structures
    Gen(GenArgs),
    /// Run the full verification suite and print a pass/fail table
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Game file (JSON)
    #[arg(long)]
    game: PathBuf,
    /// List every rationalizable profile with a witness family
    #[arg(long, conflicts_with_all = ["strict_baseline", "restricted_pool"])]
    rationalizable: bool,
    /// Largest witness set considered per player
    #[arg(long, default_value_t = 5, requires = "rationalizable")]
    budget: usize,
    /// Classical strict dominance instead of minimax dominance
    #[arg(long, conflicts_with = "restricted_pool")]
    strict_baseline: bool,
    /// Check that restricting dominators to each round's survivors leaves
    /// the rounds unchanged
    #[arg(long)]
    restricted_pool: bool,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct McArgs {
    /// Structure file (JSON)
    #[arg(long)]
    structure: PathBuf,
    /// Game file overriding the one named or embedded in the structure
    #[arg(long)]
    game: Option<PathBuf>,
    /// Formula, e.g. 'CB RAT' or 'SRAT_1^2 & !B*_2 play_1(C)'
    #[arg(long)]
    formula: String,
    /// Evaluation mode: counterfactual or probability
    #[arg(long, default_value = "counterfactual")]
    mode: String,
    /// State id to test; omitted, every satisfying state is printed
    #[arg(long)]
    state: Option<String>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// Structure file (JSON)
    #[arg(long)]
    structure: PathBuf,
    /// Game file overriding the one named or embedded in the structure
    #[arg(long)]
    game: Option<PathBuf>,
    /// Check the belief and closest-state conditions (the default)
    #[arg(long)]
    appropriate: bool,
    /// Also require switched beliefs to be self-evident
    #[arg(long)]
    strong: bool,
    /// Check that a switch never disturbs the other players' strategies or
    /// beliefs
    #[arg(long)]
    unilateral: bool,
    /// Print the translucency: the largest belief shift a switch can cause
    #[arg(long)]
    epsilon: bool,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// Game file (JSON)
    #[arg(long)]
    game: PathBuf,
    /// Comma-separated strategy names, one per player
    #[arg(long)]
    profile: String,
    /// Write the witness structure here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    target: GenTarget,
}

#[derive(Subcommand)]
enum GenTarget {
    /// Write a game file
    Game {
        #[command(subcommand)]
        kind: GameKind,
    },
    /// Write a structure file
    Structure {
        #[command(subcommand)]
        kind: StructureKind,
    },
}

#[derive(Subcommand)]
enum GameKind {
    /// Two-player dilemma: switching gains the reward and costs the other
    /// player the punishment
    TranslucentPd {
        #[arg(long, default_value = "1")]
        reward: String,
        #[arg(long, default_value = "5")]
        punishment: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric announcement game on rungs 1..=k
    Ladder {
        #[arg(long)]
        rungs: usize,
        /// Reward for announcing below the other player
        #[arg(long, default_value = "1/2")]
        prob: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 2-3 players, 2-4 strategies each, integer payoffs in -9..=9
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum StructureKind {
    /// Seven states over the dilemma; a switch leaks with probability epsilon
    TranslucentPd {
        #[arg(long, default_value = "1")]
        reward: String,
        #[arg(long, default_value = "5")]
        punishment: String,
        #[arg(long, default_value = "1/4")]
        epsilon: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two states over the dilemma; switches swap the state and stay hidden
    PdNaive {
        #[arg(long, default_value = "1")]
        reward: String,
        #[arg(long, default_value = "5")]
        punishment: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random structure passing the belief and switch conditions
    Random {
        /// Game file (JSON)
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        seed: u64,
        /// State count (default: smallest feasible)
        #[arg(long)]
        states: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away, like other unix
    // filters.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Mc(args) => run_mc(args),
        Command::Validate(args) => run_validate(args),
        Command::Witness(args) => run_witness(args),
        Command::Gen(args) => run_gen(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_game(path: &Path) -> Result<Game> {
    parse_game(&read_file(path)?).with_context(|| format!("in game file {}", path.display()))
}

/// Loads a structure, resolving a game named by path relative to the
/// structure file's directory unless `--game` overrides it.
fn load_structure(path: &Path, game_flag: Option<&Path>) -> Result<CounterfactualStructure> {
    let doc = StructureDoc::parse(&read_file(path)?)
        .with_context(|| format!("in structure file {}", path.display()))?;
    let game = match (game_flag, doc.game_path()) {
        (Some(flag), _) => Some(load_game(flag)?),
        (None, Some(rel)) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            Some(load_game(&base.join(rel))?)
        }
        (None, None) => None,
    };
    doc.instantiate(game)
        .with_context(|| format!("in structure file {}", path.display()))
}

fn parse_rational(text: &str, flag: &str) -> Result<Rational> {
    text.parse()
        .map_err(|e| anyhow!("--{flag} {text:?}: {e}"))
}

fn emit(out: Option<&Path>, text: &str, note: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}{note}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_solve(args: SolveArgs) -> Result<u8> {
    let game = load_game(&args.game)?;
    if args.restricted_pool {
        let ok = restricted_pool_agrees(&game);
        if args.json {
            let payload = json!({ "restricted_pool_agrees": ok });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        } else if ok {
            println!("restricting dominators to each round's survivors leaves every round unchanged");
        } else {
            println!("restricted-pool deletion diverges from the full-pool rounds");
        }
        return Ok(u8::from(!ok));
    }
    if args.rationalizable {
        let found = minimax_rationalizable_profiles(&game, args.budget)?;
        if args.json {
            let entries: Vec<_> = found
                .iter()
                .map(|(profile, sets)| {
                    json!({
                        "profile": game.profile_names(profile),
                        "witness_sets": sets.to_names(&game),
                    })
                })
                .collect();
            let payload = json!({ "rationalizable": entries });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        } else {
            println!("{} rationalizable profile(s)", found.len());
            for (profile, sets) in &found {
                println!(
                    "  ({})  witnessed by {}",
                    game.profile_names(profile).join(", "),
                    witness_sets_text(&game, sets)
                );
            }
        }
        return Ok(0);
    }
    let trace = if args.strict_baseline {
        iterated_strict_dominance(&game)
    } else {
        nsd_fixpoint(&game)
    };
    if args.json {
        println!("{}", serialize_trace(&game, &trace));
    } else {
        print_trace(&game, &trace);
    }
    Ok(0)
}

fn witness_sets_text(game: &Game, sets: &WitnessSets) -> String {
    game.players()
        .map(|i| {
            let names: Vec<_> =
                sets.set(i).iter().map(|&s| game.strategy_name(i, s)).collect();
            format!("player {} {{{}}}", i + 1, names.join(", "))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_trace(game: &Game, trace: &DeletionTrace) {
    for round in 1..=trace.round_count() {
        println!("round {round}:");
        for cert in trace.certificates.iter().filter(|c| c.round == round) {
            let deleted = game.strategy_name(cert.player, cert.deleted);
            let dominator = game.strategy_name(cert.player, cert.dominator);
            match trace.kind {
                DeletionKind::Minimax => println!(
                    "  player {} deletes {deleted}: {dominator}'s worst case {} beats {deleted}'s best case {}",
                    cert.player + 1,
                    cert.min,
                    cert.max
                ),
                DeletionKind::Strict => println!(
                    "  player {} deletes {deleted}: {dominator} wins pointwise by at least {}",
                    cert.player + 1,
                    cert.min
                ),
            }
        }
    }
    for i in game.players() {
        let names: Vec<_> = trace
            .final_family()
            .set(i)
            .iter()
            .map(|&s| game.strategy_name(i, s))
            .collect();
        println!("player {} survivors: {{{}}}", i + 1, names.join(", "));
    }
    println!("rounds: {}", trace.round_count());
}

fn run_mc(args: McArgs) -> Result<u8> {
    let m = load_structure(&args.structure, args.game.as_deref())?;
    let mode: EvalMode = args.mode.parse().map_err(|e| anyhow!("{e}"))?;
    let formula = parse_formula(&args.formula)?;
    let sat = satisfying_states(&m, &formula, mode).map_err(|e| anyhow!("{e}"))?;
    let ids: Vec<&str> = sat.iter().map(|&w| m.state_id(w)).collect();
    if let Some(id) = &args.state {
        let state = m
            .state_index(id)
            .ok_or_else(|| anyhow!("unknown state id {id:?}"))?;
        let holds = sat.contains(&state);
        if args.json {
            let payload = json!({
                "formula": formula.to_string(),
                "mode": mode.to_string(),
                "state": id,
                "holds": holds,
                "satisfying": ids,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        } else if holds {
            println!("{formula} holds at {id}");
        } else {
            println!("{formula} does not hold at {id}");
        }
        Ok(u8::from(!holds))
    } else {
        if args.json {
            let payload = json!({
                "formula": formula.to_string(),
                "mode": mode.to_string(),
                "satisfying": ids,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        } else if ids.is_empty() {
            println!("no state satisfies {formula}");
        } else {
            println!("satisfying states: {}", ids.join(" "));
        }
        Ok(0)
    }
}

fn run_validate(args: ValidateArgs) -> Result<u8> {
    let m = load_structure(&args.structure, args.game.as_deref())?;
    let any_flag = args.appropriate || args.strong || args.unilateral || args.epsilon;
    let appropriate = args.appropriate || !any_flag;

    let mut pass = true;
    let mut lines = Vec::new();
    let mut payload = serde_json::Map::new();
    if appropriate {
        let violations = m.validate_appropriate();
        pass &= violations.is_empty();
        lines.push(format!("appropriate: {}", yes_no(violations.is_empty())));
        report_violations(&m, &violations, &mut lines);
        payload.insert("appropriate".into(), violations.is_empty().into());
        payload.insert("appropriate_violations".into(), violation_json(&m, &violations));
    }
    if args.strong {
        let violations = m.validate_strongly_appropriate();
        pass &= violations.is_empty();
        lines.push(format!("strongly appropriate: {}", yes_no(violations.is_empty())));
        report_violations(&m, &violations, &mut lines);
        payload.insert("strongly_appropriate".into(), violations.is_empty().into());
        payload.insert("strong_violations".into(), violation_json(&m, &violations));
    }
    if args.unilateral {
        let ok = m.respects_unilateral_deviations();
        pass &= ok;
        lines.push(format!("respects unilateral deviations: {}", yes_no(ok)));
        payload.insert("respects_unilateral_deviations".into(), ok.into());
    }
    if args.epsilon {
        let eps = m.translucency_epsilon();
        lines.push(format!("translucency: {eps}"));
        payload.insert("translucency".into(), eps.to_string().into());
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(payload))?);
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    Ok(u8::from(!pass))
}

fn report_violations(m: &CounterfactualStructure, violations: &[Violation], lines: &mut Vec<String>) {
    for v in violations {
        lines.push(format!("  {}", describe_violation(m, v)));
    }
}

fn violation_json(m: &CounterfactualStructure, violations: &[Violation]) -> serde_json::Value {
    violations.iter().map(|v| describe_violation(m, v)).collect::<Vec<_>>().into()
}

fn describe_violation(m: &CounterfactualStructure, v: &Violation) -> String {
    let game = m.game();
    match v {
        Violation::BeliefOffOwnStrategy { player, state, offending } => format!(
            "player {} at {} gives weight to {}, where they play a different strategy",
            player + 1,
            m.state_id(*state),
            m.state_id(*offending)
        ),
        Violation::BeliefNotIntrospective { player, state, offending } => format!(
            "player {} at {} gives weight to {}, where they hold a different belief",
            player + 1,
            m.state_id(*state),
            m.state_id(*offending)
        ),
        Violation::ClosestWrongStrategy { state, player, strategy } => format!(
            "player {}'s switch to {} at {} lands on a state playing something else",
            player + 1,
            game.strategy_name(*player, *strategy),
            m.state_id(*state)
        ),
        Violation::ClosestNotIdentity { state, player } => format!(
            "player {}'s switch to their current strategy at {} moves to a different state",
            player + 1,
            m.state_id(*state)
        ),
        Violation::SwitchedBeliefNotSelfEvident { state, player, strategy, offending } => {
            format!(
                "player {}'s belief after switching to {} at {} is not held at {}",
                player + 1,
                game.strategy_name(*player, *strategy),
                m.state_id(*state),
                m.state_id(*offending)
            )
        }
    }
}

fn run_witness(args: WitnessArgs) -> Result<u8> {
    let game = load_game(&args.game)?;
    let names: Vec<&str> = args.profile.split(',').map(str::trim).collect();
    if names.len() != game.player_count() {
        bail!("--profile needs {} names, got {}", game.player_count(), names.len());
    }
    let profile: Vec<_> = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            game.strategy_index(i, name)
                .map_err(|_| anyhow!("player {} has no strategy named {name:?}", i + 1))
        })
        .collect::<Result<_>>()?;
    let family = nsd_fixpoint(&game).final_family().clone();
    let sets = family_witness_sets(&game, &family);
    let witness = build_canonical_witness(&game, &profile, &sets);
    let report = verify_ccbr_witness(&witness);
    let m = &witness.structure;
    if let Some(out) = &args.out {
        fs::write(out, serialize_structure(m))
            .with_context(|| format!("writing {}", out.display()))?;
    }
    if args.json {
        let payload = json!({
            "profile": game.profile_names(&profile),
            "witness_sets": sets.to_names(&game),
            "states": m.state_count(),
            "designated": m.state_id(witness.designated),
            "appropriate": report.appropriate,
            "strongly_appropriate": report.strongly_appropriate,
            "switch_routes_agree": report.switch_routes_agree,
            "designated_in_ccbr": report.designated_in_ccbr,
            "pass": report.passes(),
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!(
            "witness for ({}): {} states, designated {}",
            game.profile_names(&profile).join(", "),
            m.state_count(),
            m.state_id(witness.designated)
        );
        println!("  appropriate: {}", yes_no(report.appropriate));
        println!("  strongly appropriate: {}", yes_no(report.strongly_appropriate));
        println!("  switch routes agree: {}", yes_no(report.switch_routes_agree));
        println!("  designated state satisfies CCBR: {}", yes_no(report.designated_in_ccbr));
        println!("verdict: {}", if report.passes() { "pass" } else { "fail" });
        if let Some(out) = &args.out {
            println!("wrote {}", out.display());
        }
    }
    Ok(u8::from(!report.passes()))
}

fn run_gen(args: GenArgs) -> Result<u8> {
    match args.target {
        GenTarget::Game { kind } => match kind {
            GameKind::TranslucentPd { reward, punishment, out } => {
                let r = parse_rational(&reward, "reward")?;
                let p = parse_rational(&punishment, "punishment")?;
                emit(out.as_deref(), &serialize_game(&translucent_pd(&r, &p)), "")?;
            }
            GameKind::Ladder { rungs, prob, out } => {
                let p = parse_rational(&prob, "prob")?;
                let game = ladder(rungs, &p)?;
                emit(out.as_deref(), &serialize_game(&game), "")?;
            }
            GameKind::Random { seed, out } => {
                emit(out.as_deref(), &serialize_game(&random_game(seed)), "")?;
            }
        },
        GenTarget::Structure { kind } => match kind {
            StructureKind::TranslucentPd { reward, punishment, epsilon, out } => {
                let r = parse_rational(&reward, "reward")?;
                let p = parse_rational(&punishment, "punishment")?;
                let eps = parse_rational(&epsilon, "epsilon")?;
                let (m, designated) = translucent_pd_structure(&r, &p, &eps)?;
                let note = format!(" (designated state: {})", m.state_id(designated));
                emit(out.as_deref(), &serialize_structure(&m), &note)?;
            }
            StructureKind::PdNaive { reward, punishment, out } => {
                let r = parse_rational(&reward, "reward")?;
                let p = parse_rational(&punishment, "punishment")?;
                let (m, designated) = pd_naive_structure(&r, &p);
                let note = format!(" (designated state: {})", m.state_id(designated));
                emit(out.as_deref(), &serialize_structure(&m), &note)?;
            }
            StructureKind::Random { game, seed, states, out } => {
                let game = load_game(&game)?;
                let needed =
                    game.players().map(|p| game.strategy_count(p)).max().unwrap_or(1);
                let states = states.unwrap_or(needed.max(2));
                let m = random_appropriate_structure(&game, seed, states)?;
                emit(out.as_deref(), &serialize_structure(&m), "")?;
            }
        },
    }
    Ok(0)
}

fn panic_text(payload: &(dyn Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_owned()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "check panicked".to_owned()
    }
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let previous = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut results = Vec::new();
    for (index, (name, check)) in harness::CRITERIA.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let detail = outcome.err().map(|e| panic_text(e.as_ref()));
        if !args.json {
            match &detail {
                None => println!("{:>2}. {name} ... pass", index + 1),
                Some(msg) => {
                    println!("{:>2}. {name} ... FAIL", index + 1);
                    for line in msg.lines() {
                        println!("      {line}");
                    }
                }
            }
        }
        results.push((*name, detail));
    }
    panic::set_hook(previous);
    let failed = results.iter().filter(|(_, detail)| detail.is_some()).count();
    if args.json {
        let rows: Vec<_> = results
            .iter()
            .map(|(name, detail)| {
                json!({ "criterion": name, "pass": detail.is_none(), "detail": detail })
            })
            .collect();
        let payload = json!({ "criteria": rows, "pass": failed == 0 });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else if failed == 0 {
        println!("all {} criteria pass", results.len());
    } else {
        println!("{failed} of {} criteria fail", results.len());
    }
    Ok(u8::from(failed > 0))
}
