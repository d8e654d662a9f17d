use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gameforms::arena::DEFAULT_NODE_BUDGET;
use gameforms::gamedb::{self, DbError};
use gameforms::lab::{self, ClassReport, LemmaConfig, RingConfig, SuiteReport};
use gameforms::notation::{self, EvalError, NotationError};
use gameforms::refute::{gro_tsen_refute, RefutationWitness};
use gameforms::{ArenaError, GameId, Relation, Session};
use serde::Serialize;

mod text;

const PRINT_LIMIT: u64 = 2_000;
const SWAP_SAMPLES: usize = 1_000;

#[derive(Debug, Parser)]
#[command(
    name = "gameforms",
    version,
    about = "Exact arithmetic and relations on finite game forms"
)]
struct Cli {
    /// Maximum number of interned nodes
    #[arg(long, global = true, env = "GAMEFORMS_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Start from a saved game database instead of an empty arena
    #[arg(long, global = true)]
    db: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and describe the resulting form
    Eval { expr: String },
    /// Decide a relation between two expressions
    Check {
        #[arg(value_parser = parse_relation)]
        relation: Relation,
        lhs: String,
        rhs: String,
    },
    /// Search for a multiplier K with GK and HK not Conway equivalent
    RefuteGrotsen {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 2)]
        pool_birthday: u32,
    },
    /// List all forms up to a birthday, optionally partitioned by a relation
    Enumerate {
        #[arg(long)]
        birthday: u32,
        #[arg(long, value_parser = parse_relation)]
        classify_by: Option<Relation>,
    },
    /// Run a verification suite
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
    },
    /// Save or load a game database
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    PaperExamples,
    RingAxioms,
    Ideals,
    Lemmas,
    Probe,
    Regularity,
}

#[derive(Debug, Subcommand)]
enum DbAction {
    /// Write the session, with all forms up to birthday 2 and the named constants
    Save { path: PathBuf },
    /// Read a database and confirm it re-serializes identically
    Load { path: PathBuf },
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    s.parse()
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(ArenaError),
}

impl From<ArenaError> for Failure {
    fn from(e: ArenaError) -> Self {
        match e {
            ArenaError::BudgetExceeded { .. } => Failure::Budget(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<NotationError> for Failure {
    fn from(e: NotationError) -> Self {
        match e {
            NotationError::Eval(EvalError::Arena(a)) => a.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<DbError> for Failure {
    fn from(e: DbError) -> Self {
        match e {
            DbError::Arena(a) => a.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalReport {
    expr: String,
    id: GameId,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<String>,
    printed_length: u64,
    birthday: u32,
    outcome: gameforms::Outcome,
    flags: gameforms::taxonomy::GameClassFlags,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RefuteReport {
    lhs: GameId,
    rhs: GameId,
    pool_birthday: u32,
    pool_size: usize,
    witness: Option<RefutationWitness>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerateReport {
    birthday: u32,
    count: usize,
    ids: Vec<GameId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<ClassReport>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DbReport {
    path: PathBuf,
    nodes: usize,
    memo_entries: usize,
    round_trip: bool,
}

fn emit<T: Serialize>(format: Format, report: &T, render: impl Fn(&T) -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Text => print!("{}", render(report)),
    }
}

fn standard_universe(session: &mut Session) -> Result<(), Failure> {
    for name in gameforms::constants::NAMED {
        session.constant(name).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    session.enumerate_forms(2)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let budget = cli.budget;
    let mut session = match &cli.db {
        Some(path) => gamedb::load(path, budget)?,
        None => Session::with_budget(budget),
    };
    match &cli.command {
        Command::Eval { expr } => {
            let g = notation::eval_str(&mut session, expr)?;
            let printed_length = notation::printed_len(session.arena(), g);
            let report = EvalReport {
                expr: expr.clone(),
                id: g,
                form: (printed_length <= PRINT_LIMIT).then(|| notation::print(session.arena(), g)),
                printed_length,
                birthday: session.birthday(g),
                outcome: session.outcome(g),
                flags: session.flags(g)?,
            };
            emit(cli.format, &report, text::eval);
        }
        Command::Check { relation, lhs, rhs } => {
            let g = notation::eval_str(&mut session, lhs)?;
            let h = notation::eval_str(&mut session, rhs)?;
            let report = session.verdict_report(*relation, g, h)?;
            emit(cli.format, &report, text::verdict);
        }
        Command::RefuteGrotsen {
            lhs,
            rhs,
            pool_birthday,
        } => {
            let g = notation::eval_str(&mut session, lhs)?;
            let h = notation::eval_str(&mut session, rhs)?;
            let mut pool = session.enumerate_forms(*pool_birthday)?;
            pool.sort_unstable();
            let witness = gro_tsen_refute(&mut session, g, h, &pool)?;
            let report = RefuteReport {
                lhs: g,
                rhs: h,
                pool_birthday: *pool_birthday,
                pool_size: pool.len(),
                witness,
            };
            emit(cli.format, &report, text::refute);
        }
        Command::Enumerate { birthday, classify_by } => {
            let ids = session.enumerate_forms(*birthday)?;
            let classes = match classify_by {
                Some(rel) => Some(lab::classify(
                    &mut session,
                    &ids,
                    *rel,
                    &format!("all forms of birthday <= {birthday}"),
                )?),
                None => None,
            };
            let report = EnumerateReport {
                birthday: *birthday,
                count: ids.len(),
                ids,
                classes,
            };
            emit(cli.format, &report, text::enumerate);
        }
        Command::Suite { name } => {
            let report = run_suite(&mut session, *name, cli.seed)?;
            emit(cli.format, &report, text::suite);
            return Ok(report.passed());
        }
        Command::Db { action } => match action {
            DbAction::Save { path } => {
                standard_universe(&mut session)?;
                gamedb::save(&mut session, path).map_err(Failure::from)?;
                let report = db_report(path, budget)?;
                emit(cli.format, &report, text::db);
            }
            DbAction::Load { path } => {
                let report = db_report(path, budget)?;
                emit(cli.format, &report, text::db);
                return Ok(report.round_trip);
            }
        },
    }
    Ok(true)
}

fn db_report(path: &std::path::Path, budget: usize) -> Result<DbReport, Failure> {
    let original = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut loaded = gamedb::from_text(&original, budget)?;
    let memo_entries = loaded.memo().snapshot().iter().filter(|&&f| f != 0).count();
    Ok(DbReport {
        path: path.to_path_buf(),
        nodes: loaded.arena().len(),
        memo_entries,
        round_trip: gamedb::to_text(&mut loaded) == original,
    })
}

fn run_suite(session: &mut Session, name: SuiteName, seed: u64) -> Result<SuiteReport, Failure> {
    Ok(match name {
        SuiteName::PaperExamples => lab::example_suite(session)?,
        SuiteName::RingAxioms => lab::check_ring_axioms(
            session,
            &RingConfig {
                seed,
                ..RingConfig::default()
            },
        )?,
        SuiteName::Ideals => lab::ideal_experiments(session, 3)?,
        SuiteName::Lemmas => lab::lemma_suite(
            session,
            &LemmaConfig {
                seed,
                ..LemmaConfig::default()
            },
        )?,
        SuiteName::Probe => {
            let mut universe = session.enumerate_forms(1)?;
            for name in ["M3", "G_ex", "K_half"] {
                universe.push(session.constant(name).map_err(|e| Failure::Usage(e.to_string()))?);
            }
            let mut pool = session.enumerate_forms(2)?;
            pool.sort_unstable();
            lab::open_problem_probe(session, &universe, &pool)?
        }
        SuiteName::Regularity => {
            let universe = session.enumerate_forms(2)?;
            let mut suite = lab::Suite::seeded("option-regularity", seed);
            for relation in [Relation::IterEq, Relation::ConwayEq] {
                suite.absorb(lab::option_regularity_scan(session, &universe, relation)?);
                suite.absorb(lab::class_swap_check(session, &universe, relation, SWAP_SAMPLES, seed)?);
            }
            suite.finish()
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
