use std::io::Write;
use std::net::SocketAddr;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmrule::nim::{
    check_nash, check_nash_grid, remoteness, sorted_box, sweep, GamePosition, MultiPlayerGameSpec,
    NashReport, PlayerReport, SmithOracle,
};
use gmrule::{
    fast_forward, finish_traced, gm_move, period_word, settle, simulate_logged, FinishSpec,
    LeaderPhase, PileVector, RuleParams,
};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gmrule", version, about = "GM-rule dynamics and an exact slow NIM solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include the step-by-step or leader-phase trace.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct VectorArgs {
    /// Comma-separated integers, sorted on input.
    #[arg(short = 'x', long = "vector", allow_hyphen_values = true)]
    x: PileVector,
    /// Modulus ell >= 2.
    #[arg(short = 'l', long = "ell")]
    ell: u64,
}

#[derive(Args)]
struct GridArgs {
    /// Number of piles.
    #[arg(long = "n", default_value_t = 3)]
    n: usize,
    /// Largest pile size.
    #[arg(long = "max", default_value_t = 8)]
    max: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one GM-move.
    Step {
        #[command(flatten)]
        v: VectorArgs,
    },
    /// Apply j GM-moves one at a time.
    Simulate {
        #[command(flatten)]
        v: VectorArgs,
        #[arg(short = 'j')]
        j: u64,
    },
    /// Jump j moves ahead from an absorbed vector.
    Forward {
        #[command(flatten)]
        v: VectorArgs,
        #[arg(short = 'j')]
        j: BigUint,
    },
    /// Locate the end of the pre-absorbing prefix.
    Settle {
        #[command(flatten)]
        v: VectorArgs,
    },
    /// Count moves until d entries are at or below level c.
    Finish {
        #[command(flatten)]
        v: VectorArgs,
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'c', default_value = "0", allow_hyphen_values = true)]
        c: BigInt,
    },
    /// Period word of one column of an absorbed vector.
    Word {
        #[command(flatten)]
        v: VectorArgs,
        /// 1-based column.
        #[arg(long, default_value_t = 1)]
        column: usize,
    },
    /// Remoteness, outcome and optimal keep for a slow NIM position.
    Remoteness {
        #[arg(short = 'x', long = "piles")]
        x: PileVector,
    },
    /// Remoteness for every sorted position in [0..max]^n.
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Compare the solver with the retrograde oracle on a grid.
    OracleCheck {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Search for profitable deviations from the GM-strategy.
    NashCheck {
        /// Single start position; omit to scan the grid.
        #[arg(short = 'x', long = "piles")]
        x: Option<PileVector>,
        /// Number of players (the modulus ell).
        #[arg(short = 'l', long = "players", default_value_t = 2)]
        players: u64,
        /// Payoff constant C; defaults to 1 + sum of piles.
        #[arg(short = 'c')]
        c: Option<u64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run the play service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Idle session lifetime in seconds.
        #[arg(long, default_value_t = 1800)]
        ttl: u64,
    },
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<gmrule::Error> for Failure {
    fn from(e: gmrule::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn params(ell: u64) -> Result<RuleParams, Failure> {
    RuleParams::new(ell).map_err(|e| Failure::Usage(format!("-l: {e}")))
}

fn budget() -> Result<usize, Failure> {
    match std::env::var("GM_BUDGET") {
        Ok(s) => s
            .parse()
            .map_err(|_| Failure::Usage(format!("GM_BUDGET: not a count: {s:?}"))),
        Err(_) => Ok(50_000_000),
    }
}

fn position(x: PileVector) -> Result<GamePosition, Failure> {
    GamePosition::try_from(x).map_err(|e| Failure::Usage(format!("-x: {e}")))
}

fn phases(trace: &[LeaderPhase]) -> Value {
    trace
        .iter()
        .map(|p| {
            json!({
                "leaders": p.leaders,
                "skipped": p.skipped.to_string(),
                "naive": p.naive,
                "join_bound": p.join_bound.as_ref().map(|b| b.to_string()),
                "finish_bound": p.finish_bound.as_ref().map(|b| b.to_string()),
            })
        })
        .collect()
}

fn print_phases(out: &mut dyn Write, trace: &[LeaderPhase]) -> std::io::Result<()> {
    for p in trace {
        write!(out, "leaders={} skipped={} naive={}", p.leaders, p.skipped, p.naive)?;
        if let Some(b) = &p.join_bound {
            write!(out, " join_bound={b}")?;
        }
        if let Some(b) = &p.finish_bound {
            write!(out, " finish_bound={b}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn player_json(p: &PlayerReport) -> Value {
    json!({
        "player": p.player,
        "gm_payoff": p.gm_payoff.to_string(),
        "best_payoff": p.best_payoff.to_string(),
        "profitable": p.profitable,
        "deviation_line": p.deviation_line,
    })
}

fn nash_json(r: &NashReport) -> Value {
    json!({
        "players": r.players,
        "initial": r.initial,
        "payoff_constant": r.payoff_constant,
        "gm_play_length": r.gm_play_length,
        "gm_loser": r.gm_loser,
        "per_player": r.per_player.iter().map(player_json).collect::<Vec<_>>(),
        "states_explored": r.states_explored,
    })
}

fn print_nash(out: &mut dyn Write, r: &NashReport) -> std::io::Result<()> {
    writeln!(
        out,
        "start={} players={} C={} length={} loser={}",
        r.initial, r.players, r.payoff_constant, r.gm_play_length, r.gm_loser
    )?;
    for p in &r.per_player {
        write!(
            out,
            "  seat {}: gm={} best={} profitable={}",
            p.player, p.gm_payoff, p.best_payoff, p.profitable
        )?;
        if let Some(line) = &p.deviation_line {
            write!(out, " via {}", line.join(" -> "))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn emit(out: &mut impl Write, format: Format, text: impl FnOnce(&mut dyn Write) -> std::io::Result<()>, value: impl FnOnce() -> Value) -> Out {
    let res = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value()).unwrap()),
        Format::Text => text(out),
        Format::Csv => return Err(Failure::Usage("--format csv is only supported by sweep".into())),
    };
    res.map_err(|e| Failure::Domain(e.to_string()))
}

fn run(cli: Cli, out: &mut impl Write) -> Out {
    let format = cli.format;
    let trace = cli.trace;
    match cli.command {
        Command::Step { v } => {
            let p = params(v.ell)?;
            let (y, rec) = gm_move(&v.x, &p);
            emit(
                out,
                format,
                |o| {
                    writeln!(o, "{y}")?;
                    if trace {
                        writeln!(o, "keep={} fallback={}", rec.kept + 1, rec.fallback)?;
                    }
                    Ok(())
                },
                || json!({"input": v.x.to_string(), "ell": v.ell, "output": y.to_string(), "keep": rec.kept + 1, "fallback": rec.fallback}),
            )
        }
        Command::Simulate { v, j } => {
            let p = params(v.ell)?;
            let (y, log) = if trace {
                simulate_logged(&v.x, &p, j)
            } else {
                (gmrule::simulate(&v.x, &p, j), Vec::new())
            };
            let rows = || {
                let mut cur = v.x.clone();
                let mut rows = vec![(cur.clone(), None)];
                for rec in &log {
                    cur = gm_move(&cur, &p).0;
                    rows.push((cur.clone(), Some(rec.kept + 1)));
                }
                rows
            };
            emit(
                out,
                format,
                |o| {
                    if trace {
                        for (i, (x, k)) in rows().iter().enumerate() {
                            match k {
                                Some(k) => writeln!(o, "{i}: {x} keep={k}")?,
                                None => writeln!(o, "{i}: {x}")?,
                            }
                        }
                        Ok(())
                    } else {
                        writeln!(o, "{y}")
                    }
                },
                || {
                    let mut value = json!({"input": v.x.to_string(), "ell": v.ell, "j": j, "output": y.to_string()});
                    if trace {
                        value["trace"] = rows()
                            .iter()
                            .map(|(x, k)| json!({"vector": x.to_string(), "keep": k}))
                            .collect();
                    }
                    value
                },
            )
        }
        Command::Forward { v, j } => {
            let p = params(v.ell)?;
            let y = fast_forward(&v.x, &p, &j)?;
            emit(
                out,
                format,
                |o| writeln!(o, "{y}"),
                || json!({"input": v.x.to_string(), "ell": v.ell, "j": j.to_string(), "output": y.to_string()}),
            )
        }
        Command::Settle { v } => {
            let p = params(v.ell)?;
            let s = settle(&v.x, &p);
            let n = s.last_unabsorbed().map(|n| n.to_string());
            emit(
                out,
                format,
                |o| {
                    writeln!(o, "N={} first={}", n.as_deref().unwrap_or("none"), s.first_absorbed)?;
                    if trace {
                        print_phases(o, &s.trace)?;
                    }
                    Ok(())
                },
                || {
                    let mut value = json!({"input": v.x.to_string(), "ell": v.ell, "N": n, "first": s.first_absorbed.to_string()});
                    if trace {
                        value["trace"] = phases(&s.trace);
                    }
                    value
                },
            )
        }
        Command::Finish { v, d, c } => {
            let p = params(v.ell)?;
            let f = finish_traced(&v.x, &p, &FinishSpec::new(d, c.clone()))?;
            emit(
                out,
                format,
                |o| {
                    writeln!(o, "moves={}", f.moves)?;
                    if trace {
                        print_phases(o, &f.trace)?;
                    }
                    Ok(())
                },
                || {
                    let mut value = json!({"input": v.x.to_string(), "ell": v.ell, "d": d, "c": c.to_string(), "moves": f.moves.to_string()});
                    if trace {
                        value["trace"] = phases(&f.trace);
                    }
                    value
                },
            )
        }
        Command::Word { v, column } => {
            let p = params(v.ell)?;
            if column == 0 {
                return Err(Failure::Usage("--column is 1-based".into()));
            }
            let w = period_word(&v.x, &p, column - 1)?;
            emit(
                out,
                format,
                |o| writeln!(o, "word={} period={} drop={}", w.word, w.period_length, w.drop_per_period),
                || json!({
                    "input": v.x.to_string(),
                    "ell": v.ell,
                    "column": column,
                    "word": w.word.to_string(),
                    "period_length": w.period_length,
                    "s_count": w.s_count,
                    "r_count": w.r_count,
                    "drop": w.drop_per_period.to_string(),
                }),
            )
        }
        Command::Remoteness { x } => {
            let pos = position(x)?;
            let r = remoteness(&pos);
            emit(
                out,
                format,
                |o| {
                    write!(o, "R={} outcome={}", r.remoteness, r.outcome)?;
                    if let Some(k) = r.best_move {
                        write!(o, " keep={}", k + 1)?;
                    }
                    writeln!(o)
                },
                || json!({
                    "piles": pos.to_string(),
                    "remoteness": r.remoteness.to_string(),
                    "outcome": r.outcome.to_string(),
                    "best_move": r.best_move.map(|k| k + 1),
                }),
            )
        }
        Command::Sweep { grid } => {
            let rows = sweep(grid.n, grid.max)?;
            let res = match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    let mut header: Vec<String> = (1..=grid.n).map(|i| format!("pile{i}")).collect();
                    header.extend(["remoteness", "outcome", "best_move"].map(String::from));
                    let mut res = w.write_record(&header);
                    for r in &rows {
                        let mut rec: Vec<String> = r.piles.iter().map(u64::to_string).collect();
                        rec.push(r.remoteness.to_string());
                        rec.push(r.outcome.to_string());
                        rec.push(r.best_move.map(|k| (k + 1).to_string()).unwrap_or_default());
                        res = res.and_then(|_| w.write_record(&rec));
                    }
                    res.and_then(|_| w.flush().map_err(Into::into)).map_err(|e| e.to_string())
                }
                Format::Json => {
                    let value: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({"piles": r.piles, "remoteness": r.remoteness, "outcome": r.outcome.to_string(), "best_move": r.best_move.map(|k| k + 1)}))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&value).unwrap()).map_err(|e| e.to_string())
                }
                Format::Text => rows
                    .iter()
                    .try_for_each(|r| {
                        let piles: Vec<String> = r.piles.iter().map(u64::to_string).collect();
                        write!(out, "{} R={} outcome={}", piles.join(","), r.remoteness, r.outcome)?;
                        if let Some(k) = r.best_move {
                            write!(out, " keep={}", k + 1)?;
                        }
                        writeln!(out)
                    })
                    .map_err(|e| e.to_string()),
            };
            res.map_err(Failure::Domain)
        }
        Command::OracleCheck { grid } => {
            let mut oracle = SmithOracle::new(budget()?);
            let mut mismatches = Vec::new();
            let cells = sorted_box(grid.n, grid.max);
            for piles in &cells {
                let pos = GamePosition::new(piles.iter().copied())?;
                let got = remoteness(&pos).remoteness;
                let want = oracle.remoteness(piles)?;
                if got != BigUint::from(want) {
                    mismatches.push((pos.to_string(), got.to_string(), want));
                }
            }
            emit(
                out,
                format,
                |o| {
                    writeln!(o, "checked={} states={} mismatches={}", cells.len(), oracle.states(), mismatches.len())?;
                    for (p, got, want) in &mismatches {
                        writeln!(o, "  {p}: solver {got} oracle {want}")?;
                    }
                    Ok(())
                },
                || json!({
                    "n": grid.n,
                    "max": grid.max,
                    "checked": cells.len(),
                    "states": oracle.states(),
                    "mismatches": mismatches.iter().map(|(p, g, w)| json!({"piles": p, "solver": g, "oracle": w})).collect::<Vec<_>>(),
                }),
            )?;
            if mismatches.is_empty() {
                Ok(())
            } else {
                Err(Failure::Domain(format!("{} mismatches", mismatches.len())))
            }
        }
        Command::NashCheck { x, players, c, grid } => {
            if players < 2 {
                return Err(Failure::Usage(format!("-l: at least 2 players, got {players}")));
            }
            let budget = budget()?;
            match x {
                Some(x) => {
                    let mut spec = MultiPlayerGameSpec::new(players, position(x)?);
                    spec.payoff_constant = c;
                    let r = check_nash(&spec, budget)?;
                    emit(out, format, |o| print_nash(o, &r), || nash_json(&r))
                }
                None => {
                    let r = check_nash_grid(players, grid.n, grid.max, budget)?;
                    emit(
                        out,
                        format,
                        |o| {
                            writeln!(
                                o,
                                "players={} n={} max={} positions={} states={} counterexamples={}",
                                r.players, r.piles, r.max, r.positions_checked, r.states_explored, r.counterexamples.len()
                            )?;
                            for c in &r.counterexamples {
                                print_nash(o, c)?;
                            }
                            Ok(())
                        },
                        || json!({
                            "players": r.players,
                            "n": r.piles,
                            "max": r.max,
                            "positions_checked": r.positions_checked,
                            "states_explored": r.states_explored,
                            "counterexamples": r.counterexamples.iter().map(nash_json).collect::<Vec<_>>(),
                        }),
                    )
                }
            }
        }
        Command::Serve { addr, ttl } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Domain(e.to_string()))?;
            eprintln!("listening on http://{addr}");
            rt.block_on(gmrule_service::serve(addr, Duration::from_secs(ttl)))
                .map_err(|e| Failure::Domain(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
