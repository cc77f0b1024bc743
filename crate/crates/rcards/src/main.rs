//! `rcards` — verify, construct and search announcement strategies for the
//! generalized Russian cards problem.
//!
//! Exit status: 0 when every requested property holds, 1 when a property
//! fails (a witness is printed), 2 on usage or parse errors. Reports contain
//! only exact rationals rendered as `num/den`; decimal renderings are
//! explicitly approximate extras. Identical inputs yield byte-identical
//! reports. The `RCARDS_BUDGET` environment variable overrides the default
//! search/verification budgets.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rcards::design::{
    cyclic_design, design_lambda, orbit_strategy, rotated_family_8_4, strategy_from_designs,
    sts_construct, verify_large_set, Design,
};
use rcards::fileio::{emit_design_family, emit_strategy, parse_design_family, parse_strategy};
use rcards::search::{
    enumerate_designs_with_budget, max_disjoint_family_with_budget, min_informative_m_with_budget,
    necessary_condition_audit, AuditStatus,
};
use rcards::verify::{
    communication_complexity, equitability, is_informative, is_optimal, lower_bound_m,
    perfect_security_check_with_budget, possible_hands, prob_subset_held,
    weak_security_check_with_budget, InformativeFailure, SecurityWitness,
};
use rcards::{Budget, DealSpec, Hand, Strategy};

#[derive(Parser)]
#[command(name = "rcards", version, about = "Announcement strategies for the generalized Russian cards problem", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check informativeness, equitability, security and optimality of a strategy file.
    Verify(VerifyArgs),
    /// Exact probability that Alice holds a card subset, from Cathy's view.
    Prob(ProbArgs),
    /// Lower bound on the number of announcements of an informative strategy.
    LowerBound(LowerBoundArgs),
    /// Build designs and strategies.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Audit a strategy against the necessary-condition theorems.
    Audit(AuditArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Strategy file.
    #[arg(long)]
    strategy: PathBuf,
    /// Security level δ to check (weak and perfect).
    #[arg(long, default_value_t = 1)]
    delta: u32,
}

#[derive(Args)]
struct ProbArgs {
    /// Strategy file.
    #[arg(long, conflicts_with = "design")]
    strategy: Option<PathBuf>,
    /// Design family file, treated as a deterministic announcement list
    /// (requires --deal).
    #[arg(long, requires = "deal")]
    design: Option<PathBuf>,
    /// Deal a,b,c (with --design).
    #[arg(long, value_parser = parse_deal)]
    deal: Option<DealSpec>,
    /// 1-based announcement index.
    #[arg(long, default_value_t = 1)]
    announcement: usize,
    /// Cathy's hand, e.g. 11,12.
    #[arg(long, value_parser = parse_hand)]
    cathy: Hand,
    /// Card subset, e.g. 0 or 0,5.
    #[arg(long, value_parser = parse_hand)]
    subset: Hand,
}

#[derive(Args)]
struct LowerBoundArgs {
    /// Deal a,b,c.
    #[arg(long, value_parser = parse_deal)]
    deal: DealSpec,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Steiner triple system of order v.
    Sts(StsArgs),
    /// All distinct translates of base blocks mod v.
    Cyclic(CyclicArgs),
    /// Orbit of a design under the full symmetric group, as a strategy.
    Orbit(OrbitArgs),
    /// The built-in family of ten 3-(8,4,1) designs covering every 4-subset twice.
    Example4(OutArg),
    /// Equitable strategy from a design family file.
    FromDesigns(FromDesignsArgs),
}

#[derive(Args)]
struct StsArgs {
    /// Order v (v = 1 or 3 mod 6, v >= 7).
    #[arg(long)]
    v: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CyclicArgs {
    /// Base block, e.g. 0,1,3,9. Repeatable.
    #[arg(long, required = true, value_parser = parse_hand)]
    base: Vec<Hand>,
    /// Modulus v.
    #[arg(long = "mod")]
    modulus: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitArgs {
    /// Design file holding the seed design.
    #[arg(long)]
    design: PathBuf,
    /// Allow the n! sweep beyond 8 points.
    #[arg(long)]
    allow_large_orbit: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OutArg {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FromDesignsArgs {
    /// Design family files.
    #[arg(long, required = true, num_args = 1..)]
    files: Vec<PathBuf>,
    /// Deal a,b,c (must match the designs' points and block size).
    #[arg(long, value_parser = parse_deal)]
    deal: DealSpec,
    /// Expected replication; inferred when omitted.
    #[arg(long)]
    gamma: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Minimum number of announcements for an informative strategy.
    MinM(MinMArgs),
    /// Enumerate every t-(v,k,1) design.
    Enumerate(EnumerateArgs),
    /// Maximum pairwise-disjoint subfamily of a design family.
    Disjoint(DisjointArgs),
}

#[derive(Args)]
struct MinMArgs {
    /// Deal a,b,c.
    #[arg(long, value_parser = parse_deal)]
    deal: DealSpec,
    /// Largest m to try.
    #[arg(long)]
    max: usize,
    /// Write the witness strategy here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    t: u32,
    #[arg(long)]
    v: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DisjointArgs {
    /// Design family files.
    #[arg(long, required = true, num_args = 1..)]
    files: Vec<PathBuf>,
    /// Write the maximum family here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Strategy file.
    #[arg(long)]
    strategy: PathBuf,
    /// Claimed perfect security level (expected d-1 for d = a-c).
    #[arg(long, default_value_t = 1)]
    delta: u32,
}

fn parse_deal(s: &str) -> Result<DealSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("deal must be a,b,c".to_string());
    }
    let nums: Vec<u32> = parts
        .iter()
        .map(|p| p.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    DealSpec::new(nums[0], nums[1], nums[2]).map_err(|e| e.to_string())
}

fn parse_hand(s: &str) -> Result<Hand, String> {
    let cards: Vec<u32> = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    Hand::new(cards).map_err(|e| e.to_string())
}

/// Usage/parse problem -> exit 2.
struct UsageError(String);

enum Outcome {
    Ok,
    PropertyFailed,
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget::from_env();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args, budget),
        Command::Prob(args) => cmd_prob(args),
        Command::LowerBound(args) => cmd_lower_bound(args),
        Command::Construct(cmd) => cmd_construct(cmd, budget),
        Command::Search(cmd) => cmd_search(cmd, budget),
        Command::Audit(args) => cmd_audit(args, budget),
    };
    match outcome {
        Outcome::Ok => ExitCode::SUCCESS,
        Outcome::PropertyFailed => ExitCode::from(1),
        Outcome::Usage(msg) => {
            eprintln!("rcards: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_strategy(path: &Path) -> Result<Strategy, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_strategy(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn read_designs(paths: &[PathBuf]) -> Result<Vec<Design>, UsageError> {
    let mut designs = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        designs.extend(
            parse_design_family(&text)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        );
    }
    Ok(designs)
}

/// Artifact to stdout unless --out is given; report lines go to the other
/// stream so each stream stays byte-stable.
fn deliver(artifact: &str, out: &Option<PathBuf>, report: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => {
            std::fs::write(path, artifact)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            print!("{report}");
        }
        None => {
            print!("{artifact}");
            eprint!("{report}");
        }
    }
    Ok(())
}

fn render_security_witness(w: &SecurityWitness) -> String {
    format!(
        "announcement {}, cathy {}, subset {}, probability {}",
        w.announcement + 1,
        w.cathy_hand,
        w.subset,
        rcards::rational::render(&w.probability)
    )
}

fn cmd_verify(args: VerifyArgs, budget: Budget) -> Outcome {
    let strategy = match read_strategy(&args.strategy) {
        Ok(s) => s,
        Err(UsageError(m)) => return Outcome::Usage(m),
    };
    let mut report = String::new();
    let mut all_hold = true;

    let deal = strategy.deal();
    let cost = communication_complexity(&strategy);
    let _ = writeln!(report, "deal: {deal}");
    let _ = writeln!(report, "m: {}", cost.m);
    let _ = writeln!(report, "log2(m): ~{:.6} bits", cost.bits_approx);

    if strategy.is_complete() {
        let _ = writeln!(report, "covers all hands: yes");
    } else {
        all_hold = false;
        let _ = writeln!(report, "covers all hands: NO");
    }

    let inf = is_informative(&strategy);
    if inf.informative {
        let _ = writeln!(report, "informative: yes");
    } else {
        all_hold = false;
        let _ = writeln!(report, "informative: NO");
        match inf.failure.as_ref().unwrap() {
            InformativeFailure::AliceNotLargerThanCathy { a, c } => {
                let _ = writeln!(report, "  reason: a={a} <= c={c}");
            }
            InformativeFailure::Collision {
                announcement,
                first,
                second,
                bob_hand,
            } => {
                let _ = writeln!(
                    report,
                    "  witness: announcement {}: hands {first} and {second} overlap in >= a-c cards; Bob hand {bob_hand} sees both",
                    announcement + 1
                );
            }
        }
    }

    match equitability(&strategy) {
        Some(g) => {
            let _ = writeln!(report, "equitable: gamma={g}");
        }
        None => {
            let _ = writeln!(report, "equitable: no");
        }
    }

    match weak_security_check_with_budget(&strategy, args.delta, budget) {
        Ok(v) if v.holds => {
            let _ = writeln!(report, "weak {}-secure: yes", args.delta);
        }
        Ok(v) => {
            all_hold = false;
            let _ = writeln!(report, "weak {}-secure: NO", args.delta);
            let _ = writeln!(
                report,
                "  witness: {}",
                render_security_witness(&v.witness.unwrap())
            );
        }
        Err(e) => return Outcome::Usage(e.to_string()),
    }

    match perfect_security_check_with_budget(&strategy, args.delta, budget) {
        Ok(v) if v.holds => {
            let _ = writeln!(report, "perfect {}-secure: yes", args.delta);
        }
        Ok(v) => {
            all_hold = false;
            let _ = writeln!(report, "perfect {}-secure: NO", args.delta);
            let _ = writeln!(
                report,
                "  witness: {}",
                render_security_witness(&v.witness.unwrap())
            );
        }
        Err(e) => return Outcome::Usage(e.to_string()),
    }

    match is_optimal(&strategy) {
        Ok(true) => {
            let _ = writeln!(report, "optimal: yes (m meets the lower bound)");
        }
        Ok(false) => {
            let bound = lower_bound_m(deal).expect("informative implies a > c");
            let _ = writeln!(report, "optimal: no (m={} > lower bound {bound})", cost.m);
        }
        Err(_) => {
            let _ = writeln!(report, "optimal: n/a (not informative)");
        }
    }

    print!("{report}");
    if all_hold {
        Outcome::Ok
    } else {
        Outcome::PropertyFailed
    }
}

fn cmd_prob(args: ProbArgs) -> Outcome {
    let strategy = match (&args.strategy, &args.design) {
        (Some(path), None) => match read_strategy(path) {
            Ok(s) => s,
            Err(UsageError(m)) => return Outcome::Usage(m),
        },
        (None, Some(path)) => {
            let deal = args.deal.expect("clap enforces --deal with --design");
            let designs = match read_designs(std::slice::from_ref(path)) {
                Ok(d) => d,
                Err(UsageError(m)) => return Outcome::Usage(m),
            };
            let announcements: Result<Vec<_>, _> =
                designs.iter().map(Design::to_announcement).collect();
            let announcements = match announcements {
                Ok(a) => a,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            match Strategy::partial(deal, announcements, BTreeMap::new()) {
                Ok(s) => s,
                Err(e) => return Outcome::Usage(e.to_string()),
            }
        }
        _ => return Outcome::Usage("exactly one of --strategy or --design is required".into()),
    };
    if args.announcement == 0 || args.announcement > strategy.m() {
        return Outcome::Usage(format!(
            "announcement {} out of range 1..={}",
            args.announcement,
            strategy.m()
        ));
    }
    let index = args.announcement - 1;
    let possible = possible_hands(strategy.announcement(index), &args.cathy);
    println!("possible hands: {}", possible.len());
    match prob_subset_held(&strategy, index, &args.cathy, &args.subset) {
        Ok(p) => {
            println!(
                "Prob[{} in H_A | i={}, H_C={}] = {} (~{:.6})",
                args.subset,
                args.announcement,
                args.cathy,
                rcards::rational::render(&p),
                rcards::rational::approx(&p)
            );
            Outcome::Ok
        }
        Err(e) => Outcome::Usage(e.to_string()),
    }
}

fn cmd_lower_bound(args: LowerBoundArgs) -> Outcome {
    match lower_bound_m(args.deal) {
        Ok(bound) => {
            println!("{bound}");
            Outcome::Ok
        }
        Err(e) => Outcome::Usage(e.to_string()),
    }
}

fn cmd_construct(cmd: ConstructCmd, budget: Budget) -> Outcome {
    match cmd {
        ConstructCmd::Sts(args) => {
            let design = match sts_construct(args.v) {
                Ok(d) => d,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let report = format!(
                "sts: order {} with {} blocks; 2-({},3,1) design verified\n",
                args.v,
                design.blocks().len(),
                args.v
            );
            match deliver(&emit_design_family(&[design]), &args.out, &report) {
                Ok(()) => Outcome::Ok,
                Err(UsageError(m)) => Outcome::Usage(m),
            }
        }
        ConstructCmd::Cyclic(args) => {
            let design = match cyclic_design(&args.base, args.modulus) {
                Ok(d) => d,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let mut report = format!(
                "cyclic: {} distinct translates on {} points\n",
                design.blocks().len(),
                args.modulus
            );
            if design.k() >= 2 {
                if let Ok(Some(lambda)) = design_lambda(&design, 2) {
                    let _ = writeln!(report, "cyclic: pair coverage lambda={lambda}");
                }
            }
            match deliver(&emit_design_family(&[design]), &args.out, &report) {
                Ok(()) => Outcome::Ok,
                Err(UsageError(m)) => Outcome::Usage(m),
            }
        }
        ConstructCmd::Orbit(args) => {
            let designs = match read_designs(std::slice::from_ref(&args.design)) {
                Ok(d) => d,
                Err(UsageError(m)) => return Outcome::Usage(m),
            };
            if designs.len() != 1 {
                return Outcome::Usage(format!(
                    "orbit needs exactly one design, file holds {}",
                    designs.len()
                ));
            }
            let outcome = match orbit_strategy(&designs[0], args.allow_large_orbit) {
                Ok(o) => o,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let n = outcome.strategy.deal().n();
            let formula_gamma = &outcome.aut_order; // n!/|Aut| equals m; see note below
            let mut report = String::new();
            let _ = writeln!(report, "orbit: m={} distinct announcements", outcome.m);
            let _ = writeln!(
                report,
                "orbit: gamma={} (per-hand replication, verified constant)",
                outcome.gamma
            );
            let _ = writeln!(report, "orbit: |Aut| = n!/m = {}", formula_gamma);
            let _ = writeln!(
                report,
                "orbit: identity m = gamma*(n-t): {} = {}*{} holds",
                outcome.m,
                outcome.gamma,
                n - outcome.t
            );
            if outcome.m as u64 != outcome.gamma {
                let _ = writeln!(
                    report,
                    "orbit: note: reading gamma as n!/|Aut| = {} (with m = gamma*(n-t) = {}) disagrees with the enumerated orbit; the enumerated values above are authoritative",
                    outcome.m,
                    outcome.m * (n - outcome.t) as usize
                );
            }
            match deliver(&emit_strategy(&outcome.strategy), &args.out, &report) {
                Ok(()) => Outcome::Ok,
                Err(UsageError(m)) => Outcome::Usage(m),
            }
        }
        ConstructCmd::Example4(args) => {
            let family = rotated_family_8_4();
            let report = format!(
                "example4: {} designs, 3-(8,4,1) each, every 4-subset twice\n",
                family.len()
            );
            match deliver(&emit_design_family(&family), &args.out, &report) {
                Ok(()) => Outcome::Ok,
                Err(UsageError(m)) => Outcome::Usage(m),
            }
        }
        ConstructCmd::FromDesigns(args) => {
            let designs = match read_designs(&args.files) {
                Ok(d) => d,
                Err(UsageError(m)) => return Outcome::Usage(m),
            };
            let gamma = match args.gamma {
                Some(g) => g,
                None => infer_gamma(&designs),
            };
            let strategy = match strategy_from_designs(&designs, args.deal, gamma) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("rcards: {e}");
                    return Outcome::PropertyFailed;
                }
            };
            let deal = args.deal;
            let t = deal.a().saturating_sub(deal.c());
            let mut report = format!(
                "from-designs: {} announcements, gamma={gamma}\n",
                strategy.m()
            );
            if t >= 1 && t <= deal.a() {
                match verify_large_set(&designs, t) {
                    Ok(is_ls) => {
                        let _ = writeln!(
                            report,
                            "from-designs: large set of {t}-({},{},1) designs: {}",
                            deal.n(),
                            deal.a(),
                            if is_ls { "yes" } else { "no" }
                        );
                    }
                    Err(e) => {
                        let _ = writeln!(report, "from-designs: large-set check failed: {e}");
                    }
                }
            }
            let _ = budget; // constructions are not budgeted
            match deliver(&emit_strategy(&strategy), &args.out, &report) {
                Ok(()) => Outcome::Ok,
                Err(UsageError(m)) => Outcome::Usage(m),
            }
        }
    }
}

fn infer_gamma(designs: &[Design]) -> u64 {
    let mut counts: BTreeMap<&Hand, u64> = BTreeMap::new();
    for d in designs {
        for b in d.blocks() {
            *counts.entry(b).or_insert(0) += 1;
        }
    }
    counts.values().next().copied().unwrap_or(1)
}

fn cmd_search(cmd: SearchCmd, budget: Budget) -> Outcome {
    match cmd {
        SearchCmd::MinM(args) => match min_informative_m_with_budget(args.deal, args.max, budget) {
            Ok(Some(found)) => {
                println!("{}", found.m);
                if let Some(path) = &args.out {
                    if let Err(e) = std::fs::write(path, emit_strategy(&found.witness)) {
                        return Outcome::Usage(format!("{}: {e}", path.display()));
                    }
                    eprintln!("witness strategy written to {}", path.display());
                }
                Outcome::Ok
            }
            Ok(None) => {
                println!("none");
                Outcome::Ok
            }
            Err(e) => Outcome::Usage(e.to_string()),
        },
        SearchCmd::Enumerate(args) => {
            match enumerate_designs_with_budget(args.t, args.v, args.k, budget) {
                Ok(designs) => {
                    let report = format!("designs: {}\n", designs.len());
                    match deliver(&emit_design_family(&designs), &args.out, &report) {
                        Ok(()) => Outcome::Ok,
                        Err(UsageError(m)) => Outcome::Usage(m),
                    }
                }
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
        SearchCmd::Disjoint(args) => {
            let designs = match read_designs(&args.files) {
                Ok(d) => d,
                Err(UsageError(m)) => return Outcome::Usage(m),
            };
            match max_disjoint_family_with_budget(&designs, budget) {
                Ok(best) => {
                    println!("{}", best.size);
                    if let Some(path) = &args.out {
                        if let Err(e) = std::fs::write(path, emit_design_family(&best.family)) {
                            return Outcome::Usage(format!("{}: {e}", path.display()));
                        }
                        eprintln!("family written to {}", path.display());
                    }
                    Outcome::Ok
                }
                Err(e) => Outcome::Usage(e.to_string()),
            }
        }
    }
}

fn cmd_audit(args: AuditArgs, budget: Budget) -> Outcome {
    let strategy = match read_strategy(&args.strategy) {
        Ok(s) => s,
        Err(UsageError(m)) => return Outcome::Usage(m),
    };
    let report = necessary_condition_audit(&strategy, args.delta, budget);
    println!("audit: d={} delta={}", report.d, report.delta);
    for entry in &report.entries {
        match &entry.status {
            AuditStatus::Pass => println!("{}: pass", entry.check),
            AuditStatus::Skipped(why) => println!("{}: skipped ({why})", entry.check),
            AuditStatus::Violation(what) => println!("{}: VIOLATION ({what})", entry.check),
        }
    }
    println!("violations: {}", report.violations());
    if report.passes() {
        Outcome::Ok
    } else {
        Outcome::PropertyFailed
    }
}
