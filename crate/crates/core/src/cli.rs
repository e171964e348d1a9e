//! Command-line surface. [`run_cli`] does all the work and returns the exit
//! code and captured output, so the binary is a thin shell around it.
//!
//! Exit codes: 0 success (including "none found"), 1 demo mismatch,
//! 2 usage or search-cap errors, 3 violated mechanism preconditions.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde::Serialize;

use crate::error::Error;
use crate::generate::{builtin_instance, gen_instance, Builtin, GenParams};
use crate::mechanisms::{
    kiraly_na, translate_1tm, Mechanism, MechanismId, TranslatedMan, TranslatedWoman,
};
use crate::model::{Instance, Matching, PersonId, Side};
use crate::oracle::{
    self, enumerate_stable_matchings_capped, find_coalition_manipulation_with, gadget_audit,
    Gadget, SearchOptions, StrategyKind, StrategySpace, Verdict,
};
use crate::stability::{blocking_pairs, is_stable, matching_problem};
use crate::text::{
    format_list, parse_instance, parse_matching, serialize_instance, serialize_matching,
};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "smti",
    version,
    about = "Stable matching mechanisms with ties and incomplete lists"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a mechanism and print its matching.
    Solve(SolveArgs),
    /// Check a matching against an instance and list all blocking pairs.
    Verify(VerifyArgs),
    /// Exhaustive stable-matching queries.
    Oracle(OracleArgs),
    /// Search for a successful falsification.
    Manipulate(ManipulateArgs),
    /// Print the tie-free rewriting used by onetm-15.
    Translate(TranslateArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Reproduce a published example and compare with the expected result.
    Demo(DemoArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance file.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Built-in instance: i1, i2, i3, na-true, na-manip.
    #[arg(long, value_name = "ID")]
    paper: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    mechanism: String,
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_name = "FILE")]
    matching: PathBuf,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, conflicts_with_all = ["enumerate", "ratio"])]
    max_stable: bool,
    #[arg(long, conflicts_with = "ratio")]
    enumerate: bool,
    /// Matching file whose approximation ratio to report.
    #[arg(long, value_name = "MATCHFILE")]
    ratio: Option<PathBuf>,
    /// Cap on the backtracking search tree.
    #[arg(long, default_value_t = oracle::DEFAULT_SEARCH_CAP)]
    cap: u128,
}

#[derive(Args, Debug)]
struct ManipulateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    mechanism: String,
    #[arg(long, value_name = "PERSON")]
    person: Option<String>,
    /// exhaustive-strict, exhaustive-ties, truncate or permute.
    #[arg(long)]
    space: String,
    /// Comma-separated coalition, e.g. m1,m2.
    #[arg(long, value_name = "LIST")]
    coalition: Option<String>,
    #[arg(long)]
    max_opposite: Option<usize>,
    #[arg(long)]
    max_candidates: Option<u128>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct TranslateArgs {
    #[command(flatten)]
    source: Source,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    men: usize,
    #[arg(long)]
    women: usize,
    #[arg(long)]
    accept: f64,
    #[arg(long, default_value_t = 0.0)]
    ties_men: f64,
    #[arg(long, default_value_t = 0.0)]
    ties_women: f64,
    #[arg(long)]
    one_tm: bool,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct DemoArgs {
    /// i1, i2, i3 or na-counter.
    #[arg(long, value_name = "ID")]
    paper: String,
}

enum Failure {
    Usage(String),
    Cap(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else if e.is_precondition() || matches!(e, Error::Unstable | Error::InvalidMatching(_)) {
            Failure::Precondition(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CmdResult = Result<(i32, String), Failure>;

pub fn run_cli<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 2,
                    stderr: text,
                    ..Default::default()
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    ..Default::default()
                }
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Manipulate(a) => manipulate(a),
        Command::Translate(a) => translate(a),
        Command::Gen(a) => generate(a),
        Command::Demo(a) => demo(a),
    };
    match result {
        Ok((code, stdout)) => CliOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) | Err(Failure::Cap(msg)) => CliOutput {
            code: 2,
            stderr: format!("error: {msg}\n"),
            ..Default::default()
        },
        Err(Failure::Precondition(msg)) => CliOutput {
            code: 3,
            stderr: format!("error: {msg}\n"),
            ..Default::default()
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(source: &Source) -> Result<Instance, Failure> {
    match (&source.input, &source.paper) {
        (Some(path), _) => parse_instance(&read(path)?)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        (None, Some(id)) => Ok(builtin_instance(id.parse::<Builtin>()?)),
        (None, None) => Err(Failure::Usage("one of --in or --paper is required".into())),
    }
}

fn load_matching(path: &Path) -> Result<Matching, Failure> {
    parse_matching(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct PairJson {
    man: usize,
    woman: usize,
}

#[derive(Serialize)]
struct SolveJson {
    mechanism: String,
    matching: Vec<PairJson>,
    size: usize,
    stable: bool,
}

fn solve(a: SolveArgs) -> CmdResult {
    let mech: MechanismId = a.mechanism.parse()?;
    let inst = load(&a.source)?;
    let m = mech.run(&inst)?;
    let stable = is_stable(&inst, &m)?;
    let out = if a.format == "json" {
        let json = SolveJson {
            mechanism: mech.to_string(),
            matching: m
                .pairs()
                .iter()
                .map(|&(man, woman)| PairJson { man, woman })
                .collect(),
            size: m.len(),
            stable,
        };
        serde_json::to_string_pretty(&json).expect("plain data serializes") + "\n"
    } else {
        format!(
            "{}size {}\nstable {stable}\n",
            serialize_matching(&m),
            m.len()
        )
    };
    Ok((0, out))
}

fn verify(a: VerifyArgs) -> CmdResult {
    let inst = load(&a.source)?;
    let m = load_matching(&a.matching)?;
    if let Some(problem) = matching_problem(&inst, &m) {
        return Err(Failure::Precondition(format!(
            "invalid matching: {problem}"
        )));
    }
    let bps = blocking_pairs(&inst, &m)?;
    let mut out = format!(
        "matching valid\nsize {}\nstable {}\n",
        m.len(),
        bps.is_empty()
    );
    for bp in &bps {
        let _ = writeln!(out, "blocking {bp}");
    }
    Ok((0, out))
}

fn ratio_text(r: Ratio<u64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn run_oracle(a: OracleArgs) -> CmdResult {
    let inst = load(&a.source)?;
    let all = enumerate_stable_matchings_capped(&inst, a.cap)?;
    let best = all.iter().map(Matching::len).max().unwrap_or(0);
    let mut out = String::new();
    if a.enumerate {
        let _ = writeln!(out, "count {}", all.len());
        for m in &all {
            let _ = writeln!(out, "{m} size {}", m.len());
        }
    } else if let Some(path) = &a.ratio {
        let m = load_matching(path)?;
        if let Some(problem) = matching_problem(&inst, &m) {
            return Err(Failure::Precondition(format!(
                "invalid matching: {problem}"
            )));
        }
        if !is_stable(&inst, &m)? {
            return Err(Error::Unstable.into());
        }
        let ratio = if m.is_empty() {
            Ratio::from_integer(1)
        } else {
            Ratio::new(best as u64, m.len() as u64)
        };
        let _ = writeln!(
            out,
            "size {}\nmax-size {best}\nratio {}",
            m.len(),
            ratio_text(ratio)
        );
    } else {
        let witness = all
            .iter()
            .find(|m| m.len() == best)
            .cloned()
            .unwrap_or_default();
        let _ = write!(out, "size {best}\n{}", serialize_matching(&witness));
    }
    Ok((0, out))
}

fn manipulate(a: ManipulateArgs) -> CmdResult {
    let mech: MechanismId = a.mechanism.parse()?;
    let inst = load(&a.source)?;
    let mut coalition: Vec<PersonId> = match &a.coalition {
        Some(list) => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    if let Some(p) = &a.person {
        let p: PersonId = p.parse()?;
        if !coalition.contains(&p) {
            coalition.insert(0, p);
        }
    }
    if coalition.is_empty() {
        return Err(Failure::Usage("give --person or --coalition".into()));
    }
    let kind: StrategyKind = a.space.parse()?;
    let mut space = StrategySpace::new(kind);
    space.max_opposite = a.max_opposite;
    space.max_candidates = a.max_candidates;
    let opts = SearchOptions {
        jobs: a.jobs.max(1),
    };

    let found = find_coalition_manipulation_with(&inst, &mech, &coalition, &space, &opts)?;
    let out = match found {
        None => "none found\n".to_string(),
        Some(w) => {
            let mut out = String::from("manipulation found\n");
            let names: Vec<String> = w.manipulators.iter().map(PersonId::to_string).collect();
            let _ = writeln!(out, "manipulators {}", names.join(","));
            for (p, list) in w.manipulators.iter().zip(&w.falsified) {
                let _ = writeln!(out, "falsified {p}: {}", format_list(p.side, list));
            }
            let _ = writeln!(out, "honest {}", w.honest);
            let _ = writeln!(out, "manipulated {}", w.manipulated);
            out
        }
    };
    Ok((0, out))
}

fn translate(a: TranslateArgs) -> CmdResult {
    let inst = load(&a.source)?;
    let (tr, map) = translate_1tm(&inst)?;
    let mut out = String::new();
    for man in 1..=tr.num_men() {
        let role = match map.man_role(man) {
            TranslatedMan::A(i) => format!("a{i}"),
            TranslatedMan::B(j) => format!("b{j}"),
        };
        let _ = writeln!(out, "# m{man} = {role}");
    }
    for woman in 1..=tr.num_women() {
        let role = match map.woman_role(woman) {
            TranslatedWoman::S(j) => format!("s{j}"),
            TranslatedWoman::T(j) => format!("t{j}"),
        };
        let _ = writeln!(out, "# w{woman} = {role}");
    }
    out.push_str(&serialize_instance(&tr));
    Ok((0, out))
}

fn generate(a: GenArgs) -> CmdResult {
    let p = GenParams {
        num_men: a.men,
        num_women: a.women,
        acceptance_probability: a.accept,
        tie_probability_men: a.ties_men,
        tie_probability_women: a.ties_women,
        one_tm: a.one_tm,
        seed: a.seed,
    };
    p.validate()?;
    Ok((0, serialize_instance(&gen_instance(&p))))
}

struct Checks {
    out: String,
    failed: bool,
}

impl Checks {
    fn new(title: &str) -> Self {
        Checks {
            out: format!("{title}\n"),
            failed: false,
        }
    }

    fn check(&mut self, label: &str, expected: impl ToString, computed: impl ToString) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let tag = if e == c { "ok" } else { "MISMATCH" };
        self.failed |= e != c;
        let _ = writeln!(
            self.out,
            "[{tag}] {label}\n  expected: {e}\n  computed: {c}"
        );
    }

    fn finish(mut self) -> (i32, String) {
        let _ = writeln!(
            self.out,
            "result: {}",
            if self.failed { "mismatch" } else { "ok" }
        );
        (i32::from(self.failed), self.out)
    }
}

fn show_all(ms: &[Matching]) -> String {
    ms.iter()
        .map(Matching::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn matching(pairs: &[(usize, usize)]) -> Matching {
    Matching::from_pairs(pairs.iter().copied()).expect("static matchings are valid")
}

fn audit_checks(checks: &mut Checks, mech: MechanismId, gadget: Gadget) -> Result<(), Failure> {
    let r = gadget_audit(&mech, gadget)?;
    checks.check(
        &format!("{mech} on {gadget}: verdict"),
        format!("{:?}", Verdict::Consistent),
        format!("{:?}", r.verdict),
    );
    let _ = writeln!(checks.out, "  output {} ; {}", r.output, r.detail);
    Ok(())
}

fn demo(a: DemoArgs) -> CmdResult {
    match a.paper.as_str() {
        "i1" | "i2" => {
            let (gadget, mech) = if a.paper == "i1" {
                (Gadget::I1, MechanismId::TiebreakMan)
            } else {
                (Gadget::I2, MechanismId::TiebreakWoman)
            };
            let inst = gadget.instance();
            let mut expected = vec![matching(&[(1, 1), (2, 2)]), matching(&[(1, 2), (2, 3)])];
            if gadget == Gadget::I2 {
                expected = expected.iter().map(Matching::swapped).collect();
                expected.sort();
            }
            let mut c = Checks::new(&format!("{gadget}: two maximum stable matchings; every (2-e)-approximate mechanism is manipulable"));
            c.check(
                "stable matchings",
                show_all(&expected),
                show_all(&oracle::enumerate_stable_matchings(&inst)?),
            );
            c.check("maximum stable size", 2, oracle::max_stable_size(&inst)?.0);
            audit_checks(&mut c, mech, gadget)?;
            Ok(c.finish())
        }
        "i3" => {
            let inst = Gadget::I3.instance();
            let mut c = Checks::new(
                "I3: men-only ties; every (1.5-e)-approximate mechanism is man-manipulable",
            );
            let expected = [
                matching(&[(1, 1), (2, 2), (3, 3)]),
                matching(&[(1, 2), (2, 3), (3, 4)]),
            ];
            c.check(
                "size-3 stable matchings",
                show_all(&expected),
                show_all(&oracle::maximum_stable_matchings(&inst)?),
            );
            c.check("maximum stable size", 3, oracle::max_stable_size(&inst)?.0);
            let out = MechanismId::OneTmFifteen.run(&inst)?;
            c.check("onetm-15 output size", 3, out.len());
            audit_checks(&mut c, MechanismId::OneTmFifteen, Gadget::I3)?;
            Ok(c.finish())
        }
        "na-counter" => {
            let truth = builtin_instance(Builtin::NaTrue);
            let lie = builtin_instance(Builtin::NaManip);
            let mut c = Checks::new("NA counter-example: m1 swaps w1 and w2 and gains w2");
            c.check(
                "honest output",
                matching(&[(2, 1), (3, 3), (4, 2)]),
                kiraly_na(&truth)?,
            );
            c.check(
                "manipulated output",
                matching(&[(1, 2), (2, 3), (4, 1)]),
                kiraly_na(&lie)?,
            );
            let w = oracle::find_manipulation(
                &truth,
                &MechanismId::KiralyNa,
                PersonId::man(1),
                &StrategySpace::permute(),
            )?;
            c.check(
                "falsified list found by search",
                "w1 w2",
                w.map_or_else(
                    || "none".to_string(),
                    |w| format_list(Side::Man, &w.falsified[0]),
                ),
            );
            Ok(c.finish())
        }
        other => Err(Failure::Usage(format!(
            "unknown demo {other:?} (expected i1, i2, i3 or na-counter)"
        ))),
    }
}
