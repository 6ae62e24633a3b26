//! `conjlambek`: membership, proof search, translations and circuit tools.
//!
//! Exit codes: 0 yes, 1 no, 2 usage or input error, 3 budget exhausted.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conjlambek::cvp::{
    csp_member, cvp_member, decode_circuit, encode_circuit, enumerate_circuits, eval_circuit,
    Circuit,
};
use conjlambek::fuzz::{
    axiom_substitution, conjunction_invertibility, conservativity, cut_admissibility,
    embedding_agreement, CheckReport, FuzzConfig,
};
use conjlambek::lang::enumerate_by;
use conjlambek::prover::{LambekParser, LambekProver, MacllProver, ProverError, Strategy};
use conjlambek::syntax::{print_ccg, print_cg, print_lambek};
use conjlambek::transforms::{
    add_empty_string, bundle_to_ccg, ccg_to_cg, ccg_to_malc, split_and_join,
    to_disjunction_grammar, QuotientBundle,
};
use conjlambek::{
    ccg_derive, ccg_enumerate, cg_derive, cg_enumerate, check_odd_normal_form, parse_grammar_file,
    parse_macll_sequent, parse_sequent, BudgetExceeded, Calculus, Category, Ccg, CcgError, CgError,
    ConjGrammar, GrammarFile, LambekGrammar, DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(
    name = "conjlambek",
    version,
    about = "Conjunctive grammars, categorial grammars and Lambek calculus"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Cap on enumerated strings or proof-search expansions.
    #[arg(long, global = true, env = "CONJLAMBEK_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a grammar generates a word.
    Member {
        #[arg(long)]
        grammar: PathBuf,
        word: String,
        /// Also print a derivation when the word is accepted.
        #[arg(long)]
        derivation: bool,
    },
    /// Search for a cut-free proof. Sequents starting with `|-` are read as MACLL.
    Prove {
        #[arg(long, default_value = "L")]
        calculus: Calculus,
        #[arg(long, value_enum, default_value_t = StrategyArg::Focused)]
        strategy: StrategyArg,
        #[arg(allow_hyphen_values = true)]
        sequent: String,
    },
    /// Translate a grammar into another formalism.
    Translate {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// List the words of length at most `max-len` in a grammar's language.
    Enumerate {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Check the odd normal form of a conjunctive grammar or quotient bundle.
    CheckOddForm {
        #[arg(long)]
        grammar: PathBuf,
    },
    /// Sequential NOR circuits.
    Cvp {
        #[command(subcommand)]
        command: CvpCommand,
    },
    /// Randomized cross-checks of the provers and translations.
    Crosscheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        max_connectives: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CvpCommand {
    /// Encode a circuit such as `in:0,1 nor:1 nor:2`.
    Encode { circuit: String },
    /// Value of the last gate.
    Eval { circuit: String },
    /// Whether the circuit-value grammar accepts an encoding.
    Member { word: String },
    /// Whether some 0/1 filling of the `?` positions is accepted.
    Sat { pattern: String },
    /// Check encode, evaluate and grammar membership agree on all small circuits.
    Fuzz {
        #[arg(long)]
        max_gates: usize,
        #[arg(long, default_value_t = 3)]
        max_inputs: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Focused,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Cg,
    Ccg,
    Malc,
    MalcEmpty,
    MalcDisj,
    MalcDisjEmpty,
}

enum Failure {
    Input(String),
    Budget(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Budget(m) => f.write_str(m),
        }
    }
}

impl From<BudgetExceeded> for Failure {
    fn from(e: BudgetExceeded) -> Self {
        Failure::Budget(e.to_string())
    }
}

impl From<ProverError> for Failure {
    fn from(e: ProverError) -> Self {
        match e {
            ProverError::Budget(b) => b.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<CgError> for Failure {
    fn from(e: CgError) -> Self {
        match e {
            CgError::Budget(b) => b.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<CcgError> for Failure {
    fn from(e: CcgError) -> Self {
        match e {
            CcgError::Budget(b) => b.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<conjlambek::transforms::TransformError> for Failure {
    fn from(e: conjlambek::transforms::TransformError) -> Self {
        match e {
            conjlambek::transforms::TransformError::Budget(b) => b.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// What a command produced: the rendering for each output mode and whether
/// the answer was yes.
struct Report {
    text: String,
    json: Value,
    latex: Option<String>,
    yes: bool,
}

impl Report {
    fn new(text: String, json: Value, yes: bool) -> Self {
        Report {
            text,
            json,
            latex: None,
            yes,
        }
    }

    fn latex(mut self, latex: Option<String>) -> Self {
        self.latex = latex;
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.yes));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exhausted: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(cli: &Cli, r: &Report) -> Result<(), Failure> {
    let mut body = match cli.output {
        Output::Text => r.text.clone(),
        Output::Json => serde_json::to_string_pretty(&r.json).expect("JSON values serialize"),
        Output::Latex => r.latex.clone().unwrap_or_else(|| r.text.clone()),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Input(e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Member {
            grammar,
            word,
            derivation,
        } => member(cli, &load(grammar)?, word, *derivation),
        Command::Prove {
            calculus,
            strategy,
            sequent,
        } => prove(cli, *calculus, *strategy, sequent),
        Command::Translate { grammar, to } => translate(&load(grammar)?, *to),
        Command::Enumerate { grammar, max_len } => enumerate(cli, &load(grammar)?, *max_len),
        Command::CheckOddForm { grammar } => check_odd_form(&load(grammar)?),
        Command::Cvp { command } => cvp(command),
        Command::Crosscheck {
            samples,
            max_connectives,
        } => crosscheck(cli, *samples, *max_connectives),
    }
}

fn load(path: &Path) -> Result<GrammarFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_grammar_file(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn answer(yes: bool) -> &'static str {
    if yes {
        "yes"
    } else {
        "no"
    }
}

fn member(
    cli: &Cli,
    file: &GrammarFile,
    w: &str,
    want_derivation: bool,
) -> Result<Report, Failure> {
    let (yes, derivation, latex): (bool, Value, Option<String>) = match file {
        GrammarFile::Cg(g) => {
            let d = cg_derive(g, w)?;
            let latex = d.as_ref().map(|d| d.to_latex(w));
            (d.is_some(), json!(d), latex)
        }
        GrammarFile::Bcg(g) | GrammarFile::Ccg(g) => {
            let target = Category::Prim(g.target().clone());
            let d = if w.is_empty() {
                None
            } else {
                ccg_derive(g, &target, w)?
            };
            let latex = d.as_ref().map(|d| d.to_latex(w));
            (d.is_some(), json!(d), latex)
        }
        GrammarFile::Lambek(g) => {
            let d = LambekParser::new(g).with_budget(cli.budget).derivation(w)?;
            let latex = d.as_ref().map(|d| d.to_latex());
            (d.is_some(), json!(d), latex)
        }
        GrammarFile::Bundle(b) => (bundle_member(b, w)?, Value::Null, None),
    };
    let mut text = answer(yes).to_string();
    let mut out = json!({ "kind": file.kind(), "word": w, "member": yes });
    if want_derivation && yes {
        text.push('\n');
        text.push_str(&serde_json::to_string_pretty(&derivation).expect("JSON values serialize"));
        out["derivation"] = derivation;
    }
    Ok(Report::new(text, out, yes).latex(if want_derivation { latex } else { None }))
}

fn bundle_member(b: &QuotientBundle, w: &str) -> Result<bool, Failure> {
    let mut chars = w.chars();
    let Some(a) = chars.next() else {
        return Ok(false);
    };
    let rest = chars.as_str();
    let Some(e) = b.entries().get(&a) else {
        return Ok(false);
    };
    if rest.is_empty() {
        return Ok(e.eps);
    }
    match &e.grammar {
        Some(g) => Ok(conjlambek::cg_member(g, rest)?),
        None => Ok(false),
    }
}

fn prove(
    cli: &Cli,
    calculus: Calculus,
    strategy: StrategyArg,
    text: &str,
) -> Result<Report, Failure> {
    let strategy = match strategy {
        StrategyArg::Focused => Strategy::Focused,
        StrategyArg::Exhaustive => Strategy::Exhaustive,
    };
    let syntax = |e: conjlambek::syntax::SyntaxError| Failure::Input(e.to_string());
    if text.trim_start().starts_with("|-") {
        let s = parse_macll_sequent(text).map_err(syntax)?;
        let mut p = MacllProver::new()
            .with_budget(cli.budget)
            .with_strategy(strategy);
        let proof = p.prove(&s)?;
        let yes = proof.is_some();
        let json = json!({ "calculus": "MACLL", "sequent": s, "derivable": yes, "proof": proof });
        let text = match &proof {
            Some(pr) => format!("yes\n{}", pr.to_text()),
            None => "no".into(),
        };
        return Ok(Report::new(text, json, yes).latex(proof.map(|p| p.to_latex())));
    }
    let s = parse_sequent(text).map_err(syntax)?;
    let mut p = LambekProver::new(calculus)
        .with_budget(cli.budget)
        .with_strategy(strategy);
    let proof = p.prove(&s)?;
    let yes = proof.is_some();
    let json = json!({ "calculus": calculus, "sequent": s, "derivable": yes, "proof": proof });
    let text = match &proof {
        Some(pr) => format!("yes\n{}", pr.to_text()),
        None => "no".into(),
    };
    Ok(Report::new(text, json, yes).latex(proof.map(|p| p.to_latex())))
}

fn categorial(file: &GrammarFile) -> Result<Ccg, Failure> {
    match file {
        GrammarFile::Bcg(g) | GrammarFile::Ccg(g) => Ok(g.clone()),
        GrammarFile::Bundle(b) => Ok(bundle_to_ccg(b)?),
        other => Err(Failure::Input(format!(
            "expected a categorial grammar or bundle, got {}",
            other.kind()
        ))),
    }
}

fn translate(file: &GrammarFile, to: Target) -> Result<Report, Failure> {
    let text = match (file, to) {
        (GrammarFile::Bundle(b), Target::Cg) => print_cg(&split_and_join(b)?),
        (_, Target::Cg) => print_cg(&ccg_to_cg(&categorial(file)?)),
        (_, Target::Ccg) => print_ccg(&categorial(file)?),
        (_, Target::Malc) => print_lambek(&ccg_to_malc(&categorial(file)?)),
        (_, Target::MalcEmpty) => {
            print_lambek(&add_empty_string(&ccg_to_malc(&categorial(file)?))?)
        }
        (_, Target::MalcDisj) => print_lambek(&to_disjunction_grammar(&categorial(file)?, false)?),
        (_, Target::MalcDisjEmpty) => {
            print_lambek(&to_disjunction_grammar(&categorial(file)?, true)?)
        }
    };
    let json = json!({ "from": file.kind(), "grammar": text });
    Ok(Report::new(text, json, true))
}

fn enumerate(cli: &Cli, file: &GrammarFile, max_len: usize) -> Result<Report, Failure> {
    let words = match file {
        GrammarFile::Cg(g) => cg_enumerate(g, max_len, cli.budget)?,
        GrammarFile::Bcg(g) | GrammarFile::Ccg(g) => ccg_enumerate(g, max_len, cli.budget)?,
        GrammarFile::Lambek(g) => lambek_enumerate(g, max_len, cli.budget)?,
        GrammarFile::Bundle(b) => {
            let g: ConjGrammar = split_and_join(b)?;
            cg_enumerate(&g, max_len, cli.budget)?
        }
    };
    let text = words
        .iter()
        .map(|w| if w.is_empty() { "ε" } else { w.as_str() })
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({ "kind": file.kind(), "max_len": max_len, "words": words });
    let yes = !words.is_empty();
    Ok(Report::new(text, json, yes))
}

fn lambek_enumerate(
    g: &LambekGrammar,
    max_len: usize,
    budget: u64,
) -> Result<Vec<String>, Failure> {
    let alphabet: Vec<char> = g.alphabet().collect();
    let mut parser = LambekParser::new(g).with_budget(budget);
    let mut error = None;
    let words = enumerate_by(&alphabet, max_len, budget, |w| match parser.member(w) {
        Ok(b) => b,
        Err(e) => {
            error.get_or_insert(e);
            false
        }
    })?;
    match error {
        Some(e) => Err(e.into()),
        None => Ok(words),
    }
}

fn check_odd_form(file: &GrammarFile) -> Result<Report, Failure> {
    let violations: Vec<String> = match file {
        GrammarFile::Cg(g) => check_odd_normal_form(g).violations,
        GrammarFile::Bundle(b) => b
            .entries()
            .iter()
            .filter_map(|(a, e)| e.grammar.as_ref().map(|g| (a, check_odd_normal_form(g))))
            .flat_map(|(a, r)| {
                r.violations
                    .into_iter()
                    .map(move |v| format!("[{a:?}] {v}"))
            })
            .collect(),
        other => {
            return Err(Failure::Input(format!(
                "odd normal form applies to cg and bundle files, not {}",
                other.kind()
            )))
        }
    };
    let yes = violations.is_empty();
    let text = if yes {
        "odd normal form".to_string()
    } else {
        violations.join("\n")
    };
    Ok(Report::new(
        text,
        json!({ "odd_form": yes, "violations": violations }),
        yes,
    ))
}

fn circuit(s: &str) -> Result<Circuit, Failure> {
    s.parse()
        .map_err(|e: conjlambek::cvp::CircuitError| Failure::Input(e.to_string()))
}

fn cvp(command: &CvpCommand) -> Result<Report, Failure> {
    match command {
        CvpCommand::Encode { circuit: c } => {
            let c = circuit(c)?;
            let w = encode_circuit(&c);
            Ok(Report::new(
                w.clone(),
                json!({ "circuit": c.to_string(), "encoding": w }),
                true,
            ))
        }
        CvpCommand::Eval { circuit: c } => {
            let c = circuit(c)?;
            let v = eval_circuit(&c);
            Ok(Report::new(
                u8::from(v).to_string(),
                json!({ "circuit": c.to_string(), "value": v }),
                v,
            ))
        }
        CvpCommand::Member { word } => {
            let yes = cvp_member(word);
            Ok(Report::new(
                answer(yes).into(),
                json!({ "word": word, "member": yes }),
                yes,
            ))
        }
        CvpCommand::Sat { pattern } => {
            let yes = csp_member(pattern, 1 << 20)?;
            Ok(Report::new(
                answer(yes).into(),
                json!({ "pattern": pattern, "satisfiable": yes }),
                yes,
            ))
        }
        CvpCommand::Fuzz {
            max_gates,
            max_inputs,
        } => {
            let circuits = enumerate_circuits(*max_gates, *max_inputs);
            let mut failures = Vec::new();
            for c in &circuits {
                let w = encode_circuit(c);
                if decode_circuit(&w).as_ref() != Some(c) {
                    failures.push(format!("{c}: encoding {w} does not decode back"));
                }
                if cvp_member(&w) != eval_circuit(c) {
                    failures.push(format!("{c}: grammar and evaluator disagree on {w}"));
                }
            }
            let yes = failures.is_empty();
            let text = if yes {
                format!("{} circuits agree", circuits.len())
            } else {
                failures.join("\n")
            };
            Ok(Report::new(
                text,
                json!({ "circuits": circuits.len(), "failures": failures }),
                yes,
            ))
        }
    }
}

fn crosscheck(cli: &Cli, samples: usize, max_connectives: usize) -> Result<Report, Failure> {
    let cfg = FuzzConfig {
        seed: cli.seed,
        samples,
        max_connectives,
        budget: cli.budget,
        ..FuzzConfig::default()
    };
    let reports: Vec<CheckReport> = vec![
        embedding_agreement(&cfg),
        conjunction_invertibility(&cfg),
        cut_admissibility(&cfg),
        conservativity(&cfg),
        axiom_substitution(&conjlambek::samples::triple_power_ccg(), 3, 3),
    ];
    let yes = reports.iter().all(|r| r.failures.is_empty());
    let text = reports
        .iter()
        .map(|r| {
            let mut line = format!(
                "{} {}: {} checked, {} drawn, {} over budget",
                if r.failures.is_empty() {
                    "ok  "
                } else {
                    "FAIL"
                },
                r.name,
                r.checked,
                r.drawn,
                r.budget_exhausted
            );
            for f in &r.failures {
                line.push_str(&format!("\n    {f}"));
            }
            line
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::new(
        text,
        json!({ "seed": cli.seed, "checks": reports }),
        yes,
    ))
}
