//! The `hairpin` command-line tool. [`run`] takes the argument list and the
//! output streams and returns the process exit status, so the binary is a
//! thin wrapper and the commands are testable in-process.
//!
//! Exit status: 0 success (and `Regular` for `decide`), 1 error or failed
//! verification, 2 `NonRegular`, 3 `Unknown`, 64 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::alphabet::{compose_macrons, InvolutionAlphabet};
use crate::analysis::{analyze, PrimerAnalysis};
use crate::automata::Nfa;
use crate::constructions::{build_one_sided, witness_family, witness_word};
use crate::decider::{decide, default_verify_bound, DecideOptions, Verdict};
use crate::error::{Error, Result};
use crate::hc::{closure, hc_step, trace, HcStep, Sides};
use crate::word::{Primer, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "hairpin", version, about = "Iterated hairpin completion toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Alphabet file: one `letter<TAB>complement` pair per line.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "dna")]
    pub alphabet: Option<PathBuf>,
    /// Use the DNA alphabet (A<->T, C<->G) instead of the default a..z / ā..z̄.
    #[arg(long, global = true)]
    pub dna: bool,
    /// The primer α.
    #[arg(long, global = true, value_name = "WORD")]
    pub primer: Option<String>,
    /// Length bound for closures and checks (default |w₀| + 6k + 16).
    #[arg(long, global = true, value_name = "N")]
    pub bound: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Both)]
    pub side: SideArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report the α-prefixes, ᾱ-suffixes and class of a word.
    Analyze { word: String },
    /// List the one-step hairpin completions of a word.
    Step { word: String },
    /// Enumerate the bounded iterated completion.
    Closure {
        word: String,
        /// Print a derivation of this member instead of the member list.
        #[arg(long, value_name = "TARGET")]
        trace: Option<String>,
    },
    /// Build an automaton for the iterated completion.
    Build { word: String },
    /// Decide whether the iterated completion is regular.
    Decide { word: String },
    /// Compare the constructed automaton with the bounded closure.
    Verify { word: String },
    /// Check the non-regularity witness family of a (3,2)-word.
    Witness {
        word: String,
        /// Largest exponent that must fit in the bound.
        #[arg(long, value_name = "N", default_value_t = 3)]
        i_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl From<SideArg> for Sides {
    fn from(s: SideArg) -> Sides {
        match s {
            SideArg::Left => Sides::Left,
            SideArg::Right => Sides::Right,
            SideArg::Both => Sides::Both,
        }
    }
}

/// Resolved global options.
pub struct RunConfig {
    pub alphabet: Arc<InvolutionAlphabet>,
    pub primer: Primer,
    pub bound: Option<usize>,
    pub format: Option<Format>,
    pub sides: Sides,
    latin: bool,
}

impl RunConfig {
    fn from_args(g: &GlobalArgs) -> std::result::Result<Self, CliError> {
        let (alphabet, latin) = match (&g.alphabet, g.dna) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                (InvolutionAlphabet::parse(&text)?, false)
            }
            (None, true) => (InvolutionAlphabet::dna(), false),
            (None, false) => (InvolutionAlphabet::latin(), true),
        };
        let primer_text = g.primer.as_deref().ok_or(CliError::Usage("--primer is required".into()))?;
        let primer_text = if latin { compose_macrons(primer_text) } else { primer_text.to_owned() };
        let primer = Primer::parse(&alphabet, &primer_text)?;
        Ok(RunConfig {
            alphabet,
            primer,
            bound: g.bound,
            format: g.format,
            sides: g.side.into(),
            latin,
        })
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        if self.latin {
            Word::parse(&self.alphabet, &compose_macrons(text))
        } else {
            Word::parse(&self.alphabet, text)
        }
    }

    fn bound_for(&self, w: &Word) -> Result<usize> {
        let bound = self.bound.unwrap_or_else(|| default_verify_bound(w, &self.primer));
        if bound < w.len() {
            return Err(Error::BoundTooSmall {
                bound,
                required: w.len(),
            });
        }
        Ok(bound)
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, CliError> {
    let config = RunConfig::from_args(&cli.global)?;
    let rendered = match &cli.command {
        Command::Analyze { word } => cmd_analyze(&config, word)?,
        Command::Step { word } => cmd_step(&config, word)?,
        Command::Closure { word, trace } => cmd_closure(&config, word, trace.as_deref())?,
        Command::Build { word } => cmd_build(&config, word)?,
        Command::Decide { word } => cmd_decide(&config, word)?,
        Command::Verify { word } => cmd_verify(&config, word)?,
        Command::Witness { word, i_max } => cmd_witness(&config, word, *i_max)?,
    };
    out.write_all(rendered.text.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))?;
    if !rendered.text.ends_with('\n') {
        let _ = writeln!(out);
    }
    Ok(rendered.code)
}

/// Text to print and exit status.
pub struct Rendered {
    pub text: String,
    pub code: i32,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, code: EXIT_OK }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn words_json(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| Value::String(w.to_string())).collect())
}

/// JSON report of an analysis, as printed by `analyze`.
pub fn analysis_json(a: &PrimerAnalysis) -> Value {
    json!({
        "word": a.word().to_string(),
        "primer": a.primer().alpha().to_string(),
        "k": a.k(),
        "m": a.m(),
        "n": a.n(),
        "u": words_json(a.alpha_prefixes()),
        "v_bar": words_json(a.cbar_suffixes()),
        "v": words_json(a.v_words()),
        "alpha_positions": a.alpha_positions(),
        "alpha_bar_positions": a.cbar_positions(),
        "non_crossing": a.is_non_crossing(),
        "starts_with_alpha": a.starts_with_alpha(),
        "ends_with_alpha_bar": a.ends_with_cbar_alpha(),
        "anchored": a.is_anchored(),
    })
}

fn join(ws: &[Word]) -> String {
    ws.iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
}

pub fn cmd_analyze(config: &RunConfig, word: &str) -> Result<Rendered> {
    let a = analyze(&config.word(word)?, &config.primer)?;
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Text => format!(
            "word: {}\nclass: ({}, {})\nu: {}\nv̄: {}\nnon-crossing: {}\nanchored: {}\n",
            a.word(),
            a.m(),
            a.n(),
            join(a.alpha_prefixes()),
            join(a.cbar_suffixes()),
            a.is_non_crossing(),
            a.is_anchored()
        ),
        _ => pretty(&analysis_json(&a)),
    };
    Ok(Rendered::ok(text))
}

fn step_json(s: &HcStep) -> Value {
    json!({
        "direction": s.direction,
        "anchor": s.anchor,
        "appended": s.appended.to_string(),
        "child": s.child.to_string(),
    })
}

fn step_text(s: &HcStep) -> String {
    let dir = serde_json::to_value(s.direction).expect("serializable");
    format!("{}\t{}\t{}", dir.as_str().unwrap_or_default(), s.anchor, s.child)
}

fn render_steps(config: &RunConfig, steps: &[HcStep], default: Format) -> String {
    match config.format.unwrap_or(default) {
        Format::Json => pretty(&Value::Array(steps.iter().map(step_json).collect())),
        _ => steps.iter().map(step_text).collect::<Vec<_>>().join("\n"),
    }
}

pub fn cmd_step(config: &RunConfig, word: &str) -> Result<Rendered> {
    let w = config.word(word)?;
    let steps: Vec<HcStep> = hc_step(&w, &config.primer)?
        .into_iter()
        .filter(|s| match config.sides {
            Sides::Both => true,
            Sides::Left => s.direction == crate::hc::Direction::Left,
            Sides::Right => s.direction == crate::hc::Direction::Right,
        })
        .collect();
    Ok(Rendered::ok(render_steps(config, &steps, Format::Text)))
}

pub fn cmd_closure(config: &RunConfig, word: &str, target: Option<&str>) -> Result<Rendered> {
    let w = config.word(word)?;
    let bound = config.bound_for(&w)?;
    let result = closure(&w, &config.primer, bound, config.sides)?;
    if let Some(t) = target {
        let steps = trace(&result, &config.word(t)?)?;
        return Ok(Rendered::ok(render_steps(config, &steps, Format::Text)));
    }
    let members = result.sorted_members();
    let text = match config.format.unwrap_or(Format::Text) {
        Format::Json => pretty(&json!({
            "seed": w.to_string(),
            "bound": bound,
            "sides": config.sides.to_string(),
            "count": members.len(),
            "members": words_json(&members),
        })),
        _ => members.iter().map(Word::to_string).collect::<Vec<_>>().join("\n"),
    };
    Ok(Rendered::ok(text))
}

fn render_nfa(nfa: &Nfa, format: Format) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(nfa.to_json()).expect("serializable")),
        Format::Dot => nfa.to_dot(),
        Format::Text => format!(
            "states: {}\ninitial: {:?}\naccepting: {:?}\ntransitions: {}\n",
            nfa.num_states(),
            nfa.initial(),
            nfa.accepting(),
            nfa.transitions().len()
        ),
    }
}

// The automaton for the configured sides, or the verdict that explains why
// there is none.
fn automaton_for(config: &RunConfig, w: &Word) -> Result<std::result::Result<Nfa, Verdict>> {
    match config.sides {
        Sides::Both => {
            let options = DecideOptions {
                skip_verification: true,
                ..DecideOptions::default()
            };
            let verdict = decide(w, &config.primer, options)?;
            Ok(match verdict.automaton.clone() {
                Some(nfa) => Ok(nfa),
                None => Err(verdict),
            })
        }
        side => {
            let a = analyze(w, &config.primer)?;
            Ok(Ok(build_one_sided(&a, side)?))
        }
    }
}

fn no_automaton(v: &Verdict) -> Rendered {
    Rendered {
        text: format!("no automaton: outcome {:?}; {}\n", v.outcome, v.reason).to_lowercase(),
        code: v.outcome.exit_code(),
    }
}

pub fn cmd_build(config: &RunConfig, word: &str) -> Result<Rendered> {
    let w = config.word(word)?;
    Ok(match automaton_for(config, &w)? {
        Ok(nfa) => Rendered::ok(render_nfa(&nfa, config.format.unwrap_or(Format::Dot))),
        Err(v) => no_automaton(&v),
    })
}

pub fn cmd_decide(config: &RunConfig, word: &str) -> Result<Rendered> {
    let w = config.word(word)?;
    let options = DecideOptions {
        verify_bound: config.bound,
        skip_verification: false,
    };
    let v = decide(&w, &config.primer, options)?;
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&v.to_json()),
        Format::Dot => match &v.automaton {
            Some(nfa) => nfa.to_dot(),
            None => no_automaton(&v).text,
        },
        Format::Text => {
            let mut s = format!(
                "outcome: {}\nclass: ({}, {}) non_crossing={} anchored={}\nreason: {}\n",
                serde_json::to_value(v.outcome).expect("serializable").as_str().unwrap_or_default(),
                v.class.m,
                v.class.n,
                v.class.non_crossing,
                v.class.anchored,
                v.reason
            );
            if let Some(wit) = &v.witness {
                s.push_str(&format!("witness: {} (i = 2), {} (i = 3)\n", wit.word(2), wit.word(3)));
            }
            s
        }
    };
    Ok(Rendered {
        text,
        code: v.outcome.exit_code(),
    })
}

pub fn cmd_verify(config: &RunConfig, word: &str) -> Result<Rendered> {
    let w = config.word(word)?;
    let bound = config.bound_for(&w)?;
    let nfa = match automaton_for(config, &w)? {
        Ok(nfa) => nfa,
        Err(v) => {
            let mut r = no_automaton(&v);
            r.code = EXIT_FAILURE;
            return Ok(r);
        }
    };
    let oracle = closure(&w, &config.primer, bound, config.sides)?;
    let eq = nfa.equiv_up_to(oracle.members(), bound);
    let counterexample = eq.counterexample.as_ref().map(|c| {
        let kind = match c {
            crate::automata::Counterexample::Extra(_) => "extra",
            crate::automata::Counterexample::Missing(_) => "missing",
        };
        json!({"kind": kind, "word": c.word().to_string()})
    });
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!({
            "word": w.to_string(),
            "sides": config.sides.to_string(),
            "bound": bound,
            "equal": eq.is_equal(),
            "automaton_count": eq.automaton_count,
            "closure_count": eq.expected_count,
            "counterexample": counterexample,
        })),
        _ => match &eq.counterexample {
            None => format!("equal up to {bound}: {} words\n", eq.expected_count),
            Some(c) => format!("differ up to {bound}: {}\n", c.word()),
        },
    };
    Ok(Rendered {
        text,
        code: if eq.is_equal() { EXIT_OK } else { EXIT_FAILURE },
    })
}

pub fn cmd_witness(config: &RunConfig, word: &str, i_max: usize) -> Result<Rendered> {
    let w = config.word(word)?;
    let a = analyze(&w, &config.primer)?;
    let bound = match config.bound {
        Some(b) => b,
        None if a.m() == 3 && a.n() == 2 => witness_word(&a, i_max.max(2)).len(),
        None => config.bound_for(&w)?,
    };
    let report = witness_family(&a, i_max, bound)?;
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!({
            "word": report.instance.to_string(),
            "conditions": report.conditions.as_array(),
            "bound": report.bound,
            "i_max": report.i_max,
            "family": report.family.iter().map(|m| json!({"i": m.exponent, "word": m.word.to_string()})).collect::<Vec<_>>(),
            "missing": report.missing,
            "extraneous": words_json(&report.extraneous),
            "exact": report.is_exact(),
        })),
        _ => {
            let mut s = String::new();
            for m in &report.family {
                s.push_str(&format!("i={}\t{}\n", m.exponent, m.word));
            }
            s.push_str(&format!(
                "missing: {:?}\nextraneous: {}\n",
                report.missing,
                report.extraneous.len()
            ));
            s
        }
    };
    Ok(Rendered {
        text,
        code: if report.is_exact() { EXIT_OK } else { EXIT_FAILURE },
    })
}
