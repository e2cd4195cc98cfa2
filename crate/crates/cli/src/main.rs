use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};

use tqa_core::backend::{answer_decomposed, embedded_fixtures, FixtureStore};
use tqa_core::corpus::{embedded_testbed, load_testbed_file, SystemRecord};
use tqa_core::decompose::decompose;
use tqa_core::eval::{comparison_table, run_evaluation, EvalOptions, EvaluationReport};
use tqa_core::pack::{builtin, load_pack_file, LanguagePack};
use tqa_core::tagger::tag;
use tqa_core::xml::Element;
use tqa_core::{Diagnostic, Error};

#[derive(Parser)]
#[command(name = "tqa", version, about = "Temporal question answering over a plain QA backend")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Language pack code.
    #[arg(long, global = true, default_value = "en")]
    lang: String,
    /// Directory holding `<lang>.xml` packs; overrides the built-in packs.
    #[arg(long, global = true)]
    pack: Option<PathBuf>,
    /// Reference date for relative expressions. Defaults to the date
    /// recorded in the fixture file.
    #[arg(long = "ref", global = true, value_parser = parse_date)]
    reference: Option<NaiveDate>,
    /// Fixture file standing in for the QA backend.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Match fixture keys verbatim.
    #[arg(long, global = true)]
    strict_keys: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Xml,
}

#[derive(Subcommand)]
enum Command {
    /// List the temporal expressions of a question.
    Tag { question: String },
    /// Print the question type (1-4).
    Classify { question: String },
    /// Print the decomposition as a Q block.
    Decompose { question: String },
    /// Answer a question through the fixture backend.
    Answer { question: String },
    /// Evaluate the decomposition (and answers, with --fixtures) over a testbed.
    Eval {
        /// Testbed file; the shipped testbed for --lang when omitted.
        #[arg(long)]
        testbed: Option<PathBuf>,
        /// Also run with gold expressions injected and print the difference.
        #[arg(long)]
        gold_te: bool,
    },
    /// Load and validate a pack file, or the pack selected by --lang/--pack.
    PackValidate { file: Option<PathBuf> },
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|e| format!("`{s}` is not YYYY-MM-DD: {e}"))
}

/// A failed command: exit status and the line printed on stderr.
struct Failure {
    status: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if matches!(e, Error::Unsplittable(_)) { 1 } else { 2 };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

impl Opts {
    fn pack(&self) -> Result<LanguagePack, Failure> {
        match &self.pack {
            Some(dir) => Ok(load_pack_file(&dir.join(format!("{}.xml", self.lang)))?),
            None => builtin(&self.lang)
                .ok_or_else(|| Failure::usage(format!("no built-in pack for language `{}`; use --pack", self.lang))),
        }
    }

    /// The fixture file from --fixtures, else the shipped one for the language.
    fn store(&self) -> Result<Option<FixtureStore>, Failure> {
        let store = match &self.fixtures {
            Some(path) => Some(load_fixtures(path)?),
            None => embedded_fixtures(&self.lang),
        };
        Ok(store.map(|mut s| {
            s.strict_keys = self.strict_keys;
            s
        }))
    }

    fn reference(&self, store: Option<&FixtureStore>) -> Result<NaiveDate, Failure> {
        self.reference
            .or_else(|| store.and_then(|s| s.reference))
            .ok_or_else(|| Failure::usage("--ref is required: no fixture file supplies a reference date"))
    }
}

fn load_fixtures(path: &Path) -> Result<FixtureStore, Failure> {
    FixtureStore::load_file(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_tag(opts: &Opts, question: &str) -> CmdResult {
    let pack = opts.pack()?;
    let reference = opts.reference(opts.store()?.as_ref())?;
    let tags = tag(question, &pack.te, reference);
    match opts.format {
        Format::Text => {
            for t in &tags {
                let flag = if t.beyond_paper { " (beyond-paper)" } else { "" };
                println!("{}\t{}\t{}{flag}", t.surface, t.value, t.rule);
            }
        }
        Format::Xml => {
            let mut root = Element::new("TES");
            for t in &tags {
                root = root.child(
                    Element::new("TE")
                        .attr("value", t.value.to_string())
                        .with_text(t.surface.as_str()),
                );
            }
            print!("{}", root.to_fragment());
        }
    }
    Ok(())
}

fn cmd_classify(opts: &Opts, question: &str) -> CmdResult {
    let pack = opts.pack()?;
    let reference = opts.reference(opts.store()?.as_ref())?;
    let d = decompose(question, &pack, reference)?;
    match opts.format {
        Format::Text => println!("{}", d.qtype),
        Format::Xml => print!("{}", Element::new("TYPE").with_text(d.qtype.to_string()).to_fragment()),
    }
    Ok(())
}

fn cmd_decompose(opts: &Opts, question: &str) -> CmdResult {
    let pack = opts.pack()?;
    let reference = opts.reference(opts.store()?.as_ref())?;
    let d = decompose(question, &pack, reference)?;
    print!("{}", SystemRecord::from_decomposition(1, &d).to_block());
    for diag in &d.diagnostics {
        eprintln!("{}", diag.code());
    }
    Ok(())
}

fn cmd_answer(opts: &Opts, question: &str) -> CmdResult {
    let pack = opts.pack()?;
    let store = opts
        .store()?
        .ok_or_else(|| Failure::usage(format!("no shipped fixtures for `{}`; use --fixtures", opts.lang)))?;
    let reference = opts.reference(Some(&store))?;
    let d = decompose(question, &pack, reference)?;
    let answer = answer_decomposed(&d, &pack.code, &store);
    match opts.format {
        Format::Text => {
            for a in &answer.answers {
                println!("{}", a.text);
            }
        }
        Format::Xml => print!(
            "{}",
            SystemRecord::from_decomposition(1, &d).with_answer(&answer).to_block()
        ),
    }
    for diag in &answer.diagnostics {
        eprintln!("{}", diag.code());
    }
    Ok(())
}

fn cmd_eval(opts: &Opts, testbed: Option<&Path>, gold_te: bool) -> CmdResult {
    let pack = opts.pack()?;
    let questions = match testbed {
        Some(path) => load_testbed_file(path)?,
        None => embedded_testbed(&opts.lang)
            .ok_or_else(|| Failure::usage(format!("no shipped testbed for `{}`; use --testbed", opts.lang)))?,
    };
    // Answers are judged only against an explicit fixture file.
    let store = match &opts.fixtures {
        Some(path) => {
            let mut s = load_fixtures(path)?;
            s.strict_keys = opts.strict_keys;
            Some(s)
        }
        None => None,
    };
    let reference = match &store {
        Some(s) => opts.reference(Some(s))?,
        None => opts.reference(opts.store()?.as_ref())?,
    };
    let run = |gold_te| {
        let eval = EvalOptions {
            store: store.as_ref(),
            reference,
            gold_te,
        };
        run_evaluation(&questions, &pack, &eval)
    };
    let plain = run(false)?;
    let injected: Option<EvaluationReport> = if gold_te { Some(run(true)?) } else { None };
    match opts.format {
        Format::Text => {
            print!("{plain}");
            if let Some(inj) = &injected {
                println!();
                print!("{inj}");
                println!();
                print!("{}", comparison_table(&plain, inj));
            }
        }
        Format::Xml => match &injected {
            None => print!("{}", plain.to_xml()),
            Some(inj) => {
                let root = Element::new("REPORTS")
                    .child(Element::parse(&plain.to_xml())?)
                    .child(Element::parse(&inj.to_xml())?);
                print!("{}", root.to_document());
            }
        },
    }
    Ok(())
}

fn cmd_pack_validate(opts: &Opts, file: Option<&Path>) -> CmdResult {
    let pack = match file {
        Some(path) => load_pack_file(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => opts.pack()?,
    };
    let beyond = pack.te.rules.iter().filter(|r| r.beyond_paper).count();
    println!(
        "{}: ok ({} expression rules, {beyond} beyond-paper; {} signals)",
        pack.code,
        pack.te.rules.len(),
        pack.signals.entries.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let result = match &cli.command {
        Command::Tag { question } => cmd_tag(opts, question),
        Command::Classify { question } => cmd_classify(opts, question),
        Command::Decompose { question } => cmd_decompose(opts, question),
        Command::Answer { question } => cmd_answer(opts, question),
        Command::Eval { testbed, gold_te } => cmd_eval(opts, testbed.as_deref(), *gold_te),
        Command::PackValidate { file } => cmd_pack_validate(opts, file.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.status == 1 {
                eprintln!("{}: {}", Diagnostic::Unsplittable.code(), f.message);
            } else {
                eprintln!("tqa: {}", f.message);
            }
            ExitCode::from(f.status)
        }
    }
}
