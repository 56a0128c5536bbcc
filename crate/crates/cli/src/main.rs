use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nilideal::engine::DEFAULT_NODE_BUDGET;
use nilideal::squarefree::gen_morphism;
use nilideal::verifier::{format_report, format_report_full, growth};
use nilideal::{
    enumerate_squarefree, replay, standard_presentation, DerivationTrace, Engine, EngineError, EngineOptions,
    Presentation, SuiteId, Verifier, VerifyConfig, Word,
};

/// Decide, trace and verify words of the semigroup with square-free nil ideal.
///
/// Verdicts are printed as one lowercase token on stdout. Exit status is 0 for
/// a true verdict or passing run, 1 for a false verdict or failing suite, and
/// 2 for bad input.
#[derive(Parser, Debug)]
#[command(name = "nilideal", version)]
struct Cli {
    /// Rule file to use instead of the built-in presentation.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "aux")]
    rules: Option<PathBuf>,

    /// Add the t_i a_j Q -> 0 (i != j) rules to the built-in presentation.
    #[arg(long, global = true)]
    aux: bool,

    /// Maximum number of class members explored per query.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print `zero` or `nonzero`.
    IsZero { word: String },
    /// Print `equivalent` or `not-equivalent`.
    Equal { left: String, right: String },
    /// Print the unique L-initial member of the class, or `0`.
    Normalize { word: String },
    /// Print the verdict, then every class member sorted by length and text.
    Class { word: String },
    /// Print a derivation from the first word to the second (or to `0`).
    Trace {
        from: String,
        to: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check a trace file against the presentation.
    Replay { path: PathBuf },
    /// Print square-free ternary words of the given length.
    Squarefree {
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value_t = Method::Morphism)]
        method: Method,
    },
    /// Nonzero classes of L·A by |A| against the square-free word counts.
    Growth {
        #[arg(long)]
        max: usize,
    },
    /// Run the verification suites.
    Verify {
        /// Suite to run (1, 2, 3-6, 7, 9, injectivity, growth); all if omitted.
        #[arg(long = "prop", value_name = "K")]
        prop: Option<SuiteId>,
        /// Bound for the selected suites.
        #[arg(long)]
        max_len: Option<usize>,
        /// Run every suite under both settings of the aux rules.
        #[arg(long)]
        both_aux: bool,
        /// Print every failure instead of the first few per suite.
        #[arg(long)]
        all_failures: bool,
    },
    /// Print the presentation in rule-file format.
    Rules {
        #[arg(long, value_name = "PATH")]
        dump: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Morphism,
    Enumerate,
}

fn verdict(ok: bool, yes: &str, no: &str) -> ExitCode {
    println!("{}", if ok { yes } else { no });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse(text: &str) -> Result<Word> {
    text.parse().with_context(|| format!("bad word `{text}`"))
}

impl Cli {
    fn options(&self) -> EngineOptions {
        EngineOptions { node_budget: self.node_budget, ..Default::default() }
    }

    fn presentation(&self) -> Result<Presentation> {
        match &self.rules {
            Some(path) => {
                Presentation::load_rules(path).with_context(|| format!("cannot load rules from {}", path.display()))
            }
            None => Ok(standard_presentation(self.aux)),
        }
    }

    fn engine(&self) -> Result<Engine> {
        let p = self.presentation()?;
        let report = p.validate();
        if !report.is_valid() {
            bail!("invalid presentation: {}", report.failures.join("; "));
        }
        if !report.conserves_potential() {
            eprintln!("warning: rules {:?} change the potential; searches are bounded only by --node-budget", report.non_conserving);
        }
        Ok(Engine::with_options(p, self.options()))
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::IsZero { word } => {
            let w = parse(word)?;
            let zero = w.is_zero() || cli.engine()?.is_zero(&w)?;
            Ok(verdict(zero, "zero", "nonzero"))
        }
        Command::Equal { left, right } => {
            let (u, v) = (parse(left)?, parse(right)?);
            let e = cli.engine()?;
            let same = match (u.is_zero(), v.is_zero()) {
                (true, true) => true,
                (true, false) => e.is_zero(&v)?,
                (false, true) => e.is_zero(&u)?,
                (false, false) => e.equivalent(&u, &v)?,
            };
            Ok(verdict(same, "equivalent", "not-equivalent"))
        }
        Command::Normalize { word } => {
            let w = parse(word)?;
            if w.is_zero() {
                println!("0");
                return Ok(ExitCode::SUCCESS);
            }
            match cli.engine()?.canonical_form(&w) {
                Ok(c) => {
                    println!("{c}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ (EngineError::NotCanonicalizable(_) | EngineError::NonUniqueCanonical(_))) => {
                    println!("not-canonicalizable");
                    eprintln!("{e}");
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Class { word } => {
            let w = parse(word)?;
            if w.is_zero() {
                bail!("the zero word has no class to list");
            }
            let report = cli.engine()?.class_enumerate(&w)?;
            println!("{}", if report.is_zero() { "zero" } else { "nonzero" });
            for m in report.sorted_members() {
                println!("{m}");
            }
            eprintln!("{} members", report.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace { from, to, out } => {
            let (u, v) = (parse(from)?, parse(to)?);
            let e = cli.engine()?;
            let trace = if v.is_zero() {
                e.zero_trace(&u)?
            } else {
                match e.derive(&u, &v) {
                    Ok(t) => Some(t),
                    Err(EngineError::NoDerivation { .. }) => None,
                    Err(err) => return Err(err.into()),
                }
            };
            let Some(t) = trace else {
                println!("no-derivation");
                return Ok(ExitCode::from(1));
            };
            match out {
                Some(path) => {
                    fs::write(path, t.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
                    eprintln!("{} steps written to {}", t.steps.len(), path.display());
                }
                None => print!("{}", t.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { path } => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let t = DerivationTrace::parse(&text).with_context(|| format!("bad trace file {}", path.display()))?;
            let p = cli.presentation()?;
            match replay(&p, &t) {
                Ok(()) => Ok(verdict(true, "valid", "invalid")),
                Err(err) => {
                    println!("invalid");
                    println!("{err}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Squarefree { len, method } => {
            if *len == 0 {
                bail!("--len must be at least 1");
            }
            match method {
                Method::Morphism => println!("{}", gen_morphism(*len)?),
                Method::Enumerate => {
                    for w in enumerate_squarefree(*len)? {
                        println!("{w}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Growth { max } => {
            if *max == 0 {
                bail!("--max must be at least 1");
            }
            let (result, rows) = growth(&cli.engine()?, *max)?;
            println!("n nonzero_classes squarefree");
            for r in &rows {
                println!("{} {} {}", r.n, r.nonzero_classes, r.squarefree);
            }
            Ok(if result.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify { prop, max_len, both_aux, all_failures } => {
            let suites: Vec<SuiteId> = match prop {
                Some(s) => vec![*s],
                None => SuiteId::ALL.to_vec(),
            };
            let mut config = VerifyConfig::default();
            if let Some(n) = max_len {
                for &s in &suites {
                    config.set_bound(s, *n);
                }
            }
            let mut verifier = match &cli.rules {
                Some(_) => Verifier::new("rules", cli.engine()?),
                None => Verifier::standard(cli.aux, cli.options()),
            };
            verifier.all_suites_on_alternates = *both_aux;
            let results = verifier.run(&suites, &config)?;
            let report = if *all_failures { format_report_full(&results) } else { format_report(&results) };
            print!("{report}");
            Ok(if results.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Rules { dump } => {
            let p = cli.presentation()?;
            match dump {
                Some(path) => {
                    p.save_rules(path).with_context(|| format!("cannot write {}", path.display()))?;
                    eprintln!("{} rules written to {}", p.len(), path.display());
                }
                None => print!("{}", p.to_rule_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
