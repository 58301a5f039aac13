use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use galcov::assets::Assets;
use galcov::graph::{coxeter_presentation, GraphFile, TorusGraphData};
use galcov::kstar::projective::embed_fiber;
use galcov::kstar::Engine;
use galcov::presentation::{
    apply_substitution_table, eliminate_generator, overlap_shorten_with, parse_substitution_table, trivial_simplify,
    Presentation, ShortenConfig, DEFAULT_SANDWICH_PERIOD, DEFAULT_SEED,
};
use galcov::semi::phi_eval;
use galcov::verify::{self, Inputs, Suite, VerifyConfig};
use galcov::word::{GeneratorSymbol, SymbolSet, Word};
use galcov::zmodule::{invariants_of_quotient, smith_normal_form, IntMatrix};

#[derive(Parser)]
#[command(name = "galcov", version, about = "Presentations, graph Coxeter groups and nilpotent normal forms")]
struct Cli {
    /// Seed for randomized tie-breaking.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Round limit for overlap shortening.
    #[arg(long, global = true, default_value_t = 50)]
    max_rounds: usize,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory with asset files replacing the bundled ones.
    #[arg(long, global = true)]
    assets: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Trivial simplification followed by overlap shortening.
    Simplify {
        input: PathBuf,
        /// Relator passes between sandwich collapses.
        #[arg(long, default_value_t = DEFAULT_SANDWICH_PERIOD)]
        sandwich_period: usize,
    },
    /// Removes a generator by substituting an expression for it.
    Eliminate { input: PathBuf, generator: String, expr: String },
    /// Expands a word with the substitution table.
    Subst {
        /// Word text, or `@file` to read it from a file.
        word: String,
    },
    /// Emits the graph Coxeter presentation of a graph file.
    Cox { graph: PathBuf },
    /// Evaluates Φ on a word over the edges of T.
    Phi {
        /// Word text, or `@file`.
        word: String,
        /// Also collect a trivial-permutation result in K*.
        #[arg(long)]
        collect: bool,
    },
    /// Runs verification suites.
    Verify {
        #[arg(value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Smith normal form and invariants of an integer matrix file.
    Snf { matrix: PathBuf },
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn word_arg(s: &str) -> Result<Word, String> {
    let text = match s.strip_prefix('@') {
        Some(p) => read(Path::new(p))?,
        None => s.to_string(),
    };
    let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    Word::parse(&body).map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn assets(cli: &Cli) -> Assets {
    cli.assets.as_ref().map_or_else(Assets::bundled, Assets::from_dir)
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.cmd {
        Cmd::Simplify { input, sandwich_period } => {
            let p = Presentation::parse(&read(input)?).map_err(|e| format!("{}: {e}", input.display()))?;
            let (t, log1) = trivial_simplify(&p);
            let cfg = ShortenConfig { seed: cli.seed, max_rounds: cli.max_rounds, sandwich_period: *sandwich_period };
            let (s, log2) = overlap_shorten_with(&t, cfg);
            eprintln!(
                "relators {} -> {}; total length {} -> {}",
                p.relators().len(),
                s.relators().len(),
                p.total_length(),
                s.total_length()
            );
            emit(&cli.out, &s.serialize())?;
            let log = format!("{log1}{log2}");
            match &cli.out {
                Some(o) => {
                    let lp = o.with_extension("log");
                    fs::write(&lp, log).map_err(|e| format!("{}: {e}", lp.display()))?;
                }
                None => eprint!("{log}"),
            }
            Ok(true)
        }
        Cmd::Eliminate { input, generator, expr } => {
            let p = Presentation::parse(&read(input)?).map_err(|e| format!("{}: {e}", input.display()))?;
            let g = GeneratorSymbol::parse(generator).map_err(|e| e.to_string())?;
            let e = Word::parse(expr).map_err(|e| e.to_string())?;
            let (q, log) = eliminate_generator(&p, &g, &e).map_err(|e| e.to_string())?;
            eprint!("{log}");
            emit(&cli.out, &q.serialize())?;
            Ok(true)
        }
        Cmd::Subst { word } => {
            let w = word_arg(word)?;
            let table = parse_substitution_table(&assets(cli).read("table.subst").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let invol: SymbolSet = w.symbols().into_iter().chain(table.iter().map(|(s, _)| s.clone())).collect();
            let x = apply_substitution_table(&w, &table, &invol).map_err(|e| e.to_string())?;
            eprintln!("length {} -> {}", w.len(), x.len());
            emit(&cli.out, &format!("{x}\n"))?;
            Ok(true)
        }
        Cmd::Cox { graph } => {
            let g = GraphFile::parse(&read(graph)?).map_err(|e| format!("{}: {e}", graph.display()))?;
            emit(&cli.out, &coxeter_presentation(&g.graph).serialize())?;
            Ok(true)
        }
        Cmd::Phi { word, collect } => {
            let w = word_arg(word)?;
            let a = assets(cli);
            let rd = |n: &str| a.read(n).map_err(|e| format!("{n}: {e}"));
            let data = TorusGraphData::parse(&rd("torus.graph")?, &rd("torus_hat.graph")?, &rd("points.graph")?)
                .map_err(|e| e.to_string())?;
            let x = phi_eval(&w, &data).map_err(|e| e.to_string())?;
            let mut text = format!("{x}\n");
            if *collect {
                if !x.perm.is_identity() {
                    return Err(format!("permutation part {} is not trivial", x.perm));
                }
                let en = Engine::standard();
                text.push_str(&embed_fiber(&en, &x.fiber).map_err(|e| e.to_string())?.serialize());
            }
            emit(&cli.out, &text)?;
            Ok(true)
        }
        Cmd::Verify { suite } => {
            let suite: Suite = suite.parse().map_err(|e: verify::VerifyError| e.to_string())?;
            let cfg =
                VerifyConfig { seed: cli.seed, max_rounds: cli.max_rounds, assets: assets(cli), ..Default::default() };
            Inputs::load(&cfg.assets).map_err(|e| e.to_string())?;
            let reports = verify::run(suite, &cfg).map_err(|e| e.to_string())?;
            emit(&cli.out, &verify::render(&reports))?;
            Ok(reports.iter().all(|r| r.passed()))
        }
        Cmd::Snf { matrix } => {
            let m: IntMatrix = read(matrix)?.parse().map_err(|e| format!("{}: {e}", matrix.display()))?;
            let snf = smith_normal_form(&m);
            let d: Vec<String> = snf.diagonal.iter().map(|x| x.to_string()).collect();
            let inv = invariants_of_quotient(m.cols(), &m).map_err(|e| e.to_string())?;
            emit(&cli.out, &format!("diagonal: {}\ninvariants: {inv}\n", d.join(" ")))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
