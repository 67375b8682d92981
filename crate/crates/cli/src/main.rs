//! Command-line front end: compile a lexicon directory into an automata
//! cache, then analyze text, generate words, validate, or print stats.
//!
//! Exit codes: 0 success, 1 when every input word was unanalyzable,
//! 2 on errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::error::Error;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use wazn::compiler::{CompileOptions, CompiledLexicon, Compiler};
use wazn::pipeline::{to_json, to_tsv, Analyzer, GenerateConstraints};
use wazn::seed::Manifest;
use wazn::translit;

#[derive(Parser)]
#[command(name = "wazn", version, about = "Templatic morphological analyzer and generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Script {
    Arabic,
    Latin,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a lexicon directory into an automata cache file.
    Compile {
        /// Directory of lexicon *.xml packages
        #[arg(long)]
        lexicon: PathBuf,
        /// Root list (defaults to <lexicon>/roots.txt)
        #[arg(long)]
        roots: Option<PathBuf>,
        /// Output cache file
        #[arg(long)]
        out: PathBuf,
        /// Determinize each category automaton
        #[arg(long)]
        determinize: bool,
        /// Minimize each category automaton (implies determinization)
        #[arg(long)]
        minimize: bool,
    },
    /// Analyze words from a file (or stdin with `-`).
    Analyze {
        /// Compiled cache file
        #[arg(long)]
        compiled: PathBuf,
        /// Input script; auto-detected when omitted
        #[arg(long, value_enum)]
        script: Option<Script>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Input file, or `-` for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Generate surface words matching constraints.
    Generate {
        /// Compiled cache file
        #[arg(long)]
        compiled: PathBuf,
        /// Restrict to one category (e.g. verb.strong)
        #[arg(long)]
        category: Option<String>,
        /// Require this root (canonical radicals, e.g. ktb)
        #[arg(long)]
        root: Option<String>,
        /// Require this scheme template (e.g. ficAl)
        #[arg(long)]
        scheme: Option<String>,
        /// Require a descriptor code; repeatable
        #[arg(long = "descriptor")]
        descriptors: Vec<String>,
        /// Require this prefix surface
        #[arg(long)]
        prefix: Option<String>,
        /// Require this suffix surface
        #[arg(long)]
        suffix: Option<String>,
        /// Maximum word length to enumerate
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Parse and validate a lexicon directory.
    Validate {
        #[arg(long)]
        lexicon: PathBuf,
    },
    /// Report sizes of a cache and/or a lexicon directory.
    Stats {
        #[arg(long)]
        compiled: Option<PathBuf>,
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn load_cache(path: &Path) -> Result<CompiledLexicon, Box<dyn Error>> {
    let bytes = fs::read(path)?;
    Ok(wazn::cache::read_cache(&mut bytes.as_slice())?)
}

fn read_input(input: &str) -> Result<String, Box<dyn Error>> {
    if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(input)?)
    }
}

fn run(cli: Cli) -> Result<u8, Box<dyn Error>> {
    match cli.command {
        Command::Compile {
            lexicon,
            roots,
            out,
            determinize,
            minimize,
        } => {
            let documents = wazn::seed::load_documents(&lexicon)?;
            let lex = wazn::lexicon::parse_documents(&documents)?;
            let report = wazn::lexicon::validate_lexicon(&lex);
            if !report.is_empty() {
                eprintln!("{report}");
                return Err("lexicon does not validate".into());
            }
            let roots_path = roots.unwrap_or_else(|| lexicon.join("roots.txt"));
            let root_list = wazn::seed::load_roots(&roots_path)?;
            let compiler = Compiler::new(&lex, &root_list);
            let compiled = compiler.compile_all(CompileOptions {
                determinize,
                minimize,
            })?;
            let mut bytes = Vec::new();
            wazn::cache::write_cache(&compiled, &mut bytes)?;
            fs::write(&out, bytes)?;
            println!(
                "compiled {} categories, {} rules -> {}",
                compiled.categories.len(),
                compiled.rule_index.len(),
                out.display()
            );
            Ok(0)
        }
        Command::Analyze {
            compiled,
            script,
            format,
            input,
        } => {
            let compiled = load_cache(&compiled)?;
            let raw = read_input(&input)?;
            let text = match script {
                Some(Script::Arabic) => translit::to_latin(&raw)?,
                Some(Script::Latin) => raw,
                None => {
                    if translit::contains_arabic(&raw) {
                        translit::to_latin(&raw)?
                    } else {
                        raw
                    }
                }
            };
            let analyzer = Analyzer::new(&compiled);
            let report = analyzer.analyze_text(&text);
            match format {
                Format::Tsv => print!("{}", to_tsv(&report)),
                Format::Json => print!("{}", to_json(&report)),
            }
            let had_tokens = !report.rows.is_empty() || !report.not_found.is_empty();
            if had_tokens && report.rows.is_empty() {
                Ok(1)
            } else {
                Ok(0)
            }
        }
        Command::Generate {
            compiled,
            category,
            root,
            scheme,
            descriptors,
            prefix,
            suffix,
            max_len,
            format,
        } => {
            let compiled = load_cache(&compiled)?;
            let analyzer = Analyzer::new(&compiled);
            let constraints = GenerateConstraints {
                category,
                root,
                scheme,
                descriptors,
                prefix,
                suffix,
            };
            let generated = analyzer.generate(&constraints, max_len)?;
            let report = wazn::pipeline::AnalysisReport {
                rows: generated.into_iter().map(|(_, a)| a).collect(),
                not_found: Vec::new(),
            };
            match format {
                Format::Tsv => print!("{}", to_tsv(&report)),
                Format::Json => print!("{}", to_json(&report)),
            }
            Ok(0)
        }
        Command::Validate { lexicon } => {
            let documents = wazn::seed::load_documents(&lexicon)?;
            let lex = wazn::lexicon::parse_documents(&documents)?;
            let report = wazn::lexicon::validate_lexicon(&lex);
            if report.is_empty() {
                println!(
                    "ok: {} properties, {} classes, {} components, {} rules",
                    lex.property_defs.len(),
                    lex.classes.len(),
                    lex.component_count(),
                    lex.rule_count()
                );
                Ok(0)
            } else {
                print!("{report}");
                Ok(1)
            }
        }
        Command::Stats { compiled, lexicon } => {
            if compiled.is_none() && lexicon.is_none() {
                return Err("stats needs --compiled and/or --lexicon".into());
            }
            if let Some(path) = lexicon {
                let documents = wazn::seed::load_documents(&path)?;
                let lex = wazn::lexicon::parse_documents(&documents)?;
                let roots_path = path.join("roots.txt");
                let roots = if roots_path.exists() {
                    wazn::seed::load_roots(&roots_path)?
                } else {
                    Vec::new()
                };
                let m = Manifest::of(&lex, &roots);
                println!(
                    "lexicon: {} properties, {} classes, {} components, {} rules classes, {} rules, {} roots",
                    m.properties, m.classes, m.components, m.rules_classes, m.rules, m.roots
                );
                let manifest_path = path.join("manifest.json");
                if manifest_path.exists() {
                    let expected = wazn::seed::parse_manifest(&fs::read_to_string(&manifest_path)?)?;
                    println!(
                        "manifest: {}",
                        if expected == m { "match" } else { "MISMATCH" }
                    );
                }
            }
            if let Some(path) = compiled {
                let compiled = load_cache(&path)?;
                let mut total_words = 0usize;
                let mut total_entries = 0usize;
                for (category, machine) in &compiled.categories {
                    // machines are acyclic; a generous bound enumerates fully
                    let words = machine.enumerate_language(64).len();
                    total_words += words;
                    total_entries += machine.payload_count();
                    println!(
                        "{category}: {} states ({} accepting), {} payloads, {} words",
                        machine.state_count(),
                        machine.accepting_state_count(),
                        machine.payload_count(),
                        words
                    );
                }
                println!(
                    "total: {} categories, {} rules, {} entries, {} words, {} roots",
                    compiled.categories.len(),
                    compiled.rule_index.len(),
                    total_entries,
                    total_words,
                    compiled.roots.len()
                );
            }
            Ok(0)
        }
    }
}

