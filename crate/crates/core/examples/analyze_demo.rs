//! Quick end-to-end smoke: compile the bundled lexicon and analyze words
//! from the command line.
use wazn::compiler::{CompileOptions, Compiler};
use wazn::pipeline::{to_tsv, Analyzer};

fn main() {
    let (lex, roots) = wazn::seed::load_seed().expect("seed loads");
    let compiler = Compiler::new(&lex, &roots);
    let compiled = compiler.compile_all(CompileOptions::default()).expect("compiles");
    let analyzer = Analyzer::new(&compiled);
    let words: Vec<String> = std::env::args().skip(1).collect();
    let text = if words.is_empty() {
        "Sifrun xArijUna murtaddI fuSiltu euxrijtumA maca eamAma ealcA^ira bihimA yujAdilUna".to_string()
    } else {
        words.join(" ")
    };
    let report = analyzer.analyze_text(&text);
    print!("{}", to_tsv(&report));
}
