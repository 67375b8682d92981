//! Batch-throughput benchmarks comparing the rayon-parallel paths against
//! the sequential fallbacks: whole-lexicon compilation and bulk text
//! analysis. With `--no-default-features` only the sequential variants run.

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use wazn::compiler::{CompileOptions, CompiledLexicon, Compiler};
use wazn::pipeline::Analyzer;

fn compiled_seed() -> CompiledLexicon {
    let (lex, roots) = wazn::seed::load_seed().expect("bundled lexicon loads");
    Compiler::new(&lex, &roots)
        .compile_all(CompileOptions::default())
        .expect("compiles")
}

/// A few thousand tokens of analyzable text, with some unknown words mixed
/// in, cycled from the golden vocabulary.
fn corpus(tokens: usize) -> String {
    let words = [
        "Sifrun",
        "xArijUna",
        "murtaddI",
        "fuSiltu",
        "euxrijtumA",
        "maca",
        "eamAma",
        "ealcA^ira",
        "bihimA",
        "yujAdilUna",
        "kataba",
        "kitAbun",
        "yacidu",
        "yacuddu",
        "wAHidun",
        "qqq",
    ];
    let tails = ['b', 'j', 'd', 'h', 'k', 'l', 'm', 'n', 'q', 'r', 's', 't', 'z'];
    let mut out = String::new();
    for i in 0..tokens {
        out.push_str(words[i % words.len()]);
        // vary the token stream so deduplication keeps real work around
        if i % 7 == 0 {
            out.push(tails[i % tails.len()]);
            out.push(tails[(i / 7) % tails.len()]);
        }
        out.push(' ');
    }
    out
}

fn bench_analyze(c: &mut Criterion) {
    let compiled = compiled_seed();
    let analyzer = Analyzer::new(&compiled);
    let text = corpus(4000);

    let mut group = c.benchmark_group("analyze_text_4k_tokens");
    group.throughput(Throughput::Elements(4000));
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| analyzer.analyze_text(&text)));
    group.bench_function("sequential", |b| {
        b.iter(|| analyzer.analyze_text_sequential(&text))
    });
    group.finish();
}

fn bench_compile(c: &mut Criterion) {
    let (lex, roots) = wazn::seed::load_seed().expect("bundled lexicon loads");

    let mut group = c.benchmark_group("compile_all");
    group.sample_size(10);
    // per-category construction parallelizes under the feature; the
    // sequential baseline is the same build compiled without it
    group.bench_function(
        if cfg!(feature = "parallel") {
            "parallel"
        } else {
            "sequential"
        },
        |b| {
            b.iter(|| {
                Compiler::new(&lex, &roots)
                    .compile_all(CompileOptions::default())
                    .unwrap()
            })
        },
    );
    group.finish();
}

criterion_group!(benches, bench_analyze, bench_compile);
criterion_main!(benches);
