use std::fmt::Write as _;

use anyhow::Context;
use autoeval::rs::{self, ReceivedWord, RsContext, SyndromeSet};
use autoeval::OpCounter;
use rayon::prelude::*;

use crate::{degree_rng, Demo, RsArgs};

fn words(ctx: &RsContext, args: &RsArgs) -> Vec<ReceivedWord> {
    let mut rng = degree_rng(args.seed, 0);
    (0..args.words)
        .map(|_| match args.demo {
            Demo::Worstcase => rs::worst_case_word(ctx),
            Demo::Random => rs::random_word(ctx, &mut rng),
            Demo::Codeword => rs::random_codeword(ctx, &mut rng),
        })
        .collect()
}

fn syndromes_of_file(ctx: &RsContext, path: &std::path::Path) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let word = ReceivedWord::parse(ctx, &text).with_context(|| format!("parsing {}", path.display()))?;
    let auto = rs::syndromes_automorphic(ctx, &word);
    let horner = rs::syndromes_horner(ctx, &word);
    print!("{}", auto.to_text(ctx));
    if auto.syndromes != horner.syndromes {
        eprintln!("pipelines disagree");
        return Ok(false);
    }
    Ok(true)
}

pub fn run(args: &RsArgs) -> anyhow::Result<bool> {
    let ctx = rs::build_rs_context()?;
    if let Some(path) = &args.input {
        return syndromes_of_file(&ctx, path);
    }
    let batch = words(&ctx, args);
    let results: Vec<(SyndromeSet, SyndromeSet)> = batch
        .par_iter()
        .map(|w| (rs::syndromes_automorphic(&ctx, w), rs::syndromes_horner(&ctx, w)))
        .collect();

    let cp = ctx.field().cp();
    let mut auto_eval = OpCounter::new(cp);
    let mut horner_eval = OpCounter::new(cp);
    let mut agree = true;
    let mut zero = true;
    for (a, h) in &results {
        auto_eval += &a.evaluation;
        horner_eval += &h.evaluation;
        agree &= a.syndromes == h.syndromes;
        zero &= a.is_zero() && h.is_zero();
    }
    let horner_powers = results[0].1.precompute.clone();
    let stages = [
        ("alpha_table", ctx.alpha_table_cost().clone()),
        ("product_table", ctx.product_table_cost().clone()),
        ("automorphic_syndromes", auto_eval.clone()),
        ("automorphic_total", ctx.precompute_cost() + &auto_eval),
        ("horner_powers", horner_powers.clone()),
        ("horner_syndromes", horner_eval.clone()),
        ("horner_total", horner_powers + &horner_eval),
    ];

    let mut csv = String::from("stage,muls,adds\n");
    for (name, c) in &stages {
        writeln!(csv, "{name},{},{}", c.charged_mul(), c.add).expect("string write");
    }
    if let Some(path) = &args.out {
        std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }

    let k = args.words;
    let demo = match args.demo {
        Demo::Random => "random",
        Demo::Worstcase => "worstcase",
        Demo::Codeword => "codeword",
    };
    println!("{k} {demo} word(s), {} syndromes each", rs::ROOTS.len());
    println!("{:<22} {:>10} {:>10}", "stage", "muls", "adds");
    for (name, c) in &stages {
        println!("{name:<22} {:>10} {:>10}", c.charged_mul(), c.add);
    }
    let auto_total = stages[3].1.charged_mul();
    let horner_total = stages[6].1.charged_mul();
    println!("automorphic vs horner: {auto_total} vs {horner_total}");
    let formula = rs::amortized_cost(k);
    println!(
        "worst-case formulas for K={k}: 3823+2912K = {}, 31+8128K = {}",
        formula.automorphic, formula.horner
    );
    let mut ok = agree;
    if agree {
        println!("pipelines agree on all {} syndromes", k as usize * rs::ROOTS.len());
    } else {
        println!("pipelines DISAGREE");
    }
    if args.demo == Demo::Codeword {
        ok &= zero;
        println!("{}", if zero { "all syndromes are zero" } else { "nonzero syndrome on a codeword" });
    }
    if let Some(path) = &args.out {
        println!("wrote cost report to {}", path.display());
    }
    Ok(ok)
}
