use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Context;
use autoeval::cost::{self, Method};
use autoeval::eval;
use autoeval::sample;
use rayon::prelude::*;

use crate::{default_methods, degree_rng, plan_depth, subfield, BenchArgs, UsageError};

pub const HEADER: &str = "p,s,m,n,method,L,predicted_mul,measured_mul,measured_add,horner_mul,wall_ns";

struct Row {
    n: usize,
    method: Method,
    depth: u32,
    predicted: u64,
    measured_mul: u64,
    measured_add: u64,
    horner_mul: u64,
    wall_ns: u128,
}

fn rows_for_degree(args: &BenchArgs, sub: Option<&autoeval::Subfield>, methods: &[Method], k: usize, n: usize) -> Vec<Row> {
    let ctx = &args.field.field;
    let s = args.field.coeff_degree;
    let p = ctx.p();
    let mut rng = degree_rng(args.field.seed, k);
    let instances: Vec<_> = (0..args.trials.max(1))
        .map(|_| sample::worst_case_poly(ctx, sub, n, &mut rng))
        .collect();
    let alpha = ctx.alpha();
    let horner_mul = instances
        .iter()
        .map(|poly| eval::eval_horner(ctx, poly, &alpha).expect("valid instance").counter.mul)
        .max()
        .unwrap_or(0);
    methods
        .iter()
        .map(|&method| {
            let depth = plan_depth(method, p, s, n);
            let mut row = Row {
                n,
                method,
                depth,
                predicted: cost::predicted_mul(method, p, s as u32, n as u64, depth),
                measured_mul: 0,
                measured_add: 0,
                horner_mul,
                wall_ns: 0,
            };
            for poly in &instances {
                let start = Instant::now();
                let got = match (method, sub) {
                    (Method::ExtBasis, Some(sub)) => eval::eval_ext_basis_at(ctx, sub, poly, &alpha, depth),
                    (Method::ExtM2, Some(sub)) => eval::eval_ext_m2(ctx, sub, poly, &alpha, depth),
                    _ => eval::evaluate(ctx, poly, &alpha, method, depth),
                }
                .expect("valid instance");
                if args.timing {
                    row.wall_ns = row.wall_ns.max(start.elapsed().as_nanos());
                }
                row.measured_mul = row.measured_mul.max(got.counter.charged_mul());
                row.measured_add = row.measured_add.max(got.counter.add);
            }
            row
        })
        .collect()
}

pub fn run(args: &BenchArgs) -> anyhow::Result<bool> {
    let ctx = &args.field.field;
    let s = args.field.coeff_degree;
    let sub = subfield(ctx, s)?;
    let applicable = default_methods(s);
    let methods = if args.methods.is_empty() {
        applicable.clone()
    } else {
        args.methods.clone()
    };
    if let Some(m) = methods.iter().find(|m| !applicable.contains(m)) {
        return Err(UsageError(format!("method {m} does not apply to coefficients of degree {s}")).into());
    }
    let mut rows: Vec<Row> = args
        .field
        .degrees
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, &n)| rows_for_degree(args, sub.as_ref(), &methods, k, n))
        .collect();
    rows.sort_by_key(|r| (r.n, r.method));

    let mut csv = String::from(HEADER);
    csv.push('\n');
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{}",
            ctx.p(),
            s,
            ctx.m(),
            r.n,
            r.method,
            r.depth,
            r.predicted,
            r.measured_mul,
            r.measured_add,
            r.horner_mul,
            r.wall_ns
        )
        .expect("string write");
    }
    let over: Vec<_> = rows.iter().filter(|r| r.measured_mul > r.predicted).collect();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
            println!("{:>8} {:<10} {:>3} {:>10} {:>10} {:>10}", "n", "method", "L", "predicted", "measured", "horner");
            for r in &rows {
                println!(
                    "{:>8} {:<10} {:>3} {:>10} {:>10} {:>10}",
                    r.n, r.method.name(), r.depth, r.predicted, r.measured_mul, r.horner_mul
                );
            }
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    for r in &over {
        eprintln!("measured {} exceeds predicted {} for n={} {}", r.measured_mul, r.predicted, r.n, r.method);
    }
    Ok(over.is_empty())
}
