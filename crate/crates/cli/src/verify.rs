use std::collections::BTreeMap;

use autoeval::cost::{self, Method};
use autoeval::eval::{self, Evaluation};
use autoeval::poly::write_poly_file;
use autoeval::{sample, DensePoly, FieldContext, FieldElement, Subfield};
use rayon::prelude::*;

use crate::{default_methods, degree_rng, plan_depth, subfield, VerifyArgs};

#[derive(Default)]
struct Tally {
    runs: u64,
    equal: u64,
    within_bound: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.runs += other.runs;
        self.equal += other.equal;
        self.within_bound += other.within_bound;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

fn bound(method: Method, p: u64, s: usize, n: usize, depth: u32) -> u64 {
    let (s, n) = (s as u32, n as u64);
    match method {
        Method::ExtBasis => cost::g_ext_basis(p, s, n, depth).min(cost::g1_ext_firstmethod_bound(p, s, n)),
        _ => cost::predicted_mul(method, p, s, n, depth),
    }
}

fn run_method(
    ctx: &FieldContext,
    sub: Option<&Subfield>,
    poly: &DensePoly,
    alpha: &FieldElement,
    method: Method,
    depth: u32,
) -> autoeval::Result<Evaluation> {
    match (method, sub) {
        (Method::ExtBasis, Some(sub)) => eval::eval_ext_basis_at(ctx, sub, poly, alpha, depth),
        (Method::ExtM2, Some(sub)) => eval::eval_ext_m2(ctx, sub, poly, alpha, depth),
        _ => eval::evaluate(ctx, poly, alpha, method, depth),
    }
}

fn reproduction(ctx: &FieldContext, poly: &DensePoly, alpha: &FieldElement, method: Method, depth: u32) -> String {
    format!(
        "method={method} L={depth} point={}\n{}",
        ctx.encode(alpha),
        write_poly_file(ctx, poly)
    )
}

fn check_degree(
    args: &VerifyArgs,
    sub: Option<&Subfield>,
    methods: &[Method],
    k: usize,
    n: usize,
) -> BTreeMap<String, Tally> {
    let ctx = &args.field.field;
    let s = args.field.coeff_degree;
    let p = ctx.p();
    let mut rng = degree_rng(args.field.seed, k);
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    for _ in 0..args.trials {
        let poly = sample::poly(ctx, sub, n, &mut rng);
        let alpha = sample::element(ctx, &mut rng);
        let oracle = poly.evaluate(ctx, &alpha);
        let mut record = |name: String, value: FieldElement, measured: u64, limit: u64, repro: &dyn Fn() -> String| {
            let t = tallies.entry(name).or_default();
            t.runs += 1;
            let equal = value == oracle;
            t.equal += equal as u64;
            t.within_bound += (measured <= limit) as u64;
            if (!equal || measured > limit) && t.first_failure.is_none() {
                let what = if equal { "over its bound" } else { "value differs from Horner" };
                t.first_failure = Some(format!("{what}: {}", repro()));
            }
        };
        for &method in methods {
            let depth = plan_depth(method, p, s, n);
            let got = run_method(ctx, sub, &poly, &alpha, method, depth).expect("sampled instance is valid");
            record(
                method.name().to_string(),
                got.value,
                got.counter.charged_mul(),
                bound(method, p, s, n, depth),
                &|| reproduction(ctx, &poly, &alpha, method, depth),
            );
        }
        let (value, plan, counter) = eval::eval_best(ctx, &poly, &alpha).expect("sampled instance is valid");
        record(
            "best".to_string(),
            value,
            counter.charged_mul(),
            plan.predicted_mul,
            &|| reproduction(ctx, &poly, &alpha, plan.method, plan.depth),
        );
    }
    tallies
}

pub fn run(args: &VerifyArgs) -> anyhow::Result<bool> {
    let ctx = &args.field.field;
    let s = args.field.coeff_degree;
    let sub = subfield(ctx, s)?;
    let methods = default_methods(s);
    if args.trials == 0 {
        eprintln!("warning: --trials 0, nothing to verify");
    }
    let per_degree: Vec<_> = args
        .field
        .degrees
        .par_iter()
        .enumerate()
        .map(|(k, &n)| check_degree(args, sub.as_ref(), &methods, k, n))
        .collect();
    let mut totals: BTreeMap<String, Tally> = BTreeMap::new();
    for tallies in per_degree {
        for (name, t) in tallies {
            totals.entry(name).or_default().merge(t);
        }
    }

    println!("field {} s={s} degrees {:?} trials {}", ctx.spec_string(), args.field.degrees, args.trials);
    println!("{:<10} {:>8} {:>8} {:>12}", "method", "runs", "equal", "within_bound");
    let mut ok = true;
    for (name, t) in &totals {
        println!("{name:<10} {:>8} {:>8} {:>12}", t.runs, t.equal, t.within_bound);
        if let Some(failure) = &t.first_failure {
            ok &= t.equal == t.runs;
            println!("  first failure for {name}: {failure}");
        }
    }
    println!("{}", if ok { "all evaluations agree with Horner" } else { "MISMATCH" });
    Ok(ok)
}
