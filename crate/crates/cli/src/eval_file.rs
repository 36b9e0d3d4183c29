use anyhow::Context;
use autoeval::cost;
use autoeval::eval;
use autoeval::poly::read_poly_file;
use autoeval::Subfield;

use crate::{default_methods, plan_depth, EvalArgs, UsageError};

pub fn run(args: &EvalArgs) -> anyhow::Result<bool> {
    let path = &args.poly;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (ctx, poly) = read_poly_file(&text).with_context(|| format!("parsing {}", path.display()))?;
    let alpha = match &args.point {
        Some(p) => ctx.decode(p).map_err(|e| UsageError(format!("--point: {e}")))?,
        None => ctx.alpha(),
    };
    let s = poly.coeff_degree();
    let n = poly.degree_or_zero();
    let (value, method, depth, predicted, counter) = match args.method {
        None => {
            let (value, plan, counter) = eval::eval_best(&ctx, &poly, &alpha)?;
            (value, plan.method, plan.depth, plan.predicted_mul, counter)
        }
        Some(method) => {
            if !default_methods(s).contains(&method) {
                return Err(UsageError(format!("method {method} does not apply to coefficients of degree {s}")).into());
            }
            let depth = args.depth.unwrap_or_else(|| plan_depth(method, ctx.p(), s, n));
            let got = if method.needs_extension() {
                let sub = Subfield::new(&ctx, s).map_err(|e| UsageError(e.to_string()))?;
                match method {
                    cost::Method::ExtBasis => eval::eval_ext_basis_at(&ctx, &sub, &poly, &alpha, depth),
                    _ => eval::eval_ext_m2(&ctx, &sub, &poly, &alpha, depth),
                }
            } else {
                eval::evaluate(&ctx, &poly, &alpha, method, depth)
            }
            .map_err(|e| UsageError(format!("{method}: {e}")))?;
            let predicted = cost::predicted_mul(method, ctx.p(), s as u32, n as u64, depth);
            (got.value, method, depth, predicted, got.counter)
        }
    };
    let horner = eval::eval_horner(&ctx, &poly, &alpha)?;
    println!("field {} s={s} n={n}", ctx.spec_string());
    println!("point {}", ctx.encode(&alpha));
    println!("value {}", ctx.encode(&value));
    println!("method {method} L={depth} predicted_mul={predicted} {counter}");
    println!("horner mul={} add={}", horner.counter.mul, horner.counter.add);
    Ok(value == horner.value)
}
