//! Polynomial evaluators. Each returns the value together with the
//! operations it performed.

pub(crate) mod automorphic;
mod extension;
mod table;

pub use automorphic::{eval_m1, eval_m2};
pub use extension::{eval_ext_basis, eval_ext_basis_at, eval_ext_m2};

use crate::cost::{self, EvalPlan, Method};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, Meter, OpCounter, Subfield};
use crate::poly::DensePoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: FieldElement,
    pub counter: OpCounter,
}

impl Evaluation {
    pub(crate) fn new(value: FieldElement, meter: Meter<'_>) -> Self {
        Evaluation {
            value,
            counter: meter.into_counter(),
        }
    }
}

pub(crate) fn validate(ctx: &FieldContext, poly: &DensePoly, alpha: &FieldElement) -> Result<()> {
    ctx.check(alpha)?;
    poly.coeffs().iter().try_for_each(|c| ctx.check(c))
}

pub(crate) fn require_prime_coefficients(ctx: &FieldContext, poly: &DensePoly) -> Result<()> {
    let _ = ctx;
    match poly
        .coeffs()
        .iter()
        .position(|c| c.coeffs()[1..].iter().any(|&x| x != 0))
    {
        Some(index) => Err(Error::CoefficientOutsideSubfield { index, s: 1 }),
        None => Ok(()),
    }
}

/// Power chain η_{i+1} = α η_i, then a_0 + Σ a_i η_i.
pub fn eval_direct(ctx: &FieldContext, poly: &DensePoly, alpha: &FieldElement) -> Result<Evaluation> {
    validate(ctx, poly, alpha)?;
    let mut meter = Meter::new(ctx);
    let Some((first, rest)) = poly.coeffs().split_first() else {
        return Ok(Evaluation::new(ctx.zero(), meter));
    };
    let powers = meter.powers(alpha, rest.len())?;
    let mut acc = *first;
    for (c, eta) in rest.iter().zip(&powers[1..]) {
        let term = meter.mul(c, eta)?;
        acc = meter.add(&acc, &term)?;
    }
    Ok(Evaluation::new(acc, meter))
}

/// Horner's rule from the leading coefficient down.
pub fn eval_horner(ctx: &FieldContext, poly: &DensePoly, alpha: &FieldElement) -> Result<Evaluation> {
    validate(ctx, poly, alpha)?;
    let mut meter = Meter::new(ctx);
    let Some((last, rest)) = poly.coeffs().split_last() else {
        return Ok(Evaluation::new(ctx.zero(), meter));
    };
    let mut acc = *last;
    for c in rest.iter().rev() {
        acc = meter.mul(&acc, alpha)?;
        acc = meter.add(&acc, c)?;
    }
    Ok(Evaluation::new(acc, meter))
}

/// Runs `method` at `depth`. Extension methods use the subfield of the
/// polynomial's declared degree with its default basis generator.
pub fn evaluate(
    ctx: &FieldContext,
    poly: &DensePoly,
    alpha: &FieldElement,
    method: Method,
    depth: u32,
) -> Result<Evaluation> {
    match method {
        Method::Direct => eval_direct(ctx, poly, alpha),
        Method::Horner => eval_horner(ctx, poly, alpha),
        Method::M1 => eval_m1(ctx, poly, alpha, depth),
        Method::M2 => eval_m2(ctx, poly, alpha, depth),
        Method::ExtBasis => {
            let sub = Subfield::new(ctx, poly.coeff_degree())?;
            eval_ext_basis_at(ctx, &sub, poly, alpha, depth)
        }
        Method::ExtM2 => {
            let sub = Subfield::new(ctx, poly.coeff_degree())?;
            eval_ext_m2(ctx, &sub, poly, alpha, depth)
        }
    }
}

/// Multiplications a method is charged with: p-th powers included.
pub fn measured_mul(counter: &OpCounter) -> u64 {
    counter.charged_mul()
}

/// Picks the cheapest method for P's degree and declared subfield, runs it,
/// and returns the value, the plan and the measured counts.
pub fn eval_best(
    ctx: &FieldContext,
    poly: &DensePoly,
    alpha: &FieldElement,
) -> Result<(FieldElement, EvalPlan, OpCounter)> {
    let n = poly.degree_or_zero() as u64;
    let plan = cost::best_plan(ctx.p(), poly.coeff_degree() as u32, n);
    let Evaluation { value, counter } = evaluate(ctx, poly, alpha, plan.method, plan.depth)?;
    Ok((value, plan, counter))
}
