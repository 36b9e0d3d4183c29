//! Evaluation of polynomials whose coefficients lie in a proper subfield
//! F_{p^s} of F_{p^m}.

use super::automorphic::{combine_level, frobenius_points, leaf_values};
use super::table::{CoefficientSet, LeafTable};
use super::{validate, Evaluation};
use crate::cost::{lopt, Method};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, Meter, Subfield};
use crate::poly::{basis_split, radix_tree, DensePoly};

fn check_subfield(ctx: &FieldContext, sub: &Subfield, poly: &DensePoly) -> Result<()> {
    let s = sub.s();
    if !ctx.m().is_multiple_of(s) {
        return Err(Error::NotADivisor { s, m: ctx.m() });
    }
    for (index, c) in poly.coeffs().iter().enumerate() {
        if !ctx.is_in_subfield(c, s)? {
            return Err(Error::CoefficientOutsideSubfield { index, s });
        }
    }
    Ok(())
}

/// Basis-split evaluation at the depth chosen by the cost model.
pub fn eval_ext_basis(
    ctx: &FieldContext,
    sub: &Subfield,
    poly: &DensePoly,
    alpha: &FieldElement,
) -> Result<Evaluation> {
    let n = poly.degree_or_zero() as u64;
    let depth = if n == 0 {
        0
    } else {
        lopt(Method::ExtBasis, ctx.p(), sub.s() as u32, n).depth
    };
    eval_ext_basis_at(ctx, sub, poly, alpha, depth)
}

/// Writes P = Σ β^i P_i with prime-field parts, evaluates all parts with the
/// first automorphic method at a common depth sharing one power table, and
/// recombines Horner-style in β.
pub fn eval_ext_basis_at(
    ctx: &FieldContext,
    sub: &Subfield,
    poly: &DensePoly,
    alpha: &FieldElement,
    depth: u32,
) -> Result<Evaluation> {
    validate(ctx, poly, alpha)?;
    check_subfield(ctx, sub, poly)?;
    let mut meter = Meter::new(ctx);
    let Some(n) = poly.degree() else {
        return Ok(Evaluation::new(ctx.zero(), meter));
    };
    let p = ctx.p() as usize;
    let parts = basis_split(poly, sub, ctx)?;
    let h = n / p.pow(depth);
    let points = frobenius_points(&mut meter, alpha, depth, h >= 1)?;
    let leaf_point = points.get(depth as usize).copied().unwrap_or(*alpha);
    let table = LeafTable::build(&mut meter, &leaf_point, h, &CoefficientSet::Prime)?;

    let mut part_values = Vec::with_capacity(parts.len());
    for part in &parts {
        let tree = radix_tree(part, p, depth);
        let mut values = leaf_values(&mut meter, &tree.leaves, &table)?;
        for level in (0..depth as usize).rev() {
            values = combine_level(&mut meter, &values, p, &points[level], |_, _, v| Ok(*v))?;
        }
        part_values.push(values[0]);
    }
    let beta = sub.beta();
    let (last, rest) = part_values.split_last().expect("s >= 1");
    let mut acc = *last;
    for v in rest.iter().rev() {
        acc = meter.mul(&acc, &beta)?;
        acc = meter.add(&acc, v)?;
    }
    Ok(Evaluation::new(acc, meter))
}

/// Second automorphic method over F_{p^s}.
///
/// With K = L mod s, the leaves carry the coefficients σ^{-K}(c). Each leaf
/// is evaluated with the original coefficients at σ^K(α) and brought back
/// with σ^{-K}; fused with the first p-th power of the rebuild this is
/// σ^{1-K}. For K = 0 the leaves are evaluated at α directly and no
/// automorphism is applied at all.
///
/// Automorphisms acting on leaf values are charged as powers with exponent
/// p^{s-j} for σ^{-j}, and σ^K(α) as a power with exponent p^K.
pub fn eval_ext_m2(
    ctx: &FieldContext,
    sub: &Subfield,
    poly: &DensePoly,
    alpha: &FieldElement,
    depth: u32,
) -> Result<Evaluation> {
    validate(ctx, poly, alpha)?;
    check_subfield(ctx, sub, poly)?;
    let mut meter = Meter::new(ctx);
    let Some(n) = poly.degree() else {
        return Ok(Evaluation::new(ctx.zero(), meter));
    };
    let p = ctx.p() as usize;
    let s = sub.s();
    let k = depth as usize % s;
    let h = n / p.pow(depth);
    let leaf_point = if k != 0 && h >= 1 {
        meter.frobenius(alpha, k)?
    } else {
        *alpha
    };
    let coefficients = CoefficientSet::subfield(&meter, sub);
    let table = LeafTable::build(&mut meter, &leaf_point, h, &coefficients)?;
    let tree = radix_tree(poly, p, depth);
    let mut values = leaf_values(&mut meter, &tree.leaves, &table)?;
    for level in (0..depth as usize).rev() {
        let bottom = level + 1 == depth as usize;
        values = combine_level(&mut meter, &values, p, alpha, |meter, _, v| {
            if !bottom || k == 0 {
                meter.pth_power(v)
            } else if k == 1 {
                Ok(*v)
            } else {
                let back = k - 1;
                meter.frobenius_charged(v, -(back as isize), (s - back) as u64)
            }
        })?;
    }
    Ok(Evaluation::new(values[0], meter))
}
