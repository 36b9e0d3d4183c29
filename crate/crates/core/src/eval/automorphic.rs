//! Radix-p evaluation of polynomials with prime-field coefficients.

use super::table::{CoefficientSet, LeafTable};
use super::{require_prime_coefficients, validate, Evaluation};
use crate::error::Result;
use crate::field::{FieldContext, FieldElement, Meter};
use crate::poly::{radix_tree, DensePoly};

/// σ^0(α), …, σ^{L−1}(α) and, when `with_last`, σ^L(α); each step raises the
/// previous point to the p-th power along the consecutive power chain
/// (p − 1 products).
pub(crate) fn frobenius_points(
    meter: &mut Meter<'_>,
    alpha: &FieldElement,
    depth: u32,
    with_last: bool,
) -> Result<Vec<FieldElement>> {
    let p = meter.ctx().p() as usize;
    let steps = if with_last { depth } else { depth.saturating_sub(1) };
    let mut points = vec![*alpha];
    for i in 0..steps as usize {
        let next = meter.powers(&points[i], p)?[p];
        points.push(next);
    }
    Ok(points)
}

/// Collapses one tree level: node h of level i combines the children
/// h + p^i·j, j < p, Horner-style in `point` after transforming each child.
pub(crate) fn combine_level<F>(
    meter: &mut Meter<'_>,
    children: &[FieldElement],
    radix: usize,
    point: &FieldElement,
    mut transform: F,
) -> Result<Vec<FieldElement>>
where
    F: FnMut(&mut Meter<'_>, usize, &FieldElement) -> Result<FieldElement>,
{
    let width = children.len() / radix;
    let mut out = Vec::with_capacity(width);
    for h in 0..width {
        let child = |j: usize| h + width * j;
        let top = child(radix - 1);
        let mut acc = transform(meter, top, &children[top])?;
        for j in (0..radix - 1).rev() {
            acc = meter.mul(&acc, point)?;
            let term = transform(meter, child(j), &children[child(j)])?;
            acc = meter.add(&acc, &term)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Leaf values of P after `depth` splits, all evaluated at one point.
pub(crate) fn leaf_values(
    meter: &mut Meter<'_>,
    leaves: &[DensePoly],
    table: &LeafTable,
) -> Result<Vec<FieldElement>> {
    leaves.iter().map(|leaf| table.eval(meter, leaf)).collect()
}

/// First automorphic method: the p^L leaves are evaluated at σ^L(α) and the
/// value is rebuilt level by level at σ^i(α).
pub fn eval_m1(
    ctx: &FieldContext,
    poly: &DensePoly,
    alpha: &FieldElement,
    depth: u32,
) -> Result<Evaluation> {
    validate(ctx, poly, alpha)?;
    require_prime_coefficients(ctx, poly)?;
    let mut meter = Meter::new(ctx);
    let value = m1_value(&mut meter, poly, alpha, depth)?;
    Ok(Evaluation::new(value, meter))
}

pub(crate) fn m1_value(
    meter: &mut Meter<'_>,
    poly: &DensePoly,
    alpha: &FieldElement,
    depth: u32,
) -> Result<FieldElement> {
    let ctx = meter.ctx();
    let Some(n) = poly.degree() else {
        return Ok(ctx.zero());
    };
    let p = ctx.p() as usize;
    let h = n / p.pow(depth);
    let points = frobenius_points(meter, alpha, depth, h >= 1)?;
    let leaf_point = points.get(depth as usize).copied().unwrap_or(*alpha);
    let table = LeafTable::build(meter, &leaf_point, h, &CoefficientSet::Prime)?;
    let tree = radix_tree(poly, p, depth);
    let mut values = leaf_values(meter, &tree.leaves, &table)?;
    for level in (0..depth as usize).rev() {
        values = combine_level(meter, &values, p, &points[level], |_, _, v| Ok(*v))?;
    }
    Ok(values[0])
}

/// Second automorphic method: leaves are evaluated at α itself and every
/// level is rebuilt as Σ α^j (child_j)^p.
pub fn eval_m2(
    ctx: &FieldContext,
    poly: &DensePoly,
    alpha: &FieldElement,
    depth: u32,
) -> Result<Evaluation> {
    validate(ctx, poly, alpha)?;
    require_prime_coefficients(ctx, poly)?;
    let mut meter = Meter::new(ctx);
    let Some(n) = poly.degree() else {
        return Ok(Evaluation::new(ctx.zero(), meter));
    };
    let p = ctx.p() as usize;
    let h = n / p.pow(depth);
    let table = LeafTable::build(&mut meter, alpha, h, &CoefficientSet::Prime)?;
    let tree = radix_tree(poly, p, depth);
    let mut values = leaf_values(&mut meter, &tree.leaves, &table)?;
    for level in (0..depth as usize).rev() {
        let bottom = level + 1 == depth as usize;
        values = combine_level(&mut meter, &values, p, alpha, |meter, idx, v| {
            // a constant leaf is a prime-field element, fixed by x -> x^p
            if bottom && tree.leaves[idx].degree().unwrap_or(0) == 0 {
                Ok(*v)
            } else {
                meter.pth_power(v)
            }
        })?;
    }
    Ok(Evaluation::new(values[0], meter))
}
