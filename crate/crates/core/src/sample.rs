//! Seeded sampling of field elements and polynomials.
//!
//! Every function draws only from the supplied generator, so a seeded
//! generator fully determines the output.

use rand::Rng;

use crate::field::{FieldContext, FieldElement, Subfield};
use crate::poly::DensePoly;

pub fn element<R: Rng + ?Sized>(ctx: &FieldContext, rng: &mut R) -> FieldElement {
    ctx.from_index(rng.gen_range(0..ctx.order()))
}

pub fn nonzero_element<R: Rng + ?Sized>(ctx: &FieldContext, rng: &mut R) -> FieldElement {
    ctx.from_index(rng.gen_range(1..ctx.order()))
}

/// Uniform element of F_{p^s}; `None` is the prime field.
pub fn subfield_element<R: Rng + ?Sized>(
    ctx: &FieldContext,
    sub: Option<&Subfield>,
    rng: &mut R,
) -> FieldElement {
    match sub {
        None => ctx.constant(rng.gen_range(0..ctx.p())),
        Some(sub) => {
            let coords: Vec<u64> = (0..sub.s()).map(|_| rng.gen_range(0..ctx.p())).collect();
            sub.solver().combine(ctx, &coords)
        }
    }
}

/// Element of F_{p^s} other than 0 and 1. Needs p^s > 2.
pub fn nontrivial_subfield_element<R: Rng + ?Sized>(
    ctx: &FieldContext,
    sub: Option<&Subfield>,
    rng: &mut R,
) -> FieldElement {
    loop {
        let e = subfield_element(ctx, sub, rng);
        if !e.is_trivial() {
            return e;
        }
    }
}

/// Degree exactly n (for n > 0) with coefficients uniform in F_{p^s}.
pub fn poly<R: Rng + ?Sized>(
    ctx: &FieldContext,
    sub: Option<&Subfield>,
    n: usize,
    rng: &mut R,
) -> DensePoly {
    let mut coeffs: Vec<FieldElement> = (0..=n).map(|_| subfield_element(ctx, sub, rng)).collect();
    if n > 0 {
        while coeffs[n].is_zero() {
            coeffs[n] = subfield_element(ctx, sub, rng);
        }
    }
    DensePoly::from_raw(coeffs, sub.map_or(1, Subfield::s))
}

/// Every coefficient avoids 0 and 1, so no product with a coefficient is
/// skipped. For p = 2 and s = 1 this is impossible and the coefficients
/// are all 1.
pub fn worst_case_poly<R: Rng + ?Sized>(
    ctx: &FieldContext,
    sub: Option<&Subfield>,
    n: usize,
    rng: &mut R,
) -> DensePoly {
    let s = sub.map_or(1, Subfield::s);
    let coeffs = (0..=n)
        .map(|_| {
            if ctx.p() == 2 && s == 1 {
                ctx.one()
            } else {
                nontrivial_subfield_element(ctx, sub, rng)
            }
        })
        .collect();
    DensePoly::from_raw(coeffs, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_output_is_reproducible() {
        let f = FieldContext::with_degree(2, 8).unwrap();
        let sub = Subfield::new(&f, 4).unwrap();
        let a = poly(&f, Some(&sub), 50, &mut ChaCha8Rng::seed_from_u64(3));
        let b = poly(&f, Some(&sub), 50, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(50));
        assert!(a.coeffs().iter().all(|c| f.is_in_subfield(c, 4).unwrap()));
    }

    #[test]
    fn worst_case_avoids_trivial_coefficients() {
        let f = FieldContext::with_degree(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = worst_case_poly(&f, None, 40, &mut rng);
        assert_eq!(p.degree(), Some(40));
        assert!(p.coeffs().iter().all(|c| !c.is_trivial() && c.coeffs()[1] == 0));
        let z = poly(&f, None, 0, &mut rng);
        assert!(z.degree_or_zero() == 0);
    }
}
