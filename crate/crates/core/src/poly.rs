//! Dense polynomials and their decompositions.
//!
//! A [`DensePoly`] is a coefficient vector (index = exponent) together with
//! the degree s of the subfield F_{p^s} its coefficients are declared to lie
//! in. Coefficients are stored as full F_{p^m} elements.

use crate::error::{Error, Result};
use crate::field::{ContextSpec, FieldContext, FieldElement, Subfield};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<FieldElement>,
    coeff_degree: usize,
}

impl DensePoly {
    /// Validates that every coefficient lies in F_{p^s} and trims trailing
    /// zeros.
    pub fn new(ctx: &FieldContext, coeffs: Vec<FieldElement>, s: usize) -> Result<Self> {
        if s == 0 || !ctx.m().is_multiple_of(s) {
            return Err(Error::NotADivisor { s, m: ctx.m() });
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !ctx.is_in_subfield(c, s)? {
                return Err(Error::CoefficientOutsideSubfield { index, s });
            }
        }
        Ok(Self::from_raw(coeffs, s))
    }

    pub(crate) fn from_raw(mut coeffs: Vec<FieldElement>, coeff_degree: usize) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly {
            coeffs,
            coeff_degree,
        }
    }

    pub fn zero(s: usize) -> Self {
        DensePoly {
            coeffs: Vec::new(),
            coeff_degree: s,
        }
    }

    /// Polynomial over F_p from residues, lowest exponent first.
    pub fn from_residues(ctx: &FieldContext, residues: &[u64]) -> Self {
        Self::from_raw(residues.iter().map(|&c| ctx.constant(c)).collect(), 1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&FieldElement> {
        self.coeffs.get(i)
    }

    /// Declared coefficient subfield degree s.
    pub fn coeff_degree(&self) -> usize {
        self.coeff_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; the `n` of cost formulas.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Same coefficients with a different declared subfield.
    pub fn redeclare(&self, ctx: &FieldContext, s: usize) -> Result<Self> {
        Self::new(ctx, self.coeffs.clone(), s)
    }

    /// Uncounted Horner evaluation, for checks and setup.
    pub fn evaluate(&self, ctx: &FieldContext, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(ctx.zero(), |acc, c| {
            ctx.add_raw(&ctx.mul_raw(&acc, x), c)
        })
    }
}

/// Splits P into p parts with `P(x) = Σ_j x^j P_j(x^p)`; part j holds the
/// coefficients a_{ap + j}.
pub fn radix_split(poly: &DensePoly, radix: usize) -> Vec<DensePoly> {
    assert!(radix >= 2, "radix must be at least 2");
    (0..radix)
        .map(|j| {
            let coeffs = poly.coeffs.iter().skip(j).step_by(radix).copied().collect();
            DensePoly::from_raw(coeffs, poly.coeff_degree)
        })
        .collect()
}

/// Inverse of [`radix_split`] as a formal identity: Σ_j x^j P_j(x^p).
pub fn radix_join(ctx: &FieldContext, parts: &[DensePoly]) -> DensePoly {
    let radix = parts.len();
    let len = parts
        .iter()
        .enumerate()
        .map(|(j, part)| {
            if part.is_zero() {
                0
            } else {
                (part.coeffs.len() - 1) * radix + j + 1
            }
        })
        .max()
        .unwrap_or(0);
    let mut coeffs = vec![ctx.zero(); len];
    for (j, part) in parts.iter().enumerate() {
        for (a, c) in part.coeffs.iter().enumerate() {
            coeffs[a * radix + j] = *c;
        }
    }
    let s = parts.first().map_or(1, |p| p.coeff_degree);
    DensePoly::from_raw(coeffs, s)
}

/// The result of L nested radix splits.
///
/// Leaf index `j = j_1 + p·j_2 + … + p^{L-1}·j_L`, where j_i is the residue
/// chosen at split i; leaf j therefore holds the coefficients a_{j + p^L t}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadixTree {
    pub depth: u32,
    pub radix: usize,
    pub leaves: Vec<DensePoly>,
}

impl RadixTree {
    pub fn max_leaf_degree(&self) -> Option<usize> {
        self.leaves.iter().filter_map(DensePoly::degree).max()
    }
}

pub fn radix_tree(poly: &DensePoly, radix: usize, depth: u32) -> RadixTree {
    let mut level = vec![poly.clone()];
    let mut stride = 1usize;
    for _ in 0..depth {
        let mut next = vec![DensePoly::zero(poly.coeff_degree); level.len() * radix];
        for (h, node) in level.iter().enumerate() {
            for (j, part) in radix_split(node, radix).into_iter().enumerate() {
                next[h + stride * j] = part;
            }
        }
        level = next;
        stride *= radix;
    }
    RadixTree {
        depth,
        radix,
        leaves: level,
    }
}

/// Writes P over F_{p^s} as Σ β^i P_i with every P_i over F_p.
pub fn basis_split(poly: &DensePoly, sub: &Subfield, ctx: &FieldContext) -> Result<Vec<DensePoly>> {
    let s = sub.s();
    let mut parts = vec![Vec::with_capacity(poly.coeffs.len()); s];
    for (index, c) in poly.coeffs.iter().enumerate() {
        ctx.check(c)?;
        let coords = sub
            .coordinates(c)
            .map_err(|_| Error::CoefficientOutsideSubfield { index, s })?;
        for (part, d) in parts.iter_mut().zip(coords) {
            part.push(ctx.constant(d));
        }
    }
    Ok(parts
        .into_iter()
        .map(|coeffs| DensePoly::from_raw(coeffs, 1))
        .collect())
}

/// [`basis_split`] with an explicit generator β of F_{p^s}.
pub fn basis_split_with(
    poly: &DensePoly,
    beta: &FieldElement,
    s: usize,
    ctx: &FieldContext,
) -> Result<Vec<DensePoly>> {
    let sub = Subfield::with_generator(ctx, s, *beta)?;
    basis_split(poly, &sub, ctx)
}

/// Σ β^i P_i, coefficientwise (uncounted).
pub fn basis_join(parts: &[DensePoly], beta: &FieldElement, ctx: &FieldContext) -> DensePoly {
    let len = parts.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
    let mut coeffs = vec![ctx.zero(); len];
    let mut scale = ctx.one();
    for part in parts {
        for (slot, c) in coeffs.iter_mut().zip(&part.coeffs) {
            *slot = ctx.add_raw(slot, &ctx.mul_raw(&scale, c));
        }
        scale = ctx.mul_raw(&scale, beta);
    }
    DensePoly::from_raw(coeffs, parts.len().max(1))
}

/// Text form: a header `p=<p> s=<s> m=<m> mod=<modulus highest first>`
/// followed by one canonical coefficient per line, exponents 0..n.
pub fn write_poly_file(ctx: &FieldContext, poly: &DensePoly) -> String {
    let modulus = ctx
        .modulus()
        .iter()
        .rev()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut out = format!(
        "p={} s={} m={} mod={}\n",
        ctx.p(),
        poly.coeff_degree,
        ctx.m(),
        modulus
    );
    for c in &poly.coeffs {
        out.push_str(&ctx.encode(c));
        out.push('\n');
    }
    out
}

/// Parses the header of a polynomial file into (context spec, s).
pub fn parse_poly_header(line: &str) -> Result<(ContextSpec, usize)> {
    let mut fields = Vec::new();
    let mut s = None;
    for tok in line.split_whitespace() {
        match tok.split_once('=') {
            Some(("s", v)) => {
                s = Some(
                    v.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad s {v:?}: {e}")))?,
                )
            }
            Some(_) => fields.push(tok),
            None => return Err(Error::Parse(format!("bad header token {tok:?}"))),
        }
    }
    let spec = ContextSpec::parse(&fields.join(","))?;
    Ok((spec, s.ok_or_else(|| Error::Parse("header missing s".into()))?))
}

/// Reads a polynomial file into the given context, which must match the
/// file's header.
pub fn read_poly_file_in(ctx: &FieldContext, text: &str) -> Result<DensePoly> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty polynomial file".into()))?;
    let (spec, s) = parse_poly_header(header)?;
    let same_modulus = spec.modulus.as_ref().is_none_or(|f| *f == ctx.modulus());
    if spec.p != ctx.p() || spec.m != ctx.m() || !same_modulus {
        return Err(Error::Parse("file header does not match the field context".into()));
    }
    let coeffs = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| ctx.decode(l))
        .collect::<Result<Vec<_>>>()?;
    DensePoly::new(ctx, coeffs, s)
}

/// Reads a polynomial file, building its field context from the header.
pub fn read_poly_file(text: &str) -> Result<(FieldContext, DensePoly)> {
    let header = text
        .lines()
        .next()
        .ok_or_else(|| Error::Parse("empty polynomial file".into()))?;
    let (spec, _) = parse_poly_header(header)?;
    let ctx = spec.build()?;
    let poly = read_poly_file_in(&ctx, text)?;
    Ok((ctx, poly))
}
