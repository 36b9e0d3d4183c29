use super::arith::inv_mod_prime;
use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

/// Coordinates with respect to a list of F_p-linearly independent elements.
///
/// Row reduction is done once at construction; each query is then a single
/// m x m matrix-vector product over F_p plus a consistency check.
#[derive(Debug, Clone)]
pub struct BasisSolver {
    p: u64,
    basis: Vec<FieldElement>,
    /// Row operations taking the basis matrix to `[I_k; 0]`.
    reducer: Vec<Vec<u64>>,
}

impl BasisSolver {
    pub fn new(ctx: &FieldContext, basis: Vec<FieldElement>) -> Result<Self> {
        for b in &basis {
            ctx.check(b)?;
        }
        let p = ctx.p();
        let m = ctx.m();
        let k = basis.len();
        if k > m {
            return Err(Error::NotABasis);
        }
        // augmented [A | I], A is m x k with column j = basis[j]
        let mut rows: Vec<Vec<u64>> = (0..m)
            .map(|i| {
                let mut row: Vec<u64> = basis.iter().map(|b| b.coeffs()[i] as u64).collect();
                row.extend((0..m).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..m)
                .find(|&r| rows[r][col] != 0)
                .ok_or(Error::NotABasis)?;
            rows.swap(col, pivot);
            let inv = inv_mod_prime(rows[col][col], p);
            for v in rows[col].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..m {
                if r != col && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    let pivot_row = rows[col].clone();
                    for (v, pv) in rows[r].iter_mut().zip(&pivot_row) {
                        *v = (*v + p - factor * pv % p) % p;
                    }
                }
            }
        }
        let reducer = rows.into_iter().map(|row| row[k..].to_vec()).collect();
        Ok(BasisSolver { p, basis, reducer })
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Coordinates d with a = Σ d_i · basis_i.
    pub fn coordinates(&self, a: &FieldElement) -> Result<Vec<u64>> {
        let p = self.p;
        let v = a.coeffs();
        let reduced: Vec<u64> = self
            .reducer
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&r, &x)| (acc + r * x as u64) % p)
            })
            .collect();
        let k = self.basis.len();
        if reduced[k..].iter().any(|&x| x != 0) {
            return Err(Error::OutsideSpan);
        }
        Ok(reduced[..k].to_vec())
    }

    /// Σ d_i · basis_i (uncounted: scalars are prime-field residues).
    pub fn combine(&self, ctx: &FieldContext, coords: &[u64]) -> FieldElement {
        self.basis
            .iter()
            .zip(coords)
            .fold(ctx.zero(), |acc, (b, &d)| {
                ctx.add_raw(&acc, &ctx.mul_raw(&ctx.constant(d), b))
            })
    }
}

/// The subfield F_{p^s} of F_{p^m} with a polynomial basis 1, β, …, β^{s-1}.
#[derive(Debug, Clone)]
pub struct Subfield {
    s: usize,
    beta: FieldElement,
    solver: BasisSolver,
}

impl Subfield {
    /// Uses β = α^{(p^m - 1)/(p^s - 1)}, a primitive element of F_{p^s}.
    pub fn new(ctx: &FieldContext, s: usize) -> Result<Self> {
        if s == 0 || !ctx.m().is_multiple_of(s) {
            return Err(Error::NotADivisor { s, m: ctx.m() });
        }
        let sub_order = (ctx.p() as u128).pow(s as u32);
        let beta = ctx.pow(ctx.alpha(), (ctx.order() - 1) / (sub_order - 1));
        Self::with_generator(ctx, s, beta)
    }

    pub fn with_generator(ctx: &FieldContext, s: usize, beta: FieldElement) -> Result<Self> {
        if !ctx.is_in_subfield(&beta, s)? {
            return Err(Error::NotABasis);
        }
        let mut basis = Vec::with_capacity(s);
        let mut cur = ctx.one();
        for _ in 0..s {
            basis.push(cur);
            cur = ctx.mul_raw(&cur, &beta);
        }
        let solver = BasisSolver::new(ctx, basis)?;
        Ok(Subfield { s, beta, solver })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn solver(&self) -> &BasisSolver {
        &self.solver
    }

    /// Coordinates in the β-basis; errors if a is outside F_{p^s}.
    pub fn coordinates(&self, a: &FieldElement) -> Result<Vec<u64>> {
        self.solver.coordinates(a)
    }

    /// Every element of F_{p^s}, ordered by β-coordinates read as a base-p
    /// number. Intended for small subfields.
    pub fn elements(&self, ctx: &FieldContext) -> Vec<FieldElement> {
        let p = ctx.p() as u128;
        let size = p.pow(self.s as u32);
        (0..size)
            .map(|mut idx| {
                let coords: Vec<u64> = (0..self.s)
                    .map(|_| {
                        let d = (idx % p) as u64;
                        idx /= p;
                        d
                    })
                    .collect();
                self.solver.combine(ctx, &coords)
            })
            .collect()
    }
}
