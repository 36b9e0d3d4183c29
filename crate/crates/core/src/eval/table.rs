use std::collections::HashMap;

use crate::error::Result;
use crate::field::{FieldElement, Meter, Subfield};
use crate::poly::DensePoly;

/// Which coefficient values get a precomputed product row.
pub(crate) enum CoefficientSet {
    /// Residues 2..p−1 of the prime field.
    Prime,
    /// Every element of a subfield except 0 and 1.
    Subfield(Vec<FieldElement>),
}

impl CoefficientSet {
    pub(crate) fn subfield(meter: &Meter<'_>, sub: &Subfield) -> Self {
        let elems = sub
            .elements(meter.ctx())
            .into_iter()
            .filter(|e| !e.is_trivial())
            .collect();
        CoefficientSet::Subfield(elems)
    }
}

/// Powers x^0..x^h of a shared point and, for each nontrivial coefficient
/// value c, the products c·x^t. Leaves are then evaluated with additions
/// only.
pub(crate) struct LeafTable {
    powers: Vec<FieldElement>,
    rows: Vec<Vec<FieldElement>>,
    index: Option<HashMap<FieldElement, usize>>,
}

impl LeafTable {
    pub(crate) fn build(
        meter: &mut Meter<'_>,
        point: &FieldElement,
        max_degree: usize,
        coefficients: &CoefficientSet,
    ) -> Result<Self> {
        let ctx = meter.ctx();
        let powers = meter.powers(point, max_degree)?;
        let (values, index): (Vec<FieldElement>, _) = match coefficients {
            CoefficientSet::Prime => ((2..ctx.p()).map(|c| ctx.constant(c)).collect(), None),
            CoefficientSet::Subfield(elems) => {
                let index = elems.iter().enumerate().map(|(i, e)| (*e, i)).collect();
                (elems.clone(), Some(index))
            }
        };
        let mut rows = Vec::with_capacity(values.len());
        for c in &values {
            let mut row = Vec::with_capacity(max_degree + 1);
            row.push(*c);
            for x in &powers[1..] {
                row.push(meter.mul(c, x)?);
            }
            rows.push(row);
        }
        Ok(LeafTable {
            powers,
            rows,
            index,
        })
    }

    fn term(&self, c: &FieldElement, t: usize) -> FieldElement {
        if c.is_one() {
            return self.powers[t];
        }
        let row = match &self.index {
            None => c.coeffs()[0] as usize - 2,
            Some(map) => map[c],
        };
        self.rows[row][t]
    }

    /// Σ c_t x^t by lookups; one addition per term past the constant.
    pub(crate) fn eval(&self, meter: &mut Meter<'_>, leaf: &DensePoly) -> Result<FieldElement> {
        let ctx = meter.ctx();
        let coeffs = leaf.coeffs();
        let Some((first, rest)) = coeffs.split_first() else {
            return Ok(ctx.zero());
        };
        let mut acc = *first;
        for (t, c) in rest.iter().enumerate() {
            let term = if c.is_zero() {
                ctx.zero()
            } else {
                self.term(c, t + 1)
            };
            acc = meter.add(&acc, &term)?;
        }
        Ok(acc)
    }
}
