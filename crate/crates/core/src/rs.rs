//! Syndrome computation for the [255, 223, 33] Reed-Solomon code over
//! GF(2^8) = F_2[x]/(x^8 + x^5 + x^3 + x + 1).
//!
//! A received word r(x) is split as r1(x) + γ r2(x) with r1, r2 over
//! F_16 = F_2(β), β = α^17, and γ^2 + γ = β. Each r_k(α^j) is evaluated with
//! a depth-4 binary decomposition whose 16 leaves (degree ≤ 15, coefficients
//! in F_16) are read off a precomputed table of α^i·β^k, so the leaves cost
//! additions only.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Range;

use rand::Rng;

use crate::error::{Error, Result};
use crate::eval::automorphic::combine_level;
use crate::eval::eval_horner;
use crate::field::{BasisSolver, FieldContext, FieldElement, Meter, OpCounter};
use crate::poly::{radix_tree, DensePoly};

/// x^8 + x^5 + x^3 + x + 1, lowest power first.
pub const MODULUS: [u64; 9] = [1, 1, 0, 1, 0, 1, 0, 0, 1];
pub const LENGTH: usize = 255;
pub const DIMENSION: usize = 223;
/// Syndromes S_j = r(α^j) for j in this range.
pub const ROOTS: Range<usize> = 1..33;
pub const DEPTH: u32 = 4;

const WORST_CASE_WORD: &str = concat!(
    "e530695385aebd33b3851899cb4eae57347d27a39a0ce6d511a37a3016c7e5e4",
    "d8035619a11cc11ab189efb7fc17ae77584e18747f82dfbe244fe858080f591e",
    "cec156807e7fa6b2917ee34625e21724414ef14b0a2783bf02466b27af4571dd",
    "fdae40ee0ab82224e89a0c524f90255c4f2d5c669c8dc141e70e5278b6378386",
    "3091b36bbb7f68a443451b85db9e26d48c7595b6bc1ea5b9907295d9bf910bdb",
    "9d2cd918f527bb62854a731634a2c0e39e18e2a6407f0a55a774d33731fd4d94",
    "b4fc39cb563895835d1c9d4fab36e75d388c757098aa036e7145479803e3c674",
    "43861e0b9943462535efda34f45d32bd6a69e137e96d9aa00f9d43d2a24733",
);

pub struct RsContext {
    field: FieldContext,
    beta: FieldElement,
    gamma: FieldElement,
    /// Basis {1, β, β², β³, γ, γβ, γβ², γβ³} of GF(2^8) over F_2.
    split_basis: BasisSolver,
    /// α^i for i in [0, 255).
    alpha_pows: Vec<FieldElement>,
    /// α^i·β^k for i in [0, 255), k in [0, 15).
    products: Vec<[FieldElement; 15]>,
    /// Discrete logarithm to base β on F_16 \ {0}.
    beta_log: HashMap<FieldElement, usize>,
    alpha_table_cost: OpCounter,
    product_table_cost: OpCounter,
}

fn invariant(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(what.to_string()))
    }
}

/// Builds the field, the split basis and both lookup tables, checking the
/// structural facts the scheme depends on.
pub fn build_rs_context() -> Result<RsContext> {
    let field = FieldContext::new(2, &MODULUS)?;
    let alpha = field.x();
    invariant(field.is_primitive(&alpha), "α is primitive")?;

    let mut meter = Meter::new(&field);
    let alpha_pows = meter.powers(&alpha, LENGTH - 1)?;
    let alpha_table_cost = meter.into_counter();

    let mut meter = Meter::new(&field);
    let beta = meter.mul(&alpha_pows[16], &alpha)?;
    let mut beta_pows = vec![field.one(), beta];
    for k in 2..15 {
        let next = meter.mul(&beta_pows[k - 1], &beta)?;
        beta_pows.push(next);
    }
    let mut products = Vec::with_capacity(LENGTH);
    products.push(std::array::from_fn(|k| beta_pows[k]));
    for a in &alpha_pows[1..] {
        let mut row = [*a; 15];
        for (k, b) in beta_pows.iter().enumerate().skip(1) {
            row[k] = meter.mul(a, b)?;
        }
        products.push(row);
    }
    let product_table_cost = meter.into_counter();

    let ops = |a: &FieldElement, b: &FieldElement| field.mul_raw(a, b);
    let sum = |xs: &[FieldElement]| xs.iter().fold(field.zero(), |acc, x| field.add_raw(&acc, x));
    let b2 = ops(&beta, &beta);
    let b3 = ops(&b2, &beta);
    let b4 = ops(&b3, &beta);
    let b8 = ops(&b4, &b4);
    invariant(sum(&[b4, b3, field.one()]).is_zero(), "β is a root of x^4 + x^3 + 1")?;
    invariant(field.multiplicative_order(&beta) == Some(15), "β has order 15")?;
    invariant(sum(&[beta, b2, b4, b8]).is_one(), "β has trace 1 over F_2")?;

    let gamma = field
        .elements()
        .find(|z| field.add_raw(&ops(z, z), z) == beta)
        .ok_or_else(|| Error::Invariant("z^2 + z + β has a root".into()))?;
    invariant(!field.is_in_subfield(&gamma, 4)?, "γ lies outside F_16")?;

    let low = [field.one(), beta, b2, b3];
    let basis = low.iter().copied().chain(low.iter().map(|b| ops(b, &gamma)));
    let split_basis = BasisSolver::new(&field, basis.collect())?;

    let beta_log = beta_pows.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    Ok(RsContext {
        field,
        beta,
        gamma,
        split_basis,
        alpha_pows,
        products,
        beta_log,
        alpha_table_cost,
        product_table_cost,
    })
}

impl RsContext {
    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha_pows[1]
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn gamma(&self) -> FieldElement {
        self.gamma
    }

    /// α^e, exponent taken mod 255.
    pub fn alpha_pow(&self, e: usize) -> FieldElement {
        self.alpha_pows[e % LENGTH]
    }

    /// Cost of α^2, …, α^254.
    pub fn alpha_table_cost(&self) -> &OpCounter {
        &self.alpha_table_cost
    }

    /// Cost of α^i·β^k for i in [0, 255), k in [1, 15).
    pub fn product_table_cost(&self) -> &OpCounter {
        &self.product_table_cost
    }

    pub fn precompute_cost(&self) -> OpCounter {
        self.alpha_table_cost.clone() + &self.product_table_cost
    }

    /// c·α^e for c in F_16, by lookup.
    fn lookup(&self, c: &FieldElement, e: usize) -> FieldElement {
        if c.is_zero() {
            return self.field.zero();
        }
        self.products[e % LENGTH][self.beta_log[c]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    coeffs: Vec<FieldElement>,
}

impl ReceivedWord {
    pub fn new(ctx: &RsContext, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != LENGTH {
            return Err(Error::WordLength(coeffs.len()));
        }
        coeffs.iter().try_for_each(|c| ctx.field.check(c))?;
        Ok(ReceivedWord { coeffs })
    }

    pub fn zero(ctx: &RsContext) -> Self {
        ReceivedWord {
            coeffs: vec![ctx.field.zero(); LENGTH],
        }
    }

    /// r_i is the coefficient of x^i.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> DensePoly {
        DensePoly::from_raw(self.coeffs.clone(), 1)
    }

    pub fn add(&self, ctx: &RsContext, other: &ReceivedWord) -> ReceivedWord {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| ctx.field.add_raw(a, b))
            .collect();
        ReceivedWord { coeffs }
    }

    /// One two-digit hex byte per line, r_0 first. Blank lines are ignored.
    pub fn parse(ctx: &RsContext, text: &str) -> Result<Self> {
        let coeffs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| ctx.field.decode(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, coeffs)
    }

    pub fn to_text(&self, ctx: &RsContext) -> String {
        let mut out = String::with_capacity(3 * LENGTH);
        for c in &self.coeffs {
            out.push_str(&ctx.field.encode(c));
            out.push('\n');
        }
        out
    }
}

/// The fixed word used for the exact operation counts. Both γ-components of
/// every symbol lie in F_16 \ {0, 1}, and no leaf value, rebuilt
/// intermediate or Horner accumulator is 0 or 1 at any of the 32 roots, so
/// every scheduled product is counted.
pub fn worst_case_word(ctx: &RsContext) -> ReceivedWord {
    let coeffs = WORST_CASE_WORD
        .as_bytes()
        .chunks(2)
        .map(|b| {
            let text = std::str::from_utf8(b).expect("ascii");
            ctx.field.decode(text).expect("valid byte")
        })
        .collect();
    ReceivedWord { coeffs }
}

pub fn random_word<R: Rng + ?Sized>(ctx: &RsContext, rng: &mut R) -> ReceivedWord {
    let coeffs = (0..LENGTH)
        .map(|_| crate::sample::element(&ctx.field, rng))
        .collect();
    ReceivedWord { coeffs }
}

/// g(x) = ∏_{i=1}^{32} (x − α^i).
pub fn build_generator(ctx: &RsContext) -> DensePoly {
    let f = &ctx.field;
    let mut g = vec![f.one()];
    for i in ROOTS {
        let root = ctx.alpha_pow(i);
        let mut next = vec![f.zero(); g.len() + 1];
        for (k, c) in g.iter().enumerate() {
            next[k + 1] = f.add_raw(&next[k + 1], c);
            let t = f.mul_raw(c, &root);
            next[k] = f.add_raw(&next[k], &t);
        }
        g = next;
    }
    DensePoly::from_raw(g, 1)
}

/// message(x)·g(x) for a message of at most 223 symbols.
pub fn encode(ctx: &RsContext, message: &[FieldElement]) -> Result<ReceivedWord> {
    if message.len() > DIMENSION {
        return Err(Error::WordLength(message.len() + LENGTH - DIMENSION));
    }
    let f = &ctx.field;
    let g = build_generator(ctx);
    let mut coeffs = vec![f.zero(); LENGTH];
    for (i, m) in message.iter().enumerate() {
        f.check(m)?;
        for (k, c) in g.coeffs().iter().enumerate() {
            let t = f.mul_raw(m, c);
            coeffs[i + k] = f.add_raw(&coeffs[i + k], &t);
        }
    }
    Ok(ReceivedWord { coeffs })
}

pub fn random_codeword<R: Rng + ?Sized>(ctx: &RsContext, rng: &mut R) -> ReceivedWord {
    let message: Vec<_> = (0..DIMENSION)
        .map(|_| crate::sample::element(&ctx.field, rng))
        .collect();
    encode(ctx, &message).expect("message fits")
}

/// r = r1 + γ·r2 with r1, r2 over F_16, symbol by symbol.
pub fn gamma_split(ctx: &RsContext, r: &ReceivedWord) -> (DensePoly, DensePoly) {
    let f = &ctx.field;
    let low = &ctx.split_basis.basis()[..4];
    let mut r1 = Vec::with_capacity(LENGTH);
    let mut r2 = Vec::with_capacity(LENGTH);
    for c in &r.coeffs {
        let coords = ctx.split_basis.coordinates(c).expect("full basis");
        let part = |bits: &[u64]| {
            bits.iter()
                .zip(low)
                .filter(|(&bit, _)| bit == 1)
                .fold(f.zero(), |acc, (_, b)| f.add_raw(&acc, b))
        };
        r1.push(part(&coords[..4]));
        r2.push(part(&coords[4..]));
    }
    (DensePoly::from_raw(r1, 4), DensePoly::from_raw(r2, 4))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeSet {
    /// S_1, …, S_32.
    pub syndromes: Vec<FieldElement>,
    /// Charged multiplications spent on each S_j.
    pub per_syndrome_mul: Vec<u64>,
    /// Work shared by all syndromes and all words.
    pub precompute: OpCounter,
    /// Work spent on this word.
    pub evaluation: OpCounter,
}

impl SyndromeSet {
    pub fn total(&self) -> OpCounter {
        self.precompute.clone() + &self.evaluation
    }

    pub fn total_mul(&self) -> u64 {
        self.total().charged_mul()
    }

    pub fn is_zero(&self) -> bool {
        self.syndromes.iter().all(FieldElement::is_zero)
    }

    /// `S<j>=<hex>`, one line per syndrome.
    pub fn to_text(&self, ctx: &RsContext) -> String {
        let mut out = String::new();
        for (j, s) in ROOTS.zip(&self.syndromes) {
            writeln!(out, "S{j}={}", ctx.field.encode(s)).expect("string write");
        }
        out
    }
}

/// Value of one F_16 polynomial at α^j: leaves by table lookups and
/// additions, then four levels of squares and products by α^j.
fn eval_component(
    ctx: &RsContext,
    meter: &mut Meter<'_>,
    poly: &DensePoly,
    j: usize,
) -> Result<FieldElement> {
    let tree = radix_tree(poly, 2, DEPTH);
    let mut values = Vec::with_capacity(tree.leaves.len());
    for leaf in &tree.leaves {
        let Some((first, rest)) = leaf.coeffs().split_first() else {
            values.push(ctx.field.zero());
            continue;
        };
        let mut acc = *first;
        for (t, c) in rest.iter().enumerate() {
            let term = ctx.lookup(c, j * (t + 1));
            acc = meter.add(&acc, &term)?;
        }
        values.push(acc);
    }
    let x = ctx.alpha_pow(j);
    for _ in 0..DEPTH {
        values = combine_level(meter, &values, 2, &x, |meter, _, v| meter.pth_power(v))?;
    }
    Ok(values[0])
}

/// S_j = r1(α^j) + γ·r2(α^j) for j = 1..32. The lookup tables are the
/// precompute; the leaf polynomials never need σ^{-4}, which fixes F_16.
pub fn syndromes_automorphic(ctx: &RsContext, r: &ReceivedWord) -> SyndromeSet {
    let (r1, r2) = gamma_split(ctx, r);
    let mut syndromes = Vec::with_capacity(ROOTS.len());
    let mut per_syndrome_mul = Vec::with_capacity(ROOTS.len());
    let mut evaluation = OpCounter::new(ctx.field.cp());
    for j in ROOTS {
        let mut meter = Meter::new(&ctx.field);
        let s = (|| {
            let v1 = eval_component(ctx, &mut meter, &r1, j)?;
            let v2 = eval_component(ctx, &mut meter, &r2, j)?;
            let t = meter.mul(&ctx.gamma, &v2)?;
            meter.add(&v1, &t)
        })()
        .expect("elements of one context");
        let counter = meter.into_counter();
        per_syndrome_mul.push(counter.charged_mul());
        evaluation += &counter;
        syndromes.push(s);
    }
    SyndromeSet {
        syndromes,
        per_syndrome_mul,
        precompute: ctx.precompute_cost(),
        evaluation,
    }
}

/// α^2, …, α^32 by the power chain, then Horner's rule at each root.
pub fn syndromes_horner(ctx: &RsContext, r: &ReceivedWord) -> SyndromeSet {
    let f = &ctx.field;
    let mut meter = Meter::new(f);
    let roots = meter.powers(&ctx.alpha(), ROOTS.end - 1).expect("same context");
    let precompute = meter.into_counter();
    let poly = r.as_poly();
    let mut syndromes = Vec::with_capacity(ROOTS.len());
    let mut per_syndrome_mul = Vec::with_capacity(ROOTS.len());
    let mut evaluation = OpCounter::new(f.cp());
    for x in &roots[ROOTS] {
        let e = eval_horner(f, &poly, x).expect("same context");
        per_syndrome_mul.push(e.counter.charged_mul());
        evaluation += &e.counter;
        syndromes.push(e.value);
    }
    SyndromeSet {
        syndromes,
        per_syndrome_mul,
        precompute,
        evaluation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmortizedCost {
    pub horner: u64,
    pub automorphic: u64,
}

/// Worst-case multiplications for K words: 31 + 8128·K with Horner's rule
/// against 3823 + 2912·K with the tables.
pub fn amortized_cost(words: u64) -> AmortizedCost {
    let roots = ROOTS.len() as u64;
    let horner_fixed = roots - 1;
    let horner_per_word = roots * (LENGTH as u64 - 1);
    let table_fixed = (LENGTH as u64 - 2) + LENGTH as u64 * 14;
    let per_syndrome = 2 * (30 + 15) + 1;
    AmortizedCost {
        horner: horner_fixed + horner_per_word * words,
        automorphic: table_fixed + roots * per_syndrome * words,
    }
}

/// Measured totals of both pipelines over a batch of words, with the shared
/// precompute counted once.
pub fn measured_cost(ctx: &RsContext, words: &[ReceivedWord]) -> AmortizedCost {
    let mut cost = AmortizedCost {
        horner: 0,
        automorphic: 0,
    };
    for (i, w) in words.iter().enumerate() {
        let a = syndromes_automorphic(ctx, w);
        let h = syndromes_horner(ctx, w);
        if i == 0 {
            cost.automorphic += a.precompute.charged_mul();
            cost.horner += h.precompute.charged_mul();
        }
        cost.automorphic += a.evaluation.charged_mul();
        cost.horner += h.evaluation.charged_mul();
    }
    cost
}
