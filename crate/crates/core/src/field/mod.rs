//! Arithmetic in F_p and F_{p^m}.
//!
//! Elements are dense coefficient vectors in the polynomial basis of the
//! context's modulus. Every element carries the identifier of the context it
//! was created in; combining elements of different contexts is an error.
//!
//! Operations on [`FieldContext`] are uncounted. Evaluation algorithms go
//! through a [`Meter`], which performs the same arithmetic and tallies it in
//! an [`OpCounter`].

mod arith;
mod counter;
mod fp_poly;
mod subfield;

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

pub use counter::{Meter, OpCounter};
pub use subfield::{BasisSolver, Subfield};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 64;

static NEXT_CONTEXT_ID: AtomicU32 = AtomicU32::new(1);

/// An element of F_{p^m}, tagged with the context that owns it.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ctx: u32,
    m: u8,
    coeffs: [u16; MAX_DEGREE],
}

impl FieldElement {
    /// Coefficients over F_p, index i = coefficient of x^i.
    pub fn coeffs(&self) -> &[u16] {
        &self.coeffs[..self.m as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        let c = self.coeffs();
        c[0] == 1 && c[1..].iter().all(|&x| x == 0)
    }

    /// True for 0 and 1, the operands whose products are never counted.
    pub fn is_trivial(&self) -> bool {
        let c = self.coeffs();
        c[0] <= 1 && c[1..].iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement{:?}", self.coeffs())
    }
}

/// Parameters and precomputed constants for F_{p^m}.
#[derive(Clone)]
pub struct FieldContext {
    id: u32,
    p: u32,
    m: usize,
    /// Monic modulus, lowest coefficient first, length m + 1.
    modulus: Vec<u16>,
    /// `(p - f_i) mod p` for the low coefficients of the modulus.
    neg_modulus: Vec<u64>,
    order: u128,
    group_order_factors: Vec<u64>,
    /// Images of the basis powers under x -> x^p.
    frobenius_cols: Vec<[u16; MAX_DEGREE]>,
    alpha: FieldElement,
    cp: u64,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Number of multiplications spent by square-and-multiply on a p-th power.
pub fn pth_power_cost(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let squarings = 63 - p.leading_zeros() as u64;
    squarings + p.count_ones() as u64 - 1
}

impl FieldContext {
    /// Builds F_{p^m} from a monic irreducible modulus given lowest
    /// coefficient first.
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        if p >= 1 << 16 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::DegreeOutOfRange(0));
        }
        let m = modulus.len() - 1;
        if m > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(m));
        }
        let order = (p as u128)
            .checked_pow(m as u32)
            .filter(|&q| q <= 1u128 << 64)
            .ok_or(Error::FieldTooLarge { p, m })?;
        if modulus[m] != 1 {
            return Err(Error::BadModulus { expected: m });
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::UnreducedCoefficient(c));
        }
        if !fp_poly::is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        let id = NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed);
        let placeholder = FieldElement {
            ctx: id,
            m: m as u8,
            coeffs: [0; MAX_DEGREE],
        };
        let mut ctx = FieldContext {
            id,
            p: p as u32,
            m,
            modulus: modulus.iter().map(|&c| c as u16).collect(),
            neg_modulus: modulus[..m].iter().map(|&c| (p - c) % p).collect(),
            order,
            group_order_factors: arith::prime_factors((order - 1) as u64),
            frobenius_cols: Vec::new(),
            alpha: placeholder,
            cp: pth_power_cost(p),
        };
        let x = ctx.x();
        let xp = ctx.pow(x, p as u128);
        let mut cols = Vec::with_capacity(m);
        let mut cur = ctx.one();
        for _ in 0..m {
            cols.push(cur.coeffs);
            cur = ctx.mul_raw(&cur, &xp);
        }
        ctx.frobenius_cols = cols;
        ctx.alpha = if ctx.is_primitive(&x) {
            x
        } else {
            (1..ctx.order)
                .map(|i| ctx.from_index(i))
                .find(|e| ctx.is_primitive(e))
                .expect("a finite field has a primitive element")
        };
        Ok(ctx)
    }

    /// F_{p^m} with the deterministic modulus from [`find_irreducible`].
    pub fn with_degree(p: u64, m: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 16 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Self::new(p, &find_irreducible(p, m))
    }

    /// Replaces the designated generator α. It must be primitive.
    pub fn with_generator(mut self, alpha: FieldElement) -> Result<Self> {
        self.check(&alpha)?;
        if !self.is_primitive(&alpha) {
            return Err(Error::Parse("generator hint is not primitive".into()));
        }
        self.alpha = alpha;
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Field size p^m.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Modulus coefficients, lowest first.
    pub fn modulus(&self) -> Vec<u64> {
        self.modulus.iter().map(|&c| c as u64).collect()
    }

    /// Multiplication cost of one p-th power.
    pub fn cp(&self) -> u64 {
        self.cp
    }

    /// The designated primitive element α.
    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn check(&self, a: &FieldElement) -> Result<()> {
        if a.ctx == self.id {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            ctx: self.id,
            m: self.m as u8,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// Embeds c mod p from the prime field.
    pub fn constant(&self, c: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = (c % self.p as u64) as u16;
        e
    }

    /// The class of x modulo the field modulus.
    pub fn x(&self) -> FieldElement {
        if self.m == 1 {
            return self.constant(self.neg_modulus[0]);
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    /// Element with the given coefficients (lowest power first), reduced mod
    /// p. At most m coefficients are accepted.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.m {
            return Err(Error::Parse(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.m
            )));
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = (c % self.p as u64) as u16;
        }
        Ok(e)
    }

    /// Element whose coefficient vector is the base-p expansion of `index`
    /// (constant term least significant). Indices enumerate the field.
    pub fn from_index(&self, mut index: u128) -> FieldElement {
        let mut e = self.zero();
        let p = self.p as u128;
        for slot in e.coeffs[..self.m].iter_mut() {
            *slot = (index % p) as u16;
            index /= p;
        }
        e
    }

    pub fn index(&self, a: &FieldElement) -> u128 {
        a.coeffs()
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    /// All field elements in index order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, &self.neg_raw(b)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    /// a^e by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u128) -> FieldElement {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse via a^{p^m - 2}; `None` for zero.
    pub fn inverse(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(*a, self.order - 2))
        }
    }

    /// σ^k(a) = a^{p^k}.
    pub fn frobenius(&self, a: &FieldElement, k: usize) -> FieldElement {
        (0..k % self.m).fold(*a, |acc, _| self.frobenius_once(&acc))
    }

    /// σ^{-k}(a), computed as σ^{(m - k mod m) mod m}(a).
    pub fn inverse_frobenius(&self, a: &FieldElement, k: usize) -> FieldElement {
        self.frobenius(a, (self.m - k % self.m) % self.m)
    }

    /// Whether a lies in the subfield F_{p^s}; s must divide m.
    pub fn is_in_subfield(&self, a: &FieldElement, s: usize) -> Result<bool> {
        self.check(a)?;
        if s == 0 || !self.m.is_multiple_of(s) {
            return Err(Error::NotADivisor { s, m: self.m });
        }
        Ok(self.frobenius(a, s) == *a)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Option<u128> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order - 1;
        for &r in &self.group_order_factors {
            let r = r as u128;
            while ord.is_multiple_of(r) && self.pow(*a, ord / r).is_one() {
                ord /= r;
            }
        }
        Some(ord)
    }

    pub fn is_primitive(&self, a: &FieldElement) -> bool {
        self.multiplicative_order(a) == Some(self.order - 1)
    }

    pub(crate) fn add_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = *a;
        if self.p == 2 {
            for (x, y) in out.coeffs[..self.m].iter_mut().zip(&b.coeffs[..self.m]) {
                *x ^= y;
            }
        } else {
            let p = self.p;
            for (x, y) in out.coeffs[..self.m].iter_mut().zip(&b.coeffs[..self.m]) {
                *x = ((*x as u32 + *y as u32) % p) as u16;
            }
        }
        out
    }

    fn neg_raw(&self, a: &FieldElement) -> FieldElement {
        let mut out = *a;
        let p = self.p;
        for x in out.coeffs[..self.m].iter_mut() {
            *x = ((p - *x as u32) % p) as u16;
        }
        out
    }

    pub(crate) fn mul_raw(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.m;
        let p = self.p as u64;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for (i, &ai) in a.coeffs[..m].iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = ai as u64;
            for (j, &bj) in b.coeffs[..m].iter().enumerate() {
                prod[i + j] += ai * bj as u64;
            }
        }
        // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
        for k in (m..2 * m - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            for (i, &nf) in self.neg_modulus.iter().enumerate() {
                prod[k - m + i] += c * nf;
            }
        }
        let mut out = self.zero();
        for (slot, &v) in out.coeffs[..m].iter_mut().zip(&prod[..m]) {
            *slot = (v % p) as u16;
        }
        out
    }

    fn frobenius_once(&self, a: &FieldElement) -> FieldElement {
        let m = self.m;
        let p = self.p as u64;
        let mut acc = [0u64; MAX_DEGREE];
        for (&ai, col) in a.coeffs[..m].iter().zip(&self.frobenius_cols) {
            if ai == 0 {
                continue;
            }
            for (slot, &c) in acc[..m].iter_mut().zip(&col[..m]) {
                *slot = (*slot + ai as u64 * c as u64) % p;
            }
        }
        let mut out = self.zero();
        for (slot, &v) in out.coeffs[..m].iter_mut().zip(&acc[..m]) {
            *slot = v as u16;
        }
        out
    }

    /// Canonical text form: lowercase hex of the packed bits for p = 2,
    /// otherwise comma-separated residues, lowest power first.
    pub fn encode(&self, a: &FieldElement) -> String {
        if self.p == 2 {
            let width = self.m.div_ceil(4).max(1);
            format!("{:0width$x}", self.index(a), width = width)
        } else {
            a.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn decode(&self, text: &str) -> Result<FieldElement> {
        let text = text.trim();
        if self.p == 2 {
            let v = u128::from_str_radix(text, 16)
                .map_err(|e| Error::Parse(format!("bad hex element {text:?}: {e}")))?;
            if v >= self.order {
                return Err(Error::Parse(format!("element {text:?} out of range")));
            }
            return Ok(self.from_index(v));
        }
        let coeffs = text
            .split(',')
            .map(|t| {
                let v: u64 = t
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad residue {t:?}: {e}")))?;
                if v >= self.p as u64 {
                    return Err(Error::Parse(format!("residue {v} not reduced mod {}", self.p)));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != self.m {
            return Err(Error::Parse(format!(
                "expected {} residues, got {}",
                self.m,
                coeffs.len()
            )));
        }
        self.from_coeffs(&coeffs)
    }

    /// `p=<p>,m=<m>,mod=<coefficients highest first>`.
    pub fn spec_string(&self) -> String {
        let modulus = self
            .modulus
            .iter()
            .rev()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("p={},m={},mod={}", self.p, self.m, modulus)
    }

    /// Parses a context spec string. `mod` may be omitted, in which case the
    /// deterministic modulus for (p, m) is used.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let parsed = ContextSpec::parse(spec)?;
        parsed.build()
    }
}

/// Parsed form of a context spec string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSpec {
    pub p: u64,
    pub m: usize,
    /// Lowest coefficient first.
    pub modulus: Option<Vec<u64>>,
}

impl ContextSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("context spec {spec:?}: {msg}"));
        let (mut p, mut m, mut modulus) = (None, None, None::<Vec<u64>>);
        let mut in_mod = false;
        for tok in spec.split(',').map(str::trim) {
            let num = |t: &str| t.parse::<u64>().map_err(|e| bad(format!("{t:?}: {e}")));
            match tok.split_once('=') {
                Some((key, value)) => {
                    in_mod = false;
                    match key.trim() {
                        "p" => p = Some(num(value.trim())?),
                        "m" => m = Some(num(value.trim())? as usize),
                        "mod" => {
                            modulus = Some(vec![num(value.trim())?]);
                            in_mod = true;
                        }
                        other => return Err(bad(format!("unknown key {other:?}"))),
                    }
                }
                None if in_mod => modulus.as_mut().expect("mod list started").push(num(tok)?),
                None => return Err(bad(format!("unexpected token {tok:?}"))),
            }
        }
        let p = p.ok_or_else(|| bad("missing p".into()))?;
        let m = m.ok_or_else(|| bad("missing m".into()))?;
        if let Some(f) = modulus.as_mut() {
            f.reverse();
            if f.len() != m + 1 {
                return Err(bad(format!("modulus has degree {}, expected {m}", f.len() - 1)));
            }
        }
        Ok(ContextSpec { p, m, modulus })
    }

    pub fn build(&self) -> Result<FieldContext> {
        match &self.modulus {
            Some(f) => FieldContext::new(self.p, f),
            None => FieldContext::with_degree(self.p, self.m),
        }
    }
}

/// Deterministic monic irreducible polynomial of degree m over F_p (lowest
/// coefficient first). The moduli x^8+x^5+x^3+x+1 and x^4+x^3+1 are pinned
/// for (2, 8) and (2, 4); otherwise the first irreducible candidate in a
/// fixed scan order is returned.
pub fn find_irreducible(p: u64, m: usize) -> Vec<u64> {
    assert!(m >= 1, "degree must be positive");
    fp_poly::find_irreducible(p, m)
}

/// Irreducibility test over F_p for a polynomial given lowest coefficient
/// first.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    fp_poly::is_irreducible(f, p)
}
