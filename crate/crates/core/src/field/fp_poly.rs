//! Dense polynomials over the prime field, used only to validate and search
//! for field moduli. Coefficients are stored lowest power first.

use super::arith::inv_mod_prime;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic-or-not polynomial `f`.
fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    let lead_inv = inv_mod_prime(f[df], p);
    a = trim(a);
    while a.len() > df {
        let k = a.len() - 1;
        let c = a[k] * lead_inv % p;
        let shift = k - df;
        for (i, &fi) in f.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * fi % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(out, f, p)
}

fn pow_rem(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_rem(&b, &b, f, p);
        }
    }
    acc
}

fn gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility of `f` (degree >= 1) over F_p: gcd(x^{p^k} - x, f) = 1 for
/// every k <= deg(f) / 2.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xpk = x.clone();
    for _ in 1..=deg / 2 {
        xpk = pow_rem(&xpk, p, &f, p);
        let mut diff = xpk.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if gcd(f.clone(), diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Fixed moduli used where reproducibility against published numbers matters.
const OVERRIDES: &[(u64, usize, &[u64])] = &[
    // x^8 + x^5 + x^3 + x + 1
    (2, 8, &[1, 1, 0, 1, 0, 1, 0, 0, 1]),
    // x^4 + x^3 + 1
    (2, 4, &[1, 0, 0, 1, 1]),
];

/// Deterministic monic irreducible polynomial of degree `m` over F_p, lowest
/// coefficient first. Outside the override table, candidates are scanned in
/// increasing order of their lower coefficients read as a base-p number
/// (constant term least significant), and the first irreducible one wins.
pub(crate) fn find_irreducible(p: u64, m: usize) -> Vec<u64> {
    if let Some((_, _, f)) = OVERRIDES.iter().find(|(q, d, _)| *q == p && *d == m) {
        return f.to_vec();
    }
    let mut cand = vec![0u64; m + 1];
    cand[m] = 1;
    loop {
        if is_irreducible(&cand, p) {
            return cand;
        }
        // increment lower coefficients as a base-p counter
        let mut i = 0;
        loop {
            cand[i] += 1;
            if cand[i] < p {
                break;
            }
            cand[i] = 0;
            i += 1;
            assert!(i < m, "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_irreducibles() {
        assert!(is_irreducible(&[1, 1, 0, 1, 0, 1, 0, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 0, 1, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1, 1, 0, 0, 0, 1], 2)); // AES
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(!is_irreducible(&[0, 0, 0, 0, 1], 3));
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2 + 1 over F_3
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
    }

    #[test]
    fn search_is_deterministic_and_irreducible() {
        for (p, m) in [(3u64, 5usize), (5, 4), (7, 3), (2, 16), (3, 1), (13, 2)] {
            let f = find_irreducible(p, m);
            assert_eq!(f.len(), m + 1);
            assert_eq!(f[m], 1);
            assert!(is_irreducible(&f, p));
            assert_eq!(f, find_irreducible(p, m));
        }
        assert_eq!(find_irreducible(3, 1), vec![0, 1]);
        assert_eq!(find_irreducible(2, 8), vec![1, 1, 0, 1, 0, 1, 0, 0, 1]);
        assert_eq!(find_irreducible(2, 4), vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn counts_of_irreducible_quartics_over_f2() {
        // There are exactly 3 monic irreducible quartics over F_2.
        let count = (0u64..16)
            .filter(|t| {
                let f: Vec<u64> = (0..4).map(|i| (t >> i) & 1).chain([1]).collect();
                is_irreducible(&f, 2)
            })
            .count();
        assert_eq!(count, 3);
    }
}
