//! Dense polynomials over a prime field GF(p), coefficients low degree first.
//!
//! Only what the finite-field and Frobenius constructions need: arithmetic,
//! modular exponentiation, gcd and Rabin's irreducibility test.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

/// Remainder of `f` modulo a nonzero `g`.
pub(crate) fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p);
    let mut r = trim(f.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let coef = r[dr] * lead_inv % p;
        let shift = dr - dg;
        for (i, &c) in g.iter().enumerate().take(dg + 1) {
            r[i + shift] = (r[i + shift] + p - coef * c % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(f: &[u64], g: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(f, g, p), modulus, p)
}

pub(crate) fn pow_poly_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    // monic normalization
    if let Some(d) = degree(&a) {
        let inv = inv_mod(a[d], p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

/// Rabin's test for a monic polynomial of degree `d >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    let x = [0, 1];
    // x^(p^k) mod f by repeated p-th powering
    let frob_iter = |k: usize| {
        let mut t = rem(&x, f, p);
        for _ in 0..k {
            t = pow_poly_mod(&t, p, f, p);
        }
        t
    };
    if sub(&frob_iter(d), &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(d as u64) {
        let h = sub(&frob_iter(d / r as usize), &x, p);
        let g = gcd(f, &h, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree `d` over GF(p), scanning the lower
/// coefficients `c_0 + c_1 p + ... + c_{d-1} p^{d-1}` upward from zero.
pub(crate) fn first_irreducible(p: u64, d: usize) -> Option<Vec<u64>> {
    let count = p.checked_pow(d as u32)?;
    (0..count).find_map(|mut code| {
        let mut f = vec![0u64; d + 1];
        for c in f.iter_mut().take(d) {
            *c = code % p;
            code /= p;
        }
        f[d] = 1;
        is_irreducible(&f, p).then_some(f)
    })
}
