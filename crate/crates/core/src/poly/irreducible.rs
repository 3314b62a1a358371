//! Irreducibility over Q for monic integer polynomials.
//!
//! Degrees up to 6 are decided exactly: rational-root test plus exhaustive
//! search for monic integer factor pairs under a Mignotte-style coefficient
//! bound. Higher degrees are decided only when a proof is available
//! (a rational root, a square factor, or irreducibility modulo a small prime);
//! otherwise the question is out of exact scope.

use super::{gcd_primitive, IntPolynomial};
use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const EXACT_IRREDUCIBILITY_DEGREE: usize = 6;

pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    f.require_monic("is_irreducible")?;
    if f.degree() == 0 {
        return Err(CoreError::InvalidInput(
            "irreducibility of a constant polynomial".into(),
        ));
    }
    let d = f.degree();
    if d == 1 {
        return Ok(true);
    }
    if f.constant_term().is_zero() {
        return Ok(false); // divisible by x
    }
    if has_rational_root(f) {
        return Ok(false);
    }
    if d <= 3 {
        // No rational root and degree <= 3: any factorization would have a
        // linear factor.
        return Ok(true);
    }
    if gcd_primitive(f, &f.derivative()).degree() > 0 {
        return Ok(false); // square factor
    }
    if d <= EXACT_IRREDUCIBILITY_DEGREE {
        return Ok(!has_monic_factor(f));
    }
    // Out of exact enumeration scope: a proof modulo one prime still settles it.
    for p in [2u64, 3, 5, 7, 11, 13] {
        if let Some(true) = irreducible_mod_p(f, p) {
            return Ok(true);
        }
    }
    Err(CoreError::ScopeExceeded(format!(
        "irreducibility of {f} (degree {d} > {EXACT_IRREDUCIBILITY_DEGREE}) is inconclusive"
    )))
}

fn has_rational_root(f: &IntPolynomial) -> bool {
    // Monic integer polynomial: rational roots are integers dividing f(0).
    let c0 = f.constant_term().abs();
    for d in divisors(&c0) {
        for cand in [d.clone(), -d] {
            if f.eval_int(&cand).is_zero() {
                return true;
            }
        }
    }
    false
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Exhaustive search for a monic integer factor of degree 2..=deg/2.
fn has_monic_factor(f: &IntPolynomial) -> bool {
    let d = f.degree();
    let norm2 = f
        .coeffs()
        .iter()
        .map(|c| c * c)
        .fold(BigInt::zero(), |a, b| a + b)
        .sqrt()
        + BigInt::one();
    let f0 = f.constant_term();
    let f1 = f.eval_int(&BigInt::one());
    let fm1 = f.eval_int(&BigInt::from(-1));
    for k in 2..=d / 2 {
        // Mignotte: coefficients of a monic degree-k factor are bounded by
        // binom(k-1, j) * ||f||_2 + binom(k-1, j-1).
        let bound = (binom(k - 1, (k - 1) / 2) * (&norm2 + BigInt::one()))
            .to_i64()
            .unwrap_or(i64::MAX);
        let consts: Vec<BigInt> = divisors(&f0.abs())
            .into_iter()
            .flat_map(|d| [d.clone(), -d])
            .collect();
        let width = (2 * bound + 1) as u64;
        let total = width.pow((k - 1) as u32);
        for idx in 0..total {
            let mut mid = vec![0i64; k - 1];
            let mut rem = idx;
            for slot in mid.iter_mut() {
                *slot = (rem % width) as i64 - bound;
                rem /= width;
            }
            for c0 in &consts {
                let mut coeffs = Vec::with_capacity(k + 1);
                coeffs.push(c0.clone());
                coeffs.extend(mid.iter().map(|&c| BigInt::from(c)));
                coeffs.push(BigInt::one());
                let h = IntPolynomial::new(coeffs);
                // Evaluation pruning: h(+-1) must divide f(+-1).
                let h1 = h.eval_int(&BigInt::one());
                if h1.is_zero() || !(&f1 % &h1).is_zero() {
                    continue;
                }
                let hm1 = h.eval_int(&BigInt::from(-1));
                if hm1.is_zero() || !(&fm1 % &hm1).is_zero() {
                    continue;
                }
                if f.exact_div(&h).is_some() {
                    return true;
                }
            }
        }
    }
    false
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from((n - i) as u64) / BigInt::from((i + 1) as u64);
    }
    acc
}

/// Some(true) when f stays degree d and is irreducible over F_p;
/// Some(false) when it provably factors mod p; None when the test is moot.
fn irreducible_mod_p(f: &IntPolynomial, p: u64) -> Option<bool> {
    let d = f.degree();
    let reduce = |c: &BigInt| -> u64 {
        let m = c % BigInt::from(p);
        let m = if m.is_negative() {
            m + BigInt::from(p)
        } else {
            m
        };
        m.to_u64().unwrap()
    };
    let fp: Vec<u64> = f.coeffs().iter().map(reduce).collect();
    if fp[d] == 0 {
        return None;
    }
    // f irreducible over F_p iff x^(p^d) = x (mod f) and
    // gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d.
    let x = vec![0, 1];
    let mut pow = x.clone(); // x^(p^k) mod f, starting at k = 0
    let mut gcd_ok = true;
    for k in 1..=d {
        pow = modp_pow(&pow, p, &fp, p);
        let is_proper_divisor_stage = k < d && d % k == 0;
        if is_proper_divisor_stage {
            let mut diff = pow.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            let g = modp_gcd(&diff, &fp, p);
            if modp_deg(&g) != Some(0) {
                gcd_ok = false;
            }
        }
    }
    let mut diff = pow;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    let splits = modp_deg(&diff).is_none(); // x^(p^d) == x mod f
    Some(splits && gcd_ok)
}

fn modp_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn modp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn modp_mul(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    modp_rem(out, modulus, p)
}

fn modp_rem(mut a: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
    let md = modp_deg(modulus).expect("nonzero modulus");
    let mlead = modulus[md];
    let mlead_inv = modp_inv(mlead, p);
    while let Some(ad) = modp_deg(&a) {
        if ad < md {
            break;
        }
        let factor = a[ad] * mlead_inv % p;
        let shift = ad - md;
        for (i, &mc) in modulus.iter().enumerate().take(md + 1) {
            let sub = factor * mc % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
    }
    modp_trim(a)
}

/// base^(p^1) mod modulus: Frobenius step via repeated squaring of exponent p.
fn modp_pow(base: &[u64], exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = modp_mul(&result, &b, modulus, p);
        }
        b = modp_mul(&b, &b, modulus, p);
        e >>= 1;
    }
    result
}

fn modp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = modp_trim(a.to_vec());
    let mut b = modp_trim(b.to_vec());
    while !b.is_empty() {
        let r = modp_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn modp_inv(a: u64, p: u64) -> u64 {
    // p is prime; Fermat.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}
