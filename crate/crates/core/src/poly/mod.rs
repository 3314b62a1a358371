//! Exact arithmetic on integer polynomials: resultants, composed products,
//! reciprocals, power sums, irreducibility and certified unit-circle decisions.

mod circle;
mod compose;
mod irreducible;
pub(crate) mod newton;
pub(crate) mod resultant;
mod roots;

pub use circle::{sturm_count_interval, unit_circle_verdict, CircleMethod, CirclenessVerdict};
pub use compose::{composed_product, power_min_poly, reciprocal};
pub use irreducible::{is_irreducible, EXACT_IRREDUCIBILITY_DEGREE};
pub use newton::{from_power_sums, power_sum, power_sums_upto};
pub use resultant::resultant;
pub use roots::{complex_roots, Approx, RootApprox};

use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Dense integer polynomial, coefficients stored in ascending degree order.
///
/// The zero polynomial is represented by an empty coefficient vector; all
/// nonzero polynomials keep a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// x - c
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial. Panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading of zero polynomial")
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn require_monic(&self, ctx: &str) -> Result<()> {
        if !self.is_monic() {
            return Err(CoreError::InvalidInput(format!(
                "{ctx}: polynomial {self} is not monic"
            )));
        }
        Ok(())
    }

    /// True when the constant term is +1 or -1 (the unit condition).
    pub fn has_unit_constant(&self) -> bool {
        self.constant_term().abs().is_one()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(coeffs)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division in Z[x]; returns None when the division has a remainder
    /// or a non-integer quotient coefficient appears.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading();
        let ddeg = divisor.degree();
        let qdeg = self.degree() - ddeg;
        let mut quot = vec![BigInt::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + ddeg].clone();
            if top.is_zero() {
                continue;
            }
            if !(&top % dlead).is_zero() {
                return None;
            }
            let q = &top / dlead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(quot))
    }

    /// Multiply by -1 when the leading coefficient is -1; errors otherwise
    /// unless already monic.
    pub fn normalized_monic(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(CoreError::InvalidInput("zero polynomial".into()));
        }
        if self.leading().is_one() {
            return Ok(self.clone());
        }
        if (-self.leading()).is_one() {
            return Ok(self.neg());
        }
        Err(CoreError::InvalidInput(format!(
            "cannot normalize {self} to monic: leading coefficient {}",
            self.leading()
        )))
    }

    /// Content-free version with positive leading coefficient.
    pub fn primitive(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = num_integer::gcd(content, c.clone());
        }
        if self.leading().is_negative() {
            content = -content;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &content).collect())
    }

    /// Coefficients serialized as decimal strings, ascending degree.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings(strings: &[String]) -> Result<IntPolynomial> {
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in strings {
            let c = BigInt::from_str(s)
                .map_err(|e| CoreError::Parse(format!("bad integer {s:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

/// gcd in Z[x], primitive with positive leading coefficient.
pub fn gcd_primitive(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    // Euclid over Q, clearing denominators at the end.
    let mut a: Vec<BigRational> = f
        .coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut b: Vec<BigRational> = g
        .coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().map(Zero::is_zero).unwrap_or(false) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() {
            let q = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let t = &q * bc;
                a[shift + i] -= t;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return IntPolynomial::zero();
    }
    // Clear denominators, take primitive part.
    let mut denom_lcm = BigInt::one();
    for c in &a {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = a
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    IntPolynomial::new(ints).primitive()
}

/// f divided by gcd(f, f'); roots of f with multiplicities dropped.
pub fn squarefree_part(f: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() || f.degree() == 0 {
        return f.clone();
    }
    let g = gcd_primitive(f, &f.derivative());
    if g.degree() == 0 {
        return f.clone();
    }
    f.exact_div(&g).expect("gcd(f, f') divides f exactly")
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(out, "-")?;
            } else {
                write!(out, "+")?;
            }
            match i {
                0 => write!(out, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(out, "{mag}")?;
                    }
                    write!(out, "x")?;
                    if i > 1 {
                        write!(out, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{self}")
    }
}

impl FromStr for IntPolynomial {
    type Err = CoreError;

    /// Parses the human form "x^2-3x+1": signed terms, '^' powers, implicit
    /// coefficient 1, no parentheses.
    fn from_str(s: &str) -> Result<IntPolynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(CoreError::Parse("empty polynomial string".into()));
        }
        let bad = |msg: &str| CoreError::Parse(format!("cannot parse {s:?}: {msg}"));
        let mut terms: Vec<(BigInt, usize)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(bad("dangling sign"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if start == i {
                BigInt::one()
            } else {
                BigInt::from_str(&compact[start..i]).map_err(|_| bad("bad coefficient"))?
            };
            let power = if i < bytes.len() && bytes[i] == b'x' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let pstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if pstart == i {
                        return Err(bad("missing exponent after '^'"));
                    }
                    compact[pstart..i]
                        .parse::<usize>()
                        .map_err(|_| bad("bad exponent"))?
                } else {
                    1
                }
            } else {
                if start == i {
                    return Err(bad("term with neither coefficient nor variable"));
                }
                0
            };
            terms.push((sign * coeff, power));
        }
        let deg = terms.iter().map(|&(_, p)| p).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (c, p) in terms {
            coeffs[p] += c;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

impl serde::Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        IntPolynomial::from_decimal_strings(&strings).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let f: IntPolynomial = "x^2-3x+1".parse().unwrap();
        assert_eq!(f, p(&[1, -3, 1]));
        assert_eq!(f.to_string(), "x^2-3x+1");
        let g: IntPolynomial = "x^3+x^2-2x-1".parse().unwrap();
        assert_eq!(g, p(&[-1, -2, 1, 1]));
        assert_eq!(g.to_string(), "x^3+x^2-2x-1");
        assert_eq!("x".parse::<IntPolynomial>().unwrap(), p(&[0, 1]));
        assert_eq!("-x+1".parse::<IntPolynomial>().unwrap(), p(&[1, -1]));
        assert_eq!("7".parse::<IntPolynomial>().unwrap(), p(&[7]));
        assert!("x^".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn serialization_uses_decimal_strings() {
        let f = p(&[1, -3, 1]);
        assert_eq!(f.to_decimal_strings(), vec!["1", "-3", "1"]);
        let back = IntPolynomial::from_decimal_strings(&[
            "1".to_string(),
            "-3".to_string(),
            "1".to_string(),
        ])
        .unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn exact_division() {
        let f = p(&[1, 0, 1]).mul(&p(&[1, 1, 1])); // x^4+x^3+2x^2+x+1
        assert_eq!(f.exact_div(&p(&[1, 0, 1])).unwrap(), p(&[1, 1, 1]));
        assert!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])).is_none());
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = p(&[1, -3, 1]);
        assert_eq!(gcd_primitive(&f, &f), f);
        let sq = f.mul(&f).mul(&p(&[1, 1]));
        assert_eq!(squarefree_part(&sq), f.mul(&p(&[1, 1])));
        assert_eq!(gcd_primitive(&p(&[1, 0, 1]), &p(&[1, 1])).degree(), 0);
    }
}
