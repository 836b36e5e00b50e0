//! Exact arithmetic in the group ring `Q[t]/(t^d − 1)`, where `t` stands
//! for a primitive `d`-th root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    /// `coeffs[k]` is the coefficient of `t^k`; always exactly `d` entries.
    coeffs: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "modulus must be positive");
        CyclotomicElement {
            coeffs: vec![BigRational::zero(); d],
        }
    }

    pub fn from_integer(d: usize, c: i64) -> Self {
        let mut e = CyclotomicElement::zero(d);
        e.coeffs[0] = BigRational::from_integer(BigInt::from(c));
        e
    }

    pub fn one(d: usize) -> Self {
        CyclotomicElement::from_integer(d, 1)
    }

    /// `t^k`, with `k` reduced mod `d`.
    pub fn t_pow(d: usize, k: i64) -> Self {
        let mut e = CyclotomicElement::zero(d);
        e.coeffs[k.rem_euclid(d as i64) as usize] = BigRational::one();
        e
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let c = BigRational::from_integer(c.clone());
        CyclotomicElement {
            coeffs: self.coeffs.iter().map(|x| x * &c).collect(),
        }
    }
}

impl<'a> Add<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.modulus(), rhs.modulus());
        CyclotomicElement {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.modulus(), rhs.modulus());
        CyclotomicElement {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    /// Cyclic convolution: exponents add mod `d`.
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        let d = self.modulus();
        assert_eq!(d, rhs.modulus());
        let mut out = CyclotomicElement::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % d] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
