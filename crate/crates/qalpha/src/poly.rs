//! Dense univariate polynomials over GF(2^s).
//!
//! Coefficients are stored little-endian by exponent (`coeffs[u]` holds the
//! bits of c_u) with the leading entry always nonzero; the zero polynomial is
//! the empty vector. Monic normalization is an explicit operation, never a
//! side effect of arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{ensure_same_spec, FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<u64>,
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl Polynomial {
    pub fn zero(spec: &FieldSpec) -> Self {
        Polynomial {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: &FieldSpec) -> Self {
        Polynomial {
            spec: spec.clone(),
            coeffs: vec![1],
        }
    }

    /// The monomial x (an indeterminate of the polynomial ring, distinct
    /// from the residue class x inside the coefficient field).
    pub fn x(spec: &FieldSpec) -> Self {
        Polynomial {
            spec: spec.clone(),
            coeffs: vec![0, 1],
        }
    }

    pub fn monomial(spec: &FieldSpec, degree: usize) -> Self {
        let mut coeffs = vec![0u64; degree + 1];
        coeffs[degree] = 1;
        Polynomial {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn constant(value: &FieldElement) -> Self {
        let mut coeffs = vec![value.bits()];
        trim(&mut coeffs);
        Polynomial {
            spec: value.spec().clone(),
            coeffs,
        }
    }

    /// Build from coefficients indexed by exponent (`coeffs[u]` = c_u bits).
    pub fn from_coeff_bits(spec: &FieldSpec, mut coeffs: Vec<u64>) -> Result<Self> {
        let mask = spec.mask();
        for &c in &coeffs {
            if c > mask {
                return Err(Error::InvalidInput(format!(
                    "coefficient bits {c:#x} out of range for s = {}",
                    spec.s()
                )));
            }
        }
        trim(&mut coeffs);
        Ok(Polynomial {
            spec: spec.clone(),
            coeffs,
        })
    }

    /// Build from elements indexed by exponent; all must share one spec.
    pub fn from_elements(spec: &FieldSpec, elems: &[FieldElement]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(elems.len());
        for e in elems {
            ensure_same_spec(spec, e.spec())?;
            coeffs.push(e.bits());
        }
        trim(&mut coeffs);
        Ok(Polynomial {
            spec: spec.clone(),
            coeffs,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff_bits(&self, u: usize) -> u64 {
        self.coeffs.get(u).copied().unwrap_or(0)
    }

    pub fn coeff(&self, u: usize) -> FieldElement {
        self.spec
            .element_from_bits(self.coeff_bits(u))
            .expect("stored coefficient is in range")
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Scale by the inverse of the leading coefficient.
    pub fn make_monic(&self) -> Result<Polynomial> {
        let d = self.degree().ok_or(Error::ZeroPolynomial { op: "make_monic" })?;
        if self.is_monic() {
            return Ok(self.clone());
        }
        let inv = self.spec.inv_bits(self.coeffs[d]);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.spec.mul_bits(c, inv))
            .collect();
        Ok(Polynomial {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Coefficient-wise XOR. In characteristic 2 this is also subtraction.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_same_spec(&self.spec, &other.spec)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut coeffs = long.clone();
        for (i, &c) in short.iter().enumerate() {
            coeffs[i] ^= c;
        }
        trim(&mut coeffs);
        Ok(Polynomial {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Schoolbook product; desk scale keeps degrees modest.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_same_spec(&self.spec, &other.spec)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.spec));
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    coeffs[i + j] ^= self.spec.mul_bits(a, b);
                }
            }
        }
        trim(&mut coeffs);
        Ok(Polynomial {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Long division: returns (q, r) with self = q * other + r, deg r < deg other.
    pub fn divrem(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        ensure_same_spec(&self.spec, &other.spec)?;
        let db = other.degree().ok_or(Error::PolyDivisionByZero)?;
        let da = match self.degree() {
            Some(da) if da >= db => da,
            _ => return Ok((Polynomial::zero(&self.spec), self.clone())),
        };
        let lead_inv = self.spec.inv_bits(other.coeffs[db]);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; da - db + 1];
        for i in (db..=da).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = self.spec.mul_bits(c, lead_inv);
            quo[i - db] = q;
            for j in 0..=db {
                rem[i - db + j] ^= self.spec.mul_bits(q, other.coeffs[j]);
            }
        }
        trim(&mut rem);
        trim(&mut quo);
        Ok((
            Polynomial {
                spec: self.spec.clone(),
                coeffs: quo,
            },
            Polynomial {
                spec: self.spec.clone(),
                coeffs: rem,
            },
        ))
    }

    pub fn rem(&self, modulus: &Polynomial) -> Result<Polynomial> {
        Ok(self.divrem(modulus)?.1)
    }

    /// Euclidean gcd, returned monic (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_same_spec(&self.spec, &other.spec)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.make_monic()
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &FieldElement) -> Result<FieldElement> {
        ensure_same_spec(&self.spec, at.spec())?;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.spec.mul_bits(acc, at.bits()) ^ c;
        }
        self.spec.element_from_bits(acc)
    }

    /// Frobenius square: coefficients squared and spread to even exponents.
    pub fn square(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                coeffs[2 * i] = self.spec.sq_bits(c);
            }
        }
        Polynomial {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// self^2 mod m; the workhorse of iterated-Frobenius computations.
    pub fn square_mod(&self, modulus: &Polynomial) -> Result<Polynomial> {
        self.square().rem(modulus)
    }

    /// base^e mod m with a big-integer exponent, by bit iteration from the
    /// most significant bit down.
    pub fn powmod(&self, e: &BigUint, modulus: &Polynomial) -> Result<Polynomial> {
        ensure_same_spec(&self.spec, &modulus.spec)?;
        match modulus.degree() {
            None => return Err(Error::ZeroPolynomial { op: "powmod modulus" }),
            Some(0) => return Err(Error::ConstantPolynomial { op: "powmod modulus" }),
            Some(_) => {}
        }
        let base = self.rem(modulus)?;
        let mut acc = Polynomial::one(&self.spec);
        for i in (0..e.bits()).rev() {
            acc = acc.square_mod(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// x^n * f(1/x): the coefficient sequence reversed.
    pub fn reciprocal(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial { op: "reciprocal" });
        }
        let mut coeffs: Vec<u64> = self.coeffs.iter().rev().copied().collect();
        trim(&mut coeffs);
        Ok(Polynomial {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// True iff the coefficient sequence is palindromic (f = f*).
    pub fn is_self_reciprocal(&self) -> Result<bool> {
        Ok(self.reciprocal()? == *self)
    }

    /// Total order used wherever a deterministic choice between polynomials
    /// is needed: degree first, then coefficients from the highest exponent
    /// down, as bit-vectors.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        debug_assert_eq!(self.spec, other.spec);
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Canonical text: degree-descending hex coefficients, e.g.
    /// `poly[s=3]{1,6,1,4,5}`.
    pub fn canonical_text(&self) -> String {
        let body = if self.coeffs.is_empty() {
            "0".to_string()
        } else {
            self.coeffs
                .iter()
                .rev()
                .map(|c| format!("{c:x}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("poly[s={}]{{{body}}}", self.spec.s())
    }

    /// Parse the canonical text form. The `s` tag must match `spec`.
    pub fn parse(text: &str, spec: &FieldSpec) -> Result<Polynomial> {
        let text = text.trim();
        let rest = text
            .strip_prefix("poly[s=")
            .ok_or_else(|| Error::Parse(format!("polynomial `{text}` must start with poly[s=")))?;
        let (s_part, rest) = rest
            .split_once(']')
            .ok_or_else(|| Error::Parse("missing `]` in polynomial text".to_string()))?;
        let s: u32 = s_part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree tag `{s_part}`")))?;
        if s != spec.s() {
            return Err(Error::Parse(format!(
                "polynomial tagged s={s} but field has s={}",
                spec.s()
            )));
        }
        let body = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse("polynomial coefficients must be brace-wrapped".to_string()))?;
        let mut coeffs: Vec<u64> = Vec::new();
        for item in body.split(',') {
            let item = item.trim();
            let c = u64::from_str_radix(item, 16)
                .map_err(|_| Error::Parse(format!("bad hex coefficient `{item}`")))?;
            coeffs.push(c);
        }
        coeffs.reverse();
        Polynomial::from_coeff_bits(spec, coeffs)
    }

    /// Human-readable form (`x^4 + g^4*x^3 + ...`); emitted, never parsed.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (u, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff_txt = if c == 1 {
                None
            } else {
                let e = self.spec.element_from_bits(c).expect("in range");
                Some(e.to_exponent_text().unwrap_or_else(|| format!("0x{c:x}")))
            };
            let term = match (u, coeff_txt) {
                (0, None) => "1".to_string(),
                (0, Some(t)) => t,
                (1, None) => "x".to_string(),
                (1, Some(t)) => format!("{t}*x"),
                (_, None) => format!("x^{u}"),
                (_, Some(t)) => format!("{t}*x^{u}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}
