//! Arithmetic in binary extension fields GF(2^s).
//!
//! A field is described by a [`FieldSpec`]: an extension degree `s` and an
//! irreducible modulus over GF(2). Elements are bit-vectors in little-endian
//! bit order (bit `i` holds the coefficient of `x^i` in the residue).
//!
//! The module also hosts the projective line P^1(F_{2^s}) = F_{2^s} + {inf}
//! and the two maps that drive everything else:
//!
//! * `theta(x, alpha)`: `x -> x + alpha * x^-1`, with 0 and inf sent to inf;
//! * `psi(x, gamma)`: `x -> gamma * x`, with inf fixed.

pub mod conway;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap for exp/log labeling tables (and therefore discrete logs).
pub const DLOG_MAX_S: u32 = 20;
/// Largest extension degree representable in the u64 bit-vector encoding.
pub const MAX_S: u32 = 63;

#[derive(Debug)]
struct SpecData {
    s: u32,
    modulus: u64,
    /// Reduced bits of the generator, when the spec carries one.
    generator: Option<u64>,
    /// exp[i] = bits of g^i, length 2^s - 1. Empty when no generator.
    exp: Vec<u64>,
    /// log[bits] = i with g^i = bits, length 2^s. Entry 0 is a sentinel.
    log: Vec<u32>,
}

/// The ambient field GF(2^s) = GF(2)[x]/(m(x)).
///
/// Cheap to clone (shared immutable data). Equality is structural on
/// `(s, modulus)`; the optional generator is labeling metadata only.
#[derive(Clone)]
pub struct FieldSpec {
    data: Arc<SpecData>,
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= (a as u128) << i;
        b &= b - 1;
    }
    acc
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl SpecData {
    fn mask(&self) -> u64 {
        if self.s == 64 {
            u64::MAX
        } else {
            (1u64 << self.s) - 1
        }
    }

    fn order(&self) -> u64 {
        (1u64 << self.s) - 1
    }

    /// Reduce a carry-less product modulo the field modulus.
    fn reduce(&self, mut v: u128) -> u64 {
        let s = self.s;
        let m = self.modulus as u128;
        while v >> s != 0 {
            let top = 127 - v.leading_zeros();
            v ^= m << (top - s);
        }
        v as u64
    }

    /// Shift-and-xor multiplication; always available, used to bootstrap tables.
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.reduce(clmul(a, b))
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let order = self.order();
            let mut i = self.log[a as usize] as u64 + self.log[b as usize] as u64;
            if i >= order {
                i -= order;
            }
            self.exp[i as usize]
        } else {
            self.reduce(clmul(a, b))
        }
    }

    fn sq(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e != 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// a^(2^s - 2) by square-and-multiply, or an exp/log lookup when labeled.
    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        if !self.exp.is_empty() {
            let order = self.order();
            let i = self.log[a as usize] as u64;
            self.exp[((order - i) % order) as usize]
        } else {
            self.pow(a, self.order() - 1)
        }
    }

    /// Unique square root: a^(2^(s-1)). Squaring is a bijection in char 2.
    fn sqrt(&self, a: u64) -> u64 {
        let mut r = a;
        for _ in 1..self.s {
            r = self.sq(r);
        }
        r
    }

    /// Absolute trace: sum of a^(2^i) for i < s; lands in {0, 1}.
    fn trace(&self, a: u64) -> u8 {
        let mut acc = a;
        let mut cur = a;
        for _ in 1..self.s {
            cur = self.sq(cur);
            acc ^= cur;
        }
        debug_assert!(acc <= 1, "trace escaped the prime subfield");
        acc as u8
    }
}

impl FieldSpec {
    /// Build GF(2^s) with the given modulus bits (bit i = coefficient of x^i).
    ///
    /// The modulus is validated irreducible: exhaustive trial division for
    /// s <= 16, Rabin's criterion beyond. When `x` generates the whole
    /// multiplicative group and s is within the labeling cap, the spec is
    /// labeled with generator `x` and exp/log tables are built.
    pub fn new(s: u32, modulus: u64) -> Result<Self> {
        Self::build(s, modulus, GeneratorPolicy::ProbeX)
    }

    /// Like [`FieldSpec::new`] but with an explicit generator (reduced bits).
    ///
    /// The generator's multiplicative order is verified to be 2^s - 1 while
    /// the labeling table is built, so this is capped at s <= 20.
    pub fn with_generator(s: u32, modulus: u64, generator: u64) -> Result<Self> {
        Self::build(s, modulus, GeneratorPolicy::Explicit(generator))
    }

    /// The bundled Conway polynomial field for 1 <= s <= 16.
    pub fn conway(s: u32) -> Result<Self> {
        let m = conway::modulus(s).ok_or(Error::NoConwayEntry { s })?;
        let spec = Self::new(s, m)?;
        debug_assert!(
            spec.generator().is_some(),
            "Conway moduli are primitive, x must be a generator"
        );
        Ok(spec)
    }

    fn build(s: u32, modulus: u64, policy: GeneratorPolicy) -> Result<Self> {
        if s < 1 || s > MAX_S {
            return Err(Error::ScaleCap {
                what: "extension degree s",
                value: s as u64,
                limit: MAX_S as u64,
            });
        }
        let deg = 63 - modulus.leading_zeros().min(63);
        if modulus == 0 || deg != s {
            return Err(Error::InvalidInput(format!(
                "modulus {modulus:#x} does not have degree {s}"
            )));
        }
        if modulus & 1 == 0 {
            return Err(Error::ReducibleModulus {
                modulus: format!("{modulus:#x}"),
                factor: Some("x".to_string()),
            });
        }
        if s > 1 {
            validate_modulus_irreducible(s, modulus)?;
        }

        let mut data = SpecData {
            s,
            modulus,
            generator: None,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let x_reduced = data.reduce(0b10u128);

        match policy {
            GeneratorPolicy::ProbeX => {
                if s <= DLOG_MAX_S && is_primitive(&data, x_reduced) {
                    build_tables(&mut data, x_reduced)?;
                }
            }
            GeneratorPolicy::Explicit(g) => {
                if s > DLOG_MAX_S {
                    return Err(Error::ScaleCap {
                        what: "generator labeling (s)",
                        value: s as u64,
                        limit: DLOG_MAX_S as u64,
                    });
                }
                if g == 0 || g > data.mask() {
                    return Err(Error::InvalidInput(format!(
                        "generator bits {g:#x} out of range for s = {s}"
                    )));
                }
                build_tables(&mut data, g)?;
            }
        }

        Ok(FieldSpec {
            data: Arc::new(data),
        })
    }

    pub fn s(&self) -> u32 {
        self.data.s
    }

    pub fn modulus(&self) -> u64 {
        self.data.modulus
    }

    /// 2^s - 1, the multiplicative group order.
    pub fn order(&self) -> u64 {
        self.data.order()
    }

    /// Number of field elements, 2^s.
    pub fn element_count(&self) -> u64 {
        1u64 << self.data.s
    }

    pub fn generator(&self) -> Option<FieldElement> {
        self.data.generator.map(|bits| FieldElement {
            spec: self.clone(),
            bits,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            bits: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            bits: 1,
        }
    }

    /// The residue class of x (reduced, so for s = 1 this is 1).
    pub fn x_element(&self) -> FieldElement {
        FieldElement {
            spec: self.clone(),
            bits: self.data.reduce(0b10u128),
        }
    }

    pub fn element_from_bits(&self, bits: u64) -> Result<FieldElement> {
        if bits > self.data.mask() {
            return Err(Error::InvalidInput(format!(
                "element bits {bits:#x} out of range for s = {}",
                self.data.s
            )));
        }
        Ok(FieldElement {
            spec: self.clone(),
            bits,
        })
    }

    /// Parse the text form: `s=6,mod=0x5b` or `s=6,mod=conway`.
    pub fn parse(text: &str) -> Result<Self> {
        let (s, modulus) = parse_spec_text(text)?;
        match modulus {
            Some(m) => Self::new(s, m),
            None => Self::conway(s),
        }
    }

    /// Canonical text form with an explicit hex modulus.
    pub fn canonical_text(&self) -> String {
        format!("s={},mod={:#x}", self.data.s, self.data.modulus)
    }

    /// True when the modulus equals the bundled Conway polynomial for this s.
    pub fn is_conway(&self) -> bool {
        conway::modulus(self.data.s) == Some(self.data.modulus)
    }

    pub(crate) fn mask(&self) -> u64 {
        self.data.mask()
    }

    pub(crate) fn mul_bits(&self, a: u64, b: u64) -> u64 {
        self.data.mul(a, b)
    }

    pub(crate) fn sq_bits(&self, a: u64) -> u64 {
        self.data.sq(a)
    }

    pub(crate) fn inv_bits(&self, a: u64) -> u64 {
        self.data.inv(a)
    }

    pub(crate) fn pow_bits(&self, a: u64, e: u64) -> u64 {
        self.data.pow(a, e)
    }

    pub(crate) fn sqrt_bits(&self, a: u64) -> u64 {
        self.data.sqrt(a)
    }

    pub(crate) fn trace_bits(&self, a: u64) -> u8 {
        self.data.trace(a)
    }

    /// Shift-and-xor path, independent of the exp/log tables.
    pub(crate) fn mul_bits_raw(&self, a: u64, b: u64) -> u64 {
        self.data.mul_raw(a, b)
    }

    pub(crate) fn dlog_bits(&self, a: u64) -> Option<u64> {
        if self.data.exp.is_empty() || a == 0 {
            None
        } else {
            Some(self.data.log[a as usize] as u64)
        }
    }

    pub(crate) fn exp_bits(&self, i: u64) -> Option<u64> {
        if self.data.exp.is_empty() {
            None
        } else {
            Some(self.data.exp[(i % self.data.order()) as usize])
        }
    }
}

enum GeneratorPolicy {
    /// Label with x when it happens to be primitive (and s is in cap).
    ProbeX,
    Explicit(u64),
}

fn is_primitive(data: &SpecData, g: u64) -> bool {
    if g == 0 {
        return false;
    }
    let order = data.order();
    distinct_prime_factors(order)
        .into_iter()
        .all(|p| data.pow(g, order / p) != 1)
}

fn build_tables(data: &mut SpecData, g: u64) -> Result<()> {
    let order = data.order();
    let mut exp = vec![0u64; order as usize];
    let mut log = vec![0u32; (order + 1) as usize];
    let mut cur = 1u64;
    for i in 0..order {
        exp[i as usize] = cur;
        log[cur as usize] = i as u32;
        cur = data.mul_raw(cur, g);
        if cur == 1 && i + 1 != order {
            return Err(Error::GeneratorOrder {
                order: i + 1,
                expected: order,
            });
        }
    }
    if cur != 1 {
        return Err(Error::GeneratorOrder {
            order: 0,
            expected: order,
        });
    }
    data.generator = Some(g);
    data.exp = exp;
    data.log = log;
    Ok(())
}

/// Validate a degree-s modulus over GF(2): trial-division oracle for s <= 16
/// (so the error can name an offending factor), Rabin beyond.
fn validate_modulus_irreducible(s: u32, modulus: u64) -> Result<()> {
    let f2 = FieldSpec::new(1, 0b11).expect("GF(2) bootstrap");
    let coeffs: Vec<u64> = (0..=s).map(|i| (modulus >> i) & 1).collect();
    let poly = crate::poly::Polynomial::from_coeff_bits(&f2, coeffs)?;
    if s <= 16 {
        let factors = crate::factorize::oracle_factor(&poly)?;
        if factors.len() == 1 && factors[0].1 == 1 {
            Ok(())
        } else {
            Err(Error::ReducibleModulus {
                modulus: format!("{modulus:#x}"),
                factor: Some(factors[0].0.pretty()),
            })
        }
    } else if crate::factorize::is_irreducible(&poly)? {
        Ok(())
    } else {
        Err(Error::ReducibleModulus {
            modulus: format!("{modulus:#x}"),
            factor: None,
        })
    }
}

/// Parse `s=<n>,mod=<0xHEX|conway>` into (s, Some(modulus) | None for conway).
pub fn parse_spec_text(text: &str) -> Result<(u32, Option<u64>)> {
    let mut s: Option<u32> = None;
    let mut modulus: Option<Option<u64>> = None;
    for part in text.split(',') {
        let part = part.trim();
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
        match key.trim() {
            "s" => {
                let v: u32 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad extension degree `{value}`")))?;
                s = Some(v);
            }
            "mod" => {
                let v = value.trim();
                if v.eq_ignore_ascii_case("conway") {
                    modulus = Some(None);
                } else {
                    let digits = v.strip_prefix("0x").or_else(|| v.strip_prefix("0X"));
                    let digits = digits
                        .ok_or_else(|| Error::Parse(format!("modulus `{v}` must be 0x-hex or `conway`")))?;
                    let m = u64::from_str_radix(digits, 16)
                        .map_err(|_| Error::Parse(format!("bad hex modulus `{v}`")))?;
                    modulus = Some(Some(m));
                }
            }
            other => {
                return Err(Error::Parse(format!("unknown field-spec key `{other}`")));
            }
        }
    }
    match (s, modulus) {
        (Some(s), Some(m)) => Ok((s, m)),
        _ => Err(Error::Parse(
            "field spec needs both `s=` and `mod=` parts".to_string(),
        )),
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.s == other.data.s && self.data.modulus == other.data.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.s.hash(state);
        self.data.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.canonical_text())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

pub(crate) fn ensure_same_spec(a: &FieldSpec, b: &FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpecMismatch {
            left: a.canonical_text(),
            right: b.canonical_text(),
        })
    }
}

/// A residue in GF(2^s), stored as a bit-vector with bit i = coeff of x^i.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    bits: u64,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    /// Bitwise XOR of representations (self-inverse addition).
    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        ensure_same_spec(&self.spec, &other.spec)?;
        Ok(FieldElement {
            spec: self.spec.clone(),
            bits: self.bits ^ other.bits,
        })
    }

    /// Carry-less product reduced modulo the field modulus.
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        ensure_same_spec(&self.spec, &other.spec)?;
        Ok(FieldElement {
            spec: self.spec.clone(),
            bits: self.spec.mul_bits(self.bits, other.bits),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.bits == 0 {
            return Err(Error::DivisionByZero { s: self.spec.s() });
        }
        Ok(FieldElement {
            spec: self.spec.clone(),
            bits: self.spec.inv_bits(self.bits),
        })
    }

    /// The unique r with r^2 = self (total: squaring is a bijection).
    pub fn sqrt(&self) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            bits: self.spec.sqrt_bits(self.bits),
        }
    }

    pub fn square(&self) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            bits: self.spec.sq_bits(self.bits),
        }
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            bits: self.spec.pow_bits(self.bits, e),
        }
    }

    /// Absolute trace down to GF(2), as a bit.
    pub fn trace(&self) -> u8 {
        self.spec.trace_bits(self.bits)
    }

    /// Exponent i in [0, 2^s - 2] with g^i = self, from the labeling table.
    pub fn dlog(&self) -> Result<u64> {
        if self.bits == 0 {
            return Err(Error::DlogOfZero);
        }
        self.spec.dlog_bits(self.bits).ok_or(Error::NoGenerator)
    }

    /// Lowercase hex of the bit-vector, e.g. `5` for a^2 + 1 in GF(8).
    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }

    /// Exponent form `g^i` when the spec has a generator and self != 0.
    pub fn to_exponent_text(&self) -> Option<String> {
        if self.bits == 0 {
            return None;
        }
        self.spec.dlog_bits(self.bits).map(|i| format!("g^{i}"))
    }

    /// Parse hex bits or the `g^i` exponent form.
    pub fn parse(text: &str, spec: &FieldSpec) -> Result<FieldElement> {
        let text = text.trim();
        if let Some(exp) = text.strip_prefix("g^") {
            let i: u64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{text}`")))?;
            let bits = spec.exp_bits(i).ok_or(Error::NoGenerator)?;
            return Ok(FieldElement {
                spec: spec.clone(),
                bits,
            });
        }
        let bits = u64::from_str_radix(text, 16)
            .map_err(|_| Error::Parse(format!("bad element hex `{text}`")))?;
        spec.element_from_bits(bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}@GF(2^{})", self.bits, self.spec.s())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

/// A point of the projective line P^1(F_{2^s}).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(e: FieldElement) -> Self {
        ProjectivePoint::Finite(e)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&FieldElement> {
        match self {
            ProjectivePoint::Finite(e) => Some(e),
            ProjectivePoint::Infinity => None,
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(e) => write!(f, "{e}"),
            ProjectivePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// The map x -> x + alpha * x^-1 on P^1, with 0 and inf sent to inf.
pub fn theta(p: &ProjectivePoint, alpha: &FieldElement) -> Result<ProjectivePoint> {
    if alpha.is_zero() {
        return Err(Error::ZeroParameter { name: "alpha" });
    }
    match p {
        ProjectivePoint::Infinity => Ok(ProjectivePoint::Infinity),
        ProjectivePoint::Finite(x) => {
            ensure_same_spec(x.spec(), alpha.spec())?;
            if x.is_zero() {
                return Ok(ProjectivePoint::Infinity);
            }
            let spec = x.spec();
            let bits = x.bits() ^ spec.mul_bits(alpha.bits(), spec.inv_bits(x.bits()));
            Ok(ProjectivePoint::Finite(FieldElement {
                spec: spec.clone(),
                bits,
            }))
        }
    }
}

/// The scaling map x -> gamma * x on P^1, with inf fixed.
pub fn psi(p: &ProjectivePoint, gamma: &FieldElement) -> Result<ProjectivePoint> {
    if gamma.is_zero() {
        return Err(Error::ZeroParameter { name: "gamma" });
    }
    match p {
        ProjectivePoint::Infinity => Ok(ProjectivePoint::Infinity),
        ProjectivePoint::Finite(x) => {
            ensure_same_spec(x.spec(), gamma.spec())?;
            Ok(ProjectivePoint::Finite(x.mul(gamma)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> FieldSpec {
        FieldSpec::conway(3).unwrap()
    }

    fn f64_field() -> FieldSpec {
        FieldSpec::conway(6).unwrap()
    }

    fn el(spec: &FieldSpec, bits: u64) -> FieldElement {
        spec.element_from_bits(bits).unwrap()
    }

    #[test]
    fn addition_is_xor_with_the_expected_reductions() {
        let s = f8();
        let a = s.x_element();
        // a + a = 0
        assert!(a.add(&a).unwrap().is_zero());
        // 0 + b = b
        for bits in 0..8 {
            let b = el(&s, bits);
            assert_eq!(s.zero().add(&b).unwrap(), b);
        }
        // a + 1 has bits 011
        assert_eq!(a.add(&s.one()).unwrap().bits(), 0b011);
        // a^3 = a + 1, so a^3 + a = 1
        assert_eq!(a.pow(3).bits(), 0b011);
        assert!(a.pow(3).add(&a).unwrap().is_one());
    }

    #[test]
    fn multiplication_examples() {
        let s = f8();
        let a = s.x_element();
        assert_eq!(a.mul(&s.one()).unwrap(), a);
        // a * a^2 = a^3 with bits 011
        assert_eq!(a.mul(&a.square()).unwrap().bits(), 0b011);
        // generators have full order
        for s in [f8(), f64_field(), FieldSpec::conway(5).unwrap()] {
            let g = s.generator().unwrap();
            assert!(g.pow(s.order()).is_one());
            assert!(!g.pow(s.order() / distinct_prime_factors(s.order())[0]).is_one());
        }
    }

    #[test]
    fn table_and_raw_multiplication_agree() {
        for s in 1..=8 {
            let spec = FieldSpec::conway(s).unwrap();
            for a in 0..spec.element_count() {
                for b in 0..spec.element_count() {
                    assert_eq!(spec.mul_bits(a, b), spec.mul_bits_raw(a, b));
                }
            }
        }
    }

    #[test]
    fn inversion_examples_and_involution() {
        let s = f8();
        let a = s.x_element();
        assert!(s.one().inv().unwrap().is_one());
        // inv(a) = a^6 with bits 101
        assert_eq!(a.inv().unwrap(), a.pow(6));
        assert_eq!(a.inv().unwrap().bits(), 0b101);
        assert!(matches!(
            s.zero().inv(),
            Err(Error::DivisionByZero { .. })
        ));
        for s in (1..=8).map(|k| FieldSpec::conway(k).unwrap()) {
            for bits in 1..s.element_count() {
                let b = el(&s, bits);
                assert!(b.mul(&b.inv().unwrap()).unwrap().is_one());
                assert_eq!(b.inv().unwrap().inv().unwrap(), b);
            }
        }
    }

    #[test]
    fn square_roots_are_unique_and_frobenius_compatible() {
        assert!(f8().zero().sqrt().is_zero());
        assert!(f8().one().sqrt().is_one());
        // sqrt(alpha) = alpha^32 in the degree-6 Conway field
        let s6 = f64_field();
        let alpha = s6.x_element();
        assert_eq!(alpha.sqrt(), alpha.pow(32));
        // sqrt(a^2 b^2) = a b, and exhaustively sqrt(a)^2 = a, sqrt(a^2) = a
        for s in (1..=10).map(|k| FieldSpec::conway(k).unwrap()) {
            for bits in 0..s.element_count().min(1 << 10) {
                let a = el(&s, bits);
                assert_eq!(a.sqrt().square(), a);
                assert_eq!(a.square().sqrt(), a);
            }
        }
        let s = f8();
        let a = el(&s, 0b110);
        let b = el(&s, 0b011);
        assert_eq!(
            a.square().mul(&b.square()).unwrap().sqrt(),
            a.mul(&b).unwrap()
        );
    }

    #[test]
    fn trace_values_and_linearity() {
        let s = f8();
        assert_eq!(s.zero().trace(), 0);
        // s = 3 is odd, so the trace of 1 is 1
        assert_eq!(s.one().trace(), 1);
        // trace(a) = a + a^2 + (a^2 + a) = 0
        assert_eq!(s.x_element().trace(), 0);
        for s in (1..=10).map(|k| FieldSpec::conway(k).unwrap()) {
            let mut ones = 0u64;
            for bits in 0..s.element_count() {
                let t = el(&s, bits).trace();
                assert!(t <= 1);
                ones += t as u64;
            }
            // the trace is onto with balanced fibers
            assert_eq!(ones, s.element_count() / 2);
            // additivity on a few pairs
            for (x, y) in [(1u64, 2u64), (3, 5), (7, 2)] {
                if x < s.element_count() && y < s.element_count() {
                    let (a, b) = (el(&s, x), el(&s, y));
                    assert_eq!(
                        a.add(&b).unwrap().trace(),
                        a.trace() ^ b.trace()
                    );
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let s6 = f64_field();
        let alpha = s6.x_element();
        // 0 and infinity collapse to infinity
        let zero = ProjectivePoint::finite(s6.zero());
        assert_eq!(theta(&zero, &alpha).unwrap(), ProjectivePoint::Infinity);
        assert_eq!(
            theta(&ProjectivePoint::Infinity, &alpha).unwrap(),
            ProjectivePoint::Infinity
        );
        // theta(alpha^5) = alpha^23 in the degree-6 Conway field
        let p5 = ProjectivePoint::finite(alpha.pow(5));
        assert_eq!(
            theta(&p5, &alpha).unwrap(),
            ProjectivePoint::finite(alpha.pow(23))
        );
        // theta(sqrt(alpha)) = 0
        let root = ProjectivePoint::finite(alpha.sqrt());
        assert_eq!(
            theta(&root, &alpha).unwrap(),
            ProjectivePoint::finite(s6.zero())
        );
        assert!(matches!(
            theta(&p5, &s6.zero()),
            Err(Error::ZeroParameter { .. })
        ));
    }

    #[test]
    fn theta_fibers_follow_the_set_form() {
        // the fiber over finite beta is {gamma, alpha/gamma}: size 2 for
        // beta != 0, size 1 over beta = 0, and {0, inf} over infinity
        for k in 1..=10u32 {
            let s = FieldSpec::conway(k).unwrap();
            let alpha = s.generator().unwrap();
            let mut counts = vec![0u32; s.element_count() as usize];
            let mut to_inf = 0;
            for bits in 1..s.element_count() {
                let x = el(&s, bits);
                match theta(&ProjectivePoint::finite(x), &alpha).unwrap() {
                    ProjectivePoint::Finite(y) => counts[y.bits() as usize] += 1,
                    ProjectivePoint::Infinity => to_inf += 1,
                }
            }
            assert_eq!(counts[0], 1, "k={k}: the fiber over zero is the square root");
            assert!(counts[1..].iter().all(|&c| c == 0 || c == 2), "k={k}");
            // no finite nonzero point maps to infinity; the fiber over inf
            // is exactly {0, inf}
            assert_eq!(to_inf, 0, "k={k}");
        }
    }

    #[test]
    fn psi_examples_and_conjugation() {
        let s = f8();
        let g = s.generator().unwrap();
        assert_eq!(
            psi(&ProjectivePoint::Infinity, &g).unwrap(),
            ProjectivePoint::Infinity
        );
        for bits in 0..s.element_count() {
            let p = ProjectivePoint::finite(el(&s, bits));
            assert_eq!(psi(&p, &s.one()).unwrap(), p);
            let there = psi(&p, &g).unwrap();
            let back = psi(&there, &g.inv().unwrap()).unwrap();
            assert_eq!(back, p);
        }
        assert!(matches!(
            psi(&ProjectivePoint::Infinity, &s.zero()),
            Err(Error::ZeroParameter { .. })
        ));

        // theta_alpha = psi_gamma . theta_1 . psi_gamma^-1 with gamma = sqrt(alpha),
        // exhaustively for s <= 8 over all alpha
        for k in 1..=8u32 {
            let s = FieldSpec::conway(k).unwrap();
            let one = s.one();
            for ab in 1..s.element_count() {
                let alpha = el(&s, ab);
                let gamma = alpha.sqrt();
                let gamma_inv = gamma.inv().unwrap();
                let mut points: Vec<ProjectivePoint> = (0..s.element_count())
                    .map(|b| ProjectivePoint::finite(el(&s, b)))
                    .collect();
                points.push(ProjectivePoint::Infinity);
                for p in points {
                    let direct = theta(&p, &alpha).unwrap();
                    let conjugated =
                        psi(&theta(&psi(&p, &gamma_inv).unwrap(), &one).unwrap(), &gamma)
                            .unwrap();
                    assert_eq!(direct, conjugated, "k={k} alpha={ab:x}");
                }
            }
        }
    }

    #[test]
    fn dlog_examples_and_errors() {
        let s = f8();
        let g = s.generator().unwrap();
        assert_eq!(s.one().dlog().unwrap(), 0);
        assert_eq!(g.dlog().unwrap(), 1);
        // a^4 = a^2 + a, bits 110
        assert_eq!(el(&s, 0b110).dlog().unwrap(), 4);
        assert!(matches!(s.zero().dlog(), Err(Error::DlogOfZero)));

        // an irreducible but imprimitive modulus: x^4 + x^3 + x^2 + x + 1
        // has x of order 5, so no generator gets attached
        let imprim = FieldSpec::new(4, 0b11111).unwrap();
        assert!(imprim.generator().is_none());
        assert!(matches!(
            imprim.one().dlog(),
            Err(Error::NoGenerator)
        ));
        assert!(imprim.x_element().pow(5).is_one());
        // arithmetic still works through the shift-and-xor path
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(imprim.mul_bits(a, b), imprim.mul_bits_raw(a, b));
            }
        }
    }

    #[test]
    fn explicit_generators_are_order_checked() {
        let s = FieldSpec::conway(3).unwrap();
        // a^3 = a + 1 (bits 011) also generates, since gcd(3, 7) = 1
        let alt = FieldSpec::with_generator(3, 0xb, 0b011).unwrap();
        let g = alt.generator().unwrap();
        assert_eq!(g.bits(), 0b011);
        assert_eq!(g.dlog().unwrap(), 1);
        assert_eq!(s.x_element().bits(), 0b010);

        // g^3 in the degree-4 Conway field has order 5: rejected
        let c4 = FieldSpec::conway(4).unwrap();
        let of_order_5 = c4.generator().unwrap().pow(3);
        let err = FieldSpec::with_generator(4, c4.modulus(), of_order_5.bits()).unwrap_err();
        assert!(matches!(err, Error::GeneratorOrder { order: 5, .. }), "{err}");

        assert!(FieldSpec::with_generator(3, 0xb, 0).is_err());
        assert!(matches!(
            FieldSpec::with_generator(21, (1u64 << 21) | 0b101, 2),
            Err(Error::ScaleCap { .. })
        ));
    }

    #[test]
    fn spec_equality_is_structural_and_mismatches_error() {
        let a = FieldSpec::conway(3).unwrap();
        let b = FieldSpec::new(3, 0xb).unwrap();
        assert_eq!(a, b);
        let other = FieldSpec::new(3, 0xd).unwrap(); // x^3 + x^2 + 1
        assert_ne!(a, other);
        let x = a.one();
        let y = other.one();
        assert!(matches!(x.add(&y), Err(Error::SpecMismatch { .. })));
        assert!(matches!(x.mul(&y), Err(Error::SpecMismatch { .. })));
        assert!(matches!(
            theta(&ProjectivePoint::finite(x.clone()), &y),
            Err(Error::SpecMismatch { .. })
        ));
    }

    #[test]
    fn modulus_validation_reports_factors() {
        // x^2 + 1 = (x + 1)^2
        let err = FieldSpec::new(2, 0b101).unwrap_err();
        match &err {
            Error::ReducibleModulus { factor, .. } => {
                assert_eq!(factor.as_deref(), Some("x + 1"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(err.to_string().contains("x + 1"));

        // wrong degree and even constant term
        assert!(FieldSpec::new(3, 0b111).is_err());
        assert!(matches!(
            FieldSpec::new(2, 0b110),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(FieldSpec::new(0, 0b11).is_err());
        assert!(FieldSpec::new(64, u64::MAX).is_err());
    }

    #[test]
    fn spec_text_parsing() {
        assert_eq!(parse_spec_text("s=6,mod=0x5b").unwrap(), (6, Some(0x5b)));
        assert_eq!(parse_spec_text("s=6,mod=conway").unwrap(), (6, None));
        assert!(parse_spec_text("s=6").is_err());
        assert!(parse_spec_text("mod=0x5b").is_err());
        assert!(parse_spec_text("s=6,mod=5b").is_err());
        assert!(parse_spec_text("s=six,mod=conway").is_err());
        assert!(parse_spec_text("s=6,mod=conway,extra=1").is_err());
        assert!(FieldSpec::parse("s=17,mod=conway").is_err());
    }

    #[test]
    fn element_text_forms() {
        let s = f8();
        let a = s.x_element();
        let e = a.pow(6);
        assert_eq!(e.to_hex(), "5");
        assert_eq!(e.to_exponent_text(), Some("g^6".to_string()));
        assert_eq!(s.zero().to_exponent_text(), None);
        assert_eq!(FieldElement::parse("5", &s).unwrap(), e);
        assert_eq!(FieldElement::parse("g^6", &s).unwrap(), e);
        assert_eq!(FieldElement::parse("g^13", &s).unwrap(), e);
        assert!(FieldElement::parse("9", &s).is_err());
        assert!(FieldElement::parse("zz", &s).is_err());
        let imprim = FieldSpec::new(4, 0b11111).unwrap();
        assert!(matches!(
            FieldElement::parse("g^2", &imprim),
            Err(Error::NoGenerator)
        ));
    }

    #[test]
    fn infinity_compares_only_to_infinity() {
        let s = f8();
        assert_eq!(ProjectivePoint::Infinity, ProjectivePoint::Infinity);
        assert_ne!(
            ProjectivePoint::Infinity,
            ProjectivePoint::finite(s.zero())
        );
        assert!(ProjectivePoint::Infinity.is_infinity());
        assert!(ProjectivePoint::Infinity.as_finite().is_none());
    }
}
