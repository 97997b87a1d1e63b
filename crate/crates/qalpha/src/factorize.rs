//! Irreducibility testing and the equal-degree split used by the sequence
//! construction.
//!
//! Two independent routes are kept side by side on purpose:
//!
//! * [`is_irreducible`] is Rabin's criterion (iterated Frobenius + gcd);
//! * [`oracle_factor`] is exhaustive trial division over all monic
//!   polynomials in canonical order, with no irreducibility subroutine at
//!   all, so it can cross-check the fast path at desk scale.

use std::cmp::Ordering;

use crate::detrand::DetRand;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Polynomial;

/// Scale cap (s * deg f) for the exhaustive factorization oracle.
pub const ORACLE_MAX_BITS: u64 = 24;

/// Outcome of factoring a transform image of an irreducible polynomial:
/// the image is either irreducible of degree 2n or the product of exactly
/// two irreducible monic polynomials of degree n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitResult {
    Irreducible(Polynomial),
    /// Both factors monic, irreducible, of equal degree, with
    /// `g1 <= g2` in canonical coefficient order and `g1 * g2` the input.
    Split(Polynomial, Polynomial),
}

fn distinct_primes(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
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

/// Rabin's irreducibility criterion over F_q, q = 2^s: f of degree d is
/// irreducible iff x^(q^d) = x (mod f) and gcd(x^(q^(d/p)) - x, f) = 1 for
/// every prime p dividing d.
pub fn is_irreducible(f: &Polynomial) -> Result<bool> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial { op: "is_irreducible" }),
        Some(0) => {
            return Err(Error::ConstantPolynomial {
                op: "is_irreducible",
            })
        }
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let m = f.make_monic()?;
    let spec = f.spec();
    let s = spec.s() as usize;
    let x = Polynomial::x(spec);

    let mut checkpoints: Vec<usize> = distinct_primes(d).into_iter().map(|p| s * d / p).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();

    // One squaring chain: after i squarings cur = x^(2^i) mod m, so the
    // subfield gcd checks are checkpoints along the way to i = s*d.
    let mut cur = x.clone();
    for i in 1..=s * d {
        cur = cur.square_mod(&m)?;
        if checkpoints.binary_search(&i).is_ok() {
            let g = cur.add(&x)?.gcd(&m)?;
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(cur == x)
}

/// Complete factorization by exhaustive trial division, for verification at
/// desk scale (s * deg f <= 24). Divisors are probed in canonical order
/// (degree, then coefficients from the highest exponent down), so a divisor
/// of minimal degree is automatically irreducible; no irreducibility test is
/// involved anywhere.
pub fn oracle_factor(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial {
        op: "oracle_factor",
    })?;
    let spec = f.spec();
    let bits = spec.s() as u64 * deg as u64;
    if bits > ORACLE_MAX_BITS {
        return Err(Error::ScaleCap {
            what: "oracle_factor (s * deg)",
            value: bits,
            limit: ORACLE_MAX_BITS,
        });
    }

    let mut cur = f.make_monic()?;
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    let q = spec.element_count();
    let mut d = 1usize;
    loop {
        let Some(dc) = cur.degree() else { break };
        if 2 * d > dc {
            break;
        }
        let count = q.pow(d as u32);
        for k in 0..count {
            let p = monic_from_index(spec, d, k);
            let mut mult = 0u32;
            loop {
                let (quo, rem) = cur.divrem(&p)?;
                if rem.is_zero() {
                    cur = quo;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                factors.push((p, mult));
            }
            if cur.degree().map_or(true, |dc| 2 * d > dc) {
                break;
            }
        }
        d += 1;
    }
    if cur.degree().map_or(false, |dc| dc >= 1) {
        factors.push((cur, 1));
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(factors)
}

/// The k-th monic polynomial of the given degree in canonical ascending
/// order: k's base-q digits are the coefficients, most significant digit at
/// the highest exponent.
pub fn monic_from_index(spec: &FieldSpec, degree: usize, k: u64) -> Polynomial {
    let q = spec.element_count();
    let mut coeffs = vec![0u64; degree + 1];
    coeffs[degree] = 1;
    let mut rest = k;
    for c in coeffs.iter_mut().take(degree) {
        *c = rest % q;
        rest /= q;
    }
    debug_assert_eq!(rest, 0, "index out of range for degree {degree}");
    Polynomial::from_coeff_bits(spec, coeffs).expect("digits are in range")
}

/// All monic polynomials of exactly this degree, canonical ascending.
pub fn monic_polys(spec: &FieldSpec, degree: usize) -> impl Iterator<Item = Polynomial> {
    let spec = spec.clone();
    let count = (spec.element_count() as u128).pow(degree as u32);
    assert!(count <= 1 << 26, "enumeration too large (q^degree = {count})");
    (0..count as u64).map(move |k| monic_from_index(&spec, degree, k))
}

/// All monic irreducible polynomials of exactly this degree (Rabin-filtered).
pub fn monic_irreducibles(spec: &FieldSpec, degree: usize) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for p in monic_polys(spec, degree) {
        if is_irreducible(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Factor a (Q,alpha)-image of a degree-n irreducible monic polynomial.
///
/// Either the degree-2n input is irreducible, or it is the product of two
/// irreducible monic factors of degree n, recovered here with the
/// characteristic-2 trace map: for random h of degree < 2n,
/// T(h) = sum of h^(2^i) (mod F) for 0 <= i < s*n lands each CRT component
/// in {0, 1}, so gcd(T(h), F) is a nontrivial factor half the time.
///
/// Deterministic given (F, seed): trial elements come from a counter-based
/// stream keyed by (seed, attempt).
pub fn split_q_image(f_image: &Polynomial, n: usize, seed: u64) -> Result<SplitResult> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "factor degree n must be positive".to_string(),
        ));
    }
    let deg = f_image.degree().ok_or(Error::ZeroPolynomial {
        op: "split_q_image",
    })?;
    if deg != 2 * n {
        return Err(Error::DegreeMismatch {
            expected: 2 * n,
            got: deg,
        });
    }
    if !f_image.is_monic() {
        return Err(Error::NotMonic);
    }
    if is_irreducible(f_image)? {
        return Ok(SplitResult::Irreducible(f_image.clone()));
    }

    let spec = f_image.spec();
    let s = spec.s() as usize;
    let trace_terms = s * n;
    let mask = spec.mask();
    let attempt_cap = 64 * s as u64 * n as u64;
    for attempt in 0..attempt_cap {
        let mut rng = DetRand::new(seed, attempt);
        let coeffs: Vec<u64> = (0..2 * n).map(|_| rng.next_u64() & mask).collect();
        let h = Polynomial::from_coeff_bits(spec, coeffs)?;
        if h.is_zero() {
            continue;
        }
        let mut acc = h.clone();
        let mut cur = h;
        for _ in 1..trace_terms {
            cur = cur.square_mod(f_image)?;
            acc = acc.add(&cur)?;
        }
        let g = acc.gcd(f_image)?;
        let gd = g.degree().unwrap_or(0);
        if gd == 0 || gd == 2 * n {
            continue;
        }
        if gd != n {
            return Err(Error::ContractViolation {
                context: format!(
                    "splitter produced a degree-{gd} factor of a degree-{} image",
                    2 * n
                ),
            });
        }
        let (cof, rem) = f_image.divrem(&g)?;
        if !rem.is_zero() || cof.degree() != Some(n) {
            return Err(Error::ContractViolation {
                context: "factor does not divide the image".to_string(),
            });
        }
        let cof = cof.make_monic()?;
        if !is_irreducible(&g)? || !is_irreducible(&cof)? {
            return Err(Error::ContractViolation {
                context: "split factor is reducible; input was not a transform image"
                    .to_string(),
            });
        }
        let (g1, g2) = match g.canonical_cmp(&cof) {
            Ordering::Greater => (cof, g),
            _ => (g, cof),
        };
        return Ok(SplitResult::Split(g1, g2));
    }
    Err(Error::ContractViolation {
        context: format!("no splitting element found in {attempt_cap} attempts"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f2() -> FieldSpec {
        FieldSpec::conway(1).unwrap()
    }

    fn f8() -> FieldSpec {
        FieldSpec::conway(3).unwrap()
    }

    fn p(spec: &FieldSpec, coeffs: &[u64]) -> Polynomial {
        Polynomial::from_coeff_bits(spec, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn rabin_small_cases() {
        let s = f2();
        assert!(is_irreducible(&p(&s, &[1, 1, 1])).unwrap());
        assert!(is_irreducible(&p(&s, &[1, 1, 1, 1, 1])).unwrap());
        assert!(!is_irreducible(&p(&s, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&s, &[0, 1, 1])).unwrap());
        assert!(is_irreducible(&p(&s, &[0, 1])).unwrap());
        assert!(is_irreducible(&Polynomial::x(&s)).unwrap());
        assert!(is_irreducible(&Polynomial::zero(&s)).is_err());
        assert!(is_irreducible(&Polynomial::one(&s)).is_err());
    }

    #[test]
    fn rabin_accepts_the_f8_quartic() {
        // x^4 + x + a^3 over GF(8), a a root of x^3 + x + 1
        let s = f8();
        let a = s.x_element();
        let f = p(&s, &[a.pow(3).bits(), 1, 0, 0, 1]);
        assert!(is_irreducible(&f).unwrap());
        let factors = oracle_factor(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0], (f, 1));
    }

    #[test]
    fn oracle_factors_characteristic_two_square() {
        let s = f2();
        let sq = p(&s, &[1, 0, 1]); // x^2 + 1 = (x + 1)^2
        let factors = oracle_factor(&sq).unwrap();
        assert_eq!(factors, vec![(p(&s, &[1, 1]), 2)]);
    }

    #[test]
    fn oracle_normalizes_and_handles_constants() {
        let s = f8();
        let a = s.x_element();
        let scaled = p(&s, &[a.bits(), 0, a.bits()]); // a * (x^2 + 1) = a (x+1)^2
        let factors = oracle_factor(&scaled).unwrap();
        assert_eq!(factors, vec![(p(&s, &[1, 1]), 2)]);
        assert!(oracle_factor(&Polynomial::one(&s)).unwrap().is_empty());
        assert!(oracle_factor(&Polynomial::zero(&s)).is_err());
    }

    #[test]
    fn oracle_scale_cap() {
        let s = f8();
        let f = Polynomial::monomial(&s, 9); // 3 * 9 = 27 > 24
        assert!(matches!(
            oracle_factor(&f),
            Err(Error::ScaleCap { .. })
        ));
    }

    #[test]
    fn rabin_agrees_with_oracle_on_a_small_sweep() {
        // Full agreement runs in the acceptance suite; keep a quick slice here.
        let s = f2();
        for d in 1..=4 {
            for f in monic_polys(&s, d) {
                let fast = is_irreducible(&f).unwrap();
                let slow = oracle_factor(&f).unwrap();
                let slow_irr = slow.len() == 1 && slow[0].1 == 1;
                assert_eq!(fast, slow_irr, "disagreement on {f}");
            }
        }
    }

    #[test]
    fn irreducible_counts_match_the_necklace_numbers() {
        // Counts of monic irreducibles: over GF(2) for degrees 1..6 these are
        // 2, 1, 2, 3, 6, 9; over GF(4): 4, 6, 20; over GF(8): 8, 28, 168.
        let s2 = f2();
        let got: Vec<usize> = (1..=6)
            .map(|d| monic_irreducibles(&s2, d).unwrap().len())
            .collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9]);
        let s4 = FieldSpec::conway(2).unwrap();
        let got: Vec<usize> = (1..=3)
            .map(|d| monic_irreducibles(&s4, d).unwrap().len())
            .collect();
        assert_eq!(got, vec![4, 6, 20]);
        let s8 = f8();
        let got: Vec<usize> = (1..=3)
            .map(|d| monic_irreducibles(&s8, d).unwrap().len())
            .collect();
        assert_eq!(got, vec![8, 28, 168]);
    }

    #[test]
    fn split_recovers_the_f8_pair() {
        // x^8 + x^5 + a^3 x^4 + a x^3 + a^4 factors into two monic quartics,
        // one of which is x^4 + a^4 x^3 + x^2 + a^2 x + a^6.
        let s = f8();
        let a = s.x_element();
        let image = p(
            &s,
            &[
                a.pow(4).bits(),
                0,
                0,
                a.bits(),
                a.pow(3).bits(),
                1,
                0,
                0,
                1,
            ],
        );
        let expected = p(
            &s,
            &[a.pow(6).bits(), a.pow(2).bits(), 1, a.pow(4).bits(), 1],
        );
        match split_q_image(&image, 4, 0).unwrap() {
            SplitResult::Split(g1, g2) => {
                assert!(g1.canonical_cmp(&g2) != Ordering::Greater);
                assert_eq!(g1.mul(&g2).unwrap(), image);
                assert!(g1 == expected || g2 == expected);
                assert!(is_irreducible(&g1).unwrap() && is_irreducible(&g2).unwrap());
                // oracle agrees: two distinct quartic factors, multiplicity 1
                let factors = oracle_factor(&image).unwrap();
                assert_eq!(factors.len(), 2);
                assert!(factors.iter().all(|(f, m)| f.degree() == Some(4) && *m == 1));
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn split_is_deterministic_and_seed_independent_as_a_set() {
        let s = f8();
        let a = s.x_element();
        let image = p(
            &s,
            &[
                a.pow(4).bits(),
                0,
                0,
                a.bits(),
                a.pow(3).bits(),
                1,
                0,
                0,
                1,
            ],
        );
        let base = split_q_image(&image, 4, 0).unwrap();
        assert_eq!(base, split_q_image(&image, 4, 0).unwrap());
        for seed in 1..6 {
            assert_eq!(base, split_q_image(&image, 4, seed).unwrap());
        }
    }

    #[test]
    fn split_passes_through_irreducible_images() {
        // (x^2 + x + 1) transformed with alpha = 1 gives x^4 + x^3 + x^2 + x + 1,
        // which stays irreducible.
        let s = f2();
        let image = p(&s, &[1, 1, 1, 1, 1]);
        match split_q_image(&image, 2, 0).unwrap() {
            SplitResult::Irreducible(f) => assert_eq!(f, image),
            other => panic!("expected irreducible, got {other:?}"),
        }
    }

    #[test]
    fn split_rejects_bad_inputs() {
        let s = f2();
        let image = p(&s, &[1, 1, 1, 1, 1]);
        assert!(matches!(
            split_q_image(&image, 3, 0),
            Err(Error::DegreeMismatch { .. })
        ));
        let s8 = f8();
        let a = s8.x_element();
        let nonmonic = p(&s8, &[1, 0, a.bits()]);
        assert!(matches!(
            split_q_image(&nonmonic, 1, 0),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn split_handles_the_repeated_root_edge() {
        // The image of f = x is x^2 + alpha = (x + sqrt(alpha))^2; the split
        // comes back with two equal factors.
        let s = f8();
        let a = s.x_element();
        let image = p(&s, &[a.bits(), 0, 1]);
        match split_q_image(&image, 1, 0).unwrap() {
            SplitResult::Split(g1, g2) => {
                assert_eq!(g1, g2);
                assert_eq!(g1.mul(&g2).unwrap(), image);
                let root = a.sqrt();
                assert_eq!(g1, p(&s, &[root.bits(), 1]));
            }
            other => panic!("expected a (repeated) split, got {other:?}"),
        }
    }
}
