//! The degree-doubling transforms and the classical trace conditions that
//! keep their images irreducible.
//!
//! For f of degree n and alpha != 0, the image is
//! `x^n * f(x + alpha * x^-1)`, computed here as the exact expansion
//! `sum_u c_u * (x^2 + alpha)^u * x^(n-u)` so no division by x ever occurs.

use crate::error::{Error, Result};
use crate::factorize::is_irreducible;
use crate::field::{ensure_same_spec, FieldElement};
use crate::poly::Polynomial;

/// f^(Q,alpha): always of degree exactly 2n, monic whenever f is monic.
pub fn q_alpha_transform(f: &Polynomial, alpha: &FieldElement) -> Result<Polynomial> {
    ensure_same_spec(f.spec(), alpha.spec())?;
    if alpha.is_zero() {
        return Err(Error::ZeroParameter { name: "alpha" });
    }
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial { op: "q_alpha_transform" }),
        Some(0) => {
            return Err(Error::ConstantPolynomial {
                op: "q_alpha_transform",
            })
        }
        Some(n) => n,
    };
    let spec = f.spec();
    let ab = alpha.bits();

    let mut out = vec![0u64; 2 * n + 1];
    // power = (x^2 + alpha)^u, grown one sparse multiplication at a time;
    // the binomial coefficients mod 2 fall out of the repeated XOR.
    let mut power = vec![1u64];
    for u in 0..=n {
        let cu = f.coeff_bits(u);
        if cu != 0 {
            let shift = n - u;
            for (j, &pj) in power.iter().enumerate() {
                if pj != 0 {
                    out[j + shift] ^= spec.mul_bits(cu, pj);
                }
            }
        }
        if u < n {
            let mut next = vec![0u64; power.len() + 2];
            for (j, &pj) in power.iter().enumerate() {
                if pj != 0 {
                    next[j + 2] ^= pj;
                    next[j] ^= spec.mul_bits(ab, pj);
                }
            }
            power = next;
        }
    }
    let image = Polynomial::from_coeff_bits(spec, out)?;
    debug_assert_eq!(image.degree(), Some(2 * n), "transform must double the degree");
    Ok(image)
}

/// The classical Q-transform `x^n * f(x + x^-1)`, i.e. alpha = 1.
pub fn q_transform(f: &Polynomial) -> Result<Polynomial> {
    q_alpha_transform(f, &f.spec().one())
}

/// Meyn's trace condition on a self-reciprocal irreducible monic polynomial
/// `x^n + a_1 x^(n-1) + ... + a_1 x + 1`: the trace of a_1 (taken in the
/// coefficient field) equals 1. Precondition violations are reported as
/// distinct errors, never as `false`.
pub fn meyn_condition(f: &Polynomial) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial { op: "meyn_condition" }),
        Some(0) => {
            return Err(Error::ConstantPolynomial {
                op: "meyn_condition",
            })
        }
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_self_reciprocal()? {
        return Err(Error::NotSelfReciprocal);
    }
    if !is_irreducible(f)? {
        return Err(Error::ReducibleInput {
            context: "meyn_condition needs an irreducible input".to_string(),
        });
    }
    Ok(f.coeff(n - 1).trace() == 1)
}

/// Kyuregyan's two trace conditions on an irreducible F = sum c_u x^u:
/// Tr(c_1 * delta / c_0) = 1 and Tr(c_(n-1) / delta) = 1.
pub fn kyuregyan_condition(f: &Polynomial, delta: &FieldElement) -> Result<bool> {
    ensure_same_spec(f.spec(), delta.spec())?;
    if delta.is_zero() {
        return Err(Error::ZeroParameter { name: "delta" });
    }
    let n = match f.degree() {
        None => {
            return Err(Error::ZeroPolynomial {
                op: "kyuregyan_condition",
            })
        }
        Some(0) => {
            return Err(Error::ConstantPolynomial {
                op: "kyuregyan_condition",
            })
        }
        Some(n) => n,
    };
    if !is_irreducible(f)? {
        return Err(Error::ReducibleInput {
            context: "kyuregyan_condition needs an irreducible input".to_string(),
        });
    }
    let c0 = f.coeff(0);
    if c0.is_zero() {
        // Only f = x reaches this; the conditions are undefined there.
        return Err(Error::InvalidInput(
            "kyuregyan_condition needs a nonzero constant term".to_string(),
        ));
    }
    let first = f.coeff(1).mul(delta)?.mul(&c0.inv()?)?;
    let last = f.coeff(n - 1).mul(&delta.inv()?)?;
    Ok(first.trace() == 1 && last.trace() == 1)
}
