//! Bundled Conway polynomials over GF(2) for 1 <= s <= 16.
//!
//! Each entry is the canonical primitive modulus used as the default for
//! GF(2^s): the lexicographically least primitive polynomial of degree s
//! (comparing coefficient tuples from x^(s-1) down to the constant term)
//! whose root is norm-compatible with the entries for all proper divisors
//! of s. The table is frozen data; the unit test below recomputes every
//! entry from that definition.

use crate::error::{Error, Result};

/// Modulus bits per degree: bit i = coefficient of x^i.
const CONWAY_GF2: [(u32, u64); 16] = [
    (1, 0x3),      // x + 1
    (2, 0x7),      // x^2 + x + 1
    (3, 0xb),      // x^3 + x + 1
    (4, 0x13),     // x^4 + x + 1
    (5, 0x25),     // x^5 + x^2 + 1
    (6, 0x5b),     // x^6 + x^4 + x^3 + x + 1
    (7, 0x83),     // x^7 + x + 1
    (8, 0x11d),    // x^8 + x^4 + x^3 + x^2 + 1
    (9, 0x211),    // x^9 + x^4 + 1
    (10, 0x46f),   // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    (11, 0x805),   // x^11 + x^2 + 1
    (12, 0x10eb),  // x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    (13, 0x201b),  // x^13 + x^4 + x^3 + x + 1
    (14, 0x40a9),  // x^14 + x^7 + x^5 + x^3 + 1
    (15, 0x8035),  // x^15 + x^5 + x^4 + x^2 + 1
    (16, 0x1002d), // x^16 + x^5 + x^3 + x^2 + 1
];

/// The bundled Conway modulus for GF(2^s), if s is in the table.
pub fn modulus(s: u32) -> Option<u64> {
    CONWAY_GF2
        .iter()
        .find(|(deg, _)| *deg == s)
        .map(|(_, m)| *m)
}

/// Largest degree present in the bundled table.
pub fn max_degree() -> u32 {
    CONWAY_GF2.last().map(|(s, _)| *s).unwrap_or(0)
}

/// Parse an override table: one `s:hexmodulus` entry per line, `#` comments
/// and blank lines ignored. An optional `0x` prefix on the modulus is allowed.
pub fn parse_table(text: &str) -> Result<Vec<(u32, u64)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (s_part, m_part) = line.split_once(':').ok_or_else(|| {
            Error::Parse(format!(
                "conway table line {}: expected `s:hexmodulus`, got `{line}`",
                lineno + 1
            ))
        })?;
        let s: u32 = s_part.trim().parse().map_err(|_| {
            Error::Parse(format!("conway table line {}: bad degree `{s_part}`", lineno + 1))
        })?;
        let digits = m_part.trim();
        let digits = digits
            .strip_prefix("0x")
            .or_else(|| digits.strip_prefix("0X"))
            .unwrap_or(digits);
        let m = u64::from_str_radix(digits, 16).map_err(|_| {
            Error::Parse(format!(
                "conway table line {}: bad hex modulus `{m_part}`",
                lineno + 1
            ))
        })?;
        out.push((s, m));
    }
    Ok(out)
}

/// Look up a degree in an override table parsed by [`parse_table`].
pub fn lookup(table: &[(u32, u64)], s: u32) -> Option<u64> {
    table.iter().find(|(deg, _)| *deg == s).map(|(_, m)| *m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    /// Evaluate a GF(2) polynomial (modulus bits) at a field element.
    fn eval_gf2_at(bits: u64, at: &crate::field::FieldElement) -> crate::field::FieldElement {
        let spec = at.spec().clone();
        let deg = 63 - bits.leading_zeros() as u64;
        let mut acc = spec.zero();
        for i in (0..=deg).rev() {
            acc = acc.mul(at).unwrap();
            if (bits >> i) & 1 == 1 {
                acc = acc.add(&spec.one()).unwrap();
            }
        }
        acc
    }

    /// Recompute the table from the definition: least primitive polynomial
    /// (tuple order on coefficients, highest first) compatible with the
    /// norm maps onto all proper-subfield entries.
    fn compute_entry(s: u32, smaller: &[(u32, u64)]) -> u64 {
        'candidates: for k in 0..(1u64 << s) {
            let m = (1u64 << s) | k;
            if m & 1 == 0 {
                continue;
            }
            let spec = match FieldSpec::new(s, m) {
                Ok(spec) => spec,
                Err(_) => continue,
            };
            // The constructor labels the spec with generator x exactly when
            // x is primitive.
            let Some(g) = spec.generator() else {
                continue;
            };
            let order = spec.order();
            for &(d, cd) in smaller.iter().filter(|(d, _)| *d < s && s % *d == 0) {
                let e = order / ((1u64 << d) - 1);
                let gamma = g.pow(e);
                if !eval_gf2_at(cd, &gamma).is_zero() {
                    continue 'candidates;
                }
            }
            return m;
        }
        panic!("no Conway entry found for s = {s}");
    }

    #[test]
    fn bundled_table_matches_recomputation() {
        let mut computed: Vec<(u32, u64)> = Vec::new();
        for s in 1..=max_degree() {
            let m = compute_entry(s, &computed);
            computed.push((s, m));
        }
        let mismatches: Vec<String> = computed
            .iter()
            .filter(|(s, m)| modulus(*s) != Some(*m))
            .map(|(s, m)| format!("({s}, {m:#x})"))
            .collect();
        assert!(
            mismatches.is_empty(),
            "bundled entries disagree with the recomputation: {}",
            mismatches.join(", ")
        );
    }

    #[test]
    fn known_small_moduli() {
        assert_eq!(modulus(3), Some(0xb)); // x^3 + x + 1
        assert_eq!(modulus(6), Some(0x5b)); // x^6 + x^4 + x^3 + x + 1
        assert_eq!(modulus(17), None);
    }

    #[test]
    fn override_table_parsing() {
        let table = parse_table("# comment\n3:d\n6:0x5b\n\n").unwrap();
        assert_eq!(table, vec![(3, 0xd), (6, 0x5b)]);
        assert_eq!(lookup(&table, 3), Some(0xd));
        assert_eq!(lookup(&table, 4), None);
        assert!(parse_table("3").is_err());
        assert!(parse_table("x:5").is_err());
        assert!(parse_table("3:zz").is_err());
    }
}
