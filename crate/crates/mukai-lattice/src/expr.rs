//! Parser for linear-combination expressions over a configured basis,
//! e.g. `lambda + 2f`, `5alpha + 15f - 15/4 beta`, `-3f`.
//!
//! A term is an optional rational coefficient, an optional `*`, and a
//! label; terms are joined by `+` / `-`. The labels `alpha`/`α` and
//! `beta`/`β` name the two extra directions of the extended lattice.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::extended::ExtendedVector;
use crate::lattice::{BilinearSpace, LatticeVector};
use crate::ratio::{int, Rational};

#[derive(Debug, PartialEq)]
struct Term {
    coeff: Rational,
    label: String,
}

fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut seen_sign = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if current.trim().is_empty() && !seen_sign && terms.is_empty() {
                    // leading sign
                    negative = ch == '-';
                } else if current.trim().is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "empty term in expression '{s}'"
                    )));
                } else {
                    terms.push((negative, current.trim().to_string()));
                    current.clear();
                    negative = ch == '-';
                }
                seen_sign = true;
            }
            _ => {
                current.push(ch);
            }
        }
    }
    if current.trim().is_empty() {
        return Err(Error::InvalidInput(format!(
            "expression '{s}' ends with a dangling sign"
        )));
    }
    terms.push((negative, current.trim().to_string()));
    Ok(terms)
}

fn parse_term(raw: &str, negative: bool) -> Result<Term> {
    let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    // longest numeric prefix: digits and at most one '/'
    let mut split = 0;
    let mut slash_seen = false;
    for (i, ch) in t.char_indices() {
        if ch.is_ascii_digit() {
            split = i + 1;
        } else if ch == '/' && !slash_seen && split > 0 {
            slash_seen = true;
        } else {
            break;
        }
    }
    // a '/' must be followed by digits to count
    let prefix = if slash_seen {
        let after = &t[..];
        let slash_at = after.find('/').expect("slash seen");
        if split > slash_at {
            &t[..split]
        } else {
            &t[..slash_at]
        }
    } else {
        &t[..split]
    };
    let rest = t[prefix.len()..].trim_start_matches('*');
    let coeff = if prefix.is_empty() {
        int(1)
    } else if let Some((n, d)) = prefix.split_once('/') {
        let num: BigInt = n
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient in term '{raw}'")))?;
        let den: BigInt = d
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient in term '{raw}'")))?;
        if den == BigInt::from(0) {
            return Err(Error::InvalidInput(format!(
                "zero denominator in term '{raw}'"
            )));
        }
        Rational::new(num, den)
    } else {
        let num: BigInt = prefix
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad coefficient in term '{raw}'")))?;
        Rational::from_integer(num)
    };
    let coeff = if negative { -coeff } else { coeff };
    Ok(Term {
        coeff,
        label: rest.to_string(),
    })
}

fn canonical_label(label: &str) -> &str {
    match label {
        "α" => "alpha",
        "β" => "beta",
        other => other,
    }
}

/// Parses an H²-lattice vector over the space's labels. `0` is accepted
/// for the zero vector.
pub fn parse_h2(ns: &BilinearSpace, s: &str) -> Result<LatticeVector> {
    if s.trim() == "0" {
        return Ok(ns.zero_vector());
    }
    let mut v = ns.zero_vector();
    for (neg, raw) in split_terms(s)? {
        let term = parse_term(&raw, neg)?;
        let label = canonical_label(&term.label);
        if label.is_empty() {
            return Err(Error::InvalidInput(format!(
                "term '{raw}' has no basis label"
            )));
        }
        let i = ns
            .label_index(label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown basis label '{label}'")))?;
        v = v.add(&ns.basis_vector(i)?.scale(&term.coeff))?;
    }
    Ok(v)
}

/// Parses an extended vector over alpha/beta and the space's labels.
pub fn parse_extended(ns: &BilinearSpace, s: &str) -> Result<ExtendedVector> {
    if s.trim() == "0" {
        return Ok(ExtendedVector::from_h2(ns.zero_vector()));
    }
    let mut a = int(0);
    let mut b = int(0);
    let mut mu = ns.zero_vector();
    for (neg, raw) in split_terms(s)? {
        let term = parse_term(&raw, neg)?;
        match canonical_label(&term.label) {
            "alpha" => a += term.coeff,
            "beta" => b += term.coeff,
            "" => {
                return Err(Error::InvalidInput(format!(
                    "term '{raw}' has no basis label"
                )))
            }
            label => {
                let i = ns.label_index(label).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown basis label '{label}'"))
                })?;
                mu = mu.add(&ns.basis_vector(i)?.scale(&term.coeff))?;
            }
        }
    }
    Ok(ExtendedVector::new(a, mu, b))
}
