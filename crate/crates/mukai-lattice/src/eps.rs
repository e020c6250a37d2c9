//! Polynomials in a formal small parameter ε, used to compare slopes of
//! sheaves for polarizations f + εl in the limit ε → 0⁺.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::ratio::{int, pow_u, Rational};

/// Exact polynomial in ε with non-negative integer powers.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EpsPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl EpsPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(power: u32, coeff: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(power, coeff);
        p
    }

    pub fn from_terms(terms: &[(u32, Rational)]) -> Self {
        let mut p = Self::default();
        for (pow, c) in terms {
            p.add_term(*pow, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, power: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(power).or_insert_with(|| int(0));
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(|| int(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::default();
        for (p, k) in &self.coeffs {
            out.add_term(*p, k * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (p, a) in &self.coeffs {
            for (q, b) in &other.coeffs {
                out.add_term(p + q, a * b);
            }
        }
        out
    }

    /// Exact evaluation at a rational ε.
    pub fn eval(&self, eps: &Rational) -> Rational {
        self.coeffs
            .iter()
            .map(|(p, c)| c * pow_u(eps, *p))
            .sum()
    }

    /// Lowest-power nonzero term, or `None` for the zero polynomial.
    /// This term dominates the sign for all sufficiently small ε > 0.
    pub fn leading(&self) -> Option<(u32, Rational)> {
        self.coeffs
            .iter()
            .next()
            .map(|(p, c)| (*p, c.clone()))
    }

    /// Sign of the polynomial for all sufficiently small ε > 0:
    /// `Greater`/`Less`/`Equal` against zero.
    pub fn sign_near_zero(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some((_, c)) => c.cmp(&int(0)),
        }
    }
}

/// Lowest-power nonzero term of `p`, if any.
pub fn eps_leading(p: &EpsPolynomial) -> Option<(u32, Rational)> {
    p.leading()
}

impl fmt::Display for EpsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (p, c) in &self.coeffs {
            let neg = c < &int(0);
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = *p == 0 || abs != int(1);
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            match p {
                0 => {}
                1 => {
                    if show_coeff {
                        out.push(' ');
                    }
                    out.push_str("eps");
                }
                _ => {
                    if show_coeff {
                        out.push(' ');
                    }
                    out.push_str(&format!("eps^{p}"));
                }
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use proptest::prelude::*;

    #[test]
    fn leading_of_slope_expansions() {
        // brute expansion of ∫ lambda · (f + eps·lambda)^3 with the Fujiki
        // rule at c = 1 gives 24 eps + 36 eps^2 + 12 eps^3; the leading term
        // is (1, 24).
        let p = EpsPolynomial::from_terms(&[(1, int(24)), (2, int(36)), (3, int(12))]);
        assert_eq!(eps_leading(&p), Some((1, int(24))));

        let mu_f2 = EpsPolynomial::from_terms(&[(2, int(72)), (3, int(36))]);
        assert_eq!(eps_leading(&mu_f2), Some((2, int(72))));

        assert_eq!(eps_leading(&EpsPolynomial::zero()), None);
    }

    #[test]
    fn display() {
        let p = EpsPolynomial::from_terms(&[(2, int(72)), (3, int(36))]);
        assert_eq!(p.to_string(), "72 eps^2 + 36 eps^3");
        let q = EpsPolynomial::from_terms(&[(0, ratio(1, 2)), (1, int(-24))]);
        assert_eq!(q.to_string(), "1/2 - 24 eps");
        assert_eq!(EpsPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = EpsPolynomial::term(3, int(5));
        p.add_term(3, int(-5));
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
    }

    fn poly() -> impl Strategy<Value = EpsPolynomial> {
        proptest::collection::vec((0u32..6, small_rational()), 0..5)
            .prop_map(|terms| EpsPolynomial::from_terms(&terms))
    }

    proptest! {
        // leading powers add under multiplication (valuation property)
        #[test]
        fn leading_power_is_additive(p in poly(), q in poly()) {
            if let (Some((dp, _)), Some((dq, _))) = (p.leading(), q.leading()) {
                let (d, c) = p.mul(&q).leading().expect("product of nonzero is nonzero over Q");
                prop_assert_eq!(d, dp + dq);
                prop_assert!(!c.is_zero());
            }
        }

        #[test]
        fn eval_matches_terms(p in poly(), n in -4i64..=4, d in 1i64..=4) {
            let eps = ratio(n, d);
            let direct: Rational = p.terms().map(|(k, c)| c * pow_u(&eps, k)).sum();
            prop_assert_eq!(p.eval(&eps), direct);
        }
    }
}
