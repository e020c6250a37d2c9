//! Slope computations for suitable polarizations h = f + εl, as exact
//! ε-polynomials, and the destabilization verdicts they drive in the
//! ε → 0⁺ limit.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::eps::EpsPolynomial;
use crate::error::{Error, Result};
use crate::extended::ManifoldData;
use crate::lattice::LatticeVector;
use crate::ratio::{gcd_of_integers, int, is_integer, render, Rational};
use crate::sh::fujiki4;

/// Rank and first Chern class of a sheaf, the data entering slopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafNumerics {
    rank: Rational,
    c1: LatticeVector,
}

impl SheafNumerics {
    pub fn new(rank: Rational, c1: LatticeVector) -> Result<Self> {
        if rank <= int(0) {
            return Err(Error::InvalidInput(format!(
                "rank must be positive, got {}",
                render(&rank)
            )));
        }
        Ok(Self { rank, c1 })
    }

    pub fn rank(&self) -> &Rational {
        &self.rank
    }

    pub fn c1(&self) -> &LatticeVector {
        &self.c1
    }
}

/// μ(ε) = (1/rank) ∫ c₁ · (f + εl)³, expanded exactly with the Fujiki
/// relation. Requires an isotropic f (q(f, f) = 0); then the polynomial
/// has no constant term, and the ε-coefficient vanishes exactly when c₁
/// has no component pairing against f².
pub fn slope_poly(
    m: &ManifoldData,
    s: &SheafNumerics,
    f: &LatticeVector,
    l: &LatticeVector,
) -> Result<EpsPolynomial> {
    m.require_fourfold()?;
    if !m.ns().q(f)?.is_zero() {
        return Err(Error::Precondition(
            "the fibration class f must be isotropic (q(f, f) = 0)".into(),
        ));
    }
    let binom = [int(1), int(3), int(3), int(1)];
    let mut out = EpsPolynomial::zero();
    for (j, b) in binom.iter().enumerate() {
        // term ε^j · binom(3, j) · ∫ c₁ f^{3−j} l^j
        let factors: Vec<&LatticeVector> = (0..3).map(|k| if k < 3 - j { f } else { l }).collect();
        let integral = fujiki4(m, s.c1(), factors[0], factors[1], factors[2])?;
        out.add_term(j as u32, b * integral / s.rank());
    }
    Ok(out)
}

/// Verdict on a candidate destabilizer first Chern class c₁(E) = b·f + c·λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DestabilizerVerdict {
    /// c = 0: compatible with both bounds, so c₁(E) is a multiple of f.
    Consistent,
    /// c > 0 contradicts semistability of the restriction to a general
    /// fiber, which forces c ≤ 0.
    ViolatesFiberBound,
    /// c < 0 makes the ε-linear slope coefficient negative, contradicting
    /// the destabilizing inequality in the limit ε → 0⁺ (it forces c ≥ 0).
    ViolatesLimitBound,
}

impl std::fmt::Display for DestabilizerVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::Consistent => "consistent",
            Self::ViolatesFiberBound => "violates_fiber_bound",
            Self::ViolatesLimitBound => "violates_limit_bound",
        };
        write!(f, "{s}")
    }
}

/// Applies the two constraints of the destabilizer analysis to
/// c₁(E) = b·f + c·λ on a rank-2 lattice with basis (λ, f), f isotropic.
/// The fiber bound (c ≤ 0) is an axiom of the fibration geometry; the
/// limit bound is read off the ε-linear coefficient of the slope
/// polynomial, which evaluates to a positive multiple of c.
pub fn destabilizer_c1_verdict(
    m: &ManifoldData,
    b: &Rational,
    c: &Rational,
) -> Result<DestabilizerVerdict> {
    m.require_fourfold()?;
    if m.ns().dim() != 2 {
        return Err(Error::Precondition(
            "the destabilizer analysis is stated on the rank-2 lattice with basis (λ, f)".into(),
        ));
    }
    let lam = m.ns().basis_vector(0)?;
    let f = m.ns().basis_vector(1)?;
    if !m.ns().q(&f)?.is_zero() {
        return Err(Error::Precondition(
            "the fibration class f must be isotropic (q(f, f) = 0)".into(),
        ));
    }
    if c > &int(0) {
        return Ok(DestabilizerVerdict::ViolatesFiberBound);
    }
    let c1 = f.scale(b).add(&lam.scale(c))?;
    let candidate = SheafNumerics::new(int(1), c1)?;
    let mu = slope_poly(m, &candidate, &f, &lam)?;
    if mu.coeff(1) < int(0) {
        return Ok(DestabilizerVerdict::ViolatesLimitBound);
    }
    Ok(DestabilizerVerdict::Consistent)
}

/// Compares two slope polynomials for all sufficiently small ε > 0:
/// the sign of the lowest-power term of the difference decides.
pub fn compare_slopes(a: &EpsPolynomial, b: &EpsPolynomial) -> Ordering {
    a.sub(b).sign_near_zero()
}

/// Square and divisibility of an integral divisor class: square = q(v, v),
/// divisibility = gcd of the pairings q(v, basis). The pairings must be
/// integers and v must be nonzero.
pub fn divisor_square_div(m: &ManifoldData, v: &LatticeVector) -> Result<(Rational, u64)> {
    for c in v.coords() {
        if !is_integer(c) {
            return Err(Error::InvalidInput(format!(
                "divisor class must be integral, found coordinate {}",
                render(c)
            )));
        }
    }
    if v.is_zero() {
        return Err(Error::InvalidInput(
            "divisibility of the zero divisor is undefined".into(),
        ));
    }
    let square = m.ns().q(v)?;
    let pairings: Vec<Rational> = (0..m.ns().dim())
        .map(|i| m.ns().pair(v, &m.ns().basis_vector(i)?))
        .collect::<Result<_>>()?;
    let g = gcd_of_integers(&pairings)?;
    let div: u64 = g.try_into().map_err(|_| {
        Error::InvalidInput("divisibility does not fit in a machine word".into())
    })?;
    Ok((square, div))
}
