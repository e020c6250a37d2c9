//! Graded model of the Verbitsky component SH(X) of a hyper-Kähler
//! fourfold (n = 2), with Fujiki integration and the Mukai pairing.
//!
//! A class is stored degree by degree:
//!
//! * degree 0 — a scalar multiple of 𝔮₀ = 1;
//! * degree 2 — a vector in the configured NS lattice;
//! * degree 4 — a symmetric 2-tensor of NS classes (coordinates of
//!   products μν) plus a separate coordinate for 𝔮₂: with NS of small rank
//!   the full BBF dual 𝔮₂ is not expressible inside Sym²(NS), so it is a
//!   formal basis element with its own integration rules;
//! * degree 6 — a vector v recording the dual class v∨ with
//!   ∫ v∨·μ = q(v, μ);
//! * degree 8 — a scalar multiple of the point class, ∫ 𝔭𝔱 = 1.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::extended::{ExtendedVector, ManifoldData};
use crate::lattice::LatticeVector;
use crate::matrix::Matrix;
use crate::ratio::{int, ratio, Rational};

/// Graded class in the fourfold Verbitsky-component model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SHClass {
    pub deg0: Rational,
    pub deg2: LatticeVector,
    /// Coordinates S with class value Σ_{i,j} S_ij b_i b_j; kept symmetric.
    pub deg4_sym: Matrix,
    pub deg4_q2: Rational,
    /// The vector v standing for the degree-6 class v∨.
    pub deg6_dual: LatticeVector,
    pub deg8_pt: Rational,
}

impl SHClass {
    pub fn zero(dim: usize) -> Self {
        Self {
            deg0: int(0),
            deg2: LatticeVector::zero(dim),
            deg4_sym: vec![vec![int(0); dim]; dim],
            deg4_q2: int(0),
            deg6_dual: LatticeVector::zero(dim),
            deg8_pt: int(0),
        }
    }

    pub fn unit(c: Rational, dim: usize) -> Self {
        let mut out = Self::zero(dim);
        out.deg0 = c;
        out
    }

    pub fn q2(c: Rational, dim: usize) -> Self {
        let mut out = Self::zero(dim);
        out.deg4_q2 = c;
        out
    }

    pub fn point(c: Rational, dim: usize) -> Self {
        let mut out = Self::zero(dim);
        out.deg8_pt = c;
        out
    }

    pub fn from_deg2(v: LatticeVector) -> Self {
        let mut out = Self::zero(v.dim());
        out.deg2 = v;
        out
    }

    pub fn dual(v: LatticeVector) -> Self {
        let mut out = Self::zero(v.dim());
        out.deg6_dual = v;
        out
    }

    /// The degree-4 class γ² (tensor γ⊗γ).
    pub fn sym_square(v: &LatticeVector) -> Self {
        let dim = v.dim();
        let mut out = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                out.deg4_sym[i][j] = v.coord(i) * v.coord(j);
            }
        }
        out
    }

    /// The degree-4 class μν (symmetrized tensor).
    pub fn sym_product(v: &LatticeVector, w: &LatticeVector) -> Result<Self> {
        if v.dim() != w.dim() {
            return Err(Error::Arity {
                expected: v.dim(),
                found: w.dim(),
            });
        }
        let dim = v.dim();
        let mut out = Self::zero(dim);
        let half = ratio(1, 2);
        for i in 0..dim {
            for j in 0..dim {
                out.deg4_sym[i][j] =
                    (v.coord(i) * w.coord(j) + w.coord(i) * v.coord(j)) * &half;
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.deg2.dim()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let dim = self.check_same_dim(other)?;
        let mut sym = vec![vec![int(0); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                sym[i][j] = &self.deg4_sym[i][j] + &other.deg4_sym[i][j];
            }
        }
        Ok(Self {
            deg0: &self.deg0 + &other.deg0,
            deg2: self.deg2.add(&other.deg2)?,
            deg4_sym: sym,
            deg4_q2: &self.deg4_q2 + &other.deg4_q2,
            deg6_dual: self.deg6_dual.add(&other.deg6_dual)?,
            deg8_pt: &self.deg8_pt + &other.deg8_pt,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            deg0: &self.deg0 * c,
            deg2: self.deg2.scale(c),
            deg4_sym: self
                .deg4_sym
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
            deg4_q2: &self.deg4_q2 * c,
            deg6_dual: self.deg6_dual.scale(c),
            deg8_pt: &self.deg8_pt * c,
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<usize> {
        if self.dim() != other.dim() {
            return Err(Error::Arity {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.dim())
    }

    /// Renders e.g. `5 - 15/4 q2 + 45/32 pt` on the configured basis.
    pub fn render(&self, m: &ManifoldData) -> String {
        let labels = m.ns().labels();
        let mut out = String::new();
        if !self.deg0.is_zero() {
            crate::lattice::push_term(&mut out, &self.deg0, "");
        }
        for (i, c) in self.deg2.coords().iter().enumerate() {
            if !c.is_zero() {
                crate::lattice::push_term(&mut out, c, &labels[i]);
            }
        }
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let c = if i == j {
                    self.deg4_sym[i][i].clone()
                } else {
                    &self.deg4_sym[i][j] + &self.deg4_sym[j][i]
                };
                if !c.is_zero() {
                    crate::lattice::push_term(&mut out, &c, &format!("{}·{}", labels[i], labels[j]));
                }
            }
        }
        if !self.deg4_q2.is_zero() {
            crate::lattice::push_term(&mut out, &self.deg4_q2, "q2");
        }
        for (i, c) in self.deg6_dual.coords().iter().enumerate() {
            if !c.is_zero() {
                crate::lattice::push_term(&mut out, c, &format!("{}∨", labels[i]));
            }
        }
        if !self.deg8_pt.is_zero() {
            crate::lattice::push_term(&mut out, &self.deg8_pt, "pt");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Full polarization of the Fujiki relation on a fourfold:
/// ∫ abcd = c_X (q(a,b)q(c,d) + q(a,c)q(b,d) + q(a,d)q(b,c)).
pub fn fujiki4(
    m: &ManifoldData,
    a: &LatticeVector,
    b: &LatticeVector,
    c: &LatticeVector,
    d: &LatticeVector,
) -> Result<Rational> {
    m.require_fourfold()?;
    let q = |x: &LatticeVector, y: &LatticeVector| m.ns().pair(x, y);
    let s = q(a, b)? * q(c, d)? + q(a, c)? * q(b, d)? + q(a, d)? * q(b, c)?;
    Ok(m.c_x() * s)
}

fn check_class(m: &ManifoldData, v: &SHClass) -> Result<()> {
    m.require_fourfold()?;
    if v.dim() != m.ns().dim() {
        return Err(Error::Arity {
            expected: m.ns().dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

/// ∫ 𝔮₂ · (Σ S_ij b_i b_j) = Σ S_ij q(b_i, b_j).
fn integrate_q2_sym(m: &ManifoldData, sym: &Matrix) -> Rational {
    let gram = m.ns().gram();
    let mut acc = int(0);
    for (i, row) in sym.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            if !s.is_zero() {
                acc += s * &gram[i][j];
            }
        }
    }
    acc
}

/// ∫ (Σ S_ij b_i b_j)(Σ T_kl b_k b_l) by the Fujiki relation.
fn integrate_sym_sym(m: &ManifoldData, s: &Matrix, t: &Matrix) -> Result<Rational> {
    let dim = m.ns().dim();
    let mut acc = int(0);
    for i in 0..dim {
        for j in 0..dim {
            if s[i][j].is_zero() {
                continue;
            }
            for k in 0..dim {
                for l in 0..dim {
                    if t[k][l].is_zero() {
                        continue;
                    }
                    let bi = m.ns().basis_vector(i)?;
                    let bj = m.ns().basis_vector(j)?;
                    let bk = m.ns().basis_vector(k)?;
                    let bl = m.ns().basis_vector(l)?;
                    acc += &s[i][j] * &t[k][l] * fujiki4(m, &bi, &bj, &bk, &bl)?;
                }
            }
        }
    }
    Ok(acc)
}

/// Pairing of the two degree-4 parts, including the 𝔮₂ cross rules and
/// ∫ 𝔮₂² (the calibrated constant).
fn integrate_deg4(m: &ManifoldData, v: &SHClass, w: &SHClass) -> Result<Rational> {
    let mut acc = integrate_sym_sym(m, &v.deg4_sym, &w.deg4_sym)?;
    if !v.deg4_q2.is_zero() {
        acc += &v.deg4_q2 * integrate_q2_sym(m, &w.deg4_sym);
    }
    if !w.deg4_q2.is_zero() {
        acc += &w.deg4_q2 * integrate_q2_sym(m, &v.deg4_sym);
    }
    if !v.deg4_q2.is_zero() && !w.deg4_q2.is_zero() {
        acc += &v.deg4_q2 * &w.deg4_q2 * m.q2_square()?;
    }
    Ok(acc)
}

/// Total integral of the degree-8 part of v·w.
pub fn integrate_product(m: &ManifoldData, v: &SHClass, w: &SHClass) -> Result<Rational> {
    check_class(m, v)?;
    check_class(m, w)?;
    let mut acc = &v.deg0 * &w.deg8_pt + &v.deg8_pt * &w.deg0;
    // ∫ μ · v∨ = q(v, μ)
    acc += m.ns().pair(&w.deg6_dual, &v.deg2)?;
    acc += m.ns().pair(&v.deg6_dual, &w.deg2)?;
    acc += integrate_deg4(m, v, w)?;
    Ok(acc)
}

/// The Mukai pairing b_SH: the degree-2k part of the first argument pairs
/// with the degree-(8−2k) part of the second with weight (−1)^k. The sign
/// convention is calibrated so that χ(O, O) = n + 1 is reproduced.
pub fn mukai_pairing(m: &ManifoldData, v: &SHClass, w: &SHClass) -> Result<Rational> {
    check_class(m, v)?;
    check_class(m, w)?;
    let mut acc = &v.deg0 * &w.deg8_pt + &v.deg8_pt * &w.deg0; // k = 0, 4
    acc -= m.ns().pair(&w.deg6_dual, &v.deg2)?; // k = 1
    acc -= m.ns().pair(&v.deg6_dual, &w.deg2)?; // k = 3
    acc += integrate_deg4(m, v, w)?; // k = 2
    Ok(acc)
}

/// Mukai vector of the structure sheaf, v(O) = 1 + c_X r_X 𝔮₂ + c_X (r_X²/2) 𝔭𝔱.
pub fn structure_sheaf_class(m: &ManifoldData) -> Result<SHClass> {
    m.require_fourfold()?;
    let dim = m.ns().dim();
    let mut v = SHClass::unit(int(1), dim);
    v.deg4_q2 = m.c_x() * m.r_x();
    v.deg8_pt = m.c_x() * m.r_x() * m.r_x() * ratio(1, 2);
    Ok(v)
}

/// Solves for the unique K = ∫𝔮₂² making the structure-sheaf self-pairing
/// equal χ(O, O) = n + 1 = 3. Fails when the K-coefficient degenerates
/// (r_X = 0).
pub fn solve_q2_square(m: &ManifoldData) -> Result<Rational> {
    m.require_fourfold()?;
    let v = structure_sheaf_class(m)?;
    // b(v, v) = A + B·K with A the K-free part and B = (c_X r_X)².
    let probe = m.clone().with_q2_square(int(0));
    let a = mukai_pairing(&probe, &v, &v)?;
    let b = &v.deg4_q2 * &v.deg4_q2;
    if b.is_zero() {
        return Err(Error::Calibration(
            "the coefficient of q2_square vanishes (r_X = 0)".into(),
        ));
    }
    Ok((int(3) - a) / b)
}

/// Closed form of the same calibration for given constants:
/// b(v(O), v(O)) = c_X r_X² + (c_X r_X)²·K = 3.
pub fn solve_q2_square_for(c_x: &Rational, r_x: &Rational) -> Result<Rational> {
    let coeff = c_x * r_x * c_x * r_x;
    if coeff.is_zero() {
        return Err(Error::Calibration(
            "the coefficient of q2_square vanishes (r_X = 0)".into(),
        ));
    }
    Ok((int(3) - c_x * r_x * r_x) / coeff)
}

/// Extended Mukai vector viewed inside the model: used by tests and the
/// scenario to state twist-invariance of the Euler pairing.
pub fn euler_pairing_of_vector(m: &ManifoldData, v: &ExtendedVector) -> Result<Rational> {
    let cls = crate::calculus::mukai_vector(m, v)?;
    mukai_pairing(m, &cls, &cls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended::{twist, DeformationType, ExtendedVector, ManifoldData};
    use crate::lattice::BilinearSpace;
    use crate::testutil::{calibrated_manifold, scenario_manifold};
    use proptest::prelude::*;

    fn lam(m: &ManifoldData) -> LatticeVector {
        m.ns().basis_vector(0).unwrap()
    }

    fn f(m: &ManifoldData) -> LatticeVector {
        m.ns().basis_vector(1).unwrap()
    }

    #[test]
    fn fujiki_top_self_intersections() {
        let m = scenario_manifold();
        let l = lam(&m);
        let ff = f(&m);
        // ∫λ⁴ = 3·q(λ)² = 12
        assert_eq!(fujiki4(&m, &l, &l, &l, &l).unwrap(), int(12));
        // isotropic: ∫f⁴ = 0
        assert_eq!(fujiki4(&m, &ff, &ff, &ff, &ff).unwrap(), int(0));
        // ∫f²λ² = 0 + 2·q(f,λ)² = 8
        assert_eq!(fujiki4(&m, &ff, &ff, &l, &l).unwrap(), int(8));
        // ∫fλ³ = 3·q(f,λ)q(λ,λ) = 12
        assert_eq!(fujiki4(&m, &ff, &l, &l, &l).unwrap(), int(12));
    }

    #[test]
    fn fujiki_rejects_non_fourfolds() {
        let ns = BilinearSpace::from_ints(&["x"], &[&[2]]).unwrap();
        let m = ManifoldData::new(DeformationType::K3n, 3, int(1), ns).unwrap();
        let v = m.ns().basis_vector(0).unwrap();
        assert!(matches!(
            fujiki4(&m, &v, &v, &v, &v),
            Err(Error::UnsupportedDimension { n: 3 })
        ));
    }

    #[test]
    fn q2_integrates_products_to_the_form() {
        let m = calibrated_manifold();
        let q2 = SHClass::q2(int(1), 2);
        let lf = SHClass::sym_product(&lam(&m), &f(&m)).unwrap();
        assert_eq!(integrate_product(&m, &q2, &lf).unwrap(), int(2));
    }

    #[test]
    fn q2_self_intersection_is_calibrated() {
        let m = calibrated_manifold();
        assert_eq!(m.q2_square().unwrap(), &ratio(23, 25));
        let q2 = SHClass::q2(int(1), 2);
        assert_eq!(integrate_product(&m, &q2, &q2).unwrap(), ratio(23, 25));
    }

    #[test]
    fn point_class_is_normalized() {
        let m = calibrated_manifold();
        let one = SHClass::unit(int(1), 2);
        let pt = SHClass::point(int(1), 2);
        assert_eq!(integrate_product(&m, &one, &pt).unwrap(), int(1));
        assert_eq!(mukai_pairing(&m, &pt, &one).unwrap(), int(1));
    }

    #[test]
    fn structure_sheaf_self_pairing_is_three() {
        let m = calibrated_manifold();
        let v = structure_sheaf_class(&m).unwrap();
        assert_eq!(v.deg4_q2, ratio(5, 4));
        assert_eq!(v.deg8_pt, ratio(25, 32));
        assert_eq!(mukai_pairing(&m, &v, &v).unwrap(), int(3));
    }

    #[test]
    fn solver_matches_hand_calibration() {
        // oracle: solve 2·(25/32) + (25/16)·K = 3 by hand
        let m = scenario_manifold();
        let by_hand = (int(3) - int(2) * ratio(25, 32)) / ratio(25, 16);
        assert_eq!(solve_q2_square(&m).unwrap(), by_hand);
        assert_eq!(by_hand, ratio(23, 25));
    }

    #[test]
    fn solver_on_hypothetical_r_x() {
        // r_X = 1/2, c_X = 1: solve 2·(1/8) + (1/4)·K = 3 → K = 11.
        assert_eq!(
            solve_q2_square_for(&int(1), &ratio(1, 2)).unwrap(),
            int(11)
        );
        // degenerate calibration when r_X = 0
        assert!(matches!(
            solve_q2_square_for(&int(1), &int(0)),
            Err(Error::Calibration(_))
        ));
        // the pairing-path solver agrees with the closed form
        let m = scenario_manifold();
        assert_eq!(
            solve_q2_square(&m).unwrap(),
            solve_q2_square_for(m.c_x(), m.r_x()).unwrap()
        );
    }

    #[test]
    fn bundle_self_pairing_is_27() {
        // v(F₀) = 5 - 15/4 q2 + 45/32 pt; independent oracle: the
        // alternating Ext-dimension sum 1 - 10 + 45 - 10 + 1 = 27.
        let m = calibrated_manifold();
        let mut v = SHClass::unit(int(5), 2);
        v.deg4_q2 = ratio(-15, 4);
        v.deg8_pt = ratio(45, 32);
        assert_eq!(mukai_pairing(&m, &v, &v).unwrap(), int(27));
    }

    prop_compose! {
        fn small_rational()(n in -8i64..=8, d in 1i64..=5) -> Rational {
            ratio(n, d)
        }
    }

    prop_compose! {
        fn h2_vector()(a in small_rational(), b in small_rational()) -> LatticeVector {
            LatticeVector::new(vec![a, b])
        }
    }

    prop_compose! {
        fn sh_class()(d0 in small_rational(), v2 in h2_vector(),
                      s in h2_vector(), t in h2_vector(),
                      q2 in small_rational(), v6 in h2_vector(),
                      pt in small_rational()) -> SHClass {
            let mut c = SHClass::sym_product(&s, &t).unwrap();
            c.deg0 = d0;
            c.deg2 = v2;
            c.deg4_q2 = q2;
            c.deg6_dual = v6;
            c.deg8_pt = pt;
            c
        }
    }

    proptest! {
        #[test]
        fn fujiki4_is_fully_symmetric(a in h2_vector(), b in h2_vector(), c in h2_vector(), d in h2_vector()) {
            let m = scenario_manifold();
            let base = fujiki4(&m, &a, &b, &c, &d).unwrap();
            prop_assert_eq!(&base, &fujiki4(&m, &b, &a, &c, &d).unwrap());
            prop_assert_eq!(&base, &fujiki4(&m, &c, &b, &a, &d).unwrap());
            prop_assert_eq!(&base, &fujiki4(&m, &d, &c, &b, &a).unwrap());
            prop_assert_eq!(&base, &fujiki4(&m, &a, &c, &b, &d).unwrap());
        }

        // the defining property of q₂ at i = 1, n = 2: ∫ q₂ ω² = q(ω, ω)
        #[test]
        fn q2_defining_property(w in h2_vector()) {
            let m = calibrated_manifold();
            let q2 = SHClass::q2(int(1), 2);
            let ww = SHClass::sym_square(&w);
            prop_assert_eq!(
                integrate_product(&m, &q2, &ww).unwrap(),
                m.ns().q(&w).unwrap()
            );
        }

        #[test]
        fn mukai_pairing_is_symmetric(v in sh_class(), w in sh_class()) {
            let m = calibrated_manifold();
            prop_assert_eq!(
                mukai_pairing(&m, &v, &w).unwrap(),
                mukai_pairing(&m, &w, &v).unwrap()
            );
        }

        // Euler pairing of a Mukai vector is twist-invariant
        #[test]
        fn euler_pairing_twist_invariance(a in small_rational(), mu in h2_vector(),
                                          b in small_rational(), l in h2_vector()) {
            prop_assume!(!a.is_zero());
            let m = calibrated_manifold();
            let v = ExtendedVector::new(a, mu, b);
            let tv = twist(&m, &v, &l).unwrap();
            prop_assert_eq!(
                euler_pairing_of_vector(&m, &v).unwrap(),
                euler_pairing_of_vector(&m, &tv).unwrap()
            );
        }
    }
}
