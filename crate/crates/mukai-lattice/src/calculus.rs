//! Projection formulas from Sym²H̃ to the Verbitsky component and the
//! numerical functionals built from them: Mukai vectors of atomic objects,
//! discriminants, the Bogomolov-type inequality and the Euler-pairing
//! formula.
//!
//! The projection T : Symⁿ H̃ → SH(X) is the orthogonal section of the
//! embedding Ψ. Its values on the monomials that actually occur are:
//!
//! * T(α^(n−i)β^(i)) = c_X (n−i)! 𝔮_{2i}  for 1 ≤ i ≤ n,
//! * T(α^(n)) = n! 𝔮₀ (forced by T∘Ψ = id, since Ψ(1) = α^(n)/n!),
//! * T(α^(n−2) γ^(2)) = (n−2)! (γ² − c_X q(γ,γ) 𝔮₂),
//! * T(α^(n−1) μ) = (n−1)! μ,
//! * T(λβ) = λ∨.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::extended::{tilde_q, DeformationType, ExtendedVector, ManifoldData};
use crate::lattice::LatticeVector;
use crate::matrix::Matrix;
use crate::ratio::{factorial, int, pow_u, ratio, render, Rational};
use crate::sh::SHClass;

/// r_X for the known deformation types: (n+3)/4 for K3^[n] and OG10,
/// (n+1)/4 for Kum_n and OG6. The O'Grady types exist at one dimension
/// each (OG6: n = 3, OG10: n = 5).
pub fn r_x_lookup(ty: DeformationType, n: u32) -> Result<Rational> {
    let bad = |msg: String| Err(Error::InvalidInput(msg));
    match ty {
        DeformationType::K3n => {
            if n < 1 {
                return bad(format!("K3^[n] needs n >= 1, got {n}"));
            }
            Ok(ratio(i64::from(n) + 3, 4))
        }
        DeformationType::KumN => {
            if n < 2 {
                return bad(format!("Kum_n needs n >= 2, got {n}"));
            }
            Ok(ratio(i64::from(n) + 1, 4))
        }
        DeformationType::Og6 => {
            if n != 3 {
                return bad(format!("OG6 has n = 3, got {n}"));
            }
            Ok(int(1))
        }
        DeformationType::Og10 => {
            if n != 5 {
                return bad(format!("OG10 has n = 5, got {n}"));
            }
            Ok(int(2))
        }
    }
}

/// T(α^(n−i)β^(i)) for a fourfold, as a class in the SH model:
/// i = 0 ↦ 2·𝔮₀, i = 1 ↦ c_X 𝔮₂, i = 2 ↦ c_X 𝔭𝔱.
pub fn t_monomial(m: &ManifoldData, i: u32) -> Result<SHClass> {
    m.require_fourfold()?;
    let (coeff, index) = t_monomial_general(m, i)?;
    let dim = m.ns().dim();
    Ok(match index {
        0 => SHClass::unit(coeff, dim),
        2 => SHClass::q2(coeff, dim),
        4 => SHClass::point(coeff, dim),
        _ => unreachable!("fourfold monomials stop at q4"),
    })
}

/// General-n form of the same projection: the pair (coefficient, 2i) with
/// coefficient c_X (n−i)! for i ≥ 1 and n! for i = 0.
pub fn t_monomial_general(m: &ManifoldData, i: u32) -> Result<(Rational, u32)> {
    let n = m.n();
    if i > n {
        return Err(Error::Precondition(format!(
            "monomial index i = {i} out of range 0..={n}"
        )));
    }
    let coeff = if i == 0 {
        factorial(n)
    } else {
        m.c_x() * factorial(n - i)
    };
    Ok((coeff, 2 * i))
}

/// T(α^(n−2) γ^(2)) on a fourfold: γ² − c_X q(γ,γ) 𝔮₂.
pub fn t_alpha_gamma2(m: &ManifoldData, gamma: &LatticeVector) -> Result<SHClass> {
    m.require_fourfold()?;
    let mut out = SHClass::sym_square(gamma);
    out.deg4_q2 = -(m.c_x() * m.ns().q(gamma)?);
    Ok(out)
}

/// T(λβ) = λ∨, the degree-6 class with ∫ λ∨·μ = q(λ, μ).
pub fn t_lambda_beta(lam: &LatticeVector) -> SHClass {
    SHClass::dual(lam.clone())
}

/// A symmetric 2-tensor on the ordered H̃ basis (α, ns…, β); the element
/// it denotes is Σ S_ij e_i e_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sym2Ext {
    mat: Matrix,
}

impl Sym2Ext {
    pub fn zero(h2_dim: usize) -> Self {
        let d = h2_dim + 2;
        Self {
            mat: vec![vec![int(0); d]; d],
        }
    }

    /// The square v·v of an extended vector.
    pub fn square(v: &ExtendedVector) -> Self {
        let coords = v.to_coords();
        let d = coords.len();
        let mut mat = vec![vec![int(0); d]; d];
        for i in 0..d {
            for j in 0..d {
                mat[i][j] = &coords[i] * &coords[j];
            }
        }
        Self { mat }
    }

    pub fn h2_dim(&self) -> usize {
        self.mat.len() - 2
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().flatten().all(Zero::is_zero)
    }

    /// Coefficient of the symmetric product e_i e_j (i ≤ j): S_ij + S_ji
    /// off the diagonal, S_ii on it.
    pub fn product_coefficient(&self, i: usize, j: usize) -> Rational {
        if i == j {
            self.mat[i][i].clone()
        } else {
            &self.mat[i][j] + &self.mat[j][i]
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.mat.len() != other.mat.len() {
            return Err(Error::Arity {
                expected: self.mat.len(),
                found: other.mat.len(),
            });
        }
        let d = self.mat.len();
        let mut mat = vec![vec![int(0); d]; d];
        for i in 0..d {
            for j in 0..d {
                mat[i][j] = &self.mat[i][j] + &other.mat[i][j];
            }
        }
        Ok(Self { mat })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            mat: self
                .mat
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Adds c·(e_i e_j) to the tensor, splitting off-diagonal symmetrically.
    pub fn add_product(&mut self, i: usize, j: usize, c: &Rational) {
        if i == j {
            self.mat[i][i] += c;
        } else {
            let half = c * ratio(1, 2);
            self.mat[i][j] += &half;
            self.mat[j][i] += half;
        }
    }

    /// Renders using α, β and the space's labels, e.g. `λ·λ + 2 α·β`.
    pub fn render(&self, m: &ManifoldData) -> String {
        let dim = self.h2_dim();
        let name = |i: usize| -> String {
            if i == 0 {
                "α".into()
            } else if i == dim + 1 {
                "β".into()
            } else {
                m.ns().labels()[i - 1].clone()
            }
        };
        let mut out = String::new();
        for i in 0..dim + 2 {
            for j in i..dim + 2 {
                let c = self.product_coefficient(i, j);
                if !c.is_zero() {
                    crate::lattice::push_term(&mut out, &c, &format!("{}·{}", name(i), name(j)));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Ψ(γ²) on a fourfold: γ^(2) + q(γ,γ)·αβ in Sym²H̃.
pub fn psi_gamma2(m: &ManifoldData, gamma: &LatticeVector) -> Result<Sym2Ext> {
    m.require_fourfold()?;
    if gamma.dim() != m.ns().dim() {
        return Err(Error::Arity {
            expected: m.ns().dim(),
            found: gamma.dim(),
        });
    }
    let mut s = Sym2Ext::square(&ExtendedVector::from_h2(gamma.clone()));
    let q = m.ns().q(gamma)?;
    let beta_idx = m.ns().dim() + 1;
    s.add_product(0, beta_idx, &q);
    Ok(s)
}

/// The full projection T on Sym²H̃ for a fourfold, assembled from the
/// monomial images listed in the module docs.
pub fn t_project_sym2(m: &ManifoldData, s: &Sym2Ext) -> Result<SHClass> {
    m.require_fourfold()?;
    let dim = m.ns().dim();
    if s.h2_dim() != dim {
        return Err(Error::Arity {
            expected: dim,
            found: s.h2_dim(),
        });
    }
    let beta_idx = dim + 1;
    let mut out = SHClass::zero(dim);
    let gram = m.ns().gram();

    // α·α ↦ 2
    out.deg0 = int(2) * s.product_coefficient(0, 0);
    // β·β ↦ c_X 𝔭𝔱
    out.deg8_pt = m.c_x() * s.product_coefficient(beta_idx, beta_idx);
    // α·β ↦ c_X 𝔮₂
    out.deg4_q2 = m.c_x() * s.product_coefficient(0, beta_idx);

    for i in 0..dim {
        let ci = s.product_coefficient(0, i + 1);
        let di = s.product_coefficient(i + 1, beta_idx);
        // α·μ ↦ μ, μ·β ↦ μ∨
        out.deg2 = out
            .deg2
            .add(&m.ns().basis_vector(i)?.scale(&ci))?;
        out.deg6_dual = out
            .deg6_dual
            .add(&m.ns().basis_vector(i)?.scale(&di))?;
        // μ·ν ↦ μν − c_X q(μ,ν) 𝔮₂
        for j in 0..dim {
            let sij = &s.mat[i + 1][j + 1];
            if sij.is_zero() {
                continue;
            }
            out.deg4_sym[i][j] += sij;
            out.deg4_q2 -= m.c_x() * sij * &gram[i][j];
        }
    }
    Ok(out)
}

fn require_rank(v: &ExtendedVector) -> Result<()> {
    if v.a().is_zero() {
        return Err(Error::NotNormalizable(
            "the extended vector has rank zero".into(),
        ));
    }
    Ok(())
}

/// Mukai vector of an atomic object with extended vector rα + λ + sβ on a
/// fourfold:
///
/// v = r + λ + (1/2r)(λ² − c_X q̃(ṽ,ṽ) 𝔮₂) + (s/r) λ∨ + c_X (s²/2r) 𝔭𝔱.
pub fn mukai_vector(m: &ManifoldData, v: &ExtendedVector) -> Result<SHClass> {
    m.require_fourfold()?;
    require_rank(v)?;
    let (r, lam, s) = (v.a(), v.mu(), v.b());
    let q_tilde = tilde_q(m, v, v)?;
    let inv_2r = int(1) / (int(2) * r);

    let mut out = SHClass::sym_square(lam).scale(&inv_2r);
    out.deg0 = r.clone();
    out.deg2 = lam.clone();
    out.deg4_q2 += -(m.c_x() * &q_tilde) * &inv_2r;
    out.deg6_dual = lam.scale(&(s / r));
    out.deg8_pt = m.c_x() * s * s * &inv_2r;
    Ok(out)
}

/// The 𝔮₂-coefficient of the SH-projected discriminant of an atomic sheaf:
/// Δ_SH = c_X (q̃(ṽ, ṽ) + 2 r_X r²) 𝔮₂.
pub fn discriminant_coeff(m: &ManifoldData, v: &ExtendedVector) -> Result<Rational> {
    require_rank(v)?;
    let q_tilde = tilde_q(m, v, v)?;
    let r2 = v.a() * v.a();
    Ok(m.c_x() * (q_tilde + int(2) * m.r_x() * r2))
}

/// Bogomolov-type inequality for stable atomic sheaves:
/// q̃(ṽ, ṽ) + 2 r_X r² ≥ 0, i.e. the discriminant coefficient is
/// non-negative.
pub fn bogomolov_ok(m: &ManifoldData, v: &ExtendedVector) -> Result<bool> {
    Ok(discriminant_coeff(m, v)? >= int(0))
}

/// Euler pairing of an atomic object with itself (any n):
/// χ(E, E) = (−1)ⁿ (n+1) r² (q̃(ṽ, ṽ) / (2 r_X r²))ⁿ.
pub fn euler_self(m: &ManifoldData, v: &ExtendedVector) -> Result<Rational> {
    require_rank(v)?;
    if m.r_x().is_zero() {
        return Err(Error::Precondition("r_X must be nonzero".into()));
    }
    let n = m.n();
    let r2 = v.a() * v.a();
    let q_tilde = tilde_q(m, v, v)?;
    let base = q_tilde / (int(2) * m.r_x() * &r2);
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    Ok(sign * int(i64::from(n) + 1) * r2 * pow_u(&base, n))
}

/// Human-readable value of the discriminant as a q₂-multiple.
pub fn render_discriminant(c: &Rational) -> String {
    format!("{} q2", render(c))
}
