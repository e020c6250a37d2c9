//! Ext-group dimension calculus for normal-crossing Lagrangian surfaces in
//! a hyper-Kähler fourfold.
//!
//! Everything here is topological bookkeeping: the two degenerate
//! specializations of the local-to-global / intersection spectral sequence
//! (curve-shifted and pure-surface), the long exact sequence of a
//! reducible Lagrangian with the connecting maps given as pushforward
//! ranks, transport along a P-twist, and the Yoneda wedge-square model.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ratio::{int, Rational};

/// Betti numbers b₀…b_top of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    dims: Vec<u64>,
}

impl BettiVector {
    pub fn new(dims: Vec<u64>) -> Self {
        Self { dims }
    }

    /// Betti vector of a curve (length 3).
    pub fn curve(b0: u64, b1: u64, b2: u64) -> Self {
        Self::new(vec![b0, b1, b2])
    }

    /// Betti vector of ℙ¹: (1, 0, 1).
    pub fn p1() -> Self {
        Self::curve(1, 0, 1)
    }

    /// Betti vector of a genus-g curve: (1, 2g, 1).
    pub fn genus_curve(g: u64) -> Self {
        Self::curve(1, 2 * g, 1)
    }

    /// The empty space: all Betti numbers zero.
    pub fn empty(len: usize) -> Self {
        Self::new(vec![0; len])
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn get(&self, k: isize) -> u64 {
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    /// b_k = b_{top−k}, the symmetry of a closed oriented manifold.
    pub fn is_poincare_symmetric(&self) -> bool {
        let n = self.dims.len();
        (0..n).all(|k| self.dims[k] == self.dims[n - 1 - k])
    }

    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Betti data of a reducible Lagrangian pair: the surface component Z₂,
/// the intersection curve W, and the ranks of the pushforward maps
/// H^k(W) → H^{k+2}(Z₂) for k = 0, 1, 2 (the connecting homomorphisms of
/// the long exact sequence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianPair {
    z2_betti: BettiVector,
    w_betti: BettiVector,
    push_ranks: [u64; 3],
}

impl LagrangianPair {
    pub fn new(z2_betti: BettiVector, w_betti: BettiVector, push_ranks: [u64; 3]) -> Result<Self> {
        if z2_betti.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "surface Betti vector must have length 5, got {}",
                z2_betti.len()
            )));
        }
        if w_betti.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "curve Betti vector must have length 3, got {}",
                w_betti.len()
            )));
        }
        for (k, &r) in push_ranks.iter().enumerate() {
            let bound = w_betti.get(k as isize).min(z2_betti.get(k as isize + 2));
            if r > bound {
                return Err(Error::InvalidInput(format!(
                    "push rank {r} in degree {k} exceeds min(b_{k}(W), b_{}(Z2)) = {bound}",
                    k + 2
                )));
            }
        }
        Ok(Self {
            z2_betti,
            w_betti,
            push_ranks,
        })
    }

    /// The genus-g scenario pair: Z₂ = Sym²C, W = ℙ¹, with the fundamental
    /// classes pushing forward injectively (ranks 1, 0, 1).
    pub fn scenario(g: u64) -> Result<Self> {
        Self::new(sym2_curve_betti(g), BettiVector::p1(), [1, 0, 1])
    }

    pub fn z2(&self) -> &BettiVector {
        &self.z2_betti
    }

    pub fn w(&self) -> &BettiVector {
        &self.w_betti
    }

    pub fn push_rank(&self, k: isize) -> u64 {
        if (0..3).contains(&k) {
            self.push_ranks[k as usize]
        } else {
            0
        }
    }
}

/// Graded dimensions Ext⁰…Ext⁴.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    dims: Vec<u64>,
}

impl GradedDims {
    pub fn new(dims: Vec<u64>) -> Self {
        Self { dims }
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn get(&self, k: usize) -> u64 {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let strs: Vec<String> = self.dims.iter().map(u64::to_string).collect();
        format!("({})", strs.join(", "))
    }
}

/// Betti vector (1, 2g, g(2g−1)+1, 2g, 1) of the symmetric square of a
/// genus-g curve: H²(Sym²C) = H²(C) ⊕ ∧²H¹(C), H¹(Sym²C) = H¹(C).
pub fn sym2_curve_betti(g: u64) -> BettiVector {
    let b1 = 2 * g;
    let middle = if g == 0 { 1 } else { g * (2 * g - 1) + 1 };
    BettiVector::new(vec![1, b1, middle, b1, 1])
}

/// Ext^k(O_{Z₁}, O_{Z₂}(−W)) ≅ H^{k−1}(W): the curve-shifted degenerate
/// case of the intersection spectral sequence.
pub fn mixed_ext(w: &BettiVector) -> Result<GradedDims> {
    if w.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "curve Betti vector must have length 3, got {}",
            w.len()
        )));
    }
    Ok(GradedDims::new(
        (0..5).map(|k| w.get(k as isize - 1)).collect(),
    ))
}

/// Ext^k(O_{Z₂}(−W), O_{Z₂}(−W)) ≅ H^k(Z₂): the pure-surface degenerate
/// case.
pub fn self_ext_surface(z2: &BettiVector) -> Result<GradedDims> {
    if z2.len() != 5 {
        return Err(Error::InvalidInput(format!(
            "surface Betti vector must have length 5, got {}",
            z2.len()
        )));
    }
    Ok(GradedDims::new(z2.dims().to_vec()))
}

/// Ext^k(O_{Z₂}(−W), O_Z) ≅ H^k(Z₂ − W) from the long exact sequence
/// H^k(Z₂) → H^k(Z₂−W) → H^{k−1}(W) → H^{k+1}(Z₂), with the connecting
/// maps given by the pair's pushforward ranks:
///
/// dims[k] = (b_k(Z₂) − rank_{k−2}) + (b_{k−1}(W) − rank_{k−1}).
pub fn reducible_ext(p: &LagrangianPair) -> Result<GradedDims> {
    let dims = (0..5i64)
        .map(|k| {
            let coker = p.z2().get(k as isize) - p.push_rank(k as isize - 2);
            let kernel = p.w().get(k as isize - 1) - p.push_rank(k as isize - 1);
            coker + kernel
        })
        .collect();
    Ok(GradedDims::new(dims))
}

/// Alternating sum Σ (−1)^k dims[k].
pub fn euler_from_dims(d: &GradedDims) -> i64 {
    d.dims()
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Symbolic three-term distinguished triangle record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub first: String,
    pub second: String,
    pub third: String,
}

impl Triangle {
    fn new(first: &str, second: &str, third: &str) -> Self {
        Self {
            first: first.into(),
            second: second.into(),
            third: third.into(),
        }
    }

    pub fn render(&self) -> String {
        format!("{} -> {} -> {}", self.first, self.second, self.third)
    }
}

/// Output of the P-twist transport under the standing assumption
/// Ext*(E, F) = ℂ[−1] ⊕ ℂ[−3].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtwistTransport {
    /// Ext^k(E, G): one dimension in degree 4, nothing else.
    pub ext_e_g: GradedDims,
    /// Degrees (with labels) in which the P-twist image has cohomology:
    /// H⁰ = G and H³ = E.
    pub cohomology: Vec<(u32, String)>,
    /// The two distinguished-triangle records:
    /// G → P_E(F) → E[−3] and E → P_E⁻¹(G) → F.
    pub triangles: Vec<Triangle>,
}

/// Transports Ext data along a P-twist. The input must be the standing
/// assumption Ext*(E, F) = ℂ[−1] ⊕ ℂ[−3], i.e. dimensions (0,1,0,1,0);
/// anything else is an assumption violation.
pub fn ptwist_transport(ext_e_f: &GradedDims) -> Result<PtwistTransport> {
    let expected = [0u64, 1, 0, 1, 0];
    if ext_e_f.dims() != expected {
        return Err(Error::Assumption(format!(
            "P-twist transport requires Ext*(E,F) dimensions (0, 1, 0, 1, 0), got {}",
            ext_e_f.render()
        )));
    }
    Ok(PtwistTransport {
        ext_e_g: GradedDims::new(vec![0, 0, 0, 0, 1]),
        cohomology: vec![(0, "G".into()), (3, "E".into())],
        triangles: vec![
            Triangle::new("G", "P_E(F)", "E[-3]"),
            Triangle::new("E", "P_E^{-1}(G)", "F"),
        ],
    })
}

/// The Yoneda pairing model on Ext¹ for the genus-g scenario:
/// Ext¹ has dimension 2g carrying the standard symplectic (cup-product)
/// form of H¹(C), and the wedge square Ext² has dimension g(2g−1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YonedaForm {
    pub ext1_dim: u64,
    pub ext2_dim: u64,
    gram: Matrix,
    pub nondegenerate: bool,
}

impl YonedaForm {
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Evaluates the skew pairing on two coordinate vectors.
    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Result<Rational> {
        let n = self.gram.len();
        if a.len() != n || b.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: if a.len() != n { a.len() } else { b.len() },
            });
        }
        let mut acc = int(0);
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[j].is_zero() {
                    acc += &a[i] * &self.gram[i][j] * &b[j];
                }
            }
        }
        Ok(acc)
    }
}

/// Builds the Yoneda form for genus g ≥ 1: the standard symplectic matrix
/// J = [[0, I],[−I, 0]] on 2g coordinates; nondegeneracy is established by
/// an exact rank computation.
pub fn yoneda_form(g: u64) -> Result<YonedaForm> {
    if g < 1 {
        return Err(Error::Precondition(format!(
            "the Yoneda form needs genus g >= 1, got {g}"
        )));
    }
    let n = (2 * g) as usize;
    let mut gram = vec![vec![int(0); n]; n];
    for i in 0..g as usize {
        gram[i][i + g as usize] = int(1);
        gram[i + g as usize][i] = int(-1);
    }
    let nondegenerate = matrix::rank(&gram) == n;
    Ok(YonedaForm {
        ext1_dim: 2 * g,
        ext2_dim: g * (2 * g - 1),
        gram,
        nondegenerate,
    })
}
