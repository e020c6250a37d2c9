//! Acceptance suite: one test per criterion, every comparison exact
//! (rational arithmetic, tolerance zero). Each test prints a single
//! pass line on success; a failure panics with the offending values.

use std::cmp::Ordering;

use mukai_lattice::calculus::{
    bogomolov_ok, discriminant_coeff, euler_self, mukai_vector, psi_gamma2, r_x_lookup,
    t_alpha_gamma2, t_monomial, t_project_sym2,
};
use mukai_lattice::equivalences::{
    act_line, poincare_isometry, solve_poincare, verify_isometry,
};
use mukai_lattice::eps::EpsPolynomial;
use mukai_lattice::extended::{
    normalize_line, tilde_q, twist, DeformationType, ExtendedVector, ManifoldData, MukaiLine,
};
use mukai_lattice::lagrangian::{
    euler_from_dims, mixed_ext, reducible_ext, sym2_curve_betti, yoneda_form, BettiVector,
    GradedDims, LagrangianPair,
};
use mukai_lattice::lattice::{is_isometry, BilinearSpace, LatticeVector};
use mukai_lattice::ratio::{int, ratio, Rational};
use mukai_lattice::scenario::{run_og10_scenario, ScenarioConfig, StepStatus};
use mukai_lattice::sh::{mukai_pairing, solve_q2_square};
use mukai_lattice::stability::{
    compare_slopes, destabilizer_c1_verdict, divisor_square_div, slope_poly, DestabilizerVerdict,
    SheafNumerics,
};

fn manifold() -> ManifoldData {
    let ns = BilinearSpace::from_ints(&["lambda", "f"], &[&[2, 2], &[2, 0]]).unwrap();
    let m = ManifoldData::new(DeformationType::K3n, 2, int(1), ns).unwrap();
    let k = solve_q2_square(&m).unwrap();
    m.with_q2_square(k)
}

fn lam(m: &ManifoldData) -> LatticeVector {
    m.ns().basis_vector(0).unwrap()
}

fn f(m: &ManifoldData) -> LatticeVector {
    m.ns().basis_vector(1).unwrap()
}

fn ext(m: &ManifoldData, a: i64, l: i64, ff: i64, b: Rational) -> ExtendedVector {
    let mu = lam(m).scale(&int(l)).add(&f(m).scale(&int(ff))).unwrap();
    ExtendedVector::new(int(a), mu, b)
}

/// Deterministic pseudo-random rationals for the bulk exact suites.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Self(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn rational(&mut self) -> Rational {
        let n = (self.next_u64() % 19) as i64 - 9;
        let d = (self.next_u64() % 7) as i64 + 1;
        ratio(n, d)
    }

    fn h2(&mut self, m: &ManifoldData) -> LatticeVector {
        lam(m)
            .scale(&self.rational())
            .add(&f(m).scale(&self.rational()))
            .unwrap()
    }

    fn ranked(&mut self, m: &ManifoldData) -> ExtendedVector {
        loop {
            let a = self.rational();
            if a == int(0) {
                continue;
            }
            return ExtendedVector::new(a, self.h2(m), self.rational());
        }
    }
}

#[test]
fn criterion_01_mukai_vector_of_the_rank_five_bundle() {
    // pipeline step 5 produces exactly 5 - 15/4 q2 + 45/32 pt
    let report = run_og10_scenario(&ScenarioConfig::default()).unwrap();
    let step = report.steps.iter().find(|s| s.name == "mukai-vector").unwrap();
    assert_eq!(step.status, StepStatus::Pass);
    assert_eq!(step.value, "5 - 15/4 q2 + 45/32 pt");

    let m = manifold();
    let v0 = ext(&m, 5, 0, 0, ratio(-15, 4));
    let cls = mukai_vector(&m, &v0).unwrap();
    assert_eq!(cls.deg0, int(5));
    assert_eq!(cls.deg4_q2, ratio(-15, 4));
    assert_eq!(cls.deg8_pt, ratio(45, 32));
    assert!(cls.deg2.is_zero() && cls.deg6_dual.is_zero());
    println!("PASS criterion 1: v(F0) = 5 - 15/4 q2 + 45/32 pt exactly");
}

#[test]
fn criterion_02_normalized_extended_vector_and_twist() {
    let m = manifold();
    let phi = poincare_isometry(&m).unwrap();
    let union = MukaiLine::new(ext(&m, 0, 1, 1, int(-3))).unwrap();
    let image = act_line(&phi, &union).unwrap();
    let normalized = normalize_line(&image, &int(5)).unwrap();
    assert_eq!(normalized, ext(&m, 5, 0, 15, ratio(-15, 4)));
    let twisted = twist(&m, &normalized, &f(&m).scale(&int(-3))).unwrap();
    assert_eq!(twisted, ext(&m, 5, 0, 0, ratio(-15, 4)));
    assert_eq!(twisted, ExtendedVector::new(int(5), m.ns().zero_vector(), int(5) * ratio(-3, 4)));
    println!("PASS criterion 2: normalization 5α + 15f - 15/4 β and twist to 5(α - 3/4 β)");
}

#[test]
fn criterion_03_poincare_isometry_solved_and_verified() {
    let m = manifold();
    let sol = solve_poincare(&m).unwrap();
    let phi = &sol.isometry;

    // β ↦ f and f ↦ β
    let beta = ExtendedVector::beta(2);
    let f_ext = ExtendedVector::from_h2(f(&m));
    assert_eq!(phi.apply(&beta).unwrap(), f_ext);
    assert_eq!(phi.apply(&f_ext).unwrap(), beta);

    // exact q̃-isometry
    assert!(verify_isometry(&m, phi.matrix()).unwrap());

    // the line image is an assertion on the solved matrix, not an input:
    // the solver sees only β↦f, f↦β and the normalization datum.
    let union = MukaiLine::new(ext(&m, 0, 1, 1, int(-3))).unwrap();
    let expected = MukaiLine::new(ext(&m, -2, 0, -6, ratio(3, 2))).unwrap();
    assert_eq!(act_line(phi, &union).unwrap(), expected);
    println!("PASS criterion 3: solver-derived Φ is an exact isometry with the stated line image");
}

#[test]
fn criterion_04_euler_pairing_triple_agreement() {
    let m = manifold();
    assert_eq!(m.q2_square().unwrap(), &ratio(23, 25));

    let v0 = ext(&m, 5, 0, 0, ratio(-15, 4));
    let via_formula = euler_self(&m, &v0).unwrap();
    let cls = mukai_vector(&m, &v0).unwrap();
    let via_pairing = mukai_pairing(&m, &cls, &cls).unwrap();
    let via_dims = euler_from_dims(&GradedDims::new(vec![1, 10, 45, 10, 1]));
    assert_eq!(via_formula, int(27));
    assert_eq!(via_pairing, int(27));
    assert_eq!(via_dims, 27);
    println!("PASS criterion 4: χ = 27 on all three routes; q2_square = 23/25");
}

#[test]
fn criterion_05_structure_sheaf_calibration_table() {
    let cases: Vec<(DeformationType, u32)> = (2..=5)
        .map(|n| (DeformationType::K3n, n))
        .chain((2..=5).map(|n| (DeformationType::KumN, n)))
        .chain([(DeformationType::Og6, 3), (DeformationType::Og10, 5)])
        .collect();
    for (ty, n) in cases {
        let ns = BilinearSpace::from_ints(&["x"], &[&[2]]).unwrap();
        let m = ManifoldData::new(ty, n, int(1), ns).unwrap();
        assert_eq!(m.r_x(), &r_x_lookup(ty, n).unwrap());
        let o = ExtendedVector::structure_sheaf(&m);
        assert_eq!(
            euler_self(&m, &o).unwrap(),
            int(i64::from(n) + 1),
            "χ(O, O) for {ty:?} with n = {n}"
        );
    }
    println!("PASS criterion 5: χ(O,O) = n+1 for K3^[n], Kum_n (n = 2..5), OG6, OG10");
}

#[test]
fn criterion_06_discriminant_bogomolov_and_twist_invariance() {
    let m = manifold();
    let v0 = ext(&m, 5, 0, 0, ratio(-15, 4));
    assert_eq!(discriminant_coeff(&m, &v0).unwrap(), int(100));
    assert!(bogomolov_ok(&m, &v0).unwrap());
    let o = ExtendedVector::structure_sheaf(&m);
    assert_eq!(discriminant_coeff(&m, &o).unwrap(), int(0));

    let mut rng = Lcg::new(0x9e3779b97f4a7c15);
    for _ in 0..100 {
        let v = rng.ranked(&m);
        let l = rng.h2(&m);
        let tv = twist(&m, &v, &l).unwrap();
        assert_eq!(
            discriminant_coeff(&m, &v).unwrap(),
            discriminant_coeff(&m, &tv).unwrap()
        );
    }
    println!("PASS criterion 6: Δ(F0) = 100 ≥ 0, Δ(O) = 0, twist-invariant on 100 random pairs");
}

#[test]
fn criterion_07_ext_dimensions_and_yoneda_form() {
    let pair = LagrangianPair::scenario(5).unwrap();
    let dims = reducible_ext(&pair).unwrap();
    assert_eq!(dims.dims(), &[1, 10, 45, 10, 0]);
    assert_eq!(dims.get(1), 10, "Ext¹ is ten dimensional");

    let y = yoneda_form(5).unwrap();
    assert_eq!(y.ext1_dim, 10);
    assert_eq!(y.ext2_dim, 45);
    assert!(y.nondegenerate);
    println!("PASS criterion 7: Ext dims (1,10,45,10,0); yoneda_form(5) = (10, 45, nondegenerate)");
}

#[test]
fn criterion_08_euler_characteristics_of_the_construction() {
    let m = manifold();
    let chi_g = euler_from_dims(&mixed_ext(&BettiVector::p1()).unwrap());
    assert_eq!(chi_g, -2);
    let chi_o = euler_self(&m, &ExtendedVector::structure_sheaf(&m)).unwrap();
    assert_eq!(chi_o, int(3));
    assert_eq!(int(chi_g) + chi_o, int(1));
    println!("PASS criterion 8: χ(G) = -2 and χ(F'') = -2 + 3 = 1");
}

#[test]
fn criterion_09_slope_verdicts() {
    let m = manifold();
    let big = SheafNumerics::new(int(5), f(&m).scale(&int(15))).unwrap();
    let mu_big = slope_poly(&m, &big, &f(&m), &lam(&m)).unwrap();
    assert_eq!(mu_big, EpsPolynomial::from_terms(&[(2, int(72)), (3, int(36))]));

    let small = SheafNumerics::new(int(1), f(&m).scale(&int(2))).unwrap();
    let mu_small = slope_poly(&m, &small, &f(&m), &lam(&m)).unwrap();
    assert_eq!(mu_small, EpsPolynomial::from_terms(&[(2, int(48)), (3, int(24))]));
    assert_eq!(compare_slopes(&mu_big, &mu_small), Ordering::Greater);

    let mut rng = Lcg::new(0x2545f4914f6cdd1d);
    for _ in 0..100 {
        let b = rng.rational();
        let c = rng.rational();
        let verdict = destabilizer_c1_verdict(&m, &b, &c).unwrap();
        assert_eq!(
            verdict == DestabilizerVerdict::Consistent,
            c == int(0),
            "b = {b}, c = {c}"
        );
    }
    // and the stated spot checks
    assert_eq!(
        destabilizer_c1_verdict(&m, &int(3), &int(0)).unwrap(),
        DestabilizerVerdict::Consistent
    );
    assert_eq!(
        destabilizer_c1_verdict(&m, &int(0), &int(1)).unwrap(),
        DestabilizerVerdict::ViolatesFiberBound
    );
    assert_eq!(
        destabilizer_c1_verdict(&m, &int(0), &int(-1)).unwrap(),
        DestabilizerVerdict::ViolatesLimitBound
    );
    println!("PASS criterion 9: μ(F'') = 72eps² + 36eps³ > μ(O(2f)); consistent iff c = 0");
}

#[test]
fn criterion_10_property_suites() {
    let m = manifold();
    let mut rng = Lcg::new(0xda942042e4dd58b5);

    // T∘Ψ = id on squares, 200 random γ
    for _ in 0..200 {
        let g = rng.h2(&m);
        let q = m.ns().q(&g).unwrap();
        let lhs = t_alpha_gamma2(&m, &g)
            .unwrap()
            .add(&t_monomial(&m, 1).unwrap().scale(&q))
            .unwrap();
        assert_eq!(lhs, mukai_lattice::sh::SHClass::sym_square(&g));
        let via_projection = t_project_sym2(&m, &psi_gamma2(&m, &g).unwrap()).unwrap();
        assert_eq!(via_projection, mukai_lattice::sh::SHClass::sym_square(&g));
    }

    // twist is a q̃-isometry; χ and Δ are twist-invariant; exp(e_λ)
    // inverse law — 200 random cases
    for _ in 0..200 {
        let v = rng.ranked(&m);
        let w = rng.ranked(&m);
        let l = rng.h2(&m);
        let tv = twist(&m, &v, &l).unwrap();
        let tw = twist(&m, &w, &l).unwrap();
        assert_eq!(
            tilde_q(&m, &tv, &tw).unwrap(),
            tilde_q(&m, &v, &w).unwrap()
        );
        assert_eq!(twist(&m, &tv, &l.scale(&int(-1))).unwrap(), v);
        assert_eq!(euler_self(&m, &v).unwrap(), euler_self(&m, &tv).unwrap());
        assert_eq!(
            discriminant_coeff(&m, &v).unwrap(),
            discriminant_coeff(&m, &tv).unwrap()
        );
    }

    // the Mukai-flop map is an isometry
    let hilb = BilinearSpace::from_ints(&["h", "delta"], &[&[2, 0], &[0, -2]]).unwrap();
    let map = vec![vec![int(1), int(1)], vec![int(0), int(-1)]];
    assert!(is_isometry(&hilb, m.ns(), &map).unwrap());

    // Poincaré symmetry of the symmetric-square Betti numbers
    for g in 0..=20 {
        assert!(sym2_curve_betti(g).is_poincare_symmetric());
    }
    println!("PASS criterion 10: section property, twist isometry/invariance, inverse law, flop isometry, Betti symmetry");
}

#[test]
fn criterion_11_documented_polarization_discrepancy() {
    let m = manifold();
    let v = lam(&m).add(&f(&m).scale(&int(2))).unwrap();
    assert_eq!(divisor_square_div(&m, &v).unwrap(), (int(10), 2));

    // the report flags the mismatch with the quoted square 6 as an open
    // question; the run itself does not fail
    let report = run_og10_scenario(&ScenarioConfig::default()).unwrap();
    let step = report
        .steps
        .iter()
        .find(|s| s.name == "polarization-square-divisibility")
        .unwrap();
    assert_eq!(step.status, StepStatus::Pass);
    assert!(
        step.caveats.iter().any(|c| c.contains("6")),
        "caveat must mention the quoted square 6"
    );
    assert!(report.caveats.iter().any(|c| c.contains("polarization-square")));
    assert!(report.all_passed());
    println!("PASS criterion 11: (10, 2) computed; quoted square 6 flagged as open question");
}
