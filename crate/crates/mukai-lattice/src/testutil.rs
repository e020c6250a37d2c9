//! Shared fixtures for unit tests.

use crate::extended::{DeformationType, ManifoldData};
use crate::lattice::BilinearSpace;
use crate::ratio::int;

/// The moduli-space fourfold used throughout: K3^[2]-type, c_X = 1,
/// NS = ℤλ ⊕ ℤf with Gram [[2,2],[2,0]].
pub fn scenario_manifold() -> ManifoldData {
    let ns = BilinearSpace::from_ints(&["lambda", "f"], &[&[2, 2], &[2, 0]]).unwrap();
    ManifoldData::new(DeformationType::K3n, 2, int(1), ns).unwrap()
}

/// Same, with ∫𝔮₂² calibrated so that χ(O, O) = 3.
pub fn calibrated_manifold() -> ManifoldData {
    let m = scenario_manifold();
    let k = crate::sh::solve_q2_square(&m).unwrap();
    m.with_q2_square(k)
}
