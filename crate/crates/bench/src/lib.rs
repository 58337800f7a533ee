//! Shared inputs for the criterion benchmarks in `benches/`.

use torelli_core::arithmetic_groups::{ArithmeticGroup, GammaType};
use torelli_core::invariants::GradedVCopies;

/// `(group, copies, degree)` realizing `V^{(x) k}` for the given group.
pub fn tensor_power_case(
    kind: GammaType,
    g: usize,
    k: u32,
) -> (ArithmeticGroup, GradedVCopies, u32) {
    let group = ArithmeticGroup::new(kind, g).expect("g >= 1");
    let (copies, d) = GradedVCopies::tensor_power(g, k).expect("k in range");
    (group, copies, d)
}
