//! Reference actions used throughout the tests and the command-line fixtures.

use super::HopfAction;
use crate::hopf::{group_algebra, sweedler, FinHopfAlgebra, GroupTable};
use crate::scalar::Scalar;
use crate::vertexalg::{CommDiffVA, Monomial, Poly};

/// `ℤ/n` on `(ℚ(ζₙ)[x], x d/dx)` by `gᵏ · x = ζₙᵏ x`.
pub fn cyclic_on_euler(n: u32, cap: u32) -> HopfAction {
    let h = group_algebra(&GroupTable::cyclic(n as usize));
    let a = CommDiffVA::x_power_derivation(1, cap);
    let images = (0..n as i64).map(|k| vec![a.variable(0).scale(&Scalar::zeta_pow(n, k))]).collect();
    HopfAction::from_generator_images(h, a, images, true).expect("cyclic action")
}

/// `ℤ/2 × ℤ/2` on `(ℚ[x], x d/dx)` through the first factor; the second acts trivially.
pub fn klein_first_factor(cap: u32) -> HopfAction {
    let c2 = GroupTable::cyclic(2);
    let h = group_algebra(&c2.product(&c2));
    let a = CommDiffVA::x_power_derivation(1, cap);
    let images = (0..4).map(|i| vec![a.variable(0).scale(&Scalar::from_int(if i / 2 == 0 { 1 } else { -1 }))]).collect();
    HopfAction::from_generator_images(h, a, images, true).expect("klein action")
}

pub fn trivial(hopf: FinHopfAlgebra, backend: CommDiffVA) -> HopfAction {
    HopfAction::trivial(hopf, backend)
}

/// `ℚ[z]` with `∂ = z^m d/dz`.
pub fn z_backend(m: u32, cap: u32) -> CommDiffVA {
    CommDiffVA::new(vec!["z".into()], vec![Poly::term(Monomial(vec![m]), Scalar::one())], cap).expect("one variable")
}

/// Sweedler's algebra on `ℚ[z]` by `g · z = −z`, `x · z = 1`.
///
/// A module algebra for every `m`; the derivation never commutes with it.
pub fn sweedler_on_z(m: u32, cap: u32) -> HopfAction {
    let a = z_backend(m, cap);
    let z = a.variable(0);
    let one = a.one();
    let images = vec![vec![z.clone()], vec![z.scale(&-Scalar::one())], vec![one.clone()], vec![one]];
    HopfAction::from_generator_images(sweedler(), a, images, true).expect("sweedler action")
}

/// `S₃` permuting the variables of `ℚ[x1, x2, x3]` with the Euler derivation.
pub fn s3_permuting(cap: u32) -> HopfAction {
    let g = GroupTable::symmetric3();
    let a = CommDiffVA::euler(3, cap);
    let images = g
        .names()
        .iter()
        .map(|name| {
            name.trim_matches(|c| c == '[' || c == ']')
                .chars()
                .map(|c| a.variable(c.to_digit(10).expect("digit") as usize - 1))
                .collect()
        })
        .collect();
    HopfAction::from_generator_images(group_algebra(&g), a, images, true).expect("permutation action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{action_annihilator, fixed_subspace, is_inner_faithful};

    #[test]
    fn s3_invariants_are_symmetric_polynomials() {
        let act = s3_permuting(2);
        // symmetric polynomials have dimensions 1, 1, 2 in degrees 0..=2
        assert_eq!(fixed_subspace(&act).subspace.dim(), 4);
        // the sign representation first appears in degree 3
        assert_eq!(action_annihilator(&act).unwrap().kernel.dim(), 1);
        assert!(is_inner_faithful(&act).unwrap());
        assert!(action_annihilator(&s3_permuting(3)).unwrap().kernel.is_zero());
    }

    #[test]
    fn cyclic_actions_are_faithful_once_the_cap_is_large() {
        for n in 2..=4 {
            let act = cyclic_on_euler(n, n - 1);
            assert!(action_annihilator(&act).unwrap().kernel.is_zero(), "n = {n}");
            let small = cyclic_on_euler(n, n - 2);
            assert!(!action_annihilator(&small).unwrap().kernel.is_zero());
        }
    }
}
