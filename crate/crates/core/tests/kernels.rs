use hopfva_core::linalg::{Matrix, RowReducer};
use hopfva_core::scalar::Scalar;
use hopfva_core::vertexalg::{
    embed_in_z2_domain, pi2_kernel, pin_injectivity_check, tensor_coordinates, z2_kernel, CommDiffVA,
};

fn remark_vector(a: &CommDiffVA) -> Vec<Scalar> {
    let basis = a.basis();
    let d = a.variable(0).sub(&a.variable(1));
    let l = tensor_coordinates(&basis, &[d.clone(), a.one()]).unwrap();
    let r = tensor_coordinates(&basis, &[a.one(), d]).unwrap();
    l.iter().zip(&r).map(|(x, y)| x - y).collect()
}

#[test]
fn x_power_derivations_are_injective_at_cap_six() {
    for m in 0..=3 {
        let a = CommDiffVA::x_power_derivation(m, 6);
        let r = pi2_kernel(&a, 6, None);
        assert_eq!(r.order, 49);
        assert!(r.kernel.is_zero(), "m = {m}");
        assert!(r.stabilized, "m = {m}");
    }
}

#[test]
fn euler_z2_is_injective() {
    let a = CommDiffVA::x_power_derivation(1, 4);
    let k = z2_kernel(&a, 4, 20, 2);
    assert_eq!(k.ambient(), 625);
    assert!(k.is_zero());
}

#[test]
fn diagonal_z2_contains_pi2_witness() {
    let a = CommDiffVA::diagonal_xy(1);
    let w = remark_vector(&a);
    let k = z2_kernel(&a, 1, 10, 2);
    assert!(k.contains(&embed_in_z2_domain(&w, 3, 2)));
}

#[test]
fn three_fold_checks() {
    let e = CommDiffVA::x_power_derivation(1, 3);
    assert!(pin_injectivity_check(&e, 3, 3, 12).unwrap().injective);
    let diag = CommDiffVA::diagonal_xy(1);
    let r = pin_injectivity_check(&diag, 3, 1, 6).unwrap();
    assert!(!r.injective);
    let w = remark_vector(&diag);
    let one = tensor_coordinates(&diag.basis(), &[diag.one()]).unwrap();
    let w3: Vec<Scalar> = w.iter().flat_map(|x| one.iter().map(move |y| x * y)).collect();
    assert!(r.kernel.contains(&w3));
}

/// Independent oracle: dense matrix of the stacked map, null space by plain
/// Gauss-Jordan over rationals.
fn brute_force_pi2_dim(a: &CommDiffVA, cap: u32, order: usize) -> usize {
    let basis = a.monomial_basis(cap);
    let n = basis.len();
    let big = a.monomial_basis(2 * cap + order as u32 * 2);
    let mut rows = Vec::new();
    for k in 0..=order {
        let m = Matrix::from_fn(big.len(), n * n, |r, c| {
            let f = a.derive_n(&basis.element(c / n), k).mul(&basis.element(c % n));
            f.coefficient(big.monomial(r))
        });
        rows.extend(m.row_vecs());
    }
    let mut red = RowReducer::new(n * n);
    red.extend(rows);
    n * n - red.rank()
}

#[test]
fn diagonal_kernel_dimensions_match_oracle() {
    for cap in [1u32, 2] {
        let a = CommDiffVA::diagonal_xy(cap);
        let order = 2 * cap as usize + 2;
        let r = pi2_kernel(&a, cap, Some(order));
        assert_eq!(r.kernel.dim(), brute_force_pi2_dim(&a, cap, order), "cap {cap}");
        assert!(r.kernel.contains(&remark_vector(&a)));
    }
}
