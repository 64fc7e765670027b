//! Hopf algebras acting on commutative differential vertex algebras.
//!
//! An action is stored as one matrix `ρ(b_i)` per Hopf basis element on the
//! monomial basis of `A_{≤D}`.

pub mod corpus;
mod theorems;

use serde::Serialize;
use thiserror::Error;

pub use theorems::{
    check_thm_group_algebra, check_thm_kernel_bialgebra_ideal, coproduct_flip_check, FlipCheck, Hypothesis,
    TheoremReport, Verdict,
};

use crate::hopf::{
    coideal_target, is_bialgebra_ideal, quotient_hopf, FinHopfAlgebra, HopfError, HopfQuotient,
};
use crate::linalg::{kernel_of_rows, Matrix, SparseRow, Subspace};
use crate::report::Check;
use crate::scalar::Scalar;
use crate::vertexalg::{multiplication_matrix, CommDiffVA, MonomialBasis, Poly, VaError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{0}")]
    Shape(String),
    #[error("action is not unital: ρ(1) ≠ Id")]
    NotUnital,
    #[error("action is not multiplicative at {0}")]
    NotMultiplicative(String),
    #[error("action raises degree: {0}")]
    FiltrationViolated(String),
    #[error("the filtration-compatibility flag is required")]
    FiltrationFlagRequired,
    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("tensor dimension {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Va(#[from] VaError),
}

#[derive(Clone, Debug)]
pub struct HopfAction {
    hopf: FinHopfAlgebra,
    backend: CommDiffVA,
    basis: MonomialBasis,
    matrices: Vec<Matrix>,
    filtration_compatible: bool,
}

fn raises_degree(m: &Matrix, basis: &MonomialBasis) -> Option<(usize, usize)> {
    (0..m.cols()).flat_map(|c| (0..m.rows()).map(move |r| (r, c))).find(|&(r, c)| {
        !m.get(r, c).is_zero() && basis.monomial(r).degree() > basis.monomial(c).degree()
    })
}

impl HopfAction {
    /// Builds from explicit matrices, checking that `ρ` is a unital algebra map
    /// and, when `filtration_compatible`, that no matrix raises degree.
    pub fn from_matrices(
        hopf: FinHopfAlgebra,
        backend: CommDiffVA,
        matrices: Vec<Matrix>,
        filtration_compatible: bool,
    ) -> Result<Self, ActionError> {
        let act = Self::from_matrices_unchecked(hopf, backend, matrices, filtration_compatible)?;
        act.check_algebra_map()?;
        if filtration_compatible {
            for (i, m) in act.matrices.iter().enumerate() {
                if let Some((r, c)) = raises_degree(m, &act.basis) {
                    return Err(ActionError::FiltrationViolated(format!(
                        "{} sends {} to a term in {}",
                        act.hopf.names()[i],
                        act.monomial_name(c),
                        act.monomial_name(r)
                    )));
                }
            }
        }
        Ok(act)
    }

    /// Builds from explicit matrices with only shape checks.
    pub fn from_matrices_unchecked(
        hopf: FinHopfAlgebra,
        backend: CommDiffVA,
        matrices: Vec<Matrix>,
        filtration_compatible: bool,
    ) -> Result<Self, ActionError> {
        let basis = backend.basis();
        let n = basis.len();
        if matrices.len() != hopf.dim() {
            return Err(ActionError::Shape(format!("{} matrices for dimension {}", matrices.len(), hopf.dim())));
        }
        if let Some(m) = matrices.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(ActionError::Shape(format!("matrix is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
        }
        Ok(HopfAction { hopf, backend, basis, matrices, filtration_compatible })
    }

    /// Extends images of the generators, `images[h][i] = b_h · vᵢ`, to all
    /// monomials by `h(fg) = Σ (h₁f)(h₂g)` and `h·1 = ε(h)1`.
    pub fn from_generator_images(
        hopf: FinHopfAlgebra,
        backend: CommDiffVA,
        images: Vec<Vec<Poly>>,
        filtration_compatible: bool,
    ) -> Result<Self, ActionError> {
        let d = hopf.dim();
        let r = backend.nvars();
        if images.len() != d || images.iter().any(|row| row.len() != r) {
            return Err(ActionError::Shape(format!("expected {d} rows of {r} generator images")));
        }
        let basis = backend.basis();
        let n = basis.len();
        let mut polys: Vec<Vec<Poly>> = vec![Vec::with_capacity(n); d];
        for j in 0..n {
            let m = basis.monomial(j);
            if m.degree() == 0 {
                for (h, row) in polys.iter_mut().enumerate() {
                    row.push(Poly::constant(r, hopf.counit()[h].clone()));
                }
                continue;
            }
            let var = m.0.iter().position(|&e| e > 0).expect("positive degree");
            let mut rest = m.clone();
            rest.0[var] -= 1;
            let jr = basis.index_of(&rest).expect("lower degree monomial is in the basis");
            for h in 0..d {
                let delta = hopf.coproduct(&hopf.basis(h));
                let mut acc = Poly::zero(r);
                for (t, c) in delta.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let (a, b) = (t / d, t % d);
                    acc = acc.add(&images[a][var].mul(&polys[b][jr]).scale(c));
                }
                polys[h].push(acc);
            }
        }
        let mut matrices = Vec::with_capacity(d);
        for (h, row) in polys.iter().enumerate() {
            let cols: Result<Vec<Vec<Scalar>>, ActionError> = row
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    basis.coordinates(p).ok_or_else(|| {
                        ActionError::FiltrationViolated(format!(
                            "{} · {} = {} leaves the cap",
                            hopf.names()[h],
                            basis.monomial(j).format(backend.names()),
                            backend.format(p)
                        ))
                    })
                })
                .collect();
            matrices.push(Matrix::from_columns(&cols?, n));
        }
        Self::from_matrices(hopf, backend, matrices, filtration_compatible)
    }

    /// `h · v = ε(h) v`.
    pub fn trivial(hopf: FinHopfAlgebra, backend: CommDiffVA) -> Self {
        let n = backend.basis().len();
        let matrices = hopf.counit().iter().map(|e| Matrix::identity(n).scale(e)).collect();
        Self::from_matrices(hopf, backend, matrices, true).expect("trivial action is an algebra map")
    }

    fn check_algebra_map(&self) -> Result<(), ActionError> {
        let n = self.basis.len();
        if self.rho(self.hopf.unit()) != Matrix::identity(n) {
            return Err(ActionError::NotUnital);
        }
        let d = self.hopf.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.rho(&self.hopf.product(&self.hopf.basis(i), &self.hopf.basis(j)));
                if lhs != self.matrices[i].mul(&self.matrices[j]) {
                    return Err(ActionError::NotMultiplicative(format!(
                        "({}, {})",
                        self.hopf.names()[i],
                        self.hopf.names()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn hopf(&self) -> &FinHopfAlgebra {
        &self.hopf
    }

    pub fn backend(&self) -> &CommDiffVA {
        &self.backend
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn is_filtration_compatible(&self) -> bool {
        self.filtration_compatible
    }

    pub fn conductor(&self) -> u32 {
        self.matrices.iter().map(Matrix::conductor).fold(self.hopf.conductor(), crate::scalar::lcm_conductor)
    }

    fn monomial_name(&self, j: usize) -> String {
        self.basis.monomial(j).format(self.backend.names())
    }

    /// `ρ(h) = Σ hᵢ ρ(bᵢ)`.
    pub fn rho(&self, h: &[Scalar]) -> Matrix {
        let n = self.basis.len();
        let mut out = Matrix::zeros(n, n);
        for (c, m) in h.iter().zip(&self.matrices) {
            out.add_scaled(c, m);
        }
        out
    }

    /// `b_h · p` for `p` inside the cap.
    pub fn act(&self, h: usize, p: &Poly) -> Option<Poly> {
        let v = self.basis.coordinates(p)?;
        Some(self.basis.poly(&self.matrices[h].apply(&v)))
    }

    /// Same Hopf algebra and backend with a replaced matrix, unchecked.
    pub fn with_matrix_unchecked(&self, h: usize, m: Matrix) -> Self {
        let mut out = self.clone();
        out.matrices[h] = m;
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleAlgebraReport {
    pub unit: Check,
    pub product: Check,
}

impl ModuleAlgebraReport {
    pub fn passed(&self) -> bool {
        self.unit.passed && self.product.passed
    }
}

/// Checks `h·1 = ε(h)1` and `h(uv) = Σ (h₁u)(h₂v)` on all monomial pairs within the cap.
pub fn verify_module_algebra(act: &HopfAction) -> ModuleAlgebraReport {
    let h = &act.hopf;
    let d = h.dim();
    let basis = &act.basis;
    let n = basis.len();
    let names = h.names();
    let one = basis.element(0);
    let unit = (0..d)
        .find(|&i| act.act(i, &one) != Some(one.scale(&h.counit()[i])))
        .map(|i| format!("{} · 1 ≠ ε({})1", names[i], names[i]));

    let images: Vec<Vec<Poly>> =
        (0..d).map(|i| (0..n).map(|j| basis.poly(&act.matrices[i].column(j))).collect()).collect();
    let deltas: Vec<Vec<Scalar>> = (0..d).map(|i| h.coproduct(&h.basis(i))).collect();
    let mut product = None;
    'search: for u in 0..n {
        for v in 0..n {
            let uv = basis.element(u).mul(&basis.element(v));
            let Some(w) = basis.index_of(uv.terms().next().expect("monomial").0) else {
                continue;
            };
            for i in 0..d {
                let lhs = &images[i][w];
                let mut rhs = Poly::zero(act.backend.nvars());
                for (t, c) in deltas[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    rhs = rhs.add(&images[t / d][u].mul(&images[t % d][v]).scale(c));
                }
                if *lhs != rhs {
                    product = Some(format!("({}, {}, {})", names[i], act.monomial_name(u), act.monomial_name(v)));
                    break 'search;
                }
            }
        }
    }
    ModuleAlgebraReport { unit: Check::from_witness(unit), product: Check::from_witness(product) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DCommutation {
    pub commutes: bool,
    /// Every failing `(h, monomial)` pair in basis order.
    pub witnesses: Vec<(String, String)>,
}

/// `[ρ(h), ∂] = 0` on `A_{≤D−max(w,0)}` for every Hopf basis element.
pub fn check_d_commute(act: &HopfAction) -> DCommutation {
    let a = &act.backend;
    let basis = &act.basis;
    let top = basis.cap() as i64 - a.weight().max(0) as i64;
    let mut witnesses = Vec::new();
    if top >= 0 {
        let domain = a.monomial_basis(top as u32);
        for i in 0..act.hopf.dim() {
            for j in 0..domain.len() {
                let u = domain.element(j);
                let du = a.derive(&u);
                let Some(lhs) = act.act(i, &du) else { continue };
                let hu = act.act(i, &u).expect("domain lies in the cap");
                if lhs != a.derive(&hu) {
                    witnesses.push((act.hopf.names()[i].clone(), act.monomial_name(j)));
                }
            }
        }
    }
    DCommutation { commutes: witnesses.is_empty(), witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleVertexAlgebraReport {
    pub module_algebra: ModuleAlgebraReport,
    pub d_commutation: DCommutation,
    /// `h(Y(u,z)v) = Σ Y(h₁u,z)h₂v` on the coefficients whose left side stays within the cap.
    pub vertex_identity: Check,
}

impl ModuleVertexAlgebraReport {
    pub fn passed(&self) -> bool {
        self.module_algebra.passed() && self.d_commutation.commutes && self.vertex_identity.passed
    }
}

pub fn verify_module_vertex_algebra(act: &HopfAction, order: usize) -> ModuleVertexAlgebraReport {
    let module_algebra = verify_module_algebra(act);
    let d_commutation = check_d_commute(act);
    let h = &act.hopf;
    let d = h.dim();
    let a = &act.backend;
    let basis = &act.basis;
    let n = basis.len();
    let images: Vec<Vec<Poly>> =
        (0..d).map(|i| (0..n).map(|j| basis.poly(&act.matrices[i].column(j))).collect()).collect();
    let deltas: Vec<Vec<Scalar>> = (0..d).map(|i| h.coproduct(&h.basis(i))).collect();
    let exps: Vec<Vec<Vec<Poly>>> =
        images.iter().map(|row| row.iter().map(|p| a.exp_coefficients(p, order)).collect()).collect();
    let mut witness = None;
    'search: for u in 0..n {
        let du = a.exp_coefficients(&basis.element(u), order);
        for v in 0..n {
            let bv = basis.element(v);
            for i in 0..d {
                for (k, duk) in du.iter().enumerate() {
                    let Some(lhs) = act.matrices[i].apply_poly(basis, &duk.mul(&bv)) else {
                        continue;
                    };
                    let mut rhs = Poly::zero(a.nvars());
                    for (t, c) in deltas[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        rhs = rhs.add(&exps[t / d][u][k].mul(&images[t % d][v]).scale(c));
                    }
                    if lhs != rhs {
                        witness = Some(format!(
                            "({}, {}, {}) at z^{k}",
                            h.names()[i],
                            act.monomial_name(u),
                            act.monomial_name(v)
                        ));
                        break 'search;
                    }
                }
            }
        }
    }
    ModuleVertexAlgebraReport { module_algebra, d_commutation, vertex_identity: Check::from_witness(witness) }
}

trait ApplyPoly {
    fn apply_poly(&self, basis: &MonomialBasis, p: &Poly) -> Option<Poly>;
}

impl ApplyPoly for Matrix {
    fn apply_poly(&self, basis: &MonomialBasis, p: &Poly) -> Option<Poly> {
        Some(basis.poly(&self.apply(&basis.coordinates(p)?)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub contains_one: Check,
    pub derivation_stable: Check,
    pub products_closed: Check,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    pub subspace: Subspace,
    pub closure: ClosureReport,
}

/// `V^H = {v : hv = ε(h)v}` within the cap, with vertex-subalgebra evidence.
pub fn fixed_subspace(act: &HopfAction) -> FixedPoints {
    let n = act.basis.len();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (i, m) in act.matrices.iter().enumerate() {
        let shifted = m.sub(&Matrix::identity(n).scale(&act.hopf.counit()[i]));
        rows.extend(shifted.to_sparse_rows());
    }
    let subspace = kernel_of_rows(n, rows);
    let basis = &act.basis;
    let a = &act.backend;
    let contains_one = if subspace.contains(&basis.coordinates(&a.one()).expect("1 is in the cap")) {
        Check::pass()
    } else {
        Check::fail("1 ∉ V^H")
    };
    let elements: Vec<Poly> = subspace.basis().iter().map(|v| basis.poly(v)).collect();
    let derivation_stable = Check::from_witness(elements.iter().find_map(|u| {
        let du = a.derive(u);
        match basis.coordinates(&du) {
            Some(c) if !subspace.contains(&c) => Some(format!("∂({}) ∉ V^H", a.format(u))),
            _ => None,
        }
    }));
    let mut products = None;
    'outer: for u in &elements {
        for (k, duk) in a.exp_coefficients(u, basis.cap() as usize).iter().enumerate() {
            for v in &elements {
                if let Some(c) = basis.coordinates(&duk.mul(v)) {
                    if !subspace.contains(&c) {
                        products = Some(format!("(∂^{k}{})({})/{k}! ∉ V^H", a.format(u), a.format(v)));
                        break 'outer;
                    }
                }
            }
        }
    }
    FixedPoints {
        subspace,
        closure: ClosureReport { contains_one, derivation_stable, products_closed: Check::from_witness(products) },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    pub kernel: Subspace,
    /// Whether the annihilator computed on `A_{≤D−1}` agrees; `None` at cap 0.
    pub agrees_with_lower_cap: Option<bool>,
}

fn annihilator_of(matrices: &[Matrix], size: usize) -> Subspace {
    let d = matrices.len();
    let mut rows: Vec<SparseRow> = Vec::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            let row: SparseRow = (0..d)
                .filter(|&i| !matrices[i].get(r, c).is_zero())
                .map(|i| (i, matrices[i].get(r, c).clone()))
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    kernel_of_rows(d, rows)
}

/// `K = {h : ρ(h) = 0 on A_{≤D}}`.
pub fn action_annihilator(act: &HopfAction) -> Result<Annihilator, ActionError> {
    if !act.filtration_compatible {
        return Err(ActionError::FiltrationFlagRequired);
    }
    let kernel = annihilator_of(&act.matrices, act.basis.len());
    let cap = act.basis.cap();
    let agrees_with_lower_cap = (cap > 0).then(|| {
        let lower = act.backend.monomial_basis(cap - 1).len();
        annihilator_of(&act.matrices, lower) == kernel
    });
    Ok(Annihilator { kernel, agrees_with_lower_cap })
}

/// Largest two-sided ideal of `H` inside `w`: `{x : a x b ∈ w for all basis a, b}`.
fn largest_ideal_inside(h: &FinHopfAlgebra, w: &Subspace) -> Subspace {
    let d = h.dim();
    let perp = w.annihilator();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..d {
        for b in 0..d {
            // matrix of x ↦ b_a x b_b
            let m = Matrix::from_columns(
                &(0..d)
                    .map(|x| h.product(&h.product(&h.basis(a), &h.basis(x)), &h.basis(b)))
                    .collect::<Vec<_>>(),
                d,
            );
            for f in perp.basis() {
                rows.push((0..d).map(|x| crate::hopf::dot(f, &m.column(x))).collect());
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(d);
    }
    Matrix::from_rows(rows).kernel()
}

/// The unique largest Hopf ideal contained in the two-sided ideal `k`.
pub fn maximal_hopf_ideal_in(h: &FinHopfAlgebra, k: &Subspace) -> Result<Subspace, ActionError> {
    let report = is_bialgebra_ideal(h, k);
    if let Some(w) = report.left_ideal.or(report.right_ideal) {
        return Err(ActionError::NotAnIdeal(w));
    }
    let d = h.dim();
    let mut current = k.clone();
    loop {
        if current.is_zero() {
            return Ok(current);
        }
        let basis = current.basis().to_vec();
        let t_perp = coideal_target(h, &current).annihilator();
        let i_perp = current.annihilator();
        let m = basis.len();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        rows.push(basis.iter().map(|v| h.counit_of(v)).collect());
        let deltas: Vec<Vec<Scalar>> = basis.iter().map(|v| h.coproduct(v)).collect();
        for f in t_perp.basis() {
            rows.push(deltas.iter().map(|dv| crate::hopf::dot(f, dv)).collect());
        }
        let antipodes: Vec<Vec<Scalar>> = basis.iter().map(|v| h.antipode_of(v)).collect();
        for f in i_perp.basis() {
            rows.push(antipodes.iter().map(|sv| crate::hopf::dot(f, sv)).collect());
        }
        let coeffs = Matrix::from_rows(rows).kernel();
        let shrunk = Subspace::span(
            d,
            coeffs.basis().iter().map(|c| {
                let mut x = vec![Scalar::zero(); d];
                for (ct, v) in c.iter().zip(&basis) {
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi += &(ct * vi);
                    }
                }
                x
            }),
        );
        let next = largest_ideal_inside(h, &shrunk);
        if next.dim() == m {
            return Ok(next);
        }
        current = next;
    }
}

/// The action is inner faithful iff no nonzero Hopf ideal annihilates `A_{≤D}`.
pub fn is_inner_faithful(act: &HopfAction) -> Result<bool, ActionError> {
    let k = action_annihilator(act)?;
    Ok(maximal_hopf_ideal_in(&act.hopf, &k.kernel)?.is_zero())
}

#[derive(Clone, Debug)]
pub struct InnerFaithfulQuotient {
    pub ideal: Subspace,
    pub quotient: HopfQuotient,
    pub action: HopfAction,
    pub fixed_before: Subspace,
    pub fixed_after: Subspace,
}

impl InnerFaithfulQuotient {
    pub fn fixed_points_preserved(&self) -> bool {
        self.fixed_before == self.fixed_after
    }
}

pub fn inner_faithful_quotient(act: &HopfAction) -> Result<InnerFaithfulQuotient, ActionError> {
    let k = action_annihilator(act)?;
    let ideal = maximal_hopf_ideal_in(&act.hopf, &k.kernel)?;
    let quotient = quotient_hopf(&act.hopf, &ideal)?;
    let matrices = quotient.representatives.iter().map(|&r| act.matrices[r].clone()).collect();
    let action =
        HopfAction::from_matrices(quotient.algebra.clone(), act.backend.clone(), matrices, act.filtration_compatible)?;
    let fixed_before = fixed_subspace(act).subspace;
    let fixed_after = fixed_subspace(&action).subspace;
    Ok(InnerFaithfulQuotient { ideal, quotient, action, fixed_before, fixed_after })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorFaithfulness {
    /// Entry `s − 1` is the annihilator dimension on `V^{⊗s}`.
    pub table: Vec<usize>,
    pub s0: Option<usize>,
    pub monotone: bool,
}

pub const DEFAULT_TENSOR_BUDGET: usize = 4096;

/// Annihilators of `H` on `V^{⊗s}`, `s = 1..=s_max`, acting through iterated coproducts.
pub fn tensor_power_faithfulness(
    act: &HopfAction,
    s_max: usize,
    budget: usize,
) -> Result<TensorFaithfulness, ActionError> {
    let h = &act.hopf;
    let d = h.dim();
    let n = act.basis.len();
    let needed = n.checked_pow(s_max as u32).unwrap_or(usize::MAX);
    if needed > budget {
        return Err(ActionError::BudgetExceeded { needed, budget });
    }
    let deltas: Vec<Vec<Scalar>> = (0..d).map(|i| h.coproduct(&h.basis(i))).collect();
    let mut current = act.matrices.clone();
    let mut table = Vec::with_capacity(s_max);
    let mut size = n;
    for s in 1..=s_max {
        if s > 1 {
            size *= n;
            current = (0..d)
                .map(|i| {
                    let mut m = Matrix::zeros(size, size);
                    for (t, c) in deltas[i].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        m.add_scaled(c, &act.matrices[t / d].kronecker(&current[t % d]));
                    }
                    m
                })
                .collect();
        }
        table.push(annihilator_of(&current, size).dim());
    }
    let s0 = table.iter().position(|&k| k == 0).map(|i| i + 1);
    let monotone = table.windows(2).all(|w| w[0] >= w[1]);
    Ok(TensorFaithfulness { table, s0, monotone })
}

/// `ρ(h) ∘ m_u = m_u ∘ ρ(h)` for all Hopf basis elements, where `m_u` is
/// multiplication by `u`, on the monomials whose product with `u` stays in the cap.
/// Assumes the action preserves the degree filtration.
pub fn multiplier_commutes(act: &HopfAction, u: &Poly) -> Check {
    let basis = &act.basis;
    let a = &act.backend;
    let Some(udeg) = u.degree() else { return Check::pass() };
    if udeg > basis.cap() {
        return Check::pass();
    }
    let domain = a.monomial_basis(basis.cap() - udeg);
    let m = multiplication_matrix(u, &domain, basis).expect("products stay within the cap");
    let restrict: Vec<usize> = (0..domain.len()).collect();
    for (i, r) in act.matrices.iter().enumerate() {
        let inner = r.submatrix(&restrict, &restrict);
        let lhs = r.mul(&m);
        let rhs = m.mul(&inner);
        if lhs != rhs {
            let bad = (0..domain.len()).find(|&j| lhs.column(j) != rhs.column(j)).unwrap_or(0);
            return Check::fail(format!(
                "{} ∘ ({}) ≠ ({}) ∘ {} on {}",
                act.hopf.names()[i],
                a.format(u),
                a.format(u),
                act.hopf.names()[i],
                domain.monomial(bad).format(a.names())
            ));
        }
    }
    Check::pass()
}
