//! Commutative vertex algebras `Y(a, z)b = (e^{z∂}a)b` on polynomial rings
//! with a derivation, truncated by total degree.

mod poly;

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use poly::{Monomial, MonomialBasis, Poly};

use crate::linalg::{kernel_of_rows, Matrix, RowReducer, SparseRow, Subspace};
use crate::report::Check;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VaError {
    #[error("degree {degree} exceeds the cap {cap}")]
    TruncationOverflow { degree: u32, cap: u32 },
    #[error("{0}")]
    Arity(String),
    #[error("malformed exponent pairs: {0}")]
    MalformedPairs(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn inv_factorial(k: usize) -> Scalar {
    let f: BigInt = (1..=k as u64).map(BigInt::from).product();
    Scalar::from_rational(Rational::new(BigInt::from(1), f))
}

/// A polynomial ring with a derivation given on its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommDiffVA {
    names: Vec<String>,
    derivation: Vec<Poly>,
    cap: u32,
    overrides: BTreeMap<Monomial, Poly>,
}

impl CommDiffVA {
    pub fn new(names: Vec<String>, derivation: Vec<Poly>, cap: u32) -> Result<Self, VaError> {
        if names.len() != derivation.len() {
            return Err(VaError::Arity(format!(
                "{} variables but {} derivation images",
                names.len(),
                derivation.len()
            )));
        }
        if let Some(p) = derivation.iter().find(|p| p.nvars() != names.len()) {
            return Err(VaError::Arity(format!("derivation image in {} variables", p.nvars())));
        }
        Ok(CommDiffVA { names, derivation, cap, overrides: BTreeMap::new() })
    }

    /// `ℚ[x]` with `∂ = x^m d/dx`.
    pub fn x_power_derivation(m: u32, cap: u32) -> Self {
        let image = Poly::term(Monomial(vec![m]), Scalar::one());
        Self::new(vec!["x".into()], vec![image], cap).expect("one variable")
    }

    /// `ℚ[x]` with the zero derivation.
    pub fn zero_derivation(cap: u32) -> Self {
        Self::new(vec!["x".into()], vec![Poly::zero(1)], cap).expect("one variable")
    }

    /// `ℚ[x, y]` with `∂x = ∂y = 1`.
    pub fn diagonal_xy(cap: u32) -> Self {
        Self::new(vec!["x".into(), "y".into()], vec![Poly::one(2), Poly::one(2)], cap).expect("two variables")
    }

    /// The Euler derivation `Σ xᵢ ∂/∂xᵢ` on `n` variables `x1..xn`.
    pub fn euler(n: usize, cap: u32) -> Self {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        let images = (0..n).map(|i| Poly::var(n, i)).collect();
        Self::new(names, images, cap).expect("matching arity")
    }

    /// Replaces `∂(m)` by `image`, breaking the Leibniz rule on purpose.
    pub fn with_corrupted_derivative(mut self, m: Monomial, image: Poly) -> Self {
        self.overrides.insert(m, image);
        self
    }

    pub fn with_cap(&self, cap: u32) -> Self {
        CommDiffVA { cap, ..self.clone() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn derivation_images(&self) -> &[Poly] {
        &self.derivation
    }

    pub fn is_corrupted(&self) -> bool {
        !self.overrides.is_empty()
    }

    /// Largest value of `deg ∂(vᵢ) − 1`; `−1` when ∂ vanishes on all generators.
    pub fn weight(&self) -> i32 {
        self.derivation.iter().filter_map(Poly::degree).map(|d| d as i32 - 1).max().unwrap_or(-1)
    }

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.nvars(), self.cap)
    }

    pub fn monomial_basis(&self, cap: u32) -> MonomialBasis {
        MonomialBasis::new(self.nvars(), cap)
    }

    pub fn variable(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format(&self.names)
    }

    fn derive_monomial(&self, m: &Monomial) -> Poly {
        if let Some(p) = self.overrides.get(m) {
            return p.clone();
        }
        let n = self.nvars();
        let mut out = Poly::zero(n);
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 || self.derivation[i].is_zero() {
                continue;
            }
            let mut rest = m.clone();
            rest.0[i] -= 1;
            let part = Poly::term(rest, Scalar::from_int(e as i64)).mul(&self.derivation[i]);
            out = out.add(&part);
        }
        out
    }

    /// `∂f` without any degree cap.
    pub fn derive(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (m, c) in f.terms() {
            for (m2, c2) in self.derive_monomial(m).terms() {
                out.add_term(m2.clone(), c * c2);
            }
        }
        out
    }

    pub fn derive_n(&self, f: &Poly, k: usize) -> Poly {
        (0..k).fold(f.clone(), |acc, _| self.derive(&acc))
    }

    fn check_cap(&self, p: &Poly) -> Result<(), VaError> {
        match p.degree() {
            Some(d) if d > self.cap => Err(VaError::TruncationOverflow { degree: d, cap: self.cap }),
            _ => Ok(()),
        }
    }

    /// `∂ᵏf`, refusing any intermediate result beyond the cap.
    pub fn apply_derivation(&self, f: &Poly, k: usize) -> Result<Poly, VaError> {
        self.check_cap(f)?;
        let mut acc = f.clone();
        for _ in 0..k {
            acc = self.derive(&acc);
            self.check_cap(&acc)?;
        }
        Ok(acc)
    }

    /// `c_0..c_K` with `Y(a, z)b = Σ c_k z^k`, i.e. `c_k = (∂ᵏa)b / k!`.
    pub fn vertex_coefficients(&self, a: &Poly, b: &Poly, order: usize) -> Result<Vec<Poly>, VaError> {
        self.check_cap(b)?;
        let mut out = Vec::with_capacity(order + 1);
        let mut da = a.clone();
        self.check_cap(&da)?;
        for k in 0..=order {
            if k > 0 {
                da = self.derive(&da);
                self.check_cap(&da)?;
            }
            let c = da.mul(b).scale(&inv_factorial(k));
            self.check_cap(&c)?;
            out.push(c);
        }
        Ok(out)
    }

    /// `∂ᵏf / k!` for `k = 0..=order`, uncapped.
    pub fn exp_coefficients(&self, f: &Poly, order: usize) -> Vec<Poly> {
        let mut out = Vec::with_capacity(order + 1);
        let mut d = f.clone();
        for k in 0..=order {
            if k > 0 {
                d = self.derive(&d);
            }
            out.push(d.scale(&inv_factorial(k)));
        }
        out
    }

    /// Matrix of ∂ from `A_{≤from_cap}` into the coordinates of `to`, if it fits.
    pub fn derivation_matrix(&self, from: &MonomialBasis, to: &MonomialBasis) -> Option<Matrix> {
        let cols: Option<Vec<Vec<Scalar>>> =
            (0..from.len()).map(|i| to.coordinates(&self.derive(&from.element(i)))).collect();
        Some(Matrix::from_columns(&cols?, to.len()))
    }
}

/// Multiplication by `p` from `from` into `to`; `None` if some product leaves `to`.
pub fn multiplication_matrix(p: &Poly, from: &MonomialBasis, to: &MonomialBasis) -> Option<Matrix> {
    let cols: Option<Vec<Vec<Scalar>>> = (0..from.len()).map(|i| to.coordinates(&p.mul(&from.element(i)))).collect();
    Some(Matrix::from_columns(&cols?, to.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VaAxiomReport {
    pub vacuum: Check,
    pub creation: Check,
    pub translation_is_derivation: Check,
    pub skew_symmetry: Check,
    pub commutativity: Check,
}

impl VaAxiomReport {
    pub fn passed(&self) -> bool {
        [&self.vacuum, &self.creation, &self.translation_is_derivation, &self.skew_symmetry, &self.commutativity]
            .iter()
            .all(|c| c.passed)
    }
}

/// Coefficients of `e^{z∂}` applied to a z-series `Σ s_k z^k`, to order `order`.
fn exp_of_series(a: &CommDiffVA, series: &[Poly], order: usize, sign: i64) -> Vec<Poly> {
    let n = a.nvars();
    let mut out = vec![Poly::zero(n); order + 1];
    for (j, s) in series.iter().enumerate().take(order + 1) {
        let ex = a.exp_coefficients(s, order - j);
        for (i, e) in ex.into_iter().enumerate() {
            let e = if sign < 0 && i % 2 == 1 { e.scale(&Scalar::from_int(-1)) } else { e };
            out[i + j] = out[i + j].add(&e);
        }
    }
    out
}

pub fn verify_comm_va_axioms(a: &CommDiffVA, samples: &[Poly], order: usize) -> Result<VaAxiomReport, VaError> {
    for s in samples {
        a.check_cap(s)?;
    }
    let fmt = |p: &Poly| a.format(p);
    let one = a.one();
    let y = |u: &Poly, v: &Poly| -> Vec<Poly> { a.exp_coefficients(u, order).iter().map(|c| c.mul(v)).collect() };

    let mut vacuum = None;
    let mut creation = None;
    let mut translation = None;
    for u in samples {
        let c = y(&one, u);
        if vacuum.is_none() && (c[0] != *u || c[1..].iter().any(|p| !p.is_zero())) {
            vacuum = Some(format!("Y(1,z){} ≠ {}", fmt(u), fmt(u)));
        }
        let c = y(u, &one);
        if creation.is_none() && c != a.exp_coefficients(u, order) {
            creation = Some(format!("Y({},z)1 ≠ e^(z∂){}", fmt(u), fmt(u)));
        }
        if translation.is_none() && order >= 1 && c[1] != a.derive(u) {
            translation = Some(format!("{}_(-2)1 ≠ ∂{}", fmt(u), fmt(u)));
        }
    }

    let mut skew = None;
    let mut comm = None;
    'pairs: for u in samples {
        for v in samples {
            if skew.is_none() {
                let lhs = y(u, v);
                let rhs = exp_of_series(a, &y(v, u).iter().enumerate().map(|(k, p)| {
                    if k % 2 == 1 { p.scale(&Scalar::from_int(-1)) } else { p.clone() }
                }).collect::<Vec<_>>(), order, 1);
                if let Some(k) = (0..=order).find(|&k| lhs[k] != rhs[k]) {
                    skew = Some(format!("({}, {}) at z^{k}", fmt(u), fmt(v)));
                }
            }
            if comm.is_none() {
                for w in samples {
                    // coefficient (i, j) of Y(u,z1)Y(v,z2)w against Y(v,z2)Y(u,z1)w
                    let inner_vw = y(v, w);
                    let inner_uw = y(u, w);
                    let eu = a.exp_coefficients(u, order);
                    let ev = a.exp_coefficients(v, order);
                    let bad = (0..=order).cartesian_product(0..=order).find(|&(i, j)| {
                        eu[i].mul(&inner_vw[j]) != ev[j].mul(&inner_uw[i])
                    });
                    if let Some((i, j)) = bad {
                        comm = Some(format!("({}, {}, {}) at z1^{i} z2^{j}", fmt(u), fmt(v), fmt(w)));
                        break;
                    }
                }
            }
            if skew.is_some() && comm.is_some() {
                break 'pairs;
            }
        }
    }
    Ok(VaAxiomReport {
        vacuum: Check::from_witness(vacuum),
        creation: Check::from_witness(creation),
        translation_is_derivation: Check::from_witness(translation),
        skew_symmetry: Check::from_witness(skew),
        commutativity: Check::from_witness(comm),
    })
}

/// Outcome of a stacked kernel computation over orders `k = 0..=K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelChain {
    pub kernel: Subspace,
    /// Kernel dimension after imposing orders `0..=k`, for each `k ≤ K`.
    pub chain: Vec<usize>,
    /// The last two entries of the chain agree, or the chain provably stays constant.
    pub stabilized: bool,
    pub order: usize,
    pub cap: u32,
}

/// Default order bound `(dim A_{≤D})²`.
pub fn default_order(a: &CommDiffVA, cap: u32) -> usize {
    let n = a.monomial_basis(cap).len();
    n * n
}

/// Kernel of `f ⊗ g ↦ ((∂ᵏf)g)_{k ≤ K}` on `A_{≤D} ⊗ A_{≤D}`.
pub fn pi2_kernel(a: &CommDiffVA, cap: u32, order: Option<usize>) -> KernelChain {
    let order = order.unwrap_or_else(|| default_order(a, cap));
    let basis = a.monomial_basis(cap);
    let n = basis.len();
    let ncols = n * n;
    let mut reducer = RowReducer::new(ncols);
    let mut derivs: Vec<Poly> = (0..n).map(|i| basis.element(i)).collect();
    let mut chain = Vec::with_capacity(order + 1);
    let mut proven_constant = false;
    for k in 0..=order {
        if k > 0 {
            derivs = derivs.iter().map(|p| a.derive(p)).collect();
        }
        let vanished = k > 0 && derivs.iter().all(Poly::is_zero);
        if !vanished {
            let mut rows: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
            for (i, di) in derivs.iter().enumerate() {
                for j in 0..n {
                    for (m, c) in di.mul(&basis.element(j)).terms() {
                        rows.entry(m.clone()).or_insert_with(|| vec![Scalar::zero(); ncols])[i * n + j] = c.clone();
                    }
                }
            }
            reducer.extend(rows.into_values());
        }
        chain.push(ncols - reducer.rank());
        if reducer.is_full() || vanished {
            proven_constant = true;
            chain.resize(order + 1, ncols - reducer.rank());
            break;
        }
    }
    let stabilized = proven_constant || (order >= 1 && chain[order] == chain[order - 1]);
    KernelChain { kernel: Subspace::span(ncols, reducer.kernel_basis()), chain, stabilized, order, cap }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinCheck {
    pub n: usize,
    pub injective: bool,
    pub kernel: Subspace,
    pub witness: Option<String>,
}

fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).map(|_| 0..len).multi_cartesian_product()
}

/// Kernel of the `n`-fold map `f₁⊗…⊗fₙ ↦ (∂^{k₁}f₁)⋯(∂^{k_{n−1}}f_{n−1})fₙ`, all `kᵢ ≤ K`.
pub fn pin_injectivity_check(a: &CommDiffVA, n: usize, cap: u32, order: usize) -> Result<PinCheck, VaError> {
    if n < 2 {
        return Err(VaError::InvalidArgument(format!("n = {n}, need n ≥ 2")));
    }
    let basis = a.monomial_basis(cap);
    let dim = basis.len();
    let derivs: Vec<Vec<Poly>> = (0..dim)
        .map(|i| {
            let mut v = vec![basis.element(i)];
            for _ in 0..order {
                let next = a.derive(v.last().unwrap());
                v.push(next);
            }
            v
        })
        .collect();
    let cols: Vec<Vec<usize>> = tuples(n, dim).collect();
    let mut rows: Vec<SparseRow> = Vec::new();
    for ks in tuples(n - 1, order + 1) {
        let mut block: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
        for (c, idx) in cols.iter().enumerate() {
            let mut p = basis.element(idx[n - 1]);
            for t in 0..n - 1 {
                p = p.mul(&derivs[idx[t]][ks[t]]);
                if p.is_zero() {
                    break;
                }
            }
            for (m, v) in p.terms() {
                block.entry(m.clone()).or_default().push((c, v.clone()));
            }
        }
        rows.extend(block.into_values());
    }
    let kernel = kernel_of_rows(cols.len(), rows);
    let witness = kernel.basis().first().map(|v| format_tensor(a, &basis, v, n));
    Ok(PinCheck { n, injective: kernel.is_zero(), kernel, witness })
}

/// Domain index of `b_i ⊗ b_j ⊗ z₁^p z₂^q` in `A_{≤D} ⊗ A_{≤D} ⊗ F_B`.
pub fn z2_index(dim: usize, bound: i64, i: usize, j: usize, p: i64, q: i64) -> usize {
    let side = (2 * bound + 1) as usize;
    let f = ((p + bound) as usize) * side + (q + bound) as usize;
    (i * dim + j) * side * side + f
}

/// Kernel of `u ⊗ v ⊗ z₁^a z₂^b ↦ z₁^a z₂^b (e^{z₁∂}u)(e^{z₂∂}v)` truncated to total order `K`,
/// with `|a|, |b| ≤ B`.
pub fn z2_kernel(a: &CommDiffVA, cap: u32, order: usize, bound: u32) -> Subspace {
    let basis = a.monomial_basis(cap);
    let dim = basis.len();
    let b = bound as i64;
    let exps: Vec<Vec<Poly>> = (0..dim).map(|i| a.exp_coefficients(&basis.element(i), order)).collect();
    let ncols = z2_index(dim, b, dim - 1, dim - 1, b, b) + 1;
    let mut rows: BTreeMap<(i64, i64, Monomial), SparseRow> = BTreeMap::new();
    for i in 0..dim {
        for j in 0..dim {
            for p in 0..=order {
                for q in 0..=order - p {
                    let prod = exps[i][p].mul(&exps[j][q]);
                    if prod.is_zero() {
                        continue;
                    }
                    for za in -b..=b {
                        for zb in -b..=b {
                            let col = z2_index(dim, b, i, j, za, zb);
                            for (m, c) in prod.terms() {
                                rows.entry((za + p as i64, zb + q as i64, m.clone()))
                                    .or_default()
                                    .push((col, c.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    kernel_of_rows(ncols, rows.into_values().collect())
}

/// The image of `Σ c_{ij} b_i ⊗ b_j` under `w ↦ w ⊗ 1` in the Z₂ domain.
pub fn embed_in_z2_domain(v: &[Scalar], dim: usize, bound: u32) -> Vec<Scalar> {
    let b = bound as i64;
    let mut out = vec![Scalar::zero(); z2_index(dim, b, dim - 1, dim - 1, b, b) + 1];
    for i in 0..dim {
        for j in 0..dim {
            out[z2_index(dim, b, i, j, 0, 0)] = v[i * dim + j].clone();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VandermondeDecision {
    pub independent: bool,
    pub determinant: Scalar,
}

/// `[n, k] = n(n + m − 1)⋯(n + (k−1)(m − 1))`, the coefficient in `(x^m d/dx)ᵏ xⁿ`.
pub fn bracket(n: u32, k: u32, m: u32) -> BigInt {
    let shift = m as i64 - 1;
    (0..k as i64).map(|j| BigInt::from(n as i64 + j * shift)).product()
}

pub fn vandermonde_matrix(m: u32, pairs: &[(u32, u32)]) -> Matrix {
    let s = pairs.len();
    Matrix::from_fn(s, s, |k, i| Scalar::from_rational(Rational::from_integer(bracket(pairs[i].0, k as u32, m))))
}

pub fn vandermonde_monomial_decision(m: u32, pairs: &[(u32, u32)]) -> Result<VandermondeDecision, VaError> {
    if pairs.is_empty() {
        return Err(VaError::MalformedPairs("no pairs".into()));
    }
    let total = pairs[0].0 + pairs[0].1;
    if let Some(p) = pairs.iter().find(|p| p.0 + p.1 != total) {
        return Err(VaError::MalformedPairs(format!("({}, {}) has total degree ≠ {total}", p.0, p.1)));
    }
    if let Some(w) = pairs.windows(2).find(|w| w[0].0 <= w[1].0) {
        return Err(VaError::MalformedPairs(format!("exponents {} and {} not strictly decreasing", w[0].0, w[1].0)));
    }
    let determinant = vandermonde_matrix(m, pairs).det();
    Ok(VandermondeDecision { independent: !determinant.is_zero(), determinant })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipSkewReport {
    pub check: Check,
    pub pairs_checked: usize,
}

/// Checks `e^{−z∂}((e^{z∂}u)v) = (e^{−z∂}v)u` coefficientwise to order `K`.
pub fn flip_skew_check(a: &CommDiffVA, pairs: &[(Poly, Poly)], order: usize) -> Result<FlipSkewReport, VaError> {
    let mut witness = None;
    for (u, v) in pairs {
        a.check_cap(u)?;
        a.check_cap(v)?;
        let y: Vec<Poly> = a.exp_coefficients(u, order).iter().map(|c| c.mul(v)).collect();
        let lhs = exp_of_series(a, &y, order, -1);
        let rhs: Vec<Poly> = a
            .exp_coefficients(v, order)
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let c = c.mul(u);
                if k % 2 == 1 { c.scale(&Scalar::from_int(-1)) } else { c }
            })
            .collect();
        if let Some(k) = (0..=order).find(|&k| lhs[k] != rhs[k]) {
            witness = Some(format!("({}, {}) at z^{k}", a.format(u), a.format(v)));
            break;
        }
    }
    Ok(FlipSkewReport { check: Check::from_witness(witness), pairs_checked: pairs.len() })
}

/// Human-readable element of `A_{≤D}^{⊗n}` in left-major coordinates.
pub fn format_tensor(a: &CommDiffVA, basis: &MonomialBasis, v: &[Scalar], n: usize) -> String {
    let dim = basis.len();
    let names = a.names();
    crate::hopf::format_combination(v, |mut idx| {
        let mut parts = vec![String::new(); n];
        for slot in (0..n).rev() {
            parts[slot] = basis.monomial(idx % dim).format(names);
            idx /= dim;
        }
        parts.join("⊗")
    })
}

/// Coordinates of the pure tensor `p₁ ⊗ … ⊗ pₙ`, if every factor lies in the basis.
pub fn tensor_coordinates(basis: &MonomialBasis, factors: &[Poly]) -> Option<Vec<Scalar>> {
    let mut acc = vec![Scalar::one()];
    for f in factors {
        let c = basis.coordinates(f)?;
        acc = crate::hopf::tensor(&acc, &c);
    }
    Some(acc)
}

/// Dimension of each homogeneous piece of `A_{≤D}`.
pub fn graded_dimensions(basis: &MonomialBasis) -> Vec<usize> {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for m in basis.monomials() {
        *counts.entry(m.degree()).or_default() += 1;
    }
    (0..=basis.cap()).map(|d| counts.get(&d).copied().unwrap_or(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn xpow(m: u32, coeff: Scalar) -> Poly {
        Poly::term(Monomial(vec![m]), coeff)
    }

    #[test]
    fn derivations() {
        let a = CommDiffVA::x_power_derivation(0, 5);
        assert_eq!(a.apply_derivation(&xpow(3, s(1)), 2).unwrap(), xpow(1, s(6)));
        let e = CommDiffVA::x_power_derivation(1, 5);
        for n in 0..5u32 {
            for k in 0..4usize {
                let want = xpow(n, s((n as i64).pow(k as u32)));
                assert_eq!(e.apply_derivation(&xpow(n, s(1)), k).unwrap(), want);
            }
        }
        let q = CommDiffVA::x_power_derivation(2, 3);
        assert_eq!(q.apply_derivation(&xpow(2, s(1)), 1).unwrap(), xpow(3, s(2)));
        assert_eq!(
            q.apply_derivation(&xpow(2, s(1)), 2),
            Err(VaError::TruncationOverflow { degree: 4, cap: 3 })
        );
        assert_eq!(a.weight(), -1);
        assert_eq!(e.weight(), 0);
        assert_eq!(q.weight(), 1);
    }

    #[test]
    fn vertex_coefficients_examples() {
        let e = CommDiffVA::x_power_derivation(1, 6);
        let b = xpow(2, s(1));
        let c = e.vertex_coefficients(&e.one(), &b, 5).unwrap();
        assert_eq!(c[0], b);
        assert!(c[1..].iter().all(Poly::is_zero));

        let d = CommDiffVA::x_power_derivation(0, 4);
        let x = xpow(1, s(1));
        assert_eq!(d.vertex_coefficients(&x, &x, 2).unwrap(), vec![xpow(2, s(1)), x.clone(), Poly::zero(1)]);

        let c = e.vertex_coefficients(&x, &e.one(), 3).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let sixth = Scalar::from_ratio(1, 6);
        assert_eq!(c, vec![x.clone(), x.clone(), xpow(1, half), xpow(1, sixth)]);
    }

    #[test]
    fn vertex_axioms_hold_and_corruption_is_caught() {
        let e = CommDiffVA::x_power_derivation(1, 4);
        let samples = vec![e.one(), xpow(1, s(1)), xpow(2, s(1))];
        assert!(verify_comm_va_axioms(&e, &samples, 4).unwrap().passed());
        assert!(verify_comm_va_axioms(&e, &[e.one()], 7).unwrap().passed());

        let bad = e.clone().with_corrupted_derivative(Monomial(vec![2]), Poly::zero(1));
        let r = verify_comm_va_axioms(&bad, &samples, 4).unwrap();
        assert!(!r.skew_symmetry.passed);
        assert!(r.skew_symmetry.witness.as_deref().unwrap().starts_with("(x, x)"));
    }

    #[test]
    fn pi2_small_cases() {
        let zero = CommDiffVA::zero_derivation(1);
        let r = pi2_kernel(&zero, 1, Some(3));
        assert_eq!(r.kernel.dim(), 1);
        assert!(r.kernel.contains(&[s(0), s(1), s(-1), s(0)]));
        assert!(r.stabilized);

        let diag = CommDiffVA::diagonal_xy(1);
        let r = pi2_kernel(&diag, 1, Some(10));
        let basis = diag.basis();
        let xy = diag.variable(0).sub(&diag.variable(1));
        let w1 = tensor_coordinates(&basis, &[xy.clone(), diag.one()]).unwrap();
        let w2 = tensor_coordinates(&basis, &[diag.one(), xy]).unwrap();
        let w: Vec<Scalar> = w1.iter().zip(&w2).map(|(a, b)| a - b).collect();
        assert!(r.kernel.contains(&w));
    }

    #[test]
    fn pi2_chain_is_monotone() {
        let diag = CommDiffVA::diagonal_xy(2);
        let r = pi2_kernel(&diag, 2, Some(6));
        assert!(r.chain.windows(2).all(|w| w[0] >= w[1]));
        for k in 1..6 {
            let smaller = pi2_kernel(&diag, 2, Some(k));
            let larger = pi2_kernel(&diag, 2, Some(k + 1));
            assert!(larger.kernel.is_subspace_of(&smaller.kernel));
        }
    }

    #[test]
    fn pin_agrees_with_pi2_for_two_factors() {
        for a in [CommDiffVA::diagonal_xy(1), CommDiffVA::zero_derivation(2), CommDiffVA::x_power_derivation(1, 2)] {
            let p2 = pi2_kernel(&a, a.cap(), Some(4));
            let pn = pin_injectivity_check(&a, 2, a.cap(), 4).unwrap();
            assert_eq!(p2.kernel, pn.kernel);
        }
        assert!(pin_injectivity_check(&CommDiffVA::x_power_derivation(1, 3), 1, 3, 3).is_err());
    }

    #[test]
    fn vandermonde_examples() {
        let r = vandermonde_monomial_decision(1, &[(2, 0), (1, 1), (0, 2)]).unwrap();
        assert!(r.independent);
        assert_eq!(r.determinant, s(-2));
        assert_eq!(vandermonde_monomial_decision(2, &[(5, 0)]).unwrap().determinant, s(1));
        let r = vandermonde_monomial_decision(0, &[(3, 0), (2, 1)]).unwrap();
        assert!(r.independent);
        assert_eq!(r.determinant, s(-1));
        assert!(vandermonde_monomial_decision(1, &[(1, 1), (2, 0)]).is_err());
        assert!(vandermonde_monomial_decision(1, &[(2, 0), (0, 1)]).is_err());
    }

    #[test]
    fn flip_skew() {
        let e = CommDiffVA::x_power_derivation(1, 6);
        let pairs = [(xpow(1, s(1)), xpow(2, s(1))), (e.one(), xpow(3, s(2)))];
        assert!(flip_skew_check(&e, &pairs, 6).unwrap().check.passed);
        let bad = e.clone().with_corrupted_derivative(Monomial(vec![3]), Poly::zero(1));
        let r = flip_skew_check(&bad, &pairs[..1], 6).unwrap();
        assert!(!r.check.passed);
    }

    #[test]
    fn z2_small_cases() {
        let diag = CommDiffVA::diagonal_xy(1);
        let k = z2_kernel(&diag, 1, 3, 1);
        let basis = diag.basis();
        let xy = diag.variable(0).sub(&diag.variable(1));
        let w1 = tensor_coordinates(&basis, &[xy.clone(), diag.one()]).unwrap();
        let w2 = tensor_coordinates(&basis, &[diag.one(), xy]).unwrap();
        let w: Vec<Scalar> = w1.iter().zip(&w2).map(|(a, b)| a - b).collect();
        assert!(k.contains(&embed_in_z2_domain(&w, 3, 1)));
        assert!(k.contains(&vec![Scalar::zero(); k.ambient()]));
    }
}
