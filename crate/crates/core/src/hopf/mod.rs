//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! Conventions for a basis `b_0..b_{d-1}`:
//! - `mul` is `d × d²`, column `i*d + j` holds the coordinates of `b_i b_j`;
//! - `comul` is `d² × d`, column `i` holds `Δ(b_i)` in the left-major tensor basis;
//! - `antipode` is `d × d`, column `i` holds `S(b_i)`.

mod group;

use serde::Serialize;
use thiserror::Error;

pub use group::GroupTable;

use crate::linalg::{split_commutative_algebra, unit_vector, Matrix, SplitFailure, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("structure tensors have inconsistent shapes: {0}")]
    Shape(String),
    #[error("Hopf axioms fail: {0}")]
    AxiomsFail(String),
    #[error("dual algebra is not commutative and no group-like elements are declared")]
    DualNotCommutative,
    #[error(transparent)]
    Split(#[from] SplitFailure),
    #[error("not a group algebra: {0}")]
    NotGroupAlgebra(NotGroupAlgebra),
    #[error("subspace is not a Hopf ideal: {0}")]
    NotHopfIdeal(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotGroupAlgebra {
    NotCocommutative { witness: String },
    FewerGroupLikes { found: usize, dim: usize },
    NotClosed { witness: String },
}

impl std::fmt::Display for NotGroupAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotGroupAlgebra::NotCocommutative { witness } => write!(f, "not cocommutative (witness {witness})"),
            NotGroupAlgebra::FewerGroupLikes { found, dim } => {
                write!(f, "fewer group-likes than the dimension ({found} < {dim})")
            }
            NotGroupAlgebra::NotClosed { witness } => write!(f, "group-likes not closed under product ({witness})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    ComultiplicationMultiplicative,
    CounitMultiplicative,
    AntipodeLeft,
    AntipodeRight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinHopfAlgebra {
    names: Vec<String>,
    mul: Matrix,
    unit: Vec<Scalar>,
    comul: Matrix,
    counit: Vec<Scalar>,
    antipode: Matrix,
    group_like_hints: Vec<usize>,
    verified: bool,
}

impl FinHopfAlgebra {
    /// Builds and verifies all Hopf axioms.
    pub fn new(
        names: Vec<String>,
        mul: Matrix,
        unit: Vec<Scalar>,
        comul: Matrix,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let mut h = Self::new_unverified(names, mul, unit, comul, counit, antipode)?;
        let report = h.verify_axioms();
        if !report.passed() {
            let msg = report
                .failures()
                .map(|c| format!("{:?} at {}", c.axiom, c.witness.as_deref().unwrap_or("?")))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(HopfError::AxiomsFail(msg));
        }
        h.verified = true;
        Ok(h)
    }

    /// Builds without checking axioms; only shapes are validated.
    pub fn new_unverified(
        names: Vec<String>,
        mul: Matrix,
        unit: Vec<Scalar>,
        comul: Matrix,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let d = names.len();
        let shapes = [
            ("mul", (mul.rows(), mul.cols()), (d, d * d)),
            ("comul", (comul.rows(), comul.cols()), (d * d, d)),
            ("antipode", (antipode.rows(), antipode.cols()), (d, d)),
            ("unit", (unit.len(), 1), (d, 1)),
            ("counit", (counit.len(), 1), (d, 1)),
        ];
        for (name, got, want) in shapes {
            if got != want {
                return Err(HopfError::Shape(format!("{name} is {}x{}, expected {}x{}", got.0, got.1, want.0, want.1)));
            }
        }
        Ok(FinHopfAlgebra { names, mul, unit, comul, counit, antipode, group_like_hints: Vec::new(), verified: false })
    }

    /// Declares basis elements to be group-like (used when the dual route is unavailable).
    pub fn with_group_like_hints(mut self, hints: Vec<usize>) -> Self {
        self.group_like_hints = hints;
        self
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn group_like_hints(&self) -> &[usize] {
        &self.group_like_hints
    }

    pub fn mul_matrix(&self) -> &Matrix {
        &self.mul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn comul_matrix(&self) -> &Matrix {
        &self.comul
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.dim(), i)
    }

    /// Structure tensors agree (basis names are ignored).
    pub fn same_structure(&self, other: &FinHopfAlgebra) -> bool {
        self.mul == other.mul
            && self.unit == other.unit
            && self.comul == other.comul
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    pub fn conductor(&self) -> u32 {
        [&self.mul, &self.comul, &self.antipode]
            .iter()
            .map(|m| m.conductor())
            .chain(self.unit.iter().chain(&self.counit).map(Scalar::conductor))
            .fold(1, crate::scalar::lcm_conductor)
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mul.get(k, i * d + j);
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn coproduct(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.comul.apply(a)
    }

    pub fn counit_of(&self, a: &[Scalar]) -> Scalar {
        dot(&self.counit, a)
    }

    pub fn antipode_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.antipode.apply(a)
    }

    /// Product in `H ⊗ H`: `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn tensor_product(&self, s: &[Scalar], t: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d * d];
        for (p, x) in s.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in t.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let left = self.product(&self.basis(p / d), &self.basis(q / d));
                let right = self.product(&self.basis(p % d), &self.basis(q % d));
                let xy = x * y;
                for (i, l) in left.iter().enumerate().filter(|(_, l)| !l.is_zero()) {
                    for (j, r) in right.iter().enumerate().filter(|(_, r)| !r.is_zero()) {
                        out[i * d + j] += &(&xy * &(l * r));
                    }
                }
            }
        }
        out
    }

    /// Human-readable form of an element in this basis.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        format_combination(v, |i| self.names[i].clone())
    }

    /// Human-readable form of an element of `H ⊗ H`.
    pub fn format_tensor(&self, v: &[Scalar]) -> String {
        let d = self.dim();
        format_combination(v, |i| format!("{}⊗{}", self.names[i / d], self.names[i % d]))
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        verify_hopf_axioms(self)
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn format_combination(v: &[Scalar], name: impl Fn(usize) -> String) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let n = name(i);
            if c.is_one() {
                n
            } else if (-c).is_one() {
                format!("-{n}")
            } else {
                format!("({c})*{n}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn check(axiom: Axiom, witness: Option<String>) -> AxiomCheck {
    AxiomCheck { axiom, passed: witness.is_none(), witness }
}

pub fn verify_hopf_axioms(h: &FinHopfAlgebra) -> AxiomReport {
    let d = h.dim();
    let name = |i: usize| h.names[i].clone();
    let pair = |i: usize, j: usize| format!("({}, {})", h.names[i], h.names[j]);
    let id = Matrix::identity(d);
    let mut checks = Vec::new();

    let prod: Vec<Vec<Vec<Scalar>>> =
        (0..d).map(|i| (0..d).map(|j| h.mul.column(i * d + j)).collect()).collect();

    let mut w = None;
    'assoc: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if h.product(&prod[i][j], &h.basis(k)) != h.product(&h.basis(i), &prod[j][k]) {
                    w = Some(format!("({}, {}, {})", h.names[i], h.names[j], h.names[k]));
                    break 'assoc;
                }
            }
        }
    }
    checks.push(check(Axiom::Associativity, w));

    let w = (0..d)
        .find(|&i| h.product(&h.unit, &h.basis(i)) != h.basis(i) || h.product(&h.basis(i), &h.unit) != h.basis(i))
        .map(name);
    checks.push(check(Axiom::Unit, w));

    let left = h.comul.kronecker(&id).mul(&h.comul);
    let right = id.kronecker(&h.comul).mul(&h.comul);
    let w = (0..d).find(|&i| left.column(i) != right.column(i)).map(name);
    checks.push(check(Axiom::Coassociativity, w));

    let eps = Matrix::from_rows(vec![h.counit.clone()]);
    let l = eps.kronecker(&id).mul(&h.comul);
    let r = id.kronecker(&eps).mul(&h.comul);
    let w = (0..d).find(|&i| l.column(i) != id.column(i) || r.column(i) != id.column(i)).map(name);
    checks.push(check(Axiom::Counit, w));

    let delta_unit_ok = h.coproduct(&h.unit) == tensor(&h.unit, &h.unit);
    let mut w = if delta_unit_ok { None } else { Some("unit".to_string()) };
    if w.is_none() {
        'mult: for i in 0..d {
            for j in 0..d {
                let lhs = h.coproduct(&prod[i][j]);
                let rhs = h.tensor_product(&h.comul.column(i), &h.comul.column(j));
                if lhs != rhs {
                    w = Some(pair(i, j));
                    break 'mult;
                }
            }
        }
    }
    checks.push(check(Axiom::ComultiplicationMultiplicative, w));

    let mut w = if h.counit_of(&h.unit).is_one() { None } else { Some("unit".to_string()) };
    if w.is_none() {
        'counit: for i in 0..d {
            for j in 0..d {
                if h.counit_of(&prod[i][j]) != &h.counit[i] * &h.counit[j] {
                    w = Some(pair(i, j));
                    break 'counit;
                }
            }
        }
    }
    checks.push(check(Axiom::CounitMultiplicative, w));

    let eta_eps = Matrix::from_columns(&[h.unit.clone()], d).mul(&eps);
    let sl = h.mul.mul(&h.antipode.kronecker(&id)).mul(&h.comul);
    let sr = h.mul.mul(&id.kronecker(&h.antipode)).mul(&h.comul);
    let w = (0..d).find(|&i| sl.column(i) != eta_eps.column(i)).map(name);
    checks.push(check(Axiom::AntipodeLeft, w));
    let w = (0..d).find(|&i| sr.column(i) != eta_eps.column(i)).map(name);
    checks.push(check(Axiom::AntipodeRight, w));

    AxiomReport { checks }
}

/// Coordinates of `a ⊗ b` in the left-major tensor basis.
pub fn tensor(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Permutation matrix of `u ⊗ v ↦ v ⊗ u` on `K^d ⊗ K^d`.
pub fn flip_matrix(d: usize) -> Matrix {
    let mut m = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(j * d + i, i * d + j, Scalar::one());
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocommutativity {
    pub cocommutative: bool,
    pub witness: Option<String>,
}

pub fn is_cocommutative(h: &FinHopfAlgebra) -> Cocommutativity {
    let flipped = flip_matrix(h.dim()).mul(&h.comul);
    let witness = (0..h.dim()).find(|&i| flipped.column(i) != h.comul.column(i)).map(|i| h.names[i].clone());
    Cocommutativity { cocommutative: witness.is_none(), witness }
}

/// The dual Hopf algebra on the dual basis `b_i*`.
pub fn dual_hopf(h: &FinHopfAlgebra) -> FinHopfAlgebra {
    FinHopfAlgebra {
        names: h.names.iter().map(|n| format!("{n}*")).collect(),
        mul: h.comul.transpose(),
        unit: h.counit.clone(),
        comul: h.mul.transpose(),
        counit: h.unit.clone(),
        antipode: h.antipode.transpose(),
        group_like_hints: Vec::new(),
        verified: h.verified,
    }
}

fn is_group_like(h: &FinHopfAlgebra, g: &[Scalar]) -> bool {
    g.iter().any(|x| !x.is_zero()) && h.counit_of(g).is_one() && h.coproduct(g) == tensor(g, g)
}

/// All group-like elements of `H` over ℚ(ζ_conductor), identity first.
///
/// When `H` is cocommutative they are the dual basis of the primitive
/// idempotents of `H*`. Otherwise only declared basis hints are checked.
pub fn group_likes(h: &FinHopfAlgebra, conductor: u32) -> Result<Vec<Vec<Scalar>>, HopfError> {
    let d = h.dim();
    if !is_cocommutative(h).cocommutative {
        if h.group_like_hints.is_empty() {
            return Err(HopfError::DualNotCommutative);
        }
        let out: Vec<Vec<Scalar>> = h.group_like_hints.iter().map(|&i| h.basis(i)).collect();
        if let Some(bad) = out.iter().position(|g| !is_group_like(h, g)) {
            return Err(HopfError::AxiomsFail(format!(
                "declared group-like {} is not group-like",
                h.names[h.group_like_hints[bad]]
            )));
        }
        return Ok(sorted_group_likes(h, out));
    }
    let idempotents = split_commutative_algebra(&h.comul.transpose(), &h.counit, conductor)?;
    // g_j pairs to δ_jk against e_k, so the g's are the columns of (Eᵀ)⁻¹
    let e = Matrix::from_columns(&idempotents, d);
    let found = if idempotents.len() == d {
        let g = e.transpose().inverse().ok_or(HopfError::Split(SplitFailure::NotSemisimple { element: 0 }))?;
        (0..d).map(|j| g.column(j)).collect()
    } else {
        Vec::new()
    };
    debug_assert!(found.iter().all(|g: &Vec<Scalar>| is_group_like(h, g)));
    Ok(sorted_group_likes(h, found))
}

fn sorted_group_likes(h: &FinHopfAlgebra, mut gs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    gs.sort_by(|a, b| {
        let ka = *a != h.unit;
        let kb = *b != h.unit;
        ka.cmp(&kb).then_with(|| {
            a.iter().zip(b.iter()).map(|(x, y)| y.cmp_repr(x)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    gs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizedGroup {
    /// Group-like basis, identity first.
    pub elements: Vec<Vec<Scalar>>,
    pub table: GroupTable,
}

pub fn recognize_group_algebra(h: &FinHopfAlgebra, conductor: u32) -> Result<RecognizedGroup, HopfError> {
    let cc = is_cocommutative(h);
    if !cc.cocommutative {
        return Err(HopfError::NotGroupAlgebra(NotGroupAlgebra::NotCocommutative {
            witness: cc.witness.unwrap_or_default(),
        }));
    }
    let gs = group_likes(h, conductor)?;
    let d = h.dim();
    if gs.len() < d || Matrix::from_columns(&gs, d).rank() < d {
        return Err(HopfError::NotGroupAlgebra(NotGroupAlgebra::FewerGroupLikes { found: gs.len(), dim: d }));
    }
    let mut table = vec![vec![0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let p = h.product(&gs[i], &gs[j]);
            let Some(k) = gs.iter().position(|g| *g == p) else {
                return Err(HopfError::NotGroupAlgebra(NotGroupAlgebra::NotClosed {
                    witness: format!("g{i}*g{j}"),
                }));
            };
            table[i][j] = k;
        }
    }
    let names = gs.iter().map(|g| h.format_element(g)).collect();
    let table = GroupTable::new(names, table)?;
    Ok(RecognizedGroup { elements: gs, table })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub left_ideal: Option<String>,
    pub right_ideal: Option<String>,
    pub counit_vanishes: Option<String>,
    pub coideal: Option<String>,
    /// Only populated by [`is_hopf_ideal`].
    pub antipode_stable: Option<String>,
}

impl IdealReport {
    pub fn is_bialgebra_ideal(&self) -> bool {
        self.left_ideal.is_none() && self.right_ideal.is_none() && self.counit_vanishes.is_none() && self.coideal.is_none()
    }

    pub fn is_hopf_ideal(&self) -> bool {
        self.is_bialgebra_ideal() && self.antipode_stable.is_none()
    }
}

/// `H⊗I + I⊗H` inside `K^{d²}`.
pub(crate) fn coideal_target(h: &FinHopfAlgebra, i: &Subspace) -> Subspace {
    let d = h.dim();
    let mut gens = Vec::new();
    for v in i.basis() {
        for k in 0..d {
            gens.push(tensor(&h.basis(k), v));
            gens.push(tensor(v, &h.basis(k)));
        }
    }
    Subspace::span(d * d, gens)
}

pub fn is_bialgebra_ideal(h: &FinHopfAlgebra, i: &Subspace) -> IdealReport {
    assert_eq!(i.ambient(), h.dim());
    let d = h.dim();
    let mut left = None;
    let mut right = None;
    'outer: for v in i.basis() {
        for k in 0..d {
            if left.is_none() && !i.contains(&h.product(&h.basis(k), v)) {
                left = Some(format!("{} · ({}) ∉ I", h.names[k], h.format_element(v)));
            }
            if right.is_none() && !i.contains(&h.product(v, &h.basis(k))) {
                right = Some(format!("({}) · {} ∉ I", h.format_element(v), h.names[k]));
            }
            if left.is_some() && right.is_some() {
                break 'outer;
            }
        }
    }
    let counit = i
        .basis()
        .iter()
        .find(|v| !h.counit_of(v).is_zero())
        .map(|v| format!("ε({}) ≠ 0", h.format_element(v)));
    let target = coideal_target(h, i);
    let coideal = i
        .basis()
        .iter()
        .find(|v| !target.contains(&h.coproduct(v)))
        .map(|v| format!("Δ({}) ∉ H⊗I + I⊗H", h.format_element(v)));
    IdealReport { left_ideal: left, right_ideal: right, counit_vanishes: counit, coideal, antipode_stable: None }
}

pub fn is_hopf_ideal(h: &FinHopfAlgebra, i: &Subspace) -> IdealReport {
    let mut r = is_bialgebra_ideal(h, i);
    r.antipode_stable = i
        .basis()
        .iter()
        .find(|v| !i.contains(&h.antipode_of(v)))
        .map(|v| format!("S({}) ∉ I", h.format_element(v)));
    r
}

/// `H/I` with the canonical projection.
#[derive(Clone, Debug)]
pub struct HopfQuotient {
    pub algebra: FinHopfAlgebra,
    /// Indices of the basis elements of `H` whose classes form the quotient basis.
    pub representatives: Vec<usize>,
    /// `q × d` matrix of the projection `H → H/I`.
    pub projection: Matrix,
}

pub fn quotient_hopf(h: &FinHopfAlgebra, i: &Subspace) -> Result<HopfQuotient, HopfError> {
    let report = is_hopf_ideal(h, i);
    if !report.is_hopf_ideal() {
        let reason = [report.left_ideal, report.right_ideal, report.counit_vanishes, report.coideal, report.antipode_stable]
            .into_iter()
            .flatten()
            .next()
            .unwrap_or_default();
        return Err(HopfError::NotHopfIdeal(reason));
    }
    let d = h.dim();
    // earliest basis elements independent modulo I
    let mut span = i.clone();
    let mut reps = Vec::new();
    for c in 0..d {
        let b = h.basis(c);
        if !span.contains(&b) {
            span = span.sum(&Subspace::span(d, vec![b]));
            reps.push(c);
        }
    }
    let q = reps.len();
    let mut cols: Vec<Vec<Scalar>> = reps.iter().map(|&c| h.basis(c)).collect();
    cols.extend(i.basis().iter().cloned());
    let change = Matrix::from_columns(&cols, d).inverse().expect("complement plus ideal spans H");
    let all: Vec<usize> = (0..d).collect();
    let proj = change.submatrix(&(0..q).collect::<Vec<_>>(), &all);

    let mut mul = Matrix::zeros(q, q * q);
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            let p = proj.apply(&h.mul.column(ra * d + rb));
            for (k, c) in p.into_iter().enumerate() {
                mul.set(k, a * q + b, c);
            }
        }
    }
    let unit = proj.apply(&h.unit);
    let pp = proj.kronecker(&proj);
    let comul = Matrix::from_columns(&reps.iter().map(|&r| pp.apply(&h.comul.column(r))).collect::<Vec<_>>(), q * q);
    let counit = reps.iter().map(|&r| h.counit[r].clone()).collect();
    let antipode = Matrix::from_columns(&reps.iter().map(|&r| proj.apply(&h.antipode.column(r))).collect::<Vec<_>>(), q);
    let names = reps.iter().map(|&r| h.names[r].clone()).collect();
    let hints = h
        .group_like_hints
        .iter()
        .filter_map(|&g| reps.iter().position(|&r| r == g))
        .collect();
    let algebra = FinHopfAlgebra::new(names, mul, unit, comul, counit, antipode)?.with_group_like_hints(hints);
    Ok(HopfQuotient { algebra, representatives: reps, projection: proj })
}

/// The group algebra `K[G]` on the group elements.
pub fn group_algebra(g: &GroupTable) -> FinHopfAlgebra {
    let n = g.order();
    let mut mul = Matrix::zeros(n, n * n);
    let mut comul = Matrix::zeros(n * n, n);
    let mut antipode = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            mul.set(g.mul(a, b), a * n + b, Scalar::one());
        }
        comul.set(a * n + a, a, Scalar::one());
        antipode.set(g.inverse(a), a, Scalar::one());
    }
    FinHopfAlgebra {
        names: g.names().to_vec(),
        mul,
        unit: unit_vector(n, 0),
        comul,
        counit: vec![Scalar::one(); n],
        antipode,
        group_like_hints: (0..n).collect(),
        verified: true,
    }
}

/// Sweedler's four-dimensional Hopf algebra on the basis `{1, g, x, gx}`.
pub fn sweedler() -> FinHopfAlgebra {
    sweedler_with_antipode(&[(0, 0, 1), (1, 1, 1), (3, 2, -1), (2, 3, 1)])
        .expect("standard structure constants satisfy the axioms")
}

/// Sweedler's algebra with an explicit antipode, entries `(row, col, value)`.
pub fn sweedler_with_antipode(antipode: &[(usize, usize, i64)]) -> Result<FinHopfAlgebra, HopfError> {
    let h = sweedler_unverified(antipode);
    let report = h.verify_axioms();
    if report.passed() {
        Ok(FinHopfAlgebra { verified: true, ..h })
    } else {
        Err(HopfError::AxiomsFail(
            report.failures().map(|c| format!("{:?} at {}", c.axiom, c.witness.clone().unwrap_or_default())).collect::<Vec<_>>().join(", "),
        ))
    }
}

/// Sweedler's algebra with the given antipode and no axiom check.
pub fn sweedler_unverified(antipode: &[(usize, usize, i64)]) -> FinHopfAlgebra {
    const ONE: usize = 0;
    const G: usize = 1;
    const X: usize = 2;
    const GX: usize = 3;
    let d = 4;
    let products: [(usize, usize, usize, i64); 12] = [
        (ONE, ONE, ONE, 1),
        (ONE, G, G, 1),
        (ONE, X, X, 1),
        (ONE, GX, GX, 1),
        (G, ONE, G, 1),
        (G, G, ONE, 1),
        (G, X, GX, 1),
        (G, GX, X, 1),
        (X, ONE, X, 1),
        (X, G, GX, -1),
        (GX, ONE, GX, 1),
        (GX, G, X, -1),
    ];
    let mut mul = Matrix::zeros(d, d * d);
    for (a, b, c, v) in products {
        mul.set(c, a * d + b, Scalar::from_int(v));
    }
    let mut comul = Matrix::zeros(d * d, d);
    let coproducts: [(usize, usize, usize); 6] =
        [(ONE, ONE, ONE), (G, G, G), (X, X, ONE), (X, G, X), (GX, GX, G), (GX, ONE, GX)];
    for (a, l, r) in coproducts {
        comul.set(l * d + r, a, Scalar::one());
    }
    let mut s = Matrix::zeros(d, d);
    for &(r, c, v) in antipode {
        s.set(r, c, Scalar::from_int(v));
    }
    FinHopfAlgebra {
        names: ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect(),
        mul,
        unit: unit_vector(d, ONE),
        comul,
        counit: vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()],
        antipode: s,
        group_like_hints: vec![ONE, G],
        verified: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn groups() -> Vec<GroupTable> {
        vec![
            GroupTable::cyclic(2),
            GroupTable::cyclic(3),
            GroupTable::cyclic(4),
            GroupTable::klein(),
            GroupTable::symmetric3(),
        ]
    }

    #[test]
    fn builders_satisfy_axioms() {
        for g in groups() {
            assert!(group_algebra(&g).verify_axioms().passed());
        }
        assert!(sweedler().verify_axioms().passed());
    }

    #[test]
    fn corrupted_antipode_fails_at_x() {
        let bad = sweedler_unverified(&[(0, 0, 1), (1, 1, 1), (3, 2, 1), (2, 3, 1)]);
        let report = bad.verify_axioms();
        let c = report.get(Axiom::AntipodeLeft);
        assert!(!c.passed);
        assert_eq!(c.witness.as_deref(), Some("x"));
        assert!(report.get(Axiom::Associativity).passed);
    }

    #[test]
    fn sweedler_relations() {
        let h = sweedler();
        let (one, g, x, gx) = (h.basis(0), h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.product(&g, &g), one);
        assert!(h.product(&x, &x).iter().all(Scalar::is_zero));
        let xg = h.product(&x, &g);
        let neg_gx: Vec<Scalar> = h.product(&g, &x).iter().map(|c| -c).collect();
        assert_eq!(xg, neg_gx);
        assert_eq!(h.product(&g, &x), gx);
        assert_eq!(h.coproduct(&x), tensor(&x, &one).iter().zip(tensor(&g, &x)).map(|(a, b)| a + &b).collect::<Vec<_>>());
        assert_eq!(h.antipode_of(&x), gx.iter().map(|c| -c).collect::<Vec<_>>());
    }

    #[test]
    fn cocommutativity() {
        assert!(is_cocommutative(&group_algebra(&GroupTable::cyclic(3))).cocommutative);
        let sw = is_cocommutative(&sweedler());
        assert!(!sw.cocommutative);
        assert_eq!(sw.witness.as_deref(), Some("x"));
        assert!(is_cocommutative(&dual_hopf(&group_algebra(&GroupTable::cyclic(2)))).cocommutative);
    }

    #[test]
    fn duals() {
        for h in [group_algebra(&GroupTable::cyclic(2)), group_algebra(&GroupTable::symmetric3()), sweedler()] {
            let dual = dual_hopf(&h);
            assert!(dual.verify_axioms().passed());
            assert!(dual_hopf(&dual).same_structure(&h));
        }
        // functions on ℤ/2: δ_e, δ_g are orthogonal idempotents
        let dual = dual_hopf(&group_algebra(&GroupTable::cyclic(2)));
        let e = split_commutative_algebra(dual.mul_matrix(), dual.unit(), 1).unwrap();
        assert_eq!(e, vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
    }

    #[test]
    fn group_likes_of_small_algebras() {
        let z2 = group_algebra(&GroupTable::cyclic(2));
        assert_eq!(group_likes(&z2, 1).unwrap(), vec![z2.basis(0), z2.basis(1)]);
        let sw = sweedler();
        assert_eq!(group_likes(&sw, 1).unwrap(), vec![sw.basis(0), sw.basis(1)]);
        let hidden = sweedler().with_group_like_hints(Vec::new());
        assert_eq!(group_likes(&hidden, 1), Err(HopfError::DualNotCommutative));
    }

    #[test]
    fn dual_of_order_three_splits_only_with_cube_roots() {
        let h = dual_hopf(&group_algebra(&GroupTable::cyclic(3)));
        assert!(matches!(group_likes(&h, 1), Err(HopfError::Split(SplitFailure::NotSplit { .. }))));
        let gs = group_likes(&h, 3).unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[0], h.unit().to_vec());
        // the three characters of ℤ/3 on the dual basis
        let z = Scalar::zeta(3);
        assert!(gs.contains(&vec![s(1), z.clone(), &z * &z]));
    }

    #[test]
    fn recognition() {
        for g in groups() {
            let h = group_algebra(&g);
            let r = recognize_group_algebra(&h, 1).unwrap();
            assert!(r.table.is_isomorphic(&g));
        }
        assert!(matches!(
            recognize_group_algebra(&sweedler(), 1),
            Err(HopfError::NotGroupAlgebra(NotGroupAlgebra::NotCocommutative { .. }))
        ));
        let h = dual_hopf(&group_algebra(&GroupTable::cyclic(3)));
        assert!(recognize_group_algebra(&h, 3).unwrap().table.is_isomorphic(&GroupTable::cyclic(3)));
    }

    #[test]
    fn ideals_of_sweedler() {
        let h = sweedler();
        let x = Subspace::span(4, vec![h.basis(2)]);
        let r = is_bialgebra_ideal(&h, &x);
        assert!(!r.is_bialgebra_ideal());
        assert!(r.left_ideal.is_some());
        let xgx = Subspace::span(4, vec![h.basis(2), h.basis(3)]);
        assert!(is_bialgebra_ideal(&h, &xgx).is_bialgebra_ideal());
        assert!(is_hopf_ideal(&h, &xgx).is_hopf_ideal());
        assert!(is_hopf_ideal(&h, &Subspace::zero(4)).is_hopf_ideal());
    }

    #[test]
    fn augmentation_ideals_are_hopf_ideals() {
        for h in groups().iter().map(group_algebra).chain([sweedler()]) {
            let aug = Matrix::from_rows(vec![h.counit().to_vec()]).kernel();
            assert!(is_hopf_ideal(&h, &aug).is_hopf_ideal());
        }
    }

    #[test]
    fn quotients() {
        let h = sweedler();
        let i = Subspace::span(4, vec![h.basis(2), h.basis(3)]);
        let q = quotient_hopf(&h, &i).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(recognize_group_algebra(&q.algebra, 1).unwrap().table.is_isomorphic(&GroupTable::cyclic(2)));

        let same = quotient_hopf(&h, &Subspace::zero(4)).unwrap();
        assert!(same.algebra.same_structure(&h));

        let z4 = group_algebra(&GroupTable::cyclic(4));
        let i = Subspace::span(4, vec![vec![s(-1), s(0), s(1), s(0)], vec![s(0), s(-1), s(0), s(1)]]);
        let q = quotient_hopf(&z4, &i).unwrap();
        assert!(q.algebra.same_structure(&group_algebra(&GroupTable::cyclic(2))));

        assert!(matches!(
            quotient_hopf(&h, &Subspace::span(4, vec![h.basis(2)])),
            Err(HopfError::NotHopfIdeal(_))
        ));
    }

    #[test]
    fn projection_preserves_structure() {
        let h = sweedler();
        let i = Subspace::span(4, vec![h.basis(2), h.basis(3)]);
        let q = quotient_hopf(&h, &i).unwrap();
        let p = &q.projection;
        let qa = &q.algebra;
        for a in 0..4 {
            for b in 0..4 {
                let lhs = p.apply(&h.product(&h.basis(a), &h.basis(b)));
                assert_eq!(lhs, qa.product(&p.apply(&h.basis(a)), &p.apply(&h.basis(b))));
            }
            assert_eq!(p.kronecker(p).apply(&h.coproduct(&h.basis(a))), qa.coproduct(&p.apply(&h.basis(a))));
            assert_eq!(h.counit()[a], qa.counit_of(&p.apply(&h.basis(a))));
            assert_eq!(p.apply(&h.antipode_of(&h.basis(a))), qa.antipode_of(&p.apply(&h.basis(a))));
        }
        assert_eq!(p.apply(h.unit()), qa.unit().to_vec());
    }
}
