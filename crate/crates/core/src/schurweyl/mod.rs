//! Finite-group isotypic decompositions of graded actions, multiplicity
//! spaces, and finite evidence for the dual-pair structure over `V^G`.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::action::{fixed_subspace, multiplier_commutes, HopfAction};
use crate::hopf::{group_algebra, GroupTable};
use crate::linalg::{kernel_of_rows, Matrix, SparseRow, Subspace};
use crate::report::Check;
use crate::scalar::{lcm_conductor, Scalar};
use crate::vertexalg::{multiplication_matrix, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SwError {
    #[error("character values need conductor {needed}, the representation is over conductor {available}")]
    ConductorTooSmall { needed: u32, available: u32 },
    #[error("explicit irreducible matrices are required for {0}")]
    MatricesRequired(String),
    #[error("unknown character {0}")]
    UnknownCharacter(String),
    #[error("invalid character table: {0}")]
    InvalidTable(String),
    #[error("not a graded group action: {0}")]
    NotGraded(String),
    #[error("seed is zero")]
    ZeroSeed,
    #[error("mode budget {budget} exhausted")]
    BudgetExceeded { budget: usize },
}

/// A group acting on `A_{≤D}` by degree-preserving matrices, taken from an action of `ℚ[G]`.
#[derive(Clone, Debug)]
pub struct FinGroupRep {
    group: GroupTable,
    action: HopfAction,
    degree_dims: Vec<usize>,
    conductor: u32,
}

impl FinGroupRep {
    pub fn from_action(group: GroupTable, action: HopfAction) -> Result<Self, SwError> {
        if !action.hopf().same_structure(&group_algebra(&group)) {
            return Err(SwError::NotGraded("the Hopf algebra is not the group algebra of the table".into()));
        }
        let basis = action.basis();
        for (i, m) in action.matrices().iter().enumerate() {
            for c in 0..m.cols() {
                for r in 0..m.rows() {
                    if !m.get(r, c).is_zero() && basis.monomial(r).degree() != basis.monomial(c).degree() {
                        return Err(SwError::NotGraded(format!("{} mixes degrees", group.names()[i])));
                    }
                }
            }
        }
        let degree_dims = (0..=basis.cap()).map(|d| basis.degree_range(d).len()).collect();
        let conductor = action.conductor();
        Ok(FinGroupRep { group, action, degree_dims, conductor })
    }

    /// Declares a larger coefficient field.
    pub fn with_conductor(mut self, n: u32) -> Self {
        self.conductor = lcm_conductor(self.conductor, n);
        self
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn action(&self) -> &HopfAction {
        &self.action
    }

    pub fn degree_dims(&self) -> &[usize] {
        &self.degree_dims
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.action.basis().len()
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.action.matrices()[g]
    }

    fn degree_indices(&self, n: usize) -> std::ops::Range<usize> {
        self.action.basis().degree_range(n as u32)
    }

    fn block_trace(&self, g: usize, n: usize) -> Scalar {
        let m = self.matrix(g);
        let mut t = Scalar::zero();
        for i in self.degree_indices(n) {
            t += m.get(i, i);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    names: Vec<String>,
    classes: Vec<Vec<usize>>,
    values: Vec<Vec<Scalar>>,
    irreps: Vec<Option<Vec<Matrix>>>,
}

impl CharacterTable {
    /// `values[λ][c]` is `χ_λ` on class `c`.
    pub fn new(names: Vec<String>, classes: Vec<Vec<usize>>, values: Vec<Vec<Scalar>>) -> Result<Self, SwError> {
        if names.len() != values.len() {
            return Err(SwError::InvalidTable(format!("{} names for {} rows", names.len(), values.len())));
        }
        if values.iter().any(|row| row.len() != classes.len()) {
            return Err(SwError::InvalidTable("row length differs from the number of classes".into()));
        }
        let irreps = vec![None; names.len()];
        Ok(CharacterTable { names, classes, values, irreps })
    }

    /// Attaches explicit matrices of `λ`, one per group element.
    pub fn with_irrep(mut self, name: &str, matrices: Vec<Matrix>) -> Result<Self, SwError> {
        let l = self.index_of(name)?;
        self.irreps[l] = Some(matrices);
        Ok(self)
    }

    /// `χ_j(gᵏ) = ζₙ^{jk}` with 1×1 irreducible matrices.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|j| match (n, j) {
                (_, 0) => "trivial".to_string(),
                (2, 1) => "sign".to_string(),
                _ => format!("chi{j}"),
            })
            .collect();
        let classes = (0..n).map(|k| vec![k]).collect();
        let z = |e: usize| Scalar::zeta_pow(n as u32, e as i64);
        let values = (0..n).map(|j| (0..n).map(|k| z(j * k)).collect()).collect();
        let mut t = Self::new(names, classes, values).expect("consistent shape");
        t.irreps = (0..n).map(|j| Some((0..n).map(|k| Matrix::from_rows(vec![vec![z(j * k)]])).collect())).collect();
        t
    }

    /// The table of [`GroupTable::symmetric3`], with the standard representation
    /// realized on the sum-zero vectors of `ℚ³`.
    pub fn symmetric3() -> Self {
        let g = GroupTable::symmetric3();
        let classes = g.conjugacy_classes();
        let row = |vals: [i64; 3]| -> Vec<Scalar> {
            classes
                .iter()
                .map(|c| match c.len() {
                    1 => Scalar::from_int(vals[0]),
                    3 => Scalar::from_int(vals[1]),
                    _ => Scalar::from_int(vals[2]),
                })
                .collect()
        };
        let values = vec![row([1, 1, 1]), row([1, -1, 1]), row([2, 0, -1])];
        let names = vec!["trivial".into(), "sign".into(), "standard".into()];
        let perms: Vec<Vec<usize>> = g
            .names()
            .iter()
            .map(|n| n.trim_matches(|c| c == '[' || c == ']').chars().map(|c| c as usize - '1' as usize).collect())
            .collect();
        let one = |v: i64| vec![Matrix::from_rows(vec![vec![Scalar::from_int(v)]])];
        let trivial = perms.iter().flat_map(|_| one(1)).collect();
        let sign = perms
            .iter()
            .flat_map(|p| {
                let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                one(if inversions % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        // basis e0 − e1, e1 − e2; a sum-zero v has coordinates (v0, v0 + v1)
        let standard = perms
            .iter()
            .map(|p| {
                let image = |b: [i64; 3]| {
                    let mut v = [0i64; 3];
                    for i in 0..3 {
                        v[p[i]] += b[i];
                    }
                    vec![Scalar::from_int(v[0]), Scalar::from_int(v[0] + v[1])]
                };
                Matrix::from_columns(&[image([1, -1, 0]), image([0, 1, -1])], 2)
            })
            .collect();
        let mut t = Self::new(names, classes, values).expect("consistent shape");
        t.irreps = vec![Some(trivial), Some(sign), Some(standard)];
        t
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    pub fn irrep(&self, l: usize) -> Option<&[Matrix]> {
        self.irreps[l].as_deref()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SwError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| SwError::UnknownCharacter(name.to_string()))
    }

    pub fn conductor(&self) -> u32 {
        self.values.iter().flatten().map(Scalar::conductor).fold(1, lcm_conductor)
    }

    /// `χ_λ(g)`, or `None` when `g` lies in no listed class.
    pub fn value(&self, l: usize, g: usize) -> Option<&Scalar> {
        self.classes.iter().position(|c| c.contains(&g)).map(|c| &self.values[l][c])
    }

    /// `d_λ = χ_λ(e)` as an integer when it is one.
    pub fn degree(&self, l: usize) -> Option<usize> {
        let r = self.value(l, 0)?.to_rational()?;
        (r.is_integer() && !r.is_negative()).then(|| r.to_integer().to_usize()).flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub classes: Check,
    pub orthogonality: Check,
    pub degree_sum: Check,
    pub degree_sum_value: Option<usize>,
    pub irrep_matrices: Check,
    pub rep_multiplicities: Option<Check>,
}

impl CharacterReport {
    pub fn passed(&self) -> bool {
        self.classes.passed
            && self.orthogonality.passed
            && self.degree_sum.passed
            && self.irrep_matrices.passed
            && self.rep_multiplicities.as_ref().map_or(true, |c| c.passed)
    }
}

fn inner_product(t: &CharacterTable, g: &GroupTable, f: impl Fn(usize) -> Scalar, l: usize) -> Option<Scalar> {
    let mut s = Scalar::zero();
    for x in 0..g.order() {
        s += &(&f(x) * t.value(l, g.inverse(x))?);
    }
    Some(&s * &Scalar::from_ratio(1, g.order() as i64))
}

fn as_count(s: &Scalar) -> Option<usize> {
    let r = s.to_rational()?;
    (r.is_integer() && !r.is_negative()).then(|| r.to_integer().to_usize()).flatten()
}

pub fn verify_character_table(t: &CharacterTable, g: &GroupTable, rep: Option<&FinGroupRep>) -> CharacterReport {
    let mut sorted: Vec<Vec<usize>> = t.classes.iter().map(|c| {
        let mut c = c.clone();
        c.sort_unstable();
        c
    }).collect();
    sorted.sort();
    let mut expected = g.conjugacy_classes();
    expected.sort();
    let classes = if sorted == expected { Check::pass() } else { Check::fail("classes are not the conjugacy classes") };

    let mut orth = None;
    if classes.passed {
        'rows: for l in 0..t.names.len() {
            for m in 0..t.names.len() {
                let ip = inner_product(t, g, |x| t.value(l, x).unwrap().clone(), m).expect("classes cover G");
                let want = if l == m { Scalar::one() } else { Scalar::zero() };
                if ip != want {
                    orth = Some(format!("<{}, {}> = {ip}", t.names[l], t.names[m]));
                    break 'rows;
                }
            }
        }
    } else {
        orth = Some("classes invalid".into());
    }
    let degrees: Option<Vec<usize>> = (0..t.names.len()).map(|l| t.degree(l)).collect();
    let degree_sum_value = degrees.as_ref().map(|d| d.iter().map(|x| x * x).sum());
    let degree_sum = match degree_sum_value {
        Some(s) if s == g.order() => Check::pass(),
        Some(s) => Check::fail(format!("sum of squared degrees is {s}, |G| = {}", g.order())),
        None => Check::fail("a degree is not a nonnegative integer"),
    };

    let mut irrep = None;
    'irreps: for l in 0..t.names.len() {
        let Some(ms) = t.irrep(l) else { continue };
        if ms.len() != g.order() {
            irrep = Some(format!("{}: {} matrices", t.names[l], ms.len()));
            break;
        }
        for a in 0..g.order() {
            if Some(&ms[a].trace()) != t.value(l, a) {
                irrep = Some(format!("{}: trace at {} differs from the character", t.names[l], g.names()[a]));
                break 'irreps;
            }
            for b in 0..g.order() {
                if ms[g.mul(a, b)] != ms[a].mul(&ms[b]) {
                    irrep = Some(format!("{}: not multiplicative at ({}, {})", t.names[l], g.names()[a], g.names()[b]));
                    break 'irreps;
                }
            }
        }
    }

    let rep_multiplicities = rep.filter(|_| classes.passed).map(|r| {
        let mut bad = None;
        'deg: for n in 0..r.degree_dims.len() {
            for l in 0..t.names.len() {
                let m = inner_product(t, g, |x| r.block_trace(x, n), l).expect("classes cover G");
                if as_count(&m).is_none() {
                    bad = Some(format!("multiplicity of {} in degree {n} is {m}", t.names[l]));
                    break 'deg;
                }
            }
        }
        Check::from_witness(bad)
    });

    CharacterReport {
        classes,
        orthogonality: Check::from_witness(orth),
        degree_sum,
        degree_sum_value,
        irrep_matrices: Check::from_witness(irrep),
        rep_multiplicities,
    }
}

fn check_conductor(t: &CharacterTable, rep: &FinGroupRep) -> Result<(), SwError> {
    let needed = t.conductor();
    if lcm_conductor(needed, rep.conductor) != rep.conductor {
        return Err(SwError::ConductorTooSmall { needed, available: rep.conductor });
    }
    Ok(())
}

/// `P_λ = (d_λ/|G|) Σ_g χ_λ(g⁻¹) ρ(g)`, block diagonal by degree.
pub fn isotypic_projector(t: &CharacterTable, rep: &FinGroupRep, l: usize) -> Result<Matrix, SwError> {
    check_conductor(t, rep)?;
    let g = &rep.group;
    let d = t.degree(l).ok_or_else(|| SwError::InvalidTable(format!("degree of {}", t.names[l])))?;
    let n = rep.dim();
    let mut p = Matrix::zeros(n, n);
    for x in 0..g.order() {
        let c = t.value(l, g.inverse(x)).ok_or_else(|| SwError::InvalidTable("classes do not cover G".into()))?;
        p.add_scaled(c, rep.matrix(x));
    }
    Ok(p.scale(&Scalar::from_ratio(d as i64, g.order() as i64)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectorChecks {
    pub idempotent: Check,
    pub orthogonal: Check,
    pub commutes: Check,
    pub complete: Check,
}

impl ProjectorChecks {
    pub fn passed(&self) -> bool {
        self.idempotent.passed && self.orthogonal.passed && self.commutes.passed && self.complete.passed
    }
}

pub fn verify_projectors(t: &CharacterTable, rep: &FinGroupRep) -> Result<ProjectorChecks, SwError> {
    let ps: Vec<Matrix> = (0..t.names.len()).map(|l| isotypic_projector(t, rep, l)).collect::<Result<_, _>>()?;
    let n = rep.dim();
    let names = &t.names;
    let idempotent = (0..ps.len()).find(|&l| ps[l].mul(&ps[l]) != ps[l]).map(|l| format!("P_{} is not idempotent", names[l]));
    let mut orthogonal = None;
    'o: for l in 0..ps.len() {
        for m in 0..ps.len() {
            if l != m && !ps[l].mul(&ps[m]).is_zero() {
                orthogonal = Some(format!("P_{} P_{} ≠ 0", names[l], names[m]));
                break 'o;
            }
        }
    }
    let mut commutes = None;
    'c: for (l, p) in ps.iter().enumerate() {
        for x in 0..rep.group.order() {
            if p.mul(rep.matrix(x)) != rep.matrix(x).mul(p) {
                commutes = Some(format!("P_{} and {}", names[l], rep.group.names()[x]));
                break 'c;
            }
        }
    }
    let mut sum = Matrix::zeros(n, n);
    for p in &ps {
        sum.add_scaled(&Scalar::one(), p);
    }
    let complete = (sum != Matrix::identity(n)).then(|| "Σ P_λ ≠ Id".to_string());
    Ok(ProjectorChecks {
        idempotent: Check::from_witness(idempotent),
        orthogonal: Check::from_witness(orthogonal),
        commutes: Check::from_witness(commutes),
        complete: Check::from_witness(complete),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotype {
    pub name: String,
    pub degree: usize,
    /// Multiplicity of `λ` in each graded piece.
    pub multiplicities: Vec<usize>,
    /// `dim M^λ ∩ A_n` for each `n`.
    pub dims: Vec<usize>,
    pub component: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicDecomposition {
    pub degree_dims: Vec<usize>,
    pub isotypes: Vec<Isotype>,
}

impl IsotypicDecomposition {
    /// `Σ_λ d_λ · mult_λ(n) = dim A_n` and the projector images match.
    pub fn bookkeeping_holds(&self) -> bool {
        (0..self.degree_dims.len()).all(|n| {
            self.isotypes.iter().map(|i| i.degree * i.multiplicities[n]).sum::<usize>() == self.degree_dims[n]
                && self.isotypes.iter().all(|i| i.dims[n] == i.degree * i.multiplicities[n])
        })
    }
}

pub fn decompose(t: &CharacterTable, rep: &FinGroupRep) -> Result<IsotypicDecomposition, SwError> {
    check_conductor(t, rep)?;
    let g = &rep.group;
    let n = rep.dim();
    let mut isotypes = Vec::with_capacity(t.names.len());
    for l in 0..t.names.len() {
        let p = isotypic_projector(t, rep, l)?;
        let degree = t.degree(l).expect("projector checked the degree");
        let mut multiplicities = Vec::new();
        let mut dims = Vec::new();
        for k in 0..rep.degree_dims.len() {
            let m = inner_product(t, g, |x| rep.block_trace(x, k), l).expect("classes cover G");
            multiplicities.push(as_count(&m).ok_or_else(|| {
                SwError::InvalidTable(format!("multiplicity of {} in degree {k} is {m}", t.names[l]))
            })?);
            let idx: Vec<usize> = rep.degree_indices(k).collect();
            dims.push(p.submatrix(&idx, &idx).rank());
        }
        let component = Subspace::span(n, (0..n).map(|c| p.column(c)));
        isotypes.push(Isotype { name: t.names[l].clone(), degree, multiplicities, dims, component });
    }
    Ok(IsotypicDecomposition { degree_dims: rep.degree_dims.clone(), isotypes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySpace {
    /// `Hom_G(W_λ, A_n)` as vectors of `dim A_n × d_λ` matrix entries, row-major.
    pub per_degree: Vec<Subspace>,
    /// Images `f(w₁)` of the first basis vector of `W_λ`, in the coordinates of `A_{≤D}`.
    pub highest_vectors: Subspace,
    pub matches_characters: bool,
}

impl MultiplicitySpace {
    pub fn dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(Subspace::dim).collect()
    }
}

/// Solves `f ρ_W(g) = ρ_A(g) f` degree by degree.
pub fn multiplicity_space(t: &CharacterTable, rep: &FinGroupRep, l: usize) -> Result<MultiplicitySpace, SwError> {
    check_conductor(t, rep)?;
    let w = t.irrep(l).ok_or_else(|| SwError::MatricesRequired(t.names[l].clone()))?;
    let g = &rep.group;
    let d = w[0].rows();
    let total = rep.dim();
    let mut per_degree = Vec::new();
    let mut highest = Vec::new();
    let decomposition = decompose(t, rep)?;
    let expected = &decomposition.isotypes[l].multiplicities;
    for k in 0..rep.degree_dims.len() {
        let idx: Vec<usize> = rep.degree_indices(k).collect();
        let m = idx.len();
        let mut rows: Vec<SparseRow> = Vec::new();
        for x in 0..g.order() {
            let a = rep.matrix(x).submatrix(&idx, &idx);
            for r in 0..m {
                for c in 0..d {
                    let mut acc: std::collections::BTreeMap<usize, Scalar> = std::collections::BTreeMap::new();
                    for q in 0..d {
                        *acc.entry(r * d + q).or_default() += w[x].get(q, c);
                    }
                    for q in 0..m {
                        *acc.entry(q * d + c).or_default() -= a.get(r, q);
                    }
                    let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                    rows.push(row);
                }
            }
        }
        let space = kernel_of_rows(m * d, rows);
        for f in space.basis() {
            let mut v = vec![Scalar::zero(); total];
            for (r, &i) in idx.iter().enumerate() {
                v[i] = f[r * d].clone();
            }
            highest.push(v);
        }
        per_degree.push(space);
    }
    let matches_characters = per_degree.iter().map(Subspace::dim).eq(expected.iter().copied());
    Ok(MultiplicitySpace { per_degree, highest_vectors: Subspace::span(total, highest), matches_characters })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutantReport {
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Samples that are not fixed by `G`; their failures are expected.
    pub non_invariant_samples: Vec<String>,
}

/// `[ρ(g), ∂ᵏu/k!] = 0` within the cap for every sample `u` and `k ≤ order`.
pub fn check_commutant(rep: &FinGroupRep, samples: &[Poly], order: usize) -> CommutantReport {
    let act = &rep.action;
    let a = act.backend();
    let fixed = fixed_subspace(act).subspace;
    let basis = act.basis();
    let mut failures = Vec::new();
    let mut non_invariant_samples = Vec::new();
    let mut checked = 0;
    for u in samples {
        if !basis.coordinates(u).is_some_and(|c| fixed.contains(&c)) {
            non_invariant_samples.push(a.format(u));
        }
        for (k, duk) in a.exp_coefficients(u, order).iter().enumerate() {
            if duk.degree().map_or(true, |dg| dg > basis.cap()) {
                continue;
            }
            checked += 1;
            let c = multiplier_commutes(act, duk);
            if let Some(w) = c.witness {
                failures.push(format!("k = {k}: {w}"));
            }
        }
    }
    CommutantReport { passed: failures.is_empty(), checked, failures, non_invariant_samples }
}

/// Basis of `V^G` within the cap as polynomials.
pub fn fixed_samples(rep: &FinGroupRep) -> Vec<Poly> {
    let basis = rep.action.basis();
    fixed_subspace(&rep.action).subspace.basis().iter().map(|v| basis.poly(v)).collect()
}

/// Mode operators `u ↦ (∂ᵏv/k!)·u` on `A_{≤D}` for `v` in `V^G` and `k ≤ order`,
/// dropped when some product leaves the cap.
fn mode_operators(rep: &FinGroupRep, order: usize) -> Vec<(String, Matrix)> {
    let act = &rep.action;
    let a = act.backend();
    let basis = act.basis();
    let mut out = Vec::new();
    for v in fixed_samples(rep) {
        for (k, dvk) in a.exp_coefficients(&v, order).iter().enumerate() {
            if dvk.is_zero() {
                continue;
            }
            let Some(dg) = dvk.degree() else { continue };
            if dg > basis.cap() {
                continue;
            }
            let domain = a.monomial_basis(basis.cap() - dg);
            let m = multiplication_matrix(dvk, &domain, &basis).expect("products stay within the cap");
            let mut full = Matrix::zeros(basis.len(), basis.len());
            for c in 0..domain.len() {
                for r in 0..basis.len() {
                    full.set(r, c, m.get(r, c).clone());
                }
            }
            out.push((format!("{} at k = {k}", a.format(&v)), full));
        }
    }
    out
}

pub const DEFAULT_MODE_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    pub reachable: Subspace,
    pub within_isotype: bool,
    pub equals_isotype: bool,
    pub applications: usize,
}

/// The smallest subspace containing `seed` and closed under the modes of `V^G`,
/// each truncated to kill the monomials it would push past the cap.
pub fn cyclic_reachability(
    t: &CharacterTable,
    rep: &FinGroupRep,
    l: usize,
    seed: &[Scalar],
    order: usize,
    budget: usize,
) -> Result<Reachability, SwError> {
    if seed.iter().all(Scalar::is_zero) {
        return Err(SwError::ZeroSeed);
    }
    let n = rep.dim();
    let ops = mode_operators(rep, order);
    let mut reach = Subspace::span(n, [seed.to_vec()]);
    let mut frontier = vec![seed.to_vec()];
    let mut applications = 0;
    while let Some(v) = frontier.pop() {
        for (_, m) in &ops {
            applications += 1;
            if applications > budget {
                return Err(SwError::BudgetExceeded { budget });
            }
            let w = m.apply(&v);
            if !reach.contains(&w) {
                reach = reach.sum(&Subspace::span(n, [w.clone()]));
                frontier.push(w);
            }
        }
    }
    let component = decompose(t, rep)?.isotypes.swap_remove(l).component;
    let within_isotype = reach.is_subspace_of(&component);
    Ok(Reachability { equals_isotype: within_isotype && reach.dim() == component.dim(), reachable: reach, within_isotype, applications })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistinguishedBy {
    DegreewiseDims,
    ModeFingerprint,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinction {
    pub verdict: DistinguishedBy,
    pub dims: (Vec<usize>, Vec<usize>),
    pub fingerprints: (Vec<String>, Vec<String>),
}

/// Compares multiplicity spaces first by the multiset of their graded
/// dimensions, then by normalized traces `tr(X P)/d` over the operators
/// `X = (∂ᵏv/k!)·∂ʲ` with `v ∈ V^G`, `k ≤ order`, `j ≤ 2`.
pub fn distinguish_isotypes(
    t: &CharacterTable,
    rep: &FinGroupRep,
    decomp: &IsotypicDecomposition,
    l: usize,
    m: usize,
    order: usize,
) -> Result<Distinction, SwError> {
    let sorted = |i: usize| {
        let mut v = decomp.isotypes[i].multiplicities.clone();
        v.sort_unstable();
        v
    };
    let dims = (decomp.isotypes[l].multiplicities.clone(), decomp.isotypes[m].multiplicities.clone());
    if sorted(l) != sorted(m) {
        return Ok(Distinction { verdict: DistinguishedBy::DegreewiseDims, dims, fingerprints: (vec![], vec![]) });
    }
    let act = &rep.action;
    let basis = act.basis();
    let a = act.backend();
    let n = basis.len();
    let dmat = a.derivation_matrix(&basis, &basis).unwrap_or_else(|| {
        // truncate ∂ to the cap
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let d = a.derive(&basis.element(i));
                let kept = Poly::from_terms(
                    a.nvars(),
                    d.terms().filter(|(mono, _)| basis.index_of(mono).is_some()).map(|(x, c)| (x.clone(), c.clone())),
                );
                basis.coordinates(&kept).expect("kept terms fit")
            })
            .collect();
        Matrix::from_columns(&cols, n)
    });
    let mut powers = vec![Matrix::identity(n)];
    for j in 1..=2 {
        powers.push(powers[j - 1].mul(&dmat));
    }
    let ops = mode_operators(rep, order);
    let fingerprint = |i: usize| -> Result<Vec<Scalar>, SwError> {
        let p = isotypic_projector(t, rep, i)?;
        let scale = Scalar::from_ratio(1, decomp.isotypes[i].degree.max(1) as i64);
        let mut out = Vec::new();
        for (_, x) in &ops {
            for dj in &powers {
                out.push(&x.mul(dj).mul(&p).trace() * &scale);
            }
        }
        Ok(out)
    };
    let (fl, fm) = (fingerprint(l)?, fingerprint(m)?);
    let verdict = if fl != fm { DistinguishedBy::ModeFingerprint } else { DistinguishedBy::Inconclusive };
    let show = |v: Vec<Scalar>| v.iter().map(ToString::to_string).collect();
    Ok(Distinction { verdict, dims, fingerprints: (show(fl), show(fm)) })
}

#[cfg(test)]
mod tests;
