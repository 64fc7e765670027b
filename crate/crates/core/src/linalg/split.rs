//! Primitive idempotents of a commutative split semisimple algebra.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use super::{Matrix, Subspace};
use crate::scalar::{lcm_conductor, Scalar};

const MAX_CANDIDATES: usize = 20_000;
const MAX_DIVISOR_SEARCH: u64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SplitFailure {
    #[error("multiplication by basis element {element} is not semisimple (nilpotent present)")]
    NotSemisimple { element: usize },
    #[error("minimal polynomial of basis element {element} does not split over conductor {conductor}")]
    NotSplit { element: usize, conductor: u32 },
    #[error("root search for basis element {element} exceeds the candidate limit")]
    CandidateLimit { element: usize },
    #[error("structure tensor is not commutative")]
    NotCommutative,
}

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq)]
struct UniPoly(Vec<Scalar>);

impl UniPoly {
    fn trimmed(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::trimmed(out)
    }

    /// Quotient by `t - r`, assuming `r` is a root.
    fn deflate(&self, r: &Scalar) -> UniPoly {
        let n = self.degree();
        let mut q = vec![Scalar::zero(); n];
        let mut carry = Scalar::zero();
        for i in (1..=n).rev() {
            carry = &self.0[i] + &(&carry * r);
            q[i - 1] = carry.clone();
        }
        UniPoly::trimmed(q)
    }

    fn conductor(&self) -> u32 {
        self.0.iter().fold(1, |n, c| lcm_conductor(n, c.conductor()))
    }

    /// Product of all Galois conjugates; has rational coefficients.
    fn norm(&self) -> UniPoly {
        let n = self.conductor();
        if n == 1 {
            return self.clone();
        }
        let mut acc = UniPoly(vec![Scalar::one()]);
        for a in (1..n as i64).filter(|a| a.gcd(&(n as i64)) == 1) {
            let conj = UniPoly(self.0.iter().map(|c| c.galois(a)).collect());
            acc = acc.mul(&conj);
        }
        acc
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > MAX_DIVISOR_SEARCH {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct roots of `f` of the form ±(p/q)·ζ_N^j, together with the
/// cofactor left after removing one copy of each.
fn find_roots(f: &UniPoly, conductor: u32, element: usize) -> Result<(Vec<Scalar>, UniPoly), SplitFailure> {
    let mut roots = Vec::new();
    let mut rest = f.clone();
    if rest.0.first().is_some_and(Scalar::is_zero) {
        roots.push(Scalar::zero());
        rest = UniPoly(rest.0[1..].to_vec());
    }
    let norm = rest.norm();
    let den = norm.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let ints: Vec<BigInt> = norm
        .0
        .iter()
        .map(|c| {
            let r = c.scale_int(&den);
            r.to_rational().map(|q| q.numer().clone()).unwrap_or_default()
        })
        .collect();
    if ints.len() <= 1 {
        return Ok((roots, rest));
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return Err(SplitFailure::CandidateLimit { element });
    };
    let n = conductor as i64;
    let unity: Vec<Scalar> = (0..n).map(|j| Scalar::zeta_pow(conductor, j)).collect();
    let mut moduli: Vec<Scalar> = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = Scalar::from_rational(num_rational::BigRational::new(p.clone(), q.clone()));
            if !moduli.contains(&r) {
                moduli.push(r);
            }
        }
    }
    if moduli.len() * unity.len() * 2 > MAX_CANDIDATES {
        return Err(SplitFailure::CandidateLimit { element });
    }
    for r in &moduli {
        for u in &unity {
            for sign in [1, -1] {
                if rest.degree() == 0 {
                    return Ok((roots, rest));
                }
                let c = if sign == 1 { r * u } else { -(r * u) };
                if roots.contains(&c) {
                    continue;
                }
                if rest.eval(&c).is_zero() {
                    rest = rest.deflate(&c);
                    roots.push(c);
                }
            }
        }
    }
    Ok((roots, rest))
}

fn minimal_polynomial_of_element(mult: &Matrix, unit: &[Scalar], a: &[Scalar]) -> UniPoly {
    let d = unit.len();
    let la = left_multiplication(mult, a);
    let mut powers: Vec<Vec<Scalar>> = vec![unit.to_vec()];
    loop {
        let next = la.apply(powers.last().unwrap());
        let m = Matrix::from_columns(&powers, d);
        if let Some(c) = m.solve(&next) {
            let mut coeffs: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Scalar::one());
            return UniPoly::trimmed(coeffs);
        }
        powers.push(next);
    }
}

/// Matrix of `x ↦ a·x` for the multiplication tensor `mult` (d × d²).
pub(crate) fn left_multiplication(mult: &Matrix, a: &[Scalar]) -> Matrix {
    let d = a.len();
    let mut out = Matrix::zeros(d, d);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for j in 0..d {
            for k in 0..d {
                let c = mult.get(k, i * d + j);
                if !c.is_zero() {
                    out.add_at(k, j, &(ai * c));
                }
            }
        }
    }
    out
}

fn product(mult: &Matrix, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    left_multiplication(mult, a).apply(b)
}

fn cmp_vectors(a: &[Scalar], b: &[Scalar]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp_repr(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Primitive idempotents of the commutative algebra with multiplication
/// tensor `mult` (column `i*d + j` is `b_i b_j`) and unit coordinates `unit`,
/// computed over ℚ(ζ_conductor).
///
/// The result is sorted by coordinate representation.
pub fn split_commutative_algebra(
    mult: &Matrix,
    unit: &[Scalar],
    conductor: u32,
) -> Result<Vec<Vec<Scalar>>, SplitFailure> {
    let d = unit.len();
    assert_eq!((mult.rows(), mult.cols()), (d, d * d), "multiplication tensor has wrong shape");
    for i in 0..d {
        for j in i + 1..d {
            if mult.column(i * d + j) != mult.column(j * d + i) {
                return Err(SplitFailure::NotCommutative);
            }
        }
    }
    let mut spaces = vec![Subspace::full(d)];
    for i in 0..d {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let b = super::unit_vector(d, i);
        let f = minimal_polynomial_of_element(mult, unit, &b);
        let (roots, rest) = find_roots(&f, conductor, i)?;
        if rest.degree() > 0 {
            if roots.iter().any(|r| rest.eval(r).is_zero()) {
                return Err(SplitFailure::NotSemisimple { element: i });
            }
            return Err(SplitFailure::NotSplit { element: i, conductor });
        }
        let li = left_multiplication(mult, &b);
        let eig: Vec<Subspace> = roots
            .iter()
            .map(|r| li.sub(&Matrix::identity(d).scale(r)).kernel())
            .collect();
        spaces = spaces
            .iter()
            .flat_map(|w| eig.iter().map(move |e| w.intersect(e)))
            .filter(|w| !w.is_zero())
            .collect();
    }
    let mut idempotents = Vec::with_capacity(spaces.len());
    for w in &spaces {
        if w.dim() != 1 {
            return Err(SplitFailure::NotSemisimple { element: 0 });
        }
        let v = &w.basis()[0];
        let sq = product(mult, v, v);
        let p = w.pivots()[0];
        // v² = c·v; read c off the pivot coordinate (v[p] = 1)
        let c = sq[p].clone();
        if c.is_zero() {
            return Err(SplitFailure::NotSemisimple { element: p });
        }
        let cinv = c.inv().expect("nonzero");
        idempotents.push(v.iter().map(|x| x * &cinv).collect::<Vec<Scalar>>());
    }
    idempotents.sort_by(|a, b| cmp_vectors(a, b));

    let mut total = vec![Scalar::zero(); d];
    for (a, e) in idempotents.iter().enumerate() {
        for (t, x) in total.iter_mut().zip(e) {
            *t += x;
        }
        for (b, f) in idempotents.iter().enumerate() {
            let ef = product(mult, e, f);
            let ok = if a == b { &ef == e } else { ef.iter().all(Scalar::is_zero) };
            if !ok {
                return Err(SplitFailure::NotSemisimple { element: a });
            }
        }
    }
    if total != unit {
        return Err(SplitFailure::NotSemisimple { element: 0 });
    }
    Ok(idempotents)
}
