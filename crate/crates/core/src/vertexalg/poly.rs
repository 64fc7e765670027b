//! Sparse multivariate polynomials over [`Scalar`] and degree-truncated monomial bases.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Exponent vector. Ordered degree-lexicographically: total degree first,
/// then exponent vectors in descending lexicographic order, so for two
/// variables the order is `1, x, y, x², xy, y², …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono = m.format(names);
                match (mono.as_str(), c.is_one(), (-c).is_one()) {
                    ("1", _, _) => format!("{c}"),
                    (_, true, _) => mono,
                    (_, _, true) => format!("-{mono}"),
                    _ => format!("({c})*{mono}"),
                }
            })
            .join(" + ")
            .replace("+ -", "- ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        f.write_str(&self.format(&names))
    }
}

/// The monomials of total degree at most `cap`, in increasing deglex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    cap: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

fn exponents_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for rest in exponents_of_degree(nvars - 1, degree - first) {
            let mut e = vec![first];
            e.extend(rest);
            out.push(e);
        }
    }
    out
}

impl MonomialBasis {
    pub fn new(nvars: usize, cap: u32) -> Self {
        let monomials: Vec<Monomial> =
            (0..=cap).flat_map(|d| exponents_of_degree(nvars, d)).map(Monomial).collect();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { nvars, cap, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn element(&self, i: usize) -> Poly {
        Poly::term(self.monomials[i].clone(), Scalar::one())
    }

    /// Indices of the monomials of exactly the given degree.
    pub fn degree_range(&self, degree: u32) -> std::ops::Range<usize> {
        let start = self.monomials.iter().position(|m| m.degree() >= degree).unwrap_or(self.len());
        let end = self.monomials.iter().position(|m| m.degree() > degree).unwrap_or(self.len());
        start..end
    }

    /// Coordinates of `p`, or `None` if `p` has a term beyond the cap.
    pub fn coordinates(&self, p: &Poly) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.index_of(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly(&self, coords: &[Scalar]) -> Poly {
        Poly::from_terms(
            self.nvars,
            coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.monomials[i].clone(), c.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order_in_two_variables() {
        let b = MonomialBasis::new(2, 2);
        let names = ["x".to_string(), "y".to_string()];
        let shown: Vec<String> = b.monomials().iter().map(|m| m.format(&names)).collect();
        assert_eq!(shown, ["1", "x", "y", "x^2", "x*y", "y^2"]);
        assert_eq!(b.degree_range(1), 1..3);
    }

    #[test]
    fn basis_sizes_are_binomial() {
        assert_eq!(MonomialBasis::new(1, 6).len(), 7);
        assert_eq!(MonomialBasis::new(3, 2).len(), 10);
        assert_eq!(MonomialBasis::new(2, 4).len(), 15);
    }

    #[test]
    fn arithmetic_cancels_terms() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let d = x.sub(&y);
        let sq = d.mul(&d);
        assert_eq!(sq.coefficient(&Monomial(vec![1, 1])), Scalar::from_int(-2));
        assert!(d.sub(&d).is_zero());
        assert_eq!(sq.degree(), Some(2));
    }
}
