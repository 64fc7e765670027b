//! Finite groups given by multiplication tables.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::HopfError;

/// A finite group as a Cayley table with the identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Validates the table and moves the identity to index 0.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, HopfError> {
        let n = table.len();
        let bad = |m: String| Err(HopfError::InvalidGroupTable(m));
        if n == 0 {
            return bad("empty table".into());
        }
        if names.len() != n {
            return bad(format!("{} names for {n} elements", names.len()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("table is not a square array of element indices".into());
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity element".into());
        };
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return bad(format!("element {} has no inverse", names[a]));
            }
        }
        for (a, b, c) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((a, b), c)| (a, b, c)) {
            if table[table[a][b]][c] != table[a][table[b][c]] {
                return bad(format!("({0}{1}){2} != {0}({1}{2})", names[a], names[b], names[c]));
            }
        }
        // relabel by swapping the identity into position 0
        let perm: Vec<usize> = (0..n).map(|i| if i == 0 { e } else if i == e { 0 } else { i }).collect();
        let new_names = perm.iter().map(|&i| names[i].clone()).collect();
        let new_table = (0..n)
            .map(|a| (0..n).map(|b| perm[table[perm[a]][perm[b]]]).collect())
            .collect();
        Ok(GroupTable { names: new_names, table: new_table })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { names, table }
    }

    /// Direct product with elements `(a, b)` indexed `a * |other| + b`.
    pub fn product(&self, other: &GroupTable) -> Self {
        let m = other.order();
        let names = self
            .names
            .iter()
            .cartesian_product(&other.names)
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        GroupTable { names, table }
    }

    pub fn klein() -> Self {
        let c2 = Self::cyclic(2);
        let k = c2.product(&c2);
        GroupTable {
            names: vec!["e".into(), "b".into(), "a".into(), "ab".into()],
            table: k.table,
        }
    }

    /// Symmetric group on three letters, elements as images of (1 2 3).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = (0..3).permutations(3).map(|p| [p[0], p[1], p[2]]).collect();
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let names = perms.iter().map(|p| format!("[{}{}{}]", p[0] + 1, p[1] + 1, p[2] + 1)).collect();
        let table = perms.iter().map(|p| perms.iter().map(|q| index(compose(p, q))).collect()).collect();
        GroupTable { names, table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("validated table")
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Conjugacy classes, each sorted, in order of their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, a), self.inverse(g)))
                .sorted()
                .dedup()
                .collect();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }

    /// Brute-force isomorphism test over identity-fixing bijections.
    pub fn is_isomorphic(&self, other: &GroupTable) -> bool {
        let n = self.order();
        if n != other.order() || self.is_abelian() != other.is_abelian() {
            return false;
        }
        (1..n).permutations(n - 1).any(|p| {
            let f = |i: usize| if i == 0 { 0 } else { p[i - 1] };
            (0..n).all(|a| (0..n).all(|b| f(self.mul(a, b)) == other.mul(f(a), f(b))))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_are_valid() {
        for g in [GroupTable::cyclic(4), GroupTable::klein(), GroupTable::symmetric3()] {
            let again = GroupTable::new(g.names.clone(), g.table.clone()).unwrap();
            assert_eq!(again, g);
        }
        assert!(!GroupTable::symmetric3().is_abelian());
        assert_eq!(GroupTable::symmetric3().conjugacy_classes().len(), 3);
    }

    #[test]
    fn identity_is_moved_first() {
        let names = vec!["g".to_string(), "e".to_string()];
        let g = GroupTable::new(names, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.names()[0], "e");
        assert_eq!(g, GroupTable::cyclic(2));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // a Latin square with identity 0 that is not associative
        let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        let names = vec!["e".into(), "a".into(), "b".into()];
        assert!(matches!(GroupTable::new(names, t), Err(HopfError::InvalidGroupTable(_))));
    }

    #[test]
    fn isomorphism_classes_of_order_four() {
        assert!(GroupTable::klein().is_isomorphic(&GroupTable::cyclic(2).product(&GroupTable::cyclic(2))));
        assert!(!GroupTable::klein().is_isomorphic(&GroupTable::cyclic(4)));
    }
}
