//! Small finite groups given by multiplication tables, and projective
//! systems of them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group on the elements `0..order`, with a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) {
            return Err(Error::InvalidGroup("table is not a closed square table".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidGroup("element names must be distinct".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::InvalidGroup(format!("`{}` has no inverse", names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self {
            names,
            table,
            identity,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1, "g")
    }

    /// `ℤ/n` with elements `1, g, g^2, …`.
    pub fn cyclic(n: usize, generator: &str) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a·|other| + b` and is named
    /// by joining the non-identity names with `*`.
    pub fn product(&self, other: &Self) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let names = (0..n)
            .map(|k| {
                let (a, b) = (k / m, k % m);
                match (a == self.identity, b == other.identity) {
                    (true, true) => "1".to_string(),
                    (false, true) => self.names[a].clone(),
                    (true, false) => other.names[b].clone(),
                    (false, false) => format!("{}*{}", self.names[a], other.names[b]),
                }
            })
            .collect();
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        Self::new(names, table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group has inverses")
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGroupElement(name.to_string()))
    }

    /// Product of a word of elements, left to right.
    pub fn word(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &g| self.mul(acc, g))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(a) = queue.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push(b);
                }
            }
        }
        (0..self.order()).filter(|&a| seen[a]).collect()
    }

    /// Whether `map: self → target` respects multiplication.
    pub fn is_homomorphism(&self, target: &Self, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < target.order())
            && (0..self.order()).all(|a| {
                (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }
}

/// A finite projective system `G_0 ← G_1 ← …` with surjections
/// `s_{n+1}: G_{n+1} → G_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSystem {
    levels: Vec<FiniteGroup>,
    /// `epis[n]` maps `levels[n + 1]` onto `levels[n]`.
    epis: Vec<Vec<usize>>,
}

impl GroupSystem {
    pub fn new(levels: Vec<FiniteGroup>, epis: Vec<Vec<usize>>) -> Result<Self> {
        if levels.is_empty() || epis.len() + 1 != levels.len() {
            return Err(Error::InvalidGroup(
                "need one surjection between consecutive levels".into(),
            ));
        }
        for (n, s) in epis.iter().enumerate() {
            let (src, dst) = (&levels[n + 1], &levels[n]);
            if !src.is_homomorphism(dst, s) {
                return Err(Error::InvalidGroup(format!(
                    "map from level {} to level {n} is not a homomorphism",
                    n + 1
                )));
            }
            let mut hit = vec![false; dst.order()];
            for &x in s {
                hit[x] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::InvalidGroup(format!(
                    "map from level {} to level {n} is not surjective",
                    n + 1
                )));
            }
        }
        Ok(Self { levels, epis })
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    pub fn epi(&self, n: usize) -> &[usize] {
        &self.epis[n]
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_four_from_product() {
        let v = FiniteGroup::cyclic(2, "a").product(&FiniteGroup::cyclic(2, "b"));
        assert_eq!(v.order(), 4);
        assert_eq!(v.names(), ["1", "b", "a", "a*b"]);
        let ab = v.element("a*b").unwrap();
        assert_eq!(v.mul(ab, ab), v.identity());
        assert_eq!(v.generated(&[ab]).len(), 2);
    }

    #[test]
    fn rejects_non_groups() {
        let names = vec!["1".to_string(), "a".to_string()];
        assert!(FiniteGroup::new(names.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::new(names, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn projection_system() {
        let z2 = FiniteGroup::cyclic(2, "a");
        let v = z2.product(&FiniteGroup::cyclic(2, "b"));
        let proj: Vec<usize> = (0..4).map(|k| k / 2).collect();
        assert!(GroupSystem::new(vec![z2.clone(), v.clone()], vec![proj]).is_ok());
        let not_onto = vec![0; 4];
        assert!(GroupSystem::new(vec![z2, v], vec![not_onto]).is_err());
    }

    #[test]
    fn cyclic_three() {
        let c = FiniteGroup::cyclic(3, "g");
        let g = c.element("g").unwrap();
        assert_eq!(c.word(&[g, g, g]), c.identity());
        assert_eq!(c.inverse(g), c.element("g^2").unwrap());
    }
}
