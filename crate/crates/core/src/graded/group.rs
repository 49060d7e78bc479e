use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

pub type GroupRef = Arc<FiniteGroup>;

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidInput("group table must be a square table on 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidInput("group table has no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Whether `f` (indexed by elements of `self`) is a homomorphism into `to`.
    pub fn is_hom(&self, to: &FiniteGroup, f: &[usize]) -> bool {
        let n = self.order();
        f.len() == n
            && f.iter().all(|&v| v < to.order())
            && (0..n).all(|a| (0..n).all(|b| f[self.mul(a, b)] == to.mul(f[a], f[b])))
    }
}

/// A finite right `G`-set: `action[x][g] = x·g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: GroupRef,
    action: Vec<Vec<usize>>,
}

pub type GSetRef = Arc<GSet>;

impl GSet {
    pub fn new(group: GroupRef, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = action.len();
        let g = group.order();
        if action.iter().any(|r| r.len() != g || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidInput("action table must be |X| × |G| with values in X".into()));
        }
        for (x, row) in action.iter().enumerate() {
            if row[group.identity()] != x {
                return Err(Error::InvalidInput(format!("x·e ≠ x for x = {x}")));
            }
            for a in 0..g {
                for b in 0..g {
                    if action[row[a]][b] != row[group.mul(a, b)] {
                        return Err(Error::InvalidInput(format!("(x·g)·h ≠ x·(gh) at x = {x}, g = {a}, h = {b}")));
                    }
                }
            }
        }
        Ok(GSet { group, action })
    }

    /// `n` points, each fixed by `G`.
    pub fn fixed_points(group: GroupRef, n: usize) -> Self {
        let action = (0..n).map(|x| vec![x; group.order()]).collect();
        GSet { group, action }
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: GroupRef) -> Self {
        let action = group.table().to_vec();
        GSet { group, action }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }
    pub fn len(&self) -> usize {
        self.action.len()
    }
    pub fn is_empty(&self) -> bool {
        self.action.is_empty()
    }
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }
    /// The induced left action `g·x = x·g⁻¹`.
    pub fn left_act(&self, g: usize, x: usize) -> usize {
        self.action[x][self.group.inv(g)]
    }
}
