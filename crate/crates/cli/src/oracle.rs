//! Exhaustive census of the abelian subgroups of a small group, computed from
//! its full multiplication table. Shares nothing with the Sylow-based search
//! beyond the element list.

use std::collections::HashSet;

use coxtori::permgroup::{Materialized, PermGroup};

/// Largest group the census accepts.
pub const ORACLE_CAP: u128 = 5_000;

pub struct Census {
    pub max_order: usize,
    /// Each class lists its subgroups as sorted element indices.
    pub classes: Vec<Vec<Vec<u32>>>,
    pub abelian_subgroups: usize,
    pub table: Materialized,
}

pub fn census(w: &PermGroup) -> Option<Census> {
    let table = Materialized::new(w, ORACLE_CAP)?;
    let n = table.len();
    let mul: Vec<u32> = (0..n * n).map(|k| table.mul(k / n, k % n) as u32).collect();
    let m = |a: u32, b: u32| mul[a as usize * n + b as usize];
    let e = table.identity_index() as u32;

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let all: Vec<u32> = (0..n as u32).collect();
    let mut stack = vec![(vec![e], all)];
    seen.insert(vec![e]);
    let mut best: Vec<Vec<u32>> = Vec::new();
    let mut max_order = 0;
    while let Some((a, cent)) = stack.pop() {
        if a.len() > max_order {
            max_order = a.len();
            best.clear();
        }
        if a.len() == max_order {
            best.push(a.clone());
        }
        let inside: HashSet<u32> = a.iter().copied().collect();
        for &x in &cent {
            if inside.contains(&x) {
                continue;
            }
            let mut child = a.clone();
            let mut xk = x;
            while !inside.contains(&xk) {
                child.extend(a.iter().map(|&y| m(xk, y)));
                xk = m(xk, x);
            }
            child.sort_unstable();
            child.dedup();
            if seen.insert(child.clone()) {
                let c2: Vec<u32> = cent.iter().copied().filter(|&y| m(x, y) == m(y, x)).collect();
                stack.push((child, c2));
            }
        }
    }

    let mut remaining: HashSet<Vec<u32>> = best.into_iter().collect();
    let mut classes = Vec::new();
    while let Some(start) = remaining.iter().min().cloned() {
        let mut orbit: HashSet<Vec<u32>> = HashSet::new();
        for g in 0..n {
            let mut c: Vec<u32> = start.iter().map(|&x| table.conj(x as usize, g) as u32).collect();
            c.sort_unstable();
            orbit.insert(c);
        }
        for c in &orbit {
            remaining.remove(c);
        }
        let mut orbit: Vec<Vec<u32>> = orbit.into_iter().collect();
        orbit.sort();
        classes.push(orbit);
    }
    Some(Census { max_order, classes, abelian_subgroups: seen.len(), table })
}

impl Census {
    /// Index of the class containing `h`.
    pub fn class_of(&self, h: &PermGroup) -> Option<usize> {
        let mut elems: Vec<u32> =
            h.elements(ORACLE_CAP).iter().map(|g| self.table.index_of(g).map(|i| i as u32)).collect::<Option<_>>()?;
        elems.sort_unstable();
        self.classes.iter().position(|c| c.binary_search(&elems).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxtori::permgroup::coxeter_group;
    use coxtori::rootsys::{CoxeterType, RootSystem};

    #[test]
    fn s4_census() {
        let w = coxeter_group(&RootSystem::new(CoxeterType::a(3)));
        let c = census(&w).unwrap();
        assert_eq!(c.max_order, 4);
        // C₄, the normal Klein group, and the non-normal Klein groups.
        assert_eq!(c.classes.len(), 3);
        let mut sizes: Vec<usize> = c.classes.iter().map(|k| k.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 3, 3]);
    }
}
