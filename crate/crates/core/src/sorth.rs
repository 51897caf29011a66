//! Strong orthogonality, the Wolf sequence and the 2-rank.
//!
//! A Wolf step takes an irreducible component, adjoins the negative of its
//! highest root and deletes the unique vertex joined to it. Components of
//! type `A_s` with `s ≥ 2` have two such vertices and end their branch.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{diagram_type, Family, RootSystem};

/// A set of pairwise strongly orthogonal roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SOSet {
    pub roots: Vec<usize>,
}

/// A connected piece of a Dynkin diagram whose vertices are roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub roots: Vec<usize>,
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// Whether an elementary operation on this component is a no-op.
    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }
}

/// One elementary operation of a chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub component: Component,
    /// Highest root of the component; its negative is the affine vertex.
    pub highest: usize,
    pub deleted: usize,
    pub result: Vec<Component>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramChain {
    pub steps: Vec<ChainStep>,
    /// Components of type `A_s`, `s ≥ 2`, where a branch stopped.
    pub halted: Vec<Component>,
    pub so_set: SOSet,
}

/// Neither `a + b` nor `a − b` is a root. False for `b = ±a`.
pub fn is_strongly_orthogonal(rs: &RootSystem, a: usize, b: usize) -> bool {
    a != b && rs.neg(a) != b && rs.sum(a, b).is_none() && rs.difference(a, b).is_none()
}

fn ensure_crystallographic(rs: &RootSystem) -> Result<()> {
    if rs.ctype.is_crystallographic() {
        Ok(())
    } else {
        Err(Error::NotCrystallographic(rs.ctype.name()))
    }
}

/// Splits a set of linearly independent roots into connected components.
pub fn components(rs: &RootSystem, roots: &[usize]) -> Vec<Component> {
    let k = roots.len();
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut part = vec![s];
        let mut i = 0;
        while i < part.len() {
            let x = part[i];
            for y in 0..k {
                if !seen[y] && !rs.orthogonal(roots[x], roots[y]) {
                    seen[y] = true;
                    part.push(y);
                }
            }
            i += 1;
        }
        part.sort_unstable();
        let members: Vec<usize> = part.iter().map(|&x| roots[x]).collect();
        let cartan: Vec<Vec<i64>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| rs.cartan_integer(a, b).unwrap().to_i64().unwrap()).collect())
            .collect();
        let (family, rank) = diagram_type(&cartan, true);
        out.push(Component { roots: members, family, rank });
    }
    out
}

/// Highest root of the subsystem spanned by a component: climb from a
/// vertex by adding vertices while the sum stays a root.
pub fn component_highest_root(rs: &RootSystem, c: &Component) -> usize {
    let mut rho = c.roots[0];
    'climb: loop {
        for &g in &c.roots {
            if let Some(s) = rs.sum(rho, g) {
                rho = s;
                continue 'climb;
            }
        }
        return rho;
    }
}

/// Adjoins the affine vertex to `c`, deletes `vertex` (a root of `c` or the
/// affine vertex itself) and returns the resulting components.
pub fn elementary_operation(rs: &RootSystem, c: &Component, vertex: usize) -> Vec<Component> {
    let affine = rs.neg(component_highest_root(rs, c));
    let mut nodes: Vec<usize> = c.roots.iter().copied().filter(|&x| x != vertex).collect();
    if affine != vertex {
        nodes.push(affine);
    }
    components(rs, &nodes)
}

fn affine_neighbours(rs: &RootSystem, c: &Component, highest: usize) -> Vec<usize> {
    c.roots.iter().copied().filter(|&g| !rs.orthogonal(g, highest)).collect()
}

/// The Wolf chain of the whole diagram.
pub fn wolf_chain(rs: &RootSystem) -> Result<DiagramChain> {
    ensure_crystallographic(rs)?;
    let whole = components(rs, &rs.simple_roots());
    let mut chain = DiagramChain { steps: Vec::new(), halted: Vec::new(), so_set: SOSet { roots: Vec::new() } };
    for c in whole {
        wolf_visit(rs, c, &mut chain);
    }
    Ok(chain)
}

fn wolf_visit(rs: &RootSystem, c: Component, chain: &mut DiagramChain) {
    if c.rank == 1 {
        chain.so_set.roots.push(c.roots[0]);
        return;
    }
    if c.is_type_a() {
        chain.halted.push(c);
        return;
    }
    let hi = component_highest_root(rs, &c);
    let nb = affine_neighbours(rs, &c, hi);
    debug_assert_eq!(nb.len(), 1, "non-A component has a unique affine neighbour");
    let deleted = nb[0];
    let rest: Vec<usize> = c.roots.iter().copied().filter(|&x| x != deleted).collect();
    let mut result = components(rs, &rest);
    result.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.roots[0].cmp(&b.roots[0])));
    let mut shown = result.clone();
    shown.insert(0, components(rs, &[rs.neg(hi)]).remove(0));
    chain.steps.push(ChainStep { component: c, highest: hi, deleted, result: shown });
    chain.so_set.roots.push(hi);
    for r in result {
        wolf_visit(rs, r, chain);
    }
}

/// The strongly orthogonal roots `β₁ = α̃, β₂, …` of the Wolf sequence.
pub fn wolf_sequence(rs: &RootSystem) -> Result<SOSet> {
    Ok(wolf_chain(rs)?.so_set)
}

/// Up to `limit` sets of `size` pairwise strongly orthogonal positive roots.
pub fn max_so_sets(rs: &RootSystem, size: usize, limit: usize) -> Vec<SOSet> {
    let pos: Vec<usize> = (0..rs.num_positive()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    so_search(rs, &pos, size, limit, &mut cur, &mut out);
    out
}

fn so_search(rs: &RootSystem, cand: &[usize], size: usize, limit: usize, cur: &mut Vec<usize>, out: &mut Vec<SOSet>) {
    if out.len() >= limit {
        return;
    }
    if cur.len() == size {
        out.push(SOSet { roots: cur.clone() });
        return;
    }
    if cur.len() + cand.len() < size {
        return;
    }
    for (i, &x) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&y| is_strongly_orthogonal(rs, x, y)).collect();
        cur.push(x);
        so_search(rs, &next, size, limit, cur, out);
        cur.pop();
        if out.len() >= limit {
            return;
        }
    }
}

/// Largest size of a strongly orthogonal set: the Wolf witness when it
/// reaches the rank bound, an exhaustive search otherwise.
pub fn two_rank(rs: &RootSystem) -> Result<usize> {
    let w = wolf_sequence(rs)?.roots.len();
    if w == rs.rank() {
        return Ok(w);
    }
    Ok(exhaustive_two_rank(rs, w))
}

/// Exhaustive maximum starting from a known lower bound.
pub fn exhaustive_two_rank(rs: &RootSystem, lower: usize) -> usize {
    let mut best = lower.max(1);
    while best < rs.rank() && !max_so_sets(rs, best + 1, 1).is_empty() {
        best += 1;
    }
    best
}

/// Unordered triples of mutually orthogonal `A₂` subsystems.
pub fn count_3a2_subsystems(rs: &RootSystem) -> usize {
    let npos = rs.num_positive();
    let mut a2: Vec<[usize; 3]> = Vec::new();
    for a in 0..npos {
        for b in a + 1..npos {
            if let Some(s) = rs.sum(a, b) {
                let mut t = [a, b, s];
                t.sort_unstable();
                a2.push(t);
            }
        }
    }
    a2.sort_unstable();
    a2.dedup();
    let orth = |x: &[usize; 3], y: &[usize; 3]| x.iter().all(|&p| y.iter().all(|&q| rs.orthogonal(p, q)));
    let mut count = 0;
    for i in 0..a2.len() {
        for j in i + 1..a2.len() {
            if !orth(&a2[i], &a2[j]) {
                continue;
            }
            for k in j + 1..a2.len() {
                if orth(&a2[i], &a2[k]) && orth(&a2[j], &a2[k]) {
                    count += 1;
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CoxeterType;

    fn root(rs: &RootSystem, c: &[i64]) -> usize {
        rs.index_of_int(c).unwrap()
    }

    #[test]
    fn c2_short_roots_are_not_strongly_orthogonal() {
        // C₂: α₁ = e₁−e₂ short, α₂ = 2e₂ long; e₁+e₂ = α₁+α₂, 2e₁ = 2α₁+α₂.
        let rs = RootSystem::new(CoxeterType::c(2));
        let (s1, s2) = (root(&rs, &[1, 0]), root(&rs, &[1, 1]));
        assert!(rs.orthogonal(s1, s2));
        assert!(!is_strongly_orthogonal(&rs, s1, s2));
        let (l1, l2) = (root(&rs, &[2, 1]), root(&rs, &[0, 1]));
        assert!(is_strongly_orthogonal(&rs, l1, l2));
        assert!(!is_strongly_orthogonal(&rs, l1, l1));
        assert!(!is_strongly_orthogonal(&rs, l1, rs.neg(l1)));
    }

    #[test]
    fn e7_wolf_sequence() {
        let rs = RootSystem::new(CoxeterType::e(7));
        let w = wolf_sequence(&rs).unwrap().roots;
        let coords: Vec<Vec<i64>> = w.iter().map(|&i| rs.int_coords(i).unwrap()).collect();
        assert_eq!(coords[0], vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(coords[1], vec![0, 1, 1, 2, 2, 2, 1]);
        assert_eq!(coords[2], vec![0, 1, 1, 2, 1, 0, 0]);
        assert_eq!(&w[3..], &[1, 2, 4, 6]);
    }

    #[test]
    fn e8_wolf_sequence() {
        let rs = RootSystem::new(CoxeterType::e(8));
        let w = wolf_sequence(&rs).unwrap().roots;
        assert_eq!(w.len(), 8);
        assert_eq!(rs.int_coords(w[1]).unwrap(), vec![2, 2, 3, 4, 3, 2, 1, 0]);
        assert_eq!(rs.int_coords(w[2]).unwrap(), vec![0, 1, 1, 2, 2, 2, 1, 0]);
        assert_eq!(rs.int_coords(w[3]).unwrap(), vec![0, 1, 1, 2, 1, 0, 0, 0]);
        assert_eq!(&w[4..], &[1, 2, 4, 6]);
    }

    #[test]
    fn wolf_sets_are_strongly_orthogonal() {
        for t in [CoxeterType::b(5), CoxeterType::c(4), CoxeterType::d(6), CoxeterType::f4(), CoxeterType::g2()] {
            let rs = RootSystem::new(t);
            let w = wolf_sequence(&rs).unwrap().roots;
            assert_eq!(w.len(), t.rank, "{t}");
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    assert!(is_strongly_orthogonal(&rs, w[i], w[j]), "{t}");
                    assert!(rs.reflection(w[i]).commutes_with(rs.reflection(w[j])));
                }
            }
        }
    }

    #[test]
    fn elementary_operations_on_extended_diagrams() {
        let rs = RootSystem::new(CoxeterType::e(6));
        let whole = components(&rs, &rs.simple_roots()).remove(0);
        assert_eq!(whole.name(), "E6");
        let parts = elementary_operation(&rs, &whole, 3);
        let mut names: Vec<String> = parts.iter().map(|c| c.name()).collect();
        names.sort();
        assert_eq!(names, ["A2", "A2", "A2"]);

        let rs = RootSystem::new(CoxeterType::c(5));
        let whole = components(&rs, &rs.simple_roots()).remove(0);
        let mut n1: Vec<String> = elementary_operation(&rs, &whole, 0).iter().map(|c| c.name()).collect();
        n1.sort();
        assert_eq!(n1, ["A1", "C4"]);
        let mut n2: Vec<String> = elementary_operation(&rs, &whole, 1).iter().map(|c| c.name()).collect();
        n2.sort();
        assert_eq!(n2, ["C2", "C3"]);
    }

    #[test]
    fn two_ranks() {
        for r in 1..=8 {
            assert_eq!(two_rank(&RootSystem::new(CoxeterType::a(r))).unwrap(), r.div_ceil(2), "A{r}");
        }
        assert_eq!(two_rank(&RootSystem::new(CoxeterType::d(5))).unwrap(), 4);
        assert_eq!(two_rank(&RootSystem::new(CoxeterType::e(6))).unwrap(), 4);
        assert_eq!(two_rank(&RootSystem::new(CoxeterType::e(8))).unwrap(), 8);
        assert!(two_rank(&RootSystem::new(CoxeterType::h(3))).is_err());
    }

    #[test]
    fn so_set_searches() {
        let rs = RootSystem::new(CoxeterType::a(3));
        let sets = max_so_sets(&rs, 2, 100);
        assert_eq!(sets.len(), 3);
        assert!(max_so_sets(&RootSystem::new(CoxeterType::e(6)), 5, 1).is_empty());
    }

    #[test]
    fn e6_has_forty_3a2_subsystems() {
        assert_eq!(count_3a2_subsystems(&RootSystem::new(CoxeterType::e(6))), 40);
    }
}
