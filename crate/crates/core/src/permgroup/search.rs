//! Backtrack searches over a stabilizer chain.
//!
//! A node at depth `L` is a coset `G^{(L)}·t`; every element of it agrees with
//! `t` on the points fixed by `G^{(L)}`, so properties are tested on those
//! points as they become determined.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{orbits_of, Materialized, Perm, PermGroup, DEFAULT_CAP};

/// Per-point data preserved by any element conjugating one subgroup to another.
#[derive(Clone, Debug)]
pub struct PointInvariants {
    /// Hash of the multiset of cycle lengths through the point, over all elements.
    pub inv: Vec<u64>,
    pub orbit_id: Vec<u32>,
    pub orbit_len: Vec<u32>,
}

impl PointInvariants {
    pub fn of(h: &PermGroup) -> PointInvariants {
        let n = h.degree();
        let orbits = orbits_of(n, h.generators());
        let mut orbit_id = vec![0u32; n];
        let mut orbit_len = vec![0u32; n];
        for (k, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_id[x] = k as u32;
                orbit_len[x] = o.len() as u32;
            }
        }
        let mut counts: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        if let Some(m) = Materialized::new(h, DEFAULT_CAP) {
            let mut cyc = vec![0u32; n];
            let mut seen = vec![false; n];
            for g in &m.elements {
                seen.iter_mut().for_each(|s| *s = false);
                for x in 0..n {
                    if seen[x] {
                        continue;
                    }
                    let mut len = 0;
                    let mut y = x;
                    while !seen[y] {
                        seen[y] = true;
                        y = g.image(y);
                        len += 1;
                    }
                    let mut y = x;
                    for _ in 0..len {
                        cyc[y] = len;
                        y = g.image(y);
                    }
                }
                for x in 0..n {
                    let c = &mut counts[x];
                    match c.iter_mut().find(|e| e.0 == cyc[x]) {
                        Some(e) => e.1 += 1,
                        None => c.push((cyc[x], 1)),
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|x| {
                let mut c = counts[x].clone();
                c.sort_unstable();
                let mut hs = DefaultHasher::new();
                orbit_len[x].hash(&mut hs);
                c.hash(&mut hs);
                hs.finish()
            })
            .collect();
        PointInvariants { inv, orbit_id, orbit_len }
    }
}

struct Ctx {
    g: PermGroup,
    /// Depth at which each point becomes determined.
    det_level: Vec<usize>,
    /// Points determined exactly at each depth.
    new_at: Vec<Vec<usize>>,
}

impl Ctx {
    fn new(g: PermGroup) -> Ctx {
        let k = g.levels().len();
        let n = g.degree();
        let mut det_level = vec![usize::MAX; n];
        let mut new_at = vec![Vec::new(); k + 1];
        for l in 0..=k {
            for p in g.fixed_points_at(l) {
                if det_level[p] == usize::MAX {
                    det_level[p] = l;
                    new_at[l].push(p);
                }
            }
        }
        Ctx { g, det_level, new_at }
    }

    fn depth(&self) -> usize {
        self.g.levels().len()
    }
}

trait Prop {
    fn point_ok(&self, _x: usize, _img: usize) -> bool {
        true
    }
    fn check(&mut self, t: &Perm, level: usize, ctx: &Ctx) -> bool;
    fn accept(&mut self, g: &Perm) -> bool;
}

fn dfs<P: Prop>(ctx: &Ctx, prop: &mut P, level: usize, t: &Perm) -> Option<Perm> {
    if level == ctx.depth() {
        return prop.accept(t).then(|| t.clone());
    }
    let lvl = &ctx.g.levels()[level];
    for &delta in &lvl.orbit {
        if let Some(g) = try_branch(ctx, prop, level, t, delta) {
            return Some(g);
        }
    }
    None
}

fn try_branch<P: Prop>(ctx: &Ctx, prop: &mut P, level: usize, t: &Perm, delta: usize) -> Option<Perm> {
    let lvl = &ctx.g.levels()[level];
    if !prop.point_ok(lvl.base, t.image(delta)) {
        return None;
    }
    let t2 = if delta == lvl.base { t.clone() } else { lvl.rep(delta).unwrap().mul(t) };
    if !prop.check(&t2, level + 1, ctx) {
        return None;
    }
    dfs(ctx, prop, level + 1, &t2)
}

/// Preferred base: points with rare invariants first.
fn preferred_base(n: usize, key: impl Fn(usize) -> u64) -> Vec<usize> {
    let keys: Vec<u64> = (0..n).map(&key).collect();
    let mut freq = std::collections::HashMap::new();
    for &k in &keys {
        *freq.entry(k).or_insert(0usize) += 1;
    }
    let mut pts: Vec<usize> = (0..n).collect();
    pts.sort_by_key(|&p| (freq[&keys[p]], keys[p], p));
    pts
}

/// Rebuilds `g`'s chain on `prefix` and drops levels with trivial orbits.
fn search_chain(g: &PermGroup, prefix: &[usize]) -> PermGroup {
    let mut h = g.rebase(prefix);
    h.levels.retain(|l| l.orbit.len() > 1);
    h
}

/// All elements of `G` with the property, given a known subgroup of them.
fn subgroup_search<P: Prop>(ctx: &Ctx, prop: &mut P, known: Vec<Perm>) -> PermGroup {
    let n = ctx.g.degree();
    let base = ctx.g.base();
    let mut k = PermGroup::with_base(n, known, &base);
    let id = Perm::identity(n);
    if !prop.check(&id, 0, ctx) {
        return k;
    }
    for i0 in (0..ctx.depth()).rev() {
        // Identity coset at depth i0: check points determined up to i0.
        let lvl = &ctx.g.levels()[i0];
        let mut done = vec![false; n];
        let kgens = |k: &PermGroup| -> Vec<Perm> { k.levels().get(i0).map(|l| l.gens.clone()).unwrap_or_default() };
        let mark = |done: &mut Vec<bool>, gens: &[Perm], p: usize| {
            for x in super::orbit_of(n, gens, p) {
                done[x] = true;
            }
        };
        mark(&mut done, &kgens(&k), lvl.base);
        for &delta in &lvl.orbit {
            if done[delta] {
                continue;
            }
            match try_branch(ctx, prop, i0, &id, delta) {
                Some(g) => {
                    let mut gens = k.generators().to_vec();
                    gens.push(g);
                    k = PermGroup::with_base(n, gens, &base);
                    mark(&mut done, &kgens(&k), lvl.base);
                }
                None => mark(&mut done, &kgens(&k), delta),
            }
        }
    }
    k
}

struct Centralizing {
    gens: Vec<Perm>,
    invs: Vec<Perm>,
    pi: PointInvariants,
}

impl Prop for Centralizing {
    fn point_ok(&self, x: usize, img: usize) -> bool {
        self.pi.inv[x] == self.pi.inv[img]
    }
    fn check(&mut self, t: &Perm, level: usize, ctx: &Ctx) -> bool {
        for &x in &ctx.new_at[level] {
            let tx = t.image(x);
            if self.pi.inv[x] != self.pi.inv[tx] {
                return false;
            }
            for (h, hi) in self.gens.iter().zip(&self.invs) {
                let hx = h.image(x);
                if ctx.det_level[hx] <= level && h.image(tx) != t.image(hx) {
                    return false;
                }
                let y = hi.image(x);
                if ctx.det_level[y] <= level && h.image(t.image(y)) != tx {
                    return false;
                }
            }
        }
        true
    }
    fn accept(&mut self, g: &Perm) -> bool {
        self.gens.iter().all(|h| h.commutes_with(g))
    }
}

struct Conjugating<'a> {
    from_gens: Vec<Perm>,
    to: &'a PermGroup,
    a: PointInvariants,
    b: PointInvariants,
    map_ab: Vec<u32>,
    map_ba: Vec<u32>,
}

impl Conjugating<'_> {
    fn new<'a>(from: &PermGroup, to: &'a PermGroup, a: PointInvariants, b: PointInvariants) -> Conjugating<'a> {
        let n = from.degree();
        Conjugating {
            from_gens: from.generators().to_vec(),
            to,
            a,
            b,
            map_ab: vec![u32::MAX; n],
            map_ba: vec![u32::MAX; n],
        }
    }
}

impl Prop for Conjugating<'_> {
    fn point_ok(&self, x: usize, img: usize) -> bool {
        self.a.inv[x] == self.b.inv[img]
    }
    fn check(&mut self, t: &Perm, level: usize, ctx: &Ctx) -> bool {
        for &x in &ctx.new_at[level] {
            if self.a.inv[x] != self.b.inv[t.image(x)] {
                return false;
            }
        }
        if ctx.new_at[level].is_empty() {
            return true;
        }
        // Orbits of the source must map bijectively onto orbits of the target.
        self.map_ab.iter_mut().for_each(|v| *v = u32::MAX);
        self.map_ba.iter_mut().for_each(|v| *v = u32::MAX);
        for l in 0..=level {
            for &x in &ctx.new_at[l] {
                let (oa, ob) = (self.a.orbit_id[x], self.b.orbit_id[t.image(x)]);
                let (ma, mb) = (&mut self.map_ab[oa as usize], &mut self.map_ba[ob as usize]);
                if *ma == u32::MAX && *mb == u32::MAX {
                    *ma = ob;
                    *mb = oa;
                } else if *ma != ob || *mb != oa {
                    return false;
                }
            }
        }
        true
    }
    fn accept(&mut self, g: &Perm) -> bool {
        self.from_gens.iter().all(|h| self.to.contains(&h.conj(g)))
    }
}

struct Setwise {
    member: Vec<bool>,
}

impl Prop for Setwise {
    fn point_ok(&self, x: usize, img: usize) -> bool {
        self.member[x] == self.member[img]
    }
    fn check(&mut self, t: &Perm, level: usize, ctx: &Ctx) -> bool {
        ctx.new_at[level].iter().all(|&x| self.member[x] == self.member[t.image(x)])
    }
    fn accept(&mut self, g: &Perm) -> bool {
        (0..g.degree()).all(|x| self.member[x] == self.member[g.image(x)])
    }
}

/// `C_G(H)`.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let pi = PointInvariants::of(h);
    let base = preferred_base(g.degree(), |p| pi.inv[p]);
    let ctx = Ctx::new(search_chain(g, &base));
    let gens = h.generators().to_vec();
    let invs = gens.iter().map(|x| x.inverse()).collect();
    // Generators of H that lie in G centralize H only if H is abelian.
    let known: Vec<Perm> = if h.is_abelian() { gens.clone() } else { Vec::new() };
    let mut prop = Centralizing { gens, invs, pi };
    let known = known.into_iter().filter(|x| g.contains(x)).collect();
    finish(g, subgroup_search(&ctx, &mut prop, known))
}

pub fn centralizer_of_element(g: &PermGroup, x: &Perm) -> PermGroup {
    centralizer(g, &PermGroup::new(g.degree(), vec![x.clone()]))
}

/// `N_G(H)`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    normalizer_with_seed(g, h, Vec::new())
}

/// `N_G(H)` starting from known normalizing elements.
pub fn normalizer_with_seed(g: &PermGroup, h: &PermGroup, seed: Vec<Perm>) -> PermGroup {
    let pi = PointInvariants::of(h);
    let base = preferred_base(g.degree(), |p| pi.inv[p]);
    let ctx = Ctx::new(search_chain(g, &base));
    let mut known: Vec<Perm> = h.generators().iter().filter(|x| g.contains(x)).cloned().collect();
    known.extend(seed);
    let mut prop = Conjugating::new(h, h, pi.clone(), pi);
    finish(g, subgroup_search(&ctx, &mut prop, known))
}

/// Stabilizer of a point set.
pub fn setwise_stabilizer(g: &PermGroup, points: &[usize]) -> PermGroup {
    let mut member = vec![false; g.degree()];
    for &p in points {
        member[p] = true;
    }
    let count = points.len() as u64;
    let base = preferred_base(g.degree(), |p| if member[p] { count } else { u64::MAX - count });
    let ctx = Ctx::new(search_chain(g, &base));
    let mut prop = Setwise { member };
    finish(g, subgroup_search(&ctx, &mut prop, Vec::new()))
}

/// An element `w ∈ G` with `w⁻¹ H₁ w = H₂`, if any.
pub fn are_conjugate(g: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Option<Perm> {
    are_conjugate_with(g, h1, h2, None)
}

/// As [`are_conjugate`], using `N_G(H₂)` when known to cut the first level.
pub fn are_conjugate_with(g: &PermGroup, h1: &PermGroup, h2: &PermGroup, n2: Option<&PermGroup>) -> Option<Perm> {
    if h1.order() != h2.order() {
        return None;
    }
    let (a, b) = (PointInvariants::of(h1), PointInvariants::of(h2));
    let mut ia = a.inv.clone();
    let mut ib = b.inv.clone();
    ia.sort_unstable();
    ib.sort_unstable();
    if ia != ib {
        return None;
    }
    let base = preferred_base(g.degree(), |p| a.inv[p]);
    let ctx = Ctx::new(search_chain(g, &base));
    let mut prop = Conjugating::new(h1, h2, a, b);
    let id = Perm::identity(g.degree());
    if !prop.check(&id, 0, &ctx) {
        return None;
    }
    if ctx.depth() == 0 {
        return prop.accept(&id).then_some(id);
    }
    let lvl = &ctx.g.levels()[0];
    let mut done = vec![false; g.degree()];
    for &delta in &lvl.orbit {
        if done[delta] {
            continue;
        }
        if let Some(n2) = n2 {
            for x in n2.orbit(delta) {
                done[x] = true;
            }
        }
        if let Some(w) = try_branch(&ctx, &mut prop, 0, &id, delta) {
            return Some(w);
        }
    }
    None
}

fn finish(g: &PermGroup, k: PermGroup) -> PermGroup {
    PermGroup::with_base(g.degree(), k.generators().to_vec(), &g.base())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::coxeter_group;
    use crate::rootsys::{CoxeterType, RootSystem};

    fn brute<F: Fn(&Perm) -> bool>(g: &PermGroup, f: F) -> u128 {
        g.elements(1 << 20).iter().filter(|x| f(x)).count() as u128
    }

    #[test]
    fn centralizer_matches_brute_force() {
        let rs = RootSystem::new(CoxeterType::b(3));
        let w = coxeter_group(&rs);
        for (i, x) in w.random_elements(8, 3).into_iter().enumerate() {
            let c = centralizer_of_element(&w, &x);
            assert_eq!(c.order(), brute(&w, |g| g.commutes_with(&x)), "sample {i}");
        }
        let centre = centralizer(&w, &w);
        assert_eq!(centre.order(), 2);
    }

    #[test]
    fn normalizer_matches_brute_force() {
        let rs = RootSystem::new(CoxeterType::a(4));
        let w = coxeter_group(&rs);
        for (i, x) in w.random_elements(6, 5).into_iter().enumerate() {
            let y = w.random_elements(1, 100 + i as u64).pop().unwrap();
            let h = PermGroup::new(w.degree(), vec![x.clone(), y.conj(&x)]);
            let n = normalizer(&w, &h);
            let expect = brute(&w, |g| h.generators().iter().all(|z| h.contains(&z.conj(g))));
            assert_eq!(n.order(), expect, "sample {i}");
        }
    }

    #[test]
    fn setwise_stabilizer_a3() {
        let rs = RootSystem::new(CoxeterType::a(3));
        let w = coxeter_group(&rs);
        // ±α₁, ±α₃: the transpositions (12), (34).
        let pts = [0, 2, rs.neg(0), rs.neg(2)];
        let s = setwise_stabilizer(&w, &pts);
        let expect = brute(&w, |g| pts.iter().all(|p| pts.contains(&g.image(*p))));
        assert_eq!(s.order(), expect);
        assert_eq!(expect, 8);
    }

    #[test]
    fn conjugacy_in_s4() {
        let rs = RootSystem::new(CoxeterType::a(3));
        let w = coxeter_group(&rs);
        let s = rs.simple_reflections();
        let h1 = PermGroup::new(w.degree(), vec![s[0].clone(), s[2].clone()]);
        // ⟨(12)(34),(13)(24)⟩
        let x = s[0].mul(&s[2]);
        let y = x.conj(&s[1]);
        let h2 = PermGroup::new(w.degree(), vec![x, y]);
        assert_eq!(h2.order(), 4);
        assert!(are_conjugate(&w, &h1, &h2).is_none());
        let h3 = PermGroup::new(w.degree(), h1.generators().iter().map(|g| g.conj(&s[1])).collect());
        let wit = are_conjugate(&w, &h1, &h3).unwrap();
        for g in h1.generators() {
            assert!(h3.contains(&g.conj(&wit)));
        }
    }
}
