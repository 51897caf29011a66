//! Permutation groups with deterministic Schreier–Sims stabilizer chains,
//! materialized subgroups, and backtrack searches.

mod finite;
mod perm;
mod search;
mod sylow;

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use finite::{Materialized, DEFAULT_CAP};
pub use perm::{GroupElement, Perm};
pub use search::{
    are_conjugate, are_conjugate_with, centralizer, centralizer_of_element, normalizer, normalizer_with_seed,
    setwise_stabilizer, PointInvariants,
};
pub(crate) use sylow::p_part;
pub use sylow::{sylow_containing, sylow_subgroup};

use crate::rootsys::RootSystem;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Perm>,
    /// Basic orbit in discovery order.
    pub orbit: Vec<usize>,
    slot: Vec<u32>,
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
}

const NONE: u32 = u32::MAX;

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NONE; degree],
            reps: Vec::new(),
            reps_inv: Vec::new(),
        }
    }

    fn rebuild(&mut self, degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = NONE);
        self.orbit.clear();
        self.reps.clear();
        self.reps_inv.clear();
        let id = Perm::identity(degree);
        self.slot[self.base] = 0;
        self.orbit.push(self.base);
        self.reps.push(id.clone());
        self.reps_inv.push(id);
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for g in &self.gens {
                let q = g.image(p);
                if self.slot[q] == NONE {
                    let u = self.reps[k].mul(g);
                    self.slot[q] = self.orbit.len() as u32;
                    self.orbit.push(q);
                    self.reps_inv.push(u.inverse());
                    self.reps.push(u);
                }
            }
            k += 1;
        }
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        self.slot[p] != NONE
    }

    /// Transversal element mapping the base point to `p`.
    pub fn rep(&self, p: usize) -> Option<&Perm> {
        let s = self.slot[p];
        (s != NONE).then(|| &self.reps[s as usize])
    }

    pub fn rep_inv(&self, p: usize) -> Option<&Perm> {
        let s = self.slot[p];
        (s != NONE).then(|| &self.reps_inv[s as usize])
    }
}

/// A permutation group with a complete stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> PermGroup {
        Self::with_base(degree, gens, &[])
    }

    pub fn trivial(degree: usize) -> PermGroup {
        Self::new(degree, Vec::new())
    }

    /// Builds the chain with the given base prefix.
    pub fn with_base(degree: usize, gens: Vec<Perm>, prefix: &[usize]) -> PermGroup {
        let generators: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut g = PermGroup { degree, generators: generators.clone(), levels: Vec::new() };
        for &b in prefix {
            if !g.levels.iter().any(|l| l.base == b) {
                g.levels.push(Level::new(b, degree));
            }
        }
        g.schreier_sims(&generators);
        g
    }

    /// Same group, chain rebuilt for a new base prefix.
    pub fn rebase(&self, prefix: &[usize]) -> PermGroup {
        let strong = self.strong_generators();
        let mut g = PermGroup { degree: self.degree, generators: self.generators.clone(), levels: Vec::new() };
        for &b in prefix {
            if !g.levels.iter().any(|l| l.base == b) {
                g.levels.push(Level::new(b, self.degree));
            }
        }
        g.schreier_sims(&strong);
        g
    }

    fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for s in &l.gens {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    fn ensure_moves_base(&mut self, s: &Perm) {
        if self.levels.iter().all(|l| s.image(l.base) == l.base) {
            let b = s.first_moved().expect("non-identity");
            self.levels.push(Level::new(b, self.degree));
        }
    }

    fn schreier_sims(&mut self, gens: &[Perm]) {
        let n = self.degree;
        for s in gens {
            if s.is_identity() {
                continue;
            }
            self.ensure_moves_base(s);
            self.levels[0].gens.push(s.clone());
        }
        // Distribute initial strong generators to deeper levels.
        let all: Vec<Perm> = self.levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        for l in 1..self.levels.len() {
            let bases: Vec<usize> = self.levels[..l].iter().map(|x| x.base).collect();
            self.levels[l].gens = all.iter().filter(|s| bases.iter().all(|&b| s.image(b) == b)).cloned().collect();
        }
        for l in self.levels.iter_mut() {
            l.rebuild(n);
        }
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            // A trivial level's Schreier generators are the next level's generators.
            if self.levels[iu].orbit.len() == 1 {
                i -= 1;
                continue;
            }
            let orbit = self.levels[iu].orbit.clone();
            let ngens = self.levels[iu].gens.len();
            for (k, &beta) in orbit.iter().enumerate() {
                for gi in 0..ngens {
                    let lvl = &self.levels[iu];
                    let s = &lvl.gens[gi];
                    let img = s.image(beta);
                    let h = lvl.reps[k].mul(s).mul(lvl.rep_inv(img).unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (j, res) = self.sift_from(h, iu + 1);
                    if j < self.levels.len() || !res.is_identity() {
                        if j == self.levels.len() {
                            let b = res.first_moved().unwrap();
                            self.levels.push(Level::new(b, n));
                        }
                        for l in iu + 1..=j {
                            self.levels[l].gens.push(res.clone());
                            self.levels[l].rebuild(n);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    fn sift_from(&self, mut h: Perm, start: usize) -> (usize, Perm) {
        for l in start..self.levels.len() {
            let lvl = &self.levels[l];
            let b = h.image(lvl.base);
            if b == lvl.base {
                continue;
            }
            match lvl.rep_inv(b) {
                Some(ui) => h = h.mul(ui),
                None => return (l, h),
            }
        }
        (self.levels.len(), h)
    }

    /// Sifts `g` through the chain; the residue is the identity iff `g ∈ G`.
    pub fn sift(&self, g: &Perm) -> (usize, Perm) {
        self.sift_from(g.clone(), 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (j, res) = self.sift(g);
        j == self.levels.len() && res.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, point)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Subgroup generated by `gens` with this group's base as prefix.
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::with_base(self.degree, gens, &self.base())
    }

    /// Deterministic pseudo-random elements.
    pub fn random_elements(&self, count: usize, seed: u64) -> Vec<Perm> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut g = self.identity();
                for l in self.levels.iter().rev() {
                    let k = rng.gen_range(0..l.orbit.len());
                    g = g.mul(&l.reps[k]);
                }
                g
            })
            .collect()
    }

    /// Every element, in chain order. Panics above `cap`.
    pub fn elements(&self, cap: u128) -> Vec<Perm> {
        assert!(self.order() <= cap, "order {} exceeds cap {cap}", self.order());
        let mut out = vec![self.identity()];
        // g = u_{k-1} ⋯ u_0; extend from the deepest level up.
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for g in &out {
                for u in &l.reps {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        out
    }

    /// Normal closure check: every conjugate of a generator lies in `self`.
    pub fn is_normal_in(&self, over: &PermGroup) -> bool {
        over.generators.iter().all(|x| self.generators.iter().all(|h| self.contains(&h.conj(x))))
    }

    /// Points fixed by every element of `G^{(i)}`.
    pub fn fixed_points_at(&self, i: usize) -> Vec<usize> {
        let gens: &[Perm] = if i < self.levels.len() { &self.levels[i].gens } else { &[] };
        (0..self.degree).filter(|&p| gens.iter().all(|g| g.image(p) == p)).collect()
    }

    /// Stabilizer-chain subgroup `G^{(i)}` as a group.
    pub fn stabilizer_at(&self, i: usize) -> PermGroup {
        let gens = if i < self.levels.len() { self.levels[i].gens.clone() } else { Vec::new() };
        let prefix: Vec<usize> = self.base()[i.min(self.levels.len())..].to_vec();
        PermGroup::with_base(self.degree, gens, &prefix)
    }
}

pub fn orbit_of(degree: usize, gens: &[Perm], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut out = vec![point];
    seen[point] = true;
    let mut q = VecDeque::from([point]);
    while let Some(p) = q.pop_front() {
        for g in gens {
            let x = g.image(p);
            if !seen[x] {
                seen[x] = true;
                out.push(x);
                q.push_back(x);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if !seen[p] {
            let o = orbit_of(degree, gens, p);
            for &x in &o {
                seen[x] = true;
            }
            out.push(o);
        }
    }
    out
}

/// The reflection `s_β` as a permutation of the roots.
pub fn reflection(rs: &RootSystem, root: usize) -> GroupElement {
    rs.reflection(root).clone()
}

/// `W` generated by the simple reflections; the simple roots form the base.
pub fn coxeter_group(rs: &RootSystem) -> PermGroup {
    PermGroup::with_base(rs.num_roots(), rs.simple_reflections(), &rs.simple_roots())
}

/// Product of simple reflections `s_{i₁} s_{i₂} ⋯` (1-based Bourbaki labels).
pub fn word(rs: &RootSystem, labels: &[usize]) -> GroupElement {
    labels.iter().fold(Perm::identity(rs.num_roots()), |acc, &i| acc.mul(rs.reflection(i - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CoxeterType;

    #[test]
    fn weyl_group_orders() {
        let types = [
            CoxeterType::a(1),
            CoxeterType::a(3),
            CoxeterType::a(5),
            CoxeterType::b(4),
            CoxeterType::c(3),
            CoxeterType::d(5),
            CoxeterType::e(6),
            CoxeterType::e(7),
            CoxeterType::e(8),
            CoxeterType::f4(),
            CoxeterType::g2(),
            CoxeterType::h(3),
            CoxeterType::h(4),
            CoxeterType::i2(5),
            CoxeterType::i2(7),
            CoxeterType::i2(12),
        ];
        for ct in types {
            let rs = RootSystem::new(ct);
            let w = coxeter_group(&rs);
            assert_eq!(w.order(), ct.group_order(), "{ct}");
        }
    }

    #[test]
    fn chain_order_matches_element_count() {
        for ct in [CoxeterType::a(4), CoxeterType::b(3), CoxeterType::h(3), CoxeterType::i2(9)] {
            let rs = RootSystem::new(ct);
            let w = coxeter_group(&rs);
            let els = w.elements(1 << 16);
            let set: std::collections::HashSet<_> = els.iter().cloned().collect();
            assert_eq!(set.len() as u128, w.order());
        }
    }

    #[test]
    fn membership_of_random_words() {
        let rs = RootSystem::new(CoxeterType::d(5));
        let w = coxeter_group(&rs);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let len = rng.gen_range(0..=40);
            let labels: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=5)).collect();
            let g = word(&rs, &labels);
            assert!(w.contains(&g));
            for i in 0..rs.num_roots() {
                assert_eq!(g.image(rs.neg(i)), rs.neg(g.image(i)));
            }
        }
        // A non-linear permutation swapping two roots is rejected.
        let mut imgs: Vec<usize> = (0..rs.num_roots()).collect();
        imgs.swap(0, 1);
        assert!(!w.contains(&Perm::from_images(&imgs).unwrap()));
    }

    #[test]
    fn orbits_on_roots() {
        let f4 = RootSystem::new(CoxeterType::f4());
        let w = coxeter_group(&f4);
        let hi = f4.highest_root.unwrap();
        assert_eq!(w.orbit(hi).len(), 24);
        let e8 = RootSystem::new(CoxeterType::e(8));
        assert_eq!(coxeter_group(&e8).orbit(0).len(), 240);
        assert_eq!(PermGroup::trivial(5).orbit(3), vec![3]);
    }

    #[test]
    fn rebase_preserves_group() {
        let rs = RootSystem::new(CoxeterType::e(6));
        let w = coxeter_group(&rs);
        let w2 = w.rebase(&[71, 40, 3]);
        assert_eq!(w2.order(), 51840);
        assert_eq!(&w2.base()[..3], &[71, 40, 3]);
        for g in w.random_elements(10, 1) {
            assert!(w2.contains(&g));
        }
    }
}
