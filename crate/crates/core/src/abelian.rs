//! Maximal-order abelian subgroups: invariants, closed forms and an exact
//! enumeration up to conjugacy.
//!
//! An abelian `A` is the product of its Sylow parts `A_p`. Odd primes are
//! processed first: every abelian p-subgroup class of a Sylow subgroup of
//! the current centralizer is a branch, and the ambient group shrinks to its
//! centralizer. The last prime is 2, where only the largest abelian
//! subgroups of a Sylow 2-subgroup `S` of the final centralizer can
//! contribute; those contain `Z(S)`, so that search starts there.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{
    are_conjugate, centralizer, p_part, sylow_subgroup, Materialized, Perm, PermGroup, DEFAULT_CAP,
};
use crate::quotient::{discrete_weyl_group, primary_invariants, NamedGroup};
use crate::rootsys::{CoxeterType, Family};

/// Prime powers `(m₁,…,m_k)` with `A ≅ ∏ Z_{mᵢ}`, in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianInvariants {
    pub prime_powers: Vec<u64>,
}

impl AbelianInvariants {
    pub fn new(mut prime_powers: Vec<u64>) -> AbelianInvariants {
        prime_powers.sort_unstable();
        AbelianInvariants { prime_powers }
    }

    pub fn order(&self) -> u128 {
        self.prime_powers.iter().map(|&m| m as u128).product()
    }

    /// `Σ mᵢ`.
    pub fn trace(&self) -> u64 {
        self.prime_powers.iter().sum()
    }

    pub fn num_z4(&self) -> usize {
        self.prime_powers.iter().filter(|&&m| m == 4).count()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.prime_powers.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Invariants of an abelian permutation group.
pub fn abelian_invariants(h: &PermGroup) -> Result<AbelianInvariants> {
    if !h.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let m = Materialized::new(h, DEFAULT_CAP).ok_or(Error::TooLarge(h.order(), DEFAULT_CAP))?;
    let orders: Vec<u64> = m.elements.iter().map(|g| g.order()).collect();
    let parts = primary_invariants(h.order(), |pk| {
        // Elements whose order divides p^k.
        orders.iter().filter(|&&o| pk % o == 0).count() as u128
    });
    Ok(AbelianInvariants::new(parts))
}

fn shapes_2_4(r: usize) -> Vec<AbelianInvariants> {
    (0..=r / 2)
        .rev()
        .map(|t| {
            let mut v = vec![4; t];
            v.extend(std::iter::repeat_n(2, r - 2 * t));
            AbelianInvariants::new(v)
        })
        .collect()
}

/// Closed form for `S_n`: order and admissible invariants.
pub fn classify_symmetric(n: usize) -> (u128, Vec<AbelianInvariants>) {
    let (k, rem) = (n / 3, n % 3);
    let threes = |c: usize| vec![3u64; c];
    match (rem, k) {
        (0, _) => (3u128.pow(k as u32), vec![AbelianInvariants::new(threes(k))]),
        (2, _) => {
            let mut v = threes(k);
            v.push(2);
            (2 * 3u128.pow(k as u32), vec![AbelianInvariants::new(v)])
        }
        (1, 0) => (1, vec![AbelianInvariants::new(Vec::new())]),
        _ => {
            let mut a = threes(k - 1);
            a.push(4);
            let mut b = threes(k - 1);
            b.extend([2, 2]);
            (4 * 3u128.pow(k as u32 - 1), vec![AbelianInvariants::new(a), AbelianInvariants::new(b)])
        }
    }
}

/// The maximal order and the admissible invariants for each type.
pub fn theoretical_max(ct: &CoxeterType) -> (u128, Vec<AbelianInvariants>) {
    let r = ct.rank;
    let one = |v: Vec<u64>| {
        let a = AbelianInvariants::new(v);
        (a.order(), vec![a])
    };
    match ct.family {
        Family::A => classify_symmetric(r + 1),
        Family::B | Family::C => (1 << r, shapes_2_4(r)),
        Family::D if r.is_multiple_of(2) => one(vec![2; r]),
        Family::D => (1 << (r - 1), shapes_2_4(r - 1)),
        Family::E if r == 6 => one(vec![3, 3, 3]),
        Family::E => one(vec![2; r]),
        Family::F => one(vec![2, 3, 3]),
        Family::G => one(vec![2, 3]),
        Family::H if r == 3 => one(vec![2, 5]),
        Family::H => one(vec![2, 5, 5]),
        // I2(4) is B2, whose Klein four-subgroups also have order 4.
        Family::I2 if ct.m == 4 => (4, shapes_2_4(2)),
        Family::I2 => one(cyclic_invariants(ct.m as u64)),
    }
}

fn cyclic_invariants(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while m > 1 {
        let mut q = 1;
        while m.is_multiple_of(p) {
            m /= p;
            q *= p;
        }
        if q > 1 {
            out.push(q);
        }
        p += 1;
    }
    out
}

/// `Tr(M) ≤ 2r`.
pub fn verify_trace_bound(inv: &AbelianInvariants, rank: usize) -> bool {
    inv.trace() <= 2 * rank as u64
}

/// A wall-clock allowance for long enumerations.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { start: Instant::now(), limit: None }
    }

    pub fn seconds(s: u64) -> Budget {
        Budget { start: Instant::now(), limit: Some(Duration::from_secs(s)) }
    }

    pub fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() > l)
    }

    fn error(&self, found: usize) -> Error {
        Error::BudgetExhausted { seconds: self.limit.map_or(0, |l| l.as_secs()), found }
    }
}

/// Abelian subgroup classes of a listed p-group, up to conjugacy in it.
struct PSearch<'a> {
    m: &'a Materialized,
    gens: Vec<usize>,
    pth: Vec<usize>,
    zob: Vec<u64>,
    visited: HashSet<u64>,
    max_only: bool,
    best: usize,
    found: Vec<Vec<usize>>,
    budget: &'a Budget,
}

impl<'a> PSearch<'a> {
    fn new(m: &'a Materialized, p: u64, max_only: bool, budget: &'a Budget) -> PSearch<'a> {
        let pth = (0..m.len())
            .map(|x| {
                let mut y = x;
                for _ in 1..p {
                    y = m.mul(y, x);
                }
                y
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0xab31);
        PSearch {
            m,
            gens: m.generator_indices(),
            pth,
            zob: (0..m.len()).map(|_| rng.gen()).collect(),
            visited: HashSet::new(),
            max_only,
            best: 0,
            found: Vec::new(),
            budget,
        }
    }

    fn hash(&self, elems: &[usize]) -> u64 {
        elems.iter().fold(0, |h, &x| h ^ self.zob[x])
    }

    /// Marks every conjugate of `elems`.
    fn mark_orbit(&mut self, elems: &[usize]) {
        let h = self.hash(elems);
        if !self.visited.insert(h) {
            return;
        }
        let mut queue = vec![elems.to_vec()];
        while let Some(a) = queue.pop() {
            for &g in &self.gens {
                let b: Vec<usize> = a.iter().map(|&x| self.m.conj(x, g)).collect();
                if self.visited.insert(self.hash(&b)) {
                    queue.push(b);
                }
            }
        }
    }

    fn run(&mut self, start: Vec<usize>) -> Result<()> {
        let cent: Vec<usize> = (0..self.m.len()).filter(|&y| start.iter().all(|&x| self.m.commute(x, y))).collect();
        self.mark_orbit(&start);
        self.visit(start, cent)
    }

    fn visit(&mut self, elems: Vec<usize>, cent: Vec<usize>) -> Result<()> {
        if self.budget.expired() {
            return Err(self.budget.error(self.found.len()));
        }
        if self.max_only {
            if cent.len() < self.best {
                return Ok(());
            }
            if cent.len() == elems.len() {
                if elems.len() > self.best {
                    self.best = elems.len();
                    self.found.clear();
                }
                self.found.push(elems);
                return Ok(());
            }
        } else {
            self.found.push(elems.clone());
        }
        let n = self.m.len();
        let mut in_a = vec![false; n];
        for &x in &elems {
            in_a[x] = true;
        }
        let mut covered = in_a.clone();
        for &x in &cent {
            if covered[x] || !in_a[self.pth[x]] {
                continue;
            }
            // A⟨x⟩ = A ∪ xA ∪ … ∪ x^{p−1}A.
            let mut child = elems.clone();
            let mut xk = x;
            while !in_a[xk] {
                for &a in &elems {
                    let y = self.m.mul(xk, a);
                    covered[y] = true;
                    child.push(y);
                }
                xk = self.m.mul(xk, x);
            }
            child.sort_unstable();
            if self.visited.contains(&self.hash(&child)) {
                continue;
            }
            self.mark_orbit(&child);
            let child_cent: Vec<usize> = cent.iter().copied().filter(|&y| self.m.commute(x, y)).collect();
            self.visit(child, child_cent)?;
        }
        Ok(())
    }
}

/// Greedy generating set of a listed subgroup, taking elements in order.
fn span_generators(elements: &[Perm]) -> Vec<Perm> {
    let Some(first) = elements.first() else { return Vec::new() };
    let n = first.degree();
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = PermGroup::trivial(n);
    for x in elements {
        if !span.contains(x) {
            gens.push(x.clone());
            span = PermGroup::new(n, gens.clone());
            if span.order() == elements.len() as u128 {
                break;
            }
        }
    }
    gens
}

fn to_group(m: &Materialized, elems: &[usize]) -> PermGroup {
    let perms: Vec<Perm> = elems.iter().map(|&i| m.elements[i].clone()).collect();
    PermGroup::new(m.group.degree(), span_generators(&perms))
}

fn prime_factors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while n > 1 {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

struct Enumeration<'a> {
    primes: Vec<u64>,
    best: u128,
    found: Vec<PermGroup>,
    budget: &'a Budget,
    w: &'a PermGroup,
}

impl Enumeration<'_> {
    fn record(&mut self, gens: Vec<Perm>, order: u128) {
        if order < self.best {
            return;
        }
        if order > self.best {
            self.best = order;
            self.found.clear();
        }
        self.found.push(self.w.subgroup(gens));
    }

    fn recurse(&mut self, c: &PermGroup, gens: &[Perm], order: u128, k: usize) -> Result<()> {
        if self.budget.expired() {
            return Err(self.budget.error(self.found.len()));
        }
        if k == self.primes.len() {
            self.record(gens.to_vec(), order);
            return Ok(());
        }
        let bound: u128 = order * self.primes[k..].iter().map(|&q| p_part(c.order(), q as u128)).product::<u128>();
        if bound < self.best {
            return Ok(());
        }
        let p = self.primes[k];
        let s = sylow_subgroup(c, p, 0x5170 + k as u64);
        if s.is_trivial() {
            return self.recurse(c, gens, order, k + 1);
        }
        let ms = Materialized::new(&s, DEFAULT_CAP).ok_or(Error::TooLarge(s.order(), DEFAULT_CAP))?;
        let last = k + 1 == self.primes.len();
        let mut search = PSearch::new(&ms, p, last, self.budget);
        let start = if last { ms.center() } else { vec![ms.identity_index()] };
        search.run(start)?;
        let mut reps = search.found;
        reps.sort_by_key(|r| r.len());
        for r in reps {
            let b = to_group(&ms, &r);
            let mut g2 = gens.to_vec();
            g2.extend(b.generators().iter().cloned());
            let ord = order * b.order();
            if last {
                self.record(g2, ord);
            } else {
                let c2 = if b.is_trivial() { c.clone() } else { centralizer(c, &b) };
                self.recurse(&c2, &g2, ord, k + 1)?;
            }
        }
        Ok(())
    }
}

/// Conjugacy-invariant data used to bucket candidate subgroups.
fn class_key(h: &PermGroup) -> (AbelianInvariants, Vec<usize>, Vec<(Vec<usize>, usize)>) {
    let inv = abelian_invariants(h).expect("abelian");
    let mut orbit_sizes: Vec<usize> = h.orbits().iter().map(|o| o.len()).collect();
    orbit_sizes.sort_unstable();
    let mut types: HashMap<Vec<usize>, usize> = HashMap::new();
    for g in h.elements(DEFAULT_CAP) {
        *types.entry(g.cycle_type()).or_insert(0) += 1;
    }
    let mut types: Vec<_> = types.into_iter().collect();
    types.sort_unstable();
    (inv, orbit_sizes, types)
}

/// Representatives of the `W`-classes among `groups`.
pub fn dedup_conjugates(w: &PermGroup, groups: Vec<PermGroup>) -> Vec<PermGroup> {
    let mut buckets: HashMap<_, Vec<PermGroup>> = HashMap::new();
    let mut order = Vec::new();
    for g in groups {
        let key = class_key(&g);
        let bucket = buckets.entry(key.clone()).or_default();
        if bucket.is_empty() {
            order.push(key);
        }
        if !bucket.iter().any(|r| are_conjugate(w, r, &g).is_some()) {
            bucket.push(g);
        }
    }
    order.into_iter().flat_map(|k| buckets.remove(&k).unwrap()).collect()
}

/// All `W`-classes of abelian subgroups of maximal order. With `target = 0`
/// the maximum is discovered; otherwise classes of order `target` are
/// sought and any larger order found is reported instead.
pub fn enumerate_max_abelian(w: &PermGroup, target: u128, budget: &Budget) -> Result<Vec<PermGroup>> {
    let mut primes = prime_factors(w.order());
    // Odd primes descending, then 2.
    primes.sort_by_key(|&p| (p == 2, std::cmp::Reverse(p)));
    let mut e = Enumeration { primes, best: target, found: Vec::new(), budget, w };
    e.recurse(w, &[], 1, 0)?;
    Ok(dedup_conjugates(w, e.found))
}

/// A conjugacy class of maximal-order abelian subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianClass {
    pub invariants: AbelianInvariants,
    /// Canonical generators, as root-image arrays.
    #[serde(serialize_with = "ser_perms")]
    pub generators: Vec<Perm>,
    pub weyl: NamedGroup,
    pub num_z4: usize,
    pub self_centralizing: bool,
    #[serde(skip)]
    pub rep: PermGroup,
}

fn ser_perms<S: serde::Serializer>(v: &[Perm], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(p.images())?;
    }
    seq.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub ctype: CoxeterType,
    pub group_order: u128,
    pub max_order: u128,
    pub classes: Vec<AbelianClass>,
    /// Indices of the discrete maximal tori among `classes`.
    pub tori: Vec<usize>,
}

/// Lexicographically least greedy generating tuple over the subgroup and up
/// to 99 seeded conjugates.
pub fn canonical_generators(w: &PermGroup, h: &PermGroup) -> Vec<Perm> {
    let mut elems = h.elements(DEFAULT_CAP);
    elems.sort();
    let mut best = span_generators(&elems);
    for g in w.random_elements(99, 0xc0ffee) {
        let mut conj: Vec<Perm> = elems.iter().map(|x| x.conj(&g)).collect();
        conj.sort();
        let cand = span_generators(&conj);
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Builds the full class record for each representative.
pub fn describe_classes(w: &PermGroup, reps: Vec<PermGroup>) -> Result<Vec<AbelianClass>> {
    let mut out = Vec::new();
    for rep in reps {
        let invariants = abelian_invariants(&rep)?;
        let generators = canonical_generators(w, &rep);
        let rep = w.subgroup(generators.clone());
        let (_, weyl) = discrete_weyl_group(w, &rep)?;
        let self_centralizing = centralizer(w, &rep).order() == rep.order();
        out.push(AbelianClass { num_z4: invariants.num_z4(), invariants, generators, weyl, self_centralizing, rep });
    }
    out.sort_by(|a, b| {
        b.num_z4
            .cmp(&a.num_z4)
            .then(b.invariants.cmp(&a.invariants))
            .then(a.weyl.order.cmp(&b.weyl.order))
            .then(a.weyl.name.cmp(&b.weyl.name))
            .then(a.generators.cmp(&b.generators))
    });
    Ok(out)
}

/// Classes maximizing the number of `Z₄` factors.
pub fn discrete_maximal_tori(c: &Classification) -> Vec<&AbelianClass> {
    c.tori.iter().map(|&i| &c.classes[i]).collect()
}

fn tori_indices(classes: &[AbelianClass]) -> Vec<usize> {
    let most = classes.iter().map(|c| c.num_z4).max().unwrap_or(0);
    (0..classes.len()).filter(|&i| classes[i].num_z4 == most).collect()
}

/// Enumerates and describes the maximal-order abelian classes of `W(ct)`.
pub fn classify(ct: &CoxeterType, target: u128, budget: &Budget) -> Result<Classification> {
    let rs = crate::rootsys::RootSystem::new(*ct);
    let w = crate::permgroup::coxeter_group(&rs);
    let reps = enumerate_max_abelian(&w, target, budget)?;
    let classes = describe_classes(&w, reps)?;
    let max_order = classes.first().map_or(1, |c| c.invariants.order());
    let tori = tori_indices(&classes);
    Ok(Classification { ctype: *ct, group_order: w.order(), max_order, classes, tori })
}

impl Classification {
    /// Header line of the table, e.g. "6 maximal classes of groups of order 16".
    pub fn header(&self) -> String {
        let n = self.classes.len();
        let noun = if n == 1 { "class" } else { "classes" };
        format!("{n} maximal {noun} of groups of order {}", self.max_order)
    }

    /// One row per class: invariants and the discrete Weyl group.
    pub fn rows(&self) -> Vec<(String, String)> {
        self.classes.iter().map(|c| (c.invariants.to_string(), c.weyl.name.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::coxeter_group;
    use crate::rootsys::RootSystem;

    #[test]
    fn invariants_of_small_groups() {
        let n = 4;
        let c4 = PermGroup::new(n, vec![Perm::from_cycles(n, &[&[0, 1, 2, 3]])]);
        assert_eq!(abelian_invariants(&c4).unwrap().prime_powers, vec![4]);
        assert_eq!(abelian_invariants(&PermGroup::trivial(3)).unwrap().order(), 1);
        let s3 = PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1]]), Perm::from_cycles(3, &[&[0, 1, 2]])]);
        assert_eq!(abelian_invariants(&s3), Err(Error::NotAbelian));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(classify_symmetric(9).0, 27);
        assert_eq!(classify_symmetric(8), (18, vec![AbelianInvariants::new(vec![2, 3, 3])]));
        assert_eq!(classify_symmetric(1).0, 1);
        let (o, shapes) = theoretical_max(&CoxeterType::a(6));
        assert_eq!(o, 12);
        assert_eq!(shapes.len(), 2);
        assert_eq!(theoretical_max(&CoxeterType::h(4)).0, 50);
        assert_eq!(theoretical_max(&CoxeterType::e(6)).1[0].to_string(), "(3,3,3)");
        assert_eq!(theoretical_max(&CoxeterType::d(5)).1.len(), 3);
    }

    #[test]
    fn trace_bound() {
        assert!(verify_trace_bound(&AbelianInvariants::new(vec![4, 4]), 4));
        assert!(verify_trace_bound(&AbelianInvariants::new(vec![2, 2, 2, 2]), 4));
        assert!(!verify_trace_bound(&AbelianInvariants::new(vec![3, 4, 4]), 4));
    }

    #[test]
    fn a3_has_three_classes() {
        let w = coxeter_group(&RootSystem::new(CoxeterType::a(3)));
        let reps = enumerate_max_abelian(&w, 0, &Budget::unlimited()).unwrap();
        let mut inv: Vec<String> = reps.iter().map(|r| abelian_invariants(r).unwrap().to_string()).collect();
        inv.sort();
        assert_eq!(inv, ["(2,2)", "(2,2)", "(4)"]);
    }
}
