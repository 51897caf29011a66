//! Discrete Weyl groups `N_W(M)/M` and their identification against a
//! catalog of named groups.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::OnceLock;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{normalizer, Materialized, Perm, PermGroup};

/// Largest group the fingerprint routines will list.
pub const FINGERPRINT_CAP: u128 = 50_000;
/// Isomorphism search is attempted up to this order; above it a unique
/// fingerprint match decides.
pub const ISOMORPHISM_CAP: u128 = 2_000;

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupFingerprint {
    pub order: u128,
    pub exponent: u64,
    pub abelianization: Vec<u64>,
    pub center_order: u64,
    pub derived_series: Vec<u64>,
    pub order_histogram: BTreeMap<u64, u64>,
    pub class_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedGroup {
    pub name: String,
    pub order: u128,
    pub fingerprint: Option<GroupFingerprint>,
}

impl NamedGroup {
    pub const UNIDENTIFIED: &'static str = "unidentified";

    pub fn is_identified(&self) -> bool {
        self.name != Self::UNIDENTIFIED
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub build: fn() -> PermGroup,
}

fn sym(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(1);
    }
    let cyc: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![Perm::from_cycles(n, &[&[0, 1]]), Perm::from_cycles(n, &[&cyc])])
}

fn cyclic(n: usize) -> PermGroup {
    let cyc: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![Perm::from_cycles(n, &[&cyc])])
}

/// Dihedral group of order `2n` on `n` points.
fn dihedral(n: usize) -> PermGroup {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    PermGroup::new(n, vec![Perm::from_images(&rot).unwrap(), Perm::from_images(&refl).unwrap()])
}

fn elementary2(k: usize) -> PermGroup {
    let gens = (0..k).map(|i| Perm::from_cycles(2 * k, &[&[2 * i, 2 * i + 1]])).collect();
    PermGroup::new(2 * k, gens)
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (na, nb) = (a.degree(), b.degree());
    let n = na + nb;
    let mut gens = Vec::new();
    for g in a.generators() {
        let img: Vec<usize> = (0..n).map(|i| if i < na { g.image(i) } else { i }).collect();
        gens.push(Perm::from_images(&img).unwrap());
    }
    for g in b.generators() {
        let img: Vec<usize> = (0..n).map(|i| if i < na { i } else { na + g.image(i - na) }).collect();
        gens.push(Perm::from_images(&img).unwrap());
    }
    PermGroup::new(n, gens)
}

/// `GL(3,2)` on the 7 nonzero vectors, or `AGL(3,2)` on all 8.
fn linear_f2(affine: bool) -> PermGroup {
    let shift = usize::from(!affine);
    let n = 8 - shift;
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                // x_i += x_j
                let img: Vec<usize> = (shift..8)
                    .map(|v| {
                        let w = if v >> j & 1 == 1 { v ^ (1 << i) } else { v };
                        w - shift
                    })
                    .collect();
                gens.push(Perm::from_images(&img).unwrap());
            }
        }
    }
    if affine {
        let img: Vec<usize> = (0..8).map(|v| v ^ 1).collect();
        gens.push(Perm::from_images(&img).unwrap());
    }
    PermGroup::new(n, gens)
}

/// Signed permutations of `±1..±4` on 8 points (`2i ↦ +i`, `2i+1 ↦ −i`):
/// `W(D4)`, or `W(B4)` with all sign changes.
fn signed_perms(all_signs: bool) -> PermGroup {
    let swap = |i: usize, j: usize, flip: bool| {
        let mut img: Vec<usize> = (0..8).collect();
        let (pi, pj) = if flip { (2 * j + 1, 2 * i + 1) } else { (2 * j, 2 * i) };
        img[2 * i] = pi;
        img[2 * j] = pj;
        img[2 * i + 1] = pi ^ 1;
        img[2 * j + 1] = pj ^ 1;
        Perm::from_images(&img).unwrap()
    };
    let mut gens = vec![swap(0, 1, false), swap(1, 2, false), swap(2, 3, false), swap(2, 3, true)];
    if all_signs {
        gens.push(Perm::from_cycles(8, &[&[6, 7]]));
    }
    PermGroup::new(8, gens)
}

fn prod(a: PermGroup, b: PermGroup) -> PermGroup {
    direct_product(&a, &b)
}

/// Every group name used in the classification tables.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: &[CatalogEntry] = &[
        CatalogEntry { name: "1", aliases: &[], build: || PermGroup::trivial(1) },
        CatalogEntry { name: "2", aliases: &[], build: || cyclic(2) },
        CatalogEntry { name: "3", aliases: &[], build: || cyclic(3) },
        CatalogEntry { name: "4", aliases: &[], build: || cyclic(4) },
        CatalogEntry { name: "2^2", aliases: &[], build: || elementary2(2) },
        CatalogEntry { name: "2^3", aliases: &[], build: || elementary2(3) },
        CatalogEntry { name: "S_3", aliases: &["D_6"], build: || sym(3) },
        CatalogEntry { name: "S_4", aliases: &[], build: || sym(4) },
        CatalogEntry { name: "S_5", aliases: &[], build: || sym(5) },
        CatalogEntry { name: "S_6", aliases: &[], build: || sym(6) },
        CatalogEntry { name: "S_7", aliases: &[], build: || sym(7) },
        CatalogEntry { name: "S_8", aliases: &[], build: || sym(8) },
        CatalogEntry { name: "D_8", aliases: &[], build: || dihedral(4) },
        CatalogEntry { name: "D_12", aliases: &["S_3 x S_2", "2 x S_3"], build: || dihedral(6) },
        CatalogEntry { name: "PSL(3,2)", aliases: &["PSL(2,7)", "GL(3,2)"], build: || linear_f2(false) },
        CatalogEntry { name: "2^3:PSL(3,2)", aliases: &["2^3:PSL(2,7)", "AGL(3,2)"], build: || linear_f2(true) },
        CatalogEntry { name: "2 x S_4", aliases: &[], build: || prod(cyclic(2), sym(4)) },
        CatalogEntry { name: "2 x D_8", aliases: &[], build: || prod(cyclic(2), dihedral(4)) },
        CatalogEntry { name: "D_8 x S_3", aliases: &[], build: || prod(dihedral(4), sym(3)) },
        CatalogEntry { name: "2^2 x S_3", aliases: &[], build: || prod(elementary2(2), sym(3)) },
        CatalogEntry { name: "2 x S_5", aliases: &[], build: || prod(cyclic(2), sym(5)) },
        CatalogEntry { name: "2 x S_6", aliases: &[], build: || prod(cyclic(2), sym(6)) },
        CatalogEntry { name: "2^2 x S_4", aliases: &[], build: || prod(elementary2(2), sym(4)) },
        CatalogEntry { name: "2^2 x D_8", aliases: &[], build: || prod(elementary2(2), dihedral(4)) },
        CatalogEntry { name: "D_8 x D_8", aliases: &[], build: || prod(dihedral(4), dihedral(4)) },
        CatalogEntry { name: "S_4 x D_8", aliases: &[], build: || prod(sym(4), dihedral(4)) },
        CatalogEntry { name: "(((2 x D_8):2):3):2", aliases: &["W(D4)"], build: || signed_perms(false) },
        CatalogEntry { name: "((((2 x D_8):2):3):2):2", aliases: &["W(B4)"], build: || signed_perms(true) },
    ];
    CATALOG
}

/// The catalog entry for a name or alias.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name || e.aliases.contains(&name))
}

fn catalog_fingerprints() -> &'static Vec<(GroupFingerprint, Materialized)> {
    static FP: OnceLock<Vec<(GroupFingerprint, Materialized)>> = OnceLock::new();
    FP.get_or_init(|| {
        catalog()
            .iter()
            .map(|e| {
                let g = (e.build)();
                let m = Materialized::new(&g, FINGERPRINT_CAP).expect("catalog group within cap");
                (fingerprint_of(&m), m)
            })
            .collect()
    })
}

/// Closure of `gens` under multiplication, as sorted element indices.
fn closure(m: &Materialized, gens: &[usize]) -> Vec<usize> {
    let mut c = m.closure(gens);
    c.sort_unstable();
    c
}

/// Normal closure of `gens` inside the subgroup with generators `over`.
fn normal_closure(m: &Materialized, gens: &[usize], over: &[usize]) -> Vec<usize> {
    let mut g: Vec<usize> = gens.to_vec();
    loop {
        let sub = closure(m, &g);
        let member: HashSet<usize> = sub.iter().copied().collect();
        let extra = g.iter().flat_map(|&x| over.iter().map(move |&y| (x, y))).find_map(|(x, y)| {
            let c = m.conj(x, y);
            (!member.contains(&c)).then_some(c)
        });
        match extra {
            Some(c) => g.push(c),
            None => return sub,
        }
    }
}

fn commutator(m: &Materialized, a: usize, b: usize) -> usize {
    m.mul(m.mul(m.inv(a), m.inv(b)), m.mul(a, b))
}

/// Derived subgroup of the subgroup generated by `gens`.
fn derived(m: &Materialized, gens: &[usize]) -> Vec<usize> {
    let comms: Vec<usize> =
        gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| commutator(m, a, b)).collect();
    normal_closure(m, &comms, gens)
}

/// A small generating set of a listed subgroup.
fn generators_of(m: &Materialized, elems: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: HashSet<usize> = [m.identity_index()].into_iter().collect();
    let mut sorted = elems.to_vec();
    sorted.sort_by_key(|&x| std::cmp::Reverse(m.order_of(x)));
    for x in sorted {
        if !span.contains(&x) {
            gens.push(x);
            span = closure(m, &gens).into_iter().collect();
            if span.len() == elems.len() {
                break;
            }
        }
    }
    gens
}

/// Primary invariants of an abelian group from the counts
/// `|{x : x^(p^k) = 1}|` for every prime power dividing its order.
pub(crate) fn primary_invariants(order: u128, omega: impl Fn(u64) -> u128) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut n = order;
    let mut p = 2u128;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            // ranks[k] = #{i : e_i ≥ k+1}
            let logp = |mut x: u128| {
                let mut l = 0;
                while x > 1 {
                    x /= p;
                    l += 1;
                }
                l
            };
            let mut prev = 0u32;
            let mut ranks = Vec::new();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p as u64;
                let l = logp(omega(pk));
                ranks.push(l - prev);
                prev = l;
            }
            for k in 0..ranks.len() {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                for _ in 0..ranks[k] - next {
                    parts.push((p as u64).pow(k as u32 + 1));
                }
            }
        }
        p += 1;
    }
    parts.sort_unstable();
    parts
}

fn fingerprint_of(m: &Materialized) -> GroupFingerprint {
    let n = m.len();
    let all: Vec<usize> = (0..n).collect();
    let gens = m.generator_indices();
    let orders: Vec<u64> = all.iter().map(|&x| m.order_of(x)).collect();
    let exponent = orders.iter().fold(1u64, |a, &b| a.lcm(&b));
    let mut order_histogram = BTreeMap::new();
    for &o in &orders {
        *order_histogram.entry(o).or_insert(0u64) += 1;
    }
    let center_order = m.center().len() as u64;

    let mut derived_series = vec![n as u64];
    let mut cur_gens = gens.clone();
    let mut cur_len = n;
    let mut first_derived = None;
    loop {
        let d = derived(m, &cur_gens);
        if first_derived.is_none() {
            first_derived = Some(d.clone());
        }
        if d.len() == cur_len {
            break;
        }
        derived_series.push(d.len() as u64);
        cur_len = d.len();
        if cur_len == 1 {
            break;
        }
        cur_gens = generators_of(m, &d);
    }
    let dset: HashSet<usize> = first_derived.unwrap().into_iter().collect();
    let dlen = dset.len() as u128;
    let abelianization = primary_invariants(n as u128 / dlen, |pk| {
        let c = all.iter().filter(|&&x| dset.contains(&pow_index(m, x, pk))).count() as u128;
        c / dlen
    });

    let mut class_of = vec![usize::MAX; n];
    let mut class_count = 0;
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        class_of[x] = class_count;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for &g in &gens {
                let z = m.conj(y, g);
                if class_of[z] == usize::MAX {
                    class_of[z] = class_count;
                    stack.push(z);
                }
            }
        }
        class_count += 1;
    }
    GroupFingerprint {
        order: n as u128,
        exponent,
        abelianization,
        center_order,
        derived_series,
        order_histogram,
        class_count,
    }
}

fn pow_index(m: &Materialized, x: usize, k: u64) -> usize {
    m.index_of(&m.elements[x].pow(k)).unwrap()
}

pub fn fingerprint(g: &PermGroup) -> Result<GroupFingerprint> {
    let m = Materialized::new(g, FINGERPRINT_CAP).ok_or(Error::TooLarge(g.order(), FINGERPRINT_CAP))?;
    Ok(fingerprint_of(&m))
}

/// Element invariants preserved by isomorphisms: order and centralizer size.
fn element_classes(m: &Materialized) -> Vec<(u64, usize)> {
    let n = m.len();
    (0..n).map(|x| (m.order_of(x), (0..n).filter(|&y| m.commute(x, y)).count())).collect()
}

/// Whether two listed groups are isomorphic, by a generator-image search.
fn isomorphic(a: &Materialized, b: &Materialized) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ca = element_classes(a);
    let cb = element_classes(b);
    let mut ha: Vec<_> = ca.clone();
    let mut hb: Vec<_> = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    let gens = small_generating_set(a);
    // Candidate images for the first generator: one per conjugacy class.
    let mut seen = vec![false; b.len()];
    let bgens = b.generator_indices();
    let mut first = Vec::new();
    for y in 0..b.len() {
        if seen[y] || cb[y] != ca[gens[0]] {
            continue;
        }
        first.push(y);
        let mut stack = vec![y];
        seen[y] = true;
        while let Some(z) = stack.pop() {
            for &g in &bgens {
                let w = b.conj(z, g);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut images = Vec::new();
    first.into_iter().any(|y| {
        images.clear();
        images.push(y);
        extend_iso(a, b, &gens, &ca, &cb, &mut images)
    })
}

fn extend_iso(
    a: &Materialized,
    b: &Materialized,
    gens: &[usize],
    ca: &[(u64, usize)],
    cb: &[(u64, usize)],
    images: &mut Vec<usize>,
) -> bool {
    if !consistent(a, b, &gens[..images.len()], images) {
        return false;
    }
    if images.len() == gens.len() {
        return true;
    }
    let target = ca[gens[images.len()]];
    for y in 0..b.len() {
        if cb[y] != target {
            continue;
        }
        images.push(y);
        if extend_iso(a, b, gens, ca, cb, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph of `⟨gens⟩`; true iff
/// the map is a well-defined injective homomorphism.
fn consistent(a: &Materialized, b: &Materialized, gens: &[usize], images: &[usize]) -> bool {
    let mut phi: HashMap<usize, usize> = HashMap::new();
    let mut used: HashSet<usize> = HashSet::new();
    let (ia, ib) = (a.identity_index(), b.identity_index());
    phi.insert(ia, ib);
    used.insert(ib);
    let mut queue = vec![ia];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        let fx = phi[&x];
        for (g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, *g);
            let fy = b.mul(fx, h);
            match phi.get(&y) {
                Some(&v) if v != fy => return false,
                Some(_) => {}
                None => {
                    if !used.insert(fy) {
                        return false;
                    }
                    phi.insert(y, fy);
                    queue.push(y);
                }
            }
        }
        k += 1;
    }
    true
}

/// A generating set found by seeded random search, smallest size first.
fn small_generating_set(m: &Materialized) -> Vec<usize> {
    let n = m.len();
    if n == 1 {
        return vec![m.identity_index()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for size in 1..=4 {
        for _ in 0..400 {
            let gens: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
            if m.closure(&gens).len() == n {
                return gens;
            }
        }
    }
    generators_of(m, &(0..n).collect::<Vec<_>>())
}

/// Names `g` from the catalog, or returns "unidentified" with its fingerprint.
pub fn identify(g: &PermGroup) -> NamedGroup {
    let Some(m) = Materialized::new(g, FINGERPRINT_CAP) else {
        return NamedGroup { name: NamedGroup::UNIDENTIFIED.into(), order: g.order(), fingerprint: None };
    };
    let fp = fingerprint_of(&m);
    let matches: Vec<usize> =
        catalog_fingerprints().iter().enumerate().filter(|(_, (f, _))| *f == fp).map(|(i, _)| i).collect();
    let chosen = if fp.order <= ISOMORPHISM_CAP {
        matches.into_iter().find(|&i| isomorphic(&m, &catalog_fingerprints()[i].1))
    } else if matches.len() == 1 {
        Some(matches[0])
    } else {
        None
    };
    NamedGroup {
        name: chosen.map_or(NamedGroup::UNIDENTIFIED.to_string(), |i| catalog()[i].name.to_string()),
        order: fp.order,
        fingerprint: Some(fp),
    }
}

/// Whether two groups are isomorphic (exact up to the isomorphism cap,
/// fingerprint equality above it).
pub fn are_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    let ma = Materialized::new(a, FINGERPRINT_CAP).ok_or(Error::TooLarge(a.order(), FINGERPRINT_CAP))?;
    let mb = Materialized::new(b, FINGERPRINT_CAP).ok_or(Error::TooLarge(b.order(), FINGERPRINT_CAP))?;
    if fingerprint_of(&ma) != fingerprint_of(&mb) {
        return Ok(false);
    }
    Ok(ma.len() as u128 > ISOMORPHISM_CAP || isomorphic(&ma, &mb))
}

/// `N/M` as a permutation group: the conjugation action on the elements of
/// `M` when `C_N(M) = M`, the action on right cosets otherwise.
pub fn quotient_action(n: &PermGroup, m: &PermGroup) -> Result<PermGroup> {
    if !m.is_subgroup_of(n) || !m.is_normal_in(n) {
        return Err(Error::NotNormal);
    }
    let mm = Materialized::new(m, crate::permgroup::DEFAULT_CAP)
        .ok_or(Error::TooLarge(m.order(), crate::permgroup::DEFAULT_CAP))?;
    let index = n.order() / m.order();
    let conj_gens: Vec<Perm> = n
        .generators()
        .iter()
        .map(|g| {
            let img: Vec<usize> = (0..mm.len()).map(|i| mm.index_of(&mm.elements[i].conj(g)).unwrap()).collect();
            Perm::from_images(&img).unwrap()
        })
        .collect();
    let q = PermGroup::new(mm.len(), conj_gens);
    if q.order() == index {
        return Ok(q);
    }
    coset_action(n, &mm, index)
}

fn coset_action(n: &PermGroup, mm: &Materialized, index: u128) -> Result<PermGroup> {
    if index > FINGERPRINT_CAP {
        return Err(Error::TooLarge(index, FINGERPRINT_CAP));
    }
    // A coset Mx is keyed by its least element image vector.
    let key = |x: &Perm| mm.elements.iter().map(|h| h.mul(x)).min().unwrap();
    let id = n.identity();
    let mut reps = vec![id.clone()];
    let mut ids: HashMap<Perm, usize> = HashMap::from([(key(&id), 0)]);
    let mut k = 0;
    while k < reps.len() {
        for g in n.generators() {
            let y = reps[k].mul(g);
            let ky = key(&y);
            if let std::collections::hash_map::Entry::Vacant(e) = ids.entry(ky) {
                e.insert(reps.len());
                reps.push(y);
            }
        }
        k += 1;
    }
    let gens = n
        .generators()
        .iter()
        .map(|g| {
            let img: Vec<usize> = reps.iter().map(|r| ids[&key(&r.mul(g))]).collect();
            Perm::from_images(&img).unwrap()
        })
        .collect();
    let q = PermGroup::new(reps.len(), gens);
    debug_assert_eq!(q.order(), index);
    Ok(q)
}

/// `W(M) = N_W(M)/M` and its catalog name.
pub fn discrete_weyl_group(w: &PermGroup, m: &PermGroup) -> Result<(PermGroup, NamedGroup)> {
    let n = normalizer(w, m);
    let q = quotient_action(&n, m)?;
    let name = identify(&q);
    Ok((q, name))
}

/// Normal subgroups of prime index `p`, as kernels of maps onto `Z_p`.
fn normal_subgroups_of_index(m: &Materialized, sub: &[usize], p: u64) -> Vec<Vec<usize>> {
    let gens = generators_of(m, sub);
    let mut seeds: Vec<usize> =
        gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| commutator(m, a, b)).collect();
    seeds.extend(gens.iter().map(|&a| pow_index(m, a, p)));
    let f = normal_closure(m, &seeds, &gens);
    // Basis of V = sub/F over F_p, then coordinates of every element.
    let mut basis: Vec<usize> = Vec::new();
    let mut span = f.clone();
    for &x in &gens {
        let sset: HashSet<usize> = span.iter().copied().collect();
        if !sset.contains(&x) {
            basis.push(x);
            let mut g = generators_of(m, &f);
            g.extend(&basis);
            span = closure(m, &g);
        }
    }
    let d = basis.len();
    let mut coord: HashMap<usize, Vec<u64>> = HashMap::new();
    let total = (p as usize).pow(d as u32);
    for code in 0..total {
        let mut e = Vec::with_capacity(d);
        let mut c = code;
        let mut x = m.identity_index();
        for &b in &basis {
            let k = (c % p as usize) as u64;
            c /= p as usize;
            e.push(k);
            x = m.mul(x, pow_index(m, b, k));
        }
        for &y in &f {
            coord.insert(m.mul(y, x), e.clone());
        }
    }
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let func: Vec<u64> = (0..d)
            .map(|_| {
                let k = (c % p as usize) as u64;
                c /= p as usize;
                k
            })
            .collect();
        // One functional per line: leading nonzero coefficient 1.
        if func.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let kernel: Vec<usize> = sub
            .iter()
            .copied()
            .filter(|x| coord[x].iter().zip(&func).map(|(a, b)| a * b).sum::<u64>() % p == 0)
            .collect();
        out.push(kernel);
    }
    out
}

/// Searches for a subnormal series `1 < H₀ ◁ H₁ ◁ … ◁ G` with `|H₀| = factors[0]`,
/// `|H_{i}/H_{i−1}| = factors[i]`, and `H₀` isomorphic to `bottom`.
pub fn has_subnormal_chain(g: &PermGroup, factors: &[u64], bottom: &PermGroup) -> bool {
    let Some(m) = Materialized::new(g, FINGERPRINT_CAP) else { return false };
    if factors.iter().map(|&f| f as u128).product::<u128>() != g.order() {
        return false;
    }
    let all: Vec<usize> = (0..m.len()).collect();
    chain_search(&m, &all, factors, bottom)
}

fn chain_search(m: &Materialized, sub: &[usize], factors: &[u64], bottom: &PermGroup) -> bool {
    if factors.len() == 1 {
        let gens = generators_of(m, sub).iter().map(|&i| m.elements[i].clone()).collect();
        let h = PermGroup::new(m.group.degree(), gens);
        return h.order() == factors[0] as u128 && are_isomorphic(&h, bottom).unwrap_or(false);
    }
    let p = *factors.last().unwrap();
    normal_subgroups_of_index(m, sub, p).into_iter().any(|k| chain_search(m, &k, &factors[..factors.len() - 1], bottom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let expect: &[(&str, u128)] = &[
            ("1", 1),
            ("2^3", 8),
            ("S_8", 40320),
            ("D_8", 8),
            ("D_12", 12),
            ("PSL(3,2)", 168),
            ("2^3:PSL(3,2)", 1344),
            ("S_4 x D_8", 192),
            ("(((2 x D_8):2):3):2", 192),
            ("((((2 x D_8):2):3):2):2", 384),
        ];
        for &(name, order) in expect {
            assert_eq!((lookup(name).unwrap().build)().order(), order, "{name}");
        }
        assert_eq!(lookup("PSL(2,7)").unwrap().name, "PSL(3,2)");
        assert_eq!(lookup("S_3 x S_2").unwrap().name, "D_12");
    }

    #[test]
    fn fingerprint_of_s4() {
        let f = fingerprint(&sym(4)).unwrap();
        assert_eq!(f.order, 24);
        assert_eq!(f.abelianization, vec![2]);
        assert_eq!(f.center_order, 1);
        assert_eq!(f.derived_series, vec![24, 12, 4, 1]);
        assert_eq!(f.class_count, 5);
        let g = fingerprint(&prod(cyclic(2), sym(4))).unwrap();
        assert_eq!((g.order, g.center_order), (48, 2));
        assert_ne!(fingerprint(&dihedral(4)).unwrap().exponent, fingerprint(&elementary2(3)).unwrap().exponent);
    }

    #[test]
    fn primary_invariants_of_products() {
        // Z4 × Z2: elements of order dividing 2: 4, dividing 4: 8.
        assert_eq!(primary_invariants(8, |k| if k == 2 { 4 } else { 8 }), vec![2, 4]);
        assert_eq!(primary_invariants(1, |_| 1), Vec::<u64>::new());
    }

    #[test]
    fn isomorphism_distinguishes_same_order() {
        let a = Materialized::new(&prod(sym(3), cyclic(2)), 100).unwrap();
        let b = Materialized::new(&dihedral(6), 100).unwrap();
        let c = Materialized::new(&prod(cyclic(3), elementary2(2)), 100).unwrap();
        assert!(isomorphic(&a, &b));
        assert!(!isomorphic(&a, &c));
    }

    #[test]
    fn quotient_of_group_by_itself_is_trivial() {
        let g = sym(4);
        let q = quotient_action(&g, &g).unwrap();
        assert_eq!(q.order(), 1);
        let v4 = PermGroup::new(
            4,
            vec![Perm::from_cycles(4, &[&[0, 1], &[2, 3]]), Perm::from_cycles(4, &[&[0, 2], &[1, 3]])],
        );
        let q = quotient_action(&g, &v4).unwrap();
        assert_eq!(identify(&q).name, "S_3");
        let a = PermGroup::new(4, vec![Perm::from_cycles(4, &[&[0, 1]])]);
        assert!(matches!(quotient_action(&g, &a), Err(Error::NotNormal)));
    }
}
