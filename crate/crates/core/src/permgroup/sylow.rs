//! Sylow subgroups by normalizer ascent.
//!
//! If `P` is a p-subgroup that is not Sylow in `A`, then `N_A(P)/P` has order
//! divisible by `p`, so some element of `N_A(P)` has a p-part outside `P`.

use super::{normalizer, Materialized, Perm, PermGroup, DEFAULT_CAP};

/// Largest power of `p` dividing `n`.
pub(crate) fn p_part(mut n: u128, p: u128) -> u128 {
    let mut q = 1;
    while n.is_multiple_of(p) {
        n /= p;
        q *= p;
    }
    q
}

/// The p-part of an element: `x^{o/p^a}` where `o = p^a·m`, `p ∤ m`.
pub(crate) fn p_part_element(x: &Perm, p: u64) -> Perm {
    let o = x.order() as u128;
    let q = p_part(o, p as u128);
    x.pow((o / q) as u64)
}

/// A Sylow p-subgroup of `g`, deterministic for a fixed seed.
pub fn sylow_subgroup(g: &PermGroup, p: u64, seed: u64) -> PermGroup {
    sylow_containing(g, p, PermGroup::trivial(g.degree()), seed)
}

/// A Sylow p-subgroup of `g` containing the p-subgroup `start`.
pub fn sylow_containing(g: &PermGroup, p: u64, start: PermGroup, seed: u64) -> PermGroup {
    let target = p_part(g.order(), p as u128);
    let mut ambient = g.clone();
    let mut sub = g.subgroup(start.generators().to_vec());
    let mut round = 0u64;
    while sub.order() < target {
        if ambient.order() <= DEFAULT_CAP {
            return materialized_ascent(&ambient, p, sub, target);
        }
        let n = if sub.is_trivial() { ambient.clone() } else { normalizer(&ambient, &sub) };
        if p_part(n.order(), p as u128) == target && n.order() < ambient.order() {
            ambient = n.clone();
            sub = ambient.subgroup(sub.generators().to_vec());
            continue;
        }
        let mut found = false;
        for attempt in 0..64u64 {
            let ys = n.random_elements(16, seed ^ (round << 20) ^ (attempt << 8));
            if let Some(x) = ys.iter().map(|y| p_part_element(y, p)).find(|x| !sub.contains(x)) {
                let mut gens = sub.generators().to_vec();
                gens.push(x);
                sub = ambient.subgroup(gens);
                found = true;
                break;
            }
        }
        assert!(found, "no p-element found outside the current p-subgroup");
        round += 1;
    }
    g.subgroup(sub.generators().to_vec())
}

fn materialized_ascent(ambient: &PermGroup, p: u64, start: PermGroup, target: u128) -> PermGroup {
    let m = Materialized::new(ambient, DEFAULT_CAP).expect("ambient within cap");
    let mut gens: Vec<usize> = start.generators().iter().map(|x| m.index_of(x).unwrap()).collect();
    let mut members = vec![false; m.len()];
    loop {
        let elems = m.closure(&gens);
        members.iter_mut().for_each(|b| *b = false);
        for &e in &elems {
            members[e] = true;
        }
        if elems.len() as u128 == target {
            break;
        }
        let normalizes = |y: usize| gens.iter().all(|&h| members[m.conj(h, y)]);
        let next = (0..m.len()).find(|&y| {
            if members[y] || !normalizes(y) {
                return false;
            }
            let x = m.index_of(&p_part_element(&m.elements[y], p)).unwrap();
            !members[x]
        });
        let y = next.expect("ascent stalled below the Sylow order");
        gens.push(m.index_of(&p_part_element(&m.elements[y], p)).unwrap());
    }
    ambient.subgroup(gens.iter().map(|&i| m.elements[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::coxeter_group;
    use crate::rootsys::{CoxeterType, RootSystem};

    #[test]
    fn p_parts() {
        assert_eq!(p_part(696729600, 2), 1 << 14);
        assert_eq!(p_part(51840, 3), 81);
        assert_eq!(p_part(7, 2), 1);
    }

    #[test]
    fn sylow_orders() {
        for (t, p, q) in [(CoxeterType::e(6), 2, 128u128), (CoxeterType::e(6), 3, 81), (CoxeterType::f4(), 3, 9)] {
            let w = coxeter_group(&RootSystem::new(t));
            let s = sylow_subgroup(&w, p, 1);
            assert_eq!(s.order(), q, "{t} p={p}");
            assert!(s.is_subgroup_of(&w));
        }
    }
}
