//! Explicitly listed groups with O(base length) multiplication via base-image keys.

use std::collections::HashMap;

use super::{Perm, PermGroup};

/// Default materialization cap.
pub const DEFAULT_CAP: u128 = 1 << 16;

/// A group whose elements are listed. Element `i` is identified by the
/// images of the chain's base points, packed into a `u128` when they fit
/// and kept as a vector otherwise.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub group: PermGroup,
    pub elements: Vec<Perm>,
    base: Vec<usize>,
    bits: u32,
    index: HashMap<u128, u32>,
    wide: HashMap<Vec<u16>, u32>,
    inv: Vec<u32>,
}

impl Materialized {
    pub fn new(group: &PermGroup, cap: u128) -> Option<Materialized> {
        if group.order() > cap {
            return None;
        }
        let mut base = group.base();
        if base.is_empty() {
            base.push(0);
        }
        let elements = group.elements(cap);
        Some(Self::from_elements(group, elements))
    }

    /// Materializes an explicit element list known to form a group.
    pub fn from_elements(group: &PermGroup, elements: Vec<Perm>) -> Materialized {
        let mut m = Materialized {
            group: group.clone(),
            elements: Vec::new(),
            base: group.base(),
            bits: if group.degree() <= 256 { 8 } else { 16 },
            index: HashMap::new(),
            wide: HashMap::new(),
            inv: Vec::new(),
        };
        if m.base.is_empty() {
            m.base.push(0);
        }
        m.elements = elements;
        for (i, g) in m.elements.iter().enumerate() {
            if m.packed() {
                let k = m.key(g);
                m.index.insert(k, i as u32);
            } else {
                m.wide.insert(m.base.iter().map(|&b| g.image(b) as u16).collect(), i as u32);
            }
        }
        m.inv = (0..m.elements.len()).map(|i| m.index_of(&m.elements[i].inverse()).unwrap() as u32).collect();
        m
    }

    #[inline]
    fn packed(&self) -> bool {
        self.base.len() as u32 * self.bits <= 128
    }

    /// Packed base images; only meaningful when the base fits in 128 bits.
    #[inline]
    pub fn key(&self, g: &Perm) -> u128 {
        let mut k = 0u128;
        for &b in &self.base {
            k = (k << self.bits) | g.image(b) as u128;
        }
        k
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        if self.packed() {
            self.index.get(&self.key(g)).map(|&i| i as usize)
        } else {
            let k: Vec<u16> = self.base.iter().map(|&b| g.image(b) as u16).collect();
            self.wide.get(&k).map(|&i| i as usize)
        }
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&self.group.identity()).unwrap()
    }

    /// Index of `a·b` (a then b).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (ga, gb) = (&self.elements[a], &self.elements[b]);
        if !self.packed() {
            let k: Vec<u16> = self.base.iter().map(|&p| gb.image(ga.image(p)) as u16).collect();
            return self.wide[&k] as usize;
        }
        let mut k = 0u128;
        for &p in &self.base {
            k = (k << self.bits) | gb.image(ga.image(p)) as u128;
        }
        self.index[&k] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn order_of(&self, a: usize) -> u64 {
        let id = self.identity_index();
        let mut x = a;
        let mut n = 1;
        while x != id {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Closure of a generating set inside this group.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let id = self.identity_index();
        let mut seen = vec![false; self.len()];
        seen[id] = true;
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out
    }

    /// Index set of the centre.
    pub fn center(&self) -> Vec<usize> {
        let gens: Vec<usize> = self.group.generators().iter().map(|g| self.index_of(g).unwrap()).collect();
        (0..self.len()).filter(|&x| gens.iter().all(|&g| self.commute(x, g))).collect()
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.group.generators().iter().map(|g| self.index_of(g).unwrap()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_tables() {
        let g = PermGroup::new(5, vec![Perm::from_cycles(5, &[&[0, 1]]), Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]])]);
        let m = Materialized::new(&g, 1000).unwrap();
        assert_eq!(m.len(), 120);
        for a in (0..120).step_by(7) {
            for b in (0..120).step_by(11) {
                let p = m.elements[a].mul(&m.elements[b]);
                assert_eq!(m.index_of(&p).unwrap(), m.mul(a, b));
            }
            assert_eq!(m.mul(a, m.inv(a)), m.identity_index());
        }
        assert_eq!(m.center(), vec![m.identity_index()]);
    }
}
