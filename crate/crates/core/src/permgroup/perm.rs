//! Permutations of `0..n` acting on the right: `i^(gh) = (i^g)^h`.

use std::fmt;

use num_integer::Integer;

/// A permutation stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

/// A Coxeter group element is a permutation of the root index set.
pub type GroupElement = Perm;

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= u16::MAX as usize + 1, "degree {n} too large");
        Perm((0..n).map(|i| i as u16).collect())
    }

    /// Builds a permutation from its images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Option<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images.iter().map(|&x| x as u16).collect()))
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Perm {
        Perm(images.into_boxed_slice())
    }

    /// Permutation from disjoint cycles on `0..n`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Perm {
        let mut img: Vec<u16> = (0..n as u16).collect();
        for c in cycles {
            for k in 0..c.len() {
                img[c[k]] = c[(k + 1) % c.len()] as u16;
            }
        }
        Perm::from_raw(img)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm::from_raw(inv)
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut out = vec![0u16; self.degree()];
        for i in 0..self.degree() {
            out[g.0[i] as usize] = g.0[self.0[i] as usize];
        }
        Perm::from_raw(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        (0..self.degree()).all(|i| other.0[self.0[i] as usize] == self.0[other.0[i] as usize])
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, &x)| *i != x as usize).map(|(i, _)| i)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.moved_points().next()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for i in 0..n {
            if seen[i] || self.image(i) == i {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut j = i;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{j}")?;
                first = false;
                j = self.image(j);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(&v).unwrap())
    }

    #[test]
    fn right_action_composition() {
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        let b = Perm::from_cycles(3, &[&[1, 2]]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.mul(&b).order(), 3);
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_perm(9), b in arb_perm(9), c in arb_perm(9)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.conj(&b), b.inverse().mul(&a).mul(&b));
            prop_assert!(a.pow(a.order()).is_identity());
        }
    }
}
