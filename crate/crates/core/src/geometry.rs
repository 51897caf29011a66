//! Incidence geometries cut out by an abelian subgroup on a weight set.
//!
//! Points are reflections; lines are the nontrivial orbits. A point lies on
//! a line when its reflection joins two distinct members of the orbit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{coxeter_group, orbits_of, Perm, PermGroup};
use crate::quotient::{discrete_weyl_group, identify, NamedGroup};
use crate::rootsys::{CoxeterType, RootSystem};
use crate::weights::{Lines27, WeightSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceGeometry {
    /// Root index of each point's reflection.
    pub points: Vec<usize>,
    /// Point indices on each line, ascending.
    pub lines: Vec<Vec<usize>>,
    /// The orbit behind each line, as element indices.
    pub orbits: Vec<Vec<usize>>,
    pub trivial_orbits: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Recognition {
    Square,
    Octahedral,
    Fano,
    ExtendedFano,
    Other,
}

/// Geometry of `⟨m_gens⟩` on `ws` with the reflections in `points` as points.
/// With `fold`, weights are identified with their negatives.
pub fn orbit_geometry(
    rs: &RootSystem,
    ws: &WeightSet,
    m_gens: &[Perm],
    points: &[usize],
    fold: bool,
) -> Result<IncidenceGeometry> {
    let n = ws.len();
    // Class of each weight: itself, or the smaller of ±λ.
    let class: Vec<usize> = (0..n)
        .map(|i| {
            if !fold {
                return Ok(i);
            }
            ws.negation(i)
                .map(|j| i.min(j))
                .ok_or_else(|| Error::Inconsistent("weight set not closed under negation".into()))
        })
        .collect::<Result<_>>()?;
    let on_classes = |g: &Perm| -> Perm {
        let images: Vec<usize> = (0..n).map(|i| class[g.image(class[i])]).collect();
        // Non-representatives are fixed; the map is a permutation of representatives.
        let images: Vec<usize> = (0..n).map(|i| if class[i] == i { images[i] } else { i }).collect();
        Perm::from_images(&images).expect("class action is a permutation")
    };
    let gens: Vec<Perm> = m_gens.iter().map(|g| on_classes(&ws.action(rs, g))).collect();
    let refl: Vec<Perm> = points.iter().map(|&p| on_classes(&ws.action(rs, rs.reflection(p)))).collect();
    let mut lines = Vec::new();
    let mut orbits = Vec::new();
    let mut trivial = 0;
    for o in orbits_of(n, &gens) {
        if class[o[0]] != o[0] {
            continue;
        }
        if o.len() == 1 {
            trivial += 1;
            continue;
        }
        let on: Vec<usize> = (0..points.len())
            .filter(|&p| o.iter().any(|&x| refl[p].image(x) != x && o.contains(&refl[p].image(x))))
            .collect();
        lines.push(on);
        orbits.push(o);
    }
    Ok(IncidenceGeometry { points: points.to_vec(), lines, orbits, trivial_orbits: trivial })
}

/// Geometry of the group generated by the reflections in `roots`.
pub fn reflection_geometry(rs: &RootSystem, ws: &WeightSet, roots: &[usize], fold: bool) -> Result<IncidenceGeometry> {
    let gens: Vec<Perm> = roots.iter().map(|&r| rs.reflection(r).clone()).collect();
    orbit_geometry(rs, ws, &gens, roots, fold)
}

impl IncidenceGeometry {
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point_degree(&self, p: usize) -> usize {
        self.lines.iter().filter(|l| l.contains(&p)).count()
    }

    pub fn flags(&self) -> Vec<(usize, usize)> {
        self.lines.iter().enumerate().flat_map(|(l, ps)| ps.iter().map(move |&p| (p, l))).collect()
    }

    fn uniform(&self, points: usize, lines: usize, per_line: usize, per_point: usize) -> bool {
        self.num_points() == points
            && self.lines.len() == lines
            && self.lines.iter().all(|l| l.len() == per_line)
            && (0..points).all(|p| self.point_degree(p) == per_point)
    }

    /// Lines through every `t` distinct points, counted with multiplicity.
    fn lines_through_all(&self, t: usize) -> bool {
        fn subsets(n: usize, t: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if cur.len() == t {
                return f(cur);
            }
            for x in from..n {
                cur.push(x);
                let ok = subsets(n, t, x + 1, cur, f);
                cur.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        let mut exactly_one = |s: &[usize]| self.lines.iter().filter(|l| s.iter().all(|p| l.contains(p))).count() == 1;
        subsets(self.num_points(), t, 0, &mut Vec::new(), &mut exactly_one)
    }

    pub fn recognize(&self) -> Recognition {
        let mut sorted = self.lines.clone();
        sorted.sort();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        if self.uniform(4, 4, 2, 2) && distinct && self.is_connected() {
            return Recognition::Square;
        }
        if self.uniform(6, 3, 4, 2)
            && (0..3)
                .all(|i| (i + 1..3).all(|j| self.lines[i].iter().filter(|p| self.lines[j].contains(p)).count() == 2))
        {
            return Recognition::Octahedral;
        }
        if self.uniform(7, 7, 3, 3) && self.lines_through_all(2) {
            return Recognition::Fano;
        }
        if self.uniform(8, 14, 4, 7) && self.lines_through_all(3) {
            let complement_closed = self.lines.iter().all(|l| {
                let c: Vec<usize> = (0..8).filter(|p| !l.contains(p)).collect();
                self.lines.contains(&c)
            });
            if complement_closed {
                return Recognition::ExtendedFano;
            }
        }
        Recognition::Other
    }

    fn is_connected(&self) -> bool {
        let n = self.num_points();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            if std::mem::replace(&mut seen[p], true) {
                continue;
            }
            for l in self.lines.iter().filter(|l| l.contains(&p)) {
                stack.extend(l.iter().copied().filter(|&q| !seen[q]));
            }
        }
        n == 0 || seen.into_iter().all(|s| s)
    }

    fn line_multiset(&self, image: &[usize]) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for l in &self.lines {
            let mut t: Vec<usize> = l.iter().map(|&p| image[p]).collect();
            t.sort_unstable();
            *m.entry(t).or_insert(0) += 1;
        }
        m
    }

    /// Point permutations carrying lines to lines, found by backtracking.
    pub fn automorphisms(&self) -> (PermGroup, NamedGroup) {
        let n = self.num_points();
        let identity: Vec<usize> = (0..n).collect();
        let target = self.line_multiset(&identity);
        let mut group = PermGroup::trivial(n);
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(0, &mut image, &mut used, &target, &mut group);
        let name = identify(&group);
        (group, name)
    }

    fn extend(
        &self,
        p: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target: &BTreeMap<Vec<usize>, usize>,
        group: &mut PermGroup,
    ) {
        let n = self.num_points();
        if p == n {
            if self.line_multiset(image) == *target {
                let g = Perm::from_images(image).expect("bijection");
                if !group.contains(&g) {
                    let mut gens = group.generators().to_vec();
                    gens.push(g);
                    *group = PermGroup::new(n, gens);
                }
            }
            return;
        }
        for q in 0..n {
            if used[q] {
                continue;
            }
            image[p] = q;
            // Lines inside the assigned prefix must land on lines.
            let ok = self.lines.iter().filter(|l| l.iter().all(|&x| x <= p)).all(|l| {
                let mut t: Vec<usize> = l.iter().map(|&x| image[x]).collect();
                t.sort_unstable();
                target.contains_key(&t)
            });
            if ok {
                used[q] = true;
                self.extend(p + 1, image, used, target, group);
                used[q] = false;
            }
        }
        image[p] = usize::MAX;
    }

    /// DOT export: lines as cliques, or the bipartite incidence graph.
    pub fn to_dot(&self, names: &[String], bipartite: bool) -> String {
        let mut s = String::from("graph geometry {\n");
        if bipartite {
            for (l, ps) in self.lines.iter().enumerate() {
                let _ = writeln!(s, "  L{l} [shape=box];");
                for &p in ps {
                    let _ = writeln!(s, "  \"{}\" -- L{l};", names[p]);
                }
            }
        } else {
            for (l, ps) in self.lines.iter().enumerate() {
                for (i, &a) in ps.iter().enumerate() {
                    for &b in &ps[i + 1..] {
                        let _ = writeln!(s, "  \"{}\" -- \"{}\" [label=L{l}];", names[a], names[b]);
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The three `M`-orbits of the 27 lines under `M = ⟨s₁s₃, s₅s₆, s_α̃ s₂⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct E6Triad {
    pub orbits: Vec<Vec<String>>,
    pub is_triad: bool,
    /// Six reflections against the three orbits.
    pub geometry: IncidenceGeometry,
    pub weyl: NamedGroup,
}

pub fn e6_m_orbits(rs: &RootSystem, ws: &WeightSet, lines: &Lines27) -> Result<E6Triad> {
    if rs.ctype != CoxeterType::e(6) {
        return Err(Error::UnsupportedWeight { ctype: rs.ctype.name(), index: ws.fundamental });
    }
    let top = rs.highest_root.ok_or_else(|| Error::NoCoordinates(rs.ctype.name()))?;
    let s = |i: usize| rs.reflection(i).clone();
    let gens = vec![s(0).mul(&s(2)), s(4).mul(&s(5)), s(top).mul(&s(1))];
    let points = [0, 2, 4, 5, top, 1];
    let geometry = orbit_geometry(rs, ws, &gens, &points, false)?;
    let mut sets: Vec<Vec<usize>> = geometry.orbits.clone();
    for o in &mut sets {
        o.sort_unstable();
    }
    let (nines, triads) = lines.steiner_structures();
    let is_triad = sets.len() == 3
        && triads.iter().any(|t| {
            let mut ours = sets.clone();
            ours.sort();
            let mut theirs: Vec<Vec<usize>> = t.iter().map(|&i| nines[i].clone()).collect();
            theirs.sort();
            ours == theirs
        });
    let w = coxeter_group(rs);
    let (_, weyl) = discrete_weyl_group(&w, &w.subgroup(gens))?;
    let orbits = sets.iter().map(|o| o.iter().map(|&x| lines.name(x).to_string()).collect()).collect();
    Ok(E6Triad { orbits, is_triad, geometry, weyl })
}

/// Lines through the first point, through the second but not the first,
/// and the rest.
pub fn line_split(geo: &IncidenceGeometry) -> (usize, usize, usize) {
    let a = geo.lines.iter().filter(|l| l.contains(&0)).count();
    let b = geo.lines.iter().filter(|l| !l.contains(&0) && l.contains(&1)).count();
    (a, b, geo.lines.len() - a - b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo(points: usize, lines: &[&[usize]]) -> IncidenceGeometry {
        IncidenceGeometry {
            points: (0..points).collect(),
            lines: lines.iter().map(|l| l.to_vec()).collect(),
            orbits: Vec::new(),
            trivial_orbits: 0,
        }
    }

    const FANO: [&[usize]; 7] = [&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]];

    #[test]
    fn abstract_recognition() {
        let sq = geo(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert_eq!(sq.recognize(), Recognition::Square);
        assert_eq!(sq.automorphisms().0.order(), 8);
        let two_digons = geo(4, &[&[0, 1], &[0, 1], &[2, 3], &[2, 3]]);
        assert_eq!(two_digons.recognize(), Recognition::Other);
        let fano = geo(7, &FANO);
        assert_eq!(fano.recognize(), Recognition::Fano);
        let (g, name) = fano.automorphisms();
        assert_eq!(g.order(), 168);
        assert_eq!(name.name, "PSL(3,2)");
        let oct = geo(6, &[&[0, 1, 2, 3], &[0, 1, 4, 5], &[2, 3, 4, 5]]);
        assert_eq!(oct.recognize(), Recognition::Octahedral);
        assert_eq!(oct.automorphisms().0.order(), 48);
    }

    #[test]
    fn broken_fano_is_other() {
        let mut lines: Vec<&[usize]> = FANO.to_vec();
        lines[6] = &[2, 4, 6];
        assert_eq!(geo(7, &lines).recognize(), Recognition::Other);
    }
}
