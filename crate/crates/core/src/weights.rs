//! Minuscule and adjoint weight sets as `W`-sets, and the classical
//! configuration of the 27 lines carried by the `E₆` weights.
//!
//! Weights are integer vectors in the fundamental-weight basis, so a simple
//! reflection acts by `s_i(λ) = λ − λ_i α_i`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{centralizer, coxeter_group, normalizer, orbits_of, Perm, PermGroup};
use crate::quotient::{discrete_weyl_group, NamedGroup};
use crate::rootsys::{CoxeterType, Family, RootSystem};
use crate::scalar::Scalar;

/// A single `W`-orbit of weights.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSet {
    pub ctype: CoxeterType,
    /// Bourbaki number of the highest weight's fundamental weight.
    pub fundamental: usize,
    pub weights: Vec<Vec<i64>>,
    /// Height below the highest weight (0 for the highest).
    pub depths: Vec<i64>,
    pub labels: Option<Vec<String>>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    #[serde(skip)]
    simple: Vec<Perm>,
}

fn supported(ct: &CoxeterType, fw: usize) -> bool {
    let r = ct.rank;
    if fw == 0 || fw > r {
        return false;
    }
    match ct.family {
        Family::A => true,
        Family::B | Family::C => fw == 1 || (ct.family == Family::B && fw == r),
        Family::D => fw == 1 || fw + 1 >= r,
        Family::E => matches!((r, fw), (6, 1) | (6, 6) | (7, 7) | (8, 8)),
        _ => false,
    }
}

/// `α_i` in the fundamental-weight basis, one row per simple root.
fn simple_roots_in_weights(rs: &RootSystem) -> Result<Vec<Vec<i64>>> {
    let r = rs.rank();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| rs.cartan_integer(j, i)?.to_i64().ok_or_else(|| Error::NotCrystallographic(rs.ctype.name())))
                .collect()
        })
        .collect()
}

/// The orbit of the fundamental weight `ω_fw` (Bourbaki numbering).
pub fn weight_orbit(rs: &RootSystem, fw: usize) -> Result<WeightSet> {
    let ct = rs.ctype;
    if !supported(&ct, fw) {
        return Err(Error::UnsupportedWeight { ctype: ct.name(), index: fw });
    }
    let r = rs.rank();
    let alpha = simple_roots_in_weights(rs)?;
    let mut top = vec![0i64; r];
    top[fw - 1] = 1;
    let mut depth: HashMap<Vec<i64>, i64> = HashMap::from([(top.clone(), 0)]);
    let mut queue = VecDeque::from([top]);
    while let Some(l) = queue.pop_front() {
        for i in 0..r {
            if l[i] == 0 {
                continue;
            }
            let m: Vec<i64> = (0..r).map(|j| l[j] - l[i] * alpha[i][j]).collect();
            if !depth.contains_key(&m) {
                depth.insert(m.clone(), depth[&l] + l[i]);
                queue.push_back(m);
            }
        }
    }
    let mut weights: Vec<Vec<i64>> = depth.keys().cloned().collect();
    weights.sort_by(|a, b| depth[a].cmp(&depth[b]).then(a.cmp(b)));
    let depths = weights.iter().map(|w| depth[w]).collect();
    let index: HashMap<Vec<i64>, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let simple = (0..r)
        .map(|i| {
            let images: Vec<usize> =
                weights.iter().map(|l| index[&(0..r).map(|j| l[j] - l[i] * alpha[i][j]).collect::<Vec<_>>()]).collect();
            Perm::from_images(&images).expect("simple reflection permutes the orbit")
        })
        .collect();
    Ok(WeightSet { ctype: ct, fundamental: fw, weights, depths, labels: None, index, simple })
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, w: &[i64]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `−λ`, when it lies in the set.
    pub fn negation(&self, i: usize) -> Option<usize> {
        let neg: Vec<i64> = self.weights[i].iter().map(|x| -x).collect();
        self.index_of(&neg)
    }

    /// Action of the `i`-th simple reflection.
    pub fn simple_action(&self, i: usize) -> &Perm {
        &self.simple[i]
    }

    /// Action of a group element given as a permutation of the roots.
    /// `(gλ)_i = ⟨λ, (g⁻¹α_i)^∨⟩`.
    pub fn action(&self, rs: &RootSystem, g: &Perm) -> Perm {
        let r = rs.rank();
        let ginv = g.inverse();
        // coeff[i][k]: ⟨λ,(g⁻¹α_i)^∨⟩ = Σ_k coeff[i][k]·λ_k.
        let coeff: Vec<Vec<Scalar>> = (0..r)
            .map(|i| {
                let beta = &rs.roots[ginv.image(i)].coords;
                let mut norm = Scalar::zero();
                for a in 0..r {
                    for b in 0..r {
                        norm = norm + &(&beta[a] * &beta[b]) * &rs.gram[a][b];
                    }
                }
                (0..r).map(|k| (&beta[k] * &rs.gram[k][k]).div(&norm).expect("nonzero norm")).collect()
            })
            .collect();
        let images: Vec<usize> = self
            .weights
            .iter()
            .map(|l| {
                let m: Vec<i64> = coeff
                    .iter()
                    .map(|row| {
                        let mut s = Scalar::zero();
                        for (c, &x) in row.iter().zip(l) {
                            s = s + c * &Scalar::from_int(x);
                        }
                        s.to_i64().expect("integral weight")
                    })
                    .collect();
                self.index[&m]
            })
            .collect();
        Perm::from_images(&images).expect("group element permutes the orbit")
    }

    /// The image of `W` in the symmetric group on the weights.
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.len(), self.simple.clone())
    }

    /// Image of a root subgroup acting on the weights.
    pub fn subgroup_action(&self, rs: &RootSystem, h: &PermGroup) -> PermGroup {
        PermGroup::new(self.len(), h.generators().iter().map(|g| self.action(rs, g)).collect())
    }

    /// True when `W` acts faithfully: its image has order `|W|`.
    pub fn is_faithful(&self) -> bool {
        self.group().order() == self.ctype.group_order()
    }
}

/// Orbits of the subgroup generated by the listed simple reflections.
pub fn parabolic_orbits(ws: &WeightSet, simple: &[usize]) -> Vec<Vec<usize>> {
    let gens: Vec<Perm> = simple.iter().map(|&i| ws.simple_action(i).clone()).collect();
    orbits_of(ws.len(), &gens)
}

/// The classical names of the 27 lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineKind {
    A(u8),
    B(u8),
    C(u8, u8),
}

impl LineKind {
    pub fn name(&self) -> String {
        match *self {
            LineKind::A(i) => format!("a{i}"),
            LineKind::B(i) => format!("b{i}"),
            LineKind::C(i, j) => format!("c{i}{j}"),
        }
    }

    pub fn parse(s: &str) -> Option<LineKind> {
        let d: Vec<u8> = s[1..].bytes().map(|b| b.wrapping_sub(b'0')).collect();
        let ok = |x: u8| (1..=6).contains(&x);
        match (s.as_bytes().first()?, d.as_slice()) {
            (b'a', &[i]) if ok(i) => Some(LineKind::A(i)),
            (b'b', &[i]) if ok(i) => Some(LineKind::B(i)),
            (b'c', &[i, j]) if ok(i) && ok(j) && i < j => Some(LineKind::C(i, j)),
            _ => None,
        }
    }

    /// Intersection by the classical rules.
    pub fn meets(&self, other: &LineKind) -> bool {
        use LineKind::*;
        match (*self, *other) {
            (A(i), B(j)) | (B(j), A(i)) => i != j,
            (A(i), C(j, k)) | (C(j, k), A(i)) | (B(i), C(j, k)) | (C(j, k), B(i)) => i == j || i == k,
            (C(i, j), C(k, l)) => i != k && i != l && j != k && j != l,
            _ => false,
        }
    }

    /// Class in `H²` of the blown-up plane, basis `e₀,…,e₆`.
    fn class(&self) -> [i64; 7] {
        let mut v = [0i64; 7];
        match *self {
            LineKind::A(i) => v[i as usize] = 1,
            LineKind::B(i) => {
                v = [2, -1, -1, -1, -1, -1, -1];
                v[i as usize] = 0;
            }
            LineKind::C(i, j) => {
                v[0] = 1;
                v[i as usize] = -1;
                v[j as usize] = -1;
            }
        }
        v
    }

    fn all() -> Vec<LineKind> {
        let mut v: Vec<LineKind> = (1..=6).map(LineKind::A).chain((1..=6).map(LineKind::B)).collect();
        for i in 1..=6 {
            for j in i + 1..=6 {
                v.push(LineKind::C(i, j));
            }
        }
        v
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchlafliLine {
    pub name: String,
    pub kind: LineKind,
    pub weight: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TritangentKind {
    /// `aᵢ bⱼ c_{ij}`.
    Abc,
    /// `c_{ij} c_{kl} c_{mn}`.
    Ccc,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tritangent {
    /// Weight indices, ascending.
    pub lines: [usize; 3],
    pub kind: TritangentKind,
}

/// The 27 lines, indexed by weight.
#[derive(Clone, Debug, Serialize)]
pub struct Lines27 {
    pub lines: Vec<SchlafliLine>,
    /// Adjacency of the intersection graph.
    pub meets: Vec<Vec<bool>>,
}

fn form(x: &[i64; 7], y: &[i64; 7]) -> i64 {
    x[0] * y[0] - (1..7).map(|i| x[i] * y[i]).sum::<i64>()
}

/// Reflections of the blown-up plane matching the Bourbaki simple roots:
/// `α₁ = e₁−e₂`, `α₂ = e₀−e₄−e₅−e₆`, `α₃ = e₂−e₃`, `α₄ = e₃−e₄`,
/// `α₅ = e₄−e₅`, `α₆ = e₅−e₆`.
fn del_pezzo_roots() -> [[i64; 7]; 6] {
    [
        [0, 1, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, -1, -1, -1],
        [0, 0, 1, -1, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0],
        [0, 0, 0, 0, 1, -1, 0],
        [0, 0, 0, 0, 0, 1, -1],
    ]
}

/// `s_r(x) = x + (x·r) r` for `r·r = −2`.
fn reflect(x: &[i64; 7], r: &[i64; 7]) -> [i64; 7] {
    let c = form(x, r);
    std::array::from_fn(|i| x[i] + c * r[i])
}

/// Unordered pairs of weights split into `W`-orbits.
fn pair_orbits(ws: &WeightSet) -> Vec<Vec<(usize, usize)>> {
    let n = ws.len();
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !seen.insert((a, b)) {
                continue;
            }
            let mut orbit = vec![(a, b)];
            let mut i = 0;
            while i < orbit.len() {
                let (x, y) = orbit[i];
                for s in &ws.simple {
                    let p = key(s.image(x), s.image(y));
                    if seen.insert(p) {
                        orbit.push(p);
                    }
                }
                i += 1;
            }
            out.push(orbit);
        }
    }
    out
}

/// Labels the 27 weights of `(E₆, ω₁)` by Schläfli's names. The highest
/// weight is `a₁`; every other label is transported from the blown-up plane
/// along simple reflections. Meeting is the `W`-orbit of 135 pairs.
pub fn schlafli_labeling(ws: &WeightSet) -> Result<Lines27> {
    if ws.ctype != CoxeterType::e(6) || ws.fundamental != 1 {
        return Err(Error::UnsupportedWeight { ctype: ws.ctype.name(), index: ws.fundamental });
    }
    let roots = del_pezzo_roots();
    let classes: HashMap<[i64; 7], LineKind> = LineKind::all().into_iter().map(|k| (k.class(), k)).collect();
    let mut label: Vec<Option<[i64; 7]>> = vec![None; 27];
    label[0] = Some(LineKind::A(1).class());
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let lu = label[u].unwrap();
        for (i, r) in roots.iter().enumerate() {
            let v = ws.simple[i].image(u);
            let lv = reflect(&lu, r);
            match label[v] {
                None => {
                    label[v] = Some(lv);
                    queue.push_back(v);
                }
                Some(x) if x != lv => return Err(Error::Inconsistent(format!("weight {v} labelled twice"))),
                _ => {}
            }
        }
    }
    let lines: Vec<SchlafliLine> = label
        .iter()
        .enumerate()
        .map(|(w, l)| {
            let kind = classes[&l.expect("orbit is connected")];
            SchlafliLine { name: kind.name(), kind, weight: w }
        })
        .collect();

    let orbits = pair_orbits(ws);
    let meet_orbit = orbits
        .iter()
        .find(|o| o.len() == 135)
        .filter(|_| orbits.len() == 2)
        .ok_or_else(|| Error::Inconsistent("pairs of lines do not split as 135 + 216".into()))?;
    let mut meets = vec![vec![false; 27]; 27];
    for &(a, b) in meet_orbit {
        meets[a][b] = true;
        meets[b][a] = true;
    }
    for a in 0..27 {
        for b in 0..27 {
            let rule = a != b && lines[a].kind.meets(&lines[b].kind);
            let model = a != b && form(&lines[a].kind.class(), &lines[b].kind.class()) == 1;
            if meets[a][b] != rule || rule != model {
                return Err(Error::Inconsistent(format!(
                    "intersection of {} and {} disagrees with the classical rules",
                    lines[a].name, lines[b].name
                )));
            }
        }
    }
    Ok(Lines27 { lines, meets })
}

impl Lines27 {
    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.lines.iter().position(|l| l.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.lines[i].name
    }

    pub fn degree(&self, i: usize) -> usize {
        self.meets[i].iter().filter(|&&m| m).count()
    }

    /// The 45 triangles of the intersection graph.
    pub fn tritangents(&self) -> Vec<Tritangent> {
        let mut out = Vec::new();
        for a in 0..27 {
            for b in a + 1..27 {
                if !self.meets[a][b] {
                    continue;
                }
                for c in b + 1..27 {
                    if self.meets[a][c] && self.meets[b][c] {
                        let all_c = [a, b, c].iter().all(|&x| matches!(self.lines[x].kind, LineKind::C(..)));
                        let kind = if all_c { TritangentKind::Ccc } else { TritangentKind::Abc };
                        out.push(Tritangent { lines: [a, b, c], kind });
                    }
                }
            }
        }
        out
    }

    fn skew_cliques(&self, size: usize) -> Vec<Vec<usize>> {
        fn grow(l: &Lines27, cur: &mut Vec<usize>, from: usize, size: usize, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for x in from..27 {
                if cur.iter().all(|&y| !l.meets[x][y]) {
                    cur.push(x);
                    grow(l, cur, x + 1, size, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        grow(self, &mut Vec::new(), 0, size, &mut out);
        out
    }

    /// Double-sixes as pairs `(A, B)` with `A[i]` skew to `B[i]` and meeting
    /// every other `B[j]`; each unordered pair is listed once. The partner of
    /// `a ∈ A` is the unique line outside `A` meeting `A∖{a}` but not `a`.
    pub fn double_sixes(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for six in self.skew_cliques(6) {
            let partner: Option<Vec<usize>> = six
                .iter()
                .map(|&a| {
                    let mut c = (0..27).filter(|&x| {
                        !six.contains(&x) && six.iter().all(|&y| y == a || self.meets[x][y]) && !self.meets[x][a]
                    });
                    match (c.next(), c.next()) {
                        (Some(b), None) => Some(b),
                        _ => None,
                    }
                })
                .collect();
            let Some(b) = partner else { continue };
            let pairwise_skew = b.iter().all(|&x| b.iter().all(|&y| x == y || !self.meets[x][y]));
            let pattern = (0..6).all(|i| (0..6).all(|j| self.meets[six[i]][b[j]] == (i != j)));
            let mut sb = b.clone();
            sb.sort_unstable();
            if pairwise_skew && pattern && !seen.contains(&sb) {
                seen.insert(six.clone());
                out.push((six, b));
            }
        }
        out
    }

    /// Steiner trihedral pairs (nine-line sets that split into three
    /// tritangents in two transversal ways) and the triads they form.
    pub fn steiner_structures(&self) -> (Vec<Vec<usize>>, Vec<[usize; 3]>) {
        let tri = self.tritangents();
        let sets: Vec<u32> = tri.iter().map(|t| t.lines.iter().fold(0u32, |m, &x| m | 1 << x)).collect();
        let mut nines: BTreeSet<u32> = BTreeSet::new();
        for i in 0..tri.len() {
            for j in i + 1..tri.len() {
                if sets[i] & sets[j] != 0 {
                    continue;
                }
                for k in j + 1..tri.len() {
                    if sets[k] & (sets[i] | sets[j]) != 0 {
                        continue;
                    }
                    let nine = sets[i] | sets[j] | sets[k];
                    let rows = [sets[i], sets[j], sets[k]];
                    let cols: Vec<u32> = sets
                        .iter()
                        .copied()
                        .filter(|&t| t & nine == t && rows.iter().all(|r| (r & t).count_ones() == 1))
                        .collect();
                    let covered = cols.iter().fold(0, |m, &c| m | c);
                    if cols.len() == 3 && covered == nine {
                        nines.insert(nine);
                    }
                }
            }
        }
        let nines: Vec<u32> = nines.into_iter().collect();
        let full = (1u32 << 27) - 1;
        let pos: HashMap<u32, usize> = nines.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut triads = Vec::new();
        for i in 0..nines.len() {
            for j in i + 1..nines.len() {
                if nines[i] & nines[j] != 0 {
                    continue;
                }
                if let Some(&k) = pos.get(&(full & !(nines[i] | nines[j]))) {
                    if k > j {
                        triads.push([i, j, k]);
                    }
                }
            }
        }
        let as_lists = nines.iter().map(|&m| (0..27).filter(|&x| m >> x & 1 == 1).collect()).collect();
        (as_lists, triads)
    }

    /// DOT rendering of the intersection graph.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph lines27 {\n");
        for a in 0..27 {
            for b in a + 1..27 {
                if self.meets[a][b] {
                    let _ = writeln!(s, "  {} -- {};", self.name(a), self.name(b));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Word in simple reflections, read as a composition of maps:
/// `[i, j]` is `s_i ∘ s_j`.
fn compose(rs: &RootSystem, word: &[usize]) -> Perm {
    let n = rs.num_roots();
    word.iter().fold(Perm::identity(n), |acc, &i| rs.reflection(i).mul(&acc))
}

/// `w^v = v⁻¹ w v` as maps.
fn conj_map(w: &Perm, v: &Perm) -> Perm {
    v.mul(w).mul(&v.inverse())
}

/// One of the three classes of maximal elementary abelian 2-subgroups of
/// order 16 in `W(E₆)`.
#[derive(Clone, Debug, Serialize)]
pub struct TwoTorus {
    pub name: &'static str,
    #[serde(skip)]
    pub group: PermGroup,
    pub order: u128,
    pub elementary: bool,
    pub self_centralizing: bool,
    pub conjugates: u128,
    pub fixed_lines: Vec<String>,
    pub pairs: Vec<[String; 2]>,
    pub weyl: NamedGroup,
}

/// `N₁, N₂, N₃` built from their generator words.
pub fn e6_two_tori(rs: &RootSystem, lines: &Lines27, ws: &WeightSet) -> Result<Vec<TwoTorus>> {
    let w = coxeter_group(rs);
    // Bourbaki numbers are one more than the simple-root indices.
    let s = |i: usize| compose(rs, &[i - 1]);
    let beta =
        rs.index_of_int(&[0, 1, 1, 2, 1, 0]).ok_or_else(|| Error::Inconsistent("missing D4 highest root".into()))?;
    let n1 = vec![s(2), s(3), s(5), rs.reflection(beta).clone()];
    let t = compose(rs, &[2 - 1, 5 - 1]);
    let v4 = s(4);
    let v43 = compose(rs, &[3, 2]);
    let v431 = compose(rs, &[3, 2, 0]);
    let n2 = vec![t.clone(), conj_map(&t, &v4), conj_map(&t, &v43), conj_map(&t, &v431)];
    let u = compose(rs, &[1, 2]);
    let inner = conj_map(&u, &compose(rs, &[3, 4]));
    let n3 = vec![u.clone(), conj_map(&u, &v4), s(6), conj_map(&s(6), &inner)];

    let mut out = Vec::new();
    for (name, gens) in [("N1", n1), ("N2", n2), ("N3", n3)] {
        let group = w.subgroup(gens);
        let elementary = group.is_abelian() && group.generators().iter().all(|g| g.pow(2).is_identity());
        let norm = normalizer(&w, &group);
        let (_, weyl) = discrete_weyl_group(&w, &group)?;
        let on_lines = ws.subgroup_action(rs, &group);
        let mut fixed_lines = Vec::new();
        let mut pairs = Vec::new();
        for o in on_lines.orbits() {
            match o.as_slice() {
                [x] => fixed_lines.push(lines.name(*x).to_string()),
                [x, y] => pairs.push([lines.name(*x).to_string(), lines.name(*y).to_string()]),
                _ => {}
            }
        }
        out.push(TwoTorus {
            name,
            order: group.order(),
            elementary,
            self_centralizing: centralizer(&w, &group).order() == group.order(),
            conjugates: w.order() / norm.order(),
            fixed_lines,
            pairs,
            weyl,
            group,
        });
    }
    Ok(out)
}

/// Cartan's cubic form `det M₁ + det M₂ + det M₃ − tr(M₁M₂M₃)` in the 27
/// line variables.
#[derive(Clone, Debug, Serialize)]
pub struct CartanCubic {
    pub matrices: [[[String; 3]; 3]; 3],
    /// Signed monomials as sorted triples of weight indices.
    pub terms: Vec<(i64, [usize; 3])>,
    /// Entries that differ from the printed layout.
    pub corrections: Vec<String>,
}

/// Entries of `M₂` and `M₃` as printed, paired with the entries forced by
/// requiring every monomial to be a tritangent.
const PRINTED_FIXES: [(&str, usize, usize, &str, &str); 5] = [
    ("M2", 1, 0, "b4", "a4"),
    ("M2", 1, 1, "b5", "a5"),
    ("M2", 1, 2, "b6", "a6"),
    ("M2", 2, 1, "b46", "c46"),
    ("M3", 2, 1, "b26", "c26"),
];

pub fn cartan_cubic_support(lines: &Lines27) -> Result<CartanCubic> {
    let m = |rows: [[&str; 3]; 3]| rows.map(|r| r.map(String::from));
    let m1 = m([["a1", "b1", "c23"], ["a2", "b2", "c13"], ["a3", "b3", "c12"]]);
    let m2 = m([["b4", "b5", "b6"], ["a4", "a5", "a6"], ["c56", "c46", "c45"]]);
    let m3 = m([["c14", "c24", "c34"], ["c15", "c25", "c35"], ["c16", "c26", "c36"]]);
    let corrections: Vec<String> = PRINTED_FIXES
        .iter()
        .map(|(mat, r, c, was, now)| format!("{mat}[{r}][{c}]: printed {was}, used {now}"))
        .collect();

    let idx = |s: &String| lines.by_name(s).ok_or_else(|| Error::Inconsistent(format!("unknown line {s}")));
    let mats = [&m1, &m2, &m3];
    let mut poly: BTreeMap<[usize; 3], i64> = BTreeMap::new();
    let mut add = |sign: i64, vars: [usize; 3]| {
        let mut k = vars;
        k.sort_unstable();
        *poly.entry(k).or_insert(0) += sign;
    };
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    for mat in mats {
        for (p, sign) in perms {
            add(sign, [idx(&mat[0][p[0]])?, idx(&mat[1][p[1]])?, idx(&mat[2][p[2]])?]);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                add(-1, [idx(&m1[i][j])?, idx(&m2[j][k])?, idx(&m3[k][i])?]);
            }
        }
    }
    let terms: Vec<(i64, [usize; 3])> = poly.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (c, k)).collect();
    let support: BTreeSet<[usize; 3]> = terms.iter().map(|&(_, k)| k).collect();
    let tritangents: BTreeSet<[usize; 3]> = lines.tritangents().iter().map(|t| t.lines).collect();
    if support != tritangents {
        return Err(Error::Inconsistent("cubic support differs from the tritangents".into()));
    }
    Ok(CartanCubic { matrices: [m1, m2, m3], terms, corrections })
}

impl CartanCubic {
    /// Value at an assignment of the 27 variables, indexed by weight.
    pub fn evaluate(&self, x: &[i64]) -> i64 {
        self.terms.iter().map(|&(c, [a, b, d])| c * x[a] * x[b] * x[d]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> (RootSystem, WeightSet, Lines27) {
        let rs = RootSystem::new(CoxeterType::e(6));
        let ws = weight_orbit(&rs, 1).unwrap();
        let l = schlafli_labeling(&ws).unwrap();
        (rs, ws, l)
    }

    #[test]
    fn orbit_sizes() {
        for (t, fw, n) in [
            (CoxeterType::e(6), 1, 27),
            (CoxeterType::e(7), 7, 56),
            (CoxeterType::d(5), 5, 16),
            (CoxeterType::b(4), 1, 8),
            (CoxeterType::d(6), 1, 12),
            (CoxeterType::e(8), 8, 240),
        ] {
            let rs = RootSystem::new(t);
            assert_eq!(weight_orbit(&rs, fw).unwrap().len(), n, "{t}");
        }
        let rs = RootSystem::new(CoxeterType::f4());
        assert!(matches!(weight_orbit(&rs, 1), Err(Error::UnsupportedWeight { .. })));
    }

    #[test]
    fn action_matches_simple_reflections() {
        let rs = RootSystem::new(CoxeterType::e(7));
        let ws = weight_orbit(&rs, 7).unwrap();
        for i in 0..7 {
            assert_eq!(&ws.action(&rs, rs.reflection(i)), ws.simple_action(i));
        }
        let a = rs.reflection(0).mul(rs.reflection(3));
        assert_eq!(ws.action(&rs, &a), ws.simple_action(0).mul(ws.simple_action(3)));
    }

    /// Every labelled edge `(x, k, y)` of the Hasse diagram of the 27 weights.
    const HASSE_EDGES: [(&str, usize, &str); 36] = [
        ("a1", 1, "a2"),
        ("a2", 3, "a3"),
        ("a3", 4, "a4"),
        ("a4", 2, "c56"),
        ("a4", 5, "a5"),
        ("c56", 5, "c46"),
        ("a5", 6, "a6"),
        ("a5", 2, "c46"),
        ("a6", 2, "c45"),
        ("c46", 6, "c45"),
        ("c46", 4, "c36"),
        ("c35", 5, "c34"),
        ("c35", 3, "c25"),
        ("c36", 6, "c35"),
        ("c45", 4, "c35"),
        ("c36", 3, "c26"),
        ("c26", 1, "c16"),
        ("c26", 6, "c25"),
        ("c16", 6, "c15"),
        ("c25", 1, "c15"),
        ("c25", 5, "c24"),
        ("c34", 3, "c24"),
        ("c15", 5, "c14"),
        ("c24", 1, "c14"),
        ("c24", 4, "c23"),
        ("c14", 4, "c13"),
        ("c23", 2, "b1"),
        ("c13", 2, "b2"),
        ("c23", 1, "c13"),
        ("b1", 1, "b2"),
        ("c13", 3, "c12"),
        ("b2", 3, "b3"),
        ("c12", 2, "b3"),
        ("b3", 4, "b4"),
        ("b4", 5, "b5"),
        ("b5", 6, "b6"),
    ];

    #[test]
    fn labels_match_every_hasse_edge() {
        let (_, ws, l) = e6();
        for (x, k, y) in HASSE_EDGES {
            let img = ws.simple_action(k - 1).image(l.by_name(x).unwrap());
            assert_eq!(l.name(img), y, "{x} --{k}--> {y}");
        }
    }

    #[test]
    fn classical_counts() {
        let (_, _, l) = e6();
        assert!((0..27).all(|i| l.degree(i) == 10));
        let t = l.tritangents();
        assert_eq!(t.len(), 45);
        assert_eq!(t.iter().filter(|x| x.kind == TritangentKind::Abc).count(), 30);
        assert_eq!(l.double_sixes().len(), 36);
        let (pairs, triads) = l.steiner_structures();
        assert_eq!(pairs.len(), 120);
        assert_eq!(triads.len(), 40);
    }

    #[test]
    fn cubic_support_is_the_tritangents() {
        let (_, _, l) = e6();
        let c = cartan_cubic_support(&l).unwrap();
        assert_eq!(c.terms.len(), 45);
        assert_eq!(c.evaluate(&[0; 27]), 0);
        assert!(c.terms.iter().all(|&(s, _)| s == 1 || s == -1));
    }

    #[test]
    fn branching_shadows() {
        let (rs, ws, l) = e6();
        // Drop α₂ and adjoin the lowest root: A₅ × A₁.
        let mut gens: Vec<Perm> = [0, 2, 3, 4, 5].iter().map(|&i| ws.simple_action(i).clone()).collect();
        gens.push(ws.action(&rs, rs.reflection(rs.highest_root.unwrap())));
        let orbits = orbits_of(27, &gens);
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [12, 15]);
        let fifteen = orbits.iter().find(|o| o.len() == 15).unwrap();
        assert!(fifteen.iter().all(|&x| matches!(l.lines[x].kind, LineKind::C(..))));
        let rs7 = RootSystem::new(CoxeterType::e(7));
        let w7 = weight_orbit(&rs7, 7).unwrap();
        let mut sizes: Vec<usize> = parabolic_orbits(&w7, &[0, 1, 2, 3, 4, 5]).iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 1, 27, 27]);
    }
}
