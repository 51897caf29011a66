//! Root systems of the finite irreducible Coxeter types.
//!
//! Roots are stored in the simple-root basis. The Gram matrix is scaled
//! so that the highest root has squared length 2. Node numbering follows
//! Bourbaki. Dihedral types `I2(m)` with `m ∉ {3,4,5,6}` have no coordinates
//! in Q(τ); their roots are unit vectors at angles `kπ/m` handled by
//! exact arithmetic in Z/2m.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::Perm;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I2,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "H" => Family::H,
            "I" | "I2" => Family::I2,
            _ => return None,
        })
    }

    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::H => "H",
            Family::I2 => "I2",
        }
    }
}

/// A finite irreducible Coxeter type. `m` is the dihedral parameter of `I2(m)`
/// and 0 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    pub m: u32,
}

impl CoxeterType {
    pub fn new(family: Family, rank: usize) -> Result<CoxeterType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::H => rank == 3 || rank == 4,
            Family::I2 => false,
        };
        if !ok {
            return Err(Error::InvalidType {
                family: family.letter().to_string(),
                rank,
                reason: match family {
                    Family::I2 => "use CoxeterType::dihedral".into(),
                    _ => "rank out of range".into(),
                },
            });
        }
        // Roots are indexed by u16 and element keys pack rank-many bytes.
        if rank > 64 {
            return Err(Error::InvalidType {
                family: family.letter().to_string(),
                rank,
                reason: "rank too large".into(),
            });
        }
        Ok(CoxeterType { family, rank, m: 0 })
    }

    pub fn dihedral(m: u32) -> Result<CoxeterType> {
        if !(3..=32000).contains(&m) {
            return Err(Error::InvalidType { family: "I2".into(), rank: 2, reason: format!("m = {m} out of range") });
        }
        Ok(CoxeterType { family: Family::I2, rank: 2, m })
    }

    /// Parses a selector such as `("E", "8")` or `("I", "7")`.
    pub fn parse(family: &str, n: &str) -> Result<CoxeterType> {
        let fam = Family::parse(family).ok_or_else(|| Error::InvalidType {
            family: family.to_string(),
            rank: 0,
            reason: "unknown family".into(),
        })?;
        let n: usize = n.parse().map_err(|_| Error::InvalidType {
            family: family.to_string(),
            rank: 0,
            reason: format!("bad number {n:?}"),
        })?;
        if fam == Family::I2 {
            CoxeterType::dihedral(n as u32)
        } else {
            CoxeterType::new(fam, n)
        }
    }

    pub fn a(r: usize) -> CoxeterType {
        CoxeterType::new(Family::A, r).unwrap()
    }
    pub fn b(r: usize) -> CoxeterType {
        CoxeterType::new(Family::B, r).unwrap()
    }
    pub fn c(r: usize) -> CoxeterType {
        CoxeterType::new(Family::C, r).unwrap()
    }
    pub fn d(r: usize) -> CoxeterType {
        CoxeterType::new(Family::D, r).unwrap()
    }
    pub fn e(r: usize) -> CoxeterType {
        CoxeterType::new(Family::E, r).unwrap()
    }
    pub fn f4() -> CoxeterType {
        CoxeterType::new(Family::F, 4).unwrap()
    }
    pub fn g2() -> CoxeterType {
        CoxeterType::new(Family::G, 2).unwrap()
    }
    pub fn h(r: usize) -> CoxeterType {
        CoxeterType::new(Family::H, r).unwrap()
    }
    pub fn i2(m: u32) -> CoxeterType {
        CoxeterType::dihedral(m).unwrap()
    }

    /// Weyl groups: families A–G.
    pub fn is_crystallographic(&self) -> bool {
        !matches!(self.family, Family::H | Family::I2)
    }

    /// True when roots carry coordinates in Q(τ).
    pub fn has_coordinates(&self) -> bool {
        self.family != Family::I2 || (3..=6).contains(&self.m)
    }

    pub fn num_roots(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1),
            Family::B | Family::C => 2 * r * r,
            Family::D => 2 * r * (r - 1),
            Family::E => [72, 126, 240][r - 6],
            Family::F => 48,
            Family::G => 12,
            Family::H => [30, 120][r - 3],
            Family::I2 => 2 * self.m as usize,
        }
    }

    /// Order of the Coxeter group.
    pub fn group_order(&self) -> u128 {
        let r = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.family {
            Family::A => fact(r + 1),
            Family::B | Family::C => (1u128 << r) * fact(r),
            Family::D => (1u128 << (r - 1)) * fact(r),
            Family::E => [51840, 2903040, 696729600][self.rank - 6],
            Family::F => 1152,
            Family::G => 12,
            Family::H => [120, 14400][self.rank - 3],
            Family::I2 => 2 * self.m as u128,
        }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::I2 => format!("I2({})", self.m),
            f => format!("{}{}", f.letter(), self.rank),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A root: coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub index: usize,
    pub coords: Vec<Scalar>,
    pub height: Scalar,
    pub is_positive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    Coordinates,
    /// Root `k` of the angle model sits at angle `kπ/m`.
    Angles {
        m: usize,
    },
}

/// An extended Dynkin diagram node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramNode {
    /// 0 for the affine node, `i` for `αᵢ`.
    pub label: usize,
    pub root: usize,
    pub mark: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedDiagram {
    pub nodes: Vec<DiagramNode>,
    /// `(i, j, n(αᵢ,αⱼ)·n(αⱼ,αᵢ))` between node positions, `i < j`.
    pub edges: Vec<(usize, usize, u32)>,
}

impl ExtendedDiagram {
    pub fn neighbours(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(i, j, _) in &self.edges {
            if i == node {
                out.push(j);
            } else if j == node {
                out.push(i);
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ctype: CoxeterType,
    pub roots: Vec<Root>,
    /// `cartan[i][j] = n(αᵢ,αⱼ) = 2⟨αᵢ,αⱼ⟩/⟨αᵢ,αᵢ⟩`.
    pub cartan: Vec<Vec<Scalar>>,
    pub gram: Vec<Vec<Scalar>>,
    pub highest_root: Option<usize>,
    pub marks: Option<Vec<u32>>,
    model: Model,
    neg: Vec<usize>,
    lookup: HashMap<Vec<Scalar>, usize>,
    /// Reflections in the positive roots, indexed by root index.
    reflections: Vec<Perm>,
}

fn gram_of(ct: &CoxeterType) -> Vec<Vec<Scalar>> {
    let r = ct.rank;
    let two = Scalar::from_int(2);
    // Squared lengths and bonded pairs (i, j, inner product).
    let mut lengths = vec![two.clone(); r];
    let mut bonds: Vec<(usize, usize, Scalar)> = Vec::new();
    let minus = |x: Scalar| -x;
    match (ct.family, ct.m) {
        (Family::A, _) | (Family::I2, 3) => {
            for i in 0..r - 1 {
                bonds.push((i, i + 1, Scalar::from_int(-1)));
            }
        }
        (Family::B, _) | (Family::I2, 4) => {
            lengths[r - 1] = Scalar::one();
            for i in 0..r - 1 {
                bonds.push((i, i + 1, Scalar::from_int(-1)));
            }
        }
        (Family::C, _) => {
            for l in lengths.iter_mut().take(r - 1) {
                *l = Scalar::one();
            }
            for i in 0..r - 2 {
                bonds.push((i, i + 1, Scalar::from_ratio(-1, 2)));
            }
            bonds.push((r - 2, r - 1, Scalar::from_int(-1)));
        }
        (Family::D, _) => {
            for i in 0..r - 2 {
                bonds.push((i, i + 1, Scalar::from_int(-1)));
            }
            bonds.push((r - 3, r - 1, Scalar::from_int(-1)));
        }
        (Family::E, _) => {
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..r - 1 {
                edges.push((i, i + 1));
            }
            for (i, j) in edges {
                bonds.push((i, j, Scalar::from_int(-1)));
            }
        }
        (Family::F, _) => {
            lengths[2] = Scalar::one();
            lengths[3] = Scalar::one();
            bonds.push((0, 1, Scalar::from_int(-1)));
            bonds.push((1, 2, Scalar::from_int(-1)));
            bonds.push((2, 3, Scalar::from_ratio(-1, 2)));
        }
        (Family::G, _) | (Family::I2, 6) => {
            lengths[0] = Scalar::from_ratio(2, 3);
            bonds.push((0, 1, Scalar::from_int(-1)));
        }
        (Family::H, _) | (Family::I2, 5) => {
            bonds.push((0, 1, minus(Scalar::tau())));
            for i in 1..r - 1 {
                bonds.push((i, i + 1, Scalar::from_int(-1)));
            }
        }
        (Family::I2, _) => unreachable!("angle model has no Gram matrix"),
    }
    let mut g = vec![vec![Scalar::zero(); r]; r];
    for i in 0..r {
        g[i][i] = lengths[i].clone();
    }
    for (i, j, v) in bonds {
        g[i][j] = v.clone();
        g[j][i] = v;
    }
    g
}

fn cmp_coords(a: &[Scalar], b: &[Scalar]) -> Ordering {
    // Larger leading coordinate first, so α₁ precedes α₂ at equal height.
    for (x, y) in a.iter().zip(b) {
        match y.cmp(x) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl RootSystem {
    pub fn new(ctype: CoxeterType) -> RootSystem {
        if ctype.has_coordinates() {
            Self::build_coordinates(ctype)
        } else {
            Self::build_angles(ctype)
        }
    }

    fn build_coordinates(ctype: CoxeterType) -> RootSystem {
        let r = ctype.rank;
        let gram = gram_of(&ctype);
        let two = Scalar::from_int(2);
        let cartan: Vec<Vec<Scalar>> =
            (0..r).map(|i| (0..r).map(|j| (&two * &gram[i][j]).div(&gram[i][i]).unwrap()).collect()).collect();
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); r];
            v[i] = Scalar::one();
            v
        };
        // Reflection closure; s_i only changes coordinate i.
        let reflect = |beta: &[Scalar], i: usize| -> Vec<Scalar> {
            let mut n = Scalar::zero();
            for k in 0..r {
                if !beta[k].is_zero() && !cartan[i][k].is_zero() {
                    n = &n + &(&beta[k] * &cartan[i][k]);
                }
            }
            // ⟨β, αᵢ^∨⟩ = Σ_k β_k n(αᵢ, α_k)
            let mut out = beta.to_vec();
            out[i] = &out[i] - &n;
            out
        };
        let mut seen: HashMap<Vec<Scalar>, ()> = HashMap::new();
        let mut all = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let v = unit(i);
            seen.insert(v.clone(), ());
            queue.push_back(v.clone());
            all.push(v);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let img = reflect(&beta, i);
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push_back(img.clone());
                    all.push(img);
                }
            }
        }
        let height = |v: &[Scalar]| v.iter().fold(Scalar::zero(), |acc, x| &acc + x);
        let mut pos: Vec<(Scalar, Vec<Scalar>)> =
            all.into_iter().map(|v| (height(&v), v)).filter(|(h, _)| h.is_positive()).collect();
        pos.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_coords(&a.1, &b.1)));
        let np = pos.len();
        let mut roots = Vec::with_capacity(2 * np);
        for (k, (h, v)) in pos.iter().enumerate() {
            roots.push(Root { index: k, coords: v.clone(), height: h.clone(), is_positive: true });
        }
        for (k, (h, v)) in pos.iter().enumerate() {
            roots.push(Root { index: np + k, coords: v.iter().map(|x| -x).collect(), height: -h, is_positive: false });
        }
        let lookup: HashMap<Vec<Scalar>, usize> = roots.iter().map(|rt| (rt.coords.clone(), rt.index)).collect();
        let neg: Vec<usize> = (0..2 * np).map(|i| (i + np) % (2 * np)).collect();
        let simple: Vec<Perm> = (0..r)
            .map(|i| {
                let imgs: Vec<usize> = roots.iter().map(|rt| lookup[&reflect(&rt.coords, i)]).collect();
                Perm::from_images(&imgs).expect("simple reflection is a bijection")
            })
            .collect();
        let highest = np - 1;
        let marks = if ctype.is_crystallographic() {
            Some(roots[highest].coords.iter().map(|c| c.to_i64().unwrap() as u32).collect())
        } else {
            None
        };
        let mut rs = RootSystem {
            ctype,
            roots,
            cartan,
            gram,
            highest_root: Some(highest),
            marks,
            model: Model::Coordinates,
            neg,
            lookup,
            reflections: Vec::new(),
        };
        rs.reflections = rs.all_reflections(&simple);
        rs
    }

    fn build_angles(ctype: CoxeterType) -> RootSystem {
        let m = ctype.m as usize;
        // Positive angles ordered from the two simple roots inwards.
        let mut order = Vec::with_capacity(m);
        let (mut lo, mut hi) = (0usize, m - 1);
        while order.len() < m {
            order.push(lo);
            if order.len() < m {
                order.push(hi);
            }
            lo += 1;
            hi -= 1;
        }
        let mut angle_of = order.clone();
        angle_of.extend(order.iter().map(|a| a + m));
        let mut index_of = vec![0usize; 2 * m];
        for (i, &a) in angle_of.iter().enumerate() {
            index_of[a] = i;
        }
        let roots: Vec<Root> = (0..2 * m)
            .map(|i| Root { index: i, coords: Vec::new(), height: Scalar::zero(), is_positive: i < m })
            .collect();
        let neg: Vec<usize> = (0..2 * m).map(|i| (i + m) % (2 * m)).collect();
        let reflections: Vec<Perm> = (0..2 * m)
            .map(|i| {
                let k = angle_of[i];
                let imgs: Vec<usize> =
                    (0..2 * m).map(|j| index_of[(2 * k + m + 2 * m - angle_of[j]) % (2 * m)]).collect();
                Perm::from_images(&imgs).unwrap()
            })
            .collect();
        RootSystem {
            ctype,
            roots,
            cartan: Vec::new(),
            gram: Vec::new(),
            highest_root: None,
            marks: None,
            model: Model::Angles { m },
            neg,
            lookup: HashMap::new(),
            reflections,
        }
    }

    fn all_reflections(&self, simple: &[Perm]) -> Vec<Perm> {
        // s_{β^{s_i}} = s_i s_β s_i, propagated from the simple roots.
        let n = self.roots.len();
        let mut out: Vec<Option<Perm>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (i, s) in simple.iter().enumerate() {
            out[i] = Some(s.clone());
            out[self.neg[i]] = Some(s.clone());
            queue.push_back(i);
        }
        while let Some(b) = queue.pop_front() {
            let sb = out[b].clone().unwrap();
            for s in simple {
                let c = s.image(b);
                if out[c].is_none() {
                    let sc = s.mul(&sb).mul(s);
                    out[self.neg[c]] = Some(sc.clone());
                    out[c] = Some(sc);
                    queue.push_back(c);
                }
            }
        }
        out.into_iter().map(|p| p.expect("every root is W-conjugate to a simple root")).collect()
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn has_coordinates(&self) -> bool {
        self.model == Model::Coordinates
    }

    /// Index of `-β`.
    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    /// Indices of the simple roots `α₁..α_r` (always `0..r`).
    pub fn simple_roots(&self) -> Vec<usize> {
        (0..self.rank()).collect()
    }

    pub fn reflection(&self, i: usize) -> &Perm {
        &self.reflections[i]
    }

    pub fn simple_reflections(&self) -> Vec<Perm> {
        (0..self.rank()).map(|i| self.reflections[i].clone()).collect()
    }

    /// Root index for the given simple-root coordinates.
    pub fn index_of(&self, coords: &[Scalar]) -> Option<usize> {
        self.lookup.get(coords).copied()
    }

    /// Root index for integer coordinates.
    pub fn index_of_int(&self, coords: &[i64]) -> Option<usize> {
        let v: Vec<Scalar> = coords.iter().map(|&c| Scalar::from_int(c)).collect();
        self.index_of(&v)
    }

    pub fn int_coords(&self, i: usize) -> Option<Vec<i64>> {
        self.roots[i].coords.iter().map(|c| c.to_i64()).collect()
    }

    pub fn inner(&self, a: usize, b: usize) -> Result<Scalar> {
        if !self.has_coordinates() {
            return Err(Error::NoCoordinates(self.ctype.name()));
        }
        let (x, y) = (&self.roots[a].coords, &self.roots[b].coords);
        let r = self.rank();
        let mut acc = Scalar::zero();
        for i in 0..r {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if y[j].is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&x[i] * &self.gram[i][j]) * &y[j]);
            }
        }
        Ok(acc)
    }

    /// `n(a,b) = 2⟨a,b⟩/⟨a,a⟩`.
    pub fn cartan_integer(&self, a: usize, b: usize) -> Result<Scalar> {
        let ab = self.inner(a, b)?;
        let aa = self.inner(a, a)?;
        Ok((&Scalar::from_int(2) * &ab).div(&aa).unwrap())
    }

    /// True iff `⟨a,b⟩ = 0`, decided from the reflection action.
    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        a != b && self.neg(a) != b && self.reflections[a].image(b) == b
    }

    /// Index of `β_a + β_b` when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        match self.model {
            Model::Coordinates => {
                let v: Vec<Scalar> =
                    self.roots[a].coords.iter().zip(&self.roots[b].coords).map(|(x, y)| x + y).collect();
                self.index_of(&v)
            }
            Model::Angles { m } => {
                let (ka, kb) = (self.angle(a), self.angle(b));
                // β_a = β_b rotated by dπ/m; the sum has length 2|cos(dπ/2m)|.
                let d = (ka + 2 * m - kb) % (2 * m);
                if (3 * d != 2 * m && 3 * d != 4 * m) || d % 2 != 0 {
                    return None;
                }
                let flip = if 3 * d == 4 * m { m } else { 0 };
                let ang = (kb + d / 2 + flip) % (2 * m);
                self.root_at_angle(ang)
            }
        }
    }

    /// Index of `β_a − β_b` when it is a root.
    pub fn difference(&self, a: usize, b: usize) -> Option<usize> {
        self.sum(a, self.neg(b))
    }

    fn angle(&self, i: usize) -> usize {
        match self.model {
            Model::Angles { m } => {
                let pos = if i < m { i } else { i - m };
                let k = pos / 2;
                let a = if pos % 2 == 0 { k } else { m - 1 - k };
                if i < m {
                    a
                } else {
                    a + m
                }
            }
            Model::Coordinates => unreachable!(),
        }
    }

    fn root_at_angle(&self, a: usize) -> Option<usize> {
        (0..self.num_roots()).find(|&i| self.angle(i) == a)
    }

    pub fn highest(&self) -> Result<&Root> {
        self.highest_root.map(|i| &self.roots[i]).ok_or_else(|| Error::NoCoordinates(self.ctype.name()))
    }

    /// Integer Cartan matrix, for crystallographic types.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        if !self.ctype.is_crystallographic() {
            return Err(Error::NotCrystallographic(self.ctype.name()));
        }
        Ok(self.cartan.iter().map(|row| row.iter().map(|x| x.to_i64().unwrap()).collect()).collect())
    }

    pub fn extended_diagram(&self) -> Result<ExtendedDiagram> {
        if !self.ctype.is_crystallographic() {
            return Err(Error::NotCrystallographic(self.ctype.name()));
        }
        let hi = self.highest_root.unwrap();
        let marks = self.marks.as_ref().unwrap();
        let mut nodes = vec![DiagramNode { label: 0, root: self.neg(hi), mark: 1 }];
        for i in 0..self.rank() {
            nodes.push(DiagramNode { label: i + 1, root: i, mark: marks[i] });
        }
        Ok(ExtendedDiagram { edges: self.bonds(&nodes.iter().map(|n| n.root).collect::<Vec<_>>()), nodes })
    }

    /// Bond multiplicities `n(a,b)·n(b,a)` among the given roots.
    pub fn bonds(&self, roots: &[usize]) -> Vec<(usize, usize, u32)> {
        let mut edges = Vec::new();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let p = &self.cartan_integer(roots[i], roots[j]).unwrap()
                    * &self.cartan_integer(roots[j], roots[i]).unwrap();
                let v = p.to_i64().expect("crystallographic bond");
                if v != 0 {
                    edges.push((i, j, v as u32));
                }
            }
        }
        edges
    }

    /// Text dump: `index sign coords…`, one root per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for rt in &self.roots {
            let sign = if rt.is_positive { '+' } else { '-' };
            s.push_str(&format!("{} {}", rt.index, sign));
            if self.has_coordinates() {
                for c in &rt.coords {
                    s.push(' ');
                    s.push_str(&c.to_string().replace('t', "*t"));
                }
            } else {
                s.push_str(&format!(" angle {}/{}", self.angle(rt.index), self.ctype.m));
            }
            s.push('\n');
        }
        s
    }
}

/// Identifies a connected crystallographic Dynkin diagram from its Cartan matrix.
/// Rank-2 double bonds are reported as `C` when `prefer_c` is set, otherwise `B`.
pub fn diagram_type(cartan: &[Vec<i64>], prefer_c: bool) -> (Family, usize) {
    let k = cartan.len();
    if k == 1 {
        return (Family::A, 1);
    }
    let adj: Vec<Vec<usize>> = (0..k).map(|i| (0..k).filter(|&j| j != i && cartan[i][j] != 0).collect()).collect();
    let mut double = None;
    for i in 0..k {
        for j in 0..k {
            let b = cartan[i][j] * cartan[j][i];
            if i != j && b == 3 {
                return (Family::G, 2);
            }
            // cartan[i][j] = -1, cartan[j][i] = -2: i long, j short.
            if i != j && b == 2 && cartan[i][j] == -1 {
                double = Some((i, j));
            }
        }
    }
    if let Some((long, short)) = double {
        if k == 4 && adj[long].len() == 2 && adj[short].len() == 2 {
            return (Family::F, 4);
        }
        if k == 2 {
            return (if prefer_c { Family::C } else { Family::B }, 2);
        }
        // B: a single short root at the end; C: a single long root at the end.
        return if adj[short].len() == 1 { (Family::B, k) } else { (Family::C, k) };
    }
    if let Some(centre) = (0..k).find(|&i| adj[i].len() == 3) {
        let mut arms: Vec<usize> = adj[centre]
            .iter()
            .map(|&start| {
                let (mut prev, mut cur, mut len) = (centre, start, 1);
                loop {
                    let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
                    if next.is_empty() {
                        break len;
                    }
                    prev = cur;
                    cur = next[0];
                    len += 1;
                }
            })
            .collect();
        arms.sort_unstable();
        return if arms[0] == 1 && arms[1] == 1 { (Family::D, k) } else { (Family::E, k) };
    }
    (Family::A, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<CoxeterType> {
        let mut v = Vec::new();
        for r in 1..=8 {
            v.push(CoxeterType::a(r));
        }
        for r in 2..=8 {
            v.push(CoxeterType::b(r));
            v.push(CoxeterType::c(r));
        }
        for r in 4..=8 {
            v.push(CoxeterType::d(r));
        }
        for r in 6..=8 {
            v.push(CoxeterType::e(r));
        }
        v.extend([CoxeterType::f4(), CoxeterType::g2(), CoxeterType::h(3), CoxeterType::h(4)]);
        for m in 3..=12 {
            v.push(CoxeterType::i2(m));
        }
        v
    }

    #[test]
    fn root_counts() {
        for ct in all_types() {
            let rs = RootSystem::new(ct);
            assert_eq!(rs.num_roots(), ct.num_roots(), "{ct}");
        }
    }

    #[test]
    fn highest_root_normalized() {
        for ct in all_types().into_iter().filter(|c| c.has_coordinates()) {
            let rs = RootSystem::new(ct);
            let h = rs.highest_root.unwrap();
            assert_eq!(rs.inner(h, h).unwrap(), Scalar::from_int(2), "{ct}");
            if let Some(marks) = &rs.marks {
                let total: u32 = marks.iter().sum();
                assert_eq!(Scalar::from_int(total as i64), rs.roots[h].height);
            }
        }
    }

    #[test]
    fn reflections_are_involutions_fixing_orthogonal_roots() {
        for ct in all_types() {
            let rs = RootSystem::new(ct);
            for a in 0..rs.num_roots() {
                let s = rs.reflection(a);
                assert!(s.mul(s).is_identity());
                assert_eq!(s.image(a), rs.neg(a));
                for b in 0..rs.num_roots() {
                    assert_eq!(s.image(rs.neg(b)), rs.neg(s.image(b)));
                    if rs.has_coordinates() && rs.inner(a, b).unwrap().is_zero() {
                        assert_eq!(s.image(b), b);
                    }
                }
            }
        }
    }

    #[test]
    fn known_highest_roots() {
        let f4 = RootSystem::new(CoxeterType::f4());
        assert_eq!(f4.marks.clone().unwrap(), vec![2, 3, 4, 2]);
        let e8 = RootSystem::new(CoxeterType::e(8));
        assert_eq!(e8.marks.clone().unwrap(), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let e6 = RootSystem::new(CoxeterType::e(6));
        assert_eq!(e6.marks.clone().unwrap(), vec![1, 2, 2, 3, 2, 1]);
        let g2 = RootSystem::new(CoxeterType::g2());
        assert_eq!(g2.marks.clone().unwrap(), vec![3, 2]);
    }

    #[test]
    fn a2_reflection_formula() {
        let rs = RootSystem::new(CoxeterType::a(2));
        let s1 = rs.reflection(0);
        assert_eq!(rs.int_coords(s1.image(1)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn cartan_integers() {
        let rs = RootSystem::new(CoxeterType::b(3));
        let p = &rs.cartan_integer(1, 2).unwrap() * &rs.cartan_integer(2, 1).unwrap();
        assert_eq!(p, Scalar::from_int(2));
        let a = RootSystem::new(CoxeterType::a(4));
        assert_eq!(a.cartan_integer(1, 2).unwrap(), Scalar::from_int(-1));
        for i in 0..a.num_roots() {
            assert_eq!(a.cartan_integer(i, i).unwrap(), Scalar::from_int(2));
        }
    }

    #[test]
    fn extended_diagrams() {
        let a1 = RootSystem::new(CoxeterType::a(1)).extended_diagram().unwrap();
        assert_eq!(a1.edges, vec![(0, 1, 4)]);
        let c5 = RootSystem::new(CoxeterType::c(5)).extended_diagram().unwrap();
        assert_eq!(c5.neighbours(0), vec![1]);
        let e6 = RootSystem::new(CoxeterType::e(6)).extended_diagram().unwrap();
        assert_eq!(e6.nodes[4].mark, 3);
        assert_eq!(e6.neighbours(0), vec![2]);
        assert!(RootSystem::new(CoxeterType::h(3)).extended_diagram().is_err());
    }

    #[test]
    fn h3_has_golden_coordinates() {
        let rs = RootSystem::new(CoxeterType::h(3));
        assert!(rs.roots.iter().any(|r| r.coords.iter().any(|c| !c.is_rational())));
    }

    #[test]
    fn diagram_types() {
        for ct in all_types().into_iter().filter(|c| c.is_crystallographic()) {
            let rs = RootSystem::new(ct);
            let (f, k) = diagram_type(&rs.cartan_matrix().unwrap(), ct.family == Family::C);
            assert_eq!(k, ct.rank);
            let expect = match (ct.family, ct.rank) {
                (Family::C, 2) => Family::C,
                (f, _) => f,
            };
            assert_eq!(f, expect, "{ct}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(CoxeterType::new(Family::D, 3).is_err());
        assert!(CoxeterType::new(Family::E, 9).is_err());
        assert!(CoxeterType::dihedral(2).is_err());
        assert!(CoxeterType::parse("X", "3").is_err());
    }
}
