//! The acceptance suite. Each criterion is a list of named checks; a check
//! that fails with exactly its documented observed value is reported as a
//! known deviation rather than an unexpected failure.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use coxtori::abelian::{classify, enumerate_max_abelian, theoretical_max, Budget, Classification};
use coxtori::geometry::{e6_m_orbits, line_split, reflection_geometry, IncidenceGeometry, Recognition};
use coxtori::permgroup::{coxeter_group, normalizer, PermGroup};
use coxtori::quotient::{catalog, discrete_weyl_group, identify};
use coxtori::rootsys::{CoxeterType, Family, RootSystem};
use coxtori::sorth::{count_3a2_subsystems, exhaustive_two_rank, max_so_sets, two_rank, wolf_sequence};
use coxtori::weights::{cartan_cubic_support, e6_two_tori, schlafli_labeling, weight_orbit, TritangentKind};

use crate::expected::expected;
use crate::oracle::{census, ORACLE_CAP};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
    /// Set when the failure matches a documented deviation.
    pub known: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), ok, detail: detail.into(), known: false }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, expected: T, observed: T) -> Check {
        let ok = expected == observed;
        Check::new(name, ok, format!("expected {expected:?}, observed {observed:?}"))
    }

    /// A comparison whose observed value is documented to differ from the
    /// stated one.
    fn deviation<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        stated: T,
        observed: T,
        documented: T,
    ) -> Check {
        let known = stated != observed && observed == documented;
        let mut c = Check::eq(name, stated, observed);
        c.known = known;
        c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_secs: f64,
    pub budget_secs: u64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok) && self.within_budget()
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed_secs <= self.budget_secs as f64
    }

    /// Failures not covered by a documented deviation.
    pub fn unexpected(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok && !c.known).collect()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2}: {status}  {} ({}/{} checks, {:.1}s of {}s)",
            self.id,
            self.title,
            self.checks.iter().filter(|c| c.ok).count(),
            self.checks.len(),
            self.elapsed_secs,
            self.budget_secs
        );
        for c in self.checks.iter().filter(|c| !c.ok) {
            let tag = if c.known { "documented deviation" } else { "unexpected" };
            s.push_str(&format!("\n      {}: {} [{tag}]", c.name, c.detail));
        }
        if !self.within_budget() {
            s.push_str("\n      over budget [unexpected]");
        }
        s
    }
}

/// Types whose tables are reproduced in full.
pub fn table_types() -> Vec<CoxeterType> {
    let mut v: Vec<CoxeterType> = (1..=8).map(CoxeterType::a).collect();
    v.extend((2..=8).map(CoxeterType::b));
    v.extend((4..=8).map(CoxeterType::d));
    v.extend([CoxeterType::e(6), CoxeterType::e(7), CoxeterType::f4(), CoxeterType::h(3), CoxeterType::h(4)]);
    v
}

/// Target order for the enumeration: discovery below rank 7.
pub fn default_target(ct: &CoxeterType) -> u128 {
    if ct.rank >= 7 {
        theoretical_max(ct).0
    } else {
        0
    }
}

/// Classifications shared by several criteria.
pub struct Context {
    pub threads: usize,
    pub budget: Option<u64>,
    tables: BTreeMap<String, (Classification, f64)>,
    errors: BTreeMap<String, String>,
}

impl Context {
    pub fn new(threads: usize, budget: Option<u64>) -> Context {
        Context { threads: threads.max(1), budget, tables: BTreeMap::new(), errors: BTreeMap::new() }
    }

    fn budget(&self) -> Budget {
        self.budget.map_or_else(Budget::unlimited, Budget::seconds)
    }

    /// Classifies every missing type, spreading work over threads.
    pub fn classify_all(&mut self, types: &[CoxeterType]) {
        let todo: Vec<CoxeterType> = types
            .iter()
            .copied()
            .filter(|t| !self.tables.contains_key(&t.name()) && !self.errors.contains_key(&t.name()))
            .collect();
        let next = AtomicUsize::new(0);
        let done = Mutex::new(Vec::new());
        let budget = self.budget();
        std::thread::scope(|s| {
            for _ in 0..self.threads.min(todo.len().max(1)) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some(ct) = todo.get(i) else { break };
                    let t = Instant::now();
                    let r = classify(ct, default_target(ct), &budget);
                    done.lock().unwrap().push((ct.name(), r, t.elapsed().as_secs_f64()));
                });
            }
        });
        for (name, r, secs) in done.into_inner().unwrap() {
            match r {
                Ok(c) => {
                    self.tables.insert(name, (c, secs));
                }
                Err(e) => {
                    self.errors.insert(name, e.to_string());
                }
            }
        }
    }

    pub fn classification(&mut self, ct: &CoxeterType) -> Result<&(Classification, f64), String> {
        self.classify_all(&[*ct]);
        match self.tables.get(&ct.name()) {
            Some(c) => Ok(c),
            None => Err(self.errors.get(&ct.name()).cloned().unwrap_or_default()),
        }
    }
}

fn report(id: u8, title: &'static str, budget_secs: u64, start: Instant, checks: Vec<Check>) -> CriterionReport {
    CriterionReport { id, title, checks, elapsed_secs: start.elapsed().as_secs_f64(), budget_secs }
}

/// Rows of a classification as a sorted multiset.
fn computed_rows(c: &Classification) -> Vec<(String, String)> {
    let mut rows = c.rows();
    rows.sort();
    rows
}

/// Class count, order and rows against the reference table.
pub fn table_check(ct: &CoxeterType, c: &Classification) -> Check {
    let name = format!("{ct} table");
    let Some(exp) = expected(ct.family.letter(), ct.rank) else {
        return Check::new(name, false, "no reference table");
    };
    let rows = computed_rows(c);
    let ok = c.classes.len() == exp.classes && c.max_order == exp.order && rows == exp.sorted_rows();
    let detail = if ok {
        c.header()
    } else {
        format!("expected \"{}\" {:?}, observed \"{}\" {:?}", exp.header(), exp.sorted_rows(), c.header(), rows)
    };
    Check::new(name, ok, detail)
}

pub fn criterion_1(ctx: &mut Context) -> CriterionReport {
    let start = Instant::now();
    let types = table_types();
    ctx.classify_all(&types);
    let mut checks = Vec::new();
    let (mut small, mut large) = (0.0, 0.0);
    for ct in &types {
        match ctx.classification(ct) {
            Ok((c, secs)) => {
                if ct.rank <= 7 {
                    small += secs;
                } else {
                    large += secs;
                }
                checks.push(table_check(ct, c));
            }
            Err(e) => checks.push(Check::new(format!("{ct} table"), false, e)),
        }
    }
    checks.push(Check::new("ranks up to 7 within 600s", small <= 600.0, format!("{small:.1}s")));
    checks.push(Check::new("B8 and D8 within 3600s", large <= 3600.0, format!("{large:.1}s")));
    report(1, "classification tables", 4200, start, checks)
}

pub fn criterion_2(ctx: &mut Context) -> CriterionReport {
    let start = Instant::now();
    let ct = CoxeterType::e(8);
    let mut checks = Vec::new();
    let t = Instant::now();
    let rs = RootSystem::new(ct);
    let w = coxeter_group(&rs);
    match wolf_sequence(&rs) {
        Ok(so) => {
            let m = w.subgroup(so.roots.iter().map(|&r| rs.reflection(r).clone()).collect());
            let n = normalizer(&w, &m);
            checks.push(Check::eq("witness normalizer order", 344_064u128, n.order()));
            let secs = t.elapsed().as_secs_f64();
            checks.push(Check::new("witness normalizer within 300s", secs <= 300.0, format!("{secs:.2}s")));
        }
        Err(e) => checks.push(Check::new("Wolf witness", false, e.to_string())),
    }
    match ctx.classification(&ct) {
        Ok((c, secs)) => {
            checks.push(Check::eq("classes of order 256", (1usize, 256u128), (c.classes.len(), c.max_order)));
            if let Some(k) = c.classes.first() {
                checks.push(Check::eq("invariants", "(2,2,2,2,2,2,2,2)".to_string(), k.invariants.to_string()));
                checks.push(Check::eq(
                    "quotient",
                    ("2^3:PSL(3,2)".to_string(), 1344u128),
                    (k.weyl.name.clone(), k.weyl.order),
                ));
            }
            checks.push(Check::new("enumeration within 7200s", *secs <= 7200.0, format!("{secs:.1}s")));
        }
        Err(e) => checks.push(Check::new("E8 enumeration", false, e)),
    }
    report(2, "E8 maximal abelian subgroups", 7500, start, checks)
}

pub fn criterion_3(ctx: &mut Context) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut types = table_types();
    types.push(CoxeterType::e(8));
    for ct in &types {
        let (order, shapes) = theoretical_max(ct);
        match ctx.classification(ct) {
            Ok((c, _)) => {
                let shapes_ok = c.classes.iter().all(|k| shapes.contains(&k.invariants));
                checks.push(Check::new(
                    format!("{ct} maximal order"),
                    c.max_order == order && shapes_ok,
                    format!("closed form {order}, enumerated {}", c.max_order),
                ));
                let rs = RootSystem::new(*ct);
                if let Ok(so) = wolf_sequence(&rs) {
                    if 1u128 << so.roots.len() == c.max_order {
                        let w = coxeter_group(&rs);
                        let m = w.subgroup(so.roots.iter().map(|&r| rs.reflection(r).clone()).collect());
                        let found =
                            c.classes.iter().any(|k| coxtori::permgroup::are_conjugate(&w, &k.rep, &m).is_some());
                        checks.push(Check::new(format!("{ct} Wolf witness is a maximal class"), found, ""));
                    }
                }
            }
            Err(e) => checks.push(Check::new(format!("{ct} maximal order"), false, e)),
        }
    }
    report(3, "closed-form maximal orders", 600, start, checks)
}

pub fn criterion_4(ctx: &mut Context) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    for ct in table_types() {
        match ctx.classification(&ct) {
            Ok((c, _)) => checks.push(Check::eq(format!("{ct} discrete maximal tori"), 1, c.tori.len())),
            Err(e) => checks.push(Check::new(format!("{ct} tori"), false, e)),
        }
    }
    for ct in [CoxeterType::a(3), CoxeterType::b(2)] {
        if let Ok((c, _)) = ctx.classification(&ct) {
            let z4: Vec<String> = c.classes.iter().filter(|k| k.num_z4 > 0).map(|k| k.invariants.to_string()).collect();
            checks.push(Check::eq(format!("{ct} classes"), 3, c.classes.len()));
            checks.push(Check::eq(format!("{ct} Z4-bearing class"), vec!["(4)".to_string()], z4));
        }
    }
    report(4, "uniqueness of the discrete maximal torus", 600, start, checks)
}

pub fn two_rank_expected(ct: &CoxeterType) -> usize {
    let r = ct.rank;
    match ct.family {
        Family::A => r.div_ceil(2),
        Family::D if r % 2 == 1 => r - 1,
        Family::E if r == 6 => 4,
        _ => r,
    }
}

pub fn criterion_5() -> CriterionReport {
    let start = Instant::now();
    let mut types: Vec<CoxeterType> = (1..=8).map(CoxeterType::a).collect();
    types.extend((2..=8).map(CoxeterType::b));
    types.extend((2..=8).map(CoxeterType::c));
    types.extend((4..=8).map(CoxeterType::d));
    types.extend([CoxeterType::e(6), CoxeterType::e(7), CoxeterType::e(8), CoxeterType::f4(), CoxeterType::g2()]);
    let mut checks = Vec::new();
    for ct in types {
        let rs = RootSystem::new(ct);
        let expected = two_rank_expected(&ct);
        match two_rank(&rs) {
            Ok(t) => {
                checks.push(Check::eq(format!("{ct} 2-rank"), expected, t));
                // Strongly orthogonal roots are orthogonal, hence independent.
                let maximal = if ct.rank <= 6 {
                    exhaustive_two_rank(&rs, 1) == t
                } else {
                    let witness = wolf_sequence(&rs).map(|s| s.roots.len()).unwrap_or(0);
                    (witness == t || !max_so_sets(&rs, t, 1).is_empty())
                        && (t == ct.rank || max_so_sets(&rs, t + 1, 1).is_empty())
                };
                checks.push(Check::new(format!("{ct} largest strongly orthogonal set"), maximal, ""));
            }
            Err(e) => checks.push(Check::new(format!("{ct} 2-rank"), false, e.to_string())),
        }
    }
    report(5, "2-ranks and strongly orthogonal sets", 600, start, checks)
}

/// Geometry and discrete Weyl group of the reflection torus on `roots`.
fn torus_geometry(
    ct: CoxeterType,
    fw: usize,
    roots: &[usize],
    fold: bool,
) -> coxtori::Result<(IncidenceGeometry, u128, String, String)> {
    let rs = RootSystem::new(ct);
    let ws = weight_orbit(&rs, fw)?;
    let g = reflection_geometry(&rs, &ws, roots, fold)?;
    let w = coxeter_group(&rs);
    let m = w.subgroup(roots.iter().map(|&r| rs.reflection(r).clone()).collect());
    let (_, weyl) = discrete_weyl_group(&w, &m)?;
    let (aut, aut_name) = g.automorphisms();
    let _ = aut;
    Ok((g, weyl.order, weyl.name, aut_name.name))
}

pub const FANO_LINES: [[usize; 3]; 7] = [[0, 1, 6], [0, 2, 5], [0, 3, 4], [1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]];

pub fn criterion_6() -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let run = |checks: &mut Vec<Check>, label: &str, r: coxtori::Result<()>| {
        if let Err(e) = r {
            checks.push(Check::new(label, false, e.to_string()));
        }
    };

    let d5 = (|| {
        let rs = RootSystem::new(CoxeterType::d(5));
        let top = rs.highest_root.expect("crystallographic");
        let (g, order, weyl, aut) = torus_geometry(CoxeterType::d(5), 5, &[top, 4, 0, 3], false)?;
        checks.push(Check::eq("D5 recognized", Recognition::Square, g.recognize()));
        checks.push(Check::eq("D5 automorphisms", ("D_8".to_string(), 8u128), (aut.clone(), order)));
        checks.push(Check::eq("D5 discrete Weyl group", "D_8".to_string(), weyl));
        Ok(())
    })();
    run(&mut checks, "D5 geometry", d5);

    let e6 = (|| {
        let rs = RootSystem::new(CoxeterType::e(6));
        let ws = weight_orbit(&rs, 1)?;
        let lines = schlafli_labeling(&ws)?;
        let t = e6_m_orbits(&rs, &ws, &lines)?;
        let sizes: Vec<usize> = t.orbits.iter().map(|o| o.len()).collect();
        checks.push(Check::eq("E6 orbit sizes", vec![9, 9, 9], sizes));
        checks.push(Check::new("E6 orbits form a Steiner triad", t.is_triad, ""));
        checks.push(Check::eq(
            "E6 discrete Weyl group",
            ("2 x S_4".to_string(), 48u128),
            (t.weyl.name.clone(), t.weyl.order),
        ));
        checks.push(Check::eq("E6 six-point geometry", Recognition::Octahedral, t.geometry.recognize()));
        let (aut, _) = t.geometry.automorphisms();
        checks.push(Check::eq("E6 octahedral symmetry order", 48u128, aut.order()));
        Ok(())
    })();
    run(&mut checks, "E6 geometry", e6);

    let e7 = (|| {
        let rs = RootSystem::new(CoxeterType::e(7));
        let b = wolf_sequence(&rs)?.roots;
        let (g, order, weyl, aut) = torus_geometry(CoxeterType::e(7), 7, &b, false)?;
        checks.push(Check::eq("E7 recognized", Recognition::Fano, g.recognize()));
        let mut lines: Vec<Vec<usize>> = g.lines.clone();
        lines.sort();
        let expected: Vec<Vec<usize>> = FANO_LINES.iter().map(|l| l.to_vec()).collect();
        checks.push(Check::eq("E7 lines l1..l7", expected, lines));
        checks.push(Check::eq("E7 discrete Weyl group", ("PSL(3,2)".to_string(), 168u128), (weyl, order)));
        checks.push(Check::eq("E7 automorphisms", "PSL(3,2)".to_string(), aut));
        // Eight weights on which the three incident reflections act as
        // fixed-point-free involutions: a regular 2^3 action, so a 3-cube.
        let ws = weight_orbit(&rs, 7)?;
        let cubes = g.lines.iter().zip(&g.orbits).all(|(line, orbit)| {
            let gens: Vec<_> = line.iter().map(|&p| ws.action(&rs, rs.reflection(g.points[p]))).collect();
            let matchings = gens.iter().all(|s| orbit.iter().all(|&x| s.image(x) != x && orbit.contains(&s.image(x))));
            let mut reached = BTreeSet::from([orbit[0]]);
            for s in &gens {
                let moved: Vec<usize> = reached.iter().map(|&x| s.image(x)).collect();
                reached.extend(moved);
            }
            orbit.len() == 8 && gens.len() == 3 && matchings && reached.len() == 8
        });
        checks.push(Check::new("E7 orbits are 3-cubes", cubes, ""));
        Ok(())
    })();
    run(&mut checks, "E7 geometry", e7);

    let e8 = (|| {
        let rs = RootSystem::new(CoxeterType::e(8));
        let b = wolf_sequence(&rs)?.roots;
        let (g, order, weyl, aut) = torus_geometry(CoxeterType::e(8), 8, &b, true)?;
        checks.push(Check::eq("E8 recognized", Recognition::ExtendedFano, g.recognize()));
        checks.push(Check::eq("E8 line split", (7, 4, 3), line_split(&g)));
        checks.push(Check::eq("E8 trivial orbits", 8, g.trivial_orbits));
        checks.push(Check::eq("E8 discrete Weyl group", ("2^3:PSL(3,2)".to_string(), 1344u128), (weyl, order)));
        checks.push(Check::eq("E8 automorphisms", "2^3:PSL(3,2)".to_string(), aut));
        Ok(())
    })();
    run(&mut checks, "E8 geometry", e8);
    report(6, "orbit geometries", 300, start, checks)
}

pub fn criterion_7() -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let r = (|| {
        let rs = RootSystem::new(CoxeterType::e(6));
        let ws = weight_orbit(&rs, 1)?;
        let l = schlafli_labeling(&ws)?;
        checks.push(Check::new("each line meets 10 others", (0..27).all(|i| l.degree(i) == 10), ""));
        let t = l.tritangents();
        let abc = t.iter().filter(|x| x.kind == TritangentKind::Abc).count();
        checks.push(Check::eq("tritangents (abc, ccc)", (30, 15), (abc, t.len() - abc)));
        checks.push(Check::eq("double-sixes", 36, l.double_sixes().len()));
        let (pairs, triads) = l.steiner_structures();
        checks.push(Check::eq("trihedral pairs", 120, pairs.len()));
        checks.push(Check::eq("triads", 40, triads.len()));
        checks.push(Check::eq("3A2 subsystems", 40, count_3a2_subsystems(&rs)));
        let cubic = cartan_cubic_support(&l)?;
        let support: BTreeSet<[usize; 3]> = cubic.terms.iter().map(|t| t.1).collect();
        let tri: BTreeSet<[usize; 3]> = t.iter().map(|x| x.lines).collect();
        checks.push(Check::new("cubic support is the tritangents", support == tri && cubic.terms.len() == 45, ""));
        Ok::<_, coxtori::Error>(())
    })();
    if let Err(e) = r {
        checks.push(Check::new("E6 configuration", false, e.to_string()));
    }
    report(7, "E6 classical configuration", 60, start, checks)
}

pub fn criterion_8() -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let r = (|| {
        let rs = RootSystem::new(CoxeterType::e(6));
        let ws = weight_orbit(&rs, 1)?;
        let l = schlafli_labeling(&ws)?;
        let tori = e6_two_tori(&rs, &l, &ws)?;
        let stated = [(45u128, "S_4", 24u128), (27, "S_5", 120), (270, "D_12", 12)];
        let documented_conjugates = [135u128, 27, 270];
        for (i, t) in tori.iter().enumerate() {
            let (conj, name, order) = stated[i];
            checks.push(Check::new(format!("{} is 2^4", t.name), t.order == 16 && t.elementary, ""));
            checks.push(Check::deviation(
                format!("{} conjugates", t.name),
                conj,
                t.conjugates,
                documented_conjugates[i],
            ));
            checks.push(Check::eq(
                format!("{} quotient", t.name),
                (name.to_string(), order),
                (t.weyl.name.clone(), t.weyl.order),
            ));
        }
        let sorted = |v: &[String]| {
            let mut v = v.to_vec();
            v.sort();
            v
        };
        let has_pair = |t: &coxtori::weights::TwoTorus, a: &str, b: &str| {
            t.pairs.iter().any(|p| (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a))
        };
        checks.push(Check::eq(
            "N1 fixed lines",
            sorted(&["a1".into(), "b6".into(), "c16".into()]),
            sorted(&tori[0].fixed_lines),
        ));
        checks.push(Check::new(
            "N2 fixes b6 and swaps a1, c16",
            tori[1].fixed_lines == ["b6"] && has_pair(&tori[1], "a1", "c16"),
            format!("fixed {:?}", tori[1].fixed_lines),
        ));
        checks.push(Check::eq("N3 fixed lines", vec!["a1".to_string()], tori[2].fixed_lines.clone()));
        let mut n3_pairs: Vec<String> = tori[2].pairs.iter().map(|p| sorted(p).join("-")).collect();
        n3_pairs.sort();
        let mut c = Check::new(
            "N3 swaps b6, c16",
            has_pair(&tori[2], "b6", "c16"),
            format!("expected pair b6-c16, observed pairs {n3_pairs:?}"),
        );
        c.known = !c.ok && n3_pairs == ["b2-c12", "b3-c13", "b4-c14"];
        checks.push(c);
        Ok::<_, coxtori::Error>(())
    })();
    if let Err(e) = r {
        checks.push(Check::new("E6 2-tori", false, e.to_string()));
    }
    report(8, "E6 maximal 2-tori", 120, start, checks)
}

/// Small groups checked against the exhaustive census.
pub fn oracle_types() -> Vec<CoxeterType> {
    let mut v: Vec<CoxeterType> = (1..=5).map(CoxeterType::a).collect();
    v.extend((2..=5).map(CoxeterType::b));
    v.extend([CoxeterType::d(4), CoxeterType::d(5), CoxeterType::f4(), CoxeterType::g2(), CoxeterType::h(3)]);
    v.extend((5..=12).map(CoxeterType::i2));
    v
}

/// Census and optimized search agree class by class.
pub fn oracle_check(ct: &CoxeterType) -> Check {
    let name = format!("{ct} census");
    let w = coxeter_group(&RootSystem::new(*ct));
    if w.order() > ORACLE_CAP {
        return Check::new(name, false, "group too large for the census");
    }
    let Some(c) = census(&w) else { return Check::new(name, false, "census failed") };
    let reps = match enumerate_max_abelian(&w, 0, &Budget::unlimited()) {
        Ok(r) => r,
        Err(e) => return Check::new(name, false, e.to_string()),
    };
    let orders_agree = reps.iter().all(|r| r.order() as usize == c.max_order);
    let mut hit: Vec<usize> = reps.iter().filter_map(|r| c.class_of(r)).collect();
    hit.sort_unstable();
    let bijective = hit.len() == reps.len() && hit == (0..c.classes.len()).collect::<Vec<_>>();
    Check::new(
        name,
        orders_agree && bijective,
        format!(
            "census: {} abelian subgroups, {} classes of order {}; search: {} classes",
            c.abelian_subgroups,
            c.classes.len(),
            c.max_order,
            reps.len()
        ),
    )
}

pub fn criterion_9() -> CriterionReport {
    let start = Instant::now();
    let checks = oracle_types().iter().map(oracle_check).collect();
    report(9, "exhaustive census agreement", 120, start, checks)
}

/// Reflection involutivity and linearity on every root in `rs`.
pub fn reflection_properties(rs: &RootSystem) -> bool {
    let n = rs.num_roots();
    let mut sums: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = rs.sum(a, b) {
                sums.insert((a, b), c);
            }
        }
    }
    (0..rs.num_positive()).all(|g| {
        let s = rs.reflection(g);
        s.mul(s).is_identity()
            && s.image(g) == rs.neg(g)
            && (0..n).all(|x| !rs.orthogonal(g, x) || s.image(x) == x)
            && sums.iter().all(|(&(a, b), &c)| sums.get(&(s.image(a), s.image(b))) == Some(&s.image(c)))
    })
}

/// Random single-incidence edits of `lines`; returns how many were rejected.
pub fn perturbation_rejections(points: usize, lines: &[Vec<usize>], trials: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    for _ in 0..trials {
        let mut l = lines.to_vec();
        let i = rng.gen_range(0..l.len());
        let j = rng.gen_range(0..l[i].len());
        let outside: Vec<usize> = (0..points).filter(|p| !l[i].contains(p)).collect();
        l[i][j] = outside[rng.gen_range(0..outside.len())];
        l[i].sort_unstable();
        let g = IncidenceGeometry { points: (0..points).collect(), lines: l, orbits: Vec::new(), trivial_orbits: 0 };
        if g.recognize() == Recognition::Other {
            rejected += 1;
        }
    }
    rejected
}

pub fn extended_fano_lines() -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = FANO_LINES.iter().map(|l| l.iter().copied().chain([7]).collect()).collect();
    for l in FANO_LINES {
        v.push((0..7).filter(|p| !l.contains(p)).collect());
    }
    v
}

pub fn criterion_10(ctx: &mut Context) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut systems: Vec<CoxeterType> = table_types();
    systems.extend((2..=8).map(CoxeterType::c));
    systems.extend([CoxeterType::e(8), CoxeterType::g2()]);
    systems.extend((5..=12).map(CoxeterType::i2));
    for ct in &systems {
        checks.push(Check::new(format!("{ct} reflections"), reflection_properties(&RootSystem::new(*ct)), ""));
    }
    for ct in table_types() {
        if let Ok((c, _)) = ctx.classification(&ct) {
            let all = c.classes.iter().all(|k| k.self_centralizing && k.rep.is_abelian());
            checks.push(Check::new(format!("{ct} classes self-centralizing"), all, ""));
        }
    }
    for entry in catalog() {
        let g: PermGroup = (entry.build)();
        checks.push(Check::eq(format!("identify {}", entry.name), entry.name.to_string(), identify(&g).name));
    }
    let fano: Vec<Vec<usize>> = FANO_LINES.iter().map(|l| l.to_vec()).collect();
    checks.push(Check::eq("Fano perturbations rejected", 100, perturbation_rejections(7, &fano, 100, 7)));
    checks.push(Check::eq(
        "extended Fano perturbations rejected",
        100,
        perturbation_rejections(8, &extended_fano_lines(), 100, 8),
    ));
    report(10, "property suites", 1200, start, checks)
}

/// Runs the selected criteria in order.
pub fn run(ctx: &mut Context, ids: &[u8]) -> Vec<CriterionReport> {
    ids.iter()
        .map(|&id| match id {
            1 => criterion_1(ctx),
            2 => criterion_2(ctx),
            3 => criterion_3(ctx),
            4 => criterion_4(ctx),
            5 => criterion_5(),
            6 => criterion_6(),
            7 => criterion_7(),
            8 => criterion_8(),
            9 => criterion_9(),
            _ => criterion_10(ctx),
        })
        .collect()
}

/// Per-type checks: table, closed form, torus uniqueness, self-centralizing
/// classes and, for small groups, the census.
pub fn verify_type(ctx: &mut Context, ct: &CoxeterType) -> Vec<Check> {
    let mut checks = Vec::new();
    match ctx.classification(ct) {
        Ok((c, _)) => {
            if expected(ct.family.letter(), ct.rank).is_some() {
                checks.push(table_check(ct, c));
            }
            checks.push(Check::eq(format!("{ct} closed-form order"), theoretical_max(ct).0, c.max_order));
            checks.push(Check::eq(format!("{ct} discrete maximal tori"), 1, c.tori.len()));
            checks.push(Check::new(
                format!("{ct} classes self-centralizing"),
                c.classes.iter().all(|k| k.self_centralizing),
                "",
            ));
        }
        Err(e) => checks.push(Check::new(format!("{ct} classification"), false, e)),
    }
    if ct.is_crystallographic() {
        let rs = RootSystem::new(*ct);
        if let Ok(t) = two_rank(&rs) {
            checks.push(Check::eq(format!("{ct} 2-rank"), two_rank_expected(ct), t));
        }
    }
    if ct.group_order() <= ORACLE_CAP {
        checks.push(oracle_check(ct));
    }
    checks
}

/// A torus geometry together with its two groups.
pub struct StandardGeometry {
    pub geometry: IncidenceGeometry,
    pub names: Vec<String>,
    pub weyl: coxtori::quotient::NamedGroup,
    pub automorphisms: coxtori::quotient::NamedGroup,
}

/// Short coordinate label of a root, such as `0,1,1,0`.
pub fn root_label(rs: &RootSystem, r: usize) -> String {
    match rs.int_coords(r) {
        Some(c) => c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        None => format!("root {r}"),
    }
}

/// The reference geometry of D5, E6, E7 or E8.
pub fn standard_geometry(ct: &CoxeterType) -> coxtori::Result<StandardGeometry> {
    let rs = RootSystem::new(*ct);
    let w = coxeter_group(&rs);
    let (geometry, weyl) = match (ct.family, ct.rank) {
        (Family::D, 5) => {
            let top = rs.highest_root.expect("crystallographic");
            let roots = [top, 4, 0, 3];
            let ws = weight_orbit(&rs, 5)?;
            let m = w.subgroup(roots.iter().map(|&r| rs.reflection(r).clone()).collect());
            (reflection_geometry(&rs, &ws, &roots, false)?, discrete_weyl_group(&w, &m)?.1)
        }
        (Family::E, 6) => {
            let ws = weight_orbit(&rs, 1)?;
            let t = e6_m_orbits(&rs, &ws, &schlafli_labeling(&ws)?)?;
            (t.geometry, t.weyl)
        }
        (Family::E, 7) | (Family::E, 8) => {
            let roots = wolf_sequence(&rs)?.roots;
            let ws = weight_orbit(&rs, ct.rank)?;
            let m = w.subgroup(roots.iter().map(|&r| rs.reflection(r).clone()).collect());
            (reflection_geometry(&rs, &ws, &roots, ct.rank == 8)?, discrete_weyl_group(&w, &m)?.1)
        }
        _ => return Err(coxtori::Error::UnsupportedWeight { ctype: ct.name(), index: 0 }),
    };
    let names = geometry.points.iter().map(|&r| format!("s[{}]", root_label(&rs, r))).collect();
    let (_, automorphisms) = geometry.automorphisms();
    Ok(StandardGeometry { geometry, names, weyl, automorphisms })
}
