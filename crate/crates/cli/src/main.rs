use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxtori::abelian::{classify, Budget, Classification};
use coxtori::rootsys::{CoxeterType, RootSystem};
use coxtori::sorth::wolf_chain;
use coxtori_cli::verify::{self, default_target, root_label, standard_geometry, Context};

#[derive(Parser)]
#[command(name = "coxtori", version, about = "Maximal abelian subgroups and discrete tori of finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Time limit in seconds for each enumeration.
    #[arg(long, env = "COXTORI_BUDGET", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Draw geometries as point/line incidence graphs.
    #[arg(long, global = true)]
    bipartite: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots in the simple-root basis.
    Roots { family: String, rank: String },
    /// The strongly orthogonal roots of the Wolf sequence.
    Wolf { family: String, rank: String },
    /// The diagram chain behind the Wolf sequence.
    Chain { family: String, rank: String },
    /// Classes of maximal-order abelian subgroups.
    Table { family: String, rank: String },
    /// Orbits of a class representative on the roots.
    Orbits {
        family: String,
        rank: String,
        /// Row of the table to use.
        #[arg(long, default_value_t = 0)]
        class: usize,
        /// Report the torus geometry of D5, E6, E7 or E8 instead.
        #[arg(long)]
        geometry: bool,
    },
    /// Run the acceptance suite, or the per-type checks for one type.
    Verify { selector: Vec<String> },
}

/// Failure of a subcommand, with its exit code.
struct Failure(u8, String);

fn parse_type(family: &str, rank: &str) -> Result<CoxeterType, Failure> {
    CoxeterType::parse(family, rank).map_err(|e| Failure(2, format!("usage: {e}")))
}

fn core(e: coxtori::Error) -> Failure {
    Failure(1, e.to_string())
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "type": c.ctype.name(),
        "rank": c.ctype.rank,
        "group_order": c.group_order.to_string(),
        "max_abelian_order": c.max_order.to_string(),
        "classes": c.classes.iter().enumerate().map(|(i, k)| json!({
            "invariants": k.invariants.prime_powers,
            "weyl_group": { "name": k.weyl.name, "order": k.weyl.order.to_string() },
            "is_discrete_torus": c.tori.contains(&i),
        })).collect::<Vec<_>>(),
    })
}

fn classification_text(c: &Classification) -> String {
    let mut s = format!("{}\n", c.header());
    for (inv, name) in c.rows() {
        s.push_str(&format!("{inv} {name}\n"));
    }
    s
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let budget = || cli.budget.map_or_else(Budget::unlimited, Budget::seconds);
    let json_out = cli.format == Format::Json;
    let pretty = |v: Value| serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    match &cli.command {
        Command::Roots { family, rank } => {
            let rs = RootSystem::new(parse_type(family, rank)?);
            if json_out {
                let roots: Vec<Value> = rs
                    .roots
                    .iter()
                    .map(|r| json!({ "index": r.index, "positive": r.is_positive, "label": root_label(&rs, r.index) }))
                    .collect();
                return Ok((pretty(json!({ "type": rs.ctype.name(), "roots": roots })), true));
            }
            Ok((rs.dump(), true))
        }
        Command::Wolf { family, rank } => {
            let rs = RootSystem::new(parse_type(family, rank)?);
            let chain = wolf_chain(&rs).map_err(core)?;
            let labels: Vec<String> = chain.so_set.roots.iter().map(|&r| root_label(&rs, r)).collect();
            let halted: Vec<String> = chain.halted.iter().map(|c| c.name()).collect();
            if json_out {
                return Ok((pretty(json!({ "type": rs.ctype.name(), "roots": labels, "halted": halted })), true));
            }
            let mut s = String::new();
            for (i, l) in labels.iter().enumerate() {
                s.push_str(&format!("beta{} = ({l})\n", i + 1));
            }
            if !halted.is_empty() {
                s.push_str(&format!("halted at {}\n", halted.join(" + ")));
            }
            Ok((s, true))
        }
        Command::Chain { family, rank } => {
            let rs = RootSystem::new(parse_type(family, rank)?);
            let chain = wolf_chain(&rs).map_err(core)?;
            if json_out {
                return Ok((pretty(serde_json::to_value(&chain).expect("serializable")), true));
            }
            let mut s = String::new();
            for st in &chain.steps {
                let parts: Vec<String> = st.result.iter().map(|c| c.name()).collect();
                s.push_str(&format!(
                    "{} -> {}  (highest root {}, deleted {})\n",
                    st.component.name(),
                    parts.join(" + "),
                    root_label(&rs, st.highest),
                    root_label(&rs, st.deleted)
                ));
            }
            Ok((s, true))
        }
        Command::Table { family, rank } => {
            let ct = parse_type(family, rank)?;
            let c = classify(&ct, default_target(&ct), &budget()).map_err(|e| match e {
                coxtori::Error::BudgetExhausted { .. } => Failure(1, format!("partial: {e}")),
                e => core(e),
            })?;
            if json_out {
                return Ok((pretty(classification_json(&c)), true));
            }
            Ok((classification_text(&c), true))
        }
        Command::Orbits { family, rank, class, geometry } => {
            let ct = parse_type(family, rank)?;
            if *geometry {
                let g = standard_geometry(&ct).map_err(core)?;
                let geo = &g.geometry;
                return Ok(match cli.format {
                    Format::Dot => (geo.to_dot(&g.names, cli.bipartite), true),
                    Format::Json => (
                        pretty(json!({
                            "points": g.names,
                            "lines": geo.lines,
                            "automorphism_order": g.automorphisms.order.to_string(),
                            "recognized": format!("{:?}", geo.recognize()),
                        })),
                        true,
                    ),
                    Format::Text => {
                        let mut s = format!(
                            "{:?} geometry: {} points, {} lines\n",
                            geo.recognize(),
                            geo.num_points(),
                            geo.lines.len()
                        );
                        for (i, n) in g.names.iter().enumerate() {
                            s.push_str(&format!("  p{i} = {n}\n"));
                        }
                        for (i, l) in geo.lines.iter().enumerate() {
                            let pts: Vec<String> = l.iter().map(|p| format!("p{p}")).collect();
                            s.push_str(&format!(
                                "  l{} = {{{}}} ({} elements)\n",
                                i + 1,
                                pts.join(", "),
                                geo.orbits[i].len()
                            ));
                        }
                        s.push_str(&format!(
                            "automorphisms: {} of order {}\n",
                            g.automorphisms.name, g.automorphisms.order
                        ));
                        s.push_str(&format!("discrete Weyl group: {} of order {}\n", g.weyl.name, g.weyl.order));
                        (s, true)
                    }
                });
            }
            let c = classify(&ct, default_target(&ct), &budget()).map_err(core)?;
            let k = c
                .classes
                .get(*class)
                .ok_or_else(|| Failure(2, format!("usage: {} has {} classes", ct, c.classes.len())))?;
            let rs = RootSystem::new(ct);
            let mut orbits = k.rep.orbits();
            orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
            if json_out {
                return Ok((pretty(json!({ "type": ct.name(), "class": class, "orbits": orbits })), true));
            }
            let mut s = format!("class {class}: {} {}\n", k.invariants, k.weyl.name);
            for o in orbits {
                let labels: Vec<String> = o.iter().map(|&r| format!("({})", root_label(&rs, r))).collect();
                s.push_str(&format!("  [{}] {}\n", o.len(), labels.join(" ")));
            }
            Ok((s, true))
        }
        Command::Verify { selector } => {
            let mut ctx = Context::new(cli.threads, cli.budget);
            match selector.as_slice() {
                [all] if all == "all" => {
                    let reports = verify::run(&mut ctx, &(1..=10).collect::<Vec<_>>());
                    let ok = reports.iter().all(|r| r.passed());
                    if json_out {
                        return Ok((pretty(serde_json::to_value(&reports).expect("serializable")), ok));
                    }
                    let mut s: String = reports.iter().map(|r| r.line() + "\n").collect();
                    let passed = reports.iter().filter(|r| r.passed()).count();
                    s.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
                    Ok((s, ok))
                }
                [family, rank] => {
                    let ct = parse_type(family, rank)?;
                    let checks = verify::verify_type(&mut ctx, &ct);
                    let ok = checks.iter().all(|c| c.ok);
                    if json_out {
                        return Ok((pretty(serde_json::to_value(&checks).expect("serializable")), ok));
                    }
                    let s = checks
                        .iter()
                        .map(|c| format!("{} {}: {}\n", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail))
                        .collect();
                    Ok((s, ok))
                }
                _ => Err(Failure(2, "usage: verify all | verify FAMILY RANK".into())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("coxtori: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(code, msg)) => {
            eprintln!("coxtori: {msg}");
            ExitCode::from(code)
        }
    }
}
