use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use ltree_intermezzo::dp::{dp_shape, solve_dp};
use ltree_intermezzo::formats::{
    parse_dimacs, parse_imz, parse_lti, parse_mcg, parse_order, write_dimacs, write_imz, write_lti, write_map,
    write_mcg, write_result,
};
use ltree_intermezzo::generators::{
    gen_fig4, gen_hookfree_ltree, gen_random_cnf, gen_random_gim, gen_random_ltree, gen_random_mcp,
};
use ltree_intermezzo::graph::{LTreeInstance, OrderViolation};
use ltree_intermezzo::intermezzo::{
    check_ordering, induced_order, solve_backtracking, ConstraintViolation, GimInstance, SolveResult, SolveStatus,
};
use ltree_intermezzo::order::{chain_partition, height, is_cs_tree};
use ltree_intermezzo::ordering::Ordering;
use ltree_intermezzo::recognition::{
    decide_hookfree, necessity_order, recognize_rooted, recognize_unrooted, RecognitionStatus,
};
use ltree_intermezzo::reductions::{
    gim_cstree_to_ltree, gim_to_im, ltree_to_gim, mcp_to_gim, rooted_to_unrooted, sat_to_ltree, Variant, WitnessMap,
};

use crate::{Cli, Command, Engine, Generator, Kind, ReduceArgs, Reduction, SolveArgs, VariantArg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_RESOURCE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;

/// What a successful command prints and returns.
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn data(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| data(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_lti(path: &Path) -> Result<LTreeInstance> {
    parse_lti(&read(path)?).map_err(|e| data(path, e))
}

fn load_imz(path: &Path) -> Result<GimInstance> {
    parse_imz(&read(path)?).map_err(|e| data(path, e))
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Solve(args) => solve(&args),
        Command::Reduce(args) => reduce(&args),
        Command::Verify { kind, instance, order } => verify(kind, &instance, &order),
        Command::Analyze { file, kind } => analyze(&file, kind),
        Command::Gen { generator } => generate(generator),
    }
}

fn solve(args: &SolveArgs) -> Result<Outcome> {
    match args.kind {
        Kind::Ltree => solve_ltree(args),
        Kind::Intermezzo => solve_intermezzo(args),
    }
}

fn solve_ltree(args: &SolveArgs) -> Result<Outcome> {
    if args.engine == Engine::Dp {
        return Err(CliError::Usage("the dp engine only applies to intermezzo instances".into()));
    }
    let inst = load_lti(&args.file)?;
    let mut stats = vec![];
    let (status, witness) = if args.unrooted {
        let (res, root) = recognize_unrooted(&inst, args.budget);
        stats.push(("engine", "backtrack".to_owned()));
        stats.push(("nodes", res.nodes_explored.to_string()));
        if let Some(r) = root {
            stats.push(("root", inst.name(r).to_owned()));
        }
        (res.status, res.witness)
    } else if let Some(order) = (args.engine == Engine::Auto).then(|| decide_hookfree(&inst)).flatten() {
        stats.push(("engine", "hookfree".to_owned()));
        (RecognitionStatus::Feasible, Some(order))
    } else {
        let res = recognize_rooted(&inst, args.budget);
        stats.push(("engine", "backtrack".to_owned()));
        stats.push(("nodes", res.nodes_explored.to_string()));
        (res.status, res.witness)
    };
    let (label, code) = match status {
        RecognitionStatus::Feasible => ("FEASIBLE", EXIT_OK),
        RecognitionStatus::Infeasible => ("INFEASIBLE", EXIT_NO),
        RecognitionStatus::BudgetExhausted => ("RESOURCE-EXCEEDED", EXIT_RESOURCE),
    };
    let mut stdout = write_result(label, witness.as_ref(), |v| inst.name(v).to_owned());
    if args.stats {
        push_stats(&mut stdout, &stats);
    }
    Ok(Outcome { code, stdout })
}

fn solve_intermezzo(args: &SolveArgs) -> Result<Outcome> {
    if args.unrooted {
        return Err(CliError::Usage("--unrooted only applies to ltree instances".into()));
    }
    let inst = load_imz(&args.file)?;
    let use_dp = match args.engine {
        Engine::Dp => true,
        Engine::Backtrack => false,
        Engine::Auto => dp_shape(&inst).is_none_or(|s| s.states <= args.state_cap),
    };
    let res: SolveResult =
        if use_dp { solve_dp(&inst, args.state_cap) } else { solve_backtracking(&inst, args.budget) };
    let code = match res.status {
        SolveStatus::Feasible => EXIT_OK,
        SolveStatus::Infeasible => EXIT_NO,
        SolveStatus::ResourceExceeded => EXIT_RESOURCE,
    };
    let mut stdout = write_result(res.status.label(), res.witness.as_ref(), |e| inst.name(e).to_owned());
    if args.stats {
        let mut stats = vec![("engine", if use_dp { "dp" } else { "backtrack" }.to_owned())];
        stats.push((if use_dp { "reachable" } else { "nodes" }, res.stats.nodes.to_string()));
        if let Some(k) = res.stats.chains {
            stats.push(("chains", k.to_string()));
        }
        if let Some(s) = res.stats.states {
            stats.push(("states", s.to_string()));
        }
        if let Some(b) = res.stats.state_bound {
            stats.push(("state_bound", format!("{b:.0}")));
        }
        push_stats(&mut stdout, &stats);
    }
    Ok(Outcome { code, stdout })
}

fn push_stats(out: &mut String, stats: &[(&str, String)]) {
    out.push_str("# stats\n");
    for (k, v) in stats {
        writeln!(out, "{k}={v}").unwrap();
    }
}

/// `out.lti` becomes `out.map`.
fn map_path(out: &Path) -> PathBuf {
    out.with_extension("map")
}

fn reduce(args: &ReduceArgs) -> Result<Outcome> {
    let input = &args.input;
    let invalid = |e: ltree_intermezzo::error::ReductionError| data(input, e);
    let (text, map, summary): (String, WitnessMap, Vec<(&str, String)>) = match args.reduction {
        Reduction::Sat2ltree => {
            let f = parse_dimacs(&read(input)?).map_err(|e| data(input, e))?;
            let (inst, map) = sat_to_ltree(&f);
            (write_lti(&inst), map, ltree_summary(&inst))
        }
        Reduction::Ltree2gim => {
            let inst = load_lti(input)?;
            let variant = match args.variant {
                VariantArg::Height => Variant::Height,
                VariantArg::Width => Variant::Width,
            };
            let g = ltree_to_gim(&inst, variant).map_err(invalid)?;
            let summary = gim_summary(&g.instance);
            (write_imz(&g.instance), g.map, summary)
        }
        Reduction::Gim2ltree => {
            let g = load_imz(input)?;
            let out = gim_cstree_to_ltree(&g).map_err(invalid)?;
            let summary = ltree_summary(&out.instance);
            (write_lti(&out.instance), out.map, summary)
        }
        Reduction::Gim2im => {
            let g = load_imz(input)?;
            let nf = gim_to_im(&g).map_err(invalid)?;
            let summary = gim_summary(&nf.instance);
            (write_imz(&nf.instance), nf.map, summary)
        }
        Reduction::Mcp2gim => {
            let g = parse_mcg(&read(input)?).map_err(|e| data(input, e))?;
            let (inst, map) = mcp_to_gim(&g, args.lower_pairs);
            (write_imz(&inst), map, gim_summary(&inst))
        }
        Reduction::Root2unroot => {
            let inst = load_lti(input)?;
            let out = rooted_to_unrooted(&inst);
            let summary = ltree_summary(&out.instance);
            (write_lti(&out.instance), out.map, summary)
        }
    };
    write(&args.output, &text)?;
    let map_file = map_path(&args.output);
    write(&map_file, &write_map(&map))?;
    let mut stdout = format!("wrote {} and {}\n", args.output.display(), map_file.display());
    for (k, v) in summary {
        writeln!(stdout, "{k}: {v}").unwrap();
    }
    Ok(Outcome { code: EXIT_OK, stdout })
}

fn ltree_summary(inst: &LTreeInstance) -> Vec<(&'static str, String)> {
    vec![
        ("vertices", inst.vertex_count().to_string()),
        ("edges", inst.graph().edge_count().to_string()),
        ("tree-height", inst.height().to_string()),
    ]
}

fn gim_summary(inst: &GimInstance) -> Vec<(&'static str, String)> {
    vec![
        ("elements", inst.len().to_string()),
        ("pairs", inst.pair_count().to_string()),
        ("triples", inst.triple_count().to_string()),
    ]
}

fn verify(kind: Kind, instance: &Path, order_file: &Path) -> Result<Outcome> {
    let text = read(order_file)?;
    let verdict = match kind {
        Kind::Ltree => {
            let inst = load_lti(instance)?;
            let seq = parse_order(&text, |n| inst.graph().vertex(n)).map_err(|e| data(order_file, e))?;
            let name = |v: usize| inst.name(v).to_owned();
            match Ordering::with_len(seq, inst.vertex_count()) {
                Err(e) => Err(format!("not a permutation of the vertices: {e}")),
                Ok(order) => inst.check_order(&order).map_err(|v| match v {
                    OrderViolation::WrongLength { expected, found } => {
                        format!("ordering has {found} vertices, expected {expected}")
                    }
                    OrderViolation::WrongStart { expected, found } => {
                        format!("wrong start vertex: expected {}, found {}", name(expected), name(found))
                    }
                    OrderViolation::NotConnected(v) => format!("vertex {} has no earlier neighbor", name(v)),
                    OrderViolation::WrongParent { vertex, expected, found } => format!(
                        "vertex {} gets parent {}, tree parent is {}",
                        name(vertex),
                        name(found),
                        name(expected)
                    ),
                }),
            }
        }
        Kind::Intermezzo => {
            let inst = load_imz(instance)?;
            let seq = parse_order(&text, |n| inst.element(n)).map_err(|e| data(order_file, e))?;
            let name = |e: usize| inst.name(e).to_owned();
            match Ordering::with_len(seq, inst.len()) {
                Err(e) => Err(format!("not a permutation of the elements: {e}")),
                Ok(order) => check_ordering(&inst, &order).map_err(|v| match v {
                    ConstraintViolation::WrongLength { expected, found } => {
                        format!("ordering has {found} elements, expected {expected}")
                    }
                    ConstraintViolation::Pair(x, y) => format!("pair ({}, {}) violated", name(x), name(y)),
                    ConstraintViolation::Triple(x, y, z) => {
                        format!("triple ({}, {}, {}) violated", name(x), name(y), name(z))
                    }
                }),
            }
        }
    };
    Ok(match verdict {
        Ok(()) => Outcome { code: EXIT_OK, stdout: "VALID\n".into() },
        Err(reason) => Outcome { code: EXIT_NO, stdout: format!("INVALID {reason}\n") },
    })
}

fn detect_kind(file: &Path, kind: Option<Kind>) -> Result<Kind> {
    if let Some(k) = kind {
        return Ok(k);
    }
    match file.extension().and_then(|e| e.to_str()) {
        Some("lti") => Ok(Kind::Ltree),
        Some("imz") => Ok(Kind::Intermezzo),
        _ => Err(CliError::Usage(format!(
            "cannot tell the instance kind of {}; use --kind or a .lti/.imz extension",
            file.display()
        ))),
    }
}

fn analyze(file: &Path, kind: Option<Kind>) -> Result<Outcome> {
    let mut out = String::new();
    let mut line = |k: &str, v: String| writeln!(out, "{k}: {v}").unwrap();
    match detect_kind(file, kind)? {
        Kind::Ltree => {
            let inst = load_lti(file)?;
            let hooks = inst.find_hooks();
            line("vertices", inst.vertex_count().to_string());
            line("edges", inst.graph().edge_count().to_string());
            line("non-tree-edges", inst.non_tree_edges().count().to_string());
            line("tree-height", inst.height().to_string());
            line("branch-leaves", inst.branch_leaves().len().to_string());
            line("hooks", hooks.len().to_string());
            line("ubends", inst.find_ubends().len().to_string());
            for h in &hooks {
                line(
                    "hook",
                    format!("point={} eye={} anchor={}", inst.name(h.point), inst.name(h.eye), inst.name(h.anchor)),
                );
            }
            match necessity_order(&inst) {
                Ok(_) => line("necessary-order", "consistent".into()),
                Err(cycle) => {
                    let names: Vec<&str> = cycle.iter().map(|&v| inst.name(v)).collect();
                    line("necessary-order", format!("cycle {}", names.join(" ")));
                }
            }
        }
        Kind::Intermezzo => {
            let inst = load_imz(file)?;
            line("elements", inst.len().to_string());
            line("pairs", inst.pair_count().to_string());
            line("triples", inst.triple_count().to_string());
            line("disjoint-triples", inst.check_disjoint_triples().is_ok().to_string());
            match induced_order(&inst) {
                Err(cycle) => {
                    let names: Vec<&str> = cycle.iter().map(|&e| inst.name(e)).collect();
                    line("consistent", "false".into());
                    line("cycle", names.join(" "));
                }
                Ok(order) => {
                    let chains = chain_partition(&order);
                    let shape = dp_shape(&inst).expect("order is consistent");
                    line("consistent", "true".into());
                    line("height", height(&order).to_string());
                    line("width", chains.len().to_string());
                    line("cs-tree", is_cs_tree(&order).to_string());
                    for c in chains.chains() {
                        let names: Vec<&str> = c.iter().map(|&e| inst.name(e)).collect();
                        line("chain", names.join(" "));
                    }
                    line("states", shape.states.to_string());
                    line("state-bound", format!("{:.0}", shape.state_bound));
                }
            }
        }
    }
    Ok(Outcome { code: EXIT_OK, stdout: out })
}

fn generate(generator: Generator) -> Result<Outcome> {
    let usage = |e: ltree_intermezzo::error::GenError| CliError::Usage(e.to_string());
    let (text, size, out) = match generator {
        Generator::Fig4 { t, out } => {
            let inst = gen_fig4(t).map_err(usage)?;
            (write_lti(&inst), format!("{} vertices", inst.vertex_count()), out)
        }
        Generator::Cnf { n, m, seed, out } => {
            let f = gen_random_cnf(n, m, seed).map_err(usage)?;
            (write_dimacs(&f), format!("{n} variables, {m} clauses"), out)
        }
        Generator::Mcp { k, q, p, seed, out } => {
            let g = gen_random_mcp(k, q, p, seed).map_err(usage)?;
            (write_mcg(&g), format!("{} vertices, {} edges", k * q, g.edge_count()), out)
        }
        Generator::Gim { k, n, triples, seed, out } => {
            let g = gen_random_gim(k, n, triples, seed).map_err(usage)?;
            (write_imz(&g), format!("{} elements, {} triples", g.len(), g.triple_count()), out)
        }
        Generator::Ltree { n, chords, seed, hookfree, out } => {
            let make = if hookfree { gen_hookfree_ltree } else { gen_random_ltree };
            let inst = make(n, chords, seed).map_err(usage)?;
            (write_lti(&inst), format!("{} vertices", inst.vertex_count()), out)
        }
    };
    Ok(match out {
        Some(path) => {
            write(&path, &text)?;
            Outcome { code: EXIT_OK, stdout: format!("wrote {} ({size})\n", path.display()) }
        }
        None => Outcome { code: EXIT_OK, stdout: text },
    })
}
