//! Line-oriented text formats: `.lti` L-tree instances, `.imz` Intermezzo
//! instances, DIMACS CNF, `.mcg` multicolor graphs, `.map` role tables,
//! solver results and plain orderings.
//!
//! Blank lines and lines starting with `#` are ignored everywhere (DIMACS
//! uses `c` instead).

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{Graph, LTreeInstance, RootedSpanningTree};
use crate::intermezzo::GimInstance;
use crate::ordering::Ordering;
use crate::reductions::{CnfFormula, MulticolorGraph, WitnessMap};

/// Non-comment lines with their 1-based numbers, split into tokens.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#')).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn arity<'a>(line: usize, tokens: &[&'a str], n: usize) -> Result<Vec<&'a str>, ParseError> {
    if tokens.len() != n + 1 {
        return Err(ParseError::new(
            line,
            format!("`{}` takes {n} argument{}, found {}", tokens[0], if n == 1 { "" } else { "s" }, tokens.len() - 1),
        ));
    }
    Ok(tokens[1..].to_vec())
}

/// Reads an `.lti` file: `root <v>`, `tree <parent> <child>`, `edge <u> <v>`.
/// Vertices get indices in order of first use.
pub fn parse_lti(text: &str) -> Result<LTreeInstance, ParseError> {
    let mut graph = Graph::new();
    let mut root = None;
    let mut parent: HashMap<usize, usize> = HashMap::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "root" => {
                let args = arity(line, &tokens, 1)?;
                if root.is_some() {
                    return Err(ParseError::new(line, "second `root` line"));
                }
                root = Some(graph.add_vertex(args[0]));
            }
            "tree" | "edge" => {
                let args = arity(line, &tokens, 2)?;
                let (u, v) = (graph.add_vertex(args[0]), graph.add_vertex(args[1]));
                graph.add_edge(u, v).map_err(|e| ParseError::new(line, e.to_string()))?;
                if tokens[0] == "tree" {
                    if root == Some(v) {
                        return Err(ParseError::new(line, format!("root `{}` cannot have a parent", args[1])));
                    }
                    if let Some(&p) = parent.get(&v) {
                        return Err(ParseError::new(
                            line,
                            format!("vertex `{}` already has parent `{}`", args[1], graph.name(p)),
                        ));
                    }
                    parent.insert(v, u);
                }
            }
            other => return Err(ParseError::new(line, format!("unknown keyword `{other}`"))),
        }
    }
    let root = root.ok_or_else(|| ParseError::whole("missing `root` line"))?;
    let parents = (0..graph.vertex_count()).map(|v| parent.get(&v).copied()).collect();
    let tree = RootedSpanningTree::new(root, parents);
    LTreeInstance::new(graph.clone(), tree).map_err(|defects| {
        let named: Vec<String> = defects.iter().map(|d| name_defect(&graph, d)).collect();
        ParseError::whole(format!("invalid spanning tree: {}", named.join("; ")))
    })
}

fn name_defect(g: &Graph, d: &crate::graph::Defect) -> String {
    use crate::graph::Defect::*;
    match d {
        RootHasParent(r) => format!("root `{}` has a parent", g.name(*r)),
        MissingParent(v) => format!("vertex `{}` has no tree parent", g.name(*v)),
        Cycle(vs) => {
            let names: Vec<&str> = vs.iter().map(|&v| g.name(v)).collect();
            format!("tree edges form a cycle through {}", names.join(", "))
        }
        other => other.to_string(),
    }
}

/// Writes `root`, the tree edges ordered by child, then the non-tree edges.
/// Re-parsing gives an equal instance whenever every parent has a smaller
/// index than its children.
pub fn write_lti(inst: &LTreeInstance) -> String {
    let mut out = String::new();
    writeln!(out, "root {}", inst.name(inst.root())).unwrap();
    let mut tree: Vec<(usize, usize)> = inst.tree().edges().collect();
    tree.sort_by_key(|&(_, c)| c);
    for (p, c) in tree {
        writeln!(out, "tree {} {}", inst.name(p), inst.name(c)).unwrap();
    }
    for (u, v) in inst.non_tree_edges() {
        writeln!(out, "edge {} {}", inst.name(u), inst.name(v)).unwrap();
    }
    out
}

/// Reads an `.imz` file: `elem <x>`, `pair <x> <y>`, `triple <x> <y> <z>`.
pub fn parse_imz(text: &str) -> Result<GimInstance, ParseError> {
    let mut inst = GimInstance::new();
    for (line, tokens) in records(text) {
        let res = match tokens[0] {
            "elem" => {
                let args = arity(line, &tokens, 1)?;
                inst.add_element(args[0]);
                Ok(true)
            }
            "pair" => {
                let args = arity(line, &tokens, 2)?;
                inst.add_named_pair(args[0], args[1])
            }
            "triple" => {
                let args = arity(line, &tokens, 3)?;
                inst.add_named_triple(args[0], args[1], args[2])
            }
            other => return Err(ParseError::new(line, format!("unknown keyword `{other}`"))),
        };
        res.map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Ok(inst)
}

/// Declares every element first so indices survive a round trip.
pub fn write_imz(inst: &GimInstance) -> String {
    let mut out = String::new();
    for e in 0..inst.len() {
        writeln!(out, "elem {}", inst.name(e)).unwrap();
    }
    for (x, y) in inst.pairs() {
        writeln!(out, "pair {} {}", inst.name(x), inst.name(y)).unwrap();
    }
    for (x, y, z) in inst.triples() {
        writeln!(out, "triple {} {} {}", inst.name(x), inst.name(y), inst.name(z)).unwrap();
    }
    out
}

/// Space-separated names of an ordering.
pub fn write_order(order: &Ordering, name: impl Fn(usize) -> String) -> String {
    let names: Vec<String> = order.sequence().iter().map(|&v| name(v)).collect();
    names.join(" ")
}

/// Solver output: the status line, then the witness if there is one.
pub fn write_result(status: &str, witness: Option<&Ordering>, name: impl Fn(usize) -> String) -> String {
    match witness {
        Some(w) => format!("{status}\n{}\n", write_order(w, name)),
        None => format!("{status}\n"),
    }
}

/// Reads whitespace-separated names, resolving each with `lookup`. A leading
/// `FEASIBLE` status line (as written by [`write_result`]) is skipped.
/// Duplicates and missing names are left for the caller's verifier.
pub fn parse_order(text: &str, lookup: impl Fn(&str) -> Option<usize>) -> Result<Vec<usize>, ParseError> {
    let mut seq = Vec::new();
    let mut first = true;
    for (line, tokens) in records(text) {
        if first && tokens == ["FEASIBLE"] {
            first = false;
            continue;
        }
        first = false;
        for t in tokens {
            seq.push(lookup(t).ok_or_else(|| ParseError::new(line, format!("unknown name `{t}`")))?);
        }
    }
    Ok(seq)
}

/// Reads DIMACS CNF. Clauses may span lines and must end with `0`; each
/// needs exactly three literals over distinct variables.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        last_line = line;
        if trimmed.starts_with('p') {
            let t: Vec<&str> = trimmed.split_whitespace().collect();
            if header.is_some() {
                return Err(ParseError::new(line, "second problem line"));
            }
            if t.len() != 4 || t[1] != "cnf" {
                return Err(ParseError::new(line, "expected `p cnf <variables> <clauses>`"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| ParseError::new(line, format!("bad count `{s}`")));
            header = Some((num(t[2])?, num(t[3])?));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(ParseError::new(line, "clause before the `p cnf` line"));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| ParseError::new(line, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                let clause: [i32; 3] = current.as_slice().try_into().map_err(|_| {
                    ParseError::new(
                        line,
                        format!("clause {} has {} literals, expected 3", clauses.len() + 1, current.len()),
                    )
                })?;
                clauses.push(clause);
                current.clear();
            } else if lit.unsigned_abs() as usize > n {
                return Err(ParseError::new(line, format!("literal {lit} exceeds the declared {n} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| ParseError::whole("missing `p cnf` line"))?;
    if !current.is_empty() {
        return Err(ParseError::new(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(ParseError::whole(format!("header declares {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variables(), f.clauses().len());
    for c in f.clauses() {
        writeln!(out, "{} {} {} 0", c[0], c[1], c[2]).unwrap();
    }
    out
}

/// Reads an `.mcg` file: `colors <k>`, `vertex <name> <color>` (colors
/// 1-based, classes in declaration order), `edge <u> <v>`.
pub fn parse_mcg(text: &str) -> Result<MulticolorGraph, ParseError> {
    let mut k = None;
    let mut classes: Vec<Vec<String>> = Vec::new();
    let mut slot: HashMap<String, (usize, usize)> = HashMap::new();
    let mut edges = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "colors" => {
                let args = arity(line, &tokens, 1)?;
                if k.is_some() {
                    return Err(ParseError::new(line, "second `colors` line"));
                }
                let c: usize =
                    args[0].parse().map_err(|_| ParseError::new(line, format!("bad count `{}`", args[0])))?;
                k = Some(c);
                classes = vec![Vec::new(); c];
            }
            "vertex" => {
                let args = arity(line, &tokens, 2)?;
                let k = k.ok_or_else(|| ParseError::new(line, "`vertex` before `colors`"))?;
                let c: usize =
                    args[1].parse().map_err(|_| ParseError::new(line, format!("bad color `{}`", args[1])))?;
                if c == 0 || c > k {
                    return Err(ParseError::new(line, format!("color {c} outside 1..={k}")));
                }
                if slot.contains_key(args[0]) {
                    return Err(ParseError::new(line, format!("vertex `{}` declared twice", args[0])));
                }
                slot.insert(args[0].to_owned(), (c - 1, classes[c - 1].len()));
                classes[c - 1].push(args[0].to_owned());
            }
            "edge" => {
                let args = arity(line, &tokens, 2)?;
                let find = |n: &str| {
                    slot.get(n).copied().ok_or_else(|| ParseError::new(line, format!("unknown vertex `{n}`")))
                };
                edges.push((line, find(args[0])?, find(args[1])?));
            }
            other => return Err(ParseError::new(line, format!("unknown keyword `{other}`"))),
        }
    }
    if k.is_none() {
        return Err(ParseError::whole("missing `colors` line"));
    }
    let mut g = MulticolorGraph::from_classes(classes).map_err(|e| ParseError::whole(e.to_string()))?;
    for (line, u, v) in edges {
        g.add_edge(u, v).map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_mcg(g: &MulticolorGraph) -> String {
    let mut out = format!("colors {}\n", g.colors());
    for (c, class) in g.classes().iter().enumerate() {
        for name in class {
            writeln!(out, "vertex {name} {}", c + 1).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "edge {} {}", g.name(u), g.name(v)).unwrap();
    }
    out
}

/// One `role <tag> <name> [source]` line per entry.
pub fn write_map(map: &WitnessMap) -> String {
    let mut out = String::new();
    for e in map.entries() {
        match &e.source {
            Some(s) => writeln!(out, "role {} {} {s}", e.tag, e.name).unwrap(),
            None => writeln!(out, "role {} {}", e.tag, e.name).unwrap(),
        }
    }
    out
}

pub fn parse_map(text: &str) -> Result<WitnessMap, ParseError> {
    let mut map = WitnessMap::new();
    for (line, tokens) in records(text) {
        if tokens[0] != "role" || !(3..=4).contains(&tokens.len()) {
            return Err(ParseError::new(line, "expected `role <tag> <name> [source]`"));
        }
        if map.role(tokens[2]).is_some() {
            return Err(ParseError::new(line, format!("`{}` tagged twice", tokens[2])));
        }
        map.add(tokens[1], tokens[2], tokens.get(3).copied());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_fig4, gen_random_cnf, gen_random_gim, gen_random_mcp};

    #[test]
    fn lti_round_trip() {
        let f = gen_fig4(3).unwrap();
        let text = write_lti(&f);
        assert!(text.starts_with("root r\ntree r a\n"));
        assert_eq!(parse_lti(&text).unwrap(), f);
    }

    #[test]
    fn lti_errors_carry_lines() {
        let e = parse_lti("root r\ntree r a\n# c\nbogus x\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_lti("root r\ntree r a\ntree a r\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_lti("tree r a\n").unwrap_err().message.contains("root"));
        let e = parse_lti("root r\ntree r a\nedge a b\n").unwrap_err();
        assert!(e.to_string().contains("`b` has no tree parent"), "{e}");
        assert!(parse_lti("root r\nedge r r\n").is_err());
    }

    #[test]
    fn imz_round_trip() {
        let g = gen_random_gim(2, 7, 5, 3).unwrap();
        assert_eq!(parse_imz(&write_imz(&g)).unwrap(), g);
        assert_eq!(parse_imz("triple a b a\n").unwrap_err().line, 1);
        assert!(parse_imz("pair a b c\n").is_err());
    }

    #[test]
    fn orders_and_results() {
        let g = parse_imz("triple c a b\n").unwrap();
        let o = Ordering::new(vec![1, 2, 0]).unwrap();
        let text = write_result("FEASIBLE", Some(&o), |e| g.name(e).to_owned());
        assert_eq!(text, "FEASIBLE\na b c\n");
        assert_eq!(parse_order(&text, |n| g.element(n)).unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_order("a\nb c", |n| g.element(n)).unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_order("a q", |n| g.element(n)).unwrap_err().line, 1);
        assert_eq!(write_result("INFEASIBLE", None, |e| e.to_string()), "INFEASIBLE\n");
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let f = gen_random_cnf(5, 4, 9).unwrap();
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
        let split = parse_dimacs("c hi\np cnf 3 1\n1 -2\n3 0\n").unwrap();
        assert_eq!(split.clauses(), &[[1, -2, 3]]);
        assert!(parse_dimacs("p cnf 3 1\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 1\n1 2 4 0\n").is_err());
        assert!(parse_dimacs("1 2 3 0\n").is_err());
    }

    #[test]
    fn mcg_round_trip_and_errors() {
        let g = gen_random_mcp(3, 2, 0.5, 1).unwrap();
        assert_eq!(parse_mcg(&write_mcg(&g)).unwrap(), g);
        assert!(parse_mcg("colors 2\nvertex a 1\nvertex b 1\nedge a b\n").is_err());
        assert!(parse_mcg("colors 2\nvertex a 1\nvertex b 2\nvertex c 2\n").is_err());
        assert!(parse_mcg("colors 2\nvertex a 3\n").is_err());
    }

    #[test]
    fn map_round_trip() {
        let mut m = WitnessMap::new();
        m.add("vertex", "r", Some("r"));
        m.add("separator", "s", None);
        assert_eq!(parse_map(&write_map(&m)).unwrap(), m);
        assert!(parse_map("role a\n").is_err());
    }
}
