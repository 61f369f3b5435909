//! 3-SAT to rooted L-tree recognition with spanning trees of height 5.

use crate::error::ReductionError;
use crate::graph::{Graph, LTreeInstance, RootedSpanningTree};
use crate::ordering::Ordering;

use super::WitnessMap;

/// A 3-CNF formula over variables `1..=variables`, literals in DIMACS sign
/// convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    variables: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    /// Every clause needs three literals over three distinct variables.
    pub fn new(variables: usize, clauses: Vec<[i32; 3]>) -> Result<Self, ReductionError> {
        for (i, c) in clauses.iter().enumerate() {
            let bad = |reason: String| ReductionError::InvalidClause { clause: i + 1, reason };
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > variables {
                    return Err(bad(format!("literal {lit} out of range 1..={variables}")));
                }
            }
            let v = c.map(i32::unsigned_abs);
            if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
                return Err(bad("variables must be distinct".into()));
            }
        }
        Ok(Self { variables, clauses })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// First clause falsified by `assignment` (index 0 is variable 1).
    pub fn falsified_clause(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|&l| literal_value(l, assignment)))
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variables && self.falsified_clause(assignment).is_none()
    }
}

fn literal_value(lit: i32, assignment: &[bool]) -> bool {
    assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)
}

fn literal_vertex(var: usize, positive: bool) -> String {
    format!("lit.{var}.{}", positive as u8)
}

fn occurrence(clause: usize, var: usize) -> String {
    format!("x.{var}^{clause}")
}

fn occurrence_tech(letter: char, clause: usize, var: usize) -> String {
    format!("{letter}.{var}^{clause}")
}

fn clause_tech(letter: char, clause: usize, p: usize) -> String {
    format!("{letter}.{clause}.{p}")
}

struct Builder {
    graph: Graph,
    parent: Vec<Option<usize>>,
    map: WitnessMap,
}

impl Builder {
    fn vertex(&mut self, name: &str, tag: &str, source: Option<&str>, parent: Option<usize>) -> usize {
        let v = self.graph.add_vertex(name);
        debug_assert_eq!(v, self.parent.len());
        self.parent.push(parent);
        if let Some(p) = parent {
            self.graph.add_edge(p, v).expect("fresh vertex");
        }
        self.map.add(tag, name, source);
        v
    }

    fn chord(&mut self, u: &str, v: &str) {
        let (u, v) = (self.graph.vertex(u).unwrap(), self.graph.vertex(v).unwrap());
        self.graph.add_edge(u, v).expect("distinct vertices");
    }
}

/// Builds the graph and spanning tree: a root over all literal vertices and
/// the clause hub, one branch per clause with three two-vertex paths, and a
/// four-vertex path below each literal occurrence. The result has
/// `2 + 2n + 19m` vertices and the tree has height 5.
pub fn sat_to_ltree(formula: &CnfFormula) -> (LTreeInstance, WitnessMap) {
    let mut b = Builder { graph: Graph::new(), parent: Vec::new(), map: WitnessMap::new() };
    let root = b.vertex("r", "root", None, None);
    let mut literal = Vec::with_capacity(formula.variables);
    for j in 1..=formula.variables {
        let neg = b.vertex(&literal_vertex(j, false), "literal", Some(&format!("-{j}")), Some(root));
        let pos = b.vertex(&literal_vertex(j, true), "literal", Some(&format!("{j}")), Some(root));
        literal.push([neg, pos]);
    }
    let hub = b.vertex("C", "hub", None, Some(root));
    for (i0, clause) in formula.clauses.iter().enumerate() {
        let i = i0 + 1;
        let c = b.vertex(&format!("c.{i}"), "clause", Some(&i.to_string()), Some(hub));
        for p in 0..3 {
            let a = b.vertex(&clause_tech('a', i, p), "tech-a", None, Some(c));
            b.vertex(&clause_tech('b', i, p), "tech-b", None, Some(a));
        }
        for &lit in clause {
            let j = lit.unsigned_abs() as usize;
            let parent = literal[j - 1][(lit > 0) as usize];
            let src = format!("{i}:{lit}");
            let mut v = b.vertex(&occurrence(i, j), "occurrence", Some(&src), Some(parent));
            for letter in ['d', 'e', 'f'] {
                v = b.vertex(&occurrence_tech(letter, i, j), &format!("tech-{letter}"), None, Some(v));
            }
        }
    }
    for j in 1..=formula.variables {
        for i in 1..=formula.clauses.len() {
            for positive in [false, true] {
                b.chord(&literal_vertex(j, positive), &format!("c.{i}"));
            }
        }
    }
    // Conflicting occurrences of the same variable.
    for (i0, ci) in formula.clauses.iter().enumerate() {
        for (k0, ck) in formula.clauses.iter().enumerate() {
            for &l in ci.iter().filter(|&&l| l > 0) {
                if ck.contains(&-l) {
                    let j = l as usize;
                    b.chord(&occurrence(i0 + 1, j), &occurrence(k0 + 1, j));
                }
            }
        }
    }
    for (i0, clause) in formula.clauses.iter().enumerate() {
        let i = i0 + 1;
        let var = |p: usize| clause[p % 3].unsigned_abs() as usize;
        for p in 0..3 {
            let e = occurrence_tech('e', i, var(p));
            b.chord("C", &e);
            b.chord(&format!("c.{i}"), &e);
            b.chord(&clause_tech('a', i, p), &occurrence_tech('f', i, var(p)));
            b.chord(&clause_tech('b', i, p), &e);
            b.chord(&clause_tech('b', i, p), &occurrence_tech('d', i, var(p + 1)));
        }
    }
    let tree = RootedSpanningTree::new(root, b.parent);
    let inst = LTreeInstance::new(b.graph, tree).expect("construction yields a spanning tree");
    (inst, b.map)
}

/// An accepted ordering built from a satisfying assignment: false literals
/// and their occurrences first, then the true literals, the hub and clause
/// vertices, then each clause gadget.
pub fn order_from_assignment(
    formula: &CnfFormula,
    inst: &LTreeInstance,
    assignment: &[bool],
) -> Result<Ordering, ReductionError> {
    if assignment.len() != formula.variables {
        return Err(ReductionError::AssignmentLength { expected: formula.variables, found: assignment.len() });
    }
    if let Some(i) = formula.falsified_clause(assignment) {
        return Err(ReductionError::UnsatisfiedClause(i + 1));
    }
    let mut names: Vec<String> = vec!["r".into()];
    let false_positive = |j: usize| !assignment[j - 1];
    for j in 1..=formula.variables {
        names.push(literal_vertex(j, false_positive(j)));
    }
    for j in 1..=formula.variables {
        let false_lit = if false_positive(j) { j as i32 } else { -(j as i32) };
        for (i0, clause) in formula.clauses.iter().enumerate() {
            if clause.contains(&false_lit) {
                names.push(occurrence(i0 + 1, j));
            }
        }
    }
    for j in 1..=formula.variables {
        names.push(literal_vertex(j, !false_positive(j)));
    }
    names.push("C".into());
    for i in 1..=formula.clauses.len() {
        names.push(format!("c.{i}"));
    }
    for (i0, clause) in formula.clauses.iter().enumerate() {
        let i = i0 + 1;
        let falsep: Vec<bool> = clause.iter().map(|&l| !literal_value(l, assignment)).collect();
        let var = |p: usize| clause[p].unsigned_abs() as usize;
        // Walk false positions downwards (mod 3) from one whose successor
        // is not false; each opens the branch of its occurrence.
        let start = (0..3).find(|&q| falsep[q] && !falsep[(q + 1) % 3]);
        let mut visited = [false; 3];
        if let Some(mut q) = start {
            while falsep[q] && !visited[q] {
                visited[q] = true;
                names.push(clause_tech('a', i, q));
                names.push(clause_tech('b', i, q));
                for letter in ['d', 'e', 'f'] {
                    names.push(occurrence_tech(letter, i, var(q)));
                }
                q = (q + 2) % 3;
            }
        }
        for p in (0..3).filter(|&p| !visited[p]) {
            names.push(clause_tech('a', i, p));
            names.push(clause_tech('b', i, p));
        }
        for p in (0..3).filter(|&p| !falsep[p]) {
            names.push(occurrence(i, var(p)));
            for letter in ['d', 'e', 'f'] {
                names.push(occurrence_tech(letter, i, var(p)));
            }
        }
    }
    let seq = names
        .iter()
        .map(|n| inst.graph().vertex(n).ok_or_else(|| ReductionError::Internal(format!("missing vertex `{n}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let order = Ordering::with_len(seq, inst.vertex_count()).map_err(|e| ReductionError::Internal(e.to_string()))?;
    if let Err(v) = inst.check_order(&order) {
        return Err(ReductionError::Internal(format!("constructed order rejected: {v:?}")));
    }
    Ok(order)
}

/// Reads the assignment off an accepted ordering: a variable is false iff
/// its positive literal vertex comes before its negative one. A variable
/// occurring with one sign only has no conflict edges pinning its
/// occurrences, so it simply gets the value making that literal true.
pub fn assignment_from_order(
    formula: &CnfFormula,
    inst: &LTreeInstance,
    order: &Ordering,
) -> Result<Vec<bool>, ReductionError> {
    if let Err(v) = inst.check_order(order) {
        return Err(ReductionError::InvalidWitness(format!("{v:?}")));
    }
    let vertex =
        |n: &str| inst.graph().vertex(n).ok_or_else(|| ReductionError::Internal(format!("missing vertex `{n}`")));
    let mut assignment = Vec::with_capacity(formula.variables);
    let occurs = |lit: i32| formula.clauses.iter().any(|c| c.contains(&lit));
    for j in 1..=formula.variables {
        let (pos, neg) = (vertex(&literal_vertex(j, true))?, vertex(&literal_vertex(j, false))?);
        let (has_pos, has_neg) = (occurs(j as i32), occurs(-(j as i32)));
        assignment.push(if has_pos != has_neg { has_pos } else { !order.precedes(pos, neg) });
    }
    match formula.falsified_clause(&assignment) {
        Some(i) => Err(ReductionError::UnsatisfiedClause(i + 1)),
        None => Ok(assignment),
    }
}
