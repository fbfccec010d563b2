//! A small 2-SAT solver over the implication graph, using Tarjan's
//! strongly connected components.

/// A literal: variable index plus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, positive: false }
    }

    fn index(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    fn negated(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

/// Conjunction of two-literal clauses.
#[derive(Debug, Clone, Default)]
pub struct TwoSat {
    vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSat {
    pub fn new(vars: usize) -> TwoSat {
        TwoSat {
            vars,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        debug_assert!(a.var < self.vars && b.var < self.vars);
        self.clauses.push((a, b));
    }

    /// A satisfying assignment, or `None` if the clauses are contradictory.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let nodes = 2 * self.vars;
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.clauses {
            adj[a.negated().index()].push(b.index());
            adj[b.negated().index()].push(a.index());
        }

        // iterative Tarjan
        const UNSET: usize = usize::MAX;
        let mut index = vec![UNSET; nodes];
        let mut lowlink = vec![0usize; nodes];
        let mut comp = vec![UNSET; nodes];
        let mut on_stack = vec![false; nodes];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut next_comp = 0usize;
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..nodes {
            if index[root] != UNSET {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            lowlink[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut cursor)) = call.last_mut() {
                if let Some(&w) = adj[v].get(*cursor) {
                    *cursor += 1;
                    if index[w] == UNSET {
                        index[w] = next_index;
                        lowlink[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        lowlink[v] = lowlink[v].min(index[w]);
                    }
                } else {
                    if lowlink[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        lowlink[parent] = lowlink[parent].min(lowlink[v]);
                    }
                }
            }
        }

        let mut assignment = vec![false; self.vars];
        for v in 0..self.vars {
            let p = comp[Lit::pos(v).index()];
            let n = comp[Lit::neg(v).index()];
            if p == n {
                return None;
            }
            // Tarjan numbers components in reverse topological order, so the
            // later component is the one reachable from the other
            assignment[v] = p < n;
        }
        Some(assignment)
    }
}
