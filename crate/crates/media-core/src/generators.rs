//! Constructors for the standard example media: permutations, topological
//! orderings of a DAG, acyclic orientations of a graph, downward-closed and
//! independent-set families, and heap-encoded binary trees.
//!
//! Every generator emits canonical state labels (permutation strings, set
//! literals) and token labels (`t_xy`, `i_x`, `d_x`) so its output can be
//! audited by hand, and every output passes [`crate::verify::verify`].

use crate::family::{from_well_graded_family, FamilyError, SetFamily};
use crate::medium::{Medium, TokenTable};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("item count {0} out of range (need 1 ..= {1})")]
    CountOutOfRange(usize, usize),
    #[error("input graph has a cycle through vertex {0}")]
    Cyclic(usize),
    #[error("edge ({0}, {1}) is invalid (self loop, duplicate, or out of range)")]
    BadEdge(usize, usize),
    #[error("family is not downward closed: member {0} without element {1} is missing")]
    NotDownwardClosed(u64, usize),
    #[error("state count would exceed the generator bound of {0}")]
    TooManyStates(usize),
    #[error("leaf bound must be at least 1")]
    ZeroLeafBound,
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Medium(#[from] crate::medium::MediumError),
}

pub(crate) fn item_name(i: usize) -> String {
    // a, b, ..., z, v26, v27, ...
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

/// Token table with one ordered-pair token `t_xy` per pair in `pairs`
/// (each listed once as (x, y) with x < y). Token 2p is `t_xy`, its reverse
/// 2p + 1 is `t_yx`.
fn swap_token_table(pairs: &[(usize, usize)], names: &dyn Fn(usize) -> String) -> TokenTable {
    let reverse = (0..2 * pairs.len()).map(|t| t ^ 1).collect();
    let labels = pairs
        .iter()
        .flat_map(|&(x, y)| {
            [
                format!("t_{}{}", names(x), names(y)),
                format!("t_{}{}", names(y), names(x)),
            ]
        })
        .collect();
    TokenTable::with_labels(reverse, labels).expect("pair table is involutive")
}

/// Applies the swap token `t_xy` to a linear order: the adjacent pair `yx`
/// becomes `xy`; identity when `y` is not immediately before `x`.
fn apply_swap(order: &[usize], x: usize, y: usize) -> Option<Vec<usize>> {
    for i in 0..order.len().saturating_sub(1) {
        if order[i] == y && order[i + 1] == x {
            let mut next = order.to_vec();
            next.swap(i, i + 1);
            return Some(next);
        }
    }
    None
}

fn orders_to_medium(
    orders: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
) -> Result<Medium, GeneratorError> {
    let tokens = swap_token_table(&pairs, &item_name);
    let index: std::collections::HashMap<&[usize], usize> = orders
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_slice(), i))
        .collect();
    let mut adjacency = Vec::with_capacity(orders.len());
    for order in &orders {
        let mut list = Vec::new();
        for (p, &(x, y)) in pairs.iter().enumerate() {
            if let Some(next) = apply_swap(order, x, y) {
                list.push((2 * p, index[next.as_slice()]));
            }
            if let Some(next) = apply_swap(order, y, x) {
                list.push((2 * p + 1, index[next.as_slice()]));
            }
        }
        adjacency.push(list);
    }
    let labels = orders
        .iter()
        .map(|o| o.iter().map(|&i| item_name(i)).collect::<String>())
        .collect();
    Ok(Medium::new(tokens, adjacency, Some(labels))?)
}

/// The medium of all permutations of `k` items. States are the `k!`
/// permutations; token `t_xy` replaces an adjacent pair `yx` by `xy`.
pub fn permutation_medium(k: usize) -> Result<Medium, GeneratorError> {
    if k == 0 || k > 8 {
        return Err(GeneratorError::CountOutOfRange(k, 8));
    }
    let mut orders = vec![(0..k).collect::<Vec<_>>()];
    {
        // lexicographic enumeration
        let mut cur = orders[0].clone();
        while next_permutation(&mut cur) {
            orders.push(cur.clone());
        }
    }
    let pairs = (0..k)
        .flat_map(|x| ((x + 1)..k).map(move |y| (x, y)))
        .collect();
    orders_to_medium(orders, pairs)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The medium of topological orderings of a DAG on `vertices` vertices.
/// Tokens swap adjacent unrelated vertices; an edgeless DAG reduces to the
/// permutation medium.
pub fn topological_ordering_medium(
    vertices: usize,
    arcs: &[(usize, usize)],
) -> Result<Medium, GeneratorError> {
    if vertices == 0 || vertices > 8 {
        return Err(GeneratorError::CountOutOfRange(vertices, 8));
    }
    let mut reach = vec![vec![false; vertices]; vertices];
    for &(u, v) in arcs {
        if u >= vertices || v >= vertices || u == v {
            return Err(GeneratorError::BadEdge(u, v));
        }
        reach[u][v] = true;
    }
    // transitive closure
    for k in 0..vertices {
        for i in 0..vertices {
            if reach[i][k] {
                for j in 0..vertices {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    if let Some(v) = (0..vertices).find(|&v| reach[v][v]) {
        return Err(GeneratorError::Cyclic(v));
    }

    // enumerate topological orders lexicographically
    let mut orders = Vec::new();
    let mut prefix = Vec::new();
    let mut used = vec![false; vertices];
    enumerate_topological(&reach, &mut prefix, &mut used, &mut orders);

    let pairs = (0..vertices)
        .flat_map(|x| ((x + 1)..vertices).map(move |y| (x, y)))
        .filter(|&(x, y)| !reach[x][y] && !reach[y][x])
        .collect();
    orders_to_medium(orders, pairs)
}

fn enumerate_topological(
    reach: &[Vec<bool>],
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let n = used.len();
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        // every predecessor of v must already be placed
        if (0..n).any(|u| !used[u] && u != v && reach[u][v]) {
            continue;
        }
        used[v] = true;
        prefix.push(v);
        enumerate_topological(reach, prefix, used, out);
        prefix.pop();
        used[v] = false;
    }
}

/// The medium of acyclic orientations of a simple undirected graph. Token
/// `t_xy` reorients edge (x, y) to point from x to y when the result stays
/// acyclic. A complete graph reduces to the permutation medium.
pub fn acyclic_orientation_medium(
    vertices: usize,
    edges: &[(usize, usize)],
) -> Result<Medium, GeneratorError> {
    if vertices == 0 || vertices > 8 {
        return Err(GeneratorError::CountOutOfRange(vertices, 8));
    }
    let mut norm = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= vertices || v >= vertices || u == v {
            return Err(GeneratorError::BadEdge(u, v));
        }
        let e = (u.min(v), u.max(v));
        if norm.contains(&e) {
            return Err(GeneratorError::BadEdge(u, v));
        }
        norm.push(e);
    }
    norm.sort_unstable();
    let e = norm.len();
    if e > 20 {
        return Err(GeneratorError::TooManyStates(1 << 20));
    }

    // orientation bit i: true = norm[i].0 -> norm[i].1
    let is_acyclic = |bits: usize| -> bool {
        let mut indegree = vec![0usize; vertices];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertices];
        for (i, &(u, v)) in norm.iter().enumerate() {
            let (from, to) = if bits >> i & 1 == 1 { (u, v) } else { (v, u) };
            out[from].push(to);
            indegree[to] += 1;
        }
        let mut queue: Vec<usize> = (0..vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == vertices
    };

    let states: Vec<usize> = (0..1usize << e).filter(|&bits| is_acyclic(bits)).collect();
    let index: std::collections::HashMap<usize, usize> =
        states.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    // token 2i: orient edge i as u -> v; token 2i + 1: as v -> u
    let tokens = swap_token_table(&norm, &item_name);
    let mut adjacency = Vec::with_capacity(states.len());
    for &bits in &states {
        let mut list = Vec::new();
        for (i, _) in norm.iter().enumerate() {
            let flipped = bits ^ (1 << i);
            if is_acyclic(flipped) {
                let target = index[&flipped];
                if bits >> i & 1 == 0 {
                    // currently v -> u, token t_uv flips it
                    list.push((2 * i, target));
                } else {
                    list.push((2 * i + 1, target));
                }
            }
        }
        adjacency.push(list);
    }
    let labels = states
        .iter()
        .map(|&bits| {
            let arcs: Vec<String> = norm
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| {
                    let (from, to) = if bits >> i & 1 == 1 { (u, v) } else { (v, u) };
                    format!("{}>{}", item_name(from), item_name(to))
                })
                .collect();
            arcs.join(",")
        })
        .collect();
    Ok(Medium::new(tokens, adjacency, Some(labels))?)
}

/// Medium of a downward-closed family (every subset of a member is a member).
pub fn downward_closed_medium(family: &SetFamily) -> Result<Medium, GeneratorError> {
    for &member in family.members() {
        for x in 0..family.universe() {
            let bit = 1u64 << x;
            if member & bit != 0 && !family.contains(member & !bit) {
                return Err(GeneratorError::NotDownwardClosed(member, x));
            }
        }
    }
    Ok(from_well_graded_family(family)?)
}

/// Medium of the independent sets of a simple undirected graph.
pub fn independent_set_medium(
    vertices: usize,
    edges: &[(usize, usize)],
) -> Result<Medium, GeneratorError> {
    if vertices > 20 {
        return Err(GeneratorError::CountOutOfRange(vertices, 20));
    }
    for &(u, v) in edges {
        if u >= vertices || v >= vertices || u == v {
            return Err(GeneratorError::BadEdge(u, v));
        }
    }
    let members: Vec<u64> = (0..1u64 << vertices)
        .filter(|&set| {
            edges
                .iter()
                .all(|&(u, v)| set >> u & 1 == 0 || set >> v & 1 == 0)
        })
        .collect();
    let labels = (0..vertices).map(item_name).collect();
    let family = SetFamily::new(vertices, members)?.with_element_labels(labels);
    Ok(from_well_graded_family(&family)?)
}

/// Binary trees encoded as parent-closed sets of heap numbers: the root is 0
/// and the children of node i are 2i + 1 and 2i + 2. Unary nodes are allowed
/// and the empty tree is excluded; the root is implicit in the encoding, so
/// the family members are the non-root node sets.
struct TreeEnumeration {
    max_height: usize,
    max_leaves: Option<usize>,
}

impl TreeEnumeration {
    fn node_bound(&self) -> usize {
        (1usize << (self.max_height + 1)) - 1
    }

    fn depth(node: usize) -> usize {
        (usize::BITS - 1 - (node + 1).leading_zeros()) as usize
    }

    /// All trees within the bounds, as masks over non-root heap numbers
    /// (bit x = heap number x + 1).
    fn enumerate(&self) -> Result<Vec<u64>, GeneratorError> {
        let bound = self.node_bound();
        if bound > 64 {
            return Err(GeneratorError::TooManyStates(64));
        }
        let mut trees = Vec::new();
        // grow trees by adding nodes in heap order; a node may be added once
        // its parent is present
        let mut stack = vec![(0u64, 1usize)];
        while let Some((mask, next)) = stack.pop() {
            if next > bound {
                if self.admits(mask) {
                    trees.push(mask);
                }
                continue;
            }
            let parent = (next - 1) / 2;
            let parent_present = parent == 0 || mask >> (parent - 1) & 1 == 1;
            stack.push((mask, next + 1));
            if parent_present && Self::depth(next) <= self.max_height {
                stack.push((mask | 1 << (next - 1), next + 1));
            }
            if trees.len() > 1 << 20 {
                return Err(GeneratorError::TooManyStates(1 << 20));
            }
        }
        trees.sort_unstable();
        Ok(trees)
    }

    fn admits(&self, mask: u64) -> bool {
        match self.max_leaves {
            None => true,
            Some(k) => Self::leaf_count(mask) <= k,
        }
    }

    fn leaf_count(mask: u64) -> usize {
        let present =
            |node: usize| node == 0 || (node <= 64 && mask >> (node - 1) & 1 == 1);
        (0..=64)
            .filter(|&v| present(v) && !present(2 * v + 1) && !present(2 * v + 2))
            .count()
    }
}

fn tree_family(trees: Vec<u64>, node_bound: usize) -> Result<SetFamily, GeneratorError> {
    // drop elements that occur in no tree so the universe equals the union
    let mut union = 0u64;
    for &t in &trees {
        union |= t;
    }
    let live: Vec<usize> = (0..node_bound.saturating_sub(1))
        .filter(|&x| union >> x & 1 == 1)
        .collect();
    let compress = |mask: u64| -> u64 {
        let mut out = 0u64;
        for (i, &x) in live.iter().enumerate() {
            if mask >> x & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    };
    let members = trees.iter().map(|&t| compress(t)).collect();
    let labels = live.iter().map(|&x| (x + 1).to_string()).collect();
    Ok(SetFamily::new(live.len(), members)?.with_element_labels(labels))
}

/// Medium of binary trees with height at most `max_height` (root at depth 0).
pub fn binary_tree_height_medium(max_height: usize) -> Result<Medium, GeneratorError> {
    if max_height > 3 {
        return Err(GeneratorError::CountOutOfRange(max_height, 3));
    }
    let enumeration = TreeEnumeration {
        max_height,
        max_leaves: None,
    };
    let trees = enumeration.enumerate()?;
    let family = tree_family(trees, enumeration.node_bound())?;
    Ok(from_well_graded_family(&family)?)
}

/// Medium of binary trees with at most `max_leaves` leaves. With unary nodes
/// allowed a leaf bound alone admits arbitrarily deep chains, so the family
/// is additionally truncated at `max_height`.
pub fn binary_tree_medium(max_leaves: usize, max_height: usize) -> Result<Medium, GeneratorError> {
    if max_leaves == 0 {
        return Err(GeneratorError::ZeroLeafBound);
    }
    if max_height > 3 {
        return Err(GeneratorError::CountOutOfRange(max_height, 3));
    }
    let enumeration = TreeEnumeration {
        max_height,
        max_leaves: Some(max_leaves),
    };
    let trees = enumeration.enumerate()?;
    let family = tree_family(trees, enumeration.node_bound())?;
    Ok(from_well_graded_family(&family)?)
}
