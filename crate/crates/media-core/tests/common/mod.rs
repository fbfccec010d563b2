//! Shared corpus of generated media for the acceptance and property tests.

use media_core::{
    acyclic_orientation_medium, binary_tree_height_medium, binary_tree_medium,
    downward_closed_medium, from_well_graded_family, independent_set_medium, permutation_medium,
    topological_ordering_medium, Medium, SetFamily,
};

pub fn powerset_medium(k: usize) -> Medium {
    let f = SetFamily::new(k, (0..1u64 << k).collect()).unwrap();
    from_well_graded_family(&f).unwrap()
}

/// All 1- and 2-element subsets of a 3-element set: six states, six tokens,
/// and no closed orientation.
pub fn six_state_medium() -> Medium {
    let f = SetFamily::new(3, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110]).unwrap();
    from_well_graded_family(&f).unwrap()
}

/// Every simple graph on 4 vertices, as edge lists.
pub fn four_vertex_graphs() -> Vec<Vec<(usize, usize)>> {
    let all_edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    (0..1u32 << 6)
        .map(|bits| {
            all_edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// Every DAG on 4 vertices, as arc lists (543 of them).
pub fn four_vertex_dags() -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    let mut dags = Vec::new();
    'outer: for bits in 0..1u32 << pairs.len() {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| bits & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        // Kahn check for acyclicity
        let mut indeg = [0usize; 4];
        for &(_, b) in &arcs {
            indeg[b] += 1;
        }
        let mut removed = [false; 4];
        for _ in 0..4 {
            match (0..4).find(|&v| !removed[v] && indeg[v] == 0) {
                Some(v) => {
                    removed[v] = true;
                    for &(a, b) in &arcs {
                        if a == v {
                            indeg[b] -= 1;
                        }
                    }
                }
                None => continue 'outer,
            }
        }
        dags.push(arcs);
    }
    dags
}

/// The full corpus of generated media used by the acceptance criteria.
pub fn corpus() -> Vec<(String, Medium)> {
    let mut media = Vec::new();
    for k in 1..=5 {
        media.push((format!("perm {k}"), permutation_medium(k).unwrap()));
    }
    for (i, arcs) in four_vertex_dags().into_iter().enumerate() {
        media.push((
            format!("toporder dag#{i}"),
            topological_ordering_medium(4, &arcs).unwrap(),
        ));
    }
    for (i, edges) in four_vertex_graphs().into_iter().enumerate() {
        media.push((
            format!("acyclic graph#{i}"),
            acyclic_orientation_medium(4, &edges).unwrap(),
        ));
        media.push((
            format!("indep graph#{i}"),
            independent_set_medium(4, &edges).unwrap(),
        ));
    }
    for k in 0..=6 {
        media.push((format!("powerset {k}"), powerset_medium(k)));
    }
    media.push(("six-state subsets".into(), six_state_medium()));
    let small = SetFamily::new(4, (0..16).filter(|m: &u64| m.count_ones() <= 2).collect()).unwrap();
    media.push((
        "size <= 2 of 4".into(),
        downward_closed_medium(&small).unwrap(),
    ));
    let chain = SetFamily::new(3, vec![0b000, 0b001, 0b011, 0b111]).unwrap();
    media.push((
        "chain of 3".into(),
        from_well_graded_family(&chain).unwrap(),
    ));
    for h in 0..=2 {
        media.push((
            format!("btree height {h}"),
            binary_tree_height_medium(h).unwrap(),
        ));
    }
    media.push(("btree 2 leaves".into(), binary_tree_medium(2, 2).unwrap()));
    media.push(("btree 3 leaves".into(), binary_tree_medium(3, 2).unwrap()));
    media
}
