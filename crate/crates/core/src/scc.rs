//! Strongly connected components (iterative Tarjan) of a factor graph.

use crate::graph::FactorGraph;

/// Partition of the states into maximal strongly connected sets.
///
/// Component ids are contiguous and ordered by smallest contained state
/// index; `topo_order` lists the ids with every edge of the condensation
/// pointing forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    pub comp_of: Vec<u32>,
    pub components: Vec<Vec<u32>>,
    pub topo_order: Vec<u32>,
}

impl SccPartition {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }
}

/// Standard SCC partition of the graph's states.
pub fn scc_decompose(g: &FactorGraph) -> SccPartition {
    let (row_start, dst, _) = g.out_csr();
    partition_from_csr(g.n_states(), &row_start, &dst)
}

/// SCC partition of an arbitrary CSR adjacency.
pub(crate) fn partition_from_csr(n: usize, row_start: &[usize], col: &[u32]) -> SccPartition {
    let raw = tarjan(n, row_start, col); // emitted in reverse topological order
    let mut components: Vec<Vec<u32>> = raw
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    // id by smallest member; remember each component's emission rank
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by_key(|&i| components[i][0]);
    let mut rank_of_new_id = vec![0usize; components.len()];
    let mut comp_of = vec![0u32; n];
    let mut relabeled = Vec::with_capacity(components.len());
    for (new_id, &old) in order.iter().enumerate() {
        rank_of_new_id[new_id] = old;
        for &v in &components[old] {
            comp_of[v as usize] = new_id as u32;
        }
    }
    for &old in &order {
        relabeled.push(std::mem::take(&mut components[old]));
    }
    // reverse emission rank = topological order of the condensation
    let mut topo: Vec<u32> = (0..relabeled.len() as u32).collect();
    topo.sort_by_key(|&id| std::cmp::Reverse(rank_of_new_id[id as usize]));
    SccPartition {
        comp_of,
        components: relabeled,
        topo_order: topo,
    }
}

/// Iterative Tarjan; components come out in reverse topological order.
fn tarjan(n: usize, row_start: &[usize], col: &[u32]) -> Vec<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut idx = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut comps: Vec<Vec<u32>> = Vec::new();
    // frames: (vertex, next edge offset)
    let mut frames: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if idx[root as usize] != UNSET {
            continue;
        }
        frames.push((root, row_start[root as usize]));
        idx[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut ptr)) = frames.last_mut() {
            let vu = v as usize;
            if *ptr < row_start[vu + 1] {
                let w = col[*ptr];
                *ptr += 1;
                let wu = w as usize;
                if idx[wu] == UNSET {
                    idx[wu] = next_index;
                    low[wu] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wu] = true;
                    frames.push((w, row_start[wu]));
                } else if on_stack[wu] {
                    low[vu] = low[vu].min(idx[wu]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    let pu = parent as usize;
                    low[pu] = low[pu].min(low[vu]);
                }
                if low[vu] == idx[vu] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}
