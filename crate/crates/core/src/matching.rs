//! Maximum bipartite matching by augmenting paths.

/// Left vertex `u` may be matched along any entry of `adj[u]`; an entry is
/// (right vertex, edge label). Returns, per left vertex, the position in
/// `adj[u]` of the chosen edge. Vertices and edges are tried in list order,
/// so the result is deterministic.
pub fn max_matching(n_right: usize, adj: &[Vec<(usize, usize)>]) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut left_edge: Vec<Option<usize>> = vec![None; n_left];
    let mut right_owner: Vec<Option<usize>> = vec![None; n_right];

    // Greedy pass.
    for u in 0..n_left {
        if let Some(pos) = adj[u].iter().position(|&(v, _)| right_owner[v].is_none()) {
            left_edge[u] = Some(pos);
            right_owner[adj[u][pos].0] = Some(u);
        }
    }

    let mut visited = vec![usize::MAX; n_right];
    for root in 0..n_left {
        if left_edge[root].is_some() {
            continue;
        }
        // Iterative DFS over alternating paths; stack holds (left vertex, next edge).
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut via: Vec<(usize, usize)> = Vec::new();
        let mut found = false;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next >= adj[u].len() {
                stack.pop();
                via.pop();
                continue;
            }
            let pos = *next;
            *next += 1;
            let v = adj[u][pos].0;
            if visited[v] == root {
                continue;
            }
            visited[v] = root;
            via.push((u, pos));
            match right_owner[v] {
                None => {
                    found = true;
                    break;
                }
                Some(w) => stack.push((w, 0)),
            }
        }
        if found {
            for &(u, pos) in via.iter().rev() {
                let v = adj[u][pos].0;
                right_owner[v] = Some(u);
                left_edge[u] = Some(pos);
            }
        }
    }
    left_edge
}
