use super::{Edge, Multigraph, OrientedEdge, Vertex, Walk};
use crate::error::{Error, Result};
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// A rooted spanning tree, stored by parent edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: Vertex,
    pub parent: Vec<Option<Edge>>,
    pub depth: Vec<usize>,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    /// Rebuilds a tree from an edge set, rejecting anything that is not a
    /// spanning tree of `g`.
    pub fn from_edges(g: &Multigraph, root: Vertex, edges: &[Edge]) -> Result<Self> {
        let n = g.vertex_count();
        let mut in_tree = vec![false; g.edge_count()];
        for &e in edges {
            if e >= g.edge_count() || g.is_loop(e) || in_tree[e] {
                return Err(Error::InvalidTree);
            }
            in_tree[e] = true;
        }
        if n == 0 || edges.len() != n - 1 || root >= n {
            return Err(Error::InvalidTree);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in g.incident(u) {
                let w = g.other_end(e, u);
                if in_tree[e] && depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        if depth.iter().any(|&d| d == usize::MAX) {
            return Err(Error::InvalidTree);
        }
        Ok(SpanningTree { root, parent, depth, in_tree })
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.in_tree[e]
    }

    pub fn edges(&self) -> Vec<Edge> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    /// Non-tree edges in id order, loops included.
    pub fn chords(&self) -> Vec<Edge> {
        (0..self.in_tree.len()).filter(|&e| !self.in_tree[e]).collect()
    }

    /// The tree path from the root to `v`.
    pub fn path_from_root(&self, g: &Multigraph, v: Vertex) -> Walk {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some(e) = self.parent[cur] {
            let up = g.other_end(e, cur);
            steps.push(OrientedEdge::leaving(g, e, up));
            cur = up;
        }
        steps.reverse();
        Walk { start: self.root, steps }
    }
}

/// Breadth-first spanning tree from `x0`. Each vertex scans its incident
/// edges by (neighbour id, edge id), which fixes all ties.
pub fn spanning_tree(g: &Multigraph, x0: Vertex) -> Result<SpanningTree> {
    let n = g.vertex_count();
    if x0 >= n {
        return Err(Error::InvalidParameter("base vertex out of range"));
    }
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut in_tree = vec![false; g.edge_count()];
    depth[x0] = 0;
    let mut queue = VecDeque::from([x0]);
    let mut order: Vec<(Vertex, Edge)> = Vec::new();
    while let Some(u) = queue.pop_front() {
        order.clear();
        order.extend(g.incident(u).iter().map(|&e| (g.other_end(e, u), e)));
        order.sort_unstable();
        for &(w, e) in &order {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = Some(e);
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    if depth.iter().any(|&d| d == usize::MAX) {
        return Err(Error::Disconnected);
    }
    Ok(SpanningTree { root: x0, parent, depth, in_tree })
}

/// One closed walk `x0 T u e v T x0` per chord `e = uv`, in chord order,
/// crossing the chord from its lower end.
pub fn fundamental_walks(g: &Multigraph, tree: &SpanningTree) -> Vec<Walk> {
    tree.chords()
        .into_iter()
        .map(|e| {
            let (u, v) = g.ends(e);
            let mut w = tree.path_from_root(g, u);
            w.steps.push(OrientedEdge::new(e, true));
            let back = tree.path_from_root(g, v).reversed(g);
            w.steps.extend(back.steps);
            w
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{homotopic, reduce_walk};

    #[test]
    fn tree_input_keeps_all_edges() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]);
        let t = spanning_tree(&g, 2).unwrap();
        assert_eq!(t.edges(), [0, 1, 2]);
        assert!(fundamental_walks(&g, &t).is_empty());
    }

    #[test]
    fn four_cycle_bfs() {
        // v0v1 = e0, v1v2 = e1, v2v3 = e2, v3v0 = e3
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let t = spanning_tree(&g, 0).unwrap();
        assert_eq!(t.edges(), [0, 1, 3]);
    }

    #[test]
    fn triangle_bfs() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let t = spanning_tree(&g, 0).unwrap();
        assert_eq!(t.edges(), [0, 2]);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Multigraph::from_edges(3, &[(0, 1)]);
        assert_eq!(spanning_tree(&g, 0), Err(Error::Disconnected));
    }

    #[test]
    fn cycle_has_one_fundamental_walk() {
        let n = 5;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Multigraph::from_edges(n, &edges);
        let t = spanning_tree(&g, 0).unwrap();
        let ws = fundamental_walks(&g, &t);
        assert_eq!(ws.len(), 1);
        let w = &ws[0];
        assert_eq!(w.len(), n);
        assert!(w.is_closed(&g));
        assert_eq!(reduce_walk(&g, w).unwrap(), *w);
        let mut edges_used: Vec<_> = w.steps.iter().map(|s| s.edge).collect();
        edges_used.sort();
        assert_eq!(edges_used, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn theta_graph_has_two_fundamental_walks() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let t = spanning_tree(&g, 0).unwrap();
        let ws = fundamental_walks(&g, &t);
        assert_eq!(ws.len(), 2);
        assert!(!homotopic(&g, &ws[0], &ws[1]).unwrap());
    }

    #[test]
    fn from_edges_validates() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(SpanningTree::from_edges(&g, 0, &[0, 1]).is_ok());
        assert_eq!(SpanningTree::from_edges(&g, 0, &[0]), Err(Error::InvalidTree));
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 1), (2, 3)]);
        assert_eq!(SpanningTree::from_edges(&g, 0, &[0, 1, 2]), Err(Error::InvalidTree));
    }
}
