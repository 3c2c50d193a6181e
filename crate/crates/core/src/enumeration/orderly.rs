//! Orderly generation of `r`-uniform bi-hypergraphs: a node is a canonical
//! edge list, its children append one `r`-set above the current maximum and
//! are kept only when still canonical. Deleting the largest edge of a
//! canonical list leaves a canonical list, so every isomorphism class is
//! reached exactly once.

use crate::bitset::VertexSet;
use crate::constructions::k_subsets;
use crate::enumeration::canon::is_canonical;

#[derive(Clone, Debug)]
pub struct OrderlyTree {
    n: usize,
    candidates: Vec<VertexSet>,
    max_edges: usize,
}

impl OrderlyTree {
    pub fn new(n: usize, r: usize, max_edges: usize) -> OrderlyTree {
        let mut candidates = Vec::new();
        k_subsets(n, r, &mut |s| candidates.push(s));
        candidates.sort_unstable();
        OrderlyTree {
            n,
            candidates,
            max_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical one-edge extensions of `node`, in increasing order of the
    /// added edge. Empty once `node` has `max_edges` edges.
    pub fn children(&self, node: &[VertexSet]) -> Vec<Vec<VertexSet>> {
        if node.len() >= self.max_edges {
            return Vec::new();
        }
        let start = match node.last() {
            Some(last) => self.candidates.partition_point(|c| c <= last),
            None => 0,
        };
        let mut out = Vec::new();
        let mut child = node.to_vec();
        for &e in &self.candidates[start..] {
            child.push(e);
            if is_canonical(self.n, &child) {
                out.push(child.clone());
            }
            child.pop();
        }
        out
    }

    /// Depth-first preorder walk of the subtree rooted at `root`, including
    /// the root itself. `visit` returns false to stop the walk early.
    pub fn walk(&self, root: Vec<VertexSet>, visit: &mut impl FnMut(&[VertexSet]) -> bool) -> bool {
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            if !visit(&node) {
                return false;
            }
            let mut kids = self.children(&node);
            kids.reverse();
            stack.extend(kids);
        }
        true
    }

    /// Nodes at depth `< depth` (in preorder) and the frontier at exactly
    /// `depth`.
    pub fn split(&self, depth: usize) -> (Vec<Vec<VertexSet>>, Vec<Vec<VertexSet>>) {
        let mut inner = Vec::new();
        let mut frontier = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(node) = stack.pop() {
            if node.len() == depth {
                frontier.push(node);
                continue;
            }
            let mut kids = self.children(&node);
            kids.reverse();
            stack.extend(kids);
            inner.push(node);
        }
        (inner, frontier)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, r: usize, max: usize) -> Vec<usize> {
        let tree = OrderlyTree::new(n, r, max);
        let mut by_size = vec![0; max + 1];
        tree.walk(Vec::new(), &mut |node| {
            by_size[node.len()] += 1;
            true
        });
        by_size
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(count(4, 3, 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(count(5, 3, 2), vec![1, 1, 2]);
        // Triple systems on 5 points are complements of graphs on 5 points.
        assert_eq!(count(5, 3, 10), vec![1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1]);
    }

    #[test]
    fn split_covers_the_tree() {
        let tree = OrderlyTree::new(6, 3, 20);
        let total: usize = count(6, 3, 20).iter().sum();
        let (inner, frontier) = tree.split(3);
        let mut below = 0;
        for root in frontier {
            tree.walk(root, &mut |_| {
                below += 1;
                true
            });
        }
        assert_eq!(inner.len() + below, total);
    }
}
