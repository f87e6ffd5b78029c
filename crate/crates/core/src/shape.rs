//! Tree shapes: a root edge above an ordered binary tree, with the edge
//! numbering, branch points and boundary outline the `L_τ` construction reads.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf,
    Branch(Box<Node>, Box<Node>),
}

impl Node {
    pub fn leaves(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Branch(l, r) => l.leaves() + r.leaves(),
        }
    }

    fn at(&self, path: &[bool]) -> &Node {
        match (path.split_first(), self) {
            (None, _) => self,
            (Some((&right, rest)), Node::Branch(l, r)) => if right { r } else { l }.at(rest),
            (Some(_), Node::Leaf) => panic!("path runs past a leaf"),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf => f.write_str("o"),
            Node::Branch(l, r) => write!(f, "({l},{r})"),
        }
    }
}

/// A root edge whose lower end is `body`. With `body = Leaf` this is the
/// single-edge shape used for `ℓ = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeShape {
    pub body: Node,
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}", self.body)
    }
}

fn binary_trees(leaves: usize) -> Vec<Node> {
    if leaves == 1 {
        return vec![Node::Leaf];
    }
    let mut out = Vec::new();
    for left in (1..leaves).rev() {
        let rights = binary_trees(leaves - left);
        for l in binary_trees(left) {
            for r in &rights {
                out.push(Node::Branch(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

/// All shapes with `leaves` leaves (not counting the root), larger left
/// subtrees first. There are `Catalan(leaves - 1)` of them.
pub fn enumerate_shapes(leaves: usize) -> Result<Vec<TreeShape>> {
    if leaves < 2 {
        return Err(Error::Domain(format!(
            "tree shapes need at least 2 leaves, got {leaves}"
        )));
    }
    Ok(binary_trees(leaves)
        .into_iter()
        .map(|body| TreeShape { body })
        .collect())
}

impl TreeShape {
    pub fn single_edge() -> TreeShape {
        TreeShape { body: Node::Leaf }
    }

    pub fn leaves(&self) -> usize {
        self.body.leaves()
    }

    /// Number of parts `ℓ` the shape splits a word into: leaves plus one.
    pub fn parts(&self) -> usize {
        self.leaves() + 1
    }

    pub fn order_edges(&self) -> EdgeOrdering {
        // An edge is named by the path from the root edge to its lower end.
        let mut internal = Vec::new();
        let mut leaves = Vec::new();
        fn walk(node: &Node, path: &mut Vec<bool>, internal: &mut Vec<Vec<bool>>, leaves: &mut Vec<Vec<bool>>) {
            match node {
                Node::Leaf => leaves.push(path.clone()),
                Node::Branch(l, r) => {
                    internal.push(path.clone());
                    path.push(false);
                    walk(l, path, internal, leaves);
                    path.pop();
                    path.push(true);
                    walk(r, path, internal, leaves);
                    path.pop();
                }
            }
        }
        walk(&self.body, &mut Vec::new(), &mut internal, &mut leaves);
        let m = internal.len();
        internal.extend(leaves);
        EdgeOrdering { paths: internal, m }
    }

    pub fn branch_points(&self, order: &EdgeOrdering) -> Vec<BranchPoint> {
        (0..order.m)
            .map(|i| {
                let path = &order.paths[i];
                let child = |right: bool| {
                    let mut p = path.clone();
                    p.push(right);
                    order.index_of(&p)
                };
                BranchPoint {
                    index: i + 1,
                    parent: i + 1,
                    left: child(false),
                    right: child(true),
                }
            })
            .collect()
    }

    /// The boundary walk from the left of the root edge round to its right,
    /// cut into segments at the leaves.
    pub fn outline(&self, order: &EdgeOrdering) -> Outline {
        let mut segments = vec![Vec::new()];
        fn visit(node: &Node, path: &mut Vec<bool>, order: &EdgeOrdering, segments: &mut Vec<Vec<(usize, Side)>>) {
            let e = order.index_of(path);
            segments.last_mut().expect("non-empty").push((e, Side::L));
            match node {
                Node::Leaf => segments.push(Vec::new()),
                Node::Branch(l, r) => {
                    path.push(false);
                    visit(l, path, order, segments);
                    path.pop();
                    path.push(true);
                    visit(r, path, order, segments);
                    path.pop();
                }
            }
            segments.last_mut().expect("non-empty").push((e, Side::R));
        }
        visit(&self.body, &mut Vec::new(), order, &mut segments);
        Outline { segments }
    }

    /// Graphviz description with edges labelled by their index.
    pub fn to_dot(&self) -> String {
        let order = self.order_edges();
        let mut out = String::from("digraph shape {\n  root [shape=point];\n");
        for (i, path) in order.paths.iter().enumerate() {
            let name = |p: &[bool]| -> String {
                let bits: String = p.iter().map(|&b| if b { '1' } else { '0' }).collect();
                format!("v{bits}")
            };
            let upper = if path.is_empty() {
                "root".to_string()
            } else {
                name(&path[..path.len() - 1])
            };
            let lower = name(path);
            let leaf = matches!(self.body.at(path), Node::Leaf);
            let _ = writeln!(
                out,
                "  {lower} [shape={}];\n  {upper} -> {lower} [label=\"e{}\"];",
                if leaf { "box" } else { "point" },
                i + 1
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Edges `e_1 … e_N`: the root edge, the other non-leaf edges in preorder,
/// then the leaf edges from left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrdering {
    paths: Vec<Vec<bool>>,
    m: usize,
}

impl EdgeOrdering {
    /// `N`, the number of edges.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `m`, the number of non-leaf edges (`e_1 … e_m`).
    pub fn non_leaf(&self) -> usize {
        self.m
    }

    /// 1-based index of the edge whose lower end is at `path`.
    pub fn index_of(&self, path: &[bool]) -> usize {
        self.paths.iter().position(|p| p == path).expect("edge of this shape") + 1
    }

    pub fn is_leaf(&self, e: usize) -> bool {
        e > self.m
    }
}

/// `e1=root e2=l e3=lr …`: each edge with the turns leading to it.
impl fmt::Display for EdgeOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.paths.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let turns: String = p.iter().map(|&b| if b { 'r' } else { 'l' }).collect();
            write!(f, "e{}={}", i + 1, if turns.is_empty() { "root" } else { &turns })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

/// A degree-3 vertex: edge `parent` above, children `left` and `right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchPoint {
    pub index: usize,
    pub parent: usize,
    pub left: usize,
    pub right: usize,
}

/// Segment `i` (1-based) lists the edge sides `(ρ_i(j), d_ij)` walked between
/// leaf `i-1` and leaf `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outline {
    pub segments: Vec<Vec<(usize, Side)>>,
}

impl Outline {
    /// `k_1, …, k_ℓ`.
    pub fn lengths(&self) -> Vec<usize> {
        self.segments.iter().map(Vec::len).collect()
    }

    /// `(ρ_i(j), d_ij)` for 1-based `i`, `j`.
    pub fn side(&self, i: usize, j: usize) -> (usize, Side) {
        self.segments[i - 1][j - 1]
    }
}

impl fmt::Display for Outline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, (e, s)) in seg.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "e{e}{s}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig5() -> TreeShape {
        enumerate_shapes(3).unwrap().remove(0)
    }

    #[test]
    fn counts_are_catalan() {
        let counts: Vec<usize> = (2..=7).map(|n| enumerate_shapes(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 5, 14, 42, 132]);
        assert!(enumerate_shapes(1).is_err());
    }

    #[test]
    fn fig5_tables() {
        let t = fig5();
        let o = t.order_edges();
        assert_eq!((o.len(), o.non_leaf()), (5, 2));
        let bps: Vec<(usize, usize, usize)> = t
            .branch_points(&o)
            .iter()
            .map(|b| (b.parent, b.left, b.right))
            .collect();
        assert_eq!(bps, [(1, 2, 5), (2, 3, 4)]);
        let out = t.outline(&o);
        assert_eq!(out.lengths(), [3, 2, 3, 2]);
        assert_eq!(out.to_string(), "e1L e2L e3L | e3R e4L | e4R e2R e5L | e5R e1R");
    }

    #[test]
    fn second_three_leaf_shape_inverts_children() {
        let t = enumerate_shapes(3).unwrap().remove(1);
        let o = t.order_edges();
        let b = t.branch_points(&o)[0];
        assert_eq!((b.parent, b.left, b.right), (1, 3, 2));
    }

    #[test]
    fn single_edge_shape() {
        let t = TreeShape::single_edge();
        let o = t.order_edges();
        assert_eq!((o.len(), o.non_leaf()), (1, 0));
        assert!(t.branch_points(&o).is_empty());
        assert_eq!(t.outline(&o).lengths(), [1, 1]);
    }
}
