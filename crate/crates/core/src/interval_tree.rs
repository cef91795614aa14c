//! Augmented AVL interval tree.
//!
//! Nodes are ordered by `(low, high, id)` and carry the maximum upper bound
//! and minimum lower bound of their subtree, which lets an overlap query
//! skip whole subtrees. One node per stored interval.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::extent::{intersect_1d, Interval1D};

type Link = Option<Box<Node>>;

#[derive(Debug, Clone)]
pub struct Node {
    interval: Interval1D,
    left: Link,
    right: Link,
    height: u32,
    max_upper: f64,
    min_lower: f64,
}

#[inline]
fn height(link: &Link) -> u32 {
    link.as_ref().map_or(0, |n| n.height)
}

impl Node {
    fn leaf(interval: Interval1D) -> Box<Self> {
        Box::new(Self {
            interval,
            left: None,
            right: None,
            height: 1,
            max_upper: interval.high(),
            min_lower: interval.low(),
        })
    }

    pub fn interval(&self) -> &Interval1D {
        &self.interval
    }

    pub fn left(&self) -> Option<&Node> {
        self.left.as_deref()
    }

    pub fn right(&self) -> Option<&Node> {
        self.right.as_deref()
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn max_upper(&self) -> f64 {
        self.max_upper
    }

    pub fn min_lower(&self) -> f64 {
        self.min_lower
    }

    /// Recomputes height and the two bounds from the children.
    fn update(&mut self) {
        let mut max_upper = self.interval.high();
        let mut min_lower = self.interval.low();
        for child in [&self.left, &self.right].into_iter().flatten() {
            max_upper = max_upper.max(child.max_upper);
            min_lower = min_lower.min(child.min_lower);
        }
        self.height = 1 + height(&self.left).max(height(&self.right));
        self.max_upper = max_upper;
        self.min_lower = min_lower;
    }

    fn balance_factor(&self) -> i64 {
        height(&self.left) as i64 - height(&self.right) as i64
    }

    /// Calls `sink` for every interval in this subtree that intersects `q`,
    /// in key order. Returns the number of nodes examined.
    pub fn query<F: FnMut(&Interval1D)>(&self, q: &Interval1D, sink: &mut F) -> usize {
        let mut visited = 0;
        query_node(Some(self), q, sink, &mut |_| visited += 1);
        visited
    }
}

fn query_node<F, V>(x: Option<&Node>, q: &Interval1D, sink: &mut F, visit: &mut V)
where
    F: FnMut(&Interval1D),
    V: FnMut(&Node),
{
    let Some(x) = x else { return };
    visit(x);
    if x.max_upper < q.low() || x.min_lower > q.high() {
        return;
    }
    query_node(x.left.as_deref(), q, sink, visit);
    if intersect_1d(&x.interval, q) {
        sink(&x.interval);
    }
    // Everything to the right starts at or after x's lower bound.
    if q.high() > x.interval.low() {
        query_node(x.right.as_deref(), q, sink, visit);
    }
}

fn rotate_right(mut y: Box<Node>) -> Box<Node> {
    let mut x = y.left.take().expect("rotate_right needs a left child");
    y.left = x.right.take();
    y.update();
    x.right = Some(y);
    x.update();
    x
}

fn rotate_left(mut x: Box<Node>) -> Box<Node> {
    let mut y = x.right.take().expect("rotate_left needs a right child");
    x.right = y.left.take();
    x.update();
    y.left = Some(x);
    y.update();
    y
}

fn rebalance(mut node: Box<Node>) -> Box<Node> {
    node.update();
    let bf = node.balance_factor();
    if bf > 1 {
        let left = node.left.take().unwrap();
        node.left = Some(if left.balance_factor() < 0 {
            rotate_left(left)
        } else {
            left
        });
        rotate_right(node)
    } else if bf < -1 {
        let right = node.right.take().unwrap();
        node.right = Some(if right.balance_factor() > 0 {
            rotate_right(right)
        } else {
            right
        });
        rotate_left(node)
    } else {
        node
    }
}

fn insert_node(link: Link, interval: Interval1D) -> Box<Node> {
    let Some(mut node) = link else {
        return Node::leaf(interval);
    };
    if interval.key_cmp(&node.interval) == Ordering::Less {
        node.left = Some(insert_node(node.left.take(), interval));
    } else {
        node.right = Some(insert_node(node.right.take(), interval));
    }
    rebalance(node)
}

/// Detaches the minimum node of the subtree; returns it and the remaining subtree.
fn take_min(mut node: Box<Node>) -> (Box<Node>, Link) {
    match node.left.take() {
        None => {
            let rest = node.right.take();
            (node, rest)
        }
        Some(left) => {
            let (min, rest) = take_min(left);
            node.left = rest;
            (min, Some(rebalance(node)))
        }
    }
}

fn remove_node(link: &mut Link, key: &Interval1D) -> bool {
    let Some(node) = link.as_mut() else {
        return false;
    };
    let removed = match key.key_cmp(&node.interval) {
        Ordering::Less => remove_node(&mut node.left, key),
        Ordering::Greater => remove_node(&mut node.right, key),
        Ordering::Equal => {
            let mut node = link.take().unwrap();
            *link = match (node.left.take(), node.right.take()) {
                (None, None) => None,
                (Some(child), None) | (None, Some(child)) => Some(child),
                (Some(left), Some(right)) => {
                    let (mut successor, rest) = take_min(right);
                    successor.left = Some(left);
                    successor.right = rest;
                    Some(successor)
                }
            };
            true
        }
    };
    if removed {
        if let Some(node) = link.take() {
            *link = Some(rebalance(node));
        }
    }
    removed
}

/// Visited nodes and matches of a single overlap query.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QueryTrace {
    pub visited: Vec<Interval1D>,
    pub matches: Vec<Interval1D>,
}

#[derive(Debug, Clone, Default)]
pub struct IntervalTree {
    root: Link,
    size: usize,
}

impl IntervalTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a tree by repeated insertion, `O(n log n)`.
    pub fn build(intervals: impl IntoIterator<Item = Interval1D>) -> Self {
        let mut tree = Self::new();
        for iv in intervals {
            tree.insert(iv);
        }
        tree
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn height(&self) -> u32 {
        height(&self.root)
    }

    pub fn root(&self) -> Option<&Node> {
        self.root.as_deref()
    }

    /// Inserts an interval. Identical keys may be stored more than once.
    pub fn insert(&mut self, interval: Interval1D) {
        self.root = Some(insert_node(self.root.take(), interval));
        self.size += 1;
    }

    /// Removes one interval matching `interval` on `(low, high, id)`.
    pub fn remove(&mut self, interval: &Interval1D) -> Result<()> {
        if remove_node(&mut self.root, interval) {
            self.size -= 1;
            Ok(())
        } else {
            Err(Error::NotFound {
                low: interval.low(),
                high: interval.high(),
                id: interval.id(),
            })
        }
    }

    /// Reports every stored interval intersecting `q` to `sink`, in key
    /// order. Returns the number of nodes examined.
    pub fn query<F: FnMut(&Interval1D)>(&self, q: &Interval1D, mut sink: F) -> usize {
        let mut visited = 0;
        query_node(self.root(), q, &mut sink, &mut |_| visited += 1);
        visited
    }

    pub fn query_collect(&self, q: &Interval1D) -> Vec<Interval1D> {
        let mut out = Vec::new();
        self.query(q, |iv| out.push(*iv));
        out
    }

    pub fn query_traced(&self, q: &Interval1D) -> QueryTrace {
        let mut trace = QueryTrace::default();
        let mut matches = Vec::new();
        query_node(
            self.root(),
            q,
            &mut |iv: &Interval1D| matches.push(*iv),
            &mut |n: &Node| trace.visited.push(n.interval),
        );
        trace.matches = matches;
        trace
    }

    /// In-order traversal.
    pub fn iter(&self) -> impl Iterator<Item = &Interval1D> {
        let mut stack: Vec<&Node> = Vec::new();
        let mut cursor = self.root();
        std::iter::from_fn(move || {
            while let Some(n) = cursor {
                stack.push(n);
                cursor = n.left();
            }
            let n = stack.pop()?;
            cursor = n.right();
            Some(&n.interval)
        })
    }

    /// Recomputes every node's height, balance, ordering and bounds from
    /// scratch and reports the first violation found.
    pub fn validate(&self) -> Result<(), TreeViolation> {
        let mut count = 0;
        validate_node(self.root(), &mut count)?;
        if count != self.size {
            return Err(TreeViolation {
                node: None,
                problem: Problem::Size {
                    recorded: self.size,
                    counted: count,
                },
            });
        }
        Ok(())
    }

    /// Indented text dump: one node per line with its key and bounds.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        fn walk(node: Option<&Node>, depth: usize, out: &mut String) {
            let Some(n) = node else { return };
            walk(n.right(), depth + 1, out);
            let _ = writeln!(
                out,
                "{:indent$}[{}, {}) #{} h={} maxupper={} minlower={}",
                "",
                n.interval.low(),
                n.interval.high(),
                n.interval.id(),
                n.height,
                n.max_upper,
                n.min_lower,
                indent = depth * 4
            );
            walk(n.left(), depth + 1, out);
        }
        walk(self.root(), 0, &mut out);
        out
    }

    #[cfg(test)]
    pub(crate) fn root_mut(&mut self) -> Option<&mut Node> {
        self.root.as_deref_mut()
    }
}

impl FromIterator<Interval1D> for IntervalTree {
    fn from_iter<T: IntoIterator<Item = Interval1D>>(iter: T) -> Self {
        Self::build(iter)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Height { stored: u32, actual: u32 },
    Balance { factor: i64 },
    Order { neighbour: Interval1D },
    MaxUpper { stored: f64, actual: f64 },
    MinLower { stored: f64, actual: f64 },
    Size { recorded: usize, counted: usize },
}

/// First invariant violation found by [`IntervalTree::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct TreeViolation {
    /// The offending node, absent for tree-level problems.
    pub node: Option<Interval1D>,
    pub problem: Problem,
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.node {
            write!(f, "node [{}, {}) #{}: ", n.low(), n.high(), n.id())?;
        }
        match &self.problem {
            Problem::Height { stored, actual } => {
                write!(f, "stored height {stored}, actual {actual}")
            }
            Problem::Balance { factor } => write!(f, "balance factor {factor}"),
            Problem::Order { neighbour } => write!(
                f,
                "out of order with [{}, {}) #{}",
                neighbour.low(),
                neighbour.high(),
                neighbour.id()
            ),
            Problem::MaxUpper { stored, actual } => {
                write!(f, "maxupper is {stored}, subtree maximum is {actual}")
            }
            Problem::MinLower { stored, actual } => {
                write!(f, "minlower is {stored}, subtree minimum is {actual}")
            }
            Problem::Size { recorded, counted } => {
                write!(f, "size is {recorded} but {counted} nodes are reachable")
            }
        }
    }
}

impl std::error::Error for TreeViolation {}

struct Summary {
    height: u32,
    max_upper: f64,
    min_lower: f64,
    first: Interval1D,
    last: Interval1D,
}

fn validate_node(node: Option<&Node>, count: &mut usize) -> Result<Option<Summary>, TreeViolation> {
    let Some(n) = node else { return Ok(None) };
    *count += 1;
    let left = validate_node(n.left(), count)?;
    let right = validate_node(n.right(), count)?;
    let fail = |problem| {
        Err(TreeViolation {
            node: Some(n.interval),
            problem,
        })
    };

    if let Some(l) = &left {
        if l.last.key_cmp(&n.interval) == Ordering::Greater {
            return fail(Problem::Order { neighbour: l.last });
        }
    }
    if let Some(r) = &right {
        if r.first.key_cmp(&n.interval) == Ordering::Less {
            return fail(Problem::Order { neighbour: r.first });
        }
    }

    let lh = left.as_ref().map_or(0, |s| s.height);
    let rh = right.as_ref().map_or(0, |s| s.height);
    let actual_height = 1 + lh.max(rh);
    if n.height != actual_height {
        return fail(Problem::Height {
            stored: n.height,
            actual: actual_height,
        });
    }
    let factor = lh as i64 - rh as i64;
    if factor.abs() > 1 {
        return fail(Problem::Balance { factor });
    }

    let mut max_upper = n.interval.high();
    let mut min_lower = n.interval.low();
    for s in [&left, &right].into_iter().flatten() {
        max_upper = max_upper.max(s.max_upper);
        min_lower = min_lower.min(s.min_lower);
    }
    if n.max_upper != max_upper {
        return fail(Problem::MaxUpper {
            stored: n.max_upper,
            actual: max_upper,
        });
    }
    if n.min_lower != min_lower {
        return fail(Problem::MinLower {
            stored: n.min_lower,
            actual: min_lower,
        });
    }

    Ok(Some(Summary {
        height: actual_height,
        max_upper,
        min_lower,
        first: left.as_ref().map_or(n.interval, |s| s.first),
        last: right.as_ref().map_or(n.interval, |s| s.last),
    }))
}
