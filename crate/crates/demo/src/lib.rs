//! Browser demo: match a generated workload, trace an interval-tree query,
//! and move extents while the matrix is maintained incrementally.
//!
//! Every entry point returns JSON for `www/index.html` to draw.

use ddm_core::bench::{Algorithm, WorkloadSpec};
use ddm_core::interval_tree::Node;
use ddm_core::{match_bf_1d, match_d, DynamicMatcher, Interval1D, IntersectionMatrix, IntervalTree};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Routing-space length used by every demo workload.
pub const LENGTH: f64 = 1000.0;

const MAX_EXTENTS: usize = 2000;

/// Workers for the parallel matchers. The browser build has no threads.
const WORKERS: usize = if cfg!(target_arch = "wasm32") { 1 } else { 2 };

#[derive(Serialize)]
struct MatchView {
    algo: String,
    subs: Vec<[f64; 2]>,
    upds: Vec<[f64; 2]>,
    /// 1-based `(subscription, update)` pairs.
    pairs: Vec<[usize; 2]>,
    k: usize,
}

#[derive(Serialize)]
struct TreeNodeView {
    id: usize,
    low: f64,
    high: f64,
    max_upper: f64,
    min_lower: f64,
    depth: usize,
    /// In-order rank, used as the horizontal position.
    x: usize,
    parent: Option<usize>,
    visited: bool,
    matched: bool,
}

#[derive(Serialize)]
struct TreeView {
    query: [f64; 2],
    height: u32,
    nodes: Vec<TreeNodeView>,
    visited: usize,
    matches: Vec<usize>,
}

#[derive(Serialize)]
struct DynamicView {
    subs: Vec<[f64; 2]>,
    upds: Vec<[f64; 2]>,
    pairs: Vec<[usize; 2]>,
    k: usize,
    /// Whether the maintained matrix equals a fresh brute-force match.
    audit_ok: bool,
    moves: usize,
}

fn workload(extents: usize, alpha: f64, seed: u64) -> Result<(Vec<Interval1D>, Vec<Interval1D>), String> {
    if extents > MAX_EXTENTS {
        return Err(format!("the demo is limited to {MAX_EXTENTS} extents"));
    }
    let spec = WorkloadSpec::new(extents, alpha).with_length(LENGTH).with_seed(seed);
    let inst = spec.generate().map_err(|e| e.to_string())?;
    Ok(inst.project(0))
}

fn bounds(ivs: &[Interval1D]) -> Vec<[f64; 2]> {
    ivs.iter().map(|iv| [iv.low(), iv.high()]).collect()
}

fn pairs(m: &IntersectionMatrix) -> Vec<[usize; 2]> {
    m.pairs().into_iter().map(|(i, j)| [i + 1, j + 1]).collect()
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("views serialize")
}

pub fn match_json(extents: usize, alpha: f64, algo: &str, grid_cells: usize, seed: u64) -> Result<String, String> {
    let algo: Algorithm = algo.parse().map_err(|e: ddm_core::Error| e.to_string())?;
    let spec = WorkloadSpec::new(extents, alpha).with_length(LENGTH).with_seed(seed);
    let matcher = algo
        .matcher(WORKERS, Some(grid_cells), (0.0, LENGTH))
        .map_err(|e| e.to_string())?;
    let (subs, upds) = workload(extents, alpha, seed)?;
    let inst = spec.generate().map_err(|e| e.to_string())?;
    let m = match_d(&inst, &matcher).map_err(|e| e.to_string())?;
    Ok(json(&MatchView {
        algo: algo.to_string(),
        subs: bounds(&subs),
        upds: bounds(&upds),
        k: m.count_ones(),
        pairs: pairs(&m),
    }))
}

pub fn tree_json(extents: usize, alpha: f64, seed: u64, low: f64, high: f64) -> Result<String, String> {
    let (subs, _) = workload(extents, alpha, seed)?;
    let q = Interval1D::update(low, high, 1).map_err(|e| e.to_string())?;
    let tree = IntervalTree::build(subs);
    let trace = tree.query_traced(&q);
    let visited: Vec<usize> = trace.visited.iter().map(Interval1D::id).collect();
    let mut matches: Vec<usize> = trace.matches.iter().map(Interval1D::id).collect();

    let mut nodes = Vec::with_capacity(tree.len());
    let mut rank = 0;
    layout(tree.root(), 0, None, &mut rank, &mut nodes);
    for n in &mut nodes {
        n.visited = visited.contains(&n.id);
        n.matched = matches.contains(&n.id);
    }
    matches.sort_unstable();
    Ok(json(&TreeView {
        query: [low, high],
        height: tree.height(),
        visited: visited.len(),
        nodes,
        matches,
    }))
}

fn layout(node: Option<&Node>, depth: usize, parent: Option<usize>, rank: &mut usize, out: &mut Vec<TreeNodeView>) {
    let Some(n) = node else { return };
    let id = n.interval().id();
    layout(n.left(), depth + 1, Some(id), rank, out);
    out.push(TreeNodeView {
        id,
        low: n.interval().low(),
        high: n.interval().high(),
        max_upper: n.max_upper(),
        min_lower: n.min_lower(),
        depth,
        x: *rank,
        parent,
        visited: false,
        matched: false,
    });
    *rank += 1;
    layout(n.right(), depth + 1, Some(id), rank, out);
}

/// Incrementally maintained workload. Extents keep their length when moved.
#[wasm_bindgen]
pub struct DynamicDemo {
    inner: DynamicMatcher,
    moves: usize,
}

impl DynamicDemo {
    pub fn create(extents: usize, alpha: f64, seed: u64) -> Result<DynamicDemo, String> {
        let (subs, upds) = workload(extents, alpha, seed)?;
        let inner = DynamicMatcher::build(subs, upds).map_err(|e| e.to_string())?;
        Ok(Self { inner, moves: 0 })
    }

    /// Moves the 1-based subscription (`update = false`) or update so that its
    /// lower bound is `low`.
    pub fn move_to(&mut self, update: bool, id: usize, low: f64) -> Result<(), String> {
        let list = if update { self.inner.updates() } else { self.inner.subscriptions() };
        let iv = id
            .checked_sub(1)
            .and_then(|k| list.get(k))
            .ok_or_else(|| format!("no extent with id {id}"))?;
        let len = iv.high() - iv.low();
        let low = low.clamp(0.0, LENGTH - len);
        let r = if update {
            self.inner.move_update(id - 1, low, low + len)
        } else {
            self.inner.move_subscription(id - 1, low, low + len)
        };
        r.map_err(|e| e.to_string())?;
        self.moves += 1;
        Ok(())
    }

    pub fn state_json(&self) -> String {
        let m = self.inner.matrix();
        let fresh = match_bf_1d(self.inner.subscriptions(), self.inner.updates()).expect("valid instance");
        json(&DynamicView {
            subs: bounds(self.inner.subscriptions()),
            upds: bounds(self.inner.updates()),
            pairs: pairs(m),
            k: m.count_ones(),
            audit_ok: &fresh == m,
            moves: self.moves,
        })
    }
}

#[wasm_bindgen]
impl DynamicDemo {
    #[wasm_bindgen(constructor)]
    pub fn new(extents: usize, alpha: f64, seed: u32) -> Result<DynamicDemo, JsError> {
        Self::create(extents, alpha, seed.into()).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = moveExtent)]
    pub fn move_extent(&mut self, update: bool, id: usize, low: f64) -> Result<(), JsError> {
        self.move_to(update, id, low).map_err(|e| JsError::new(&e))
    }

    pub fn state(&self) -> String {
        self.state_json()
    }
}

#[wasm_bindgen(js_name = matchWorkload)]
pub fn match_workload(extents: usize, alpha: f64, algo: &str, grid_cells: usize, seed: u32) -> Result<String, JsError> {
    match_json(extents, alpha, algo, grid_cells, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = traceQuery)]
pub fn trace_query(extents: usize, alpha: f64, seed: u32, low: f64, high: f64) -> Result<String, JsError> {
    tree_json(extents, alpha, seed.into(), low, high).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn all_algorithms_report_the_same_pairs() {
        let reference = parse(&match_json(200, 2.0, "bf", 16, 7).unwrap());
        assert!(reference["k"].as_u64().unwrap() > 0);
        for algo in ["sbm", "gb", "itm", "bf-par", "itm-par"] {
            let v = parse(&match_json(200, 2.0, algo, 16, 7).unwrap());
            assert_eq!(v["pairs"], reference["pairs"], "{algo}");
            assert_eq!(v["algo"], algo);
        }
        assert_eq!(reference["subs"].as_array().unwrap().len(), 100);
    }

    #[test]
    fn match_errors_are_messages() {
        assert!(match_json(200, 1.0, "nope", 16, 0).unwrap_err().contains("unknown algorithm"));
        assert!(match_json(10, 100.0, "bf", 16, 0).is_err());
        assert!(match_json(MAX_EXTENTS + 2, 1.0, "bf", 16, 0).is_err());
    }

    #[test]
    fn tree_trace_marks_matches() {
        let v = parse(&tree_json(60, 3.0, 1, 400.0, 600.0).unwrap());
        let nodes = v["nodes"].as_array().unwrap();
        assert_eq!(nodes.len(), 30);
        let xs: Vec<u64> = nodes.iter().map(|n| n["x"].as_u64().unwrap()).collect();
        assert_eq!(xs, (0..30).collect::<Vec<_>>());
        assert_eq!(nodes.iter().filter(|n| n["parent"].is_null()).count(), 1);

        let matched: Vec<u64> = nodes
            .iter()
            .filter(|n| n["matched"].as_bool().unwrap())
            .map(|n| n["id"].as_u64().unwrap())
            .collect();
        let expected: Vec<u64> = nodes
            .iter()
            .filter(|n| n["low"].as_f64().unwrap() < 600.0 && 400.0 < n["high"].as_f64().unwrap())
            .map(|n| n["id"].as_u64().unwrap())
            .collect();
        let mut sorted = matched.clone();
        sorted.sort_unstable();
        let mut want = expected;
        want.sort_unstable();
        assert_eq!(sorted, want);
        assert!(nodes.iter().all(|n| !n["matched"].as_bool().unwrap() || n["visited"].as_bool().unwrap()));
        assert!(v["visited"].as_u64().unwrap() as usize >= matched.len());
    }

    #[test]
    fn tree_rejects_empty_query() {
        assert!(tree_json(20, 1.0, 0, 5.0, 5.0).is_err());
    }

    #[test]
    fn dynamic_moves_stay_audited() {
        let mut d = DynamicDemo::create(100, 4.0, 3).unwrap();
        for step in 0..40 {
            let id = step % 50 + 1;
            d.move_to(step % 2 == 0, id, (step * 37 % 1000) as f64).unwrap();
        }
        let v = parse(&d.state_json());
        assert_eq!(v["moves"], 40);
        assert_eq!(v["audit_ok"], true);
        assert_eq!(v["pairs"].as_array().unwrap().len() as u64, v["k"].as_u64().unwrap());
        let upds = v["upds"].as_array().unwrap();
        assert!(upds.iter().all(|u| u[1].as_f64().unwrap() <= LENGTH));
    }

    #[test]
    fn dynamic_rejects_unknown_id() {
        let mut d = DynamicDemo::create(10, 1.0, 0).unwrap();
        assert!(d.move_to(true, 0, 1.0).is_err());
        assert!(d.move_to(false, 6, 1.0).is_err());
        assert!(d.move_to(false, 5, 1.0).is_ok());
    }
}
