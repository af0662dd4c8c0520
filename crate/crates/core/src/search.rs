//! Exhaustive integer search for
//!
//! ```text
//! t_x + t_y = t_p,  t_y + t_z = t_q,  t_z + t_x = t_r        (three equations)
//! ... and t_x + t_y + t_z = t_s                              (four equations)
//! ```
//!
//! The search builds the *pair graph* on `1..N` with an edge `{x, y}`
//! whenever `t_x + t_y` is triangular; solutions of the three-equation
//! system are exactly its triangles. Triangles are listed by intersecting
//! sorted forward adjacency lists.
//!
//! The inner loop runs on `u64`; results are lifted to [`Integer`] and
//! re-verified on construction.

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::exact::Integer;
use crate::triangular::{inv_tri, tri};

/// Largest bound accepted by the `u64` search path. Keeps `8(t_x+t_y)+1`
/// far below `u64::MAX`.
pub const MAX_BOUND: u64 = 1 << 28;

/// Default bound for the four-equation search; large enough to contain
/// (1224, 1716, 3219, ...).
pub const DEFAULT_FOUR_BOUND: u64 = 3300;

/// Distinct solutions of the four-equation system that were known before
/// this search was written. Rows the search finds beyond these are flagged
/// by the CLI.
pub const REFERENCE_FOUR_ROWS: [[u64; 7]; 4] = [
    [230, 741, 870, 776, 1143, 900, 1166],
    [609, 779, 923, 989, 1208, 1106, 1353],
    [714, 798, 989, 1071, 1271, 1220, 1458],
    [1224, 1716, 3219, 2108, 3648, 3444, 3848],
];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution6 {
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
    pub p: Integer,
    pub q: Integer,
    pub r: Integer,
}

impl Solution6 {
    /// Checks the three equations.
    pub fn new(x: Integer, y: Integer, z: Integer, p: Integer, q: Integer, r: Integer) -> Result<Self> {
        let (tx, ty, tz) = (tri(&x), tri(&y), tri(&z));
        if &tx + &ty != tri(&p) || &ty + &tz != tri(&q) || &tz + &tx != tri(&r) {
            return Err(Error::Verification(format!(
                "({x}, {y}, {z}, {p}, {q}, {r}) does not satisfy the three-equation system"
            )));
        }
        Ok(Solution6 { x, y, z, p, q, r })
    }

    pub fn from_u64(v: [u64; 6]) -> Result<Self> {
        let [x, y, z, p, q, r] = v.map(Integer::from);
        Self::new(x, y, z, p, q, r)
    }

    pub fn values(&self) -> [&Integer; 6] {
        [&self.x, &self.y, &self.z, &self.p, &self.q, &self.r]
    }

    pub fn is_strictly_ordered(&self) -> bool {
        self.x < self.y && self.y < self.z
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution7 {
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
    pub p: Integer,
    pub q: Integer,
    pub r: Integer,
    pub s: Integer,
}

impl Solution7 {
    pub fn new(six: Solution6, s: Integer) -> Result<Self> {
        if tri(&six.x) + tri(&six.y) + tri(&six.z) != tri(&s) {
            return Err(Error::Verification(format!(
                "t_x + t_y + t_z != t_s for ({}, {}, {}; s = {s})",
                six.x, six.y, six.z
            )));
        }
        let Solution6 { x, y, z, p, q, r } = six;
        Ok(Solution7 { x, y, z, p, q, r, s })
    }

    pub fn from_u64(v: [u64; 7]) -> Result<Self> {
        let six = Solution6::from_u64([v[0], v[1], v[2], v[3], v[4], v[5]])?;
        Self::new(six, Integer::from(v[6]))
    }

    pub fn values(&self) -> [&Integer; 7] {
        [&self.x, &self.y, &self.z, &self.p, &self.q, &self.r, &self.s]
    }

    pub fn all_distinct(&self) -> bool {
        let v = self.values();
        (0..7).all(|i| (i + 1..7).all(|j| v[i] != v[j]))
    }

    pub fn is_reference_row(&self) -> bool {
        REFERENCE_FOUR_ROWS
            .iter()
            .any(|row| row.iter().zip(self.values()).all(|(a, b)| Integer::from(*a) == *b))
    }
}

impl Serialize for Solution6 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Solution6", 6)?;
        for (key, value) in ["x", "y", "z", "p", "q", "r"].into_iter().zip(self.values()) {
            st.serialize_field(key, &value.to_string())?;
        }
        st.end()
    }
}

impl Serialize for Solution7 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Solution7", 7)?;
        for (key, value) in ["x", "y", "z", "p", "q", "r", "s"].into_iter().zip(self.values()) {
            st.serialize_field(key, &value.to_string())?;
        }
        st.end()
    }
}

const fn square_residues<const M: usize>() -> [bool; M] {
    let mut table = [false; M];
    let mut i = 0;
    while i < M {
        table[(i * i) % M] = true;
        i += 1;
    }
    table
}

static SQUARE_MOD64: [bool; 64] = square_residues::<64>();
static SQUARE_MOD63: [bool; 63] = square_residues::<63>();
static SQUARE_MOD65: [bool; 65] = square_residues::<65>();

/// Exact square root of `n` if it is a perfect square.
pub fn square_root_u64(n: u64) -> Option<u64> {
    if !SQUARE_MOD64[(n & 63) as usize] || !SQUARE_MOD63[(n % 63) as usize] || !SQUARE_MOD65[(n % 65) as usize] {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

fn tri_u64(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// Index `p` with `t_p = t_a + t_b`, if one exists.
fn pair_label(a: u64, b: u64) -> Option<u64> {
    let root = square_root_u64(8 * (tri_u64(a) + tri_u64(b)) + 1)?;
    Some((root - 1) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub to: u64,
    pub label: u64,
}

/// Graph on `1..bound`: `adjacency[x]` lists every `y > x` with `t_x + t_y`
/// triangular, sorted by `y`. `diagonal[x]` holds the label of the pair
/// `(x, x)` when `2 t_x` is triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGraph {
    bound: u64,
    adjacency: Vec<Vec<Edge>>,
    diagonal: Vec<Option<u64>>,
}

impl PairGraph {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn neighbors(&self, x: u64) -> &[Edge] {
        self.adjacency.get(x as usize).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, x: u64, y: u64) -> Option<u64> {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        if a == b {
            return self.diagonal.get(a as usize).copied().flatten();
        }
        let row = self.neighbors(a);
        row.binary_search_by_key(&b, |e| e.to).ok().map(|i| row[i].label)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Forward neighbourhood of `x`: `(x, x)` first when requested and
    /// present, then every `y > x`.
    fn forward(&self, x: u64, with_diagonal: bool) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.neighbors(x).len() + 1);
        if with_diagonal {
            if let Some(label) = self.diagonal[x as usize] {
                out.push(Edge { to: x, label });
            }
        }
        out.extend_from_slice(self.neighbors(x));
        out
    }
}

/// Execution settings for the search. `workers = None` uses the global
/// rayon pool; `Some(1)` runs single-threaded.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    pub workers: Option<usize>,
}

impl SearchOptions {
    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(job()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

fn check_bound(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("search bound must be at least {min}, got {n}")));
    }
    if n > MAX_BOUND {
        return Err(Error::Domain(format!("search bound {n} exceeds the supported maximum {MAX_BOUND}")));
    }
    Ok(())
}

pub fn build_pair_graph(n: u64) -> Result<PairGraph> {
    build_pair_graph_with(n, SearchOptions::default())
}

pub fn build_pair_graph_with(n: u64, opts: SearchOptions) -> Result<PairGraph> {
    check_bound(n, 2)?;
    opts.run(|| {
        let rows: Vec<(Vec<Edge>, Option<u64>)> = (0..n)
            .into_par_iter()
            .map(|x| {
                if x == 0 {
                    return (Vec::new(), None);
                }
                let row = (x + 1..n)
                    .filter_map(|y| pair_label(x, y).map(|label| Edge { to: y, label }))
                    .collect();
                (row, pair_label(x, x))
            })
            .collect();
        let (adjacency, diagonal) = rows.into_iter().unzip();
        PairGraph { bound: n, adjacency, diagonal }
    })
}

/// Lists triangles `x <= y <= z` (strict when `strict`) as solutions.
fn triangles(graph: &PairGraph, strict: bool) -> Vec<[u64; 6]> {
    let mut found: Vec<[u64; 6]> = (1..graph.bound)
        .into_par_iter()
        .flat_map_iter(|x| {
            let fx = graph.forward(x, !strict);
            let mut local = Vec::new();
            for (i, exy) in fx.iter().enumerate() {
                let y = exy.to;
                let fy = graph.forward(y, !strict);
                // z ranges over fx[i..] (z >= y) or fx[i+1..] (z > y)
                let start = if strict { i + 1 } else { i };
                intersect(&fx[start..], &fy, |exz, eyz| {
                    local.push([x, y, exz.to, exy.label, eyz.label, exz.label]);
                });
            }
            local
        })
        .collect();
    found.sort_unstable();
    found.dedup();
    found
}

fn intersect(a: &[Edge], b: &[Edge], mut emit: impl FnMut(&Edge, &Edge)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].to.cmp(&b[j].to) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                emit(&a[i], &b[j]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// All solutions with `x < y < z < n`, sorted by `(x, y, z)`.
pub fn solve_system1(n: u64) -> Result<Vec<Solution6>> {
    solve_system1_with(n, SearchOptions::default())
}

pub fn solve_system1_with(n: u64, opts: SearchOptions) -> Result<Vec<Solution6>> {
    check_bound(n, 3)?;
    let graph = build_pair_graph_with(n, opts)?;
    let raw = opts.run(|| triangles(&graph, true))?;
    raw.into_iter().map(Solution6::from_u64).collect()
}

/// Solutions of the four-equation system with `z < n`.
///
/// With `distinct_only` the triples are strictly increasing and all seven
/// values must be pairwise different; otherwise `x <= y <= z` and repeats
/// are allowed.
pub fn solve_system3(n: u64, distinct_only: bool) -> Result<Vec<Solution7>> {
    solve_system3_with(n, distinct_only, SearchOptions::default())
}

pub fn solve_system3_with(n: u64, distinct_only: bool, opts: SearchOptions) -> Result<Vec<Solution7>> {
    check_bound(n, 3)?;
    let graph = build_pair_graph_with(n, opts)?;
    let raw = opts.run(|| triangles(&graph, distinct_only))?;
    let mut out = Vec::new();
    for [x, y, z, p, q, r] in raw {
        let sum = Integer::from(tri_u64(x)) + tri_u64(y) + tri_u64(z);
        let Some(s) = inv_tri(&sum) else { continue };
        let sol = Solution7::new(Solution6::from_u64([x, y, z, p, q, r])?, s)?;
        if !distinct_only || sol.all_distinct() {
            out.push(sol);
        }
    }
    Ok(out)
}

pub fn solutions6_csv(rows: &[Solution6]) -> String {
    let mut out = String::from("x,y,z,p,q,r\n");
    for row in rows {
        let fields: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn solutions7_csv(rows: &[Solution7]) -> String {
    let mut out = String::from("x,y,z,p,q,r,s\n");
    for row in rows {
        let fields: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json<T: Serialize>(rows: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("solutions always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_system1(n: u64) -> Vec<[u64; 6]> {
        let is_tri = |t: u64| {
            let mut k = 0u64;
            while tri_u64(k) < t {
                k += 1;
            }
            (tri_u64(k) == t).then_some(k)
        };
        let mut out = Vec::new();
        for x in 1..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let (tx, ty, tz) = (tri_u64(x), tri_u64(y), tri_u64(z));
                    if let (Some(p), Some(q), Some(r)) = (is_tri(tx + ty), is_tri(ty + tz), is_tri(tz + tx)) {
                        out.push([x, y, z, p, q, r]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn residue_filter_never_rejects_squares() {
        for r in 0..200_000u64 {
            assert_eq!(square_root_u64(r * r), Some(r));
            if r > 1 {
                assert_eq!(square_root_u64(r * r + 1), None);
                assert_eq!(square_root_u64(r * r - 1), None);
            }
        }
    }

    #[test]
    fn pair_graph_examples() {
        let g = build_pair_graph(20).unwrap();
        assert_eq!(g.label(9, 13), Some(16));
        assert_eq!(g.label(11, 14), Some(18));
        assert_eq!(g.label(14, 14), Some(20));
        assert_eq!(g.label(13, 9), Some(16));

        // N = 3 has the single candidate pair (1, 2): t_1 + t_2 = 4, 33 is not a square.
        let g3 = build_pair_graph(3).unwrap();
        assert_eq!(g3.edge_count(), 0);
        assert_eq!(pair_label(1, 2), None);
        assert!(build_pair_graph(1).is_err());
    }

    #[test]
    fn edges_match_predicate() {
        let g = build_pair_graph(150).unwrap();
        for x in 1..150u64 {
            for y in x + 1..150 {
                let t = Integer::from(tri_u64(x) + tri_u64(y));
                assert_eq!(g.label(x, y).map(Integer::from), inv_tri(&t), "pair ({x}, {y})");
            }
        }
    }

    #[test]
    fn small_bound_is_empty() {
        assert!(solve_system1(10).unwrap().is_empty());
        assert!(naive_system1(10).is_empty());
        assert!(solve_system1(2).is_err());
    }

    #[test]
    fn agrees_with_triple_loop() {
        for n in [3u64, 20, 45, 46, 91, 120] {
            let fast: Vec<[u64; 6]> = solve_system1(n)
                .unwrap()
                .iter()
                .map(|s| s.values().map(|v| u64::try_from(v).unwrap()))
                .collect();
            assert_eq!(fast, naive_system1(n), "bound {n}");
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let single = solve_system1_with(400, SearchOptions { workers: Some(1) }).unwrap();
        let many = solve_system1_with(400, SearchOptions { workers: Some(4) }).unwrap();
        assert_eq!(single, many);
        assert_eq!(solutions6_csv(&single), solutions6_csv(&many));
    }

    #[test]
    fn monotone_in_bound() {
        let small = solve_system1(200).unwrap();
        let large = solve_system1(400).unwrap();
        assert!(small.iter().all(|s| large.contains(s)));
    }

    #[test]
    fn ashbacher_triple() {
        let rows = solve_system3(20, false).unwrap();
        let expected = Solution7::from_u64([11, 14, 14, 18, 20, 18, 23]).unwrap();
        assert!(rows.contains(&expected));
        assert!(!expected.all_distinct());
        assert!(solve_system3(20, true).unwrap().is_empty());
    }

    #[test]
    fn constructors_reject_non_solutions() {
        assert!(Solution6::from_u64([9, 13, 44, 16, 46, 44]).is_err());
        assert!(Solution7::from_u64([9, 13, 44, 16, 46, 45, 50]).is_err());
    }

    #[test]
    fn csv_and_json_shapes() {
        let rows = vec![Solution6::from_u64([9, 13, 44, 16, 46, 45]).unwrap()];
        assert_eq!(solutions6_csv(&rows), "x,y,z,p,q,r\n9,13,44,16,46,45\n");
        let json: serde_json::Value = serde_json::from_str(&to_json(&rows)).unwrap();
        assert_eq!(json[0]["z"], "44");
        assert_eq!(json[0]["r"], "45");
        let text = to_json(&rows);
        assert!(text.find("\"x\"").unwrap() < text.find("\"r\"").unwrap());
    }
}
