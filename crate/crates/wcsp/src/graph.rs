//! Directed graphs whose edges carry two non-negative integer costs.
//!
//! Storage is compressed adjacency in both directions. Ids are 0-based
//! internally; the DIMACS readers and writers shift to and from 1-based ids.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// State (vertex) identifier.
pub type StateId = u32;

/// Path cost type. Edge costs are 32-bit, sums are 64-bit.
pub type Cost = u64;

/// Marker for "no value yet" in cost arrays.
pub const INF: Cost = u64::MAX;

/// Marker for "no state" in predecessor arrays.
pub const NO_STATE: StateId = u32::MAX;

/// One of the two edge attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attr {
    /// The attribute being minimised.
    Cost1,
    /// The constrained attribute (weight).
    Cost2,
}

impl Attr {
    /// Array index of the attribute (0 or 1).
    pub fn index(self) -> usize {
        match self {
            Attr::Cost1 => 0,
            Attr::Cost2 => 1,
        }
    }

    /// The other attribute.
    pub fn other(self) -> Attr {
        match self {
            Attr::Cost1 => Attr::Cost2,
            Attr::Cost2 => Attr::Cost1,
        }
    }
}

/// Search direction. Backward searches walk the reversed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn index(self) -> usize {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// An outgoing (or, in the reversed adjacency, incoming) edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub target: StateId,
    pub cost1: u32,
    pub cost2: u32,
}

impl Arc {
    pub fn cost(&self, attr: Attr) -> Cost {
        match attr {
            Attr::Cost1 => self.cost1 as Cost,
            Attr::Cost2 => self.cost2 as Cost,
        }
    }
}

/// Errors raised while building or loading a graph.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed line: {text}")]
    Malformed {
        path: PathBuf,
        line: usize,
        text: String,
    },
    #[error("{path}: missing `p sp` problem line")]
    MissingHeader { path: PathBuf },
    #[error("state id {id} out of range 1..={n}")]
    StateOutOfRange { id: u64, n: usize },
    #[error("edge sets differ: arc #{index} is {a:?} in the cost1 file but {b:?} in the cost2 file")]
    MismatchedEdges {
        index: usize,
        a: (u32, u32),
        b: (u32, u32),
    },
    #[error("state counts differ: {a} vs {b}")]
    MismatchedStateCount { a: usize, b: usize },
    #[error("edge cost {0} does not fit in 32 bits")]
    CostOverflow(u64),
}

/// Immutable bi-attribute directed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    state_count: usize,
    fwd_offsets: Vec<u32>,
    fwd_arcs: Vec<Arc>,
    rev_offsets: Vec<u32>,
    rev_arcs: Vec<Arc>,
    coords: Option<Vec<(i32, i32)>>,
}

/// A plain edge record `(from, to, cost1, cost2)`.
pub type EdgeTuple = (StateId, StateId, u32, u32);

impl Graph {
    /// Builds a graph from an edge list. Among parallel edges the one with the
    /// lexicographically smallest `(cost1, cost2)` is kept. Self loops are kept
    /// as ordinary edges; they never lie on a shortest path.
    pub fn from_edges(state_count: usize, edges: &[EdgeTuple]) -> Result<Graph, GraphError> {
        for &(u, v, _, _) in edges {
            for id in [u, v] {
                if id as usize >= state_count {
                    return Err(GraphError::StateOutOfRange {
                        id: id as u64 + 1,
                        n: state_count,
                    });
                }
            }
        }
        let mut sorted: Vec<EdgeTuple> = edges.to_vec();
        sorted.sort_unstable();
        sorted.dedup_by(|later, kept| later.0 == kept.0 && later.1 == kept.1);
        Ok(Self::from_sorted_unique(state_count, &sorted))
    }

    fn from_sorted_unique(state_count: usize, edges: &[EdgeTuple]) -> Graph {
        let build = |key: &dyn Fn(&EdgeTuple) -> (StateId, StateId)| {
            let mut offsets = vec![0u32; state_count + 1];
            for e in edges {
                offsets[key(e).0 as usize + 1] += 1;
            }
            for i in 0..state_count {
                offsets[i + 1] += offsets[i];
            }
            let mut cursor = offsets.clone();
            let mut arcs = vec![
                Arc {
                    target: 0,
                    cost1: 0,
                    cost2: 0
                };
                edges.len()
            ];
            for e in edges {
                let (from, to) = key(e);
                let slot = &mut cursor[from as usize];
                arcs[*slot as usize] = Arc {
                    target: to,
                    cost1: e.2,
                    cost2: e.3,
                };
                *slot += 1;
            }
            for u in 0..state_count {
                let (a, b) = (offsets[u] as usize, offsets[u + 1] as usize);
                arcs[a..b].sort_unstable_by_key(|arc| arc.target);
            }
            (offsets, arcs)
        };
        let (fwd_offsets, fwd_arcs) = build(&|e| (e.0, e.1));
        let (rev_offsets, rev_arcs) = build(&|e| (e.1, e.0));
        Graph {
            state_count,
            fwd_offsets,
            fwd_arcs,
            rev_offsets,
            rev_arcs,
            coords: None,
        }
    }

    /// Attaches `(longitude, latitude)` coordinates in millionths of a degree.
    pub fn with_coords(mut self, coords: Vec<(i32, i32)>) -> Graph {
        assert_eq!(coords.len(), self.state_count, "one coordinate per state");
        self.coords = Some(coords);
        self
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn edge_count(&self) -> usize {
        self.fwd_arcs.len()
    }

    pub fn coords(&self) -> Option<&[(i32, i32)]> {
        self.coords.as_deref()
    }

    /// Successors of `u` in ascending target order. For `Backward` these are
    /// the predecessors of `u` in the original graph.
    #[inline]
    pub fn successors(&self, u: StateId, direction: Direction) -> &[Arc] {
        debug_assert!((u as usize) < self.state_count);
        let (offsets, arcs) = match direction {
            Direction::Forward => (&self.fwd_offsets, &self.fwd_arcs),
            Direction::Backward => (&self.rev_offsets, &self.rev_arcs),
        };
        let u = u as usize;
        &arcs[offsets[u] as usize..offsets[u + 1] as usize]
    }

    /// All edges as `(from, to, cost1, cost2)` in ascending `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeTuple> + '_ {
        (0..self.state_count as StateId).flat_map(move |u| {
            self.successors(u, Direction::Forward)
                .iter()
                .map(move |a| (u, a.target, a.cost1, a.cost2))
        })
    }

    /// Looks up the edge `u -> v`.
    pub fn edge(&self, u: StateId, v: StateId) -> Option<Arc> {
        let arcs = self.successors(u, Direction::Forward);
        arcs.binary_search_by_key(&v, |a| a.target).ok().map(|i| arcs[i])
    }

    /// The same graph with every edge reversed.
    pub fn reversed(&self) -> Graph {
        Graph {
            state_count: self.state_count,
            fwd_offsets: self.rev_offsets.clone(),
            fwd_arcs: self.rev_arcs.clone(),
            rev_offsets: self.fwd_offsets.clone(),
            rev_arcs: self.fwd_arcs.clone(),
            coords: self.coords.clone(),
        }
    }

    /// Sums both costs along a state sequence. `None` if an edge is missing.
    pub fn path_cost(&self, path: &[StateId]) -> Option<(Cost, Cost)> {
        let mut c = (0, 0);
        for w in path.windows(2) {
            let arc = self.edge(w[0], w[1])?;
            c.0 += arc.cost1 as Cost;
            c.1 += arc.cost2 as Cost;
        }
        Some(c)
    }

    /// A copy whose cost2 values are drawn uniformly from `[lo, hi]`.
    /// The draw is made once per edge, so both adjacencies agree.
    pub fn randomize_cost2(&self, seed: u64, lo: u32, hi: u32) -> Graph {
        assert!(lo >= 1 && hi >= lo, "randomize_cost2 needs 1 <= lo <= hi");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<EdgeTuple> = self
            .edges()
            .map(|(u, v, c1, _)| (u, v, c1, rng.gen_range(lo..=hi)))
            .collect();
        let mut g = Self::from_sorted_unique(self.state_count, &edges);
        g.coords = self.coords.clone();
        g
    }
}

/// Seeded random digraph on `n` states with `m` edges and costs uniform in
/// `[1, c_max]`. A random Hamiltonian cycle is laid down first, so the graph
/// is strongly connected whenever `n >= 2`; remaining edges are uniform over
/// ordered pairs without self loops or duplicates.
pub fn random_graph(n: usize, m: usize, c_max: u32, seed: u64) -> Graph {
    assert!(n >= 1 && c_max >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_edges = n * (n - 1);
    let m = m.clamp(if n >= 2 { n } else { 0 }, max_edges);
    let mut perm: Vec<StateId> = (0..n as StateId).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let draw = |rng: &mut ChaCha8Rng| (rng.gen_range(1..=c_max), rng.gen_range(1..=c_max));
    if n >= 2 {
        for i in 0..n {
            let (u, v) = (perm[i], perm[(i + 1) % n]);
            present.insert((u, v));
            let (c1, c2) = draw(&mut rng);
            edges.push((u, v, c1, c2));
        }
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n as StateId);
        let v = rng.gen_range(0..n as StateId);
        if u == v || !present.insert((u, v)) {
            continue;
        }
        let (c1, c2) = draw(&mut rng);
        edges.push((u, v, c1, c2));
    }
    Graph::from_edges(n, &edges).expect("generated ids are in range")
}

/// Seeded `width` x `height` grid with arcs in both directions between
/// 4-neighbours. Each arc draws its two costs independently from
/// `[1, c_max]`. State `(x, y)` has id `y * width + x`.
pub fn grid_graph(width: usize, height: usize, c_max: u32, seed: u64) -> Graph {
    assert!(width >= 1 && height >= 1 && c_max >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |x: usize, y: usize| (y * width + x) as StateId;
    let mut edges = Vec::with_capacity(4 * width * height);
    for y in 0..height {
        for x in 0..width {
            let mut link = |v: StateId| {
                for (a, b) in [(id(x, y), v), (v, id(x, y))] {
                    edges.push((a, b, rng.gen_range(1..=c_max), rng.gen_range(1..=c_max)));
                }
            };
            if x + 1 < width {
                link(id(x + 1, y));
            }
            if y + 1 < height {
                link(id(x, y + 1));
            }
        }
    }
    Graph::from_edges(width * height, &edges).expect("generated ids are in range")
}

/// Parsed content of one DIMACS `.gr` file, ids already 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrFile {
    pub state_count: usize,
    pub arcs: Vec<(StateId, StateId, u32)>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> GraphError + '_ {
    move |source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses a DIMACS shortest-path `.gr` stream.
pub fn parse_gr<R: BufRead>(reader: R, path: &Path) -> Result<GrFile, GraphError> {
    let malformed = |line: usize, text: &str| GraphError::Malformed {
        path: path.to_path_buf(),
        line,
        text: text.to_string(),
    };
    let mut state_count = None;
    let mut arcs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if tok.next() != Some("sp") {
                    return Err(malformed(i + 1, &line));
                }
                let n: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| malformed(i + 1, &line))?;
                let m: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| malformed(i + 1, &line))?;
                state_count = Some(n);
                arcs.reserve(m);
            }
            Some("a") => {
                let n = state_count.ok_or_else(|| GraphError::MissingHeader {
                    path: path.to_path_buf(),
                })?;
                let mut num = || -> Result<u64, GraphError> {
                    tok.next()
                        .and_then(|t| t.parse::<u64>().ok())
                        .ok_or_else(|| malformed(i + 1, &line))
                };
                let (u, v, w) = (num()?, num()?, num()?);
                for id in [u, v] {
                    if id == 0 || id as usize > n {
                        return Err(GraphError::StateOutOfRange { id, n });
                    }
                }
                let w = u32::try_from(w).map_err(|_| GraphError::CostOverflow(w))?;
                arcs.push(((u - 1) as StateId, (v - 1) as StateId, w));
            }
            Some(_) => return Err(malformed(i + 1, &line)),
        }
    }
    let state_count = state_count.ok_or_else(|| GraphError::MissingHeader {
        path: path.to_path_buf(),
    })?;
    Ok(GrFile { state_count, arcs })
}

/// Parses a DIMACS `.co` coordinate stream into `(lon, lat)` millionths.
pub fn parse_co<R: BufRead>(reader: R, path: &Path, n: usize) -> Result<Vec<(i32, i32)>, GraphError> {
    let mut coords = vec![(0, 0); n];
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let mut tok = line.split_whitespace();
        if tok.next() != Some("v") {
            continue;
        }
        let malformed = || GraphError::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            text: line.clone(),
        };
        let id: u64 = tok.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        let x: i32 = tok.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        let y: i32 = tok.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        if id == 0 || id as usize > n {
            return Err(GraphError::StateOutOfRange { id, n });
        }
        coords[id as usize - 1] = (x, y);
    }
    Ok(coords)
}

fn open(path: &Path) -> Result<BufReader<File>, GraphError> {
    File::open(path).map(BufReader::new).map_err(io_err(path))
}

/// Pairs two parsed `.gr` files arc by arc into a bi-attribute edge list.
pub fn merge_gr(a: &GrFile, b: &GrFile) -> Result<Vec<EdgeTuple>, GraphError> {
    if a.state_count != b.state_count {
        return Err(GraphError::MismatchedStateCount {
            a: a.state_count,
            b: b.state_count,
        });
    }
    if a.arcs.len() != b.arcs.len() {
        let index = a.arcs.len().min(b.arcs.len());
        let at = |f: &GrFile| f.arcs.get(index).map(|x| (x.0 + 1, x.1 + 1)).unwrap_or((0, 0));
        return Err(GraphError::MismatchedEdges {
            index,
            a: at(a),
            b: at(b),
        });
    }
    a.arcs
        .iter()
        .zip(&b.arcs)
        .enumerate()
        .map(|(i, (x, y))| {
            if (x.0, x.1) != (y.0, y.1) {
                Err(GraphError::MismatchedEdges {
                    index: i,
                    a: (x.0 + 1, x.1 + 1),
                    b: (y.0 + 1, y.1 + 1),
                })
            } else {
                Ok((x.0, x.1, x.2, y.2))
            }
        })
        .collect()
}

/// Loads a graph from a cost1 `.gr` file, a cost2 `.gr` file listing the same
/// arcs in the same order, and an optional `.co` coordinate file.
pub fn load_dimacs(cost1_file: &Path, cost2_file: &Path, coord_file: Option<&Path>) -> Result<Graph, GraphError> {
    let a = parse_gr(open(cost1_file)?, cost1_file)?;
    let b = parse_gr(open(cost2_file)?, cost2_file)?;
    let edges = merge_gr(&a, &b)?;
    let g = Graph::from_edges(a.state_count, &edges)?;
    match coord_file {
        Some(p) => {
            let coords = parse_co(open(p)?, p, a.state_count)?;
            Ok(g.with_coords(coords))
        }
        None => Ok(g),
    }
}

/// Writes one attribute of the graph as a DIMACS `.gr` stream (1-based ids).
pub fn write_gr<W: Write>(g: &Graph, attr: Attr, mut out: W) -> std::io::Result<()> {
    writeln!(out, "c bi-attribute graph, attribute {}", attr.index() + 1)?;
    writeln!(out, "p sp {} {}", g.state_count(), g.edge_count())?;
    for (u, v, c1, c2) in g.edges() {
        let w = if attr == Attr::Cost1 { c1 } else { c2 };
        writeln!(out, "a {} {} {}", u + 1, v + 1, w)?;
    }
    Ok(())
}

/// Writes coordinates as a DIMACS `.co` stream.
pub fn write_co<W: Write>(coords: &[(i32, i32)], mut out: W) -> std::io::Result<()> {
    writeln!(out, "p aux sp co {}", coords.len())?;
    for (i, (x, y)) in coords.iter().enumerate() {
        writeln!(out, "v {} {} {}", i + 1, x, y)?;
    }
    Ok(())
}

const EARTH_RADIUS_M: f64 = 6_371_000.0;

fn haversine(a: (i32, i32), b: (i32, i32)) -> f64 {
    let rad = |v: i32| (v as f64 / 1e6).to_radians();
    let (lon1, lat1, lon2, lat2) = (rad(a.0), rad(a.1), rad(b.0), rad(b.1));
    let s = ((lat2 - lat1) / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * ((lon2 - lon1) / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_M * s.sqrt().min(1.0).asin()
}

/// Great-circle lower bounds on either attribute.
///
/// Each attribute gets a scale factor equal to the smallest cost-per-metre
/// ratio over all edges. Scaled great-circle distance then never exceeds
/// the cost of any edge, which makes the bound consistent by the triangle
/// inequality.
#[derive(Debug, Clone)]
pub struct GeoHeuristic {
    coords: Vec<(i32, i32)>,
    scale: [f64; 2],
}

impl GeoHeuristic {
    pub fn new(g: &Graph) -> Option<GeoHeuristic> {
        let coords = g.coords()?.to_vec();
        let mut scale = [f64::INFINITY; 2];
        for (u, v, c1, c2) in g.edges() {
            let d = haversine(coords[u as usize], coords[v as usize]);
            if d > 0.0 {
                scale[0] = scale[0].min(c1 as f64 / d);
                scale[1] = scale[1].min(c2 as f64 / d);
            }
        }
        for s in &mut scale {
            if !s.is_finite() {
                *s = 0.0;
            }
        }
        Some(GeoHeuristic { coords, scale })
    }

    /// Lower bound on `attr` for any path between `u` and `v`.
    pub fn bound(&self, attr: Attr, u: StateId, v: StateId) -> Cost {
        let d = haversine(self.coords[u as usize], self.coords[v as usize]);
        let x = self.scale[attr.index()] * d * (1.0 - 1e-9);
        if x <= 0.0 {
            0
        } else {
            x.floor() as Cost
        }
    }
}

/// The five-state example graph used throughout the documentation and tests.
/// States are `u_s = 0`, `u_1 = 1`, `u_2 = 2`, `u_3 = 3`, `u_g = 4`.
pub fn example_graph() -> Graph {
    Graph::from_edges(
        5,
        &[
            (0, 1, 1, 4),
            (0, 2, 3, 4),
            (0, 3, 3, 1),
            (1, 2, 1, 2),
            (3, 2, 2, 1),
            (1, 4, 2, 4),
            (2, 4, 2, 1),
            (3, 4, 3, 3),
        ],
    )
    .expect("static graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successors_of_example_graph() {
        let g = example_graph();
        let fwd: Vec<_> = g.successors(0, Direction::Forward).iter().map(|a| (a.target, a.cost1, a.cost2)).collect();
        assert_eq!(fwd, vec![(1, 1, 4), (2, 3, 4), (3, 3, 1)]);
        assert!(g.successors(4, Direction::Forward).is_empty());
        let bwd: Vec<_> = g.successors(4, Direction::Backward).iter().map(|a| (a.target, a.cost1, a.cost2)).collect();
        assert_eq!(bwd, vec![(1, 2, 4), (2, 2, 1), (3, 3, 3)]);
    }

    #[test]
    fn duplicates_keep_lexicographic_minimum() {
        let g = Graph::from_edges(3, &[(0, 1, 5, 7), (0, 1, 3, 9), (1, 2, 1, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge(0, 1), Some(Arc { target: 1, cost1: 3, cost2: 9 }));
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2, 1, 1)]),
            Err(GraphError::StateOutOfRange { .. })
        ));
    }

    #[test]
    fn random_graph_is_strongly_connected_cycle_plus_extras() {
        let g = random_graph(20, 60, 10, 3);
        assert_eq!(g.edge_count(), 60);
        assert!(g.edges().all(|(u, v, c1, c2)| u != v && (1..=10).contains(&c1) && (1..=10).contains(&c2)));
    }

    #[test]
    fn grid_graph_links_neighbours_both_ways() {
        let g = grid_graph(4, 3, 9, 1);
        assert_eq!(g.state_count(), 12);
        // 3 rows of 3 horizontal links and 4 columns of 2 vertical links, each both ways.
        assert_eq!(g.edge_count(), 2 * (3 * 3 + 4 * 2));
        assert!(g.edge(5, 6).is_some() && g.edge(6, 5).is_some() && g.edge(5, 9).is_some());
        assert!(g.edge(3, 4).is_none());
        assert_eq!(grid_graph(4, 3, 9, 1).edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn geo_heuristic_never_exceeds_edge_costs() {
        let g = example_graph().with_coords(vec![(0, 0), (1000, 0), (2000, 500), (500, -800), (3000, 0)]);
        let geo = GeoHeuristic::new(&g).unwrap();
        for (u, v, c1, c2) in g.edges() {
            assert!(geo.bound(Attr::Cost1, u, v) <= c1 as Cost);
            assert!(geo.bound(Attr::Cost2, u, v) <= c2 as Cost);
        }
    }
}
