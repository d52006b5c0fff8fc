//! Hexagonal patches `H_n` and the decorated lower-bound graphs `G_n`.
//!
//! Hexagons are flat-topped and addressed by axial coordinates `(q, r)`; the
//! patch with `n` rings holds every hexagon within hex distance `n - 1` of the
//! origin. Corners are placed on the integer grid `X = 3q ± {1, 2}`,
//! `Y = 2r + q + {-1, 0, 1}`, which identifies shared corners exactly.
//!
//! Each honeycomb vertex belongs to exactly one horizontal edge. That edge is
//! the vertex's lattice cell, so a vertex is addressed by the cell's axial
//! coordinate plus a side bit (0 = left end, 1 = right end). Horizontal edges
//! are the intra-cell edges; every hexagon has exactly two of them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::graph::{cycle, Graph};

/// Lattice address of a honeycomb vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HexCoord {
    pub q: i64,
    pub r: i64,
    pub side: u8,
}

impl HexCoord {
    fn from_grid(x: i64, y: i64) -> Self {
        let (mid, side) = if (x + 1).rem_euclid(3) == 0 {
            (x + 1, 0)
        } else {
            debug_assert_eq!((x - 1).rem_euclid(3), 0);
            (x - 1, 1)
        };
        let q = mid / 3;
        let r = (y + 1 - q).div_euclid(2);
        HexCoord { q, r, side }
    }
}

#[derive(Debug, Clone)]
pub struct HexPatch {
    pub rings: usize,
    pub graph: Graph,
    pub coords: Vec<HexCoord>,
    /// `boundary[v]` is true iff `v` lies on the unbounded face.
    pub boundary: Vec<bool>,
    /// Intra-cell edges `(u, v)` with `u < v`, sorted.
    pub horizontal_edges: Vec<(usize, usize)>,
    /// Corner ids of each hexagon, counter-clockwise from the east corner,
    /// hexagons in spiral order.
    pub hexagons: Vec<[usize; 6]>,
}

impl HexPatch {
    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.boundary[v]).collect()
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| !self.boundary[v]).collect()
    }
}

const AXIAL_DIRS: [(i64, i64); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

/// Hexagon centres in spiral order: the origin, then each ring in turn.
fn spiral(rings: usize) -> Vec<(i64, i64)> {
    let mut cells = vec![(0, 0)];
    for k in 1..rings as i64 {
        let (dq, dr) = AXIAL_DIRS[4];
        let mut cur = (dq * k, dr * k);
        for &(sq, sr) in &AXIAL_DIRS {
            for _ in 0..k {
                cells.push(cur);
                cur = (cur.0 + sq, cur.1 + sr);
            }
        }
    }
    cells
}

/// Builds the hexagonal patch with `rings` concentric rings of hexagons.
pub fn hex_patch(rings: usize) -> Result<HexPatch, ConstructionError> {
    if rings == 0 {
        return Err(ConstructionError::InvalidRings(rings));
    }
    let corner_offsets: [(i64, i64); 6] = [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)];

    let mut ids: HashMap<(i64, i64), usize> = HashMap::new();
    let mut grid_pos: Vec<(i64, i64)> = Vec::new();
    let mut incidence: Vec<u8> = Vec::new();
    let mut hexagons = Vec::new();
    let mut edges = Vec::new();

    for (q, r) in spiral(rings) {
        let (cx, cy) = (3 * q, 2 * r + q);
        let mut corners = [0usize; 6];
        for (i, &(dx, dy)) in corner_offsets.iter().enumerate() {
            let key = (cx + dx, cy + dy);
            let id = *ids.entry(key).or_insert_with(|| {
                grid_pos.push(key);
                incidence.push(0);
                grid_pos.len() - 1
            });
            incidence[id] += 1;
            corners[i] = id;
        }
        for i in 0..6 {
            let (a, b) = (corners[i], corners[(i + 1) % 6]);
            edges.push((a.min(b), a.max(b)));
        }
        hexagons.push(corners);
    }
    edges.sort_unstable();
    edges.dedup();

    let graph = Graph::new(grid_pos.len(), &edges).expect("patch edges are simple");
    let horizontal_edges: Vec<_> = edges
        .iter()
        .copied()
        .filter(|&(u, v)| grid_pos[u].1 == grid_pos[v].1)
        .collect();
    let coords = grid_pos.iter().map(|&(x, y)| HexCoord::from_grid(x, y)).collect();
    // an interior honeycomb vertex sees all three of its hexagons in the patch
    let boundary = incidence.iter().map(|&c| c < 3).collect();

    Ok(HexPatch {
        rings,
        graph,
        coords,
        boundary,
        horizontal_edges,
        hexagons,
    })
}

/// Vertex classes of the lower-bound graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    /// Hexagon vertex not on the unbounded face (V_I).
    HexInterior,
    /// Hexagon vertex on the unbounded face (V_O).
    HexBoundary,
    /// Pendant `a_v` attached to a hexagon vertex (A).
    Pendant,
    /// Vertex subdividing a horizontal edge (B).
    Subdivision,
    /// Vertex of a disjoint extra cycle.
    Cycle,
}

impl VertexClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexClass::HexInterior => "hex_interior",
            VertexClass::HexBoundary => "hex_boundary",
            VertexClass::Pendant => "pendant",
            VertexClass::Subdivision => "subdivision",
            VertexClass::Cycle => "cycle",
        }
    }
}

/// `G_n` (optionally with a disjoint cycle) together with its labelling.
///
/// Numbering: hexagon vertices `0..6n²` in patch order, then pendants
/// (`a_v = 6n² + v`), then subdivision vertices in horizontal-edge order,
/// then the extra cycle if any.
#[derive(Debug, Clone)]
pub struct ConstructionGraph {
    pub rings: usize,
    pub graph: Graph,
    pub class_of: Vec<VertexClass>,
    /// `pendant_of[v]` is `Some(a_v)` for hexagon vertices.
    pub pendant_of: Vec<Option<usize>>,
    /// Lattice coordinates of hexagon vertices.
    pub coords: Vec<Option<HexCoord>>,
    pub patch: HexPatch,
    pub cycle_len: Option<usize>,
}

impl ConstructionGraph {
    pub fn class_members(&self, class: VertexClass) -> Vec<usize> {
        (0..self.graph.n())
            .filter(|&v| self.class_of[v] == class)
            .collect()
    }

    pub fn count(&self, class: VertexClass) -> usize {
        self.class_of.iter().filter(|&&c| c == class).count()
    }

    /// Class sizes measured on the generated graph (the extra cycle, if any,
    /// is excluded from the totals).
    pub fn measured_counts(&self) -> ClassCounts {
        let cyc = self.cycle_len.unwrap_or(0);
        ClassCounts {
            pendants: self.count(VertexClass::Pendant),
            subdivisions: self.count(VertexClass::Subdivision),
            interior: self.count(VertexClass::HexInterior),
            boundary: self.count(VertexClass::HexBoundary),
            vertices: self.graph.n() - cyc,
            edges: self.graph.m() - cyc,
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.class_of.iter().map(|c| c.as_str().to_string()).collect()
    }
}

/// Builds `G_n`: every horizontal edge of `H_n` subdivided once and a
/// pendant attached to every hexagon vertex.
pub fn lower_bound_graph(rings: usize) -> Result<ConstructionGraph, ConstructionError> {
    let patch = hex_patch(rings)?;
    let h = patch.graph.n();
    let mut edges = Vec::with_capacity(18 * rings * rings);
    let mut next = 2 * h;
    for (u, v) in patch.graph.edges() {
        if patch.horizontal_edges.binary_search(&(u, v)).is_ok() {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        } else {
            edges.push((u, v));
        }
    }
    for v in 0..h {
        edges.push((v, h + v));
    }
    let graph = Graph::new(next, &edges).expect("construction is simple");

    let mut class_of = Vec::with_capacity(next);
    class_of.extend(patch.boundary.iter().map(|&b| {
        if b {
            VertexClass::HexBoundary
        } else {
            VertexClass::HexInterior
        }
    }));
    class_of.extend(std::iter::repeat_n(VertexClass::Pendant, h));
    class_of.extend(std::iter::repeat_n(VertexClass::Subdivision, next - 2 * h));

    let mut pendant_of = vec![None; next];
    let mut coords = vec![None; next];
    for v in 0..h {
        pendant_of[v] = Some(h + v);
        coords[v] = Some(patch.coords[v]);
    }

    Ok(ConstructionGraph {
        rings,
        graph,
        class_of,
        pendant_of,
        coords,
        patch,
        cycle_len: None,
    })
}

/// `G_n ∪ C_k` for `3 <= k <= 8`.
pub fn with_cycle(rings: usize, k: usize) -> Result<ConstructionGraph, ConstructionError> {
    if !(3..=8).contains(&k) {
        return Err(ConstructionError::CycleLength(k));
    }
    let mut c = lower_bound_graph(rings)?;
    let ck = cycle(k).expect("k >= 3");
    c.graph = c.graph.disjoint_union(&ck);
    c.class_of.extend(std::iter::repeat_n(VertexClass::Cycle, k));
    c.pendant_of.extend(std::iter::repeat_n(None, k));
    c.coords.extend(std::iter::repeat_n(None, k));
    c.cycle_len = Some(k);
    Ok(c)
}

/// Closed-form sizes of `G_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    /// |A| = 6n²
    pub pendants: usize,
    /// |B| = 3n² − n
    pub subdivisions: usize,
    /// |V_I| = 6n² − 12n + 6
    pub interior: usize,
    /// |V_O| = 12n − 6
    pub boundary: usize,
    pub vertices: usize,
    pub edges: usize,
}

/// # Panics
/// If `rings == 0`.
pub fn class_counts(rings: usize) -> ClassCounts {
    assert!(rings >= 1, "ring count must be at least 1");
    let n = rings;
    ClassCounts {
        pendants: 6 * n * n,
        subdivisions: 3 * n * n - n,
        interior: 6 * (n - 1) * (n - 1),
        boundary: 12 * n - 6,
        vertices: 15 * n * n - n,
        edges: 18 * n * n - 4 * n,
    }
}

/// `|B| + |V_O| + 1 < |V_I|`: after Bob has marked all of `B ∪ V_O`, at
/// least two interior vertices are still unmarked.
pub fn counting_inequality_holds(rings: usize) -> bool {
    let c = class_counts(rings);
    c.subdivisions + c.boundary + 1 < c.interior
}

/// Smallest ring count for which [`counting_inequality_holds`].
pub fn first_counting_inequality_ring() -> usize {
    (1..).find(|&n| counting_inequality_holds(n)).expect("holds eventually")
}
