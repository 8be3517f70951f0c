//! P1 triangulations of the triangle τ and of the octagon.
//!
//! τ is subdivided on a structured barycentric grid in Klein coordinates,
//! where geodesics are straight, so every node on a side of τ lies exactly on
//! the geodesic side. The octagon mesh is the union of the 96 transported
//! copies of one τ-mesh, welded at shared nodes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hypgeo::{self, DiscPoint, Isometry, C64};
use crate::lattice::{self, Octagon, Tessellation, Triangle238};

/// Weld tolerance for coincident nodes.
pub const WELD_TOL: f64 = 1e-9;
/// Tolerance for locating transported or paired nodes.
pub const MATCH_TOL: f64 = 1e-8;
/// Lower bound on element quality `4√3 A / Σ l²` (1 for equilateral).
pub const MIN_QUALITY: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeTag {
    PQ,
    QR,
    RP,
    Side(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEdge {
    pub nodes: [usize; 2],
    pub tag: EdgeTag,
}

/// How an octagon mesh was assembled from tiles: node `j` of the τ-mesh on
/// tile `k` is global node `tile_nodes[k][j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transport {
    pub tile_nodes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub nodes: Vec<DiscPoint>,
    /// Counterclockwise node triples.
    pub elements: Vec<[usize; 3]>,
    pub boundary_edges: Vec<BoundaryEdge>,
    /// Periodic identifications `(a, b)`: node `a` on side `k + 4` is carried
    /// to node `b` on side `k` by `g_k`. Octagon vertices appear in several pairs.
    pub pairing: Option<Vec<(usize, usize)>>,
    /// Subdivision level of τ.
    pub level: usize,
    pub transport: Option<Transport>,
}

fn quality(a: C64, b: C64, c: C64) -> f64 {
    let area = signed_area(a, b, c).abs();
    let s = (b - a).norm_sqr() + (c - b).norm_sqr() + (a - c).norm_sqr();
    4.0 * 3f64.sqrt() * area / s
}

#[inline]
pub fn signed_area(a: C64, b: C64, c: C64) -> f64 {
    0.5 * ((b - a).re * (c - a).im - (b - a).im * (c - a).re)
}

impl Mesh {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn point(&self, n: usize) -> C64 {
        self.nodes[n].0
    }

    pub fn corners(&self, e: usize) -> [C64; 3] {
        self.elements[e].map(|n| self.nodes[n].0)
    }

    pub fn min_quality(&self) -> f64 {
        (0..self.elements.len())
            .map(|e| {
                let [a, b, c] = self.corners(e);
                quality(a, b, c)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn euclidean_area(&self) -> f64 {
        (0..self.elements.len())
            .map(|e| {
                let [a, b, c] = self.corners(e);
                signed_area(a, b, c)
            })
            .sum()
    }

    /// Sorted edge → number of incident elements.
    pub fn edge_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::with_capacity(self.elements.len() * 2);
        for el in &self.elements {
            for k in 0..3 {
                let (a, b) = (el[k], el[(k + 1) % 3]);
                *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        m
    }

    /// Conformity, orientation and tagging checks.
    pub fn validate(&self) -> Result<()> {
        for (e, el) in self.elements.iter().enumerate() {
            let [a, b, c] = self.corners(e);
            if signed_area(a, b, c) <= 0.0 {
                return Err(Error::Mesh(format!("element {e} {el:?} is not counterclockwise")));
            }
        }
        let counts = self.edge_counts();
        if let Some((edge, n)) = counts.iter().find(|(_, &n)| n > 2) {
            return Err(Error::Mesh(format!("edge {edge:?} shared by {n} elements")));
        }
        let boundary = counts.values().filter(|&&n| n == 1).count();
        if boundary != self.boundary_edges.len() {
            return Err(Error::Mesh(format!(
                "{boundary} boundary edges found, {} tagged",
                self.boundary_edges.len()
            )));
        }
        for be in &self.boundary_edges {
            let [a, b] = be.nodes;
            if counts.get(&(a.min(b), a.max(b))) != Some(&1) {
                return Err(Error::Mesh(format!("tagged edge {a}-{b} is not a boundary edge")));
            }
        }
        Ok(())
    }

    /// Nodes carrying a boundary edge with the given tag.
    pub fn nodes_with_tag(&self, tag: EdgeTag) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .boundary_edges
            .iter()
            .filter(|e| e.tag == tag)
            .flat_map(|e| e.nodes)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn boundary_nodes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.boundary_edges.iter().flat_map(|e| e.nodes).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// For each node, the smallest node index it is periodically identified with.
    pub fn periodic_masters(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        if let Some(pairs) = &self.pairing {
            for &(a, b) in pairs {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        (0..self.nodes.len()).map(|n| find(&mut parent, n)).collect()
    }

    /// Partner of a boundary node under the side pairings, for nodes lying on
    /// exactly one side (octagon vertices are excluded).
    pub fn partner(&self, n: usize) -> Option<usize> {
        let pairs = self.pairing.as_ref()?;
        let hits: Vec<usize> = pairs
            .iter()
            .filter_map(|&(a, b)| if a == n { Some(b) } else if b == n { Some(a) } else { None })
            .collect();
        (hits.len() == 1).then(|| hits[0])
    }

    /// Node permutation induced by a disc isometry that maps the domain to
    /// itself modulo Γ: node `n` goes to the node at `wrap(g(n))`.
    pub fn node_permutation(&self, g: &Isometry) -> Result<Vec<usize>> {
        let index = NodeIndex::new(self);
        self.nodes
            .iter()
            .map(|z| {
                let w = lattice::wrap(DiscPoint(g.apply_c(z.0)))?.point.0;
                index.find(w, MATCH_TOL)?.ok_or_else(|| {
                    Error::Mesh(format!("no node at the image {w} of {}", z.0))
                })
            })
            .collect()
    }

    /// Node permutation for group element `g` (a tile index), read off the
    /// transport maps: node `j` of tile `k` goes to node `j` of tile `g·k`.
    pub fn tile_permutation(&self, perm: &[u8]) -> Result<Vec<usize>> {
        let t = self
            .transport
            .as_ref()
            .ok_or_else(|| Error::Mesh("mesh has no tile transport".into()))?;
        let mut out = vec![usize::MAX; self.nodes.len()];
        for (k, nodes) in t.tile_nodes.iter().enumerate() {
            let target = &t.tile_nodes[perm[k] as usize];
            for (j, &n) in nodes.iter().enumerate() {
                out[n] = target[j];
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: Mesh = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    /// SHA-256 of the node coordinates and connectivity.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for z in &self.nodes {
            h.update(z.0.re.to_le_bytes());
            h.update(z.0.im.to_le_bytes());
        }
        for el in &self.elements {
            for n in el {
                h.update((*n as u64).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

/// Spatial hash over mesh nodes.
pub struct NodeIndex {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<(usize, C64)>>,
}

impl NodeIndex {
    pub fn new(mesh: &Mesh) -> Self {
        let mut idx = NodeIndex::empty(1e-4);
        for (n, z) in mesh.nodes.iter().enumerate() {
            idx.insert(n, z.0);
        }
        idx
    }

    pub fn empty(cell: f64) -> Self {
        NodeIndex { cell, buckets: HashMap::new() }
    }

    fn key(&self, z: C64) -> (i64, i64) {
        ((z.re / self.cell).floor() as i64, (z.im / self.cell).floor() as i64)
    }

    pub fn insert(&mut self, n: usize, z: C64) {
        let k = self.key(z);
        self.buckets.entry(k).or_default().push((n, z));
    }

    /// The unique node within `tol` of `z`; two candidates is an error.
    pub fn find(&self, z: C64, tol: f64) -> Result<Option<usize>> {
        let (kx, ky) = self.key(z);
        let mut hit = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(b) = self.buckets.get(&(kx + dx, ky + dy)) {
                    for &(n, w) in b {
                        if (w - z).norm() <= tol {
                            if hit.is_some_and(|h| h != n) {
                                return Err(Error::Mesh(format!("ambiguous weld at {z}")));
                            }
                            hit = Some(n);
                        }
                    }
                }
            }
        }
        Ok(hit)
    }
}

/// Number of nodes of the level-`n` τ-mesh.
pub fn triangle_nodes(level: usize) -> usize {
    (level + 1) * (level + 2) / 2
}

/// Level whose node count is closest to `target`.
pub fn triangle_level_for(target: usize) -> usize {
    (1..2000)
        .min_by_key(|&n| (triangle_nodes(n) as i64 - target as i64).abs())
        .unwrap_or(1)
}

fn local_index(level: usize, i: usize, j: usize) -> usize {
    // rows of constant j, i = 0..=level-j
    let before: usize = (0..j).map(|r| level + 1 - r).sum();
    before + i
}

/// Structured τ-mesh at subdivision level `level ≥ 1`.
pub fn mesh_triangle_level(level: usize) -> Result<Mesh> {
    if level == 0 {
        return Err(Error::Mesh("level must be at least 1".into()));
    }
    let tri = lattice::build_triangle();
    mesh_tau(&tri, level)
}

fn mesh_tau(tri: &Triangle238, n: usize) -> Result<Mesh> {
    let [p, q, r] = tri.vertices().map(hypgeo::poincare_to_klein);
    let mut nodes = Vec::with_capacity(triangle_nodes(n));
    for j in 0..=n {
        for i in 0..=n - j {
            let k = p + (q - p) * (i as f64 / n as f64) + (r - p) * (j as f64 / n as f64);
            let z = match (i, j) {
                (0, 0) => tri.p,
                (i, 0) if i == n => tri.q,
                (0, j) if j == n => tri.r,
                _ => hypgeo::klein_to_poincare(k),
            };
            nodes.push(DiscPoint(z));
        }
    }
    let id = |i, j| local_index(n, i, j);
    let mut elements = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n - j {
            elements.push([id(i, j), id(i + 1, j), id(i, j + 1)]);
            if i + j + 1 < n {
                elements.push([id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
    }
    let mut boundary_edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        boundary_edges.push(BoundaryEdge { nodes: [id(i, 0), id(i + 1, 0)], tag: EdgeTag::PQ });
        boundary_edges.push(BoundaryEdge { nodes: [id(n - i, i), id(n - i - 1, i + 1)], tag: EdgeTag::QR });
        boundary_edges.push(BoundaryEdge { nodes: [id(0, i + 1), id(0, i)], tag: EdgeTag::RP });
    }
    let mesh = Mesh { nodes, elements, boundary_edges, pairing: None, level: n, transport: None };
    mesh.validate()?;
    Ok(mesh)
}

/// τ-mesh with roughly `target_nodes` nodes (at least 10).
pub fn mesh_triangle(target_nodes: usize) -> Result<Mesh> {
    if target_nodes < 10 {
        return Err(Error::Mesh(format!("target {target_nodes} below the minimum of 10")));
    }
    let level = triangle_level_for(target_nodes);
    let mesh = mesh_triangle_level(level)?;
    if mesh.min_quality() >= MIN_QUALITY {
        return Ok(mesh);
    }
    let retry = mesh_triangle_level(2 * level)?;
    if retry.min_quality() >= MIN_QUALITY {
        Ok(retry)
    } else {
        Err(Error::Mesh(format!("element quality {} below {MIN_QUALITY}", retry.min_quality())))
    }
}

/// Octagon mesh from the level-`refinement + 1` τ-mesh transported by all 96
/// tiles of the tessellation.
pub fn mesh_octagon(refinement: usize) -> Result<Mesh> {
    let tess = lattice::build_tessellation()?;
    mesh_octagon_with(&tess, refinement)
}

pub fn mesh_octagon_with(tess: &Tessellation, refinement: usize) -> Result<Mesh> {
    let level = refinement + 1;
    let tau = mesh_tau(&tess.triangle, level)?;
    let mut index = NodeIndex::empty(1e-4);
    let mut nodes: Vec<DiscPoint> = Vec::new();
    let mut tile_nodes = Vec::with_capacity(tess.tiles.len());
    let mut elements = Vec::with_capacity(tess.tiles.len() * tau.elements.len());
    for tile in &tess.tiles {
        let map: Vec<usize> = tau
            .nodes
            .iter()
            .map(|x| {
                let z = tile.iso.apply_c(x.0);
                Ok(match index.find(z, WELD_TOL)? {
                    Some(n) => n,
                    None => {
                        let n = nodes.len();
                        nodes.push(DiscPoint(z));
                        index.insert(n, z);
                        n
                    }
                })
            })
            .collect::<Result<_>>()?;
        for el in &tau.elements {
            let mut e = el.map(|j| map[j]);
            if tile.iso.reversing {
                e.swap(1, 2);
            }
            elements.push(e);
        }
        tile_nodes.push(map);
    }
    let octagon = lattice::build_octagon();
    let mut mesh = Mesh {
        nodes,
        elements,
        boundary_edges: Vec::new(),
        pairing: None,
        level,
        transport: Some(Transport { tile_nodes }),
    };
    mesh.boundary_edges = octagon_boundary(&mesh, &octagon)?;
    mesh.pairing = Some(octagon_pairing(&mesh, &octagon, &index)?);
    mesh.validate()?;
    Ok(mesh)
}

fn octagon_boundary(mesh: &Mesh, octagon: &Octagon) -> Result<Vec<BoundaryEdge>> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // keep element orientation for boundary edges
    let counts = mesh.edge_counts();
    for el in &mesh.elements {
        for k in 0..3 {
            let (a, b) = (el[k], el[(k + 1) % 3]);
            if counts[&(a.min(b), a.max(b))] == 1 {
                edges.push((a, b));
            }
        }
    }
    edges
        .into_iter()
        .map(|(a, b)| {
            let (sa, da) = octagon.nearest_side(mesh.point(a));
            let (sb, db) = octagon.nearest_side(mesh.point(b));
            let mid = (mesh.point(a) + mesh.point(b)) * 0.5;
            let (side, _) = octagon.nearest_side(mid);
            if da > MATCH_TOL || db > MATCH_TOL || (sa != side && sb != side) {
                return Err(Error::Mesh(format!("boundary edge {a}-{b} is not on an octagon side")));
            }
            Ok(BoundaryEdge { nodes: [a, b], tag: EdgeTag::Side(side) })
        })
        .collect()
}

fn octagon_pairing(mesh: &Mesh, octagon: &Octagon, index: &NodeIndex) -> Result<Vec<(usize, usize)>> {
    let gens = lattice::build_generators();
    let mut pairs = Vec::new();
    for &(side, opp, j) in &octagon.side_pairing {
        let on_side = mesh.nodes_with_tag(EdgeTag::Side(side));
        for n in mesh.nodes_with_tag(EdgeTag::Side(opp)) {
            let w = gens.g[j].apply_c(mesh.point(n));
            let m = index
                .find(w, MATCH_TOL)?
                .ok_or_else(|| Error::Mesh(format!("node {n} on side {opp} has no partner")))?;
            if on_side.binary_search(&m).is_err() {
                return Err(Error::Mesh(format!("partner of node {n} is not on side {side}")));
            }
            pairs.push((n, m));
        }
    }
    Ok(pairs)
}

/// Refinement whose octagon mesh node count is closest to `target`.
pub fn octagon_refinement_for(target: usize) -> Result<usize> {
    let tess = lattice::build_tessellation()?;
    let mut best = (0usize, usize::MAX);
    for r in 0..40 {
        let n = octagon_node_count(&tess, r)?;
        let d = n.abs_diff(target);
        if d < best.1 {
            best = (r, d);
        }
        if n > target {
            break;
        }
    }
    Ok(best.0)
}

fn octagon_node_count(tess: &Tessellation, refinement: usize) -> Result<usize> {
    let tau = mesh_tau(&tess.triangle, refinement + 1)?;
    let mut index = NodeIndex::empty(1e-4);
    let mut count = 0;
    for tile in &tess.tiles {
        for x in &tau.nodes {
            let z = tile.iso.apply_c(x.0);
            if index.find(z, WELD_TOL)?.is_none() {
                index.insert(count, z);
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Point location with barycentric coordinates for P1 interpolation.
pub struct Locator<'a> {
    mesh: &'a Mesh,
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl<'a> Locator<'a> {
    pub fn new(mesh: &'a Mesh) -> Self {
        let mean_h = (mesh.euclidean_area().abs() / mesh.elements.len().max(1) as f64).sqrt();
        let cell = (2.0 * mean_h).max(1e-6);
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for e in 0..mesh.elements.len() {
            let c = mesh.corners(e);
            let (x0, x1) = c.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, z| (a.0.min(z.re), a.1.max(z.re)));
            let (y0, y1) = c.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, z| (a.0.min(z.im), a.1.max(z.im)));
            for kx in (x0 / cell).floor() as i64..=(x1 / cell).floor() as i64 {
                for ky in (y0 / cell).floor() as i64..=(y1 / cell).floor() as i64 {
                    buckets.entry((kx, ky)).or_default().push(e);
                }
            }
        }
        Locator { mesh, cell, buckets }
    }

    /// Element containing `z` and its barycentric coordinates.
    pub fn locate(&self, z: C64) -> Option<(usize, [f64; 3])> {
        let (kx, ky) = ((z.re / self.cell).floor() as i64, (z.im / self.cell).floor() as i64);
        let mut best: Option<(usize, [f64; 3], f64)> = None;
        // neighbouring buckets catch points a rounding error away from an edge
        let near = (kx - 1..=kx + 1).flat_map(|x| (ky - 1..=ky + 1).map(move |y| (x, y)));
        for &e in near.filter_map(|k| self.buckets.get(&k)).flatten() {
            let [a, b, c] = self.mesh.corners(e);
            let area = signed_area(a, b, c);
            let l = [signed_area(z, b, c) / area, signed_area(a, z, c) / area, signed_area(a, b, z) / area];
            let worst = l.iter().copied().fold(f64::INFINITY, f64::min);
            if best.as_ref().is_none_or(|bst| worst > bst.2) {
                best = Some((e, l, worst));
            }
        }
        best.filter(|b| b.2 > -1e-9).map(|b| (b.0, b.1))
    }

    pub fn interpolate(&self, values: &[f64], z: C64) -> Option<f64> {
        let (e, l) = self.locate(z)?;
        let el = self.mesh.elements[e];
        Some(l[0] * values[el[0]] + l[1] * values[el[1]] + l[2] * values[el[2]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_polygon_area(n: usize) -> f64 {
        // P, Q straight; Q→R along the geodesic; R→P straight
        let t = lattice::build_triangle();
        let mut pts = vec![t.p];
        for k in 0..=n {
            pts.push(hypgeo::geodesic_point(t.q, t.r, k as f64 / n as f64));
        }
        let m = pts.len();
        (0..m).map(|k| {
            let (a, b) = (pts[k], pts[(k + 1) % m]);
            0.5 * (a.re * b.im - a.im * b.re)
        }).sum()
    }

    #[test]
    fn triangle_mesh_counts_and_tags() {
        let m = mesh_triangle(2995).unwrap();
        assert!((m.num_nodes() as f64 - 2995.0).abs() / 2995.0 < 0.2);
        assert!(m.min_quality() >= MIN_QUALITY);
        for tag in [EdgeTag::PQ, EdgeTag::QR, EdgeTag::RP] {
            assert_eq!(m.nodes_with_tag(tag).len(), m.level + 1);
        }
        let t = lattice::build_triangle();
        let side = lattice::GeodesicArc { a: t.q, b: t.r };
        for n in m.nodes_with_tag(EdgeTag::QR) {
            assert!(side.distance_to_line(m.point(n)) < 1e-12);
        }
    }

    #[test]
    fn coarse_triangle_mesh() {
        let m = mesh_triangle(10).unwrap();
        assert_eq!(m.num_nodes(), 10);
        assert_eq!(m.elements.len(), 9);
        m.validate().unwrap();
    }

    #[test]
    fn triangle_area_matches_polygon_oracle() {
        let m = mesh_triangle(2995).unwrap();
        let oracle = tau_polygon_area(4000);
        assert!(((m.euclidean_area() - oracle) / oracle).abs() < 0.01);
    }

    #[test]
    fn minimal_octagon_mesh() {
        let m = mesh_octagon(0).unwrap();
        assert_eq!(m.elements.len(), 96);
        m.validate().unwrap();
        // Euler characteristic of a disc: V - E + F = 1, with 4 tile edges per side
        assert_eq!(m.boundary_edges.len(), 32);
        let edges = (3 * 96 + 32) / 2;
        assert_eq!(m.num_nodes() as i64 - edges as i64 + 96, 1);
    }

    #[test]
    fn octagon_pairing_and_symmetry() {
        let m = mesh_octagon(3).unwrap();
        let pairs = m.pairing.as_ref().unwrap();
        let octagon = lattice::build_octagon();
        for b in m.boundary_nodes() {
            assert!(pairs.iter().any(|&(x, y)| x == b || y == b), "node {b} unpaired");
            if let Some(p) = m.partner(b) {
                assert_eq!(m.partner(p), Some(b));
                let r0 = hypgeo::dist_c(C64::new(0.0, 0.0), m.point(b));
                let r1 = hypgeo::dist_c(C64::new(0.0, 0.0), m.point(p));
                assert!((r0 - r1).abs() < 1e-8);
            } else {
                assert!(octagon.vertices.iter().any(|v| (v - m.point(b)).norm() < 1e-9));
            }
        }
        // D8 and kappa map the mesh to itself by exact node permutations
        for g in [Isometry::rotation(std::f64::consts::FRAC_PI_4), Isometry::conjugation()] {
            let perm = m.node_permutation(&g).unwrap();
            let mut seen = vec![false; m.num_nodes()];
            for &p in &perm {
                seen[p] = true;
            }
            // boundary nodes may land on their partner, so compare modulo pairing
            let masters = m.periodic_masters();
            let count = seen.iter().filter(|&&s| s).count();
            assert!(count >= m.num_nodes() - m.boundary_nodes().len());
            let mut edges: Vec<(usize, usize)> = m
                .elements
                .iter()
                .flat_map(|e| (0..3).map(move |k| (e[k], e[(k + 1) % 3])))
                .map(|(a, b)| (masters[perm[a]].min(masters[perm[b]]), masters[perm[a]].max(masters[perm[b]])))
                .collect();
            let mut orig: Vec<(usize, usize)> = m
                .elements
                .iter()
                .flat_map(|e| (0..3).map(move |k| (e[k], e[(k + 1) % 3])))
                .map(|(a, b)| (masters[a].min(masters[b]), masters[a].max(masters[b])))
                .collect();
            edges.sort_unstable();
            orig.sort_unstable();
            assert_eq!(edges, orig);
        }
    }

    #[test]
    fn rotation_permutation_is_exact_on_interior() {
        let m = mesh_octagon(2).unwrap();
        let g = Isometry::rotation(std::f64::consts::FRAC_PI_4);
        let perm = m.node_permutation(&g).unwrap();
        for n in 0..m.num_nodes() {
            let w = g.apply_c(m.point(n));
            if m.boundary_nodes().binary_search(&n).is_err() {
                assert!((m.point(perm[n]) - w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn locator_interpolates_linear_fields() {
        let m = mesh_octagon(2).unwrap();
        let loc = Locator::new(&m);
        let f: Vec<f64> = m.nodes.iter().map(|z| 2.0 * z.0.re - z.0.im + 0.5).collect();
        for z in [C64::new(0.1, 0.2), C64::new(-0.4, 0.05), C64::new(0.0, -0.6)] {
            let v = loc.interpolate(&f, z).unwrap();
            assert!((v - (2.0 * z.re - z.im + 0.5)).abs() < 1e-12);
        }
        assert!(loc.interpolate(&f, C64::new(0.97, 0.0)).is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = mesh_octagon(1).unwrap();
        let back = Mesh::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back.hash(), m.hash());
        assert_eq!(back.pairing, m.pairing);
    }
}
