//! The octagonal lattice group Γ, its fundamental octagon, the T(2,3,8)
//! triangle and the 96-tile tessellation of the octagon.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeo::{self, DiscPoint, Isometry, C64};

/// Containment tolerance (disc coordinates) for the closed octagon.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Longest reduction word accepted by [`wrap`].
pub const MAX_WORD: usize = 64;

/// One of the eight side-pairing moves `g_j` or `g_j^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeMove {
    pub generator: u8,
    pub inverse: bool,
}

impl LatticeMove {
    pub fn all() -> [LatticeMove; 8] {
        let mut out = [LatticeMove { generator: 0, inverse: false }; 8];
        for (k, m) in out.iter_mut().enumerate() {
            *m = LatticeMove { generator: (k % 4) as u8, inverse: k >= 4 };
        }
        out
    }

    pub fn inverted(self) -> LatticeMove {
        LatticeMove { inverse: !self.inverse, ..self }
    }

    pub fn isometry(self) -> Isometry {
        let g = generators().g[self.generator as usize];
        if self.inverse {
            g.inverse()
        } else {
            g
        }
    }
}

/// The four boosts generating Γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeGenerators {
    pub g: [Isometry; 4],
}

impl LatticeGenerators {
    /// Translation length of each generator, `2 arccosh(1 + sqrt 2)`.
    pub fn translation_length(&self) -> f64 {
        2.0 * (self.g[0].alpha.re).acosh()
    }
}

/// `g_0` has entries `(1 + √2, √(2 + 2√2))`; `g_j = r_{jπ/4} g_0 r_{-jπ/4}`.
pub fn build_generators() -> LatticeGenerators {
    let a = 1.0 + 2f64.sqrt();
    let b = (2.0 + 2.0 * 2f64.sqrt()).sqrt();
    let g0 = Isometry { alpha: C64::new(a, 0.0), beta: C64::new(b, 0.0), reversing: false };
    let mut g = [g0; 4];
    for (j, gj) in g.iter_mut().enumerate().skip(1) {
        let phi = j as f64 * FRAC_PI_4;
        *gj = Isometry::rotation(phi).compose(&g0).compose(&Isometry::rotation(-phi));
    }
    LatticeGenerators { g }
}

fn generators() -> &'static LatticeGenerators {
    use std::sync::OnceLock;
    static GENS: OnceLock<LatticeGenerators> = OnceLock::new();
    GENS.get_or_init(build_generators)
}

/// A geodesic segment between two disc points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicArc {
    pub a: C64,
    pub b: C64,
}

impl GeodesicArc {
    pub fn point(&self, s: f64) -> C64 {
        hypgeo::geodesic_point(self.a, self.b, s)
    }

    pub fn length(&self) -> f64 {
        hypgeo::dist_c(self.a, self.b)
    }

    /// Hyperbolic distance from `z` to the full geodesic carrying the arc.
    pub fn distance_to_line(&self, z: C64) -> f64 {
        let t = Isometry::translation_to(self.a);
        let r = Isometry::rotation(-t.inverse().apply_c(self.b).arg());
        let w = r.compose(&t.inverse()).apply_c(z);
        // distance from w to the real axis: asinh(2|Im w| / (1 - |w|^2))
        (2.0 * w.im.abs() / (1.0 - w.norm_sqr())).asinh()
    }

    /// Polyline with `n` segments for drawing.
    pub fn polyline(&self, n: usize) -> Vec<C64> {
        (0..=n).map(|k| self.point(k as f64 / n as f64)).collect()
    }
}

/// The regular fundamental octagon of Γ centred at the origin.
///
/// Vertex `k` sits at argument `π/8 + kπ/4`; side `k` joins vertex `k-1` to
/// vertex `k` and has its midpoint on the ray of argument `kπ/4`. The
/// generator `g_k` maps side `k + 4` onto side `k`, so sides `k` and `k + 4`
/// are glued by `g_k^{±1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Octagon {
    pub vertices: Vec<C64>,
    pub sides: Vec<GeodesicArc>,
    /// `(side, opposite side, generator index)`; `g_j` maps `opposite` onto `side`.
    pub side_pairing: Vec<(usize, usize, usize)>,
}

impl Octagon {
    pub fn circumradius(&self) -> f64 {
        hypgeo::dist_c(C64::new(0.0, 0.0), self.vertices[0])
    }

    /// Interior angle at a vertex.
    pub fn interior_angle(&self, k: usize) -> f64 {
        let prev = self.vertices[(k + 7) % 8];
        let next = self.vertices[(k + 1) % 8];
        hypgeo::angle_at(prev, self.vertices[k], next)
    }

    /// Hyperbolic area from Gauss–Bonnet, `(8 - 2)π - Σ angles`.
    pub fn area(&self) -> f64 {
        6.0 * PI - (0..8).map(|k| self.interior_angle(k)).sum::<f64>()
    }

    /// Membership in the closed octagon (Dirichlet half-planes of the 8 moves).
    pub fn contains(&self, z: C64) -> bool {
        contains_c(z)
    }

    /// Index of the side nearest to `z` together with its distance.
    pub fn nearest_side(&self, z: C64) -> (usize, f64) {
        self.sides
            .iter()
            .enumerate()
            .map(|(k, s)| (k, s.distance_to_line(z)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Out<'a> {
            vertices: Vec<[f64; 2]>,
            side_pairing: &'a [(usize, usize, usize)],
            sides: Vec<Vec<[f64; 2]>>,
        }
        let out = Out {
            vertices: self.vertices.iter().map(|z| [z.re, z.im]).collect(),
            side_pairing: &self.side_pairing,
            sides: self
                .sides
                .iter()
                .map(|s| s.polyline(16).into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&out)?)
    }
}

/// Circumradius (hyperbolic) of the regular octagon with interior angle π/4:
/// `cosh R = cot(π/8) cot(π/8)`.
pub fn octagon_circumradius() -> f64 {
    let c = 1.0 / FRAC_PI_8.tan();
    (c * c).acosh()
}

pub fn build_octagon() -> Octagon {
    let r = octagon_circumradius();
    let vertices: Vec<C64> =
        (0..8).map(|k| DiscPoint::polar(r, FRAC_PI_8 + k as f64 * FRAC_PI_4).0).collect();
    let sides = (0..8)
        .map(|k| GeodesicArc { a: vertices[(k + 7) % 8], b: vertices[k] })
        .collect();
    let side_pairing = (0..4).map(|j| (j, j + 4, j)).collect();
    Octagon { vertices, sides, side_pairing }
}

fn contains_c(z: C64) -> bool {
    let r = z.norm();
    LatticeMove::all().iter().all(|m| m.isometry().apply_c(z).norm() >= r - BOUNDARY_TOL)
}

/// Result of reducing a point into the octagon.
#[derive(Debug, Clone, PartialEq)]
pub struct Wrapped {
    pub point: DiscPoint,
    /// Moves whose composition `word[0] ∘ word[1] ∘ …` maps `point` back to the input.
    pub word: Vec<LatticeMove>,
}

impl Wrapped {
    /// The lattice element `w` with `w(point) = z`.
    pub fn word_isometry(&self) -> Isometry {
        word_isometry(&self.word)
    }
}

pub fn word_isometry(word: &[LatticeMove]) -> Isometry {
    word.iter().fold(Isometry::identity(), |acc, m| acc.compose(&m.isometry()))
}

/// Greedy reduction of `z` into the closed octagon: while one of the eight
/// moves strictly decreases the distance to the origin, apply the best one
/// (lowest index on ties).
pub fn wrap(z: DiscPoint) -> Result<Wrapped> {
    let moves = LatticeMove::all();
    let isos: Vec<Isometry> = moves.iter().map(|m| m.isometry()).collect();
    let mut cur = z.0;
    let mut word = Vec::new();
    loop {
        let r = cur.norm();
        let mut best: Option<(usize, C64, f64)> = None;
        for (k, g) in isos.iter().enumerate() {
            let w = g.apply_c(cur);
            let rw = w.norm();
            if rw < r - 1e-13 * (1.0 + r) && best.map_or(true, |(_, _, rb)| rw < rb - 1e-15) {
                best = Some((k, w, rw));
            }
        }
        match best {
            None => break,
            Some((k, w, _)) => {
                if word.len() >= MAX_WORD {
                    return Err(Error::WrapDiverged(MAX_WORD));
                }
                cur = w;
                word.push(moves[k].inverted());
            }
        }
    }
    Ok(Wrapped { point: DiscPoint(cur), word })
}

/// The triangle T(2,3,8) with `P` at the origin, `Q` on the positive real axis
/// and `R` on the ray of argument π/8.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle238 {
    pub p: C64,
    pub q: C64,
    pub r: C64,
}

impl Triangle238 {
    pub fn angles(&self) -> (f64, f64, f64) {
        (
            hypgeo::angle_at(self.r, self.p, self.q),
            hypgeo::angle_at(self.p, self.q, self.r),
            hypgeo::angle_at(self.q, self.r, self.p),
        )
    }

    pub fn area(&self) -> f64 {
        hypgeo::triangle_area(self.p, self.q, self.r)
    }

    /// An interior point (image of the Klein-model centroid).
    pub fn interior_point(&self) -> C64 {
        let k = (hypgeo::poincare_to_klein(self.p)
            + hypgeo::poincare_to_klein(self.q)
            + hypgeo::poincare_to_klein(self.r))
            / 3.0;
        hypgeo::klein_to_poincare(k)
    }

    pub fn vertices(&self) -> [C64; 3] {
        [self.p, self.q, self.r]
    }
}

/// Right-angled hyperbolic triangle with angles π/8 at `P`, π/2 at `Q`, π/3 at `R`:
/// `cosh PQ = cos(π/3) / sin(π/8)` and `cosh PR = cot(π/8) cot(π/3)`.
pub fn build_triangle() -> Triangle238 {
    let pi3 = PI / 3.0;
    let pq = (pi3.cos() / FRAC_PI_8.sin()).acosh();
    let pr = (1.0 / (FRAC_PI_8.tan() * pi3.tan())).acosh();
    Triangle238 {
        p: C64::new(0.0, 0.0),
        q: DiscPoint::polar(pq, 0.0).0,
        r: DiscPoint::polar(pr, FRAC_PI_8).0,
    }
}

/// A tile `iso(τ)` of the octagon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tile {
    pub iso: Isometry,
    /// +1 for orientation-preserving, -1 for reversing.
    pub orientation: i8,
    /// Image of the interior reference point of τ.
    pub center: C64,
}

impl Tile {
    pub fn vertices(&self, tri: &Triangle238) -> [C64; 3] {
        tri.vertices().map(|v| self.iso.apply_c(v))
    }
}

/// The 96 images of τ filling the octagon, one per element of G*.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tessellation {
    pub triangle: Triangle238,
    pub tiles: Vec<Tile>,
}

impl Tessellation {
    /// Index of the tile whose reference point matches `center` (after wrapping).
    pub fn tile_of_center(&self, center: C64) -> Option<usize> {
        self.tiles
            .iter()
            .position(|t| (t.center - center).norm() < TILE_MATCH_TOL)
    }

    /// Reduces `g` modulo Γ so that `g(τ)` lies in the octagon; returns the
    /// tile index and the reduced isometry.
    pub fn reduce(&self, g: &Isometry) -> Result<(usize, Isometry)> {
        let (center, iso) = reduce_mod_lattice(g, self.triangle.interior_point())?;
        let idx = self
            .tile_of_center(center)
            .ok_or_else(|| Error::Group(format!("no tile with reference point {center}")))?;
        Ok((idx, iso))
    }

    pub fn total_area(&self) -> f64 {
        self.tiles
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices(&self.triangle);
                hypgeo::triangle_area(a, b, c)
            })
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Out {
            tiles: Vec<TileOut>,
        }
        #[derive(Serialize)]
        struct TileOut {
            vertices: [[f64; 2]; 3],
            orientation: i8,
        }
        let out = Out {
            tiles: self
                .tiles
                .iter()
                .map(|t| TileOut {
                    vertices: t.vertices(&self.triangle).map(|z| [z.re, z.im]),
                    orientation: t.orientation,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&out)?)
    }
}

const TILE_MATCH_TOL: f64 = 1e-7;

fn reduce_mod_lattice(g: &Isometry, reference: C64) -> Result<(C64, Isometry)> {
    let w = wrap(DiscPoint(g.apply_c(reference)))?;
    let iso = w.word_isometry().inverse().compose(g);
    Ok((w.point.0, iso))
}

/// The symmetry generators of τ as disc isometries: `ρ` (rotation by π/4 about
/// `P`), `σ` (rotation by π about `Q`), `ε = (ρσ)^{-1}` (rotation by 2π/3
/// about `R`) and `κ` (reflection through the real axis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSymmetries {
    pub rho: Isometry,
    pub sigma: Isometry,
    pub epsilon: Isometry,
    pub kappa: Isometry,
}

pub fn triangle_symmetries(tri: &Triangle238) -> TriangleSymmetries {
    let rho = Isometry::rotation(FRAC_PI_4);
    let sigma = Isometry::rotation_about(tri.q, PI);
    let epsilon = rho.compose(&sigma).inverse();
    TriangleSymmetries { rho, sigma, epsilon, kappa: Isometry::conjugation() }
}

pub fn build_tessellation() -> Result<Tessellation> {
    let triangle = build_triangle();
    let reference = triangle.interior_point();
    let sym = triangle_symmetries(&triangle);
    let gens = [sym.rho, sym.sigma, sym.epsilon, sym.kappa];

    let mut tiles: Vec<Tile> = Vec::with_capacity(96);
    let mut queue = std::collections::VecDeque::new();
    let push = |iso: Isometry, tiles: &mut Vec<Tile>| -> Result<Option<usize>> {
        let (center, iso) = reduce_mod_lattice(&iso, reference)?;
        if tiles.iter().any(|t| (t.center - center).norm() < TILE_MATCH_TOL) {
            return Ok(None);
        }
        tiles.push(Tile { iso, orientation: if iso.reversing { -1 } else { 1 }, center });
        Ok(Some(tiles.len() - 1))
    };
    push(Isometry::identity(), &mut tiles)?;
    queue.push_back(0usize);
    while let Some(k) = queue.pop_front() {
        let base = tiles[k].iso;
        for s in &gens {
            if let Some(new) = push(base.compose(s), &mut tiles)? {
                queue.push_back(new);
            }
            if tiles.len() > 96 {
                return Err(Error::Group("more than 96 distinct tiles".into()));
            }
        }
    }
    if tiles.len() != 96 {
        return Err(Error::Group(format!("expected 96 tiles, found {}", tiles.len())));
    }
    Ok(Tessellation { triangle, tiles })
}

/// Order of an `(l, m, n)` tiling rotation group of a genus-`g` surface:
/// `|G| = (2g - 2) / (1 - (1/l + 1/m + 1/n))`.
pub fn riemann_hurwitz(l: u64, m: u64, n: u64, genus: u64) -> Result<u64> {
    if l == 0 || m == 0 || n == 0 || genus < 2 {
        return Err(Error::Inadmissible(format!("({l},{m},{n}) genus {genus}")));
    }
    let prod = l * m * n;
    let pairs = m * n + l * n + l * m;
    if pairs >= prod {
        return Err(Error::Inadmissible(format!("1/{l} + 1/{m} + 1/{n} >= 1")));
    }
    let num = (2 * genus - 2) * prod;
    let den = prod - pairs;
    if num % den != 0 {
        return Err(Error::Inadmissible(format!(
            "({l},{m},{n}) genus {genus} gives non-integer order {num}/{den}"
        )));
    }
    Ok(num / den)
}
