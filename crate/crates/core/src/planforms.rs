//! H-planforms: desymmetrized eigenproblems on τ, periodic eigenproblems on
//! the octagon, symmetry classification of eigenspaces, isotropy projection,
//! periodization over the disc, and rendering.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fem::{self, AssembledSystem, BoundaryConditions, Condition, CsrMatrix, SolverOptions};
use crate::hypgeo::{self, DiscPoint, C64};
use crate::lattice;
use crate::mesh::{self, EdgeTag, Locator, Mesh};
use crate::symgroup::{self, ElementSet, SubgroupRecord, SymmetryGroup, NUM_CLASSES, ORDER};

/// Relative gap below which eigenvalues share an eigenspace.
pub const GROUP_TOL: f64 = 1e-6;
/// Gaps between `GROUP_TOL` and this value are flagged as ambiguous.
pub const AMBIGUOUS_TOL: f64 = 1e-4;
/// Maximal character deviation accepted by the classifier.
pub const CLASSIFY_TOL: f64 = 0.1;

/// Boundary conditions on the three sides of τ for a one-dimensional irrep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcRecipe {
    pub pq: Condition,
    pub pr: Condition,
    pub qr: Condition,
}

impl BcRecipe {
    pub fn boundary_conditions(&self) -> BoundaryConditions {
        BoundaryConditions::PerTag(vec![(EdgeTag::PQ, self.pq), (EdgeTag::RP, self.pr), (EdgeTag::QR, self.qr)])
    }
}

/// Neumann on an edge iff the character is +1 on the reflection through it:
/// κ (PQ), κ′ (PR), κ″ = σκ (QR).
pub fn bc_recipe(group: &SymmetryGroup, chi: usize) -> Result<BcRecipe> {
    if symgroup::CHARACTERS[chi][0].int != 1 {
        return Err(Error::Invalid(format!("{} is not one-dimensional", symgroup::irrep_label(chi))));
    }
    let cond = |s: f64| if s > 0.0 { Condition::Neumann } else { Condition::Dirichlet };
    let [k, k1, k2] = symgroup::reflection_signs(group, chi);
    Ok(BcRecipe { pq: cond(k), pr: cond(k1), qr: cond(k2) })
}

/// Nodal field on the octagon mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Planform {
    pub values: Vec<f64>,
    pub eigenvalue: f64,
    pub irrep: String,
    pub isotropy: String,
}

impl Planform {
    /// Flips the sign so the largest-magnitude value is positive.
    pub fn sign_normalize(&mut self) {
        let m = self.values.iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
        if m < 0.0 {
            self.values.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// `vᵀ M v` summed element by element, without assembling `M`.
pub fn mass_norm(mesh: &Mesh, values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for (e, el) in mesh.elements.iter().enumerate() {
        let (_, me) = fem::element_matrices(mesh.corners(e))?;
        for i in 0..3 {
            for j in 0..3 {
                s += values[el[i]] * me[i][j] * values[el[j]];
            }
        }
    }
    Ok(s.max(0.0).sqrt())
}

/// Result of a desymmetrized run on τ, extended to the octagon.
#[derive(Debug, Clone)]
pub struct Desymmetrized {
    pub chi: usize,
    pub recipe: BcRecipe,
    pub eigenvalue: f64,
    pub residual: f64,
    /// Lowest eigenvalues of the reduced problem.
    pub spectrum: Vec<f64>,
    pub residuals: Vec<f64>,
    pub tau_mesh: Mesh,
    pub tau_values: Vec<f64>,
    pub octagon_mesh: Mesh,
    pub planform: Planform,
    /// Largest mismatch between copies of a shared node, relative to max |u|.
    pub continuity_defect: f64,
}

/// Lowest admissible eigenpair of the χ-desymmetrized problem on a τ-mesh
/// (first nonzero for χ1), extended to the octagon with sign χ(g) per tile.
pub fn solve_desymmetrized(group: &SymmetryGroup, chi: usize, tau: &Mesh) -> Result<Desymmetrized> {
    solve_desymmetrized_with(group, chi, tau, 0, &SolverOptions::default())
}

/// As [`solve_desymmetrized`], also keeping at least `count` eigenvalues in
/// `spectrum`.
pub fn solve_desymmetrized_with(
    group: &SymmetryGroup,
    chi: usize,
    tau: &Mesh,
    count: usize,
    opts: &SolverOptions,
) -> Result<Desymmetrized> {
    let recipe = bc_recipe(group, chi)?;
    let sys = fem::assemble(tau)?;
    let red = fem::apply_bc(&sys, tau, &recipe.boundary_conditions())?;
    let want = if chi == 0 { 2 } else { 1 };
    let res = fem::solve_smallest_with(&red, count.max(want + 1).min(red.num_dofs), opts)?;
    let idx = want - 1;
    let eigenvalue = res.eigenvalues[idx];
    let tau_values = red.expand(&res.eigenvectors[idx]);
    let octagon_mesh = mesh::mesh_octagon_with(&group.tessellation, tau.level - 1)?;
    let (values, continuity_defect) = extend_by_character(group, chi, &octagon_mesh, &tau_values)?;
    let name = symgroup::THEOREM_ISOTROPY[chi][0].to_string();
    let mut planform = Planform { values, eigenvalue, irrep: symgroup::irrep_label(chi), isotropy: name };
    planform.sign_normalize();
    Ok(Desymmetrized {
        chi,
        recipe,
        eigenvalue,
        residual: res.residuals[idx],
        spectrum: res.eigenvalues,
        residuals: res.residuals,
        tau_mesh: tau.clone(),
        tau_values,
        octagon_mesh,
        planform,
        continuity_defect,
    })
}

/// Largest `‖h∘p - p‖_M / ‖p‖_M` over `h ∈ H` for a nodal field on a
/// transported octagon mesh, with `h` acting by tile permutation.
pub fn tile_isotropy_defect(group: &SymmetryGroup, octagon: &Mesh, values: &[f64], h: &ElementSet) -> Result<f64> {
    let n = mass_norm(octagon, values)?;
    let mut worst = 0.0f64;
    for g in h.iter() {
        // (h∘p)(x) = p(h⁻¹x); pulling back reaches every node even where
        // paired boundary copies collapse under the permutation
        let perm = octagon.tile_permutation(&group.elements[group.inverse(g)].perm)?;
        let moved: Vec<f64> = perm.iter().map(|&j| values[j]).collect();
        let diff: Vec<f64> = moved.iter().zip(values).map(|(a, b)| a - b).collect();
        worst = worst.max(mass_norm(octagon, &diff)? / n);
    }
    Ok(worst)
}

/// Largest mismatch between paired boundary nodes, relative to max |v|.
pub fn periodicity_defect(octagon: &Mesh, values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    octagon
        .pairing
        .iter()
        .flatten()
        .map(|&(a, b)| (values[a] - values[b]).abs() / scale)
        .fold(0.0, f64::max)
}

/// Values `χ(k) u(j)` on node `j` of tile `k`.
pub fn extend_by_character(
    group: &SymmetryGroup,
    chi: usize,
    octagon: &Mesh,
    tau_values: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let t = octagon
        .transport
        .as_ref()
        .ok_or_else(|| Error::Mesh("octagon mesh has no transport".into()))?;
    if t.tile_nodes.first().map(|v| v.len()) != Some(tau_values.len()) {
        return Err(Error::Mesh("τ-mesh and octagon mesh levels differ".into()));
    }
    let scale = tau_values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    let mut out = vec![f64::NAN; octagon.num_nodes()];
    let mut defect = 0.0f64;
    for (k, nodes) in t.tile_nodes.iter().enumerate() {
        let s = symgroup::character(group, chi, k);
        for (j, &n) in nodes.iter().enumerate() {
            let v = s * tau_values[j];
            if out[n].is_nan() {
                out[n] = v;
            } else {
                defect = defect.max((out[n] - v).abs() / scale);
            }
        }
    }
    Ok((out, defect))
}

/// Periodic problem on the octagon together with the G* action on dofs.
#[derive(Debug, Clone)]
pub struct PeriodicSetup {
    pub mesh: Mesh,
    pub system: AssembledSystem,
    /// `dof_perms[g][d]`: the dof that `g` carries dof `d` to.
    pub dof_perms: Vec<Vec<usize>>,
    pub symmetrized: bool,
}

impl PeriodicSetup {
    /// Periodic octagon problem at the given refinement. With `symmetrize`,
    /// K and M are averaged over the G* action, which restores the exact
    /// degeneracies that straight P1 elements split at order h².
    pub fn new(group: &SymmetryGroup, refinement: usize, symmetrize: bool) -> Result<Self> {
        let mesh = mesh::mesh_octagon_with(&group.tessellation, refinement)?;
        Self::from_mesh(group, mesh, symmetrize)
    }

    pub fn from_mesh(group: &SymmetryGroup, mesh: Mesh, symmetrize: bool) -> Result<Self> {
        let full = fem::assemble(&mesh)?;
        let mut system = fem::apply_bc(&full, &mesh, &BoundaryConditions::Periodic)?;
        let dof_perms = dof_permutations(group, &mesh, &system)?;
        if symmetrize {
            system.k = average_over(&system.k, &dof_perms);
            system.m = average_over(&system.m, &dof_perms);
        }
        Ok(PeriodicSetup { mesh, system, dof_perms, symmetrized: symmetrize })
    }

    pub fn num_dofs(&self) -> usize {
        self.system.num_dofs
    }

    /// `(g∘φ)(x) = φ(g⁻¹x)`.
    pub fn act(&self, g: usize, phi: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; phi.len()];
        for (d, &v) in phi.iter().enumerate() {
            out[self.dof_perms[g][d]] = v;
        }
        out
    }

    /// Largest relative deviation `‖h∘p - p‖_M / ‖p‖_M` over `h ∈ H`.
    pub fn isotropy_defect(&self, phi: &[f64], h: &ElementSet) -> f64 {
        let n = self.system.m_norm(phi);
        h.iter()
            .map(|g| {
                let d: Vec<f64> = self.act(g, phi).iter().zip(phi).map(|(a, b)| a - b).collect();
                self.system.m_norm(&d) / n
            })
            .fold(0.0, f64::max)
    }

    /// Elements fixing `phi` to within `tol`.
    pub fn stabilizer(&self, phi: &[f64], tol: f64) -> ElementSet {
        let n = self.system.m_norm(phi);
        (0..ORDER)
            .filter(|&g| {
                let d: Vec<f64> = self.act(g, phi).iter().zip(phi).map(|(a, b)| a - b).collect();
                self.system.m_norm(&d) <= tol * n
            })
            .collect()
    }

    pub fn to_planform(&self, phi: &[f64], eigenvalue: f64, irrep: &str, isotropy: &str) -> Planform {
        Planform {
            values: self.system.expand(phi),
            eigenvalue,
            irrep: irrep.to_string(),
            isotropy: isotropy.to_string(),
        }
    }
}

/// Dof permutation of every group element, located by wrapping the image of
/// each node back into the octagon.
pub fn dof_permutations(group: &SymmetryGroup, mesh: &Mesh, sys: &AssembledSystem) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(ORDER);
    for el in &group.elements {
        let nodes = mesh.node_permutation(&el.iso)?;
        let mut perm = vec![usize::MAX; sys.num_dofs];
        for (n, &img) in nodes.iter().enumerate() {
            let (Some(d), Some(e)) = (sys.dof_map[n], sys.dof_map[img]) else {
                return Err(Error::Mesh("group action on a constrained node".into()));
            };
            if perm[d] != usize::MAX && perm[d] != e {
                return Err(Error::Mesh(format!("element {} acts inconsistently on dof {d}", el.index)));
            }
            perm[d] = e;
        }
        out.push(perm);
    }
    Ok(out)
}

fn average_over(a: &CsrMatrix, perms: &[Vec<usize>]) -> CsrMatrix {
    let w = 1.0 / perms.len() as f64;
    let mut t = Vec::with_capacity(a.nnz() * perms.len());
    for p in perms {
        for i in 0..a.n {
            for (j, v) in a.row(i) {
                t.push((p[i], p[j], w * v));
            }
        }
    }
    CsrMatrix::from_triplets(a.n, &t)
}

/// A cluster of (numerically) equal eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenspace {
    pub eigenvalue: f64,
    pub indices: Vec<usize>,
    /// M-orthonormal dof vectors.
    pub basis: Vec<Vec<f64>>,
    /// Set when a neighbouring gap falls between the grouping tolerances.
    pub ambiguous: bool,
}

impl Eigenspace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSpectrum {
    /// The first `n` eigenvalues; `spaces` covers them, completing the last
    /// eigenspace when it straddles index `n`.
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub spaces: Vec<Eigenspace>,
}

pub fn solve_periodic(setup: &PeriodicSetup, n: usize) -> Result<PeriodicSpectrum> {
    solve_periodic_with(setup, n, &SolverOptions::default())
}

pub fn solve_periodic_with(setup: &PeriodicSetup, n: usize, opts: &SolverOptions) -> Result<PeriodicSpectrum> {
    // extra pairs so the last kept eigenspace is complete
    let extra = (n + 4).min(setup.num_dofs());
    let res = fem::solve_smallest_with(&setup.system, extra, opts)?;
    let ev = &res.eigenvalues;
    let mut spaces: Vec<Eigenspace> = Vec::new();
    for (i, &l) in ev.iter().enumerate() {
        let gap = if i == 0 { f64::INFINITY } else { (l - ev[i - 1]).abs() / l.abs().max(1.0) };
        if gap > GROUP_TOL || spaces.is_empty() {
            spaces.push(Eigenspace { eigenvalue: l, indices: vec![], basis: vec![], ambiguous: false });
            if i > 0 && gap <= AMBIGUOUS_TOL {
                let k = spaces.len();
                spaces[k - 1].ambiguous = true;
                spaces[k - 2].ambiguous = true;
            }
        }
        let s = spaces.last_mut().expect("non-empty");
        s.indices.push(i);
        s.basis.push(res.eigenvectors[i].clone());
    }
    let complete = |s: &Eigenspace| extra == setup.num_dofs() || *s.indices.last().unwrap() + 1 < extra;
    spaces.retain(|s| s.indices[0] < n && complete(s));
    for s in &mut spaces {
        s.eigenvalue = s.indices.iter().map(|&i| ev[i]).sum::<f64>() / s.indices.len() as f64;
    }
    let mut eigenvalues = res.eigenvalues;
    let mut residuals = res.residuals;
    eigenvalues.truncate(n);
    residuals.truncate(n);
    Ok(PeriodicSpectrum { eigenvalues, residuals, spaces })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    /// `t(γ) = Σ_i ⟨φ_i, γ∘φ_i⟩_M` at each class representative.
    pub traces: Vec<f64>,
    /// Best-matching irrep, if its deviation is within tolerance.
    pub irrep: Option<String>,
    pub best: String,
    pub deviation: f64,
    pub deviations: Vec<f64>,
}

pub fn classify_eigenspace(space: &Eigenspace, setup: &PeriodicSetup, group: &SymmetryGroup) -> Classification {
    let traces: Vec<f64> = group
        .classes
        .iter()
        .map(|c| {
            space
                .basis
                .iter()
                .map(|phi| setup.system.m_inner(phi, &setup.act(c.representative, phi)))
                .sum()
        })
        .collect();
    let deviations: Vec<f64> = (0..NUM_CLASSES)
        .map(|j| {
            (0..NUM_CLASSES)
                .map(|c| (traces[c] - symgroup::CHARACTERS[j][c].value()).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let (best, deviation) = deviations
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |a, (j, d)| if d < a.1 { (j, d) } else { a });
    Classification {
        eigenvalue: space.eigenvalue,
        multiplicity: space.multiplicity(),
        traces,
        irrep: (deviation <= CLASSIFY_TOL).then(|| symgroup::irrep_label(best)),
        best: symgroup::irrep_label(best),
        deviation,
        deviations,
    }
}

/// `P_H φ = (1/|H|) Σ_h h∘φ` for a seeded random `φ` in the eigenspace;
/// `None` if the projection is numerically zero.
pub fn project_isotropy(space: &Eigenspace, h: &SubgroupRecord, setup: &PeriodicSetup, seed: u64) -> Option<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = space.basis.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut phi = vec![0.0; setup.num_dofs()];
    for (c, b) in coeffs.iter().zip(&space.basis) {
        for (p, x) in phi.iter_mut().zip(b) {
            *p += c * x;
        }
    }
    project_vector(&phi, h, setup)
}

/// Group average of a given vector over `H`.
pub fn project_vector(phi: &[f64], h: &SubgroupRecord, setup: &PeriodicSetup) -> Option<Vec<f64>> {
    let mut out = vec![0.0; phi.len()];
    let w = 1.0 / h.order() as f64;
    for g in h.elements.iter() {
        for (o, x) in out.iter_mut().zip(setup.act(g, phi)) {
            *o += w * x;
        }
    }
    let n_in = setup.system.m_norm(phi);
    let n_out = setup.system.m_norm(&out);
    (n_out >= 1e-6 * n_in).then_some(out)
}

/// One (irrep, isotropy type) pair realized on a computed eigenspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizedPair {
    pub irrep: String,
    pub subgroup: String,
    pub eigenvalue: f64,
    pub fixed_dim: usize,
    /// Dof vector of the projection, when nonzero.
    #[serde(skip)]
    pub dofs: Option<Vec<f64>>,
    pub isotropy_defect: Option<f64>,
    /// Cataloged subgroup conjugate to the numerical stabilizer, if any.
    pub stabilizer: Option<String>,
}

/// For the first eigenspace carrying each irrep, projects onto every listed
/// isotropy type and measures the invariance of the result.
pub fn realize_theorem_pairs(
    group: &SymmetryGroup,
    catalog: &[SubgroupRecord],
    setup: &PeriodicSetup,
    spaces: &[Eigenspace],
    classes: &[Classification],
    seed: u64,
) -> Result<Vec<RealizedPair>> {
    let mut out = Vec::new();
    for chi in 0..NUM_CLASSES {
        let label = symgroup::irrep_label(chi);
        let Some(k) = classes.iter().position(|c| c.irrep.as_deref() == Some(label.as_str())) else {
            continue;
        };
        for name in symgroup::THEOREM_ISOTROPY[chi] {
            let h = symgroup::find_subgroup(catalog, name)
                .ok_or_else(|| Error::Group(format!("{name} is not cataloged")))?;
            let fixed_dim = symgroup::fixed_dim(group, chi, h)?;
            let mut dofs = project_isotropy(&spaces[k], h, setup, seed);
            if let Some(v) = dofs.as_mut() {
                let m = v.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
                if m < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            let isotropy_defect = dofs.as_ref().map(|v| setup.isotropy_defect(v, &h.elements));
            let stabilizer = dofs.as_ref().and_then(|v| {
                let st = setup.stabilizer(v, 1e-3);
                catalog.iter().find(|c| group.are_conjugate(&c.elements, &st)).map(|c| c.name.clone())
            });
            out.push(RealizedPair {
                irrep: label.clone(),
                subgroup: name.to_string(),
                eigenvalue: spaces[k].eigenvalue,
                fixed_dim,
                dofs,
                isotropy_defect,
                stabilizer,
            });
        }
    }
    Ok(out)
}

/// File-name form of a subgroup name.
pub fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '*' => "star".to_string(),
            '\'' => "p".to_string(),
            '~' => "t".to_string(),
            c if c.is_ascii_alphanumeric() => c.to_string(),
            _ => "_".to_string(),
        })
        .collect()
}

/// Anything that can be evaluated on the closed octagon.
pub trait OctagonField {
    fn sample(&self, z: C64) -> Option<f64>;
}

/// P1 interpolation of nodal values on an octagon mesh.
pub struct MeshField<'a> {
    values: &'a [f64],
    locator: Locator<'a>,
}

impl<'a> MeshField<'a> {
    pub fn new(mesh: &'a Mesh, values: &'a [f64]) -> Self {
        MeshField { values, locator: Locator::new(mesh) }
    }
}

impl OctagonField for MeshField<'_> {
    fn sample(&self, z: C64) -> Option<f64> {
        self.locator.interpolate(self.values, z)
    }
}

/// A desymmetrized solution evaluated through the tile containing the point.
pub struct TileField<'a> {
    group: &'a SymmetryGroup,
    chi: usize,
    values: &'a [f64],
    locator: Locator<'a>,
    inverses: Vec<hypgeo::Isometry>,
}

impl<'a> TileField<'a> {
    pub fn new(group: &'a SymmetryGroup, d: &'a Desymmetrized) -> Self {
        Self::from_parts(group, d.chi, &d.tau_mesh, &d.tau_values)
    }

    pub fn from_parts(group: &'a SymmetryGroup, chi: usize, tau: &'a Mesh, values: &'a [f64]) -> Self {
        TileField {
            group,
            chi,
            values,
            locator: Locator::new(tau),
            inverses: group.tessellation.tiles.iter().map(|t| t.iso.inverse()).collect(),
        }
    }
}

impl OctagonField for TileField<'_> {
    fn sample(&self, z: C64) -> Option<f64> {
        self.inverses.iter().enumerate().find_map(|(k, inv)| {
            let y = inv.apply_c(z);
            self.locator
                .interpolate(self.values, y)
                .map(|v| symgroup::character(self.group, self.chi, k) * v)
        })
    }
}

/// Square raster over `[-1, 1]²`; row 0 is the top (`Im z = 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Raster {
    pub size: usize,
    pub values: Vec<Option<f64>>,
}

impl Raster {
    pub fn point(size: usize, row: usize, col: usize) -> C64 {
        let h = 2.0 / size as f64;
        C64::new(-1.0 + (col as f64 + 0.5) * h, 1.0 - (row as f64 + 0.5) * h)
    }

    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        self.values[row * self.size + col]
    }

    /// Rows `row,col,x,y,value`; empty points have an empty value.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        use std::io::Write;
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "row,col,x,y,value")?;
        for row in 0..self.size {
            for col in 0..self.size {
                let z = Self::point(self.size, row, col);
                let v = self.get(row, col).map(|v| format!("{v:.9e}")).unwrap_or_default();
                writeln!(f, "{row},{col},{:.6},{:.6},{v}", z.re, z.im)?;
            }
        }
        f.flush()?;
        Ok(())
    }
}

pub const DISC_RADIUS: f64 = 0.995;

/// Samples the Γ-periodic extension of `field` on a raster of the disc.
pub fn extend_to_disc(field: &dyn OctagonField, size: usize) -> Raster {
    let mut values = Vec::with_capacity(size * size);
    for row in 0..size {
        for col in 0..size {
            let z = Raster::point(size, row, col);
            let v = if z.norm() <= DISC_RADIUS {
                lattice::wrap(DiscPoint(z)).ok().and_then(|w| field.sample(w.point.0))
            } else {
                None
            };
            values.push(v);
        }
    }
    Raster { size, values }
}

/// Samples `field` on the octagon only (points outside are empty).
pub fn sample_octagon(field: &dyn OctagonField, size: usize) -> Raster {
    let oct = lattice::build_octagon();
    let mut values = Vec::with_capacity(size * size);
    for row in 0..size {
        for col in 0..size {
            let z = Raster::point(size, row, col);
            values.push(if oct.contains(z) { field.sample(z) } else { None });
        }
    }
    Raster { size, values }
}

pub const BACKGROUND: [u8; 3] = [48, 48, 48];

/// Diverging map: blue for negative, white at zero, red for positive.
pub fn diverging_color(t: f64) -> [u8; 3] {
    let t = t.clamp(-1.0, 1.0);
    let fade = |x: f64| (255.0 * (1.0 - x.abs())).round() as u8;
    if t >= 0.0 {
        [255, fade(t), fade(t)]
    } else {
        [fade(t), fade(t), 255]
    }
}

/// RGB pixels of a raster, symmetric color scale centered at 0.
pub fn raster_pixels(raster: &Raster) -> Vec<[u8; 3]> {
    let vals = raster.values.iter().flatten();
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |a, &v| (a.0.min(v), a.1.max(v)));
    let scale = lo.abs().max(hi.abs());
    let constant = !(hi - lo > 1e-12 * scale.max(f64::MIN_POSITIVE));
    raster
        .values
        .iter()
        .map(|v| match v {
            None => BACKGROUND,
            Some(_) if constant => diverging_color(0.0),
            Some(x) => diverging_color(x / scale),
        })
        .collect()
}

/// Writes a PNG, optionally overlaying the octagon outline.
pub fn render(raster: &Raster, path: &Path, overlay: bool) -> Result<()> {
    let px = raster_pixels(raster);
    let n = raster.size as u32;
    let mut img = image::RgbImage::new(n, n);
    for (i, p) in px.iter().enumerate() {
        img.put_pixel(i as u32 % n, i as u32 / n, image::Rgb(*p));
    }
    if overlay {
        let oct = lattice::build_octagon();
        for side in &oct.sides {
            for z in side.polyline(4 * raster.size) {
                let col = ((z.re + 1.0) / 2.0 * raster.size as f64).floor();
                let row = ((1.0 - z.im) / 2.0 * raster.size as f64).floor();
                if (0.0..n as f64).contains(&col) && (0.0..n as f64).contains(&row) {
                    img.put_pixel(col as u32, row as u32, image::Rgb([0, 0, 0]));
                }
            }
        }
    }
    img.save(path).map_err(|e| Error::Image(e.to_string()))
}

/// Sum of `dim χ` over classified eigenspaces, per irrep (diagnostic).
pub fn irrep_census(classes: &[Classification]) -> Vec<(String, usize)> {
    (0..NUM_CLASSES)
        .map(|j| {
            let label = symgroup::irrep_label(j);
            let n = classes
                .iter()
                .filter(|c| c.irrep.as_deref() == Some(label.as_str()))
                .map(|c| c.multiplicity)
                .sum();
            (label, n)
        })
        .collect()
}
