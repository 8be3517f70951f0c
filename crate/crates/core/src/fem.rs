//! P1 finite elements for the Laplace–Beltrami eigenproblem on the disc.
//!
//! The hyperbolic metric is conformal, so the Dirichlet energy is the
//! Euclidean one: the stiffness matrix is the ordinary P1 stiffness and the
//! metric only enters the mass matrix through the weight `4/(1-|z|²)²`.

use std::collections::{BTreeMap, VecDeque};
use std::io::Write;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeo::{conformal_factor, C64};
use crate::mesh::{signed_area, EdgeTag, Mesh};

/// Square sparse matrix in compressed-row form (full pattern, not just a triangle).
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    pub fn from_triplets(n: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
        for &(i, j, v) in entries {
            *rows[i].entry(j).or_insert(0.0) += v;
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for r in rows {
            for (j, v) in r {
                col_idx.push(j);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        CsrMatrix { n, row_ptr, col_idx, values }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (self.col_idx[k], self.values[k]))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// `max |A_ij - A_ji| / max |A_ij|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst / self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                d[(i, j)] += v;
            }
        }
        d
    }

    /// `A + c B` on the union pattern.
    pub fn add_scaled(&self, c: f64, other: &CsrMatrix) -> CsrMatrix {
        let mut t = Vec::with_capacity(self.nnz() + other.nnz());
        for i in 0..self.n {
            t.extend(self.row(i).map(|(j, v)| (i, j, v)));
            t.extend(other.row(i).map(|(j, v)| (i, j, c * v)));
        }
        CsrMatrix::from_triplets(self.n, &t)
    }

    /// `Tᵀ A T` for the selection map `dof_map` (node → optional dof).
    pub fn reduce(&self, dof_map: &[Option<usize>], ndofs: usize) -> CsrMatrix {
        let mut t = Vec::with_capacity(self.nnz());
        for i in 0..self.n {
            if let Some(a) = dof_map[i] {
                for (j, v) in self.row(i) {
                    if let Some(b) = dof_map[j] {
                        t.push((a, b, v));
                    }
                }
            }
        }
        CsrMatrix::from_triplets(ndofs, &t)
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Stiffness and conformally weighted mass on a set of degrees of freedom.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub k: CsrMatrix,
    pub m: CsrMatrix,
    /// Node → dof; `None` for eliminated (Dirichlet) nodes.
    pub dof_map: Vec<Option<usize>>,
    pub num_dofs: usize,
}

impl AssembledSystem {
    /// Nodal values from a dof vector (eliminated nodes get 0).
    pub fn expand(&self, v: &[f64]) -> Vec<f64> {
        self.dof_map.iter().map(|d| d.map_or(0.0, |d| v[d])).collect()
    }

    /// `‖v‖_M`.
    pub fn m_norm(&self, v: &[f64]) -> f64 {
        dot(v, &self.m.mul_vec(v)).max(0.0).sqrt()
    }

    pub fn m_inner(&self, a: &[f64], b: &[f64]) -> f64 {
        dot(a, &self.m.mul_vec(b))
    }

    /// `‖Kv - λMv‖ / ‖v‖_M`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let kv = self.k.mul_vec(v);
        let mv = self.m.mul_vec(v);
        let r: f64 = kv.iter().zip(&mv).map(|(a, b)| (a - lambda * b).powi(2)).sum();
        r.sqrt() / dot(v, &mv).sqrt()
    }

    /// Total mass `1ᵀ M 1`: the hyperbolic area of the domain.
    pub fn area(&self) -> f64 {
        let ones = vec![1.0; self.num_dofs];
        dot(&ones, &self.m.mul_vec(&ones))
    }
}

/// Degree-2 Gauss points in barycentric coordinates (weights 1/3 each).
const GAUSS3: [[f64; 3]; 3] = [
    [2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0],
    [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
    [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
];

/// Element matrices for one P1 triangle.
pub fn element_matrices(p: [C64; 3]) -> Result<([[f64; 3]; 3], [[f64; 3]; 3])> {
    let area = signed_area(p[0], p[1], p[2]);
    if area <= 0.0 {
        return Err(Error::Assembly(format!("non-positive Jacobian (area {area:e})")));
    }
    // gradients of barycentric functions: (b_i, c_i) / (2A)
    let b = [p[1].im - p[2].im, p[2].im - p[0].im, p[0].im - p[1].im];
    let c = [p[2].re - p[1].re, p[0].re - p[2].re, p[1].re - p[0].re];
    let mut ke = [[0.0; 3]; 3];
    let mut me = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            ke[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
        }
    }
    for q in &GAUSS3 {
        let z = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
        let w = area / 3.0 * conformal_factor(z);
        for i in 0..3 {
            for j in 0..3 {
                me[i][j] += w * q[i] * q[j];
            }
        }
    }
    Ok((ke, me))
}

/// Assembles stiffness and mass with one dof per node.
pub fn assemble(mesh: &Mesh) -> Result<AssembledSystem> {
    let n = mesh.num_nodes();
    let mut kt = Vec::with_capacity(9 * mesh.elements.len());
    let mut mt = Vec::with_capacity(9 * mesh.elements.len());
    for (e, el) in mesh.elements.iter().enumerate() {
        let (ke, me) = element_matrices(mesh.corners(e))
            .map_err(|err| Error::Assembly(format!("element {e}: {err}")))?;
        for i in 0..3 {
            for j in 0..3 {
                kt.push((el[i], el[j], ke[i][j]));
                mt.push((el[i], el[j], me[i][j]));
            }
        }
    }
    Ok(AssembledSystem {
        k: CsrMatrix::from_triplets(n, &kt),
        m: CsrMatrix::from_triplets(n, &mt),
        dof_map: (0..n).map(Some).collect(),
        num_dofs: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Neumann,
    Dirichlet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BoundaryConditions {
    NeumannAll,
    /// Condition per boundary tag; untagged edges are Neumann.
    PerTag(Vec<(EdgeTag, Condition)>),
    /// Identify paired nodes through the mesh pairing.
    Periodic,
}

/// Applies boundary conditions to a freshly assembled system.
pub fn apply_bc(sys: &AssembledSystem, mesh: &Mesh, bc: &BoundaryConditions) -> Result<AssembledSystem> {
    let n = mesh.num_nodes();
    if sys.num_dofs != n {
        return Err(Error::BoundaryCondition("boundary conditions already applied".into()));
    }
    let dof_map: Vec<Option<usize>> = match bc {
        BoundaryConditions::NeumannAll => (0..n).map(Some).collect(),
        BoundaryConditions::PerTag(list) => {
            let mut fixed = vec![false; n];
            for &(tag, cond) in list {
                if cond == Condition::Dirichlet {
                    let nodes = mesh.nodes_with_tag(tag);
                    if nodes.is_empty() {
                        return Err(Error::BoundaryCondition(format!("no edges tagged {tag:?}")));
                    }
                    for v in nodes {
                        fixed[v] = true;
                    }
                }
            }
            let mut next = 0;
            fixed
                .iter()
                .map(|&f| {
                    (!f).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        }
        BoundaryConditions::Periodic => {
            let pairs = mesh
                .pairing
                .as_ref()
                .ok_or_else(|| Error::BoundaryCondition("mesh has no pairing".into()))?;
            if pairs.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
                return Err(Error::BoundaryCondition("inconsistent pairing".into()));
            }
            let masters = mesh.periodic_masters();
            let mut dof_of_master = vec![usize::MAX; n];
            let mut next = 0;
            for v in 0..n {
                if masters[v] == v {
                    dof_of_master[v] = next;
                    next += 1;
                }
            }
            masters.iter().map(|&m| Some(dof_of_master[m])).collect()
        }
    };
    let ndofs = dof_map.iter().flatten().max().map_or(0, |d| d + 1);
    if ndofs == 0 {
        return Err(Error::BoundaryCondition("every degree of freedom is constrained".into()));
    }
    Ok(AssembledSystem {
        k: sys.k.reduce(&dof_map, ndofs),
        m: sys.m.reduce(&dof_map, ndofs),
        dof_map,
        num_dofs: ndofs,
    })
}

/// Reverse Cuthill–McKee ordering of a symmetric pattern: `perm[new] = old`.
pub fn rcm_ordering(a: &CsrMatrix) -> Vec<usize> {
    let n = a.n;
    let degree: Vec<usize> = (0..n).map(|i| a.row_ptr[i + 1] - a.row_ptr[i]).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let bfs_last = |start: usize| -> (usize, usize) {
        let mut level = vec![usize::MAX; n];
        let mut q = VecDeque::from([start]);
        level[start] = 0;
        let mut last = start;
        while let Some(v) = q.pop_front() {
            last = v;
            for (w, _) in a.row(v) {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    q.push_back(w);
                }
            }
        }
        (last, level[last])
    };
    while order.len() < n {
        let seed = (0..n).filter(|&v| !visited[v]).min_by_key(|&v| degree[v]).unwrap();
        // pseudo-peripheral start
        let (mut start, mut ecc) = bfs_last(seed);
        for _ in 0..4 {
            let (far, e) = bfs_last(start);
            if e <= ecc {
                break;
            }
            start = far;
            ecc = e;
        }
        let mut q = VecDeque::from([start]);
        visited[start] = true;
        while let Some(v) = q.pop_front() {
            order.push(v);
            let mut nb: Vec<usize> = a.row(v).map(|(w, _)| w).filter(|&w| !visited[w]).collect();
            nb.sort_by_key(|&w| degree[w]);
            for w in nb {
                visited[w] = true;
                q.push_back(w);
            }
        }
    }
    order.reverse();
    order
}

/// Envelope (skyline) Cholesky factor `P A Pᵀ = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct SkylineCholesky {
    n: usize,
    perm: Vec<usize>,
    first: Vec<usize>,
    offset: Vec<usize>,
    data: Vec<f64>,
}

impl SkylineCholesky {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        let n = a.n;
        let perm = rcm_ordering(a);
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut first: Vec<usize> = (0..n).collect();
        for old in 0..n {
            let i = inv[old];
            for (jo, _) in a.row(old) {
                let j = inv[jo];
                if j < i {
                    first[i] = first[i].min(j);
                }
            }
        }
        let mut offset = Vec::with_capacity(n + 1);
        offset.push(0);
        for i in 0..n {
            offset.push(offset[i] + i - first[i] + 1);
        }
        let mut data = vec![0.0; offset[n]];
        for old in 0..n {
            let i = inv[old];
            for (jo, v) in a.row(old) {
                let j = inv[jo];
                if j <= i {
                    data[offset[i] + j - first[i]] += v;
                }
            }
        }
        for i in 0..n {
            let fi = first[i];
            for j in fi..=i {
                let fj = first[j];
                let k0 = fi.max(fj);
                let mut s = data[offset[i] + j - fi];
                let ri = offset[i] + k0 - fi;
                let rj = offset[j] + k0 - fj;
                for k in 0..j - k0 {
                    s -= data[ri + k] * data[rj + k];
                }
                if j == i {
                    if s <= 0.0 {
                        return Err(Error::LinearAlgebra(format!("matrix not positive definite at pivot {i}")));
                    }
                    data[offset[i] + i - fi] = s.sqrt();
                } else {
                    data[offset[i] + j - fi] = s / data[offset[j + 1] - 1];
                }
            }
        }
        Ok(SkylineCholesky { n, perm, first, offset, data })
    }

    pub fn envelope_size(&self) -> usize {
        self.data.len()
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&old| b[old]).collect();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.data[self.offset[i]..self.offset[i + 1]];
            let s: f64 = (fi..i).map(|k| row[k - fi] * y[k]).sum();
            y[i] = (y[i] - s) / row[i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let row = &self.data[self.offset[i]..self.offset[i + 1]];
            y[i] /= row[i - fi];
            let yi = y[i];
            for k in fi..i {
                y[k] -= row[k - fi] * yi;
            }
        }
        let mut x = vec![0.0; n];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = y[new];
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// M-orthonormal dof vectors.
    pub eigenvectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverKind {
    Auto,
    Sparse,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub kind: SolverKind,
    pub shift: f64,
    pub block: usize,
    pub tol: f64,
    pub seed: u64,
    /// Systems below this size go to the dense solver under `Auto`.
    pub dense_below: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { kind: SolverKind::Auto, shift: -0.1, block: 4, tol: 1e-8, seed: 7, dense_below: 2000 }
    }
}

/// The `n` smallest eigenpairs of `K v = λ M v`.
pub fn solve_smallest(sys: &AssembledSystem, n: usize) -> Result<EigenResult> {
    solve_smallest_with(sys, n, &SolverOptions::default())
}

pub fn solve_smallest_with(sys: &AssembledSystem, n: usize, opts: &SolverOptions) -> Result<EigenResult> {
    if n == 0 || n >= sys.num_dofs {
        return Err(Error::Invalid(format!("requested {n} eigenpairs of a {}-dof system", sys.num_dofs)));
    }
    let dense = match opts.kind {
        SolverKind::Dense => true,
        SolverKind::Sparse => false,
        SolverKind::Auto => sys.num_dofs < opts.dense_below,
    };
    if dense {
        solve_dense(sys, n)
    } else {
        solve_sparse(sys, n, opts)
    }
}

/// Dense generalized symmetric eigensolve via the Cholesky factor of `M`.
pub fn solve_dense(sys: &AssembledSystem, n: usize) -> Result<EigenResult> {
    let k = sys.k.to_dense();
    let m = sys.m.to_dense();
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::LinearAlgebra("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::LinearAlgebra("singular Cholesky factor".into()))?;
    let c = &linv * k * linv.transpose();
    let c = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::new(c);
    let mut idx: Vec<usize> = (0..sys.num_dofs).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lt_inv = linv.transpose();
    let mut out = EigenResult { eigenvalues: vec![], eigenvectors: vec![], residuals: vec![] };
    for &i in idx.iter().take(n) {
        let y = eig.eigenvectors.column(i);
        let x: Vec<f64> = (&lt_inv * y).iter().copied().collect();
        let lam = eig.eigenvalues[i];
        out.residuals.push(sys.residual(lam, &x));
        out.eigenvalues.push(lam);
        out.eigenvectors.push(x);
    }
    Ok(out)
}

/// Block shift-invert Lanczos with full M-reorthogonalization and
/// Rayleigh–Ritz on `VᵀKV`.
pub fn solve_sparse(sys: &AssembledSystem, n: usize, opts: &SolverOptions) -> Result<EigenResult> {
    let dim = sys.num_dofs;
    let shifted = sys.k.add_scaled(-opts.shift, &sys.m);
    let chol = SkylineCholesky::factor(&shifted)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let b = opts.block.max(1);

    let mut v: Vec<Vec<f64>> = Vec::new();
    let mut mv: Vec<Vec<f64>> = Vec::new();
    let mut kv: Vec<Vec<f64>> = Vec::new();
    let mut h: Vec<Vec<f64>> = Vec::new();

    // M-orthonormalizes `w` against the basis and appends it; false if it vanished.
    let push = |w: Vec<f64>, v: &mut Vec<Vec<f64>>, mv: &mut Vec<Vec<f64>>, kv: &mut Vec<Vec<f64>>, h: &mut Vec<Vec<f64>>| -> bool {
        let mut w = w;
        let start = sys.m_norm(&w);
        if start == 0.0 {
            return false;
        }
        for _ in 0..2 {
            for (q, mq) in v.iter().zip(mv.iter()) {
                let c = dot(&w, mq);
                for (x, y) in w.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
        }
        let mw = sys.m.mul_vec(&w);
        let nrm = dot(&w, &mw).max(0.0).sqrt();
        if nrm < 1e-10 * start {
            return false;
        }
        let w: Vec<f64> = w.iter().map(|x| x / nrm).collect();
        let mw: Vec<f64> = mw.iter().map(|x| x / nrm).collect();
        let kw = sys.k.mul_vec(&w);
        let row: Vec<f64> = v.iter().map(|q| dot(q, &kw)).collect();
        for (r, hr) in h.iter_mut().zip(&row) {
            r.push(*hr);
        }
        let mut newrow = row;
        newrow.push(dot(&w, &kw));
        h.push(newrow);
        v.push(w);
        mv.push(mw);
        kv.push(kw);
        true
    };

    let mut last_block: Vec<usize> = Vec::new();
    for _ in 0..b {
        let w: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if push(w, &mut v, &mut mv, &mut kv, &mut h) {
            last_block.push(v.len() - 1);
        }
    }
    let max_iter = 50 * n;
    let mut next_check = (n + 2 * b).min(dim);
    let mut last_worst = (0usize, f64::INFINITY);
    for _ in 0..max_iter {
        if v.len() >= next_check || v.len() == dim {
            let (vals, vecs, worst) = rayleigh_ritz(sys, &v, &mv, &kv, &h, n);
            if worst.1 <= opts.tol || v.len() == dim {
                if worst.1 > opts.tol {
                    return Err(Error::NoConvergence { index: worst.0, residual: worst.1 });
                }
                let residuals = vecs.iter().zip(&vals).map(|(x, &l)| sys.residual(l, x)).collect();
                return Ok(EigenResult { eigenvalues: vals, eigenvectors: vecs, residuals });
            }
            last_worst = worst;
            next_check = ((v.len() as f64 * 1.2) as usize + b).min(dim);
        }
        let mut block = Vec::with_capacity(b);
        for &j in &last_block {
            let w = chol.solve(&mv[j]);
            if push(w, &mut v, &mut mv, &mut kv, &mut h) {
                block.push(v.len() - 1);
            }
        }
        while block.len() < b.min(dim - v.len().min(dim)) {
            let w: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if push(w, &mut v, &mut mv, &mut kv, &mut h) {
                block.push(v.len() - 1);
            }
        }
        if block.is_empty() && v.len() < dim {
            return Err(Error::Numerical("Krylov basis stopped growing".into()));
        }
        last_block = block;
    }
    Err(Error::NoConvergence { index: last_worst.0, residual: last_worst.1 })
}

type RitzOut = (Vec<f64>, Vec<Vec<f64>>, (usize, f64));

fn rayleigh_ritz(
    sys: &AssembledSystem,
    v: &[Vec<f64>],
    mv: &[Vec<f64>],
    kv: &[Vec<f64>],
    h: &[Vec<f64>],
    n: usize,
) -> RitzOut {
    let m = v.len();
    let hm = DMatrix::from_fn(m, m, |i, j| 0.5 * (h[i][j] + h[j][i]));
    let eig = SymmetricEigen::new(hm);
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let dim = sys.num_dofs;
    let mut vals = Vec::with_capacity(n);
    let mut vecs = Vec::with_capacity(n);
    let mut worst = (0usize, 0.0f64);
    for (rank, &i) in idx.iter().take(n).enumerate() {
        let y = eig.eigenvectors.column(i);
        let lam = eig.eigenvalues[i];
        let mut x = vec![0.0; dim];
        let mut r = vec![0.0; dim];
        for (c, &yc) in y.iter().enumerate() {
            for d in 0..dim {
                x[d] += yc * v[c][d];
                r[d] += yc * (kv[c][d] - lam * mv[c][d]);
            }
        }
        let res = dot(&r, &r).sqrt();
        if res > worst.1 {
            worst = (rank, res);
        }
        vals.push(lam);
        vecs.push(x);
    }
    (vals, vecs, worst)
}

/// Eigenvalue counting function with a least-squares slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Staircase {
    /// `(λ_i, N(λ_i))` with `N(λ) = #{λ_n ≤ λ}`.
    pub points: Vec<(f64, usize)>,
    pub slope: f64,
}

pub fn weyl_staircase(eigs: &[f64]) -> Result<Staircase> {
    if eigs.len() < 2 {
        return Err(Error::Invalid("need at least two eigenvalues".into()));
    }
    let mut sorted = eigs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let points: Vec<(f64, usize)> = sorted
        .iter()
        .map(|&l| (l, sorted.iter().filter(|&&x| x <= l).count()))
        .collect();
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1 as f64).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 as f64 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { f64::NAN };
    Ok(Staircase { points, slope })
}

/// Groups sorted eigenvalues whose relative gap is at most `tol`
/// (absolute below 1); returns the group id of each eigenvalue.
pub fn group_eigenvalues(eigs: &[f64], tol: f64) -> Vec<usize> {
    let mut ids = Vec::with_capacity(eigs.len());
    let mut g = 0;
    for (i, &l) in eigs.iter().enumerate() {
        if i > 0 && (l - eigs[i - 1]).abs() > tol * l.abs().max(1.0) {
            g += 1;
        }
        ids.push(g);
    }
    ids
}

/// Writes `index,lambda,residual,group` rows.
pub fn write_eigen_csv<W: Write>(out: &mut W, res: &EigenResult, groups: &[usize]) -> Result<()> {
    writeln!(out, "index,lambda,residual,group")?;
    for (i, (&l, &r)) in res.eigenvalues.iter().zip(&res.residuals).enumerate() {
        writeln!(out, "{},{:.12},{:.3e},{}", i, l, r, groups.get(i).copied().unwrap_or(i))?;
    }
    Ok(())
}

pub fn write_staircase_csv<W: Write>(out: &mut W, st: &Staircase) -> Result<()> {
    writeln!(out, "lambda,count")?;
    for (l, c) in &st.points {
        writeln!(out, "{l:.12},{c}")?;
    }
    Ok(())
}
