mod common;

use hplanforms::fem::{self, BoundaryConditions, Condition, SolverKind, SolverOptions};
use hplanforms::hypgeo::{self, C64};
use hplanforms::mesh::{self, EdgeTag, Mesh};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CONDITIONS: [Condition; 2] = [Condition::Neumann, Condition::Dirichlet];

fn per_tag(pq: Condition, qr: Condition, rp: Condition) -> BoundaryConditions {
    BoundaryConditions::PerTag(vec![(EdgeTag::PQ, pq), (EdgeTag::QR, qr), (EdgeTag::RP, rp)])
}

fn compare(mesh: &Mesh, bc: &BoundaryConditions) -> Option<f64> {
    let sys = fem::apply_bc(&fem::assemble(mesh).unwrap(), mesh, bc).ok()?;
    if sys.num_dofs < 3 || sys.num_dofs > 500 {
        return None;
    }
    let n = (sys.num_dofs - 1).min(12);
    let opts = SolverOptions { kind: SolverKind::Sparse, ..Default::default() };
    let sparse = fem::solve_smallest_with(&sys, n, &opts).unwrap();
    let dense = fem::solve_dense(&sys, n).unwrap();
    let worst = sparse
        .eigenvalues
        .iter()
        .zip(&dense.eigenvalues)
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max);
    Some(worst)
}

#[test]
fn sparse_solver_matches_dense_on_every_small_mesh() {
    let mut checked = 0;
    let mut level = 2;
    while mesh::triangle_nodes(level) <= 500 {
        let tau = mesh::mesh_triangle_level(level).unwrap();
        for pq in CONDITIONS {
            for qr in CONDITIONS {
                for rp in CONDITIONS {
                    if let Some(err) = compare(&tau, &per_tag(pq, qr, rp)) {
                        assert!(err <= 1e-8, "level {level} {pq:?}/{qr:?}/{rp:?}: {err}");
                        checked += 1;
                    }
                }
            }
        }
        level += 1;
    }
    for r in 0..3 {
        let oct = mesh::mesh_octagon(r).unwrap();
        if let Some(err) = compare(&oct, &BoundaryConditions::Periodic) {
            assert!(err <= 1e-8, "octagon refinement {r}: {err}");
            checked += 1;
        }
    }
    assert!(checked > 200, "only {checked} systems compared");
}

#[test]
fn horocycle_bracket_matches_the_length_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let z = common::random_point(&mut rng, 0.95);
        let b = C64::from_polar(1.0, rand::Rng::gen_range(&mut rng, 0.0..std::f64::consts::TAU));
        let err = (hypgeo::horocycle_bracket(z, b) - common::horocycle_length_oracle(z, b)).abs();
        assert!(err <= 1e-9, "{err} at {}", z.0);
    }
}

#[test]
fn assembled_matrices_are_consistent() {
    let tau = mesh::mesh_triangle(400).unwrap();
    let sys = fem::assemble(&tau).unwrap();
    assert!(sys.k.asymmetry() < 1e-14 * sys.k.max_abs());
    assert!(sys.m.asymmetry() < 1e-14 * sys.m.max_abs());
    let ones = vec![1.0; sys.num_dofs];
    let k1 = sys.k.mul_vec(&ones);
    assert!(k1.iter().all(|v| v.abs() < 1e-10));
    // the mesh is a polygonal approximation of τ, whose area is 4π/96
    let area = 4.0 * std::f64::consts::PI / 96.0;
    assert!((sys.area() - area).abs() < 1e-3 * area);
}

#[test]
fn periodic_system_keeps_the_constant_mode() {
    let oct = mesh::mesh_octagon(2).unwrap();
    let sys = fem::apply_bc(&fem::assemble(&oct).unwrap(), &oct, &BoundaryConditions::Periodic).unwrap();
    let masters = oct.periodic_masters();
    let distinct = masters.iter().enumerate().filter(|&(i, &m)| i == m).count();
    assert_eq!(sys.num_dofs, distinct);
    let res = fem::solve_dense(&sys, 4).unwrap();
    assert!(res.eigenvalues[0].abs() < 1e-10);
    assert!(res.eigenvalues[1] > 1.0);
}

#[test]
fn dirichlet_eigenvalue_decreases_under_refinement() {
    let bc = per_tag(Condition::Dirichlet, Condition::Dirichlet, Condition::Dirichlet);
    let mut last = f64::INFINITY;
    for level in [8, 16, 32] {
        let tau = mesh::mesh_triangle_level(level).unwrap();
        let sys = fem::apply_bc(&fem::assemble(&tau).unwrap(), &tau, &bc).unwrap();
        let l = fem::solve_smallest(&sys, 1).unwrap().eigenvalues[0];
        assert!(l < last, "level {level}: {l} after {last}");
        last = l;
    }
}
