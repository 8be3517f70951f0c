// The first eigenvalues of the Laplace–Beltrami operator on the octagon
// with periodic boundary conditions, grouped into eigenspaces and labelled
// by irrep, together with the Weyl staircase.

use hplanforms::planforms::{self, PeriodicSetup};
use hplanforms::{fem, mesh, symgroup};

pub fn run_with(nodes: usize, n: usize) -> hplanforms::Result<Vec<(f64, String)>> {
    let group = symgroup::build_group()?;
    let refinement = mesh::octagon_refinement_for(nodes)?;
    let setup = PeriodicSetup::new(&group, refinement, true)?;
    println!("octagon mesh: {} nodes, {} periodic dofs", setup.mesh.num_nodes(), setup.num_dofs());
    let spectrum = planforms::solve_periodic(&setup, n)?;
    let mut out = Vec::new();
    println!("{:>12} {:>4} {:>7} {:>10}", "lambda", "mult", "irrep", "deviation");
    for space in &spectrum.spaces {
        let c = planforms::classify_eigenspace(space, &setup, &group);
        let label = c.irrep.clone().unwrap_or_else(|| format!("?{}", c.best));
        println!("{:>12.5} {:>4} {:>7} {:>10.1e}{}", space.eigenvalue, c.multiplicity, label, c.deviation, if space.ambiguous { "  ambiguous" } else { "" });
        out.push((space.eigenvalue, label));
    }
    if spectrum.eigenvalues.len() >= 2 {
        let st = fem::weyl_staircase(&spectrum.eigenvalues)?;
        println!("least-squares slope of N(λ): {:.4}", st.slope);
    }
    Ok(out)
}

pub fn run_example() -> hplanforms::Result<()> {
    run_with(3641, 100).map(|_| ())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
