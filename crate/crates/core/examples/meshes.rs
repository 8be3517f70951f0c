// P1 meshes of the triangle τ and of the octagon, with the periodic side
// pairing and the exact node permutations of the group.

use hplanforms::{mesh, symgroup};

pub fn run_example() -> hplanforms::Result<()> {
    let tau = mesh::mesh_triangle(3000)?;
    println!("triangle: level {} nodes {} elements {} quality {:.3}", tau.level, tau.num_nodes(), tau.elements.len(), tau.min_quality());

    let group = symgroup::build_group()?;
    let oct = mesh::mesh_octagon_with(&group.tessellation, 8)?;
    let pairs = oct.pairing.as_ref().map_or(0, |p| p.len());
    println!("octagon:  nodes {} elements {} paired boundary nodes {}", oct.num_nodes(), oct.elements.len(), pairs);
    let masters = oct.periodic_masters();
    let classes = masters.iter().enumerate().filter(|(i, m)| i == *m).count();
    println!("          periodic dofs {classes}");
    println!("          hash {}", oct.hash());

    // ρ acts on the octagon mesh by a node permutation
    let rho = &group.elements[group.named.rho];
    let perm = oct.node_permutation(&rho.iso)?;
    let fixed = perm.iter().enumerate().filter(|(i, p)| i == *p).count();
    println!("rho fixes {fixed} node(s)");

    let json = tau.to_json()?;
    let back = mesh::Mesh::from_json(&json)?;
    println!("JSON round trip preserves hash: {}", back.hash() == tau.hash());
    Ok(())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
