// The 96-element group G*: conjugacy classes, the character table, the
// subgroup catalog and the isotropy types admitting H-planforms.

use hplanforms::symgroup::{self, NUM_CLASSES};

pub fn run_example() -> hplanforms::Result<()> {
    let group = symgroup::build_group()?;
    println!("|G*| = {}", group.order());
    println!("{:<20} {:>5} {:>6} {:>8}", "class", "size", "order", "printed");
    for (i, c) in group.classes.iter().enumerate() {
        println!("{:<20} {:>5} {:>6} {:>8}", c.label, c.size, c.order, symgroup::PRINTED_CLASS_SIZES[i]);
    }

    let table = symgroup::character_table(&group)?;
    println!("orthogonality defect {:.1e}", table.orthogonality_defect());
    for j in 0..NUM_CLASSES {
        let row: Vec<String> = (0..NUM_CLASSES).map(|c| format!("{:>6.3}", table.value(j, c))).collect();
        println!("{:<6}{}", symgroup::irrep_label(j), row.join(""));
    }

    // words in the named generators
    let g = group.word("rho*sigma^2*eps")?;
    println!("rho*sigma^2*eps has order {} and lies in class {}", group.element_order(g), group.classes[group.class_of(g)].label);

    let catalog = symgroup::subgroup_catalog(&group)?;
    println!("{} cataloged subgroups", catalog.len());
    for rep in symgroup::classify_isotropy(&group, &catalog)? {
        let status = if rep.theorem_reproduced { "ok".to_string() } else { format!("missing {:?}", rep.missing) };
        println!("{:<6} dim {}  listed {:?}  {}  maximal {:?}", rep.irrep, rep.dimension, rep.theorem, status, rep.maximal);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> hplanforms::Result<()> {
    run_example()
}
