use std::sync::OnceLock;

use hplanforms::symgroup::{self, ElementSet, SymmetryGroup, NUM_CLASSES, ORDER};
use proptest::prelude::*;

fn group() -> &'static SymmetryGroup {
    static G: OnceLock<SymmetryGroup> = OnceLock::new();
    G.get_or_init(|| symgroup::build_group().unwrap())
}

fn element() -> impl Strategy<Value = usize> {
    0..ORDER
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in element(), b in element(), c in element()) {
        let g = group();
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    }

    #[test]
    fn inverses_and_identity(a in element()) {
        let g = group();
        let id = g.named.id;
        prop_assert_eq!(g.mul(a, g.inverse(a)), id);
        prop_assert_eq!(g.mul(id, a), a);
        prop_assert_eq!(g.pow(a, g.element_order(a) as i32), id);
    }

    #[test]
    fn characters_are_class_functions(a in element(), h in element(), irrep in 0..NUM_CLASSES) {
        let g = group();
        let b = g.conj(h, a);
        prop_assert_eq!(g.class_of(a), g.class_of(b));
        prop_assert_eq!(symgroup::character(g, irrep, a), symgroup::character(g, irrep, b));
    }

    #[test]
    fn orientation_is_a_homomorphism(a in element(), b in element()) {
        let g = group();
        prop_assert_eq!(g.is_reversing(g.mul(a, b)), g.is_reversing(a) != g.is_reversing(b));
    }

    #[test]
    fn tile_action_is_a_left_action(a in element(), b in element(), k in 0..ORDER) {
        let g = group();
        let ab = g.mul(a, b);
        let lhs = g.elements[ab].perm[k] as usize;
        let rhs = g.elements[a].perm[g.elements[b].perm[k] as usize] as usize;
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn classes_partition_the_group() {
    let g = group();
    assert_eq!(g.order(), 96);
    assert_eq!(g.classes.len(), NUM_CLASSES);
    let mut seen = ElementSet::empty();
    for c in &g.classes {
        assert!(seen.0 & c.elements.0 == 0);
        seen.0 |= c.elements.0;
        assert_eq!(c.elements.len(), c.size);
        assert_eq!(96 % c.size, 0);
        for k in c.elements.iter() {
            assert_eq!(g.element_order(k), c.order);
        }
    }
    assert_eq!(seen, ElementSet::full());
    assert_eq!(g.orientation_preserving().len(), 48);
}

#[test]
fn class_sizes_agree_with_the_character_table() {
    let g = group();
    let sizes: Vec<usize> = g.classes.iter().map(|c| c.size).collect();
    assert_eq!(sizes, symgroup::class_sizes_from_characters().to_vec());
}

#[test]
fn character_orthogonality_is_exact() {
    let g = group();
    let t = symgroup::character_table(g).unwrap();
    assert!(t.orthogonality_defect() < 1e-12);
    let dims: usize = (0..NUM_CLASSES).map(|j| t.dimension(j).pow(2)).sum();
    assert_eq!(dims, ORDER);
}

#[test]
fn catalog_matches_orders_and_decompositions() {
    let g = group();
    let cat = symgroup::subgroup_catalog(g).unwrap();
    assert_eq!(cat.len(), 43);
    for s in &cat {
        assert!(g.is_closed(&s.elements), "{} is not closed", s.name);
        assert_eq!(ORDER % s.order(), 0);
        assert_eq!(s.decomposition, g.decomposition(&s.elements));
    }
    assert_eq!(symgroup::find_subgroup(&cat, "G*").unwrap().order(), 96);
    assert_eq!(symgroup::find_subgroup(&cat, "G").unwrap().order(), 48);
}

#[test]
fn fixed_dimensions_from_the_trace_formula() {
    let g = group();
    let cat = symgroup::subgroup_catalog(g).unwrap();
    let h = |n: &str| symgroup::find_subgroup(&cat, n).unwrap();
    assert_eq!(symgroup::fixed_dim(g, 4, h("Q8")).unwrap(), 2);
    for (irrep, name) in [(4, "D~8"), (4, "Q8k'"), (7, "C8k"), (7, "C~6k'"), (7, "D~2k")] {
        assert_eq!(symgroup::fixed_dim(g, irrep, h(name)).unwrap(), 1, "{name}");
    }
    for irrep in 0..NUM_CLASSES {
        assert_eq!(symgroup::fixed_dim(g, irrep, h("1")).unwrap(), symgroup::CHARACTERS[irrep][0].int as usize);
    }
}

#[test]
fn isotropy_classification_reproduces_the_listed_pairs() {
    let g = group();
    let cat = symgroup::subgroup_catalog(g).unwrap();
    let iso = symgroup::classify_isotropy(g, &cat).unwrap();
    for (k, r) in iso.iter().enumerate() {
        if k == 6 {
            // C4κ' has a trivial fixed space in χ7; its conjugate C'4κ' carries the axial line
            assert_eq!(r.missing, vec!["C4k'".to_string()]);
            assert_eq!(r.dims["C'4k'"], 1);
        } else {
            assert!(r.theorem_reproduced, "{} misses {:?}", r.irrep, r.missing);
        }
    }
}

#[test]
fn real_irreps_are_orthogonal_homomorphisms() {
    let g = group();
    for irrep in 0..NUM_CLASSES {
        let rep = symgroup::build_irrep(g, irrep, 3).unwrap();
        assert!(rep.homomorphism_defect(g) < 1e-10);
        assert!(rep.trace_defect(g) < 1e-10);
        assert!(rep.orthogonality_defect() < 1e-10);
        assert_eq!(rep.commutant_dimension(g), 1, "chi{} is not absolutely irreducible", irrep + 1);
    }
}

#[test]
fn quotient_by_the_centre() {
    let stats = symgroup::quotient_by_center_statistics(group());
    assert_eq!(stats.values().sum::<usize>(), 24);
    assert_eq!(stats.get(&4), Some(&6));
}

#[test]
fn words_and_reflection_signs() {
    let g = group();
    assert_eq!(g.word("rho^8").unwrap(), g.named.id);
    assert_eq!(g.word("rho^4").unwrap(), g.named.minus_id);
    assert!(g.word("nonsense").is_err());
    assert_eq!(symgroup::reflection_signs(g, 0), [1.0; 3]);
    assert_eq!(symgroup::reflection_signs(g, 3), [-1.0; 3]);
}
