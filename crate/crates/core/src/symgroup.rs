//! The 96-element symmetry group G* of the octagonal surface.
//!
//! Elements are identified with the tiles of the octagon: element `k` is the
//! unique automorphism carrying the base triangle τ onto tile `k`. Group
//! arithmetic therefore reduces to composing disc isometries and locating the
//! image tile modulo Γ, and the left action on tiles gives each element its
//! permutation.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeo::{Isometry, C64};
use crate::lattice::{self, Tessellation};

pub const ORDER: usize = 96;
pub const NUM_CLASSES: usize = 13;

/// A set of group elements as a bitmask over the 96 element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ElementSet(pub u128);

impl ElementSet {
    pub fn empty() -> Self {
        ElementSet(0)
    }
    pub fn full() -> Self {
        ElementSet((1u128 << ORDER) - 1)
    }
    pub fn insert(&mut self, k: usize) {
        self.0 |= 1u128 << k;
    }
    pub fn contains(&self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..ORDER).filter(move |&k| self.contains(k))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::empty();
        for k in iter {
            s.insert(k);
        }
        s
    }
}

/// An automorphism of the octagonal surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub index: usize,
    /// Representative isometry, reduced so that it maps τ into the octagon.
    pub iso: Isometry,
    /// Left action on the 96 tiles: tile `k` goes to tile `perm[k]`.
    pub perm: Vec<u8>,
    pub reversing: bool,
}

/// Equality modulo Γ: identical tile permutations and orientation.
pub fn element_equal(g: &GroupElement, h: &GroupElement) -> bool {
    g.perm == h.perm && g.reversing == h.reversing
}

/// Independent check of `g h^{-1} ∈ Γ`: the quotient isometry must move each
/// sample point to a Γ-equivalent point and preserve orientation.
pub fn congruent_mod_lattice(g: &Isometry, h: &Isometry) -> Result<bool> {
    if g.reversing != h.reversing {
        return Ok(false);
    }
    let q = g.compose(&h.inverse());
    for z in [C64::new(0.05, 0.02), C64::new(-0.11, 0.07), C64::new(0.03, -0.13)] {
        let a = lattice::wrap(crate::hypgeo::DiscPoint(z))?.point.0;
        let b = lattice::wrap(crate::hypgeo::DiscPoint(q.apply_c(z)))?.point.0;
        if (a - b).norm() > 1e-8 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Column labels of the character table, in table order.
pub const CLASS_LABELS: [&str; NUM_CLASSES] = [
    "Id", "rho", "rho^2", "-Id", "sigma", "eps", "-eps", "kappa", "kappa'",
    "sigmahat kappa", "rho sigmahat kappa", "eps kappa", "-eps kappa",
];

/// Words for the class representatives.
pub const CLASS_WORDS: [&str; NUM_CLASSES] = [
    "id", "rho", "rho^2", "-id", "sigma", "eps", "-eps", "kappa", "kappa1",
    "sigmahat*kappa", "rho*sigmahat*kappa", "eps*kappa", "-eps*kappa",
];

/// Class sizes as printed in the published class tables.
pub const PRINTED_CLASS_SIZES: [usize; NUM_CLASSES] = [1, 12, 6, 1, 12, 8, 8, 8, 8, 12, 12, 4, 4];

/// Class sizes forced by the character table: `|C| = |G| / Σ_j χ_j(C)²`.
/// These differ from [`PRINTED_CLASS_SIZES`] on the reversing classes; the
/// printed sizes violate row orthogonality of the printed characters.
pub fn class_sizes_from_characters() -> [usize; NUM_CLASSES] {
    let mut out = [0; NUM_CLASSES];
    for (c, o) in out.iter_mut().enumerate() {
        let s: f64 = CHARACTERS.iter().map(|r| r[c].value().powi(2)).sum();
        *o = (ORDER as f64 / s).round() as usize;
    }
    out
}

pub const CLASS_ORDERS: [usize; NUM_CLASSES] = [1, 8, 4, 2, 2, 3, 6, 2, 2, 8, 4, 12, 12];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjClass {
    pub label: String,
    pub representative: usize,
    pub size: usize,
    pub order: usize,
    pub elements: ElementSet,
}

/// An exact character value: `int + sqrt3 * √3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharValue {
    pub int: i8,
    pub sqrt3: i8,
}

impl CharValue {
    const fn n(int: i8) -> Self {
        CharValue { int, sqrt3: 0 }
    }
    const fn r3(sqrt3: i8) -> Self {
        CharValue { int: 0, sqrt3 }
    }
    pub fn value(&self) -> f64 {
        self.int as f64 + self.sqrt3 as f64 * 3f64.sqrt()
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.int, self.sqrt3) {
            (i, 0) => write!(f, "{i}"),
            (0, 1) => write!(f, "sqrt3"),
            (0, -1) => write!(f, "-sqrt3"),
            (i, s) => write!(f, "{i}{s:+}sqrt3"),
        }
    }
}

const fn row(v: [i8; NUM_CLASSES]) -> [CharValue; NUM_CLASSES] {
    let mut out = [CharValue::n(0); NUM_CLASSES];
    let mut k = 0;
    while k < NUM_CLASSES {
        out[k] = CharValue::n(v[k]);
        k += 1;
    }
    out
}

const fn with_sqrt3(mut r: [CharValue; NUM_CLASSES], s: i8) -> [CharValue; NUM_CLASSES] {
    r[11] = CharValue::r3(s);
    r[12] = CharValue::r3(-s);
    r
}

/// Irreducible characters of G*, rows χ1..χ13, columns in [`CLASS_LABELS`] order.
pub const CHARACTERS: [[CharValue; NUM_CLASSES]; NUM_CLASSES] = [
    row([1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]),
    row([1, -1, 1, 1, -1, 1, 1, 1, -1, -1, 1, 1, 1]),
    row([1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, -1, -1]),
    row([1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1]),
    row([2, 0, 2, 2, 0, -1, -1, -2, 0, 0, -2, 1, 1]),
    row([2, 0, 2, 2, 0, -1, -1, 2, 0, 0, 2, -1, -1]),
    row([3, 1, -1, 3, -1, 0, 0, -1, -1, 1, 3, 0, 0]),
    row([3, 1, -1, 3, -1, 0, 0, 1, 1, -1, -3, 0, 0]),
    row([3, -1, -1, 3, 1, 0, 0, 1, -1, 1, -3, 0, 0]),
    row([3, -1, -1, 3, 1, 0, 0, -1, 1, -1, 3, 0, 0]),
    row([4, 0, 0, -4, 0, -2, 2, 0, 0, 0, 0, 0, 0]),
    with_sqrt3(row([4, 0, 0, -4, 0, 1, -1, 0, 0, 0, 0, 0, 0]), 1),
    with_sqrt3(row([4, 0, 0, -4, 0, 1, -1, 0, 0, 0, 0, 0, 0]), -1),
];

/// The character table with class metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub entries: Vec<Vec<CharValue>>,
}

impl CharacterTable {
    pub fn value(&self, irrep: usize, class: usize) -> f64 {
        self.entries[irrep][class].value()
    }

    pub fn dimension(&self, irrep: usize) -> usize {
        self.entries[irrep][0].int as usize
    }

    /// `(1/|G|) Σ_classes size · χ_i χ_j`, the row inner product.
    pub fn row_inner(&self, i: usize, j: usize) -> f64 {
        let s: f64 = (0..NUM_CLASSES)
            .map(|c| self.class_sizes[c] as f64 * self.value(i, c) * self.value(j, c))
            .sum();
        s / ORDER as f64
    }

    /// `Σ_j χ_j(a) χ_j(b)`, the column inner product.
    pub fn column_inner(&self, a: usize, b: usize) -> f64 {
        (0..NUM_CLASSES).map(|j| self.value(j, a) * self.value(j, b)).sum()
    }

    /// Largest deviation from both orthogonality relations.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..NUM_CLASSES {
            for j in 0..NUM_CLASSES {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.row_inner(i, j) - expect).abs());
                let expect = if i == j { ORDER as f64 / self.class_sizes[i] as f64 } else { 0.0 };
                worst = worst.max((self.column_inner(i, j) - expect).abs());
            }
        }
        worst
    }
}

/// A cataloged subgroup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub name: String,
    pub generators: Vec<String>,
    pub elements: ElementSet,
    /// `(class label, count)` for every class the subgroup meets.
    pub decomposition: Vec<(String, usize)>,
}

impl SubgroupRecord {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Named elements used in words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Named {
    pub id: usize,
    pub rho: usize,
    pub sigma: usize,
    pub eps: usize,
    pub kappa: usize,
    pub kappa1: usize,
    pub kappa2: usize,
    pub minus_id: usize,
    pub sigmahat: usize,
    pub sigmatilde: usize,
}

/// The group G* with its multiplication table and conjugacy classes.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    pub tessellation: Tessellation,
    pub elements: Vec<GroupElement>,
    mult: Vec<[u8; ORDER]>,
    inv: Vec<usize>,
    pub named: Named,
    pub classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl SymmetryGroup {
    pub fn build() -> Result<Self> {
        build_group()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, n: i32) -> usize {
        let base = if n < 0 { self.inv[a] } else { a };
        (0..n.unsigned_abs()).fold(self.named.id, |acc, _| self.mul(acc, base))
    }

    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv[g])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.named.id {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_reversing(&self, a: usize) -> bool {
        self.elements[a].reversing
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Evaluates a word such as `"rho^2*sigma*rho^-2"` or `"-eps*kappa"`.
    ///
    /// Letters: `id`, `rho`, `sigma`, `eps`, `kappa`, `kappa1` (κ′ = ρκ),
    /// `kappa2` (κ″ = σκ), `sigmahat` (εσε⁻¹), `sigmatilde` (ρ²σρ⁻²).
    /// A leading `-` multiplies a factor by `-Id = ρ⁴`.
    pub fn word(&self, w: &str) -> Result<usize> {
        let mut acc = self.named.id;
        for tok in w.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (neg, tok) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.trim_matches(|c| c == '(' || c == ')')
                        .parse::<i32>()
                        .map_err(|_| Error::Invalid(format!("bad exponent in {tok}")))?,
                ),
                None => (tok, 1),
            };
            let n = &self.named;
            let base = match name {
                "id" => n.id,
                "rho" => n.rho,
                "sigma" => n.sigma,
                "eps" | "epsilon" => n.eps,
                "kappa" => n.kappa,
                "kappa1" => n.kappa1,
                "kappa2" => n.kappa2,
                "sigmahat" => n.sigmahat,
                "sigmatilde" => n.sigmatilde,
                other => return Err(Error::Invalid(format!("unknown letter {other}"))),
            };
            let mut f = self.pow(base, exp);
            if neg {
                f = self.mul(n.minus_id, f);
            }
            acc = self.mul(acc, f);
        }
        Ok(acc)
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::empty();
        set.insert(self.named.id);
        let mut frontier = vec![self.named.id];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn conjugate_set(&self, g: usize, set: &ElementSet) -> ElementSet {
        set.iter().map(|h| self.conj(g, h)).collect()
    }

    /// All distinct conjugates of a subgroup.
    pub fn conjugates(&self, set: &ElementSet) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = Vec::new();
        for g in 0..ORDER {
            let c = self.conjugate_set(g, set);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    pub fn are_conjugate(&self, a: &ElementSet, b: &ElementSet) -> bool {
        a.len() == b.len() && (0..ORDER).any(|g| self.conjugate_set(g, a) == *b)
    }

    /// Whether some conjugate of `a` is contained in `b`.
    pub fn is_subconjugate(&self, a: &ElementSet, b: &ElementSet) -> bool {
        (0..ORDER).any(|g| self.conjugate_set(g, a).is_subset(b))
    }

    pub fn decomposition(&self, set: &ElementSet) -> Vec<(String, usize)> {
        let mut counts = [0usize; NUM_CLASSES];
        for k in set.iter() {
            counts[self.class_of[k]] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(c, &n)| (CLASS_LABELS[c].to_string(), n))
            .collect()
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    pub fn orientation_preserving(&self) -> ElementSet {
        (0..ORDER).filter(|&k| !self.is_reversing(k)).collect()
    }

    /// Left regular representation matrix of `g` (a permutation matrix).
    pub fn regular_matrix(&self, g: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(ORDER, ORDER);
        for k in 0..ORDER {
            m[(self.mul(g, k), k)] = 1.0;
        }
        m
    }
}

/// Builds G* from the tessellation.
pub fn build_group() -> Result<SymmetryGroup> {
    let tess = lattice::build_tessellation()?;
    let n = tess.tiles.len();
    if n != ORDER {
        return Err(Error::Group(format!("tessellation has {n} tiles")));
    }
    let mut mult = vec![[0u8; ORDER]; ORDER];
    for a in 0..ORDER {
        for b in 0..ORDER {
            let g = tess.tiles[a].iso.compose(&tess.tiles[b].iso);
            let (k, _) = tess.reduce(&g)?;
            mult[a][b] = k as u8;
        }
    }
    let id = 0usize; // the identity tile is pushed first
    let mut inv = vec![usize::MAX; ORDER];
    for a in 0..ORDER {
        let row = &mult[a];
        if (0..ORDER).any(|b| (0..b).any(|c| row[c] == row[b])) {
            return Err(Error::Group(format!("row {a} of the multiplication table is not a permutation")));
        }
        inv[a] = (0..ORDER)
            .find(|&b| mult[a][b] as usize == id)
            .ok_or_else(|| Error::Group(format!("element {a} has no inverse")))?;
    }
    // associativity on a sample
    for a in (0..ORDER).step_by(7) {
        for b in (0..ORDER).step_by(5) {
            for c in (0..ORDER).step_by(3) {
                let l = mult[mult[a][b] as usize][c];
                let r = mult[a][mult[b][c] as usize];
                if l != r {
                    return Err(Error::Group("multiplication is not associative".into()));
                }
            }
        }
    }
    let elements: Vec<GroupElement> = (0..ORDER)
        .map(|k| GroupElement {
            index: k,
            iso: tess.tiles[k].iso,
            perm: mult[k].to_vec(),
            reversing: tess.tiles[k].iso.reversing,
        })
        .collect();

    let sym = lattice::triangle_symmetries(&tess.triangle);
    let locate = |g: &Isometry| -> Result<usize> { Ok(tess.reduce(g)?.0) };
    let rho = locate(&sym.rho)?;
    let sigma = locate(&sym.sigma)?;
    let eps = locate(&sym.epsilon)?;
    let kappa = locate(&sym.kappa)?;

    let mut group = SymmetryGroup {
        tessellation: tess,
        elements,
        mult,
        inv,
        named: Named {
            id,
            rho,
            sigma,
            eps,
            kappa,
            kappa1: 0,
            kappa2: 0,
            minus_id: 0,
            sigmahat: 0,
            sigmatilde: 0,
        },
        classes: Vec::new(),
        class_of: vec![usize::MAX; ORDER],
    };
    let g = &group;
    let minus_id = g.pow(rho, 4);
    let kappa1 = g.mul(rho, kappa);
    let kappa2 = g.mul(sigma, kappa);
    let sigmahat = g.mul(g.mul(eps, sigma), g.inverse(eps));
    let sigmatilde = g.mul(g.mul(g.pow(rho, 2), sigma), g.pow(rho, -2));
    group.named.minus_id = minus_id;
    group.named.kappa1 = kappa1;
    group.named.kappa2 = kappa2;
    group.named.sigmahat = sigmahat;
    group.named.sigmatilde = sigmatilde;

    compute_classes(&mut group)?;
    Ok(group)
}

fn compute_classes(group: &mut SymmetryGroup) -> Result<()> {
    let mut class_sets: Vec<ElementSet> = Vec::new();
    let mut seen = ElementSet::empty();
    for a in 0..ORDER {
        if seen.contains(a) {
            continue;
        }
        let c: ElementSet = (0..ORDER).map(|g| group.conj(g, a)).collect();
        seen.0 |= c.0;
        class_sets.push(c);
    }
    if class_sets.len() != NUM_CLASSES {
        return Err(Error::TableMismatch(format!(
            "found {} conjugacy classes, expected {NUM_CLASSES}",
            class_sets.len()
        )));
    }
    let sizes = class_sizes_from_characters();
    let mut classes = Vec::with_capacity(NUM_CLASSES);
    let mut used = vec![false; NUM_CLASSES];
    for (c, word) in CLASS_WORDS.iter().enumerate() {
        let rep = group.word(word)?;
        let idx = class_sets
            .iter()
            .position(|s| s.contains(rep))
            .expect("every element lies in a class");
        if used[idx] {
            return Err(Error::TableMismatch(format!(
                "representative {word} falls in an already labelled class"
            )));
        }
        used[idx] = true;
        let set = class_sets[idx];
        let order = group.element_order(rep);
        if set.len() != sizes[c] || order != CLASS_ORDERS[c] {
            return Err(Error::TableMismatch(format!(
                "class {} has size {} and order {}, expected {} and {}",
                CLASS_LABELS[c],
                set.len(),
                order,
                sizes[c],
                CLASS_ORDERS[c]
            )));
        }
        for k in set.iter() {
            group.class_of[k] = c;
        }
        classes.push(ConjClass {
            label: CLASS_LABELS[c].to_string(),
            representative: rep,
            size: set.len(),
            order,
            elements: set,
        });
    }
    group.classes = classes;
    Ok(())
}

/// The 13 conjugacy classes, in character-table column order.
pub fn conjugacy_classes(group: &SymmetryGroup) -> &[ConjClass] {
    &group.classes
}

/// The stored character table, checked for orthogonality and against the
/// class sizes of `group`.
pub fn character_table(group: &SymmetryGroup) -> Result<CharacterTable> {
    let table = CharacterTable {
        class_labels: CLASS_LABELS.iter().map(|s| s.to_string()).collect(),
        class_sizes: group.classes.iter().map(|c| c.size).collect(),
        entries: CHARACTERS.iter().map(|r| r.to_vec()).collect(),
    };
    let defect = table.orthogonality_defect();
    if defect > 1e-12 {
        return Err(Error::TableMismatch(format!("orthogonality defect {defect:e}")));
    }
    Ok(table)
}

/// Character value of irrep `irrep` (0-based) at element `g`.
pub fn character(group: &SymmetryGroup, irrep: usize, g: usize) -> f64 {
    CHARACTERS[irrep][group.class_of(g)].value()
}

/// Catalog entry: name, generator words, and the expected class decomposition
/// as `(class index, count)` pairs.
struct CatalogEntry {
    name: &'static str,
    generators: &'static [&'static str],
    expected: &'static [(usize, usize)],
}

macro_rules! cat {
    ($name:expr, [$($g:expr),*], [$(($c:expr, $n:expr)),*]) => {
        CatalogEntry { name: $name, generators: &[$($g),*], expected: &[$(($c, $n)),*] }
    };
}

// Class indices: 0 Id, 1 rho, 2 rho^2, 3 -Id, 4 sigma, 5 eps, 6 -eps, 7 kappa,
// 8 kappa', 9 sigmahat kappa, 10 rho sigmahat kappa, 11 eps kappa, 12 -eps kappa.
const CATALOG: &[CatalogEntry] = &[
    cat!("G*", ["rho", "sigma", "eps", "kappa"],
        [(0, 1), (1, 12), (2, 6), (3, 1), (4, 12), (5, 8), (6, 8), (7, 6), (8, 12), (9, 12), (10, 2), (11, 8), (12, 8)]),
    cat!("G", ["rho", "sigma", "eps"], [(0, 1), (1, 12), (2, 6), (3, 1), (4, 12), (5, 8), (6, 8)]),
    cat!("G0", ["rho^2", "eps"], [(0, 1), (3, 1), (2, 6), (5, 8), (6, 8)]),
    cat!("D~8", ["rho", "sigmahat"], [(0, 1), (3, 1), (1, 4), (2, 6), (4, 4)]),
    cat!("D~6", ["-eps", "sigmatilde"], [(0, 1), (3, 1), (4, 6), (5, 2), (6, 2)]),
    cat!("C8", ["rho"], [(0, 1), (3, 1), (1, 4), (2, 2)]),
    cat!("Q8", ["rho^2", "sigma*rho^2*sigma"], [(0, 1), (3, 1), (2, 6)]),
    cat!("D~4", ["rho^2", "sigmahat"], [(0, 1), (3, 1), (2, 2), (4, 4)]),
    cat!("C~6", ["-eps"], [(0, 1), (3, 1), (5, 2), (6, 2)]),
    cat!("D~3", ["eps", "sigmatilde"], [(0, 1), (5, 2), (4, 3)]),
    cat!("C4", ["rho^2"], [(0, 1), (3, 1), (2, 2)]),
    cat!("C~4", ["rho^2*sigma*rho^2*sigma"], [(0, 1), (3, 1), (2, 2)]),
    cat!("D~2", ["-id", "sigma"], [(0, 1), (3, 1), (4, 2)]),
    cat!("C~3", ["eps"], [(0, 1), (5, 2)]),
    cat!("C2", ["-id"], [(0, 1), (3, 1)]),
    cat!("C~2", ["sigma"], [(0, 1), (4, 1)]),
    cat!("1", [], [(0, 1)]),
    cat!("G0k", ["rho^2", "eps", "kappa"],
        [(0, 1), (3, 1), (2, 6), (5, 8), (6, 8), (7, 6), (10, 2), (11, 8), (12, 8)]),
    cat!("G0k'", ["rho^2", "eps", "kappa1"], [(0, 1), (3, 1), (2, 6), (5, 8), (6, 8), (8, 12), (9, 12)]),
    cat!("D~8k", ["rho", "sigmahat", "kappa"],
        [(0, 1), (3, 1), (1, 4), (2, 6), (4, 4), (7, 6), (8, 4), (9, 4), (10, 2)]),
    cat!("D~6k'", ["-eps", "sigmatilde", "kappa1"],
        [(0, 1), (3, 1), (4, 6), (5, 2), (6, 2), (8, 6), (11, 2), (12, 2), (10, 2)]),
    cat!("C8k", ["rho", "kappa"], [(0, 1), (3, 1), (1, 4), (2, 2), (7, 4), (8, 4)]),
    cat!("C'8k", ["rho^2*sigma", "kappa"], [(0, 1), (3, 1), (1, 4), (2, 2), (7, 2), (10, 2), (9, 4)]),
    cat!("Q8k", ["rho^2", "sigma*rho^2*sigma", "kappa"], [(0, 1), (3, 1), (2, 6), (7, 6), (10, 2)]),
    cat!("Q8k'", ["rho^2", "sigma*rho^2*sigma", "kappa1"], [(0, 1), (3, 1), (2, 6), (8, 4), (9, 4)]),
    cat!("D~4k", ["rho^2", "sigmahat", "kappa"], [(0, 1), (3, 1), (2, 2), (4, 4), (7, 4), (9, 4)]),
    cat!("D~4k'", ["rho^2", "sigmahat", "kappa1"],
        [(0, 1), (3, 1), (2, 2), (4, 4), (7, 2), (8, 4), (10, 2)]),
    cat!("C'12", ["eps*kappa"], [(0, 1), (3, 1), (5, 2), (6, 2), (11, 2), (12, 2), (10, 2)]),
    cat!("C~6k'", ["-eps", "kappa1"], [(0, 1), (3, 1), (5, 2), (6, 2), (8, 6)]),
    cat!("C'8", ["sigmahat*kappa"], [(0, 1), (3, 1), (2, 2), (9, 4)]),
    cat!("C4k", ["rho^2", "kappa"], [(0, 1), (3, 1), (2, 2), (7, 4)]),
    cat!("C4k'", ["rho^2", "kappa1"], [(0, 1), (3, 1), (2, 2), (8, 4)]),
    cat!("D~2k", ["-id", "sigma", "kappa"], [(0, 1), (3, 1), (4, 2), (7, 2), (8, 2)]),
    cat!("C'4k", ["rho*sigmahat*kappa", "kappa"], [(0, 1), (3, 1), (10, 2), (2, 2), (7, 2)]),
    cat!("C'4k'", ["rho*sigmahat*kappa", "kappa1"], [(0, 1), (3, 1), (10, 2), (4, 2), (8, 2)]),
    cat!("C~3k'", ["eps", "kappa1"], [(0, 1), (5, 2), (8, 3)]),
    cat!("C'4", ["rho*sigmahat*kappa"], [(0, 1), (3, 1), (10, 2)]),
    cat!("C2k", ["-id", "kappa"], [(0, 1), (3, 1), (7, 2)]),
    cat!("C2k'", ["-id", "kappa1"], [(0, 1), (3, 1), (8, 2)]),
    cat!("C~2k", ["sigma", "kappa"], [(0, 1), (4, 1), (7, 1), (8, 1)]),
    cat!("C~'2k", ["sigmatilde", "kappa"], [(0, 1), (4, 1), (7, 1), (8, 1)]),
    cat!("C1k", ["kappa"], [(0, 1), (7, 1)]),
    cat!("C1k'", ["kappa1"], [(0, 1), (8, 1)]),
];

/// Isotropy types admitting H-planforms, per irrep (χ1..χ13).
pub const THEOREM_ISOTROPY: [&[&str]; NUM_CLASSES] = [
    &["G*"],
    &["G0k"],
    &["G0k'"],
    &["G"],
    &["D~8", "Q8k'"],
    &["D~8k"],
    &["C'8k", "C'12", "C4k'"],
    &["C8k", "C~6k'", "D~2k"],
    &["D~6", "D~4k"],
    &["D~6k'", "D~4k'"],
    &["C~2k", "C~'2k"],
    &["D~3", "C~3k'", "C~2k", "C~'2k"],
    &["D~3", "C~3k'", "C~2k", "C~'2k"],
];

/// Builds every cataloged subgroup from its generator words and checks order
/// and class decomposition against the expected data.
pub fn subgroup_catalog(group: &SymmetryGroup) -> Result<Vec<SubgroupRecord>> {
    let mut out = Vec::with_capacity(CATALOG.len());
    for entry in CATALOG {
        let gens = entry
            .generators
            .iter()
            .map(|w| group.word(w))
            .collect::<Result<Vec<_>>>()?;
        let elements = group.closure(&gens);
        let mut counts = [0usize; NUM_CLASSES];
        for k in elements.iter() {
            counts[group.class_of(k)] += 1;
        }
        let mut expected = [0usize; NUM_CLASSES];
        for &(c, n) in entry.expected {
            expected[c] += n;
        }
        if counts != expected {
            return Err(Error::TableMismatch(format!(
                "subgroup {} has decomposition {:?}, expected {:?}",
                entry.name,
                group.decomposition(&elements),
                expected
            )));
        }
        out.push(SubgroupRecord {
            name: entry.name.to_string(),
            generators: entry.generators.iter().map(|s| s.to_string()).collect(),
            elements,
            decomposition: group.decomposition(&elements),
        });
    }
    Ok(out)
}

pub fn find_subgroup<'a>(catalog: &'a [SubgroupRecord], name: &str) -> Option<&'a SubgroupRecord> {
    catalog.iter().find(|s| s.name == name)
}

/// Irreps are indexed 0..13 for χ1..χ13.
pub fn irrep_label(irrep: usize) -> String {
    format!("chi{}", irrep + 1)
}

/// Parses `chi5`, `χ5` or `5` into the 0-based irrep index.
pub fn parse_irrep(s: &str) -> Result<usize> {
    let t = s.trim().trim_start_matches("chi").trim_start_matches('χ');
    match t.parse::<usize>() {
        Ok(k) if (1..=NUM_CLASSES).contains(&k) => Ok(k - 1),
        _ => Err(Error::Invalid(format!("unknown irrep {s}"))),
    }
}

/// Raw trace-formula value `(1/|H|) Σ_h χ(h)`.
pub fn trace_average(group: &SymmetryGroup, irrep: usize, h: &ElementSet) -> f64 {
    h.iter().map(|k| character(group, irrep, k)).sum::<f64>() / h.len() as f64
}

/// `dim V^H` by the trace formula.
pub fn fixed_dim(group: &SymmetryGroup, irrep: usize, h: &SubgroupRecord) -> Result<usize> {
    let v = trace_average(group, irrep, &h.elements);
    let r = v.round();
    if (v - r).abs() > 1e-9 || r < 0.0 {
        return Err(Error::Numerical(format!(
            "trace formula for {} on {} gave {v}",
            irrep_label(irrep),
            h.name
        )));
    }
    Ok(r as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrrepIsotropy {
    pub irrep: String,
    pub dimension: usize,
    /// Every cataloged subgroup with its fixed-space dimension.
    pub dims: BTreeMap<String, usize>,
    /// Cataloged subgroups with a one-dimensional fixed space.
    pub axial: Vec<String>,
    /// The listed isotropy types for this irrep.
    pub theorem: Vec<String>,
    /// Whether every listed type has a one-dimensional fixed space.
    pub theorem_reproduced: bool,
    /// Listed types whose fixed space is not one-dimensional.
    pub missing: Vec<String>,
    /// Axial types for which every strictly larger cataloged group (up to
    /// conjugacy) has a trivial fixed space.
    pub maximal: Vec<String>,
}

/// For each irrep, the cataloged subgroups `H` with `dim V^H = 1`.
pub fn classify_isotropy(
    group: &SymmetryGroup,
    catalog: &[SubgroupRecord],
) -> Result<Vec<IrrepIsotropy>> {
    let mut out = Vec::with_capacity(NUM_CLASSES);
    for irrep in 0..NUM_CLASSES {
        let mut dims = BTreeMap::new();
        let mut axial = Vec::new();
        for h in catalog {
            let d = fixed_dim(group, irrep, h)?;
            if d == 1 {
                axial.push(h.name.clone());
            }
            dims.insert(h.name.clone(), d);
        }
        let theorem: Vec<String> = THEOREM_ISOTROPY[irrep].iter().map(|s| s.to_string()).collect();
        let missing: Vec<String> = theorem.iter().filter(|t| dims.get(*t) != Some(&1)).cloned().collect();
        let theorem_reproduced = missing.is_empty();
        let maximal = axial
            .iter()
            .filter(|t| {
                let h = find_subgroup(catalog, t).expect("theorem names are cataloged");
                catalog
                    .iter()
                    .filter(|k| k.order() > h.order() && group.is_subconjugate(&h.elements, &k.elements))
                    .all(|k| dims[&k.name] == 0)
            })
            .cloned()
            .collect();
        out.push(IrrepIsotropy {
            irrep: irrep_label(irrep),
            dimension: CHARACTERS[irrep][0].int as usize,
            dims,
            axial,
            theorem,
            theorem_reproduced,
            missing,
            maximal,
        });
    }
    Ok(out)
}

/// Orthogonal matrices of a real irreducible representation, one per element.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepMatrices {
    pub irrep: usize,
    pub dim: usize,
    pub matrices: Vec<DMatrix<f64>>,
}

impl IrrepMatrices {
    /// Largest `‖ρ(g)ρ(h) - ρ(gh)‖` over all pairs.
    pub fn homomorphism_defect(&self, group: &SymmetryGroup) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..ORDER {
            for b in 0..ORDER {
                let lhs = &self.matrices[a] * &self.matrices[b];
                let d = (lhs - &self.matrices[group.mul(a, b)]).amax();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn trace_defect(&self, group: &SymmetryGroup) -> f64 {
        (0..ORDER)
            .map(|g| (self.matrices[g].trace() - character(group, self.irrep, g)).abs())
            .fold(0.0, f64::max)
    }

    pub fn orthogonality_defect(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| (m.transpose() * m - DMatrix::identity(self.dim, self.dim)).amax())
            .fold(0.0, f64::max)
    }

    /// Dimension of the space of matrices commuting with every `ρ(g)`.
    pub fn commutant_dimension(&self, group: &SymmetryGroup) -> usize {
        let d = self.dim;
        let n = &group.named;
        let gens = [n.rho, n.sigma, n.eps, n.kappa];
        let mut sys = DMatrix::<f64>::zeros(gens.len() * d * d, d * d);
        for (gi, &g) in gens.iter().enumerate() {
            let a = &self.matrices[g];
            // (A X - X A)_{ij} = Σ_k A_ik X_kj - X_ik A_kj, X_{kj} at column k*d + j
            for i in 0..d {
                for j in 0..d {
                    let r = gi * d * d + i * d + j;
                    for k in 0..d {
                        sys[(r, k * d + j)] += a[(i, k)];
                        sys[(r, i * d + k)] -= a[(k, j)];
                    }
                }
            }
        }
        let sv = sys.svd(false, false).singular_values;
        let nonzero = sv.iter().filter(|&&s| s > 1e-8).count();
        d * d - nonzero
    }

    /// `{g : ρ(g) = I}`.
    pub fn kernel(&self) -> ElementSet {
        (0..ORDER)
            .filter(|&g| (&self.matrices[g] - DMatrix::identity(self.dim, self.dim)).amax() < 1e-8)
            .collect()
    }
}

/// Extracts the irrep matrices by projecting the regular representation onto
/// its isotypic component and splitting that component with a generic
/// operator from the commuting right action.
pub fn build_irrep(group: &SymmetryGroup, irrep: usize, seed: u64) -> Result<IrrepMatrices> {
    let d = CHARACTERS[irrep][0].int as usize;
    let n = ORDER;
    // central projector (d/|G|) Σ χ(g) L(g)
    let mut proj = DMatrix::<f64>::zeros(n, n);
    for g in 0..n {
        let c = d as f64 / n as f64 * character(group, irrep, g);
        for k in 0..n {
            proj[(group.mul(g, k), k)] += c;
        }
    }
    let idem = (&proj * &proj - &proj).amax();
    if idem > 1e-10 {
        return Err(Error::Numerical(format!("central projector is not idempotent ({idem:e})")));
    }
    for attempt in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt * 7919));
        // symmetric element of the right action, commuting with every L(g)
        let mut x = DMatrix::<f64>::zeros(n, n);
        for h in 0..n {
            let c: f64 = rng.gen_range(-1.0..1.0);
            for k in 0..n {
                let j = group.mul(k, h);
                x[(j, k)] += c;
                x[(k, j)] += c;
            }
        }
        let m = &proj * x * &proj;
        let m = (&m + m.transpose()) * 0.5;
        let eig = SymmetricEigen::new(m);
        let scale = eig.eigenvalues.amax().max(1.0);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let nonzero: Vec<usize> =
            order.iter().copied().filter(|&k| eig.eigenvalues[k].abs() > 1e-8 * scale).collect();
        if nonzero.len() != d * d {
            continue;
        }
        // clusters of equal eigenvalues; each must have size d
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for &k in &nonzero {
            match clusters.last_mut() {
                Some(c) if (eig.eigenvalues[k] - eig.eigenvalues[c[0]]).abs() < 1e-8 * scale => c.push(k),
                _ => clusters.push(vec![k]),
            }
        }
        if clusters.len() != d || clusters.iter().any(|c| c.len() != d) {
            continue;
        }
        let pick = &clusters[d - 1];
        let gap = clusters
            .windows(2)
            .map(|w| (eig.eigenvalues[w[1][0]] - eig.eigenvalues[w[0][0]]).abs())
            .fold(f64::INFINITY, f64::min);
        if d > 1 && gap < 1e-4 * scale {
            continue;
        }
        let basis = DMatrix::from_columns(
            &pick.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect::<Vec<DVector<f64>>>(),
        );
        let matrices: Vec<DMatrix<f64>> = (0..n)
            .map(|g| {
                let mut lb = DMatrix::<f64>::zeros(n, d);
                for k in 0..n {
                    lb.row_mut(group.mul(g, k)).copy_from(&basis.row(k));
                }
                basis.transpose() * lb
            })
            .collect();
        let rep = IrrepMatrices { irrep, dim: d, matrices };
        if rep.homomorphism_defect(group) < 1e-8 && rep.trace_defect(group) < 1e-8 {
            return Ok(rep);
        }
    }
    Err(Error::Numerical(format!(
        "could not split the isotypic component of {}",
        irrep_label(irrep)
    )))
}

/// Name of the cataloged subgroup conjugate to the kernel of the irrep.
pub fn principal_isotropy(
    group: &SymmetryGroup,
    catalog: &[SubgroupRecord],
    rep: &IrrepMatrices,
) -> Option<String> {
    let k = rep.kernel();
    catalog
        .iter()
        .find(|s| group.are_conjugate(&s.elements, &k))
        .map(|s| s.name.clone())
}

/// Element orders in `G/{±Id}` as a histogram `order -> count`.
pub fn quotient_by_center_statistics(group: &SymmetryGroup) -> BTreeMap<usize, usize> {
    let g = group.orientation_preserving();
    let m = group.named.minus_id;
    let mut seen = ElementSet::empty();
    let mut hist = BTreeMap::new();
    for a in g.iter() {
        if seen.contains(a) {
            continue;
        }
        seen.insert(a);
        seen.insert(group.mul(m, a));
        // order of the coset a{±Id}
        let mut x = a;
        let mut n = 1;
        while x != group.named.id && x != m {
            x = group.mul(x, a);
            n += 1;
        }
        *hist.entry(n).or_insert(0) += 1;
    }
    hist
}

/// Boundary-condition sign for a reflection: χ of the reflection's class.
pub fn reflection_signs(group: &SymmetryGroup, irrep: usize) -> [f64; 3] {
    let n = &group.named;
    [
        character(group, irrep, n.kappa),
        character(group, irrep, n.kappa1),
        character(group, irrep, n.kappa2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn group() -> &'static SymmetryGroup {
        static G: OnceLock<SymmetryGroup> = OnceLock::new();
        G.get_or_init(|| build_group().unwrap())
    }

    #[test]
    fn order_and_index_two_subgroup() {
        let g = group();
        assert_eq!(g.order(), 96);
        assert_eq!(g.orientation_preserving().len(), 48);
    }

    #[test]
    fn rotation_relations() {
        let g = group();
        let n = g.named;
        assert_eq!(g.pow(n.rho, 8), n.id);
        assert_ne!(g.pow(n.rho, 4), n.id);
        assert_eq!(g.word("rho^4").unwrap(), n.minus_id);
        assert_eq!(g.pow(n.sigma, 2), n.id);
        assert_eq!(g.pow(n.eps, 3), n.id);
        assert_eq!(g.word("rho*sigma*eps").unwrap(), n.id);
        assert_ne!(g.word("sigma*eps*sigma^-1").unwrap(), n.eps);
    }

    #[test]
    fn presentation_relations() {
        let g = group();
        let id = g.named.id;
        for w in [
            "sigma^2",
            "eps^3",
            "sigma*eps*sigma*eps^-1*sigma*eps^-1*sigma*eps*sigma*eps^-1*sigma*eps^-1",
            "kappa2^2",
            "kappa2*sigma*kappa2*sigma",
            "kappa2*eps*kappa2*eps",
        ] {
            assert_eq!(g.word(w).unwrap(), id, "{w}");
        }
        assert_eq!(g.word("eps*kappa1").unwrap(), g.named.kappa2);
    }

    #[test]
    fn element_equality() {
        let g = group();
        let e = &g.elements;
        let n = g.named;
        assert!(element_equal(&e[n.rho], &e[n.rho]));
        assert!(!element_equal(&e[n.rho], &e[n.sigma]));
        // a lattice translation composed with rho is the same automorphism
        let g0 = lattice::build_generators().g[0];
        let shifted = g0.compose(&e[n.rho].iso);
        assert!(congruent_mod_lattice(&shifted, &e[n.rho].iso).unwrap());
        let (k, _) = g.tessellation.reduce(&shifted).unwrap();
        assert_eq!(k, n.rho);
        // but rho is not congruent to sigma or to kappa
        assert!(!congruent_mod_lattice(&e[n.rho].iso, &e[n.sigma].iso).unwrap());
        assert!(!congruent_mod_lattice(&e[n.id].iso, &e[n.kappa].iso).unwrap());
    }

    #[test]
    fn classes_match_tables() {
        let g = group();
        let cl = conjugacy_classes(g);
        assert_eq!(cl.len(), 13);
        assert_eq!(
            cl.iter().map(|c| c.size).collect::<Vec<_>>(),
            vec![1, 12, 6, 1, 12, 8, 8, 6, 12, 12, 2, 8, 8]
        );
        assert_eq!(class_sizes_from_characters().to_vec(), cl.iter().map(|c| c.size).collect::<Vec<_>>());
        assert_ne!(PRINTED_CLASS_SIZES.to_vec(), cl.iter().map(|c| c.size).collect::<Vec<_>>());
        assert_eq!(cl.iter().map(|c| c.size).sum::<usize>(), 96);
        assert_eq!(cl[0].order, 1);
        assert_eq!((cl[1].size, cl[1].order), (12, 8));
        // kappa'' = sigma kappa lies in the class of kappa'
        assert_eq!(g.class_of(g.named.kappa2), 8);
    }

    #[test]
    fn character_table_checks() {
        let g = group();
        let t = character_table(g).unwrap();
        assert!(t.orthogonality_defect() < 1e-12);
        assert!((0..13).all(|c| t.value(0, c) == 1.0));
        assert!((t.value(11, 11) - 3f64.sqrt()).abs() < 1e-15);
        let s: f64 = (0..13).map(|c| t.class_sizes[c] as f64 * t.value(4, c).powi(2)).sum();
        assert!((s - 96.0).abs() < 1e-12);
        let dims: usize = (0..13).map(|j| t.dimension(j).pow(2)).sum();
        assert_eq!(dims, 96);
        for c in 1..13 {
            assert!(t.column_inner(0, c).abs() < 1e-12);
        }
        // cross-check: chi2(sigma) chi2(kappa) = chi2(kappa')
        assert_eq!(t.value(1, 4) * t.value(1, 7), t.value(1, 8));
    }

    #[test]
    fn one_dimensional_characters_are_multiplicative() {
        let g = group();
        for irrep in 0..4 {
            for a in 0..96 {
                for b in 0..96 {
                    let lhs = character(g, irrep, g.mul(a, b));
                    let rhs = character(g, irrep, a) * character(g, irrep, b);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn catalog_examples() {
        let g = group();
        let cat = subgroup_catalog(g).unwrap();
        let g0 = find_subgroup(&cat, "G0").unwrap();
        assert_eq!(g0.order(), 24);
        assert_eq!(find_subgroup(&cat, "C8k").unwrap().order(), 16);
        assert_eq!(find_subgroup(&cat, "1").unwrap().decomposition, vec![("Id".to_string(), 1)]);
        for s in &cat {
            assert!(g.is_closed(&s.elements), "{}", s.name);
            assert_eq!(96 % s.order(), 0);
        }
        // the alias is conjugate to C4
        assert!(g.are_conjugate(
            &find_subgroup(&cat, "C~4").unwrap().elements,
            &find_subgroup(&cat, "C4").unwrap().elements
        ));
    }

    #[test]
    fn fixed_dim_examples() {
        let g = group();
        let cat = subgroup_catalog(g).unwrap();
        let h = |n: &str| find_subgroup(&cat, n).unwrap();
        assert_eq!(fixed_dim(g, 0, h("G*")).unwrap(), 1);
        assert_eq!(fixed_dim(g, 4, h("Q8")).unwrap(), 2);
        assert_eq!(fixed_dim(g, 5, h("Q8k")).unwrap(), 2);
        for s in cat.iter().filter(|s| s.elements.contains(g.named.minus_id)) {
            for irrep in 10..13 {
                assert_eq!(fixed_dim(g, irrep, s).unwrap(), 0, "{}", s.name);
            }
        }
    }

    #[test]
    fn fixed_dim_is_monotone_under_inclusion() {
        let g = group();
        let cat = subgroup_catalog(g).unwrap();
        for a in &cat {
            for b in &cat {
                if a.elements.is_subset(&b.elements) {
                    for irrep in 0..13 {
                        assert!(fixed_dim(g, irrep, b).unwrap() <= fixed_dim(g, irrep, a).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn isotropy_classification_examples() {
        let g = group();
        let cat = subgroup_catalog(g).unwrap();
        let rep = classify_isotropy(g, &cat).unwrap();
        for (k, r) in rep.iter().enumerate() {
            assert_eq!(r.theorem_reproduced, k != 6, "{}", r.irrep);
        }
        // the printed C4k' has a trivial fixed space for chi7; C'4k' is the
        // maximal axial type in its place
        assert_eq!(rep[6].dims["C4k'"], 0);
        assert_eq!(rep[6].missing, vec!["C4k'".to_string()]);
        assert!(rep[6].maximal.contains(&"C'4k'".to_string()));
        assert!(rep[1].axial.contains(&"G0k".to_string()));
        assert!(rep[3].axial.contains(&"G".to_string()));
        assert!(rep[5].axial.contains(&"D~8k".to_string()));
        assert_eq!(rep[5].dims["Q8k"], 2);
    }

    #[test]
    fn quotient_is_octahedral() {
        let hist = quotient_by_center_statistics(group());
        let expect: BTreeMap<usize, usize> = [(1, 1), (2, 9), (3, 8), (4, 6)].into_iter().collect();
        assert_eq!(hist, expect);
    }

    #[test]
    fn irreps_and_principal_isotropy() {
        let g = group();
        let cat = subgroup_catalog(g).unwrap();
        let expect = [
            "G*", "G0k", "G0k'", "G", "Q8", "Q8k", "C'4", "C2", "C2", "C'4", "1", "1", "1",
        ];
        for irrep in 0..13 {
            let rep = build_irrep(g, irrep, 1).unwrap();
            assert!(rep.homomorphism_defect(g) < 1e-10);
            assert!(rep.trace_defect(g) < 1e-10);
            assert!(rep.orthogonality_defect() < 1e-10);
            assert_eq!(rep.commutant_dimension(g), 1, "chi{}", irrep + 1);
            assert_eq!(principal_isotropy(g, &cat, &rep).as_deref(), Some(expect[irrep]));
        }
        let chi5 = build_irrep(g, 4, 1).unwrap();
        assert!((chi5.matrices[g.named.eps].trace() + 1.0).abs() < 1e-10);
    }
}
