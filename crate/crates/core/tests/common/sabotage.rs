//! Single-edit corruptions of the frozen catalog.

use cobkh::papermorph::catalog::{self, from_component, Component};
use cobkh::papermorph::{component_shape, Flavor, Paper};

/// Checks that read the catalog.
pub const CATALOG_CHECKS: [&str; 10] = [
    "fo_eqn",
    "fu_eqn",
    "g_eqn",
    "psi_square_eqns",
    "psi_vanishing",
    "prop_r4",
    "lemma_hexneg",
    "lemma_hexpos",
    "mainA_hexagons",
    "mainA_prism",
];

pub fn frozen(f: Flavor, name: &str) -> Component {
    catalog::frozen().unwrap()[f.name()][name].clone()
}

pub fn sabotaged(f: Flavor, name: &str, edit: impl FnOnce(&mut Component)) -> Paper {
    let paper = Paper::get().unwrap();
    let mut c = frozen(f, name);
    edit(&mut c);
    let (src, tgt, _) = component_shape(paper.setting(f), name).unwrap();
    let h = from_component(&c, &src, &tgt).unwrap();
    paper.replace(f, name, h).unwrap()
}

pub fn flip_sign(entry: usize, term: usize) -> impl FnOnce(&mut Component) {
    move |c| c.entries[entry].terms[term].coeff *= -1
}

pub fn toggle_dot(entry: usize, term: usize, disk: usize) -> impl FnOnce(&mut Component) {
    move |c| {
        let d = &mut c.entries[entry].terms[term].components[disk];
        d.dots = 1 - d.dots;
    }
}
