//! The cobordism pipeline against an independent state-sum oracle.

mod common;

use cobkh::tangle::builtin::builtin;
use cobkh::tqft::HomologyTable;
use common::oracle::against_oracle;

fn compare(name: &str) -> HomologyTable {
    against_oracle(name, &builtin(name).unwrap()).unwrap_or_else(|e| panic!("{e}"))
}

#[test]
fn unknot() {
    let z = compare("unknot");
    assert_eq!(z.get(0, 1).free, 1);
    assert_eq!(z.get(0, -1).free, 1);
    assert_eq!(z.groups.len(), 2);
}

#[test]
fn left_trefoil() {
    let z = compare("trefoil_left");
    assert_eq!(z.support(), vec![-3, -2, 0]);
    assert_eq!(z.total_free(), 4);
    let torsion: Vec<u64> = z.groups.values().flat_map(|g| g.torsion.clone()).collect();
    assert_eq!(torsion, vec![2]);
}

#[test]
fn hopf_link() {
    let z = compare("hopf");
    assert_eq!(z.total_free(), 4);
    assert_eq!(z.torsion_count(), 0);
}

#[test]
fn kinks_and_r2_closures() {
    for name in ["kink_pos", "kink_neg"] {
        compare(name);
    }
}
