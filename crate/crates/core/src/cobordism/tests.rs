use super::*;
use crate::chain::state_surface;
use crate::tangle::builtin::builtin;
use crate::tangle::State;
use crate::tqft::{eval_map, eval_pre};

fn empty() -> FlatTangle {
    FlatTangle::loops_only(0)
}

fn scalar(c: &Cobordism) -> i64 {
    assert_eq!(c.cycle_count(), 0);
    c.coefficient(0)
}

fn closed(components: Vec<PreComponent>) -> Cobordism {
    PreSurface::new(empty(), empty(), 1, components).normalize().unwrap()
}

/// `(H, V)` smoothings of the crossing square and the saddles between them.
fn square() -> (FlatTangle, FlatTangle, Cobordism, Cobordism) {
    let d = builtin("neg_x").unwrap();
    let h = d.resolve(&State(vec![-1])).unwrap();
    let v = d.resolve(&State(vec![0])).unwrap();
    let minus = state_surface(&d, &h, &v, &[0]);
    let p = builtin("pos_x").unwrap();
    let v2 = p.resolve(&State(vec![0])).unwrap();
    let h2 = p.resolve(&State(vec![1])).unwrap();
    let plus = state_surface(&p, &v2, &h2, &[0]);
    (h.tangle, v.tangle, minus, plus)
}

#[test]
fn closed_surfaces_evaluate() {
    assert_eq!(scalar(&closed(vec![PreComponent::closed(0, 0)])), 0);
    assert_eq!(scalar(&closed(vec![PreComponent::closed(0, 1)])), 1);
    assert_eq!(scalar(&closed(vec![PreComponent::closed(0, 2)])), 0);
    assert_eq!(scalar(&closed(vec![PreComponent::closed(1, 0)])), 2);
    assert_eq!(scalar(&closed(vec![PreComponent::closed(2, 0)])), 0);
    assert_eq!(scalar(&closed(Vec::new())), 1);
}

#[test]
fn birth_then_death() {
    let e = empty();
    let b = Cobordism::birth(&e);
    let d = Cobordism::death(b.target(), 0).unwrap();
    assert!(d.compose(&b).is_zero());
    let dotted = d.dot(0).unwrap().compose(&b);
    assert_eq!(scalar(&dotted), 1);
    assert_eq!(b.qdeg(), Degree::Homogeneous(1));
    assert_eq!(d.qdeg(), Degree::Homogeneous(1));
}

#[test]
fn open_handle_is_twice_a_dot() {
    let t = FlatTangle::loops_only(1);
    let handle =
        PreSurface::new(t.clone(), t.clone(), 1, vec![PreComponent::new(vec![0, 1], 1, 0)]).normalize().unwrap();
    let id = Cobordism::identity(&t);
    assert_eq!(handle, id.dot(0).unwrap().scale(2));
    let pre = PreSurface::new(t.clone(), t, 1, vec![PreComponent::new(vec![0, 1], 1, 0)]);
    assert_eq!(eval_pre(&pre).unwrap(), eval_map(&handle).unwrap());
}

#[test]
fn identity_shapes() {
    let (_, v, _, _) = square();
    let id = Cobordism::identity(&v);
    assert_eq!(id.cycle_count(), 2);
    assert_eq!(id.terms().collect::<Vec<_>>(), vec![(0, 1)]);
    assert_eq!(id.qdeg(), Degree::Homogeneous(0));
    // source and target copies of a loop are separate cycles
    let l = Cobordism::identity(&FlatTangle::loops_only(1));
    assert_eq!(l.cycle_count(), 2);
    assert_eq!(l.terms().count(), 2);
}

#[test]
fn saddles() {
    let (h, v, minus, plus) = square();
    assert_eq!(minus.source(), &h);
    assert_eq!(minus.target(), &v);
    assert_eq!(minus.cycle_count(), 1);
    assert_eq!(minus.qdeg(), Degree::Homogeneous(-1));
    assert_eq!(plus.qdeg(), Degree::Homogeneous(-1));
    let back = plus.compose(&minus);
    assert_eq!(back.qdeg(), Degree::Homogeneous(-2));
    // the tube joining the two identity sheets of H
    assert_eq!(back, Cobordism::identity(&h).attach_tube(0, 1).unwrap());
}

#[test]
fn dot_on_a_strand() {
    let (_, v, _, _) = square();
    let d = Cobordism::identity(&v).dot(0).unwrap();
    assert_eq!(d.qdeg(), Degree::Homogeneous(-2));
    assert!(d.dot(0).unwrap().is_zero());
}

#[test]
fn tube_between_strands() {
    let (_, v, _, _) = square();
    let id = Cobordism::identity(&v);
    let tube = id.attach_tube(0, 1).unwrap();
    assert_eq!(tube, id.dot(0).unwrap().add(&id.dot(1).unwrap()));
    assert!(tube.equals(&id.dot(0).unwrap().add(&id.dot(1).unwrap())).unwrap());
    assert_eq!(tube.qdeg(), Degree::Homogeneous(-2));
}

#[test]
fn tube_agrees_with_the_tqft() {
    let t = FlatTangle::loops_only(2);
    let id = Cobordism::identity(&t);
    let tube = id.attach_tube(0, 1).unwrap();
    let pre = PreSurface::new(t.clone(), t, 1, vec![PreComponent::new(vec![0, 1, 2, 3], 0, 0)]);
    assert_eq!(eval_map(&tube).unwrap(), eval_pre(&pre).unwrap());
}

#[test]
fn handle_on_one_loop() {
    let t = FlatTangle::loops_only(1);
    let id = Cobordism::identity(&t);
    let h = id.attach_tube(0, 1).unwrap();
    assert_eq!(h, id.dot(0).unwrap().scale(2));
    assert!(h.attach_tube(0, 1).unwrap().is_zero());
}

#[test]
fn linear_structure() {
    let (_, v, _, _) = square();
    let f = Cobordism::identity(&v).dot(1).unwrap();
    assert!(f.add(&f.neg()).is_zero());
    assert_eq!(f.scale(2).add(&f.scale(3)), f.scale(5));
    let (h, _, _, _) = square();
    assert!(f.try_add(&Cobordism::identity(&h)).is_err());
}

#[test]
fn inhomogeneous_sum() {
    let (_, v, _, _) = square();
    let id = Cobordism::identity(&v);
    assert_eq!(id.add(&id.dot(0).unwrap()).qdeg(), Degree::Mixed);
    assert_eq!(Cobordism::zero(&v, &v).qdeg(), Degree::Zero);
}

#[test]
fn composing_mismatched_ends_fails() {
    let (h, v, minus, _) = square();
    assert!(minus.try_compose(&Cobordism::identity(&v)).is_err());
    assert!(Cobordism::identity(&h).try_compose(&minus).is_err());
}

#[test]
fn basis_counts() {
    let (h, v, _, _) = square();
    // one cycle through all four points
    assert_eq!(Cobordism::basis(&h, &v, -1).len(), 1);
    assert_eq!(Cobordism::basis(&h, &v, -3).len(), 1);
    assert!(Cobordism::basis(&h, &v, 0).is_empty());
    assert_eq!(Cobordism::basis(&v, &v, -2).len(), 2);
}
