//! Cones, shifts, sums, total complexes, and summand-matching isomorphisms.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::{label_key, Complex, HomElement, Label, Mat, Obj, Part};
use crate::error::{Error, Result};

/// `Cone(f)^n = D^n ⊕ C^{n+1}` with `d = [d_D, f; 0, -d_C]`. Target
/// summands get the tag `(tag, 0)`, source summands `(tag, 1)`.
pub fn cone_tagged(f: &HomElement, tag: &str) -> Result<Complex> {
    if f.degree != 0 {
        return Err(Error::NotChainMap(format!("cone of a degree {} map", f.degree)));
    }
    if let Some(w) = first_nonzero(&f.differential()) {
        return Err(Error::NotChainMap(w));
    }
    let (c, d) = (&f.source, &f.target);
    let mut out = Complex::new(d.boundary());
    let mut degrees: Vec<i32> = d.degrees();
    degrees.extend(c.degrees().iter().map(|n| n - 1));
    degrees.sort_unstable();
    degrees.dedup();
    for &n in &degrees {
        for o in d.objects(n) {
            out.push(n, o.with_tag(tag, 0));
        }
        for o in c.objects(n + 1) {
            out.push(n, o.with_tag(tag, 1));
        }
    }
    for &n in &degrees {
        let (dn, dn1) = (d.rank(n), d.rank(n + 1));
        let mut m = Mat::zeros(out.rank(n + 1), out.rank(n));
        if let Some(x) = d.diff_ref(n) {
            m.place(0, 0, x, 1);
        }
        if let Some(x) = f.map_ref(n + 1) {
            m.place(0, dn, x, 1);
        }
        if let Some(x) = c.diff_ref(n + 1) {
            m.place(dn1, dn, x, -1);
        }
        out.set_diff(n, m);
    }
    out.set_parts(vec![Part { complex: d.clone(), offset: 0 }, Part { complex: c.clone(), offset: 1 }]);
    Ok(out)
}

pub fn cone(f: &HomElement) -> Result<Complex> {
    cone_tagged(f, "cone")
}

fn first_nonzero(h: &HomElement) -> Option<String> {
    let n = *h.support().first()?;
    let m = h.map(n);
    let (r, c, x) = m.entries().next()?;
    Some(format!("degree {n}, entry ({r},{c}): {x}"))
}

/// `C[h]{q}`: degree `i` holds `C^{i-h}` with every q-shift raised by `q`;
/// the differential picks up `(-1)^h`.
pub fn shift(c: &Arc<Complex>, h: i32, q: i32) -> Complex {
    let mut out = Complex::new(c.boundary());
    for n in c.degrees() {
        for o in c.objects(n) {
            let mut o = o.clone();
            o.q += q;
            out.push(n + h, o);
        }
    }
    let sign = if h % 2 == 0 { 1 } else { -1 };
    for n in c.degrees() {
        if let Some(m) = c.diff_ref(n) {
            out.set_diff(n + h, m.scale(sign));
        }
    }
    if q == 0 {
        let parts = if c.parts().is_empty() {
            vec![Part { complex: c.clone(), offset: -h }]
        } else {
            c.parts().iter().map(|p| Part { complex: p.complex.clone(), offset: p.offset - h }).collect()
        };
        out.set_parts(parts);
    }
    out
}

pub fn direct_sum(a: &Arc<Complex>, b: &Arc<Complex>) -> Result<Complex> {
    if a.boundary() != b.boundary() {
        return Err(Error::Boundary("direct sum of complexes with different boundaries".into()));
    }
    let mut out = Complex::new(a.boundary());
    let mut degrees = a.degrees();
    degrees.extend(b.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    for &n in &degrees {
        for o in a.objects(n).iter().chain(b.objects(n)) {
            out.push(n, o.clone());
        }
    }
    for &n in &degrees {
        let mut m = Mat::zeros(out.rank(n + 1), out.rank(n));
        if let Some(x) = a.diff_ref(n) {
            m.place(0, 0, x, 1);
        }
        if let Some(x) = b.diff_ref(n) {
            m.place(a.rank(n + 1), a.rank(n), x, 1);
        }
        out.set_diff(n, m);
    }
    out.set_parts(vec![Part { complex: a.clone(), offset: 0 }, Part { complex: b.clone(), offset: 0 }]);
    Ok(out)
}

/// Finds an isomorphism `a -> b` that sends each summand to the summand
/// with the same key by a signed identity surface, fixing signs by
/// propagation along the differential. The result is checked to be a
/// chain map.
pub fn signed_iso(
    a: &Arc<Complex>,
    b: &Arc<Complex>,
    key_a: impl Fn(&Obj) -> Label,
    key_b: impl Fn(&Obj) -> Label,
) -> Result<HomElement> {
    let mismatch = |what: String| Error::Shape(format!("no summand-matching isomorphism: {what}"));
    if a.degrees() != b.degrees() {
        return Err(mismatch("different degree supports".into()));
    }
    // perm[(n, i)] = index in b
    let mut perm: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    let mut ids = BTreeMap::new();
    for n in a.degrees() {
        let (oa, ob) = (a.objects(n), b.objects(n));
        if oa.len() != ob.len() {
            return Err(mismatch(format!("degree {n} has {} vs {} summands", oa.len(), ob.len())));
        }
        let index: BTreeMap<Label, usize> = ob.iter().enumerate().map(|(j, o)| (label_key(&key_b(o)), j)).collect();
        if index.len() != ob.len() {
            return Err(mismatch(format!("duplicate keys in degree {n}")));
        }
        for (i, o) in oa.iter().enumerate() {
            let k = label_key(&key_a(o));
            let &j = index.get(&k).ok_or_else(|| mismatch(format!("no partner for {k:?}")))?;
            let id = o.identity_to(&ob[j]).ok_or_else(|| mismatch(format!("summands {k:?} differ")))?;
            perm.insert((n, i), j);
            ids.insert((n, i), id);
        }
    }
    // signs by breadth-first propagation
    let mut sign: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for &start in perm.keys() {
        if sign.contains_key(&start) {
            continue;
        }
        sign.insert(start, 1);
        let mut queue = VecDeque::from([start]);
        while let Some((n, i)) = queue.pop_front() {
            let si = sign[&(n, i)];
            let mut neighbours = Vec::new();
            if let Some(m) = a.diff_ref(n) {
                neighbours.extend(m.entries().filter(|e| e.1 == i).map(|(r, _, x)| ((n + 1, r), (n, i), x.clone())));
            }
            if let Some(m) = a.diff_ref(n - 1) {
                neighbours.extend(m.entries().filter(|e| e.0 == i).map(|(_, c, x)| ((n, i), (n - 1, c), x.clone())));
            }
            for (row, col, x) in neighbours {
                // need  d_b[πr][πc] ∘ id_c · s_c = s_r · id_r ∘ x
                let via_b = b
                    .diff_ref(col.0)
                    .and_then(|m| m.get(perm[&row], perm[&col]).cloned())
                    .map(|y| y.compose(&ids[&col]));
                let via_a = ids[&row].compose(&x);
                let rel = match via_b {
                    Some(y) if y == via_a => 1,
                    Some(y) if y == via_a.neg() => -1,
                    _ => return Err(mismatch(format!("differential entry at {row:?}<-{col:?} has no signed partner"))),
                };
                let other = if row == (n, i) { col } else { row };
                let s_other = si * rel;
                match sign.get(&other) {
                    Some(&s) if s != s_other => {
                        return Err(mismatch(format!("inconsistent signs around {other:?}")));
                    }
                    Some(_) => {}
                    None => {
                        sign.insert(other, s_other);
                        queue.push_back(other);
                    }
                }
            }
        }
    }
    let mut iso = HomElement::zero(a, b, 0);
    for n in a.degrees() {
        let mut m = Mat::zeros(b.rank(n), a.rank(n));
        for i in 0..a.rank(n) {
            m.add_at(perm[&(n, i)], i, ids[&(n, i)].scale(sign[&(n, i)]));
        }
        iso.set(n, m)?;
    }
    if let Some(w) = first_nonzero(&iso.differential()) {
        return Err(mismatch(format!("signed matching is not a chain map: {w}")));
    }
    Ok(iso)
}

/// A square of chain maps
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C --bot--> D
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub top: HomElement,
    pub left: HomElement,
    pub right: HomElement,
    pub bottom: HomElement,
}

/// The total complex in two forms, with the isomorphism between them.
#[derive(Clone, Debug)]
pub struct Total {
    /// `Cone(Cone(top) -> Cone(bottom))`.
    pub by_rows: Arc<Complex>,
    /// `Cone(Cone(left) -> Cone(right))`.
    pub by_columns: Arc<Complex>,
    pub iso: HomElement,
}

/// Builds the total complex of a strictly commuting square. Summands carry
/// tags `x` (0 for the right column) and `y` (0 for the bottom row).
pub fn total_complex(sq: &Square) -> Result<Total> {
    let lhs = sq.right.try_compose(&sq.top)?;
    let rhs = sq.bottom.try_compose(&sq.left)?;
    if let Some(w) = lhs.difference_witness(&rhs) {
        return Err(Error::NotChainMap(format!("square does not commute: {w}")));
    }
    let row_top = Arc::new(cone_tagged(&sq.top, "x")?);
    let row_bot = Arc::new(cone_tagged(&sq.bottom, "x")?);
    let rows_map = HomElement::from_blocks(&row_top, &row_bot, 0, &[(0, 0, &sq.right), (1, 1, &sq.left)])?;
    let by_rows = Arc::new(cone_tagged(&rows_map, "y")?);
    let col_left = Arc::new(cone_tagged(&sq.left, "y")?);
    let col_right = Arc::new(cone_tagged(&sq.right, "y")?);
    let cols_map = HomElement::from_blocks(&col_left, &col_right, 0, &[(0, 0, &sq.bottom), (1, 1, &sq.top)])?;
    let by_columns = Arc::new(cone_tagged(&cols_map, "x")?);
    let iso = signed_iso(&by_rows, &by_columns, |o| o.label.clone(), |o| o.label.clone())?;
    Ok(Total { by_rows, by_columns, iso })
}

/// Inverse of an isomorphism whose entries are signed identity surfaces,
/// such as the output of [`signed_iso`].
pub fn matching_inverse(iso: &HomElement) -> Result<HomElement> {
    let (a, b) = (&iso.source, &iso.target);
    let mut inv = HomElement::zero(b, a, 0);
    for n in iso.support() {
        let mut m = Mat::zeros(a.rank(n), b.rank(n));
        for (r, c, x) in iso.map(n).entries() {
            let (oa, ob) = (&a.objects(n)[c], &b.objects(n)[r]);
            let id = oa.identity_to(ob).ok_or_else(|| Error::Shape(format!("entry ({r},{c}) is not a matching")))?;
            let back = ob.identity_to(oa).expect("symmetric");
            let s = if *x == id {
                1
            } else if *x == id.neg() {
                -1
            } else {
                return Err(Error::Shape(format!("degree {n} entry ({r},{c}) is not a signed identity")));
            };
            m.add_at(c, r, back.scale(s));
        }
        inv.set(n, m)?;
    }
    Ok(inv)
}
