//! Delooping and Gaussian elimination, with homotopy data.

use std::sync::Arc;

use super::{matching_inverse, signed_iso, Complex, HomElement, Mat, Obj};
use crate::cobordism::{Cobordism, PreComponent, PreSurface};
use crate::error::{Error, Result};
use crate::tangle::FlatTangle;

/// A homotopy equivalence `f: source -> target`, `g` back, with
/// `∂h_source = id - g∘f` and `∂h_target = id - f∘g`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub source: Arc<Complex>,
    pub target: Arc<Complex>,
    pub f: HomElement,
    pub g: HomElement,
    pub h_source: HomElement,
    pub h_target: HomElement,
}

impl Equivalence {
    pub fn identity(c: &Arc<Complex>) -> Self {
        let id = HomElement::identity(c);
        let z = HomElement::zero(c, c, -1);
        Equivalence { source: c.clone(), target: c.clone(), f: id.clone(), g: id, h_source: z.clone(), h_target: z }
    }

    /// An isomorphism together with its inverse.
    pub fn from_iso(f: HomElement, g: HomElement) -> Self {
        let (s, t) = (f.source.clone(), f.target.clone());
        Equivalence {
            h_source: HomElement::zero(&s, &s, -1),
            h_target: HomElement::zero(&t, &t, -1),
            source: s,
            target: t,
            f,
            g,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Equivalence) -> Result<Equivalence> {
        let f = other.f.try_compose(&self.f)?;
        let g = self.g.try_compose(&other.g)?;
        let h_source = self.h_source.try_add(&self.g.try_compose(&other.h_source)?.try_compose(&self.f)?)?;
        let h_target = other.h_target.try_add(&other.f.try_compose(&self.h_target)?.try_compose(&other.g)?)?;
        Ok(Equivalence { source: self.source.clone(), target: other.target.clone(), f, g, h_source, h_target })
    }

    pub fn inverse(&self) -> Equivalence {
        Equivalence {
            source: self.target.clone(),
            target: self.source.clone(),
            f: self.g.clone(),
            g: self.f.clone(),
            h_source: self.h_target.clone(),
            h_target: self.h_source.clone(),
        }
    }

    /// Checks every identity; the witness names the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        for (name, m) in [("f", &self.f), ("g", &self.g)] {
            if !m.is_chain_map() {
                return Err(format!("{name} is not a chain map"));
            }
        }
        let gf = self.g.compose(&self.f);
        let fg = self.f.compose(&self.g);
        if !verify_homotopy(&HomElement::identity(&self.source), &gf, &self.h_source) {
            return Err("id - g f is not the boundary of h_source".into());
        }
        if !verify_homotopy(&HomElement::identity(&self.target), &fg, &self.h_target) {
            return Err("id - f g is not the boundary of h_target".into());
        }
        Ok(())
    }
}

/// `∂h = f - g`.
pub fn verify_homotopy(f: &HomElement, g: &HomElement, h: &HomElement) -> bool {
    h.degree == -1 && h.differential().difference_witness(&f.sub(g)).is_none()
}

fn without_loops(t: &FlatTangle) -> FlatTangle {
    FlatTangle::new(t.boundary(), t.arcs().to_vec(), 0).expect("arcs of a valid tangle")
}

/// Caps (`cap = true`) or cups every loop of `o`; loop `i` is dotted when
/// bit `i` of `dots` is set.
fn disks(o: &FlatTangle, bare: &FlatTangle, dots: u64, cap: bool) -> Cobordism {
    let arcs = o.arc_count();
    let ns = if cap { o.circle_count() } else { arcs };
    let mut comps: Vec<PreComponent> = (0..arcs).map(|j| PreComponent::new(vec![j, ns + j], 0, 0)).collect();
    for i in 0..o.loop_count() as usize {
        let circle = if cap { arcs + i } else { ns + arcs + i };
        comps.push(PreComponent::new(vec![circle], 0, (dots >> i & 1) as u32));
    }
    let (s, t) = if cap { (o.clone(), bare.clone()) } else { (bare.clone(), o.clone()) };
    PreSurface::new(s, t, 1, comps).normalize().expect("cap and cup surfaces are well formed")
}

/// Replaces every summand with `k` loops by `2^k` loopless summands.
/// Bit `i` of a choice set means the `X` generator on loop `i` (q-shift
/// `-1`), else `1` (q-shift `+1`).
pub fn deloop(c: &Arc<Complex>) -> Result<Equivalence> {
    let mut out = Complex::new(c.boundary());
    // (source degree, source index, choice) per new summand, by degree
    let mut origin: Vec<(i32, usize, u64)> = Vec::new();
    for n in c.degrees() {
        for (i, o) in c.objects(n).iter().enumerate() {
            let k = o.tangle.loop_count();
            let bare = without_loops(&o.tangle);
            for choice in 0..1u64 << k {
                let shift = k as i32 - 2 * choice.count_ones() as i32;
                let mut obj = Obj::new(bare.clone(), o.q + shift);
                obj.label = o.label.clone();
                for (b, tag) in o.loop_tags.iter().enumerate() {
                    obj.label.push((format!("loop{tag}"), if choice >> b & 1 == 1 { -1 } else { 1 }));
                }
                out.push(n, obj);
                origin.push((n, i, choice));
            }
        }
    }
    let index = |n: i32, i: usize| -> Vec<(usize, u64)> {
        let base = origin.iter().position(|e| e.0 == n).unwrap_or(0);
        origin.iter().enumerate().filter(|(_, e)| e.0 == n && e.1 == i).map(|(j, e)| (j - base, e.2)).collect()
    };
    let mut f_maps = Vec::new();
    let mut g_maps = Vec::new();
    for n in c.degrees() {
        let mut f = Mat::zeros(out.rank(n), c.rank(n));
        let mut g = Mat::zeros(c.rank(n), out.rank(n));
        for (i, o) in c.objects(n).iter().enumerate() {
            let bare = without_loops(&o.tangle);
            let all = (1u64 << o.tangle.loop_count()) - 1;
            for (j, choice) in index(n, i) {
                // to the 1-summand: dotted cap; to the X-summand: plain cap
                f.add_at(j, i, disks(&o.tangle, &bare, !choice & all, true));
                // from the 1-summand: plain cup; from the X-summand: dotted cup
                g.add_at(i, j, disks(&o.tangle, &bare, choice, false));
            }
        }
        f_maps.push((n, f));
        g_maps.push((n, g));
    }
    for n in c.degrees() {
        if let Some(d) = c.diff_ref(n) {
            let f_next = &f_maps.iter().find(|e| e.0 == n + 1).expect("degree present").1;
            let g_here = &g_maps.iter().find(|e| e.0 == n).expect("degree present").1;
            out.set_diff(n, f_next.compose(&d.compose(g_here)));
        }
    }
    let out = Arc::new(out);
    let mut f = HomElement::zero(c, &out, 0);
    let mut g = HomElement::zero(&out, c, 0);
    for ((n, fm), (_, gm)) in f_maps.into_iter().zip(g_maps) {
        f.set(n, fm)?;
        g.set(n, gm)?;
    }
    Ok(Equivalence::from_iso(f, g))
}

/// `±1` if `x` is plus or minus the identity of a loopless tangle.
fn unit(x: &Cobordism, src: &Obj, tgt: &Obj) -> Option<i64> {
    if src.tangle != tgt.tangle || src.q != tgt.q || src.tangle.loop_count() != 0 || x.term_count() != 1 {
        return None;
    }
    match x.coefficient(0) {
        k @ (1 | -1) => Some(k),
        _ => None,
    }
}

fn find_pivot(c: &Complex) -> Option<(i32, usize, usize, i64)> {
    for n in c.degrees() {
        if let Some(d) = c.diff_ref(n) {
            for (r, col, x) in d.entries() {
                if let Some(u) = unit(x, &c.objects(n)[col], &c.objects(n + 1)[r]) {
                    return Some((n, r, col, u));
                }
            }
        }
    }
    None
}

fn keep(len: usize, drop: Option<usize>) -> Vec<usize> {
    (0..len).filter(|&i| Some(i) != drop).collect()
}

/// Cancels the isomorphism `d^n[r][col] = u·id`.
pub fn eliminate(c: &Arc<Complex>, n: i32, r: usize, col: usize, u: i64) -> Result<Equivalence> {
    let dn = c.diff(n);
    let inv = Cobordism::identity(&c.objects(n)[col].tangle).scale(u);
    if dn.get(r, col) != Some(&inv) {
        return Err(Error::Shape(format!("d^{n}[{r}][{col}] is not a unit")));
    }
    let dropped = |m: i32| -> Option<usize> {
        if m == n {
            Some(col)
        } else if m == n + 1 {
            Some(r)
        } else {
            None
        }
    };
    let kept: Vec<(i32, Vec<usize>)> = c.degrees().into_iter().map(|m| (m, keep(c.rank(m), dropped(m)))).collect();
    let kept_at = |m: i32| kept.iter().find(|e| e.0 == m).map(|e| e.1.clone()).unwrap_or_default();
    let mut out = Complex::new(c.boundary());
    for (m, ks) in &kept {
        for &i in ks {
            out.push(*m, c.objects(*m)[i].clone());
        }
    }
    let select = |m: &Mat, rows: &[usize], cols: &[usize]| {
        let mut s = Mat::zeros(rows.len(), cols.len());
        for (a, &ri) in rows.iter().enumerate() {
            for (b, &ci) in cols.iter().enumerate() {
                if let Some(x) = m.get(ri, ci) {
                    s.add_at(a, b, x.clone());
                }
            }
        }
        s
    };
    for m in c.degrees() {
        let Some(d) = c.diff_ref(m) else { continue };
        let (cols, rows) = (kept_at(m), kept_at(m + 1));
        let mut s = select(d, &rows, &cols);
        if m == n {
            for (a, &ri) in rows.iter().enumerate() {
                let Some(gamma) = d.get(ri, col) else { continue };
                for (b, &ci) in cols.iter().enumerate() {
                    if let Some(delta) = d.get(r, ci) {
                        s.add_at(a, b, gamma.compose(&inv).compose(delta).neg());
                    }
                }
            }
        }
        if !s.is_zero() {
            out.set_diff(m, s);
        }
    }
    let out = Arc::new(out);
    let mut f = HomElement::zero(c, &out, 0);
    let mut g = HomElement::zero(&out, c, 0);
    for m in c.degrees() {
        let ks = kept_at(m);
        let mut fm = Mat::zeros(ks.len(), c.rank(m));
        let mut gm = Mat::zeros(c.rank(m), ks.len());
        for (a, &i) in ks.iter().enumerate() {
            let id = Cobordism::identity(&c.objects(m)[i].tangle);
            fm.add_at(a, i, id.clone());
            gm.add_at(i, a, id);
        }
        if m == n + 1 {
            for (a, &i) in ks.iter().enumerate() {
                if let Some(gamma) = dn.get(i, col) {
                    fm.add_at(a, r, gamma.compose(&inv).neg());
                }
            }
        }
        if m == n {
            for (b, &i) in ks.iter().enumerate() {
                if let Some(delta) = dn.get(r, i) {
                    gm.add_at(col, b, inv.compose(delta).neg());
                }
            }
        }
        f.set(m, fm)?;
        g.set(m, gm)?;
    }
    let mut h_source = HomElement::zero(c, c, -1);
    let mut hm = Mat::zeros(c.rank(n), c.rank(n + 1));
    hm.add_at(col, r, inv);
    h_source.set(n + 1, hm)?;
    let h_target = HomElement::zero(&out, &out, -1);
    Ok(Equivalence { source: c.clone(), target: out, f, g, h_source, h_target })
}

/// Delooping followed by Gaussian elimination until no unit entry is left.
pub fn simplify(c: &Arc<Complex>) -> Result<Equivalence> {
    let mut eq = deloop(c)?;
    while let Some((n, r, col, u)) = find_pivot(&eq.target) {
        let step = eliminate(&eq.target, n, r, col, u)?;
        eq = eq.then(&step)?;
    }
    Ok(eq)
}

/// Extends `eq` by a summand-matching isomorphism onto `target`.
pub fn onto(eq: &Equivalence, target: &Arc<Complex>) -> Result<Equivalence> {
    let iso = signed_iso(&eq.target, target, |o| o.label.clone(), |o| o.label.clone())
        .or_else(|_| signed_iso(&eq.target, target, |_| Vec::new(), |_| Vec::new()))?;
    let back = matching_inverse(&iso)?;
    eq.then(&Equivalence::from_iso(iso, back))
}
