//! Khovanov's TQFT: closed flat tangles go to tensor powers of
//! `A = Z[X]/(X^2)`, dotted cobordisms to integer matrices.
//!
//! Basis of `A^{⊗n}`: bit `i` of the index is set when loop `i` carries `X`.
//! `1` has q-degree +1 and `X` has q-degree -1.

mod homology;
pub mod smith;

use crate::cobordism::{Cobordism, PreSurface};
use crate::error::{Error, Result};
use crate::tangle::FlatTangle;

pub use homology::{homology, kh_link, kh_singular, Coefficients, Group, HomologyTable};
pub use smith::IntMatrix;

/// Elements of `A` as coefficient pairs `(a, b)` for `a·1 + b·X`.
pub mod frobenius {
    pub type Elem = (i64, i64);

    pub const ONE: Elem = (1, 0);
    pub const X: Elem = (0, 1);

    pub fn mul(p: Elem, q: Elem) -> Elem {
        (p.0 * q.0, p.0 * q.1 + p.1 * q.0)
    }

    /// `Δ(1) = 1⊗X + X⊗1`, `Δ(X) = X⊗X`, as `[(1⊗1), (1⊗X), (X⊗1), (X⊗X)]`.
    pub fn comul(p: Elem) -> [i64; 4] {
        [0, p.0, p.0, p.1]
    }

    pub fn counit(p: Elem) -> i64 {
        p.1
    }

    pub fn unit() -> Elem {
        ONE
    }

    /// The handle operator `m∘Δ`.
    pub fn handle(p: Elem) -> Elem {
        let d = comul(p);
        // m(1⊗1) = 1, m(1⊗X) = m(X⊗1) = X, m(X⊗X) = 0
        (d[0], d[1] + d[2])
    }
}

/// q-degree of a basis vector of `A^{⊗loops}`.
pub fn basis_degree(loops: u32, index: usize) -> i32 {
    loops as i32 - 2 * index.count_ones() as i32
}

/// Graded rank data of a closed flat tangle: q-degree of each basis vector.
pub fn eval_object(t: &FlatTangle, q_shift: i32) -> Result<Vec<i32>> {
    if !t.is_closed() {
        return Err(Error::OpenTangle);
    }
    let n = t.loop_count();
    Ok((0..1usize << n).map(|i| basis_degree(n, i) + q_shift).collect())
}

/// Matrix of a cobordism between closed flat tangles (rows: target basis).
pub fn eval_map(c: &Cobordism) -> Result<IntMatrix> {
    let (s, t) = (c.source(), c.target());
    if !s.is_closed() || !t.is_closed() {
        return Err(Error::OpenTangle);
    }
    let ns = s.loop_count() as usize;
    let nt = t.loop_count() as usize;
    let mut m = IntMatrix::zeros(1 << nt, 1 << ns);
    // closed tangles: every cycle is a single loop, source loops first
    let all_source = (1u64 << ns) - 1;
    for (mask, k) in c.terms() {
        let input = (!mask & all_source) as usize;
        let output = (mask >> ns) as usize;
        *m.at_mut(output, input) += k;
    }
    Ok(m)
}

/// Evaluates an unreduced surface straight through the Frobenius algebra,
/// without neck-cutting. Independent of [`PreSurface::normalize`].
pub fn eval_pre(p: &PreSurface) -> Result<IntMatrix> {
    if !p.source.is_closed() || !p.target.is_closed() {
        return Err(Error::OpenTangle);
    }
    p.component_cycles()?;
    let ns = p.source.loop_count() as usize;
    let nt = p.target.loop_count() as usize;
    let mut m = IntMatrix::zeros(1 << nt, 1 << ns);
    for input in 0..1usize << ns {
        // vector over output indices
        let mut vec: Vec<(usize, i64)> = vec![(0, p.coeff)];
        for comp in &p.components {
            let ins: Vec<usize> = comp.circles.iter().copied().filter(|&c| c < ns).collect();
            let outs: Vec<usize> = comp.circles.iter().copied().filter(|&c| c >= ns).map(|c| c - ns).collect();
            let mut x = frobenius::ONE;
            for &i in &ins {
                let e = if input >> i & 1 == 1 { frobenius::X } else { frobenius::ONE };
                x = frobenius::mul(x, e);
            }
            for _ in 0..comp.dots {
                x = frobenius::mul(x, frobenius::X);
            }
            for _ in 0..comp.genus {
                x = frobenius::handle(x);
            }
            // spread x over the outputs by iterated comultiplication
            let mut spread: Vec<(usize, i64)> = Vec::new();
            if outs.is_empty() {
                spread.push((0, frobenius::counit(x)));
            } else {
                let mut cur: Vec<(Vec<bool>, frobenius::Elem)> = vec![(Vec::new(), x)];
                for _ in 1..outs.len() {
                    let mut next = Vec::new();
                    for (bits, e) in cur {
                        let d = frobenius::comul(e);
                        // keep the first tensor factor in `bits`, carry the second
                        let mut b1 = bits.clone();
                        b1.push(false);
                        next.push((b1, (d[0], d[1])));
                        let mut b2 = bits;
                        b2.push(true);
                        next.push((b2, (d[2], d[3])));
                    }
                    cur = next;
                }
                for (bits, e) in cur {
                    for (last, coeff) in [(false, e.0), (true, e.1)] {
                        if coeff == 0 {
                            continue;
                        }
                        let mut idx = 0usize;
                        for (pos, &b) in bits.iter().chain(std::iter::once(&last)).enumerate() {
                            if b {
                                idx |= 1 << outs[pos];
                            }
                        }
                        spread.push((idx, coeff));
                    }
                }
            }
            let mut next = Vec::new();
            for &(i, a) in &vec {
                for &(j, b) in &spread {
                    if a * b != 0 {
                        next.push((i | j, a * b));
                    }
                }
            }
            vec = next;
        }
        for (out, k) in vec {
            *m.at_mut(out, input) += k;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::PreComponent;

    #[test]
    fn algebra_axioms() {
        use frobenius::*;
        assert_eq!(mul(X, X), (0, 0));
        assert_eq!(mul(ONE, X), X);
        assert_eq!(comul(ONE), [0, 1, 1, 0]);
        assert_eq!(comul(X), [0, 0, 0, 1]);
        assert_eq!(counit(ONE), 0);
        assert_eq!(counit(X), 1);
        assert_eq!(handle(ONE), (0, 2));
        assert_eq!(handle(X), (0, 0));
    }

    #[test]
    fn identity_and_dot_matrices() {
        let t = FlatTangle::loops_only(1);
        let id = eval_map(&Cobordism::identity(&t)).unwrap();
        assert_eq!(id, IntMatrix::identity(2));
        let dot = Cobordism::identity(&t).dot(0).unwrap();
        let m = eval_map(&dot).unwrap();
        assert_eq!(m.rows_vec(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn closed_surfaces() {
        let e = FlatTangle::loops_only(0);
        let torus = PreSurface::new(e.clone(), e.clone(), 1, vec![PreComponent::closed(1, 0)]);
        assert_eq!(eval_pre(&torus).unwrap().rows_vec(), vec![vec![2]]);
        assert_eq!(torus.normalize().unwrap(), Cobordism::from_terms(&e, &e, [(0, 2)]));
        let sphere = PreSurface::new(e.clone(), e.clone(), 1, vec![PreComponent::closed(0, 0)]);
        assert!(sphere.normalize().unwrap().is_zero());
        assert_eq!(eval_pre(&sphere).unwrap().rows_vec(), vec![vec![0]]);
    }

    #[test]
    fn objects() {
        assert_eq!(eval_object(&FlatTangle::loops_only(0), 0).unwrap(), vec![0]);
        assert_eq!(eval_object(&FlatTangle::loops_only(1), 0).unwrap(), vec![1, -1]);
        assert_eq!(eval_object(&FlatTangle::loops_only(2), 0).unwrap().len(), 4);
        assert!(eval_object(&FlatTangle::identity_braid(1), 0).is_err());
    }
}
