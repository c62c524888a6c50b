//! Step-by-step rewriting of unreduced surfaces with a caller-chosen rule
//! order. Used to test that [`PreSurface::normalize`] is confluent.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Cobordism, PreSurface};
use crate::error::Result;

#[derive(Clone, Debug)]
struct Piece {
    cycles: Vec<usize>,
    genus: u32,
    dots: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Handle,
    DotSquare,
    Sphere,
    NeckCut,
}

fn applicable(p: &Piece) -> Vec<Rule> {
    let mut r = Vec::new();
    if p.genus > 0 {
        r.push(Rule::Handle);
    }
    if p.dots >= 2 {
        r.push(Rule::DotSquare);
    }
    if p.cycles.is_empty() && p.genus == 0 && p.dots <= 1 {
        r.push(Rule::Sphere);
    }
    if p.cycles.len() >= 2 || (p.cycles.len() == 1 && p.genus > 0) {
        r.push(Rule::NeckCut);
    }
    r
}

/// Normalizes by repeatedly applying a random applicable rule to a random
/// piece of a random term. Neck cuts pick a random separating curve and
/// distribute genus and dots randomly between the two sides.
pub fn normalize_randomly<R: Rng>(p: &PreSurface, rng: &mut R) -> Result<Cobordism> {
    let (_, per_comp) = p.component_cycles()?;
    let start: Vec<Piece> =
        p.components.iter().zip(per_comp).map(|(c, cycles)| Piece { cycles, genus: c.genus, dots: c.dots }).collect();
    let mut work: Vec<(i64, Vec<Piece>)> = vec![(p.coeff, start)];
    let mut done = Cobordism::zero(&p.source, &p.target);
    while !work.is_empty() {
        let ti = rng.gen_range(0..work.len());
        let candidates: Vec<(usize, Rule)> = work[ti]
            .1
            .iter()
            .enumerate()
            .flat_map(|(i, piece)| applicable(piece).into_iter().map(move |r| (i, r)))
            .collect();
        let Some(&(pi, rule)) = candidates.choose(rng) else {
            let (k, pieces) = work.swap_remove(ti);
            let mask = pieces.iter().filter(|q| q.dots == 1).fold(0u64, |m, q| m | 1 << q.cycles[0]);
            done.add_term(mask, k);
            continue;
        };
        let (k, mut pieces) = work.swap_remove(ti);
        match rule {
            Rule::Handle => {
                pieces[pi].genus -= 1;
                pieces[pi].dots += 1;
                work.push((2 * k, pieces));
            }
            Rule::DotSquare => {}
            Rule::Sphere => {
                if pieces[pi].dots == 1 {
                    pieces.swap_remove(pi);
                    work.push((k, pieces));
                }
            }
            Rule::NeckCut => {
                let piece = pieces.swap_remove(pi);
                let mut side_a = Vec::new();
                let mut side_b = Vec::new();
                for &c in &piece.cycles {
                    if rng.gen_bool(0.5) {
                        side_a.push(c)
                    } else {
                        side_b.push(c)
                    }
                }
                if side_b.is_empty() {
                    std::mem::swap(&mut side_a, &mut side_b);
                }
                let mut genus_a = rng.gen_range(0..=piece.genus);
                if side_a.is_empty() && genus_a == 0 {
                    // a neck bounding a plain disk makes no progress
                    if piece.genus > 0 {
                        genus_a = 1;
                    } else {
                        side_a.push(side_b.pop().expect("at least two cycles"));
                    }
                }
                let dots_a = rng.gen_range(0..=piece.dots);
                let a = Piece { cycles: side_a, genus: genus_a, dots: dots_a };
                let b = Piece { cycles: side_b, genus: piece.genus - genus_a, dots: piece.dots - dots_a };
                for dotted_a in [true, false] {
                    let mut ps = pieces.clone();
                    let (mut a2, mut b2) = (a.clone(), b.clone());
                    if dotted_a {
                        a2.dots += 1;
                    } else {
                        b2.dots += 1;
                    }
                    ps.push(a2);
                    ps.push(b2);
                    work.push((k, ps));
                }
            }
        }
    }
    Ok(done)
}
