//! Random flat tangles, cobordisms and unreduced surfaces.

use cobkh::cobordism::{Cobordism, PreComponent, PreSurface};
use cobkh::tangle::FlatTangle;
use rand::rngs::StdRng;
use rand::Rng;

pub fn seed() -> u64 {
    std::env::var("COBKH_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed)
}

/// Flat tangles on four boundary points.
pub fn pool() -> Vec<FlatTangle> {
    let mut v = Vec::new();
    for arcs in [vec![(0, 1), (2, 3)], vec![(0, 3), (1, 2)]] {
        for loops in 0..2 {
            v.push(FlatTangle::new(4, arcs.clone(), loops).unwrap());
        }
    }
    v
}

pub fn random_cobordism(rng: &mut StdRng, a: &FlatTangle, b: &FlatTangle) -> Cobordism {
    let n = Cobordism::zero(a, b).cycle_count();
    let terms: Vec<(u64, i64)> =
        (0..rng.gen_range(1..4)).map(|_| (rng.gen_range(0..1u64 << n), rng.gen_range(-3..=3))).collect();
    Cobordism::from_terms(a, b, terms)
}

/// A single generator, so that it has a q-degree.
pub fn random_generator(rng: &mut StdRng, a: &FlatTangle, b: &FlatTangle) -> Cobordism {
    let n = Cobordism::zero(a, b).cycle_count();
    Cobordism::from_terms(a, b, [(rng.gen_range(0..1u64 << n), 1)])
}

pub fn pick(rng: &mut StdRng, pool: &[FlatTangle]) -> FlatTangle {
    pool[rng.gen_range(0..pool.len())].clone()
}

pub fn random_pre(rng: &mut StdRng) -> PreSurface {
    let (m, n) = (rng.gen_range(0..3u32), rng.gen_range(0..3u32));
    let circles = (m + n) as usize;
    let k = rng.gen_range(1..=circles.max(1));
    let mut comps: Vec<PreComponent> = (0..k).map(|_| PreComponent::new(Vec::new(), 0, 0)).collect();
    for c in 0..circles {
        comps[rng.gen_range(0..k)].circles.push(c);
    }
    if rng.gen_bool(0.3) {
        comps.push(PreComponent::closed(0, 0));
    }
    for c in &mut comps {
        c.genus = rng.gen_range(0..3);
        c.dots = rng.gen_range(0..3);
    }
    comps.retain(|c| !c.circles.is_empty() || rng.gen_bool(0.5));
    PreSurface::new(FlatTangle::loops_only(m), FlatTangle::loops_only(n), rng.gen_range(1..4), comps)
}
