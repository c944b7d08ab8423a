//! Seeded random Reidemeister walks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::Diagram;
use crate::moves::{apply_move, moves_available, Move};

/// One step of a walk: the move and the diagram it produced.
#[derive(Clone, Debug)]
pub struct Step {
    pub mv: Move,
    pub diagram: Diagram,
}

fn crossing_delta(m: &Move) -> i64 {
    match m {
        Move::R1Add { .. } => 1,
        Move::R2Add { .. } => 2,
        Move::R1Del { .. } => -1,
        Move::R2Del { .. } => -2,
        Move::R3 { .. } => 0,
    }
}

/// Picks a move kind uniformly among those available, then a site uniformly.
pub fn random_move(d: &Diagram, max_crossings: usize, rng: &mut impl Rng) -> Option<Move> {
    let n = d.crossing_count() as i64;
    let moves: Vec<Move> = moves_available(d)
        .into_iter()
        .filter(|m| n + crossing_delta(m) <= max_crossings as i64)
        .collect();
    let mut kinds: Vec<&str> = moves.iter().map(|m| m.kind()).collect();
    kinds.dedup();
    kinds.sort_unstable();
    kinds.dedup();
    let kind = *kinds.choose(rng)?;
    let sites: Vec<&Move> = moves.iter().filter(|m| m.kind() == kind).collect();
    sites.choose(rng).map(|m| **m)
}

/// A walk of `steps` moves from `start`, never exceeding `max_crossings`.
pub fn random_walk(start: &Diagram, steps: usize, max_crossings: usize, seed: u64) -> Vec<Step> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = start.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let Some(mv) = random_move(&cur, max_crossings, &mut rng) else { break };
        cur = apply_move(&cur, &mv).expect("generated moves apply");
        out.push(Step { mv, diagram: cur.clone() });
    }
    out
}

/// A random spherical knotoid diagram: a walk from the trivial knotoid.
pub fn random_knotoid(max_crossings: usize, steps: usize, seed: u64) -> Diagram {
    let walk = random_walk(&Diagram::trivial(), steps, max_crossings, seed);
    walk.last().map(|s| s.diagram.clone()).unwrap_or_else(Diagram::trivial)
}
