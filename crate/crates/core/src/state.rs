//! Smoothing states: strand re-gluing at crossings and tracing of the
//! resulting state components.
//!
//! With the crossing darts listed counterclockwise from the over-strand's
//! incoming dart as `d0 d1 d2 d3`, the A-smoothing joins `d0–d3` and `d1–d2`,
//! the B-smoothing joins `d0–d1` and `d2–d3`: the A-regions are the ones
//! swept by turning the over-strand counterclockwise. A node keeps the crossing as a
//! rigid vertex: each dart continues to the opposite one.

use rayon::prelude::*;

use crate::combmap::Dart;
use crate::diagram::Diagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Choice {
    A,
    B,
    Node,
}

impl Choice {
    /// Dart position joined to `pos` (0..4) at the crossing.
    pub fn partner(self, pos: usize) -> usize {
        match self {
            Choice::A => 3 - pos,
            Choice::B => pos ^ 1,
            Choice::Node => (pos + 2) % 4,
        }
    }
}

/// Crossing index and position of every dart; endpoints have none.
#[derive(Clone, Debug)]
pub struct Slots {
    slot: Vec<Option<(usize, usize)>>,
    darts: Vec<[Dart; 4]>,
}

impl Slots {
    pub fn new(d: &Diagram) -> Self {
        let mut slot = vec![None; d.map().num_darts()];
        for (i, c) in d.crossings().iter().enumerate() {
            for (k, &x) in c.darts.iter().enumerate() {
                slot[x] = Some((i, k));
            }
        }
        Slots { slot, darts: d.crossings().iter().map(|c| c.darts).collect() }
    }

    pub fn slot(&self, d: Dart) -> Option<(usize, usize)> {
        self.slot[d]
    }

    /// The dart through which a strand arriving at `d` leaves the vertex.
    pub fn junction(&self, choices: &[Choice], d: Dart) -> Option<Dart> {
        let (c, k) = self.slot[d]?;
        Some(self.darts[c][choices[c].partner(k)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateComponent {
    /// Darts through which the component leaves a vertex, in traversal
    /// order; each one starts an edge walked from that dart to its partner.
    pub darts: Vec<Dart>,
    /// Contains the tail and the head.
    pub long: bool,
}

impl StateComponent {
    pub fn has_node(&self, slots: &Slots, choices: &[Choice]) -> bool {
        self.darts
            .iter()
            .any(|&x| slots.slot(x).is_some_and(|(c, _)| choices[c] == Choice::Node))
    }
}

/// All state components, the long one first, with the component of every edge.
pub fn trace(d: &Diagram, slots: &Slots, choices: &[Choice]) -> (Vec<StateComponent>, Vec<usize>) {
    let map = d.map();
    let mut edge_comp = vec![usize::MAX; map.num_edges()];
    let mut comps = vec![];
    fn walk(
        map: &crate::combmap::CombMap,
        slots: &Slots,
        choices: &[Choice],
        start: Dart,
        long: bool,
        edge_comp: &mut [usize],
        comps: &mut Vec<StateComponent>,
    ) {
        let id = comps.len();
        let mut darts = vec![];
        let mut x = start;
        loop {
            darts.push(x);
            edge_comp[x / 2] = id;
            match slots.junction(choices, map.alpha(x)) {
                Some(y) if y != start => x = y,
                _ => break,
            }
        }
        comps.push(StateComponent { darts, long });
    }
    if let Some(t) = d.tail_dart() {
        walk(map, slots, choices, t, true, &mut edge_comp, &mut comps);
    }
    for e in 0..map.num_edges() {
        if edge_comp[e] == usize::MAX {
            walk(map, slots, choices, 2 * e, false, &mut edge_comp, &mut comps);
        }
    }
    (comps, edge_comp)
}

/// Parity of how often each component crosses the route, for a route given as
/// the darts of the edges it crosses.
pub fn crossing_parity(route: &[Dart], edge_comp: &[usize], n_comps: usize) -> Vec<bool> {
    let mut odd = vec![false; n_comps];
    for &x in route {
        odd[edge_comp[x / 2]] ^= true;
    }
    odd
}

/// Bit `i` of `mask` selects B at crossing `i`.
pub fn choices_from_mask(n: usize, mask: u64) -> Vec<Choice> {
    (0..n).map(|i| if mask >> i & 1 == 1 { Choice::B } else { Choice::A }).collect()
}

/// Folds `f` over all `2^n` A/B states of the selected crossings (others get
/// `fixed`), in Gray-code order within parallel chunks, and merges the results.
pub fn fold_states<T, F, M>(n: usize, free: &[usize], fixed: &[Choice], f: F, merge: M) -> T
where
    T: Default + Send,
    F: Fn(&mut T, &[Choice]) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let k = free.len();
    assert!(k < 63, "too many crossings for a state sum");
    let total: u64 = 1 << k;
    let chunk_bits = k.min(6);
    let chunks: u64 = 1 << (k - chunk_bits);
    let per_chunk: u64 = 1 << chunk_bits;
    (0..chunks)
        .into_par_iter()
        .map(|hi| {
            let mut acc = T::default();
            let mut choices: Vec<Choice> = (0..n).map(|i| fixed.get(i).copied().unwrap_or(Choice::A)).collect();
            for lo in 0..per_chunk {
                let g = lo ^ (lo >> 1);
                let mask = hi * per_chunk + g;
                debug_assert!(mask < total);
                for (bit, &c) in free.iter().enumerate() {
                    choices[c] = if mask >> bit & 1 == 1 { Choice::B } else { Choice::A };
                }
                f(&mut acc, &choices);
            }
            acc
        })
        .reduce(T::default, &merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partners_are_involutions() {
        for c in [Choice::A, Choice::B, Choice::Node] {
            for k in 0..4 {
                assert_eq!(c.partner(c.partner(k)), k);
                assert_ne!(c.partner(k), k);
            }
        }
    }

    #[test]
    fn trivial_knotoid_has_one_long_component() {
        let d = Diagram::trivial();
        let slots = Slots::new(&d);
        let (comps, _) = trace(&d, &slots, &[]);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].long);
    }

    #[test]
    fn kink_states() {
        // One-crossing knotoid: one smoothing splits off a circle.
        let d = Diagram::parse("knotoid: O1+ U1+").unwrap();
        let slots = Slots::new(&d);
        let counts: Vec<usize> =
            [Choice::A, Choice::B].iter().map(|&c| trace(&d, &slots, &[c]).0.len()).collect();
        let mut sorted = counts.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2]);
    }

    #[test]
    fn fold_visits_every_state_once() {
        let free: Vec<usize> = (0..8).collect();
        let seen = fold_states(
            8,
            &free,
            &[],
            |acc: &mut Vec<u64>, ch| {
                acc.push(ch.iter().enumerate().map(|(i, &c)| ((c == Choice::B) as u64) << i).sum())
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        let mut s = seen.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 256);
        assert_eq!(seen.len(), 256);
    }
}
