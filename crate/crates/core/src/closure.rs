//! Closures of knotoids, the map back from knots, height and tricolorings.

use std::collections::BTreeSet;

use crate::combmap::Dart;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::gauss::{GaussCode, Pass, Shape, Sign, Token};

/// The head-to-tail closure: same classical crossings, cyclic code, drawn on
/// the surface of its rotation system.
pub fn virtual_closure(d: &Diagram) -> Diagram {
    let code = GaussCode { shape: Shape::Cyclic, tokens: d.code().tokens.clone() };
    Diagram::from_code(code).expect("closing a valid code keeps it valid")
}

fn head_and_tail_faces(d: &Diagram) -> Result<(usize, usize)> {
    let (tail, head) = d
        .endpoint_faces()
        .ok_or_else(|| Error::InvalidRoute("closed diagrams have no endpoints".into()))?;
    Ok((head, tail))
}

/// Shortest dual route from the head's face to the tail's face.
pub fn default_route(d: &Diagram) -> Result<Vec<Dart>> {
    let (head, tail) = head_and_tail_faces(d)?;
    d.dual_route(head, tail).ok_or_else(|| Error::InvalidRoute("endpoints not connected".into()))
}

fn check_route(d: &Diagram, route: &[Dart]) -> Result<()> {
    let (head, tail) = head_and_tail_faces(d)?;
    let faces = d.faces();
    let map = d.map();
    let bad = |why: String| Err(Error::InvalidRoute(why));
    let mut at = head;
    let mut visited = BTreeSet::from([head]);
    let mut edges = BTreeSet::new();
    for &x in route {
        if x >= map.num_darts() {
            return bad(format!("dart {x} out of range"));
        }
        if faces.face_of[x] != at {
            return bad(format!("dart {x} does not leave face {at}"));
        }
        if !edges.insert(x / 2) {
            return bad(format!("edge {} crossed twice", x / 2));
        }
        at = faces.face_of[map.alpha(x)];
        if !visited.insert(at) {
            return bad(format!("face {at} visited twice"));
        }
    }
    if at != tail {
        return bad(format!("route ends in face {at}, not the tail's face {tail}"));
    }
    Ok(())
}

/// Closes `d` with an arc under every strand it meets, following `route`
/// (a simple dual path from the head's face to the tail's face; shortest by default).
pub fn underpass_closure(d: &Diagram, route: Option<&[Dart]>) -> Result<Diagram> {
    let route = match route {
        Some(r) => r.to_vec(),
        None => default_route(d)?,
    };
    check_route(d, &route)?;
    let tokens = &d.code().tokens;
    let m = tokens.len();
    let mut label = tokens.iter().map(|t| t.label).max().unwrap_or(0);
    // New crossing per crossed edge: (edge, label, sign).
    let mut added: Vec<(usize, u32, Sign)> = vec![];
    for &x in &route {
        label += 1;
        let sign = if x % 2 == 0 { Sign::Pos } else { Sign::Neg };
        added.push((x / 2, label, sign));
    }
    let over_on = |e: usize| added.iter().find(|a| a.0 == e).map(|&(_, l, s)| Token::new(l, Pass::Over, s));
    let mut out = vec![];
    for (t, &tok) in tokens.iter().enumerate() {
        out.extend(over_on(t));
        out.push(tok);
    }
    out.extend(over_on(m));
    out.extend(added.iter().map(|&(_, l, s)| Token::new(l, Pass::Under, s)));
    let code = GaussCode::new(Shape::Cyclic, out)?.normalized();
    Diagram::realize(code)
}

/// Cuts a knot diagram open along `edge`, giving a knot-type knotoid.
pub fn alpha_map(k: &Diagram, edge: usize) -> Result<Diagram> {
    if k.is_knotoid() {
        return Err(Error::Syntax("expected a knot diagram".into()));
    }
    let tokens = &k.code().tokens;
    let m = tokens.len();
    if m == 0 {
        return Ok(Diagram::trivial());
    }
    if edge >= m {
        return Err(Error::Syntax(format!("edge {edge} out of range ({m} edges)")));
    }
    let rotated: Vec<Token> = tokens[edge + 1..].iter().chain(&tokens[..=edge]).copied().collect();
    let code = GaussCode { shape: Shape::Open, tokens: rotated }.normalized();
    Diagram::realize(code)
}

/// Least number of strands an arc from the head to the tail must cross.
pub fn diagram_height(d: &Diagram) -> usize {
    default_route(d).map(|r| r.len()).unwrap_or(0)
}

/// Solutions of a homogeneous system mod 3, as `3^(vars - rank)`.
fn solutions_mod3(mut rows: Vec<Vec<u8>>, vars: usize) -> u64 {
    let mut rank = 0;
    for col in 0..vars {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        // Entries are 1 or 2; 2 is its own inverse mod 3.
        let inv = rows[rank][col];
        for v in rows[rank].iter_mut() {
            *v = (*v * inv) % 3;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = (*x + 3 * 3 - f * p) % 3;
                }
            }
        }
        rank += 1;
    }
    3u64.pow((vars - rank) as u32)
}

/// Fox 3-colorings of the arcs: `(non-constant coloring exists, number of colorings)`.
/// The two ends of a knotoid are free.
pub fn tricolor(d: &Diagram) -> (bool, u64) {
    let tokens = &d.code().tokens;
    let m = tokens.len();
    let unders = tokens.iter().filter(|t| t.pass == Pass::Under).count();
    let cyclic = !d.is_knotoid();
    let arcs = if cyclic { unders.max(1) } else { unders + 1 };
    // Arc leaving token position t.
    let mut after = vec![0; m];
    let mut arc = 0;
    for (t, tok) in tokens.iter().enumerate() {
        if tok.pass == Pass::Under {
            arc += 1;
        }
        after[t] = if cyclic { arc % arcs } else { arc };
    }
    let before = |t: usize| -> usize {
        if t > 0 {
            after[t - 1]
        } else if cyclic {
            after[m - 1]
        } else {
            0
        }
    };
    let mut rows = vec![];
    for c in d.crossings() {
        let mut row = vec![0u8; arcs];
        // over + in + out ≡ 0, i.e. 2·over ≡ in + out.
        row[after[c.over_pos]] += 1;
        row[before(c.under_pos)] += 1;
        row[after[c.under_pos]] += 1;
        rows.push(row.into_iter().map(|v| v % 3).collect());
    }
    let count = solutions_mod3(rows, arcs);
    (count > 3, count)
}
