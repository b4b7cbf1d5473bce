use crate::geometry::{int, shrink_offsets, Rational, Representation, Square, Stab};
use crate::tree::{Tree, Vertex};

/// Direct layout for a path or a spider with at most four legs.
///
/// A path is stretched along the lower stab. A spider puts its center on the
/// lower stab at `x = 0, y = 1`. The first leg starts at `x = -1` and the
/// second at `x = 1` on the lower stab at `y = 0`; the other two start at the
/// same places on the upper stab at `y = 1 + eps`. After its first vertex each
/// leg continues outward in its own stab as a shrinked run starting at `x = ±2`.
pub fn layout_single_branch(t: &Tree, epsilon: Rational) -> Representation {
    let n = t.n();
    let mut squares = vec![Square::new(int(0), int(0), Stab::Lower); n];
    let center = (0..n).find(|&v| t.degree(v) >= 3);
    let Some(c) = center else {
        let start = (0..n).find(|&v| t.degree(v) <= 1).unwrap_or(0);
        for (x, v) in walk(t, None, start).into_iter().enumerate() {
            squares[v] = Square::new(int(x as i64), int(0), Stab::Lower);
        }
        return Representation::new(epsilon, squares);
    };
    assert!(
        t.degree(c) <= 4,
        "layout_single_branch needs maximum degree four"
    );
    squares[c] = Square::new(int(0), int(1), Stab::Lower);
    for (leg, &start) in t.neighbors(c).iter().enumerate() {
        let dir = int(if leg % 2 == 0 { -1 } else { 1 });
        let (stab, y) = if leg < 2 {
            (Stab::Lower, int(0))
        } else {
            (Stab::Upper, int(1) + epsilon)
        };
        let path = walk(t, Some(c), start);
        squares[path[0]] = Square::new(dir, y, stab);
        let tail = &path[1..];
        for (&v, off) in tail.iter().zip(shrink_offsets(tail.len())) {
            squares[v] = Square::new(dir * (int(2) + off), y, stab);
        }
    }
    Representation::new(epsilon, squares)
}

/// Vertices of the path starting at `start` and leading away from `from`.
fn walk(t: &Tree, from: Option<Vertex>, start: Vertex) -> Vec<Vertex> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    while let Some(next) = t.neighbors(cur).iter().copied().find(|&w| Some(w) != prev) {
        prev = Some(cur);
        cur = next;
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{default_epsilon, rat, verify_tree};

    #[test]
    fn paths_and_spiders() {
        let eps = default_epsilon();
        let cases = [
            Tree::singleton(),
            Tree::path(2),
            Tree::path(9),
            Tree::star(3),
            Tree::star(4),
            Tree::spider(&[1, 2, 3, 4]),
            Tree::spider(&[5, 1, 7]),
        ];
        for t in &cases {
            let r = layout_single_branch(t, eps);
            assert!(verify_tree(&r, t).passed(), "{}", t.to_edge_list());
            let r = layout_single_branch(t, rat(1, 4));
            assert!(verify_tree(&r, t).passed(), "{}", t.to_edge_list());
        }
    }

    #[test]
    fn path_is_stretched_lower() {
        let r = layout_single_branch(&Tree::path(5), default_epsilon());
        let xs: Vec<Rational> = r.squares.iter().map(|s| s.x).collect();
        assert_eq!(xs, (0..5).map(int).collect::<Vec<_>>());
        assert!(r.squares.iter().all(|s| s.stab == Stab::Lower));
    }
}
