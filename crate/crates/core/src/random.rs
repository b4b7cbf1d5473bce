//! Seeded random trees: uniform labeled trees from Prüfer sequences, and trees
//! grown as intersection graphs of random squares (so they are 2SUIGs by construction).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{int, rat, Rational, Representation, Square, Stab};
use crate::tree::Tree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random labeled tree on `n >= 1` vertices.
pub fn prufer_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    assert!(n >= 1, "a tree needs a vertex");
    if n == 1 {
        return Tree::singleton();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer step always has a leaf");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves remain");
    let Reverse(v) = leaves.pop().expect("two leaves remain");
    edges.push((u, v));
    Tree::with_vertex_count(n, &edges).expect("Prüfer decoding yields a tree")
}

/// A random tree grown square by square: each new square, placed on a grid of
/// eighths, must meet exactly one earlier square. Returns the tree with the
/// representation that witnesses it. May stop short of `n` if placement keeps failing.
pub fn grown_tree<R: Rng>(rng: &mut R, n: usize, epsilon: Rational) -> (Tree, Representation) {
    let random_y = |rng: &mut R, stab: Stab| {
        let base = match stab {
            Stab::Lower => int(0),
            Stab::Upper => int(1) + epsilon,
        };
        base + rat(rng.gen_range(0..=8), 8)
    };
    let mut squares = vec![Square::new(int(0), random_y(rng, Stab::Lower), Stab::Lower)];
    let mut edges = Vec::new();
    let mut attempts = 0;
    while squares.len() < n && attempts < 200 * n {
        attempts += 1;
        let anchor = rng.gen_range(0..squares.len());
        let stab = if rng.gen_bool(0.5) {
            Stab::Lower
        } else {
            Stab::Upper
        };
        let x = squares[anchor].x + rat(rng.gen_range(-8..=8), 8);
        let candidate = Square::new(x, random_y(rng, stab), stab);
        let mut hits = squares
            .iter()
            .enumerate()
            .filter(|(_, s)| s.meets(&candidate));
        if let (Some((u, _)), None) = (hits.next(), hits.next()) {
            edges.push((u, squares.len()));
            squares.push(candidate);
        }
    }
    let tree = Tree::with_vertex_count(squares.len(), &edges)
        .expect("each square meets one earlier square");
    (tree, Representation::new(epsilon, squares))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{default_epsilon, verify_tree};

    #[test]
    fn prufer_is_seeded_and_valid() {
        let a = prufer_tree(&mut rng(7), 40);
        let b = prufer_tree(&mut rng(7), 40);
        assert_eq!(a, b);
        assert_eq!(a.n(), 40);
        assert_eq!(prufer_tree(&mut rng(1), 2).n(), 2);
        assert_eq!(prufer_tree(&mut rng(1), 1).n(), 1);
    }

    #[test]
    fn grown_trees_are_witnessed() {
        let mut r = rng(3);
        for _ in 0..50 {
            let (t, rep) = grown_tree(&mut r, 30, default_epsilon());
            assert!(verify_tree(&rep, &t).passed());
        }
    }
}
