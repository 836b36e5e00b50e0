//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use fglab::{Alphabet, Letter, SubgroupGraph, Word};
use num_bigint::BigInt;
use rand::Rng;

/// `P`-vector of a word in `Ker(x ↦ 1, y ↦ 0 mod d)` by walking the coset
/// graph by hand: the residue is the running `x`-exponent mod `d`, and each
/// `y^±1` read at residue `r` crosses the `y`-loop based at `r`, i.e. `b_{r+1}`.
/// Returns `None` if the walk does not close up.
pub fn path_count_p_vector(w: &Word, d: usize) -> Option<Vec<BigInt>> {
    let mut p = vec![BigInt::from(0); d];
    let mut r: i64 = 0;
    for l in w.letters() {
        match l.generator {
            0 => r = (r + l.sign()).rem_euclid(d as i64),
            1 => p[r as usize] += l.sign(),
            _ => panic!("word outside {{x, y}}"),
        }
    }
    (r == 0).then_some(p)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_letter<R: Rng>(rng: &mut R, rank: usize) -> Letter {
    let g = rng.gen_range(0..rank);
    if rng.gen_bool(0.5) {
        Letter::pos(g)
    } else {
        Letter::neg(g)
    }
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len).map(|_| random_letter(rng, alphabet.len())).collect();
    Word::from_letters(alphabet, letters).unwrap()
}

/// Shortest letter path from `v` back to the base, by BFS over the graph.
pub fn path_home(graph: &SubgroupGraph, v: usize) -> Vec<Letter> {
    let k = graph.alphabet().len();
    let n = graph.vertex_count();
    let mut prev: Vec<Option<(usize, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        if u == 0 {
            break;
        }
        for g in 0..k {
            for l in [Letter::pos(g), Letter::neg(g)] {
                if let Some(t) = graph.step(u, l) {
                    if !seen[t] {
                        seen[t] = true;
                        prev[t] = Some((u, l));
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = 0;
    while cur != v {
        let (u, l) = prev[cur].expect("graph is connected");
        path.push(l);
        cur = u;
    }
    path.reverse();
    path
}

/// Random subgroup element: a random walk from the base of length at most
/// `walk_len`, closed by the shortest path home.
pub fn random_element<R: Rng>(rng: &mut R, graph: &SubgroupGraph, walk_len: usize) -> Word {
    let k = graph.alphabet().len();
    let mut letters = Vec::new();
    let mut v = 0;
    let len = rng.gen_range(0..=walk_len);
    for _ in 0..len {
        let options: Vec<(Letter, usize)> = (0..k)
            .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
            .filter_map(|l| graph.step(v, l).map(|t| (l, t)))
            .collect();
        if options.is_empty() {
            break;
        }
        let (l, t) = options[rng.gen_range(0..options.len())];
        letters.push(l);
        v = t;
    }
    letters.extend(path_home(graph, v));
    Word::from_letters(graph.alphabet(), letters).unwrap()
}
