//! Stallings subgroup graphs.
//!
//! A finitely generated subgroup `H ≤ F` is represented by its folded core
//! graph: a finite labeled digraph with a base vertex whose closed reduced
//! paths at the base spell exactly the elements of `H`. Vertex `0` is always
//! the base.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

const NONE: u32 = u32::MAX;

/// Result of an index query. An infinite index is an answer, not an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for Index {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// Folded, pruned core graph of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    alphabet: Arc<Alphabet>,
    /// `out[v][g]`: target of the `g`-edge leaving `v`.
    out: Vec<Vec<u32>>,
    /// `inc[v][g]`: source of the `g`-edge entering `v`.
    inc: Vec<Vec<u32>>,
}

/// Union-find folding state. `adj[v]` maps a direction (a generator, or the
/// inverse of one for an edge read backwards) to a possibly stale neighbour.
struct Folder {
    parent: Vec<usize>,
    adj: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new() -> Self {
        let mut f = Folder {
            parent: Vec::new(),
            adj: Vec::new(),
            pending: Vec::new(),
        };
        f.add_vertex();
        f
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(BTreeMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn attach(&mut self, u: usize, label: Letter, v: usize) {
        let u = self.find(u);
        let v = self.find(v);
        match self.adj[u].get(&label).copied() {
            Some(w) => {
                if self.find(w) != v {
                    self.pending.push((w, v));
                }
            }
            None => {
                self.adj[u].insert(label, v);
            }
        }
    }

    fn link(&mut self, u: usize, label: Letter, v: usize) {
        self.attach(u, label, v);
        self.attach(v, label.inv(), u);
        while let Some((a, b)) = self.pending.pop() {
            self.merge(a, b);
        }
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        // the smaller index survives, so the base (0) is never absorbed
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        self.parent[gone] = keep;
        let moved = std::mem::take(&mut self.adj[gone]);
        for (label, t) in moved {
            self.attach(keep, label, t);
        }
    }

    fn finish(mut self, alphabet: &Arc<Alphabet>) -> SubgroupGraph {
        let n = self.parent.len();
        let mut adj: BTreeMap<usize, BTreeMap<Letter, usize>> = BTreeMap::new();
        for v in 0..n {
            if self.find(v) != v {
                continue;
            }
            let edges = std::mem::take(&mut self.adj[v]);
            let resolved = edges.into_iter().map(|(l, t)| (l, self.find(t))).collect();
            adj.insert(v, resolved);
        }

        // prune hanging trees: repeatedly drop non-base vertices of degree one
        let mut stack: Vec<usize> = adj
            .iter()
            .filter(|(v, e)| **v != 0 && e.len() == 1)
            .map(|(v, _)| *v)
            .collect();
        while let Some(v) = stack.pop() {
            let Some(edges) = adj.get(&v) else { continue };
            if edges.len() != 1 {
                continue;
            }
            let (&label, &t) = edges.iter().next().expect("one edge");
            adj.remove(&v);
            if let Some(te) = adj.get_mut(&t) {
                te.remove(&label.inv());
                if t != 0 && te.len() == 1 {
                    stack.push(t);
                }
            }
        }

        // renumber in breadth-first order from the base
        let mut order = BTreeMap::new();
        let mut queue = VecDeque::from([0usize]);
        order.insert(0usize, 0u32);
        let mut seq = vec![0usize];
        while let Some(v) = queue.pop_front() {
            for &t in adj[&v].values() {
                if let std::collections::btree_map::Entry::Vacant(e) = order.entry(t) {
                    e.insert(seq.len() as u32);
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }

        let k = alphabet.len();
        let mut out = vec![vec![NONE; k]; seq.len()];
        let mut inc = vec![vec![NONE; k]; seq.len()];
        for (new, old) in seq.iter().enumerate() {
            for (label, t) in &adj[old] {
                let t = order[t];
                if label.inverse {
                    inc[new][label.index()] = t;
                } else {
                    out[new][label.index()] = t;
                }
            }
        }
        SubgroupGraph {
            alphabet: Arc::clone(alphabet),
            out,
            inc,
        }
    }
}

impl SubgroupGraph {
    /// Folds the wedge of generator loops at the base into the core graph of
    /// the subgroup they generate. Identity generators are ignored.
    pub fn from_generators(generators: &[Word], alphabet: &Arc<Alphabet>) -> Result<Self> {
        let mut folder = Folder::new();
        for g in generators {
            if g.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            let letters = g.letters();
            let Some((&last, init)) = letters.split_last() else {
                continue;
            };
            let mut cur = 0;
            for &l in init {
                let v = folder.add_vertex();
                folder.link(cur, l, v);
                cur = v;
            }
            folder.link(cur, last, 0);
        }
        Ok(folder.finish(alphabet))
    }

    /// Coset graph of `Ker(f: F → Z_d)`: one vertex per residue, vertex `r`
    /// has its `g`-edge going to `r + f(g) mod d`.
    pub fn kernel(map: &KernelMap) -> Result<Self> {
        let d = map.d as usize;
        let k = map.alphabet.len();
        let mut out = vec![vec![NONE; k]; d];
        let mut inc = vec![vec![NONE; k]; d];
        for (r, row) in out.iter_mut().enumerate() {
            for (g, &f) in map.values.iter().enumerate() {
                let t = (r as i64 + f).rem_euclid(d as i64) as usize;
                row[g] = t as u32;
                inc[t][g] = r as u32;
            }
        }
        Ok(SubgroupGraph {
            alphabet: Arc::clone(&map.alphabet),
            out,
            inc,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().filter(|&&t| t != NONE).count()
    }

    /// Free rank of the subgroup: `#edges − #vertices + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Vertex reached from `v` by reading `letter`, if the edge exists.
    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        let t = if letter.inverse {
            self.inc[v][letter.index()]
        } else {
            self.out[v][letter.index()]
        };
        (t != NONE).then_some(t as usize)
    }

    /// Endpoint of the path spelled by `w` from the base, if it exists.
    pub fn trace(&self, w: &Word) -> Result<Option<usize>> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut v = 0;
        for &l in w.letters() {
            match self.step(v, l) {
                Some(t) => v = t,
                None => return Ok(None),
            }
        }
        Ok(Some(v))
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        Ok(self.trace(w)? == Some(0))
    }

    /// Finite iff the graph is a covering of the rose, in which case the
    /// index is the number of vertices.
    pub fn index(&self) -> Index {
        let complete = self.out.iter().all(|row| row.iter().all(|&t| t != NONE));
        if complete {
            Index::Finite(self.vertex_count() as u64)
        } else {
            Index::Infinite
        }
    }

    /// Canonical code of the graph rebased at `root`: vertices renumbered in
    /// breadth-first order (positive then inverse direction, generators in
    /// alphabet order), then the transition table row by row. Two rooted
    /// folded graphs are isomorphic iff their codes are equal.
    pub fn canonical_code(&self, root: usize) -> Vec<u32> {
        let n = self.vertex_count();
        let k = self.alphabet.len();
        let mut number = vec![NONE; n];
        let mut seq = Vec::with_capacity(n);
        number[root] = 0;
        seq.push(root);
        let mut head = 0;
        while head < seq.len() {
            let v = seq[head];
            head += 1;
            for g in 0..k {
                for t in [self.out[v][g], self.inc[v][g]] {
                    if t != NONE && number[t as usize] == NONE {
                        number[t as usize] = seq.len() as u32;
                        seq.push(t as usize);
                    }
                }
            }
        }
        let mut code = Vec::with_capacity(1 + seq.len() * k);
        code.push(seq.len() as u32);
        for &v in &seq {
            for g in 0..k {
                let t = self.out[v][g];
                code.push(if t == NONE { NONE } else { number[t as usize] });
            }
        }
        code
    }

    pub fn is_isomorphic(&self, other: &SubgroupGraph) -> bool {
        self.alphabet == other.alphabet && self.canonical_code(0) == other.canonical_code(0)
    }

    /// A finite-index subgroup is normal iff its coset graph looks the same
    /// from every vertex.
    pub fn is_normal(&self) -> Result<bool> {
        if self.index() == Index::Infinite {
            return Err(Error::InfiniteIndex);
        }
        let base = self.canonical_code(0);
        Ok((1..self.vertex_count()).all(|v| self.canonical_code(v) == base))
    }

    /// Graphviz rendering, base vertex drawn doubled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph subgroup {\n  0 [shape=doublecircle];\n");
        for (v, row) in self.out.iter().enumerate() {
            for (g, &t) in row.iter().enumerate() {
                if t != NONE {
                    let _ = writeln!(s, "  {v} -> {t} [label=\"{}\"];", self.alphabet.name(g));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A homomorphism `F → Z_d` given by the image of each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelMap {
    pub alphabet: Arc<Alphabet>,
    pub d: u64,
    pub values: Vec<i64>,
}

impl KernelMap {
    /// Validates `d ≥ 2` and surjectivity (the images generate `Z_d`).
    pub fn new(alphabet: &Arc<Alphabet>, d: u64, values: Vec<i64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidKernel(format!("modulus {d} is below 2")));
        }
        if values.len() != alphabet.len() {
            return Err(Error::InvalidKernel(format!(
                "{} images for {} generators",
                values.len(),
                alphabet.len()
            )));
        }
        let values: Vec<i64> = values.iter().map(|v| v.rem_euclid(d as i64)).collect();
        let g = values.iter().fold(d as i64, |acc, &v| acc.gcd(&v));
        if g != 1 {
            return Err(Error::InvalidKernel(format!("images {values:?} do not generate Z_{d}")));
        }
        Ok(KernelMap {
            alphabet: Arc::clone(alphabet),
            d,
            values,
        })
    }

    /// Builds the map from `name → image` pairs; unnamed generators map to 0.
    pub fn from_named<'a, I>(alphabet: &Arc<Alphabet>, d: u64, images: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, i64)>,
    {
        let mut values = vec![0; alphabet.len()];
        for (name, v) in images {
            let i = alphabet
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            values[i] = v;
        }
        KernelMap::new(alphabet, d, values)
    }

    /// The standard map on `{x, y}`: `x ↦ 1`, `y ↦ 0`.
    pub fn canonical(d: u64) -> Result<Self> {
        KernelMap::new(&Alphabet::xy(), d, vec![1, 0])
    }

    /// First generator mapping to `1`, used to shape the transversal.
    pub fn unit_generator(&self) -> Option<usize> {
        self.values.iter().position(|&v| v == 1)
    }

    pub fn apply(&self, w: &Word) -> i64 {
        let d = self.d as i64;
        w.letters()
            .iter()
            .fold(0i64, |acc, l| (acc + l.sign() * self.values[l.index()]).rem_euclid(d))
    }
}

/// Kernel graph of `f` restricted to the subgroup generated by `sub`.
pub fn restrict_kernel(map: &KernelMap, sub: &[&str]) -> Result<SubgroupGraph> {
    let mut indices = Vec::with_capacity(sub.len());
    for name in sub {
        let i = map
            .alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        indices.push(i);
    }
    let alphabet = Alphabet::new(indices.iter().map(|&i| map.alphabet.name(i).to_string()))?;
    let values = indices.iter().map(|&i| map.values[i]).collect();
    SubgroupGraph::kernel(&KernelMap::new(&alphabet, map.d, values)?)
}

/// Coset representatives read along a spanning tree rooted at the base.
#[derive(Debug, Clone)]
pub struct Transversal {
    reps: Vec<Word>,
    /// Tree edge into each non-base vertex: `(parent, letter read)`.
    parent: Vec<Option<(usize, Letter)>>,
    preferred: Option<usize>,
}

impl Transversal {
    /// Breadth-first spanning tree. With a preferred generator `p`, the
    /// positive `p`-path from the base is taken into the tree first, so a
    /// kernel graph with `f(p) = 1` gets representatives `ε, p, p², …`.
    pub fn new(graph: &SubgroupGraph, preferred: Option<usize>) -> Result<Self> {
        if graph.index() == Index::Infinite {
            return Err(Error::InfiniteIndex);
        }
        let n = graph.vertex_count();
        let k = graph.alphabet.len();
        if let Some(p) = preferred {
            if p >= k {
                return Err(Error::UnknownGenerator(format!("#{p}")));
            }
        }
        let mut reps: Vec<Option<Word>> = vec![None; n];
        let mut parent = vec![None; n];
        reps[0] = Some(Word::identity(&graph.alphabet));
        let mut seq = vec![0usize];

        let visit = |reps: &mut Vec<Option<Word>>,
                     parent: &mut Vec<Option<(usize, Letter)>>,
                     seq: &mut Vec<usize>,
                     from: usize,
                     l: Letter,
                     to: usize| {
            let letter = Word::from_letters(&graph.alphabet, [l]).expect("letter in alphabet");
            let rep = reps[from]
                .as_ref()
                .expect("visited")
                .multiply(&letter)
                .expect("same alphabet");
            reps[to] = Some(rep);
            parent[to] = Some((from, l));
            seq.push(to);
        };

        if let Some(p) = preferred {
            let mut cur = 0;
            while let Some(t) = graph.step(cur, Letter::pos(p)) {
                if reps[t].is_some() {
                    break;
                }
                visit(&mut reps, &mut parent, &mut seq, cur, Letter::pos(p), t);
                cur = t;
            }
        }

        let order: Vec<usize> = preferred
            .into_iter()
            .chain((0..k).filter(|&g| Some(g) != preferred))
            .collect();
        let mut head = 0;
        while head < seq.len() {
            let u = seq[head];
            head += 1;
            for &g in &order {
                for l in [Letter::pos(g), Letter::neg(g)] {
                    if let Some(t) = graph.step(u, l) {
                        if reps[t].is_none() {
                            visit(&mut reps, &mut parent, &mut seq, u, l, t);
                        }
                    }
                }
            }
        }

        Ok(Transversal {
            reps: reps.into_iter().map(|r| r.expect("core graph is connected")).collect(),
            parent,
            preferred,
        })
    }

    /// Representatives indexed by vertex; the base has `ε`.
    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    pub fn preferred(&self) -> Option<usize> {
        self.preferred
    }

    /// Whether the positive edge `u --g--> v` lies in the spanning tree.
    pub fn is_tree_edge(&self, u: usize, g: usize, v: usize) -> bool {
        self.parent[v] == Some((u, Letter::pos(g))) || self.parent[u] == Some((v, Letter::neg(g)))
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|(u, l)| (u, l, v)))
    }
}

/// Free basis of the subgroup read off the non-tree edges, with the table
/// used for Reidemeister–Schreier rewriting.
///
/// Naming: when the transversal has a preferred generator, the ambient
/// alphabet has two letters, and exactly one non-tree edge carries the
/// preferred label, that edge is `a` and the remaining edges are `b1, b2, …`
/// by source vertex. Otherwise every non-tree edge is `s1, s2, …` ordered by
/// (source vertex, generator).
#[derive(Debug, Clone)]
pub struct SchreierBasis {
    ambient: Arc<Alphabet>,
    names: Arc<Alphabet>,
    words: Vec<Word>,
    /// `edge_letter[u][g]`: basis index of the non-tree edge leaving `u` with label `g`.
    edge_letter: Vec<Vec<u32>>,
}

impl SchreierBasis {
    pub fn new(graph: &SubgroupGraph, transversal: &Transversal) -> Result<Self> {
        let k = graph.alphabet.len();
        let mut edges = Vec::new();
        for u in 0..graph.vertex_count() {
            for g in 0..k {
                if let Some(v) = graph.step(u, Letter::pos(g)) {
                    if !transversal.is_tree_edge(u, g, v) {
                        edges.push((u, g, v));
                    }
                }
            }
        }

        let closing: Vec<usize> = match transversal.preferred {
            Some(p) if k == 2 => edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.1 == p)
                .map(|(i, _)| i)
                .collect(),
            _ => Vec::new(),
        };
        let (ordered, names): (Vec<(usize, usize, usize)>, Vec<String>) = if closing.len() == 1 {
            let a = edges.remove(closing[0]);
            let names = std::iter::once("a".to_string())
                .chain((1..=edges.len()).map(|i| format!("b{i}")))
                .collect();
            (std::iter::once(a).chain(edges).collect(), names)
        } else {
            let names = (1..=edges.len()).map(|i| format!("s{i}")).collect();
            (edges, names)
        };

        let reps = transversal.representatives();
        let mut edge_letter = vec![vec![NONE; k]; graph.vertex_count()];
        let mut words = Vec::with_capacity(ordered.len());
        for (i, &(u, g, v)) in ordered.iter().enumerate() {
            edge_letter[u][g] = i as u32;
            let w = reps[u]
                .multiply(&Word::generator(&graph.alphabet, g)?)?
                .multiply(&reps[v].inverse())?;
            words.push(w);
        }
        Ok(SchreierBasis {
            ambient: Arc::clone(&graph.alphabet),
            names: Alphabet::new(names)?,
            words,
            edge_letter,
        })
    }

    /// Alphabet of basis letter names (`a, b1, …` or `s1, …`).
    pub fn names(&self) -> &Arc<Alphabet> {
        &self.names
    }

    /// Basis elements as words in the ambient group.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn letter_for_edge(&self, u: usize, g: usize) -> Option<usize> {
        let i = self.edge_letter[u][g];
        (i != NONE).then_some(i as usize)
    }

    /// Substitutes basis words into a word over the basis alphabet.
    pub fn evaluate(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.names {
            return Err(Error::AlphabetMismatch);
        }
        let mut acc = Word::identity(&self.ambient);
        for l in w.letters() {
            let piece = &self.words[l.index()];
            let piece = if l.inverse { piece.inverse() } else { piece.clone() };
            acc = acc.multiply(&piece)?;
        }
        Ok(acc)
    }
}

/// Graph, transversal and basis bundled for rewriting queries.
#[derive(Debug, Clone)]
pub struct SchreierSystem {
    pub graph: SubgroupGraph,
    pub transversal: Transversal,
    pub basis: SchreierBasis,
}

impl SchreierSystem {
    pub fn new(graph: SubgroupGraph, preferred: Option<usize>) -> Result<Self> {
        let transversal = Transversal::new(&graph, preferred)?;
        let basis = SchreierBasis::new(&graph, &transversal)?;
        Ok(SchreierSystem {
            graph,
            transversal,
            basis,
        })
    }

    /// Reidemeister–Schreier rewriting: trace `w` from the base and emit the
    /// basis letter of every non-tree edge crossed, inverted when the edge is
    /// crossed backwards.
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != self.graph.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = Vec::new();
        let mut v = 0;
        for &l in w.letters() {
            let t = self
                .graph
                .step(v, l)
                .ok_or_else(|| Error::NotInSubgroup(w.to_string()))?;
            let (src, g) = if l.inverse { (t, l.index()) } else { (v, l.index()) };
            if let Some(i) = self.basis.letter_for_edge(src, g) {
                out.push(if l.inverse { Letter::neg(i) } else { Letter::pos(i) });
            }
            v = t;
        }
        if v != 0 {
            return Err(Error::NotInSubgroup(w.to_string()));
        }
        Word::from_letters(self.basis.names(), out)
    }

    /// `w ∈ [H, H]` iff its rewrite has zero abelianization, since `H` is free
    /// on the basis.
    pub fn in_derived_subgroup(&self, w: &Word) -> Result<bool> {
        Ok(self.rewrite(w)?.exponent_sums().is_zero())
    }
}
