//! Digraphs, games, colorings and strategies.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

pub type Color = u32;
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A directed graph with named vertices. Vertex indices follow declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut d = Digraph {
            names: Vec::new(),
            index: HashMap::new(),
            out: Vec::new(),
            inn: Vec::new(),
        };
        for name in names {
            d.add_vertex(name)?;
        }
        Ok(d)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let v = self.names.len();
        self.index.insert(name.clone(), v);
        self.names.push(name);
        self.out.push(Vec::new());
        self.inn.push(Vec::new());
        Ok(v)
    }

    /// Adds the arc `u -> v` ("u sees v"). Adding an existing arc is a no-op.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::Loop(self.names[u].clone()));
        }
        if let Err(pos) = self.out[u].binary_search(&v) {
            self.out[u].insert(pos, v);
            let pos = self.inn[v].binary_search(&u).unwrap_err();
            self.inn[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_arc(u, v)?;
        self.add_arc(v, u)
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) {
        if let Ok(pos) = self.out[u].binary_search(&v) {
            self.out[u].remove(pos);
            let pos = self.inn[v].binary_search(&u).unwrap();
            self.inn[v].remove(pos);
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// True when every arc has its reverse, i.e. the digraph is an undirected graph.
    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.out.iter().all(|o| o.len() + 1 == n)
    }

    /// Vertices joined to `v` by an arc in either direction.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.out[v].iter().chain(&self.inn[v]).copied().collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    pub fn max_in_degree(&self) -> usize {
        self.inn.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Induced subdigraph on `keep` (in the order given). Returns it with the map new -> old.
    pub fn induced(&self, keep: &[usize]) -> (Digraph, Vec<usize>) {
        let mut d =
            Digraph::new(keep.iter().map(|&v| self.names[v].clone())).expect("distinct names");
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.out[v] {
                if pos[w] != usize::MAX {
                    d.add_arc(i, pos[w]).expect("no loops");
                }
            }
        }
        (d, keep.to_vec())
    }

    pub fn transpose(&self) -> Digraph {
        let mut d = Digraph::new(self.names.iter().cloned()).expect("distinct names");
        for (u, v) in self.arcs() {
            d.add_arc(v, u).expect("no loops");
        }
        d
    }

    /// Strong components in topological order of the condensation: a component
    /// with arcs into another comes before it, so sink components are last.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.len(), self.arc_count());
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (u, v) in self.arcs() {
            g.add_edge(nodes[u], nodes[v], ());
        }
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                c.sort_unstable();
                c
            })
            .collect();
        comps.reverse();
        comps
    }

    /// Components of the underlying undirected graph, each sorted, ordered by least vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn has_directed_cycle(&self) -> bool {
        self.strong_components().iter().any(|c| c.len() > 1)
    }
}

/// A Czech game: digraph plus hatness and guessness per vertex, with `h > g > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    digraph: Digraph,
    hat: Vec<u32>,
    guess: Vec<u32>,
}

impl Game {
    pub fn new(digraph: Digraph, hat: Vec<u32>, guess: Vec<u32>) -> Result<Self> {
        assert_eq!(hat.len(), digraph.len());
        assert_eq!(guess.len(), digraph.len());
        for v in 0..digraph.len() {
            if guess[v] == 0 || guess[v] >= hat[v] {
                return Err(Error::GuessRange {
                    vertex: digraph.name(v).to_string(),
                    hat: hat[v],
                    guess: guess[v],
                });
            }
        }
        Ok(Game {
            digraph,
            hat,
            guess,
        })
    }

    pub fn latvian(digraph: Digraph, hat: Vec<u32>) -> Result<Self> {
        let n = hat.len();
        Game::new(digraph, hat, vec![1; n])
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn len(&self) -> usize {
        self.digraph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digraph.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        self.digraph.name(v)
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.digraph.vertex(name)
    }

    pub fn hat(&self, v: usize) -> u32 {
        self.hat[v]
    }

    pub fn guess(&self, v: usize) -> u32 {
        self.guess[v]
    }

    pub fn hats(&self) -> &[u32] {
        &self.hat
    }

    pub fn guesses(&self) -> &[u32] {
        &self.guess
    }

    pub fn ratio(&self, v: usize) -> Rational {
        rational(self.guess[v] as i64, self.hat[v] as i64)
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        self.digraph.out_neighbors(v)
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        self.digraph.in_neighbors(v)
    }

    pub fn is_latvian(&self) -> bool {
        self.guess.iter().all(|&g| g == 1)
    }

    pub fn is_polish(&self) -> bool {
        self.hat.windows(2).all(|w| w[0] == w[1]) && self.guess.windows(2).all(|w| w[0] == w[1])
    }

    pub fn set_hat(&mut self, v: usize, h: u32) -> Result<()> {
        if self.guess[v] >= h {
            return Err(Error::GuessRange {
                vertex: self.name(v).to_string(),
                hat: h,
                guess: self.guess[v],
            });
        }
        self.hat[v] = h;
        Ok(())
    }

    pub fn set_hat_and_guess(&mut self, v: usize, h: u32, g: u32) -> Result<()> {
        if g == 0 || g >= h {
            return Err(Error::GuessRange {
                vertex: self.name(v).to_string(),
                hat: h,
                guess: g,
            });
        }
        self.hat[v] = h;
        self.guess[v] = g;
        Ok(())
    }

    pub fn digraph_mut(&mut self) -> &mut Digraph {
        &mut self.digraph
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, h: u32, g: u32) -> Result<usize> {
        let name = name.into();
        if g == 0 || g >= h {
            return Err(Error::GuessRange {
                vertex: name,
                hat: h,
                guess: g,
            });
        }
        let v = self.digraph.add_vertex(name)?;
        self.hat.push(h);
        self.guess.push(g);
        Ok(v)
    }

    /// Induced subgame on `keep`, preserving canonical (declaration) order.
    pub fn restrict_indices(&self, keep: &[usize]) -> Game {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let (d, _) = self.digraph.induced(&keep);
        Game {
            digraph: d,
            hat: keep.iter().map(|&v| self.hat[v]).collect(),
            guess: keep.iter().map(|&v| self.guess[v]).collect(),
        }
    }

    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Result<Game> {
        let idx = keep
            .iter()
            .map(|s| self.vertex(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.restrict_indices(&idx))
    }

    pub fn without(&self, v: usize) -> Game {
        let keep: Vec<usize> = (0..self.len()).filter(|&u| u != v).collect();
        self.restrict_indices(&keep)
    }

    /// Product of hatnesses over `vs`, or `None` on overflow.
    pub fn space_size(&self, vs: &[usize]) -> Option<u64> {
        vs.iter()
            .try_fold(1u64, |acc, &v| acc.checked_mul(self.hat[v] as u64))
    }

    pub fn total_space(&self) -> Option<u64> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.space_size(&all)
    }

    /// The same game with vertex `v` renamed; indices are unchanged.
    pub fn renamed(&self, v: usize, name: &str) -> Result<Game> {
        let names = (0..self.len()).map(|u| {
            if u == v {
                name.to_string()
            } else {
                self.name(u).to_string()
            }
        });
        let mut d = Digraph::new(names)?;
        for (a, b) in self.digraph.arcs() {
            d.add_arc(a, b)?;
        }
        Game::new(d, self.hat.clone(), self.guess.clone())
    }

    /// Map from vertex indices of `self` to those of `other`, matched by name.
    pub fn embed_into(&self, other: &Game) -> Result<Vec<usize>> {
        (0..self.len())
            .map(|v| other.vertex(self.name(v)))
            .collect()
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::print_game(self))
    }
}

/// Convenience builder used by tests, constructors and the format parser.
#[derive(Default)]
pub struct GameBuilder {
    names: Vec<String>,
    hat: Vec<u32>,
    guess: Vec<u32>,
    arcs: Vec<(String, String)>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str, h: u32, g: u32) -> Self {
        self.names.push(name.to_string());
        self.hat.push(h);
        self.guess.push(g);
        self
    }

    pub fn arc(mut self, u: &str, v: &str) -> Self {
        self.arcs.push((u.to_string(), v.to_string()));
        self
    }

    pub fn edge(self, u: &str, v: &str) -> Self {
        self.arc(u, v).arc(v, u)
    }

    pub fn build(self) -> Result<Game> {
        let mut d = Digraph::new(self.names)?;
        for (u, v) in &self.arcs {
            let (a, b) = (d.vertex(u)?, d.vertex(v)?);
            d.add_arc(a, b)?;
        }
        Game::new(d, self.hat, self.guess)
    }
}

/// Latvian game on the complete graph with the given hatnesses; vertices named `v0, v1, ...`.
pub fn complete_game(hats: &[u32], guesses: &[u32]) -> Result<Game> {
    let n = hats.len();
    let mut d = Digraph::new((0..n).map(|i| format!("v{i}")))?;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                d.add_arc(u, v)?;
            }
        }
    }
    Game::new(d, hats.to_vec(), guesses.to_vec())
}

/// Undirected cycle `v0 - v1 - ... - v(k-1) - v0`, Latvian.
pub fn cycle_game(hats: &[u32]) -> Result<Game> {
    let k = hats.len();
    let mut d = Digraph::new((0..k).map(|i| format!("v{i}")))?;
    for i in 0..k {
        d.add_edge(i, (i + 1) % k)?;
    }
    Game::latvian(d, hats.to_vec())
}

/// Directed cycle `v0 -> v1 -> ... -> v0`.
pub fn directed_cycle_game(hats: &[u32], guesses: &[u32]) -> Result<Game> {
    let k = hats.len();
    let mut d = Digraph::new((0..k).map(|i| format!("v{i}")))?;
    for i in 0..k {
        d.add_arc(i, (i + 1) % k)?;
    }
    Game::new(d, hats.to_vec(), guesses.to_vec())
}

/// Undirected path `v0 - v1 - ...`, Latvian.
pub fn path_game(hats: &[u32]) -> Result<Game> {
    let k = hats.len();
    let mut d = Digraph::new((0..k).map(|i| format!("v{i}")))?;
    for i in 1..k {
        d.add_edge(i - 1, i)?;
    }
    Game::latvian(d, hats.to_vec())
}

/// A set of colors in `[0, 64)` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn single(c: Color) -> Self {
        ColorSet(1u64 << c)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn prefix(n: u32) -> Self {
        if n >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, c: Color) -> bool {
        c < 64 && self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1u64 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u64 << c);
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    /// Adds the lowest colors below `hat` not yet present until the set has `size` members.
    pub fn padded(mut self, size: u32, hat: u32) -> Self {
        let mut c = 0;
        while self.len() < size && c < hat {
            self.insert(c);
            c += 1;
        }
        self
    }

    /// Keeps only colors below `hat`, then pads back to `size`.
    pub fn clamp(self, size: u32, hat: u32) -> Self {
        let mut s = ColorSet(self.0 & ColorSet::prefix(hat).0);
        while s.len() > size {
            let top = 63 - s.0.leading_zeros();
            s.remove(top);
        }
        s.padded(size, hat)
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Mixed-radix counter in row-major order (last coordinate fastest).
#[derive(Clone, Debug)]
pub struct Odometer {
    radices: Vec<u32>,
    digits: Vec<u32>,
    started: bool,
    done: bool,
}

impl Odometer {
    pub fn new(radices: Vec<u32>) -> Self {
        let done = radices.iter().any(|&r| r == 0);
        let digits = vec![0; radices.len()];
        Odometer {
            radices,
            digits,
            started: false,
            done,
        }
    }

    /// Advances to the next tuple; returns false once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return true;
            }
            self.digits[i] = 0;
        }
        self.done = true;
        false
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }
}

/// Row-major rank of `digits` under `radices`.
pub fn rank(radices: &[u32], digits: &[u32]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0usize, |acc, (&d, &r)| acc * r as usize + d as usize)
}

/// Inverse of [`rank`].
pub fn unrank(radices: &[u32], mut index: usize) -> Vec<u32> {
    let mut digits = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        digits[i] = (index % radices[i] as usize) as u32;
        index /= radices[i] as usize;
    }
    digits
}

/// A coloring of some of the vertices of a game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    values: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn empty(n: usize) -> Self {
        PartialColoring {
            values: vec![None; n],
        }
    }

    pub fn full(colors: &[Color]) -> Self {
        PartialColoring {
            values: colors.iter().map(|&c| Some(c)).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, Color)]) -> Self {
        let mut p = Self::empty(n);
        for &(v, c) in pairs {
            p.values[v] = Some(c);
        }
        p
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, c: Option<Color>) {
        self.values[v] = c;
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&v| self.values[v].is_some())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Option<Color>] {
        &self.values
    }

    /// Colors of a fully-assigned coloring; panics on a missing vertex.
    pub fn to_full(&self) -> Vec<Color> {
        self.values
            .iter()
            .map(|c| c.expect("full coloring"))
            .collect()
    }

    pub fn check_ranges(&self, game: &Game) -> Result<()> {
        for (v, c) in self.values.iter().enumerate() {
            if let Some(c) = c {
                if *c >= game.hat(v) {
                    return Err(Error::Unsupported(format!(
                        "color {c} out of range for `{}`",
                        game.name(v)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Enumerates all colorings of `over` in row-major canonical order.
pub fn enumerate_colorings(
    game: &Game,
    over: &[usize],
    budget: u64,
) -> Result<impl Iterator<Item = PartialColoring>> {
    let mut over = over.to_vec();
    over.sort_unstable();
    over.dedup();
    match game.space_size(&over) {
        Some(size) if size <= budget => {}
        _ => {
            return Err(Error::Budget(format!(
                "enumeration of {} vertices exceeds {budget} colorings",
                over.len()
            )))
        }
    }
    let n = game.len();
    let mut odo = Odometer::new(over.iter().map(|&v| game.hat(v)).collect());
    Ok(std::iter::from_fn(move || {
        if !odo.advance() {
            return None;
        }
        let mut p = PartialColoring::empty(n);
        for (i, &v) in over.iter().enumerate() {
            p.values[v] = Some(odo.digits()[i]);
        }
        Some(p)
    }))
}

/// The plan of one vertex: a table from visible color tuples to guess sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub vertex: usize,
    /// Out-neighbors in canonical order.
    pub inputs: Vec<usize>,
    pub radices: Vec<u32>,
    pub hat: u32,
    pub guess: u32,
    pub table: Vec<ColorSet>,
}

impl Plan {
    /// Builds the plan of `v` by calling `f` on every input tuple in row-major order.
    pub fn from_fn(game: &Game, v: usize, mut f: impl FnMut(&[Color]) -> ColorSet) -> Result<Plan> {
        if game.hat(v) > 64 {
            return Err(Error::HatTooLarge {
                vertex: game.name(v).to_string(),
                hat: game.hat(v),
            });
        }
        let inputs = game.out_neighbors(v).to_vec();
        let radices: Vec<u32> = inputs.iter().map(|&u| game.hat(u)).collect();
        let size = game
            .space_size(&inputs)
            .filter(|&s| s <= 1 << 28)
            .ok_or_else(|| Error::Budget(format!("plan table of `{}` too large", game.name(v))))?;
        let mut table = Vec::with_capacity(size as usize);
        let mut odo = Odometer::new(radices.clone());
        while odo.advance() {
            table.push(f(odo.digits()));
        }
        Ok(Plan {
            vertex: v,
            inputs,
            radices,
            hat: game.hat(v),
            guess: game.guess(v),
            table,
        })
    }

    pub fn constant(game: &Game, v: usize, set: ColorSet) -> Result<Plan> {
        Plan::from_fn(game, v, |_| set)
    }

    /// Table index for a full coloring of the game.
    pub fn index_of(&self, coloring: &[Color]) -> usize {
        self.inputs
            .iter()
            .zip(&self.radices)
            .fold(0usize, |acc, (&u, &r)| {
                acc * r as usize + coloring[u] as usize
            })
    }

    pub fn guesses(&self, coloring: &[Color]) -> ColorSet {
        self.table[self.index_of(coloring)]
    }

    pub fn guesses_for_inputs(&self, inputs: &[Color]) -> ColorSet {
        self.table[rank(&self.radices, inputs)]
    }

    pub fn validate(&self, game: &Game) -> Result<()> {
        let v = self.vertex;
        let name = game.name(v);
        if self.inputs != game.out_neighbors(v) {
            return Err(Error::Strategy(format!(
                "plan of `{name}` has wrong input order"
            )));
        }
        if self.hat != game.hat(v) || self.guess != game.guess(v) {
            return Err(Error::Strategy(format!(
                "plan of `{name}` has wrong parameters"
            )));
        }
        let expected: usize = self.radices.iter().map(|&r| r as usize).product();
        let radii_ok = self
            .inputs
            .iter()
            .zip(&self.radices)
            .all(|(&u, &r)| r == game.hat(u));
        if !radii_ok || self.table.len() != expected {
            return Err(Error::Strategy(format!(
                "plan of `{name}` has wrong table size"
            )));
        }
        for (i, s) in self.table.iter().enumerate() {
            if s.len() != self.guess || s.iter().any(|c| c >= self.hat) {
                return Err(Error::Strategy(format!(
                    "plan of `{name}`, row {i}: guess set {s:?} is not {} colors below {}",
                    self.guess, self.hat
                )));
            }
        }
        Ok(())
    }
}

/// A plan for every vertex, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub plans: Vec<Plan>,
}

impl Strategy {
    /// Builds a strategy from `f(v, inputs)` where `inputs` follows `N⁺(v)` in canonical order.
    pub fn from_fn(
        game: &Game,
        mut f: impl FnMut(usize, &[Color]) -> ColorSet,
    ) -> Result<Strategy> {
        let plans = (0..game.len())
            .map(|v| Plan::from_fn(game, v, |inp| f(v, inp)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Strategy { plans })
    }

    pub fn plan(&self, v: usize) -> &Plan {
        &self.plans[v]
    }

    pub fn validate(&self, game: &Game) -> Result<()> {
        if self.plans.len() != game.len() {
            return Err(Error::Strategy(
                "plan count differs from vertex count".into(),
            ));
        }
        for (v, p) in self.plans.iter().enumerate() {
            if p.vertex != v {
                return Err(Error::Strategy(format!("plan {v} is for another vertex")));
            }
            p.validate(game)?;
        }
        Ok(())
    }

    pub fn right(&self, v: usize, coloring: &[Color]) -> bool {
        self.plans[v].guesses(coloring).contains(coloring[v])
    }

    /// Whether anyone guesses right on a full coloring.
    pub fn someone_right(&self, coloring: &[Color]) -> bool {
        (0..self.plans.len()).any(|v| self.right(v, coloring))
    }
}
