//! Conflict-driven search for covering assignments.
//!
//! Each cell is a guess set of at most `guess` colors out of `hat`; a literal is
//! "cell contains color". Each clause lists literals of which at least one must hold.
//! The solver learns clauses from conflicts, handles the per-cell cardinality cap
//! natively, and accepts value-precedence chains that fix the naming of colors on
//! vertices whose colors may be freely relabeled.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::game::ColorSet;
use crate::outcome::{SearchBudget, SearchStats};

#[derive(Clone, Debug)]
pub struct CellSpec {
    /// Vertex whose colors this cell guesses.
    pub owner: usize,
    pub hat: u32,
    pub guess: u32,
}

#[derive(Clone, Debug, Default)]
pub struct CoverProblem {
    pub cells: Vec<CellSpec>,
    cell_base: Vec<u32>,
    clause_lits: Vec<u32>,
    clause_start: Vec<u32>,
    chains: Vec<Vec<usize>>,
}

impl CoverProblem {
    pub fn new(cells: Vec<CellSpec>) -> Self {
        let mut cell_base = Vec::with_capacity(cells.len() + 1);
        let mut acc = 0u32;
        for c in &cells {
            cell_base.push(acc);
            acc += c.hat;
        }
        cell_base.push(acc);
        CoverProblem {
            cells,
            cell_base,
            clause_lits: Vec::new(),
            clause_start: vec![0],
            chains: Vec::new(),
        }
    }

    pub fn lit(&self, cell: usize, color: u32) -> u32 {
        self.cell_base[cell] + color
    }

    pub fn num_lits(&self) -> usize {
        *self.cell_base.last().unwrap() as usize
    }

    pub fn num_clauses(&self) -> usize {
        self.clause_start.len() - 1
    }

    /// Adds a clause given as `(cell, color)` literals.
    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = (usize, u32)>) {
        for (cell, color) in lits {
            let l = self.lit(cell, color);
            self.clause_lits.push(l);
        }
        self.clause_start.push(self.clause_lits.len() as u32);
    }

    /// Requires colors to make their first appearance along `cells` in increasing order.
    /// Sound only when relabeling the colors of these cells maps solutions to solutions.
    pub fn add_precedence(&mut self, cells: Vec<usize>) {
        if let Some(&first) = cells.first() {
            let h = self.cells[first].hat;
            assert!(cells.iter().all(|&c| self.cells[c].hat == h));
            self.chains.push(cells);
        }
    }

    fn clause(&self, k: usize) -> &[u32] {
        &self.clause_lits[self.clause_start[k] as usize..self.clause_start[k + 1] as usize]
    }

    /// Counting refutation: every clause needs a member, and a cell holds at most `guess`.
    fn capacity_refutes(&self) -> bool {
        let mut cnt = vec![0u64; self.num_lits()];
        for &l in &self.clause_lits {
            cnt[l as usize] += 1;
        }
        let mut total = 0u64;
        for (i, c) in self.cells.iter().enumerate() {
            let base = self.cell_base[i] as usize;
            let mut v: Vec<u64> = cnt[base..base + c.hat as usize].to_vec();
            v.sort_unstable_by(|a, b| b.cmp(a));
            total += v.iter().take(c.guess as usize).sum::<u64>();
        }
        total < self.num_clauses() as u64
    }
}

pub enum SearchResult {
    /// Guess set per cell.
    Found(Vec<ColorSet>),
    Exhausted,
    OutOfBudget,
}

type Lit = u32;

fn pos(v: u32) -> Lit {
    v << 1
}

fn neg(v: u32) -> Lit {
    (v << 1) | 1
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

fn not(l: Lit) -> Lit {
    l ^ 1
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Reason {
    None,
    Clause(u32),
    Card(u32),
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
    activity: f32,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Max-heap of variables keyed by activity.
struct VarHeap {
    heap: Vec<u32>,
    index: Vec<i32>,
}

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap {
            heap: Vec::with_capacity(n),
            index: vec![-1; n],
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.index[v] >= 0
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let p = (i - 1) / 2;
            if act[self.heap[p] as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[p];
            self.index[self.heap[i] as usize] = i as i32;
            i = p;
        }
        self.heap[i] = v;
        self.index[v as usize] = i as i32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                r
            } else {
                l
            };
            if act[self.heap[c] as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[c];
            self.index[self.heap[i] as usize] = i as i32;
            i = c;
        }
        self.heap[i] = v;
        self.index[v as usize] = i as i32;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v as u32);
        let i = self.heap.len() - 1;
        self.index[v] = i as i32;
        self.up(i, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.index[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.index[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }
}

fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

struct Solver<'a> {
    p: &'a CoverProblem,
    primary: usize,
    value: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Reason>,
    trail_pos: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    cell_of: Vec<u32>,
    cell_true: Vec<u32>,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f32,
    phase: Vec<bool>,
    heap: VarHeap,
    seen: Vec<bool>,
    learnts: usize,
    decisions: u64,
    conflicts: u64,
}

enum Status {
    Sat,
    Unsat,
    Budget,
}

impl<'a> Solver<'a> {
    fn new(p: &'a CoverProblem) -> Option<Self> {
        let primary = p.num_lits();
        let aux: usize = p
            .chains
            .iter()
            .map(|ch| (ch.len() - 1) * p.cells[ch[0]].hat as usize)
            .sum();
        let n = primary + aux;
        let mut cell_of = vec![u32::MAX; n];
        for (i, c) in p.cells.iter().enumerate() {
            for k in 0..c.hat {
                cell_of[(p.cell_base[i] + k) as usize] = i as u32;
            }
        }
        let mut s = Solver {
            p,
            primary,
            value: vec![0; n],
            level: vec![0; n],
            reason: vec![Reason::None; n],
            trail_pos: vec![0; n],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            cell_of,
            cell_true: vec![0; p.cells.len()],
            activity: vec![0.0; n],
            var_inc: 1.0,
            cla_inc: 1.0,
            phase: vec![false; n],
            heap: VarHeap::new(n),
            seen: vec![false; n],
            learnts: 0,
            decisions: 0,
            conflicts: 0,
        };
        for k in 0..p.num_clauses() {
            let lits: Vec<Lit> = p.clause(k).iter().map(|&l| pos(l)).collect();
            if !s.add_input(lits) {
                return None;
            }
        }
        let mut next = primary as u32;
        for ch in &p.chains {
            let h = p.cells[ch[0]].hat;
            let x = |j: usize, c: u32| pos(p.cell_base[ch[j]] + c);
            // aux(j, c) for j >= 1: color c occurs in some cell before position j
            let base = next;
            let aux = |j: usize, c: u32| pos(base + (j as u32 - 1) * h + c);
            next += (ch.len() as u32 - 1) * h;
            for j in 0..ch.len() {
                for c in 0..h {
                    if j >= 1 {
                        let mut cl = vec![not(aux(j, c)), x(j - 1, c)];
                        if j >= 2 {
                            cl.push(aux(j - 1, c));
                        }
                        if !s.add_input(cl) {
                            return None;
                        }
                    }
                    if c + 1 < h {
                        let mut cl = vec![not(x(j, c + 1)), x(j, c)];
                        if j >= 1 {
                            cl.push(aux(j, c));
                        }
                        if !s.add_input(cl) {
                            return None;
                        }
                    }
                }
            }
        }
        for v in 0..n {
            s.heap.insert(v, &s.activity);
        }
        Some(s)
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[var(l)];
        if l & 1 == 1 {
            -v
        } else {
            v
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause at level 0; returns false on an immediate contradiction.
    fn add_input(&mut self, mut lits: Vec<Lit>) -> bool {
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == not(w[1])) {
            return true;
        }
        lits.retain(|&l| self.lit_value(l) != -1);
        if lits.iter().any(|&l| self.lit_value(l) == 1) {
            return true;
        }
        match lits.len() {
            0 => false,
            1 => {
                self.enqueue(lits[0], Reason::None);
                self.propagate().is_none()
            }
            _ => {
                self.attach(lits, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[not(lits[0]) as usize].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[not(lits[1]) as usize].push(Watcher {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            lbd,
            activity: 0.0,
        });
        if learnt {
            self.learnts += 1;
        }
        cref
    }

    fn enqueue(&mut self, l: Lit, r: Reason) {
        let v = var(l);
        self.value[v] = if l & 1 == 0 { 1 } else { -1 };
        self.level[v] = self.decision_level();
        self.reason[v] = r;
        self.trail_pos[v] = self.trail.len() as u32;
        self.trail.push(l);
        if l & 1 == 0 && v < self.primary {
            self.cell_true[self.cell_of[v] as usize] += 1;
        }
    }

    /// Returns a conflict as the list of literals that are all false.
    fn propagate(&mut self) -> Option<Vec<Lit>> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let v = var(p);
            if p & 1 == 0 && v < self.primary {
                let cell = self.cell_of[v] as usize;
                let cs = &self.p.cells[cell];
                let base = self.p.cell_base[cell];
                if self.cell_true[cell] > cs.guess {
                    return Some(
                        (base..base + cs.hat)
                            .filter(|&u| self.value[u as usize] == 1)
                            .map(neg)
                            .collect(),
                    );
                }
                if self.cell_true[cell] == cs.guess {
                    for u in base..base + cs.hat {
                        if self.value[u as usize] == 0 {
                            self.enqueue(neg(u), Reason::Card(cell as u32));
                        }
                    }
                }
            }
            let mut ws = std::mem::take(&mut self.watches[p as usize]);
            let false_lit = not(p);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.lit_value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let c = &mut self.clauses[cref].lits;
                    if c[0] == false_lit {
                        c.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                if first != w.blocker && self.lit_value(first) == 1 {
                    ws[j] = Watcher {
                        cref: w.cref,
                        blocker: first,
                    };
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.lit_value(l) != -1 {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[not(l) as usize].push(Watcher {
                            cref: w.cref,
                            blocker: first,
                        });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                j += 1;
                if self.lit_value(first) == -1 {
                    conflict = Some(self.clauses[cref].lits.clone());
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Reason::Clause(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[p as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    /// Literals other than the implied one that forced `v`, all false at the time.
    fn reason_lits(&self, v: usize, out: &mut Vec<Lit>) {
        out.clear();
        match self.reason[v] {
            Reason::None => {}
            Reason::Clause(c) => out.extend_from_slice(&self.clauses[c as usize].lits[1..]),
            Reason::Card(cell) => {
                let cs = &self.p.cells[cell as usize];
                let base = self.p.cell_base[cell as usize];
                let t = self.trail_pos[v];
                for u in base..base + cs.hat {
                    let u = u as usize;
                    if self.value[u] == 1 && self.trail_pos[u] < t {
                        out.push(neg(u as u32));
                    }
                }
            }
        }
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap.contains(v) {
            let i = self.heap.index[v] as usize;
            self.heap.up(i, &self.activity);
        }
    }

    fn bump_clause(&mut self, c: u32) {
        let cl = &mut self.clauses[c as usize];
        if !cl.learnt {
            return;
        }
        cl.activity += self.cla_inc;
        if cl.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP analysis; returns the learnt clause (asserting literal first) and backjump level.
    fn analyze(&mut self, conflict: Vec<Lit>) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0usize;
        let mut idx = self.trail.len();
        let mut lits = conflict;
        let mut buf = Vec::new();
        let dl = self.decision_level();
        let mut touched = Vec::new();
        let uip;
        loop {
            for &q in &lits {
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    touched.push(v);
                    self.bump_var(v);
                    if self.level[v] >= dl {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let p = self.trail[idx];
            let v = var(p);
            self.seen[v] = false;
            pending -= 1;
            if pending == 0 {
                uip = not(p);
                break;
            }
            if let Reason::Clause(c) = self.reason[v] {
                self.bump_clause(c);
            }
            self.reason_lits(v, &mut buf);
            lits = std::mem::take(&mut buf);
        }
        learnt[0] = uip;
        // drop literals implied by the rest of the clause
        let mut keep = vec![uip];
        for &q in &learnt[1..] {
            let v = var(q);
            if self.reason[v] == Reason::None {
                keep.push(q);
                continue;
            }
            self.reason_lits(v, &mut buf);
            if !buf
                .iter()
                .all(|&r| self.seen[var(r)] || self.level[var(r)] == 0)
            {
                keep.push(q);
            }
        }
        for v in touched {
            self.seen[v] = false;
        }
        let mut learnt = keep;
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            bt = self.level[var(learnt[1])];
        }
        (learnt, bt)
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let stop = self.trail_lim[lvl as usize];
        for k in (stop..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = var(l);
            if l & 1 == 0 && v < self.primary {
                self.cell_true[self.cell_of[v] as usize] -= 1;
            }
            self.phase[v] = l & 1 == 0;
            self.value[v] = 0;
            self.reason[v] = Reason::None;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(stop);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = stop;
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|&l| self.level[var(l)]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<u32> = (0..self.clauses.len() as u32)
            .filter(|&c| {
                let cl = &self.clauses[c as usize];
                cl.learnt && !cl.deleted && cl.lbd > 2
            })
            .collect();
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            cb.lbd.cmp(&ca.lbd).then(
                ca.activity
                    .partial_cmp(&cb.activity)
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
        });
        let remove = cands.len() / 2;
        for &c in &cands[..remove] {
            let first = self.clauses[c as usize].lits[0];
            let v = var(first);
            let locked = self.value[v] != 0 && self.reason[v] == Reason::Clause(c);
            if !locked {
                let cl = &mut self.clauses[c as usize];
                cl.deleted = true;
                cl.lits = Vec::new();
                self.learnts -= 1;
            }
        }
        for ws in &mut self.watches {
            let clauses = &self.clauses;
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }

    fn pick(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.value[v] == 0 {
                return Some(if self.phase[v] {
                    pos(v as u32)
                } else {
                    neg(v as u32)
                });
            }
        }
        None
    }

    fn run(&mut self, max_decisions: u64, stop: &AtomicBool) -> Status {
        if self.propagate().is_some() {
            return Status::Unsat;
        }
        let mut restart = 0u64;
        let mut next_reduce = 2000u64;
        loop {
            let limit = 100 * luby(restart);
            restart += 1;
            let mut local = 0u64;
            loop {
                if let Some(conflict) = self.propagate() {
                    self.conflicts += 1;
                    local += 1;
                    if self.decision_level() == 0 {
                        return Status::Unsat;
                    }
                    let (learnt, bt) = self.analyze(conflict);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], Reason::None);
                    } else {
                        let lbd = self.lbd(&learnt);
                        let first = learnt[0];
                        let c = self.attach(learnt, true, lbd);
                        self.bump_clause(c);
                        self.enqueue(first, Reason::Clause(c));
                    }
                    self.var_inc /= 0.95;
                    self.cla_inc /= 0.999;
                    if self.conflicts & 255 == 0 && stop.load(Ordering::Relaxed) {
                        return Status::Budget;
                    }
                } else {
                    if local >= limit {
                        self.cancel_until(0);
                        break;
                    }
                    if self.conflicts >= next_reduce {
                        next_reduce = self.conflicts + 2000 + 300 * (next_reduce / 2000);
                        self.reduce_db();
                    }
                    if self.decisions >= max_decisions {
                        return Status::Budget;
                    }
                    match self.pick() {
                        None => return Status::Sat,
                        Some(l) => {
                            self.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, Reason::None);
                        }
                    }
                }
            }
        }
    }

    fn extract(&self) -> Vec<ColorSet> {
        let p = self.p;
        p.cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let base = p.cell_base[i] as usize;
                let set: ColorSet = (0..c.hat)
                    .filter(|&k| self.value[base + k as usize] == 1)
                    .collect();
                set.padded(c.guess, c.hat)
            })
            .collect()
    }
}

fn stats(s: Option<&Solver>, p: &CoverProblem, start: Instant) -> SearchStats {
    SearchStats {
        nodes: s.map_or(0, |s| s.decisions),
        colorings: p.num_clauses() as u64,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// Searches for guess sets satisfying every clause.
pub fn solve(p: &CoverProblem, budget: &SearchBudget) -> (SearchResult, SearchStats) {
    let start = Instant::now();
    if p.capacity_refutes() {
        return (SearchResult::Exhausted, stats(None, p, start));
    }
    let jobs = if budget.deterministic {
        1
    } else if budget.jobs == 0 {
        rayon::current_num_threads()
    } else {
        budget.jobs
    };
    if jobs <= 1 {
        let stop = AtomicBool::new(false);
        let Some(mut s) = Solver::new(p) else {
            return (SearchResult::Exhausted, stats(None, p, start));
        };
        let r = match s.run(budget.max_nodes, &stop) {
            Status::Sat => SearchResult::Found(s.extract()),
            Status::Unsat => SearchResult::Exhausted,
            Status::Budget => SearchResult::OutOfBudget,
        };
        let st = stats(Some(&s), p, start);
        return (r, st);
    }
    parallel(p, budget, jobs, start)
}

/// Splits on the color literals of the leading cells and solves the cubes concurrently.
fn parallel(
    p: &CoverProblem,
    budget: &SearchBudget,
    jobs: usize,
    start: Instant,
) -> (SearchResult, SearchStats) {
    let depth = (usize::BITS - (jobs - 1).leading_zeros() + 2).min(p.num_lits() as u32) as usize;
    let cubes: Vec<u32> = (0..1u32 << depth).collect();
    let stop = AtomicBool::new(false);
    let found = std::sync::Mutex::new(None);
    let exhausted_budget = AtomicBool::new(false);
    let nodes = std::sync::atomic::AtomicU64::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        cubes.par_iter().for_each(|&cube| {
            if stop.load(Ordering::Relaxed) {
                return;
            }
            let Some(mut s) = Solver::new(p) else {
                return;
            };
            for b in 0..depth {
                let l = if cube >> b & 1 == 1 {
                    pos(b as u32)
                } else {
                    neg(b as u32)
                };
                if !s.add_input(vec![l]) {
                    return;
                }
            }
            let r = s.run(budget.max_nodes, &stop);
            nodes.fetch_add(s.decisions, Ordering::Relaxed);
            match r {
                Status::Sat => {
                    stop.store(true, Ordering::Relaxed);
                    found.lock().unwrap().get_or_insert_with(|| s.extract());
                }
                Status::Unsat => {}
                Status::Budget => {
                    if !stop.load(Ordering::Relaxed) {
                        exhausted_budget.store(true, Ordering::Relaxed);
                    }
                }
            }
        });
    });
    let st = SearchStats {
        nodes: nodes.load(Ordering::Relaxed),
        colorings: p.num_clauses() as u64,
        millis: start.elapsed().as_millis() as u64,
    };
    if let Some(sol) = found.into_inner().unwrap() {
        (SearchResult::Found(sol), st)
    } else if exhausted_budget.load(Ordering::Relaxed) {
        (SearchResult::OutOfBudget, st)
    } else {
        (SearchResult::Exhausted, st)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(n: usize, hat: u32, guess: u32) -> Vec<CellSpec> {
        (0..n)
            .map(|i| CellSpec {
                owner: i,
                hat,
                guess,
            })
            .collect()
    }

    #[test]
    fn luby_sequence() {
        let v: Vec<u64> = (0..9).map(luby).collect();
        assert_eq!(v, vec![1, 1, 2, 1, 1, 2, 4, 1, 1]);
    }

    #[test]
    fn pigeonhole_is_refuted() {
        // three clauses, each wants a distinct color of one single-guess cell
        let mut p = CoverProblem::new(cells(1, 3, 1));
        for c in 0..3 {
            p.add_clause([(0, c)]);
        }
        assert!(matches!(
            solve(&p, &SearchBudget::default()).0,
            SearchResult::Exhausted
        ));
    }

    #[test]
    fn two_guesses_cover_two_clauses() {
        let mut p = CoverProblem::new(cells(1, 3, 2));
        p.add_clause([(0, 0)]);
        p.add_clause([(0, 2)]);
        match solve(&p, &SearchBudget::default()).0 {
            SearchResult::Found(s) => assert_eq!(s[0].iter().collect::<Vec<_>>(), vec![0, 2]),
            _ => panic!("expected a solution"),
        }
    }
}
