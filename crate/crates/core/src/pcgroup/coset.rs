//! Coset enumeration over the trivial subgroup, used to compute Burnside
//! quotients of presentations whose rank exceeds the vendored engines.
//!
//! The group `F / <<R, w^n : w in S>>` surjects onto `B(g,n) / <<R>>` for any
//! word set `S`; once it is finite and of exponent `n` the two coincide.
//! `S` starts with all words of length at most two and grows with every
//! element that fails the exponent law.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

const UNDEF: u32 = u32::MAX;

/// Default cap on the number of live plus dead cosets.
pub const DEFAULT_COSET_LIMIT: usize = 1 << 21;

const MAX_ROUNDS: usize = 64;
const NEW_RELATORS_PER_ROUND: usize = 16;

/// Complete coset table of the trivial subgroup: a regular permutation
/// representation of a finite group.
#[derive(Debug, Clone)]
pub struct CosetTable {
    cols: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len() / self.cols.max(1)
    }

    /// Image of coset `c` under a word given in column form.
    fn trace(&self, mut c: usize, cols: &[usize]) -> usize {
        for &x in cols {
            c = self.table[c * self.cols + x] as usize;
        }
        c
    }

    /// A word (in column form) for every coset, by breadth-first search.
    fn spanning_words(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[c * self.cols + x] as usize;
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap();
                    w.push(x);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("coset table is connected")).collect()
    }
}

fn col_of(letter: i32) -> usize {
    2 * (letter.unsigned_abs() as usize - 1) + usize::from(letter < 0)
}

fn letter_of(col: usize) -> i32 {
    let g = (col / 2 + 1) as i32;
    if col % 2 == 1 {
        -g
    } else {
        g
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    limit: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32> {
        let n = self.parent.len();
        if n >= self.limit {
            return Err(Error::EngineTooSmall(format!("coset enumeration exceeded {} cosets", self.limit)));
        }
        let d = n as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let (m, n) = (self.rep(g), self.rep(d));
                if self.get(m, x) != UNDEF {
                    let t = self.get(m, x);
                    self.merge(n, t);
                } else if self.get(n, x ^ 1) != UNDEF {
                    let t = self.get(n, x ^ 1);
                    self.merge(m, t);
                } else {
                    self.set(m, x, n);
                    self.set(n, x ^ 1, m);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, rel: &[usize]) -> Result<()> {
        if rel.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, rel.len() as isize - 1);
        loop {
            while i as isize <= j && self.get(f, rel[i]) != UNDEF {
                f = self.get(f, rel[i]);
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, rel[j as usize] ^ 1) != UNDEF {
                b = self.get(b, rel[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, rel[i], b);
                self.set(b, rel[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }
}

/// Hasse-Lindelöf-Todd enumeration of the cosets of the trivial subgroup.
pub fn enumerate_cosets(generators: usize, relators: &[Word], limit: usize) -> Result<CosetTable> {
    let cols = 2 * generators;
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| r.letters().iter().map(|&l| col_of(l)).collect()).collect();
    let mut e = Enumerator { cols, table: vec![UNDEF; cols], parent: vec![0], limit: limit.max(1), queue: Vec::new() };
    let mut c = 0u32;
    while (c as usize) < e.parent.len() {
        if e.alive(c) {
            for r in &rels {
                e.scan_and_fill(c, r)?;
                if !e.alive(c) {
                    break;
                }
            }
            if e.alive(c) {
                for x in 0..cols {
                    if e.get(c, x) == UNDEF {
                        e.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    // compact to live cosets, coset 0 stays first
    let live: Vec<u32> = (0..e.parent.len() as u32).filter(|&c| e.alive(c)).collect();
    let mut index = vec![UNDEF; e.parent.len()];
    for (k, &c) in live.iter().enumerate() {
        index[c as usize] = k as u32;
    }
    let mut table = Vec::with_capacity(live.len() * cols);
    for &c in &live {
        for x in 0..cols {
            let d = e.get(c, x);
            table.push(index[e.rep(d) as usize]);
        }
    }
    Ok(CosetTable { cols, table })
}

fn short_words(generators: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=generators as i32).flat_map(|g| [g, -g]).collect();
    let mut out: Vec<Word> = letters.iter().filter(|&&l| l > 0).map(|&l| Word(vec![l])).collect();
    for &a in &letters {
        for &b in &letters {
            if a != -b && a != b {
                out.push(Word(vec![a, b]));
            }
        }
    }
    out
}

/// Order of `B(g, n) / <<relators>>` by coset enumeration. Fails with
/// `EngineTooSmall` when the enumeration outgrows `limit` cosets or the
/// exponent law does not settle.
pub fn burnside_quotient_order(p: &Presentation, n: u64, limit: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::ExponentTooSmall(n));
    }
    let g = p.generator_count();
    if g == 0 {
        return Ok(1);
    }
    let mut relators: Vec<Word> = p.relators().to_vec();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    for w in short_words(g) {
        if seen.insert(w.0.clone()) {
            relators.push(w.pow(n as usize));
        }
    }
    for _ in 0..MAX_ROUNDS {
        let t = enumerate_cosets(g, &relators, limit)?;
        let words = t.spanning_words();
        let mut failing: Vec<&Vec<usize>> = Vec::new();
        for w in &words {
            let mut c = 0;
            for _ in 0..n {
                c = t.trace(c, w);
            }
            if c != 0 {
                failing.push(w);
            }
        }
        if failing.is_empty() {
            return Ok(t.order() as u128);
        }
        failing.sort_by_key(|w| w.len());
        for w in failing.into_iter().take(NEW_RELATORS_PER_ROUND) {
            let word = Word(w.iter().map(|&x| letter_of(x)).collect());
            if seen.insert(word.0.clone()) {
                relators.push(word.pow(n as usize));
            }
        }
    }
    Err(Error::EngineTooSmall(format!("exponent law did not settle after {MAX_ROUNDS} rounds")))
}
