use std::fmt;

use super::{Crossing, LinkDiagram, UnionFind};
use crate::error::{Error, Result};

/// A braid word on `strands` strands. Letter `i` is the generator sigma_i,
/// `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::Parse("generator index 0".into()));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!("generator s{} needs more than {strands} strands", l.unsigned_abs())));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.repeat(k) }
    }

    /// Underlying permutation: `perm[j]` is the final position of the strand
    /// starting at position `j` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = starting strand
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={}", self.strands)?;
        if !self.letters.is_empty() {
            writeln!(f)?;
            let toks: Vec<String> =
                self.letters.iter().map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
            write!(f, "{}", toks.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a braid word. A `strands=<n>` header fixes the strand count;
/// otherwise it is the largest generator index plus one.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    parse_braid_with_strands(text, None)
}

/// Parses a braid word with an explicit strand count, which must agree with
/// any `strands=` header in the text.
pub fn parse_braid_with_strands(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let mut declared = strands;
    let mut letters = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            if let Some(n) = tok.strip_prefix("strands=") {
                let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad strand count `{tok}`")))?;
                if let Some(d) = declared {
                    if d != n {
                        return Err(Error::Parse(format!("strand count {n} conflicts with declared {d}")));
                    }
                }
                declared = Some(n);
                continue;
            }
            letters.push(parse_letter(tok)?);
        }
    }
    let max = letters.iter().map(|l: &i32| l.unsigned_abs() as usize).max().unwrap_or(0);
    let strands = match declared {
        Some(n) => {
            if max >= n {
                return Err(Error::Parse(format!("generator s{max} needs more than {n} strands")));
            }
            n
        }
        None => max + 1,
    };
    BraidWord::new(strands, letters)
}

fn parse_letter(tok: &str) -> Result<i32> {
    let bad = || Error::Parse(format!("malformed braid token `{tok}`"));
    let body = tok.strip_prefix('s').ok_or_else(bad)?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let i: i32 = digits.parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(Error::Parse("generator index 0".into()));
    }
    Ok(if inverse { -i } else { i })
}

/// Closes a braid into a link diagram.
///
/// For sigma_i the strand at position `i` passes over the one at `i + 1`;
/// for its inverse it passes under. Arcs are numbered by first appearance:
/// the arcs at the top of the braid come first, in strand order.
pub fn braid_closure(b: &BraidWord) -> LinkDiagram {
    let s = b.strands();
    // provisional ids: 1..=s for the top arcs, then one per crossing
    let mut pos: Vec<usize> = (1..=s).collect();
    let mut next = s + 1;
    let mut raw: Vec<(usize, usize, usize)> = Vec::with_capacity(b.letters().len());
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (left, right) = (pos[i], pos[i + 1]);
        let new = next;
        next += 1;
        if l > 0 {
            raw.push((left, right, new));
            pos[i] = new;
            pos[i + 1] = left;
        } else {
            raw.push((right, left, new));
            pos[i] = right;
            pos[i + 1] = new;
        }
    }
    let mut uf = UnionFind::new(next);
    for (j, &bottom) in pos.iter().enumerate() {
        uf.union(j + 1, bottom);
    }
    let mut used = vec![false; next];
    for &(o, u1, u2) in &raw {
        for a in [o, u1, u2] {
            let r = uf.find(a);
            used[r] = true;
        }
    }
    let mut label = vec![0usize; next];
    let mut arcs = 0;
    let mut free = 0;
    let mut counted = vec![false; next];
    for id in 1..next {
        let r = uf.find(id);
        if counted[r] {
            continue;
        }
        counted[r] = true;
        if used[r] {
            arcs += 1;
            label[r] = arcs;
        } else {
            free += 1;
        }
    }
    let crossings: Vec<Crossing> = raw
        .iter()
        .map(|&(o, u1, u2)| Crossing::new(label[uf.find(o)], label[uf.find(u1)], label[uf.find(u2)]))
        .collect();
    LinkDiagram::new(arcs, crossings, free, Vec::new()).expect("braid closures are valid diagrams")
}
