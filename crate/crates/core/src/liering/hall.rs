//! Lyndon words with their standard bracketings: a Hall basis of the free
//! Lie algebra.
//!
//! Internally letter `l` stands for generator `x_(r - l)`, so with two
//! generators the basic commutator of weight 2 is `[x2, x1]`.

use std::collections::HashMap;
use std::fmt;

/// One basic commutator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCommutator {
    /// Lyndon word over internal letters.
    pub word: Vec<usize>,
    /// Indices of the two factors of the standard factorization, or `None`
    /// for a generator.
    pub factors: Option<(usize, usize)>,
}

impl BasicCommutator {
    pub fn weight(&self) -> usize {
        self.word.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallBasis {
    r: usize,
    c: usize,
    elements: Vec<BasicCommutator>,
    by_word: HashMap<Vec<usize>, usize>,
}

/// Lyndon words of length at most `n` over `k` letters, in lexicographic
/// order (Duval's generation).
pub fn lyndon_words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

/// Hall basis through weight `c` on `r` generators: generators `x1..xr`
/// first, then basic commutators by weight and lexicographic Lyndon word.
pub fn hall_basis(r: usize, c: usize) -> HallBasis {
    let mut words = lyndon_words(r, c);
    words.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            if a.len() == 1 {
                b.cmp(a) // x1 (letter r-1) first
            } else {
                a.cmp(b)
            }
        })
    });
    let mut by_word = HashMap::new();
    let mut elements = Vec::with_capacity(words.len());
    for (i, w) in words.into_iter().enumerate() {
        let factors = (w.len() > 1).then(|| {
            // the right factor is the longest proper suffix that is Lyndon
            let split = (1..w.len()).find(|&s| is_lyndon(&w[s..])).unwrap();
            (by_word[&w[..split]], by_word[&w[split..]])
        });
        by_word.insert(w.clone(), i);
        elements.push(BasicCommutator { word: w, factors });
    }
    HallBasis { r, c, elements, by_word }
}

impl HallBasis {
    pub fn generators(&self) -> usize {
        self.r
    }

    pub fn class(&self) -> usize {
        self.c
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elements
    }

    pub fn index_of_word(&self, w: &[usize]) -> Option<usize> {
        self.by_word.get(w).copied()
    }

    /// Number of basic commutators of each weight `1..=c`.
    pub fn counts_by_weight(&self) -> Vec<usize> {
        (1..=self.c).map(|w| self.elements.iter().filter(|e| e.weight() == w).count()).collect()
    }

    /// Bracket notation with generator names `x1..xr`.
    pub fn describe(&self, i: usize) -> String {
        let e = &self.elements[i];
        match e.factors {
            None => format!("x{}", self.r - e.word[0]),
            Some((a, b)) => format!("[{}, {}]", self.describe(a), self.describe(b)),
        }
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.len()).map(|i| self.describe(i)).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: usize) -> i64 {
        let (mut n, mut k, mut result) = (n, 2, 1i64);
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                result = -result;
            }
            k += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }

    fn witt(r: usize, n: usize) -> usize {
        let s: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * (r as i64).pow((n / d) as u32)).sum();
        (s / n as i64) as usize
    }

    #[test]
    fn small_bases() {
        let b = hall_basis(2, 2);
        assert_eq!(b.to_string(), "{x1, x2, [x2, x1]}");
        assert_eq!(hall_basis(2, 3).len(), 5);
        assert_eq!(hall_basis(4, 2).len(), 10);
    }

    #[test]
    fn witt_dimensions() {
        for r in 1..=5 {
            for c in 1..=6 {
                let b = hall_basis(r, c);
                let expected: Vec<usize> = (1..=c).map(|n| witt(r, n)).collect();
                assert_eq!(b.counts_by_weight(), expected, "r={r} c={c}");
            }
        }
    }

    #[test]
    fn factors_are_earlier_and_weights_add() {
        let b = hall_basis(3, 5);
        for (i, e) in b.elements().iter().enumerate() {
            if let Some((l, r)) = e.factors {
                assert!(l < i && r < i);
                assert_eq!(b.elements()[l].weight() + b.elements()[r].weight(), e.weight());
                let mut w = b.elements()[l].word.clone();
                w.extend(&b.elements()[r].word);
                assert_eq!(w, e.word);
            }
        }
    }
}
