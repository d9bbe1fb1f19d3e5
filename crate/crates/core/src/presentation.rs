//! Finitely presented groups: core groups of diagrams, the Wada reduction to
//! the double branched cover, and length-capped Tietze elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// A word in the free group: letter `g` is generator `g` (1-based), `-g` its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` raised to a non-negative power.
    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().map(|&l| if l.unsigned_abs() as usize == g { l.signum() as i64 } else { 0 }).sum()
    }

    /// Number of letters equal to `g` or its inverse.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.unsigned_abs() as usize == g).count()
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Free reduction; cancels adjacent `g g^-1` pairs.
    pub fn free_reduce(&self) -> Word {
        word_eval_free(self)
    }

    /// Free and cyclic reduction (a conjugate of the free reduction).
    pub fn cyclic_reduce(&self) -> Word {
        let w = word_eval_free(self).0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    /// Whether `other` is a cyclic rotation of `self` or of its inverse.
    pub fn same_cyclic_class(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let inv = other.inverse();
        let doubled: Vec<i32> = self.0.iter().chain(self.0.iter()).copied().collect();
        [&other.0, &inv.0].iter().any(|needle| doubled.windows(needle.len()).any(|w| w == needle.as_slice()))
    }

    /// Replaces every occurrence of generator `g` by `image` (and `g^-1` by
    /// its inverse).
    pub fn substitute(&self, g: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if l.unsigned_abs() as usize == g {
                out.extend_from_slice(if l > 0 { &image.0 } else { &inv.0 });
            } else {
                out.push(l);
            }
        }
        Word(out)
    }
}

/// Freely reduced form of `w`.
pub fn word_eval_free(w: &Word) -> Word {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generator_names.len();
        for r in &relators {
            if let Some(&bad) = r.0.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > n) {
                return Err(Error::GeneratorOutOfRange { index: bad.unsigned_abs() as usize, count: n });
            }
        }
        Ok(Presentation { generator_names, relators })
    }

    /// Generators named `prefix1, prefix2, ...`.
    pub fn with_numbered_generators(prefix: &str, count: usize, relators: Vec<Word>) -> Result<Self> {
        Presentation::new((1..=count).map(|i| format!("{prefix}{i}")).collect(), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name).map(|i| i + 1)
    }

    /// Renders a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let toks: Vec<String> =
            w.0.iter()
                .map(|&l| {
                    let name = &self.generator_names[l.unsigned_abs() as usize - 1];
                    if l > 0 {
                        name.clone()
                    } else {
                        format!("{name}^-1")
                    }
                })
                .collect();
        toks.join(" ")
    }

    /// Parses a word over this presentation's generator names: tokens `name`,
    /// `name^-1` or `name^k`, separated by whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = self
                .generator_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}` in `{tok}`")))?
                as i32;
            let letter = if exp < 0 { -g } else { g };
            for _ in 0..exp.unsigned_abs() {
                out.push(letter);
            }
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generator_names.join(", "), rels.join(", "))
    }
}

/// Core group of a diagram: one generator per arc, then one per free loop,
/// and the relator `y_o y_i^-1 y_o y_k^-1` at each crossing with over-arc
/// `o` and under-arcs `i = under_in`, `k = under_out`.
pub fn core_presentation(d: &LinkDiagram) -> Presentation {
    let relators = d
        .crossings()
        .iter()
        .map(|c| {
            let (o, i, k) = (c.over as i32, c.under_in as i32, c.under_out as i32);
            word_eval_free(&Word(vec![o, -i, o, -k]))
        })
        .collect();
    Presentation::with_numbered_generators("y", d.arc_count() + d.free_components(), relators)
        .expect("arc ids are in range")
}

/// Drops the last relator; in a core presentation of a connected diagram it
/// follows from the others.
pub fn drop_redundant_relator(p: &Presentation) -> Result<Presentation> {
    if p.relators.is_empty() {
        return Err(Error::NoRelators);
    }
    let mut q = p.clone();
    q.relators.pop();
    Ok(q)
}

/// Sets generator `kill` to the identity: deletes it from every relator,
/// freely reduces, drops relators that become trivial and renumbers the
/// remaining generators.
pub fn wada_reduce(p: &Presentation, kill: usize) -> Result<Presentation> {
    let n = p.generator_count();
    if kill == 0 || kill > n {
        return Err(Error::GeneratorOutOfRange { index: kill, count: n });
    }
    let k = kill as i32;
    let relators = p
        .relators
        .iter()
        .map(|r| {
            let letters = r.0.iter().filter(|l| l.abs() != k).map(|&l| if l.abs() > k { l - l.signum() } else { l });
            word_eval_free(&Word(letters.collect()))
        })
        .filter(|w| !w.is_empty())
        .collect();
    let mut names = p.generator_names.clone();
    names.remove(kill - 1);
    Presentation::new(names, relators)
}

/// Wada reduction killing the highest-numbered generator.
pub fn wada_reduce_default(p: &Presentation) -> Result<Presentation> {
    wada_reduce(p, p.generator_count())
}

pub const DEFAULT_TIETZE_CAP: usize = 64;

/// Generator-eliminating Tietze moves with the default length cap.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    tietze_simplify_capped(p, DEFAULT_TIETZE_CAP)
}

/// Repeatedly picks the highest-numbered generator that occurs exactly once
/// in some relator, solves that relator for it (shortest solution, at most
/// `cap` letters) and substitutes it everywhere. Relators are kept freely and
/// cyclically reduced; trivial relators and repeats (up to rotation and
/// inversion) are dropped.
pub fn tietze_simplify_capped(p: &Presentation, cap: usize) -> Presentation {
    let mut names = p.generator_names.clone();
    let mut rels: Vec<Word> = Vec::new();
    let tidy = |rels: &mut Vec<Word>, incoming: Vec<Word>| {
        rels.clear();
        for w in incoming {
            let w = w.cyclic_reduce();
            if w.is_empty() || rels.iter().any(|r| r.same_cyclic_class(&w)) {
                continue;
            }
            rels.push(w);
        }
    };
    tidy(&mut rels, p.relators.clone());
    loop {
        let mut choice: Option<(usize, usize, Word)> = None; // (generator, relator, image)
        'gens: for g in (1..=names.len()).rev() {
            for (ri, r) in rels.iter().enumerate() {
                if r.occurrences(g) != 1 {
                    continue;
                }
                let pos = r.0.iter().position(|l| l.unsigned_abs() as usize == g).unwrap();
                // rotate so the letter comes first: g^e W = 1
                let sign = r.0[pos].signum();
                let rest: Vec<i32> = r.0[pos + 1..].iter().chain(r.0[..pos].iter()).copied().collect();
                let w = Word(rest);
                let image = if sign > 0 { w.inverse() } else { w };
                if image.len() > cap {
                    continue;
                }
                if choice.as_ref().is_none_or(|(_, _, best)| image.len() < best.len()) {
                    choice = Some((g, ri, image));
                }
            }
            if choice.is_some() {
                break 'gens;
            }
        }
        let Some((g, ri, image)) = choice else { break };
        let gi = g as i32;
        let next: Vec<Word> = rels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, r)| {
                let s = r.substitute(g, &image);
                Word(s.0.into_iter().map(|l| if l.abs() > gi { l - l.signum() } else { l }).collect())
            })
            .collect();
        names.remove(g - 1);
        tidy(&mut rels, next);
    }
    Presentation { generator_names: names, relators: rels }
}

/// `tietze(wada(tietze(p)))` with the highest generator killed: the standard
/// route from a core presentation to a compact presentation of the
/// fundamental group of the double branched cover.
pub fn reduced_presentation(core: &Presentation) -> Result<Presentation> {
    let simplified = tietze_simplify(core);
    if simplified.generator_count() == 0 {
        return Ok(simplified);
    }
    Ok(tietze_simplify(&wada_reduce_default(&simplified)?))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresFile {
    generators: Vec<String>,
    relators: Vec<String>,
}

/// Parses a presentation file: a JSON object with `generators` (names) and
/// `relators` (strings of `name`, `name^-1` tokens).
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let f: PresFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("presentation file: {e}")))?;
    for (i, n) in f.generators.iter().enumerate() {
        if n.is_empty() || n.contains(char::is_whitespace) || n.contains('^') {
            return Err(Error::Parse(format!("bad generator name `{n}`")));
        }
        if f.generators[..i].contains(n) {
            return Err(Error::Parse(format!("duplicate generator `{n}`")));
        }
    }
    let shell = Presentation::new(f.generators, Vec::new())?;
    let relators = f.relators.iter().map(|r| shell.parse_word(r)).collect::<Result<Vec<_>>>()?;
    Presentation::new(shell.generator_names, relators)
}

pub fn to_presentation_string(p: &Presentation) -> String {
    let f = PresFile {
        generators: p.generator_names.clone(),
        relators: p.relators.iter().map(|r| p.format_word(r)).collect(),
    };
    serde_json::to_string_pretty(&f).expect("presentation serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, BraidWord, Crossing};
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Word {
        Word(v.to_vec())
    }

    pub(crate) fn hopf() -> LinkDiagram {
        LinkDiagram::new(2, vec![Crossing::new(1, 2, 2), Crossing::new(2, 1, 1)], 0, vec![]).unwrap()
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(word_eval_free(&w(&[1, -1])), Word::empty());
        assert_eq!(word_eval_free(&w(&[1, 2, -2, -1])), Word::empty());
        let r1 = w(&[1, -2, -2, 1, 1, -2, -2, 1, 1, 1, -2, -2, 1, 1, -2, -2]);
        assert_eq!(word_eval_free(&r1), r1);
    }

    #[test]
    fn hopf_core_presentation() {
        let p = core_presentation(&hopf());
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators(), &[w(&[1, -2, 1, -2]), w(&[2, -1, 2, -1])]);
        let q = drop_redundant_relator(&p).unwrap();
        assert_eq!(q.relators(), &[w(&[1, -2, 1, -2])]);
        let r = wada_reduce(&q, 2).unwrap();
        assert_eq!(r.generator_count(), 1);
        assert_eq!(r.relators(), &[w(&[1, 1])]);
    }

    #[test]
    fn crossingless_and_edge_cases() {
        let p = core_presentation(&LinkDiagram::unlink(1));
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(drop_redundant_relator(&p), Err(Error::NoRelators));
        let one = Presentation::with_numbered_generators("a", 1, vec![w(&[1, 1])]).unwrap();
        assert!(drop_redundant_relator(&one).unwrap().relators().is_empty());
        assert!(wada_reduce(&one, 2).is_err());
        assert!(wada_reduce(&one, 0).is_err());
        let two = Presentation::with_numbered_generators("a", 3, vec![w(&[1, 3, 1])]).unwrap();
        let r = wada_reduce(&two, 2).unwrap();
        assert_eq!(r.generator_count(), 2);
        assert_eq!(r.relators(), &[w(&[1, 2, 1])]);
    }

    #[test]
    fn tietze_examples() {
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![w(&[1, -2])]).unwrap();
        let s = tietze_simplify(&p);
        assert_eq!(s.generator_names(), &["a".to_string()]);
        assert!(s.relators().is_empty());

        let hopf = core_presentation(&braid_closure(&BraidWord::new(2, vec![1, 1]).unwrap()));
        let s = tietze_simplify(&hopf);
        // the two crossing relators are mutually inverse up to rotation
        assert_eq!(s.generator_count(), 2);
        assert_eq!(s.relators(), &[w(&[1, -2, 1, -2])]);
    }

    #[test]
    fn delta_five_reduces_to_five_generators() {
        let d = braid_closure(&BraidWord::new(5, vec![1, 2, 3, 4]).unwrap().pow(10));
        let p = core_presentation(&d);
        assert_eq!(p.generator_count(), 40);
        assert_eq!(p.relators().len(), 40);
        let s = tietze_simplify(&p);
        assert_eq!(s.generator_names(), &["y1", "y2", "y3", "y4", "y5"]);
    }

    #[test]
    fn presentation_file_round_trip() {
        let text = r#"{"generators": ["x", "y"], "relators": ["x y^-1 y^-1 x^2", "y^3"]}"#;
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relators()[0], w(&[1, -2, -2, 1, 1]));
        assert_eq!(p.relators()[1], w(&[2, 2, 2]));
        assert_eq!(parse_presentation(&to_presentation_string(&p)).unwrap(), p);
        assert!(parse_presentation(r#"{"generators": ["x"], "relators": ["z"]}"#).is_err());
        assert!(parse_presentation(r#"{"generators": ["x", "x"], "relators": []}"#).is_err());
        assert!(parse_presentation(r#"{"generators": ["x"], "relators": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn cyclic_classes() {
        assert!(w(&[1, 2, -1]).same_cyclic_class(&w(&[2, -1, 1])));
        assert!(w(&[1, 2]).same_cyclic_class(&w(&[-1, -2])));
        assert!(!w(&[1, 2]).same_cyclic_class(&w(&[1, -2])));
    }

    proptest! {
        #[test]
        fn free_reduction_is_idempotent(v in proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3)], 0..40)) {
            let once = word_eval_free(&Word(v));
            prop_assert_eq!(word_eval_free(&once), once.clone());
            prop_assert!(once.0.windows(2).all(|p| p[0] != -p[1]));
        }
    }
}
