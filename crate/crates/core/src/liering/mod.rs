//! Free Lie algebras over GF(p) truncated at a class bound, the Magnus
//! logarithm of group words, and Engel-quotient nontriviality
//! certificates for relators in free Burnside groups of prime exponent.

mod assoc;
mod fp;
mod hall;

pub use assoc::AssocElement;
pub use fp::Gf;
pub use hall::{hall_basis, lyndon_words, BasicCommutator, HallBasis};

use crate::error::{Error, Result};
use crate::presentation::Word;

/// Default class bound for certificates.
pub const DEFAULT_CLASS: usize = 4;

/// Element of a truncated free Lie algebra: coordinates over the Hall basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    shape: (usize, usize, u32),
    coeffs: Vec<u32>,
}

impl LieElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }

    /// Nonzero `(basis index, coefficient)` pairs.
    pub fn support(&self) -> Vec<(usize, u32)> {
        self.coeffs.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
    }
}

/// The free Lie algebra on `r` generators over GF(p), truncated above
/// class `c`.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    r: usize,
    c: usize,
    field: Gf,
    basis: HallBasis,
    expansions: Vec<AssocElement>,
}

impl LieAlgebra {
    pub fn new(r: usize, c: usize, p: u32) -> Result<Self> {
        if r == 0 || c == 0 {
            return Err(Error::Unsupported("a Lie algebra needs r >= 1 and c >= 1".into()));
        }
        let field = Gf::new(p)?;
        let basis = hall_basis(r, c);
        let mut expansions: Vec<AssocElement> = Vec::with_capacity(basis.len());
        for e in basis.elements() {
            let x = match e.factors {
                None => AssocElement::letter(r, c, e.word[0]),
                Some((a, b)) => expansions[a].commutator(&expansions[b], &field),
            };
            expansions.push(x);
        }
        Ok(LieAlgebra { r, c, field, basis, expansions })
    }

    pub fn generators(&self) -> usize {
        self.r
    }

    pub fn class(&self) -> usize {
        self.c
    }

    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    fn shape(&self) -> (usize, usize, u32) {
        (self.r, self.c, self.field.p())
    }

    fn check(&self, a: &LieElement) -> Result<()> {
        if a.shape != self.shape() {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> LieElement {
        LieElement { shape: self.shape(), coeffs: vec![0; self.basis.len()] }
    }

    /// Generator `x_i`, 1-based.
    pub fn generator(&self, i: usize) -> Result<LieElement> {
        if i == 0 || i > self.r {
            return Err(Error::GeneratorOutOfRange { index: i, count: self.r });
        }
        let mut z = self.zero();
        z.coeffs[i - 1] = 1;
        Ok(z)
    }

    /// Basis element by index.
    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut z = self.zero();
        z.coeffs[i] = 1;
        z
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.field.add(x, y)).collect();
        Ok(LieElement { shape: a.shape, coeffs })
    }

    pub fn scale(&self, a: &LieElement, k: i64) -> LieElement {
        let k = self.field.from_i64(k);
        LieElement { shape: a.shape, coeffs: a.coeffs.iter().map(|&x| self.field.mul(x, k)).collect() }
    }

    /// Weight of basis element `i`.
    pub fn weight_of(&self, i: usize) -> usize {
        self.basis.elements()[i].weight()
    }

    /// The weight-`w` homogeneous component.
    pub fn component(&self, a: &LieElement, w: usize) -> LieElement {
        let mut z = self.zero();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if self.weight_of(i) == w {
                z.coeffs[i] = x;
            }
        }
        z
    }

    /// Lowest weight with a nonzero component.
    pub fn lowest_weight(&self, a: &LieElement) -> Option<usize> {
        a.support().iter().map(|&(i, _)| self.weight_of(i)).min()
    }

    /// Image in the truncated free associative algebra.
    pub fn to_assoc(&self, a: &LieElement) -> AssocElement {
        let mut out = AssocElement::zero(self.r, self.c);
        for (i, x) in a.support() {
            out = out.add(&self.expansions[i].scale(x, &self.field), &self.field);
        }
        out
    }

    /// Coordinates of a Lie element given by its associative expansion.
    ///
    /// The expansion of a basic commutator is its Lyndon word plus
    /// lexicographically larger words, so the smallest surviving word always
    /// names the next basis element to peel off.
    pub fn from_assoc(&self, x: &AssocElement) -> Result<LieElement> {
        let f = &self.field;
        let mut rest = x.clone();
        let mut out = self.zero();
        if rest.component(0)[0] != 0 {
            return Err(Error::Unsupported("constant term in a Lie element".into()));
        }
        for d in 1..=self.c {
            while let Some(idx) = rest.component(d).iter().position(|&v| v != 0) {
                let mut word = vec![0; d];
                let mut n = idx;
                for slot in word.iter_mut().rev() {
                    *slot = n % self.r;
                    n /= self.r;
                }
                let b = self
                    .basis
                    .index_of_word(&word)
                    .ok_or_else(|| Error::Unsupported("element is not in the Lie span".into()))?;
                let coef = rest.component(d)[idx];
                out.coeffs[b] = f.add(out.coeffs[b], coef);
                let sub = self.expansions[b].scale(coef, f);
                let (src, dst) = (sub.component(d), rest.component_mut(d));
                for (t, &s) in dst.iter_mut().zip(src) {
                    *t = f.sub(*t, s);
                }
            }
        }
        Ok(out)
    }

    /// Lie bracket; terms above the class bound vanish.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check(a)?;
        self.check(b)?;
        let x = self.to_assoc(a).commutator(&self.to_assoc(b), &self.field);
        self.from_assoc(&x)
    }

    fn require_small_class(&self) -> Result<()> {
        if self.c >= self.field.p() as usize {
            return Err(Error::ClassTooLarge { class: self.c, prime: self.field.p() });
        }
        Ok(())
    }

    /// `prod exp(+-x_i)` over the letters of `w` in the truncated algebra.
    pub fn magnus_expansion(&self, w: &Word) -> Result<AssocElement> {
        self.require_small_class()?;
        let mut m = AssocElement::one(self.r, self.c);
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize;
            if g == 0 || g > self.r {
                return Err(Error::GeneratorOutOfRange { index: g, count: self.r });
            }
            m = m.mul_exp_letter(self.r - g, l < 0, &self.field);
        }
        Ok(m)
    }

    /// `log` of the Magnus expansion of `w`, passed through the Dynkin
    /// projection and written in the Hall basis. Needs `c < p`.
    pub fn magnus_log(&self, w: &Word) -> Result<LieElement> {
        let log = self.magnus_expansion(w)?.log(&self.field);
        self.from_assoc(&log.dynkin_projection(&self.field))
    }

    /// `log(exp(a) exp(b))`, the group law transported to the Lie algebra.
    pub fn bch(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.require_small_class()?;
        self.check(a)?;
        self.check(b)?;
        let f = &self.field;
        let prod = self.to_assoc(a).exp(f).mul(&self.to_assoc(b).exp(f), f);
        self.from_assoc(&prod.log(f).dynkin_projection(f))
    }

    /// Instances of the full multilinearization of the `(p-1)`-Engel
    /// identity `[x, y, ..., y]` at basis elements, grouped by weight
    /// `1..=c`. Instances above the class bound vanish; in particular, for
    /// `c < p` every instance has weight at least `p` and the list is empty.
    pub fn engel_relations(&self) -> Result<Vec<Vec<LieElement>>> {
        self.require_small_class()?;
        let arity = self.field.p() as usize - 1;
        let mut by_weight: Vec<Vec<LieElement>> = vec![Vec::new(); self.c + 1];
        let n = self.basis.len();
        for x in 0..n {
            let budget = self.c.saturating_sub(self.weight_of(x));
            // y-tuples (as nondecreasing index lists) with total weight <= budget
            let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
            while let Some((ys, used)) = stack.pop() {
                if ys.len() == arity {
                    let rel = self.engel_instance(x, &ys)?;
                    if let Some(w) = self.lowest_weight(&rel) {
                        by_weight[w].push(rel);
                    }
                    continue;
                }
                let start = ys.last().copied().unwrap_or(0);
                for y in start..n {
                    let w = self.weight_of(y);
                    if used + w + (arity - ys.len() - 1) <= budget {
                        let mut next = ys.clone();
                        next.push(y);
                        stack.push((next, used + w));
                    }
                }
            }
        }
        by_weight.remove(0);
        Ok(by_weight)
    }

    /// `sum over orderings s of ys: [x, y_s1, ..., y_sk]`.
    fn engel_instance(&self, x: usize, ys: &[usize]) -> Result<LieElement> {
        let mut total = self.zero();
        let mut order: Vec<usize> = ys.to_vec();
        permutations(&mut order, 0, &mut |perm| {
            let mut acc = self.basis_element(x);
            for &y in perm {
                acc = self.bracket(&acc, &self.basis_element(y)).expect("same algebra");
            }
            total = self.add(&total, &acc).expect("same algebra");
        });
        Ok(total)
    }

    /// For each relator, the lowest weight at which its Magnus logarithm is
    /// nonzero modulo the Engel relations, if any. A weight certifies the
    /// relator nontrivial in the free Burnside group of exponent `p`;
    /// `None` is inconclusive.
    pub fn nontriviality_certificate(&self, relators: &[Word]) -> Result<Vec<Option<usize>>> {
        let relations = self.engel_relations()?;
        let reducers: Vec<RowSpace> = (1..=self.c)
            .map(|w| RowSpace::new(&self.field, relations[w - 1].iter().map(|e| e.coeffs.clone()).collect()))
            .collect();
        relators
            .iter()
            .map(|rel| {
                let log = self.magnus_log(rel)?;
                Ok((1..=self.c).find(|&w| {
                    let comp = self.component(&log, w);
                    !reducers[w - 1].reduce(&self.field, comp.coeffs).iter().all(|&x| x == 0)
                }))
            })
            .collect()
    }
}

fn permutations(v: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// Row-reduced span of vectors over GF(p).
#[derive(Debug, Clone)]
struct RowSpace {
    rows: Vec<(usize, Vec<u32>)>, // (pivot column, row with pivot 1)
}

impl RowSpace {
    fn new(f: &Gf, vectors: Vec<Vec<u32>>) -> Self {
        let mut s = RowSpace { rows: Vec::new() };
        for v in vectors {
            let v = s.reduce(f, v);
            if let Some(pivot) = v.iter().position(|&x| x != 0) {
                let inv = f.inv(v[pivot]);
                s.rows.push((pivot, v.iter().map(|&x| f.mul(x, inv)).collect()));
            }
        }
        s
    }

    fn reduce(&self, f: &Gf, mut v: Vec<u32>) -> Vec<u32> {
        for (pivot, row) in &self.rows {
            let k = v[*pivot];
            if k != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(k, b));
                }
            }
        }
        v
    }
}

/// `magnus_log` in a freshly built algebra.
pub fn magnus_log(w: &Word, r: usize, p: u32, c: usize) -> Result<LieElement> {
    LieAlgebra::new(r, c, p)?.magnus_log(w)
}

/// Engel relation rows by weight `1..=c`, as coordinate vectors.
pub fn engel_quotient_matrix(r: usize, p: u32, c: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    let alg = LieAlgebra::new(r, c, p)?;
    Ok(alg.engel_relations()?.into_iter().map(|rows| rows.into_iter().map(|e| e.coeffs).collect()).collect())
}

/// Per-relator certified weights in a freshly built algebra.
pub fn nontriviality_certificate(relators: &[Word], r: usize, p: u32, c: usize) -> Result<Vec<Option<usize>>> {
    LieAlgebra::new(r, c, p)?.nontriviality_certificate(relators)
}
