use super::fp::Gf;

/// Element of the free associative GF(p)-algebra on `r` letters truncated
/// above degree `c`. Stored densely by degree: the word `l_1 ... l_d` sits
/// at index `l_1 r^(d-1) + ... + l_d` of component `d`, so index order is
/// lexicographic order on words of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocElement {
    r: usize,
    components: Vec<Vec<u32>>,
}

impl AssocElement {
    pub fn zero(r: usize, c: usize) -> Self {
        AssocElement { r, components: (0..=c).map(|d| vec![0; r.pow(d as u32)]).collect() }
    }

    pub fn one(r: usize, c: usize) -> Self {
        let mut e = Self::zero(r, c);
        e.components[0][0] = 1;
        e
    }

    /// The single letter `l` (0-based).
    pub fn letter(r: usize, c: usize, l: usize) -> Self {
        let mut e = Self::zero(r, c);
        if c >= 1 {
            e.components[1][l] = 1;
        }
        e
    }

    pub fn letters(&self) -> usize {
        self.r
    }

    pub fn class(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, d: usize) -> &[u32] {
        &self.components[d]
    }

    pub fn component_mut(&mut self, d: usize) -> &mut [u32] {
        &mut self.components[d]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    /// Keeps only the degree-`d` part.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut e = Self::zero(self.r, self.class());
        e.components[d] = self.components[d].clone();
        e
    }

    pub fn add(&self, other: &Self, f: &Gf) -> Self {
        self.zip(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self, f: &Gf) -> Self {
        self.zip(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, k: u32, f: &Gf) -> Self {
        AssocElement {
            r: self.r,
            components: self.components.iter().map(|c| c.iter().map(|&a| f.mul(a, k)).collect()).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(u32, u32) -> u32) -> Self {
        debug_assert_eq!((self.r, self.class()), (other.r, other.class()));
        AssocElement {
            r: self.r,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect())
                .collect(),
        }
    }

    /// Product, dropping words longer than the class.
    pub fn mul(&self, other: &Self, f: &Gf) -> Self {
        let c = self.class();
        let mut out = Self::zero(self.r, c);
        for (da, a) in self.components.iter().enumerate() {
            for (db, b) in other.components.iter().enumerate().take(c + 1 - da) {
                let shift = b.len();
                let target = &mut out.components[da + db];
                for (ia, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (ib, &y) in b.iter().enumerate() {
                        if y != 0 {
                            let t = &mut target[ia * shift + ib];
                            *t = f.add(*t, f.mul(x, y));
                        }
                    }
                }
            }
        }
        out
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self, f: &Gf) -> Self {
        self.mul(other, f).sub(&other.mul(self, f), f)
    }

    /// `self * exp(s * x_l)` for a letter `l` and sign `s`; needs `c < p`.
    pub fn mul_exp_letter(&self, l: usize, negative: bool, f: &Gf) -> Self {
        let c = self.class();
        let mut out = self.clone();
        let mut inv_fact = 1u32;
        let mut word = 0usize; // index of l^k among words of length k
        for k in 1..=c {
            inv_fact = f.mul(inv_fact, f.inv(k as u32));
            let coef = if negative && k % 2 == 1 { f.neg(inv_fact) } else { inv_fact };
            word = word * self.r + l;
            let len_k = self.r.pow(k as u32);
            for d in 0..=c - k {
                for i in 0..self.components[d].len() {
                    let x = self.components[d][i];
                    if x != 0 {
                        let t = &mut out.components[d + k][i * len_k + word];
                        *t = f.add(*t, f.mul(x, coef));
                    }
                }
            }
        }
        out
    }

    /// `exp(self)` for an element without constant term; needs `c < p`.
    pub fn exp(&self, f: &Gf) -> Self {
        debug_assert_eq!(self.components[0][0], 0);
        let c = self.class();
        let mut out = Self::one(self.r, c);
        let mut term = Self::one(self.r, c);
        for k in 1..=c {
            term = term.mul(self, f).scale(f.inv(k as u32), f);
            out = out.add(&term, f);
        }
        out
    }

    /// `log(self)` for an element with constant term 1; needs `c < p`.
    pub fn log(&self, f: &Gf) -> Self {
        debug_assert_eq!(self.components[0][0], 1);
        let c = self.class();
        let mut y = self.clone();
        y.components[0][0] = 0;
        let mut out = Self::zero(self.r, c);
        let mut power = Self::one(self.r, c);
        for k in 1..=c {
            power = power.mul(&y, f);
            let mut coef = f.inv(k as u32);
            if k % 2 == 0 {
                coef = f.neg(coef);
            }
            out = out.add(&power.scale(coef, f), f);
        }
        out
    }

    /// Left-normed bracketing `u_1 ... u_d -> [..[u_1, u_2], ..., u_d]`
    /// applied word by word, divided by the degree: the identity on Lie
    /// elements. Needs `c < p`.
    pub fn dynkin_projection(&self, f: &Gf) -> Self {
        let c = self.class();
        let mut out = Self::zero(self.r, c);
        for d in 1..=c {
            let scale = f.inv(d as u32);
            for (idx, &x) in self.components[d].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let mut letters = vec![0; d];
                let mut n = idx;
                for slot in letters.iter_mut().rev() {
                    *slot = n % self.r;
                    n /= self.r;
                }
                let mut acc = Self::letter(self.r, c, letters[0]);
                for &l in &letters[1..] {
                    acc = acc.commutator(&Self::letter(self.r, c, l), f);
                }
                out = out.add(&acc.scale(f.mul(x, scale), f), f);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_round_trip() {
        let f = Gf::new(7).unwrap();
        let x = AssocElement::letter(2, 5, 0).add(&AssocElement::letter(2, 5, 1).scale(3, &f), &f);
        let e = x.exp(&f);
        assert_eq!(e.log(&f), x);
        let via_letters = AssocElement::one(2, 5).mul_exp_letter(1, true, &f);
        assert_eq!(via_letters, AssocElement::letter(2, 5, 1).scale(6, &f).exp(&f));
    }

    #[test]
    fn truncation_and_commutator() {
        let f = Gf::new(5).unwrap();
        let (a, b) = (AssocElement::letter(2, 2, 0), AssocElement::letter(2, 2, 1));
        let ab = a.commutator(&b, &f);
        assert_eq!(ab.component(2), &[0, 1, 4, 0]);
        assert!(ab.mul(&a, &f).is_zero());
    }

    #[test]
    fn dynkin_fixes_brackets() {
        let f = Gf::new(7).unwrap();
        let (a, b) = (AssocElement::letter(2, 4, 0), AssocElement::letter(2, 4, 1));
        let l = a.commutator(&b, &f).commutator(&b, &f).add(&a, &f);
        assert_eq!(l.dynkin_projection(&f), l);
    }
}
