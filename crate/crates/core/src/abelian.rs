//! Abelianization through Smith normal form, H1 with Z_n coefficients and
//! the cyclic screen.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrixOf<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Integer + Signed + Clone> IntMatrixOf<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrixOf { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Parse(format!("row of length {} in a {cols}-column matrix", row.len())));
            }
            entries.extend(row);
        }
        Ok(IntMatrixOf { rows: r, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Appends the rows of `other`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        IntMatrixOf { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= f * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, f: &T) {
        for c in 0..self.cols {
            let v = self.get(dst, c).clone() - f.clone() * self.get(src, c).clone();
            self.set(dst, c, v);
        }
    }

    /// col[dst] -= f * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, f: &T) {
        for r in 0..self.rows {
            let v = self.get(r, dst).clone() - f.clone() * self.get(r, src).clone();
            self.set(r, dst, v);
        }
    }
}

/// Finitely generated abelian group `Z_{d1} + ... + Z_{dk} + Z^free_rank`
/// with `d1 | d2 | ... | dk` and every `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianTypeOf<T> {
    pub invariant_factors: Vec<T>,
    pub free_rank: usize,
}

impl<T: Integer + Signed + Clone> AbelianTypeOf<T> {
    pub fn trivial() -> Self {
        AbelianTypeOf { invariant_factors: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        AbelianTypeOf { invariant_factors: Vec::new(), free_rank: rank }
    }

    /// Canonical form of a direct sum of cyclic groups of the given orders
    /// (0 meaning infinite cyclic). Orders of absolute value 1 are dropped.
    pub fn from_cyclic_orders(orders: &[T]) -> Self {
        let mut free_rank = 0;
        let mut finite: Vec<T> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        // Repeatedly replace (a, b) by (gcd, lcm) until a divisibility chain.
        for i in 0..finite.len() {
            for j in i + 1..finite.len() {
                let g = finite[i].gcd(&finite[j]);
                let l = finite[i].lcm(&finite[j]);
                finite[i] = g;
                finite[j] = l;
            }
        }
        finite.retain(|d| !d.is_one());
        AbelianTypeOf { invariant_factors: finite, free_rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Trivial or cyclic.
    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() + self.free_rank <= 1
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Order, or `None` if infinite.
    pub fn order(&self) -> Option<T> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(T::one(), |acc, d| acc * d.clone()))
    }

    /// `self ⊗ Z_n`.
    pub fn tensor_mod(&self, n: &T) -> Self {
        let mut orders: Vec<T> = self.invariant_factors.iter().map(|d| d.gcd(n)).collect();
        orders.extend(std::iter::repeat_n(n.clone(), self.free_rank));
        Self::from_cyclic_orders(&orders)
    }
}

impl<T: fmt::Display> fmt::Display for AbelianTypeOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Exponent-sum matrix: entry `(r, g)` is the exponent sum of generator `g`
/// in relator `r`.
pub fn relation_matrix<T: Integer + Signed + Clone + From<i64>>(p: &Presentation) -> IntMatrixOf<T> {
    let g = p.generator_count();
    let mut m = IntMatrixOf::zeros(p.relators().len(), g);
    for (r, w) in p.relators().iter().enumerate() {
        for c in 0..g {
            m.set(r, c, T::from(w.exponent_sum(c + 1)));
        }
    }
    m
}

/// Cokernel `Z^cols / rowspace(m)` in canonical form.
///
/// Pivots on an entry of least absolute value, clears its row and column
/// by division with remainder, and repeats until the matrix is diagonal.
pub fn smith_normal_form<T: Integer + Signed + Clone>(m: &IntMatrixOf<T>) -> AbelianTypeOf<T> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut diag: Vec<T> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // least nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c);
                if !v.is_zero() && best.is_none_or(|(br, bc)| v.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap_rows(t, br);
        a.swap_cols(t, bc);
        let mut clean = true;
        for r in t + 1..rows {
            if !a.get(r, t).is_zero() {
                let q = a.get(r, t).div_floor(a.get(t, t));
                a.sub_row(r, t, &q);
                clean &= a.get(r, t).is_zero();
            }
        }
        for c in t + 1..cols {
            if !a.get(t, c).is_zero() {
                let q = a.get(t, c).div_floor(a.get(t, t));
                a.sub_col(c, t, &q);
                clean &= a.get(t, c).is_zero();
            }
        }
        if clean {
            diag.push(a.get(t, t).abs());
            t += 1;
        }
    }
    let zero_cols = cols - diag.len();
    let mut orders = diag;
    orders.extend(std::iter::repeat_n(T::zero(), zero_cols));
    AbelianTypeOf::from_cyclic_orders(&orders)
}

/// Integral abelianization of a presentation.
pub fn abelianization<T: Integer + Signed + Clone + From<i64>>(p: &Presentation) -> AbelianTypeOf<T> {
    smith_normal_form(&relation_matrix::<T>(p))
}

/// `H1 ⊗ Z_n` for a reduced presentation of the double branched cover.
pub fn h1_mod_n<T: Integer + Signed + Clone + From<i64>>(p: &Presentation, n: u64) -> Result<AbelianTypeOf<T>> {
    if n < 2 {
        return Err(Error::ExponentTooSmall(n));
    }
    let n = T::from(i64::try_from(n).map_err(|_| Error::Unsupported(format!("exponent {n}")))?);
    Ok(abelianization::<T>(p).tensor_mod(&n))
}

/// `p^k` decomposition of a prime power, if `n` is one.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Whether `H1 ⊗ Z_n` is trivial or cyclic; if so, the Burnside group of
/// exponent `n` cannot tell the link from a knot-like reducible target.
pub fn cyclic_screen(p: &Presentation, n: u64) -> Result<bool> {
    if prime_power(n).is_none() {
        return Err(Error::NotPrimePower(n));
    }
    Ok(h1_mod_n::<num_bigint::BigInt>(p, n)?.is_cyclic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, Word};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> IntMatrixOf<i64> {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrixOf::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols).unwrap()
    }

    fn ab(f: &[i64], free: usize) -> AbelianTypeOf<i64> {
        AbelianTypeOf { invariant_factors: f.to_vec(), free_rank: free }
    }

    /// Cokernel order via the determinant of a square nonsingular matrix:
    /// computed by fraction-free elimination, independent of the SNF code.
    fn det_oracle(m: &IntMatrixOf<i64>) -> i64 {
        let n = m.rows();
        let mut a: Vec<Vec<i128>> = (0..n).map(|r| m.row(r).iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(s) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 2]])), ab(&[2, 2], 0));
        assert_eq!(smith_normal_form(&IntMatrixOf::<i64>::identity(3)), ab(&[], 0));
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])), ab(&[6], 0));
        assert_eq!(smith_normal_form(&mat(&[&[4, 6]])), ab(&[2], 1));
        assert_eq!(smith_normal_form(&IntMatrixOf::<i64>::zeros(0, 2)), ab(&[], 2));
        assert_eq!(smith_normal_form(&mat(&[&[3]])), ab(&[3], 0));
    }

    #[test]
    fn relation_matrix_of_bundled_relator() {
        let p = parse_presentation(r#"{"generators": ["x", "y"], "relators": ["x y^-2 x^2 y^-2 x^3 y^-2 x^2 y^-2"]}"#)
            .unwrap();
        let m = relation_matrix::<i64>(&p);
        assert_eq!(m.row(0), &[8, -8]);
        let empty = Presentation::with_numbered_generators("a", 3, vec![]).unwrap();
        let m = relation_matrix::<i64>(&empty);
        assert_eq!((m.rows(), m.cols()), (0, 3));
    }

    #[test]
    fn mod_n_examples() {
        let unknot = Presentation::new(vec![], vec![]).unwrap();
        assert!(h1_mod_n::<i64>(&unknot, 4).unwrap().is_trivial());
        let free2 = Presentation::with_numbered_generators("a", 2, vec![]).unwrap();
        assert_eq!(h1_mod_n::<i64>(&free2, 3).unwrap(), ab(&[3, 3], 0));
        let z2 = Presentation::with_numbered_generators("a", 1, vec![Word(vec![1, 1])]).unwrap();
        assert!(cyclic_screen(&z2, 2).unwrap());
        assert_eq!(h1_mod_n::<i64>(&z2, 3).unwrap(), ab(&[], 0));
        assert!(h1_mod_n::<i64>(&z2, 1).is_err());
        assert_eq!(cyclic_screen(&z2, 6), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ab(&[4, 4], 0).to_string(), "Z4+Z4");
        assert_eq!(ab(&[], 1).to_string(), "Z");
        assert_eq!(ab(&[], 0).to_string(), "trivial");
        assert_eq!(ab(&[2], 2).to_string(), "Z2+Z+Z");
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(3), Some((3, 1)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(97), Some((97, 1)));
    }

    #[test]
    fn bigint_entries_do_not_overflow() {
        let big = BigInt::from(1u64 << 62);
        let m = IntMatrixOf::from_rows(
            vec![vec![big.clone() * 4, big.clone() * 6], vec![big.clone() * 6, big.clone() * 4]],
            2,
        )
        .unwrap();
        let t = smith_normal_form(&m);
        assert_eq!(t.invariant_factors.len(), 2);
        assert_eq!(t.invariant_factors[0], big.clone() * 2);
        assert_eq!(t.order().unwrap(), big.clone() * big * 20);
    }

    fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMatrixOf<i64> {
        let mut u = IntMatrixOf::<i64>::identity(n);
        if n < 2 {
            return u;
        }
        for _ in 0..6 {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            if a == b {
                b = (a + 1) % n;
            }
            let f = rng.gen_range(-2..=2);
            u.sub_row(a, b, &f);
            if rng.gen_bool(0.3) {
                u.swap_rows(a, b);
            }
        }
        u
    }

    proptest! {
        #[test]
        fn invariants_under_unimodular_perturbation(
            entries in proptest::collection::vec(-6i64..=6, 9),
            seed in any::<u64>(),
        ) {
            let m = IntMatrixOf::from_rows(entries.chunks(3).map(|c| c.to_vec()).collect(), 3).unwrap();
            let base = smith_normal_form(&m);
            for w in base.invariant_factors.windows(2) {
                prop_assert!(w[1] % w[0] == 0);
            }
            prop_assert!(base.invariant_factors.iter().all(|&d| d >= 2));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random_unimodular(3, &mut rng);
            let v = random_unimodular(3, &mut rng);
            prop_assert_eq!(smith_normal_form(&u.multiply(&m).multiply(&v)), base.clone());
            let det = det_oracle(&m);
            if det != 0 {
                prop_assert_eq!(base.order(), Some(det.abs()));
            } else {
                prop_assert!(base.free_rank > 0);
            }
        }
    }
}
