//! Rational tangles in Conway notation.
//!
//! `T(a_1, ..., a_n)` has slope `a_n + 1/(a_{n-1} + ... + 1/a_1)`. Slopes are
//! evaluated exactly over any integer type, with `1/0` read as infinity.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalTangleSpec {
    coeffs: Vec<i64>,
}

impl RationalTangleSpec {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("a rational tangle needs at least one coefficient".into()));
        }
        Ok(RationalTangleSpec { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Total number of crossings in the twist-row realization.
    pub fn crossing_count(&self) -> usize {
        self.coeffs.iter().map(|a| a.unsigned_abs() as usize).sum()
    }
}

impl fmt::Display for RationalTangleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        write!(f, "T({})", parts.join(","))
    }
}

/// A point of the extended rational line: reduced `num/den` with `den > 0`,
/// or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlopeOf<T> {
    Finite { num: T, den: T },
    Infinity,
}

impl<T: Integer + Signed + Clone> SlopeOf<T> {
    /// Normalizes `num/den`. Fails only for `0/0`.
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::ZeroSlope);
        }
        if den.is_zero() {
            return Ok(SlopeOf::Infinity);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g.clone(), den / g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Ok(SlopeOf::Finite { num: n, den: d })
    }

    pub fn integer(n: T) -> Self {
        SlopeOf::Finite { num: n, den: T::one() }
    }
}

impl<T: fmt::Display> fmt::Display for SlopeOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeOf::Finite { num, den } => write!(f, "{num}/{den}"),
            SlopeOf::Infinity => write!(f, "inf"),
        }
    }
}

/// Exact slope of `T(a_1, ..., a_n)`.
pub fn conway_slope<T: Integer + Signed + Clone + From<i64>>(t: &RationalTangleSpec) -> SlopeOf<T> {
    // projective pair (num, den); the map s -> a + 1/s acts as
    // (n, d) -> (a n + d, n), which is unimodular, so (n, d) never vanishes
    let mut num = T::from(t.coeffs[0]);
    let mut den = T::one();
    for &a in &t.coeffs[1..] {
        let next = T::from(a) * num.clone() + den;
        den = num;
        num = next;
    }
    SlopeOf::new(num, den).expect("unimodular pair is never 0/0")
}

pub fn tangles_equivalent(a: &RationalTangleSpec, b: &RationalTangleSpec) -> bool {
    conway_slope::<num_bigint::BigInt>(a) == conway_slope::<num_bigint::BigInt>(b)
}

/// Conway notation for the slope `p/q`, from the Euclidean algorithm with
/// floor quotients: `p/q = a_n + 1/(a_{n-1} + ...)` with `a_n = floor(p/q)`.
/// The slope `1/0` is written `T(0,0)`.
pub fn pq_tangle_from_slope(p: i64, q: i64) -> Result<RationalTangleSpec> {
    let slope = SlopeOf::new(p as i128, q as i128)?;
    let (mut n, mut d) = match slope {
        SlopeOf::Infinity => return RationalTangleSpec::new(vec![0, 0]),
        SlopeOf::Finite { num, den } => (num, den),
    };
    let mut rev = Vec::new();
    loop {
        let a = Integer::div_floor(&n, &d);
        rev.push(a as i64);
        let r = n - a * d;
        if r == 0 {
            break;
        }
        n = d;
        d = r;
    }
    rev.reverse();
    RationalTangleSpec::new(rev)
}

/// Endpoint slots of a 2-string tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    NW = 0,
    NE = 1,
    SW = 2,
    SE = 3,
}

/// A tangle diagram with local arc ids `1..=arc_count`.
///
/// Crossings list `(over, under, under)` with the under pair unordered;
/// `endpoints` gives the arc at NW, NE, SW, SE. The identity tangle `[0]`
/// joins NW to NE and SW to SE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleDiagram {
    pub arc_count: usize,
    pub crossings: Vec<(usize, usize, usize)>,
    pub endpoints: [usize; 4],
}

impl TangleDiagram {
    fn zero() -> Self {
        TangleDiagram { arc_count: 2, crossings: Vec::new(), endpoints: [1, 1, 2, 2] }
    }

    fn infinity() -> Self {
        TangleDiagram { arc_count: 2, crossings: Vec::new(), endpoints: [1, 2, 1, 2] }
    }

    /// One crossing between the strands at slots `x` and `y`, the strand at
    /// `over_slot` passing over; the strands trade slots.
    fn twist(&mut self, x: Corner, y: Corner, over_slot: Corner) {
        let under_slot = if over_slot == x { y } else { x };
        let over = self.endpoints[over_slot as usize];
        let under = self.endpoints[under_slot as usize];
        self.arc_count += 1;
        let new = self.arc_count;
        self.crossings.push((over, under, new));
        self.endpoints[under_slot as usize] = over;
        self.endpoints[over_slot as usize] = new;
    }

    /// Twist of the right endpoints: adds `+-1` to the slope.
    fn horizontal(&mut self, sign: i64) {
        let over = if sign > 0 { Corner::NE } else { Corner::SE };
        self.twist(Corner::NE, Corner::SE, over);
    }

    /// Twist of the bottom endpoints: adds `+-1` to the inverse slope.
    fn vertical(&mut self, sign: i64) {
        let over = if sign > 0 { Corner::SW } else { Corner::SE };
        self.twist(Corner::SW, Corner::SE, over);
    }

    /// Realizes `T(a_1, ..., a_n)` by alternating twist rows, the last row
    /// horizontal. Slopes follow the Fox-coloring convention
    /// `(c_NE - c_NW) / (c_NE - c_SE)`.
    pub fn rational(t: &RationalTangleSpec) -> Self {
        let n = t.coeffs().len();
        let mut d = if n % 2 == 1 { Self::zero() } else { Self::infinity() };
        for (k, &a) in t.coeffs().iter().enumerate() {
            let horizontal = (n - 1 - k).is_multiple_of(2);
            for _ in 0..a.unsigned_abs() {
                if horizontal {
                    d.horizontal(a.signum());
                } else {
                    d.vertical(a.signum());
                }
            }
        }
        d
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Slope = SlopeOf<BigInt>;

    fn q(n: i64, d: i64) -> Slope {
        Slope::new(n.into(), d.into()).unwrap()
    }

    fn spec(c: &[i64]) -> RationalTangleSpec {
        RationalTangleSpec::new(c.to_vec()).unwrap()
    }

    /// Independent rational oracle: evaluates the continued fraction from
    /// the innermost coefficient with `BigRational`, tracking infinity.
    fn fraction_oracle(c: &[i64]) -> Slope {
        let mut s: Option<BigRational> = Some(BigRational::from_integer(c[0].into()));
        for &a in &c[1..] {
            let inv = match s {
                None => BigRational::zero(),
                Some(x) if x.is_zero() => {
                    s = None;
                    continue;
                }
                Some(x) => x.recip(),
            };
            s = Some(BigRational::from_integer(a.into()) + inv);
        }
        match s {
            None => Slope::Infinity,
            Some(x) => Slope::new(x.numer().clone(), x.denom().clone()).unwrap(),
        }
    }

    /// Fox-coloring fraction of a tangle diagram: solves the homogeneous
    /// coloring equations `2 c_over = c_u1 + c_u2` over Q and reads
    /// `(c_NE - c_NW) / (c_NE - c_SE)` off a non-constant solution.
    pub(crate) fn coloring_fraction(t: &TangleDiagram) -> Slope {
        let n = t.arc_count;
        let mut rows: Vec<Vec<BigRational>> = t
            .crossings
            .iter()
            .map(|&(o, a, b)| {
                let mut r = vec![BigRational::zero(); n];
                r[o - 1] += BigRational::from_integer(2.into());
                r[a - 1] -= BigRational::one();
                r[b - 1] -= BigRational::one();
                r
            })
            .collect();
        // reduced row echelon form
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(row, pr);
            let inv = rows[row][col].recip();
            for v in rows[row].iter_mut() {
                *v *= inv.clone();
            }
            for r in 0..rows.len() {
                if r != row && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in 0..n {
                        let sub = f.clone() * rows[row][c].clone();
                        rows[r][c] -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        assert_eq!(free.len(), 2, "rational tangles have a 2-dimensional coloring space");
        let sol = |fc: usize| -> Vec<BigRational> {
            let mut x = vec![BigRational::zero(); n];
            x[fc] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -rows[i][fc].clone();
            }
            x
        };
        let [nw, ne, _sw, se] = t.endpoints.map(|a| a - 1);
        for fc in free {
            let x = sol(fc);
            let num = x[ne].clone() - x[nw].clone();
            let den = x[ne].clone() - x[se].clone();
            if num.is_zero() && den.is_zero() {
                continue;
            }
            if den.is_zero() {
                return Slope::Infinity;
            }
            let f = num / den;
            return Slope::new(f.numer().clone(), f.denom().clone()).unwrap();
        }
        panic!("no non-constant coloring");
    }

    #[test]
    fn slope_examples() {
        assert_eq!(conway_slope::<BigInt>(&spec(&[2, 1, 1])), q(5, 3));
        assert_eq!(conway_slope::<BigInt>(&spec(&[7])), q(7, 1));
        assert_eq!(conway_slope::<BigInt>(&spec(&[2, 3, 2])), q(16, 7));
        assert_eq!(conway_slope::<i64>(&spec(&[0, 0])), SlopeOf::Infinity);
        assert_eq!(fraction_oracle(&[2, 1, 1]), q(5, 3));
        assert_eq!(fraction_oracle(&[2, 3, 2]), q(16, 7));
    }

    #[test]
    fn equivalence_examples() {
        assert!(!tangles_equivalent(&spec(&[2, 1, 1]), &spec(&[5, 3])));
        assert_eq!(conway_slope::<BigInt>(&spec(&[5, 3])), q(16, 5));
        assert!(tangles_equivalent(&spec(&[3]), &spec(&[3])));
        assert!(tangles_equivalent(&spec(&[1, 1]), &spec(&[2])));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(pq_tangle_from_slope(4, 1).unwrap().coeffs(), &[4]);
        assert_eq!(pq_tangle_from_slope(5, 3).unwrap().coeffs(), &[2, 1, 1]);
        assert_eq!(pq_tangle_from_slope(-3, 2).unwrap().coeffs(), &[2, -2]);
        assert_eq!(pq_tangle_from_slope(0, 5).unwrap().coeffs(), &[0]);
        let inf = pq_tangle_from_slope(1, 0).unwrap();
        assert_eq!(conway_slope::<BigInt>(&inf), SlopeOf::Infinity);
        assert_eq!(pq_tangle_from_slope(0, 0), Err(Error::ZeroSlope));
        assert!(RationalTangleSpec::new(vec![]).is_err());
    }

    #[test]
    fn exhaustive_round_trip_to_fifty() {
        for p in -50i64..=50 {
            for qq in -50i64..=50 {
                if p.gcd(&qq) != 1 {
                    continue;
                }
                let t = pq_tangle_from_slope(p, qq).unwrap();
                assert_eq!(conway_slope::<BigInt>(&t), q(p, qq), "{p}/{qq}");
                assert_eq!(fraction_oracle(t.coeffs()), q(p, qq));
            }
        }
    }

    #[test]
    fn twist_realization_has_the_right_coloring_fraction() {
        for c in [
            vec![0],
            vec![1],
            vec![-1],
            vec![3],
            vec![0, 0],
            vec![2, 1],
            vec![2, 1, 1],
            vec![2, -2],
            vec![2, 3, 2],
            vec![-1, 2, -3],
        ] {
            let t = spec(&c);
            let d = TangleDiagram::rational(&t);
            assert_eq!(d.crossings.len(), t.crossing_count());
            assert_eq!(coloring_fraction(&d), conway_slope::<BigInt>(&t), "{t}");
        }
        for p in -9i64..=9 {
            for qq in 1i64..=9 {
                if p.gcd(&qq) != 1 {
                    continue;
                }
                let d = TangleDiagram::rational(&pq_tangle_from_slope(p, qq).unwrap());
                assert_eq!(coloring_fraction(&d), q(p, qq));
            }
        }
    }
}
