use crate::error::{Error, Result};

/// The prime field GF(p) with an inverse table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf {
    p: u32,
    inv: Vec<u32>,
}

impl Gf {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=1 << 16).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Unsupported(format!("GF({p}): modulus must be a prime below 2^16")));
        }
        let mut inv = vec![0; p as usize];
        for a in 1..p {
            inv[a as usize] = pow_mod(a, p - 2, p);
        }
        Ok(Gf { p, inv })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.inv[(a % self.p) as usize]
    }

    /// Reduces a signed integer.
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 11, 101] {
            let f = Gf::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
        assert!(Gf::new(9).is_err());
        assert!(Gf::new(1).is_err());
        let f = Gf::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.neg(0), 0);
    }
}
