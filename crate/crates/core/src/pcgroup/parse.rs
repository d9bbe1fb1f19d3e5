//! Text format for pc presentations.
//!
//! ```text
//! # comment
//! prime 3
//! ngens 3
//! weights 1,1,2
//! p 1 = 0,0,0
//! c 2 1 = 0,0,1
//! ```
//!
//! Indices are 1-based; `c i j` (with `i > j`) gives `[g_i, g_j]`. Missing
//! relations are trivial.

use super::PcPresentation;
use crate::error::{Error, Result};

fn parse_vector(s: &str, m: usize) -> Result<Vec<u8>> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad digit `{t}`"))))
        .collect::<Result<Vec<u8>>>()?;
    if v.len() != m {
        return Err(Error::Parse(format!("vector `{s}` has {} entries, expected {m}", v.len())));
    }
    Ok(v)
}

fn parse_index(s: &str, m: usize) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(i) if (1..=m).contains(&i) => Ok(i - 1),
        _ => Err(Error::Parse(format!("bad generator index `{s}`"))),
    }
}

pub fn parse_pcp(text: &str) -> Result<PcPresentation> {
    let mut prime: Option<u32> = None;
    let mut weights: Option<Vec<usize>> = None;
    let mut m: Option<usize> = None;
    let mut power: Vec<Vec<u8>> = Vec::new();
    let mut comm: Vec<Vec<Vec<u8>>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", ln + 1));
        let (head, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("missing value"))?;
        let rest = rest.trim();
        match head {
            "prime" => prime = Some(rest.parse().map_err(|_| err("bad prime"))?),
            "ngens" => {
                let n: usize = rest.parse().map_err(|_| err("bad generator count"))?;
                m = Some(n);
                power = vec![vec![0; n]; n];
                comm = (0..n).map(|i| vec![vec![0; n]; i]).collect();
            }
            "weights" => {
                let w = if rest.is_empty() {
                    Vec::new()
                } else {
                    rest.split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| err("bad weight")))
                        .collect::<Result<Vec<_>>>()?
                };
                weights = Some(w);
            }
            "p" | "c" => {
                let n = m.ok_or_else(|| err("relation before `ngens`"))?;
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("missing `=`"))?;
                let idx: Vec<&str> = lhs.split_whitespace().collect();
                let v = parse_vector(rhs.trim(), n)?;
                if head == "p" {
                    let [i] = idx[..] else { return Err(err("power relation needs one index")) };
                    power[parse_index(i, n)?] = v;
                } else {
                    let [i, j] = idx[..] else { return Err(err("commutator relation needs two indices")) };
                    let (i, j) = (parse_index(i, n)?, parse_index(j, n)?);
                    if j >= i {
                        return Err(err("commutator relation needs i > j"));
                    }
                    comm[i][j] = v;
                }
            }
            _ => return Err(err(&format!("unknown keyword `{head}`"))),
        }
    }
    let prime = prime.ok_or_else(|| Error::Parse("missing `prime`".into()))?;
    let m = m.ok_or_else(|| Error::Parse("missing `ngens`".into()))?;
    let weights = weights.ok_or_else(|| Error::Parse("missing `weights`".into()))?;
    if weights.len() != m {
        return Err(Error::Parse(format!("{} weights for {m} generators", weights.len())));
    }
    PcPresentation::new(prime, weights, power, comm)
}

pub fn to_pcp_string(pc: &PcPresentation) -> String {
    let join = |v: &[u8]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
    let mut out = format!("prime {}\nngens {}\nweights {}\n", pc.prime(), pc.len(), {
        pc.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
    });
    for i in 0..pc.len() {
        out += &format!("p {} = {}\n", i + 1, join(pc.power_rhs(i)));
    }
    for i in 0..pc.len() {
        for j in 0..i {
            out += &format!("c {} {} = {}\n", i + 1, j + 1, join(pc.comm_rhs(i, j)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_defaults() {
        let pc = parse_pcp("prime 3\nngens 3\nweights 1,1,2\nc 2 1 = 0,0,1\n").unwrap();
        assert_eq!(pc.comm_rhs(1, 0), &[0, 0, 1]);
        assert_eq!(pc.power_rhs(0), &[0, 0, 0]);
        assert_eq!(parse_pcp(&to_pcp_string(&pc)).unwrap(), pc);
    }

    #[test]
    fn errors() {
        assert!(parse_pcp("ngens 1\nweights 1\n").is_err());
        assert!(parse_pcp("prime 2\nngens 2\nweights 1\n").is_err());
        assert!(parse_pcp("prime 2\nngens 2\nweights 1,1\nc 1 2 = 0,0\n").is_err());
        assert!(parse_pcp("prime 2\nngens 2\nweights 1,1\np 3 = 0,0\n").is_err());
        assert!(parse_pcp("prime 2\nngens 2\nweights 1,1\np 1 = 0,0,0\n").is_err());
        assert!(parse_pcp("prime 2\nngens 2\nweights 1,1\nq 1 = 0,0\n").is_err());
    }
}
