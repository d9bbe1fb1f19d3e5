use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::subgroup::SubgroupEnum;
use super::{parse_pcp, PcElement, PcPresentation};
use crate::abelian::{smith_normal_form, AbelianTypeOf, IntMatrixOf};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

/// Names of the vendored presentations.
pub const PCP_NAMES: [&str; 4] = ["B23", "B33", "B43", "B24"];

/// Environment variable naming a directory that overrides the bundled
/// `.pcp` files.
pub const DATA_DIR_ENV: &str = "BURNSIDE_DATA_DIR";

const EXHAUSTIVE_LIMIT: u128 = 1 << 16;
const SAMPLED_EXPONENT_CHECKS: usize = 4096;

fn bundled(name: &str) -> Option<(&'static str, &'static str, u64, usize)> {
    // (file, text, exponent, rank)
    match name {
        "B23" => Some(("b23.pcp", include_str!("../../data/b23.pcp"), 3, 2)),
        "B33" => Some(("b33.pcp", include_str!("../../data/b33.pcp"), 3, 3)),
        "B43" => Some(("b43.pcp", include_str!("../../data/b43.pcp"), 3, 4)),
        "B24" => Some(("b24.pcp", include_str!("../../data/b24.pcp"), 4, 2)),
        _ => None,
    }
}

type Cache = Mutex<HashMap<(String, Option<PathBuf>), Arc<PcPresentation>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Loads a vendored presentation by name, checking consistency, that the
/// first `rank` pc generators generate the group, and the exponent law
/// (exhaustively for small groups, on seeded samples otherwise). If
/// `BURNSIDE_DATA_DIR` is set, the file is read from that directory.
pub fn load_pcp(name: &str) -> Result<Arc<PcPresentation>> {
    let (file, text, exponent, rank) = bundled(name).ok_or_else(|| Error::UnknownPcp(name.to_string()))?;
    let dir = std::env::var_os(DATA_DIR_ENV).map(PathBuf::from);
    let key = (name.to_string(), dir.clone());
    if let Some(pc) = cache().lock().unwrap().get(&key) {
        return Ok(pc.clone());
    }
    let owned;
    let text = match &dir {
        Some(d) => {
            owned = std::fs::read_to_string(d.join(file))?;
            owned.as_str()
        }
        None => text,
    };
    let pc = parse_pcp(text)?;
    validate_burnside(&pc, rank, exponent)?;
    let pc = Arc::new(pc);
    cache().lock().unwrap().insert(key, pc.clone());
    Ok(pc)
}

fn validate_burnside(pc: &PcPresentation, rank: usize, exponent: u64) -> Result<()> {
    pc.check_consistency()?;
    let gens: Vec<PcElement> = (0..rank.min(pc.len())).map(|i| pc.generator(i)).collect();
    if SubgroupEnum::generated_by(pc, &gens).log_order() != pc.len() {
        return Err(Error::Inconsistent(format!("the first {rank} pc generators do not generate")));
    }
    let bad = |e: PcElement| Error::Inconsistent(format!("element {:?} violates exponent {exponent}", pc.digits(e)));
    if pc.order() <= EXHAUSTIVE_LIMIT {
        if let Some(e) = pc.elements().find(|&e| !pc.power(e, exponent as i64).is_identity()) {
            return Err(bad(e));
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SAMPLED_EXPONENT_CHECKS {
            let e = random_element(pc, &mut rng);
            if !pc.power(e, exponent as i64).is_identity() {
                return Err(bad(e));
            }
        }
    }
    Ok(())
}

/// Uniformly random element.
pub fn random_element<R: Rng>(pc: &PcPresentation, rng: &mut R) -> PcElement {
    let v: Vec<u8> = (0..pc.len()).map(|_| rng.gen_range(0..pc.prime()) as u8).collect();
    pc.from_digits(&v)
}

/// A finite model of the free Burnside group `B(rank, exponent)`, or of a
/// quotient of it that is exact for the purposes of this crate (see
/// `burnside_engine`), with the free generators `x_i` sent to `generators`.
#[derive(Debug, Clone)]
pub struct BurnsideEngine {
    pub rank: usize,
    pub exponent: u64,
    pub name: String,
    pc: Arc<PcPresentation>,
    generators: Vec<PcElement>,
}

/// Order of the free Burnside group, when an engine for it exists.
pub fn burnside_order(rank: usize, exponent: u64) -> Result<u128> {
    Ok(burnside_engine(rank, exponent)?.order())
}

/// Engine for `B(rank, exponent)`. Available: rank 0; exponent 2 (any rank
/// up to 64); exponent 3 up to rank 4; exponent 4 up to rank 2.
pub fn burnside_engine(rank: usize, exponent: u64) -> Result<BurnsideEngine> {
    let too_small = || Error::EngineTooSmall(format!("no engine for B({rank},{exponent})"));
    let (name, pc) = match (rank, exponent) {
        (_, n) if n < 2 => return Err(Error::ExponentTooSmall(n)),
        (0, n) => {
            let (p, _) = crate::abelian::prime_power(n).ok_or(Error::NotPrimePower(n))?;
            ("trivial".to_string(), Arc::new(PcPresentation::elementary_abelian(p as u32, 0)?))
        }
        (r, 2) => (format!("elementary abelian 2^{r}"), Arc::new(PcPresentation::elementary_abelian(2, r)?)),
        (1, 3) => ("Z3".to_string(), Arc::new(PcPresentation::cyclic(3, 1)?)),
        (2, 3) => ("B23".to_string(), load_pcp("B23")?),
        (3, 3) => ("B33".to_string(), load_pcp("B33")?),
        (4, 3) => ("B43".to_string(), load_pcp("B43")?),
        (1, 4) => ("Z4".to_string(), Arc::new(PcPresentation::cyclic(2, 2)?)),
        (2, 4) => ("B24".to_string(), load_pcp("B24")?),
        _ => return Err(too_small()),
    };
    let generators = (0..rank).map(|i| pc.generator(i)).collect();
    Ok(BurnsideEngine { rank, exponent, name, pc, generators })
}

impl BurnsideEngine {
    pub fn pc(&self) -> &PcPresentation {
        &self.pc
    }

    /// Images of the free generators.
    pub fn generators(&self) -> &[PcElement] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.pc.order()
    }

    pub fn eval_word(&self, w: &Word) -> Result<PcElement> {
        eval_word(&self.pc, &self.generators, w)
    }

    /// Normal closure of the relator images.
    pub fn relator_closure(&self, relators: &[Word]) -> Result<SubgroupEnum> {
        let images = relators.iter().map(|r| self.eval_word(r)).collect::<Result<Vec<_>>>()?;
        Ok(SubgroupEnum::normal_closure(&self.pc, &images))
    }

    /// `|B(rank, n) / <<relators>>|`.
    pub fn quotient_order(&self, relators: &[Word]) -> Result<u128> {
        let n = self.relator_closure(relators)?;
        Ok((self.pc.prime() as u128).pow((self.pc.len() - n.log_order()) as u32))
    }

    /// Order of the quotient by a presentation's relators; the presentation
    /// must have exactly `rank` generators.
    pub fn presentation_quotient_order(&self, p: &Presentation) -> Result<u128> {
        self.check_rank(p)?;
        self.quotient_order(p.relators())
    }

    fn check_rank(&self, p: &Presentation) -> Result<()> {
        if p.generator_count() != self.rank {
            return Err(Error::Unsupported(format!(
                "presentation has {} generators but the engine has rank {}",
                p.generator_count(),
                self.rank
            )));
        }
        Ok(())
    }

    /// Abelianization of `B(rank, n) / <<relators>>`: the kernel of
    /// `(Z_n)^rank -> quotient^ab` is read off by testing each exponent
    /// vector against the closure of the relators and all commutators.
    pub fn quotient_abelianization(&self, relators: &[Word]) -> Result<AbelianTypeOf<BigInt>> {
        let pc = &*self.pc;
        let mut gens = relators.iter().map(|r| self.eval_word(r)).collect::<Result<Vec<_>>>()?;
        for a in 0..self.rank {
            for b in 0..a {
                gens.push(pc.commutator(self.generators[a], self.generators[b]));
            }
        }
        let m = SubgroupEnum::normal_closure(pc, &gens);
        let n = self.exponent;
        let total = n
            .checked_pow(self.rank as u32)
            .filter(|&t| t <= 1 << 20)
            .ok_or_else(|| Error::EngineTooSmall(format!("abelianization over {}^{} vectors", n, self.rank)))?;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for code in 0..total {
            let mut e = vec![0u64; self.rank];
            let mut c = code;
            for d in e.iter_mut() {
                *d = c % n;
                c /= n;
            }
            let x = e
                .iter()
                .zip(&self.generators)
                .fold(PcElement::IDENTITY, |acc, (&k, &g)| pc.multiply(acc, pc.power(g, k as i64)));
            if m.contains(pc, x) {
                rows.push(e.iter().map(|&k| BigInt::from(k)).collect());
            }
        }
        for i in 0..self.rank {
            let mut row = vec![BigInt::from(0); self.rank];
            row[i] = BigInt::from(n);
            rows.push(row);
        }
        Ok(smith_normal_form(&IntMatrixOf::from_rows(rows, self.rank)?))
    }
}

/// Left-to-right product of the images of the letters of `w`.
pub fn eval_word(pc: &PcPresentation, assignment: &[PcElement], w: &Word) -> Result<PcElement> {
    let mut acc = PcElement::IDENTITY;
    let mut inverses: HashMap<usize, PcElement> = HashMap::new();
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize;
        let img = *assignment.get(g - 1).ok_or(Error::Unassigned(g))?;
        let f = if l > 0 { img } else { *inverses.entry(g).or_insert_with(|| pc.inverse(img)) };
        acc = pc.multiply(acc, f);
    }
    Ok(acc)
}

impl PcPresentation {
    /// Dimensions of the lower central factors `gamma_i / gamma_(i+1)`
    /// (over GF(p), as `log_p` of their orders), computed from the group
    /// itself and checked against the generator weights.
    pub fn lower_central_layers(&self) -> Result<Vec<usize>> {
        let mut layers = Vec::new();
        let mut current = SubgroupEnum::full(self);
        while current.log_order() > 0 {
            let mut gens = Vec::new();
            for x in current.pcgs() {
                for k in 0..self.len() {
                    gens.push(self.commutator(x, self.generator(k)));
                }
            }
            let next = SubgroupEnum::normal_closure(self, &gens);
            if next.log_order() == current.log_order() {
                return Err(Error::Inconsistent("lower central series does not terminate".into()));
            }
            layers.push(current.log_order() - next.log_order());
            current = next;
        }
        let max_w = self.weights().last().copied().unwrap_or(0);
        let from_weights: Vec<usize> =
            (1..=max_w).map(|w| self.weights().iter().filter(|&&x| x == w).count()).collect();
        if from_weights != layers {
            return Err(Error::Inconsistent(format!(
                "weights give layers {from_weights:?} but the group has {layers:?}"
            )));
        }
        Ok(layers)
    }
}
