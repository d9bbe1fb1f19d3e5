//! Reducibility obstructions: compare the Burnside quotient of a link with
//! those of trivial links, and report the evidence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{h1_mod_n, prime_power};
use crate::diagram::{apply_pq_move, LinkDiagram};
use crate::error::{Error, Result};
use crate::liering::{LieAlgebra, DEFAULT_CLASS};
use crate::pcgroup::burnside_engine;
use crate::pcgroup::coset::{burnside_quotient_order, DEFAULT_COSET_LIMIT};
use crate::presentation::{core_presentation, tietze_simplify, wada_reduce, Presentation};
use crate::AbelianType;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// What a link is given as.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkInput {
    Diagram(LinkDiagram),
    /// A presentation of the fundamental group of the double branched cover.
    Reduced(Presentation),
}

/// Presentation of the fundamental group of the double branched cover of a
/// diagram: the core presentation is simplified, one generator is killed,
/// and the result simplified again. Every choice of killed generator is
/// tried and the smallest result kept (fewest generators, then fewest
/// letters, then lowest index).
pub fn cover_presentation(d: &LinkDiagram) -> Result<Presentation> {
    let simplified = tietze_simplify(&core_presentation(d));
    if simplified.generator_count() == 0 {
        return Ok(simplified);
    }
    let mut best: Option<(usize, usize, Presentation)> = None;
    for kill in 1..=simplified.generator_count() {
        let p = tietze_simplify(&wada_reduce(&simplified, kill)?);
        let len: usize = p.relators().iter().map(|r| r.len()).sum();
        if best.as_ref().is_none_or(|(g, l, _)| (p.generator_count(), len) < (*g, *l)) {
            best = Some((p.generator_count(), len, p));
        }
    }
    Ok(best.unwrap().2)
}

impl LinkInput {
    pub fn cover_presentation(&self) -> Result<Presentation> {
        match self {
            LinkInput::Diagram(d) => cover_presentation(d),
            LinkInput::Reduced(p) => Ok(p.clone()),
        }
    }
}

/// Order of a finite p-group, `prime^log`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOrder {
    pub value: u64,
    pub prime: u32,
    pub log: u32,
}

impl GroupOrder {
    /// Panics if `value` exceeds 64 bits; every vendored group is smaller.
    pub fn new(prime: u32, value: u128) -> Self {
        let value = u64::try_from(value).expect("group order fits in 64 bits");
        let mut log = 0;
        let mut v = value;
        while v > 1 && v % prime as u64 == 0 {
            v /= prime as u64;
            log += 1;
        }
        debug_assert_eq!(v, 1, "{value} is not a power of {prime}");
        GroupOrder { value, prime, log }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.log)
    }
}

/// What a trivial link with `components` components gives at exponent `n`:
/// the free Burnside group of rank `components - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialLinkProfile {
    pub components: usize,
    pub exponent: u64,
    pub rank: usize,
    pub expected_order: Option<GroupOrder>,
    pub expected_abelianization: String,
}

impl TrivialLinkProfile {
    pub fn new(components: usize, n: u64) -> Result<Self> {
        if components == 0 {
            return Err(Error::InvalidDiagram("a link has at least one component".into()));
        }
        let rank = components - 1;
        let expected_order = burnside_engine(rank, n).ok().map(|e| GroupOrder::new(e.pc().prime(), e.order()));
        Ok(TrivialLinkProfile {
            components,
            exponent: n,
            rank,
            expected_order,
            expected_abelianization: free_abelianization(rank, n).to_string(),
        })
    }
}

fn free_abelianization(rank: usize, n: u64) -> AbelianType {
    AbelianType::from_cyclic_orders(&vec![BigInt::from(n); rank])
}

pub fn trivial_profiles(n: u64, max_components: usize) -> Result<Vec<TrivialLinkProfile>> {
    (1..=max_components).map(|k| TrivialLinkProfile::new(k, n)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    ConsistentWithReducible,
    MethodInapplicable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::ConsistentWithReducible => "CONSISTENT_WITH_REDUCIBLE",
            Verdict::MethodInapplicable => "METHOD_INAPPLICABLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// One step of the argument behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// H1 with Z_n coefficients is trivial or cyclic, so the Burnside
    /// quotient is cyclic and equals it.
    CyclicAbelianization { h1_mod_n: String },
    /// No trivial link has this H1 with Z_n coefficients.
    AbelianizationMismatch { h1_mod_n: String, exponent: u64 },
    /// The trivial link with this many components has the same H1.
    ProfileMatch { components: usize, rank: usize },
    /// Engine comparison of group orders.
    OrderComparison { engine: String, observed: GroupOrder, expected: GroupOrder, equal: bool },
    /// A relator is nontrivial in the class-`class` quotient of the free
    /// Burnside group of prime exponent.
    CertifiedRelator { relator: usize, weight: usize, class: usize, prime: u32 },
    /// No relator could be certified nontrivial.
    NoCertificate { class: usize, prime: u32 },
    /// The computation could not be carried out.
    Unavailable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveFamily {
    pub n: u64,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub generators: usize,
    pub relators: Vec<String>,
    pub h1_mod_n: String,
    pub quotient_order: Option<GroupOrder>,
    pub quotient_abelianization: Option<String>,
    pub certificates: Option<Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub schema_version: u32,
    pub link: String,
    #[serde(rename = "move")]
    pub move_family: MoveFamily,
    pub verdict: Verdict,
    pub invariants: Invariants,
    pub evidence: Vec<Evidence>,
}

impl ObstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Knobs for `verdict`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Class bound for Lie certificates; must be below the prime.
    pub class: usize,
    /// Coset cap for the enumeration fallback.
    pub coset_limit: usize,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { class: DEFAULT_CLASS, coset_limit: DEFAULT_COSET_LIMIT }
    }
}

fn is_prime(n: u64) -> bool {
    prime_power(n).is_some_and(|(_, k)| k == 1)
}

/// Decides whether the Burnside quotient at exponent `n` obstructs
/// `n/q`-move reducibility of the link to a trivial link.
pub fn verdict(input: &LinkInput, link: &str, n: u64, q: i64, opts: &VerdictOptions) -> Result<ObstructionReport> {
    if n < 2 {
        return Err(Error::ExponentTooSmall(n));
    }
    if q == 0 {
        return Err(Error::ZeroSlope);
    }
    let p = input.cover_presentation()?;
    let h1 = h1_mod_n::<BigInt>(&p, n)?;
    let mut inv = Invariants {
        generators: p.generator_count(),
        relators: p.relators().iter().map(|r| p.format_word(r)).collect(),
        h1_mod_n: h1.to_string(),
        quotient_order: None,
        quotient_abelianization: None,
        certificates: None,
    };
    let mut evidence = Vec::new();
    let report = |verdict, inv, evidence| ObstructionReport {
        schema_version: REPORT_SCHEMA_VERSION,
        link: link.to_string(),
        move_family: MoveFamily { n, q },
        verdict,
        invariants: inv,
        evidence,
    };

    // only a missing engine is a gap; unreadable or inconsistent data is an error
    let quotient = match burnside_quotient(&p, n, opts.coset_limit) {
        Err(e) if !matches!(e, Error::EngineTooSmall(_)) => return Err(e),
        other => other,
    };
    if let Ok(q) = &quotient {
        inv.quotient_order = Some(q.order);
        inv.quotient_abelianization = Some(q.abelianization.clone());
    }

    if prime_power(n).is_some() && h1.is_cyclic() {
        evidence.push(Evidence::CyclicAbelianization { h1_mod_n: h1.to_string() });
        return Ok(report(Verdict::MethodInapplicable, inv, evidence));
    }
    let rank = h1.rank();
    if h1 != free_abelianization(rank, n) {
        evidence.push(Evidence::AbelianizationMismatch { h1_mod_n: h1.to_string(), exponent: n });
        return Ok(report(Verdict::Obstructed, inv, evidence));
    }
    let profile = TrivialLinkProfile::new(rank + 1, n)?;
    evidence.push(Evidence::ProfileMatch { components: profile.components, rank });

    match (&quotient, profile.expected_order) {
        (Ok(q), Some(expected)) => {
            let observed = q.order;
            let equal = observed == expected;
            evidence.push(Evidence::OrderComparison { engine: q.engine.clone(), observed, expected, equal });
            let v = if equal { Verdict::ConsistentWithReducible } else { Verdict::Obstructed };
            Ok(report(v, inv, evidence))
        }
        _ if is_prime(n) && n >= 5 => {
            let prime = n as u32;
            if p.generator_count() != rank {
                evidence.push(Evidence::Unavailable {
                    reason: format!(
                        "presentation has {} generators but the matching trivial link has rank {rank}",
                        p.generator_count()
                    ),
                });
                return Ok(report(Verdict::Inconclusive, inv, evidence));
            }
            if rank == 0 {
                evidence.push(Evidence::Unavailable { reason: "no generators to certify".into() });
                return Ok(report(Verdict::Inconclusive, inv, evidence));
            }
            let alg = LieAlgebra::new(rank, opts.class, prime)?;
            let certs = alg.nontriviality_certificate(p.relators())?;
            let first = certs.iter().enumerate().find_map(|(i, c)| c.map(|w| (i, w)));
            inv.certificates = Some(certs);
            match first {
                Some((relator, weight)) => {
                    evidence.push(Evidence::CertifiedRelator { relator, weight, class: opts.class, prime });
                    Ok(report(Verdict::Obstructed, inv, evidence))
                }
                None => {
                    evidence.push(Evidence::NoCertificate { class: opts.class, prime });
                    Ok(report(Verdict::Inconclusive, inv, evidence))
                }
            }
        }
        _ => {
            let reason = match (&quotient, profile.expected_order) {
                (Err(err), _) => err.to_string(),
                (_, None) => format!("no engine for B({rank},{n})"),
                _ => "engine unavailable".into(),
            };
            evidence.push(Evidence::Unavailable { reason });
            Ok(report(Verdict::Inconclusive, inv, evidence))
        }
    }
}

/// Recomputes a report from its input and checks that every cited
/// quantity is reproduced exactly.
pub fn revalidate(report: &ObstructionReport, input: &LinkInput, opts: &VerdictOptions) -> Result<()> {
    let fresh = verdict(input, &report.link, report.move_family.n, report.move_family.q, opts)?;
    if &fresh != report {
        return Err(Error::Inconsistent("report does not reproduce".into()));
    }
    // the argument itself must be sound, not just reproducible
    let cited = |pred: &dyn Fn(&Evidence) -> bool| report.evidence.iter().any(pred);
    let ok = match report.verdict {
        Verdict::Obstructed => cited(&|e| {
            matches!(
                e,
                Evidence::AbelianizationMismatch { .. }
                    | Evidence::OrderComparison { equal: false, .. }
                    | Evidence::CertifiedRelator { .. }
            )
        }),
        Verdict::ConsistentWithReducible => cited(&|e| matches!(e, Evidence::OrderComparison { equal: true, .. })),
        Verdict::MethodInapplicable => cited(&|e| matches!(e, Evidence::CyclicAbelianization { .. })),
        Verdict::Inconclusive => true,
    };
    if !ok {
        return Err(Error::Inconsistent(format!("verdict {} lacks supporting evidence", report.verdict)));
    }
    Ok(())
}

/// Burnside quotient of a presentation, with the method that computed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideQuotient {
    pub order: GroupOrder,
    pub abelianization: String,
    pub engine: String,
}

/// Engine name reported when the coset enumeration fallback is used.
pub const COSET_ENGINE: &str = "coset-enumeration";

/// Order and abelianization of `B(g, n) / <<relators>>`. Uses the vendored
/// engine of rank `g` when there is one; otherwise, for `n <= 4`, coset
/// enumeration with at most `coset_limit` cosets.
pub fn burnside_quotient(p: &Presentation, n: u64, coset_limit: usize) -> Result<BurnsideQuotient> {
    match burnside_engine(p.generator_count(), n) {
        Ok(e) => Ok(BurnsideQuotient {
            order: GroupOrder::new(e.pc().prime(), e.quotient_order(p.relators())?),
            abelianization: e.quotient_abelianization(p.relators())?.to_string(),
            engine: e.name.clone(),
        }),
        Err(Error::EngineTooSmall(reason)) => {
            let prime = match prime_power(n) {
                Some((prime, _)) if n <= 4 => prime as u32,
                _ => return Err(Error::EngineTooSmall(reason)),
            };
            let order = burnside_quotient_order(p, n, coset_limit)?;
            Ok(BurnsideQuotient {
                order: GroupOrder::new(prime, order),
                // the abelianization of B(g,n)/<<R>> is H1 with Z_n coefficients
                abelianization: h1_mod_n::<BigInt>(p, n)?.to_string(),
                engine: COSET_ENGINE.to_string(),
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Distinction {
    Distinguished,
    NotDistinguished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSummary {
    pub link: String,
    pub generators: usize,
    pub quotient_order: GroupOrder,
    pub quotient_abelianization: String,
    pub engine: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub exponent: u64,
    pub links: [LinkSummary; 2],
    pub result: Distinction,
}

impl CompareReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Distinguishes two links up to `n`-moves by Burnside quotient order and
/// abelianization.
pub fn compare_links(
    a: (&LinkInput, &str),
    b: (&LinkInput, &str),
    n: u64,
    coset_limit: usize,
) -> Result<CompareReport> {
    let summary = |(input, name): (&LinkInput, &str)| -> Result<LinkSummary> {
        let p = input.cover_presentation()?;
        let q = burnside_quotient(&p, n, coset_limit)?;
        Ok(LinkSummary {
            link: name.to_string(),
            generators: p.generator_count(),
            quotient_order: q.order,
            quotient_abelianization: q.abelianization,
            engine: q.engine,
        })
    };
    let (sa, sb) = (summary(a)?, summary(b)?);
    let same = sa.quotient_order == sb.quotient_order && sa.quotient_abelianization == sb.quotient_abelianization;
    Ok(CompareReport {
        schema_version: REPORT_SCHEMA_VERSION,
        exponent: n,
        result: if same { Distinction::NotDistinguished } else { Distinction::Distinguished },
        links: [sa, sb],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditTrial {
    pub site: [usize; 2],
    pub orientation: String,
    pub q: i64,
    pub crossings: usize,
    pub generators: usize,
    pub quotient_order: Option<GroupOrder>,
    pub quotient_abelianization: Option<String>,
    pub engine: Option<String>,
    /// Set when the quotient could not be computed; the audit then fails.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub exponent: u64,
    pub seed: u64,
    pub baseline_order: GroupOrder,
    pub baseline_abelianization: String,
    pub trials: Vec<AuditTrial>,
    pub passed: bool,
}

impl AuditReport {
    pub fn checked(&self) -> usize {
        self.trials.iter().filter(|t| t.skipped.is_none()).count()
    }
}

/// Denominators used by the audit: 1, -1 and 2, keeping those coprime to
/// `n`; for even `n`, 3 stands in for 2.
pub fn audit_denominators(n: u64) -> Vec<i64> {
    [1i64, -1, 2, 3].into_iter().filter(|&q| (n as i64).gcd(&q) == 1).take(3).collect()
}

/// Applies `trials` random `n/q`-moves, each to `d` itself, and checks that
/// the Burnside quotient order and abelianization never change.
pub fn invariance_audit(d: &LinkDiagram, n: u64, trials: usize, seed: u64, coset_limit: usize) -> Result<AuditReport> {
    let base = burnside_quotient(&cover_presentation(d)?, n, coset_limit)?;
    let (baseline_order, baseline_abelianization) = (base.order, base.abelianization);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sites = d.candidate_sites();
    if sites.is_empty() {
        return Err(Error::InvalidSite("the diagram has no move sites".into()));
    }
    let qs = audit_denominators(n);
    let mut out = Vec::with_capacity(trials);
    let mut passed = true;
    for _ in 0..trials {
        let site = *sites.choose(&mut rng).unwrap();
        let q = *qs.choose(&mut rng).unwrap();
        let moved = apply_pq_move(d, &site, n as i64, q)?;
        let p = cover_presentation(&moved)?;
        let mut trial = AuditTrial {
            site: site.arcs,
            orientation: format!("{:?}", site.orientation).to_lowercase(),
            q,
            crossings: moved.crossing_count(),
            generators: p.generator_count(),
            quotient_order: None,
            quotient_abelianization: None,
            engine: None,
            skipped: None,
        };
        match burnside_quotient(&p, n, coset_limit) {
            Ok(bq) => {
                passed &= bq.order == baseline_order && bq.abelianization == baseline_abelianization;
                trial.quotient_order = Some(bq.order);
                trial.quotient_abelianization = Some(bq.abelianization);
                trial.engine = Some(bq.engine);
            }
            Err(Error::EngineTooSmall(reason)) => {
                passed = false;
                trial.skipped = Some(reason);
            }
            Err(e) => return Err(e),
        }
        out.push(trial);
    }
    Ok(AuditReport { exponent: n, seed, baseline_order, baseline_abelianization, trials: out, passed })
}

/// Input file kinds, detected from the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkFormat {
    Braid,
    Pd,
    Pres,
}

impl LinkFormat {
    pub fn from_extension(ext: &str) -> Result<Self> {
        match ext {
            "braid" => Ok(LinkFormat::Braid),
            "pd" => Ok(LinkFormat::Pd),
            "pres" => Ok(LinkFormat::Pres),
            other => Err(Error::Parse(format!("unknown input extension `{other}` (expected braid, pd or pres)"))),
        }
    }
}

pub fn parse_link(text: &str, format: LinkFormat) -> Result<LinkInput> {
    Ok(match format {
        LinkFormat::Braid => LinkInput::Diagram(crate::diagram::braid_closure(&crate::diagram::parse_braid(text)?)),
        LinkFormat::Pd => LinkInput::Diagram(crate::diagram::parse_pd(text)?),
        LinkFormat::Pres => LinkInput::Reduced(crate::presentation::parse_presentation(text)?),
    })
}
