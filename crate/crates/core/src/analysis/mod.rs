//! Checks of the bounds `|G| + log2 #π(G) ≥ K*(G) ≥ log2 #π(G)` for ideal
//! generators, plus expressive-range histograms and plot data.
//!
//! The exact path reads K from a [`DescriptionTable`]. Its certified lower
//! bound does not rely on the clean `log2 #π` form: it counts how many
//! distinct artefacts have short descriptions at all, and reports the first
//! budget at which the space could fit. The estimate path uses a compressor
//! and only ever yields direction-of-change data.

pub mod era;
pub mod plane;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::{BitString, DEFAULT_ENUMERATION_CAP};
use crate::complexity::{
    description_count_with_limit, k_upper_estimate, CompressorContract, DescriptionTable,
};
use crate::error::{Error, Result};
use crate::generators::{CodeLengthKind, GeneratorSpec};

pub use era::{era_histogram, EraHistogram, Metric};
pub use plane::{
    bounds_plane_points, compare, write_plane_csv, ComparisonRecord, Movement, PlaneRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KStarKind {
    Exact,
    Estimate,
}

/// A certified floor on K*.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifiedLower {
    AtLeast(usize),
    /// K* exceeds the cap the count was taken at.
    AboveCap(usize),
}

impl CertifiedLower {
    /// The floor as a number: `cap + 1` when above the cap.
    pub fn floor(&self) -> usize {
        match *self {
            CertifiedLower::AtLeast(v) => v,
            CertifiedLower::AboveCap(cap) => cap + 1,
        }
    }
}

impl std::fmt::Display for CertifiedLower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertifiedLower::AtLeast(v) => write!(f, "{v}"),
            CertifiedLower::AboveCap(cap) => write!(f, ">{cap}"),
        }
    }
}

impl Serialize for CertifiedLower {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CertifiedLower::AtLeast(v) => s.serialize_u64(*v as u64),
            CertifiedLower::AboveCap(_) => s.collect_str(self),
        }
    }
}

impl<'de> Deserialize<'de> for CertifiedLower {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(usize),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(v) => Ok(CertifiedLower::AtLeast(v)),
            Repr::S(s) => s
                .strip_prefix('>')
                .and_then(|c| c.parse().ok())
                .map(CertifiedLower::AboveCap)
                .ok_or_else(|| serde::de::Error::custom(format!("bad certified bound {s:?}"))),
        }
    }
}

/// One generator's position on the bounds plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub label: String,
    pub code_length: usize,
    pub code_length_kind: CodeLengthKind,
    pub input_size: usize,
    /// `None` when the space has 2^64 or more artefacts.
    pub space_size: Option<u64>,
    pub log2_space: f64,
    pub k_star: usize,
    pub k_star_kind: KStarKind,
    pub upper_bound: usize,
    pub certified_lower: Option<CertifiedLower>,
    pub upper_holds: Option<bool>,
    pub lower_holds: Option<bool>,
    pub direction_only: bool,
    pub compressor: Option<String>,
    pub samples: Option<usize>,
}

/// How K* is obtained.
pub enum Method<'a> {
    /// Exact K from an exhaustive table.
    Exact(&'a DescriptionTable),
    /// Maximum compression estimate over the whole space when it has at most
    /// `samples` inputs, otherwise over `samples` seeded uniform draws.
    Estimate {
        compressor: &'a dyn CompressorContract,
        samples: usize,
        seed: u64,
    },
}

/// Smallest budget `L ≤ table.cap()` at which at least `space_size` distinct
/// artefacts have K ≤ L.
///
/// A space of that many distinct artefacts cannot fit below it, so K* of any
/// ideal generator with that space size is at least the returned value.
pub fn certified_lower_bound_with(space_size: u128, table: &DescriptionTable) -> CertifiedLower {
    let mut cumulative: u128 = 0;
    for (budget, n) in table.k_histogram().into_iter().enumerate() {
        cumulative += n as u128;
        if cumulative >= space_size {
            return CertifiedLower::AtLeast(budget);
        }
    }
    CertifiedLower::AboveCap(table.cap())
}

/// [`certified_lower_bound_with`] on a freshly built table.
pub fn certified_lower_bound(space_size: u128, cap: usize) -> Result<CertifiedLower> {
    Ok(certified_lower_bound_with(
        space_size,
        &DescriptionTable::build(cap)?,
    ))
}

/// The same floor from raw (program, input) pair counts. Never tighter than
/// [`certified_lower_bound_with`], but needs no table.
pub fn pair_count_lower_bound(
    space_size: u128,
    cap: usize,
    hard_limit: usize,
) -> Result<CertifiedLower> {
    for budget in 0..=cap {
        if description_count_with_limit(budget, hard_limit)? >= space_size {
            return Ok(CertifiedLower::AtLeast(budget));
        }
    }
    Ok(CertifiedLower::AboveCap(cap))
}

fn refuse_unless_ideal(g: &GeneratorSpec) -> Result<()> {
    if g.input_size() <= DEFAULT_ENUMERATION_CAP {
        let r = g.check_ideal()?;
        if !r.is_ideal() {
            return Err(Error::NotIdeal {
                fixed_input: r.fixed_input,
                total: r.total,
                injective: r.injective,
            });
        }
        return Ok(());
    }
    match g.ideal_by_construction() {
        Some(true) => Ok(()),
        Some(false) => Err(Error::NotIdeal {
            fixed_input: true,
            total: true,
            injective: false,
        }),
        None => Err(Error::CapExceeded {
            what: "generator input size",
            requested: g.input_size(),
            cap: DEFAULT_ENUMERATION_CAP,
        }),
    }
}

fn space_size(input_size: usize) -> Option<u64> {
    (input_size < 64).then(|| 1u64 << input_size)
}

pub fn verify_bounds(g: &GeneratorSpec, method: &Method<'_>) -> Result<BoundsReport> {
    match method {
        Method::Exact(table) => verify_exact(g, table),
        Method::Estimate {
            compressor,
            samples,
            seed,
        } => verify_estimate(g, *compressor, *samples, *seed),
    }
}

fn verify_exact(g: &GeneratorSpec, table: &DescriptionTable) -> Result<BoundsReport> {
    let code = g.code_length();
    let required = code.bits + g.input_size();
    if table.cap() < required {
        return Err(Error::CapTooSmall {
            cap: table.cap(),
            required,
        });
    }
    refuse_unless_ideal(g)?;
    let space = g.enumerate_space()?;
    let artefacts: Vec<&BitString> = space.artefacts.iter().collect();
    let ks: Vec<Option<usize>> = artefacts.par_iter().map(|a| table.k(a)).collect();
    if ks.iter().any(Option::is_none) {
        // Only proxy-sized generators can land here: a program generator's
        // own (G, i) pairs always fit under `required`.
        return Err(Error::CapTooSmall {
            cap: table.cap(),
            required: table.cap() + 1,
        });
    }
    let ks: Vec<usize> = ks.into_iter().map(Option::unwrap).collect();

    if let Some(program) = g.program() {
        // (G, i) is itself an admissible description of G(i).
        for v in 0..(1u64 << g.input_size()) {
            let i = BitString::from_unsigned(v, g.input_size())?;
            let a = g.evaluate(&i)?;
            debug_assert!(program.admissible(&i));
            let k = table.k(&a).expect("artefact in space");
            if k > program.len_bits() + i.len() {
                return Err(Error::Precondition(format!(
                    "K({a}) = {k} exceeds its own description length {}",
                    program.len_bits() + i.len()
                )));
            }
        }
    }

    let n = space.size();
    let log2_space = (n as f64).log2();
    let k_star = ks.into_iter().max().unwrap_or(0);
    let upper_bound = code.bits + g.input_size();
    Ok(BoundsReport {
        label: g.label().to_owned(),
        code_length: code.bits,
        code_length_kind: code.kind,
        input_size: g.input_size(),
        space_size: Some(n as u64),
        log2_space,
        k_star,
        k_star_kind: KStarKind::Exact,
        upper_bound,
        certified_lower: Some(certified_lower_bound_with(n as u128, table)),
        upper_holds: Some(upper_bound >= k_star),
        lower_holds: Some(k_star as f64 >= log2_space),
        direction_only: false,
        compressor: None,
        samples: None,
    })
}

fn verify_estimate(
    g: &GeneratorSpec,
    compressor: &dyn CompressorContract,
    samples: usize,
    seed: u64,
) -> Result<BoundsReport> {
    if samples == 0 {
        return Err(Error::Precondition(
            "estimate needs at least one sample".into(),
        ));
    }
    refuse_unless_ideal(g)?;
    let n = g.input_size();
    let inputs = sample_inputs(n, samples, seed);
    let evaluated = inputs.len();
    let estimates: Vec<usize> = inputs
        .par_iter()
        .map(|i| Ok(k_upper_estimate(&g.evaluate(i)?, compressor)?.estimate))
        .collect::<Result<_>>()?;
    let code = g.code_length();
    Ok(BoundsReport {
        label: g.label().to_owned(),
        code_length: code.bits,
        code_length_kind: code.kind,
        input_size: n,
        space_size: space_size(n),
        log2_space: n as f64,
        k_star: estimates.into_iter().max().unwrap_or(0),
        k_star_kind: KStarKind::Estimate,
        upper_bound: code.bits + n,
        certified_lower: None,
        upper_holds: None,
        lower_holds: None,
        direction_only: true,
        compressor: Some(compressor.name().to_owned()),
        samples: Some(evaluated),
    })
}

/// Every input when there are at most `samples` of them, otherwise `samples`
/// uniform draws from a seeded stream.
pub fn sample_inputs(input_size: usize, samples: usize, seed: u64) -> Vec<BitString> {
    if input_size < 64 && (1u64 << input_size) <= samples as u64 {
        return BitString::enumerate_with_cap(input_size, 63)
            .expect("small width")
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| (0..input_size).map(|_| rng.random::<bool>()).collect())
        .collect()
}
