//! Idealization of finite-domain generators.
//!
//! A raw generator accepts inputs of varying length and may map distinct
//! inputs to the same artefact. Idealizing it takes two steps:
//!
//! 1. Re-key the domain with a fixed-width length-prefixed encoding, `enc`,
//!    giving a fixed-input-size generator `G''`.
//! 2. Append the encoded input to every output, giving `G'`, which is
//!    injective because the suffix alone separates distinct inputs.
//!
//! The encoding header is `ceil(log2(m + 1))` bits wide so that every length
//! `0..=m` is representable. `G'` is made total over all strings of its input
//! width: headers above `m` clamp to `m`, padding bits are ignored, and a
//! decode that lands outside the domain evaluates the smallest domain element
//! instead. Every fixed-width string then yields an artefact, and the suffix
//! keeps them distinct.

use std::collections::BTreeMap;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::vm::Program;

pub(crate) const IDEALIZED_TAG: u64 = 0x03;

/// Bits needed to write every length in `0..=m`.
pub fn header_width(m: usize) -> usize {
    (usize::BITS - m.leading_zeros()) as usize
}

/// Length header followed by the input left-padded to `m` bits.
pub fn enc(i: &BitString, m: usize) -> Result<BitString> {
    if i.len() > m {
        return Err(Error::LengthOverflow {
            len: i.len(),
            width: m,
        });
    }
    let header = BitString::from_unsigned(i.len() as u64, header_width(m))?;
    Ok(header.concat(&i.pad_leading_zeros(m)?))
}

/// Total decoder: clamps the header to `m`, then takes that many trailing
/// payload bits.
pub fn dec_total(x: &BitString, m: usize) -> Result<BitString> {
    let hw = header_width(m);
    if x.len() != hw + m {
        return Err(Error::Arity {
            expected: hw + m,
            actual: x.len(),
        });
    }
    let h = x.slice(0, hw).to_unsigned().expect("header fits a word") as usize;
    let h = h.min(m);
    Ok(x.slice(hw + m - h, hw + m))
}

/// A terminating generator over an explicit finite domain of inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGenerator {
    table: BTreeMap<BitString, BitString>,
    m: usize,
}

impl RawGenerator {
    pub fn new(table: BTreeMap<BitString, BitString>) -> Result<RawGenerator> {
        let m = table
            .keys()
            .map(BitString::len)
            .max()
            .ok_or_else(|| Error::Parameter("raw generator domain is empty".into()))?;
        Ok(RawGenerator { table, m })
    }

    /// Tabulates `program` over `domain`.
    ///
    /// Inputs longer than the program's arity are accepted: the program reads
    /// its prefix and the rest is ignored. Any faulting input is an error.
    pub fn from_program<I>(program: &Program, domain: I) -> Result<RawGenerator>
    where
        I: IntoIterator<Item = BitString>,
    {
        let mut table = BTreeMap::new();
        for i in domain {
            let out = program
                .execute(&i)
                .result
                .map_err(|fault| Error::NonTotal {
                    input: i.clone(),
                    fault,
                })?;
            table.insert(i, out);
        }
        Self::new(table)
    }

    /// Domain = every string whose length lies in `arity..=m`.
    pub fn from_program_up_to(program: &Program, m: usize) -> Result<RawGenerator> {
        let arity = program.input_arity();
        if m < arity {
            return Err(Error::Parameter(format!(
                "max input {m} is below the program arity {arity}"
            )));
        }
        let mut domain = Vec::new();
        for len in arity..=m {
            domain.extend(BitString::enumerate(len)?);
        }
        Self::from_program(program, domain)
    }

    pub fn max_input(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> impl Iterator<Item = &BitString> {
        self.table.keys()
    }

    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    pub fn evaluate(&self, i: &BitString) -> Option<&BitString> {
        self.table.get(i)
    }

    fn smallest_input(&self) -> &BitString {
        self.table.keys().next().expect("non-empty domain")
    }
}

/// The ideal generator `G'` built from a [`RawGenerator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealizedGenerator {
    raw: RawGenerator,
}

impl IdealizedGenerator {
    pub fn raw(&self) -> &RawGenerator {
        &self.raw
    }

    pub fn input_size(&self) -> usize {
        header_width(self.raw.m) + self.raw.m
    }

    /// `G'(x) = G(dec_total(x)) ++ x`, with out-of-domain decodes mapped to
    /// the smallest domain element.
    pub fn evaluate(&self, x: &BitString) -> Result<BitString> {
        let decoded = dec_total(x, self.raw.m)?;
        let base = self
            .raw
            .evaluate(&decoded)
            .or_else(|| self.raw.evaluate(self.raw.smallest_input()))
            .expect("non-empty domain");
        Ok(base.concat(x))
    }

    /// `G''` on its own domain: the valid encodings of domain elements.
    pub fn evaluate_encoded(&self, x: &BitString) -> Result<BitString> {
        let decoded = dec_total(x, self.raw.m)?;
        if enc(&decoded, self.raw.m)? != *x {
            return Err(Error::DomainFault(x.clone()));
        }
        self.raw
            .evaluate(&decoded)
            .cloned()
            .ok_or_else(|| Error::DomainFault(x.clone()))
    }

    /// `{enc(i) : i in domain}`, ascending.
    pub fn valid_encodings(&self) -> Vec<BitString> {
        let mut v: Vec<_> = self
            .raw
            .domain()
            .map(|i| enc(i, self.raw.m).expect("domain within m"))
            .collect();
        v.sort();
        v
    }

    /// Tag, `m`, then each domain entry as an 8-bit input length, the input,
    /// a 16-bit output length and the output. A proxy for |G'|.
    pub(crate) fn canonical_serialization(&self) -> BitString {
        let field = |v: usize, w: usize| BitString::from_unsigned(v as u64, w).expect("fits");
        let mut s = field(IDEALIZED_TAG as usize, 8);
        s.extend_from(&field(self.raw.m, 8));
        for (i, out) in &self.raw.table {
            s.extend_from(&field(i.len(), 8));
            s.extend_from(i);
            s.extend_from(&field(out.len().min(u16::MAX as usize), 16));
            s.extend_from(out);
        }
        s
    }
}

/// Builds the ideal generator for `g`.
pub fn idealize(g: &RawGenerator) -> Result<GeneratorSpec> {
    if g.m > 255 {
        return Err(Error::Parameter(format!("max input {} exceeds 255", g.m)));
    }
    let label = format!("idealized(m={})", g.m);
    Ok(GeneratorSpec::idealized(
        IdealizedGenerator { raw: g.clone() },
        label,
    ))
}

/// Space sizes before and after totalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SpaceSizes {
    /// Size over valid encodings only: the raw domain size.
    pub encoded_domain: usize,
    /// `2^input_size`, the size over every fixed-width string.
    pub total_domain: u128,
}

pub fn space_sizes(g: &IdealizedGenerator) -> SpaceSizes {
    SpaceSizes {
        encoded_domain: g.raw.domain_size(),
        total_domain: 1u128 << g.input_size(),
    }
}
