//! Recombination of a fixed part library.
//!
//! The seed is read as `slots` indices of `b` bits each, where the library
//! holds exactly `2^b` equal-length parts; the artefact is the concatenation
//! of the indexed parts. More slots grow the space exponentially while the
//! library, and so the encoded knowledge, stays the same.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

pub(crate) const OATMEAL_TAG: u64 = 0x02;

/// Largest value an 8-bit count field can hold.
const COUNT_MAX: usize = 255;

/// Index width `b` for a library of `parts.len()` parts, after validation.
pub fn index_bits(parts: &[BitString]) -> Result<usize> {
    let n = parts.len();
    if n < 2 || !n.is_power_of_two() || n > 128 {
        return Err(Error::Parameter(format!(
            "part count must be a power of two between 2 and 128, got {n}"
        )));
    }
    let width = parts[0].len();
    if width > COUNT_MAX || parts.iter().any(|p| p.len() != width) {
        return Err(Error::Parameter(
            "parts must share one length of at most 255 bits".into(),
        ));
    }
    Ok(n.trailing_zeros() as usize)
}

pub fn validate_slots(slots: usize) -> Result<()> {
    if slots == 0 || slots > COUNT_MAX {
        return Err(Error::Parameter(format!(
            "slot count must be within 1..=255, got {slots}"
        )));
    }
    Ok(())
}

pub fn oatmeal(parts: &[BitString], slots: usize, seed: &BitString) -> Result<BitString> {
    let b = index_bits(parts)?;
    validate_slots(slots)?;
    if seed.len() != slots * b {
        return Err(Error::Parameter(format!(
            "{slots} slots of {b} index bits need a {}-bit seed, got {}",
            slots * b,
            seed.len()
        )));
    }
    let mut out = BitString::with_capacity(slots * parts[0].len());
    for s in 0..slots {
        let idx = seed
            .slice(s * b, (s + 1) * b)
            .to_unsigned()
            .expect("index fits a word") as usize;
        out.extend_from(&parts[idx]);
    }
    Ok(out)
}

/// Whether all parts are pairwise distinct, the condition for injectivity.
pub fn parts_distinct(parts: &[BitString]) -> bool {
    let mut sorted: Vec<&BitString> = parts.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}
