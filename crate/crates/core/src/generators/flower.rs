//! Four-fold symmetric monochrome sprites.
//!
//! A seed fills the top-left quadrant row-major; the other three quadrants are
//! its horizontal, vertical and diagonal mirror images. Each seed bit owns a
//! distinct pixel of the quadrant, so the map is injective in the seed.

use std::fmt::Write as _;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

pub const MIN_SIZE: usize = 2;
pub const MAX_SIZE: usize = 16;

/// Family tag used in canonical serializations.
pub(crate) const FLOWER_TAG: u64 = 0x01;

pub fn validate_size(size: usize) -> Result<()> {
    if !size.is_multiple_of(2) || !(MIN_SIZE..=MAX_SIZE).contains(&size) {
        return Err(Error::Parameter(format!(
            "flower size must be even and within {MIN_SIZE}..={MAX_SIZE}, got {size}"
        )));
    }
    Ok(())
}

/// Seed length for a sprite of side `size`.
pub fn seed_len(size: usize) -> usize {
    (size / 2) * (size / 2)
}

/// Renders a `size`×`size` sprite, row-major.
pub fn flower(size: usize, seed: &BitString) -> Result<BitString> {
    validate_size(size)?;
    if seed.len() != seed_len(size) {
        return Err(Error::Parameter(format!(
            "flower of size {size} needs a {}-bit seed, got {}",
            seed_len(size),
            seed.len()
        )));
    }
    let half = size / 2;
    let fold = |x: usize| if x < half { x } else { size - 1 - x };
    let mut out = BitString::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            out.push(seed.get(fold(r) * half + fold(c)).expect("in quadrant"));
        }
    }
    Ok(out)
}

/// Plain-text portable bitmap (P1) for a row-major sprite.
pub fn to_pbm(pixels: &BitString, width: usize, height: usize) -> Result<String> {
    if pixels.len() != width * height {
        return Err(Error::Parameter(format!(
            "{} pixels do not fill a {width}x{height} bitmap",
            pixels.len()
        )));
    }
    let mut s = format!("P1\n{width} {height}\n");
    let text = pixels.to_string();
    for row in 0..height {
        let _ = writeln!(s, "{}", &text[row * width..(row + 1) * width]);
    }
    Ok(s)
}

/// Parses a P1 bitmap back into (pixels, width, height). Comments are allowed.
pub fn from_pbm(text: &str) -> Result<(BitString, usize, usize)> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let bad = |m: &str| Error::Parameter(format!("malformed P1 bitmap: {m}"));
    if tokens.next() != Some("P1") {
        return Err(bad("missing P1 magic"));
    }
    let mut dim = || -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("bad dimensions"))
    };
    let (w, h) = (dim()?, dim()?);
    let pixels: BitString = tokens
        .collect::<String>()
        .parse()
        .map_err(|_| bad("non-binary pixel"))?;
    if pixels.len() != w * h {
        return Err(bad("pixel count does not match dimensions"));
    }
    Ok((pixels, w, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn single_bit_mirrors_four_ways() {
        assert_eq!(flower(2, &bs("1")).unwrap(), bs("1111"));
        assert_eq!(flower(2, &bs("0")).unwrap(), bs("0000"));
    }

    #[test]
    fn zero_seed_gives_blank_sprite() {
        assert_eq!(
            flower(6, &BitString::zeros(9)).unwrap(),
            BitString::zeros(36)
        );
    }

    #[test]
    fn quadrants_mirror() {
        // 4x4 from seed "10 / 01": corners set, centre set.
        let s = flower(4, &bs("1001")).unwrap();
        assert_eq!(s, bs("1001011001101001"));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(flower(5, &BitString::zeros(4)).is_err());
        assert!(flower(18, &BitString::zeros(81)).is_err());
        assert!(flower(0, &BitString::new()).is_err());
        assert!(flower(6, &BitString::zeros(8)).is_err());
    }

    #[test]
    fn pbm_round_trip() {
        let s = flower(6, &bs("101100111")).unwrap();
        let text = to_pbm(&s, 6, 6).unwrap();
        assert!(text.starts_with("P1\n6 6\n"));
        assert_eq!(text.lines().count(), 8);
        assert_eq!(from_pbm(&text).unwrap(), (s, 6, 6));
        assert!(from_pbm("P2\n1 1\n0").is_err());
        assert_eq!(from_pbm("P1 # c\n2 1\n1 0\n").unwrap(), (bs("10"), 2, 1));
    }
}
