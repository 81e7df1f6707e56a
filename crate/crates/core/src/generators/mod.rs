//! Generators: deterministic maps from fixed-length inputs to artefacts.
//!
//! A generator is either a bit-machine program, one of the native parametric
//! families ([`flower`], [`oatmeal`]), or the idealized form of a raw
//! finite-domain generator produced by [`crate::transform`].

pub mod flower;
pub mod oatmeal;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::{BitString, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::transform::IdealizedGenerator;
use crate::vm::Program;

pub use flower::flower;
pub use oatmeal::oatmeal;

/// Inputs evaluated per parallel batch when sweeping a whole input space.
const SWEEP_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    Vm(Program),
    Flower { size: usize },
    Oatmeal { parts: Vec<BitString>, slots: usize },
    Idealized(Box<IdealizedGenerator>),
}

/// Whether a code length is the literal program size or a serialization proxy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeLengthKind {
    Exact,
    Proxy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeLength {
    pub bits: usize,
    pub kind: CodeLengthKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    kind: GeneratorKind,
    input_size: usize,
    label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealityReport {
    pub fixed_input: bool,
    pub total: bool,
    pub injective: bool,
    /// Lexicographically smallest pair of distinct inputs with equal output.
    pub counterexample: Option<(BitString, BitString)>,
    /// First input (in ascending order) on which evaluation fails.
    pub fault_input: Option<BitString>,
}

impl IdealityReport {
    pub fn is_ideal(&self) -> bool {
        self.fixed_input && self.total && self.injective
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilitySpace {
    pub artefacts: BTreeSet<BitString>,
}

impl PossibilitySpace {
    pub fn size(&self) -> usize {
        self.artefacts.len()
    }
}

fn count_field(v: usize, width: usize) -> BitString {
    BitString::from_unsigned(v as u64, width).expect("validated count")
}

impl GeneratorSpec {
    pub fn vm(program: Program) -> GeneratorSpec {
        let label = format!("vm:{program}");
        Self::vm_labeled(program, label)
    }

    pub fn vm_labeled(program: Program, label: impl Into<String>) -> GeneratorSpec {
        GeneratorSpec {
            input_size: program.input_arity(),
            kind: GeneratorKind::Vm(program),
            label: label.into(),
        }
    }

    pub fn flower(size: usize) -> Result<GeneratorSpec> {
        flower::validate_size(size)?;
        Ok(GeneratorSpec {
            kind: GeneratorKind::Flower { size },
            input_size: flower::seed_len(size),
            label: format!("flower-{size}"),
        })
    }

    pub fn oatmeal(parts: Vec<BitString>, slots: usize) -> Result<GeneratorSpec> {
        let b = oatmeal::index_bits(&parts)?;
        oatmeal::validate_slots(slots)?;
        Ok(GeneratorSpec {
            label: format!("oatmeal-{}x{}", parts.len(), slots),
            kind: GeneratorKind::Oatmeal { parts, slots },
            input_size: slots * b,
        })
    }

    pub(crate) fn idealized(g: IdealizedGenerator, label: String) -> GeneratorSpec {
        GeneratorSpec {
            input_size: g.input_size(),
            kind: GeneratorKind::Idealized(Box::new(g)),
            label,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn input_size(&self) -> usize {
        self.input_size
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn program(&self) -> Option<&Program> {
        match &self.kind {
            GeneratorKind::Vm(p) => Some(p),
            _ => None,
        }
    }

    pub fn evaluate(&self, input: &BitString) -> Result<BitString> {
        if input.len() != self.input_size {
            return Err(Error::Arity {
                expected: self.input_size,
                actual: input.len(),
            });
        }
        match &self.kind {
            GeneratorKind::Vm(p) => p.execute(input).result.map_err(|fault| Error::NonTotal {
                input: input.clone(),
                fault,
            }),
            GeneratorKind::Flower { size } => flower(*size, input),
            GeneratorKind::Oatmeal { parts, slots } => oatmeal(parts, *slots, input),
            GeneratorKind::Idealized(g) => g.evaluate(input),
        }
    }

    /// Canonical serialization for native kinds: an 8-bit family tag then
    /// the parameters, with sizes as 8-bit counts and parts as raw bits.
    /// Program-backed generators serialize as their program.
    pub fn canonical_serialization(&self) -> BitString {
        match &self.kind {
            GeneratorKind::Vm(p) => p.raw().clone(),
            GeneratorKind::Flower { size } => {
                count_field(flower::FLOWER_TAG as usize, 8).concat(&count_field(*size, 8))
            }
            GeneratorKind::Oatmeal { parts, slots } => {
                let mut s = count_field(oatmeal::OATMEAL_TAG as usize, 8);
                s.extend_from(&count_field(parts.len(), 8));
                s.extend_from(&count_field(parts[0].len(), 8));
                for p in parts {
                    s.extend_from(p);
                }
                s.extend_from(&count_field(*slots, 8));
                s
            }
            GeneratorKind::Idealized(g) => g.canonical_serialization(),
        }
    }

    /// |G|: exact for programs, a serialization-length proxy otherwise.
    pub fn code_length(&self) -> CodeLength {
        CodeLength {
            bits: self.canonical_serialization().len(),
            kind: match self.kind {
                GeneratorKind::Vm(_) => CodeLengthKind::Exact,
                _ => CodeLengthKind::Proxy,
            },
        }
    }

    /// Whether the family is ideal by construction, independent of enumeration.
    ///
    /// `None` means only exhaustive checking can tell.
    pub fn ideal_by_construction(&self) -> Option<bool> {
        match &self.kind {
            GeneratorKind::Vm(_) => None,
            GeneratorKind::Flower { .. } => Some(true),
            GeneratorKind::Oatmeal { parts, .. } => Some(oatmeal::parts_distinct(parts)),
            GeneratorKind::Idealized(_) => Some(true),
        }
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.input_size > DEFAULT_ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                what: "generator input size",
                requested: self.input_size,
                cap: DEFAULT_ENUMERATION_CAP,
            });
        }
        Ok(())
    }

    /// Evaluates every input, in ascending order, on the current rayon pool.
    fn sweep(&self) -> Result<Vec<Result<BitString>>> {
        self.check_enumerable()?;
        let n = self.input_size;
        let total = 1u64 << n;
        let mut out = Vec::with_capacity(total as usize);
        let mut start = 0;
        while start < total {
            let end = (start + SWEEP_CHUNK).min(total);
            let batch: Vec<Result<BitString>> = (start..end)
                .into_par_iter()
                .map(|v| self.evaluate(&BitString::from_unsigned(v, n).expect("below 2^n")))
                .collect();
            out.extend(batch);
            start = end;
        }
        Ok(out)
    }

    /// π(G): every distinct artefact over all inputs.
    pub fn enumerate_space(&self) -> Result<PossibilitySpace> {
        let mut artefacts = BTreeSet::new();
        for r in self.sweep()? {
            artefacts.insert(r?);
        }
        Ok(PossibilitySpace { artefacts })
    }

    /// Exhaustive ideality check. Findings are reported, not raised; the
    /// error path is reserved for spaces too large to sweep.
    pub fn check_ideal(&self) -> Result<IdealityReport> {
        let n = self.input_size;
        let results = self.sweep()?;
        let fault_input = results
            .iter()
            .position(Result::is_err)
            .map(|v| BitString::from_unsigned(v as u64, n).expect("below 2^n"));

        let mut outputs: Vec<(BitString, u64)> = results
            .into_iter()
            .enumerate()
            .filter_map(|(v, r)| r.ok().map(|a| (a, v as u64)))
            .collect();
        outputs.par_sort_unstable();
        let counterexample = outputs
            .windows(2)
            .filter(|w| w[0].0 == w[1].0)
            .map(|w| (w[0].1, w[1].1))
            // consecutive equal entries: keep the first pair of each group,
            // i.e. the group's two smallest inputs
            .fold(None::<(u64, u64)>, |best, (a, b)| match best {
                Some((ba, _)) if ba <= a => best,
                _ => Some((a, b)),
            })
            .map(|(a, b)| {
                (
                    BitString::from_unsigned(a, n).expect("below 2^n"),
                    BitString::from_unsigned(b, n).expect("below 2^n"),
                )
            });

        Ok(IdealityReport {
            fixed_input: true,
            total: fault_input.is_none(),
            injective: counterexample.is_none(),
            counterexample,
            fault_input,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vm::Instruction::{self, *};
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn vm(ins: &[Instruction]) -> GeneratorSpec {
        GeneratorSpec::vm(Program::from_instructions(ins))
    }

    fn set(items: &[&str]) -> BTreeSet<BitString> {
        items.iter().map(|s| bs(s)).collect()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(vm(&[InOut, InOut]).evaluate(&bs("01")).unwrap(), bs("01"));
        assert_eq!(vm(&[InOut, InDrop]).evaluate(&bs("10")).unwrap(), bs("1"));
        let f = GeneratorSpec::flower(6).unwrap();
        assert_eq!(
            f.evaluate(&BitString::zeros(9)).unwrap(),
            BitString::zeros(36)
        );
        assert!(matches!(
            vm(&[InOut]).evaluate(&bs("01")),
            Err(Error::Arity {
                expected: 1,
                actual: 2
            })
        ));
        assert!(matches!(
            vm(&[Dup]).evaluate(&bs("")),
            Err(Error::NonTotal { .. })
        ));
    }

    #[test]
    fn enumerate_space_examples() {
        let s = vm(&[InOut, InOut]).enumerate_space().unwrap();
        assert_eq!(s.artefacts, set(&["00", "01", "10", "11"]));
        let s = vm(&[InOut, InDrop]).enumerate_space().unwrap();
        assert_eq!((s.size(), s.artefacts), (2, set(&["0", "1"])));
        let s = vm(&[Out0]).enumerate_space().unwrap();
        assert_eq!(s.artefacts, set(&["0"]));
        match vm(&[InOut, FlipLast, Halt, Dup, Dup]).enumerate_space() {
            Ok(s) => assert_eq!(s.size(), 2),
            Err(e) => panic!("{e}"),
        }
        assert!(matches!(
            vm(&[InDrop, Dup]).enumerate_space(),
            Err(Error::NonTotal { input, .. }) if input == bs("0")
        ));
    }

    #[test]
    fn check_ideal_examples() {
        let r = vm(&[InOut, InOut]).check_ideal().unwrap();
        assert!(r.fixed_input && r.total && r.injective);
        let r = vm(&[InOut, InDrop]).check_ideal().unwrap();
        assert!(!r.injective);
        assert_eq!(r.counterexample, Some((bs("00"), bs("01"))));
        let r = vm(&[FlipLast]).check_ideal().unwrap();
        assert!(!r.total);
        assert_eq!(r.fault_input, Some(bs("")));
    }

    #[test]
    fn counterexample_is_smallest_pair() {
        // Output ignores the first bit: 000 collides with 100 but the
        // smallest colliding pair overall is (000, 100).
        let r = vm(&[InDrop, InOut, InOut]).check_ideal().unwrap();
        assert_eq!(r.counterexample, Some((bs("000"), bs("100"))));
        // Output ignores the last bit: (000, 001).
        let r = vm(&[InOut, InOut, InDrop]).check_ideal().unwrap();
        assert_eq!(r.counterexample, Some((bs("000"), bs("001"))));
    }

    #[test]
    fn code_length_examples() {
        assert_eq!(
            vm(&[InOut, InOut]).code_length(),
            CodeLength {
                bits: 6,
                kind: CodeLengthKind::Exact
            }
        );
        let f6 = GeneratorSpec::flower(6).unwrap().code_length();
        let f12 = GeneratorSpec::flower(12).unwrap().code_length();
        assert_eq!(f6, f12);
        assert_eq!(f6.kind, CodeLengthKind::Proxy);

        let two = vec![bs("0011"), bs("1100")];
        let four = vec![bs("0011"), bs("1100"), bs("0101"), bs("1010")];
        let base = GeneratorSpec::oatmeal(two.clone(), 2)
            .unwrap()
            .code_length()
            .bits;
        assert_eq!(
            GeneratorSpec::oatmeal(two, 4).unwrap().code_length().bits,
            base
        );
        assert!(GeneratorSpec::oatmeal(four, 2).unwrap().code_length().bits > base);
    }

    #[test]
    fn flower_spaces_are_full() {
        for n in [2usize, 4, 6] {
            let g = GeneratorSpec::flower(n).unwrap();
            let s = g.enumerate_space().unwrap();
            assert_eq!(s.size(), 1 << ((n / 2) * (n / 2)));
            assert!(g.check_ideal().unwrap().is_ideal());
        }
        assert_eq!(GeneratorSpec::flower(6).unwrap().input_size(), 9);
        assert_eq!(GeneratorSpec::flower(12).unwrap().input_size(), 36);
    }

    #[test]
    fn oatmeal_doubling_slots_doubles_input() {
        let parts = vec![bs("00"), bs("11")];
        let a = GeneratorSpec::oatmeal(parts.clone(), 3).unwrap();
        let b = GeneratorSpec::oatmeal(parts, 6).unwrap();
        assert_eq!(b.input_size(), 2 * a.input_size());
        assert_eq!(a.enumerate_space().unwrap().size(), 1 << 3);
        assert_eq!(b.enumerate_space().unwrap().size(), 1 << 6);
    }

    #[test]
    fn space_too_large_is_refused() {
        let g = GeneratorSpec::flower(12).unwrap();
        assert!(matches!(
            g.enumerate_space(),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn oatmeal_injective_iff_parts_distinct(
            raw in proptest::collection::vec(0u8..4, 4),
            slots in 1usize..4,
        ) {
            // Width-2 parts drawn from a 4-symbol alphabet, so duplicates are common.
            let parts: Vec<BitString> = raw
                .iter()
                .map(|&v| BitString::from_unsigned(v as u64, 2).unwrap())
                .collect();
            let g = GeneratorSpec::oatmeal(parts.clone(), slots).unwrap();
            let report = g.check_ideal().unwrap();
            prop_assert_eq!(report.injective, oatmeal::parts_distinct(&parts));
            prop_assert_eq!(g.ideal_by_construction(), Some(report.injective));
        }

        #[test]
        fn evaluate_is_pure(seed in proptest::collection::vec(any::<bool>(), 16)) {
            let g = GeneratorSpec::flower(8).unwrap();
            let s = BitString::from_bits(seed);
            prop_assert_eq!(g.evaluate(&s).unwrap(), g.evaluate(&s).unwrap());
        }
    }
}
