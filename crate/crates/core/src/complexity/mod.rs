//! Kolmogorov complexity relative to the bit machine.
//!
//! [`DescriptionTable`] holds the exact K of every artefact whose shortest
//! description fits under a cap, found by exhaustive search. The
//! [`compress`] submodule provides compression-based upper-bound estimates for
//! artefacts far beyond that reach.

pub mod compress;
pub(crate) mod search;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::vm::{execute_into, Instruction, Program};
use search::{walk, Node};

pub use compress::{k_upper_estimate, ncd, BitLz, CompressorContract, Estimate};

/// Default ceiling on total description length for exhaustive search.
pub const DEFAULT_HARD_LIMIT: usize = 24;

/// Absolute ceiling: packed witnesses must fit a machine word.
const PACKED_LIMIT: usize = 60;

/// Shortest known description of one artefact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Description {
    pub artefact: BitString,
    pub k: usize,
    pub program: BitString,
    pub input: BitString,
}

/// A witness packed into two words, right-aligned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Witness {
    program: u64,
    input: u64,
    program_len: u8,
    input_len: u8,
}

impl Witness {
    fn k(&self) -> usize {
        self.program_len as usize + self.input_len as usize
    }

    fn program_bits(&self) -> BitString {
        BitString::from_unsigned(self.program, self.program_len as usize).expect("packed width")
    }

    fn input_bits(&self) -> BitString {
        BitString::from_unsigned(self.input, self.input_len as usize).expect("packed width")
    }
}

/// Lexicographic comparison of two right-aligned packed bit strings.
fn cmp_packed(a: u64, la: u8, b: u64, lb: u8) -> Ordering {
    let m = la.min(lb);
    let ta = if m == 0 { 0 } else { a >> (la - m) };
    let tb = if m == 0 { 0 } else { b >> (lb - m) };
    ta.cmp(&tb).then(la.cmp(&lb))
}

/// Total order on descriptions: cost, then program, then input.
fn cmp_witness(a: &Witness, b: &Witness) -> Ordering {
    a.k()
        .cmp(&b.k())
        .then_with(|| cmp_packed(a.program, a.program_len, b.program, b.program_len))
        .then_with(|| cmp_packed(a.input, a.input_len, b.input, b.input_len))
}

fn offer(map: &mut HashMap<BitString, Witness>, artefact: BitString, w: Witness) {
    use std::collections::hash_map::Entry;
    match map.entry(artefact) {
        Entry::Vacant(v) => {
            v.insert(w);
        }
        Entry::Occupied(mut o) => {
            if cmp_witness(&w, o.get()) == Ordering::Less {
                o.insert(w);
            }
        }
    }
}

fn merge(
    mut a: HashMap<BitString, Witness>,
    b: HashMap<BitString, Witness>,
) -> HashMap<BitString, Witness> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, w) in b {
        offer(&mut a, k, w);
    }
    a
}

fn pack(prefix: &[Instruction]) -> u64 {
    prefix
        .iter()
        .fold(0u64, |acc, i| (acc << 3) | i.code() as u64)
}

/// Artefact → shortest description, exhaustive up to `cap` description bits.
#[derive(Debug, Clone)]
pub struct DescriptionTable {
    cap: usize,
    entries: HashMap<BitString, Witness>,
}

/// Outcome of an exact K lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KExact {
    Found(Description),
    /// K exceeds the cap in this machine.
    ExceedsCap(usize),
}

impl KExact {
    pub fn k(&self) -> Option<usize> {
        match self {
            KExact::Found(d) => Some(d.k),
            KExact::ExceedsCap(_) => None,
        }
    }
}

impl DescriptionTable {
    /// Builds the table with the default hard limit.
    pub fn build(cap: usize) -> Result<DescriptionTable> {
        Self::build_with_limit(cap, DEFAULT_HARD_LIMIT)
    }

    /// Searches every admissible description of total length at most `cap`,
    /// keeping for each artefact the minimum under (cost, program, input).
    ///
    /// Work is split by the first two instructions and runs on the current
    /// rayon pool. The result does not depend on the schedule since the
    /// merge keeps a total-order minimum.
    pub fn build_with_limit(cap: usize, hard_limit: usize) -> Result<DescriptionTable> {
        let limit = hard_limit.min(PACKED_LIMIT);
        if cap > limit {
            return Err(Error::CapExceeded {
                what: "description cap",
                requested: cap,
                cap: limit,
            });
        }

        // Depth 0 and 1 nodes are visited here; depth 2 subtrees in parallel.
        let mut roots = Vec::new();
        let mut shallow: HashMap<BitString, Witness> = HashMap::new();
        let mut level1 = vec![(Vec::new(), Node::ROOT)];
        for depth in 0..2 {
            let mut next = Vec::new();
            for (prefix, node) in level1 {
                if node.cost() > cap {
                    continue;
                }
                record(&prefix, &node, &mut shallow);
                for ins in &Instruction::ALL[1..] {
                    if let Some(child) = node.step(*ins) {
                        let mut p: Vec<Instruction> = prefix.clone();
                        p.push(*ins);
                        if depth == 1 {
                            roots.push((p, child));
                        } else {
                            next.push((p, child));
                        }
                    }
                }
            }
            level1 = next;
        }

        let deep = roots
            .into_par_iter()
            .map(|(mut prefix, node)| {
                let mut local = HashMap::new();
                walk(&mut prefix, node, cap, &mut |p, n| record(p, n, &mut local));
                local
            })
            .reduce(HashMap::new, merge);

        Ok(DescriptionTable {
            cap,
            entries: merge(shallow, deep),
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of distinct artefacts with K ≤ cap.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn k(&self, artefact: &BitString) -> Option<usize> {
        self.entries.get(artefact).map(Witness::k)
    }

    pub fn get(&self, artefact: &BitString) -> Option<Description> {
        self.entries.get(artefact).map(|w| Description {
            artefact: artefact.clone(),
            k: w.k(),
            program: w.program_bits(),
            input: w.input_bits(),
        })
    }

    pub fn k_exact(&self, artefact: &BitString) -> KExact {
        match self.get(artefact) {
            Some(d) => KExact::Found(d),
            None => KExact::ExceedsCap(self.cap),
        }
    }

    /// Number of distinct artefacts with K ≤ `budget` (`budget` ≤ cap).
    pub fn artefacts_within(&self, budget: usize) -> usize {
        self.entries.values().filter(|w| w.k() <= budget).count()
    }

    /// Histogram of artefact counts by exact K, indexed 0..=cap.
    pub fn k_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.cap + 1];
        for w in self.entries.values() {
            h[w.k()] += 1;
        }
        h
    }

    /// All entries sorted by (k, artefact).
    pub fn sorted(&self) -> Vec<Description> {
        let mut keys: Vec<(usize, &BitString)> =
            self.entries.iter().map(|(a, w)| (w.k(), a)).collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|(_, a)| self.get(a).expect("present"))
            .collect()
    }

    /// JSON lines `{artefact, k, program, input}` sorted by (k, artefact).
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for d in self.sorted() {
            serde_json::to_writer(&mut out, &d)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn record(prefix: &[Instruction], node: &Node, map: &mut HashMap<BitString, Witness>) {
    let program = pack(prefix);
    let program_len = (3 * prefix.len()) as u8;
    let mut out = BitString::with_capacity(node.out_len);
    for input in 0..(1u64 << node.arity) {
        out.clear_for_reuse();
        let input_bits = BitString::from_unsigned(input, node.arity).expect("arity below 64");
        execute_into(prefix, &input_bits, &mut out).expect("structurally fault-free");
        offer(
            map,
            out.clone(),
            Witness {
                program,
                input,
                program_len,
                input_len: node.arity as u8,
            },
        );
    }
}

/// Exact K of `artefact` if it is at most `cap`.
pub fn k_exact(artefact: &BitString, cap: usize) -> Result<KExact> {
    Ok(DescriptionTable::build(cap)?.k_exact(artefact))
}

/// Number of admissible (program, input) pairs with |p| + |i| ≤ `budget`.
///
/// Pairs are counted, not distinct artefacts, so this is the pigeonhole
/// ceiling on how many artefacts can have K ≤ `budget`.
pub fn description_count(budget: usize) -> Result<u128> {
    description_count_with_limit(budget, DEFAULT_HARD_LIMIT)
}

pub fn description_count_with_limit(budget: usize, hard_limit: usize) -> Result<u128> {
    if budget > hard_limit {
        return Err(Error::CapExceeded {
            what: "description length",
            requested: budget,
            cap: hard_limit,
        });
    }
    Ok(search::count_descriptions(budget))
}

/// Re-runs a description and confirms it admissibly yields its artefact.
pub fn verify_description(d: &Description) -> bool {
    let Ok(program) = Program::decode(&d.program) else {
        return false;
    };
    d.k == d.program.len() + d.input.len()
        && program.admissible(&d.input)
        && program.execute(&d.input).output() == Some(&d.artefact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn cap_zero_holds_only_the_empty_artefact() {
        let t = DescriptionTable::build(0).unwrap();
        assert_eq!(t.len(), 1);
        let d = t.get(&bs("")).unwrap();
        assert_eq!((d.k, d.program.len(), d.input.len()), (0, 0, 0));
    }

    #[test]
    fn cap_three() {
        let t = DescriptionTable::build(3).unwrap();
        let got: Vec<_> = t
            .sorted()
            .into_iter()
            .map(|d| (d.artefact.to_string(), d.k))
            .collect();
        assert_eq!(got, vec![("".into(), 0), ("0".into(), 3), ("1".into(), 3)]);
    }

    #[test]
    fn four_zeros_need_three_instructions() {
        let t = DescriptionTable::build(9).unwrap();
        let d = t.get(&bs("0000")).unwrap();
        assert_eq!(d.k, 9);
        // OUT0 OUT0 DUP ties with OUT0 DUP DUP and wins lexicographically.
        assert_eq!(d.program, bs("001001100"));
        assert!(d.input.is_empty());
        let alt: Program = "001100100".parse().unwrap();
        assert_eq!(alt.execute(&BitString::new()).result.unwrap(), bs("0000"));
    }

    #[test]
    fn k_exact_examples() {
        assert_eq!(k_exact(&bs(""), 5).unwrap().k(), Some(0));
        match k_exact(&bs("01"), 6).unwrap() {
            KExact::Found(d) => {
                assert_eq!(d.k, 6);
                assert_eq!(d.program, bs("001010"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(k_exact(&bs("0000"), 6).unwrap(), KExact::ExceedsCap(6));
    }

    #[test]
    fn description_count_examples() {
        assert_eq!(description_count(0).unwrap(), 1);
        assert_eq!(description_count(3).unwrap(), 4);
        assert_eq!(description_count(5).unwrap(), 8);
        assert!(description_count(25).is_err());
    }

    #[test]
    fn refuses_cap_over_limit() {
        assert!(matches!(
            DescriptionTable::build(25),
            Err(Error::CapExceeded {
                requested: 25,
                cap: 24,
                ..
            })
        ));
        assert!(DescriptionTable::build_with_limit(10, 8).is_err());
    }

    #[test]
    fn packed_order_is_lexicographic() {
        let cases = ["", "0", "1", "00", "01", "10", "001", "0011", "1", "110"];
        for a in cases {
            for b in cases {
                let (sa, sb) = (bs(a), bs(b));
                let pa = sa.to_unsigned().unwrap();
                let pb = sb.to_unsigned().unwrap();
                assert_eq!(
                    cmp_packed(pa, sa.len() as u8, pb, sb.len() as u8),
                    sa.cmp(&sb),
                    "{a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn every_witness_replays() {
        let t = DescriptionTable::build(12).unwrap();
        for d in t.sorted() {
            assert!(verify_description(&d), "{d:?}");
        }
    }

    #[test]
    fn tables_are_monotone_in_cap() {
        let small = DescriptionTable::build(9).unwrap();
        let big = DescriptionTable::build(13).unwrap();
        for d in small.sorted() {
            assert_eq!(big.get(&d.artefact), Some(d));
        }
    }

    #[test]
    fn distinct_artefacts_never_exceed_descriptions() {
        let t = DescriptionTable::build(14).unwrap();
        for budget in 0..=14 {
            assert!(t.artefacts_within(budget) as u128 <= description_count(budget).unwrap());
        }
    }

    #[test]
    fn zero_runs_follow_dup_chains() {
        let t = DescriptionTable::build(15).unwrap();
        for k in 0..=4 {
            let zeros = BitString::zeros(1 << k);
            assert!(t.k(&zeros).unwrap() <= 3 * (k + 1));
        }
    }

    #[test]
    fn jsonl_is_sorted_and_parses_back() {
        let t = DescriptionTable::build(7).unwrap();
        let mut buf = Vec::new();
        t.write_jsonl(&mut buf).unwrap();
        let rows: Vec<Description> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(rows.len(), t.len());
        assert!(rows
            .windows(2)
            .all(|w| (w[0].k, &w[0].artefact) < (w[1].k, &w[1].artefact)));
    }
}
