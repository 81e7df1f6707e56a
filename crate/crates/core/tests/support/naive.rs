//! Reference enumerator for description tables.
//!
//! Deliberately shares nothing with the library search: its own interpreter,
//! its own string handling, no pruning. Every (program, input) pair with
//! `|program| + |input| <= cap` is executed and the minimum description kept.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Shortest description found: (k, program bits, input bits).
pub type Entry = (usize, String, String);

fn bits(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if value >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Runs `program` on `input`. Returns the output only when execution
/// succeeds and consumes the whole input.
pub fn run(program: &str, input: &str) -> Option<String> {
    let code: Vec<char> = program.chars().collect();
    if !code.len().is_multiple_of(3) {
        return None;
    }
    let input: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let mut out: Vec<char> = Vec::new();
    for op in code.chunks(3) {
        let op: String = op.iter().collect();
        match op.as_str() {
            "000" => break,
            "001" => out.push('0'),
            "010" => out.push('1'),
            "011" => {
                out.push(*input.get(pos)?);
                pos += 1;
            }
            "100" => {
                if out.is_empty() {
                    return None;
                }
                out.extend(out.clone());
            }
            "101" => out.push(*out.last()?),
            "110" => out.push(if *out.last()? == '0' { '1' } else { '0' }),
            "111" => {
                input.get(pos)?;
                pos += 1;
            }
            _ => unreachable!(),
        }
    }
    (pos == input.len()).then(|| out.into_iter().collect())
}

/// Every artefact with a description of total length at most `cap`, with its
/// minimum under (k, program, input).
pub fn table(cap: usize) -> BTreeMap<String, Entry> {
    let mut best: BTreeMap<String, Entry> = BTreeMap::new();
    for plen in (0..=cap).step_by(3) {
        for p in 0..1u64 << plen {
            let program = bits(p, plen);
            for ilen in 0..=cap - plen {
                for i in 0..1u64 << ilen {
                    let input = bits(i, ilen);
                    let Some(artefact) = run(&program, &input) else {
                        continue;
                    };
                    let candidate = (plen + ilen, program.clone(), input);
                    match best.get(&artefact) {
                        Some(current) if *current <= candidate => {}
                        _ => {
                            best.insert(artefact, candidate);
                        }
                    }
                }
            }
        }
    }
    best
}

/// Number of admissible (program, input) pairs with total length `<= budget`.
pub fn pair_count(budget: usize) -> u128 {
    let mut n = 0;
    for plen in (0..=budget).step_by(3) {
        for p in 0..1u64 << plen {
            let program = bits(p, plen);
            for ilen in 0..=budget - plen {
                for i in 0..1u64 << ilen {
                    if run(&program, &bits(i, ilen)).is_some() {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}
