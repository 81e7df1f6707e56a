//! A loop-free bit machine.
//!
//! Programs are strings of 3-bit opcodes executed left to right, one step per
//! instruction, with an implicit halt after the last one. There are no jumps,
//! so every run terminates within `instructions.len()` steps and whether a run
//! faults depends only on the program, never on the input values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitstring::BitString;
use crate::error::{Error, Fault, Result};

/// Bits per encoded instruction.
pub const OPCODE_BITS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Instruction {
    Halt = 0b000,
    Out0 = 0b001,
    Out1 = 0b010,
    InOut = 0b011,
    Dup = 0b100,
    RepLast = 0b101,
    FlipLast = 0b110,
    InDrop = 0b111,
}

impl Instruction {
    /// All opcodes in encoding order.
    pub const ALL: [Instruction; 8] = [
        Instruction::Halt,
        Instruction::Out0,
        Instruction::Out1,
        Instruction::InOut,
        Instruction::Dup,
        Instruction::RepLast,
        Instruction::FlipLast,
        Instruction::InDrop,
    ];

    #[inline]
    pub fn from_code(code: u8) -> Instruction {
        Self::ALL[(code & 0b111) as usize]
    }

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Whether the instruction reads one input bit.
    #[inline]
    pub fn reads_input(self) -> bool {
        matches!(self, Instruction::InOut | Instruction::InDrop)
    }

    /// Whether the instruction needs a non-empty output to act on.
    #[inline]
    pub fn needs_output(self) -> bool {
        matches!(
            self,
            Instruction::Dup | Instruction::RepLast | Instruction::FlipLast
        )
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            Instruction::Halt => "HALT",
            Instruction::Out0 => "OUT0",
            Instruction::Out1 => "OUT1",
            Instruction::InOut => "INOUT",
            Instruction::Dup => "DUP",
            Instruction::RepLast => "REPLAST",
            Instruction::FlipLast => "FLIPLAST",
            Instruction::InDrop => "INDROP",
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for Instruction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.mnemonic().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown mnemonic {s:?}")))
    }
}

/// A decoded program together with its raw bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Program {
    raw: BitString,
    instructions: Vec<Instruction>,
}

/// Result of running a program on an input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionOutcome {
    pub result: std::result::Result<BitString, Fault>,
    pub bits_consumed: usize,
}

impl ExecutionOutcome {
    pub fn is_success(&self) -> bool {
        self.result.is_ok()
    }

    pub fn output(&self) -> Option<&BitString> {
        self.result.as_ref().ok()
    }
}

impl Program {
    /// Decodes 3-bit opcodes MSB-first. Lengths that are not a multiple of
    /// three denote no program.
    pub fn decode(raw: &BitString) -> Result<Program> {
        if !raw.len().is_multiple_of(OPCODE_BITS) {
            return Err(Error::InvalidProgramLength(raw.len()));
        }
        let bits: Vec<bool> = raw.iter().collect();
        let instructions = bits
            .chunks(OPCODE_BITS)
            .map(|c| Instruction::from_code(((c[0] as u8) << 2) | ((c[1] as u8) << 1) | c[2] as u8))
            .collect();
        Ok(Program {
            raw: raw.clone(),
            instructions,
        })
    }

    pub fn from_instructions(instructions: &[Instruction]) -> Program {
        let mut raw = BitString::with_capacity(instructions.len() * OPCODE_BITS);
        for i in instructions {
            let c = i.code();
            raw.push(c & 0b100 != 0);
            raw.push(c & 0b010 != 0);
            raw.push(c & 0b001 != 0);
        }
        Program {
            raw,
            instructions: instructions.to_vec(),
        }
    }

    pub fn raw(&self) -> &BitString {
        &self.raw
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    /// Program length in bits.
    pub fn len_bits(&self) -> usize {
        self.raw.len()
    }

    /// Instructions that actually run: everything before the first HALT.
    pub fn live(&self) -> &[Instruction] {
        live_prefix(&self.instructions)
    }

    /// Number of input bits any successful run consumes.
    pub fn input_arity(&self) -> usize {
        self.live().iter().filter(|i| i.reads_input()).count()
    }

    /// Checks the input-independent fault condition without running on data.
    ///
    /// Returns the arity when the program runs fault-free on inputs of that
    /// length, or the operand fault every such run hits.
    pub fn structural_check(&self) -> std::result::Result<usize, Fault> {
        let mut out_len = 0usize;
        let mut arity = 0usize;
        for &ins in self.live() {
            if ins.needs_output() && out_len == 0 {
                return Err(Fault::EmptyOutputOperand);
            }
            match ins {
                Instruction::Halt => unreachable!("live prefix excludes HALT"),
                Instruction::Out0
                | Instruction::Out1
                | Instruction::RepLast
                | Instruction::FlipLast => out_len += 1,
                Instruction::InOut => {
                    arity += 1;
                    out_len += 1;
                }
                Instruction::InDrop => arity += 1,
                Instruction::Dup => out_len *= 2,
            }
        }
        Ok(arity)
    }

    pub fn execute(&self, input: &BitString) -> ExecutionOutcome {
        let mut out = BitString::new();
        match execute_into(self.live(), input, &mut out) {
            Ok(consumed) => ExecutionOutcome {
                result: Ok(out),
                bits_consumed: consumed,
            },
            Err((fault, consumed)) => ExecutionOutcome {
                result: Err(fault),
                bits_consumed: consumed,
            },
        }
    }

    /// A run counts as a description only if it succeeds and reads every input bit.
    pub fn admissible(&self, input: &BitString) -> bool {
        let out = self.execute(input);
        out.is_success() && out.bits_consumed == input.len()
    }
}

/// Instructions before the first HALT.
#[inline]
pub fn live_prefix(instructions: &[Instruction]) -> &[Instruction] {
    let end = instructions
        .iter()
        .position(|&i| i == Instruction::Halt)
        .unwrap_or(instructions.len());
    &instructions[..end]
}

/// Runs `live` (which must contain no HALT) on `input`, appending to `out`.
///
/// On success returns the number of input bits read. On a fault returns the
/// fault and the bits read before it; `out` is then left in an unspecified
/// partial state.
pub(crate) fn execute_into(
    live: &[Instruction],
    input: &BitString,
    out: &mut BitString,
) -> std::result::Result<usize, (Fault, usize)> {
    let mut pos = 0usize;
    for &ins in live {
        match ins {
            Instruction::Halt => break,
            Instruction::Out0 => out.push(false),
            Instruction::Out1 => out.push(true),
            Instruction::InOut | Instruction::InDrop => {
                let bit = input.get(pos).ok_or((Fault::InputExhausted, pos))?;
                pos += 1;
                if ins == Instruction::InOut {
                    out.push(bit);
                }
            }
            Instruction::Dup => {
                if out.is_empty() {
                    return Err((Fault::EmptyOutputOperand, pos));
                }
                out.duplicate();
            }
            Instruction::RepLast | Instruction::FlipLast => {
                let last = out.last().ok_or((Fault::EmptyOutputOperand, pos))?;
                out.push(if ins == Instruction::RepLast {
                    last
                } else {
                    !last
                });
            }
        }
    }
    Ok(pos)
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.raw, f)
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, i) in self.instructions.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            f.write_str(i.mnemonic())?;
        }
        f.write_str("]")
    }
}

impl FromStr for Program {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Program::decode(&s.parse()?)
    }
}

impl Serialize for Program {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Program {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BitString::deserialize(deserializer)?;
        Program::decode(&raw).map_err(serde::de::Error::custom)
    }
}
