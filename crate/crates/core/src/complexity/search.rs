//! Depth-first enumeration of descriptions.
//!
//! Every node of the search tree is itself a program: the instruction prefix
//! walked so far. Because execution is branch-free, the output length after
//! each step is the same for every input, so a prefix that hits an operand
//! fault makes all of its extensions fault too and the whole subtree is cut.

use crate::vm::Instruction;

/// Structural state after running a fault-free, HALT-free prefix.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Node {
    pub instructions: usize,
    pub out_len: usize,
    pub arity: usize,
}

impl Node {
    pub const ROOT: Node = Node {
        instructions: 0,
        out_len: 0,
        arity: 0,
    };

    #[inline]
    pub fn cost(&self) -> usize {
        3 * self.instructions + self.arity
    }

    /// The node reached by appending `ins`, or `None` on an operand fault.
    /// `ins` must not be HALT.
    #[inline]
    pub fn step(&self, ins: Instruction) -> Option<Node> {
        if ins.needs_output() && self.out_len == 0 {
            return None;
        }
        let (out_len, arity) = match ins {
            Instruction::Halt => unreachable!("HALT is handled by the caller"),
            Instruction::Out0
            | Instruction::Out1
            | Instruction::RepLast
            | Instruction::FlipLast => (self.out_len + 1, self.arity),
            Instruction::InOut => (self.out_len + 1, self.arity + 1),
            Instruction::InDrop => (self.out_len, self.arity + 1),
            Instruction::Dup => (self.out_len * 2, self.arity),
        };
        Some(Node {
            instructions: self.instructions + 1,
            out_len,
            arity,
        })
    }
}

/// Visits every fault-free, HALT-free program reachable from `prefix` whose
/// description cost fits in `cap`, including `prefix` itself.
pub(crate) fn walk<F>(prefix: &mut Vec<Instruction>, node: Node, cap: usize, visit: &mut F)
where
    F: FnMut(&[Instruction], &Node),
{
    if node.cost() > cap {
        return;
    }
    visit(prefix, &node);
    for ins in &Instruction::ALL[1..] {
        if let Some(next) = node.step(*ins) {
            if next.cost() <= cap {
                prefix.push(*ins);
                walk(prefix, next, cap, visit);
                prefix.pop();
            }
        }
    }
}

/// Counts admissible (program, input) pairs of total length at most `cap`.
///
/// Programs containing a HALT are counted in closed form: whatever follows
/// the HALT is dead code, so a halted prefix of `n` instructions and arity
/// `r` stands for `8^j` programs with `j` trailing instructions each, all
/// sharing the same `2^r` admissible inputs.
pub(crate) fn count_descriptions(cap: usize) -> u128 {
    let mut total: u128 = 0;
    let mut prefix = Vec::new();
    walk(&mut prefix, Node::ROOT, cap, &mut |_, node| {
        let inputs = 1u128 << node.arity;
        total += inputs;
        let mut instructions = node.instructions + 1;
        let mut programs: u128 = 1;
        while 3 * instructions + node.arity <= cap {
            total += programs * inputs;
            programs *= 8;
            instructions += 1;
        }
    });
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_visits_empty_program() {
        let mut seen = Vec::new();
        walk(&mut Vec::new(), Node::ROOT, 0, &mut |p, n| {
            seen.push((p.to_vec(), n.cost()))
        });
        assert_eq!(seen, vec![(vec![], 0)]);
    }

    #[test]
    fn counts_match_hand_enumeration() {
        assert_eq!(count_descriptions(0), 1);
        assert_eq!(count_descriptions(2), 1);
        assert_eq!(count_descriptions(3), 4);
        assert_eq!(count_descriptions(4), 8);
        assert_eq!(count_descriptions(5), 8);
    }
}
