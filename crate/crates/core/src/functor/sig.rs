//! Summand signatures.
//!
//! A signature names the fine summand an adapted basis vector lives in. Shift
//! blocks are identified by their absolute nesting depth (outermost shift is
//! 1); the remaining coordinates form the `Var` block.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Shift(usize),
    Var,
}

impl Ord for Block {
    /// Layout order: innermost shift block first, `Var` last.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Block::Shift(a), Block::Shift(b)) => b.cmp(a),
            (Block::Shift(_), Block::Var) => Ordering::Less,
            (Block::Var, Block::Shift(_)) => Ordering::Greater,
            (Block::Var, Block::Var) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Block {
    fn coarsen(self, s: usize) -> Block {
        match self {
            Block::Shift(id) if id <= s => Block::Var,
            Block::Shift(id) => Block::Shift(id - s),
            Block::Var => Block::Var,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sig {
    Unit,
    Leaf(Block),
    Branch(usize, Box<Sig>),
    Tuple(Vec<Sig>),
    SymMulti(Vec<Sig>),
    ExtMulti(Vec<Sig>),
    SymPair(Block, Block),
    AltPair(Block, Block),
}

impl Sig {
    /// Number of `Var` leaves: the homogeneous degree of the summand.
    pub fn degree(&self) -> u32 {
        let var = |b: &Block| u32::from(*b == Block::Var);
        match self {
            Sig::Unit => 0,
            Sig::Leaf(b) => var(b),
            Sig::Branch(_, s) => s.degree(),
            Sig::Tuple(v) | Sig::SymMulti(v) | Sig::ExtMulti(v) => v.iter().map(Sig::degree).sum(),
            Sig::SymPair(a, b) | Sig::AltPair(a, b) => var(a) + var(b),
        }
    }

    /// Forgets the outermost `s` shift blocks (they join `Var`) and
    /// renumbers the rest.
    pub fn coarsen(&self, s: usize) -> Sig {
        let pair = |a: &Block, b: &Block| {
            let (a, b) = (a.coarsen(s), b.coarsen(s));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let sorted = |v: &[Sig]| {
            let mut w: Vec<Sig> = v.iter().map(|x| x.coarsen(s)).collect();
            w.sort();
            w
        };
        match self {
            Sig::Unit => Sig::Unit,
            Sig::Leaf(b) => Sig::Leaf(b.coarsen(s)),
            Sig::Branch(k, x) => Sig::Branch(*k, Box::new(x.coarsen(s))),
            Sig::Tuple(v) => Sig::Tuple(v.iter().map(|x| x.coarsen(s)).collect()),
            Sig::SymMulti(v) => Sig::SymMulti(sorted(v)),
            Sig::ExtMulti(v) => Sig::ExtMulti(sorted(v)),
            Sig::SymPair(a, b) => {
                let (a, b) = pair(a, b);
                Sig::SymPair(a, b)
            }
            Sig::AltPair(a, b) => {
                let (a, b) = pair(a, b);
                Sig::AltPair(a, b)
            }
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Shift(id) => write!(f, "U{id}"),
            Block::Var => write!(f, "V"),
        }
    }
}

impl fmt::Display for Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, open: &str, sep: &str, v: &[Sig]| {
            write!(f, "{open}")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")
        };
        match self {
            Sig::Unit => write!(f, "1"),
            Sig::Leaf(b) => write!(f, "{b}"),
            Sig::Branch(k, s) => write!(f, "b{k}:{s}"),
            Sig::Tuple(v) => list(f, "[", " x ", v),
            Sig::SymMulti(v) => list(f, "S[", " ", v),
            Sig::ExtMulti(v) => list(f, "L[", " ", v),
            Sig::SymPair(a, b) => write!(f, "sym({a},{b})"),
            Sig::AltPair(a, b) => write!(f, "alt({a},{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn layout_order_puts_innermost_first() {
        let mut v = vec![Block::Var, Block::Shift(1), Block::Shift(2)];
        v.sort();
        assert_eq!(v, [Block::Shift(2), Block::Shift(1), Block::Var]);
    }

    #[test]
    fn coarsening_merges_outer_blocks() {
        let s = Sig::AltPair(Block::Shift(2), Block::Shift(1));
        assert_eq!(s.coarsen(1), Sig::AltPair(Block::Shift(1), Block::Var));
        assert_eq!(s.coarsen(2), Sig::AltPair(Block::Var, Block::Var));
        assert_eq!(s.degree(), 0);
        assert_eq!(s.coarsen(2).degree(), 2);
    }
}
