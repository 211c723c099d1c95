//! Finite-degree polynomial functors as expression trees.
//!
//! Every functor is evaluated on `K^n`. The standard basis of `P(K^n)` is
//! fixed per constructor: indices for `Const`/`Id`, concatenation for
//! `Sum`, row-major composites for `Tensor`, sorted multisets for `Sym`,
//! strictly increasing tuples for `Ext`, and for `Shift(u, c)` the standard
//! basis of `c(K^{u+n})` with the first `u` coordinates forming `U`.
//! `Quot(c, k)` is coordinatized by the adapted basis of `c` with summand `k`
//! removed.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

mod basis;
mod induced;
mod order;
mod shift;
mod sig;
mod summands;

pub use basis::{adapted_change_matrix, coordinate_name, CoordinateSystem};
pub use induced::{induced_labeled, induced_map, lift_scalars};
pub use order::{compare_order, degree_dims, OrderRelation};
pub use shift::{shift_maps, ShiftMaps};
pub use sig::{Block, Sig};
pub use summands::{decompose, summands, HomDecomposition, Summand};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctorExpr {
    Const(usize),
    Id,
    Sum(Vec<FunctorExpr>),
    Tensor(Vec<FunctorExpr>),
    Sym(usize, Box<FunctorExpr>),
    Ext(usize, Box<FunctorExpr>),
    Shift(usize, Box<FunctorExpr>),
    /// Deletes summand `k` of the normalized decomposition of the child.
    Quot(Box<FunctorExpr>, usize),
}

impl FunctorExpr {
    pub fn sym(d: usize, c: FunctorExpr) -> Self {
        FunctorExpr::Sym(d, Box::new(c))
    }

    pub fn ext(d: usize, c: FunctorExpr) -> Self {
        FunctorExpr::Ext(d, Box::new(c))
    }

    pub fn shift(u: usize, c: FunctorExpr) -> Self {
        FunctorExpr::Shift(u, Box::new(c))
    }

    pub fn quot(c: FunctorExpr, k: usize) -> Self {
        FunctorExpr::Quot(Box::new(c), k)
    }

    pub fn tensor2(a: FunctorExpr, b: FunctorExpr) -> Self {
        FunctorExpr::Tensor(alloc::vec![a, b])
    }

    /// `tensor(id,id)`, the functor carrying the symmetric/alternating split.
    pub fn is_tensor_square(&self) -> bool {
        matches!(self, FunctorExpr::Tensor(c) if c.len() == 2 && c.iter().all(|x| *x == FunctorExpr::Id))
    }

    /// Rejects empty sums and tensors, and out-of-range quotient indices.
    pub fn validate(&self) -> Result<()> {
        match self {
            FunctorExpr::Const(_) | FunctorExpr::Id => Ok(()),
            FunctorExpr::Sum(cs) | FunctorExpr::Tensor(cs) => {
                if cs.is_empty() {
                    return Err(Error::InvalidFunctor("sum/tensor needs at least one argument".into()));
                }
                cs.iter().try_for_each(FunctorExpr::validate)
            }
            FunctorExpr::Sym(_, c) | FunctorExpr::Ext(_, c) | FunctorExpr::Shift(_, c) => c.validate(),
            FunctorExpr::Quot(c, k) => {
                c.validate()?;
                let count = summands(c)?.len();
                if *k >= count {
                    return Err(Error::QuotientIndex { index: *k, count });
                }
                Ok(())
            }
        }
    }

    /// Structural degree. For a quotient, the degree of what remains.
    pub fn degree(&self) -> u32 {
        match self {
            FunctorExpr::Const(_) => 0,
            FunctorExpr::Id => 1,
            FunctorExpr::Sum(cs) => cs.iter().map(FunctorExpr::degree).max().unwrap_or(0),
            FunctorExpr::Tensor(cs) => cs.iter().map(FunctorExpr::degree).sum(),
            FunctorExpr::Sym(d, c) | FunctorExpr::Ext(d, c) => *d as u32 * c.degree(),
            FunctorExpr::Shift(_, c) => c.degree(),
            FunctorExpr::Quot(..) => summands(self)
                .map(|s| s.iter().map(|x| x.degree).max().unwrap_or(0))
                .unwrap_or(0),
        }
    }

    /// `dim P(K^n)`.
    pub fn dim(&self, n: usize) -> BigUint {
        match self {
            FunctorExpr::Const(m) => BigUint::from(*m),
            FunctorExpr::Id => BigUint::from(n),
            FunctorExpr::Sum(cs) => cs.iter().map(|c| c.dim(n)).sum(),
            FunctorExpr::Tensor(cs) => cs.iter().map(|c| c.dim(n)).product(),
            FunctorExpr::Sym(d, c) => {
                let m = c.dim(n);
                if m.is_zero() {
                    return if *d == 0 { BigUint::one() } else { BigUint::zero() };
                }
                binomial(&(m + *d - 1u32), *d)
            }
            FunctorExpr::Ext(d, c) => binomial(&c.dim(n), *d),
            FunctorExpr::Shift(u, c) => c.dim(n + u),
            FunctorExpr::Quot(c, k) => {
                let whole = c.dim(n);
                match summands(c) {
                    Ok(s) if *k < s.len() => whole - s[*k].functor.dim(n),
                    _ => whole,
                }
            }
        }
    }

    /// `dim P(K^n)` as a machine integer; errors when it does not fit.
    pub fn dim_usize(&self, n: usize) -> Result<usize> {
        self.dim(n)
            .to_usize()
            .ok_or_else(|| Error::InvalidInput("dimension too large".into()))
    }

    /// Light normalization used for summand functors: folds constants,
    /// flattens tensors, and evaluates `Sym`/`Ext` of constants.
    pub fn simplify(&self) -> FunctorExpr {
        use FunctorExpr::*;
        match self {
            Const(_) | Id => self.clone(),
            Sum(cs) => {
                let mut out = Vec::new();
                for c in cs.iter().map(FunctorExpr::simplify) {
                    match c {
                        Const(0) => {}
                        Sum(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                match out.len() {
                    0 => Const(0),
                    1 => out.pop().unwrap(),
                    _ => Sum(out),
                }
            }
            Tensor(cs) => {
                let mut scalar: usize = 1;
                let mut rest = Vec::new();
                let mut push = |c: FunctorExpr, rest: &mut Vec<FunctorExpr>| match c {
                    Const(m) => scalar = scalar.saturating_mul(m),
                    other => rest.push(other),
                };
                for c in cs.iter().map(FunctorExpr::simplify) {
                    match c {
                        Tensor(inner) => inner.into_iter().for_each(|x| push(x, &mut rest)),
                        other => push(other, &mut rest),
                    }
                }
                if scalar == 0 || rest.is_empty() {
                    return Const(if rest.is_empty() { scalar } else { 0 });
                }
                if scalar != 1 {
                    rest.insert(0, Const(scalar));
                }
                if rest.len() == 1 {
                    rest.pop().unwrap()
                } else {
                    Tensor(rest)
                }
            }
            Sym(d, c) | Ext(d, c) => {
                let is_sym = matches!(self, Sym(..));
                let c = c.simplify();
                match (*d, &c) {
                    (0, _) => Const(1),
                    (1, _) => c,
                    (_, Const(m)) => {
                        let dim = if is_sym {
                            FunctorExpr::sym(*d, Const(*m)).dim(0)
                        } else {
                            FunctorExpr::ext(*d, Const(*m)).dim(0)
                        };
                        Const(dim.to_usize().unwrap_or(usize::MAX))
                    }
                    _ if is_sym => FunctorExpr::sym(*d, c),
                    _ => FunctorExpr::ext(*d, c),
                }
            }
            Shift(0, c) => c.simplify(),
            Shift(u, c) => FunctorExpr::shift(*u, c.simplify()),
            Quot(c, k) => FunctorExpr::quot(c.simplify(), *k),
        }
    }
}

pub(crate) fn binomial(n: &BigUint, k: usize) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, cs: &[FunctorExpr]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
        match self {
            FunctorExpr::Const(m) => write!(f, "const({m})"),
            FunctorExpr::Id => write!(f, "id"),
            FunctorExpr::Sum(cs) => list(f, "sum", cs),
            FunctorExpr::Tensor(cs) => list(f, "tensor", cs),
            FunctorExpr::Sym(d, c) => write!(f, "sym({d},{c})"),
            FunctorExpr::Ext(d, c) => write!(f, "ext({d},{c})"),
            FunctorExpr::Shift(u, c) => write!(f, "shift({u},{c})"),
            FunctorExpr::Quot(c, k) => write!(f, "quot({c},{k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::FunctorExpr::*;
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn tt() -> FunctorExpr {
        FunctorExpr::tensor2(Id, Id)
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(FunctorExpr::sym(2, Id).dim(3), BigUint::from(6u32));
        assert_eq!(FunctorExpr::ext(2, Id).dim(1), BigUint::zero());
        assert_eq!(Const(5).dim(9), BigUint::from(5u32));
        for n in 0..7usize {
            assert_eq!(FunctorExpr::shift(2, tt()).dim(n), BigUint::from((n + 2) * (n + 2)));
        }
    }

    #[test]
    fn structural_degrees() {
        assert_eq!(FunctorExpr::sym(3, Id).degree(), 3);
        assert_eq!(Sum(vec![FunctorExpr::sym(2, Id), Id]).degree(), 2);
        assert_eq!(FunctorExpr::shift(2, tt()).degree(), 2);
        assert_eq!(Const(4).degree(), 0);
        assert_eq!(FunctorExpr::tensor2(Id, FunctorExpr::ext(2, Id)).degree(), 3);
    }

    #[test]
    fn display_matches_grammar() {
        let e = FunctorExpr::quot(FunctorExpr::shift(2, tt()), 5);
        assert_eq!(format!("{e}"), "quot(shift(2,tensor(id,id)),5)");
    }

    #[test]
    fn simplification() {
        let e = FunctorExpr::Tensor(vec![Const(2), FunctorExpr::sym(1, Id), Const(3)]);
        assert_eq!(e.simplify(), FunctorExpr::tensor2(Const(6), Id));
        assert_eq!(FunctorExpr::ext(2, Const(2)).simplify(), Const(1));
        assert_eq!(FunctorExpr::sym(2, Const(2)).simplify(), Const(3));
        assert_eq!(FunctorExpr::tensor2(Const(0), Id).simplify(), Const(0));
    }

    #[test]
    fn validation() {
        assert!(Sum(vec![]).validate().is_err());
        assert_eq!(
            FunctorExpr::quot(tt(), 2).validate(),
            Err(Error::QuotientIndex { index: 2, count: 2 })
        );
        assert!(FunctorExpr::quot(FunctorExpr::shift(2, tt()), 5).validate().is_ok());
    }
}
