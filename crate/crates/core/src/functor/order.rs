//! Dimension-sequence comparison standing in for the functor order.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::summands::decompose;
use super::FunctorExpr;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    LexSmaller,
    LexGreater,
    DimsEqual,
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderRelation::LexSmaller => "lex-smaller",
            OrderRelation::LexGreater => "lex-greater",
            OrderRelation::DimsEqual => "dims-equal",
        })
    }
}

/// `(dim P_e(K^n))` for `e = 1..=d`.
pub fn degree_dims(p: &FunctorExpr, d: u32, n: usize) -> Result<Vec<BigUint>> {
    let dec = decompose(p)?;
    Ok((1..=d).map(|e| dec.part_dim(e, n)).collect())
}

/// Compares `p` against `q`: per-degree dimensions at `N = max(deg p, deg q,
/// 1)`, the highest degree deciding first.
pub fn compare_order(p: &FunctorExpr, q: &FunctorExpr) -> Result<OrderRelation> {
    let d = p.degree().max(q.degree());
    let n = d.max(1) as usize;
    let dp = degree_dims(p, d, n)?;
    let dq = degree_dims(q, d, n)?;
    for (a, b) in dp.iter().zip(&dq).rev() {
        match a.cmp(b) {
            core::cmp::Ordering::Less => return Ok(OrderRelation::LexSmaller),
            core::cmp::Ordering::Greater => return Ok(OrderRelation::LexGreater),
            core::cmp::Ordering::Equal => {}
        }
    }
    Ok(OrderRelation::DimsEqual)
}
