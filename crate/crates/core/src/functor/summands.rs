//! Normalized decomposition into homogeneous labeled summands.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::sig::{Block, Sig};
use super::FunctorExpr;
use crate::error::{Error, Result};

/// One summand of the normalized decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub index: usize,
    pub sig: Sig,
    /// The summand as a homogeneous functor of the `Var` block, with the
    /// shift blocks appearing as constant factors.
    pub functor: FunctorExpr,
    pub degree: u32,
}

impl Summand {
    pub fn label(&self) -> String {
        format!("s{}", self.index)
    }

    pub fn dim(&self, n: usize) -> BigUint {
        self.functor.dim(n)
    }
}

/// Shift blocks in layout order (innermost first) with their sizes.
pub(crate) type Ctx = [(usize, usize)];

pub(crate) fn push_shift(ctx: &Ctx, u: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(ctx.len() + 1);
    out.push((ctx.len() + 1, u));
    out.extend_from_slice(ctx);
    out
}

struct Raw {
    sig: Sig,
    functor: FunctorExpr,
}

fn is_zero_functor(f: &FunctorExpr) -> bool {
    f.dim(f.degree() as usize + 1) == BigUint::default()
}

fn keep(sig: Sig, functor: FunctorExpr, out: &mut Vec<Raw>) {
    let functor = functor.simplify();
    if !is_zero_functor(&functor) {
        out.push(Raw { sig, functor });
    }
}

/// Count vectors `c` of length `k` with sum `d`, first entry largest first.
fn compositions(k: usize, d: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(k - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn raw_summands(expr: &FunctorExpr, ctx: &Ctx) -> Result<Vec<Raw>> {
    use FunctorExpr::*;
    let mut out = Vec::new();
    match expr {
        Const(m) => keep(Sig::Unit, Const(*m), &mut out),
        Id => {
            for (b, f) in blocks(ctx) {
                keep(Sig::Leaf(b), f, &mut out);
            }
        }
        Sum(cs) => {
            for (k, c) in cs.iter().enumerate() {
                for r in raw_summands(c, ctx)? {
                    out.push(Raw {
                        sig: Sig::Branch(k, alloc::boxed::Box::new(r.sig)),
                        functor: r.functor,
                    });
                }
            }
        }
        Tensor(_) if expr.is_tensor_square() => {
            let bl = blocks(ctx);
            for i in 0..bl.len() {
                for j in i..bl.len() {
                    let (bi, fi) = bl[i].clone();
                    let (bj, fj) = bl[j].clone();
                    if i == j {
                        keep(Sig::SymPair(bi, bj), FunctorExpr::sym(2, fi.clone()), &mut out);
                        keep(Sig::AltPair(bi, bj), FunctorExpr::ext(2, fi), &mut out);
                    } else {
                        let t = FunctorExpr::tensor2(fi, fj);
                        keep(Sig::SymPair(bi, bj), t.clone(), &mut out);
                        keep(Sig::AltPair(bi, bj), t, &mut out);
                    }
                }
            }
        }
        Tensor(cs) => {
            let mut acc: Vec<(Vec<Sig>, Vec<FunctorExpr>)> = vec![(Vec::new(), Vec::new())];
            for c in cs {
                let parts = raw_summands(c, ctx)?;
                let mut next = Vec::with_capacity(acc.len() * parts.len());
                for (sigs, fs) in &acc {
                    for p in &parts {
                        let mut s2 = sigs.clone();
                        s2.push(p.sig.clone());
                        let mut f2 = fs.clone();
                        f2.push(p.functor.clone());
                        next.push((s2, f2));
                    }
                }
                acc = next;
            }
            for (sigs, fs) in acc {
                keep(Sig::Tuple(sigs), Tensor(fs), &mut out);
            }
        }
        Sym(d, c) | Ext(d, c) => {
            let is_sym = matches!(expr, Sym(..));
            let parts = raw_summands(c, ctx)?;
            for comp in compositions(parts.len(), *d) {
                let mut sigs = Vec::new();
                let mut factors = Vec::new();
                for (p, &k) in parts.iter().zip(&comp) {
                    if k == 0 {
                        continue;
                    }
                    sigs.extend(core::iter::repeat_n(p.sig.clone(), k));
                    factors.push(if is_sym {
                        FunctorExpr::sym(k, p.functor.clone())
                    } else {
                        FunctorExpr::ext(k, p.functor.clone())
                    });
                }
                sigs.sort();
                let functor = if factors.is_empty() { Const(1) } else { Tensor(factors) };
                let sig = if is_sym {
                    Sig::SymMulti(sigs)
                } else {
                    Sig::ExtMulti(sigs)
                };
                keep(sig, functor, &mut out);
            }
        }
        Shift(u, c) => return raw_summands(c, &push_shift(ctx, *u)),
        Quot(c, k) => {
            let target = quotient_target(c, *k)?;
            for r in raw_summands(c, ctx)? {
                if r.sig.coarsen(ctx.len()) != target {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

/// Signature of the deleted summand of `quot(c, k)`.
pub(crate) fn quotient_target(c: &FunctorExpr, k: usize) -> Result<Sig> {
    let coarse = raw_summands(c, &[])?;
    let count = coarse.len();
    coarse
        .into_iter()
        .nth(k)
        .map(|r| r.sig)
        .ok_or(Error::QuotientIndex { index: k, count })
}

/// Blocks of the identity functor in layout order, with the functor each
/// contributes (`Const(u)` for a shift block, `Id` for `Var`).
fn blocks(ctx: &Ctx) -> Vec<(Block, FunctorExpr)> {
    let mut v: Vec<(Block, FunctorExpr)> = ctx
        .iter()
        .filter(|(_, u)| *u > 0)
        .map(|&(id, u)| (Block::Shift(id), FunctorExpr::Const(u)))
        .collect();
    v.push((Block::Var, FunctorExpr::Id));
    v
}

/// The normalized summands of `expr`, in index order.
pub fn summands(expr: &FunctorExpr) -> Result<Vec<Summand>> {
    Ok(raw_summands(expr, &[])?
        .into_iter()
        .enumerate()
        .map(|(index, r)| Summand {
            index,
            degree: r.sig.degree(),
            sig: r.sig,
            functor: r.functor,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDecomposition {
    pub functor: FunctorExpr,
    /// Degree `e` to the summands making up `P_e`.
    pub parts: BTreeMap<u32, Vec<Summand>>,
}

impl HomDecomposition {
    pub fn summands(&self) -> impl Iterator<Item = &Summand> {
        self.parts.values().flatten()
    }

    pub fn part_dim(&self, e: u32, n: usize) -> BigUint {
        self.parts
            .get(&e)
            .map(|v| v.iter().map(|s| s.dim(n)).sum())
            .unwrap_or_default()
    }

    pub fn total_dim(&self, n: usize) -> BigUint {
        self.summands().map(|s| s.dim(n)).sum()
    }

    pub fn top_degree(&self) -> u32 {
        self.parts.keys().next_back().copied().unwrap_or(0)
    }
}

pub fn decompose(expr: &FunctorExpr) -> Result<HomDecomposition> {
    expr.validate()?;
    let mut parts: BTreeMap<u32, Vec<Summand>> = BTreeMap::new();
    for s in summands(expr)? {
        parts.entry(s.degree).or_default().push(s);
    }
    Ok(HomDecomposition {
        functor: expr.clone(),
        parts,
    })
}
