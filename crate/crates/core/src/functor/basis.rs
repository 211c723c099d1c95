//! Standard and adapted bases, and coordinate rings on them.
//!
//! The adapted basis of `P(K^n)` consists of vectors that each lie in a
//! single fine summand. It agrees with the standard basis except below
//! `tensor(id,id)`, where `E_ab + E_ba` (`a <= b`, coordinate `y_a_b`) and
//! `E_ab - E_ba` (`a < b`, coordinate `z_a_b`) replace the matrix units.
//! Adapted vectors do not depend on any surrounding shift; only their
//! signatures do.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::sig::{Block, Sig};
use super::summands::{push_shift, quotient_target, summands, Ctx, Summand};
use super::FunctorExpr;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{multisets, strict_tuples, Matrix};
use crate::poly::{GradedPoly, GradedRing, RingRef, Variable};

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub sig: Sig,
    pub tokens: Vec<String>,
}

fn block_of(ctx: &Ctx, i: usize) -> Block {
    let mut start = 0;
    for &(id, u) in ctx {
        if i < start + u {
            return Block::Shift(id);
        }
        start += u;
    }
    Block::Var
}

fn total_ctx(ctx: &Ctx) -> usize {
    ctx.iter().map(|(_, u)| u).sum()
}

/// Adapted basis elements of `expr` at dimension `n` (the full dimension at
/// this level, shift blocks included), with signatures relative to `ctx`.
pub(crate) fn elements(expr: &FunctorExpr, ctx: &Ctx, n: usize) -> Result<Vec<Elem>> {
    use FunctorExpr::*;
    debug_assert!(total_ctx(ctx) <= n);
    Ok(match expr {
        Const(m) => (0..*m)
            .map(|i| Elem {
                sig: Sig::Unit,
                tokens: vec![format!("c{}", i + 1)],
            })
            .collect(),
        Id => (0..n)
            .map(|i| Elem {
                sig: Sig::Leaf(block_of(ctx, i)),
                tokens: vec![(i + 1).to_string()],
            })
            .collect(),
        Sum(cs) => {
            let mut out = Vec::new();
            for (k, c) in cs.iter().enumerate() {
                for e in elements(c, ctx, n)? {
                    let mut tokens = vec![format!("b{k}")];
                    tokens.extend(e.tokens);
                    out.push(Elem {
                        sig: Sig::Branch(k, alloc::boxed::Box::new(e.sig)),
                        tokens,
                    });
                }
            }
            out
        }
        Tensor(_) if expr.is_tensor_square() => {
            let mut out = Vec::new();
            for (kind, strict) in [("y", false), ("z", true)] {
                for a in 0..n {
                    for b in a..n {
                        if strict && a == b {
                            continue;
                        }
                        let (ba, bb) = (block_of(ctx, a), block_of(ctx, b));
                        let sig = if strict {
                            Sig::AltPair(ba, bb)
                        } else {
                            Sig::SymPair(ba, bb)
                        };
                        out.push(Elem {
                            sig,
                            tokens: vec![kind.to_string(), (a + 1).to_string(), (b + 1).to_string()],
                        });
                    }
                }
            }
            out
        }
        Tensor(cs) => {
            let mut acc = vec![Elem {
                sig: Sig::Tuple(Vec::new()),
                tokens: Vec::new(),
            }];
            for c in cs {
                let parts = elements(c, ctx, n)?;
                let mut next = Vec::with_capacity(acc.len() * parts.len());
                for a in &acc {
                    for p in &parts {
                        let Sig::Tuple(mut sigs) = a.sig.clone() else {
                            unreachable!()
                        };
                        sigs.push(p.sig.clone());
                        let mut tokens = a.tokens.clone();
                        tokens.extend(p.tokens.iter().cloned());
                        next.push(Elem {
                            sig: Sig::Tuple(sigs),
                            tokens,
                        });
                    }
                }
                acc = next;
            }
            acc
        }
        Sym(d, c) | Ext(d, c) => {
            let is_sym = matches!(expr, Sym(..));
            let parts = elements(c, ctx, n)?;
            let combos = if is_sym {
                multisets(parts.len(), *d)
            } else {
                strict_tuples(parts.len(), *d)
            };
            combos
                .into_iter()
                .map(|combo| {
                    let mut sigs: Vec<Sig> = combo.iter().map(|&i| parts[i].sig.clone()).collect();
                    sigs.sort();
                    let tokens = if combo.is_empty() {
                        vec!["c1".to_string()]
                    } else {
                        combo.iter().flat_map(|&i| parts[i].tokens.iter().cloned()).collect()
                    };
                    Elem {
                        sig: if is_sym {
                            Sig::SymMulti(sigs)
                        } else {
                            Sig::ExtMulti(sigs)
                        },
                        tokens,
                    }
                })
                .collect()
        }
        Shift(u, c) => elements(c, &push_shift(ctx, *u), n + u)?,
        Quot(c, k) => {
            let kept = quotient_kept(c, *k, n)?;
            let all = elements(c, ctx, n)?;
            kept.into_iter().map(|i| all[i].clone()).collect()
        }
    })
}

/// Indices of adapted basis vectors of `c` surviving `quot(c, k)`.
pub(crate) fn quotient_kept(c: &FunctorExpr, k: usize, n: usize) -> Result<Vec<usize>> {
    let target = quotient_target(c, k)?;
    Ok(elements(c, &[], n)?
        .iter()
        .enumerate()
        .filter(|(_, e)| e.sig != target)
        .map(|(i, _)| i)
        .collect())
}

/// Change of basis `A`: column `j` holds the standard coordinates of adapted
/// vector `j`.
pub fn adapted_change_matrix(expr: &FunctorExpr, n: usize, field: Field) -> Result<Matrix<Scalar>> {
    use FunctorExpr::*;
    let zero = field.zero();
    Ok(match expr {
        Const(m) => Matrix::identity(*m, &zero),
        Id => Matrix::identity(n, &zero),
        Sum(cs) => {
            let blocks = cs
                .iter()
                .map(|c| adapted_change_matrix(c, n, field))
                .collect::<Result<Vec<_>>>()?;
            Matrix::block_diag(&blocks, &zero)
        }
        Tensor(_) if expr.is_tensor_square() => {
            if field.characteristic() == 2 {
                return Err(Error::CharacteristicTwo);
            }
            let cols = n * n;
            let mut a = Matrix::zeros(n * n, cols, &zero);
            let one = field.one();
            let mut col = 0;
            for a_ in 0..n {
                for b in a_..n {
                    a.set(a_ * n + b, col, one.clone());
                    a.set(b * n + a_, col, one.clone());
                    col += 1;
                }
            }
            for a_ in 0..n {
                for b in a_ + 1..n {
                    a.set(a_ * n + b, col, one.clone());
                    a.set(b * n + a_, col, -&one);
                    col += 1;
                }
            }
            a
        }
        Tensor(cs) => {
            let mut acc = Matrix::identity(1, &zero);
            for c in cs {
                acc = acc.kron(&adapted_change_matrix(c, n, field)?);
            }
            acc
        }
        Sym(d, c) => adapted_change_matrix(c, n, field)?.sym_power(*d),
        Ext(d, c) => adapted_change_matrix(c, n, field)?.ext_power(*d),
        Shift(u, c) => adapted_change_matrix(c, n + u, field)?,
        Quot(c, k) => Matrix::identity(quotient_kept(c, *k, n)?.len(), &zero),
    })
}

/// Name tokens of the standard basis.
pub(crate) fn std_tokens(expr: &FunctorExpr, n: usize) -> Result<Vec<Vec<String>>> {
    use FunctorExpr::*;
    Ok(match expr {
        Const(m) => (0..*m).map(|i| vec![format!("c{}", i + 1)]).collect(),
        Id => (0..n).map(|i| vec![(i + 1).to_string()]).collect(),
        Sum(cs) => {
            let mut out = Vec::new();
            for (k, c) in cs.iter().enumerate() {
                for t in std_tokens(c, n)? {
                    let mut v = vec![format!("b{k}")];
                    v.extend(t);
                    out.push(v);
                }
            }
            out
        }
        Tensor(cs) => {
            let mut acc: Vec<Vec<String>> = vec![Vec::new()];
            for c in cs {
                let parts = std_tokens(c, n)?;
                acc = acc
                    .iter()
                    .flat_map(|a| {
                        parts.iter().map(move |p| {
                            let mut v = a.clone();
                            v.extend(p.iter().cloned());
                            v
                        })
                    })
                    .collect();
            }
            acc
        }
        Sym(d, c) | Ext(d, c) => {
            let parts = std_tokens(c, n)?;
            let combos = if matches!(expr, Sym(..)) {
                multisets(parts.len(), *d)
            } else {
                strict_tuples(parts.len(), *d)
            };
            combos
                .into_iter()
                .map(|combo| {
                    if combo.is_empty() {
                        vec!["c1".to_string()]
                    } else {
                        combo.iter().flat_map(|&i| parts[i].iter().cloned()).collect()
                    }
                })
                .collect()
        }
        Shift(u, c) => std_tokens(c, n + u)?,
        Quot(..) => elements(expr, &[], n)?.into_iter().map(|e| e.tokens).collect(),
    })
}

/// `y_..`/`z_..` for the split tensor square, `x_..` otherwise.
pub fn coordinate_name(tokens: &[String]) -> String {
    match tokens.first().map(String::as_str) {
        Some("y") | Some("z") => tokens.join("_"),
        _ => format!("x_{}", tokens.join("_")),
    }
}

fn unique_names(tokens: Vec<Vec<String>>) -> Vec<String> {
    let names: Vec<String> = tokens.iter().map(|t| coordinate_name(t)).collect();
    let distinct: BTreeSet<&String> = names.iter().collect();
    if distinct.len() == names.len() {
        names
    } else {
        (1..=names.len()).map(|i| format!("x_{i}")).collect()
    }
}

pub(crate) fn std_labels(expr: &FunctorExpr, n: usize) -> Result<Vec<String>> {
    Ok(unique_names(std_tokens(expr, n)?))
}

/// The coordinate ring `K[P(K^n)]` on the adapted basis, graded by summand
/// degree, together with the change of basis to standard coordinates.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    pub functor: FunctorExpr,
    pub n: usize,
    pub summands: Vec<Summand>,
    /// Adapted coordinates; part label `s<k>` and weight = degree of summand `k`.
    pub ring: RingRef,
    /// Summand index of each adapted coordinate.
    pub element_summand: Vec<usize>,
    pub std_names: Vec<String>,
    /// Standard coordinates of the adapted basis vectors (columns).
    pub change: Matrix<Scalar>,
    pub change_inv: Matrix<Scalar>,
}

impl CoordinateSystem {
    pub fn new(expr: &FunctorExpr, n: usize, field: Field) -> Result<Self> {
        expr.validate()?;
        let summands = summands(expr)?;
        let by_sig: BTreeMap<&Sig, usize> = summands.iter().map(|s| (&s.sig, s.index)).collect();
        let elems = elements(expr, &[], n)?;
        let element_summand = elems
            .iter()
            .map(|e| {
                by_sig
                    .get(&e.sig)
                    .copied()
                    .ok_or_else(|| Error::IdentityCheck(format!("basis vector in unknown summand {}", e.sig)))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = unique_names(elems.into_iter().map(|e| e.tokens).collect());
        let vars = names
            .iter()
            .zip(&element_summand)
            .map(|(name, &k)| Variable::new(name.clone(), summands[k].label(), summands[k].degree))
            .collect();
        let ring = GradedRing::new(field, vars)?;
        let change = adapted_change_matrix(expr, n, field)?;
        let change_inv = change
            .inverse()
            .ok_or_else(|| Error::IdentityCheck("adapted change of basis is singular".into()))?;
        Ok(CoordinateSystem {
            functor: expr.clone(),
            n,
            summands,
            ring,
            element_summand,
            std_names: std_labels(expr, n)?,
            change,
            change_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.element_summand.len()
    }

    /// Adapted coordinate indices lying on summand `k`.
    pub fn coords_of_summand(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.element_summand[i] == k).collect()
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    /// Standard coordinates as linear forms in the adapted coordinates.
    pub fn std_coordinates_in(&self, target: &RingRef) -> Result<Vec<GradedPoly>> {
        self.linear_forms(&self.change, target)
    }

    /// Adapted coordinates as linear forms in standard coordinates, taking
    /// the first `dim` variables of `target` as standard coordinates.
    pub fn adapted_coordinates_in(&self, target: &RingRef) -> Result<Vec<GradedPoly>> {
        self.linear_forms(&self.change_inv, target)
    }

    fn linear_forms(&self, m: &Matrix<Scalar>, target: &RingRef) -> Result<Vec<GradedPoly>> {
        if target.nvars() < m.cols() {
            return Err(Error::Shape("target ring too small".into()));
        }
        Ok((0..m.rows())
            .map(|i| {
                (0..m.cols()).fold(GradedPoly::zero(target), |acc, j| {
                    let c = m.get(i, j);
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &GradedPoly::var_at(target, j).scale(c)
                    }
                })
            })
            .collect())
    }

    /// Adapted coordinates of a vector given in standard coordinates.
    pub fn to_adapted(&self, std: &[Scalar]) -> Result<Vec<Scalar>> {
        self.change_inv.apply(std)
    }

    pub fn to_std(&self, adapted: &[Scalar]) -> Result<Vec<Scalar>> {
        self.change.apply(adapted)
    }
}
