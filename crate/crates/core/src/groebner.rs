//! Buchberger's algorithm with a hard budget, and normal forms.
//!
//! Meant for verification at desk scale. When the budget runs out the
//! caller gets [`Error::Inconclusive`], never a wrong remainder.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{same_ring, GradedPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-polynomials reduced.
    pub max_steps: usize,
    /// Maximum number of basis elements.
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 50_000,
            max_basis: 2_000,
        }
    }
}

/// Fully reduces `f` by `divisors` (each assumed nonzero). The result has no
/// term divisible by any divisor's leading monomial.
pub fn reduce(f: &GradedPoly, divisors: &[GradedPoly]) -> GradedPoly {
    let leads: Vec<(Monomial, crate::field::Scalar)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().expect("zero divisor in reduction");
            (m.clone(), c.inv().expect("nonzero leading coefficient"))
        })
        .collect();
    let mut rem = f.clone();
    let mut out = GradedPoly::zero(f.ring());
    while let Some((m, c)) = rem.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let q = leads[i].0.quotient_of(&m);
                let k = &c * &leads[i].1;
                rem = &rem - &divisors[i].mul_monomial(&q, &k);
            }
            None => {
                rem.pop_leading();
                out.add_term(m, c);
            }
        }
    }
    out
}

fn s_polynomial(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let (ma, ca) = a.leading_term().expect("nonzero");
    let (mb, cb) = b.leading_term().expect("nonzero");
    let l = ma.lcm(mb);
    let ta = a.mul_monomial(&ma.quotient_of(&l), &ca.inv().expect("unit"));
    let tb = b.mul_monomial(&mb.quotient_of(&l), &cb.inv().expect("unit"));
    &ta - &tb
}

/// A Gröbner basis of the ideal generated by `gens` under the ring's
/// graded-lex order. Elements are monic; redundant leading monomials are
/// dropped.
pub fn groebner_basis(gens: &[GradedPoly], budget: Budget) -> Result<Vec<GradedPoly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    let mut basis: Vec<GradedPoly> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let lead = |g: &GradedPoly| g.leading_term().expect("nonzero").0.clone();
    let mut leads: Vec<Monomial> = basis.iter().map(lead).collect();
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((leads[i].lcm(&leads[j]).total_degree(), i, j));
        }
    }
    let mut steps = 0usize;
    while let Some(key) = pending.iter().next().cloned() {
        pending.remove(&key);
        let (_, i, j) = key;
        done.insert((i, j));
        if leads[i].coprime(&leads[j]) {
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let pair_done = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
        let chain =
            (0..basis.len()).any(|k| k != i && k != j && leads[k].divides(&l) && pair_done(i, k) && pair_done(j, k));
        if chain {
            continue;
        }
        steps += 1;
        if steps > budget.max_steps {
            return Err(Error::Inconclusive(format!(
                "Gröbner step budget of {} exhausted",
                budget.max_steps
            )));
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if basis.len() >= budget.max_basis {
            return Err(Error::Inconclusive(format!(
                "Gröbner basis size budget of {} exhausted",
                budget.max_basis
            )));
        }
        let r = r.monic();
        let m = lead(&r);
        let k = basis.len();
        for (i, lm) in leads.iter().enumerate() {
            pending.insert((lm.lcm(&m).total_degree(), i, k));
        }
        basis.push(r);
        leads.push(m);
    }
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| !(0..basis.len()).any(|k| k != i && leads[k].divides(&leads[i]) && (leads[k] != leads[i] || k < i)))
        .collect();
    Ok(basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect())
}

/// Remainder of `f` modulo a Gröbner basis of `gens`. Zero exactly when `f`
/// lies in the ideal.
pub fn normal_form(f: &GradedPoly, gens: &[GradedPoly]) -> Result<GradedPoly> {
    normal_form_with(f, gens, Budget::default())
}

pub fn normal_form_with(f: &GradedPoly, gens: &[GradedPoly], budget: Budget) -> Result<GradedPoly> {
    if gens.iter().any(|g| !same_ring(g.ring(), f.ring())) {
        return Err(Error::RingMismatch);
    }
    let basis = groebner_basis(gens, budget)?;
    Ok(reduce(f, &basis))
}

/// Ideal membership via [`normal_form`].
pub fn in_ideal(f: &GradedPoly, gens: &[GradedPoly]) -> Result<bool> {
    Ok(normal_form(f, gens)?.is_zero())
}
