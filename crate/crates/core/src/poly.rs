//! Sparse multivariate polynomials over graded rings.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded-lexicographic on the ring's declared variable order. Zero
//! coefficients are never stored, so two polynomials are equal exactly when
//! their term maps are equal.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A coordinate of a graded ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    /// Label of the summand (homogeneous part) the coordinate lives on.
    pub part: String,
    /// Grading weight: the degree `e` of that part.
    pub weight: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, part: impl Into<String>, weight: u32) -> Self {
        Variable {
            name: name.into(),
            part: part.into(),
            weight,
        }
    }

    /// An ungraded helper coordinate (weight 0, empty part label).
    pub fn plain(name: impl Into<String>) -> Self {
        Variable::new(name, "", 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    field: Field,
    vars: Vec<Variable>,
    index: BTreeMap<String, usize>,
}

pub type RingRef = Arc<GradedRing>;

impl GradedRing {
    pub fn new(field: Field, vars: Vec<Variable>) -> Result<RingRef> {
        let mut index = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Arc::new(GradedRing { field, vars, index }))
    }

    /// Ring with weight-1 variables, all on a single unnamed part.
    pub fn with_names<S: AsRef<str>>(field: Field, names: &[S]) -> Result<RingRef> {
        let vars = names.iter().map(|n| Variable::new(n.as_ref(), "", 1)).collect();
        GradedRing::new(field, vars)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    /// A new ring with `extra` appended after the existing variables.
    pub fn extend(&self, extra: impl IntoIterator<Item = Variable>) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend(extra);
        GradedRing::new(self.field, vars)
    }

    /// A new ring with the named variables removed.
    pub fn without(&self, names: &[&str]) -> RingRef {
        let vars = self
            .vars
            .iter()
            .filter(|v| !names.contains(&v.name.as_str()))
            .cloned()
            .collect();
        GradedRing::new(self.field, vars).expect("subset of unique names is unique")
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Dense exponent vector. Ordered graded-lexicographically: total degree
/// first, ties broken by the first variable with differing exponent (larger
/// exponent is larger).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct GradedPoly {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(ring: &RingRef) -> Self {
        GradedPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        GradedPoly::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        let mut p = GradedPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn from_int(ring: &RingRef, n: i64) -> Self {
        GradedPoly::constant(ring, ring.field().from_int(n))
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(GradedPoly::var_at(ring, ring.require(name)?))
    }

    pub fn var_at(ring: &RingRef, i: usize) -> Self {
        let mut exps = vec![0; ring.nvars()];
        exps[i] = 1;
        GradedPoly::monomial(ring, Monomial(exps), ring.field().one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.0.len(), ring.nvars());
        let mut p = GradedPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Canonicalizing constructor: merges duplicate exponent vectors and
    /// drops zeros.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = GradedPoly::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop_last()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &GradedPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = GradedPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.ring);
        }
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.ring);
        }
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> GradedPoly {
        let mut base = self.clone();
        let mut acc = GradedPoly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn weight_of(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(self.ring.vars())
            .map(|(&e, v)| e as u64 * v.weight as u64)
            .sum()
    }

    /// Maximum over terms of `Σ exponent · weight`; `None` stands for the
    /// degree −∞ of the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| self.weight_of(m)).max()
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| self.weight_of(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Ordinary (unweighted) total degree.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.uses_var(i)).collect()
    }

    /// Replaces variable `i` by `images[i]`; all images must live in
    /// `target`.
    pub fn substitute_vec(&self, target: &RingRef, images: &[GradedPoly]) -> Result<GradedPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Shape(alloc::format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        for img in images {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<GradedPoly>> = vec![Vec::new(); images.len()];
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = GradedPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(GradedPoly::one(target));
                }
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitution by variable name. Variables of `self` that occur in some
    /// term must be assigned; the rest may be omitted.
    pub fn substitute(&self, target: &RingRef, assignment: &BTreeMap<String, GradedPoly>) -> Result<GradedPoly> {
        let images = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| match assignment.get(&v.name) {
                Some(p) => Ok(p.clone()),
                None if !self.uses_var(i) => Ok(GradedPoly::zero(target)),
                None => Err(Error::MissingAssignment(v.name.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute_vec(target, &images)
    }

    /// Evaluates at a point given in ring-variable order.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "point dimension");
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Moves the polynomial into another ring by variable name.
    pub fn embed(&self, target: &RingRef) -> Result<GradedPoly> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| match target.index_of(&v.name) {
                Some(j) => Ok(Some(j)),
                None if !self.uses_var(i) => Ok(None),
                None => Err(Error::UnknownVariable(v.name.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// All coefficients with respect to powers of variable `var`, each
    /// living in `self`'s ring (with `var` absent).
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, GradedPoly> {
        let mut out: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[var];
            let mut e = m.0.clone();
            e[var] = 0;
            out.entry(k)
                .or_insert_with(|| GradedPoly::zero(&self.ring))
                .add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficient of `aux^k`, returned in the ring without `aux`. An absent
    /// power gives the zero polynomial.
    pub fn coeff_of_power(&self, aux: &str, k: u32) -> Result<GradedPoly> {
        let var = self.ring.require(aux)?;
        let reduced = self.ring.without(&[aux]);
        let mut out = GradedPoly::zero(&reduced);
        for (m, c) in &self.terms {
            if m.0[var] != k {
                continue;
            }
            let e: Vec<u32> =
                m.0.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != var)
                    .map(|(_, &x)| x)
                    .collect();
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &GradedPoly) -> Option<GradedPoly> {
        if d.is_zero() || !same_ring(&self.ring, &d.ring) {
            return None;
        }
        let (dm, dc) = d.leading_term()?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = GradedPoly::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c * &dc_inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Graded-lex leading monomial made monic.
    pub fn monic(&self) -> GradedPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    /// Panics on ring mismatch; use [`GradedPoly::try_add`] for a checked sum.
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for GradedPoly {
    /// `2*x^5*y^25*z - 3/2*w`: terms in descending term order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut first = true;
            if !mag.is_one() || m.is_one() {
                write!(f, "{mag}")?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.vars()[i].name)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
