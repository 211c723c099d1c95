//! Hasse derivatives, Taylor expansion and directional derivatives in any
//! characteristic.
//!
//! Directions are full-length coordinate vectors in the ring's variable
//! order; every component outside the subspace must be zero.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{lucas_binomial, Field, Scalar};
use crate::poly::{GradedPoly, GradedRing, Monomial, RingRef, Variable};

/// A coordinate subspace `W` of the space the ring is a coordinate ring of.
/// The remaining variables span a complement, identified with `W'/W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSubspace {
    ring: RingRef,
    span: Vec<usize>,
}

impl DirectionSubspace {
    pub fn new<S: AsRef<str>>(ring: &RingRef, names: &[S]) -> Result<Self> {
        let span = names
            .iter()
            .map(|n| ring.require(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        DirectionSubspace::from_indices(ring, span)
    }

    pub fn from_indices(ring: &RingRef, mut span: Vec<usize>) -> Result<Self> {
        if span.is_empty() {
            return Err(Error::EmptySubspace);
        }
        span.sort_unstable();
        span.dedup();
        if span.iter().any(|&i| i >= ring.nvars()) {
            return Err(Error::Shape("subspace index out of range".to_string()));
        }
        Ok(DirectionSubspace {
            ring: ring.clone(),
            span,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Variable indices spanning `W`, ascending.
    pub fn span(&self) -> &[usize] {
        &self.span
    }

    pub fn contains(&self, var: usize) -> bool {
        self.span.binary_search(&var).is_ok()
    }

    /// Common grading weight of the spanning variables, if they agree.
    pub fn weight(&self) -> Option<u32> {
        let w = self.ring.vars()[self.span[0]].weight;
        self.span.iter().all(|&i| self.ring.vars()[i].weight == w).then_some(w)
    }

    /// Lifts coordinates relative to the spanning variables to a full-length
    /// direction vector.
    pub fn direction(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        if coords.len() != self.span.len() {
            return Err(Error::Shape(format!(
                "{} coordinates for a {}-dimensional subspace",
                coords.len(),
                self.span.len()
            )));
        }
        let mut w = vec![self.ring.field().zero(); self.ring.nvars()];
        for (&i, c) in self.span.iter().zip(coords) {
            w[i] = c.clone();
        }
        Ok(w)
    }

    fn check_direction(&self, w: &[Scalar]) -> Result<()> {
        if w.len() != self.ring.nvars() {
            return Err(Error::Shape(format!(
                "direction of length {} in a ring with {} variables",
                w.len(),
                self.ring.nvars()
            )));
        }
        for (i, c) in w.iter().enumerate() {
            if !c.is_zero() && !self.contains(i) {
                return Err(Error::OutsideSubspace(self.ring.vars()[i].name.clone()));
            }
        }
        Ok(())
    }

    fn check_ring(&self, f: &GradedPoly) -> Result<()> {
        if crate::poly::same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// `D_w^{(r)} f`, the `r`-th Hasse derivative of `f` along `w`.
pub fn hasse_derivative(f: &GradedPoly, w: &[Scalar], r: u64, space: &DirectionSubspace) -> Result<GradedPoly> {
    space.check_direction(w)?;
    match space.span.iter().copied().find(|&i| !w[i].is_zero()) {
        Some(pivot) => hasse_derivative_with_pivot(f, w, r, space, pivot),
        None if r == 0 => Ok(f.clone()),
        None => Ok(GradedPoly::zero(f.ring())),
    }
}

/// As [`hasse_derivative`], but with the adapted basis built around a chosen
/// pivot coordinate (any `k` with `w[k] != 0`).
///
/// With `x_k = w_k y_k` and `x_i = y_i + w_i y_k` for `i != k`, moving along
/// `w` moves only `y_k`, so the monomial rule `D^{(r)} y^a = binom(a, r)
/// y^{a-r}` applies to `y_k`.
pub fn hasse_derivative_with_pivot(
    f: &GradedPoly,
    w: &[Scalar],
    r: u64,
    space: &DirectionSubspace,
    pivot: usize,
) -> Result<GradedPoly> {
    space.check_ring(f)?;
    space.check_direction(w)?;
    let ring = f.ring();
    let field = ring.field();
    let wk_inv = w[pivot]
        .inv()
        .ok_or_else(|| Error::InvalidInput("pivot component of w is zero".to_string()))?;
    let y = |i| GradedPoly::var_at(ring, i);
    let to_adapted: Vec<GradedPoly> = (0..ring.nvars())
        .map(|i| {
            if i == pivot {
                y(pivot).scale(&w[pivot])
            } else if w[i].is_zero() {
                y(i)
            } else {
                &y(i) + &y(pivot).scale(&w[i])
            }
        })
        .collect();
    let g = f.substitute_vec(ring, &to_adapted)?;
    let mut dg = GradedPoly::zero(ring);
    for (m, c) in g.terms() {
        let a = m.0[pivot] as u64;
        if a < r {
            continue;
        }
        let b = lucas_binomial(a, r, field);
        if b.is_zero() {
            continue;
        }
        let mut e = m.0.clone();
        e[pivot] -= r as u32;
        dg = &dg + &GradedPoly::monomial(ring, Monomial(e), c * &b);
    }
    let from_adapted: Vec<GradedPoly> = (0..ring.nvars())
        .map(|i| {
            if i == pivot {
                y(pivot).scale(&wk_inv)
            } else if w[i].is_zero() {
                y(i)
            } else {
                &y(i) - &y(pivot).scale(&(&w[i] * &wk_inv))
            }
        })
        .collect();
    dg.substitute_vec(ring, &from_adapted)
}

pub(crate) fn fresh_name(taken: &dyn Fn(&str) -> bool, base: &str) -> String {
    let mut name = base.to_string();
    while taken(&name) {
        name.push('_');
    }
    name
}

/// `f(w' + t w)` as a polynomial in the original variables (playing `w'`),
/// one copy per spanning variable (playing `w`), and `t`.
#[derive(Clone, Debug)]
pub struct TaylorExpansion {
    pub ring: RingRef,
    pub poly: GradedPoly,
    /// Index of `t` in `ring`.
    pub t: usize,
    /// Index in `ring` of the copy of each spanning variable, aligned with
    /// [`DirectionSubspace::span`].
    pub copies: Vec<usize>,
}

impl TaylorExpansion {
    /// Coefficients of the powers of `t`, each in `ring` (with `t` absent).
    pub fn coefficients(&self) -> BTreeMap<u32, GradedPoly> {
        self.poly.coefficients_in(self.t)
    }
}

/// Ring extension by copies `w_<name>` of the spanning variables (same part
/// and weight), then any further `extra` variables.
fn doubled_ring(space: &DirectionSubspace, prefix: &str, extra: &[Variable]) -> Result<(RingRef, Vec<usize>)> {
    let base = space.ring();
    let mut copy_vars: Vec<Variable> = Vec::new();
    for &i in &space.span {
        let v = &base.vars()[i];
        let taken = |n: &str| {
            base.index_of(n).is_some() || copy_vars.iter().any(|c| c.name == n) || extra.iter().any(|e| e.name == n)
        };
        let name = fresh_name(&taken, &format!("{prefix}{}", v.name));
        copy_vars.push(Variable::new(name, v.part.clone(), v.weight));
    }
    let n0 = base.nvars();
    let copies = (n0..n0 + copy_vars.len()).collect();
    let ring = base.extend(copy_vars.into_iter().chain(extra.iter().cloned()))?;
    Ok((ring, copies))
}

/// Taylor expansion by the multi-index binomial rule, term by term.
pub fn taylor_expand(f: &GradedPoly, space: &DirectionSubspace, t: &str) -> Result<TaylorExpansion> {
    space.check_ring(f)?;
    let (ring, copies) = doubled_ring(space, "w_", &[Variable::plain(t)])?;
    let t_idx = ring.nvars() - 1;
    let field = ring.field();
    let mut out = GradedPoly::zero(&ring);
    for (m, c) in f.terms() {
        // For each spanning variable, all splits a = (a - b) + b.
        let mut partial: Vec<(Vec<u32>, Scalar)> = {
            let mut e = m.0.clone();
            e.resize(ring.nvars(), 0);
            vec![(e, c.clone())]
        };
        for (slot, &i) in space.span.iter().enumerate() {
            let a = m.0[i];
            if a == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
            for (e, coef) in &partial {
                for b in 0..=a {
                    let bin = lucas_binomial(a as u64, b as u64, field);
                    if bin.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] -= b;
                    e2[copies[slot]] += b;
                    e2[t_idx] += b;
                    next.push((e2, coef * &bin));
                }
            }
            partial = next;
        }
        for (e, coef) in partial {
            out.add_term(Monomial(e), coef);
        }
    }
    Ok(TaylorExpansion {
        ring,
        poly: out,
        t: t_idx,
        copies,
    })
}

/// The lowest-order part `t^{p̄^e} h(w', w)` of `f(w' + t w)`.
#[derive(Clone, Debug)]
pub struct JointDerivative {
    pub level: u32,
    /// `p̄^level`.
    pub power: u64,
    /// `h(w', w)` in the ring of the original variables plus the `w`-copies.
    pub h_joint: GradedPoly,
    pub copies: Vec<usize>,
    pub space: DirectionSubspace,
}

#[derive(Clone, Debug)]
pub enum DirectionalData {
    /// `f` does not involve any variable of `W`.
    Independent,
    Dependent(JointDerivative),
}

impl DirectionalData {
    pub fn joint(&self) -> Option<&JointDerivative> {
        match self {
            DirectionalData::Independent => None,
            DirectionalData::Dependent(j) => Some(j),
        }
    }
}

/// Level `e` with `p̄^e = k`, if `k` is such a power.
pub fn frobenius_level(k: u64, field: Field) -> Option<u32> {
    let p = field.char_exponent();
    if p == 1 {
        return (k == 1).then_some(0);
    }
    let mut e = 0;
    let mut q = 1u64;
    while q < k {
        q = q.checked_mul(p)?;
        e += 1;
    }
    (q == k).then_some(e)
}

pub fn directional_data(f: &GradedPoly, space: &DirectionSubspace) -> Result<DirectionalData> {
    space.check_ring(f)?;
    if !space.span.iter().any(|&i| f.uses_var(i)) {
        return Ok(DirectionalData::Independent);
    }
    let t_name = fresh_name(&|n: &str| f.ring().index_of(n).is_some(), "t");
    let tay = taylor_expand(f, space, &t_name)?;
    let (k, coeff) = tay
        .coefficients()
        .into_iter()
        .find(|(k, c)| *k > 0 && !c.is_zero())
        .ok_or_else(|| Error::IdentityCheck("no positive t-power in a dependent expansion".to_string()))?;
    let level = frobenius_level(k as u64, f.field()).ok_or(Error::NotFrobeniusPower(k as u64))?;
    let joint_ring = tay.ring.without(&[t_name.as_str()]);
    let h_joint = coeff.embed(&joint_ring)?;
    Ok(DirectionalData::Dependent(JointDerivative {
        level,
        power: k as u64,
        h_joint,
        copies: tay.copies,
        space: space.clone(),
    }))
}

impl JointDerivative {
    pub fn ring(&self) -> &RingRef {
        self.h_joint.ring()
    }

    /// `h(w', w)` at a fixed direction `w`, as a polynomial in `w'`.
    pub fn specialize(&self, w: &[Scalar]) -> Result<GradedPoly> {
        self.space.check_direction(w)?;
        let base = self.space.ring();
        let mut images: Vec<GradedPoly> = (0..base.nvars()).map(|i| GradedPoly::var_at(base, i)).collect();
        for (slot, &i) in self.space.span.iter().enumerate() {
            debug_assert_eq!(self.copies[slot], images.len());
            images.push(GradedPoly::constant(base, w[i].clone()));
        }
        self.h_joint.substitute_vec(base, &images)
    }

    /// Checks `h(w', v + w) = h(w', v) + h(w', w)` as a polynomial identity.
    pub fn additivity_holds(&self) -> Result<bool> {
        let jr = self.ring().clone();
        let (ring, extra) = second_copies(&jr, &self.copies, &[])?;
        let vars = |i| GradedPoly::var_at(&ring, i);
        let id: Vec<GradedPoly> = (0..jr.nvars()).map(vars).collect();
        let mut sum = id.clone();
        let mut only_v = id.clone();
        for (slot, &c) in self.copies.iter().enumerate() {
            sum[c] = &vars(c) + &vars(extra[slot]);
            only_v[c] = vars(extra[slot]);
        }
        let lhs = self.h_joint.substitute_vec(&ring, &sum)?;
        let hw = self.h_joint.substitute_vec(&ring, &id)?;
        let hv = self.h_joint.substitute_vec(&ring, &only_v)?;
        Ok(lhs == &hw + &hv)
    }

    /// Checks `h(w', c w) = c^{p̄^e} h(w', w)` with `c` a formal variable.
    pub fn scaling_holds(&self) -> Result<bool> {
        let jr = self.ring().clone();
        let (ring, extra) = second_copies(&jr, &[], &["c"])?;
        let c = GradedPoly::var_at(&ring, extra[0]);
        let mut images: Vec<GradedPoly> = (0..jr.nvars()).map(|i| GradedPoly::var_at(&ring, i)).collect();
        let plain = self.h_joint.substitute_vec(&ring, &images)?;
        for &k in &self.copies {
            images[k] = &images[k] * &c;
        }
        let lhs = self.h_joint.substitute_vec(&ring, &images)?;
        Ok(lhs == &c.pow(self.power) * &plain)
    }
}

/// Extends `ring` with fresh copies `v_<name>` of the listed variables and
/// fresh plain variables; returns the new indices (copies first).
fn second_copies(ring: &RingRef, of: &[usize], plain: &[&str]) -> Result<(RingRef, Vec<usize>)> {
    let mut added: Vec<Variable> = Vec::new();
    let fresh = |base: String, part: String, weight: u32, added: &mut Vec<Variable>| {
        let taken = |n: &str| ring.index_of(n).is_some() || added.iter().any(|a| a.name == n);
        let name = fresh_name(&taken, &base);
        added.push(Variable::new(name, part, weight));
    };
    for &i in of {
        let v = &ring.vars()[i];
        fresh(format!("v_{}", v.name), v.part.clone(), v.weight, &mut added);
    }
    for p in plain {
        fresh(p.to_string(), String::new(), 0, &mut added);
    }
    let n0 = ring.nvars();
    let idx = (n0..n0 + added.len()).collect();
    Ok((ring.extend(added)?, idx))
}

/// `∂_w f`: zero when `f` is independent of `W`, else `h(·, w)`.
pub fn directional_derivative(f: &GradedPoly, w: &[Scalar], space: &DirectionSubspace) -> Result<GradedPoly> {
    space.check_ring(f)?;
    space.check_direction(w)?;
    match directional_data(f, space)? {
        DirectionalData::Independent => Ok(GradedPoly::zero(f.ring())),
        DirectionalData::Dependent(j) => j.specialize(w),
    }
}

/// `∂_w (f / h^k) = (∂_w f) / h^k` for `h` not involving `W`; returns the
/// new numerator.
pub fn directional_derivative_of_fraction(
    numerator: &GradedPoly,
    h: &GradedPoly,
    w: &[Scalar],
    space: &DirectionSubspace,
) -> Result<GradedPoly> {
    if space.span.iter().any(|&i| h.uses_var(i)) {
        return Err(Error::InvalidInput(
            "denominator must not involve the direction subspace".to_string(),
        ));
    }
    directional_derivative(numerator, w, space)
}

/// The basis `x_i^{p̄^e}` of additive polynomials of level `e` on `W`.
pub fn additive_basis(space: &DirectionSubspace, e: u32) -> Result<Vec<GradedPoly>> {
    let field = space.ring.field();
    if field.characteristic() == 0 && e > 0 {
        return Err(Error::LevelInCharZero(e));
    }
    let q = field.frobenius_power(e);
    Ok(space
        .span
        .iter()
        .map(|&i| GradedPoly::var_at(&space.ring, i).pow(q))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Additivity {
    pub additive: bool,
    /// Present when `f` is additive and homogeneous of degree `p̄^e`.
    pub level: Option<u32>,
}

/// Whether `f(v + w) = f(v) + f(w)` identically. `f` must only involve
/// variables of `W`.
pub fn is_additive(f: &GradedPoly, space: &DirectionSubspace) -> Result<Additivity> {
    space.check_ring(f)?;
    if let Some(i) = f.support_vars().into_iter().find(|&i| !space.contains(i)) {
        return Err(Error::InvalidInput(format!(
            "`{}` is not a variable of the subspace",
            f.ring().vars()[i].name
        )));
    }
    let (ring, copies) = doubled_ring(space, "w_", &[])?;
    let base = space.ring();
    let v = |i| GradedPoly::var_at(&ring, i);
    let mut both: Vec<GradedPoly> = (0..base.nvars()).map(v).collect();
    let mut only_w = both.clone();
    for (slot, &i) in space.span.iter().enumerate() {
        both[i] = &v(i) + &v(copies[slot]);
        only_w[i] = v(copies[slot]);
    }
    let lhs = f.substitute_vec(&ring, &both)?;
    let rhs =
        &f.substitute_vec(&ring, &(0..base.nvars()).map(v).collect::<Vec<_>>())? + &f.substitute_vec(&ring, &only_w)?;
    let additive = lhs == rhs;
    let level = if additive && !f.is_zero() && f.is_homogeneous() {
        f.total_degree().and_then(|d| frobenius_level(d, f.field()))
    } else {
        None
    };
    Ok(Additivity { additive, level })
}

/// Convenience for tests and the CLI: a ring with weight-1 variables.
pub fn plain_ring<S: AsRef<str>>(field: Field, names: &[S]) -> Result<RingRef> {
    GradedRing::with_names(field, names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_util::poly;
    use alloc::format;

    fn f5_example(p: u64) -> (RingRef, GradedPoly) {
        let field = Field::prime(p).unwrap();
        let r = plain_ring(field, &["x", "y", "z"]).unwrap();
        let p2 = (p * p) as u32;
        let f = poly(
            &r,
            &[
                (1, &[("y", p2), ("z", 2)]),
                (1, &[("x", 2 * p as u32), ("y", p2), ("z", 1)]),
            ],
        );
        (r, f)
    }

    #[test]
    fn zeroth_derivative_is_identity() {
        let (r, f) = f5_example(5);
        let w = DirectionSubspace::new(&r, &["x", "y"]).unwrap();
        let dir = w.direction(&[r.field().from_int(2), r.field().from_int(3)]).unwrap();
        assert_eq!(hasse_derivative(&f, &dir, 0, &w).unwrap(), f);
    }

    #[test]
    fn sixth_power_second_derivative() {
        let r = plain_ring(Field::Rationals, &["x"]).unwrap();
        let f = poly(&r, &[(1, &[("x", 6)])]);
        let w = DirectionSubspace::new(&r, &["x"]).unwrap();
        let d = hasse_derivative(&f, &[Field::Rationals.one()], 2, &w).unwrap();
        assert_eq!(format!("{d}"), "15*x^4");
    }

    #[test]
    fn char_five_lowest_derivative() {
        let (r, f) = f5_example(5);
        let w = DirectionSubspace::new(&r, &["x", "y"]).unwrap();
        let one = r.field().one();
        let dir = w.direction(&[one.clone(), one]).unwrap();
        for k in 1..5 {
            assert!(hasse_derivative(&f, &dir, k, &w).unwrap().is_zero(), "r = {k}");
        }
        let d5 = hasse_derivative(&f, &dir, 5, &w).unwrap();
        assert_eq!(format!("{d5}"), "2*x^5*y^25*z");
        let data = directional_data(&f, &w).unwrap();
        let j = data.joint().unwrap();
        assert_eq!((j.level, j.power), (1, 5));
        assert_eq!(
            format!("{}", directional_derivative(&f, &dir, &w).unwrap()),
            "2*x^5*y^25*z"
        );
    }

    #[test]
    fn zero_direction_convention() {
        let (r, f) = f5_example(3);
        let w = DirectionSubspace::new(&r, &["x"]).unwrap();
        let zero = vec![r.field().zero(); 3];
        assert_eq!(hasse_derivative(&f, &zero, 0, &w).unwrap(), f);
        assert!(hasse_derivative(&f, &zero, 2, &w).unwrap().is_zero());
    }

    #[test]
    fn outside_direction_rejected() {
        let (r, f) = f5_example(3);
        let w = DirectionSubspace::new(&r, &["x"]).unwrap();
        let one = r.field().one();
        let zero = r.field().zero();
        let dir = vec![one.clone(), zero, one];
        assert_eq!(
            hasse_derivative(&f, &dir, 1, &w),
            Err(Error::OutsideSubspace("z".into()))
        );
        assert!(directional_derivative(&f, &dir, &w).is_err());
    }

    #[test]
    fn empty_subspace_rejected() {
        let (r, _) = f5_example(3);
        let none: [&str; 0] = [];
        assert_eq!(DirectionSubspace::new(&r, &none), Err(Error::EmptySubspace));
    }

    #[test]
    fn independent_and_constant_cases() {
        let r = plain_ring(Field::Rationals, &["y11", "y22", "z12"]).unwrap();
        let f = poly(&r, &[(1, &[("y11", 1), ("y22", 1)])]);
        let w = DirectionSubspace::new(&r, &["z12"]).unwrap();
        assert!(matches!(
            directional_data(&f, &w).unwrap(),
            DirectionalData::Independent
        ));
        let dir = w.direction(&[Field::Rationals.one()]).unwrap();
        assert!(directional_derivative(&GradedPoly::from_int(&r, 7), &dir, &w)
            .unwrap()
            .is_zero());
        let t = taylor_expand(&GradedPoly::from_int(&r, 7), &w, "t").unwrap();
        assert!(!t.poly.uses_var(t.t));
    }

    #[test]
    fn rank_one_joint_derivative() {
        let r = plain_ring(Field::Rationals, &["y11", "y12", "y22", "z12"]).unwrap();
        let f = poly(
            &r,
            &[(1, &[("y11", 1), ("y22", 1)]), (-1, &[("y12", 2)]), (1, &[("z12", 2)])],
        );
        let w = DirectionSubspace::new(&r, &["z12"]).unwrap();
        let j = directional_data(&f, &w).unwrap();
        let j = j.joint().unwrap();
        assert_eq!(j.level, 0);
        assert_eq!(format!("{}", j.h_joint), "2*z12*w_z12");
        let dir = w.direction(&[Field::Rationals.one()]).unwrap();
        assert_eq!(format!("{}", j.specialize(&dir).unwrap()), "2*z12");
        assert!(j.additivity_holds().unwrap());
        assert!(j.scaling_holds().unwrap());
    }

    #[test]
    fn taylor_name_collision_is_an_error() {
        let r = plain_ring(Field::Rationals, &["x", "t"]).unwrap();
        let w = DirectionSubspace::new(&r, &["x"]).unwrap();
        let f = poly(&r, &[(1, &[("x", 2)])]);
        assert_eq!(
            taylor_expand(&f, &w, "t").unwrap_err(),
            Error::DuplicateVariable("t".into())
        );
    }

    #[test]
    fn additive_bases() {
        let q = plain_ring(Field::Rationals, &["x", "y"]).unwrap();
        let w = DirectionSubspace::new(&q, &["x", "y"]).unwrap();
        let b: Vec<String> = additive_basis(&w, 0).unwrap().iter().map(|p| format!("{p}")).collect();
        assert_eq!(b, ["x", "y"]);
        assert_eq!(additive_basis(&w, 1), Err(Error::LevelInCharZero(1)));
        let f3 = plain_ring(Field::Prime(3), &["x", "y"]).unwrap();
        let w3 = DirectionSubspace::new(&f3, &["x", "y"]).unwrap();
        let b: Vec<String> = additive_basis(&w3, 1).unwrap().iter().map(|p| format!("{p}")).collect();
        assert_eq!(b, ["x^3", "y^3"]);
        let f2 = plain_ring(Field::Prime(2), &["z"]).unwrap();
        let w2 = DirectionSubspace::new(&f2, &["z"]).unwrap();
        assert_eq!(format!("{}", additive_basis(&w2, 2).unwrap()[0]), "z^4");
    }

    #[test]
    fn additivity_detection() {
        let q = plain_ring(Field::Rationals, &["x", "y"]).unwrap();
        let w = DirectionSubspace::new(&q, &["x", "y"]).unwrap();
        let sum = poly(&q, &[(1, &[("x", 1)]), (1, &[("y", 1)])]);
        assert_eq!(
            is_additive(&sum, &w).unwrap(),
            Additivity {
                additive: true,
                level: Some(0)
            }
        );
        let sq = poly(&q, &[(1, &[("x", 2)])]);
        assert!(!is_additive(&sq, &w).unwrap().additive);
        let f2 = plain_ring(Field::Prime(2), &["x"]).unwrap();
        let w2 = DirectionSubspace::new(&f2, &["x"]).unwrap();
        let sq2 = poly(&f2, &[(1, &[("x", 2)])]);
        assert_eq!(
            is_additive(&sq2, &w2).unwrap(),
            Additivity {
                additive: true,
                level: Some(1)
            }
        );
    }

    #[test]
    fn pivot_choice_does_not_matter() {
        let r = plain_ring(Field::Prime(3), &["x", "y", "z"]).unwrap();
        let f = poly(
            &r,
            &[
                (1, &[("x", 4), ("y", 2)]),
                (2, &[("x", 1), ("y", 3), ("z", 1)]),
                (1, &[("y", 5)]),
            ],
        );
        let w = DirectionSubspace::new(&r, &["x", "y"]).unwrap();
        let dir = w.direction(&[r.field().from_int(2), r.field().from_int(1)]).unwrap();
        for k in 0..6 {
            let a = hasse_derivative_with_pivot(&f, &dir, k, &w, 0).unwrap();
            let b = hasse_derivative_with_pivot(&f, &dir, k, &w, 1).unwrap();
            assert_eq!(a, b, "r = {k}");
        }
    }
}
