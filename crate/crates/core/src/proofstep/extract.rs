use alloc::vec::Vec;

use super::phi::split_map;
use super::VarietyPresentation;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::functor::{induced_map, lift_scalars, CoordinateSystem, FunctorExpr};
use crate::hasse::{directional_data, fresh_name, taylor_expand, DirectionSubspace, DirectionalData};
use crate::matrix::Matrix;
use crate::poly::{GradedPoly, GradedRing, RingRef, Variable};

/// Coordinates on `P'(V) = P(U ⊕ V)` for a variety presented on `P(U)`.
#[derive(Clone, Debug)]
pub struct ShiftedFrame {
    pub u: usize,
    pub n: usize,
    /// Adapted coordinates of `P ∘ Sh_U` at `V = K^n`.
    pub shifted: CoordinateSystem,
    /// Coordinates of `R'_d(V)`, the copy of `R(V)` inside the shift.
    pub eliminated: Vec<usize>,
    /// `P(π_U) q` in adapted coordinates of `P(U)`, as linear forms on `P'(V)`.
    pub projection: Vec<GradedPoly>,
}

impl ShiftedFrame {
    pub fn new(x: &VarietyPresentation, n: usize) -> Result<Self> {
        let p = &x.coords.functor;
        let u = x.coords.n;
        let field = x.coords.field();
        let shifted = CoordinateSystem::new(&FunctorExpr::shift(u, p.clone()), n, field)?;
        let r = &x.coords.summands[x.designated_r];
        let keep: Vec<usize> = shifted
            .summands
            .iter()
            .filter(|s| s.degree == r.degree && s.sig.coarsen(1) == r.sig)
            .map(|s| s.index)
            .collect();
        let eliminated = (0..shifted.dim())
            .filter(|&i| keep.contains(&shifted.element_summand[i]))
            .collect();
        let fz = field.zero();
        let fo = field.one();
        let pi = Matrix::from_fn(u, n, &fz, |_, _| fz.clone());
        let m = x
            .coords
            .change_inv
            .mul(&induced_map(p, &split_map(u, &pi, &fo, &fz))?)
            .mul(&shifted.change);
        let projection = linear_forms(&m, &shifted.ring);
        Ok(ShiftedFrame {
            u,
            n,
            shifted,
            eliminated,
            projection,
        })
    }

    pub fn retained(&self) -> Vec<usize> {
        (0..self.shifted.dim())
            .filter(|i| !self.eliminated.contains(i))
            .collect()
    }

    /// `g ∘ P(π_U)` for `g` on `P(U)`.
    pub fn pullback(&self, g: &GradedPoly) -> Result<GradedPoly> {
        g.substitute_vec(&self.shifted.ring, &self.projection)
    }

    /// Plain ring on the standard coordinates of `P(U ⊕ V)`.
    pub fn std_ring(&self) -> Result<RingRef> {
        GradedRing::new(
            self.shifted.field(),
            self.shifted
                .std_names
                .iter()
                .map(|s| Variable::new(s.clone(), "", 1))
                .collect(),
        )
    }

    /// `R(φ)` in adapted coordinates: rows the `R(U)` coordinates, columns `eliminated`.
    fn r_of_phi(&self, x: &VarietyPresentation, phi: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
        let field = x.coords.field();
        let m = x
            .coords
            .change_inv
            .mul(&induced_map(
                &x.coords.functor,
                &split_map(self.u, phi, &field.zero(), &field.one()),
            )?)
            .mul(&self.shifted.change);
        Ok(m.submatrix(&x.coords.coords_of_summand(x.designated_r), &self.eliminated))
    }
}

pub(crate) fn linear_forms(m: &Matrix<Scalar>, target: &RingRef) -> Vec<GradedPoly> {
    (0..m.rows())
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
        .collect()
}

/// The coefficient `k` of `t^{d p̄^{e0}}` in `f(Φ(t) q)`, split as
/// `k = k0 + Σ_j k_j x_j^{p̄^{e0}}` over the coordinates `x_j` of `R'_d(V)`.
#[derive(Clone, Debug)]
pub struct AffineAdditiveElement {
    pub k: GradedPoly,
    pub level: u32,
    /// `p̄^level`.
    pub power: u64,
    /// `f(Φ(t) q)` in the coordinates of `P'(V)` and `t` (the last variable).
    pub expansion: GradedPoly,
    pub constant_part: GradedPoly,
    /// `(x_j, k_j)` for every eliminated coordinate.
    pub additive_part: Vec<(usize, GradedPoly)>,
    /// `(∂_r k)(q) = (∂_{R(φ) r} f)(P(π_U) q)` as a formal identity in `q`, `r`.
    pub derivative_identity: bool,
}

pub fn extract_k(
    f: &GradedPoly,
    x: &VarietyPresentation,
    frame: &ShiftedFrame,
    phi: &Matrix<Scalar>,
) -> Result<AffineAdditiveElement> {
    let (u, n) = (frame.u, frame.n);
    if phi.rows() != u || phi.cols() != n {
        return Err(Error::Shape(alloc::format!("φ must be {u}x{n}")));
    }
    let wf = x.r_subspace()?;
    let joint_f = match directional_data(f, &wf)? {
        DirectionalData::Independent => return Err(Error::IndependentOfSummand),
        DirectionalData::Dependent(j) => j,
    };
    let power = joint_f.power;
    let target = x.top_degree() as u64 * power;

    let cs = &frame.shifted;
    let t_name = fresh_name(&|s: &str| cs.ring.index_of(s).is_some(), "t");
    let sr = cs.ring.extend([Variable::plain(t_name.clone())])?;
    let zero = GradedPoly::zero(&sr);
    let t = GradedPoly::var_at(&sr, sr.nvars() - 1);
    let big = induced_map(
        &x.coords.functor,
        &split_map(u, &lift_scalars(phi, &zero), &GradedPoly::one(&sr), &t),
    )?;
    let l = lift_scalars(&x.coords.change_inv, &zero)
        .mul(&big)
        .mul(&lift_scalars(&cs.change, &zero));
    let qs: Vec<GradedPoly> = (0..cs.dim()).map(|j| GradedPoly::var_at(&sr, j)).collect();
    let images = l.apply(&qs)?;
    let expansion = f.substitute_vec(&sr, &images)?;
    let target_u32 = u32::try_from(target).map_err(|_| Error::InvalidInput("degree overflow".into()))?;
    let k = expansion.coeff_of_power(&t_name, target_u32)?.embed(&cs.ring)?;

    let (constant_part, additive_part) = split_additive(&k, &frame.eliminated, power)?;

    let we = DirectionSubspace::from_indices(&cs.ring, frame.eliminated.clone())?;
    let s_name = fresh_name(&|s: &str| cs.ring.index_of(s).is_some(), "s");
    let tay = taylor_expand(&k, &we, &s_name)?;
    let coeffs = tay.coefficients();
    if let Some((e, _)) = coeffs
        .iter()
        .find(|(e, c)| **e != 0 && **e as u64 != power && !c.is_zero())
    {
        return Err(Error::NotAffineAdditive(alloc::format!("s^{e} occurs in k(q + s r)")));
    }
    let joint_ring = tay.ring.without(&[s_name.as_str()]);
    let dk = match coeffs.get(&(power as u32)) {
        Some(c) => c.embed(&joint_ring)?,
        None => GradedPoly::zero(&joint_ring),
    };
    // (∂_{R(φ) r} f)(P(π_U) q) in the same ring.
    let rphi = frame.r_of_phi(x, phi)?;
    let mut img: Vec<GradedPoly> = frame
        .projection
        .iter()
        .map(|g| g.embed(&joint_ring))
        .collect::<Result<_>>()?;
    let copies_k: Vec<GradedPoly> = tay.copies.iter().map(|&c| GradedPoly::var_at(&joint_ring, c)).collect();
    for a in 0..joint_f.copies.len() {
        let mut acc = GradedPoly::zero(&joint_ring);
        for (b, w) in copies_k.iter().enumerate() {
            let c = rphi.get(a, b);
            if !c.is_zero() {
                acc = &acc + &w.scale(c);
            }
        }
        img.push(acc);
    }
    let df = joint_f.h_joint.substitute_vec(&joint_ring, &img)?;
    Ok(AffineAdditiveElement {
        k,
        level: joint_f.level,
        power,
        expansion,
        constant_part,
        additive_part,
        derivative_identity: df == dk,
    })
}

/// `k = k0 + Σ k_j x_j^q` with `k0`, `k_j` free of the `x_j`.
fn split_additive(k: &GradedPoly, elim: &[usize], q: u64) -> Result<(GradedPoly, Vec<(usize, GradedPoly)>)> {
    let ring = k.ring();
    let q32 = q as u32;
    let mut zero_images: Vec<GradedPoly> = (0..ring.nvars()).map(|i| GradedPoly::var_at(ring, i)).collect();
    for &j in elim {
        zero_images[j] = GradedPoly::zero(ring);
    }
    let k0 = k.substitute_vec(ring, &zero_images)?;
    let mut recon = k0.clone();
    let mut parts = Vec::with_capacity(elim.len());
    for &j in elim {
        let kj = k
            .coefficients_in(j)
            .remove(&q32)
            .unwrap_or_else(|| GradedPoly::zero(ring));
        if elim.iter().any(|&i| kj.uses_var(i)) {
            return Err(Error::NotAffineAdditive(alloc::format!(
                "coefficient of {}^{q} involves eliminated coordinates",
                ring.vars()[j].name
            )));
        }
        recon = &recon + &(&kj * &GradedPoly::var_at(ring, j).pow(q));
        parts.push((j, kj));
    }
    if recon != *k {
        return Err(Error::NotAffineAdditive("k is not k0 + sum k_j x_j^q".into()));
    }
    Ok((k0, parts))
}
