//! One inner step of the degree-reduction argument on a concrete variety:
//! `δ_X`, `h = ∂_{r0} f`, the `Φ_{ei}` split of `P(1_U ⊕ tφ)`, the
//! coefficient `k`, and a Cramer-rule elimination certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::functor::{CoordinateSystem, FunctorExpr};
use crate::groebner::normal_form;
use crate::hasse::{directional_data, DirectionSubspace, DirectionalData};
use crate::poly::{same_ring, GradedPoly};

mod eliminate;
mod extract;
mod phi;
mod pipeline;
mod sample;

pub use eliminate::{eliminate, CertificateEntry, EliminationCertificate};
pub use extract::{extract_k, AffineAdditiveElement, ShiftedFrame};
pub use phi::{phi_decompose, PhiDecomposition};
pub use pipeline::{
    injection_maps, rank_one_ideal, run_proof_step, run_running_example, Check, CheckStatus, StepInput, StepReport,
};
pub use sample::{PointSampler, RankOneSampler};

/// An equivariant variety given by equations on `P(K^n)`, in the adapted
/// coordinates of [`CoordinateSystem`].
#[derive(Clone, Debug)]
pub struct VarietyPresentation {
    pub coords: CoordinateSystem,
    pub generators: Vec<GradedPoly>,
    /// Equations of the projection `X_Q`; they involve no coordinate of `R`.
    pub q_generators: Vec<GradedPoly>,
    /// Index of the designated top-degree summand `R`.
    pub designated_r: usize,
}

impl VarietyPresentation {
    pub fn new(
        functor: &FunctorExpr,
        n: usize,
        field: Field,
        generators: Vec<GradedPoly>,
        q_generators: Vec<GradedPoly>,
        designated_r: usize,
    ) -> Result<Self> {
        let coords = CoordinateSystem::new(functor, n, field)?;
        VarietyPresentation::from_coords(coords, generators, q_generators, designated_r)
    }

    pub fn from_coords(
        coords: CoordinateSystem,
        generators: Vec<GradedPoly>,
        q_generators: Vec<GradedPoly>,
        designated_r: usize,
    ) -> Result<Self> {
        let top = coords.summands.iter().map(|s| s.degree).max().unwrap_or(0);
        let r = coords.summands.get(designated_r).ok_or(Error::QuotientIndex {
            index: designated_r,
            count: coords.summands.len(),
        })?;
        if r.degree != top || top == 0 {
            return Err(Error::InvalidInput(format!(
                "summand s{designated_r} has degree {}, not the top degree {top}",
                r.degree
            )));
        }
        for g in generators.iter().chain(&q_generators) {
            if !same_ring(g.ring(), &coords.ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_weight_homogeneous() {
                return Err(Error::InvalidInput(format!("generator `{g}` is not homogeneous")));
            }
        }
        let r_coords = coords.coords_of_summand(designated_r);
        for g in &q_generators {
            if r_coords.iter().any(|&i| g.uses_var(i)) {
                return Err(Error::InvalidInput(format!(
                    "`{g}` involves coordinates of the designated summand"
                )));
            }
        }
        Ok(VarietyPresentation {
            coords,
            generators,
            q_generators,
            designated_r,
        })
    }

    /// Degree `d` of the designated summand.
    pub fn top_degree(&self) -> u32 {
        self.coords.summands[self.designated_r].degree
    }

    pub fn r_subspace(&self) -> Result<DirectionSubspace> {
        DirectionSubspace::from_indices(&self.coords.ring, self.coords.coords_of_summand(self.designated_r))
    }

    fn reduce_q(&self, f: &GradedPoly) -> Result<GradedPoly> {
        if self.q_generators.is_empty() {
            Ok(f.clone())
        } else {
            normal_form(f, &self.q_generators)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    /// `None` stands for `δ_X = ∞`.
    pub delta: Option<u64>,
    pub witness: Option<GradedPoly>,
}

/// Smallest weighted degree of a supplied generator that is nonzero modulo
/// the `X_Q` equations. Relative to the generating set, not the whole ideal.
pub fn delta_degree(x: &VarietyPresentation) -> Result<DeltaReport> {
    let mut best: Option<(u64, &GradedPoly)> = None;
    for g in &x.generators {
        if x.reduce_q(g)?.is_zero() {
            continue;
        }
        let d = g.weighted_degree().expect("nonzero generator");
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, g));
        }
    }
    Ok(DeltaReport {
        delta: best.map(|(d, _)| d),
        witness: best.map(|(_, g)| g.clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HResult {
    pub e0: u32,
    pub h: GradedPoly,
}

/// `h = ∂_{r0} f` with `W` the coordinates of `R`. `r0` lists coordinates
/// relative to those of `R` in ring order.
pub fn compute_h(f: &GradedPoly, x: &VarietyPresentation, r0: &[Scalar]) -> Result<HResult> {
    if !same_ring(f.ring(), &x.coords.ring) {
        return Err(Error::RingMismatch);
    }
    if !f.is_weight_homogeneous() {
        return Err(Error::InvalidInput("f must be homogeneous".into()));
    }
    let w = x.r_subspace()?;
    let joint = match directional_data(f, &w)? {
        DirectionalData::Independent => return Err(Error::IndependentOfSummand),
        DirectionalData::Dependent(j) => j,
    };
    let h = joint.specialize(&w.direction(r0)?)?;
    if h.is_zero() || x.reduce_q(&h)?.is_zero() {
        return Err(Error::DerivativeVanishes);
    }
    let d = x.top_degree() as u64;
    let expect = f.weighted_degree().unwrap() - d * joint.power;
    if h.weighted_degree() != Some(expect) {
        return Err(Error::IdentityCheck(format!(
            "deg h = {:?}, expected deg f - d p^e0 = {expect}",
            h.weighted_degree()
        )));
    }
    Ok(HResult { e0: joint.level, h })
}

/// Tries each standard basis vector of `R(K^u)` as `r0`.
pub fn scan_r0(f: &GradedPoly, x: &VarietyPresentation) -> Vec<(String, Result<HResult>)> {
    let r_coords = x.coords.coords_of_summand(x.designated_r);
    let field = x.coords.field();
    (0..r_coords.len())
        .map(|k| {
            let r0: Vec<Scalar> = (0..r_coords.len())
                .map(|i| if i == k { field.one() } else { field.zero() })
                .collect();
            let name = x.coords.ring.vars()[r_coords[k]].name.clone();
            (name, compute_h(f, x, &r0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::FunctorExpr::*;
    use crate::poly::test_util::poly;

    fn rank_one_u() -> (VarietyPresentation, GradedPoly) {
        let p = FunctorExpr::tensor2(Id, Id);
        let coords = CoordinateSystem::new(&p, 2, Field::Rationals).unwrap();
        let r = coords.ring.clone();
        let f = poly(
            &r,
            &[
                (1, &[("y_1_1", 1), ("y_2_2", 1)]),
                (-1, &[("y_1_2", 2)]),
                (1, &[("z_1_2", 2)]),
            ],
        );
        let x = VarietyPresentation::from_coords(coords, alloc::vec![f.clone()], alloc::vec![], 1).unwrap();
        (x, f)
    }

    #[test]
    fn delta_of_running_example() {
        let (x, f) = rank_one_u();
        let d = delta_degree(&x).unwrap();
        assert_eq!(d.delta, Some(4));
        assert_eq!(d.witness, Some(f));
    }

    #[test]
    fn delta_infinite_when_all_in_q_ideal() {
        let (x, _) = rank_one_u();
        let r = x.coords.ring.clone();
        let g = poly(&r, &[(1, &[("y_1_1", 1)])]);
        let x2 = VarietyPresentation::from_coords(x.coords.clone(), alloc::vec![g.clone()], alloc::vec![g], 1).unwrap();
        assert_eq!(delta_degree(&x2).unwrap().delta, None);
    }

    #[test]
    fn delta_of_alternating_square() {
        let (x, _) = rank_one_u();
        let r = x.coords.ring.clone();
        let g = poly(&r, &[(1, &[("z_1_2", 2)])]);
        let x2 = VarietyPresentation::from_coords(x.coords.clone(), alloc::vec![g], alloc::vec![], 1).unwrap();
        assert_eq!(delta_degree(&x2).unwrap().delta, Some(4));
    }

    #[test]
    fn h_of_running_example() {
        let (x, f) = rank_one_u();
        let h = compute_h(&f, &x, &[Field::Rationals.one()]).unwrap();
        assert_eq!(h.e0, 0);
        assert_eq!(alloc::format!("{}", h.h), "2*z_1_2");
        let scan = scan_r0(&f, &x);
        assert_eq!(scan.len(), 1);
        assert!(scan[0].1.is_ok());
    }

    #[test]
    fn h_requires_dependence() {
        let (x, _) = rank_one_u();
        let g = poly(&x.coords.ring, &[(1, &[("y_1_1", 1), ("y_2_2", 1)])]);
        assert_eq!(
            compute_h(&g, &x, &[Field::Rationals.one()]),
            Err(Error::IndependentOfSummand)
        );
    }

    #[test]
    fn h_in_characteristic_five() {
        let p = FunctorExpr::tensor2(Id, Id);
        let coords = CoordinateSystem::new(&p, 2, Field::Prime(5)).unwrap();
        let r = coords.ring.clone();
        let f = poly(
            &r,
            &[(1, &[("y_1_1", 5), ("y_2_2", 5)]), (1, &[("z_1_2", 5), ("y_1_1", 5)])],
        );
        let x = VarietyPresentation::from_coords(coords, alloc::vec![f.clone()], alloc::vec![], 1).unwrap();
        let h = compute_h(&f, &x, &[Field::Prime(5).one()]).unwrap();
        assert_eq!(h.e0, 1);
        assert_eq!(alloc::format!("{}", h.h), "y_1_1^5");
    }

    #[test]
    fn designated_summand_must_be_top() {
        let (x, _) = rank_one_u();
        let p = FunctorExpr::shift(1, FunctorExpr::tensor2(Id, Id));
        assert!(VarietyPresentation::new(&p, 1, Field::Rationals, alloc::vec![], alloc::vec![], 0).is_err());
        assert!(VarietyPresentation::from_coords(x.coords, alloc::vec![], alloc::vec![], 7).is_err());
    }
}
