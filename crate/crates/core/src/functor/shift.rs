//! The canonical maps between `P` and its shift `P ∘ Sh_U`.

use alloc::vec::Vec;

use super::basis::CoordinateSystem;
use super::induced::induced_labeled;
use super::FunctorExpr;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::matrix::{LabeledMatrix, Matrix};

#[derive(Clone, Debug)]
pub struct ShiftMaps {
    /// `P(ι_V): P(V) -> P(U ⊕ V)`.
    pub alpha: LabeledMatrix<Scalar>,
    /// `P(π_V): P(U ⊕ V) -> P(V)`.
    pub beta: LabeledMatrix<Scalar>,
    pub beta_alpha_identity: bool,
    /// `β` maps the degree-`d` summands of the shift isomorphically onto
    /// `P_d(V)`.
    pub top_iso: bool,
    pub top_degree: u32,
    pub top_dim_shift: usize,
    pub top_dim: usize,
}

impl ShiftMaps {
    pub fn passed(&self) -> bool {
        self.beta_alpha_identity && self.top_iso
    }
}

pub fn shift_maps(p: &FunctorExpr, u: usize, n: usize, field: Field) -> Result<ShiftMaps> {
    p.validate()?;
    let zero = field.zero();
    let iota = Matrix::from_fn(
        u + n,
        n,
        &zero,
        |i, j| {
            if i == u + j {
                field.one()
            } else {
                field.zero()
            }
        },
    );
    let pi = iota.transpose();
    let alpha = induced_labeled(p, &iota)?;
    let beta = induced_labeled(p, &pi)?;
    let beta_alpha_identity = beta.matrix.mul(&alpha.matrix).is_identity();

    let shifted = FunctorExpr::shift(u, p.clone());
    let sh = CoordinateSystem::new(&shifted, n, field)?;
    let base = CoordinateSystem::new(p, n, field)?;
    let top_degree = p.degree();
    let top_cols: Vec<usize> = (0..sh.dim())
        .filter(|&i| sh.summands[sh.element_summand[i]].degree == top_degree)
        .collect();
    let top_rows: Vec<usize> = (0..base.dim())
        .filter(|&i| base.summands[base.element_summand[i]].degree == top_degree)
        .collect();
    let other_rows: Vec<usize> = (0..base.dim()).filter(|i| !top_rows.contains(i)).collect();
    let all_rows: Vec<usize> = (0..sh.dim()).collect();
    // β on the top summands of the shift, written in adapted coordinates of P(V).
    let restricted = base
        .change_inv
        .mul(&beta.matrix)
        .mul(&sh.change.submatrix(&all_rows, &top_cols));
    let stays_on_top = restricted
        .submatrix(&other_rows, &(0..top_cols.len()).collect::<Vec<_>>())
        .is_zero();
    let rank = restricted.rank();
    let top_iso = stays_on_top && top_cols.len() == top_rows.len() && rank == top_rows.len();
    Ok(ShiftMaps {
        alpha,
        beta,
        beta_alpha_identity,
        top_iso,
        top_degree,
        top_dim_shift: top_cols.len(),
        top_dim: top_rows.len(),
    })
}
