use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::functor::{induced_map, lift_scalars, CoordinateSystem, FunctorExpr};
use crate::matrix::Matrix;
use crate::poly::{GradedPoly, GradedRing};

/// `[a·1_U | b·φ]: U ⊕ V -> U` for `φ` of shape `u x n`.
pub(crate) fn split_map<T: crate::matrix::RingElement>(u: usize, phi: &Matrix<T>, a: &T, b: &T) -> Matrix<T> {
    let zero = phi.zero_elem().clone();
    Matrix::from_fn(u, u + phi.cols(), &zero, |i, j| {
        if j < u {
            if i == j {
                a.clone()
            } else {
                zero.clone()
            }
        } else {
            phi.get(i, j - u).mul(b)
        }
    })
}

/// `Φ(t) = P(1_U ⊕ tφ)` in adapted coordinates, split as `Φ_e(t) = Σ t^i Φ_{ei}`.
#[derive(Clone, Debug)]
pub struct PhiDecomposition {
    pub u: usize,
    pub n: usize,
    /// `parts[e][i] = Φ_{ei}`: rows are the degree-`e` coordinates of `P(U)`,
    /// columns those of `P(U ⊕ V)`.
    pub parts: BTreeMap<u32, Vec<Matrix<Scalar>>>,
    pub rows: BTreeMap<u32, Vec<usize>>,
    pub cols: BTreeMap<u32, Vec<usize>>,
    /// `Φ(t)` preserves the degree decomposition.
    pub block_diagonal: bool,
    /// No power of `t` above `e` occurs in `Φ_e(t)`.
    pub degree_bound: bool,
    /// `Φ_{ee} = P_e(0 ⊕ φ)`.
    pub top_matches: bool,
    /// `Φ_{e0} = P_e(π_U)`.
    pub bottom_matches: bool,
    /// `Φ_{ei}` kills `P'_{ej}(V)` for `j != i`.
    pub vanishing: bool,
}

impl PhiDecomposition {
    pub fn passed(&self) -> bool {
        self.block_diagonal && self.degree_bound && self.top_matches && self.bottom_matches && self.vanishing
    }
}

fn degrees(c: &CoordinateSystem) -> Vec<u32> {
    c.element_summand.iter().map(|&k| c.summands[k].degree).collect()
}

pub fn phi_decompose(p: &FunctorExpr, u: usize, n: usize, phi: &Matrix<Scalar>) -> Result<PhiDecomposition> {
    if phi.rows() != u || phi.cols() != n {
        return Err(Error::Shape(alloc::format!(
            "φ must be {u}x{n}, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    let field: Field = phi.zero_elem().field();
    let cu = CoordinateSystem::new(p, u, field)?;
    let cb = CoordinateSystem::new(p, u + n, field)?;
    let cs = CoordinateSystem::new(&FunctorExpr::shift(u, p.clone()), n, field)?;

    let tr = GradedRing::with_names(field, &["t"])?;
    let t = GradedPoly::var_at(&tr, 0);
    let one = GradedPoly::one(&tr);
    let zero = GradedPoly::zero(&tr);
    let phi_t = lift_scalars(phi, &zero);
    let big = induced_map(p, &split_map(u, &phi_t, &one, &t))?;
    let psi = lift_scalars(&cu.change_inv, &zero)
        .mul(&big)
        .mul(&lift_scalars(&cb.change, &zero));

    let adapt = |m: Matrix<Scalar>| cu.change_inv.mul(&m).mul(&cb.change);
    let fz = field.zero();
    let fo = field.one();
    let top = adapt(induced_map(p, &split_map(u, phi, &fz, &fo))?);
    let bottom = adapt(induced_map(p, &split_map(u, phi, &fo, &fz))?);

    let row_deg = degrees(&cu);
    let col_deg = degrees(&cb);
    let fine_deg = degrees(&cs);

    let mut block_diagonal = true;
    for (i, ri) in row_deg.iter().enumerate() {
        for (j, cj) in col_deg.iter().enumerate() {
            if ri != cj && !psi.get(i, j).is_zero() {
                block_diagonal = false;
            }
        }
    }

    let mut parts = BTreeMap::new();
    let mut rows_by = BTreeMap::new();
    let mut cols_by = BTreeMap::new();
    let (mut degree_bound, mut top_matches, mut bottom_matches, mut vanishing) = (true, true, true, true);
    let mut all_degrees: Vec<u32> = row_deg.iter().chain(&col_deg).copied().collect();
    all_degrees.sort_unstable();
    all_degrees.dedup();
    for e in all_degrees {
        let rows: Vec<usize> = (0..row_deg.len()).filter(|&i| row_deg[i] == e).collect();
        let cols: Vec<usize> = (0..col_deg.len()).filter(|&j| col_deg[j] == e).collect();
        let block = psi.submatrix(&rows, &cols);
        let mut pieces: Vec<Matrix<Scalar>> = (0..=e).map(|_| Matrix::zeros(rows.len(), cols.len(), &fz)).collect();
        for a in 0..rows.len() {
            for b in 0..cols.len() {
                for (pow, c) in block.get(a, b).coefficients_in(0) {
                    if pow > e {
                        degree_bound = false;
                    } else {
                        pieces[pow as usize].set(a, b, c.constant_term());
                    }
                }
            }
        }
        if pieces[e as usize] != top.submatrix(&rows, &cols) {
            top_matches = false;
        }
        if pieces[0] != bottom.submatrix(&rows, &cols) {
            bottom_matches = false;
        }
        for (i, piece) in pieces.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if fine_deg[j] as usize != i && (0..rows.len()).any(|a| !piece.get(a, b).is_zero()) {
                    vanishing = false;
                }
            }
        }
        parts.insert(e, pieces);
        rows_by.insert(e, rows);
        cols_by.insert(e, cols);
    }
    Ok(PhiDecomposition {
        u,
        n,
        parts,
        rows: rows_by,
        cols: cols_by,
        block_diagonal,
        degree_bound,
        top_matches,
        bottom_matches,
        vanishing,
    })
}
