//! Induced linear maps `P(φ)` in standard bases.

use alloc::vec::Vec;

use super::basis::{adapted_change_matrix, quotient_kept, std_labels};
use super::FunctorExpr;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{LabeledMatrix, Matrix, RingElement};

/// Embeds a scalar matrix into matrices over `T`.
pub fn lift_scalars<T: RingElement>(m: &Matrix<Scalar>, zero: &T) -> Matrix<T> {
    let one = zero.one_like();
    m.map(zero, |s| one.scale(s))
}

/// `P(φ)` for `φ: K^n -> K^m` given as an `m x n` matrix. Entries may be
/// scalars or polynomials.
pub fn induced_map<T: RingElement>(expr: &FunctorExpr, phi: &Matrix<T>) -> Result<Matrix<T>> {
    expr.validate()?;
    induced(expr, phi)
}

fn induced<T: RingElement>(expr: &FunctorExpr, phi: &Matrix<T>) -> Result<Matrix<T>> {
    use FunctorExpr::*;
    let zero = phi.zero_elem().clone();
    Ok(match expr {
        Const(m) => Matrix::identity(*m, &zero),
        Id => phi.clone(),
        Sum(cs) => {
            let blocks = cs.iter().map(|c| induced(c, phi)).collect::<Result<Vec<_>>>()?;
            Matrix::block_diag(&blocks, &zero)
        }
        Tensor(cs) => {
            let mut acc = Matrix::identity(1, &zero);
            for c in cs {
                acc = acc.kron(&induced(c, phi)?);
            }
            acc
        }
        Sym(d, c) => induced(c, phi)?.sym_power(*d),
        Ext(d, c) => induced(c, phi)?.ext_power(*d),
        Shift(u, c) => {
            let lifted = Matrix::block_diag(&[Matrix::identity(*u, &zero), phi.clone()], &zero);
            induced(c, &lifted)?
        }
        Quot(c, k) => {
            let field = zero.field();
            let (n, m) = (phi.cols(), phi.rows());
            let a_in = lift_scalars(&adapted_change_matrix(c, n, field)?, &zero);
            let a_out_inv = adapted_change_matrix(c, m, field)?
                .inverse()
                .ok_or_else(|| Error::IdentityCheck("adapted change of basis is singular".into()))?;
            let a_out_inv = lift_scalars(&a_out_inv, &zero);
            let full = a_out_inv.mul(&induced(c, phi)?).mul(&a_in);
            let kept_in = quotient_kept(c, *k, n)?;
            let kept_out = quotient_kept(c, *k, m)?;
            let deleted_in: Vec<usize> = (0..full.cols()).filter(|j| !kept_in.contains(j)).collect();
            if !full.submatrix(&kept_out, &deleted_in).is_zero() {
                return Err(Error::QuotientIllDefined);
            }
            full.submatrix(&kept_out, &kept_in)
        }
    })
}

/// [`induced_map`] with standard basis labels attached.
pub fn induced_labeled<T: RingElement>(expr: &FunctorExpr, phi: &Matrix<T>) -> Result<LabeledMatrix<T>> {
    let m = induced_map(expr, phi)?;
    LabeledMatrix::new(std_labels(expr, phi.cols())?, std_labels(expr, phi.rows())?, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::functor::FunctorExpr::*;
    use crate::poly::{GradedPoly, GradedRing};
    use alloc::vec;

    fn q(rows: usize, cols: usize, v: &[i64]) -> Matrix<Scalar> {
        let f = Field::Rationals;
        Matrix::new(rows, cols, v.iter().map(|&x| f.from_int(x)).collect(), f.zero()).unwrap()
    }

    #[test]
    fn identity_goes_to_identity() {
        let e = FunctorExpr::quot(FunctorExpr::shift(1, FunctorExpr::tensor2(Id, Id)), 3);
        let id = Matrix::identity(2, &Field::Rationals.zero());
        assert!(induced_map(&e, &id).unwrap().is_identity());
    }

    #[test]
    fn exterior_square_of_3x3() {
        let phi = q(3, 3, &[1, 2, 0, 0, 1, 3, 4, 0, 1]);
        let m = induced_map(&FunctorExpr::ext(2, Id), &phi).unwrap();
        assert_eq!(m, phi.ext_power(2));
        assert_eq!((m.rows(), m.cols()), (3, 3));
    }

    #[test]
    fn block_formula_for_shifted_tensor_square() {
        // P(1_U + t φ) on M = [[C, D], [E, F]] gives C + t(φE + Dφ^T) + t^2 φFφ^T
        // once M is viewed as the (u+n)x(u+n) matrix of a tensor.
        let r = GradedRing::with_names(Field::Rationals, &["t"]).unwrap();
        let t = GradedPoly::var(&r, "t").unwrap();
        let zero = GradedPoly::zero(&r);
        let (u, n) = (2usize, 1usize);
        // φ: K^n -> K^u, here the column (1, 2)^T; 1_U + tφ: K^{u+n} -> K^u.
        let map = Matrix::from_fn(u, u + n, &zero, |i, j| {
            if j < u {
                if i == j {
                    GradedPoly::one(&r)
                } else {
                    zero.clone()
                }
            } else {
                t.scale(&Field::Rationals.from_int([1, 2][i]))
            }
        });
        let big = induced_map(&FunctorExpr::tensor2(Id, Id), &map).unwrap();
        assert_eq!((big.rows(), big.cols()), (4, 9));
        // Entry (1,1) of the image of E_33 (the F block) is t^2 φ_1 φ_1.
        assert_eq!(big.get(0, 8), &(&t * &t));
        // Image of E_13 (a D entry) in position (1,1): t φ_1.
        assert_eq!(big.get(0, 2), &t);
    }

    #[test]
    fn quotient_of_sum_keeps_other_branch() {
        let e = FunctorExpr::quot(FunctorExpr::Sum(vec![Id, Id]), 0);
        let phi = q(1, 1, &[3]);
        assert_eq!(induced_map(&e, &phi).unwrap(), q(1, 1, &[3]));
    }
}
