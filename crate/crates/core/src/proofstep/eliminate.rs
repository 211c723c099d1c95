use alloc::string::String;
use alloc::vec::Vec;

use super::AffineAdditiveElement;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::poly::{same_ring, GradedPoly};

/// `x^q + numerator / h^h_power` lies in the localized ideal, so on the
/// open set `h != 0` the coordinate `x` is `-(numerator / h^h_power)^{1/q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub var: usize,
    pub name: String,
    pub numerator: GradedPoly,
    pub h_power: u32,
}

#[derive(Clone, Debug)]
pub struct EliminationCertificate {
    pub h: GradedPoly,
    /// The Frobenius power `q = p̄^e` on the eliminated coordinates.
    pub power: u64,
    pub entries: Vec<CertificateEntry>,
    /// Elements whose additive parts formed the unit minor.
    pub rows: Vec<usize>,
}

impl CertificateEntry {
    /// `h^a x^q + numerator`.
    pub fn cleared(&self, h: &GradedPoly, q: u64) -> GradedPoly {
        let ring = self.numerator.ring();
        &(&h.pow(self.h_power as u64) * &GradedPoly::var_at(ring, self.var).pow(q)) + &self.numerator
    }

    /// Value of `x^q` at a point with `h != 0`.
    pub fn solve_at(&self, h: &GradedPoly, point: &[Scalar]) -> Option<Scalar> {
        let hv = h.eval(point);
        if hv.is_zero() {
            return None;
        }
        let den = hv.pow(self.h_power as u64);
        Some(-(&self.numerator.eval(point) * &den.inv()?))
    }

    /// Text form `x^q = -(numerator)/(h)^a`.
    pub fn expression(&self, h: &GradedPoly, q: u64) -> String {
        let lhs = if q == 1 {
            self.name.clone()
        } else {
            alloc::format!("{}^{q}", self.name)
        };
        match self.h_power {
            0 => alloc::format!("{lhs} = -({})", self.numerator),
            1 => alloc::format!("{lhs} = -({})/({h})", self.numerator),
            a => alloc::format!("{lhs} = -({})/({h})^{a}", self.numerator),
        }
    }
}

/// Up to this many row subsets are tried when searching for a unit minor.
const MAX_SUBSETS: usize = 20_000;

/// `c · h^a` with `c` a nonzero constant.
fn unit_part(det: &GradedPoly, h: &GradedPoly) -> Option<(Scalar, u32)> {
    if det.is_zero() {
        return None;
    }
    let mut rest = det.clone();
    let mut a = 0;
    if !h.is_constant() {
        while let Some(q) = rest.div_exact(h) {
            rest = q;
            a += 1;
        }
    }
    rest.is_constant().then(|| (rest.constant_term(), a))
}

fn next_subset(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        if idx[pos] < m - k + pos {
            idx[pos] += 1;
            for p in pos + 1..k {
                idx[p] = idx[p - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves the additive parts for the eliminated coordinates by Cramer's rule
/// on a minor of the form `c · h^a`.
pub fn eliminate(elements: &[AffineAdditiveElement], h: &GradedPoly) -> Result<EliminationCertificate> {
    let first = elements
        .first()
        .ok_or_else(|| Error::InvalidInput("no elements to eliminate with".into()))?;
    let ring = first.k.ring().clone();
    if !same_ring(h.ring(), &ring) {
        return Err(Error::RingMismatch);
    }
    if h.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let vars: Vec<usize> = first.additive_part.iter().map(|(v, _)| *v).collect();
    let q = first.power;
    for e in elements {
        if !same_ring(e.k.ring(), &ring)
            || e.power != q
            || e.additive_part.iter().map(|(v, _)| *v).ne(vars.iter().copied())
        {
            return Err(Error::InvalidInput(
                "elements disagree on the eliminated coordinates".into(),
            ));
        }
    }
    let (m, w) = (elements.len(), vars.len());
    let zero = GradedPoly::zero(&ring);
    if w == 0 {
        return Ok(EliminationCertificate {
            h: h.clone(),
            power: q,
            entries: Vec::new(),
            rows: Vec::new(),
        });
    }
    if m < w {
        return Err(Error::CertificateNotFound);
    }
    let full = Matrix::from_fn(m, w, &zero, |i, j| elements[i].additive_part[j].1.clone());
    let cols: Vec<usize> = (0..w).collect();
    let mut idx: Vec<usize> = (0..w).collect();
    let mut tried = 0;
    loop {
        let minor = full.submatrix(&idx, &cols);
        if let Some((c, a0)) = unit_part(&minor.det()?, h) {
            let cinv = c.inv().ok_or(Error::DivisionByZero)?;
            let mut entries = Vec::with_capacity(w);
            for (j, &var) in vars.iter().enumerate().take(w) {
                let mut mj = minor.clone();
                for (r, &i) in idx.iter().enumerate() {
                    mj.set(r, j, elements[i].constant_part.clone());
                }
                let mut num = mj.det()?.scale(&cinv);
                let mut a = a0;
                while a > 0 && !h.is_constant() {
                    match num.div_exact(h) {
                        Some(qt) => {
                            num = qt;
                            a -= 1;
                        }
                        None => break,
                    }
                }
                entries.push(CertificateEntry {
                    var,
                    name: ring.vars()[var].name.clone(),
                    numerator: num,
                    h_power: a,
                });
            }
            return Ok(EliminationCertificate {
                h: h.clone(),
                power: q,
                entries,
                rows: idx,
            });
        }
        tried += 1;
        if tried >= MAX_SUBSETS || !next_subset(&mut idx, m) {
            return Err(Error::CertificateNotFound);
        }
    }
}
