use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eliminate::{eliminate, EliminationCertificate};
use super::extract::{extract_k, AffineAdditiveElement, ShiftedFrame};
use super::phi::phi_decompose;
use super::sample::{PointSampler, RankOneSampler};
use super::{compute_h, delta_degree, VarietyPresentation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::functor::{CoordinateSystem, FunctorExpr};
use crate::groebner::normal_form;
use crate::matrix::{strict_tuples, Matrix};
use crate::poly::{GradedPoly, RingRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, status: CheckStatus, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            status,
            witness,
        }
    }

    fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::new(name, CheckStatus::Pass, None)
        } else {
            Check::new(name, CheckStatus::Fail, Some(witness()))
        }
    }
}

/// Everything needed to run one step on a variety presented on `P(U)`.
pub struct StepInput<'a> {
    pub variety: VarietyPresentation,
    pub f: GradedPoly,
    /// Coordinates of `r0` relative to the designated summand; the first
    /// basis vector giving a usable `h` when absent.
    pub r0: Option<Vec<Scalar>>,
    pub n: usize,
    /// Labelled maps `φ: V -> U`; coordinate injections when absent.
    pub maps: Option<Vec<(String, Matrix<Scalar>)>>,
    /// Generators of the ideal of `X(U ⊕ V)` in the ring of [`ShiftedFrame::std_ring`].
    pub ideal: Option<Vec<GradedPoly>>,
    pub sampler: Option<&'a dyn PointSampler>,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub field: Field,
    pub functor: FunctorExpr,
    pub u: usize,
    pub n: usize,
    pub seed: u64,
    pub f: GradedPoly,
    pub delta: Option<u64>,
    pub r0: String,
    pub e0: u32,
    pub h: GradedPoly,
    /// `(label, k)` per map `φ`.
    pub k: Vec<(String, GradedPoly)>,
    pub elements: Vec<AffineAdditiveElement>,
    pub certificate: Option<EliminationCertificate>,
    pub checks: Vec<Check>,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skipped))
    }

    pub fn inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Inconclusive)
    }

    /// `(coordinate, numerator, h-power, solved form)` per eliminated coordinate.
    pub fn certificate_lines(&self) -> Vec<(String, String, u32, String)> {
        match &self.certificate {
            None => Vec::new(),
            Some(c) => c
                .entries
                .iter()
                .map(|e| {
                    (
                        e.name.clone(),
                        e.numerator.to_string(),
                        e.h_power,
                        e.expression(&c.h, c.power),
                    )
                })
                .collect(),
        }
    }
}

/// Every injection sending the `u` chosen basis vectors of `V` (increasing)
/// onto the standard basis of `U`, labelled by their 1-based indices.
pub fn injection_maps(u: usize, n: usize, field: Field) -> Vec<(String, Matrix<Scalar>)> {
    strict_tuples(n, u)
        .into_iter()
        .map(|tuple| {
            let m = Matrix::from_fn(u, n, &field.zero(), |a, j| {
                if tuple[a] == j {
                    field.one()
                } else {
                    field.zero()
                }
            });
            let label = tuple.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            (label, m)
        })
        .collect()
}

/// The 2x2 minors of the generic `m x m` matrix whose entries are the first
/// `m^2` variables of `ring`, row by row.
pub fn rank_one_ideal(ring: &RingRef, m: usize) -> Result<Vec<GradedPoly>> {
    if ring.nvars() < m * m {
        return Err(Error::Shape("ring too small for the generic matrix".into()));
    }
    let x = |a: usize, b: usize| GradedPoly::var_at(ring, a * m + b);
    let mut out = Vec::new();
    for a in 0..m {
        for c in a + 1..m {
            for b in 0..m {
                for d in b + 1..m {
                    out.push(&(&x(a, b) * &x(c, d)) - &(&x(a, d) * &x(c, b)));
                }
            }
        }
    }
    Ok(out)
}

fn describe_r0(x: &VarietyPresentation, r0: &[Scalar]) -> String {
    let names = x.coords.coords_of_summand(x.designated_r);
    names
        .iter()
        .zip(r0)
        .map(|(&i, c)| format!("{}={}", x.coords.ring.vars()[i].name, c))
        .collect::<Vec<_>>()
        .join(",")
}

fn status_of(err: &Error) -> CheckStatus {
    if err.is_inconclusive() {
        CheckStatus::Inconclusive
    } else {
        CheckStatus::Fail
    }
}

/// `delta_degree -> compute_h -> phi_decompose -> extract_k -> eliminate`,
/// followed by the sampled and ideal-theoretic validations.
pub fn run_proof_step(input: &StepInput<'_>) -> Result<StepReport> {
    let x = &input.variety;
    let field = x.coords.field();
    let u = x.coords.n;
    let n = input.n;
    if n < u {
        return Err(Error::InvalidInput(format!("need n >= u, got n = {n}, u = {u}")));
    }
    let p = x.coords.functor.clone();
    let f = &input.f;
    let mut checks = Vec::new();

    let delta = delta_degree(x)?;
    checks.push(Check::from_bool(
        "delta_equals_deg_f",
        delta.delta == f.weighted_degree(),
        || format!("delta = {:?}, deg f = {:?}", delta.delta, f.weighted_degree()),
    ));

    let r0 = match &input.r0 {
        Some(r) => r.clone(),
        None => {
            let width = x.coords.coords_of_summand(x.designated_r).len();
            let mut found = None;
            for k in 0..width {
                let cand: Vec<Scalar> = (0..width)
                    .map(|i| if i == k { field.one() } else { field.zero() })
                    .collect();
                if compute_h(f, x, &cand).is_ok() {
                    found = Some(cand);
                    break;
                }
            }
            found.ok_or(Error::DerivativeVanishes)?
        }
    };
    let hres = compute_h(f, x, &r0)?;
    let h = hres.h.clone();
    let (df, dh) = (f.weighted_degree().unwrap_or(0), h.weighted_degree().unwrap_or(0));
    checks.push(Check::from_bool("degree_drop", dh < df, || {
        format!("deg h = {dh}, deg f = {df}")
    }));

    let frame = ShiftedFrame::new(x, n)?;
    let h_big = frame.pullback(&h)?;
    let maps = match &input.maps {
        Some(m) => m.clone(),
        None => injection_maps(u, n, field),
    };

    let mut ks = Vec::new();
    let mut elements = Vec::new();
    for (label, phi) in &maps {
        let surjective = phi.rank() == u;
        checks.push(Check::from_bool(format!("phi_surjective[{label}]"), surjective, || {
            format!("rank {}", phi.rank())
        }));
        match phi_decompose(&p, u, n, phi) {
            Ok(d) => checks.push(Check::from_bool(
                format!("phi_decomposition[{label}]"),
                d.passed(),
                || {
                    format!(
                        "block_diagonal={} degree_bound={} top={} bottom={} vanishing={}",
                        d.block_diagonal, d.degree_bound, d.top_matches, d.bottom_matches, d.vanishing
                    )
                },
            )),
            Err(e) => checks.push(Check::new(
                format!("phi_decomposition[{label}]"),
                status_of(&e),
                Some(e.to_string()),
            )),
        }
        match extract_k(f, x, &frame, phi) {
            Ok(el) => {
                checks.push(Check::new(format!("affine_additive[{label}]"), CheckStatus::Pass, None));
                checks.push(Check::from_bool(
                    format!("derivative_formula[{label}]"),
                    el.derivative_identity,
                    || "(d_r k)(q) differs from (d_{R(phi) r} f)(P(pi_U) q)".into(),
                ));
                ks.push((label.clone(), el.k.clone()));
                elements.push((label.clone(), el));
            }
            Err(e) => checks.push(Check::new(
                format!("affine_additive[{label}]"),
                status_of(&e),
                Some(e.to_string()),
            )),
        }
    }

    let els: Vec<AffineAdditiveElement> = elements.iter().map(|(_, e)| e.clone()).collect();
    let certificate = if els.is_empty() {
        checks.push(Check::new("certificate", CheckStatus::Fail, Some("no elements".into())));
        None
    } else {
        match eliminate(&els, &h_big) {
            Ok(c) => {
                checks.push(Check::from_bool(
                    "certificate_covers_summand",
                    c.entries.len() == frame.eliminated.len(),
                    || format!("{} of {}", c.entries.len(), frame.eliminated.len()),
                ));
                Some(c)
            }
            Err(e) => {
                checks.push(Check::new("certificate", status_of(&e), Some(e.to_string())));
                None
            }
        }
    };

    sampled_checks(input, &frame, &h_big, &elements, certificate.as_ref(), &mut checks)?;
    ideal_checks(input, &frame, certificate.as_ref(), &mut checks)?;

    Ok(StepReport {
        field,
        functor: p,
        u,
        n,
        seed: input.seed,
        f: f.clone(),
        delta: delta.delta,
        r0: describe_r0(x, &r0),
        e0: hres.e0,
        h,
        k: ks,
        elements: els,
        certificate,
        checks,
    })
}

fn sampled_checks(
    input: &StepInput<'_>,
    frame: &ShiftedFrame,
    h_big: &GradedPoly,
    elements: &[(String, AffineAdditiveElement)],
    certificate: Option<&EliminationCertificate>,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let sample_names = {
        let mut v = vec![
            "f_vanishes_on_samples".to_string(),
            "certificate_at_samples".to_string(),
        ];
        for (label, _) in elements {
            v.push(format!("f_phi_vanishes[{label}]"));
            v.push(format!("k_vanishes[{label}]"));
        }
        v
    };
    let sampler = match input.sampler {
        Some(s) => s,
        None => {
            for name in sample_names {
                checks.push(Check::new(name, CheckStatus::Skipped, Some("no sampler".into())));
            }
            return Ok(());
        }
    };
    let x = &input.variety;
    let field = x.coords.field();
    let u = frame.u;
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);

    // f on X(U).
    let mut bad = None;
    for s in 0..input.samples {
        let pt = x.coords.to_adapted(&sampler.sample(u, field, &mut rng))?;
        if !input.f.eval(&pt).is_zero() {
            bad = Some(format!("sample {s}"));
            break;
        }
    }
    checks.push(Check::from_bool("f_vanishes_on_samples", bad.is_none(), || {
        bad.unwrap_or_default()
    }));

    // Points of X(U ⊕ V) with h(P(π_U) q) != 0.
    let cs = &frame.shifted;
    let m = u + frame.n;
    let mut points = Vec::with_capacity(input.samples);
    let mut attempts = 0;
    while points.len() < input.samples && attempts < 50 * input.samples.max(1) {
        attempts += 1;
        let q = cs.to_adapted(&sampler.sample(m, field, &mut rng))?;
        if !h_big.eval(&q).is_zero() {
            points.push(q);
        }
    }
    let short = points.len() < input.samples;

    for (label, el) in elements {
        let t = el.expansion.ring().nvars() - 1;
        let coeffs = el.expansion.coefficients_in(t);
        let mut fail = None;
        'pts: for (s, q) in points.iter().enumerate() {
            let mut ext = q.clone();
            ext.push(field.zero());
            for c in coeffs.values() {
                if !c.eval(&ext).is_zero() {
                    fail = Some(format!("sample {s}"));
                    break 'pts;
                }
            }
        }
        checks.push(sample_check(
            format!("f_phi_vanishes[{label}]"),
            fail,
            short,
            points.len(),
        ));
        let fail = points
            .iter()
            .position(|q| !el.k.eval(q).is_zero())
            .map(|s| format!("sample {s}"));
        checks.push(sample_check(format!("k_vanishes[{label}]"), fail, short, points.len()));
    }

    match certificate {
        None => checks.push(Check::new(
            "certificate_at_samples",
            CheckStatus::Skipped,
            Some("no certificate".into()),
        )),
        Some(c) => {
            let mut fail = None;
            'outer: for (s, q) in points.iter().enumerate() {
                for e in &c.entries {
                    let actual = q[e.var].pow(c.power);
                    match e.solve_at(&c.h, q) {
                        Some(v) if v == actual => {}
                        other => {
                            fail = Some(format!(
                                "sample {s}: {} recovered {:?}, actual {}",
                                e.name,
                                other.map(|v| v.to_string()),
                                actual
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            checks.push(sample_check(
                "certificate_at_samples".to_string(),
                fail,
                short,
                points.len(),
            ));
        }
    }
    Ok(())
}

fn sample_check(name: String, fail: Option<String>, short: bool, count: usize) -> Check {
    match fail {
        Some(w) => Check::new(name, CheckStatus::Fail, Some(w)),
        None if count == 0 => Check::new(name, CheckStatus::Inconclusive, Some("no usable samples".into())),
        None if short => Check::new(name, CheckStatus::Pass, Some(format!("{count} samples"))),
        None => Check::new(name, CheckStatus::Pass, None),
    }
}

fn ideal_checks(
    input: &StepInput<'_>,
    frame: &ShiftedFrame,
    certificate: Option<&EliminationCertificate>,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let cert = match certificate {
        Some(c) => c,
        None => return Ok(()),
    };
    let ideal = match &input.ideal {
        Some(g) => g,
        None => {
            for e in &cert.entries {
                checks.push(Check::new(
                    format!("certificate_in_ideal[{}]", e.name),
                    CheckStatus::Skipped,
                    Some("no ideal".into()),
                ));
            }
            return Ok(());
        }
    };
    let std_ring = match ideal.first() {
        Some(g) => g.ring().clone(),
        None => frame.std_ring()?,
    };
    let to_std = frame.shifted.adapted_coordinates_in(&std_ring)?;
    for e in &cert.entries {
        let name = format!("certificate_in_ideal[{}]", e.name);
        let g = e.cleared(&cert.h, cert.power).substitute_vec(&std_ring, &to_std)?;
        match normal_form(&g, ideal) {
            Ok(r) if r.is_zero() => checks.push(Check::new(name, CheckStatus::Pass, None)),
            Ok(r) => checks.push(Check::new(name, CheckStatus::Fail, Some(format!("normal form {r}")))),
            Err(err) => checks.push(Check::new(name, status_of(&err), Some(err.to_string()))),
        }
    }
    Ok(())
}

/// The rank-one tensors in `K^2 ⊗ K^2` with `f = det`, stepped to `V = K^n`.
pub fn run_running_example(n: usize, field: Field, seed: u64) -> Result<StepReport> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if n < 2 {
        return Err(Error::InvalidInput("the running example needs n >= 2".into()));
    }
    let p = FunctorExpr::tensor2(FunctorExpr::Id, FunctorExpr::Id);
    let coords = CoordinateSystem::new(&p, 2, field)?;
    let std_ring = crate::poly::GradedRing::with_names(field, &coords.std_names)?;
    let det = rank_one_ideal(&std_ring, 2)?.remove(0);
    let f = det.substitute_vec(&coords.ring, &coords.std_coordinates_in(&coords.ring)?)?;
    let x = VarietyPresentation::from_coords(coords, vec![f.clone()], Vec::new(), 1)?;
    let frame = ShiftedFrame::new(&x, n)?;
    let big_ring = frame.std_ring()?;
    let ideal = rank_one_ideal(&big_ring, n + 2)?;
    let sampler = RankOneSampler;
    run_proof_step(&StepInput {
        variety: x,
        f,
        r0: Some(vec![field.one()]),
        n,
        maps: None,
        ideal: Some(ideal),
        sampler: Some(&sampler),
        seed,
        samples: 100,
    })
}
