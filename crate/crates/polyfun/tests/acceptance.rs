//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines appear in plain
//! `cargo test` output.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use polyfun::text::parse_poly;
use polyfun_core::functor::{
    compare_order, decompose, induced_map, lift_scalars, shift_maps, summands, CoordinateSystem, FunctorExpr,
    OrderRelation,
};
use polyfun_core::hasse::{directional_data, taylor_expand, DirectionSubspace, DirectionalData, JointDerivative};
use polyfun_core::matrix::Matrix;
use polyfun_core::proofstep::{compute_h, run_running_example, VarietyPresentation};
use polyfun_core::{Field, GradedPoly, GradedRing, RingRef, Scalar, Variable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use FunctorExpr::Id;

const Q: Field = Field::Rationals;
const RUNNING_EXAMPLE_BUDGET: Duration = Duration::from_secs(10);
const TAYLOR_FUZZ_BUDGET: Duration = Duration::from_secs(60);
const TAYLOR_FUZZ_COUNT: usize = 500;
const FUNCTORIALITY_PAIRS: usize = 200;
const RANDOM_DEPENDENT: usize = 100;
const ORDER_SAMPLE: usize = 10;
const SEED: u64 = 20_261_015;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn var(ring: &RingRef, name: &str) -> GradedPoly {
    GradedPoly::var(ring, name).unwrap()
}

fn tt() -> FunctorExpr {
    FunctorExpr::tensor2(Id, Id)
}

/// `x_ab` in y/z coordinates: `y_ab + z_ab` above the diagonal, `y_ba - z_ba` below.
fn x_entry(ring: &RingRef, a: usize, b: usize) -> GradedPoly {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Equal => var(ring, &format!("y_{a}_{a}")),
        Less => &var(ring, &format!("y_{a}_{b}")) + &var(ring, &format!("z_{a}_{b}")),
        Greater => &var(ring, &format!("y_{b}_{a}")) - &var(ring, &format!("z_{b}_{a}")),
    }
}

fn yz_ring(field: Field, m: usize) -> RingRef {
    let mut names = Vec::new();
    for a in 1..=m {
        for b in a..=m {
            names.push(format!("y_{a}_{b}"));
        }
    }
    for a in 1..=m {
        for b in a + 1..=m {
            names.push(format!("z_{a}_{b}"));
        }
    }
    GradedRing::new(field, names.into_iter().map(|n| Variable::new(n, "", 2)).collect()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_polyfun"))
        .args(["example-rank1", "--n", "3", "--field", "q", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["h"] == "2*z_1_2", || format!("h = {}", v["h"]))?;
    ensure(v["delta"] == 4, || format!("delta = {}", v["delta"]))?;
    let cert = v["certificate"].as_object().ok_or("no certificate")?;
    let names: Vec<&str> = cert.keys().map(String::as_str).collect();
    ensure(names == ["z_3_4", "z_3_5", "z_4_5"], || format!("eliminated {names:?}"))?;
    for (name, e) in cert {
        ensure(e["denominator"] == "2*z_1_2" && e["h_power"] == 1, || {
            format!("{name}: {e}")
        })?;
    }
    for c in v["checks"].as_array().ok_or("no checks")? {
        ensure(c["status"] == "pass" || c["status"] == "skipped", || {
            format!("check {c}")
        })?;
    }

    // Independent replay: 100 seeded rank-one 5×5 matrices with z_12 != 0.
    let ring = yz_ring(Q, 5);
    let f = parse_poly(v["f"].as_str().unwrap(), &ring).map_err(|e| e.to_string())?;
    let h = parse_poly("2*z_1_2", &ring).unwrap();
    ensure(f.weighted_degree() == Some(4) && h.weighted_degree() == Some(2), || {
        "degrees".into()
    })?;
    let nums: Vec<(usize, GradedPoly)> = cert
        .iter()
        .map(|(name, e)| {
            (
                ring.require(name).unwrap(),
                parse_poly(e["numerator"].as_str().unwrap(), &ring).unwrap(),
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    while checked < 100 {
        let v: Vec<i64> = (0..5).map(|_| rng.gen_range(-9..=9)).collect();
        let w: Vec<i64> = (0..5).map(|_| rng.gen_range(-9..=9)).collect();
        let x = |a: usize, b: usize| Q.from_int(v[a - 1] * w[b - 1]);
        let half = Q.from_ratio(&1.into(), &2.into()).unwrap();
        let point: Vec<Scalar> = ring
            .names()
            .map(|n| {
                let mut it = n[2..].split('_').map(|s| s.parse::<usize>().unwrap());
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                if n.starts_with('y') {
                    &(&x(a, b) + &x(b, a)) * &half
                } else {
                    &(&x(a, b) - &x(b, a)) * &half
                }
            })
            .collect();
        let hv = h.eval(&point);
        if hv.is_zero() {
            continue;
        }
        ensure(f.eval(&point).is_zero(), || format!("sample {checked}: f != 0"))?;
        for (idx, num) in &nums {
            let solved = -&(&num.eval(&point) * &hv.inv().unwrap());
            ensure(solved == point[*idx], || format!("sample {checked}: coordinate {idx}"))?;
        }
        checked += 1;
    }
    ensure(elapsed < RUNNING_EXAMPLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "h = 2*z_1_2, 3 certificates, 100 rank-one samples exact, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let r = run_running_example(3, Q, SEED).map_err(|e| e.to_string())?;
    let mut matched = 0;
    for (label, k) in &r.k {
        let (i, j) = label.split_once(',').ok_or("bad label")?;
        let (gi, gj): (usize, usize) = (i.parse::<usize>().unwrap() + 2, j.parse::<usize>().unwrap() + 2);
        let ring = k.ring().clone();
        let in_f = |name: &str| name[2..].split('_').all(|s| s.parse::<usize>().unwrap() >= 3);
        let f_vars: Vec<usize> = ring
            .names()
            .enumerate()
            .filter(|(_, n)| in_f(n))
            .map(|(i, _)| i)
            .collect();
        let mut f_part = GradedPoly::zero(&ring);
        for (m, c) in k.terms() {
            if f_vars.iter().any(|&i| m.0[i] > 0) {
                f_part = &f_part + &GradedPoly::monomial(&ring, m.clone(), c.clone());
            }
        }
        let c = |a, b| x_entry(&ring, a, b);
        let expected = &(&(&c(gi, gi) * &c(2, 2)) + &(&c(gj, gj) * &c(1, 1)))
            - &(&(&c(gi, gj) * &c(2, 1)) + &(&c(gj, gi) * &c(1, 2)));
        ensure(f_part == expected, || {
            format!("k[{label}] F-part {f_part} != {expected}")
        })?;
        matched += 1;
    }
    ensure(matched == 3, || format!("{matched} pairs"))?;
    Ok("F_ii C22 + F_jj C11 - F_ij C21 - F_ji C12 exact for all 3 pairs".into())
}

/// The `t^p` coefficient of `f(x + ta, y + tb, z)` by expanding powers directly.
fn brute_taylor(f: &GradedPoly, p: u64, a: i64, b: i64) -> GradedPoly {
    let ring = f.ring();
    let big = ring.extend([Variable::plain("t")]).unwrap();
    let t = var(&big, "t");
    let images = vec![
        &var(&big, "x") + &(&t * &GradedPoly::from_int(&big, a)),
        &var(&big, "y") + &(&t * &GradedPoly::from_int(&big, b)),
        var(&big, "z"),
    ];
    let g = f.substitute_vec(&big, &images).unwrap();
    let low = g
        .coefficients_in(3)
        .remove(&(p as u32))
        .unwrap_or_else(|| GradedPoly::zero(&big));
    let back: Vec<GradedPoly> = (0..4)
        .map(|i| {
            if i < 3 {
                GradedPoly::var_at(ring, i)
            } else {
                GradedPoly::zero(ring)
            }
        })
        .collect();
    low.substitute_vec(ring, &back).unwrap()
}

fn criterion_3() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_polyfun"))
        .args([
            "--field",
            "fp:5",
            "dderiv",
            "--poly",
            "y^25*z^2 + x^10*y^25*z",
            "--w-vars",
            "x,y",
            "--dir",
            "1,1",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
    ensure(text == "2*x^5*y^25*z", || format!("cli printed {text:?}"))?;
    for p in [5u64, 3] {
        let field = Field::Prime(p);
        let ring = GradedRing::with_names(field, &["x", "y", "z"]).unwrap();
        let (x, y, z) = (var(&ring, "x"), var(&ring, "y"), var(&ring, "z"));
        let f = &(&y.pow(p * p) * &z.pow(2)) + &(&(&x.pow(2 * p) * &y.pow(p * p)) * &z);
        let space = DirectionSubspace::new(&ring, &["x", "y"]).unwrap();
        let data = directional_data(&f, &space).map_err(|e| e.to_string())?;
        let j = data.joint().ok_or("independent")?;
        ensure(j.level == 1 && j.power == p, || {
            format!("p={p}: level {} power {}", j.level, j.power)
        })?;
        let jr = j.ring();
        let expected = &(&GradedPoly::from_int(jr, 2) * &var(jr, "w_x").pow(p))
            * &(&(&var(jr, "x").pow(p) * &var(jr, "y").pow(p * p)) * &var(jr, "z"));
        ensure(j.h_joint == expected, || format!("p={p}: h = {}", j.h_joint))?;
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let w = [field.from_int(a), field.from_int(b), field.zero()];
                let d = j.specialize(&w).map_err(|e| e.to_string())?;
                let oracle = brute_taylor(&f, p, a, b);
                ensure(d == oracle, || format!("p={p} (a,b)=({a},{b}): {d} vs {oracle}"))?;
            }
        }
    }
    Ok("2a^p x^p y^(p^2) z with e = 1 at p = 5 and p = 3, brute-force Taylor agrees".into())
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &RingRef, max_deg: usize, max_terms: usize) -> GradedPoly {
    let mut p = GradedPoly::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; ring.nvars()];
        for _ in 0..deg {
            e[rng.gen_range(0..ring.nvars())] += 1;
        }
        let c = ring.field().from_int(rng.gen_range(-9..=9));
        p = &p + &GradedPoly::from_terms(ring, [(e, c)]);
    }
    p
}

fn random_space(rng: &mut ChaCha8Rng, ring: &RingRef) -> DirectionSubspace {
    loop {
        let span: Vec<usize> = (0..ring.nvars()).filter(|_| rng.gen_bool(0.5)).collect();
        if !span.is_empty() {
            return DirectionSubspace::from_indices(ring, span).unwrap();
        }
    }
}

const FIELDS: [Field; 4] = [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5)];
const VAR_NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut dependent = 0;
    for i in 0..TAYLOR_FUZZ_COUNT {
        let field = FIELDS[i % FIELDS.len()];
        let ring = GradedRing::with_names(field, &VAR_NAMES[..rng.gen_range(1..=4)]).unwrap();
        let f = random_poly(&mut rng, &ring, 6, 6);
        let space = random_space(&mut rng, &ring);
        let tay = taylor_expand(&f, &space, "t").map_err(|e| e.to_string())?;
        let t = GradedPoly::var_at(&tay.ring, tay.t);
        let mut images: Vec<GradedPoly> = (0..ring.nvars()).map(|k| GradedPoly::var_at(&tay.ring, k)).collect();
        for (slot, &k) in space.span().iter().enumerate() {
            images[k] = &images[k] + &(&t * &GradedPoly::var_at(&tay.ring, tay.copies[slot]));
        }
        let direct = f.substitute_vec(&tay.ring, &images).map_err(|e| e.to_string())?;
        ensure(direct == tay.poly, || format!("case {i}: reassembly failed for {f}"))?;
        match directional_data(&f, &space).map_err(|e| e.to_string())? {
            DirectionalData::Independent => {
                ensure(space.span().iter().all(|&k| !f.uses_var(k)), || {
                    format!("case {i}: independent?")
                })?;
            }
            DirectionalData::Dependent(j) => {
                dependent += 1;
                let pbar = field.char_exponent();
                ensure(pbar.pow(j.level) == j.power, || format!("case {i}: power {}", j.power))?;
                let coeffs = direct.coefficients_in(tay.t);
                let lowest = coeffs
                    .iter()
                    .find(|(k, c)| **k > 0 && !c.is_zero())
                    .map(|(k, _)| *k as u64);
                ensure(lowest == Some(j.power), || format!("case {i}: lowest {lowest:?}"))?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TAYLOR_FUZZ_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{TAYLOR_FUZZ_COUNT} polynomials over Q, F2, F3, F5 ({dependent} dependent), {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_5() -> Outcome {
    let ps = [
        FunctorExpr::sym(3, Id),
        FunctorExpr::ext(2, Id),
        tt(),
        FunctorExpr::Sum(vec![FunctorExpr::sym(2, Id), Id]),
    ];
    let mut cases = 0;
    for p in &ps {
        for u in 1..=2 {
            for n in 1..=5 {
                let s = shift_maps(p, u, n, Q).map_err(|e| e.to_string())?;
                let top = p.degree();
                let expected = decompose(p).unwrap().part_dim(top, n);
                ensure(s.beta_alpha_identity, || format!("{p} u={u} n={n}: beta∘alpha != id"))?;
                ensure(s.top_iso && BigUint::from(s.top_dim_shift) == expected, || {
                    format!("{p} u={u} n={n}: top part {} vs {expected}", s.top_dim_shift)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} cases: beta∘alpha = id, top part iso of the expected dimension"
    ))
}

fn random_functor(rng: &mut ChaCha8Rng, depth: u32) -> FunctorExpr {
    random_functor_with(rng, depth, 0.3)
}

fn random_functor_with(rng: &mut ChaCha8Rng, depth: u32, leaf: f64) -> FunctorExpr {
    if depth == 0 || rng.gen_bool(leaf) {
        return if rng.gen_bool(0.75) {
            Id
        } else {
            FunctorExpr::Const(rng.gen_range(0..=2))
        };
    }
    match rng.gen_range(0..6) {
        0 => FunctorExpr::Sum(
            (0..rng.gen_range(1..=2))
                .map(|_| random_functor_with(rng, depth - 1, leaf))
                .collect(),
        ),
        1 => FunctorExpr::Tensor(
            (0..rng.gen_range(1..=2))
                .map(|_| random_functor_with(rng, depth - 1, leaf))
                .collect(),
        ),
        2 => FunctorExpr::sym(rng.gen_range(1..=2), random_functor_with(rng, depth - 1, leaf)),
        3 => FunctorExpr::ext(rng.gen_range(1..=2), random_functor_with(rng, depth - 1, leaf)),
        4 => FunctorExpr::shift(rng.gen_range(1..=2), random_functor_with(rng, depth - 1, leaf)),
        _ => {
            let c = random_functor_with(rng, depth - 1, leaf);
            match summands(&c) {
                Ok(s) if !s.is_empty() => {
                    let k = rng.gen_range(0..s.len());
                    FunctorExpr::quot(c, k)
                }
                _ => c,
            }
        }
    }
}

fn small_functor(rng: &mut ChaCha8Rng, n: usize) -> FunctorExpr {
    loop {
        let p = random_functor(rng, 2);
        if p.dim(n) <= BigUint::from(40u32) {
            return p;
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize) -> Matrix<Scalar> {
    let data = (0..rows * cols)
        .map(|_| field.from_int(rng.gen_range(-3..=3)))
        .collect();
    Matrix::new(rows, cols, data, field.zero()).unwrap()
}

/// `P(t·1)` conjugated into adapted coordinates is `diag(t^e)`.
fn homogeneity_holds(p: &FunctorExpr, n: usize, field: Field) -> Result<bool, String> {
    let coords = CoordinateSystem::new(p, n, field).map_err(|e| e.to_string())?;
    let r = GradedRing::with_names(field, &["t"]).unwrap();
    let t = GradedPoly::var_at(&r, 0);
    let zero = GradedPoly::zero(&r);
    let m = induced_map(p, &Matrix::identity(n, &zero).scale_by(&t)).map_err(|e| e.to_string())?;
    let adapted = lift_scalars(&coords.change_inv, &zero)
        .mul(&m)
        .mul(&lift_scalars(&coords.change, &zero));
    let expected = Matrix::from_fn(coords.dim(), coords.dim(), &zero, |i, j| {
        if i == j {
            t.pow(coords.summands[coords.element_summand[i]].degree as u64)
        } else {
            zero.clone()
        }
    });
    Ok(adapted == expected)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    // Every constructor appears at least once before the random draws.
    let fixed = [
        FunctorExpr::Const(2),
        Id,
        FunctorExpr::Sum(vec![Id, FunctorExpr::Const(1)]),
        tt(),
        FunctorExpr::sym(2, Id),
        FunctorExpr::ext(2, Id),
        FunctorExpr::shift(1, FunctorExpr::sym(2, Id)),
        FunctorExpr::quot(FunctorExpr::shift(2, tt()), 5),
    ];
    let mut kinds = BTreeMap::new();
    for i in 0..FUNCTORIALITY_PAIRS {
        let field = if i % 2 == 0 { Q } else { Field::Prime(3) };
        let p = match fixed.get(i / 2) {
            Some(p) => p.clone(),
            None => small_functor(&mut rng, 3),
        };
        let (a, b, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let phi = random_matrix(&mut rng, field, b, a);
        let psi = random_matrix(&mut rng, field, c, b);
        let lhs = induced_map(&p, &psi.mul(&phi)).map_err(|e| format!("{p}: {e}"))?;
        let rhs = induced_map(&p, &psi)
            .and_then(|m| Ok(m.mul(&induced_map(&p, &phi)?)))
            .map_err(|e| format!("{p}: {e}"))?;
        ensure(lhs == rhs, || {
            format!("pair {i}: P(ψφ) != P(ψ)P(φ) for {p} over {field}")
        })?;
        ensure(homogeneity_holds(&p, a, field)?, || {
            format!("pair {i}: t^e scaling fails for {p}")
        })?;
        *kinds.entry(constructor(&p)).or_insert(0) += 1;
    }
    Ok(format!(
        "{FUNCTORIALITY_PAIRS} pairs over Q and F3, top constructors {kinds:?}"
    ))
}

fn constructor(p: &FunctorExpr) -> &'static str {
    match p {
        FunctorExpr::Const(_) => "const",
        FunctorExpr::Id => "id",
        FunctorExpr::Sum(_) => "sum",
        FunctorExpr::Tensor(_) => "tensor",
        FunctorExpr::Sym(..) => "sym",
        FunctorExpr::Ext(..) => "ext",
        FunctorExpr::Shift(..) => "shift",
        FunctorExpr::Quot(..) => "quot",
    }
}

fn criterion_7() -> Outcome {
    let p = tt();
    let q = FunctorExpr::quot(FunctorExpr::shift(2, p.clone()), 5);
    let rel = compare_order(&q, &p).map_err(|e| e.to_string())?;
    ensure(rel == OrderRelation::LexSmaller, || format!("Q' vs P: {rel}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut fs: Vec<FunctorExpr> = Vec::new();
    while fs.len() < ORDER_SAMPLE {
        let p = random_functor_with(&mut rng, 3, 0.1);
        if (1..=4).contains(&p.degree()) {
            fs.push(p);
        }
    }
    let cmp = |a: &FunctorExpr, b: &FunctorExpr| compare_order(a, b).unwrap();
    let mut triples = 0;
    for a in &fs {
        ensure(cmp(a, a) == OrderRelation::DimsEqual, || format!("{a} not irreflexive"))?;
        for b in &fs {
            for c in &fs {
                let le = |x, y| cmp(x, y) != OrderRelation::LexGreater;
                if cmp(a, b) == OrderRelation::LexSmaller && cmp(b, c) == OrderRelation::LexSmaller {
                    ensure(cmp(a, c) == OrderRelation::LexSmaller, || {
                        format!("{a} < {b} < {c} but not {a} < {c}")
                    })?;
                    triples += 1;
                }
                if le(a, b) && le(b, c) {
                    ensure(le(a, c), || format!("{a} <= {b} <= {c} but not {a} <= {c}"))?;
                }
            }
        }
    }
    Ok(format!(
        "Q' lex-smaller than tensor(id,id); {triples} strict chains transitive on {ORDER_SAMPLE} functors"
    ))
}

fn criterion_8() -> Outcome {
    let p = FunctorExpr::shift(2, tt());
    let dec = decompose(&p).map_err(|e| e.to_string())?;
    for n in 1..=6usize {
        let mut by_degree = [BigUint::from(0u32), BigUint::from(0u32)];
        let (mut q, mut r) = (None, None);
        for s in dec.summands() {
            match s.degree {
                0 => by_degree[0] += s.dim(n),
                1 => by_degree[1] += s.dim(n),
                _ if s.sig.to_string().starts_with("sym") => q = Some(s.dim(n)),
                _ => r = Some(s.dim(n)),
            }
        }
        let want = [4, 4 * n, n * (n + 1) / 2, n * (n - 1) / 2].map(BigUint::from);
        let got = [
            by_degree[0].clone(),
            by_degree[1].clone(),
            q.unwrap_or_default(),
            r.unwrap_or_default(),
        ];
        ensure(got == want, || format!("n={n}: {got:?} vs {want:?}"))?;
        ensure(p.dim(n) == want.iter().sum::<BigUint>(), || {
            format!("n={n}: total {}", p.dim(n))
        })?;
    }
    Ok("4 + 4n + n(n+1)/2 + n(n-1)/2 summand-wise for n = 1..6".into())
}

fn laws(j: &JointDerivative) -> Result<bool, String> {
    Ok(j.additivity_holds().map_err(|e| e.to_string())? && j.scaling_holds().map_err(|e| e.to_string())?)
}

fn criterion_9() -> Outcome {
    let mut golden = Vec::new();
    for field in [Q, Field::Prime(3), Field::Prime(5)] {
        let coords = CoordinateSystem::new(&tt(), 2, field).unwrap();
        let r = coords.ring.clone();
        let f = parse_poly("y_1_1*y_2_2 - y_1_2^2 + z_1_2^2", &r).unwrap();
        golden.push((
            format!("running f over {field}"),
            f,
            DirectionSubspace::new(&r, &["z_1_2"]).unwrap(),
        ));
    }
    for p in [3u64, 5] {
        let ring = GradedRing::with_names(Field::Prime(p), &["x", "y", "z"]).unwrap();
        let src = format!("y^{}*z^2 + x^{}*y^{}*z", p * p, 2 * p, p * p);
        let f = parse_poly(&src, &ring).unwrap();
        golden.push((
            format!("char-{p} example"),
            f,
            DirectionSubspace::new(&ring, &["x", "y"]).unwrap(),
        ));
    }
    {
        let field = Field::Prime(5);
        let coords = CoordinateSystem::new(&tt(), 2, field).unwrap();
        let f = parse_poly("y_1_1^5*y_2_2^5 + z_1_2^5*y_1_1^5", &coords.ring).unwrap();
        let x = VarietyPresentation::from_coords(coords.clone(), vec![f.clone()], vec![], 1).unwrap();
        let h = compute_h(&f, &x, &[field.one()]).map_err(|e| e.to_string())?;
        ensure(h.e0 == 1, || format!("char-5 e0 = {}", h.e0))?;
        golden.push((
            "char-5 running analogue".into(),
            f,
            DirectionSubspace::new(&coords.ring, &["z_1_2"]).unwrap(),
        ));
    }
    for (name, f, space) in &golden {
        let d = directional_data(f, space).map_err(|e| e.to_string())?;
        let j = d.joint().ok_or_else(|| format!("{name}: independent"))?;
        ensure(laws(j)?, || format!("{name}: additivity/scaling fails"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut found = 0;
    let mut i = 0;
    while found < RANDOM_DEPENDENT {
        let field = FIELDS[i % FIELDS.len()];
        i += 1;
        let ring = GradedRing::with_names(field, &VAR_NAMES[..rng.gen_range(1..=4)]).unwrap();
        let f = random_poly(&mut rng, &ring, 6, 5);
        let space = random_space(&mut rng, &ring);
        if let DirectionalData::Dependent(j) = directional_data(&f, &space).map_err(|e| e.to_string())? {
            ensure(laws(&j)?, || format!("random {f}: additivity/scaling fails"))?;
            found += 1;
        }
    }
    Ok(format!(
        "{} golden runs and {RANDOM_DEPENDENT} random dependent instances",
        golden.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("running example end-to-end", criterion_1),
        ("coefficient formula", criterion_2),
        ("characteristic-p derivative", criterion_3),
        ("Taylor identity fuzz", criterion_4),
        ("shift maps suite", criterion_5),
        ("functoriality fuzz", criterion_6),
        ("order comparator", criterion_7),
        ("dimension identity", criterion_8),
        ("additivity laws", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
