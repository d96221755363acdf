//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! the lines; the test fails if any criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use covercert::arith::{int, rat, BPoly, MPoly, Rat, UPoly};
use covercert::bounds::{lambda_main, lambda_prime, theorem_check};
use covercert::cover::{analyze, eliminate, normalize_at_infinity, CoverReport, PlaneModel};
use covercert::heights::{bound_product, height_algebraic, height_rational_vector, silverman_check_quadratic, LogValue, PolyHeight};
use covercert::pipeline::alpha_height;
use covercert::suite::{run_lemmas, Lemma};
use covercert::vset::{audit, build_v, build_w, verify_membership};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn upoly(cs: &[i64]) -> UPoly<Rat> {
    UPoly::new(cs.iter().map(|&c| int(c)).collect())
}

struct Fixture {
    f0: BPoly<Rat>,
    seed: BPoly<Rat>,
    m: usize,
    declared: Vec<Rat>,
}

fn e0() -> Fixture {
    Fixture {
        f0: BPoly::from_matrix(&[vec![int(1), int(0), int(1)], vec![int(0)], vec![int(-1)]]),
        seed: &BPoly::y() + &BPoly::x(),
        m: 1,
        declared: vec![int(1), int(-1)],
    }
}

fn e1() -> Fixture {
    Fixture {
        f0: BPoly::from_matrix(&[vec![int(-4), int(0), int(1)], vec![int(0)], vec![int(5)], vec![int(0)], vec![int(-1)]]),
        seed: BPoly::from_matrix(&[vec![rat(-5, 2), int(1)], vec![int(0)], vec![int(1)]]),
        m: 2,
        declared: vec![int(1), int(-1), int(2), int(-2)],
    }
}

fn run_fixture(fx: &Fixture) -> Result<CoverReport<Rat>, String> {
    let nrm = normalize_at_infinity(&fx.f0, &fx.seed, Some(fx.m)).map_err(|e| e.to_string())?;
    let f = eliminate(&fx.f0, &nrm.y_expr).map_err(|e| e.to_string())?;
    let model = PlaneModel::new(f, None).map_err(|e| e.to_string())?;
    analyze(&model, &fx.declared).map_err(|e| e.to_string())
}

/// Shape data shared by the two fixture criteria.
fn check_fixture(r: &CoverReport<Rat>, f: &BPoly<Rat>, d: &UPoly<Rat>, mu: usize, kinf: &[usize], omega: usize) -> Outcome {
    let (m, n) = (r.model.m, r.model.n);
    ensure(&r.model.f == f, || format!("f = {}", r.model.f))?;
    ensure(&r.disc == d, || format!("d = {}", r.disc))?;
    ensure(r.mu() == mu && r.nu() == 0, || format!("mu = {}, nu = {}", r.mu(), r.nu()))?;
    ensure(r.delta == int(1), || format!("delta = {}", r.delta))?;
    ensure(r.infinity.kappas() == kinf, || format!("kappa_inf = {:?}", r.infinity.kappas()))?;
    let cap = 10 * m * n + 2 * n + 1 - 8 * m;
    ensure(r.omega == omega && r.omega <= cap, || format!("omega = {} (cap {cap})", r.omega))?;
    let v = build_v(r);
    let w = build_w(r);
    let mr = verify_membership(&v, &w, &r.phi()).map_err(|e| e.to_string())?;
    ensure(mr.in_v(), || format!("V failures {:?}", mr.v_failures))?;
    ensure(mr.outside_w(), || format!("W hits {:?}", mr.w_hits))?;
    let h = alpha_height(r).map_err(|e| e.to_string())?;
    let au = audit(&v, &h).map_err(|e| e.to_string())?;
    let deg_cap = 2 * m * n * n;
    ensure(v.equations.iter().all(|e| e.poly.total_degree().unwrap_or(0) <= deg_cap), || "degree cap".into())?;
    let height_cap = &h + &LogValue::rational(int(12 * (m * n).pow(3) as i64));
    for e in &v.equations {
        let eh = e.poly.height().map_err(|e| e.to_string())?;
        ensure(eh.le(&height_cap) == Some(true), || format!("height of {}", e.label))?;
    }
    ensure(au.passed(), || format!("audit {:?}", au.to_json()))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    f()?;
    ensure(t.elapsed() < limit, || format!("took {:?}", t.elapsed()))
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let r = run_fixture(&e0())?;
        let f = BPoly::from_matrix(&[vec![rat(1, 4), int(0), int(1)], vec![int(0), int(-1)]]);
        check_fixture(&r, &f, &upoly(&[-1, 0, 1]), 2, &[1, 0], 10)?;
        ensure(r.model.m == 1 && r.model.n == 2, || "shape".into())
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(2), || {
        let r = run_fixture(&e1())?;
        let f = BPoly::from_matrix(&[vec![rat(9, 16), rat(-5, 2), int(1)], vec![int(0)], vec![rat(5, 2), int(-1)]]);
        check_fixture(&r, &f, &upoly(&[4, 0, -5, 0, 1]), 4, &[2, 0], 15)?;
        let hf = r.model.f.height().map_err(|e| e.to_string())?;
        ensure(hf.as_log_of() == Some(int(40)), || format!("h(f) = {hf:?}"))?;
        let v = build_v(&r);
        let h = alpha_height(&r).map_err(|e| e.to_string())?;
        let tc = theorem_check(&r, &r.model.f, &h, Some(&v)).map_err(|e| e.to_string())?;
        ensure(tc.passed(), || format!("theorem check {}", tc.to_json()))?;
        ensure(tc.bounds.lambda_prime == BigUint::from(16u32).pow(41), || "Lambda'(2, 2)".into())?;
        ensure(tc.bounds.lambda == BigUint::from(16u32).pow(44), || "Lambda(1, 2)".into())
    })
}

fn criterion_3() -> Outcome {
    let l = lambda_main(0, 2).map_err(|e| e.to_string())?;
    ensure(l == BigUint::from(8u32).pow(24) && l == BigUint::from(1u128 << 72), || format!("Lambda(0, 2) = {l}"))?;
    let lp = lambda_prime(1, 2).map_err(|e| e.to_string())?;
    ensure(lp == BigUint::from(8u32).pow(21), || format!("Lambda'(1, 2) = {lp}"))?;
    for m in 1..=5 {
        for n in 2..=6 {
            let (a, b) = (lambda_prime(m, n).unwrap(), lambda_main(m - 1, n).unwrap());
            ensure(a <= b, || format!("Lambda'({m}, {n}) > Lambda({}, {n})", m - 1))?;
        }
    }
    Ok(())
}

/// `sum over places of log max(1, |v_i|_p)` for a rational vector, as the
/// integer `max(1, max |v_i|) * prod p^e_p`.
fn place_oracle(v: &[(i64, i64)]) -> Rat {
    let mut arch = Rat::from_integer(1.into());
    for &(a, b) in v {
        let x = rat(a, b);
        let x = if x < int(0) { -x } else { x };
        if x > arch {
            arch = x;
        }
    }
    let mut finite = 1i64;
    for p in 2..=1000i64 {
        if (2..p).take_while(|q| q * q <= p).any(|q| p % q == 0) {
            continue;
        }
        // -ord_p of each reduced entry
        let mut e = 0;
        for &(a, b) in v {
            let x = rat(a, b);
            let mut d = x.denom().clone();
            let mut k = 0;
            while (&d % p) == 0.into() {
                d /= p;
                k += 1;
            }
            e = e.max(k);
        }
        finite *= p.pow(e);
    }
    arch * int(finite)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=5);
        let v: Vec<(i64, i64)> = (0..len).map(|_| (rng.gen_range(-999..=999), rng.gen_range(1..=60))).collect();
        let rats: Vec<Rat> = v.iter().map(|&(a, b)| rat(a, b)).collect();
        let h = height_rational_vector(&rats);
        let want = place_oracle(&v);
        ensure(h.as_log_of() == Some(want.clone()), || format!("{v:?}: {h:?} vs log {want}"))?;
    }
    let h = height_algebraic(&upoly(&[-2, 0, 1])).map_err(|e| e.to_string())?;
    let (lo, hi) = h.enclosure(64);
    let half_ln2 = std::f64::consts::LN_2 / 2.0;
    let (lo, hi) = (covercert::arith::to_f64(&lo), covercert::arith::to_f64(&hi));
    ensure(hi - lo <= 1e-12 && lo <= half_ln2 + 1e-15 && half_ln2 <= hi + 1e-15, || format!("[{lo}, {hi}]"))
}

fn suite_counts(lemmas: &[Lemma], count: usize, names: &[&str]) -> Outcome {
    let r = run_lemmas(0, count, None, lemmas);
    ensure(r.passed(), || format!("counterexample {:?}", r.counterexample))?;
    for name in names {
        let s = r.get(name).ok_or_else(|| format!("{name} missing"))?;
        ensure(s.passed == count, || format!("{name}: {} of {count} instances checked", s.passed))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    suite_counts(&[Lemma::Product, Lemma::Compose, Lemma::Det, Lemma::Rho], 500, &["product", "compose", "det", "rho_transform"])?;
    let x1 = &MPoly::<Rat>::var(0) + &MPoly::one();
    let c = bound_product(&[x1.clone(), x1]).map_err(|e| e.to_string())?;
    ensure(c.lhs.as_log_of() == Some(int(2)) && c.rhs.as_log_of() == Some(int(2)), || format!("{c:?}"))
}

fn criterion_6() -> Outcome {
    suite_counts(&[Lemma::Hensel, Lemma::Branches], 100, &["hensel", "branches"])
}

fn criterion_7() -> Outcome {
    suite_counts(&[Lemma::Kps], 100, &["kps"])?;
    let c = silverman_check_quadratic(&upoly(&[-2, 0, 1])).map_err(|e| e.to_string())?;
    let lhs = LogValue::log_int(8).scale(&rat(1, 2));
    let rhs = LogValue::log_int(2).scale_int(2);
    ensure(c.lhs.compare(&lhs) == Some(std::cmp::Ordering::Equal), || "Q(sqrt 2) discriminant".into())?;
    ensure(c.rhs.compare(&rhs) == Some(std::cmp::Ordering::Equal) && c.holds() == Some(true), || "Q(sqrt 2) bound".into())?;
    let c = silverman_check_quadratic(&upoly(&[-1, -1, 1])).map_err(|e| e.to_string())?;
    ensure(c.lhs.compare(&LogValue::log_int(5).scale(&rat(1, 2))) == Some(std::cmp::Ordering::Equal), || "Q(sqrt 5)".into())?;
    // log phi + log 2 with log phi = (1/2) log M(X^2 - X - 1), M = phi
    let (lo, hi) = c.rhs.enclosure(64);
    let want = ((1.0 + 5f64.sqrt()) / 2.0).ln() + std::f64::consts::LN_2;
    let (lo, hi) = (covercert::arith::to_f64(&lo), covercert::arith::to_f64(&hi));
    ensure(lo <= want + 1e-12 && want <= hi + 1e-12, || format!("rhs [{lo}, {hi}] vs {want}"))?;
    ensure(c.holds() == Some(true), || "Q(sqrt 5) bound".into())
}

fn criterion_8() -> Outcome {
    for fx in [e0(), e1()] {
        let r = run_fixture(&fx)?;
        let inf = &r.infinity;
        let (m, n) = (r.model.m, r.model.n);
        ensure(inf.pole.kappa as i64 == (m * (n - 1)) as i64 + inf.g_order, || format!("kappa_inf_1 = {}", inf.pole.kappa))?;
        let sum: usize = inf.kappas().iter().sum();
        ensure(sum <= m * n + r.disc.deg(), || format!("sum kappa_inf = {sum}"))?;
        ensure(r.notes.iter().any(|s| s.contains("m(n-1)")), || "missing m(n-1) note".into())?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/e1.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_covercert"))
            .args(["verify", fixture, "--json", "--seed", "0"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || format!("exit {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || "outputs differ".into())
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("first fixture", criterion_1),
        ("second fixture", criterion_2),
        ("bound formulas", criterion_3),
        ("height exactness", criterion_4),
        ("height lemma suites", criterion_5),
        ("series suites", criterion_6),
        ("arithmetic Bezout and Silverman", criterion_7),
        ("order at infinity", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("PASS {} {name} ({:.2?})", i + 1, t.elapsed()),
            Err(e) => {
                println!("FAIL {} {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("acceptance wall clock {:.2?}", start.elapsed());
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
