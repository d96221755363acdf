//! Seeded randomized checks of the height inequalities and of the
//! power-series lemmas. Every instance is drawn from a ChaCha stream, so a
//! seed reproduces the run exactly.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{int, BPoly, MPoly, Monomial, Rat, UPoly};
use crate::heights::{
    bound_compose, bound_det, bound_product, height_rational_vector, height_vector, kps_bound, silverman_check_quadratic,
    solve_bivariate, transform_rho, BoundCheck, HeightError, LogValue,
};
use crate::series::{all_branches_at, hensel_lift, BranchVerdict, Series};

/// A deliberately broken inequality, to check that the harness notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Drops the `log(n+1)` term from the product bound.
    ProductBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaStats {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Degenerate draws, replaced by fresh ones.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub lemmas: Vec<LemmaStats>,
    /// The first failing instance, shrunk where possible.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lemmas.iter().all(|l| l.failed == 0)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaStats> {
        self.lemmas.iter().find(|l| l.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "count": self.count,
            "lemmas": self.lemmas.iter().map(|l| json!({
                "name": l.name, "passed": l.passed, "failed": l.failed, "skipped": l.skipped,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
            "counterexample": self.counterexample,
        })
    }
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let mut n = rng.gen_range(-9i64..=9);
    if n == 0 {
        n = 1;
    }
    let d = if rng.gen_bool(0.3) { rng.gen_range(1i64..=4) } else { 1 };
    Rat::new(n.into(), d.into())
}

/// Random polynomial in the given variables with at most `terms` terms of
/// total degree at most `deg`.
pub fn random_mpoly(rng: &mut ChaCha8Rng, vars: &[u32], terms: usize, deg: u32) -> MPoly<Rat> {
    loop {
        let mut p = MPoly::zero();
        for _ in 0..rng.gen_range(1..=terms) {
            let mut mono: Monomial = Vec::new();
            let mut left = rng.gen_range(0..=deg);
            for &v in vars {
                if left == 0 {
                    break;
                }
                let e = rng.gen_range(0..=left);
                if e > 0 {
                    mono.push((v, e));
                    left -= e;
                }
            }
            p = &p + &MPoly::monomial(small_rat(rng), mono);
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_upoly(rng: &mut ChaCha8Rng, deg: usize) -> UPoly<Rat> {
    UPoly::new((0..=deg).map(|_| if rng.gen_bool(0.25) { int(0) } else { small_rat(rng) }).collect())
}

fn holds(c: &BoundCheck, fault: Option<Fault>, shrink_rhs: Option<&crate::heights::LogValue>) -> bool {
    match (fault, shrink_rhs) {
        (Some(Fault::ProductBound), Some(r)) => c.lhs.le(r) == Some(true),
        _ => c.holds() == Some(true),
    }
}

fn product_check(fs: &[MPoly<Rat>], fault: Option<Fault>) -> Result<bool, HeightError> {
    let c = bound_product(fs)?;
    let faulty = match fault {
        Some(Fault::ProductBound) => {
            let mut r = crate::heights::LogValue::zero();
            for f in fs {
                r = r + crate::heights::PolyHeight::height(f)?;
            }
            Some(r)
        }
        None => None,
    };
    Ok(holds(&c, fault, faulty.as_ref()))
}

/// Removes terms while the instance keeps failing.
fn shrink(mut fs: Vec<MPoly<Rat>>, fails: impl Fn(&[MPoly<Rat>]) -> bool) -> Vec<MPoly<Rat>> {
    loop {
        let mut progressed = false;
        'outer: for i in 0..fs.len() {
            let terms: Vec<(Monomial, Rat)> = fs[i].terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            if terms.len() <= 1 {
                continue;
            }
            for k in 0..terms.len() {
                let mut cand = fs.clone();
                cand[i] = MPoly::from_terms(terms.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, t)| t.clone()));
                if fails(&cand) {
                    fs = cand;
                    progressed = true;
                    break 'outer;
                }
            }
        }
        if !progressed {
            return fs;
        }
    }
}

fn dump(fs: &[MPoly<Rat>]) -> String {
    fs.iter().map(|f| f.display_with(&|v| format!("x{v}"))).collect::<Vec<_>>().join(" ; ")
}

struct Runner {
    rng: ChaCha8Rng,
    count: usize,
    fault: Option<Fault>,
    lemmas: Vec<LemmaStats>,
    counterexample: Option<String>,
}

impl Runner {
    fn stats(&mut self, name: &'static str) -> &mut LemmaStats {
        if self.lemmas.last().is_none_or(|l| l.name != name) {
            self.lemmas.push(LemmaStats { name, passed: 0, failed: 0, skipped: 0 });
        }
        self.lemmas.last_mut().unwrap()
    }

    /// Whether to draw another instance: degenerate draws are redrawn, up to
    /// ten times the requested count.
    fn more(&mut self, name: &'static str) -> bool {
        let count = self.count;
        let s = self.stats(name);
        s.passed + s.failed < count && s.skipped < 10 * count
    }

    fn record(&mut self, name: &'static str, outcome: Option<bool>, example: impl FnOnce() -> String) {
        let stats = self.stats(name);
        match outcome {
            Some(true) => stats.passed += 1,
            Some(false) => {
                stats.failed += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(format!("{name}: {}", example()));
                }
            }
            None => stats.skipped += 1,
        }
    }

    fn product(&mut self) {
        while self.more("product") {
            let k = self.rng.gen_range(2..=3);
            let unit = self.rng.gen_bool(0.5);
            let fs: Vec<MPoly<Rat>> = (0..k)
                .map(|_| {
                    let f = random_mpoly(&mut self.rng, &[0, 1, 2], 4, 3);
                    if unit {
                        // all coefficients 1: carries pile up in the product
                        MPoly::from_terms(f.terms().map(|(m, _)| (m.clone(), int(1))))
                    } else {
                        f
                    }
                })
                .collect();
            let fault = self.fault;
            let outcome = product_check(&fs, fault).ok();
            self.record("product", outcome, || {
                let small = shrink(fs.clone(), |c| product_check(c, fault) == Ok(false));
                dump(&small)
            });
        }
    }

    fn compose(&mut self) {
        while self.more("compose") {
            let s = self.rng.gen_range(1..=2);
            let yvars: Vec<u32> = (0..s).collect();
            let mut gvars = yvars.clone();
            gvars.push(10);
            let g = random_mpoly(&mut self.rng, &gvars, 4, 3);
            let subs: BTreeMap<u32, MPoly<Rat>> =
                yvars.iter().map(|&v| (v, random_mpoly(&mut self.rng, &[20, 21], 3, 2))).collect();
            let outcome = match bound_compose(&g, &subs) {
                Ok(c) => c.holds(),
                Err(_) => None,
            };
            self.record("compose", outcome, || {
                let mut v = vec![g.clone()];
                v.extend(subs.values().cloned());
                dump(&v)
            });
        }
    }

    fn det(&mut self) {
        while self.more("det") {
            let s = self.rng.gen_range(2..=3);
            let m: Vec<Vec<MPoly<Rat>>> = (0..s)
                .map(|_| {
                    (0..s)
                        .map(|_| if self.rng.gen_bool(0.2) { MPoly::zero() } else { random_mpoly(&mut self.rng, &[0, 1], 3, 2) })
                        .collect()
                })
                .collect();
            let outcome = match bound_det(&m) {
                Ok(c) => c.holds(),
                Err(_) => None,
            };
            self.record("det", outcome, || dump(&m.iter().flatten().cloned().collect::<Vec<_>>()));
        }
    }

    fn rho(&mut self) {
        while self.more("rho_transform") {
            let m = self.rng.gen_range(1..=3);
            let dy = self.rng.gen_range(1..=3);
            let g = BPoly::new((0..=dy).map(|_| random_upoly(&mut self.rng, m)).collect());
            if g.is_zero() {
                self.record("rho_transform", None, String::new);
                continue;
            }
            let rho = int(self.rng.gen_range(-5..=5));
            let outcome = transform_rho(&g, m, &rho).ok().and_then(|t| t.check.holds());
            self.record("rho_transform", outcome, || format!("g = {g}, m = {m}, rho = {rho}"));
        }
    }

    /// Distinct random branches `y_i` and `f = prod (Y - y_i)`.
    fn split_instance(&mut self) -> (Vec<UPoly<Rat>>, BPoly<Rat>) {
        let k = self.rng.gen_range(2..=3);
        let mut ys: Vec<UPoly<Rat>> = Vec::new();
        while ys.len() < k {
            // sharing a prefix with an earlier branch forces kappa > 0
            let y = match ys.first() {
                Some(first) if self.rng.gen_bool(0.5) => {
                    let cut = self.rng.gen_range(1..=2);
                    let mut c: Vec<Rat> = first.coeffs().iter().take(cut).cloned().collect();
                    c.resize(cut, int(0));
                    c.extend(random_upoly(&mut self.rng, 2).coeffs().iter().cloned());
                    UPoly::new(c)
                }
                _ => random_upoly(&mut self.rng, 3),
            };
            if !ys.contains(&y) {
                ys.push(y);
            }
        }
        let f = ys.iter().fold(BPoly::constant(int(1)), |acc, y| &acc * &(&BPoly::y() - &BPoly::from_x(y.clone())));
        (ys, f)
    }

    fn hensel(&mut self) {
        while self.more("hensel") {
            let (ys, mut f) = self.split_instance();
            let y0 = &ys[0];
            let d = f.derivative_y().eval_y_poly(y0);
            let kappa = d.ord().unwrap();
            let perturbed = self.rng.gen_bool(0.5);
            if perturbed {
                f = &f + &BPoly::from_x(UPoly::monomial(small_rat(&mut self.rng), 2 * kappa + 1 + self.rng.gen_range(0..3)));
            }
            let seg = UPoly::new(y0.coeffs().iter().take(kappa + 1).cloned().collect());
            let n = self.rng.gen_range(kappa..=50);
            let n2 = self.rng.gen_range(kappa..=50);
            let outcome = (|| {
                let y = hensel_lift(&f, &seg, kappa, n).ok()?;
                let y2 = hensel_lift(&f, &seg, kappa, n2).ok()?;
                let x = Series::monomial(int(1), 1);
                let r = Series::eval_bpoly(&f, &x, &y);
                let residual_ok = match r.ord() {
                    Ok(Some(k)) => k > n as i64,
                    Ok(None) => true,
                    Err(_) => r.prec().is_some_and(|p| p > n as i64),
                };
                let shared = n.min(n2) as i64;
                let unique = y.coeffs_range(0, shared).ok()? == y2.coeffs_range(0, shared).ok()?;
                let exact_ok = perturbed || y.coeffs_range(0, n as i64).ok()? == Series::from_upoly(y0).coeffs_range(0, n as i64).ok()?;
                Some(residual_ok && unique && exact_ok)
            })();
            self.record("hensel", outcome, || format!("f = {f}, segment = {seg}, kappa = {kappa}, N = {n}"));
        }
    }

    /// Two conics through two chosen rational points; the heights of all
    /// rational common points against the arithmetic Bezout bound.
    fn kps(&mut self) {
        while self.more("kps") {
            let pts: Vec<(Rat, Rat)> = (0..2).map(|_| (small_rat(&mut self.rng), small_rat(&mut self.rng))).collect();
            let ((x1, y1), (x2, y2)) = (pts[0].clone(), pts[1].clone());
            let lin = |a: Rat, b: Rat, c: Rat| BPoly::from_matrix(&[vec![c, b], vec![a]]);
            let ax = &lin(int(1), int(0), -x1.clone()) * &lin(int(1), int(0), -x2.clone());
            let by = &lin(int(0), int(1), -y1.clone()) * &lin(int(0), int(1), -y2.clone());
            let ell = lin(&y2 - &y1, &x1 - &x2, &(&x2 - &x1) * &y1 - &(&y2 - &y1) * &x1);
            let conic = |rng: &mut ChaCha8Rng| {
                let (a, b) = (small_rat(rng), small_rat(rng));
                let tail = lin(small_rat(rng), small_rat(rng), small_rat(rng));
                &(&ax.scale(&a) + &by.scale(&b)) + &(&ell * &tail)
            };
            let (p, q) = (conic(&mut self.rng), conic(&mut self.rng));
            let outcome = (|| {
                if p.total_degree() != 2 || q.total_degree() != 2 {
                    return None;
                }
                let sols = solve_bivariate(&p, &q).ok()?;
                let mut coeffs = p.nonzero_coeffs();
                coeffs.extend(q.nonzero_coeffs());
                let h = height_vector(&coeffs).ok()?;
                let bound = kps_bound(&[2, 2], &h, 2).ok()?;
                let sum = sols.iter().fold(LogValue::zero(), |acc, (x, y)| acc + height_rational_vector([x, y]));
                Some(sols.contains(&(x1.clone(), y1.clone())) && sum.le(&bound.height_bound) == Some(true))
            })();
            self.record("kps", outcome, || format!("p = {p}, q = {q}"));
        }
        // the two quadratic fields with known discriminants 8 and 5
        for minpoly in [vec![-2, 0, 1], vec![-1, -1, 1]] {
            let p = UPoly::new(minpoly.into_iter().map(int).collect());
            let outcome = silverman_check_quadratic(&p).ok().and_then(|c| c.holds());
            self.record("silverman", outcome, || format!("minpoly = {p}"));
        }
    }

    fn branches(&mut self) {
        while self.more("branches") {
            let ramified = self.rng.gen_bool(0.4);
            let (ys, split) = self.split_instance();
            let f = if ramified {
                // (Y - y_0)^2 - X^(odd) c times the remaining factors
                let e = 2 * self.rng.gen_range(0..=1) + 1;
                let sq = &(&BPoly::y() - &BPoly::from_x(ys[0].clone())).pow(2) - &BPoly::from_x(UPoly::monomial(small_rat(&mut self.rng), e));
                ys[1..].iter().fold(sq, |acc, y| &acc * &(&BPoly::y() - &BPoly::from_x(y.clone())))
            } else {
                split
            };
            let outcome = match all_branches_at(&f, &int(0)) {
                Ok(BranchVerdict::Split(b)) => {
                    let d = crate::arith::discriminant_y(&f);
                    let ord = d.root_multiplicity(&int(0));
                    let sum: usize = b.iter().map(|x| x.kappa).sum();
                    let matches = b.iter().all(|br| {
                        ys.iter().any(|y| {
                            let p = br.branch.prec().unwrap_or(8).min(8);
                            (0..p).all(|k| br.branch.coeff(k) == Some(y.coeff(k as usize)))
                        })
                    });
                    Some(!ramified && sum == ord && b.len() == ys.len() && matches)
                }
                Ok(BranchVerdict::Ramified { .. }) => Some(ramified),
                Err(_) => None,
            };
            self.record("branches", outcome, || format!("f = {f}, ramified = {ramified}"));
        }
    }
}

/// The randomized properties, each drawn from its own ChaCha stream so that
/// a subset sees the same instances as a full run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    Product,
    Compose,
    Det,
    Rho,
    /// Conic pairs against the arithmetic Bezout bound, then the two fixed
    /// quadratic fields against Silverman's inequality.
    Kps,
    Hensel,
    Branches,
}

impl Lemma {
    pub const ALL: [Lemma; 7] =
        [Lemma::Product, Lemma::Compose, Lemma::Det, Lemma::Rho, Lemma::Kps, Lemma::Hensel, Lemma::Branches];
}

/// Runs the chosen lemmas `count` times each from `seed`.
pub fn run_lemmas(seed: u64, count: usize, fault: Option<Fault>, lemmas: &[Lemma]) -> SuiteReport {
    let mut r = Runner { rng: ChaCha8Rng::seed_from_u64(seed), count, fault, lemmas: Vec::new(), counterexample: None };
    for (stream, lemma) in Lemma::ALL.iter().enumerate() {
        if !lemmas.contains(lemma) {
            continue;
        }
        r.rng = ChaCha8Rng::seed_from_u64(seed);
        r.rng.set_stream(stream as u64);
        match lemma {
            Lemma::Product => r.product(),
            Lemma::Compose => r.compose(),
            Lemma::Det => r.det(),
            Lemma::Rho => r.rho(),
            Lemma::Kps => r.kps(),
            Lemma::Hensel => r.hensel(),
            Lemma::Branches => r.branches(),
        }
    }
    SuiteReport { seed, count, lemmas: r.lemmas, counterexample: r.counterexample }
}

/// Runs every lemma `count` times from `seed`.
pub fn run_suite(seed: u64, count: usize, fault: Option<Fault>) -> SuiteReport {
    run_lemmas(seed, count, fault, &Lemma::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = run_suite(0, 10, None);
        assert!(r.passed(), "{:?}", r.counterexample);
        assert!(r.lemmas.iter().all(|l| l.passed > 0));
    }

    #[test]
    fn injected_fault_is_caught() {
        let r = run_suite(0, 20, Some(Fault::ProductBound));
        assert!(!r.passed());
        assert!(r.counterexample.as_deref().unwrap().starts_with("product"));
    }

    #[test]
    fn subsets_draw_the_same_instances() {
        let full = run_suite(3, 4, None);
        let part = run_lemmas(3, 4, None, &[Lemma::Hensel]);
        assert_eq!(part.get("hensel"), full.get("hensel"));
        assert_eq!(part.lemmas.len(), 1);
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_suite(7, 5, None), run_suite(7, 5, None));
    }
}
