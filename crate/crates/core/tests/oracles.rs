//! Library results against independent closed forms.

use covercert::arith::{discriminant_y, int, rat, resultant_sylvester, resultant_y, BPoly, Rat, UPoly};
use covercert::cover::eliminate;
use covercert::heights::{height_algebraic, LogValue};
use covercert::series::{hensel_lift, Series};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rand_upoly(rng: &mut ChaCha8Rng, deg: usize) -> UPoly<Rat> {
    UPoly::new((0..=deg).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect())
}

fn linear(y: &UPoly<Rat>) -> BPoly<Rat> {
    &BPoly::y() - &BPoly::from_x(y.clone())
}

#[test]
fn discriminant_of_a_product_of_linear_factors() {
    // disc prod (Y - y_i) = prod_{i<j} (y_i - y_j)^2
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(2..=4);
        let ys: Vec<UPoly<Rat>> = (0..n).map(|_| rand_upoly(&mut rng, 2)).collect();
        let f = ys.iter().fold(BPoly::constant(int(1)), |acc, y| &acc * &linear(y));
        let mut want = UPoly::one();
        for i in 0..n {
            for j in i + 1..n {
                let d = &ys[i] - &ys[j];
                want = &want * &(&d * &d);
            }
        }
        assert_eq!(discriminant_y(&f), want);
    }
}

#[test]
fn resultant_of_split_polynomials() {
    // Res(prod (Y - a_i), prod (Y - b_j)) = prod (a_i - b_j)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let a: Vec<UPoly<Rat>> = (0..rng.gen_range(1..=3)).map(|_| rand_upoly(&mut rng, 2)).collect();
        let b: Vec<UPoly<Rat>> = (0..rng.gen_range(1..=3)).map(|_| rand_upoly(&mut rng, 2)).collect();
        let p = a.iter().fold(BPoly::constant(int(1)), |acc, y| &acc * &linear(y));
        let q = b.iter().fold(BPoly::constant(int(1)), |acc, y| &acc * &linear(y));
        let mut want = UPoly::one();
        for x in &a {
            for y in &b {
                want = &want * &(x - y);
            }
        }
        assert_eq!(resultant_y(&p, &q), want);
        assert_eq!(resultant_sylvester(&p, &q), want);
    }
}

/// `binom(1/2, k)`.
fn half_binomial(k: usize) -> Rat {
    (0..k).fold(Rat::one(), |acc, i| acc * (rat(1, 2) - int(i as i64)) / int(i as i64 + 1))
}

#[test]
fn square_root_of_one_plus_x() {
    let f = BPoly::from_matrix(&[vec![int(-1), int(0), int(1)], vec![int(-1)]]);
    let y = hensel_lift(&f, &UPoly::constant(int(1)), 0, 40).unwrap();
    for k in 0..=40 {
        assert_eq!(y.coeff(k).unwrap(), half_binomial(k as usize), "k = {k}");
    }
}

#[test]
fn geometric_series_inverse() {
    // 1 / (1 - a X) = sum a^k X^k
    let a = rat(-3, 2);
    let s = Series::from_upoly(&UPoly::new(vec![int(1), -a.clone()]));
    let inv = s.inverse(25).unwrap();
    let mut p = Rat::one();
    for k in 0..25 {
        assert_eq!(inv.coeff(k).unwrap(), p);
        p *= &a;
    }
}

#[test]
fn mahler_heights() {
    // cyclotomic polynomials have height zero; roots on the unit circle only
    // allow an enclosure
    for cs in [vec![1, 1, 1], vec![1, 0, 1], vec![1, -1, 1], vec![1, 1, 1, 1, 1]] {
        let p = UPoly::new(cs.iter().map(|&c| int(c)).collect());
        let (lo, hi) = height_algebraic(&p).unwrap().enclosure(64);
        assert!(lo <= Rat::zero() && Rat::zero() <= hi);
        assert!(hi - lo < rat(1, 1_000_000));
    }
    // h(a/b) = log max(|a|, |b|)
    for (a, b) in [(3, 7), (-9, 2), (1, 1), (12, 5)] {
        let p = UPoly::new(vec![-rat(a, b), int(1)]);
        let want = LogValue::log_int(a.abs().max(b));
        assert!(height_algebraic(&p).unwrap().compare(&want).unwrap().is_eq());
    }
    // 2X^2 - 3: M = 2 * (3/2) = 3
    let p = UPoly::new(vec![int(-3), int(0), int(2)]);
    let want = LogValue::log_int(3).scale(&rat(1, 2));
    assert!(height_algebraic(&p).unwrap().compare(&want).unwrap().is_eq());
}

#[test]
fn translation_seed_shifts_the_model() {
    // y = y0 + p(x) satisfies F0(X, Y - p(X)) = 0
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let f0 = BPoly::new(vec![rand_upoly(&mut rng, 2), rand_upoly(&mut rng, 1), UPoly::one()]);
        let p = rand_upoly(&mut rng, 2);
        let y_expr = &BPoly::y() + &BPoly::from_x(p.clone());
        let want = f0.compose_y(&(&BPoly::y() - &BPoly::from_x(p)));
        assert_eq!(eliminate(&f0, &y_expr).unwrap(), want);
    }
}

#[test]
fn exact_zero_has_no_order() {
    let z: Series<Rat> = Series::exact(0, vec![]);
    assert_eq!(z.ord().unwrap(), None);
    assert!(Series::<Rat>::zero_to(5).ord().is_err());
    assert!(Series::constant(int(2)).coeff(3).unwrap().is_zero());
}
