use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::atlas::{build_atlas, AtlasVar, VarAtlas};
use crate::arith::{mpoly_det, MPoly, Scalar};
use crate::cover::{CoverReport, PointLabel};

/// Which family an equation of `V` belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    /// `A_i = alpha_i`
    Ram,
    /// coefficients of `D(X) = Delta prod (X - A)^sigma prod (X - B)^tau`
    Disc,
    /// vanishing orders at the extra roots
    Ser,
    /// vanishing orders of `G` at infinity
    SerInfG,
    /// vanishing orders of `H` on the pole branch
    SerInfH,
    /// normalization of the pole branch
    Uni,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Ram => "ram",
            Tag::Disc => "disc",
            Tag::Ser => "ser",
            Tag::SerInfG => "ser_inf_g",
            Tag::SerInfH => "ser_inf_h",
            Tag::Uni => "uni",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation<S> {
    pub poly: MPoly<S>,
    pub tag: Tag,
    pub label: String,
}

impl<S: Scalar> Equation<S> {
    pub fn to_json(&self, atlas: &VarAtlas) -> Value {
        json!({
            "tag": self.tag.to_string(),
            "label": self.label,
            "degree": self.poly.total_degree(),
            "terms": self.poly.terms().map(|(mono, c)| json!({
                "coeff": c.to_json(),
                "monomial": mono.iter().map(|&(v, e)| json!([atlas.name(v), e])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "text": self.poly.display_with(&|v| atlas.name(v)),
        })
    }
}

/// The equations of `V`. Equations that vanish identically are not stored
/// but are listed in `dropped`.
#[derive(Clone, Debug)]
pub struct VSystem<S> {
    pub atlas: VarAtlas,
    pub equations: Vec<Equation<S>>,
    pub dropped: Vec<(Tag, String)>,
}

impl<S: Scalar> VSystem<S> {
    /// Stored plus dropped equations.
    pub fn total_count(&self) -> usize {
        self.equations.len() + self.dropped.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "atlas": self.atlas.to_json(),
            "equations": self.equations.iter().map(|e| e.to_json(&self.atlas)).collect::<Vec<_>>(),
            "dropped": self.dropped.iter().map(|(t, l)| json!({"tag": t.to_string(), "label": l})).collect::<Vec<_>>(),
            "count": self.equations.len(),
            "total_count": self.total_count(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WKind {
    W1,
    W2,
    W3,
    W4,
    W5,
}

impl fmt::Display for WKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A component of `W`: the common zero set of `polys`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WComponent<S> {
    pub kind: WKind,
    pub label: String,
    pub polys: Vec<MPoly<S>>,
}

#[derive(Clone, Debug)]
pub struct WSystem<S> {
    pub atlas: VarAtlas,
    pub components: Vec<WComponent<S>>,
}

impl<S: Scalar> WSystem<S> {
    pub fn of_kind(&self, kind: WKind) -> impl Iterator<Item = &WComponent<S>> {
        self.components.iter().filter(move |c| c.kind == kind)
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .components
            .iter()
            .map(|c| json!({
                "kind": c.kind.to_string(),
                "label": c.label,
                "polys": c.polys.iter().map(|p| p.display_with(&|v| self.atlas.name(v))).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>())
    }
}

fn int<S: Scalar>(k: i64) -> MPoly<S> {
    MPoly::constant(S::from_i64(k))
}

fn var<S: Scalar>(v: u32) -> MPoly<S> {
    MPoly::var(v)
}

/// `t^e` for the auxiliary variable `t`.
fn tpow<S: Scalar>(t: u32, e: usize) -> MPoly<S> {
    if e == 0 {
        MPoly::one()
    } else {
        MPoly::monomial(S::one(), vec![(t, e as u32)])
    }
}

/// `F(X, Y) = Y^n + sum Theta_ij X^i Y^j` as coefficients in `Y`.
fn f_ycoeffs<S: Scalar>(a: &VarAtlas) -> Vec<MPoly<S>> {
    let mut c = Vec::with_capacity(a.n + 1);
    for j in 0..a.n {
        let mut p = MPoly::zero();
        for i in 0..=a.m {
            p = &p + &(&var(a.id(AtlasVar::Theta { i, j })) * &tpow(a.x(), i));
        }
        c.push(p);
    }
    c.push(MPoly::one());
    c
}

fn assemble_y<S: Scalar>(coeffs: &[MPoly<S>], y: u32) -> MPoly<S> {
    coeffs.iter().enumerate().fold(MPoly::zero(), |acc, (j, c)| &acc + &(c * &tpow(y, j)))
}

fn derivative_y<S: Scalar>(coeffs: &[MPoly<S>]) -> Vec<MPoly<S>> {
    coeffs.iter().enumerate().skip(1).map(|(j, c)| c.scale(&S::from_i64(j as i64))).collect()
}

/// Symbolic `F`, `F'_Y` in the auxiliary variables `X`, `Y`.
pub fn symbolic_f<S: Scalar>(a: &VarAtlas) -> (MPoly<S>, MPoly<S>) {
    let c = f_ycoeffs(a);
    (assemble_y(&c, a.y()), assemble_y(&derivative_y(&c), a.y()))
}

/// `D(X)`: the `Y`-discriminant of `F` through the Sylvester determinant.
pub fn symbolic_discriminant<S: Scalar>(a: &VarAtlas) -> MPoly<S> {
    let f = f_ycoeffs::<S>(a);
    let fp = derivative_y(&f);
    let n = a.n;
    let size = 2 * n - 1;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n - 1 {
        let mut row = vec![MPoly::zero(); size];
        for k in 0..=n {
            row[r + k] = f[n - k].clone();
        }
        rows.push(row);
    }
    for r in 0..n {
        let mut row = vec![MPoly::zero(); size];
        for k in 0..n {
            row[r + k] = fp[n - 1 - k].clone();
        }
        rows.push(row);
    }
    let det = mpoly_det(&rows);
    if (n * (n - 1) / 2) % 2 == 1 {
        -&det
    } else {
        det
    }
}

/// `G(T, Y) = T^m F(1/T, Y)` and `H(T, Y) = T^(m(n+1)) F(1/T, T^-m Y)` as
/// coefficient lists in `Y`.
fn g_and_h<S: Scalar>(a: &VarAtlas) -> (Vec<MPoly<S>>, Vec<MPoly<S>>) {
    let (m, n, t) = (a.m, a.n, a.t());
    let mut g = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut pg = MPoly::zero();
        let mut ph = MPoly::zero();
        for i in 0..=m {
            let th = var(a.id(AtlasVar::Theta { i, j }));
            pg = &pg + &(&th * &tpow(t, m - i));
            ph = &ph + &(&th * &tpow(t, m * (n + 1) - i - m * j));
        }
        g.push(pg);
        h.push(ph);
    }
    g.push(tpow(t, m));
    h.push(tpow(t, m));
    (g, h)
}

struct Builder<S> {
    equations: Vec<Equation<S>>,
    dropped: Vec<(Tag, String)>,
}

impl<S: Scalar> Builder<S> {
    fn push(&mut self, poly: MPoly<S>, tag: Tag, label: String) {
        if poly.is_zero() {
            self.dropped.push((tag, label));
        } else {
            self.equations.push(Equation { poly, tag, label });
        }
    }
}

fn coeff_at<S: Scalar>(cs: &[MPoly<S>], k: usize) -> MPoly<S> {
    cs.get(k).cloned().unwrap_or_else(MPoly::zero)
}

/// Coefficients in `v` of `P(v, Ytilde)` and `P'_Y(v, Ytilde)` where `P` is
/// given by its `Y`-coefficients in `v`.
fn order_conditions<S: Scalar>(p: &[MPoly<S>], ytilde: &MPoly<S>, y: u32, v: u32) -> (Vec<MPoly<S>>, Vec<MPoly<S>>) {
    let map: BTreeMap<u32, MPoly<S>> = [(y, ytilde.clone())].into();
    let full = assemble_y(p, y).substitute(&map);
    let der = assemble_y(&derivative_y(p), y).substitute(&map);
    (full.coeffs_in(v), der.coeffs_in(v))
}

/// The vanishing-order conditions of one branch: coefficients of the
/// residual and of the derivative in the local parameter.
struct BranchSite<S> {
    tag: Tag,
    label: String,
    kappa: usize,
    residual: Vec<MPoly<S>>,
    derivative: Vec<MPoly<S>>,
}

fn branch_sites<S: Scalar>(report: &CoverReport<S>, a: &VarAtlas) -> Vec<BranchSite<S>> {
    let mut out = Vec::new();
    let (m, t, z, y) = (a.m, a.t(), a.z(), a.y());
    let f = f_ycoeffs::<S>(a);
    for (i, table) in report.finite.iter().enumerate() {
        let point = PointLabel::Beta(i + 1);
        let bx = var(a.id(AtlasVar::Beta(i + 1)));
        // X = B_i + Z
        let shift: BTreeMap<u32, MPoly<S>> = [(a.x(), &bx + &var(z))].into();
        let fz: Vec<MPoly<S>> = f.iter().map(|c| c.substitute(&shift)).collect();
        for (j, b) in table.branches[..table.ell].iter().enumerate() {
            let mut yt = MPoly::zero();
            for k in 0..=b.kappa {
                yt = &yt + &(&var(a.id(AtlasVar::Gamma { point, j: j + 1, k: k as i64 })) * &tpow(z, k));
            }
            let (res, der) = order_conditions(&fz, &yt, y, z);
            out.push(BranchSite { tag: Tag::Ser, label: format!("beta {} branch {}", i + 1, j + 1), kappa: b.kappa, residual: res, derivative: der });
        }
    }
    let (g, h) = g_and_h::<S>(a);
    let inf = &report.infinity;
    let point = PointLabel::Infinity;
    for (j0, b) in inf.finite.iter().enumerate() {
        let j = j0 + 2;
        let mut yt = MPoly::zero();
        for k in 0..=b.kappa {
            yt = &yt + &(&var(a.id(AtlasVar::Gamma { point, j, k: k as i64 })) * &tpow(t, k));
        }
        let (res, der) = order_conditions(&g, &yt, y, t);
        out.push(BranchSite { tag: Tag::SerInfG, label: format!("infinity branch {j}"), kappa: b.kappa, residual: res, derivative: der });
    }
    // T^m Ytilde_inf1 = sum_k Gamma_{inf,1,k} T^(k+m)
    let k1 = inf.pole.kappa;
    let mut yt = MPoly::zero();
    for k in -(m as i64)..=(k1 as i64 - m as i64) {
        yt = &yt + &(&var(a.id(AtlasVar::Gamma { point, j: 1, k })) * &tpow(t, (k + m as i64) as usize));
    }
    let (res, der) = order_conditions(&h, &yt, y, t);
    out.push(BranchSite { tag: Tag::SerInfH, label: "infinity branch 1".into(), kappa: k1, residual: res, derivative: der });
    out
}

/// The equations of `V` for the shapes recorded in the report.
pub fn build_v<S: Scalar>(report: &CoverReport<S>) -> VSystem<S> {
    let a = build_atlas(report);
    let mut b = Builder { equations: Vec::new(), dropped: Vec::new() };
    for (i, (alpha, _)) in report.alphas.iter().enumerate() {
        let p = &var(a.id(AtlasVar::Alpha(i + 1))) - &MPoly::constant(alpha.clone());
        b.push(p, Tag::Ram, format!("A_{}", i + 1));
    }

    let d = symbolic_discriminant::<S>(&a);
    let xv = var(a.x());
    let mut rhs = var(a.id(AtlasVar::Delta));
    for (i, (_, sigma)) in report.alphas.iter().enumerate() {
        rhs = &rhs * &(&xv - &var(a.id(AtlasVar::Alpha(i + 1)))).pow(*sigma as u32);
    }
    for (i, (_, tau)) in report.betas.iter().enumerate() {
        rhs = &rhs * &(&xv - &var(a.id(AtlasVar::Beta(i + 1)))).pow(*tau as u32);
    }
    let lhs_c = d.coeffs_in(a.x());
    let rhs_c = rhs.coeffs_in(a.x());
    let top = lhs_c.len().max(rhs_c.len()).max(2 * a.m * (a.n - 1) + 1);
    for k in 0..top {
        b.push(&coeff_at(&lhs_c, k) - &coeff_at(&rhs_c, k), Tag::Disc, format!("X^{k}"));
    }

    for site in branch_sites(report, &a) {
        for k in 0..=2 * site.kappa {
            b.push(coeff_at(&site.residual, k), site.tag, format!("{}: residual coefficient {k}", site.label));
        }
        for k in 0..site.kappa {
            b.push(coeff_at(&site.derivative, k), site.tag, format!("{}: derivative coefficient {k}", site.label));
        }
    }

    let m = a.m as i64;
    let point = PointLabel::Infinity;
    let lead = &var(a.id(AtlasVar::Gamma { point, j: 1, k: -m })) - &int(1);
    b.push(lead, Tag::Uni, format!("G_inf_1_{}", -m));
    let c0 = a.get(AtlasVar::Gamma { point, j: 1, k: 0 }).map_or_else(MPoly::zero, var);
    b.push(c0, Tag::Uni, "G_inf_1_0".into());
    VSystem { atlas: a, equations: b.equations, dropped: b.dropped }
}

/// Number of equations of `V` (stored and dropped) predicted from the report
/// shapes: `mu + (max(2m(n-1), deg d) + 1) + sum over branches with
/// conditions of (3 kappa + 1) + 2`.
pub fn expected_equation_count<S: Scalar>(report: &CoverReport<S>) -> usize {
    let (m, n) = (report.model.m, report.model.n);
    let disc = (2 * m * (n - 1)).max(report.disc.deg()) + 1;
    let finite: usize =
        report.finite.iter().map(|t| t.branches[..t.ell].iter().map(|b| 3 * b.kappa + 1).sum::<usize>()).sum();
    let inf: usize = report.infinity.kappas().iter().map(|k| 3 * k + 1).sum();
    report.mu() + disc + finite + inf + 2
}

/// The predicates `W1`..`W5`.
pub fn build_w<S: Scalar>(report: &CoverReport<S>) -> WSystem<S> {
    let a = build_atlas(report);
    let mut comps = Vec::new();
    comps.push(WComponent { kind: WKind::W1, label: "Delta = 0".into(), polys: vec![var(a.id(AtlasVar::Delta))] });
    for i in 1..=report.mu() {
        for j in 1..=report.nu() {
            comps.push(WComponent {
                kind: WKind::W2,
                label: format!("A_{i} = B_{j}"),
                polys: vec![&var(a.id(AtlasVar::Alpha(i))) - &var(a.id(AtlasVar::Beta(j)))],
            });
        }
    }
    for i in 1..=report.nu() {
        for j in i + 1..=report.nu() {
            comps.push(WComponent {
                kind: WKind::W3,
                label: format!("B_{i} = B_{j}"),
                polys: vec![&var(a.id(AtlasVar::Beta(i))) - &var(a.id(AtlasVar::Beta(j)))],
            });
        }
    }
    for site in branch_sites(report, &a) {
        let polys: Vec<MPoly<S>> =
            (0..=site.kappa).map(|k| coeff_at(&site.derivative, k)).filter(|p| !p.is_zero()).collect();
        let label = format!("{}: derivative order above {}", site.label, site.kappa);
        comps.push(WComponent { kind: WKind::W4, label, polys });
    }
    for (i, t) in report.finite.iter().enumerate() {
        let point = PointLabel::Beta(i + 1);
        for e in &t.lambda {
            let k = e.lambda as i64;
            comps.push(WComponent {
                kind: WKind::W5,
                label: format!("beta {} branches {} and {} agree at {}", i + 1, e.j1, e.j2, k),
                polys: vec![
                    &var(a.id(AtlasVar::Gamma { point, j: e.j1, k })) - &var(a.id(AtlasVar::Gamma { point, j: e.j2, k })),
                ],
            });
        }
    }
    for e in &report.infinity_lambda {
        let point = PointLabel::Infinity;
        let k = e.lambda as i64;
        comps.push(WComponent {
            kind: WKind::W5,
            label: format!("infinity branches {} and {} agree at {}", e.j1, e.j2, k),
            polys: vec![&var(a.id(AtlasVar::Gamma { point, j: e.j1, k })) - &var(a.id(AtlasVar::Gamma { point, j: e.j2, k }))],
        });
    }
    WSystem { atlas: a, components: comps }
}
