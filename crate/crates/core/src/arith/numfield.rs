use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::Value;

use super::roots::{nf_split_roots, rational_roots};
use super::{fmt_rat, ArithError, Rat, RootSplit, Scalar, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Degree at most 3 with no rational root.
    Proved,
    /// Taken on trust; a false assertion surfaces as `ReducibleField`.
    Asserted,
}

/// `Q[t] / (minpoly)` with `minpoly` monic and squarefree.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: UPoly<Rat>,
    irreducibility: Irreducibility,
}

impl NumberField {
    pub fn new(minpoly: UPoly<Rat>) -> Result<Arc<Self>, ArithError> {
        let d = minpoly.degree().unwrap_or(0);
        if d == 0 || !minpoly.lc().is_one() || !minpoly.is_squarefree() {
            return Err(ArithError::BadMinpoly(minpoly.display_with("t")));
        }
        let irreducibility = if d <= 3 {
            let split = rational_roots(&minpoly);
            if d > 1 {
                if let Some((r, _)) = split.roots.first() {
                    return Err(ArithError::ReducibleField(format!("t - ({})", fmt_rat(r))));
                }
            }
            Irreducibility::Proved
        } else {
            Irreducibility::Asserted
        };
        Ok(Arc::new(NumberField { minpoly, irreducibility }))
    }

    pub fn minpoly(&self) -> &UPoly<Rat> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn generator(self: &Arc<Self>) -> NFElem {
        NFElem::new(self, vec![Rat::zero(), Rat::one()])
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            [(
                "minpoly".to_string(),
                Value::Array(self.minpoly.coeffs().iter().map(|c| Value::String(fmt_rat(c))).collect()),
            )]
            .into_iter()
            .collect(),
        )
    }
}

/// Element of a number field, stored as the reduced representative
/// `sum c_i t^i`. Rationals may carry no field; the field is adopted from the
/// other operand in mixed arithmetic.
#[derive(Clone, Debug)]
pub struct NFElem {
    field: Option<Arc<NumberField>>,
    coords: Vec<Rat>,
}

impl NFElem {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rat>) -> Self {
        let p = UPoly::new(coords).rem(field.minpoly());
        NFElem { field: Some(field.clone()), coords: p.into_coeffs() }
    }

    pub fn rational(r: Rat) -> Self {
        NFElem { field: None, coords: UPoly::constant(r).into_coeffs() }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Coordinates padded to the field degree (length 1 for bare rationals).
    pub fn coords(&self) -> Vec<Rat> {
        let d = self.field.as_ref().map_or(1, |f| f.degree());
        let mut c = self.coords.clone();
        c.resize(d.max(c.len()), Rat::zero());
        c
    }

    pub fn as_poly(&self) -> UPoly<Rat> {
        UPoly::new(self.coords.clone())
    }

    fn join(&self, o: &Self) -> Option<Arc<NumberField>> {
        match (&self.field, &o.field) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b) || a == b, "{}", ArithError::FieldMismatch);
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn with(field: Option<Arc<NumberField>>, p: UPoly<Rat>) -> Self {
        let p = match &field {
            Some(f) if p.deg() >= f.degree() => p.rem(f.minpoly()),
            _ => p,
        };
        NFElem { field, coords: p.into_coeffs() }
    }

    /// Characteristic polynomial of multiplication by `self` over `Q`.
    pub fn charpoly(&self) -> UPoly<Rat> {
        let Some(f) = &self.field else {
            return UPoly::linear_root(&self.coords.first().cloned().unwrap_or_else(Rat::zero));
        };
        // Res_t(m(t), X - a(t)) as a polynomial in X
        use super::BPoly;
        let m = BPoly::from_y(f.minpoly());
        let a = BPoly::from_y(&self.as_poly());
        let lin = &BPoly::from_x(UPoly::monomial(Rat::one(), 1)) - &a;
        super::resultant_y(&m, &lin)
    }
}

impl PartialEq for NFElem {
    fn eq(&self, o: &Self) -> bool {
        self.coords == o.coords
    }
}
impl Eq for NFElem {}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_poly().display_with("t"))
    }
}

impl Add for NFElem {
    type Output = NFElem;
    fn add(self, o: NFElem) -> NFElem {
        self + &o
    }
}
impl<'a> Add<&'a NFElem> for NFElem {
    type Output = NFElem;
    fn add(self, o: &NFElem) -> NFElem {
        let f = self.join(o);
        NFElem::with(f, &self.as_poly() + &o.as_poly())
    }
}
impl Sub for NFElem {
    type Output = NFElem;
    fn sub(self, o: NFElem) -> NFElem {
        self - &o
    }
}
impl<'a> Sub<&'a NFElem> for NFElem {
    type Output = NFElem;
    fn sub(self, o: &NFElem) -> NFElem {
        let f = self.join(o);
        NFElem::with(f, &self.as_poly() - &o.as_poly())
    }
}
impl Mul for NFElem {
    type Output = NFElem;
    fn mul(self, o: NFElem) -> NFElem {
        self * &o
    }
}
impl<'a> Mul<&'a NFElem> for NFElem {
    type Output = NFElem;
    fn mul(self, o: &NFElem) -> NFElem {
        let f = self.join(o);
        NFElem::with(f, &self.as_poly() * &o.as_poly())
    }
}
impl Neg for NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        NFElem { field: self.field.clone(), coords: (-&self.as_poly()).into_coeffs() }
    }
}

impl Zero for NFElem {
    fn zero() -> Self {
        NFElem { field: None, coords: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

impl One for NFElem {
    fn one() -> Self {
        NFElem::rational(Rat::one())
    }
}

impl Scalar for NFElem {
    fn from_rat(r: Rat) -> Self {
        NFElem::rational(r)
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroInverse);
        }
        let Some(f) = &self.field else {
            return Ok(NFElem::rational(self.coords[0].recip()));
        };
        if self.coords.len() == 1 {
            return Ok(NFElem { field: Some(f.clone()), coords: vec![self.coords[0].recip()] });
        }
        let (g, s, _) = self.as_poly().ext_gcd(f.minpoly());
        if g.deg() > 0 {
            return Err(ArithError::ReducibleField(g.display_with("t")));
        }
        Ok(NFElem::with(Some(f.clone()), s))
    }

    fn as_rat(&self) -> Option<Rat> {
        match self.coords.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    fn canonical_cmp(&self, o: &Self) -> Ordering {
        let n = self.coords.len().max(o.coords.len());
        let get = |v: &Vec<Rat>, i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
        (0..n)
            .map(|i| get(&self.coords, i).cmp(&get(&o.coords, i)))
            .find(|c| c.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    fn to_json(&self) -> Value {
        match self.as_rat() {
            Some(r) => Value::String(fmt_rat(&r)),
            None => Value::Array(self.coords().iter().map(|c| Value::String(fmt_rat(c))).collect()),
        }
    }

    fn split_roots(p: &UPoly<Self>) -> Result<RootSplit<Self>, ArithError> {
        nf_split_roots(p)
    }

    fn to_nf(&self) -> NFElem {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn qsqrt2() -> Arc<NumberField> {
        NumberField::new(UPoly::new(vec![int(-2), int(0), int(1)])).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(qsqrt2().irreducibility(), Irreducibility::Proved);
        assert!(matches!(
            NumberField::new(UPoly::new(vec![int(-1), int(0), int(1)])),
            Err(ArithError::ReducibleField(_))
        ));
        assert!(NumberField::new(UPoly::new(vec![int(-2), int(0), int(2)])).is_err());
        let quartic = NumberField::new(UPoly::new(vec![int(-2), int(0), int(0), int(0), int(1)])).unwrap();
        assert_eq!(quartic.irreducibility(), Irreducibility::Asserted);
    }

    #[test]
    fn inverses() {
        let k = qsqrt2();
        let s = k.generator();
        assert_eq!(s.try_inv().unwrap(), NFElem::new(&k, vec![int(0), rat(1, 2)]));
        assert_eq!(NFElem::one().try_inv().unwrap(), NFElem::one());
        let a = NFElem::new(&k, vec![int(1), int(1)]);
        assert_eq!(a.try_inv().unwrap(), NFElem::new(&k, vec![int(-1), int(1)]));
        assert_eq!(NFElem::zero().try_inv(), Err(ArithError::ZeroInverse));
    }

    #[test]
    fn false_irreducibility_assertion_surfaces() {
        // t^4 - 1 is squarefree but reducible; degree 4 is only asserted
        let k = NumberField::new(UPoly::new(vec![int(-1), int(0), int(0), int(0), int(1)])).unwrap();
        let a = NFElem::new(&k, vec![int(-1), int(1)]);
        assert!(matches!(a.try_inv(), Err(ArithError::ReducibleField(_))));
    }

    #[test]
    fn charpoly_of_sqrt2_plus_one() {
        let k = qsqrt2();
        let a = NFElem::new(&k, vec![int(1), int(1)]);
        assert_eq!(a.charpoly(), UPoly::new(vec![int(-1), int(-2), int(1)]));
    }
}
