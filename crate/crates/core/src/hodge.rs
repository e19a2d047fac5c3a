//! Equivariant Hodge–Deligne polynomials from mixed-Hodge eigenvalue data,
//! and the reductions between the spectrum rings ℚ, ℚ/ℤ×ℚ and ℚ/ℤ×ℚ×ℚ.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{rat_to_string, CyclicRational, Rat};
use crate::ring::{Coord, GradingGroup, GroupElementTuple, GroupRingElement, RingError};

/// One eigenvalue block of a mixed Hodge structure: the `(p,q)`-piece of the
/// `e[α]`-eigenspace of `φ*` on `H^k_c`, of the given dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MixedHodgeEigenDatum {
    pub k: u32,
    pub p: u32,
    pub q: u32,
    pub alpha: CyclicRational,
    pub dim: u64,
}

impl MixedHodgeEigenDatum {
    pub fn new(k: u32, p: u32, q: u32, alpha: CyclicRational, dim: u64) -> Self {
        MixedHodgeEigenDatum { k, p, q, alpha, dim }
    }
}

/// An equivariant Hodge–Deligne polynomial, stored as a group-ring element
/// over ℚ/ℤ×ℚ×ℚ: the tuple `(α, P, Q)` encodes `ω_{e[α]} u^P v^Q`, with
/// fractional `(uv)^β` parts carried symmetrically by `P` and `Q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivariantHd(GroupRingElement);

/// The tuple `(α, p, q)` in the triple ring.
pub fn triple_tuple(alpha: CyclicRational, p: Rat, q: Rat) -> GroupElementTuple {
    GroupElementTuple::new(alloc::vec![
        Coord::Cyclic(alpha),
        Coord::Rational(p),
        Coord::Rational(q),
    ])
}

impl EquivariantHd {
    /// Wraps a triple-ring element, checking that every term has `P, Q ≥ 0`
    /// and `P - Q ∈ ℤ`.
    pub fn new(value: GroupRingElement) -> Result<Self, RingError> {
        if value.signature() != &GradingGroup::triple() {
            return Err(RingError::SignatureMismatch);
        }
        for (t, _) in value.terms() {
            let (p, q) = match (t.coords()[1], t.coords()[2]) {
                (Coord::Rational(p), Coord::Rational(q)) => (p, q),
                _ => return Err(RingError::InvalidTuple),
            };
            if p < Rat::from_integer(0) || q < Rat::from_integer(0) || !(p - q).is_integer() {
                return Err(RingError::InvalidTuple);
            }
        }
        Ok(EquivariantHd(value))
    }

    pub fn zero() -> Self {
        EquivariantHd(GroupRingElement::zero(GradingGroup::triple()))
    }

    /// The class of a point: `{(0,0,0)}`.
    pub fn point() -> Self {
        EquivariantHd(GroupRingElement::one(GradingGroup::triple()))
    }

    /// `e_{(V,φ)}(u,v) = Σ (−1)^k dim (H^k_α)^{p,q} ω_{e[α]} u^p v^q`.
    pub fn from_data(data: &[MixedHodgeEigenDatum]) -> Self {
        let sig = GradingGroup::triple();
        let mut value = GroupRingElement::zero(sig.clone());
        for d in data {
            let tuple = triple_tuple(
                d.alpha,
                Rat::from_integer(d.p as i64),
                Rat::from_integer(d.q as i64),
            );
            let mut coeff = BigInt::from(d.dim);
            if d.k % 2 == 1 {
                coeff = -coeff;
            }
            let term = GroupRingElement::term(sig.clone(), tuple, coeff).expect("valid tuple");
            value = value.try_add(&term).expect("same ring");
        }
        EquivariantHd(value)
    }

    pub fn value(&self) -> &GroupRingElement {
        &self.0
    }

    pub fn into_value(self) -> GroupRingElement {
        self.0
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        Ok(EquivariantHd(self.0.try_add(&other.0)?))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        Ok(EquivariantHd(self.0.try_mul(&other.0)?))
    }

    /// Multiplies by `(uv)^β`, i.e. by the marker `{(0, β, β)}`.
    pub fn shift_uv(&self, beta: Rat) -> Self {
        let marker = triple_tuple(CyclicRational::zero(), beta, beta);
        EquivariantHd(self.0.mul_tuple(&marker))
    }

    /// `ē(t) = e(t, 1)`: drop the `Q` coordinate (ring homomorphism onto
    /// ℚ/ℤ×ℚ).
    pub fn to_pair(&self) -> GroupRingElement {
        self.0.project(&[0, 1]).expect("valid projection")
    }

    /// Same reduction, under its Poincaré-polynomial name.
    pub fn to_poincare_bar(&self) -> GroupRingElement {
        self.to_pair()
    }

    /// The identity embedding into the triple ring.
    pub fn to_triple(&self) -> GroupRingElement {
        self.0.clone()
    }

    /// The Hodge spectrum: `(α, P, Q) ↦ {P + lift(α)}` with the lift into
    /// `[0, 1)`. Additive, but not a ring homomorphism.
    pub fn to_hsp(&self) -> GroupRingElement {
        let sig = GradingGroup::spectrum();
        let mut out = GroupRingElement::zero(sig.clone());
        for (t, k) in self.0.terms() {
            let (alpha, p) = match (t.coords()[0], t.coords()[1]) {
                (Coord::Cyclic(a), Coord::Rational(p)) => (a, p),
                _ => unreachable!("triple signature"),
            };
            let exponent = GroupElementTuple::new(alloc::vec![Coord::Rational(
                p + alpha.representative()
            )]);
            let term = GroupRingElement::term(sig.clone(), exponent, k.clone()).expect("valid");
            out = out.try_add(&term).expect("same ring");
        }
        out
    }
}

impl fmt::Display for EquivariantHd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Formats a spectrum (an element of ℤ[ℚ]) as a fractional-power polynomial
/// in `t`: `{r} ↦ t^r`.
pub fn hsp_to_poincare(h: &GroupRingElement) -> String {
    use alloc::format;
    assert_eq!(h.signature(), &GradingGroup::spectrum());
    if h.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (t, k)) in h.terms().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let r = match t.coords()[0] {
            Coord::Rational(r) => r,
            _ => unreachable!("spectrum signature"),
        };
        let coeff = if k == &BigInt::one() {
            String::new()
        } else {
            format!("{k}")
        };
        let monomial = if r == Rat::from_integer(0) {
            if coeff.is_empty() {
                String::from("1")
            } else {
                String::new()
            }
        } else if r == Rat::from_integer(1) {
            String::from("t")
        } else if r.is_integer() && r > Rat::from_integer(0) {
            format!("t^{}", r.numer())
        } else {
            format!("t^{{{}}}", rat_to_string(r))
        };
        out.push_str(&coeff);
        out.push_str(&monomial);
    }
    out
}

/// Parses one Hodge data row `k,p,q,alpha,dim` with `alpha` as `num/den`.
pub fn parse_hodge_row(row: &str) -> Option<MixedHodgeEigenDatum> {
    let parts: Vec<&str> = row.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return None;
    }
    Some(MixedHodgeEigenDatum {
        k: parts[0].parse().ok()?,
        p: parts[1].parse().ok()?,
        q: parts[2].parse().ok()?,
        alpha: CyclicRational::new(crate::rational::rat_from_str(parts[3])?),
        dim: parts[4].parse().ok()?,
    })
}
