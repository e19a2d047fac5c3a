//! Truncated power series `1 + a₁T + … + a_N T^N` with group-ring
//! coefficients. All arithmetic is exact through the truncation order.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;


use crate::ring::{GradingGroup, GroupElementTuple, GroupRingElement, RingError};

/// Errors from series arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesError {
    /// Operands live over different rings or truncation orders.
    Mismatch,
    /// The constant term is not the ring unit.
    NotOnePlus,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::Mismatch => f.write_str("series ring or truncation order mismatch"),
            SeriesError::NotOnePlus => f.write_str("series constant term is not the unit"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SeriesError {}

/// A series `1 + a₁T + … + a_N T^N`, exact through `T^N`. The constant term
/// is always the ring unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    sig: GradingGroup,
    coeffs: Vec<GroupRingElement>,
}

impl TruncatedSeries {
    /// The series `1`.
    pub fn one(sig: GradingGroup, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(GroupRingElement::one(sig.clone()));
        for _ in 0..order {
            coeffs.push(GroupRingElement::zero(sig.clone()));
        }
        TruncatedSeries { sig, coeffs }
    }

    /// Builds a series from coefficients `a₀..a_N`; `a₀` must be the unit.
    pub fn from_coeffs(
        sig: GradingGroup,
        coeffs: Vec<GroupRingElement>,
    ) -> Result<Self, SeriesError> {
        if coeffs.is_empty() || !coeffs[0].is_one() {
            return Err(SeriesError::NotOnePlus);
        }
        if coeffs.iter().any(|c| c.signature() != &sig) {
            return Err(SeriesError::Mismatch);
        }
        Ok(TruncatedSeries { sig, coeffs })
    }

    /// The binomial `1 - {g}·T^s` (or `1 + {g}·T^s` with `negative = false`).
    pub fn binomial(
        sig: GradingGroup,
        g: &GroupElementTuple,
        s: usize,
        negative: bool,
        order: usize,
    ) -> Self {
        let mut out = Self::one(sig.clone(), order);
        if s >= 1 && s <= order {
            let term = GroupRingElement::single(sig, g.clone()).expect("valid tuple");
            out.coeffs[s] = if negative { term.negate() } else { term };
        }
        out
    }

    pub fn signature(&self) -> &GradingGroup {
        &self.sig
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &GroupRingElement {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[GroupRingElement] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: GroupRingElement) {
        assert!(n >= 1 && n <= self.order(), "coefficient index out of range");
        assert_eq!(value.signature(), &self.sig);
        self.coeffs[n] = value;
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Cauchy product, truncated at `N`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.sig != other.sig || self.order() != other.order() {
            return Err(SeriesError::Mismatch);
        }
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut acc = GroupRingElement::zero(self.sig.clone());
            for i in 0..=d {
                let prod = self.coeffs[i].try_mul(&other.coeffs[d - i]).expect("same ring");
                acc = acc.try_add(&prod).expect("same ring");
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    /// The multiplicative inverse: `A·A⁻¹ = 1` through `T^N`.
    pub fn inverse(&self) -> Self {
        let n = self.order();
        let mut inv: Vec<GroupRingElement> = Vec::with_capacity(n + 1);
        inv.push(GroupRingElement::one(self.sig.clone()));
        for d in 1..=n {
            // b_d = -(a_1 b_{d-1} + ... + a_d b_0)
            let mut acc = GroupRingElement::zero(self.sig.clone());
            for i in 1..=d {
                acc = &acc + &(&self.coeffs[i] * &inv[d - i]);
            }
            inv.push(acc.negate());
        }
        TruncatedSeries {
            sig: self.sig.clone(),
            coeffs: inv,
        }
    }

    /// Applies a coefficientwise map (used for projections of whole series).
    pub fn map_coeffs<F>(&self, sig: GradingGroup, f: F) -> Result<Self, RingError>
    where
        F: Fn(&GroupRingElement) -> Result<GroupRingElement, RingError>,
    {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let m = f(c)?;
            if m.signature() != &sig {
                return Err(RingError::SignatureMismatch);
            }
            coeffs.push(m);
        }
        Ok(TruncatedSeries { sig, coeffs })
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, other: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(other).expect("series multiplication")
    }
}

impl fmt::Display for TruncatedSeries {
    /// Golden-file form: `1 + (elt)T^1 + ... + (elt)T^N`, zero coefficients
    /// omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1")?;
        for (n, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                write!(f, " + ({c})T^{n}")?;
            }
        }
        Ok(())
    }
}

/// Raises a series to a nonnegative machine-integer power.
pub fn series_pow(base: &TruncatedSeries, mut exp: u64) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(base.signature().clone(), base.order());
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = &acc * &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// The geometric series `(1 - {g}T^s)^{-1} = Σ_n {n·g} T^{sn}`.
pub fn geometric(sig: &GradingGroup, g: &GroupElementTuple, s: usize, order: usize) -> TruncatedSeries {
    assert!(s >= 1);
    let mut coeffs = alloc::vec![GroupRingElement::zero(sig.clone()); order + 1];
    let mut n = 0usize;
    while s * n <= order {
        let label = g.scale(n as i64);
        coeffs[s * n] = GroupRingElement::single(sig.clone(), label).expect("valid tuple");
        n += 1;
    }
    let _ = &coeffs[0];
    TruncatedSeries::from_coeffs(sig.clone(), coeffs).expect("geometric series starts at 1")
}
