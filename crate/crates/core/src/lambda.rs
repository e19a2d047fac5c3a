//! The λ-structure on ℤ[A] and the associated power structure, implemented
//! twice: a factorization-based expansion with two named extension modes, and
//! the literal combinatorial formula used as an independent oracle.
//!
//! For a series `A(T) = 1 + a₁T + …` the two routes disagree for torsion
//! labels at levels `s ≥ 2`: the combinatorial formula scales the exponent
//! label of a point used at level `s` by `s`, which the factorization route
//! reproduces only after applying the Adams twist `σ_s` to the exponent.
//! Both conventions are exposed as [`Mode`]s and cross-validated in tests.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ring::{EffectiveMapClass, GradingGroup, GroupElementTuple, GroupRingElement};
use crate::series::{geometric, series_pow, TruncatedSeries};

/// Extension convention for exponent levels `s ≥ 2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// `(1-{g}T^s)^{-m} = Σ_n Sⁿ(m)·{n·g}·T^{sn}`: the substitution `T ↦ T^s`
    /// applied to `λ_m`. This is the convention the Macdonald-type theorem
    /// pushforwards require.
    Substitution,
    /// `(1-{g}T^s)^{-m} = Σ_n Sⁿ(σ_s(m))·{n·g}·T^{sn}`: the Adams-twisted
    /// convention that reproduces the combinatorial formula on effective
    /// inputs.
    Geometric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Substitution => f.write_str("substitution"),
            Mode::Geometric => f.write_str("geometric"),
        }
    }
}

/// The `n`th symmetric power of an effective class `(X, ψ)`: the sum over
/// size-`n` multisets of `X` of the class of the summed label. `S⁰ = {0}`.
pub fn sym_power_effective(a: &EffectiveMapClass, n: usize) -> GroupRingElement {
    let sig = a.signature().clone();
    let points = a.points();
    let mut total = GroupRingElement::zero(sig.clone());
    // Enumerate multisets as nondecreasing index sequences.
    fn rec(
        points: &[GroupElementTuple],
        start: usize,
        remaining: usize,
        label: &GroupElementTuple,
        total: &mut GroupRingElement,
        sig: &GradingGroup,
    ) {
        if remaining == 0 {
            let t = GroupRingElement::single(sig.clone(), label.clone()).expect("valid tuple");
            *total = total.try_add(&t).expect("same ring");
            return;
        }
        for i in start..points.len() {
            rec(points, i, remaining - 1, &label.add(&points[i]), total, sig);
        }
    }
    rec(
        &points,
        0,
        n,
        &GroupElementTuple::zero(&sig),
        &mut total,
        &sig,
    );
    total
}

/// The λ-series `λ_a(T) = 1 + S¹(a)T + S²(a)T² + …` of a (possibly virtual)
/// element, via the closed form `λ_{Σ kₐ{a}} = Πₐ (1 - {a}T)^{-kₐ}`.
pub fn lambda_series(a: &GroupRingElement, order: usize) -> TruncatedSeries {
    let sig = a.signature().clone();
    let mut out = TruncatedSeries::one(sig.clone(), order);
    for (t, k) in a.terms() {
        let factor = if k > &BigInt::zero() {
            geometric(&sig, t, 1, order)
        } else {
            TruncatedSeries::binomial(sig.clone(), t, 1, true, order)
        };
        let e: u64 = k.magnitude().try_into().expect("exponent fits in u64");
        out = &out * &series_pow(&factor, e);
    }
    out
}

/// Expands `(1 - {g}T^s)^{-m}` under the given mode.
pub fn expand_neg_power(
    g: &GroupElementTuple,
    s: usize,
    m: &GroupRingElement,
    mode: Mode,
    order: usize,
) -> TruncatedSeries {
    assert!(s >= 1, "level must be positive");
    let sig = m.signature().clone();
    let twisted = match mode {
        Mode::Substitution => m.clone(),
        Mode::Geometric => m.adams_twist(s as i64),
    };
    let lam = lambda_series(&twisted, order / s);
    let mut coeffs = alloc::vec![GroupRingElement::zero(sig.clone()); order + 1];
    coeffs[0] = GroupRingElement::one(sig.clone());
    for n in 1..=order / s {
        let shift = g.scale(n as i64);
        coeffs[s * n] = lam.coeff(n).mul_tuple(&shift);
    }
    TruncatedSeries::from_coeffs(sig, coeffs).expect("constant term is the unit")
}

/// The canonical product form of a series: `A(T) = Π_s λ_{c_s}(T^s)` through
/// `T^N`, with exponent classes extracted greedily level by level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    sig: GradingGroup,
    order: usize,
    levels: Vec<(usize, GroupRingElement)>,
}

impl Factorization {
    pub fn levels(&self) -> &[(usize, GroupRingElement)] {
        &self.levels
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Reassembles `Π_s λ_{c_s}(T^s)`.
    pub fn recompose(&self) -> TruncatedSeries {
        let zero = GroupElementTuple::zero(&self.sig);
        let mut out = TruncatedSeries::one(self.sig.clone(), self.order);
        for (s, c) in &self.levels {
            out = &out * &expand_neg_power(&zero, *s, c, Mode::Substitution, self.order);
        }
        out
    }
}

/// Factors a series into its canonical λ-product form.
pub fn factorize(a: &TruncatedSeries) -> Factorization {
    let sig = a.signature().clone();
    let order = a.order();
    let zero = GroupElementTuple::zero(&sig);
    let mut levels = Vec::new();
    let mut remainder = a.clone();
    for s in 1..=order {
        let c = remainder.coeff(s).clone();
        if !c.is_zero() {
            let factor = expand_neg_power(&zero, s, &c, Mode::Substitution, order);
            remainder = &remainder * &factor.inverse();
            levels.push((s, c));
        }
    }
    debug_assert!(remainder.is_one());
    Factorization { sig, order, levels }
}

/// The power structure: `A(T)^m` for a one-plus-`T` series and a (possibly
/// virtual) exponent, under the given mode.
pub fn power_expand(
    a: &TruncatedSeries,
    m: &GroupRingElement,
    mode: Mode,
    order: usize,
) -> TruncatedSeries {
    assert_eq!(a.signature(), m.signature(), "series and exponent ring differ");
    let sig = a.signature().clone();
    let zero = GroupElementTuple::zero(&sig);
    let fact = factorize(a);
    let mut out = TruncatedSeries::one(sig, order);
    for (s, c) in fact.levels() {
        let exponent = match mode {
            Mode::Substitution => c.try_mul(m),
            Mode::Geometric => c.try_mul(&m.adams_twist(*s as i64)),
        }
        .expect("same ring");
        out = &out * &expand_neg_power(&zero, *s, &exponent, Mode::Substitution, order);
    }
    out
}

/// The literal combinatorial power-structure formula on effective inputs:
/// for `A(T) = 1 + Σ [(Xᵢ,ψᵢ)]Tⁱ` and `m = [(M,ψ)]`, the `Tⁿ` coefficient of
/// `A^m` is the sum over `{nᵢ : Σ i·nᵢ = n}` of the classes of
/// `((M^{Σnᵢ}∖Δ) × Πᵢ Xᵢ^{nᵢ}) / Π S_{nᵢ}` with label
/// `Σ_{i,j} (i·ψ(yᵢʲ) + ψᵢ(xᵢʲ))`.
///
/// `coeffs` lists `a₁..a_L`; levels beyond `L` are empty. Because the `M`
/// points of an orbit are pairwise distinct, the symmetric-group action is
/// free and orbits are enumerated as disjoint subsets of `M` per level, each
/// chosen point multiplied by the full level class.
pub fn power_direct_formula(
    coeffs: &[EffectiveMapClass],
    m: &EffectiveMapClass,
    order: usize,
) -> TruncatedSeries {
    let sig = m.signature().clone();
    let m_points = m.points();
    let level_rings: Vec<GroupRingElement> = coeffs.iter().map(|c| c.as_ring().clone()).collect();

    let mut out = TruncatedSeries::one(sig.clone(), order);
    for n in 1..=order {
        let mut total = GroupRingElement::zero(sig.clone());
        let free: Vec<usize> = (0..m_points.len()).collect();
        levels_rec(
            1,
            n,
            &free,
            &GroupRingElement::one(sig.clone()),
            &m_points,
            &level_rings,
            &mut total,
        );
        out.set_coeff(n, total);
    }
    out
}

fn levels_rec(
    level: usize,
    remaining: usize,
    free: &[usize],
    acc: &GroupRingElement,
    m_points: &[GroupElementTuple],
    level_rings: &[GroupRingElement],
    total: &mut GroupRingElement,
) {
    if remaining == 0 {
        *total = total.try_add(acc).expect("same ring");
        return;
    }
    if level > remaining {
        return;
    }
    // n_level = 0
    levels_rec(level + 1, remaining, free, acc, m_points, level_rings, total);
    let a_level = match level_rings.get(level - 1) {
        Some(r) if !r.is_zero() => r,
        _ => return,
    };
    let max = remaining / level;
    for count in 1..=max.min(free.len()) {
        // choose `count` distinct M-points for this level
        let mut chosen = Vec::with_capacity(count);
        choose_rec(
            free,
            0,
            count,
            &mut chosen,
            &mut |subset: &[usize], rest: &[usize]| {
                let mut factor = acc.clone();
                for &yi in subset {
                    let scaled = m_points[yi].scale(level as i64);
                    factor = factor
                        .try_mul(&a_level.mul_tuple(&scaled))
                        .expect("same ring");
                }
                levels_rec(
                    level + 1,
                    remaining - level * count,
                    rest,
                    &factor,
                    m_points,
                    level_rings,
                    total,
                );
            },
        );
    }
}

/// Enumerates size-`want` subsets of `free[start..]`, handing each subset and
/// the complementary remainder to `visit`.
fn choose_rec(
    free: &[usize],
    start: usize,
    want: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], &[usize]),
) {
    if want == 0 {
        let rest: Vec<usize> = free
            .iter()
            .copied()
            .filter(|i| !chosen.contains(i))
            .collect();
        visit(chosen, &rest);
        return;
    }
    for i in start..free.len() {
        if free.len() - i < want {
            break;
        }
        chosen.push(free[i]);
        choose_rec(free, i + 1, want - 1, chosen, visit);
        chosen.pop();
    }
}

/// Convenience: `Sⁿ` of a possibly virtual element, read off `λ`.
pub fn sym_power(a: &GroupRingElement, n: usize) -> GroupRingElement {
    lambda_series(a, n).coeff(n).clone()
}
