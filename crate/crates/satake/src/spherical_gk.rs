//! Macdonald's spherical-function formula, the Gindikin-Karpelevich product,
//! and the approximation (stabilization) checker.
//!
//! All series here are base-relative and truncated by offset height. A series
//! is `exact` when the datum is of finite type and the window covers the full
//! finite support, in which case deeper coefficients cancel identically.
//!
//! Every rational factor attached to a Weyl image `w(alpha_vee)` is rewritten
//! before expansion so that the geometric series runs in the negative-coroot
//! direction:
//!
//! ```text
//! w a > 0 : (1 - v e^-wa) / (1 - e^-wa) = 1 + (1-v)(e^-wa + e^-2wa + ...)
//! w a < 0 : with g = -wa,                 v + (v-1)(e^-g  + e^-2g  + ...)
//! ```
//!
//! so a flipped coroot outside the window still contributes its constant `v`.
//! The affine correction factor (the Weyl-invariant `m`-factor of the dual
//! root system) is not included; outputs flag it in `omitted_factors`.

use crate::dl_algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::root_datum::{CorootVector, RootDatum, RootTable};
use crate::vpoly::{pow_rational, Rational, VPoly};
use crate::weyl::{BaseCoweight, WeylElement, WeylGroup};
use num_traits::One;
use std::collections::BTreeMap;

/// A base-relative series known on the offset window `height <= depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub element: AlgebraElement,
    pub depth: i64,
    pub exact: bool,
    pub omitted_factors: Vec<String>,
}

impl TruncatedSeries {
    pub fn coeff(&self, offset: &CorootVector) -> VPoly {
        self.element.coeff(offset)
    }
}

fn omitted_for(datum: &RootDatum) -> Vec<String> {
    if datum.is_finite_type() {
        Vec::new()
    } else {
        vec!["m-factor".to_string()]
    }
}

/// Geometric factor for one positive coroot `gamma`, expanded to the window.
/// `flipped` selects the rewritten direction for `w(alpha) < 0`.
fn coroot_factor(
    rank: usize,
    gamma: &CorootVector,
    flipped: bool,
    max_multiple: i64,
) -> AlgebraElement {
    let base = BaseCoweight::zero(rank);
    let mut out = AlgebraElement::zero(base);
    let constant = if flipped { VPoly::v() } else { VPoly::one() };
    let tail = if flipped { VPoly::v_minus_one() } else { VPoly::one_minus_v() };
    out.insert_add(CorootVector::zero(rank), &constant);
    for k in 1..=max_multiple {
        out.insert_add(gamma.scale(k), &tail);
    }
    out
}

/// The Gindikin-Karpelevich product over positive coroots of height at most
/// `depth`, each factor raised to the coroot multiplicity.
pub fn upsilon(datum: &RootDatum, depth: i64) -> Result<TruncatedSeries> {
    if depth == 0 {
        return Ok(TruncatedSeries {
            element: AlgebraElement::unit(BaseCoweight::zero(datum.rank())),
            depth,
            exact: false,
            omitted_factors: omitted_for(datum),
        });
    }
    let table = datum.coroot_table(depth)?;
    upsilon_from_table(datum, &table, depth)
}

/// Same as [`upsilon`], from a caller-supplied coroot table.
pub fn upsilon_from_table(
    datum: &RootDatum,
    table: &RootTable,
    depth: i64,
) -> Result<TruncatedSeries> {
    if table.height_bound < depth {
        return Err(Error::TableTooShallow);
    }
    let rank = datum.rank();
    let mut acc = AlgebraElement::unit(BaseCoweight::zero(rank));
    for row in &table.rows {
        let ht = row.root.height();
        if ht > depth {
            continue;
        }
        let factor = coroot_factor(rank, &row.root, false, depth / ht);
        for _ in 0..row.mult {
            acc = acc.mul(&factor, Some(depth));
        }
    }
    Ok(TruncatedSeries { element: acc, depth, exact: false, omitted_factors: omitted_for(datum) })
}

/// The elements with `height(lambda - w lambda) <= depth`, i.e. those whose
/// Weyl-sum term can touch the window. Heights are monotone along reduced
/// words for dominant `lambda`, so pruning is safe; the set is finite when the
/// stabilizer of `lambda` is finite.
fn window_elements(
    weyl: &WeylGroup<'_>,
    lambda: &BaseCoweight,
    depth: i64,
) -> Vec<(WeylElement, CorootVector)> {
    let mut seen: BTreeMap<CorootVector, ()> = BTreeMap::new();
    let id = weyl.identity();
    let mut out = vec![(id.clone(), CorootVector::zero(lambda.rank()))];
    seen.insert(id.beta().clone(), ());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..lambda.rank() {
                if weyl.ascends(w, i) {
                    let u = weyl.apply_generator(w, i);
                    if seen.contains_key(u.beta()) {
                        continue;
                    }
                    let shift = weyl.offset_for_base(u.word(), lambda);
                    if shift.height() <= depth {
                        seen.insert(u.beta().clone(), ());
                        out.push((u.clone(), shift));
                        next.push(u);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// The normalized Satake series
/// `S~_lambda = (1 / W_lambda(v)) sum_w w(Upsilon) e^(w lambda - lambda)`,
/// truncated at offset height `depth`.
///
/// For finite type the whole Weyl group is summed and the result is exact on
/// its full support once `depth` reaches it. Otherwise only elements within
/// the window contribute; if one of them has length above `ball_bound` the
/// call fails with `BallTooSmall`.
pub fn satake_normalized(
    datum: &RootDatum,
    lambda: &BaseCoweight,
    depth: i64,
    ball_bound: usize,
) -> Result<TruncatedSeries> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant);
    }
    let weyl = WeylGroup::new(datum);
    let poincare = weyl.stabilizer_poincare(lambda)?;
    let finite = datum.is_finite_type();

    let contributing: Vec<(WeylElement, CorootVector)> = if finite {
        weyl.full_group()?
            .into_iter()
            .map(|w| {
                let shift = weyl.offset_for_base(w.word(), lambda);
                (w, shift)
            })
            .collect()
    } else {
        let elems = window_elements(&weyl, lambda, depth);
        if let Some(needed) = elems.iter().map(|(w, _)| w.length()).max() {
            if needed > ball_bound {
                return Err(Error::BallTooSmall { given: ball_bound, needed });
            }
        }
        elems
    };

    let max_shift = contributing.iter().map(|(_, s)| s.height()).max().unwrap_or(0);
    let exact = finite && depth >= max_shift;

    let table_depth = depth.max(1);
    let table = datum.coroot_table(table_depth)?;
    let rank = datum.rank();

    let mut sum = AlgebraElement::zero(lambda.clone());
    for (w, shift) in &contributing {
        let dshift = shift.height();
        if dshift > depth {
            continue;
        }
        let residual = depth - dshift;
        let mut term = AlgebraElement::monomial(lambda.clone(), shift.clone(), VPoly::one());
        let mut flipped_applied: i64 = 0;
        for row in &table.rows {
            let ht = row.root.height();
            if ht > residual {
                continue;
            }
            let image = w.apply_inverse_to_coroot(&row.root);
            let pos = image.is_nonneg();
            if !pos {
                assert!(
                    image.scale(-1).is_nonneg(),
                    "mixed-sign Weyl image of a positive coroot"
                );
                assert!(row.real, "imaginary coroot flipped by a Weyl element");
                flipped_applied += row.mult;
            }
            let factor = coroot_factor(rank, &row.root, !pos, residual / ht);
            for _ in 0..row.mult {
                term = term.mul(&factor, Some(depth));
            }
        }
        // Flipped coroots outside the window contribute their constant v.
        let correction = w.length() as i64 - flipped_applied;
        assert!(correction >= 0);
        if correction > 0 {
            term = term.scale(&VPoly::monomial(1, correction));
        }
        sum = sum.add(&term);
    }

    let element = sum
        .exact_div_scalar(&poincare)
        .expect("Weyl sum is divisible by the stabilizer Poincare polynomial");
    Ok(TruncatedSeries { element, depth, exact, omitted_factors: omitted_for(datum) })
}

/// Exact Satake series of a finite-type datum: the window is widened to the
/// full support `height(lambda - w0 lambda)`.
pub fn satake_exact(datum: &RootDatum, lambda: &BaseCoweight) -> Result<TruncatedSeries> {
    if !datum.is_finite_type() {
        return Err(Error::NotFiniteType);
    }
    let weyl = WeylGroup::new(datum);
    let full_depth = weyl
        .full_group()?
        .iter()
        .map(|w| weyl.offset_for_base(w.word(), lambda).height())
        .max()
        .unwrap_or(0);
    satake_normalized(datum, lambda, full_depth, usize::MAX - 1)
}

/// Rebases a series at zero onto `lambda` (pure bookkeeping: the prefactor
/// `q^<rho, lambda> e^lambda` is carried by the base normalization).
pub fn gk_shift(lambda: &BaseCoweight, g0: &TruncatedSeries) -> TruncatedSeries {
    let base = g0.element.base().add(lambda);
    let mut element = AlgebraElement::zero(base);
    for (offset, coeff) in g0.element.terms() {
        element.insert_add(offset.clone(), coeff);
    }
    TruncatedSeries {
        element,
        depth: g0.depth,
        exact: g0.exact,
        omitted_factors: g0.omitted_factors.clone(),
    }
}

/// Coefficient trace of one probe offset along a chain of coweights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeTrace {
    pub offset: CorootVector,
    pub values: Vec<VPoly>,
    /// Earliest chain index from which the trace is constant with at least
    /// two confirming entries; `None` when never confirmed.
    pub first_stable: Option<usize>,
    /// For finite type: does the stable value equal the Upsilon coefficient?
    pub matches_upsilon: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub window: i64,
    pub chain: Vec<BaseCoweight>,
    pub probes: Vec<ProbeTrace>,
    pub all_stabilized: bool,
    pub upsilon_compared: bool,
    pub omitted_factors: Vec<String>,
}

/// Computes `S~_lambda` along a strictly increasing dominant regular chain and
/// reports, per window offset, where the coefficients stabilize. For finite
/// type the stable values are compared against `Upsilon`.
pub fn approximation_check(
    datum: &RootDatum,
    chain: &[BaseCoweight],
    window: i64,
    ball_bound: usize,
) -> Result<StabilizationReport> {
    if chain.is_empty() {
        return Err(Error::ParseError("empty chain".into()));
    }
    for lambda in chain {
        if !lambda.is_dominant() || !lambda.is_regular() {
            return Err(Error::ParseError("chain entries must be dominant regular".into()));
        }
    }
    for pair in chain.windows(2) {
        let increasing = pair[0]
            .pairings
            .iter()
            .zip(&pair[1].pairings)
            .all(|(a, b)| a < b);
        if !increasing {
            return Err(Error::ParseError(
                "chain must strictly increase in every pairing coordinate".into(),
            ));
        }
    }

    let series: Vec<TruncatedSeries> = chain
        .iter()
        .map(|lambda| satake_normalized(datum, lambda, window, ball_bound))
        .collect::<Result<_>>()?;

    let finite = datum.is_finite_type();
    let upsilon_series = if finite { Some(upsilon(datum, window)?) } else { None };

    let mut probe_offsets: std::collections::BTreeSet<CorootVector> =
        std::collections::BTreeSet::new();
    for s in &series {
        probe_offsets.extend(s.element.terms().keys().cloned());
    }
    if let Some(u) = &upsilon_series {
        probe_offsets.extend(u.element.terms().keys().cloned());
    }

    let mut probes = Vec::new();
    let mut all_stabilized = true;
    for offset in probe_offsets {
        let values: Vec<VPoly> = series.iter().map(|s| s.coeff(&offset)).collect();
        let mut first_stable = None;
        for k in 0..values.len() {
            if values.len() - k >= 2 && values[k..].iter().all(|x| *x == values[k]) {
                first_stable = Some(k);
                break;
            }
        }
        let matches_upsilon = upsilon_series.as_ref().map(|u| {
            first_stable.is_some() && *values.last().unwrap() == u.coeff(&offset)
        });
        if first_stable.is_none() {
            all_stabilized = false;
        }
        probes.push(ProbeTrace { offset, values, first_stable, matches_upsilon });
    }

    Ok(StabilizationReport {
        window,
        chain: chain.to_vec(),
        probes,
        all_stabilized,
        upsilon_compared: finite,
        omitted_factors: omitted_for(datum),
    })
}

/// All positive coroots of a finite-type datum.
pub fn full_positive_coroots(datum: &RootDatum) -> Result<Vec<CorootVector>> {
    if !datum.is_finite_type() {
        return Err(Error::NotFiniteType);
    }
    let bound = 64;
    let table = datum.coroot_table(bound)?;
    assert!(
        table.rows.iter().all(|r| r.root.height() < bound),
        "coroot closure did not terminate below the bound"
    );
    Ok(table.rows.iter().map(|r| r.root.clone()).collect())
}

/// Macdonald's finite c-function
/// `prod_{a_vee > 0} (1 - q^(-1 - n(a))) / (1 - q^(-n(a)))`
/// for an integer exponent assignment `n` on positive coroots.
pub fn finite_cfunction(
    datum: &RootDatum,
    exponent_of: &dyn Fn(&CorootVector) -> i64,
    q: Rational,
) -> Result<Rational> {
    let coroots = full_positive_coroots(datum)?;
    let mut acc = Rational::one();
    for gamma in &coroots {
        let n = exponent_of(gamma);
        if n == 0 {
            return Err(Error::PoleAtCoroot);
        }
        let numer = Rational::one() - pow_rational(q, -1 - n);
        let denom = Rational::one() - pow_rational(q, -n);
        acc *= numer / denom;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl_algebra::Exponent;
    use crate::fixtures::{a1, a2, affine_a1};

    #[test]
    fn upsilon_rank_one() {
        let datum = a1();
        let u = upsilon(&datum, 3).unwrap();
        assert_eq!(u.coeff(&CorootVector(vec![0])), VPoly::one());
        for k in 1..=3 {
            assert_eq!(u.coeff(&CorootVector(vec![k])), VPoly::one_minus_v());
        }
        assert!(u.omitted_factors.is_empty());

        let trivial = upsilon(&datum, 0).unwrap();
        assert_eq!(trivial.element, AlgebraElement::unit(BaseCoweight::zero(1)));
    }

    #[test]
    fn upsilon_a2_depth_two() {
        let datum = a2();
        let u = upsilon(&datum, 2).unwrap();
        assert_eq!(u.coeff(&CorootVector(vec![0, 0])), VPoly::one());
        for offset in [vec![1, 0], vec![0, 1], vec![2, 0], vec![0, 2]] {
            assert_eq!(u.coeff(&CorootVector(offset)), VPoly::one_minus_v());
        }
        // (1-v)^2 from the two simple factors plus (1-v) from the long coroot
        let expected = &(&VPoly::one_minus_v() * &VPoly::one_minus_v()) + &VPoly::one_minus_v();
        assert_eq!(u.coeff(&CorootVector(vec![1, 1])), expected);
    }

    #[test]
    fn upsilon_affine_uses_null_coroot_multiplicity() {
        let datum = affine_a1();
        let u = upsilon(&datum, 2).unwrap();
        assert_eq!(u.omitted_factors, vec!["m-factor".to_string()]);
        assert_eq!(u.coeff(&CorootVector(vec![0, 0])), VPoly::one());
        assert_eq!(u.coeff(&CorootVector(vec![1, 0])), VPoly::one_minus_v());
        assert_eq!(u.coeff(&CorootVector(vec![0, 1])), VPoly::one_minus_v());
        // simple x simple plus the multiplicity-one null coroot factor
        let expected = &(&VPoly::one_minus_v() * &VPoly::one_minus_v()) + &VPoly::one_minus_v();
        assert_eq!(u.coeff(&CorootVector(vec![1, 1])), expected);
    }

    #[test]
    fn upsilon_coefficients_nonnegative_at_v_eq_inverse_q() {
        let datum = affine_a1();
        let u = upsilon(&datum, 4).unwrap();
        for q in [2i64, 3] {
            let vals = u.element.evaluate_at(Rational::from_integer(q));
            for value in vals.values() {
                assert!(*value >= Rational::from_integer(0));
            }
        }
    }

    #[test]
    fn shallow_table_rejected() {
        let datum = a1();
        let table = datum.coroot_table(1).unwrap();
        assert_eq!(upsilon_from_table(&datum, &table, 3).unwrap_err(), Error::TableTooShallow);
    }

    #[test]
    fn satake_rank_one_exact() {
        let datum = a1();
        let lambda = BaseCoweight::new(vec![2]);
        let s = satake_exact(&datum, &lambda).unwrap();
        assert!(s.exact);
        assert_eq!(s.coeff(&CorootVector(vec![0])), VPoly::one());
        assert_eq!(s.coeff(&CorootVector(vec![1])), VPoly::one_minus_v());
        assert_eq!(s.coeff(&CorootVector(vec![2])), VPoly::one());
        assert_eq!(s.element.len(), 3);
    }

    #[test]
    fn satake_depth_zero_constant_term() {
        let datum = a2();
        let lambda = BaseCoweight::new(vec![1, 1]);
        let s = satake_normalized(&datum, &lambda, 0, 8).unwrap();
        assert_eq!(s.element.len(), 1);
        assert_eq!(s.coeff(&CorootVector(vec![0, 0])), VPoly::one());
    }

    #[test]
    fn satake_minuscule_orbit() {
        // Stabilizer division: lambda = omega_1 for A2 has W_lambda = {1, w_1}.
        let datum = a2();
        let lambda = BaseCoweight::new(vec![1, 0]);
        let s = satake_exact(&datum, &lambda).unwrap();
        let expected: Vec<(Vec<i64>, VPoly)> = vec![
            (vec![0, 0], VPoly::one()),
            (vec![1, 0], VPoly::one()),
            (vec![1, 1], VPoly::one()),
        ];
        assert_eq!(s.element.len(), expected.len());
        for (offset, coeff) in expected {
            assert_eq!(s.coeff(&CorootVector(offset)), coeff);
        }
    }

    #[test]
    fn satake_truncation_is_restriction_of_exact() {
        let datum = a2();
        let lambda = BaseCoweight::new(vec![1, 1]);
        let full = satake_exact(&datum, &lambda).unwrap();
        let windowed = satake_normalized(&datum, &lambda, 2, 8).unwrap();
        for (offset, coeff) in windowed.element.terms() {
            assert_eq!(coeff, &full.coeff(offset));
        }
        for (offset, coeff) in full.element.terms() {
            if offset.height() <= 2 {
                assert_eq!(coeff, &windowed.coeff(offset));
            }
        }
    }

    #[test]
    fn satake_beyond_full_support_vanishes() {
        let datum = a1();
        let lambda = BaseCoweight::new(vec![2]);
        let wide = satake_normalized(&datum, &lambda, 6, 8).unwrap();
        for (offset, _) in wide.element.terms() {
            assert!(offset.height() <= 2, "coefficient beyond the support at {offset:?}");
        }
    }

    fn weyl_fixes_series(datum: &RootDatum, s: &TruncatedSeries) -> bool {
        let weyl = WeylGroup::new(datum);
        for i in 0..datum.rank() {
            let gen = weyl.generator(i);
            for (offset, coeff) in s.element.terms() {
                let e = Exponent::new(s.element.base().clone(), offset.clone());
                let moved = weyl.act_on_exponent(&gen, &e);
                if s.element.coeff(&moved.offset) != *coeff {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn satake_is_weyl_invariant() {
        let datum = a1();
        let s = satake_exact(&datum, &BaseCoweight::new(vec![2])).unwrap();
        assert!(weyl_fixes_series(&datum, &s));

        let datum2 = a2();
        let s2 = satake_exact(&datum2, &BaseCoweight::new(vec![1, 1])).unwrap();
        assert!(weyl_fixes_series(&datum2, &s2));
        let s3 = satake_exact(&datum2, &BaseCoweight::new(vec![1, 0])).unwrap();
        assert!(weyl_fixes_series(&datum2, &s3));
    }

    #[test]
    fn satake_support_dominated_by_lambda() {
        let datum = a2();
        let lambda = BaseCoweight::new(vec![2, 1]);
        let s = satake_exact(&datum, &lambda).unwrap();
        for offset in s.element.terms().keys() {
            assert!(offset.is_nonneg());
        }
    }

    #[test]
    fn affine_satake_window_and_ball_bound() {
        let datum = affine_a1();
        let lambda = BaseCoweight::new(vec![1, 1]);
        let s = satake_normalized(&datum, &lambda, 2, 8).unwrap();
        assert!(!s.exact);
        assert_eq!(s.omitted_factors, vec!["m-factor".to_string()]);
        assert_eq!(s.coeff(&CorootVector(vec![0, 0])), VPoly::one());
        // w_0 contributes v at its shift e^(-a_0), on top of Upsilon's (1-v)
        assert_eq!(s.coeff(&CorootVector(vec![1, 0])), VPoly::one());
        assert_eq!(s.coeff(&CorootVector(vec![0, 1])), VPoly::one());

        let err = satake_normalized(&datum, &lambda, 4, 1).unwrap_err();
        assert_eq!(err, Error::BallTooSmall { given: 1, needed: 2 });
    }

    #[test]
    fn satake_requires_dominant_base_and_finite_stabilizer() {
        let datum = a1();
        assert_eq!(
            satake_normalized(&datum, &BaseCoweight::new(vec![-1]), 2, 4).unwrap_err(),
            Error::NotDominant
        );
        let aff = affine_a1();
        assert_eq!(
            satake_normalized(&aff, &BaseCoweight::new(vec![0, 0]), 2, 4).unwrap_err(),
            Error::InfiniteStabilizer
        );
    }

    #[test]
    fn gk_shift_is_rebasing() {
        let datum = a1();
        let g0 = upsilon(&datum, 3).unwrap();
        let zero = BaseCoweight::zero(1);
        let same = gk_shift(&zero, &g0);
        assert_eq!(same.element.terms(), g0.element.terms());
        assert_eq!(same.element.base().pairings, vec![0]);

        let lambda = BaseCoweight::new(vec![2]);
        let shifted = gk_shift(&lambda, &g0);
        assert_eq!(shifted.element.base().pairings, vec![2]);
        for (offset, coeff) in g0.element.terms() {
            assert_eq!(shifted.coeff(offset), *coeff);
        }

        let mu = BaseCoweight::new(vec![3]);
        let twice = gk_shift(&mu, &shifted);
        let once = gk_shift(&lambda.add(&mu), &g0);
        assert_eq!(twice.element.base().pairings, once.element.base().pairings);
        assert_eq!(twice.element.terms(), once.element.terms());
    }

    #[test]
    fn approximation_rank_one() {
        let datum = a1();
        let chain: Vec<BaseCoweight> =
            [2, 4, 6, 8].iter().map(|&n| BaseCoweight::new(vec![n])).collect();
        let report = approximation_check(&datum, &chain, 3, 8).unwrap();
        assert!(report.upsilon_compared);
        assert!(report.all_stabilized);
        for probe in &report.probes {
            let d = probe.offset.height();
            // stable exactly from the first chain entry with n > d
            let expected_index = chain
                .iter()
                .position(|l| l.pairings[0] > d)
                .unwrap();
            assert_eq!(probe.first_stable, Some(expected_index), "probe {:?}", probe.offset);
            assert_eq!(probe.matches_upsilon, Some(true));
        }
    }

    #[test]
    fn approximation_affine_reports_cauchy_only() {
        let datum = affine_a1();
        let chain: Vec<BaseCoweight> = [(2, 2), (3, 3), (4, 4)]
            .iter()
            .map(|&(a, b)| BaseCoweight::new(vec![a, b]))
            .collect();
        let report = approximation_check(&datum, &chain, 2, 8).unwrap();
        assert!(!report.upsilon_compared);
        assert_eq!(report.omitted_factors, vec!["m-factor".to_string()]);
        assert!(report.all_stabilized);
        for probe in &report.probes {
            assert!(probe.matches_upsilon.is_none());
        }
        // depth-2 offsets feel the length-one terms at the first chain point
        let probe = report
            .probes
            .iter()
            .find(|p| p.offset == CorootVector(vec![2, 0]))
            .unwrap();
        assert_eq!(probe.first_stable, Some(1));
        assert_ne!(probe.values[0], probe.values[1]);
    }

    #[test]
    fn approximation_rejects_bad_chains() {
        let datum = a1();
        let flat = vec![BaseCoweight::new(vec![2]), BaseCoweight::new(vec![2])];
        assert!(approximation_check(&datum, &flat, 2, 4).is_err());
        let singular = vec![BaseCoweight::new(vec![0])];
        assert!(approximation_check(&datum, &singular, 2, 4).is_err());
    }

    #[test]
    fn cfunction_examples() {
        let q2 = Rational::from_integer(2);
        let ones = |_: &CorootVector| 1i64;
        assert_eq!(finite_cfunction(&a1(), &ones, q2).unwrap(), Rational::new(3, 2));
        assert_eq!(finite_cfunction(&a2(), &ones, q2).unwrap(), Rational::new(27, 8));
        assert_eq!(
            finite_cfunction(&affine_a1(), &ones, q2).unwrap_err(),
            Error::NotFiniteType
        );
        let zero_on_long = |g: &CorootVector| if g.height() > 1 { 0i64 } else { 1 };
        assert_eq!(
            finite_cfunction(&a2(), &zero_on_long, q2).unwrap_err(),
            Error::PoleAtCoroot
        );
    }

    #[test]
    fn a2_has_three_positive_coroots() {
        assert_eq!(full_positive_coroots(&a2()).unwrap().len(), 3);
    }
}
