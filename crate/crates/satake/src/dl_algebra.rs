//! The group algebra of the coweight lattice with coefficients in `Z[v, v^-1]`,
//! and the Demazure-Lusztig operators acting on it.
//!
//! Exponents are stored base-relative: `e^(lambda - offset)` is the pair of a
//! base coweight `lambda` (given by its pairing vector) and a coroot-lattice
//! offset. Absolute prefactors such as `q^<rho, lambda>` are normalized away.
//!
//! The operator `T_i = c(alpha_i_vee)[w_i] + b(alpha_i_vee)[1]`, with
//! `b(X) = (v-1)/(1-X)` and `c(X) = (1-vX)/(1-X)` expanded in `X^-1`, acts on
//! a monomial `e^mu` with `n = <alpha_i, mu>` by the closed form
//!
//! ```text
//! n >= 1 : sum_{k=1}^{n-1} (1-v) e^(mu - k a_i) + e^(mu - n a_i)
//! n == 0 : v e^mu
//! n <= -1: v e^(mu + |n| a_i) + (v-1) sum_{m=0}^{|n|-1} e^(mu + m a_i)
//! ```
//!
//! The two geometric tails telescope, so the image of a finite element is
//! always finite and no truncation is involved.

use crate::error::{Error, Result};
use crate::root_datum::{CorootVector, RootDatum};
use crate::vpoly::{Rational, VPoly};
use crate::weyl::{BaseCoweight, WeylElement, WeylGroup};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A coweight-lattice point written as `base - offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub base: BaseCoweight,
    pub offset: CorootVector,
}

impl Exponent {
    pub fn new(base: BaseCoweight, offset: CorootVector) -> Self {
        Exponent { base, offset }
    }

    /// Depth below the base, defined when the offset lies in the positive cone.
    pub fn depth(&self) -> Option<i64> {
        self.offset.is_nonneg().then(|| self.offset.height())
    }
}

/// `mu <= lambda` in dominance order; both exponents must share a base.
pub fn dominance_leq(mu: &Exponent, lambda: &Exponent) -> Result<bool> {
    if mu.base.pairings != lambda.base.pairings {
        return Err(Error::MismatchedBase);
    }
    Ok(mu.offset.sub(&lambda.offset).is_nonneg())
}

/// A finite sparse element `sum_offset coeff(offset) e^(base - offset)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    base: BaseCoweight,
    terms: BTreeMap<CorootVector, VPoly>,
}

impl AlgebraElement {
    pub fn zero(base: BaseCoweight) -> Self {
        AlgebraElement { base, terms: BTreeMap::new() }
    }

    /// The single monomial `e^base`.
    pub fn unit(base: BaseCoweight) -> Self {
        let rank = base.rank();
        AlgebraElement::monomial(base, CorootVector::zero(rank), VPoly::one())
    }

    pub fn monomial(base: BaseCoweight, offset: CorootVector, coeff: VPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(offset, coeff);
        }
        AlgebraElement { base, terms }
    }

    pub fn base(&self) -> &BaseCoweight {
        &self.base
    }

    pub fn terms(&self) -> &BTreeMap<CorootVector, VPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, offset: &CorootVector) -> VPoly {
        self.terms.get(offset).cloned().unwrap_or_else(VPoly::zero)
    }

    pub fn insert_add(&mut self, offset: CorootVector, coeff: &VPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(offset);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.base.pairings, other.base.pairings, "added elements must share a base");
        let mut out = self.clone();
        for (offset, coeff) in &other.terms {
            out.insert_add(offset.clone(), coeff);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&VPoly::constant(-1)))
    }

    pub fn scale(&self, c: &VPoly) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.base.clone());
        for (offset, coeff) in &self.terms {
            out.insert_add(offset.clone(), &(coeff * c));
        }
        out
    }

    /// Product of elements; bases combine by adding pairing vectors. Terms
    /// whose offset height exceeds `depth_cutoff` are dropped.
    pub fn mul(&self, other: &AlgebraElement, depth_cutoff: Option<i64>) -> AlgebraElement {
        let base = self.base.add(&other.base);
        let mut out = AlgebraElement::zero(base);
        for (o1, c1) in &self.terms {
            for (o2, c2) in &other.terms {
                let offset = o1.add(o2);
                if let Some(cut) = depth_cutoff {
                    if offset.height() > cut {
                        continue;
                    }
                }
                out.insert_add(offset, &(c1 * c2));
            }
        }
        out
    }

    /// Divides every coefficient exactly by a scalar polynomial.
    pub fn exact_div_scalar(&self, d: &VPoly) -> Option<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.base.clone());
        for (offset, coeff) in &self.terms {
            out.insert_add(offset.clone(), &coeff.exact_div(d)?);
        }
        Some(out)
    }

    /// One Demazure-Lusztig operator, by the telescoped monomial rule.
    pub fn apply_t_i(&self, datum: &RootDatum, i: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.base.clone());
        let one_minus_v = VPoly::one_minus_v();
        let v_minus_one = VPoly::v_minus_one();
        let v = VPoly::v();
        for (offset, coeff) in &self.terms {
            let n = self.base.pairings[i] - datum.pair_root_coroot(i, offset);
            if n == 0 {
                out.insert_add(offset.clone(), &(coeff * &v));
            } else if n >= 1 {
                let tail = coeff * &one_minus_v;
                for k in 1..n {
                    let mut o = offset.clone();
                    o.0[i] += k;
                    out.insert_add(o, &tail);
                }
                let mut o = offset.clone();
                o.0[i] += n;
                out.insert_add(o, coeff);
            } else {
                let p = -n;
                let mut o = offset.clone();
                o.0[i] -= p;
                out.insert_add(o, &(coeff * &v));
                let tail = coeff * &v_minus_one;
                for m in 0..p {
                    let mut o = offset.clone();
                    o.0[i] -= m;
                    out.insert_add(o, &tail);
                }
            }
        }
        out
    }

    /// `T_w` along a reduced word, leftmost operator applied last.
    pub fn apply_t_word(&self, datum: &RootDatum, word: &[usize]) -> Result<AlgebraElement> {
        let weyl = WeylGroup::new(datum);
        weyl.element_from_word(word)?;
        let mut out = self.clone();
        for &i in word.iter().rev() {
            out = out.apply_t_i(datum, i);
        }
        Ok(out)
    }

    /// Exact rational coefficients after substituting `v = q^-1`. Requires `q > 1`.
    pub fn evaluate_at(&self, q: Rational) -> BTreeMap<CorootVector, Rational> {
        debug_assert!(q > Rational::from_integer(1));
        let v = Rational::from_integer(1) / q;
        let mut out = BTreeMap::new();
        for (offset, coeff) in &self.terms {
            let value = coeff.eval(v);
            if value != Rational::from_integer(0) {
                out.insert(offset.clone(), value);
            }
        }
        out
    }

    /// JSON form: base plus terms ordered by offset, each with a `v`-power
    /// coefficient list and its recorded minimum power.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(offset, coeff)| {
                serde_json::json!({
                    "offset": offset.0,
                    "min_pow": coeff.min_pow(),
                    "coeff": coeff.coeffs(),
                })
            })
            .collect();
        serde_json::json!({
            "base": { "pairings": self.base.pairings, "name": self.base.name },
            "terms": terms,
        })
    }
}

/// Truncated expansion of `b` or `c` at the simple coroot `alpha_i_vee`:
/// `b = (1-v) sum_{k>=1} e^(-k a_i)` and `c = v + (v-1) sum_{k>=1} e^(-k a_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    B,
    C,
}

pub fn bc_series(datum: &RootDatum, kind: SeriesKind, i: usize, depth: i64) -> AlgebraElement {
    let rank = datum.rank();
    let base = BaseCoweight::zero(rank);
    let mut out = AlgebraElement::zero(base);
    let tail = match kind {
        SeriesKind::B => VPoly::one_minus_v(),
        SeriesKind::C => VPoly::v_minus_one(),
    };
    if kind == SeriesKind::C {
        out.insert_add(CorootVector::zero(rank), &VPoly::v());
    }
    for k in 1..=depth {
        let mut o = CorootVector::zero(rank);
        o.0[i] = k;
        out.insert_add(o, &tail);
    }
    out
}

/// `T_i^2 f = (v-1) T_i f + v f`, checked exactly.
pub fn hecke_quadratic_check(datum: &RootDatum, i: usize, f: &AlgebraElement) -> bool {
    let tf = f.apply_t_i(datum, i);
    let ttf = tf.apply_t_i(datum, i);
    let rhs = tf.scale(&VPoly::v_minus_one()).add(&f.scale(&VPoly::v()));
    ttf == rhs
}

/// The normalized Iwasawa integral `I_{w,lambda} = T_w(e^lambda)` attached to
/// a dominant regular coweight, base-relative (the `q^-<rho,lambda>` prefactor
/// is carried by the base normalization).
pub fn integral_i(
    datum: &RootDatum,
    w: &WeylElement,
    lambda: &BaseCoweight,
) -> Result<AlgebraElement> {
    if !lambda.is_dominant() || !lambda.is_regular() {
        return Err(Error::NotDominantRegular);
    }
    let mut out = AlgebraElement::unit(lambda.clone());
    for &i in w.word().iter().rev() {
        out = out.apply_t_i(datum, i);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a1, a2, affine_a1};
    use rand::{Rng, SeedableRng};

    fn unit_for(datum: &RootDatum, pairings: Vec<i64>) -> AlgebraElement {
        let _ = datum;
        AlgebraElement::unit(BaseCoweight::new(pairings))
    }

    #[test]
    fn bc_series_examples() {
        let datum = a1();
        let b = bc_series(&datum, SeriesKind::B, 0, 2);
        let mut expected = AlgebraElement::zero(BaseCoweight::zero(1));
        expected.insert_add(CorootVector(vec![1]), &VPoly::one_minus_v());
        expected.insert_add(CorootVector(vec![2]), &VPoly::one_minus_v());
        assert_eq!(b, expected);

        let c0 = bc_series(&datum, SeriesKind::C, 0, 0);
        assert_eq!(
            c0,
            AlgebraElement::monomial(BaseCoweight::zero(1), CorootVector::zero(1), VPoly::v())
        );

        for depth in 0..5 {
            let b = bc_series(&datum, SeriesKind::B, 0, depth);
            let c = bc_series(&datum, SeriesKind::C, 0, depth);
            let sum = b.add(&c);
            assert_eq!(
                sum,
                AlgebraElement::monomial(BaseCoweight::zero(1), CorootVector::zero(1), VPoly::v())
            );
        }
    }

    #[test]
    fn monomial_rule_cases() {
        let datum = a1();
        let f = unit_for(&datum, vec![2]);
        let tf = f.apply_t_i(&datum, 0);
        let mut expected = AlgebraElement::zero(BaseCoweight::new(vec![2]));
        expected.insert_add(CorootVector(vec![1]), &VPoly::one_minus_v());
        expected.insert_add(CorootVector(vec![2]), &VPoly::one());
        assert_eq!(tf, expected);

        // n = 0 scales by v
        let g = unit_for(&datum, vec![0]);
        assert_eq!(
            g.apply_t_i(&datum, 0),
            AlgebraElement::monomial(BaseCoweight::new(vec![0]), CorootVector::zero(1), VPoly::v())
        );

        // n = 1 sends the monomial to its reflection
        let h = unit_for(&datum, vec![1]);
        assert_eq!(
            h.apply_t_i(&datum, 0),
            AlgebraElement::monomial(
                BaseCoweight::new(vec![1]),
                CorootVector(vec![1]),
                VPoly::one()
            )
        );
    }

    /// Independent route: `T_i f = c(a_i) . (w_i f) + b(a_i) . f` with the
    /// series truncated far enough to cover the finite answer, plus margin.
    fn series_route(
        datum: &RootDatum,
        i: usize,
        f: &AlgebraElement,
        window: i64,
    ) -> AlgebraElement {
        let weyl = WeylGroup::new(datum);
        let s = weyl.generator(i);
        let mut reflected = AlgebraElement::zero(f.base().clone());
        for (offset, coeff) in f.terms() {
            let e = Exponent::new(f.base().clone(), offset.clone());
            let moved = weyl.act_on_exponent(&s, &e);
            reflected.insert_add(moved.offset, coeff);
        }
        let min_ht = f
            .terms()
            .keys()
            .chain(reflected.terms().keys())
            .map(|o| o.height())
            .min()
            .unwrap_or(0);
        let series_depth = (window - min_ht).max(0) + 1;
        let b = bc_series(datum, SeriesKind::B, i, series_depth);
        let c = bc_series(datum, SeriesKind::C, i, series_depth);
        c.mul(&reflected, Some(window)).add(&b.mul(f, Some(window)))
    }

    fn truncate(f: &AlgebraElement, window: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(f.base().clone());
        for (offset, coeff) in f.terms() {
            if offset.height() <= window {
                out.insert_add(offset.clone(), coeff);
            }
        }
        out
    }

    #[test]
    fn monomial_rule_matches_series_expansion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for datum in [a1(), a2(), affine_a1()] {
            let rank = datum.rank();
            for _ in 0..60 {
                let base =
                    BaseCoweight::new((0..rank).map(|_| rng.gen_range(-3..=3)).collect());
                let offset = CorootVector((0..rank).map(|_| rng.gen_range(-2..=2)).collect());
                let f = AlgebraElement::monomial(
                    base,
                    offset,
                    VPoly::monomial(rng.gen_range(1..=3), rng.gen_range(0..=2)),
                );
                for i in 0..rank {
                    let direct = f.apply_t_i(&datum, i);
                    let window = direct
                        .terms()
                        .keys()
                        .map(|o| o.height())
                        .max()
                        .unwrap_or(0)
                        + 2;
                    let series = series_route(&datum, i, &f, window);
                    assert_eq!(truncate(&direct, window), series);
                }
            }
        }
    }

    #[test]
    fn quadratic_relation_on_samples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for datum in [a1(), a2(), affine_a1()] {
            let rank = datum.rank();
            for _ in 0..50 {
                let base =
                    BaseCoweight::new((0..rank).map(|_| rng.gen_range(-4..=4)).collect());
                let mut f = AlgebraElement::zero(base);
                for _ in 0..rng.gen_range(1..=5) {
                    let offset =
                        CorootVector((0..rank).map(|_| rng.gen_range(-3..=3)).collect());
                    let coeff = VPoly::from_coeffs(
                        rng.gen_range(0..=1),
                        (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-5..=5)).collect(),
                    );
                    f.insert_add(offset, &coeff);
                }
                for i in 0..rank {
                    assert!(hecke_quadratic_check(&datum, i, &f));
                }
            }
        }
    }

    #[test]
    fn word_independence_for_braid_pair() {
        let datum = a2();
        let f = unit_for(&datum, vec![1, 1]);
        let left = f.apply_t_word(&datum, &[0, 1, 0]).unwrap();
        let right = f.apply_t_word(&datum, &[1, 0, 1]).unwrap();
        assert_eq!(left, right);
        assert_eq!(f.apply_t_word(&datum, &[]).unwrap(), f);
        assert_eq!(
            f.apply_t_word(&datum, &[0, 0]).unwrap_err(),
            Error::NonReducedWord
        );
    }

    #[test]
    fn rank_one_word_step() {
        let datum = a1();
        let f = unit_for(&datum, vec![1]);
        let tf = f.apply_t_word(&datum, &[0]).unwrap();
        assert_eq!(
            tf,
            AlgebraElement::monomial(
                BaseCoweight::new(vec![1]),
                CorootVector(vec![1]),
                VPoly::one()
            )
        );
    }

    #[test]
    fn integral_examples() {
        let datum = a1();
        let weyl = WeylGroup::new(&datum);
        let lambda = BaseCoweight::new(vec![2]);
        let id = weyl.identity();
        assert_eq!(
            integral_i(&datum, &id, &lambda).unwrap(),
            AlgebraElement::unit(lambda.clone())
        );
        let s = weyl.generator(0);
        let i_s = integral_i(&datum, &s, &lambda).unwrap();
        let mut expected = AlgebraElement::zero(lambda.clone());
        expected.insert_add(CorootVector(vec![1]), &VPoly::one_minus_v());
        expected.insert_add(CorootVector(vec![2]), &VPoly::one());
        assert_eq!(i_s, expected);

        assert_eq!(
            integral_i(&datum, &s, &BaseCoweight::new(vec![0])).unwrap_err(),
            Error::NotDominantRegular
        );
    }

    #[test]
    fn integral_recursion_along_reduced_words() {
        // I_{w,lambda} = T_{w_i}(I_{w',lambda}) whenever w = w_i w' ascends
        let datum = a2();
        let weyl = WeylGroup::new(&datum);
        let lambda = BaseCoweight::new(vec![2, 1]);
        for w in weyl.ball(3) {
            if w.is_identity() {
                continue;
            }
            let i = w.word()[0];
            let shorter = weyl.apply_generator(&w, i);
            let lhs = integral_i(&datum, &w, &lambda).unwrap();
            let rhs = integral_i(&datum, &shorter, &lambda).unwrap().apply_t_i(&datum, i);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn finite_support_and_dominance_window() {
        let datum = a2();
        let weyl = WeylGroup::new(&datum);
        let lambda = BaseCoweight::new(vec![1, 1]);
        let w0 = weyl.element_from_word(&[0, 1, 0]).unwrap();
        let f = integral_i(&datum, &w0, &lambda).unwrap();
        // support within [w0 lambda, lambda]
        let top = weyl.offset_for_base(w0.word(), &lambda);
        for offset in f.terms().keys() {
            assert!(offset.is_nonneg());
            assert!(top.sub(offset).is_nonneg());
        }
    }

    #[test]
    fn degree_bound_by_length() {
        let datum = affine_a1();
        let weyl = WeylGroup::new(&datum);
        let lambda = BaseCoweight::new(vec![2, 1]);
        for w in weyl.ball(4) {
            let f = integral_i(&datum, &w, &lambda).unwrap();
            for coeff in f.terms().values() {
                assert!(coeff.max_pow() <= w.length() as i64);
                assert!(coeff.min_pow() >= 0);
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let datum = a1();
        let q = Rational::from_integer(2);
        let mut f = AlgebraElement::zero(BaseCoweight::zero(1));
        f.insert_add(CorootVector(vec![1]), &VPoly::one_minus_v());
        let vals = f.evaluate_at(q);
        assert_eq!(vals[&CorootVector(vec![1])], Rational::new(1, 2));

        let g = AlgebraElement::monomial(
            BaseCoweight::zero(1),
            CorootVector::zero(1),
            VPoly::v(),
        );
        assert_eq!(
            g.evaluate_at(Rational::from_integer(3))[&CorootVector(vec![0])],
            Rational::new(1, 3)
        );

        let weyl = WeylGroup::new(&datum);
        let s = weyl.generator(0);
        let i_s = integral_i(&datum, &s, &BaseCoweight::new(vec![2])).unwrap();
        let vals = i_s.evaluate_at(q);
        assert_eq!(vals[&CorootVector(vec![1])], Rational::new(1, 2));
        assert_eq!(vals[&CorootVector(vec![2])], Rational::from_integer(1));
    }

    #[test]
    fn dominance_examples() {
        let base = BaseCoweight::new(vec![1, 1]);
        let lam = Exponent::new(base.clone(), CorootVector::zero(2));
        let mu = Exponent::new(base.clone(), CorootVector(vec![1, 0]));
        assert!(dominance_leq(&mu, &lam).unwrap());
        assert!(dominance_leq(&lam, &lam).unwrap());
        let mixed = Exponent::new(base.clone(), CorootVector(vec![1, -1]));
        assert!(!dominance_leq(&mixed, &lam).unwrap());
        assert!(!dominance_leq(&lam, &mixed).unwrap());
        let other = Exponent::new(BaseCoweight::new(vec![2, 1]), CorootVector::zero(2));
        assert_eq!(dominance_leq(&other, &lam).unwrap_err(), Error::MismatchedBase);
    }
}
