//! Brute-force ground truth: SL2 over the Laurent-series field `F_q((t))`.
//!
//! The field is modeled by truncated Laurent series with exact coefficients.
//! The compact subgroup is `K = SL2(F_q[[t]])`, the torus element attached to
//! `m alpha_vee` is `diag(t^m, t^-m)`, `U+` is upper unipotent and `U-` lower.
//!
//! The Iwasawa class of `g` (the unique `m` with `g` in `K pi^m U+`) is read
//! off as the minimum valuation of the first column. That shortcut is
//! certified, before any census runs, by a randomized validator that produces
//! explicit witnesses `g = k pi^m u` and multiplies them back.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Mutex;

fn check_q(q: u32) -> Result<()> {
    if q == 2 || q == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedResidueField(q))
    }
}

fn inv_mod(a: u32, q: u32) -> u32 {
    assert!(a % q != 0, "zero has no inverse");
    // q is 2 or 3, so a^(q-2) works and is tiny
    let mut acc = 1u32;
    for _ in 0..q.saturating_sub(2) {
        acc = acc * a % q;
    }
    acc.max(1) % q
}

/// A Laurent series known exactly on exponents below `cut`.
///
/// `coeffs[k]` is the coefficient of `t^(lo + k)`; exponents below `lo` and
/// between the stored window and `cut` are exactly zero. Operations that
/// would need coefficients at exponents `>= cut` simply lose them, with the
/// resulting element's `cut` adjusted accordingly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLaurent {
    q: u32,
    lo: i64,
    cut: i64,
    coeffs: Vec<u32>,
}

impl TruncatedLaurent {
    pub fn zero(q: u32, cut: i64) -> Self {
        TruncatedLaurent { q, lo: cut, cut, coeffs: Vec::new() }
    }

    pub fn from_terms(q: u32, terms: &[(i64, i64)], cut: i64) -> Self {
        let mut out = TruncatedLaurent::zero(q, cut);
        for &(exp, c) in terms {
            assert!(exp < cut, "term beyond the precision cut");
            out = out.add(&TruncatedLaurent {
                q,
                lo: exp,
                cut,
                coeffs: vec![(c.rem_euclid(q as i64)) as u32],
            });
        }
        out
    }

    pub fn one(q: u32, cut: i64) -> Self {
        TruncatedLaurent::from_terms(q, &[(0, 1)], cut)
    }

    pub fn t_power(q: u32, n: i64, cut: i64) -> Self {
        TruncatedLaurent::from_terms(q, &[(n, 1)], cut)
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = self.cut;
        }
        self
    }

    pub fn cut(&self) -> i64 {
        self.cut
    }

    /// Valuation, when a nonzero coefficient is visible in the window.
    pub fn val(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    pub fn is_zero_in_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_at(&self, exp: i64) -> Result<u32> {
        if exp >= self.cut {
            return Err(Error::InsufficientPrecision);
        }
        if exp < self.lo || exp >= self.lo + self.coeffs.len() as i64 {
            Ok(0)
        } else {
            Ok(self.coeffs[(exp - self.lo) as usize])
        }
    }

    /// Integrality (valuation `>= 0`), when the window can certify it.
    pub fn is_integral(&self) -> Result<bool> {
        match self.val() {
            Some(v) => Ok(v >= 0),
            None => {
                if self.cut >= 0 {
                    Ok(true)
                } else {
                    Err(Error::InsufficientPrecision)
                }
            }
        }
    }

    pub fn add(&self, other: &TruncatedLaurent) -> TruncatedLaurent {
        assert_eq!(self.q, other.q);
        let cut = self.cut.min(other.cut);
        let lo = self.lo.min(other.lo).min(cut);
        let len = (cut - lo).max(0) as usize;
        let mut coeffs = vec![0u32; len];
        for (src_lo, src) in [(self.lo, &self.coeffs), (other.lo, &other.coeffs)] {
            for (k, &c) in src.iter().enumerate() {
                let exp = src_lo + k as i64;
                if exp < cut {
                    let idx = (exp - lo) as usize;
                    coeffs[idx] = (coeffs[idx] + c) % self.q;
                }
            }
        }
        TruncatedLaurent { q: self.q, lo, cut, coeffs }.normalized()
    }

    pub fn neg(&self) -> TruncatedLaurent {
        let coeffs = self.coeffs.iter().map(|&c| (self.q - c) % self.q).collect();
        TruncatedLaurent { q: self.q, lo: self.lo, cut: self.cut, coeffs }.normalized()
    }

    pub fn sub(&self, other: &TruncatedLaurent) -> TruncatedLaurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncatedLaurent) -> TruncatedLaurent {
        assert_eq!(self.q, other.q);
        // contributions to exponent e exist for all splits i + j = e with
        // i >= self.lo, j >= other.lo; e is exact iff every split is known
        let cut = (self.lo + other.cut).min(other.lo + self.cut);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TruncatedLaurent::zero(self.q, cut);
        }
        let lo = self.lo + other.lo;
        let len = (cut - lo).max(0) as usize;
        let mut coeffs = vec![0u32; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let exp = self.lo + i as i64 + other.lo + j as i64;
                if exp < cut {
                    let idx = (exp - lo) as usize;
                    coeffs[idx] = (coeffs[idx] + a * b) % self.q;
                }
            }
        }
        TruncatedLaurent { q: self.q, lo, cut, coeffs }.normalized()
    }

    pub fn mul_t_power(&self, n: i64) -> TruncatedLaurent {
        TruncatedLaurent {
            q: self.q,
            lo: self.lo + n,
            cut: self.cut + n,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Inverse of a unit (valuation zero), to the same precision cut.
    pub fn inverse(&self) -> Result<TruncatedLaurent> {
        if self.val() != Some(0) {
            return Err(Error::InsufficientPrecision);
        }
        let len = self.cut.max(0) as usize;
        let c0_inv = inv_mod(self.coeffs[0], self.q);
        let mut out = vec![0u32; len.max(1)];
        out[0] = c0_inv;
        for k in 1..len {
            let mut acc = 0u32;
            for j in 1..=k {
                let a = self.coeff_at(j as i64).unwrap_or(0);
                acc = (acc + a * out[k - j]) % self.q;
            }
            out[k] = (self.q - acc % self.q) % self.q * c0_inv % self.q;
        }
        Ok(TruncatedLaurent { q: self.q, lo: 0, cut: self.cut, coeffs: out }.normalized())
    }

    /// Coefficient-wise equality on the common known window.
    pub fn eq_within(&self, other: &TruncatedLaurent) -> bool {
        let cut = self.cut.min(other.cut);
        let lo = self.lo.min(other.lo);
        (lo..cut).all(|e| self.coeff_at(e).unwrap_or(0) == other.coeff_at(e).unwrap_or(0))
    }
}

/// A 2x2 matrix over the truncated Laurent field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub e: [[TruncatedLaurent; 2]; 2],
}

impl LaurentMatrix {
    pub fn identity(q: u32, cut: i64) -> Self {
        LaurentMatrix {
            e: [
                [TruncatedLaurent::one(q, cut), TruncatedLaurent::zero(q, cut)],
                [TruncatedLaurent::zero(q, cut), TruncatedLaurent::one(q, cut)],
            ],
        }
    }

    /// `pi^(m alpha_vee) = diag(t^m, t^-m)`.
    pub fn pi_power(q: u32, m: i64, cut: i64) -> Self {
        LaurentMatrix {
            e: [
                [TruncatedLaurent::t_power(q, m, cut), TruncatedLaurent::zero(q, cut)],
                [TruncatedLaurent::zero(q, cut), TruncatedLaurent::t_power(q, -m, cut)],
            ],
        }
    }

    pub fn u_plus(x: &TruncatedLaurent) -> Self {
        let (q, cut) = (x.q, x.cut);
        LaurentMatrix {
            e: [
                [TruncatedLaurent::one(q, cut), x.clone()],
                [TruncatedLaurent::zero(q, cut), TruncatedLaurent::one(q, cut)],
            ],
        }
    }

    pub fn u_minus(x: &TruncatedLaurent) -> Self {
        let (q, cut) = (x.q, x.cut);
        LaurentMatrix {
            e: [
                [TruncatedLaurent::one(q, cut), TruncatedLaurent::zero(q, cut)],
                [x.clone(), TruncatedLaurent::one(q, cut)],
            ],
        }
    }

    /// The standard Weyl representative `[[0, -1], [1, 0]]`.
    pub fn weyl(q: u32, cut: i64) -> Self {
        LaurentMatrix {
            e: [
                [TruncatedLaurent::zero(q, cut), TruncatedLaurent::one(q, cut).neg()],
                [TruncatedLaurent::one(q, cut), TruncatedLaurent::zero(q, cut)],
            ],
        }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let entry = |r: usize, c: usize| {
            self.e[r][0].mul(&other.e[0][c]).add(&self.e[r][1].mul(&other.e[1][c]))
        };
        LaurentMatrix { e: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] }
    }

    pub fn det(&self) -> TruncatedLaurent {
        self.e[0][0].mul(&self.e[1][1]).sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse_det_one(&self) -> LaurentMatrix {
        LaurentMatrix {
            e: [
                [self.e[1][1].clone(), self.e[0][1].neg()],
                [self.e[1][0].neg(), self.e[0][0].clone()],
            ],
        }
    }

    pub fn is_integral(&self) -> Result<bool> {
        for row in &self.e {
            for entry in row {
                if !entry.is_integral()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn eq_within(&self, other: &LaurentMatrix) -> bool {
        (0..2).all(|r| (0..2).all(|c| self.e[r][c].eq_within(&other.e[r][c])))
    }
}

/// The unique `m` with `g` in `K pi^(m alpha_vee) U+`: the minimum valuation
/// of the first column. Left multiplication by `K` preserves the column's
/// lattice filtration and right multiplication by `U+` fixes the column.
pub fn iwasawa_class(g: &LaurentMatrix) -> Result<i64> {
    let a = &g.e[0][0];
    let c = &g.e[1][0];
    match (a.val(), c.val()) {
        (Some(va), Some(vc)) => Ok(va.min(vc)),
        (Some(va), None) => {
            if va <= c.cut() {
                Ok(va)
            } else {
                Err(Error::InsufficientPrecision)
            }
        }
        (None, Some(vc)) => {
            if vc <= a.cut() {
                Ok(vc)
            } else {
                Err(Error::InsufficientPrecision)
            }
        }
        (None, None) => Err(Error::InsufficientPrecision),
    }
}

/// Explicit Iwasawa witnesses: `g = k . pi^(m alpha_vee) . u_plus(x)` with
/// `k` integral of determinant one.
pub fn iwasawa_decompose(g: &LaurentMatrix) -> Result<(LaurentMatrix, i64, TruncatedLaurent)> {
    let m = iwasawa_class(g)?;
    let w1 = g.e[0][0].mul_t_power(-m);
    let w2 = g.e[1][0].mul_t_power(-m);
    let q = w1.q;
    let cut = w1.cut.min(w2.cut);
    let zero = TruncatedLaurent::zero(q, cut);
    let k = if w1.val() == Some(0) {
        let inv = w1.inverse()?;
        LaurentMatrix { e: [[w1, zero], [w2, inv]] }
    } else {
        let inv = w2.inverse()?;
        LaurentMatrix { e: [[w1, inv.neg()], [w2, zero]] }
    };
    let h = k.inverse_det_one().mul(g);
    let x = h.e[0][1].mul_t_power(-m);
    Ok((k, m, x))
}

fn validate_decomposition(g: &LaurentMatrix) -> Result<()> {
    let (k, m, x) = iwasawa_decompose(g)?;
    if !k.is_integral()? {
        return Err(Error::CheckFailure("Iwasawa witness k is not integral".into()));
    }
    let q = x.q;
    let cut = x.cut + 2 * m.abs() + 2;
    if !k.det().eq_within(&TruncatedLaurent::one(q, cut)) {
        return Err(Error::CheckFailure("Iwasawa witness k has determinant != 1".into()));
    }
    let rebuilt = k.mul(&LaurentMatrix::pi_power(q, m, cut)).mul(&LaurentMatrix::u_plus(&x));
    if !rebuilt.eq_within(g) {
        return Err(Error::CheckFailure("Iwasawa witnesses do not multiply back to g".into()));
    }
    Ok(())
}

/// Randomized certification of the valuation rule: random determinant-one
/// words are decomposed and the witnesses multiplied back.
pub fn validate_iwasawa_rule(q: u32, trials: u32, seed: u64) -> Result<()> {
    check_q(q)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let cut = 32i64;
    for _ in 0..trials {
        let mut g = LaurentMatrix::identity(q, cut);
        for _ in 0..rng.gen_range(1..=6) {
            let factor = match rng.gen_range(0..4) {
                0 => {
                    let x = random_series(&mut rng, q, cut);
                    LaurentMatrix::u_plus(&x)
                }
                1 => {
                    let x = random_series(&mut rng, q, cut);
                    LaurentMatrix::u_minus(&x)
                }
                2 => LaurentMatrix::pi_power(q, rng.gen_range(-2..=2), cut),
                _ => LaurentMatrix::weyl(q, cut),
            };
            g = g.mul(&factor);
        }
        validate_decomposition(&g)?;
    }
    Ok(())
}

fn random_series(rng: &mut impl Rng, q: u32, cut: i64) -> TruncatedLaurent {
    let terms: Vec<(i64, i64)> =
        (-2..=2).map(|e| (e, rng.gen_range(0..q as i64))).collect();
    TruncatedLaurent::from_terms(q, &terms, cut)
}

static CERTIFIED: Mutex<Vec<u32>> = Mutex::new(Vec::new());

fn ensure_certified(q: u32) -> Result<()> {
    {
        let done = CERTIFIED.lock().unwrap();
        if done.contains(&q) {
            return Ok(());
        }
    }
    validate_iwasawa_rule(q, 100, 0x5a7a)?;
    CERTIFIED.lock().unwrap().push(q);
    Ok(())
}

/// Per-class cardinalities of a coset enumeration, keyed by the integer `m`
/// labelling `mu_vee = m alpha_vee`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCensus {
    pub q: u32,
    pub lambda: i64,
    pub precision: i64,
    pub census: BTreeMap<i64, u64>,
    pub total: u64,
}

impl CosetCensus {
    fn from_counts(q: u32, lambda: i64, precision: i64, census: BTreeMap<i64, u64>) -> Self {
        let total = census.values().sum();
        CosetCensus { q, lambda, precision, census, total }
    }

    /// JSON with census keys in descending `mu_vee` order.
    pub fn to_json(&self) -> Value {
        let mut census = serde_json::Map::new();
        for (m, count) in self.census.iter().rev() {
            census.insert(m.to_string(), json!(count));
        }
        json!({
            "q": self.q,
            "lambda": self.lambda,
            "precision": self.precision,
            "census": Value::Object(census),
            "total": self.total,
        })
    }
}

fn all_coefficient_vectors(q: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * q as usize);
        for prefix in &out {
            for c in 0..q {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Right-coset representatives of `K \ K pi^(lambda alpha_vee) K`.
///
/// Cosets `K pi^lambda k` biject with `H \ K` for the congruence-type
/// subgroup `H = { k in K : k_21 = 0 mod t^(2 lambda) }`, and `H \ K` is the
/// projective line over `F_q[t] / t^(2 lambda)`: second rows `(c, 1)` with
/// `c` arbitrary, or `(1, d)` with `d` in `t F_q[t]`.
fn spherical_representatives(q: u32, lambda: i64, cut: i64) -> Vec<LaurentMatrix> {
    let level = (2 * lambda) as usize;
    let mut reps = Vec::new();
    for coeffs in all_coefficient_vectors(q, level) {
        let terms: Vec<(i64, i64)> =
            coeffs.iter().enumerate().map(|(k, &c)| (k as i64, c as i64)).collect();
        let c = TruncatedLaurent::from_terms(q, &terms, cut);
        reps.push(LaurentMatrix::u_minus(&c));
    }
    for coeffs in all_coefficient_vectors(q, level.saturating_sub(1)) {
        let terms: Vec<(i64, i64)> =
            coeffs.iter().enumerate().map(|(k, &c)| (k as i64 + 1, c as i64)).collect();
        let d = TruncatedLaurent::from_terms(q, &terms, cut);
        // second row (1, d) completed to [[0, -1], [1, d]]
        let w = LaurentMatrix::weyl(q, cut);
        reps.push(w.mul(&LaurentMatrix::u_plus(&d)));
    }
    reps
}

/// Census of `K \ K pi^(mu) U+  intersect  K pi^(lambda) K` over all `mu`.
pub fn spherical_census(lambda: i64, precision: i64, q: u32) -> Result<CosetCensus> {
    check_q(q)?;
    if lambda < 0 {
        return Err(Error::ParseError("lambda must be non-negative".into()));
    }
    let needed = 2 * lambda + 1;
    if precision < needed {
        return Err(Error::PrecisionTooLow { given: precision, needed });
    }
    ensure_certified(q)?;
    let mut census: BTreeMap<i64, u64> = BTreeMap::new();
    if lambda == 0 {
        census.insert(0, 1);
        return Ok(CosetCensus::from_counts(q, lambda, precision, census));
    }
    let pi = LaurentMatrix::pi_power(q, lambda, precision);
    for k in spherical_representatives(q, lambda, precision) {
        let g = pi.mul(&k);
        let m = iwasawa_class(&g)?;
        *census.entry(m).or_insert(0) += 1;
    }
    for &m in census.keys() {
        assert!(m <= lambda, "census entry above lambda contradicts dominance");
    }
    Ok(CosetCensus::from_counts(q, lambda, precision, census))
}

/// Census of `K \ K U-  intersect  K pi^(-k alpha_vee) U+` for `k <= k_max`,
/// enumerated over principal parts in `t^-1 F_q[t^-1]` of degree `<= k_max`.
pub fn gk_census(k_max: i64, precision: i64, q: u32) -> Result<CosetCensus> {
    check_q(q)?;
    if k_max < 1 {
        return Err(Error::ParseError("k_max must be at least 1".into()));
    }
    let needed = k_max + 1;
    if precision < needed {
        return Err(Error::PrecisionTooLow { given: precision, needed });
    }
    ensure_certified(q)?;
    let mut census: BTreeMap<i64, u64> = BTreeMap::new();
    for coeffs in all_coefficient_vectors(q, k_max as usize) {
        let terms: Vec<(i64, i64)> =
            coeffs.iter().enumerate().map(|(j, &c)| (-(j as i64) - 1, c as i64)).collect();
        let x = TruncatedLaurent::from_terms(q, &terms, precision);
        let m = iwasawa_class(&LaurentMatrix::u_minus(&x))?;
        *census.entry(m).or_insert(0) += 1;
    }
    Ok(CosetCensus::from_counts(q, 0, precision, census))
}

/// Spherical census refined by Iwahori class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwahoriCensus {
    pub q: u32,
    pub lambda: i64,
    pub precision: i64,
    pub per_w: BTreeMap<String, CosetCensus>,
    pub sums_match_spherical: bool,
    pub omega_bound_respected: bool,
}

impl IwahoriCensus {
    pub fn to_json(&self) -> Value {
        let mut per_w = serde_json::Map::new();
        for (label, census) in &self.per_w {
            per_w.insert(label.clone(), census.to_json());
        }
        json!({
            "q": self.q,
            "lambda": self.lambda,
            "precision": self.precision,
            "per_w": Value::Object(per_w),
            "sums_match_spherical": self.sums_match_spherical,
            "omega_bound_respected": self.omega_bound_respected,
        })
    }
}

/// Refines the spherical census by the Iwahori cell of each representative:
/// the Bruhat cell of the reduced Iwasawa witness `k0` over the residue
/// field, read from its upper-left entry mod `t`.
pub fn iwahori_census(lambda: i64, precision: i64, q: u32) -> Result<IwahoriCensus> {
    check_q(q)?;
    if lambda < 0 {
        return Err(Error::ParseError("lambda must be non-negative".into()));
    }
    let needed = 2 * lambda + 1;
    if precision < needed {
        return Err(Error::PrecisionTooLow { given: precision, needed });
    }
    ensure_certified(q)?;
    let mut tallies: BTreeMap<String, BTreeMap<i64, u64>> = BTreeMap::new();
    if lambda == 0 {
        tallies.entry("1".into()).or_default().insert(0, 1);
    } else {
        let pi = LaurentMatrix::pi_power(q, lambda, precision);
        for k in spherical_representatives(q, lambda, precision) {
            let g = pi.mul(&k);
            let (k0, m, _) = iwasawa_decompose(&g)?;
            let label = if k0.e[0][0].coeff_at(0)? != 0 { "1" } else { "w0" };
            *tallies.entry(label.into()).or_default().entry(m).or_insert(0) += 1;
        }
    }
    let per_w: BTreeMap<String, CosetCensus> = tallies
        .into_iter()
        .map(|(label, census)| {
            (label, CosetCensus::from_counts(q, lambda, precision, census))
        })
        .collect();

    let spherical = spherical_census(lambda, precision, q)?;
    let mut sums: BTreeMap<i64, u64> = BTreeMap::new();
    for census in per_w.values() {
        for (&m, &count) in &census.census {
            *sums.entry(m).or_insert(0) += count;
        }
    }
    let sums_match_spherical = sums == spherical.census;

    let mut omega_bound_respected = true;
    for (label, census) in &per_w {
        let length: i64 = if label == "1" { 0 } else { 1 };
        for &m in census.census.keys() {
            if length > 2 * (lambda - m) {
                omega_bound_respected = false;
            }
        }
    }

    Ok(IwahoriCensus { q, lambda, precision, per_w, sums_match_spherical, omega_bound_respected })
}
