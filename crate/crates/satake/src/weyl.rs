//! Weyl group elements and actions.
//!
//! Elements are keyed by a faithful normal form: the coroot offset `beta(w)`
//! with `w(lambda_ref) = lambda_ref - beta(w)` for the fixed reference
//! coweight with pairing vector `(1, ..., 1)`. The reference coweight is
//! regular, so its stabilizer is trivial and `beta(w)` determines `w`.

use crate::dl_algebra::Exponent;
use crate::error::{Error, Result};
use crate::root_datum::{CorootVector, Gcm, RootDatum, classify};
use crate::vpoly::VPoly;
use serde::{Deserialize, Serialize};

/// A coweight specified by its pairings `n_i = <alpha_i, lambda_vee>` with the
/// simple roots. No realization coordinates are ever needed: every action and
/// depth computation in the crate depends on the pairings alone.
///
/// Equality ignores the optional display name.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct BaseCoweight {
    pub pairings: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

impl PartialEq for BaseCoweight {
    fn eq(&self, other: &Self) -> bool {
        self.pairings == other.pairings
    }
}

impl BaseCoweight {
    pub fn new(pairings: Vec<i64>) -> Self {
        BaseCoweight { pairings, name: None }
    }

    pub fn named(pairings: Vec<i64>, name: impl Into<String>) -> Self {
        BaseCoweight { pairings, name: Some(name.into()) }
    }

    pub fn zero(rank: usize) -> Self {
        BaseCoweight::named(vec![0; rank], "0")
    }

    pub fn rank(&self) -> usize {
        self.pairings.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.pairings.iter().all(|&n| n >= 0)
    }

    pub fn is_regular(&self) -> bool {
        self.pairings.iter().all(|&n| n != 0)
    }

    /// Componentwise sum of pairing vectors (used when rebasing series).
    pub fn add(&self, other: &BaseCoweight) -> BaseCoweight {
        BaseCoweight {
            pairings: self.pairings.iter().zip(&other.pairings).map(|(a, b)| a + b).collect(),
            name: None,
        }
    }
}

type Mat = Vec<Vec<i64>>;

fn identity_mat(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_vec(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// A Weyl group element: a reduced word plus cached data.
#[derive(Debug, Clone, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    beta: CorootVector,
    /// Action of `w` on the coroot basis (columns are images of simple coroots).
    cor: Mat,
    /// Action of `w^{-1}` on the coroot basis.
    cor_inv: Mat,
    /// Action of `w^{-1}` on the root basis.
    root_inv: Mat,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.beta == other.beta
    }
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn beta(&self) -> &CorootVector {
        &self.beta
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(beta_vee)` for a coroot vector.
    pub fn apply_to_coroot(&self, v: &CorootVector) -> CorootVector {
        CorootVector(mat_vec(&self.cor, &v.0))
    }

    /// `w^{-1}(beta_vee)` for a coroot vector.
    pub fn apply_inverse_to_coroot(&self, v: &CorootVector) -> CorootVector {
        CorootVector(mat_vec(&self.cor_inv, &v.0))
    }
}

/// Sign of a vector that is known to be `+-` a positive combination.
fn vector_sign(v: &[i64]) -> i64 {
    let pos = v.iter().any(|&c| c > 0);
    let neg = v.iter().any(|&c| c < 0);
    assert!(!(pos && neg), "mixed-sign image of a real root");
    if pos {
        1
    } else if neg {
        -1
    } else {
        0
    }
}

/// Weyl group machinery for a fixed root datum.
pub struct WeylGroup<'a> {
    datum: &'a RootDatum,
}

impl<'a> WeylGroup<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        WeylGroup { datum }
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.datum.rank();
        WeylElement {
            word: Vec::new(),
            beta: CorootVector::zero(n),
            cor: identity_mat(n),
            cor_inv: identity_mat(n),
            root_inv: identity_mat(n),
        }
    }

    pub fn generator(&self, i: usize) -> WeylElement {
        self.apply_generator(&self.identity(), i)
    }

    /// `true` when `l(w_i w) = l(w) + 1`, i.e. `w^{-1}(alpha_i)` is positive.
    pub fn ascends(&self, w: &WeylElement, i: usize) -> bool {
        let col: Vec<i64> = (0..self.datum.rank()).map(|r| w.root_inv[r][i]).collect();
        vector_sign(&col) > 0
    }

    /// The product `w_i * w`, with length going up or down by one.
    pub fn apply_generator(&self, w: &WeylElement, i: usize) -> WeylElement {
        let ascending = self.ascends(w, i);
        let mut out = w.clone();
        self.left_mul_state(&mut out, i);
        if ascending {
            out.word.insert(0, i);
        } else {
            out.word = self.greedy_reduced_word(&out);
        }
        out
    }

    fn left_mul_state(&self, w: &mut WeylElement, i: usize) {
        let n = self.datum.rank();
        let gcm = self.datum.gcm();
        // beta(w_i w) = beta(w) + (1 - <alpha_i, beta(w)>) e_i
        let pairing = self.datum.pair_root_coroot(i, &w.beta);
        w.beta.0[i] += 1 - pairing;
        // cor <- S_i cor : row i becomes cor[i] - sum_k a_{ki} cor[k]
        let correction: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|k| gcm.entry(k, i) * w.cor[k][j]).sum())
            .collect();
        for j in 0..n {
            w.cor[i][j] -= correction[j];
        }
        // cor_inv <- cor_inv S_i : column j loses a_{ji} * column i
        let col_i: Vec<i64> = (0..n).map(|r| w.cor_inv[r][i]).collect();
        for j in 0..n {
            let a = gcm.entry(j, i);
            if a != 0 {
                for r in 0..n {
                    w.cor_inv[r][j] -= a * col_i[r];
                }
            }
        }
        // root_inv <- root_inv S_i (root-side reflection) : column j loses a_{ij} * column i
        let col_i: Vec<i64> = (0..n).map(|r| w.root_inv[r][i]).collect();
        for j in 0..n {
            let a = gcm.entry(i, j);
            if a != 0 {
                for r in 0..n {
                    w.root_inv[r][j] -= a * col_i[r];
                }
            }
        }
    }

    /// Rebuilds a reduced word by greedy descent to the identity.
    fn greedy_reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut state = w.clone();
        let mut word = Vec::new();
        while !state.beta.is_zero() {
            let i = (0..self.datum.rank())
                .find(|&i| !self.ascends(&state, i))
                .expect("non-identity element has a descent");
            word.push(i);
            self.left_mul_state(&mut state, i);
        }
        word
    }

    /// Builds the product of the word letters, failing if any step descends.
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in word.iter().rev() {
            if i >= self.datum.rank() {
                return Err(Error::ParseError(format!("generator index {i} out of range")));
            }
            if !self.ascends(&w, i) {
                return Err(Error::NonReducedWord);
            }
            w = self.apply_generator(&w, i);
        }
        Ok(w)
    }

    /// All elements of length at most `bound`, deduplicated by normal form.
    pub fn ball(&self, bound: usize) -> Vec<WeylElement> {
        self.ball_with_generators(bound, &(0..self.datum.rank()).collect::<Vec<_>>())
    }

    fn ball_with_generators(&self, bound: usize, gens: &[usize]) -> Vec<WeylElement> {
        use std::collections::BTreeMap;
        let mut seen: BTreeMap<CorootVector, usize> = BTreeMap::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity().beta, 0);
        let mut frontier = vec![self.identity()];
        for len in 1..=bound {
            let mut next = Vec::new();
            for w in &frontier {
                for &i in gens {
                    if self.ascends(w, i) {
                        let u = self.apply_generator(w, i);
                        match seen.get(u.beta()) {
                            Some(&l) => assert_eq!(l, len, "normal-form collision across lengths"),
                            None => {
                                seen.insert(u.beta().clone(), len);
                                next.push(u.clone());
                                out.push(u);
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out.sort_by(|a, b| (a.length(), a.beta()).cmp(&(b.length(), b.beta())));
        out
    }

    /// The whole group, for finite type.
    pub fn full_group(&self) -> Result<Vec<WeylElement>> {
        if !self.datum.is_finite_type() {
            return Err(Error::NotFiniteType);
        }
        Ok(self.ball(usize::MAX - 1))
    }

    /// Image of an exponent: `w(base - offset) = base - (beta(w; base) + w(offset))`.
    pub fn act_on_exponent(&self, w: &WeylElement, e: &Exponent) -> Exponent {
        let beta_base = self.offset_for_base(&w.word, &e.base);
        let moved = w.apply_to_coroot(&e.offset);
        Exponent { base: e.base.clone(), offset: beta_base.add(&moved) }
    }

    /// `beta(w; base)` with `w(base) = base - beta(w; base)`, accumulated one
    /// simple reflection at a time from the base's pairing vector.
    pub fn offset_for_base(&self, word: &[usize], base: &BaseCoweight) -> CorootVector {
        let mut offset = CorootVector::zero(self.datum.rank());
        for &i in word.iter().rev() {
            let n = base.pairings[i] - self.datum.pair_root_coroot(i, &offset);
            offset.0[i] += n;
        }
        offset
    }

    /// Poincare polynomial `sum_{sigma in W_lambda} v^{l(sigma)}` of the
    /// stabilizer parabolic of a coweight, in `v = q^{-1}`.
    pub fn stabilizer_poincare(&self, base: &BaseCoweight) -> Result<VPoly> {
        let gens: Vec<usize> =
            (0..self.datum.rank()).filter(|&i| base.pairings[i] == 0).collect();
        if gens.is_empty() {
            return Ok(VPoly::one());
        }
        let sub_entries: Vec<Vec<i64>> = gens
            .iter()
            .map(|&i| gens.iter().map(|&j| self.datum.gcm().entry(i, j)).collect())
            .collect();
        let sub = Gcm::new(sub_entries).expect("principal submatrix of a GCM is a GCM");
        if !classify(&sub).is_finite_type() {
            return Err(Error::InfiniteStabilizer);
        }
        let elements = self.ball_with_generators(usize::MAX - 1, &gens);
        let mut poly = VPoly::zero();
        for w in &elements {
            poly = &poly + &VPoly::monomial(1, w.length() as i64);
        }
        Ok(poly)
    }

    /// The candidate set of Iwahori-contributing elements for an offset
    /// `mu_offset = lambda - mu` in the positive coroot cone: all `w` with
    /// `l(w) <= 2 <rho, lambda - mu>`.
    pub fn omega_filter(
        &self,
        _lambda: &BaseCoweight,
        mu_offset: &CorootVector,
    ) -> Result<Vec<WeylElement>> {
        if !mu_offset.is_nonneg() {
            return Err(Error::OffsetNotDominatedBy);
        }
        Ok(self.ball(2 * mu_offset.height() as usize))
    }

    /// Every reduced word of `w`, by recursive descent.
    pub fn reduced_words(&self, w: &WeylElement) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.datum.rank() {
            if !self.ascends(w, i) {
                let shorter = self.apply_generator(w, i);
                for mut tail in self.reduced_words(&shorter) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }
}
