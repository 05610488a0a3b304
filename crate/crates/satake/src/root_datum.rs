//! Generalized Cartan matrices, their classification, and root/coroot tables.
//!
//! The pairing convention throughout the crate follows the realization rule
//! `alpha_j(alpha_i_vee) = a_ij`, so `<alpha_i, beta_vee> = sum_j a_ji k_j`
//! for a coroot vector `beta_vee = sum_j k_j alpha_j_vee`.

use crate::error::{Error, Result};
use crate::vpoly::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
    labels: Vec<String>,
}

impl Gcm {
    /// Validates the defining conditions: `a_ii = 2`, `a_ij <= 0` off the
    /// diagonal, and `a_ij = 0` iff `a_ji = 0`.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::DiagonalNotTwo(i));
            }
            for j in 0..n {
                if i != j {
                    if entries[i][j] > 0 {
                        return Err(Error::PositiveOffDiagonal(i, j));
                    }
                    if entries[i][j] == 0 && entries[j][i] != 0 {
                        return Err(Error::AsymmetricZero(i, j));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        Ok(Gcm { entries, labels })
    }

    pub fn with_labels(entries: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        let mut gcm = Gcm::new(entries)?;
        if labels.len() != gcm.size() {
            return Err(Error::ParseError("label count does not match matrix size".into()));
        }
        gcm.labels = labels;
        Ok(gcm)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn transpose(&self) -> Gcm {
        let n = self.size();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect();
        Gcm { entries, labels: self.labels.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    Finite,
    Affine,
    Indefinite,
}

/// One indecomposable component of a GCM together with its type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub indices: Vec<usize>,
    pub kind: BlockKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub blocks: Vec<Block>,
}

impl Classification {
    pub fn is_finite_type(&self) -> bool {
        self.blocks.iter().all(|b| b.kind == BlockKind::Finite)
    }
}

/// Exact determinant by fraction-free Gaussian elimination.
fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn principal_minor(gcm: &Gcm, indices: &[usize]) -> i128 {
    let sub: Vec<Vec<i128>> = indices
        .iter()
        .map(|&i| indices.iter().map(|&j| gcm.entry(i, j) as i128).collect())
        .collect();
    det_i128(sub)
}

/// Splits the index set into connected components of the graph `i ~ j` for
/// `a_ij != 0` and classifies each component by exact principal minors.
pub fn classify(gcm: &Gcm) -> Classification {
    let n = gcm.size();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && gcm.entry(i, j) != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        let kind = classify_block(gcm, &comp);
        blocks.push(Block { indices: comp, kind });
    }
    blocks.sort_by_key(|b| b.indices[0]);
    Classification { blocks }
}

fn classify_block(gcm: &Gcm, comp: &[usize]) -> BlockKind {
    let k = comp.len();
    let leading_positive =
        (1..=k).all(|m| principal_minor(gcm, &comp[..m]) > 0);
    if leading_positive {
        return BlockKind::Finite;
    }
    if principal_minor(gcm, comp) == 0 {
        // Affine needs every proper principal minor positive.
        let mut proper_positive = true;
        'subsets: for mask in 1u64..(1 << k) - 1 {
            let subset: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| comp[b]).collect();
            if principal_minor(gcm, &subset) <= 0 {
                proper_positive = false;
                break 'subsets;
            }
        }
        if proper_positive {
            return BlockKind::Affine;
        }
    }
    BlockKind::Indefinite
}

/// An integer vector over a simple-coroot (or, for a transposed datum,
/// simple-root) basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorootVector(pub Vec<i64>);

impl CorootVector {
    pub fn zero(rank: usize) -> Self {
        CorootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        CorootVector(v)
    }

    /// Sum of coefficients; equals `<rho, .>` on the coroot side.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CorootVector) -> CorootVector {
        CorootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CorootVector) -> CorootVector {
        CorootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> CorootVector {
        CorootVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CorootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTableRow {
    pub root: CorootVector,
    pub mult: i64,
    pub real: bool,
}

/// Positive roots up to a height bound, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    pub rows: Vec<RootTableRow>,
    pub height_bound: i64,
    by_vector: BTreeMap<CorootVector, usize>,
}

impl RootTable {
    fn from_rows(mut rows: Vec<RootTableRow>, height_bound: i64) -> Self {
        rows.sort_by(|a, b| (a.root.height(), &a.root).cmp(&(b.root.height(), &b.root)));
        let by_vector = rows.iter().enumerate().map(|(i, r)| (r.root.clone(), i)).collect();
        RootTable { rows, height_bound, by_vector }
    }

    pub fn get(&self, root: &CorootVector) -> Option<&RootTableRow> {
        self.by_vector.get(root).map(|&i| &self.rows[i])
    }

    pub fn contains(&self, root: &CorootVector) -> bool {
        self.by_vector.contains_key(root)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// A validated GCM together with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    gcm: Gcm,
    classification: Classification,
}

impl RootDatum {
    pub fn new(gcm: Gcm) -> Self {
        let classification = classify(&gcm);
        RootDatum { gcm, classification }
    }

    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self> {
        Ok(RootDatum::new(Gcm::new(entries)?))
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn rank(&self) -> usize {
        self.gcm.size()
    }

    pub fn is_finite_type(&self) -> bool {
        self.classification.is_finite_type()
    }

    /// `<alpha_i, beta_vee>` for a coroot vector.
    pub fn pair_root_coroot(&self, i: usize, beta: &CorootVector) -> i64 {
        (0..self.rank()).map(|j| self.gcm.entry(j, i) * beta.0[j]).sum()
    }

    /// The datum of the transpose matrix; its roots are this datum's coroots.
    pub fn transpose(&self) -> RootDatum {
        RootDatum::new(self.gcm.transpose())
    }

    /// Simple-reflection action on the root side: `s_i(r) = r - (A r)_i e_i`.
    pub fn reflect_root(&self, i: usize, r: &CorootVector) -> CorootVector {
        let pairing: i64 = (0..self.rank()).map(|j| self.gcm.entry(i, j) * r.0[j]).sum();
        let mut out = r.clone();
        out.0[i] -= pairing;
        out
    }

    /// All positive roots of height at most `h`, with multiplicities.
    ///
    /// Real roots come from the reflection closure of the simple roots.
    /// Imaginary-root multiplicities are produced by the Peterson recursion,
    /// which requires the block to be symmetrizable.
    pub fn root_table(&self, h: i64) -> Result<RootTable> {
        if h < 1 {
            return Err(Error::HeightBoundTooSmall);
        }
        let mut rows: Vec<RootTableRow> = Vec::new();
        for block in &self.classification.blocks {
            let block_rows = self.block_root_rows(block, h)?;
            rows.extend(block_rows);
        }
        Ok(RootTable::from_rows(rows, h))
    }

    /// Positive coroots of height at most `h`: the root table of the transpose.
    pub fn coroot_table(&self, h: i64) -> Result<RootTable> {
        self.transpose().root_table(h)
    }

    fn block_root_rows(&self, block: &Block, h: i64) -> Result<Vec<RootTableRow>> {
        let rank = self.rank();
        let embed = |local: &[i64]| {
            let mut full = vec![0i64; rank];
            for (pos, &idx) in block.indices.iter().enumerate() {
                full[idx] = local[pos];
            }
            CorootVector(full)
        };
        let sub = self.sub_gcm(&block.indices);
        if block.kind == BlockKind::Finite {
            let reals = real_root_closure(&sub, h);
            return Ok(reals
                .into_iter()
                .map(|r| RootTableRow { root: embed(&r), mult: 1, real: true })
                .collect());
        }
        let mults = peterson_multiplicities(&sub, h)?;
        let sym = symmetrizer(&sub).expect("symmetrizer exists when Peterson succeeded");
        let mut rows = Vec::new();
        for (root, mult) in mults {
            let norm = bilinear(&sub, &sym, &root, &root);
            rows.push(RootTableRow { root: embed(&root), mult, real: norm > Rational::zero() });
        }
        Ok(rows)
    }

    fn sub_gcm(&self, indices: &[usize]) -> Gcm {
        let entries = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.gcm.entry(i, j)).collect())
            .collect();
        Gcm::new(entries).expect("principal submatrix of a GCM is a GCM")
    }
}

/// Reflection closure of the simple roots within the height bound. Every
/// positive real root of height `<= h` is reachable through positive roots of
/// height `<= h` only, so the bounded closure is complete.
fn real_root_closure(gcm: &Gcm, h: i64) -> Vec<Vec<i64>> {
    let rank = gcm.size();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        seen.insert(v.clone());
        frontier.push(v);
    }
    while let Some(r) = frontier.pop() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| gcm.entry(i, j) * r[j]).sum();
            let mut refl = r.clone();
            refl[i] -= pairing;
            if refl.iter().all(|&c| c >= 0)
                && refl.iter().sum::<i64>() <= h
                && !seen.contains(&refl)
            {
                seen.insert(refl.clone());
                frontier.push(refl);
            }
        }
    }
    seen.into_iter().collect()
}

/// Positive rationals `d_i` with `d_i a_ij = d_j a_ji`, when they exist.
fn symmetrizer(gcm: &Gcm) -> Option<Vec<Rational>> {
    let n = gcm.size();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i != j && gcm.entry(i, j) != 0 {
                    let expected = di * Rational::new(gcm.entry(i, j), gcm.entry(j, i));
                    match d[j] {
                        None => {
                            d[j] = Some(expected);
                            stack.push(j);
                        }
                        Some(dj) => {
                            if dj != expected {
                                return None;
                            }
                        }
                    }
                }
            }
        }
    }
    Some(d.into_iter().map(|x| x.unwrap()).collect())
}

fn bilinear(gcm: &Gcm, d: &[Rational], a: &[i64], b: &[i64]) -> Rational {
    let n = gcm.size();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if a[i] != 0 && b[j] != 0 {
                acc += d[i] * Rational::from_integer(gcm.entry(i, j)) * Rational::from_integer(a[i] * b[j]);
            }
        }
    }
    acc
}

fn vectors_of_height(rank: usize, h: i64) -> Vec<Vec<i64>> {
    fn rec(rank: usize, h: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == rank {
            prefix.push(h);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in 0..=h {
            prefix.push(c);
            rec(rank, h - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, h, &mut Vec::new(), &mut out);
    out
}

/// Root multiplicities of a symmetrizable indecomposable GCM up to height `h`
/// by the Peterson recursion. Returns pairs `(root, mult)` with `mult >= 1`.
fn peterson_multiplicities(gcm: &Gcm, h: i64) -> Result<Vec<(Vec<i64>, i64)>> {
    let d = symmetrizer(gcm).ok_or(Error::NotSymmetrizable)?;
    let rank = gcm.size();
    // c[beta] = sum_{n | beta} mult(beta/n) / n
    let mut c: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for height in 1..=h {
        for beta in vectors_of_height(rank, height) {
            if height == 1 {
                c.insert(beta.clone(), Rational::from_integer(1));
                mult.insert(beta, 1);
                continue;
            }
            let mut sum = Rational::zero();
            for beta1 in proper_subvectors(&beta) {
                if let Some(&c1) = c.get(&beta1) {
                    let beta2: Vec<i64> = beta.iter().zip(&beta1).map(|(b, a)| b - a).collect();
                    if let Some(&c2) = c.get(&beta2) {
                        sum += bilinear(gcm, &d, &beta1, &beta2) * c1 * c2;
                    }
                }
            }
            let norm = bilinear(gcm, &d, &beta, &beta);
            let rho_pairing: Rational = beta
                .iter()
                .zip(&d)
                .map(|(&k, &di)| Rational::from_integer(k) * di)
                .sum();
            let denom = norm - Rational::from_integer(2) * rho_pairing;
            let c_beta = if denom.is_zero() {
                assert!(sum.is_zero(), "Peterson recursion denominator vanished at {beta:?}");
                Rational::zero()
            } else {
                sum / denom
            };
            if !c_beta.is_zero() {
                c.insert(beta.clone(), c_beta);
            }
            // mult(beta) = c(beta) - sum_{n >= 2, n | beta} mult(beta/n)/n
            let mut m = c_beta;
            for n in 2..=height {
                if beta.iter().all(|&k| k % n == 0) {
                    let smaller: Vec<i64> = beta.iter().map(|&k| k / n).collect();
                    if let Some(&ms) = mult.get(&smaller) {
                        m -= Rational::new(ms, n);
                    }
                }
            }
            assert!(m.is_integer(), "Peterson multiplicity not integral at {beta:?}");
            let m = m.to_integer();
            assert!(m >= 0, "negative Peterson multiplicity at {beta:?}");
            if m > 0 {
                mult.insert(beta, m);
            }
        }
    }
    Ok(mult.into_iter().collect())
}

fn proper_subvectors(beta: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; beta.len()];
    loop {
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == beta.len() {
                return out;
            }
            if cur[pos] < beta[pos] {
                cur[pos] += 1;
                for c in cur.iter_mut().take(pos) {
                    *c = 0;
                }
                break;
            }
            pos += 1;
        }
        let is_zero = cur.iter().all(|&c| c == 0);
        let is_full = cur == beta;
        if !is_zero && !is_full {
            out.push(cur.clone());
        }
    }
}

/// `true` when the offset lies in the positive coroot cone, i.e. the shifted
/// exponent is dominated by its base.
pub fn offset_in_positive_cone(offset: &CorootVector) -> bool {
    offset.is_nonneg()
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Independent oracle for root multiplicities: the truncated denominator
/// identity. On the window `height <= depth`,
/// `prod_{a > 0} (1 - e^-a)^mult(a)` must equal
/// `sum_w (-1)^l(w) e^(w rho - rho)`, where the sum runs over the finitely
/// many `w` with `height(rho - w rho) <= depth`.
pub fn truncated_denominator_check(datum: &RootDatum, depth: i64) -> Result<bool> {
    use crate::dl_algebra::AlgebraElement;
    use crate::vpoly::VPoly;
    use crate::weyl::{BaseCoweight, WeylGroup};

    let rank = datum.rank();
    let zero = BaseCoweight::zero(rank);

    let table = datum.root_table(depth)?;
    let mut product = AlgebraElement::unit(zero.clone());
    for row in &table.rows {
        let ht = row.root.height();
        let mut factor = AlgebraElement::zero(zero.clone());
        for k in 0..=(depth / ht) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            factor.insert_add(row.root.scale(k), &VPoly::constant(sign * binomial(row.mult, k)));
        }
        product = product.mul(&factor, Some(depth));
    }

    // rho on the root side is the reference coweight of the transposed datum,
    // so beta(w) there is exactly rho - w rho.
    let transposed = datum.transpose();
    let weyl = WeylGroup::new(&transposed);
    let mut sum = AlgebraElement::zero(zero);
    let mut frontier = vec![weyl.identity()];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(weyl.identity().beta().clone());
    sum.insert_add(CorootVector::zero(rank), &VPoly::one());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..rank {
                if weyl.ascends(w, i) {
                    let u = weyl.apply_generator(w, i);
                    if u.beta().height() <= depth && !seen.contains(u.beta()) {
                        seen.insert(u.beta().clone());
                        let sign = if u.length() % 2 == 0 { 1 } else { -1 };
                        sum.insert_add(u.beta().clone(), &VPoly::constant(sign));
                        next.push(u);
                    }
                }
            }
        }
        frontier = next;
    }

    Ok(product == sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a1, a2, affine_a1};

    #[test]
    fn gcm_validation() {
        assert!(Gcm::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert!(Gcm::new(vec![vec![2]]).is_ok());
        assert_eq!(
            Gcm::new(vec![vec![2, -1], vec![0, 2]]).unwrap_err(),
            Error::AsymmetricZero(1, 0)
        );
        assert_eq!(Gcm::new(vec![vec![3]]).unwrap_err(), Error::DiagonalNotTwo(0));
        assert_eq!(
            Gcm::new(vec![vec![2, 1], vec![1, 2]]).unwrap_err(),
            Error::PositiveOffDiagonal(0, 1)
        );
        assert_eq!(Gcm::new(vec![vec![2, -1]]).unwrap_err(), Error::NotSquare);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(a2().classification().blocks[0].kind, BlockKind::Finite);
        assert_eq!(affine_a1().classification().blocks[0].kind, BlockKind::Affine);
        let indefinite = RootDatum::from_entries(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(indefinite.classification().blocks[0].kind, BlockKind::Indefinite);
    }

    #[test]
    fn classification_blockwise() {
        // A2 + affine A1 + A1, interleaved indices
        let m = vec![
            vec![2, 0, -1, 0, 0],
            vec![0, 2, 0, -2, 0],
            vec![-1, 0, 2, 0, 0],
            vec![0, -2, 0, 2, 0],
            vec![0, 0, 0, 0, 2],
        ];
        let datum = RootDatum::from_entries(m).unwrap();
        let kinds: Vec<BlockKind> = datum.classification().blocks.iter().map(|b| b.kind).collect();
        assert_eq!(kinds, vec![BlockKind::Finite, BlockKind::Affine, BlockKind::Finite]);
        assert_eq!(datum.classification().blocks[0].indices, vec![0, 2]);
        assert_eq!(datum.classification().blocks[1].indices, vec![1, 3]);
    }

    #[test]
    fn classification_permutation_invariant() {
        let base = vec![
            vec![2, -1, 0],
            vec![-1, 2, -1],
            vec![0, -1, 2],
        ];
        let perms: [[usize; 3]; 3] = [[0, 1, 2], [2, 0, 1], [1, 2, 0]];
        for perm in perms {
            let m: Vec<Vec<i64>> =
                perm.iter().map(|&i| perm.iter().map(|&j| base[i][j]).collect()).collect();
            let datum = RootDatum::from_entries(m).unwrap();
            assert!(datum.is_finite_type());
        }
    }

    /// Cofactor expansion, as an independent check on the fraction-free
    /// elimination used by `classify`.
    fn det_laplace(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0i128;
        for j in 0..n {
            if m[0][j] == 0 {
                continue;
            }
            let minor: Vec<Vec<i128>> = (1..n)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * m[0][j] * det_laplace(&minor);
        }
        acc
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let m: Vec<Vec<i128>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            assert_eq!(det_i128(m.clone()), det_laplace(&m));
        }
    }

    #[test]
    fn a2_roots_height_two() {
        let table = a2().root_table(2).unwrap();
        let roots: Vec<Vec<i64>> = table.rows.iter().map(|r| r.root.0.clone()).collect();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(table.rows.iter().all(|r| r.mult == 1 && r.real));
    }

    #[test]
    fn height_bound_too_small() {
        assert_eq!(a2().root_table(0).unwrap_err(), Error::HeightBoundTooSmall);
    }

    #[test]
    fn affine_a1_roots_height_three() {
        let table = affine_a1().root_table(3).unwrap();
        let rows: Vec<(Vec<i64>, i64, bool)> =
            table.rows.iter().map(|r| (r.root.0.clone(), r.mult, r.real)).collect();
        assert_eq!(
            rows,
            vec![
                (vec![0, 1], 1, true),
                (vec![1, 0], 1, true),
                (vec![1, 1], 1, false), // the null root, multiplicity 1
                (vec![1, 2], 1, true),
                (vec![2, 1], 1, true),
            ]
        );
    }

    #[test]
    fn affine_a1_imaginary_multiplicities_deeper() {
        let table = affine_a1().root_table(8).unwrap();
        for k in 1..=4 {
            let delta_k = CorootVector(vec![k, k]);
            let row = table.get(&delta_k).unwrap();
            assert_eq!(row.mult, 1);
            assert!(!row.real);
        }
        // real roots n*delta +- alpha_1 all have multiplicity 1
        for row in &table.rows {
            if row.real {
                assert_eq!(row.mult, 1);
            }
        }
    }

    #[test]
    fn table_closed_under_reflections() {
        for (datum, h) in [(a2(), 3), (affine_a1(), 4)] {
            let table = datum.root_table(h).unwrap();
            for row in &table.rows {
                if !row.real {
                    continue;
                }
                for i in 0..datum.rank() {
                    let refl = datum.reflect_root(i, &row.root);
                    if refl.height().abs() <= h {
                        let abs = if refl.is_nonneg() { refl.clone() } else { refl.scale(-1) };
                        assert!(table.contains(&abs), "missing reflection {abs:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn rho_pairing_is_height() {
        // <rho, beta_vee> = sum of coefficients, because <omega_i, alpha_j_vee> = delta_ij
        let beta = CorootVector(vec![3, 5]);
        assert_eq!(beta.height(), 8);
    }

    #[test]
    fn coroot_table_is_transpose_table() {
        // For a symmetric GCM the two tables agree.
        let datum = affine_a1();
        assert_eq!(datum.root_table(4).unwrap().rows, datum.coroot_table(4).unwrap().rows);
    }

    #[test]
    fn denominator_identity_to_depth_five() {
        assert!(truncated_denominator_check(&affine_a1(), 5).unwrap());
        assert!(truncated_denominator_check(&a2(), 3).unwrap());
        assert!(truncated_denominator_check(&a1(), 4).unwrap());
    }

    #[test]
    fn non_symmetrizable_rejected_for_multiplicities() {
        // Smallest standard non-symmetrizable GCM: a directed triangle of
        // unequal bond pairs. Indefinite, so Peterson would be needed.
        let m = vec![vec![2, -1, -2], vec![-2, 2, -1], vec![-1, -2, 2]];
        let datum = RootDatum::from_entries(m).unwrap();
        assert_eq!(datum.root_table(3).unwrap_err(), Error::NotSymmetrizable);
    }
}
