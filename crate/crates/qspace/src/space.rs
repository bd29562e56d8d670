//! Subspaces of F_q^n in canonical form, the three distance measures,
//! Gaussian coefficients, enumeration and duality.
//!
//! Every [`Subspace`] stores its generator matrix in reduced row echelon
//! form, so subspace equality is matrix equality. The canonical enumeration
//! order is: identifying vectors in colexicographic order (pivot-set bitmask
//! ascending, bit i = column i), and within one echelon Ferrers form the free
//! entries counted row-major as a base-q counter, first free cell most
//! significant.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;

/// Default cap on enumeration stream lengths.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Metric tag for subspace codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Subspace,
    Injection,
    Grassmannian,
}

impl Metric {
    pub fn tag(&self) -> &'static str {
        match self {
            Metric::Subspace => "subspace",
            Metric::Injection => "injection",
            Metric::Grassmannian => "grassmannian",
        }
    }

    pub fn parse(s: &str) -> Result<Metric> {
        match s {
            "subspace" => Ok(Metric::Subspace),
            "injection" => Ok(Metric::Injection),
            "grassmannian" => Ok(Metric::Grassmannian),
            other => Err(Error::ParseError {
                context: other.to_string(),
                message: "expected subspace | injection | grassmannian".into(),
            }),
        }
    }
}

/// The binary pivot-position vector of a subspace's RREF generator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentifyingVector {
    bits: Vec<u8>,
}

impl IdentifyingVector {
    pub fn new(bits: Vec<u8>) -> IdentifyingVector {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        IdentifyingVector { bits }
    }

    pub fn from_mask(mask: u64, n: usize) -> IdentifyingVector {
        IdentifyingVector {
            bits: (0..n).map(|i| ((mask >> i) & 1) as u8).collect(),
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }
    pub fn len(&self) -> usize {
        self.bits.len()
    }
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i] == 1).collect()
    }
    /// Bitmask with bit i set when column i carries a pivot; ascending mask
    /// order is colexicographic order on the pivot sets.
    pub fn mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }
}

impl std::fmt::Display for IdentifyingVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

/// A k-dimensional subspace of F_q^n held as its RREF generator matrix.
/// k = 0 encodes the null space {0} with an empty matrix.
#[derive(Debug, Clone)]
pub struct Subspace {
    mat: Mat, // invariant: RREF with exactly dim() nonzero rows
    n: usize,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.mat.rows() == other.mat.rows()
            && self.mat.field() == other.mat.field()
            && (0..self.mat.rows()).all(|r| self.mat.row(r) == other.mat.row(r))
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.mat.rows().hash(state);
        for r in 0..self.mat.rows() {
            self.mat.row(r).hash(state);
        }
    }
}

impl Subspace {
    /// Canonicalizes arbitrary spanning rows into a subspace.
    pub fn from_matrix(m: &Mat) -> Subspace {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let n = m.cols();
        let mat = if k == 0 {
            Mat::zeros(m.field().clone(), 0, n)
        } else if k == m.rows() {
            r
        } else {
            let rows: Vec<Vec<u32>> = (0..k).map(|i| r.row(i).to_vec()).collect();
            Mat::from_rows(m.field().clone(), rows).expect("rows share one length")
        };
        Subspace { mat, n }
    }

    pub fn span(field: &Field, n: usize, vectors: &[Vec<u32>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, n));
        }
        let m = Mat::from_rows(field.clone(), vectors.to_vec())?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace {
            mat: Mat::zeros(field.clone(), 0, n),
            n,
        }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace {
            mat: Mat::identity(field.clone(), n),
            n,
        }
    }

    /// Builds directly from rows that are already RREF (debug-checked).
    pub(crate) fn from_rref_unchecked(mat: Mat) -> Subspace {
        debug_assert_eq!(mat.rref().1.len(), mat.rows());
        let n = mat.cols();
        Subspace { mat, n }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &Field {
        self.mat.field()
    }
    pub fn matrix(&self) -> &Mat {
        &self.mat
    }
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.mat.row_vecs()
    }

    pub fn identifying_vector(&self) -> IdentifyingVector {
        let (_, pivots) = self.mat.rref();
        let mut bits = vec![0u8; self.n];
        for p in pivots {
            bits[p] = 1;
        }
        IdentifyingVector::new(bits)
    }

    /// Membership test by reducing v against the RREF rows.
    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let f = self.mat.field();
        let mut v = v.to_vec();
        for r in 0..self.mat.rows() {
            let pivot = self.mat.row(r).iter().position(|&x| x != 0).unwrap();
            if v[pivot] != 0 {
                let factor = v[pivot];
                for c in 0..self.n {
                    v[c] = f.sub(v[c], f.mul(factor, self.mat.get(r, c)));
                }
            }
        }
        Ok(v.iter().all(|&x| x == 0))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        if other.n != self.n {
            return Err(Error::AmbientMismatch);
        }
        for r in 0..other.mat.rows() {
            if !self.contains(other.mat.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All q^k vectors of the subspace, in coefficient-counter order.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let q = self.field().q() as u32;
        let k = self.dim();
        let mut out = Vec::with_capacity((q as u64).pow(k as u32) as usize);
        let mut coeffs = vec![0u32; k];
        loop {
            out.push(self.mat.left_mul(&coeffs).unwrap());
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] == q {
                    coeffs[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.n);
        }
        Subspace::from_matrix(&self.mat.nullspace())
    }

    /// Sort key implementing the canonical enumeration order.
    fn canonical_key(&self) -> (usize, u64, Vec<u32>) {
        let iv = self.identifying_vector();
        let mask = iv.mask();
        let pivots = iv.pivots();
        let mut frees = Vec::new();
        for (j, &p) in pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !pivots.contains(&c) {
                    frees.push(self.mat.get(j, c));
                }
            }
        }
        (self.dim(), mask, frees)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

pub fn intersection_dim(x: &Subspace, y: &Subspace) -> Result<usize> {
    if x.ambient() != y.ambient() || x.field() != y.field() {
        return Err(Error::AmbientMismatch);
    }
    let stacked = x.matrix().stack(y.matrix())?;
    Ok(x.dim() + y.dim() - stacked.rank())
}

pub fn sum_subspace(x: &Subspace, y: &Subspace) -> Result<Subspace> {
    if x.ambient() != y.ambient() || x.field() != y.field() {
        return Err(Error::AmbientMismatch);
    }
    Ok(Subspace::from_matrix(&x.matrix().stack(y.matrix())?))
}

/// X ∩ Y computed as the dual of X^⊥ + Y^⊥.
pub fn intersection(x: &Subspace, y: &Subspace) -> Result<Subspace> {
    if x.ambient() != y.ambient() || x.field() != y.field() {
        return Err(Error::AmbientMismatch);
    }
    Ok(sum_subspace(&x.dual(), &y.dual())?.dual())
}

/// Subspace distance dim X + dim Y - 2 dim(X ∩ Y).
pub fn d_s(x: &Subspace, y: &Subspace) -> Result<usize> {
    let i = intersection_dim(x, y)?;
    Ok(x.dim() + y.dim() - 2 * i)
}

/// Injection distance max(dim X, dim Y) - dim(X ∩ Y).
pub fn d_i(x: &Subspace, y: &Subspace) -> Result<usize> {
    let i = intersection_dim(x, y)?;
    Ok(x.dim().max(y.dim()) - i)
}

/// Grassmannian distance k - dim(X ∩ Y); requires equal dimensions.
pub fn d_g(x: &Subspace, y: &Subspace) -> Result<usize> {
    if x.dim() != y.dim() {
        return Err(Error::UnequalDimensions {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let i = intersection_dim(x, y)?;
    Ok(x.dim() - i)
}

pub fn distance(x: &Subspace, y: &Subspace, metric: Metric) -> Result<usize> {
    match metric {
        Metric::Subspace => d_s(x, y),
        Metric::Injection => d_i(x, y),
        Metric::Grassmannian => d_g(x, y),
    }
}

/// Exact q-ary Gaussian coefficient [n, k]_q = |G_q(n, k)|.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    num / den
}

/// |P_q(n)| = sum over k of [n, k]_q.
pub fn projective_space_size(n: u32, q: u64) -> BigUint {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// Iterator over G_q(n, k) in canonical order.
pub struct GrassmannianIter {
    field: Field,
    n: usize,
    k: usize,
    mask: u64,
    counter: u64,
    level_size: u64,
    pivots: Vec<usize>,
    free_cells: Vec<(usize, usize)>, // (row, col) in row-major order
    done: bool,
}

fn next_weight_mask(mask: u64, n: usize, k: usize) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let limit = 1u64 << n;
    let mut m = mask + 1;
    while m < limit {
        if m.count_ones() as usize == k {
            return Some(m);
        }
        m += 1;
    }
    None
}

fn mask_layout(mask: u64, n: usize) -> (Vec<usize>, Vec<(usize, usize)>, u32) {
    let pivots: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
    let mut cells = Vec::new();
    for (j, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if mask >> c & 1 == 0 {
                cells.push((j, c));
            }
        }
    }
    let dots = cells.len() as u32;
    (pivots, cells, dots)
}

impl GrassmannianIter {
    fn new(field: Field, n: usize, k: usize) -> GrassmannianIter {
        let (mask, done) = if k == 0 {
            (0, false)
        } else {
            ((1u64 << k) - 1, k > n)
        };
        let (pivots, free_cells, dots) = mask_layout(mask, n);
        let level_size = field.q().pow(dots);
        GrassmannianIter {
            field,
            n,
            k,
            mask,
            counter: 0,
            level_size,
            pivots,
            free_cells,
            done,
        }
    }

    fn build(&self) -> Subspace {
        let mut m = Mat::zeros(self.field.clone(), self.k, self.n);
        for (j, &p) in self.pivots.iter().enumerate() {
            m.set(j, p, 1);
        }
        // first free cell most significant
        let q = self.field.q();
        let mut rem = self.counter;
        for idx in (0..self.free_cells.len()).rev() {
            let (r, c) = self.free_cells[idx];
            m.set(r, c, (rem % q) as u32);
            rem /= q;
        }
        Subspace::from_rref_unchecked(m)
    }
}

impl Iterator for GrassmannianIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.build();
        self.counter += 1;
        if self.counter == self.level_size {
            self.counter = 0;
            match next_weight_mask(self.mask, self.n, self.k) {
                Some(m) => {
                    self.mask = m;
                    let (pivots, cells, dots) = mask_layout(m, self.n);
                    self.pivots = pivots;
                    self.free_cells = cells;
                    self.level_size = self.field.q().pow(dots);
                }
                None => self.done = true,
            }
        }
        if self.k == 0 {
            self.done = true;
        }
        Some(s)
    }
}

/// Streams all of G_q(n, k) in canonical order. Errors with
/// [`Error::CapExceeded`] when the stream would exceed `cap`
/// (default [`DEFAULT_ENUM_CAP`]).
pub fn enumerate_grassmannian(
    field: &Field,
    n: usize,
    k: usize,
    cap: Option<u64>,
) -> Result<GrassmannianIter> {
    let cap = cap.unwrap_or(DEFAULT_ENUM_CAP);
    let total = gaussian_binomial(n as u32, k as u32, field.q());
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            task: "grassmannian enumeration",
            needed: total_to_u128(&total),
            cap: cap as u128,
        });
    }
    Ok(GrassmannianIter::new(field.clone(), n, k))
}

fn total_to_u128(b: &BigUint) -> u128 {
    use num_traits::ToPrimitive;
    b.to_u128().unwrap_or(u128::MAX)
}

/// Streams all of P_q(n): dimensions ascending, canonical order within each.
pub fn enumerate_projective(
    field: &Field,
    n: usize,
    cap: Option<u64>,
) -> Result<impl Iterator<Item = Subspace>> {
    let cap = cap.unwrap_or(DEFAULT_ENUM_CAP);
    let total = projective_space_size(n as u32, field.q());
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            task: "projective enumeration",
            needed: total_to_u128(&total),
            cap: cap as u128,
        });
    }
    let field = field.clone();
    Ok((0..=n).flat_map(move |k| GrassmannianIter::new(field.clone(), n, k)))
}

/// A finite set of subspaces sharing one ambient space, with a metric tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceCode {
    field: Field,
    n: usize,
    metric: Metric,
    words: Vec<Subspace>,
    claimed_min_distance: Option<usize>,
}

impl SubspaceCode {
    /// Validates, sorts canonically and deduplicates.
    pub fn new(
        field: Field,
        n: usize,
        metric: Metric,
        words: Vec<Subspace>,
        claimed_min_distance: Option<usize>,
    ) -> Result<SubspaceCode> {
        for w in &words {
            if w.ambient() != n || w.field() != &field {
                return Err(Error::AmbientMismatch);
            }
        }
        if metric == Metric::Grassmannian {
            if let Some(first) = words.first() {
                if words.iter().any(|w| w.dim() != first.dim()) {
                    return Err(Error::NotConstantDimension);
                }
            }
        }
        let mut words = words;
        words.sort();
        words.dedup();
        Ok(SubspaceCode {
            field,
            n,
            metric,
            words,
            claimed_min_distance,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn metric(&self) -> Metric {
        self.metric
    }
    pub fn words(&self) -> &[Subspace] {
        &self.words
    }
    pub fn len(&self) -> usize {
        self.words.len()
    }
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
    pub fn claimed_min_distance(&self) -> Option<usize> {
        self.claimed_min_distance
    }
    pub fn set_claimed_min_distance(&mut self, d: Option<usize>) {
        self.claimed_min_distance = d;
    }

    pub fn with_metric(&self, metric: Metric) -> Result<SubspaceCode> {
        SubspaceCode::new(
            self.field.clone(),
            self.n,
            metric,
            self.words.clone(),
            None,
        )
    }

    pub fn contains_word(&self, s: &Subspace) -> bool {
        self.words.binary_search(s).is_ok()
    }

    /// The orthogonal-complement code; same minimum distance as self.
    pub fn dual(&self) -> SubspaceCode {
        let words = self.words.iter().map(|w| w.dual()).collect();
        SubspaceCode::new(
            self.field.clone(),
            self.n,
            self.metric,
            words,
            self.claimed_min_distance,
        )
        .expect("dual preserves ambient")
    }
}

/// Exhaustive minimum pairwise distance. Pair scans are chunked across
/// workers when QSPACE_THREADS allows; the merged minimum is deterministic.
pub fn code_min_distance(code: &SubspaceCode, metric: Metric) -> Result<usize> {
    let words = code.words();
    if words.len() < 2 {
        return Err(Error::TooFewWords);
    }
    if metric == Metric::Grassmannian {
        if let Some(first) = words.first() {
            if words.iter().any(|w| w.dim() != first.dim()) {
                return Err(Error::NotConstantDimension);
            }
        }
    }
    let threads = crate::worker_threads().min(words.len());
    if threads <= 1 {
        let mut best = usize::MAX;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                best = best.min(distance(&words[i], &words[j], metric)?);
            }
        }
        return Ok(best);
    }
    let best = std::thread::scope(|scope| -> Result<usize> {
        let mut handles = Vec::new();
        for t in 0..threads {
            let words = &words;
            handles.push(scope.spawn(move || -> Result<usize> {
                let mut best = usize::MAX;
                let mut i = t;
                while i < words.len() {
                    for j in i + 1..words.len() {
                        best = best.min(distance(&words[i], &words[j], metric)?);
                    }
                    i += threads;
                }
                Ok(best)
            }));
        }
        let mut best = usize::MAX;
        for h in handles {
            best = best.min(h.join().expect("worker panicked")?);
        }
        Ok(best)
    })?;
    Ok(best)
}
