//! Code constructions: the multilevel construction, puncturing, spreads and
//! partial spreads, cyclic orbit codes, Frobenius/shift maps and trivial
//! augmentation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;
use crate::rank::{fdrm_construct, ferrers_of};
use crate::space::{
    code_min_distance, distance, enumerate_grassmannian, intersection, IdentifyingVector, Metric,
    Subspace, SubspaceCode,
};

/// Distance notion a skeleton code declares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletonDistance {
    Hamming,
    Asymmetric,
}

/// A binary code whose words index the echelon-Ferrers layers of the
/// multilevel construction. Words are bitmasks with bit i = column i.
#[derive(Debug, Clone)]
pub struct SkeletonCode {
    n: usize,
    words: Vec<u64>,
    kind: SkeletonDistance,
    declared: u32,
    constant_weight: Option<u32>,
}

pub fn hamming_distance(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Asymmetric distance max(N(a,b), N(b,a)) with N counting 1 -> 0 positions.
pub fn asymmetric_distance(a: u64, b: u64) -> u32 {
    let n_ab = (a & !b).count_ones();
    let n_ba = (b & !a).count_ones();
    n_ab.max(n_ba)
}

impl SkeletonCode {
    pub fn new(
        n: usize,
        words: Vec<u64>,
        kind: SkeletonDistance,
        declared: u32,
        constant_weight: Option<u32>,
    ) -> Result<SkeletonCode> {
        if n == 0 || n > 63 {
            return Err(Error::BadParams("skeleton length must be in 1..=63".into()));
        }
        let mut words = words;
        words.sort_unstable();
        words.dedup();
        if words.iter().any(|&w| w >> n != 0) {
            return Err(Error::BadParams("skeleton word longer than n".into()));
        }
        if let Some(k) = constant_weight {
            if words.iter().any(|&w| w.count_ones() != k) {
                return Err(Error::MetricMismatch(format!(
                    "skeleton is not constant-weight {}",
                    k
                )));
            }
        }
        Ok(SkeletonCode {
            n,
            words,
            kind,
            declared,
            constant_weight,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn words(&self) -> &[u64] {
        &self.words
    }
    pub fn kind(&self) -> SkeletonDistance {
        self.kind
    }
    pub fn declared(&self) -> u32 {
        self.declared
    }
    pub fn constant_weight(&self) -> Option<u32> {
        self.constant_weight
    }

    /// Exhaustive minimum distance under the declared kind; None for < 2 words.
    pub fn min_distance(&self) -> Option<u32> {
        if self.words.len() < 2 {
            return None;
        }
        let mut best = u32::MAX;
        for (i, &a) in self.words.iter().enumerate() {
            for &b in &self.words[i + 1..] {
                let d = match self.kind {
                    SkeletonDistance::Hamming => hamming_distance(a, b),
                    SkeletonDistance::Asymmetric => asymmetric_distance(a, b),
                };
                best = best.min(d);
            }
        }
        Some(best)
    }
}

/// Greedy deterministic skeleton: scan words in ascending bitmask order
/// starting from the seed 1^k 0^(n-k) and keep those at distance >= the
/// metric's requirement from everything kept so far.
///
/// grassmannian: weight-k words, Hamming distance 2*delta;
/// subspace: all words, Hamming distance 2*delta - 1;
/// injection: all words, asymmetric distance delta.
pub fn skeleton_default(n: usize, k: u32, delta: u32, metric: Metric) -> Result<SkeletonCode> {
    if n == 0 || n > 63 || k as usize > n {
        return Err(Error::BadParams("bad skeleton parameters".into()));
    }
    let seed: u64 = (1u64 << k) - 1;
    let (kind, required) = match metric {
        Metric::Grassmannian => (SkeletonDistance::Hamming, 2 * delta),
        Metric::Subspace => (SkeletonDistance::Hamming, 2 * delta - 1),
        Metric::Injection => (SkeletonDistance::Asymmetric, delta),
    };
    let mut kept: Vec<u64> = vec![seed];
    for w in 0..1u64 << n {
        if w == seed {
            continue;
        }
        if metric == Metric::Grassmannian && w.count_ones() != k {
            continue;
        }
        let ok = kept.iter().all(|&kw| {
            let d = match kind {
                SkeletonDistance::Hamming => hamming_distance(kw, w),
                SkeletonDistance::Asymmetric => asymmetric_distance(kw, w),
            };
            d >= required
        });
        if ok {
            kept.push(w);
        }
    }
    SkeletonCode::new(
        n,
        kept,
        kind,
        required,
        (metric == Metric::Grassmannian).then_some(k),
    )
}

/// Embeds an FDRM codeword into the echelon Ferrers form of `word`: pivots at
/// the word's one-positions, diagram entries in the free cells.
fn ef_embed(field: &Field, n: usize, word: u64, codeword: &Mat) -> Subspace {
    let iv = IdentifyingVector::from_mask(word, n);
    let pivots = iv.pivots();
    let k = pivots.len();
    let mut m = Mat::zeros(field.clone(), k, n);
    let eta = codeword.cols();
    for (j, &p) in pivots.iter().enumerate() {
        m.set(j, p, 1);
        let free: Vec<usize> = (p + 1..n).filter(|c| !pivots.contains(c)).collect();
        let len = free.len();
        // diagram row j is right-justified: its `len` dots sit in the last
        // `len` columns of the codeword's bounding box
        for (s, &c) in free.iter().enumerate() {
            if j < codeword.rows() {
                m.set(j, c, codeword.get(j, eta - len + s));
            }
        }
    }
    Subspace::from_rref_unchecked(m)
}

/// The multilevel construction: one Ferrers-diagram rank-metric code per
/// skeleton word, lifted into that word's echelon Ferrers form.
///
/// The skeleton's verified minimum distance must meet the metric's floor
/// (2*delta for grassmannian, 2*delta - 1 for subspace, delta asymmetric for
/// injection). The output size obeys the size law sum_c |C_c| and the
/// verified minimum distance of the result is checked before returning.
pub fn multilevel(
    skeleton: &SkeletonCode,
    delta: u32,
    q: u64,
    metric: Metric,
    seed: u64,
) -> Result<SubspaceCode> {
    if skeleton.words().is_empty() {
        return Err(Error::BadParams("empty skeleton".into()));
    }
    match metric {
        Metric::Grassmannian => {
            let w0 = skeleton.words()[0].count_ones();
            if skeleton.words().iter().any(|w| w.count_ones() != w0) {
                return Err(Error::MetricMismatch(
                    "grassmannian multilevel needs a constant-weight skeleton".into(),
                ));
            }
            if let Some(d) = skeleton.min_distance() {
                if d < 2 * delta {
                    return Err(Error::SkeletonDistanceTooSmall {
                        kind: "Hamming",
                        actual: d,
                        required: 2 * delta,
                    });
                }
            }
        }
        Metric::Subspace => {
            if skeleton.kind() != SkeletonDistance::Hamming {
                return Err(Error::MetricMismatch(
                    "subspace multilevel needs a Hamming-distance skeleton".into(),
                ));
            }
            if let Some(d) = skeleton.min_distance() {
                if d < 2 * delta - 1 {
                    return Err(Error::SkeletonDistanceTooSmall {
                        kind: "Hamming",
                        actual: d,
                        required: 2 * delta - 1,
                    });
                }
            }
        }
        Metric::Injection => {
            if skeleton.kind() != SkeletonDistance::Asymmetric {
                return Err(Error::MetricMismatch(
                    "injection multilevel needs an asymmetric-distance skeleton".into(),
                ));
            }
            if let Some(d) = skeleton.min_distance() {
                if d < delta {
                    return Err(Error::SkeletonDistanceTooSmall {
                        kind: "asymmetric",
                        actual: d,
                        required: delta,
                    });
                }
            }
        }
    }
    let p = u32::try_from(q).map_err(|_| Error::BadParams(format!("bad field order {}", q)))?;
    let field = Field::new(p, 1, None)?;
    let n = skeleton.n();
    let mut words = Vec::new();
    let mut expected_size = 0u64;
    for &c in skeleton.words() {
        if c == 0 {
            words.push(Subspace::zero(&field, n));
            expected_size += 1;
            continue;
        }
        let iv = IdentifyingVector::from_mask(c, n);
        let diagram = ferrers_of(&iv)?;
        let fdrm = fdrm_construct(&diagram, delta, q, seed)?;
        expected_size += fdrm.size();
        for cw in fdrm.code().codewords(None)? {
            words.push(ef_embed(&field, n, c, &cw));
        }
    }
    let code = SubspaceCode::new(field, n, metric, words, None)?;
    if code.len() as u64 != expected_size {
        return Err(Error::VerificationFailed(format!(
            "multilevel size law broken: got {}, expected {}",
            code.len(),
            expected_size
        )));
    }
    // distance target per metric
    let skeleton_d = skeleton.min_distance();
    let target = match metric {
        Metric::Grassmannian => delta as usize,
        Metric::Injection => delta as usize,
        Metric::Subspace => skeleton_d
            .map(|d| (d as usize).min(2 * delta as usize))
            .unwrap_or(2 * delta as usize),
    };
    let mut code = code;
    if code.len() >= 2 {
        let verified = code_min_distance(&code, metric)?;
        if verified < target {
            return Err(Error::VerificationFailed(format!(
                "multilevel distance shortfall: verified {}, target {}",
                verified, target
            )));
        }
        code.set_claimed_min_distance(Some(verified));
    }
    Ok(code)
}

/// Deletes coordinate `coord` (0-indexed) from every vector of X. The unit
/// vector e_coord must not lie in X; the dimension is then preserved.
pub fn puncture_subspace(x: &Subspace, coord: usize) -> Result<Subspace> {
    let n = x.ambient();
    if coord >= n {
        return Err(Error::BadParams(format!(
            "coordinate {} out of range 0..{}",
            coord, n
        )));
    }
    let mut unit = vec![0u32; n];
    unit[coord] = 1;
    if x.contains(&unit)? {
        return Err(Error::UnitVectorInside(coord));
    }
    let punctured = Subspace::from_matrix(&x.matrix().delete_col(coord));
    debug_assert_eq!(punctured.dim(), x.dim());
    Ok(punctured)
}

/// The punctured code C'_{Q,v}: words inside the hyperplane Q are punctured
/// directly, words containing v are intersected with Q first. tau is the
/// position of the unique zero in v(Q).
pub fn puncture_code(code: &SubspaceCode, q_sub: &Subspace, v: &[u32]) -> Result<SubspaceCode> {
    let n = code.ambient();
    if q_sub.ambient() != n || q_sub.dim() + 1 != n {
        return Err(Error::BadHyperplane {
            dim: q_sub.dim(),
            n,
        });
    }
    if q_sub.contains(v)? {
        return Err(Error::VInQ);
    }
    let iv = q_sub.identifying_vector();
    let tau = (0..n)
        .find(|&i| iv.bits()[i] == 0)
        .expect("hyperplane has exactly one non-pivot column");
    let mut words = Vec::new();
    for x in code.words() {
        if q_sub.contains_subspace(x)? {
            words.push(puncture_subspace(x, tau)?);
        }
        if x.contains(v)? {
            let xq = intersection(x, q_sub)?;
            words.push(puncture_subspace(&xq, tau)?);
        }
    }
    let mut out = SubspaceCode::new(
        code.field().clone(),
        n - 1,
        Metric::Subspace,
        words,
        None,
    )?;
    if out.len() >= 2 {
        let d = code_min_distance(&out, Metric::Subspace)?;
        out.set_claimed_min_distance(Some(d));
    }
    Ok(out)
}

/// Exhaustive search over all hyperplanes Q (canonical order) with a
/// canonical v (smallest vector outside Q); returns the (Q, v) maximizing the
/// punctured-code size, ties broken toward the canonically smaller Q.
pub fn choose_q(code: &SubspaceCode) -> Result<(Subspace, Vec<u32>, SubspaceCode)> {
    let n = code.ambient();
    let field = code.field().clone();
    let mut best: Option<(Subspace, Vec<u32>, SubspaceCode)> = None;
    for q_sub in enumerate_grassmannian(&field, n, n - 1, None)? {
        let v = smallest_vector_outside(&q_sub)?;
        let punctured = puncture_code(code, &q_sub, &v)?;
        let better = match &best {
            None => true,
            Some((_, _, b)) => punctured.len() > b.len(),
        };
        if better {
            best = Some((q_sub, v, punctured));
        }
    }
    best.ok_or_else(|| Error::BadParams("ambient space too small for hyperplanes".into()))
}

/// Smallest nonzero vector (base-q counter order, coordinate 0 least
/// significant) not contained in X.
fn smallest_vector_outside(x: &Subspace) -> Result<Vec<u32>> {
    let n = x.ambient();
    let q = x.field().q() as u32;
    let mut v = vec![0u32; n];
    loop {
        // counter increment
        let mut i = 0;
        loop {
            if i == n {
                return Err(Error::BadParams("no vector outside the full space".into()));
            }
            v[i] += 1;
            if v[i] == q {
                v[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if !x.contains(&v)? {
            return Ok(v);
        }
    }
}

/// The normal (geometric) spread: k must divide n, and the words are the
/// multiplicative cosets alpha^i F_{q^k} inside F_{q^n}, mapped through the
/// coordinate isomorphism. Requires prime q.
pub fn spread(n: u32, k: u32, q: u64) -> Result<SubspaceCode> {
    if k == 0 || n == 0 || k > n {
        return Err(Error::BadParams("need 1 <= k <= n".into()));
    }
    if n % k != 0 {
        return Err(Error::NotDivisible { k, n });
    }
    let p = u32::try_from(q).map_err(|_| Error::BadParams(format!("bad field order {}", q)))?;
    let ext = Field::new(p, n, None).map_err(|e| match e {
        Error::NonPrime(_) => Error::BadParams(format!(
            "spread construction needs a prime base field, got q = {}",
            q
        )),
        other => other,
    })?;
    let base = Field::new(p, 1, None)?;
    let group = ext.q() - 1;
    let subfield_size = q.pow(k);
    let s = group / (subfield_size - 1);
    let mut words = Vec::with_capacity(s as usize);
    for i in 0..s {
        let vectors: Vec<Vec<u32>> = (0..subfield_size - 1)
            .map(|j| ext.to_digits(ext.primitive_power((i + j * s) as i64)))
            .collect();
        let w = Subspace::span(&base, n as usize, &vectors)?;
        debug_assert_eq!(w.dim(), k as usize);
        words.push(w);
    }
    let mut code = SubspaceCode::new(base, n as usize, Metric::Grassmannian, words, None)?;
    if code.len() >= 2 {
        let d = code_min_distance(&code, Metric::Grassmannian)?;
        if d != k as usize {
            return Err(Error::VerificationFailed(format!(
                "spread distance is {}, expected {}",
                d, k
            )));
        }
        code.set_claimed_min_distance(Some(d));
    }
    Ok(code)
}

/// Maximal-known partial spread for k not dividing n, via the multilevel
/// construction with the disjoint-block skeleton (blocks at offsets 0, k,
/// 2k, ...). Its size matches the classical lower bound
/// (q^n - q^k (q^r - 1) - 1)/(q^k - 1) with r = n mod k, which is exact when
/// n = 1 (mod k). Delegates to [`spread`] when k divides n.
pub fn partial_spread(n: u32, k: u32, q: u64) -> Result<SubspaceCode> {
    if k == 0 || n == 0 || k > n {
        return Err(Error::BadParams("need 1 <= k <= n".into()));
    }
    if n % k == 0 {
        return spread(n, k, q);
    }
    let blocks = n / k;
    let mut words = Vec::with_capacity(blocks as usize);
    for b in 0..blocks {
        words.push(((1u64 << k) - 1) << (b * k));
    }
    let skeleton = SkeletonCode::new(
        n as usize,
        words,
        SkeletonDistance::Hamming,
        2 * k,
        Some(k),
    )?;
    let mut code = multilevel(&skeleton, k, q, Metric::Grassmannian, 1)?;
    let d = code_min_distance(&code, Metric::Grassmannian)?;
    if d != k as usize {
        return Err(Error::VerificationFailed(format!(
            "partial spread distance is {}, expected {}",
            d, k
        )));
    }
    code.set_claimed_min_distance(Some(d));
    Ok(code)
}

/// A cyclic-code orbit generator: the subspace {0, alpha^{i_1}, ..., alpha^{i_m}}
/// of F_{q^n} given by its exponent set.
#[derive(Debug, Clone)]
pub struct OrbitGenerator {
    exponents: Vec<u64>,
}

impl OrbitGenerator {
    pub fn new(mut exponents: Vec<u64>) -> OrbitGenerator {
        exponents.sort_unstable();
        exponents.dedup();
        OrbitGenerator { exponents }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Element values {0} union {alpha^e} in `ext`.
    fn values(&self, ext: &Field, shift: u64) -> Vec<u32> {
        let group = ext.q() - 1;
        let mut vals = vec![0u32];
        vals.extend(
            self.exponents
                .iter()
                .map(|&e| ext.primitive_power(((e + shift) % group) as i64)),
        );
        vals
    }

    /// Additive closure check: the element set must form a subspace.
    pub fn validate(&self, ext: &Field) -> Result<()> {
        let vals = self.values(ext, 0);
        let set: BTreeSet<u32> = vals.iter().copied().collect();
        let size = set.len() as u64;
        // a GF(p)-subspace has p^d elements
        let p = ext.p() as u64;
        let mut pow = 1u64;
        while pow < size {
            pow *= p;
        }
        if pow != size {
            return Err(Error::NotASubspace);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&ext.add(a, b)) {
                    return Err(Error::NotASubspace);
                }
            }
        }
        Ok(())
    }

    fn subspace(&self, ext: &Field, base: &Field, shift: u64) -> Result<Subspace> {
        let vectors: Vec<Vec<u32>> = self
            .values(ext, shift)
            .into_iter()
            .filter(|&v| v != 0)
            .map(|v| ext.to_digits(v))
            .collect();
        Subspace::span(base, ext.m() as usize, &vectors)
    }
}

/// The union of all cyclic-shift orbits of the generators, optionally with
/// the null space and the full space added. The result is closed under the
/// shift map by construction.
pub fn cyclic_orbit_code(
    ext: &Field,
    gens: &[OrbitGenerator],
    add_trivial: bool,
    metric: Metric,
) -> Result<SubspaceCode> {
    let base = Field::new(ext.p(), 1, None)?;
    let n = ext.m() as usize;
    let group = ext.q() - 1;
    let mut words: BTreeSet<Subspace> = BTreeSet::new();
    for g in gens {
        g.validate(ext)?;
        for j in 0..group {
            words.insert(g.subspace(ext, &base, j)?);
        }
    }
    if add_trivial {
        words.insert(Subspace::zero(&base, n));
        words.insert(Subspace::full(&base, n));
    }
    SubspaceCode::new(base, n, metric, words.into_iter().collect(), None)
}

/// The Frobenius mapping x -> x^(q^l) applied elementwise; maps subspaces to
/// subspaces (verified by the dimension assertion).
pub fn frobenius_map(ext: &Field, x: &Subspace, l: u32) -> Result<Subspace> {
    check_ext(ext, x)?;
    let group = ext.q() - 1;
    let frob = mod_pow_u64(ext.p() as u64, l as u64 % ext.m() as u64, group);
    map_exponents(ext, x, |e| e * frob % group)
}

/// The cyclic shift mapping alpha^i -> alpha^(i+j) applied elementwise.
pub fn shift_map(ext: &Field, x: &Subspace, j: u64) -> Result<Subspace> {
    check_ext(ext, x)?;
    let group = ext.q() - 1;
    map_exponents(ext, x, |e| (e + j) % group)
}

/// The orbit of X under all compositions of Frobenius and shift maps:
/// {Phi_j(Upsilon_l(X))}, deduplicated.
pub fn equivalence_class(ext: &Field, x: &Subspace) -> Result<Vec<Subspace>> {
    check_ext(ext, x)?;
    let group = ext.q() - 1;
    let mut out: BTreeSet<Subspace> = BTreeSet::new();
    for l in 0..ext.m() {
        let fx = frobenius_map(ext, x, l)?;
        for j in 0..group {
            out.insert(shift_map(ext, &fx, j)?);
        }
    }
    Ok(out.into_iter().collect())
}

fn check_ext(ext: &Field, x: &Subspace) -> Result<()> {
    if ext.m() as usize != x.ambient() || x.field().q() != ext.p() as u64 {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

fn map_exponents(ext: &Field, x: &Subspace, f: impl Fn(u64) -> u64) -> Result<Subspace> {
    let base = x.field().clone();
    let n = x.ambient();
    let mut vectors = Vec::new();
    for v in x.vectors() {
        let value = ext.from_digits(&v)?;
        if value == 0 {
            continue;
        }
        let e = ext.dlog(value)?;
        vectors.push(ext.to_digits(ext.primitive_power(f(e) as i64)));
    }
    let image = Subspace::span(&base, n, &vectors)?;
    if image.dim() != x.dim() {
        return Err(Error::VerificationFailed(
            "field mapping did not preserve the dimension".into(),
        ));
    }
    Ok(image)
}

fn mod_pow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Adds the null space and/or the full space when doing so keeps the minimum
/// distance at or above `target` under `metric`.
pub fn augment_trivial(code: &SubspaceCode, metric: Metric, target: usize) -> Result<SubspaceCode> {
    let field = code.field().clone();
    let n = code.ambient();
    let zero = Subspace::zero(&field, n);
    let full = Subspace::full(&field, n);
    let mut words: Vec<Subspace> = code.words().to_vec();
    let fits = |cand: &Subspace, words: &[Subspace]| -> Result<bool> {
        for w in words {
            if w == cand {
                return Ok(false);
            }
            if distance(w, cand, metric)? < target {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if fits(&zero, &words)? {
        words.push(zero);
    }
    if fits(&full, &words)? {
        words.push(full);
    }
    let out_metric = if code.metric() == Metric::Grassmannian {
        // adding {0} or the full space breaks constant dimension
        metric
    } else {
        code.metric()
    };
    SubspaceCode::new(field, n, out_metric, words, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::{gabidulin, lift_code};
    use crate::space::d_s;

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    #[test]
    fn skeleton_default_examples() {
        let s = skeleton_default(6, 3, 3, Metric::Grassmannian).unwrap();
        assert_eq!(s.words(), &[0b000111, 0b111000], "111000 and 000111");
        let s = skeleton_default(4, 2, 2, Metric::Grassmannian).unwrap();
        assert_eq!(s.words(), &[0b0011, 0b1100]);
        let s = skeleton_default(6, 3, 2, Metric::Grassmannian).unwrap();
        assert_eq!(s.words()[0], 0b000111, "seed 111000 comes first");
        assert!(s.min_distance().unwrap() >= 4);
    }

    #[test]
    fn multilevel_spread_6_3() {
        let skeleton = SkeletonCode::new(
            6,
            vec![0b000111, 0b111000],
            SkeletonDistance::Hamming,
            6,
            Some(3),
        )
        .unwrap();
        let code = multilevel(&skeleton, 3, 2, Metric::Grassmannian, 1).unwrap();
        assert_eq!(code.len(), 9, "8 + 1 words");
        assert_eq!(code_min_distance(&code, Metric::Grassmannian).unwrap(), 3);
    }

    #[test]
    fn multilevel_65_words_delta_2() {
        let skeleton = SkeletonCode::new(
            6,
            vec![0b000111, 0b111000],
            SkeletonDistance::Hamming,
            6,
            Some(3),
        )
        .unwrap();
        let code = multilevel(&skeleton, 2, 2, Metric::Grassmannian, 1).unwrap();
        assert_eq!(code.len(), 65, "64 + 1 words");
        assert_eq!(code_min_distance(&code, Metric::Grassmannian).unwrap(), 2);
    }

    #[test]
    fn multilevel_four_words_n4() {
        // single-word skeleton degenerates to a lifted MRD of size 4;
        // adding 0011 gives the 5-word spread
        let single = SkeletonCode::new(4, vec![0b0011], SkeletonDistance::Hamming, 4, Some(2))
            .unwrap();
        let code = multilevel(&single, 2, 2, Metric::Grassmannian, 1).unwrap();
        assert_eq!(code.len(), 4);
        let both = SkeletonCode::new(
            4,
            vec![0b0011, 0b1100],
            SkeletonDistance::Hamming,
            4,
            Some(2),
        )
        .unwrap();
        let code = multilevel(&both, 2, 2, Metric::Grassmannian, 1).unwrap();
        assert_eq!(code.len(), 5, "A_2(4,2,2) = 5");
        assert_eq!(code_min_distance(&code, Metric::Grassmannian).unwrap(), 2);
    }

    #[test]
    fn multilevel_injection_metric() {
        let skeleton = skeleton_default(6, 3, 2, Metric::Injection).unwrap();
        assert_eq!(skeleton.kind(), SkeletonDistance::Asymmetric);
        assert!(skeleton.min_distance().unwrap() >= 2);
        let code = multilevel(&skeleton, 2, 2, Metric::Injection, 1).unwrap();
        assert!(code.claimed_min_distance().unwrap() >= 2);
        assert_eq!(
            code_min_distance(&code, Metric::Injection).unwrap(),
            code.claimed_min_distance().unwrap()
        );
    }

    #[test]
    fn multilevel_subspace_metric_mixed_dimensions() {
        let skeleton = skeleton_default(6, 3, 2, Metric::Subspace).unwrap();
        assert!(skeleton.min_distance().unwrap() >= 3);
        let code = multilevel(&skeleton, 2, 2, Metric::Subspace, 1).unwrap();
        // words of several dimensions, minimum subspace distance >= 3
        let dims: std::collections::BTreeSet<usize> =
            code.words().iter().map(|w| w.dim()).collect();
        assert!(dims.len() > 1, "mixed dimensions expected, got {dims:?}");
        assert!(code.claimed_min_distance().unwrap() >= 3);
    }

    #[test]
    fn multilevel_rejects_weak_skeleton() {
        let skeleton = SkeletonCode::new(
            6,
            vec![0b000111, 0b001110],
            SkeletonDistance::Hamming,
            2,
            Some(3),
        )
        .unwrap();
        assert!(matches!(
            multilevel(&skeleton, 3, 2, Metric::Grassmannian, 1),
            Err(Error::SkeletonDistanceTooSmall { .. })
        ));
    }

    #[test]
    fn puncture_subspace_examples() {
        let f = gf2();
        let x = Subspace::span(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        // deleting the third coordinate (index 2) gives all of F_2^2
        let p = puncture_subspace(&x, 2).unwrap();
        assert_eq!(p.ambient(), 2);
        assert_eq!(p.dim(), 2);

        let with_unit = Subspace::span(&f, 3, &[vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        assert!(matches!(
            puncture_subspace(&with_unit, 2),
            Err(Error::UnitVectorInside(2))
        ));
    }

    #[test]
    fn puncture_preserves_dim_across_projective_space() {
        let f = gf2();
        for x in crate::space::enumerate_projective(&f, 5, None).unwrap() {
            for coord in 0..5 {
                let mut unit = vec![0u32; 5];
                unit[coord] = 1;
                if x.contains(&unit).unwrap() {
                    continue;
                }
                assert_eq!(puncture_subspace(&x, coord).unwrap().dim(), x.dim());
            }
        }
    }

    #[test]
    fn choose_q_on_lifted_mrd_6_2_3() {
        let code = lift_code(&gabidulin(3, 3, 2, 2).unwrap(), None).unwrap();
        let (q_sub, v, punctured) = choose_q(&code).unwrap();
        assert_eq!(q_sub.dim(), 5);
        assert!(!q_sub.contains(&v).unwrap());
        assert_eq!(punctured.len(), 16, "2^{{n+1}} codewords in Q plus via v");
        assert!(punctured.claimed_min_distance().unwrap() >= 3);
    }

    #[test]
    fn puncture_entire_code_in_q() {
        let f = gf2();
        // every word inside Q = span(e1..e4) x {0}? use Q = first 5 coords? n=5, Q dim 4
        let q_sub = Subspace::span(
            &f,
            5,
            &[
                vec![1, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
            ],
        )
        .unwrap();
        let w1 = Subspace::span(&f, 5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]).unwrap();
        let w2 = Subspace::span(&f, 5, &[vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0]]).unwrap();
        let code =
            SubspaceCode::new(f.clone(), 5, Metric::Subspace, vec![w1, w2], None).unwrap();
        let v = vec![0, 0, 0, 0, 1];
        let punctured = puncture_code(&code, &q_sub, &v).unwrap();
        assert_eq!(punctured.len(), 2, "same size, no word contains v");
        let empty = SubspaceCode::new(f, 5, Metric::Subspace, vec![], None).unwrap();
        let punctured = puncture_code(&empty, &q_sub, &v).unwrap();
        assert!(punctured.is_empty());
    }

    #[test]
    fn spread_sizes_and_distances() {
        let s = spread(4, 2, 2).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.claimed_min_distance(), Some(2));
        let s = spread(6, 3, 2).unwrap();
        assert_eq!(s.len(), 9);
        let s = spread(6, 2, 2).unwrap();
        assert_eq!(s.len(), 21);
        assert!(matches!(
            spread(5, 2, 2),
            Err(Error::NotDivisible { k: 2, n: 5 })
        ));
    }

    #[test]
    fn spread_8_4_2() {
        let s = spread(8, 4, 2).unwrap();
        assert_eq!(s.len(), 17);
        assert_eq!(s.claimed_min_distance(), Some(4));
    }

    #[test]
    fn partial_spread_sizes() {
        let s = partial_spread(5, 2, 2).unwrap();
        assert_eq!(s.len(), 9, "A_2(5,2,2) = 9");
        let s = partial_spread(7, 2, 2).unwrap();
        assert_eq!(s.len(), 41, "A_2(7,2,2) = 41");
        let s = partial_spread(7, 3, 2).unwrap();
        assert_eq!(s.len(), 17, "A_2(7,3,3) = 17");
        let s = partial_spread(8, 3, 2).unwrap();
        assert_eq!(s.len(), 33, "Theorem 10 value at (8,3)");
    }

    #[test]
    fn cyclic_single_generator_orbit() {
        // F_4 inside F_64: {0, 1, a^21, a^42}; stabilizer = multiples of 21
        let ext = Field::new(2, 6, None).unwrap();
        let g = OrbitGenerator::new(vec![0, 21, 42]);
        let code = cyclic_orbit_code(&ext, &[g], false, Metric::Injection).unwrap();
        assert_eq!(code.len(), 21);
        assert!(code.words().iter().all(|w| w.dim() == 2));
    }

    #[test]
    fn cyclic_generator_validation() {
        let ext = Field::new(2, 6, None).unwrap();
        let bad = OrbitGenerator::new(vec![0, 1, 2]);
        assert!(matches!(bad.validate(&ext), Err(Error::NotASubspace)));
        let good = OrbitGenerator::new(vec![0, 21, 42]);
        good.validate(&ext).unwrap();
    }

    #[test]
    fn cyclic_full_space_generator_orbit_of_one() {
        let ext = Field::new(2, 3, None).unwrap();
        let g = OrbitGenerator::new((0..7).collect());
        let code = cyclic_orbit_code(&ext, &[g], false, Metric::Injection).unwrap();
        assert_eq!(code.len(), 1);
        assert_eq!(code.words()[0].dim(), 3);
    }

    #[test]
    fn cyclic_code_shift_invariant() {
        let ext = Field::new(2, 6, None).unwrap();
        let g = OrbitGenerator::new(vec![0, 1, 4, 6, 16, 24, 33]);
        let code = cyclic_orbit_code(&ext, &[g], false, Metric::Injection).unwrap();
        for w in code.words() {
            let shifted = shift_map(&ext, w, 1).unwrap();
            assert!(code.contains_word(&shifted), "closed under the shift map");
        }
    }

    #[test]
    fn frobenius_and_shift_identities() {
        let ext = Field::new(2, 4, None).unwrap();
        let base = gf2();
        let x = Subspace::span(
            &base,
            4,
            &[ext.to_digits(ext.primitive_power(3)), ext.to_digits(7)],
        )
        .unwrap();
        assert_eq!(shift_map(&ext, &x, 0).unwrap(), x);
        assert_eq!(frobenius_map(&ext, &x, 0).unwrap(), x);
        let a = shift_map(&ext, &shift_map(&ext, &x, 5).unwrap(), 9).unwrap();
        let b = shift_map(&ext, &x, 14).unwrap();
        assert_eq!(a, b, "shift composes additively");
    }

    #[test]
    fn equivalence_class_size_divides_group() {
        let ext = Field::new(2, 4, None).unwrap();
        let f = gf2();
        for x in enumerate_grassmannian(&f, 4, 2, None).unwrap() {
            let class = equivalence_class(&ext, &x).unwrap();
            assert_eq!(
                4 * 15 % class.len(),
                0,
                "orbit size divides n (q^n - 1), got {}",
                class.len()
            );
        }
    }

    #[test]
    fn augment_trivial_injection_spread() {
        let s = spread(4, 2, 2).unwrap();
        let augmented = augment_trivial(&s, Metric::Injection, 2).unwrap();
        assert_eq!(augmented.len(), 7, "A_2^I(4,2) = 7");
        assert_eq!(
            code_min_distance(&augmented, Metric::Injection).unwrap(),
            2
        );
    }

    #[test]
    fn augment_trivial_subspace_adds_neither() {
        let s = spread(4, 2, 2).unwrap();
        let augmented = augment_trivial(&s, Metric::Subspace, 4).unwrap();
        assert_eq!(augmented.len(), 5, "d_S({{0}}, k=2 word) = 2 < 4");
    }

    #[test]
    fn augment_trivial_empty_code() {
        let f = gf2();
        let empty = SubspaceCode::new(f, 4, Metric::Subspace, vec![], None).unwrap();
        let augmented = augment_trivial(&empty, Metric::Subspace, 4).unwrap();
        assert_eq!(augmented.len(), 2, "{{0}} and F_q^n at distance n = 4");
        let d = d_s(&augmented.words()[0], &augmented.words()[1]).unwrap();
        assert_eq!(d, 4);
    }
}
