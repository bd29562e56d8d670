//! Rank-metric codes, the Gabidulin construction, Ferrers diagrams,
//! Ferrers-diagram rank-metric codes and lifting into the Grassmannian.
//!
//! All rank codes here are linear, so exhaustive minimum-distance checks scan
//! the nonzero codewords (the difference of two codewords is a codeword).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;
use crate::space::{IdentifyingVector, Metric, Subspace, SubspaceCode};

/// Cap on q^dim for exhaustive codeword scans.
pub const DEFAULT_RANK_CAP: u64 = 1 << 16;

/// A linear rank-metric code of k x l matrices over GF(q), given by a basis.
#[derive(Debug, Clone)]
pub struct RankCode {
    rows: usize,
    cols: usize,
    field: Field,
    basis: Vec<Mat>,
    delta: u32,
}

impl RankCode {
    pub fn new(field: Field, rows: usize, cols: usize, basis: Vec<Mat>, delta: u32) -> Result<RankCode> {
        for b in &basis {
            if b.rows() != rows || b.cols() != cols || b.field() != &field {
                return Err(Error::ShapeMismatch);
            }
        }
        let code = RankCode {
            rows,
            cols,
            field,
            basis,
            delta,
        };
        if !code.basis_independent() {
            return Err(Error::BadParams(
                "rank-code basis matrices are linearly dependent".into(),
            ));
        }
        Ok(code)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }
    /// Dimension over GF(q).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn size(&self) -> u64 {
        self.field.q().pow(self.dim() as u32)
    }

    fn basis_independent(&self) -> bool {
        if self.basis.is_empty() {
            return true;
        }
        let flat: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|m| (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect())
            .collect();
        let m = Mat::from_rows(self.field.clone(), flat).expect("uniform shapes");
        m.rank() == self.basis.len()
    }

    /// The codeword with the given base-q coefficient index (counter order).
    fn codeword(&self, index: u64) -> Mat {
        let q = self.field.q();
        let mut acc = Mat::zeros(self.field.clone(), self.rows, self.cols);
        let mut rem = index;
        for b in &self.basis {
            let c = (rem % q) as u32;
            rem /= q;
            if c != 0 {
                acc = acc.add(&b.scale(c)).expect("same shape");
            }
        }
        acc
    }

    /// All q^dim codewords in counter order (capped).
    pub fn codewords(&self, cap: Option<u64>) -> Result<Vec<Mat>> {
        let cap = cap.unwrap_or(DEFAULT_RANK_CAP);
        let size = self.size();
        if size > cap {
            return Err(Error::CapExceeded {
                task: "rank code enumeration",
                needed: size as u128,
                cap: cap as u128,
            });
        }
        Ok((0..size).map(|i| self.codeword(i)).collect())
    }

    /// Exhaustive minimum rank distance: the minimum rank of a nonzero
    /// codeword (the code is linear).
    pub fn min_rank_distance(&self, cap: Option<u64>) -> Result<u32> {
        if self.basis.is_empty() {
            return Err(Error::TooFewWords);
        }
        let words = self.codewords(cap)?;
        Ok(words
            .iter()
            .skip(1)
            .map(|w| w.rank() as u32)
            .min()
            .expect("nonzero code"))
    }
}

/// Rank distance between two matrices of the same shape.
pub fn d_r(a: &Mat, b: &Mat) -> Result<u32> {
    Ok(a.sub(b)?.rank() as u32)
}

/// Singleton bound for rank-metric codes: min{k(l-d+1), l(k-d+1)}.
pub fn singleton_rank(k: u32, l: u32, delta: u32) -> Result<u64> {
    if delta == 0 || delta > k.min(l) {
        return Err(Error::BadDelta {
            delta,
            max: k.min(l),
        });
    }
    Ok(((k as u64) * (l - delta + 1) as u64).min((l as u64) * (k - delta + 1) as u64))
}

/// Gabidulin MRD code of k x l matrices over GF(q) with minimum rank
/// distance delta. Codewords are evaluations of q-linearized polynomials of
/// q-degree < (short side - delta + 1) at a fixed independent point set; for
/// k > l the construction runs on the transpose.
pub fn gabidulin(k: u32, l: u32, delta: u32, q: u64) -> Result<RankCode> {
    singleton_rank(k, l, delta)?;
    if k > l {
        let t = gabidulin(l, k, delta, q)?;
        let basis = t.basis.iter().map(|b| b.transpose()).collect();
        return RankCode::new(t.field.clone(), k as usize, l as usize, basis, delta);
    }
    let p = u32::try_from(q)
        .ok()
        .filter(|&p| p > 1)
        .ok_or_else(|| Error::BadParams(format!("bad field order {}", q)))?;
    // extension field GF(q^l); requires prime q (tower bases are out of scope)
    let ext = Field::new(p, l, None).map_err(|e| match e {
        Error::NonPrime(_) => Error::BadParams(format!(
            "gabidulin over composite base field GF({}) is unsupported",
            q
        )),
        other => other,
    })?;
    let base = Field::new(p, 1, None)?;
    let group = ext.q() - 1;
    // evaluation points alpha^0..alpha^{k-1}: independent over GF(q) because
    // the minimal polynomial of alpha has degree l >= k
    let points: Vec<u64> = (0..k as u64).collect();
    let dim_coeff = (k - delta + 1) as usize;
    let mut basis = Vec::with_capacity(dim_coeff * l as usize);
    for d in 0..dim_coeff {
        let frob = mod_pow_u64(q, d as u64, group);
        for t in 0..l as u64 {
            // codeword of f(x) = alpha^t * x^(q^d)
            let mut m = Mat::zeros(base.clone(), k as usize, l as usize);
            for (i, &e) in points.iter().enumerate() {
                let val = ext.primitive_power((t + e * frob % group) as i64);
                for (c, digit) in ext.to_digits(val).into_iter().enumerate() {
                    m.set(i, c, digit);
                }
            }
            basis.push(m);
        }
    }
    RankCode::new(base, k as usize, l as usize, basis, delta)
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

/// True iff the code attains the rank-metric Singleton bound and its
/// exhaustive minimum rank distance equals its declared delta.
pub fn is_mrd(code: &RankCode, cap: Option<u64>) -> Result<bool> {
    let bound = match singleton_rank(code.rows() as u32, code.cols() as u32, code.delta()) {
        Ok(b) => b,
        Err(_) => return Ok(false),
    };
    if code.dim() as u64 != bound {
        return Ok(false);
    }
    Ok(code.min_rank_distance(cap)? == code.delta())
}

/// Lifting: A -> rowspace of [I_k A], a k-dim subspace of F_q^(k+l).
pub fn lift(a: &Mat) -> Subspace {
    let k = a.rows();
    let n = k + a.cols();
    let mut m = Mat::zeros(a.field().clone(), k, n);
    for r in 0..k {
        m.set(r, r, 1);
        for c in 0..a.cols() {
            m.set(r, k + c, a.get(r, c));
        }
    }
    Subspace::from_rref_unchecked(m)
}

/// Lifts every codeword; the result is an (n, delta, k)_q Grassmannian code
/// with n = k + l and the same distance profile (d_G(lift A, lift B) = d_R(A, B)).
pub fn lift_code(code: &RankCode, cap: Option<u64>) -> Result<SubspaceCode> {
    let words: Vec<Subspace> = code.codewords(cap)?.iter().map(lift).collect();
    SubspaceCode::new(
        code.field().clone(),
        code.rows() + code.cols(),
        Metric::Grassmannian,
        words,
        Some(code.delta() as usize),
    )
}

/// A Ferrers diagram: nonincreasing positive row lengths, top row first,
/// dots right-justified in an m x eta bounding box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FerrersDiagram {
    row_lengths: Vec<u32>,
}

impl FerrersDiagram {
    pub fn new(row_lengths: Vec<u32>) -> Result<FerrersDiagram> {
        if row_lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadParams(
                "Ferrers row lengths must be nonincreasing".into(),
            ));
        }
        if row_lengths.iter().any(|&l| l == 0) {
            return Err(Error::BadParams(
                "Ferrers row lengths must be positive".into(),
            ));
        }
        Ok(FerrersDiagram { row_lengths })
    }

    pub fn empty() -> FerrersDiagram {
        FerrersDiagram {
            row_lengths: Vec::new(),
        }
    }

    pub fn rect(m: u32, eta: u32) -> FerrersDiagram {
        FerrersDiagram {
            row_lengths: vec![eta; m as usize],
        }
    }

    pub fn row_lengths(&self) -> &[u32] {
        &self.row_lengths
    }
    /// Number of rows = dots in the rightmost column.
    pub fn num_rows(&self) -> u32 {
        self.row_lengths.len() as u32
    }
    /// Number of columns = dots in the top row.
    pub fn num_cols(&self) -> u32 {
        self.row_lengths.first().copied().unwrap_or(0)
    }
    pub fn dots(&self) -> u64 {
        self.row_lengths.iter().map(|&l| l as u64).sum()
    }
    pub fn is_empty(&self) -> bool {
        self.row_lengths.is_empty()
    }

    /// Dot cells (row, col) in the right-justified bounding box, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let eta = self.num_cols() as usize;
        let mut out = Vec::new();
        for (r, &len) in self.row_lengths.iter().enumerate() {
            for c in eta - len as usize..eta {
                out.push((r, c));
            }
        }
        out
    }

    pub fn contains_cell(&self, r: usize, c: usize) -> bool {
        let eta = self.num_cols() as usize;
        r < self.row_lengths.len()
            && c < eta
            && c >= eta - self.row_lengths[r] as usize
    }

    /// Text form: comma-separated row lengths, e.g. "3,3,3".
    pub fn text(&self) -> String {
        self.row_lengths
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(s: &str) -> Result<FerrersDiagram> {
        if s.trim().is_empty() {
            return Ok(FerrersDiagram::empty());
        }
        let lens: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        FerrersDiagram::new(lens.map_err(|_| Error::ParseError {
            context: s.to_string(),
            message: "expected comma-separated row lengths".into(),
        })?)
    }
}

/// The Ferrers diagram of the echelon Ferrers form EF(v): with pivots
/// p_1 < ... < p_k (1-indexed), row j has (n - p_j) - (k - j) dots.
pub fn ferrers_of(v: &IdentifyingVector) -> Result<FerrersDiagram> {
    let k = v.weight();
    if k == 0 {
        return Err(Error::ZeroWeight);
    }
    let n = v.len();
    let pivots = v.pivots();
    let mut lens = Vec::new();
    for (j, &p) in pivots.iter().enumerate() {
        let dots = (n - p - 1) - (k - 1 - j);
        if dots > 0 {
            lens.push(dots as u32);
        }
    }
    FerrersDiagram::new(lens)
}

/// Theorem bound on dim of an FDRM code: min over i in [0, delta-1] of the
/// dots outside the first i rows and outside the rightmost delta-1-i columns.
pub fn ferrers_bound(f: &FerrersDiagram, delta: u32) -> u64 {
    if delta == 0 {
        return 0;
    }
    (0..delta)
        .map(|i| {
            let excluded_cols = delta - 1 - i;
            f.row_lengths()
                .iter()
                .skip(i as usize)
                .map(|&len| len.saturating_sub(excluded_cols) as u64)
                .sum::<u64>()
        })
        .min()
        .unwrap_or(0)
}

/// A rank-metric code supported on a Ferrers diagram.
#[derive(Debug, Clone)]
pub struct FdrmCode {
    diagram: FerrersDiagram,
    delta: u32,
    code: RankCode,
    bound: u64,
}

impl FdrmCode {
    pub fn diagram(&self) -> &FerrersDiagram {
        &self.diagram
    }
    pub fn delta(&self) -> u32 {
        self.delta
    }
    pub fn code(&self) -> &RankCode {
        &self.code
    }
    pub fn dim(&self) -> usize {
        self.code.dim()
    }
    pub fn size(&self) -> u64 {
        self.code.size()
    }
    /// Theorem upper bound on the dimension.
    pub fn bound(&self) -> u64 {
        self.bound
    }
    /// Gap between the bound and the achieved dimension (0 = attained).
    pub fn gap(&self) -> u64 {
        self.bound - self.dim() as u64
    }
}

/// Deterministic xorshift generator for the seeded completion search.
struct XorShift(u64);
impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

/// Constructs an FDRM code supported on `f` with minimum rank distance >= delta.
///
/// delta = 1 uses all dots freely. Otherwise the maximal subcode of a
/// bounding-rectangle Gabidulin code supported on the diagram is extracted by
/// solving "entries off the diagram vanish"; that attains the bound for the
/// full rectangle and for delta = 2. If delta = 2 ever falls short, a seeded
/// randomized completion search (default budget) tops the code up and the
/// remaining gap is reported via [`FdrmCode::gap`].
pub fn fdrm_construct(f: &FerrersDiagram, delta: u32, q: u64, seed: u64) -> Result<FdrmCode> {
    if delta == 0 {
        return Err(Error::BadDelta { delta, max: 0 });
    }
    let p = u32::try_from(q).map_err(|_| Error::BadParams(format!("bad field order {}", q)))?;
    let base = Field::new(p, 1, None)?;
    let m = f.num_rows();
    let eta = f.num_cols();
    let bound = ferrers_bound(f, delta);
    if f.is_empty() || delta > m.min(eta) {
        // only the zero codeword fits
        let code = RankCode::new(base, m as usize, eta as usize, Vec::new(), delta)?;
        return Ok(FdrmCode {
            diagram: f.clone(),
            delta,
            code,
            bound,
        });
    }
    if delta == 1 {
        let mut basis = Vec::new();
        for (r, c) in f.cells() {
            let mut u = Mat::zeros(base.clone(), m as usize, eta as usize);
            u.set(r, c, 1);
            basis.push(u);
        }
        let code = RankCode::new(base, m as usize, eta as usize, basis, delta)?;
        return Ok(FdrmCode {
            diagram: f.clone(),
            delta,
            code,
            bound,
        });
    }
    let rect = gabidulin(m, eta, delta, q)?;
    let basis = if f.dots() == (m as u64) * (eta as u64) {
        rect.basis().to_vec()
    } else {
        subcode_on_diagram(&rect, f)?
    };
    let mut code = RankCode::new(base.clone(), m as usize, eta as usize, basis, delta)?;
    if delta == 2 && (code.dim() as u64) < bound {
        code = randomized_completion(code, f, delta, seed, 20_000)?;
    }
    Ok(FdrmCode {
        diagram: f.clone(),
        delta,
        code,
        bound,
    })
}

/// Maximal subcode of `rect` whose codewords vanish off the diagram: the
/// kernel of the linear map (coefficients) -> (off-diagram entries).
fn subcode_on_diagram(rect: &RankCode, f: &FerrersDiagram) -> Result<Vec<Mat>> {
    let field = rect.field().clone();
    let m = rect.rows();
    let eta = rect.cols();
    let off: Vec<(usize, usize)> = (0..m)
        .flat_map(|r| (0..eta).map(move |c| (r, c)))
        .filter(|&(r, c)| !f.contains_cell(r, c))
        .collect();
    if off.is_empty() {
        return Ok(rect.basis().to_vec());
    }
    // constraint matrix: one row per off cell, one column per basis element
    let rows: Vec<Vec<u32>> = off
        .iter()
        .map(|&(r, c)| rect.basis().iter().map(|b| b.get(r, c)).collect())
        .collect();
    let constraints = Mat::from_rows(field.clone(), rows)?;
    let kernel = constraints.nullspace();
    let mut basis = Vec::with_capacity(kernel.rows());
    for i in 0..kernel.rows() {
        let coeffs = kernel.row(i);
        let mut acc = Mat::zeros(field.clone(), m, eta);
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&rect.basis()[j].scale(c))?;
            }
        }
        basis.push(acc);
    }
    Ok(basis)
}

/// Bounded seeded search adding random diagram-supported matrices while the
/// minimum rank distance stays >= delta.
fn randomized_completion(
    code: RankCode,
    f: &FerrersDiagram,
    delta: u32,
    seed: u64,
    budget: u32,
) -> Result<RankCode> {
    let field = code.field().clone();
    let q = field.q();
    let cells = f.cells();
    let mut rng = XorShift(seed | 1);
    let mut basis = code.basis().to_vec();
    let bound = ferrers_bound(f, delta);
    let mut attempts = 0;
    while (basis.len() as u64) < bound && attempts < budget {
        attempts += 1;
        let mut cand = Mat::zeros(field.clone(), code.rows(), code.cols());
        for &(r, c) in &cells {
            cand.set(r, c, (rng.next() % q) as u32);
        }
        if cand.is_zero() {
            continue;
        }
        let trial = RankCode::new(
            field.clone(),
            code.rows(),
            code.cols(),
            {
                let mut b = basis.clone();
                b.push(cand);
                b
            },
            delta,
        );
        let Ok(trial) = trial else { continue };
        if trial.min_rank_distance(Some(DEFAULT_RANK_CAP))? >= delta {
            basis = trial.basis().to_vec();
        }
    }
    RankCode::new(field, code.rows(), code.cols(), basis, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{code_min_distance, d_g, gaussian_binomial};
    use num_bigint::BigUint;

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    #[test]
    fn rank_distance_basics() {
        let f = gf2();
        let a = Mat::identity(f.clone(), 3);
        let z = Mat::zeros(f.clone(), 3, 3);
        assert_eq!(d_r(&a, &a).unwrap(), 0);
        assert_eq!(d_r(&a, &z).unwrap(), 3);
        let b = Mat::zeros(f, 3, 4);
        assert!(matches!(d_r(&a, &b), Err(Error::ShapeMismatch)));
    }

    #[test]
    fn singleton_values() {
        assert_eq!(singleton_rank(2, 3, 2).unwrap(), 3);
        assert_eq!(singleton_rank(3, 3, 1).unwrap(), 9);
        assert_eq!(singleton_rank(3, 4, 2).unwrap(), 8);
        assert!(matches!(
            singleton_rank(3, 3, 4),
            Err(Error::BadDelta { .. })
        ));
    }

    #[test]
    fn gabidulin_full_distance_3x3() {
        let code = gabidulin(3, 3, 3, 2).unwrap();
        assert_eq!(code.dim(), 3);
        let words = code.codewords(None).unwrap();
        assert_eq!(words.len(), 8);
        for (i, a) in words.iter().enumerate() {
            for b in words.iter().skip(i + 1) {
                assert_eq!(d_r(a, b).unwrap(), 3);
            }
        }
    }

    #[test]
    fn gabidulin_is_mrd_small_cases() {
        for (k, l, d, q) in [
            (3u32, 3u32, 2u32, 2u64),
            (3, 3, 3, 2),
            (2, 2, 2, 2),
            (3, 4, 2, 2),
            (4, 3, 2, 2),
            (4, 4, 3, 2),
            (2, 2, 2, 3),
            (2, 3, 2, 3),
        ] {
            let code = gabidulin(k, l, d, q).unwrap();
            assert_eq!(code.dim() as u64, singleton_rank(k, l, d).unwrap());
            assert!(
                is_mrd(&code, None).unwrap(),
                "gabidulin({},{},{},{}) must be MRD",
                k,
                l,
                d,
                q
            );
        }
    }

    #[test]
    fn gabidulin_delta_one_is_full_space() {
        let code = gabidulin(2, 3, 1, 2).unwrap();
        assert_eq!(code.dim(), 6);
        assert!(is_mrd(&code, None).unwrap());
    }

    #[test]
    fn non_mrd_cases_rejected() {
        let f = gf2();
        // zero code with claimed delta 2: dim 0 below the bound
        let zero = RankCode::new(f.clone(), 2, 2, vec![], 2).unwrap();
        assert!(!is_mrd(&zero, None).unwrap());
        // full matrix space with claimed delta 2: distance 1
        let mut basis = Vec::new();
        for r in 0..2 {
            for c in 0..2 {
                let mut u = Mat::zeros(f.clone(), 2, 2);
                u.set(r, c, 1);
                basis.push(u);
            }
        }
        let full = RankCode::new(f, 2, 2, basis, 2).unwrap();
        assert!(!is_mrd(&full, None).unwrap());
    }

    #[test]
    fn lift_of_zero_matrix() {
        let f = gf2();
        let z = Mat::zeros(f, 3, 2);
        let s = lift(&z);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.ambient(), 5);
        assert_eq!(
            s.rows(),
            vec![
                vec![1, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0]
            ]
        );
    }

    #[test]
    fn lift_preserves_distance() {
        let code = gabidulin(2, 2, 2, 2).unwrap();
        let words = code.codewords(None).unwrap();
        for a in &words {
            for b in &words {
                let la = lift(a);
                let lb = lift(b);
                if a == b {
                    assert_eq!(la, lb);
                } else {
                    assert_eq!(
                        d_g(&la, &lb).unwrap() as u32,
                        d_r(a, b).unwrap(),
                        "lifting is distance preserving"
                    );
                }
            }
        }
    }

    #[test]
    fn lifted_mrd_6_2_3() {
        let code = gabidulin(3, 3, 2, 2).unwrap();
        let lifted = lift_code(&code, None).unwrap();
        assert_eq!(lifted.len(), 64);
        assert_eq!(code_min_distance(&lifted, Metric::Grassmannian).unwrap(), 2);
    }

    #[test]
    fn ferrers_of_examples() {
        let v = IdentifyingVector::new(vec![1, 1, 1, 0, 0, 0]);
        let f = ferrers_of(&v).unwrap();
        assert_eq!(f.row_lengths(), &[3, 3, 3]);
        assert_eq!(f.dots(), 9);

        let v = IdentifyingVector::new(vec![0, 0, 0, 1, 1, 1]);
        let f = ferrers_of(&v).unwrap();
        assert!(f.is_empty());

        let v = IdentifyingVector::new(vec![0u8; 4]);
        assert!(matches!(ferrers_of(&v), Err(Error::ZeroWeight)));
    }

    #[test]
    fn ferrers_partition_identity() {
        // sum over weight-k identifying vectors of q^dots = [n, k]_q,
        // for every 1 <= k <= n <= 7
        for q in [2u64, 3] {
            for n in 1..=7usize {
                for k in 1..=n {
                    let mut total = BigUint::from(0u32);
                    for mask in 0u64..1 << n {
                        if mask.count_ones() as usize != k {
                            continue;
                        }
                        let v = IdentifyingVector::from_mask(mask, n);
                        let f = ferrers_of(&v).unwrap();
                        total += BigUint::from(q).pow(f.dots() as u32);
                    }
                    assert_eq!(
                        total,
                        gaussian_binomial(n as u32, k as u32, q),
                        "partition identity at (n, k, q) = ({n}, {k}, {q})"
                    );
                }
            }
        }
    }

    #[test]
    fn ferrers_bound_examples() {
        let rect23 = FerrersDiagram::rect(2, 3);
        assert_eq!(ferrers_bound(&rect23, 2), 3);
        assert_eq!(ferrers_bound(&rect23, 1), 6);
        let rect33 = FerrersDiagram::rect(3, 3);
        assert_eq!(ferrers_bound(&rect33, 3), 3);
        let f = FerrersDiagram::new(vec![3, 1, 1]).unwrap();
        assert_eq!(ferrers_bound(&f, 1), f.dots());
        assert_eq!(ferrers_bound(&f, 2), 2);
    }

    #[test]
    fn ferrers_bound_matches_singleton_on_rectangles() {
        for k in 1..=6u32 {
            for l in 1..=6u32 {
                for d in 1..=k.min(l) {
                    assert_eq!(
                        ferrers_bound(&FerrersDiagram::rect(k, l), d),
                        singleton_rank(k, l, d).unwrap(),
                    );
                }
            }
        }
    }

    #[test]
    fn fdrm_delta_one_fills_diagram() {
        let f = FerrersDiagram::new(vec![3, 2, 1]).unwrap();
        let code = fdrm_construct(&f, 1, 2, 1).unwrap();
        assert_eq!(code.dim() as u64, f.dots());
        assert_eq!(code.gap(), 0);
    }

    #[test]
    fn fdrm_empty_diagram() {
        let code = fdrm_construct(&FerrersDiagram::empty(), 2, 2, 1).unwrap();
        assert_eq!(code.dim(), 0);
        assert_eq!(code.size(), 1);
    }

    #[test]
    fn fdrm_rectangle_reduces_to_mrd() {
        for (m, eta, d) in [(2u32, 3u32, 2u32), (3, 3, 2), (3, 3, 3), (3, 4, 2)] {
            let code = fdrm_construct(&FerrersDiagram::rect(m, eta), d, 2, 1).unwrap();
            assert_eq!(code.dim() as u64, singleton_rank(m, eta, d).unwrap());
            assert_eq!(code.gap(), 0);
            assert!(code.code().min_rank_distance(None).unwrap() >= d);
        }
    }

    #[test]
    fn fdrm_delta_two_attains_bound() {
        let shapes = [
            vec![3, 1, 1],
            vec![2, 1],
            vec![3, 3, 1],
            vec![4, 2, 2, 1],
            vec![2, 2, 2, 2], // taller than wide
            vec![3, 2],
        ];
        for lens in shapes {
            let f = FerrersDiagram::new(lens.clone()).unwrap();
            let code = fdrm_construct(&f, 2, 2, 7).unwrap();
            assert_eq!(
                code.dim() as u64,
                ferrers_bound(&f, 2),
                "delta=2 attainment for {:?}",
                lens
            );
            if code.dim() > 0 {
                assert!(code.code().min_rank_distance(None).unwrap() >= 2);
            }
        }
    }

    #[test]
    fn fdrm_dim_never_exceeds_bound() {
        for lens in [vec![3, 2, 1], vec![4, 4, 2], vec![2, 2]] {
            for d in 1..=3u32 {
                let f = FerrersDiagram::new(lens.clone()).unwrap();
                let code = fdrm_construct(&f, d, 2, 3).unwrap();
                assert!(code.dim() as u64 <= ferrers_bound(&f, d));
                if code.dim() > 0 && d > 1 {
                    assert!(code.code().min_rank_distance(None).unwrap() >= d);
                }
            }
        }
    }

    #[test]
    fn diagram_text_round_trip() {
        let f = FerrersDiagram::new(vec![3, 3, 3]).unwrap();
        assert_eq!(f.text(), "3,3,3");
        assert_eq!(FerrersDiagram::parse("3,3,3").unwrap(), f);
        assert!(FerrersDiagram::parse("1,3").is_err());
    }
}
