//! Exhaustive verification of combinatorial-design properties: q-Steiner
//! systems, t-(n, k, lambda)_q designs, coverings, spreads, subspace
//! transversal designs, the coverage lemma and the complement census.
//!
//! Coverage counting is exact: every t-subspace of every codeword is
//! canonicalized and tallied in a hash multiset, then compared against the
//! full count [n, t]_q. No sampling.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

use crate::space::{
    enumerate_grassmannian, enumerate_projective, gaussian_binomial, intersection_dim,
    projective_space_size, Subspace, SubspaceCode,
};

/// Multiplicity census of t-subspace coverage.
#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub t: usize,
    /// Maps multiplicity m to the number of t-subspaces covered exactly m times.
    pub histogram: BTreeMap<u64, BigUint>,
    pub is_covering: bool,
    pub is_steiner: bool,
    /// Some(lambda) when every t-subspace is covered exactly lambda times.
    pub design_lambda: Option<u64>,
    /// The design is the full Grassmannian layer (trivial).
    pub trivial: bool,
}

impl CoverageReport {
    pub fn total(&self) -> BigUint {
        self.histogram.values().sum()
    }
}

/// Exact multiplicity of every t-subspace across all words.
pub fn coverage(code: &SubspaceCode, t: usize, cap: Option<u64>) -> Result<CoverageReport> {
    let n = code.ambient();
    let q = code.field().q();
    if code.words().iter().any(|w| w.dim() < t) {
        let bad = code.words().iter().map(|w| w.dim()).min().unwrap_or(0);
        return Err(Error::DimTooSmall { dim: bad, t });
    }
    let total = gaussian_binomial(n as u32, t as u32, q);
    let cap = cap.unwrap_or(crate::space::DEFAULT_ENUM_CAP);
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            task: "coverage census",
            needed: total.to_u128().unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let mut counts: HashMap<Subspace, u64> = HashMap::new();
    for w in code.words() {
        for sub in subspaces_of(w, t)? {
            *counts.entry(sub).or_insert(0) += 1;
        }
    }
    let mut histogram: BTreeMap<u64, BigUint> = BTreeMap::new();
    for &m in counts.values() {
        *histogram.entry(m).or_insert_with(BigUint::zero) += 1u32;
    }
    let covered: BigUint = histogram.values().sum();
    if covered < total {
        histogram.insert(0, &total - covered);
    }
    let is_covering = !histogram.contains_key(&0);
    let is_steiner = is_covering && histogram.len() == 1 && histogram.contains_key(&1);
    let design_lambda = if histogram.len() == 1 {
        histogram.keys().next().copied().filter(|&m| m > 0)
    } else {
        None
    };
    let k0 = code.words().first().map(|w| w.dim());
    let trivial = k0.is_some_and(|k| {
        code.words().iter().all(|w| w.dim() == k)
            && BigUint::from(code.len()) == gaussian_binomial(n as u32, k as u32, q)
    });
    Ok(CoverageReport {
        t,
        histogram,
        is_covering,
        is_steiner,
        design_lambda,
        trivial,
    })
}

/// All t-dimensional subspaces of `w`, canonicalized in the ambient space.
fn subspaces_of(w: &Subspace, t: usize) -> Result<Vec<Subspace>> {
    let k = w.dim();
    if t > k {
        return Ok(Vec::new());
    }
    if t == 0 {
        return Ok(vec![Subspace::zero(w.field(), w.ambient())]);
    }
    let field = w.field().clone();
    let mut out = Vec::new();
    for coords in enumerate_grassmannian(&field, k, t, None)? {
        // map the coordinate subspace through w's basis
        let rows: Vec<Vec<u32>> = coords
            .matrix()
            .row_vecs()
            .iter()
            .map(|r| w.matrix().left_mul(r).expect("length k"))
            .collect();
        out.push(Subspace::span(&field, w.ambient(), &rows)?);
    }
    Ok(out)
}

/// Every t-subspace covered exactly once.
pub fn verify_steiner(code: &SubspaceCode, t: usize) -> Result<bool> {
    Ok(coverage(code, t, None)?.is_steiner)
}

/// Every t-subspace covered exactly lambda times.
pub fn verify_design(code: &SubspaceCode, t: usize, lambda: u64) -> Result<bool> {
    Ok(coverage(code, t, None)?.design_lambda == Some(lambda))
}

/// Every r-subspace covered at least once.
pub fn verify_covering(code: &SubspaceCode, r: usize) -> Result<bool> {
    Ok(coverage(code, r, None)?.is_covering)
}

/// Divisibility conditions for the existence of a Steiner structure
/// S_q(t, k, n): the quotients [n-i, t-i]_q / [k-i, t-i]_q for
/// i = 0..t-1 must all be integers.
pub fn steiner_divisibility(t: u32, k: u32, n: u32, q: u64) -> Result<Vec<(u32, BigRational, bool)>> {
    if !(t < k && k < n) {
        return Err(Error::BadParams("need t < k < n".into()));
    }
    let mut out = Vec::new();
    for i in 0..t {
        let num = gaussian_binomial(n - i, t - i, q);
        let den = gaussian_binomial(k - i, t - i, q);
        let ratio = BigRational::new(num.into(), den.into());
        let integral = ratio.is_integer();
        out.push((i, ratio, integral));
    }
    Ok(out)
}

/// Pairwise disjoint words covering every 1-subspace exactly once.
pub fn verify_spread(code: &SubspaceCode) -> Result<bool> {
    Ok(verify_partial_spread(code)? && {
        let q = code.field().q();
        let covered: u64 = code
            .words()
            .iter()
            .map(|w| (q.pow(w.dim() as u32)) - 1)
            .sum();
        covered == q.pow(code.ambient() as u32) - 1
    })
}

/// Pairwise disjoint words (every 1-subspace covered at most once).
pub fn verify_partial_spread(code: &SubspaceCode) -> Result<bool> {
    let words = code.words();
    for (i, x) in words.iter().enumerate() {
        if x.dim() == 0 {
            return Ok(false);
        }
        for y in &words[i + 1..] {
            if intersection_dim(x, y)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-property verdicts for the subspace-transversal-design check.
#[derive(Debug, Clone)]
pub struct StdReport {
    pub group_count: u64,
    pub group_size: u64,
    pub strength: usize,
    /// property 1: the point set has size (q^k-1)/(q-1) * q^(n-k)
    pub points_ok: bool,
    /// property 2: the groups partition the points
    pub groups_ok: bool,
    /// property 3: blocks avoid vectors with zero k-prefix
    pub blocks_avoid_v0: bool,
    /// property 4: every block meets every group in exactly one point
    pub block_group_ok: bool,
    /// property 5: every admissible t-subspace lies in exactly one block
    pub strength_ok: bool,
}

impl StdReport {
    pub fn all_pass(&self) -> bool {
        self.points_ok
            && self.groups_ok
            && self.blocks_avoid_v0
            && self.block_group_ok
            && self.strength_ok
    }
}

/// Normalized representative of the projective point through v: scaled so
/// its leading nonzero coordinate is 1.
fn normalize_point(field: &Field, v: &[u32]) -> Vec<u32> {
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(0);
    if lead <= 1 {
        return v.to_vec();
    }
    let inv = field.inv(lead).expect("nonzero");
    v.iter().map(|&x| field.mul(x, inv)).collect()
}

/// Checks the five subspace-transversal-design properties on a
/// constant-dimension code of k-subspaces in F_q^n, with
/// groups indexed by the nonzero k-prefixes.
pub fn verify_std(code: &SubspaceCode, strength: usize) -> Result<StdReport> {
    let words = code.words();
    let Some(first) = words.first() else {
        return Err(Error::NotConstantDimension);
    };
    let k = first.dim();
    if words.iter().any(|w| w.dim() != k) {
        return Err(Error::NotConstantDimension);
    }
    let n = code.ambient();
    let field = code.field().clone();
    let q = field.q();

    // points: normalized vectors with nonzero k-prefix, grouped by prefix
    let mut groups: HashMap<Vec<u32>, Vec<Vec<u32>>> = HashMap::new();
    let full = Subspace::full(&field, n);
    for v in full.vectors() {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if v[..k].iter().all(|&x| x == 0) {
            continue;
        }
        let nv = normalize_point(&field, &v);
        if nv != v {
            continue; // keep one representative per projective point
        }
        groups.entry(nv[..k].to_vec()).or_default().push(nv);
    }
    let expected_groups = (q.pow(k as u32) - 1) / (q - 1);
    let expected_group_size = q.pow((n - k) as u32);
    let points_ok = groups.values().map(|g| g.len() as u64).sum::<u64>()
        == expected_groups * expected_group_size;
    let groups_ok = groups.len() as u64 == expected_groups
        && groups.values().all(|g| g.len() as u64 == expected_group_size);

    // property 3: no nonzero block vector has an all-zero k-prefix
    let mut blocks_avoid_v0 = true;
    // property 4: each block meets each group in exactly one point
    let mut block_group_ok = true;
    for w in words {
        let mut seen: HashMap<Vec<u32>, u64> = HashMap::new();
        for v in w.vectors() {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            if v[..k].iter().all(|&x| x == 0) {
                blocks_avoid_v0 = false;
                continue;
            }
            let nv = normalize_point(&field, &v);
            if nv == v {
                *seen.entry(nv[..k].to_vec()).or_insert(0) += 1;
            }
        }
        if seen.len() as u64 != expected_groups || seen.values().any(|&c| c != 1) {
            block_group_ok = false;
        }
    }

    // property 5: admissible t-subspaces (trivial intersection with the
    // zero-prefix region) are contained in exactly one block
    let t = strength;
    let mut strength_ok = true;
    let v0_rows: Vec<Vec<u32>> = (k..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect();
    let v0_space = Subspace::span(&field, n, &v0_rows)?;
    let mut admissible = BigUint::zero();
    for tsub in enumerate_grassmannian(&field, n, t, None)? {
        if intersection_dim(&tsub, &v0_space)? != 0 {
            continue;
        }
        admissible += 1u32;
        let mut containing = 0u64;
        for w in words {
            if w.contains_subspace(&tsub)? {
                containing += 1;
            }
        }
        if containing != 1 {
            strength_ok = false;
        }
    }

    Ok(StdReport {
        group_count: expected_groups,
        group_size: expected_group_size,
        strength,
        points_ok,
        groups_ok,
        blocks_avoid_v0,
        block_group_ok,
        strength_ok,
    })
}

/// True when every 1-dimensional subspace of the ambient space lies in some
/// codeword.
pub fn cover_check(code: &SubspaceCode) -> Result<bool> {
    let n = code.ambient();
    let field = code.field().clone();
    for line in enumerate_grassmannian(&field, n, 1, None)? {
        let v = line.matrix().row(0);
        if !code.words().iter().any(|w| w.contains(v).unwrap_or(false)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The complement census: counts subspaces X of F_q^n with X intersecting
/// its orthogonal complement trivially.
#[derive(Debug, Clone)]
pub struct ComplementCensus {
    pub n: u32,
    pub q: u64,
    pub complementable: BigUint,
    pub total: BigUint,
    pub ratio: f64,
    pub limit_constant: f64,
}

/// Exhaustive count of {X : X ∩ X^⊥ = {0}} over P_q(n), chunked across
/// workers when QSPACE_THREADS allows.
pub fn complements_census(n: u32, q: u64, cap: Option<u64>) -> Result<ComplementCensus> {
    let total = projective_space_size(n, q);
    let cap = cap.unwrap_or(crate::space::DEFAULT_ENUM_CAP);
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            task: "complement census",
            needed: total.to_u128().unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let p = u32::try_from(q).map_err(|_| Error::BadParams(format!("bad field order {}", q)))?;
    let field = Field::new(p, 1, None).map_err(|e| match e {
        Error::NonPrime(_) => Error::BadParams(
            "complement census needs a prime field at desk scale".into(),
        ),
        other => other,
    })?;
    let threads = crate::worker_threads();
    let count = if threads <= 1 {
        let mut count = 0u64;
        for x in enumerate_projective(&field, n as usize, Some(cap))? {
            if self_dual_trivial(&x)? {
                count += 1;
            }
        }
        count
    } else {
        let subs: Vec<Subspace> = enumerate_projective(&field, n as usize, Some(cap))?.collect();
        std::thread::scope(|scope| -> Result<u64> {
            let mut handles = Vec::new();
            for chunk in subs.chunks(subs.len().div_ceil(threads)) {
                handles.push(scope.spawn(move || -> Result<u64> {
                    let mut count = 0u64;
                    for x in chunk {
                        if self_dual_trivial(x)? {
                            count += 1;
                        }
                    }
                    Ok(count)
                }));
            }
            let mut count = 0u64;
            for h in handles {
                count += h.join().expect("worker panicked")?;
            }
            Ok(count)
        })?
    };
    let complementable = BigUint::from(count);
    let ratio = count as f64 / total.to_f64().unwrap_or(f64::INFINITY);
    Ok(ComplementCensus {
        n,
        q,
        complementable,
        total,
        ratio,
        limit_constant: complement_limit_constant(q),
    })
}

fn self_dual_trivial(x: &Subspace) -> Result<bool> {
    // dim(X ∩ X^⊥) = dim X + dim X^⊥ - rank([X; X^⊥])
    let d = x.dual();
    let stacked = x.matrix().stack(d.matrix())?;
    Ok(stacked.rank() == x.ambient())
}

/// The limit of |V_q(n)|/|P_q(n)|: the infinite product of 1/(1 + q^-i),
/// evaluated to absolute accuracy 1e-9.
pub fn complement_limit_constant(q: u64) -> f64 {
    let mut product = 1.0f64;
    let mut term = 1.0 / q as f64;
    for _ in 1..=2048 {
        product /= 1.0 + term;
        term /= q as f64;
        if term < 1e-15 {
            break;
        }
    }
    product
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{partial_spread, spread};
    use crate::rank::{gabidulin, lift_code};
    use crate::space::Metric;

    #[test]
    fn spread_6_3_is_steiner() {
        let s = spread(6, 3, 2).unwrap();
        let report = coverage(&s, 1, None).unwrap();
        assert_eq!(report.total(), gaussian_binomial(6, 1, 2));
        assert!(report.is_steiner);
        assert!(verify_steiner(&s, 1).unwrap());
        assert!(verify_covering(&s, 1).unwrap());
        assert!(verify_spread(&s).unwrap());
    }

    #[test]
    fn full_grassmannian_is_trivial_design() {
        let f = Field::new(2, 1, None).unwrap();
        let words: Vec<Subspace> = enumerate_grassmannian(&f, 4, 2, None).unwrap().collect();
        let code = SubspaceCode::new(f, 4, Metric::Grassmannian, words, None).unwrap();
        let report = coverage(&code, 1, None).unwrap();
        // every 1-subspace lies in [3, 1]_2 = 7 two-subspaces
        assert_eq!(report.design_lambda, Some(7));
        assert!(report.trivial);
        assert!(verify_design(&code, 1, 7).unwrap());
    }

    #[test]
    fn empty_code_coverage() {
        let f = Field::new(2, 1, None).unwrap();
        let code = SubspaceCode::new(f, 4, Metric::Subspace, vec![], None).unwrap();
        let report = coverage(&code, 1, None).unwrap();
        assert_eq!(report.histogram.len(), 1);
        assert_eq!(report.histogram[&0], gaussian_binomial(4, 1, 2));
        assert!(!report.is_covering);
    }

    #[test]
    fn steiner_divisibility_cases() {
        // S_2(2, 3, 7): both quotients integral (existence open, conditions pass)
        let rows = steiner_divisibility(2, 3, 7, 2).unwrap();
        assert_eq!(rows.len(), 2);
        // i = 0: [7,2]/[3,2] = 2667/7; i = 1: [6,1]/[2,1] = 63/3
        assert_eq!(rows[0].1, BigRational::from_integer(381.into()));
        assert!(rows[0].2);
        assert_eq!(rows[1].1, BigRational::from_integer(21.into()));
        assert!(rows[1].2);
        // S_2(2, 3, 8): [7,1]/[2,1] = 127/3 not integral
        let rows = steiner_divisibility(2, 3, 8, 2).unwrap();
        assert!(!rows[1].2);
        // spread case passes
        let rows = steiner_divisibility(1, 3, 6, 2).unwrap();
        assert!(rows.iter().all(|r| r.2));
    }

    #[test]
    fn partial_spread_verdicts() {
        let s = spread(6, 3, 2).unwrap();
        let mut words = s.words().to_vec();
        words.pop();
        let partial = SubspaceCode::new(
            s.field().clone(),
            6,
            Metric::Grassmannian,
            words,
            None,
        )
        .unwrap();
        assert!(verify_partial_spread(&partial).unwrap());
        assert!(!verify_spread(&partial).unwrap());
        // two intersecting words fail both
        let f = Field::new(2, 1, None).unwrap();
        let x = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let y = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let code = SubspaceCode::new(f, 4, Metric::Grassmannian, vec![x, y], None).unwrap();
        assert!(!verify_partial_spread(&code).unwrap());
        assert!(!verify_spread(&code).unwrap());
    }

    #[test]
    fn std_on_lifted_mrd_2_2() {
        let code = lift_code(&gabidulin(2, 2, 2, 2).unwrap(), None).unwrap();
        let report = verify_std(&code, 1).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.group_count, 3);
        assert_eq!(report.group_size, 4);
    }

    #[test]
    fn std_on_lifted_mrd_3_3() {
        let code = lift_code(&gabidulin(3, 3, 2, 2).unwrap(), None).unwrap();
        let report = verify_std(&code, 2).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.group_count, 7);
        assert_eq!(report.group_size, 8);
    }

    #[test]
    fn spread_fails_std_property_3() {
        // a spread covers the zero-prefix region, so property 3 must fail
        let s = spread(4, 2, 2).unwrap();
        let report = verify_std(&s, 1).unwrap();
        assert!(!report.blocks_avoid_v0);
        assert!(!report.all_pass());
    }

    #[test]
    fn cover_check_cases() {
        let s = spread(6, 3, 2).unwrap();
        assert!(cover_check(&s).unwrap());
        // dual of the (5, 2, 2) partial spread: a (5, 2, 3) code of size 9
        let ps = partial_spread(5, 2, 2).unwrap();
        let dual = ps.dual();
        assert_eq!(dual.len(), 9);
        assert!(dual.words().iter().all(|w| w.dim() == 3));
        assert!(cover_check(&dual).unwrap());
        // a single proper word cannot cover
        let f = Field::new(2, 1, None).unwrap();
        let x = Subspace::span(&f, 4, &[vec![1, 0, 0, 0]]).unwrap();
        let code = SubspaceCode::new(f, 4, Metric::Subspace, vec![x], None).unwrap();
        assert!(!cover_check(&code).unwrap());
    }

    #[test]
    fn complement_census_tiny() {
        let c = complements_census(1, 2, None).unwrap();
        // {0} and F_2 both meet their dual trivially
        assert_eq!(c.complementable, BigUint::from(2u32));
        assert_eq!(c.total, BigUint::from(2u32));
        let c = complements_census(2, 2, None).unwrap();
        assert_eq!(c.total, BigUint::from(5u32));
        // direct check: {0}, F_2^2, span(10), span(01) qualify; span(11) is
        // self-orthogonal over GF(2)
        assert_eq!(c.complementable, BigUint::from(4u32));
    }

    #[test]
    fn limit_constants_match_reported_values() {
        assert!((complement_limit_constant(2) - 0.4194).abs() < 5e-5);
        assert!((complement_limit_constant(3) - 0.639).abs() < 5e-4);
        assert!((complement_limit_constant(4) - 0.7375).abs() < 5e-5);
        assert!((complement_limit_constant(256) - 0.9961).abs() < 5e-5);
    }
}
