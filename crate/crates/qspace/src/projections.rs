//! The projections method: a hypothetical q-Steiner system S_q(t, k, n) is
//! projected onto its first rho coordinates, which yields an exact linear
//! system over nonnegative-integer block multiplicities. No nonnegative
//! integer solution means no such Steiner system.
//!
//! Projection semantics: pi_rho maps a subspace to the span of its vectors'
//! first rho coordinates, and delta_X counts t-subspaces of F_q^n whose
//! projection EQUALS X (not just contains it). This reading uniquely
//! reproduces the worked constants (155, 496, 1024, 7, 6, 1, 4).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat::Mat;
use crate::space::{enumerate_grassmannian, gaussian_binomial, Subspace};

/// A variable or equation label: one subspace of F_q^rho.
fn label_of(s: &Subspace) -> String {
    if s.dim() == 0 {
        return "0".to_string();
    }
    s.rows()
        .iter()
        .map(|r| r.iter().map(|d| d.to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join("|")
}

/// The projection of a subspace of F_q^n onto its first rho coordinates.
pub fn project(s: &Subspace, rho: usize) -> Subspace {
    let rows: Vec<Vec<u32>> = s.rows().iter().map(|r| r[..rho].to_vec()).collect();
    Subspace::span(s.field(), rho, &rows).expect("projection rows have length rho")
}

/// Number of t-dimensional subspaces of F_q^n projecting exactly onto X
/// (a subspace of F_q^rho): [n-rho, t-i]_q * q^(i (n - rho - t + i)) for
/// i = dim X.
pub fn delta_count(x: &Subspace, n: u32, t: u32, rho: u32) -> Result<BigUint> {
    if rho as usize != x.ambient() || rho > n {
        return Err(Error::BadParams("rho must match the subspace's ambient".into()));
    }
    let i = x.dim() as u32;
    if i > t.min(rho) {
        return Err(Error::BadParams("dim X exceeds min(rho, t)".into()));
    }
    let q = x.field().q();
    let tail = n - rho;
    if t - i > tail {
        return Ok(BigUint::zero());
    }
    let kernel_choices = gaussian_binomial(tail, t - i, q);
    let lift_choices = BigUint::from(q).pow(i * (tail - (t - i)));
    Ok(kernel_choices * lift_choices)
}

/// Canonical representative K in F_q^n with projection Y: the rows of Y
/// extended by zeros plus unit tail vectors e_rho, ..., e_(rho+k-dimY-1).
/// None when no completion exists (k - dim Y > n - rho).
pub fn canonical_completion(y: &Subspace, n: u32, k: u32) -> Option<Subspace> {
    let rho = y.ambient();
    let j = y.dim();
    if (k as usize) < j || (k as usize - j) > n as usize - rho {
        return None;
    }
    let field = y.field().clone();
    let mut rows: Vec<Vec<u32>> = y
        .rows()
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.resize(n as usize, 0);
            v
        })
        .collect();
    for s in 0..(k as usize - j) {
        let mut e = vec![0u32; n as usize];
        e[rho + s] = 1;
        rows.push(e);
    }
    let m = Mat::from_rows(field, rows).expect("uniform rows");
    Some(Subspace::from_rref_unchecked(m))
}

/// Number of t-subspaces of a k-dim representative K (with projection Y)
/// whose projection equals X. Computed on the canonical completion; the
/// count is representative independent (tested, not assumed). Zero when X is
/// not contained in Y or no completion exists.
pub fn gamma_count(x: &Subspace, y: &Subspace, n: u32, k: u32, t: u32) -> Result<BigUint> {
    if x.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch);
    }
    if x.dim() > y.dim() || !y.contains_subspace(x)? {
        return Ok(BigUint::zero());
    }
    let Some(rep) = canonical_completion(y, n, k) else {
        return Ok(BigUint::zero());
    };
    gamma_count_on(&rep, x, t)
}

/// Count of t-subspaces of `rep` projecting exactly onto X.
pub fn gamma_count_on(rep: &Subspace, x: &Subspace, t: u32) -> Result<BigUint> {
    let rho = x.ambient();
    let field = x.field().clone();
    let k = rep.dim();
    let mut count = BigUint::zero();
    if (t as usize) > k {
        return Ok(count);
    }
    for coords in enumerate_grassmannian(&field, k, t as usize, None)? {
        let rows: Vec<Vec<u32>> = coords
            .matrix()
            .row_vecs()
            .iter()
            .map(|r| rep.matrix().left_mul(r).expect("length k"))
            .collect();
        let tsub = Subspace::span(&field, rep.ambient(), &rows)?;
        if project(&tsub, rho) == *x {
            count += 1u32;
        }
    }
    Ok(count)
}

/// One equation: delta_X = sum of Gamma_{X,Y} a_Y.
#[derive(Debug, Clone)]
pub struct Equation {
    pub label: String,
    pub x_dim: usize,
    pub constant: BigUint,
    /// (variable index, coefficient), sparse, ascending index.
    pub coeffs: Vec<(usize, BigUint)>,
}

/// A variable: one subspace Y of F_q^rho with an unknown multiplicity a_Y.
#[derive(Debug, Clone)]
pub struct Variable {
    pub label: String,
    pub dim: usize,
    /// No k-subspace of F_q^n projects onto this Y; a_Y is forced to 0.
    pub structurally_zero: bool,
}

/// The full projections system for S_q(t, k, n) at projection width rho.
#[derive(Debug)]
pub struct EquationSystem {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub q: u64,
    pub rho: u32,
    pub variables: Vec<Variable>,
    pub equations: Vec<Equation>,
}

/// Builds the system: variables are subspaces of F_q^rho of dimension up to
/// min(rho, k), equations come from subspaces of dimension up to min(rho, t).
pub fn build_system(n: u32, k: u32, t: u32, q: u64, rho: u32) -> Result<EquationSystem> {
    if !(t < k && k < n) || rho == 0 || rho > n {
        return Err(Error::BadParams("need t < k < n and 1 <= rho <= n".into()));
    }
    let p = u32::try_from(q).map_err(|_| Error::BadParams(format!("bad field order {}", q)))?;
    let field = Field::new(p, 1, None)?;
    let max_var_dim = (rho.min(k)) as usize;
    let max_eq_dim = (rho.min(t)) as usize;

    let mut variables = Vec::new();
    let mut var_subspaces = Vec::new();
    let mut var_index: BTreeMap<Subspace, usize> = BTreeMap::new();
    for dim in 0..=max_var_dim {
        for y in enumerate_grassmannian(&field, rho as usize, dim, None)? {
            let idx = variables.len();
            variables.push(Variable {
                label: label_of(&y),
                dim,
                structurally_zero: canonical_completion(&y, n, k).is_none(),
            });
            var_index.insert(y.clone(), idx);
            var_subspaces.push(y);
        }
    }

    let mut equations = Vec::new();
    for dim in 0..=max_eq_dim {
        for x in enumerate_grassmannian(&field, rho as usize, dim, None)? {
            let constant = delta_count(&x, n, t, rho)?;
            let mut coeffs = Vec::new();
            for (idx, y) in var_subspaces.iter().enumerate() {
                if y.dim() < dim {
                    continue;
                }
                let gamma = gamma_count(&x, y, n, k, t)?;
                if !gamma.is_zero() {
                    coeffs.push((idx, gamma));
                }
            }
            equations.push(Equation {
                label: label_of(&x),
                x_dim: dim,
                constant,
                coeffs,
            });
        }
    }
    Ok(EquationSystem {
        n,
        k,
        t,
        q,
        rho,
        variables,
        equations,
    })
}

impl EquationSystem {
    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }
    pub fn num_equations(&self) -> usize {
        self.equations.len()
    }

    /// Sum of all equation constants; equals [n, t]_q when rho covers every
    /// projection class (consistency identity).
    pub fn constant_sum(&self) -> BigUint {
        self.equations.iter().map(|e| e.constant.clone()).sum()
    }

    pub fn variable_index(&self, label: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.label == label)
    }

    /// Exact verification of an assignment against every equation.
    pub fn check_assignment(&self, assignment: &[BigUint]) -> bool {
        if assignment.len() != self.variables.len() {
            return false;
        }
        self.equations.iter().all(|eq| {
            let lhs: BigUint = eq
                .coeffs
                .iter()
                .map(|(i, c)| c * &assignment[*i])
                .sum();
            lhs == eq.constant
        })
    }
}

/// Outcome of the nonnegative-integer solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Infeasible,
    Unique(Vec<BigUint>),
    /// At least two solutions: the exact count (if the search completed
    /// within budget) and up to three sample solutions.
    Multiple {
        count: u64,
        complete: bool,
        samples: Vec<Vec<BigUint>>,
    },
    /// The node budget ran out before any conclusion.
    CapReached,
}

/// Exact nonnegative-integer solve: a propagation fixpoint on the original
/// equations, exact rational elimination over the remaining open variables,
/// and fail-first branching on whichever variable has the tightest interval,
/// re-eliminating at every node. The node budget bounds the search tree.
pub fn solve(
    system: &EquationSystem,
    pins: &[(String, BigUint)],
    node_cap: u64,
) -> Result<SolveOutcome> {
    let nvars = system.variables.len();
    let mut fixed: Vec<Option<BigUint>> = vec![None; nvars];
    for v in 0..nvars {
        if system.variables[v].structurally_zero {
            fixed[v] = Some(BigUint::zero());
        }
    }
    for (label, value) in pins {
        let Some(idx) = system.variable_index(label) else {
            return Err(Error::InconsistentPins(format!(
                "unknown variable '{}'",
                label
            )));
        };
        if let Some(prev) = &fixed[idx] {
            if prev != value {
                return Err(Error::InconsistentPins(format!(
                    "variable '{}' pinned to both {} and {}",
                    label, prev, value
                )));
            }
        }
        fixed[idx] = Some(value.clone());
    }

    let mut search = Search {
        system,
        budget: node_cap,
        hit_cap: false,
        count: 0,
        samples: Vec::new(),
    };
    search.explore(fixed);
    match (search.count, search.hit_cap) {
        (0, true) => Ok(SolveOutcome::CapReached),
        (0, false) => Ok(SolveOutcome::Infeasible),
        (1, false) => Ok(SolveOutcome::Unique(
            search.samples.into_iter().next().unwrap(),
        )),
        (count, hit_cap) => Ok(SolveOutcome::Multiple {
            count,
            complete: !hit_cap,
            samples: search.samples,
        }),
    }
}

/// Open-variable count above which a search node branches without running
/// the rational elimination (propagation alone prunes those levels).
const ELIMINATION_THRESHOLD: usize = 60;

enum Propagation {
    Contradiction,
    Done,
}

/// Bounds-consistency fixpoint on the original nonnegative-coefficient
/// equations. Per equation with residual r over its open variables:
/// ub(v) <= r / coeff(v); sum of coeff * ub over the open set must reach r;
/// and the slack of the others forces lb(v). Variables with lb = ub are
/// fixed, which feeds back into the residuals.
fn propagate(system: &EquationSystem, fixed: &mut [Option<BigUint>]) -> Propagation {
    let nvars = fixed.len();
    loop {
        // per-variable upper bounds from every equation
        let mut ub: Vec<Option<BigUint>> = vec![None; nvars];
        for eq in &system.equations {
            let mut residual = BigInt::from(eq.constant.clone());
            for (idx, c) in &eq.coeffs {
                if let Some(v) = &fixed[*idx] {
                    residual -= BigInt::from(c * v);
                }
            }
            if residual.is_negative() {
                return Propagation::Contradiction;
            }
            let residual = residual.to_biguint().expect("nonnegative");
            for (idx, c) in &eq.coeffs {
                if fixed[*idx].is_none() {
                    let bound = &residual / c;
                    ub[*idx] = Some(match ub[*idx].take() {
                        None => bound,
                        Some(b) => b.min(bound),
                    });
                }
            }
        }
        let mut changed = false;
        // a zero interval is a forced zero
        for (idx, bound) in ub.iter().enumerate() {
            if fixed[idx].is_none() && bound.as_ref().is_some_and(|b| b.is_zero()) {
                fixed[idx] = Some(BigUint::zero());
                changed = true;
            }
        }
        if changed {
            continue;
        }
        for eq in &system.equations {
            let mut residual = BigInt::from(eq.constant.clone());
            let mut open: Vec<(usize, &BigUint)> = Vec::new();
            for (idx, c) in &eq.coeffs {
                match &fixed[*idx] {
                    Some(v) => residual -= BigInt::from(c * v),
                    None => open.push((*idx, c)),
                }
            }
            // a fix made earlier in this sweep can expose a contradiction here
            if residual.is_negative() {
                return Propagation::Contradiction;
            }
            let residual = residual.to_biguint().expect("nonnegative");
            if open.is_empty() {
                if !residual.is_zero() {
                    return Propagation::Contradiction;
                }
                continue;
            }
            // reachability: the open variables must be able to cover the residual
            let reach: BigUint = open
                .iter()
                .map(|(idx, c)| *c * ub[*idx].as_ref().expect("open var has a bound"))
                .sum();
            if reach < residual {
                return Propagation::Contradiction;
            }
            // slack-based lower bounds: v >= ceil((residual - reach_without_v)/c)
            for (idx, c) in &open {
                let others: BigUint = open
                    .iter()
                    .filter(|(j, _)| j != idx)
                    .map(|(j, cj)| *cj * ub[*j].as_ref().unwrap())
                    .sum();
                let v_ub = ub[*idx].as_ref().unwrap();
                if others >= residual {
                    // no forced lower bound; but integrality still fixes the
                    // last open variable of an equation when it stands alone
                    if open.len() == 1 {
                        if (&residual % *c).is_zero() {
                            fixed[*idx] = Some(&residual / *c);
                            changed = true;
                        } else {
                            return Propagation::Contradiction;
                        }
                    }
                    continue;
                }
                let need = &residual - &others;
                let lb = (&need + *c - BigUint::one()) / *c;
                if &lb > v_ub {
                    return Propagation::Contradiction;
                }
                if &lb == v_ub {
                    fixed[*idx] = Some(lb);
                    changed = true;
                } else if open.len() == 1 {
                    if (&residual % *c).is_zero() {
                        fixed[*idx] = Some(&residual / *c);
                        changed = true;
                    } else {
                        return Propagation::Contradiction;
                    }
                }
            }
        }
        if !changed {
            return Propagation::Done;
        }
    }
}

struct Search<'a> {
    system: &'a EquationSystem,
    budget: u64,
    hit_cap: bool,
    count: u64,
    samples: Vec<Vec<BigUint>>,
}

impl Search<'_> {
    /// Tightest interval bound for an open variable: min over equations
    /// containing it of residual / coefficient.
    fn upper_bound(&self, fixed: &[Option<BigUint>], var: usize) -> BigUint {
        let mut best: Option<BigUint> = None;
        for eq in &self.system.equations {
            let Some((_, coeff)) = eq.coeffs.iter().find(|(i, _)| *i == var) else {
                continue;
            };
            let mut residual = BigInt::from(eq.constant.clone());
            for (idx, c) in &eq.coeffs {
                if let Some(v) = &fixed[*idx] {
                    residual -= BigInt::from(c * v);
                }
            }
            let residual = residual.to_biguint().unwrap_or_default();
            let ub = residual / coeff;
            best = Some(match best {
                None => ub,
                Some(b) => b.min(ub),
            });
        }
        // every live variable occurs in some equation with positive
        // coefficient; an unconstrained variable can only be zero
        best.unwrap_or_default()
    }

    fn record(&mut self, assignment: Vec<BigUint>) {
        debug_assert!(self.system.check_assignment(&assignment));
        self.count += 1;
        if self.samples.len() < 3 {
            self.samples.push(assignment);
        }
    }

    fn explore(&mut self, mut fixed: Vec<Option<BigUint>>) {
        if self.hit_cap {
            return;
        }
        if self.budget == 0 {
            self.hit_cap = true;
            return;
        }
        self.budget -= 1;
        if matches!(propagate(self.system, &mut fixed), Propagation::Contradiction) {
            return;
        }
        let open_vars: Vec<usize> = (0..fixed.len()).filter(|&v| fixed[v].is_none()).collect();
        if open_vars.is_empty() {
            let assignment: Vec<BigUint> = fixed.into_iter().map(|v| v.unwrap()).collect();
            if self.system.check_assignment(&assignment) {
                self.record(assignment);
            }
            return;
        }
        // rational elimination is decisive but costly; run it only when the
        // open set is small enough for it to pay off, and branch otherwise
        if open_vars.len() > ELIMINATION_THRESHOLD {
            self.branch(&fixed, &open_vars);
            return;
        }
        match eliminate(self.system, &fixed, &open_vars) {
            Elimination::Inconsistent => (),
            Elimination::Solved(pivots, free_vars) if free_vars.is_empty() => {
                // fully determined rational solution; accept iff integral >= 0
                let mut assignment = fixed;
                for (var, value) in &pivots {
                    if !value.is_integer() || value.is_negative() {
                        return;
                    }
                    assignment[*var] = Some(value.to_integer().to_biguint().unwrap());
                }
                let assignment: Vec<BigUint> =
                    assignment.into_iter().map(|v| v.unwrap()).collect();
                if self.system.check_assignment(&assignment) {
                    self.record(assignment);
                }
            }
            Elimination::Solved(_, _) => self.branch(&fixed, &open_vars),
        }
    }

    /// Fail-first branching: the open variable with the smallest interval
    /// (lowest index breaking ties), values descending so that saturating
    /// assignments surface contradictions and solution corners soonest.
    fn branch(&mut self, fixed: &[Option<BigUint>], open_vars: &[usize]) {
        let (var, ub) = open_vars
            .iter()
            .map(|&v| (v, self.upper_bound(fixed, v)))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("open set is nonempty");
        let mut v = ub;
        loop {
            let mut child = fixed.to_vec();
            child[var] = Some(v.clone());
            self.explore(child);
            if self.hit_cap || v.is_zero() {
                break;
            }
            v -= 1u32;
        }
    }
}

enum Elimination {
    Inconsistent,
    /// Pivot variables with their resolved rational values (meaningful when
    /// the free set is empty) and the free variables.
    Solved(Vec<(usize, BigRational)>, Vec<usize>),
}

/// Gauss-Jordan over the rationals on the open columns; fixed variables fold
/// into the right-hand sides.
fn eliminate(
    system: &EquationSystem,
    fixed: &[Option<BigUint>],
    open_vars: &[usize],
) -> Elimination {
    let col_of: BTreeMap<usize, usize> = open_vars
        .iter()
        .enumerate()
        .map(|(c, &v)| (v, c))
        .collect();
    let ncols = open_vars.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for eq in &system.equations {
        let mut row = vec![BigRational::zero(); ncols + 1];
        let mut rhs = BigInt::from(eq.constant.clone());
        let mut any = false;
        for (idx, c) in &eq.coeffs {
            match &fixed[*idx] {
                Some(v) => rhs -= BigInt::from(c * v),
                None => {
                    row[col_of[idx]] = BigRational::from_integer(BigInt::from(c.clone()));
                    any = true;
                }
            }
        }
        row[ncols] = BigRational::from_integer(rhs);
        if any || !row[ncols].is_zero() {
            rows.push(row);
        }
    }
    // Gauss-Jordan
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut target = 0usize;
    for col in 0..ncols {
        let Some(src) = (target..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(src, target);
        let lead = rows[target][col].clone();
        for entry in rows[target].iter_mut() {
            *entry /= lead.clone();
        }
        for r in 0..rows.len() {
            if r != target && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c2 in 0..=ncols {
                    let delta = &factor * &rows[target][c2];
                    rows[r][c2] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        target += 1;
        if target == rows.len() {
            break;
        }
    }
    for row in rows.iter().skip(target) {
        if !row[ncols].is_zero() {
            return Elimination::Inconsistent;
        }
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let free_vars: Vec<usize> = free_cols.iter().map(|&c| open_vars[c]).collect();
    let mut pivots = Vec::new();
    for (prow, &pcol) in pivot_cols.iter().enumerate() {
        pivots.push((open_vars[pcol], rows[prow][ncols].clone()));
    }
    Elimination::Solved(pivots, free_vars)
}

/// Per-rho feasibility consolidation: "excluded by divisibility", or for each
/// rho the solve outcome. Never claims existence, only non-exclusion.
#[derive(Debug)]
pub struct FeasibilityReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub q: u64,
    pub divisibility_pass: bool,
    pub per_rho: Vec<(u32, SolveOutcome)>,
    /// false when some stage proves nonexistence
    pub not_excluded: bool,
}

pub fn feasibility_report(
    n: u32,
    k: u32,
    t: u32,
    q: u64,
    rho_max: u32,
    node_cap: u64,
) -> Result<FeasibilityReport> {
    let divisibility = crate::verify::steiner_divisibility(t, k, n, q)?;
    let divisibility_pass = divisibility.iter().all(|r| r.2);
    let mut per_rho = Vec::new();
    let mut not_excluded = divisibility_pass;
    if divisibility_pass {
        for rho in 1..=rho_max {
            let system = build_system(n, k, t, q, rho)?;
            let outcome = solve(&system, &[], node_cap)?;
            if outcome == SolveOutcome::Infeasible {
                not_excluded = false;
            }
            per_rho.push((rho, outcome));
            if !not_excluded {
                break;
            }
        }
    }
    Ok(FeasibilityReport {
        n,
        k,
        t,
        q,
        divisibility_pass,
        per_rho,
        not_excluded,
    })
}
