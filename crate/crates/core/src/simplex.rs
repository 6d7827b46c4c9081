//! Dense bounded-variable primal simplex.
//!
//! Minimizes `c·f` subject to sparse inequality rows `a·f ≤ b` and the box
//! `0 ≤ f_i ≤ 1`. The solver always terminates on a *vertex* of the feasible
//! polytope (a basic feasible solution), which downstream pseudo-codeword
//! analysis depends on; interior-point methods would not qualify.
//!
//! Implementation notes:
//! - slack variables turn rows into equalities; slacks live in `[0, ∞)`;
//! - rows with negative right-hand sides get phase-1 artificials, minimized
//!   to zero before the real objective runs;
//! - pricing is Dantzig (most negative reduced cost) until a run of
//!   degenerate pivots, then Bland's smallest-index rule, which cannot cycle;
//! - all tie-breaks are by lowest index, so identical inputs (including row
//!   order) produce identical bases bit for bit.

use crate::error::{Error, Result};

/// Row feasibility tolerance: `a·f ≤ b + FEAS_TOL` counts as satisfied.
pub const FEAS_TOL: f64 = 1e-8;
/// Reduced-cost optimality tolerance.
pub const COST_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots before switching to Bland pricing.
const STALL_LIMIT: usize = 64;
/// Smallest pivot magnitude trusted on a drifted tableau. All pristine
/// coefficients here are ±1, so entries this small are elimination
/// fill-in at best and accumulated drift at worst; pivoting on drift
/// produces a numerically singular basis. Below this, the tableau is
/// rebuilt and the pivot re-derived from fresh numbers before being
/// believed.
const RELIABLE_PIVOT: f64 = 1e-9;

/// One inequality `Σ coeffs_j · f_j ≤ rhs`. Column indices must be strictly
/// increasing.
#[derive(Clone, Debug)]
pub struct SparseRow {
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl SparseRow {
    pub fn new(coeffs: Vec<(usize, f64)>, rhs: f64) -> Self {
        debug_assert!(coeffs.windows(2).all(|w| w[0].0 < w[1].0));
        SparseRow { coeffs, rhs }
    }

    pub fn dot(&self, f: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, c)| c * f[j]).sum()
    }
}

/// Minimization problem over `[0,1]^n` cut by inequality rows.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub rows: Vec<SparseRow>,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, rows: Vec<SparseRow>) -> Self {
        LpProblem { objective, rows }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

/// A solved problem. `f` holds structural variable values; `basis` holds the
/// sorted indices of basic variables (structurals first, then slacks by row),
/// which identifies the vertex.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub f: Vec<f64>,
    pub objective: f64,
    pub basis: Vec<usize>,
}

pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    Solver::new(p)?.run()
}

/// Appends rows to the problem and re-solves. Equivalent to a cold solve of
/// the augmented problem.
pub fn resolve_with_new_rows(p: &mut LpProblem, new_rows: Vec<SparseRow>) -> Result<LpSolution> {
    p.rows.extend(new_rows);
    solve(p)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
}

struct Solver {
    n: usize,      // structurals
    m: usize,      // rows
    n_art: usize,  // phase-1 artificials
    cols: usize,   // n + m + n_art
    tab: Vec<f64>, // m rows of `cols` tableau entries
    vals: Vec<f64>,
    basis: Vec<usize>,
    state: Vec<VarState>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    reduced: Vec<f64>,
    objective: Vec<f64>,
    obj_val: f64,
    bland: bool,
    stall: usize,
    original: LpProblem,
    init_tab: Vec<f64>, // pristine initial tableau for refactorization
    init_rhs: Vec<f64>, // pristine right-hand side (after sign flips)
    steps_since_refresh: usize,
}

/// Steps between tableau refactorizations. Long pivot sequences on highly
/// degenerate cut LPs accumulate elimination error; rebuilding from pristine
/// data caps it.
const REFRESH_INTERVAL: usize = 64;

impl Solver {
    fn new(p: &LpProblem) -> Result<Self> {
        let n = p.n_vars();
        let m = p.rows.len();
        for (ri, row) in p.rows.iter().enumerate() {
            if let Some(&(j, _)) = row.coeffs.iter().find(|&&(j, _)| j >= n) {
                return Err(Error::Param(format!(
                    "row {ri} references variable {j}, but the problem has {n} variables"
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|&(_, c)| !c.is_finite()) {
                return Err(Error::Param(format!(
                    "row {ri} contains a non-finite value"
                )));
            }
        }
        if p.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::Param("objective contains a non-finite value".into()));
        }

        let artificial_rows: Vec<usize> = (0..m).filter(|&r| p.rows[r].rhs < 0.0).collect();
        let n_art = artificial_rows.len();
        let cols = n + m + n_art;

        let mut tab = vec![0.0; m * cols];
        let mut vals = vec![0.0; m];
        let mut basis = vec![0usize; m];
        let mut state = vec![VarState::AtLower; cols];
        let lower = vec![0.0; cols];
        let mut upper = vec![1.0; cols];
        for j in n..cols {
            upper[j] = f64::INFINITY; // slacks and artificials
        }

        let mut art = 0;
        for r in 0..m {
            let row = &p.rows[r];
            let flip = if row.rhs < 0.0 { -1.0 } else { 1.0 };
            for &(j, c) in &row.coeffs {
                tab[r * cols + j] = flip * c;
            }
            tab[r * cols + n + r] = flip; // slack column
            if flip < 0.0 {
                let aj = n + m + art;
                tab[r * cols + aj] = 1.0;
                basis[r] = aj;
                state[aj] = VarState::Basic(r);
                vals[r] = -row.rhs;
                art += 1;
            } else {
                basis[r] = n + r;
                state[n + r] = VarState::Basic(r);
                vals[r] = row.rhs;
            }
        }

        Ok(Solver {
            n,
            m,
            n_art,
            cols,
            init_tab: tab.clone(),
            init_rhs: vals.clone(),
            tab,
            vals,
            basis,
            state,
            lower,
            upper,
            reduced: vec![0.0; cols],
            objective: vec![0.0; cols],
            obj_val: 0.0,
            bland: false,
            stall: 0,
            original: p.clone(),
            steps_since_refresh: 0,
        })
    }

    fn run(mut self) -> Result<LpSolution> {
        if self.n_art > 0 {
            let mut phase1 = vec![0.0; self.cols];
            for j in self.n + self.m..self.cols {
                phase1[j] = 1.0;
            }
            self.load_objective(phase1);
            self.optimize()?;
            if self.obj_val > FEAS_TOL {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    f: Vec::new(),
                    objective: f64::NAN,
                    basis: Vec::new(),
                });
            }
            // Artificials are pinned at zero for phase 2.
            for j in self.n + self.m..self.cols {
                self.upper[j] = 0.0;
            }
        }
        let mut c = vec![0.0; self.cols];
        c[..self.n].copy_from_slice(&self.original.objective);
        self.load_objective(c);
        self.bland = false;
        self.stall = 0;
        self.optimize()?;
        self.extract()
    }

    /// Drives `iterate` to optimality under periodically refreshed numbers:
    /// a final refactorization may expose further improvement that the drifted
    /// tableau hid, in which case iteration resumes.
    fn optimize(&mut self) -> Result<()> {
        for _ in 0..10 {
            self.iterate()?;
            self.refactorize()?;
            if self.price().is_none() {
                return Ok(());
            }
        }
        Err(Error::Anomaly(
            "simplex: optimality unstable across refactorizations".into(),
        ))
    }

    /// Installs an objective and recomputes reduced costs from the current
    /// basis: d_j = c_j - Σ_r c_basis(r) · T[r][j].
    fn load_objective(&mut self, c: Vec<f64>) {
        self.reduced.copy_from_slice(&c);
        self.obj_val = 0.0;
        for r in 0..self.m {
            let cb = c[self.basis[r]];
            if cb != 0.0 {
                let row = &self.tab[r * self.cols..(r + 1) * self.cols];
                for j in 0..self.cols {
                    self.reduced[j] -= cb * row[j];
                }
                self.obj_val += cb * self.vals[r];
            }
        }
        for j in 0..self.cols {
            if let VarState::Basic(_) = self.state[j] {
                self.reduced[j] = 0.0;
            } else {
                let x = self.nonbasic_value(j);
                if x != 0.0 {
                    self.obj_val += c[j] * x;
                }
            }
        }
        self.objective = c;
    }

    /// Rebuilds the tableau from pristine data for the current basis,
    /// discarding accumulated elimination error, then recomputes basic values
    /// and reduced costs. The basis matrix is nonsingular by the simplex
    /// invariant, so full elimination with partial pivoting always succeeds
    /// short of catastrophic conditioning.
    fn refactorize(&mut self) -> Result<()> {
        let (m, cols) = (self.m, self.cols);
        let mut t = self.init_tab.clone();
        let mut rhs = self.init_rhs.clone();
        let mut used = vec![false; m];
        let mut rowmap = vec![usize::MAX; m];
        let mut scratch = vec![0.0; cols];
        for k in 0..m {
            let col = self.basis[k];
            let mut best = usize::MAX;
            let mut bw = 1e-12;
            for (p, &taken) in used.iter().enumerate() {
                let w = t[p * cols + col].abs();
                if !taken && w > bw {
                    bw = w;
                    best = p;
                }
            }
            if best == usize::MAX {
                return Err(Error::Anomaly(
                    "simplex: singular basis during refactorization".into(),
                ));
            }
            used[best] = true;
            rowmap[k] = best;
            let inv = 1.0 / t[best * cols + col];
            for x in &mut t[best * cols..(best + 1) * cols] {
                *x *= inv;
            }
            t[best * cols + col] = 1.0;
            rhs[best] *= inv;
            scratch.copy_from_slice(&t[best * cols..(best + 1) * cols]);
            let rhs_best = rhs[best];
            for p in 0..m {
                if p == best {
                    continue;
                }
                let factor = t[p * cols + col];
                if factor != 0.0 {
                    let row = &mut t[p * cols..(p + 1) * cols];
                    for (x, s) in row.iter_mut().zip(scratch.iter()) {
                        *x -= factor * s;
                    }
                    row[col] = 0.0;
                    rhs[p] -= factor * rhs_best;
                }
            }
        }
        for k in 0..m {
            let src = rowmap[k];
            self.tab[k * cols..(k + 1) * cols].copy_from_slice(&t[src * cols..(src + 1) * cols]);
            self.vals[k] = rhs[src];
        }
        // Fold in nonbasic variables sitting at a nonzero bound (structurals
        // at their upper bound; every lower bound is zero).
        for j in 0..cols {
            if self.state[j] == VarState::AtUpper {
                let u = self.upper[j];
                if u != 0.0 {
                    for k in 0..m {
                        let w = self.tab[k * cols + j];
                        if w != 0.0 {
                            self.vals[k] -= w * u;
                        }
                    }
                }
            }
        }
        let c = self.objective.clone();
        self.load_objective(c);
        self.steps_since_refresh = 0;
        Ok(())
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        match self.state[j] {
            VarState::AtLower => self.lower[j],
            VarState::AtUpper => self.upper[j],
            VarState::Basic(r) => self.vals[r],
        }
    }

    /// Entering variable under the current pricing rule, with its direction
    /// (+1 when increasing from the lower bound, -1 when decreasing from the
    /// upper bound). None means optimal.
    fn price(&self) -> Option<(usize, f64)> {
        let mut pick: Option<(usize, f64, f64)> = None;
        for j in 0..self.cols {
            let (dir, gain) = match self.state[j] {
                VarState::AtLower => (1.0, -self.reduced[j]),
                VarState::AtUpper => (-1.0, self.reduced[j]),
                VarState::Basic(_) => continue,
            };
            if self.upper[j] - self.lower[j] <= 0.0 {
                continue; // pinned variable (phase-2 artificial)
            }
            if gain <= COST_TOL {
                continue;
            }
            if self.bland {
                return Some((j, dir));
            }
            match pick {
                Some((_, _, g)) if g >= gain => {}
                _ => pick = Some((j, dir, gain)),
            }
        }
        pick.map(|(j, d, _)| (j, d))
    }

    /// Two-pass bounded ratio test (Harris). Pass one finds the largest step
    /// that keeps every basic variable within its bounds relaxed by
    /// `FEAS_TOL`; the tolerance lives in the value domain, so any basic
    /// variable overshoots its bound by at most `FEAS_TOL` regardless of
    /// pivot magnitudes. Pass two selects, among rows whose strict limit fits
    /// under that cap, the one with the largest pivot magnitude (smallest
    /// basic index under Bland), and the step becomes that row's own strict
    /// limit so the leaving variable lands exactly on the bound it is
    /// assigned. Returns the step and the blocking row; None means the
    /// entering variable flips to its opposite bound.
    fn ratio(&self, j: usize, dir: f64) -> (f64, Option<usize>) {
        let span = self.upper[j] - self.lower[j];
        let strict = |r: usize| -> Option<(f64, f64)> {
            let w = dir * self.tab[r * self.cols + j];
            if w.abs() <= 1e-11 {
                // Non-blocking: moving past this row perturbs its basic
                // variable by at most |w| * span <= 1e-11 < FEAS_TOL.
                return None;
            }
            let i = self.basis[r];
            let v = self.vals[r];
            let room = if w > 0.0 {
                v - self.lower[i]
            } else {
                self.upper[i] - v
            };
            Some((room, w.abs()))
        };

        let mut theta = span;
        let mut theta_row: Option<usize> = None;
        for r in 0..self.m {
            if let Some((room, wabs)) = strict(r) {
                let relaxed = (room + FEAS_TOL) / wabs;
                if relaxed < theta {
                    theta = relaxed;
                    theta_row = Some(r);
                }
            }
        }
        let Some(theta_row) = theta_row else {
            return (span, None);
        };

        let mut block: Option<(usize, f64, f64)> = None; // (row, strict limit, |w|)
        for r in 0..self.m {
            if let Some((room, wabs)) = strict(r) {
                let limit = (room / wabs).max(0.0);
                if limit > theta {
                    continue;
                }
                let better = match block {
                    None => true,
                    Some((br, _, bw)) => {
                        if self.bland {
                            self.basis[r] < self.basis[br]
                        } else {
                            wabs > bw
                        }
                    }
                };
                if better {
                    block = Some((r, limit, wabs));
                }
            }
        }
        match block {
            Some((r, limit, _)) => (limit, Some(r)),
            // Unreachable in IEEE arithmetic (the theta-achieving row always
            // qualifies); block on it anyway rather than flip past it.
            None => {
                let (room, wabs) = strict(theta_row).expect("theta row blocks");
                ((room / wabs).max(0.0), Some(theta_row))
            }
        }
    }

    fn iterate(&mut self) -> Result<()> {
        let cap = 10_000 + 50 * (self.m + self.cols);
        for _ in 0..cap {
            let Some((j, dir)) = self.price() else {
                return Ok(());
            };
            let (t, block) = self.ratio(j, dir);
            if t.is_infinite() {
                return Err(Error::Anomaly(
                    "simplex: unbounded improving ray on a box-constrained problem".into(),
                ));
            }
            if let Some(rb) = block {
                let w = self.tab[rb * self.cols + j].abs();
                if w < RELIABLE_PIVOT && self.steps_since_refresh > 0 {
                    self.refactorize()?;
                    continue; // re-price; drift entries vanish, real ones persist
                }
            }
            if t <= 1e-10 {
                self.stall += 1;
                if self.stall >= STALL_LIMIT && !self.bland {
                    self.bland = true;
                    self.refactorize()?;
                    continue; // re-price under fresh numbers
                }
            } else {
                self.stall = 0;
            }
            self.obj_val += self.reduced[j] * dir * t;
            match block {
                None => {
                    // Bound flip: no basis change.
                    for r in 0..self.m {
                        let w = self.tab[r * self.cols + j];
                        if w != 0.0 {
                            self.vals[r] -= dir * w * t;
                        }
                    }
                    self.state[j] = match self.state[j] {
                        VarState::AtLower => VarState::AtUpper,
                        VarState::AtUpper => VarState::AtLower,
                        VarState::Basic(_) => unreachable!("entering variable is nonbasic"),
                    };
                }
                Some(rb) => {
                    let entering_val = self.nonbasic_value(j) + dir * t;
                    for r in 0..self.m {
                        let w = self.tab[r * self.cols + j];
                        if w != 0.0 {
                            self.vals[r] -= dir * w * t;
                        }
                    }
                    let leaving = self.basis[rb];
                    let w_leave = dir * self.tab[rb * self.cols + j];
                    self.state[leaving] = if w_leave > 0.0 {
                        VarState::AtLower
                    } else {
                        VarState::AtUpper
                    };
                    self.pivot(rb, j);
                    self.basis[rb] = j;
                    self.state[j] = VarState::Basic(rb);
                    self.vals[rb] = entering_val;
                    self.steps_since_refresh += 1;
                    if self.steps_since_refresh >= REFRESH_INTERVAL {
                        self.refactorize()?;
                    }
                }
            }
        }
        Err(Error::Anomaly(format!(
            "simplex: no convergence within {cap} pivots"
        )))
    }

    /// Gaussian elimination step establishing column `j` as the unit column
    /// of row `rb`, applied to the tableau and the reduced-cost row.
    fn pivot(&mut self, rb: usize, j: usize) {
        let cols = self.cols;
        let pivot = self.tab[rb * cols + j];
        debug_assert!(pivot.abs() > 1e-12, "pivot {pivot}");
        let inv = 1.0 / pivot;
        for x in &mut self.tab[rb * cols..(rb + 1) * cols] {
            *x *= inv;
        }
        self.tab[rb * cols + j] = 1.0;
        let (head, rest) = self.tab.split_at_mut(rb * cols);
        let (prow, tail) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [f64]| {
            let factor = row[j];
            if factor != 0.0 {
                for (x, p) in row.iter_mut().zip(prow.iter()) {
                    *x -= factor * p;
                }
                row[j] = 0.0;
            }
        };
        for r in head.chunks_exact_mut(cols) {
            eliminate(r);
        }
        for r in tail.chunks_exact_mut(cols) {
            eliminate(r);
        }
        let factor = self.reduced[j];
        if factor != 0.0 {
            for (x, p) in self.reduced.iter_mut().zip(prow.iter()) {
                *x -= factor * p;
            }
            self.reduced[j] = 0.0;
        }
    }

    fn extract(self) -> Result<LpSolution> {
        let mut f = vec![0.0; self.n];
        for (j, slot) in f.iter_mut().enumerate() {
            *slot = self.nonbasic_value(j).clamp(0.0, 1.0);
        }
        // Validate against the original rows; tableau drift would surface here.
        for (ri, row) in self.original.rows.iter().enumerate() {
            let lhs = row.dot(&f);
            if lhs > row.rhs + 100.0 * FEAS_TOL {
                return Err(Error::Anomaly(format!(
                    "simplex: solution violates row {ri} by {}",
                    lhs - row.rhs
                )));
            }
        }
        let objective: f64 = self
            .original
            .objective
            .iter()
            .zip(&f)
            .map(|(c, x)| c * x)
            .sum();
        let mut basis = self.basis.clone();
        basis.sort_unstable();
        Ok(LpSolution {
            status: LpStatus::Optimal,
            f,
            objective,
            basis,
        })
    }
}
