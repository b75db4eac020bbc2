//! Exact two-phase simplex with certificates.
//!
//! A dense tableau over [`Scalar`] with Bland's anticycling rule. Each
//! outcome carries a certificate that [`LpOutcome::verify`] checks exactly:
//! dual multipliers for optimality, a Farkas combination for infeasibility,
//! and a feasible point plus improving ray for unboundedness.

use super::scalar::Scalar;
use super::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vector,
    pub rel: Relation,
    pub rhs: Scalar,
}

/// `min/max c·x` subject to linear constraints. Variables are nonnegative
/// unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vector,
    pub constraints: Vec<Constraint>,
    pub free: Vec<bool>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    /// `duals[i]` multiplies constraint `i`. For `Min`: `Σ u_i a_i ≤ c` on
    /// nonnegative variables (equality on free ones), `u ≤ 0` on `≤` rows,
    /// `u ≥ 0` on `≥` rows and `u·b = value`. For `Max` all inequalities flip.
    Optimal {
        x: Vector,
        value: Scalar,
        duals: Vec<Scalar>,
    },
    /// Multipliers `λ` on the rows written as `a'·x ≤ b'` (`≥` rows negated):
    /// `λ ≥ 0` on inequality rows, `Σ λ_i a'_i ≥ 0` on nonnegative variables,
    /// `= 0` on free ones, and `Σ λ_i b'_i = -1`.
    Infeasible { farkas: Vec<Scalar> },
    /// A feasible point and a recession direction improving the objective.
    Unbounded { x: Vector, ray: Vector },
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: Vector::zeros(num_vars),
            constraints: Vec::new(),
            free: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn set_objective(&mut self, c: Vector) -> &mut Self {
        assert_eq!(c.dim(), self.num_vars());
        self.objective = c;
        self
    }

    pub fn set_free(&mut self, j: usize) -> &mut Self {
        self.free[j] = true;
        self
    }

    pub fn set_all_free(&mut self) -> &mut Self {
        self.free.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn add(&mut self, coeffs: Vector, rel: Relation, rhs: Scalar) -> &mut Self {
        assert_eq!(coeffs.dim(), self.num_vars());
        self.constraints.push(Constraint { coeffs, rel, rhs });
        self
    }

    pub fn solve(&self) -> LpOutcome {
        solve_lp(self)
    }

    fn is_feasible(&self, x: &Vector) -> bool {
        if x.dim() != self.num_vars() {
            return false;
        }
        let bounds_ok = x
            .iter()
            .zip(&self.free)
            .all(|(v, &free)| free || !v.is_negative());
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs = c.coeffs.dot(x);
                match c.rel {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn optimal_value(&self) -> Option<&Scalar> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&Vector> {
        match self {
            LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x, .. } => Some(x),
            LpOutcome::Infeasible { .. } => None,
        }
    }

    /// Check the attached certificate exactly against `lp`.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        let n = lp.num_vars();
        match self {
            LpOutcome::Optimal { x, value, duals } => {
                if !lp.is_feasible(x) || lp.objective.dot(x) != *value {
                    return false;
                }
                if duals.len() != lp.constraints.len() {
                    return false;
                }
                let flip = lp.sense == Sense::Max;
                let signs_ok = lp.constraints.iter().zip(duals).all(|(c, u)| {
                    let (u_le, u_ge) = if flip {
                        (!u.is_negative(), !u.is_positive())
                    } else {
                        (!u.is_positive(), !u.is_negative())
                    };
                    match c.rel {
                        Relation::Le => u_le,
                        Relation::Ge => u_ge,
                        Relation::Eq => true,
                    }
                });
                let combo = combine(lp, duals, false);
                let cols_ok = (0..n).all(|j| {
                    let (s, c) = (&combo[j], &lp.objective[j]);
                    if lp.free[j] {
                        s == c
                    } else if flip {
                        s >= c
                    } else {
                        s <= c
                    }
                });
                let dual_value: Scalar =
                    lp.constraints.iter().zip(duals).map(|(c, u)| u * &c.rhs).sum();
                signs_ok && cols_ok && dual_value == *value
            }
            LpOutcome::Infeasible { farkas } => {
                if farkas.len() != lp.constraints.len() {
                    return false;
                }
                let signs_ok = lp
                    .constraints
                    .iter()
                    .zip(farkas)
                    .all(|(c, l)| c.rel == Relation::Eq || !l.is_negative());
                let combo = combine(lp, farkas, true);
                let cols_ok = (0..n).all(|j| {
                    if lp.free[j] {
                        combo[j].is_zero()
                    } else {
                        !combo[j].is_negative()
                    }
                });
                let rhs: Scalar = lp
                    .constraints
                    .iter()
                    .zip(farkas)
                    .map(|(c, l)| match c.rel {
                        Relation::Ge => -(l * &c.rhs),
                        _ => l * &c.rhs,
                    })
                    .sum();
                signs_ok && cols_ok && rhs == Scalar::from_int(-1)
            }
            LpOutcome::Unbounded { x, ray } => {
                if !lp.is_feasible(x) || ray.dim() != n {
                    return false;
                }
                let bounds_ok = ray
                    .iter()
                    .zip(&lp.free)
                    .all(|(r, &free)| free || !r.is_negative());
                let rows_ok = lp.constraints.iter().all(|c| {
                    let d = c.coeffs.dot(ray);
                    match c.rel {
                        Relation::Le => !d.is_positive(),
                        Relation::Ge => !d.is_negative(),
                        Relation::Eq => d.is_zero(),
                    }
                });
                let gain = lp.objective.dot(ray);
                let improving = match lp.sense {
                    Sense::Min => gain.is_negative(),
                    Sense::Max => gain.is_positive(),
                };
                bounds_ok && rows_ok && improving
            }
        }
    }
}

/// `Σ m_i a_i`, negating `≥` rows when `le_form` is set.
fn combine(lp: &LinearProgram, mult: &[Scalar], le_form: bool) -> Vector {
    let mut out = Vector::zeros(lp.num_vars());
    for (c, m) in lp.constraints.iter().zip(mult) {
        if m.is_zero() {
            continue;
        }
        let m = if le_form && c.rel == Relation::Ge {
            -m
        } else {
            m.clone()
        };
        out = out.add_scaled(&m, &c.coeffs);
    }
    out
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
    basis: Vec<usize>,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            self.rhs[i] -= &(&f * &prhs);
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Scalar], j: usize) -> Scalar {
        let mut d = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                d -= &(&cost[b] * &self.rows[i][j]);
            }
        }
        d
    }

    /// Minimize `cost` over columns `< allowed`, Bland's rule.
    fn run(&mut self, cost: &[Scalar], allowed: usize) -> Phase {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(e) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Phase::Unbounded(e),
            }
        }
    }

    fn column_values(&self, ncols: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                v[b] = self.rhs[i].clone();
            }
        }
        v
    }

    /// `y_k = Σ_i cost_{B_i} T[i][art_k]`, i.e. `c_B B^{-1}`.
    fn simplex_multipliers(&self, cost: &[Scalar], art0: usize) -> Vec<Scalar> {
        (0..self.rows.len())
            .map(|k| {
                let mut y = Scalar::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() {
                        y += &(&cost[b] * &self.rows[i][art0 + k]);
                    }
                }
                y
            })
            .collect()
    }
}

/// Opt-in re-verification of every solve, process-wide.
pub mod audit {
    use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

    static ENABLED: AtomicBool = AtomicBool::new(false);
    static OPTIMAL: AtomicUsize = AtomicUsize::new(0);
    static INFEASIBLE: AtomicUsize = AtomicUsize::new(0);
    static UNBOUNDED: AtomicUsize = AtomicUsize::new(0);
    static FAILED: AtomicUsize = AtomicUsize::new(0);

    #[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
    pub struct Counts {
        pub optimal: usize,
        pub infeasible: usize,
        pub unbounded: usize,
        /// Outcomes whose certificate did not check.
        pub failed: usize,
    }

    impl Counts {
        pub fn total(&self) -> usize {
            self.optimal + self.infeasible + self.unbounded
        }
    }

    pub fn enable() {
        ENABLED.store(true, Ordering::SeqCst);
    }

    pub(super) fn enabled() -> bool {
        ENABLED.load(Ordering::Relaxed)
    }

    pub(super) fn record(outcome: &super::LpOutcome, ok: bool) {
        let c = match outcome {
            super::LpOutcome::Optimal { .. } => &OPTIMAL,
            super::LpOutcome::Infeasible { .. } => &INFEASIBLE,
            super::LpOutcome::Unbounded { .. } => &UNBOUNDED,
        };
        c.fetch_add(1, Ordering::Relaxed);
        if !ok {
            FAILED.fetch_add(1, Ordering::Relaxed);
        }
    }

    pub fn counts() -> Counts {
        Counts {
            optimal: OPTIMAL.load(Ordering::SeqCst),
            infeasible: INFEASIBLE.load(Ordering::SeqCst),
            unbounded: UNBOUNDED.load(Ordering::SeqCst),
            failed: FAILED.load(Ordering::SeqCst),
        }
    }
}

/// Solve `lp` exactly.
pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    let out = solve_unaudited(lp);
    if audit::enabled() {
        audit::record(&out, out.verify(lp));
    }
    out
}

fn solve_unaudited(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();
    let m = lp.constraints.len();

    // Structural columns: one per variable, plus a negative part for free ones.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut ncols = 0;
    for j in 0..n {
        if lp.free[j] {
            col_of.push((ncols, Some(ncols + 1)));
            ncols += 2;
        } else {
            col_of.push((ncols, None));
            ncols += 1;
        }
    }
    let nstruct = ncols;
    let mut slack_of = vec![None; m];
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rel != Relation::Eq {
            slack_of[i] = Some(ncols);
            ncols += 1;
        }
    }
    let art0 = ncols;
    let total = ncols + m;

    let mut sign = vec![Scalar::one(); m];
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Scalar::zero(); total];
        for j in 0..n {
            let (p, neg) = col_of[j];
            row[p] = c.coeffs[j].clone();
            if let Some(q) = neg {
                row[q] = -&c.coeffs[j];
            }
        }
        if let Some(s) = slack_of[i] {
            row[s] = match c.rel {
                Relation::Le => Scalar::one(),
                _ => Scalar::from_int(-1),
            };
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            b = -b;
            sign[i] = Scalar::from_int(-1);
        }
        row[art0 + i] = Scalar::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (art0..total).collect(),
    };

    // Phase I.
    let mut cost1 = vec![Scalar::zero(); total];
    for c in cost1.iter_mut().skip(art0) {
        *c = Scalar::one();
    }
    t.run(&cost1, total);
    let w: Scalar = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= art0)
        .map(|(_, v)| v.clone())
        .sum();
    if w.is_positive() {
        let y = t.simplex_multipliers(&cost1, art0);
        let farkas = lp
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let u = &sign[i] * &y[i];
                let l = match c.rel {
                    Relation::Ge => u,
                    _ => -u,
                };
                l / &w
            })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] >= art0 {
            if let Some(c) = (0..art0).find(|&c| !t.rows[r][c].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    // Phase II.
    let mut cost2 = vec![Scalar::zero(); total];
    for j in 0..n {
        let cj = match lp.sense {
            Sense::Min => lp.objective[j].clone(),
            Sense::Max => -&lp.objective[j],
        };
        let (p, neg) = col_of[j];
        if let Some(q) = neg {
            cost2[q] = -&cj;
        }
        cost2[p] = cj;
    }
    let phase = t.run(&cost2, art0);

    let vals = t.column_values(nstruct);
    let to_vars = |vals: &[Scalar]| -> Vector {
        Vector::new(
            col_of
                .iter()
                .map(|&(p, neg)| match neg {
                    Some(q) => &vals[p] - &vals[q],
                    None => vals[p].clone(),
                })
                .collect(),
        )
    };
    let x = to_vars(&vals);

    match phase {
        Phase::Optimal => {
            let y = t.simplex_multipliers(&cost2, art0);
            let duals = (0..m)
                .map(|i| {
                    let u = &sign[i] * &y[i];
                    match lp.sense {
                        Sense::Min => u,
                        Sense::Max => -u,
                    }
                })
                .collect();
            let value = lp.objective.dot(&x);
            LpOutcome::Optimal { x, value, duals }
        }
        Phase::Unbounded(e) => {
            let mut dir = vec![Scalar::zero(); nstruct];
            if e < nstruct {
                dir[e] = Scalar::one();
            }
            for (i, &b) in t.basis.iter().enumerate() {
                if b < nstruct {
                    dir[b] = -&t.rows[i][e];
                }
            }
            LpOutcome::Unbounded {
                x,
                ray: to_vars(&dir),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn small_optimum_with_duals() {
        // max x1 + x2, x1 + 2x2 <= 4, 3x1 + x2 <= 6
        let mut lp = LinearProgram::new(2, Sense::Max);
        lp.set_objective(Vector::from_ints(&[1, 1]))
            .add(Vector::from_ints(&[1, 2]), Relation::Le, s(4))
            .add(Vector::from_ints(&[3, 1]), Relation::Le, s(6));
        let out = lp.solve();
        assert!(out.verify(&lp));
        assert_eq!(out.optimal_value(), Some(&Scalar::ratio(14, 5)));
    }

    #[test]
    fn contradictory_bounds_give_farkas() {
        let mut lp = LinearProgram::new(1, Sense::Min);
        lp.set_free(0)
            .add(Vector::from_ints(&[1]), Relation::Le, s(-1))
            .add(Vector::from_ints(&[1]), Relation::Ge, s(1));
        let out = lp.solve();
        assert!(out.verify(&lp));
        match out {
            LpOutcome::Infeasible { farkas } => {
                assert_eq!(farkas, vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(2, Sense::Max);
        lp.set_objective(Vector::from_ints(&[1, 0]))
            .add(Vector::from_ints(&[0, 1]), Relation::Eq, s(0));
        let out = lp.solve();
        assert!(out.verify(&lp));
        match out {
            LpOutcome::Unbounded { ray, .. } => assert_eq!(ray, Vector::from_ints(&[1, 0])),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2, Sense::Min);
        lp.set_objective(Vector::from_ints(&[1, 2]))
            .add(Vector::from_ints(&[1, 1]), Relation::Eq, s(2))
            .add(Vector::from_ints(&[2, 2]), Relation::Eq, s(4));
        let out = lp.solve();
        assert!(out.verify(&lp));
        assert_eq!(out.optimal_value(), Some(&s(2)));
    }

    #[test]
    fn free_variables_and_ge_rows() {
        // min x - y, x >= -3, y <= 2, x + y >= -10 with x, y free
        let mut lp = LinearProgram::new(2, Sense::Min);
        lp.set_all_free()
            .set_objective(Vector::from_ints(&[1, -1]))
            .add(Vector::from_ints(&[1, 0]), Relation::Ge, s(-3))
            .add(Vector::from_ints(&[0, 1]), Relation::Le, s(2))
            .add(Vector::from_ints(&[1, 1]), Relation::Ge, s(-10));
        let out = lp.solve();
        assert!(out.verify(&lp));
        assert_eq!(out.optimal_value(), Some(&s(-5)));
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let mut lp = LinearProgram::new(1, Sense::Max);
        lp.set_objective(Vector::from_ints(&[1]))
            .add(Vector::from_ints(&[1]), Relation::Le, s(3));
        let bad = LpOutcome::Optimal {
            x: Vector::from_ints(&[2]),
            value: s(2),
            duals: vec![s(1)],
        };
        assert!(!bad.verify(&lp));
        let bad = LpOutcome::Optimal {
            x: Vector::from_ints(&[3]),
            value: s(3),
            duals: vec![s(2)],
        };
        assert!(!bad.verify(&lp));
    }
}
