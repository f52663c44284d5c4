//! Self-contained exact 0-1 optimizer: depth-first branch-and-bound with
//! interval-arithmetic bounds, light constraint propagation, and an
//! enumeration fallback at small sizes.
//!
//! The program class is exactly what the regret masters and the
//! cut-generation linearizations need: binary variables, sparse linear
//! constraints, and objectives that are either `min max` of affine rows
//! with optional Euclidean-norm terms, or `max`/`min` of an affine
//! expression plus square-root terms (square roots of affine expressions,
//! or of sums of envelope variables given by affine upper bounds).
//!
//! Euclidean norms are bounded per coordinate by interval arithmetic;
//! convex norm rows additionally get affine tangent under-estimators
//! generated at a few reference points. The bounds are weak on purpose;
//! exactness is certified against exhaustive enumeration in the tests
//! rather than by solver-grade pruning.

use crate::model::{BinaryVector, Graph};
use crate::Error;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// `‖offset + rows · x‖₂` with `rows` an m×n matrix stored by rows.
#[derive(Clone, Debug)]
pub struct NormTerm {
    pub offset: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

/// One row of a min-max objective: `constant + linearᵀx (+ ‖…‖₂)`.
#[derive(Clone, Debug)]
pub struct ObjRow {
    pub constant: f64,
    pub linear: Vec<f64>,
    pub norm: Option<NormTerm>,
}

/// Continuous helper variable defined as the minimum of affine upper
/// bounds; it enters the objective through a square-rooted sum.
#[derive(Clone, Debug)]
pub struct Envelope {
    /// Each bound is `(constant, coefficients)`.
    pub upper_bounds: Vec<(f64, Vec<f64>)>,
}

impl Envelope {
    pub fn value(&self, x: &BinaryVector) -> f64 {
        self.upper_bounds
            .iter()
            .map(|(c, a)| c + x.dot(a))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Concave objective contributions used by the subproblem linearizations.
#[derive(Clone, Debug)]
pub enum ConeTerm {
    /// `√(max(0, constant + linearᵀx))`. The optional `norm_hint` is an
    /// equivalent norm form of the same quantity, used only to tighten
    /// node bounds.
    SqrtAffine { constant: f64, linear: Vec<f64>, norm_hint: Option<NormTerm> },
    /// `√(max(0, Σⱼ hⱼ))` over envelope variables.
    SqrtEnvelopeSum { envelopes: Vec<Envelope>, norm_hint: Option<NormTerm> },
}

#[derive(Clone, Debug)]
pub struct Composite {
    pub sense: Sense,
    pub constant: f64,
    pub linear: Vec<f64>,
    pub cones: Vec<ConeTerm>,
}

#[derive(Clone, Debug)]
pub enum Objective {
    /// Minimize the pointwise maximum of the rows.
    MinOfRowMax(Vec<ObjRow>),
    Composite(Composite),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Sparse linear constraint `Σ aᵢ xᵢ  ⟨rel⟩  rhs`.
#[derive(Clone, Debug)]
pub struct LinearConstraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Combinatorial structure enforced by branching.
#[derive(Clone, Debug)]
pub enum FeasibilityHook {
    Free,
    /// The first `arc_count` variables are arc indicators of an s-t path.
    Path(Graph),
}

#[derive(Clone, Debug)]
pub struct BinaryProgram {
    pub n_vars: usize,
    pub objective: Objective,
    pub constraints: Vec<LinearConstraint>,
    pub hook: FeasibilityHook,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BipStatus {
    Optimal,
    TimeLimit,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct BipSolution {
    pub status: BipStatus,
    pub value: f64,
    pub assignment: Option<BinaryVector>,
    /// Proven bound on the optimum: lower bound when minimizing, upper
    /// bound when maximizing. Equals `value` on optimal exits.
    pub bound: f64,
    pub nodes: u64,
}

impl BinaryProgram {
    pub fn sense(&self) -> Sense {
        match &self.objective {
            Objective::MinOfRowMax(_) => Sense::Minimize,
            Objective::Composite(c) => c.sense,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        let n = self.n_vars;
        let check_len = |len: usize, what: &str| -> Result<(), Error> {
            if len != n {
                return Err(Error::InvalidInput(format!(
                    "{what} has length {len}, program has {n} variables"
                )));
            }
            Ok(())
        };
        match &self.objective {
            Objective::MinOfRowMax(rows) => {
                if rows.is_empty() {
                    return Err(Error::InvalidInput("min-max objective needs rows".into()));
                }
                for row in rows {
                    check_len(row.linear.len(), "objective row")?;
                    if let Some(norm) = &row.norm {
                        if norm.rows.len() != norm.offset.len() {
                            return Err(Error::InvalidInput(
                                "norm offset/rows dimensions differ".into(),
                            ));
                        }
                        for r in &norm.rows {
                            check_len(r.len(), "norm row")?;
                        }
                    }
                }
            }
            Objective::Composite(c) => {
                check_len(c.linear.len(), "objective")?;
                for cone in &c.cones {
                    match cone {
                        ConeTerm::SqrtAffine { linear, .. } => {
                            check_len(linear.len(), "sqrt term")?
                        }
                        ConeTerm::SqrtEnvelopeSum { envelopes, .. } => {
                            for env in envelopes {
                                for (_, a) in &env.upper_bounds {
                                    check_len(a.len(), "envelope bound")?;
                                }
                            }
                        }
                    }
                }
            }
        }
        for con in &self.constraints {
            for &(i, _) in &con.terms {
                if i >= n {
                    return Err(Error::InvalidInput(format!(
                        "constraint references variable {i}, program has {n}"
                    )));
                }
            }
        }
        if let FeasibilityHook::Path(g) = &self.hook {
            if g.arc_count() > n {
                return Err(Error::InvalidInput(
                    "path hook has more arcs than program variables".into(),
                ));
            }
        }
        Ok(())
    }

    /// Exact objective value at a complete assignment.
    pub fn objective_value(&self, x: &BinaryVector) -> f64 {
        match &self.objective {
            Objective::MinOfRowMax(rows) => rows
                .iter()
                .map(|row| row_value(row, x))
                .fold(f64::NEG_INFINITY, f64::max),
            Objective::Composite(c) => {
                let mut v = c.constant + x.dot(&c.linear);
                for cone in &c.cones {
                    v += cone_value(cone, x);
                }
                v
            }
        }
    }

    /// Whether `x` satisfies every linear constraint and the hook.
    pub fn is_feasible(&self, x: &BinaryVector) -> bool {
        let tol = 1e-9;
        for con in &self.constraints {
            let lhs: f64 = con.terms.iter().map(|&(i, a)| f64::from(x.bit(i)) * a).sum();
            let slack = tol * (1.0 + con.rhs.abs());
            let ok = match con.relation {
                Relation::Le => lhs <= con.rhs + slack,
                Relation::Ge => lhs >= con.rhs - slack,
                Relation::Eq => (lhs - con.rhs).abs() <= slack,
            };
            if !ok {
                return false;
            }
        }
        match &self.hook {
            FeasibilityHook::Free => true,
            FeasibilityHook::Path(g) => {
                let arcs = BinaryVector::new(x.bits()[..g.arc_count()].to_vec()).unwrap();
                g.is_path(&arcs)
            }
        }
    }
}

fn row_value(row: &ObjRow, x: &BinaryVector) -> f64 {
    let mut v = row.constant + x.dot(&row.linear);
    if let Some(norm) = &row.norm {
        v += norm_value(norm, x);
    }
    v
}

fn norm_value(norm: &NormTerm, x: &BinaryVector) -> f64 {
    norm.offset
        .iter()
        .zip(&norm.rows)
        .map(|(o, r)| {
            let c = o + x.dot(r);
            c * c
        })
        .sum::<f64>()
        .sqrt()
}

fn cone_value(cone: &ConeTerm, x: &BinaryVector) -> f64 {
    match cone {
        ConeTerm::SqrtAffine { constant, linear, .. } => {
            (constant + x.dot(linear)).max(0.0).sqrt()
        }
        ConeTerm::SqrtEnvelopeSum { envelopes, .. } => envelopes
            .iter()
            .map(|e| e.value(x))
            .sum::<f64>()
            .max(0.0)
            .sqrt(),
    }
}

/// Valid bound on the optimum over all completions of `partial`
/// (`None` = free): a lower bound when minimizing, an upper bound when
/// maximizing. Linear parts are bounded signwise; norm terms by interval
/// arithmetic on their argument coordinates.
pub fn node_bound(prog: &BinaryProgram, partial: &[Option<bool>]) -> f64 {
    assert_eq!(partial.len(), prog.n_vars);
    let compiled = Compiled::build(prog);
    let mut arrays = compiled.root_arrays();
    for (i, v) in partial.iter().enumerate() {
        if let Some(b) = v {
            compiled.apply_fix(&mut arrays, i, *b);
        }
    }
    compiled.bound(&arrays)
}

/// Exact solve within an optional time budget.
pub fn solve(prog: &BinaryProgram, budget: Option<Duration>) -> Result<BipSolution, Error> {
    prog.validate()?;
    if prog.n_vars <= 20 && matches!(prog.hook, FeasibilityHook::Free) {
        return Ok(solve_by_enumeration(prog, budget));
    }
    let compiled = Compiled::build(prog);
    let mut search = Search::new(prog, &compiled, budget);
    search.run();
    Ok(search.into_solution())
}

fn solve_by_enumeration(prog: &BinaryProgram, budget: Option<Duration>) -> BipSolution {
    let n = prog.n_vars;
    let sense = prog.sense();
    let start = Instant::now();
    let mut best: Option<(f64, BinaryVector)> = None;
    let total: u64 = 1u64 << n;
    for mask in 0..total {
        if mask % 8192 == 0 {
            if let Some(b) = budget {
                if start.elapsed() > b {
                    // the unscanned region carries no bound from this fallback
                    let bound = match sense {
                        Sense::Minimize => f64::NEG_INFINITY,
                        Sense::Maximize => f64::INFINITY,
                    };
                    let (value, assignment) = match best {
                        Some((v, a)) => (v, Some(a)),
                        None => (f64::NAN, None),
                    };
                    return BipSolution {
                        status: BipStatus::TimeLimit,
                        value,
                        assignment,
                        bound,
                        nodes: mask,
                    };
                }
            }
        }
        let x = BinaryVector::from_mask(mask, n);
        if !prog.is_feasible(&x) {
            continue;
        }
        let v = prog.objective_value(&x);
        let improves = match &best {
            None => true,
            Some((bv, _)) => match sense {
                Sense::Minimize => v < *bv,
                Sense::Maximize => v > *bv,
            },
        };
        if improves {
            best = Some((v, x));
        }
    }
    match best {
        Some((v, x)) => BipSolution {
            status: BipStatus::Optimal,
            value: v,
            assignment: Some(x),
            bound: v,
            nodes: total,
        },
        None => BipSolution {
            status: BipStatus::Infeasible,
            value: f64::NAN,
            assignment: None,
            bound: f64::NAN,
            nodes: total,
        },
    }
}

// ---------------------------------------------------------------------------
// compiled form and incremental node state

struct AffDef {
    coeffs: Vec<f64>,
    constant: f64,
}

struct NormDef {
    offset: Vec<f64>,
    rows: Vec<Vec<f64>>,
}

struct RowWiring {
    aff: usize,
    norm: Option<usize>,
    tangents: Vec<usize>,
}

enum ConeWiring {
    SqrtAffine { aff: usize, hint: Option<usize> },
    SqrtEnvelopeSum { envelopes: Vec<Vec<usize>>, hint: Option<usize> },
}

enum ObjWiring {
    MinOfRowMax(Vec<RowWiring>),
    Composite { constant: f64, aff: usize, cones: Vec<ConeWiring> },
}

struct ConWiring {
    terms: Vec<(usize, f64)>,
    relation: Relation,
    rhs: f64,
}

struct Compiled {
    n_vars: usize,
    affines: Vec<AffDef>,
    norms: Vec<NormDef>,
    wiring: ObjWiring,
    constraints: Vec<ConWiring>,
    var_cons: Vec<Vec<usize>>,
    branch_order: Vec<usize>,
    sense: Sense,
}

#[derive(Clone, Default)]
struct Arrays {
    fixed: Vec<i8>,
    n_free: usize,
    aff_lo: Vec<f64>,
    aff_hi: Vec<f64>,
    coord_lo: Vec<Vec<f64>>,
    coord_hi: Vec<Vec<f64>>,
    con_lo: Vec<f64>,
    con_hi: Vec<f64>,
}

fn push_aff(affines: &mut Vec<AffDef>, constant: f64, coeffs: Vec<f64>) -> usize {
    affines.push(AffDef { coeffs, constant });
    affines.len() - 1
}

fn push_norm(norms: &mut Vec<NormDef>, norm: &NormTerm) -> usize {
    norms.push(NormDef { offset: norm.offset.clone(), rows: norm.rows.clone() });
    norms.len() - 1
}

impl Compiled {
    fn build(prog: &BinaryProgram) -> Compiled {
        let n = prog.n_vars;
        let mut affines: Vec<AffDef> = Vec::new();
        let mut norms: Vec<NormDef> = Vec::new();

        let wiring = match &prog.objective {
            Objective::MinOfRowMax(rows) => {
                let mut wired = Vec::with_capacity(rows.len());
                for row in rows {
                    let aff = push_aff(&mut affines, row.constant, row.linear.clone());
                    let mut tangents = Vec::new();
                    let mut norm = None;
                    if let Some(nt) = &row.norm {
                        for reference in tangent_references(row, n) {
                            if let Some((c, coeffs)) = tangent_row(row, nt, &reference) {
                                tangents.push(push_aff(&mut affines, c, coeffs));
                            }
                        }
                        norm = Some(push_norm(&mut norms, nt));
                    }
                    wired.push(RowWiring { aff, norm, tangents });
                }
                ObjWiring::MinOfRowMax(wired)
            }
            Objective::Composite(c) => {
                let aff = push_aff(&mut affines, 0.0, c.linear.clone());
                let mut cones = Vec::with_capacity(c.cones.len());
                for cone in &c.cones {
                    cones.push(match cone {
                        ConeTerm::SqrtAffine { constant, linear, norm_hint } => {
                            ConeWiring::SqrtAffine {
                                aff: push_aff(&mut affines, *constant, linear.clone()),
                                hint: norm_hint.as_ref().map(|h| push_norm(&mut norms, h)),
                            }
                        }
                        ConeTerm::SqrtEnvelopeSum { envelopes, norm_hint } => {
                            let envs = envelopes
                                .iter()
                                .map(|e| {
                                    e.upper_bounds
                                        .iter()
                                        .map(|(cst, a)| push_aff(&mut affines, *cst, a.clone()))
                                        .collect()
                                })
                                .collect();
                            ConeWiring::SqrtEnvelopeSum {
                                envelopes: envs,
                                hint: norm_hint.as_ref().map(|h| push_norm(&mut norms, h)),
                            }
                        }
                    });
                }
                ObjWiring::Composite { constant: c.constant, aff, cones }
            }
        };

        let constraints: Vec<ConWiring> = prog
            .constraints
            .iter()
            .map(|c| ConWiring { terms: c.terms.clone(), relation: c.relation, rhs: c.rhs })
            .collect();
        let mut var_cons = vec![Vec::new(); n];
        for (ci, c) in constraints.iter().enumerate() {
            for &(i, _) in &c.terms {
                var_cons[i].push(ci);
            }
        }

        let branch_order = branching_order(prog);
        let sense = prog.sense();
        Compiled { n_vars: n, affines, norms, wiring, constraints, var_cons, branch_order, sense }
    }

    fn root_arrays(&self) -> Arrays {
        let aff_lo = self
            .affines
            .iter()
            .map(|a| a.constant + a.coeffs.iter().map(|&c| c.min(0.0)).sum::<f64>())
            .collect();
        let aff_hi = self
            .affines
            .iter()
            .map(|a| a.constant + a.coeffs.iter().map(|&c| c.max(0.0)).sum::<f64>())
            .collect();
        let mut coord_lo = Vec::with_capacity(self.norms.len());
        let mut coord_hi = Vec::with_capacity(self.norms.len());
        for nd in &self.norms {
            coord_lo.push(
                nd.offset
                    .iter()
                    .zip(&nd.rows)
                    .map(|(o, r)| o + r.iter().map(|&c| c.min(0.0)).sum::<f64>())
                    .collect(),
            );
            coord_hi.push(
                nd.offset
                    .iter()
                    .zip(&nd.rows)
                    .map(|(o, r)| o + r.iter().map(|&c| c.max(0.0)).sum::<f64>())
                    .collect(),
            );
        }
        let con_lo = self
            .constraints
            .iter()
            .map(|c| c.terms.iter().map(|&(_, a)| a.min(0.0)).sum::<f64>())
            .collect();
        let con_hi = self
            .constraints
            .iter()
            .map(|c| c.terms.iter().map(|&(_, a)| a.max(0.0)).sum::<f64>())
            .collect();
        Arrays {
            fixed: vec![-1; self.n_vars],
            n_free: self.n_vars,
            aff_lo,
            aff_hi,
            coord_lo,
            coord_hi,
            con_lo,
            con_hi,
        }
    }

    /// Fixes one free variable and updates every tracked interval.
    fn apply_fix(&self, arrays: &mut Arrays, var: usize, value: bool) {
        debug_assert_eq!(arrays.fixed[var], -1);
        arrays.fixed[var] = i8::from(value);
        arrays.n_free -= 1;
        let v = f64::from(u8::from(value));
        for (idx, aff) in self.affines.iter().enumerate() {
            let c = aff.coeffs[var];
            if c != 0.0 {
                arrays.aff_lo[idx] += c * v - c.min(0.0);
                arrays.aff_hi[idx] += c * v - c.max(0.0);
            }
        }
        for (t, nd) in self.norms.iter().enumerate() {
            for (k, row) in nd.rows.iter().enumerate() {
                let c = row[var];
                if c != 0.0 {
                    arrays.coord_lo[t][k] += c * v - c.min(0.0);
                    arrays.coord_hi[t][k] += c * v - c.max(0.0);
                }
            }
        }
        for &ci in &self.var_cons[var] {
            let a = self.constraints[ci]
                .terms
                .iter()
                .find(|&&(i, _)| i == var)
                .map(|&(_, a)| a)
                .unwrap();
            arrays.con_lo[ci] += a * v - a.min(0.0);
            arrays.con_hi[ci] += a * v - a.max(0.0);
        }
    }

    fn norm_interval(&self, arrays: &Arrays, t: usize) -> (f64, f64) {
        let lo = &arrays.coord_lo[t];
        let hi = &arrays.coord_hi[t];
        let mut min_sq = 0.0;
        let mut max_sq = 0.0;
        for k in 0..lo.len() {
            let l = lo[k];
            let h = hi[k];
            max_sq += l.abs().max(h.abs()).powi(2);
            if l > 0.0 {
                min_sq += l * l;
            } else if h < 0.0 {
                min_sq += h * h;
            }
        }
        (min_sq, max_sq)
    }

    /// Bound over all completions: lower bound when minimizing, upper
    /// bound when maximizing.
    fn bound(&self, arrays: &Arrays) -> f64 {
        match &self.wiring {
            ObjWiring::MinOfRowMax(rows) => {
                let mut best = f64::NEG_INFINITY;
                for row in rows {
                    let mut lo = arrays.aff_lo[row.aff];
                    if let Some(t) = row.norm {
                        let (min_sq, _) = self.norm_interval(arrays, t);
                        lo += min_sq.sqrt();
                        for &tg in &row.tangents {
                            lo = lo.max(arrays.aff_lo[tg]);
                        }
                    }
                    best = best.max(lo);
                }
                best
            }
            ObjWiring::Composite { constant, aff, cones } => {
                let maximize = self.sense == Sense::Maximize;
                let mut total =
                    *constant + if maximize { arrays.aff_hi[*aff] } else { arrays.aff_lo[*aff] };
                for cone in cones {
                    total += self.cone_bound(arrays, cone, maximize);
                }
                total
            }
        }
    }

    fn cone_bound(&self, arrays: &Arrays, cone: &ConeWiring, maximize: bool) -> f64 {
        match cone {
            ConeWiring::SqrtAffine { aff, hint } => {
                let mut arg = if maximize { arrays.aff_hi[*aff] } else { arrays.aff_lo[*aff] };
                if maximize {
                    if let Some(t) = hint {
                        let (_, max_sq) = self.norm_interval(arrays, *t);
                        arg = arg.min(max_sq);
                    }
                }
                arg.max(0.0).sqrt()
            }
            ConeWiring::SqrtEnvelopeSum { envelopes, hint } => {
                let vals = if maximize { &arrays.aff_hi } else { &arrays.aff_lo };
                let mut arg = 0.0;
                for env in envelopes {
                    arg += env.iter().map(|&b| vals[b]).fold(f64::INFINITY, f64::min);
                }
                if maximize {
                    if let Some(t) = hint {
                        let (_, max_sq) = self.norm_interval(arrays, *t);
                        arg = arg.min(max_sq);
                    }
                }
                arg.max(0.0).sqrt()
            }
        }
    }

    /// Propagates linear constraints after `seed_var` was fixed. Returns
    /// false on proven infeasibility; forced variables are fixed in place.
    fn propagate(&self, arrays: &mut Arrays, seed_var: usize) -> bool {
        let mut queue: Vec<usize> = self.var_cons[seed_var].clone();
        let mut head = 0;
        while head < queue.len() {
            let ci = queue[head];
            head += 1;
            let con = &self.constraints[ci];
            let tol = 1e-9 * (1.0 + con.rhs.abs());
            let lo = arrays.con_lo[ci];
            let hi = arrays.con_hi[ci];
            let le_active = matches!(con.relation, Relation::Le | Relation::Eq);
            let ge_active = matches!(con.relation, Relation::Ge | Relation::Eq);
            if le_active && lo > con.rhs + tol {
                return false;
            }
            if ge_active && hi < con.rhs - tol {
                return false;
            }
            for ti in 0..con.terms.len() {
                let (i, a) = con.terms[ti];
                if arrays.fixed[i] != -1 || a == 0.0 {
                    continue;
                }
                let lo = arrays.con_lo[ci];
                let hi = arrays.con_hi[ci];
                let mut forced: Option<bool> = None;
                if le_active {
                    if lo + (a - a.min(0.0)) > con.rhs + tol {
                        forced = Some(false);
                    } else if lo - a.min(0.0) > con.rhs + tol {
                        forced = Some(true);
                    }
                }
                if forced.is_none() && ge_active {
                    if hi + (a - a.max(0.0)) < con.rhs - tol {
                        forced = Some(false);
                    } else if hi - a.max(0.0) < con.rhs - tol {
                        forced = Some(true);
                    }
                }
                if let Some(val) = forced {
                    self.apply_fix(arrays, i, val);
                    for &cj in &self.var_cons[i] {
                        if !queue[head..].contains(&cj) {
                            queue.push(cj);
                        }
                    }
                }
            }
        }
        true
    }
}

/// Static branching priority: descending objective-coefficient
/// contribution, ties by index.
fn branching_order(prog: &BinaryProgram) -> Vec<usize> {
    let n = prog.n_vars;
    let mut scores = vec![0.0f64; n];
    match &prog.objective {
        Objective::MinOfRowMax(rows) => {
            for row in rows {
                for i in 0..n {
                    let mut s = row.linear[i].abs();
                    if let Some(nt) = &row.norm {
                        let col: f64 = nt.rows.iter().map(|r| r[i] * r[i]).sum();
                        s += col.sqrt();
                    }
                    scores[i] = scores[i].max(s);
                }
            }
        }
        Objective::Composite(c) => {
            for i in 0..n {
                scores[i] = c.linear[i].abs();
            }
            for cone in &c.cones {
                match cone {
                    ConeTerm::SqrtAffine { linear, .. } => {
                        for i in 0..n {
                            scores[i] += linear[i].abs();
                        }
                    }
                    ConeTerm::SqrtEnvelopeSum { envelopes, .. } => {
                        for env in envelopes {
                            for (_, a) in &env.upper_bounds {
                                for i in 0..n {
                                    scores[i] += a[i].abs();
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));
    order
}

/// References at which norm rows get tangent under-estimators: all-zeros,
/// all-ones, and the row's own affine minimizer.
fn tangent_references(row: &ObjRow, n: usize) -> Vec<BinaryVector> {
    let greedy =
        BinaryVector::from_bools(&row.linear.iter().map(|&c| c < 0.0).collect::<Vec<_>>());
    vec![BinaryVector::zeros(n), BinaryVector::ones(n), greedy]
}

/// Affine global under-estimator of `affine + ‖offset + Mx‖₂` obtained by
/// linearizing the norm at `reference` (Cauchy-Schwarz). `None` when the
/// norm vanishes there.
fn tangent_row(row: &ObjRow, norm: &NormTerm, reference: &BinaryVector) -> Option<(f64, Vec<f64>)> {
    let m = norm.offset.len();
    let mut u = vec![0.0; m];
    for k in 0..m {
        u[k] = norm.offset[k] + reference.dot(&norm.rows[k]);
    }
    let nrm: f64 = u.iter().map(|v| v * v).sum::<f64>().sqrt();
    if nrm <= 1e-12 {
        return None;
    }
    let w: Vec<f64> = u.iter().map(|v| v / nrm).collect();
    let mut constant = row.constant;
    for k in 0..m {
        constant += w[k] * norm.offset[k];
    }
    let mut coeffs = row.linear.clone();
    for k in 0..m {
        if w[k] == 0.0 {
            continue;
        }
        for (i, coeff) in coeffs.iter_mut().enumerate() {
            *coeff += w[k] * norm.rows[k][i];
        }
    }
    Some((constant, coeffs))
}

// ---------------------------------------------------------------------------
// search

struct Search<'a> {
    prog: &'a BinaryProgram,
    compiled: &'a Compiled,
    budget: Option<Duration>,
    start: Instant,
    incumbent: Option<(f64, BinaryVector)>,
    abandoned: f64,
    timed_out: bool,
    nodes: u64,
    buffers: Vec<Arrays>,
}

impl<'a> Search<'a> {
    fn new(prog: &'a BinaryProgram, compiled: &'a Compiled, budget: Option<Duration>) -> Self {
        let depth_cap = prog.n_vars + 2;
        let root = compiled.root_arrays();
        let buffers = vec![root; depth_cap];
        let abandoned = match compiled.sense {
            Sense::Minimize => f64::INFINITY,
            Sense::Maximize => f64::NEG_INFINITY,
        };
        Search {
            prog,
            compiled,
            budget,
            start: Instant::now(),
            incumbent: None,
            abandoned,
            timed_out: false,
            nodes: 0,
            buffers,
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(b) = self.budget {
            if self.nodes % 512 == 0 && self.start.elapsed() > b {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    fn beats_incumbent(&self, bound: f64) -> bool {
        match &self.incumbent {
            None => true,
            Some((best, _)) => match self.compiled.sense {
                Sense::Minimize => bound < *best,
                Sense::Maximize => bound > *best,
            },
        }
    }

    fn record_abandoned(&mut self, bound: f64) {
        self.abandoned = match self.compiled.sense {
            Sense::Minimize => self.abandoned.min(bound),
            Sense::Maximize => self.abandoned.max(bound),
        };
    }

    fn offer_leaf(&mut self, depth: usize) {
        let bits: Vec<u8> = self.buffers[depth].fixed.iter().map(|&v| v.max(0) as u8).collect();
        let x = BinaryVector::new(bits).unwrap();
        if !self.prog.is_feasible(&x) {
            return;
        }
        let v = self.prog.objective_value(&x);
        let improves = match &self.incumbent {
            None => true,
            Some((best, _)) => match self.compiled.sense {
                Sense::Minimize => v < *best,
                Sense::Maximize => v > *best,
            },
        };
        if improves {
            self.incumbent = Some((v, x));
        }
    }

    fn run(&mut self) {
        match &self.prog.hook {
            FeasibilityHook::Free => self.dfs_free(0),
            FeasibilityHook::Path(g) => {
                let g = g.clone();
                let mut visited = vec![false; g.node_count()];
                visited[g.source()] = true;
                self.dfs_path(&g, g.source(), 0, &mut visited);
            }
        }
    }

    /// Clones `buffers[depth]` into `buffers[depth+1]`, applies the fix
    /// plus propagation, and returns the child bound (NaN when the child
    /// is infeasible).
    fn make_child(&mut self, depth: usize, var: usize, value: bool) -> f64 {
        let (parent, child) = split_buffers(&mut self.buffers, depth);
        child.clone_from(parent);
        self.compiled.apply_fix(child, var, value);
        if !self.compiled.propagate(child, var) {
            return f64::NAN;
        }
        self.compiled.bound(child)
    }

    /// Branch over free variables in the static order.
    fn dfs_free(&mut self, depth: usize) {
        self.nodes += 1;
        if self.out_of_time() {
            let bound = self.compiled.bound(&self.buffers[depth]);
            self.record_abandoned(bound);
            return;
        }
        if self.buffers[depth].n_free == 0 {
            self.offer_leaf(depth);
            return;
        }
        let var = {
            let fixed = &self.buffers[depth].fixed;
            self.compiled
                .branch_order
                .iter()
                .copied()
                .find(|&i| fixed[i] == -1)
                .expect("free variable must exist")
        };

        let bound0 = self.make_child(depth, var, false);
        let bound1 = self.make_child(depth, var, true);
        let order = match self.compiled.sense {
            Sense::Minimize => {
                if bound1.is_nan() || (!bound0.is_nan() && bound0 <= bound1) {
                    [(false, bound0), (true, bound1)]
                } else {
                    [(true, bound1), (false, bound0)]
                }
            }
            Sense::Maximize => {
                if bound1.is_nan() || (!bound0.is_nan() && bound0 >= bound1) {
                    [(false, bound0), (true, bound1)]
                } else {
                    [(true, bound1), (false, bound0)]
                }
            }
        };
        for (val, bound) in order {
            if bound.is_nan() || !self.beats_incumbent(bound) {
                continue;
            }
            if self.timed_out {
                self.record_abandoned(bound);
                continue;
            }
            let b = self.make_child(depth, var, val);
            debug_assert!(!b.is_nan());
            // incumbent may have improved since the ordering pass
            if !self.beats_incumbent(b) {
                continue;
            }
            self.dfs_free(depth + 1);
        }
    }

    /// Branch by extending a partial s-t path; remaining non-arc variables
    /// fall back to free branching once the path is complete.
    fn dfs_path(&mut self, g: &Graph, node: usize, depth: usize, visited: &mut Vec<bool>) {
        self.nodes += 1;
        if self.out_of_time() {
            let bound = self.compiled.bound(&self.buffers[depth]);
            self.record_abandoned(bound);
            return;
        }
        if node == g.sink() {
            // close every still-free arc variable, then branch the rest
            {
                let (parent, child) = split_buffers(&mut self.buffers, depth);
                child.clone_from(parent);
            }
            let mut ok = true;
            for a in 0..g.arc_count() {
                if self.buffers[depth + 1].fixed[a] == -1 {
                    let child = &mut self.buffers[depth + 1];
                    self.compiled.apply_fix(child, a, false);
                    if !self.compiled.propagate(child, a) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let bound = self.compiled.bound(&self.buffers[depth + 1]);
                if self.beats_incumbent(bound) {
                    self.dfs_free(depth + 1);
                }
            }
            return;
        }
        for &a in g.out_arcs(node) {
            let state = self.buffers[depth].fixed[a];
            if state == 0 {
                continue;
            }
            let next = g.arc(a).1;
            if visited[next] {
                continue;
            }
            {
                let (parent, child) = split_buffers(&mut self.buffers, depth);
                child.clone_from(parent);
            }
            let mut feasible = true;
            if state == -1 {
                let child = &mut self.buffers[depth + 1];
                self.compiled.apply_fix(child, a, true);
                feasible = self.compiled.propagate(child, a);
            }
            if feasible {
                // competing arcs out of `node` and other arcs into `next`
                // can no longer be used
                for &other in g.out_arcs(node).iter().chain(g.in_arcs(next)) {
                    if other == a {
                        continue;
                    }
                    if self.buffers[depth + 1].fixed[other] == -1 {
                        let child = &mut self.buffers[depth + 1];
                        self.compiled.apply_fix(child, other, false);
                        if !self.compiled.propagate(child, other) {
                            feasible = false;
                            break;
                        }
                    }
                }
            }
            if !feasible {
                continue;
            }
            let bound = self.compiled.bound(&self.buffers[depth + 1]);
            if !self.beats_incumbent(bound) {
                continue;
            }
            if self.timed_out {
                self.record_abandoned(bound);
                continue;
            }
            visited[next] = true;
            self.dfs_path(g, next, depth + 1, visited);
            visited[next] = false;
        }
    }

    fn into_solution(self) -> BipSolution {
        let nodes = self.nodes;
        match (self.incumbent, self.timed_out) {
            (Some((v, x)), false) => BipSolution {
                status: BipStatus::Optimal,
                value: v,
                assignment: Some(x),
                bound: v,
                nodes,
            },
            (Some((v, x)), true) => {
                let bound = match self.compiled.sense {
                    Sense::Minimize => self.abandoned.min(v),
                    Sense::Maximize => self.abandoned.max(v),
                };
                BipSolution {
                    status: BipStatus::TimeLimit,
                    value: v,
                    assignment: Some(x),
                    bound,
                    nodes,
                }
            }
            (None, true) => BipSolution {
                status: BipStatus::TimeLimit,
                value: f64::NAN,
                assignment: None,
                bound: self.abandoned,
                nodes,
            },
            (None, false) => BipSolution {
                status: BipStatus::Infeasible,
                value: f64::NAN,
                assignment: None,
                bound: f64::NAN,
                nodes,
            },
        }
    }
}

/// Borrow `buffers[depth]` and `buffers[depth+1]` simultaneously.
fn split_buffers(buffers: &mut [Arrays], depth: usize) -> (&Arrays, &mut Arrays) {
    let (a, b) = buffers.split_at_mut(depth + 1);
    (&a[depth], &mut b[0])
}
