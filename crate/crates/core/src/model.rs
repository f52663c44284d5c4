//! Domain types: decision vectors, uncertainty sets, problem structures,
//! cuts, and solve reports. All types are immutable after construction.

use crate::linalg::{self, Mat, PsdFactor};
use crate::Error;
use std::time::Duration;

/// A point of the feasible set, with entries in {0, 1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BinaryVector {
    bits: Vec<u8>,
}

impl BinaryVector {
    pub fn new(bits: Vec<u8>) -> Result<Self, Error> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidInput("binary vector entries must be 0 or 1".into()));
        }
        Ok(BinaryVector { bits })
    }

    pub fn zeros(n: usize) -> Self {
        BinaryVector { bits: vec![0; n] }
    }

    pub fn ones(n: usize) -> Self {
        BinaryVector { bits: vec![1; n] }
    }

    /// Vector with bit `i` of `mask` as entry `i`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        assert!(n <= 64);
        BinaryVector { bits: (0..n).map(|i| ((mask >> i) & 1) as u8).collect() }
    }

    pub fn from_indices(n: usize, ones: &[usize]) -> Self {
        let mut bits = vec![0u8; n];
        for &i in ones {
            bits[i] = 1;
        }
        BinaryVector { bits }
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        BinaryVector { bits: bools.iter().map(|&b| u8::from(b)).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn is_set(&self, i: usize) -> bool {
        self.bits[i] == 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Difference `self − other`, entrywise in {−1, 0, 1}.
    pub fn minus(&self, other: &BinaryVector) -> Vec<f64> {
        assert_eq!(self.len(), other.len(), "dimension mismatch in vector difference");
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| f64::from(a) - f64::from(b))
            .collect()
    }

    pub fn dot(&self, c: &[f64]) -> f64 {
        assert_eq!(self.len(), c.len(), "dimension mismatch in dot product");
        self.bits.iter().zip(c).map(|(&b, &v)| if b == 1 { v } else { 0.0 }).sum()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| f64::from(b)).collect()
    }

    pub fn to_bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self, Error> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "bitstring may only contain 0 and 1, found {ch:?}"
                    )))
                }
            }
        }
        Ok(BinaryVector { bits })
    }
}

/// Hyperbox `×ᵢ [ĉᵢ − dᵢ, ĉᵢ + dᵢ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet {
    center: Vec<f64>,
    halfwidth: Vec<f64>,
}

impl IntervalSet {
    pub fn new(center: Vec<f64>, halfwidth: Vec<f64>) -> Result<Self, Error> {
        if center.len() != halfwidth.len() {
            return Err(Error::InvalidInput("interval center/halfwidth lengths differ".into()));
        }
        if center.iter().chain(&halfwidth).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("interval data must be finite".into()));
        }
        if halfwidth.iter().any(|&d| d < 0.0) {
            return Err(Error::InvalidInput("interval halfwidths must be nonnegative".into()));
        }
        Ok(IntervalSet { center, halfwidth })
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn halfwidth(&self) -> &[f64] {
        &self.halfwidth
    }

    pub fn lower(&self, i: usize) -> f64 {
        self.center[i] - self.halfwidth[i]
    }

    pub fn upper(&self, i: usize) -> f64 {
        self.center[i] + self.halfwidth[i]
    }
}

/// Explicit list of scenarios `c¹, …, cᵏ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSet {
    scenarios: Vec<Vec<f64>>,
}

impl FiniteSet {
    pub fn new(scenarios: Vec<Vec<f64>>) -> Result<Self, Error> {
        if scenarios.is_empty() {
            return Err(Error::InvalidInput("finite set needs at least one scenario".into()));
        }
        let n = scenarios[0].len();
        if scenarios.iter().any(|s| s.len() != n) {
            return Err(Error::InvalidInput("finite set scenarios have unequal lengths".into()));
        }
        if scenarios.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("scenario entries must be finite".into()));
        }
        Ok(FiniteSet { scenarios })
    }

    pub fn dimension(&self) -> usize {
        self.scenarios[0].len()
    }

    pub fn count(&self) -> usize {
        self.scenarios.len()
    }

    pub fn scenario(&self, j: usize) -> &[f64] {
        &self.scenarios[j]
    }

    pub fn scenarios(&self) -> &[Vec<f64>] {
        &self.scenarios
    }
}

/// Ellipsoid `{c : (c − ĉ)ᵀ D (c − ĉ) ≤ 1}` with `D ≻ 0` diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisParallelEllipsoid {
    center: Vec<f64>,
    diag: Vec<f64>,
}

impl AxisParallelEllipsoid {
    pub fn new(center: Vec<f64>, diag: Vec<f64>) -> Result<Self, Error> {
        if center.len() != diag.len() {
            return Err(Error::InvalidInput("ellipsoid center/diag lengths differ".into()));
        }
        if center.iter().chain(&diag).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("ellipsoid data must be finite".into()));
        }
        if diag.iter().any(|&d| d <= 0.0) {
            return Err(Error::InvalidInput("diagonal of D must be strictly positive".into()));
        }
        Ok(AxisParallelEllipsoid { center, diag })
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Diagonal entries of `D`.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn inv_diag(&self, i: usize) -> f64 {
        1.0 / self.diag[i]
    }

    /// Equivalent general form with `C = diag(√(1/Dᵢᵢ))`.
    pub fn as_general_ellipsoid(&self) -> GeneralEllipsoid {
        let radii: Vec<f64> = self.diag.iter().map(|&d| (1.0 / d).sqrt()).collect();
        GeneralEllipsoid::new(self.center.clone(), Mat::diag(&radii))
            .expect("diagonal shape is always admissible")
    }
}

/// Ellipsoid `{ĉ + Cξ : ‖ξ‖₂ ≤ 1}`. `C` may be rank-deficient.
#[derive(Clone, Debug)]
pub struct GeneralEllipsoid {
    center: Vec<f64>,
    shape: Mat,
    q: Mat,
    factor: PsdFactor,
}

impl GeneralEllipsoid {
    /// Builds the set and validates that `Q = CCᵀ` factorizes as positive
    /// semidefinite (pivot tolerance 1e−10 · max diagonal).
    pub fn new(center: Vec<f64>, shape: Mat) -> Result<Self, Error> {
        let n = center.len();
        if shape.rows() != n || shape.cols() != n {
            return Err(Error::InvalidInput(format!(
                "shape matrix must be {n}×{n}, got {}×{}",
                shape.rows(),
                shape.cols()
            )));
        }
        if center.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("ellipsoid center must be finite".into()));
        }
        let q = shape.gram();
        let factor = pivoted_psd_factor(&q)?;
        Ok(GeneralEllipsoid { center, shape, q, factor })
    }

    pub fn from_rows(center: Vec<f64>, rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        GeneralEllipsoid::new(center, Mat::from_rows(rows)?)
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn shape(&self) -> &Mat {
        &self.shape
    }

    /// `Q = CCᵀ`.
    pub fn gram(&self) -> &Mat {
        &self.q
    }

    /// `Cᵀ w`.
    pub fn shape_t_vec(&self, w: &[f64]) -> Vec<f64> {
        self.shape.t_mul_vec(w)
    }

    /// Squared ellipsoidal gauge of `c − ĉ`, or `None` when `c − ĉ` lies
    /// outside the range of `C` (relative residual above `tol`).
    pub fn gauge_sq(&self, c: &[f64], tol: f64) -> Option<f64> {
        let r: Vec<f64> = c.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        let scale = r
            .iter()
            .fold(1.0f64, |m, &v| m.max(v.abs()))
            .max(self.shape.max_abs_diagonal())
            .max(self.shape.max_abs_off_diagonal());
        let (nsq, resid) = self.factor.min_norm_sq(&r);
        if resid > tol * scale {
            return None;
        }
        Some(nsq)
    }
}

impl PartialEq for GeneralEllipsoid {
    fn eq(&self, other: &Self) -> bool {
        self.center == other.center && self.shape == other.shape
    }
}

fn pivoted_psd_factor(q: &Mat) -> Result<PsdFactor, Error> {
    linalg::pivoted_cholesky(q, 1e-10)
}

/// Tagged union over the four uncertainty-set classes.
#[derive(Clone, Debug, PartialEq)]
pub enum UncertaintySet {
    Interval(IntervalSet),
    Finite(FiniteSet),
    AxisParallel(AxisParallelEllipsoid),
    Ellipsoid(GeneralEllipsoid),
}

impl UncertaintySet {
    pub fn dimension(&self) -> usize {
        match self {
            UncertaintySet::Interval(s) => s.dimension(),
            UncertaintySet::Finite(s) => s.dimension(),
            UncertaintySet::AxisParallel(s) => s.dimension(),
            UncertaintySet::Ellipsoid(s) => s.dimension(),
        }
    }

    /// Geometric center where one is defined (finite sets only when k = 1).
    pub fn center(&self) -> Option<Vec<f64>> {
        match self {
            UncertaintySet::Interval(s) => Some(s.center().to_vec()),
            UncertaintySet::AxisParallel(s) => Some(s.center().to_vec()),
            UncertaintySet::Ellipsoid(s) => Some(s.center().to_vec()),
            UncertaintySet::Finite(s) => {
                if s.count() == 1 {
                    Some(s.scenario(0).to_vec())
                } else {
                    None
                }
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            UncertaintySet::Interval(_) => "interval",
            UncertaintySet::Finite(_) => "finite",
            UncertaintySet::AxisParallel(_) => "axis",
            UncertaintySet::Ellipsoid(_) => "ellipsoid",
        }
    }
}

impl From<IntervalSet> for UncertaintySet {
    fn from(s: IntervalSet) -> Self {
        UncertaintySet::Interval(s)
    }
}

impl From<FiniteSet> for UncertaintySet {
    fn from(s: FiniteSet) -> Self {
        UncertaintySet::Finite(s)
    }
}

impl From<AxisParallelEllipsoid> for UncertaintySet {
    fn from(s: AxisParallelEllipsoid) -> Self {
        UncertaintySet::AxisParallel(s)
    }
}

impl From<GeneralEllipsoid> for UncertaintySet {
    fn from(s: GeneralEllipsoid) -> Self {
        UncertaintySet::Ellipsoid(s)
    }
}

/// Directed graph whose arcs biject with decision indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<(usize, usize)>,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
    topo: Option<Vec<usize>>,
}

impl Graph {
    pub fn new(
        node_count: usize,
        source: usize,
        sink: usize,
        arcs: Vec<(usize, usize)>,
    ) -> Result<Self, Error> {
        if source >= node_count || sink >= node_count {
            return Err(Error::InvalidInput("source/sink outside node range".into()));
        }
        if source == sink {
            return Err(Error::InvalidInput("source and sink must differ".into()));
        }
        for &(u, v) in &arcs {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidInput("arc endpoint outside node range".into()));
            }
            if u == v {
                return Err(Error::InvalidInput("self-loops are not allowed".into()));
            }
        }
        let mut out_arcs = vec![Vec::new(); node_count];
        let mut in_arcs = vec![Vec::new(); node_count];
        for (idx, &(u, v)) in arcs.iter().enumerate() {
            out_arcs[u].push(idx);
            in_arcs[v].push(idx);
        }
        let topo = topological_order(node_count, &arcs);
        let g = Graph { node_count, source, sink, arcs, out_arcs, in_arcs, topo };
        if !g.sink_reachable() {
            return Err(Error::Infeasible("graph admits no s-t path".into()));
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, idx: usize) -> (usize, usize) {
        self.arcs[idx]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_arcs(&self, node: usize) -> &[usize] {
        &self.out_arcs[node]
    }

    pub fn in_arcs(&self, node: usize) -> &[usize] {
        &self.in_arcs[node]
    }

    /// Topological node order, if the graph is acyclic.
    pub fn topo_order(&self) -> Option<&[usize]> {
        self.topo.as_deref()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo.is_some()
    }

    fn sink_reachable(&self) -> bool {
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(u) = stack.pop() {
            if u == self.sink {
                return true;
            }
            for &a in &self.out_arcs[u] {
                let v = self.arcs[a].1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Whether `x` is the incidence vector of a simple s-t path.
    pub fn is_path(&self, x: &BinaryVector) -> bool {
        if x.len() != self.arcs.len() {
            return false;
        }
        let mut out_deg = vec![0usize; self.node_count];
        let mut in_deg = vec![0usize; self.node_count];
        let mut selected = 0usize;
        for (idx, &(u, v)) in self.arcs.iter().enumerate() {
            if x.is_set(idx) {
                out_deg[u] += 1;
                in_deg[v] += 1;
                selected += 1;
            }
        }
        if out_deg[self.source] != 1 || in_deg[self.source] != 0 {
            return false;
        }
        if in_deg[self.sink] != 1 || out_deg[self.sink] != 0 {
            return false;
        }
        // walk from source following selected arcs
        let mut u = self.source;
        let mut steps = 0usize;
        let mut visited = vec![false; self.node_count];
        visited[u] = true;
        while u != self.sink {
            let mut next = None;
            for &a in &self.out_arcs[u] {
                if x.is_set(a) {
                    if next.is_some() {
                        return false;
                    }
                    next = Some(self.arcs[a].1);
                }
            }
            match next {
                Some(v) => {
                    if visited[v] {
                        return false;
                    }
                    visited[v] = true;
                    u = v;
                    steps += 1;
                }
                None => return false,
            }
        }
        steps == selected
    }
}

fn topological_order(node_count: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; node_count];
    let mut adj = vec![Vec::new(); node_count];
    for &(u, v) in arcs {
        indeg[v] += 1;
        adj[u].push(v);
    }
    let mut queue: Vec<usize> = (0..node_count).filter(|&i| indeg[i] == 0).collect();
    queue.sort_unstable();
    let mut order = Vec::with_capacity(node_count);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        order.push(u);
        for &v in &adj[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push(v);
            }
        }
    }
    if order.len() == node_count {
        Some(order)
    } else {
        None
    }
}

/// Feasible-set structure of the combinatorial problem.
#[derive(Clone, Debug, PartialEq)]
pub enum ProblemStructure {
    Unconstrained,
    ShortestPath(Graph),
}

/// Ground set plus feasible-set description.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinatorialProblem {
    dimension: usize,
    structure: ProblemStructure,
}

impl CombinatorialProblem {
    pub fn unconstrained(dimension: usize) -> Self {
        CombinatorialProblem { dimension, structure: ProblemStructure::Unconstrained }
    }

    pub fn shortest_path(graph: Graph) -> Self {
        let dimension = graph.arc_count();
        CombinatorialProblem { dimension, structure: ProblemStructure::ShortestPath(graph) }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn structure(&self) -> &ProblemStructure {
        &self.structure
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.structure {
            ProblemStructure::ShortestPath(g) => Some(g),
            ProblemStructure::Unconstrained => None,
        }
    }

    pub fn is_feasible(&self, x: &BinaryVector) -> bool {
        if x.len() != self.dimension {
            return false;
        }
        match &self.structure {
            ProblemStructure::Unconstrained => true,
            ProblemStructure::ShortestPath(g) => g.is_path(x),
        }
    }
}

/// One generated constraint of the scenario relaxation.
#[derive(Clone, Debug, PartialEq)]
pub enum CutKind {
    /// Fixed scenario `c` with its precomputed nominal optimum.
    Type1 { scenario: Vec<f64>, nominal_opt: f64 },
    /// Fixed rival solution `y`.
    Type2 { rival: BinaryVector },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cut {
    pub kind: CutKind,
    pub creation_iteration: usize,
}

/// Separation log entry: everything produced at one cut generation,
/// regardless of which cut type the master keeps.
#[derive(Clone, Debug)]
pub struct SeparationRecord {
    pub at: BinaryVector,
    pub scenario: Vec<f64>,
    pub rival: BinaryVector,
    pub scenario_nominal_opt: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    TimeLimit,
    Infeasible,
}

/// Per-iteration trace of the relaxation loop.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub iteration: usize,
    pub lower: f64,
    pub upper: f64,
    pub cut_kind: &'static str,
    pub master_time: Duration,
    pub sub_time: Duration,
}

/// Result of a regret solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub regret: f64,
    pub incumbent: BinaryVector,
    pub lower_bound: f64,
    pub cuts: Vec<Cut>,
    pub iterations: usize,
    pub master_time: Duration,
    pub sub_time: Duration,
    pub trace: Vec<IterationRecord>,
    pub separations: Vec<SeparationRecord>,
    pub stability_incidents: u32,
}

impl SolveReport {
    pub fn gap(&self) -> f64 {
        self.regret - self.lower_bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support;

    #[test]
    fn binary_vector_difference_stays_in_range() {
        let x = BinaryVector::from_mask(0b1010, 4);
        let y = BinaryVector::from_mask(0b0110, 4);
        let d = x.minus(&y);
        assert!(d.iter().all(|&v| v == -1.0 || v == 0.0 || v == 1.0));
        assert_eq!(d, vec![0.0, 0.0, -1.0, 1.0]);
    }

    #[test]
    fn bitstring_round_trip() {
        let x = BinaryVector::from_bitstring("01101").unwrap();
        assert_eq!(x.to_bitstring(), "01101");
        assert!(BinaryVector::from_bitstring("012").is_err());
    }

    #[test]
    fn axis_to_general_unit_ball() {
        let e = AxisParallelEllipsoid::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let g = e.as_general_ellipsoid();
        assert_eq!(g.shape(), &Mat::identity(2));
    }

    #[test]
    fn axis_to_general_radius() {
        let e = AxisParallelEllipsoid::new(vec![5.0], vec![0.25]).unwrap();
        let g = e.as_general_ellipsoid();
        assert_eq!(g.shape().get(0, 0), 2.0);
        assert_eq!(g.center(), &[5.0]);
    }

    #[test]
    fn axis_to_general_partition_gadget_shape() {
        // a = (1, 2): ĉ = (2, 4), D = diag(1/24, 1/48)
        let e = AxisParallelEllipsoid::new(vec![2.0, 4.0], vec![1.0 / 24.0, 1.0 / 48.0]).unwrap();
        let g = e.as_general_ellipsoid();
        assert!((g.shape().get(0, 0) - 24f64.sqrt()).abs() < 1e-12);
        assert!((g.shape().get(1, 1) - 48f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn axis_and_general_support_agree_on_random_directions() {
        // support round-trip between the two ellipsoid encodings
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(1..6);
            let center: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..4.0)).collect();
            let axis = AxisParallelEllipsoid::new(center, diag).unwrap();
            let gen = axis.as_general_ellipsoid();
            let w: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(0..2u8))).collect();
            let a = support::support(&UncertaintySet::AxisParallel(axis.clone()), &w).unwrap();
            let b = support::support(&UncertaintySet::Ellipsoid(gen), &w).unwrap();
            let scale = a.value.abs().max(1.0);
            assert!(
                (a.value - b.value).abs() <= 1e-9 * scale,
                "support mismatch {} vs {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn degenerate_shape_is_accepted() {
        // rank-1 segment ellipsoid
        let mut rows = vec![vec![0.0; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            row[0] = (i + 1) as f64;
        }
        assert!(GeneralEllipsoid::from_rows(vec![0.0; 3], rows).is_ok());
    }

    #[test]
    fn graph_requires_st_path() {
        let err = Graph::new(3, 0, 2, vec![(0, 1)]);
        assert!(err.is_err());
        let ok = Graph::new(3, 0, 2, vec![(0, 1), (1, 2)]).unwrap();
        assert!(ok.is_acyclic());
        assert!(ok.is_path(&BinaryVector::from_mask(0b11, 2)));
        assert!(!ok.is_path(&BinaryVector::from_mask(0b01, 2)));
    }

    #[test]
    fn path_check_rejects_disconnected_selection() {
        // diamond: s=0, t=3
        let g = Graph::new(4, 0, 3, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(g.is_path(&BinaryVector::from_mask(0b0101, 4)));
        assert!(!g.is_path(&BinaryVector::from_mask(0b1111, 4)));
        assert!(!g.is_path(&BinaryVector::from_mask(0b0011, 4)));
    }
}
