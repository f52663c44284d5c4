//! Hardness-gadget constructors: instances whose regret answers a
//! partition question. Used as adversarial generators and for the
//! if-and-only-if property tests. All numbers are built in exact integer
//! arithmetic before conversion to floats.

use crate::linalg::Mat;
use crate::model::{
    AxisParallelEllipsoid, BinaryVector, CombinatorialProblem, FiniteSet, GeneralEllipsoid,
    Graph,
};

/// Exact partition decision by subset-sum dynamic programming: is there
/// an index set `I` with `Σ_{i∈I} aᵢ = Σ_{i∉I} aᵢ`?
pub fn partition_oracle(a: &[u64]) -> bool {
    assert!(a.iter().all(|&v| v >= 1), "partition items must be positive");
    let total: u64 = a.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let target = (total / 2) as usize;
    // bitset over reachable sums 0..=target
    let words = target / 64 + 1;
    let mut reach = vec![0u64; words];
    reach[0] = 1;
    for &v in a {
        let v = v as usize;
        if v > target {
            continue;
        }
        let (word_shift, bit_shift) = (v / 64, v % 64);
        for w in (word_shift..words).rev() {
            let mut shifted = reach[w - word_shift] << bit_shift;
            if bit_shift > 0 && w > word_shift {
                shifted |= reach[w - word_shift - 1] >> (64 - bit_shift);
            }
            reach[w] |= shifted;
        }
    }
    reach[target / 64] >> (target % 64) & 1 == 1
}

fn total(a: &[u64]) -> u64 {
    assert!(!a.is_empty() && a.iter().all(|&v| v >= 1), "need positive items");
    a.iter().sum()
}

/// Evaluation-hardness instance on the unconstrained problem:
/// `ĉᵢ = 2aᵢ`, `Dᵢᵢ = 1/(8·A·aᵢ)`. The regret of `x = 0` reaches the
/// threshold `A` exactly when the list partitions.
#[derive(Clone, Debug)]
pub struct UpEvalGadget {
    pub problem: CombinatorialProblem,
    pub set: AxisParallelEllipsoid,
    pub x: BinaryVector,
    pub threshold: f64,
    /// Exact integer views of the construction.
    pub total: u64,
    pub center_int: Vec<u64>,
    pub inv_diag_int: Vec<u64>,
}

pub fn gadget_up_eval(a: &[u64]) -> UpEvalGadget {
    let big_a = total(a);
    let n = a.len();
    let center_int: Vec<u64> = a.iter().map(|&v| 2 * v).collect();
    let inv_diag_int: Vec<u64> = a.iter().map(|&v| 8 * big_a * v).collect();
    let center: Vec<f64> = center_int.iter().map(|&v| v as f64).collect();
    let diag: Vec<f64> = inv_diag_int.iter().map(|&v| 1.0 / v as f64).collect();
    UpEvalGadget {
        problem: CombinatorialProblem::unconstrained(n),
        set: AxisParallelEllipsoid::new(center, diag).expect("gadget diag is positive"),
        x: BinaryVector::zeros(n),
        threshold: big_a as f64,
        total: big_a,
        center_int,
        inv_diag_int,
    }
}

/// Solution-hardness instance with two scenarios `±a`; a solution with
/// regret `A/2` exists exactly when the list partitions, and no solution
/// does better.
#[derive(Clone, Debug)]
pub struct FiniteSolveGadget {
    pub problem: CombinatorialProblem,
    pub set: FiniteSet,
    pub threshold: f64,
    pub total: u64,
}

pub fn gadget_finite_solve(a: &[u64]) -> FiniteSolveGadget {
    let big_a = total(a);
    let n = a.len();
    let plus: Vec<f64> = a.iter().map(|&v| v as f64).collect();
    let minus: Vec<f64> = a.iter().map(|&v| -(v as f64)).collect();
    FiniteSolveGadget {
        problem: CombinatorialProblem::unconstrained(n),
        set: FiniteSet::new(vec![plus, minus]).expect("two scenarios"),
        threshold: big_a as f64 / 2.0,
        total: big_a,
    }
}

/// Degenerate (rank-1) ellipsoid spanning the segment `[−a, a]`: its
/// min-max regret coincides with the two-scenario instance above.
#[derive(Clone, Debug)]
pub struct LineEllipsoidGadget {
    pub problem: CombinatorialProblem,
    pub set: GeneralEllipsoid,
    pub total: u64,
}

pub fn gadget_line_ellipsoid(a: &[u64]) -> LineEllipsoidGadget {
    let big_a = total(a);
    let n = a.len();
    let mut shape = Mat::zeros(n, n);
    for (i, &v) in a.iter().enumerate() {
        shape.set(i, 0, v as f64);
    }
    LineEllipsoidGadget {
        problem: CombinatorialProblem::unconstrained(n),
        set: GeneralEllipsoid::new(vec![0.0; n], shape)
            .expect("rank-1 shape is admissible"),
        total: big_a,
    }
}

/// Shortest-path evaluation-hardness instance: a bypass arc `(M, A)` in
/// parallel with a chain of `n` two-arc gadgets carrying
/// `(28Aaₖ + 3aₖ, 28Aaₖ − aₖ)` and `(28Aaₖ, 4Aaₖ − aₖ)`. The regret of
/// the bypass path reaches `M − 28A² + 2.5A` exactly when the list
/// partitions.
#[derive(Clone, Debug)]
pub struct SpEvalGadget {
    pub problem: CombinatorialProblem,
    pub set: AxisParallelEllipsoid,
    pub x: BinaryVector,
    pub threshold: f64,
    pub total: u64,
    pub m_constant: u64,
    pub center_int: Vec<u64>,
    pub inv_diag_int: Vec<u64>,
}

/// Builds the graph gadget; `m` defaults to `max(30A² + 1, 28A² + 3A + 1)`,
/// which exceeds every chain-path cost so the bypass rival is never
/// competitive in the inner minimization.
pub fn gadget_sp_eval(a: &[u64], m: Option<u64>) -> SpEvalGadget {
    let big_a = total(a);
    let n = a.len();
    let m_default = (30 * big_a * big_a + 1).max(28 * big_a * big_a + 3 * big_a + 1);
    let m_constant = m.unwrap_or(m_default);
    assert!(
        m_constant > 28 * big_a * big_a + 3 * big_a,
        "bypass cost must dominate every chain path"
    );

    // nodes: source 0, chain nodes 1..n-1, sink n
    let node_count = n + 1;
    let source = 0;
    let sink = n;
    let mut arcs = Vec::with_capacity(2 * n + 1);
    let mut center_int = Vec::with_capacity(2 * n + 1);
    let mut deviation_int = Vec::with_capacity(2 * n + 1);
    arcs.push((source, sink));
    center_int.push(m_constant);
    deviation_int.push(big_a);
    for (k, &ak) in a.iter().enumerate() {
        let tail = k;
        let head = k + 1;
        arcs.push((tail, head));
        center_int.push(28 * big_a * ak + 3 * ak);
        deviation_int.push(28 * big_a * ak - ak);
        arcs.push((tail, head));
        center_int.push(28 * big_a * ak);
        deviation_int.push(4 * big_a * ak - ak);
    }
    for (c, d) in center_int.iter().zip(&deviation_int) {
        debug_assert!(c >= d && *d >= 1, "uncertainty must stay in the positive orthant");
    }
    let graph = Graph::new(node_count, source, sink, arcs).expect("gadget graph is connected");
    let problem = CombinatorialProblem::shortest_path(graph);
    let center: Vec<f64> = center_int.iter().map(|&v| v as f64).collect();
    let diag: Vec<f64> = deviation_int.iter().map(|&v| 1.0 / v as f64).collect();
    let set = AxisParallelEllipsoid::new(center, diag).expect("gadget diag is positive");
    let x = BinaryVector::from_indices(problem.dimension(), &[0]);
    let threshold = m_constant as f64 - 28.0 * (big_a * big_a) as f64 + 2.5 * big_a as f64;
    SpEvalGadget {
        problem,
        set,
        x,
        threshold,
        total: big_a,
        m_constant,
        center_int,
        inv_diag_int: deviation_int,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval;
    use crate::model::UncertaintySet;
    use crate::nominal;
    use crate::relax;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn partition_oracle_basics() {
        assert!(partition_oracle(&[1, 1]));
        assert!(!partition_oracle(&[1, 2]));
        assert!(partition_oracle(&[3, 5, 8, 4, 6, 2]));
        assert!(partition_oracle(&[1, 2, 3]));
        assert!(!partition_oracle(&[1, 2, 4]));
    }

    #[test]
    fn partition_oracle_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(211);
        for _ in 0..200 {
            let n = rng.gen_range(1..=14);
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=30)).collect();
            let total: u64 = a.iter().sum();
            let mut brute = false;
            for mask in 0u32..(1 << n) {
                let s: u64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| a[i]).sum();
                if 2 * s == total {
                    brute = true;
                    break;
                }
            }
            assert_eq!(partition_oracle(&a), brute, "list {a:?}");
        }
    }

    #[test]
    fn up_eval_gadget_yes_instances() {
        for a in [vec![1, 1], vec![2, 2, 2, 2], vec![1, 2, 3]] {
            let g = gadget_up_eval(&a);
            let reg = eval::eval_bruteforce(
                &g.problem,
                &UncertaintySet::AxisParallel(g.set.clone()),
                &g.x,
            )
            .unwrap();
            let tol = 1e-6 * g.threshold;
            assert!(
                (reg - g.threshold).abs() <= tol,
                "yes-instance regret {reg} should equal A = {}",
                g.threshold
            );
        }
    }

    #[test]
    fn up_eval_gadget_no_instances() {
        for a in [vec![1, 3], vec![1, 2], vec![5, 1, 1]] {
            let g = gadget_up_eval(&a);
            let reg = eval::eval_bruteforce(
                &g.problem,
                &UncertaintySet::AxisParallel(g.set.clone()),
                &g.x,
            )
            .unwrap();
            let tol = 1e-6 * g.threshold;
            assert!(reg < g.threshold - tol, "no-instance regret {reg} reached threshold");
        }
    }

    #[test]
    fn up_eval_iff_matches_partition_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(223);
        for _ in 0..100 {
            let n = rng.gen_range(1..=12);
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=50)).collect();
            let g = gadget_up_eval(&a);
            let reg = eval::eval_bruteforce(
                &g.problem,
                &UncertaintySet::AxisParallel(g.set.clone()),
                &g.x,
            )
            .unwrap();
            let tol = 1e-6 * g.threshold;
            assert_eq!(reg >= g.threshold - tol, partition_oracle(&a), "list {a:?}");
        }
    }

    #[test]
    fn finite_solve_gadget_thresholds() {
        let yes = gadget_finite_solve(&[1, 1]);
        let report = relax::solve_finite(&yes.problem, &yes.set).unwrap();
        assert!((report.regret - 1.0).abs() < 1e-9);

        let no = gadget_finite_solve(&[1, 2]);
        let report = relax::solve_finite(&no.problem, &no.set).unwrap();
        assert!(report.regret > no.threshold + 1e-9);
        assert!((report.regret - 2.0).abs() < 1e-9);

        let yes3 = gadget_finite_solve(&[1, 2, 3]);
        let report = relax::solve_finite(&yes3.problem, &yes3.set).unwrap();
        assert!((report.regret - 3.0).abs() < 1e-9);
    }

    #[test]
    fn finite_min_regret_never_beats_half_total() {
        let mut rng = ChaCha8Rng::seed_from_u64(227);
        for _ in 0..40 {
            let n = rng.gen_range(1..=10);
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=30)).collect();
            let g = gadget_finite_solve(&a);
            let report = relax::solve_finite(&g.problem, &g.set).unwrap();
            assert!(report.regret >= g.threshold - 1e-9);
            let is_yes = partition_oracle(&a);
            let tol = 1e-6 * (1.0 + g.threshold);
            assert_eq!(report.regret <= g.threshold + tol, is_yes, "list {a:?}");
        }
    }

    #[test]
    fn line_ellipsoid_membership_spans_exact_segment() {
        let g = gadget_line_ellipsoid(&[1, 1]);
        let set = UncertaintySet::Ellipsoid(g.set.clone());
        assert!(crate::support::membership(&set, &[0.5, 0.5], 1e-8));
        assert!(!crate::support::membership(&set, &[1.01, 1.01], 1e-8));
        // off the line
        assert!(!crate::support::membership(&set, &[0.5, -0.5], 1e-8));
        // two-point support function
        let w = [0.3, -0.7];
        let wc = crate::support::support(&set, &w).unwrap();
        let direct = (w[0] + w[1]).abs();
        assert!((wc.value - direct).abs() < 1e-9);
    }

    #[test]
    fn line_ellipsoid_matches_finite_gadget() {
        let mut rng = ChaCha8Rng::seed_from_u64(229);
        for _ in 0..20 {
            let n = rng.gen_range(1..=8);
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=20)).collect();
            let line = gadget_line_ellipsoid(&a);
            let finite = gadget_finite_solve(&a);
            let (line_opt, _) = eval::solve_bruteforce(
                &line.problem,
                &UncertaintySet::Ellipsoid(line.set.clone()),
            )
            .unwrap();
            let finite_report = relax::solve_finite(&finite.problem, &finite.set).unwrap();
            assert!(
                (line_opt - finite_report.regret).abs() < 1e-6 * (1.0 + line_opt.abs()),
                "segment {line_opt} vs two-scenario {}",
                finite_report.regret
            );
        }
    }

    #[test]
    fn sp_gadget_structure() {
        let g = gadget_sp_eval(&[1, 1], Some(121));
        assert_eq!(g.problem.dimension(), 5);
        let paths = nominal::enumerate_feasible(&g.problem, 100).unwrap();
        assert_eq!(paths.len(), 5, "bypass plus 2² chains");
        assert!((g.threshold - 14.0).abs() < 1e-12);
        // default M for A = 2 is also 121
        let default = gadget_sp_eval(&[1, 1], None);
        assert_eq!(default.m_constant, 121);
    }

    #[test]
    fn sp_gadget_yes_and_no_instances() {
        let yes = gadget_sp_eval(&[1, 1], Some(121));
        let reg = eval::eval_bruteforce(
            &yes.problem,
            &UncertaintySet::AxisParallel(yes.set.clone()),
            &yes.x,
        )
        .unwrap();
        let tol = 1e-6 * yes.total as f64;
        assert!(reg >= yes.threshold - tol, "yes-instance regret {reg} < {}", yes.threshold);

        let no = gadget_sp_eval(&[1, 3], None);
        let reg = eval::eval_bruteforce(
            &no.problem,
            &UncertaintySet::AxisParallel(no.set.clone()),
            &no.x,
        )
        .unwrap();
        let tol = 1e-6 * no.total as f64;
        assert!(reg < no.threshold - tol, "no-instance regret {reg} ≥ {}", no.threshold);
    }

    #[test]
    fn sp_gadget_iff_matches_partition_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(233);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=50)).collect();
            let g = gadget_sp_eval(&a, None);
            let reg = eval::eval_bruteforce(
                &g.problem,
                &UncertaintySet::AxisParallel(g.set.clone()),
                &g.x,
            )
            .unwrap();
            let tol = 1e-6 * g.total as f64;
            assert_eq!(reg >= g.threshold - tol, partition_oracle(&a), "list {a:?}");
        }
    }

    #[test]
    fn sp_gadget_set_stays_positive() {
        let g = gadget_sp_eval(&[2, 5, 3], None);
        for (c, d) in g.center_int.iter().zip(&g.inv_diag_int) {
            assert!(c >= d);
            assert!(*d >= 1);
        }
    }
}
