use mmregret::gen::{self, Deviation, Family, GenSpec};
use mmregret::relax::{solve_regret, master_solve, MasterMode, RelaxConfig};
use mmregret::model::{BinaryVector, Cut, CutKind, UncertaintySet};
use mmregret::subproblem::sub_objective;

fn main() {
    for size in [10usize] {
        for rep in [1u32, 8, 11, 12, 14] {
            let spec = GenSpec {
                family: Family::I, size,
                deviation: Deviation::Large, density_pct: 25,
                seed: 42, replicate: rep,
            };
            let inst = gen::generate(&spec);
            let n = inst.problem.dimension();
            let set = UncertaintySet::Ellipsoid(inst.set.clone());
            let cfg = RelaxConfig::from_method_name("C2-B").unwrap();
            let report = solve_regret(&inst.problem, &set, &cfg).unwrap();
            let extremes = vec![
                Cut { kind: CutKind::Type2 { rival: BinaryVector::zeros(n) }, creation_iteration: 0 },
                Cut { kind: CutKind::Type2 { rival: BinaryVector::ones(n) }, creation_iteration: 0 },
            ];
            let (z01, _) = master_solve(&inst.problem, &extremes, &set, MasterMode::Enumeration).unwrap();
            // how close are the extremes to the argmax at x=0 and x=1?
            let x0 = BinaryVector::zeros(n);
            let x1 = BinaryVector::ones(n);
            let sub_at = |x: &BinaryVector| {
                let mut best = f64::NEG_INFINITY;
                for mask in 0..(1u64 << n) {
                    let y = BinaryVector::from_mask(mask, n);
                    best = best.max(sub_objective(&inst.set, x, &y));
                }
                best
            };
            let v0 = sub_at(&x0);
            let v0_extreme = sub_objective(&inst.set, &x0, &x1);
            let v1 = sub_at(&x1);
            let v1_extreme = sub_objective(&inst.set, &x1, &x0);
            println!(
                "rep {rep}: OPT={:.4} z(0,1)={:.4} gap={:.2e} | at x=0: argmax {:.4} vs y=1 {:.4} | at x=1: argmax {:.4} vs y=0 {:.4}",
                report.regret, z01, (report.regret - z01)/report.regret,
                v0, v0_extreme, v1, v1_extreme
            );
        }
    }
}
