//! Random instance generators for the two benchmark families:
//! unconstrained problems (family I) and layered shortest-path problems
//! with 4 nodes per layer and all forward arcs (family J).
//!
//! All draws are uniform integers. Centers come from {−100,…,100}
//! (clamped to ≥ 0 for family J), diagonal deviations from {50,…,150},
//! and each off-diagonal deviation entry appears with the configured
//! density, drawn from the deviation class:
//! small {1,…,50}; medium {1,…,50} with probability 75%, otherwise
//! {50,…,200}; large {50,…,200}.
//!
//! Reproducibility: every instance uses a ChaCha8 stream derived from the
//! user seed, with the stream id mixing family, size, class, density, and
//! replicate index — one substream per instance, independent of
//! generation order. Draw order within an instance is fixed: centers,
//! then diagonal entries, then off-diagonal entries in row-major order
//! (presence draw first, value draw only when present).

use crate::linalg::Mat;
use crate::model::{CombinatorialProblem, GeneralEllipsoid};
use crate::nominal::layered_graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LAYER_WIDTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Unconstrained 0-1 problems; `size` is the number of items.
    I,
    /// Layered shortest-path problems; `size` is the number of layers.
    J,
}

impl Family {
    pub fn code(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::J => "J",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "I" | "i" => Some(Family::I),
            "J" | "j" => Some(Family::J),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deviation {
    Small,
    Medium,
    Large,
}

impl Deviation {
    pub fn code(self) -> &'static str {
        match self {
            Deviation::Small => "s",
            Deviation::Medium => "m",
            Deviation::Large => "l",
        }
    }

    pub fn parse(s: &str) -> Option<Deviation> {
        match s {
            "s" | "small" => Some(Deviation::Small),
            "m" | "medium" => Some(Deviation::Medium),
            "l" | "large" => Some(Deviation::Large),
            _ => None,
        }
    }

    pub const ALL: [Deviation; 3] = [Deviation::Small, Deviation::Medium, Deviation::Large];
}

pub const DENSITIES: [u8; 3] = [5, 15, 25];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    /// Items (family I) or layers (family J).
    pub size: usize,
    pub deviation: Deviation,
    /// Off-diagonal presence probability in percent.
    pub density_pct: u8,
    pub seed: u64,
    pub replicate: u32,
}

impl GenSpec {
    /// Whether the parameters lie outside the standard benchmark grid.
    pub fn is_extended(&self) -> bool {
        let size_ok = match self.family {
            Family::I => self.size >= 10 && self.size <= 150 && (self.size - 10) % 20 == 0,
            Family::J => (2..=9).contains(&self.size),
        };
        !(size_ok && DENSITIES.contains(&self.density_pct))
    }

    /// Canonical instance label, e.g. `I_n10_p25_l_r03`.
    pub fn label(&self) -> String {
        format!(
            "{}_n{:03}_p{:02}_{}_r{:02}",
            self.family.code(),
            self.size,
            self.density_pct,
            self.deviation.code(),
            self.replicate
        )
    }

    fn stream_id(&self) -> u64 {
        let fam = match self.family {
            Family::I => 1u64,
            Family::J => 2u64,
        };
        let dev = match self.deviation {
            Deviation::Small => 1u64,
            Deviation::Medium => 2u64,
            Deviation::Large => 3u64,
        };
        // fields packed into disjoint bit ranges; unique per spec
        fam | (dev << 2)
            | ((self.density_pct as u64) << 5)
            | ((self.size as u64 & 0xFFFF) << 13)
            | ((self.replicate as u64) << 29)
    }
}

#[derive(Clone, Debug)]
pub struct InstanceMeta {
    pub spec: GenSpec,
    /// Some center coordinates were clamped to zero (family J only).
    pub center_clamped: bool,
    pub extended: bool,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub problem: CombinatorialProblem,
    pub set: GeneralEllipsoid,
    pub meta: InstanceMeta,
}

/// Deterministic generation: equal specs produce byte-identical
/// instances.
pub fn generate(spec: &GenSpec) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(spec.stream_id());

    let (problem, n) = match spec.family {
        Family::I => {
            let p = CombinatorialProblem::unconstrained(spec.size);
            let n = spec.size;
            (p, n)
        }
        Family::J => {
            let g = layered_graph(spec.size, LAYER_WIDTH);
            let n = g.arc_count();
            (CombinatorialProblem::shortest_path(g), n)
        }
    };

    let mut center = Vec::with_capacity(n);
    let mut clamped = false;
    for _ in 0..n {
        let raw = f64::from(rng.gen_range(-100..=100));
        if spec.family == Family::J && raw < 0.0 {
            clamped = true;
            center.push(0.0);
        } else {
            center.push(raw);
        }
    }

    let mut shape = Mat::zeros(n, n);
    for i in 0..n {
        shape.set(i, i, f64::from(rng.gen_range(50..=150)));
    }
    let density = f64::from(spec.density_pct) / 100.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if rng.gen_bool(density) {
                shape.set(i, j, f64::from(draw_class_value(&mut rng, spec.deviation)));
            }
        }
    }

    let set = GeneralEllipsoid::new(center, shape).expect("generated shape is admissible");
    Instance {
        problem,
        set,
        meta: InstanceMeta {
            spec: spec.clone(),
            center_clamped: clamped,
            extended: spec.is_extended(),
        },
    }
}

fn draw_class_value(rng: &mut ChaCha8Rng, deviation: Deviation) -> i32 {
    match deviation {
        Deviation::Small => rng.gen_range(1..=50),
        Deviation::Medium => {
            if rng.gen_bool(0.75) {
                rng.gen_range(1..=50)
            } else {
                rng.gen_range(50..=200)
            }
        }
        Deviation::Large => rng.gen_range(50..=200),
    }
}

/// Benchmark grid. Paper scale: family I with
/// n ∈ {10, 30, …, 150}, family J with 2–9 layers, 9 class combinations,
/// 10 replicates each (720 instances per family). Desk scale restricts
/// to I-n ∈ {10, 30} and J-layers ∈ {2, 3, 4}.
pub fn grid(paper_scale: bool, seed: u64) -> Vec<GenSpec> {
    let i_sizes: Vec<usize> = if paper_scale {
        (0..=7).map(|k| 10 + 20 * k).collect()
    } else {
        vec![10, 30]
    };
    let j_sizes: Vec<usize> =
        if paper_scale { (2..=9).collect() } else { vec![2, 3, 4] };
    let mut specs = Vec::new();
    for (family, sizes) in [(Family::I, i_sizes), (Family::J, j_sizes)] {
        for &size in &sizes {
            for deviation in Deviation::ALL {
                for density_pct in DENSITIES {
                    for replicate in 0..10 {
                        specs.push(GenSpec {
                            family,
                            size,
                            deviation,
                            density_pct,
                            seed,
                            replicate,
                        });
                    }
                }
            }
        }
    }
    specs
}
