use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use levyarea::oracle::ConvergenceStudy;
use levyarea::{
    cutoff, error_bound, optimal_algorithm, simulate, simulate_qwiener, AlgorithmChoice,
    AlgorithmId, ErrorNorm, GaussianSource, SelectionQuery, SimulationOptions,
    TruncationParameter, WienerIncrement,
};
use nalgebra::DVector;

use crate::args::{BenchArgs, ConvergenceArgs, OptimalArgs, SimulateArgs};
use crate::error::{CliError, Result};
use crate::qwiener::read_spec;

pub const CONVERGENCE_HEADER: &str = "alg,m,h,p,cost,error_est,error_se,bound,reps,seed";
pub const BENCH_HEADER: &str = "alg,m,h,p,wall_ns_mean,wall_ns_min,reps";

/// Seventeen significant digits, enough to round-trip an `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn algorithms(list: &[AlgorithmId]) -> Vec<AlgorithmId> {
    if list.is_empty() {
        AlgorithmId::ALL.to_vec()
    } else {
        list.to_vec()
    }
}

fn increment(src: &mut GaussianSource, m: usize, h: f64, scale: Option<&DVector<f64>>) -> Result<WienerIncrement> {
    let mut w = DVector::zeros(m);
    src.fill(w.as_mut_slice());
    w *= h.sqrt();
    if let Some(s) = scale {
        w.component_mul_assign(s);
    }
    Ok(WienerIncrement::new(w, h)?)
}

pub fn cmd_simulate(args: &SimulateArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let spec = match &args.qwiener_file {
        Some(path) => Some(read_spec(path, args.dim)?),
        None => None,
    };
    let truncation = args.p.map(TruncationParameter::new).transpose()?;
    let opts = SimulationOptions {
        eps: args.eps,
        norm: args.norm,
        algorithm: match args.alg.0 {
            Some(a) => AlgorithmChoice::Fixed(a),
            None => AlgorithmChoice::Auto,
        },
        truncation,
        ..Default::default()
    };

    if args.dim == 0 {
        return Err(levyarea::Error::EmptyDimension.into());
    }
    let mut src = GaussianSource::new(seed);
    let w = increment(&mut src, args.dim, args.stepsize, spec.as_ref().map(|s| s.sqrt_eigenvalues()))?;
    let sim = match &spec {
        Some(s) => simulate_qwiener(&w, s, &opts, &mut src)?,
        None => simulate(&w, &opts, &mut src)?,
    };

    writeln!(out, "# algorithm={}", sim.algorithm)?;
    writeln!(out, "# p={}", sim.truncation)?;
    writeln!(out, "# gaussians={}", sim.gaussians)?;
    writeln!(out, "# seed={seed}")?;
    writeln!(out, "# eps={}", num(sim.eps))?;
    writeln!(out, "# norm={}", sim.norm)?;
    writeln!(out, "# stepsize={}", num(args.stepsize))?;
    let wv: Vec<String> = w.values().iter().map(|&v| num(v)).collect();
    writeln!(out, "# increment={}", wv.join(","))?;
    let i = sim.integrals.matrix();
    for r in 0..i.nrows() {
        let row: Vec<String> = i.row(r).iter().map(|&v| num(v)).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn cmd_optimal(args: &OptimalArgs, out: &mut dyn Write) -> Result<()> {
    let q = match args.eps {
        Some(eps) => SelectionQuery::new(args.dim, args.stepsize, eps, args.norm)?,
        None => SelectionQuery::with_default_eps(args.dim, args.stepsize, args.norm)?,
    };
    let r = optimal_algorithm(&q);
    writeln!(out, "{},{},{}", r.algorithm, r.p, r.gaussians)?;
    Ok(())
}

/// Dyadic grid `p_min, 2 p_min, …` up to `p_max`.
pub fn dyadic_grid(p_min: usize, p_max: usize) -> Result<Vec<usize>> {
    if p_min == 0 || p_max < p_min {
        return Err(CliError::Invalid(format!(
            "p grid needs 1 <= p-min <= p-max, got {p_min}..{p_max}"
        )));
    }
    let mut grid = Vec::new();
    let mut p = p_min;
    while p <= p_max {
        grid.push(p);
        p = match p.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub alg: AlgorithmId,
    pub m: usize,
    pub h: f64,
    pub p: usize,
    pub cost: u64,
    pub error_est: f64,
    pub error_se: f64,
    pub bound: f64,
    pub reps: usize,
    pub seed: u64,
}

impl ConvergenceRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.alg,
            self.m,
            num(self.h),
            self.p,
            self.cost,
            num(self.error_est),
            num(self.error_se),
            num(self.bound),
            self.reps,
            self.seed
        )
    }
}

pub fn convergence_rows(args: &ConvergenceArgs, seed: u64) -> Result<Vec<ConvergenceRow>> {
    let h = args.stepsize;
    if !(h.is_finite() && h > 0.0) {
        return Err(levyarea::Error::InvalidStepSize(h).into());
    }
    let grid = dyadic_grid(args.p_min, args.p_max)?;
    if args.p_max >= args.p_ref {
        return Err(CliError::Invalid(format!(
            "p grid reaches {} but must stay below p-ref = {}",
            grid[grid.len() - 1],
            args.p_ref
        )));
    }
    let algs = algorithms(&args.alg);
    let study = ConvergenceStudy::new(args.dim, args.p_ref, args.reps, args.norm, seed);
    let cells = study.run(&algs, &grid)?;
    // the study runs at h = 1; Lévy areas scale linearly in h
    Ok(cells
        .into_iter()
        .map(|c| ConvergenceRow {
            alg: c.algorithm,
            m: args.dim,
            h,
            p: c.p,
            cost: c.cost,
            error_est: h * c.error.estimate,
            error_se: h * c.error.std_error,
            bound: error_bound(c.algorithm, args.dim, h, c.p, args.norm),
            reps: args.reps,
            seed,
        })
        .collect())
}

pub fn cmd_convergence(args: &ConvergenceArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let rows = convergence_rows(args, seed)?;
    writeln!(out, "{CONVERGENCE_HEADER}")?;
    for r in &rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub alg: AlgorithmId,
    pub m: usize,
    pub h: f64,
    pub p: usize,
    pub wall_ns_mean: f64,
    pub wall_ns_min: u128,
    pub reps: usize,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.alg,
            self.m,
            num(self.h),
            self.p,
            num(self.wall_ns_mean),
            self.wall_ns_min,
            self.reps
        )
    }
}

fn bench_cell(
    alg: AlgorithmId,
    m: usize,
    h: f64,
    norm: ErrorNorm,
    args: &BenchArgs,
    seed: u64,
) -> Result<BenchRow> {
    let p = if m == 1 {
        TruncationParameter::new(1)?
    } else {
        cutoff(alg, &SelectionQuery::with_default_eps(m, h, norm)?)
    };
    let opts = SimulationOptions {
        norm: Some(norm),
        algorithm: AlgorithmChoice::Fixed(alg),
        truncation: Some(p),
        ..Default::default()
    };
    let mut total = 0u128;
    let mut min = u128::MAX;
    for run in 0..(args.warmup + args.reps) {
        let mut src = GaussianSource::stream(seed, run as u64);
        let w = increment(&mut src, m, h, None)?;
        let start = Instant::now();
        let sim = simulate(&w, &opts, &mut src)?;
        let ns = start.elapsed().as_nanos();
        black_box(sim);
        if run >= args.warmup {
            total += ns;
            min = min.min(ns);
        }
    }
    Ok(BenchRow {
        alg,
        m,
        h,
        p: p.get(),
        wall_ns_mean: total as f64 / args.reps as f64,
        wall_ns_min: min,
        reps: args.reps,
    })
}

pub fn bench_rows(args: &BenchArgs, seed: u64) -> Result<Vec<BenchRow>> {
    if args.dim == 0 {
        return Err(levyarea::Error::EmptyDimension.into());
    }
    if args.reps == 0 {
        return Err(CliError::Invalid("--reps must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for alg in algorithms(&args.alg) {
        for &h in &args.stepsizes {
            rows.push(bench_cell(alg, args.dim, h, args.norm, args, seed)?);
        }
    }
    Ok(rows)
}

pub fn cmd_bench(args: &BenchArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let rows = bench_rows(args, seed)?;
    writeln!(out, "# seed={seed}")?;
    writeln!(out, "{BENCH_HEADER}")?;
    for r in &rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}
