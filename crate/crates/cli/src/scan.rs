//! Distance scans and the near/far crossover search.

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use vacuum_forces::density::{self, FieldKind};
use vacuum_forces::polarizability::AtomDescription;
use vacuum_forces::two_body::{self, PairSpec};
use vacuum_forces::{boundary, EnergyResult, Error, Regime, TriangleGeometry};

use crate::commands::{direction, start_table, three_body_point, two_body_point};
use crate::config::{load_atom, Common, RunConfig, Sweep};
use crate::table::{col, Cell, Dim, ResultTable};
use crate::{CliError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// Two-body energy versus separation.
    TwoBody,
    /// Three-body energy versus equilateral side.
    ThreeBody,
    /// ⟨E²⟩ energy density versus distance from the atom.
    DensityElectric,
    /// ⟨B²⟩ energy density versus distance from the atom.
    DensityMagnetic,
    /// Atom–wall energy versus height.
    AtomWall,
}

impl Quantity {
    fn dim(self) -> Dim {
        match self {
            Quantity::DensityElectric | Quantity::DensityMagnetic => Dim::EnergyDensity,
            _ => Dim::Energy,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    #[serde(skip)]
    pub atom_a: Option<String>,
    /// Defaults to atom A.
    #[arg(long)]
    #[serde(skip)]
    pub atom_b: Option<String>,
    /// Defaults to atom A.
    #[arg(long)]
    #[serde(skip)]
    pub atom_c: Option<String>,
    /// Static polarizability for the atom-wall scan.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Three-body scan with the far-zone static formula.
    #[arg(long)]
    pub far_static: bool,
    #[command(flatten)]
    pub sweep: Sweep,
    /// Interpret start and stop in units of the shortest transition wavelength.
    #[arg(long)]
    pub in_lambda: bool,
}

struct Inputs {
    atoms: Vec<AtomDescription>,
    alpha: Option<f64>,
}

fn lambda_min(atoms: &[AtomDescription]) -> Option<f64> {
    atoms.iter().filter_map(|a| a.model().lambda_min()).reduce(f64::min)
}

fn evaluate(q: Quantity, inputs: &Inputs, r: f64, args: &ScanArgs, common: &Common) -> Result<EnergyResult, CliError> {
    let quad = common.quadrature()?;
    let a = &inputs.atoms;
    match q {
        Quantity::TwoBody => two_body_point(&a[0], &a[1], r, &quad),
        Quantity::ThreeBody => {
            let g = TriangleGeometry::equilateral(r)?;
            three_body_point([&a[0], &a[1], &a[2]], &g, args.far_static, &quad, &common.diff()?)
        }
        Quantity::DensityElectric | Quantity::DensityMagnetic => {
            let field = if q == Quantity::DensityElectric { FieldKind::Electric } else { FieldKind::Magnetic };
            let model = a[0].model();
            let value = density::density_around_atom(&model, r, field, &quad)?;
            let report = two_body::classify_regime(&model, &model, r, None)?;
            Ok(EnergyResult::new(value, value.abs() * quad.rel_tol, report.regime))
        }
        Quantity::AtomWall => {
            let alpha = inputs.alpha.expect("checked before the scan");
            let res = boundary::atom_wall(alpha, r, lambda_min(a))?;
            Ok(EnergyResult::exact(res.energy, res.regime).with_note(direction(res.force)))
        }
    }
}

/// Local slope d ln|E| / d ln r: centred inside, one-sided at the ends.
pub fn log_slopes(r: &[f64], e: &[f64]) -> Vec<f64> {
    let n = r.len();
    let usable = |i: usize| e[i].is_finite() && e[i] != 0.0;
    (0..n)
        .map(|i| {
            let (lo, hi) = match i {
                0 => (0, 1.min(n - 1)),
                _ if i == n - 1 => (i - 1, i),
                _ => (i - 1, i + 1),
            };
            if lo == hi || !usable(lo) || !usable(hi) {
                return f64::NAN;
            }
            (e[hi].abs().ln() - e[lo].abs().ln()) / (r[hi].ln() - r[lo].ln())
        })
        .collect()
}

pub fn scan(args: &ScanArgs, common: &Common) -> Result<Outcome, CliError> {
    args.sweep.validate()?;
    common.quadrature()?;
    common.diff()?;
    let q = args.quantity;
    let mut atoms = Vec::new();
    let mut cfg = RunConfig::new("scan", args, common);
    let needs_atom = q != Quantity::AtomWall;
    if let Some(src) = &args.atom_a {
        let a = load_atom("atom-a", src)?;
        cfg = cfg.with_atom("atom-a", &a);
        atoms.push(a);
        for (label, src) in [("atom-b", &args.atom_b), ("atom-c", &args.atom_c)] {
            let atom = match src {
                Some(s) => load_atom(label, s)?,
                None => atoms[0].clone(),
            };
            cfg = cfg.with_atom(label, &atom);
            atoms.push(atom);
        }
    } else if needs_atom {
        return Err(CliError::Config("this scan needs --atom-a".into()));
    }
    if q == Quantity::AtomWall && args.alpha.is_none() {
        return Err(CliError::Config("the atom-wall scan needs --alpha".into()));
    }
    let unit = if args.in_lambda {
        lambda_min(&atoms).ok_or_else(|| CliError::Config("--in-lambda needs an atom with transitions".into()))?
    } else {
        1.0
    };
    let inputs = Inputs { atoms, alpha: args.alpha };
    let grid = args.sweep.grid(unit);

    let results: Vec<Result<EnergyResult, CliError>> =
        grid.par_iter().map(|&r| evaluate(q, &inputs, r, args, common)).collect();

    let mut values = Vec::with_capacity(grid.len());
    let mut failures = Vec::new();
    for (i, res) in results.iter().enumerate() {
        match res {
            Ok(e) => values.push(e.value),
            Err(CliError::Config(m)) => return Err(CliError::Config(format!("grid point {i} (r = {}): {m}", grid[i]))),
            Err(CliError::Numerical(m)) => {
                values.push(f64::NAN);
                failures.push(format!("row {i}: {m}"));
            }
        }
    }
    let slopes = log_slopes(&grid, &values);

    let mut t = start_table(
        &cfg,
        vec![
            col("index", Dim::Pure),
            col("r", Dim::Length),
            col("value", q.dim()),
            col("abs_error", q.dim()),
            col("slope", Dim::Pure),
            col("regime", Dim::Pure),
            col("status", Dim::Pure),
        ],
    );
    if args.in_lambda {
        t.meta("lambda_min", format!("{unit:.16e}"));
    }
    for (i, res) in results.iter().enumerate() {
        let (err, regime, status) = match res {
            Ok(e) => (e.abs_error_estimate, e.regime.as_str(), "ok"),
            Err(_) => (f64::NAN, "unknown", "failed"),
        };
        t.push(vec![
            Cell::Num(i as f64),
            grid[i].into(),
            values[i].into(),
            err.into(),
            slopes[i].into(),
            regime.into(),
            status.into(),
        ]);
    }
    for f in &failures {
        t.meta("failure", f.clone());
    }
    Ok(Outcome { table: t, failed_rows: failures.len() })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CrossoverArgs {
    #[arg(long)]
    #[serde(skip)]
    pub atom_a: String,
    /// Defaults to atom A.
    #[arg(long)]
    #[serde(skip)]
    pub atom_b: Option<String>,
    /// Relative deviation from the London law that marks the crossover.
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub threshold: f64,
    /// Lower end of the search bracket, in units of λ_min.
    #[arg(long, default_value_t = 1e-3)]
    pub bracket_lo: f64,
    /// Upper end of the search bracket, in units of λ_min.
    #[arg(long, default_value_t = 1e3)]
    pub bracket_hi: f64,
}

/// |cp_full − london| / |london| at separation r.
pub fn london_deviation(
    a: &AtomDescription,
    b: &AtomDescription,
    r: f64,
    quad: &vacuum_forces::QuadratureSpec,
) -> Result<f64, Error> {
    let (ma, mb) = (a.model(), b.model());
    let london = two_body::london_near(&ma, &mb, r)?;
    let full = two_body::cp_full(&PairSpec::new(ma, a.kind, mb, b.kind, r)?, quad)?.value;
    Ok(((full - london) / london).abs())
}

const CROSSOVER_GRID: usize = 61;

/// Smallest r in [lo, hi] where `deviation(r) > threshold`, located on a log
/// grid and refined by bisection in ln r.
pub fn find_crossover(
    deviation: impl Fn(f64) -> Result<f64, Error>,
    threshold: f64,
    lo: f64,
    hi: f64,
) -> Result<f64, Error> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::InvalidInput(format!("degenerate threshold {threshold}: must be positive")));
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidInput(format!("invalid bracket [{lo}, {hi}]")));
    }
    let step = (hi / lo).ln() / (CROSSOVER_GRID - 1) as f64;
    let at = |i: usize| if i == CROSSOVER_GRID - 1 { hi } else { lo * (step * i as f64).exp() };
    if deviation(lo)? > threshold {
        return Err(Error::NoCrossover(format!("deviation already exceeds {threshold} at the lower bracket end {lo}")));
    }
    let mut below = lo;
    let mut above = None;
    for i in 1..CROSSOVER_GRID {
        let r = at(i);
        if deviation(r)? > threshold {
            above = Some(r);
            break;
        }
        below = r;
    }
    let Some(mut above) = above else {
        return Err(Error::NoCrossover(format!("deviation stays below {threshold} on [{lo}, {hi}]")));
    };
    while above / below - 1.0 > 1e-12 {
        let mid = (below * above).sqrt();
        if deviation(mid)? > threshold {
            above = mid;
        } else {
            below = mid;
        }
    }
    Ok(0.5 * (below + above))
}

pub fn crossover(args: &CrossoverArgs, common: &Common) -> Result<ResultTable, CliError> {
    let a = load_atom("atom-a", &args.atom_a)?;
    let b = match &args.atom_b {
        Some(s) => load_atom("atom-b", s)?,
        None => a.clone(),
    };
    for (label, atom) in [("atom-a", &a), ("atom-b", &b)] {
        if atom.kind != vacuum_forces::polarizability::PolarizabilityKind::Electric {
            return Err(CliError::Config(format!("{label}: crossover needs electric atoms")));
        }
    }
    let cfg = RunConfig::new("crossover", args, common).with_atom("atom-a", &a).with_atom("atom-b", &b);
    let quad = common.quadrature()?;
    let lambda = lambda_min(&[a.clone(), b.clone()])
        .ok_or_else(|| CliError::Config("crossover needs atoms with transition data".into()))?;
    let r = find_crossover(
        |r| london_deviation(&a, &b, r, &quad),
        args.threshold,
        args.bracket_lo * lambda,
        args.bracket_hi * lambda,
    )?;
    let mut t = start_table(
        &cfg,
        vec![
            col("threshold", Dim::Pure),
            col("r_crossover", Dim::Length),
            col("lambda_min", Dim::Length),
            col("r_over_lambda_min", Dim::Pure),
            col("regime", Dim::Pure),
        ],
    );
    let regime = two_body::classify_regime(&a.model(), &b.model(), r, None)?.regime;
    t.push(vec![args.threshold.into(), r.into(), lambda.into(), (r / lambda).into(), Regime::as_str(regime).into()]);
    Ok(t)
}
