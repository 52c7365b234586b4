//! Single-shot subcommands.

use clap::{Args, ValueEnum};
use serde::Serialize;
use vacuum_forces::boundary::{self, PlatePairResult};
use vacuum_forces::density::{self, DensityProfile, FieldKind};
use vacuum_forces::noninertial::{self, AcceleratedPair, ScalarAtomPair};
use vacuum_forces::polarizability::{AtomDescription, PolarizabilityKind};
use vacuum_forces::resonance::{self, BellPairSpec, Parity};
use vacuum_forces::three_body::{self, TripleSpec};
use vacuum_forces::two_body::{self, PairSpec};
use vacuum_forces::{DiffSpec, EnergyResult, QuadratureSpec, TriangleGeometry, Vec3};

use crate::config::{load_atom, parse_vec3, Common, RunConfig};
use crate::table::{col, Cell, Dim, ResultTable};
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Empty table carrying the standard metadata header.
pub fn start_table(cfg: &RunConfig, columns: Vec<crate::table::Column>) -> ResultTable {
    let mut t = ResultTable::new(columns);
    t.meta("vforces", VERSION);
    t.meta("config_sha256", cfg.hash());
    t.meta("command", cfg.command.clone());
    t
}

fn note(t: &mut ResultTable, text: &str) {
    if !text.is_empty() && !t.metadata.iter().any(|(k, v)| k == "note" && v == text) {
        t.meta("note", text);
    }
}

fn regime_cell(e: &EnergyResult) -> Cell {
    e.regime.as_str().into()
}

/// Two-body energy of a described pair at distance r.
///
/// Electric pairs use the full frequency integral; an electric–magnetic
/// pair uses the far-zone static formula.
pub fn two_body_point(
    a: &AtomDescription,
    b: &AtomDescription,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<EnergyResult, CliError> {
    let (ma, mb) = (a.model(), b.model());
    let pair = PairSpec::new(ma.clone(), a.kind, mb.clone(), b.kind, r)?;
    if pair.kind_a == PolarizabilityKind::Electric && pair.kind_b == PolarizabilityKind::Electric {
        return Ok(two_body::cp_full(&pair, quad)?);
    }
    let (e, m) = if a.kind == PolarizabilityKind::Electric { (&ma, &mb) } else { (&mb, &ma) };
    let value = two_body::cp_far_electric_magnetic(e.alpha_static(), m.alpha_static(), r)?;
    let report = two_body::classify_regime(&ma, &mb, r, None)?;
    let mut res = EnergyResult::exact(value, report.regime)
        .with_note("electric-magnetic pair: far-zone formula with static polarizabilities");
    if let Some(n) = report.note {
        res = res.with_note(n);
    }
    Ok(res)
}

fn electric_only(label: &str, atom: &AtomDescription) -> Result<(), CliError> {
    if atom.kind != PolarizabilityKind::Electric {
        return Err(CliError::Config(format!("{label}: this computation needs an electric atom")));
    }
    Ok(())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TwoBodyArgs {
    /// Atom A: JSON file path or inline JSON.
    #[arg(long)]
    #[serde(skip)]
    pub atom_a: String,
    #[arg(long)]
    #[serde(skip)]
    pub atom_b: String,
    /// Separation.
    #[arg(long, allow_hyphen_values = true)]
    pub r: f64,
    /// Temperature, used only for regime classification.
    #[arg(long)]
    pub temperature: Option<f64>,
}

pub fn two_body(args: &TwoBodyArgs, common: &Common) -> Result<ResultTable, CliError> {
    let a = load_atom("atom-a", &args.atom_a)?;
    let b = load_atom("atom-b", &args.atom_b)?;
    let cfg = RunConfig::new("two-body", args, common).with_atom("atom-a", &a).with_atom("atom-b", &b);
    let quad = common.quadrature()?;
    let report = two_body::classify_regime(&a.model(), &b.model(), args.r, args.temperature)?;
    let res = two_body_point(&a, &b, args.r, &quad)?;
    let mut t = start_table(
        &cfg,
        vec![
            col("r", Dim::Length),
            col("energy", Dim::Energy),
            col("abs_error", Dim::Energy),
            col("regime", Dim::Pure),
            col("lambda_min", Dim::Length),
        ],
    );
    let regime = if report.thermal { report.regime } else { res.regime };
    t.push(vec![
        args.r.into(),
        res.value.into(),
        res.abs_error_estimate.into(),
        regime.as_str().into(),
        report.lambda_min.unwrap_or(f64::NAN).into(),
    ]);
    note(&mut t, &res.notes);
    if let Some(n) = report.note {
        note(&mut t, &n);
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TriangleArgs {
    /// Side of an equilateral triangle.
    #[arg(long, conflicts_with_all = ["pos_a", "pos_b", "pos_c"])]
    pub side: Option<f64>,
    /// Position of atom A as x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, requires_all = ["pos_b", "pos_c"])]
    pub pos_a: Option<Vec3>,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub pos_b: Option<Vec3>,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub pos_c: Option<Vec3>,
}

impl TriangleArgs {
    pub fn geometry(&self) -> Result<TriangleGeometry, CliError> {
        match (self.side, self.pos_a, self.pos_b, self.pos_c) {
            (Some(s), ..) => Ok(TriangleGeometry::equilateral(s)?),
            (None, Some(a), Some(b), Some(c)) => Ok(TriangleGeometry::new(a, b, c)?),
            _ => Err(CliError::Config("give --side or all of --pos-a, --pos-b, --pos-c".into())),
        }
    }
}

/// Three-body energy: full frequency integral, or the far-zone static form.
pub fn three_body_point(
    atoms: [&AtomDescription; 3],
    geometry: &TriangleGeometry,
    far_static: bool,
    quad: &QuadratureSpec,
    diff: &DiffSpec,
) -> Result<EnergyResult, CliError> {
    if far_static {
        let alphas = atoms.map(|a| a.model().alpha_static());
        return Ok(three_body::three_body_far(alphas, geometry, diff)?);
    }
    let spec = TripleSpec::new(atoms[0].model(), atoms[1].model(), atoms[2].model(), *geometry);
    Ok(three_body::three_body_full(&spec, quad, diff)?)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThreeBodyArgs {
    #[arg(long)]
    #[serde(skip)]
    pub atom_a: String,
    #[arg(long)]
    #[serde(skip)]
    pub atom_b: String,
    #[arg(long)]
    #[serde(skip)]
    pub atom_c: String,
    #[command(flatten)]
    pub triangle: TriangleArgs,
    /// Use the far-zone formula with static polarizabilities.
    #[arg(long)]
    pub far_static: bool,
    /// Treat atom A as an excited two-level atom (first transition) with this dipole x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, conflicts_with = "far_static")]
    pub excited_dipole: Option<Vec3>,
}

pub fn three_body(args: &ThreeBodyArgs, common: &Common) -> Result<ResultTable, CliError> {
    let atoms =
        [load_atom("atom-a", &args.atom_a)?, load_atom("atom-b", &args.atom_b)?, load_atom("atom-c", &args.atom_c)?];
    for (label, atom) in ["atom-a", "atom-b", "atom-c"].iter().zip(&atoms) {
        electric_only(label, atom)?;
    }
    let cfg = RunConfig::new("three-body", args, common)
        .with_atom("atom-a", &atoms[0])
        .with_atom("atom-b", &atoms[1])
        .with_atom("atom-c", &atoms[2]);
    let (quad, diff) = (common.quadrature()?, common.diff()?);
    let g = args.triangle.geometry()?;
    let mut columns = vec![
        col("alpha", Dim::Length),
        col("beta", Dim::Length),
        col("gamma", Dim::Length),
        col("energy", Dim::Energy),
        col("abs_error", Dim::Energy),
    ];
    let sides: [Cell; 3] = [g.alpha.into(), g.beta.into(), g.gamma.into()];
    if let Some(dipole) = args.excited_dipole {
        let k0 = atoms[0]
            .transitions
            .first()
            .ok_or_else(|| CliError::Config("atom-a: an excited atom needs a transition".into()))?
            .k;
        let excited = vacuum_forces::TwoLevelAtom::new(k0, dipole, g.pos_a)?;
        let res = three_body::three_body_excited(&excited, &atoms[1].model(), &atoms[2].model(), &g, &quad, &diff)?;
        columns.truncate(3);
        columns.extend([
            col("resonant", Dim::Energy),
            col("dispersive", Dim::Energy),
            col("energy", Dim::Energy),
            col("abs_error", Dim::Energy),
            col("regime", Dim::Pure),
        ]);
        let mut t = start_table(&cfg, columns);
        let mut row = sides.to_vec();
        row.extend([
            res.resonant_term.into(),
            res.dispersive_term.into(),
            res.total.value.into(),
            res.total.abs_error_estimate.into(),
            regime_cell(&res.total),
        ]);
        t.push(row);
        note(&mut t, &res.total.notes);
        return Ok(t);
    }
    let res = three_body_point([&atoms[0], &atoms[1], &atoms[2]], &g, args.far_static, &quad, &diff)?;
    columns.push(col("regime", Dim::Pure));
    let mut t = start_table(&cfg, columns);
    let mut row = sides.to_vec();
    row.extend([res.value.into(), res.abs_error_estimate.into(), regime_cell(&res)]);
    t.push(row);
    note(&mut t, &res.notes);
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AtomWallArgs {
    /// Static polarizability.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Height above the plate.
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    /// Shortest transition wavelength, for the far-zone check.
    #[arg(long)]
    pub lambda_min: Option<f64>,
}

pub fn direction(force: f64) -> &'static str {
    if force < 0.0 {
        "attractive"
    } else if force > 0.0 {
        "repulsive"
    } else {
        "none"
    }
}

pub fn atom_wall(args: &AtomWallArgs, common: &Common) -> Result<ResultTable, CliError> {
    let cfg = RunConfig::new("atom-wall", args, common);
    let res = boundary::atom_wall(args.alpha, args.z, args.lambda_min)?;
    let mut t = start_table(
        &cfg,
        vec![
            col("z", Dim::Length),
            col("energy", Dim::Energy),
            col("force", Dim::Force),
            col("direction", Dim::Pure),
            col("regime", Dim::Pure),
        ],
    );
    t.push(vec![
        args.z.into(),
        res.energy.into(),
        res.force.into(),
        direction(res.force).into(),
        res.regime.as_str().into(),
    ]);
    note(&mut t, &res.notes);
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PairNearPlateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_b: f64,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub pos_a: Vec3,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub pos_b: Vec3,
    #[arg(long)]
    pub lambda_min: Option<f64>,
}

pub fn pair_near_plate(args: &PairNearPlateArgs, common: &Common) -> Result<ResultTable, CliError> {
    let cfg = RunConfig::new("pair-near-plate", args, common);
    let res: PlatePairResult =
        boundary::pair_near_plate(args.alpha_a, args.alpha_b, args.pos_a, args.pos_b, args.lambda_min)?;
    let mut t = start_table(
        &cfg,
        vec![
            col("r", Dim::Length),
            col("r_bar", Dim::Length),
            col("sin2_theta", Dim::Pure),
            col("sin2_theta_bar", Dim::Pure),
            col("direct", Dim::Energy),
            col("image", Dim::Energy),
            col("cross", Dim::Energy),
            col("total", Dim::Energy),
            col("regime", Dim::Pure),
        ],
    );
    let g = &res.geometry;
    t.push(vec![
        g.r.into(),
        g.r_bar.into(),
        g.sin2_theta.into(),
        g.sin2_theta_bar.into(),
        res.direct.into(),
        res.image.into(),
        res.cross.into(),
        res.total.value.into(),
        regime_cell(&res.total),
    ]);
    note(&mut t, &res.total.notes);
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnergyDensityArgs {
    /// Source atom (file path or inline JSON).
    #[arg(long, conflicts_with_all = ["plate", "alpha"])]
    #[serde(skip)]
    pub atom: Option<String>,
    /// Far-zone closed form for a static polarizability.
    #[arg(long, conflicts_with = "plate")]
    pub alpha: Option<f64>,
    /// Density above a conducting plate at z = 0 instead of around an atom.
    #[arg(long)]
    pub plate: bool,
    /// Distances from the atom (or heights above the plate); repeatable.
    #[arg(long = "r", required = true, allow_hyphen_values = true, value_delimiter = ',')]
    pub radii: Vec<f64>,
}

pub fn energy_density(args: &EnergyDensityArgs, common: &Common) -> Result<ResultTable, CliError> {
    let atom = args.atom.as_deref().map(|s| load_atom("atom", s)).transpose()?;
    let mut cfg = RunConfig::new("energy-density", args, common);
    if let Some(a) = &atom {
        cfg = cfg.with_atom("atom", a);
    }
    let columns = vec![
        col(if args.plate { "z" } else { "r" }, Dim::Length),
        col("electric_density", Dim::EnergyDensity),
        col("magnetic_density", Dim::EnergyDensity),
        col("representation", Dim::Pure),
    ];
    let profile = if args.plate {
        let mut p = DensityProfile::far_closed_form(0.0, &args.radii)?;
        for (i, &z) in args.radii.iter().enumerate() {
            p.electric[i] = density::plate_density(z, FieldKind::Electric)?;
            p.magnetic[i] = density::plate_density(z, FieldKind::Magnetic)?;
        }
        (p, "plate-closed-form")
    } else if let Some(a) = &atom {
        let p = DensityProfile::compute(&a.model(), &args.radii, &common.quadrature()?)?;
        let r = p.representation.as_str();
        (p, r)
    } else if let Some(alpha) = args.alpha {
        let p = DensityProfile::far_closed_form(alpha, &args.radii)?;
        let r = p.representation.as_str();
        (p, r)
    } else {
        return Err(CliError::Config("give --atom, --alpha or --plate".into()));
    };
    let (p, repr) = profile;
    let mut t = start_table(&cfg, columns);
    for i in 0..p.radii.len() {
        t.push(vec![p.radii[i].into(), p.electric[i].into(), p.magnetic[i].into(), repr.into()]);
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CorrelationArgs {
    #[arg(long)]
    #[serde(skip)]
    pub atom_a: String,
    #[arg(long)]
    #[serde(skip)]
    pub atom_b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r: f64,
}

pub fn correlation(args: &CorrelationArgs, common: &Common) -> Result<ResultTable, CliError> {
    let a = load_atom("atom-a", &args.atom_a)?;
    let b = load_atom("atom-b", &args.atom_b)?;
    let cfg = RunConfig::new("correlation", args, common).with_atom("atom-a", &a).with_atom("atom-b", &b);
    let pair = PairSpec::new(a.model(), a.kind, b.model(), b.kind, args.r)?;
    let res = two_body::cp_via_correlation(&pair, &common.quadrature()?)?;
    let mut t = start_table(
        &cfg,
        vec![
            col("r", Dim::Length),
            col("energy", Dim::Energy),
            col("direct_integral", Dim::Energy),
            col("relative_deviation", Dim::Pure),
            col("regime", Dim::Pure),
        ],
    );
    t.push(vec![
        args.r.into(),
        res.energy.value.into(),
        res.reference.into(),
        res.relative_deviation.into(),
        regime_cell(&res.energy),
    ]);
    note(&mut t, &res.energy.notes);
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Symmetric,
    Antisymmetric,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Symmetric => Parity::Symmetric,
            ParityArg::Antisymmetric => Parity::Antisymmetric,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BellArgs {
    /// Transition wavenumber shared by both atoms.
    #[arg(long, allow_hyphen_values = true)]
    pub k0: f64,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub dipole_a: Vec3,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub dipole_b: Vec3,
    #[arg(long, value_enum, default_value_t = ParityArg::Symmetric)]
    pub parity: ParityArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ResonanceArgs {
    #[command(flatten)]
    pub bell: BellArgs,
    /// Separation vector r_B − r_A.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub r_vec: Vec3,
}

pub fn resonance(args: &ResonanceArgs, common: &Common) -> Result<ResultTable, CliError> {
    let cfg = RunConfig::new("resonance", args, common);
    let b = &args.bell;
    let spec = BellPairSpec::from_dipoles(b.k0, b.dipole_a, b.dipole_b, args.r_vec, b.parity.into())?;
    let res = resonance::resonance_energy(&spec)?;
    let mut t = start_table(
        &cfg,
        vec![col("r", Dim::Length), col("energy", Dim::Energy), col("parity", Dim::Pure), col("regime", Dim::Pure)],
    );
    let parity = serde_json::to_value(b.parity).expect("parity serializes");
    t.push(vec![
        args.r_vec.norm().into(),
        res.value.into(),
        parity.as_str().unwrap_or_default().into(),
        regime_cell(&res),
    ]);
    note(&mut t, &res.notes);
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AcceleratedMode {
    /// Scalar-field Casimir–Polder energy.
    Scalar,
    /// Resonance energy of a Bell pair separated along z.
    Resonance,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AcceleratedArgs {
    #[arg(long, value_enum)]
    pub mode: AcceleratedMode,
    /// Proper acceleration.
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Separation along z.
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    /// Scalar mode: atomic frequency.
    #[arg(long, required_if_eq("mode", "scalar"))]
    pub omega0: Option<f64>,
    /// Scalar mode: coupling constant.
    #[arg(long, required_if_eq("mode", "scalar"))]
    pub lambda: Option<f64>,
    #[arg(long, required_if_eq("mode", "resonance"))]
    pub k0: Option<f64>,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, required_if_eq("mode", "resonance"))]
    pub dipole_a: Option<Vec3>,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, required_if_eq("mode", "resonance"))]
    pub dipole_b: Option<Vec3>,
    #[arg(long, value_enum, default_value_t = ParityArg::Symmetric)]
    pub parity: ParityArg,
}

pub fn accelerated(args: &AcceleratedArgs, common: &Common) -> Result<ResultTable, CliError> {
    let cfg = RunConfig::new("accelerated", args, common);
    let acc = AcceleratedPair::new(args.a, args.z)?;
    let mut t = start_table(
        &cfg,
        vec![
            col("z", Dim::Length),
            col("z_a", Dim::Length),
            col("unruh_temperature", Dim::Temperature),
            col("energy", Dim::Energy),
            col("regime", Dim::Pure),
        ],
    );
    match args.mode {
        AcceleratedMode::Scalar => {
            let (Some(w), Some(l)) = (args.omega0, args.lambda) else {
                return Err(CliError::Config("scalar mode needs --omega0 and --lambda".into()));
            };
            let pair = ScalarAtomPair::new(w, l)?;
            let report = noninertial::scalar_cp_accelerated(&pair, &acc);
            t.push(vec![
                args.z.into(),
                report.z_a.into(),
                report.unruh_temperature.into(),
                report.value.unwrap_or(f64::NAN).into(),
                report.regime.as_str().into(),
            ]);
            for law in &report.scaling_laws {
                t.meta("scaling_law", format!("{}: {}", law.zone, law.law));
            }
            note(&mut t, &report.notes);
        }
        AcceleratedMode::Resonance => {
            let (Some(k0), Some(da), Some(db)) = (args.k0, args.dipole_a, args.dipole_b) else {
                return Err(CliError::Config("resonance mode needs --k0, --dipole-a and --dipole-b".into()));
            };
            let spec = BellPairSpec::from_dipoles(k0, da, db, Vec3::new(0.0, 0.0, args.z), args.parity.into())?;
            let res = noninertial::resonance_accelerated(&spec, &acc)?;
            t.push(vec![
                args.z.into(),
                acc.z_a().into(),
                acc.unruh_temperature().into(),
                res.value.into(),
                regime_cell(&res),
            ]);
            note(&mut t, &res.notes);
        }
    }
    Ok(t)
}
