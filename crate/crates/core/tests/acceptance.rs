//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout; exits non-zero on any FAIL.

use std::f64::consts::PI;
use std::process::ExitCode;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vacuum_forces::boundary::{atom_wall, cross_term_polynomial, pair_near_plate};
use vacuum_forces::density::{density_around_atom, density_route_energy, plate_density, FieldKind};
use vacuum_forces::kernels::{apply_f_chain, apply_f_chain_radial, vacuum_e_correlation};
use vacuum_forces::noninertial::{resonance_accelerated, scalar_cp_accelerated, AcceleratedPair, ScalarAtomPair};
use vacuum_forces::polarizability::PolarizabilityKind;
use vacuum_forces::resonance::{resonance_energy, BellPairSpec, Parity};
use vacuum_forces::three_body::{three_body_equilateral_far, three_body_far, three_body_full, TripleSpec};
use vacuum_forces::two_body::{cp_far, cp_far_electric_magnetic, cp_full, cp_via_correlation, PairSpec};
use vacuum_forces::{DiffSpec, ImageGeometry, PolarizabilityModel, QuadratureSpec, TriangleGeometry, Vec3};

// Tolerances, pinned.
const TOL_FAR_COEFF: f64 = 1e-3;
const TOL_LONDON: f64 = 5e-3;
const TOL_EXACT: f64 = 4.0 * f64::EPSILON;
const TOL_EQUILATERAL_CLOSED: f64 = 1e-6;
const TOL_EQUILATERAL_FCHAIN: f64 = 5e-3;
const TOL_SLOPE_NEAR_3B: f64 = 0.1;
const TOL_SLOPE_FAR_3B: f64 = 0.05;
const TOL_FORCE_FD: f64 = 1e-8;
const TOL_DENSITY_FAR: f64 = 1e-3;
const TOL_DENSITY_SLOPE: f64 = 0.1;
const TOL_DENSITY_ROUTE: f64 = 1e-3;
const TOL_CORRELATION_ROUTE: f64 = 1e-6;
const TOL_PLATE_LIMIT: f64 = 1e-3;
const RANDOM_GEOMETRIES: usize = 10_000;
const TOL_RESONANCE_NEAR: f64 = 1e-3;
const TOL_RESONANCE_FAR_EXPONENT: f64 = 0.02;
const TOL_ACCEL_SCALAR: f64 = 1e-12;
const TOL_ACCEL_ENVELOPE: f64 = 0.05;
const TOL_ZERO_SPACING: f64 = 1e-2;
const TOL_FCHAIN: f64 = 1e-6;

struct Report {
    failed: usize,
}

impl Report {
    fn check(&mut self, id: usize, name: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {id:>2} {name}: {detail}");
            }
        }
    }
}

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<String, String> {
    let d = rel(got, want);
    let msg = format!("{label} {got:.10e} vs {want:.10e} (rel {d:.1e}, tol {tol:.0e})");
    if d <= tol {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn all(parts: Vec<Result<String, String>>) -> Result<String, String> {
    let failed = parts.iter().any(|p| p.is_err());
    let text = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect::<Vec<_>>().join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// k₀ = 1, mu2 = 3/2: unit static polarizability, λ_min = 2π.
fn unit_atom() -> PolarizabilityModel {
    PolarizabilityModel::two_level(1.0, 1.5).unwrap()
}

const LAMBDA: f64 = 2.0 * PI;

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn log_slope(f: impl Fn(f64) -> Result<f64, String>, r: f64) -> Result<f64, String> {
    let s = 1.1;
    Ok((f(r * s)?.abs() / f(r / s)?.abs()).ln() / (2.0 * s.ln()))
}

fn c1() -> Result<String, String> {
    let m = unit_atom();
    let r = 1e4 * LAMBDA;
    let e = cp_full(&PairSpec::electric(m.clone(), m, r).map_err(err)?, &quad()).map_err(err)?;
    within("E·r⁷/(αα)", e.value * r.powi(7), -23.0 / (4.0 * PI), TOL_FAR_COEFF)
}

fn c2() -> Result<String, String> {
    let m = unit_atom();
    let r = 1e-3 * LAMBDA;
    let e = cp_full(&PairSpec::electric(m.clone(), m, r).map_err(err)?, &quad()).map_err(err)?;
    within("E vs −0.75/r⁶", e.value, -0.75 / r.powi(6), TOL_LONDON)
}

fn c3() -> Result<String, String> {
    let r = 3.7;
    let ratio = cp_far_electric_magnetic(1.0, 1.0, r).map_err(err)? / cp_far(1.0, 1.0, r).map_err(err)?.abs();
    within("E_EM/|E_EE|", ratio, 7.0 / 23.0, TOL_EXACT)
}

fn c4() -> Result<String, String> {
    let r = 2.0;
    let want = 1264.0 / 243.0;
    let closed = three_body_equilateral_far([1.0; 3], r).map_err(err)?;
    let g = TriangleGeometry::equilateral(r).map_err(err)?;
    let numeric = three_body_far([1.0; 3], &g, &DiffSpec::default()).map_err(err)?.value;
    all(vec![
        within("closed E·r¹⁰·π", closed * r.powi(10) * PI, want, TOL_EQUILATERAL_CLOSED),
        within("F-chain E·r¹⁰·π", numeric * r.powi(10) * PI, want, TOL_EQUILATERAL_FCHAIN),
    ])
}

fn c5() -> Result<String, String> {
    let m = unit_atom();
    let energy = |r: f64| -> Result<f64, String> {
        let g = TriangleGeometry::equilateral(r).map_err(err)?;
        let spec = TripleSpec::new(m.clone(), m.clone(), m.clone(), g);
        Ok(three_body_full(&spec, &quad(), &DiffSpec::default()).map_err(err)?.value)
    };
    let near = log_slope(energy, 1e-3 * LAMBDA)?;
    let far = log_slope(energy, 1e3 * LAMBDA)?;
    let ok = (near + 9.0).abs() <= TOL_SLOPE_NEAR_3B && (far + 10.0).abs() <= TOL_SLOPE_FAR_3B;
    let msg = format!("near slope {near:.5} (−9 ± {TOL_SLOPE_NEAR_3B}), far slope {far:.5} (−10 ± {TOL_SLOPE_FAR_3B})");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c6() -> Result<String, String> {
    let z = 2.0;
    let w = atom_wall(1.0, z, None).map_err(err)?;
    let h = 1e-5 * z;
    let e = |z: f64| atom_wall(1.0, z, None).map(|w| w.energy).map_err(err);
    let fd = -(e(z + h)? - e(z - h)?) / (2.0 * h);
    all(vec![
        within("E·z⁴", w.energy * z.powi(4), -3.0 / (8.0 * PI), TOL_EXACT),
        within("F·z⁵", w.force * z.powi(5), -3.0 / (2.0 * PI), TOL_EXACT),
        within("F vs −dE/dz", w.force, fd, TOL_FORCE_FD),
    ])
}

fn c7() -> Result<String, String> {
    let z = 1.7;
    let want = 3.0 / (32.0 * PI * PI);
    all(vec![
        within("⟨E²⟩·z⁴", plate_density(z, FieldKind::Electric).map_err(err)? * z.powi(4), want, TOL_EXACT),
        within("⟨B²⟩·z⁴", plate_density(z, FieldKind::Magnetic).map_err(err)? * z.powi(4), -want, TOL_EXACT),
    ])
}

fn c8() -> Result<String, String> {
    let m = unit_atom();
    let q = quad();
    let r = 1e4 * LAMBDA;
    let d = |r: f64, f: FieldKind| density_around_atom(&m, r, f, &q).map_err(err);
    let se = log_slope(|r| d(r, FieldKind::Electric), 1e-3 * LAMBDA)?;
    let sm = log_slope(|r| d(r, FieldKind::Magnetic), 1e-3 * LAMBDA)?;
    let slope = |label: &str, s: f64, want: f64| {
        let msg = format!("{label} near slope {s:.5} ({want} ± {TOL_DENSITY_SLOPE})");
        if (s - want).abs() <= TOL_DENSITY_SLOPE {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    let k = 16.0 * PI * PI;
    all(vec![
        within("far ⟨E²⟩·r⁷", d(r, FieldKind::Electric)? * r.powi(7), 23.0 / k, TOL_DENSITY_FAR),
        within("far ⟨B²⟩·r⁷", d(r, FieldKind::Magnetic)? * r.powi(7), -7.0 / k, TOL_DENSITY_FAR),
        slope("electric", se, -6.0),
        slope("magnetic", sm, -5.0),
    ])
}

fn c9() -> Result<String, String> {
    let m = unit_atom();
    let r = 1e3 * LAMBDA;
    let e = density_route_energy(&m, 1.0, PolarizabilityKind::Electric, r, &quad()).map_err(err)?;
    let b = density_route_energy(&m, 1.0, PolarizabilityKind::Magnetic, r, &quad()).map_err(err)?;
    let positive = if b.energy.value > 0.0 {
        Ok("magnetic route positive".to_string())
    } else {
        Err(format!("magnetic route not positive: {:e}", b.energy.value))
    };
    all(vec![
        within("−(α/2)⟨E²⟩ vs E_EE", e.energy.value, cp_far(1.0, 1.0, r).map_err(err)?, TOL_DENSITY_ROUTE),
        within(
            "−(α/2)⟨B²⟩ vs E_EM",
            b.energy.value,
            cp_far_electric_magnetic(1.0, 1.0, r).map_err(err)?,
            TOL_DENSITY_ROUTE,
        ),
        positive,
    ])
}

fn c10() -> Result<String, String> {
    let m = unit_atom();
    let parts = [0.01, 1.0, 100.0]
        .iter()
        .map(|&f| {
            let pair = PairSpec::electric(m.clone(), m.clone(), f * LAMBDA).map_err(err)?;
            let corr = cp_via_correlation(&pair, &quad()).map_err(err)?;
            let full = cp_full(&pair, &quad()).map_err(err)?;
            within(&format!("r = {f}λ"), corr.energy.value, full.value, TOL_CORRELATION_ROUTE)
        })
        .collect();
    all(parts)
}

fn c11() -> Result<String, String> {
    let t = vacuum_e_correlation(Vec3::Z).map_err(err)?;
    let c = 4.0 / PI;
    let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)].iter().all(|&(i, j)| t.0[i][j] == 0.0);
    let ok = t.0[2][2] == c && t.0[0][0] == -c && t.0[1][1] == -c && off;
    let msg = format!("zz = {:e}, xx = {:e}, yy = {:e}, off-diagonal zero: {off}", t.0[2][2], t.0[0][0], t.0[1][1]);
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c12() -> Result<String, String> {
    let d = 1.0;
    let h = 1e3 * d;
    let p = pair_near_plate(1.0, 1.0, Vec3::new(0.0, 0.0, h), Vec3::new(d, 0.0, h), None).map_err(err)?;
    let limit = within("plate total vs free", p.total.value, cp_far(1.0, 1.0, d).map_err(err)?, TOL_PLATE_LIMIT);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst = f64::INFINITY;
    let mut tested = 0;
    while tested < RANDOM_GEOMETRIES {
        let mut pos =
            || Vec3::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0), rng.random_range(1e-3..10.0));
        let (a, b) = (pos(), pos());
        let Ok(g) = ImageGeometry::new(a, b) else { continue };
        let v = cross_term_polynomial(g.r, g.r_bar, g.sin2_theta, g.sin2_theta_bar);
        worst = worst.min(v / (g.r_bar.powi(4) * (g.r + g.r_bar)));
        tested += 1;
    }
    let positivity = if worst >= 0.0 {
        Ok(format!("cross-term polynomial ≥ 0 on {tested} random geometries"))
    } else {
        Err(format!("cross-term polynomial negative (scaled minimum {worst:e})"))
    };
    all(vec![limit, positivity])
}

fn c13() -> Result<String, String> {
    let (mu_a, mu_b) = (Vec3::new(0.3, 1.0, -0.2), Vec3::new(0.7, -0.1, 0.5));
    let r_vec = Vec3::new(0.2, 0.4, 0.9);
    let r = r_vec.norm();
    let n = r_vec * (1.0 / r);
    let energy = |k0: f64, a: Vec3, b: Vec3, rv: Vec3, p: Parity| -> Result<f64, String> {
        Ok(resonance_energy(&BellPairSpec::from_dipoles(k0, a, b, rv, p).map_err(err)?).map_err(err)?.value)
    };
    let near = energy(1e-3 / r, mu_a, mu_b, r_vec, Parity::Symmetric)?;
    let dipole = (mu_a.dot(mu_b) - 3.0 * mu_a.dot(n) * mu_b.dot(n)) / r.powi(3);

    // Far-zone envelope: peak |E| within one period near k₀r = 10³ and 10⁵.
    let peak = |centre: f64| -> Result<(f64, f64), String> {
        let mut best = (centre, 0.0);
        for i in 0..4000 {
            let x = centre + 2.0 * PI * i as f64 / 4000.0;
            let v = energy(1.0, Vec3::X, Vec3::X, Vec3::Z * x, Parity::Symmetric)?.abs();
            if v > best.1 {
                best = (x, v);
            }
        }
        Ok(best)
    };
    let (x1, v1) = peak(1e3)?;
    let (x2, v2) = peak(1e5)?;
    let exponent = (v2 / v1).ln() / (x2 / x1).ln();
    let env = format!("far envelope exponent {exponent:.5} (−1 ± {TOL_RESONANCE_FAR_EXPONENT})");
    let env = if (exponent + 1.0).abs() <= TOL_RESONANCE_FAR_EXPONENT { Ok(env) } else { Err(env) };

    let mut antisym = true;
    for (a, b, rv, k0) in [
        (mu_a, mu_b, r_vec, 0.7),
        (Vec3::X, Vec3::Y, Vec3::new(1.0, 1.0, 0.0), 3.0),
        (Vec3::Z, Vec3::Z, Vec3::new(0.0, 0.0, 12.5), 1.0),
    ] {
        antisym &= energy(k0, a, b, rv, Parity::Symmetric)? == -energy(k0, a, b, rv, Parity::Antisymmetric)?;
    }
    let parity = if antisym { Ok("parity flip negates exactly".into()) } else { Err("parity flip not exact".into()) };
    all(vec![within("near vs static dipole", near, dipole, TOL_RESONANCE_NEAR), env, parity])
}

fn c14() -> Result<String, String> {
    let pair = ScalarAtomPair::new(1.0, 1.0).map_err(err)?;
    let at = |z: f64| -> Result<f64, String> {
        scalar_cp_accelerated(&pair, &AcceleratedPair::new(1.0, z).map_err(err)?)
            .value
            .ok_or_else(|| format!("no value at z = {z}"))
    };
    let v = at(10.0)?;
    let exact = at(20.0)? / v == 1.0 / 16.0 && at(40.0)? / v == 1.0 / 256.0;
    let scaling = if exact { Ok("z⁻⁴ ratios exact".into()) } else { Err("z⁻⁴ ratios not exact".into()) };
    all(vec![within("E(z = 10)", v, -1.0 / (512.0 * PI.powi(4) * 1e4), TOL_ACCEL_SCALAR), scaling])
}

fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    num / den
}

fn c15() -> Result<String, String> {
    let (a, w) = (1.0, 1.0);
    let z_a = 1.0 / a;
    let energy = |dipole: Vec3, z: f64| -> Result<f64, String> {
        let spec = BellPairSpec::from_dipoles(w, dipole, dipole, Vec3::Z * z, Parity::Symmetric).map_err(err)?;
        Ok(resonance_accelerated(&spec, &AcceleratedPair::new(a, z).map_err(err)?).map_err(err)?.value)
    };
    let (lo, hi) = ((1e2 * z_a).ln(), (1e4 * z_a).ln());
    let n = 100_000;
    let grid: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();

    // Local maxima of ln|E| against ln z, refined by a parabola through three samples.
    let envelope = |dipole: Vec3| -> Result<f64, String> {
        let y: Vec<f64> =
            grid.iter().map(|&t| energy(dipole, t.exp()).map(|e| e.abs().ln())).collect::<Result<_, _>>()?;
        let mut crests = Vec::new();
        for i in 1..n {
            if y[i] > y[i - 1] && y[i] >= y[i + 1] {
                let (a0, a1, a2) = (y[i - 1], y[i], y[i + 1]);
                let step = grid[1] - grid[0];
                let shift = 0.5 * (a0 - a2) / (a0 - 2.0 * a1 + a2);
                let peak = a1 - 0.25 * (a0 - a2) * shift;
                crests.push((grid[i] + shift * step, peak));
            }
        }
        if crests.len() < 2 {
            return Err(format!("only {} crests found", crests.len()));
        }
        Ok(fit_slope(&crests))
    };
    let pz = envelope(Vec3::Z)?;
    let px = envelope(Vec3::X)?;
    let env = |label: &str, p: f64, want: f64| {
        let msg = format!("{label} envelope power {p:.4} ({want} ± {TOL_ACCEL_ENVELOPE})");
        if (p - want).abs() <= TOL_ACCEL_ENVELOPE {
            Ok(msg)
        } else {
            Err(msg)
        }
    };

    // Zeros of the ẑ-dipole energy by bisection on sign changes.
    let mut zeros = Vec::new();
    let mut prev = (grid[0], energy(Vec3::Z, grid[0].exp())?);
    for &t in grid.iter().step_by(100).skip(1) {
        let v = energy(Vec3::Z, t.exp())?;
        if v.signum() != prev.1.signum() {
            let (mut l, mut h, fl) = (prev.0, t, prev.1);
            for _ in 0..80 {
                let m = 0.5 * (l + h);
                if energy(Vec3::Z, m.exp())?.signum() == fl.signum() {
                    l = m
                } else {
                    h = m
                }
            }
            zeros.push((0.5 * (l + h)).exp());
        }
        prev = (t, v);
    }
    let ratios: Vec<f64> = zeros.windows(2).map(|p| p[1] / p[0]).collect();
    let want = (PI * a / (2.0 * w)).exp();
    let spacing = if ratios.is_empty() {
        Err("fewer than two zeros found".to_string())
    } else {
        let worst = ratios.iter().map(|&r| rel(r, want)).fold(0.0, f64::max);
        let msg = format!(
            "{} zero ratios, worst rel deviation {worst:.1e} from {want:.6} (tol {TOL_ZERO_SPACING:.0e})",
            ratios.len()
        );
        if worst <= TOL_ZERO_SPACING {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    all(vec![env("ẑ", pz, -2.0), env("x̂", px, -4.0), spacing])
}

fn c16() -> Result<String, String> {
    let r = 1.3;
    let g = TriangleGeometry::equilateral(r).map_err(err)?;
    let want = -1264.0 / (243.0 * r.powi(10));
    let f = |a: f64, b: f64, c: f64| 1.0 / (a * b * c * (a + b + c));
    let radial = apply_f_chain_radial(f, &g, &DiffSpec::default()).map_err(err)?.value;
    let vector = apply_f_chain(|a, b, c| f(a.norm(), b.norm(), c.norm()), &g, &DiffSpec::default()).map_err(err)?.value;
    all(vec![within("radial path", radial, want, TOL_FCHAIN), within("vector path", vector, want, TOL_FCHAIN)])
}

type Criterion = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 16] = [
        ("far-zone two-body coefficient", c1),
        ("near-zone two-body London limit", c2),
        ("electric-magnetic repulsion ratio", c3),
        ("three-body equilateral coefficient", c4),
        ("three-body near and far slopes", c5),
        ("atom-wall energy and force", c6),
        ("plate energy densities", c7),
        ("around-atom energy densities", c8),
        ("density-route equivalence", c9),
        ("correlation-route equivalence", c10),
        ("vacuum correlation tensor", c11),
        ("plate pair limit and cross-term positivity", c12),
        ("resonance zones and parity", c13),
        ("accelerated scalar Casimir-Polder", c14),
        ("accelerated resonance envelopes", c15),
        ("F-chain equilateral oracle", c16),
    ];
    let mut report = Report { failed: 0 };
    for (i, (name, f)) in criteria.iter().enumerate() {
        report.check(i + 1, name, f());
    }
    println!("{} of {} criteria passed", criteria.len() - report.failed, criteria.len());
    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
