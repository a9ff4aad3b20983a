//! The four subcommands: spectrum, potential, wavefunction, conformance.

use std::collections::HashMap;

use ws_spectra_core::closed_form::{
    kg_coefficients, kg_energy_complex, kg_reality_condition, schrodinger_energy,
    schrodinger_energy_swave, Branch, QuantumState, REALITY_TOL,
};
use ws_spectra_core::oracle::{
    compare_eigenfunctions, solve_all, solve_state, EigenResult, RadialGrid, ShootingProblem,
    Variant,
};
use ws_spectra_core::potential::{
    effective_potential_approx, effective_potential_exact, pekeris_coefficients,
};
use ws_spectra_core::wavefunction::{
    kg_wavefunction, normalize, se_exponents, se_wavefunction, WavefunctionSpec,
};

use crate::config::{EquationKind, RunConfig};
use crate::output::{fmt_num, write_csv, write_report};

/// Command failure, mapped to the exit-code contract (1 conformance,
/// 2 usage/config, 3 solver).
#[derive(Debug)]
pub enum CmdError {
    Conformance(String),
    Usage(String),
    Solver(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Conformance(_) => 1,
            CmdError::Usage(_) => 2,
            CmdError::Solver(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Conformance(m) | CmdError::Usage(m) | CmdError::Solver(m) => m,
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Usage(format!("i/o error: {e}"))
    }
}

fn states_up_to(n_max: u32) -> Vec<QuantumState> {
    let mut out = Vec::new();
    for n_principal in 1..=n_max {
        for l in 0..n_principal {
            out.push(QuantumState::from_nodes(n_principal - l - 1, l));
        }
    }
    out
}

/// Solve one variant for every ℓ < n_max, indexed by (ℓ, node count).
fn oracle_levels(cfg: &RunConfig, variant: Variant) -> HashMap<(u32, u32), EigenResult> {
    let p = cfg.params();
    let grid = RadialGrid::for_params(&p);
    let mut out = HashMap::new();
    for l in 0..cfg.n_max {
        let problem = ShootingProblem {
            variant,
            params: p,
            l,
            m0: cfg.mass(),
            units: cfg.unit_system(),
        };
        for res in solve_all(&problem, &grid, cfg.branch) {
            out.entry((l, res.node_count as u32)).or_insert(res);
        }
    }
    out
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<(), CmdError> {
    let p = cfg.params();
    let (m, u) = (cfg.mass(), cfg.unit_system());

    let (exact, pekeris) = match cfg.equation {
        EquationKind::Schrodinger => (
            Some(oracle_levels(cfg, Variant::Exact)),
            oracle_levels(cfg, Variant::Pekeris),
        ),
        // the relativistic solver handles the replaced barrier only; the
        // exact-barrier column is left empty
        EquationKind::KleinGordon => (None, oracle_levels(cfg, Variant::KleinGordon)),
    };

    let header = [
        "label",
        "N",
        "l",
        "n_r",
        "E_closed_form",
        "E_oracle_exact",
        "E_oracle_pekeris",
        "flags",
    ];
    let mut rows = Vec::new();
    for state in states_up_to(cfg.n_max) {
        let mut flags: Vec<&str> = Vec::new();
        let closed = match cfg.equation {
            EquationKind::Schrodinger => {
                let e = schrodinger_energy(state, &p, m, &u);
                if !e.valid {
                    flags.push("closed-form-invalid");
                }
                e.energy
            }
            EquationKind::KleinGordon => {
                let e = kg_energy_complex(state, cfg.branch, &p, m, &u);
                let is_real = e.im.abs() <= REALITY_TOL * e.re.abs().max(1.0);
                if !is_real || !kg_reality_condition(state, &p, m, &u) {
                    flags.push("closed-form-complex");
                    f64::NAN
                } else {
                    e.re
                }
            }
        };
        let key = (state.l(), state.n_r());
        let e_exact = match &exact {
            Some(map) => match map.get(&key) {
                Some(r) => r.energy,
                None => {
                    flags.push("oracle-exact-unbound");
                    f64::NAN
                }
            },
            None => f64::NAN,
        };
        let e_pek = match pekeris.get(&key) {
            Some(r) => r.energy,
            None => {
                flags.push("oracle-pekeris-unbound");
                f64::NAN
            }
        };
        rows.push(vec![
            state.label(),
            state.n_principal().to_string(),
            state.l().to_string(),
            state.n_r().to_string(),
            fmt_num(closed),
            fmt_num(e_exact),
            fmt_num(e_pek),
            if flags.is_empty() {
                "-".to_string()
            } else {
                flags.join(";")
            },
        ]);
    }

    let path = cfg.out_dir.join("spectrum.csv");
    write_csv(&path, &header, &rows)?;
    println!(
        "{:<6} {:>2} {:>2} {:>3} {:>20} {:>20} {:>20}  {}",
        "label", "N", "l", "n_r", "E_closed_form", "E_oracle_exact", "E_oracle_pekeris", "flags"
    );
    for r in &rows {
        println!(
            "{:<6} {:>2} {:>2} {:>3} {:>20} {:>20} {:>20}  {}",
            r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7]
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_potential(cfg: &RunConfig) -> Result<(), CmdError> {
    let p = cfg.params();
    let (m, u) = (cfg.mass(), cfg.unit_system());
    let mut header: Vec<String> = vec!["beta_x".into()];
    for &l in &cfg.l_list {
        header.push(format!("V_eff_exact_l{l}"));
        header.push(format!("V_eff_approx_l{l}"));
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rows = Vec::new();
    for i in 0..cfg.samples {
        let bx = cfg.bx_min
            + (cfg.bx_max - cfg.bx_min) * i as f64 / (cfg.samples - 1) as f64;
        let r = p.r0 + p.a * bx;
        let mut row = vec![fmt_num(bx)];
        for &l in &cfg.l_list {
            let ex = effective_potential_exact(r, l, &p, m, &u)
                .map_err(|e| CmdError::Usage(format!("invalid radius in window: {e}")))?;
            row.push(fmt_num(ex));
            row.push(fmt_num(effective_potential_approx(r, l, &p, m, &u)));
        }
        rows.push(row);
    }
    let path = cfg.out_dir.join("potential.csv");
    write_csv(&path, &header_refs, &rows)?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Normalized closed-form radial function for the configured equation, if
/// the construction is real and normalizable.
fn closed_form_spec(cfg: &RunConfig, state: QuantumState) -> Option<WavefunctionSpec> {
    let p = cfg.params();
    let (m, u) = (cfg.mass(), cfg.unit_system());
    let spec = match cfg.equation {
        EquationKind::Schrodinger => {
            let energy = schrodinger_energy(state, &p, m, &u).energy;
            let (eps, cap_a) = se_exponents(state, energy, &p, m, &u).ok()?;
            se_wavefunction(state, eps, cap_a, &p).ok()?
        }
        EquationKind::KleinGordon => {
            let e = kg_energy_complex(state, cfg.branch, &p, m, &u);
            if e.im.abs() > REALITY_TOL * e.re.abs().max(1.0) {
                return None;
            }
            let coeffs = kg_coefficients(state, e.re, &p, m, &u);
            kg_wavefunction(state, &coeffs, &p).ok()?
        }
    };
    let report = normalize(&spec).ok()?;
    Some(spec.with_norm(spec.norm * report.constant))
}

pub fn cmd_wavefunction(cfg: &RunConfig) -> Result<(), CmdError> {
    let p = cfg.params();
    let state = QuantumState::from_nodes(cfg.state_n, cfg.state_l);
    let grid = RadialGrid::for_params(&p);
    let solve = |variant: Variant| {
        let problem = ShootingProblem {
            variant,
            params: p,
            l: cfg.state_l,
            m0: cfg.mass(),
            units: cfg.unit_system(),
        };
        solve_state(&problem, &grid, cfg.state_n, cfg.branch)
    };

    let (exact, pekeris) = match cfg.equation {
        EquationKind::Schrodinger => {
            let e = solve(Variant::Exact)
                .map_err(|e| CmdError::Solver(format!("state {}: {e}", state.label())))?;
            let k = solve(Variant::Pekeris)
                .map_err(|e| CmdError::Solver(format!("state {}: {e}", state.label())))?;
            (Some(e), k)
        }
        EquationKind::KleinGordon => {
            let k = solve(Variant::KleinGordon)
                .map_err(|e| CmdError::Solver(format!("state {}: {e}", state.label())))?;
            (None, k)
        }
    };

    let closed = closed_form_spec(cfg, state);
    let full = &pekeris.wavefunction.grid;
    let stride = (full.len() / 1000).max(1);

    // sign-align everything with the reference column (exact when present)
    let reference = exact.as_ref().unwrap_or(&pekeris);
    let align = |values: &[f64]| -> f64 {
        let overlap: f64 = reference
            .wavefunction
            .values
            .iter()
            .zip(values)
            .map(|(x, y)| x * y)
            .sum();
        if overlap < 0.0 {
            -1.0
        } else {
            1.0
        }
    };
    let pek_sign = align(&pekeris.wavefunction.values);
    let closed_values: Option<(Vec<f64>, f64)> = closed.as_ref().map(|spec| {
        let v: Vec<f64> = full.iter().map(|&r| spec.eval_r(r)).collect();
        let s = align(&v);
        (v, s)
    });

    let header = ["r", "u_exact", "u_pekeris", "u_closed_form"];
    let mut rows = Vec::new();
    for i in (0..full.len()).step_by(stride) {
        rows.push(vec![
            fmt_num(full[i]),
            match &exact {
                Some(e) => fmt_num(e.wavefunction.values[i]),
                None => "-".to_string(),
            },
            fmt_num(pek_sign * pekeris.wavefunction.values[i]),
            match &closed_values {
                Some((v, s)) => fmt_num(s * v[i]),
                None => "-".to_string(),
            },
        ]);
    }
    let path = cfg.out_dir.join("wavefunction.csv");
    write_csv(&path, &header, &rows)?;

    // sidecar deviation report
    let mut lines = vec![format!(
        "state, {}, nodes, {}, l, {}",
        state.label(),
        cfg.state_n,
        cfg.state_l
    )];
    if cfg.equation == EquationKind::Schrodinger {
        let cmp = compare_eigenfunctions(
            cfg.state_n,
            cfg.state_l,
            Variant::Exact,
            Variant::Pekeris,
            &p,
            cfg.mass(),
            &cfg.unit_system(),
        )
        .map_err(|e| CmdError::Solver(e.to_string()))?;
        lines.push(format!("E_exact, {}", fmt_num(cmp.energy_a)));
        lines.push(format!("E_pekeris, {}", fmt_num(cmp.energy_b)));
        lines.push(format!("L2_difference, {}", fmt_num(cmp.l2_difference)));
        lines.push(format!(
            "argmax_shift_exact_minus_pekeris, {}",
            fmt_num(cmp.argmax_shift)
        ));
        lines.push(format!(
            "node_positions_exact, {}",
            cmp.nodes_a.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join("; ")
        ));
        lines.push(format!(
            "node_positions_pekeris, {}",
            cmp.nodes_b.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join("; ")
        ));
    } else {
        lines.push(format!("E_oracle, {}", fmt_num(pekeris.energy)));
    }
    let report_path = cfg.out_dir.join("wavefunction_report.txt");
    write_report(&report_path, &lines)?;
    println!("wrote {}", path.display());
    println!("wrote {}", report_path.display());
    Ok(())
}

/// Reference levels: (label, ℓ, node count, approximate column, exact
/// column). The reference table's "5s"/"6s" rows carry the node-count-5/6
/// s-levels; the node-count-4 s-level is absent from it.
const BENCH: [(&str, u32, u32, f64, f64); 21] = [
    ("1s", 0, 0, -49.57, -49.57),
    ("2s", 0, 1, -48.50, -48.50),
    ("2p", 1, 0, -49.52, -49.17),
    ("3s", 0, 2, -46.96, -46.96),
    ("3p", 1, 1, -48.45, -47.84),
    ("3d", 2, 0, -49.40, -48.68),
    ("4s", 0, 3, -45.02, -45.02),
    ("4p", 1, 2, -46.91, -46.09),
    ("4d", 2, 1, -48.33, -47.11),
    ("4f", 3, 0, -49.22, -48.12),
    ("5s", 0, 5, -40.11, -40.11),
    ("5p", 1, 3, -44.96, -43.96),
    ("5d", 2, 2, -46.79, -45.15),
    ("5f", 3, 1, -48.16, -46.32),
    ("5g", 4, 0, -48.99, -47.49),
    ("6s", 0, 6, -37.21, -37.21),
    ("6p", 1, 4, -42.67, -41.50),
    ("6d", 2, 3, -44.85, -42.85),
    ("6f", 3, 2, -46.62, -44.17),
    ("6g", 4, 1, -47.93, -45.48),
    ("6h", 5, 0, -48.70, -46.79),
];

struct Line {
    criterion: String,
    computed: String,
    reference: String,
    delta: String,
    status: &'static str,
}

impl Line {
    fn asserted(criterion: String, computed: f64, reference: f64, tol: f64) -> Self {
        let delta = computed - reference;
        Line {
            criterion,
            computed: fmt_num(computed),
            reference: fmt_num(reference),
            delta: fmt_num(delta),
            status: if delta.abs() <= tol && delta.is_finite() {
                "PASS"
            } else {
                "FAIL"
            },
        }
    }

    fn reported(criterion: String, computed: f64, reference: Option<f64>) -> Self {
        Line {
            criterion,
            computed: fmt_num(computed),
            reference: reference.map(fmt_num).unwrap_or_else(|| "-".to_string()),
            delta: reference
                .map(|r| fmt_num(computed - r))
                .unwrap_or_else(|| "-".to_string()),
            status: "REPORTED",
        }
    }

    fn render(&self) -> String {
        format!(
            "{}, {}, {}, {}, {}",
            self.criterion, self.computed, self.reference, self.delta, self.status
        )
    }
}

pub fn cmd_conformance(cfg: &RunConfig) -> Result<(), CmdError> {
    let p = cfg.params();
    let (m, u) = (cfg.mass(), cfg.unit_system());
    let mut lines: Vec<Line> = Vec::new();

    // reference-table cells, both solver variants, restricted to N <= n_max
    let bench: Vec<_> = BENCH
        .iter()
        .filter(|(label, ..)| label[..1].parse::<u32>().unwrap() <= cfg.n_max)
        .collect();
    let exact = oracle_levels(cfg, Variant::Exact);
    let pekeris = oracle_levels(cfg, Variant::Pekeris);
    for &&(label, l, nodes, approx_ref, exact_ref) in &bench {
        let e = exact.get(&(l, nodes)).map(|r| r.energy).unwrap_or(f64::NAN);
        let k = pekeris
            .get(&(l, nodes))
            .map(|r| r.energy)
            .unwrap_or(f64::NAN);
        lines.push(Line::asserted(
            format!("table-exact-{label}"),
            e,
            exact_ref,
            0.02,
        ));
        lines.push(Line::asserted(
            format!("table-approx-{label}"),
            k,
            approx_ref,
            0.02,
        ));
        if l == 0 {
            lines.push(Line::asserted(format!("swave-agreement-{label}"), k, e, 1e-9));
        }
    }

    // replacement fidelity: Taylor residual and window deviation
    let mut worst_taylor = 0.0_f64;
    for i in 0..=198 {
        let t = 1.0 + 99.0 * f64::from(i) / 198.0;
        let pt = ws_spectra_core::WoodsSaxonParams::new(1.0, t, 1.0).expect("positive");
        let c = pekeris_coefficients(1, &pt, m, &u);
        let g = |x: f64| {
            let s = 1.0 / (1.0 + x.exp());
            c.d0 + c.d1 * s + c.d2 * s * s
        };
        let h = 0.04;
        let d1 = |h: f64| (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h);
        let d2 = |h: f64| {
            (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h))
                / (12.0 * h * h)
        };
        let r1 = d1(0.5 * h) + (d1(0.5 * h) - d1(h)) / 15.0;
        let r2 = d2(0.5 * h) + (d2(0.5 * h) - d2(h)) / 15.0;
        worst_taylor = worst_taylor
            .max((g(0.0) - 1.0).abs())
            .max((r1 + 2.0 / t).abs() / (2.0 / t))
            .max((r2 - 6.0 / (t * t)).abs() / (6.0 / (t * t)));
    }
    lines.push(Line::asserted(
        "pekeris-taylor-residual-max".into(),
        worst_taylor,
        0.0,
        1e-8,
    ));
    let mut worst_dev = 0.0_f64;
    for l in 0..=2u32 {
        for i in 0..=100 {
            let x = p.r0 * (-0.25 + 0.5 * f64::from(i) / 100.0);
            let ex = effective_potential_exact(p.r0 + x, l, &p, m, &u)
                .map_err(|e| CmdError::Usage(e.to_string()))?;
            let ap = effective_potential_approx(p.r0 + x, l, &p, m, &u);
            worst_dev = worst_dev.max(((ex - ap) / ex).abs());
        }
    }
    lines.push(Line::asserted(
        "effective-potential-deviation-max".into(),
        worst_dev,
        0.0,
        0.05,
    ));

    // closed-form s-wave reductions (relativistic check on a nuclear preset)
    let fig3 = crate::config::RunConfig::preset_fig3();
    let (p3, m3, u3) = (fig3.params(), fig3.mass(), fig3.unit_system());
    let mut worst_kg = 0.0_f64;
    for n in 0..=20u32 {
        for branch in [Branch::Particle, Branch::Antiparticle] {
            let state = QuantumState::from_nodes(n, 0);
            let general = kg_energy_complex(state, branch, &p3, m3, &u3);
            let beta = p3.beta();
            let delta = u3.delta();
            let mc2 = u3.rest_energy(m3);
            let a1p_sq = -(delta * p3.v0 / beta).powi(2);
            let n1 = -(2.0 * f64::from(n) + 1.0)
                + num_complex::Complex64::new(1.0 + 4.0 * a1p_sq, 0.0).sqrt();
            let den = beta * beta * n1 * n1 + 4.0 * delta * delta * p3.v0 * p3.v0;
            let rad = mc2 * mc2 * delta * delta / den - 1.0 / 16.0;
            let swave = -p3.v0 / 2.0 + branch.sign() * (beta * n1 / delta) * rad.sqrt();
            worst_kg = worst_kg.max((general - swave).norm() / general.norm().max(1.0));
        }
    }
    lines.push(Line::asserted(
        "kg-swave-reduction-max".into(),
        worst_kg,
        0.0,
        1e-12,
    ));
    let mut worst_se = 0.0_f64;
    for n in 0..=20u32 {
        let general = schrodinger_energy(QuantumState::from_nodes(n, 0), &p, m, &u).energy;
        let swave = schrodinger_energy_swave(n, &p, m, &u).energy;
        worst_se = worst_se.max(((general - swave) / general).abs());
    }
    lines.push(Line::asserted(
        "se-swave-reduction-max".into(),
        worst_se,
        0.0,
        1e-12,
    ));

    // reported: closed-form levels against the table under both index
    // conventions (node count, and principal-minus-one)
    for &&(label, l, _, approx_ref, _) in &bench {
        let n_principal: u32 = label[..1].parse().unwrap();
        let by_nodes = schrodinger_energy(
            QuantumState::from_nodes(n_principal - l - 1, l),
            &p,
            m,
            &u,
        )
        .energy;
        let by_principal =
            schrodinger_energy(QuantumState::from_nodes(n_principal - 1, l), &p, m, &u).energy;
        lines.push(Line::reported(
            format!("closed-form-nodes-{label}"),
            by_nodes,
            Some(approx_ref),
        ));
        lines.push(Line::reported(
            format!("closed-form-principal-{label}"),
            by_principal,
            Some(approx_ref),
        ));
    }
    // the documented closed-form s-wave value at the benchmark geometry
    lines.push(Line::reported(
        "closed-form-swave-n0".into(),
        schrodinger_energy_swave(0, &p, m, &u).energy,
        Some(-49.57),
    ));
    // the s-level absent from the reference table (node count 4)
    if cfg.n_max >= 5 {
        if let Some(r) = exact.get(&(0, 4)) {
            lines.push(Line::reported("table-missing-s-level".into(), r.energy, None));
        }
    }
    // reported: relativistic closed-form roots against the shooting solver
    // (the deviation is documented, not bounded)
    let mut kg_cfg = fig3.clone();
    kg_cfg.n_max = 2;
    let kg_oracle = oracle_levels(&kg_cfg, Variant::KleinGordon);
    for l in 0..2u32 {
        for n in 0..2u32 {
            let state = QuantumState::from_nodes(n, l);
            let closed = kg_energy_complex(state, kg_cfg.branch, &p3, m3, &u3);
            lines.push(Line::reported(
                format!("kg-closed-vs-oracle-{}", state.label()),
                closed.re,
                kg_oracle.get(&(l, n)).map(|r| r.energy),
            ));
        }
    }

    // reality boundaries: largest node count with a real relativistic level
    for l in 0..=2u32 {
        let mut last = -1i64;
        for n in 0..=12u32 {
            if kg_reality_condition(QuantumState::from_nodes(n, l), &p3, m3, &u3) {
                last = i64::from(n);
            }
        }
        lines.push(Line::reported(
            format!("kg-reality-boundary-l{l}"),
            last as f64,
            None,
        ));
    }
    // printed closed-form normalization constant vs quadrature (the printed
    // double-sum is not self-consistent; the ratio is documented)
    for n in 0..=2u32 {
        let state = QuantumState::from_nodes(n, 0);
        let e = kg_energy_complex(state, Branch::Particle, &p3, m3, &u3);
        if e.im.abs() <= REALITY_TOL * e.re.abs().max(1.0) {
            let coeffs = kg_coefficients(state, e.re, &p3, m3, &u3);
            if let Ok(spec) = kg_wavefunction(state, &coeffs, &p3) {
                if let Ok(rep) = normalize(&spec) {
                    if let Some(cf) = rep.closed_form_crosscheck {
                        lines.push(Line::reported(
                            format!("printed-norm-ratio-n{n}"),
                            cf / rep.constant,
                            Some(1.0),
                        ));
                    }
                }
            }
        }
    }

    let rendered: Vec<String> = lines.iter().map(Line::render).collect();
    let path = cfg.out_dir.join("conformance_report.txt");
    write_report(&path, &rendered)?;
    for line in &rendered {
        println!("{line}");
    }
    println!("wrote {}", path.display());

    let failures: Vec<&Line> = lines.iter().filter(|l| l.status == "FAIL").collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CmdError::Conformance(format!(
            "{} conformance assertion(s) failed: {}",
            failures.len(),
            failures
                .iter()
                .map(|l| l.criterion.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}
