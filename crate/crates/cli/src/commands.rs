//! The six subcommands. Each returns a table plus an optional self-check
//! failure message.

use frame_sync::protocols::sync::predicted_conditional_state;
use frame_sync::protocols::{monte_carlo_cost, GroupAligner, Teleporter};
use frame_sync::quantum::Ket;
use frame_sync::{
    brute_force_min_cost, expand, flat_state, min_joint_cost, no_go_witness,
    optimal_frameness_state, si_teleport, BipartiteFrameState, CostFunction, Generator, GroupTable,
    RandomSource, SyncProtocol, WitnessGenerators, WitnessReport,
};

use crate::config::{input_ket, InputSpec, RunConfig, MAX_COST_N, MAX_STATEVECTOR_N};
use crate::report::{Cell, ReportTable};
use crate::CliError;

pub const Z_GATE: f64 = 5.0;
pub const RESIDUAL_GATE: f64 = 1e-10;
pub const DEFAULT_TRIALS: usize = 100_000;
pub const DEFAULT_ORACLE_GRID: usize = 360;
pub const MAX_ORACLE_N: usize = 8;
pub const MAX_TELEPORT_DIM: usize = 16;
pub const FIDELITY_AVERAGE_POINTS: usize = 1024;

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub table: ReportTable,
    pub self_check: Option<String>,
}

impl CommandOutput {
    fn ok(table: ReportTable) -> Self {
        Self {
            table,
            self_check: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Cost,
    Scaling,
    SyncSim,
    TeleportDemo,
    Witness,
    Align,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cost => "cost",
            Command::Scaling => "scaling",
            Command::SyncSim => "sync-sim",
            Command::TeleportDemo => "teleport-demo",
            Command::Witness => "witness",
            Command::Align => "align",
        }
    }

    fn stochastic(self) -> bool {
        matches!(self, Command::SyncSim | Command::Align)
    }
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    match command {
        Command::Cost => cmd_cost(cfg),
        Command::Scaling => cmd_scaling(cfg),
        Command::SyncSim => cmd_sync_sim(cfg),
        Command::TeleportDemo => cmd_teleport_demo(cfg),
        Command::Witness => cmd_witness(cfg),
        Command::Align => cmd_align(cfg),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn table(command: Command, cfg: &RunConfig, columns: &[&str]) -> Result<ReportTable, CliError> {
    let mut t = ReportTable::new(columns);
    t.meta("tool", format!("frame-sync {}", env!("CARGO_PKG_VERSION")));
    t.meta("command", command.name());
    if command.stochastic() {
        t.meta("seed", cfg.seed().to_string());
    }
    let echo = serde_json::to_string(cfg).map_err(|e| CliError::Io(e.to_string()))?;
    t.meta("config", echo);
    Ok(t)
}

fn checked_total(cfg: &RunConfig, cap: usize) -> Result<usize, CliError> {
    let n = cfg.total()?;
    if n > cap {
        return Err(usage(format!("N: {n} exceeds the cap {cap}")));
    }
    Ok(n)
}

fn angle_out(cfg: &RunConfig, phi: f64) -> f64 {
    if cfg.degrees {
        phi.to_degrees()
    } else {
        phi
    }
}

pub fn cmd_cost(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let family = cfg.state_label();
    let cap = if family == "degenerate-demo" {
        MAX_STATEVECTOR_N
    } else {
        MAX_COST_N
    };
    let n = checked_total(cfg, cap)?;
    let cost = cfg.cost_function(n)?;
    let state = cfg.state(n, &cost)?;
    let min = min_joint_cost(state.amplitudes(), &cost).map_err(|e| usage(format!("cost: {e}")))?;

    let mut columns = vec!["family", "N", "cost", "min_cost", "frameness"];
    if cfg.oracle {
        columns.extend(["oracle_cost", "oracle_diff"]);
    }
    let mut t = table(Command::Cost, cfg, &columns)?;
    let mut row: Vec<Cell> = vec![
        family.clone().into(),
        n.into(),
        cfg.cost_label().into(),
        min.into(),
        (-min).into(),
    ];
    if cfg.oracle {
        if n > MAX_ORACLE_N {
            return Err(usage(format!("oracle: N must be at most {MAX_ORACLE_N}")));
        }
        let grid = cfg.grid.unwrap_or(DEFAULT_ORACLE_GRID);
        let oracle = brute_force_min_cost(state.amplitudes(), &cost, grid);
        row.extend([oracle.into(), (oracle - min).into()]);
    }
    t.push(row);
    if family == "sine-paper" && n > 0 {
        let best = optimal_frameness_state(n, &cost)
            .and_then(|s| min_joint_cost(s.amplitudes(), &cost))
            .map_err(|e| usage(format!("cost: {e}")))?;
        if min > best + 1e-12 {
            t.note(format!(
                "sine-paper cost {min} exceeds the optimal value {best} for N = {n}"
            ));
        }
    }
    Ok(CommandOutput::ok(t))
}

/// Least-squares slope of `ln y` against `ln x`; `None` unless every point
/// is positive and at least two abscissae differ.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|(x, y)| *x <= 0.0 || *y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Scaling sweep; slope rows carry `slope[a..b]` in the `N` column.
pub fn cmd_scaling(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let range = cfg.n_range.clone().unwrap_or_else(|| "8..256".into());
    let (lo, hi) = crate::config::parse_range(&range)?;
    if lo < 1 || hi > MAX_COST_N {
        return Err(usage(format!("N-range: must lie within 1..{MAX_COST_N}")));
    }
    let families = cfg
        .families
        .clone()
        .unwrap_or_else(|| vec!["optimal".into(), "flat".into()]);
    let mut t = table(Command::Scaling, cfg, &["family", "N", "min_cost"])?;
    let upper = lo + (hi - lo).div_ceil(2);
    let mut slopes = Vec::new();
    for family in &families {
        let mut fit = Vec::new();
        for n in lo..=hi {
            let cost = cfg.cost_function(n)?;
            let state = crate::config::family_state(family, n, &cost)?;
            let c = min_joint_cost(state.amplitudes(), &cost)
                .map_err(|e| usage(format!("cost: {e}")))?;
            t.push(vec![family.clone().into(), n.into(), c.into()]);
            if n >= upper {
                fit.push((n as f64, c));
            }
        }
        slopes.push((family.clone(), loglog_slope(&fit)));
    }
    for (family, slope) in slopes {
        match slope {
            Some(s) => t.push(vec![
                family.into(),
                format!("slope[{upper}..{hi}]").into(),
                s.into(),
            ]),
            None => t.note(format!(
                "{family}: log-log slope undefined over {upper}..{hi}"
            )),
        }
    }
    Ok(CommandOutput::ok(t))
}

/// Largest distance between Bob's simulated conditional states and the
/// closed form, or `None` when some sector is not in Schmidt form.
pub fn conditional_residual(protocol: &SyncProtocol, state: &BipartiteFrameState) -> Option<f64> {
    let aligned = (0..state.amplitudes().len()).all(|n| state.is_schmidt_aligned(n));
    if !aligned {
        return None;
    }
    protocol
        .outcomes()
        .iter()
        .filter(|o| o.probability > 0.0)
        .map(|o| {
            predicted_conditional_state(state, &o.outcome)
                .map(|p| o.bob_state.phase_aligned_distance(&p))
                .unwrap_or(f64::INFINITY)
        })
        .reduce(f64::max)
}

pub fn cmd_sync_sim(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
    if trials < 100 {
        return Err(usage(format!("trials: need at least 100, got {trials}")));
    }
    let ns = cfg.n_values()?;
    if let Some(n) = ns.iter().find(|&&n| n > MAX_STATEVECTOR_N) {
        return Err(usage(format!("N: {n} exceeds the cap {MAX_STATEVECTOR_N}")));
    }
    let mut t = table(
        Command::SyncSim,
        cfg,
        &[
            "family",
            "N",
            "outcomes",
            "analytic_min_cost",
            "mc_mean",
            "std_error",
            "z_score",
            "conditional_residual",
        ],
    )?;
    let master = RandomSource::new(cfg.seed());
    let mut failures = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let cost = cfg.cost_function(n)?;
        let state = cfg.state(n, &cost)?;
        let analytic =
            min_joint_cost(state.amplitudes(), &cost).map_err(|e| usage(format!("cost: {e}")))?;
        let protocol = SyncProtocol::new(&state).map_err(|e| usage(format!("state: {e}")))?;
        let mc = monte_carlo_cost(&protocol, &cost, trials, &master.split(i as u64))
            .map_err(|e| usage(format!("trials: {e}")))?;
        let z = mc.z_score(analytic);
        let residual = conditional_residual(&protocol, &state);
        if z.abs() > Z_GATE {
            failures.push(format!("N = {n}: |z| = {} > {Z_GATE}", z.abs()));
        }
        if let Some(r) = residual.filter(|r| *r > RESIDUAL_GATE) {
            failures.push(format!(
                "N = {n}: conditional residual {r} > {RESIDUAL_GATE}"
            ));
        }
        t.push(vec![
            cfg.state_label().into(),
            n.into(),
            protocol.outcomes().len().into(),
            analytic.into(),
            mc.mean.into(),
            mc.std_error.into(),
            z.into(),
            residual.map_or(Cell::from("n/a"), Cell::from),
        ]);
    }
    Ok(CommandOutput {
        table: t,
        self_check: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

pub fn cmd_teleport_demo(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (label, input) = input_ket(cfg.input.as_ref())?;
    if input.dim() > MAX_TELEPORT_DIM {
        return Err(usage(format!(
            "input: dimension exceeds {MAX_TELEPORT_DIM}"
        )));
    }
    let rows = cfg.grid.unwrap_or(8);
    if rows == 0 {
        return Err(usage("grid: need at least one point"));
    }
    let prepared = Teleporter::unspeakable(input.dim())
        .prepare(&input)
        .map_err(|e| usage(format!("input: {e}")))?;
    let g = Generator::uniform(input.dim());
    let si_fidelity = |phi: f64| -> Result<f64, CliError> {
        let out = si_teleport(&input, phi).map_err(|e| usage(format!("input: {e}")))?;
        let target = frame_sync::quantum::shift_ket(&g, phi, &input);
        Ok(target.inner(&out).norm_sqr())
    };
    let phi_col = if cfg.degrees { "phi_deg" } else { "phi_rad" };
    let mut t = table(
        Command::TeleportDemo,
        cfg,
        &["input", phi_col, "ui_fidelity", "si_fidelity"],
    )?;
    for i in 0..rows {
        let phi = std::f64::consts::TAU * i as f64 / rows as f64;
        t.push(vec![
            label.clone().into(),
            angle_out(cfg, phi).into(),
            prepared.fidelity(phi).into(),
            si_fidelity(phi)?.into(),
        ]);
    }
    let m = FIDELITY_AVERAGE_POINTS;
    let mut ui = 0.0;
    let mut si = 0.0;
    for i in 0..m {
        let phi = std::f64::consts::TAU * i as f64 / m as f64;
        ui += prepared.fidelity(phi);
        si += si_fidelity(phi)?;
    }
    t.push(vec![
        label.into(),
        format!("mean[{m}]").into(),
        (ui / m as f64).into(),
        (si / m as f64).into(),
    ]);
    Ok(CommandOutput::ok(t))
}

/// `(|00⟩ + |11⟩)/√2` on two qubits.
pub fn bell_resource() -> (Ket<f64>, Generator, Generator) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (
        Ket::from_real(&[s, 0.0, 0.0, s]),
        Generator::qubit(),
        Generator::qubit(),
    )
}

fn witness_resource(
    cfg: &RunConfig,
    name: &str,
) -> Result<(Ket<f64>, Generator, Generator), CliError> {
    match name {
        "bell" => Ok(bell_resource()),
        "flat" | "state" => {
            let n = cfg.n.unwrap_or(1);
            if n > MAX_STATEVECTOR_N {
                return Err(usage(format!("N: {n} exceeds the cap {MAX_STATEVECTOR_N}")));
            }
            let state = if name == "flat" {
                flat_state(n).map_err(|e| usage(format!("N: {e}")))?
            } else {
                let cost = cfg.cost_function(n)?;
                cfg.state(n, &cost)?
            };
            Ok((
                expand(&state),
                state.generator_a().clone(),
                state.generator_b().clone(),
            ))
        }
        other => Err(usage(format!(
            "resource: unknown resource `{other}` (bell, flat, state)"
        ))),
    }
}

fn witness_row(input: &str, resource: &str, r: &WitnessReport) -> Vec<Cell> {
    let ls: Vec<String> = r.eigenvalues().iter().map(|l| l.to_string()).collect();
    vec![
        input.into(),
        resource.into(),
        ls.join(";").into(),
        r.l_max.into(),
        r.m_max.into(),
        r.n_min.into(),
        r.invariance_residual.into(),
        r.projection_residual.into(),
        r.input_ui_norm.into(),
    ]
}

pub fn cmd_witness(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let cases: Vec<(Option<InputSpec>, String)> = if cfg.input.is_none() && cfg.resource.is_none() {
        vec![
            (Some(InputSpec::Named("plus".into())), "bell".into()),
            (Some(InputSpec::Named("plus".into())), "flat".into()),
            (Some(InputSpec::Named("zero".into())), "bell".into()),
        ]
    } else {
        vec![(
            cfg.input.clone(),
            cfg.resource.clone().unwrap_or_else(|| "bell".into()),
        )]
    };
    let mut t = table(
        Command::Witness,
        cfg,
        &[
            "input",
            "resource",
            "l_values",
            "l_max",
            "m_max",
            "n_min",
            "invariance_residual",
            "projection_residual",
            "input_ui_norm",
        ],
    )?;
    let mut failures = Vec::new();
    for (input, resource) in cases {
        let (label, psi0) = input_ket(input.as_ref())?;
        if psi0.dim() > MAX_STATEVECTOR_N {
            return Err(usage(format!(
                "input: dimension exceeds {MAX_STATEVECTOR_N}"
            )));
        }
        let (e, g_a, g_b) = witness_resource(cfg, &resource)?;
        let gens = WitnessGenerators {
            system: Generator::uniform(psi0.dim()),
            alice: g_a,
            bob: g_b,
        };
        let report =
            no_go_witness(&psi0, &e, &gens).map_err(|e| usage(format!("resource: {e}")))?;
        if report.invariance_residual > RESIDUAL_GATE {
            failures.push(format!(
                "{label} with {resource}: invariance residual {}",
                report.invariance_residual
            ));
        }
        t.push(witness_row(&label, &resource, &report));
    }
    Ok(CommandOutput {
        table: t,
        self_check: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

pub fn cmd_align(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let d = cfg.d.unwrap_or(3);
    if !(2..=64).contains(&d) {
        return Err(usage(format!("d: must lie in 2..=64, got {d}")));
    }
    let trials = cfg.trials.unwrap_or(1000);
    if trials == 0 {
        return Err(usage("trials: need at least one"));
    }
    let group = GroupTable::cyclic(d).map_err(|e| usage(format!("d: {e}")))?;
    let aligner = GroupAligner::new(group).map_err(|e| usage(format!("d: {e}")))?;
    let master = RandomSource::new(cfg.seed());
    let mut t = table(Command::Align, cfg, &["g", "trials", "errors"])?;
    let mut total = 0usize;
    for g in 0..d {
        let bob = aligner
            .bob_measurement(g)
            .map_err(|e| usage(format!("d: {e}")))?;
        let mut rng = master.split(g as u64);
        let mut errors = 0usize;
        for _ in 0..trials {
            let estimate = aligner
                .trial(&bob, &mut rng)
                .map_err(|e| usage(format!("d: {e}")))?;
            errors += usize::from(estimate != g);
        }
        total += errors;
        t.push(vec![g.to_string().into(), trials.into(), errors.into()]);
    }
    t.push(vec!["total".into(), (trials * d).into(), total.into()]);
    Ok(CommandOutput {
        table: t,
        self_check: (total > 0).then(|| format!("{total} alignment errors")),
    })
}

/// Minimum joint cost for a family, used by callers that need the number
/// without a table.
pub fn family_min_cost(family: &str, n: usize, cost: &CostFunction) -> Result<f64, CliError> {
    let state = crate::config::family_state(family, n, cost)?;
    min_joint_cost(state.amplitudes(), cost).map_err(|e| usage(format!("cost: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> RunConfig {
        serde_json::from_str(text).unwrap()
    }

    fn real(c: &Cell) -> f64 {
        match c {
            Cell::Real(x) => *x,
            other => panic!("not a real: {other:?}"),
        }
    }

    #[test]
    fn cost_examples() {
        let out = cmd_cost(&cfg(r#"{"family":"flat","N":4}"#)).unwrap();
        assert!((real(&out.table.rows[0][3]) - 0.4).abs() < 1e-12);
        let out = cmd_cost(&cfg(r#"{"family":"optimal","N":2}"#)).unwrap();
        assert!((real(&out.table.rows[0][3]) - 0.585786437626905).abs() < 1e-12);
        let out = cmd_cost(&cfg(r#"{"family":"sine-paper","N":2}"#)).unwrap();
        assert!((real(&out.table.rows[0][3]) - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(out.table.notes.len(), 1);
    }

    #[test]
    fn cost_with_oracle() {
        let out = cmd_cost(&cfg(
            r#"{"family":"sine-paper","N":2,"oracle":true,"grid":90}"#,
        ))
        .unwrap();
        assert!(real(&out.table.rows[0][6]).abs() < 1e-3);
    }

    #[test]
    fn scaling_single_sector_is_flat() {
        let out = cmd_scaling(&cfg(r#"{"NRange":"4..12","families":["single-sector"]}"#)).unwrap();
        let last = out.table.rows.last().unwrap();
        assert!(real(&last[2]).abs() < 1e-12);
    }

    #[test]
    fn scaling_range_cap() {
        assert!(cmd_scaling(&cfg(r#"{"NRange":"0..4"}"#)).is_err());
        assert!(cmd_scaling(&cfg(r#"{"NRange":"8..600"}"#)).is_err());
    }

    #[test]
    fn sync_sim_small_run_well_formed() {
        let out = cmd_sync_sim(&cfg(r#"{"family":"flat","N":4,"trials":100,"seed":3}"#)).unwrap();
        let row = &out.table.rows[0];
        assert!(real(&row[5]) > 0.0);
        assert!(cmd_sync_sim(&cfg(r#"{"family":"flat","N":4,"trials":99}"#)).is_err());
    }

    #[test]
    fn sync_sim_degenerate_residual() {
        let out = cmd_sync_sim(&cfg(
            r#"{"family":"degenerate-demo","N":3,"trials":2000,"seed":1}"#,
        ))
        .unwrap();
        assert!(real(&out.table.rows[0][7]) < 1e-12);
    }

    #[test]
    fn teleport_demo_examples() {
        let out = cmd_teleport_demo(&cfg(r#"{"input":"plus","grid":4}"#)).unwrap();
        assert!((real(&out.table.rows[1][2]) - 0.5).abs() < 1e-12);
        assert!((real(&out.table.rows[4][2]) - 0.75).abs() < 1e-9);
        let out = cmd_teleport_demo(&cfg(r#"{"input":"zero","grid":4}"#)).unwrap();
        for row in &out.table.rows {
            assert!((real(&row[2]) - 1.0).abs() < 1e-12 && (real(&row[3]) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn witness_default_suite() {
        let out = cmd_witness(&RunConfig::default()).unwrap();
        assert_eq!(out.table.rows.len(), 3);
        assert!(out.self_check.is_none());
        assert!(real(&out.table.rows[2][8]) < 1e-12);
    }

    #[test]
    fn align_exact() {
        let out = cmd_align(&cfg(r#"{"d":4,"trials":50}"#)).unwrap();
        assert!(out.self_check.is_none());
        assert!(cmd_align(&cfg(r#"{"d":1}"#)).is_err());
        assert!(cmd_align(&cfg(r#"{"d":65}"#)).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..10).map(|n| (n as f64, 3.0 / (n * n) as f64)).collect();
        assert!((loglog_slope(&pts).unwrap() + 2.0).abs() < 1e-12);
        assert!(loglog_slope(&[(1.0, 1.0)]).is_none());
        assert!(loglog_slope(&[(1.0, -1.0), (2.0, 1.0)]).is_none());
    }
}
