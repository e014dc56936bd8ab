//! Run configuration: file ingestion, flag overrides, state and cost specs.

use std::path::Path;

use frame_sync::quantum::Ket;
use frame_sync::{
    flat_state, optimal_frameness_state, sine_state_paper, single_sector_state,
    BipartiteFrameState, Complex64, CostFunction, Generator, SchmidtSector,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const STATE_FAMILIES: [&str; 5] = [
    "sine-paper",
    "flat",
    "optimal",
    "single-sector",
    "degenerate-demo",
];
pub const MAX_COST_N: usize = 512;
pub const MAX_STATEVECTOR_N: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SectorSpec {
    pub n: i64,
    /// `[re, im]`
    pub e: [f64; 2],
    pub lambdas: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CostSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cq: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_max: Option<usize>,
}

/// Merged configuration; every field is optional so files and flags can
/// each supply a subset.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, rename = "NRange", skip_serializing_if = "Option::is_none")]
    pub n_range: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_a: Option<Vec<(i64, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_b: Option<Vec<(i64, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sectors: Option<Vec<SectorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    /// Input ket for teleport-demo and witness: a name or `[[re, im], …]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputSpec>,
    /// Witness resource: `bell`, `flat`, or an explicit state spec via the
    /// state fields.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resource: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub oracle: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    Named(String),
    Amplitudes(Vec<[f64; 2]>),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merge(&mut self, other: RunConfig) {
        macro_rules! take {
            ($($f:ident),*) => {$(if other.$f.is_some() { self.$f = other.$f; })*};
        }
        take!(
            family,
            n,
            n_range,
            generator_a,
            generator_b,
            sectors,
            cost,
            seed,
            trials,
            families,
            d,
            grid,
            input,
            resource
        );
        self.oracle |= other.oracle;
        self.degrees |= other.degrees;
    }

    /// `--state FAMILY|PATH`: a family name or a file holding state fields.
    pub fn apply_state_arg(&mut self, arg: &str) -> Result<(), CliError> {
        if STATE_FAMILIES.contains(&arg) {
            self.family = Some(arg.to_string());
            self.generator_a = None;
            self.generator_b = None;
            self.sectors = None;
            return Ok(());
        }
        let path = Path::new(arg);
        if !path.is_file() {
            return Err(usage(format!(
                "state: `{arg}` is neither a family ({}) nor a readable file",
                STATE_FAMILIES.join(", ")
            )));
        }
        self.merge(RunConfig::from_file(path)?);
        Ok(())
    }

    /// `--cost variance|likelihood|PATH`.
    pub fn apply_cost_arg(&mut self, arg: &str) -> Result<(), CliError> {
        let q_max = self.cost.as_ref().and_then(|c| c.q_max);
        match arg {
            "variance" | "likelihood" => {
                self.cost = Some(CostSpec {
                    kind: arg.to_string(),
                    cq: None,
                    q_max,
                })
            }
            path => {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum CostFile {
                    Wrapped { cost: CostSpec },
                    Bare(CostSpec),
                }
                self.cost = Some(match read_json::<CostFile>(Path::new(path))? {
                    CostFile::Wrapped { cost } | CostFile::Bare(cost) => cost,
                });
            }
        }
        Ok(())
    }

    pub fn total(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| usage("missing field `N`"))
    }

    /// `NRange` as an inclusive range, or `N..N`.
    pub fn n_values(&self) -> Result<Vec<usize>, CliError> {
        if let Some(r) = &self.n_range {
            let (a, b) = parse_range(r)?;
            return Ok((a..=b).collect());
        }
        Ok(vec![self.total()?])
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn cost_function(&self, total: usize) -> Result<CostFunction, CliError> {
        let spec = self.cost.clone().unwrap_or(CostSpec {
            kind: "variance".into(),
            cq: None,
            q_max: None,
        });
        let cost = match spec.kind.as_str() {
            "variance" => CostFunction::variance(),
            "likelihood" => {
                let q = spec.q_max.unwrap_or(total);
                CostFunction::likelihood(q).map_err(|e| usage(format!("cost.qMax: {e}")))?
            }
            "custom" | "explicit" => {
                let cq = spec.cq.ok_or_else(|| usage("missing field `cost.cq`"))?;
                CostFunction::new(cq).map_err(|e| usage(format!("cost.cq: {e}")))?
            }
            other => return Err(usage(format!("cost.type: unknown cost `{other}`"))),
        };
        Ok(cost)
    }

    pub fn cost_label(&self) -> String {
        self.cost
            .as_ref()
            .map_or("variance".into(), |c| c.kind.clone())
    }

    /// Label of the configured state: the family name or `explicit`.
    pub fn state_label(&self) -> String {
        match (&self.family, &self.sectors) {
            (Some(f), _) => f.clone(),
            (None, Some(_)) => "explicit".into(),
            (None, None) => "flat".into(),
        }
    }

    /// Builds the resource state for `total`, using the configured family
    /// or explicit sectors.
    pub fn state(
        &self,
        total: usize,
        cost: &CostFunction,
    ) -> Result<BipartiteFrameState, CliError> {
        if self.family.is_none() {
            if let Some(sectors) = &self.sectors {
                return explicit_state(self, total, sectors);
            }
        }
        family_state(&self.state_label(), total, cost)
    }
}

pub fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("N-range `{s}`: expected a..b")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("N-range `{s}`: `{x}` is not an integer")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(usage(format!("N-range `{s}` is empty")));
    }
    Ok((a, b))
}

fn core_err(field: &str) -> impl Fn(frame_sync::Error) -> CliError + '_ {
    move |e| usage(format!("{field}: {e}"))
}

pub fn family_state(
    family: &str,
    total: usize,
    cost: &CostFunction,
) -> Result<BipartiteFrameState, CliError> {
    match family {
        "sine-paper" => sine_state_paper(total).map_err(core_err("family")),
        "flat" => flat_state(total).map_err(core_err("family")),
        "optimal" => optimal_frameness_state(total, cost).map_err(core_err("family")),
        "single-sector" => single_sector_state(total, total / 2).map_err(core_err("family")),
        "degenerate-demo" => degenerate_demo(total),
        other => Err(usage(format!(
            "family: unknown family `{other}` (expected one of {})",
            STATE_FAMILIES.join(", ")
        ))),
    }
}

/// Flat sector amplitudes over levels `0..=N` with degeneracy
/// `1 + n mod 3` on both sides and Schmidt weights `∝ (r, r−1, …, 1)`.
pub fn degenerate_demo(total: usize) -> Result<BipartiteFrameState, CliError> {
    if total == 0 || total > MAX_STATEVECTOR_N {
        return Err(usage(format!(
            "N: degenerate-demo needs 1 ≤ N ≤ {MAX_STATEVECTOR_N}"
        )));
    }
    let levels: Vec<(i64, usize)> = (0..=total as i64)
        .map(|n| (n, 1 + (n % 3) as usize))
        .collect();
    let g = Generator::new(levels).map_err(core_err("generator"))?;
    let sectors = (0..=total as i64)
        .map(|n| {
            let rank = g.degeneracy(total as i64 - n).min(g.degeneracy(n));
            let w: Vec<f64> = (0..rank).map(|l| (rank - l) as f64).collect();
            let s = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            SchmidtSector::new(n, w.into_iter().map(|x| x / s).collect())
        })
        .collect();
    let e = vec![Complex64::new(1.0 / ((total + 1) as f64).sqrt(), 0.0); total + 1];
    BipartiteFrameState::new(total as i64, g.clone(), g, e, sectors).map_err(core_err("sectors"))
}

fn explicit_state(
    cfg: &RunConfig,
    total: usize,
    sectors: &[SectorSpec],
) -> Result<BipartiteFrameState, CliError> {
    let gen = |field: &str, levels: &Option<Vec<(i64, usize)>>| match levels {
        Some(l) => Generator::new(l.clone()).map_err(core_err(field)),
        None => Ok(Generator::uniform(total + 1)),
    };
    let g_a = gen("generatorA", &cfg.generator_a)?;
    let g_b = gen("generatorB", &cfg.generator_b)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); total + 1];
    let mut schmidt = Vec::with_capacity(sectors.len());
    for s in sectors {
        if s.n < 0 || s.n as usize > total {
            return Err(usage(format!("sectors: level {} outside 0..={total}", s.n)));
        }
        amps[s.n as usize] = Complex64::new(s.e[0], s.e[1]);
        schmidt.push(SchmidtSector::new(s.n, s.lambdas.clone()));
    }
    BipartiteFrameState::new(total as i64, g_a, g_b, amps, schmidt).map_err(core_err("sectors"))
}

/// Named qudit inputs: `plus`, `minus`, `zero`, `one`, `plus-i`.
pub fn input_ket(spec: Option<&InputSpec>) -> Result<(String, Ket<f64>), CliError> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match spec {
        None => Ok(("plus".into(), Ket::from_real(&[s, s]))),
        Some(InputSpec::Named(name)) => {
            let ket = match name.as_str() {
                "plus" => Ket::from_real(&[s, s]),
                "minus" => Ket::from_real(&[s, -s]),
                "zero" => Ket::basis(2, 0),
                "one" => Ket::basis(2, 1),
                "plus-i" => Ket::new(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]),
                other => return Err(usage(format!("input: unknown state `{other}`"))),
            };
            Ok((name.clone(), ket))
        }
        Some(InputSpec::Amplitudes(a)) => {
            if a.len() < 2 || a.len() > MAX_STATEVECTOR_N {
                return Err(usage(format!(
                    "input: dimension must be in 2..={MAX_STATEVECTOR_N}"
                )));
            }
            let ket = Ket::new(a.iter().map(|z| Complex64::new(z[0], z[1])).collect())
                .normalized()
                .map_err(core_err("input"))?;
            Ok(("explicit".into(), ket))
        }
    }
}

/// `--input NAME|PATH`: a name or a JSON file with `[[re, im], …]`.
pub fn parse_input_arg(arg: &str) -> Result<InputSpec, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(InputSpec::Amplitudes(read_json(path)?));
    }
    Ok(InputSpec::Named(arg.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("8..256").unwrap(), (8, 256));
        assert_eq!(parse_range("3..=5").unwrap(), (3, 5));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x..3").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let text = r#"{"N": 2, "generatorA": [[0,1],[1,2],[2,1]], "generatorB": [[0,1],[1,2],[2,1]],
            "sectors": [{"n":0,"e":[0.5773502691896258,0],"lambdas":[1]},
                        {"n":1,"e":[0.5773502691896258,0],"lambdas":[0.894427190999916,0.447213595499958]},
                        {"n":2,"e":[0,0.5773502691896258],"lambdas":[1]}],
            "cost": {"type": "likelihood", "qMax": 2}}"#;
        let cfg: RunConfig = serde_json::from_str(text).unwrap();
        let cost = cfg.cost_function(2).unwrap();
        assert_eq!(cost.max_harmonic(), 2);
        let st = cfg.state(2, &cost).unwrap();
        assert_eq!(st.schmidt_coefficients(1).len(), 2);
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"Nn": 3}"#).is_err());
    }

    #[test]
    fn demo_state_matches_two_level_example() {
        let st = degenerate_demo(2).unwrap();
        let l = st.schmidt_coefficients(1);
        assert!((l[0] - 0.8f64.sqrt()).abs() < 1e-15 && (l[1] - 0.2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bad_family_names_field() {
        let err = family_state("round", 3, &CostFunction::variance()).unwrap_err();
        assert!(err.to_string().contains("family"));
    }
}
