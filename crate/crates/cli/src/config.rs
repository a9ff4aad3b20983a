//! Run configuration: built-in presets plus a line-based `key = value`
//! config file format (UTF-8, `#` comments, unknown keys rejected).

use std::path::PathBuf;

use ws_spectra_core::{Branch, Mass, UnitSystem, WoodsSaxonParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitsKind {
    Nuclear,
    Dimensionless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationKind {
    KleinGordon,
    Schrodinger,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub v0: f64,
    pub r0: f64,
    pub a: f64,
    pub mass_amu: f64,
    pub units: UnitsKind,
    pub equation: EquationKind,
    pub branch: Branch,
    pub n_max: u32,
    pub out_dir: PathBuf,
    /// ℓ values for the potential-overlay CSV.
    pub l_list: Vec<u32>,
    /// β(r − r0) window and sample count for the potential-overlay CSV.
    pub bx_min: f64,
    pub bx_max: f64,
    pub samples: usize,
    /// Target state (node count, ℓ) for the wavefunction CSV.
    pub state_n: u32,
    pub state_l: u32,
}

impl RunConfig {
    /// The benchmark-table geometry: V0 = 50, r0 = 7, a = 0.6, ħ²/2m₀ = 1.
    pub fn preset_table1() -> Self {
        RunConfig {
            v0: 50.0,
            r0: 7.0,
            a: 0.6,
            mass_amu: 1.0,
            units: UnitsKind::Dimensionless,
            equation: EquationKind::Schrodinger,
            branch: Branch::Particle,
            n_max: 6,
            out_dir: PathBuf::from("out"),
            l_list: vec![1, 2, 5],
            bx_min: -5.0,
            bx_max: 5.0,
            samples: 201,
            state_n: 1,
            state_l: 1,
        }
    }

    /// A = 20 particle geometry (relativistic level curves).
    pub fn preset_fig3() -> Self {
        RunConfig {
            v0: 43.1,
            r0: 3.44731,
            a: 0.67,
            mass_amu: 1.007825,
            units: UnitsKind::Nuclear,
            equation: EquationKind::KleinGordon,
            branch: Branch::Particle,
            n_max: 7,
            ..Self::preset_table1()
        }
    }

    /// A = 20 antiparticle geometry.
    pub fn preset_fig4() -> Self {
        RunConfig {
            a: 0.55,
            mass_amu: 1.00866,
            branch: Branch::Antiparticle,
            ..Self::preset_fig3()
        }
    }

    pub fn preset(name: &str) -> Result<Self, String> {
        match name {
            "table1" => Ok(Self::preset_table1()),
            "fig3" => Ok(Self::preset_fig3()),
            "fig4" => Ok(Self::preset_fig4()),
            other => Err(format!(
                "unknown preset '{other}' (available: table1, fig3, fig4)"
            )),
        }
    }

    /// Apply `key = value` lines on top of this config.
    pub fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value'", lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {key}: {e}", lineno + 1);
            match key {
                "v0" => self.v0 = value.parse().map_err(|e| bad(&e))?,
                "r0" => self.r0 = value.parse().map_err(|e| bad(&e))?,
                "a" => self.a = value.parse().map_err(|e| bad(&e))?,
                "mass_amu" => self.mass_amu = value.parse().map_err(|e| bad(&e))?,
                "units" => {
                    self.units = match value {
                        "nuclear" => UnitsKind::Nuclear,
                        "dimensionless" => UnitsKind::Dimensionless,
                        other => return Err(bad(&format!("unknown units '{other}'"))),
                    }
                }
                "equation" => {
                    self.equation = match value {
                        "kg" => EquationKind::KleinGordon,
                        "se" => EquationKind::Schrodinger,
                        other => return Err(bad(&format!("unknown equation '{other}'"))),
                    }
                }
                "branch" => {
                    self.branch = match value {
                        "particle" => Branch::Particle,
                        "antiparticle" => Branch::Antiparticle,
                        other => return Err(bad(&format!("unknown branch '{other}'"))),
                    }
                }
                "n_max" => self.n_max = value.parse().map_err(|e| bad(&e))?,
                "l_list" => {
                    self.l_list = value
                        .split(',')
                        .map(|v| v.trim().parse::<u32>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| bad(&e))?
                }
                "bx_min" => self.bx_min = value.parse().map_err(|e| bad(&e))?,
                "bx_max" => self.bx_max = value.parse().map_err(|e| bad(&e))?,
                "samples" => self.samples = value.parse().map_err(|e| bad(&e))?,
                "state_n" => self.state_n = value.parse().map_err(|e| bad(&e))?,
                "state_l" => self.state_l = value.parse().map_err(|e| bad(&e))?,
                other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.v0 > 0.0 && self.r0 > 0.0 && self.a > 0.0) {
            return Err("v0, r0, a must all be positive".into());
        }
        if !(self.mass_amu > 0.0) {
            return Err("mass_amu must be positive".into());
        }
        if self.n_max < 1 {
            return Err("n_max must be at least 1".into());
        }
        if self.samples < 2 {
            return Err("samples must be at least 2".into());
        }
        if !(self.bx_min < self.bx_max) {
            return Err("bx_min must be below bx_max".into());
        }
        if self.r0 + self.a * self.bx_min <= 0.0 {
            return Err("potential window reaches r <= 0; raise bx_min".into());
        }
        Ok(())
    }

    pub fn params(&self) -> WoodsSaxonParams {
        WoodsSaxonParams::new(self.v0, self.r0, self.a).expect("validated")
    }

    pub fn mass(&self) -> Mass {
        Mass::from_amu(self.mass_amu).expect("validated")
    }

    pub fn unit_system(&self) -> UnitSystem {
        match self.units {
            UnitsKind::Nuclear => UnitSystem::nuclear(),
            UnitsKind::Dimensionless => UnitSystem::dimensionless(),
        }
    }
}
