//! Table builders for each subcommand.

use biconfluent::analytic::{bound_wavefunction, log_grid, normalize, overlap, uniform_grid, WaveTable};
use biconfluent::oracle::{eigenvalues_numeric, outer_turning_point, wavefunction_numeric};
use biconfluent::spectrum::{closed_form_levels, exact_levels, f_ratio, f_ratio_approx, trig_levels, Level};
use biconfluent::validate::{run_suite, Report};
use biconfluent::{Error, PhysParams64, ShootingConfig64};
use clap::ValueEnum;
use serde::Serialize;

use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    ClosedForm,
    Trig,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Analytic,
    Oracle,
}

/// Grid shared by the tabulating commands.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub log_spaced: bool,
}

impl GridSpec {
    pub fn build(&self) -> Result<Vec<f64>, Error> {
        if self.log_spaced {
            log_grid(self.x_min, self.x_max, self.points)
        } else {
            uniform_grid(self.x_min, self.x_max, self.points)
        }
    }
}

pub fn potential(p: &PhysParams64, grid: &GridSpec) -> Result<Table, Error> {
    let mut t = Table::new(["x", "V"]);
    for x in grid.build()? {
        t.push(vec![x.into(), p.potential(x)?.into()]);
    }
    Ok(t)
}

fn levels_for(p: &PhysParams64, n_max: usize, method: Method) -> Result<Vec<Level<f64>>, Error> {
    match method {
        Method::Exact => exact_levels(p, n_max),
        Method::ClosedForm => closed_form_levels(p, n_max),
        Method::Trig => trig_levels(p, n_max),
        Method::Oracle => eigenvalues_numeric(p, n_max, &ShootingConfig64::default()),
        Method::All => unreachable!("expanded by the caller"),
    }
}

fn rel(a: f64, exact: f64) -> f64 {
    ((a - exact) / exact).abs()
}

pub fn levels(p: &PhysParams64, n_max: usize, method: Method) -> Result<Table, Error> {
    if method != Method::All {
        let mut t = Table::new(["n", "a", "E", "method"]);
        for l in levels_for(p, n_max, method)? {
            t.push(vec![
                l.n.into(),
                l.a.into(),
                l.energy.into(),
                l.provenance.as_str().into(),
            ]);
        }
        return Ok(t);
    }
    let exact = levels_for(p, n_max, Method::Exact)?;
    let closed = levels_for(p, n_max, Method::ClosedForm)?;
    let trig = levels_for(p, n_max, Method::Trig)?;
    let oracle = levels_for(p, n_max, Method::Oracle)?;
    let mut t = Table::new([
        "n",
        "a_exact",
        "E_exact",
        "E_closed_form",
        "E_trig",
        "E_oracle",
        "rel_err_closed_form",
        "rel_err_trig",
        "rel_err_oracle",
    ]);
    for i in 0..n_max {
        let e = exact[i].energy;
        t.push(vec![
            exact[i].n.into(),
            exact[i].a.into(),
            e.into(),
            closed[i].energy.into(),
            trig[i].energy.into(),
            oracle[i].energy.into(),
            rel(closed[i].energy, e).into(),
            rel(trig[i].energy, e).into(),
            rel(oracle[i].energy, e).into(),
        ]);
    }
    Ok(t)
}

/// Wave function output; `overlap` is set when both sources were computed.
pub struct WaveOutput {
    pub table: Table,
    pub energy: f64,
    pub overlap: Option<f64>,
}

/// Default outer edge of wave-function grids: a few turning-point distances out.
pub fn default_x_max(p: &PhysParams64, n: usize) -> Result<f64, Error> {
    let e = exact_levels(p, n)?[n - 1].energy;
    Ok(3.0 * outer_turning_point(p, e)?)
}

pub fn wavefunction(
    p: &PhysParams64,
    n: usize,
    source: Source,
    grid: &GridSpec,
    normalized: bool,
) -> Result<WaveOutput, Error> {
    let level = &exact_levels(p, n)?[n - 1];
    match source {
        Source::Analytic => {
            let xs = grid.build()?;
            let mut w = bound_wavefunction(p, level.a, &xs)?;
            if normalized {
                w = normalize(&w)?;
            }
            let mut t = Table::new(["x", "psi"]);
            for s in w.samples() {
                t.push(vec![s.x.into(), s.psi.re.into()]);
            }
            Ok(WaveOutput {
                table: t,
                energy: level.energy,
                overlap: None,
            })
        }
        Source::Oracle => {
            // the shooting grid spans [x_min, x_max] logarithmically
            let base = ShootingConfig64::default();
            let cfg = ShootingConfig64 {
                x_start: grid.x_min,
                x_end: Some(grid.x_max),
                steps: base.steps.max(grid.points),
                ..base
            };
            let e_oracle = eigenvalues_numeric(p, n, &ShootingConfig64::default())?[n - 1].energy;
            let w_oracle = wavefunction_numeric(p, e_oracle, &cfg, grid.points)?;
            let w_analytic = normalize(&bound_wavefunction(p, level.a, &w_oracle.xs())?)?;
            let ov = overlap(&w_oracle, &w_analytic)?;
            let (wa, wo) = if normalized {
                (w_analytic, w_oracle)
            } else {
                (rescale_to_peak(&w_analytic), rescale_to_peak(&w_oracle))
            };
            let mut t = Table::new(["x", "psi", "psi_oracle"]);
            // fix the arbitrary overall sign of the oracle state to match
            let sign = if inner_sign(&wa, &wo) < 0.0 { -1.0 } else { 1.0 };
            for (a, o) in wa.samples().iter().zip(wo.samples()) {
                t.push(vec![a.x.into(), a.psi.re.into(), (sign * o.psi.re).into()]);
            }
            Ok(WaveOutput {
                table: t,
                energy: e_oracle,
                overlap: Some(ov),
            })
        }
    }
}

fn rescale_to_peak(w: &WaveTable<f64>) -> WaveTable<f64> {
    let peak = w.max_abs();
    if peak > 0.0 {
        w.scaled(1.0 / peak)
    } else {
        w.clone()
    }
}

fn inner_sign(a: &WaveTable<f64>, b: &WaveTable<f64>) -> f64 {
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(u, v)| u.psi.re * v.psi.re)
        .sum()
}

pub fn validation(p: &PhysParams64, n_max: usize, scale: f64) -> Result<(Table, Report), Error> {
    let report = run_suite(p, n_max, scale)?;
    let mut t = Table::new(["check", "measured", "tolerance", "passed", "detail"]);
    for c in &report.checks {
        t.push(vec![
            c.name.into(),
            c.measured.into(),
            (c.tolerance * scale).into(),
            c.passed.into(),
            c.detail.clone().into(),
        ]);
    }
    Ok((t, report))
}

/// Coupling strengths of the figure-1 curves.
pub const FIGURE1_V1: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

pub fn figure(p: &PhysParams64, id: u8) -> Result<Table, Error> {
    match id {
        1 => {
            let xs = uniform_grid(0.05, 10.0, 500)?;
            let mut cols = vec!["x".to_owned()];
            cols.extend(FIGURE1_V1.iter().map(|v| format!("V_v1={v}")));
            let mut t = Table::new(cols);
            let curves: Vec<PhysParams64> = FIGURE1_V1.iter().map(|&v1| PhysParams64 { v1, ..*p }).collect();
            for &x in &xs {
                let mut row: Vec<Cell> = vec![x.into()];
                for c in &curves {
                    row.push(c.potential(x)?.into());
                }
                t.push(row);
            }
            Ok(t)
        }
        2 => {
            let mut t = Table::new(["a", "F_exact", "F_approx"]);
            for i in 0..=500 {
                let a = 1.0 + 0.01 * i as f64;
                let fe = f_ratio(a).map(Cell::from).unwrap_or(Cell::Missing);
                let fa = f_ratio_approx(a).map(Cell::from).unwrap_or(Cell::Missing);
                t.push(vec![a.into(), fe, fa]);
            }
            Ok(t)
        }
        3 => {
            let exact = exact_levels(p, 10)?;
            let closed = closed_form_levels(p, 10)?;
            let mut t = Table::new(["n", "a_exact", "E_exact", "E_closed_form", "rel_err"]);
            for (e, c) in exact.iter().zip(&closed) {
                t.push(vec![
                    e.n.into(),
                    e.a.into(),
                    e.energy.into(),
                    c.energy.into(),
                    rel(c.energy, e.energy).into(),
                ]);
            }
            Ok(t)
        }
        4 => {
            let levels = exact_levels(p, 3)?;
            let x_max = 3.0 * outer_turning_point(p, levels[2].energy)?;
            let xs = uniform_grid(1e-3 * x_max, x_max, 1200)?;
            let states = levels
                .iter()
                .map(|l| normalize(&bound_wavefunction(p, l.a, &xs)?))
                .collect::<Result<Vec<_>, Error>>()?;
            let mut t = Table::new(["x", "psi1", "psi2", "psi3"]);
            for (i, &x) in xs.iter().enumerate() {
                let mut row: Vec<Cell> = vec![x.into()];
                row.extend(states.iter().map(|s| Cell::from(s.samples()[i].psi.re)));
                t.push(row);
            }
            Ok(t)
        }
        _ => Err(Error::Domain {
            op: "figure",
            reason: format!("unknown figure id {id}"),
        }),
    }
}
