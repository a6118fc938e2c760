//! Run configuration, snapshot files and line cuts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Result, SolverError};
use crate::grid::{build_grid, Grid, GridSpec, StateField};
use crate::limiter::DEFAULT_THETA;
use crate::model::SystemKind;
use crate::problems::{make_problem, ProblemPreset};
use crate::time_integration::DEFAULT_CFL;

pub const DEFAULT_DIAG_INTERVAL: usize = 10;

/// Fully resolved settings of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub problem: String,
    pub nx: usize,
    pub ny: usize,
    pub cfl: f64,
    pub theta: f64,
    pub t_final: f64,
    pub snapshot_times: Vec<f64>,
    pub output_dir: Option<PathBuf>,
    /// Diagnostics are sampled every this many steps and at snapshot times.
    pub diag_interval: usize,
}

/// Partial settings from one source (config file or command line).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub problem: Option<String>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub theta: Option<f64>,
    pub t_final: Option<f64>,
    pub snapshot_times: Option<Vec<f64>>,
    pub output_dir: Option<PathBuf>,
    pub diag_interval: Option<usize>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| SolverError::Usage(format!("invalid value '{value}' for key '{key}'")))
}

pub fn parse_time_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_value(key, s)).collect()
}

impl ConfigOverrides {
    /// Sets one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "problem" => self.problem = Some(value.trim().to_string()),
            "nx" => self.nx = Some(parse_value(key, value)?),
            "ny" => self.ny = Some(parse_value(key, value)?),
            "cfl" => self.cfl = Some(parse_value(key, value)?),
            "theta" => self.theta = Some(parse_value(key, value)?),
            "t_final" => self.t_final = Some(parse_value(key, value)?),
            "snapshot_times" => self.snapshot_times = Some(parse_time_list(key, value)?),
            "output_dir" => self.output_dir = Some(PathBuf::from(value.trim())),
            "diag_interval" => self.diag_interval = Some(parse_value(key, value)?),
            other => return Err(SolverError::Usage(format!("unknown configuration key '{other}'"))),
        }
        Ok(())
    }

    /// Parses flat `key = value` lines; `#` starts a comment.
    pub fn parse_file_contents(text: &str) -> Result<Self> {
        let mut out = ConfigOverrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| SolverError::Usage(format!("line {}: expected 'key = value', got '{raw}'", n + 1)))?;
            out.set(key.trim(), value)?;
        }
        Ok(out)
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| SolverError::io(path, e))?;
        Self::parse_file_contents(&text)
    }

    /// Values of `other` win.
    pub fn merge(self, other: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            problem: other.problem.or(self.problem),
            nx: other.nx.or(self.nx),
            ny: other.ny.or(self.ny),
            cfl: other.cfl.or(self.cfl),
            theta: other.theta.or(self.theta),
            t_final: other.t_final.or(self.t_final),
            snapshot_times: other.snapshot_times.or(self.snapshot_times),
            output_dir: other.output_dir.or(self.output_dir),
            diag_interval: other.diag_interval.or(self.diag_interval),
        }
    }
}

/// Combines preset defaults, a config file and command-line flags, in
/// increasing priority.
pub fn parse_config(file: Option<ConfigOverrides>, flags: ConfigOverrides) -> Result<RunConfig> {
    let merged = file.unwrap_or_default().merge(flags);
    let name = merged.problem.clone().ok_or_else(|| SolverError::Usage("no problem given".into()))?;
    let preset = make_problem(&name)?;
    let config = RunConfig {
        problem: name,
        nx: merged.nx.unwrap_or(preset.nx),
        ny: merged.ny.unwrap_or(preset.ny),
        cfl: merged.cfl.unwrap_or(DEFAULT_CFL),
        theta: merged.theta.unwrap_or(DEFAULT_THETA),
        t_final: merged.t_final.unwrap_or(preset.t_final),
        snapshot_times: merged.snapshot_times.unwrap_or_default(),
        output_dir: merged.output_dir,
        diag_interval: merged.diag_interval.unwrap_or(DEFAULT_DIAG_INTERVAL),
    };
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    /// Preset defaults for `problem`.
    pub fn for_problem(problem: &str) -> Result<Self> {
        parse_config(None, ConfigOverrides { problem: Some(problem.into()), ..Default::default() })
    }

    pub fn preset(&self) -> Result<ProblemPreset> {
        make_problem(&self.problem)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, v: String| Err(SolverError::Usage(format!("invalid value {v} for key '{key}'")));
        if self.nx == 0 {
            return bad("nx", self.nx.to_string());
        }
        if self.ny == 0 {
            return bad("ny", self.ny.to_string());
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return bad("cfl", self.cfl.to_string());
        }
        if !(1.0..=2.0).contains(&self.theta) {
            return bad("theta", self.theta.to_string());
        }
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return bad("t_final", self.t_final.to_string());
        }
        if self.diag_interval == 0 {
            return bad("diag_interval", "0".into());
        }
        if let Some(t) = self.snapshot_times.iter().find(|t| !(**t >= 0.0 && **t <= self.t_final)) {
            return bad("snapshot_times", t.to_string());
        }
        Ok(())
    }
}

/// Descriptive header of a snapshot file.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapshotMeta {
    pub problem: String,
    pub system: SystemKind,
    /// `gamma` or `g` and its value.
    pub parameter: (String, f64),
    pub grid: GridSpec,
    pub time: f64,
    pub cfl: f64,
    pub theta: f64,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub meta: SnapshotMeta,
    pub grid: Grid,
    pub state: StateField,
}

/// Decimal scientific notation with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders a snapshot in its text form.
pub fn format_snapshot(state: &StateField, grid: &Grid, meta: &SnapshotMeta) -> Result<String> {
    state.check_shape(grid)?;
    if meta.components.len() != state.ncomp() {
        return Err(SolverError::Shape(format!(
            "{} component names for {} components",
            meta.components.len(),
            state.ncomp()
        )));
    }
    let s = &grid.spec;
    let mut out = String::new();
    let mut header = |k: &str, v: String| {
        let _ = writeln!(out, "#{k}={v}");
    };
    header("problem", meta.problem.clone());
    header("system", meta.system.name().into());
    header("time", fmt_f64(meta.time));
    header("nx", s.nx.to_string());
    header("ny", s.ny.to_string());
    header("xmin", fmt_f64(s.xmin));
    header("xmax", fmt_f64(s.xmax));
    header("ymin", fmt_f64(s.ymin));
    header("ymax", fmt_f64(s.ymax));
    header(&meta.parameter.0, fmt_f64(meta.parameter.1));
    header("cfl", fmt_f64(meta.cfl));
    header("theta", fmt_f64(meta.theta));
    header("components", meta.components.join(","));
    let _ = writeln!(out, "j,k,x,y,{}", meta.components.join(","));
    for (j, k) in grid.interior() {
        let (ji, ki) = (j as isize, k as isize);
        let _ = write!(out, "{j},{k},{},{}", fmt_f64(grid.x_center(ji)), fmt_f64(grid.y_center(ki)));
        for c in 0..state.ncomp() {
            let _ = write!(out, ",{}", fmt_f64(state.get(grid, c, ji, ki)));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_snapshot(state: &StateField, grid: &Grid, meta: &SnapshotMeta, path: &Path) -> Result<()> {
    let text = format_snapshot(state, grid, meta)?;
    fs::write(path, text).map_err(|e| SolverError::io(path, e))
}

fn parse_err(msg: impl Into<String>) -> SolverError {
    SolverError::Parse(msg.into())
}

pub fn parse_snapshot(text: &str) -> Result<Snapshot> {
    let mut header = BTreeMap::new();
    let mut lines = text.lines();
    let mut columns = None;
    for line in lines.by_ref() {
        if let Some(h) = line.strip_prefix('#') {
            let (k, v) = h.split_once('=').ok_or_else(|| parse_err(format!("bad header line '{line}'")))?;
            header.insert(k.to_string(), v.to_string());
        } else {
            columns = Some(line);
            break;
        }
    }
    let columns = columns.ok_or_else(|| parse_err("missing column row"))?;
    let get = |k: &str| header.get(k).ok_or_else(|| parse_err(format!("missing header '{k}'")));
    let num = |k: &str| -> Result<f64> { get(k)?.parse().map_err(|_| parse_err(format!("bad number in '{k}'"))) };
    let int = |k: &str| -> Result<usize> { get(k)?.parse().map_err(|_| parse_err(format!("bad integer in '{k}'"))) };

    let system = match get("system")?.as_str() {
        "ideal" => SystemKind::IdealMhd,
        "swmhd" => SystemKind::ShallowWaterMhd,
        other => return Err(parse_err(format!("unknown system '{other}'"))),
    };
    let pname = if system == SystemKind::IdealMhd { "gamma" } else { "g" };
    let spec = GridSpec::new(int("nx")?, int("ny")?, (num("xmin")?, num("xmax")?), (num("ymin")?, num("ymax")?));
    let grid = build_grid(spec).map_err(|e| parse_err(e.to_string()))?;
    let components: Vec<String> = get("components")?.split(',').map(str::to_string).collect();
    let expected_columns = format!("j,k,x,y,{}", components.join(","));
    if columns != expected_columns {
        return Err(parse_err(format!("column row '{columns}' does not match the header")));
    }
    let meta = SnapshotMeta {
        problem: get("problem")?.clone(),
        system,
        parameter: (pname.to_string(), num(pname)?),
        grid: spec,
        time: num("time")?,
        cfl: num("cfl")?,
        theta: num("theta")?,
        components,
    };

    let ncomp = meta.components.len();
    let mut state = StateField::zeros(&grid, ncomp);
    let mut rows = 0usize;
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 + ncomp {
            return Err(parse_err(format!("row {} has {} fields, expected {}", n + 1, fields.len(), 4 + ncomp)));
        }
        let j: usize = fields[0].parse().map_err(|_| parse_err(format!("bad j on row {}", n + 1)))?;
        let k: usize = fields[1].parse().map_err(|_| parse_err(format!("bad k on row {}", n + 1)))?;
        if j >= spec.nx || k >= spec.ny {
            return Err(parse_err(format!("cell ({j}, {k}) outside the grid")));
        }
        for c in 0..ncomp {
            let v: f64 = fields[4 + c].parse().map_err(|_| parse_err(format!("bad value on row {}", n + 1)))?;
            state.set(&grid, c, j as isize, k as isize, v);
        }
        rows += 1;
    }
    if rows != spec.nx * spec.ny {
        return Err(parse_err(format!("{rows} data rows for {} cells", spec.nx * spec.ny)));
    }
    Ok(Snapshot { meta, grid, state })
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let text = fs::read_to_string(path).map_err(|e| SolverError::io(path, e))?;
    parse_snapshot(&text)
}

/// A row or column of cells through a given coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CutLine {
    /// Cells along x whose center row is nearest to this y.
    AtY(f64),
    /// Cells along y whose center column is nearest to this x.
    AtX(f64),
}

/// `(coordinate, component values)` along the cut.
pub fn line_cut(state: &StateField, grid: &Grid, line: CutLine, components: &[usize]) -> Result<Vec<(f64, Vec<f64>)>> {
    state.check_shape(grid)?;
    if let Some(c) = components.iter().find(|&&c| c >= state.ncomp()) {
        return Err(SolverError::Usage(format!("component {c} out of range")));
    }
    let s = grid.spec;
    let nearest = |v: f64, lo: f64, hi: f64, d: f64, n: usize| -> Result<isize> {
        if !(v >= lo && v <= hi) {
            return Err(SolverError::Usage(format!("cut coordinate {v} outside [{lo}, {hi}]")));
        }
        Ok((((v - lo) / d - 0.5).round() as isize).clamp(0, n as isize - 1))
    };
    let values = |j: isize, k: isize| components.iter().map(|&c| state.get(grid, c, j, k)).collect::<Vec<_>>();
    Ok(match line {
        CutLine::AtY(y) => {
            let k = nearest(y, s.ymin, s.ymax, grid.dy, s.ny)?;
            (0..s.nx as isize).map(|j| (grid.x_center(j), values(j, k))).collect()
        }
        CutLine::AtX(x) => {
            let j = nearest(x, s.xmin, s.xmax, grid.dx, s.nx)?;
            (0..s.ny as isize).map(|k| (grid.y_center(k), values(j, k))).collect()
        }
    })
}

/// Writes `x,<names>` (or `y,...`) CSV of a line cut.
pub fn write_line_cut(
    state: &StateField,
    grid: &Grid,
    line: CutLine,
    components: &[usize],
    names: &[&str],
    path: &Path,
) -> Result<()> {
    let rows = line_cut(state, grid, line, components)?;
    let coord = match line {
        CutLine::AtY(_) => "x",
        CutLine::AtX(_) => "y",
    };
    let mut out = format!("{coord},{}\n", components.iter().map(|&c| names.get(c).copied().unwrap_or("?")).collect::<Vec<_>>().join(","));
    for (x, vals) in rows {
        out.push_str(&fmt_f64(x));
        for v in vals {
            out.push(',');
            out.push_str(&fmt_f64(v));
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| SolverError::io(path, e))
}
