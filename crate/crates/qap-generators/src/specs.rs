//! Textual generator specifications.
//!
//! A specification is a single token of the form `kind:key=value,...`
//! naming a generator and its parameters, e.g.
//! `hypercube:k=4,l=3,d0=20,f0=20,seed=7`. Batch tools and the command
//! line pass these strings around; [`parse_generator_spec`] turns one
//! into a [`GeneratorSpec`], and [`GeneratorSpec::generate`] builds the
//! instance. The `Display` form is canonical: parsing it yields an
//! equal spec.
//!
//! Supported kinds and keys (seed defaults to 0 everywhere):
//!
//! * `uniform:n=..[,max=999][,symmetric=false][,seed=..]`
//! * `hypercube:k=..,l=..[,d0=20][,f0=20][,seed=..]`
//! * `terminal:levels=5x3x3[,d0=20][,f0=20][,seed=..]`
//! * `taib:n=..[,tilt=0|auto][,seed=..]` — cluster parameters are
//!   auto-sampled from the seed's parameter stream
//! * `sf:n=..,distance=euclidean|manhattan[,width=..],flow=random|structured|structured_plus[,seed=..]`
//!   — unstated parameters are auto-sampled
//! * `flowcluster:variant=triangle|tree|square,grid=rect8x10|cube3x4,count=..[,f0=20][,d0=20][,seed=..]`
//!   — rectangles pair the flows with Manhattan distances, cubic grids
//!   with the banded grid distances (`d0` applies to cubic grids only)
//! * `evolvable:grid=..[,d0=20][,seed=..]` plus either the five raw
//!   knobs `p1..p5` or the direct keys `c,cdens,cmax,nfreq,nmax`;
//!   distances follow the same grid rule as `flowcluster`

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rand::Rng;

use qap_core::Instance;

use crate::error::GenError;
use crate::evolvable::{gen_evolvable_flow, map_raw_params, EvolvableFlowConfig};
use crate::flow_cluster::{gen_flow_cluster, FlowClusterConfig, FlowClusterVariant};
use crate::grid::GridStructure;
use crate::hypercube::{banded_grid_distances, gen_hypercube, HypercubeConfig};
use crate::rng::{derive_rng, Stream};
use crate::sf::{gen_sf_distance, gen_sf_flow, SfDistanceKind, SfFlowKind};
use crate::taib::{gen_tai_b, TaiBParams};
use crate::terminal::gen_terminal;
use crate::uniform::gen_uniform_random;

/// Tilt setting of a clustered real-like spec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TiltSpec {
    /// Fixed tilt; 0 gives the symmetric variant.
    Fixed(f64),
    /// Tilt drawn from [0.1, 0.3] out of the seed's parameter stream.
    Auto,
}

/// Distance side of an `sf` spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfDistanceSpec {
    Euclidean,
    /// `width: None` flips the documented coin between widths 4 and 10.
    Manhattan { width: Option<usize> },
}

/// Flow side of an `sf` spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfFlowSpec {
    Random,
    Structured,
    StructuredPlus,
}

/// A parsed generator specification.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Uniform { n: usize, max_value: u32, symmetric: bool, seed: u64 },
    Hypercube(HypercubeConfig),
    Terminal { levels: Vec<usize>, d0: u32, f0: u32, seed: u64 },
    TaiB { n: usize, tilt: TiltSpec, seed: u64 },
    Sf { n: usize, distance: SfDistanceSpec, flow: SfFlowSpec, seed: u64 },
    FlowCluster { config: FlowClusterConfig, d0: u32 },
    Evolvable { grid: GridStructure, d0: u32, config: EvolvableFlowConfig },
}

fn spec_err(reason: impl Into<String>) -> GenError {
    GenError::Spec { reason: reason.into() }
}

/// Key-value list with duplicate detection and leftover reporting.
struct KeySet {
    entries: Vec<(String, String)>,
}

impl KeySet {
    fn contains(&self, key: &str) -> bool {
        self.entries.iter().any(|(k, _)| k == key)
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.entries
            .iter()
            .position(|(k, _)| k == key)
            .map(|at| self.entries.remove(at).1)
    }

    fn take_parsed<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, GenError> {
        match self.take(key) {
            None => Ok(None),
            Some(value) => value
                .parse()
                .map(Some)
                .map_err(|_| spec_err(format!("invalid value `{value}` for key `{key}`"))),
        }
    }

    fn take_or<T: FromStr>(&mut self, key: &str, default: T) -> Result<T, GenError> {
        Ok(self.take_parsed(key)?.unwrap_or(default))
    }

    fn require<T: FromStr>(&mut self, key: &str) -> Result<T, GenError> {
        self.take_parsed(key)?
            .ok_or_else(|| spec_err(format!("missing required key `{key}`")))
    }

    fn finish(self, allowed: &str) -> Result<(), GenError> {
        match self.entries.first() {
            Some((key, _)) => Err(spec_err(format!("unknown key `{key}` (expected {allowed})"))),
            None => Ok(()),
        }
    }
}

fn parse_grid(value: &str) -> Result<GridStructure, GenError> {
    let dims = |body: &str, what: &str| -> Result<(usize, usize), GenError> {
        let bad = || spec_err(format!("grid `{value}` should look like {what}"));
        let (first, second) = body.split_once('x').ok_or_else(bad)?;
        Ok((first.parse().map_err(|_| bad())?, second.parse().map_err(|_| bad())?))
    };
    if let Some(body) = value.strip_prefix("rect") {
        let (rows, cols) = dims(body, "rect<rows>x<cols>")?;
        GridStructure::rectangle(rows, cols)
    } else if let Some(body) = value.strip_prefix("cube") {
        let (side, dim) = dims(body, "cube<side>x<dim>")?;
        GridStructure::cube(side, u32::try_from(dim).unwrap_or(u32::MAX))
    } else {
        Err(spec_err(format!(
            "grid `{value}` should start with `rect` or `cube`, e.g. rect8x10 or cube3x4"
        )))
    }
}

fn grid_string(grid: &GridStructure) -> String {
    match *grid {
        GridStructure::Rectangle { rows, cols } => format!("rect{rows}x{cols}"),
        GridStructure::CubeGrid { side, dim } => format!("cube{side}x{dim}"),
    }
}

/// Rejects a `d0` key attached to a rectangle grid, where it is unused.
fn check_grid_d0(keys: &mut KeySet, grid: &GridStructure) -> Result<u32, GenError> {
    match grid {
        GridStructure::Rectangle { .. } => {
            if keys.contains("d0") {
                Err(spec_err("key `d0` only applies to cube grids"))
            } else {
                Ok(20)
            }
        }
        GridStructure::CubeGrid { .. } => keys.take_or("d0", 20),
    }
}

/// Parses one specification string.
pub fn parse_generator_spec(text: &str) -> Result<GeneratorSpec, GenError> {
    let text = text.trim();
    let (kind, rest) = match text.split_once(':') {
        Some((kind, rest)) => (kind.trim(), Some(rest)),
        None => (text, None),
    };
    if kind.is_empty() {
        return Err(spec_err("empty generator kind"));
    }

    let mut entries: Vec<(String, String)> = Vec::new();
    if let Some(rest) = rest {
        for part in rest.split(',') {
            let part = part.trim();
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| spec_err(format!("`{part}` is not a key=value pair")))?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            if key.is_empty() || value.is_empty() {
                return Err(spec_err(format!("`{part}` is not a key=value pair")));
            }
            if entries.iter().any(|(k, _)| *k == key) {
                return Err(spec_err(format!("duplicate key `{key}`")));
            }
            entries.push((key, value));
        }
    }
    let mut keys = KeySet { entries };

    match kind {
        "uniform" => {
            let spec = GeneratorSpec::Uniform {
                n: keys.require("n")?,
                max_value: keys.take_or("max", 999)?,
                symmetric: keys.take_or("symmetric", false)?,
                seed: keys.take_or("seed", 0)?,
            };
            keys.finish("n, max, symmetric, seed")?;
            Ok(spec)
        }
        "hypercube" => {
            let config = HypercubeConfig {
                dim: keys.require("k")?,
                side: keys.require("l")?,
                d0: keys.take_or("d0", 20)?,
                f0: keys.take_or("f0", 20)?,
                seed: keys.take_or("seed", 0)?,
            };
            keys.finish("k, l, d0, f0, seed")?;
            config.validate()?;
            Ok(GeneratorSpec::Hypercube(config))
        }
        "terminal" => {
            let levels_text: String = keys.require("levels")?;
            let levels = levels_text
                .split('x')
                .map(|part| {
                    part.parse::<usize>().map_err(|_| {
                        spec_err(format!(
                            "levels `{levels_text}` should look like 5x3x3 (branching factors)"
                        ))
                    })
                })
                .collect::<Result<Vec<usize>, GenError>>()?;
            let spec = GeneratorSpec::Terminal {
                levels,
                d0: keys.take_or("d0", 20)?,
                f0: keys.take_or("f0", 20)?,
                seed: keys.take_or("seed", 0)?,
            };
            keys.finish("levels, d0, f0, seed")?;
            Ok(spec)
        }
        "taib" => {
            let n = keys.require("n")?;
            let tilt = match keys.take("tilt") {
                None => TiltSpec::Fixed(0.0),
                Some(value) if value == "auto" => TiltSpec::Auto,
                Some(value) => TiltSpec::Fixed(value.parse().map_err(|_| {
                    spec_err(format!("tilt `{value}` should be a number or `auto`"))
                })?),
            };
            let spec = GeneratorSpec::TaiB { n, tilt, seed: keys.take_or("seed", 0)? };
            keys.finish("n, tilt, seed")?;
            Ok(spec)
        }
        "sf" => {
            let n = keys.require("n")?;
            let distance_word: String = keys.require("distance")?;
            let width = keys.take_parsed::<usize>("width")?;
            let distance = match (distance_word.as_str(), width) {
                ("euclidean", None) => SfDistanceSpec::Euclidean,
                ("euclidean", Some(_)) => {
                    return Err(spec_err("key `width` only applies to distance=manhattan"));
                }
                ("manhattan", width) => SfDistanceSpec::Manhattan { width },
                (other, _) => {
                    return Err(spec_err(format!(
                        "distance `{other}` should be euclidean or manhattan"
                    )));
                }
            };
            let flow_word: String = keys.require("flow")?;
            let flow = match flow_word.as_str() {
                "random" => SfFlowSpec::Random,
                "structured" => SfFlowSpec::Structured,
                "structured_plus" => SfFlowSpec::StructuredPlus,
                other => {
                    return Err(spec_err(format!(
                        "flow `{other}` should be random, structured or structured_plus"
                    )));
                }
            };
            let spec = GeneratorSpec::Sf { n, distance, flow, seed: keys.take_or("seed", 0)? };
            keys.finish("n, distance, width, flow, seed")?;
            Ok(spec)
        }
        "flowcluster" => {
            let variant_word: String = keys.require("variant")?;
            let variant = match variant_word.as_str() {
                "triangle" => FlowClusterVariant::Triangle,
                "tree" => FlowClusterVariant::Tree,
                "square" => FlowClusterVariant::Square,
                other => {
                    return Err(spec_err(format!(
                        "variant `{other}` should be triangle, tree or square"
                    )));
                }
            };
            let grid = parse_grid(&keys.require::<String>("grid")?)?;
            let d0 = check_grid_d0(&mut keys, &grid)?;
            let config = FlowClusterConfig {
                variant,
                f0: keys.take_or("f0", 20)?,
                count: keys.require("count")?,
                grid,
                seed: keys.take_or("seed", 0)?,
            };
            keys.finish("variant, grid, count, f0, d0, seed")?;
            Ok(GeneratorSpec::FlowCluster { config, d0 })
        }
        "evolvable" => {
            let grid = parse_grid(&keys.require::<String>("grid")?)?;
            let d0 = check_grid_d0(&mut keys, &grid)?;
            let seed = keys.take_or("seed", 0)?;
            let n = grid.n();
            let raw_keys = ["p1", "p2", "p3", "p4", "p5"];
            let direct_keys = ["c", "cdens", "cmax", "nfreq", "nmax"];
            let has_raw = raw_keys.iter().any(|k| keys.contains(k));
            let has_direct = direct_keys.iter().any(|k| keys.contains(k));
            if has_raw && has_direct {
                return Err(spec_err(
                    "use either the raw knobs p1..p5 or the direct keys c, cdens, cmax, \
                     nfreq, nmax — not both",
                ));
            }
            let config = if has_raw {
                let mut p = [0.0; 5];
                for (slot, key) in p.iter_mut().zip(raw_keys) {
                    *slot = keys.require(key)?;
                }
                map_raw_params(p, n, seed)?
            } else {
                EvolvableFlowConfig::new(
                    n,
                    keys.require("c")?,
                    keys.require("cdens")?,
                    keys.require("cmax")?,
                    keys.require("nfreq")?,
                    keys.require("nmax")?,
                    seed,
                )?
            };
            keys.finish("grid, d0, seed, p1..p5 or c, cdens, cmax, nfreq, nmax")?;
            Ok(GeneratorSpec::Evolvable { grid, d0, config })
        }
        other => Err(spec_err(format!(
            "unknown generator kind `{other}`; expected one of uniform, hypercube, terminal, \
             taib, sf, flowcluster, evolvable"
        ))),
    }
}

impl FromStr for GeneratorSpec {
    type Err = GenError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_generator_spec(text)
    }
}

/// Manhattan distances for rectangles, banded grid distances for cubic
/// grids (consuming the distance stream of `seed`).
fn grid_distance_matrix(
    grid: &GridStructure,
    d0: u32,
    seed: u64,
) -> Result<Array2<f64>, GenError> {
    match grid {
        GridStructure::Rectangle { .. } => {
            let n = grid.n();
            Ok(Array2::from_shape_fn((n, n), |(i, j)| grid.manhattan(i, j) as f64))
        }
        GridStructure::CubeGrid { .. } => {
            if d0 < 2 || d0 % 2 != 0 {
                return Err(GenError::Config {
                    reason: format!("base distance magnitude must be even and >= 2, got {d0}"),
                });
            }
            Ok(banded_grid_distances(grid, d0, &mut derive_rng(seed, Stream::Distance)))
        }
    }
}

impl GeneratorSpec {
    /// Instance size the spec will produce.
    pub fn size(&self) -> usize {
        match self {
            GeneratorSpec::Uniform { n, .. }
            | GeneratorSpec::TaiB { n, .. }
            | GeneratorSpec::Sf { n, .. } => *n,
            GeneratorSpec::Hypercube(config) => config.side.pow(config.dim),
            GeneratorSpec::Terminal { levels, .. } => levels.iter().product(),
            GeneratorSpec::FlowCluster { config, .. } => config.grid.n(),
            GeneratorSpec::Evolvable { config, .. } => config.n(),
        }
    }

    /// The seed the spec is bound to.
    pub fn seed(&self) -> u64 {
        match self {
            GeneratorSpec::Uniform { seed, .. }
            | GeneratorSpec::Terminal { seed, .. }
            | GeneratorSpec::TaiB { seed, .. }
            | GeneratorSpec::Sf { seed, .. } => *seed,
            GeneratorSpec::Hypercube(config) => config.seed,
            GeneratorSpec::FlowCluster { config, .. } => config.seed,
            GeneratorSpec::Evolvable { config, .. } => config.seed(),
        }
    }

    /// The same spec bound to a different seed.
    pub fn with_seed(mut self, new_seed: u64) -> Self {
        match &mut self {
            GeneratorSpec::Uniform { seed, .. }
            | GeneratorSpec::Terminal { seed, .. }
            | GeneratorSpec::TaiB { seed, .. }
            | GeneratorSpec::Sf { seed, .. } => *seed = new_seed,
            GeneratorSpec::Hypercube(config) => config.seed = new_seed,
            GeneratorSpec::FlowCluster { config, .. } => config.seed = new_seed,
            GeneratorSpec::Evolvable { config, .. } => *config = config.with_seed(new_seed),
        }
        self
    }

    /// Family name used as the label prefix.
    pub fn kind_label(&self) -> String {
        match self {
            GeneratorSpec::Uniform { .. } => "uniform".to_string(),
            GeneratorSpec::Hypercube(_) => "hypercube".to_string(),
            GeneratorSpec::Terminal { .. } => "terminal".to_string(),
            GeneratorSpec::TaiB { .. } => "taib".to_string(),
            GeneratorSpec::Sf { distance, flow, .. } => {
                let distance = match distance {
                    SfDistanceSpec::Euclidean => "euclidean",
                    SfDistanceSpec::Manhattan { .. } => "manhattan",
                };
                let flow = match flow {
                    SfFlowSpec::Random => "random",
                    SfFlowSpec::Structured => "structured",
                    SfFlowSpec::StructuredPlus => "structured_plus",
                };
                format!("sf_{distance}_{flow}")
            }
            GeneratorSpec::FlowCluster { config, .. } => {
                let variant = match config.variant {
                    FlowClusterVariant::Triangle => "triangle",
                    FlowClusterVariant::Tree => "tree",
                    FlowClusterVariant::Square => "square",
                };
                format!("flowcluster_{variant}")
            }
            GeneratorSpec::Evolvable { .. } => "evolvable".to_string(),
        }
    }

    /// Default instance label: `{kind}-n{size}-s{seed}`.
    pub fn label(&self) -> String {
        format!("{}-n{}-s{}", self.kind_label(), self.size(), self.seed())
    }

    /// Builds the instance, labelled per [`GeneratorSpec::label`] and
    /// carrying the canonical spec string under the metadata key
    /// `generator`.
    pub fn generate(&self) -> Result<Instance, GenError> {
        let instance = match self {
            GeneratorSpec::Uniform { n, max_value, symmetric, seed } => {
                gen_uniform_random(*n, *max_value, *symmetric, *seed)?
            }
            GeneratorSpec::Hypercube(config) => gen_hypercube(config)?,
            GeneratorSpec::Terminal { levels, d0, f0, seed } => {
                gen_terminal(levels, *d0, *f0, *seed)?
            }
            GeneratorSpec::TaiB { n, tilt, seed } => {
                let mut params_rng = derive_rng(*seed, Stream::Params);
                let params = TaiBParams::sample(*n, &mut params_rng);
                let tilt = match tilt {
                    TiltSpec::Fixed(t) => *t,
                    TiltSpec::Auto => params_rng.gen_range(0.1..=0.3),
                };
                gen_tai_b(*n, &params, tilt, *seed)?
            }
            GeneratorSpec::Sf { n, distance, flow, seed } => {
                let mut params_rng = derive_rng(*seed, Stream::Params);
                let distance_kind = match distance {
                    SfDistanceSpec::Euclidean => {
                        SfDistanceKind::sample_euclidean(*n, &mut params_rng)
                    }
                    SfDistanceSpec::Manhattan { width: Some(width) } => {
                        SfDistanceKind::ManhattanGrid { width: *width }
                    }
                    SfDistanceSpec::Manhattan { width: None } => {
                        SfDistanceKind::sample_manhattan(&mut params_rng)
                    }
                };
                let flow_kind = match flow {
                    SfFlowSpec::Random => SfFlowKind::sample_random(&mut params_rng),
                    SfFlowSpec::Structured => SfFlowKind::sample_structured(&mut params_rng),
                    SfFlowSpec::StructuredPlus => {
                        SfFlowKind::sample_structured_plus(&mut params_rng)
                    }
                };
                let d = gen_sf_distance(&distance_kind, *n, *seed)?;
                let f = gen_sf_flow(&flow_kind, &d, *seed)?;
                Instance::new("", d, f)?
            }
            GeneratorSpec::FlowCluster { config, d0 } => {
                let d = grid_distance_matrix(&config.grid, *d0, config.seed)?;
                let f = gen_flow_cluster(config)?;
                Instance::new("", d, f)?
            }
            GeneratorSpec::Evolvable { grid, d0, config } => {
                let d = grid_distance_matrix(grid, *d0, config.seed())?;
                let f = gen_evolvable_flow(config);
                Instance::new("", d, f)?
            }
        };
        Ok(instance
            .with_label(self.label())
            .with_metadata("generator", self.to_string()))
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Uniform { n, max_value, symmetric, seed } => {
                write!(out, "uniform:n={n},max={max_value},symmetric={symmetric},seed={seed}")
            }
            GeneratorSpec::Hypercube(c) => write!(
                out,
                "hypercube:k={},l={},d0={},f0={},seed={}",
                c.dim, c.side, c.d0, c.f0, c.seed
            ),
            GeneratorSpec::Terminal { levels, d0, f0, seed } => {
                let levels = levels
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<String>>()
                    .join("x");
                write!(out, "terminal:levels={levels},d0={d0},f0={f0},seed={seed}")
            }
            GeneratorSpec::TaiB { n, tilt, seed } => match tilt {
                TiltSpec::Auto => write!(out, "taib:n={n},tilt=auto,seed={seed}"),
                TiltSpec::Fixed(t) => write!(out, "taib:n={n},tilt={t},seed={seed}"),
            },
            GeneratorSpec::Sf { n, distance, flow, seed } => {
                write!(out, "sf:n={n},distance=")?;
                match distance {
                    SfDistanceSpec::Euclidean => write!(out, "euclidean")?,
                    SfDistanceSpec::Manhattan { width: None } => write!(out, "manhattan")?,
                    SfDistanceSpec::Manhattan { width: Some(width) } => {
                        write!(out, "manhattan,width={width}")?
                    }
                }
                let flow = match flow {
                    SfFlowSpec::Random => "random",
                    SfFlowSpec::Structured => "structured",
                    SfFlowSpec::StructuredPlus => "structured_plus",
                };
                write!(out, ",flow={flow},seed={seed}")
            }
            GeneratorSpec::FlowCluster { config, d0 } => {
                let variant = match config.variant {
                    FlowClusterVariant::Triangle => "triangle",
                    FlowClusterVariant::Tree => "tree",
                    FlowClusterVariant::Square => "square",
                };
                write!(
                    out,
                    "flowcluster:variant={variant},grid={},count={},f0={}",
                    grid_string(&config.grid),
                    config.count,
                    config.f0
                )?;
                if matches!(config.grid, GridStructure::CubeGrid { .. }) {
                    write!(out, ",d0={d0}")?;
                }
                write!(out, ",seed={}", config.seed)
            }
            GeneratorSpec::Evolvable { grid, d0, config } => {
                write!(
                    out,
                    "evolvable:grid={},c={},cdens={},cmax={},nfreq={},nmax={}",
                    grid_string(grid),
                    config.clusters(),
                    config.density(),
                    config.max_flow(),
                    config.noise_rate(),
                    config.noise_max()
                )?;
                if matches!(grid, GridStructure::CubeGrid { .. }) {
                    write!(out, ",d0={d0}")?;
                }
                write!(out, ",seed={}", config.seed())
            }
        }
    }
}
