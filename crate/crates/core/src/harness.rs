//! Cross-verification suite, trend tables and report I/O.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encodings::{
    band_nimis_via_compositions, check_psi_bijection, check_psi_c_bijection, check_tube_psi, psi,
    psi_preimage, BitString,
};
use crate::error::{Error, Result};
use crate::formulas::{
    average_2xn_exact, band_counts, golden_ratio_ref, mis_count_2xn, mobius_counts, nimis_2xn,
    nimis_tube_3xn, size_distribution_2xn_cyclic, total_size_2xn, CyclicCounts, FixedDecimal,
};
use crate::graph::{GridFamily, GridGraph};
use crate::mis::{
    count_mis_dp, enumerate_mis, mis_parity, size_polynomial_dp, Budgets, SizePolynomial,
};
use crate::symmetry::{nimis_report, nimis_ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Human,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown format {s:?} (human, csv, json)"))),
        }
    }
}

/// An inclusive range of `n`, written `lo..=hi` or `lo-hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub const fn new(lo: usize, hi: usize) -> Self {
        NRange { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

impl FromStr for NRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once("..=")
            .or_else(|| s.split_once('-'))
            .ok_or_else(|| Error::Config(format!("range {s:?} is not lo..=hi")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad range bound {t:?}")))
        };
        Ok(NRange::new(num(lo)?, num(hi)?))
    }
}

/// Settings shared by `verify` and `trend`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub budgets: Budgets,
    /// `n` values for the engine-agreement matrix, per family.
    pub ranges: BTreeMap<GridFamily, NRange>,
    /// Slice widths for the engine-agreement matrix.
    pub m_range: NRange,
    pub trend_ratio: NRange,
    pub trend_average: NRange,
    /// Extra parity instances, e.g. `grid:5x9`.
    pub parity_extra: Vec<(GridFamily, usize, usize)>,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budgets: Budgets::default(),
            ranges: GridFamily::ALL
                .iter()
                .map(|&f| (f, if f == GridFamily::Torus { NRange::new(2, 7) } else { NRange::new(2, 8) }))
                .collect(),
            m_range: NRange::new(2, 4),
            trend_ratio: NRange::new(2, 12),
            trend_average: NRange::new(10, 40),
            parity_extra: Vec::new(),
            format: OutputFormat::Human,
            seed: 20240601,
        }
    }
}

fn parse_instance(s: &str) -> Result<(GridFamily, usize, usize)> {
    let bad = || Error::Config(format!("instance {s:?} is not family:MxN"));
    let (f, dims) = s.trim().split_once(':').ok_or_else(bad)?;
    let (m, n) = dims.split_once('x').ok_or_else(bad)?;
    let family = f.parse().map_err(|_| bad())?;
    Ok((family, m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?))
}

impl RunConfig {
    /// Reads `key = value` lines over the defaults. `#` starts a comment.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let int = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| Error::Config(format!("{key}: {v:?} is not a non-negative integer")))
        };
        match key {
            "budget-vertices" => self.budgets.vertices = int(value)? as usize,
            "budget-width" => self.budgets.width = int(value)? as usize,
            "format" => self.format = value.parse()?,
            "seed" => self.seed = int(value)?,
            "m-range" => self.m_range = value.parse()?,
            "trend-ratio" => self.trend_ratio = value.parse()?,
            "trend-average" => self.trend_average = value.parse()?,
            "parity-extra" => {
                self.parity_extra = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(parse_instance)
                    .collect::<Result<_>>()?
            }
            _ => match key.strip_prefix("range.") {
                Some(f) => {
                    let family: GridFamily = f
                        .parse()
                        .map_err(|_| Error::Config(format!("unknown family in {key:?}")))?;
                    self.ranges.insert(family, value.parse()?);
                }
                None => return Err(Error::Config(format!("unknown key {key:?}"))),
            },
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.budgets.vertices == 0 || self.budgets.width == 0 {
            return Err(Error::Config("budgets must be positive".into()));
        }
        let ranges = self
            .ranges
            .values()
            .chain([&self.m_range, &self.trend_ratio, &self.trend_average]);
        for r in ranges {
            if r.lo > r.hi {
                return Err(Error::Config(format!("range {r} is empty")));
            }
        }
        Ok(())
    }

    pub fn range(&self, family: GridFamily) -> NRange {
        self.ranges.get(&family).copied().unwrap_or(NRange::new(2, 8))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    MisCount,
    NimisCount,
    TotalSize,
    AverageSize,
    SizeDistribution,
    Parity,
    StringBijection,
    OrbitSizes,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("unit variant"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

/// One comparison of two independent methods on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub family: GridFamily,
    pub m: usize,
    pub n: usize,
    pub quantity: Quantity,
    pub engine_a: String,
    pub value_a: String,
    pub engine_b: String,
    pub value_b: String,
    pub outcome: Outcome,
}

impl VerificationCase {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

impl fmt::Display for VerificationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}x{} {}: {}={} {}={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.family,
            self.m,
            self.n,
            self.quantity,
            self.engine_a,
            self.value_a,
            self.engine_b,
            self.value_b
        )
    }
}

type Check = Box<dyn Fn() -> Result<(String, String, bool)> + Send + Sync>;

struct Job {
    family: GridFamily,
    m: usize,
    n: usize,
    quantity: Quantity,
    engine_a: &'static str,
    engine_b: &'static str,
    check: Check,
}

impl Job {
    fn run(self) -> VerificationCase {
        let (value_a, value_b, ok) = match (self.check)() {
            Ok(r) => r,
            Err(e) => (format!("error: {e}"), String::from("-"), false),
        };
        VerificationCase {
            family: self.family,
            m: self.m,
            n: self.n,
            quantity: self.quantity,
            engine_a: self.engine_a.into(),
            value_a,
            engine_b: self.engine_b.into(),
            value_b,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        }
    }
}

fn equal<T: PartialEq + ToString>(a: T, b: T) -> (String, String, bool) {
    let ok = a == b;
    (a.to_string(), b.to_string(), ok)
}

fn sizes_of(enumerated: &[crate::mis::MisSet]) -> SizePolynomial {
    SizePolynomial::from_sets(enumerated)
}

struct Plan<'a> {
    cfg: &'a RunConfig,
    jobs: Vec<Job>,
}

impl Plan<'_> {
    #[allow(clippy::too_many_arguments)]
    fn add(
        &mut self,
        family: GridFamily,
        m: usize,
        n: usize,
        quantity: Quantity,
        engine_a: &'static str,
        engine_b: &'static str,
        check: impl Fn(&GridGraph, Budgets) -> Result<(String, String, bool)> + Send + Sync + 'static,
    ) {
        let budgets = self.cfg.budgets;
        self.jobs.push(Job {
            family,
            m,
            n,
            quantity,
            engine_a,
            engine_b,
            check: Box::new(move || {
                let g = GridGraph::build(family, m, n)?;
                check(&g, budgets)
            }),
        });
    }

    fn fits(&self, m: usize, n: usize) -> bool {
        m * n <= self.cfg.budgets.vertices
    }

    fn engine_matrix(&mut self) {
        use GridFamily::*;
        for family in [Grid, FatCylinder, ThinCylinder, Mobius] {
            for m in self.cfg.m_range.iter() {
                for n in self.cfg.range(family).iter() {
                    if !self.fits(m, n) || GridGraph::build(family, m, n).is_err() {
                        continue;
                    }
                    self.add(family, m, n, Quantity::MisCount, "backtrack", "transfer", |g, b| {
                        Ok(equal(BigUint::from(enumerate_mis(g, b)?.len()), count_mis_dp(g, b)?))
                    });
                    self.add(family, m, n, Quantity::SizeDistribution, "backtrack", "transfer", |g, b| {
                        Ok(equal(sizes_of(&enumerate_mis(g, b)?), size_polynomial_dp(g, b)?))
                    });
                    if m >= 2 && n >= 2 {
                        self.add(family, m, n, Quantity::Parity, "backtrack", "parity-theorem", parity);
                    }
                }
            }
        }
        for m in self.cfg.m_range.iter() {
            for n in self.cfg.range(Torus).iter() {
                if self.fits(m, n) && m >= 2 && n >= 2 {
                    self.add(Torus, m, n, Quantity::Parity, "backtrack", "parity-theorem", parity);
                }
            }
        }
        for &(family, m, n) in &self.cfg.parity_extra.clone() {
            self.add(family, m, n, Quantity::Parity, "backtrack", "parity-theorem", parity);
        }
    }

    fn ladder_formulas(&mut self) {
        use GridFamily::*;
        for n in 2..=20 {
            self.add(Grid, 2, n, Quantity::MisCount, "transfer", "fibonacci", move |g, b| {
                Ok(equal(count_mis_dp(g, b)?, mis_count_2xn(n)?))
            });
        }
        for n in 2..=12 {
            if self.fits(2, n) {
                self.add(Grid, 2, n, Quantity::MisCount, "backtrack", "fibonacci", move |g, b| {
                    Ok(equal(BigUint::from(enumerate_mis(g, b)?.len()), mis_count_2xn(n)?))
                });
            }
        }
        for n in 1..=16 {
            self.add(Grid, 2, n, Quantity::TotalSize, "transfer", "fibonacci-convolution", move |g, b| {
                Ok(equal(size_polynomial_dp(g, b)?.total_size(), total_size_2xn(n)?))
            });
            self.add(Grid, 2, n, Quantity::AverageSize, "transfer", "closed-form", move |g, b| {
                let dp = size_polynomial_dp(g, b)?.average().unwrap_or_default();
                Ok(equal(dp, average_2xn_exact(n)?))
            });
        }
        for n in 1..=12 {
            if self.fits(2, n) {
                self.add(Grid, 2, n, Quantity::StringBijection, "psi", "x-strings", |g, b| {
                    verdict(check_psi_bijection(g, &enumerate_mis(g, b)?))
                });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        for n in (16..=32).step_by(4) {
            let sample = random_x_string(&mut rng, n);
            self.add(Grid, 2, n, Quantity::StringBijection, "sampled-string", "psi-of-preimage", move |g, _| {
                let (a, b) = psi_preimage(g, &sample)?;
                let back = (psi(g, &a)?, psi(g, &b)?);
                let ok = back.0 == sample && back.1 == sample;
                Ok((sample.to_string(), back.0.to_string(), ok))
            });
        }
    }

    fn cyclic_formulas(&mut self) {
        use GridFamily::*;
        for family in [FatCylinder, Mobius] {
            let counts: fn(usize) -> Result<CyclicCounts> = if family == FatCylinder {
                band_counts
            } else {
                mobius_counts
            };
            for n in 3..=12 {
                self.add(family, 2, n, Quantity::MisCount, "transfer", "closed-form", move |g, b| {
                    Ok(equal(count_mis_dp(g, b)?, counts(n)?.mis_count))
                });
                self.add(family, 2, n, Quantity::TotalSize, "transfer", "closed-form", move |g, b| {
                    Ok(equal(size_polynomial_dp(g, b)?.total_size(), counts(n)?.total_size))
                });
                self.add(family, 2, n, Quantity::AverageSize, "transfer", "closed-form", move |g, b| {
                    let dp = size_polynomial_dp(g, b)?.average().unwrap_or_default();
                    Ok(equal(dp, counts(n)?.average))
                });
            }
            for n in 3..=10 {
                self.add(family, 2, n, Quantity::SizeDistribution, "transfer", "binomial-formula", move |g, b| {
                    let coefficients = (0..=n)
                        .map(|r| match r {
                            0 => Ok(BigUint::default()),
                            r => size_distribution_2xn_cyclic(family, n, r),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(equal(size_polynomial_dp(g, b)?, SizePolynomial::from_coefficients(coefficients)))
                });
            }
            for n in 2..=12 {
                if self.fits(2, n) {
                    self.add(family, 2, n, Quantity::StringBijection, "psi-c", "cyclic-strings", |g, b| {
                        verdict(check_psi_c_bijection(g, &enumerate_mis(g, b)?))
                    });
                }
            }
        }
    }

    fn symmetry_cases(&mut self) {
        use GridFamily::*;
        for n in 3..=14 {
            if self.fits(2, n) {
                self.add(Grid, 2, n, Quantity::NimisCount, "orbits", "fibonacci", move |g, b| {
                    Ok(equal(nimis_report(g, b)?.count(), nimis_2xn(n)?))
                });
                self.add(Grid, 2, n, Quantity::OrbitSizes, "orbits", "allowed-sizes", |g, b| {
                    orbit_sizes(g, b, &[2, 4])
                });
            }
        }
        for n in 2..=10 {
            if self.fits(3, n) {
                self.add(ThinCylinder, 3, n, Quantity::NimisCount, "orbits", "power-of-two", move |g, b| {
                    let formula = nimis_tube_3xn(n)?;
                    Ok(equal(BigRational::from_integer(nimis_report(g, b)?.count().into()), formula))
                });
                self.add(ThinCylinder, 3, n, Quantity::OrbitSizes, "orbits", "allowed-sizes", |g, b| {
                    orbit_sizes(g, b, &[6, 12])
                });
            }
        }
        for n in 2..=7 {
            if self.fits(3, n) {
                self.add(ThinCylinder, 3, n, Quantity::StringBijection, "tube-psi", "sign-strings", |g, b| {
                    verdict(check_tube_psi(g, &enumerate_mis(g, b)?))
                });
            }
        }
        for n in 3..=10 {
            if self.fits(2, n) {
                self.add(FatCylinder, 2, n, Quantity::NimisCount, "orbits", "compositions", move |g, b| {
                    Ok(equal(nimis_report(g, b)?.count(), band_nimis_via_compositions(n)?))
                });
            }
        }
    }
}

fn parity(g: &GridGraph, b: Budgets) -> Result<(String, String, bool)> {
    let (count, even) = mis_parity(g, b)?;
    Ok((
        format!("{count} ({})", if even { "even" } else { "odd" }),
        "even".into(),
        even,
    ))
}

fn verdict(r: Result<()>) -> Result<(String, String, bool)> {
    Ok(match r {
        Ok(()) => ("holds".into(), "holds".into(), true),
        Err(e) => (e.to_string(), "holds".into(), false),
    })
}

fn orbit_sizes(g: &GridGraph, b: Budgets, allowed: &[usize]) -> Result<(String, String, bool)> {
    let report = nimis_report(g, b)?;
    let mut sizes: Vec<usize> = report.partition.orbits.iter().map(|o| o.size()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let ok = sizes.iter().all(|s| allowed.contains(s));
    let show = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join("|");
    Ok((show(&sizes), format!("within {}", show(allowed)), ok))
}

fn random_x_string(rng: &mut ChaCha8Rng, n: usize) -> BitString {
    let mut bits = vec![1u8; n];
    for k in 1..n.saturating_sub(1) {
        if bits[k - 1] == 1 && rng.gen_bool(0.5) {
            bits[k] = 0;
        }
    }
    BitString(bits)
}

/// Runs every cross-check implied by `cfg`. Cases run in parallel; the
/// result is ordered by (family, m, n, quantity), ties in plan order.
pub fn run_verification_suite(cfg: &RunConfig) -> Result<Vec<VerificationCase>> {
    cfg.validate()?;
    let mut plan = Plan {
        cfg,
        jobs: Vec::new(),
    };
    plan.engine_matrix();
    plan.ladder_formulas();
    plan.cyclic_formulas();
    plan.symmetry_cases();
    let mut cases: Vec<VerificationCase> = plan.jobs.into_par_iter().map(Job::run).collect();
    cases.sort_by_key(|c| (c.family, c.m, c.n, c.quantity));
    Ok(cases)
}

/// Engine agreement and parity on a single instance.
pub fn verify_instance(family: GridFamily, m: usize, n: usize, budgets: Budgets) -> Result<Vec<VerificationCase>> {
    GridGraph::build(family, m, n)?;
    let cfg = RunConfig {
        budgets,
        ..RunConfig::default()
    };
    let mut plan = Plan {
        cfg: &cfg,
        jobs: Vec::new(),
    };
    if family != GridFamily::Torus {
        plan.add(family, m, n, Quantity::MisCount, "backtrack", "transfer", |g, b| {
            Ok(equal(BigUint::from(enumerate_mis(g, b)?.len()), count_mis_dp(g, b)?))
        });
        plan.add(family, m, n, Quantity::SizeDistribution, "backtrack", "transfer", |g, b| {
            Ok(equal(sizes_of(&enumerate_mis(g, b)?), size_polynomial_dp(g, b)?))
        });
    }
    if m >= 2 && n >= 2 {
        plan.add(family, m, n, Quantity::Parity, "backtrack", "parity-theorem", parity);
    }
    Ok(plan.jobs.into_par_iter().map(Job::run).collect())
}

pub fn write_cases(cases: &[VerificationCase], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Human => {
            let mut out: String = cases.iter().map(|c| format!("{c}\n")).collect();
            let failed = cases.iter().filter(|c| !c.passed()).count();
            out.push_str(&format!("{} cases, {failed} failed\n", cases.len()));
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in cases {
                w.serialize(c).map_err(|e| Error::Parse(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
        OutputFormat::Json => {
            serde_json::to_string_pretty(cases).map(|s| s + "\n").map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

pub fn read_cases_csv(text: &str) -> Result<Vec<VerificationCase>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_cases_json(text: &str) -> Result<Vec<VerificationCase>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendMetric {
    NimisRatio,
    AveragePerN,
}

/// One row of the trend table. Skipped rows carry the reason in `status`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendRow {
    pub family: GridFamily,
    pub m: usize,
    pub n: usize,
    pub metric: TrendMetric,
    pub exact: String,
    pub decimal: String,
    /// `|ratio − 1/4|` or `|A/n − φ/√5|`.
    pub deviation: String,
    pub status: String,
}

const TREND_DIGITS: u32 = 60;

fn trend_row(family: GridFamily, m: usize, n: usize, metric: TrendMetric, value: Result<(BigRational, FixedDecimal)>) -> TrendRow {
    let (exact, decimal, deviation, status) = match value {
        Ok((v, dev)) => {
            let dec = FixedDecimal::from_rational(&v, TREND_DIGITS).to_string_places(12);
            let dev = format!("{:.6e}", dev.to_rational().to_f64().unwrap_or(f64::NAN));
            (v.to_string(), dec, dev, "ok".to_string())
        }
        Err(e) => ("-".into(), "-".into(), "-".into(), format!("skipped: {e}")),
    };
    TrendRow {
        family,
        m,
        n,
        metric,
        exact,
        decimal,
        deviation,
        status,
    }
}

/// NIMIS/MIS ratios for `G_{2×n}` and `G_{3×n}`, and `A(G)/n` for the three
/// 2×n families against `φ/√5`.
pub fn trend_report(cfg: &RunConfig) -> Result<Vec<TrendRow>> {
    cfg.validate()?;
    let quarter = BigRational::new(1.into(), 4.into());
    let mut specs = Vec::new();
    for m in [2, 3] {
        for n in cfg.trend_ratio.iter() {
            specs.push((GridFamily::Grid, m, n, TrendMetric::NimisRatio));
        }
    }
    for family in [GridFamily::Grid, GridFamily::FatCylinder, GridFamily::Mobius] {
        for n in cfg.trend_average.iter() {
            specs.push((family, 2, n, TrendMetric::AveragePerN));
        }
    }
    let target = golden_ratio_ref(TREND_DIGITS)?.phi_over_sqrt5;
    let rows = specs
        .into_par_iter()
        .map(|(family, m, n, metric)| {
            let value = GridGraph::build(family, m, n).and_then(|g| match metric {
                TrendMetric::NimisRatio => {
                    let r = nimis_ratio(&g, cfg.budgets)?;
                    let dev = (&r - &quarter).abs();
                    Ok((r, FixedDecimal::from_rational(&dev, TREND_DIGITS)))
                }
                TrendMetric::AveragePerN => {
                    let avg = size_polynomial_dp(&g, cfg.budgets)?
                        .average()
                        .unwrap_or_default();
                    let per_n = avg / BigRational::from_integer(n.into());
                    let dev = FixedDecimal::from_rational(&per_n, TREND_DIGITS).sub(&target).abs();
                    Ok((per_n, dev))
                }
            });
            trend_row(family, m, n, metric, value)
        })
        .collect();
    Ok(rows)
}

pub fn write_trend(rows: &[TrendRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Human => Ok(rows
            .iter()
            .map(|r| {
                let metric = match r.metric {
                    TrendMetric::NimisRatio => "nimis/mis",
                    TrendMetric::AveragePerN => "avg/n",
                };
                if r.status == "ok" {
                    format!(
                        "{} {}x{} {metric} = {} ({}) deviation {}\n",
                        r.family, r.m, r.n, r.exact, r.decimal, r.deviation
                    )
                } else {
                    format!("{} {}x{} {metric} {}\n", r.family, r.m, r.n, r.status)
                }
            })
            .collect()),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
        OutputFormat::Json => {
            serde_json::to_string_pretty(rows).map(|s| s + "\n").map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing_and_overrides() {
        let cfg = RunConfig::from_kv(
            "# comment\nbudget-vertices = 45\nformat = csv\nrange.grid = 3..=5\nparity-extra = grid:5x9, torus:3x4\n",
        )
        .unwrap();
        assert_eq!(cfg.budgets.vertices, 45);
        assert_eq!(cfg.format, OutputFormat::Csv);
        assert_eq!(cfg.range(GridFamily::Grid), NRange::new(3, 5));
        assert_eq!(cfg.parity_extra, vec![(GridFamily::Grid, 5, 9), (GridFamily::Torus, 3, 4)]);
        assert!(RunConfig::from_kv("range.grid = 5-3").is_err());
        assert!(RunConfig::from_kv("budget-width = 0").is_err());
        assert!(RunConfig::from_kv("colour = blue").is_err());
        assert!(RunConfig::from_kv("seed").is_err());
    }

    #[test]
    fn small_suite_passes_and_round_trips() {
        let mut cfg = RunConfig::default();
        for f in GridFamily::ALL {
            cfg.ranges.insert(f, NRange::new(2, 3));
        }
        cfg.m_range = NRange::new(2, 3);
        let cases = run_verification_suite(&cfg).unwrap();
        let failed: Vec<String> = cases.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        let csv = write_cases(&cases, OutputFormat::Csv).unwrap();
        assert!(csv.starts_with("family,m,n,quantity,engine_a,value_a,engine_b,value_b,outcome\n"));
        assert_eq!(read_cases_csv(&csv).unwrap(), cases);
        let json = write_cases(&cases, OutputFormat::Json).unwrap();
        assert_eq!(read_cases_json(&json).unwrap(), cases);
        assert_eq!(run_verification_suite(&cfg).unwrap(), cases);
    }

    #[test]
    fn engine_errors_become_failing_cases() {
        let mut cfg = RunConfig::default();
        cfg.parity_extra = vec![(GridFamily::Grid, 7, 7)];
        let mut plan = Plan { cfg: &cfg, jobs: Vec::new() };
        for &(f, m, n) in &cfg.parity_extra {
            plan.add(f, m, n, Quantity::Parity, "backtrack", "parity-theorem", parity);
        }
        let case = plan.jobs.pop().unwrap().run();
        assert_eq!(case.outcome, Outcome::Fail);
        assert!(case.value_a.contains("budget exceeded"));
    }

    #[test]
    fn trend_rows_mark_skips() {
        let mut cfg = RunConfig::default();
        cfg.trend_ratio = NRange::new(12, 13);
        cfg.trend_average = NRange::new(40, 40);
        let rows = trend_report(&cfg).unwrap();
        let g212 = rows
            .iter()
            .find(|r| r.m == 2 && r.n == 12 && r.metric == TrendMetric::NimisRatio)
            .unwrap();
        assert_eq!(g212.exact, "19/72");
        let g313 = rows.iter().find(|r| r.m == 3 && r.n == 13).unwrap();
        assert!(g313.status.starts_with("skipped"));
        let band = rows
            .iter()
            .find(|r| r.family == GridFamily::FatCylinder)
            .unwrap();
        let dec: f64 = band.decimal.parse().unwrap();
        assert!((dec - 0.724).abs() < 0.01);
        assert_eq!(write_trend(&rows, OutputFormat::Human).unwrap(), write_trend(&trend_report(&cfg).unwrap(), OutputFormat::Human).unwrap());
    }
}
