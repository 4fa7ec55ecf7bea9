//! The `prohecke` command line.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bernstein::{theta, theta_hat, xi, BernsteinCache};
use crate::center::{centrality, orbit, z_gamma, DEFAULT_ORBIT_BOUND};
use crate::error::{Error, Result};
use crate::hecke::Algebra;
use crate::json::{element_from_json, hecke_to_value, parse_orientation, propp_from_json, propp_to_value};
use crate::orientation::Orientation;
use crate::presets::{build, jucys_murphy, parse_preset, JmVariant, Projection};
use crate::verify::{report_value, run_suite, run_suites, SuiteConfig, SUITES};
use crate::weyl::HyperplaneId;

#[derive(Parser, Debug)]
#[command(name = "prohecke", version, about = "Exact computations in pro-p Iwahori-Hecke algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Default)]
pub struct Common {
    /// `gln:<n>:<universal|a1|laurent>` or `yokonuma:<d>:<n>`
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Seed for randomized suites
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with `preset`, `seed`, `orient` and `suite` settings
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Orientation spec, e.g. `spherical:[2,1]`, `chamber:{..}.op`, `dominant`
    #[arg(long, global = true)]
    pub orient: Option<String>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Variant {
    Finite,
    Affine,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Product of two elements (basis element or `{"terms":..}` JSON)
    Mul { a: String, b: String },
    /// θ̂_o(g)
    ThetaHat { g: String },
    /// θ_o(g), for a Laurent context
    Theta { g: String },
    /// Ξ_o(H) for `H = {"root":[..],"k":k}`, the wall `α + k = 0`
    Xi {
        #[arg(long)]
        wall: String,
    },
    /// Both sides of the Bernstein relation for adjacent `o`, `o'`
    VerifyBernstein {
        #[arg(long)]
        orient2: String,
        #[arg(long)]
        g: String,
    },
    /// z_γ for the conjugation orbit of an element of X(1), with a centrality certificate
    Center {
        #[arg(long)]
        orbit_of: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
        bound: usize,
    },
    /// Jucys-Murphy element J_i
    Jm {
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value = "affine")]
        variant: Variant,
    },
    /// Projection onto the finite Hecke algebra
    Pi { h: String },
    /// Run a verification suite, or `all`
    Verify { suite: String },
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    preset: Option<String>,
    seed: Option<u64>,
    orient: Option<String>,
    #[serde(default)]
    suite: Option<SuiteConfig>,
}

/// Settings after merging flags over the config file.
struct Settings {
    preset: String,
    orient: Option<String>,
    suite: SuiteConfig,
}

fn settings(common: &Common) -> Result<Settings> {
    let file: FileConfig = match &common.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Parse { pos: e.column(), msg: format!("{}: {e}", p.display()) })?
        }
        None => FileConfig::default(),
    };
    let preset = common
        .preset
        .clone()
        .or(file.preset)
        .ok_or_else(|| Error::Usage("missing --preset".into()))?;
    let mut suite = file.suite.unwrap_or_default();
    if let Some(s) = common.seed.or(file.seed) {
        suite.seed = s;
    }
    Ok(Settings { preset, orient: common.orient.clone().or(file.orient), suite })
}

fn orientation(alg: &Algebra, spec: &Option<String>) -> Result<Orientation> {
    match spec {
        Some(s) => parse_orientation(alg.weyl(), s),
        None => Ok(Orientation::dominant()),
    }
}

fn wall(alg: &Algebra, s: &str) -> Result<HyperplaneId> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Wall {
        root: Vec<i64>,
        k: i64,
    }
    let w: Wall = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    let (root, sign) = alg
        .weyl()
        .datum
        .root_index(&w.root)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("{:?} is not a root", w.root) })?;
    Ok(HyperplaneId { root: root as u32, k: sign * w.k })
}

/// Runs a parsed command, returning the JSON output and whether every check passed.
pub fn execute(cli: &Cli) -> Result<(Value, bool)> {
    let st = settings(&cli.common)?;
    let alg = build(parse_preset(&st.preset)?)?;
    let alg = alg.as_ref();
    let out = match &cli.cmd {
        Cmd::Mul { a, b } => {
            let r = alg.mul(&element_from_json(alg, a)?, &element_from_json(alg, b)?);
            (json!({ "result": hecke_to_value(alg, &r) }), true)
        }
        Cmd::ThetaHat { g } => {
            let o = orientation(alg, &st.orient)?;
            let r = theta_hat(alg, &o, &propp_from_json(alg, g)?)?;
            (json!({ "orientation": o.describe(alg.weyl()), "result": hecke_to_value(alg, &r) }), true)
        }
        Cmd::Theta { g } => {
            let o = orientation(alg, &st.orient)?;
            let r = theta(alg, &o, &propp_from_json(alg, g)?)?;
            (json!({ "orientation": o.describe(alg.weyl()), "result": hecke_to_value(alg, &r) }), true)
        }
        Cmd::Xi { wall: w } => {
            let o = orientation(alg, &st.orient)?;
            let r = xi(alg, &o, wall(alg, w)?)?;
            (json!({ "orientation": o.describe(alg.weyl()), "result": hecke_to_value(alg, &r) }), true)
        }
        Cmd::VerifyBernstein { orient2, g } => {
            let o = orientation(alg, &st.orient)?;
            let o2 = parse_orientation(alg.weyl(), orient2)?;
            let g = propp_from_json(alg, g)?;
            let mut cache = BernsteinCache::new(alg);
            let probe = alg.weyl().affine_ball(2);
            let ok = cache.bernstein_check(&o, &o2, &g, &probe)?;
            let (lhs, rhs) = cache.bernstein_sides(&o, &o2, &g)?;
            let v = json!({
                "pass": ok,
                "lhs": hecke_to_value(alg, &lhs),
                "rhs": hecke_to_value(alg, &rhs),
            });
            (v, ok)
        }
        Cmd::Center { orbit_of, bound } => {
            let x = propp_from_json(alg, orbit_of)?;
            let o = orientation(alg, &st.orient)?;
            let orb = orbit(alg, &x, *bound)?;
            let z = z_gamma(alg, &o, &orb)?;
            let cert = centrality(alg, &z)?;
            let ok = cert.ok();
            let v = json!({
                "orbit": orb.iter().map(|e| propp_to_value(alg, e)).collect::<Vec<_>>(),
                "z": hecke_to_value(alg, &z),
                "certificate": { "pass": ok, "checks": cert.checks },
            });
            (v, ok)
        }
        Cmd::Jm { i, variant } => {
            let v = match variant {
                Variant::Finite => JmVariant::Finite,
                Variant::Affine => JmVariant::Affine,
            };
            (json!({ "result": hecke_to_value(alg, &jucys_murphy(alg, *i, v)?) }), true)
        }
        Cmd::Pi { h } => {
            let r = Projection::new(alg)?.apply(&element_from_json(alg, h)?)?;
            (json!({ "result": hecke_to_value(alg, &r) }), true)
        }
        Cmd::Verify { suite } => {
            let reports = if suite == "all" {
                run_suites(&SUITES, alg, &st.suite)?
            } else {
                vec![run_suite(suite, alg, &st.suite)?]
            };
            let ok = reports.iter().all(|r| r.pass);
            (report_value(&reports), ok)
        }
    };
    Ok(out)
}

/// Parses `argv`, runs, writes output, and returns the process exit code:
/// 0 on success, 1 if a check failed, 2 on errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((value, ok)) => {
            let text = serde_json::to_string_pretty(&value).expect("serializable output") + "\n";
            let written = match &cli.common.out {
                Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
