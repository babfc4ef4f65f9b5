//! Command layer behind the `lattice-nest` binary.
//!
//! Exit status: 0 on success, 1 when a verification or inverse check fails,
//! 2 on malformed input or invalid parameters.

pub mod render;

use std::fmt::Display;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_nest::enumeration::{
    self, brute_count, catalan, BigCount, Budget, CensusTarget, Endpoint, Region, WalkFamily,
};
use lattice_nest::verify::{verify_suite, SuiteConfig};
use lattice_nest::{
    pairs, plane_partitions, single, walks, FamilySpec, LatticePath, NestedTuple, PathPair,
    PlanePartition, PlaneWalk, ShadowRegion, TriPath,
};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "lattice-nest", version, about = "Nested lattice paths, plane walks and their bijections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count a family by formula or by exhaustive enumeration.
    Count(CountArgs),
    /// Apply a bijection and check it against its inverse.
    Apply(ApplyArgs),
    /// Run the exhaustive verification suite.
    Verify(VerifyArgs),
    /// Draw a path, pair, tri-path or walk as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Det,
    Product,
    Sum,
    Formula,
    Brute,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// A, D, G, P; Ak, Gk, Pk (with --k) or A2, G3, ...; M2, P2, G2 with --i/--j for
    /// the (i, j) sets; ending (with --k, --s); octant, octant-x, octant-diag,
    /// quadrant-origin.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Largest length a brute-force census may run on.
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Length budget for both bijection and count checks.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Path,
    Pair,
    Tripath,
    Walk,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub input: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long)]
    pub show_matching: bool,
    #[arg(long)]
    pub show_flips: bool,
    #[arg(long)]
    pub show_shadow: bool,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or parameters outside a domain.
    Input(String),
    /// A verification or inverse check failed.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<lattice_nest::Error> for CliError {
    fn from(e: lattice_nest::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Count(a) => count(a, out),
        Command::Apply(a) => apply(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Render(a) => render(a, out),
    }
}

enum Target {
    Paths(FamilySpec),
    /// Union of `M(n,i,0)` over `i`.
    M2Union(usize),
    Walks(WalkFamily),
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    v.ok_or_else(|| input_err(format!("family {family} needs --{flag}")))
}

fn split_family(name: &str) -> (String, Option<usize>) {
    let digits = name.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    let letters = &name[..name.len() - digits.len()];
    if digits.is_empty() {
        (name.to_string(), None)
    } else {
        (letters.to_string(), digits.parse().ok())
    }
}

fn parse_target(a: &CountArgs) -> CliResult<Target> {
    let n = a.n;
    let fam = a.family.as_str();
    let (letters, arity) = split_family(fam);
    let k_of = |default: Option<usize>| need(default.or(a.k), "k", fam);
    let target = match (letters.as_str(), arity) {
        ("A", None) if a.k.is_none() => Target::Paths(FamilySpec::A { n }),
        ("D", None) => Target::Paths(FamilySpec::D { n }),
        ("G", None) if a.k.is_none() => Target::Paths(FamilySpec::G { n }),
        ("P", None) if a.k.is_none() => Target::Paths(FamilySpec::P { n }),
        ("M", Some(2)) => match a.i {
            Some(i) => Target::Paths(FamilySpec::M2ij { n, i, j: a.j.unwrap_or(0) }),
            None => Target::M2Union(n),
        },
        ("P", Some(2)) if a.i.is_some() => Target::Paths(FamilySpec::P2ij {
            n,
            i: a.i.unwrap_or(0),
            j: a.j.unwrap_or(0),
        }),
        ("G", Some(2)) if a.i.is_some() => Target::Paths(FamilySpec::G2ij {
            n,
            i: a.i.unwrap_or(0),
            j: a.j.unwrap_or(0),
        }),
        ("A" | "Ak", _) => Target::Paths(FamilySpec::Ak { n, k: k_of(arity)? }),
        ("G" | "Gk", _) => Target::Paths(FamilySpec::Gk { n, k: k_of(arity)? }),
        ("P" | "Pk", _) => Target::Paths(FamilySpec::Pk { n, k: k_of(arity)? }),
        ("ending", None) => Target::Paths(FamilySpec::EndingAt {
            n,
            k: a.k.unwrap_or(1),
            s: need(a.s, "s", fam)?,
        }),
        _ => match fam {
            "octant" => Target::Walks(WalkFamily::new(n, Region::Octant)),
            "octant-x" => Target::Walks(WalkFamily::new(n, Region::Octant).ending(Endpoint::OnXAxis)),
            "octant-diag" => Target::Walks(WalkFamily::new(n, Region::Octant).ending(Endpoint::OnDiagonal)),
            "quadrant-origin" => {
                Target::Walks(WalkFamily::new(n, Region::Quadrant).ending(Endpoint::At(0, 0)))
            }
            _ => return Err(input_err(format!("unknown family {fam:?}"))),
        },
    };
    if let Target::Paths(spec) = &target {
        spec.validate()?;
    }
    Ok(target)
}

fn formula(target: &Target, method: Method) -> CliResult<BigCount> {
    let unsupported = || input_err(format!("method {method:?} is not defined for this family"));
    let n = |t: &Target| match t {
        Target::Paths(s) => s.n() as u64,
        Target::M2Union(n) => *n as u64,
        Target::Walks(w) => w.n as u64,
    };
    let nn = n(target);
    let grand = |k: usize| -> CliResult<BigCount> {
        Ok(match method {
            Method::Det | Method::Formula => enumeration::count_grand_tuples_det(nn, k),
            Method::Product => enumeration::count_macmahon(nn - nn / 2, nn / 2, k as u64),
            Method::Sum if k == 2 => enumeration::count_g2_sum(nn),
            _ => return Err(unsupported()),
        })
    };
    let simple = |v: BigCount| if method == Method::Formula { Ok(v) } else { Err(unsupported()) };
    match target {
        Target::Paths(FamilySpec::A { .. }) => simple(BigCount::from(1u8) << nn),
        Target::Paths(FamilySpec::D { .. }) => {
            simple(if nn % 2 == 0 { catalan(nn / 2) } else { BigCount::from(0u8) })
        }
        Target::Paths(FamilySpec::G { .. } | FamilySpec::P { .. }) => grand(1),
        Target::Paths(FamilySpec::Gk { k, .. } | FamilySpec::Pk { k, .. }) => grand(*k),
        Target::M2Union(_) => grand(2),
        Target::Paths(FamilySpec::EndingAt { k, s, .. }) => {
            let (sum, diff) = (nn as i64 + s, nn as i64 - s);
            if sum < 0 || diff < 0 || sum % 2 != 0 {
                return match method {
                    Method::Formula | Method::Product => Ok(BigCount::from(0u8)),
                    _ => Err(unsupported()),
                };
            }
            match method {
                Method::Formula | Method::Product => {
                    Ok(enumeration::count_macmahon((sum / 2) as u64, (diff / 2) as u64, *k as u64))
                }
                _ => Err(unsupported()),
            }
        }
        Target::Walks(w) => {
            let v = match w.endpoint {
                Endpoint::Any if w.region == Region::Octant => enumeration::count_octant_total(nn),
                Endpoint::OnXAxis => enumeration::count_octant_xaxis(nn),
                Endpoint::OnDiagonal if nn % 2 == 0 => enumeration::count_octant_diag(nn / 2),
                Endpoint::OnDiagonal => BigCount::from(0u8),
                Endpoint::At(0, 0) if nn % 2 == 0 => catalan(nn / 2) * catalan(nn / 2 + 1),
                Endpoint::At(0, 0) => BigCount::from(0u8),
                _ => return Err(unsupported()),
            };
            simple(v)
        }
        _ => Err(unsupported()),
    }
}

fn brute(target: &Target, budget: &Budget) -> CliResult<BigCount> {
    Ok(match target {
        Target::Paths(spec) => brute_count(&CensusTarget::Paths(*spec), budget)?,
        Target::Walks(w) => brute_count(&CensusTarget::Walks(*w), budget)?,
        Target::M2Union(n) => {
            let mut total = BigCount::from(0u8);
            for i in (n % 2..=*n).step_by(2) {
                let spec = FamilySpec::M2ij { n: *n, i, j: 0 };
                total += brute_count(&CensusTarget::Paths(spec), budget)?;
            }
            total
        }
    })
}

fn count(a: &CountArgs, out: &mut dyn Write) -> CliResult<()> {
    let target = parse_target(a)?;
    let method = match a.method {
        Some(m) => m,
        None => {
            if formula(&target, Method::Formula).is_ok() {
                Method::Formula
            } else {
                Method::Brute
            }
        }
    };
    let value = match method {
        Method::Brute => brute(&target, &Budget { max_n: a.max_n })?,
        m => formula(&target, m)?,
    };
    if a.json {
        let rec = json!({
            "family": a.family,
            "n": a.n,
            "k": a.k,
            "i": a.i,
            "j": a.j,
            "s": a.s,
            "method": format!("{method:?}").to_lowercase(),
            "count": value.to_string(),
        });
        writeln!(out, "{rec}")?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(())
}

fn parse<T: FromStr>(s: &str) -> CliResult<T>
where
    T::Err: Display,
{
    s.trim().parse::<T>().map_err(|e| input_err(e.to_string()))
}

/// Applies `forward`, then checks `backward` returns the input.
fn roundtrip<A, B>(
    input: &A,
    forward: impl Fn(&A) -> lattice_nest::Result<B>,
    backward: impl Fn(&B) -> lattice_nest::Result<A>,
) -> CliResult<B>
where
    A: PartialEq + Display,
    B: Display,
{
    let image = forward(input)?;
    let back = backward(&image).map_err(|e| CliError::Failed(format!("inverse check failed on {image}: {e}")))?;
    if back != *input {
        return Err(CliError::Failed(format!("inverse check failed: {input} -> {image} -> {back}")));
    }
    Ok(image)
}

fn need_ij(a: &ApplyArgs) -> CliResult<(usize, usize)> {
    let i = a.i.ok_or_else(|| input_err(format!("map {} needs --i", a.map)))?;
    Ok((i, a.j.unwrap_or(0)))
}

fn need_s(a: &ApplyArgs) -> CliResult<i64> {
    a.s.ok_or_else(|| input_err(format!("map {} needs --s", a.map)))
}

fn walk_ij(w: &PlaneWalk) -> lattice_nest::Result<(usize, usize)> {
    let (x, y) = w.endpoint();
    if x < y || y < 0 {
        return Err(lattice_nest::Error::InvalidParameters(format!(
            "endpoint ({x}, {y}) is not a valid (i, j)"
        )));
    }
    Ok((x as usize, y as usize))
}

fn pp_dims(t: &NestedTuple) -> (usize, usize) {
    let first = &t.paths()[0];
    (first.count(lattice_nest::Step::U), first.count(lattice_nest::Step::D))
}

fn apply_map(a: &ApplyArgs) -> CliResult<String> {
    let input = a.input.as_str();
    let text = match a.map.as_str() {
        "xi" => roundtrip(&parse::<LatticePath>(input)?, single::xi, single::xi_inv)?.to_string(),
        "xi-inv" => roundtrip(&parse::<LatticePath>(input)?, single::xi_inv, single::xi)?.to_string(),
        "xi-s" => {
            let s = need_s(a)?;
            roundtrip(&parse::<LatticePath>(input)?, |p| single::xi_s(p, s), single::xi_s_inv)?.to_string()
        }
        "xi-s-inv" => {
            let r = parse::<LatticePath>(input)?;
            let s = r.end_height();
            roundtrip(&r, single::xi_s_inv, |p| single::xi_s(p, s))?.to_string()
        }
        "nu" => roundtrip(&parse::<LatticePath>(input)?, single::nu, single::nu_inv)?.to_string(),
        "nu-inv" => roundtrip(&parse::<LatticePath>(input)?, single::nu_inv, single::nu)?.to_string(),
        "phi" => {
            let pair = parse::<PathPair>(input)?;
            let (i, j) = match a.i {
                Some(i) => (i, a.j.unwrap_or(0)),
                None => pairs::infer_ij(&pair)?,
            };
            roundtrip(&pair, |x| Ok(pairs::phi(x, i, j)?.0), |y| Ok(pairs::phi_inv(y, i, j)?.0))?.to_string()
        }
        "phi-inv" => {
            let (i, j) = need_ij(a)?;
            roundtrip(
                &parse::<PathPair>(input)?,
                |y| Ok(pairs::phi_inv(y, i, j)?.0),
                |x| Ok(pairs::phi(x, i, j)?.0),
            )?
            .to_string()
        }
        "psi" => roundtrip(&parse::<PathPair>(input)?, pairs::psi, pairs::psi_inv)?.to_string(),
        "psi-inv" => roundtrip(&parse::<PathPair>(input)?, pairs::psi_inv, pairs::psi)?.to_string(),
        "psi-s" => {
            let s = need_s(a)?;
            roundtrip(&parse::<PathPair>(input)?, |x| pairs::psi_s(x, s), pairs::psi_s_inv)?.to_string()
        }
        "psi-s-inv" => {
            let y = parse::<PathPair>(input)?;
            let s = (y.upper.end_height() + y.lower.end_height()) / 2;
            roundtrip(&y, pairs::psi_s_inv, |x| pairs::psi_s(x, s))?.to_string()
        }
        "omega" => roundtrip(
            &parse::<PathPair>(input)?,
            |x| Ok(walks::omega_pair(x)),
            |w| Ok(walks::omega_inv(w)),
        )?
        .to_string(),
        "omega-inv" => roundtrip(
            &parse::<PlaneWalk>(input)?,
            |w| Ok(walks::omega_inv(w)),
            |x| Ok(walks::omega_pair(x)),
        )?
        .to_string(),
        "phi-tilde" => {
            let w = parse::<PlaneWalk>(input)?;
            let (i, j) = walk_ij(&w)?;
            roundtrip(&w, walks::phi_tilde, |v| walks::phi_tilde_inv(v, i, j))?.to_string()
        }
        "phi-tilde-inv" => {
            let (i, j) = need_ij(a)?;
            roundtrip(&parse::<PlaneWalk>(input)?, |v| walks::phi_tilde_inv(v, i, j), walks::phi_tilde)?
                .to_string()
        }
        "psi-tilde" => roundtrip(&parse::<PlaneWalk>(input)?, walks::psi_tilde, walks::psi_tilde_inv)?.to_string(),
        "psi-tilde-inv" => {
            roundtrip(&parse::<PlaneWalk>(input)?, walks::psi_tilde_inv, walks::psi_tilde)?.to_string()
        }
        "psi-tilde-s" => {
            let s = need_s(a)?;
            roundtrip(&parse::<PlaneWalk>(input)?, |w| walks::psi_tilde_s(w, s), walks::psi_tilde_s_inv)?
                .to_string()
        }
        "psi-tilde-s-inv" => {
            let w = parse::<PlaneWalk>(input)?;
            let s = w.endpoint().0;
            roundtrip(&w, walks::psi_tilde_s_inv, |v| walks::psi_tilde_s(v, s))?.to_string()
        }
        "tuple-to-pp" => {
            let t = parse::<NestedTuple>(input)?;
            let (p, q) = pp_dims(&t);
            let k = t.k();
            roundtrip(
                &t,
                |t| plane_partitions::tuple_to_pp(t, p, q),
                |a| plane_partitions::pp_to_tuple(a, k),
            )?
            .to_string()
        }
        "pp-to-tuple" => {
            let pp = parse::<PlanePartition>(input)?;
            let k = a.k.ok_or_else(|| input_err("map pp-to-tuple needs --k"))?;
            let (p, q) = (pp.width(), pp.height());
            roundtrip(
                &pp,
                |a| plane_partitions::pp_to_tuple(a, k),
                |t| plane_partitions::tuple_to_pp(t, p, q),
            )?
            .to_string()
        }
        other => return Err(input_err(format!("unknown map {other:?}"))),
    };
    Ok(text)
}

fn apply(a: &ApplyArgs, out: &mut dyn Write) -> CliResult<()> {
    let text = apply_map(a)?;
    if a.json {
        let rec = json!({ "map": a.map, "input": a.input, "output": text });
        writeln!(out, "{rec}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    if a.k == 0 {
        return Err(input_err("--k must be positive"));
    }
    let cfg = match a.max_n {
        Some(n) => SuiteConfig::uniform(n, a.k),
        None => SuiteConfig {
            max_k: a.k,
            ..SuiteConfig::default()
        },
    };
    let start = Instant::now();
    let report = verify_suite(&cfg);
    let secs = start.elapsed().as_secs_f64();
    if a.json {
        for r in &report.records {
            writeln!(out, "{}", serde_json::to_string(r).expect("records serialize"))?;
        }
        writeln!(out, "{}", json!({ "pass": report.pass, "runtime_seconds": secs }))?;
    } else {
        writeln!(out, "{report}")?;
        writeln!(out, "runtime: {secs:.2}s")?;
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} identities failed", report.failures().count())))
    }
}

/// Positions where two equal-length step sequences differ, 1-based.
fn diff_positions<T: PartialEq>(a: &[T], b: &[T]) -> Vec<usize> {
    a.iter().zip(b).enumerate().filter(|(_, (x, y))| x != y).map(|(i, _)| i + 1).collect()
}

pub fn render_svg(a: &RenderArgs) -> CliResult<String> {
    let bad = |flag: &str| input_err(format!("--{flag} is not available for {:?}", a.kind));
    Ok(match a.kind {
        Kind::Path => {
            if a.show_shadow {
                return Err(bad("show-shadow"));
            }
            let p = parse::<LatticePath>(&a.input)?;
            let flips = if a.show_flips {
                diff_positions(p.steps(), single::xi(&p)?.steps())
            } else {
                Vec::new()
            };
            render::render_path(&p, a.show_matching, &flips)
        }
        Kind::Pair => {
            if a.show_shadow {
                return Err(bad("show-shadow"));
            }
            let pair = parse::<PathPair>(&a.input)?;
            let (top, bottom) = if a.show_flips {
                let (image, _) = match a.i {
                    Some(i) => pairs::phi(&pair, i, a.j.unwrap_or(0))?,
                    None => pairs::phi_auto(&pair)?,
                };
                (
                    diff_positions(pair.upper.steps(), image.upper.steps()),
                    diff_positions(pair.lower.steps(), image.lower.steps()),
                )
            } else {
                (Vec::new(), Vec::new())
            };
            render::render_pair(&pair, a.show_matching, (&top, &bottom))
        }
        Kind::Tripath => {
            if a.show_shadow {
                return Err(bad("show-shadow"));
            }
            if a.show_flips {
                return Err(bad("show-flips"));
            }
            render::render_tripath(&parse::<TriPath>(&a.input)?, a.show_matching)
        }
        Kind::Walk => {
            if a.show_matching {
                return Err(bad("show-matching"));
            }
            let w = parse::<PlaneWalk>(&a.input)?;
            let shadow = if a.show_shadow {
                let (i, j) = match a.i {
                    Some(i) => (i, a.j.unwrap_or(0)),
                    None => walk_ij(&w)?,
                };
                Some(ShadowRegion::new(i as i64, j as i64)?)
            } else {
                None
            };
            let flips = if a.show_flips {
                diff_positions(w.steps(), walks::phi_tilde(&w)?.steps())
            } else {
                Vec::new()
            };
            render::render_walk(&w, shadow, &flips)
        }
    })
}

fn render(a: &RenderArgs, out: &mut dyn Write) -> CliResult<()> {
    let svg = render_svg(a)?;
    match &a.out {
        Some(path) => std::fs::write(path, svg)?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(())
}
