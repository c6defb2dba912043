use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use facelat::checks::{bloch_report, cone_report, run_suite, CheckReport, Suite};
use facelat::exactgeom::PolyCone;
use facelat::fixtures;
use facelat::io::{body_to_json, parse_body, Body, NamedBody};
use facelat::lattice::FiniteLattice;
use facelat::planar::{Cone2, FaceDescriptor, PlanarBody};
use facelat::polytope::{PolyFace, Polytope};

#[derive(Parser)]
#[command(name = "facelat", version, about = "Face lattices, normal cones and touching cones of convex bodies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List a lattice of a body, optionally writing its Hasse diagram as DOT.
    Lattice {
        /// Body file, or the name of a shipped fixture.
        body: String,
        #[arg(long, value_enum, default_value = "faces")]
        kind: Kind,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Write the polar body.
    Polar {
        body: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite and emit a JSON report.
    Check {
        body: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric experiments on state spaces of matrix algebras.
    Statespace {
        #[arg(value_enum)]
        example: Example,
        /// Angle between the cutting plane and the cone axis, in degrees.
        #[arg(long, default_value_t = 12.0)]
        phi: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Boundary samples for the cone experiment.
        #[arg(long, default_value_t = 720)]
        resolution: usize,
        /// Step size below which the cone projection counts as flat.
        #[arg(long, default_value_t = 1e-6)]
        tau_flat: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Faces,
    Exposed,
    Normal,
    Touching,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Bloch,
    Cone,
}

/// A path if it exists, else a fixture from $FACELAT_FIXTURES or the built-in set.
fn load(arg: &str) -> Result<NamedBody> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?
    } else if let Ok(dir) = std::env::var("FACELAT_FIXTURES") {
        let p = Path::new(&dir).join(format!("{arg}.json"));
        std::fs::read_to_string(&p).with_context(|| format!("no body file {arg} and no fixture {}", p.display()))?
    } else {
        fixtures::text(arg).with_context(|| format!("no body file or fixture named {arg}"))?.to_string()
    };
    let mut body = parse_body(&text).with_context(|| format!("parsing {arg}"))?;
    if body.name.is_empty() {
        body.name = path.file_stem().map_or(arg.to_string(), |s| s.to_string_lossy().into_owned());
    }
    Ok(body)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn show_face(p: &Polytope, f: &PolyFace) -> String {
    let pts: Vec<String> = p.points_of(f).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", pts.join(", "))
}

fn cone_rank(c: &PolyCone) -> i64 {
    c.cone_dim() as i64
}

fn list<T: Eq + std::hash::Hash + Clone>(l: &FiniteLattice<T>, label: impl Fn(&T) -> String, rank: impl Fn(&T) -> i64) {
    let mut idx: Vec<usize> = (0..l.len()).collect();
    idx.sort_by_key(|&i| rank(l.element(i)));
    println!("{} elements", l.len());
    for i in idx {
        println!("  dim {:>2}  {}", rank(l.element(i)), label(l.element(i)));
    }
}

fn write_dot<T: Eq + std::hash::Hash + Clone>(dot: &Option<PathBuf>, name: &str, l: &FiniteLattice<T>, label: impl Fn(&T) -> String, rank: impl Fn(&T) -> i64) -> Result<()> {
    if let Some(p) = dot {
        std::fs::write(p, l.to_dot(name, label, rank)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn polytope_lattice(name: &str, p: &Polytope, kind: Kind, dot: &Option<PathBuf>) -> Result<()> {
    match kind {
        Kind::Faces | Kind::Exposed => {
            let l = if matches!(kind, Kind::Faces) { p.face_lattice()? } else { p.exposed_face_lattice()? };
            let label = |f: &PolyFace| show_face(p, f);
            list(&l, label, |f| f.dim);
            write_dot(dot, name, &l, label, |f| f.dim)
        }
        Kind::Normal | Kind::Touching => {
            let l = if matches!(kind, Kind::Normal) { p.normal_cone_lattice()? } else { p.touching_cone_lattice()? };
            list(&l, |c| c.to_string(), cone_rank);
            write_dot(dot, name, &l, |c| c.to_string(), cone_rank)
        }
    }
}

fn cone_role(b: &PlanarBody, c: &Cone2) -> &'static str {
    let arc_family = |d: &facelat::exactgeom::RatVec| {
        (0..b.features().len()).any(|i| b.is_face(&FaceDescriptor::ArcPoint { feature: i, normal: d.clone() }))
    };
    match c {
        Cone2::Ray(_) if !b.is_normal_cone(c) => "ray, touching but not normal",
        Cone2::Ray(d) if arc_family(d) => "ray, representative of an arc's family of normal rays",
        Cone2::Ray(_) => "ray, normal to an edge",
        Cone2::Sector(..) => "",
        _ if !b.is_normal_cone(c) => "touching but not normal",
        _ => "",
    }
}

fn planar_lattice(name: &str, b: &PlanarBody, kind: Kind, dot: &Option<PathBuf>) -> Result<()> {
    let arcs = b.summary().arc_families;
    if arcs > 0 {
        println!(
            "note: {arcs} closed arc(s), each contributing a continuum of one-point faces and normal rays; \
             only the finite special summary is listed, with one representative per arc"
        );
    }
    match kind {
        Kind::Faces | Kind::Exposed => {
            let l = if matches!(kind, Kind::Faces) { b.special_face_lattice()? } else { b.special_exposed_lattice()? };
            let label = |f: &FaceDescriptor| {
                let exposed = b.is_exposed(f).unwrap_or(false);
                format!("{}{}", b.describe(f), if exposed { "" } else { "  (not exposed)" })
            };
            list(&l, label, |f| f.dim());
            write_dot(dot, name, &l, |f| b.describe(f), |f| f.dim())
        }
        Kind::Normal | Kind::Touching => {
            let l = if matches!(kind, Kind::Normal) { b.special_normal_lattice()? } else { b.special_touching_lattice()? };
            let label = |c: &Cone2| {
                let role = cone_role(b, c);
                if role.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}  ({role})")
                }
            };
            list(&l, label, |c| c.dim() as i64);
            write_dot(dot, name, &l, |c| c.to_string(), |c| c.dim() as i64)
        }
    }
}

fn report(r: &CheckReport, out: &Option<PathBuf>) -> Result<bool> {
    for v in &r.verdicts {
        eprintln!("{:?} {}", v.status, v.id);
    }
    emit(out, &serde_json::to_string_pretty(r)?)?;
    Ok(r.passes())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Lattice { body, kind, dot } => {
            let b = load(&body)?;
            match &b.body {
                Body::Polytope(p) => polytope_lattice(&b.name, p, kind, &dot)?,
                Body::Planar(pl) => planar_lattice(&b.name, pl, kind, &dot)?,
            }
            Ok(true)
        }
        Cmd::Polar { body, out } => {
            let b = load(&body)?;
            let polar = match &b.body {
                Body::Polytope(p) => Body::Polytope(p.polar()?),
                Body::Planar(pl) => Body::Planar(pl.polar()?),
            };
            emit(&out, &body_to_json(&format!("{}_polar", b.name), &polar))?;
            Ok(true)
        }
        Cmd::Check { body, suite, out } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => bail!(e),
            };
            let b = load(&body)?;
            report(&run_suite(&b.name, &b.body, suite), &out)
        }
        Cmd::Statespace { example, phi, samples, seed, tol, resolution, tau_flat, out } => {
            let r = match example {
                Example::Bloch => bloch_report(samples, seed, tol)?,
                Example::Cone => cone_report(phi, resolution, tau_flat)?,
            };
            report(&r, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
