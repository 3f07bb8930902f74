//! Command-line driver: validation, Euler characteristic, recognizers,
//! orientation, contiguity graphs, estimating complexes, closures, cut-outs
//! and seeded sphere generation over the line-oriented text format.
//!
//! Exit codes: 0 success, 1 validation or analysis failure, 2 usage error.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use c2x::fmt::{
    export_dot, parse_arcs, parse_document, parse_map, serialize_complex, serialize_map,
};
use c2x::surface::OrientFlag;
use c2x::{
    check_planar_bound, contiguity_graph, estimating_complex, find_coherent_orientation,
    is_closed_surface, is_combinatorial_circle, is_combinatorial_disc, is_combinatorial_sphere,
    random_sphere, validate_arc_system, Complex2, CycleClass, EdgeDir, FaceId, OrientedEdge,
    PathSeq,
};

#[derive(Parser)]
#[command(name = "c2x", version, about = "Combinatorial 2-complex toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against every structural invariant.
    Validate { file: PathBuf },
    /// Print the Euler characteristic of a complex.
    Euler { file: PathBuf },
    /// Report circle/closed-surface/sphere/disc recognition flags.
    Recognize { file: PathBuf },
    /// Find a coherent orientation of a surface.
    Orient { file: PathBuf },
    /// Build the contiguity graph of a face set (default: all faces).
    Contiguity {
        file: PathBuf,
        /// Comma-separated face names.
        #[arg(long)]
        faces: Option<String>,
        /// Emit DOT instead of the text format.
        #[arg(long)]
        dot: bool,
    },
    /// Build the estimating 2-complex of an arc system on a sphere.
    Estimate { sphere: PathBuf, arcs: PathBuf },
    /// Reattach faces along a map's contours, printing the spherical closure.
    Closure { file: PathBuf },
    /// Cut a simple disc map out of a disc map along a simple cycle.
    Cutout {
        file: PathBuf,
        /// The cutting cycle, e.g. "e1+ e2- e3+".
        cycle: String,
    },
    /// Generate a seeded random sphere.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        ops: usize,
        /// Print the replayable op log instead of the sphere.
        #[arg(long)]
        log: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(path: &PathBuf) -> Result<Complex2, Failure> {
    let text = read(path)?;
    parse_document(&text)
        .map(|d| d.complex)
        .map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let text = read(&file)?;
            match parse_document(&text) {
                Ok(doc) => {
                    println!(
                        "ok: {} vertices, {} edges, {} faces",
                        doc.complex.vertex_count(),
                        doc.complex.edge_count(),
                        doc.complex.face_count()
                    );
                    Ok(())
                }
                Err(e) => Err(fail(format!("invalid: {e}"))),
            }
        }
        Command::Euler { file } => {
            let c = load_complex(&file)?;
            println!("chi = {}", c.euler_characteristic());
            Ok(())
        }
        Command::Recognize { file } => {
            let c = load_complex(&file)?;
            println!("circle = {}", is_combinatorial_circle(&c));
            println!("surface = {}", c2x::is_surface(&c));
            println!("closed_surface = {}", is_closed_surface(&c));
            println!("sphere = {}", is_combinatorial_sphere(&c));
            println!("disc = {}", is_combinatorial_disc(&c));
            Ok(())
        }
        Command::Orient { file } => {
            let c = load_complex(&file)?;
            match find_coherent_orientation(&c) {
                Err(e) => Err(fail(e.to_string())),
                Ok(None) => Err(fail("non-orientable")),
                Ok(Some(theta)) => {
                    for f in c.face_ids() {
                        let sign = match theta.flag(f) {
                            OrientFlag::AsStored => '+',
                            OrientFlag::Reversed => '-',
                        };
                        println!("orientation {} {}", c.face_name(f), sign);
                    }
                    Ok(())
                }
            }
        }
        Command::Contiguity { file, faces, dot } => {
            let c = load_complex(&file)?;
            let face_set: BTreeSet<FaceId> = match faces {
                None => c.face_ids().collect(),
                Some(list) => list
                    .split(',')
                    .map(|name| {
                        let name = name.trim();
                        c.face_by_name(name)
                            .ok_or_else(|| usage(format!("unknown face {name:?}")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let res = contiguity_graph(&c, &face_set).map_err(|e| fail(e.to_string()))?;
            let report = check_planar_bound(&res.graph).map_err(|e| fail(e.to_string()))?;
            println!(
                "# bound: {} < 3 * {}: {}",
                report.edges,
                report.vertices,
                if report.holds { "ok" } else { "VIOLATED" }
            );
            if let Some(strong) = report.strong_holds {
                println!(
                    "# strong bound: 3 * {} >= {} + 6: {}",
                    report.vertices,
                    report.edges,
                    if strong { "ok" } else { "VIOLATED" }
                );
            }
            if dot {
                print!("{}", export_dot(&res.graph).map_err(|e| fail(e.to_string()))?);
            } else {
                print!("{}", serialize_complex(&res.graph));
            }
            if report.holds {
                Ok(())
            } else {
                Err(fail("planar bound violated"))
            }
        }
        Command::Estimate { sphere, arcs } => {
            let c = load_complex(&sphere)?;
            let arc_text = read(&arcs)?;
            let arc_list = parse_arcs(&arc_text, &c).map_err(|e| fail(e.to_string()))?;
            let sys = validate_arc_system(&c, arc_list).map_err(|e| fail(e.to_string()))?;
            let res = estimating_complex(&sys).map_err(|e| fail(e.to_string()))?;
            print!("{}", serialize_complex(&res.phi));
            for (v, comp) in res.phi.vertices().zip(res.components.iter()) {
                let members: Vec<String> =
                    comp.iter().map(|&v| c.vertex_name(v)).collect();
                println!(
                    "# alpha0: {} <- {{ {} }}",
                    res.phi.vertex_name(v),
                    members.join(" ")
                );
            }
            for (i, arc) in sys.arcs().iter().enumerate() {
                let steps: Vec<String> = arc
                    .representative()
                    .steps
                    .iter()
                    .map(|oe| format!("{}{}", c.edge_name(oe.edge), oe.dir.sign()))
                    .collect();
                println!(
                    "# alpha1: {}+ <- {}",
                    res.phi.edge_name(res.arc_edges[i]),
                    steps.join(" ")
                );
            }
            for &(src, dst) in &res.face_images {
                println!("# alpha2: {} <- {}", res.phi.face_name(dst), c.face_name(src));
            }
            Ok(())
        }
        Command::Closure { file } => {
            let text = read(&file)?;
            let m = parse_map(&text).map_err(|e| fail(e.to_string()))?;
            let closure = m.spherical_closure().map_err(|e| fail(e.to_string()))?;
            print!("{}", serialize_map(&closure.sphere));
            let names: Vec<String> = closure
                .improper
                .iter()
                .map(|&f| closure.sphere.complex().face_name(f))
                .collect();
            println!("# improper: {}", names.join(" "));
            Ok(())
        }
        Command::Cutout { file, cycle } => {
            let text = read(&file)?;
            let m = parse_map(&text).map_err(|e| fail(e.to_string()))?;
            let c = m.complex();
            let mut steps = Vec::new();
            for token in cycle.split_whitespace() {
                let (name, sign) = token.split_at(token.len().saturating_sub(1));
                let dir = match sign {
                    "+" => EdgeDir::Forward,
                    "-" => EdgeDir::Backward,
                    _ => return Err(usage(format!("cycle token {token:?} must end in + or -"))),
                };
                let edge = c
                    .edge_by_name(name)
                    .ok_or_else(|| usage(format!("unknown edge {name:?}")))?;
                steps.push(OrientedEdge { edge, dir });
            }
            if steps.is_empty() {
                return Err(usage("empty cutting cycle"));
            }
            let start = c.tail(steps[0]);
            let cycle = CycleClass::from_cyclic_path(c, PathSeq::new(start, steps))
                .map_err(|e| fail(format!("not a cycle: {e}")))?;
            match m.cut_out(&cycle).map_err(|e| fail(e.to_string()))? {
                Some((disc, _)) => {
                    print!("{}", serialize_map(&disc));
                    Ok(())
                }
                None => Err(fail("no cut-out: the cycle is oriented counterclockwise")),
            }
        }
        Command::Gen { seed, ops, log } => {
            let (sphere, oplog) = random_sphere(seed, ops);
            if log {
                print!("{oplog}");
            } else {
                print!("{}", serialize_map(&sphere));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("{message}");
            ExitCode::from(code)
        }
    }
}
