//! The `topothin` command-line driver.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O error, 3 malformed input.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::complex::{build_simplicial_from_off, ComplexImage};
use crate::io::{self, CodecError, PnmEncoding};
use crate::par::Execution;
use crate::simple2d::{build_simple_lut_2d, Connectivity2};
use crate::simple3d::Lut3d;
use crate::skeleton::{thick_skeleton, thin_skeleton, ultimate_n_collapse};
use crate::thinning::NoConstraint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "topothin", version, about = "Homotopic thinning of images, volumes and meshes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// (4,8) thinning of a PBM image.
    Thin2d {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Keep every end point of the input.
        #[arg(long)]
        end_points: bool,
    },
    /// (26,6) thinning of a VOL volume.
    Thin3d {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Use a precomputed table of simple configurations.
        #[arg(long)]
        lut: bool,
    },
    /// Thick skeleton of an OFF triangle mesh.
    MeshSkel {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Ultimate 2-collapse of an OFF mesh, followed by a 1-collapse with `--dim 1`.
    /// Writes OFF when the output ends in `.off`, an edge list otherwise.
    MeshCollapse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: u8,
        #[arg(long)]
        output: PathBuf,
    },
    /// Gray-level thinning of a PGM image.
    GrayThin {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Lookup-table utilities.
    Lut {
        #[command(subcommand)]
        action: LutAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum LutAction {
    /// Writes the 32-byte 2D simple-point table to standard output.
    Dump {
        #[arg(long, value_enum)]
        conn: Conn,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Conn {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn at(path: &Path, err: CodecError) -> Self {
        let code = match err {
            CodecError::Io(_) => EXIT_IO,
            CodecError::Malformed(_) => EXIT_MALFORMED,
        };
        Failure { code, message: format!("{}: {err}", path.display()) }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| Failure::at(path, e.into()))
}

fn save(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> Result<(), CodecError>) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| Failure::at(path, e.into()))?;
    let mut w = BufWriter::new(file);
    write(&mut w).and_then(|_| w.flush().map_err(CodecError::from)).map_err(|e| Failure::at(path, e))
}

/// Runs `f` and reports its wall-clock time on standard error.
fn timed<T>(f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    eprintln!("thinning: {:.2} s", start.elapsed().as_secs_f64());
    out
}

fn load_mesh(path: &Path) -> Result<crate::complex::SimplicialComplex, Failure> {
    let off = io::read_off(open(path)?).map_err(|e| Failure::at(path, e))?;
    build_simplicial_from_off(&off.positions, &off.triangles)
        .map_err(|e| Failure { code: EXIT_MALFORMED, message: format!("{}: {e}", path.display()) })
}

pub fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Thin2d { input, output, end_points } => {
            let img = io::read_pbm(open(&input)?).map_err(|e| Failure::at(&input, e))?;
            let out = timed(|| crate::thin2d(&img, end_points));
            save(&output, |w| io::write_pbm(&out, PnmEncoding::Raw, w))
        }
        Command::Thin3d { input, output, lut } => {
            let img = io::read_vol(open(&input)?).map_err(|e| Failure::at(&input, e))?;
            let table = lut.then(|| Arc::new(Lut3d::eager(Execution::Parallel)));
            let out = timed(|| crate::thin3d(&img, table));
            save(&output, |w| io::write_vol(&out, w))
        }
        Command::MeshSkel { input, output } => {
            let mesh = load_mesh(&input)?;
            let out = timed(|| thick_skeleton(&mesh.full_image(), NoConstraint));
            save(&output, |w| io::write_off(&io::surviving_triangles(&mesh, &out), w))
        }
        Command::MeshCollapse { input, dim, output } => {
            let mesh = load_mesh(&input)?;
            let full = mesh.full_image();
            let out: ComplexImage = timed(|| match dim {
                2 => ultimate_n_collapse(&full, NoConstraint),
                _ => thin_skeleton(&full, NoConstraint),
            });
            let as_off = output.extension().is_some_and(|e| e.eq_ignore_ascii_case("off"));
            if as_off {
                save(&output, |w| io::write_off(&io::surviving_triangles(&mesh, &out), w))
            } else {
                save(&output, |w| io::write_edge_list(&mesh, &out, w))
            }
        }
        Command::GrayThin { input, output } => {
            let img = io::read_pgm(open(&input)?).map_err(|e| Failure::at(&input, e))?;
            let out = timed(|| crate::gray_thinning(&img));
            save(&output, |w| io::write_pgm(&out, PnmEncoding::Raw, w))
        }
        Command::Lut { action: LutAction::Dump { conn } } => {
            let conn = match conn {
                Conn::Four => Connectivity2::Four,
                Conn::Eight => Connectivity2::Eight,
            };
            let lut = build_simple_lut_2d(conn);
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(lut.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure { code: EXIT_IO, message: format!("stdout: {e}") })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("topothin: {}", f.message);
            f.code
        }
    }
}
