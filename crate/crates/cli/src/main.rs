use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use viscowave::report::format::Row;
use viscowave::report::{
    dispersion_curve, masses, metadata, reflection_curve, simulation_row, table_metadata, table_rows, write_csv,
    write_json_array, write_json_lines, ReportRow,
};
use viscowave::simulator::{run, write_series_csv, Boundary, SimConfig, DEFAULT_CYCLES};
use viscowave::{Error, MassModel, WaveSetting};

#[derive(Parser)]
#[command(name = "viscowave", version, about = "Dispersion and spurious-reflection analysis of 1D viscoelastic FE meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MassChoice {
    Consistent,
    Lumped,
    Both,
}

impl MassChoice {
    fn models(self) -> Vec<MassModel> {
        masses(match self {
            MassChoice::Consistent => Some(MassModel::Consistent),
            MassChoice::Lumped => Some(MassModel::Lumped),
            MassChoice::Both => None,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Velocity and damping errors of a uniform mesh.
    Dispersion {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, value_enum, default_value_t = MassChoice::Both)]
        mass: MassChoice,
    },
    /// Spurious reflection at an element-size jump by a factor alpha.
    Reflect {
        #[arg(long)]
        a: f64,
        /// Left-mesh parameter; defaults to `a`.
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        gamma: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = MassChoice::Both)]
        mass: MassChoice,
    },
    /// Regenerate a published table with the printed values alongside.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Time-domain tone-burst run compared with the closed form.
    Simulate(SimulateArgs),
    /// Plot-ready sweeps.
    Curve {
        #[command(subcommand)]
        kind: CurveKind,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 50.0)]
    a: f64,
    /// Defaults to `a`.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = MassChoice::Consistent)]
    mass: MassChoice,
    #[arg(long, default_value_t = DEFAULT_CYCLES)]
    cycles: usize,
    /// Override the number of time steps chosen from the layout.
    #[arg(long)]
    total_steps: Option<usize>,
    /// Replace the fixed far end by a damping ramp of this many elements.
    #[arg(long)]
    pad: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pad_gamma: f64,
    /// Dump the probe displacement series as CSV.
    #[arg(long)]
    series: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CurveKind {
    /// Errors against a (geometric spacing) at fixed Courant number b/a.
    Dispersion {
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        courant: f64,
        #[arg(long, default_value_t = 5.0)]
        a_min: f64,
        #[arg(long, default_value_t = 200.0)]
        a_max: f64,
        #[arg(long, default_value_t = 40)]
        points: usize,
        #[arg(long, value_enum, default_value_t = MassChoice::Both)]
        mass: MassChoice,
    },
    /// Reflection against alpha (linear spacing).
    Reflection {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        gamma: f64,
        #[arg(long, default_value_t = 0.5)]
        alpha_min: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha_max: f64,
        #[arg(long, default_value_t = 31)]
        points: usize,
        #[arg(long, value_enum, default_value_t = MassChoice::Both)]
        mass: MassChoice,
    },
}

#[derive(Debug)]
enum Failure {
    Model(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Model(Error::MeasurementInvalid(_)) => 3,
            Failure::Model(_) => 2,
            Failure::Io(_) => 1,
        }
    }
}

struct Output {
    rows: Vec<Row>,
    metadata: String,
    /// Tables are emitted as one JSON array, everything else as JSON lines.
    array: bool,
}

fn point_rows(rows: Vec<ReportRow>) -> Vec<Row> {
    rows.iter().map(ReportRow::to_fields).collect()
}

fn execute(command: &Command) -> Result<Output, Failure> {
    let out = match command {
        Command::Dispersion { a, b, gamma, mass } => {
            let rows = mass
                .models()
                .into_iter()
                .map(|m| ReportRow::dispersion(&WaveSetting::new(*a, *b, *gamma, m)?))
                .collect::<Result<Vec<_>, _>>()?;
            Output {
                rows: point_rows(rows),
                metadata: metadata("dispersion"),
                array: false,
            }
        }
        Command::Reflect {
            a,
            b,
            gamma,
            alpha,
            mass,
        } => {
            let b = b.unwrap_or(*a);
            let rows = mass
                .models()
                .into_iter()
                .map(|m| ReportRow::reflection(&WaveSetting::with_alpha(*a, b, *gamma, m, *alpha)?))
                .collect::<Result<Vec<_>, _>>()?;
            Output {
                rows: point_rows(rows),
                metadata: metadata("reflection; right mesh parameter b/alpha"),
                array: false,
            }
        }
        Command::Table { which } => Output {
            rows: table_rows(*which)?,
            metadata: table_metadata(*which),
            array: true,
        },
        Command::Simulate(args) => simulate(args)?,
        Command::Curve { kind } => match kind {
            CurveKind::Dispersion {
                gamma,
                courant,
                a_min,
                a_max,
                points,
                mass,
            } => Output {
                rows: point_rows(dispersion_curve(*gamma, *courant, *a_min, *a_max, *points, &mass.models())?),
                metadata: metadata(&format!("dispersion curve; b = {courant}*a")),
                array: false,
            },
            CurveKind::Reflection {
                a,
                b,
                gamma,
                alpha_min,
                alpha_max,
                points,
                mass,
            } => Output {
                rows: point_rows(reflection_curve(
                    *a,
                    b.unwrap_or(*a),
                    *gamma,
                    *alpha_min,
                    *alpha_max,
                    *points,
                    &mass.models(),
                )?),
                metadata: metadata("reflection curve; right mesh parameter b/alpha"),
                array: false,
            },
        },
    };
    Ok(out)
}

fn simulate(args: &SimulateArgs) -> Result<Output, Failure> {
    let b = args.b.unwrap_or(args.a);
    let mut rows = Vec::new();
    for m in args.mass.models() {
        let s = WaveSetting::with_alpha(args.a, b, args.gamma, m, args.alpha)?;
        let (mesh, mut cfg) = if args.alpha == 1.0 {
            SimConfig::uniform(s, args.cycles)?
        } else {
            SimConfig::graded(s, args.cycles)?
        };
        if let Some(n) = args.total_steps {
            cfg.total_steps = n;
        }
        if let Some(elements) = args.pad {
            cfg.boundary = Boundary::AbsorbingPad {
                elements,
                max_gamma: args.pad_gamma,
            };
        }
        let rec = run(&mesh, &cfg)?;
        if let Some(path) = &args.series {
            let path = if args.mass.models().len() > 1 {
                path.with_extension(format!("{}.csv", m.name()))
            } else {
                path.clone()
            };
            let mut w = BufWriter::new(File::create(path)?);
            write_series_csv(&mut w, &cfg, &rec)?;
            w.flush()?;
        }
        rows.push(simulation_row(&mesh, &cfg, &rec)?);
    }
    Ok(Output {
        rows,
        metadata: metadata("time-domain run"),
        array: false,
    })
}

fn emit(out: &Output, format: Format, w: &mut dyn Write) -> io::Result<()> {
    match (format, out.array) {
        (Format::Csv, _) => write_csv(&mut *w, &out.metadata, &out.rows)?,
        (Format::Json, true) => write_json_array(&mut *w, &out.rows)?,
        (Format::Json, false) => write_json_lines(&mut *w, &out.rows)?,
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli.command).and_then(|out| {
        match &cli.out {
            Some(path) => emit(&out, cli.format, &mut BufWriter::new(File::create(path)?))?,
            None => emit(&out, cli.format, &mut io::stdout().lock())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Model(e) => eprintln!("viscowave: {e}"),
                Failure::Io(e) => eprintln!("viscowave: i/o error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
