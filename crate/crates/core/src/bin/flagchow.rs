use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flagchow::report::{
    cmd_chern, cmd_present, cmd_present_subsets, cmd_table, cmd_verify, Check, Report, Space,
};

#[derive(Parser)]
#[command(name = "flagchow", version, about = "Exact Chow rings of symplectic flag varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Record wall time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Siegel,
    Levi,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum BundleArg {
    Tangent,
    Normal,
    Hodge,
    HodgeRepresentation,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Theorem,
    ChernVanishing,
    SymmLemma,
    Kernel,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Relations, graded dimensions and basis of a presented Chow ring.
    Present {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = SpaceArg::Siegel)]
        space: SpaceArg,
        /// Group subset as simple roots or 1-based indices, e.g. "1,2,3".
        /// Overrides --space together with --parabolic.
        #[arg(long, requires = "parabolic")]
        group: Option<String>,
        #[arg(long, requires = "group")]
        parabolic: Option<String>,
    },
    /// Weights and Chern classes of a homogeneous bundle.
    Chern {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum)]
        bundle: BundleArg,
    },
    /// Run one or all of the checks at rank g.
    Verify {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::All)]
        which: WhichArg,
    },
    /// Tabulate a_{J,g} for g = 2..gmax.
    Table {
        #[arg(long)]
        gmax: usize,
    },
}

fn run(command: Command) -> Report {
    match command {
        Command::Present {
            g,
            space,
            group,
            parabolic,
        } => match (group, parabolic) {
            (Some(k), Some(m)) => cmd_present_subsets(g, &k, &m),
            _ => cmd_present(
                g,
                match space {
                    SpaceArg::Siegel => Space::Siegel,
                    SpaceArg::Levi => Space::Levi,
                    SpaceArg::Full => Space::Full,
                },
            ),
        },
        Command::Chern { g, bundle } => cmd_chern(
            g,
            match bundle {
                BundleArg::Tangent => "tangent",
                BundleArg::Normal => "normal",
                BundleArg::Hodge => "hodge",
                BundleArg::HodgeRepresentation => "hodge-representation",
            },
        ),
        Command::Verify { g, which } => cmd_verify(
            g,
            match which {
                WhichArg::Theorem => Check::Theorem,
                WhichArg::ChernVanishing => Check::ChernVanishing,
                WhichArg::SymmLemma => Check::SymmLemma,
                WhichArg::Kernel => Check::Kernel,
                WhichArg::All => Check::All,
            },
        ),
        Command::Table { gmax } => cmd_table(gmax),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = if cli.timing {
        let command = cli.command;
        Report::timed(move || run(command))
    } else {
        run(cli.command)
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.status.exit_code() as u8)
}
