use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use plocal::category::parse_category;
use plocal::homology::{nerve_complex, DEFAULT_BUDGET};
use plocal::input::{catalog, parse_cycles_auto, GroupSpec};
use plocal::pipeline::{analyze, Options, VERDICTS};
use plocal::report::{to_json, to_text};
use plocal::{Error, Prime};

#[derive(Parser)]
#[command(name = "plocal", version, about = "p-local category checks for finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis of a group at a prime.
    Analyze {
        /// e.g. "sym:4", "dih:8*cyc:3", "perm:4:(1 2 3 4);(1 3)".
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_limit_degree: usize,
        #[arg(long, default_value_t = 2)]
        cohomology_index_max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// One object per conjugacy class (`--skeletal false` to use all).
        #[arg(long, default_value_t = true, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
        skeletal: bool,
        /// Comma-separated verdict names; all when omitted.
        #[arg(long, value_delimiter = ',')]
        check: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        no_timings: bool,
        #[arg(long, default_value_t = plocal::group::DEFAULT_ORDER_BOUND)]
        order_bound: usize,
    },
    /// Parse a product of cycles and print it in disjoint cycle form.
    ParseCheck { cycles: String },
    /// List the built-in groups.
    Catalog,
    /// List the verdict names accepted by `--check`.
    Checks,
    /// Homology of the nerve of a category given in the text format.
    Nerve {
        file: std::path::PathBuf,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Print the chain complex instead of its homology.
        #[arg(long)]
        dump: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Analyze {
            group,
            prime,
            max_degree,
            max_limit_degree,
            cohomology_index_max,
            budget,
            skeletal,
            check,
            format,
            no_timings,
            order_bound,
        } => {
            let prime = Prime::new(prime)?;
            let spec = GroupSpec::parse(&group)?;
            let options = Options {
                max_degree,
                max_limit_degree,
                cohomology_index_max,
                budget,
                skeletal,
                checks: check,
            };
            options.validate()?;
            let g = spec.build_bounded(order_bound)?;
            let mut report = analyze(&g, &spec.to_string(), prime, &options);
            if no_timings {
                report = report.without_timings();
            }
            match format {
                Format::Json => println!("{}", to_json(&report)),
                Format::Text => print!("{}", to_text(&report)),
            }
            Ok(report.exit_code() as u8)
        }
        Command::ParseCheck { cycles } => {
            let p = parse_cycles_auto(&cycles)?;
            println!("{p}");
            Ok(0)
        }
        Command::Catalog => {
            for e in catalog() {
                println!("{:<8} {:<14} order {}", e.name, e.spec, e.order);
            }
            Ok(0)
        }
        Command::Checks => {
            for v in VERDICTS {
                println!("{v}");
            }
            Ok(0)
        }
        Command::Nerve {
            file,
            prime,
            max_degree,
            budget,
            dump,
        } => {
            let prime = Prime::new(prime)?;
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Invalid(format!("{}: {e}", file.display())))?;
            let category = Arc::new(parse_category(&text)?);
            let n = nerve_complex(&category, prime, max_degree, budget)?;
            if dump {
                print!("{}", n.complex.dump());
            } else {
                let h = n.complex.homology();
                println!("chains   {:?}", n.complex.dims());
                println!("homology {:?} (d < {max_degree})", h.dims);
            }
            Ok(0)
        }
    }
}
