use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ispace_core::fixtures;
use ispace_core::report::{run, Check, ErrorReport, Format, RunConfig};
use ispace_core::{ComplementStrategy, Error};

#[derive(Parser)]
#[command(name = "ispace", version, about = "Exact verification of intersection space duality on triangulated pseudomanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the models of an input and run the requested checks.
    Verify {
        /// JSON file, or the name of a bundled example.
        input: String,
        /// zero, top, lower-middle, upper-middle, or an explicit list such as `0,1`.
        #[arg(long, default_value = "zero")]
        perversity: String,
        /// Perversity of the right-hand model; complementary by default.
        #[arg(long)]
        dual_perversity: Option<String>,
        #[arg(long, default_value = "lex")]
        strategy: String,
        /// Comma-separated subset of model, duality, ladder, lefschetz,
        /// truncated-duality, oracle, properties; or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bundled example decompositions.
    Examples {
        #[command(subcommand)]
        command: ExamplesCommand,
    },
}

#[derive(Subcommand)]
enum ExamplesCommand {
    List,
    Show { name: String },
}

fn verify(
    input: String,
    perversity: String,
    dual_perversity: Option<String>,
    strategy: &str,
    checks: &str,
    format: Format,
    seed: u64,
) -> Result<(String, bool), Error> {
    let mut config = RunConfig::new(input, perversity);
    config.dual_perversity = dual_perversity;
    config.strategy = strategy.parse::<ComplementStrategy>().map_err(Error::Config)?;
    config.checks = Check::parse_list(checks)?;
    config.seed = seed;
    let report = run(&config)?;
    Ok((report.render(format), report.pass))
}

fn list_examples() -> String {
    let mut out = format!("{:<20} {:>2} {:>7}  {:<12} {:<14} {}\n", "name", "n", "facets", "link", "exterior", "valid");
    for e in fixtures::catalog() {
        out.push_str(&format!(
            "{:<20} {:>2} {:>7}  {:<12} {:<14} {}\n",
            e.name, e.n, e.facets, e.link, e.exterior, e.valid
        ));
    }
    out
}

fn report_error(e: &Error, format: Format) -> ExitCode {
    if format == Format::Json {
        println!("{}", ErrorReport::new(e).to_json());
    }
    eprintln!("error[{}]: {e}", e.code());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { input, perversity, dual_perversity, strategy, checks, format, seed } => {
            let format = match format.parse::<Format>() {
                Ok(f) => f,
                Err(e) => return report_error(&e, Format::Text),
            };
            match verify(input, perversity, dual_perversity, &strategy, &checks, format, seed) {
                Ok((text, pass)) => {
                    print!("{text}");
                    if pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
                }
                Err(e) => report_error(&e, format),
            }
        }
        Command::Examples { command: ExamplesCommand::List } => {
            print!("{}", list_examples());
            ExitCode::SUCCESS
        }
        Command::Examples { command: ExamplesCommand::Show { name } } => match fixtures::document_by_name(&name) {
            Some(doc) => {
                println!("{}", doc.to_json_pretty());
                ExitCode::SUCCESS
            }
            None => report_error(&Error::Io(format!("no bundled example named `{name}`")), Format::Text),
        },
    }
}
