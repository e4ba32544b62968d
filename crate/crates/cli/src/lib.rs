//! `lcbv` command-line front end: a registry of experiments, each a
//! subcommand with its own keys, sharing `--out`, `--seed` and `--config`.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Arg, ArgMatches, Command};

use config::{parse_config_text, RunConfig};
use error::CliError;
use experiments::{registry, Experiment};
use output::Output;

const COMMON: [&str; 3] = ["out", "seed", "config"];

pub fn command() -> Command {
    let mut cmd = Command::new("lcbv")
        .about("liquid crystal energies with jumps: checks and experiments")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for e in registry() {
        let mut sub = Command::new(e.name())
            .about(e.about())
            .arg(Arg::new("out").long("out").value_name("DIR").help("output directory"))
            .arg(Arg::new("seed").long("seed").value_name("N").help("random seed (default 0)"))
            .arg(Arg::new("config").long("config").value_name("FILE").help("flat key=value file"));
        for k in e.keys() {
            let mut help = k.help.to_string();
            if let Some(d) = k.default {
                help.push_str(&format!(" [default: {d}]"));
            }
            sub = sub.arg(
                Arg::new(k.name)
                    .long(k.name)
                    .num_args(k.nargs)
                    .allow_negative_numbers(true)
                    .value_name(if k.nargs > 1 { "V" } else { "VALUE" })
                    .help(help),
            );
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

fn flags(exp: &dyn Experiment, m: &ArgMatches) -> BTreeMap<String, String> {
    let names = COMMON.iter().copied().filter(|&n| n != "config").chain(exp.keys().iter().map(|k| k.name));
    let mut map = BTreeMap::new();
    for name in names {
        if let Some(vals) = m.get_many::<String>(name) {
            map.insert(name.to_string(), vals.cloned().collect::<Vec<_>>().join(" "));
        }
    }
    map
}

/// Parses arguments into the chosen experiment and its merged config.
pub fn parse<I, T>(args: I) -> Result<(Box<dyn Experiment>, RunConfig), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let m = command().try_get_matches_from(args)?;
    let (name, sub) = m.subcommand().expect("subcommand required");
    let exp = experiments::by_name(name).expect("registered");
    let file = match sub.get_one::<String>("config") {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| clap::Error::raw(clap::error::ErrorKind::Io, format!("cannot read {path}: {e}\n")))?;
            parse_config_text(&text).map_err(|e| clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("{e}\n")))?
        }
        None => BTreeMap::new(),
    };
    let cfg = RunConfig::build(name, exp.keys(), file, flags(exp.as_ref(), sub))
        .map_err(|e| clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("{e}\n")))?;
    Ok((exp, cfg))
}

/// Runs one experiment, writing its files when `out` is set. A failed check
/// still writes and returns the output; see [`Experiment::failure`].
pub fn execute(exp: &dyn Experiment, cfg: &RunConfig) -> Result<Output, CliError> {
    let out = exp.run(cfg)?;
    if let Some(dir) = &cfg.out {
        out.write_to(dir)?;
    }
    Ok(out)
}

/// Full CLI: parse, run, print the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (exp, cfg) = match parse(args) {
        Ok(x) => x,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(exp.as_ref(), &cfg) {
        Ok(out) => {
            print!("{}", out.report_csv());
            match exp.failure(&out) {
                Some(what) => {
                    let e = CliError::Check(what);
                    eprintln!("lcbv {}: {e}", cfg.command);
                    e.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            eprintln!("lcbv {}: {e}", cfg.command);
            e.exit_code()
        }
    }
}
