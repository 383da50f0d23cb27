//! Scenario-driven experiment runner over the `hblab` library.
//!
//! A scenario is a JSON document naming an experiment kind, a symbol and
//! its numerical parameters. Running it yields a [`Report`]: a CSV table
//! whose bytes depend only on the resolved scenario and the tool version,
//! plus a JSON side file echoing the resolved scenario, fitted rates,
//! warnings and wall time.

pub mod error;
pub mod run;
pub mod scenario;
pub mod suite;
pub mod table;

pub use error::{CliError, CliResult};
pub use run::{run_scenario, write_report, Metric, Report, TOOL, VERSION};
pub use scenario::{Kind, Params, Scenario};
pub use suite::{run_suite, scenario_files, EntryStatus, SuiteEntry, SuiteReport};
pub use table::{Cell, Table};
