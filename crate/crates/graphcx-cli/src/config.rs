//! Run configuration: flags override the environment, which overrides an
//! optional TOML file, which overrides the defaults.

use std::path::Path;

use graphcx::cohomology::{Budget, ReportFormat};
use serde::Deserialize;

use crate::error::CliError;

pub const BUDGET_ENV: &str = "GRAPHCX_BUDGET_VERTICES";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

impl From<OutputFormat> for ReportFormat {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => ReportFormat::Text,
            OutputFormat::Machine => ReportFormat::Machine,
        }
    }
}

/// Fields of the configuration file; all optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    vertex_budget: Option<usize>,
    edge_budget: Option<usize>,
    parallelism: Option<usize>,
    output_format: Option<OutputFormat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub vertex_budget: usize,
    pub edge_budget: usize,
    pub parallelism: usize,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        let b = Budget::default();
        Config {
            vertex_budget: b.vertices,
            edge_budget: b.edges,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            output_format: OutputFormat::Text,
        }
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub vertex_budget: Option<usize>,
    pub edge_budget: Option<usize>,
    pub parallelism: Option<usize>,
    pub output_format: Option<OutputFormat>,
}

impl Config {
    pub fn resolve(file: Option<&Path>, env_vertices: Option<&str>, flags: &Overrides) -> Result<Config, CliError> {
        let mut c = Config::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let f: FileConfig = toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            c.vertex_budget = f.vertex_budget.unwrap_or(c.vertex_budget);
            c.edge_budget = f.edge_budget.unwrap_or(c.edge_budget);
            c.parallelism = f.parallelism.unwrap_or(c.parallelism);
            c.output_format = f.output_format.unwrap_or(c.output_format);
        }
        if let Some(v) = env_vertices {
            c.vertex_budget = v.trim().parse().map_err(|_| CliError::Parse(format!("{BUDGET_ENV}={v:?} is not a count")))?;
        }
        c.vertex_budget = flags.vertex_budget.unwrap_or(c.vertex_budget);
        c.edge_budget = flags.edge_budget.unwrap_or(c.edge_budget);
        c.parallelism = flags.parallelism.unwrap_or(c.parallelism);
        c.output_format = flags.output_format.unwrap_or(c.output_format);
        if c.vertex_budget == 0 || c.edge_budget == 0 || c.parallelism == 0 {
            return Err(CliError::Parse("budgets and parallelism must be at least 1".into()));
        }
        Ok(c)
    }

    pub fn budget(&self) -> Budget {
        Budget { vertices: self.vertex_budget, edges: self.edge_budget }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn precedence() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "vertex_budget = 5\nedge_budget = 6\nparallelism = 2\noutput_format = \"machine\"").unwrap();
        let c = Config::resolve(Some(f.path()), None, &Overrides::default()).unwrap();
        assert_eq!((c.vertex_budget, c.edge_budget, c.parallelism, c.output_format), (5, 6, 2, OutputFormat::Machine));
        let c = Config::resolve(Some(f.path()), Some("7"), &Overrides::default()).unwrap();
        assert_eq!(c.vertex_budget, 7);
        let flags = Overrides { vertex_budget: Some(8), output_format: Some(OutputFormat::Text), ..Overrides::default() };
        let c = Config::resolve(Some(f.path()), Some("7"), &flags).unwrap();
        assert_eq!((c.vertex_budget, c.output_format), (8, OutputFormat::Text));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::resolve(None, Some("many"), &Overrides::default()).is_err());
        let flags = Overrides { edge_budget: Some(0), ..Overrides::default() };
        assert!(Config::resolve(None, None, &flags).is_err());
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "colour = 1").unwrap();
        assert!(matches!(Config::resolve(Some(f.path()), None, &Overrides::default()), Err(CliError::Parse(_))));
    }
}
