use std::fmt;

/// Pipeline stage an error is reported against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Ingest,
    Synth,
    Embed,
    Select,
    Fit,
    Model,
    Modal,
    Forecast,
    Output,
}

impl Stage {
    pub fn label(self) -> &'static str {
        match self {
            Stage::Config => "config",
            Stage::Ingest => "ingest",
            Stage::Synth => "synth",
            Stage::Embed => "embed",
            Stage::Select => "select",
            Stage::Fit => "fit",
            Stage::Model => "model",
            Stage::Modal => "modal",
            Stage::Forecast => "forecast",
            Stage::Output => "output",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("[{stage}] {source:#}")]
pub struct StageError {
    pub stage: Stage,
    pub source: anyhow::Error,
}

pub type CliResult<T> = std::result::Result<T, StageError>;

/// Attaches a stage label to any error.
pub trait AtStage<T> {
    fn at(self, stage: Stage) -> CliResult<T>;
}

impl<T, E: Into<anyhow::Error>> AtStage<T> for std::result::Result<T, E> {
    fn at(self, stage: Stage) -> CliResult<T> {
        self.map_err(|e| StageError {
            stage,
            source: e.into(),
        })
    }
}

pub fn fail<T>(stage: Stage, message: impl fmt::Display) -> CliResult<T> {
    Err(StageError {
        stage,
        source: anyhow::anyhow!("{message}"),
    })
}
