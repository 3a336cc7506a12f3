//! File formats and command-line pipeline around `phase-markov-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod model_file;

pub use config::{ConfigLayer, RunConfig, SparsifyArg};
pub use error::{Stage, StageError};
pub use io::{load_csv, write_telemetry, IngestError};
pub use model_file::{load_model, save_model, LoadedModel, ModelFile, ModelMeta};
