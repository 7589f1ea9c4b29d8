//! Stage functions shared by the command-line tool, the report writer and the
//! end-to-end `run`.

mod config;
mod report;
mod run;
mod stages;

pub use config::{PipelineConfig, TaggerMode};
pub use report::{write_report, AssociationTest};
pub use run::{run_pipeline, InputFile, Manifest, RunCounts, RunStatus};
pub use stages::{
    analyze, expand_inputs, filter_short_spans, import_tags, ingest, load_abbreviations, load_domain_map,
    load_gazetteer, load_overrides, read_corpus_file, read_entities_file, read_tags_file, sha256_file,
    tag_baseline, AnalysisReport, IngestCounts, IngestOutcome,
};

use std::fmt;

/// Failure class; each maps to a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Config,
    Parse,
    Validation,
    Statistics,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Io => 1,
            ErrorKind::Config => 2,
            ErrorKind::Parse => 3,
            ErrorKind::Validation => 4,
            ErrorKind::Statistics => 5,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Io => "i/o error",
            ErrorKind::Config => "configuration error",
            ErrorKind::Parse => "parse error",
            ErrorKind::Validation => "validation error",
            ErrorKind::Statistics => "statistics error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineError {
    pub kind: ErrorKind,
    pub stage: Option<&'static str>,
    pub messages: Vec<String>,
}

impl PipelineError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        PipelineError { kind, stage: None, messages: vec![message.into()] }
    }

    pub fn many(kind: ErrorKind, messages: Vec<String>) -> Self {
        PipelineError { kind, stage: None, messages }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Config, message)
    }

    pub fn io(path: &std::path::Path, e: impl fmt::Display) -> Self {
        Self::new(ErrorKind::Io, format!("{}: {e}", path.display()))
    }

    pub fn in_stage(mut self, stage: &'static str) -> Self {
        self.stage.get_or_insert(stage);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.stage {
            write!(f, "[{s}] ")?;
        }
        write!(f, "{}", self.kind.as_str())?;
        match self.messages.as_slice() {
            [] => Ok(()),
            [one] => write!(f, ": {one}"),
            many => {
                write!(f, " ({} problems)", many.len())?;
                for m in many {
                    write!(f, "\n  {m}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for PipelineError {}
