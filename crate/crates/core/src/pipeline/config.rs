//! Run configuration: a flat TOML document whose keys match the `run` flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::corpus::CorpusFilter;
use crate::disambiguation::DisambiguationConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TaggerMode {
    #[default]
    Baseline,
    Import,
}

impl std::str::FromStr for TaggerMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "baseline" => Ok(TaggerMode::Baseline),
            "import" => Ok(TaggerMode::Import),
            other => Err(format!("unknown tagger mode {other:?} (expected baseline or import)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Glob pattern(s) for field-tagged input files.
    pub corpus: Vec<String>,
    pub fund_gazetteer: Option<PathBuf>,
    pub uni_gazetteer: Option<PathBuf>,
    pub cor_gazetteer: Option<PathBuf>,
    pub overrides: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub domain_map: Option<PathBuf>,
    /// External tag file, read when `tagger = "import"`.
    pub tags: Option<PathBuf>,
    pub report_dir: PathBuf,

    pub year_min: i32,
    pub year_max: i32,
    pub languages: Vec<String>,
    pub doc_types: Vec<String>,
    pub sample_n: Option<usize>,
    pub seed: Option<u64>,

    pub tagger: TaggerMode,
    pub name_threshold: u8,
    pub abbrev_threshold: u8,
    pub cor_partial_threshold: u8,
    pub misspell_threshold: u8,
    pub min_chars: usize,

    pub bootstrap_resamples: usize,
    pub top_k: usize,
    /// Fail on any rejected record or span instead of skipping it.
    pub strict: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let d = DisambiguationConfig::default();
        PipelineConfig {
            corpus: Vec::new(),
            fund_gazetteer: None,
            uni_gazetteer: None,
            cor_gazetteer: None,
            overrides: None,
            abbreviations: None,
            domain_map: None,
            tags: None,
            report_dir: PathBuf::from("report"),
            year_min: 2014,
            year_max: 2019,
            languages: vec!["English".into()],
            doc_types: vec!["Article".into(), "Review".into()],
            sample_n: None,
            seed: None,
            tagger: TaggerMode::Baseline,
            name_threshold: d.name_threshold,
            abbrev_threshold: d.abbrev_threshold,
            cor_partial_threshold: d.cor_partial_threshold,
            misspell_threshold: d.misspell_threshold,
            min_chars: d.min_chars,
            bootstrap_resamples: 1000,
            top_k: 30,
            strict: false,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml_str(s: &str) -> Result<Self, PipelineError> {
        toml::from_str(s).map_err(|e| PipelineError::config(format!("config: {e}")))
    }

    /// Load a config file. Relative paths inside it are taken relative to the
    /// file's directory.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::config(format!("config {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml_str(&text)?;
        if let Some(base) = path.parent() {
            cfg.rebase(base);
        }
        Ok(cfg)
    }

    fn rebase(&mut self, base: &Path) {
        let join = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [
            &mut self.fund_gazetteer,
            &mut self.uni_gazetteer,
            &mut self.cor_gazetteer,
            &mut self.overrides,
            &mut self.abbreviations,
            &mut self.domain_map,
            &mut self.tags,
        ]
        .into_iter()
        .flatten()
        {
            join(p);
        }
        join(&mut self.report_dir);
        for g in &mut self.corpus {
            if Path::new(g.as_str()).is_relative() {
                *g = base.join(g.as_str()).to_string_lossy().into_owned();
            }
        }
    }

    pub fn disambiguation(&self) -> DisambiguationConfig {
        DisambiguationConfig {
            name_threshold: self.name_threshold,
            abbrev_threshold: self.abbrev_threshold,
            cor_partial_threshold: self.cor_partial_threshold,
            misspell_threshold: self.misspell_threshold,
            min_chars: self.min_chars,
        }
    }

    pub fn filter(&self) -> Result<CorpusFilter, PipelineError> {
        CorpusFilter::new(self.year_min, self.year_max, &self.languages, &self.doc_types)
            .map_err(|e| PipelineError::config(e.to_string()))
    }

    /// Check value ranges and that every configured input exists.
    pub fn validate(&self) -> Result<(), PipelineError> {
        for (name, v) in [
            ("name_threshold", self.name_threshold),
            ("abbrev_threshold", self.abbrev_threshold),
            ("cor_partial_threshold", self.cor_partial_threshold),
            ("misspell_threshold", self.misspell_threshold),
        ] {
            if v > 100 {
                return Err(PipelineError::config(format!("{name} = {v} is outside [0, 100]")));
            }
        }
        self.filter()?;
        if self.sample_n == Some(0) {
            return Err(PipelineError::config("sample_n must be positive"));
        }
        if self.seed.is_none() && (self.sample_n.is_some() || self.bootstrap_resamples > 0) {
            return Err(PipelineError::config(
                "seed is required when sampling or bootstrap resampling is enabled",
            ));
        }
        if self.top_k == 0 {
            return Err(PipelineError::config("top_k must be at least 1"));
        }
        if self.corpus.is_empty() {
            return Err(PipelineError::config("no corpus input configured"));
        }
        if self.tagger == TaggerMode::Import && self.tags.is_none() {
            return Err(PipelineError::config("tagger = \"import\" needs a tags file"));
        }
        for (name, p) in self.input_files() {
            if !p.is_file() {
                return Err(PipelineError::config(format!("{name} {} does not exist", p.display())));
            }
        }
        Ok(())
    }

    /// Configured single-file inputs (everything except the corpus glob).
    pub fn input_files(&self) -> Vec<(&'static str, &Path)> {
        let mut v = Vec::new();
        for (name, p) in [
            ("fund_gazetteer", &self.fund_gazetteer),
            ("uni_gazetteer", &self.uni_gazetteer),
            ("cor_gazetteer", &self.cor_gazetteer),
            ("overrides", &self.overrides),
            ("abbreviations", &self.abbreviations),
            ("domain_map", &self.domain_map),
        ] {
            if let Some(p) = p {
                v.push((name, p.as_path()));
            }
        }
        if self.tagger == TaggerMode::Import {
            if let Some(p) = &self.tags {
                v.push(("tags", p.as_path()));
            }
        }
        v
    }
}
