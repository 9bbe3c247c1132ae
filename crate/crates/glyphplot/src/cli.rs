//! Command-line orchestration: load, validate, lay out, render, write.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use glyphplot_core::model::{extract_compositions, validate_spec, JitterSpec, ValidationIssue};
use glyphplot_core::render::RenderOptions;
use glyphplot_core::scene::build_scene;

use crate::diagnostics::{Diagnostic, Severity};
use crate::emit::{parallel_enabled, render_document};
use crate::geojson::parse_geojson;
use crate::spec_file::{load_spec, parse_projection};
use crate::table::read_table_file;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "glyphplot",
    version,
    about = "Render pie-glyph scatterplots and maps to SVG",
    long_about = "Render pie-glyph scatterplots and maps to SVG.\n\n\
                  Flags override values from the spec file, which override built-in defaults."
)]
struct Args {
    /// Input CSV (header row required)
    #[arg(long, value_name = "CSV")]
    data: PathBuf,
    /// JSON plot spec
    #[arg(long, value_name = "JSON")]
    spec: PathBuf,
    /// Output SVG path
    #[arg(long, value_name = "SVG")]
    out: PathBuf,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    /// equirectangular, mercator or lambert_azimuthal_equal_area
    #[arg(long)]
    projection: Option<String>,
    /// Attach hover tooltips with raw values and percentages
    #[arg(long)]
    interactive: bool,
    /// Jitter seed; enables jitter with the default amount if the spec has none
    #[arg(long)]
    seed: Option<u64>,
    /// Print progress information to stderr
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub data_path: PathBuf,
    pub spec_path: PathBuf,
    pub out_path: PathBuf,
    pub width: Option<f64>,
    pub height: Option<f64>,
    pub projection: Option<String>,
    /// `true` forces tooltips on; `false` defers to the spec.
    pub interactive: bool,
    pub seed: Option<u64>,
    pub verbose: bool,
}

impl RunConfig {
    pub fn new(
        data: impl Into<PathBuf>,
        spec: impl Into<PathBuf>,
        out: impl Into<PathBuf>,
    ) -> Self {
        RunConfig {
            data_path: data.into(),
            spec_path: spec.into(),
            out_path: out.into(),
            width: None,
            height: None,
            projection: None,
            interactive: false,
            seed: None,
            verbose: false,
        }
    }
}

/// Argument parsing failure, or a `--help`/`--version` request.
#[derive(Debug)]
pub struct UsageError {
    pub message: String,
    pub exit_code: i32,
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        exit_code: match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
            _ => EXIT_USAGE,
        },
    })?;
    Ok(RunConfig {
        data_path: args.data,
        spec_path: args.spec,
        out_path: args.out,
        width: args.width,
        height: args.height,
        projection: args.projection,
        interactive: args.interactive,
        seed: args.seed,
        verbose: args.verbose,
    })
}

struct Reporter<'a> {
    sink: &'a mut dyn Write,
    verbose: bool,
}

impl Reporter<'_> {
    fn emit(&mut self, d: &Diagnostic) {
        if d.severity == Severity::Info && !self.verbose {
            return;
        }
        let _ = writeln!(self.sink, "{}", d);
    }

    fn fail(&mut self, d: Diagnostic) -> i32 {
        self.emit(&d);
        EXIT_FAILURE
    }

    fn info(&mut self, file: &Path, message: String) {
        self.emit(&Diagnostic {
            severity: Severity::Info,
            file: file.display().to_string(),
            row: None,
            message,
        });
    }
}

fn name(p: &Path) -> String {
    p.display().to_string()
}

/// Runs one render. Diagnostics go to `stderr`; returns the process exit code.
pub fn run(config: &RunConfig, stderr: &mut dyn Write) -> i32 {
    let mut rep = Reporter {
        sink: stderr,
        verbose: config.verbose,
    };
    let spec_name = name(&config.spec_path);
    let data_name = name(&config.data_path);

    let loaded = match load_spec(&config.spec_path) {
        Ok(l) => l,
        Err(e) => return rep.fail(Diagnostic::error(&spec_name, e.to_string())),
    };
    let mut spec = loaded.spec;
    if let Some(w) = config.width {
        spec.width = w;
    }
    if let Some(h) = config.height {
        spec.height = h;
    }
    if let Some(p) = &config.projection {
        match parse_projection(p) {
            Ok(kind) => spec.projection = Some(kind),
            Err(e) => return rep.fail(Diagnostic::error("--projection", e.to_string())),
        }
    }
    if config.interactive {
        spec.interactive = true;
    }
    if let Some(seed) = config.seed {
        match &mut spec.jitter {
            Some(j) => j.seed = seed,
            None => spec.jitter = Some(JitterSpec { amount: None, seed }),
        }
    }

    let table = match read_table_file(&config.data_path) {
        Ok(t) => t,
        Err(e) => {
            let mut d = Diagnostic::error(&data_name, e.to_string());
            d.row = e.row();
            return rep.fail(d);
        }
    };
    rep.info(
        &config.data_path,
        format!("{} rows, {} columns", table.len(), table.columns().len()),
    );

    let report = validate_spec(&spec, &table);
    if !report.is_empty() {
        for issue in &report.issues {
            let d = match issue {
                ValidationIssue::MissingColumn(c) => Diagnostic::error(
                    &spec_name,
                    format!("column '{}' not found in {}", c, data_name),
                ),
                ValidationIssue::CoordinateOutOfRange { row, column, value } => Diagnostic::error(
                    &data_name,
                    format!(
                        "{} in column '{}' is outside the valid degree range",
                        value, column
                    ),
                )
                .at_row(row + 1),
                _ => Diagnostic::error(&spec_name, issue.to_string()),
            };
            rep.emit(&d);
        }
        return EXIT_FAILURE;
    }

    let mut layer = None;
    if let Some(src) = &spec.map_source {
        let text = match std::fs::read_to_string(src) {
            Ok(t) => t,
            Err(e) => {
                return rep.fail(Diagnostic::error(
                    &spec_name,
                    format!("MapSourceNotFound: cannot read map source '{}': {}", src, e),
                ))
            }
        };
        match parse_geojson(&text) {
            Ok(parsed) => {
                for note in &parsed.skipped {
                    rep.emit(&Diagnostic::warning(src.as_str(), note.as_str()));
                }
                let mut l = parsed.layer;
                if let Some(fill) = &loaded.map_fill {
                    l.fill = fill.clone();
                }
                if let Some(stroke) = &loaded.map_stroke {
                    l.stroke = stroke.clone();
                }
                layer = Some(l);
            }
            Err(e) => return rep.fail(Diagnostic::error(src.as_str(), e.to_string())),
        }
    }

    let extraction = match extract_compositions(&spec, &table) {
        Ok(e) => e,
        Err(errors) => {
            for e in &errors {
                rep.emit(&Diagnostic::error(&data_name, e.to_string()).at_row(e.row() + 1));
            }
            return EXIT_FAILURE;
        }
    };
    for skipped in &extraction.skipped {
        rep.emit(
            &Diagnostic::warning(&data_name, format!("{}; row skipped", skipped))
                .at_row(skipped.row() + 1),
        );
    }

    let scene = match build_scene(&spec, &extraction, layer.as_ref()) {
        Ok(s) => s,
        Err(e) => {
            let d = match &e {
                glyphplot_core::scene::SceneError::Glyph { row, error } => {
                    Diagnostic::error(&data_name, error.to_string()).at_row(row + 1)
                }
                _ => Diagnostic::error(&spec_name, e.to_string()),
            };
            return rep.fail(d);
        }
    };

    let opts = RenderOptions {
        interactive: spec.interactive,
    };
    let document = render_document(&scene, &opts, parallel_enabled());

    if let Err(e) = write_atomically(&config.out_path, document.as_bytes()) {
        return rep.fail(Diagnostic::error(
            name(&config.out_path),
            format!("cannot write output: {}", e),
        ));
    }
    rep.info(
        &config.out_path,
        format!(
            "wrote {} glyphs, {} categories, {} bytes",
            scene.glyph_count(),
            extraction.categories.len(),
            document.len()
        ),
    );
    EXIT_OK
}

/// Writes to a sibling temp file and renames it over `path`.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::Builder::new()
        .prefix(".glyphplot-")
        .suffix(".tmp")
        .tempfile_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_flags() {
        let c = parse_args([
            "glyphplot",
            "--data",
            "d.csv",
            "--spec",
            "s.json",
            "--out",
            "p.svg",
        ])
        .unwrap();
        assert_eq!(c, RunConfig::new("d.csv", "s.json", "p.svg"));
    }

    #[test]
    fn missing_out_is_usage_error() {
        let e = parse_args(["glyphplot", "--data", "d.csv", "--spec", "s.json"]).unwrap_err();
        assert_eq!(e.exit_code, EXIT_USAGE);
        assert!(e.message.contains("--out"));
    }

    #[test]
    fn overrides() {
        let c = parse_args([
            "glyphplot",
            "--data",
            "d.csv",
            "--spec",
            "s.json",
            "--out",
            "p.svg",
            "--interactive",
            "--width",
            "1800",
            "--height",
            "300",
            "--projection",
            "mercator",
            "--seed",
            "9",
            "--verbose",
        ])
        .unwrap();
        assert!(c.interactive && c.verbose);
        assert_eq!((c.width, c.height), (Some(1800.0), Some(300.0)));
        assert_eq!(c.projection.as_deref(), Some("mercator"));
        assert_eq!(c.seed, Some(9));
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(
            parse_args(["glyphplot", "--help"]).unwrap_err().exit_code,
            EXIT_OK
        );
    }
}
