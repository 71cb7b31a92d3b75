//! CSV with `#` metadata comments. Floats are written with 12 significant
//! digits so identical inputs give byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use cra_core::ModelParams;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Table {
    meta: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    trailer: Vec<String>,
}

impl Table {
    pub fn new(command: &str, header: &[&str]) -> Self {
        Self {
            meta: vec![format!("cra {VERSION} {command}")],
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            trailer: Vec::new(),
        }
    }

    pub fn meta(&mut self, line: impl Into<String>) -> &mut Self {
        self.meta.push(line.into());
        self
    }

    pub fn params(&mut self, p: &ModelParams) -> &mut Self {
        self.meta(format!(
            "omega_c={} Omega={} J={} g0={} g1={}",
            num(p.omega_c()),
            num(p.omega()),
            num(p.hopping()),
            num(p.g0()),
            num(p.g1())
        ))
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn trailer(&mut self, line: impl Into<String>) {
        self.trailer.push(line.into());
    }

    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        for m in &self.meta {
            writeln!(w, "# {m}")?;
        }
        writeln!(w, "{}", self.header.join(","))?;
        for r in &self.rows {
            writeln!(w, "{}", r.join(","))?;
        }
        for t in &self.trailer {
            writeln!(w, "# {t}")?;
        }
        Ok(())
    }
}

/// Write `render` to `path`, or to standard output.
pub fn emit(
    path: Option<&Path>,
    render: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            render(&mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            render(&mut w)?;
            w.flush()
        }
    }
}

impl Table {
    pub fn emit(&self, path: Option<&Path>) -> io::Result<()> {
        emit(path, |w| {
            let mut w = w;
            self.write_to(&mut w)
        })
    }
}
