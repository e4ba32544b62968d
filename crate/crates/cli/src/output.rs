//! Files and report lines produced by a run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use lcbv_core::fieldcore::io::fmt17;

use crate::error::CliError;

/// Everything a run emits. The report is written as `report.csv` and
/// echoed to stdout.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub files: BTreeMap<String, String>,
    pub report: Vec<(String, String)>,
}

impl Output {
    pub fn num(&mut self, key: &str, x: f64) {
        self.report.push((key.to_string(), fmt17(x + 0.0)));
    }

    pub fn text(&mut self, key: &str, v: impl ToString) {
        self.report.push((key.to_string(), v.to_string()));
    }

    pub fn file(&mut self, name: &str, contents: String) {
        self.files.insert(name.to_string(), contents);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.report.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key)?.parse().ok()
    }

    pub fn report_csv(&self) -> String {
        let mut s = String::from("quantity,value\n");
        for (k, v) in &self.report {
            let _ = writeln!(s, "{k},{v}");
        }
        s
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)?;
        for (name, contents) in &self.files {
            std::fs::write(dir.join(name), contents)?;
        }
        std::fs::write(dir.join("report.csv"), self.report_csv())?;
        Ok(())
    }
}

/// CSV table with a header row and 17-digit reals.
pub struct Table {
    text: String,
    width: usize,
}

pub enum Cell {
    F(f64),
    I(i64),
    S(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::I(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::S(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::S(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::S(x.to_string())
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { text: header.join(",") + "\n", width: header.len() }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        assert_eq!(cells.len(), self.width, "row width");
        let parts: Vec<String> = cells
            .into_iter()
            .map(|c| match c {
                Cell::F(x) => fmt17(x),
                Cell::I(i) => i.to_string(),
                Cell::S(s) => s,
            })
            .collect();
        self.text.push_str(&parts.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::output::Cell::from($x)),*] };
}
