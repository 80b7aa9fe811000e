//! Batch runs over a directory of problem files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Result, RzsError};
use crate::problem::parse_problem;
use crate::solver::{SolverConfig, Status};

/// A named solver configuration, one report column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub name: String,
    pub solver: SolverConfig,
}

impl BenchConfig {
    /// `rzs` or `plain` (must-play pruning off), on top of `base`.
    pub fn named(name: &str, base: &SolverConfig) -> Result<BenchConfig> {
        let solver = match name {
            "rzs" => SolverConfig {
                rzs: true,
                ..base.clone()
            },
            "plain" => base.plain(),
            other => return Err(RzsError::Parse(format!("unknown bench config `{other}`"))),
        };
        Ok(BenchConfig {
            name: name.to_string(),
            solver,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchCell {
    pub status: Status,
    pub nodes: u64,
    pub tt_hits: u64,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub problem: String,
    /// One cell per config, in config order.
    pub cells: Vec<BenchCell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchReport {
    pub configs: Vec<String>,
    pub rows: Vec<BenchRow>,
    /// Files that could not be read or parsed, with the reason.
    pub skipped: Vec<(String, String)>,
}

fn is_problem_file(p: &Path) -> bool {
    matches!(
        p.extension().and_then(|e| e.to_str()),
        Some("sgf") | Some("txt")
    )
}

pub fn problem_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| RzsError::Io {
        path: dir.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_problem_file(p))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(RzsError::Io {
            path: dir.display().to_string(),
            msg: "no problem files (*.sgf, *.txt)".into(),
        });
    }
    Ok(files)
}

/// Solves every problem in `dir` under every config. Problems run in
/// parallel; each solve is single-threaded.
pub fn run_bench(dir: &Path, configs: &[BenchConfig], pass_and: bool) -> Result<BenchReport> {
    let files = problem_files(dir)?;
    let results: Vec<std::result::Result<BenchRow, (String, String)>> = files
        .par_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let inst = std::fs::read_to_string(path)
                .map_err(|e| RzsError::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })
                .and_then(|t| parse_problem(&t))
                .and_then(|spec| spec.instance(pass_and))
                .map_err(|e| (name.clone(), e.to_string()))?;
            let cells = configs
                .iter()
                .map(|c| {
                    let t0 = Instant::now();
                    let r = inst.solve(&c.solver);
                    BenchCell {
                        status: r.status,
                        nodes: r.stats.nodes,
                        tt_hits: r.stats.tt_hits,
                        millis: t0.elapsed().as_millis(),
                    }
                })
                .collect();
            Ok(BenchRow {
                problem: name,
                cells,
            })
        })
        .collect();
    let mut report = BenchReport {
        configs: configs.iter().map(|c| c.name.clone()).collect(),
        rows: Vec::new(),
        skipped: Vec::new(),
    };
    for r in results {
        match r {
            Ok(row) => report.rows.push(row),
            Err(s) => report.skipped.push(s),
        }
    }
    Ok(report)
}

impl BenchReport {
    /// Problems with a decided verdict under config `i`.
    pub fn solved(&self, i: usize) -> usize {
        self.rows
            .iter()
            .filter(|r| r.cells[i].status != Status::Unknown)
            .count()
    }

    pub fn total_nodes(&self, i: usize) -> u64 {
        self.rows.iter().map(|r| r.cells[i].nodes).sum()
    }

    /// Text report: solved counts per config, then per-problem node counts.
    /// Wall times are included only when asked for, so that the default
    /// output is identical across runs.
    pub fn render(&self, with_times: bool) -> String {
        let mut out = String::new();
        let w = self
            .rows
            .iter()
            .map(|r| r.problem.len())
            .chain(["problem".len(), "total".len()])
            .max()
            .unwrap_or(8);
        let _ = writeln!(out, "solved problems");
        let _ = writeln!(out, "{:<10} {:>7} {:>7}", "config", "solved", "total");
        for (i, c) in self.configs.iter().enumerate() {
            let _ = writeln!(out, "{:<10} {:>7} {:>7}", c, self.solved(i), self.rows.len());
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "nodes per problem");
        let _ = write!(out, "{:<w$}", "problem");
        for c in &self.configs {
            let _ = write!(out, " {:>18}", c);
        }
        let _ = writeln!(out);
        for r in &self.rows {
            let _ = write!(out, "{:<w$}", r.problem);
            for cell in &r.cells {
                let v = format!("{} {}", cell.nodes, cell.status);
                let _ = write!(out, " {v:>18}");
            }
            if with_times {
                let ms: Vec<String> = r.cells.iter().map(|c| format!("{}ms", c.millis)).collect();
                let _ = write!(out, "  [{}]", ms.join(" "));
            }
            let _ = writeln!(out);
        }
        let _ = write!(out, "{:<w$}", "total");
        for i in 0..self.configs.len() {
            let _ = write!(out, " {:>18}", self.total_nodes(i));
        }
        let _ = writeln!(out);
        for (f, why) in &self.skipped {
            let _ = writeln!(out, "skipped {f}: {why}");
        }
        out
    }
}
