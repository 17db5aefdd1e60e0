//! The whole explorer run for one prime, rendered as aligned text, CSV or JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value as Json};

use super::families::{CycleKind, RootFamily, RootKind};
use super::poset::{expected_minpoly, verify_poset, verify_translates, PosetReport, TranslateReport};
use super::tables::{
    classify_cycles, classify_roots, determine_composition_order, verify_action_tables, verify_monoid_table, ActionCell,
    OrderScore,
    ActionReport, CycleReport, MonoidReport, RootReport,
};
use super::{enumerate_endos, CompositionOrder, EndoKind, EndoMap, Extension, FROZEN_ORDER};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::parse(0, format!("unknown format `{s}` (text, json, csv)"))),
        }
    }
}

/// A titled grid of strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: &'static str,
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &'static str, title: impl Into<String>, header: &[&str]) -> Self {
        Table { name, title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn text(&self) -> String {
        let width = |i: usize| {
            std::iter::once(&self.header)
                .chain(&self.rows)
                .map(|r| r.get(i).map_or(0, |c| c.chars().count()))
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.header.len()).map(width).collect();
        let line = |r: &[String]| {
            let cells: Vec<String> =
                r.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            format!("| {} |", cells.join(" | "))
        };
        let rule = format!("|{}|", widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("|"));
        let mut out = format!("{}\n{}\n{rule}\n", self.title, line(&self.header));
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
    }

    pub fn to_json(&self) -> Json {
        json!({ "name": self.name, "title": self.title, "header": self.header, "rows": self.rows })
    }
}

/// Outcome of every explorer check for one prime.
#[derive(Clone, Debug)]
pub struct Battery {
    pub ext: Extension,
    pub order: CompositionOrder,
    pub order_scores: Vec<OrderScore>,
    pub endos: Vec<EndoMap>,
    pub roots: RootReport,
    pub cycles: CycleReport,
    pub monoid: MonoidReport,
    pub actions: ActionReport,
    pub poset: PosetReport,
    pub translates: TranslateReport,
}

fn status(cell: &ActionCell) -> String {
    if cell.literal_failures == 0 {
        cell.printed.to_string()
    } else {
        format!("{} ✗ {}/{} (holds: {})", cell.printed, cell.literal_failures, cell.instances, cell.corrected)
    }
}

impl Battery {
    pub fn run(p: u64) -> Result<Self> {
        let ext = Extension::new(p)?;
        let (order, order_scores) = determine_composition_order()?;
        debug_assert_eq!(order, FROZEN_ORDER);
        Ok(Battery {
            endos: enumerate_endos(&ext)?,
            roots: classify_roots(&ext)?,
            cycles: classify_cycles(&ext)?,
            monoid: verify_monoid_table(&ext, FROZEN_ORDER)?,
            actions: verify_action_tables(&ext)?,
            poset: verify_poset(&ext)?,
            translates: verify_translates(&ext)?,
            order,
            order_scores,
            ext,
        })
    }

    pub fn p(&self) -> u64 {
        self.ext.p()
    }

    /// Named checks with pass flags and details.
    pub fn checks(&self) -> Vec<(String, bool, String)> {
        let p = self.p();
        let mut out = vec![
            (
                "endomorphism count p^2+p+2".to_string(),
                self.endos.len() as u64 == p * p + p + 2,
                format!("{} found", self.endos.len()),
            ),
            (
                "endomorphisms all in the four families".to_string(),
                self.endos.iter().all(|e| e.family.is_some()),
                String::new(),
            ),
            (
                "automorphism count p(p-1)".to_string(),
                self.monoid.automorphisms.len() as u64 == p * (p - 1),
                format!("{} found", self.monoid.automorphisms.len()),
            ),
            (
                "root count (p+1)^2".to_string(),
                self.roots.count() as u64 == (p + 1) * (p + 1),
                format!("{} found; the four root families name 3p+1 = {} elements", self.roots.count(), 3 * p + 1),
            ),
            ("every root carries one family tag".to_string(), self.roots.families_cover, String::new()),
            (
                "cycle classes match c^τ, c^τ_t, c_t".to_string(),
                self.cycles.families_match,
                format!("{} classes from {} splittings", self.cycles.cycles.len(), self.cycles.splittings),
            ),
            ("(a) roots = union of cycle supports".to_string(), self.cycles.property_a, String::new()),
            ("(b) basis cycles = c^τ_t, τ unit".to_string(), self.cycles.property_b, String::new()),
        ];
        for c in &self.translates.checks {
            let detail = match (&c.counterexample, c.closure) {
                (Some(x), true) => format!("single application fails at {x}; closure holds"),
                (Some(x), false) => format!("fails at {x}"),
                (None, _) => String::new(),
            };
            out.push((format!("({}) {}", c.name, c.statement), c.single, detail));
        }
        let failing: Vec<String> =
            self.monoid.failing_cells().iter().map(|c| format!("{} * {}", c.row.label(), c.col.label())).collect();
        out.extend([
            ("monoid table as printed".to_string(), self.monoid.literal_ok(), failing.join(", ")),
            ("monoid table corrected".to_string(), self.monoid.corrected_ok(), String::new()),
            ("root action table as printed".to_string(), self.actions.roots_literal_ok(), String::new()),
            (
                "cycle action table as printed".to_string(),
                self.actions.cycles_literal_ok(),
                self.actions
                    .cycles
                    .iter()
                    .filter(|c| c.literal_failures > 0)
                    .map(|c| format!("{} on {}: holds as {}", c.row.label(), c.col, c.corrected))
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
            ("action tables corrected".to_string(), self.actions.corrected_ok(), String::new()),
            ("minimal polynomial table".to_string(), self.poset.table_ok(), String::new()),
            ("minpoly divisibility monotone".to_string(), self.poset.monotone, String::new()),
            ("automorphisms preserve the order".to_string(), self.poset.automorphisms_strict, String::new()),
            (
                "exactly eps, eps' fail, in four patterns".to_string(),
                self.poset.exceptions_ok(),
                format!("{} failing pairs", self.poset.failures.len()),
            ),
            ("level order preserved".to_string(), self.poset.levels_preserved, String::new()),
        ]);
        out
    }

    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|c| c.1)
    }

    pub fn tables(&self) -> Vec<Table> {
        let ext = &self.ext;
        let mut endos = Table::new(
            "endomorphisms",
            format!("Endomorphisms over Z/{} (images of a1, a2, a3)", self.p()),
            &["family", "a1", "a2", "a3", "automorphism"],
        );
        for e in &self.endos {
            let mut row = vec![e.label()];
            row.extend(e.images.iter().map(|v| ext.show(v)));
            row.push(if e.is_automorphism(ext) { "yes" } else { "no" }.into());
            endos.rows.push(row);
        }

        let mut header = vec!["*"];
        header.extend(EndoKind::ALL.iter().map(|k| k.label()));
        let mut monoid = Table::new(
            "monoid",
            format!("Composition table, {} (row * column)", self.order.name()),
            &header,
        );
        for row in EndoKind::ALL {
            let mut r = vec![row.label().to_string()];
            for col in EndoKind::ALL {
                let c = self.monoid.cells.iter().find(|c| c.row == row && c.col == col).expect("all cells");
                r.push(if c.literal_failures == 0 {
                    c.printed.to_string()
                } else {
                    format!("{} ✗ {}/{} (holds: {})", c.printed, c.literal_failures, c.instances, c.corrected)
                });
            }
            monoid.rows.push(r);
        }

        let mut header = vec!["endo"];
        header.extend(RootKind::ALL.iter().map(|k| k.label()));
        let mut roots = Table::new("root_action", "Action on roots", &header);
        for row in EndoKind::ALL {
            let mut r = vec![row.label().to_string()];
            for col in RootKind::ALL {
                r.push(status(self.actions.roots.iter().find(|c| c.row == row && c.col == col.label()).expect("cell")));
            }
            roots.rows.push(r);
        }

        let mut header = vec!["endo"];
        header.extend(CycleKind::ALL.iter().map(|k| k.label()));
        let mut cycles = Table::new("cycle_action", "Action on cycles", &header);
        for row in EndoKind::ALL {
            let mut r = vec![row.label().to_string()];
            for col in CycleKind::ALL {
                r.push(status(self.actions.cycles.iter().find(|c| c.row == row && c.col == col.label()).expect("cell")));
            }
            cycles.rows.push(r);
        }

        let labels: Vec<&str> = self.poset.table.iter().map(|t| t.0).collect();
        let mut minpolys = Table::new("minpoly", "Minimal polynomials", &labels);
        minpolys.rows.push(
            self.poset
                .table
                .iter()
                .map(|(l, m, ok)| {
                    if *ok {
                        m.to_string()
                    } else {
                        format!("{m} ✗ (expected {})", expected_minpoly(l).map_or("?".into(), |e| e.to_string()))
                    }
                })
                .collect(),
        );

        let mut root_list = Table::new("roots", format!("Roots of X^3 - X^2 ({})", self.roots.count()), &["root", "family", "minpoly"]);
        for r in &self.roots.roots {
            root_list.rows.push(vec![ext.show(&r.element), r.family.to_string(), r.minpoly.to_string()]);
        }

        let mut cycle_list = Table::new(
            "cycles",
            format!("Cycle classes ({})", self.cycles.cycles.len()),
            &["family", "least rotation", "basis"],
        );
        for c in &self.cycles.cycles {
            let names: Vec<String> = c
                .roots
                .iter()
                .map(|v| RootFamily::classify(ext, v).map_or_else(|| ext.show(v), |r| r.to_string()))
                .collect();
            cycle_list.rows.push(vec![
                c.family.to_string(),
                format!("({})", names.join(", ")),
                if c.basis { "yes" } else { "no" }.into(),
            ]);
        }

        let mut checks = Table::new("checks", format!("Checks over Z/{}", self.p()), &["check", "result", "detail"]);
        for (name, ok, detail) in self.checks() {
            checks.rows.push(vec![name, if ok { "PASS" } else { "FAIL" }.into(), detail]);
        }

        vec![endos, monoid, roots, cycles, minpolys, root_list, cycle_list, checks]
    }

    pub fn to_json(&self) -> Json {
        let checks: Vec<Json> =
            self.checks().into_iter().map(|(n, ok, d)| json!({ "check": n, "pass": ok, "detail": d })).collect();
        let scores: Vec<Json> = self
            .order_scores
            .iter()
            .map(|s| {
                json!({
                    "order": s.order.name(),
                    "agreeing_cells": s.cells_agreeing,
                    "cells": s.cells,
                    "agreeing_products": s.products_agreeing,
                    "products": s.products,
                })
            })
            .collect();
        json!({
            "p": self.p(),
            "composition_order": self.order.name(),
            "order_scores": scores,
            "all_pass": self.all_pass(),
            "checks": checks,
            "tables": self.tables().iter().map(Table::to_json).collect::<Vec<_>>(),
        })
    }

    /// All tables, or only the one called `only`.
    pub fn render(&self, format: Format, only: Option<&str>) -> Result<String> {
        let tables: Vec<Table> = self.tables().into_iter().filter(|t| only.is_none_or(|n| n == t.name)).collect();
        if tables.is_empty() {
            let names: Vec<&str> = self.tables().iter().map(|t| t.name).collect();
            return Err(Error::parse(0, format!("unknown table; choose one of {}", names.join(", "))));
        }
        Ok(match format {
            Format::Json if only.is_some() => serde_json::to_string_pretty(&tables[0].to_json())?,
            Format::Json => serde_json::to_string_pretty(&self.to_json())?,
            Format::Text => {
                let mut out = String::new();
                for t in &tables {
                    let _ = writeln!(out, "{}", t.text());
                }
                out
            }
            Format::Csv => {
                let mut out = String::new();
                for t in &tables {
                    if tables.len() > 1 {
                        let _ = writeln!(out, "# {}", t.name);
                    }
                    out.push_str(&t.csv()?);
                }
                out
            }
        })
    }
}
