//! Median-based trend checks over experiment rows.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ExperimentRow;
use crate::learn::UpdateRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Pass,
    Fail,
    NotEvaluable,
}

impl Flag {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Flag::Pass
        } else {
            Flag::Fail
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Pass => "pass",
            Flag::Fail => "fail",
            Flag::NotEvaluable => "not-evaluable",
        })
    }
}

/// Medians for one (depth, rule) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendCell {
    pub depth: usize,
    pub rule: UpdateRule,
    pub runs: usize,
    pub converged: usize,
    pub median_epochs: f64,
    pub median_final_mse: f64,
    pub median_cum_grad: f64,
    pub median_accuracy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendSummary {
    pub cells: Vec<TrendCell>,
    /// Per rule: median epochs nondecreasing as depth grows.
    pub epochs_grow_with_depth: Vec<(UpdateRule, Flag)>,
    /// Per rule: median final MSE nonincreasing as depth grows.
    pub mse_shrinks_with_depth: Vec<(UpdateRule, Flag)>,
    /// Per depth: median epochs(modified) <= median epochs(classical).
    pub modified_faster: Vec<(usize, Flag)>,
    /// Per depth: median accuracy(modified) >= median accuracy(classical).
    pub modified_more_accurate: Vec<(usize, Flag)>,
}

impl TrendSummary {
    pub fn cell(&self, depth: usize, rule: UpdateRule) -> Option<&TrendCell> {
        self.cells.iter().find(|c| c.depth == depth && c.rule == rule)
    }
}

/// Median; the mean of the two middle values for even counts. NaN if empty.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn monotone(values: &[f64], nondecreasing: bool) -> Flag {
    if values.len() < 2 {
        return Flag::NotEvaluable;
    }
    Flag::from_bool(
        values
            .windows(2)
            .all(|w| if nondecreasing { w[0] <= w[1] } else { w[0] >= w[1] }),
    )
}

pub fn summarize_trends(rows: &[ExperimentRow]) -> TrendSummary {
    let depths: BTreeSet<usize> = rows.iter().map(|r| r.depth).collect();
    let rules: BTreeSet<UpdateRule> = rows.iter().map(|r| r.rule).collect();

    let mut cells = Vec::new();
    for &depth in &depths {
        for &rule in &rules {
            let sel: Vec<&ExperimentRow> = rows.iter().filter(|r| r.depth == depth && r.rule == rule).collect();
            if sel.is_empty() {
                continue;
            }
            let col = |f: fn(&ExperimentRow) -> f64| median(&sel.iter().map(|r| f(r)).collect::<Vec<_>>());
            cells.push(TrendCell {
                depth,
                rule,
                runs: sel.len(),
                converged: sel.iter().filter(|r| r.converged).count(),
                median_epochs: col(|r| r.epochs as f64),
                median_final_mse: col(|r| r.final_mse),
                median_cum_grad: col(|r| r.cum_grad),
                median_accuracy: col(ExperimentRow::mean_accuracy),
            });
        }
    }

    let find = |d: usize, r: UpdateRule| cells.iter().find(|c| c.depth == d && c.rule == r);
    let by_depth = |rule: UpdateRule, f: fn(&TrendCell) -> f64| -> Vec<f64> {
        depths.iter().filter_map(|&d| find(d, rule).map(f)).collect()
    };

    let epochs_grow_with_depth = rules
        .iter()
        .map(|&r| (r, monotone(&by_depth(r, |c| c.median_epochs), true)))
        .collect();
    let mse_shrinks_with_depth = rules
        .iter()
        .map(|&r| (r, monotone(&by_depth(r, |c| c.median_final_mse), false)))
        .collect();

    let compare = |f: fn(&TrendCell, &TrendCell) -> bool| -> Vec<(usize, Flag)> {
        depths
            .iter()
            .map(|&d| {
                let flag = match (find(d, UpdateRule::Modified), find(d, UpdateRule::Classical)) {
                    (Some(m), Some(c)) => Flag::from_bool(f(m, c)),
                    _ => Flag::NotEvaluable,
                };
                (d, flag)
            })
            .collect()
    };
    let modified_faster = compare(|m, c| m.median_epochs <= c.median_epochs);
    let modified_more_accurate = compare(|m, c| m.median_accuracy >= c.median_accuracy);

    TrendSummary {
        cells,
        epochs_grow_with_depth,
        mse_shrinks_with_depth,
        modified_faster,
        modified_more_accurate,
    }
}

impl fmt::Display for TrendSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>5} {:>9} {:>5} {:>9} {:>13} {:>14} {:>13} {:>9}",
            "depth", "rule", "runs", "converged", "median_epochs", "median_mse", "median_grad", "median_acc"
        )?;
        for c in &self.cells {
            writeln!(
                f,
                "{:>5} {:>9} {:>5} {:>9} {:>13} {:>14.6e} {:>13.3} {:>9.4}",
                c.depth,
                c.rule,
                c.runs,
                c.converged,
                c.median_epochs,
                c.median_final_mse,
                c.median_cum_grad,
                c.median_accuracy
            )?;
        }
        for (r, flag) in &self.epochs_grow_with_depth {
            writeln!(f, "epochs nondecreasing in depth ({r}): {flag}")?;
        }
        for (r, flag) in &self.mse_shrinks_with_depth {
            writeln!(f, "final mse nonincreasing in depth ({r}): {flag}")?;
        }
        for (d, flag) in &self.modified_faster {
            writeln!(f, "modified needs no more epochs than classical (depth {d}): {flag}")?;
        }
        for (d, flag) in &self.modified_more_accurate {
            writeln!(f, "modified at least as accurate as classical (depth {d}): {flag}")?;
        }
        Ok(())
    }
}
