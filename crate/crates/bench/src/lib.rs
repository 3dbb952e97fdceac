//! Workloads shared by the criterion benchmarks.

use conewright_core::birat::assemble_chambers;
use conewright_core::detcy::{cy_hodge, invariant_row, main_pair};
use conewright_core::spaces::build_catalog;
use conewright_core::{Case, InvariantRow, Result};

/// Builds every catalog space from scratch, bypassing the shared cache.
pub fn fresh_catalog_size() -> Result<usize> {
    Ok(build_catalog()?.models().count())
}

pub fn table1() -> Result<Vec<InvariantRow>> {
    Case::ALL.iter().map(|&c| invariant_row(&main_pair(c)?)).collect()
}

pub fn table2() -> Result<Vec<(i64, i64)>> {
    Case::ALL.iter().map(|&c| cy_hodge(&main_pair(c)?)).collect()
}

pub fn chambers() -> Result<usize> {
    Case::ALL
        .iter()
        .map(|&c| Ok(assemble_chambers(c)?.chambers.len()))
        .sum()
}
