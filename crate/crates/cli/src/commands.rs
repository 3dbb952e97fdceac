use conewright_core::birat::{
    assemble_chambers, chi_from_solver, fiber_invariants, involution_degree, involution_matrix_v4,
    theta_matrix,
};
use conewright_core::detcy::{
    anticanonical_euler, blp4_pair, cy_hodge, invariant_row, main_pair, porteous_planes_p3,
    porteous_sigma_degree_p4, triple_products, v5_flop_side, InvariantRow,
};
use conewright_core::{Case, Result};

use crate::expected::{self, lookup};
use crate::report::{ChamberData, CheckItem, ConeData, RunReport, TableData, TableRow};

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn table(name: &str) -> Result<TableData> {
    let (cols, rows) = match name {
        "table1" => {
            let rows = Case::ALL
                .iter()
                .map(|&c| {
                    Ok(TableRow {
                        case: c.id().into(),
                        values: invariant_row(&main_pair(c)?)?.values().to_vec(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (columns(&InvariantRow::COLUMNS), rows)
        }
        "table2" => {
            let rows = Case::ALL
                .iter()
                .map(|&c| {
                    let (chi, h21) = cy_hodge(&main_pair(c)?)?;
                    Ok(TableRow {
                        case: c.id().into(),
                        values: vec![chi, h21],
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (columns(&["chi", "h21"]), rows)
        }
        "table3" => {
            let row = invariant_row(&v5_flop_side()?)?;
            (
                columns(&InvariantRow::COLUMNS),
                vec![TableRow {
                    case: "v5+".into(),
                    values: row.values().to_vec(),
                }],
            )
        }
        other => {
            return Err(conewright_core::Error::Usage(format!("unknown table `{other}`")));
        }
    };
    Ok(TableData {
        table: name.into(),
        columns: cols,
        rows,
    })
}

pub fn cone(case: Case) -> Result<ConeData> {
    let dec = assemble_chambers(case)?;
    Ok(ConeData {
        case: case.id().into(),
        walls: dec
            .walls
            .iter()
            .map(|w| crate::report::WallData {
                divisor: w.divisor.to_string(),
                kind: w.kind.as_str().into(),
            })
            .collect(),
        chambers: dec
            .chambers
            .iter()
            .map(|c| ChamberData {
                model: c.model.clone(),
                lower: c.lower.to_string(),
                upper: c.upper.to_string(),
            })
            .collect(),
    })
}

struct Collector {
    case: Case,
    items: Vec<CheckItem>,
}

impl Collector {
    fn push(&mut self, item: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        self.items.push(CheckItem {
            case: self.case.id().into(),
            item: item.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
    }
}

fn fmt_matrix(m: [[i64; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Every published value attached to one case.
pub fn check_case(case: Case) -> Result<Vec<CheckItem>> {
    let mut c = Collector {
        case,
        items: Vec::new(),
    };
    let cfg = main_pair(case)?;

    let row = invariant_row(&cfg)?.values();
    for ((name, want), got) in InvariantRow::COLUMNS
        .iter()
        .zip(lookup(&expected::TABLE1, case))
        .zip(row)
    {
        c.push(format!("table1 {name}"), want, got);
    }

    let (chi, h21) = cy_hodge(&cfg)?;
    let [chi_want, h21_want] = lookup(&expected::TABLE2, case);
    c.push("table2 chi", chi_want, chi);
    c.push("table2 h21", h21_want, h21);
    c.push(
        "anticanonical Euler number",
        lookup(&expected::ANTICANONICAL_EULER, case),
        anticanonical_euler(cfg.space())?,
    );

    let dual = triple_products(&cfg.swapped())?;
    let [lh2, l2h] = lookup(&expected::DUAL_SIDE, case);
    c.push("L_E.H_E^2", lh2, dual[2]);
    c.push("L_E^2.H_E", l2h, dual[1]);
    let r = lookup(&expected::FANO_INDEX, case);
    c.push("chi_* matrix", fmt_matrix([[-1, 0], [r, 1]]), fmt_matrix(chi_from_solver(case)?.m));

    match case {
        Case::V4 => {
            let row = invariant_row(&cfg)?;
            c.push("involution degree", expected::INVOLUTION_DEGREE, involution_degree(&row));
            c.push("iota^* matrix", fmt_matrix(expected::INVOLUTION), fmt_matrix(involution_matrix_v4(&row).m));
            c.push("Porteous planes in P3", expected::PORTEOUS_PLANES, porteous_planes_p3()?);
        }
        Case::V5 => {
            let plus = invariant_row(&v5_flop_side()?)?.values();
            for ((name, want), got) in InvariantRow::COLUMNS.iter().zip(expected::TABLE3).zip(plus) {
                c.push(format!("table3 {name}"), want, got);
            }
            c.push("Porteous surface degree", expected::PORTEOUS_SIGMA_DEGREE, porteous_sigma_degree_p4()?);
            let (a, b) = expected::FLOP_IMAGE;
            let m = theta_matrix(case)?.m;
            c.push("theta_* L'", format!("({a}, {b})"), format!("({}, {})", m[0][0], m[1][0]));
        }
        Case::Gr24 => {
            let plus = triple_products(&blp4_pair()?)?;
            c.push("blow-up triples", format!("{:?}", expected::BLOWUP_TRIPLES), format!("{plus:?}"));
            let (a, b) = expected::FLOP_IMAGE;
            let m = theta_matrix(case)?.m;
            c.push("theta_* L'", format!("({a}, {b})"), format!("({}, {})", m[0][0], m[1][0]));
        }
    }

    let walls: Vec<String> = assemble_chambers(case)?
        .walls
        .iter()
        .map(|w| w.divisor.to_string())
        .collect();
    c.push("walls", lookup(&expected::WALLS, case).join(", "), walls.join(", "));

    let fibres = fiber_invariants(case)?;
    for (name, want) in lookup(&expected::FIBRES, case) {
        let got = fibres
            .iter()
            .find(|f| f.item == *name)
            .map_or_else(|| "missing".to_string(), |f| f.computed.to_string());
        c.push(*name, want, got);
    }
    Ok(c.items)
}

pub fn check(cases: &[Case]) -> Result<RunReport> {
    let mut report = RunReport::default();
    for &case in cases {
        report.items.extend(check_case(case)?);
    }
    Ok(report)
}
