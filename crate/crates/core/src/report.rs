//! CSV output for sequences, complexities, bounds and the comparison figures.
//!
//! Every table has a header row. Field elements are written as coefficient
//! vectors joined by `:` (low degree first), so no quoting is ever needed.
//! Bounds are written with six decimals; their ceilings are written as
//! integers, or `trivial` when the bound is at most zero.

use std::io::{Read, Write};

use crate::bounds::{comparison_sweep, AllBounds, BoundValue, ComparisonRow};
use crate::complexity::{ComplexityResult, DegreeMode};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::sequence::{term_coordinates, Sequence};

/// Digits after the decimal point for rendered bounds.
pub const DECIMAL_PLACES: u32 = 6;

pub fn write_sequence_csv<W: Write>(ctx: &FieldCtx, seq: &Sequence, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "i", "j", "value"])?;
    for (pos, &term) in seq.terms().iter().enumerate() {
        let index = pos + 1;
        let (i, j) = match seq.meta() {
            Some(meta) => {
                let (i, j) = term_coordinates(meta.q, index);
                (i.to_string(), j.to_string())
            }
            None => (String::new(), String::new()),
        };
        w.write_record([index.to_string(), i, j, ctx.format(term)])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the `value` column of a sequence table back into a [`Sequence`]
/// (without provenance).
pub fn read_sequence_csv<R: Read>(ctx: &FieldCtx, input: R) -> Result<Sequence> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    let value_col = headers
        .iter()
        .position(|h| h == "value")
        .ok_or_else(|| Error::Csv("missing value column".into()))?;
    let index_col = headers.iter().position(|h| h == "index");
    let mut terms = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record?;
        if let Some(col) = index_col {
            let index: usize = record[col]
                .parse()
                .map_err(|_| Error::Csv(format!("bad index on row {}", row + 1)))?;
            if index != row + 1 {
                return Err(Error::Csv(format!(
                    "index {index} out of order on row {}",
                    row + 1
                )));
            }
        }
        terms.push(ctx.parse(&record[value_col])?);
    }
    Ok(Sequence::from_terms(terms))
}

/// One line of a complexity table.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ComplexityRow {
    pub n: usize,
    pub mode: DegreeMode,
    pub result: ComplexityResult,
}

pub fn write_complexity_csv<W: Write>(rows: &[ComplexityRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "k", "mode", "result_kind", "value_or_lo", "hi"])?;
    for row in rows {
        let (kind, lo, hi) = match row.result {
            ComplexityResult::Exact(m) => ("exact", m, m),
            ComplexityResult::Bracket { lo, hi } => ("bracket", lo, hi),
        };
        w.write_record([
            row.n.to_string(),
            row.mode.k().to_string(),
            row.mode.label().to_string(),
            kind.to_string(),
            lo.to_string(),
            hi.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a table written by [`write_complexity_csv`].
pub fn read_complexity_csv<R: Read>(input: R) -> Result<Vec<ComplexityRow>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let field = |i: usize| -> Result<usize> {
            record
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Csv(format!("bad numeric field in {record:?}")))
        };
        let k = field(1)? as u32;
        let mode = match record.get(2) {
            Some("per-variable") => DegreeMode::PerVariable(k),
            Some("total-degree") => DegreeMode::TotalDegree(k),
            other => return Err(Error::Csv(format!("unknown mode {other:?}"))),
        };
        let result = match record.get(3) {
            Some("exact") => ComplexityResult::Exact(field(4)?),
            Some("bracket") => ComplexityResult::Bracket {
                lo: field(4)?,
                hi: field(5)?,
            },
            other => return Err(Error::Csv(format!("unknown result kind {other:?}"))),
        };
        rows.push(ComplexityRow {
            n: field(0)?,
            mode,
            result,
        });
    }
    Ok(rows)
}

fn ceiling_cell(b: &BoundValue) -> String {
    if b.is_trivial() {
        "trivial".to_string()
    } else {
        b.ceiling.to_string()
    }
}

pub fn write_bounds_csv<W: Write>(rows: &[AllBounds], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let names = ["N_new", "L_new", "N_nx", "L_nx", "N_gor", "L_gor"];
    let mut header = vec!["n".to_string(), "q".into(), "k".into(), "ell".into()];
    for name in names {
        header.push(name.to_string());
        header.push(format!("{name}_ceil"));
    }
    w.write_record(&header)?;
    for row in rows {
        let p = row.params;
        let mut record = vec![
            p.n.to_string(),
            p.q.to_string(),
            p.k.to_string(),
            p.ell.to_string(),
        ];
        for b in [
            &row.n_new, &row.l_new, &row.n_nx, &row.l_nx, &row.n_gor, &row.l_gor,
        ] {
            record.push(b.decimal(DECIMAL_PLACES));
            record.push(ceiling_cell(b));
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_comparison_csv<W: Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "N1", "N2", "L1", "L2"])?;
    for row in rows {
        w.write_record([
            row.n.to_string(),
            row.n1.decimal(DECIMAL_PLACES),
            row.n2.decimal(DECIMAL_PLACES),
            row.l1.decimal(DECIMAL_PLACES),
            row.l2.decimal(DECIMAL_PLACES),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// The two comparison plots: `N` bounds at `k = 5` and `L` bounds at
/// `k = 20`, both with `q = 32` over `n` in `[q^2 - 1, q(q^2 - 2)]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FigurePreset {
    Fig1,
    Fig2,
}

impl FigurePreset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fig1" => Ok(FigurePreset::Fig1),
            "fig2" => Ok(FigurePreset::Fig2),
            other => Err(Error::BoundParams(format!(
                "unknown figure preset {other:?}"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
        }
    }

    pub fn q(self) -> u64 {
        32
    }

    pub fn k(self) -> u64 {
        match self {
            FigurePreset::Fig1 => 5,
            FigurePreset::Fig2 => 20,
        }
    }

    pub fn n_range(self) -> std::ops::RangeInclusive<u64> {
        let q = self.q();
        (q * q - 1)..=(q * (q * q - 2))
    }

    pub fn rows(self) -> Result<Vec<ComparisonRow>> {
        comparison_sweep(self.q(), self.k(), self.q(), self.n_range(), false)
    }

    /// Header names of the two plotted columns.
    pub fn columns(self) -> [&'static str; 2] {
        match self {
            FigurePreset::Fig1 => ["N1", "N2"],
            FigurePreset::Fig2 => ["L1", "L2"],
        }
    }

    /// The plotted pair from a comparison row.
    pub fn pick(self, row: &ComparisonRow) -> (&BoundValue, &BoundValue) {
        match self {
            FigurePreset::Fig1 => (&row.n1, &row.n2),
            FigurePreset::Fig2 => (&row.l1, &row.l2),
        }
    }
}

pub fn write_figure_csv<W: Write>(
    preset: FigurePreset,
    rows: &[ComparisonRow],
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let [a, b] = preset.columns();
    w.write_record(["n", a, b])?;
    for row in rows {
        let (x, y) = preset.pick(row);
        w.write_record([
            row.n.to_string(),
            x.decimal(DECIMAL_PLACES),
            y.decimal(DECIMAL_PLACES),
        ])?;
    }
    w.flush()?;
    Ok(())
}
