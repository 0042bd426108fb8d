//! Multiplication tables of basis blades.

use clifford_core::algebra::blade_name;
use clifford_core::multivector::canonical_order;
use clifford_core::{blade_product, BasisBlade, Signature};

use crate::error::CliError;

/// Widest algebra whose table is printed.
pub const MAX_TABLE_DIM: usize = 6;

/// A basis element as labelled in a table: `sign · canonical blade`.
#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    pub bits: u32,
    pub name: String,
    pub sign: f64,
}

/// Row and column labels: grade order, then index order, except that the
/// bivectors of a 3-dimensional algebra are the cyclic `e23, e31, e12`.
pub fn basis_labels(sig: Signature) -> Vec<Label> {
    let dim = sig.dim();
    if dim == 3 {
        return [
            (0b000, "1", 1.0),
            (0b001, "e1", 1.0),
            (0b010, "e2", 1.0),
            (0b100, "e3", 1.0),
            (0b110, "e23", 1.0),
            (0b101, "e31", -1.0),
            (0b011, "e12", 1.0),
            (0b111, "e123", 1.0),
        ]
        .into_iter()
        .map(|(bits, name, sign)| Label { bits, name: name.to_string(), sign })
        .collect();
    }
    canonical_order(dim).into_iter().map(|bits| Label { bits, name: blade_name(bits, dim), sign: 1.0 }).collect()
}

/// Cells of the table, `cells[row][col]` = label(row) · label(col).
pub fn table_cells(sig: Signature) -> Result<Vec<Vec<String>>, CliError> {
    if sig.dim() > MAX_TABLE_DIM {
        return Err(CliError::Usage(format!("tables are limited to dimension {MAX_TABLE_DIM}; {sig} is too large")));
    }
    let labels = basis_labels(sig);
    let by_bits = |bits: u32| labels.iter().find(|l| l.bits == bits).expect("every blade is labelled");
    let cells = labels
        .iter()
        .map(|a| {
            labels
                .iter()
                .map(|b| {
                    let p = blade_product(BasisBlade::new(a.bits, a.sign), BasisBlade::new(b.bits, b.sign), &sig)
                        .expect("blades fit the signature");
                    let target = by_bits(p.bits);
                    let w = p.weight * target.sign;
                    if w == 0.0 {
                        "0".to_string()
                    } else if w > 0.0 {
                        target.name.clone()
                    } else {
                        format!("-{}", target.name)
                    }
                })
                .collect()
        })
        .collect();
    Ok(cells)
}

/// The table as aligned text: a header row of column labels, then one row
/// per left factor.
pub fn print_table(sig: Signature) -> Result<String, CliError> {
    let labels = basis_labels(sig);
    let cells = table_cells(sig)?;
    let width = cells.iter().flatten().map(String::len).chain(labels.iter().map(|l| l.name.len())).max().unwrap_or(1);
    let mut out = String::new();
    let mut push_row = |head: &str, row: &mut dyn Iterator<Item = &str>| {
        let mut line = format!("{head:>width$} |");
        for cell in row {
            line.push_str(&format!(" {cell:>width$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_row("", &mut labels.iter().map(|l| l.name.as_str()));
    for (label, row) in labels.iter().zip(&cells) {
        push_row(&label.name, &mut row.iter().map(String::as_str));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane() {
        let cells = table_cells(Signature::new(2, 0, 0).unwrap()).unwrap();
        assert_eq!(cells[2][3], "-e1");
        assert_eq!(cells[3][3], "-1");
    }

    #[test]
    fn space() {
        let cells = table_cells(Signature::new(3, 0, 0).unwrap()).unwrap();
        assert_eq!(cells[4][5], "-e12");
        assert_eq!(cells[7][7], "-1");
        assert_eq!(cells[1][3], "-e31");
    }

    #[test]
    fn degenerate_and_large() {
        let cells = table_cells(Signature::new(1, 0, 1).unwrap()).unwrap();
        assert_eq!(cells[2][2], "0");
        assert!(table_cells(Signature::new(7, 0, 0).unwrap()).is_err());
    }

    #[test]
    fn layout() {
        let text = print_table(Signature::new(2, 0, 0).unwrap()).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "     |    1   e1   e2  e12");
        assert_eq!(text.lines().count(), 5);
    }
}
