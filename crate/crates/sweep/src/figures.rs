use metrics::Metrics;
use rayon::prelude::*;
use states::FamilySelector;

use crate::table::{display, Cell, Table};
use crate::SweepError;

/// Fidelity summary table columns, left to right.
pub const TABLE1_COLUMNS: [&str; 4] = ["rho1:phi+", "rho2:psi+", "rho2:psi-", "rhog:phi+"];

/// The printed fidelity summary table, rows p = 0.0 .. 1.0.
pub const TABLE1_PRINTED: [[f64; 4]; 11] = [
    [1.00, 1.00, 1.00, 1.00],
    [0.94, 0.98, 0.93, 0.97],
    [0.89, 0.96, 0.87, 0.93],
    [0.83, 0.93, 0.80, 0.90],
    [0.78, 0.91, 0.73, 0.87],
    [0.72, 0.89, 0.67, 0.83],
    [0.67, 0.87, 0.60, 0.80],
    [0.67, 0.84, 0.64, 0.77],
    [0.69, 0.82, 0.69, 0.73],
    [0.73, 0.80, 0.73, 0.70],
    [0.78, 0.78, 0.78, 0.67],
];

fn fidelity(sel: FamilySelector, x: f64) -> Result<f64, SweepError> {
    Ok(Metrics::compute(&sel.at(x)?.materialize()?)?.fidelity)
}

fn selector(s: &str) -> FamilySelector {
    s.parse().expect("built-in selector")
}

/// Half away from zero, as `f64::round` does.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1 {
    pub params: [f64; 11],
    pub raw: [[f64; 4]; 11],
}

/// A cell whose rounded value differs from the printed one.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Deviation {
    pub param: f64,
    pub column: &'static str,
    pub raw: f64,
    pub rounded: f64,
    pub printed: f64,
}

impl Table1 {
    pub fn rounded(&self) -> [[f64; 4]; 11] {
        self.raw.map(|r| r.map(round2))
    }

    pub fn deviations(&self) -> Vec<Table1Deviation> {
        let mut out = Vec::new();
        for (i, row) in self.raw.iter().enumerate() {
            for (j, &raw) in row.iter().enumerate() {
                let (rounded, printed) = (round2(raw), TABLE1_PRINTED[i][j]);
                if (rounded - printed).abs() > 1e-9 {
                    out.push(Table1Deviation {
                        param: self.params[i],
                        column: TABLE1_COLUMNS[j],
                        raw,
                        rounded,
                        printed,
                    });
                }
            }
        }
        out
    }

    pub fn to_table(&self) -> Table {
        let mut headers = vec!["p".to_string()];
        for c in TABLE1_COLUMNS {
            headers.push(c.to_string());
            headers.push(format!("{c}_display"));
        }
        let mut t = Table::new(headers);
        for (p, row) in self.params.iter().zip(&self.raw) {
            let mut cells = vec![Cell::Num(*p)];
            for &v in row {
                cells.push(v.into());
                cells.push(display(round2(v), 2));
            }
            t.push(cells);
        }
        t
    }

    /// Plain-text rendering with two decimals.
    pub fn render(&self) -> String {
        let mut s = format!("{:>4}", "p");
        for c in TABLE1_COLUMNS {
            s.push_str(&format!(" {c:>10}"));
        }
        s.push('\n');
        for (p, row) in self.params.iter().zip(self.rounded()) {
            s.push_str(&format!("{p:>4.1}"));
            for v in row {
                s.push_str(&format!(" {v:>10.2}"));
            }
            s.push('\n');
        }
        s
    }
}

pub fn table1() -> Result<Table1, SweepError> {
    let params: [f64; 11] = std::array::from_fn(|i| i as f64 / 10.0);
    let mut raw = [[0.0; 4]; 11];
    for (i, &p) in params.iter().enumerate() {
        for (j, col) in TABLE1_COLUMNS.iter().enumerate() {
            raw[i][j] = fidelity(selector(col), p)?;
        }
    }
    Ok(Table1 { params, raw })
}

/// Fidelity curves behind one figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: u8,
    pub params: Vec<f64>,
    pub curves: Vec<(String, Vec<f64>)>,
    /// Parameter window the figure itself shows; data may extend beyond it.
    pub display_window: (f64, f64),
}

impl FigureData {
    pub fn curve(&self, name: &str) -> Option<&[f64]> {
        self.curves.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn to_table(&self) -> Table {
        let mut headers = vec!["p".to_string()];
        for (name, _) in &self.curves {
            headers.push(name.clone());
            headers.push(format!("{name}_display"));
        }
        headers.push("in_display_window".into());
        let mut t = Table::new(headers);
        for (i, &p) in self.params.iter().enumerate() {
            let mut cells = vec![Cell::Num(p)];
            for (_, v) in &self.curves {
                cells.push(v[i].into());
                cells.push(display(v[i], 4));
            }
            let (lo, hi) = self.display_window;
            cells.push((lo <= p && p <= hi).into());
            t.push(cells);
        }
        t
    }
}

const FIGURE_POINTS: usize = 1001;

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

/// Datasets for figures 1 to 4. Figure 2 and 4 carry the constant fidelity
/// of the W-derived MEMS as the `memsw` curve.
pub fn figure_data(id: u8) -> Result<FigureData, SweepError> {
    let (names, range, window): (&[&str], (f64, f64), (f64, f64)) = match id {
        1 => (&["rho1:phi+", "rho2:psi-", "rho2:psi+", "rhog:phi+"], (0.0, 1.0), (0.0, 1.0)),
        2 => (&["rho5:phi+", "rho6:psi+", "rho6:psi-", "memsw"], (0.0, 1.0), (0.0, 1.0)),
        3 => (&["tau1:phi+", "tau1:phi-", "rho1:phi+", "rho6:psi-"], (0.0, 1.0), (0.0, 0.45)),
        4 => (&["tau1:phi+", "tau1:phi-", "werner", "memsw"], (0.5, 1.0), (0.5, 1.0)),
        _ => return Err(SweepError::InvalidConfig(format!("no figure {id}; expected 1 to 4"))),
    };
    let points = if id == 4 { (FIGURE_POINTS - 1) / 2 + 1 } else { FIGURE_POINTS };
    let params = grid(range.0, range.1, points);
    let curves = names
        .iter()
        .map(|n| {
            let sel = selector(n);
            let v: Vec<f64> = params.par_iter().map(|&p| fidelity(sel, p)).collect::<Result<_, _>>()?;
            Ok((n.to_string(), v))
        })
        .collect::<Result<_, SweepError>>()?;
    Ok(FigureData { id, params, curves, display_window: window })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round2(0.125), 0.13);
        assert_eq!(round2(13.0 / 18.0), 0.72);
        assert_eq!(round2(2.0 / 3.0), 0.67);
    }

    #[test]
    fn table1_endpoints() {
        let t = table1().unwrap();
        assert_eq!(t.rounded()[0], [1.0; 4]);
        assert_eq!(t.rounded()[5], [0.72, 0.89, 0.67, 0.83]);
        assert_eq!(t.rounded()[10], [0.78, 0.78, 0.78, 0.67]);
        assert!(t.render().lines().count() == 12);
    }

    #[test]
    fn figure_windows() {
        let f3 = figure_data(3).unwrap();
        assert_eq!(f3.params.len(), 1001);
        assert_eq!(f3.display_window, (0.0, 0.45));
        let f4 = figure_data(4).unwrap();
        assert_eq!(f4.params.first(), Some(&0.5));
        assert_eq!(f4.params.len(), 501);
        assert!(figure_data(5).is_err());
        let t = f3.to_table();
        let w = t.column("in_display_window").unwrap();
        assert_eq!(t.rows.iter().filter(|r| r[w] == Cell::Bool(true)).count(), 451);
    }
}
