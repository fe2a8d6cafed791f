//! Embedded reference values for growth rates of power-free languages, used
//! by the regression and bracketing suites.
//!
//! One CSV row per cell: `table,k,exponent,m,lo,hi,estimate,jump`. Exact
//! cells carry the same value in `lo` and `hi`; upper-bound cells leave `lo`
//! empty and usually carry an extrapolated estimate; finite languages are
//! stored as exact 0. Published estimates whose last digit was marked
//! uncertain are stored with that digit dropped.

use std::sync::OnceLock;

use crate::exponent::RationalExponent;

pub const FIXTURES_CSV: &str = include_str!("fixtures.csv");

/// Which dataset a cell came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// Binary languages, with the jump column.
    Binary,
    /// Exponents >= 2 over 3..=15 letters.
    Big,
    /// Exponents between 5/4 and (3/2)+.
    Average,
    /// Exponents near the repetition threshold.
    Small,
    /// Values quoted in running text rather than a table.
    Text,
}

impl Table {
    fn parse(s: &str) -> Option<Table> {
        Some(match s {
            "binary" => Table::Binary,
            "big" => Table::Big,
            "average" => Table::Average,
            "small" => Table::Small,
            "text" => Table::Text,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// The value is the growth rate itself, rounded to 7 decimals.
    Exact,
    /// Certified lower and upper bounds.
    TwoSided,
    /// Certified upper bound only.
    UpperOnly,
    /// Extrapolated estimate only.
    EstimateOnly,
}

/// One transcribed cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub table: Table,
    pub k: u8,
    pub exponent: RationalExponent,
    /// Period cap of the approximation behind the bound, when published.
    pub m: Option<u32>,
    pub kind: CellKind,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub estimate: Option<f64>,
    pub jump: Option<f64>,
}

impl TableCell {
    /// The published number every certified upper bound for this language
    /// must stay above: the exact value, the two-sided lower bound, or the
    /// published upper bound (a cap-limited bound can only sit higher).
    pub fn bracketing_floor(&self) -> Option<f64> {
        match self.kind {
            CellKind::Exact | CellKind::TwoSided => self.lo,
            CellKind::UpperOnly => self.hi,
            CellKind::EstimateOnly => None,
        }
    }
}

fn parse_cells() -> Vec<TableCell> {
    let mut cells = Vec::new();
    let mut lines = FIXTURES_CSV.lines();
    let header = lines.next().expect("fixtures header");
    assert_eq!(header, "table,k,exponent,m,lo,hi,estimate,jump");
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 8, "fixtures line {} malformed: {line}", lineno + 2);
        let opt = |s: &str| {
            if s.is_empty() {
                None
            } else {
                Some(s.parse::<f64>().expect("fixture number"))
            }
        };
        let table = Table::parse(f[0]).expect("fixture table name");
        let k: u8 = f[1].parse().expect("fixture alphabet");
        let exponent: RationalExponent = f[2].parse().expect("fixture exponent");
        let m = if f[3].is_empty() {
            None
        } else {
            Some(f[3].parse::<u32>().expect("fixture m"))
        };
        let (lo, hi, estimate, jump) = (opt(f[4]), opt(f[5]), opt(f[6]), opt(f[7]));
        let kind = match (lo, hi, estimate) {
            (Some(a), Some(b), _) if a == b => CellKind::Exact,
            (Some(a), Some(b), _) => {
                assert!(a < b, "two-sided cell with lo >= hi at line {}", lineno + 2);
                CellKind::TwoSided
            }
            (None, Some(_), _) => CellKind::UpperOnly,
            (None, None, Some(_)) => CellKind::EstimateOnly,
            _ => panic!("fixture cell without values at line {}", lineno + 2),
        };
        cells.push(TableCell {
            table,
            k,
            exponent,
            m,
            kind,
            lo,
            hi,
            estimate,
            jump,
        });
    }
    cells
}

/// All transcribed cells.
pub fn cells() -> &'static [TableCell] {
    static CELLS: OnceLock<Vec<TableCell>> = OnceLock::new();
    CELLS.get_or_init(parse_cells)
}

/// Every cell for the pair `(k, e)` across all tables; empty when absent.
pub fn lookup(k: u8, e: &RationalExponent) -> Vec<&'static TableCell> {
    cells()
        .iter()
        .filter(|c| c.k == k && c.exponent == *e)
        .collect()
}
