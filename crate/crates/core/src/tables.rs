//! The code tables as bundled CSV data, a registry that rebuilds
//! any listed code by name, and per-row verification.
//!
//! Identifiers:
//!
//! * `C64_i` — four-circulant codes (table 1);
//! * `D64_j` — singly even neighbors of `C64_i` (table 2);
//! * `DD64_j_e` — doubly even neighbors of `D64_j`, `e ∈ {1, 2}` (table 3
//!   where listed, otherwise `C₀ ∪ C₁` for `e = 1` and `C₀ ∪ C₃` for `e = 2`);
//! * `CC64_i_e` — the same for `C64_i`;
//! * `C66_i`, `D66_i` — extensions to length 66 (table 4).

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circulant::{four_circulant_code, FourCirculantSpec};
use crate::classify::{classify_with_details, EnumeratorClass, Family};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::extend::{tsai_extend, ExtensionRecipe};
use crate::gf2::BitVector;
use crate::minweight::min_weight;
use crate::neighbors::{doubly_even_neighbors, neighbor, parse_support};
use crate::shadow::{parity_class, ParityClass};

const TABLE1: &str = include_str!("../../../data/table1.csv");
const TABLE2: &str = include_str!("../../../data/table2.csv");
const TABLE3: &str = include_str!("../../../data/table3.csv");
const TABLE4: &str = include_str!("../../../data/table4.csv");

/// Four-circulant code: first rows of `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct Table1Row {
    pub code: String,
    pub r_a: String,
    pub r_b: String,
    pub beta: i64,
}

/// Singly even neighbor `⟨parent ∩ ⟨x⟩⊥, x⟩` with its `(family, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct Table2Row {
    pub code: String,
    pub parent: String,
    pub support: String,
    pub family: u8,
    pub beta: i64,
}

/// Doubly even neighbor `⟨parent ∩ ⟨x⟩⊥, x⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct Table3Row {
    pub code: String,
    pub parent: String,
    pub support: String,
}

/// Extension `C(x)` of a length-64 parent; `x` is `x_head` followed by 32
/// ones.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct Table4Row {
    pub code: String,
    pub beta: i64,
    pub family: u8,
    pub parent: String,
    pub x_head: String,
}

/// All four tables.
#[derive(Clone, Debug)]
pub struct Tables {
    pub table1: Vec<Table1Row>,
    pub table2: Vec<Table2Row>,
    pub table3: Vec<Table3Row>,
    pub table4: Vec<Table4Row>,
}

fn parse_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|r| {
            r.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                Error::parse(line, e.to_string())
            })
        })
        .collect()
}

pub fn parse_table1(text: &str) -> Result<Vec<Table1Row>> {
    parse_csv(text)
}

pub fn parse_table2(text: &str) -> Result<Vec<Table2Row>> {
    parse_csv(text)
}

pub fn parse_table3(text: &str) -> Result<Vec<Table3Row>> {
    parse_csv(text)
}

pub fn parse_table4(text: &str) -> Result<Vec<Table4Row>> {
    parse_csv(text)
}

impl Tables {
    /// The copies compiled into the library.
    pub fn bundled() -> Self {
        Tables::parse(TABLE1, TABLE2, TABLE3, TABLE4).expect("bundled tables parse")
    }

    pub fn parse(t1: &str, t2: &str, t3: &str, t4: &str) -> Result<Self> {
        Ok(Tables {
            table1: parse_table1(t1)?,
            table2: parse_table2(t2)?,
            table3: parse_table3(t3)?,
            table4: parse_table4(t4)?,
        })
    }

    /// Reads `table1.csv` … `table4.csv` from a directory.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.join(name).display())))
        };
        Tables::parse(&read("table1.csv")?, &read("table2.csv")?, &read("table3.csv")?, &read("table4.csv")?)
    }

    /// Table-2 codes whose shadow has minimum weight 12, i.e. `(W64,2, β=0)`.
    pub fn shadow12_neighbors(&self) -> Vec<&Table2Row> {
        self.table2.iter().filter(|r| r.family == 2 && r.beta == 0).collect()
    }

    /// The doubly even neighbors of `C64_1..3` and of the shadow-12 codes of
    /// table 2, in that order.
    pub fn doubly_even_pool_ids(&self) -> Vec<String> {
        let mut ids = Vec::new();
        for r in self.table1.iter().filter(|r| r.beta == 0) {
            ids.push(format!("C{}_1", r.code));
            ids.push(format!("C{}_2", r.code));
        }
        for r in self.shadow12_neighbors() {
            ids.push(format!("D{}_1", r.code));
            ids.push(format!("D{}_2", r.code));
        }
        ids
    }
}

/// Which table a row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableId {
    One,
    Two,
    Three,
    Four,
}

impl TableId {
    pub fn from_number(n: u8) -> Option<TableId> {
        match n {
            1 => Some(TableId::One),
            2 => Some(TableId::Two),
            3 => Some(TableId::Three),
            4 => Some(TableId::Four),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            TableId::One => 1,
            TableId::Two => 2,
            TableId::Three => 3,
            TableId::Four => 4,
        }
    }
}

/// Builds codes by identifier, caching every code it builds.
pub struct CodeBook {
    tables: Tables,
    cache: HashMap<String, LinearCode>,
}

impl CodeBook {
    pub fn new(tables: Tables) -> Self {
        CodeBook { tables, cache: HashMap::new() }
    }

    pub fn bundled() -> Self {
        CodeBook::new(Tables::bundled())
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    /// How `id` is constructed, in the portable recipe formats.
    pub fn recipe(&self, id: &str) -> Result<String> {
        let t = &self.tables;
        if let Some(r) = t.table1.iter().find(|r| r.code == id) {
            return Ok(format!("{},{}", r.r_a, r.r_b));
        }
        if let Some(r) = t.table2.iter().find(|r| r.code == id) {
            return Ok(format!("{}:{}", r.parent, r.support));
        }
        if let Some(r) = t.table3.iter().find(|r| r.code == id) {
            return Ok(format!("{}:{}", r.parent, r.support));
        }
        if let Some(r) = t.table4.iter().find(|r| r.code == id) {
            return Ok(self.table4_recipe(r)?.to_string());
        }
        let (parent, which) = split_de_id(id)?;
        Ok(format!("{parent}:C0+C{}", if which == 1 { 1 } else { 3 }))
    }

    fn table4_recipe(&self, r: &Table4Row) -> Result<ExtensionRecipe> {
        ExtensionRecipe::from_head(r.parent.clone(), &BitVector::parse_bits(&r.x_head)?)
    }

    pub fn get(&mut self, id: &str) -> Result<LinearCode> {
        if let Some(c) = self.cache.get(id) {
            return Ok(c.clone());
        }
        let code = self.build(id)?;
        self.cache.insert(id.to_string(), code.clone());
        Ok(code)
    }

    fn build(&mut self, id: &str) -> Result<LinearCode> {
        if let Some(r) = self.tables.table1.iter().find(|r| r.code == id) {
            return four_circulant_code(&FourCirculantSpec::parse(&r.r_a, &r.r_b)?, true);
        }
        let listed_neighbor = self
            .tables
            .table2
            .iter()
            .map(|r| (&r.code, &r.parent, &r.support))
            .chain(self.tables.table3.iter().map(|r| (&r.code, &r.parent, &r.support)))
            .find(|(c, _, _)| c.as_str() == id)
            .map(|(_, p, s)| (p.clone(), s.clone()));
        if let Some((parent, support)) = listed_neighbor {
            let p = self.get(&parent)?;
            let x = BitVector::from_support_one_based(p.n(), &parse_support(&support)?)?;
            return neighbor(&p, &x);
        }
        if let Some(r) = self.tables.table4.iter().find(|r| r.code == id).cloned() {
            let recipe = self.table4_recipe(&r)?;
            let p = self.get(&recipe.parent)?;
            return tsai_extend(&p, &recipe.x);
        }
        let (parent, which) = split_de_id(id)?;
        let (a, b) = doubly_even_neighbors(&self.get(&parent)?)?;
        Ok(if which == 1 { a } else { b })
    }
}

/// `DD64_68_2` → (`D64_68`, 2); `CC64_1_1` → (`C64_1`, 1).
fn split_de_id(id: &str) -> Result<(String, u8)> {
    let unknown = || Error::InvalidArgument(format!("unknown code `{id}`"));
    let (head, e) = id.rsplit_once('_').ok_or_else(unknown)?;
    let which: u8 = e.parse().map_err(|_| unknown())?;
    let parent = head
        .strip_prefix("DD")
        .map(|p| format!("D{p}"))
        .or_else(|| head.strip_prefix("CC").map(|p| format!("C{p}")))
        .ok_or_else(unknown)?;
    if which != 1 && which != 2 {
        return Err(unknown());
    }
    Ok((parent, which))
}

/// Outcome of rebuilding one table row.
#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub table: u8,
    pub id: String,
    pub recipe: String,
    pub expected: Option<EnumeratorClass>,
    pub observed: Option<EnumeratorClass>,
    pub min_weight: Option<usize>,
    pub parity: Option<ParityClass>,
    pub failures: Vec<String>,
}

impl RowReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.id)?;
        match (&self.observed, self.parity) {
            (Some(c), _) => write!(f, " {c}")?,
            (None, Some(p)) => write!(f, " {p:?}")?,
            _ => {}
        }
        if let Some(d) = self.min_weight {
            write!(f, " d={d}")?;
        }
        for msg in &self.failures {
            write!(f, "; {msg}")?;
        }
        Ok(())
    }
}

/// Row identifiers of a table, in table order.
pub fn row_ids(tables: &Tables, table: TableId) -> Vec<String> {
    match table {
        TableId::One => tables.table1.iter().map(|r| r.code.clone()).collect(),
        TableId::Two => tables.table2.iter().map(|r| r.code.clone()).collect(),
        TableId::Three => tables.table3.iter().map(|r| r.code.clone()).collect(),
        TableId::Four => tables.table4.iter().map(|r| r.code.clone()).collect(),
    }
}

/// Rebuilds row `id` of `table` and checks self-duality, minimum weight 12,
/// parity, and (for singly even rows) the enumerator family and `β`. Table-3
/// rows must also be one of the two doubly even neighbors of their parent.
pub fn verify_row(book: &mut CodeBook, table: TableId, id: &str) -> Result<RowReport> {
    let t = book.tables();
    let expected = match table {
        TableId::One => t.table1.iter().find(|r| r.code == id).map(|r| {
            Some(EnumeratorClass { family: Family::W64_2, beta: Some(r.beta) })
        }),
        TableId::Two => t.table2.iter().find(|r| r.code == id).map(|r| {
            Family::from_parts(64, r.family).map(|family| EnumeratorClass { family, beta: Some(r.beta) })
        }),
        TableId::Three => t.table3.iter().find(|r| r.code == id).map(|_| None),
        TableId::Four => t.table4.iter().find(|r| r.code == id).map(|r| {
            Family::from_parts(66, r.family).map(|family| EnumeratorClass {
                family,
                beta: (family != Family::W66_2).then_some(r.beta),
            })
        }),
    }
    .ok_or_else(|| Error::InvalidArgument(format!("`{id}` is not in table {}", table.number())))?;
    let mut report = RowReport {
        table: table.number(),
        id: id.to_string(),
        recipe: book.recipe(id)?,
        expected,
        observed: None,
        min_weight: None,
        parity: None,
        failures: Vec::new(),
    };
    let code = match book.get(id) {
        Ok(c) => c,
        Err(e) => {
            report.failures.push(format!("construction failed: {e}"));
            return Ok(report);
        }
    };
    if !code.is_self_dual() {
        report.failures.push("not self-dual".into());
        return Ok(report);
    }
    let parity = parity_class(&code)?;
    report.parity = Some(parity);
    if table == TableId::Three {
        if parity != ParityClass::DoublyEven {
            report.failures.push("not doubly even".into());
        }
        let d = min_weight(&code)?;
        report.min_weight = Some(d);
        if d != 12 {
            report.failures.push(format!("minimum weight {d}, expected 12"));
        }
        let parent_id = &book.tables().table3.iter().find(|r| r.code == id).expect("checked").parent.clone();
        if parity_class(&book.get(parent_id)?)? == ParityClass::SinglyEven {
            let (a, b) = doubly_even_neighbors(&book.get(parent_id)?)?;
            if code != a && code != b {
                report.failures.push(format!("not a doubly even neighbor of {parent_id}"));
            }
        }
        return Ok(report);
    }
    if parity != ParityClass::SinglyEven {
        report.failures.push("not singly even".into());
        return Ok(report);
    }
    match classify_with_details(&code) {
        Ok(details) => {
            report.min_weight = Some(details.min_weight);
            report.observed = Some(details.class);
            if details.min_weight != 12 {
                report.failures.push(format!("minimum weight {}, expected 12", details.min_weight));
            }
            if report.expected != report.observed {
                let show = |c: &Option<EnumeratorClass>| c.map_or("?".to_string(), |c| c.to_string());
                report.failures.push(format!("expected {}", show(&report.expected)));
            }
        }
        Err(e) => report.failures.push(e.to_string()),
    }
    Ok(report)
}

/// [`verify_row`] for every row of a table.
pub fn verify_table(book: &mut CodeBook, table: TableId) -> Result<Vec<RowReport>> {
    row_ids(book.tables(), table)
        .iter()
        .map(|id| verify_row(book, table, id))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_have_all_rows() {
        let t = Tables::bundled();
        assert_eq!(t.table1.len(), 67);
        assert_eq!(t.table2.len(), 27);
        assert_eq!(t.table3.len(), 8);
        assert_eq!(t.table4.len(), 7);
        assert_eq!(t.shadow12_neighbors().len(), 19);
        assert_eq!(t.doubly_even_pool_ids().len(), 44);
        assert_eq!(t.table1[55].code, "C64_56");
        assert_eq!(t.table1[55].beta, 40);
    }

    #[test]
    fn malformed_rows_report_their_line() {
        let err = parse_table1("code,r_a,r_b,beta\nC64_1,0001,0010,0\nC64_2,0001,0010,x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn identifiers() {
        assert_eq!(split_de_id("DD64_68_2").unwrap(), ("D64_68".to_string(), 2));
        assert_eq!(split_de_id("CC64_1_1").unwrap(), ("C64_1".to_string(), 1));
        assert!(split_de_id("X64_1").is_err());
        let book = CodeBook::bundled();
        assert_eq!(book.recipe("D64_138").unwrap(), "C64_24:1,2,3,38,42,43,45,46,48,54,56,57");
        assert_eq!(book.recipe("CC64_2_2").unwrap(), "C64_2:C0+C3");
    }
}
