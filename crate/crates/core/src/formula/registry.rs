//! Named historical and published formulas, stored exactly as published.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{product_check, ArctanTerm, MachinFormula};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub formula: MachinFormula,
    /// Published measure, if any.
    pub expected_measure: Option<f64>,
    /// Whether `expected_measure` uses the reduced (powers-of-ten) convention.
    pub reduced: bool,
    /// Absolute tolerance matching the printed precision.
    pub tolerance: f64,
    pub note: &'static str,
}

struct Raw {
    name: &'static str,
    /// `(coeff, reciprocal of the argument)`.
    terms: &'static [(&'static str, &'static str)],
    measure: Option<f64>,
    reduced: bool,
    tolerance: f64,
    note: &'static str,
}

const STD_TOL: f64 = 1e-5;

const RAW: &[Raw] = &[
    Raw {
        name: "machin",
        terms: &[("4", "5"), ("-1", "239")],
        measure: Some(1.85113),
        reduced: false,
        tolerance: STD_TOL,
        note: "Machin, 1706",
    },
    Raw {
        name: "gauss",
        terms: &[("12", "18"), ("8", "57"), ("-5", "239")],
        measure: Some(1.78661),
        reduced: false,
        tolerance: STD_TOL,
        note: "Gauss",
    },
    Raw {
        name: "euler",
        terms: &[("1", "2"), ("1", "3")],
        measure: None,
        reduced: false,
        tolerance: STD_TOL,
        note: "Euler/Hutton two-term identity",
    },
    Raw {
        name: "eq11",
        terms: &[
            ("83", "107"),
            ("17", "1710"),
            ("-22", "103697"),
            ("-24", "2513489"),
            ("-44", "18280007883"),
            ("12", "7939642926390344818"),
            ("22", "3054211727257704725384731479018"),
        ],
        measure: Some(1.34085),
        reduced: false,
        tolerance: STD_TOL,
        note: "Wetherfield's formula with both quotients removed by double splitting",
    },
    Raw {
        name: "eq12",
        terms: &[("8", "10"), ("-1", "147153121/1758719")],
        measure: None,
        reduced: false,
        tolerance: STD_TOL,
        note: "two-term seed for k = 4",
    },
    Raw {
        name: "eq14",
        terms: &[
            ("83", "107"),
            ("17", "1710"),
            ("-22", "103697"),
            ("-12", "2513489/2"),
            ("-22", "18280007883/2"),
        ],
        measure: Some(1.26579),
        reduced: false,
        tolerance: STD_TOL,
        note: "Wetherfield, 2004",
    },
    Raw {
        name: "eq15",
        terms: &[
            ("83", "107"),
            ("17", "1710"),
            ("-22", "103697"),
            ("-12", "1256744"),
            ("-22", "9140003941"),
            ("12", "3158812219818"),
            ("22", "167079344092131066905"),
        ],
        measure: Some(1.39524),
        reduced: false,
        tolerance: STD_TOL,
        note: "Wetherfield's formula with both quotients removed by floor steps",
    },
    Raw {
        name: "eq16",
        terms: &[
            ("8", "10"),
            ("-1", "84"),
            ("-1", "21342"),
            ("-1", "991268848"),
            ("-1", "193018008592515208050"),
            ("-1", "197967899896401851763240424238758988350338"),
            (
                "-1",
                "117573868168175352930277752844194126767991915008537018836932014293678271636885792397",
            ),
        ],
        measure: None,
        reduced: false,
        tolerance: STD_TOL,
        note: "integerized k = 4 seed",
    },
    Raw {
        name: "kanada-a",
        terms: &[("44", "57"), ("7", "239"), ("-12", "682"), ("24", "12943")],
        measure: Some(1.58604),
        reduced: false,
        tolerance: STD_TOL,
        note: "Takano; first of Kanada's self-checking pair",
    },
    Raw {
        name: "kanada-b",
        terms: &[("12", "49"), ("32", "57"), ("-5", "239"), ("12", "110443")],
        measure: Some(1.7799),
        reduced: false,
        tolerance: 1e-4,
        note: "Stormer; second of Kanada's self-checking pair",
    },
    Raw {
        name: "eq23",
        terms: &[
            ("7", "10"),
            ("2", "50"),
            ("4", "100"),
            ("1", "682"),
            ("4", "1000"),
            ("3", "1303"),
            ("-4", "90109"),
        ],
        measure: Some(1.96434),
        reduced: true,
        tolerance: STD_TOL,
        note: "Wrench, 1938",
    },
    Raw {
        name: "eq24",
        terms: &[
            ("7", "10"),
            ("8", "100"),
            ("1", "682"),
            ("4", "1000"),
            ("3", "1303"),
            ("-4", "90109"),
            ("-2", "500150"),
        ],
        measure: Some(1.55121),
        reduced: true,
        tolerance: STD_TOL,
        note: "Wrench, 1938",
    },
    Raw {
        name: "klingenstierna",
        terms: &[
            ("8", "10"),
            ("-1", "100"),
            ("-1", "515"),
            ("-1", "371498882/3583"),
        ],
        measure: Some(1.06813),
        reduced: true,
        tolerance: STD_TOL,
        note: "Klingenstierna's formula rewritten around 1/10, 1/100 and 1/515",
    },
];

fn build(raw: &Raw) -> Result<RegistryEntry> {
    let terms = raw
        .terms
        .iter()
        .map(|(c, b)| {
            let c: Rational = c.parse()?;
            let b: Rational = b.parse()?;
            ArctanTerm::reciprocal(c, &b)
        })
        .collect::<Result<Vec<_>>>()?;
    let formula = MachinFormula::new(terms)?;
    if !product_check(&formula).pass {
        return Err(Error::Registry(raw.name.to_string()));
    }
    Ok(RegistryEntry {
        name: raw.name,
        formula,
        expected_measure: raw.measure,
        reduced: raw.reduced,
        tolerance: raw.tolerance,
        note: raw.note,
    })
}

pub fn registry_names() -> Vec<&'static str> {
    RAW.iter().map(|r| r.name).collect()
}

/// Looks up and validates a named formula.
pub fn registry_get(name: &str) -> Result<RegistryEntry> {
    let raw = RAW
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::NotFound(name.to_string()))?;
    build(raw)
}

/// All entries, each validated.
pub fn registry_list() -> Result<Vec<RegistryEntry>> {
    RAW.iter().map(build).collect()
}
