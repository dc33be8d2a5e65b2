//! JSON input and output formats.
//!
//! Alphabets:
//! `{"kind":"cyclic","modulus":m}`,
//! `{"kind":"product","factors":[...]}` or
//! `{"kind":"table","order":q,"table":[[...]],"label":"..."}`.
//!
//! Codes: `{"alphabet":A,"length":n,"codewords":[[...]]}`, or with
//! `"generators"` in place of `"codewords"` and `"group":true`. Coordinates
//! in all emitted index lists are 1-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::code::{Code, GroupCode, Word};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupKind};
use crate::isometry::Isometry;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlphabetSpec {
    Cyclic {
        modulus: usize,
    },
    Product {
        factors: Vec<AlphabetSpec>,
    },
    Table {
        order: usize,
        table: Vec<Vec<Elem>>,
        #[serde(default)]
        label: Option<String>,
    },
}

impl AlphabetSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            AlphabetSpec::Cyclic { modulus } => FiniteGroup::cyclic(*modulus),
            AlphabetSpec::Product { factors } => {
                let groups = factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?;
                FiniteGroup::product(&groups)
            }
            AlphabetSpec::Table { order, table, label } => {
                if table.len() != *order {
                    return Err(Error::DimensionMismatch {
                        expected: *order,
                        found: table.len(),
                    });
                }
                FiniteGroup::from_table(table, label.clone().unwrap_or_else(|| format!("table of order {order}")))
            }
        }
    }

    pub fn of(g: &FiniteGroup) -> Self {
        match g.kind() {
            GroupKind::Cyclic { modulus } => AlphabetSpec::Cyclic { modulus: *modulus },
            GroupKind::Product { factors } => AlphabetSpec::Product {
                factors: factors.iter().map(AlphabetSpec::of).collect(),
            },
            GroupKind::Table => AlphabetSpec::Table {
                order: g.order(),
                table: g.table_rows(),
                label: Some(g.label().to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub alphabet: AlphabetSpec,
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codewords: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub group: bool,
}

/// A parsed code, kept as a group code when the file asks for one.
#[derive(Clone, Debug)]
pub enum LoadedCode {
    Plain(Code),
    Group(GroupCode),
}

impl LoadedCode {
    pub fn code(&self) -> &Code {
        match self {
            LoadedCode::Plain(c) => c,
            LoadedCode::Group(g) => g.as_code(),
        }
    }

    pub fn group(&self) -> Option<&GroupCode> {
        match self {
            LoadedCode::Group(g) => Some(g),
            LoadedCode::Plain(_) => None,
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    let (line, column) = (e.line(), e.column());
    // serde_json appends the position, which is reported separately.
    let text = e.to_string();
    let suffix = format!(" at line {line} column {column}");
    let message = text.strip_suffix(&suffix).unwrap_or(&text).to_string();
    Error::Parse { line, column, message }
}

fn to_words(rows: &[Vec<Elem>]) -> Vec<Word> {
    rows.iter().map(|r| Word::new(r.clone())).collect()
}

impl CodeFile {
    pub fn load(&self) -> Result<LoadedCode> {
        let g = Arc::new(self.alphabet.build()?);
        match (&self.codewords, &self.generators) {
            (Some(_), Some(_)) => Err(Error::InvalidInput("give either codewords or generators, not both".into())),
            (None, None) => Err(Error::InvalidInput("missing field `codewords` or `generators`".into())),
            (None, Some(gens)) => {
                if !self.group {
                    return Err(Error::InvalidInput("generators require \"group\": true".into()));
                }
                Ok(LoadedCode::Group(GroupCode::generate(g, self.length, &to_words(gens))?))
            }
            (Some(words), None) => {
                let code = Code::new(g, self.length, to_words(words))?;
                if self.group {
                    Ok(LoadedCode::Group(GroupCode::new(code)?))
                } else {
                    Ok(LoadedCode::Plain(code))
                }
            }
        }
    }

    pub fn of(code: &Code, group: bool) -> Self {
        CodeFile {
            alphabet: AlphabetSpec::of(code.alphabet()),
            length: code.length(),
            codewords: Some(code.words().iter().map(|w| w.symbols().to_vec()).collect()),
            generators: None,
            group,
        }
    }
}

pub fn parse_code(text: &str) -> Result<LoadedCode> {
    let file: CodeFile = serde_json::from_str(text).map_err(parse_error)?;
    file.load()
}

pub fn parse_alphabet(text: &str) -> Result<FiniteGroup> {
    let spec: AlphabetSpec = serde_json::from_str(text).map_err(parse_error)?;
    spec.build()
}

pub fn code_to_value(code: &Code, group: bool) -> Value {
    serde_json::to_value(CodeFile::of(code, group)).expect("code files serialize")
}

pub fn code_to_string(code: &Code, group: bool) -> String {
    serde_json::to_string(&CodeFile::of(code, group)).expect("code files serialize")
}

/// An isometry with 1-based `sigma`. Under `"pull"`, `y_j = f_j(x_{σ(j)})`;
/// under `"push"`, `y_{σ(t)} = x_t`.
pub fn isometry_to_value(iso: &Isometry, convention: &str, verified_hom: Option<bool>) -> Value {
    let mut v = json!({
        "sigma": iso.equivalence().to_one_based(),
        "config": iso.configuration().maps(),
        "convention": convention,
    });
    if let Some(h) = verified_hom {
        v["verified_hom"] = json!(h);
    }
    v
}

pub fn decomposition_to_value(dec: &Decomposition, group: bool) -> Value {
    json!({
        "blocks": dec.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "components": dec.components.iter().map(|c| code_to_value(c, group)).collect::<Vec<_>>(),
        "isotypes": dec.isotypes.iter().map(|t| json!({
            "rep": t.representative + 1,
            "alpha": t.multiplicity(),
            "members": t.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "witness": isometry_to_value(&dec.witness, "pull", None),
        "certificates": dec.reasons.iter().map(|r| r.tag()).collect::<Vec<_>>(),
    })
}
