//! JSON documents: classes (`*.form.json`), Lie algebras (`*.lie.json`)
//! and generator lists. Every document carries `"schema": 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::forms::{SymForm, WedgeForm};
use crate::h3::{H3Class, H3Components};
use crate::lie::{Bracket, LieAlgebraFp, MetricForm};
use crate::matrix::PrimeFieldMatrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub idx: Vec<usize>,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub schema: u32,
    pub p: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic: Option<Vec<Term>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::InvalidDocument(format!("line {}, column {}: {e}", e.line(), e.column()))
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA_VERSION {
        return Err(Error::InvalidDocument(format!(
            "unsupported schema {schema}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

fn check_terms(terms: &[Term], n: usize, len: usize, strict: bool, what: &str) -> Result<()> {
    for (pos, t) in terms.iter().enumerate() {
        let bad = |msg: &str| Error::InvalidDocument(format!("{what}[{pos}]: {msg}"));
        if t.idx.len() != len {
            return Err(bad(&format!("expected {len} indices")));
        }
        if let Some(&i) = t.idx.iter().find(|&&i| i >= n) {
            return Err(bad(&format!("index {i} out of range for n = {n}")));
        }
        let ordered = t.idx.windows(2).all(|w| if strict { w[0] < w[1] } else { w[0] <= w[1] });
        if !ordered {
            let rel = if strict { "strictly increasing" } else { "non-decreasing" };
            return Err(bad(&format!("indices must be {rel}")));
        }
    }
    Ok(())
}

fn to_terms(terms: Vec<(Vec<usize>, u8)>) -> Vec<Term> {
    terms.into_iter().map(|(idx, c)| Term { idx, c: c as i64 }).collect()
}

impl FormDocument {
    pub fn from_class(omega: &H3Class) -> Self {
        let (alt, sym, cubic) = match omega.components() {
            H3Components::Odd { alt, sym } => (Some(to_terms(alt.terms())), Some(to_terms(sym.terms())), None),
            H3Components::Two { coset } => (None, None, Some(to_terms(coset.representative().terms()))),
        };
        Self {
            schema: SCHEMA_VERSION,
            p: omega.field().p(),
            n: omega.dim(),
            alt,
            sym,
            cubic,
        }
    }

    pub fn to_class(&self) -> Result<H3Class> {
        check_schema(self.schema)?;
        let field = PrimeField::new(self.p)?;
        let n = self.n;
        if n == 0 {
            return Err(Error::InvalidDocument("n must be positive".into()));
        }
        let refs = |terms: &[Term]| -> Vec<(Vec<usize>, i64)> { terms.iter().map(|t| (t.idx.clone(), t.c)).collect() };
        if field.is_two() {
            if self.alt.is_some() || self.sym.is_some() {
                return Err(Error::InvalidDocument("p = 2 classes use 'cubic' only".into()));
            }
            let cubic = self.cubic.clone().unwrap_or_default();
            check_terms(&cubic, n, 3, false, "cubic")?;
            let owned = refs(&cubic);
            let r: Vec<(&[usize], i64)> = owned.iter().map(|(i, c)| (&i[..], *c)).collect();
            H3Class::from_cubic(&SymForm::from_terms(field, n, 3, &r)?)
        } else {
            if self.cubic.is_some() {
                return Err(Error::InvalidDocument("odd p classes use 'alt' and 'sym'".into()));
            }
            let alt = self.alt.clone().unwrap_or_default();
            let sym = self.sym.clone().unwrap_or_default();
            check_terms(&alt, n, 3, true, "alt")?;
            check_terms(&sym, n, 2, false, "sym")?;
            let (a, s) = (refs(&alt), refs(&sym));
            let ar: Vec<(&[usize], i64)> = a.iter().map(|(i, c)| (&i[..], *c)).collect();
            let sr: Vec<(&[usize], i64)> = s.iter().map(|(i, c)| (&i[..], *c)).collect();
            H3Class::from_parts(WedgeForm::from_terms(field, n, 3, &ar)?, SymForm::from_terms(field, n, 2, &sr)?)
        }
    }

    pub fn load(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(parse_err)?;
        doc.to_class()?;
        Ok(doc)
    }

    pub fn dump(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTerm {
    pub k: usize,
    pub c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<BracketTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDocument {
    pub schema: u32,
    pub p: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<i64>>>,
}

impl LieDocument {
    pub fn to_algebra(&self) -> Result<LieAlgebraFp> {
        check_schema(self.schema)?;
        let field = PrimeField::new(self.p)?;
        if self.basis.len() != self.dim {
            return Err(Error::InvalidDocument(format!(
                "basis lists {} names for dim {}",
                self.basis.len(),
                self.dim
            )));
        }
        for (pos, b) in self.brackets.iter().enumerate() {
            let out = [b.i, b.j].into_iter().chain(b.terms.iter().map(|t| t.k)).find(|&x| x >= self.dim);
            if let Some(x) = out {
                return Err(Error::InvalidDocument(format!("brackets[{pos}]: index {x} out of range")));
            }
        }
        let brackets: Vec<Bracket> = self
            .brackets
            .iter()
            .map(|b| Bracket {
                i: b.i,
                j: b.j,
                terms: b.terms.iter().map(|t| (t.k, t.c)).collect(),
            })
            .collect();
        LieAlgebraFp::new(field, self.dim, self.basis.clone(), &brackets)
    }

    /// The supplied form, if any.
    pub fn to_form(&self) -> Result<Option<MetricForm>> {
        let field = PrimeField::new(self.p)?;
        self.form.as_ref().map(|rows| MetricForm::new(field, self.dim, rows)).transpose()
    }

    pub fn from_algebra(g: &LieAlgebraFp, form: Option<&MetricForm>) -> Self {
        let mut brackets = Vec::new();
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let terms: Vec<BracketTerm> = g
                    .bracket(i, j)
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c != 0)
                    .map(|(k, c)| BracketTerm { k, c: c as i64 })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketEntry { i, j, terms });
                }
            }
        }
        Self {
            schema: SCHEMA_VERSION,
            p: g.field().p(),
            dim: g.dim(),
            basis: g.names().to_vec(),
            brackets,
            form: form.map(|b| b.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()),
        }
    }

    pub fn load(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(parse_err)?;
        doc.to_algebra()?;
        doc.to_form()?;
        Ok(doc)
    }

    pub fn dump(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// A list of matrices for generator closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsDocument {
    pub schema: u32,
    pub p: u32,
    pub n: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}

impl GeneratorsDocument {
    pub fn from_matrices(gens: &[PrimeFieldMatrix]) -> Result<Self> {
        let first = gens.first().ok_or_else(|| Error::InvalidDocument("no generators".into()))?;
        Ok(Self {
            schema: SCHEMA_VERSION,
            p: first.field().p(),
            n: first.dim(),
            generators: gens
                .iter()
                .map(|g| (0..g.dim()).map(|i| (0..g.dim()).map(|j| g.get(i, j) as i64).collect()).collect())
                .collect(),
        })
    }

    pub fn to_matrices(&self) -> Result<Vec<PrimeFieldMatrix>> {
        check_schema(self.schema)?;
        let field = PrimeField::new(self.p)?;
        self.generators
            .iter()
            .enumerate()
            .map(|(pos, rows)| {
                if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                    return Err(Error::InvalidDocument(format!(
                        "generators[{pos}]: expected a {0}x{0} matrix",
                        self.n
                    )));
                }
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                PrimeFieldMatrix::from_rows(field, &refs)
            })
            .collect()
    }

    pub fn load(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(parse_err)?;
        doc.to_matrices()?;
        Ok(doc)
    }

    pub fn dump(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{killing_form, sl2};

    #[test]
    fn form_round_trip() {
        let f3 = PrimeField::new(3).unwrap();
        let w = H3Class::from_parts(
            WedgeForm::basis_element(f3, 3, &[0, 1, 2]).unwrap(),
            SymForm::from_terms(f3, 3, 2, &[(&[0, 1], 1)]).unwrap(),
        )
        .unwrap();
        let doc = FormDocument::from_class(&w);
        let back = FormDocument::load(&doc.dump()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_class().unwrap(), w);
    }

    #[test]
    fn form_validation() {
        let bad = r#"{"schema": 1, "p": 3, "n": 3, "alt": [{"idx": [0, 2, 1], "c": 1}]}"#;
        assert!(matches!(FormDocument::load(bad), Err(Error::InvalidDocument(_))));
        let range = r#"{"schema": 1, "p": 3, "n": 2, "sym": [{"idx": [0, 2], "c": 1}]}"#;
        assert!(matches!(FormDocument::load(range), Err(Error::InvalidDocument(_))));
        let wrong = r#"{"schema": 1, "p": 2, "n": 3, "alt": []}"#;
        assert!(FormDocument::load(wrong).is_err());
        let schema = r#"{"schema": 2, "p": 3, "n": 3}"#;
        assert!(FormDocument::load(schema).is_err());
        let syntax = "{\"schema\": 1,\n \"p\": }";
        let Err(Error::InvalidDocument(msg)) = FormDocument::load(syntax) else { panic!() };
        assert!(msg.starts_with("line 2"), "{msg}");
    }

    #[test]
    fn lie_round_trip() {
        let f5 = PrimeField::new(5).unwrap();
        let g = sl2(f5).unwrap();
        let b = killing_form(&g).unwrap();
        let doc = LieDocument::from_algebra(&g, Some(&b));
        let back = LieDocument::load(&doc.dump()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_algebra().unwrap(), g);
        assert_eq!(back.to_form().unwrap().unwrap(), b);
    }

    #[test]
    fn generators_round_trip() {
        let f2 = PrimeField::new(2).unwrap();
        let gens = vec![PrimeFieldMatrix::from_rows(f2, &[&[1, 1], &[0, 1]]).unwrap()];
        let doc = GeneratorsDocument::from_matrices(&gens).unwrap();
        assert_eq!(GeneratorsDocument::load(&doc.dump()).unwrap().to_matrices().unwrap(), gens);
    }
}
