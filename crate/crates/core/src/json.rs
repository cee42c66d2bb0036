//! JSON encodings of structures and expansions. Vertices are 1-based on the wire;
//! rationals travel as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, Rational, UniPolynomial};
use crate::decomp::Breakdown;
use crate::error::{Error, Result};
use crate::ncsym::{NCSymBasis, NCSymElement};
use crate::structures::{Digraph, Graph, Poset};
use crate::symfn::{QSymBasis, QSymElement, SymBasis, SymElement};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphDoc {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    n: usize,
    strict: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    covers: bool,
}

/// A serialized expansion in any of the three algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionDoc {
    pub degree: usize,
    pub basis: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub key: String,
    pub coeff: String,
}

fn decode<'a, T: Deserialize<'a>>(what: &'static str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(what, &snippet(text), e.to_string()))
}

fn snippet(text: &str) -> String {
    let t = text.trim();
    match t.char_indices().nth(80) {
        Some((i, _)) => format!("{}…", &t[..i]),
        None => t.to_string(),
    }
}

/// 1-based pairs to 0-based, naming the field on failure.
fn zero_based(field: &'static str, n: usize, pairs: &[[usize; 2]]) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&[a, b]| {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::parse(field, &format!("[{a},{b}]"), format!("vertex {x} outside 1..={n}")));
                }
            }
            Ok((a - 1, b - 1))
        })
        .collect()
}

fn one_based(pairs: Vec<(usize, usize)>) -> Vec<[usize; 2]> {
    pairs.into_iter().map(|(a, b)| [a + 1, b + 1]).collect()
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphDoc = decode("graph", text)?;
    Graph::new(doc.n, &zero_based("edges", doc.n, &doc.edges)?)
}

pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphDoc {
        n: g.n(),
        edges: one_based(g.edges()),
    };
    serde_json::to_string(&doc).expect("plain data")
}

pub fn digraph_from_json(text: &str) -> Result<Digraph> {
    let doc: DigraphDoc = decode("digraph", text)?;
    Digraph::new(doc.n, &zero_based("arcs", doc.n, &doc.arcs)?)
}

pub fn digraph_to_json(x: &Digraph) -> String {
    let doc = DigraphDoc {
        n: x.n(),
        arcs: one_based(x.arcs()),
    };
    serde_json::to_string(&doc).expect("plain data")
}

/// With `"covers": true` the pairs are taken as generating relations and closed transitively.
pub fn poset_from_json(text: &str) -> Result<Poset> {
    let doc: PosetDoc = decode("poset", text)?;
    let pairs = zero_based("strict", doc.n, &doc.strict)?;
    if doc.covers {
        Poset::from_covers(doc.n, &pairs)
    } else {
        Poset::new(doc.n, &pairs)
    }
}

pub fn poset_to_json(p: &Poset) -> String {
    let doc = PosetDoc {
        n: p.n(),
        strict: one_based(p.relations()),
        covers: false,
    };
    serde_json::to_string(&doc).expect("plain data")
}

fn terms_doc<'a, K: ToString + 'a>(terms: impl Iterator<Item = (&'a K, &'a Rational)>) -> Vec<TermDoc> {
    terms
        .map(|(k, c)| TermDoc {
            key: k.to_string(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn sym_doc(f: &SymElement) -> ExpansionDoc {
    ExpansionDoc {
        degree: f.degree(),
        basis: f.basis().letter().to_string(),
        terms: terms_doc(f.terms().iter()),
    }
}

pub fn qsym_doc(f: &QSymElement) -> ExpansionDoc {
    ExpansionDoc {
        degree: f.degree(),
        basis: f.basis().letter().to_string(),
        terms: terms_doc(f.terms().iter()),
    }
}

pub fn ncsym_doc(f: &NCSymElement) -> ExpansionDoc {
    ExpansionDoc {
        degree: f.degree(),
        basis: f.basis().letter().to_string(),
        terms: terms_doc(f.terms().iter()),
    }
}

fn parsed_terms<K: std::str::FromStr<Err = Error>>(doc: &ExpansionDoc) -> Result<Vec<(K, Rational)>> {
    doc.terms
        .iter()
        .map(|t| Ok((t.key.parse()?, parse_rational(&t.coeff)?)))
        .collect()
}

/// Parses an expansion document into whichever algebra its basis letter names.
#[derive(Clone, Debug, PartialEq)]
pub enum Expansion {
    Sym(SymElement),
    QSym(QSymElement),
    NCSym(NCSymElement),
}

impl Expansion {
    pub fn doc(&self) -> ExpansionDoc {
        match self {
            Expansion::Sym(f) => sym_doc(f),
            Expansion::QSym(f) => qsym_doc(f),
            Expansion::NCSym(f) => ncsym_doc(f),
        }
    }

    /// `noncommutative` picks `NCSym` over `Sym`; the two share basis letters.
    pub fn from_doc(doc: &ExpansionDoc, noncommutative: bool) -> Result<Self> {
        if let Ok(b) = doc.basis.parse::<QSymBasis>() {
            return Ok(Expansion::QSym(QSymElement::from_terms(doc.degree, b, parsed_terms(doc)?)?));
        }
        if noncommutative {
            let b: NCSymBasis = doc.basis.parse()?;
            Ok(Expansion::NCSym(NCSymElement::from_terms(doc.degree, b, parsed_terms(doc)?)?))
        } else {
            let b: SymBasis = doc.basis.parse()?;
            Ok(Expansion::Sym(SymElement::from_terms(doc.degree, b, parsed_terms(doc)?)?))
        }
    }
}

pub fn expansion_from_json(text: &str, noncommutative: bool) -> Result<Expansion> {
    Expansion::from_doc(&decode("expansion", text)?, noncommutative)
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data")
}

#[derive(Serialize)]
struct PolyDoc {
    polynomial: String,
    coeffs: Vec<String>,
}

pub fn poly_doc(p: &UniPolynomial) -> serde_json::Value {
    serde_json::to_value(PolyDoc {
        polynomial: p.to_string(),
        coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
    })
    .expect("plain data")
}

#[derive(Serialize)]
struct RawTermDoc {
    arcs: Vec<[usize; 2]>,
    lambda: String,
    coeff: i64,
}

#[derive(Serialize)]
struct GroupedTermDoc {
    lambda: String,
    coeff: i64,
}

#[derive(Serialize)]
struct BreakdownDoc {
    n: usize,
    raw: Vec<RawTermDoc>,
    grouped: Vec<GroupedTermDoc>,
}

pub fn breakdown_doc(b: &Breakdown) -> serde_json::Value {
    let doc = BreakdownDoc {
        n: b.n,
        raw: b
            .terms
            .iter()
            .map(|t| RawTermDoc {
                arcs: one_based(t.arcs.clone()),
                lambda: t.lambda.to_string(),
                coeff: t.coeff,
            })
            .collect(),
        grouped: b
            .grouped()
            .into_iter()
            .map(|(l, c)| GroupedTermDoc {
                lambda: l.to_string(),
                coeff: c,
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn structures_round_trip() {
        let g = graph_from_json(r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
        let x = digraph_from_json(r#"{"n":2,"arcs":[[1,2],[2,2]]}"#).unwrap();
        assert_eq!(digraph_from_json(&digraph_to_json(&x)).unwrap(), x);
        let p = poset_from_json(r#"{"n":3,"strict":[[1,2],[2,3]],"covers":true}"#).unwrap();
        assert_eq!(p, Poset::chain(3));
        assert_eq!(poset_from_json(&poset_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn malformed_input_names_the_field() {
        let e = graph_from_json(r#"{"n":3,"edges":[[0,2]]}"#).unwrap_err();
        assert!(e.to_string().contains("edges"), "{e}");
        let e = digraph_from_json(r#"{"n":3}"#).unwrap_err();
        assert!(e.to_string().contains("arcs"), "{e}");
        assert!(e.is_input_error());
        assert!(poset_from_json(r#"{"n":2,"strict":[[1,2],[2,1]]}"#).is_err());
    }

    #[test]
    fn expansions_round_trip() {
        let f = SymElement::from_terms(
            3,
            SymBasis::PowerSum,
            [("2,1".parse().unwrap(), rat(-3) / rat(2)), ("1,1,1".parse().unwrap(), rat(1))],
        )
        .unwrap();
        let text = to_pretty(&sym_doc(&f));
        assert!(text.contains("\"-3/2\""));
        let back = expansion_from_json(&text, false).unwrap();
        assert_eq!(back, Expansion::Sym(f));
        assert_eq!(to_pretty(&back.doc()), text);
        let w = NCSymElement::basis_element(NCSymBasis::PowerSum, "12/3".parse().unwrap());
        let text = to_pretty(&ncsym_doc(&w));
        assert_eq!(expansion_from_json(&text, true).unwrap(), Expansion::NCSym(w));
        let q = QSymElement::basis_element(QSymBasis::Fundamental, "{1}@n=3".parse().unwrap());
        let text = to_pretty(&qsym_doc(&q));
        assert_eq!(expansion_from_json(&text, false).unwrap(), Expansion::QSym(q));
    }
}
