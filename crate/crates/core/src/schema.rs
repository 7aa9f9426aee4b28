//! JSON schemas for eigenvalue-model operators and symbols.
//!
//! Numbers may be given as JSON numbers or as decimal strings; strings parse
//! to the nearest double, so equal strings give bit-equal values and the
//! exact symmetry and axis tests in [`crate::spectralmodel`] stay meaningful.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::spectralmodel::{Exception, IndexSet, LawTerm, SpectralLaw, SpectralOperator};
use crate::symbolcalc::{ClassicalSymbol, HomogComponent, LogSymbol, Periodic, Symbol};
use crate::{Cplx, Error, Real, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Num {
    F(Real),
    S(String),
}

impl Num {
    fn get(&self) -> Result<Real> {
        match self {
            Num::F(v) => Ok(*v),
            Num::S(s) => s
                .trim()
                .parse::<Real>()
                .map_err(|_| Error::Schema(format!("not a decimal number: {s:?}"))),
        }
    }
}

fn cplx(pair: &[Num; 2]) -> Result<Cplx> {
    Ok(Cplx::new(pair[0].get()?, pair[1].get()?))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Real(Num),
    Complex([Num; 2]),
}

impl Scalar {
    fn get(&self) -> Result<Cplx> {
        match self {
            Scalar::Real(v) => Ok(Cplx::new(v.get()?, 0.0)),
            Scalar::Complex(p) => cplx(p),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LawTermJson {
    c: [Num; 2],
    sgn: u8,
    pow: i32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExceptionJson {
    n: i64,
    value: [Num; 2],
    #[serde(default = "one")]
    mult: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorJson {
    kind: String,
    order: u32,
    #[serde(default)]
    index_set: Option<IndexSet>,
    law: Vec<LawTermJson>,
    #[serde(default)]
    exceptions: Vec<ExceptionJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FourierJson {
    fourier: Vec<[Num; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentJson {
    deg: Scalar,
    plus: FourierJson,
    minus: FourierJson,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolJson {
    kind: String,
    order: Scalar,
    #[serde(default)]
    gamma: Option<[Num; 2]>,
    #[serde(default)]
    rank: Option<u32>,
    components: Vec<ComponentJson>,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

fn expect_kind(kind: &str, want: &str) -> Result<()> {
    if kind != want {
        return Err(Error::Schema(format!("expected kind {want:?}, got {kind:?}")));
    }
    Ok(())
}

/// Parses `{"kind":"spectral","order":m,"index_set":…,"law":[…],"exceptions":[…]}`.
pub fn parse_operator(text: &str) -> Result<SpectralOperator> {
    let j: OperatorJson = parse_json(text)?;
    expect_kind(&j.kind, "spectral")?;
    let terms = j
        .law
        .iter()
        .map(|t| Ok(LawTerm::new(cplx(&t.c)?, t.sgn, t.pow)))
        .collect::<Result<Vec<_>>>()?;
    let law = SpectralLaw::new(j.order, terms)?;
    let mut exceptions = BTreeMap::new();
    for e in &j.exceptions {
        let prev = exceptions.insert(
            e.n,
            Exception {
                value: cplx(&e.value)?,
                mult: e.mult,
            },
        );
        if prev.is_some() {
            return Err(Error::Schema(format!("duplicate exception at index {}", e.n)));
        }
    }
    let index_set = j
        .index_set
        .unwrap_or_else(|| SpectralOperator::default_index_set(j.order));
    SpectralOperator::new(law, index_set, exceptions)
}

fn pair(c: Cplx) -> Value {
    json!([c.re, c.im])
}

pub fn operator_to_json(op: &SpectralOperator) -> Value {
    json!({
        "kind": "spectral",
        "order": op.order(),
        "index_set": op.index_set(),
        "law": op.law().terms().iter().map(|t| json!({
            "c": pair(t.coeff), "sgn": t.sgn, "pow": t.pow
        })).collect::<Vec<_>>(),
        "exceptions": op.exceptions().iter().map(|(n, e)| json!({
            "n": n, "value": pair(e.value), "mult": e.mult
        })).collect::<Vec<_>>(),
    })
}

fn periodic(f: &FourierJson) -> Result<Periodic> {
    let coeffs = f.fourier.iter().map(cplx).collect::<Result<Vec<_>>>()?;
    Periodic::from_coeffs(coeffs).map_err(|e| Error::Schema(e.to_string()))
}

/// Parses `{"kind":"symbol","order":m,"gamma":[re,im]?,"components":[…]}`.
///
/// A `gamma` entry makes it a log symbol, whose components form the order-0 body.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    let j: SymbolJson = parse_json(text)?;
    expect_kind(&j.kind, "symbol")?;
    if let Some(r) = j.rank {
        if r != 1 {
            return Err(Error::NotScalarSupported(format!("bundle rank {r}")));
        }
    }
    let comps = j
        .components
        .iter()
        .map(|c| Ok(HomogComponent::new(c.deg.get()?, periodic(&c.plus)?, periodic(&c.minus)?)))
        .collect::<Result<Vec<_>>>()?;
    let body = ClassicalSymbol::new(j.order.get()?, comps)?;
    match &j.gamma {
        Some(g) => Ok(Symbol::Log(LogSymbol::new(cplx(g)?, body)?)),
        None => Ok(Symbol::Classical(body)),
    }
}

/// Parses a symbol file and insists on a classical symbol.
pub fn parse_classical(text: &str) -> Result<ClassicalSymbol> {
    match parse_symbol(text)? {
        Symbol::Classical(c) => Ok(c),
        Symbol::Log(_) => Err(Error::Schema("expected a classical symbol, found gamma".into())),
    }
}

fn fourier(p: &Periodic) -> Value {
    json!({ "fourier": p.coeffs().iter().map(|c| pair(*c)).collect::<Vec<_>>() })
}

fn scalar(c: Cplx) -> Value {
    if c.im == 0.0 {
        json!(c.re)
    } else {
        pair(c)
    }
}

pub fn symbol_to_json(sym: &Symbol) -> Value {
    let body = sym.body();
    let mut v = json!({
        "kind": "symbol",
        "order": scalar(body.order()),
        "components": body.components().iter().map(|c| json!({
            "deg": scalar(c.degree), "plus": fourier(&c.plus), "minus": fourier(&c.minus)
        })).collect::<Vec<_>>(),
    });
    if let Symbol::Log(l) = sym {
        v["gamma"] = pair(l.gamma);
    }
    v
}

/// Round-trip helper for callers holding a classical symbol.
pub fn classical_to_json(sym: &ClassicalSymbol) -> Value {
    symbol_to_json(&Symbol::Classical(sym.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    const DC: &str = r#"{"kind":"spectral","order":1,"index_set":"Z",
        "law":[{"c":[1,0],"sgn":1,"pow":1},{"c":["0.2",0],"sgn":0,"pow":0}],
        "exceptions":[{"n":1,"value":["0","1"],"mult":1},{"n":-1,"value":[0,"-1"]}]}"#;

    #[test]
    fn operator_round_trip() {
        let op = parse_operator(DC).unwrap();
        assert_eq!(op.order(), 1);
        assert_eq!(op.eigenvalue(3).unwrap().0, c64(3.2, 0.0));
        assert_eq!(op.eigenvalue(-1).unwrap().0, c64(0.0, -1.0));
        assert!(op.is_symmetric_spectrum());
        let back = parse_operator(&operator_to_json(&op).to_string()).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn default_index_set_follows_order() {
        let t = r#"{"kind":"spectral","order":1,"law":[{"c":[1,0],"sgn":1,"pow":1}]}"#;
        assert_eq!(parse_operator(t).unwrap().index_set(), IndexSet::ZNonzero);
    }

    #[test]
    fn operator_errors() {
        assert!(matches!(parse_operator("{"), Err(Error::Schema(_))));
        assert!(matches!(
            parse_operator(&DC.replace("spectral", "symbol")),
            Err(Error::Schema(_))
        ));
        assert!(matches!(parse_operator(&DC.replace("\"0.2\"", "\"x\"")), Err(Error::Schema(_))));
        assert!(matches!(
            parse_operator(&DC.replace("\"mult\":1", "\"mult\":1,\"extra\":2")),
            Err(Error::Schema(_))
        ));
    }

    const XI_PLUS_F: &str = r#"{"kind":"symbol","order":1,"components":[
        {"deg":1,"plus":{"fourier":[[1,0]]},"minus":{"fourier":[[-1,0]]}},
        {"deg":0,"plus":{"fourier":[[0.1,0],[0.3,0],[0.1,0]]},"minus":{"fourier":[[0.1,0],[0.3,0],[0.1,0]]}}]}"#;

    #[test]
    fn symbol_round_trip() {
        let s = parse_symbol(XI_PLUS_F).unwrap();
        let c = s.body();
        assert_eq!(c.order(), c64(1.0, 0.0));
        assert_eq!(c.bandwidth(), 1);
        assert!((c.component(1).unwrap().plus.eval(0.0) - c64(0.5, 0.0)).norm() < 1e-15);
        let back = parse_symbol(&symbol_to_json(&s).to_string()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn log_symbol_and_errors() {
        let t = r#"{"kind":"symbol","order":0,"gamma":[1,0],"components":[
            {"deg":0,"plus":{"fourier":[[0,0]]},"minus":{"fourier":[[0,-3.14]]}}]}"#;
        assert!(matches!(parse_symbol(t).unwrap(), Symbol::Log(_)));
        assert!(parse_classical(t).is_err());
        assert!(matches!(
            parse_symbol(&XI_PLUS_F.replace("\"order\":1", "\"order\":1,\"rank\":2")),
            Err(Error::NotScalarSupported(_))
        ));
        assert!(matches!(
            parse_symbol(&XI_PLUS_F.replace("\"deg\":0", "\"deg\":-2")),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(
            parse_symbol(&XI_PLUS_F.replace("[[1,0]]", "[[1,0],[0,0]]")),
            Err(Error::Schema(_))
        ));
    }
}
