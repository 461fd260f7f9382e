//! Ideals: generator lists bound to a ring, with a Groebner-basis status flag.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};
use crate::vars::{VarName, VarTable};

/// How far the generator list is known to be a reduced Groebner basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbStatus {
    /// Plain generators, no basis property claimed.
    None,
    /// Reduced Groebner basis valid up to the given total degree
    /// (degree-truncated run on a homogeneous ideal).
    UpToDegree(u32),
    /// Full reduced Groebner basis.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    gb: GbStatus,
}

impl Ideal {
    /// New ideal from generators; zero generators are dropped.
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .inspect(|g| {
                assert!(g.ring().same_ring(&ring), "generator over a different ring");
            })
            .collect();
        Ideal { ring, generators, gb: GbStatus::None }
    }

    pub(crate) fn with_status(ring: Ring, generators: Vec<Polynomial>, gb: GbStatus) -> Self {
        Ideal { ring, generators, gb }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn gb_status(&self) -> GbStatus {
        self.gb
    }

    pub fn is_reduced_gb(&self) -> bool {
        self.gb == GbStatus::Full
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "vars": self.ring.table.names().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "order": order_to_json(&self.ring),
            "reduced_gb": self.is_reduced_gb(),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(doc: &Value) -> Result<Ideal> {
        let vars = doc["vars"]
            .as_array()
            .ok_or_else(|| Error::Parse("ideal document missing `vars`".into()))?;
        let names: Vec<VarName> = vars
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| Error::Parse("variable name must be a string".into()))
                    .and_then(parse_var_name)
            })
            .collect::<Result<_>>()?;
        let table = VarTable::new(names)?;
        let order = order_from_json(&doc["order"], &table)?;
        let ring = Ring::new(table, order);
        let gens = doc["generators"]
            .as_array()
            .ok_or_else(|| Error::Parse("ideal document missing `generators`".into()))?
            .iter()
            .map(|g| {
                g.as_str()
                    .ok_or_else(|| Error::Parse("generator must be a string".into()))
                    .and_then(|s| ring.parse(s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens))
    }
}

fn order_to_json(ring: &Ring) -> Value {
    match &ring.order {
        MonomialOrder::DegRevLex => json!("degrevlex"),
        MonomialOrder::Lex => json!("lex"),
        MonomialOrder::Block { elim } => json!({
            "block": elim
                .iter()
                .map(|&p| ring.table.name(p as usize).to_string())
                .collect::<Vec<_>>(),
        }),
    }
}

fn order_from_json(v: &Value, table: &std::sync::Arc<VarTable>) -> Result<MonomialOrder> {
    match v {
        Value::String(s) if s == "degrevlex" => Ok(MonomialOrder::DegRevLex),
        Value::String(s) if s == "lex" => Ok(MonomialOrder::Lex),
        Value::Object(o) => {
            let elim = o
                .get("block")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("block order needs a `block` array".into()))?;
            let positions = elim
                .iter()
                .map(|e| {
                    e.as_str()
                        .ok_or_else(|| Error::Parse("block variable must be a string".into()))
                        .and_then(parse_var_name)
                        .and_then(|n| table.require(&n))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MonomialOrder::block(positions))
        }
        _ => Err(Error::Parse(format!("unknown order descriptor {v}"))),
    }
}

pub(crate) fn parse_var_name(s: &str) -> Result<VarName> {
    let bytes = s.as_bytes();
    if bytes.is_empty() || !bytes[0].is_ascii_lowercase() {
        return Err(Error::Parse(format!("bad variable name `{s}`")));
    }
    let base = bytes[0] as char;
    let rest = &s[1..];
    if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let idx = inner
            .split(',')
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad index in `{s}`"))))
            .collect::<Result<Vec<u32>>>()?;
        Ok(VarName::Indexed(base, idx))
    } else {
        let i = rest
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad variable name `{s}`")))?;
        Ok(VarName::Numbered(base, i))
    }
}
