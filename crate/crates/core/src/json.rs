//! JSON documents. Fractions are `{"num", "den"}` pairs in lowest terms with a
//! positive denominator; float entries are plain numbers.
//!
//! ```json
//! {"elements": [0, 2]}
//! {"mode": "exact", "entries": [{"num": 0, "den": 1}, {"num": 1, "den": 4}]}
//! {"mode": "symbolic", "entries": [{"num": 0, "den": 1},
//!                                  {"num": 1, "den": 3, "gens": {"b1": {"num": 1, "den": 1}}}]}
//! {"mode": "float", "entries": [0.0, 0.25]}
//! {"m": -3, "r": 1, "N": 4, "s": 2}
//! ```

use std::collections::BTreeMap;

use num::{BigRational, ToPrimitive};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::flags::{Flag, SpectralityVerdict};
use crate::pair::RationalityCertificate;
use crate::spectrum::{FrequencyValue, Gamma, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FracDoc {
    pub num: i64,
    pub den: i64,
}

impl FracDoc {
    pub fn from_rational(r: &BigRational) -> Option<FracDoc> {
        Some(FracDoc { num: r.numer().to_i64()?, den: r.denom().to_i64()? })
    }

    pub fn to_rational(self) -> std::result::Result<BigRational, String> {
        if self.den == 0 {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(self.num.into(), self.den.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    num: i64,
    den: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    gens: BTreeMap<String, FracDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entries {
    Fractions(Vec<EntryDoc>),
    Floats(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaDoc {
    mode: String,
    entries: Entries,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClusterDoc {
    elements: Vec<i64>,
}

impl Serialize for Cluster {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClusterDoc { elements: self.elements().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cluster {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ClusterDoc::deserialize(d)?;
        Cluster::new(&doc.elements).map_err(D::Error::custom)
    }
}

fn too_large(r: &BigRational) -> String {
    format!("fraction {r} does not fit in 64-bit num/den")
}

impl Serialize for Gamma {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = match self.values() {
            None => Entries::Floats(self.floats().expect("float Γ").to_vec()),
            Some(values) => {
                let mut out = Vec::with_capacity(values.len());
                for v in values {
                    let f = FracDoc::from_rational(&v.rational)
                        .ok_or_else(|| S::Error::custom(too_large(&v.rational)))?;
                    let mut gens = BTreeMap::new();
                    for (g, c) in &v.gens {
                        let fc = FracDoc::from_rational(c)
                            .ok_or_else(|| S::Error::custom(too_large(c)))?;
                        gens.insert(g.clone(), fc);
                    }
                    out.push(EntryDoc { num: f.num, den: f.den, gens });
                }
                Entries::Fractions(out)
            }
        };
        GammaDoc { mode: self.mode().to_string(), entries }.serialize(s)
    }
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    match s {
        "exact" => Ok(Mode::Exact),
        "symbolic" => Ok(Mode::Symbolic),
        "float" => Ok(Mode::Float),
        other => Err(format!("unknown mode {other:?}")),
    }
}

fn gamma_from_doc(doc: GammaDoc) -> std::result::Result<Gamma, String> {
    let mode = parse_mode(&doc.mode)?;
    let err = |e: Error| e.to_string();
    match (mode, doc.entries) {
        (Mode::Float, Entries::Floats(v)) => Gamma::float(v).map_err(err),
        (Mode::Float, Entries::Fractions(v)) if v.is_empty() => Gamma::float(Vec::new()).map_err(err),
        (_, Entries::Floats(v)) if v.is_empty() => Gamma::make(Vec::new(), mode).map_err(err),
        (Mode::Float, Entries::Fractions(_)) => {
            Err("float mode entries must be numbers".into())
        }
        (_, Entries::Floats(_)) => Err(format!("{mode} mode entries must be {{num, den}} objects")),
        (_, Entries::Fractions(v)) => {
            let mut values = Vec::with_capacity(v.len());
            for e in v {
                let mut fv = FrequencyValue::rational(FracDoc { num: e.num, den: e.den }.to_rational()?);
                for (g, c) in e.gens {
                    fv = fv.with_gen(&g, c.to_rational()?);
                }
                values.push(fv);
            }
            Gamma::make(values, mode).map_err(err)
        }
    }
}

impl<'de> Deserialize<'de> for Gamma {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        gamma_from_doc(GammaDoc::deserialize(d)?).map_err(D::Error::custom)
    }
}

fn schema(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("schema violation: {e}"))
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(schema)
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidInput(format!("cannot serialize: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Parses a Cluster, Gamma, Flag, certificate or spectrality verdict and
/// serializes it again; the identity on canonical documents.
pub fn round_trip(text: &str) -> Result<String> {
    let v: Value = serde_json::from_str(text).map_err(schema)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("expected a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    if has("status") {
        render(&serde_json::from_value::<SpectralityVerdict>(v).map_err(schema)?)
    } else if has("verdict") {
        render(&serde_json::from_value::<RationalityCertificate>(v).map_err(schema)?)
    } else if has("elements") {
        render(&serde_json::from_value::<Cluster>(v).map_err(schema)?)
    } else if has("mode") {
        render(&serde_json::from_value::<Gamma>(v).map_err(schema)?)
    } else if has("m") {
        render(&serde_json::from_value::<Flag>(v).map_err(schema)?)
    } else {
        Err(Error::InvalidInput("unrecognized document kind".into()))
    }
}
