//! JSON key files.
//!
//! ```text
//! { "version": 1, "scheme": "graph-iso", "public": {..}, "secret": {..}, "created": 0 }
//! ```
//!
//! Graph-valued fields hold the canonical byte encoding in standard base64;
//! modular integers are decimal strings. Public files omit `secret`.

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::codec::CodecError;
use crate::graph::{Coloring, Graph, Permutation, VertexEmbedding};
use crate::schemes::{
    ColoringScheme, ColoringStatement, GraphIso, GraphIsoStatement, ModExp, ModExpStatement,
    SubgraphIso, SubgraphStatement, SubgraphWitness,
};
use crate::sigma::{KeyPair, Scheme, SchemeId};

pub const KEYFILE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum KeyFileError {
    #[error("invalid key file json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported key file version {0}")]
    UnsupportedVersion(u32),
    #[error("key file has no secret part")]
    MissingSecret,
    #[error("bad field '{field}': {reason}")]
    Field { field: &'static str, reason: String },
    #[error("invalid statement: {0}")]
    Statement(CodecError),
    #[error("secret does not match the public statement")]
    InvalidKeyPair,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    scheme: SchemeId,
    public: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    secret: Option<Value>,
    created: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphIsoPublic {
    gamma: String,
    gamma1: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgraphPublic {
    gamma: String,
    lambda1: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringPublic {
    gamma: String,
    k: u16,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModExpPublic {
    p: String,
    x: String,
    u: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermutationSecret {
    phi: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgraphSecret {
    embedding: String,
    phi: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringSecret {
    coloring: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModExpSecret {
    s: String,
}

/// A statement of any of the four schemes.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyStatement {
    GraphIso(GraphIsoStatement),
    SubgraphIso(SubgraphStatement),
    Coloring(ColoringStatement),
    ModExp(ModExpStatement),
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyKeyPair {
    GraphIso(KeyPair<GraphIso>),
    SubgraphIso(KeyPair<SubgraphIso>),
    Coloring(KeyPair<ColoringScheme>),
    ModExp(KeyPair<ModExp>),
}

impl AnyStatement {
    pub fn scheme(&self) -> SchemeId {
        match self {
            AnyStatement::GraphIso(_) => SchemeId::GraphIso,
            AnyStatement::SubgraphIso(_) => SchemeId::SubgraphIso,
            AnyStatement::Coloring(_) => SchemeId::Coloring,
            AnyStatement::ModExp(_) => SchemeId::ModExp,
        }
    }

    fn public_value(&self) -> Value {
        let v = match self {
            AnyStatement::GraphIso(st) => serde_json::to_value(GraphIsoPublic {
                gamma: B64.encode(st.gamma.to_bytes()),
                gamma1: B64.encode(st.gamma1.to_bytes()),
            }),
            AnyStatement::SubgraphIso(st) => serde_json::to_value(SubgraphPublic {
                gamma: B64.encode(st.gamma.to_bytes()),
                lambda1: B64.encode(st.lambda1.to_bytes()),
            }),
            AnyStatement::Coloring(st) => serde_json::to_value(ColoringPublic {
                gamma: B64.encode(st.gamma.to_bytes()),
                k: st.k,
            }),
            AnyStatement::ModExp(st) => serde_json::to_value(ModExpPublic {
                p: st.p.to_string(),
                x: st.x.to_string(),
                u: st.u.to_string(),
            }),
        };
        v.expect("plain structs serialize")
    }

    /// Public key file contents.
    pub fn to_public_json(&self, created: u64) -> String {
        envelope_json(self.scheme(), self.public_value(), None, created)
    }

    /// Reads the public part of a public or private key file.
    pub fn from_json(json: &str) -> Result<Self, KeyFileError> {
        let env = parse_envelope(json)?;
        parse_statement(env.scheme, env.public)
    }
}

impl AnyKeyPair {
    pub fn scheme(&self) -> SchemeId {
        self.statement().scheme()
    }

    pub fn statement(&self) -> AnyStatement {
        match self {
            AnyKeyPair::GraphIso(kp) => AnyStatement::GraphIso(kp.statement.clone()),
            AnyKeyPair::SubgraphIso(kp) => AnyStatement::SubgraphIso(kp.statement.clone()),
            AnyKeyPair::Coloring(kp) => AnyStatement::Coloring(kp.statement.clone()),
            AnyKeyPair::ModExp(kp) => AnyStatement::ModExp(kp.statement.clone()),
        }
    }

    fn secret_value(&self) -> Value {
        let v = match self {
            AnyKeyPair::GraphIso(kp) => serde_json::to_value(PermutationSecret {
                phi: B64.encode(kp.witness.to_bytes()),
            }),
            AnyKeyPair::SubgraphIso(kp) => serde_json::to_value(SubgraphSecret {
                embedding: B64.encode(kp.witness.embedding.to_bytes()),
                phi: B64.encode(kp.witness.phi.to_bytes()),
            }),
            AnyKeyPair::Coloring(kp) => serde_json::to_value(ColoringSecret {
                coloring: B64.encode(kp.witness.to_bytes()),
            }),
            AnyKeyPair::ModExp(kp) => serde_json::to_value(ModExpSecret {
                s: kp.witness.to_string(),
            }),
        };
        v.expect("plain structs serialize")
    }

    /// Private key file contents: public part plus secret.
    pub fn to_private_json(&self, created: u64) -> String {
        let st = self.statement();
        envelope_json(st.scheme(), st.public_value(), Some(self.secret_value()), created)
    }

    /// Reads a private key file; the secret is checked against the statement.
    pub fn from_json(json: &str) -> Result<Self, KeyFileError> {
        let env = parse_envelope(json)?;
        let secret = env.secret.ok_or(KeyFileError::MissingSecret)?;
        let kp = match parse_statement(env.scheme, env.public)? {
            AnyStatement::GraphIso(st) => {
                let s: PermutationSecret = typed(secret)?;
                let phi = decode_with("phi", &s.phi, Permutation::from_bytes)?;
                AnyKeyPair::GraphIso(pair(&GraphIso, st, phi)?)
            }
            AnyStatement::SubgraphIso(st) => {
                let s: SubgraphSecret = typed(secret)?;
                let witness = SubgraphWitness {
                    embedding: decode_with("embedding", &s.embedding, VertexEmbedding::from_bytes)?,
                    phi: decode_with("phi", &s.phi, Permutation::from_bytes)?,
                };
                AnyKeyPair::SubgraphIso(pair(&SubgraphIso::default(), st, witness)?)
            }
            AnyStatement::Coloring(st) => {
                let s: ColoringSecret = typed(secret)?;
                let k = st.k;
                let col = decode_with("coloring", &s.coloring, |b| Coloring::from_bytes(b, k))?;
                AnyKeyPair::Coloring(pair(&ColoringScheme, st, col)?)
            }
            AnyStatement::ModExp(st) => {
                let s: ModExpSecret = typed(secret)?;
                let exp = decimal("s", &s.s)?;
                AnyKeyPair::ModExp(pair(&ModExp, st, exp)?)
            }
        };
        Ok(kp)
    }
}

impl From<KeyPair<GraphIso>> for AnyKeyPair {
    fn from(kp: KeyPair<GraphIso>) -> Self {
        AnyKeyPair::GraphIso(kp)
    }
}

impl From<KeyPair<SubgraphIso>> for AnyKeyPair {
    fn from(kp: KeyPair<SubgraphIso>) -> Self {
        AnyKeyPair::SubgraphIso(kp)
    }
}

impl From<KeyPair<ColoringScheme>> for AnyKeyPair {
    fn from(kp: KeyPair<ColoringScheme>) -> Self {
        AnyKeyPair::Coloring(kp)
    }
}

impl From<KeyPair<ModExp>> for AnyKeyPair {
    fn from(kp: KeyPair<ModExp>) -> Self {
        AnyKeyPair::ModExp(kp)
    }
}

fn pair<S: Scheme>(scheme: &S, st: S::Statement, w: S::Witness) -> Result<KeyPair<S>, KeyFileError> {
    KeyPair::new(scheme, st, w).map_err(|_| KeyFileError::InvalidKeyPair)
}

fn envelope_json(scheme: SchemeId, public: Value, secret: Option<Value>, created: u64) -> String {
    let env = Envelope { version: KEYFILE_VERSION, scheme, public, secret, created };
    let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
    s.push('\n');
    s
}

fn parse_envelope(json: &str) -> Result<Envelope, KeyFileError> {
    let env: Envelope = serde_json::from_str(json)?;
    if env.version != KEYFILE_VERSION {
        return Err(KeyFileError::UnsupportedVersion(env.version));
    }
    Ok(env)
}

fn typed<T: DeserializeOwned>(v: Value) -> Result<T, KeyFileError> {
    Ok(serde_json::from_value(v)?)
}

fn decode_with<T>(
    field: &'static str,
    text: &str,
    decode: impl FnOnce(&[u8]) -> Result<T, CodecError>,
) -> Result<T, KeyFileError> {
    let bytes = B64
        .decode(text)
        .map_err(|e| KeyFileError::Field { field, reason: e.to_string() })?;
    decode(&bytes).map_err(|e| KeyFileError::Field { field, reason: e.to_string() })
}

fn decimal(field: &'static str, text: &str) -> Result<BigUint, KeyFileError> {
    text.parse()
        .map_err(|_| KeyFileError::Field { field, reason: format!("not a decimal integer: {text:?}") })
}

// Field-level parse, then a round trip through the scheme's statement codec
// so the same validation applies as for a statement received on the wire.
fn parse_statement(scheme: SchemeId, public: Value) -> Result<AnyStatement, KeyFileError> {
    fn recheck<S: Scheme>(s: &S, st: S::Statement) -> Result<S::Statement, KeyFileError> {
        s.decode_statement(&s.encode_statement(&st)).map_err(KeyFileError::Statement)
    }
    Ok(match scheme {
        SchemeId::GraphIso => {
            let p: GraphIsoPublic = typed(public)?;
            let st = GraphIsoStatement {
                gamma: decode_with("gamma", &p.gamma, Graph::from_bytes)?,
                gamma1: decode_with("gamma1", &p.gamma1, Graph::from_bytes)?,
            };
            AnyStatement::GraphIso(recheck(&GraphIso, st)?)
        }
        SchemeId::SubgraphIso => {
            let p: SubgraphPublic = typed(public)?;
            let st = SubgraphStatement {
                gamma: decode_with("gamma", &p.gamma, Graph::from_bytes)?,
                lambda1: decode_with("lambda1", &p.lambda1, Graph::from_bytes)?,
            };
            AnyStatement::SubgraphIso(recheck(&SubgraphIso::default(), st)?)
        }
        SchemeId::Coloring => {
            let p: ColoringPublic = typed(public)?;
            let st = ColoringStatement {
                gamma: decode_with("gamma", &p.gamma, Graph::from_bytes)?,
                k: p.k,
            };
            AnyStatement::Coloring(recheck(&ColoringScheme, st)?)
        }
        SchemeId::ModExp => {
            let p: ModExpPublic = typed(public)?;
            let st = ModExpStatement {
                p: decimal("p", &p.p)?,
                x: decimal("x", &p.x)?,
                u: decimal("u", &p.u)?,
            };
            AnyStatement::ModExp(recheck(&ModExp, st)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn all_keys() -> Vec<AnyKeyPair> {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        vec![
            GraphIso.keygen(6, 0.5, &mut rng).unwrap().into(),
            SubgraphIso::default().keygen(4, 7, &mut rng).unwrap().into(),
            ColoringScheme.keygen(7, 3, &mut rng).unwrap().into(),
            ModExp.keygen(&BigUint::from(1009u32), &mut rng).unwrap().into(),
        ]
    }

    #[test]
    fn private_round_trip() {
        for kp in all_keys() {
            let json = kp.to_private_json(0);
            assert_eq!(AnyKeyPair::from_json(&json).unwrap(), kp);
            assert_eq!(AnyStatement::from_json(&json).unwrap(), kp.statement());
        }
    }

    #[test]
    fn public_file_has_no_secret() {
        for kp in all_keys() {
            let json = kp.statement().to_public_json(7);
            let v: Value = serde_json::from_str(&json).unwrap();
            assert!(v.get("secret").is_none());
            assert_eq!(v["created"], 7);
            assert_eq!(v["scheme"], kp.scheme().name());
            assert_eq!(AnyStatement::from_json(&json).unwrap(), kp.statement());
            assert!(matches!(AnyKeyPair::from_json(&json), Err(KeyFileError::MissingSecret)));
        }
    }

    #[test]
    fn modexp_fields_are_decimal() {
        let kp = ModExp.from_parts(BigUint::from(23u8), BigUint::from(5u8), BigUint::from(3u8)).unwrap();
        let json = AnyKeyPair::from(kp).to_private_json(0);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["public"]["p"], "23");
        assert_eq!(v["public"]["u"], "10");
        assert_eq!(v["secret"]["s"], "3");
    }

    #[test]
    fn wrong_secret_is_refused() {
        let kp = ModExp.from_parts(BigUint::from(23u8), BigUint::from(5u8), BigUint::from(3u8)).unwrap();
        let json = AnyKeyPair::from(kp).to_private_json(0).replace("\"s\": \"3\"", "\"s\": \"5\"");
        assert!(matches!(AnyKeyPair::from_json(&json), Err(KeyFileError::InvalidKeyPair)));
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(AnyStatement::from_json("{"), Err(KeyFileError::Json(_))));
        let kp = &all_keys()[0];
        let json = kp.to_private_json(0).replace("\"version\": 1", "\"version\": 9");
        assert!(matches!(AnyStatement::from_json(&json), Err(KeyFileError::UnsupportedVersion(9))));
        let v: Value = serde_json::from_str(&kp.to_private_json(0)).unwrap();
        let mut bad = v.clone();
        bad["public"]["gamma"] = Value::from("!!!");
        assert!(matches!(
            AnyStatement::from_json(&bad.to_string()),
            Err(KeyFileError::Field { field: "gamma", .. })
        ));
        let mut composite = v;
        composite["scheme"] = Value::from("modexp");
        assert!(matches!(AnyStatement::from_json(&composite.to_string()), Err(KeyFileError::Json(_))));
        let not_prime = r#"{"version":1,"scheme":"modexp","public":{"p":"21","x":"2","u":"4"},"created":0}"#;
        assert!(matches!(AnyStatement::from_json(not_prime), Err(KeyFileError::Statement(_))));
    }
}
