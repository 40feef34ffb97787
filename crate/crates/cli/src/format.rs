//! Key and signature files: an 8-byte header followed by the raw body.
//!
//! ```text
//! "HTSG" | version | backend | paramset | kind | body
//! ```

use std::sync::Arc;

use htsig::hash::{self, HashBackend};
use htsig::params::ParamSet;

use crate::error::{CliError, Result};

pub const MAGIC: &[u8; 4] = b"HTSG";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 8;

const PARAMSET_IDS: [(u8, &str); 7] = [
    (0x01, "128s"),
    (0x02, "128f"),
    (0x03, "192s"),
    (0x04, "192f"),
    (0x05, "256s"),
    (0x06, "256f"),
    (0x7f, "toy"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    PublicKey = 0x01,
    SecretKey = 0x02,
    Signature = 0x03,
}

impl Kind {
    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x01 => Some(Kind::PublicKey),
            0x02 => Some(Kind::SecretKey),
            0x03 => Some(Kind::Signature),
            _ => None,
        }
    }

    pub fn body_len(self, p: &ParamSet) -> usize {
        match self {
            Kind::PublicKey => p.pk_bytes,
            Kind::SecretKey => p.sk_bytes,
            Kind::Signature => p.sig_bytes,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Kind::PublicKey => "public key",
            Kind::SecretKey => "secret key",
            Kind::Signature => "signature",
        }
    }
}

pub fn paramset_id(p: &ParamSet) -> u8 {
    PARAMSET_IDS
        .iter()
        .find(|(_, name)| *name == p.name)
        .map(|(id, _)| *id)
        .expect("every built-in parameter set has an id")
}

fn paramset_by_id(id: u8) -> Option<&'static ParamSet> {
    let (_, name) = PARAMSET_IDS.iter().find(|(i, _)| *i == id)?;
    ParamSet::lookup(name).ok()
}

#[derive(Debug, Clone)]
pub struct Header {
    pub backend: Arc<dyn HashBackend>,
    pub params: &'static ParamSet,
    pub kind: Kind,
}

impl Header {
    pub fn same_scheme(&self, other: &Header) -> bool {
        self.backend.wire_code() == other.backend.wire_code() && std::ptr::eq(self.params, other.params)
    }
}

pub fn encode(backend: &dyn HashBackend, p: &ParamSet, kind: Kind, body: &[u8]) -> Vec<u8> {
    debug_assert_eq!(body.len(), kind.body_len(p));
    let mut out = Vec::with_capacity(HEADER_LEN + body.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[VERSION, backend.wire_code(), paramset_id(p), kind as u8]);
    out.extend_from_slice(body);
    out
}

/// Parses a file image; the body length must match the header exactly.
pub fn decode(bytes: &[u8]) -> Result<(Header, &[u8])> {
    let bad = |msg: String| Err(CliError::Malformed(msg));
    if bytes.len() < HEADER_LEN {
        return bad(format!("file too short for header ({} bytes)", bytes.len()));
    }
    if &bytes[..4] != MAGIC {
        return bad("bad magic".into());
    }
    if bytes[4] != VERSION {
        return bad(format!("unsupported format version {}", bytes[4]));
    }
    let Some(backend) = hash::BackendRegistry::default().by_wire_code(bytes[5]) else {
        return bad(format!("unknown backend id {:#04x}", bytes[5]));
    };
    let Some(params) = paramset_by_id(bytes[6]) else {
        return bad(format!("unknown parameter set id {:#04x}", bytes[6]));
    };
    let Some(kind) = Kind::from_byte(bytes[7]) else {
        return bad(format!("unknown file kind {:#04x}", bytes[7]));
    };
    let body = &bytes[HEADER_LEN..];
    if body.len() != kind.body_len(params) {
        return bad(format!(
            "{} body is {} bytes, {} {} needs {}",
            kind.describe(),
            body.len(),
            params.name,
            kind.describe(),
            kind.body_len(params)
        ));
    }
    Ok((Header { backend, params, kind }, body))
}

/// Accepts either the binary image or its hex encoding.
pub fn decode_file_bytes(raw: &[u8]) -> Result<Vec<u8>> {
    if raw.starts_with(MAGIC) {
        return Ok(raw.to_vec());
    }
    let text = std::str::from_utf8(raw).map_err(|_| CliError::Malformed("neither binary nor hex".into()))?;
    let compact: String = text.split_whitespace().collect();
    hex::decode(compact).map_err(|e| CliError::Malformed(format!("bad hex: {e}")))
}
