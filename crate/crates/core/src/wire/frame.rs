use thiserror::Error;

use crate::sigma::{Challenge, SchemeId, Verdict};

/// Version byte carried in `Hello`.
pub const PROTOCOL_VERSION: u8 = 1;

/// Largest payload a stream reader will buffer.
pub const MAX_PAYLOAD: usize = 64 << 20;

pub const HEADER_LEN: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Tag {
    Hello = 0x01,
    PublicKey = 0x02,
    Commitment = 0x03,
    Challenge = 0x04,
    Response = 0x05,
    Verdict = 0x06,
}

impl Tag {
    pub const ALL: [Tag; 6] = [
        Tag::Hello,
        Tag::PublicKey,
        Tag::Commitment,
        Tag::Challenge,
        Tag::Response,
        Tag::Verdict,
    ];

    pub fn from_byte(b: u8) -> Option<Tag> {
        Self::ALL.into_iter().find(|t| *t as u8 == b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("truncated frame: need {needed} more bytes")]
    Truncated { needed: usize },
    #[error("unknown message tag {0:#04x}")]
    UnknownTag(u8),
    #[error("challenge payload must be a single 0x00 or 0x01 byte")]
    InvalidChallengeByte,
    #[error("verdict payload must be a single 0x00 or 0x01 byte")]
    InvalidVerdictByte,
    #[error("payload of {0} bytes is too large")]
    PayloadTooLarge(usize),
    #[error("malformed hello payload")]
    BadHello,
}

/// A tagged frame. Challenge and verdict payloads are validated on
/// construction so every `Message` value is well formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    tag: Tag,
    payload: Vec<u8>,
}

impl Message {
    pub fn new(tag: Tag, payload: Vec<u8>) -> Result<Self, FrameError> {
        match tag {
            Tag::Challenge if !matches!(payload.as_slice(), [0] | [1]) => {
                Err(FrameError::InvalidChallengeByte)
            }
            Tag::Verdict if !matches!(payload.as_slice(), [0] | [1]) => {
                Err(FrameError::InvalidVerdictByte)
            }
            _ => Ok(Message { tag, payload }),
        }
    }

    pub fn hello(hello: Hello) -> Self {
        Message {
            tag: Tag::Hello,
            payload: hello.to_bytes(),
        }
    }

    pub fn public_key(statement: Vec<u8>) -> Self {
        Message { tag: Tag::PublicKey, payload: statement }
    }

    pub fn commitment(bytes: Vec<u8>) -> Self {
        Message { tag: Tag::Commitment, payload: bytes }
    }

    pub fn challenge(c: Challenge) -> Self {
        Message { tag: Tag::Challenge, payload: vec![c.bit()] }
    }

    pub fn response(bytes: Vec<u8>) -> Self {
        Message { tag: Tag::Response, payload: bytes }
    }

    pub fn verdict(v: Verdict) -> Self {
        Message {
            tag: Tag::Verdict,
            payload: vec![u8::from(v.is_accept())],
        }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    pub fn into_payload(self) -> Vec<u8> {
        self.payload
    }

    /// The challenge bit, if this is a challenge frame.
    pub fn as_challenge(&self) -> Option<Challenge> {
        match (self.tag, self.payload.as_slice()) {
            (Tag::Challenge, [0]) => Some(Challenge::Zero),
            (Tag::Challenge, [1]) => Some(Challenge::One),
            _ => None,
        }
    }

    pub fn as_verdict(&self) -> Option<Verdict> {
        match (self.tag, self.payload.as_slice()) {
            (Tag::Verdict, [0]) => Some(Verdict::Reject),
            (Tag::Verdict, [1]) => Some(Verdict::Accept),
            _ => None,
        }
    }
}

/// `[tag][u32 big-endian payload length][payload]`.
pub fn encode_message(m: &Message) -> Result<Vec<u8>, FrameError> {
    let len = u32::try_from(m.payload.len())
        .map_err(|_| FrameError::PayloadTooLarge(m.payload.len()))?;
    let mut out = Vec::with_capacity(HEADER_LEN + m.payload.len());
    out.push(m.tag as u8);
    out.extend_from_slice(&len.to_be_bytes());
    out.extend_from_slice(&m.payload);
    Ok(out)
}

/// Decodes one frame from the front of `bytes`, returning it with the
/// number of bytes consumed. `Truncated` means more input is needed.
pub fn decode_message(bytes: &[u8]) -> Result<(Message, usize), FrameError> {
    let Some(&tag_byte) = bytes.first() else {
        return Err(FrameError::Truncated { needed: HEADER_LEN });
    };
    let tag = Tag::from_byte(tag_byte).ok_or(FrameError::UnknownTag(tag_byte))?;
    if bytes.len() < HEADER_LEN {
        return Err(FrameError::Truncated {
            needed: HEADER_LEN - bytes.len(),
        });
    }
    let len = u32::from_be_bytes([bytes[1], bytes[2], bytes[3], bytes[4]]) as usize;
    let total = HEADER_LEN + len;
    if bytes.len() < total {
        return Err(FrameError::Truncated {
            needed: total - bytes.len(),
        });
    }
    let msg = Message::new(tag, bytes[HEADER_LEN..total].to_vec())?;
    Ok((msg, total))
}

/// Session opener: protocol version, scheme and round count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hello {
    pub version: u8,
    pub scheme: SchemeId,
    pub rounds: u32,
}

impl Hello {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.version, self.scheme.to_byte()];
        out.extend_from_slice(&self.rounds.to_be_bytes());
        out
    }

    pub fn from_bytes(b: &[u8]) -> Result<Self, FrameError> {
        match *b {
            [version, scheme, r0, r1, r2, r3] => Ok(Hello {
                version,
                scheme: SchemeId::from_byte(scheme).ok_or(FrameError::BadHello)?,
                rounds: u32::from_be_bytes([r0, r1, r2, r3]),
            }),
            _ => Err(FrameError::BadHello),
        }
    }
}
