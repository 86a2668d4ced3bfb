//! Binary PGM (P5, maxval 255) reading and writing.
//!
//! The reader accepts `#` comments anywhere in the header before the
//! maxval token; the writer never emits them.

use crate::error::{Error, Result};
use crate::image::GrayImage;

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = match self.bytes.get(self.pos) {
                Some(b) => format!("byte 0x{b:02x}"),
                None => "end of stream".to_string(),
            };
            return Err(Error::MalformedHeader(format!("expected {what}, found {found}")));
        }
        // Only ASCII digits were consumed.
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<u32>()
            .map_err(|_| Error::MalformedHeader(format!("{what} {text} out of range")))
    }
}

/// Decodes a binary PGM stream.
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        let found = String::from_utf8_lossy(&bytes[..bytes.len().min(2)]).into_owned();
        return Err(Error::MagicMismatch(found));
    }
    let mut cursor = HeaderCursor { bytes, pos: 2 };
    if !cursor.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::MalformedHeader("missing whitespace after magic".into()));
    }
    let width = cursor.number("width")?;
    let height = cursor.number("height")?;
    let maxval = cursor.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    if maxval != 255 {
        return Err(Error::MaxvalUnsupported(maxval));
    }
    match bytes.get(cursor.pos) {
        Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
        Some(_) => {
            return Err(Error::MalformedHeader(
                "maxval must be followed by a single whitespace byte".into(),
            ))
        }
        None => {
            return Err(Error::TruncatedPayload {
                expected: width as usize * height as usize,
                found: 0,
            })
        }
    }
    let (width, height) = (width as usize, height as usize);
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader(format!("{width}x{height} is too large")))?;
    let payload = &bytes[cursor.pos..];
    if payload.len() < expected {
        return Err(Error::TruncatedPayload {
            expected,
            found: payload.len(),
        });
    }
    GrayImage::new(width, height, payload[..expected].to_vec())
}

/// Encodes `img` as `P5\n{w} {h}\n255\n` followed by the raw pixels.
pub fn save_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}
