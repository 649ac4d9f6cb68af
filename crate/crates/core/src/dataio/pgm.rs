//! Portable graymap (`P2` ASCII and `P5` binary) decoding.

use std::path::Path;

use crate::preprocess::GrayImage;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgmEncoding {
    Ascii,
    Binary,
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl ToString) -> Error {
        Error::parse(format!("byte {}", self.pos), msg)
    }

    /// Skips whitespace and `#` comments.
    fn skip_space(&mut self) {
        while let Some(&b) = self.buf.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.buf.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn uint(&mut self, what: &str) -> Result<u32> {
        self.skip_space();
        let start = self.pos;
        while self.buf.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.buf.get(self.pos) {
                None => self.err(format!("unexpected end of data reading {what}")),
                Some(b) => self.err(format!("expected {what}, found byte 0x{b:02x}")),
            });
        }
        std::str::from_utf8(&self.buf[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(format!("byte {start}"), format!("{what} out of range")))
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { buf: bytes, pos: 0 };
    let encoding = match bytes.get(..2) {
        Some(b"P2") => PgmEncoding::Ascii,
        Some(b"P5") => PgmEncoding::Binary,
        _ => return Err(cur.err("bad magic, expected P2 or P5")),
    };
    cur.pos = 2;
    let width = cur.uint("width")? as usize;
    let height = cur.uint("height")? as usize;
    let maxval = cur.uint("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.err(format!("degenerate dimensions {width}x{height}")));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(cur.err(format!("maxval {maxval} outside 1..=65535")));
    }
    let count = width * height;
    let mut raw = Vec::with_capacity(count);
    match encoding {
        PgmEncoding::Ascii => {
            for i in 0..count {
                let at = cur.pos;
                let v = cur.uint(&format!("pixel {i} of {count}"))?;
                if v > maxval {
                    return Err(Error::parse(
                        format!("byte {at}"),
                        format!("pixel {v} exceeds maxval {maxval}"),
                    ));
                }
                raw.push(v);
            }
        }
        PgmEncoding::Binary => {
            if !cur.buf.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
                return Err(cur.err("expected single whitespace before raster"));
            }
            cur.pos += 1;
            let width_bytes = if maxval < 256 { 1 } else { 2 };
            let need = count * width_bytes;
            let data = &bytes[cur.pos..];
            if data.len() < need {
                return Err(Error::parse(
                    format!("byte {}", bytes.len()),
                    format!("raster truncated: {} of {need} bytes", data.len()),
                ));
            }
            for (i, chunk) in data[..need].chunks_exact(width_bytes).enumerate() {
                let v = if width_bytes == 1 {
                    chunk[0] as u32
                } else {
                    u16::from_be_bytes([chunk[0], chunk[1]]) as u32
                };
                if v > maxval {
                    return Err(Error::parse(
                        format!("byte {}", cur.pos + i * width_bytes),
                        format!("pixel {v} exceeds maxval {maxval}"),
                    ));
                }
                raw.push(v);
            }
        }
    }
    let scale = maxval as f64;
    GrayImage::new(height, width, raw.into_iter().map(|v| v as f64 / scale).collect())
}

pub fn load_pgm(path: &Path) -> Result<GrayImage> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_pgm(&bytes).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

/// Encodes raw samples (row-major, `height * width` values ≤ `maxval`).
pub fn encode_pgm(width: usize, height: usize, maxval: u16, values: &[u16], encoding: PgmEncoding) -> Vec<u8> {
    assert_eq!(values.len(), width * height);
    let mut out = match encoding {
        PgmEncoding::Ascii => format!("P2\n{width} {height}\n{maxval}\n").into_bytes(),
        PgmEncoding::Binary => format!("P5\n{width} {height}\n{maxval}\n").into_bytes(),
    };
    match encoding {
        PgmEncoding::Ascii => {
            for row in values.chunks(width) {
                let line: Vec<String> = row.iter().map(ToString::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        PgmEncoding::Binary => {
            for &v in values {
                if maxval < 256 {
                    out.push(v as u8);
                } else {
                    out.extend_from_slice(&v.to_be_bytes());
                }
            }
        }
    }
    out
}
