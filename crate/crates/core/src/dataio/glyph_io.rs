//! Glyph text files and sample directories.
//!
//! A glyph file is `label: <A-Z>` followed by 8 lines of 6 characters from
//! `{0, 1}`. A sample directory holds one source per letter, `A.glyph` ..
//! `Z.glyph`, or `A.pgm` .. `Z.pgm` scans that go through the preprocessing
//! pipeline. When both exist for a letter the glyph file wins.

use std::fmt::Write as _;
use std::path::Path;

use super::load_pgm;
use crate::classify::Letter;
use crate::numcore::Scalar;
use crate::preprocess::{
    assemble_sample, glyph_from_gray, BinaryGlyph, PreprocessConfig, TrainingSample, GLYPH_COLS, GLYPH_ROWS,
};
use crate::{Error, Result};

pub fn format_glyph(glyph: &BinaryGlyph) -> String {
    let mut out = format!("label: {}\n", glyph.label());
    for r in 0..GLYPH_ROWS {
        for c in 0..GLYPH_COLS {
            out.push(if glyph.get(r, c) == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_glyph(text: &str) -> Result<BinaryGlyph> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse("line 1", "empty glyph file"))?;
    let label = header
        .strip_prefix("label:")
        .map(str::trim)
        .and_then(|s| {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Letter::from_char(c),
                _ => None,
            }
        })
        .ok_or_else(|| Error::parse("line 1", format!("expected `label: <A-Z>`, found `{header}`")))?;
    let rows: Vec<&str> = lines.map(str::trim_end).filter(|l| !l.is_empty()).collect();
    if rows.len() != GLYPH_ROWS {
        return Err(Error::parse(
            "glyph body",
            format!("expected {GLYPH_ROWS} rows, found {}", rows.len()),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != GLYPH_COLS || !row.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse(
                format!("line {}", i + 2),
                format!("expected {GLYPH_COLS} characters from {{0,1}}, found `{row}`"),
            ));
        }
    }
    BinaryGlyph::from_rows(&rows, label)
}

pub fn read_glyph(path: &Path) -> Result<BinaryGlyph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_glyph(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

pub fn write_glyph(glyph: &BinaryGlyph, path: &Path) -> Result<()> {
    std::fs::write(path, format_glyph(glyph)).map_err(|e| Error::io(path, e))
}

/// Loads and validates a 26-letter sample directory.
pub fn load_sample_dir(dir: &Path, cfg: &PreprocessConfig) -> Result<TrainingSample> {
    if !dir.is_dir() {
        return Err(Error::Validation(format!("{} is not a directory", dir.display())));
    }
    let mut glyphs = Vec::with_capacity(26);
    for letter in Letter::all() {
        let glyph_path = dir.join(format!("{letter}.glyph"));
        let pgm_path = dir.join(format!("{letter}.pgm"));
        let glyph = if glyph_path.is_file() {
            let g = read_glyph(&glyph_path)?;
            if g.label() != letter {
                return Err(Error::Validation(format!(
                    "{} is labelled {}",
                    glyph_path.display(),
                    g.label()
                )));
            }
            g
        } else if pgm_path.is_file() {
            glyph_from_gray(&load_pgm(&pgm_path)?, letter, cfg)?
        } else {
            return Err(Error::Validation(format!(
                "letter {letter} is missing from {} (no {letter}.glyph or {letter}.pgm)",
                dir.display()
            )));
        };
        glyphs.push(glyph);
    }
    assemble_sample(glyphs)
}

/// Writes `A.glyph` .. `Z.glyph` into `dir`, creating it if needed.
pub fn write_sample_dir(sample: &TrainingSample, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for g in sample.glyphs() {
        write_glyph(g, &dir.join(format!("{}.glyph", g.label())))?;
    }
    Ok(())
}

/// The 48x26 sample matrix as 48 lines of 26 space-separated bits.
pub fn write_sample_matrix(sample: &TrainingSample, path: &Path) -> Result<()> {
    let m = sample.matrix::<f64>();
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<&str> = m
            .row(r)
            .iter()
            .map(|&v| if v.to_f64_lossy() == 1.0 { "1" } else { "0" })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}
