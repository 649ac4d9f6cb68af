//! Character image preprocessing: threshold to binary, pool down to an 8x6
//! grid, flatten to a 48-vector and assemble 26 letters into a sample.
//!
//! Polarity is fixed throughout: intensity 0 is black ink, 1 is white paper,
//! and binary cells hold 1 for ink.

use serde::{Deserialize, Serialize};

use crate::classify::{one_hot, Letter, NUM_LETTERS};
use crate::numcore::{Matrix, Prng, Scalar, Vector};
use crate::{Error, Result};

pub const GLYPH_ROWS: usize = 8;
pub const GLYPH_COLS: usize = 6;
pub const GLYPH_CELLS: usize = GLYPH_ROWS * GLYPH_COLS;

/// Grayscale image with intensities in `[0, 1]`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    rows: usize,
    cols: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || pixels.len() != rows * cols {
            return Err(Error::shape(
                "GrayImage::new",
                format!("{rows}x{cols}"),
                format!("{} pixels", pixels.len()),
            ));
        }
        if let Some(p) = pixels.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Domain(format!("pixel intensity {p} outside [0, 1]")));
        }
        Ok(Self { rows, cols, pixels })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.pixels[r * self.cols + c]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    /// Pixels strictly darker than this become ink.
    pub threshold: f64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self { threshold: 0.5 }
    }
}

impl PreprocessConfig {
    pub fn new(threshold: f64) -> Result<Self> {
        if !(threshold > 0.0 && threshold < 1.0) {
            return Err(Error::Config(format!("threshold must lie in (0, 1), got {threshold}")));
        }
        Ok(Self { threshold })
    }
}

/// Binary image, 1 = ink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryImage {
    rows: usize,
    cols: usize,
    cells: Vec<u8>,
}

impl BinaryImage {
    pub fn new(rows: usize, cols: usize, cells: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::shape(
                "BinaryImage::new",
                format!("{rows}x{cols}"),
                format!("{} cells", cells.len()),
            ));
        }
        if cells.iter().any(|&c| c > 1) {
            return Err(Error::Domain("binary image cells must be 0 or 1".into()));
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.cols + c]
    }

    /// Ink = black (0.0), background = white (1.0).
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            rows: self.rows,
            cols: self.cols,
            pixels: self.cells.iter().map(|&c| if c == 1 { 0.0 } else { 1.0 }).collect(),
        }
    }
}

pub fn binarize(img: &GrayImage, cfg: &PreprocessConfig) -> BinaryImage {
    BinaryImage {
        rows: img.rows,
        cols: img.cols,
        cells: img.pixels.iter().map(|&p| u8::from(p < cfg.threshold)).collect(),
    }
}

/// Block-mean pooling onto an 8x6 grid. Block `(i, j)` covers rows
/// `floor(i*R/8)..floor((i+1)*R/8)` and the analogous columns; a cell is ink
/// when at least half of its block is ink.
pub fn downsample_8x6(bin: &BinaryImage) -> Result<[u8; GLYPH_CELLS]> {
    if bin.rows < GLYPH_ROWS || bin.cols < GLYPH_COLS {
        return Err(Error::Validation(format!(
            "image is {}x{}, need at least {GLYPH_ROWS}x{GLYPH_COLS}",
            bin.rows, bin.cols
        )));
    }
    let mut out = [0u8; GLYPH_CELLS];
    for i in 0..GLYPH_ROWS {
        let (r0, r1) = (i * bin.rows / GLYPH_ROWS, (i + 1) * bin.rows / GLYPH_ROWS);
        for j in 0..GLYPH_COLS {
            let (c0, c1) = (j * bin.cols / GLYPH_COLS, (j + 1) * bin.cols / GLYPH_COLS);
            let ink: usize = (r0..r1).map(|r| (c0..c1).filter(|&c| bin.get(r, c) == 1).count()).sum();
            let area = (r1 - r0) * (c1 - c0);
            out[i * GLYPH_COLS + j] = u8::from(2 * ink >= area);
        }
    }
    Ok(out)
}

/// An 8x6 binary character with its label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryGlyph {
    cells: [u8; GLYPH_CELLS],
    label: Letter,
}

impl BinaryGlyph {
    pub fn new(cells: [u8; GLYPH_CELLS], label: Letter) -> Result<Self> {
        if cells.iter().any(|&c| c > 1) {
            return Err(Error::Domain("glyph cells must be 0 or 1".into()));
        }
        Ok(Self { cells, label })
    }

    /// Parses 8 rows of 6 characters, `#`/`1` for ink and `.`/`0` for paper.
    pub fn from_rows(rows: &[&str], label: Letter) -> Result<Self> {
        if rows.len() != GLYPH_ROWS {
            return Err(Error::shape("BinaryGlyph::from_rows", GLYPH_ROWS, rows.len()));
        }
        let mut cells = [0u8; GLYPH_CELLS];
        for (r, row) in rows.iter().enumerate() {
            let chars: Vec<char> = row.chars().collect();
            if chars.len() != GLYPH_COLS {
                return Err(Error::Validation(format!(
                    "glyph {label} row {r} has {} cells, expected {GLYPH_COLS}",
                    chars.len()
                )));
            }
            for (c, ch) in chars.into_iter().enumerate() {
                cells[r * GLYPH_COLS + c] = match ch {
                    '#' | '1' => 1,
                    '.' | '0' => 0,
                    other => {
                        return Err(Error::Validation(format!(
                            "glyph {label} row {r}: unexpected `{other}`"
                        )))
                    }
                };
            }
        }
        Ok(Self { cells, label })
    }

    pub fn label(&self) -> Letter {
        self.label
    }

    pub fn cells(&self) -> &[u8; GLYPH_CELLS] {
        &self.cells
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * GLYPH_COLS + c]
    }

    pub fn ink_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 1).count()
    }

    pub fn to_binary_image(&self) -> BinaryImage {
        BinaryImage {
            rows: GLYPH_ROWS,
            cols: GLYPH_COLS,
            cells: self.cells.to_vec(),
        }
    }
}

/// Full pipeline for one scanned character.
pub fn glyph_from_gray(img: &GrayImage, label: Letter, cfg: &PreprocessConfig) -> Result<BinaryGlyph> {
    BinaryGlyph::new(downsample_8x6(&binarize(img, cfg))?, label)
}

/// Row-major flattening: entry `r * 6 + c` is cell `(r, c)`.
pub fn reshape_48<T: Scalar>(glyph: &BinaryGlyph) -> Vector<T> {
    Vector::from_vec(
        glyph
            .cells
            .iter()
            .map(|&c| if c == 1 { T::one() } else { T::zero() })
            .collect(),
    )
}

/// Inverse of [`reshape_48`]; entries must be exactly 0 or 1.
pub fn unflatten<T: Scalar>(v: &Vector<T>, label: Letter) -> Result<BinaryGlyph> {
    if v.len() != GLYPH_CELLS {
        return Err(Error::shape("unflatten", GLYPH_CELLS, v.len()));
    }
    let mut cells = [0u8; GLYPH_CELLS];
    for (cell, &x) in cells.iter_mut().zip(v.iter()) {
        *cell = if x == T::one() {
            1
        } else if x == T::zero() {
            0
        } else {
            return Err(Error::Domain(format!("non-binary entry {x}")));
        };
    }
    Ok(BinaryGlyph { cells, label })
}

/// Flips every cell independently with probability `flip_prob`.
pub fn noise_perturb(glyph: &BinaryGlyph, flip_prob: f64, prng: &mut Prng) -> Result<BinaryGlyph> {
    if !(0.0..=1.0).contains(&flip_prob) {
        return Err(Error::Config(format!("flip probability {flip_prob} outside [0, 1]")));
    }
    let mut cells = glyph.cells;
    for c in cells.iter_mut() {
        if prng.next_bool(flip_prob) {
            *c ^= 1;
        }
    }
    Ok(BinaryGlyph {
        cells,
        label: glyph.label,
    })
}

/// 26 glyphs, one per letter, held in A..Z order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainingSample {
    glyphs: Vec<BinaryGlyph>,
}

impl TrainingSample {
    pub fn glyphs(&self) -> &[BinaryGlyph] {
        &self.glyphs
    }

    pub fn glyph(&self, letter: Letter) -> &BinaryGlyph {
        &self.glyphs[letter.index()]
    }

    /// The 48x26 matrix; column `c` is the flattened glyph of letter `c`.
    pub fn matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(GLYPH_CELLS, NUM_LETTERS);
        for (c, g) in self.glyphs.iter().enumerate() {
            for (r, &cell) in g.cells.iter().enumerate() {
                if cell == 1 {
                    m[(r, c)] = T::one();
                }
            }
        }
        m
    }

    /// Rebuilds a sample from a 48x26 binary matrix.
    pub fn from_matrix<T: Scalar>(m: &Matrix<T>) -> Result<Self> {
        if (m.rows(), m.cols()) != (GLYPH_CELLS, NUM_LETTERS) {
            return Err(Error::shape("TrainingSample::from_matrix", "48x26", m.shape()));
        }
        let glyphs = Letter::all()
            .map(|l| unflatten(&m.column(l.index()), l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { glyphs })
    }

    pub fn inputs<T: Scalar>(&self) -> Vec<Vector<T>> {
        self.glyphs.iter().map(reshape_48).collect()
    }

    pub fn targets<T: Scalar>(&self) -> Vec<Vector<T>> {
        Letter::all().map(one_hot).collect()
    }

    pub fn labels(&self) -> Vec<Letter> {
        Letter::all().collect()
    }

    /// Every glyph perturbed independently, in A..Z order.
    pub fn perturbed(&self, flip_prob: f64, prng: &mut Prng) -> Result<Self> {
        let glyphs = self
            .glyphs
            .iter()
            .map(|g| noise_perturb(g, flip_prob, prng))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { glyphs })
    }
}

/// Orders 26 labelled glyphs A..Z, rejecting missing or repeated letters.
pub fn assemble_sample(glyphs: Vec<BinaryGlyph>) -> Result<TrainingSample> {
    let mut slots: Vec<Option<BinaryGlyph>> = vec![None; NUM_LETTERS];
    for g in glyphs {
        let slot = &mut slots[g.label.index()];
        if slot.is_some() {
            return Err(Error::Validation(format!("letter {} appears more than once", g.label)));
        }
        *slot = Some(g);
    }
    let glyphs = slots
        .into_iter()
        .zip(Letter::all())
        .map(|(g, l)| g.ok_or_else(|| Error::Validation(format!("letter {l} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrainingSample { glyphs })
}
