//! Reading and writing images, glyphs, samples and reports, plus the bundled
//! synthetic font.

mod dataset;
mod font;
mod glyph_io;
mod pgm;
mod report_io;

pub use dataset::{bundled_dataset, Dataset};
pub use font::{bundled_font, FONT_ROWS};
pub use glyph_io::{
    format_glyph, load_sample_dir, parse_glyph, read_glyph, write_glyph, write_sample_dir, write_sample_matrix,
};
pub use pgm::{encode_pgm, load_pgm, parse_pgm, PgmEncoding};
pub use report_io::{read_epoch_csv, read_report, write_epoch_csv, write_report, ReportFormat};
