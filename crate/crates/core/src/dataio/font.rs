//! Hand-drawn 8x6 capitals, `#` = ink.

use crate::classify::Letter;
use crate::preprocess::{assemble_sample, BinaryGlyph, TrainingSample};

pub const FONT_ROWS: [[&str; 8]; 26] = [
    [
        "..##..", ".#..#.", "#....#", "#....#", "######", "#....#", "#....#", "#....#",
    ],
    [
        "#####.", "#....#", "#....#", "#####.", "#....#", "#....#", "#....#", "#####.",
    ],
    [
        ".####.", "#....#", "#.....", "#.....", "#.....", "#.....", "#....#", ".####.",
    ],
    [
        "####..", "#...#.", "#....#", "#....#", "#....#", "#....#", "#...#.", "####..",
    ],
    [
        "######", "#.....", "#.....", "#####.", "#.....", "#.....", "#.....", "######",
    ],
    [
        "######", "#.....", "#.....", "#####.", "#.....", "#.....", "#.....", "#.....",
    ],
    [
        ".####.", "#....#", "#.....", "#.....", "#..###", "#....#", "#....#", ".####.",
    ],
    [
        "#....#", "#....#", "#....#", "######", "#....#", "#....#", "#....#", "#....#",
    ],
    [
        ".####.", "..##..", "..##..", "..##..", "..##..", "..##..", "..##..", ".####.",
    ],
    [
        "..####", "....#.", "....#.", "....#.", "....#.", "#...#.", "#...#.", ".###..",
    ],
    [
        "#...#.", "#..#..", "#.#...", "##....", "#.#...", "#..#..", "#...#.", "#....#",
    ],
    [
        "#.....", "#.....", "#.....", "#.....", "#.....", "#.....", "#.....", "######",
    ],
    [
        "#....#", "##..##", "#.##.#", "#.##.#", "#....#", "#....#", "#....#", "#....#",
    ],
    [
        "#....#", "##...#", "#.#..#", "#.#..#", "#..#.#", "#..#.#", "#...##", "#....#",
    ],
    [
        ".####.", "#....#", "#....#", "#....#", "#....#", "#....#", "#....#", ".####.",
    ],
    [
        "#####.", "#....#", "#....#", "#####.", "#.....", "#.....", "#.....", "#.....",
    ],
    [
        ".####.", "#....#", "#....#", "#....#", "#....#", "#..#.#", "#...#.", ".###.#",
    ],
    [
        "#####.", "#....#", "#....#", "#####.", "#.#...", "#..#..", "#...#.", "#....#",
    ],
    [
        ".####.", "#....#", "#.....", ".####.", ".....#", ".....#", "#....#", ".####.",
    ],
    [
        "######", "..##..", "..##..", "..##..", "..##..", "..##..", "..##..", "..##..",
    ],
    [
        "#....#", "#....#", "#....#", "#....#", "#....#", "#....#", "#....#", ".####.",
    ],
    [
        "#....#", "#....#", "#....#", "#....#", ".#..#.", ".#..#.", "..##..", "..##..",
    ],
    [
        "#....#", "#....#", "#....#", "#....#", "#.##.#", "#.##.#", "##..##", "#....#",
    ],
    [
        "#....#", "#....#", ".#..#.", "..##..", "..##..", ".#..#.", "#....#", "#....#",
    ],
    [
        "#....#", "#....#", ".#..#.", "..##..", "..##..", "..##..", "..##..", "..##..",
    ],
    [
        "######", ".....#", "....#.", "...#..", "..#...", ".#....", "#.....", "######",
    ],
];

/// The clean font as a sample.
pub fn bundled_font() -> TrainingSample {
    let glyphs = Letter::all()
        .map(|l| BinaryGlyph::from_rows(&FONT_ROWS[l.index()], l).expect("font rows are well formed"))
        .collect();
    assemble_sample(glyphs).expect("font covers every letter once")
}
