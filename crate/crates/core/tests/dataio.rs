use std::fs;

use bpnn::classify::Letter;
use bpnn::dataio::{
    bundled_font, encode_pgm, load_sample_dir, read_epoch_csv, read_report, write_epoch_csv, write_report,
    write_sample_dir, PgmEncoding, ReportFormat,
};
use bpnn::learn::{train_sample, HyperParams, TrainingReport};
use bpnn::netcore::{read_snapshot, write_snapshot, InitScheme, Network, Topology};
use bpnn::numcore::Prng;
use bpnn::preprocess::{assemble_sample, binarize, downsample_8x6, BinaryGlyph, GrayImage, PreprocessConfig};

/// A 24x18 scan of `glyph`: each cell becomes a 3x3 block, ink dark,
/// paper light, with some jitter.
fn scan(glyph: &BinaryGlyph, prng: &mut Prng) -> Vec<u16> {
    let mut px = vec![0u16; 24 * 18];
    for r in 0..24 {
        for c in 0..18 {
            let ink = glyph.get(r / 3, c / 3) == 1;
            let base = if ink { 30.0 } else { 220.0 };
            px[r * 18 + c] = (base + prng.next_range(-20.0, 20.0)) as u16;
        }
    }
    px
}

#[test]
fn pgm_directory_matches_manual_pipeline() {
    let font = bundled_font();
    let dir = tempfile::tempdir().unwrap();
    let mut prng = Prng::new(4);
    let mut manual = Vec::new();
    for (i, g) in font.glyphs().iter().enumerate() {
        let px = scan(g, &mut prng);
        let encoding = if i % 2 == 0 {
            PgmEncoding::Ascii
        } else {
            PgmEncoding::Binary
        };
        fs::write(
            dir.path().join(format!("{}.pgm", g.label())),
            encode_pgm(18, 24, 255, &px, encoding),
        )
        .unwrap();

        let img = GrayImage::new(24, 18, px.iter().map(|&v| f64::from(v) / 255.0).collect()).unwrap();
        let cells = downsample_8x6(&binarize(&img, &PreprocessConfig::default())).unwrap();
        manual.push(BinaryGlyph::new(cells, g.label()).unwrap());
    }
    let loaded = load_sample_dir(dir.path(), &PreprocessConfig::default()).unwrap();
    assert_eq!(loaded, assemble_sample(manual).unwrap());
    // clean 3x3 blocks downsample back to the font exactly
    assert_eq!(loaded, font);
}

#[test]
fn missing_letter_is_named() {
    let dir = tempfile::tempdir().unwrap();
    write_sample_dir(&bundled_font(), dir.path()).unwrap();
    fs::remove_file(dir.path().join("Q.glyph")).unwrap();
    let err = load_sample_dir(dir.path(), &PreprocessConfig::default())
        .unwrap_err()
        .to_string();
    assert!(err.contains("letter Q is missing"), "{err}");
}

#[test]
fn mislabelled_glyph_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_sample_dir(&bundled_font(), dir.path()).unwrap();
    fs::copy(dir.path().join("A.glyph"), dir.path().join("B.glyph")).unwrap();
    let err = load_sample_dir(dir.path(), &PreprocessConfig::default())
        .unwrap_err()
        .to_string();
    assert!(err.contains("B.glyph is labelled A"), "{err}");
}

#[test]
fn glyph_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let noisy = bundled_font().perturbed(0.1, &mut Prng::new(8)).unwrap();
    write_sample_dir(&noisy, dir.path()).unwrap();
    assert_eq!(
        load_sample_dir(dir.path(), &PreprocessConfig::default()).unwrap(),
        noisy
    );
}

fn trained_report() -> (Network<f64>, TrainingReport) {
    let font = bundled_font();
    let mut net = Network::init(
        Topology::character_net(2).unwrap(),
        &mut Prng::new(6),
        InitScheme::Symmetric,
    );
    let hp = HyperParams {
        max_epochs: 30,
        ..HyperParams::default()
    };
    let report = train_sample(&mut net, &font.inputs(), &font.targets(), &hp)
        .unwrap()
        .with_provenance(6, InitScheme::Symmetric);
    (net, report)
}

#[test]
fn report_round_trips_and_rewrites_identically() {
    let (_, report) = trained_report();
    let dir = tempfile::tempdir().unwrap();
    for (format, name) in [(ReportFormat::Json, "r.json"), (ReportFormat::Csv, "r.csv")] {
        let path = dir.path().join(name);
        write_report(&report, &path, format).unwrap();
        let back = read_report(&path, format, Some(&report)).unwrap();
        assert_eq!(back, report, "{name}");
        let again = dir.path().join(format!("again-{name}"));
        write_report(&back, &again, format).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap(), "{name}");
    }
    assert_eq!(
        read_report(&dir.path().join("r.json"), ReportFormat::Json, None).unwrap(),
        report
    );
    assert!(read_report(&dir.path().join("r.csv"), ReportFormat::Csv, None).is_err());
}

#[test]
fn empty_trace_writes_header_only() {
    let mut buf = Vec::new();
    write_epoch_csv(&[], &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf.clone()).unwrap(), "epoch,mse,e_sum,grad_norm\n");
    assert!(read_epoch_csv(&buf[..]).unwrap().is_empty());
    assert!(read_epoch_csv(&b"epoch,mse\n"[..]).is_err());
}

#[test]
fn snapshot_file_round_trip_preserves_predictions() {
    let (net, _) = trained_report();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.snapshot");
    write_snapshot(&net, &path).unwrap();
    let back = read_snapshot::<f64>(&path).unwrap();
    assert_eq!(back, net);
    for x in bundled_font().inputs::<f64>() {
        assert_eq!(back.predict(&x).unwrap(), net.predict(&x).unwrap());
    }
}

#[test]
fn letters_survive_the_pgm_threshold_boundary() {
    // a pixel exactly at the threshold is paper, just below is ink
    let bytes = encode_pgm(6, 8, 100, &[50; 48], PgmEncoding::Ascii);
    let img = bpnn::dataio::parse_pgm(&bytes).unwrap();
    let glyph =
        bpnn::preprocess::glyph_from_gray(&img, Letter::from_char('A').unwrap(), &PreprocessConfig::default()).unwrap();
    assert_eq!(glyph.ink_count(), 0);
    let bytes = encode_pgm(6, 8, 100, &[49; 48], PgmEncoding::Binary);
    let img = bpnn::dataio::parse_pgm(&bytes).unwrap();
    let glyph =
        bpnn::preprocess::glyph_from_gray(&img, Letter::from_char('A').unwrap(), &PreprocessConfig::default()).unwrap();
    assert_eq!(glyph.ink_count(), 48);
}
