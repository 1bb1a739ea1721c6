//! Round-trip and layout-independence checks for the file formats.

use ndarray::Array2;
use proptest::prelude::*;
use qap_core::Instance;
use qap_io::{
    parse_qaplib, read_feature_csv, read_qaplib_file, read_run_records, write_feature_csv,
    write_qaplib, write_qaplib_file, write_run_records, FeatureRow, RunRecord, FEATURE_COUNT,
    LANDSCAPE_START,
};

fn instance_from(n: usize, cells: &[i32]) -> Instance {
    let a = Array2::from_shape_fn((n, n), |(i, j)| cells[i * n + j] as f64);
    let b = Array2::from_shape_fn((n, n), |(i, j)| cells[n * n + i * n + j] as f64);
    Instance::new("prop", a, b).unwrap()
}

proptest! {
    #[test]
    fn write_then_parse_is_identity_on_integer_instances(
        n in 2usize..8,
        seed in any::<u64>(),
    ) {
        let cells: Vec<i32> = (0..2 * n * n)
            .map(|i| (seed.wrapping_mul(i as u64 + 1).wrapping_mul(0x9e3779b9) >> 33) as i32 % 1000)
            .collect();
        let inst = instance_from(n, &cells);
        let text = write_qaplib(&inst).unwrap();
        let back = parse_qaplib(&text).unwrap();
        prop_assert_eq!(back.a(), inst.a());
        prop_assert_eq!(back.b(), inst.b());
        // A second serialization of the parsed instance is bit-identical.
        prop_assert_eq!(write_qaplib(&back).unwrap(), text);
    }

    #[test]
    fn parsing_ignores_how_tokens_are_split_across_lines(
        n in 2usize..6,
        chunks in prop::collection::vec(1usize..7, 1..30),
        seed in any::<u64>(),
    ) {
        let cells: Vec<i32> = (0..2 * n * n)
            .map(|i| (seed.wrapping_mul(i as u64 + 7).wrapping_mul(0x2545f491) >> 35) as i32 % 100)
            .collect();
        let mut tokens = vec![n.to_string()];
        tokens.extend(cells.iter().map(|c| c.to_string()));

        // Re-chunk the token stream into lines of varying width.
        let mut relaid = String::new();
        let mut chunk_iter = chunks.iter().cycle();
        let mut index = 0;
        while index < tokens.len() {
            let width = *chunk_iter.next().unwrap();
            let line: Vec<&str> = tokens[index..(index + width).min(tokens.len())]
                .iter()
                .map(String::as_str)
                .collect();
            relaid.push_str(&line.join(if index % 2 == 0 { " " } else { "\t" }));
            relaid.push('\n');
            index += width;
        }

        let from_lines = parse_qaplib(&relaid).unwrap();
        let from_single = parse_qaplib(&tokens.join(" ")).unwrap();
        prop_assert_eq!(from_lines.a(), from_single.a());
        prop_assert_eq!(from_lines.b(), from_single.b());
    }

    #[test]
    fn feature_csv_round_trips_arbitrary_finite_values(
        raw in prop::collection::vec(-1.0e6f64..1.0e6, FEATURE_COUNT),
        missing_landscape in any::<bool>(),
    ) {
        let values: Vec<Option<f64>> = raw
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if missing_landscape && i >= LANDSCAPE_START {
                    None
                } else {
                    Some(v)
                }
            })
            .collect();
        let row = FeatureRow::new("inst-1", "uniform", "generated", values).unwrap();
        let text = write_feature_csv(std::slice::from_ref(&row)).unwrap();
        let back = read_feature_csv(&text).unwrap();
        prop_assert_eq!(back, vec![row]);
    }

    #[test]
    fn run_record_csv_round_trips_arbitrary_runs(
        run in 1u32..1000,
        best_cost in -1.0e9f64..1.0e9,
        time in 0.0f64..1.0e4,
    ) {
        let record = RunRecord::new("case", "bma", run, best_cost, time).unwrap();
        let text = write_run_records(std::slice::from_ref(&record)).unwrap();
        prop_assert_eq!(read_run_records(&text).unwrap(), vec![record]);
    }
}

#[test]
fn file_round_trip_labels_instances_by_file_stem() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sample12.dat");
    let inst = parse_qaplib("3\n0 1 2\n3 0 4\n5 6 0\n0 1 1\n1 0 1\n1 1 0").unwrap();
    write_qaplib_file(&inst, &path).unwrap();
    let back = read_qaplib_file(&path).unwrap();
    assert_eq!(back.label(), "sample12");
    assert_eq!(back.a(), inst.a());
    assert_eq!(back.b(), inst.b());
}

#[test]
fn feature_csv_header_lists_labels_then_the_forty_names() {
    let text = write_feature_csv(&[]).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("instance,class,source,Distance Normalised Mean,"));
    assert!(header.ends_with(",Entropy Difference"));
    assert_eq!(header.split(',').count(), 3 + FEATURE_COUNT);
}
