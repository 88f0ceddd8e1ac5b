use metanet::formats::{self, FormatError, LabelFile};
use metanet_core::landscape::LandscapePoint;
use metanet_core::{Graph, Partition};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9_.-]{1,6}"
}

proptest! {
    #[test]
    fn edge_list_round_trip(edges in proptest::collection::vec((name(), name()), 1..40)) {
        let text: String = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| format!("{a}\t{b}\n"))
            .collect();
        prop_assume!(!text.is_empty());
        let g = formats::parse_edge_list(&text).unwrap();
        let again = formats::parse_edge_list(&formats::write_edge_list(&g)).unwrap();
        prop_assert_eq!(g.n_edges(), again.n_edges());
        for &(u, v) in g.edges() {
            let (a, b) = (again.index_of(g.name(u)).unwrap(), again.index_of(g.name(v)).unwrap());
            prop_assert!(again.has_edge(a, b));
        }
    }

    #[test]
    fn labels_round_trip(labels in proptest::collection::vec(0..4usize, 2..30)) {
        let n = labels.len();
        let g = Graph::from_named_edges((0..n).map(|i| format!("v{i}")).collect(), (1..n).map(|i| (i - 1, i))).unwrap();
        let p = Partition::from_assignment(labels);
        let text = formats::write_labels(&g, &p);
        let back = formats::parse_labels(&text, &g).unwrap();
        prop_assert!(back.same_grouping(&p));
        let file = LabelFile::parse(&text).unwrap();
        prop_assert!(file.partition.same_grouping(&p));
    }

    #[test]
    fn surface_round_trip(rows in proptest::collection::vec((-1e6..1e6f64, -1e6..1e6f64, -1e6..1e6f64), 1..20)) {
        let pts: Vec<LandscapePoint> = rows
            .iter()
            .enumerate()
            .map(|(i, &(x, y, score))| LandscapePoint { x, y, score, partition_id: i })
            .collect();
        let mut buf = Vec::new();
        formats::write_surface(&pts, &mut buf).unwrap();
        prop_assert_eq!(formats::read_surface(&buf[..]).unwrap(), pts);
    }
}

#[test]
fn empty_surface_still_has_header() {
    let mut buf = Vec::new();
    formats::write_surface(&[], &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "x,y,score,partition_id\n");
}

#[test]
fn read_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.edges");
    std::fs::write(&p, "a b\nc\n").unwrap();
    match formats::read_edge_list(&p) {
        Err(FormatError::Parse { line: 2, reason }) => assert!(reason.contains("bad.edges")),
        other => panic!("{other:?}"),
    }
}
