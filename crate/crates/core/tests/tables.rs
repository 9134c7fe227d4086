use crsym::classalg::structure_table_csv;
use crsym::decompose::isotypic_table;

#[test]
fn isotypic_table_json_is_keyed_and_stable() {
    let t = isotypic_table(2, 5).unwrap();
    let a = serde_json::to_string(&t).unwrap();
    assert_eq!(a, serde_json::to_string(&isotypic_table(2, 5).unwrap()).unwrap());
    assert_eq!(t.total_dim, 275);
    for r in &t.rows {
        assert_eq!((r.k, r.dim), (2, 5));
        assert!(r.stable);
        assert_eq!(r.rank, r.weyl_dim);
    }
    let below = isotypic_table(3, 4).unwrap();
    assert!(below.rows.iter().all(|r| !r.stable));
    assert_eq!(below.rows.iter().map(|r| r.rank).sum::<u64>(), below.total_dim);
}

#[test]
fn structure_table_quotes_partition_labels() {
    let csv = structure_table_csv(3).unwrap();
    let mut rd = csv::Reader::from_reader(csv.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["product", "(1,1,1)", "(2,1)", "(3)"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(&rows[1][1], "(2,1):1");
    assert_eq!(&rows[1][2], "(1,1,1):1/3;(3):2/3");
}
