use unitfield_core::harness::{SearchConfig};
use std::time::Instant;

fn main() {
    let json = r#"{
        "S": [
            {"kind": "finite", "min_poly": ["0", "1"]},
            {"kind": "finite", "min_poly": ["-2", "1"]},
            {"kind": "finite", "min_poly": ["2", "1"]},
            {"kind": "infinity"}
        ],
        "lam": {"num": ["0", "1"], "den": ["1"]},
        "exponent_bound": 2,
        "constant_pool": ["1", "-1", "2", "-2", "1/2", "-1/2", "4", "-4", "1/4", "-1/4"],
        "strict": true,
        "seed": 7,
        "suites": []
    }"#;
    let cfg = SearchConfig::from_json(json).unwrap().validate().unwrap();
    let t = Instant::now();
    let out4 = unitfield_core::harness::search(&cfg, 4).unwrap();
    println!("4 workers: {} records / {} candidates in {:?}", out4.records.len(), out4.candidates, t.elapsed());
    let t = Instant::now();
    let out1 = unitfield_core::harness::search(&cfg, 1).unwrap();
    println!("1 worker:  {} records in {:?}", out1.records.len(), t.elapsed());
    assert_eq!(out1.records, out4.records);
    println!("case_counts: {:?}", out1.case_counts);
    let empties = out1.records.iter().filter(|r| r.unclassified).count();
    println!("unclassified: {empties}");
}
