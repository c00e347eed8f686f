use std::path::Path;
use std::process::Command;

use cellmap::tables::{Kind, TableFile};
use cellmap::{run, EXIT_DATA, EXIT_OK, EXIT_USAGE};
use cellmap_core::rootdata::CartanType;

fn cellmap(args: &[&str]) -> cellmap::Outcome {
    let mut v = vec!["cellmap"];
    v.extend_from_slice(args);
    run(v)
}

fn shipped(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tables/G2").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn records(text: &str) -> Vec<Vec<String>> {
    TableFile::parse(text, "t").unwrap().records.into_iter().map(|r| r.fields).collect()
}

#[test]
fn chars_a1_json() {
    let out = cellmap(&["chars", "A1", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let mut vals: Vec<Vec<i64>> = v["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["values"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
        .collect();
    vals.sort();
    // columns are the identity class then the reflection
    let id = v["classes"].as_array().unwrap().iter().position(|c| c == "1,1").unwrap();
    assert_eq!(vals.len(), 2);
    assert!(vals.iter().all(|r| r[id] == 1));
    assert_eq!(vals.iter().map(|r| r[1 - id]).collect::<Vec<_>>(), vec![-1, 1]);
}

#[test]
fn kl_a2_subregular() {
    let out = cellmap(&["kl", "A2", "--orbit", "[2,1]", "--json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["class"], "2,1");
    assert_eq!(v["delta"], "1");
    assert_eq!(v["source"], "oracle");
}

#[test]
fn verify_a1_rows() {
    let out = cellmap(&["verify", "A1", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let mut ps: Vec<&str> = rows.iter().map(|r| r["parahoric"].as_str().unwrap()).collect();
    ps.dedup();
    assert_eq!(ps, vec!["{}", "{0}", "{1}"]);
    assert!(rows.iter().all(|r| r["status"] == "match"));
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [vec!["roots", "B3"], vec!["orbits", "D4"], vec!["verify", "A2"], vec!["predict", "G2"], vec!["strata", "B2"]] {
        let mut a = args.clone();
        a.push("--json");
        let out = cellmap(&a);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out.stdout, "{args:?}");
    }
}

#[test]
fn seeds_are_reproducible() {
    let a = cellmap(&["verify", "B2", "--seed", "7", "--json"]);
    let b = cellmap(&["verify", "B2", "--seed", "7", "--json"]);
    assert_eq!(a, b);
    let c = cellmap(&["verify", "B2", "--seed", "8", "--json"]);
    assert_eq!(c.code, EXIT_OK);
}

#[test]
fn usage_errors() {
    assert_eq!(cellmap(&["roots", "E6"]).code, EXIT_USAGE);
    assert_eq!(cellmap(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cellmap(&["roots", "A2", "--no-such-flag"]).code, EXIT_USAGE);
    assert_eq!(cellmap(&["--help"]).code, EXIT_OK);
}

#[test]
fn data_errors() {
    let out = cellmap(&["kl", "A2", "--orbit", "4"]);
    assert_eq!(out.code, EXIT_DATA, "{}", out.stderr);
    assert_eq!(cellmap(&["verify", "G2"]).code, EXIT_DATA);
    assert_eq!(cellmap(&["predict", "B2"]).code, EXIT_DATA);
    assert_eq!(cellmap(&["chars", "F4"]).code, EXIT_DATA);
}

#[test]
fn jinduce_from_a_levi() {
    let out = cellmap(&["jinduce", "C2", "--levi", "0,2", "--rep", "1,1 x 1,1", "--json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["b_rep"], 2);
    assert_eq!(v["b_j"], 2);
}

#[test]
fn shipped_tables_ingest_and_reingest() {
    let dir = tempfile::tempdir().unwrap();
    for n in ["chartab.tbl", "orbits.tbl", "springer.tbl", "kl.tbl"] {
        std::fs::write(dir.path().join(n), shipped(n)).unwrap();
    }
    let out = cellmap(&["predict", "G2", "--tables", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("predicted"));
}

#[test]
fn corrupted_checksum_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = shipped("chartab.tbl").replacen("phi2,2\t2\t0\t0\t2", "phi2,2\t2\t0\t0\t3", 1);
    std::fs::write(dir.path().join("chartab.tbl"), text).unwrap();
    let out = cellmap(&["chars", "G2", "--tables", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_DATA);
    assert!(out.stderr.contains("checksum mismatch"), "{}", out.stderr);
    assert!(out.stderr.contains("chartab.tbl:1:"), "{}", out.stderr);
}

#[test]
fn failing_orthogonality_is_rejected() {
    let g2: CartanType = CartanType::parse("G2").unwrap();
    let mut recs = records(&shipped("chartab.tbl"));
    recs[6][4] = "-2".into();
    recs[6][5] = "2".into();
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.tbl"), TableFile::render(Kind::Chartab, g2, "bad", &recs)).unwrap();
    let d = dir.path().to_str().unwrap();
    let out = cellmap(&["chars", "G2", "--tables", d]);
    assert_eq!(out.code, EXIT_DATA, "{}", out.stderr);
    assert!(out.stderr.contains("different checksum"), "{}", out.stderr);
    let out = cellmap(&["chars", "G2", "--tables", d, "--force"]);
    assert_eq!(out.code, EXIT_DATA);
    assert!(out.stderr.contains("orthogonality"), "{}", out.stderr);
}

#[test]
fn kl_table_must_be_total() {
    let g2 = CartanType::parse("G2").unwrap();
    let mut recs = records(&shipped("kl.tbl"));
    recs.remove(2);
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("kl.tbl"), TableFile::render(Kind::Kl, g2, "", &recs)).unwrap();
    let out = cellmap(&["predict", "G2", "--tables", dir.path().to_str().unwrap(), "--force"]);
    assert_eq!(out.code, EXIT_DATA);
    assert!(out.stderr.contains("total map violation"), "{}", out.stderr);
}

#[test]
fn grammar_errors_carry_line_numbers() {
    let text = shipped("orbits.tbl").replacen("\t1\tG2\n", "\tyes\tG2\n", 1);
    let out = TableFile::parse(&text, "o.tbl").unwrap_err();
    assert_eq!(out.code, EXIT_DATA);
    assert!(out.message.starts_with("o.tbl:"), "{}", out.message);
    assert!(out.message.contains("special flag"), "{}", out.message);
}

#[test]
fn springer_table_is_normalized_on_ingest() {
    let g2 = CartanType::parse("G2").unwrap();
    let mut recs = records(&shipped("springer.tbl"));
    // swap the Springer characters of the two non-special orbits
    recs[1][1] = "phi2,2".into();
    recs[2][1] = "phi1,3''".into();
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.tbl"), TableFile::render(Kind::Springer, g2, "", &recs)).unwrap();
    let out = cellmap(&["orbits", "G2", "--tables", dir.path().to_str().unwrap(), "--force"]);
    assert_eq!(out.code, EXIT_OK, "non-special rows are not constrained by d_O = b");
    recs[0][1] = "phi2,1".into();
    recs[3][1] = "phi1,6".into();
    std::fs::write(dir.path().join("s.tbl"), TableFile::render(Kind::Springer, g2, "", &recs)).unwrap();
    let out = cellmap(&["orbits", "G2", "--tables", dir.path().to_str().unwrap(), "--force"]);
    assert_eq!(out.code, EXIT_DATA, "{}", out.stderr);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.json");
    let out = cellmap(&["fakedeg", "B2", "--json", "--out", f.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&f).unwrap(), out.stdout);
}

#[test]
fn binary_exit_codes_and_table_dir_variable() {
    let bin = env!("CARGO_BIN_EXE_cellmap");
    let st = Command::new(bin).args(["roots", "Q7"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_USAGE));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.tbl"), "CELLMAP-TABLE v1 kl G2 00\n1\t1\n").unwrap();
    let st = Command::new(bin).args(["classes", "G2"]).env("CELLMAP_TABLE_DIR", dir.path()).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_DATA));
    let st = Command::new(bin).args(["classes", "G2"]).env_remove("CELLMAP_TABLE_DIR").output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
}
