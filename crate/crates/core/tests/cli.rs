use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;
use zn_schottky::census::CensusRecord;
use zn_schottky::cli::{ConstructReport, EpiReport, FixedLocusOutput, PrimeActionsReport, RankReport, SubgroupReport, Z2Report};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zn-schottky")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), value);
    value
}

#[test]
fn census_conformal() {
    let (code, out, _) = run(&["census", "conformal", "--n", "13", "--g", "157", "--format", "json"]);
    assert_eq!(code, 0);
    let rec: CensusRecord = round_trip(&out);
    assert_eq!(rec.count, 16u32.into());
    assert_eq!(rec.signatures.len(), 16);
    let (_, csv, _) = run(&["census", "conformal", "--n", "5", "--g", "5", "--format", "csv"]);
    assert_eq!(csv.lines().next().unwrap(), "n,g,m,a,b,elliptic_orders,abelian_orders");
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn prime_actions() {
    let (code, out, _) = run(&["census", "prime-actions", "--p", "13", "--g", "157"]);
    assert_eq!(code, 0);
    let rep: PrimeActionsReport = round_trip(&out);
    assert_eq!(rep.count, 87108u32.into());
    assert_eq!(run(&["census", "prime-actions", "--p", "12", "--g", "5"]).0, 1);
}

#[test]
fn extended_z2_flags_discrepancy() {
    let (code, out, err) = run(&["census", "extended-z2", "--g", "1"]);
    assert_eq!(code, 0);
    let rep: Z2Report = round_trip(&out);
    assert!(!rep.formula_agrees);
    assert!(err.contains("warning"));
    let (_, out, _) = run(&["census", "extended-z2", "--g", "2"]);
    let rep: Z2Report = round_trip(&out);
    assert_eq!(rep.tuples, vec![[0, 1, 1, 0, 0, 0]]);
}

#[test]
fn subgroups() {
    let (_, out, _) = run(&["subgroups", "--p", "7", "--b", "2", "--m", "1"]);
    let formula: SubgroupReport = round_trip(&out);
    let (_, out, _) = run(&["subgroups", "--p", "7", "--b", "2", "--m", "1", "--brute-force"]);
    let brute: SubgroupReport = round_trip(&out);
    assert_eq!(formula.count, brute.count);
}

#[test]
fn construct_and_export() {
    let dir = std::env::temp_dir().join(format!("zn-schottky-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let limit = dir.join("limit.csv");
    let domain = dir.join("domain.csv");
    let args = [
        "construct",
        "--n",
        "2",
        "--signature",
        "m=0,a=0,b=2;2;2",
        "--verify",
        "--emit-limit-set",
        limit.to_str().unwrap(),
        "--emit-domain",
        domain.to_str().unwrap(),
        "--depth",
        "5",
    ];
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let rep: ConstructReport = round_trip(&out);
    assert!(rep.certificate.as_ref().unwrap().passed);
    assert!(rep.audit.as_ref().unwrap().suspects.is_empty());
    let csv = std::fs::read_to_string(&limit).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "re,im");
    assert_eq!(csv.lines().count() - 1, rep.limit_points.unwrap());
    let csv = std::fs::read_to_string(&domain).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "curve_id,re,im");
    // Byte-identical reruns.
    assert_eq!(run(&args).1, out);
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, out, _) = run(&["construct", "--n", "2", "--signature", "ext:n=2,T6=1", "--verify"]);
    assert_eq!(code, 0);
    let rep: ConstructReport = round_trip(&out);
    assert!(rep.certificate.unwrap().steps.is_empty());
    assert_eq!(run(&["construct", "--n", "2", "--signature", "m=0,a=0,b=0"]).0, 2);
    assert_eq!(run(&["construct", "--n", "2", "--signature", "m=0,a=0,b=3"]).0, 2);
    assert_eq!(run(&["construct", "--n", "2"]).0, 1);
}

#[test]
fn epi_fixed_locus_rank() {
    let (code, out, _) = run(&["epi", "--n", "4", "--signature", "m=0,a=0,b=2;4"]);
    assert_eq!(code, 0);
    let rep: EpiReport = round_trip(&out);
    assert_eq!(rep.exponents, vec![2, 1]);
    assert!(rep.kernel.torsion_free);
    let (code, out, _) = run(&["epi", "--n", "2", "--signature", "ext:n=2,T2=2,T3=4"]);
    assert_eq!(code, 0);
    let rep: EpiReport = round_trip(&out);
    assert_eq!(rep.modulus, 4);

    let (code, out, _) = run(&["fixed-locus", "--n", "2", "--signature", "m=0,a=0,b=2;2;2"]);
    assert_eq!(code, 0);
    let rep: FixedLocusOutput = round_trip(&out);
    assert_eq!(rep.totals.arcs, 3);
    let (code, out, _) = run(&["fixed-locus", "--n", "2", "--signature", "ext:n=2,T2=2,T3=4"]);
    assert_eq!(code, 0);
    let _: FixedLocusOutput = round_trip(&out);

    let (code, out, _) = run(&["rank-extended", "--counts", "1,0,1,0,1", "--gammas", "2"]);
    assert_eq!(code, 0);
    let rep: RankReport = round_trip(&out);
    assert_eq!(rep.rank, 1 + 2 + 1 + 2 - 1);
    assert_eq!(run(&["rank-extended", "--counts", "1,0"]).0, 1);
}
