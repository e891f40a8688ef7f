use std::fs;

use jacobi::cache::DiskCache;
use jacobi::cli::run;
use jacobi::codefile::{parse_code, write_code};
use jacobi_core::gf2::d_plus;
use jacobi_core::tables::{JacobiProvider, NamedCode};

fn jacobi(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jacobi").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn prints_the_empty_set_jacobi_polynomial() {
    let (code, out, _) = jacobi(&["jacobi", "--genus", "1", "--set", "", "d_plus(8)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x0^8 + 14*x0^4*x1^4 + x1^8");
}

#[test]
fn group_order() {
    let (code, out, _) = jacobi(&["group", "--genus", "1", "--order"]);
    assert_eq!((code, out.trim()), (0, "192"));
}

#[test]
fn reproduce_reports_pass() {
    let (code, out, _) = jacobi(&["reproduce", "--claim", "thm5.2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("thm5.2 PASS"), "{out}");
    assert!(out.contains("[1, 10, 40, 130, 283, 513, 883, 1372]"));
}

#[test]
fn exit_codes() {
    assert_eq!(jacobi(&["no-such-command"]).0, 2);
    assert_eq!(jacobi(&["jacobi", "--set", "9", "d8+"]).0, 2);
    assert_eq!(jacobi(&["we", "c17"]).0, 2);
    // the two-block profile (2,2) of d8+ is not a generalized 2-design
    assert_eq!(jacobi(&["homogeneous", "--t", "2", "--partition", "1-4;5-8", "d8+"]).0, 1);
    assert_eq!(jacobi(&["homogeneous", "--t", "3", "d8+"]).0, 0);
}

#[test]
fn code_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h7.txt");
    fs::write(&path, "7 4\n1000110\n0100011\n0010111\n0001101\n").unwrap();
    let (code, out, _) = jacobi(&["code", "dual", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dual = parse_code(&out).unwrap();
    assert_eq!((dual.len(), dual.dim()), (7, 3));
    assert_eq!(dual.dual(), parse_code(&fs::read_to_string(&path).unwrap()).unwrap());
    assert_eq!(write_code(&dual), out);

    let (code, _, _) = jacobi(&["macwilliams", "--genus", "2", "--set", "1,5", "--check", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn json_envelope() {
    let (code, out, _) = jacobi(&["--json", "code", "classify", "g24"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["result"]["class"]["is_type2"], true);
}

#[test]
fn split_macwilliams_check() {
    let (code, out, _) =
        jacobi(&["macwilliams", "--genus", "1", "--split", "--blocks", "1-4;5-8", "--sets", "1;5,6", "--check", "d8+"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS"));
}

#[test]
fn polarize_matches_jacobi() {
    let (_, pol, _) = jacobi(&["polarize", "--genus", "1", "--block", "1", "--ell", "1", "d8+"]);
    let (_, jac, _) = jacobi(&["jacobi", "--genus", "1", "--set", "3", "d8+"]);
    assert_eq!(pol, jac);
}

#[test]
fn span_and_independence_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for (i, set) in ["", "1", "1,2,3,4", "1,2,3,5"].iter().enumerate() {
        let (_, out, _) = jacobi(&["jacobi", "--set", set, "d8+"]);
        let p = dir.path().join(format!("p{i}.txt"));
        fs::write(&p, out).unwrap();
        paths.push(p.to_str().unwrap().to_string());
    }
    // a repeated input adds nothing to the span
    let mut args = vec!["span", "--genus", "1", "--inputs"];
    args.extend(paths.iter().map(String::as_str));
    args.push(&paths[0]);
    let (code, out, _) = jacobi(&args);
    assert_eq!((code, out.trim()), (0, "4 (exact)"));

    let mut args = vec!["independence", "--seed", "3", "--inputs"];
    args.extend(paths[..2].iter().map(String::as_str));
    let first = jacobi(&args);
    assert_eq!(first, jacobi(&args));
    assert!(first.1.contains("independent"));
}

#[test]
fn disk_cache_reuses_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = DiskCache::new(Some(dir.path().join("c")));
    let d8 = NamedCode::new("d8+", d_plus(8).unwrap());
    let first = cache.jacobi(&d8, &[1, 2], 2).unwrap();
    let entries: Vec<_> = fs::read_dir(dir.path().join("c")).unwrap().collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(cache.jacobi(&d8, &[1, 2], 2).unwrap(), first);
    // keys depend on the set and on the genus
    assert_ne!(DiskCache::key(&d8, &[1, 2], 2), DiskCache::key(&d8, &[1, 3], 2));
    assert_ne!(DiskCache::key(&d8, &[1, 2], 2), DiskCache::key(&d8, &[1, 2], 1));
}
