use liaison_cli::report::{BoundReport, ClassifyReport, ClosedFormValue, GenusReport, ScrollReport, ScrollResult};
use liaison_cli::{run, run_styled, DEFAULT_SEED, EXIT_ERROR, EXIT_FAILED, EXIT_OK};
use liaison_core::oracle::VerificationReport;
use liaison_core::scroll::ClassGroup;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn liaison(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("liaison").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn ok(args: &[&str]) -> String {
    let o = liaison(args);
    assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.err);
    o.out
}

/// Parsing and re-emitting gives the same bytes.
fn assert_round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&value).unwrap()), text);
    value
}

#[test]
fn genus_json_example() {
    let text = ok(&["genus", "--d", "98", "--n", "5", "--s", "9", "--json"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["max_genus"], 550);
    assert_eq!(json["closed_form"], 528);
    assert_eq!(json["discrepancy"], true);
    let r: GenusReport = assert_round_trip(&text);
    assert_eq!(r.delta_h.iter().map(|row| row.delta_h).sum::<i64>(), 98);
    // Castelnuovo bound for degree 9 in P^4.
    assert_eq!(r.castelnuovo.genus, 7);
}

#[test]
fn genus_non_integral_closed_form() {
    let text = ok(&["genus", "--d", "121", "--n", "5", "--s", "12", "--json"]);
    let r: GenusReport = assert_round_trip(&text);
    assert!(matches!(r.closed_form, ClosedFormValue::Fraction(ref f) if f.contains('/')));
}

#[test]
fn genus_table() {
    let text = ok(&["genus", "--d", "98", "--n", "5", "--s", "9"]);
    assert!(text.contains("branch = HIGH"));
    assert!(text.contains("max_genus        550"));
    assert!(!text.contains('\x1b'));
}

#[test]
fn genus_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dh.csv");
    ok(&["genus", "--d", "98", "--n", "5", "--s", "9", "--csv", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,delta_h"));
    assert_eq!(lines.next(), Some("0,1"));
    assert_eq!(text.lines().count(), 15);
    assert_eq!(text.lines().last(), Some("13,1"));
}

#[test]
fn bound_is_exact_threshold() {
    assert_eq!(ok(&["bound", "--n", "5", "--s", "9"]), "2035\n");
    assert_eq!(ok(&["bound", "--n", "3", "--s", "2"]), "9\n");
    let r: BoundReport = assert_round_trip(&ok(&["bound", "--n", "4", "--s", "7", "--json"]));
    assert_eq!(r.min_admissible_degree, "103");
}

#[test]
fn scroll_verbs() {
    let r: ScrollReport = assert_round_trip(&ok(&["scroll", "--type", "0,0,3", "--n", "5", "class-group", "--json"]));
    assert_eq!(r.result, ScrollResult::ClassGroup { class_group: ClassGroup::Cyclic { f: 3 } });

    let text = ok(&["scroll", "--type", "0,0,3", "--n", "5", "vertex-mult", "3,2,4,3", "--json"]);
    let r: ScrollReport = assert_round_trip(&text);
    assert!(matches!(r.result, ScrollResult::VertexMult { multiplicity: 18, .. }));

    let text = ok(&["scroll", "--type", "0,0,3", "--n", "5", "vertex-mult", "3,2,R", "--json"]);
    assert!(matches!(assert_round_trip::<ScrollReport>(&text).result, ScrollResult::VertexMult { multiplicity: 2, .. }));

    let text = ok(&["scroll", "--type", "0,3", "--n", "4", "total-transform", "7", "--json"]);
    let r: ScrollReport = assert_round_trip(&text);
    let ScrollResult::TotalTransform { transform, .. } = r.result else { panic!("{text}") };
    assert_eq!((transform.alpha, transform.beta), (3, -2));

    let text = ok(&["scroll", "--type", "1,1,1", "--n", "5", "intersect", "1,0;1,0;1,0", "--json"]);
    assert!(matches!(assert_round_trip::<ScrollReport>(&text).result, ScrollResult::Intersect { value: 3, .. }));

    let text = ok(&["scroll", "--type", "1,1,1", "--n", "5", "ci", "2,3", "--json"]);
    assert!(matches!(
        assert_round_trip::<ScrollReport>(&text).result,
        ScrollResult::Ci { degree: 18, genus: 22, .. }
    ));

    let text = ok(&["scroll", "--type", "0,0,3", "--n", "5", "proper-transform", "3,2", "--json"]);
    assert_round_trip::<ScrollReport>(&text);
    let text = ok(&["scroll", "--type", "1,2", "--n", "4", "canonical"]);
    assert!(text.contains("K = -2H+1R"), "{text}");
}

#[test]
fn scroll_errors_exit_one() {
    let o = liaison(&["scroll", "--type", "1,1", "--n", "9", "class-group"]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.err.starts_with("error:"), "{}", o.err);
    assert!(o.out.is_empty());
    assert_eq!(liaison(&["scroll", "--type", "1,1,1", "--n", "5", "ci", "2"]).code, EXIT_ERROR);
    assert_eq!(liaison(&["scroll", "--type", "1,1,1", "--n", "5", "intersect", "1,0;x,1;1,0"]).code, EXIT_ERROR);
}

#[test]
fn classify_reports_both_routes() {
    let text = ok(&["classify", "--d", "98", "--n", "5", "--s", "9", "--json"]);
    let r: ClassifyReport = assert_round_trip(&text);
    assert_eq!(r.example1.chain.as_ref().unwrap().genus_cross_check, 550);
    assert_eq!(r.example2.as_ref().unwrap().genus_cross_check, 550);
    let r: ClassifyReport = assert_round_trip(&ok(&["classify", "--d", "85", "--n", "5", "--s", "8", "--json"]));
    assert_eq!(r.example2.unwrap().genus_cross_check, 452);
}

#[test]
fn verify_example_passes() {
    let args = ["verify", "--surface", "quadric", "--a1", "2", "--a2", "2", "--split", "3", "--seed", "7", "--imax", "1"];
    let o = liaison(&args);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    assert!(o.out.contains("PASS"));
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let r: VerificationReport = assert_round_trip(&ok(&json_args));
    assert!(r.pass);
    assert_eq!(r.rows.len(), 2);
    assert!(r.rows.iter().all(|row| row.equal));
    assert_eq!(r.seed, Some(7));
}

#[test]
fn verify_every_surface() {
    for surface in ["quadric", "cone", "cubic-scroll"] {
        let text = ok(&["verify", "--surface", surface, "--a1", "2", "--a2", "3", "--imin", "-1", "--json"]);
        let r: VerificationReport = assert_round_trip(&text);
        assert!(r.pass, "{surface}: {:?}", r.rows);
        assert_eq!(r.seed, Some(DEFAULT_SEED));
        assert_eq!(r.rows.len(), 3);
    }
}

#[test]
fn verify_from_point_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z1.txt");
    // Smooth points of xz = y^2 with x, y, z not all zero.
    std::fs::write(&path, "# three points\n1 1 1 5\n1 2 4 -1\n1 -3 9 2\n").unwrap();
    let text = ok(&["verify", "--surface", "cone", "--a1", "2", "--a2", "2", "--z1", path.to_str().unwrap(), "--json"]);
    let r: VerificationReport = assert_round_trip(&text);
    assert!(r.pass);
    assert_eq!(r.split.z1, 3);

    std::fs::write(&path, "0 0 0 1\n").unwrap();
    let o = liaison(&["verify", "--surface", "cone", "--a1", "2", "--a2", "2", "--z1", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.err.contains("singular"), "{}", o.err);
}

#[test]
fn verify_rejects_out_of_range_twist() {
    let o = liaison(&["verify", "--surface", "quadric", "--a1", "2", "--a2", "2", "--imax", "2"]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.err.contains("min(a1, a2)"), "{}", o.err);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec![],
        vec!["genus", "--d", "98"],
        vec!["verify", "--surface", "plane", "--a1", "1", "--a2", "1"],
        vec!["verify", "--surface", "cone", "--a1", "1", "--a2", "1", "--split", "1", "--z1", "f"],
        vec!["frobnicate"],
    ] {
        let o = liaison(&args);
        assert_eq!(o.code, EXIT_ERROR, "{args:?}");
        assert!(!o.err.is_empty());
        assert!(o.out.is_empty());
    }
    assert_eq!(liaison(&["genus", "--d", "5", "--n", "5", "--s", "9"]).code, EXIT_ERROR);
    assert_eq!(liaison(&["bound", "--n", "2", "--s", "9"]).code, EXIT_ERROR);
}

#[test]
fn help_and_version_exit_zero() {
    let o = liaison(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.out.contains("verify"));
    assert_eq!(liaison(&["--version"]).code, EXIT_OK);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--surface", "cone", "--a1", "2", "--a2", "2", "--seed", "3", "--json"],
        vec!["verify", "--surface", "quadric", "--a1", "3", "--a2", "3"],
        vec!["genus", "--d", "500", "--n", "7", "--s", "20", "--json"],
        vec!["classify", "--d", "96", "--n", "5", "--s", "9"],
    ] {
        assert_eq!(ok(&args), ok(&args), "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = liaison(&["bound", "--n", "5", "--s", "9", "--json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.out.is_empty());
    let r: BoundReport = assert_round_trip(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(r.min_admissible_degree, "2035");
}

#[test]
fn styling_only_when_asked() {
    let args = ["liaison", "verify", "--surface", "quadric", "--a1", "1", "--a2", "1"];
    let styled = |extra: &[&str]| {
        let mut out = Vec::new();
        let argv: Vec<&str> = args.iter().chain(extra).copied().collect();
        assert_eq!(run_styled(argv, &mut out, &mut Vec::new(), true), EXIT_OK);
        String::from_utf8(out).unwrap()
    };
    assert!(styled(&[]).contains("\x1b["));
    assert!(!styled(&["--plain"]).contains('\x1b'));
    assert!(!styled(&["--json"]).contains('\x1b'));
}

#[test]
fn failed_verification_exits_two() {
    // A tampered report must still round-trip, and the exit code for an
    // unequal row is distinct from usage errors.
    assert_ne!(EXIT_FAILED, EXIT_ERROR);
    let text = ok(&["verify", "--surface", "quadric", "--a1", "2", "--a2", "2", "--split", "7", "--imin", "1", "--json"]);
    let mut r: VerificationReport = serde_json::from_str(&text).unwrap();
    r.rows[0].lhs += 1;
    r.rows[0].equal = false;
    r.pass = false;
    let tampered = format!("{}\n", serde_json::to_string_pretty(&r).unwrap());
    assert_round_trip::<VerificationReport>(&tampered);
}
