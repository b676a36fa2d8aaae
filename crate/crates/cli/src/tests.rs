use std::path::PathBuf;

use super::run;

fn avn(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut argv: Vec<String> = std::iter::once("avn".to_string())
        .chain(args.iter().map(|a| a.to_string()))
        .collect();
    if let Some(text) = stdin {
        let path = graph_file(text);
        argv.push(path.to_string_lossy().into_owned());
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn graph_file(text: &str) -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!(
        "avn-graph-{}-{}.txt",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn enumerate_first_triple_and_records() {
    let (code, out, _) = avn(&["enumerate", "--qubits", "3", "--limit", "1"], None);
    assert_eq!(code, 0);
    assert_eq!(out, "XXX | XYY | YXY\ncount=1\n");
    let (_, rec, _) = avn(
        &[
            "enumerate",
            "--qubits",
            "3",
            "--limit",
            "2",
            "--format",
            "records",
            "--phases",
        ],
        None,
    );
    let lines: Vec<&str> = rec.lines().collect();
    assert_eq!(
        lines[0],
        r#"{"n":3,"e":"XXX","f":"XYY","g":"YXY","ne":1,"nf":1,"ng":1}"#
    );
    assert_eq!(
        lines[1],
        r#"{"n":3,"e":"XXX","f":"XYY","g":"-YXY","ne":1,"nf":1,"ng":1}"#
    );
    assert_eq!(lines[2], "count=2");
}

#[test]
fn output_is_deterministic() {
    let a = avn(&["enumerate", "--qubits", "4", "--phases"], None);
    let b = avn(&["enumerate", "--qubits", "4", "--phases"], None);
    assert_eq!(a, b);
    assert!(a.1.ends_with("count=152064\n"));
    assert_eq!(
        avn(&["verify", "--suite", "theorem", "--seed", "5"], None),
        avn(&["verify", "--suite", "theorem", "--seed", "5"], None)
    );
}

#[test]
fn count_modes() {
    assert_eq!(
        avn(&["count", "--qubits", "3", "--mode", "formula"], None).1,
        "1728\n"
    );
    let (code, out, _) = avn(&["count", "--qubits", "4", "--mode", "brute"], None);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "brute: 152064 (phase-free 19008)\nformula: 152064\nMATCH\n"
    );
    let (code, _, err) = avn(&["count", "--qubits", "5", "--mode", "brute"], None);
    assert_eq!(code, 3);
    assert!(err.contains("cap"));
    let (code, out, _) = avn(
        &[
            "count",
            "--qubits",
            "4",
            "--mode",
            "structured",
            "--format",
            "records",
        ],
        None,
    );
    assert_eq!(code, 0);
    assert_eq!(out, "{\"n\":4,\"mode\":\"structured\",\"count\":\"152064\",\"formula\":\"152064\",\"matches\":true}\n");
}

#[test]
fn theory_reports() {
    let (code, out, _) = avn(&["theory", "XXX,ZZI,IZZ"], None);
    assert_eq!(code, 0);
    assert!(out.contains("AvN: yes\ncertificate:\n"));
    assert!(out.contains("x1+x2+x3 = 0    [XXX]"));
    assert!(out.ends_with("sum: 0 = 1\n"));
    let (code, out, _) = avn(&["theory", "XI,IX"], None);
    assert_eq!(code, 0);
    assert!(out.contains("AvN: no\nassignment: x1=0"));
    assert_eq!(avn(&["theory", "XX,ZI"], None).0, 2);
    assert_eq!(avn(&["theory", "XQ"], None).0, 2);
}

#[test]
fn graph_actions() {
    let square = "n=4\nedges=0-1,0-2,1-3,2-3\n";
    let (code, out, _) = avn(&["graph", "triple"], Some(square));
    assert_eq!(code, 0);
    assert!(out.contains("triple: XZZI | YYZZ | YZYZ"));
    assert!(out.contains("sum: 0 = 1"));
    assert_eq!(
        avn(&["graph", "avn"], Some("n=2\nedges=0-1\n")).1,
        "AvN: no (maximum degree 1)\n"
    );
    assert_eq!(
        avn(
            &["graph", "lc", "--vertex", "2"],
            Some("n=3\nedges=0-1,0-2,1-2\n")
        )
        .1,
        "n=3\nedges=0-2,1-2\n"
    );
    let (_, orbit, _) = avn(&["graph", "orbit"], Some("011\n101\n110\n"));
    assert!(orbit.starts_with("orbit size=4\n"));
    assert_eq!(avn(&["graph", "avn"], Some("n=2\nedges=0-5\n")).0, 2);
    assert_eq!(avn(&["graph", "lc"], Some(square)).0, 2);
}

#[test]
fn model_dump() {
    let (code, out, _) = avn(&["model", "prbox", "--theory"], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("a1 b1 | 00:1/2 01:0/1 10:0/1 11:1/2\n"));
    assert!(out.ends_with("strongly contextual: yes\n"));
    let (code, out, _) = avn(&["model", "ZI,IZ"], None);
    assert_eq!(code, 0);
    assert!(out.contains("Z1 Z2 | 00:1/1 01:0/1 10:0/1 11:0/1"));
    assert_eq!(avn(&["model", "ZI"], None).0, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(avn(&["enumerate"], None).0, 2);
    assert_eq!(avn(&["enumerate", "--qubits", "2"], None).0, 2);
    assert_eq!(avn(&["frobnicate"], None).0, 2);
    assert_eq!(avn(&["enumerate", "--qubits", "7"], None).0, 3);
    let (code, _, err) = avn(
        &[
            "enumerate",
            "--qubits",
            "3",
            "--limit",
            "0",
            "--max-qubits",
            "7",
        ],
        None,
    );
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
}
