use proptest::prelude::*;
use std::io::Write;
use std::process::{Command as Proc, Stdio};
use todacalc::cli::{emit, example_presentation, parse, print, run_text, Command, ExampleName, Status};

fn todacalc(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Proc::new(env!("CARGO_BIN_EXE_todacalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes_follow_status() {
    let rational = example_presentation(ExampleName::Rational, 2).unwrap();
    let (code, out) = todacalc(&["-i", "-", "check"], Some(&rational));
    assert_eq!(code, 0, "{out}");
    let (code, out) = todacalc(&["-i", "-", "is-boundary", "--object", "B", "--class", "[a,x]+[b,y]+[c,z]"], Some(&rational));
    assert_eq!(code, 0);
    assert!(out.contains(r#""witness":null"#), "{out}");
    let (code, out) = todacalc(&["augment", "--target", "B"], None);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains(r#""generator":"hwh""#));
    let (code, _) = todacalc(&["-i", "-", "check"], Some("dgl A { gen a : 2; d a = [a, b"));
    assert_eq!(code, 1);
    let (code, _) = todacalc(&["toda"], None);
    assert_eq!(code, 1);
    let (code, _) = todacalc(&["--help"], None);
    assert_eq!(code, 0);
}

#[test]
fn moore_bracket_payload() {
    let text = example_presentation(ExampleName::Moore, 2).unwrap();
    let (code, out) = todacalc(&["-i", "-", "toda", "--maps", "pinch,inc,two"], Some(&text));
    assert_eq!(code, 0);
    assert!(out.contains(r#""coset":{"contains_zero":false,"group":"Z","indeterminacy":["2"],"representative":"1"}"#), "{out}");
}

#[test]
fn empty_file_has_empty_homology_table() {
    let r = run_text(&Command::Homology { object: None, lo: None, hi: None }, Some(""));
    assert_eq!(r.status, Status::Ok);
    assert_eq!(todacalc::cli::report::canonical(&r.payload), r#"{"homology":{}}"#);
}

#[test]
fn reports_are_deterministic() {
    let text = example_presentation(ExampleName::Rational, 2).unwrap();
    let cmd = Command::Massey { object: "B".into(), u: "a".into(), v: "b".into(), w: "c".into() };
    let a = emit(&run_text(&cmd, Some(&text)));
    let b = emit(&run_text(&cmd, Some(&text)));
    assert_eq!(a, b);
    let (_, c) = todacalc(&["-i", "-", "massey", "--object", "B", "--u", "a", "--v", "b", "--w", "c"], Some(&text));
    assert_eq!(c.trim_end(), a);
}

#[test]
fn resolution_fixture_round_trips() {
    let text = example_presentation(ExampleName::Resolution, 2).unwrap();
    let file = parse(&text).unwrap();
    assert_eq!(file.items.len(), 5);
    assert_eq!(print(&file), text);
    assert_eq!(parse(&print(&file)).unwrap(), file);
}

fn token() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("dgl".to_string()),
        Just("chain".to_string()),
        Just("map".to_string()),
        Just("gen".to_string()),
        Just("d".to_string()),
        Just("truncate".to_string()),
        Just("over".to_string()),
        Just("deg".to_string()),
        Just("rank".to_string()),
        Just("boundary".to_string()),
        Just("shift".to_string()),
        "[a-zA-Z_][a-z0-9_]{0,3}",
        "[0-9]{1,3}",
        prop::sample::select(vec!["{", "}", "[", "]", ";", ":", ",", "=", "+", "-", "/", "->", "\n", "@", "#"]).prop_map(String::from),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn parser_is_total_on_token_soup(toks in prop::collection::vec(token(), 0..40)) {
        let text = toks.join(" ");
        match parse(&text) {
            Ok(f) => prop_assert_eq!(parse(&print(&f)).unwrap(), f),
            Err(e) => {
                let located = matches!(e, todacalc::Error::Parse { .. });
                prop_assert!(located, "unlocated error {:?}", e);
            }
        }
    }

    #[test]
    fn parser_is_total_on_bytes(text in "\\PC{0,80}") {
        let _ = parse(&text);
    }
}

fn scalar() -> impl Strategy<Value = String> {
    (-9i64..10, 1i64..4).prop_map(|(p, q)| if q == 1 { p.to_string() } else { format!("{p}/{q}") })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::collection::vec(scalar(), cols), rows)
        .prop_map(|m| format!("[{}]", m.iter().map(|r| r.join(",")).collect::<Vec<_>>().join(";")))
}

fn chain_and_map() -> impl Strategy<Value = String> {
    (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(a, b, c)| {
        (matrix(a, b), matrix(b, c), matrix(b, a)).prop_map(move |(d1, d2, f)| {
            format!(
                "chain C over Q {{ deg 0 rank {a}; deg 1 rank {b}; deg 2 rank {c}; boundary 1 = {d1}; boundary 2 = {d2}; }}\n\
                 map f : C -> C shift 1 {{ deg 0 = {f}; }}"
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chains_round_trip(text in chain_and_map()) {
        let f = parse(&text).unwrap();
        let printed = print(&f);
        prop_assert_eq!(parse(&printed).unwrap(), f);
        prop_assert_eq!(print(&parse(&printed).unwrap()), printed);
    }
}
