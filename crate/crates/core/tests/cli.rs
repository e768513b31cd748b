use std::process::{Command, Output};

fn scattered(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scattered")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verdict_exit_codes() {
    assert_eq!(scattered(&["embed", "G(1)", "I(1)"]).status.code(), Some(0));
    assert_eq!(scattered(&["embed", "I(1)", "G(1)"]).status.code(), Some(1));
    assert_eq!(scattered(&["sametype", "G(1)", "I(1)"]).status.code(), Some(1));
    assert_eq!(scattered(&["homeo", "G(G(1))", "sum{2*G(G(1))}"]).status.code(), Some(1));
    let wide = "lim(;{1*G(G(1)),1*I(G(1)),1*G(I(1)),1*I(I(1)),1*lim(;{w*G(1),1*I(1)})})";
    assert_eq!(scattered(&["embed", wide, "G(I(I(1)))"]).status.code(), Some(2));
}

#[test]
fn errors_go_to_stderr() {
    let o = scattered(&["norm", "lim(;)"]);
    assert!(o.status.code().unwrap() >= 3);
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
    assert!(scattered(&["suite", "unknown"]).status.code().unwrap() >= 3);
    assert!(scattered(&["rank"]).status.code().unwrap() >= 3);
}

#[test]
fn text_and_json_reports() {
    assert_eq!(stdout(&scattered(&["canon", "sum{3*G(1),1*1}"])), "w*3+1\n");
    assert_eq!(stdout(&scattered(&["norm", "sum{2*1,w*1}"])), "D\n");
    assert_eq!(stdout(&scattered(&["deriv", "I(G(1))"])), "I(1)\n");
    assert_eq!(stdout(&scattered(&["compactify", "D"])), "G(1)\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&scattered(&["embed", "I(1)", "G(1)", "--format", "json"]))).unwrap();
    assert_eq!(v["answer"], "no");
    assert_eq!(v["obstruction"]["kind"], "compact-local");
    let s: serde_json::Value = serde_json::from_str(&stdout(&scattered(&["stable-enum", "2", "--format", "json"]))).unwrap();
    assert_eq!(s["count"], 5);
}

#[test]
fn identical_invocations_match() {
    for args in [
        &["suite", "ordinal-laws", "--seed", "7"][..],
        &["poset", "2", "--json"],
        &["embed", "I(G(1))", "G(I(1))", "--format", "json", "--budget", "4,2"],
    ] {
        let (a, b) = (scattered(args), scattered(args));
        assert_eq!((a.status.code(), &a.stdout), (b.status.code(), &b.stdout), "{args:?}");
    }
    assert_ne!(
        stdout(&scattered(&["suite", "ordinal-laws", "--seed", "7"])),
        "",
    );
}

#[test]
fn suites_pass() {
    let o = scattered(&["suite", "stable-counts"]);
    assert_eq!(stdout(&o), "stable-counts: 2/2 expected counts matched\n");
    for name in ["derivative-rank", "embed-corpus", "family-xf"] {
        assert_eq!(scattered(&["suite", name]).status.code(), Some(0), "{name}");
    }
}
