use std::process::{Command, Output};

use tqa_core::corpus::load_testbed;
use tqa_core::decompose::QuestionType;
use tqa_core::xml::Element;

const CLINTON: &str = "Where did Bill Clinton study before going to Oxford University?";

fn tqa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqa")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("tqa-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn decompose_prints_a_loadable_q_block() {
    let out = tqa(&["decompose", "--lang", "en", "--ref", "2008-01-01", CLINTON]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("  <Q-FOCUS>Where did Bill Clinton study?</Q-FOCUS>"),
        "{text}"
    );
    let loaded = load_testbed(&text).unwrap();
    assert_eq!(loaded[0].qtype, QuestionType::Four);
    assert_eq!(
        loaded[0].q_rest.as_deref(),
        Some("When did Bill Clinton go to Oxford University?")
    );
}

#[test]
fn type_one_has_no_sub_questions() {
    let out = tqa(&["decompose", "--ref", "2008-01-01", "What is the capital of Brazil?"]);
    let text = stdout(&out);
    assert!(text.contains("<TYPE>1</TYPE>"));
    assert!(!text.contains("Q-FOCUS") && !text.contains("Q-REST"));
}

#[test]
fn spanish_restriction() {
    let q = "¿Quién fue el Presidente de España justo después de que se produjera el primer vuelo del Columbia en los años 80?";
    let out = tqa(&["decompose", "--lang", "es", "--ref", "2008-01-01", q]);
    assert!(stdout(&out).contains("<Q-REST>¿Cuándo se produjo el primer vuelo del Columbia en los años 80?</Q-REST>"));
}

#[test]
fn unsplittable_exits_one_with_a_diagnostic() {
    let out = tqa(&["decompose", "--ref", "2008-01-01", "Who was there before?"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("UNSPLITTABLE"));
}

#[test]
fn answers_come_one_per_line() {
    let out = tqa(&["answer", CLINTON]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "Georgetown University\n");

    let out = tqa(&["answer", "Where were the Olympics held 16 years ago?"]);
    assert_eq!(stdout(&out), "Barcelona\n");
}

#[test]
fn unknown_question_is_empty_but_successful() {
    let out = tqa(&["answer", "What is the tallest mountain on Mars?"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");
    assert!(stderr(&out).contains("NOACT"));
}

#[test]
fn answer_reads_a_fixture_file() {
    let fixtures = temp_file(
        "fixtures.xml",
        r#"<FIXTURES ref="2008-01-01" lang="en">
  <FQ key="Where were the Olympics held in 2008?">
    <A rank="1" value="2008">Beijing</A>
    <A rank="2" value="1992">Barcelona</A>
  </FQ>
</FIXTURES>"#,
    );
    let path = fixtures.to_str().unwrap();
    let out = tqa(&["answer", "--fixtures", path, "Where were the Olympics held in 2008?"]);
    assert_eq!(stdout(&out), "Beijing\n");
    // keys are stored with a question mark, so verbatim matching misses
    let out = tqa(&[
        "answer",
        "--fixtures",
        path,
        "--strict-keys",
        "Where were the Olympics held in 2008",
    ]);
    assert_eq!(stdout(&out), "");
}

#[test]
fn bad_inputs_exit_two() {
    assert_eq!(
        tqa(&["answer", "--fixtures", "/nonexistent/f.xml", CLINTON])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tqa(&["tag", "--ref", "2008-02-30", "x"]).status.code(), Some(2));
    assert_eq!(tqa(&["tag", "--lang", "fr", "x"]).status.code(), Some(2));
    assert_eq!(tqa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn eval_names_the_offending_question() {
    let tb = temp_file(
        "bad.xml",
        r#"<TESTBED><Q id="77"><QUESTION>x</QUESTION><TYPE>3</TYPE></Q></TESTBED>"#,
    );
    let out = tqa(&["eval", "--testbed", tb.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("77"));
}

#[test]
fn eval_without_fixtures_is_decomposition_only() {
    let out = tqa(&["eval", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(0));
    let report = Element::parse(&stdout(&out)).unwrap();
    assert!(report.children_named("ROW").all(|r| r.get("kind") != Some("qa")));
    assert!(report.children_named("ROW").any(|r| r.get("name") == Some("DECOMP")));
}

#[test]
fn eval_with_fixtures_and_gold_te() {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/fixtures_en.xml");
    let out = tqa(&["eval", "--fixtures", fixtures, "--gold-te"]);
    let text = stdout(&out);
    assert!(text.contains("MRR"));
    assert!(text.contains("CORR*"));

    let out = tqa(&["eval", "--fixtures", fixtures, "--gold-te", "--format", "xml"]);
    let reports = Element::parse(&stdout(&out)).unwrap();
    let modes: Vec<_> = reports
        .children_named("REPORT")
        .map(|r| r.get("gold-te").unwrap().to_string())
        .collect();
    assert_eq!(modes, ["no", "yes"]);
}

#[test]
fn tag_and_classify() {
    let out = tqa(&[
        "tag",
        "--ref",
        "2008-01-01",
        "Who won the best actress Oscar in the 50s?",
    ]);
    assert_eq!(stdout(&out), "the 50s\t195\ten.decade.the\n");
    let out = tqa(&["classify", "Who won the best actress Oscar in 1955?"]);
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn packs_validate_from_a_directory() {
    assert!(stdout(&tqa(&["pack-validate", "--lang", "es"])).starts_with("es: ok"));
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data");
    let out = tqa(&["pack-validate", "--pack", dir, "--lang", "en"]);
    assert!(stdout(&out).starts_with("en: ok"));

    let broken = temp_file("broken.xml", "<PACK code=\"xx\"/>");
    let out = tqa(&["pack-validate", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
