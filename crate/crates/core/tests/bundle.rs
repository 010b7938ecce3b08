use std::fs;
use std::path::Path;

use rasum_core::corpus::{load_topic, CorpusConfig, CorpusError, Origin};
use tempfile::TempDir;

const TREE_A: &str = "( (S (NP (DT The) (NN storm)) (VP (VBD hit) (NP (DT the) (NN coast))) (. .)) )";
const TREE_B: &str = "( (S (NP (NNS Roads)) (VP (VBD closed) (PP (IN in) (NP (CD three) (NNS towns)))) (. .)) )";

fn write(dir: &Path, rel: &str, content: &str) {
    let path = dir.join(rel);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, content).unwrap();
}

fn bundle(doc: &str, parses: &str) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    write(root, "topic.json", r#"{"id": "storm", "documents": [{"id": "a", "timestamp": 3}]}"#);
    write(root, "docs/a.txt", doc);
    write(root, "parses/a.ptb", parses);
    dir
}

#[test]
fn loads_paragraphs_comments_and_references() {
    let dir = bundle("The storm hit the coast.\n\nRoads closed in three towns.\n", &format!("{TREE_A}\n\n{TREE_B}\n"));
    write(dir.path(), "comments.txt", "Stay safe everyone.\n\nThe coast road is gone.\n");
    write(dir.path(), "gold/b.txt", "Roads closed.\n");
    write(dir.path(), "gold/a.txt", "A storm hit the coast.\n");
    write(dir.path(), "gold/notes.md", "ignored\n");
    let topic = load_topic(dir.path(), &CorpusConfig::default()).unwrap();

    assert_eq!(topic.length_budget_words, 100);
    let doc = &topic.documents[0];
    assert_eq!(doc.paragraphs.len(), 2);
    let ids: Vec<&str> = topic.news_sentences().map(|s| s.id.as_str()).collect();
    assert_eq!(ids, ["a-0", "a-1"]);
    assert_eq!(topic.news_sentences().nth(1).unwrap().paragraph_index, 1);
    let comments: Vec<&str> = topic.comment_sentences.iter().map(|s| s.id.as_str()).collect();
    assert_eq!(comments, ["c0", "c1"]);
    assert!(topic.comment_sentences.iter().all(|s| s.origin == Origin::Comment && s.parse.is_none()));
    let refs: Vec<&str> = topic.references.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(refs, ["a", "b"]);
}

#[test]
fn explicit_ids_are_kept() {
    let dir = bundle("s1\tThe storm hit the coast.\ns2\tRoads closed in three towns.\n", &format!("{TREE_A}\n{TREE_B}\n"));
    let topic = load_topic(dir.path(), &CorpusConfig::default()).unwrap();
    assert!(topic.sentence("s2").is_some());
}

#[test]
fn missing_tree_names_the_sentence() {
    let dir = bundle("The storm hit the coast.\nRoads closed in three towns.\n", &format!("{TREE_A}\n"));
    match load_topic(dir.path(), &CorpusConfig::default()) {
        Err(CorpusError::MissingParse { sentence_id }) => assert_eq!(sentence_id, "a-1"),
        other => panic!("{other:?}"),
    }
    fs::remove_file(dir.path().join("parses/a.ptb")).unwrap();
    assert!(matches!(
        load_topic(dir.path(), &CorpusConfig::default()),
        Err(CorpusError::MissingParse { sentence_id }) if sentence_id == "a-0"
    ));
}

#[test]
fn duplicate_ids_are_rejected() {
    let dir = bundle("s1\tThe storm hit the coast.\ns1\tRoads closed in three towns.\n", &format!("{TREE_A}\n{TREE_B}\n"));
    assert!(matches!(
        load_topic(dir.path(), &CorpusConfig::default()),
        Err(CorpusError::DuplicateId { id }) if id == "s1"
    ));
}

#[test]
fn malformed_inputs_report_file_and_line() {
    let dir = bundle("The storm hit the coast.\n", &format!("{TREE_A}\n(S (NP x\n"));
    assert!(matches!(load_topic(dir.path(), &CorpusConfig::default()), Err(CorpusError::MalformedBundle { line: 2, .. })));

    let dir = bundle("The storm hit the coast.\n", "(S (NP (NN x)\n");
    match load_topic(dir.path(), &CorpusConfig::default()) {
        Err(CorpusError::MalformedBundle { file, line, .. }) => {
            assert!(file.ends_with("a.ptb"));
            assert_eq!(line, 1);
        }
        other => panic!("{other:?}"),
    }

    let dir = bundle("The storm hit the coast.\n", TREE_A);
    write(dir.path(), "topic.json", r#"{"id": "storm", "documents": []}"#);
    assert!(matches!(load_topic(dir.path(), &CorpusConfig::default()), Err(CorpusError::MalformedBundle { .. })));
    write(dir.path(), "topic.json", "{ not json");
    assert!(matches!(load_topic(dir.path(), &CorpusConfig::default()), Err(CorpusError::MalformedBundle { .. })));
    fs::remove_file(dir.path().join("topic.json")).unwrap();
    assert!(matches!(load_topic(dir.path(), &CorpusConfig::default()), Err(CorpusError::Io { .. })));
}

#[test]
fn bundled_topics_load() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata/topics");
    let mut count = 0;
    for entry in fs::read_dir(root).unwrap() {
        let topic = load_topic(&entry.unwrap().path(), &CorpusConfig::default()).unwrap();
        assert_eq!(topic.references.len(), 2);
        assert!(!topic.comment_sentences.is_empty());
        assert!(topic.news_sentences().all(|s| s.parse.is_some()));
        count += 1;
    }
    assert_eq!(count, 5);
}
