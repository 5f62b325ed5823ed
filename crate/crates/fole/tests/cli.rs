mod common;

use common::{data, fole, golden, EXIT_MATRIX, SUBCOMMANDS};
use fole::{emit_model, load_model, parse_model};
use fole_core::testing::fixture;

#[test]
fn fixture_file_is_the_canonical_fixture() {
    let text = std::fs::read_to_string(data("fixture.fole")).unwrap();
    assert_eq!(text, emit_model(&fixture::works_on()));
    assert_eq!(parse_model(&text, "fixture").unwrap(), fixture::works_on());
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 6] = [
        (&["interpret", "@fixture.fole", "--type", "Act"], "act.csv"),
        (&["interpret", "@fixture.fole", "--type", "Emp", "--embed"], "emp_embedded.csv"),
        (&["linearize", "@fixture.fole"], "fixture.eav"),
        (&["linearize", "@fixture.fole", "--format", "ntriples"], "fixture.nt"),
        (&["olog", "@unified.fole"], "unified.dot"),
        (&["--json", "validate", "@arity_drop.fole"], "arity_drop.json"),
    ];
    for (args, file) in cases {
        assert_eq!(fole(args).stdout, golden(file), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    for (args, expected) in EXIT_MATRIX {
        let run = fole(args);
        assert_eq!(run.code, *expected, "{args:?}: {}{}", run.stdout, run.stderr);
        if run.code == 2 {
            assert!(run.stdout.is_empty(), "{args:?}");
            assert!(!run.stderr.is_empty(), "{args:?}");
        }
    }
    for sub in SUBCOMMANDS {
        for code in [0, 2] {
            assert!(
                EXIT_MATRIX.iter().any(|(a, c)| a.first() == Some(&sub) && *c == code),
                "{sub} lacks exit {code}"
            );
        }
        if sub != "extent" {
            assert!(EXIT_MATRIX.iter().any(|(a, c)| a.first() == Some(&sub) && *c == 1), "{sub} lacks exit 1");
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    for (args, _) in EXIT_MATRIX {
        let (a, b) = (fole(args), fole(args));
        assert_eq!((a.code, a.stdout, a.stderr), (b.code, b.stdout, b.stderr));
    }
}

#[test]
fn interpret_act_has_one_row() {
    let out = fole(&["interpret", "@fixture.fole", "--type", "Act"]).stdout;
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn not_unified_report() {
    let run = fole(&["--json", "olog", "@fixture.fole"]);
    assert_eq!(run.code, 1);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["verdict"], "violated");
    let laws: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|x| x["law"].as_str().unwrap()).collect();
    assert_eq!(laws, ["entity-type-not-sort", "sort-not-entity-type", "sort-not-entity-type", "sort-not-entity-type"]);
}

#[test]
fn reduct_and_image_outputs() {
    let reduct = parse_model(&fole(&["reduct", "@reduct.morph.json"]).stdout, "reduct").unwrap();
    assert!(reduct.is_valid());
    assert_eq!(reduct.ent().incidence(), [("Emp".into(), "e1".into())].into());
    assert_eq!(reduct.universe(), fixture::works_on().universe());

    let image = parse_model(&fole(&["image", "@image.morph.json"]).stdout, "image").unwrap();
    assert!(image.is_valid());
    assert_eq!(image.ent().incidence(), [("Emp".into(), "e1".into())].into());
}

#[test]
fn unify_and_embed() {
    let unified = fole(&["unify", "@fixture.fole"]).stdout;
    assert_eq!(unified, std::fs::read_to_string(data("unified.fole")).unwrap());
    let loaded = load_model(std::path::Path::new(&data("unified.fole"))).unwrap();
    assert_eq!(loaded.entity_types(), loaded.sorts());

    let embedded = fole(&["embed-keys", "@fixture.fole"]).stdout;
    assert!(embedded.contains("\"E:Emp\"") && embedded.contains("\"A:Alice\""));
    // Generated names are reserved, so an embedded model cannot be read back.
    assert!(parse_model(&embedded, "embedded").is_err());
}

#[test]
fn factorization_output() {
    let run = fole(&["factorize", "@renaming.morph.json"]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["midpointsAgree"], true);
    assert_eq!(v["recomposes"], true);
    assert_eq!(v["schemaMid"], v["universeMid"]);
}

#[test]
fn extent_lists_names() {
    assert_eq!(fole(&["extent", "@fixture.fole", "--type", "Emp"]).stdout, "e1\n");
    assert_eq!(fole(&["extent", "@fixture.fole", "--type", "Emp", "--side", "attr"]).stdout, "e1\n");
    assert_eq!(fole(&["extent", "@fixture.fole", "--type", "Nat", "--side", "attr"]).stdout, "12\n3\n5000\n7\n");
}

#[test]
fn parse_errors_carry_a_position() {
    let run = fole(&["validate", "@malformed.fole"]);
    assert!(run.stderr.contains("line 3, column 1"), "{}", run.stderr);
}
