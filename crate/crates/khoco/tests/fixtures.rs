use std::collections::BTreeSet;
use std::fs;

use khoco::fixtures::{fixture_dir, generate, BLESS_VAR};
use khoco::io::{load_diagram, to_json};
use khoco_core::LinkDiagram;

#[test]
fn fixtures_on_disk_match_generated() {
    let dir = fixture_dir();
    let bless = std::env::var(BLESS_VAR).is_ok_and(|v| v == "1");
    if bless {
        fs::create_dir_all(&dir).unwrap();
    }
    let gen = generate();
    for f in &gen {
        let path = dir.join(&f.file);
        let want = to_json(&f.raw);
        if bless {
            fs::write(&path, &want).unwrap();
            continue;
        }
        let have = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}; rerun with {BLESS_VAR}=1", path.display()));
        assert_eq!(have, want, "{} is stale; rerun with {BLESS_VAR}=1", f.file);
    }
    let names: BTreeSet<String> = gen.iter().map(|f| f.file.clone()).collect();
    for e in fs::read_dir(&dir).unwrap() {
        let name = e.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".json") {
            assert!(names.contains(&name), "{name} is not generated by the fixture module");
        }
    }
}

#[test]
fn fixtures_load() {
    for f in generate() {
        let d = load_diagram(&fixture_dir().join(&f.file)).unwrap();
        assert_eq!(d, LinkDiagram::from_raw(&f.raw).unwrap(), "{}", f.file);
        assert!(f.raw.provenance.is_some());
    }
}

#[test]
fn annular_fixtures_carry_ray_counts() {
    for f in generate().iter().filter(|f| f.file.starts_with("annular_")) {
        assert!(f.raw.ray_counts.is_some() || f.raw.crossings.is_empty(), "{}", f.file);
        let d = LinkDiagram::from_raw(&f.raw).unwrap();
        assert!(d.ray_counts.is_some(), "{}", f.file);
    }
}
