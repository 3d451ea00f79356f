//! The in-repo diagram corpus. Every fixture is generated here from the
//! builders; the files under `fixtures/` must match byte for byte.

use std::path::PathBuf;

use khoco_core::annular::{concentric_diagram, torus_tangle_closure};
use khoco_core::builders::{self, TreeShape, RIII_BRAIDS};
use khoco_core::diagram::RawDiagram;
use khoco_core::LinkDiagram;

pub const BLESS_VAR: &str = "KHOCO_BLESS";

/// Repository `fixtures/` directory.
pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_path(file: &str) -> PathBuf {
    fixture_dir().join(file)
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub file: String,
    pub raw: RawDiagram,
}

fn fixture(file: &str, d: &LinkDiagram, provenance: &str) -> Fixture {
    let mut raw = d.to_raw();
    raw.provenance = Some(provenance.to_string());
    Fixture { file: format!("{file}.json"), raw }
}

fn braid_file(word: &str) -> String {
    let toks: String = word.split_whitespace().map(|t| t.replace("^-1", "m1")).collect();
    format!("braid_{toks}")
}

/// All fixtures, in file-name order.
pub fn generate() -> Vec<Fixture> {
    let mut out = Vec::new();
    out.push(fixture("unknot0", &builders::pointed_unknot().with_name("unknot"), "constructed: crossingless pointed unknot"));
    out.push(fixture("hopf", &builders::pointed_hopf(), "constructed: closure of s1 s1 in B2, pointed"));
    out.push(fixture("hopf_mirror", &builders::pointed_hopf().mirror().with_name("pointed mirror Hopf"), "constructed: mirror of hopf.json"));
    out.push(fixture("trefoil", &builders::pointed_trefoil(), "constructed: closure of s1^3 in B2, pointed"));
    for (name, d) in builders::corpus() {
        let file = match name.as_str() {
            "unknot with positive kink" => "unknot_kink_pos",
            "unknot with negative kink" => "unknot_kink_neg",
            "unknot with two kinks" => "unknot_two_kinks",
            "figure eight" => "figure_eight",
            _ => continue,
        };
        out.push(fixture(file, &d, "constructed: corpus diagram"));
    }
    for l in 1..=5 {
        out.push(fixture(&format!("torus_2_{l}"), &builders::torus_2(l), &format!("constructed: closure of s1^{l} in B2, pointed")));
    }
    for (w, d) in RIII_BRAIDS {
        let diag = LinkDiagram::from_braid(w, 3).unwrap().with_basepoint(0).unwrap().with_name(&format!("closure of {w}"));
        out.push(fixture(
            &braid_file(w),
            &diag,
            &format!("constructed: closure of {w} in B3; published code distance {d}"),
        ));
    }
    let chain = builders::rii_rii_chain();
    let chain_files = ["rii_rii_chain_top", "rii_rii_chain_mid_pm", "rii_rii_chain_mid_mp", "rii_rii_chain_bottom_pm", "rii_rii_chain_bottom_mp"];
    for (d, f) in chain.iter().zip(chain_files) {
        out.push(fixture(f, d, "constructed: RI/RII/RIII chain of unknot diagrams, rebuilt from the move sequence"));
    }
    let u2 = builders::pointed_unknot().disjoint_union(&builders::unknot());
    for (over, tag) in [(true, "over"), (false, "under")] {
        let d = builders::rii(&u2, 0, 1, false, over).unwrap().with_name(&format!("unknot slide ({tag})"));
        out.push(fixture(&format!("rii_unknot_slide_{tag}"), &d, "constructed: RII of an unknot against a pointed unknot"));
    }
    out.push(fixture("rii_unknot_slide_pre", &u2.with_name("two-component unlink"), "constructed: before the unknot slide"));
    for m in [2, 4] {
        out.push(fixture(&format!("iterated_hopf_{m}"), &builders::iterated_hopf(m), &format!("constructed: connect sum of {m} pointed Hopf links")));
    }
    for l in 1..=3 {
        out.push(fixture(&format!("tree_unlink_path_{l}"), &builders::tree_unlink(l, TreeShape::Path), "constructed: unlink tree, path shape"));
        out.push(fixture(&format!("tree_unlink_star_{l}"), &builders::tree_unlink(l, TreeShape::Star), "constructed: unlink tree, star shape"));
    }
    for (b, l) in [(1, 1), (1, 2), (2, 1), (1, 3)] {
        out.push(fixture(&format!("branched_unknot_{b}_{l}"), &builders::branched_unknot(b, l), "constructed: branched unknot"));
    }
    for n in [0, 3, 4] {
        out.push(fixture(&format!("annular_tangle_{n}"), &torus_tangle_closure(n), "constructed: annular closure of a (2,n) tangle"));
    }
    for l in 1..=5 {
        out.push(fixture(&format!("annular_D{l}"), &concentric_diagram(l).unwrap(), "constructed: concentric circles under an ellipse"));
    }
    out.sort_by(|a, b| a.file.cmp(&b.file));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_file_names() {
        assert_eq!(braid_file("s1 s2^-1 s1^-1 s2"), "braid_s1s2m1s1m1s2");
        assert_eq!(braid_file("s2^-1 s1^-1 s2 s2"), "braid_s2m1s1m1s2s2");
    }

    #[test]
    fn names_unique_and_valid() {
        let f = generate();
        let mut names: Vec<&str> = f.iter().map(|x| x.file.as_str()).collect();
        names.dedup();
        assert_eq!(names.len(), f.len());
        for x in &f {
            LinkDiagram::from_raw(&x.raw).unwrap();
        }
    }
}
