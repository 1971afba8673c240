//! Built-in example documents, embedded at compile time.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Polytope,
    Fan,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Polytope => "polytope",
            EntryKind::Fan => "fan",
        })
    }
}

#[derive(Debug, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub text: &'static str,
    pub provenance: &'static str,
}

impl CorpusEntry {
    /// `kind/name`, unique across the corpus.
    pub fn qualified_name(&self) -> String {
        format!("{}/{}", self.kind, self.name)
    }
}

macro_rules! entry {
    ($kind:ident, $name:literal, $file:literal, $prov:literal) => {
        CorpusEntry {
            name: $name,
            kind: EntryKind::$kind,
            text: include_str!(concat!("../corpus/", $file)),
            provenance: $prov,
        }
    };
}

static ENTRIES: &[CorpusEntry] = &[
    entry!(Polytope, "tetrahedron", "tetrahedron.poly3", "regular tetrahedron, convex hull of four alternate cube vertices"),
    entry!(Polytope, "cube", "cube.poly3", "the cube [-1,1]^3"),
    entry!(Polytope, "pentagonal-prism", "pentagonal-prism.poly3", "prism over a regular pentagon"),
    entry!(Polytope, "dodecahedron", "dodecahedron.poly3", "regular dodecahedron, the C20 fullerene"),
    entry!(Polytope, "truncated-simplex", "truncated-simplex.poly3", "tetrahedron with one vertex cut off; facets in the ray order of blowup-cp3"),
    entry!(Fan, "cp3", "cp3.fan3", "normal fan of the standard simplex"),
    entry!(Fan, "cube", "cube.fan3", "normal fan of the cube, (CP1)^3"),
    entry!(Fan, "blowup-cp3", "blowup-cp3.fan3", "star subdivision of the cone (e1,e2,e3) of cp3"),
    entry!(Fan, "cp1xcp2", "cp1xcp2.fan3", "product fan, normal fan of the triangular prism"),
    entry!(Fan, "cp1xf2", "cp1xf2.fan3", "CP1 times the Hirzebruch surface F2, contains flat walls"),
];

pub fn list() -> &'static [CorpusEntry] {
    ENTRIES
}

/// Looks up `kind/name`, or a bare name. A bare name shared by a polytope and a fan
/// resolves to the polytope.
pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    if let Some((kind, bare)) = name.split_once('/') {
        return match kind {
            "polytope" => polytope(bare),
            "fan" => fan(bare),
            _ => None,
        };
    }
    polytope(name).or_else(|| fan(name))
}

pub fn polytope(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.kind == EntryKind::Polytope && e.name == name)
}

pub fn fan(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.kind == EntryKind::Fan && e.name == name)
}

pub fn polytope_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().filter(|e| e.kind == EntryKind::Polytope).map(|e| e.name)
}

pub fn fan_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().filter(|e| e.kind == EntryKind::Fan).map(|e| e.name)
}
