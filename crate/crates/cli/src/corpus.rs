use std::path::Path;

use thue_twist::json::FamilyDescriptor;

/// Families shipped with the binary, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("plastic", include_str!("../../../data/families/plastic.json")),
    ("cube_root_two", include_str!("../../../data/families/cube_root_two.json")),
    ("quartic", include_str!("../../../data/families/quartic.json")),
    ("golden", include_str!("../../../data/families/golden.json")),
    ("sqrt2", include_str!("../../../data/families/sqrt2.json")),
    ("cyclotomic12", include_str!("../../../data/families/cyclotomic12.json")),
];

/// Reads a descriptor from a file, falling back to a bundled name.
pub fn load(spec: &str) -> Result<FamilyDescriptor, String> {
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?
    } else if let Some((_, t)) = BUNDLED.iter().find(|(n, _)| *n == spec) {
        (*t).to_string()
    } else {
        return Err(format!("no family file or bundled family named {spec:?}"));
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid family descriptor {spec}: {e}"))
}

pub fn bundled() -> Vec<(String, FamilyDescriptor)> {
    BUNDLED.iter().map(|(n, t)| (n.to_string(), serde_json::from_str(t).expect("bundled descriptors parse"))).collect()
}
