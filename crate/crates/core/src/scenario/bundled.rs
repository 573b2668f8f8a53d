//! Scenarios shipped with the binary.

use super::config::Scenario;

const BUNDLED: [(&str, &str); 4] = [
    ("unit_disk_identity", include_str!("../../scenarios/unit_disk_identity.json")),
    ("rotation", include_str!("../../scenarios/rotation.json")),
    ("affine_ellipse_k13", include_str!("../../scenarios/affine_ellipse_k13.json")),
    ("perturbed_smooth", include_str!("../../scenarios/perturbed_smooth.json")),
];

pub fn list_scenarios() -> Vec<&'static str> {
    BUNDLED.iter().map(|(name, _)| *name).collect()
}

pub fn bundled_source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn bundled(name: &str) -> Option<Scenario> {
    bundled_source(name).map(|text| Scenario::parse(text, false).expect("bundled scenarios parse"))
}
