//! Fixture bodies shipped with the crate.

use crate::io::{parse_body, NamedBody, Result};

/// Names of all shipped fixtures.
pub const NAMES: &[&str] = &["cube", "fig5_left", "fig5_right", "lens", "point", "quarter_disk", "segment", "square", "square_planar", "stadium", "triangle", "triangle_deleted_vertex", "truncated_disk_closed", "truncated_disk_open", "unit_disk"];

pub fn text(name: &str) -> Option<&'static str> {
    Some(match name {
        "cube" => include_str!("../../../fixtures/cube.json"),
        "fig5_left" => include_str!("../../../fixtures/fig5_left.json"),
        "fig5_right" => include_str!("../../../fixtures/fig5_right.json"),
        "lens" => include_str!("../../../fixtures/lens.json"),
        "point" => include_str!("../../../fixtures/point.json"),
        "quarter_disk" => include_str!("../../../fixtures/quarter_disk.json"),
        "segment" => include_str!("../../../fixtures/segment.json"),
        "square" => include_str!("../../../fixtures/square.json"),
        "square_planar" => include_str!("../../../fixtures/square_planar.json"),
        "stadium" => include_str!("../../../fixtures/stadium.json"),
        "triangle" => include_str!("../../../fixtures/triangle.json"),
        "triangle_deleted_vertex" => include_str!("../../../fixtures/triangle_deleted_vertex.json"),
        "truncated_disk_closed" => include_str!("../../../fixtures/truncated_disk_closed.json"),
        "truncated_disk_open" => include_str!("../../../fixtures/truncated_disk_open.json"),
        "unit_disk" => include_str!("../../../fixtures/unit_disk.json"),
        _ => return None,
    })
}

/// Parses a shipped fixture. Panics on unknown names, since they are compile-time constants.
pub fn load(name: &str) -> Result<NamedBody> {
    parse_body(text(name).unwrap_or_else(|| panic!("unknown fixture {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for n in NAMES {
            let b = load(n).unwrap();
            assert_eq!(b.name, *n);
        }
    }
}
