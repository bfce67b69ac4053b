//! Groups shipped with the crate.

use crate::group::{load_group, GroupSpec};

/// Figure-eight knot group over `Q(theta)`, `theta^2 - theta + 1 = 0`.
pub const FIGURE_EIGHT_JSON: &str = include_str!("../catalog/figure_eight.json");

pub fn figure_eight() -> GroupSpec {
    load_group(FIGURE_EIGHT_JSON).expect("shipped catalog group is valid")
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &["figure-eight"];

pub fn by_name(name: &str) -> Option<GroupSpec> {
    match name {
        "figure-eight" | "figure_eight" | "4_1" => Some(figure_eight()),
        _ => None,
    }
}
