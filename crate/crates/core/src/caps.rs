use serde::{Deserialize, Serialize};

/// Resource caps shared by every routine that enumerates something.
///
/// All limits are inclusive. They are echoed into every report so that a
/// certificate can be reproduced with the same bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest permutation group that may be enumerated element by element.
    pub group_order: usize,
    /// Largest orbit produced by a generic orbit closure.
    pub orbit_size: usize,
    /// Largest degree for which conjugacy classes of S_n are listed.
    pub class_degree: usize,
    /// Largest degree of a block `B` handed to the subgroup search.
    pub subgroup_degree: usize,
    /// Largest |X_n| produced by FI-set evaluation.
    pub set_size: usize,
    /// Largest matrix dimension accepted by the trace pipeline.
    pub matrix_size: usize,
    /// Largest matrix dimension accepted by the brute-force spectrum.
    pub oracle_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 40_320,
            orbit_size: 1_000_000,
            class_degree: 20,
            subgroup_degree: 8,
            set_size: 100_000,
            matrix_size: 3_000,
            oracle_size: 600,
        }
    }
}
