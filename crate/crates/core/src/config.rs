//! Size caps shared by the engines.
//!
//! Defaults keep the full test suite at desk scale. `GERBEFORGE_MAX_ORDER`
//! overrides the group-order cap; the other caps scale with it.

use std::sync::OnceLock;

pub const DEFAULT_MAX_ORDER: usize = 96;
pub const DEFAULT_MAX_AUT_ORDER: usize = 24;
pub const DEFAULT_MAX_CHARACTER_ORDER: usize = 48;
pub const DEFAULT_MAX_MATRIX_SIDE: usize = 20_000;
pub const DEFAULT_MAX_ALGEBRA_DIM: usize = 2_500;
pub const DEFAULT_MAX_CLASSES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_order: usize,
    pub max_aut_order: usize,
    pub max_character_order: usize,
    pub max_matrix_side: usize,
    pub max_algebra_dim: usize,
    /// Largest cohomology group enumerated element by element.
    pub max_classes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: DEFAULT_MAX_ORDER,
            max_aut_order: DEFAULT_MAX_AUT_ORDER,
            max_character_order: DEFAULT_MAX_CHARACTER_ORDER,
            max_matrix_side: DEFAULT_MAX_MATRIX_SIDE,
            max_algebra_dim: DEFAULT_MAX_ALGEBRA_DIM,
            max_classes: DEFAULT_MAX_CLASSES,
        }
    }
}

impl Caps {
    /// Caps with `GERBEFORGE_MAX_ORDER` applied, if set and parseable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(order) = std::env::var("GERBEFORGE_MAX_ORDER")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            caps = caps.with_max_order(order);
        }
        caps
    }

    pub fn with_max_order(mut self, order: usize) -> Self {
        let scale = |d: usize| ((d as f64) * order as f64 / DEFAULT_MAX_ORDER as f64).ceil() as usize;
        self.max_order = order;
        self.max_aut_order = scale(DEFAULT_MAX_AUT_ORDER).max(1);
        self.max_character_order = scale(DEFAULT_MAX_CHARACTER_ORDER).max(1);
        self
    }
}

static CAPS: OnceLock<Caps> = OnceLock::new();

/// Process-wide caps, read once from the environment.
pub fn caps() -> Caps {
    *CAPS.get_or_init(Caps::from_env)
}
