//! Enumeration budgets.
//!
//! Exhaustive oracles only run within explicit budgets; exceeding one is an
//! error, never a silent truncation. The `MODDIV_BUDGET_OVERRIDE` environment
//! variable raises all of them at once.

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Maximum number of module elements an enumeration may produce.
    pub max_elements: u64,
    /// Maximum number of candidate matrices a hom enumeration may scan.
    pub max_hom_candidates: u64,
    /// Maximum ring size for classification and ring-wide scans.
    pub max_ring_size: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 10_000,
            max_hom_candidates: 1_000_000,
            max_ring_size: 4096,
        }
    }
}

impl Budget {
    /// The default budget, raised by `MODDIV_BUDGET_OVERRIDE` when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var("MODDIV_BUDGET_OVERRIDE") {
            if let Ok(n) = v.trim().parse::<u64>() {
                b.max_elements = b.max_elements.max(n);
                b.max_hom_candidates = b.max_hom_candidates.max(n);
                b.max_ring_size = b.max_ring_size.max(n);
            }
        }
        b
    }

    pub fn with_max_elements(mut self, n: u64) -> Self {
        self.max_elements = n;
        self
    }

    pub fn with_max_ring_size(mut self, n: u64) -> Self {
        self.max_ring_size = n;
        self
    }
}
