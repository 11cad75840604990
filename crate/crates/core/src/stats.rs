//! Counters and timings of one solver run.

use std::fmt;

/// Instrumentation of a solver run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunStats {
    /// Exclusion (`T0`) Pellet tests.
    pub n_t0: u64,
    /// Counting (`T*`) Pellet tests.
    pub n_tstar: u64,
    /// Regions excluded from annuli alone, without a Pellet test.
    pub n_annuli_excluded: u64,
    /// Regions counted from annuli alone, without a Pellet test.
    pub n_annuli_counted: u64,
    /// Seconds spent computing annuli covers.
    pub t_radii: f64,
    /// Seconds for the whole run.
    pub t_total: f64,
    pub tree_depth: u32,
    pub boxes_visited: u64,
}

impl RunStats {
    /// Total number of Pellet tests.
    pub fn n_pellet(&self) -> u64 {
        self.n_t0 + self.n_tstar
    }
}

impl fmt::Display for RunStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_t0 {}", self.n_t0)?;
        writeln!(f, "n_tstar {}", self.n_tstar)?;
        writeln!(f, "n_annuli_excluded {}", self.n_annuli_excluded)?;
        writeln!(f, "n_annuli_counted {}", self.n_annuli_counted)?;
        writeln!(f, "tree_depth {}", self.tree_depth)?;
        writeln!(f, "boxes_visited {}", self.boxes_visited)?;
        writeln!(f, "t_radii {:.6}", self.t_radii)?;
        writeln!(f, "t_total {:.6}", self.t_total)
    }
}
