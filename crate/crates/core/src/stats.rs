/// Work counters collected during a computation.
///
/// Every counter only grows; `max_stack_depth` is a running maximum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub regions_processed: u64,
    pub max_stack_depth: u64,
    pub manual_columns: u64,
    pub sqrt_calls: u64,
    pub div_calls: u64,
}

impl RunStats {
    pub fn observe_depth(&mut self, depth: usize) {
        self.max_stack_depth = self.max_stack_depth.max(depth as u64);
    }

    /// Folds another run's counters into this one.
    pub fn merge(&mut self, other: &RunStats) {
        self.regions_processed += other.regions_processed;
        self.max_stack_depth = self.max_stack_depth.max(other.max_stack_depth);
        self.manual_columns += other.manual_columns;
        self.sqrt_calls += other.sqrt_calls;
        self.div_calls += other.div_calls;
    }
}
