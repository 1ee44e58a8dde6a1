/// Work counters reported alongside operator results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    /// Pareto dominance comparisons.
    pub pareto_tests: u64,
    /// Invocations of an F-dominance primitive (vertex region or LP).
    pub f_dominance_tests: u64,
    /// Potential-optimality tests (primal or dual), including incremental rounds.
    pub po_tests: u64,
    pub lp_solves: u64,
    pub sorted_accesses: u64,
    pub random_accesses: u64,
    /// Sorted-access depth at which FA/TA stopped.
    pub halt_depth: u64,
}

impl OpStats {
    pub fn merge(&mut self, other: &OpStats) {
        self.pareto_tests += other.pareto_tests;
        self.f_dominance_tests += other.f_dominance_tests;
        self.po_tests += other.po_tests;
        self.lp_solves += other.lp_solves;
        self.sorted_accesses += other.sorted_accesses;
        self.random_accesses += other.random_accesses;
        self.halt_depth = self.halt_depth.max(other.halt_depth);
    }
}

/// Result of an operator as positions into the input relation, in input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    pub indices: Vec<usize>,
    pub stats: OpStats,
}
