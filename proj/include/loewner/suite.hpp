#pragma once

#include "loewner/report.hpp"

#include <cstddef>

namespace loewner {

// One entry of the built-in map pool. label is dimension-free and is what
// coverage records; spec is the parse text at a given dimension.
struct MapPoolEntry {
  std::string label;
  std::string spec;
  bool unital;
};

std::vector<MapPoolEntry> default_map_pool(int dim);
std::vector<std::string> default_norm_pool(int dim);

// Evaluates every requested inequality on seeded instances. Trial k of
// inequality I at dimension n draws everything from
// derive_seed(config.seed, I, n, k), so trials are independent of order.
Report run_suite(const SuiteConfig& config);

// run_suite with every constant multiplied by config.constant_override.
Report hunt_counterexamples(const SuiteConfig& config);

// Random search followed by hill-climbing on eigenvalues and orthogonal
// factors; reports the largest ratio / constant seen per parameter cell.
Report probe_tightness(const SuiteConfig& config);

// Scalar-side invariants: kernel ordering and symmetry, Loewner-matrix test,
// Specht ratio, sandwich constants, alpha scaling.
Report run_scalarcheck(const SuiteConfig& config);

// Dispatches on config.command.
Report run_command(const SuiteConfig& config);

// All re-checkable instances of a report in order: per inequality, its
// violating instances; then pinned audit instances not already listed.
std::vector<InstanceRecord> recheckable_instances(const Report& report);
Certificate recheck(const Report& report, std::size_t index);

// The fixed commuting instance A = diag(1,4), B = diag(4,1), g = t^2, op norm,
// (s,t) = (1/4, 4), (m,M) = (1,4), tau = nabla, sigma = #.
InstanceRecord pinned_norm_ratio_instance(std::string_view inequality_id);

}  // namespace loewner
