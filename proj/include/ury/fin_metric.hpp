#pragma once

#include <string>
#include <vector>

#include "ury/rational.hpp"

namespace ury {

// Finite metric space with rational distances. Points are opaque integer ids
// assigned by creation order; dist is a total symmetric matrix. Immutable in
// use: operations return new values.
struct FinMetric {
  std::vector<int> points;
  std::vector<std::vector<Rat>> dist;

  int size() const { return static_cast<int>(points.size()); }
  const Rat& d(int i, int j) const { return dist[i][j]; }
};

// Demand for a one-point extension: d(base[i], x) = targets[i].
struct ExtensionRequest {
  std::vector<int> base;
  std::vector<Rat> targets;
};

struct MetricViolation {
  enum Kind { Identity, Symmetry, Positivity, Triangle } kind;
  int i, j, k;  // k = -1 unless Triangle
  Rat lhs, rhs;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<MetricViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Exhaustive metric-axiom check, O(N^3) over triples. The OpenMP version is
// the default entry point; the serial one is the reference kept for testing
// and benchmarking.
ValidationReport validate_metric(const FinMetric& m);
ValidationReport validate_metric_serial(const FinMetric& m);

// True iff the request is consistent with the metric axioms over the base:
// |a_i - a_j| <= d(u_i, u_j) <= a_i + a_j for all base pairs, targets > 0.
bool extension_admissible(const FinMetric& m, const ExtensionRequest& req);

// Adjoin a fresh point y with d(u_i, y) = a_i on the base and
// d(x, y) = min_i (d(x, u_i) + a_i) elsewhere.
FinMetric urysohn_extend(const FinMetric& m, const ExtensionRequest& req);

// Minimal coordinatewise repair of a target vector toward admissibility over
// the given base points, with a positive floor on every target. Returns the
// repaired targets; the caller compares the perturbation against its slack
// budget. Input targets may be arbitrary rationals.
std::vector<Rat> repair_targets(const FinMetric& m, const std::vector<int>& base,
                                const std::vector<Rat>& raw, const Rat& floor);

}  // namespace ury
