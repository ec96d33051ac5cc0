#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ury/fast_cauchy.hpp"
#include "ury/fin_metric.hpp"

namespace ury {

// Index into the builder's growing point set.
struct UPoint {
  int index = -1;
};

// A point of the completion U, given as a fast-converging sequence of
// builder points: d(stage n, limit) <= 2^-n. Finitely constructed; querying
// past the built depth is an error unless the sequence is constant.
struct UReal {
  std::vector<int> stages;
  bool constant = false;

  int point(int n) const;
  int depth() const { return static_cast<int>(stages.size()) - 1; }
};

struct RealizedRequest {
  ExtensionRequest req;
  int point;  // index the request resolved to (fresh or reused)
};

// Cursor into the canonical bookkeeping enumeration. Requests are dovetailed
// in rounds r = 1, 2, ...; round r covers every subset of the first
// min(#points, r) points with targets p/q, 1 <= p, q <= r. Each round is
// revisited implicitly because round r+1 repeats all height-<=r material over
// the then-current points, so every admissible request over points existing
// at some step is eventually realized.
struct BookkeepingCursor {
  int round = 0;
  int universe = 0;        // min(#points at round start, round)
  unsigned long mask = 0;  // subset of {0..universe-1}
  long tuple = 0;          // mixed-radix index into target tuples
};

class UrysohnBuilder {
 public:
  UrysohnBuilder() = default;

  const FinMetric& space() const { return space_; }
  const std::vector<RealizedRequest>& log() const { return log_; }
  const BookkeepingCursor& cursor() const { return cursor_; }

  // Exact distance between two realized points.
  const Rat& dist(UPoint a, UPoint b) const;

  // Realize a rational one-point extension exactly. Reuses an existing point
  // when one already satisfies every constraint; otherwise extends the space.
  UPoint realize_rational(const ExtensionRequest& req);

  // Advance the canonical enumeration until `steps` admissible requests have
  // been realized (reuse counts as a step). max_height 0 means unbounded;
  // otherwise rounds stop at max_height and fewer steps may be taken.
  // Returns the number of steps actually performed.
  int run_bookkeeping(int steps, int max_height = 0);

  // Stagewise approximate saturation: build a UReal u with
  // d(u, anchor_i) = target_i in the limit. Stage n realizes a rational
  // request against the stage-(n+6) approximants, targets repaired within a
  // 2^-(n+2) budget, successive stages chained by d(stage n, stage n+1)
  // <= 2^-(n+1).
  UReal realize_approx(const std::vector<UReal>& anchors, const std::vector<FastCauchy>& targets,
                       int depth);

  // Closed-ball intersection criterion: r_i - r_j <= d(a_i, a_j) <= r_i + r_j
  // for all pairs decides nonempty intersection in U.
  bool balls_intersect(const std::vector<std::pair<UPoint, Rat>>& balls) const;

  // Realize a common sphere point: d(point, a_i) = r_i exactly.
  UPoint witness_intersection(const std::vector<std::pair<UPoint, Rat>>& balls);

 private:
  std::optional<UPoint> find_exact(const ExtensionRequest& req) const;
  bool next_request(int max_height, ExtensionRequest& out);

  FinMetric space_;
  std::vector<RealizedRequest> log_;
  BookkeepingCursor cursor_;
};

}  // namespace ury
