#include "ury/fin_metric.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ury {

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Identity:
      os << "identity: d(" << i << "," << j << ") = " << rat_str(lhs) << " but i != j";
      break;
    case Symmetry:
      os << "symmetry: d(" << i << "," << j << ") = " << rat_str(lhs) << " != d(" << j << "," << i
         << ") = " << rat_str(rhs);
      break;
    case Positivity:
      os << "positivity: d(" << i << "," << j << ") = " << rat_str(lhs) << " < 0 or d(" << i << ","
         << i << ") != 0";
      break;
    case Triangle:
      os << "triangle: d(" << i << "," << k << ") = " << rat_str(lhs) << " > d(" << i << "," << j
         << ") + d(" << j << "," << k << ") = " << rat_str(rhs);
      break;
  }
  return os.str();
}

namespace {

void check_pairs(const FinMetric& m, std::vector<MetricViolation>& out) {
  int n = m.size();
  for (int i = 0; i < n; ++i) {
    if (m.d(i, i) != 0) out.push_back({MetricViolation::Positivity, i, i, -1, m.d(i, i), Rat(0)});
    for (int j = i + 1; j < n; ++j) {
      if (m.d(i, j) != m.d(j, i))
        out.push_back({MetricViolation::Symmetry, i, j, -1, m.d(i, j), m.d(j, i)});
      if (m.d(i, j) < 0)
        out.push_back({MetricViolation::Positivity, i, j, -1, m.d(i, j), Rat(0)});
      if (m.d(i, j) == 0)
        out.push_back({MetricViolation::Identity, i, j, -1, m.d(i, j), Rat(0)});
    }
  }
}

}  // namespace

ValidationReport validate_metric_serial(const FinMetric& m) {
  ValidationReport rep;
  check_pairs(m, rep.violations);
  int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (m.d(i, k) > m.d(i, j) + m.d(j, k))
          rep.violations.push_back(
              {MetricViolation::Triangle, i, j, k, m.d(i, k), m.d(i, j) + m.d(j, k)});
      }
  return rep;
}

ValidationReport validate_metric(const FinMetric& m) {
  ValidationReport rep;
  check_pairs(m, rep.violations);
  int n = m.size();
#ifdef _OPENMP
  std::vector<std::vector<MetricViolation>> local(omp_get_max_threads());
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    auto& mine = local[omp_get_thread_num()];
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (m.d(i, k) > m.d(i, j) + m.d(j, k))
          mine.push_back({MetricViolation::Triangle, i, j, k, m.d(i, k), m.d(i, j) + m.d(j, k)});
      }
  }
  for (auto& v : local) rep.violations.insert(rep.violations.end(), v.begin(), v.end());
#else
  auto serial = validate_metric_serial(m);
  return serial;
#endif
  return rep;
}

bool extension_admissible(const FinMetric& m, const ExtensionRequest& req) {
  if (req.base.size() != req.targets.size())
    throw std::invalid_argument("extension request: base/target length mismatch");
  std::set<int> seen;
  for (size_t i = 0; i < req.base.size(); ++i) {
    int u = req.base[i];
    if (u < 0 || u >= m.size())
      throw std::invalid_argument("extension request: unknown point id " + std::to_string(u));
    if (!seen.insert(u).second)
      throw std::invalid_argument("extension request: duplicate base point " + std::to_string(u));
    if (req.targets[i] <= 0) return false;
  }
  for (size_t i = 0; i < req.base.size(); ++i)
    for (size_t j = i + 1; j < req.base.size(); ++j) {
      const Rat& d = m.d(req.base[i], req.base[j]);
      if (rat_abs(req.targets[i] - req.targets[j]) > d) return false;
      if (d > req.targets[i] + req.targets[j]) return false;
    }
  return true;
}

FinMetric urysohn_extend(const FinMetric& m, const ExtensionRequest& req) {
  if (!extension_admissible(m, req))
    throw std::invalid_argument("urysohn_extend: inadmissible request");
  int n = m.size();
  FinMetric out = m;
  int y = n;
  out.points.push_back(y);
  std::vector<Rat> row(n + 1, Rat(0));
  std::vector<bool> in_base(n, false);
  for (size_t i = 0; i < req.base.size(); ++i) {
    row[req.base[i]] = req.targets[i];
    in_base[req.base[i]] = true;
  }
  for (int x = 0; x < n; ++x) {
    if (in_base[x]) continue;
    bool first = true;
    Rat best;
    for (size_t i = 0; i < req.base.size(); ++i) {
      Rat cand = m.d(x, req.base[i]) + req.targets[i];
      if (first || cand < best) {
        best = cand;
        first = false;
      }
    }
    if (first)
      throw std::invalid_argument("urysohn_extend: empty base over a nonempty space");
    row[x] = best;
  }
  for (int x = 0; x < n; ++x) out.dist[x].push_back(row[x]);
  out.dist.push_back(std::move(row));
  return out;
}

std::vector<Rat> repair_targets(const FinMetric& m, const std::vector<int>& base,
                                const std::vector<Rat>& raw, const Rat& floor) {
  if (floor <= 0) throw std::invalid_argument("repair_targets: floor must be positive");
  size_t k = base.size();
  // First pass makes the vector 1-Lipschitz over the base metric, the second
  // enforces the sum constraints; both moves are minimal in the sup norm.
  std::vector<Rat> f(k);
  for (size_t i = 0; i < k; ++i) {
    f[i] = raw[i];
    for (size_t j = 0; j < k; ++j) {
      Rat cand = raw[j] + m.d(base[i], base[j]);
      if (cand < f[i]) f[i] = cand;
    }
  }
  std::vector<Rat> h(k);
  for (size_t i = 0; i < k; ++i) {
    h[i] = f[i];
    for (size_t j = 0; j < k; ++j) {
      Rat cand = m.d(base[i], base[j]) - f[j];
      if (cand > h[i]) h[i] = cand;
    }
    if (h[i] < floor) h[i] = floor;
  }
  return h;
}

}  // namespace ury
