#pragma once

#include <utility>
#include <vector>

#include "ury/eff_space.hpp"
#include "ury/urysohn.hpp"

namespace ury {

struct IsometryEntry {
  int i, j;
  Rat embedded;     // stage-p distance in the builder
  Rat expected;     // oracle distance at precision p
  Rat discrepancy;  // |embedded - expected|
  bool ok;          // discrepancy <= 2^-(p-2)
};

struct IsometryReport {
  int precision = 0;
  std::vector<IsometryEntry> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (!e.ok) return false;
    return true;
  }
};

// Isometric embedding of an effective space into U, built in index order.
// image(i) is realized against the images of r_0 .. r_{i-1} with the oracle
// distances as targets; built to a depth that supports queries at the stated
// precision.
class EmbeddingIntoU {
 public:
  EmbeddingIntoU(EffSpacePtr x, UrysohnBuilder& b, int count, int precision);

  int count() const { return static_cast<int>(images_.size()); }
  int precision() const { return precision_; }
  const UReal& image(int i) const;
  const EffSpacePtr& space() const { return x_; }
  UrysohnBuilder& builder() { return *b_; }

  IsometryReport verify(const std::vector<std::pair<int, int>>& pairs, int p) const;

 private:
  EffSpacePtr x_;
  UrysohnBuilder* b_;
  int precision_;
  std::vector<UReal> images_;
};

inline EmbeddingIntoU embed_into_U(EffSpacePtr x, UrysohnBuilder& b, int count, int precision) {
  return EmbeddingIntoU(std::move(x), b, count, precision);
}

}  // namespace ury
