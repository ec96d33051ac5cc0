#include "ury/embedding.hpp"

#include <stdexcept>

namespace ury {

EmbeddingIntoU::EmbeddingIntoU(EffSpacePtr x, UrysohnBuilder& b, int count, int precision)
    : x_(std::move(x)), b_(&b), precision_(precision) {
  if (count < 1) throw std::invalid_argument("embed_into_U: count must be >= 1");
  if (precision < 1) throw std::invalid_argument("embed_into_U: precision must be >= 1");
  if (x_->dense_size && count > *x_->dense_size)
    throw std::invalid_argument("embed_into_U: count exceeds dense set size");
  for (int k = 0; k < count; ++k) {
    // Later images query earlier ones six levels deeper per stage, so earlier
    // images are built with the extra headroom.
    int depth = precision + 6 * (count - 1 - k);
    std::vector<UReal> anchors(images_.begin(), images_.end());
    std::vector<FastCauchy> targets;
    EffSpacePtr sp = x_;
    for (int i = 0; i < k; ++i)
      targets.push_back(FastCauchy{[sp, k, i](int p) { return sp->dist(k, i, p); }, sp->name});
    images_.push_back(b_->realize_approx(anchors, targets, depth));
  }
}

const UReal& EmbeddingIntoU::image(int i) const {
  if (i < 0 || i >= count()) throw std::invalid_argument("image: index out of range");
  return images_[static_cast<size_t>(i)];
}

IsometryReport EmbeddingIntoU::verify(const std::vector<std::pair<int, int>>& pairs,
                                      int p) const {
  if (p < 1 || p > precision_)
    throw std::invalid_argument("verify: precision outside the built range");
  IsometryReport rep;
  rep.precision = p;
  Rat tol = pow2_neg(p - 2);
  for (auto [i, j] : pairs) {
    if (i < 0 || i >= count() || j < 0 || j >= count())
      throw std::invalid_argument("verify: pair outside constructed range");
    Rat embedded = b_->space().d(images_[i].point(p), images_[j].point(p));
    Rat expected = x_->dist(i, j, p);
    Rat disc = rat_abs(embedded - expected);
    rep.entries.push_back({i, j, embedded, expected, disc, disc <= tol});
  }
  return rep;
}

}  // namespace ury
