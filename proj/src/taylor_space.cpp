#include "wext/taylor_scalar.hpp"

namespace wext {

TaylorSpace::TaylorSpace(std::size_t nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1) throw std::invalid_argument("TaylorSpace: need at least one variable");
  if (order < 0 || order > 62) throw std::invalid_argument("TaylorSpace: order out of range");
  indices_ = indices_up_to(nvars, order);
  if (indices_.size() > kMaxCoeffs)
    throw std::invalid_argument("TaylorSpace: " + std::to_string(indices_.size()) + " coefficients exceed the limit of " +
                                std::to_string(kMaxCoeffs));
  for (std::size_t a = 0; a < nvars; ++a) unit_slots_.push_back(static_cast<std::size_t>(slot(MultiIndex::unit(nvars, a))));
  if (order == 0) unit_slots_.assign(nvars, 0);
  for (std::size_t a = 0; a < indices_.size(); ++a)
    for (std::size_t b = 0; b < indices_.size(); ++b) {
      if (indices_[a].order() + indices_[b].order() > order) continue;
      products_.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                           static_cast<std::uint16_t>(slot(indices_[a] + indices_[b]))});
    }
}

int TaylorSpace::slot(const MultiIndex& j) const {
  for (std::size_t k = 0; k < indices_.size(); ++k)
    if (indices_[k] == j) return static_cast<int>(k);
  return -1;
}

}  // namespace wext
