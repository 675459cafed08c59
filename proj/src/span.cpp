#include "blockalg/span.hpp"

namespace blockalg {

Terms SparseEchelon::reduce(Terms v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const BasisIdx pivot = it->first;
    const Rat c = it->second;
    for (const auto& [b, rc] : row->second) {
      auto [slot, inserted] = v.try_emplace(b, -c * rc);
      if (!inserted) {
        slot->second -= c * rc;
        if (sgn(slot->second) == 0) v.erase(slot);
      }
    }
    it = v.upper_bound(pivot);
  }
  return v;
}

Terms SparseEchelon::insert_reduced(const Terms& v) {
  Terms r = reduce(v);
  if (r.empty()) return r;
  const Rat inv = Rat(1) / r.begin()->second;
  for (auto& [b, c] : r) c *= inv;
  rows_.emplace(r.begin()->first, r);
  return r;
}

}  // namespace blockalg
