#include "mhnc/dof_buffer.hpp"

#include <stdexcept>
#include <string>

namespace mhnc {

bool PrefixTracker::add(DofIndex hi, InfoIndex certified) {
  if (hi <= covered_) return false;
  const auto k = static_cast<std::size_t>(hi - covered_ - 1);
  if (pending_.size() <= k) {
    pending_.resize(k + 1, 0);
    certified_.resize(k + 1, -1);
  }
  ++pending_[k];
  certified_[k] = std::max(certified_[k], certified);

  std::int64_t held = 0;
  std::size_t best = 0;
  for (std::size_t j = 0; j < pending_.size(); ++j) {
    held += pending_[j];
    if (held >= static_cast<std::int64_t>(j + 1)) best = j + 1;
  }
  if (best == 0) return false;
  const InfoIndex before = prefix_;
  for (std::size_t j = 0; j < best; ++j) prefix_ = std::max(prefix_, certified_[j]);
  covered_ += static_cast<DofIndex>(best);
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(best));
  certified_.erase(certified_.begin(), certified_.begin() + static_cast<std::ptrdiff_t>(best));
  return prefix_ > before;
}

void DofBuffer::append(InfoIndex info_hi, InfoIndex certified, std::optional<CodedRow> row) {
  entries_.push_back(Entry{info_hi, certified, std::move(row)});
}

const DofBuffer::Entry& DofBuffer::at(DofIndex i) const {
  if (i < base_ || i >= size())
    throw std::out_of_range("DoF " + std::to_string(i) + " not held");
  return entries_[static_cast<std::size_t>(i - base_)];
}

void DofBuffer::drop_below(DofIndex i) {
  while (base_ < i && !entries_.empty()) {
    entries_.pop_front();
    ++base_;
  }
}

std::vector<CodedRow> DofBuffer::rows(DofIndex lo, DofIndex hi) const {
  std::vector<CodedRow> out;
  for (DofIndex i = std::max(lo, base_); i <= hi && i < size(); ++i)
    if (const auto& r = at(i).row) out.push_back(*r);
  return out;
}

}  // namespace mhnc
