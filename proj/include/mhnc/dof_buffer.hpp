#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "mhnc/types.hpp"

namespace mhnc {

// Receiver-side generic rank in the sender's DoF numbering. Packets from one
// sender arrive with non-decreasing window bounds, so the greedy assignment
// of each packet to the smallest free index >= w_min is a maximum matching;
// the pointer is the count of "seen" sender DoFs.
class SeenTracker {
 public:
  // True when the packet with window [lo, hi] adds a DoF.
  bool accepts(DofIndex lo, DofIndex hi) const { return std::max(pointer_, lo) <= hi; }
  bool observe(DofIndex lo, DofIndex hi) {
    const DofIndex pos = std::max(pointer_, lo);
    if (pos > hi) return false;
    pointer_ = pos + 1;
    return true;
  }
  DofIndex pointer() const { return pointer_; }

 private:
  DofIndex pointer_ = 0;
};

// Decoded information prefix by DoF accounting against one sender. Holding
// k + 1 innovative DoFs whose windows end at or below sender DoF k means the
// receiver spans the sender's first k + 1 DoFs, and so decodes whatever the
// sender certified for that set.
class PrefixTracker {
 public:
  // Registers an innovative DoF whose window ends at sender DoF `hi`;
  // `certified` is the prefix the sender could decode from DoFs 0..hi.
  // Returns true when the decoded prefix grew.
  bool add(DofIndex hi, InfoIndex certified);
  InfoIndex prefix() const { return prefix_; }
  DofIndex covered() const { return covered_; }

 private:
  DofIndex covered_ = -1;
  InfoIndex prefix_ = -1;
  // Indexed by hi - covered_ - 1.
  std::vector<std::int64_t> pending_;
  std::vector<InfoIndex> certified_;
};

// A node's own DoFs in arrival order. Entries below base() have been
// eliminated and are no longer addressable.
class DofBuffer {
 public:
  struct Entry {
    InfoIndex info_hi = 0;
    // Prefix decodable from DoFs 0..this one.
    InfoIndex certified = -1;
    std::optional<CodedRow> row;
  };

  void append(InfoIndex info_hi, InfoIndex certified, std::optional<CodedRow> row = std::nullopt);
  DofIndex size() const { return base_ + static_cast<DofIndex>(entries_.size()); }
  DofIndex base() const { return base_; }
  const Entry& at(DofIndex i) const;
  InfoIndex info_hi(DofIndex i) const { return at(i).info_hi; }
  void drop_below(DofIndex i);
  // Rows of entries lo..hi; entries without rows are skipped.
  std::vector<CodedRow> rows(DofIndex lo, DofIndex hi) const;

 private:
  DofIndex base_ = 0;
  std::deque<Entry> entries_;
};

}  // namespace mhnc
