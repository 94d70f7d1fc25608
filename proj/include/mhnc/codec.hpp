#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mhnc/types.hpp"

namespace mhnc {

using Symbols = std::vector<std::uint8_t>;

// sum_i coeffs[i] * packets[i], componentwise. Throws std::invalid_argument
// when the counts or payload lengths disagree.
Symbols encode(std::span<const Symbols> packets, std::span<const std::uint8_t> coeffs);

// Linear combination of coded rows (coefficients and payloads together).
// Throws std::invalid_argument on an empty hold or a count mismatch.
CodedRow recode(std::span<const CodedRow> rows, std::span<const std::uint8_t> coeffs);

// Unit row for information packet `index` carrying `payload`.
CodedRow source_row(InfoIndex index, Symbols payload);

// Incrementally maintained reduced row-echelon form over information-packet
// columns. Used as the decoder at the destination and as the rank oracle at
// relays.
class RowSpace {
 public:
  explicit RowSpace(std::size_t payload_len = 0) : payload_len_(payload_len) {}

  // Returns true when the row increased the rank.
  bool insert(const CodedRow& row);

  std::int64_t rank() const { return static_cast<std::int64_t>(rows_.size()); }
  // Largest k with packets 0..k all solved; -1 when packet 0 is unsolved.
  InfoIndex decoded_prefix() const { return frontier_; }
  bool is_solved(InfoIndex i) const;
  // Only valid when is_solved(i).
  const Symbols& payload(InfoIndex i) const;
  std::vector<InfoIndex> solved() const;
  bool contains(const CodedRow& row) const;
  // Rank of the span with column `col` deleted.
  std::int64_t rank_without(InfoIndex col) const;

 private:
  struct Row {
    std::vector<std::uint8_t> coeffs;  // columns [0, width_)
    Symbols payload;
  };

  void widen(std::size_t width);
  Row reduce(const CodedRow& in) const;
  void advance_frontier();

  std::size_t payload_len_;
  std::size_t width_ = 0;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;  // column -> row index, -1 if not a pivot
  InfoIndex frontier_ = -1;
};

struct EliminationResult {
  std::int64_t rank = 0;
  std::vector<InfoIndex> solved;
  std::vector<Symbols> payloads;  // parallel to `solved`
};

EliminationResult eliminate(std::span<const CodedRow> rows);

}  // namespace mhnc
