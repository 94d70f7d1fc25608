#include "mhnc/codec.hpp"

#include <algorithm>
#include <stdexcept>

#include "mhnc/gf256.hpp"

namespace mhnc {

Symbols encode(std::span<const Symbols> packets, std::span<const std::uint8_t> coeffs) {
  if (packets.size() != coeffs.size())
    throw std::invalid_argument("encode: coefficient count differs from window size");
  if (packets.empty()) return {};
  const std::size_t len = packets.front().size();
  Symbols out(len, 0);
  for (std::size_t i = 0; i < packets.size(); ++i) {
    if (packets[i].size() != len) throw std::invalid_argument("encode: payload length mismatch");
    gf256::axpy(out, coeffs[i], packets[i]);
  }
  return out;
}

CodedRow recode(std::span<const CodedRow> rows, std::span<const std::uint8_t> coeffs) {
  if (rows.empty()) throw std::invalid_argument("recode: nothing held");
  if (rows.size() != coeffs.size())
    throw std::invalid_argument("recode: coefficient count differs from held rows");
  InfoIndex lo = rows.front().offset;
  InfoIndex hi = lo;
  const std::size_t len = rows.front().payload.size();
  for (const auto& r : rows) {
    if (r.payload.size() != len) throw std::invalid_argument("recode: payload length mismatch");
    lo = std::min(lo, r.offset);
    hi = std::max(hi, r.offset + static_cast<InfoIndex>(r.coeffs.size()));
  }
  CodedRow out;
  out.offset = lo;
  out.coeffs.assign(static_cast<std::size_t>(hi - lo), 0);
  out.payload.assign(len, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::span<std::uint8_t> dst(out.coeffs.data() + (r.offset - lo), r.coeffs.size());
    gf256::axpy(dst, coeffs[i], r.coeffs);
    gf256::axpy(out.payload, coeffs[i], r.payload);
  }
  return out;
}

CodedRow source_row(InfoIndex index, Symbols payload) {
  CodedRow r;
  r.offset = index;
  r.coeffs = {1};
  r.payload = std::move(payload);
  return r;
}

void RowSpace::widen(std::size_t width) {
  if (width <= width_) return;
  for (auto& r : rows_) r.coeffs.resize(width, 0);
  pivot_row_.resize(width, -1);
  width_ = width;
}

RowSpace::Row RowSpace::reduce(const CodedRow& in) const {
  Row v;
  v.coeffs.assign(std::max(width_, static_cast<std::size_t>(in.offset) + in.coeffs.size()), 0);
  std::copy(in.coeffs.begin(), in.coeffs.end(), v.coeffs.begin() + in.offset);
  v.payload = in.payload;
  v.payload.resize(std::max(payload_len_, in.payload.size()), 0);
  for (std::size_t c = 0; c < width_; ++c) {
    if (v.coeffs[c] == 0 || pivot_row_[c] < 0) continue;
    const Row& p = rows_[static_cast<std::size_t>(pivot_row_[c])];
    const std::uint8_t f = v.coeffs[c];
    gf256::axpy(std::span(v.coeffs.data(), width_), f, p.coeffs);
    gf256::axpy(v.payload, f, p.payload);
  }
  return v;
}

bool RowSpace::contains(const CodedRow& row) const {
  const Row v = reduce(row);
  return std::all_of(v.coeffs.begin(), v.coeffs.end(), [](std::uint8_t x) { return x == 0; });
}

std::int64_t RowSpace::rank_without(InfoIndex col) const {
  // Solved rows away from `col` stay independent unit rows, and the reduced
  // form keeps their columns clear in every other row.
  std::int64_t units = 0;
  RowSpace rest;
  for (const auto& r : rows_) {
    const auto nz = std::count_if(r.coeffs.begin(), r.coeffs.end(), [](std::uint8_t x) { return x != 0; });
    const bool touches = col >= 0 && static_cast<std::size_t>(col) < r.coeffs.size() &&
                         r.coeffs[static_cast<std::size_t>(col)] != 0;
    if (nz == 1 && !touches) {
      ++units;
      continue;
    }
    CodedRow c;
    c.coeffs = r.coeffs;
    if (touches) c.coeffs[static_cast<std::size_t>(col)] = 0;
    rest.insert(c);
  }
  return units + rest.rank();
}

bool RowSpace::insert(const CodedRow& row) {
  if (row.offset < 0) throw std::invalid_argument("RowSpace: negative offset");
  widen(static_cast<std::size_t>(row.offset) + row.coeffs.size());
  if (payload_len_ == 0) payload_len_ = row.payload.size();
  Row v = reduce(row);
  const auto it = std::find_if(v.coeffs.begin(), v.coeffs.end(), [](std::uint8_t x) { return x != 0; });
  if (it == v.coeffs.end()) return false;
  const auto pivot = static_cast<std::size_t>(it - v.coeffs.begin());
  const std::uint8_t norm = gf256::inv(v.coeffs[pivot]);
  gf256::scale(v.coeffs, norm);
  gf256::scale(v.payload, norm);
  for (auto& r : rows_) {
    const std::uint8_t f = r.coeffs[pivot];
    if (f == 0) continue;
    gf256::axpy(r.coeffs, f, v.coeffs);
    gf256::axpy(r.payload, f, v.payload);
  }
  pivot_row_[pivot] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  advance_frontier();
  return true;
}

bool RowSpace::is_solved(InfoIndex i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= width_) return false;
  const int r = pivot_row_[static_cast<std::size_t>(i)];
  if (r < 0) return false;
  const auto& c = rows_[static_cast<std::size_t>(r)].coeffs;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0 && k != static_cast<std::size_t>(i)) return false;
  return true;
}

const Symbols& RowSpace::payload(InfoIndex i) const {
  if (!is_solved(i)) throw std::out_of_range("RowSpace: packet not solved");
  return rows_[static_cast<std::size_t>(pivot_row_[static_cast<std::size_t>(i)])].payload;
}

std::vector<InfoIndex> RowSpace::solved() const {
  std::vector<InfoIndex> out;
  for (std::size_t c = 0; c < width_; ++c)
    if (is_solved(static_cast<InfoIndex>(c))) out.push_back(static_cast<InfoIndex>(c));
  return out;
}

void RowSpace::advance_frontier() {
  while (is_solved(frontier_ + 1)) ++frontier_;
}

EliminationResult eliminate(std::span<const CodedRow> rows) {
  RowSpace space(rows.empty() ? 0 : rows.front().payload.size());
  for (const auto& r : rows) space.insert(r);
  EliminationResult res;
  res.rank = space.rank();
  res.solved = space.solved();
  for (auto i : res.solved) res.payloads.push_back(space.payload(i));
  return res;
}

}  // namespace mhnc
