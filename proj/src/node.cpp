#include "mhnc/node.hpp"

namespace mhnc {

Symbols info_payload(std::uint64_t seed, InfoIndex i, int symbols) {
  Rng rng(seed, StreamTag::Payload, static_cast<std::uint64_t>(i));
  Symbols s(static_cast<std::size_t>(symbols));
  for (auto& b : s) b = rng.byte();
  return s;
}

Coder::Coder(const NetworkConfig& cfg, NodeIndex node)
    : verification_(cfg.verification),
      seed_(cfg.seed),
      symbols_(cfg.payload_symbols),
      coeff_rng_(cfg.seed, StreamTag::Coefficients, static_cast<std::uint64_t>(node)),
      real_(static_cast<std::size_t>(cfg.payload_symbols)) {}

std::optional<CodedRow> Coder::info_row(InfoIndex i) const {
  if (!verification_) return std::nullopt;
  return source_row(i, info_payload(seed_, i, symbols_));
}

CodedPacket Coder::make_packet(NodeIndex origin, Slot t, const DofBuffer& buf, DofIndex lo, DofIndex hi,
                               PacketKind kind) {
  CodedPacket p;
  p.origin = origin;
  p.created_at = t;
  p.w_min = lo;
  p.w_max = hi;
  p.info_hi = buf.info_hi(hi);
  p.certified = buf.at(hi).certified;
  p.kind = kind;
  if (verification_) {
    const auto held = buf.rows(lo, hi);
    if (!held.empty()) {
      std::vector<std::uint8_t> mu(held.size());
      for (auto& m : mu) m = static_cast<std::uint8_t>(coeff_rng_.next() >> 56);
      p.row = recode(held, mu);
    }
  }
  return p;
}

bool Coder::audit_reception(const CodedPacket& pkt, bool fast_innovative, Slot t) {
  if (!verification_ || !pkt.row) return true;
  const bool real = real_.insert(*pkt.row);
  audit_.fast_innovative += fast_innovative ? 1 : 0;
  audit_.real_innovative += real ? 1 : 0;
  if (fast_innovative && !real) {
    ++audit_.deficiency_events;
    audit_.deficiency_slots.push_back(t);
  }
  if (!fast_innovative && real) ++audit_.excess_events;
  return !(fast_innovative && !real);
}

}  // namespace mhnc
