#include "mhnc/types.hpp"

#include <array>
#include <utility>

namespace mhnc {

bool is_fec(PacketKind kind) {
  return kind == PacketKind::FecAPriori || kind == PacketKind::FecPosterior ||
         kind == PacketKind::FecEow || kind == PacketKind::FecFill;
}

std::string_view to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::New: return "new";
    case PacketKind::FecAPriori: return "fec_apriori";
    case PacketKind::FecPosterior: return "fec_posterior";
    case PacketKind::FecEow: return "fec_eow";
    case PacketKind::FecFill: return "fec_fill";
    case PacketKind::Retransmission: return "retransmission";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<Action, std::string_view>, 9> kActionNames{{
    {Action::PreOp, "PRE_OP"},
    {Action::New, "NEW"},
    {Action::FecAPriori, "FEC_AP"},
    {Action::FecPosterior, "FEC_PO"},
    {Action::FecEow, "FEC_EOW"},
    {Action::FecFill, "FEC_FILL"},
    {Action::Retransmission, "RTX"},
    {Action::BspIdle, "BSP_IDLE"},
    {Action::NnfIdle, "NNF_IDLE"},
}};

}  // namespace

bool is_idle(Action a) { return a == Action::BspIdle || a == Action::NnfIdle; }

bool is_transmission(Action a) { return a != Action::PreOp && !is_idle(a); }

std::string_view to_string(Action a) {
  for (const auto& [action, name] : kActionNames)
    if (action == a) return name;
  return "?";
}

std::optional<Action> parse_action(std::string_view name) {
  for (const auto& [action, n] : kActionNames)
    if (n == name) return action;
  return std::nullopt;
}

Action action_for(PacketKind kind) {
  switch (kind) {
    case PacketKind::New: return Action::New;
    case PacketKind::FecAPriori: return Action::FecAPriori;
    case PacketKind::FecPosterior: return Action::FecPosterior;
    case PacketKind::FecEow: return Action::FecEow;
    case PacketKind::FecFill: return Action::FecFill;
    case PacketKind::Retransmission: return Action::Retransmission;
  }
  return Action::New;
}

}  // namespace mhnc
