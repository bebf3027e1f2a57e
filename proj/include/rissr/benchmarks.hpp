#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rissr/optimizer.hpp"

namespace rissr {

enum class Scheme {
  kProposed,
  kProposedSdr,
  kWithoutSr,
  kRandomPhase,
  kWithoutRis,
  kLocalOnly,
  kRandomBeta,
};

std::string scheme_name(Scheme s);
/// Throws ValidationError for unknown names.
Scheme parse_scheme(std::string_view name);
std::vector<Scheme> all_schemes();

struct SchemeResult {
  Scheme scheme = Scheme::kProposed;
  Metrics metrics;
  Trace trace;
  OptState state;
  DecodeOrder order;
  double mean_beta = 0.0;
};

/// Runs one scheme from the seeded initial state of `settings.seed`. Every
/// scheme is scored by completed_bits on the channels it actually sees.
SchemeResult run_scheme(Scheme scheme, const SystemConfig& cfg, const ChannelSet& channels,
                        const AOSettings& settings);

SchemeResult run_proposed(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);
SchemeResult run_proposed_sdr(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);
/// RIS acts as a fixed extra path (c = +1), no secondary rate; W, phases and beta optimized.
SchemeResult run_without_sr(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);
/// Initial random phases frozen; W and beta optimized.
SchemeResult run_random_phase(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);
/// Reflected paths removed, zero-forcing W with unit-norm columns, only beta optimized.
SchemeResult run_without_ris(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);
/// beta = 0: all energy goes to local computation.
SchemeResult run_local_only(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);
/// beta drawn uniformly once and frozen; W and phases optimized.
SchemeResult run_random_beta(const SystemConfig& cfg, const ChannelSet& channels, const AOSettings& settings);

/// Columns of H (H^H H)^{-1} scaled to unit norm, H = [h_d,1 ... h_d,K].
/// Throws RankDeficient if M < K or H^H H is singular.
CMatrix zero_forcing(const std::vector<CVector>& h_d);

/// Same channels with every user -> RIS link set to zero, so b = 0.
ChannelSet without_reflection(const ChannelSet& channels);

/// Independent draw of beta in [0, 1)^K for the random_beta scheme.
RVector random_beta_draw(std::size_t users, std::uint64_t seed);

}  // namespace rissr
