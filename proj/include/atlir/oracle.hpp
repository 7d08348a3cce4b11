#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atlir/formula.hpp"
#include "atlir/icgs.hpp"

namespace atlir {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// A uniform memoryless strategy: one action per coalition member and
/// observation class. choice[i][token] belongs to coalition member i.
struct UniformStrategy {
  Coalition coalition;
  std::vector<std::vector<ActionId>> choice;

  GroupAction action_at(const Icgs& model, StateId q) const;
  /// The induced move set; covers every state.
  MoveSet moves(const Icgs& model) const;
};

/// Every uniform strategy of the coalition exactly once, in odometer order
/// (last member's last class varies fastest, actions in protocol order).
class UniformEnumerator {
 public:
  /// Throws EnumerationCapExceeded when the strategy count is above cap.
  UniformEnumerator(const Icgs& model, Coalition coalition, std::uint64_t cap = kDefaultEnumerationCap);

  std::optional<UniformStrategy> next();
  std::uint64_t count() const { return count_; }

 private:
  const Icgs* model_;
  Coalition coalition_;
  std::vector<std::vector<std::span<const ActionId>>> options_;  // [member][token]
  std::vector<std::vector<std::size_t>> position_;
  std::uint64_t count_ = 1;
  bool done_ = false;
};

/// Number of uniform strategies, saturating at UINT64_MAX.
std::uint64_t count_uniform(const Icgs& model, const Coalition& coalition);

std::vector<UniformStrategy> enumerate_uniform(const Icgs& model, const Coalition& coalition,
                                               std::uint64_t cap = kDefaultEnumerationCap);

/// States from which every outcome of s satisfies (q1 U q2).
StateSet strategy_sat_u(const Icgs& model, const UniformStrategy& s, const StateSet& q1, const StateSet& q2);

/// States all of whose successors under s lie in target.
StateSet strategy_sat_x(const Icgs& model, const UniformStrategy& s, const StateSet& target);

/// Reference semantics by strategy enumeration; f must be normalized.
StateSet oracle_eval(const Icgs& model, const Formula& f, std::uint64_t cap = kDefaultEnumerationCap);

/// Perfect-information semantics (general memoryless strategies).
StateSet perfect_info_eval(const Icgs& model, const Formula& f);

}  // namespace atlir
