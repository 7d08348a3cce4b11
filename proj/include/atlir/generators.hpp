#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "atlir/formula.hpp"
#include "atlir/icgs.hpp"

namespace atlir {

/// Three-card game between `player` and `dealer` (cards A, K, Q; A beats K,
/// K beats Q, Q beats A). The dealer deals one card to each side from the
/// initial state; the player then keeps or swaps with the table card, and
/// the cards are shown in the absorbing final states. The player sees only
/// their own card until the showdown; with `perfect_information` every state
/// is observed exactly.
Icgs gen_cardgame(bool perfect_information = false);

inline constexpr std::size_t kCastlesWorkerCap = 7;

/// Three castles with 3 health points each and n1, n2, n3 workers. Workers
/// c<i>w<j> act simultaneously: attack another castle, defend their own
/// (not twice in a row) or do nothing; a worker of a defeated castle can
/// only do nothing. Only reachable states are generated.
Icgs gen_castles(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t cap = kCastlesWorkerCap);

std::string castle_worker(std::size_t castle, std::size_t index);

struct GeneratedModel {
  Icgs model;
  CoalitionMacros macros;
};

/// "cardgame", "cardgame-perfect" or "castles:n1,n2,n3". Castles models
/// come with the macro all12 for the workers of castles 1 and 2.
GeneratedModel generate(std::string_view spec);

}  // namespace atlir
