#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "atlir/icgs.hpp"

namespace atlir {

/// Whether two Γ-moves are Γ-conflicting: some coalition member cannot
/// distinguish their states but is assigned different actions.
bool conflicting(const Icgs& model, const Coalition& coalition, const Move& m1, const Move& m2);

/// Whether some pair of moves of ms is conflicting.
bool is_conflicting(const Icgs& model, const MoveSet& ms);

/// Moves of `candidates` that conflict with no move of `base` (Compatible^M).
MoveSet compatible(const Icgs& model, const MoveSet& candidates, const MoveSet& base);

/// Controllable predecessor: states where the coalition has an action all of
/// whose completions lead into target.
StateSet pre_ce(const Icgs& model, const Coalition& coalition, const StateSet& target);

/// Move-level controllable predecessor: every Γ-move whose completions all
/// lead into base|_Q (Pre^M).
MoveSet pre_move(const Icgs& model, const Coalition& coalition, const MoveSet& base);

struct FixpointTrace {
  StateSet result;
  /// Rounds that added at least one state.
  std::size_t rounds = 0;
};

/// μZ. q2 ∪ (q1 ∩ pre_ce(Z)): states from which a general memoryless
/// strategy forces reaching q2 through q1.
StateSet filter_ceu(const Icgs& model, const Coalition& coalition, const StateSet& q1, const StateSet& q2);
FixpointTrace filter_ceu_traced(const Icgs& model, const Coalition& coalition, const StateSet& q1,
                                const StateSet& q2);

/// Lazy enumeration of the splits of a move set into non-conflicting unions
/// of equivalence classes. One level per coalition member (in coalition
/// order); each level walks the member's equivalence classes in order of
/// their smallest move and, per class, tries each action the class proposes
/// for the member in increasing order and finally (when not restricted to
/// the largest subsets) the choice of leaving the class out. Results are
/// deduplicated; the enumeration order is deterministic.
class SplitStream {
 public:
  SplitStream(const Icgs& model, MoveSet moves, bool largest_only, bool skip_empty = false);
  /// Restricts the split to a single coalition member (one level).
  SplitStream(const Icgs& model, AgentId agent, MoveSet moves, bool largest_only);

  SplitStream(SplitStream&&) noexcept;
  SplitStream& operator=(SplitStream&&) noexcept;
  ~SplitStream();

  std::optional<MoveSet> next();
  /// Number of sets yielded so far.
  std::size_t produced() const { return produced_; }

 private:
  struct Level;

  std::optional<std::vector<std::uint32_t>> advance_leaf();
  MoveSet materialize(const std::vector<std::uint32_t>& indices) const;

  const Icgs* model_;
  MoveSet root_;
  std::vector<std::size_t> member_order_;  // member positions to split on, in order
  bool largest_only_;
  bool skip_empty_;
  bool started_ = false;
  bool finished_ = false;
  std::vector<std::unique_ptr<Level>> stack_;
  std::set<std::vector<std::uint64_t>> seen_;
  std::size_t produced_ = 0;
};

/// SplitAgent: subsets of non-ag-conflicting equivalence classes of ms;
/// only the largest ones when `largest_only`. An empty ms yields {∅}.
std::vector<MoveSet> split_agent(const Icgs& model, AgentId ag, const Coalition& coalition, const MoveSet& ms,
                                 bool largest_only);

/// SplitAll: split_agent folded over the coalition members.
std::vector<MoveSet> split_all(const Icgs& model, const Coalition& coalition, const MoveSet& ms,
                               bool largest_only);

/// Non-empty results of split_all(·, ·, false).
std::vector<MoveSet> split_nonempty(const Icgs& model, const Coalition& coalition, const MoveSet& ms);
SplitStream split_nonempty_stream(const Icgs& model, const MoveSet& ms);

/// split_all(·, ·, true).
std::vector<MoveSet> split_max(const Icgs& model, const Coalition& coalition, const MoveSet& ms);
SplitStream split_max_stream(const Icgs& model, const MoveSet& ms);

}  // namespace atlir
