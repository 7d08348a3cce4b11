#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>

#include "atlir/formula.hpp"
#include "atlir/icgs.hpp"
#include "atlir/moveops.hpp"

namespace atlir {

/// Diagnostic counters; no semantic contract.
struct CheckStats {
  std::size_t strategies_explored = 0;  // eval_ceu frames entered
  std::size_t split_calls = 0;          // split streams opened
  std::size_t splits_produced = 0;      // move sets taken from those streams
  std::size_t fixpoint_iterations = 0;  // productive filter_ceu rounds
  std::size_t max_depth = 0;            // deepest eval_ceu frame stack
};

/// Satisfying sets over all states, keyed by normalized sub-formula.
class EvalCache {
 public:
  const StateSet* find(const Formula& f) const;
  void store(const Formula& f, StateSet sat);
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, StateSet> entries_;
};

/// States of `query` satisfying the normalized formula f under uniform
/// memoryless (ir) semantics.
StateSet eval(const Icgs& model, const StateSet& query, const Formula& f, EvalCache& cache,
              CheckStats* stats = nullptr);

/// States of `interest` from which some uniform extension of `strategy`
/// avoiding `exclude` enforces (q1 U q2) from every indistinguishable state.
/// `strategy` must be non-conflicting and disjoint from `exclude`.
StateSet eval_ceu(const Icgs& model, const StateSet& interest, const MoveSet& strategy, const StateSet& q1,
                  const StateSet& q2, const MoveSet& exclude, CheckStats* stats = nullptr);

enum class QueryScope {
  AllStates,      // sat is the full satisfying set
  InitialStates,  // sat is restricted to the initial states
};

struct CheckResult {
  Formula formula;
  StateSet sat;
  bool holds = false;
  CheckStats stats;
};

/// Normalizes f and evaluates it; holds iff every initial state satisfies it.
CheckResult check(const Icgs& model, const Formula& f, QueryScope scope = QueryScope::AllStates);

}  // namespace atlir
