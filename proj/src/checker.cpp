#include "atlir/checker.hpp"

#include <optional>
#include <vector>

namespace atlir {

const StateSet* EvalCache::find(const Formula& f) const {
  auto it = entries_.find(f.key());
  return it == entries_.end() ? nullptr : &it->second;
}

void EvalCache::store(const Formula& f, StateSet sat) { entries_.insert_or_assign(f.key(), std::move(sat)); }

namespace {

CheckStats& sink(CheckStats* stats) {
  thread_local CheckStats discard;
  return stats ? *stats : discard;
}

// Backtracking search over uniform extensions of a partial strategy. Each
// frame owns one candidate strategy and the split stream of the compatible
// moves it may be extended with.
class CeuSearch {
 public:
  CeuSearch(const Icgs& model, const Coalition& coalition, const StateSet& q1, CheckStats& stats)
      : model_(model), coalition_(coalition), q1_(q1), q1_moves_(moves_of(model, coalition, q1)), stats_(stats) {}

  StateSet run(const StateSet& interest, const MoveSet& strategy, const MoveSet& exclude) {
    std::optional<StateSet> returned = enter(interest, strategy, exclude);
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      if (returned) {
        top.win |= *returned;
        top.interest -= *returned;
        returned.reset();
        if (top.interest.empty()) {
          returned = pop();
          continue;
        }
      }
      auto extension = top.splits.next();
      if (!extension) {
        returned = pop();
        continue;
      }
      ++stats_.splits_produced;
      MoveSet next_exclude = top.exclude | (top.new_moves - *extension);
      MoveSet next_strategy = top.strategy | *extension;
      StateSet next_interest = top.interest;
      returned = enter(next_interest, next_strategy, next_exclude);
    }
    return *returned;
  }

 private:
  struct Frame {
    StateSet interest;
    MoveSet strategy;
    MoveSet exclude;
    MoveSet new_moves;
    SplitStream splits;
    StateSet win;
  };

  // Returns the result directly when no extension is needed; otherwise
  // pushes a frame and returns nothing.
  std::optional<StateSet> enter(StateSet interest, MoveSet strategy, MoveSet exclude) {
    ++stats_.strategies_explored;
    const StateSet covered = strategy.states();
    auto trace = filter_ceu_traced(model_, coalition_, q1_, covered);
    stats_.fixpoint_iterations += trace.rounds;
    const StateSet lose = interest - everybody_knows(model_, coalition_, trace.result);
    StateSet win = interest & everybody_knows(model_, coalition_, covered);
    interest -= lose | win;
    if (interest.empty()) return win;

    MoveSet new_moves = (pre_move(model_, coalition_, strategy) & q1_moves_) - strategy - exclude;
    MoveSet candidates = compatible(model_, new_moves, strategy);
    if (candidates.empty()) return win;

    ++stats_.split_calls;
    SplitStream splits = split_nonempty_stream(model_, candidates);
    stack_.push_back(Frame{std::move(interest), std::move(strategy), std::move(exclude), std::move(new_moves),
                           std::move(splits), std::move(win)});
    if (stack_.size() > stats_.max_depth) stats_.max_depth = stack_.size();
    return std::nullopt;
  }

  StateSet pop() {
    StateSet win = std::move(stack_.back().win);
    stack_.pop_back();
    return win;
  }

  const Icgs& model_;
  const Coalition& coalition_;
  const StateSet& q1_;
  const MoveSet q1_moves_;
  CheckStats& stats_;
  std::vector<Frame> stack_;
};

void require_nonempty(const Icgs& model, const Coalition& gamma) {
  model.require_coalition(gamma);
  if (gamma.empty()) throw Error(ErrorCode::PreconditionViolation, "strategic operator with an empty coalition");
}

StateSet eval_full(const Icgs& model, const Formula& f, EvalCache& cache, CheckStats& stats);
StateSet eval_on(const Icgs& model, const StateSet& query, const Formula& f, EvalCache& cache, CheckStats& stats);

StateSet eval_impl(const Icgs& model, const StateSet& query, const Formula& f, EvalCache& cache,
                   CheckStats& stats) {
  switch (f.op()) {
    case Op::True: return query;
    case Op::Atom: return query & model.label(f.proposition());
    case Op::Not: return query - eval_full(model, f.lhs(), cache, stats);
    case Op::Or: return eval_impl(model, query, f.lhs(), cache, stats) | eval_impl(model, query, f.rhs(), cache, stats);

    case Op::CeX: {
      const Coalition& gamma = f.coalition();
      require_nonempty(model, gamma);
      const StateSet closure = gamma_closure(model, gamma, query);
      const StateSet target =
          eval_on(model, post_states(model, gamma_closure(model, gamma, closure)), f.lhs(), cache, stats);
      // Moves outside the closure share no observation class with it, so
      // dropping them leaves the maximal splits over the closure unchanged.
      const MoveSet candidates =
          pre_move(model, gamma, moves_of(model, gamma, target)) & moves_of(model, gamma, closure);
      StateSet sat;
      ++stats.split_calls;
      SplitStream splits = split_max_stream(model, candidates);
      while (auto m = splits.next()) {
        ++stats.splits_produced;
        sat |= closure & everybody_knows(model, gamma, m->states());
        if (closure.subset_of(sat)) break;
      }
      return sat & query;
    }

    case Op::CeU: {
      const Coalition& gamma = f.coalition();
      require_nonempty(model, gamma);
      const StateSet q1 = eval_full(model, f.lhs(), cache, stats);
      const StateSet q2 = eval_full(model, f.rhs(), cache, stats);
      const StateSet closure = gamma_closure(model, gamma, query);
      StateSet sat = closure & everybody_knows(model, gamma, q2);
      CeuSearch search(model, gamma, q1, stats);
      ++stats.split_calls;
      SplitStream seeds = split_max_stream(model, moves_of(model, gamma, q2));
      while (!closure.subset_of(sat)) {
        auto m = seeds.next();
        if (!m) break;
        ++stats.splits_produced;
        sat |= search.run(closure - sat, *m, MoveSet(gamma, {}));
      }
      return sat & query;
    }

    case Op::CeG:
    case Op::CeW:
    case Op::CaU:
    case Op::CaF: throw Error(ErrorCode::UnsupportedOperator, "operator cannot be evaluated backward");
    default: throw Error(ErrorCode::PreconditionViolation, "formula is not normalized");
  }
}

StateSet eval_full(const Icgs& model, const Formula& f, EvalCache& cache, CheckStats& stats) {
  if (const StateSet* hit = cache.find(f)) return *hit;
  StateSet sat = eval_impl(model, model.all_states(), f, cache, stats);
  cache.store(f, sat);
  return sat;
}

StateSet eval_on(const Icgs& model, const StateSet& query, const Formula& f, EvalCache& cache, CheckStats& stats) {
  if (query == model.all_states()) return eval_full(model, f, cache, stats);
  return eval_impl(model, query, f, cache, stats);
}

}  // namespace

StateSet eval(const Icgs& model, const StateSet& query, const Formula& f, EvalCache& cache, CheckStats* stats) {
  model.require_states(query);
  return eval_on(model, query, f, cache, sink(stats));
}

StateSet eval_ceu(const Icgs& model, const StateSet& interest, const MoveSet& strategy, const StateSet& q1,
                  const StateSet& q2, const MoveSet& exclude, CheckStats* stats) {
  model.require_states(interest);
  model.require_states(q1);
  model.require_states(q2);
  const Coalition& gamma = strategy.coalition();
  model.require_coalition(gamma);
  if (exclude.coalition() != gamma) throw Error(ErrorCode::CoalitionMismatch, "exclude uses another coalition");
  if (is_conflicting(model, strategy)) throw Error(ErrorCode::PreconditionViolation, "strategy is conflicting");
  if (!(strategy & exclude).empty()) {
    throw Error(ErrorCode::PreconditionViolation, "strategy overlaps the excluded moves");
  }
  (void)q2;
  return CeuSearch(model, gamma, q1, sink(stats)).run(interest, strategy, exclude);
}

CheckResult check(const Icgs& model, const Formula& f, QueryScope scope) {
  CheckResult result{normalize(f), {}, false, {}};
  EvalCache cache;
  const StateSet query = scope == QueryScope::AllStates ? model.all_states() : model.initial();
  result.sat = eval(model, query, result.formula, cache, &result.stats);
  result.holds = model.initial().subset_of(result.sat);
  return result;
}

}  // namespace atlir
