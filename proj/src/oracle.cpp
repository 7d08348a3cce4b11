#include "atlir/oracle.hpp"

#include <limits>

#include "atlir/moveops.hpp"

namespace atlir {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

void require_complete(const Icgs& model, const UniformStrategy& s) {
  model.require_coalition(s.coalition);
  const auto members = s.coalition.members();
  if (s.choice.size() != members.size()) {
    throw Error(ErrorCode::IncompleteStrategy, "strategy does not assign every coalition member");
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (s.choice[i].size() != model.num_observations(members[i])) {
      throw Error(ErrorCode::IncompleteStrategy,
                  "strategy does not assign every class of agent '" + model.agent_name(members[i]) + "'");
    }
    for (StateId q = 0; q < model.num_states(); ++q) {
      const ActionId a = s.choice[i][model.observation(members[i], q)];
      if (!model.enabled(members[i], q, a)) {
        throw Error(ErrorCode::IncompleteStrategy, "strategy action of agent '" + model.agent_name(members[i]) +
                                                       "' is not enabled in state '" + model.state_name(q) + "'");
      }
    }
  }
}

bool follows(const Icgs& model, const UniformStrategy& s, StateId q, std::size_t j) {
  const auto members = s.coalition.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (model.joint_pick(q, j, members[i]) != s.choice[i][model.observation(members[i], q)]) return false;
  }
  return true;
}

// {q | all states some coalition member confuses with q are in w}
StateSet known_by_all(const Icgs& model, const Coalition& coalition, const StateSet& w) {
  StateSet out;
  for (StateId q = 0; q < model.num_states(); ++q) {
    bool ok = true;
    for (AgentId ag : coalition.members()) {
      for (StateId other = 0; ok && other < model.num_states(); ++other) {
        if (model.indistinguishable(ag, q, other) && !w.contains(other)) ok = false;
      }
    }
    if (ok) out.insert(q);
  }
  return out;
}

}  // namespace

GroupAction UniformStrategy::action_at(const Icgs& model, StateId q) const {
  const auto members = coalition.members();
  std::vector<ActionId> picks(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) picks[i] = choice.at(i).at(model.observation(members[i], q));
  return GroupAction(picks);
}

MoveSet UniformStrategy::moves(const Icgs& model) const {
  std::vector<Move> out;
  for (StateId q = 0; q < model.num_states(); ++q) out.push_back({q, action_at(model, q)});
  return MoveSet(coalition, std::move(out));
}

UniformEnumerator::UniformEnumerator(const Icgs& model, Coalition coalition, std::uint64_t cap)
    : model_(&model), coalition_(std::move(coalition)) {
  model.require_coalition(coalition_);
  for (AgentId ag : coalition_.members()) {
    auto& row = options_.emplace_back();
    for (std::uint32_t token = 0; token < model.num_observations(ag); ++token) {
      const StateId rep = model.observation_class(ag, token).front();
      row.push_back(model.protocol(ag, rep));
      count_ = saturating_mul(count_, row.back().size());
    }
    position_.emplace_back(row.size(), 0);
  }
  if (count_ > cap) {
    throw Error(ErrorCode::EnumerationCapExceeded,
                std::to_string(count_) + " uniform strategies exceed the cap of " + std::to_string(cap));
  }
}

std::optional<UniformStrategy> UniformEnumerator::next() {
  if (done_) return std::nullopt;
  UniformStrategy s{coalition_, {}};
  for (std::size_t i = 0; i < options_.size(); ++i) {
    auto& row = s.choice.emplace_back();
    for (std::size_t t = 0; t < options_[i].size(); ++t) row.push_back(options_[i][t][position_[i][t]]);
  }
  // Advance the odometer.
  done_ = true;
  for (std::size_t i = options_.size(); i > 0 && done_; --i) {
    for (std::size_t t = options_[i - 1].size(); t > 0; --t) {
      if (++position_[i - 1][t - 1] < options_[i - 1][t - 1].size()) {
        done_ = false;
        break;
      }
      position_[i - 1][t - 1] = 0;
    }
  }
  return s;
}

std::uint64_t count_uniform(const Icgs& model, const Coalition& coalition) {
  return UniformEnumerator(model, coalition, std::numeric_limits<std::uint64_t>::max()).count();
}

std::vector<UniformStrategy> enumerate_uniform(const Icgs& model, const Coalition& coalition, std::uint64_t cap) {
  UniformEnumerator it(model, coalition, cap);
  std::vector<UniformStrategy> out;
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

StateSet strategy_sat_x(const Icgs& model, const UniformStrategy& s, const StateSet& target) {
  require_complete(model, s);
  StateSet out;
  for (StateId q = 0; q < model.num_states(); ++q) {
    const auto succ = model.successors(q);
    bool all = true;
    for (std::size_t j = 0; j < succ.size() && all; ++j) {
      if (follows(model, s, q, j) && !target.contains(succ[j])) all = false;
    }
    if (all) out.insert(q);
  }
  return out;
}

StateSet strategy_sat_u(const Icgs& model, const UniformStrategy& s, const StateSet& q1, const StateSet& q2) {
  require_complete(model, s);
  StateSet z = q2;
  while (true) {
    StateSet next = q2 | (q1 & strategy_sat_x(model, s, z));
    if (next == z) return z;
    z = std::move(next);
  }
}

StateSet oracle_eval(const Icgs& model, const Formula& f, std::uint64_t cap) {
  switch (f.op()) {
    case Op::True: return model.all_states();
    case Op::Atom: return model.label(f.proposition());
    case Op::Not: return model.all_states() - oracle_eval(model, f.lhs(), cap);
    case Op::Or: return oracle_eval(model, f.lhs(), cap) | oracle_eval(model, f.rhs(), cap);
    case Op::CeX: {
      const StateSet target = oracle_eval(model, f.lhs(), cap);
      UniformEnumerator it(model, f.coalition(), cap);
      StateSet out;
      while (auto s = it.next()) out |= known_by_all(model, f.coalition(), strategy_sat_x(model, *s, target));
      return out;
    }
    case Op::CeU: {
      const StateSet q1 = oracle_eval(model, f.lhs(), cap);
      const StateSet q2 = oracle_eval(model, f.rhs(), cap);
      UniformEnumerator it(model, f.coalition(), cap);
      StateSet out;
      while (auto s = it.next()) out |= known_by_all(model, f.coalition(), strategy_sat_u(model, *s, q1, q2));
      return out;
    }
    default: throw Error(ErrorCode::PreconditionViolation, "formula is not normalized");
  }
}

StateSet perfect_info_eval(const Icgs& model, const Formula& f) {
  switch (f.op()) {
    case Op::True: return model.all_states();
    case Op::Atom: return model.label(f.proposition());
    case Op::Not: return model.all_states() - perfect_info_eval(model, f.lhs());
    case Op::Or: return perfect_info_eval(model, f.lhs()) | perfect_info_eval(model, f.rhs());
    case Op::CeX: return pre_ce(model, f.coalition(), perfect_info_eval(model, f.lhs()));
    case Op::CeU:
      return filter_ceu(model, f.coalition(), perfect_info_eval(model, f.lhs()), perfect_info_eval(model, f.rhs()));
    default: throw Error(ErrorCode::PreconditionViolation, "formula is not normalized");
  }
}

}  // namespace atlir
