#include "atlir/moveops.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "group_index.hpp"

namespace atlir {

namespace {

void require_width(const Coalition& coalition, const Move& m) {
  if (m.action.size() != coalition.size()) {
    throw Error(ErrorCode::CoalitionMismatch, "move does not assign one action per coalition member");
  }
}

constexpr std::int64_t kNoPick = -1;
constexpr std::int64_t kManyPicks = -2;

// Per member and observation token: the single action the moves propose
// there, kNoPick, or kManyPicks.
std::vector<std::vector<std::int64_t>> picks_by_class(const Icgs& model, const MoveSet& ms) {
  const auto members = ms.coalition().members();
  std::vector<std::vector<std::int64_t>> table(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    table[i].assign(model.num_observations(members[i]), kNoPick);
  }
  for (const Move& m : ms) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto& slot = table[i][model.observation(members[i], m.state)];
      const auto pick = static_cast<std::int64_t>(m.action.pick(i));
      if (slot == kNoPick) {
        slot = pick;
      } else if (slot != pick) {
        slot = kManyPicks;
      }
    }
  }
  return table;
}

}  // namespace

bool conflicting(const Icgs& model, const Coalition& coalition, const Move& m1, const Move& m2) {
  model.require_coalition(coalition);
  require_width(coalition, m1);
  require_width(coalition, m2);
  model.require_state(m1.state);
  model.require_state(m2.state);
  const auto members = coalition.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (model.indistinguishable(members[i], m1.state, m2.state) && m1.action.pick(i) != m2.action.pick(i)) {
      return true;
    }
  }
  return false;
}

bool is_conflicting(const Icgs& model, const MoveSet& ms) {
  model.require_coalition(ms.coalition());
  for (const auto& row : picks_by_class(model, ms)) {
    if (std::find(row.begin(), row.end(), kManyPicks) != row.end()) return true;
  }
  return false;
}

MoveSet compatible(const Icgs& model, const MoveSet& candidates, const MoveSet& base) {
  if (candidates.coalition() != base.coalition()) {
    throw Error(ErrorCode::CoalitionMismatch, "candidates and base range over different coalitions");
  }
  model.require_coalition(base.coalition());
  const auto members = base.coalition().members();
  const auto table = picks_by_class(model, base);
  std::vector<Move> kept;
  for (const Move& m : candidates) {
    bool ok = true;
    for (std::size_t i = 0; i < members.size() && ok; ++i) {
      const auto slot = table[i][model.observation(members[i], m.state)];
      ok = slot == kNoPick || slot == static_cast<std::int64_t>(m.action.pick(i));
    }
    if (ok) kept.push_back(m);
  }
  return MoveSet(base.coalition(), std::move(kept));
}

StateSet pre_ce(const Icgs& model, const Coalition& coalition, const StateSet& target) {
  model.require_states(target);
  model.require_coalition(coalition);
  StateSet out;
  std::vector<char> ok;
  for (StateId q = 0; q < model.num_states(); ++q) {
    detail::GroupIndex groups(model, coalition, q);
    ok.assign(groups.count(), 1);
    const auto succ = model.successors(q);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      if (!target.contains(succ[j])) ok[groups.of_joint(j)] = 0;
    }
    if (std::find(ok.begin(), ok.end(), 1) != ok.end()) out.insert(q);
  }
  return out;
}

MoveSet pre_move(const Icgs& model, const Coalition& coalition, const MoveSet& base) {
  if (base.coalition() != coalition) {
    throw Error(ErrorCode::CoalitionMismatch, "base ranges over a different coalition");
  }
  model.require_coalition(coalition);
  const StateSet target = base.states();
  std::vector<Move> moves;
  std::vector<char> ok;
  for (StateId q = 0; q < model.num_states(); ++q) {
    detail::GroupIndex groups(model, coalition, q);
    ok.assign(groups.count(), 1);
    const auto succ = model.successors(q);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      if (!target.contains(succ[j])) ok[groups.of_joint(j)] = 0;
    }
    for (std::size_t g = 0; g < ok.size(); ++g) {
      if (ok[g] != 0) moves.push_back({q, groups.action(g)});
    }
  }
  return MoveSet(coalition, std::move(moves));
}

StateSet filter_ceu(const Icgs& model, const Coalition& coalition, const StateSet& q1, const StateSet& q2) {
  return filter_ceu_traced(model, coalition, q1, q2).result;
}

// Attractor computation with per-(state, group action) counters of
// completions not yet known to land in Z. Processing the frontier layer by
// layer reproduces the Kleene iterates, so `rounds` counts them.
FixpointTrace filter_ceu_traced(const Icgs& model, const Coalition& coalition, const StateSet& q1,
                                const StateSet& q2) {
  model.require_states(q1);
  model.require_states(q2);
  model.require_coalition(coalition);

  const std::size_t n = model.num_states();
  std::vector<detail::GroupIndex> groups;
  groups.reserve(n);
  std::vector<std::size_t> offset(n + 1, 0);
  for (StateId q = 0; q < n; ++q) {
    groups.emplace_back(model, coalition, q);
    offset[q + 1] = offset[q] + groups.back().count();
  }
  std::vector<std::uint32_t> remaining(offset[n]);
  for (StateId q = 0; q < n; ++q) {
    const auto per_group = static_cast<std::uint32_t>(model.joint_count(q) / groups[q].count());
    std::fill(remaining.begin() + static_cast<std::ptrdiff_t>(offset[q]),
              remaining.begin() + static_cast<std::ptrdiff_t>(offset[q + 1]), per_group);
  }

  FixpointTrace trace;
  trace.result = q2;
  std::vector<StateId> frontier = q2.to_vector();
  std::vector<StateId> next;
  while (!frontier.empty()) {
    next.clear();
    for (StateId s : frontier) {
      for (const auto& edge : model.predecessors(s)) {
        if (trace.result.contains(edge.from) || !q1.contains(edge.from)) continue;
        auto& counter = remaining[offset[edge.from] + groups[edge.from].of_joint(edge.joint)];
        if (--counter == 0) {
          trace.result.insert(edge.from);
          next.push_back(edge.from);
        }
      }
    }
    if (!next.empty()) ++trace.rounds;
    frontier.swap(next);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Splitting

struct SplitStream::Level {
  // options[c][k]: indices (into the root move list) of the k-th choice for
  // class c; an empty option stands for leaving the class out.
  std::vector<std::vector<std::vector<std::uint32_t>>> options;
  std::vector<std::size_t> choice;
  bool fresh = true;
  bool exhausted = false;

  Level(const Icgs& model, const MoveSet& root, AgentId agent, std::size_t member,
        const std::vector<std::uint32_t>& input, bool largest_only) {
    std::unordered_map<std::uint32_t, std::size_t> class_of_token;
    std::vector<std::map<ActionId, std::vector<std::uint32_t>>> by_action;
    for (std::uint32_t idx : input) {
      const Move& m = root[idx];
      const auto token = model.observation(agent, m.state);
      auto [it, fresh_class] = class_of_token.emplace(token, by_action.size());
      if (fresh_class) by_action.emplace_back();
      by_action[it->second][m.action.pick(member)].push_back(idx);
    }
    options.reserve(by_action.size());
    for (auto& actions : by_action) {
      auto& opts = options.emplace_back();
      for (auto& [action, indices] : actions) opts.push_back(std::move(indices));
      if (!largest_only) opts.emplace_back();
    }
    choice.assign(options.size(), 0);
  }

  std::optional<std::vector<std::uint32_t>> advance() {
    if (exhausted) return std::nullopt;
    if (fresh) {
      fresh = false;
    } else {
      std::size_t c = choice.size();
      bool carry = true;
      while (carry && c > 0) {
        --c;
        if (++choice[c] < options[c].size()) {
          carry = false;
        } else {
          choice[c] = 0;
        }
      }
      if (carry) {
        exhausted = true;
        return std::nullopt;
      }
    }
    std::vector<std::uint32_t> out;
    for (std::size_t c = 0; c < options.size(); ++c) {
      const auto& picked = options[c][choice[c]];
      out.insert(out.end(), picked.begin(), picked.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

SplitStream::SplitStream(const Icgs& model, MoveSet moves, bool largest_only, bool skip_empty)
    : model_(&model), root_(std::move(moves)), largest_only_(largest_only), skip_empty_(skip_empty) {
  model.require_coalition(root_.coalition());
  for (std::size_t i = 0; i < root_.coalition().size(); ++i) member_order_.push_back(i);
}

SplitStream::SplitStream(const Icgs& model, AgentId agent, MoveSet moves, bool largest_only)
    : model_(&model), root_(std::move(moves)), largest_only_(largest_only), skip_empty_(false) {
  model.require_coalition(root_.coalition());
  auto pos = root_.coalition().index_of(agent);
  if (!pos) throw Error(ErrorCode::AgentNotInCoalition, "agent '" + model.agent_name(agent) + "'");
  member_order_.push_back(*pos);
}

SplitStream::SplitStream(SplitStream&&) noexcept = default;
SplitStream& SplitStream::operator=(SplitStream&&) noexcept = default;
SplitStream::~SplitStream() = default;

std::optional<std::vector<std::uint32_t>> SplitStream::advance_leaf() {
  if (finished_) return std::nullopt;
  if (!started_) {
    started_ = true;
    std::vector<std::uint32_t> all(root_.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    if (member_order_.empty()) {
      finished_ = true;
      return all;
    }
    const std::size_t member = member_order_[0];
    stack_.push_back(std::make_unique<Level>(*model_, root_, root_.coalition().members()[member], member, all,
                                             largest_only_));
  }
  while (!stack_.empty()) {
    auto out = stack_.back()->advance();
    if (!out) {
      stack_.pop_back();
      continue;
    }
    if (stack_.size() == member_order_.size()) return out;
    const std::size_t member = member_order_[stack_.size()];
    stack_.push_back(std::make_unique<Level>(*model_, root_, root_.coalition().members()[member], member, *out,
                                             largest_only_));
  }
  finished_ = true;
  return std::nullopt;
}

std::optional<MoveSet> SplitStream::next() {
  while (auto leaf = advance_leaf()) {
    if (skip_empty_ && leaf->empty()) continue;
    if (member_order_.size() > 1) {
      std::vector<std::uint64_t> key((root_.size() + 63) / 64, 0);
      for (std::uint32_t idx : *leaf) key[idx / 64] |= std::uint64_t{1} << (idx % 64);
      if (!seen_.insert(std::move(key)).second) continue;
    }
    ++produced_;
    return materialize(*leaf);
  }
  return std::nullopt;
}

MoveSet SplitStream::materialize(const std::vector<std::uint32_t>& indices) const {
  std::vector<Move> moves;
  moves.reserve(indices.size());
  for (std::uint32_t idx : indices) moves.push_back(root_[idx]);
  return MoveSet(root_.coalition(), std::move(moves));
}

namespace {

std::vector<MoveSet> drain(SplitStream stream) {
  std::vector<MoveSet> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

void require_coalition_of(const MoveSet& ms, const Coalition& coalition) {
  if (ms.coalition() != coalition) {
    throw Error(ErrorCode::CoalitionMismatch, "move set ranges over a different coalition");
  }
}

}  // namespace

std::vector<MoveSet> split_agent(const Icgs& model, AgentId ag, const Coalition& coalition, const MoveSet& ms,
                                 bool largest_only) {
  require_coalition_of(ms, coalition);
  model.require_agent(ag);
  return drain(SplitStream(model, ag, ms, largest_only));
}

std::vector<MoveSet> split_all(const Icgs& model, const Coalition& coalition, const MoveSet& ms,
                               bool largest_only) {
  require_coalition_of(ms, coalition);
  return drain(SplitStream(model, ms, largest_only));
}

std::vector<MoveSet> split_nonempty(const Icgs& model, const Coalition& coalition, const MoveSet& ms) {
  require_coalition_of(ms, coalition);
  return drain(split_nonempty_stream(model, ms));
}

SplitStream split_nonempty_stream(const Icgs& model, const MoveSet& ms) {
  return SplitStream(model, ms, false, true);
}

std::vector<MoveSet> split_max(const Icgs& model, const Coalition& coalition, const MoveSet& ms) {
  require_coalition_of(ms, coalition);
  return drain(split_max_stream(model, ms));
}

SplitStream split_max_stream(const Icgs& model, const MoveSet& ms) { return SplitStream(model, ms, true); }

}  // namespace atlir
