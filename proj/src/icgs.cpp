#include "atlir/icgs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace atlir {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::UnknownAction: return "UnknownAction";
    case ErrorCode::UnknownProposition: return "UnknownProposition";
    case ErrorCode::DisabledJointAction: return "DisabledJointAction";
    case ErrorCode::CoalitionMismatch: return "CoalitionMismatch";
    case ErrorCode::AgentNotInCoalition: return "AgentNotInCoalition";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedOperator: return "UnsupportedOperator";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::IncompleteStrategy: return "IncompleteStrategy";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
  }
  return "Unknown";
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::EmptyProtocol: return "EmptyProtocol";
    case IssueKind::MissingTransition: return "MissingTransition";
    case IssueKind::NondeterministicTransition: return "NondeterministicTransition";
    case IssueKind::ObservationProtocolMismatch: return "ObservationProtocolMismatch";
    case IssueKind::DanglingReference: return "DanglingReference";
    case IssueKind::DisabledTransition: return "DisabledTransition";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<Issue>& issues) {
  std::ostringstream out;
  out << issues.size() << " problem(s)";
  const std::size_t shown = std::min<std::size_t>(issues.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    out << (i == 0 ? ": " : "; ") << to_string(issues[i].kind) << " (" << issues[i].message << ")";
  }
  if (shown < issues.size()) out << "; ...";
  return out.str();
}

std::uint64_t pack_joint(std::span<const ActionId> joint) {
  std::uint64_t code = 0;
  for (ActionId a : joint) code = (code << 8) | (a & 0xFFU);
  return code;
}

ActionId unpack_pick(std::uint64_t code, std::size_t n, std::size_t i) {
  return static_cast<ActionId>((code >> (8 * (n - 1 - i))) & 0xFFU);
}

}  // namespace

ModelError::ModelError(std::vector<Issue> issues)
    : Error(ErrorCode::InvalidModel, summarize(issues)), issues_(std::move(issues)) {}

// ---------------------------------------------------------------------------
// Coalition, GroupAction, MoveSet

Coalition::Coalition(std::initializer_list<AgentId> members) : Coalition(std::vector<AgentId>(members)) {}

Coalition::Coalition(std::vector<AgentId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.size() > kMaxAgents) {
    throw Error(ErrorCode::LimitExceeded, "coalitions are limited to " + std::to_string(kMaxAgents) + " agents");
  }
}

bool Coalition::contains(AgentId ag) const { return std::binary_search(members_.begin(), members_.end(), ag); }

std::optional<std::size_t> Coalition::index_of(AgentId ag) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), ag);
  if (it == members_.end() || *it != ag) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

GroupAction::GroupAction(std::span<const ActionId> picks) {
  if (picks.size() > kMaxAgents) throw Error(ErrorCode::LimitExceeded, "group action too wide");
  for (ActionId a : picks) {
    if (a > kMaxActionsPerAgent) throw Error(ErrorCode::LimitExceeded, "action id out of range");
    code_ = (code_ << 8) | a;
  }
  width_ = static_cast<std::uint8_t>(picks.size());
}

std::vector<ActionId> GroupAction::picks() const {
  std::vector<ActionId> out(width_);
  for (std::size_t i = 0; i < width_; ++i) out[i] = pick(i);
  return out;
}

MoveSet::MoveSet(Coalition coalition, std::vector<Move> moves)
    : coalition_(std::move(coalition)), moves_(std::move(moves)) {
  if (!std::is_sorted(moves_.begin(), moves_.end())) std::sort(moves_.begin(), moves_.end());
  moves_.erase(std::unique(moves_.begin(), moves_.end()), moves_.end());
}

bool MoveSet::contains(const Move& m) const { return std::binary_search(moves_.begin(), moves_.end(), m); }

void MoveSet::insert(const Move& m) {
  auto it = std::lower_bound(moves_.begin(), moves_.end(), m);
  if (it == moves_.end() || *it != m) moves_.insert(it, m);
}

StateSet MoveSet::states() const {
  StateSet out;
  for (const Move& m : moves_) out.insert(m.state);
  return out;
}

void MoveSet::require_same_coalition(const MoveSet& other) const {
  if (coalition_ != other.coalition_) {
    throw Error(ErrorCode::CoalitionMismatch, "move sets range over different coalitions");
  }
}

MoveSet& MoveSet::operator|=(const MoveSet& other) {
  require_same_coalition(other);
  std::vector<Move> out;
  out.reserve(moves_.size() + other.moves_.size());
  std::set_union(moves_.begin(), moves_.end(), other.moves_.begin(), other.moves_.end(), std::back_inserter(out));
  moves_ = std::move(out);
  return *this;
}

MoveSet& MoveSet::operator-=(const MoveSet& other) {
  require_same_coalition(other);
  std::vector<Move> out;
  out.reserve(moves_.size());
  std::set_difference(moves_.begin(), moves_.end(), other.moves_.begin(), other.moves_.end(),
                      std::back_inserter(out));
  moves_ = std::move(out);
  return *this;
}

MoveSet& MoveSet::operator&=(const MoveSet& other) {
  require_same_coalition(other);
  std::vector<Move> out;
  std::set_intersection(moves_.begin(), moves_.end(), other.moves_.begin(), other.moves_.end(),
                        std::back_inserter(out));
  moves_ = std::move(out);
  return *this;
}

bool MoveSet::subset_of(const MoveSet& other) const {
  require_same_coalition(other);
  return std::includes(other.moves_.begin(), other.moves_.end(), moves_.begin(), moves_.end());
}

// ---------------------------------------------------------------------------
// Builder

AgentId IcgsBuilder::add_agent(std::string name) {
  if (agent_index_.count(name) != 0) throw Error(ErrorCode::InvalidModel, "duplicate agent '" + name + "'");
  if (agents_.size() >= kMaxAgents) {
    throw Error(ErrorCode::LimitExceeded, "at most " + std::to_string(kMaxAgents) + " agents are supported");
  }
  const auto id = static_cast<AgentId>(agents_.size());
  agent_index_.emplace(name, id);
  agents_.push_back(std::move(name));
  actions_.emplace_back();
  protocol_.emplace_back();
  observation_.emplace_back();
  return id;
}

ActionId IcgsBuilder::add_action(AgentId ag, std::string name) {
  if (ag >= agents_.size()) throw Error(ErrorCode::UnknownAgent, "agent id " + std::to_string(ag));
  auto& names = actions_[ag];
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    throw Error(ErrorCode::InvalidModel, "duplicate action '" + name + "' for agent '" + agents_[ag] + "'");
  }
  if (names.size() >= kMaxActionsPerAgent) {
    throw Error(ErrorCode::LimitExceeded, "too many actions for agent '" + agents_[ag] + "'");
  }
  names.push_back(std::move(name));
  return static_cast<ActionId>(names.size() - 1);
}

StateId IcgsBuilder::add_state(std::string name) {
  if (state_index_.count(name) != 0) throw Error(ErrorCode::InvalidModel, "duplicate state '" + name + "'");
  const auto id = static_cast<StateId>(states_.size());
  state_index_.emplace(name, id);
  states_.push_back(std::move(name));
  return id;
}

PropId IcgsBuilder::add_proposition(std::string name) {
  if (std::find(props_.begin(), props_.end(), name) != props_.end()) {
    throw Error(ErrorCode::InvalidModel, "duplicate proposition '" + name + "'");
  }
  props_.push_back(std::move(name));
  return static_cast<PropId>(props_.size() - 1);
}

void IcgsBuilder::add_label(StateId q, PropId p) {
  if (q >= states_.size() || p >= props_.size()) {
    early_issues_.push_back({IssueKind::DanglingReference, "label refers to an undeclared state or proposition"});
    return;
  }
  labels_.emplace_back(q, p);
}

void IcgsBuilder::set_initial(StateId q) {
  if (q >= states_.size()) {
    early_issues_.push_back({IssueKind::DanglingReference, "initial state id " + std::to_string(q)});
    return;
  }
  initial_.push_back(q);
}

void IcgsBuilder::set_protocol(AgentId ag, StateId q, std::vector<ActionId> actions) {
  if (ag >= agents_.size() || q >= states_.size()) {
    early_issues_.push_back({IssueKind::DanglingReference, "protocol refers to an undeclared agent or state"});
    return;
  }
  for (ActionId a : actions) {
    if (a >= actions_[ag].size()) {
      early_issues_.push_back({IssueKind::DanglingReference, "protocol of agent '" + agents_[ag] + "' in state '" +
                                                                 states_[q] + "' uses an undeclared action"});
      return;
    }
  }
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  auto& row = protocol_[ag];
  if (row.size() <= q) row.resize(states_.size());
  row[q] = std::move(actions);
}

void IcgsBuilder::set_observation(AgentId ag, StateId q, std::string token) {
  if (ag >= agents_.size() || q >= states_.size()) {
    early_issues_.push_back({IssueKind::DanglingReference, "observation refers to an undeclared agent or state"});
    return;
  }
  auto& row = observation_[ag];
  if (row.size() <= q) row.resize(states_.size());
  row[q] = std::move(token);
}

void IcgsBuilder::add_transition(StateId from, std::span<const ActionId> joint, StateId to) {
  if (from >= states_.size() || to >= states_.size()) {
    early_issues_.push_back({IssueKind::DanglingReference, "transition refers to an undeclared state"});
    return;
  }
  if (joint.size() != agents_.size()) {
    early_issues_.push_back({IssueKind::DanglingReference,
                             "transition from '" + states_[from] + "' does not give one action per agent"});
    return;
  }
  for (std::size_t ag = 0; ag < joint.size(); ++ag) {
    if (joint[ag] >= actions_[ag].size()) {
      early_issues_.push_back({IssueKind::DanglingReference, "transition from '" + states_[from] +
                                                                 "' uses an undeclared action of agent '" +
                                                                 agents_[ag] + "'"});
      return;
    }
  }
  transitions_.push_back({from, pack_joint(joint), to});
}

std::optional<AgentId> IcgsBuilder::find_agent(std::string_view name) const {
  auto it = agent_index_.find(std::string(name));
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<StateId> IcgsBuilder::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionId> IcgsBuilder::find_action(AgentId ag, std::string_view name) const {
  if (ag >= actions_.size()) return std::nullopt;
  const auto& names = actions_[ag];
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<ActionId>(it - names.begin());
}

std::optional<PropId> IcgsBuilder::find_proposition(std::string_view name) const {
  auto it = std::find(props_.begin(), props_.end(), name);
  if (it == props_.end()) return std::nullopt;
  return static_cast<PropId>(it - props_.begin());
}

namespace {

const std::vector<ActionId>& protocol_at(const std::vector<std::vector<std::vector<ActionId>>>& protocol,
                                         std::size_t ag, std::size_t q) {
  static const std::vector<ActionId> kEmpty;
  if (q >= protocol[ag].size()) return kEmpty;
  return protocol[ag][q];
}

std::string observation_at(const std::vector<std::vector<std::string>>& obs,
                           const std::vector<std::string>& states, std::size_t ag, std::size_t q) {
  if (q < obs[ag].size() && !obs[ag][q].empty()) return obs[ag][q];
  return "=" + states[q];
}

}  // namespace

std::vector<Issue> validate(const IcgsBuilder& b) {
  std::vector<Issue> issues = b.early_issues_;
  const std::size_t n_agents = b.agents_.size();
  const std::size_t n_states = b.states_.size();

  bool protocols_ok = true;
  for (std::size_t ag = 0; ag < n_agents; ++ag) {
    for (std::size_t q = 0; q < n_states; ++q) {
      if (protocol_at(b.protocol_, ag, q).empty()) {
        protocols_ok = false;
        issues.push_back({IssueKind::EmptyProtocol,
                          "agent '" + b.agents_[ag] + "' has no enabled action in state '" + b.states_[q] + "'"});
      }
    }
  }

  for (std::size_t ag = 0; ag < n_agents; ++ag) {
    std::unordered_map<std::string, std::size_t> representative;
    for (std::size_t q = 0; q < n_states; ++q) {
      auto token = observation_at(b.observation_, b.states_, ag, q);
      auto [it, fresh] = representative.emplace(token, q);
      if (!fresh && protocol_at(b.protocol_, ag, it->second) != protocol_at(b.protocol_, ag, q)) {
        issues.push_back({IssueKind::ObservationProtocolMismatch,
                          "agent '" + b.agents_[ag] + "' cannot distinguish '" + b.states_[it->second] + "' and '" +
                              b.states_[q] + "' but has different enabled actions"});
      }
    }
  }

  auto transitions = b.transitions_;
  std::sort(transitions.begin(), transitions.end(), [](const auto& x, const auto& y) {
    return std::tie(x.from, x.joint, x.to) < std::tie(y.from, y.joint, y.to);
  });
  transitions.erase(std::unique(transitions.begin(), transitions.end(),
                                [](const auto& x, const auto& y) {
                                  return x.from == y.from && x.joint == y.joint && x.to == y.to;
                                }),
                    transitions.end());

  auto describe_joint = [&](StateId q, std::uint64_t code) {
    std::string s = "in state '" + b.states_[q] + "' for (";
    for (std::size_t ag = 0; ag < n_agents; ++ag) {
      if (ag != 0) s += ", ";
      s += b.agents_[ag] + "=" + b.actions_[ag][unpack_pick(code, n_agents, ag)];
    }
    return s + ")";
  };

  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto& t = transitions[i];
    if (i > 0 && transitions[i - 1].from == t.from && transitions[i - 1].joint == t.joint) {
      issues.push_back({IssueKind::NondeterministicTransition, "several successors " + describe_joint(t.from, t.joint)});
      continue;
    }
    for (std::size_t ag = 0; ag < n_agents; ++ag) {
      const auto& enabled = protocol_at(b.protocol_, ag, t.from);
      if (!std::binary_search(enabled.begin(), enabled.end(), unpack_pick(t.joint, n_agents, ag))) {
        issues.push_back({IssueKind::DisabledTransition,
                          "transition defined for a disabled action " + describe_joint(t.from, t.joint)});
        break;
      }
    }
  }

  if (protocols_ok) {
    std::size_t cursor = 0;
    std::vector<std::size_t> pos(n_agents);
    for (std::size_t q = 0; q < n_states; ++q) {
      while (cursor < transitions.size() && transitions[cursor].from < q) ++cursor;
      std::set<std::uint64_t> defined;
      for (std::size_t k = cursor; k < transitions.size() && transitions[k].from == q; ++k) {
        defined.insert(transitions[k].joint);
      }
      std::fill(pos.begin(), pos.end(), 0);
      while (true) {
        std::uint64_t code = 0;
        for (std::size_t ag = 0; ag < n_agents; ++ag) code = (code << 8) | b.protocol_[ag][q][pos[ag]];
        if (defined.count(code) == 0) {
          issues.push_back({IssueKind::MissingTransition,
                            "no successor " + describe_joint(static_cast<StateId>(q), code)});
        }
        std::size_t ag = n_agents;
        bool carry = true;
        while (carry && ag > 0) {
          --ag;
          if (++pos[ag] < b.protocol_[ag][q].size()) {
            carry = false;
          } else {
            pos[ag] = 0;
          }
        }
        if (carry) break;
      }
    }
  }
  return issues;
}

Icgs IcgsBuilder::build() const {
  auto issues = validate(*this);
  if (!issues.empty()) throw ModelError(std::move(issues));

  Icgs m;
  const std::size_t n_agents = agents_.size();
  const std::size_t n_states = states_.size();
  m.agent_names_ = agents_;
  m.action_names_ = actions_;
  m.state_names_ = states_;
  m.prop_names_ = props_;
  m.state_index_ = state_index_;
  m.agent_index_ = agent_index_;

  for (StateId q : initial_) m.initial_.insert(q);
  m.labels_.assign(props_.size(), StateSet{});
  m.state_labels_.assign(n_states, {});
  for (auto [q, p] : labels_) m.labels_[p].insert(q);
  for (PropId p = 0; p < props_.size(); ++p) {
    for (StateId q : m.labels_[p]) m.state_labels_[q].push_back(p);
  }

  m.protocol_.assign(n_agents, std::vector<std::vector<ActionId>>(n_states));
  for (std::size_t ag = 0; ag < n_agents; ++ag) {
    for (std::size_t q = 0; q < n_states; ++q) m.protocol_[ag][q] = protocol_[ag][q];
  }

  m.strides_.assign(n_states * n_agents, 1);
  m.offsets_.assign(n_states + 1, 0);
  for (std::size_t q = 0; q < n_states; ++q) {
    std::size_t stride = 1;
    for (std::size_t ag = n_agents; ag > 0; --ag) {
      m.strides_[q * n_agents + ag - 1] = stride;
      stride *= m.protocol_[ag - 1][q].size();
    }
    m.offsets_[q + 1] = m.offsets_[q] + stride;
  }
  m.successors_.assign(m.offsets_[n_states], 0);
  for (const auto& t : transitions_) {
    std::size_t j = 0;
    for (std::size_t ag = 0; ag < n_agents; ++ag) {
      const auto& enabled = m.protocol_[ag][t.from];
      auto p = std::lower_bound(enabled.begin(), enabled.end(), unpack_pick(t.joint, n_agents, ag)) - enabled.begin();
      j += static_cast<std::size_t>(p) * m.strides_[t.from * n_agents + ag];
    }
    m.successors_[m.offsets_[t.from] + j] = t.to;
  }

  m.pred_offsets_.assign(n_states + 1, 0);
  for (StateId s : m.successors_) ++m.pred_offsets_[s + 1];
  std::partial_sum(m.pred_offsets_.begin(), m.pred_offsets_.end(), m.pred_offsets_.begin());
  m.pred_edges_.resize(m.successors_.size());
  auto fill = m.pred_offsets_;
  for (StateId q = 0; q < n_states; ++q) {
    auto succ = m.successors(q);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      m.pred_edges_[fill[succ[j]]++] = {q, static_cast<std::uint32_t>(j)};
    }
  }

  m.observation_.assign(n_agents, std::vector<std::uint32_t>(n_states, 0));
  m.token_names_.assign(n_agents, {});
  m.classes_.assign(n_agents, {});
  for (std::size_t ag = 0; ag < n_agents; ++ag) {
    std::unordered_map<std::string, std::uint32_t> ids;
    for (std::size_t q = 0; q < n_states; ++q) {
      auto token = observation_at(observation_, states_, ag, q);
      auto [it, fresh] = ids.emplace(token, static_cast<std::uint32_t>(m.token_names_[ag].size()));
      if (fresh) {
        m.token_names_[ag].push_back(token);
        m.classes_[ag].emplace_back();
      }
      m.observation_[ag][q] = it->second;
      m.classes_[ag][it->second].push_back(static_cast<StateId>(q));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Icgs

std::optional<StateId> Icgs::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<AgentId> Icgs::find_agent(std::string_view name) const {
  auto it = agent_index_.find(std::string(name));
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionId> Icgs::find_action(AgentId ag, std::string_view name) const {
  if (ag >= action_names_.size()) return std::nullopt;
  const auto& names = action_names_[ag];
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<ActionId>(it - names.begin());
}

std::optional<PropId> Icgs::find_proposition(std::string_view name) const {
  auto it = std::find(prop_names_.begin(), prop_names_.end(), name);
  if (it == prop_names_.end()) return std::nullopt;
  return static_cast<PropId>(it - prop_names_.begin());
}

bool Icgs::enabled(AgentId ag, StateId q, ActionId a) const {
  const auto& row = protocol_[ag][q];
  return std::binary_search(row.begin(), row.end(), a);
}

std::vector<ActionId> Icgs::decode_joint(StateId q, std::size_t j) const {
  std::vector<ActionId> joint(num_agents());
  for (AgentId ag = 0; ag < num_agents(); ++ag) joint[ag] = joint_pick(q, j, ag);
  return joint;
}

std::optional<std::size_t> Icgs::joint_index(StateId q, std::span<const ActionId> joint) const {
  if (joint.size() != num_agents()) return std::nullopt;
  std::size_t j = 0;
  for (AgentId ag = 0; ag < num_agents(); ++ag) {
    const auto& row = protocol_[ag][q];
    auto it = std::lower_bound(row.begin(), row.end(), joint[ag]);
    if (it == row.end() || *it != joint[ag]) return std::nullopt;
    j += static_cast<std::size_t>(it - row.begin()) * stride(q, ag);
  }
  return j;
}

void Icgs::require_state(StateId q) const {
  if (q >= num_states()) throw Error(ErrorCode::UnknownState, "state id " + std::to_string(q));
}

void Icgs::require_states(const StateSet& qs) const {
  for (StateId q : qs) require_state(q);
}

void Icgs::require_agent(AgentId ag) const {
  if (ag >= num_agents()) throw Error(ErrorCode::UnknownAgent, "agent id " + std::to_string(ag));
}

void Icgs::require_coalition(const Coalition& c) const {
  for (AgentId ag : c.members()) require_agent(ag);
}

Coalition Icgs::coalition(std::initializer_list<std::string_view> names) const {
  std::vector<std::string> copy(names.begin(), names.end());
  return coalition(std::span<const std::string>(copy));
}

Coalition Icgs::coalition(std::span<const std::string> names) const {
  std::vector<AgentId> ids;
  for (const auto& name : names) {
    auto ag = find_agent(name);
    if (!ag) throw Error(ErrorCode::UnknownAgent, "'" + name + "'");
    ids.push_back(*ag);
  }
  return Coalition(std::move(ids));
}

Coalition Icgs::all_agents() const {
  std::vector<AgentId> ids(num_agents());
  std::iota(ids.begin(), ids.end(), AgentId{0});
  return Coalition(std::move(ids));
}

// ---------------------------------------------------------------------------
// Queries

std::vector<GroupAction> enabled_group(const Icgs& model, const Coalition& coalition, StateId q) {
  model.require_state(q);
  model.require_coalition(coalition);
  const auto members = coalition.members();
  std::vector<std::size_t> pos(members.size(), 0);
  std::vector<ActionId> picks(members.size());
  std::vector<GroupAction> out;
  while (true) {
    for (std::size_t i = 0; i < members.size(); ++i) picks[i] = model.protocol(members[i], q)[pos[i]];
    out.emplace_back(picks);
    std::size_t i = members.size();
    bool carry = true;
    while (carry && i > 0) {
      --i;
      if (++pos[i] < model.protocol(members[i], q).size()) {
        carry = false;
      } else {
        pos[i] = 0;
      }
    }
    if (carry) break;
  }
  return out;
}

MoveSet all_moves(const Icgs& model, const Coalition& coalition) {
  return moves_of(model, coalition, model.all_states());
}

MoveSet moves_of(const Icgs& model, const Coalition& coalition, const StateSet& qs) {
  model.require_states(qs);
  model.require_coalition(coalition);
  std::vector<Move> moves;
  for (StateId q : qs) {
    for (auto& a : enabled_group(model, coalition, q)) moves.push_back({q, a});
  }
  return MoveSet(coalition, std::move(moves));
}

StateSet post_states(const Icgs& model, const StateSet& qs) {
  model.require_states(qs);
  StateSet out;
  for (StateId q : qs) {
    for (StateId s : model.successors(q)) out.insert(s);
  }
  return out;
}

StateSet gamma_closure(const Icgs& model, const Coalition& coalition, const StateSet& qs) {
  model.require_states(qs);
  model.require_coalition(coalition);
  StateSet out;
  for (AgentId ag : coalition.members()) {
    std::vector<bool> seen(model.num_observations(ag), false);
    for (StateId q : qs) {
      const auto token = model.observation(ag, q);
      if (seen[token]) continue;
      seen[token] = true;
      for (StateId s : model.observation_class(ag, token)) out.insert(s);
    }
  }
  return out;
}

StateSet everybody_knows(const Icgs& model, const Coalition& coalition, const StateSet& qs) {
  model.require_coalition(coalition);
  StateSet out = model.all_states();
  for (AgentId ag : coalition.members()) {
    for (std::uint32_t token = 0; token < model.num_observations(ag); ++token) {
      const auto cls = model.observation_class(ag, token);
      const bool inside = std::all_of(cls.begin(), cls.end(), [&](StateId s) { return qs.contains(s); });
      if (!inside) {
        for (StateId s : cls) out.erase(s);
      }
    }
  }
  return out;
}

StateId step(const Icgs& model, StateId q, std::span<const ActionId> joint) {
  model.require_state(q);
  auto j = model.joint_index(q, joint);
  if (!j) {
    throw Error(ErrorCode::DisabledJointAction, "joint action not enabled in state '" + model.state_name(q) + "'");
  }
  return model.successors(q)[*j];
}

bool completes(const Icgs& model, const Coalition& coalition, const GroupAction& action, StateId q,
               std::size_t j) {
  const auto members = coalition.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (model.joint_pick(q, j, members[i]) != action.pick(i)) return false;
  }
  return true;
}

GroupAction project(const Icgs& model, const Coalition& coalition, StateId q, std::size_t j) {
  const auto members = coalition.members();
  std::vector<ActionId> picks(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) picks[i] = model.joint_pick(q, j, members[i]);
  return GroupAction(picks);
}

}  // namespace atlir
