#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atlir/errors.hpp"
#include "atlir/state_set.hpp"

namespace atlir {

class Icgs;

/// Joint actions and group actions are packed one byte per agent, so a model
/// has at most this many agents and each agent at most 255 actions.
inline constexpr std::size_t kMaxAgents = 8;
inline constexpr std::size_t kMaxActionsPerAgent = 255;

/// A set of agents in canonical (increasing id) order.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::initializer_list<AgentId> members);
  explicit Coalition(std::vector<AgentId> members);

  std::span<const AgentId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(AgentId ag) const;
  /// Position of ag in the canonical member list.
  std::optional<std::size_t> index_of(AgentId ag) const;

  auto operator<=>(const Coalition&) const = default;

 private:
  std::vector<AgentId> members_;
};

/// One action per coalition member, aligned with Coalition::members().
/// The first member occupies the most significant byte, so the natural
/// integer order is the lexicographic order on picks.
class GroupAction {
 public:
  GroupAction() = default;
  explicit GroupAction(std::span<const ActionId> picks);

  std::size_t size() const { return width_; }
  ActionId pick(std::size_t i) const {
    return static_cast<ActionId>((code_ >> (8 * (width_ - 1 - i))) & 0xFFU);
  }
  std::vector<ActionId> picks() const;
  std::uint64_t code() const { return code_; }

  auto operator<=>(const GroupAction&) const = default;

 private:
  std::uint64_t code_ = 0;
  std::uint8_t width_ = 0;
};

struct Move {
  StateId state = 0;
  GroupAction action;

  auto operator<=>(const Move&) const = default;
};

/// A finite set of moves over one coalition, kept sorted (state-major, then
/// action).
class MoveSet {
 public:
  using const_iterator = std::vector<Move>::const_iterator;

  MoveSet() = default;
  explicit MoveSet(Coalition coalition) : coalition_(std::move(coalition)) {}
  MoveSet(Coalition coalition, std::vector<Move> moves);

  const Coalition& coalition() const { return coalition_; }

  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }
  const_iterator begin() const { return moves_.begin(); }
  const_iterator end() const { return moves_.end(); }
  const Move& operator[](std::size_t i) const { return moves_[i]; }

  bool contains(const Move& m) const;
  void insert(const Move& m);

  /// The set of states the moves cover (M|_Q).
  StateSet states() const;

  MoveSet& operator|=(const MoveSet& other);
  MoveSet& operator-=(const MoveSet& other);
  MoveSet& operator&=(const MoveSet& other);
  friend MoveSet operator|(MoveSet a, const MoveSet& b) { return a |= b; }
  friend MoveSet operator-(MoveSet a, const MoveSet& b) { return a -= b; }
  friend MoveSet operator&(MoveSet a, const MoveSet& b) { return a &= b; }

  bool subset_of(const MoveSet& other) const;

  friend bool operator==(const MoveSet& a, const MoveSet& b) = default;
  friend auto operator<=>(const MoveSet& a, const MoveSet& b) = default;

 private:
  void require_same_coalition(const MoveSet& other) const;

  Coalition coalition_;
  std::vector<Move> moves_;
};

enum class IssueKind {
  EmptyProtocol,
  MissingTransition,
  NondeterministicTransition,
  ObservationProtocolMismatch,
  DanglingReference,
  DisabledTransition,
};

std::string_view to_string(IssueKind kind);

struct Issue {
  IssueKind kind;
  std::string message;
};

/// Thrown when a model fails validation; carries every violated rule.
class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// Mutable description of a game structure. Nothing is checked until
/// validate() or build(); ids returned by the add_* calls are dense and
/// assigned in call order.
class IcgsBuilder {
 public:
  AgentId add_agent(std::string name);
  ActionId add_action(AgentId ag, std::string name);
  StateId add_state(std::string name);
  PropId add_proposition(std::string name);

  void add_label(StateId q, PropId p);
  void set_initial(StateId q);
  void set_protocol(AgentId ag, StateId q, std::vector<ActionId> actions);
  /// States an agent cannot tell apart share a token. Unset observations
  /// default to the state's own name.
  void set_observation(AgentId ag, StateId q, std::string token);
  /// `joint` holds one action per agent, in agent order.
  void add_transition(StateId from, std::span<const ActionId> joint, StateId to);

  std::size_t num_agents() const { return agents_.size(); }
  std::size_t num_states() const { return states_.size(); }

  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<ActionId> find_action(AgentId ag, std::string_view name) const;
  std::optional<PropId> find_proposition(std::string_view name) const;

  Icgs build() const;

 private:
  friend std::vector<Issue> validate(const IcgsBuilder& builder);
  friend class Icgs;

  struct RawTransition {
    StateId from;
    std::uint64_t joint;
    StateId to;
  };

  std::vector<std::string> agents_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::string> states_;
  std::vector<std::string> props_;
  std::vector<std::pair<StateId, PropId>> labels_;
  std::vector<StateId> initial_;
  std::vector<std::vector<std::vector<ActionId>>> protocol_;  // [agent][state]
  std::vector<std::vector<std::string>> observation_;         // [agent][state]
  std::vector<RawTransition> transitions_;
  std::vector<Issue> early_issues_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, AgentId> agent_index_;
};

/// Every violated well-formedness rule of the builder's contents; empty on
/// success.
std::vector<Issue> validate(const IcgsBuilder& builder);

/// Immutable, validated game structure with dense per-state transition
/// tables. Joint actions of state q are indexed in mixed radix over the
/// agents' enabled action lists, first agent most significant.
class Icgs {
 public:
  struct Edge {
    StateId from;
    std::uint32_t joint;
  };

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_agents() const { return agent_names_.size(); }
  std::size_t num_propositions() const { return prop_names_.size(); }
  std::size_t num_actions(AgentId ag) const { return action_names_.at(ag).size(); }

  StateSet all_states() const { return StateSet::all(num_states()); }
  const StateSet& initial() const { return initial_; }

  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  const std::string& agent_name(AgentId ag) const { return agent_names_.at(ag); }
  const std::string& action_name(AgentId ag, ActionId a) const { return action_names_.at(ag).at(a); }
  const std::string& proposition_name(PropId p) const { return prop_names_.at(p); }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<ActionId> find_action(AgentId ag, std::string_view name) const;
  std::optional<PropId> find_proposition(std::string_view name) const;

  /// States labelled with p.
  const StateSet& label(PropId p) const { return labels_.at(p); }
  std::span<const PropId> labels_of(StateId q) const { return state_labels_.at(q); }

  std::span<const ActionId> protocol(AgentId ag, StateId q) const { return protocol_[ag][q]; }
  bool enabled(AgentId ag, StateId q, ActionId a) const;

  std::size_t joint_count(StateId q) const { return offsets_[q + 1] - offsets_[q]; }
  /// Successor per joint action index.
  std::span<const StateId> successors(StateId q) const {
    return {successors_.data() + offsets_[q], joint_count(q)};
  }
  /// Position of ag's action within protocol(ag, q) for joint index j.
  std::size_t joint_position(StateId q, std::size_t j, AgentId ag) const {
    return (j / strides_[q * num_agents() + ag]) % protocol_[ag][q].size();
  }
  ActionId joint_pick(StateId q, std::size_t j, AgentId ag) const {
    return protocol_[ag][q][joint_position(q, j, ag)];
  }
  std::size_t stride(StateId q, AgentId ag) const { return strides_[q * num_agents() + ag]; }
  std::vector<ActionId> decode_joint(StateId q, std::size_t j) const;
  /// Index of an enabled joint action, or nullopt when some pick is disabled.
  std::optional<std::size_t> joint_index(StateId q, std::span<const ActionId> joint) const;

  /// Incoming transitions of s.
  std::span<const Edge> predecessors(StateId s) const {
    return {pred_edges_.data() + pred_offsets_[s], pred_offsets_[s + 1] - pred_offsets_[s]};
  }

  std::uint32_t observation(AgentId ag, StateId q) const { return observation_[ag][q]; }
  const std::string& observation_name(AgentId ag, std::uint32_t token) const {
    return token_names_[ag][token];
  }
  std::size_t num_observations(AgentId ag) const { return classes_[ag].size(); }
  /// States sharing `token` for ag, in increasing order.
  std::span<const StateId> observation_class(AgentId ag, std::uint32_t token) const {
    return classes_[ag][token];
  }
  bool indistinguishable(AgentId ag, StateId q1, StateId q2) const {
    return observation_[ag][q1] == observation_[ag][q2];
  }

  // Argument checks shared by the query functions.
  void require_state(StateId q) const;
  void require_states(const StateSet& qs) const;
  void require_agent(AgentId ag) const;
  void require_coalition(const Coalition& c) const;

  /// Resolves agent names into a coalition; UnknownAgent on failure.
  Coalition coalition(std::initializer_list<std::string_view> names) const;
  Coalition coalition(std::span<const std::string> names) const;
  Coalition all_agents() const;

 private:
  friend class IcgsBuilder;
  Icgs() = default;

  std::vector<std::string> agent_names_;
  std::vector<std::vector<std::string>> action_names_;
  std::vector<std::string> state_names_;
  std::vector<std::string> prop_names_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, AgentId> agent_index_;

  StateSet initial_;
  std::vector<StateSet> labels_;
  std::vector<std::vector<PropId>> state_labels_;

  std::vector<std::vector<std::vector<ActionId>>> protocol_;  // [agent][state]
  std::vector<std::size_t> strides_;                          // [state * agents + agent]
  std::vector<std::size_t> offsets_;
  std::vector<StateId> successors_;
  std::vector<std::size_t> pred_offsets_;
  std::vector<Edge> pred_edges_;

  std::vector<std::vector<std::uint32_t>> observation_;  // [agent][state]
  std::vector<std::vector<std::string>> token_names_;
  std::vector<std::vector<std::vector<StateId>>> classes_;
};

// Elementary semantic queries.

/// Actions the coalition can jointly choose in q (E_Γ(q)), in increasing
/// order. The empty coalition has exactly one (empty) group action.
std::vector<GroupAction> enabled_group(const Icgs& model, const Coalition& coalition, StateId q);

/// Every Γ-move of the structure.
MoveSet all_moves(const Icgs& model, const Coalition& coalition);

/// Γ-moves enabled in the states of qs (Moves_Γ).
MoveSet moves_of(const Icgs& model, const Coalition& coalition, const StateSet& qs);

/// One-step successors of qs under any enabled joint action.
StateSet post_states(const Icgs& model, const StateSet& qs);

/// [qs]_Γ: states some coalition member cannot distinguish from a state of qs.
StateSet gamma_closure(const Icgs& model, const Coalition& coalition, const StateSet& qs);

/// States whose every Γ-indistinguishable state lies in qs, i.e.
/// {q | ∀ag∈Γ ∀q'∼_ag q : q' ∈ qs}. With Γ = ∅ this is every state.
StateSet everybody_knows(const Icgs& model, const Coalition& coalition, const StateSet& qs);

/// δ(q, joint); `joint` holds one action per agent in agent order.
StateId step(const Icgs& model, StateId q, std::span<const ActionId> joint);

/// Whether the joint action of q with index j completes the group action.
bool completes(const Icgs& model, const Coalition& coalition, const GroupAction& action, StateId q,
               std::size_t j);

/// Projection of joint action j of state q onto the coalition.
GroupAction project(const Icgs& model, const Coalition& coalition, StateId q, std::size_t j);

}  // namespace atlir
