#include "atlir/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "atlir/formula.hpp"

namespace atlir {

namespace {

using nlohmann::json;

[[noreturn]] void structural(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::ParseError, where + ": " + message);
}

const json& field(const json& doc, const char* key, json::value_t type) {
  auto it = doc.find(key);
  if (it == doc.end()) structural("/", std::string("missing key \"") + key + "\"");
  if (it->type() != type) structural(std::string("/") + key, "unexpected value type");
  return *it;
}

std::string string_at(const json& value, const std::string& where) {
  if (!value.is_string()) structural(where, "expected a string");
  return value.get<std::string>();
}

std::vector<std::string> unique_names(const json& list, const std::string& where) {
  if (!list.is_array()) structural(where, "expected an array");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto name = string_at(list[i], where + "/" + std::to_string(i));
    if (!seen.insert(name).second) structural(where + "/" + std::to_string(i), "duplicate name \"" + name + "\"");
    out.push_back(std::move(name));
  }
  return out;
}

class Loader {
 public:
  explicit Loader(const json& doc) : doc_(doc) {}

  Icgs run() {
    if (!doc_.is_object()) structural("/", "expected an object");
    static const std::set<std::string> known = {"agents", "actions", "states", "initial",
                                                "labels", "obs",     "protocol", "transitions"};
    for (const auto& [key, value] : doc_.items()) {
      if (!known.contains(key)) structural("/" + key, "unknown key");
    }

    for (auto& name : unique_names(field(doc_, "agents", json::value_t::array), "/agents")) b_.add_agent(name);
    read_actions();
    for (auto& name : unique_names(field(doc_, "states", json::value_t::array), "/states")) b_.add_state(name);
    for (const auto& q : unique_names(field(doc_, "initial", json::value_t::array), "/initial")) {
      if (auto id = state(q, "/initial")) b_.set_initial(*id);
    }
    read_labels();
    read_obs();
    read_protocol();
    read_transitions();

    if (!dangling_.empty()) {
      auto issues = dangling_;
      for (auto& issue : validate(b_)) issues.push_back(std::move(issue));
      throw ModelError(std::move(issues));
    }
    return b_.build();
  }

 private:
  void dangling(const std::string& where, const std::string& what) {
    dangling_.push_back({IssueKind::DanglingReference, where + ": unknown " + what});
  }

  std::optional<StateId> state(const std::string& name, const std::string& where) {
    auto id = b_.find_state(name);
    if (!id) dangling(where, "state \"" + name + "\"");
    return id;
  }

  std::optional<AgentId> agent(const std::string& name, const std::string& where) {
    auto id = b_.find_agent(name);
    if (!id) dangling(where, "agent \"" + name + "\"");
    return id;
  }

  std::optional<ActionId> action(AgentId ag, const std::string& name, const std::string& where) {
    auto id = b_.find_action(ag, name);
    if (!id) dangling(where, "action \"" + name + "\"");
    return id;
  }

  void read_actions() {
    const json& actions = field(doc_, "actions", json::value_t::object);
    for (const auto& [name, list] : actions.items()) {
      const std::string where = "/actions/" + name;
      auto ag = agent(name, where);
      auto names = unique_names(list, where);
      if (ag) {
        for (auto& a : names) b_.add_action(*ag, a);
      }
    }
  }

  void read_labels() {
    const json& labels = field(doc_, "labels", json::value_t::object);
    for (const auto& [name, list] : labels.items()) {
      const std::string where = "/labels/" + name;
      const PropId p = b_.add_proposition(name);
      for (const auto& q : unique_names(list, where)) {
        if (auto id = state(q, where)) b_.add_label(*id, p);
      }
    }
  }

  void read_obs() {
    const json& obs = field(doc_, "obs", json::value_t::object);
    for (const auto& [name, row] : obs.items()) {
      const std::string where = "/obs/" + name;
      if (!row.is_object()) structural(where, "expected an object");
      auto ag = agent(name, where);
      for (const auto& [q, token] : row.items()) {
        auto tok = string_at(token, where + "/" + q);
        auto id = state(q, where);
        if (ag && id) b_.set_observation(*ag, *id, tok);
      }
    }
  }

  void read_protocol() {
    const json& protocol = field(doc_, "protocol", json::value_t::object);
    for (const auto& [name, row] : protocol.items()) {
      const std::string where = "/protocol/" + name;
      if (!row.is_object()) structural(where, "expected an object");
      auto ag = agent(name, where);
      for (const auto& [q, list] : row.items()) {
        const std::string at = where + "/" + q;
        auto names = unique_names(list, at);
        auto id = state(q, where);
        if (!ag || !id) continue;
        std::vector<ActionId> ids;
        for (const auto& a : names) {
          if (auto act = action(*ag, a, at)) ids.push_back(*act);
        }
        b_.set_protocol(*ag, *id, std::move(ids));
      }
    }
  }

  void read_transitions() {
    const json& transitions = field(doc_, "transitions", json::value_t::array);
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const std::string where = "/transitions/" + std::to_string(i);
      const json& t = transitions[i];
      if (!t.is_object() || !t.contains("from") || !t.contains("to") || !t.contains("actions") ||
          !t["actions"].is_object() || t.size() != 3) {
        structural(where, "expected {\"from\", \"actions\", \"to\"}");
      }
      auto from = state(string_at(t["from"], where + "/from"), where);
      auto to = state(string_at(t["to"], where + "/to"), where);
      std::vector<ActionId> joint(b_.num_agents());
      std::vector<bool> given(b_.num_agents(), false);
      bool ok = from && to;
      for (const auto& [name, act] : t["actions"].items()) {
        auto ag = agent(name, where + "/actions");
        auto a_name = string_at(act, where + "/actions/" + name);
        if (!ag) {
          ok = false;
          continue;
        }
        auto a = action(*ag, a_name, where + "/actions/" + name);
        if (!a) {
          ok = false;
          continue;
        }
        joint[*ag] = *a;
        given[*ag] = true;
      }
      if (std::find(given.begin(), given.end(), false) != given.end()) {
        structural(where + "/actions", "every agent needs an action");
      }
      if (ok) b_.add_transition(*from, joint, *to);
    }
  }

  const json& doc_;
  IcgsBuilder b_;
  std::vector<Issue> dangling_;
};

}  // namespace

Icgs load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PositionedError(ErrorCode::ParseError, e.byte, "malformed JSON");
  }
  return Loader(doc).run();
}

Icgs load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_model(text.str());
}

std::string save_model(const Icgs& model) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  json doc = json::object();
  std::vector<std::string> agents, states, initial;
  for (AgentId ag = 0; ag < model.num_agents(); ++ag) agents.push_back(model.agent_name(ag));
  for (StateId q = 0; q < model.num_states(); ++q) states.push_back(model.state_name(q));
  for (StateId q : model.initial()) initial.push_back(model.state_name(q));
  doc["agents"] = sorted(agents);
  doc["states"] = sorted(states);
  doc["initial"] = sorted(initial);

  doc["actions"] = json::object();
  doc["obs"] = json::object();
  doc["protocol"] = json::object();
  for (AgentId ag = 0; ag < model.num_agents(); ++ag) {
    const auto& name = model.agent_name(ag);
    std::vector<std::string> actions;
    for (ActionId a = 0; a < model.num_actions(ag); ++a) actions.push_back(model.action_name(ag, a));
    doc["actions"][name] = sorted(actions);
    json obs = json::object();
    json protocol = json::object();
    for (StateId q = 0; q < model.num_states(); ++q) {
      obs[model.state_name(q)] = model.observation_name(ag, model.observation(ag, q));
      std::vector<std::string> enabled;
      for (ActionId a : model.protocol(ag, q)) enabled.push_back(model.action_name(ag, a));
      protocol[model.state_name(q)] = sorted(enabled);
    }
    doc["obs"][name] = std::move(obs);
    doc["protocol"][name] = std::move(protocol);
  }

  doc["labels"] = json::object();
  for (PropId p = 0; p < model.num_propositions(); ++p) {
    std::vector<std::string> states_of;
    for (StateId q : model.label(p)) states_of.push_back(model.state_name(q));
    doc["labels"][model.proposition_name(p)] = sorted(states_of);
  }

  std::vector<json> transitions;
  for (StateId q = 0; q < model.num_states(); ++q) {
    const auto succ = model.successors(q);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      json actions = json::object();
      for (AgentId ag = 0; ag < model.num_agents(); ++ag) {
        actions[model.agent_name(ag)] = model.action_name(ag, model.joint_pick(q, j, ag));
      }
      transitions.push_back({{"from", model.state_name(q)}, {"actions", std::move(actions)}, {"to", model.state_name(succ[j])}});
    }
  }
  std::sort(transitions.begin(), transitions.end(), [](const json& a, const json& b) {
    return std::tie(a["from"], a["actions"], a["to"]) < std::tie(b["from"], b["actions"], b["to"]);
  });
  doc["transitions"] = std::move(transitions);
  return doc.dump(2) + "\n";
}

void save_model_file(const Icgs& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << save_model(model);
  if (!out) throw Error(ErrorCode::ParseError, "failed writing " + path.string());
}

}  // namespace atlir
