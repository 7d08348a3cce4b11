#include <gtest/gtest.h>

#include <tuple>

#include "json.hpp"
#include "atlir/checker.hpp"
#include "atlir/generators.hpp"
#include "atlir/model_io.hpp"

using namespace atlir;
using nlohmann::json;

namespace {

// Single agent toggling between two states; the caller breaks it.
json small_doc() {
  return json::parse(R"({
    "agents": ["a"],
    "actions": {"a": ["go", "stay"]},
    "states": ["s0", "s1"],
    "initial": ["s0"],
    "labels": {"p": ["s1"]},
    "obs": {"a": {"s0": "o", "s1": "o"}},
    "protocol": {"a": {"s0": ["go", "stay"], "s1": ["go", "stay"]}},
    "transitions": [
      {"from": "s0", "actions": {"a": "go"}, "to": "s1"},
      {"from": "s0", "actions": {"a": "stay"}, "to": "s0"},
      {"from": "s1", "actions": {"a": "go"}, "to": "s0"},
      {"from": "s1", "actions": {"a": "stay"}, "to": "s1"}
    ]
  })");
}

}  // namespace

TEST(ModelIo, LoadsSmallDocument) {
  const Icgs m = load_model(small_doc().dump());
  EXPECT_EQ(m.num_states(), 2u);
  EXPECT_TRUE(m.indistinguishable(0, 0, 1));
  const CheckResult r = check(m, parse("<<a>> F p", m));
  EXPECT_TRUE(r.holds);
}

TEST(ModelIo, RoundTrip) {
  for (const Icgs& m : {gen_cardgame(), gen_cardgame(true), gen_castles(1, 1, 1)}) {
    const std::string once = save_model(m);
    const Icgs back = load_model(once);
    EXPECT_EQ(save_model(back), once);
    EXPECT_EQ(back.num_states(), m.num_states());
    EXPECT_EQ(back.num_agents(), m.num_agents());
  }
  const Icgs card = load_model(save_model(gen_cardgame()));
  const CheckResult r = check(card, parse("<<player>> F win", card));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.sat.size(), 3u);
}

TEST(ModelIo, MissingTransition) {
  json doc = small_doc();
  doc["transitions"].erase(doc["transitions"].begin());
  try {
    load_model(doc.dump());
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    bool missing = false;
    for (const auto& i : e.issues()) missing = missing || i.kind == IssueKind::MissingTransition;
    EXPECT_TRUE(missing);
  }
}

TEST(ModelIo, DuplicateStateAndUnknownKey) {
  json dup = small_doc();
  dup["states"].push_back("s0");
  try {
    load_model(dup.dump());
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  json extra = small_doc();
  extra["comment"] = "x";
  EXPECT_THROW(load_model(extra.dump()), Error);
}

TEST(ModelIo, DanglingReference) {
  json doc = small_doc();
  doc["labels"]["p"].push_back("nowhere");
  try {
    load_model(doc.dump());
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    bool dangling = false;
    for (const auto& i : e.issues()) dangling = dangling || i.kind == IssueKind::DanglingReference;
    EXPECT_TRUE(dangling);
  }
}

TEST(ModelIo, MalformedJsonHasPosition) {
  try {
    load_model("{\"agents\": [\"a\",, ]}");
    FAIL() << "expected ParseError";
  } catch (const PositionedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(Castles, StateInvariants) {
  const Icgs m = gen_castles(1, 1, 2);
  std::size_t pairs = 0;
  for (StateId q = 0; q < m.num_states(); ++q) {
    const auto& name = m.state_name(q);
    if (name == "init") continue;
    for (int i = 1; i <= 3; ++i) {
      EXPECT_GE(name[i], '0');
      EXPECT_LE(name[i], '3');
    }
  }
  // Workers see whether they can defend and which castles fell, not the
  // remaining health.
  const auto alive = [](const std::string& n) { return n.find('0') > 3; };
  const AgentId w = *m.find_agent("c1w1");
  for (StateId a = 0; a < m.num_states() && pairs == 0; ++a) {
    for (StateId b = a + 1; b < m.num_states(); ++b) {
      const auto& na = m.state_name(a);
      const auto& nb = m.state_name(b);
      if (na == "init" || nb == "init" || !alive(na) || !alive(nb) || na.substr(0, 4) == nb.substr(0, 4)) continue;
      if (na.substr(4) != nb.substr(4)) continue;
      EXPECT_TRUE(m.indistinguishable(w, a, b)) << na << " " << nb;
      ++pairs;
      break;
    }
  }
  EXPECT_GT(pairs, 0u);
}

TEST(Castles, Limits) {
  for (auto [a, b, c] : {std::tuple{0, 1, 1}, std::tuple{3, 3, 2}}) {
    try {
      gen_castles(a, b, c);
      FAIL() << "expected CapExceeded";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
    }
  }
  EXPECT_THROW(generate("castles:1,1"), Error);
  EXPECT_THROW(generate("chess"), Error);
}
