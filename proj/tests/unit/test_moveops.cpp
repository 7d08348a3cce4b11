#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "atlir/generators.hpp"
#include "atlir/moveops.hpp"
#include "support/corpus.hpp"

using namespace atlir;
namespace t = atlir::testing;

namespace {

class CardGame : public ::testing::Test {
 protected:
  const Icgs m = gen_cardgame();
  const Coalition player = m.coalition({"player"});
  const ActionId keep = *m.find_action(0, "keep");
  const ActionId swap = *m.find_action(0, "swap");

  StateId q(std::string_view name) const { return *m.find_state(name); }
  Move move(std::string_view s, ActionId a) const { return {q(s), GroupAction(std::array{a})}; }
  MoveSet moves(std::initializer_list<Move> ms) const { return MoveSet(player, ms); }
  StateSet wins() const { return m.label(*m.find_proposition("win")); }
};

// Two agents a and b with actions x, y in four states; a confuses s0/s1,
// b confuses s2/s3.
Icgs two_agent_model() {
  IcgsBuilder b;
  const AgentId a = b.add_agent("a");
  const AgentId c = b.add_agent("b");
  for (AgentId ag : {a, c}) {
    b.add_action(ag, "x");
    b.add_action(ag, "y");
  }
  for (int i = 0; i < 4; ++i) b.add_state("s" + std::to_string(i));
  b.set_initial(0);
  for (StateId s = 0; s < 4; ++s) {
    for (AgentId ag : {a, c}) b.set_protocol(ag, s, {0, 1});
    for (ActionId x = 0; x < 2; ++x) {
      for (ActionId y = 0; y < 2; ++y) b.add_transition(s, std::array{x, y}, 0);
    }
  }
  b.set_observation(a, 0, "left");
  b.set_observation(a, 1, "left");
  b.set_observation(c, 2, "right");
  b.set_observation(c, 3, "right");
  return b.build();
}

Move mv(StateId s, ActionId x, ActionId y) { return {s, GroupAction(std::array{x, y})}; }

std::set<MoveSet> as_set(const std::vector<MoveSet>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_F(CardGame, Conflicting) {
  EXPECT_TRUE(conflicting(m, player, move("deal_AK", keep), move("deal_AQ", swap)));
  EXPECT_FALSE(conflicting(m, player, move("deal_AK", keep), move("deal_AK", keep)));
  EXPECT_FALSE(conflicting(m, player, move("deal_AK", keep), move("deal_KA", swap)));
  EXPECT_THROW(conflicting(m, m.all_agents(), move("deal_AK", keep), move("deal_AQ", swap)), Error);

  EXPECT_FALSE(is_conflicting(m, moves({})));
  EXPECT_FALSE(is_conflicting(m, moves({move("deal_AK", keep)})));
  EXPECT_TRUE(is_conflicting(m, moves({move("deal_AK", keep), move("deal_AQ", swap)})));
}

TEST_F(CardGame, Compatible) {
  const MoveSet candidates = moves({move("deal_QK", keep), move("deal_QK", swap)});
  EXPECT_EQ(compatible(m, candidates, moves({})), candidates);
  EXPECT_EQ(compatible(m, candidates, candidates), MoveSet(player, {}));
  const MoveSet base = moves({move("deal_QA", swap)});
  EXPECT_EQ(compatible(m, base, base), base);
  EXPECT_EQ(compatible(m, candidates, base), moves({move("deal_QK", swap)}));
}

TEST_F(CardGame, Predecessors) {
  EXPECT_TRUE(pre_ce(m, player, StateSet{}).empty());
  EXPECT_EQ(pre_ce(m, player, m.all_states()), m.all_states());
  const StateSet pre = pre_ce(m, player, wins());
  for (const char* d : {"deal_AK", "deal_AQ", "deal_KA", "deal_KQ", "deal_QA", "deal_QK"}) {
    EXPECT_TRUE(pre.contains(q(d))) << d;
  }

  EXPECT_TRUE(pre_move(m, player, moves({})).empty());
  EXPECT_EQ(pre_move(m, player, all_moves(m, player)), all_moves(m, player));
  const MoveSet pm = pre_move(m, player, moves_of(m, player, wins()));
  EXPECT_TRUE(pm.states().subset_of(pre));
  for (const char* d : {"deal_AK", "deal_AQ", "deal_KA", "deal_KQ", "deal_QA", "deal_QK"}) {
    EXPECT_TRUE(pm.states().contains(q(d))) << d;
  }
}

TEST_F(CardGame, FilterCeu) {
  EXPECT_TRUE(filter_ceu(m, player, m.all_states(), StateSet{}).empty());
  const StateSet reach = filter_ceu(m, player, m.all_states(), wins());
  EXPECT_TRUE(reach.contains(q("init")));
  EXPECT_TRUE(wins().subset_of(reach));
}

TEST_F(CardGame, SplitMaxOverAClass) {
  const MoveSet ms = moves_of(m, player, StateSet{q("deal_AK"), q("deal_AQ")});
  const auto got = as_set(split_max(m, player, ms));
  const std::set<MoveSet> want = {moves({move("deal_AK", keep), move("deal_AQ", keep)}),
                                  moves({move("deal_AK", swap), move("deal_AQ", swap)})};
  EXPECT_EQ(got, want);
}

TEST_F(CardGame, SplitAgentTwoMoves) {
  const Move a = move("deal_AK", keep);
  const Move b = move("deal_AQ", swap);
  const MoveSet ms = moves({a, b});
  EXPECT_EQ(as_set(split_agent(m, 0, player, ms, true)), (std::set<MoveSet>{moves({a}), moves({b})}));
  EXPECT_EQ(as_set(split_agent(m, 0, player, ms, false)),
            (std::set<MoveSet>{moves({a}), moves({b}), moves({})}));
  EXPECT_EQ(as_set(split_nonempty(m, player, ms)), (std::set<MoveSet>{moves({a}), moves({b})}));
  EXPECT_EQ(as_set(split_all(m, player, ms, true)), as_set(split_agent(m, 0, player, ms, true)));

  const MoveSet fine = moves({a, move("deal_KA", swap)});
  EXPECT_EQ(split_agent(m, 0, player, fine, true), std::vector<MoveSet>{fine});
  EXPECT_EQ(split_max(m, player, fine), std::vector<MoveSet>{fine});

  EXPECT_EQ(split_agent(m, 0, player, moves({}), true), std::vector<MoveSet>{moves({})});
  EXPECT_TRUE(split_nonempty(m, player, moves({})).empty());
  EXPECT_EQ(split_nonempty(m, player, moves({a})), std::vector<MoveSet>{moves({a})});
}

TEST_F(CardGame, SplitErrors) {
  const MoveSet ms = moves({move("deal_AK", keep)});
  try {
    split_agent(m, 1, player, ms, true);
    FAIL() << "expected AgentNotInCoalition";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AgentNotInCoalition);
  }
  try {
    split_all(m, m.all_agents(), ms, true);
    FAIL() << "expected CoalitionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoalitionMismatch);
  }
}

TEST(Split, TwoAgentCrossProduct) {
  const Icgs m = two_agent_model();
  const Coalition ab{0, 1};
  const MoveSet ms(ab, {mv(0, 0, 0), mv(1, 1, 0), mv(2, 0, 0), mv(3, 0, 1)});
  std::set<MoveSet> want;
  for (StateId left : {0, 1}) {
    for (StateId right : {2, 3}) {
      std::vector<Move> pick;
      for (const Move& x : ms) {
        if (x.state == left || x.state == right) pick.push_back(x);
      }
      want.insert(MoveSet(ab, pick));
    }
  }
  EXPECT_EQ(as_set(split_max(m, ab, ms)), want);
  EXPECT_EQ(as_set(split_max(m, ab, ms)), t::brute_force_split(m, ms, true));
}

TEST(Split, RandomAgainstBruteForce) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 400; ++i) {
    const Icgs m = t::random_model(rng);
    const Coalition c = t::random_coalition(rng, m, 3);
    const MoveSet ms = t::random_moves(rng, m, c, 11);
    for (bool largest : {false, true}) {
      const auto got = split_all(m, c, ms, largest);
      EXPECT_EQ(as_set(got).size(), got.size()) << "duplicates";
      EXPECT_EQ(as_set(got), t::brute_force_split(m, ms, largest));
    }
  }
}

TEST(Split, SingleAgentCardinality) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const Icgs m = t::random_model(rng);
    const Coalition c = t::random_coalition(rng, m, 1);
    const MoveSet ms = t::random_moves(rng, m, c, 12);
    std::map<std::uint32_t, std::set<ActionId>> actions_per_class;
    for (const Move& x : ms) actions_per_class[m.observation(c.members()[0], x.state)].insert(x.action.pick(0));
    std::size_t product = 1;
    for (const auto& [token, acts] : actions_per_class) product *= acts.size();
    EXPECT_EQ(split_max(m, c, ms).size(), product);
  }
}

TEST(Split, StreamMatchesCollector) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Icgs m = t::random_model(rng);
    const Coalition c = t::random_coalition(rng, m, 2);
    const MoveSet ms = t::random_moves(rng, m, c, 10);
    SplitStream stream = split_nonempty_stream(m, ms);
    std::vector<MoveSet> streamed;
    while (auto s = stream.next()) streamed.push_back(*s);
    EXPECT_EQ(streamed, split_nonempty(m, c, ms));
    EXPECT_EQ(stream.produced(), streamed.size());
  }
}

TEST(PreMove, ConsistentWithPreCe) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 200; ++i) {
    const Icgs m = t::random_model(rng);
    const Coalition c = t::random_coalition(rng, m, 3);
    StateSet target;
    for (StateId s = 0; s < m.num_states(); ++s) {
      if (rng() & 1) target.insert(s);
    }
    EXPECT_EQ(pre_move(m, c, moves_of(m, c, target)).states(), pre_ce(m, c, target));
    EXPECT_EQ(filter_ceu(m, c, m.all_states(), target), t::naive_filter_ceu(m, c, m.all_states(), target));
  }
}
