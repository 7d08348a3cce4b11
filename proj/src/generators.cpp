#include "atlir/generators.hpp"

#include <array>
#include <charconv>
#include <deque>
#include <unordered_map>

namespace atlir {

// ---------------------------------------------------------------------------
// Card game

namespace {

constexpr std::array<char, 3> kCards = {'A', 'K', 'Q'};

// A beats K, K beats Q, Q beats A.
bool beats(int a, int b) { return (a + 1) % 3 == b; }

std::string pair_name(const char* prefix, int p, int d) { return std::string(prefix) + kCards[p] + kCards[d]; }

}  // namespace

Icgs gen_cardgame(bool perfect_information) {
  IcgsBuilder b;
  const AgentId player = b.add_agent("player");
  const AgentId dealer = b.add_agent("dealer");
  const ActionId p_wait = b.add_action(player, "wait");
  const ActionId keep = b.add_action(player, "keep");
  const ActionId swap = b.add_action(player, "swap");
  std::array<std::array<ActionId, 3>, 3> deal{};
  for (int p = 0; p < 3; ++p) {
    for (int d = 0; d < 3; ++d) {
      if (p != d) deal[p][d] = b.add_action(dealer, pair_name("deal_", p, d));
    }
  }
  const ActionId d_wait = b.add_action(dealer, "wait");
  const PropId win = b.add_proposition("win");

  const StateId init = b.add_state("init");
  b.set_initial(init);
  std::array<std::array<StateId, 3>, 3> dealt{};
  std::array<std::array<StateId, 3>, 3> shown{};
  for (int p = 0; p < 3; ++p) {
    for (int d = 0; d < 3; ++d) {
      if (p != d) dealt[p][d] = b.add_state(pair_name("deal_", p, d));
    }
  }
  for (int p = 0; p < 3; ++p) {
    for (int d = 0; d < 3; ++d) {
      if (p != d) shown[p][d] = b.add_state(pair_name("end_", p, d));
    }
  }

  std::vector<ActionId> all_deals;
  for (int p = 0; p < 3; ++p) {
    for (int d = 0; d < 3; ++d) {
      if (p == d) continue;
      all_deals.push_back(deal[p][d]);
      const int table = 3 - p - d;
      const StateId s = dealt[p][d];
      const StateId f = shown[p][d];
      b.add_transition(init, std::array{p_wait, deal[p][d]}, s);
      b.set_protocol(player, s, {keep, swap});
      b.set_protocol(dealer, s, {d_wait});
      b.add_transition(s, std::array{keep, d_wait}, f);
      b.add_transition(s, std::array{swap, d_wait}, shown[table][d]);
      b.set_protocol(player, f, {p_wait});
      b.set_protocol(dealer, f, {d_wait});
      b.add_transition(f, std::array{p_wait, d_wait}, f);
      if (beats(p, d)) b.add_label(f, win);
      if (!perfect_information) {
        b.set_observation(player, s, std::string("hold_") + kCards[p]);
        b.set_observation(player, f, pair_name("show_", p, d));
      }
    }
  }
  b.set_protocol(player, init, {p_wait});
  b.set_protocol(dealer, init, all_deals);
  return b.build();
}

// ---------------------------------------------------------------------------
// Castles

namespace {

constexpr int kInitialHp = 3;
constexpr std::size_t kMaxTransitions = std::size_t{1} << 27;

enum CastleAction : int { kAttack0 = 0, kDefend = 3, kNothing = 4 };

struct CastleState {
  bool init = true;
  std::array<int, 3> hp{kInitialHp, kInitialHp, kInitialHp};
  std::uint32_t fatigue = 0;  // bit w: worker w defended last turn

  std::uint64_t key() const {
    return (init ? 1u : 0u) | static_cast<std::uint64_t>(hp[0]) << 1 | static_cast<std::uint64_t>(hp[1]) << 3 |
           static_cast<std::uint64_t>(hp[2]) << 5 | static_cast<std::uint64_t>(fatigue) << 7;
  }
};

}  // namespace

std::string castle_worker(std::size_t castle, std::size_t index) {
  return "c" + std::to_string(castle) + "w" + std::to_string(index);
}

Icgs gen_castles(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t cap) {
  const std::array<std::size_t, 3> counts{n1, n2, n3};
  if (n1 == 0 || n2 == 0 || n3 == 0) throw Error(ErrorCode::CapExceeded, "every castle needs at least one worker");
  if (n1 + n2 + n3 > cap) {
    throw Error(ErrorCode::CapExceeded,
                std::to_string(n1 + n2 + n3) + " workers exceed the cap of " + std::to_string(cap));
  }

  IcgsBuilder b;
  std::vector<int> home;                    // castle of each worker
  std::vector<std::array<ActionId, 5>> ids;  // per worker, indexed by CastleAction; attacks by target
  for (int c = 0; c < 3; ++c) {
    for (std::size_t j = 1; j <= counts[c]; ++j) {
      const AgentId ag = b.add_agent(castle_worker(c + 1, j));
      std::array<ActionId, 5> row{};
      for (int t = 0; t < 3; ++t) {
        if (t != c) row[kAttack0 + t] = b.add_action(ag, "attack" + std::to_string(t + 1));
      }
      row[kDefend] = b.add_action(ag, "defend");
      row[kNothing] = b.add_action(ag, "nothing");
      ids.push_back(row);
      home.push_back(c);
    }
  }
  const std::size_t workers = home.size();
  std::array<PropId, 3> defeated_prop{};
  for (int c = 0; c < 3; ++c) defeated_prop[c] = b.add_proposition("castle" + std::to_string(c + 1) + "_defeated");
  const PropId all_defeated = b.add_proposition("all_defeated");

  // Protocol choices per worker, as CastleAction codes.
  auto choices = [&](const CastleState& s, std::size_t w) {
    std::vector<int> out;
    if (s.hp[home[w]] == 0) return std::vector<int>{kNothing};
    for (int t = 0; t < 3; ++t) {
      if (t != home[w]) out.push_back(kAttack0 + t);
    }
    if (!(s.fatigue >> w & 1)) out.push_back(kDefend);
    out.push_back(kNothing);
    return out;
  };

  auto name_of = [&](const CastleState& s) {
    if (s.init) return std::string("init");
    std::string name = "h";
    for (int h : s.hp) name += static_cast<char>('0' + h);
    name += "_f";
    for (std::size_t w = 0; w < workers; ++w) name += (s.fatigue >> w & 1) ? '1' : '0';
    return name;
  };

  std::unordered_map<std::uint64_t, StateId> index;
  std::deque<std::pair<CastleState, StateId>> queue;
  std::size_t transitions = 0;

  auto intern = [&](const CastleState& s) {
    auto [it, fresh] = index.try_emplace(s.key(), 0);
    if (!fresh) return it->second;
    const StateId id = b.add_state(name_of(s));
    it->second = id;
    bool all = true;
    std::string defeated_bits;
    for (int c = 0; c < 3; ++c) {
      if (s.hp[c] == 0) {
        b.add_label(id, defeated_prop[c]);
        defeated_bits += '1';
      } else {
        all = false;
        defeated_bits += '0';
      }
    }
    if (all) b.add_label(id, all_defeated);
    for (std::size_t w = 0; w < workers; ++w) {
      std::vector<ActionId> allowed;
      for (int a : choices(s, w)) allowed.push_back(ids[w][a]);
      b.set_protocol(static_cast<AgentId>(w), id, std::move(allowed));
      std::string token = "init";
      if (!s.init) {
        const bool can_defend = s.hp[home[w]] > 0 && !(s.fatigue >> w & 1);
        token = std::string(can_defend ? "defend" : "rest") + "_d" + defeated_bits;
      }
      b.set_observation(static_cast<AgentId>(w), id, token);
    }
    queue.emplace_back(s, id);
    return id;
  };

  b.set_initial(intern(CastleState{}));
  while (!queue.empty()) {
    auto [s, id] = queue.front();
    queue.pop_front();
    std::vector<std::vector<int>> options(workers);
    std::size_t joints = 1;
    for (std::size_t w = 0; w < workers; ++w) {
      options[w] = choices(s, w);
      joints *= options[w].size();
    }
    transitions += joints;
    if (transitions > kMaxTransitions) throw Error(ErrorCode::CapExceeded, "castles transition table too large");

    std::vector<std::size_t> pos(workers, 0);
    std::vector<ActionId> joint(workers);
    while (true) {
      std::array<int, 3> attackers{}, defenders{};
      CastleState next;
      next.init = false;
      next.fatigue = 0;
      for (std::size_t w = 0; w < workers; ++w) {
        const int a = options[w][pos[w]];
        joint[w] = ids[w][a];
        if (a == kDefend) {
          ++defenders[home[w]];
          next.fatigue |= 1u << w;
        } else if (a != kNothing) {
          ++attackers[a - kAttack0];
        }
      }
      for (int c = 0; c < 3; ++c) {
        const int damage = std::max(0, attackers[c] - defenders[c]);
        next.hp[c] = std::max(0, s.hp[c] - damage);
      }
      b.add_transition(id, joint, intern(next));

      std::size_t w = workers;
      bool carry = true;
      while (carry && w > 0) {
        --w;
        if (++pos[w] < options[w].size()) {
          carry = false;
        } else {
          pos[w] = 0;
        }
      }
      if (carry) break;
    }
  }
  return b.build();
}

// ---------------------------------------------------------------------------

namespace {

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "bad generator parameters in '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

GeneratedModel generate(std::string_view spec) {
  if (spec == "cardgame") return {gen_cardgame(false), {}};
  if (spec == "cardgame-perfect") return {gen_cardgame(true), {}};
  constexpr std::string_view prefix = "castles:";
  if (spec.substr(0, prefix.size()) == prefix) {
    std::vector<std::size_t> n;
    std::string_view rest = spec.substr(prefix.size());
    while (true) {
      const auto comma = rest.find(',');
      n.push_back(parse_count(rest.substr(0, comma), spec));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (n.size() != 3) throw Error(ErrorCode::ParseError, "castles needs three worker counts");
    GeneratedModel out{gen_castles(n[0], n[1], n[2]), {}};
    auto& all12 = out.macros["all12"];
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t j = 1; j <= n[c]; ++j) all12.push_back(castle_worker(c + 1, j));
    }
    return out;
  }
  throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(spec) + "'");
}

}  // namespace atlir
