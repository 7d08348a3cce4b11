#include "atlir/formula.hpp"

#include <cctype>
#include <functional>

namespace atlir {

struct Formula::Node {
  Op op = Op::True;
  PropId prop = 0;
  Coalition coalition;
  std::vector<Formula> children;
};

namespace {

bool unary_strategic(Op op) {
  return op == Op::CeX || op == Op::CeF || op == Op::CeG || op == Op::CaX || op == Op::CaF || op == Op::CaG;
}

bool binary_strategic(Op op) { return op == Op::CeU || op == Op::CeW || op == Op::CaU || op == Op::CaW; }

}  // namespace

Formula Formula::truth() { return Formula(std::make_shared<Node>(Node{Op::True, 0, {}, {}})); }

Formula Formula::falsity() { return negation(truth()); }

Formula Formula::atom(PropId p) { return Formula(std::make_shared<Node>(Node{Op::Atom, p, {}, {}})); }

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<Node>(Node{Op::Not, 0, {}, {std::move(f)}}));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Op::Or, 0, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Op::And, 0, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Op::Implies, 0, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::equivalence(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Op::Iff, 0, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::strategic(Op op, Coalition coalition, Formula f) {
  if (!unary_strategic(op)) throw Error(ErrorCode::SyntaxError, "not a unary strategic operator");
  return Formula(std::make_shared<Node>(Node{op, 0, std::move(coalition), {std::move(f)}}));
}

Formula Formula::strategic(Op op, Coalition coalition, Formula a, Formula b) {
  if (!binary_strategic(op)) throw Error(ErrorCode::SyntaxError, "not a binary strategic operator");
  return Formula(std::make_shared<Node>(Node{op, 0, std::move(coalition), {std::move(a), std::move(b)}}));
}

Op Formula::op() const { return node_->op; }
PropId Formula::proposition() const { return node_->prop; }
const Coalition& Formula::coalition() const { return node_->coalition; }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }

bool Formula::is_strategic() const { return unary_strategic(op()) || binary_strategic(op()); }

bool Formula::is_binary() const { return node_->children.size() == 2; }

bool Formula::is_core() const {
  switch (op()) {
    case Op::True:
    case Op::Atom: return true;
    case Op::Not:
    case Op::CeX: return lhs().is_core();
    case Op::Or:
    case Op::CeU: return lhs().is_core() && rhs().is_core();
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.proposition() != b.proposition() || a.coalition() != b.coalition()) return false;
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!(ca[i] == cb[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

using AgentNamer = std::function<std::string(AgentId)>;
using PropNamer = std::function<std::string(PropId)>;

void render(const Formula& f, const AgentNamer& agent, const PropNamer& prop, std::string& out) {
  auto coalition = [&](const char* open, const char* close) {
    out += open;
    bool first = true;
    for (AgentId ag : f.coalition().members()) {
      if (!first) out += ',';
      out += agent(ag);
      first = false;
    }
    out += close;
  };
  auto infix = [&](const char* sym) {
    out += '(';
    render(f.lhs(), agent, prop, out);
    out += sym;
    render(f.rhs(), agent, prop, out);
    out += ')';
  };
  auto path_unary = [&](const char* open, const char* close, const char* temporal) {
    coalition(open, close);
    out += temporal;
    render(f.lhs(), agent, prop, out);
  };
  auto path_binary = [&](const char* open, const char* close, const char* temporal) {
    coalition(open, close);
    out += " ";
    infix(temporal);
  };

  switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::Atom: out += prop(f.proposition()); break;
    case Op::Not:
      out += '!';
      render(f.lhs(), agent, prop, out);
      break;
    case Op::Or: infix(" | "); break;
    case Op::And: infix(" & "); break;
    case Op::Implies: infix(" -> "); break;
    case Op::Iff: infix(" <-> "); break;
    case Op::CeX: path_unary("<<", ">>", " X "); break;
    case Op::CeF: path_unary("<<", ">>", " F "); break;
    case Op::CeG: path_unary("<<", ">>", " G "); break;
    case Op::CaX: path_unary("[[", "]]", " X "); break;
    case Op::CaF: path_unary("[[", "]]", " F "); break;
    case Op::CaG: path_unary("[[", "]]", " G "); break;
    case Op::CeU: path_binary("<<", ">>", " U "); break;
    case Op::CeW: path_binary("<<", ">>", " W "); break;
    case Op::CaU: path_binary("[[", "]]", " U "); break;
    case Op::CaW: path_binary("[[", "]]", " W "); break;
  }
}

}  // namespace

std::string Formula::key() const {
  std::string out;
  render(
      *this, [](AgentId ag) { return std::to_string(ag); }, [](PropId p) { return "p" + std::to_string(p); }, out);
  return out;
}

std::string print(const Formula& f, const Icgs& model) {
  std::string out;
  render(
      f, [&](AgentId ag) { return model.agent_name(ag); }, [&](PropId p) { return model.proposition_name(p); },
      out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

Formula normalize(const Formula& f) {
  using F = Formula;
  switch (f.op()) {
    case Op::True:
    case Op::Atom: return f;
    case Op::Not: return F::negation(normalize(f.lhs()));
    case Op::Or: return F::disjunction(normalize(f.lhs()), normalize(f.rhs()));
    case Op::And:
      return F::negation(F::disjunction(F::negation(normalize(f.lhs())), F::negation(normalize(f.rhs()))));
    case Op::Implies: return F::disjunction(F::negation(normalize(f.lhs())), normalize(f.rhs()));
    case Op::Iff: {
      const F a = normalize(f.lhs());
      const F b = normalize(f.rhs());
      const F ab = F::disjunction(F::negation(a), b);
      const F ba = F::disjunction(F::negation(b), a);
      return F::negation(F::disjunction(F::negation(ab), F::negation(ba)));
    }
    case Op::CeX: return F::strategic(Op::CeX, f.coalition(), normalize(f.lhs()));
    case Op::CeU: return F::strategic(Op::CeU, f.coalition(), normalize(f.lhs()), normalize(f.rhs()));
    case Op::CeF: return F::strategic(Op::CeU, f.coalition(), F::truth(), normalize(f.lhs()));
    case Op::CaX:
      return F::negation(F::strategic(Op::CeX, f.coalition(), F::negation(normalize(f.lhs()))));
    case Op::CaG:
      return F::negation(F::strategic(Op::CeU, f.coalition(), F::truth(), F::negation(normalize(f.lhs()))));
    case Op::CaW: {
      // [[Γ]](a W b) = !<<Γ>>(!b U (!a & !b))
      const F not_a = F::negation(normalize(f.lhs()));
      const F not_b = F::negation(normalize(f.rhs()));
      const F both = normalize(F::conjunction(not_a, not_b));
      return F::negation(F::strategic(Op::CeU, f.coalition(), not_b, both));
    }
    case Op::CeG: throw Error(ErrorCode::UnsupportedOperator, "<<Γ>>G is a greatest-fixpoint objective");
    case Op::CeW: throw Error(ErrorCode::UnsupportedOperator, "<<Γ>>W is a greatest-fixpoint objective");
    case Op::CaU: throw Error(ErrorCode::UnsupportedOperator, "[[Γ]]U reduces to a greatest-fixpoint objective");
    case Op::CaF: throw Error(ErrorCode::UnsupportedOperator, "[[Γ]]F reduces to a greatest-fixpoint objective");
  }
  throw Error(ErrorCode::UnsupportedOperator, "unknown operator");
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Ident, LAngle, RAngle, LBracket, RBracket, LParen, RParen, Comma, Not, And, Or, Implies, Iff };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
      if (i_ >= text_.size()) {
        out.push_back({Tok::End, "", i_});
        return out;
      }
      const std::size_t start = i_;
      const char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) ++i_;
        out.push_back({Tok::Ident, std::string(text_.substr(start, i_ - start)), start});
        continue;
      }
      auto starts = [&](std::string_view s) { return text_.substr(i_, s.size()) == s; };
      auto emit = [&](Tok kind, std::size_t len) {
        out.push_back({kind, std::string(text_.substr(start, len)), start});
        i_ += len;
      };
      if (starts("<->")) {
        emit(Tok::Iff, 3);
      } else if (starts("<<")) {
        emit(Tok::LAngle, 2);
      } else if (starts(">>")) {
        emit(Tok::RAngle, 2);
      } else if (starts("[[")) {
        emit(Tok::LBracket, 2);
      } else if (starts("]]")) {
        emit(Tok::RBracket, 2);
      } else if (starts("->")) {
        emit(Tok::Implies, 2);
      } else if (c == '(') {
        emit(Tok::LParen, 1);
      } else if (c == ')') {
        emit(Tok::RParen, 1);
      } else if (c == ',') {
        emit(Tok::Comma, 1);
      } else if (c == '!') {
        emit(Tok::Not, 1);
      } else if (c == '&') {
        emit(Tok::And, 1);
      } else if (c == '|') {
        emit(Tok::Or, 1);
      } else {
        throw PositionedError(ErrorCode::SyntaxError, start, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  std::string_view text_;
  std::size_t i_ = 0;
};

bool is_keyword(std::string_view s) {
  return s == "true" || s == "false" || s == "X" || s == "F" || s == "G" || s == "U" || s == "W";
}

class Parser {
 public:
  Parser(std::string_view text, const Icgs& model, const CoalitionMacros& macros)
      : tokens_(Lexer(text).run()), model_(model), macros_(macros) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[i_]; }
  const Token& take() { return tokens_[i_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++i_;
    return true;
  }
  bool accept_word(std::string_view word) {
    if (peek().kind != Tok::Ident || peek().text != word) return false;
    ++i_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw PositionedError(ErrorCode::SyntaxError, peek().pos, message);
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) fail(std::string("expected ") + what);
  }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (accept(Tok::Iff)) f = Formula::equivalence(f, parse_implies());
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (accept(Tok::Implies)) return Formula::implication(f, parse_implies());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::disjunction(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = Formula::conjunction(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::negation(parse_unary());
    if (peek().kind == Tok::LAngle || peek().kind == Tok::LBracket) return parse_strategic();
    return parse_primary();
  }

  Coalition parse_coalition(Tok close, const char* close_text) {
    std::vector<AgentId> ids;
    if (peek().kind == close) fail("empty coalition");
    do {
      if (peek().kind != Tok::Ident) fail("expected an agent name");
      const Token& name = take();
      if (auto macro = macros_.find(name.text); macro != macros_.end()) {
        for (const auto& member : macro->second) ids.push_back(resolve_agent(member, name.pos));
      } else {
        ids.push_back(resolve_agent(name.text, name.pos));
      }
    } while (accept(Tok::Comma));
    expect(close, close_text);
    return Coalition(std::move(ids));
  }

  AgentId resolve_agent(const std::string& name, std::size_t pos) const {
    auto ag = model_.find_agent(name);
    if (!ag) throw PositionedError(ErrorCode::UnknownAgent, pos, "unknown agent '" + name + "'");
    return *ag;
  }

  Formula parse_strategic() {
    const bool exists = take().kind == Tok::LAngle;
    Coalition coalition = exists ? parse_coalition(Tok::RAngle, "'>>'") : parse_coalition(Tok::RBracket, "']]'");
    const std::size_t op_pos = peek().pos;
    auto unsupported = [&](const char* what) {
      throw PositionedError(ErrorCode::UnsupportedOperator, op_pos, std::string(what) + " is not supported");
    };
    if (accept_word("X")) return Formula::strategic(exists ? Op::CeX : Op::CaX, coalition, parse_unary());
    if (accept_word("F")) {
      if (!exists) unsupported("[[Γ]]F");
      return Formula::strategic(Op::CeF, coalition, parse_unary());
    }
    if (accept_word("G")) {
      if (exists) unsupported("<<Γ>>G");
      return Formula::strategic(Op::CaG, coalition, parse_unary());
    }
    expect(Tok::LParen, "X, F, G or '(' after a coalition");
    Formula lhs = parse_iff();
    const std::size_t temporal_pos = peek().pos;
    Op op;
    if (accept_word("U")) {
      if (!exists) throw PositionedError(ErrorCode::UnsupportedOperator, temporal_pos, "[[Γ]]U is not supported");
      op = Op::CeU;
    } else if (accept_word("W")) {
      if (exists) throw PositionedError(ErrorCode::UnsupportedOperator, temporal_pos, "<<Γ>>W is not supported");
      op = Op::CaW;
    } else {
      fail("expected U or W");
    }
    Formula rhs = parse_iff();
    expect(Tok::RParen, "')'");
    return Formula::strategic(op, coalition, lhs, rhs);
  }

  Formula parse_primary() {
    if (accept(Tok::LParen)) {
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind != Tok::Ident) fail("expected a formula");
    if (accept_word("true")) return Formula::truth();
    if (accept_word("false")) return Formula::falsity();
    if (is_keyword(peek().text)) fail("unexpected keyword '" + peek().text + "'");
    const Token& name = take();
    auto p = model_.find_proposition(name.text);
    if (!p) throw PositionedError(ErrorCode::UnknownProposition, name.pos, "unknown proposition '" + name.text + "'");
    return Formula::atom(*p);
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  const Icgs& model_;
  const CoalitionMacros& macros_;
};

}  // namespace

Formula parse(std::string_view text, const Icgs& model, const CoalitionMacros& macros) {
  return Parser(text, model, macros).parse_all();
}

}  // namespace atlir
