#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "atlir/errors.hpp"
#include "atlir/icgs.hpp"

namespace atlir {

enum class Op {
  True,
  Atom,
  Not,
  Or,
  // Derived Boolean connectives, removed by normalize().
  And,
  Implies,
  Iff,
  // <<Γ>> operators.
  CeX,
  CeU,
  CeF,
  CeG,
  CeW,
  // [[Γ]] operators.
  CaX,
  CaU,
  CaF,
  CaG,
  CaW,
};

/// Immutable formula tree; copies share structure.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(PropId p);
  static Formula negation(Formula f);
  static Formula disjunction(Formula a, Formula b);
  static Formula conjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula equivalence(Formula a, Formula b);
  /// Unary strategic operators: CeX, CeF, CeG, CaX, CaF, CaG.
  static Formula strategic(Op op, Coalition coalition, Formula f);
  /// Binary strategic operators: CeU, CeW, CaU, CaW.
  static Formula strategic(Op op, Coalition coalition, Formula a, Formula b);

  Op op() const;
  PropId proposition() const;
  const Coalition& coalition() const;
  /// Operand of unary nodes; left operand of binary ones.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_strategic() const;
  bool is_binary() const;
  /// Only True, Atom, Not, Or, CeX and CeU occur.
  bool is_core() const;

  /// Canonical text over ids; equal for structurally equal formulas.
  std::string key() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Names usable inside <<...>> that stand for several agents.
using CoalitionMacros = std::map<std::string, std::vector<std::string>, std::less<>>;

/// Error with a character offset into the parsed text.
class PositionedError : public Error {
 public:
  PositionedError(ErrorCode code, std::size_t position, const std::string& message)
      : Error(code, message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the concrete syntax:
///
///   f ::= f <-> f | f -> f | f '|' f | f & f | !f | true | false | p | (f)
///       | <<a,b>> X f | <<a,b>> F f | <<a,b>> (f U f)
///       | [[a,b]] X f | [[a,b]] G f | [[a,b]] (f W f)
///
/// `&` binds tighter than `|`, then `->` (right associative), then `<->`.
/// Operators the backward algorithms cannot evaluate (<<Γ>>G, <<Γ>>W,
/// [[Γ]]U, [[Γ]]F) are rejected with UnsupportedOperator, empty coalitions
/// with SyntaxError.
Formula parse(std::string_view text, const Icgs& model, const CoalitionMacros& macros = {});

/// Rewrites derived operators into True/Atom/Not/Or/CeX/CeU.
Formula normalize(const Formula& f);

/// Concrete syntax accepted by parse().
std::string print(const Formula& f, const Icgs& model);

}  // namespace atlir
