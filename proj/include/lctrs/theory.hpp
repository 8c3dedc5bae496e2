#pragma once

#include "lctrs/term.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lctrs {

enum class TheoryKind { Core, Ints, Reals, IntsReals, BitVectors };

/// How a theory symbol constrains the sorts of its arguments. Used by sort
/// inference; `instantiate` is the authoritative check.
struct SymbolShape {
  enum Kind {
    Fixed,         // fixed argument and result sorts
    SameArgs,      // all arguments share one sort from `cls`; result fixed
    SameAll,       // arguments and result share one sort from `cls`
    Ite,           // Bool A A -> A
    Concat,        // BV(a) BV(b) -> BV(a+b)
    Extract,       // (_ extract i j) BV(n) -> BV(i-j+1)
    Extend,        // (_ zero_extend k) BV(n) -> BV(n+k)
    Repeat,        // (_ repeat k) BV(n) -> BV(n*k)
    BvComp,        // BV(n) BV(n) -> BV(1)
  };
  enum Class { Any, Numeric, BitVec, Int, Real, Bool };

  Kind kind = Fixed;
  Class cls = Any;
  std::vector<Sort> fixed_args;  // Fixed only
  Sort result;                   // Fixed / SameArgs
  std::size_t min_args = 0;
  std::size_t max_args = 0;  // 0 = unbounded
  std::size_t indices = 0;
};

class Theory {
 public:
  static const Theory& get(TheoryKind k);
  /// Accepts the SMT-LIB theory names plus a few spellings of the mixed one.
  static std::optional<TheoryKind> from_name(const std::string& name);

  TheoryKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  bool has_symbol(const std::string& name) const;
  std::optional<SymbolShape> shape(const std::string& name) const;
  bool has_sort(const Sort& s) const;
  /// Parses a literal atom: numeral, decimal, #b/#x bit pattern, true/false.
  std::optional<Value> parse_literal(const std::string& atom) const;
  /// A concrete instance of a theory symbol; throws UnknownSymbol,
  /// ArityMismatch or SortMismatch.
  SymbolPtr instantiate(const std::string& name, const std::vector<unsigned>& indices,
                        const std::vector<Sort>& args) const;
  /// Logic passed to `set-logic`.
  std::string logic() const;
  /// Whether the well-founded order on integers is available.
  bool has_integer_order() const { return kind_ == TheoryKind::Ints || kind_ == TheoryKind::IntsReals; }

 private:
  Theory(TheoryKind k, std::string n) : kind_(k), name_(std::move(n)) {}
  TheoryKind kind_;
  std::string name_;
};

/// Value of a theory symbol applied to values.
Value apply_symbol(const FunSym& f, std::span<const Value> args);

/// ⟦t⟧ for a ground logical term; throws NotGroundLogical otherwise.
/// Division by zero: div/`/` give 0, mod gives the dividend, bit-vector
/// division follows SMT-LIB (all ones / dividend).
Value interpret(const Term& t);

/// Replaces every ground logical subterm by its value.
Term evaluate_ground(const Term& t);

bool is_value(const Term& t);
bool is_logical(const Term& t);

/// The integer order used for termination: n > m ∧ n ≥ 0.
Term well_founded_greater(const Term& n, const Term& m);
/// n ≥ m
Term well_founded_geq(const Term& n, const Term& m);

/// Builders for arithmetic over integer terms.
Term mk_int(long v);
Term int_op(const std::string& name, const std::vector<Term>& args);

}  // namespace lctrs
