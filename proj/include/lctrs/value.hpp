#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <variant>

namespace lctrs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Sort of a term. Bit-vector sorts carry their width, every other sort is
/// identified by name alone.
struct Sort {
  std::string name;
  unsigned width = 0;

  static Sort boolean() { return {"Bool", 0}; }
  static Sort integer() { return {"Int", 0}; }
  static Sort real() { return {"Real", 0}; }
  static Sort bitvec(unsigned w) { return {"BitVec", w}; }

  bool is_bool() const { return name == "Bool"; }
  bool is_int() const { return name == "Int"; }
  bool is_real() const { return name == "Real"; }
  bool is_bitvec() const { return name == "BitVec"; }

  /// SMT-LIB spelling, e.g. `(_ BitVec 4)`.
  std::string to_string() const;

  auto operator<=>(const Sort&) const = default;
};

/// Fixed-width bit pattern; `bits` is always reduced modulo 2^width.
struct BitVec {
  unsigned width = 1;
  BigInt bits;

  BitVec() = default;
  BitVec(unsigned w, BigInt b);

  BigInt modulus() const { return BigInt(1) << width; }
  BigInt as_signed() const;
  bool operator==(const BitVec&) const = default;
};

/// A theory value: the payload of a value symbol.
class Value {
 public:
  using Payload = std::variant<bool, BigInt, Rational, BitVec>;

  Value() : payload_(false) {}
  static Value boolean(bool b) { return Value(b); }
  static Value integer(BigInt i) { return Value(std::move(i)); }
  static Value real(Rational r) { return Value(std::move(r)); }
  static Value bitvec(BitVec b) { return Value(std::move(b)); }

  Sort sort() const;
  const Payload& payload() const { return payload_; }

  bool as_bool() const { return std::get<bool>(payload_); }
  const BigInt& as_int() const { return std::get<BigInt>(payload_); }
  const Rational& as_real() const { return std::get<Rational>(payload_); }
  const BitVec& as_bitvec() const { return std::get<BitVec>(payload_); }

  /// SMT-LIB literal: `5`, `(- 5)`, `1.5`, `(/ 1.0 3.0)`, `#b0101`, `true`.
  std::string to_smtlib() const;

  bool operator==(const Value& o) const { return payload_ == o.payload_; }

 private:
  template <class T>
  explicit Value(T v) : payload_(std::move(v)) {}
  Payload payload_;
};

}  // namespace lctrs
