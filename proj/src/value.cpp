#include "lctrs/value.hpp"

#include <algorithm>
#include <optional>

namespace lctrs {

std::string Sort::to_string() const {
  if (is_bitvec()) return "(_ BitVec " + std::to_string(width) + ")";
  return name;
}

BitVec::BitVec(unsigned w, BigInt b) : width(w), bits(std::move(b)) {
  BigInt m = modulus();
  bits %= m;
  if (bits < 0) bits += m;
}

BigInt BitVec::as_signed() const {
  BigInt half = BigInt(1) << (width - 1);
  return bits >= half ? bits - modulus() : bits;
}

Sort Value::sort() const {
  switch (payload_.index()) {
    case 0: return Sort::boolean();
    case 1: return Sort::integer();
    case 2: return Sort::real();
    default: return Sort::bitvec(as_bitvec().width);
  }
}

namespace {

// Decimal expansion when the denominator is of the form 2^a 5^b.
std::optional<std::string> decimal(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::nullopt;
  int digits = std::max(twos, fives);
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = num * (scale / den);
  std::string s = scaled.str();
  if (digits == 0) return s + ".0";
  while (static_cast<int>(s.size()) <= digits) s = "0" + s;
  return s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

}  // namespace

std::string Value::to_smtlib() const {
  switch (payload_.index()) {
    case 0: return as_bool() ? "true" : "false";
    case 1: {
      const BigInt& i = as_int();
      if (i < 0) return "(- " + BigInt(-i).str() + ")";
      return i.str();
    }
    case 2: {
      Rational r = as_real();
      bool neg = r < 0;
      if (neg) r = -r;
      std::string body;
      if (auto d = decimal(r)) {
        body = *d;
      } else {
        body = "(/ " + boost::multiprecision::numerator(r).str() + ".0 " +
               boost::multiprecision::denominator(r).str() + ".0)";
      }
      return neg ? "(- " + body + ")" : body;
    }
    default: {
      const BitVec& b = as_bitvec();
      std::string s(b.width, '0');
      BigInt v = b.bits;
      for (unsigned i = 0; i < b.width; ++i) {
        if (boost::multiprecision::bit_test(v, i)) s[b.width - 1 - i] = '1';
      }
      return "#b" + s;
    }
  }
}

}  // namespace lctrs
