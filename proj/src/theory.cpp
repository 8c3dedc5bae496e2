#include "lctrs/theory.hpp"

#include <map>

namespace lctrs {

namespace {

enum TheoryMask : unsigned {
  kCore = 1,
  kInts = 2,
  kReals = 4,
  kMixed = 8,
  kBv = 16,
  kArith = kInts | kReals | kMixed,
  kAll = kCore | kInts | kReals | kMixed | kBv,
};

struct Entry {
  SymbolShape shape;
  unsigned theories;
};

SymbolShape fixed(std::vector<Sort> args, Sort res) {
  SymbolShape s;
  s.kind = SymbolShape::Fixed;
  s.min_args = s.max_args = args.size();
  s.fixed_args = std::move(args);
  s.result = std::move(res);
  return s;
}

SymbolShape same_all(SymbolShape::Class c, std::size_t lo, std::size_t hi, std::size_t idx = 0) {
  SymbolShape s;
  s.kind = SymbolShape::SameAll;
  s.cls = c;
  s.min_args = lo;
  s.max_args = hi;
  s.indices = idx;
  return s;
}

SymbolShape same_args(SymbolShape::Class c, Sort res, std::size_t lo, std::size_t hi) {
  SymbolShape s;
  s.kind = SymbolShape::SameArgs;
  s.cls = c;
  s.result = std::move(res);
  s.min_args = lo;
  s.max_args = hi;
  return s;
}

SymbolShape special(SymbolShape::Kind k, std::size_t args, std::size_t idx) {
  SymbolShape s;
  s.kind = k;
  s.cls = SymbolShape::BitVec;
  s.min_args = s.max_args = args;
  s.indices = idx;
  return s;
}

const std::map<std::string, Entry>& table() {
  static const std::map<std::string, Entry> t = [] {
    using C = SymbolShape;
    const Sort B = Sort::boolean(), I = Sort::integer(), R = Sort::real();
    std::map<std::string, Entry> m;
    m["not"] = {fixed({B}, B), kAll};
    for (const char* op : {"and", "or", "xor", "=>"}) m[op] = {same_all(C::Bool, 1, 0), kAll};
    m["="] = {same_args(C::Any, B, 2, 0), kAll};
    m["distinct"] = {same_args(C::Any, B, 2, 0), kAll};
    {
      SymbolShape ite;
      ite.kind = C::Ite;
      ite.min_args = ite.max_args = 3;
      m["ite"] = {ite, kAll};
    }
    // Arithmetic; the class is narrowed per theory in Theory::shape.
    m["+"] = {same_all(C::Numeric, 2, 0), kArith};
    m["*"] = {same_all(C::Numeric, 2, 0), kArith};
    m["-"] = {same_all(C::Numeric, 1, 0), kArith};
    for (const char* op : {"<", "<=", ">", ">="}) m[op] = {same_args(C::Numeric, B, 2, 0), kArith};
    m["div"] = {fixed({I, I}, I), kInts | kMixed};
    m["mod"] = {fixed({I, I}, I), kInts | kMixed};
    m["abs"] = {fixed({I}, I), kInts | kMixed};
    m["/"] = {same_all(C::Real, 2, 0), kReals | kMixed};
    m["to_real"] = {fixed({I}, R), kMixed};
    m["to_int"] = {fixed({R}, I), kMixed};
    m["is_int"] = {fixed({R}, B), kMixed};
    // Fixed-size bit vectors (theory plus QF_BV logic symbols)
    for (const char* op : {"bvadd", "bvmul", "bvand", "bvor", "bvxor"}) m[op] = {same_all(C::BitVec, 2, 0), kBv};
    for (const char* op : {"bvsub", "bvudiv", "bvurem", "bvsdiv", "bvsrem", "bvsmod", "bvshl", "bvlshr",
                           "bvashr", "bvnand", "bvnor", "bvxnor"}) {
      m[op] = {same_all(C::BitVec, 2, 2), kBv};
    }
    m["bvnot"] = {same_all(C::BitVec, 1, 1), kBv};
    m["bvneg"] = {same_all(C::BitVec, 1, 1), kBv};
    m["rotate_left"] = {same_all(C::BitVec, 1, 1, 1), kBv};
    m["rotate_right"] = {same_all(C::BitVec, 1, 1, 1), kBv};
    for (const char* op : {"bvult", "bvule", "bvugt", "bvuge", "bvslt", "bvsle", "bvsgt", "bvsge"}) {
      m[op] = {same_args(C::BitVec, B, 2, 2), kBv};
    }
    m["concat"] = {special(C::Concat, 2, 0), kBv};
    m["extract"] = {special(C::Extract, 1, 2), kBv};
    m["zero_extend"] = {special(C::Extend, 1, 1), kBv};
    m["sign_extend"] = {special(C::Extend, 1, 1), kBv};
    m["repeat"] = {special(C::Repeat, 1, 1), kBv};
    m["bvcomp"] = {special(C::BvComp, 2, 0), kBv};
    return m;
  }();
  return t;
}

unsigned mask_of(TheoryKind k) {
  switch (k) {
    case TheoryKind::Core: return kCore;
    case TheoryKind::Ints: return kInts;
    case TheoryKind::Reals: return kReals;
    case TheoryKind::IntsReals: return kMixed;
    case TheoryKind::BitVectors: return kBv;
  }
  return kCore;
}

bool in_class(const Sort& s, SymbolShape::Class c, TheoryKind k) {
  switch (c) {
    case SymbolShape::Any: return true;
    case SymbolShape::Bool: return s.is_bool();
    case SymbolShape::Int: return s.is_int();
    case SymbolShape::Real: return s.is_real();
    case SymbolShape::BitVec: return s.is_bitvec();
    case SymbolShape::Numeric:
      if (k == TheoryKind::Ints) return s.is_int();
      if (k == TheoryKind::Reals) return s.is_real();
      return s.is_int() || s.is_real();
  }
  return false;
}

[[noreturn]] void sort_error(const std::string& name, const std::vector<Sort>& args) {
  std::string msg = "no instance of " + name + " for argument sorts (";
  for (std::size_t i = 0; i < args.size(); ++i) msg += (i ? " " : "") + args[i].to_string();
  throw Error(ErrorKind::SortMismatch, msg + ")");
}

bool all_digits(const std::string& s, std::size_t from = 0) {
  if (from >= s.size()) return false;
  for (std::size_t i = from; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

const Theory& Theory::get(TheoryKind k) {
  static const Theory core(TheoryKind::Core, "Core");
  static const Theory ints(TheoryKind::Ints, "Ints");
  static const Theory reals(TheoryKind::Reals, "Reals");
  static const Theory mixed(TheoryKind::IntsReals, "Reals_Ints");
  static const Theory bv(TheoryKind::BitVectors, "FixedSizeBitVectors");
  switch (k) {
    case TheoryKind::Core: return core;
    case TheoryKind::Ints: return ints;
    case TheoryKind::Reals: return reals;
    case TheoryKind::IntsReals: return mixed;
    case TheoryKind::BitVectors: return bv;
  }
  return core;
}

std::optional<TheoryKind> Theory::from_name(const std::string& n) {
  if (n == "Core") return TheoryKind::Core;
  if (n == "Ints") return TheoryKind::Ints;
  if (n == "Reals") return TheoryKind::Reals;
  if (n == "Reals_Ints" || n == "Ints_Reals" || n == "RealsInts" || n == "IntsReals") {
    return TheoryKind::IntsReals;
  }
  if (n == "FixedSizeBitVectors" || n == "BitVectors") return TheoryKind::BitVectors;
  return std::nullopt;
}

bool Theory::has_symbol(const std::string& n) const {
  auto it = table().find(n);
  return it != table().end() && (it->second.theories & mask_of(kind_));
}

std::optional<SymbolShape> Theory::shape(const std::string& n) const {
  if (!has_symbol(n)) return std::nullopt;
  SymbolShape s = table().at(n).shape;
  if (s.cls == SymbolShape::Numeric) {
    if (kind_ == TheoryKind::Ints) s.cls = SymbolShape::Int;
    if (kind_ == TheoryKind::Reals) s.cls = SymbolShape::Real;
  }
  return s;
}

bool Theory::has_sort(const Sort& s) const {
  if (s.is_bool()) return true;
  switch (kind_) {
    case TheoryKind::Core: return false;
    case TheoryKind::Ints: return s.is_int();
    case TheoryKind::Reals: return s.is_real();
    case TheoryKind::IntsReals: return s.is_int() || s.is_real();
    case TheoryKind::BitVectors: return s.is_bitvec() && s.width > 0;
  }
  return false;
}

std::optional<Value> Theory::parse_literal(const std::string& a) const {
  if (a == "true") return Value::boolean(true);
  if (a == "false") return Value::boolean(false);
  bool ints = kind_ == TheoryKind::Ints || kind_ == TheoryKind::IntsReals;
  bool reals = kind_ == TheoryKind::Reals || kind_ == TheoryKind::IntsReals;
  if (all_digits(a)) {
    if (a.size() > 1 && a[0] == '0') return std::nullopt;
    if (ints) return Value::integer(BigInt(a));
    if (reals) return Value::real(Rational(BigInt(a)));
    return std::nullopt;
  }
  auto dot = a.find('.');
  if (reals && dot != std::string::npos && dot > 0 && all_digits(a.substr(0, dot)) &&
      all_digits(a, dot + 1)) {
    std::string frac = a.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num(a.substr(0, dot) + frac);
    return Value::real(Rational(num, scale));
  }
  if (kind_ == TheoryKind::BitVectors && a.size() > 2 && a[0] == '#') {
    BigInt v = 0;
    if (a[1] == 'b') {
      for (std::size_t i = 2; i < a.size(); ++i) {
        if (a[i] != '0' && a[i] != '1') return std::nullopt;
        v = v * 2 + (a[i] - '0');
      }
      return Value::bitvec(BitVec(static_cast<unsigned>(a.size() - 2), v));
    }
    if (a[1] == 'x') {
      for (std::size_t i = 2; i < a.size(); ++i) {
        char c = static_cast<char>(std::tolower(a[i]));
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else return std::nullopt;
        v = v * 16 + d;
      }
      return Value::bitvec(BitVec(static_cast<unsigned>(4 * (a.size() - 2)), v));
    }
  }
  return std::nullopt;
}

SymbolPtr Theory::instantiate(const std::string& n, const std::vector<unsigned>& idx,
                              const std::vector<Sort>& args) const {
  auto sh = shape(n);
  if (!sh) throw Error(ErrorKind::UnknownSymbol, n + " is not a symbol of theory " + name_);
  if (args.size() < sh->min_args || (sh->max_args && args.size() > sh->max_args)) {
    throw Error(ErrorKind::ArityMismatch, n + " applied to " + std::to_string(args.size()) + " arguments");
  }
  if (idx.size() != sh->indices) {
    throw Error(ErrorKind::ArityMismatch, n + " expects " + std::to_string(sh->indices) + " indices");
  }
  Sort res;
  switch (sh->kind) {
    case SymbolShape::Fixed:
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (!(args[i] == sh->fixed_args[i])) sort_error(n, args);
      }
      res = sh->result;
      break;
    case SymbolShape::SameArgs:
    case SymbolShape::SameAll:
      for (const Sort& s : args) {
        if (!(s == args[0]) || !in_class(s, sh->cls, kind_)) sort_error(n, args);
      }
      res = sh->kind == SymbolShape::SameAll ? args[0] : sh->result;
      break;
    case SymbolShape::Ite:
      if (!args[0].is_bool() || !(args[1] == args[2])) sort_error(n, args);
      res = args[1];
      break;
    case SymbolShape::Concat:
      if (!args[0].is_bitvec() || !args[1].is_bitvec()) sort_error(n, args);
      res = Sort::bitvec(args[0].width + args[1].width);
      break;
    case SymbolShape::Extract:
      if (!args[0].is_bitvec() || idx[0] < idx[1] || idx[0] >= args[0].width) sort_error(n, args);
      res = Sort::bitvec(idx[0] - idx[1] + 1);
      break;
    case SymbolShape::Extend:
      if (!args[0].is_bitvec()) sort_error(n, args);
      res = Sort::bitvec(args[0].width + idx[0]);
      break;
    case SymbolShape::Repeat:
      if (!args[0].is_bitvec() || idx[0] == 0) sort_error(n, args);
      res = Sort::bitvec(args[0].width * idx[0]);
      break;
    case SymbolShape::BvComp:
      if (!args[0].is_bitvec() || !(args[0] == args[1])) sort_error(n, args);
      res = Sort::bitvec(1);
      break;
  }
  auto f = std::make_shared<FunSym>();
  f->name = n;
  f->indices = idx;
  f->arg_sorts = args;
  f->result = res;
  f->kind = SymbolKind::Theory;
  return f;
}

std::string Theory::logic() const {
  // Quantifiers are needed for extra-variable witnesses and linear
  // projections; ALL covers every combination we emit.
  return "ALL";
}

// ---------------------------------------------------------------------------
// Interpretation

namespace {

BigInt euclid_div(const BigInt& m, const BigInt& n) {
  if (n == 0) return 0;
  BigInt q = m / n;  // truncates toward zero
  BigInt r = m - q * n;
  if (r < 0) q += (n > 0 ? -1 : 1);
  return q;
}

BigInt euclid_mod(const BigInt& m, const BigInt& n) {
  if (n == 0) return m;
  return m - n * euclid_div(m, n);
}

BigInt floor_rat(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

template <class T>
int cmp(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

int compare_values(const Value& a, const Value& b) {
  if (a.sort().is_int()) return cmp(a.as_int(), b.as_int());
  return cmp(a.as_real(), b.as_real());
}

bool chain(std::span<const Value> a, bool (*ok)(int)) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (!ok(compare_values(a[i], a[i + 1]))) return false;
  }
  return true;
}

BitVec bv_udiv(const BitVec& a, const BitVec& b) {
  if (b.bits == 0) return BitVec(a.width, a.modulus() - 1);
  return BitVec(a.width, a.bits / b.bits);
}

BitVec bv_urem(const BitVec& a, const BitVec& b) {
  if (b.bits == 0) return a;
  return BitVec(a.width, a.bits % b.bits);
}

BitVec bv_neg(const BitVec& a) { return BitVec(a.width, -a.bits); }

bool msb(const BitVec& a) { return boost::multiprecision::bit_test(a.bits, a.width - 1); }

BitVec bv_sdiv(const BitVec& s, const BitVec& t) {
  bool ms = msb(s), mt = msb(t);
  if (!ms && !mt) return bv_udiv(s, t);
  if (ms && !mt) return bv_neg(bv_udiv(bv_neg(s), t));
  if (!ms && mt) return bv_neg(bv_udiv(s, bv_neg(t)));
  return bv_udiv(bv_neg(s), bv_neg(t));
}

BitVec bv_srem(const BitVec& s, const BitVec& t) {
  bool ms = msb(s), mt = msb(t);
  if (!ms && !mt) return bv_urem(s, t);
  if (ms && !mt) return bv_neg(bv_urem(bv_neg(s), t));
  if (!ms && mt) return bv_urem(s, bv_neg(t));
  return bv_neg(bv_urem(bv_neg(s), bv_neg(t)));
}

BitVec bv_smod(const BitVec& s, const BitVec& t) {
  bool ms = msb(s), mt = msb(t);
  BitVec abs_s = ms ? bv_neg(s) : s;
  BitVec abs_t = mt ? bv_neg(t) : t;
  BitVec u = bv_urem(abs_s, abs_t);
  if (u.bits == 0) return u;
  if (!ms && !mt) return u;
  if (ms && !mt) return BitVec(s.width, bv_neg(u).bits + t.bits);
  if (!ms && mt) return BitVec(s.width, u.bits + t.bits);
  return bv_neg(u);
}

BigInt bitwise(const BigInt& a, const BigInt& b, unsigned w, int op) {
  BigInt r = 0;
  for (unsigned i = 0; i < w; ++i) {
    bool x = boost::multiprecision::bit_test(a, i);
    bool y = boost::multiprecision::bit_test(b, i);
    bool z = op == 0 ? (x && y) : op == 1 ? (x || y) : (x != y);
    if (z) boost::multiprecision::bit_set(r, i);
  }
  return r;
}

Value apply_bv(const std::string& n, const FunSym& f, std::span<const Value> a) {
  auto bv = [&](std::size_t i) -> const BitVec& { return a[i].as_bitvec(); };
  auto mk = [](BitVec b) { return Value::bitvec(std::move(b)); };
  unsigned w = a.empty() ? 0 : bv(0).width;
  auto fold = [&](auto op) {
    BitVec acc = bv(0);
    for (std::size_t i = 1; i < a.size(); ++i) acc = op(acc, bv(i));
    return mk(acc);
  };
  if (n == "bvadd") return fold([](const BitVec& x, const BitVec& y) { return BitVec(x.width, x.bits + y.bits); });
  if (n == "bvmul") return fold([](const BitVec& x, const BitVec& y) { return BitVec(x.width, x.bits * y.bits); });
  if (n == "bvand") return fold([](const BitVec& x, const BitVec& y) { return BitVec(x.width, bitwise(x.bits, y.bits, x.width, 0)); });
  if (n == "bvor") return fold([](const BitVec& x, const BitVec& y) { return BitVec(x.width, bitwise(x.bits, y.bits, x.width, 1)); });
  if (n == "bvxor") return fold([](const BitVec& x, const BitVec& y) { return BitVec(x.width, bitwise(x.bits, y.bits, x.width, 2)); });
  if (n == "bvsub") return mk(BitVec(w, bv(0).bits - bv(1).bits));
  if (n == "bvnot") return mk(BitVec(w, bv(0).modulus() - 1 - bv(0).bits));
  if (n == "bvneg") return mk(bv_neg(bv(0)));
  if (n == "bvnand") return mk(BitVec(w, bv(0).modulus() - 1 - bitwise(bv(0).bits, bv(1).bits, w, 0)));
  if (n == "bvnor") return mk(BitVec(w, bv(0).modulus() - 1 - bitwise(bv(0).bits, bv(1).bits, w, 1)));
  if (n == "bvxnor") return mk(BitVec(w, bv(0).modulus() - 1 - bitwise(bv(0).bits, bv(1).bits, w, 2)));
  if (n == "bvudiv") return mk(bv_udiv(bv(0), bv(1)));
  if (n == "bvurem") return mk(bv_urem(bv(0), bv(1)));
  if (n == "bvsdiv") return mk(bv_sdiv(bv(0), bv(1)));
  if (n == "bvsrem") return mk(bv_srem(bv(0), bv(1)));
  if (n == "bvsmod") return mk(bv_smod(bv(0), bv(1)));
  if (n == "bvshl" || n == "bvlshr" || n == "bvashr") {
    const BigInt& sh = bv(1).bits;
    if (sh >= w) {
      if (n == "bvashr" && msb(bv(0))) return mk(BitVec(w, bv(0).modulus() - 1));
      return mk(BitVec(w, 0));
    }
    unsigned k = static_cast<unsigned>(sh);
    if (n == "bvshl") return mk(BitVec(w, bv(0).bits << k));
    if (n == "bvlshr") return mk(BitVec(w, bv(0).bits >> k));
    BigInt s = bv(0).as_signed();
    BigInt q = s >= 0 ? BigInt(s >> k) : BigInt(-((-s - 1) >> k) - 1);
    return mk(BitVec(w, q));
  }
  if (n == "rotate_left" || n == "rotate_right") {
    unsigned k = f.indices[0] % w;
    if (n == "rotate_right") k = (w - k) % w;
    BigInt x = bv(0).bits;
    return mk(BitVec(w, (x << k) | (x >> (w - k))));
  }
  if (n == "bvult") return Value::boolean(bv(0).bits < bv(1).bits);
  if (n == "bvule") return Value::boolean(bv(0).bits <= bv(1).bits);
  if (n == "bvugt") return Value::boolean(bv(0).bits > bv(1).bits);
  if (n == "bvuge") return Value::boolean(bv(0).bits >= bv(1).bits);
  if (n == "bvslt") return Value::boolean(bv(0).as_signed() < bv(1).as_signed());
  if (n == "bvsle") return Value::boolean(bv(0).as_signed() <= bv(1).as_signed());
  if (n == "bvsgt") return Value::boolean(bv(0).as_signed() > bv(1).as_signed());
  if (n == "bvsge") return Value::boolean(bv(0).as_signed() >= bv(1).as_signed());
  if (n == "concat") return mk(BitVec(w + bv(1).width, (bv(0).bits << bv(1).width) | bv(1).bits));
  if (n == "extract") {
    unsigned hi = f.indices[0], lo = f.indices[1];
    return mk(BitVec(hi - lo + 1, bv(0).bits >> lo));
  }
  if (n == "zero_extend") return mk(BitVec(w + f.indices[0], bv(0).bits));
  if (n == "sign_extend") return mk(BitVec(w + f.indices[0], bv(0).as_signed()));
  if (n == "repeat") {
    BigInt r = 0;
    for (unsigned i = 0; i < f.indices[0]; ++i) r = (r << w) | bv(0).bits;
    return mk(BitVec(w * f.indices[0], r));
  }
  if (n == "bvcomp") return mk(BitVec(1, bv(0).bits == bv(1).bits ? 1 : 0));
  throw Error(ErrorKind::UnknownSymbol, "no interpretation for " + n);
}

}  // namespace

Value apply_symbol(const FunSym& f, std::span<const Value> a) {
  if (f.is_value()) return *f.value;
  const std::string& n = f.name;
  if (n == "not") return Value::boolean(!a[0].as_bool());
  if (n == "and") {
    for (const Value& v : a) if (!v.as_bool()) return Value::boolean(false);
    return Value::boolean(true);
  }
  if (n == "or") {
    for (const Value& v : a) if (v.as_bool()) return Value::boolean(true);
    return Value::boolean(false);
  }
  if (n == "xor") {
    bool r = false;
    for (const Value& v : a) r = r != v.as_bool();
    return Value::boolean(r);
  }
  if (n == "=>") {
    bool r = a.back().as_bool();
    for (std::size_t i = a.size() - 1; i-- > 0;) r = !a[i].as_bool() || r;
    return Value::boolean(r);
  }
  if (n == "=") {
    for (std::size_t i = 0; i + 1 < a.size(); ++i) if (!(a[i] == a[i + 1])) return Value::boolean(false);
    return Value::boolean(true);
  }
  if (n == "distinct") {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (a[i] == a[j]) return Value::boolean(false);
    return Value::boolean(true);
  }
  if (n == "ite") return a[0].as_bool() ? a[1] : a[2];
  if (n.rfind("bv", 0) == 0 || n == "concat" || n == "extract" || n == "zero_extend" ||
      n == "sign_extend" || n == "repeat" || n == "rotate_left" || n == "rotate_right") {
    return apply_bv(n, f, a);
  }
  if (n == "<") return Value::boolean(chain(a, [](int c) { return c < 0; }));
  if (n == "<=") return Value::boolean(chain(a, [](int c) { return c <= 0; }));
  if (n == ">") return Value::boolean(chain(a, [](int c) { return c > 0; }));
  if (n == ">=") return Value::boolean(chain(a, [](int c) { return c >= 0; }));
  bool is_int = f.result.is_int();
  if (n == "+" || n == "*" || n == "-") {
    if (is_int) {
      BigInt acc = a[0].as_int();
      if (n == "-" && a.size() == 1) return Value::integer(-acc);
      for (std::size_t i = 1; i < a.size(); ++i) {
        if (n == "+") acc += a[i].as_int();
        else if (n == "*") acc *= a[i].as_int();
        else acc -= a[i].as_int();
      }
      return Value::integer(acc);
    }
    Rational acc = a[0].as_real();
    if (n == "-" && a.size() == 1) return Value::real(-acc);
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (n == "+") acc += a[i].as_real();
      else if (n == "*") acc *= a[i].as_real();
      else acc -= a[i].as_real();
    }
    return Value::real(acc);
  }
  if (n == "/") {
    Rational acc = a[0].as_real();
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i].as_real() == 0) acc = 0;
      else acc /= a[i].as_real();
    }
    return Value::real(acc);
  }
  if (n == "div") return Value::integer(euclid_div(a[0].as_int(), a[1].as_int()));
  if (n == "mod") return Value::integer(euclid_mod(a[0].as_int(), a[1].as_int()));
  if (n == "abs") return Value::integer(a[0].as_int() < 0 ? BigInt(-a[0].as_int()) : a[0].as_int());
  if (n == "to_real") return Value::real(Rational(a[0].as_int()));
  if (n == "to_int") return Value::integer(floor_rat(a[0].as_real()));
  if (n == "is_int") return Value::boolean(Rational(floor_rat(a[0].as_real())) == a[0].as_real());
  throw Error(ErrorKind::UnknownSymbol, "no interpretation for " + n);
}

Value interpret(const Term& t) {
  if (t.is_var() || !t.symbol().is_theory()) {
    throw Error(ErrorKind::NotGroundLogical, t.to_string());
  }
  if (t.is_value()) return *t.symbol().value;
  std::vector<Value> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(interpret(a));
  return apply_symbol(t.symbol(), args);
}

Term evaluate_ground(const Term& t) {
  if (t.is_var() || t.is_value()) return t;
  if (t.is_ground() && t.is_logical()) return Term::value(interpret(t));
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(evaluate_ground(a));
  return Term::app(t.symbol_ptr(), std::move(args));
}

bool is_value(const Term& t) { return t.is_value(); }
bool is_logical(const Term& t) { return t.is_logical(); }

Term mk_int(long v) { return Term::value(Value::integer(BigInt(v))); }

Term int_op(const std::string& name, const std::vector<Term>& args) {
  std::vector<Sort> sorts;
  for (const Term& a : args) sorts.push_back(a.sort());
  return Term::app(Theory::get(TheoryKind::Ints).instantiate(name, {}, sorts), args);
}

Term well_founded_greater(const Term& n, const Term& m) {
  return mk_and(int_op(">", {n, m}), int_op(">=", {n, mk_int(0)}));
}

Term well_founded_geq(const Term& n, const Term& m) { return int_op(">=", {n, m}); }

}  // namespace lctrs
