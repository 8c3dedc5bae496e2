#include "lctrs/problem.hpp"

#include "lctrs/critical_pairs.hpp"
#include "lctrs/sexp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace lctrs {

SymbolPtr Problem::find_symbol(const std::string& name) const {
  for (const SymbolPtr& f : signature) {
    if (f->name == name) return f;
  }
  return nullptr;
}

std::vector<SymbolPtr> Problem::defined_symbols() const {
  std::vector<SymbolPtr> out;
  for (const Rule& r : rules) {
    const SymbolPtr& f = r.lhs.symbol_ptr();
    if (std::none_of(out.begin(), out.end(), [&](const SymbolPtr& g) { return *g == *f; })) out.push_back(f);
  }
  return out;
}

namespace {

void collect_theory_symbols(const Term& t, std::vector<SymbolPtr>& out) {
  if (t.is_var()) return;
  if (t.symbol().is_theory() && !t.is_value()) {
    const SymbolPtr& f = t.symbol_ptr();
    if (std::none_of(out.begin(), out.end(), [&](const SymbolPtr& g) { return *g == *f; })) out.push_back(f);
  }
  for (const Term& a : t.args()) collect_theory_symbols(a, out);
}

}  // namespace

std::vector<Rule> calculation_rules(const std::vector<Rule>& rules) {
  std::vector<SymbolPtr> syms;
  for (const Rule& r : rules) {
    collect_theory_symbols(r.lhs, syms);
    collect_theory_symbols(r.rhs, syms);
  }
  std::vector<Rule> out;
  for (const SymbolPtr& f : syms) out.push_back(calculation_rule(f));
  return out;
}

std::vector<Rule> Problem::calculation_rules() const { return lctrs::calculation_rules(rules); }

std::vector<Rule> Problem::rules_with_calculations() const {
  std::vector<Rule> out = rules;
  for (Rule& c : calculation_rules()) out.push_back(std::move(c));
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void parse_error(const Sexp& at, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(at.line) + ": " + msg);
}

bool is_numeral(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

/// Union-find over sort slots; a class may be bound to a concrete sort.
class SortSlots {
 public:
  int fresh() {
    parent_.push_back(static_cast<int>(parent_.size()));
    bound_.emplace_back();
    var_.emplace_back();
    return static_cast<int>(parent_.size()) - 1;
  }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void name_var(int a, const std::string& v) {
    int r = find(a);
    if (var_[r].empty()) var_[r] = v;
  }
  const std::optional<Sort>& bound(int a) { return bound_[find(a)]; }
  const std::string& var_name(int a) { return var_[find(a)]; }

  void bind(int a, const Sort& s) {
    int r = find(a);
    if (bound_[r] && !(*bound_[r] == s)) conflict(r, *bound_[r], s);
    bound_[r] = s;
  }
  void unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (bound_[ra] && bound_[rb] && !(*bound_[ra] == *bound_[rb])) conflict(var_[ra].empty() ? rb : ra, *bound_[ra], *bound_[rb]);
    parent_[rb] = ra;
    if (!bound_[ra]) bound_[ra] = bound_[rb];
    if (var_[ra].empty()) var_[ra] = var_[rb];
  }

 private:
  [[noreturn]] void conflict(int r, const Sort& a, const Sort& b) {
    std::string what = "conflicting sorts " + a.to_string() + " and " + b.to_string();
    if (!var_[r].empty()) throw Error(ErrorKind::SortInferenceFailure, what + " for variable " + var_[r]);
    throw Error(ErrorKind::SortMismatch, what);
  }

  std::vector<int> parent_;
  std::vector<std::optional<Sort>> bound_;
  std::vector<std::string> var_;
};

struct Node {
  enum Kind { VarNode, Lit, TermApp, TheoryApp } kind = VarNode;
  std::string name;
  std::vector<unsigned> indices;
  std::optional<Value> lit;
  SymbolPtr sym;  // TermApp
  std::vector<int> kids;
  int slot = -1;
  const Sexp* src = nullptr;
};

struct Deferred {
  int node;
  SymbolShape shape;
};

class Parser {
 public:
  Parser() = default;
  explicit Parser(Problem p) : p_(std::move(p)) {}

  std::vector<Term> terms(const std::vector<std::string>& texts) {
    std::vector<Sexp> parsed;
    for (const std::string& t : texts) {
      std::vector<Sexp> one = read_sexps(t, nullptr);
      if (one.size() != 1) throw Error(ErrorKind::ParseError, "expected one term in " + t);
      parsed.push_back(std::move(one[0]));
    }
    std::vector<int> roots;
    for (const Sexp& e : parsed) roots.push_back(expr(e));
    propagate_deferred();
    for (int r : roots) check_resolved(r);
    std::vector<Term> out;
    for (int r : roots) out.push_back(build(r));
    return out;
  }

  Problem run(std::string_view text) {
    std::vector<std::string> comments;
    std::vector<Sexp> top = read_sexps(text, &comments);
    for (std::string& c : comments) {
      std::size_t b = c.find_first_not_of(' ');
      p_.meta.push_back(b == std::string::npos ? "" : c.substr(b));
    }
    if (top.empty()) throw Error(ErrorKind::ParseError, "empty input");
    header(top[0]);
    for (std::size_t i = 1; i < top.size(); ++i) entry(top[i]);
    return std::move(p_);
  }

 private:
  void header(const Sexp& s) {
    if (!s.is_list() || s.size() < 2 || !s[0].is_atom("format")) parse_error(s, "expected (format ...)");
    const std::string& f = s[1].text;
    if (f == "LCTRS") {
      p_.format = Format::LCTRS;
    } else if (f == "TRS") {
      p_.format = Format::TRS;
      p_.sorts.push_back(trs_sort());
    } else if (f == "MSTRS") {
      p_.format = Format::MSTRS;
    } else {
      throw Error(ErrorKind::UnsupportedFeature, "format " + f + " is not supported");
    }
    for (std::size_t i = 2; i < s.size(); i += 2) {
      if (s[i].is_atom(":smtlib") && i + 1 < s.size()) continue;
      throw Error(ErrorKind::UnsupportedFeature, "format option " + s[i].to_string());
    }
  }

  static Sort trs_sort() { return Sort{"S", 0}; }

  void entry(const Sexp& s) {
    if (!s.is_list() || s.size() == 0 || !s[0].atom) parse_error(s, "expected a declaration");
    const std::string& k = s[0].text;
    if (k == "theory") {
      if (p_.format != Format::LCTRS) parse_error(s, "theory declaration outside LCTRS format");
      if (s.size() != 2 || !s[1].atom) parse_error(s, "malformed theory declaration");
      auto t = Theory::from_name(s[1].text);
      if (!t) throw Error(ErrorKind::UnknownTheory, "unknown theory " + s[1].text);
      p_.theory = *t;
    } else if (k == "sort") {
      if (s.size() != 2 || !s[1].atom) parse_error(s, "malformed sort declaration");
      p_.sorts.push_back(Sort{s[1].text, 0});
    } else if (k == "fun") {
      fun(s);
    } else if (k == "rule") {
      rule(s);
    } else {
      throw Error(ErrorKind::UnsupportedFeature, "unsupported entry (" + k + " ...)");
    }
  }

  Sort sort_of(const Sexp& s) {
    if (s.atom) {
      for (const Sort& u : p_.sorts) {
        if (u.name == s.text) return u;
      }
      Sort t{s.text, 0};
      if (p_.format == Format::LCTRS && (t.is_bool() || t.is_int() || t.is_real()) && p_.th().has_sort(t)) return t;
      parse_error(s, "unknown sort " + s.text);
    }
    if (s.size() == 3 && s[0].is_atom("_") && s[1].is_atom("BitVec") && is_numeral(s[2].text)) {
      Sort t = Sort::bitvec(static_cast<unsigned>(std::stoul(s[2].text)));
      if (p_.format == Format::LCTRS && p_.th().has_sort(t)) return t;
    }
    parse_error(s, "unknown sort " + s.to_string());
  }

  void fun(const Sexp& s) {
    if (s.size() != 3 || !s[1].atom) parse_error(s, "malformed function declaration");
    const std::string& name = s[1].text;
    if (p_.find_symbol(name)) parse_error(s, "duplicate declaration of " + name);
    if (p_.format == Format::LCTRS && (p_.th().has_symbol(name) || p_.th().parse_literal(name))) {
      parse_error(s, name + " is a theory symbol");
    }
    std::vector<Sort> args;
    Sort res;
    if (p_.format == Format::TRS) {
      if (!s[2].atom || !is_numeral(s[2].text)) parse_error(s, "TRS declarations take an arity");
      args.assign(std::stoul(s[2].text), trs_sort());
      res = trs_sort();
    } else if (s[2].is_list() && s[2].size() >= 1 && s[2][0].is_atom("->")) {
      if (s[2].size() < 2) parse_error(s, "malformed arrow sort");
      for (std::size_t i = 1; i + 1 < s[2].size(); ++i) args.push_back(sort_of(s[2][i]));
      res = sort_of(s[2][s[2].size() - 1]);
    } else {
      res = sort_of(s[2]);
    }
    p_.signature.push_back(make_symbol(name, std::move(args), std::move(res)));
  }

  // -- rules ---------------------------------------------------------------

  int add(Node n) {
    n.slot = slots_.fresh();
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool lctrs() const { return p_.format == Format::LCTRS; }

  int expr(const Sexp& e) {
    if (e.atom) return atom(e);
    if (e.size() == 0) parse_error(e, "empty application");
    const Sexp& head = e[0];
    if (lctrs() && head.is_atom("_")) {
      // (_ bvN w)
      if (e.size() == 3 && e[1].atom && e[1].text.rfind("bv", 0) == 0 && is_numeral(e[1].text.substr(2)) &&
          is_numeral(e[2].text) && p_.theory == TheoryKind::BitVectors) {
        Node n;
    n.kind = Node::Lit;
        n.lit = Value::bitvec(BitVec(static_cast<unsigned>(std::stoul(e[2].text)), BigInt(e[1].text.substr(2))));
        n.src = &e;
        int id = add(std::move(n));
        slots_.bind(nodes_[id].slot, nodes_[id].lit->sort());
        return id;
      }
      parse_error(e, "unsupported indexed term " + e.to_string());
    }
    std::string name;
    std::vector<unsigned> idx;
    if (head.atom) {
      name = head.text;
    } else if (lctrs() && head.size() >= 2 && head[0].is_atom("_") && head[1].atom) {
      name = head[1].text;
      for (std::size_t i = 2; i < head.size(); ++i) {
        if (!is_numeral(head[i].text)) parse_error(head, "index must be a numeral");
        idx.push_back(static_cast<unsigned>(std::stoul(head[i].text)));
      }
    } else {
      parse_error(e, "malformed application " + e.to_string());
    }
    // (- 5) is the literal -5
    if (lctrs() && name == "-" && idx.empty() && e.size() == 2 && e[1].atom && !e[1].quoted) {
      if (auto v = p_.th().parse_literal(e[1].text); v && (v->sort().is_int() || v->sort().is_real())) {
        Node n;
    n.kind = Node::Lit;
        n.lit = v->sort().is_int() ? Value::integer(-v->as_int()) : Value::real(-v->as_real());
        n.src = &e;
        int id = add(std::move(n));
        slots_.bind(nodes_[id].slot, nodes_[id].lit->sort());
        return id;
      }
    }
    std::vector<int> kids;
    for (std::size_t i = 1; i < e.size(); ++i) kids.push_back(expr(e[i]));
    if (idx.empty()) {
      if (SymbolPtr f = p_.find_symbol(name)) {
        if (f->arity() != kids.size()) {
          throw Error(ErrorKind::ArityMismatch, name + " expects " + std::to_string(f->arity()) +
                                                    " arguments, got " + std::to_string(kids.size()));
        }
        Node n;
    n.kind = Node::TermApp;
        n.name = name;
        n.sym = f;
        n.kids = kids;
        n.src = &e;
        int id = add(std::move(n));
        for (std::size_t i = 0; i < kids.size(); ++i) slots_.bind(nodes_[kids[i]].slot, f->arg_sorts[i]);
        slots_.bind(nodes_[id].slot, f->result);
        return id;
      }
    }
    if (!lctrs() || !p_.th().has_symbol(name)) throw Error(ErrorKind::UnknownSymbol, "unknown symbol " + name);
    SymbolShape sh = *p_.th().shape(name);
    if (kids.size() < sh.min_args || (sh.max_args && kids.size() > sh.max_args)) {
      throw Error(ErrorKind::ArityMismatch, name + " applied to " + std::to_string(kids.size()) + " arguments");
    }
    if (idx.size() != sh.indices) {
      throw Error(ErrorKind::ArityMismatch, name + " expects " + std::to_string(sh.indices) + " indices");
    }
    Node n;
    n.kind = Node::TheoryApp;
    n.name = name;
    n.indices = idx;
    n.kids = kids;
    n.src = &e;
    int id = add(std::move(n));
    constrain(id, sh);
    return id;
  }

  std::optional<Sort> class_sort(SymbolShape::Class c) {
    switch (c) {
      case SymbolShape::Int: return Sort::integer();
      case SymbolShape::Real: return Sort::real();
      case SymbolShape::Bool: return Sort::boolean();
      default: return std::nullopt;
    }
  }

  void constrain(int id, const SymbolShape& sh) {
    const Node& n = nodes_[id];
    switch (sh.kind) {
      case SymbolShape::Fixed:
        for (std::size_t i = 0; i < n.kids.size(); ++i) slots_.bind(nodes_[n.kids[i]].slot, sh.fixed_args[i]);
        slots_.bind(n.slot, sh.result);
        break;
      case SymbolShape::SameArgs:
      case SymbolShape::SameAll: {
        int rep = nodes_[n.kids[0]].slot;
        for (int k : n.kids) slots_.unite(rep, nodes_[k].slot);
        if (sh.kind == SymbolShape::SameAll) slots_.unite(rep, n.slot);
        else slots_.bind(n.slot, sh.result);
        if (auto s = class_sort(sh.cls)) slots_.bind(rep, *s);
        break;
      }
      case SymbolShape::Ite:
        slots_.bind(nodes_[n.kids[0]].slot, Sort::boolean());
        slots_.unite(nodes_[n.kids[1]].slot, nodes_[n.kids[2]].slot);
        slots_.unite(nodes_[n.kids[1]].slot, n.slot);
        break;
      case SymbolShape::BvComp:
        slots_.unite(nodes_[n.kids[0]].slot, nodes_[n.kids[1]].slot);
        slots_.bind(n.slot, Sort::bitvec(1));
        break;
      default:
        deferred_.push_back({id, sh});
        break;
    }
  }

  int atom(const Sexp& e) {
    Node n;
    n.kind = Node::VarNode;
    n.src = &e;
    if (!e.quoted && lctrs()) {
      if (auto v = p_.th().parse_literal(e.text)) {
        n.kind = Node::Lit;
        n.lit = v;
        int id = add(std::move(n));
        slots_.bind(nodes_[id].slot, v->sort());
        return id;
      }
    }
    if (SymbolPtr f = p_.find_symbol(e.text)) {
      if (f->arity() != 0) {
        throw Error(ErrorKind::ArityMismatch, e.text + " expects " + std::to_string(f->arity()) + " arguments");
      }
      n.kind = Node::TermApp;
      n.name = e.text;
      n.sym = f;
      int id = add(std::move(n));
      slots_.bind(nodes_[id].slot, f->result);
      return id;
    }
    if (!e.quoted && lctrs() && p_.th().has_symbol(e.text)) {
      parse_error(e, "theory symbol " + e.text + " used as a constant");
    }
    if (!e.quoted && (std::isdigit(static_cast<unsigned char>(e.text[0])) || e.text[0] == '#')) {
      parse_error(e, "literal " + e.text + " is not a value of the theory");
    }
    n.name = e.text;
    int id = add(std::move(n));
    auto [it, inserted] = var_slot_.emplace(e.text, nodes_[id].slot);
    if (!inserted) slots_.unite(it->second, nodes_[id].slot);
    slots_.name_var(nodes_[id].slot, e.text);
    if (p_.format == Format::TRS) slots_.bind(nodes_[id].slot, trs_sort());
    return id;
  }

  void propagate_deferred() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Deferred& d : deferred_) {
        const Node& n = nodes_[d.node];
        if (slots_.bound(n.slot)) continue;
        std::vector<Sort> args;
        for (int k : n.kids) {
          const auto& b = slots_.bound(nodes_[k].slot);
          if (!b) break;
          args.push_back(*b);
        }
        if (args.size() != n.kids.size()) continue;
        SymbolPtr f = p_.th().instantiate(n.name, n.indices, args);
        slots_.bind(n.slot, f->result);
        changed = true;
      }
    }
  }

  Term build(int id) {
    const Node& n = nodes_[id];
    const auto& s = slots_.bound(n.slot);
    switch (n.kind) {
      case Node::Lit: return Term::value(*n.lit);
      case Node::VarNode:
        if (!s) throw Error(ErrorKind::SortInferenceFailure, "cannot infer the sort of variable " + n.name);
        return Term::var(Var{n.name, *s});
      default: break;
    }
    std::vector<Term> args;
    for (int k : n.kids) args.push_back(build(k));
    if (n.kind == Node::TermApp) return Term::app(n.sym, std::move(args));
    std::vector<Sort> sorts;
    for (const Term& a : args) sorts.push_back(a.sort());
    return Term::app(p_.th().instantiate(n.name, n.indices, sorts), std::move(args));
  }

  /// Reports the first variable-free ambiguity (e.g. a polymorphic symbol
  /// whose argument sorts are never fixed) by naming a variable below it.
  void check_resolved(int id) {
    const Node& n = nodes_[id];
    for (int k : n.kids) check_resolved(k);
    if (!slots_.bound(n.slot)) {
      std::string v = slots_.var_name(n.slot);
      throw Error(ErrorKind::SortInferenceFailure,
                  v.empty() ? "cannot infer the sort of " + n.src->to_string() : "cannot infer the sort of variable " + v);
    }
  }

  void rule(const Sexp& s) {
    if (s.size() < 3) parse_error(s, "rule needs a left- and right-hand side");
    nodes_.clear();
    deferred_.clear();
    var_slot_.clear();
    slots_ = SortSlots();
    int l = expr(s[1]);
    int r = expr(s[2]);
    slots_.unite(nodes_[l].slot, nodes_[r].slot);
    std::optional<int> g;
    for (std::size_t i = 3; i < s.size(); i += 2) {
      if (i + 1 >= s.size()) parse_error(s[i], "missing value for " + s[i].to_string());
      if (s[i].is_atom(":guard") && lctrs()) {
        if (g) parse_error(s[i], "duplicate :guard");
        g = expr(s[i + 1]);
        slots_.bind(nodes_[*g].slot, Sort::boolean());
      } else if (s[i].is_atom(":var")) {
        var_annotations(s[i + 1]);
      } else {
        throw Error(ErrorKind::UnsupportedFeature, "unsupported rule attribute " + s[i].to_string());
      }
    }
    propagate_deferred();
    for (int root : {l, r}) check_resolved(root);
    if (g) check_resolved(*g);
    Term lhs = build(l);
    Term rhs = build(r);
    Term guard = g ? build(*g) : mk_true();
    if (lhs.is_var() || lhs.symbol().is_theory()) {
      throw Error(ErrorKind::IllegalRuleRoot, "left-hand side " + lhs.to_string() + " must be rooted by a term symbol");
    }
    if (!guard.is_logical()) parse_error(s, "guard " + guard.to_string() + " contains a term symbol");
    VarSet lv = vars(lhs);
    auto theory_sorted = [&](const Var& x) { return lctrs() && p_.th().has_sort(x.sort); };
    for (const Var& x : vars(guard)) {
      if (!theory_sorted(x)) throw Error(ErrorKind::SortMismatch, "guard variable " + x.name + " has a non-theory sort");
    }
    for (const Var& x : vars(rhs)) {
      if (!lv.count(x) && !theory_sorted(x)) {
        throw Error(ErrorKind::UnsupportedFeature, "variable " + x.name + " occurs only on the right-hand side");
      }
    }
    p_.rules.emplace_back(lhs, rhs, guard, "r" + std::to_string(p_.rules.size() + 1));
  }

  void var_annotations(const Sexp& s) {
    if (!s.is_list()) parse_error(s, ":var expects a list of (name sort) pairs");
    for (const Sexp& d : s.items) {
      if (!d.is_list() || d.size() != 2 || !d[0].atom) parse_error(d, "malformed variable declaration");
      auto it = var_slot_.find(d[0].text);
      if (it == var_slot_.end()) continue;  // declared but unused
      slots_.bind(it->second, sort_of(d[1]));
    }
  }

  Problem p_;
  std::vector<Node> nodes_;
  std::vector<Deferred> deferred_;
  std::map<std::string, int> var_slot_;
  SortSlots slots_;
};

}  // namespace

Problem parse_problem(std::string_view text) { return Parser().run(text); }

std::vector<Term> parse_terms(const Problem& p, const std::vector<std::string>& texts) {
  return Parser(p).terms(texts);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string sort_text(const Sort& s) { return s.to_string(); }

bool legal_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  const std::string extra = "~!@$%^&*_-+=<>.?/";
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || extra.find(c) != std::string::npos;
  });
}

class Printer {
 public:
  explicit Printer(const Problem& p) : p_(p) {
    for (const SymbolPtr& f : p.signature) reserved_.insert(f->name);
  }

  std::string run() {
    std::ostringstream os;
    for (const std::string& m : p_.meta) os << "; " << m << "\n";
    switch (p_.format) {
      case Format::LCTRS:
        os << "(format LCTRS :smtlib 2.6)\n(theory " << p_.th().name() << ")\n";
        break;
      case Format::TRS: os << "(format TRS)\n"; break;
      case Format::MSTRS: os << "(format MSTRS)\n"; break;
    }
    if (p_.format != Format::TRS) {
      for (const Sort& s : p_.sorts) os << "(sort " << s.name << ")\n";
    }
    for (const SymbolPtr& f : p_.signature) {
      os << "(fun " << f->name << " ";
      if (p_.format == Format::TRS) {
        os << f->arity();
      } else if (f->arity() == 0) {
        os << sort_text(f->result);
      } else {
        os << "(->";
        for (const Sort& s : f->arg_sorts) os << " " << sort_text(s);
        os << " " << sort_text(f->result) << ")";
      }
      os << ")\n";
    }
    for (const Rule& r : p_.rules) os << rule(r) << "\n";
    return os.str();
  }

 private:
  std::string rule(const Rule& r) {
    names_.clear();
    std::set<std::string> used;
    for (const Var& x : vars_in_order_rule(r)) {
      std::string n = x.name;
      if (!legal_identifier(n) || reserved(n)) {
        for (char& c : n) {
          if (!legal_identifier(std::string(1, c)) && !std::isdigit(static_cast<unsigned char>(c))) c = '_';
        }
        if (n.empty() || std::isdigit(static_cast<unsigned char>(n[0]))) n = "v" + n;
      }
      std::string base = n;
      for (int k = 1; used.count(n) || reserved(n); ++k) n = base + "_" + std::to_string(k);
      used.insert(n);
      names_[x] = n;
    }
    std::string s = "(rule " + term(r.lhs) + " " + term(r.rhs);
    if (p_.format == Format::LCTRS && !(r.guard.is_value() && r.guard.symbol().value->as_bool())) {
      s += " :guard " + term(r.guard);
    }
    if (p_.format != Format::TRS && !names_.empty()) {
      s += " :var (";
      bool first = true;
      for (const Var& x : vars_in_order_rule(r)) {
        s += (first ? "(" : " (") + names_[x] + " " + sort_text(x.sort) + ")";
        first = false;
      }
      s += ")";
    }
    return s + ")";
  }

  bool reserved(const std::string& n) const {
    return reserved_.count(n) || (p_.format == Format::LCTRS && (p_.th().has_symbol(n) || p_.th().parse_literal(n)));
  }

  static std::vector<Var> vars_in_order_rule(const Rule& r) {
    std::vector<Var> out;
    for (const Term* t : {&r.lhs, &r.rhs, &r.guard}) {
      for (const Var& x : vars_in_order(*t)) {
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      }
    }
    return out;
  }

  std::string term(const Term& t) {
    if (t.is_var()) return names_.at(t.as_var());
    if (t.is_value()) return t.symbol().value->to_smtlib();
    if (t.args().empty()) return t.symbol().spelling();
    std::string s = "(" + t.symbol().spelling();
    for (const Term& a : t.args()) s += " " + term(a);
    return s + ")";
  }

  const Problem& p_;
  std::set<std::string> reserved_;
  std::map<Var, std::string> names_;
};

}  // namespace

std::string print_problem(const Problem& p) { return Printer(p).run(); }

// ---------------------------------------------------------------------------
// Pre-processing

namespace {

Term move_values(const Term& t, std::vector<Term>& eqs, bool root) {
  if (t.is_var()) return t;
  if (t.is_value() && !root) {
    Term x = Term::var(fresh_var("v", t.sort()));
    eqs.push_back(mk_eq(x, t));
    return x;
  }
  std::vector<Term> args;
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(move_values(a, eqs, false));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.symbol_ptr(), std::move(args)) : t;
}

}  // namespace

Rule move_lhs_values(const Rule& r) {
  std::vector<Term> eqs;
  Term l = move_values(r.lhs, eqs, true);
  if (eqs.empty()) return r;
  std::vector<Term> g = conjuncts(r.guard);
  g.insert(g.end(), eqs.begin(), eqs.end());
  Rule out(l, r.rhs, mk_and(g), r.name);
  out.is_calculation = r.is_calculation;
  return out;
}

Problem preprocess(const Problem& p) {
  Problem q = p;
  for (Rule& r : q.rules) r = move_lhs_values(r);
  q.rules = merge_rules(q.rules);
  return q;
}

}  // namespace lctrs
