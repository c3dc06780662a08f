#include "fdiff/dsl.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "fdiff/delta.hpp"
#include "fdiff/newton.hpp"

namespace fdiff {

ParseError::ParseError(std::size_t offset, const std::string& msg)
    : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + msg), offset_(offset) {}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.n == b.n && a.sym_degree == b.sym_degree && a.perms == b.perms &&
         a.lattice == b.lattice && a.normalized == b.normalized && a.path == b.path && a.args == b.args;
}

namespace {

// limits keep every atom small enough to enumerate at desk scale
constexpr std::uint64_t kMaxExponent = 8;
constexpr std::uint64_t kMaxInt = 1u << 20;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = expr();
    ws();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(i_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const { throw ParseError(at, msg); }

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) {
      if (i_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "', found '" + s_[i_] + "'");
    }
  }
  bool eat_word(const std::string& w) {
    ws();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    i_ += w.size();
    return true;
  }
  bool at_digit() {
    ws();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  std::uint64_t integer() {
    ws();
    std::size_t start = i_;
    if (!at_digit()) fail("expected an integer");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[i_] - '0');
      if (v > kMaxInt) fail_at(start, "integer too large");
      ++i_;
    }
    return v;
  }
  std::string quoted() {
    expect('"');
    std::size_t start = i_;
    while (i_ < s_.size() && s_[i_] != '"') ++i_;
    if (i_ >= s_.size()) fail_at(start - 1, "unterminated string");
    std::string out = s_.substr(start, i_ - start);
    ++i_;
    return out;
  }

  Expr binary(Expr::Kind k, Expr a, Expr b, std::size_t at) {
    Expr e;
    e.kind = k;
    e.offset = at;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr expr() {
    Expr e = prod();
    for (;;) {
      ws();
      std::size_t at = i_;
      if (!eat('+')) return e;
      e = binary(Expr::Kind::Sum, std::move(e), prod(), at);
    }
  }
  Expr prod() {
    Expr e = comp();
    for (;;) {
      ws();
      std::size_t at = i_;
      if (!eat('*')) return e;
      e = binary(Expr::Kind::Prod, std::move(e), comp(), at);
    }
  }
  Expr comp() {
    Expr e = unit();
    for (;;) {
      ws();
      std::size_t at = i_;
      // no identifier starts with 'o', so it is always the operator here
      if (!eat('o')) return e;
      e = binary(Expr::Kind::Compose, std::move(e), unit(), at);
    }
  }

  Perm perm(std::size_t n) {
    ws();
    std::size_t at = i_;
    if (!eat('[')) fail("malformed permutation: expected '['");
    Perm p;
    if (!peek(']')) {
      do {
        std::uint64_t v = integer();
        if (v > 255) fail_at(at, "malformed permutation: entry too large");
        p.push_back(static_cast<std::uint8_t>(v));
      } while (eat(','));
    }
    if (!eat(']')) fail("malformed permutation: expected ']'");
    if (p.size() != n)
      fail_at(at, "malformed permutation: " + perm_str(p) + " has " + std::to_string(p.size()) +
                      " entries, expected " + std::to_string(n));
    if (!perm_valid(p)) fail_at(at, "malformed permutation: " + perm_str(p) + " is not a bijection");
    return p;
  }

  void group(Expr& e) {
    ws();
    std::size_t at = i_;
    if (eat('S')) {
      std::uint64_t k = integer();
      if (k == 0 || k > e.n) fail_at(at, "S" + std::to_string(k) + " does not act on " + std::to_string(e.n) + " coordinates");
      e.sym_degree = k;
      return;
    }
    if (!eat('<')) fail("expected a group: 'S' int or '<' permutations '>'");
    if (!peek('>')) {
      do e.perms.push_back(perm(e.n));
      while (eat(','));
    }
    expect('>');
  }

  LatticeExpr latom() {
    ws();
    std::size_t at = i_;
    LatticeExpr l;
    if (eat_word("chain")) {
      l.kind = LatticeExpr::Kind::Chain;
      l.n = integer();
      if (l.n == 0) fail_at(at, "chain0 is not a lattice");
    } else if (eat_word("lattice")) {
      l.kind = LatticeExpr::Kind::File;
      expect('(');
      l.path = quoted();
      expect(')');
    } else if (at_digit()) {
      l.kind = LatticeExpr::Kind::Star;
      l.n = integer();
      if (!eat_word("_*")) fail("expected '_*'");
      if (l.n == 0) fail_at(at, "0_* is not defined");
    } else {
      fail("expected a lattice");
    }
    return l;
  }

  // first lattice atom already read
  Expr lattice_tail(LatticeExpr l, std::size_t at) {
    while (peek('x')) {
      ++i_;
      LatticeExpr p;
      p.kind = LatticeExpr::Kind::Product;
      p.factors = {std::move(l), latom()};
      l = std::move(p);
    }
    Expr e;
    e.kind = Expr::Kind::Lattice;
    e.offset = at;
    e.lattice = std::move(l);
    if (!eat('^')) fail("expected '^[X]' or '^X' after a lattice");
    if (eat('[')) {
      if (!eat('X')) fail("expected 'X'");
      expect(']');
      e.normalized = true;
    } else if (eat('X')) {
      e.normalized = false;
    } else {
      fail("expected '[X]' or 'X' after '^'");
    }
    return e;
  }

  Expr leaf(Expr::Kind k, std::size_t at) {
    Expr e;
    e.kind = k;
    e.offset = at;
    return e;
  }

  Expr unit() {
    ws();
    std::size_t at = i_;
    if (i_ >= s_.size()) fail("expected an expression but input ended");
    if (eat('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (eat_word("delta")) {
      Expr e = leaf(Expr::Kind::Delta, at);
      if (eat('^')) {
        e.kind = Expr::Kind::DeltaN;
        e.n = integer();
      }
      expect('(');
      e.args.push_back(expr());
      expect(')');
      return e;
    }
    if (eat_word("zeta")) {
      Expr e = leaf(Expr::Kind::Zeta, at);
      expect('(');
      e.n = integer();
      expect(')');
      if (e.n == 0) fail_at(at, "zeta(0) is empty; use C{0}");
      return e;
    }
    bool species = eat_word("species");
    if (species || eat_word("newton")) {
      Expr e = leaf(species ? Expr::Kind::Species : Expr::Kind::Newton, at);
      expect('(');
      e.path = quoted();
      expect(')');
      return e;
    }
    if (eat_word("beta")) return leaf(Expr::Kind::Ultrafilter, at);
    if (s_.compare(i_, 5, "chain") == 0 || s_.compare(i_, 7, "lattice") == 0) return lattice_tail(latom(), at);
    if (at_digit()) {
      std::uint64_t v = integer();
      if (eat_word("_*")) {
        if (v == 0) fail_at(at, "0_* is not defined");
        LatticeExpr l;
        l.kind = LatticeExpr::Kind::Star;
        l.n = v;
        return lattice_tail(std::move(l), at);
      }
      Expr e = leaf(Expr::Kind::Const, at);
      e.n = v;
      return e;
    }
    if (eat_word("C{")) {
      Expr e = leaf(Expr::Kind::Const, at);
      e.n = integer();
      expect('}');
      return e;
    }
    if (eat('X')) {
      if (!eat('^')) return leaf(Expr::Kind::Id, at);
      if (eat('[')) {
        Expr e = leaf(Expr::Kind::Divided, at);
        e.n = integer();
        expect(']');
        if (e.n > kMaxExponent) fail_at(at, "exponent above " + std::to_string(kMaxExponent));
        return e;
      }
      Expr e = leaf(Expr::Kind::Power, at);
      e.n = integer();
      if (e.n > kMaxExponent) fail_at(at, "exponent above " + std::to_string(kMaxExponent));
      if (eat('/')) {
        e.kind = Expr::Kind::Quot;
        group(e);
      }
      return e;
    }
    if (eat('F')) return leaf(Expr::Kind::Filter, at);
    if (eat('P')) return leaf(Expr::Kind::Powerset, at);
    if (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      fail("unknown identifier '" + s_.substr(i_, j - i_) + "'");
    }
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }
};

std::string print_lattice(const LatticeExpr& l) {
  switch (l.kind) {
    case LatticeExpr::Kind::Chain: return "chain" + std::to_string(l.n);
    case LatticeExpr::Kind::Star: return std::to_string(l.n) + "_*";
    case LatticeExpr::Kind::File: return "lattice(\"" + l.path + "\")";
    case LatticeExpr::Kind::Product: return print_lattice(l.factors[0]) + " x " + print_lattice(l.factors[1]);
  }
  return "";
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Sum: return 1;
    case Expr::Kind::Prod: return 2;
    case Expr::Kind::Compose: return 3;
    default: return 4;
  }
}

std::string print_at(const Expr& e, int min_prec) {
  std::string s;
  switch (e.kind) {
    case Expr::Kind::Const: s = "C{" + std::to_string(e.n) + "}"; break;
    case Expr::Kind::Id: s = "X"; break;
    case Expr::Kind::Power: s = "X^" + std::to_string(e.n); break;
    case Expr::Kind::Divided: s = "X^[" + std::to_string(e.n) + "]"; break;
    case Expr::Kind::Quot: {
      s = "X^" + std::to_string(e.n) + "/";
      if (e.sym_degree) {
        s += "S" + std::to_string(*e.sym_degree);
      } else {
        s += "<";
        for (std::size_t i = 0; i < e.perms.size(); ++i) {
          if (i) s += ",";
          s += "[";
          for (std::size_t j = 0; j < e.perms[i].size(); ++j) s += (j ? "," : "") + std::to_string(e.perms[i][j]);
          s += "]";
        }
        s += ">";
      }
      break;
    }
    case Expr::Kind::Lattice: s = print_lattice(e.lattice) + (e.normalized ? "^[X]" : "^X"); break;
    case Expr::Kind::Filter: s = "F"; break;
    case Expr::Kind::Powerset: s = "P"; break;
    case Expr::Kind::Ultrafilter: s = "beta"; break;
    case Expr::Kind::Zeta: s = "zeta(" + std::to_string(e.n) + ")"; break;
    case Expr::Kind::Species: s = "species(\"" + e.path + "\")"; break;
    case Expr::Kind::Newton: s = "newton(\"" + e.path + "\")"; break;
    case Expr::Kind::Delta: s = "delta(" + print_at(e.args[0], 0) + ")"; break;
    case Expr::Kind::DeltaN: s = "delta^" + std::to_string(e.n) + "(" + print_at(e.args[0], 0) + ")"; break;
    case Expr::Kind::Sum:
    case Expr::Kind::Prod:
    case Expr::Kind::Compose: {
      int p = precedence(e.kind);
      const char* op = e.kind == Expr::Kind::Sum ? " + " : e.kind == Expr::Kind::Prod ? " * " : " o ";
      s = print_at(e.args[0], p) + op + print_at(e.args[1], p + 1);
      break;
    }
  }
  return precedence(e.kind) < min_prec ? "(" + s + ")" : s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------- closed-form bookkeeping ----------------

bool all_constant(const PolySpec& p) {
  for (auto e : p.exponents)
    if (e != 0) return false;
  return true;
}

std::optional<QuotPowerSpec> as_quot(const ClassSpec& s) {
  if (auto* q = std::get_if<QuotPowerSpec>(&s)) return *q;
  if (auto* p = std::get_if<PolySpec>(&s)) {
    QuotPowerSpec q;
    for (auto e : p->exponents) {
      if (e > PermGroup::kDefaultMaxDegree) return std::nullopt;
      q.terms.push_back({e, PermGroup::trivial(e)});
    }
    return q;
  }
  return std::nullopt;
}

std::optional<SpeciesSpec> as_species(const ClassSpec& s) {
  if (auto* sp = std::get_if<SpeciesSpec>(&s)) return *sp;
  auto q = as_quot(s);
  if (!q) return std::nullopt;
  SpeciesSpec out;
  for (const auto& [n, g] : q->terms) out = species_sum(out, species_cosets(n, g));
  return out;
}

std::optional<DirichletSpec> as_dirichlet(const ClassSpec& s) {
  if (auto* d = std::get_if<DirichletSpec>(&s)) return *d;
  if (auto* p = std::get_if<PolySpec>(&s); p && all_constant(*p)) {
    DirichletSpec d;
    if (!p->exponents.empty()) d.terms.push_back({FinSet::range(p->exponents.size()), Lattice::chain(1), true});
    return d;
  }
  return std::nullopt;
}

int class_rank(const ClassSpec& s) {
  if (std::holds_alternative<PolySpec>(s)) return 0;
  if (std::holds_alternative<QuotPowerSpec>(s)) return 1;
  if (std::holds_alternative<SpeciesSpec>(s)) return 2;
  return 3;
}

std::optional<ClassSpec> spec_sum(const ClassSpec& a, const ClassSpec& b) {
  if (auto *x = std::get_if<PolySpec>(&a), *y = std::get_if<PolySpec>(&b); x && y) {
    PolySpec p = *x;
    p.exponents.insert(p.exponents.end(), y->exponents.begin(), y->exponents.end());
    return p;
  }
  if (std::holds_alternative<DirichletSpec>(a) || std::holds_alternative<DirichletSpec>(b)) {
    auto x = as_dirichlet(a), y = as_dirichlet(b);
    if (!x || !y) return std::nullopt;
    x->terms.insert(x->terms.end(), y->terms.begin(), y->terms.end());
    return *x;
  }
  int r = std::max(class_rank(a), class_rank(b));
  if (r == 1) {
    auto x = as_quot(a), y = as_quot(b);
    if (!x || !y) return std::nullopt;
    x->terms.insert(x->terms.end(), y->terms.begin(), y->terms.end());
    return *x;
  }
  if (r == 2) {
    auto x = as_species(a), y = as_species(b);
    if (!x || !y) return std::nullopt;
    return species_sum(*x, *y);
  }
  return std::nullopt;
}

std::optional<ClassSpec> spec_product(const ClassSpec& a, const ClassSpec& b) {
  if (auto *x = std::get_if<PolySpec>(&a), *y = std::get_if<PolySpec>(&b); x && y) {
    PolySpec p;
    for (auto i : x->exponents)
      for (auto j : y->exponents) p.exponents.push_back(i + j);
    return p;
  }
  if (std::holds_alternative<DirichletSpec>(a) || std::holds_alternative<DirichletSpec>(b)) {
    auto x = as_dirichlet(a), y = as_dirichlet(b);
    if (!x || !y) return std::nullopt;
    // L^[X] x M^[X] = (L x M)^[X], and likewise for full exponentials
    DirichletSpec d;
    for (const auto& s : x->terms)
      for (const auto& t : y->terms) {
        if (s.normalized != t.normalized && s.lattice.size() > 1 && t.lattice.size() > 1) return std::nullopt;
        // a one-point lattice gives the constant 1 either way
        bool norm = s.lattice.size() == 1 ? t.normalized : s.normalized;
        Lattice l = s.lattice.size() == 1 ? t.lattice
                    : t.lattice.size() == 1
                        ? s.lattice
                        : Lattice::product_of({s.lattice, t.lattice}, s.lattice.name() + " x " + t.lattice.name());
        d.terms.push_back({FinSet::range(s.coeff.size() * t.coeff.size()), l, norm});
      }
    return d;
  }
  if (class_rank(a) <= 1 && class_rank(b) <= 1) {
    auto x = as_quot(a), y = as_quot(b);
    if (!x || !y) return std::nullopt;
    QuotPowerSpec q;
    for (const auto& [n, g] : x->terms)
      for (const auto& [m, h] : y->terms) {
        if (n + m > PermGroup::kDefaultMaxDegree) return std::nullopt;
        q.terms.push_back({n + m, PermGroup::direct_product(g, h)});
      }
    return q;
  }
  return std::nullopt;
}

bool is_identity_spec(const ClassSpec& s) {
  auto* p = std::get_if<PolySpec>(&s);
  return p && p->exponents == std::vector<std::size_t>{1};
}

FunctorPtr ensure_taut(const FunctorPtr& f, const CompileOptions& opt) {
  if (f->certified()) return f;
  Report r = check_taut(f, opt.taut);
  if (!r.passed()) throw NotTautError("delta: " + f->name() + " is not taut: " + r.first_witness());
  return f;
}

Compiled compile_node(const Expr& e, const CompileOptions& opt) {
  Compiled c;
  c.text = print_expr(e);
  auto leaf = [&](ClassSpec s) {
    c.spec = s;
    c.functor = realize(s);
  };
  switch (e.kind) {
    case Expr::Kind::Const: leaf(PolySpec{std::vector<std::size_t>(e.n, 0)}); break;
    case Expr::Kind::Id: leaf(PolySpec{{1}}); break;
    case Expr::Kind::Power: leaf(PolySpec{{e.n}}); break;
    case Expr::Kind::Divided: leaf(divided_power(e.n)); break;
    case Expr::Kind::Quot: {
      PermGroup g = e.sym_degree ? PermGroup::direct_product(PermGroup::symmetric(*e.sym_degree),
                                                            PermGroup::trivial(e.n - *e.sym_degree))
                                 : PermGroup(e.n, e.perms);
      leaf(QuotPowerSpec{{{e.n, g}}});
      break;
    }
    case Expr::Kind::Lattice: leaf(DirichletSpec{{{FinSet::range(1), build_lattice(e.lattice), e.normalized}}}); break;
    case Expr::Kind::Filter: leaf(MonadSpec{MonadKind::Filter}); break;
    case Expr::Kind::Powerset: leaf(MonadSpec{MonadKind::Powerset}); break;
    case Expr::Kind::Ultrafilter: leaf(MonadSpec{MonadKind::Ultrafilter}); break;
    case Expr::Kind::Zeta: leaf(zeta_spec(e.n)); break;
    case Expr::Kind::Species: leaf(species_from_json(read_file(e.path))); break;
    case Expr::Kind::Newton: c.functor = newton_sum(soft_species_from_json(read_file(e.path))); break;
    case Expr::Kind::Sum:
    case Expr::Kind::Prod:
    case Expr::Kind::Compose: {
      Compiled a = compile_node(e.args[0], opt), b = compile_node(e.args[1], opt);
      if (e.kind == Expr::Kind::Sum) {
        c.functor = sum({a.functor, b.functor}, c.text);
        if (a.spec && b.spec) c.spec = spec_sum(*a.spec, *b.spec);
      } else if (e.kind == Expr::Kind::Prod) {
        c.functor = product({a.functor, b.functor}, c.text);
        if (a.spec && b.spec) c.spec = spec_product(*a.spec, *b.spec);
      } else {
        c.functor = compose(a.functor, b.functor);
        if (a.spec && is_identity_spec(*a.spec)) c.spec = b.spec;
        else if (b.spec && is_identity_spec(*b.spec)) c.spec = a.spec;
      }
      break;
    }
    case Expr::Kind::Delta:
    case Expr::Kind::DeltaN: {
      Compiled a = compile_node(e.args[0], opt);
      std::size_t times = e.kind == Expr::Kind::Delta ? 1 : e.n;
      c.functor = iterated(ensure_taut(a.functor, opt), times);
      c.spec = a.spec;
      for (std::size_t i = 0; i < times && c.spec; ++i) {
        try {
          c.spec = symbolic_delta(*c.spec).spec;
        } catch (const std::exception&) {
          c.spec.reset();
        }
      }
      break;
    }
  }
  return c;
}

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).run(); }

std::string print_expr(const Expr& e) { return print_at(e, 0); }

Lattice build_lattice(const LatticeExpr& l) {
  switch (l.kind) {
    case LatticeExpr::Kind::Chain: {
      Lattice c = Lattice::chain(l.n);
      c.rename("chain" + std::to_string(l.n));
      return c;
    }
    case LatticeExpr::Kind::Star: return n_star(l.n);
    case LatticeExpr::Kind::File: return lattice_from_json(read_file(l.path));
    case LatticeExpr::Kind::Product:
      return Lattice::product_of({build_lattice(l.factors[0]), build_lattice(l.factors[1])}, print_lattice(l));
  }
  return {};
}

Compiled compile(const Expr& e, const CompileOptions& opt) { return compile_node(e, opt); }

Compiled compile(const std::string& text, const CompileOptions& opt) { return compile(parse_expr(text), opt); }

SpeciesSpec species_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("species file: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("species file: expected {\"terms\": [...]}");
  SpeciesSpec s;
  for (const auto& t : j["terms"]) {
    if (!t.contains("n") || !t["n"].is_number_unsigned()) throw std::invalid_argument("species file: term without n");
    auto n = t["n"].get<std::size_t>();
    std::vector<Perm> gens;
    if (t.contains("generators"))
      for (const auto& g : t["generators"]) {
        Perm p;
        for (const auto& v : g) p.push_back(static_cast<std::uint8_t>(v.get<unsigned>()));
        gens.push_back(p);
      }
    s = species_sum(s, species_cosets(n, PermGroup(n, gens)));
  }
  return s;
}

}  // namespace fdiff
