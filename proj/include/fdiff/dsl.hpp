#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdiff/classes.hpp"
#include "fdiff/functor.hpp"
#include "fdiff/perm_group.hpp"
#include "fdiff/taut.hpp"

namespace fdiff {

// Functor-expression language.
//
//   expr    := prod ('+' prod)*
//   prod    := comp ('*' comp)*
//   comp    := unit ('o' unit)*
//   unit    := 'X' | 'X^' int | 'X^[' int ']' | 'X^' int '/' group | 'C{' int '}' | int
//            | lattice '^[X]' | lattice '^X' | 'F' | 'P' | 'beta' | 'zeta(' int ')'
//            | 'delta(' expr ')' | 'delta^' int '(' expr ')'
//            | 'species("' path '")' | 'newton("' path '")' | '(' expr ')'
//   group   := 'S' int | '<' [perm (',' perm)*] '>'      perm := '[' int (',' int)* ']'
//   lattice := latom ('x' latom)*     latom := 'chain' int | int '_*' | 'lattice("' path '")'
//
// A bare integer n is shorthand for C{n}. Whitespace is ignored between tokens.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& msg);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct LatticeExpr {
  enum class Kind { Chain, Star, File, Product };
  Kind kind = Kind::Chain;
  std::uint64_t n = 0;
  std::string path;
  std::vector<LatticeExpr> factors;  // Product only, binary, left-nested

  friend bool operator==(const LatticeExpr&, const LatticeExpr&) = default;
};

struct Expr {
  enum class Kind {
    Const,      // n
    Id,
    Power,      // n
    Divided,    // n
    Quot,       // n, group
    Lattice,    // lattice, normalized
    Filter,
    Powerset,
    Ultrafilter,
    Zeta,       // n
    Species,    // path
    Newton,     // path
    Sum,        // args[0] + args[1]
    Prod,
    Compose,    // args[0] after args[1]
    Delta,      // args[0]
    DeltaN,     // n, args[0]
  };
  Kind kind = Kind::Id;
  std::uint64_t n = 0;
  // Quot: symmetric group on the first sym_degree coordinates, or the group generated by perms
  std::optional<std::uint64_t> sym_degree;
  std::vector<Perm> perms;
  LatticeExpr lattice;
  bool normalized = true;
  std::string path;
  std::vector<Expr> args;
  std::size_t offset = 0;  // byte offset in the source; ignored by ==

  friend bool operator==(const Expr& a, const Expr& b);
};

Expr parse_expr(const std::string& text);
std::string print_expr(const Expr& e);

struct CompileOptions {
  TautOptions taut;  // used for the tautness check that precedes every delta
};

struct Compiled {
  FunctorPtr functor;             // built structurally from the expression
  std::optional<ClassSpec> spec;  // closed form in one class, when the expression has one
  std::string text;               // printed expression
};

// ParseError for syntax, std::invalid_argument for semantic errors (bad files, oversize groups),
// NotTautError if a delta argument fails its tautness check
Compiled compile(const Expr& e, const CompileOptions& opt = {});
Compiled compile(const std::string& text, const CompileOptions& opt = {});

Lattice build_lattice(const LatticeExpr& l);

// {"terms": [{"n": 3, "generators": [[1, 2, 0]]}, ...]}: the species sum of S_n / G over the terms
SpeciesSpec species_from_json(const std::string& text);

}  // namespace fdiff
