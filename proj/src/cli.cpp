#include "fdiff/cli.hpp"

#include <fstream>
#include <sstream>

#include "fdiff/chain.hpp"
#include "fdiff/classes.hpp"
#include "fdiff/delta.hpp"
#include "fdiff/diagram.hpp"
#include "fdiff/dsl.hpp"
#include "fdiff/library.hpp"
#include "fdiff/newton.hpp"

namespace fdiff {

namespace {

using ojson = nlohmann::ordered_json;

TautOptions taut_options(const Settings& s, int default_k) {
  TautOptions opt;
  opt.K = s.K.value_or(default_k);
  opt.seed = s.seed;
  return opt;
}

Compiled compile_arg(const std::string& text, const Settings& s) {
  CompileOptions co;
  co.taut = taut_options(s, 3);
  return compile(text, co);
}

FunctorPtr taut_functor(const std::string& text, const Settings& s) {
  FunctorPtr f = compile_arg(text, s).functor;
  if (!f->certified()) {
    Report r = check_taut(f, taut_options(s, 3));
    if (!r.passed()) throw NotTautError(text + " is not taut: " + r.first_witness());
  }
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t size_at(const FunctorPtr& f, std::size_t k) { return f->eval(test_set(k)).size(); }

CommandResult start(const std::string& command, const Settings& s) {
  CommandResult r;
  r.command = command;
  r.report = Report(command);
  r.report.param("seed", std::to_string(s.seed));
  return r;
}

// ---------------- verify suites ----------------

void suite_taut(const VerifyArgs& a, const Settings& s, CommandResult& out) {
  TautOptions opt = taut_options(s, 3);
  std::vector<std::pair<std::string, FunctorPtr>> fs;
  if (a.expr) {
    fs.emplace_back(*a.expr, compile_arg(*a.expr, s).functor);
  } else {
    for (const auto& ns : class_library()) fs.emplace_back(ns.name, realize(ns.spec));
  }
  for (const auto& [name, f] : fs) {
    Stopwatch sw;
    Report r = check_taut(f, opt);
    r.set_millis(sw.millis());
    out.rows.push_back(ojson{{"functor", name}, {"passed", r.passed()}});
    out.report.add(std::move(r));
  }
}

void suite_product_rule(const VerifyArgs& a, const Settings& s, CommandResult& out) {
  int K = s.K.value_or(3);
  std::vector<std::string> names{a.f.value_or("X"), a.g.value_or("X")};
  if (a.h) names.push_back(*a.h);
  std::vector<FunctorPtr> fs;
  for (const auto& n : names) fs.push_back(taut_functor(n, s));
  out.params["factors"] = names;
  if (fs.size() == 2) out.report.add(product_rule_check(fs[0], fs[1], K));
  out.report.add(finite_product_rule_check(fs, K));
  auto prod = product(fs);
  Report tr = check_taut(prod, taut_options(s, 3));
  out.report.add(tr);
  if (!tr.passed()) return;
  auto lhs = delta(prod);
  auto rhs = product_rule_rhs(fs);
  for (int k = 0; k <= a.maxk; ++k)
    out.rows.push_back(ojson{{"k", k}, {"delta_of_product", size_at(lhs, static_cast<std::size_t>(k))},
                             {"sum_over_proper_subsets", size_at(rhs, static_cast<std::size_t>(k))}});
}

void suite_chain_rule(const VerifyArgs& a, const Settings& s, CommandResult& out) {
  ChainArgs c;
  c.f = a.f.value_or("X^2");
  c.g = a.g.value_or("X^2");
  c.h = a.h;
  c.kmax = a.maxk;
  CommandResult r = cmd_chain(c, s);
  out.params = r.params;
  out.rows = r.rows;
  for (const auto& ch : r.report.children()) out.report.add(ch);
}

void suite_confluence(const Settings& s, CommandResult& out) {
  for (const auto& c : FinCat::library()) {
    bool conf = is_confluent(c);
    Report r = check_colimit_commutes_with_inverse_images(c, 30, s.seed);
    r.param("shape", c.name());
    ojson row{{"shape", c.name()}, {"objects", c.objects()}, {"morphisms", c.morphisms()}, {"confluent", conf}};
    if (auto span = confluence_failure(c)) {
      auto ce = span_counterexample(c, span->first, span->second);
      row["colim_of_inverse_image"] = ce.colim_phi0;
      row["inverse_image_of_colim"] = ce.inverse_of_colim;
    }
    row["passed"] = r.passed();
    out.rows.push_back(row);
    out.report.add(std::move(r));
  }
}

void suite_newton_roundtrip(const VerifyArgs& a, const Settings& s, CommandResult& out) {
  NewtonArgs n;
  n.N = a.N;
  if (a.species) n.sum_file = a.species;
  else n.roundtrip = a.expr.value_or("X^2");
  CommandResult r = cmd_newton(n, s);
  out.params = r.params;
  out.rows = r.rows;
  for (const auto& ch : r.report.children()) out.report.add(ch);
}

void suite_dirichlet(const Settings& s, CommandResult& out) {
  int K = s.K.value_or(3);
  std::vector<Lattice> small{Lattice::chain(1), Lattice::chain(2), Lattice::chain(3), Lattice::chain(4),
                             Lattice::boolean(2)};
  for (std::size_t i = 0; i < 4; ++i) small[i].rename("chain" + std::to_string(i + 1));
  Report rt("reconstruction round trip phi -> t_phi -> phi");
  std::size_t maps = 0, ok = 0;
  for (const auto& l : small)
    for (const auto& m : small)
      for (const auto& phi : top_preserving_sup_maps(l, m)) {
        ++maps;
        auto rec = reconstruct_phi(lattice_map_transf(l, m, phi), l, m, K);
        if (rec.phi && *rec.phi == phi) ++ok;
        else rt.witness(l.name() + " -> " + m.name() + ": map not recovered");
      }
  rt.param("lattices", static_cast<std::int64_t>(small.size())).param("maps", static_cast<std::int64_t>(maps));
  rt.check("every top-preserving sup-map recovered", ok == maps, std::to_string(ok) + "/" + std::to_string(maps));
  out.rows.push_back(ojson{{"check", "reconstruction"}, {"cases", maps}, {"passed", rt.passed()}});
  out.report.add(std::move(rt));

  for (std::size_t n = 1; n <= 4; ++n) {
    Lattice c = Lattice::chain(n);
    c.rename("chain" + std::to_string(n));
    Report r = verify_symbolic_delta(DirichletSpec{{{FinSet::range(1), c, true}}}, K);
    out.rows.push_back(ojson{{"check", "delta of chain" + std::to_string(n) + "^[X]"}, {"cases", 1}, {"passed", r.passed()}});
    out.report.add(std::move(r));
  }
  Report e = euler_check({2, 3}, 12, K);
  out.rows.push_back(ojson{{"check", "euler product {2,3} up to 12"}, {"cases", 1}, {"passed", e.passed()}});
  out.report.add(std::move(e));
}

void suite_monads(const Settings& s, CommandResult& out) {
  for (const auto& m : {filter_monad(), powerset_monad()}) {
    Report laws = monad_laws(m, taut_options(s, 3));
    // |A| = 3 makes T(T(A+1)) far too large to tabulate
    Report d = d_monad_laws(m, std::min(s.K.value_or(2), 2));
    out.rows.push_back(ojson{{"monad", m.name}, {"laws", laws.passed()}, {"pair_monad_laws", d.passed()}});
    out.report.add(std::move(laws));
    out.report.add(std::move(d));
  }
}

// ---------------- output ----------------

std::string cell(const ojson& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_array() || v.is_object()) return cell(ojson(v.dump()));
  return v.dump();
}

}  // namespace

CommandResult cmd_eval(const std::string& expr, const std::vector<std::size_t>& sizes, bool elements,
                       const Settings& s) {
  CommandResult out = start("eval", s);
  Compiled c = compile_arg(expr, s);
  out.params["expr"] = c.text;
  out.params["sizes"] = sizes;
  for (auto k : sizes) {
    FinSet v = c.functor->eval(test_set(k));
    ojson row{{"k", k}, {"size", v.size()}};
    if (elements) {
      ojson els = ojson::array();
      for (const auto& e : v) els.push_back(e.str());
      row["elements"] = els;
    }
    out.rows.push_back(row);
  }
  return out;
}

CommandResult cmd_table(const std::string& expr, int maxk, const Settings& s) {
  if (maxk < 0) throw UsageError("--maxk must be non-negative");
  CommandResult out = start("table", s);
  Compiled c = compile_arg(expr, s);
  out.params["expr"] = c.text;
  out.params["maxk"] = maxk;
  if (c.spec) {
    out.params["class"] = class_name(*c.spec);
    out.params["closed_form"] = describe(*c.spec);
    try {
      auto sd = symbolic_delta(*c.spec);
      out.params["delta_closed_form"] = describe(sd.spec);
    } catch (const std::exception& e) {
      out.report.note(std::string("no closed-form delta: ") + e.what());
    }
  }
  std::size_t prev = size_at(c.functor, 0);
  for (int k = 0; k <= maxk; ++k) {
    std::size_t next = size_at(c.functor, static_cast<std::size_t>(k) + 1);
    out.rows.push_back(ojson{{"k", k}, {"size", prev}, {"difference", next - prev}});
    prev = next;
  }
  return out;
}

CommandResult cmd_delta(const std::string& expr, const Settings& s) {
  CommandResult out = start("delta", s);
  int K = s.K.value_or(4);
  Compiled c = compile_arg(expr, s);
  FunctorPtr f = taut_functor(expr, s);
  out.params["expr"] = c.text;
  out.params["K"] = K;
  FunctorPtr df = delta(f);
  FunctorPtr closed;
  if (c.spec) {
    try {
      auto sd = symbolic_delta(*c.spec);
      out.params["class"] = class_name(*c.spec);
      out.params["closed_form"] = describe(sd.spec);
      out.params["formula"] = sd.formula;
      closed = realize(sd.spec);
      out.report.add(verify_symbolic_delta(*c.spec, K));
    } catch (const std::invalid_argument& e) {
      out.report.note(std::string("no closed form: ") + e.what());
    }
  } else {
    out.report.note("no closed form for this expression; operational delta only");
  }
  out.report.add(counting_law(f, 5));
  out.report.add(coproduct_law(f, K));
  for (int k = 0; k <= K; ++k) {
    auto ku = static_cast<std::size_t>(k);
    ojson row{{"k", k}, {"size", size_at(f, ku)}, {"delta", size_at(df, ku)}};
    if (closed) row["closed_form"] = size_at(closed, ku);
    out.rows.push_back(row);
  }
  return out;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"taut",           "product-rule", "chain-rule", "confluence",
                                              "newton-roundtrip", "dirichlet",  "monads"};
  return names;
}

CommandResult cmd_verify(const VerifyArgs& a, const Settings& s) {
  CommandResult out = start("verify", s);
  out.report = Report("verify " + a.suite);
  out.report.param("seed", std::to_string(s.seed));
  out.params["suite"] = a.suite;
  out.params["seed"] = s.seed;
  if (a.suite == "taut") suite_taut(a, s, out);
  else if (a.suite == "product-rule") suite_product_rule(a, s, out);
  else if (a.suite == "chain-rule") suite_chain_rule(a, s, out);
  else if (a.suite == "confluence") suite_confluence(s, out);
  else if (a.suite == "newton-roundtrip") suite_newton_roundtrip(a, s, out);
  else if (a.suite == "dirichlet") suite_dirichlet(s, out);
  else if (a.suite == "monads") suite_monads(s, out);
  else throw UsageError("unknown suite '" + a.suite + "'");
  out.params["suite"] = a.suite;
  out.params["seed"] = s.seed;
  return out;
}

CommandResult cmd_newton(const NewtonArgs& a, const Settings& s) {
  CommandResult out = start("newton", s);
  int K = s.K.value_or(4);
  int modes = (a.sum_file ? 1 : 0) + (a.delta_star ? 1 : 0) + (a.roundtrip ? 1 : 0);
  if (modes != 1) throw UsageError("newton: give exactly one of --sum, --delta-star, --roundtrip");
  if (a.sum_file) {
    SoftSpecies g;
    try {
      g = soft_species_from_json(read_file(*a.sum_file));
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    auto gt = newton_sum(g);
    out.params["species"] = g.describe();
    out.params["file"] = *a.sum_file;
    for (int k = 0; k <= a.maxk; ++k) out.rows.push_back(ojson{{"k", k}, {"size", size_at(gt, static_cast<std::size_t>(k))}});
    out.report.add(check_taut(gt, taut_options(s, 3)));
    out.report.add(unit_iso_check(g));
    return out;
  }
  const std::string& expr = a.delta_star ? *a.delta_star : *a.roundtrip;
  FunctorPtr f = taut_functor(expr, s);
  out.params["expr"] = print_expr(parse_expr(expr));
  out.params["N"] = a.N;
  SoftSpecies g = delta_star(f, a.N);
  out.params["species"] = g.describe();
  Report sizes("delta* degrees against delta^n[F](0)");
  for (std::size_t n = 0; n <= a.N; ++n) {
    std::size_t direct = iterated(f, n)->eval(FinSet()).size();
    sizes.check("degree " + std::to_string(n), g.at(n).size() == direct,
                std::to_string(g.at(n).size()) + " vs " + std::to_string(direct));
    out.rows.push_back(ojson{{"n", n}, {"size", g.at(n).size()}});
  }
  out.report.add(std::move(sizes));
  if (a.roundtrip) {
    out.params["K"] = K;
    out.report.add(counit_iso_check(f, a.N, K));
    out.report.add(unit_iso_check(g));
  }
  return out;
}

CommandResult cmd_chain(const ChainArgs& a, const Settings& s) {
  CommandResult out = start("chain", s);
  FunctorPtr f = taut_functor(a.f, s), g = taut_functor(a.g, s);
  out.params["F"] = print_expr(parse_expr(a.f));
  out.params["G"] = print_expr(parse_expr(a.g));
  ChainComparison cmp = chain_rule_comparison(f, g, a.kmax);
  out.params["source_polynomial"] = poly_string(cmp.lhs_coeffs);
  out.params["target_polynomial"] = poly_string(cmp.rhs_coeffs);
  out.params["source_coefficients"] = cmp.lhs_coeffs;
  out.params["target_coefficients"] = cmp.rhs_coeffs;
  for (std::size_t k = 0; k < cmp.lhs_counts.size(); ++k)
    out.rows.push_back(ojson{{"k", k}, {"source", cmp.lhs_counts[k]}, {"target", cmp.rhs_counts[k]}});
  out.report.add(cmp.report);
  out.report.add(gamma_check(gamma(f, g), taut_options(s, 3)));
  out.report.add(gamma_unit_checks(f, 2));
  if (a.h) out.report.add(gamma_associativity_check(f, g, taut_functor(*a.h, s), 2));
  if (a.tangent) out.report.add(tangent_monoidal_check(f, g, 2));
  if (a.splitting) out.report.add(splitting_search(*a.splitting));
  return out;
}

int exit_code(const CommandResult& r) { return r.report.passed() ? 0 : 1; }

ojson report_json(const Report& r, bool timing) {
  ojson j;
  j["name"] = r.name();
  j["passed"] = r.passed();
  ojson params = ojson::object();
  for (const auto& [k, v] : r.params()) params[k] = v;
  j["params"] = params;
  ojson checks = ojson::array();
  for (const auto& c : r.checks()) checks.push_back(ojson{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["witnesses"] = r.witnesses();
  j["notes"] = r.notes();
  if (timing) j["millis"] = r.millis();
  ojson kids = ojson::array();
  for (const auto& c : r.children()) kids.push_back(report_json(c, timing));
  j["children"] = kids;
  return j;
}

ojson to_json(const CommandResult& r, bool timing) {
  ojson j;
  j["command"] = r.command;
  j["params"] = r.params;
  j["rows"] = r.rows;
  j["report"] = report_json(r.report, timing);
  return j;
}

std::string to_csv(const CommandResult& r) {
  std::vector<std::string> cols;
  for (const auto& row : r.rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (row.contains(cols[i])) out += cell(row[cols[i]]);
    }
    out += "\n";
  }
  return out;
}

std::string to_text(const CommandResult& r, bool timing) {
  std::string out;
  for (const auto& [k, v] : r.params.items()) out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  if (!r.rows.empty()) out += "\n" + to_csv(r) + "\n";
  out += r.report.text();
  if (timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "time: %.1f ms\n", r.report.millis());
    out += buf;
  }
  return out;
}

}  // namespace fdiff
