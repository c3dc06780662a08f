// fdiff: evaluate functor expressions, tabulate differences, run verification suites.
#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "fdiff/cli.hpp"
#include "fdiff/delta.hpp"
#include "fdiff/dsl.hpp"
#include "fdiff/report.hpp"

using namespace fdiff;

namespace {

std::string env_name(std::string key) {
  key.erase(0, key.find_first_not_of('-'));
  for (auto& c : key) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return "FDIFF_" + key;
}

// Values from fdiff.toml become environment defaults; variables already set win, flags win over both.
void load_config(const std::string& path) {
  if (!std::filesystem::exists(path)) return;
  for (const auto& item : CLI::ConfigTOML().from_file(path)) {
    if (item.inputs.empty() || item.name == "++" || item.name == "--") continue;
    std::string value = item.inputs.front();
    for (std::size_t i = 1; i < item.inputs.size(); ++i) value += "," + item.inputs[i];
    setenv(env_name(item.name).c_str(), value.c_str(), 0);
  }
}

template <class T>
CLI::Option* opt(CLI::App* app, const std::string& names, T& var, const std::string& desc) {
  auto* o = app->add_option(names, var, desc);
  o->envname(env_name(o->get_single_name()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    load_config("fdiff.toml");
  } catch (const std::exception& e) {
    std::cerr << "error: fdiff.toml: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"fdiff: difference operators on finite-set functors"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string seed_text = "0xD1FF", format = "text";
  std::optional<int> K;
  bool timing = false;
  opt(&app, "--seed", seed_text, "seed for every sampled check (decimal or 0x hex)")->capture_default_str();
  opt(&app, "-K", K, "largest test set size");
  opt(&app, "--format", format, "output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
  app.add_flag("--timing", timing, "include timings in the output")->envname("FDIFF_TIMING");

  // eval
  auto* eval = app.add_subcommand("eval", "sizes of F(k), optionally with elements");
  std::string eval_expr;
  std::vector<std::size_t> sizes{0, 1, 2, 3};
  bool elements = false;
  eval->add_option("expr", eval_expr, "functor expression")->required();
  opt(eval, "--sizes", sizes, "test set sizes")->delimiter(',')->capture_default_str();
  eval->add_flag("--elements", elements, "list the elements");

  // table
  auto* table = app.add_subcommand("table", "|F(k)| and |F(k+1)| - |F(k)| for k = 0..maxk");
  std::string table_expr;
  int maxk = 5;
  table->add_option("expr", table_expr, "functor expression")->required();
  opt(table, "--maxk", maxk, "largest k")->capture_default_str();

  // delta
  auto* del = app.add_subcommand("delta", "closed form and verification of delta[F]");
  std::string delta_expr;
  del->add_option("expr", delta_expr, "functor expression")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  VerifyArgs va;
  std::optional<std::string> vf, vg, vh, vexpr, vspecies;
  verify->add_option("suite", va.suite, "suite name")->required()->check(CLI::IsMember(verify_suites()));
  verify->add_option("--F", vf, "first functor expression");
  verify->add_option("--G", vg, "second functor expression");
  verify->add_option("--H", vh, "third functor expression");
  verify->add_option("--expr", vexpr, "functor expression");
  verify->add_option("--species", vspecies, "soft species JSON file");
  opt(verify, "-N", va.N, "degree bound for soft species")->capture_default_str();
  verify->add_option("--maxk", va.maxk, "largest k in tables")->capture_default_str();

  // newton
  auto* newton = app.add_subcommand("newton", "Newton sums and iterated differences at zero");
  NewtonArgs na;
  std::optional<std::string> nsum, nstar, nround;
  auto* o_sum = newton->add_option("--sum", nsum, "soft species JSON file: tabulate its Newton sum");
  auto* o_star = newton->add_option("--delta-star", nstar, "expression: its soft species of differences at zero");
  auto* o_round = newton->add_option("--roundtrip", nround, "expression: unit and counit isomorphisms");
  o_sum->excludes(o_star)->excludes(o_round);
  o_star->excludes(o_round);
  opt(newton, "-N", na.N, "degree bound")->capture_default_str();
  newton->add_option("--maxk", na.maxk, "largest k for --sum")->capture_default_str();

  // chain
  auto* chain = app.add_subcommand("chain", "chain-rule comparison map and its laws");
  ChainArgs ca;
  std::optional<std::string> ch;
  std::optional<std::size_t> splitting;
  chain->add_option("--F", ca.f, "inner functor")->capture_default_str();
  chain->add_option("--G", ca.g, "outer functor")->capture_default_str();
  chain->add_option("--H", ch, "third functor for associativity");
  chain->add_option("--kmax", ca.kmax, "largest k for the counts")->capture_default_str();
  chain->add_option("--splitting", splitting, "search natural splittings for G = X^n");
  chain->add_flag("--tangent", ca.tangent, "check the pair functor composite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Settings s;
  try {
    std::size_t used = 0;
    s.seed = std::stoull(seed_text, &used, 0);
    if (used != seed_text.size()) throw std::invalid_argument(seed_text);
  } catch (const std::exception&) {
    std::cerr << "error: --seed expects an integer, got '" << seed_text << "'\n";
    return 2;
  }
  s.K = K;
  s.timing = timing;
  if (K && (*K < 0 || *K > 6)) {
    std::cerr << "error: -K must lie in 0..6\n";
    return 2;
  }

  CommandResult result;
  Stopwatch sw;
  try {
    if (*eval) {
      result = cmd_eval(eval_expr, sizes, elements, s);
    } else if (*table) {
      result = cmd_table(table_expr, maxk, s);
    } else if (*del) {
      result = cmd_delta(delta_expr, s);
    } else if (*verify) {
      va.f = vf;
      va.g = vg;
      va.h = vh;
      va.expr = vexpr;
      va.species = vspecies;
      result = cmd_verify(va, s);
    } else if (*newton) {
      na.sum_file = nsum;
      na.delta_star = nstar;
      na.roundtrip = nround;
      result = cmd_newton(na, s);
    } else if (*chain) {
      ca.h = ch;
      ca.splitting = splitting;
      result = cmd_chain(ca, s);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotTautError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  result.report.set_millis(sw.millis());

  if (format == "json") std::cout << to_json(result, timing).dump(2) << "\n";
  else if (format == "csv") std::cout << to_csv(result);
  else std::cout << to_text(result, timing);

  int code = exit_code(result);
  if (code != 0) std::cerr << "verification failed: " << result.report.first_witness() << "\n";
  return code;
}
