#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "fdiff/report.hpp"

namespace fdiff {

// bad arguments, unreadable inputs, unknown suites: exit code 2
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Settings {
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> K;  // commands pick their own default when unset
  bool timing = false;
};

struct CommandResult {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  Report report{"report"};
};

// |expr(k)| for each size, optionally with the elements
CommandResult cmd_eval(const std::string& expr, const std::vector<std::size_t>& sizes, bool elements,
                       const Settings& s);
// |expr(k)| and |expr(k+1)| - |expr(k)| for k = 0..maxk, with the closed-form delta when one is known
CommandResult cmd_table(const std::string& expr, int maxk, const Settings& s);
// closed form of the delta, its explicit bijection, counting and coproduct laws
CommandResult cmd_delta(const std::string& expr, const Settings& s);

struct VerifyArgs {
  std::string suite;
  std::optional<std::string> f, g, h, expr, species;
  std::size_t N = 4;
  int maxk = 4;
};
const std::vector<std::string>& verify_suites();
CommandResult cmd_verify(const VerifyArgs& a, const Settings& s);

struct NewtonArgs {
  std::optional<std::string> sum_file, delta_star, roundtrip;
  std::size_t N = 4;
  int maxk = 5;
};
CommandResult cmd_newton(const NewtonArgs& a, const Settings& s);

struct ChainArgs {
  std::string f = "X^2", g = "X^2";
  std::optional<std::string> h;
  int kmax = 4;
  std::optional<std::size_t> splitting;
  bool tangent = false;
};
CommandResult cmd_chain(const ChainArgs& a, const Settings& s);

// 0 when every check passed, 1 otherwise; usage and parse errors map to 2 in the driver
int exit_code(const CommandResult& r);

// {"command", "params", "rows", "report"}; timings only when asked
nlohmann::ordered_json report_json(const Report& r, bool timing);
nlohmann::ordered_json to_json(const CommandResult& r, bool timing);
std::string to_csv(const CommandResult& r);
std::string to_text(const CommandResult& r, bool timing);

}  // namespace fdiff
