#include <map>
#include <stdexcept>

#include "fdiff/classes.hpp"
#include "json.hpp"

namespace fdiff {

Lattice lattice_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("lattice json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elems") || !j.contains("leq"))
    throw std::invalid_argument("lattice json: expected {\"elems\": [...], \"leq\": [[a,b], ...]}");
  std::map<std::string, std::size_t> pos;
  std::size_t n = 0;
  for (const auto& e : j["elems"]) {
    std::string key = e.is_string() ? e.get<std::string>() : e.dump();
    if (!pos.emplace(key, n).second) throw std::invalid_argument("lattice json: duplicate element " + key);
    ++n;
  }
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = 1;
  for (const auto& pr : j["leq"]) {
    if (!pr.is_array() || pr.size() != 2) throw std::invalid_argument("lattice json: leq entries are pairs");
    auto key = [](const nlohmann::json& e) { return e.is_string() ? e.get<std::string>() : e.dump(); };
    auto a = pos.find(key(pr[0])), b = pos.find(key(pr[1]));
    if (a == pos.end() || b == pos.end()) throw std::invalid_argument("lattice json: unknown element in " + pr.dump());
    leq[a->second][b->second] = 1;
  }
  // transitive closure
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i][k])
        for (std::size_t m = 0; m < n; ++m)
          if (leq[k][m]) leq[i][m] = 1;
  std::string name = j.value("name", std::string("L") + std::to_string(n));
  return Lattice(FinSet::range(n), leq, name);
}

}  // namespace fdiff
