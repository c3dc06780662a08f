#include <stdexcept>

#include "fdiff/newton.hpp"
#include "json.hpp"

namespace fdiff {

namespace {

// "m->n:s0,s1,..."
Surjection parse_key(const std::string& key) {
  auto arrow = key.find("->"), colon = key.find(':');
  if (arrow == std::string::npos || colon == std::string::npos || colon < arrow)
    throw std::invalid_argument("species json: action key '" + key + "' is not of the form m->n:s0,s1,...");
  std::size_t m = 0, n = 0;
  try {
    m = std::stoul(key.substr(0, arrow));
    n = std::stoul(key.substr(arrow + 2, colon - arrow - 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("species json: bad degrees in '" + key + "'");
  }
  Surjection s;
  std::string body = key.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      s.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw std::invalid_argument("species json: bad image '" + tok + "' in '" + key + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (s.size() != m || surj_target(s) != n || surjections(m, n).empty())
    throw std::invalid_argument("species json: '" + key + "' is not a surjection " + std::to_string(m) + " ->> " +
                                std::to_string(n));
  std::vector<char> hit(n, 0);
  for (auto v : s) hit[v] = 1;
  for (char h : hit)
    if (!h) throw std::invalid_argument("species json: '" + key + "' is not surjective");
  return s;
}

}  // namespace

SoftSpecies soft_species_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("species json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("N") || !j.contains("G"))
    throw std::invalid_argument("species json: expected {\"N\": n, \"G\": [sizes], \"actions\": {...}}");
  std::size_t N = j["N"].get<std::size_t>();
  const auto& g = j["G"];
  if (!g.is_array() || g.size() != N + 1)
    throw std::invalid_argument("species json: \"G\" must list N + 1 sizes");
  std::vector<FinSet> sets;
  for (const auto& s : g) sets.push_back(FinSet::range(s.get<std::size_t>()));
  std::map<Surjection, FinFun> gens;
  if (j.contains("actions")) {
    for (const auto& [key, val] : j["actions"].items()) {
      Surjection s = parse_key(key);
      const FinSet& dom = sets[s.size()];
      const FinSet& cod = sets[surj_target(s)];
      if (!val.is_array() || val.size() != dom.size())
        throw std::invalid_argument("species json: action '" + key + "' needs " + std::to_string(dom.size()) +
                                    " images");
      std::vector<std::uint32_t> t;
      for (const auto& v : val) {
        auto x = v.get<std::size_t>();
        if (x >= cod.size()) throw std::invalid_argument("species json: image out of range in '" + key + "'");
        t.push_back(static_cast<std::uint32_t>(x));
      }
      gens.emplace(s, FinFun(dom, cod, t));
    }
  }
  return SoftSpecies::generated(N, std::move(sets), gens, j.value("name", std::string("G")));
}

}  // namespace fdiff
