#include "brre/app/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "brre/errors.hpp"

namespace brre::app {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"map", {"name", "k", "observable", "escape_bound"}},
      {"algorithm",
       {"epsilon", "gamma", "delta", "delta_chaos", "chaos_statistic", "K_init", "K_max", "K_step",
        "rational_tol", "p_max", "top_modes", "unit_circle_tol", "gamma_max", "validation_points"}},
      {"seeds", {"points", "line"}},
      {"converge", {"K_start", "K_stop", "K_step", "gamma"}},
      {"average", {"length"}},
      {"output", {"table", "circles", "workers"}},
  };
  return keys;
}

std::string where(const std::string& section, const std::string& key) {
  return "[" + section + "] " + key;
}

double to_double(const std::string& section, const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(where(section, key) + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError(where(section, key) + ": trailing characters in '" + text + "'");
  return v;
}

std::size_t to_count(const std::string& section, const std::string& key, const std::string& text) {
  const double v = to_double(section, key, text);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ConfigError(where(section, key) + ": expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> numbers(const std::string& section, const std::string& key, std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream in(text);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(to_double(section, key, token));
  return out;
}

void check(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  RunConfig c;
  const auto& known = schema();
  for (const auto& [section, body] : tree) {
    const auto it = known.find(section);
    if (it == known.end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside of any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, node] : body) {
      if (!it->second.contains(key)) throw ConfigError("unknown key " + where(section, key));
      const std::string v = node.get_value<std::string>();
      auto num = [&] { return to_double(section, key, v); };
      auto count = [&] { return to_count(section, key, v); };

      if (section == "map") {
        if (key == "name") c.map_name = v;
        else if (key == "k") c.k = num();
        else if (key == "observable") c.observable = v;
        else if (key == "escape_bound") c.escape_bound = num();
      } else if (section == "algorithm") {
        auto& a = c.classify;
        if (key == "epsilon") a.adaptive.epsilon = num();
        else if (key == "gamma") a.adaptive.gamma = num();
        else if (key == "delta") a.adaptive.delta = num();
        else if (key == "delta_chaos") a.delta_chaos = num();
        else if (key == "chaos_statistic") {
          if (v == "scale_free") a.chaos_statistic = ChaosStatistic::ScaleFree;
          else if (v == "residual") a.chaos_statistic = ChaosStatistic::Raw;
          else throw ConfigError(where(section, key) + ": expected scale_free or residual");
        } else if (key == "K_init") a.adaptive.K_init = count();
        else if (key == "K_max") a.adaptive.K_max = count();
        else if (key == "K_step") a.adaptive.K_step = count();
        else if (key == "rational_tol") a.rational_tol = num();
        else if (key == "p_max") a.p_max = static_cast<long>(count());
        else if (key == "top_modes") a.top_modes = count();
        else if (key == "unit_circle_tol") a.unit_circle_tol = num();
        else if (key == "gamma_max") c.gamma_max = num();
        else if (key == "validation_points") c.validation_points = count();
      } else if (section == "seeds") {
        const auto xs = numbers(section, key, v);
        if (key == "points") {
          check(xs.size() % 2 == 0, where(section, key) + ": expected x y pairs");
          for (std::size_t i = 0; i < xs.size(); i += 2) c.seeds.push_back({xs[i], xs[i + 1]});
        } else {
          check(xs.size() == 5, where(section, key) + ": expected x0 y0 x1 y1 count");
          const double n = xs[4];
          check(n >= 1 && n == static_cast<double>(static_cast<long>(n)),
                where(section, key) + ": count must be a positive integer");
          const auto m = static_cast<long>(n);
          for (long i = 0; i < m; ++i) {
            const double s = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
            c.seeds.push_back({xs[0] + s * (xs[2] - xs[0]), xs[1] + s * (xs[3] - xs[1])});
          }
        }
      } else if (section == "converge") {
        if (key == "K_start") c.converge_K_start = count();
        else if (key == "K_stop") c.converge_K_stop = count();
        else if (key == "K_step") c.converge_K_step = count();
        else if (key == "gamma") c.converge_gamma = num();
      } else if (section == "average") {
        c.average_length = count();
      } else if (section == "output") {
        if (key == "table") c.table_path = v;
        else if (key == "circles") c.circles_dir = v;
        else if (key == "workers") c.workers = static_cast<int>(count());
      }
    }
  }

  const auto& a = c.classify;
  check(c.map_name == "standard", "[map] name: unknown map '" + c.map_name + "'");
  check(c.observable == "embedding" || c.observable == "identity",
        "[map] observable: expected embedding or identity");
  check(std::isfinite(c.k), "[map] k must be finite");
  check(c.escape_bound > 0, "[map] escape_bound must be positive");
  check(a.adaptive.epsilon >= 0, "[algorithm] epsilon must be >= 0");
  check(a.adaptive.gamma >= 1, "[algorithm] gamma must be >= 1");
  check(a.adaptive.delta > 0, "[algorithm] delta must be positive");
  check(a.delta_chaos > 0, "[algorithm] delta_chaos must be positive");
  check(a.adaptive.K_init >= 1, "[algorithm] K_init must be >= 1");
  check(a.adaptive.K_init <= a.adaptive.K_max, "[algorithm] K_init must not exceed K_max");
  check(a.adaptive.K_step >= 1, "[algorithm] K_step must be >= 1");
  check(a.rational_tol > 0, "[algorithm] rational_tol must be positive");
  check(a.p_max >= 1, "[algorithm] p_max must be >= 1");
  check(a.top_modes >= 1, "[algorithm] top_modes must be >= 1");
  check(a.unit_circle_tol > 0, "[algorithm] unit_circle_tol must be positive");
  check(c.gamma_max > 0 && c.gamma_max <= 0.5, "[algorithm] gamma_max must lie in (0, 0.5]");
  check(c.validation_points >= 8, "[algorithm] validation_points must be >= 8");
  check(c.converge_K_start >= 1 && c.converge_K_start <= c.converge_K_stop,
        "[converge] need 1 <= K_start <= K_stop");
  check(c.converge_K_step >= 1, "[converge] K_step must be >= 1");
  check(c.converge_gamma >= 1, "[converge] gamma must be >= 1");
  check(c.average_length >= 2, "[average] length must be >= 2");
  check(!c.seeds.empty(), "[seeds] at least one seed is required");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

int effective_workers(const RunConfig& config) {
  if (const char* env = std::getenv("BRRE_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 0) return static_cast<int>(v);
    throw ConfigError("BRRE_WORKERS must be a non-negative integer");
  }
  return config.workers;
}

std::shared_ptr<const DynamicalMap> make_map(const RunConfig& config) {
  return std::make_shared<StandardMap>(config.k);
}

std::shared_ptr<const Observable> make_observable(const RunConfig& config) {
  if (config.observable == "identity") return std::make_shared<IdentityObservable>(2);
  return std::make_shared<EmbeddingObservable>();
}

}  // namespace brre::app
