#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace catseye::cli {
namespace {

using json = nlohmann::json;

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be true or false");
  return v.get<bool>();
}

template <class T, class Get>
auto fill(std::optional<T> RunConfig::*field, Get get) {
  return [field, get](RunConfig& c, const json& v, const std::string& key) {
    if (!(c.*field)) c.*field = static_cast<T>(get(v, key));
  };
}

auto flag(bool RunConfig::*field) {
  return [field](RunConfig& c, const json& v, const std::string& key) {
    if (!(c.*field)) c.*field = as_bool(v, key);
  };
}

using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"b", fill(&RunConfig::b, as_double)},
      {"s", fill(&RunConfig::s, as_double)},
      {"gamma", fill(&RunConfig::gamma, as_double)},
      {"diagonal", flag(&RunConfig::diagonal)},
      {"ell", fill(&RunConfig::ell, as_double)},
      {"ell-ratio", fill(&RunConfig::ell_ratio, as_double)},
      {"nx", fill(&RunConfig::nx, as_count)},
      {"ny", fill(&RunConfig::ny, as_count)},
      {"modes", fill(&RunConfig::modes, as_count)},
      {"max-iter", fill(&RunConfig::max_iter, as_count)},
      {"y-order", fill(&RunConfig::y_order, as_count)},
      {"tol", fill(&RunConfig::tol, as_double)},
      {"ode-tol", fill(&RunConfig::ode_tol, as_double)},
      {"x1-max", fill(&RunConfig::x1_max, as_double)},
      {"ball", fill(&RunConfig::ball, as_double)},
      {"sweep", fill(&RunConfig::sweep, as_string)},
      {"values", fill(&RunConfig::values, as_string)},
      {"range", fill(&RunConfig::range, as_string)},
      {"log", flag(&RunConfig::log_range)},
      {"threads", fill(&RunConfig::threads, as_count)},
      {"mode", fill(&RunConfig::mode, as_string)},
      {"newton", flag(&RunConfig::newton)},
      {"certify", flag(&RunConfig::certify)},
      {"refine", flag(&RunConfig::refine)},
      {"svg", flag(&RunConfig::svg)},
      {"no-field", flag(&RunConfig::no_field)},
      {"out", fill(&RunConfig::out_file, as_string)},
  };
  return table;
}

double parse_number(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double v = 0.0;
  in >> v;
  if (in.fail() || !(in >> std::ws).eof()) throw ConfigError("cannot parse " + what + " '" + text + "'");
  return v;
}

}  // namespace

void overlay_file(RunConfig& config, const json& file) {
  if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
  const auto& table = setters();
  for (const auto& [key, value] : file.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(config, value, key);
  }
}

void overlay_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json file;
  try {
    in >> file;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  overlay_file(config, file);
}

ResolvedParams resolve_params(const RunConfig& config) {
  ResolvedParams p;
  if (config.b && config.gamma) throw ConfigError("give either --b or --gamma, not both");
  if (config.b) {
    if (!(*config.b > 0.0) || !std::isfinite(*config.b)) throw ConfigError("--b must be positive");
    p.b = *config.b;
    p.gamma = std::pow(*config.b, -1.5);
    if (config.s && config.diagonal) throw ConfigError("--diagonal fixes s = -gamma; drop --s");
    p.s = config.s ? *config.s : (config.diagonal ? -p.gamma : kDefaultSlip);
    return p;
  }
  if (!config.gamma && !config.s) {
    throw ConfigError("missing parameters: give --b, or --s together with --gamma");
  }
  if (!config.gamma) throw ConfigError("--s needs --gamma (or give --b instead)");
  if (!(*config.gamma >= 0.0) || !std::isfinite(*config.gamma)) {
    throw ConfigError("--gamma must be non-negative");
  }
  p.gamma = *config.gamma;
  if (config.diagonal) {
    if (config.s) throw ConfigError("--diagonal fixes s = -gamma; drop --s");
    p.s = -p.gamma;
  } else {
    if (!config.s) throw ConfigError("--gamma needs --s (or --diagonal)");
    p.s = *config.s;
  }
  if (p.gamma > 0.0) p.b = std::pow(p.gamma, -2.0 / 3.0);
  return p;
}

std::string output_dir(const RunConfig& config) {
  if (config.out) return *config.out;
  if (const char* env = std::getenv("CATSEYE_OUTPUT_DIR"); env && *env) return env;
  if (config.out_file) return *config.out_file;
  return ".";
}

void validate(const RunConfig& config) {
  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(config.tol, "--tol");
  positive(config.ode_tol, "--ode-tol");
  positive(config.x1_max, "--x1-max");
  positive(config.ball, "--ball");
  if (config.nx && *config.nx < 16) throw ConfigError("--nx must be at least 16");
  if (config.ny && *config.ny < 16) throw ConfigError("--ny must be at least 16");
  if (config.modes && *config.modes < 2) throw ConfigError("--modes must be at least 2");
  if (config.max_iter && *config.max_iter == 0) throw ConfigError("--max-iter must be positive");
  if (config.y_order && *config.y_order != 2 && *config.y_order != 4) {
    throw ConfigError("--y-order must be 2 or 4");
  }
  if (config.ell && config.ell_ratio) throw ConfigError("give either --ell or --ell-ratio, not both");
  if (config.ell_ratio && !(*config.ell_ratio > 0.0 && *config.ell_ratio < 1.0)) {
    throw ConfigError("--ell-ratio must lie in (0, 1)");
  }
  if (config.ell && !(*config.ell > 0.0)) throw ConfigError("--ell must be positive");
  if (config.values && config.range) throw ConfigError("give either --values or --range, not both");
  if (config.mode && *config.mode != "periodic" && *config.mode != "solitary") {
    throw ConfigError("--mode must be 'periodic' or 'solitary'");
  }
  if (config.threads && *config.threads == 0) throw ConfigError("--threads must be positive");
}

std::vector<double> sweep_values(const RunConfig& config) {
  std::vector<double> out;
  if (config.values) {
    std::string item;
    std::istringstream in(*config.values);
    while (std::getline(in, item, ',')) {
      const auto first = item.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      out.push_back(parse_number(item.substr(first), "sweep value"));
    }
    return out;
  }
  if (!config.range) throw ConfigError("sweep needs --values or --range");
  const std::string& r = *config.range;
  const auto c1 = r.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : r.find(':', c1 + 1);
  if (c2 == std::string::npos) throw ConfigError("--range must look like lo:hi:count");
  const double lo = parse_number(r.substr(0, c1), "range bound");
  const double hi = parse_number(r.substr(c1 + 1, c2 - c1 - 1), "range bound");
  const double n = parse_number(r.substr(c2 + 1), "range count");
  if (n < 0 || n != std::floor(n)) throw ConfigError("range count must be a non-negative integer");
  const auto count = static_cast<std::size_t>(n);
  if (config.log_range && count > 0 && !(lo > 0.0 && hi > 0.0)) {
    throw ConfigError("--log needs positive range bounds");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(config.log_range ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo));
  }
  return out;
}

}  // namespace catseye::cli
