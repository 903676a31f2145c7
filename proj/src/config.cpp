#include "hosim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hosim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view source, std::size_t line,
                       const std::string& message) {
  std::ostringstream os;
  os << source << ":" << line << ": " << message;
  throw ConfigError(os.str());
}

double parse_number(std::string_view source, std::size_t line,
                    std::string_view key, std::string_view value) {
  const std::string v(value);
  char* end = nullptr;
  const double parsed = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty() || !std::isfinite(parsed))
    fail(source, line,
         "value for '" + std::string(key) + "' is not a number: '" + v + "'");
  return parsed;
}

std::uint64_t parse_u64(std::string_view source, std::size_t line,
                        std::string_view key, std::string_view value) {
  std::uint64_t parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc() || ptr != value.data() + value.size())
    fail(source, line,
         "value for '" + std::string(key) + "' is not an unsigned integer: '" +
             std::string(value) + "'");
  return parsed;
}

std::vector<double> parse_number_list(std::string_view source,
                                      std::size_t line, std::string_view key,
                                      std::string_view value) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t comma = value.find(',', pos);
    const std::string_view item =
        trim(value.substr(pos, comma == std::string_view::npos
                                   ? std::string_view::npos
                                   : comma - pos));
    if (item.empty())
      fail(source, line, "empty entry in list for '" + std::string(key) + "'");
    out.push_back(parse_number(source, line, key, item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct TimerField {
  const char* name;
  PerturbedTimer engine::TimerSet::*member;
};

constexpr TimerField kTimerFields[] = {
    {"anticipation", &engine::TimerSet::anticipation},
    {"l2_handoff", &engine::TimerSet::l2_handoff},
    {"local_ip", &engine::TimerSet::local_ip},
    {"mn_ar1", &engine::TimerSet::mn_ar1},
    {"mn_ar2", &engine::TimerSet::mn_ar2},
    {"router_distance", &engine::TimerSet::router_distance},
    {"ar1_ha", &engine::TimerSet::ar1_ha},
    {"ar2_ha", &engine::TimerSet::ar2_ha},
};

// Timer fields are staged as raw doubles so a file may set mean and
// perturbation in any order; PerturbedTimer validates on construction.
bool apply_timer_key(ExperimentConfig& cfg, std::string_view source,
                     std::size_t line, std::string_view key,
                     std::string_view value) {
  for (const TimerField& field : kTimerFields) {
    const std::string prefix = std::string("timers.") + field.name + ".";
    if (key.substr(0, prefix.size()) != prefix) continue;
    const std::string_view attr = key.substr(prefix.size());
    PerturbedTimer& timer = cfg.timers.*(field.member);
    const double number = parse_number(source, line, key, value);
    double mean = timer.mean_ms;
    double perturbation = timer.perturbation_ms;
    if (attr == "mean") {
      mean = number;
    } else if (attr == "perturbation") {
      perturbation = number;
    } else {
      fail(source, line, "unknown timer attribute in '" + std::string(key) +
                             "' (expected .mean or .perturbation)");
    }
    try {
      timer = PerturbedTimer(mean, perturbation);
    } catch (const std::invalid_argument& e) {
      fail(source, line, "'" + std::string(key) + "': " + e.what());
    }
    return true;
  }
  return false;
}

void apply_key(ExperimentConfig& cfg, std::string_view source,
               std::size_t line, std::string_view key,
               std::string_view value) {
  if (key == "experiment") {
    const auto kind = experiment_from_name(std::string(value));
    if (!kind)
      fail(source, line, "unknown experiment '" + std::string(value) + "'");
    cfg.experiment = *kind;
    cfg.experiment_from_file = true;
  } else if (key == "seed") {
    cfg.master_seed = parse_u64(source, line, key, value);
  } else if (key == "trials") {
    const std::uint64_t n = parse_u64(source, line, key, value);
    if (n == 0) fail(source, line, "trials must be >= 1");
    cfg.trials = static_cast<std::size_t>(n);
  } else if (key == "out") {
    cfg.out = std::string(value);
  } else if (key == "schemes") {
    cfg.schemes.clear();
    for (const std::string_view item : [&] {
           std::vector<std::string_view> items;
           std::size_t pos = 0;
           while (pos <= value.size()) {
             const std::size_t comma = value.find(',', pos);
             items.push_back(
                 trim(value.substr(pos, comma == std::string_view::npos
                                            ? std::string_view::npos
                                            : comma - pos)));
             if (comma == std::string_view::npos) break;
             pos = comma + 1;
           }
           return items;
         }()) {
      const auto scheme = engine::scheme_from_name(std::string(item));
      if (!scheme)
        fail(source, line, "unknown scheme '" + std::string(item) + "'");
      cfg.schemes.push_back(*scheme);
    }
  } else if (key == "sweep.variable") {
    cfg.sweep.variable = std::string(value);
  } else if (key == "sweep.start") {
    cfg.sweep.start = parse_number(source, line, key, value);
  } else if (key == "sweep.stop") {
    cfg.sweep.stop = parse_number(source, line, key, value);
  } else if (key == "sweep.step") {
    cfg.sweep.step = parse_number(source, line, key, value);
  } else if (key == "stream.packet_period") {
    cfg.stream.packet_period_ms = parse_number(source, line, key, value);
  } else if (key == "mobility.rho") {
    cfg.mobility.rho = parse_number_list(source, line, key, value);
  } else if (key == "mobility.k") {
    cfg.mobility.k = parse_number_list(source, line, key, value);
  } else if (key == "mobility.cell_radius") {
    cfg.mobility.cell_radius = parse_number(source, line, key, value);
  } else if (key == "mobility.speed") {
    cfg.mobility.speed = parse_number(source, line, key, value);
  } else if (apply_timer_key(cfg, source, line, key, value)) {
    // handled
  } else {
    fail(source, line, "unknown key '" + std::string(key) + "'");
  }
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::analytic:
      return "analytic";
    case ExperimentKind::handover:
      return "handover";
    case ExperimentKind::mobility:
      return "mobility";
  }
  return "?";
}

std::optional<ExperimentKind> experiment_from_name(const std::string& name) {
  if (name == "analytic") return ExperimentKind::analytic;
  if (name == "handover") return ExperimentKind::handover;
  if (name == "mobility") return ExperimentKind::mobility;
  return std::nullopt;
}

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  if (!(step > 0.0)) return out;
  // Index-based generation keeps the points reproducible; the small slack
  // admits a stop value that is itself a sweep point despite rounding.
  for (std::size_t i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + step * 1e-9) break;
    out.push_back(v);
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text,
                              std::string_view source_name) {
  ExperimentConfig cfg;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        fail(source_name, line_number, "expected 'key = value'");
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key.empty()) fail(source_name, line_number, "empty key");
      apply_key(cfg, source_name, line_number, key, value);
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream contents;
  contents << in.rdbuf();
  return parse_config(contents.str(), path);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("trials must be >= 1");
  if (!(cfg.stream.packet_period_ms > 0.0))
    throw ConfigError("stream.packet_period must be > 0");
  if (cfg.sweep.variable != "timers.router_distance.mean")
    throw ConfigError("unsupported sweep.variable '" + cfg.sweep.variable +
                      "' (only timers.router_distance.mean can be swept)");
  if (!(cfg.sweep.step > 0.0)) throw ConfigError("sweep.step must be > 0");
  if (cfg.sweep.values().empty())
    throw ConfigError("sweep range is empty (start > stop)");
  if (!(cfg.sweep.start >= 0.0))
    throw ConfigError("sweep.start must be >= 0");
  if (cfg.schemes.empty()) throw ConfigError("schemes must not be empty");
  if (cfg.mobility.rho.empty()) throw ConfigError("mobility.rho must not be empty");
  if (cfg.mobility.k.empty()) throw ConfigError("mobility.k must not be empty");
  for (double rho : cfg.mobility.rho)
    if (!(rho > 0.0)) throw ConfigError("mobility.rho entries must be > 0");
  for (double k : cfg.mobility.k)
    if (!(k >= 1.0)) throw ConfigError("mobility.k entries must be >= 1");
  if (!(cfg.mobility.cell_radius > 0.0))
    throw ConfigError("mobility.cell_radius must be > 0");
  if (!(cfg.mobility.speed > 0.0))
    throw ConfigError("mobility.speed must be > 0");
}

void apply_seed_overrides(ExperimentConfig& cfg,
                          const std::optional<std::string>& env_value,
                          const std::optional<std::uint64_t>& flag_value) {
  if (env_value) {
    std::uint64_t parsed = 0;
    const auto [ptr, ec] = std::from_chars(
        env_value->data(), env_value->data() + env_value->size(), parsed);
    if (ec != std::errc() || ptr != env_value->data() + env_value->size())
      throw ConfigError("HOSIM_SEED is not an unsigned integer: '" +
                        *env_value + "'");
    cfg.master_seed = parsed;
  }
  if (flag_value) cfg.master_seed = *flag_value;
}

namespace {

std::string format_config_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_number_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_config_number(values[i]);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> canonical_items(
    const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> items;
  items.emplace_back("experiment", experiment_name(cfg.experiment));
  items.emplace_back("seed", std::to_string(cfg.master_seed));
  items.emplace_back("trials", std::to_string(cfg.trials));
  {
    std::string schemes;
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
      if (i) schemes += ", ";
      schemes += engine::scheme_name(cfg.schemes[i]);
    }
    items.emplace_back("schemes", schemes);
  }
  items.emplace_back("sweep.variable", cfg.sweep.variable);
  items.emplace_back("sweep.start", format_config_number(cfg.sweep.start));
  items.emplace_back("sweep.stop", format_config_number(cfg.sweep.stop));
  items.emplace_back("sweep.step", format_config_number(cfg.sweep.step));
  items.emplace_back("stream.packet_period",
                     format_config_number(cfg.stream.packet_period_ms));
  for (const TimerField& field : kTimerFields) {
    const PerturbedTimer& timer = cfg.timers.*(field.member);
    items.emplace_back(std::string("timers.") + field.name + ".mean",
                       format_config_number(timer.mean_ms));
    items.emplace_back(std::string("timers.") + field.name + ".perturbation",
                       format_config_number(timer.perturbation_ms));
  }
  items.emplace_back("mobility.rho", format_number_list(cfg.mobility.rho));
  items.emplace_back("mobility.k", format_number_list(cfg.mobility.k));
  items.emplace_back("mobility.cell_radius",
                     format_config_number(cfg.mobility.cell_radius));
  items.emplace_back("mobility.speed",
                     format_config_number(cfg.mobility.speed));
  return items;
}

}  // namespace hosim
