// Copyright 2026 The streamex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamex/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "streamex/streams.hpp"

namespace streamex {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : DataError(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kNaiveBayes: return "NB";
    case LearnerKind::kSgd: return "SGD";
    case LearnerKind::kHoeffdingTree: return "HT";
    case LearnerKind::kAdaptiveTree: return "AHT";
  }
  return "?";
}

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kBaseline: return "Baseline";
    case StrategyKind::kUniformWindow: return "UW";
    case StrategyKind::kExponentialWindow: return "EW";
    case StrategyKind::kSingleExposition: return "SE";
  }
  return "?";
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kNone: return "none";
    case EnsembleKind::kSwitching: return "switching";
    case EnsembleKind::kElevating: return "elevating";
  }
  return "?";
}

namespace {

// Budget grid the schedules are written against: 100, 50, 20, 10, 5, 1 %.
std::size_t schedule_slot(double budget) {
  if (budget >= 1.0) return 0;
  if (budget >= 0.5) return 1;
  if (budget >= 0.2) return 2;
  if (budget >= 0.1) return 3;
  if (budget >= 0.05) return 4;
  return 5;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& s, std::size_t line) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  if (!s.empty() && (s.front() == '"' || s.back() == '"')) {
    throw ConfigError(line, "unbalanced quotes in '" + s + "'");
  }
  return s;
}

struct Entry {
  std::string value;
  std::size_t line;
};

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"stream", {"preset", "file", "length"}},
      {"learner", {"type", "loss", "learning_rate"}},
      {"active", {"query", "budgets", "alpha_theta"}},
      {"exploit", {"strategy", "strategies", "lambda_max", "window", "dynamic_intensity", "gamma"}},
      {"ensemble", {"mode", "alpha"}},
      {"eval", {"window_width", "stride", "adaptive_window"}},
      {"run", {"id", "seeds", "output"}},
  };
  return keys;
}

std::vector<std::string> split_list(const Entry& e) {
  const std::string& v = e.value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    return {unquote(v, e.line)};  // a bare scalar is a one-element list
  }
  std::vector<std::string> items;
  const std::string body = trim(v.substr(1, v.size() - 2));
  if (body.empty()) return items;
  std::string current;
  bool quoted = false;
  for (const char c : body) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      items.push_back(unquote(trim(current), e.line));
      current.clear();
    } else {
      current += c;
    }
  }
  items.push_back(unquote(trim(current), e.line));
  for (const auto& item : items) {
    if (item.empty()) throw ConfigError(e.line, "empty list element");
  }
  return items;
}

double parse_real(const std::string& token, std::size_t line, const std::string& key) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (token.empty() || end != begin + token.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(line, "'" + key + "': expected a number, got '" + token + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& token, std::size_t line, const std::string& key) {
  if (token.empty() || !std::all_of(token.begin(), token.end(),
                                    [](unsigned char c) { return std::isdigit(c) != 0; })) {
    throw ConfigError(line, "'" + key + "': expected a non-negative integer, got '" + token + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(token.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError(line, "'" + key + "': integer out of range");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& token, std::size_t line, const std::string& key) {
  const std::string t = lower(token);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError(line, "'" + key + "': expected true or false, got '" + token + "'");
}

LearnerKind parse_learner(const std::string& token, std::size_t line) {
  const std::string t = lower(token);
  if (t == "nb") return LearnerKind::kNaiveBayes;
  if (t == "sgd") return LearnerKind::kSgd;
  if (t == "ht") return LearnerKind::kHoeffdingTree;
  if (t == "aht") return LearnerKind::kAdaptiveTree;
  throw ConfigError(line, "unknown learner '" + token + "' (NB, SGD, HT, AHT)");
}

QueryKind parse_query(const std::string& token, std::size_t line) {
  const std::string t = lower(token);
  if (t == "alr") return QueryKind::kRandom;
  if (t == "randvar") return QueryKind::kRandVar;
  if (t == "als") return QueryKind::kSelective;
  throw ConfigError(line, "unknown query strategy '" + token + "' (ALR, RandVar, ALS)");
}

StrategyKind parse_strategy(const std::string& token, std::size_t line) {
  const std::string t = lower(token);
  if (t == "baseline") return StrategyKind::kBaseline;
  if (t == "uw") return StrategyKind::kUniformWindow;
  if (t == "ew") return StrategyKind::kExponentialWindow;
  if (t == "se") return StrategyKind::kSingleExposition;
  throw ConfigError(line, "unknown strategy '" + token + "' (Baseline, UW, EW, SE)");
}

// "name(arg)" -> {name, arg}; "name" -> {name, ""}.
std::pair<std::string, std::string> split_call(const std::string& token, std::size_t line) {
  const auto open = token.find('(');
  if (open == std::string::npos) return {lower(trim(token)), ""};
  if (token.back() != ')') throw ConfigError(line, "malformed value '" + token + "'");
  return {lower(trim(token.substr(0, open))), trim(token.substr(open + 1, token.size() - open - 2))};
}

WindowPolicy parse_window(const std::string& token, std::size_t line) {
  const auto [name, arg] = split_call(token, line);
  WindowPolicy policy;
  if (name == "adwin" && arg.empty()) {
    policy.kind = WindowPolicyKind::kAdwinDriven;
    return policy;
  }
  if (name == "fixed" || name == "dynamic") {
    policy.kind = name == "fixed" ? WindowPolicyKind::kFixed : WindowPolicyKind::kDynamicShrink;
    policy.max_size = static_cast<std::size_t>(parse_count(arg, line, "window"));
    if (policy.max_size == 0) throw ConfigError(line, "'window': size must be positive");
    return policy;
  }
  throw ConfigError(line, "unknown window policy '" + token + "' (fixed(N), dynamic(N), adwin)");
}

void require_open_unit(double v, std::size_t line, const std::string& key) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ConfigError(line, "'" + key + "' must lie in (0, 1), got " + std::to_string(v));
  }
}

}  // namespace

double default_alpha_theta(double budget) {
  static constexpr double kSchedule[] = {0.002, 0.05, 0.1, 0.1, 0.2, 0.2};
  return kSchedule[schedule_slot(budget)];
}

std::size_t default_lambda_max(LearnerKind learner, bool risky, double budget) {
  if (learner == LearnerKind::kSgd) return risky ? 1000 : 10;
  static constexpr std::size_t kSafe[] = {1, 1, 1, 1, 1, 10};
  static constexpr std::size_t kRisky[] = {100, 100, 100, 1000, 1000, 1000};
  return risky ? kRisky[schedule_slot(budget)] : kSafe[schedule_slot(budget)];
}

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;  // "section.key"
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(section)) {
        throw ConfigError(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(line_no, "'" + key + "' appears before any [section]");
    if (!known_keys().at(section).count(key)) {
      throw ConfigError(line_no, "unknown key '" + key + "' in [" + section + "]");
    }
    if (value.empty()) throw ConfigError(line_no, "'" + key + "' has no value");
    const std::string qualified = section + "." + key;
    if (entries.count(qualified)) {
      throw ConfigError(line_no, "'" + key + "' repeats line " +
                                     std::to_string(entries.at(qualified).line));
    }
    entries[qualified] = Entry{value, line_no};
  }

  auto find = [&](const std::string& k) -> const Entry* {
    const auto it = entries.find(k);
    return it == entries.end() ? nullptr : &it->second;
  };

  ExperimentConfig cfg;

  if (const Entry* e = find("run.id")) cfg.id = unquote(e->value, e->line);
  if (const Entry* e = find("run.output")) cfg.output = unquote(e->value, e->line);
  if (const Entry* e = find("run.seeds")) {
    cfg.seeds.clear();
    for (const auto& item : split_list(*e)) cfg.seeds.push_back(parse_count(item, e->line, "seeds"));
    if (cfg.seeds.empty()) throw ConfigError(e->line, "'seeds' must not be empty");
  }

  const Entry* preset = find("stream.preset");
  const Entry* file = find("stream.file");
  if (preset && file) {
    throw ConfigError(file->line, "'file' conflicts with 'preset' on line " + std::to_string(preset->line));
  }
  if (!preset && !file) throw ConfigError(0, "[stream] needs a 'preset' or a 'file'");
  if (preset) {
    cfg.preset = unquote(preset->value, preset->line);
    try {
      find_preset(cfg.preset);
    } catch (const std::exception&) {
      throw ConfigError(preset->line, "unknown preset '" + cfg.preset + "'");
    }
  } else {
    cfg.file = unquote(file->value, file->line);
  }
  if (const Entry* e = find("stream.length")) {
    cfg.length = parse_count(e->value, e->line, "length");
    if (*cfg.length == 0) throw ConfigError(e->line, "'length' must be positive");
  }

  if (const Entry* e = find("learner.type")) cfg.learner = parse_learner(unquote(e->value, e->line), e->line);
  if (const Entry* e = find("learner.loss")) {
    const std::string t = lower(unquote(e->value, e->line));
    if (t == "hinge") cfg.loss = SgdLoss::kHinge;
    else if (t == "logistic") cfg.loss = SgdLoss::kLogistic;
    else throw ConfigError(e->line, "unknown loss '" + e->value + "' (hinge, logistic)");
  }
  if (const Entry* e = find("learner.learning_rate")) {
    cfg.learning_rate = parse_real(unquote(e->value, e->line), e->line, "learning_rate");
    if (!(cfg.learning_rate > 0.0)) throw ConfigError(e->line, "'learning_rate' must be positive");
  }

  if (const Entry* e = find("active.query")) cfg.query = parse_query(unquote(e->value, e->line), e->line);
  const Entry* budgets = find("active.budgets");
  if (budgets) {
    cfg.budgets.clear();
    for (const auto& item : split_list(*budgets)) {
      const double b = parse_real(item, budgets->line, "budgets");
      if (!(b > 0.0 && b <= 1.0)) {
        throw ConfigError(budgets->line, "'budgets' entries must lie in (0, 1], got " + item);
      }
      cfg.budgets.push_back(b);
    }
    if (cfg.budgets.empty()) throw ConfigError(budgets->line, "'budgets' must not be empty");
  }
  const std::size_t nb = cfg.budgets.size();
  auto check_length = [&](const Entry& e, const std::string& key, std::size_t n) {
    if (n != nb) {
      std::string msg = "'" + key + "' has " + std::to_string(n) + " entries but 'budgets' has " +
                        std::to_string(nb);
      if (budgets) msg += " (line " + std::to_string(budgets->line) + ")";
      throw ConfigError(e.line, msg);
    }
  };

  if (const Entry* e = find("active.alpha_theta")) {
    const auto items = split_list(*e);
    check_length(*e, "alpha_theta", items.size());
    for (const auto& item : items) {
      const double a = parse_real(item, e->line, "alpha_theta");
      require_open_unit(a, e->line, "alpha_theta");
      cfg.alpha_theta.push_back(a);
    }
  } else {
    for (const double b : cfg.budgets) cfg.alpha_theta.push_back(default_alpha_theta(b));
  }

  const Entry* strategy = find("exploit.strategy");
  const Entry* strategies = find("exploit.strategies");
  if (strategy && strategies) {
    throw ConfigError(strategies->line, "'strategies' conflicts with 'strategy' on line " +
                                            std::to_string(strategy->line));
  }
  if (const Entry* e = strategy ? strategy : strategies) {
    cfg.strategies.clear();
    for (const auto& item : split_list(*e)) {
      const StrategyKind k = parse_strategy(item, e->line);
      if (std::find(cfg.strategies.begin(), cfg.strategies.end(), k) != cfg.strategies.end()) {
        throw ConfigError(e->line, "strategy '" + item + "' listed twice");
      }
      cfg.strategies.push_back(k);
    }
    if (cfg.strategies.empty()) throw ConfigError(e->line, "'strategies' must not be empty");
  }

  if (const Entry* e = find("exploit.lambda_max")) {
    const std::string v = lower(unquote(e->value, e->line));
    if (v == "risky" || v == "safe") {
      cfg.lambda_label = v;
    } else {
      const auto items = split_list(*e);
      if (items.size() == 1) {
        cfg.lambda_max.assign(nb, static_cast<std::size_t>(parse_count(items[0], e->line, "lambda_max")));
      } else {
        check_length(*e, "lambda_max", items.size());
        for (const auto& item : items) {
          cfg.lambda_max.push_back(static_cast<std::size_t>(parse_count(item, e->line, "lambda_max")));
        }
      }
      cfg.lambda_label = items.size() == 1 ? items[0] : "custom";
    }
  }
  if (cfg.lambda_max.empty()) {
    const bool risky = cfg.lambda_label == "risky";
    for (const double b : cfg.budgets) cfg.lambda_max.push_back(default_lambda_max(cfg.learner, risky, b));
  }

  if (const Entry* e = find("exploit.window")) cfg.window = parse_window(unquote(e->value, e->line), e->line);
  if (const Entry* e = find("exploit.dynamic_intensity")) {
    cfg.dynamic_intensity = parse_bool(unquote(e->value, e->line), e->line, "dynamic_intensity");
  }
  if (const Entry* e = find("exploit.gamma")) {
    cfg.gamma = parse_real(unquote(e->value, e->line), e->line, "gamma");
    if (!(cfg.gamma > 0.0)) throw ConfigError(e->line, "'gamma' must be positive");
  }

  if (const Entry* e = find("ensemble.mode")) {
    const auto [name, arg] = split_call(unquote(e->value, e->line), e->line);
    if (name == "none" && arg.empty()) cfg.ensemble = EnsembleKind::kNone;
    else if (name == "switching" && arg.empty()) cfg.ensemble = EnsembleKind::kSwitching;
    else if (name == "elevating") {
      cfg.ensemble = EnsembleKind::kElevating;
      if (!arg.empty()) {
        cfg.alpha_e = parse_real(arg, e->line, "mode");
        require_open_unit(cfg.alpha_e, e->line, "mode");
      }
    } else {
      throw ConfigError(e->line, "unknown ensemble '" + e->value + "' (none, switching, elevating)");
    }
  }
  if (const Entry* e = find("ensemble.alpha")) {
    const Entry* mode = find("ensemble.mode");
    if (mode && mode->value.find('(') != std::string::npos) {
      throw ConfigError(e->line, "'alpha' conflicts with 'mode' on line " + std::to_string(mode->line));
    }
    cfg.alpha_e = parse_real(unquote(e->value, e->line), e->line, "alpha");
    require_open_unit(cfg.alpha_e, e->line, "alpha");
  }

  if (const Entry* e = find("eval.window_width")) {
    cfg.window_width = static_cast<std::size_t>(parse_count(e->value, e->line, "window_width"));
    if (cfg.window_width == 0) throw ConfigError(e->line, "'window_width' must be positive");
  }
  if (const Entry* e = find("eval.stride")) {
    cfg.stride = static_cast<std::size_t>(parse_count(e->value, e->line, "stride"));
    if (cfg.stride == 0) throw ConfigError(e->line, "'stride' must be positive");
  }
  if (const Entry* e = find("eval.adaptive_window")) {
    cfg.adaptive_window = parse_bool(unquote(e->value, e->line), e->line, "adaptive_window");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line(), path + ": " + std::string(e.what()));
  }
}

namespace {

template <typename T, typename F>
std::string join(const std::vector<T>& items, F format) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += format(items[i]);
  }
  return out + "]";
}

std::string real(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

std::string describe(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "id = " << c.id << "\n";
  if (!c.preset.empty()) out << "preset = " << c.preset << "\n";
  if (!c.file.empty()) out << "file = " << c.file << "\n";
  if (c.length) out << "length = " << *c.length << "\n";
  out << "learner = " << to_string(c.learner) << "\n";
  if (c.learner == LearnerKind::kSgd) {
    out << "loss = " << (c.loss == SgdLoss::kHinge ? "hinge" : "logistic") << "\n";
    out << "learning_rate = " << real(c.learning_rate) << "\n";
  }
  out << "query = " << to_string(c.query) << "\n";
  out << "budgets = " << join(c.budgets, real) << "\n";
  out << "alpha_theta = " << join(c.alpha_theta, real) << "\n";
  out << "strategies = " << join(c.strategies, [](StrategyKind k) { return to_string(k); }) << "\n";
  out << "lambda_max = " << join(c.lambda_max, [](std::size_t v) { return std::to_string(v); })
      << " (" << c.lambda_label << ")\n";
  out << "window = " << to_string(c.window) << "\n";
  out << "dynamic_intensity = " << (c.dynamic_intensity ? "true" : "false") << "\n";
  out << "gamma = " << real(c.gamma) << "\n";
  out << "ensemble = " << to_string(c.ensemble) << "\n";
  out << "alpha_e = " << real(c.alpha_e) << "\n";
  out << "window_width = " << c.window_width << "\n";
  out << "stride = " << c.stride << "\n";
  out << "adaptive_window = " << (c.adaptive_window ? "true" : "false") << "\n";
  out << "seeds = " << join(c.seeds, [](std::uint64_t v) { return std::to_string(v); }) << "\n";
  if (!c.output.empty()) out << "output = " << c.output << "\n";
  return out.str();
}

}  // namespace streamex
