#include "latmaj/selector.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace latmaj {

namespace {

constexpr std::array<std::pair<SelectorKind, const char*>, 12> kNames{{
    {SelectorKind::LLL, "lll"},
    {SelectorKind::DeepVar, "deepvar"},
    {SelectorKind::Thermal, "thermal"},
    {SelectorKind::ThermalAdaptive, "thermal-adaptive"},
    {SelectorKind::SSGG, "ssgg"},
    {SelectorKind::GDLLL, "gdlll"},
    {SelectorKind::GDLLL_RT, "gdlll-rt"},
    {SelectorKind::GDLLL_CA, "gdlll-ca"},
    {SelectorKind::SchurK, "schurk"},
    {SelectorKind::FAlphaBeta, "falphabeta"},
    {SelectorKind::Pot, "pot"},
    {SelectorKind::ThermalSched, "thermal-sched"},
}};

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

SelectorKind kind_from_name(const std::string& name) {
  for (const auto& [kind, n] : kNames) {
    if (name == n) return kind;
  }
  // A few spellings people reach for.
  if (name == "deep-var") return SelectorKind::DeepVar;
  if (name == "ss-gg") return SelectorKind::SSGG;
  if (name == "g-dlll") return SelectorKind::GDLLL;
  if (name == "schur-k") return SelectorKind::SchurK;
  if (name == "pot-gg") return SelectorKind::Pot;
  throw std::invalid_argument("unknown selector '" + name + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("selector option " + key + ": not a number: '" + value + "'");
  }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("selector option " + key + ": not a count: '" + value + "'");
  }
  return v;
}

}  // namespace

bool is_gdlll_family(SelectorKind kind) {
  return kind == SelectorKind::GDLLL || kind == SelectorKind::GDLLL_RT ||
         kind == SelectorKind::GDLLL_CA;
}

void validate(const SelectorSpec& spec) {
  if (spec.alpha && !(*spec.alpha > 0)) throw std::invalid_argument("alpha must be positive");
  if (!(spec.beta >= 0)) throw std::invalid_argument("beta must be non-negative");
  if (!(spec.alpha_min > 0)) throw std::invalid_argument("alpha_min must be positive");
  if (!(spec.tau >= 0)) throw std::invalid_argument("tau must be non-negative");
  if (spec.shortlist_K && *spec.shortlist_K == 0) throw std::invalid_argument("K must be at least 1");
  if (spec.schur_K && *spec.schur_K == 0) throw std::invalid_argument("K must be at least 1");
  if (spec.period_P == 0) throw std::invalid_argument("P must be at least 1");
  if (!(spec.ca_overhead >= 0)) throw std::invalid_argument("overhead must be non-negative");
}

SelectorSpec parse_selector(std::string_view text) {
  const auto colon = text.find(':');
  SelectorSpec spec;
  spec.kind = kind_from_name(normalize(text.substr(0, colon)));
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::stringstream items(rest);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("selector option '" + item + "' needs key=value");
      const std::string key = normalize(item.substr(0, eq));
      const std::string value = item.substr(eq + 1);
      const bool is_auto = value == "auto";
      if (key == "alpha") {
        spec.alpha = is_auto ? std::nullopt : std::optional(parse_double(key, value));
      } else if (key == "beta") {
        spec.beta = parse_double(key, value);
      } else if (key == "gamma") {
        spec.gamma = parse_double(key, value);
      } else if (key == "alpha-min") {
        spec.alpha_min = parse_double(key, value);
      } else if (key == "k") {
        std::optional<std::size_t> k = is_auto ? std::nullopt : std::optional(parse_count(key, value));
        if (spec.kind == SelectorKind::SchurK) {
          spec.schur_K = k;
        } else {
          spec.shortlist_K = k;
        }
      } else if (key == "tau") {
        spec.tau = parse_double(key, value);
      } else if (key == "p") {
        spec.period_P = parse_count(key, value);
      } else if (key == "overhead" || key == "ca-overhead") {
        spec.ca_overhead = parse_double(key, value);
      } else if (key == "shortlist") {
        if (value == "on" || value == "true" || value == "1") {
          spec.shortlist = true;
        } else if (value == "off" || value == "false" || value == "0") {
          spec.shortlist = false;
        } else {
          throw std::invalid_argument("shortlist expects on/off");
        }
      } else {
        throw std::invalid_argument("unknown selector option '" + key + "'");
      }
    }
  }
  validate(spec);
  return spec;
}

std::string selector_name(SelectorKind kind) {
  for (const auto& [k, n] : kNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

std::string to_string(const SelectorSpec& spec) {
  const SelectorSpec defaults;
  std::ostringstream opts;
  auto add = [&](const std::string& kv) { opts << (opts.tellp() == 0 ? "" : ",") << kv; };
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  const SelectorKind kind = spec.kind;
  if (spec.alpha) add("alpha=" + num(*spec.alpha));
  if (spec.beta != defaults.beta) add("beta=" + num(spec.beta));
  if (spec.gamma != defaults.gamma) add("gamma=" + num(spec.gamma));
  if (spec.alpha_min != defaults.alpha_min) add("alpha_min=" + num(spec.alpha_min));
  if (kind == SelectorKind::SchurK && spec.schur_K) add("K=" + std::to_string(*spec.schur_K));
  if (kind != SelectorKind::SchurK && spec.shortlist_K) add("K=" + std::to_string(*spec.shortlist_K));
  if (spec.tau != defaults.tau) add("tau=" + num(spec.tau));
  if (spec.period_P != defaults.period_P) add("P=" + std::to_string(spec.period_P));
  if (spec.ca_overhead != defaults.ca_overhead) add("overhead=" + num(spec.ca_overhead));
  if (!spec.shortlist) add("shortlist=off");
  const std::string o = opts.str();
  return selector_name(kind) + (o.empty() ? "" : ":" + o);
}

}  // namespace latmaj
