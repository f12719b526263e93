#include "latmaj/reduction.hpp"

#include <json.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace latmaj {

using nlohmann::json;

void validate(const ReductionParams& params) {
  if (!(params.delta > 0.25 && params.delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (1/4, 1]");
  }
  if (params.refresh_every == 0) throw std::invalid_argument("refresh_every must be positive");
}

double root_hermite(const Basis& basis, const GsoState& gso) {
  const auto d = static_cast<double>(gso.d);
  const double log_b0 = 0.5 * log_abs(inner_product(basis.row(0), basis.row(0)));
  const double L = static_cast<double>(gso.sum_p());
  return std::exp((log_b0 - L / d) / d);
}

bool is_size_reduced(const GsoState& gso, double tol) {
  for (std::size_t i = 1; i < gso.d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::fabs(static_cast<double>(gso.mu_at(i, j))) > 0.5 + tol) return false;
    }
  }
  return true;
}

namespace {

const char* kind_name(EventKind kind) {
  return kind == EventKind::adjacent_swap ? "adjacent-swap" : "deep-insertion";
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> read_opt(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

std::string to_jsonl(const TraceEvent& e) {
  json obj = {
      {"step", e.step},
      {"kind", kind_name(e.kind)},
      {"k", e.k},
      {"j", e.j},
      {"mu_abs", opt(e.mu_abs)},
      {"gap_pre", opt(e.gap_pre)},
      {"gap_post", opt(e.gap_post)},
      {"epsilon", opt(e.epsilon)},
      {"degenerate", e.degenerate},
      {"sum_sq_pre", e.sum_sq_pre},
      {"sum_sq_post", e.sum_sq_post},
      {"potential_pre", e.potential_pre},
      {"potential_post", e.potential_post},
      {"score", e.score},
      {"depth", e.depth},
      {"delta_V", e.delta_V},
      {"dim", e.dim},
      {"log_det", e.log_det},
  };
  if (!e.profile_pre.empty()) obj["profile_pre"] = e.profile_pre;
  if (!e.profile_post.empty()) obj["profile_post"] = e.profile_post;
  return obj.dump();
}

TraceEvent trace_event_from_json(const std::string& line) {
  const json obj = json::parse(line);
  TraceEvent e;
  e.step = obj.at("step").get<std::size_t>();
  const auto kind = obj.at("kind").get<std::string>();
  if (kind == "adjacent-swap") {
    e.kind = EventKind::adjacent_swap;
  } else if (kind == "deep-insertion") {
    e.kind = EventKind::deep_insertion;
  } else {
    throw std::runtime_error("unknown event kind '" + kind + "'");
  }
  e.k = obj.at("k").get<std::size_t>();
  e.j = obj.at("j").get<std::size_t>();
  e.mu_abs = read_opt<double>(obj, "mu_abs");
  e.gap_pre = read_opt<double>(obj, "gap_pre");
  e.gap_post = read_opt<double>(obj, "gap_post");
  e.epsilon = read_opt<double>(obj, "epsilon");
  e.degenerate = obj.at("degenerate").get<bool>();
  e.sum_sq_pre = obj.at("sum_sq_pre").get<double>();
  e.sum_sq_post = obj.at("sum_sq_post").get<double>();
  e.potential_pre = obj.at("potential_pre").get<double>();
  e.potential_post = obj.at("potential_post").get<double>();
  e.score = obj.at("score").get<double>();
  e.depth = obj.at("depth").get<std::size_t>();
  e.delta_V = obj.at("delta_V").get<double>();
  e.dim = obj.at("dim").get<std::size_t>();
  e.log_det = obj.at("log_det").get<double>();
  if (obj.contains("profile_pre")) e.profile_pre = obj["profile_pre"].get<std::vector<double>>();
  if (obj.contains("profile_post")) e.profile_post = obj["profile_post"].get<std::vector<double>>();
  return e;
}

void write_trace(std::ostream& out, const std::vector<TraceEvent>& events) {
  for (const auto& e : events) out << to_jsonl(e) << '\n';
}

std::vector<TraceEvent> read_trace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      events.push_back(trace_event_from_json(line));
    } catch (const std::exception& ex) {
      throw std::runtime_error("trace line " + std::to_string(number) + ": " + ex.what());
    }
  }
  return events;
}

namespace detail {

ProfileStats profile_stats(const GsoState& gso) { return {gso.sum_sq(), gso.potential()}; }

void finish_report(const Lattice& lattice, ReductionReport& report) {
  const GsoState& gso = lattice.gso();
  report.basis = lattice.basis();
  report.final_profile = gso.profile();
  report.final_sum_sq = static_cast<double>(gso.sum_sq());
  report.log_det = static_cast<double>(gso.sum_p());
  report.delta0 = root_hermite(lattice.basis(), gso);
  report.exact_fallbacks = lattice.exact_fallbacks();
}

}  // namespace detail

}  // namespace latmaj
