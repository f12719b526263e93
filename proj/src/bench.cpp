#include "latmaj/bench.hpp"

#include "latmaj/deep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace latmaj {

namespace {

constexpr int kCsvSchemaVersion = 1;

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string trace_path(const std::string& dir, Family family, std::size_t d, const SelectorSpec& spec,
                       std::size_t trial) {
  std::string sel = to_string(spec);
  for (char& c : sel) {
    if (c == ':' || c == ',' || c == '=') c = '_';
  }
  std::ostringstream name;
  name << family_name(family) << "_d" << d << "_" << sel << "_t" << trial << ".jsonl";
  return (std::filesystem::path(dir) / name.str()).string();
}

}  // namespace

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          const std::lock_guard lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

TrialResult run_trial(Family family, std::size_t d, const SelectorSpec& selector, std::uint64_t seed,
                      const ReductionParams& params, const TraceSink& sink) {
  TrialResult out;
  out.family = family;
  out.d = d;
  out.selector = to_string(selector);
  out.seed = seed;
  try {
    GeneratorSpec gen;
    gen.family = family;
    gen.d = d;
    gen.seed = seed;
    const Basis basis = generate(gen);
    ReductionReport report = reduce(basis, params, selector, sink);
    out.N = report.N;
    out.W = report.W;
    out.scans = report.scans;
    out.delta0 = report.delta0;
    out.final_sum_sq = report.final_sum_sq;
    out.log_det = report.log_det;
    out.wall_ns = report.wall_ns;
    out.terminal = report.terminal;
    out.phi_monotone = report.phi_monotone;
    out.phi_increases = report.phi_increases;
    out.alpha0 = report.alpha0;
    out.exact_fallbacks = report.exact_fallbacks;
    out.final_profile = report.final_profile;
    out.contract_ok = report.terminal && report.contract_ok &&
                      terminal_contract_holds(report.basis, selector, params.delta, report.alpha_final,
                                              params.phi_guard);
  } catch (const std::exception& ex) {
    out.error = ex.what();
  }
  return out;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  const auto n = static_cast<double>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() >= 2) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_ = std::sqrt(ss / (n - 1)) / std::sqrt(n);
  }
  return s;
}

std::uint64_t config_hash(const BenchConfig& config, Family family, std::size_t d,
                          const SelectorSpec& selector) {
  std::ostringstream key;
  key << family_name(family) << '|' << d << '|' << to_string(selector) << '|' << config.n << '|'
      << std::setprecision(17) << config.params.delta << '|' << config.seed << '|'
      << config.params.refresh_every << '|' << config.params.max_moves << '|' << config.params.phi_guard;
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

BenchRow aggregate(const BenchConfig& config, Family family, std::size_t d, const SelectorSpec& selector,
                   const std::vector<TrialResult>& trials) {
  BenchRow row;
  row.family = family;
  row.d = d;
  row.selector = to_string(selector);
  row.seed_base = config.seed;
  row.config_hash = config_hash(config, family, d, selector);
  std::vector<TrialResult> sorted = trials;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.trial < b.trial; });
  std::vector<double> n, w, q, v, t, a;
  for (const auto& tr : sorted) {
    if (!tr.error.empty()) {
      ++row.n_failed;
      row.all_terminal = false;
      row.all_contract = false;
      continue;
    }
    ++row.n_trials;
    row.all_terminal = row.all_terminal && tr.terminal;
    row.all_contract = row.all_contract && tr.contract_ok;
    n.push_back(static_cast<double>(tr.N));
    w.push_back(static_cast<double>(tr.W));
    q.push_back(tr.delta0);
    v.push_back(tr.final_sum_sq);
    t.push_back(static_cast<double>(tr.wall_ns) * 1e-6);
    if (tr.alpha0) a.push_back(*tr.alpha0);
  }
  row.N = summarize(n);
  row.W = summarize(w);
  row.delta0 = summarize(q);
  row.final_sum_sq = summarize(v);
  row.wall_ms = summarize(t);
  if (!a.empty()) row.alpha0_mean = summarize(a).mean;
  return row;
}

GridResult run_grid(const BenchConfig& config, const std::function<void(const TrialResult&)>& on_trial) {
  validate(config.params);
  if (config.n == 0) throw std::invalid_argument("run_grid: n must be positive");
  struct Job {
    Family family;
    std::size_t d;
    std::size_t selector;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (Family f : config.families) {
    for (std::size_t d : config.dims) {
      for (std::size_t s = 0; s < config.selectors.size(); ++s) {
        for (std::size_t t = 0; t < config.n; ++t) jobs.push_back({f, d, s, t});
      }
    }
  }
  if (config.trace_dir) std::filesystem::create_directories(*config.trace_dir);

  GridResult result;
  result.trials.resize(jobs.size());
  std::mutex report_lock;
  parallel_for(jobs.size(), config.threads, [&](std::size_t i) {
    const Job& job = jobs[i];
    const SelectorSpec& spec = config.selectors[job.selector];
    ReductionParams params = config.params;
    TrialResult tr;
    if (config.trace_dir) {
      params.record_trace = true;
      std::ofstream out(trace_path(*config.trace_dir, job.family, job.d, spec, job.trial));
      tr = run_trial(job.family, job.d, spec, config.seed + job.trial, params,
                     [&](const TraceEvent& e) { out << to_jsonl(e) << '\n'; });
    } else {
      tr = run_trial(job.family, job.d, spec, config.seed + job.trial, params);
    }
    tr.trial = job.trial;
    result.trials[i] = std::move(tr);
    if (on_trial) {
      const std::lock_guard lock(report_lock);
      on_trial(result.trials[i]);
    }
  });

  std::size_t offset = 0;
  for (Family f : config.families) {
    for (std::size_t d : config.dims) {
      for (const auto& spec : config.selectors) {
        std::vector<TrialResult> cell(result.trials.begin() + static_cast<std::ptrdiff_t>(offset),
                                      result.trials.begin() + static_cast<std::ptrdiff_t>(offset + config.n));
        result.rows.push_back(aggregate(config, f, d, spec, cell));
        offset += config.n;
      }
    }
  }
  return result;
}

std::string csv_header() {
  return "schema_version,family,d,selector,n_trials,n_failed,seed_base,config_hash,"
         "N_mean,N_stderr,W_mean,W_stderr,delta0_mean,delta0_stderr,sum_sq_mean,sum_sq_stderr,"
         "alpha0_mean,all_terminal,all_contract,wall_ms_mean,wall_ms_stderr";
}

std::string csv_row(const BenchRow& r) {
  std::ostringstream s;
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << r.config_hash;
  // Selector strings may contain commas.
  s << kCsvSchemaVersion << ',' << family_name(r.family) << ',' << r.d << ",\"" << r.selector << "\","
    << r.n_trials << ',' << r.n_failed << ',' << r.seed_base << ',' << hash.str() << ','
    << fmt(r.N.mean) << ',' << fmt(r.N.stderr_) << ',' << fmt(r.W.mean) << ',' << fmt(r.W.stderr_) << ','
    << fmt(r.delta0.mean) << ',' << fmt(r.delta0.stderr_) << ',' << fmt(r.final_sum_sq.mean) << ','
    << fmt(r.final_sum_sq.stderr_) << ',' << fmt(r.alpha0_mean) << ',' << (r.all_terminal ? 1 : 0) << ','
    << (r.all_contract ? 1 : 0) << ',' << fmt(r.wall_ms.mean) << ',' << fmt(r.wall_ms.stderr_);
  return s.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

void write_trials_jsonl(std::ostream& out, const std::vector<TrialResult>& trials) {
  for (const auto& t : trials) {
    nlohmann::json obj = {
        {"family", family_name(t.family)},
        {"d", t.d},
        {"selector", t.selector},
        {"trial", t.trial},
        {"seed", t.seed},
        {"N", t.N},
        {"W", t.W},
        {"scans", t.scans},
        {"delta0", t.delta0},
        {"final_sum_sq", t.final_sum_sq},
        {"log_det", t.log_det},
        {"wall_ns", t.wall_ns},
        {"terminal", t.terminal},
        {"contract_ok", t.contract_ok},
        {"phi_increases", t.phi_increases},
        {"alpha0", t.alpha0 ? nlohmann::json(*t.alpha0) : nlohmann::json(nullptr)},
        {"exact_fallbacks", t.exact_fallbacks},
        {"error", t.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(t.error)},
    };
    out << obj.dump() << '\n';
  }
}

}  // namespace latmaj
