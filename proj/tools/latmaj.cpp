// Command-line front end: gen, reduce, verify, bench, universality.
#include "latmaj/bench.hpp"
#include "latmaj/deep.hpp"
#include "latmaj/latgen.hpp"
#include "latmaj/lll.hpp"
#include "latmaj/major.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace latmaj;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitNonTerminal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "20:200:20" or "30,40,60".
std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> out;
  const auto parts = split(s, ':');
  if (parts.size() == 3 && s.find(',') == std::string::npos) {
    const std::size_t lo = std::stoul(parts[0]);
    const std::size_t hi = std::stoul(parts[1]);
    const std::size_t step = std::stoul(parts[2]);
    if (step == 0 || lo > hi) throw UsageError("bad dimension range '" + s + "'");
    for (std::size_t d = lo; d <= hi; d += step) out.push_back(d);
    return out;
  }
  for (const auto& p : split(s, ',')) out.push_back(std::stoul(p));
  if (out.empty()) throw UsageError("no dimensions in '" + s + "'");
  return out;
}

// Comma-separated selectors; a piece with '=' but no ':' continues the
// previous selector's option list ("gdlll:K=auto,tau=0.01,ssgg").
std::vector<SelectorSpec> parse_selectors(const std::string& s) {
  std::vector<std::string> texts;
  for (const auto& piece : split(s, ',')) {
    if (!texts.empty() && piece.find('=') != std::string::npos && piece.find(':') == std::string::npos) {
      texts.back() += "," + piece;
    } else {
      texts.push_back(piece);
    }
  }
  std::vector<SelectorSpec> out;
  for (const auto& t : texts) out.push_back(parse_selector(t));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int cmd_gen(const std::string& family, std::size_t d, std::uint64_t seed, const std::string& q,
            std::size_t k, const std::string& out) {
  GeneratorSpec spec;
  spec.family = parse_family(family);
  spec.d = d;
  spec.seed = seed;
  if (!q.empty()) spec.q = Integer(q, 10);
  if (k != 0) spec.k = k;
  write_output(out, write_basis(generate(spec)));
  return kExitOk;
}

int cmd_reduce(const std::string& in, const std::string& selector, const ReductionParams& params,
               const std::string& trace, const std::string& out) {
  const Basis basis = read_basis(read_file(in));
  const SelectorSpec spec = parse_selector(selector);
  std::ofstream trace_out;
  TraceSink sink;
  if (!trace.empty()) {
    trace_out.open(trace);
    if (!trace_out) throw UsageError("cannot write '" + trace + "'");
    sink = [&](const TraceEvent& e) { trace_out << to_jsonl(e) << '\n'; };
  }
  const ReductionReport report = reduce(basis, params, spec, sink);
  nlohmann::json summary = {
      {"selector", to_string(spec)},
      {"d", basis.dim()},
      {"N", report.N},
      {"W", report.W},
      {"scans", report.scans},
      {"delta0", report.delta0},
      {"final_sum_sq", report.final_sum_sq},
      {"log_det", report.log_det},
      {"terminal", report.terminal},
      {"contract_ok", report.contract_ok},
      {"phi_increases", report.phi_increases},
      {"wall_ns", report.wall_ns},
      {"alpha0", report.alpha0 ? nlohmann::json(*report.alpha0) : nlohmann::json(nullptr)},
  };
  std::cerr << summary.dump() << '\n';
  if (!out.empty()) write_output(out, write_basis(report.basis));
  return report.terminal ? kExitOk : kExitNonTerminal;
}

int cmd_verify(const std::string& path, double delta) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  const std::vector<TraceEvent> events = read_trace(in);
  std::vector<TraceEvent> adjacent;
  std::vector<TraceEvent> deep;
  for (const auto& e : events) (e.kind == EventKind::adjacent_swap ? adjacent : deep).push_back(e);

  bool ok = true;
  auto report = [&](const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    ok = ok && pass;
  };

  std::size_t phi_bad = 0;
  for (const auto& e : events) phi_bad += e.potential_post < e.potential_pre ? 0 : 1;
  report("potential", phi_bad == 0, std::to_string(events.size() - phi_bad) + "/" +
                                        std::to_string(events.size()) + " events decrease the potential");

  if (!adjacent.empty()) {
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (const auto& e : adjacent) {
      if (e.degenerate || e.profile_pre.empty()) continue;
      ++checked;
      const bool t = is_t_transform(e.profile_pre, e.profile_post, e.k).ok;
      const bool m = majorizes(e.profile_pre, e.profile_post);
      if (!t || !m || !(e.sum_sq_post < e.sum_sq_pre)) ++bad;
    }
    report("t-transform", bad == 0,
           checked == 0 ? std::string("no profiles in trace (use --profiles)")
                        : std::to_string(checked - bad) + "/" + std::to_string(checked) + " swaps");
    if (deep.empty()) {
      const DissipationLedger ledger = ledger_from_trace(adjacent, delta);
      double worst = 0;
      for (double r : ledger.residuals) worst = std::max(worst, r);
      std::ostringstream d1;
      d1 << "max residual " << worst;
      report("dissipation", worst < 1e-8, d1.str());
      std::ostringstream d2;
      d2 << "relative residual " << ledger.telescoping_residual;
      report("telescoping", ledger.telescoping_residual < 1e-6, d2.str());
      std::ostringstream d3;
      d3 << "N=" << ledger.N << " bound=" << ledger.swap_bound;
      report("swap-bound", ledger.bound_ok, d3.str());
    }
  }
  if (!deep.empty()) {
    const RoiCheck roi = roi_bound_check(deep);
    std::ostringstream d;
    d << "W=" << roi.W << " bound=" << roi.bound;
    report("roi-bound", roi.ok, d.str());
  }
  return ok ? kExitOk : kExitNumerical;
}

int cmd_bench(BenchConfig config, const std::string& out, const std::string& trials_out) {
  const GridResult result = run_grid(config, [](const TrialResult& t) {
    std::cerr << family_name(t.family) << " d=" << t.d << " " << t.selector << " trial " << t.trial
              << (t.error.empty() ? "" : " error: " + t.error) << '\n';
  });
  std::ostringstream csv;
  write_csv(csv, result.rows);
  write_output(out, csv.str());
  if (!trials_out.empty()) {
    std::ofstream t(trials_out);
    write_trials_jsonl(t, result.trials);
  }
  bool numerical = false;
  bool nonterminal = false;
  for (const auto& t : result.trials) {
    if (!t.error.empty()) numerical = true;
    else if (!t.terminal) nonterminal = true;
  }
  if (numerical) return kExitNumerical;
  return nonterminal ? kExitNonTerminal : kExitOk;
}

int cmd_universality(const UniversalityConfig& config, const std::string& out) {
  const UniversalityResult r = universality(config);
  std::ostringstream s;
  s << "d";
  for (std::size_t d : r.dims) s << ',' << d;
  s << '\n';
  for (std::size_t a = 0; a < r.dims.size(); ++a) {
    s << r.dims[a];
    for (std::size_t b = 0; b < r.dims.size(); ++b) s << ',' << std::setprecision(6) << r.correlation[a][b];
    s << '\n';
  }
  write_output(out, s.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice reduction with majorization-guided deep-insertion selectors"};
  app.require_subcommand(1);

  std::string family = "uniform";
  std::size_t d = 40;
  std::uint64_t seed = 42;
  std::string q;
  std::size_t k = 0;
  std::string out;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark lattice basis");
  gen->add_option("--family", family, "uniform | gaussian | qary | gm")->required();
  gen->add_option("--d", d, "Dimension")->required();
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--q", q, "Modulus (qary default 1009; gm default random 10d-bit prime)");
  gen->add_option("--k", k, "q-ary block rank (default d/2)");
  gen->add_option("--out", out, "Output file (default stdout)");

  std::string in;
  std::string selector = "lll";
  std::string trace;
  ReductionParams params;
  auto* red = app.add_subcommand("reduce", "Reduce a basis; summary JSON goes to stderr");
  red->add_option("--in", in, "Basis file")->required();
  red->add_option("--selector", selector, "Selector, e.g. ssgg or thermal:alpha=1.5");
  red->add_option("--delta", params.delta, "Lovász parameter in (1/4, 1]");
  red->add_option("--max-moves", params.max_moves, "Move cap");
  red->add_option("--refresh", params.refresh_every, "Full GSO refresh period");
  red->add_option("--trace", trace, "Write one JSON event per line here");
  red->add_flag("--profiles", params.capture_profiles, "Include full profiles in trace events");
  red->add_flag("--phi-guard", params.phi_guard, "Deep selectors: skip moves that raise the LLL potential");
  red->add_option("--out", out, "Write the reduced basis here");

  std::string trace_in;
  double verify_delta = 0.99;
  auto* ver = app.add_subcommand("verify", "Check a trace against the per-step identities");
  ver->add_option("--trace", trace_in, "Trace file")->required();
  ver->add_option("--delta", verify_delta, "Lovász parameter of the run");

  std::string families = "gaussian,qary,gm";
  std::string dims = "20:200:20";
  std::string selectors = "lll,ssgg,deepvar,thermal-adaptive,gdlll";
  BenchConfig bench;
  std::string traces;
  std::string trials_out;
  auto* ben = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
  ben->add_option("--families", families, "Comma-separated families");
  ben->add_option("--dims", dims, "lo:hi:step or comma list");
  ben->add_option("--selectors", selectors, "Comma-separated selectors");
  ben->add_option("--n", bench.n, "Trials per cell");
  ben->add_option("--delta", bench.params.delta, "Lovász parameter");
  ben->add_option("--seed", bench.seed, "Base seed");
  ben->add_flag("--phi-guard", bench.params.phi_guard, "Deep selectors: skip moves that raise the LLL potential");
  ben->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  ben->add_option("--out", out, "CSV output (default stdout)");
  ben->add_option("--traces", traces, "Directory for per-trial JSONL traces");
  ben->add_option("--trials-out", trials_out, "Per-trial JSONL summary");

  std::string udims = "30,40,60,80";
  std::string ucounts = "100";
  UniversalityConfig ucfg;
  auto* uni = app.add_subcommand("universality", "Correlate mean normalized LLL profiles across dimensions");
  uni->add_option("--dims", udims, "Comma list of dimensions");
  uni->add_option("--n", ucounts, "Trials per dimension, one value or one per dimension");
  uni->add_option("--seed", ucfg.seed, "Base seed");
  uni->add_option("--delta", ucfg.delta, "Lovász parameter");
  uni->add_option("--grid", ucfg.grid, "Grid points");
  uni->add_option("--threads", ucfg.threads, "Worker threads (0 = all cores)");
  uni->add_option("--out", out, "Correlation CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(family, d, seed, q, k, out);
    if (*red) return cmd_reduce(in, selector, params, trace, out);
    if (*ver) return cmd_verify(trace_in, verify_delta);
    if (*ben) {
      for (const auto& f : split(families, ',')) bench.families.push_back(parse_family(f));
      bench.dims = parse_dims(dims);
      bench.selectors = parse_selectors(selectors);
      if (!traces.empty()) bench.trace_dir = traces;
      return cmd_bench(bench, out, trials_out);
    }
    if (*uni) {
      ucfg.dims = parse_dims(udims);
      ucfg.n.clear();
      for (const auto& c : split(ucounts, ',')) ucfg.n.push_back(std::stoul(c));
      return cmd_universality(ucfg, out);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
