#include "latmaj/bench.hpp"

#include "latmaj/lll.hpp"

#include <cmath>
#include <stdexcept>

namespace latmaj {

std::vector<double> resample_profile(const std::vector<double>& values, std::size_t grid) {
  if (values.empty() || grid < 2) throw std::invalid_argument("resample_profile: need values and grid >= 2");
  std::vector<double> out(grid);
  const double last = static_cast<double>(values.size() - 1);
  for (std::size_t t = 0; t < grid; ++t) {
    const double x = last * static_cast<double>(t) / static_cast<double>(grid - 1);
    const auto lo = static_cast<std::size_t>(std::floor(x));
    if (lo + 1 >= values.size()) {
      out[t] = values.back();
      continue;
    }
    const double frac = x - static_cast<double>(lo);
    out[t] = values[lo] + frac * (values[lo + 1] - values[lo]);
  }
  return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: need equal lengths >= 2");
  const auto n = static_cast<double>(a.size());
  double ma = 0;
  double mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0;
  double saa = 0;
  double sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

UniversalityResult universality(const UniversalityConfig& config) {
  if (config.dims.empty()) throw std::invalid_argument("universality: no dimensions");
  if (config.n.size() != 1 && config.n.size() != config.dims.size()) {
    throw std::invalid_argument("universality: give one n or one per dimension");
  }
  auto count = [&](std::size_t i) { return config.n.size() == 1 ? config.n[0] : config.n[i]; };
  for (std::size_t i = 0; i < config.dims.size(); ++i) {
    if (count(i) < 2) throw std::invalid_argument("universality: need n >= 2 per dimension");
  }

  struct Job {
    std::size_t dim_index;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < config.dims.size(); ++i) {
    for (std::size_t t = 0; t < count(i); ++t) jobs.push_back({i, t});
  }
  std::vector<std::vector<double>> normalized(jobs.size());
  ReductionParams params;
  params.delta = config.delta;
  parallel_for(jobs.size(), config.threads, [&](std::size_t i) {
    GeneratorSpec gen;
    gen.family = Family::uniform;
    gen.d = config.dims[jobs[i].dim_index];
    gen.seed = config.seed + jobs[i].trial;
    const ReductionReport report = lll_reduce(generate(gen), params);
    if (!report.terminal) throw NumericalError("universality: LLL run did not terminate");
    double l1 = 0;
    for (double v : report.final_profile) l1 += std::fabs(v);
    std::vector<double> p = report.final_profile;
    if (l1 > 0) {
      for (double& v : p) v /= l1;
    }
    normalized[i] = std::move(p);
  });

  UniversalityResult out;
  out.dims = config.dims;
  for (std::size_t i = 0; i < config.dims.size(); ++i) {
    std::vector<double> mean(config.dims[i], 0.0);
    std::size_t used = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].dim_index != i) continue;
      for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += normalized[j][c];
      ++used;
    }
    for (double& v : mean) v /= static_cast<double>(used);
    out.curves.push_back(resample_profile(mean, config.grid));
  }
  const std::size_t m = config.dims.size();
  out.correlation.assign(m, std::vector<double>(m, 1.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      out.correlation[a][b] = out.correlation[b][a] = pearson(out.curves[a], out.curves[b]);
    }
  }
  return out;
}

}  // namespace latmaj
