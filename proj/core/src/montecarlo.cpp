#include "sinrg/montecarlo.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"
#include "sinrg/parallel.hpp"

namespace sinrg {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kFieldA = 0xf1e1da;
constexpr std::uint64_t kFieldB = 0xf1e1db;
constexpr std::uint64_t kEdges = 0xed9e5;

StreamSeed derived_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t replicate) {
  return StreamSeed{mix64(master ^ tag), replicate};
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe m;
  if (v.empty()) return m;
  const double n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  m.mean = s / n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return m;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] < v[k - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + format_double(v[k]);
  return s;
}

// A mark inside each beta0 level, with the level probability under Q.
std::vector<std::pair<double, double>> level_marks(const BaseBeta& beta0, const MarkLaw& law) {
  const auto& breaks = beta0.breaks();
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < beta0.level_count(); ++k) {
    const double lo = k == 0 ? 0.0 : breaks[k - 1];
    const double hi = k == breaks.size() ? INFINITY : breaks[k];
    const double mark = std::isinf(hi) ? lo + 1.0 : 0.5 * (lo + hi);
    out.emplace_back(mark, law.survival(lo) - (std::isinf(hi) ? 0.0 : law.survival(hi)));
  }
  return out;
}

double upper_normal_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

ExperimentReport start_report(const ExperimentPlan& plan) {
  plan.validate();
  ExperimentReport r;
  r.suite = std::string(to_string(plan.suite));
  r.seed = plan.seed;
  return r;
}

void finish(ExperimentReport& r, Clock::time_point start) {
  r.runtime_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SinrParams ModelParams::sinr(double lambda) const {
  SinrParams p;
  p.path_loss = PathLoss(alpha);
  p.noise = noise;
  p.beta0 = beta0;
  p.lambda = lambda;
  p.split = split;
  p.convention = convention;
  p.validate();
  return p;
}

KernelParams ModelParams::kernel(double lambda) const {
  return make_kernel_params(domain, alpha, marks, beta0, lambda);
}

void ExperimentPlan::validate() const {
  if (replicates < 1) throw UsageError("replicate count must be at least 1");
  if (lambdas.empty()) throw UsageError("at least one lambda value is required");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0) || !std::isfinite(lambdas[k])) throw UsageError("lambda values must be positive");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1])) throw UsageError("lambda values must be increasing");
  }
  if (!(model.alpha > 0.0)) throw UsageError("alpha must be positive");
  if (!(distance > 0.0)) throw UsageError("test distance must be positive");
  if (divisions < 1 || mark_intervals < 0) throw UsageError("partition sizes must be positive");
  if (reference_refinement < 1) throw UsageError("reference refinement must be at least 1");
}

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::size_t ExperimentReport::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw UsageError("report has no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

double ExperimentReport::value(std::size_t row, const std::string& name) const { return rows.at(row)[column(name)]; }

double ExperimentReport::scalar(const std::string& name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return v;
  }
  throw UsageError("report has no scalar " + name);
}

double bennett_h(double u) { return u == 0.0 ? 0.0 : (1.0 + u) * std::log1p(u) - u; }

double bennett_bound(double lambda, double a) {
  if (!(a > 0.0)) throw UsageError("Bennett bound needs a > 0");
  return -std::expm1(-lambda * lambda * bennett_h(a) / (a * a));
}

double poisson_cdf(double mean, std::uint64_t k) {
  if (mean == 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(k) + 1.0, mean);
}

double sup_gaussian_threshold(const std::vector<double>& sd, double level) {
  if (!(level > 0.0 && level < 1.0)) throw UsageError("exceedance level must lie in (0, 1)");
  auto exceed = [&](double eps) {
    double log_stay = 0.0;
    for (double s : sd) {
      if (s <= 0.0) continue;
      log_stay += std::log1p(-2.0 * upper_normal_tail(eps / s));
    }
    return -std::expm1(log_stay);
  };
  double hi = 1e-300;
  for (double s : sd) hi = std::max(hi, s);
  double lo = 0.0;
  hi *= 50.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (exceed(mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> pair_measure_oracle_sd(const std::vector<double>& rho, const std::vector<double>& kernel,
                                           double lambda) {
  const std::size_t n = rho.size();
  if (kernel.size() != n * n) throw UsageError("kernel size does not match the reference measure");
  std::vector<double> sd(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double k = kernel[a * n + b];
      const double t = k * rho[a] * rho[b];
      double var;
      if (a == b) {
        var = 4.0 * k * k * rho[a] * rho[a] * rho[a] / lambda + 2.0 * t / (lambda * lambda);
      } else {
        var = k * k * rho[a] * rho[b] * (rho[a] + rho[b]) / lambda + t / (lambda * lambda);
      }
      sd[a * n + b] = std::sqrt(var);
    }
  }
  return sd;
}

ExperimentReport connectivity_experiment(const ExperimentPlan& plan) {
  const auto start = Clock::now();
  ExperimentReport report = start_report(plan);
  report.columns = {"lambda", "replicates", "edges", "estimate", "se", "theory", "z", "null_se"};
  const ModelParams& model = plan.model;
  const DeviceDomain& domain = model.domain;
  const int d = domain.dim();
  std::vector<double> rx_pos(d, 0.0), tx_pos(d, 0.0), left(d, 0.0), right(d, 0.0);
  tx_pos[0] = plan.distance;
  left[0] = -0.5 * plan.distance;
  right[0] = 0.5 * plan.distance;
  if (!domain.contains(tx_pos) || !domain.contains(left) || !domain.contains(right)) {
    throw UsageError("test points must lie inside the domain");
  }
  bool all_within = true;
  for (double lambda : plan.lambdas) {
    SinrParams sp = model.sinr(lambda);
    sp.convention = plan.connectivity_convention;
    const KernelParams kp = model.kernel(lambda);
    // Theory: p_lambda for fixed marks, its Q x Q average for random marks.
    double theory = 0.0;
    const double origin[3] = {0.0, 0.0, 0.0};
    if (plan.random_test_marks) {
      for (const auto& [ma, pa] : level_marks(model.beta0, model.marks)) {
        for (const auto& [mb, pb] : level_marks(model.beta0, model.marks)) {
          theory += pa * pb * p_lambda(origin, ma, tx_pos.data(), mb, kp);
        }
      }
    } else {
      theory = p_lambda(origin, plan.test_mark_x, tx_pos.data(), plan.test_mark_y, kp);
    }
    std::vector<std::uint8_t> hit(plan.replicates, 0);
    parallel_for(plan.replicates, plan.workers, [&](std::size_t r) {
      double mx = plan.test_mark_x, my = plan.test_mark_y;
      if (plan.random_test_marks) {
        RandomStream rng(StreamSeed{plan.seed, r}, Purpose::TestMarks);
        mx = model.marks.sample(rng);
        my = model.marks.sample(rng);
      }
      auto directed = [&](const StreamSeed& field_seed, double rx_mark, double tx_mark,
                          const std::vector<double>& rx, const std::vector<double>& tx) {
        MarkedConfiguration config = sample_configuration(domain, lambda, model.marks, field_seed);
        const std::size_t n = config.size();
        config.add_point(rx, rx_mark);
        config.add_point(tx, tx_mark);
        return sinr(config, n + 1, n, sp) >= sp.tau(rx_mark);
      };
      bool edge;
      if (plan.field == FieldMode::PalmCentered) {
        edge = directed(derived_seed(plan.seed, kFieldA, r), my, mx, rx_pos, tx_pos) &&
               directed(derived_seed(plan.seed, kFieldB, r), mx, my, rx_pos, tx_pos);
      } else {
        MarkedConfiguration config = sample_configuration(domain, lambda, model.marks,
                                                          derived_seed(plan.seed, kFieldA, r));
        const std::size_t n = config.size();
        config.add_point(left, mx);
        config.add_point(right, my);
        edge = sinr(config, n, n + 1, sp) >= sp.tau(my) && sinr(config, n + 1, n, sp) >= sp.tau(mx);
      }
      hit[r] = edge ? 1 : 0;
    });
    const double R = static_cast<double>(plan.replicates);
    const double edges = static_cast<double>(std::accumulate(hit.begin(), hit.end(), std::uint64_t{0}));
    const double phat = edges / R;
    const double se = std::sqrt(phat * (1.0 - phat) / R);
    const double null_se = std::sqrt(theory * (1.0 - theory) / R);
    double z = 0.0;
    if (se > 0.0) {
      z = (phat - theory) / se;
    } else {
      report.warnings.push_back("degenerate edge frequency " + format_double(phat) + " at lambda " +
                                format_double(lambda) + ": binomial SE is zero");
      z = phat == theory ? 0.0 : INFINITY;
    }
    if (!(std::fabs(z) < 3.0)) all_within = false;
    report.rows.push_back({lambda, R, edges, phat, se, theory, z, null_se});
  }
  report.checks.push_back({"edge frequency within 3 SE of exp(-lambda R_lambda)", all_within,
                           "field=" + std::string(to_string(plan.field))});
  finish(report, start);
  return report;
}

ExperimentReport aep_sweep(const ExperimentPlan& plan) {
  const auto start = Clock::now();
  ExperimentReport report = start_report(plan);
  report.columns = {"lambda", "mean", "se", "H", "gap", "replicates", "rel_gap", "mean_bits",
                    "density", "edge", "non_edge", "diagonal", "conditional_rate", "clamp_count"};
  const ModelParams& model = plan.model;
  const KernelParams kp0 = model.kernel(plan.lambdas.front());
  const EntropyEstimate hq = shannon_entropy_quadrature(kp0);
  const double H = hq.value;
  report.scalars.push_back({"H_quadrature", H});
  report.scalars.push_back({"H_quadrature_error", hq.error_estimate});
  if (plan.entropy_samples > 0) {
    const EntropyEstimate hm = shannon_entropy_monte_carlo(kp0, plan.entropy_samples, mix64(plan.seed ^ 0xe7), plan.workers);
    report.scalars.push_back({"H_monte_carlo", hm.value});
    report.scalars.push_back({"H_monte_carlo_se", hm.error_estimate});
    const double rel = H > 0.0 ? std::fabs(hm.value - H) / H : std::fabs(hm.value - H);
    report.scalars.push_back({"H_relative_difference", rel});
    report.checks.push_back({"entropy quadrature and Monte Carlo agree", rel < plan.entropy_agreement,
                             "relative difference " + format_double(rel)});
  }
  std::vector<double> gaps;
  for (double lambda : plan.lambdas) {
    const KernelParams kp = model.kernel(lambda);
    const ConnectionKernel kernel(kp);
    const SinrParams sp = model.sinr(lambda);
    std::vector<LikelihoodTerms> terms(plan.replicates);
    parallel_for(plan.replicates, plan.workers, [&](std::size_t r) {
      const MarkedConfiguration config = sample_configuration(model.domain, lambda, model.marks,
                                                              StreamSeed{plan.seed, r});
      const SinrGraph graph = plan.aep_law == GraphLaw::Sinr
                                  ? build_graph(config, sp, 1)
                                  : sample_kernel_graph(config, kernel, derived_seed(plan.seed, kEdges, r), 1);
      terms[r] = log_likelihood_rate(config, graph, kernel);
    });
    auto collect = [&](double LikelihoodTerms::*field) {
      std::vector<double> v(terms.size());
      for (std::size_t r = 0; r < terms.size(); ++r) v[r] = terms[r].*field;
      return mean_se(v);
    };
    const MeanSe headline = collect(&LikelihoodTerms::headline);
    std::uint64_t clamps = 0;
    double pairs = 0.0;
    for (const auto& t : terms) {
      clamps += t.clamp_count;
      pairs += 0.5 * static_cast<double>(t.points) * (static_cast<double>(t.points) - 1.0);
    }
    if (pairs > 0.0 && static_cast<double>(clamps) / pairs > plan.clamp_warning_fraction) {
      report.warnings.push_back("clamp count " + std::to_string(clamps) + " exceeds the warning fraction at lambda " +
                                format_double(lambda));
    }
    const double gap = std::fabs(headline.mean - H);
    gaps.push_back(gap);
    report.rows.push_back({lambda, headline.mean, headline.se, H, gap, static_cast<double>(plan.replicates),
                           H > 0.0 ? gap / H : gap, headline.mean / std::log(2.0),
                           collect(&LikelihoodTerms::density).mean, collect(&LikelihoodTerms::edge).mean,
                           collect(&LikelihoodTerms::non_edge).mean, collect(&LikelihoodTerms::diagonal).mean,
                           collect(&LikelihoodTerms::conditional_rate).mean, static_cast<double>(clamps)});
  }
  report.checks.push_back({"gap to H decreasing in lambda", strictly_decreasing(gaps), "gaps " + join(gaps)});
  const double final_rel = H > 0.0 ? gaps.back() / H : gaps.back();
  report.checks.push_back({"relative gap at the largest lambda below threshold", final_rel < plan.aep_final_gap,
                           "relative gap " + format_double(final_rel)});
  finish(report, start);
  return report;
}

ExperimentReport wlln_sweep(const ExperimentPlan& plan) {
  const auto start = Clock::now();
  ExperimentReport report = start_report(plan);
  report.columns = {"lambda", "replicates", "epsilon_l1", "epsilon_l2", "exceed_l1", "exceed_l2", "mean_sup_l1",
                    "mean_sup_l2", "within_3sigma_l1", "sinr_replicates", "sinr_mean_sup_l2"};
  const ModelParams& model = plan.model;
  const PartitionPtr partition =
      std::isnan(plan.mark_cutoff)
          ? make_partition(model.domain, plan.divisions, plan.mark_intervals, model.marks)
          : make_partition(model.domain, plan.divisions, plan.mark_intervals, model.marks, plan.mark_cutoff);
  const std::size_t bins = partition->bin_count();
  const BinnedMeasure reference = reference_measure(partition);
  const KernelParams kp_limit = model.kernel(plan.lambdas.front());
  const std::vector<double> kernel_bins = bin_kernel(*partition, kp_limit, plan.reference_refinement);
  const BinnedPairMeasure target = product_reference(reference, kp_limit, plan.reference_refinement);
  const BinnedPairMeasure target_center = product_reference(reference, kp_limit, 1);
  report.scalars.push_back({"bins", static_cast<double>(bins)});
  report.scalars.push_back({"reference_refinement_shift", sup_deviation(target, target_center)});

  // Oracle thresholds at the middle intensity.
  const double lambda_mid = plan.lambdas[plan.lambdas.size() / 2];
  double eps1 = plan.epsilon_l1, eps2 = plan.epsilon_l2;
  if (std::isnan(eps1)) {
    std::vector<double> sd(bins);
    for (std::size_t b = 0; b < bins; ++b) sd[b] = std::sqrt(reference[b] / lambda_mid);
    eps1 = sup_gaussian_threshold(sd, 0.5);
  }
  if (std::isnan(eps2)) {
    const auto sd_full = pair_measure_oracle_sd(reference.masses(), kernel_bins, lambda_mid);
    std::vector<double> sd;
    for (std::size_t a = 0; a < bins; ++a) {
      for (std::size_t b = a; b < bins; ++b) sd.push_back(sd_full[a * bins + b]);
    }
    eps2 = sup_gaussian_threshold(sd, 0.5);
  }
  report.scalars.push_back({"epsilon_l1", eps1});
  report.scalars.push_back({"epsilon_l2", eps2});

  std::vector<double> exceed1, exceed2;
  for (double lambda : plan.lambdas) {
    const KernelParams kp = model.kernel(lambda);
    const ConnectionKernel kernel(kp);
    std::vector<double> sup1(plan.replicates), sup2(plan.replicates), within(plan.replicates);
    parallel_for(plan.replicates, plan.workers, [&](std::size_t r) {
      const MarkedConfiguration config = sample_configuration(model.domain, lambda, model.marks,
                                                              StreamSeed{plan.seed, r});
      const BinnedMeasure l1 = empirical_mark_measure(config, partition);
      sup1[r] = sup_deviation(l1, reference);
      std::size_t inside = 0;
      for (std::size_t b = 0; b < bins; ++b) {
        if (std::fabs(l1[b] - reference[b]) <= 3.0 * std::sqrt(reference[b] / lambda)) ++inside;
      }
      within[r] = static_cast<double>(inside);
      if (plan.wlln_law == GraphLaw::Kernel) {
        sup2[r] = sup_deviation(
            sample_kernel_pair_measure(config, kernel, partition, derived_seed(plan.seed, kEdges, r), 1), target);
      } else {
        sup2[r] = sup_deviation(empirical_pair_measure(config, build_graph(config, model.sinr(lambda), 1), partition),
                                target);
      }
    });
    const double R = static_cast<double>(plan.replicates);
    double e1 = 0.0, e2 = 0.0, in = 0.0;
    for (std::size_t r = 0; r < plan.replicates; ++r) {
      e1 += sup1[r] > eps1 ? 1.0 : 0.0;
      e2 += sup2[r] > eps2 ? 1.0 : 0.0;
      in += within[r];
    }
    exceed1.push_back(e1 / R);
    exceed2.push_back(e2 / R);
    double sinr_sup = NAN;
    if (plan.sinr_diagnostic_replicates > 0) {
      std::vector<double> s(plan.sinr_diagnostic_replicates);
      const SinrParams sp = model.sinr(lambda);
      parallel_for(s.size(), plan.workers, [&](std::size_t r) {
        const MarkedConfiguration config = sample_configuration(model.domain, lambda, model.marks,
                                                                StreamSeed{plan.seed, r});
        s[r] = sup_deviation(empirical_pair_measure(config, build_graph(config, sp, 1), partition), target);
      });
      sinr_sup = mean_se(s).mean;
    }
    report.rows.push_back({lambda, R, eps1, eps2, e1 / R, e2 / R, mean_se(sup1).mean, mean_se(sup2).mean,
                           in / (R * static_cast<double>(bins)), static_cast<double>(plan.sinr_diagnostic_replicates),
                           sinr_sup});
  }
  report.checks.push_back({"L1 exceedance strictly decreasing", strictly_decreasing(exceed1), join(exceed1)});
  report.checks.push_back({"L2 exceedance strictly decreasing", strictly_decreasing(exceed2), join(exceed2)});
  const double final_within = report.rows.back()[report.column("within_3sigma_l1")];
  report.checks.push_back({"L1 per-bin deviations within 3 sigma at the largest lambda",
                           final_within >= plan.within_sigma_fraction, format_double(final_within)});
  finish(report, start);
  return report;
}

ExperimentReport count_concentration(const ExperimentPlan& plan) {
  const auto start = Clock::now();
  ExperimentReport report = start_report(plan);
  report.columns = {"lambda", "replicates", "frequency", "se", "poisson_cdf", "z", "bennett_bound"};
  bool within = true, above = true;
  for (double lambda : plan.lambdas) {
    std::vector<std::uint8_t> ok(plan.replicates, 0);
    const auto limit = static_cast<std::uint64_t>(std::floor(2.0 * lambda));
    parallel_for(plan.replicates, plan.workers, [&](std::size_t r) {
      RandomStream rng(StreamSeed{plan.seed, r}, Purpose::Count);
      ok[r] = sample_count(lambda, rng) <= limit ? 1 : 0;
    });
    const double R = static_cast<double>(plan.replicates);
    const double freq = static_cast<double>(std::accumulate(ok.begin(), ok.end(), std::uint64_t{0})) / R;
    const double cdf = poisson_cdf(lambda, limit);
    // The oracle's binomial SE stays positive when every draw lands inside.
    const double se = std::max(std::sqrt(freq * (1.0 - freq) / R), std::sqrt(cdf * (1.0 - cdf) / R));
    const double z = se > 0.0 ? (freq - cdf) / se : (freq == cdf ? 0.0 : INFINITY);
    const double bound = bennett_bound(lambda, 1.0);
    if (!(std::fabs(z) <= 3.0)) within = false;
    if (!(freq >= bound)) above = false;
    report.rows.push_back({lambda, R, freq, se, cdf, z, bound});
  }
  report.checks.push_back({"frequency within 3 SE of the Poisson CDF", within, ""});
  report.checks.push_back({"frequency at least the Bennett bound", above, ""});
  finish(report, start);
  return report;
}

ExperimentReport kernel_limit_sweep(const ExperimentPlan& plan) {
  const auto start = Clock::now();
  ExperimentReport report = start_report(plan);
  report.columns = {"pair", "distance", "mark_x", "mark_y", "lambda", "scaled_r_lambda", "r_limit", "rel_gap"};
  const auto pairs = plan.pairs.empty() ? default_test_pairs() : plan.pairs;
  const int d = plan.model.domain.dim();
  bool decreasing = true, small = true;
  std::string detail;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const TestPair& tp = pairs[k];
    std::vector<double> x(d, 0.0), y(d, 0.0);
    y[0] = tp.distance;
    if (!plan.model.domain.contains(y)) throw UsageError("kernel-limit test point outside the domain");
    std::vector<double> gaps;
    for (double lambda : plan.lambdas) {
      const KernelParams kp = plan.model.kernel(lambda);
      const double scaled = lambda * r_lambda(x.data(), tp.mark_x, y.data(), tp.mark_y, kp);
      const double limit = r_limit(x.data(), tp.mark_x, y.data(), tp.mark_y, kp);
      const double gap = limit > 0.0 ? std::fabs(scaled - limit) / limit : std::fabs(scaled - limit);
      gaps.push_back(gap);
      report.rows.push_back({static_cast<double>(k), tp.distance, tp.mark_x, tp.mark_y, lambda, scaled, limit, gap});
    }
    if (!strictly_decreasing(gaps)) decreasing = false;
    if (!(gaps.back() < plan.limit_final_gap)) small = false;
    detail += (k ? "; " : "") + join(gaps);
  }
  report.checks.push_back({"relative gap strictly decreasing for every pair", decreasing, detail});
  report.checks.push_back({"relative gap at the largest lambda below threshold", small, ""});
  finish(report, start);
  return report;
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
  switch (plan.suite) {
    case Suite::Connectivity: return connectivity_experiment(plan);
    case Suite::Aep: return aep_sweep(plan);
    case Suite::Wlln: return wlln_sweep(plan);
    case Suite::Concentration: return count_concentration(plan);
    case Suite::KernelLimit: return kernel_limit_sweep(plan);
  }
  throw UsageError("unknown suite");
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Connectivity: return "connectivity";
    case Suite::Aep: return "aep";
    case Suite::Wlln: return "wlln";
    case Suite::Concentration: return "concentration";
    case Suite::KernelLimit: return "kernel-limit";
  }
  return "unknown";
}

Suite parse_suite(std::string_view text) {
  for (Suite s : {Suite::Connectivity, Suite::Aep, Suite::Wlln, Suite::Concentration, Suite::KernelLimit}) {
    if (text == to_string(s)) return s;
  }
  throw UsageError("unknown suite '" + std::string(text) + "'");
}

std::string_view to_string(FieldMode mode) { return mode == FieldMode::PalmCentered ? "palm-centered" : "shared"; }

FieldMode parse_field_mode(std::string_view text) {
  if (text == "palm-centered") return FieldMode::PalmCentered;
  if (text == "shared") return FieldMode::Shared;
  throw UsageError("field mode must be palm-centered or shared");
}

std::string_view to_string(GraphLaw law) { return law == GraphLaw::Sinr ? "sinr" : "kernel"; }

GraphLaw parse_graph_law(std::string_view text) {
  if (text == "sinr") return GraphLaw::Sinr;
  if (text == "kernel") return GraphLaw::Kernel;
  throw UsageError("graph law must be sinr or kernel");
}

std::vector<TestPair> default_test_pairs() {
  return {{0.05, 0.5, 0.5}, {0.1, 0.4, 1.6}, {0.2, 1.5, 1.5}, {0.35, 0.3, 2.2}, {0.5, 2.5, 0.7}};
}

}  // namespace sinrg
