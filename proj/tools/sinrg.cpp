#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <map>
#include <string>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"
#include "sinrg/io.hpp"
#include "sinrg/montecarlo.hpp"
#include "sinrg/theory.hpp"

namespace fs = std::filesystem;
using namespace sinrg;
using json = nlohmann::ordered_json;

namespace {

struct Inputs {
  std::string config_path;
  std::map<std::string, std::string> flags;
  // rate
  std::string omega_path;
  std::string pi_path;
  double bound = 1.0;
};

void add_common(CLI::App* sub, Inputs& in) {
  sub->add_option("--config", in.config_path, "JSON configuration file");
  for (const auto& key : RunConfig::keys()) {
    std::string flag = "--" + key.name;
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    sub->add_option(flag, in.flags[key.name], key.help + " [" + key.default_value + "]");
  }
}

RunConfig resolve(CLI::App* sub, const Inputs& in, bool needs_kernel) {
  RunConfig config;
  if (!in.config_path.empty()) merge_config_file(config, in.config_path);
  for (const auto& key : RunConfig::keys()) {
    std::string flag = "--" + key.name;
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    if (sub->count(flag) > 0) config.set(key.name, in.flags.at(key.name), ValueSource::Flag);
  }
  config.validate(needs_kernel);
  const fs::path out = config.output_dir();
  write_text(out / "effective_config.json", config.effective_json());
  return config;
}

Metadata stamp(const RunConfig& config) { return {{"seed", config.get("seed")}, {"config_digest", config.digest()}}; }

std::string lambda_tag(double lambda) { return "lambda" + format_double(lambda); }

int emit_report(const RunConfig& config, ExperimentReport report, const std::string& name) {
  report.config_digest = config.digest();
  const fs::path out = config.output_dir();
  write_text(out / (name + ".csv"), report_csv(report));
  write_text(out / (name + ".json"), report_json(report));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " [" << c.detail << ']';
    std::cout << '\n';
  }
  std::cout << "wrote " << (out / (name + ".csv")).string() << '\n';
  if (!report.passed()) {
    std::cerr << "sinrg: verification failed\n";
    return 1;
  }
  return 0;
}

int run_simulate(const RunConfig& config) {
  const ModelParams model = config.model();
  const PartitionPtr partition = config.partition();
  const fs::path out = config.output_dir();
  const StreamSeed seed{config.count("seed"), 0};
  const unsigned workers = static_cast<unsigned>(config.count("workers"));
  json summary = json::array();
  for (double lambda : config.numbers("lambda")) {
    const MarkedConfiguration points = sample_configuration(model.domain, lambda, model.marks, seed);
    const SinrGraph graph = build_graph(points, model.sinr(lambda), workers);
    const std::string tag = lambda_tag(lambda);
    write_text(out / ("configuration_" + tag + ".csv"), configuration_csv(points, stamp(config)));
    write_text(out / ("edges_" + tag + ".csv"), edges_csv(graph, stamp(config)));
    write_text(out / ("L1_" + tag + ".csv"), measure_csv(empirical_mark_measure(points, partition), stamp(config)));
    write_text(out / ("L2_" + tag + ".csv"),
               pair_measure_csv(empirical_pair_measure(points, graph, partition), stamp(config)));
    summary.push_back({{"lambda", lambda},
                       {"vertices", graph.vertex_count},
                       {"edges", graph.edges.size()},
                       {"mean_degree", graph.mean_degree()}});
    std::cout << "lambda=" << format_double(lambda) << " vertices=" << graph.vertex_count
              << " edges=" << graph.edges.size() << '\n';
  }
  json doc;
  doc["seed"] = config.count("seed");
  doc["config_digest"] = config.digest();
  doc["graphs"] = summary;
  write_text(out / "simulate.json", doc.dump(2) + "\n");
  return 0;
}

int run_entropy(const RunConfig& config) {
  const ModelParams model = config.model();
  const KernelParams params = model.kernel(config.numbers("lambda").front());
  const EntropyMethod method = parse_entropy_method(config.get("entropy_method"));
  const EntropyEstimate h =
      method == EntropyMethod::Quadrature
          ? shannon_entropy_quadrature(params)
          : shannon_entropy_monte_carlo(params, std::max<std::uint64_t>(1, config.count("entropy_samples")),
                                        config.count("seed"), static_cast<unsigned>(config.count("workers")));
  json doc;
  doc["H_nats"] = h.value;
  doc["H_bits"] = h.value / std::log(2.0);
  doc["method"] = std::string(to_string(h.method));
  doc["error_estimate"] = h.error_estimate;
  doc["seed"] = config.count("seed");
  doc["config_digest"] = config.digest();
  const std::string text = doc.dump(2) + "\n";
  write_text(config.output_dir() / "entropy.json", text);
  std::cout << text;
  return 0;
}

BinnedMeasure attach(const BinnedMeasure& m, const PartitionPtr& partition) {
  if (m.layout() != partition->signature()) {
    throw UsageError("measure layout '" + m.layout() + "' does not match the configured partition '" +
                     partition->signature() + "'");
  }
  return BinnedMeasure(partition, m.masses());
}

BinnedPairMeasure attach(const BinnedPairMeasure& m, const PartitionPtr& partition) {
  if (m.layout() != partition->signature()) {
    throw UsageError("pair measure layout '" + m.layout() + "' does not match the configured partition '" +
                     partition->signature() + "'");
  }
  return BinnedPairMeasure(partition, m.masses());
}

int run_rate(const RunConfig& config, const Inputs& in) {
  if (in.omega_path.empty()) throw UsageError("rate needs --omega");
  if (!(in.bound > 0.0)) throw UsageError("--bound must be positive");
  const PartitionPtr partition = config.partition();
  const KernelParams params = config.model().kernel(config.numbers("lambda").front());
  const BinnedMeasure omega = attach(parse_measure_csv(read_text(in.omega_path)), partition);
  auto rate_json = [](const RateValue& r) -> json {
    if (!r.finite) return "inf";
    return r.value;
  };
  json doc;
  doc["I1"] = rate_json(rate_I1(omega, reference_measure(partition)));
  if (!in.pi_path.empty()) {
    const BinnedPairMeasure pi = attach(parse_pair_measure_csv(read_text(in.pi_path)), partition);
    doc["I_joint"] = rate_json(rate_joint(omega, pi, params, kMassTolerance));
    doc["kullback_action"] = kullback_action(omega, pi, in.bound, params).value;
    doc["bound"] = in.bound;
  }
  doc["seed"] = config.count("seed");
  doc["config_digest"] = config.digest();
  const std::string text = doc.dump(2) + "\n";
  write_text(config.output_dir() / "rate.json", text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marked SINR random graphs: simulation and verification"};
  app.require_subcommand(1);
  Inputs in;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"simulate", "sample configurations and SINR graphs, write CSV artifacts"},
      {"verify-connectivity", "edge frequency between two test points against the kernel formula"},
      {"entropy", "Shannon entropy H(Q x Q)"},
      {"aep", "log-likelihood rate against the entropy over a lambda sweep"},
      {"wlln", "empirical measure concentration over a lambda sweep"},
      {"concentration", "count concentration against the Poisson CDF and the Bennett bound"},
      {"rate", "rate functions and the Kullback action of measure files"},
      {"sweep", "run the suite named by the suite key"},
  };
  std::map<std::string, CLI::App*> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, in);
    handles[s.name] = sub;
  }
  handles["rate"]->add_option("--omega", in.omega_path, "measure CSV for the mark measure");
  handles["rate"]->add_option("--pi", in.pi_path, "pair measure CSV");
  handles["rate"]->add_option("--bound", in.bound, "sup-norm bound M of the Kullback action");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (const auto& [name, sub] : handles) {
      if (!sub->parsed()) continue;
      if (name == "simulate") return run_simulate(resolve(sub, in, false));
      const RunConfig config = resolve(sub, in, true);
      if (name == "entropy") return run_entropy(config);
      if (name == "rate") return run_rate(config, in);
      Suite suite;
      if (name == "verify-connectivity") {
        suite = Suite::Connectivity;
      } else if (name == "sweep") {
        suite = parse_suite(config.get("suite"));
      } else {
        suite = parse_suite(name);
      }
      const std::string artifact = name == "sweep" ? std::string(to_string(suite)) : name;
      return emit_report(config, run_experiment(config.plan(suite)), artifact);
    }
  } catch (const UsageError& e) {
    std::cerr << "sinrg: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sinrg: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
