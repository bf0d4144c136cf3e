#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sinrg/measures.hpp"
#include "sinrg/montecarlo.hpp"
#include "sinrg/pointprocess.hpp"
#include "sinrg/sinr_graph.hpp"

namespace sinrg {

inline constexpr int kSchemaVersion = 1;

enum class ValueSource { Default, File, Flag };

std::string_view to_string(ValueSource source);

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string help;
};

// Flat key/value run configuration. Values are kept as canonical text and
// converted on access; command-line flags mirror the keys one to one.
class RunConfig {
 public:
  RunConfig();

  static const std::vector<ConfigKey>& keys();
  static bool known(std::string_view key);

  void set(std::string_view key, std::string_view value, ValueSource source);
  const std::string& get(std::string_view key) const;
  ValueSource source(std::string_view key) const;

  double number(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::uint64_t count(std::string_view key) const;
  std::vector<double> numbers(std::string_view key) const;

  // Throws UsageError naming the violated constraint. `needs_kernel` adds
  // the integrability requirement alpha < d.
  void validate(bool needs_kernel = true) const;

  DeviceDomain domain() const;
  ModelParams model() const;
  PartitionPtr partition() const;
  ExperimentPlan plan(Suite suite) const;

  // FNV-1a of the canonical key=value listing.
  std::string digest() const;
  // Effective values and where each came from.
  std::string effective_json() const;
  std::filesystem::path output_dir() const;

 private:
  struct Entry {
    std::string value;
    ValueSource source = ValueSource::Default;
  };
  const Entry& entry(std::string_view key) const;
  std::map<std::string, Entry, std::less<>> values_;
};

// Reads a JSON object of flat keys into `config` as file values.
void merge_config_file(RunConfig& config, const std::filesystem::path& path);
void merge_config_text(RunConfig& config, std::string_view json_text, ValueSource source);

// Artifact metadata written as leading "# key=value" lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string configuration_csv(const MarkedConfiguration& config, const Metadata& meta = {});
MarkedConfiguration parse_configuration_csv(std::string_view text);
std::string edges_csv(const SinrGraph& graph, const Metadata& meta = {});
SinrGraph parse_edges_csv(std::string_view text);
std::string measure_csv(const BinnedMeasure& measure, const Metadata& meta = {});
BinnedMeasure parse_measure_csv(std::string_view text);
std::string pair_measure_csv(const BinnedPairMeasure& measure, const Metadata& meta = {});
BinnedPairMeasure parse_pair_measure_csv(std::string_view text);

std::string report_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace sinrg
