#include "sinrg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sinrg/error.hpp"
#include "sinrg/format.hpp"

namespace sinrg {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void constraint(bool ok, const std::string& what, const std::string& detail = "") {
  if (!ok) throw UsageError("constraint violated: " + what + (detail.empty() ? "" : " (" + detail + ")"));
}

// Splits CSV text into metadata, header and data lines.
struct CsvText {
  std::map<std::string, std::string, std::less<>> meta;
  std::vector<std::string_view> header;
  std::vector<std::vector<std::string_view>> rows;

  const std::string& at(std::string_view key) const {
    auto it = meta.find(key);
    if (it == meta.end()) throw UsageError("CSV metadata is missing '" + std::string(key) + "'");
    return it->second;
  }
};

CsvText read_csv(std::string_view text) {
  CsvText csv;
  bool have_header = false;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line = trim(line.substr(1));
      const std::size_t eq = line.find('=');
      if (eq != std::string_view::npos) csv.meta[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
      continue;
    }
    auto fields = split(line, ',');
    if (!have_header) {
      csv.header = fields;
      have_header = true;
    } else {
      if (fields.size() != csv.header.size()) throw UsageError("CSV row has the wrong number of fields");
      csv.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw UsageError("CSV has no header");
  return csv;
}

void write_meta(std::ostringstream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

std::string domain_shape_name(const DeviceDomain& d) { return d.shape() == Shape::Box ? "box" : "disk"; }

DeviceDomain make_domain(std::string_view shape, int dim, double size, std::string_view boundary) {
  if (shape == "disk") return DeviceDomain::disk(size);
  if (shape == "unit-disk") return DeviceDomain::unit_area_disk();
  if (shape == "box") {
    Boundary b;
    if (boundary == "periodic") {
      b = Boundary::Periodic;
    } else if (boundary == "open") {
      b = Boundary::Open;
    } else {
      throw UsageError("boundary must be open or periodic");
    }
    return DeviceDomain::box(dim, size, b);
  }
  throw UsageError("shape must be box, disk or unit-disk");
}

std::string canonical(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + canonical(v[k]);
    return s;
  }
  throw UsageError("configuration values must be numbers, strings or arrays");
}

}  // namespace

std::string_view to_string(ValueSource source) {
  switch (source) {
    case ValueSource::Default: return "default";
    case ValueSource::File: return "file";
    case ValueSource::Flag: return "flag";
  }
  return "default";
}

const std::vector<ConfigKey>& RunConfig::keys() {
  static const std::vector<ConfigKey> k = {
      {"schema_version", "1", "configuration schema version"},
      {"shape", "box", "domain shape: box, disk or unit-disk"},
      {"dim", "2", "dimension of a box domain"},
      {"size", "1", "box side or disk radius"},
      {"boundary", "periodic", "box boundary: open or periodic"},
      {"alpha", "1", "path-loss exponent"},
      {"lambda", "100", "intensity, or a comma-separated increasing list"},
      {"c", "1", "exponential mark rate"},
      {"beta0", "1", "base threshold: v0 or v0|b1:v1|b2:v2 by mark"},
      {"noise", "0", "noise power N0"},
      {"split", "gamma-one", "tau/gamma split: gamma-one or balanced"},
      {"convention", "paper-literal", "interference sum: paper-literal or exclude-desired"},
      {"seed", "1", "master seed"},
      {"replicates", "50", "replicate count"},
      {"workers", "0", "worker threads, 0 for all cores"},
      {"divisions", "4", "spatial cells per axis"},
      {"mark_intervals", "3", "equal-probability mark intervals below the tail"},
      {"suite", "aep", "suite for sweep: connectivity, aep, wlln, concentration, kernel-limit"},
      {"output_dir", "sinrg-out", "artifact directory"},
      {"distance", "0.3", "connectivity test distance"},
      {"field", "palm-centered", "connectivity field: palm-centered or shared"},
      {"test_marks", "random", "connectivity test marks: random or x,y"},
      {"entropy_samples", "10000000", "Monte Carlo samples for the entropy cross-check, 0 to skip"},
      {"entropy_method", "quadrature", "entropy estimator: quadrature or monte-carlo"},
      {"aep_law", "sinr", "AEP graph law: sinr or kernel"},
      {"wlln_law", "kernel", "WLLN pair-measure graph law: sinr or kernel"},
      {"epsilon_l1", "auto", "WLLN L1 threshold"},
      {"epsilon_l2", "auto", "WLLN L2 threshold"},
      {"refinement", "8", "sub-cell refinement of the pair reference measure"},
  };
  return k;
}

bool RunConfig::known(std::string_view key) {
  const auto& k = keys();
  return std::any_of(k.begin(), k.end(), [&](const ConfigKey& c) { return c.name == key; });
}

RunConfig::RunConfig() {
  for (const auto& k : keys()) values_[k.name] = Entry{k.default_value, ValueSource::Default};
}

void RunConfig::set(std::string_view key, std::string_view value, ValueSource source) {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown configuration key '" + std::string(key) + "'");
  it->second = Entry{std::string(trim(value)), source};
}

const RunConfig::Entry& RunConfig::entry(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown configuration key '" + std::string(key) + "'");
  return it->second;
}

const std::string& RunConfig::get(std::string_view key) const { return entry(key).value; }
ValueSource RunConfig::source(std::string_view key) const { return entry(key).source; }

double RunConfig::number(std::string_view key) const {
  try {
    return parse_double(get(key));
  } catch (const Error&) {
    throw UsageError("configuration key '" + std::string(key) + "' must be a number, got '" + get(key) + "'");
  }
}

std::int64_t RunConfig::integer(std::string_view key) const {
  try {
    return parse_int(get(key));
  } catch (const Error&) {
    throw UsageError("configuration key '" + std::string(key) + "' must be an integer, got '" + get(key) + "'");
  }
}

std::uint64_t RunConfig::count(std::string_view key) const {
  const std::int64_t v = integer(key);
  constraint(v >= 0, std::string(key) + " >= 0");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> RunConfig::numbers(std::string_view key) const {
  std::vector<double> out;
  for (std::string_view part : split(get(key), ',')) {
    try {
      out.push_back(parse_double(trim(part)));
    } catch (const Error&) {
      throw UsageError("configuration key '" + std::string(key) + "' must be a number list, got '" + get(key) + "'");
    }
  }
  return out;
}

void RunConfig::validate(bool needs_kernel) const {
  constraint(integer("schema_version") == kSchemaVersion, "schema_version == " + std::to_string(kSchemaVersion),
             "got " + get("schema_version"));
  const DeviceDomain d = domain();
  const double alpha = number("alpha");
  constraint(alpha > 0.0 && std::isfinite(alpha), "alpha > 0");
  if (needs_kernel) {
    constraint(alpha < d.dim(), "alpha < d", "alpha=" + format_double(alpha) + ", d=" + std::to_string(d.dim()));
  }
  const double c = number("c");
  constraint(c > 0.0 && std::isfinite(c), "c > 0");
  const auto lambdas = numbers("lambda");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    constraint(lambdas[k] > 0.0 && std::isfinite(lambdas[k]), "lambda > 0");
    if (k > 0) constraint(lambdas[k] > lambdas[k - 1], "lambda list increasing");
  }
  constraint(number("noise") >= 0.0, "noise >= 0");
  constraint(integer("replicates") >= 1, "replicates >= 1");
  constraint(integer("workers") >= 0, "workers >= 0");
  constraint(integer("divisions") >= 1, "divisions >= 1");
  constraint(integer("mark_intervals") >= 0, "mark_intervals >= 0");
  constraint(number("distance") > 0.0, "distance > 0");
  constraint(integer("refinement") >= 1, "refinement >= 1");
  count("entropy_samples");
  parse_entropy_method(get("entropy_method"));
  model();
  plan(parse_suite(get("suite")));
}

DeviceDomain RunConfig::domain() const {
  const auto dim = integer("dim");
  constraint(dim >= 1 && dim <= 3, "1 <= dim <= 3");
  const double size = number("size");
  constraint(size > 0.0 && std::isfinite(size), "size > 0");
  return make_domain(get("shape"), static_cast<int>(dim), size, get("boundary"));
}

ModelParams RunConfig::model() const {
  ModelParams m;
  m.domain = domain();
  m.alpha = number("alpha");
  m.marks = MarkLaw(number("c"));
  m.beta0 = BaseBeta::parse(get("beta0"));
  m.noise = number("noise");
  m.split = parse_tau_split(get("split"));
  m.convention = parse_convention(get("convention"));
  return m;
}

PartitionPtr RunConfig::partition() const {
  return make_partition(domain(), static_cast<int>(integer("divisions")), static_cast<int>(integer("mark_intervals")),
                        MarkLaw(number("c")));
}

ExperimentPlan RunConfig::plan(Suite suite) const {
  ExperimentPlan p;
  p.suite = suite;
  p.model = model();
  p.lambdas = numbers("lambda");
  p.replicates = count("replicates");
  p.seed = count("seed");
  p.workers = static_cast<unsigned>(count("workers"));
  p.distance = number("distance");
  p.field = parse_field_mode(get("field"));
  if (get("test_marks") == "random") {
    p.random_test_marks = true;
  } else {
    const auto marks = numbers("test_marks");
    if (marks.size() != 2 || !(marks[0] > 0.0) || !(marks[1] > 0.0)) {
      throw UsageError("test_marks must be random or two positive marks x,y");
    }
    p.random_test_marks = false;
    p.test_mark_x = marks[0];
    p.test_mark_y = marks[1];
  }
  p.entropy_samples = count("entropy_samples");
  p.aep_law = parse_graph_law(get("aep_law"));
  p.wlln_law = parse_graph_law(get("wlln_law"));
  p.divisions = static_cast<int>(integer("divisions"));
  p.mark_intervals = static_cast<int>(integer("mark_intervals"));
  p.epsilon_l1 = get("epsilon_l1") == "auto" ? NAN : number("epsilon_l1");
  p.epsilon_l2 = get("epsilon_l2") == "auto" ? NAN : number("epsilon_l2");
  p.reference_refinement = static_cast<int>(integer("refinement"));
  return p;
}

std::string RunConfig::digest() const {
  std::string listing;
  for (const auto& [k, e] : values_) {
    if (k == "output_dir" || k == "workers") continue;
    listing += k + '=' + e.value + '\n';
  }
  return hex64(fnv1a(listing));
}

std::string RunConfig::effective_json() const {
  json values = json::object(), sources = json::object();
  for (const auto& k : keys()) {
    values[k.name] = get(k.name);
    sources[k.name] = std::string(to_string(source(k.name)));
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["config_digest"] = digest();
  out["values"] = values;
  out["sources"] = sources;
  return out.dump(2) + "\n";
}

std::filesystem::path RunConfig::output_dir() const {
  if (const char* env = std::getenv("SINRG_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return get("output_dir");
}

void merge_config_text(RunConfig& config, std::string_view json_text, ValueSource source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("configuration must be a JSON object of flat keys");
  for (const auto& [key, value] : doc.items()) {
    if (!RunConfig::known(key)) throw UsageError("unknown configuration key '" + key + "'");
    config.set(key, canonical(value), source);
  }
}

void merge_config_file(RunConfig& config, const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw UsageError("configuration file not found: " + path.string());
  }
  merge_config_text(config, read_text(path), ValueSource::File);
}

std::string configuration_csv(const MarkedConfiguration& config, const Metadata& meta) {
  std::ostringstream out;
  const DeviceDomain& d = config.domain();
  write_meta(out, {{"shape", domain_shape_name(d)},
                   {"dim", std::to_string(d.dim())},
                   {"size", format_double(d.size())},
                   {"boundary", d.periodic() ? "periodic" : "open"},
                   {"lambda", format_double(config.lambda())},
                   {"seed_master", std::to_string(config.seed().master)},
                   {"seed_replicate", std::to_string(config.seed().replicate)}});
  write_meta(out, meta);
  for (int k = 0; k < d.dim(); ++k) out << 'x' << k << ',';
  out << "mark\n";
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double* p = config.position(i);
    for (int k = 0; k < d.dim(); ++k) out << format_double(p[k]) << ',';
    out << format_double(config.mark(i)) << '\n';
  }
  return out.str();
}

MarkedConfiguration parse_configuration_csv(std::string_view text) {
  const CsvText csv = read_csv(text);
  const int dim = static_cast<int>(parse_int(csv.at("dim")));
  const DeviceDomain domain = make_domain(csv.at("shape"), dim, parse_double(csv.at("size")), csv.at("boundary"));
  const StreamSeed seed{static_cast<std::uint64_t>(std::stoull(csv.at("seed_master"))),
                        static_cast<std::uint64_t>(std::stoull(csv.at("seed_replicate")))};
  MarkedConfiguration config(domain, parse_double(csv.at("lambda")), seed);
  if (csv.header.size() != static_cast<std::size_t>(dim) + 1) throw UsageError("configuration CSV has wrong columns");
  std::vector<double> p(dim);
  for (const auto& row : csv.rows) {
    for (int k = 0; k < dim; ++k) p[k] = parse_double(row[k]);
    config.add_point(p, parse_double(row[dim]));
  }
  return config;
}

std::string edges_csv(const SinrGraph& graph, const Metadata& meta) {
  std::ostringstream out;
  write_meta(out, {{"vertices", std::to_string(graph.vertex_count)}});
  write_meta(out, meta);
  out << "i,j\n";
  for (const Edge& e : graph.edges) out << e.i << ',' << e.j << '\n';
  return out.str();
}

SinrGraph parse_edges_csv(std::string_view text) {
  const CsvText csv = read_csv(text);
  SinrGraph g;
  g.vertex_count = static_cast<std::size_t>(parse_int(csv.at("vertices")));
  for (const auto& row : csv.rows) {
    const auto i = parse_int(row[0]), j = parse_int(row[1]);
    if (i < 0 || j <= i || static_cast<std::size_t>(j) >= g.vertex_count) throw UsageError("invalid edge in CSV");
    g.edges.push_back(Edge{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  }
  return g;
}

std::string measure_csv(const BinnedMeasure& measure, const Metadata& meta) {
  std::ostringstream out;
  write_meta(out, {{"layout", measure.layout()}});
  write_meta(out, meta);
  out << "bin,mass\n";
  for (std::size_t b = 0; b < measure.size(); ++b) out << b << ',' << format_double(measure[b]) << '\n';
  return out.str();
}

BinnedMeasure parse_measure_csv(std::string_view text) {
  const CsvText csv = read_csv(text);
  std::vector<double> masses(csv.rows.size());
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    if (parse_int(csv.rows[r][0]) != static_cast<std::int64_t>(r)) throw UsageError("measure CSV bins out of order");
    masses[r] = parse_double(csv.rows[r][1]);
  }
  return BinnedMeasure(csv.at("layout"), std::move(masses));
}

std::string pair_measure_csv(const BinnedPairMeasure& measure, const Metadata& meta) {
  std::ostringstream out;
  write_meta(out, {{"layout", measure.layout()}, {"bins", std::to_string(measure.bins())}});
  write_meta(out, meta);
  out << "a,b,mass\n";
  for (std::size_t a = 0; a < measure.bins(); ++a) {
    for (std::size_t b = 0; b < measure.bins(); ++b) out << a << ',' << b << ',' << format_double(measure.at(a, b)) << '\n';
  }
  return out.str();
}

BinnedPairMeasure parse_pair_measure_csv(std::string_view text) {
  const CsvText csv = read_csv(text);
  const auto n = static_cast<std::size_t>(parse_int(csv.at("bins")));
  if (csv.rows.size() != n * n) throw UsageError("pair measure CSV must list every bin pair");
  std::vector<double> masses(n * n);
  for (const auto& row : csv.rows) {
    const auto a = parse_int(row[0]), b = parse_int(row[1]);
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
      throw UsageError("pair measure CSV bin out of range");
    }
    masses[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = parse_double(row[2]);
  }
  return BinnedPairMeasure(csv.at("layout"), n, std::move(masses));
}

std::string report_json(const ExperimentReport& report) {
  auto num = [](double v) -> json {
    if (std::isfinite(v)) return v;
    return format_double(v);
  };
  json out;
  out["suite"] = report.suite;
  out["seed"] = report.seed;
  out["config_digest"] = report.config_digest;
  out["passed"] = report.passed();
  out["columns"] = report.columns;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) r[report.columns[k]] = num(row[k]);
    rows.push_back(r);
  }
  out["rows"] = rows;
  json scalars = json::object();
  for (const auto& [k, v] : report.scalars) scalars[k] = num(v);
  out["scalars"] = scalars;
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["checks"] = checks;
  out["warnings"] = report.warnings;
  return out.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_meta(out, {{"suite", report.suite}, {"seed", std::to_string(report.seed)}, {"config_digest", report.config_digest}});
  for (std::size_t k = 0; k < report.columns.size(); ++k) out << (k ? "," : "") << report.columns[k];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  return out.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeFailure("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw RuntimeFailure("failed writing " + path.string());
}

}  // namespace sinrg
