#include "isoclass/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace isoclass {

using json = nlohmann::json;

CsvError::CsvError(std::size_t line, const std::string& message)
    : ValidationError("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // 1-based source line per row
};

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw CsvError(number, "expected " + std::to_string(t.header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
    t.lines.push_back(number);
  }
  if (!have_header) throw CsvError(1, "missing header row");
  return t;
}

double parse_double(const std::string& field, std::size_t line, const std::string& what) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw CsvError(line, "malformed " + what + " '" + field + "'");
  }
  if (!std::isfinite(value)) throw CsvError(line, what + " must be finite, got '" + field + "'");
  return value;
}

Rational parse_exact(const std::string& field, std::size_t line, const std::string& what) {
  try {
    return parse_rational(field);
  } catch (const std::exception&) {
    throw CsvError(line, "malformed " + what + " '" + field + "'");
  }
}

Rational parse_number(const std::string& field, std::size_t line, const std::string& what,
                      NumberMode mode) {
  if (mode == NumberMode::kFloat) return to_rational(parse_double(field, line, what));
  return parse_exact(field, line, what);
}

int parse_sign(const std::string& field, std::size_t line, const std::string& what) {
  const double v = parse_double(field, line, what);
  if (v != 1.0 && v != -1.0) throw CsvError(line, what + " must be -1 or 1, got '" + field + "'");
  return v > 0 ? 1 : -1;
}

Point parse_point(const std::vector<std::string>& row, std::size_t from, std::size_t to,
                  std::size_t line) {
  Point x;
  for (std::size_t k = from; k < to; ++k) x.push_back(parse_double(row[k], line, "covariate"));
  return x;
}

SampleSchema detect(const Table& t) {
  const std::string first = lower(t.header.front());
  if (first == "y") return SampleSchema::kPlain;
  if (first == "w") return SampleSchema::kWeighted;
  if (first == "z") return SampleSchema::kTrial;
  throw CsvError(1, "cannot infer schema from header field '" + t.header.front() +
                        "' (expected y, w or z)");
}

void expect_header(const Table& t, const std::vector<std::string>& lead, std::size_t min_fields) {
  for (std::size_t k = 0; k < lead.size(); ++k) {
    if (k >= t.header.size() || lower(t.header[k]) != lead[k]) {
      std::string want;
      for (const std::string& s : lead) want += s + ",";
      throw CsvError(1, "header must start with " + want + "x1,...");
    }
  }
  if (t.header.size() < min_fields) throw CsvError(1, "header has no covariate columns");
}

WeightedSample build_sample(const Table& t, bool weighted, NumberMode mode) {
  const std::size_t lead = weighted ? 2 : 1;
  expect_header(t, weighted ? std::vector<std::string>{"w", "y"} : std::vector<std::string>{"y"},
                lead + 1);
  WeightedSample sample(t.header.size() - lead);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.lines[r];
    Rational w(1);
    if (weighted) {
      w = parse_number(row[0], line, "weight", mode);
      if (w < 0) throw CsvError(line, "row " + std::to_string(r + 1) + " has negative weight " + row[0]);
    }
    const int y = parse_sign(row[lead - 1], line, "label");
    sample.add_row(w, y, parse_point(row, lead, row.size(), line));
  }
  return sample;
}

std::vector<TrialRecord> build_trials(const Table& t, const LoadOptions& options) {
  expect_header(t, {"z", "d"}, 3);
  const bool has_e = lower(t.header.back()) == "e";
  if (has_e && t.header.size() < 4) throw CsvError(1, "header has no covariate columns");
  if (!has_e && !options.propensity) {
    throw CsvError(1, "trial file has no e column; supply a constant propensity");
  }
  const std::size_t end = has_e ? t.header.size() - 1 : t.header.size();
  std::vector<TrialRecord> records;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.lines[r];
    TrialRecord rec;
    rec.outcome = parse_double(row[0], line, "outcome");
    rec.treatment = parse_sign(row[1], line, "treatment");
    rec.covariates = parse_point(row, 2, end, line);
    rec.propensity = has_e ? parse_double(row.back(), line, "propensity") : *options.propensity;
    if (!(rec.propensity > 0.0 && rec.propensity < 1.0)) {
      throw CsvError(line, "propensity must lie in (0, 1), got " + std::to_string(rec.propensity));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  return in;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("model JSON is missing '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

LoadedSample read_sample(std::istream& in, const LoadOptions& options) {
  const Table t = read_table(in);
  const SampleSchema schema = options.schema == SampleSchema::kAuto ? detect(t) : options.schema;
  switch (schema) {
    case SampleSchema::kPlain:
      return build_sample(t, false, options.mode);
    case SampleSchema::kWeighted:
      return build_sample(t, true, options.mode);
    case SampleSchema::kTrial:
      return build_trials(t, options);
    case SampleSchema::kAuto:
      break;
  }
  throw ValidationError("unknown schema");
}

LoadedSample load_sample(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in = open_input(path);
  return read_sample(in, options);
}

WeightedSample load_weighted_sample(const std::filesystem::path& path, const LoadOptions& options) {
  LoadedSample s = load_sample(path, options);
  if (auto* w = std::get_if<WeightedSample>(&s)) return std::move(*w);
  throw ValidationError("'" + path.string() + "' is a trial file; expected y,x... or w,y,x...");
}

std::vector<TrialRecord> load_trial_records(const std::filesystem::path& path,
                                            const LoadOptions& options) {
  LoadOptions o = options;
  if (o.schema == SampleSchema::kAuto) o.schema = SampleSchema::kTrial;
  LoadedSample s = load_sample(path, o);
  if (auto* t = std::get_if<std::vector<TrialRecord>>(&s)) return std::move(*t);
  throw ValidationError("'" + path.string() + "' is not a trial file (z,d,x...[,e])");
}

DiscreteDistribution read_distribution(std::istream& in) {
  const Table t = read_table(in);
  expect_header(t, {"mass", "eta"}, 3);
  const std::size_t n_fields = t.header.size();
  const bool weighted = n_fields >= 5 && lower(t.header[n_fields - 2]) == "w_plus" &&
                        lower(t.header[n_fields - 1]) == "w_minus";
  const std::size_t end = weighted ? n_fields - 2 : n_fields;
  if (end < 3) throw CsvError(1, "header has no covariate columns");
  std::vector<Point> points;
  std::vector<Rational> mass, eta, wp, wm;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.lines[r];
    mass.push_back(parse_exact(row[0], line, "mass"));
    eta.push_back(parse_exact(row[1], line, "eta"));
    points.push_back(parse_point(row, 2, end, line));
    if (weighted) {
      wp.push_back(parse_exact(row[end], line, "w_plus"));
      wm.push_back(parse_exact(row[end + 1], line, "w_minus"));
    }
  }
  if (weighted) {
    return DiscreteDistribution::from_rationals(std::move(points), std::move(mass), std::move(eta),
                                                std::move(wp), std::move(wm));
  }
  return DiscreteDistribution::from_rationals(std::move(points), std::move(mass), std::move(eta));
}

DiscreteDistribution load_distribution(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_distribution(in);
}

std::vector<Point> read_points(std::istream& in) {
  const Table t = read_table(in);
  std::vector<Point> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back(parse_point(t.rows[r], 0, t.rows[r].size(), t.lines[r]));
  }
  return out;
}

std::vector<Point> load_points(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_points(in);
}

std::string weighted_sample_to_csv(const WeightedSample& sample) {
  std::ostringstream out;
  out << "w,y";
  for (std::size_t v = 0; v < sample.dim(); ++v) out << ",x" << v + 1;
  out << "\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out << shortest(sample.weight(i)) << ',' << sample.label(i);
    for (double x : sample.x(i)) out << ',' << shortest(x);
    out << "\n";
  }
  return out.str();
}

std::string model_to_json(const MonotoneClassifier& model, bool compact) {
  const MonotoneClassifier m = compact ? model.compact() : model;
  json j;
  j["type"] = "monotone";
  j["dim"] = m.dim();
  j["support"] = m.support();
  j["values"] = m.values();
  return j.dump(1) + "\n";
}

std::string model_to_json(const BernsteinClassifier& model) {
  json j;
  j["type"] = "bernstein";
  j["orders"] = model.orders();
  j["theta"] = model.theta();
  if (!model.scaling().is_identity()) {
    j["scale"] = {{"min", model.scaling().min}, {"max", model.scaling().max}};
  }
  return j.dump(1) + "\n";
}

AnyModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    const std::string type = field(j, "type").get<std::string>();
    if (type == "monotone") {
      const auto dim = field(j, "dim").get<std::size_t>();
      auto support = field(j, "support").get<std::vector<Point>>();
      auto values = field(j, "values").get<std::vector<int>>();
      for (const Point& p : support) {
        if (p.size() != dim) throw ValidationError("support point dimension does not match dim");
      }
      if (support.size() != values.size()) {
        throw ValidationError("support and values differ in length");
      }
      if (support.empty()) throw ValidationError("monotone model has no support points");
      return MonotoneClassifier(DominanceDag::build(std::move(support)), std::move(values));
    }
    if (type == "bernstein") {
      auto orders = field(j, "orders").get<std::vector<int>>();
      auto theta = field(j, "theta").get<std::vector<double>>();
      std::optional<CubeScaling> scaling;
      if (j.contains("scale") && !j.at("scale").is_null()) {
        const json& s = j.at("scale");
        scaling = CubeScaling{field(s, "min").get<std::vector<double>>(),
                              field(s, "max").get<std::vector<double>>()};
      }
      return BernsteinClassifier(std::move(orders), std::move(theta), std::move(scaling));
    }
    throw ValidationError("unknown model type '" + type + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid model JSON: ") + e.what());
  }
}

AnyModel load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

int predict(const AnyModel& model, PointView x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::random_device rd;
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename onto '" + path.string() + "'");
  }
}

}  // namespace isoclass
