#include "qgd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qgd {

using nlohmann::json;

namespace {

// Best-effort line of a JSON path in the original text: each key is searched
// for after the position of its parent.
std::optional<int> locate(const std::string& text, const std::vector<std::string>& path) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  for (const auto& key : path) {
    const auto found = text.find("\"" + key + "\"", pos);
    if (found == std::string::npos) return std::nullopt;
    pos = found + 1;
  }
  if (path.empty()) return 1;
  return static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n')) + 1;
}

class Reader {
 public:
  Reader(const std::string& text, const std::string& source) : text_(text), source_(source) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& message) const {
    std::string where = source_;
    if (const auto line = locate(text_, path)) where += ":" + std::to_string(*line);
    std::string pointer;
    for (const auto& p : path) pointer += "/" + p;
    throw Error(ErrorCode::Config, where + ": " + (pointer.empty() ? "/" : pointer) + ": " + message);
  }

  const json& object(const json& parent, std::vector<std::string> path,
                     std::initializer_list<const char*> allowed) const {
    const json& node = path.empty() ? parent : parent.at(path.back());
    if (!node.is_object()) fail(path, "expected an object");
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : node.items()) {
      if (!keys.count(key)) {
        auto p = path;
        p.push_back(key);
        fail(p, "unknown key");
      }
    }
    return node;
  }

  double number(const json& obj, std::vector<std::string> path, const char* key, double fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
  }

  int integer(const json& obj, std::vector<std::string> path, const char* key, int fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
  }

  bool boolean(const json& obj, std::vector<std::string> path, const char* key, bool fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
  }

  std::string string(const json& obj, std::vector<std::string> path, const char* key,
                     const std::string& fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const json& obj, std::vector<std::string> path, const char* key,
                              const std::vector<double>& fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(path, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  template <typename Enum>
  Enum choice(const json& obj, std::vector<std::string> path, const char* key, Enum fallback,
              std::initializer_list<Enum> options) const {
    const std::string name = string(obj, path, key, to_string(fallback));
    for (Enum e : options) {
      if (name == to_string(e)) return e;
    }
    path.push_back(key);
    std::string expected;
    for (Enum e : options) expected += std::string(expected.empty() ? "" : ", ") + to_string(e);
    fail(path, "expected one of: " + expected);
  }

  void require(bool ok, std::vector<std::string> path, const char* key, const char* message) const {
    if (!ok) {
      path.push_back(key);
      fail(path, message);
    }
  }

 private:
  const std::string& text_;
  std::string source_;
};

PrimitiveState read_state(const Reader& r, const json& parent, std::vector<std::string> path,
                          const char* key, PrimitiveState fallback) {
  if (!parent.contains(key)) return fallback;
  path.push_back(key);
  const auto& obj = r.object(parent, path, {"rho", "u"});
  PrimitiveState s{r.number(obj, path, "rho", fallback.rho), r.number(obj, path, "u", fallback.u)};
  r.require(s.rho > 0.0, path, "rho", "must be > 0");
  return s;
}

}  // namespace

RiemannSetup RunConfig::riemann() const {
  RiemannSetup s;
  s.left = experiment.left;
  s.right = experiment.right;
  s.x0 = experiment.x0;
  s.x_min = mesh.x_min;
  s.x_max = mesh.x_min + mesh.n * mesh.h;
  s.h = mesh.h;
  s.t_end = experiment.t_end;
  return s;
}

SchemeConfig RunConfig::scheme_config() const {
  SchemeConfig cfg;
  cfg.alpha = scheme.alpha;
  cfg.alpha_s = scheme.alpha_s;
  cfg.regularization = scheme.variant;
  cfg.scheme = scheme.kind;
  cfg.beta = scheme.beta;
  cfg.c_ref = scheme.c_ref ? *scheme.c_ref : riemann().default_c_ref(gas.model());
  cfg.time_step_rule = scheme.time_step;
  return cfg;
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.scheme = scheme.kind;
  o.variant = scheme.variant;
  o.alpha_s = scheme.alpha_s;
  o.c_ref = scheme.c_ref.value_or(0.0);
  o.time_step_rule = scheme.time_step;
  o.thresholds = classifier;
  o.workers = sweep.workers;
  return o;
}

RunConfig default_config() {
  RunConfig c;
  for (int i = 2; i <= 10; ++i) c.sweep.alphas.push_back(i / 10.0);
  for (int j = 1; j <= 12; ++j) c.sweep.betas.push_back(0.06 * j);
  return c;
}

RunConfig parse_config(const json& doc, const std::string& source_text,
                       const std::string& source_name) {
  const Reader r(source_text, source_name);
  RunConfig c = default_config();
  const auto& root = r.object(doc, {}, {"gas", "scheme", "mesh", "experiment", "sweep",
                                        "classifier", "output"});

  if (root.contains("gas")) {
    const std::vector<std::string> p{"gas"};
    const auto& g = r.object(root, p, {"law", "p1", "gamma"});
    const std::string law = r.string(g, p, "law", "isentropic");
    r.require(law == "isentropic", p, "law", "only \"isentropic\" is supported in config files");
    c.gas.p1 = r.number(g, p, "p1", c.gas.p1);
    c.gas.gamma = r.number(g, p, "gamma", c.gas.gamma);
    r.require(c.gas.p1 > 0.0, p, "p1", "must be > 0");
    r.require(c.gas.gamma > 1.0, p, "gamma", "must be > 1");
  }

  if (root.contains("scheme")) {
    const std::vector<std::string> p{"scheme"};
    const auto& s = r.object(root, p, {"kind", "variant", "alpha", "alpha_s", "beta", "c_ref",
                                       "time_step"});
    c.scheme.kind = r.choice(s, p, "kind", c.scheme.kind, {SchemeKind::Standard, SchemeKind::Enthalpy});
    c.scheme.variant = r.choice(s, p, "variant", c.scheme.variant,
                                {Regularization::FullQGD, Regularization::SimplifiedQHD});
    c.scheme.alpha = r.number(s, p, "alpha", c.scheme.alpha);
    c.scheme.alpha_s = r.number(s, p, "alpha_s", c.scheme.alpha_s);
    c.scheme.beta = r.number(s, p, "beta", c.scheme.beta);
    if (s.contains("c_ref") && !s.at("c_ref").is_null()) {
      c.scheme.c_ref = r.number(s, p, "c_ref", 0.0);
      r.require(*c.scheme.c_ref > 0.0, p, "c_ref", "must be > 0 (or null for the default)");
    }
    c.scheme.time_step = r.choice(s, p, "time_step", c.scheme.time_step,
                                  {TimeStepRule::FixedReference, TimeStepRule::SignalSpeed});
    r.require(c.scheme.alpha > 0.0, p, "alpha", "must be > 0");
    r.require(c.scheme.alpha_s >= 0.0, p, "alpha_s", "must be >= 0");
    r.require(c.scheme.beta > 0.0, p, "beta", "must be > 0");
  }

  if (root.contains("mesh")) {
    const std::vector<std::string> p{"mesh"};
    const auto& m = r.object(root, p, {"x_min", "h", "n", "boundary"});
    c.mesh.x_min = r.number(m, p, "x_min", c.mesh.x_min);
    c.mesh.h = r.number(m, p, "h", c.mesh.h);
    c.mesh.n = r.integer(m, p, "n", c.mesh.n);
    c.mesh.boundary = r.choice(m, p, "boundary", c.mesh.boundary,
                               {Boundary::Periodic, Boundary::CopyOutflow});
    r.require(c.mesh.h > 0.0, p, "h", "must be > 0");
    r.require(c.mesh.n >= 3, p, "n", "must be >= 3");
  }

  if (root.contains("experiment")) {
    const std::vector<std::string> p{"experiment"};
    const auto& e = r.object(root, p, {"left", "right", "x0", "t_end", "record_every"});
    c.experiment.left = read_state(r, e, p, "left", c.experiment.left);
    c.experiment.right = read_state(r, e, p, "right", c.experiment.right);
    c.experiment.x0 = r.number(e, p, "x0", c.experiment.x0);
    c.experiment.t_end = r.number(e, p, "t_end", c.experiment.t_end);
    c.experiment.record_every = r.integer(e, p, "record_every", c.experiment.record_every);
    r.require(c.experiment.t_end > 0.0, p, "t_end", "must be > 0");
    r.require(c.experiment.record_every >= 1, p, "record_every", "must be >= 1");
    const double x_last = c.mesh.x_min + (c.mesh.n - 1) * c.mesh.h;
    r.require(c.mesh.x_min < c.experiment.x0 && c.experiment.x0 < x_last, p, "x0",
              "must lie strictly inside the mesh");
  }

  if (root.contains("sweep")) {
    const std::vector<std::string> p{"sweep"};
    const auto& s = r.object(root, p, {"alphas", "betas", "workers"});
    c.sweep.alphas = r.numbers(s, p, "alphas", c.sweep.alphas);
    c.sweep.betas = r.numbers(s, p, "betas", c.sweep.betas);
    c.sweep.workers = r.integer(s, p, "workers", c.sweep.workers);
    r.require(!c.sweep.alphas.empty(), p, "alphas", "must be non-empty");
    r.require(!c.sweep.betas.empty(), p, "betas", "must be non-empty");
    for (double a : c.sweep.alphas) r.require(a > 0.0, p, "alphas", "entries must be > 0");
    for (double b : c.sweep.betas) r.require(b > 0.0, p, "betas", "entries must be > 0");
    r.require(c.sweep.workers >= 1, p, "workers", "must be >= 1");
  }

  if (root.contains("classifier")) {
    const std::vector<std::string> p{"classifier"};
    const auto& k = r.object(root, p, {"tv_ratio", "corridor_low", "corridor_high"});
    c.classifier.tv_ratio = r.number(k, p, "tv_ratio", c.classifier.tv_ratio);
    c.classifier.corridor_low = r.number(k, p, "corridor_low", c.classifier.corridor_low);
    c.classifier.corridor_high = r.number(k, p, "corridor_high", c.classifier.corridor_high);
    r.require(c.classifier.tv_ratio >= 1.0, p, "tv_ratio", "must be >= 1");
    r.require(c.classifier.corridor_low > 0.0 && c.classifier.corridor_low <= 1.0, p,
              "corridor_low", "must be in (0, 1]");
    r.require(c.classifier.corridor_high >= 1.0, p, "corridor_high", "must be >= 1");
  }

  if (root.contains("output")) {
    const std::vector<std::string> p{"output"};
    const auto& o = r.object(root, p, {"directory", "csv", "svg"});
    c.output.directory = r.string(o, p, "directory", c.output.directory);
    c.output.csv = r.boolean(o, p, "csv", c.output.csv);
    c.output.svg = r.boolean(o, p, "svg", c.output.svg);
    r.require(!c.output.directory.empty(), p, "directory", "must be non-empty");
  }

  return c;
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset -> line:column.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto begin = text.begin();
    const auto stop = begin + static_cast<long>(offset == 0 ? 0 : offset - 1);
    const long line = std::count(begin, stop, '\n') + 1;
    const auto last_newline = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    const long column =
        static_cast<long>(offset) - (last_newline == std::string::npos ? 0 : static_cast<long>(last_newline) + 1);
    throw Error(ErrorCode::Config, source_name + ":" + std::to_string(line) + ":" +
                                       std::to_string(column) + ": " + e.what());
  }
  return parse_config(doc, text, source_name);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, path + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

json to_json(const RunConfig& c) {
  json j;
  j["gas"] = {{"law", "isentropic"}, {"p1", c.gas.p1}, {"gamma", c.gas.gamma}};
  j["scheme"] = {{"kind", to_string(c.scheme.kind)},
                 {"variant", to_string(c.scheme.variant)},
                 {"alpha", c.scheme.alpha},
                 {"alpha_s", c.scheme.alpha_s},
                 {"beta", c.scheme.beta},
                 {"c_ref", c.scheme.c_ref ? json(*c.scheme.c_ref) : json(nullptr)},
                 {"time_step", to_string(c.scheme.time_step)}};
  j["mesh"] = {{"x_min", c.mesh.x_min},
               {"h", c.mesh.h},
               {"n", c.mesh.n},
               {"boundary", to_string(c.mesh.boundary)}};
  j["experiment"] = {{"left", {{"rho", c.experiment.left.rho}, {"u", c.experiment.left.u}}},
                     {"right", {{"rho", c.experiment.right.rho}, {"u", c.experiment.right.u}}},
                     {"x0", c.experiment.x0},
                     {"t_end", c.experiment.t_end},
                     {"record_every", c.experiment.record_every}};
  j["sweep"] = {{"alphas", c.sweep.alphas}, {"betas", c.sweep.betas}, {"workers", c.sweep.workers}};
  j["classifier"] = {{"tv_ratio", c.classifier.tv_ratio},
                     {"corridor_low", c.classifier.corridor_low},
                     {"corridor_high", c.classifier.corridor_high}};
  j["output"] = {{"directory", c.output.directory}, {"csv", c.output.csv}, {"svg", c.output.svg}};
  return j;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::Config, "override '" + assignment + "' is not of the form key.path=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  std::string pointer;
  std::stringstream parts(key);
  for (std::string part; std::getline(parts, part, '.');) {
    if (part.empty()) throw Error(ErrorCode::Config, "override key '" + key + "' has an empty segment");
    pointer += "/" + part;
  }
  doc[json::json_pointer(pointer)] = value;
}

}  // namespace qgd
