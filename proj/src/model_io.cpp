#include "jacobi/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + int(std::count(text.begin(), text.begin() + long(pos), '\n'));
}

// Line of a dotted field, found by locating each key after the previous one.
int line_of(const std::string& text, const std::string& field) {
  std::size_t pos = 0;
  std::istringstream parts(field);
  std::string key;
  bool found = false;
  while (std::getline(parts, key, '.')) {
    if (key.empty() || std::isdigit(static_cast<unsigned char>(key[0]))) continue;
    const auto p = text.find('"' + key + '"', pos);
    if (p == std::string::npos) break;
    pos = p, found = true;
  }
  return found ? line_at(text, pos) : 0;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), {}, line_at(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

struct Reader {
  const std::string& text;

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ConfigError(field + ": " + msg, field, line_of(text, field));
  }

  const json& get(const json& obj, const std::string& key, const std::string& field) const {
    if (!obj.is_object()) fail(field, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(field.empty() ? key : field + "." + key, "missing field");
    return *it;
  }

  double number(const json& obj, const std::string& key, const std::string& at,
                std::optional<double> fallback = std::nullopt) const {
    const std::string field = at.empty() ? key : at + "." + key;
    if (obj.is_object() && !obj.contains(key) && fallback) return *fallback;
    const json& v = get(obj, key, at);
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "must be finite");
    return d;
  }

  std::string string(const json& obj, const std::string& key, const std::string& at) const {
    const json& v = get(obj, key, at);
    if (!v.is_string()) fail(at.empty() ? key : at + "." + key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const json& obj, const std::string& key, const std::string& at) const {
    const std::string field = at.empty() ? key : at + "." + key;
    const json& v = get(obj, key, at);
    if (!v.is_array()) fail(field, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(field, "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  AFamily a_family(const json& a, const std::string& at) const {
    const std::string fam = string(a, "family", at);
    if (fam == "power_law")
      return PowerLaw{number(a, "gamma", at, 1.0), number(a, "p", at), number(a, "shift", at, 0.0)};
    if (fam == "geometric") return Geometric{number(a, "gamma", at, 1.0), number(a, "x", at)};
    if (fam == "stretched") return Stretched{number(a, "gamma", at, 1.0), number(a, "x", at), number(a, "q", at)};
    if (fam == "parity_perturbed")
      return ParityPerturbed{number(a, "p", at), number(a, "c_odd", at), number(a, "c_even", at)};
    fail(at + ".family", "unknown a-family '" + fam + "'");
  }

  BFamily b_family(const json& doc, const std::string& at) const {
    if (!doc.contains("b")) return ZeroDiagonal{};
    const json& b = doc["b"];
    const std::string field = at.empty() ? "b" : at + ".b";
    const std::string fam = string(b, "family", field);
    if (fam == "zero") return ZeroDiagonal{};
    if (fam == "power") return PowerDiagonal{number(b, "delta", field), number(b, "q", field)};
    if (fam == "exponential") return ExponentialDiagonal{number(b, "delta", field), number(b, "x", field)};
    if (fam == "constant_beta") return ConstantBeta{number(b, "beta", field)};
    fail(field + ".family", "unknown b-family '" + fam + "'");
  }

  CoefficientModel model(const json& doc, const std::string& at) const {
    if (!doc.is_object()) fail(at.empty() ? "model" : at, "expected an object");
    try {
      if (doc.contains("family") && doc["family"] == "tabulated") {
        std::optional<CoefficientModel> tail;
        if (doc.contains("tail")) tail = model(doc["tail"], at.empty() ? "tail" : at + ".tail");
        return CoefficientModel::tabulated(numbers(doc, "a", at), numbers(doc, "b", at), tail);
      }
      const std::string afield = at.empty() ? "a" : at + ".a";
      return CoefficientModel(a_family(get(doc, "a", at), afield), b_family(doc, at));
    } catch (const ModelError& e) {
      fail(at.empty() ? "a" : at, e.what());
    }
  }

  void version(const json& doc) const {
    const double v = number(doc, "schema_version", "");
    if (v != kSchemaVersion)
      fail("schema_version", "unsupported version " + std::to_string(int(v)) + " (expected " +
                                 std::to_string(kSchemaVersion) + ")");
  }
};

json model_doc(const CoefficientModel& m) {
  json doc;
  if (m.is_tabulated()) {
    std::vector<double> a, b;
    for (long n = 0; n < m.table_size(); ++n) a.push_back(m.a(n)), b.push_back(m.b(n));
    doc["family"] = "tabulated";
    doc["a"] = a;
    doc["b"] = b;
    if (m.tail()) doc["tail"] = model_doc(*m.tail());
    return doc;
  }
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PowerLaw>)
          doc["a"] = {{"family", "power_law"}, {"gamma", f.gamma}, {"p", f.p}, {"shift", f.shift}};
        else if constexpr (std::is_same_v<F, Geometric>)
          doc["a"] = {{"family", "geometric"}, {"gamma", f.gamma}, {"x", f.x}};
        else if constexpr (std::is_same_v<F, Stretched>)
          doc["a"] = {{"family", "stretched"}, {"gamma", f.gamma}, {"x", f.x}, {"q", f.q}};
        else
          doc["a"] = {{"family", "parity_perturbed"}, {"p", f.p}, {"c_odd", f.c_odd}, {"c_even", f.c_even}};
      },
      m.a_family());
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ZeroDiagonal>)
          doc["b"] = {{"family", "zero"}};
        else if constexpr (std::is_same_v<F, PowerDiagonal>)
          doc["b"] = {{"family", "power"}, {"delta", f.delta}, {"q", f.q}};
        else if constexpr (std::is_same_v<F, ExponentialDiagonal>)
          doc["b"] = {{"family", "exponential"}, {"delta", f.delta}, {"x", f.x}};
        else
          doc["b"] = {{"family", "constant_beta"}, {"beta", f.beta}};
      },
      m.b_family());
  return doc;
}

LoadedModel finish(const Reader& r, const json& doc, bool top_level) {
  if (top_level) r.version(doc);
  LoadedModel lm{r.model(doc, ""), {}, {}, {}};
  if (doc.contains("name")) lm.name = r.string(doc, "name", "");
  json canon = model_doc(lm.model);
  canon["schema_version"] = kSchemaVersion;
  lm.canonical = canon.dump();
  lm.hash = fnv1a_hex(lm.canonical);
  return lm;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

LoadedModel parse_model(const std::string& text) {
  const Reader r{text};
  return finish(r, parse_json(text), true);
}

LoadedModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string model_to_json(const CoefficientModel& model, const std::string& name) {
  json doc = model_doc(model);
  doc["schema_version"] = kSchemaVersion;
  if (!name.empty()) doc["name"] = name;
  return doc.dump(2);
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  const long steps = long(std::floor((hi - lo) / step * (1 + 1e-12)));
  for (long i = 0; i <= steps; ++i) out.push_back(lo + double(i) * step);
  return out;
}

Grid parse_grid(const std::string& spec) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof())
    throw ConfigError("grid: expected lo:hi:step, got '" + spec + "'", "grid");
  if (!(g.hi >= g.lo) || !(g.step > 0)) throw ConfigError("grid: need lo <= hi and step > 0", "grid");
  return g;
}

std::complex<double> parse_complex(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto bad = [&] { return ConfigError("z: cannot parse complex number '" + spec + "'", "z"); };
  if (s.empty()) throw bad();
  if (const auto comma = s.find(','); comma != std::string::npos) {
    try {
      std::size_t p1 = 0, p2 = 0;
      const double re = std::stod(s.substr(0, comma), &p1), im = std::stod(s.substr(comma + 1), &p2);
      if (p1 != comma || p2 != s.size() - comma - 1) throw bad();
      return {re, im};
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  if (s.back() != 'i' && s.back() != 'j') {
    std::size_t p = 0;
    try {
      const double re = std::stod(s, &p);
      if (p == s.size()) return {re, 0};
    } catch (const std::logic_error&) {
    }
    throw bad();
  }
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  auto coef = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t p = 0;
    const double v = std::stod(t, &p);
    if (p != t.size()) throw bad();
    return v;
  };
  try {
    if (split == 0) return {0, coef(s)};
    std::size_t p = 0;
    const double re = std::stod(s.substr(0, split), &p);
    if (p != split) throw bad();
    return {re, coef(s.substr(split))};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

ExperimentConfig parse_experiment(const std::string& text, const std::string& base_dir) {
  const Reader r{text};
  const json doc = parse_json(text);
  r.version(doc);
  ExperimentConfig cfg;
  cfg.command = r.string(doc, "command", "");
  static const char* const kCommands[] = {"classify", "jost", "poly", "asym", "eig", "mass", "identity",
                                          "carleman-density"};
  if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands))
    r.fail("command", "unknown command '" + cfg.command + "'");
  const json& m = r.get(doc, "model", "");
  if (m.is_string()) {
    cfg.model_path = m.get<std::string>();
    std::filesystem::path p(cfg.model_path);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    cfg.model = load_model(p.string());
  } else {
    cfg.model = finish(Reader{text}, m, false);
  }
  if (doc.contains("z")) {
    const json& z = doc["z"];
    auto one = [&](const json& v) -> std::complex<double> {
      if (v.is_number()) return {v.get<double>(), 0};
      if (v.is_string()) {
        try {
          return parse_complex(v.get<std::string>());
        } catch (const ConfigError& e) {
          r.fail("z", e.what());
        }
      }
      if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
      r.fail("z", "expected a number, a string such as \"1+2i\" or a [re, im] pair");
    };
    if (z.is_array() && !(z.size() == 2 && z[0].is_number() && z[1].is_number())) {
      for (const auto& v : z) cfg.z.push_back(one(v));
      if (cfg.z.empty()) r.fail("z", "empty list");
    } else {
      cfg.z.push_back(one(z));
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (g.is_string()) {
      try {
        cfg.grid = parse_grid(g.get<std::string>());
      } catch (const ConfigError& e) {
        r.fail("grid", e.what());
      }
    } else {
      cfg.grid = Grid{r.number(g, "lo", "grid"), r.number(g, "hi", "grid"), r.number(g, "step", "grid")};
      if (!(cfg.grid->hi >= cfg.grid->lo) || !(cfg.grid->step > 0)) r.fail("grid", "need lo <= hi and step > 0");
    }
  }
  auto positive = [&](const char* key, auto& dst) {
    if (!doc.contains(key)) return;
    const double v = r.number(doc, key, "");
    if (!(v > 0)) r.fail(key, "must be positive");
    dst = static_cast<std::decay_t<decltype(dst)>>(v);
  };
  positive("n", cfg.n);
  positive("n_trunc", cfg.n_trunc);
  positive("tol", cfg.tol);
  positive("precision_bits", cfg.precision_bits);
  if (doc.contains("out")) cfg.out = r.string(doc, "out", "");
  return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_experiment(read_file(path), base);
}

}  // namespace jacobi
