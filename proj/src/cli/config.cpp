#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "evanskit/cli.hpp"

namespace evanskit::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& raw) {
  const std::string t = trim(raw);
  double v = 0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last)
    throw ConfigError("not a number: '" + t + "'");
  if (!std::isfinite(v)) throw ConfigError("value must be finite: '" + t + "'");
  return v;
}

long parse_integer(const std::string& raw) {
  const std::string t = trim(raw);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("not an integer: '" + t + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') throw ConfigError("trailing comma in list");
  for (const auto& x : out)
    if (x.empty()) throw ConfigError("empty list element");
  return out;
}

std::vector<cplx> complex_list(const std::string& s) {
  std::vector<cplx> out;
  for (const auto& x : split_list(s)) out.push_back(parse_complex(x));
  return out;
}

std::vector<double> real_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& x : split_list(s)) out.push_back(parse_real(x));
  return out;
}

struct Entry {
  std::string value;
  long line;
};
using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = [] {
    std::set<std::string> problem{"n", "q", "table_x", "table_q", "shift", "theta_plus", "theta_minus"};
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) problem.insert("q" + std::to_string(i) + std::to_string(j));
    return std::map<std::string, std::set<std::string>>{
        {"run", {"scenario", "seed"}},
        {"window", {"lambda1", "lambda2", "delta", "samples", "grid_step", "random_windows"}},
        {"problem", problem},
        {"reference", problem},
        {"interval", {"theta", "domain"}},
        {"disc", {"q", "gamma", "mu", "mu_hat", "lambda", "max_mode", "p", "tail_tol"}},
        {"pencil", {"example", "lambda0", "radius", "max_len"}},
    };
  }();
  return s;
}

// Wraps a value conversion so errors carry the line number.
template <class F>
auto at_line(const Entry& e, const std::string& key, F&& f) {
  try {
    return f(e.value);
  } catch (const ConfigError& err) {
    throw ConfigError(key + ": " + err.what(), e.line);
  }
}

ProblemSpec read_problem(const Section& s) {
  ProblemSpec p;
  const auto get = [&](const std::string& k) { return s.find(k); };
  if (auto it = get("n"); it != s.end()) {
    const long n = at_line(it->second, "n", parse_integer);
    if (n < 1 || n > 4) throw ConfigError("n must be between 1 and 4", it->second.line);
    p.n = static_cast<std::size_t>(n);
  }
  p.entries.assign(p.n * p.n, {});
  if (auto it = get("q"); it != s.end()) {
    const auto c = at_line(it->second, "q", complex_list);
    for (std::size_t i = 0; i < p.n; ++i) p.entries[i * p.n + i] = c;
  }
  for (const auto& [key, e] : s) {
    if (key.size() != 3 || key[0] != 'q') continue;
    const std::size_t i = static_cast<std::size_t>(key[1] - '1'), j = static_cast<std::size_t>(key[2] - '1');
    if (i >= p.n || j >= p.n)
      throw ConfigError(key + " is outside the " + std::to_string(p.n) + "x" + std::to_string(p.n) +
                            " potential",
                        e.line);
    p.entries[i * p.n + j] = at_line(e, key, complex_list);
  }
  const auto tx = get("table_x"), tq = get("table_q");
  if ((tx == s.end()) != (tq == s.end()))
    throw ConfigError("table_x and table_q must be given together",
                      (tx == s.end() ? tq : tx)->second.line);
  if (tx != s.end()) {
    p.tableX = at_line(tx->second, "table_x", real_list);
    p.tableQ = at_line(tq->second, "table_q", complex_list);
    if (p.tableX.size() != p.tableQ.size() || p.tableX.size() < 2)
      throw ConfigError("table_x and table_q need the same length, at least 2", tq->second.line);
    for (std::size_t i = 1; i < p.tableX.size(); ++i)
      if (!(p.tableX[i] > p.tableX[i - 1]))
        throw ConfigError("table_x must be strictly increasing", tx->second.line);
  }
  if (auto it = get("shift"); it != s.end()) p.shift = at_line(it->second, "shift", parse_complex);
  for (const char* k : {"theta_plus", "theta_minus"}) {
    auto it = get(k);
    if (it == s.end()) continue;
    auto v = at_line(it->second, k, complex_list);
    if (v.size() != 1 && v.size() != p.n * p.n)
      throw ConfigError(std::string(k) + " needs 1 or n*n entries", it->second.line);
    (std::string(k) == "theta_plus" ? p.thetaPlus : p.thetaMinus) = std::move(v);
  }
  return p;
}

void write_problem(std::ostream& os, const ProblemSpec& p) {
  os << "n = " << p.n << "\n";
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      const auto& c = p.entries[i * p.n + j];
      if (c.empty()) continue;
      os << "q" << i + 1 << j + 1 << " = ";
      for (std::size_t k = 0; k < c.size(); ++k) os << (k ? ", " : "") << format_cplx(c[k]);
      os << "\n";
    }
  if (!p.tableX.empty()) {
    os << "table_x = ";
    for (std::size_t k = 0; k < p.tableX.size(); ++k) os << (k ? ", " : "") << format_double(p.tableX[k]);
    os << "\ntable_q = ";
    for (std::size_t k = 0; k < p.tableQ.size(); ++k) os << (k ? ", " : "") << format_cplx(p.tableQ[k]);
    os << "\n";
  }
  os << "shift = " << format_cplx(p.shift) << "\n";
  for (const auto& [k, v] : {std::pair{"theta_plus", &p.thetaPlus}, std::pair{"theta_minus", &p.thetaMinus}}) {
    os << k << " = ";
    for (std::size_t i = 0; i < v->size(); ++i) os << (i ? ", " : "") << format_cplx((*v)[i]);
    os << "\n";
  }
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Interval: return "interval";
    case Scenario::Schrod1d: return "schrod1d";
    case Scenario::Disc: return "disc";
    case Scenario::Maslov: return "maslov";
    case Scenario::Pencil: return "pencil";
    case Scenario::Count: return "count";
  }
  return "?";
}

Scenario scenario_from_string(const std::string& s) {
  for (Scenario x : {Scenario::Interval, Scenario::Schrod1d, Scenario::Disc, Scenario::Maslov,
                     Scenario::Pencil, Scenario::Count})
    if (to_string(x) == s) return x;
  throw ConfigError("unknown scenario '" + s +
                    "' (expected interval, schrod1d, disc, maslov, pencil or count)");
}

cplx parse_complex(const std::string& raw) {
  std::string t;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ConfigError("empty complex value");
  if (t.back() != 'i') return parse_real(t);
  t.pop_back();
  // split at the last sign that is not an exponent sign or the leading sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      cut = k;
      break;
    }
  const auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  try {
    if (cut == std::string::npos) return {0.0, imag_of(t)};
    return {parse_real(t.substr(0, cut)), imag_of(t.substr(cut))};
  } catch (const ConfigError&) {
    throw ConfigError("not a complex number: '" + raw + "'");
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // no "-0"
  return buf;
}

std::string format_cplx(cplx z) {
  if (z.imag() == 0) return format_double(z.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real() + 0.0, z.imag());
  return buf;
}

void require_for(const RunConfig& c, Scenario s) {
  if (c.scenario && *c.scenario != s)
    throw ConfigError("config is for scenario '" + to_string(*c.scenario) + "', not '" +
                      to_string(s) + "'");
  const bool needsWindow = s == Scenario::Interval || s == Scenario::Schrod1d ||
                           s == Scenario::Maslov || s == Scenario::Count;
  if (needsWindow) {
    if (!c.window.lambda1) throw ConfigError("missing required key [window] lambda1");
    if (!c.window.lambda2) throw ConfigError("missing required key [window] lambda2");
    if (!(*c.window.lambda1 < *c.window.lambda2))
      throw ConfigError("[window] needs lambda1 < lambda2");
  }
  if (s == Scenario::Disc && !c.disc.lambda) throw ConfigError("missing required key [disc] lambda");
  if (s == Scenario::Count && !c.reference)
    throw ConfigError("missing required section [reference] for scenario 'count'");
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  std::map<std::string, long> sectionLine;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw ConfigError("unterminated section header", line);
      current = trim(l.substr(1, l.size() - 2));
      if (!schema().count(current)) throw ConfigError("unknown section [" + current + "]", line);
      if (sectionLine.count(current)) throw ConfigError("duplicate section [" + current + "]", line);
      sectionLine[current] = line;
      sections[current];
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    if (current.empty()) throw ConfigError("key outside of any section", line);
    const std::string key = trim(l.substr(0, eq)), value = trim(l.substr(eq + 1));
    if (!schema().at(current).count(key))
      throw ConfigError("unknown key '" + key + "' in [" + current + "]", line);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line);
    if (!sections[current].emplace(key, Entry{value, line}).second)
      throw ConfigError("duplicate key '" + key + "'", line);
  }

  RunConfig c;
  const auto has = [&](const std::string& sec) { return sections.count(sec) > 0; };
  const auto find = [&](const std::string& sec, const std::string& key) -> const Entry* {
    auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    auto it = s->second.find(key);
    return it == s->second.end() ? nullptr : &it->second;
  };
  const auto real_at = [&](const std::string& sec, const std::string& key) -> std::optional<double> {
    if (auto e = find(sec, key)) return at_line(*e, key, parse_real);
    return std::nullopt;
  };
  const auto int_at = [&](const std::string& sec, const std::string& key) -> std::optional<long> {
    if (auto e = find(sec, key)) return at_line(*e, key, parse_integer);
    return std::nullopt;
  };
  const auto cplx_at = [&](const std::string& sec, const std::string& key) -> std::optional<cplx> {
    if (auto e = find(sec, key)) return at_line(*e, key, parse_complex);
    return std::nullopt;
  };
  const auto range = [&](const std::string& sec, const std::string& key, bool ok,
                         const std::string& what) {
    if (!ok) throw ConfigError(key + " out of range: " + what, find(sec, key)->line);
  };

  if (auto e = find("run", "scenario"))
    c.scenario = at_line(*e, "scenario", [](const std::string& v) { return scenario_from_string(v); });
  if (auto e = find("run", "seed"))
    c.seed = at_line(*e, "seed", [](const std::string& v) {
      std::uint64_t s = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
      if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError("not an unsigned integer: '" + v + "'");
      return s;
    });

  c.window.lambda1 = real_at("window", "lambda1");
  c.window.lambda2 = real_at("window", "lambda2");
  if (auto v = real_at("window", "delta")) {
    c.window.delta = *v;
    range("window", "delta", *v > 0, "need delta > 0");
  }
  if (auto v = int_at("window", "samples")) {
    c.window.samples = *v;
    range("window", "samples", *v >= 4, "need at least 4");
  }
  if (auto v = real_at("window", "grid_step")) {
    c.window.gridStep = *v;
    range("window", "grid_step", *v > 0, "need grid_step > 0");
  }
  if (auto v = int_at("window", "random_windows")) {
    c.window.randomWindows = *v;
    range("window", "random_windows", *v >= 0 && *v <= 1000, "need 0..1000");
  }

  if (has("problem")) c.problem = read_problem(sections["problem"]);
  if (has("reference")) c.reference = read_problem(sections["reference"]);

  if (auto e = find("interval", "theta")) {
    c.interval.theta = at_line(*e, "theta", complex_list);
    range("interval", "theta", c.interval.theta.size() == 1 || c.interval.theta.size() == 4,
          "need 1 or 4 entries");
  }
  if (auto e = find("interval", "domain")) {
    const std::string d = e->value;
    if (d != "unit" && d != "symmetric")
      throw ConfigError("domain must be 'unit' or 'symmetric'", e->line);
    c.interval.symmetric = d == "symmetric";
  }

  if (auto e = find("disc", "q")) c.disc.q = at_line(*e, "q", real_list);
  if (auto v = real_at("disc", "gamma")) c.disc.gamma = *v;
  if (auto v = cplx_at("disc", "mu")) c.disc.mu = *v;
  if (auto v = cplx_at("disc", "mu_hat")) c.disc.muHat = *v;
  c.disc.lambda = real_at("disc", "lambda");
  if (auto v = int_at("disc", "max_mode")) {
    c.disc.maxMode = *v;
    range("disc", "max_mode", *v >= 8 && *v <= 100000, "need 8..100000");
  }
  if (auto v = int_at("disc", "p")) {
    c.disc.p = *v;
    range("disc", "p", *v >= 1 && *v <= 8, "need 1 <= p <= 8");
  }
  if (auto v = real_at("disc", "tail_tol")) {
    c.disc.tailTol = *v;
    range("disc", "tail_tol", *v > 0, "need tail_tol > 0");
  }

  if (auto e = find("pencil", "example")) {
    const std::string x = e->value;
    if (x != "diag1-lambda2" && x != "jordan2" && x != "semisimple3")
      throw ConfigError("unknown pencil example '" + x +
                            "' (expected diag1-lambda2, jordan2 or semisimple3)",
                        e->line);
    c.pencil.example = x;
  }
  if (auto v = cplx_at("pencil", "lambda0")) c.pencil.lambda0 = *v;
  if (auto v = real_at("pencil", "radius")) {
    c.pencil.radius = *v;
    range("pencil", "radius", *v > 0, "need radius > 0");
  }
  if (auto v = int_at("pencil", "max_len")) {
    c.pencil.maxLen = *v;
    range("pencil", "max_len", *v >= 1 && *v <= 64, "need 1..64");
  }

  if (c.scenario) require_for(c, *c.scenario);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n";
  if (c.scenario) os << "scenario = " << to_string(*c.scenario) << "\n";
  os << "seed = " << c.seed << "\n";

  os << "\n[window]\n";
  if (c.window.lambda1) os << "lambda1 = " << format_double(*c.window.lambda1) << "\n";
  if (c.window.lambda2) os << "lambda2 = " << format_double(*c.window.lambda2) << "\n";
  os << "delta = " << format_double(c.window.delta) << "\n"
     << "samples = " << c.window.samples << "\n"
     << "grid_step = " << format_double(c.window.gridStep) << "\n"
     << "random_windows = " << c.window.randomWindows << "\n";

  os << "\n[problem]\n";
  write_problem(os, c.problem);
  if (c.reference) {
    os << "\n[reference]\n";
    write_problem(os, *c.reference);
  }

  os << "\n[interval]\ntheta = ";
  for (std::size_t i = 0; i < c.interval.theta.size(); ++i)
    os << (i ? ", " : "") << format_cplx(c.interval.theta[i]);
  os << "\ndomain = " << (c.interval.symmetric ? "symmetric" : "unit") << "\n";

  os << "\n[disc]\n";
  if (!c.disc.q.empty()) {
    os << "q = ";
    for (std::size_t i = 0; i < c.disc.q.size(); ++i) os << (i ? ", " : "") << format_double(c.disc.q[i]);
    os << "\n";
  }
  os << "gamma = " << format_double(c.disc.gamma) << "\n"
     << "mu = " << format_cplx(c.disc.mu) << "\n"
     << "mu_hat = " << format_cplx(c.disc.muHat) << "\n";
  if (c.disc.lambda) os << "lambda = " << format_double(*c.disc.lambda) << "\n";
  os << "max_mode = " << c.disc.maxMode << "\n"
     << "p = " << c.disc.p << "\n"
     << "tail_tol = " << format_double(c.disc.tailTol) << "\n";

  os << "\n[pencil]\n"
     << "example = " << c.pencil.example << "\n"
     << "lambda0 = " << format_cplx(c.pencil.lambda0) << "\n"
     << "radius = " << format_double(c.pencil.radius) << "\n"
     << "max_len = " << c.pencil.maxLen << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize_config(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace evanskit::cli
