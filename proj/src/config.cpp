#include "ultrafn/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ultra {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

const std::map<std::string, std::vector<std::string>> kSchema = {
    {"domain", {"dim", "axis0", "axis1"}},
    {"basis", {"family", "level", "levels", "quadrature"}},
    {"run", {"q", "f", "quantity", "exponent", "grid", "tol", "tie_tol", "max_n"}},
    {"output", {"dir", "csv", "json"}},
};

std::string suggest(const std::string& section, const std::string& key) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& [sec, keys] : kSchema) {
    if (sec != section) continue;
    for (const auto& k : keys) {
      const std::size_t d = edit_distance(key, k);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
  }
  if (best_d <= std::max<std::size_t>(2, key.size() / 2)) return best;
  return "";
}

double parse_double(int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

int parse_int(int line, const std::string& v) {
  const double x = parse_double(line, v);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) fail(line, "expected an integer, got '" + v + "'");
  return i;
}

std::vector<double> parse_doubles(int line, const std::string& v) {
  std::istringstream ss(v);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) out.push_back(parse_double(line, tok));
  if (out.empty()) fail(line, "expected one or more numbers");
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  int dim = 1;
  bool dim_set = false;
  std::array<std::optional<std::array<double, 2>>, 2> axes;
  std::vector<double> q_coords;
  bool levels_set = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!kSchema.count(section)) fail(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (section.empty()) fail(line, "key '" + key + "' outside any section");
    const auto& keys = kSchema.at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      std::string hint = suggest(section, key);
      fail(line, "unknown key '" + key + "' in [" + section + "]" +
                     (hint.empty() ? "" : " (did you mean '" + hint + "'?)"));
    }

    if (section == "domain") {
      if (key == "dim") {
        dim = parse_int(line, val);
        if (dim != 1 && dim != 2) fail(line, "dim must be 1 or 2");
        dim_set = true;
      } else {
        const int ax = key == "axis0" ? 0 : 1;
        const auto v = parse_doubles(line, val);
        if (v.size() != 2) fail(line, key + " needs two numbers: lower upper");
        if (!(v[0] < v[1]))
          fail(line, "axis " + std::to_string(ax) + ": lower must be < upper");
        axes[static_cast<std::size_t>(ax)] = std::array<double, 2>{v[0], v[1]};
      }
    } else if (section == "basis") {
      if (key == "family") {
        try {
          cfg.family = family_from_name(val);
        } catch (const std::exception& e) {
          fail(line, e.what());
        }
      } else if (key == "level") {
        const int l = parse_int(line, val);
        if (l < 1) fail(line, "level must be >= 1");
        cfg.levels = {l};
        levels_set = true;
      } else if (key == "levels") {
        const auto v = parse_doubles(line, val);
        cfg.levels.clear();
        for (double x : v) {
          const int l = static_cast<int>(x);
          if (static_cast<double>(l) != x || l < 1) fail(line, "levels must be integers >= 1");
          cfg.levels.push_back(l);
        }
        for (std::size_t i = 1; i < cfg.levels.size(); ++i)
          if (cfg.levels[i] <= cfg.levels[i - 1])
            fail(line, "levels must be strictly increasing");
        levels_set = true;
      } else {  // quadrature
        cfg.quadrature = parse_int(line, val);
        if (cfg.quadrature < 1) fail(line, "quadrature must be >= 1");
      }
    } else if (section == "run") {
      if (key == "q") {
        q_coords = parse_doubles(line, val);
      } else if (key == "f") {
        cfg.rhs = val;
      } else if (key == "quantity") {
        try {
          cfg.quantity = quantity_from_name(val);
        } catch (const std::exception& e) {
          fail(line, e.what());
        }
      } else if (key == "exponent") {
        cfg.exponent = parse_double(line, val);
        if (cfg.exponent < 0.0) fail(line, "exponent must be >= 0");
      } else if (key == "grid") {
        cfg.search.grid = parse_int(line, val);
        if (cfg.search.grid < 3) fail(line, "grid must be >= 3");
      } else if (key == "tol") {
        cfg.search.tol = parse_double(line, val);
        if (cfg.search.tol <= 0.0) fail(line, "tol must be positive");
      } else if (key == "tie_tol") {
        cfg.search.tie_tol_rel = parse_double(line, val);
        if (cfg.search.tie_tol_rel < 0.0) fail(line, "tie_tol must be >= 0");
      } else {  // max_n
        cfg.max_n = parse_int(line, val);
        if (cfg.max_n < 1) fail(line, "max_n must be positive");
      }
    } else {  // output
      if (key == "dir") cfg.out_dir = val;
      else if (key == "csv") cfg.csv_name = val;
      else cfg.json_name = val;
    }
  }

  if (!dim_set && axes[1]) dim = 2;
  std::array<double, 2> lo{0.0, 0.0}, hi{1.0, 1.0};
  for (int ax = 0; ax < dim; ++ax)
    if (axes[static_cast<std::size_t>(ax)]) {
      lo[static_cast<std::size_t>(ax)] = (*axes[static_cast<std::size_t>(ax)])[0];
      hi[static_cast<std::size_t>(ax)] = (*axes[static_cast<std::size_t>(ax)])[1];
    }
  cfg.domain = Domain(dim, lo, hi);

  if (!q_coords.empty()) {
    if (static_cast<int>(q_coords.size()) != dim)
      throw std::invalid_argument("config: q has " + std::to_string(q_coords.size()) +
                                  " coordinates but the domain dimension is " +
                                  std::to_string(dim));
    Point p;
    p.dim = dim;
    for (int i = 0; i < dim; ++i) p[i] = q_coords[static_cast<std::size_t>(i)];
    cfg.q = p;
  }
  if (!levels_set) cfg.levels = {cfg.family == FamilyKind::SpectralSine ? 16 : 5};
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ultra
