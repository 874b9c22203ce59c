#include "hydro/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hydro/errors.hpp"

namespace hydro {
namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::ParseError, where + ": " + why);
}

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ValidationError, "invalid '" + field + "': " + why);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& key, const std::string& where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    parse_fail(where, "'" + key + "' expects a number, got '" + t + "'");
  }
  return v;
}

template <class Int>
Int to_int(const std::string& text, const std::string& key, const std::string& where) {
  const std::string t = trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    parse_fail(where, "'" + key + "' expects an integer, got '" + t + "'");
  }
  return v;
}

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Grid parse_grid(const std::string& text, const std::string& where) {
  std::string t = trim(text);
  std::replace(t.begin(), t.end(), 'X', 'x');
  std::vector<int> dims;
  std::size_t start = 0;
  while (true) {
    const auto pos = t.find('x', start);
    dims.push_back(to_int<int>(t.substr(start, pos - start), "grid", where));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (dims.size() == 1) dims = {dims[0], dims[0], dims[0]};
  if (dims.size() != 3) parse_fail(where, "'grid' expects N or NXxNYxNZ");
  for (int n : dims) {
    if (n < 8 || n % 2 != 0) invalid("grid", "sizes must be even and at least 8");
  }
  return Grid(dims[0], dims[1], dims[2]);
}

std::string grid_text(const Grid& g) {
  if (g.nx() == g.ny() && g.ny() == g.nz()) return std::to_string(g.nx());
  return std::to_string(g.nx()) + "x" + std::to_string(g.ny()) + "x" + std::to_string(g.nz());
}

const std::vector<std::string> kSubcommands = {"run-boussinesq", "run-primitive", "sweep",
                                               "verify-lemma", "energy-report"};

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return serialize_config(*this) == serialize_config(o);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "subcommand", "lambda",  "beta",       "gamma",       "f0",        "grid",
      "dt",         "t_end",   "dealias",    "lambdas",     "recipe",    "amplitude",
      "out",        "snapshot_every",        "seed",        "samples",   "coarse_grid",
      "fine_grid",  "band",    "system",     "threads"};
  return keys;
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& raw,
                      const std::string& where) {
  const std::string value = trim(raw);
  if (key == "subcommand") {
    c.subcommand = value;
  } else if (key == "lambda") {
    if (value.empty()) {
      c.lambda.reset();
      c.params.lambda = 1.0;
    } else {
      c.lambda = to_double(value, key, where);
      c.params.lambda = *c.lambda;
    }
  } else if (key == "beta") {
    c.params.beta = to_double(value, key, where);
  } else if (key == "gamma") {
    c.params.gamma = to_double(value, key, where);
  } else if (key == "f0") {
    c.params.f0 = to_double(value, key, where);
  } else if (key == "grid") {
    c.params.grid = parse_grid(value, where);
  } else if (key == "dt") {
    c.params.dt = to_double(value, key, where);
  } else if (key == "t_end") {
    c.params.t_end = to_double(value, key, where);
  } else if (key == "dealias") {
    if (value == "true") c.params.dealias = true;
    else if (value == "false") c.params.dealias = false;
    else parse_fail(where, "'dealias' expects true or false");
  } else if (key == "lambdas") {
    c.lambdas.clear();
    std::size_t start = 0;
    while (!value.empty()) {
      const auto pos = value.find(',', start);
      c.lambdas.push_back(to_double(value.substr(start, pos - start), key, where));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  } else if (key == "recipe") {
    c.recipe = value;
  } else if (key == "amplitude") {
    c.amplitude = to_double(value, key, where);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "snapshot_every") {
    c.snapshot_every = to_int<long>(value, key, where);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(value, key, where);
  } else if (key == "samples") {
    c.samples = to_int<int>(value, key, where);
  } else if (key == "coarse_grid") {
    c.coarse_grid = to_int<int>(value, key, where);
  } else if (key == "fine_grid") {
    c.fine_grid = to_int<int>(value, key, where);
  } else if (key == "band") {
    c.band = to_int<int>(value, key, where);
  } else if (key == "system") {
    c.system = value;
  } else if (key == "threads") {
    c.threads = to_int<int>(value, key, where);
  } else {
    parse_fail(where, "unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) parse_fail(where, "missing key");
    set_config_value(base, key, line.substr(eq + 1), where);
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  return parse_config(in, path.string(), std::move(base));
}

RunConfig apply_overrides(RunConfig config, const std::map<std::string, std::string>& flags) {
  for (const auto& key : config_keys()) {
    const auto it = flags.find(key);
    if (it == flags.end()) continue;
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    set_config_value(config, key, it->second, "--" + flag);
  }
  for (const auto& [key, value] : flags) {
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
      parse_fail("--" + key, "unknown option");
    }
  }
  return config;
}

void validate_config(const RunConfig& c) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
    invalid("subcommand", "unknown subcommand '" + c.subcommand + "'");
  }
  const bool runs = c.subcommand == "run-boussinesq" || c.subcommand == "run-primitive" ||
                    c.subcommand == "energy-report";
  if (runs && !c.lambda) invalid("lambda", "required for " + c.subcommand);
  if (c.subcommand == "sweep") {
    if (c.lambdas.empty()) invalid("lambdas", "required for sweep");
    for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
      if (!(c.lambdas[i] > 0.0 && c.lambdas[i] < 1.0)) {
        invalid("lambdas", "values must lie in (0, 1)");
      }
      if (i > 0 && !(c.lambdas[i] < c.lambdas[i - 1])) {
        invalid("lambdas", "must be strictly decreasing");
      }
    }
    if (!(c.params.t_end > 0.0)) invalid("t_end", "must be positive for sweep");
  }
  if (c.subcommand != "verify-lemma") {
    SolverParams p = c.params;
    if (!c.lambda) p.lambda = c.lambdas.empty() ? 1.0 : c.lambdas.front();
    p.validate();
    if (!(c.amplitude > 0.0) || !std::isfinite(c.amplitude)) {
      invalid("amplitude", "must be positive");
    }
  }
  if (c.snapshot_every < 0) invalid("snapshot_every", "must be nonnegative");
  if (c.samples < 1) invalid("samples", "must be at least 1");
  for (auto [name, n] : {std::pair{"coarse_grid", c.coarse_grid}, {"fine_grid", c.fine_grid}}) {
    if (n < 8 || n % 2 != 0) invalid(name, "must be even and at least 8");
  }
  if (c.band < 1 || 3 * c.band > c.coarse_grid) {
    invalid("band", "must satisfy 1 <= band <= coarse_grid / 3");
  }
  if (c.system != "boussinesq" && c.system != "primitive" && c.system != "both") {
    invalid("system", "must be boussinesq, primitive or both");
  }
  if (c.threads < 1) invalid("threads", "must be at least 1");
  if (c.out.empty()) invalid("out", "must not be empty");
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::string lambdas;
  for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
    if (i) lambdas += ",";
    lambdas += num(c.lambdas[i]);
  }
  return {
      {"subcommand", c.subcommand},
      {"lambda", c.lambda ? num(*c.lambda) : std::string()},
      {"beta", num(c.params.beta)},
      {"gamma", num(c.params.gamma)},
      {"f0", num(c.params.f0)},
      {"grid", grid_text(c.params.grid)},
      {"dt", num(c.params.dt)},
      {"t_end", num(c.params.t_end)},
      {"dealias", c.params.dealias ? "true" : "false"},
      {"lambdas", lambdas},
      {"recipe", c.recipe},
      {"amplitude", num(c.amplitude)},
      {"out", c.out},
      {"snapshot_every", std::to_string(c.snapshot_every)},
      {"seed", std::to_string(c.seed)},
      {"samples", std::to_string(c.samples)},
      {"coarse_grid", std::to_string(c.coarse_grid)},
      {"fine_grid", std::to_string(c.fine_grid)},
      {"band", std::to_string(c.band)},
      {"system", c.system},
      {"threads", std::to_string(c.threads)},
  };
}

std::string serialize_config(const RunConfig& c) {
  std::string text;
  for (const auto& [key, value] : config_entries(c)) text += key + " = " + value + "\n";
  return text;
}

int threads_from_environment() {
  const char* env = std::getenv("HYDROLAB_THREADS");
  if (!env || !*env) return 1;
  int n = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) {
    throw Error(ErrorCode::ValidationError, "invalid 'HYDROLAB_THREADS': must be a positive integer");
  }
  return n;
}

}  // namespace hydro
