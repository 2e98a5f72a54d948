#include "fractb/scenario.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "fractb/errors.hpp"

namespace fractb {

namespace {

std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string key;
  std::string value;
  std::string where;  // "source:line" or the override text
};

std::vector<Entry> parse_lines(std::string_view text, std::string_view source) {
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(where + ": expected `key = value`");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError(where + ": empty key or value");
    entries.push_back({std::string(key), std::string(value), where});
  }
  return entries;
}

double parse_double(const Entry& e) {
  double out = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(e.where + ": `" + e.value + "` is not a number for key " + e.key);
  return out;
}

std::size_t parse_count(const Entry& e) {
  std::size_t out = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(e.where + ": `" + e.value + "` is not a count for key " + e.key);
  return out;
}

std::string fmt(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

struct Builder {
  Scenario s;
  double tf;
  std::size_t steps;
  bool sentinel_seen = false;
  std::array<bool, 4> have_x0{};
  std::array<double, 4> x0_values{};

  Builder() : tf(s.focp.grid.tf), steps(s.focp.grid.n_steps) {}

  void apply(const Entry& e) {
    if (e.key == "Lambda") s.params.Lambda = parse_double(e);
    else if (e.key == "beta") s.params.beta = parse_double(e);
    else if (e.key == "mu") s.params.mu = parse_double(e);
    else if (e.key == "k") s.params.k = parse_double(e);
    else if (e.key == "delta") s.params.delta = parse_double(e);
    else if (e.key == "epsilon") s.params.epsilon = parse_double(e);
    else if (e.key == "gamma") s.params.gamma = parse_double(e);
    else if (e.key == "alpha1") s.params.alpha1 = parse_double(e);
    else if (e.key == "alpha2") s.params.alpha2 = parse_double(e);
    else if (e.key == "S0") set_x0(0, e);
    else if (e.key == "L0") set_x0(1, e);
    else if (e.key == "I0") set_x0(2, e);
    else if (e.key == "T0") set_x0(3, e);
    else if (e.key == "x0") {
      if (e.value != "equilibrium")
        throw ParseError(e.where + ": x0 only supports the value `equilibrium`");
      sentinel_seen = true;
    } else if (e.key == "alpha") s.focp.alpha = parse_double(e);
    else if (e.key == "tf") tf = parse_double(e);
    else if (e.key == "steps") steps = parse_count(e);
    else if (e.key == "B") s.focp.B = parse_double(e);
    else if (e.key == "rho") s.focp.rho = parse_double(e);
    else if (e.key == "u_max") s.focp.u_max = parse_double(e);
    else if (e.key == "C") s.focp.C = parse_double(e);
    else if (e.key == "theta") s.focp.theta = parse_double(e);
    else if (e.key == "tol") s.focp.tol = parse_double(e);
    else if (e.key == "max_iter") s.focp.max_iter = parse_count(e);
    else if (e.key == "out") s.out_dir = e.value;
    else throw UnknownKey(e.where + ": unknown key `" + e.key + "`");
  }

  void set_x0(std::size_t c, const Entry& e) {
    have_x0[c] = true;
    x0_values[c] = parse_double(e);
  }

  Scenario finish() {
    const bool any_explicit = have_x0[0] || have_x0[1] || have_x0[2] || have_x0[3];
    if (any_explicit && sentinel_seen)
      throw ParseError("x0 = equilibrium conflicts with explicit S0/L0/I0/T0");
    if (any_explicit && !(have_x0[0] && have_x0[1] && have_x0[2] && have_x0[3]))
      throw ParseError("an explicit initial state needs all of S0, L0, I0, T0");

    s.focp.grid = TimeGrid(tf, steps);
    validate(s.params);
    validate(s.focp);
    if (any_explicit)
      s.x0 = {x0_values[0], x0_values[1], x0_values[2], x0_values[3]};
    else
      s.x0 = endemic_equilibrium(s.params);
    return s;
  }
};

}  // namespace

Scenario parse_scenario(std::string_view text, std::span<const std::string> overrides,
                        std::string_view source) {
  Builder b;
  for (const auto& e : parse_lines(text, source)) b.apply(e);
  for (const auto& o : overrides) {
    const auto entries = parse_lines(o, "<override>");
    if (entries.size() != 1)
      throw ParseError("override `" + o + "` must be a single key=value");
    b.apply(entries.front());
  }
  return b.finish();
}

Scenario load_scenario(const std::string& path, std::span<const std::string> overrides) {
  if (path.empty()) return parse_scenario({}, overrides);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file `" + path + "`");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), overrides, path);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "Lambda = " << fmt(s.params.Lambda) << "\n"
      << "beta = " << fmt(s.params.beta) << "\n"
      << "mu = " << fmt(s.params.mu) << "\n"
      << "k = " << fmt(s.params.k) << "\n"
      << "delta = " << fmt(s.params.delta) << "\n"
      << "epsilon = " << fmt(s.params.epsilon) << "\n"
      << "gamma = " << fmt(s.params.gamma) << "\n"
      << "alpha1 = " << fmt(s.params.alpha1) << "\n"
      << "alpha2 = " << fmt(s.params.alpha2) << "\n"
      << "S0 = " << fmt(s.x0.S) << "\n"
      << "L0 = " << fmt(s.x0.L) << "\n"
      << "I0 = " << fmt(s.x0.I) << "\n"
      << "T0 = " << fmt(s.x0.T) << "\n"
      << "alpha = " << fmt(s.focp.alpha) << "\n"
      << "tf = " << fmt(s.focp.grid.tf) << "\n"
      << "steps = " << s.focp.grid.n_steps << "\n"
      << "B = " << fmt(s.focp.B) << "\n"
      << "rho = " << fmt(s.focp.rho) << "\n"
      << "u_max = " << fmt(s.focp.u_max) << "\n"
      << "C = " << fmt(s.focp.C) << "\n"
      << "theta = " << fmt(s.focp.theta) << "\n"
      << "tol = " << fmt(s.focp.tol) << "\n"
      << "max_iter = " << s.focp.max_iter << "\n"
      << "out = " << s.out_dir << "\n";
  return out.str();
}

}  // namespace fractb
