#include "laplaceqm/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "laplaceqm/error.hpp"
#include "laplaceqm/validation.hpp"

namespace laplaceqm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || !std::isfinite(d)) bad("'" + key + "' is not a number: " + v);
  return d;
}

int to_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long i = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0') bad("'" + key + "' is not an integer: " + v);
  return static_cast<int>(i);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

// Runs fn and converts library errors into exit code 2 with a one-line message.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::QuadratureFailure || e.code() == ErrorCode::SeriesDivergence) {
      err << "laplaceqm: evaluation failed: " << e.what() << '\n';
      return 3;
    }
    err << "laplaceqm: " << e.what() << '\n';
    return 2;
  }
}

State make_state(const RunConfig& cfg) {
  if (is_bound(cfg.spec.kind)) {
    const int n = cfg.n.value_or(first_principal(cfg.spec));
    return quantum_numbers(cfg.spec, n);
  }
  if (!cfg.energy) bad(std::string(kind_name(cfg.spec.kind)) + " needs an energy (E=...)");
  return *cfg.energy;
}

Method default_method(Kind k) {
  if (is_bound(k)) return Method::Residue;
  if (k == Kind::MorseCont) return Method::MorseRay;
  return Method::RealIntegral;
}

void emit(const RunConfig& cfg, const CsvTable& table, std::ostream& out) {
  if (cfg.out_path.empty()) {
    write_csv(out, table);
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) bad("cannot open output file " + cfg.out_path);
  write_csv(f, table);
}

std::string describe(const RunConfig& cfg) {
  const ProblemSpec& s = cfg.spec;
  std::ostringstream o;
  o << "kind=" << kind_name(s.kind) << " mu=" << format_value(s.mu);
  switch (s.kind) {
    case Kind::Sho1DEven:
    case Kind::Sho1DOdd:
    case Kind::Sho2D:
    case Kind::Sho3D:
    case Kind::Sho1DHermite: o << " omega=" << format_value(s.omega); break;
    case Kind::Coulomb2D:
    case Kind::Coulomb3D:
    case Kind::Coulomb2DCont:
    case Kind::Coulomb3DCont: o << " a0=" << format_value(s.a0); break;
    case Kind::Morse:
    case Kind::MorseCont: o << " a=" << format_value(s.morse_a) << " v0=" << format_value(s.morse_v0); break;
    default: break;
  }
  o << " m=" << s.m << " l=" << s.l;
  return o.str();
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("config line " + std::to_string(lineno) + " lacks '='");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) bad("config line " + std::to_string(lineno) + " has an empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_value_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) bad("cannot read config file " + path);
  return parse_key_values(f);
}

std::vector<double> GridSpec::points() const {
  std::vector<double> p(count);
  for (int i = 0; i < count; ++i)
    p[i] = (i + 1 == count) ? max : min + (max - min) * static_cast<double>(i) / (count - 1);
  return p;
}

RunConfig build_run_config(const KeyValues& kv) {
  RunConfig cfg;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  static const char* known[] = {"kind", "method", "grid", "grid_space", "radius", "steps", "tol", "out",
                                "mu",   "omega",  "a0",   "a",          "v0",     "m",     "l",   "n",
                                "E",    "n_max"};
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) bad("unknown key '" + k + "'");
  }

  const std::string* kind = get("kind");
  if (!kind) bad("missing kind");
  const auto parsed = kind_from_name(*kind);
  if (!parsed) bad("unknown kind '" + *kind + "'");
  cfg.spec.kind = *parsed;
  if (cfg.spec.kind == Kind::Morse || cfg.spec.kind == Kind::MorseCont) cfg.spec.mu = 0.5;

  if (auto v = get("mu")) cfg.spec.mu = to_double("mu", *v);
  if (auto v = get("omega")) cfg.spec.omega = to_double("omega", *v);
  if (auto v = get("a0")) cfg.spec.a0 = to_double("a0", *v);
  if (auto v = get("a")) cfg.spec.morse_a = to_double("a", *v);
  if (auto v = get("v0")) cfg.spec.morse_v0 = to_double("v0", *v);
  if (auto v = get("m")) cfg.spec.m = to_int("m", *v);
  if (auto v = get("l")) cfg.spec.l = to_int("l", *v);
  if (auto v = get("n")) cfg.n = to_int("n", *v);
  if (auto v = get("E")) cfg.energy = to_double("E", *v);
  if (auto v = get("n_max")) cfg.n_max = to_int("n_max", *v);
  if (auto v = get("out")) cfg.out_path = *v;
  if (auto v = get("radius")) cfg.contour.radius = to_double("radius", *v);
  if (auto v = get("steps")) cfg.contour.steps = to_int("steps", *v);
  if (auto v = get("tol")) cfg.contour.tol = to_double("tol", *v);
  try {
    validate(cfg.spec);
    validate(cfg.contour);
  } catch (const Error& e) {
    bad(e.what());
  }

  if (auto v = get("method")) {
    const auto m = method_from_name(*v);
    if (!m) bad("unknown method '" + *v + "'");
    cfg.method = *m;
  }
  if (auto v = get("grid")) {
    const auto parts = split(*v, ',');
    if (parts.size() != 3) bad("grid must be min,max,count");
    GridSpec g;
    g.min = to_double("grid", trim(parts[0]));
    g.max = to_double("grid", trim(parts[1]));
    g.count = to_int("grid", trim(parts[2]));
    if (g.count < 2) bad("grid count must be at least 2");
    if (!(g.min < g.max)) bad("grid min must be below max");
    cfg.grid = g;
  }
  if (auto v = get("grid_space")) {
    if (!cfg.grid) bad("grid_space given without grid");
    if (*v == "xi")
      cfg.grid->xi_space = true;
    else if (*v != "coordinate")
      bad("grid_space must be xi or coordinate");
  }
  if (cfg.method == Method::Circle) {
    if (!(cfg.contour.radius > 1.0)) bad("circle radius must exceed 1");
    if (cfg.contour.steps < 1000) bad("circle needs at least 1000 steps");
  }
  return cfg;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!is_bound(cfg.spec.kind)) bad(std::string(kind_name(cfg.spec.kind)) + " is not a bound problem");
    CsvTable t;
    t.header = {"n", "N", "E"};
    for (const auto& [qn, E] : spectrum_table(cfg.spec, cfg.n_max))
      t.rows.push_back({std::to_string(qn.n), std::to_string(qn.N), format_value(E)});
    t.footers.push_back(describe(cfg));
    t.footers.push_back("levels=" + std::to_string(t.rows.size()));
    emit(cfg, t, out);
    return 0;
  });
}

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.grid) bad("wavefunction needs a grid");
    const Method method = cfg.method.value_or(default_method(cfg.spec.kind));
    const State state = make_state(cfg);
    const double E = state_energy(cfg.spec, state);
    const PhiEvaluator phi = make_phi_evaluator(cfg.spec, state, method, cfg.contour);

    std::vector<double> coords = cfg.grid->points();
    if (cfg.grid->xi_space)
      for (double& c : coords) c = coordinate_of_xi(cfg.spec, E, c);

    // evaluate point by point so a failure can be reported with its index
    std::vector<Evaluation> values;
    values.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const double xi = xi_of_coordinate(cfg.spec, E, coords[i]);
      try {
        values.push_back(phi(xi));
      } catch (const Error& e) {
        err << "laplaceqm: evaluation failed at point " << i << " (xi=" << format_value(xi)
            << "): " << e.what() << '\n';
        return 3;
      }
    }
    std::size_t k = 0;
    const WavefunctionGrid g = assemble_wavefunction(
        cfg.spec, state, coords, [&](double) { return values[k++].value; }, method);

    CsvTable t;
    t.header = {"coordinate", "xi", "re_phi", "im_phi", "re_psi", "im_psi", "method"};
    for (const auto& s : g.entries)
      t.rows.push_back({format_value(s.coordinate), format_value(s.xi), format_value(s.phi.real()),
                        format_value(s.phi.imag()), format_value(s.psi.real()), format_value(s.psi.imag()),
                        method_name(method)});
    std::size_t flagged = 0;
    for (const auto& v : values) flagged += v.precision_loss ? 1 : 0;
    t.footers.push_back(describe(cfg));
    t.footers.push_back("E=" + format_value(E) + (g.qn ? " n=" + std::to_string(g.qn->n) + " N=" +
                                                             std::to_string(g.qn->N)
                                                       : std::string()));
    if (!g.angular.empty()) t.footers.push_back("angular " + g.angular);
    t.footers.push_back("precision_loss_points=" + std::to_string(flagged));
    emit(cfg, t, out);
    return 0;
  });
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.grid) bad("validate needs a grid");
    if (!is_continuum(cfg.spec.kind) || cfg.spec.kind == Kind::MorseCont)
      bad("validate compares the three continuum routes; " + std::string(kind_name(cfg.spec.kind)) +
          " has no such set");
    if (!cfg.energy) bad(std::string(kind_name(cfg.spec.kind)) + " needs an energy (E=...)");
    const std::vector<double> grid = cfg.grid->points();  // always xi
    const ComparisonReport rep = cross_method_report(cfg.spec, *cfg.energy, grid, cfg.contour);

    for (const MethodSeries& m : rep.methods) {
      bool any = false;
      for (bool ok : m.ok) any = any || ok;
      if (!any) {
        err << "laplaceqm: method " << method_name(m.method) << " failed at every point: " << m.errors.front()
            << '\n';
        return 3;
      }
    }

    CsvTable t;
    t.header = {"xi"};
    for (const MethodSeries& m : rep.methods) {
      t.header.push_back(std::string("re_") + method_name(m.method));
      t.header.push_back(std::string("im_") + method_name(m.method));
    }
    t.header.insert(t.header.end(), {"dev_circle_real", "dev_series_real", "dev_circle_series"});
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<std::string> row{format_value(grid[k])};
      for (const MethodSeries& m : rep.methods) {
        row.push_back(format_value(m.values[k].real()));
        row.push_back(format_value(m.values[k].imag()));
      }
      const cplx c = rep.methods[1].values[k], s = rep.methods[2].values[k];
      row.push_back(format_value(rep.relative_deviation[1][k]));
      row.push_back(format_value(rep.relative_deviation[2][k]));
      row.push_back(format_value(std::abs(c - s) / std::abs(s)));
      t.rows.push_back(std::move(row));
    }
    t.footers.push_back(describe(cfg) + " E=" + format_value(*cfg.energy) +
                        " radius=" + format_value(cfg.contour.radius) +
                        " steps=" + std::to_string(cfg.contour.steps));
    for (std::size_t i = 1; i < rep.methods.size(); ++i) {
      const auto& onset = rep.failure_onset[i];
      t.footers.push_back(std::string("onset_") + method_name(rep.methods[i].method) + "=" +
                          (onset ? format_value(*onset) : std::string("none")));
    }
    t.footers.push_back("onset: first of 3 consecutive grid points where the curve, normalized at the "
                        "reference's peak, deviates from the real-integral curve by more than 1e-3");
    emit(cfg, t, out);
    return 0;
  });
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const int c = column(name);
  if (c < 0) throw Error(ErrorCode::InvalidConfig, "no column " + name);
  return std::strtod(rows.at(row).at(c).c_str(), nullptr);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.footers.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!have_header) {
      t.header = split(line, ',');
      have_header = true;
    } else {
      t.rows.push_back(split(line, ','));
    }
  }
  return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  out << join_row(table.header) << '\n';
  for (const auto& r : table.rows) out << join_row(r) << '\n';
  for (const auto& f : table.footers) out << "# " << f << '\n';
}

}  // namespace laplaceqm
