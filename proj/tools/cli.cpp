#include "cli.hpp"

#include "paunity/complete.hpp"
#include "paunity/overlap.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#ifndef PAUNITY_VERSION
#define PAUNITY_VERSION "0.1.0"
#endif

namespace paunity::cli {
namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  json parameters = json::object();
  Table results;
  double max_error = 0.0;
  double tol = 0.0;
  std::string worst;

  bool pass() const { return max_error < tol; }
};

struct Common {
  std::string out;
  std::string format;
  std::optional<double> tol;
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + csv_field(t.columns[i]);
  s += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, long long>) s += std::to_string(v);
            else if constexpr (std::is_same_v<V, double>) s += format_double(v);
            else if constexpr (std::is_same_v<V, std::string>) s += csv_field(v);
          },
          row[i]);
    }
    s += "\r\n";
  }
  return s;
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) obj[t.columns[i]] = nullptr;
            else obj[t.columns[i]] = v;
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::string render_json(const Report& r) {
  json env = json::object();
  env["command"] = r.command;
  env["parameters"] = r.parameters;
  env["results"] = table_json(r.results);
  env["max_error"] = r.max_error;
  env["pass"] = r.pass();
  env["tool_version"] = PAUNITY_VERSION;
  return env.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

double parse_real(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw std::invalid_argument(what + ": cannot parse '" + s + "' as a real number");
  }
  return v;
}

// "r" is a real value, "r@phi" is modulus r at phase phi radians.
cplx parse_complex(const std::string& s, const std::string& what) {
  const auto at = s.find('@');
  if (at == std::string::npos) return parse_real(s, what);
  const double r = parse_real(s.substr(0, at), what);
  const double phi = parse_real(s.substr(at + 1), what);
  if (r < 0.0) throw std::invalid_argument(what + ": modulus must be non-negative");
  return std::polar(r, phi);
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Family parse_family(const std::string& name) {
  if (name == "pasvs") return Family::Pasvs;
  if (name == "pasops") return Family::Pasops;
  if (name == "pacsc") return Family::Pacsc;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string describe(const WeightFunction& w) {
  switch (w.family) {
    case Family::Pasvs: return "pasvs m=" + std::to_string(w.m);
    case Family::Pasops: return "pasops m=" + std::to_string(w.m);
    case Family::Pacsc:
      return "pacsc lambda=" + std::to_string(w.lambda) + " mu=" + std::to_string(w.mu) +
             " m=" + std::to_string(w.m);
  }
  return {};
}

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  sub->add_option("--out", c.out, "Write the report to this path (atomically)");
  sub->add_option("--format", c.format, "Output format, " + default_format + " by default")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option_function<double>("--tol", [&c](double v) { c.tol = v; }, "Pass tolerance");
}

double tolerance(const Common& c, double fallback) { return c.tol.value_or(fallback); }

// --- state ---------------------------------------------------------------

struct StateArgs {
  std::string family;
  std::string zeta = "0";
  std::string z = "0";
  unsigned m = 0;
  unsigned lambda = 1;
  unsigned mu = 0;
  double eps = 1e-14;
};

Report cmd_state(const StateArgs& a, const Common& c) {
  Report r;
  r.command = "state";
  r.tol = tolerance(c, 1e-9);
  const Truncation trunc{a.eps, 2'000'000};
  FockVector v;
  auto& p = r.parameters;
  p["family"] = a.family;
  if (a.family == "csc" || a.family == "pacsc") {
    const CircleParam cp(parse_complex(a.z, "--z"), a.lambda, a.mu);
    p["z"] = complex_json(cp.z());
    p["lambda"] = a.lambda;
    p["mu"] = a.mu;
    if (a.family == "pacsc") p["m"] = a.m;
    v = a.family == "csc" ? csc(cp, trunc) : pacsc(cp, a.m, trunc);
  } else {
    const SqueezeParam sp(parse_complex(a.zeta, "--zeta"));
    p["zeta"] = complex_json(sp.zeta());
    p["m"] = a.m;
    if (a.family == "pasvs") v = pasvs(sp, a.m, trunc);
    else if (a.family == "pasops") v = pasops(sp, a.m, trunc);
    else v = sns(sp, a.m, trunc);
  }
  p["eps"] = a.eps;
  p["tol"] = r.tol;

  r.results.columns = {"n", "re", "im", "abs2"};
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const cplx cn = v.coeffs()[i];
    sum += std::norm(cn);
    r.results.rows.push_back({static_cast<long long>(v.photon_number(i)), cn.real(), cn.imag(), std::norm(cn)});
  }
  r.results.rows.push_back({std::string("tail"), std::monostate{}, std::monostate{}, v.tail_bound()});
  r.max_error = std::max({0.0, sum - 1.0, 1.0 - sum - v.tail_bound()});
  r.worst = "normalization defect";
  return r;
}

// --- overlap -------------------------------------------------------------

struct OverlapArgs {
  std::string family = "pasvs";
  std::string xi = "0";
  std::string zeta = "0";
  unsigned n = 0;
  unsigned m = 0;
};

double max_pairwise(const std::vector<cplx>& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) worst = std::max(worst, std::abs(v[i] - v[j]));
  }
  return worst;
}

std::vector<std::pair<std::string, cplx>> overlap_forms(const std::string& family, const SqueezeParam& xi,
                                                        unsigned n, const SqueezeParam& zeta, unsigned m) {
  if (family == "pasvs") {
    return {{"hypergeometric", pasvs_overlap(xi, n, zeta, m, OverlapForm::Hypergeometric)},
            {"terminating", pasvs_overlap(xi, n, zeta, m, OverlapForm::Terminating)},
            {"legendre", pasvs_overlap(xi, n, zeta, m, OverlapForm::Legendre)},
            {"series", pasvs_overlap(xi, n, zeta, m, OverlapForm::Series)}};
  }
  if (family == "pasops") {
    return {{"legendre", pasops_overlap(xi, n, zeta, m, PasopsOverlapForm::Legendre)},
            {"bridge", pasops_overlap(xi, n, zeta, m, PasopsOverlapForm::Bridge)},
            {"series", pasops_overlap(xi, n, zeta, m, PasopsOverlapForm::Series)}};
  }
  throw std::invalid_argument("overlap family must be pasvs or pasops");
}

Report cmd_overlap(const OverlapArgs& a, const Common& c) {
  Report r;
  r.command = "overlap";
  r.tol = tolerance(c, 1e-9);
  const SqueezeParam xi(parse_complex(a.xi, "--xi"));
  const SqueezeParam zeta(parse_complex(a.zeta, "--zeta"));
  r.parameters = {{"family", a.family}, {"xi", complex_json(xi.zeta())}, {"n", a.n},
                  {"zeta", complex_json(zeta.zeta())}, {"m", a.m}, {"tol", r.tol}};
  const auto forms = overlap_forms(a.family, xi, a.n, zeta, a.m);
  std::vector<cplx> values;
  r.results.columns = {"form", "re", "im", "deviation"};
  for (const auto& [name, value] : forms) {
    values.push_back(value);
    r.results.rows.push_back({name, value.real(), value.imag(), std::abs(value - forms.front().second)});
  }
  r.max_error = max_pairwise(values);
  r.worst = "largest pairwise difference among forms";
  return r;
}

// --- norm ----------------------------------------------------------------

Report cmd_norm(const StateArgs& a, const Common& c) {
  Report r;
  r.command = "norm";
  r.tol = tolerance(c, 1e-9);
  std::vector<std::pair<std::string, double>> forms;
  auto& p = r.parameters;
  p["family"] = a.family;
  if (a.family == "pasvs" || a.family == "pasops") {
    const SqueezeParam sp(parse_complex(a.zeta, "--zeta"));
    p["zeta"] = complex_json(sp.zeta());
    p["m"] = a.m;
    if (a.family == "pasvs") forms = {{"legendre", pasvs_norm(sp, a.m)}, {"series", pasvs_norm_series(sp, a.m)}};
    else forms = {{"legendre", pasops_norm(sp, a.m)}, {"series", pasops_norm_series(sp, a.m)}};
  } else if (a.family == "csc" || a.family == "pacsc") {
    const CircleParam cp(parse_complex(a.z, "--z"), a.lambda, a.mu);
    p["z"] = complex_json(cp.z());
    p["lambda"] = a.lambda;
    p["mu"] = a.mu;
    if (a.family == "csc") {
      forms = {{"hypergeometric", csc_norm(cp, CircleNormForm::Hypergeometric)},
               {"hyperbolic", csc_norm(cp, CircleNormForm::Hyperbolic)},
               {"series", csc_norm_series(cp)}};
    } else {
      p["m"] = a.m;
      forms = {{"hypergeometric", pacsc_norm(cp, a.m, PacscNormForm::Hypergeometric)},
               {"laguerre", pacsc_norm(cp, a.m, PacscNormForm::Laguerre)},
               {"series", pacsc_norm_series(cp, a.m)}};
    }
  } else {
    throw std::invalid_argument("norm family must be pasvs, pasops, csc or pacsc");
  }
  p["tol"] = r.tol;
  r.results.columns = {"form", "value", "rel_deviation"};
  const double ref = forms.front().second;
  for (const auto& [name, value] : forms) {
    const double dev = std::abs(value - ref) / std::abs(ref);
    r.results.rows.push_back({name, value, dev});
    r.max_error = std::max(r.max_error, dev);
  }
  r.worst = "largest relative deviation from the first form";
  return r;
}

// --- weights -------------------------------------------------------------

struct WeightsArgs {
  std::string family = "pasvs";
  std::vector<unsigned> m{1, 2, 3, 4, 5};
  unsigned lambda = 1;
  unsigned mu = 0;
  unsigned grid = 100;
  std::optional<double> ymin;
  std::optional<double> ymax;
};

Report cmd_weights(const WeightsArgs& a, const Common& c) {
  Report r;
  r.command = "weights";
  r.tol = tolerance(c, 1e-12);
  const Family family = parse_family(a.family);
  if (a.grid < 2) throw std::invalid_argument("--grid must be at least 2");
  if (a.m.empty()) throw std::invalid_argument("--m needs at least one value");
  const bool circle = family == Family::Pacsc;
  const double lo = a.ymin.value_or(1e-4);
  const double hi = a.ymax.value_or(circle ? 10.0 : 1.0 - 1e-4);
  if (!(lo > 0.0) || !(hi > lo) || (!circle && !(hi < 1.0))) {
    throw std::invalid_argument("y range must satisfy 0 < ymin < ymax (< 1 for squeezed families)");
  }
  std::vector<WeightFunction> ws;
  for (unsigned m : a.m) {
    WeightFunction w{family, m, a.mu, a.lambda};
    validate(w);
    ws.push_back(w);
  }
  r.parameters = {{"family", a.family}, {"m", a.m}};
  if (circle) {
    r.parameters["lambda"] = a.lambda;
    r.parameters["mu"] = a.mu;
  }
  r.parameters["grid"] = a.grid;
  r.parameters["ymin"] = lo;
  r.parameters["ymax"] = hi;
  r.parameters["tol"] = r.tol;

  r.results.columns = {"y"};
  for (const auto& w : ws) {
    switch (family) {
      case Family::Pasvs: r.results.columns.push_back("h_" + std::to_string(w.m)); break;
      case Family::Pasops: r.results.columns.push_back("h_1_" + std::to_string(w.m)); break;
      case Family::Pacsc:
        r.results.columns.push_back("h_" + std::to_string(w.mu) + "_" + std::to_string(w.m));
        break;
    }
  }
  std::size_t bad = 0;
  for (unsigned i = 0; i < a.grid; ++i) {
    const double y = i + 1 == a.grid ? hi : lo + (hi - lo) * i / (a.grid - 1);
    std::vector<Cell> row{y};
    for (const auto& w : ws) {
      double h = 0.0;
      switch (family) {
        case Family::Pasvs: h = weight_h_closed(w.m, y, (1.0 - hi) + (hi - y)); break;
        case Family::Pasops: h = weight_h1m(w.m, y, (1.0 - hi) + (hi - y)); break;
        case Family::Pacsc: h = weight_hmum(w.lambda, w.mu, w.m, y); break;
      }
      if (!(h > 0.0) || !std::isfinite(h)) ++bad;
      row.push_back(h);
    }
    r.results.rows.push_back(std::move(row));
  }
  // Fraction of grid values that are not strictly positive and finite.
  r.max_error = static_cast<double>(bad) / (a.grid * ws.size());
  r.worst = std::to_string(bad) + " non-positive or non-finite weight values";
  return r;
}

// --- verify --------------------------------------------------------------

struct FamilyArgs {
  std::string family = "pasvs";
  unsigned m = 1;
  unsigned lambda = 1;
  unsigned mu = 0;

  WeightFunction weight() const {
    WeightFunction w{parse_family(family), m, mu, lambda};
    validate(w);
    return w;
  }
};

void family_parameters(json& p, const WeightFunction& w, const FamilyArgs& a) {
  p["family"] = a.family;
  p["m"] = w.m;
  if (w.family == Family::Pacsc) {
    p["lambda"] = w.lambda;
    p["mu"] = w.mu;
  }
}

Report verify_moments(const WeightFunction& w, unsigned k_max, double tol) {
  Report r;
  r.command = "verify moments";
  r.tol = tol;
  r.results.columns = {"k", "lhs", "rhs", "abs_err", "rel_err", "nodes", "converged"};
  for (const auto& rep : moment_check(w, k_max)) {
    r.results.rows.push_back({static_cast<long long>(rep.k), rep.lhs, rep.rhs, rep.abs_err, rep.rel_err,
                              static_cast<long long>(rep.nodes_used), static_cast<long long>(rep.converged)});
    if (rep.rel_err >= r.max_error) {
      r.max_error = rep.rel_err;
      r.worst = describe(w) + " k=" + std::to_string(rep.k);
    }
  }
  return r;
}

struct UnityOutcome {
  Report report;
  double max_offdiagonal = 0.0;
};

UnityOutcome verify_unity(const WeightFunction& w, std::size_t dim, double tol) {
  UnityOutcome o;
  Report& r = o.report;
  r.command = "verify unity";
  r.tol = tol;
  const auto u = unity_resolution_matrix(w, dim);
  const auto& mat = u.matrix;
  r.results.columns = {"row", "col", "n_row", "n_col", "re", "im", "deviation"};
  for (std::size_t i = 0; i < mat.dim(); ++i) {
    for (std::size_t j = 0; j < mat.dim(); ++j) {
      const cplx e = mat.entries(i, j);
      r.results.rows.push_back({static_cast<long long>(i), static_cast<long long>(j),
                                static_cast<long long>(mat.basis_offset + i * mat.basis_stride),
                                static_cast<long long>(mat.basis_offset + j * mat.basis_stride), e.real(),
                                e.imag(), std::abs(e - (i == j ? 1.0 : 0.0))});
    }
  }
  r.max_error = mat.identity_deviation();
  o.max_offdiagonal = mat.max_offdiagonal();
  r.worst = describe(w) + " entry (" + std::to_string(mat.basis_offset + u.worst_row * mat.basis_stride) + "," +
            std::to_string(mat.basis_offset + u.worst_col * mat.basis_stride) + ")";
  return o;
}

struct DiscreteArgs {
  std::string zeta = "0.3";
  std::vector<unsigned> cutoffs{10, 20, 40};
  std::size_t dim = 8;
  std::string basis = "sns";
};

Report verify_discrete(const DiscreteArgs& a, double tol) {
  Report r;
  r.command = "verify discrete";
  r.tol = tol;
  const SqueezeParam zeta(parse_complex(a.zeta, "--zeta"));
  if (zeta.modulus() > 0.5) throw std::invalid_argument("--zeta modulus must be at most 0.5");
  if (a.cutoffs.empty()) throw std::invalid_argument("--cutoffs needs at least one value");
  if (a.dim == 0) throw std::invalid_argument("--dim must be positive");
  const DiscreteBasis basis = a.basis == "fock" ? DiscreteBasis::Fock : DiscreteBasis::Sns;
  r.parameters = {{"zeta", complex_json(zeta.zeta())}, {"cutoffs", a.cutoffs}, {"dim", a.dim},
                  {"basis", a.basis}, {"tol", tol}};
  r.results.columns = {"cutoff", "deviation", "reference_diff"};
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  for (unsigned cutoff : a.cutoffs) {
    const auto lit = discrete_completeness_matrix(zeta, cutoff, a.dim, basis);
    const auto ref = discrete_completeness_reference(zeta, cutoff, a.dim, basis);
    const double dev = lit.identity_deviation();
    const double diff = (lit.entries - ref.entries).cwiseAbs().maxCoeff();
    r.results.rows.push_back({static_cast<long long>(cutoff), dev, diff});
    if (diff >= r.max_error) {
      r.max_error = diff;
      r.worst = "reference mismatch at cutoff " + std::to_string(cutoff);
    }
    if (!(dev < prev)) {
      decreasing = false;
      r.worst = "deviation does not decrease at cutoff " + std::to_string(cutoff);
    }
    prev = dev;
  }
  // A broken convergence trend counts as an error of 1.
  if (!decreasing) r.max_error = std::max(r.max_error, 1.0);
  return r;
}

Report verify_carleman(const std::vector<unsigned>& ms, std::vector<unsigned> ks, double tol) {
  Report r;
  r.command = "verify carleman";
  r.tol = tol;
  if (ms.empty() || ks.empty()) throw std::invalid_argument("--m and --k need at least one value");
  std::sort(ks.begin(), ks.end());
  r.parameters = {{"m", ms}, {"k", ks}, {"tol", tol}};
  r.results.columns = {"m", "k", "log_a", "ratio"};
  bool shrinking = true;
  for (unsigned m : ms) {
    if (m == 0) throw std::invalid_argument("--m must be at least 1");
    const auto seq = carleman_sequence(m, ks);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      r.results.rows.push_back({static_cast<long long>(m), static_cast<long long>(seq[i].k), seq[i].log_a,
                                seq[i].ratio});
      if (i > 0 && !(std::abs(seq[i].ratio) < std::abs(seq[i - 1].ratio))) {
        shrinking = false;
        r.worst = "ratio does not shrink for m=" + std::to_string(m);
      }
    }
    // The ratio at the largest requested k is the figure of merit.
    const double last = std::abs(seq.back().ratio);
    if (last >= r.max_error) {
      r.max_error = last;
      if (shrinking) r.worst = "m=" + std::to_string(m) + " k=" + std::to_string(seq.back().k);
    }
  }
  if (!shrinking) r.max_error = std::max(r.max_error, 1.0);
  return r;
}

struct OverlapsArgs {
  unsigned nmax = 8;
  std::vector<double> moduli{0.2, 0.4, 0.6};
};

const std::array<std::pair<double, double>, 8> kPhasePairs{{
    {0.0, 0.0}, {0.0, 1.0}, {std::numbers::pi / 3, 0.0}, {-2.0, 2.9},
    {1.5, -1.5}, {2.5, -2.9}, {-0.7, 0.4}, {3.0, 3.0},
}};

Report verify_overlaps(const OverlapsArgs& a, double tol) {
  Report r;
  r.command = "verify overlaps";
  r.tol = tol;
  for (double mod : a.moduli) {
    if (!(mod >= 0.0 && mod < 1.0)) throw std::invalid_argument("--moduli must lie in [0, 1)");
  }
  r.parameters = {{"nmax", a.nmax}, {"moduli", a.moduli}, {"phase_pairs", kPhasePairs.size()}, {"tol", tol}};
  r.results.columns = {"family", "xi_modulus", "zeta_modulus", "phase_pair", "max_deviation"};
  for (const std::string family : {"pasvs", "pasops"}) {
    for (double rx : a.moduli) {
      for (double rz : a.moduli) {
        for (std::size_t pp = 0; pp < kPhasePairs.size(); ++pp) {
          const SqueezeParam xi(std::polar(rx, kPhasePairs[pp].first));
          const SqueezeParam zeta(std::polar(rz, kPhasePairs[pp].second));
          double worst = 0.0;
          std::string where;
          for (unsigned n = 0; n <= a.nmax; ++n) {
            for (unsigned m = n % 2; m <= a.nmax; m += 2) {
              std::vector<cplx> values;
              for (const auto& f : overlap_forms(family, xi, n, zeta, m)) values.push_back(f.second);
              const double d = max_pairwise(values);
              if (d >= worst) {
                worst = d;
                where = " n=" + std::to_string(n) + " m=" + std::to_string(m);
              }
            }
          }
          r.results.rows.push_back({family, rx, rz, static_cast<long long>(pp), worst});
          if (worst >= r.max_error) {
            r.max_error = worst;
            r.worst = family + " |xi|=" + format_double(rx) + " |zeta|=" + format_double(rz) +
                      " phase pair " + std::to_string(pp) + where;
          }
        }
      }
    }
  }
  return r;
}

constexpr double kMomentsTol = 1e-8;
constexpr double kUnityTol = 1e-6;
constexpr double kUnityOffdiagTol = 1e-10;
constexpr double kDiscreteTol = 1e-9;
constexpr double kCarlemanTol = 0.01;
constexpr double kOverlapsTol = 1e-9;

Report verify_all(double tol) {
  Report r;
  r.command = "verify all";
  r.tol = tol;
  r.parameters = {{"tol", tol}, {"normalized", true}};
  r.results.columns = {"suite", "case", "max_error", "tol", "pass"};
  auto record = [&](const std::string& suite, const std::string& label, double err, double t) {
    r.results.rows.push_back({suite, label, err, t, static_cast<long long>(err < t)});
    const double scaled = err / t;
    if (scaled >= r.max_error) {
      r.max_error = scaled;
      r.worst = suite + " " + label;
    }
  };

  std::vector<WeightFunction> moment_cases;
  for (unsigned m = 1; m <= 6; ++m) moment_cases.push_back({Family::Pasvs, m});
  for (unsigned m = 0; m <= 3; ++m) moment_cases.push_back({Family::Pasops, m});
  const WeightFunction circle_cases[] = {{Family::Pacsc, 1, 0, 1}, {Family::Pacsc, 2, 0, 2},
                                         {Family::Pacsc, 1, 1, 2}, {Family::Pacsc, 2, 2, 3}};
  for (const auto& w : circle_cases) moment_cases.push_back(w);

  for (const auto& w : moment_cases) {
    const unsigned k_max = w.family == Family::Pacsc ? 8 : 10;
    const auto rep = verify_moments(w, k_max, kMomentsTol);
    record("moments", describe(w) + " k<=" + std::to_string(k_max), rep.max_error, kMomentsTol);
  }
  for (const auto& w : moment_cases) {
    if (w.family == Family::Pasvs && w.m > 4) continue;
    const auto o = verify_unity(w, 12, kUnityTol);
    record("unity", describe(w) + " dim=12", o.report.max_error, kUnityTol);
    record("unity-offdiagonal", describe(w) + " dim=12", o.max_offdiagonal, kUnityOffdiagTol);
  }
  const auto d = verify_discrete(DiscreteArgs{}, kDiscreteTol);
  record("discrete", "|zeta|=0.3 cutoffs=10,20,40 dim=8", d.max_error, kDiscreteTol);
  const auto c = verify_carleman({1, 2, 3, 4}, {10, 100, 1000}, kCarlemanTol);
  record("carleman", "m=1..4 k=10,100,1000", c.max_error, kCarlemanTol);
  const auto ov = verify_overlaps(OverlapsArgs{}, kOverlapsTol);
  record("overlaps", "n,m<=8 moduli=0.2,0.4,0.6", ov.max_error, kOverlapsTol);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-added state completeness toolkit", "paunity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PAUNITY_VERSION);

  std::function<Report()> action;
  std::string default_format = "json";
  Common common;

  StateArgs state_args;
  auto* state = app.add_subcommand("state", "Fock coefficients of a state");
  state->add_option("family", state_args.family, "pasvs, pasops, sns, csc or pacsc")
      ->required()
      ->check(CLI::IsMember({"pasvs", "pasops", "sns", "csc", "pacsc"}));
  state->add_option("--zeta", state_args.zeta, "Squeezing parameter, r or r@phi");
  state->add_option("--z", state_args.z, "Circle amplitude, r or r@phi");
  state->add_option("--m", state_args.m, "Photons added (or number-state index for sns)");
  state->add_option("--lambda", state_args.lambda, "Number of circle points");
  state->add_option("--mu", state_args.mu, "Circle residue class");
  state->add_option("--eps", state_args.eps, "Truncation target for the discarded squared norm")
      ->check(CLI::PositiveNumber);
  add_common(state, common, "csv");
  state->callback([&] {
    default_format = "csv";
    action = [&] { return cmd_state(state_args, common); }; });

  OverlapArgs overlap_args;
  auto* overlap = app.add_subcommand("overlap", "Overlap of two photon-added squeezed states, all forms");
  overlap->add_option("--family", overlap_args.family)->check(CLI::IsMember({"pasvs", "pasops"}));
  overlap->add_option("--xi", overlap_args.xi, "Bra squeezing parameter");
  overlap->add_option("--n", overlap_args.n, "Bra photons added");
  overlap->add_option("--zeta", overlap_args.zeta, "Ket squeezing parameter");
  overlap->add_option("--m", overlap_args.m, "Ket photons added");
  add_common(overlap, common, "json");
  overlap->callback([&] { action = [&] { return cmd_overlap(overlap_args, common); }; });

  StateArgs norm_args;
  norm_args.family = "pasvs";
  auto* norm = app.add_subcommand("norm", "Normalization constant, all forms and the direct sum");
  norm->add_option("--family", norm_args.family)->check(CLI::IsMember({"pasvs", "pasops", "csc", "pacsc"}));
  norm->add_option("--zeta", norm_args.zeta);
  norm->add_option("--z", norm_args.z);
  norm->add_option("--m", norm_args.m);
  norm->add_option("--lambda", norm_args.lambda);
  norm->add_option("--mu", norm_args.mu);
  add_common(norm, common, "json");
  norm->callback([&] { action = [&] { return cmd_norm(norm_args, common); }; });

  WeightsArgs weights_args;
  auto* weights = app.add_subcommand("weights", "Tabulate measure weight functions");
  weights->add_option("--family", weights_args.family)->check(CLI::IsMember({"pasvs", "pasops", "pacsc"}));
  weights->add_option("--m", weights_args.m, "Comma-separated photon numbers")->delimiter(',');
  weights->add_option("--lambda", weights_args.lambda);
  weights->add_option("--mu", weights_args.mu);
  weights->add_option("--grid", weights_args.grid, "Number of grid points");
  weights->add_option_function<double>("--ymin", [&](double v) { weights_args.ymin = v; });
  weights->add_option_function<double>("--ymax", [&](double v) { weights_args.ymax = v; });
  add_common(weights, common, "csv");
  weights->callback([&] {
    default_format = "csv";
    action = [&] { return cmd_weights(weights_args, common); }; });

  auto* verify = app.add_subcommand("verify", "Verification suites");
  verify->require_subcommand(1);

  FamilyArgs moments_args;
  unsigned k_max = 10;
  auto* moments = verify->add_subcommand("moments", "Moment identities of a weight function");
  moments->add_option("--family", moments_args.family)->check(CLI::IsMember({"pasvs", "pasops", "pacsc"}));
  moments->add_option("--m", moments_args.m);
  moments->add_option("--lambda", moments_args.lambda);
  moments->add_option("--mu", moments_args.mu);
  moments->add_option("--kmax", k_max);
  add_common(moments, common, "json");
  moments->callback([&] {
    action = [&] {
      const auto w = moments_args.weight();
      auto r = verify_moments(w, k_max, tolerance(common, kMomentsTol));
      family_parameters(r.parameters, w, moments_args);
      r.parameters["kmax"] = k_max;
      r.parameters["tol"] = r.tol;
      return r;
    };
  });

  FamilyArgs unity_args;
  std::size_t unity_dim = 12;
  auto* unity = verify->add_subcommand("unity", "Continuous resolution of unity on a truncated basis");
  unity->add_option("--family", unity_args.family)->check(CLI::IsMember({"pasvs", "pasops", "pacsc"}));
  unity->add_option("--m", unity_args.m);
  unity->add_option("--lambda", unity_args.lambda);
  unity->add_option("--mu", unity_args.mu);
  unity->add_option("--dim", unity_dim);
  add_common(unity, common, "json");
  unity->callback([&] {
    action = [&] {
      const auto w = unity_args.weight();
      auto r = verify_unity(w, unity_dim, tolerance(common, kUnityTol)).report;
      family_parameters(r.parameters, w, unity_args);
      r.parameters["dim"] = unity_dim;
      r.parameters["tol"] = r.tol;
      return r;
    };
  });

  DiscreteArgs discrete_args;
  auto* discrete = verify->add_subcommand("discrete", "Discrete resolution of unity by squeezed states");
  discrete->add_option("--zeta", discrete_args.zeta);
  discrete->add_option("--cutoffs", discrete_args.cutoffs)->delimiter(',');
  discrete->add_option("--dim", discrete_args.dim);
  discrete->add_option("--basis", discrete_args.basis)->check(CLI::IsMember({"sns", "fock"}));
  add_common(discrete, common, "json");
  discrete->callback([&] {
    action = [&] { return verify_discrete(discrete_args, tolerance(common, kDiscreteTol)); };
  });

  std::vector<unsigned> carleman_m{1, 2, 3, 4};
  std::vector<unsigned> carleman_k{10, 100, 1000, 10000};
  auto* carleman = verify->add_subcommand("carleman", "Carleman uniqueness ratio ln a_k / ln k");
  carleman->add_option("--m", carleman_m)->delimiter(',');
  carleman->add_option("--k", carleman_k)->delimiter(',');
  add_common(carleman, common, "json");
  carleman->callback([&] {
    action = [&] { return verify_carleman(carleman_m, carleman_k, tolerance(common, kCarlemanTol)); };
  });

  OverlapsArgs overlaps_args;
  auto* overlaps = verify->add_subcommand("overlaps", "Agreement of all overlap forms on a grid");
  overlaps->add_option("--nmax", overlaps_args.nmax);
  overlaps->add_option("--moduli", overlaps_args.moduli)->delimiter(',');
  add_common(overlaps, common, "json");
  overlaps->callback([&] {
    action = [&] { return verify_overlaps(overlaps_args, tolerance(common, kOverlapsTol)); };
  });

  auto* all = verify->add_subcommand("all", "Every suite at default parameters; errors scaled by suite tolerance");
  add_common(all, common, "json");
  all->callback([&] { action = [&] { return verify_all(tolerance(common, 1.0)); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Report report;
  try {
    report = action();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string format = common.format.empty() ? default_format : common.format;
  const std::string text = format == "csv" ? render_csv(report.results) : render_json(report);
  try {
    if (common.out.empty()) out << text;
    else write_atomically(common.out, text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!report.pass()) {
    err << report.command << " failed: max_error " << format_double(report.max_error) << " >= tol "
        << format_double(report.tol) << "; worst: " << report.worst << "\n";
    return kExitFail;
  }
  return kExitPass;
}

}  // namespace paunity::cli
