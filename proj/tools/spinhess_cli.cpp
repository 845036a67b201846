// spinhess command-line front end: verify, table, symbol, spectra.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinhess/suites.hpp"

namespace {

using nlohmann::json;
using namespace spinhess;

constexpr int kSchemaVersion = 1;

enum class Format { json, csv, text };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    os = &file;
  }
  std::ostream& operator*() { return *os; }
};

std::vector<double> parse_list(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Vec parse_vec(const std::string& text, int n, const char* what) {
  const auto v = parse_list(text, ';');
  if (static_cast<int>(v.size()) != n)
    throw UsageError(std::string(what) + " needs " + std::to_string(n) + " entries separated by ';'");
  return Eigen::Map<const Vec>(v.data(), n);
}

/// Rows separated by ';', entries by ','.
Mat parse_matrix(const std::string& text, int n) {
  std::stringstream ss(text);
  std::string row;
  std::vector<std::vector<double>> rows;
  while (std::getline(ss, row, ';')) rows.push_back(parse_list(row, ','));
  if (static_cast<int>(rows.size()) != n) throw UsageError("--k needs " + std::to_string(n) + " rows");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw UsageError("--k row " + std::to_string(i) + " needs " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t seed, Format fmt, const std::string& out, double tol_scale) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end())
      throw UsageError("unknown suite '" + suite + "'");
    names = {suite};
  }
  std::sort(names.begin(), names.end());
  std::vector<SuiteReport> reports;
  for (const auto& n : names) reports.push_back(run_suite(n, seed, tol_scale));
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });

  Sink sink(out);
  auto& os = *sink;
  if (fmt == Format::json) {
    json j = {{"schema_version", kSchemaVersion}, {"command", "verify"}, {"seed", seed},
              {"tol_scale", tol_scale}, {"passed", ok}, {"suites", json::array()}};
    for (const auto& r : reports) {
      json s = {{"suite", r.suite}, {"passed", r.passed()}, {"checks", json::array()}};
      for (const auto& c : r.checks)
        s["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured},
                               {"tolerance", c.tolerance}, {"note", c.note}});
      j["suites"].push_back(std::move(s));
    }
    os << j.dump(2) << "\n";
  } else if (fmt == Format::csv) {
    os << "suite,check,passed,measured,tolerance,note\n";
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        os << r.suite << ',' << csv_field(c.name) << ',' << (c.passed ? "true" : "false") << ',' << num(c.measured)
           << ',' << num(c.tolerance) << ',' << csv_field(c.note) << "\n";
  } else {
    os << "seed " << seed << "\n";
    for (const auto& r : reports) {
      os << (r.passed() ? "PASS " : "FAIL ") << r.suite << "\n";
      for (const auto& c : r.checks) {
        os << "  " << (c.passed ? "ok   " : "FAIL ") << c.name << "  measured " << num(c.measured) << "  tol "
           << num(c.tolerance);
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
      }
    }
    os << (ok ? "all suites passed" : "some checks failed") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_table(int nmax, Format fmt, const std::string& out) {
  if (nmax < 4) throw UsageError("--nmax must be >= 4");
  const auto rows = pattern_table(nmax);
  Sink sink(out);
  auto& os = *sink;
  if (fmt == Format::json) {
    json j = {{"schema_version", kSchemaVersion}, {"command", "table"}, {"rows", json::array()}};
    for (const auto& r : rows)
      j["rows"].push_back({{"n", r.n}, {"extremal_type", r.extremal_type}, {"sign_logdet", r.sign_logdet},
                           {"logdet", r.logdet}, {"det", r.det}});
    os << j.dump(2) << "\n";
  } else if (fmt == Format::csv) {
    os << "n,extremal_type,sign_logdet,logdet,det\n";
    for (const auto& r : rows)
      os << r.n << ',' << r.extremal_type << ',' << r.sign_logdet << ',' << num(r.logdet) << ',' << num(r.det) << "\n";
  } else {
    os << std::left << std::setw(4) << "n" << std::setw(12) << "extremal" << std::setw(6) << "sign" << std::setw(22)
       << "log det D^2" << "det D^2\n";
    for (const auto& r : rows)
      os << std::setw(4) << r.n << std::setw(12) << r.extremal_type << std::setw(6) << (r.sign_logdet > 0 ? "+" : "-")
         << std::setw(22) << num(r.logdet) << num(r.det) << "\n";
  }
  return 0;
}

struct SymbolArgs {
  int n = 3;
  double s_re = 0.0, s_im = 0.0;
  std::string xi, k, omega;
  double volume = 1.0;
};

int cmd_symbol(const SymbolArgs& a, Format fmt, const std::string& out) {
  if (a.n < 2) throw UsageError("--n must be >= 2");
  const Complex s(a.s_re, a.s_im);
  try {
    check_validity_strip(a.n, s);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const Covector xi = [&] {
    const Vec v = a.xi.empty() ? Vec(Vec::Unit(a.n, 0)) : parse_vec(a.xi, a.n, "--xi");
    try {
      return Covector(v);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  SymTensor k = SymTensor::unit(a.n, a.n > 1 ? 1 : 0, a.n > 1 ? 1 : 0);
  if (!a.omega.empty()) {
    if (!a.k.empty()) throw UsageError("--k and --gauge-omega are exclusive");
    k = sym_product(xi.vec(), parse_vec(a.omega, a.n, "--gauge-omega"));
  } else if (!a.k.empty()) {
    try {
      k = SymTensor(parse_matrix(a.k, a.n));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (!(a.volume > 0.0)) throw UsageError("--volume must be positive");
  Complex closed, assembled;
  try {
    const auto rep = build_gamma_rep(a.n);
    closed = u_closed_form(a.n, s, xi, k) * std::pow(Complex(a.volume), (2.0 * s - double(a.n)) / double(a.n));
    assembled = u_assembled(rep, k, xi, s, a.volume).value;
  } catch (const pole_error& e) {
    throw UsageError(e.what());
  }
  const double scale = std::max(std::abs(closed), std::abs(assembled));
  const double abs_dev = std::abs(closed - assembled);
  const double rel_dev = scale > 0.0 ? abs_dev / scale : 0.0;

  Sink sink(out);
  auto& os = *sink;
  if (fmt == Format::json) {
    json j = {{"schema_version", kSchemaVersion}, {"command", "symbol"}, {"n", a.n}, {"s", complex_json(s)},
              {"xi", std::vector<double>(xi.vec().data(), xi.vec().data() + a.n)},
              {"volume", a.volume}, {"closed_form", complex_json(closed)},
              {"assembled", complex_json(assembled)}, {"abs_deviation", abs_dev}, {"rel_deviation", rel_dev}};
    os << j.dump(2) << "\n";
  } else if (fmt == Format::csv) {
    os << "n,s_re,s_im,closed_re,closed_im,assembled_re,assembled_im,abs_deviation,rel_deviation\n";
    os << a.n << ',' << num(s.real()) << ',' << num(s.imag()) << ',' << num(closed.real()) << ','
       << num(closed.imag()) << ',' << num(assembled.real()) << ',' << num(assembled.imag()) << ',' << num(abs_dev)
       << ',' << num(rel_dev) << "\n";
  } else {
    os << "n = " << a.n << ", s = " << num(s.real()) << (s.imag() < 0 ? " - " : " + ") << num(std::abs(s.imag()))
       << "i\n";
    os << "closed form  " << num(closed.real()) << " + " << num(closed.imag()) << "i\n";
    os << "assembled    " << num(assembled.real()) << " + " << num(assembled.imag()) << "i\n";
    os << "abs deviation " << num(abs_dev) << "\nrel deviation " << num(rel_dev) << "\n";
  }
  return 0;
}

int cmd_spectra(const std::string& kind, int n, int cut, Format fmt, const std::string& out) {
  json j = {{"schema_version", kSchemaVersion}, {"command", "spectra"}, {"kind", kind}, {"n", n}};
  std::vector<std::pair<double, double>> rows;  // (eigenvalue, multiplicity)
  if (kind == "sphere") {
    if (n < 2) throw UsageError("--n must be >= 2");
    if (cut < 1) throw UsageError("--cut must be >= 1");
    const auto sp = dirac_sq_spectrum(n, cut);
    rows = sp.entries;
    j["weyl_exponent"] = weyl_exponent(sp);
  } else if (kind == "model") {
    if (n < 2) throw UsageError("--n must be >= 2");
    if (cut < 1) throw UsageError("--cut must be >= 1");
    const auto rep = spectrum(build_multiplier(mode_symbol(h_symbol(n)), cut));
    for (const auto& [v, m] : rep.multiplicities) rows.emplace_back(v, double(m));
    j["negative_count"] = rep.negative_count;
    j["lower_bound"] = rep.lower_bound;
    j["hermitian_residual"] = rep.hermitian_residual;
  } else {
    throw UsageError("--kind must be sphere or model");
  }
  Sink sink(out);
  auto& os = *sink;
  if (fmt == Format::json) {
    j["eigenvalues"] = json::array();
    for (const auto& [v, m] : rows) j["eigenvalues"].push_back({{"value", v}, {"multiplicity", m}});
    os << j.dump(2) << "\n";
  } else if (fmt == Format::csv) {
    os << "eigenvalue,multiplicity\n";
    for (const auto& [v, m] : rows) os << num(v) << ',' << num(m) << "\n";
  } else {
    for (const auto& [key, val] : j.items())
      if (key != "schema_version") os << key << ": " << val.dump() << "\n";
    for (const auto& [v, m] : rows) os << std::setw(20) << num(v) << "  x" << num(m) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinhess: Hessian symbols of spectral functionals of the Dirac operator"};
  app.require_subcommand(1);

  std::string format = "text", out;
  const std::map<std::string, Format> formats = {{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out, "output file (default stdout)");
  };

  std::string suite = "all";
  std::uint64_t seed = 7;
  double tol_scale = 1.0;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "suite name or all");
  verify->add_option("--seed", seed, "PRNG seed (mt19937_64)");
  verify->add_option("--tol-scale", tol_scale, "multiply every tolerance")->check(CLI::PositiveNumber);
  add_common(verify);

  int nmax = 10;
  auto* table = app.add_subcommand("table", "sphere determinant pattern table");
  table->add_option("--nmax", nmax, "largest dimension (>= 4)");
  add_common(table);

  SymbolArgs sa;
  auto* symbol = app.add_subcommand("symbol", "evaluate the Hessian symbol by both routes");
  symbol->add_option("--n", sa.n, "dimension");
  symbol->add_option("--s", sa.s_re, "Re s");
  symbol->add_option("--s-imag", sa.s_im, "Im s");
  symbol->add_option("--xi", sa.xi, "covector, entries separated by ';' (default e_1)");
  symbol->add_option("--k", sa.k, "symmetric tensor, rows ';' entries ',' (default e_2 (x) e_2)");
  symbol->add_option("--gauge-omega", sa.omega, "use k = xi (.) omega");
  symbol->add_option("--volume", sa.volume, "volume normalization");
  add_common(symbol);

  std::string kind = "sphere";
  int sn = 3, cut = 20;
  auto* spectra = app.add_subcommand("spectra", "sphere D^2 spectrum or model operator spectrum");
  spectra->add_option("--kind", kind, "sphere or model");
  spectra->add_option("--n", sn, "dimension");
  spectra->add_option("--cut", cut, "k_max (sphere) or mode cut N (model)");
  add_common(spectra);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Format fmt = formats.at(format);
    if (*verify) return cmd_verify(suite, seed, fmt, out, tol_scale);
    if (*table) return cmd_table(nmax, fmt, out);
    if (*symbol) return cmd_symbol(sa, fmt, out);
    if (*spectra) return cmd_spectra(kind, sn, cut, fmt, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
