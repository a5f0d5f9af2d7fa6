#include "zetapsi/cli.hpp"

#include "zetapsi/certificate.hpp"
#include "zetapsi/inequality.hpp"
#include "zetapsi/special_fn.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace zetapsi::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": not an integer: " + v);
  return x;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": not a number: " + v);
  return x;
}

// Fifteen significant digits in scientific notation, as in the reports.
std::string sci(const Real& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", x.convert_to<double>());
  return buf;
}

std::string g15(const Real& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x.convert_to<double>());
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

PrecisionContext context_for(const RunConfig& c) {
  PrecisionContext ctx;
  ctx.work_digits = c.precision_digits;
  ctx.target_tol = std::pow(10.0, -std::floor(0.6 * c.precision_digits));
  return ctx;
}

std::string report_text(const CertificateReport& r) {
  std::ostringstream os;
  for (const BoundEntry& e : r.entries) {
    os << (e.pass ? "PASS " : "FAIL ") << e.name << ": " << sci(e.computed.value()) << " +/- " << sci(e.computed.err())
       << " " << to_string(e.op) << " " << sci(e.reference) << "  [" << e.citation << "]\n";
  }
  os << (r.overall_pass ? "overall: PASS\n" : "overall: FAIL\n");
  return os.str();
}

std::string report_csv(const CertificateReport& r) {
  std::ostringstream os;
  os << "name,value,err,op,reference,pass\n";
  for (const BoundEntry& e : r.entries) {
    os << quoted(e.name) << "," << sci(e.computed.value()) << "," << sci(e.computed.err()) << "," << to_string(e.op)
       << "," << sci(e.reference) << "," << (e.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string render(const CertificateReport& r, const std::string& format) {
  if (format == "text") return report_text(r);
  if (format == "csv") return report_csv(r);
  return to_json(r) + "\n";
}

// Writes to --out when given, otherwise to `out`.
void emit(const RunConfig& c, const std::string& body, std::ostream& out) {
  if (!c.output_path) {
    out << body;
    return;
  }
  std::ofstream file(*c.output_path, std::ios::binary);
  if (file) file << body;
  if (!file) throw std::ios_base::failure("cannot write " + *c.output_path);
}

struct Evaluation {
  std::function<Approx(const Real&, const PrecisionContext&)> fn;
  const char* path;
};

Evaluation evaluation_for(const std::string& name) {
  if (name == "zeta") return {[](const Real& s, const PrecisionContext& c) { return zeta(s, c); }, "zeta"};
  if (name == "digamma") return {[](const Real& s, const PrecisionContext& c) { return digamma(s, c); }, "digamma"};
  if (name == "F") {
    return {[](const Real& s, const PrecisionContext& c) { return F(s, c); }, "zeta(s) - digamma(1 - s)"};
  }
  if (name == "Fprime") {
    return {[](const Real& s, const PrecisionContext& c) { return F_prime(s, c); }, "zeta'(s) + trigamma(1 - s)"};
  }
  if (name == "Fsecond") {
    return {[](const Real& s, const PrecisionContext& c) { return F_second(s, c); },
            "zeta''(s) - tetragamma(1 - s)"};
  }
  if (name == "P") {
    return {[](const Real& s, const PrecisionContext& c) { return P_eval(s, c); }, "sum_{n>=2} 2/(n-s)^3"};
  }
  return {[](const Real& s, const PrecisionContext& c) { return J_direct(s, c); },
          "sum_n int_0^1 (t - 1/2) h_n(t) dt"};
}

int cmd_eval(const RunConfig& c, const std::string& fn, const std::string& s_text, std::ostream& out) {
  const PrecisionContext ctx = context_for(c);
  PrecisionScope scope(ctx);
  Real s;
  try {
    s = Real(s_text);
  } catch (const std::exception&) {
    throw std::invalid_argument("--s: not a number: " + s_text);
  }
  const Evaluation ev = evaluation_for(fn);
  const Approx v = ev.fn(s, ctx);
  std::ostringstream os;
  if (c.output_format == "text") {
    os << fn << "(" << s_text << ") = " << v.value().str(std::min<unsigned>(c.precision_digits, 40)) << " +/- "
       << sci(v.err()) << "  [" << ev.path << "]\n";
  } else if (c.output_format == "csv") {
    os << "fn,s,value,err,path\n" << fn << "," << sci(s) << "," << sci(v.value()) << "," << sci(v.err()) << ","
       << quoted(ev.path) << "\n";
  } else {
    os << "{\"fn\": " << quoted(fn) << ", \"s\": " << sci(s) << ", \"value\": " << sci(v.value())
       << ", \"err\": " << sci(v.err()) << ", \"path\": " << quoted(ev.path) << "}\n";
  }
  emit(c, os.str(), out);
  return 0;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  const PrecisionContext ctx = context_for(c);
  ChainOptions o;
  o.sigma_N = c.sigma_N;
  o.grid.inset = Real(c.grid_inset);
  if (c.grid_points_given) o.grid.n_points = c.grid_points;
  o.grid_ctx.work_digits = std::min(o.grid_ctx.work_digits, ctx.work_digits);
  o.grid_ctx.target_tol = std::max(o.grid_ctx.target_tol, ctx.target_tol);
  const CertificateReport r = convexity_chain(ctx, o);
  emit(c, render(r, c.output_format), out);
  return r.overall_pass ? 0 : 1;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const PrecisionContext ctx = context_for(c);
  const CertificateReport r = inequality_report(GridSpec{Real(0), Real(1), c.grid_points, Real(c.grid_inset)}, ctx);
  emit(c, render(r, c.output_format), out);
  return r.overall_pass ? 0 : 1;
}

int cmd_plot_data(const RunConfig& c, std::ostream& out) {
  if (c.output_format_given && c.output_format != "csv") {
    throw std::invalid_argument("plot-data writes csv only");
  }
  const PrecisionContext ctx = context_for(c);
  PrecisionScope scope(ctx);
  const LinearBound line = linear_bound(ctx);
  std::string body = "s,F,lower,upper\n";
  for (const Real& s : GridSpec{Real(0), Real(1), c.grid_points, Real(c.grid_inset)}.abscissae()) {
    body += g15(s) + "," + g15(F(s, ctx).value()) + "," + g15(s) + "," + g15(line(s).value()) + "\n";
  }
  emit(c, body, out);
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  if (precision_digits < 1) throw std::invalid_argument("precision must be positive");
  if (grid_points < 2) throw std::invalid_argument("grid-points must be at least 2");
  if (!(grid_inset > 0) || !(grid_inset < 0.5)) throw std::invalid_argument("grid-inset must lie in (0, 0.5)");
  if (sigma_N < 2) throw std::invalid_argument("sigma-N must be at least 2");
  if (output_format != "json" && output_format != "csv" && output_format != "text") {
    throw std::invalid_argument("format must be json, csv or text");
  }
}

void apply_config_text(const std::string& text, RunConfig& config) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "precision" || key == "precision_digits") {
      const std::int64_t d = parse_int(key, value);
      if (d < 1) throw std::invalid_argument("precision must be positive");
      config.precision_digits = static_cast<unsigned>(d);
    } else if (key == "grid-points" || key == "grid_points") {
      config.grid_points = parse_int(key, value);
      config.grid_points_given = true;
    } else if (key == "grid-inset" || key == "grid_inset") {
      config.grid_inset = parse_double(key, value);
    } else if (key == "sigma-N" || key == "sigma_N") {
      config.sigma_N = parse_int(key, value);
    } else if (key == "format" || key == "output_format") {
      config.output_format = value;
      config.output_format_given = true;
    } else if (key == "out" || key == "output_path") {
      config.output_path = value;
    } else {
      throw std::invalid_argument("config line " + std::to_string(number) + ": unknown key " + key);
    }
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate F(s) = zeta(s) - psi(1 - s) on (0, 1) and check its bounds", "zetapsi"};
  app.require_subcommand(1);

  struct Flags {
    std::optional<std::int64_t> precision, grid_points, sigma_N;
    std::optional<double> grid_inset;
    std::optional<std::string> format, out, config;
  } flags;
  std::string fn;
  std::string s_text;

  auto common = [&flags](CLI::App* sub) {
    sub->add_option("--precision", flags.precision, "working digits (default 50)");
    sub->add_option("--grid-points", flags.grid_points, "grid size (default 10000)");
    sub->add_option("--grid-inset", flags.grid_inset, "distance of the grid from 0 and 1 (default 1e-6)");
    sub->add_option("--sigma-N", flags.sigma_N, "partial sum length for Sigma (default 200)");
    sub->add_option("--format", flags.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", flags.out, "output file (default stdout)");
    sub->add_option("--config", flags.config, "key=value configuration file");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one function at one point");
  eval->add_option("--fn", fn, "zeta, digamma, F, Fprime, Fsecond, P or J")
      ->required()
      ->check(CLI::IsMember({"zeta", "digamma", "F", "Fprime", "Fsecond", "P", "J"}));
  eval->add_option("--s", s_text, "argument, as a decimal")->required();
  common(eval);
  CLI::App* certify = app.add_subcommand("certify", "run the convexity ledger");
  common(certify);
  CLI::App* verify = app.add_subcommand("verify", "check s < F(s) < b's + b and the minimum of F(s) - s");
  common(verify);
  CLI::App* plot = app.add_subcommand("plot-data", "write s,F,lower,upper rows as CSV");
  common(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    if (flags.config) {
      std::ifstream file(*flags.config);
      if (!file) throw std::ios_base::failure("cannot read " + *flags.config);
      std::ostringstream text;
      text << file.rdbuf();
      apply_config_text(text.str(), config);
    }
    if (flags.precision) {
      if (*flags.precision < 1) throw std::invalid_argument("precision must be positive");
      config.precision_digits = static_cast<unsigned>(*flags.precision);
    }
    if (flags.grid_points) {
      config.grid_points = *flags.grid_points;
      config.grid_points_given = true;
    }
    if (flags.grid_inset) config.grid_inset = *flags.grid_inset;
    if (flags.sigma_N) config.sigma_N = *flags.sigma_N;
    if (flags.format) {
      config.output_format = *flags.format;
      config.output_format_given = true;
    }
    if (flags.out) config.output_path = *flags.out;
    config.validate();
    if (auto warning = context_for(config).precision_warning()) err << "warning: " << *warning << "\n";

    if (eval->parsed()) return cmd_eval(config, fn, s_text, out);
    if (certify->parsed()) return cmd_certify(config, out);
    if (verify->parsed()) return cmd_verify(config, out);
    return cmd_plot_data(config, out);
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace zetapsi::cli
