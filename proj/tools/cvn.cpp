// Command-line front end: Lipschitz distances, displacement minimisation,
// Min-set census and fixed-point verification.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvn/dicks_ventura.hpp"
#include "cvn/displacement.hpp"
#include "cvn/lipschitz.hpp"
#include "cvn/min_explorer.hpp"
#include "cvn/text_format.hpp"

using namespace cvn;

namespace {

enum Exit { ok = 0, verification_failed = 1, input_error = 2 };

// Text mode prints "label: value", machine mode "key=value".
class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  void field(const std::string& key, const std::string& value, const std::string& label = "") {
    if (machine_) {
      std::cout << key << '=' << value << '\n';
    } else {
      std::cout << (label.empty() ? key : label) << ": " << value << '\n';
    }
  }
  void line(const std::string& text) {
    if (!machine_) std::cout << text << '\n';
  }
  bool machine() const { return machine_; }

 private:
  bool machine_;
};

std::string decimal(const Rational& r) {
  std::ostringstream s;
  s << std::setprecision(12) << to_double(r);
  return s.str();
}

std::string join(const std::vector<Rational>& v, bool as_decimal) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + (as_decimal ? decimal(v[i]) : to_string(v[i]));
  return s;
}

std::string join(const std::vector<CyclicWord>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s;
}

Rational positive(const std::string& text, const std::string& what) {
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: " + text);
  }
  if (r <= 0) throw std::invalid_argument(what + " must be positive");
  return r;
}

Workspace load(const std::string& file) { return file.empty() ? Workspace{} : load_workspace(file); }

struct Options {
  std::string file, format = "text", tol = "1e-9";
  std::string x, y, point, automorphism, simplex, control;
  int limit_simplices = 500, limit_steps = 20000, kmax = 0, p = 0, q = 0;
  bool plain = false;
};

int cmd_dist(const Options& o, Report& out) {
  const Workspace ws = load(o.file);
  const CVPoint& x = ws.point(o.x);
  const CVPoint& y = ws.point(o.y);
  const StretchResult xy = stretch(x, y), yx = stretch(y, x);
  out.field("forward", to_string(xy.value), "Lambda(" + o.x + ", " + o.y + ")");
  out.field("forward_witness", to_string(xy.witness), "  witness");
  out.field("backward", to_string(yx.value), "Lambda(" + o.y + ", " + o.x + ")");
  out.field("backward_witness", to_string(yx.witness), "  witness");
  out.field("symmetric", to_string(xy.value * yx.value), "symmetric product");
  return ok;
}

int cmd_displace(const Options& o, Report& out) {
  const Workspace ws = load(o.file);
  const CVPoint& x = ws.point(o.point);
  const AutoPair phi = ws.automorphism(o.automorphism);
  const StretchResult r = stretch(x, act(x, phi));
  out.field("displacement", to_string(r.value));
  out.field("displacement_decimal", decimal(r.value), "  decimal");
  out.field("witness", to_string(r.witness), "  witness");
  return ok;
}

void print_minimum(const MinimizationResult& r, Report& out) {
  out.field("lower", to_string(r.lower));
  out.field("upper", to_string(r.upper));
  out.field("lower_decimal", decimal(r.lower), "lower (decimal)");
  out.field("upper_decimal", decimal(r.upper), "upper (decimal)");
  out.field("argmin", join(r.argmin, false));
  out.field("argmin_decimal", join(r.argmin, true), "argmin (decimal)");
  out.field("active", join(r.active), "active candidates");
  out.field("interior", r.interior ? "yes" : "no", "attained in open simplex");
  out.field("bisection_steps", std::to_string(r.steps), "bisection steps");
}

int cmd_minimize(const Options& o, Report& out) {
  const Workspace ws = load(o.file);
  const AutoPair phi = ws.automorphism(o.automorphism);
  const MarkedGraph s = ws.simplex(o.simplex);
  if (s.rank() != phi.rank()) throw std::invalid_argument("simplex and automorphism ranks differ");
  print_minimum(min_displacement_on_simplex(s, phi, positive(o.tol, "--tol")), out);
  return ok;
}

int cmd_explore(const Options& o, Report& out) {
  const Workspace ws = load(o.file);
  const AutoPair phi = ws.automorphism(o.automorphism);
  const MarkedGraph s = o.simplex.empty() ? identity_rose(phi.rank()) : ws.simplex(o.simplex);
  if (s.rank() != phi.rank()) throw std::invalid_argument("simplex and automorphism ranks differ");
  const Rational tol = positive(o.tol, "--tol");
  if (o.limit_simplices < 1 || o.limit_steps < 1) throw std::invalid_argument("limits must be positive");
  const MinimizationResult seed_min = min_displacement_on_simplex(s, phi, tol / 1000);
  ExploreLimits limits;
  limits.max_simplices = o.limit_simplices;
  limits.max_steps = o.limit_steps;
  limits.modulo_phi = !o.plain;
  const Census c = explore_min_set({s, seed_min.argmin}, phi, tol, limits);
  const int kmax = o.kmax > 0 ? o.kmax : 2 * static_cast<int>(c.entries.size());
  const Quotient q = quotient_by_power(c.entries, phi, kmax);

  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    const SimplexCensusEntry& e = c.entries[i];
    std::ostringstream row;
    if (out.machine()) {
      row << "entry=" << i << " key=" << e.key << " edges=" << e.simplex.graph.edge_count()
          << " lower=" << to_string(e.bracket.lower) << " upper=" << to_string(e.bracket.upper)
          << " path_length=" << e.path.size() << " orbit=" << q.orbit_of[i];
      std::cout << row.str() << '\n';
    } else {
      row << std::setw(4) << i << "  " << e.key << "  edges " << e.simplex.graph.edge_count() << "  ["
          << decimal(e.bracket.lower) << ", " << decimal(e.bracket.upper) << "]  path " << e.path.size()
          << "  orbit " << q.orbit_of[i];
      std::cout << row.str() << '\n';
    }
  }
  out.field("census", std::to_string(c.entries.size()), "census size");
  out.field("links", std::to_string(c.links.size()), "face links");
  out.field("orbits", std::to_string(q.representatives.size()), "<phi>-orbits");
  out.field("best_upper", to_string(c.best), "best upper bound");
  out.field("best_upper_decimal", decimal(c.best), "best upper bound (decimal)");
  out.field("modulo_phi", limits.modulo_phi ? "yes" : "no", "explored modulo <phi>");
  out.field("partial", c.partial ? "yes" : "no", "stopped by a limit");
  out.field("steps", std::to_string(c.steps), "simplices evaluated");
  return ok;
}

int cmd_verify(const Options& o, Report& out) {
  FiniteOrderModel model;
  if (o.control == "identity") {
    model = identity_model(o.p > 0 ? o.p : 3);
  } else if (!o.control.empty()) {
    throw std::invalid_argument("unknown control '" + o.control + "'");
  } else if (o.q > 0) {
    model = build_Xpq(o.p, o.q);
  } else {
    model = build_Xp(o.p);
  }
  out.field("model", model.name);
  out.field("order", std::to_string(model.order), "graph map order");
  for (int i = 0; i < model.induced.rank(); ++i) {
    const std::string g(1, static_cast<char>('a' + i));
    out.field("phi_" + g, to_string(model.induced.fwd()[static_cast<std::size_t>(i)]), "phi(" + g + ")");
  }
  const FixedPointReport report = verify_unique_fixed_point(model);
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const FixedPointCheck& c = report.checks[i];
    if (out.machine()) {
      std::cout << "check=" << i << " step=" << c.step << " pass=" << (c.pass ? "yes" : "no") << " simplex=\""
                << c.simplex << "\" detail=\"" << c.detail << "\"\n";
    } else {
      std::cout << (c.pass ? "  ok    " : "  FAIL  ") << c.step << "  " << c.simplex << "  " << c.detail << '\n';
    }
  }
  const IsometryCount iso = unique_isometry_representative(model);
  const bool unique = iso.count == 1 && iso.representative == model.graph_map;
  out.field("isometries", std::to_string(iso.isometries), "length-preserving automorphisms");
  out.field("representatives", std::to_string(iso.count), "automorphisms representing phi");
  const bool pass = report.pass && (o.control.empty() ? unique : true);
  out.field("result", pass ? "PASS" : "FAIL");
  return pass ? ok : verification_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Culler-Vogtmann outer space"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  auto* dist = app.add_subcommand("dist", "Lipschitz distances between two points of a file");
  dist->add_option("file", o.file, "Input file")->required();
  dist->add_option("x", o.x, "First point")->required();
  dist->add_option("y", o.y, "Second point")->required();

  auto* displace = app.add_subcommand("displace", "Displacement of an automorphism at a point");
  displace->add_option("--file", o.file, "Input file");
  displace->add_option("--point", o.point, "Point name")->required();
  displace->add_option("--auto", o.automorphism, "Automorphism name")->required();

  auto* minimize = app.add_subcommand("minimize", "Minimal displacement on a closed simplex");
  minimize->add_option("--file", o.file, "Input file");
  minimize->add_option("--simplex", o.simplex, "Point name or built-in simplex (roseN, thetaN)")->required();
  minimize->add_option("--auto", o.automorphism, "Automorphism name")->required();
  minimize->add_option("--tol", o.tol, "Multiplicative bracket tolerance");

  auto* explore = app.add_subcommand("explore", "Census of Min-set simplices");
  explore->add_option("--file", o.file, "Input file");
  explore->add_option("--auto", o.automorphism, "Automorphism name")->required();
  explore->add_option("--simplex", o.simplex, "Seed simplex (default: the rose)");
  explore->add_option("--tol", o.tol, "Retention tolerance");
  explore->add_option("--limit-simplices", o.limit_simplices, "Maximum census size");
  explore->add_option("--limit-steps", o.limit_steps, "Maximum simplices evaluated");
  explore->add_option("--kmax", o.kmax, "Largest power of phi tried (default: twice the census size)");
  explore->add_flag("--plain", o.plain, "Do not identify simplices in one <phi>-orbit during the search");

  auto* verify = app.add_subcommand("verify-fixed-point", "Unique fixed point of a finite-order model");
  verify->add_option("--p", o.p, "Prime p")->required();
  verify->add_option("--q", o.q, "Prime q > p");
  verify->add_option("--control", o.control, "Negative control: identity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  // Explore's default tolerance.
  if (explore->parsed() && explore->count("--tol") == 0) o.tol = "1e-6";

  Report out(o.format == "machine");
  try {
    if (dist->parsed()) return cmd_dist(o, out);
    if (displace->parsed()) return cmd_displace(o, out);
    if (minimize->parsed()) return cmd_minimize(o, out);
    if (explore->parsed()) return cmd_explore(o, out);
    return cmd_verify(o, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return verification_failed;
  }
}
