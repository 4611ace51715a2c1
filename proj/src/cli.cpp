#include "expbasis/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "expbasis/coupled.hpp"
#include "expbasis/gdd.hpp"
#include "expbasis/gram.hpp"
#include "expbasis/spectrum.hpp"

namespace expbasis {

namespace {

using nlohmann::json;

json cj(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json poly_json(const ExpPolynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json coeffs = json::array();
    for (const auto& c : t.coeffs) coeffs.push_back(cj(c));
    terms.push_back({{"freq", cj(t.freq)}, {"coeffs", coeffs}});
  }
  return terms;
}

std::vector<cplx> parse_nodes(const std::string& text) {
  std::vector<cplx> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    double re = 0.0, im = 0.0;
    char tail = 0;
    const int got = std::sscanf(item.c_str(), "%lf,%lf%c", &re, &im, &tail);
    if (got != 2 && got != 1) throw InputError("--nodes: cannot parse '" + item + "' as re,im");
    if (got == 1 && item.find(',') != std::string::npos) throw InputError("--nodes: cannot parse '" + item + "'");
    out.emplace_back(re, im);
  }
  if (out.empty()) throw InputError("--nodes: no nodes given");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

Domain domain_of(const RunConfig& cfg) { return cfg.T ? Domain::finite(*cfg.T) : Domain::halfline(); }

std::vector<std::vector<ExpPolynomial>> group_families(const Spectrum& s, double r) {
  std::vector<std::vector<ExpPolynomial>> fams;
  for (const auto& g : cluster(s, r)) fams.push_back(gdd_family(g.nodes(s)));
  return fams;
}

json run_gdd(const RunConfig& cfg) {
  const std::vector<cplx> nodes = cfg.nodes.empty() ? Spectrum::load(cfg.input).expanded() : parse_nodes(cfg.nodes);
  if (nodes.empty()) throw InputError("gdd: empty node set");
  if (nodes.size() > 32) throw InputError("gdd: at most 32 nodes");
  json rep;
  json jn = json::array();
  for (const auto& n : nodes) jn.push_back(cj(n));
  rep["nodes"] = jn;
  rep["method"] = cfg.method;
  std::vector<double> ts;
  if (!cfg.t_grid.empty()) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char tail = 0;
    if (std::sscanf(cfg.t_grid.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &tail) != 3 || count < 1 || hi < lo)
      throw InputError("--t-grid must be min:max:count with min <= max, count >= 1");
    for (int i = 0; i < count; ++i) ts.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  json evals = json::array();
  if (cfg.method == "integral") {
    if (ts.empty()) throw InputError("gdd --method integral requires --t-grid");
    for (double t : ts) {
      const auto q = gdd_integral_eval(nodes, t, cfg.tol);
      evals.push_back({{"t", t}, {"value", cj(q.value)}, {"error_estimate", q.error_estimate},
                       {"converged", q.converged}});
    }
    rep["evaluations"] = evals;
    return rep;
  }
  const GddResult res = cfg.method == "recursive" ? gdd_recursive(nodes) : gdd_residue(nodes);
  rep["terms"] = poly_json(res.poly);
  rep["warnings"] = res.warnings;
  for (double t : ts) evals.push_back({{"t", t}, {"value", cj(eval(res.poly, t))}});
  rep["evaluations"] = evals;
  return rep;
}

json run_cluster(const RunConfig& cfg) {
  const Spectrum s = Spectrum::load(cfg.input);
  json rep;
  rep["points"] = s.count();
  if (s.count() >= 2) rep["separation"] = separation(s);
  const UnionCount u = min_union_count(s, cfg.gap_floor);
  rep["union_count"] = {{"N", u.n}, {"gap", u.gap}, {"pathological", u.pathological}};
  json groups = json::array();
  int largest = 0;
  for (const auto& g : cluster(s, *cfg.r)) {
    json members = json::array();
    for (auto idx : g.members)
      members.push_back({{"re", s.points()[idx].value.real()},
                         {"im", s.points()[idx].value.imag()},
                         {"mult", s.points()[idx].multiplicity}});
    groups.push_back({{"members", members}, {"size", g.count(s)}, {"delta", g.delta}});
    largest = std::max(largest, g.count(s));
  }
  rep["r"] = *cfg.r;
  rep["groups"] = groups;
  rep["group_count"] = groups.size();
  rep["largest_group"] = largest;
  return rep;
}

json run_gram(const RunConfig& cfg) {
  const Spectrum s = Spectrum::load(cfg.input);
  const Domain d = domain_of(cfg);
  std::vector<ExpPolynomial> fs;
  if (cfg.family == "gdd") {
    if (!cfg.r) throw InputError("gram --family gdd requires --r");
    for (auto& fam : group_families(s, *cfg.r)) fs.insert(fs.end(), fam.begin(), fam.end());
  } else {
    fs = exponentials(s.expanded());
  }
  if (fs.size() > 512) throw InputError("gram: more than 512 functions");
  const GramMatrix g = gram_functions(fs, d);
  const RieszBounds b = gram_bounds(g);
  if (!cfg.csv.empty()) write_text(cfg.csv, gram_csv(g));
  json rep;
  rep["domain"] = d.describe();
  rep["family"] = cfg.family;
  rep["dim"] = g.dim();
  rep["min_eig"] = b.lower;
  rep["max_eig"] = b.upper;
  rep["condition"] = b.condition();
  return rep;
}

json run_riesz(const RunConfig& cfg) {
  const Spectrum s = Spectrum::load(cfg.input);
  const Domain d = domain_of(cfg);
  auto fams = group_families(s, *cfg.r);
  if (!cfg.raw)
    for (auto& f : fams) f = normalized(f, d);
  const RieszBounds b = riesz_bounds(fams, d);
  json rep;
  rep["domain"] = d.describe();
  rep["r"] = *cfg.r;
  rep["groups"] = fams.size();
  rep["normalized"] = !cfg.raw;
  rep["c"] = b.lower;
  rep["C"] = b.upper;
  rep["condition"] = b.condition();
  return rep;
}

json run_a2(const RunConfig& cfg) {
  const Spectrum s = Spectrum::load(cfg.input);
  const GridSpec grid = *cfg.grid;
  const WeightSamples w = cfg.R ? weight_on_line(s, *cfg.h, grid, *cfg.R)
                                : weight_on_line_adaptive(s, *cfg.h, grid,
                                                          2.0 * std::max(std::abs(grid.x_min), std::abs(grid.x_max)));
  const A2Estimate est = a2_sup(w, IntervalFamily{cfg.min_points});
  if (!cfg.csv.empty()) write_text(cfg.csv, weight_csv(w));
  json rep;
  rep["sup"] = est.sup;
  rep["argmax_interval"] = {est.x_lo, est.x_hi};
  rep["grid"] = grid.to_json();
  rep["h"] = *cfg.h;
  rep["R"] = w.R;
  rep["intervals"] = est.intervals;
  return rep;
}

json run_observe(const RunConfig& cfg) {
  const CoupledParams p{cfg.A, cfg.B, cfg.C, cfg.D, cfg.k_max};
  p.validate();
  const ObservabilityResult res = observability_ratio(p, *cfg.T, cfg.trials, cfg.seed);
  const double exact = observability_constant(p, *cfg.T);

  // Histogram of log10 ratios, ten equal bins.
  double lo = 1e300, hi = -1e300;
  for (double r : res.ratios) {
    lo = std::min(lo, std::log10(r));
    hi = std::max(hi, std::log10(r));
  }
  const int bins = 10;
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  std::vector<int> counts(bins, 0);
  for (double r : res.ratios) counts[std::min(bins - 1, static_cast<int>((std::log10(r) - lo) / width))]++;
  std::vector<double> edges;
  for (int b = 0; b <= bins; ++b) edges.push_back(std::pow(10.0, lo + b * width));

  std::vector<double> ks, r_disp, r_vel;
  for (int k = 5; k <= std::max(6, std::min(25, cfg.k_max)); ++k) {
    ks.push_back(k);
    r_disp.push_back(kl_ratio(modal_solve(p, k, 1.0, 0.0)));
    r_vel.push_back(kl_ratio(modal_solve(p, k, 0.0, 1.0)));
  }
  std::vector<double> ka, rn, ro;
  for (int k = 10; k <= 30; ++k) {
    const auto f = eigenfrequencies(p, k);
    ka.push_back(k);
    rn.push_back(std::abs(f.nu - k - p.A / (2.0 * k)));
    ro.push_back(std::abs(f.omega - double(k) * k - p.D / (2.0 * k * k)));
  }

  if (!cfg.csv.empty()) {
    std::string text = "trial,ratio\n";
    char buf[64];
    for (std::size_t i = 0; i < res.ratios.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, res.ratios[i]);
      text += buf;
    }
    write_text(cfg.csv, text);
  }

  json rep;
  rep["params"] = p.to_json();
  rep["T"] = *cfg.T;
  rep["K_max"] = cfg.k_max;
  rep["trials"] = cfg.trials;
  rep["seed"] = cfg.seed;
  rep["c_min"] = res.c_min;
  rep["c_exact"] = exact;
  rep["ratio_histogram"] = {{"edges", edges}, {"counts", counts}};
  rep["kl_slope"] = loglog_slope(ks, r_disp);
  rep["kl_slope_velocity"] = loglog_slope(ks, r_vel);
  rep["asymp_slopes"] = {{"nu", loglog_slope(ka, rn)}, {"omega", loglog_slope(ka, ro)}};
  return rep;
}

void write_value(std::string& out, const json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write_value(out, it.value(), indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_value(out, j[i], indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  json j{{"command", command}, {"output", output}};
  if (!input.empty()) j["in"] = input;
  if (!nodes.empty()) j["nodes"] = nodes;
  if (!csv.empty()) j["csv"] = csv;
  if (r) j["r"] = *r;
  if (T) j["T"] = *T;
  if (R) j["R"] = *R;
  if (h) j["h"] = *h;
  if (grid) j["grid"] = grid->to_json();
  if (command == "gdd") {
    j["method"] = method;
    j["tol"] = tol;
    if (!t_grid.empty()) j["t_grid"] = t_grid;
  }
  if (command == "gram") j["family"] = family;
  if (command == "riesz") j["raw"] = raw;
  if (command == "cluster") j["gap_floor"] = gap_floor;
  if (command == "a2") j["min_points"] = min_points;
  if (command == "observe") {
    j["A"] = A;
    j["B"] = B;
    j["C"] = C;
    j["D"] = D;
    j["K_max"] = k_max;
    j["trials"] = trials;
    j["seed"] = seed;
  }
  return j;
}

std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Exponential bases toolkit: divided differences, clustering, Gram and A2 analysis", "expbasis"};
  app.require_subcommand(1, 1);

  double r = 0.0, T = 0.0, R = 0.0, h = 0.0;
  std::string grid;

  auto common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--out,-o", cfg.output, "report path, - for stdout");
  };
  auto spectrum_in = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--in,-i", cfg.input, "spectrum JSON");
    if (required) o->required();
    return o;
  };

  auto* gdd = app.add_subcommand("gdd", "generalized divided difference of exp(i mu t)");
  common(gdd);
  auto* gdd_in = spectrum_in(gdd, false);
  auto* gdd_nodes = gdd->add_option("--nodes", cfg.nodes, "nodes as re,im;re,im;...");
  gdd_in->excludes(gdd_nodes);
  gdd->add_option("--method", cfg.method, "residue | recursive | integral")
      ->check(CLI::IsMember({"residue", "recursive", "integral"}));
  gdd->add_option("--t-grid", cfg.t_grid, "evaluation times min:max:count");
  gdd->add_option("--tol", cfg.tol, "quadrature tolerance");

  auto* cl = app.add_subcommand("cluster", "groups of the union-of-disks decomposition");
  common(cl);
  spectrum_in(cl, true);
  cl->add_option("--r", r, "disk radius")->required();
  cl->add_option("--gap-floor", cfg.gap_floor, "gaps at or below this count as collapsed");

  auto* gr = app.add_subcommand("gram", "Gram matrix of exponentials or GDD families");
  common(gr);
  spectrum_in(gr, true);
  gr->add_option("--T", T, "section length (omit for the half-line)");
  gr->add_option("--family", cfg.family, "exp | gdd")->check(CLI::IsMember({"exp", "gdd"}));
  gr->add_option("--r", r, "cluster radius for --family gdd");
  gr->add_option("--csv", cfg.csv, "write the matrix as CSV");

  auto* rz = app.add_subcommand("riesz", "Riesz bounds of the clustered GDD family");
  common(rz);
  spectrum_in(rz, true);
  rz->add_option("--T", T, "section length (omit for the half-line)");
  rz->add_option("--r", r, "cluster radius")->required();
  rz->add_flag("--raw", cfg.raw, "do not normalize the GDDs");

  auto* a2 = app.add_subcommand("a2", "Muckenhoupt A2 estimate of |F(x+ih)|^2");
  common(a2);
  spectrum_in(a2, true);
  a2->add_option("--h", h, "line height")->required();
  a2->add_option("--grid", grid, "min:max:count")->required();
  a2->add_option("--R", R, "truncation radius (adaptive when omitted)");
  a2->add_option("--min-points", cfg.min_points, "smallest dyadic interval, in samples");
  a2->add_option("--csv", cfg.csv, "write the weight samples as CSV");

  auto* ob = app.add_subcommand("observe", "observability of the coupled string-beam system");
  common(ob);
  ob->add_option("--A", cfg.A);
  ob->add_option("--B", cfg.B);
  ob->add_option("--C", cfg.C);
  ob->add_option("--D", cfg.D);
  ob->add_option("--T", T, "observation time")->required();
  ob->add_option("--kmax,--K-max", cfg.k_max, "number of modes");
  ob->add_option("--trials", cfg.trials);
  ob->add_option("--seed", cfg.seed);
  ob->add_option("--csv", cfg.csv, "write per-trial ratios as CSV");

  std::vector<std::string> argv_store{"expbasis"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  auto given = [&](const std::string& flag) { return sub->get_option_no_throw(flag) && sub->count(flag) > 0; };
  if (given("--r")) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InputError("--r must be positive");
    cfg.r = r;
  }
  if (given("--T")) {
    if (!(T > 0.0) || !std::isfinite(T)) throw InputError("--T must be positive");
    cfg.T = T;
  }
  if (given("--R")) {
    if (!(R > 0.0)) throw InputError("--R must be positive");
    cfg.R = R;
  }
  if (given("--h")) {
    if (!std::isfinite(h)) throw InputError("--h must be finite");
    cfg.h = h;
  }
  if (given("--grid")) cfg.grid = GridSpec::parse(grid);
  if (cfg.command == "gdd" && cfg.input.empty() && cfg.nodes.empty())
    throw InputError("gdd requires --in or --nodes");
  if (cfg.command == "gdd" && !(cfg.tol > 0.0)) throw InputError("--tol must be positive");
  if (cfg.command == "a2" && cfg.min_points < 2) throw InputError("--min-points must be >= 2");
  if (cfg.command == "cluster" && !(cfg.gap_floor >= 0.0)) throw InputError("--gap-floor must be >= 0");
  if (cfg.command == "observe") {
    if (cfg.k_max < 1 || cfg.k_max > 200) throw InputError("--kmax must be in 1..200");
    if (cfg.trials < 1) throw InputError("--trials must be >= 1");
  }
  return cfg;
}

nlohmann::json run_report(const RunConfig& cfg) {
  json rep;
  if (cfg.command == "gdd") rep = run_gdd(cfg);
  else if (cfg.command == "cluster") rep = run_cluster(cfg);
  else if (cfg.command == "gram") rep = run_gram(cfg);
  else if (cfg.command == "riesz") rep = run_riesz(cfg);
  else if (cfg.command == "a2") rep = run_a2(cfg);
  else if (cfg.command == "observe") rep = run_observe(cfg);
  else throw InputError("unknown command: " + cfg.command);
  rep["command"] = cfg.command;
  rep["config"] = cfg.to_json();
  return rep;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = dump_report(run_report(cfg)) + "\n";
    if (cfg.output == "-") out << text;
    else write_text(cfg.output, text);
    return 0;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DegeneracyError& e) {
    err << "numerical degeneracy: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_config(args, out);
  } catch (const InputError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (!cfg) return 0;
  return dispatch(*cfg, out, err);
}

std::string dump_report(const nlohmann::json& j) {
  std::string out;
  write_value(out, j, 0);
  return out;
}

}  // namespace expbasis
