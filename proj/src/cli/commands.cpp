#include "pgn/cli/commands.hpp"

#include "pgn/constructions/construction.hpp"
#include "pgn/constructions/lemma_key.hpp"
#include "pgn/constructions/verify.hpp"
#include "pgn/core/errors.hpp"
#include "pgn/core/format.hpp"
#include "pgn/latflow/diophantine.hpp"
#include "pgn/latflow/dimension.hpp"
#include "pgn/latflow/trajectory.hpp"
#include "pgn/templates/rates.hpp"
#include "pgn/templates/standard.hpp"
#include "pgn/templates/template_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace pgn {

namespace {

using nlohmann::json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Rational rat(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw Usage(e.what());
  }
}

double real(const std::string& s) { return to_double(rat(s)); }

std::vector<FactorPair> parse_pairs(const std::vector<std::string>& items) {
  std::vector<FactorPair> out;
  for (const auto& it : items) {
    auto f = split(it, ',');
    if (f.size() != 2) throw Usage("pair must look like m,n: " + it);
    try {
      out.push_back({std::stoi(f[0]), std::stoi(f[1])});
    } catch (const std::exception&) {
      throw Usage("pair must look like m,n: " + it);
    }
  }
  if (out.empty()) throw Usage("at least one --pairs entry is required");
  return out;
}

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& f : split(s, ',')) out.push_back(rat(f));
  return out;
}

SystemShape make_shape(const std::vector<std::string>& pairs, const std::string& weights) {
  auto p = parse_pairs(pairs);
  try {
    if (weights.empty()) return SystemShape(p);
    return SystemShape(p, parse_list(weights));
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
}

// rows separated by ';', entries by ','
Matrix parse_matrix(const std::string& s, int m, int n) {
  auto rows = split(s, ';');
  if (static_cast<int>(rows.size()) != m) throw Usage("theta needs " + std::to_string(m) + " rows");
  Matrix out(m, n);
  for (int i = 0; i < m; ++i) {
    auto cols = split(rows[i], ',');
    if (static_cast<int>(cols.size()) != n)
      throw Usage("theta rows need " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) out(i, j) = real(cols[j]);
  }
  return out;
}

Matrix parse_square(const std::string& s) {
  auto rows = split(s, ';');
  const int d = static_cast<int>(rows.size());
  return parse_matrix(s, d, d);
}

json rjson(const Rational& r) { return to_string(r); }

struct Sink {
  std::ostream& out;
  std::string dir;

  // writes to DIR/name when --out is given, stdout otherwise
  void emit(const std::string& name, const std::string& text) {
    if (dir.empty()) {
      out << text;
      return;
    }
    std::filesystem::create_directories(dir);
    auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    out << "wrote " << path.string() << "\n";
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json shape_json(const SystemShape& shape) {
  json pairs = json::array(), weights = json::array();
  for (int i = 0; i < shape.s(); ++i) {
    pairs.push_back({shape.pair(i).m, shape.pair(i).n});
    weights.push_back(to_string(shape.weight(i)));
  }
  return {{"pairs", pairs}, {"weights", weights}};
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Usage("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Usage(path + ": " + e.what());
  }
}

Template read_template(const std::string& path) {
  try {
    return template_from_json(read_json_file(path));
  } catch (const std::invalid_argument& e) {
    throw Usage(path + ": " + e.what());
  }
}

PointSequence parse_points(const std::string& s) {
  PointSequence pts;
  for (const auto& item : split(s, ',')) {
    auto f = split(item, ':');
    if (f.size() != 2) throw Usage("points look like t:eps,t:eps,...");
    pts.push_back({rat(f[0]), rat(f[1])});
  }
  return pts;
}

std::vector<double> parse_range(const std::string& s) {
  auto f = split(s, ':');
  if (f.size() == 1) return {real(f[0])};
  if (f.size() != 3) throw Usage("time range looks like start:stop:step");
  try {
    return make_grid(real(f[0]), real(f[1]), real(f[2]));
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
}

struct Global {
  std::string out_dir;
  std::string format;
  unsigned seed = 1;
  double budget = kDefaultBudget;
};

std::string fmt_or(const Global& g, const std::string& dflt) {
  return g.format.empty() ? dflt : g.format;
}

// ---------------------------------------------------------------- dim

int cmd_dim(const Global& g, Sink& sink, const std::vector<std::string>& pairs,
            const std::string& weights, const std::string& delta) {
  auto shape = make_shape(pairs, weights);
  Rational d = rat(delta);
  if (!(d > 0 && d <= 1)) throw Usage("--delta must lie in (0,1]");
  auto r = dimension_report(shape, d);
  std::vector<std::pair<std::string, Rational>> rows{
      {"dim_M", r.dim_M},       {"dim_X", r.dim_X},
      {"min_b", r.min_b},       {"dim_D", r.dim_D},
      {"dim_De", r.dim_D},      {"dim_D_delta", r.dim_D_delta},
      {"dim_De_delta", r.dim_D_delta}, {"dim_X_D", r.dim_X_D},
      {"dim_X_D_delta", r.dim_X_D_delta}};
  if (fmt_or(g, "json") == "csv") {
    std::ostringstream os;
    os << "quantity,value\n";
    os << "delta," << to_string(d) << "\n";
    for (const auto& [k, v] : rows) os << k << "," << to_string(v) << "\n";
    for (std::size_t i = 0; i < r.sing.size(); ++i) {
      os << "sing_" << i + 1 << "," << to_string(r.sing[i]) << "\n";
      os << "sing_Y_" << i + 1 << "," << to_string(r.sing_y[i]) << "\n";
      os << "sing_Y_delta_" << i + 1 << "," << to_string(r.sing_y_delta[i]) << "\n";
    }
    sink.emit("dim.csv", os.str());
  } else {
    json j = shape_json(shape);
    j["delta"] = rjson(d);
    for (const auto& [k, v] : rows) j[k] = rjson(v);
    json sing = json::array(), sy = json::array(), syd = json::array();
    for (std::size_t i = 0; i < r.sing.size(); ++i) {
      sing.push_back(rjson(r.sing[i]));
      sy.push_back(rjson(r.sing_y[i]));
      syd.push_back(rjson(r.sing_y_delta[i]));
    }
    j["sing"] = sing;
    j["sing_Y"] = sy;
    j["sing_Y_delta"] = syd;
    sink.emit("dim.json", dump(j));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- template

json violations_json(const ValidationReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"kind", to_string(x.kind)},
                 {"where", x.where},
                 {"coordinate", x.coord},
                 {"detail", x.detail}});
  return v;
}

int cmd_template_validate(const Global&, Sink& sink, const std::string& file) {
  auto L = read_template(file);
  auto rep = validate_template(L);
  json j{{"status", rep.ok() ? "valid" : "invalid"}, {"violations", violations_json(rep)}};
  sink.emit("validation.json", dump(j));
  return rep.ok() ? kExitOk : kExitDomain;
}

int cmd_template_trivial(const Global&, Sink& sink, int m, int n, const std::string& T) {
  if (m < 1 || n < 1) throw Usage("m and n must be positive");
  Rational t = rat(T);
  if (!(t > 0)) throw Usage("--T must be positive");
  sink.emit("template.json", dump(template_to_json(trivial_template(m, n, t))));
  return kExitOk;
}

int cmd_template_standard(const Global& g, Sink& sink, int m, int n, const std::string& points,
                          int random) {
  if (m < 1 || n < 1) throw Usage("m and n must be positive");
  if (random > 0) {
    // property demo: random pairs satisfying the sufficient length condition
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<int> eps_num(0, 200), extra(0, 500);
    json rows = json::array();
    bool all_ok = true;
    for (int r = 0; r < random; ++r) {
      Rational e1(eps_num(rng), 20), e2(eps_num(rng), 20);
      e1.canonicalize();
      e2.canonicalize();
      Rational dt = (m + n) * (m + n) * std::max(e1, e2) + frac(1 + extra(rng), 4);
      auto L = standard_template({0, e1}, {dt, e2}, m, n);
      auto rep = validate_template(L);
      Rational mx = L.knot(0)[0];
      for (std::size_t k = 1; k <= L.segments(); ++k) mx = std::max(mx, L.knot(k)[0]);
      bool st1 = mx == -std::min(e1, e2);
      all_ok = all_ok && rep.ok() && st1;
      rows.push_back({{"eps1", rjson(e1)},
                      {"eps2", rjson(e2)},
                      {"dt", rjson(dt)},
                      {"valid", rep.ok()},
                      {"maxL1", rjson(mx)},
                      {"maxL1_is_minus_min_eps", st1},
                      {"delta", rjson(average_contraction(L, L.start(), L.end()))}});
    }
    sink.emit("random_standard.json",
              dump({{"m", m}, {"n", n}, {"seed", g.seed}, {"all_ok", all_ok}, {"pairs", rows}}));
    return all_ok ? kExitOk : kExitDomain;
  }
  if (points.empty()) throw Usage("--points is required");
  auto pts = parse_points(points);
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].t > pts[i - 1].t)) throw Usage("point times must increase");
  for (const auto& p : pts)
    if (p.eps < 0) throw Usage("heights must be nonnegative");
  auto L = standard_template_seq(pts, m, n);
  auto rep = validate_template(L);
  if (!rep.ok()) throw DomainError("constructed template fails validation");
  sink.emit("template.json", dump(template_to_json(L)));
  return kExitOk;
}

int cmd_template_rate(const Global& g, Sink& sink, const std::string& file,
                      const std::string& window, const std::string& phi) {
  auto L = read_template(file);
  auto rep = validate_template(L);
  if (!rep.ok()) throw DomainError("template fails validation; rates need a valid template");
  Rational a = L.start(), b = L.end();
  if (!window.empty()) {
    auto w = split(window, ',');
    if (w.size() != 2) throw Usage("--window looks like a,b");
    a = rat(w[0]);
    b = rat(w[1]);
    if (!(a < b) || a < L.start() || b > L.end()) throw Usage("window outside the template domain");
  }
  auto prof = contraction_rate(L);
  Rational delta = average_contraction(L, prof, a, b);
  if (fmt_or(g, "json") == "csv") {
    std::ostringstream os;
    os << "t_start,t_end,delta\n";
    for (std::size_t k = 0; k < L.segments(); ++k)
      os << to_string(L.breakpoints()[k]) << "," << to_string(L.breakpoints()[k + 1]) << ","
         << prof.delta[k] << "\n";
    sink.emit("rate.csv", os.str());
    return kExitOk;
  }
  json j{{"window", {rjson(a), rjson(b)}},
         {"delta", rjson(delta)},
         {"delta_decimal", to_double(delta)}};
  if (!phi.empty()) {
    Rational f = rat(phi);
    if (!(f > 0 && f < 1)) throw Usage("--phi must lie in (0,1)");
    auto lo = lower_average_estimate(L, b, f);
    j["lower_average"] = rjson(lo.value);
    j["lower_average_decimal"] = to_double(lo.value);
    j["lower_average_at"] = rjson(lo.argmin);
    j["lower_average_grid_size"] = lo.grid.size();
  }
  sink.emit("rate.json", dump(j));
  return kExitOk;
}

// ---------------------------------------------------------------- construct

int cmd_construct(const Global& g, Sink& sink, std::ostream& err, const std::string& mode_s,
                  const std::vector<std::string>& pairs, const std::string& weights,
                  const std::string& deltas, const std::string& band, int kmax,
                  const std::vector<std::string>& at, const std::vector<int>& ks,
                  bool emit_templates) {
  Mode mode;
  if (mode_s == "I")
    mode = Mode::I;
  else if (mode_s == "II")
    mode = Mode::II;
  else
    throw Usage("--mode must be I or II");
  std::vector<std::string> pr = pairs.empty() ? std::vector<std::string>{"1,1", "1,1"} : pairs;
  auto shape = make_shape(pr, weights);
  if (shape.s() < 2) throw Usage("constructions need at least two factors");
  std::vector<Rational> ds;
  if (mode == Mode::II) {
    if (deltas.empty()) throw Usage("mode II needs --deltas");
    ds = parse_list(deltas);
    if (band.empty()) throw Usage("mode II needs --band");
  }
  if (kmax < 1) throw Usage("--kmax must be positive");
  std::optional<Schedule> sched;
  try {
    sched.emplace(shape, kmax, mode, ds);
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
  std::vector<int> klist = ks;
  for (const auto& a : at) klist.push_back(sched->first_k_at(real(a)));
  if (klist.empty()) klist.push_back(std::max(sched->k0() + 1, sched->first_k_at(1e7)));
  std::sort(klist.begin(), klist.end());
  klist.erase(std::unique(klist.begin(), klist.end()), klist.end());
  for (int k : klist)
    if (k < sched->k0() || k > kmax)
      throw NoValidK0("k = " + std::to_string(k) + " lies outside [k0, kmax] = [" +
                      std::to_string(sched->k0()) + ", " + std::to_string(kmax) + "]");

  VerificationReport rep;
  rep.mode = mode;
  std::vector<TemplateTuple> tuples;
  json validity = json::array();
  for (int k : klist) {
    auto tuple = mode == Mode::I ? construction_I(*sched, k, k) : construction_II(*sched, k, k);
    for (int i = 0; i < shape.s(); ++i) {
      auto vr = validate_template(tuple.components[i]);
      validity.push_back({{"k", k}, {"factor", i + 1}, {"valid", vr.ok()}, {"violations", vr.violations.size()}});
      if (!vr.ok())
        err << "warning: factor " << i + 1 << " window k = " << k << " has " << vr.violations.size()
            << " template violations\n";
    }
    auto part = mode == Mode::I ? verify_construction_I(tuple, *sched, {k})
                                : verify_construction_II(tuple, *sched, {k}, rat(band));
    rep.band = part.band;
    rep.windows.insert(rep.windows.end(), part.windows.begin(), part.windows.end());
    rep.witnesses.insert(rep.witnesses.end(), part.witnesses.begin(), part.witnesses.end());
    rep.occupations.insert(rep.occupations.end(), part.occupations.begin(), part.occupations.end());
    if (emit_templates) tuples.push_back(std::move(tuple));
  }

  if (fmt_or(g, "json") == "csv") {
    std::ostringstream os;
    write_report_csv(os, rep);
    sink.emit("report.csv", os.str());
    if (mode == Mode::II) {
      std::ostringstream oc;
      write_occupation_csv(oc, rep);
      sink.emit("occupations.csv", oc.str());
    }
  } else {
    json j = report_to_json(rep);
    j["shape"] = shape_json(shape);
    j["k0"] = sched->k0();
    j["kmax"] = kmax;
    j["validation"] = validity;
    sink.emit("report.json", dump(j));
  }
  for (const auto& t : tuples)
    for (int i = 0; i < shape.s(); ++i)
      sink.emit("factor_" + std::to_string(i + 1) + "_k" + std::to_string(t.k_first) + ".json",
                dump(template_to_json(t.components[i])));
  return kExitOk;
}

// ---------------------------------------------------------------- lattice

int cmd_lattice_minima(const Global& g, Sink& sink, const std::string& basis,
                       const std::string& theta, int m, int n, const std::string& t) {
  std::optional<LatticeBasis> B;
  try {
    if (!basis.empty())
      B.emplace(parse_square(basis));
    else if (!theta.empty())
      B.emplace(flowed_basis(parse_matrix(theta, m, n), t.empty() ? 0.0 : real(t)));
    else
      throw Usage("give --basis or --theta");
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
  auto res = successive_minima(*B, g.budget);
  if (fmt_or(g, "json") == "csv") {
    std::ostringstream os;
    os << "k,lambda,h,coefficients\n";
    for (std::size_t k = 0; k < res.lambda.size(); ++k) {
      os << k + 1 << "," << format_double(res.lambda[k]) << ","
         << format_double(std::log(res.lambda[k])) << ",";
      for (std::size_t j = 0; j < res.coeffs[k].size(); ++j)
        os << (j ? " " : "") << res.coeffs[k][j];
      os << "\n";
    }
    sink.emit("minima.csv", os.str());
  } else {
    json j{{"lambda", res.lambda}, {"coefficients", res.coeffs}};
    sink.emit("minima.json", dump(j));
  }
  return kExitOk;
}

int cmd_lattice_traj(const Global& g, Sink& sink, const std::string& theta, int m, int n,
                     const std::string& range) {
  if (theta.empty()) throw Usage("--theta is required");
  if (range.empty()) throw Usage("--t is required");
  auto th = parse_matrix(theta, m, n);
  auto grid = parse_range(range);
  auto traj = h_trajectory(th, grid, g.budget);
  if (fmt_or(g, "csv") == "csv") {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    sink.emit("trajectory.csv", os.str());
  } else {
    sink.emit("trajectory.json", dump({{"t", traj.grid}, {"h", traj.rows}}));
  }
  return kExitOk;
}

int cmd_lattice_scan(const Global& g, Sink& sink, const std::string& theta, int m, int n,
                     const std::string& eps, const std::string& Q) {
  if (theta.empty() || eps.empty() || Q.empty()) throw Usage("--theta, --eps and --Q are required");
  auto th = parse_matrix(theta, m, n);
  double e = real(eps), q = real(Q);
  if (!(e > 0)) throw Usage("--eps must be positive");
  if (!(q >= 1)) throw Usage("--Q must be at least 1");
  auto w = scan_Q(th, e, q, g.budget);
  json j{{"found", w.has_value()}};
  if (w) {
    j["p"] = w->p;
    j["q"] = w->q;
    j["error"] = w->error;
    j["qnorm"] = w->qnorm;
    j["message"] = "witness";
  } else {
    j["message"] = "no witness";
  }
  if (fmt_or(g, "json") == "csv") {
    std::ostringstream os;
    os << "found,p,q,error\n";
    if (w) {
      os << "1,";
      for (std::size_t i = 0; i < w->p.size(); ++i) os << (i ? " " : "") << w->p[i];
      os << ",";
      for (std::size_t i = 0; i < w->q.size(); ++i) os << (i ? " " : "") << w->q[i];
      os << "," << format_double(w->error) << "\n";
    } else {
      os << "0,,,\n";
    }
    sink.emit("scan.csv", os.str());
  } else {
    sink.emit("scan.json", dump(j));
  }
  return kExitOk;
}

int cmd_lattice_occupy(const Global& g, Sink& sink, const std::vector<std::string>& thetas,
                       const std::vector<std::string>& pairs, const std::string& weights,
                       const std::string& eps, const std::string& T, const std::string& step,
                       int exclude, const std::string& cusp) {
  if (thetas.empty()) throw Usage("--theta is required");
  if (T.empty()) throw Usage("--T is required");
  OccupationGrid grid{real(T), step.empty() ? 0.01 : real(step)};
  if (!(grid.T > 0) || !(grid.step > 0) || grid.step > 0.1)
    throw Usage("need T > 0 and step in (0, 0.1]");
  json j{{"T", grid.T}, {"step", grid.step}};
  if (!cusp.empty()) {
    auto pr = pairs.empty() ? std::vector<std::string>{"1,1"} : pairs;
    auto p = parse_pairs(pr);
    if (thetas.size() != 1 || p.size() != 1) throw Usage("cusp occupation takes one factor");
    double r = real(cusp);
    if (!(r > 0 && r < 1)) throw Usage("--cusp threshold must lie in (0,1)");
    double v = cusp_occupation(parse_matrix(thetas[0], p[0].m, p[0].n), r, grid, g.budget);
    j["r"] = r;
    j["cusp_occupation"] = v;
  } else {
    auto pr = pairs;
    if (pr.empty()) pr.assign(thetas.size(), "1,1");
    auto shape = make_shape(pr, weights);
    if (static_cast<int>(thetas.size()) != shape.s()) throw Usage("one --theta per factor");
    MatrixTuple th;
    for (int i = 0; i < shape.s(); ++i)
      th.push_back(parse_matrix(thetas[i], shape.pair(i).m, shape.pair(i).n));
    if (eps.empty()) throw Usage("--eps is required");
    double e = real(eps);
    if (!(e > 0)) throw Usage("--eps must be positive");
    std::optional<int> ex;
    if (exclude > 0) {
      if (exclude > shape.s()) throw Usage("--exclude names a missing factor");
      ex = exclude - 1;
    }
    double v = occupation_joint(th, shape, e, grid, ex, g.budget);
    j["eps"] = e;
    j["exclude"] = exclude;
    j["occupation"] = v;
  }
  if (fmt_or(g, "json") == "csv") {
    std::ostringstream os;
    os << "quantity,value\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      os << it.key() << "," << format_double(it.value().get<double>()) << "\n";
    sink.emit("occupation.csv", os.str());
  } else {
    sink.emit("occupation.json", dump(j));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- lemmakey

int cmd_lemmakey(const Global&, Sink& sink, const std::string& file) {
  json input = read_json_file(file);
  std::vector<BoundedFunction> f;
  std::vector<Rational> sigma;
  Rational eps, t0;
  try {
    for (const auto& x : input.at("sigma")) sigma.push_back(rational_from_json(x));
    eps = rational_from_json(input.at("eps"));
    t0 = rational_from_json(input.at("t0"));
    for (const auto& fj : input.at("functions")) {
      StepFunction sf;
      if (fj.contains("cuts"))
        for (const auto& c : fj["cuts"]) sf.cuts.push_back(rational_from_json(c));
      for (const auto& v : fj.at("values")) sf.values.push_back(rational_from_json(v));
      if (fj.contains("sup"))
        f.push_back(bounded(std::move(sf), rational_from_json(fj["sup"])));
      else
        f.push_back(bounded(std::move(sf)));
    }
  } catch (const json::exception& e) {
    throw Usage(file + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw Usage(file + ": " + e.what());
  }
  Rational t;
  try {
    t = lemma_key_solve(f, sigma, eps, t0);
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
  Rational slack = lemma_key_slack(f, sigma, eps, t);
  bool ok = slack >= 0 && t >= t0;
  json j{{"t", rjson(t)},
         {"t_decimal", to_double(t)},
         {"slack", rjson(slack)},
         {"holds", ok},
         {"verification", ok ? "inequality holds" : "inequality FAILS"}};
  sink.emit("lemmakey.json", dump(j));
  return ok ? kExitOk : kExitDomain;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"parametric geometry of numbers laboratory", "pgn"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out_dir, "write outputs into this directory");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "seed for randomized demos");
  app.add_option("--budget", g.budget, "enumeration cell budget")->check(CLI::PositiveNumber);

  std::function<int(Sink&)> action;

  // dim
  auto* dim = app.add_subcommand("dim", "dimension formulas");
  std::vector<std::string> dim_pairs;
  std::string dim_weights, dim_delta = "1";
  dim->add_option("--pairs", dim_pairs, "factor sizes m,n")->required();
  dim->add_option("--weights", dim_weights, "comma separated weights");
  dim->add_option("--delta", dim_delta, "delta in (0,1]");
  dim->callback([&] { action = [&](Sink& s) { return cmd_dim(g, s, dim_pairs, dim_weights, dim_delta); }; });

  // template
  auto* tpl = app.add_subcommand("template", "template calculus");
  tpl->require_subcommand(1);
  std::string tfile, window, phi, points, tT = "1";
  int tm = 1, tn = 1, trandom = 0;
  auto* tv = tpl->add_subcommand("validate", "check the template conditions");
  tv->add_option("file", tfile)->required();
  tv->callback([&] { action = [&](Sink& s) { return cmd_template_validate(g, s, tfile); }; });
  auto* ts = tpl->add_subcommand("standard", "standard template through admissible points");
  ts->add_option("--m", tm);
  ts->add_option("--n", tn);
  ts->add_option("--points", points, "t:eps,t:eps,...");
  ts->add_option("--random", trandom, "check N random admissible pairs instead");
  ts->callback([&] { action = [&](Sink& s) { return cmd_template_standard(g, s, tm, tn, points, trandom); }; });
  auto* tr = tpl->add_subcommand("rate", "average contraction rate");
  tr->add_option("file", tfile)->required();
  tr->add_option("--window", window, "a,b");
  tr->add_option("--phi", phi, "tail fraction for the lower average estimate");
  tr->callback([&] { action = [&](Sink& s) { return cmd_template_rate(g, s, tfile, window, phi); }; });
  auto* tt = tpl->add_subcommand("trivial", "the zero template on [0,T]");
  tt->add_option("--m", tm);
  tt->add_option("--n", tn);
  tt->add_option("--T", tT);
  tt->callback([&] { action = [&](Sink& s) { return cmd_template_trivial(g, s, tm, tn, tT); }; });

  // construct
  auto* con = app.add_subcommand("construct", "constructions I and II with verification");
  std::string mode = "I", cweights, cdeltas, cband;
  std::vector<std::string> cpairs, cat;
  std::vector<int> cks;
  int kmax = 20000;
  bool emit_templates = false;
  con->add_option("--mode", mode, "I or II");
  con->add_option("--pairs", cpairs, "factor sizes m,n (default 1,1 1,1)");
  con->add_option("--weights", cweights);
  con->add_option("--deltas", cdeltas, "mode II per-factor deltas");
  con->add_option("--band", cband, "mode II band half-width C");
  con->add_option("--kmax", kmax);
  con->add_option("--at", cat, "verify the first window with T_k >= value");
  con->add_option("--k", cks, "verify these windows");
  con->add_flag("--templates", emit_templates, "also write the window templates");
  con->callback([&] {
    action = [&](Sink& s) {
      return cmd_construct(g, s, err, mode, cpairs, cweights, cdeltas, cband, kmax, cat, cks, emit_templates);
    };
  });

  // lattice
  auto* lat = app.add_subcommand("lattice", "lattice flows and Diophantine scans");
  lat->require_subcommand(1);
  std::string basis, theta, lt, range, leps, lQ, lT, lstep, lcusp, lweights;
  std::vector<std::string> lthetas, lpairs;
  int lm = 1, ln = 1, lexclude = 0;
  auto* lmin = lat->add_subcommand("minima", "successive minima");
  lmin->add_option("--basis", basis, "rows separated by ';'");
  lmin->add_option("--theta", theta);
  lmin->add_option("--m", lm);
  lmin->add_option("--n", ln);
  lmin->add_option("--t", lt);
  lmin->callback([&] { action = [&](Sink& s) { return cmd_lattice_minima(g, s, basis, theta, lm, ln, lt); }; });
  auto* ltr = lat->add_subcommand("traj", "h_k(t) along the flow");
  ltr->add_option("--theta", theta);
  ltr->add_option("--m", lm);
  ltr->add_option("--n", ln);
  ltr->add_option("--t", range, "start:stop:step");
  ltr->callback([&] { action = [&](Sink& s) { return cmd_lattice_traj(g, s, theta, lm, ln, range); }; });
  auto* lsc = lat->add_subcommand("scan", "Dirichlet-improving witness search");
  lsc->add_option("--theta", theta);
  lsc->add_option("--m", lm);
  lsc->add_option("--n", ln);
  lsc->add_option("--eps", leps);
  lsc->add_option("--Q", lQ);
  lsc->callback([&] { action = [&](Sink& s) { return cmd_lattice_scan(g, s, theta, lm, ln, leps, lQ); }; });
  auto* loc = lat->add_subcommand("occupy", "occupation fractions");
  loc->add_option("--theta", lthetas, "one matrix per factor");
  loc->add_option("--pairs", lpairs);
  loc->add_option("--weights", lweights);
  loc->add_option("--eps", leps);
  loc->add_option("--T", lT);
  loc->add_option("--step", lstep);
  loc->add_option("--exclude", lexclude, "1-based factor to leave out");
  loc->add_option("--cusp", lcusp, "measure lambda_1 < r instead");
  loc->callback([&] {
    action = [&](Sink& s) {
      return cmd_lattice_occupy(g, s, lthetas, lpairs, lweights, leps, lT, lstep, lexclude, lcusp);
    };
  });

  // lemmakey
  auto* lk = app.add_subcommand("lemmakey", "constructive search for the key inequality");
  std::string lkfile;
  lk->add_option("file", lkfile)->required();
  lk->callback([&] { action = [&](Sink& s) { return cmd_lemmakey(g, s, lkfile); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Sink sink{out, g.out_dir};
  try {
    return action(sink);
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace pgn
