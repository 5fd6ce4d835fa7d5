#include "sgw/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgw {

namespace {
double parseExponent(const Json& j, const char* field) {
  const Json& v = j.at(field);
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument(std::string("config: '") + field + "' must be a number or \"inf\"");
  }
  return v.get<double>();
}

Json exponentToJson(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}
}  // namespace

Json spectral_to_json(const SpectralFunction& f) {
  Json out;
  out["dim"] = f.dim;
  Json coeffs = Json::array();
  for (const auto& [k, c] : f.coeffs) {
    Json row = Json::array();
    for (int v : k) row.push_back(v);
    row.push_back(c.real());
    row.push_back(c.imag());
    coeffs.push_back(std::move(row));
  }
  out["coeffs"] = std::move(coeffs);
  out["cutoff"] = f.cutoff;
  out["tail"] = f.tailA1;
  if (f.rule) {
    out["rule"] = {{"name", f.rule->name}, {"a", f.rule->a}, {"b", f.rule->b},
                   {"seed", f.rule->seed}};
  }
  return out;
}

SpectralFunction spectral_from_json(const Json& j) {
  SpectralFunction f;
  f.dim = j.at("dim").get<int>();
  if (f.dim < 1) throw std::invalid_argument("spectral json: dim must be >= 1");
  for (const auto& row : j.at("coeffs")) {
    if (static_cast<int>(row.size()) != f.dim + 2)
      throw std::invalid_argument("spectral json: coefficient row has wrong arity");
    FreqIndex k(f.dim);
    for (int i = 0; i < f.dim; ++i) k[i] = row[i].get<int>();
    f.coeffs[k] = Complex(row[f.dim].get<double>(), row[f.dim + 1].get<double>());
  }
  f.cutoff = j.value("cutoff", 0);
  f.tailA1 = j.value("tail", 0.0);
  if (j.contains("rule")) {
    const Json& r = j.at("rule");
    if (r.at("name").get<std::string>() != "korobov")
      throw std::invalid_argument("spectral json: unknown rule '" +
                                  r.at("name").get<std::string>() + "'");
    f.rule = std::make_shared<const RuleInfo>(korobov_rule(
        f.dim, r.at("a").get<double>(), r.at("b").get<double>(), r.at("seed").get<std::uint64_t>()));
  }
  return f;
}

namespace {
Json rateSpecToJson(const RateSpec& s) {
  return Json{{"p", exponentToJson(s.p)},
              {"q", exponentToJson(s.q)},
              {"alpha", s.alpha},
              {"beta", s.beta},
              {"gamma", s.gamma},
              {"T", s.T},
              {"target", s.target == RateTarget::Isotropic ? "iso" : "mixed"}};
}

RateSpec rateSpecFromJson(const Json& j) {
  RateSpec s;
  s.p = parseExponent(j, "p");
  s.q = parseExponent(j, "q");
  s.alpha = j.at("alpha").get<double>();
  s.beta = j.value("beta", 0.0);
  s.gamma = j.value("gamma", 0.0);
  s.T = j.value("T", 0.0);
  std::string target = j.value("target", "iso");
  if (target == "iso")
    s.target = RateTarget::Isotropic;
  else if (target == "mixed")
    s.target = RateTarget::Mixed;
  else
    throw std::invalid_argument("config: rate.target must be 'iso' or 'mixed'");
  return s;
}
}  // namespace

Json rate_report_to_json(const RateReport& rep) {
  Json out;
  out["kind"] = "rate_report";
  out["scheme"] = rep.scheme;
  out["set"] = rep.setDescriptor;
  out["dim"] = rep.dim;
  out["spec"] = rateSpecToJson(rep.spec);
  Json pts = Json::array();
  for (const auto& p : rep.points)
    pts.push_back(Json{{"n", p.level},
                       {"error", p.error},
                       {"budget", p.budget},
                       {"omega_ratio", p.omegaRatio},
                       {"exact", p.exact}});
  out["points"] = std::move(pts);
  out["fit"] = Json{{"exponent", rep.fit.exponent},
                    {"log_power", rep.fit.logPower},
                    {"intercept", rep.fit.intercept},
                    {"log_regressor", rep.fit.usedLogRegressor}};
  out["theory"] = Json{{"exponent", rep.theory.exponent}, {"log_power", rep.theory.logPower}};
  out["tolerance"] = rep.tolerance;
  out["verdict"] = rep.pass ? "PASS" : "FAIL";
  out["note"] = rep.note;
  out["seed"] = rep.seed;
  return out;
}

Json envelope_report_to_json(const EnvelopeReport& rep) {
  Json out;
  out["kind"] = "envelope_report";
  out["scheme"] = rep.scheme;
  out["dim"] = rep.dim;
  out["spec"] = rateSpecToJson(rep.spec);
  Json pts = Json::array();
  for (const auto& p : rep.points)
    pts.push_back(Json{{"n", p.level},
                       {"worst_error", p.worstError},
                       {"worst_frequency", p.worstFrequency}});
  out["points"] = std::move(pts);
  out["fit"] = Json{{"exponent", rep.fittedExponent}};
  out["theory"] = Json{{"exponent", rep.targetExponent}, {"log_power", 0.0}};
  out["tolerance"] = rep.tolerance;
  out["stabilization_level"] = rep.stabilizationLevel;
  out["n0"] = rep.n0;
  out["verdict"] = rep.pass ? "PASS" : "FAIL";
  return out;
}

std::string rate_report_csv(const RateReport& rep) {
  std::ostringstream out;
  out << "n,error,budget,omega_ratio,exact\n";
  for (const auto& p : rep.points)
    out << p.level << ',' << p.error << ',' << p.budget << ',' << p.omegaRatio << ','
        << (p.exact ? 1 : 0) << '\n';
  return out.str();
}

std::string envelope_report_csv(const EnvelopeReport& rep) {
  std::ostringstream out;
  out << "n,worst_error,worst_frequency\n";
  for (const auto& p : rep.points)
    out << p.level << ',' << p.worstError << ',' << p.worstFrequency << '\n';
  return out.str();
}

std::string report_svg(const Json& report) {
  struct Pt {
    double n, y;
  };
  std::vector<Pt> pts;
  bool envelope = report.value("kind", "") == "envelope_report";
  for (const auto& p : report.at("points")) {
    double err = envelope ? p.at("worst_error").get<double>() : p.at("error").get<double>();
    if (!(err > 0.0)) continue;
    pts.push_back({p.at("n").get<double>(), std::log2(err)});
  }
  if (pts.size() < 2) throw std::invalid_argument("report_svg: need at least two positive errors");

  double nMin = pts.front().n, nMax = pts.front().n, yMin = pts.front().y, yMax = pts.front().y;
  for (const auto& p : pts) {
    nMin = std::min(nMin, p.n);
    nMax = std::max(nMax, p.n);
    yMin = std::min(yMin, p.y);
    yMax = std::max(yMax, p.y);
  }
  yMin -= 1.0;
  yMax += 1.0;

  const double W = 640, H = 480, mL = 60, mR = 20, mT = 20, mB = 45;
  auto X = [&](double n) { return mL + (n - nMin) / (nMax - nMin) * (W - mL - mR); };
  auto Y = [&](double y) { return H - mB - (y - yMin) / (yMax - yMin) * (H - mT - mB); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<line x1='" << mL << "' y1='" << H - mB << "' x2='" << W - mR << "' y2='" << H - mB
      << "' stroke='black'/>\n";
  svg << "<line x1='" << mL << "' y1='" << mT << "' x2='" << mL << "' y2='" << H - mB
      << "' stroke='black'/>\n";
  svg << "<text x='" << (W / 2) << "' y='" << (H - 10)
      << "' text-anchor='middle' font-size='13'>level n</text>\n";
  svg << "<text x='15' y='" << (H / 2)
      << "' text-anchor='middle' font-size='13' transform='rotate(-90 15 " << (H / 2)
      << ")'>log2 error</text>\n";

  // theoretical slope guide anchored at the first point
  double thE = report.at("theory").at("exponent").get<double>();
  double thL = report.at("theory").value("log_power", 0.0);
  double c0 = pts.front().y + thE * pts.front().n -
              thL * std::log2(std::max(1.0, pts.front().n));
  svg << "<polyline fill='none' stroke='#888' stroke-dasharray='6 4' points='";
  for (double n = nMin; n <= nMax + 1e-9; n += (nMax - nMin) / 64.0)
    svg << X(n) << ',' << Y(-thE * n + thL * std::log2(std::max(1.0, n)) + c0) << ' ';
  svg << "'/>\n";

  // fitted line
  if (report.contains("fit") && report.at("fit").contains("intercept")) {
    double fE = report.at("fit").at("exponent").get<double>();
    double fL = report.at("fit").value("log_power", 0.0);
    double fc = report.at("fit").at("intercept").get<double>();
    svg << "<polyline fill='none' stroke='#c33' points='";
    for (double n = nMin; n <= nMax + 1e-9; n += (nMax - nMin) / 64.0)
      svg << X(n) << ',' << Y(-fE * n + fL * std::log2(std::max(1.0, n)) + fc) << ' ';
    svg << "'/>\n";
  }

  for (const auto& p : pts)
    svg << "<circle cx='" << X(p.n) << "' cy='" << Y(p.y) << "' r='4' fill='#226'/>\n";
  svg << "</svg>\n";
  return svg.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << text;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  c.mode = j.value("mode", "rates");
  if (c.mode != "rates" && c.mode != "sharpness")
    throw std::invalid_argument("config: mode must be 'rates' or 'sharpness'");
  c.scheme = j.value("scheme", c.scheme);
  c.dim = j.value("dim", 2);
  if (c.dim < 1 || c.dim > 6) throw std::invalid_argument("config: dim must be in 1..6");
  c.rate = rateSpecFromJson(j.at("rate"));

  if (j.contains("set")) {
    const Json& s = j.at("set");
    c.set.kind = s.value("kind", "smolyak");
    if (c.set.kind != "smolyak" && c.set.kind != "T" && c.set.kind != "energy" &&
        c.set.kind != "full")
      throw std::invalid_argument("config: set.kind must be smolyak|T|energy|full");
    c.set.eps = s.value("eps", 0.0);
  }
  if (c.set.kind == "smolyak") c.rate.T = 0.0;
  if (c.set.kind == "full") c.rate.T = kFullBoxT;

  if (j.contains("function")) {
    const Json& f = j.at("function");
    c.function.family = f.value("family", "block_lacunary");
    if (c.function.family != "block_lacunary" && c.function.family != "korobov")
      throw std::invalid_argument("config: function.family must be block_lacunary|korobov");
    c.function.a = f.value("a", 3.0);
    c.function.b = f.value("b", 0.0);
    c.function.cutoff = f.value("cutoff", 32);
    c.function.rho = f.value("rho", 1.25);
    c.function.kmax = f.value("kmax", 15);
  }

  if (!j.contains("levels") || !j.at("levels").is_array() || j.at("levels").size() < 2)
    throw std::invalid_argument("config: 'levels' must list at least two levels");
  for (const auto& v : j.at("levels")) c.levels.push_back(v.get<int>());

  c.seed = j.value("seed", 1);
  c.tolerance = j.value("tolerance", 0.3);
  c.trials = j.value("trials", 32);
  c.n0 = j.value("n0", 0);
  c.replicates = j.value("replicates", 1);
  if (c.replicates < 1 || c.replicates > 64)
    throw std::invalid_argument("config: replicates must be in 1..64");
  c.threads = j.value("threads", 1);
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json out;
  out["mode"] = c.mode;
  out["scheme"] = c.scheme;
  out["dim"] = c.dim;
  out["rate"] = rateSpecToJson(c.rate);
  out["set"] = Json{{"kind", c.set.kind}, {"eps", c.set.eps}};
  out["function"] = Json{{"family", c.function.family}, {"a", c.function.a},
                         {"b", c.function.b},           {"cutoff", c.function.cutoff},
                         {"rho", c.function.rho},       {"kmax", c.function.kmax}};
  out["levels"] = c.levels;
  out["seed"] = c.seed;
  out["tolerance"] = c.tolerance;
  out["trials"] = c.trials;
  out["n0"] = c.n0;
  out["replicates"] = c.replicates;
  out["threads"] = c.threads;
  return out;
}

}  // namespace sgw
