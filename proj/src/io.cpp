#include "memdiff/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace memdiff {

using nlohmann::json;

namespace {

bool require_object(const json& j, const std::string& path, Violations& errs) {
  if (j.is_object()) return true;
  errs.push_back({path, "type", "expected an object"});
  return false;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed, Violations& errs) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      errs.push_back({path.empty() ? it.key() : path + "." + it.key(), "unknown key",
                      "key is not part of the config schema"});
  }
}

double get_num(const json& obj, const char* key, double fallback, const std::string& path,
               Violations& errs) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    errs.push_back({path + "." + key, "type", "expected a number"});
    return fallback;
  }
  return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& path,
            Violations& errs) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    errs.push_back({path + "." + key, "type", "expected an integer"});
    return fallback;
  }
  return v.get<int>();
}

uint64_t get_u64(const json& obj, const char* key, uint64_t fallback,
                 const std::string& path, Violations& errs) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<int64_t>() >= 0))) {
    errs.push_back({path + "." + key, "type", "expected a non-negative integer"});
    return fallback;
  }
  return v.get<uint64_t>();
}

std::string get_str(const json& obj, const char* key, const std::string& fallback,
                    const std::string& path, Violations& errs) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) {
    errs.push_back({path + "." + key, "type", "expected a string"});
    return fallback;
  }
  return v.get<std::string>();
}

}  // namespace

ParsedConfig parse_config_json(const std::string& text, Violations& errs) {
  ParsedConfig out;
  SolverConfig& cfg = out.config;

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    errs.push_back({"config", "parse", e.what()});
    return out;
  }
  if (!require_object(root, "config", errs)) return out;
  reject_unknown(root, "",
                 {"domain", "galerkin", "time", "kernel", "phi", "field", "forcing",
                  "initial", "quadrature", "converge"},
                 errs);

  // domain (required)
  if (!root.contains("domain")) {
    errs.push_back({"domain", "missing", "config requires a domain"});
  } else if (require_object(root["domain"], "domain", errs)) {
    const json& d = root["domain"];
    reject_unknown(d, "domain", {"kind", "lengths"}, errs);
    std::string kind = get_str(d, "kind", "interval", "domain", errs);
    if (kind == "interval")
      cfg.domain.kind = DomainSpec::Kind::interval;
    else if (kind == "rectangle")
      cfg.domain.kind = DomainSpec::Kind::rectangle;
    else
      errs.push_back({"domain.kind", "value", "must be \"interval\" or \"rectangle\""});
    if (!d.contains("lengths") || !d["lengths"].is_array()) {
      errs.push_back({"domain.lengths", "missing", "expected an array of side lengths"});
    } else {
      const json& L = d["lengths"];
      size_t want = cfg.domain.kind == DomainSpec::Kind::interval ? 1 : 2;
      if (L.size() != want) {
        errs.push_back({"domain.lengths", "value",
                        "length count does not match the domain kind"});
      } else {
        for (const auto& x : L)
          if (!x.is_number()) {
            errs.push_back({"domain.lengths", "type", "expected numbers"});
            return out;
          }
        cfg.domain.L1 = L[0].get<double>();
        if (want == 2) cfg.domain.L2 = L[1].get<double>();
      }
    }
  }

  // galerkin (required)
  if (!root.contains("galerkin")) {
    errs.push_back({"galerkin.N", "missing", "config requires galerkin.N"});
  } else if (require_object(root["galerkin"], "galerkin", errs)) {
    const json& g = root["galerkin"];
    reject_unknown(g, "galerkin", {"N"}, errs);
    if (!g.contains("N"))
      errs.push_back({"galerkin.N", "missing", "config requires galerkin.N"});
    else
      cfg.N = get_int(g, "N", 1, "galerkin", errs);
  }

  // time (required)
  if (!root.contains("time")) {
    errs.push_back({"time", "missing", "config requires time.T and time.dt"});
  } else if (require_object(root["time"], "time", errs)) {
    const json& t = root["time"];
    reject_unknown(t, "time", {"T", "dt"}, errs);
    if (!t.contains("T"))
      errs.push_back({"time.T", "missing", "config requires time.T"});
    else
      cfg.T = get_num(t, "T", 1.0, "time", errs);
    if (!t.contains("dt"))
      errs.push_back({"time.dt", "missing", "config requires time.dt"});
    else
      cfg.dt = get_num(t, "dt", 1e-3, "time", errs);
  }

  if (root.contains("kernel") && require_object(root["kernel"], "kernel", errs)) {
    const json& k = root["kernel"];
    reject_unknown(k, "kernel", {"kind", "kappa", "lambda", "alpha"}, errs);
    std::string kind = get_str(k, "kind", "exponential", "kernel", errs);
    if (kind == "exponential")
      cfg.kernel.kind = MemoryKernel::Kind::exponential;
    else if (kind == "constant")
      cfg.kernel.kind = MemoryKernel::Kind::constant;
    else if (kind == "power")
      cfg.kernel.kind = MemoryKernel::Kind::power;
    else
      errs.push_back(
          {"kernel.kind", "value", "must be \"exponential\", \"constant\" or \"power\""});
    cfg.kernel.kappa = get_num(k, "kappa", 1.0, "kernel", errs);
    cfg.kernel.lambda = get_num(k, "lambda", 1.0, "kernel", errs);
    cfg.kernel.alpha = get_num(k, "alpha", 0.5, "kernel", errs);
  }
  cfg.kernel.T = cfg.T;

  bool L_given = false;
  if (root.contains("phi") && require_object(root["phi"], "phi", errs)) {
    const json& p = root["phi"];
    reject_unknown(p, "phi", {"kind", "a", "b", "m", "L"}, errs);
    std::string kind = get_str(p, "kind", "linear", "phi", errs);
    if (kind == "linear")
      cfg.phi.kind = Nonlinearity::Kind::linear;
    else if (kind == "power")
      cfg.phi.kind = Nonlinearity::Kind::power;
    else if (kind == "constant")
      cfg.phi.kind = Nonlinearity::Kind::constant;
    else
      errs.push_back({"phi.kind", "value", "must be \"linear\", \"power\" or \"constant\""});
    cfg.phi.a = get_num(p, "a", 1.0, "phi", errs);
    cfg.phi.b = get_num(p, "b", 0.0, "phi", errs);
    cfg.phi.m = get_num(p, "m", cfg.phi.kind == Nonlinearity::Kind::power ? 3.0 : 2.0,
                        "phi", errs);
    if (p.contains("L")) {
      L_given = true;
      cfg.phi.L = get_num(p, "L", 1.0, "phi", errs);
    }
  }
  if (!L_given)
    cfg.phi.L = cfg.phi.kind == Nonlinearity::Kind::constant ? 1.0 : cfg.phi.a;

  if (root.contains("field") && require_object(root["field"], "field", errs)) {
    const json& f = root["field"];
    reject_unknown(f, "field", {"d_min", "d_max", "cells", "seed"}, errs);
    cfg.field.d_min = get_num(f, "d_min", 1.0, "field", errs);
    cfg.field.d_max = get_num(f, "d_max", cfg.field.d_min, "field", errs);
    cfg.field.cells = get_int(f, "cells", 1, "field", errs);
    cfg.field.seed = get_u64(f, "seed", 0, "field", errs);
  }

  if (root.contains("forcing") && require_object(root["forcing"], "forcing", errs)) {
    const json& f = root["forcing"];
    reject_unknown(f, "forcing", {"modes"}, errs);
    if (f.contains("modes")) {
      if (!f["modes"].is_array()) {
        errs.push_back({"forcing.modes", "type", "expected an array of modes"});
      } else {
        int idx = 0;
        for (const auto& mj : f["modes"]) {
          std::string path = "forcing.modes[" + std::to_string(idx++) + "]";
          if (!mj.is_object()) {
            errs.push_back({path, "type", "expected an object"});
            continue;
          }
          reject_unknown(mj, path, {"a", "b", "omega"}, errs);
          ForcingMode mode;
          mode.a = get_num(mj, "a", 0.0, path, errs);
          mode.b = get_num(mj, "b", 0.0, path, errs);
          mode.omega = get_num(mj, "omega", 0.0, path, errs);
          cfg.forcing.modes.push_back(mode);
        }
      }
    }
  }

  if (root.contains("initial") && require_object(root["initial"], "initial", errs)) {
    const json& ic = root["initial"];
    reject_unknown(ic, "initial", {"kind", "values"}, errs);
    std::string kind = get_str(ic, "kind", "zero", "initial", errs);
    if (kind == "zero")
      cfg.initial.kind = InitialCondition::Kind::zero;
    else if (kind == "coefficients")
      cfg.initial.kind = InitialCondition::Kind::coefficients;
    else if (kind == "parabola")
      cfg.initial.kind = InitialCondition::Kind::parabola;
    else
      errs.push_back(
          {"initial.kind", "value", "must be \"zero\", \"coefficients\" or \"parabola\""});
    if (ic.contains("values")) {
      if (!ic["values"].is_array()) {
        errs.push_back({"initial.values", "type", "expected an array of numbers"});
      } else {
        for (const auto& x : ic["values"]) {
          if (!x.is_number()) {
            errs.push_back({"initial.values", "type", "expected numbers"});
            break;
          }
          cfg.initial.values.push_back(x.get<double>());
        }
      }
    }
  }

  if (root.contains("quadrature") && require_object(root["quadrature"], "quadrature", errs)) {
    const json& q = root["quadrature"];
    reject_unknown(q, "quadrature", {"panels", "points"}, errs);
    cfg.quad_panels = get_int(q, "panels", 0, "quadrature", errs);
    cfg.quad_points = get_int(q, "points", 4, "quadrature", errs);
  }

  if (root.contains("converge") && require_object(root["converge"], "converge", errs)) {
    const json& c = root["converge"];
    reject_unknown(c, "converge", {"param", "values"}, errs);
    out.converge.param = get_str(c, "param", "dt", "converge", errs);
    if (out.converge.param != "dt" && out.converge.param != "N")
      errs.push_back({"converge.param", "value", "must be \"dt\" or \"N\""});
    if (c.contains("values")) {
      if (!c["values"].is_array()) {
        errs.push_back({"converge.values", "type", "expected an array of numbers"});
      } else {
        for (const auto& x : c["values"]) {
          if (!x.is_number()) {
            errs.push_back({"converge.values", "type", "expected numbers"});
            break;
          }
          out.converge.values.push_back(x.get<double>());
        }
      }
    }
  }

  return out;
}

ParsedConfig parse_config_file(const std::string& path, Violations& errs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    errs.push_back({"config", "io", "cannot open config file: " + path});
    return {};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), errs);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_digest(const SolverConfig& cfg, const ConvergeSpec& conv) {
  json j;
  j["domain"]["kind"] =
      cfg.domain.kind == DomainSpec::Kind::interval ? "interval" : "rectangle";
  j["domain"]["lengths"] = cfg.domain.kind == DomainSpec::Kind::interval
                               ? json::array({cfg.domain.L1})
                               : json::array({cfg.domain.L1, cfg.domain.L2});
  j["galerkin"]["N"] = cfg.N;
  j["time"]["T"] = cfg.T;
  j["time"]["dt"] = cfg.dt;
  switch (cfg.kernel.kind) {
    case MemoryKernel::Kind::exponential: j["kernel"]["kind"] = "exponential"; break;
    case MemoryKernel::Kind::constant: j["kernel"]["kind"] = "constant"; break;
    case MemoryKernel::Kind::power: j["kernel"]["kind"] = "power"; break;
  }
  j["kernel"]["kappa"] = cfg.kernel.kappa;
  j["kernel"]["lambda"] = cfg.kernel.lambda;
  j["kernel"]["alpha"] = cfg.kernel.alpha;
  switch (cfg.phi.kind) {
    case Nonlinearity::Kind::linear: j["phi"]["kind"] = "linear"; break;
    case Nonlinearity::Kind::power: j["phi"]["kind"] = "power"; break;
    case Nonlinearity::Kind::constant: j["phi"]["kind"] = "constant"; break;
  }
  j["phi"]["a"] = cfg.phi.a;
  j["phi"]["b"] = cfg.phi.b;
  j["phi"]["m"] = cfg.phi.m;
  j["phi"]["L"] = cfg.phi.L;
  j["field"]["d_min"] = cfg.field.d_min;
  j["field"]["d_max"] = cfg.field.d_max;
  j["field"]["cells"] = cfg.field.cells;
  j["field"]["seed"] = cfg.field.seed;
  j["field"]["realization"] = cfg.realization;
  json modes = json::array();
  for (const auto& m : cfg.forcing.modes)
    modes.push_back({{"a", m.a}, {"b", m.b}, {"omega", m.omega}});
  j["forcing"]["modes"] = modes;
  switch (cfg.initial.kind) {
    case InitialCondition::Kind::zero: j["initial"]["kind"] = "zero"; break;
    case InitialCondition::Kind::coefficients: j["initial"]["kind"] = "coefficients"; break;
    case InitialCondition::Kind::parabola: j["initial"]["kind"] = "parabola"; break;
  }
  j["initial"]["values"] = cfg.initial.values;
  j["quadrature"]["panels"] = effective_panels(cfg);
  j["quadrature"]["points"] = cfg.quad_points;
  j["converge"]["param"] = conv.param;
  j["converge"]["values"] = conv.values;

  uint64_t h = fnv1a64(j.dump());  // dump() emits sorted keys
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_trajectory_csv(const std::string& path, const GalerkinTrajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  out << "step,t";
  for (int i = 1; i <= traj.N; ++i) out << ",c_" << i;
  out << "\n";
  for (size_t k = 0; k < traj.t.size(); ++k) {
    out << k << "," << fmt17(traj.t[k]);
    for (int i = 0; i < traj.N; ++i) out << "," << fmt17(traj.c[k][i]);
    out << "\n";
  }
}

void write_energy_csv(const std::string& path, const CertificateReport& rep) {
  std::ofstream out(path, std::ios::binary);
  out << "step,t,E,B,margin\n";
  for (size_t k = 0; k < rep.t.size(); ++k)
    out << k << "," << fmt17(rep.t[k]) << "," << fmt17(rep.E[k]) << "," << fmt17(rep.B[k])
        << "," << fmt17(rep.margin[k]) << "\n";
}

void write_converge_csv(const std::string& path, const ConvergenceTable& table) {
  std::ofstream out(path, std::ios::binary);
  out << "param,value,error,order\n";
  for (const auto& row : table) {
    out << row.param << "," << fmt17(row.value) << "," << fmt17(row.error) << ",";
    if (row.has_order) out << fmt17(row.order);
    out << "\n";
  }
}

void write_manifest(const std::string& path, const std::string& digest,
                    const std::vector<std::string>& outputs, const std::string& started,
                    const std::string& finished) {
  json j;
  j["digest"] = digest;
  j["version"] = kVersion;
  j["started"] = started;
  j["finished"] = finished;
  j["outputs"] = outputs;
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
}

void write_energy_svg(const std::string& path, const CertificateReport& rep) {
  const int W = 640, H = 400, ML = 60, MR = 20, MT = 20, MB = 40;
  double tmax = rep.t.empty() ? 1.0 : rep.t.back();
  if (tmax <= 0.0) tmax = 1.0;
  double vmax = 1e-30;
  for (size_t k = 0; k < rep.t.size(); ++k) {
    if (std::isfinite(rep.E[k])) vmax = std::max(vmax, rep.E[k]);
    if (std::isfinite(rep.B[k])) vmax = std::max(vmax, rep.B[k]);
  }
  auto px = [&](double t) { return ML + (W - ML - MR) * t / tmax; };
  auto py = [&](double v) { return H - MB - (H - MT - MB) * v / vmax; };
  auto polyline = [&](const std::vector<double>& v, const char* color) {
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < rep.t.size(); ++k) {
      if (!std::isfinite(v[k])) continue;
      s << px(rep.t[k]) << "," << py(std::min(v[k], vmax)) << " ";
    }
    s << "\"/>\n";
    return s.str();
  };
  std::ofstream out(path, std::ios::binary);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n"
      << polyline(rep.E, "#1f77b4") << polyline(rep.B, "#d62728")
      << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">t</text>\n"
      << "<text x=\"" << W - MR - 150 << "\" y=\"" << MT + 14
      << "\" font-size=\"12\" fill=\"#1f77b4\">E(t)</text>\n"
      << "<text x=\"" << W - MR - 80 << "\" y=\"" << MT + 14
      << "\" font-size=\"12\" fill=\"#d62728\">B(t)</text>\n"
      << "</svg>\n";
}

std::string iso8601_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace memdiff
