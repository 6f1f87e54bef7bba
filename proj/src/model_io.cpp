#include "vixbond/model_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vixbond/errors.hpp"

namespace vixbond {

using nlohmann::json;

namespace {

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError("model file: expected a number, got " + j.dump(), 0);
}

json nums(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(num(x));
  return arr;
}

std::vector<double> to_nums(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(to_num(x));
  return out;
}

json fit_json(const OlsFit& f) {
  return {{"names", f.names},
          {"coefficients", nums(f.coefficients)},
          {"standard_errors", nums(f.standard_errors)},
          {"t_stats", nums(f.t_stats)},
          {"p_values", nums(f.p_values)},
          {"r_squared", num(f.r_squared)},
          {"adj_r_squared", num(f.adj_r_squared)},
          {"residual_variance", num(f.residual_variance)},
          {"rss", num(f.rss)},
          {"n", f.n},
          {"dof", f.dof},
          {"has_intercept", f.has_intercept},
          {"residuals", nums(f.residuals)}};
}

OlsFit fit_from(const json& j) {
  OlsFit f;
  f.names = j.at("names").get<std::vector<std::string>>();
  f.coefficients = to_nums(j.at("coefficients"));
  f.standard_errors = to_nums(j.at("standard_errors"));
  f.t_stats = to_nums(j.at("t_stats"));
  f.p_values = to_nums(j.at("p_values"));
  f.r_squared = to_num(j.at("r_squared"));
  f.adj_r_squared = to_num(j.at("adj_r_squared"));
  f.residual_variance = to_num(j.at("residual_variance"));
  f.rss = to_num(j.at("rss"));
  f.n = j.at("n").get<std::size_t>();
  f.dof = j.at("dof").get<std::size_t>();
  f.has_intercept = j.at("has_intercept").get<bool>();
  f.residuals = to_nums(j.at("residuals"));
  return f;
}

void put_metadata(json& j, const FitMetadata& m) {
  j["series_names"] = m.series_names;
  j["window"] = {{"first", m.window.first.to_string()},
                 {"last", m.window.last.to_string()}};
  j["fitted_at"] = m.fitted_at;
}

FitMetadata metadata_from(const json& j) {
  FitMetadata m;
  m.series_names = j.at("series_names").get<std::vector<std::string>>();
  m.window.first = YearMonth::parse(j.at("window").at("first").get<std::string>());
  m.window.last = YearMonth::parse(j.at("window").at("last").get<std::string>());
  m.fitted_at = j.at("fitted_at").get<std::string>();
  return m;
}

json vg_json(const VarianceGammaFit& vg) {
  auto moments_json = [](const DistributionMoments& m) {
    return json{{"mean", num(m.mean)},
                {"variance", num(m.variance)},
                {"skewness", num(m.skewness)},
                {"excess_kurtosis", num(m.excess_kurtosis)}};
  };
  return {{"location", num(vg.params.location)},
          {"scale", num(vg.params.scale)},
          {"asymmetry", num(vg.params.asymmetry)},
          {"shape", num(vg.params.shape)},
          {"boundary", to_string(vg.boundary)},
          {"target", moments_json(vg.target)},
          {"achieved", moments_json(vg.achieved)}};
}

VarianceGammaFit vg_from(const json& j) {
  auto moments_from = [](const json& m) {
    return DistributionMoments{to_num(m.at("mean")), to_num(m.at("variance")),
                               to_num(m.at("skewness")),
                               to_num(m.at("excess_kurtosis"))};
  };
  VarianceGammaFit vg;
  vg.params = {to_num(j.at("location")), to_num(j.at("scale")),
               to_num(j.at("asymmetry")), to_num(j.at("shape"))};
  const auto b = j.at("boundary").get<std::string>();
  if (b == "none") {
    vg.boundary = VgBoundary::none;
  } else if (b == "gaussian_limit") {
    vg.boundary = VgBoundary::gaussian_limit;
  } else if (b == "gamma_limit") {
    vg.boundary = VgBoundary::gamma_limit;
  } else {
    throw ParseError("model file: unknown VG boundary '" + b + "'", 0);
  }
  vg.target = moments_from(j.at("target"));
  vg.achieved = moments_from(j.at("achieved"));
  return vg;
}

json to_json(const VixModelParams& m) {
  json j;
  j["model_kind"] = "vix_ar";
  j["params"] = {{"alpha", num(m.alpha)}, {"beta", num(m.beta)}};
  if (m.vg) j["params"]["vg"] = vg_json(*m.vg);
  j["residuals"] = nums(m.innovations);
  j["fit"] = fit_json(m.fit);
  put_metadata(j, m.metadata);
  return j;
}

json to_json(const SpreadModelParams& m) {
  json j;
  j["model_kind"] = "spread";
  j["params"] = {{"a", num(m.a)}, {"b", num(m.b)}, {"c", num(m.c)}};
  j["residuals"] = nums(m.residuals);
  j["fit"] = fit_json(m.fit);
  put_metadata(j, m.metadata);
  return j;
}

json to_json(const ReturnsModelParams& m) {
  json j;
  j["model_kind"] = "returns";
  j["params"] = {{"k", num(m.k)},
                 {"D", num(m.duration)},
                 {"h", num(m.h)},
                 {"l", num(m.l)},
                 {"variant", to_string(m.variant)},
                 {"normalized", m.normalized}};
  j["residuals"] = nums(m.residuals);
  j["fit"] = fit_json(m.fit);
  put_metadata(j, m.metadata);
  return j;
}

}  // namespace

std::string model_to_json(const AnyModel& model) {
  json j = std::visit([](const auto& m) { return to_json(m); }, model);
  j["schema_version"] = kModelSchemaVersion;
  return j.dump(2) + "\n";
}

AnyModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what(), 0);
  }
  try {
    if (!j.is_object() || !j.contains("schema_version")) {
      throw ParseError("model file: missing schema_version", 0);
    }
    const int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      throw SchemaVersionError("model file: unsupported schema_version " +
                               std::to_string(version) + " (expected " +
                               std::to_string(kModelSchemaVersion) + ")");
    }
    const auto kind = j.at("model_kind").get<std::string>();
    const auto& p = j.at("params");
    if (kind == "vix_ar") {
      VixModelParams m;
      m.alpha = to_num(p.at("alpha"));
      m.beta = to_num(p.at("beta"));
      if (p.contains("vg")) m.vg = vg_from(p.at("vg"));
      m.innovations = to_nums(j.at("residuals"));
      m.fit = fit_from(j.at("fit"));
      m.metadata = metadata_from(j);
      return m;
    }
    if (kind == "spread") {
      SpreadModelParams m;
      m.a = to_num(p.at("a"));
      m.b = to_num(p.at("b"));
      m.c = to_num(p.at("c"));
      m.residuals = to_nums(j.at("residuals"));
      m.fit = fit_from(j.at("fit"));
      m.metadata = metadata_from(j);
      return m;
    }
    if (kind == "returns") {
      ReturnsModelParams m;
      m.k = to_num(p.at("k"));
      m.duration = to_num(p.at("D"));
      m.h = to_num(p.at("h"));
      m.l = to_num(p.at("l"));
      m.variant = returns_variant_from_string(p.at("variant").get<std::string>());
      m.normalized = p.at("normalized").get<bool>();
      m.residuals = to_nums(j.at("residuals"));
      m.fit = fit_from(j.at("fit"));
      m.metadata = metadata_from(j);
      return m;
    }
    throw SchemaVersionError("model file: unknown model_kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what(), 0);
  }
}

void save_model(const AnyModel& model, const std::string& path) {
  const auto text = model_to_json(model);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace vixbond
