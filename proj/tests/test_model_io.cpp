#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "vixbond/errors.hpp"
#include "vixbond/model_io.hpp"

using namespace vixbond;
using testing::make_series;

namespace {

void check_fit_equal(const OlsFit& a, const OlsFit& b) {
  CHECK(a.names == b.names);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.standard_errors == b.standard_errors);
  CHECK(a.p_values == b.p_values);
  CHECK(a.residuals == b.residuals);
  CHECK(a.r_squared == b.r_squared);
  CHECK(a.n == b.n);
}

}  // namespace

TEST_CASE("vix model round-trips bit for bit") {
  testing::TempDir dir;
  std::mt19937_64 rng(1);
  const auto v = testing::simulate_vix(300, 0.347, 0.881, 0.2, rng);
  auto m = fit_vix_ar(make_series("VIXCLS", {1990, 1}, v));
  m.metadata.fitted_at = "2024-09-01T00:00:00Z";
  const auto path = (dir.path() / "vix.json").string();
  save_model(m, path);
  const auto back = std::get<VixModelParams>(load_model(path));
  CHECK(back.alpha == m.alpha);
  CHECK(back.beta == m.beta);
  CHECK(back.innovations == m.innovations);
  CHECK(back.metadata == m.metadata);
  REQUIRE(back.vg.has_value());
  CHECK(back.vg->params == m.vg->params);
  check_fit_equal(back.fit, m.fit);
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("spread and returns models round-trip") {
  std::mt19937_64 rng(2);
  const auto v = testing::simulate_vix(120, 0.347, 0.881, 0.2, rng);
  const auto r = testing::simulate_rate(v, 0.03, 0.94, 0.003, 0.01, rng);
  const auto s = fit_spread_model(make_series("R", {2000, 1}, r), make_series("V", {2000, 1}, v));
  const auto sb = std::get<SpreadModelParams>(model_from_json(model_to_json(s)));
  CHECK(sb.a == s.a);
  CHECK(sb.b == s.b);
  CHECK(sb.c == s.c);
  CHECK(sb.residuals == s.residuals);
  check_fit_equal(sb.fit, s.fit);

  std::vector<double> q(r.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = 0.001 * std::sin(double(i)) + 0.0001 * v[i];
  const auto rm = fit_returns_model(make_series("Q", {2000, 1}, q), make_series("R", {2000, 1}, r),
                                    make_series("V", {2000, 1}, v), ReturnsVariant::with_lagged_rate);
  const auto rb = std::get<ReturnsModelParams>(model_from_json(model_to_json(rm)));
  CHECK(rb.k == rm.k);
  CHECK(rb.duration == rm.duration);
  CHECK(rb.variant == rm.variant);
  CHECK(rb.metadata == rm.metadata);
}

TEST_CASE("non-finite numbers survive the round-trip") {
  SpreadModelParams s;
  s.a = std::numeric_limits<double>::infinity();
  s.b = -std::numeric_limits<double>::infinity();
  s.c = std::numeric_limits<double>::quiet_NaN();
  s.metadata.window = {{2000, 1}, {2000, 2}};
  const auto back = std::get<SpreadModelParams>(model_from_json(model_to_json(s)));
  CHECK(std::isinf(back.a));
  CHECK(back.b < 0);
  CHECK(std::isnan(back.c));
}

TEST_CASE("unknown schema version and kind are rejected") {
  SpreadModelParams s;
  s.metadata.window = {{2000, 1}, {2000, 2}};
  auto text = model_to_json(s);
  auto bumped = text;
  bumped.replace(bumped.find("\"schema_version\": 1"), 19, "\"schema_version\": 99");
  CHECK_THROWS_AS(model_from_json(bumped), SchemaVersionError);
  auto kind = text;
  kind.replace(kind.find("\"spread\""), 8, "\"garch\"");
  CHECK_THROWS_AS(model_from_json(kind), SchemaVersionError);
}

TEST_CASE("truncated files are parse errors") {
  testing::TempDir dir;
  SpreadModelParams s;
  s.metadata.window = {{2000, 1}, {2000, 2}};
  const auto text = model_to_json(s);
  const auto path = (dir.path() / "m.json").string();
  std::ofstream(path) << text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(load_model(path), ParseError);
  CHECK_THROWS_AS(model_from_json("{\"schema_version\": 1}"), ParseError);
  CHECK_THROWS_AS(load_model((dir.path() / "missing.json").string()), IoError);
}
