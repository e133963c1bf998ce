#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "revana/counterexamples.hpp"
#include "revana/stats.hpp"

using namespace revana;

namespace {

DataColumn make(const std::string& label, std::initializer_list<double> values) {
  return {label, values};
}

}  // namespace

TEST_CASE("corr") {
  const DataColumn a = make("a", {1, 2, 3});
  CHECK(corr(a, a) == doctest::Approx(1.0));
  const DataColumn neg("b", Eigen::VectorXd(-a.values()));
  CHECK(corr(a, neg) == doctest::Approx(-1.0));
  // hand computation: 3 / (sqrt(2) * sqrt(42)/3) = 9 / (2 sqrt(21))
  CHECK(corr(a, make("b", {1, 2, 4})) ==
        doctest::Approx(9.0 / (2.0 * std::sqrt(21.0))).epsilon(1e-12));
  CHECK_THROWS_AS(corr(a, make("c", {7, 7, 7})), ZeroVariance);
}

TEST_CASE("coef_determination") {
  Rng rng(31);
  const DataColumn z("z", oracle::random_vector(rng, 9));

  SUBCASE("perfect fit when the response is among the regressors") {
    DataMatrix m;
    m.append(z.relabeled("copy"));
    m.append(DataColumn("noise", oracle::random_vector(rng, 9)));
    CHECK(coef_determination(m, z) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("orthogonal single regressor explains nothing") {
    DataMatrix m;
    m.append(make("m", {-1, 0, 1, 0}));
    CHECK(coef_determination(m, make("z", {0, 1, 0, -1})) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("simple-regression identity R2 = corr^2") {
    const DataColumn m("m", oracle::random_vector(rng, 9));
    DataMatrix mm;
    mm.append(m);
    const double r = corr(m, z);
    CHECK(coef_determination(mm, z) == doctest::Approx(r * r).epsilon(1e-10));
  }

  SUBCASE("never decreases when a column is appended") {
    for (int trial = 0; trial < 30; ++trial) {
      const int n = rng.uniform_int(8, 14);
      const DataColumn response("z", oracle::random_vector(rng, n));
      DataMatrix m;
      double previous = 0.0;
      for (int j = 0; j < 4; ++j) {
        m.append(DataColumn("m" + std::to_string(j), oracle::random_vector(rng, n)));
        const double current = coef_determination(m, response);
        CHECK(current >= previous - 1e-12);
        previous = current;
      }
    }
  }

  SUBCASE("matches the normal-equations oracle") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = rng.uniform_int(8, 14);
      DataMatrix m;
      m.append(DataColumn("m1", oracle::random_vector(rng, n)));
      m.append(DataColumn("m2", oracle::random_vector(rng, n)));
      const DataColumn response("z", oracle::random_vector(rng, n));
      CHECK(coef_determination(m, response) ==
            doctest::Approx(oracle::r2(m.dense(), response.values())).epsilon(1e-9));
    }
  }
}

TEST_CASE("partial_corr") {
  Rng rng(41);

  SUBCASE("no controls reduces to plain correlation") {
    const DataColumn x("x", oracle::random_vector(rng, 10));
    const DataColumn y("y", oracle::random_vector(rng, 10));
    CHECK(partial_corr(x, y, DataMatrix{}) == doctest::Approx(corr(x, y)).epsilon(1e-12));
  }

  SUBCASE("response equal to x plus a control gives 1") {
    const DataColumn x("x", oracle::random_vector(rng, 10));
    const DataColumn c("c", oracle::random_vector(rng, 10));
    const DataColumn y("y", Eigen::VectorXd(x.values() + c.values()));
    DataMatrix controls;
    controls.append(c);
    CHECK(partial_corr(x, y, controls) == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("one-control recursion identity") {
    for (int trial = 0; trial < 25; ++trial) {
      const DataColumn x("x", oracle::random_vector(rng, 10));
      const DataColumn y("y", oracle::random_vector(rng, 10));
      const DataColumn c("c", oracle::random_vector(rng, 10));
      DataMatrix controls;
      controls.append(c);
      const double expected =
          oracle::partial_corr_one_control(corr(x, y), corr(x, c), corr(y, c));
      CHECK(partial_corr(x, y, controls) == doctest::Approx(expected).epsilon(1e-9));
    }
  }

  SUBCASE("vanishing residual is an error") {
    const DataColumn c("c", oracle::random_vector(rng, 10));
    DataMatrix controls;
    controls.append(c);
    CHECK_THROWS_AS(partial_corr(c.relabeled("x"), DataColumn("y", oracle::random_vector(rng, 10)),
                                 controls),
                    ZeroVariance);
  }
}

TEST_CASE("partial_R") {
  Rng rng(53);

  SUBCASE("no controls, single candidate: |corr|") {
    const DataColumn u("u", oracle::random_vector(rng, 10));
    const DataColumn z("z", oracle::random_vector(rng, 10));
    DataMatrix uu;
    uu.append(u);
    CHECK(partial_R(uu, z, DataMatrix{}) ==
          doctest::Approx(std::abs(corr(u, z))).epsilon(1e-10));
  }

  SUBCASE("candidate inside the control span is an error") {
    const DataColumn c("c", oracle::random_vector(rng, 10));
    DataMatrix controls;
    controls.append(c);
    DataMatrix uu;
    uu.append(c.relabeled("u"));
    CHECK_THROWS_AS(partial_R(uu, DataColumn("z", oracle::random_vector(rng, 10)), controls),
                    ZeroVariance);
  }

  SUBCASE("NeedR2 table: both geometries on record") {
    // centered reading: the candidate span is parameter-free, so the product
    // is the same closed form at every epsilon: (378 - 36 sqrt(2))/433
    const double pearson_product = (378.0 - 36.0 * std::sqrt(2.0)) / 433.0;
    for (double epsilon : {1e-2, 1e-3, 1e-4}) {
      const CounterexampleInstance instance = gen_need_r2(epsilon);
      DataMatrix u;
      u.append(instance.data.at("u1"));
      u.append(instance.data.at("u2"));
      const double product = partial_R(u, instance.data.at("x"), DataMatrix{}) *
                             partial_R(u, instance.data.at("y"), DataMatrix{});
      CHECK(product == doctest::Approx(pearson_product).epsilon(1e-9));
      // the construction's own (raw) geometry, where the limit is exactly 3/4
      const double raw = raw_projection_R(u, instance.data.at("x")) *
                         raw_projection_R(u, instance.data.at("y"));
      CHECK(raw == doctest::Approx(0.75).epsilon(1e-10));
    }
  }
}

TEST_CASE("v_vector") {
  Rng rng(61);
  const DataColumn x = center(DataColumn("x", oracle::random_vector(rng, 8)));

  SUBCASE("identical residuals double the unit vector") {
    const PartialContext ctx(x, x.relabeled("y"), DataMatrix{}, "");
    const DataColumn v = v_vector(ctx);
    CHECK((v.values() - 2.0 * x.values() / x.values().norm()).norm() < 1e-12);
  }

  SUBCASE("antipodal residuals cancel") {
    const DataColumn y("y", Eigen::VectorXd(-x.values()));
    const PartialContext ctx(x, y, DataMatrix{}, "");
    CHECK(v_vector(ctx).values().norm() < 1e-12);
  }

  SUBCASE("norm identity |v|^2 = 2(1 + r)") {
    for (int trial = 0; trial < 30; ++trial) {
      const DataColumn a = center(DataColumn("x", oracle::random_vector(rng, 9)));
      const DataColumn b = center(DataColumn("y", oracle::random_vector(rng, 9)));
      const PartialContext ctx(a, b, DataMatrix{}, "");
      const double expected = 2.0 * (1.0 + corr(a, b));
      CHECK(v_vector(ctx).values().squaredNorm() ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }

  SUBCASE("output is centered") {
    const DataColumn y = center(DataColumn("y", oracle::random_vector(rng, 8)));
    const PartialContext ctx(x, y, DataMatrix{}, "");
    CHECK(std::abs(v_vector(ctx).values().sum()) < 1e-10);
  }
}

TEST_CASE("bounds hold on random instances") {
  Rng rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(6, 14);
    const DataColumn x("x", oracle::random_vector(rng, n));
    const DataColumn y("y", oracle::random_vector(rng, n));
    DataMatrix controls;
    controls.append(DataColumn("c", oracle::random_vector(rng, n)));
    DataMatrix u;
    u.append(DataColumn("u1", oracle::random_vector(rng, n)));
    u.append(DataColumn("u2", oracle::random_vector(rng, n)));

    const double pc = partial_corr(x, y, controls);
    CHECK(std::abs(pc) <= 1.0 + 1e-12);
    const double pr = partial_R(u, y, controls);
    CHECK(pr >= 0.0);
    CHECK(pr <= 1.0 + 1e-12);
  }
}

TEST_CASE("partial context rejects uncentered columns") {
  CHECK_THROWS_AS(PartialContext(make("x", {1, 2, 3}), make("y", {-1, 0, 1}),
                                 DataMatrix{}, ""),
                  InputError);
}

TEST_CASE("r_star") {
  CHECK(r_star(0.0) == doctest::Approx(0.0));
  CHECK(r_star(1.0) == doctest::Approx(1.0));
  CHECK(r_star(0.91) == doctest::Approx(1.82 / 1.91).epsilon(1e-12));
  CHECK(r_star(0.91) == doctest::Approx(0.9529).epsilon(1e-4));
  CHECK_THROWS_AS(r_star(-1.0), DomainError);
  CHECK_THROWS_AS(r_star(1.5), DomainError);

  SUBCASE("increasing on [0,1) and dominating r") {
    double previous = -1.0;
    for (double r = 0.0; r < 1.0; r += 0.01) {
      const double value = r_star(r);
      CHECK(value > previous);
      CHECK(value >= r);
      previous = value;
    }
  }
}
