#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracle.hpp"
#include "revana/counterexamples.hpp"
#include "revana/report.hpp"
#include "revana/synthetic.hpp"

using namespace revana;

namespace {

DataMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return load_csv(in, "test");
}

}  // namespace

TEST_CASE("load_csv") {
  SUBCASE("header plus numeric rows") {
    const DataMatrix m = parse("a,b\n1,2\n3,4\n5,6\n");
    CHECK(m.cols() == 2);
    CHECK(m.rows() == 3);
    CHECK(m.at("b")[2] == 6.0);
  }

  SUBCASE("non-numeric cell names row and column") {
    try {
      parse("hdi,meat\n1,2\n3,oops\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.row() == 3);
      CHECK(e.column() == "meat");
    }
  }

  SUBCASE("duplicate header labels are rejected") {
    CHECK_THROWS_AS(parse("a,a\n1,2\n3,4\n"), ParseError);
  }

  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse(""), EmptyFile);
  }

  SUBCASE("missing fields name the row") {
    try {
      parse("a,b\n1,2\n3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.row() == 3);
    }
  }

  SUBCASE("windows line endings are tolerated") {
    const DataMatrix m = parse("a,b\r\n1,2\r\n3,4\r\n");
    CHECK(m.at("a")[1] == 3.0);
  }

  SUBCASE("non-finite values are rejected") {
    CHECK_THROWS_AS(parse("a,b\n1,2\nnan,4\n"), ParseError);
  }
}

TEST_CASE("standardize") {
  SUBCASE("unit standard deviation and zero mean") {
    const DataMatrix m = standardize(parse("a\n1\n2\n3\n"));
    CHECK(std::abs(m.at("a").values().mean()) < 1e-12);
    const Eigen::VectorXd& v = m.at("a").values();
    CHECK(std::sqrt(v.squaredNorm() / 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("idempotent within tolerance") {
    const DataMatrix once = standardize(parse("a,b\n1,9\n2,4\n4,7\n3,1\n"));
    const DataMatrix twice = standardize(once);
    for (std::size_t j = 0; j < once.cols(); ++j) {
      CHECK((once[j].values() - twice[j].values()).norm() < 1e-12);
    }
  }

  SUBCASE("constant column names itself") {
    try {
      standardize(parse("hdi\n3\n3\n3\n"));
      FAIL("expected ZeroVariance");
    } catch (const ZeroVariance& e) {
      CHECK(e.column() == "hdi");
    }
  }
}

TEST_CASE("run_analysis") {
  SUBCASE("bundled dataset yields a complete stable report") {
    AnalysisConfig config;
    config.response = "cholesterol";
    config.explanatory = "hdi";
    config.candidates = {"meat", "milk", "eggs", "fish", "animal_fat"};
    config.standardize = true;
    const Report report = run_analysis(config, synthetic_diet_dataset());

    CHECK((report.diagnostics.verdict == Verdict::ReversalCertain ||
           report.diagnostics.verdict == Verdict::StableAllSubsetsCor1 ||
           report.diagnostics.verdict == Verdict::StableAllSubsetsCor2 ||
           report.diagnostics.verdict == Verdict::Indeterminate));
    CHECK(report.diagnostics.verdict == Verdict::StableAllSubsetsCor1);
    REQUIRE(report.subset_report.has_value());
    CHECK(report.subset_report->signs.size() == 32);
    CHECK_FALSE(report.subset_report->any_reversal);
    CHECK(report.partial_table.size() == 5);
    CHECK(report.coefficients.size() == 6);
    CHECK_FALSE(report.narrative_verdict.empty());
  }

  SUBCASE("an orthogonalized noise candidate is certified by the product bound") {
    Rng rng(1009);
    const int n = 40;
    const Eigen::VectorXd x = oracle::random_vector(rng, n);
    const Eigen::VectorXd y = x + 0.4 * oracle::random_vector(rng, n);
    Eigen::VectorXd noise = oracle::random_vector(rng, n);
    Eigen::MatrixXd basis(n, 3);
    basis.col(0).setOnes();
    basis.col(1) = x;
    basis.col(2) = y;
    const Eigen::MatrixXd q = detail::orthonormalize(basis, 1e-12);
    noise -= q * (q.transpose() * noise);

    DataMatrix data;
    data.append(DataColumn("y", y));
    data.append(DataColumn("x", x));
    data.append(DataColumn("noise", noise));
    AnalysisConfig config;
    config.response = "y";
    config.explanatory = "x";
    config.candidates = {"noise"};
    const Report report = run_analysis(config, data);
    CHECK(report.diagnostics.verdict == Verdict::StableAllSubsetsCor1);
  }

  SUBCASE("the NeedR2 table as CSV input diagnoses a certain reversal") {
    std::ostringstream csv;
    write_csv(gen_need_r2(1e-3).data, csv);
    std::istringstream in(csv.str());
    AnalysisConfig config;
    config.response = "y";
    config.explanatory = "x";
    config.candidates = {"u1", "u2"};
    const Report report = run_analysis(config, load_csv(in, "table"));
    CHECK(report.diagnostics.verdict == Verdict::ReversalCertain);
  }

  SUBCASE("tolerance overrides are applied and validated") {
    AnalysisConfig config;
    config.response = "cholesterol";
    config.explanatory = "hdi";
    config.candidates = {"meat"};
    config.tolerance_overrides = {{"ratio_boundary", 1e-6}, {"rank_rel", 1e-8}};
    CHECK_NOTHROW(run_analysis(config, synthetic_diet_dataset()));
    config.tolerance_overrides = {{"no_such_knob", 1.0}};
    CHECK_THROWS_AS(run_analysis(config, synthetic_diet_dataset()), InputError);
  }

  SUBCASE("label validation") {
    AnalysisConfig config;
    config.response = "cholesterol";
    config.explanatory = "cholesterol";
    config.candidates = {"meat"};
    CHECK_THROWS_AS(run_analysis(config, synthetic_diet_dataset()), InputError);
    config.explanatory = "nope";
    CHECK_THROWS_AS(run_analysis(config, synthetic_diet_dataset()), InputError);
  }

  SUBCASE("the stability table can optionally condition on the explanatory column") {
    AnalysisConfig config;
    config.response = "cholesterol";
    config.explanatory = "hdi";
    config.candidates = {"meat", "milk"};
    const Report plain = run_analysis(config, synthetic_diet_dataset());
    config.partials_include_explanatory = true;
    const Report conditioned = run_analysis(config, synthetic_diet_dataset());

    // independent recomputation of both conventions for the first candidate
    const DataMatrix data = synthetic_diet_dataset();
    DataMatrix without;
    without.append(data.at("milk"));
    CHECK(plain.partial_table[0].partial_r ==
          doctest::Approx(partial_corr(data.at("meat"), data.at("cholesterol"), without))
              .epsilon(1e-12));
    DataMatrix with_explanatory = without;
    with_explanatory.append(data.at("hdi"));
    CHECK(conditioned.partial_table[0].partial_r ==
          doctest::Approx(
              partial_corr(data.at("meat"), data.at("cholesterol"), with_explanatory))
              .epsilon(1e-12));
    CHECK(plain.partial_table[0].partial_r != conditioned.partial_table[0].partial_r);
  }

  SUBCASE("enumeration is skipped with a reason above the ceiling") {
    AnalysisConfig config;
    config.response = "cholesterol";
    config.explanatory = "hdi";
    config.candidates = {"meat", "milk", "eggs", "fish", "animal_fat"};
    config.subset_ceiling = 3;
    const Report report = run_analysis(config, synthetic_diet_dataset());
    CHECK_FALSE(report.subset_report.has_value());
    CHECK(report.subset_skip_reason.find("ceiling") != std::string::npos);
  }
}

TEST_CASE("emit_report") {
  AnalysisConfig config;
  config.response = "cholesterol";
  config.explanatory = "hdi";
  config.candidates = {"meat", "milk", "eggs", "fish", "animal_fat"};
  config.standardize = true;
  const Report report = run_analysis(config, synthetic_diet_dataset());

  SUBCASE("json parses and round-trips field for field") {
    const nlohmann::json j = nlohmann::json::parse(emit_report(report, ReportFormat::Json));
    for (const char* key : {"baseline_sign", "adjusted_sign", "prop1_ratio", "r_partial",
                            "R_ux", "R_uy", "fitted_corr", "r_star", "R2_u_v", "verdict",
                            "subsets", "partial_table"}) {
      CHECK(j.contains(key));
    }
    const ReversalDiagnostics& d = report.diagnostics;
    CHECK(j["verdict"] == "StableAllSubsets_Cor1");
    CHECK(j["baseline_sign"] == 1);
    CHECK(j["adjusted_sign"] == 1);
    CHECK(j["prop1_ratio"].get<double>() == d.reversal_ratio);
    CHECK(j["r_partial"].get<double>() == d.r_xy_given_w);
    CHECK(j["R_ux"].get<double>() == d.R_ux_given_w);
    CHECK(j["R_uy"].get<double>() == d.R_uy_given_w);
    CHECK(j["fitted_corr"].get<double>() == d.fitted_corr);
    CHECK(j["r_star"].get<double>() == d.r_star);
    CHECK(j["R2_u_v"].get<double>() == d.R2_u_v);
    CHECK(j["subsets"]["count"] == 32);
    CHECK(j["subsets"]["flipped"] == 0);
    REQUIRE(j["partial_table"].size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(j["partial_table"][i]["label"] == report.partial_table[i].label);
      CHECK(j["partial_table"][i]["partial_r"].get<double>() ==
            report.partial_table[i].partial_r);
    }
  }

  SUBCASE("subsets field is null when enumeration was skipped") {
    Report skipped = report;
    skipped.subset_report.reset();
    const nlohmann::json j = nlohmann::json::parse(emit_report(skipped, ReportFormat::Json));
    CHECK(j.contains("subsets"));
    CHECK(j["subsets"].is_null());
  }

  SUBCASE("a certain reversal prints its evidence line") {
    std::ostringstream csv;
    write_csv(gen_need_r2(1e-3).data, csv);
    std::istringstream in(csv.str());
    AnalysisConfig table_config;
    table_config.response = "y";
    table_config.explanatory = "x";
    table_config.candidates = {"u1", "u2"};
    const Report flipped = run_analysis(table_config, load_csv(in, "table"));
    const std::string text = emit_report(flipped, ReportFormat::Text);
    CHECK(text.find("reversal evidence") != std::string::npos);
    CHECK(text.find("ReversalCertain") != std::string::npos);
  }

  SUBCASE("reports are deterministic") {
    const Report again = run_analysis(config, synthetic_diet_dataset());
    CHECK(emit_report(report, ReportFormat::Json) == emit_report(again, ReportFormat::Json));
    CHECK(emit_report(report, ReportFormat::Text) == emit_report(again, ReportFormat::Text));
  }
}

TEST_CASE("diagnostics are invariant under column rescaling") {
  Rng rng(1201);
  for (int trial = 0; trial < 30; ++trial) {
    const RegressionProblem problem = oracle::random_problem(rng);
    const ReversalDiagnostics before = diagnose(problem);

    const auto rescale = [&](const DataColumn& column) {
      const double a = rng.uniform(0.2, 5.0) * (rng.uniform() < 0.3 ? -1.0 : 1.0);
      const double b = rng.uniform(-3.0, 3.0);
      return DataColumn(column.label(),
                        Eigen::VectorXd(a * column.values().array() + b));
    };
    DataMatrix controls, candidates;
    for (const auto& c : problem.controls()) controls.append(rescale(c));
    for (const auto& c : problem.candidates()) candidates.append(rescale(c));
    ProblemOptions relaxed;
    relaxed.relaxed = true;
    const RegressionProblem scaled(rescale(problem.y()), rescale(problem.x()),
                                   std::move(controls), std::move(candidates), relaxed);
    const ReversalDiagnostics after = diagnose(scaled);

    CHECK(std::abs(after.reversal_ratio - before.reversal_ratio) < 1e-9);
    CHECK(after.verdict == before.verdict);
    CHECK(std::abs(after.R2_u_v - before.R2_u_v) < 1e-9);
  }
}

TEST_CASE("csv round trip") {
  const DataMatrix original = synthetic_diet_dataset(7, 20);
  std::ostringstream out;
  write_csv(original, out);
  std::istringstream in(out.str());
  const DataMatrix reloaded = load_csv(in, "roundtrip");
  REQUIRE(reloaded.cols() == original.cols());
  for (std::size_t j = 0; j < original.cols(); ++j) {
    CHECK((reloaded[j].values() - original[j].values()).norm() == 0.0);
  }
}
