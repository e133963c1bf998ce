// Command-line surface: diagnose, enumerate, simpson, cone sample, and the
// counterexample generators.  Reads CSV, writes a text or json report to
// stdout; errors go to stderr with exit code 2 for input problems and 3 for
// degenerate data.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "revana/cone.hpp"
#include "revana/counterexamples.hpp"
#include "revana/report.hpp"
#include "revana/subsets.hpp"
#include "revana/synthetic.hpp"

namespace {

struct CommonFlags {
  std::string input;
  std::string response;
  std::string explanatory;
  std::vector<std::string> controls;
  std::vector<std::string> candidates;
  bool standardize = false;
  std::string format = "text";
  std::uint64_t seed = 0;
  int subset_ceiling = 20;
  bool partials_include_explanatory = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool needs_input) {
  auto* input = cmd->add_option("--input", flags.input, "input CSV path");
  if (needs_input) input->required();
  cmd->add_option("--response", flags.response, "response column label");
  cmd->add_option("--explanatory", flags.explanatory, "explanatory column label");
  cmd->add_option("--controls", flags.controls, "committed control labels")->delimiter(',');
  cmd->add_option("--candidates", flags.candidates, "candidate covariate labels")->delimiter(',');
  cmd->add_flag("--standardize", flags.standardize,
                "center and scale every column to unit standard deviation");
  cmd->add_option("--format", flags.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--seed", flags.seed, "seed for any sampling");
  cmd->add_option("--subset-ceiling", flags.subset_ceiling,
                  "largest candidate count enumerated exhaustively");
  cmd->add_flag("--partials-include-explanatory", flags.partials_include_explanatory,
                "condition the stability table on the explanatory column too");
}

revana::AnalysisConfig to_config(const CommonFlags& flags) {
  revana::AnalysisConfig config;
  config.input_path = flags.input;
  config.response = flags.response;
  config.explanatory = flags.explanatory;
  config.controls = flags.controls;
  config.candidates = flags.candidates;
  config.standardize = flags.standardize;
  config.subset_ceiling = flags.subset_ceiling;
  config.seed = flags.seed;
  config.partials_include_explanatory = flags.partials_include_explanatory;
  return config;
}

revana::ReportFormat parse_format(const std::string& format) {
  return format == "json" ? revana::ReportFormat::Json : revana::ReportFormat::Text;
}

int run_diagnose(const CommonFlags& flags) {
  const revana::Report report = revana::run_analysis(to_config(flags));
  std::cout << revana::emit_report(report, parse_format(flags.format));
  return 0;
}

int run_enumerate(const CommonFlags& flags) {
  revana::AnalysisConfig config = to_config(flags);
  const revana::DataMatrix data = revana::load_csv(config.input_path);
  revana::DataMatrix working =
      config.standardize ? revana::standardize(data) : data;

  revana::ProblemOptions options;
  options.relaxed = true;
  revana::RegressionProblem problem(working.at(config.response),
                                    working.at(config.explanatory),
                                    working.select(config.controls),
                                    working.select(config.candidates), options);
  const revana::SubsetReport report =
      revana::enumerate_subsets(problem, config.subset_ceiling);

  if (flags.format == "json") {
    nlohmann::ordered_json j;
    j["count"] = report.signs.size();
    j["baseline_sign"] = report.baseline_sign();
    j["any_reversal"] = report.any_reversal;
    j["flipped"] = report.flipping_subsets.size();
    j["flipped_list"] = report.flipping_label_sets;
    nlohmann::ordered_json signs = nlohmann::ordered_json::object();
    for (const auto& [id, sign] : report.subset_signs) signs[id] = sign;
    j["subset_signs"] = signs;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report.signs.size() << " subsets fitted over candidates {";
    for (std::size_t j = 0; j < report.labels.size(); ++j) {
      std::cout << (j ? "," : "") << report.labels[j];
    }
    std::cout << "}\n";
    std::cout << "baseline sign: " << (report.baseline_sign() > 0 ? "+" : "-") << "\n";
    if (report.any_reversal) {
      std::cout << report.flipping_subsets.size() << " subsets flip the sign:";
      for (const auto& id : report.flipping_subsets) std::cout << " " << id;
      std::cout << "\n";
    } else {
      std::cout << "no subset flips the sign\n";
    }
  }
  return 0;
}

int run_simpson(const CommonFlags& flags) {
  const revana::CategoricalStudy study = revana::load_study_csv(flags.input);
  const bool simpson = revana::simpson_check(study);
  const bool reversal = revana::reversal_check(study);
  const bool strong = revana::necessary_condition_strong(study);
  const bool weak = revana::necessary_condition_weak(study);

  if (flags.format == "json") {
    nlohmann::ordered_json j;
    j["categories"] = study.categories();
    j["rows"] = study.n();
    j["simpson"] = simpson;
    j["reversal"] = reversal;
    j["necessary_condition_strong"] = strong;
    j["necessary_condition_weak"] = weak;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "categorical study: " << study.n() << " rows, " << study.categories()
              << " categories\n";
    std::cout << "simpson paradox:            " << (simpson ? "yes" : "no") << "\n";
    std::cout << "sign reversal:              " << (reversal ? "yes" : "no") << "\n";
    std::cout << "strong necessary condition: " << (strong ? "holds" : "fails (paradox impossible)")
              << "\n";
    std::cout << "weak necessary condition:   " << (weak ? "holds" : "fails (paradox impossible)")
              << "\n";
  }
  return 0;
}

int run_cone_sample(double r, int m, int count, std::uint64_t seed) {
  const revana::ConeSpec spec(r, m);
  const auto samples = revana::sample_boundary(spec, count, seed);
  std::cout.precision(17);
  for (const auto& u : samples) {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      std::cout << (i ? "," : "") << u[i];
    }
    std::cout << "\n";
  }
  return 0;
}

int run_counterexample(const std::string& family, double epsilon, double delta,
                       const std::string& format) {
  revana::CounterexampleInstance instance = [&] {
    if (family == "need-r2") return revana::gen_need_r2(epsilon);
    if (family == "need-partial") return revana::gen_need_partial(delta);
    if (family == "no-full-fitted-corr") return revana::gen_no_full_fitted_corr(epsilon, delta);
    throw revana::InputError("unknown family '" + family +
                             "'; expected need-r2, need-partial, or no-full-fitted-corr");
  }();

  if (format == "json") {
    nlohmann::ordered_json j;
    j["family"] = to_string(instance.family);
    j["epsilon"] = instance.epsilon;
    j["delta"] = instance.delta;
    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    for (const auto& column : instance.data) {
      columns[column.label()] =
          std::vector<double>(column.values().data(), column.values().data() + column.n());
    }
    j["columns"] = columns;
    j["expected"] = instance.expected;
    std::cout << j.dump(2) << "\n";
  } else {
    std::ostringstream csv;
    revana::write_csv(instance.data, csv);
    std::cout << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sign-stability analysis for least-squares coefficients"};
  app.require_subcommand(1);

  CommonFlags diagnose_flags, enumerate_flags, simpson_flags;

  auto* diagnose = app.add_subcommand("diagnose", "full stability diagnosis of one problem");
  add_common_flags(diagnose, diagnose_flags, true);

  auto* enumerate = app.add_subcommand("enumerate", "fit every candidate subset");
  add_common_flags(enumerate, enumerate_flags, true);

  auto* simpson = app.add_subcommand(
      "simpson", "paradox checks for a long-format population,category,outcome file");
  add_common_flags(simpson, simpson_flags, true);

  auto* cone = app.add_subcommand("cone", "reversal-cone utilities");
  double cone_r = 0.5;
  int cone_m = 3;
  int cone_count = 100;
  std::uint64_t cone_seed = 0;
  auto* cone_sample = cone->add_subcommand("sample", "boundary directions as CSV rows");
  cone_sample->add_option("--r", cone_r, "residual correlation magnitude, in (0,1)")->required();
  cone_sample->add_option("--m", cone_m, "dimension of the residual space, >= 3")->required();
  cone_sample->add_option("--count", cone_count, "number of samples");
  cone_sample->add_option("--seed", cone_seed, "sampling seed");
  cone->require_subcommand(1);

  auto* counterexample =
      app.add_subcommand("counterexample", "emit a crafted 4-row instance");
  std::string family;
  double epsilon = 1e-3;
  double delta = 1e-3;
  std::string ce_format = "text";
  counterexample->add_option("family", family, "need-r2 | need-partial | no-full-fitted-corr")
      ->required();
  counterexample->add_option("--epsilon", epsilon, "family parameter, in (0,1)");
  counterexample->add_option("--delta", delta, "family parameter, in (0,1)");
  counterexample->add_option("--format", ce_format, "output format: json or csv text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (diagnose->parsed()) return run_diagnose(diagnose_flags);
    if (enumerate->parsed()) return run_enumerate(enumerate_flags);
    if (simpson->parsed()) return run_simpson(simpson_flags);
    if (cone->parsed()) return run_cone_sample(cone_r, cone_m, cone_count, cone_seed);
    if (counterexample->parsed()) return run_counterexample(family, epsilon, delta, ce_format);
  } catch (const revana::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const revana::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
