#include "kernelsmith/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kernelsmith/errors.hpp"
#include "kernelsmith/generate.hpp"
#include "kernelsmith/instance_io.hpp"
#include "kernelsmith/oracle.hpp"

namespace kernelsmith {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string input;
  std::string reduced;
  std::string output;
  std::string report_path;
  std::string threshold;
  std::string param;
  std::string mode = "all";
  std::string report = "json";
  std::uint64_t cap = 0;  // 0: command default
  // generate
  std::string problem;
  std::size_t n = 5;
  std::size_t m = 0;
  std::size_t bits = 32;
  std::uint64_t seed = 1;
  bool metric = false;
  std::size_t k = 1;
  std::size_t required = 2;
  std::string domain = "Z";
};

struct Check {
  std::string name;
  std::string status;  // pass, fail, skipped
  std::string detail;
};

std::optional<Rational> threshold_arg(const RunConfig& cfg, const InstanceDocument& doc) {
  if (!cfg.threshold.empty()) return parse_rational(cfg.threshold);
  return doc.threshold;
}

void apply_param(const RunConfig& cfg, InstanceDocument& doc) {
  if (cfg.param.empty()) return;
  auto* raw = std::get_if<RawVectorInstance>(&doc.instance);
  if (!raw) throw InputError("--param applies to raw-vector instances only");
  raw->n = parse_bigint(cfg.param);
  validate(doc.instance);
}

// Vectors whose class the kernel preserves, threshold appended.
std::vector<std::pair<std::string, RatVec>> class_vectors(const InstanceDocument& doc) {
  if (const auto* x = std::get_if<KnapsackInstance>(&doc.instance)) {
    RatVec w = x->weights, v = x->values;
    w.push_back(x->k);
    v.push_back(x->l);
    return {{"weights", w}, {"values", v}};
  }
  RatVec w = weight_vector(doc.instance);
  if (doc.threshold) w.push_back(*doc.threshold);
  return {{"weights", w}};
}

void emit_report(const RunConfig& cfg, const ReductionReport& report, std::ostream& os) {
  if (cfg.report == "text") {
    os << report_to_text(report);
  } else {
    os << report_to_json(report).dump(2) << "\n";
  }
}

int cmd_kernelize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  InstanceDocument doc = read_instance_file(cfg.input);
  apply_param(cfg, doc);
  ReduceOptions options;
  if (cfg.cap) options.exhaustive_cap = cfg.cap;
  const auto threshold = threshold_arg(cfg, doc);
  KernelResult result = kernelize(doc.instance, threshold, options);
  InstanceDocument reduced{result.reduced, std::nullopt};
  if (result.threshold) reduced.threshold = Rational(*result.threshold);
  const std::string text = serialize_instance(reduced);
  std::ostringstream report;
  emit_report(cfg, result.report, report);
  if (!cfg.report_path.empty()) write_text_file(cfg.report_path, report.str());
  if (cfg.output.empty()) {
    out << text;
    if (cfg.report_path.empty()) err << report.str();
  } else {
    write_text_file(cfg.output, text);
    if (cfg.report_path.empty()) out << report.str();
  }
  return kExitOk;
}

std::vector<Check> run_checks(const RunConfig& cfg, const InstanceDocument& original,
                              const InstanceDocument& reduced, const ReductionReport& params,
                              std::optional<Solution>& witness, bool& cap_hit) {
  const bool all = cfg.mode == "all";
  const bool raw = std::holds_alternative<RawVectorInstance>(original.instance);
  const std::uint64_t cap = cfg.cap ? cfg.cap : kDefaultEnumerationCap;
  const auto before = class_vectors(original);
  const auto after = class_vectors(reduced);
  if (before.size() != after.size() || before[0].second.size() != after[0].second.size()) {
    throw InputError("reduced instance does not match the original's shape");
  }
  std::vector<Check> checks;

  if (all || cfg.mode == "signs") {
    BigInt r = 2;
    if (raw) r = std::min(r, std::get<RawVectorInstance>(original.instance).n);
    for (std::size_t i = 0; i < before.size(); ++i) {
      const auto rep = check_sign_order(before[i].second, after[i].second, r);
      checks.push_back({"signs:" + before[i].first, rep.passed ? "pass" : "fail",
                        rep.passed ? "" : rep.failures.front()});
    }
  }
  if (all || cfg.mode == "bound") {
    for (std::size_t i = 0; i < after.size(); ++i) {
      std::string detail;
      for (std::size_t t = 0; t < after[i].second.size() && detail.empty(); ++t) {
        const Rational& x = after[i].second[t];
        if (x.get_den() != 1) {
          detail = "entry " + std::to_string(t) + " is not an integer";
        } else if (!params.bound.admits(x.get_num())) {
          detail = "entry " + std::to_string(t) + " exceeds " + params.bound.symbolic();
        }
      }
      checks.push_back({"bound:" + after[i].first, detail.empty() ? "pass" : "fail", detail});
    }
  }
  if (all || (raw && cfg.mode != "signs" && cfg.mode != "bound")) {
    const ClassSpec spec = params.r ? ClassSpec{*params.r, Domain::Rational, 0}
                                    : ClassSpec{*params.n, Domain::Integer, 0};
    for (std::size_t i = 0; i < before.size(); ++i) {
      ClassSpec s = spec;
      s.d = before[i].second.size();
      const std::string name = "class:" + before[i].first;
      try {
        count_test_vectors(s, cap);
      } catch (const CapExceeded& e) {
        if (raw) cap_hit = true;
        checks.push_back({name, "skipped", e.what()});
        continue;
      }
      const auto sep = separating_vector(before[i].second, after[i].second, s, cap);
      std::string detail;
      if (sep) {
        detail = "separated by beta = [";
        for (std::size_t t = 0; t < sep->size(); ++t) detail += (t ? ", " : "") + to_string((*sep)[t]);
        detail += "]";
      }
      checks.push_back({name, sep ? "fail" : "pass", detail});
    }
  }
  if (!raw && (all || cfg.mode == "optima")) {
    std::optional<ThresholdPair> pair;
    if (original.threshold.has_value() != reduced.threshold.has_value()) {
      throw InputError("only one of the two instances carries a threshold");
    }
    if (original.threshold) pair = ThresholdPair{*original.threshold, *reduced.threshold};
    try {
      const VerifyReport v = verify_kernel(original.instance, reduced.instance, pair);
      checks.push_back({"optima", v.passed ? "pass" : "fail",
                        v.passed ? std::to_string(v.enumerated) + " solutions enumerated" : v.diff});
      if (!v.passed) witness = v.witness;
    } catch (const CapExceeded& e) {
      cap_hit = true;
      checks.push_back({"optima", "skipped",
                        std::string(e.what()) + "; try a smaller instance"});
    }
  }
  return checks;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  InstanceDocument original = read_instance_file(cfg.input);
  apply_param(cfg, original);
  if (!cfg.threshold.empty()) original.threshold = parse_rational(cfg.threshold);
  const KernelResult kernel = kernelize(original.instance, original.threshold);
  InstanceDocument reduced;
  if (cfg.reduced.empty()) {
    reduced.instance = kernel.reduced;
    if (kernel.threshold) reduced.threshold = Rational(*kernel.threshold);
  } else {
    reduced = read_instance_file(cfg.reduced);
    if (reduced.instance.index() != original.instance.index()) {
      throw InputError("reduced instance is a different problem");
    }
  }
  std::optional<Solution> witness;
  bool cap_hit = false;
  const auto checks = run_checks(cfg, original, reduced, kernel.report, witness, cap_hit);
  bool passed = true;
  for (const auto& c : checks) passed = passed && c.status != "fail";

  if (cfg.report == "text") {
    for (const auto& c : checks) {
      out << (c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "SKIP") << "  " << c.name;
      if (!c.detail.empty()) out << "  " << c.detail;
      out << "\n";
    }
    if (witness) out << "witness " << format_solution(*witness) << "\n";
  } else {
    Json j{{"schema", "1"}, {"problem", problem_tag(original.instance)},
           {"passed", passed ? "true" : "false"}};
    Json list = Json::array();
    for (const auto& c : checks) {
      list.push_back(Json{{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    }
    j["checks"] = std::move(list);
    if (witness) j["witness"] = format_solution(*witness);
    out << j.dump(2) << "\n";
  }
  if (!passed) return kExitVerificationFailed;
  if (cap_hit) {
    err << "an enumeration cap was exceeded; try a smaller instance or raise --cap\n";
    return kExitCapExceeded;
  }
  return kExitOk;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  GenerateOptions o;
  o.n = cfg.n;
  if (cfg.m) o.m = cfg.m;
  o.bits = cfg.bits;
  o.seed = cfg.seed;
  o.metric = cfg.metric;
  o.k = cfg.k;
  o.required = cfg.required;
  if (!cfg.param.empty()) o.class_param = parse_bigint(cfg.param);
  if (cfg.domain == "Q") {
    o.domain = Domain::Rational;
  } else if (cfg.domain != "Z") {
    throw InputError("--domain must be Z or Q");
  }
  if (cfg.metric && cfg.problem != "uflp") throw InputError("--metric applies to uflp only");
  InstanceDocument doc{generate_instance(cfg.problem, o), std::nullopt};
  validate(doc.instance);
  if (!cfg.threshold.empty()) doc.threshold = parse_rational(cfg.threshold);
  const std::string text = serialize_instance(doc);
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_text_file(cfg.output, text);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Shrink the weights of combinatorial optimization instances exactly."};
  app.require_subcommand(1);
  const std::vector<std::string> modes = {"signs", "optima", "bound", "all"};
  const std::vector<std::string> formats = {"json", "text"};

  auto* kern = app.add_subcommand("kernelize", "Reduce an instance's weights");
  kern->add_option("--in", cfg.input, "Instance file")->required()->check(CLI::ExistingFile);
  kern->add_option("--out", cfg.output, "Reduced instance file (default: stdout)");
  kern->add_option("--report-out", cfg.report_path, "Write the report to this file");
  kern->add_option("--threshold", cfg.threshold, "Decision threshold k as p/q")
      ->envname("KERNELSMITH_THRESHOLD");
  kern->add_option("--param", cfg.param, "Class parameter for raw vectors (N or r)");
  kern->add_option("--cap", cfg.cap, "Largest test-vector count checked exhaustively")
      ->envname("KERNELSMITH_CAP");
  kern->add_option("--report", cfg.report, "Report format")
      ->check(CLI::IsMember(formats))
      ->envname("KERNELSMITH_REPORT");

  auto* ver = app.add_subcommand("verify", "Check a reduced instance against its original");
  ver->add_option("--in", cfg.input, "Original instance file")->required()->check(CLI::ExistingFile);
  ver->add_option("--reduced", cfg.reduced, "Reduced instance (default: kernelize --in)")
      ->check(CLI::ExistingFile);
  ver->add_option("--threshold", cfg.threshold, "Threshold of the original instance")
      ->envname("KERNELSMITH_THRESHOLD");
  ver->add_option("--param", cfg.param, "Class parameter for raw vectors (N or r)");
  ver->add_option("--mode", cfg.mode, "Which checks to run")
      ->check(CLI::IsMember(modes))
      ->envname("KERNELSMITH_MODE");
  ver->add_option("--cap", cfg.cap, "Largest test-vector count enumerated")
      ->envname("KERNELSMITH_CAP");
  ver->add_option("--report", cfg.report, "Report format")
      ->check(CLI::IsMember(formats))
      ->envname("KERNELSMITH_REPORT");

  auto* gen = app.add_subcommand("generate", "Write a pseudo-random instance");
  gen->add_option("--problem", cfg.problem, "Problem tag")
      ->required()
      ->check(CLI::IsMember(problem_tags()));
  gen->add_option("--n", cfg.n, "Primary size");
  gen->add_option("--m", cfg.m, "Secondary size (edges, facilities, alternatives)");
  gen->add_option("--bits", cfg.bits, "Weight bit length")->envname("KERNELSMITH_BITS");
  gen->add_option("--seed", cfg.seed, "Random seed")->envname("KERNELSMITH_SEED");
  gen->add_flag("--metric", cfg.metric, "Metric service costs (uflp)");
  gen->add_option("--k", cfg.k, "Vehicles (rpp) or committee size (c4u)");
  gen->add_option("--required", cfg.required, "Required edges (rpp)");
  gen->add_option("--param", cfg.param, "Class parameter (raw-vector)");
  gen->add_option("--domain", cfg.domain, "Z or Q (raw-vector)");
  gen->add_option("--threshold", cfg.threshold, "Threshold stored with the instance");
  gen->add_option("--out", cfg.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (kern->parsed()) return cmd_kernelize(cfg, out, err);
    if (ver->parsed()) return cmd_verify(cfg, out, err);
    return cmd_generate(cfg, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InternalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace kernelsmith
