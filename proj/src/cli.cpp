#include "hcm/cli.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"

#include "hcm/dataset.hpp"
#include "hcm/error.hpp"
#include "hcm/report.hpp"

namespace hcm::cli {

namespace {

// Input problems: bad files, bad flags, invalid data. Maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string taxonomy;
  std::string truth;
  double beta = 1.0;
  std::string format = "tsv";
  std::string kind = "auto";
  bool missing_as_root = false;
};

// Runs `fn`, turning library errors into InputError with file:line context.
template <typename Fn>
auto with_context(const std::string& file, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    std::string where = file;
    if (e.line()) where += ":" + std::to_string(*e.line());
    throw InputError(where + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::string load(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

void add_common(CLI::App& cmd, CommonOptions& o, bool inputs_required) {
  auto* tax = cmd.add_option("--taxonomy", o.taxonomy, "taxonomy file (parent<TAB>child)");
  auto* truth = cmd.add_option("--truth", o.truth, "truth file (record<TAB>class;class)");
  if (inputs_required) {
    tax->required();
    truth->required();
  }
  cmd.add_option("--beta", o.beta, "beta of the hierarchical F-score")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();
  cmd.add_option("--kind", o.kind,
                 "problem kind: auto or <tree|dag>-<spl|mpl>-<mlnp|nmlnp>")
      ->capture_default_str();
  cmd.add_flag("--missing-as-root", o.missing_as_root,
               "score records without prediction as the bare root path");
}

struct LoadedInputs {
  Taxonomy taxonomy;
  TruthTable truth;
};

LoadedInputs load_inputs(const CommonOptions& o) {
  auto tax_text = load(o.taxonomy);
  auto taxonomy = with_context(o.taxonomy, [&] { return parse_taxonomy_file(tax_text); });
  auto truth_text = load(o.truth);
  auto truth = with_context(o.truth, [&] { return parse_truth_file(truth_text, taxonomy); });
  return {std::move(taxonomy), std::move(truth)};
}

EvaluationRun evaluate_file(const CommonOptions& o, const LoadedInputs& in,
                            const std::string& model, const std::string& pred_path) {
  auto pred_text = load(pred_path);
  auto preds =
      with_context(pred_path, [&] { return parse_prediction_file(pred_text, in.taxonomy); });

  ProblemKind kind;
  if (o.kind == "auto") {
    kind = infer_kind(in.taxonomy, in.truth, preds);
  } else if (auto k = parse_problem_kind(o.kind)) {
    kind = *k;
  } else {
    throw InputError("unknown --kind '" + o.kind + "'");
  }

  EvaluateOptions options;
  options.model_name = model;
  options.beta = o.beta;
  options.missing_as_root = o.missing_as_root;
  return with_context(pred_path,
                      [&] { return evaluate_model(in.taxonomy, in.truth, preds, kind, options); });
}

void report_skipped(const EvaluationRun& run, std::ostream& err) {
  for (const auto& s : run.skipped) {
    err << "warning: " << run.model_name << ": skipped record '" << s.id << "' ("
        << to_string(s.reason) << ")\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical confusion matrix evaluation", "hcm"};
  app.require_subcommand(1);

  CommonOptions eval_opts;
  std::string eval_pred;
  std::string eval_name;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate one model's predictions");
  add_common(*evaluate, eval_opts, true);
  evaluate->add_option("--pred", eval_pred, "prediction file (record<TAB>R>A>B;...)")->required();
  evaluate->add_option("--name", eval_name, "model name (default: prediction file stem)");

  CommonOptions cmp_opts;
  std::vector<std::string> cmp_preds;
  std::string rank_by = "mcc";
  std::string replay;
  auto* compare = app.add_subcommand("compare", "rank several models");
  add_common(*compare, cmp_opts, false);
  compare->add_option("--pred", cmp_preds, "NAME=FILE, repeatable");
  compare->add_option("--rank-by", rank_by, "metric used for ranking")
      ->check(CLI::IsMember(std::vector<std::string>(metric_names().begin(), metric_names().end())))
      ->capture_default_str();
  // Hidden: replays raw confusion counts instead of evaluating files.
  compare->add_option("--replay-counts", replay)->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (evaluate->parsed()) {
      auto in = load_inputs(eval_opts);
      auto name = eval_name.empty() ? std::filesystem::path(eval_pred).stem().string() : eval_name;
      auto result = evaluate_file(eval_opts, in, name, eval_pred);
      for (const auto& w : in.taxonomy.warnings()) err << "warning: " << w << '\n';
      report_skipped(result, err);
      out << (eval_opts.format == "json" ? render_json(result) : render_tsv(result));
      return kExitOk;
    }

    std::vector<ComparisonRow> rows;
    if (!replay.empty()) {
      auto text = load(replay);
      auto counts = with_context(replay, [&] { return parse_replay_counts(text); });
      for (auto& [name, c] : counts) rows.push_back({name, c, flat_metrics(c), 0});
    } else {
      if (cmp_opts.taxonomy.empty() || cmp_opts.truth.empty())
        throw InputError("compare needs --taxonomy and --truth (or --replay-counts)");
      if (cmp_preds.empty()) throw InputError("compare needs at least one --pred NAME=FILE");
      std::map<std::string, std::string> models;
      for (const auto& spec : cmp_preds) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
          throw InputError("--pred expects NAME=FILE, got '" + spec + "'");
        auto name = spec.substr(0, eq);
        if (!models.emplace(name, spec.substr(eq + 1)).second)
          throw InputError("duplicate model name '" + name + "'");
      }
      auto in = load_inputs(cmp_opts);
      for (const auto& w : in.taxonomy.warnings()) err << "warning: " << w << '\n';
      for (const auto& [name, file] : models) {
        auto result = evaluate_file(cmp_opts, in, name, file);
        report_skipped(result, err);
        rows.push_back({name, result.confusion, result.report, 0});
      }
    }
    ComparisonTable table;
    try {
      table = rank_models(std::move(rows), rank_by);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    out << (cmp_opts.format == "json" ? render_json(table) : render_tsv(table));
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace hcm::cli
