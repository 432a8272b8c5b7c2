#include "hcm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "hcm/error.hpp"

namespace hcm {

namespace {

double rounded_percent(double ratio) { return std::round(ratio * 10000.0) / 100.0; }

nlohmann::ordered_json percent_json(const Measure& m) {
  if (!m.defined()) return "n/a";
  return rounded_percent(m.value());
}

std::string header_line(bool with_rank) {
  std::string h = "model\ttp\ttn\tfp\tfn";
  for (auto name : metric_names()) {
    h += '\t';
    h += name;
  }
  if (with_rank) h += "\trank";
  return h + '\n';
}

std::string tsv_row(const std::string& model, const HierarchicalConfusion& c,
                    const MetricReport& r) {
  std::string row = model + '\t' + std::to_string(c.tp) + '\t' + std::to_string(c.tn) + '\t' +
                    std::to_string(c.fp) + '\t' + std::to_string(c.fn);
  for (auto name : metric_names()) {
    row += '\t';
    row += format_percent(metric_by_name(r, name));
  }
  return row;
}

nlohmann::ordered_json json_row(const std::string& model, const HierarchicalConfusion& c,
                                const MetricReport& r) {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["tp"] = c.tp;
  j["tn"] = c.tn;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  for (auto name : metric_names()) j[std::string(name)] = percent_json(metric_by_name(r, name));
  return j;
}

std::uint64_t parse_count(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::MalformedLine,
                "line " + std::to_string(line) + ": '" + std::string(s) + "' is not a count", line);
  }
  return v;
}

}  // namespace

std::string format_percent(const Measure& m) {
  if (!m.defined()) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rounded_percent(m.value()));
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

ComparisonTable rank_models(std::vector<ComparisonRow> rows, std::string_view rank_metric) {
  if (std::find(metric_names().begin(), metric_names().end(), rank_metric) ==
      metric_names().end()) {
    throw std::invalid_argument("unknown rank metric '" + std::string(rank_metric) + "'");
  }
  std::set<std::string> names;
  for (const auto& r : rows) {
    if (!names.insert(r.model).second)
      throw std::invalid_argument("duplicate model name '" + r.model + "'");
  }

  auto key = [&](const ComparisonRow& r) -> const Measure& {
    return metric_by_name(r.report, rank_metric);
  };
  std::sort(rows.begin(), rows.end(), [&](const ComparisonRow& a, const ComparisonRow& b) {
    if (rank_less(key(b), key(a))) return true;
    if (rank_less(key(a), key(b))) return false;
    return a.model < b.model;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool tied = i > 0 && !rank_less(key(rows[i]), key(rows[i - 1])) &&
                      !rank_less(key(rows[i - 1]), key(rows[i]));
    rows[i].rank = tied ? rows[i - 1].rank : i + 1;
  }
  return ComparisonTable{std::string(rank_metric), std::move(rows)};
}

std::string render_tsv(const EvaluationRun& run) {
  return header_line(false) + tsv_row(run.model_name, run.confusion, run.report) + '\n';
}

std::string render_json(const EvaluationRun& run) {
  return json_row(run.model_name, run.confusion, run.report).dump() + '\n';
}

std::string render_tsv(const ComparisonTable& table) {
  std::string out = header_line(true);
  for (const auto& row : table.rows) {
    out += tsv_row(row.model, row.confusion, row.report);
    out += '\t' + std::to_string(row.rank) + '\n';
  }
  return out;
}

std::string render_json(const ComparisonTable& table) {
  nlohmann::ordered_json j;
  j["rank_by"] = table.rank_metric;
  j["models"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = json_row(row.model, row.confusion, row.report);
    r["rank"] = row.rank;
    j["models"].push_back(std::move(r));
  }
  return j.dump() + '\n';
}

std::vector<std::pair<std::string, HierarchicalConfusion>> parse_replay_counts(
    std::string_view text) {
  std::vector<std::pair<std::string, HierarchicalConfusion>> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> f;
    std::size_t s = 0;
    for (auto tab = line.find('\t'); tab != std::string_view::npos; tab = line.find('\t', s)) {
      f.push_back(line.substr(s, tab - s));
      s = tab + 1;
    }
    f.push_back(line.substr(s));
    if (f.size() != 5 || f[0].empty()) {
      throw Error(ErrorCode::MalformedLine,
                  "line " + std::to_string(number) + ": expected 'model<TAB>tp<TAB>tn<TAB>fp<TAB>fn'",
                  number);
    }
    HierarchicalConfusion c{parse_count(f[1], number), parse_count(f[2], number),
                            parse_count(f[3], number), parse_count(f[4], number)};
    out.emplace_back(std::string(f[0]), c);
  }
  return out;
}

}  // namespace hcm
