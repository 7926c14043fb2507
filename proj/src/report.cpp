#include "fopk/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fopk {

namespace {

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string markdown_cell(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string emit_markdown(const std::vector<RunRecord>& records) {
  // Group by problem family, keeping first-seen order; one row per size.
  std::vector<std::string> families;
  for (const auto& rec : records) {
    const std::string label = rec.problem.family_label();
    if (std::find(families.begin(), families.end(), label) == families.end()) families.push_back(label);
  }

  std::ostringstream out;
  for (std::size_t f = 0; f < families.size(); ++f) {
    std::vector<Algorithm> algos;
    std::vector<Index> sizes;
    std::map<std::pair<Index, Algorithm>, const RunRecord*> cells;
    for (const auto& rec : records) {
      if (rec.problem.family_label() != families[f]) continue;
      if (std::find(algos.begin(), algos.end(), rec.algorithm) == algos.end()) algos.push_back(rec.algorithm);
      if (std::find(sizes.begin(), sizes.end(), rec.n) == sizes.end()) sizes.push_back(rec.n);
      cells[{rec.n, rec.algorithm}] = &rec;
    }

    if (f > 0) out << '\n';
    out << "### " << markdown_cell(families[f]) << "\n\n";
    out << "| n |";
    for (Algorithm a : algos) out << ' ' << to_string(a) << " ‖r_k‖ | " << to_string(a) << " t(sec) | " << to_string(a) << " status |";
    out << "\n|---|";
    for (std::size_t i = 0; i < algos.size(); ++i) out << "---|---|---|";
    out << '\n';
    for (Index n : sizes) {
      out << "| " << n << " |";
      for (Algorithm a : algos) {
        auto it = cells.find({n, a});
        if (it == cells.end()) {
          out << " - | - | - |";
          continue;
        }
        const RunRecord& rec = *it->second;
        out << ' ' << fmt("%.4E", rec.final_true_residual) << " | " << fmt("%.6f", rec.wall_time_s) << " | "
            << markdown_cell(rec.status_text()) << " |";
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string emit_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "n,algo,status,residual,iters,time_s,repeats\n";
  for (const auto& rec : records) {
    out << rec.n << ',' << to_string(rec.algorithm) << ',' << csv_field(rec.status_text()) << ','
        << fmt("%.17g", rec.final_true_residual) << ',' << rec.iterations << ',' << fmt("%.9g", rec.wall_time_s) << ','
        << rec.repeats << '\n';
  }
  return out.str();
}

std::string emit_json(const std::vector<RunRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rec : records) {
    nlohmann::json row;
    row["family"] = rec.problem.family_label();
    row["n"] = rec.n;
    row["algo"] = to_string(rec.algorithm);
    row["status"] = rec.status_text();
    if (rec.breakdown) {
      row["breakdown"] = {{"reason", reason_label(rec.breakdown->reason)}, {"name", rec.breakdown->name}};
    } else {
      row["breakdown"] = nullptr;
    }
    row["residual"] = rec.final_true_residual;
    row["recursive_residual"] = rec.recursive_residual;
    row["iters"] = rec.iterations;
    row["time_s"] = rec.wall_time_s;
    row["repeats"] = rec.repeats;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

}  // namespace

TableFormat parse_table_format(std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "md" || key == "markdown") return TableFormat::Markdown;
  if (key == "csv") return TableFormat::Csv;
  if (key == "json") return TableFormat::Json;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected md, csv or json)");
}

std::string emit_table(const std::vector<RunRecord>& records, TableFormat format) {
  if (records.empty()) throw std::invalid_argument("emit_table: no records");
  switch (format) {
    case TableFormat::Markdown: return emit_markdown(records);
    case TableFormat::Csv: return emit_csv(records);
    case TableFormat::Json: return emit_json(records);
  }
  throw std::invalid_argument("emit_table: unknown format");
}

void write_trace(const SolveOutcome<double>& outcome, const std::filesystem::path& path) {
  if (outcome.trace.empty()) throw std::invalid_argument("write_trace: outcome has no trace (enable record_trace)");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace: cannot open '" + path.string() + "' for writing");
  out << "k,recursive_rnorm,true_rnorm\n";
  for (const auto& row : outcome.trace) {
    out << row.k << ',' << fmt("%.17g", row.recursive_rnorm) << ',' << fmt("%.17g", row.true_rnorm) << '\n';
  }
  if (!out) throw std::runtime_error("write_trace: failed writing '" + path.string() + "'");
}

}  // namespace fopk
