// SPDX-License-Identifier: Apache-2.0
#include "expsig/serialize.hpp"

#include <json.hpp>

#include "expsig/errors.hpp"
#include "expsig/format.hpp"
#include "expsig/pairings.hpp"

namespace expsig {

namespace {

using nlohmann::json;  // std::map-backed, so keys serialize sorted

json meta_object(const std::string& kernel, int dimension, int truncation,
                 double horizon, const QuadratureSettings& settings) {
  json meta;
  meta["kernel"] = kernel;
  meta["d"] = dimension;
  meta["N"] = truncation;
  meta["T"] = horizon;
  meta["seed"] = settings.seed;
  meta["method"] = method_name(settings.method);
  meta["samples"] = settings.samples;
  return meta;
}

}  // namespace

std::string method_name(QuadratureMethod method) {
  switch (method) {
    case QuadratureMethod::MonteCarlo:
      return "mc";
    case QuadratureMethod::SortedStratifiedMonteCarlo:
      return "sorted-stratified-mc";
    case QuadratureMethod::Reduced:
      return "reduced";
  }
  throw ArgumentError("serialize: unknown quadrature method");
}

QuadratureMethod parse_method(const std::string& name) {
  if (name == "mc") return QuadratureMethod::MonteCarlo;
  if (name == "sorted-stratified-mc") {
    return QuadratureMethod::SortedStratifiedMonteCarlo;
  }
  if (name == "reduced") return QuadratureMethod::Reduced;
  throw ArgumentError("serialize: unknown quadrature method \"" + name +
                      "\" (expected mc, sorted-stratified-mc, or reduced)");
}

std::string to_json(const ExpectedSignatureReport& report) {
  json doc;
  doc["meta"] = meta_object(report.kernel, report.dimension,
                            report.truncation, report.horizon,
                            report.settings);
  json terms = json::array();
  for (const TermEntry& term : report.terms) {
    json entry;
    entry["word"] = term.word.to_string();
    entry["value"] = term.value;
    entry["stderr"] = term.std_error;
    entry["pairings"] = term.pairing_count;
    terms.push_back(std::move(entry));
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2) + "\n";
}

std::string to_json(const MCEstimate& estimate, const std::string& kernel) {
  json doc;
  QuadratureSettings echo;
  echo.seed = estimate.seed;
  echo.samples = estimate.samples;
  json meta = meta_object(kernel, estimate.dimension, estimate.truncation,
                          estimate.horizon, echo);
  meta["method"] = "path-mc";
  meta["m"] = estimate.depth;
  doc["meta"] = std::move(meta);

  json terms = json::array();
  for (int level = 0; level <= estimate.truncation; level += 2) {
    const auto values = estimate.mean.level(level);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      Word w = Word::from_flat_index(estimate.dimension, level, idx);
      if (!is_even_word(w)) continue;
      json entry;
      entry["word"] = w.to_string();
      entry["value"] = values[idx];
      entry["stderr"] = estimate.std_error.level(level)[idx];
      entry["pairings"] =
          static_cast<std::int64_t>(compatible_pairings(w).size());
      terms.push_back(std::move(entry));
    }
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2) + "\n";
}

bool VerifyReport::pass() const noexcept {
  for (const VerifyRow& row : rows) {
    if (!row.pass()) return false;
  }
  return true;
}

std::string to_json(const VerifyReport& report) {
  json doc;
  json meta = meta_object(report.kernel, report.dimension, report.truncation,
                          report.horizon, report.settings);
  meta["m"] = report.depth;
  meta["mc_m"] = report.mc_depth;
  meta["mc_samples"] = report.mc_samples;
  doc["meta"] = std::move(meta);
  doc["pass"] = report.pass();

  json words = json::array();
  for (const VerifyRow& row : report.rows) {
    json entry;
    entry["word"] = row.word.to_string();
    entry["theorem"] = row.theorem_value;
    entry["theorem_stderr"] = row.theorem_stderr;
    entry["discrete"] = row.discrete_value;
    entry["discrete_err"] = row.discrete_err;
    entry["mc"] = row.mc_value;
    entry["mc_stderr"] = row.mc_stderr;
    entry["agree_theorem_discrete"] = row.agree_theorem_discrete;
    entry["agree_theorem_mc"] = row.agree_theorem_mc;
    entry["agree_discrete_mc"] = row.agree_discrete_mc;
    words.push_back(std::move(entry));
  }
  doc["words"] = std::move(words);
  return doc.dump(2) + "\n";
}

std::string to_csv(std::span<const SweepRow> rows) {
  std::string out =
      "H,canonical_In,gap_to_brownian,cross_pairing_bound,max_noncanonical_"
      "term\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.hurst);
    out += ',';
    out += format_double(row.canonical_term);
    out += ',';
    out += format_double(row.brownian_gap);
    out += ',';
    out += format_double(row.cross_bound);
    out += ',';
    out += format_double(row.max_noncanonical);
    out += '\n';
  }
  return out;
}

}  // namespace expsig
