#ifndef USEG_METRICS_H_
#define USEG_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "useg/corpus.h"

namespace useg {

// Boundary detection scores. The positive class is B-Seg; P/R/F1 skip each
// turn's first token unless `include_first` was requested, accuracy covers
// every token.
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t n_tokens = 0;
  std::size_t n_correct_tokens = 0;
};

// 2PR/(P+R), or 0 when P+R is 0.
double F1Score(double precision, double recall);

// A ratio whose denominator is zero counts as 1 when it saw no errors, so
// an exact match always scores 1.
Metrics MetricsFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                          std::size_t n_tokens, std::size_t n_correct_tokens);

// Turns are aligned by position; IDs and token counts must agree and both
// sides must carry tags. Mismatches throw ValidationError naming the turn.
Metrics Evaluate(std::span<const Turn> gold, std::span<const Turn> predicted,
                 bool include_first = false);
Metrics Evaluate(const std::vector<Dialogue>& gold,
                 const std::vector<Dialogue>& predicted, bool include_first = false);

enum class ReportFormat { kTable, kTsv, kJson };

// "table", "tsv" or "json"; throws ValidationError otherwise.
ReportFormat ParseReportFormat(std::string_view name);

// P, R, F1 and Acc as percentages with two decimals, optionally preceded by
// a row label. JSON carries fractions and raw counts instead.
std::string Report(const Metrics& m, ReportFormat format, std::string_view label = "");

}  // namespace useg

#endif  // USEG_METRICS_H_
