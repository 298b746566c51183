#include "useg/metrics.h"

#include <cstdio>

#include <json.hpp>

#include "useg/error.h"
#include "useg/segmenter.h"

namespace useg {
namespace {

double Ratio(std::size_t num, std::size_t den, bool clean) {
  if (den == 0) return clean ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v * 100.0);
  return buf;
}

}  // namespace

double F1Score(double precision, double recall) {
  double sum = precision + recall;
  return sum > 0 ? 2.0 * precision * recall / sum : 0.0;
}

Metrics MetricsFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                          std::size_t n_tokens, std::size_t n_correct_tokens) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.n_tokens = n_tokens;
  m.n_correct_tokens = n_correct_tokens;
  m.precision = Ratio(tp, tp + fp, fn == 0);
  m.recall = Ratio(tp, tp + fn, fp == 0);
  m.f1 = F1Score(m.precision, m.recall);
  m.accuracy = Ratio(n_correct_tokens, n_tokens, true);
  return m;
}

Metrics Evaluate(std::span<const Turn> gold, std::span<const Turn> predicted,
                 bool include_first) {
  if (gold.size() != predicted.size()) {
    throw ValidationError("gold has " + std::to_string(gold.size()) +
                          " turns, prediction has " + std::to_string(predicted.size()));
  }
  std::size_t tp = 0, fp = 0, fn = 0, n = 0, correct = 0;
  for (std::size_t t = 0; t < gold.size(); ++t) {
    const Turn& g = gold[t];
    const Turn& p = predicted[t];
    if (g.dialogue_id != p.dialogue_id || g.turn_id != p.turn_id) {
      throw ValidationError("turn " + g.Name() + " is aligned with " + p.Name());
    }
    if (g.tokens.size() != p.tokens.size()) {
      throw ValidationError("turn " + g.Name() + ": gold has " +
                            std::to_string(g.tokens.size()) + " tokens, prediction has " +
                            std::to_string(p.tokens.size()));
    }
    if (!g.tags) throw ValidationError("turn " + g.Name() + ": gold is untagged");
    if (!p.tags) throw ValidationError("turn " + p.Name() + ": prediction is untagged");
    for (std::size_t i = 0; i < g.tokens.size(); ++i) {
      bool gold_begin = (*g.tags)[i] == SegTag::kBSeg;
      bool pred_begin = (*p.tags)[i] == SegTag::kBSeg;
      ++n;
      if (gold_begin == pred_begin) ++correct;
      if (i == 0 && !include_first) continue;
      if (gold_begin && pred_begin) ++tp;
      if (!gold_begin && pred_begin) ++fp;
      if (gold_begin && !pred_begin) ++fn;
    }
  }
  return MetricsFromCounts(tp, fp, fn, n, correct);
}

Metrics Evaluate(const std::vector<Dialogue>& gold,
                 const std::vector<Dialogue>& predicted, bool include_first) {
  std::vector<Turn> g = FlattenTurns(gold);
  std::vector<Turn> p = FlattenTurns(predicted);
  return Evaluate(g, p, include_first);
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "table") return ReportFormat::kTable;
  if (name == "tsv") return ReportFormat::kTsv;
  if (name == "json") return ReportFormat::kJson;
  throw ValidationError("unknown report format '" + std::string(name) +
                        "' (expected table, tsv or json)");
}

std::string Report(const Metrics& m, ReportFormat format, std::string_view label) {
  const std::string cells[] = {Percent(m.precision), Percent(m.recall), Percent(m.f1),
                               Percent(m.accuracy)};
  std::string out;
  switch (format) {
    case ReportFormat::kTable: {
      if (!label.empty()) out += "Domain ";
      out += "P R F1 Acc\n";
      if (!label.empty()) out += std::string(label) + " ";
      out += cells[0] + " " + cells[1] + " " + cells[2] + " " + cells[3] + "\n";
      break;
    }
    case ReportFormat::kTsv: {
      if (!label.empty()) out += "Domain\t";
      out += "P\tR\tF1\tAcc\tTP\tFP\tFN\tTokens\tCorrect\n";
      if (!label.empty()) out += std::string(label) + "\t";
      for (const auto& c : cells) out += c + "\t";
      out += std::to_string(m.tp) + "\t" + std::to_string(m.fp) + "\t" +
             std::to_string(m.fn) + "\t" + std::to_string(m.n_tokens) + "\t" +
             std::to_string(m.n_correct_tokens) + "\n";
      break;
    }
    case ReportFormat::kJson: {
      nlohmann::ordered_json j;
      if (!label.empty()) j["label"] = label;
      j["precision"] = m.precision;
      j["recall"] = m.recall;
      j["f1"] = m.f1;
      j["accuracy"] = m.accuracy;
      j["tp"] = m.tp;
      j["fp"] = m.fp;
      j["fn"] = m.fn;
      j["n_tokens"] = m.n_tokens;
      j["n_correct_tokens"] = m.n_correct_tokens;
      out = j.dump(2) + "\n";
      break;
    }
  }
  return out;
}

}  // namespace useg
