#include "useg/sweep.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "useg/error.h"

namespace useg {
namespace {

bool Better(const SweepRow& a, const SweepRow& b) {
  if (a.dev.f1 != b.dev.f1) return a.dev.f1 > b.dev.f1;
  return a.dev.accuracy > b.dev.accuracy;
}

}  // namespace

std::vector<std::pair<int, int>> DefaultSweepWindows() {
  std::vector<std::pair<int, int>> grid;
  for (int w = kMinWindow; w <= kMaxWindow; ++w) grid.emplace_back(w, w);
  return grid;
}

std::vector<SweepRow> RunSweep(std::span<const Turn> train, std::span<const Turn> dev,
                               const std::vector<std::pair<int, int>>& windows,
                               const FeatureTemplate& base, const TrainConfig& config,
                               const TurnPosSource& pos, bool include_first) {
  if (dev.empty()) throw ValidationError("sweep needs a non-empty dev set");
  if (windows.empty()) throw ValidationError("sweep needs at least one window");
  std::vector<SweepRow> rows;
  for (const auto& [before, after] : windows) {
    SweepRow row;
    row.tmpl = base;
    row.tmpl.window_before = before;
    row.tmpl.window_after = after;
    row.tmpl.Validate();
    LinearModel model = TrainSegmenter(train, row.tmpl, config, pos);
    row.n_features = model.alphabet().size();

    std::vector<Turn> predicted(dev.begin(), dev.end());
    for (auto& turn : predicted) {
      turn.tags = GreedyDecode(model, MakeSequence(turn.tokens, pos.ForTurn(turn)));
      turn.da_labels.reset();
    }
    row.dev = Evaluate(dev, predicted, include_first);
    rows.push_back(std::move(row));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (Better(rows[i], rows[best])) best = i;
  }
  rows[best].best = true;
  return rows;
}

std::string FormatSweep(const std::vector<SweepRow>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return Better(rows[a], rows[b]);
  });
  std::string out = "Rank\tWindow\tPrevTags\tFeatures\tP\tR\tF1\tAcc\tBest\n";
  char buf[256];
  for (std::size_t r = 0; r < order.size(); ++r) {
    const SweepRow& row = rows[order[r]];
    std::snprintf(buf, sizeof(buf), "%zu\t%s\t%d\t%zu\t%.2f\t%.2f\t%.2f\t%.2f\t%s\n", r + 1,
                  FormatWindow(row.tmpl.window_before, row.tmpl.window_after).c_str(),
                  row.tmpl.n_prev_tags, row.n_features, row.dev.precision * 100,
                  row.dev.recall * 100, row.dev.f1 * 100, row.dev.accuracy * 100,
                  row.best ? "*" : "");
    out += buf;
  }
  return out;
}

}  // namespace useg
