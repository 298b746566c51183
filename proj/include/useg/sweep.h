#ifndef USEG_SWEEP_H_
#define USEG_SWEEP_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "useg/features.h"
#include "useg/linear_svm.h"
#include "useg/metrics.h"
#include "useg/segmenter.h"

namespace useg {

// -1/+1 through -5/+5.
std::vector<std::pair<int, int>> DefaultSweepWindows();

struct SweepRow {
  FeatureTemplate tmpl;
  std::size_t n_features = 0;
  Metrics dev;
  bool best = false;
};

// Trains one model per window (other template fields from `base`) and
// scores it on `dev`. Rows come back in window order; the best row has the
// highest dev F1, then accuracy, with ties going to the earlier window.
std::vector<SweepRow> RunSweep(std::span<const Turn> train, std::span<const Turn> dev,
                               const std::vector<std::pair<int, int>>& windows,
                               const FeatureTemplate& base, const TrainConfig& config,
                               const TurnPosSource& pos, bool include_first = false);

// Ranked table, best first, marked with '*'.
std::string FormatSweep(const std::vector<SweepRow>& rows);

}  // namespace useg

#endif  // USEG_SWEEP_H_
