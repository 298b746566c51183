#ifndef USEG_LINEAR_SVM_H_
#define USEG_LINEAR_SVM_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "useg/features.h"

namespace useg {

struct TrainConfig {
  double c = 1.0;
  int max_iters = 1000;
  double tol = 1e-4;
  std::uint64_t shuffle_seed = 0;
  // Multiplies C for examples whose gold class is the key. Missing classes
  // use 1.0.
  std::map<std::string, double> class_weights;
  // Train the one-vs-rest problems on separate threads.
  bool parallel = true;

  void Validate() const;
};

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;
};
using SparseRow = std::vector<SparseEntry>;

SparseRow ToSparseRow(const FeatureVector& fv);

// One L2-regularized L1-loss binary SVM, solved in the dual:
//   min_a  0.5 a'Qa - sum(a)   s.t. 0 <= a_i <= upper_i
// with Q_ij = y_i y_j (x_i.x_j + 1); the constant 1 is the augmented bias
// feature.
struct BinarySolution {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> alpha;
  int iterations = 0;
  // Range of projected gradients (and zero) on the last sweep.
  double violation = 0.0;
  bool converged = false;
};

// Dual coordinate descent with shrinking. Stops when every projected
// gradient over a full sweep of all variables lies within `config.tol` of
// zero (max minus min, zero included), or after
// `config.max_iters` sweeps. `labels` are +1/-1.
BinarySolution SolveBinaryDual(std::span<const SparseRow> rows,
                               std::span<const int> labels,
                               std::span<const double> upper_bounds,
                               std::size_t n_features, const TrainConfig& config);

// Objectives evaluated at a solution.
double DualObjective(const BinarySolution& s);
double PrimalObjective(const BinarySolution& s, std::span<const SparseRow> rows,
                       std::span<const int> labels,
                       std::span<const double> upper_bounds);

struct OneVsRestWeights {
  std::vector<std::string> classes;
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  std::vector<BinarySolution> solutions;
};

// One binary problem per class (that class against all others). `classes`
// fixes the output order; classes with no examples are dropped. With an
// empty `classes` the order is lexicographic.
OneVsRestWeights TrainOneVsRest(std::span<const SparseRow> rows,
                                std::span<const std::string> labels,
                                std::size_t n_features, const TrainConfig& config,
                                std::vector<std::string> classes = {},
                                std::vector<std::string>* warnings = nullptr);

struct Example {
  FeatureVector features;
  std::string label;
};

// Per-class linear scorer with the alphabet and template it was trained
// with.
class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<std::string> classes,
              std::vector<std::vector<double>> weights, std::vector<double> bias,
              Alphabet alphabet, FeatureTemplate tmpl);

  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const FeatureTemplate& feature_template() const { return template_; }

  // weights[k].fv + bias[k] per class. Throws ValidationError on indices
  // outside the alphabet.
  std::vector<double> Score(const FeatureVector& fv) const;
  std::map<std::string, double> ScoreMap(const FeatureVector& fv) const;
  // Index of the highest score; ties go to the earliest class.
  std::size_t PredictIndex(const FeatureVector& fv) const;
  const std::string& Predict(const FeatureVector& fv) const;

  // Text format:
  //   USEG-MODEL v1
  //   template <FeatureTemplate::Serialize()>
  //   classes <name>...
  //   alphabet <n>, then n lines `index TAB feature`
  //   per class: `weights <class> i:v ...` (zeros omitted), `bias <class> v`
  // Reals use 17 significant digits, so Save/Load round-trips exactly.
  void Write(std::ostream& out) const;
  static LinearModel Read(std::istream& in, const std::string& source = "<stream>");
  void Save(const std::string& path) const;
  static LinearModel Load(const std::string& path);

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  void Check() const;

  std::vector<std::string> classes_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
  Alphabet alphabet_;
  FeatureTemplate template_;
};

// Trains one-vs-rest over a frozen alphabet. Throws ValidationError on an
// empty training set.
LinearModel Train(std::span<const Example> examples, Alphabet alphabet,
                  const FeatureTemplate& tmpl, const TrainConfig& config,
                  std::vector<std::string> classes = {},
                  std::vector<std::string>* warnings = nullptr);

// "%.17g"-style decimal; reads back to the same double.
std::string FormatDouble(double v);

}  // namespace useg

#endif  // USEG_LINEAR_SVM_H_
