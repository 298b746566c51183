#include "useg/linear_svm.h"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "useg/error.h"

namespace useg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::string_view kMagic = "USEG-MODEL v1";

double Dot(const std::vector<double>& w, const SparseRow& x) {
  double sum = 0.0;
  for (const auto& e : x) sum += w[e.index] * e.value;
  return sum;
}

std::vector<std::string> Fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string f; in >> f;) out.push_back(f);
  return out;
}

double ParseDouble(std::string_view s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError(where + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t ParseIndex(std::string_view s, const std::string& where) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(where + ": bad index '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(c > 0) || !std::isfinite(c)) throw ValidationError("C must be positive");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  if (max_iters < 1) throw ValidationError("max_iters must be at least 1");
  for (const auto& [cls, w] : class_weights) {
    if (!(w > 0) || !std::isfinite(w)) {
      throw ValidationError("class weight for " + cls + " must be positive");
    }
  }
}

SparseRow ToSparseRow(const FeatureVector& fv) {
  SparseRow row;
  row.reserve(fv.indices.size());
  for (auto i : fv.indices) row.push_back({i, 1.0});
  return row;
}

BinarySolution SolveBinaryDual(std::span<const SparseRow> rows,
                               std::span<const int> labels,
                               std::span<const double> upper_bounds,
                               std::size_t n_features, const TrainConfig& config) {
  const std::size_t l = rows.size();
  if (labels.size() != l || upper_bounds.size() != l) {
    throw ValidationError("labels and bounds must align with rows");
  }
  BinarySolution s;
  s.weights.assign(n_features, 0.0);
  s.alpha.assign(l, 0.0);
  if (l == 0) {
    s.converged = true;
    return s;
  }

  std::vector<double> qd(l);
  for (std::size_t i = 0; i < l; ++i) {
    double sq = 1.0;  // bias feature
    for (const auto& e : rows[i]) {
      if (e.index >= n_features) throw ValidationError("feature index out of range");
      sq += e.value * e.value;
    }
    qd[i] = sq;
  }

  std::vector<std::size_t> index(l);
  for (std::size_t i = 0; i < l; ++i) index[i] = i;
  std::mt19937_64 rng(config.shuffle_seed);

  double pg_max_old = kInf;
  double pg_min_old = -kInf;
  std::size_t active = l;
  while (s.iterations < config.max_iters) {
    double pg_max_new = -kInf;
    double pg_min_new = kInf;
    for (std::size_t i = active; i > 1; --i) {
      std::swap(index[i - 1], index[static_cast<std::size_t>(rng() % i)]);
    }
    for (std::size_t k = 0; k < active; ++k) {
      const std::size_t i = index[k];
      const double y = labels[i];
      const double upper = upper_bounds[i];
      double& a = s.alpha[i];
      const double g = y * (Dot(s.weights, rows[i]) + s.bias) - 1.0;

      double pg = 0.0;
      if (a == 0.0) {
        if (g > pg_max_old) {
          std::swap(index[k], index[--active]);
          --k;
          continue;
        }
        if (g < 0) pg = g;
      } else if (a == upper) {
        if (g < pg_min_old) {
          std::swap(index[k], index[--active]);
          --k;
          continue;
        }
        if (g > 0) pg = g;
      } else {
        pg = g;
      }
      pg_max_new = std::max(pg_max_new, pg);
      pg_min_new = std::min(pg_min_new, pg);

      if (std::abs(pg) > 1e-12) {
        const double old = a;
        a = std::min(std::max(a - g / qd[i], 0.0), upper);
        const double d = a - old;
        // Exact minimization along one coordinate never raises the dual.
        assert(g * d + 0.5 * qd[i] * d * d <= 1e-12 * (1.0 + std::abs(g * d)));
        const double step = d * y;
        for (const auto& e : rows[i]) s.weights[e.index] += step * e.value;
        s.bias += step;
      }
    }
    ++s.iterations;
    // Zero is included in the range: without an equality constraint on
    // alpha, equal but nonzero projected gradients are not optimal.
    s.violation = std::max(pg_max_new, 0.0) - std::min(pg_min_new, 0.0);
    if (s.violation <= config.tol) {
      if (active == l) {
        s.converged = true;
        break;
      }
      active = l;
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max_new <= 0 ? kInf : pg_max_new;
    pg_min_old = pg_min_new >= 0 ? -kInf : pg_min_new;
  }
  return s;
}

double DualObjective(const BinarySolution& s) {
  double norm = s.bias * s.bias;
  for (double w : s.weights) norm += w * w;
  double sum_alpha = 0.0;
  for (double a : s.alpha) sum_alpha += a;
  return 0.5 * norm - sum_alpha;
}

double PrimalObjective(const BinarySolution& s, std::span<const SparseRow> rows,
                       std::span<const int> labels,
                       std::span<const double> upper_bounds) {
  double norm = s.bias * s.bias;
  for (double w : s.weights) norm += w * w;
  double loss = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double margin = labels[i] * (Dot(s.weights, rows[i]) + s.bias);
    loss += upper_bounds[i] * std::max(0.0, 1.0 - margin);
  }
  return 0.5 * norm + loss;
}

OneVsRestWeights TrainOneVsRest(std::span<const SparseRow> rows,
                                std::span<const std::string> labels,
                                std::size_t n_features, const TrainConfig& config,
                                std::vector<std::string> classes,
                                std::vector<std::string>* warnings) {
  config.Validate();
  if (rows.empty()) throw ValidationError("empty training set");
  if (labels.size() != rows.size()) throw ValidationError("one label per row required");

  std::set<std::string> present(labels.begin(), labels.end());
  if (classes.empty()) {
    classes.assign(present.begin(), present.end());
  } else {
    for (const auto& label : present) {
      if (std::find(classes.begin(), classes.end(), label) == classes.end()) {
        throw ValidationError("label '" + label + "' not in the class list");
      }
    }
    std::erase_if(classes, [&](const std::string& c) { return !present.count(c); });
  }
  if (classes.size() == 1 && warnings) {
    warnings->push_back("only one class (" + classes[0] +
                        ") in training data; the model will always predict it");
  }

  std::vector<double> upper(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto it = config.class_weights.find(labels[i]);
    upper[i] = config.c * (it == config.class_weights.end() ? 1.0 : it->second);
  }

  auto solve = [&](const std::string& cls) {
    std::vector<int> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y[i] = labels[i] == cls ? 1 : -1;
    return SolveBinaryDual(rows, y, upper, n_features, config);
  };

  OneVsRestWeights out;
  out.classes = classes;
  if (config.parallel && classes.size() > 1) {
    std::vector<std::future<BinarySolution>> jobs;
    for (const auto& cls : classes) {
      jobs.push_back(std::async(std::launch::async, solve, std::cref(cls)));
    }
    for (auto& job : jobs) out.solutions.push_back(job.get());
  } else {
    for (const auto& cls : classes) out.solutions.push_back(solve(cls));
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const BinarySolution& s = out.solutions[k];
    if (!s.converged && warnings) {
      warnings->push_back("class " + classes[k] + ": stopped after " +
                          std::to_string(s.iterations) +
                          " iterations with violation " + FormatDouble(s.violation));
    }
    out.weights.push_back(s.weights);
    out.bias.push_back(s.bias);
  }
  return out;
}

LinearModel::LinearModel(std::vector<std::string> classes,
                         std::vector<std::vector<double>> weights,
                         std::vector<double> bias, Alphabet alphabet,
                         FeatureTemplate tmpl)
    : classes_(std::move(classes)),
      weights_(std::move(weights)),
      bias_(std::move(bias)),
      alphabet_(std::move(alphabet)),
      template_(tmpl) {
  alphabet_.Freeze();
  Check();
}

void LinearModel::Check() const {
  if (classes_.empty()) throw ValidationError("model has no classes");
  if (weights_.size() != classes_.size() || bias_.size() != classes_.size()) {
    throw ValidationError("model needs one weight vector and bias per class");
  }
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    const std::string& c = classes_[k];
    if (c.empty() || c.find_first_of(" \t\n\r") != std::string::npos) {
      throw ValidationError("class names must be non-empty without whitespace");
    }
    if (std::count(classes_.begin(), classes_.end(), c) != 1) {
      throw ValidationError("duplicate class " + c);
    }
    if (weights_[k].size() != alphabet_.size()) {
      throw ValidationError("weight vector for " + c + " does not match alphabet size");
    }
  }
  template_.Validate();
}

std::vector<double> LinearModel::Score(const FeatureVector& fv) const {
  std::vector<double> scores = bias_;
  for (auto i : fv.indices) {
    if (i >= alphabet_.size()) {
      throw ValidationError("feature index " + std::to_string(i) +
                            " outside the model alphabet (" +
                            std::to_string(alphabet_.size()) + ")");
    }
    for (std::size_t k = 0; k < classes_.size(); ++k) scores[k] += weights_[k][i];
  }
  return scores;
}

std::map<std::string, double> LinearModel::ScoreMap(const FeatureVector& fv) const {
  std::vector<double> scores = Score(fv);
  std::map<std::string, double> out;
  for (std::size_t k = 0; k < classes_.size(); ++k) out[classes_[k]] = scores[k];
  return out;
}

std::size_t LinearModel::PredictIndex(const FeatureVector& fv) const {
  std::vector<double> scores = Score(fv);
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return best;
}

const std::string& LinearModel::Predict(const FeatureVector& fv) const {
  return classes_[PredictIndex(fv)];
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void LinearModel::Write(std::ostream& out) const {
  out << kMagic << '\n';
  out << "template " << template_.Serialize() << '\n';
  out << "classes";
  for (const auto& c : classes_) out << ' ' << c;
  out << '\n';
  out << "alphabet " << alphabet_.size() << '\n';
  for (std::uint32_t i = 0; i < alphabet_.size(); ++i) {
    out << i << '\t' << alphabet_.feature(i) << '\n';
  }
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    out << "weights " << classes_[k];
    for (std::size_t i = 0; i < weights_[k].size(); ++i) {
      if (weights_[k][i] != 0.0) out << ' ' << i << ':' << FormatDouble(weights_[k][i]);
    }
    out << '\n';
    out << "bias " << classes_[k] << ' ' << FormatDouble(bias_[k]) << '\n';
  }
}

LinearModel LinearModel::Read(std::istream& in, const std::string& source) {
  int line_no = 0;
  std::string line;
  auto where = [&] { return source + ":" + std::to_string(line_no); };
  auto next = [&]() -> const std::string& {
    if (!std::getline(in, line)) {
      throw ValidationError(source + ": unexpected end of model file");
    }
    ++line_no;
    return line;
  };

  if (next() != kMagic) throw ValidationError(where() + ": not a USEG-MODEL v1 file");

  next();
  if (!line.starts_with("template ")) throw ValidationError(where() + ": expected template");
  FeatureTemplate tmpl = FeatureTemplate::Parse(line.substr(9));

  std::vector<std::string> fields = Fields(next());
  if (fields.size() < 2 || fields[0] != "classes") {
    throw ValidationError(where() + ": expected class list");
  }
  std::vector<std::string> classes(fields.begin() + 1, fields.end());

  fields = Fields(next());
  if (fields.size() != 2 || fields[0] != "alphabet") {
    throw ValidationError(where() + ": expected alphabet size");
  }
  const std::uint64_t n = ParseIndex(fields[1], where());
  Alphabet alphabet;
  for (std::uint64_t i = 0; i < n; ++i) {
    next();
    auto tab = line.find('\t');
    if (tab == std::string::npos || ParseIndex(line.substr(0, tab), where()) != i) {
      throw ValidationError(where() + ": expected alphabet entry " + std::to_string(i));
    }
    std::string feature = line.substr(tab + 1);
    if (alphabet.Find(feature)) {
      throw ValidationError(where() + ": duplicate feature '" + feature + "'");
    }
    alphabet.Add(feature);
  }

  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  for (const auto& cls : classes) {
    fields = Fields(next());
    if (fields.size() < 2 || fields[0] != "weights" || fields[1] != cls) {
      throw ValidationError(where() + ": expected weights for " + cls);
    }
    std::vector<double> w(n, 0.0);
    for (std::size_t f = 2; f < fields.size(); ++f) {
      auto colon = fields[f].find(':');
      if (colon == std::string::npos) throw ValidationError(where() + ": expected index:value");
      std::uint64_t i = ParseIndex(std::string_view(fields[f]).substr(0, colon), where());
      if (i >= n) throw ValidationError(where() + ": weight index out of range");
      w[i] = ParseDouble(std::string_view(fields[f]).substr(colon + 1), where());
    }
    weights.push_back(std::move(w));

    fields = Fields(next());
    if (fields.size() != 3 || fields[0] != "bias" || fields[1] != cls) {
      throw ValidationError(where() + ": expected bias for " + cls);
    }
    bias.push_back(ParseDouble(fields[2], where()));
  }
  return LinearModel(std::move(classes), std::move(weights), std::move(bias),
                     std::move(alphabet), tmpl);
}

void LinearModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model " + path);
  Write(out);
  out.flush();
  if (!out) throw IoError("error writing model " + path);
}

LinearModel LinearModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model " + path);
  return Read(in, path);
}

LinearModel Train(std::span<const Example> examples, Alphabet alphabet,
                  const FeatureTemplate& tmpl, const TrainConfig& config,
                  std::vector<std::string> classes,
                  std::vector<std::string>* warnings) {
  if (examples.empty()) throw ValidationError("empty training set");
  alphabet.Freeze();
  std::vector<SparseRow> rows;
  std::vector<std::string> labels;
  rows.reserve(examples.size());
  labels.reserve(examples.size());
  for (const auto& ex : examples) {
    rows.push_back(ToSparseRow(ex.features));
    labels.push_back(ex.label);
  }
  OneVsRestWeights ovr = TrainOneVsRest(rows, labels, alphabet.size(), config,
                                        std::move(classes), warnings);
  return LinearModel(std::move(ovr.classes), std::move(ovr.weights),
                     std::move(ovr.bias), std::move(alphabet), tmpl);
}

}  // namespace useg
