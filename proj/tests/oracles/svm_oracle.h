#ifndef USEG_TESTS_ORACLES_SVM_ORACLE_H_
#define USEG_TESTS_ORACLES_SVM_ORACLE_H_

// Reference solver for the L1-loss SVM dual on tiny dense problems:
//   min_a 0.5 a'Qa - sum(a),  0 <= a_i <= U_i,  Q_ij = y_i y_j (x_i.x_j + 1)
// Accelerated projected gradient with adaptive restart, run until the
// primal-dual gap certifies the answer. Shares no code with the trainer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace useg::oracle {

struct DenseProblem {
  std::vector<std::vector<double>> x;  // n rows of d values
  std::vector<int> y;                  // +1 / -1
  std::vector<double> upper;
};

struct DenseSolution {
  std::vector<double> alpha;
  std::vector<double> w;
  double bias = 0.0;
  double dual = 0.0;    // 0.5 a'Qa - sum(a)
  double primal = 0.0;  // 0.5 |w~|^2 + sum U_i hinge_i
  double gap() const { return primal + dual; }
};

inline double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline DenseSolution SolveDense(const DenseProblem& p, int max_iters = 400000,
                                double target_gap = 1e-11) {
  const std::size_t n = p.x.size();
  const std::size_t d = n == 0 ? 0 : p.x[0].size();
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  double lipschitz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      q[i][j] = p.y[i] * p.y[j] * (Dot(p.x[i], p.x[j]) + 1.0);
      row += std::abs(q[i][j]);
    }
    lipschitz = std::max(lipschitz, row);
  }
  const double step = 1.0 / std::max(lipschitz, 1e-12);

  auto objective = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s -= a[i];
      for (std::size_t j = 0; j < n; ++j) s += 0.5 * a[i] * q[i][j] * a[j];
    }
    return s;
  };
  auto finish = [&](const std::vector<double>& a) {
    DenseSolution s;
    s.alpha = a;
    s.w.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < d; ++k) s.w[k] += a[i] * p.y[i] * p.x[i][k];
      s.bias += a[i] * p.y[i];
    }
    s.dual = objective(a);
    s.primal = 0.5 * (Dot(s.w, s.w) + s.bias * s.bias);
    for (std::size_t i = 0; i < n; ++i) {
      double margin = p.y[i] * (Dot(s.w, p.x[i]) + s.bias);
      s.primal += p.upper[i] * std::max(0.0, 1.0 - margin);
    }
    return s;
  };

  std::vector<double> a(n, 0.0), prev(n, 0.0), z(n, 0.0), grad(n);
  double t = 1.0;
  double f_prev = objective(a);
  for (int it = 1; it <= max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = -1.0;
      for (std::size_t j = 0; j < n; ++j) grad[i] += q[i][j] * z[j];
    }
    prev = a;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::clamp(z[i] - step * grad[i], 0.0, p.upper[i]);
    }
    double f = objective(a);
    if (f > f_prev) {
      // restart momentum
      t = 1.0;
      z = a;
    } else {
      double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      for (std::size_t i = 0; i < n; ++i) {
        z[i] = a[i] + (t - 1.0) / t_next * (a[i] - prev[i]);
      }
      t = t_next;
    }
    f_prev = f;
    if (it % 500 == 0 && finish(a).gap() < target_gap) break;
  }
  return finish(a);
}

// Small random problems with real-valued features. Some entries are zeroed
// to exercise sparsity.
struct RandomDataset {
  std::vector<std::vector<double>> x;
  std::vector<std::string> labels;
  std::vector<std::string> classes;
  double c = 1.0;
};

inline RandomDataset MakeRandomDataset(std::mt19937_64& rng) {
  static const double kCs[] = {0.1, 1.0, 10.0};
  std::uniform_int_distribution<int> n_dist(2, 8), d_dist(1, 3), k_dist(2, 3), c_dist(0, 2);
  std::uniform_real_distribution<double> value(-2.0, 2.0), coin(0.0, 1.0);
  RandomDataset ds;
  const int n = n_dist(rng);
  const int d = d_dist(rng);
  const int k = std::min(k_dist(rng), n);
  ds.c = kCs[c_dist(rng)];
  for (int c = 0; c < k; ++c) ds.classes.push_back("c" + std::to_string(c));
  std::uniform_int_distribution<int> label(0, k - 1);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (auto& v : row) v = coin(rng) < 0.2 ? 0.0 : value(rng);
    ds.x.push_back(std::move(row));
    ds.labels.push_back(ds.classes[i < k ? i : label(rng)]);
  }
  return ds;
}

inline DenseProblem BinaryProblem(const RandomDataset& ds, const std::string& positive) {
  DenseProblem p;
  p.x = ds.x;
  for (const auto& l : ds.labels) p.y.push_back(l == positive ? 1 : -1);
  p.upper.assign(ds.x.size(), ds.c);
  return p;
}

// Classes whose reference score is within `slack` of the best. Points on
// several one-vs-rest margins tie exactly at the optimum, and any of the
// tied classes is then a correct prediction.
inline std::vector<std::size_t> TiedBest(const std::vector<DenseSolution>& refs,
                                         const std::vector<double>& x, double slack = 1e-4) {
  double best = -1e300;
  for (const auto& r : refs) best = std::max(best, Dot(r.w, x) + r.bias);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    if (Dot(refs[k].w, x) + refs[k].bias >= best - slack) out.push_back(k);
  }
  return out;
}

}  // namespace useg::oracle

#endif  // USEG_TESTS_ORACLES_SVM_ORACLE_H_
