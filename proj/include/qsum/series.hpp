#pragma once

#include <functional>
#include <vector>

#include "qsum/qpoch.hpp"

namespace qsum {

// Value plus a truncation-error estimate (absolute).
struct EvalResult {
  Complex value{};
  double est = 0;
};

// Generic t-phi-(t-1) series: upper has one more entry than lower; the
// implicit (q;q)_k denominator is added by the evaluator.
struct PhiSeriesSpec {
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  Complex q;
  Complex z;
};

// Bilateral t-psi-t series: equal-length parameter lists, sum over all of Z.
struct PsiSeriesSpec {
  std::vector<Complex> upper;
  std::vector<Complex> lower;
  Complex q;
  Complex z;
};

// Incremental term of prod(u_i;q)_k / prod(l_j;q)_k * z^k as k walks by one.
// Each step costs one factor per parameter; vanishing factors are tracked
// by order so terminating and specialized series cancel exactly.
template <typename T>
class TermWalker {
 public:
  TermWalker(std::vector<T> upper, std::vector<T> lower, T z, T q)
      : up_(std::move(upper)), lo_(std::move(lower)), z_(std::move(z)), q_(std::move(q)) {}

  const QPochValue<T>& term() const { return t_; }
  long k() const { return k_; }

  void step_up() {
    for (const T& u : up_) t_ *= one_minus<T>(u * qpow_);
    for (const T& l : lo_) t_ /= one_minus<T>(l * qpow_);
    t_.reg = t_.reg * z_;
    qpow_ = qpow_ * q_;
    ++k_;
  }

  void step_down() {
    T qprev = qpow_ / q_;  // q^{k-1}
    for (const T& l : lo_) t_ *= one_minus<T>(l * qprev);
    for (const T& u : up_) t_ /= one_minus<T>(u * qprev);
    t_.reg = t_.reg / z_;
    qpow_ = qprev;
    --k_;
  }

 private:
  std::vector<T> up_, lo_;
  T z_, q_;
  QPochValue<T> t_{};
  long k_ = 0;
  T qpow_{1};  // q^k
};

// Per-term multiplier applied on top of a walker term (very-well-poised
// factor, c-block, ...); may carry its own zero/pole tags.
using TermExtra = std::function<QPochValue<Complex>(long k)>;

EvalResult eval_phi(const PhiSeriesSpec& spec, const TailConfig& cfg);
EvalResult eval_psi(const PsiSeriesSpec& spec, const TailConfig& cfg);

// Smallest N >= 0 with x = q^{-N} (within zero tolerance), or -1 when x is
// no such power; detects naturally terminating parameters.
long power_termination(const Complex& x, const Complex& q, long nmax = 4000);

// Shared one-directional summation driver used by the concrete 1-d
// evaluators: sums walker terms times extra(k), stopping after cfg.window
// consecutive relatively-small terms, then extends the explored range once
// more by the same length and folds the change into the estimate.
EvalResult sum_series_direction(TermWalker<Complex> walker, bool upward, const TailConfig& cfg,
                                const TermExtra& extra = {});

}  // namespace qsum
