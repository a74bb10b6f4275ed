#include "qsum/series.hpp"

#include <algorithm>
#include <cmath>

namespace qsum {

long power_termination(const Complex& x, const Complex& q, long nmax) {
  Complex v = x;
  for (long n = 0; n <= nmax; ++n) {
    if (near_zero(Complex(1.0) - v, 1.0 + std::abs(v))) return n;
    v *= q;
    if (std::abs(v) < 0.5) break;  // |x q^n| only shrinks from here
  }
  return -1;
}

EvalResult sum_series_direction(TermWalker<Complex> walker, bool upward, const TailConfig& cfg,
                                const TermExtra& extra) {
  Complex sum = 0;
  double last_abs = 0;
  double ratio_hat = 0;
  int small_run = 0;
  int examined = 0;
  long stop_examined = -1;

  auto next_term = [&]() -> QPochValue<Complex> {
    if (upward) {
      QPochValue<Complex> t = walker.term();
      if (extra) t *= extra(walker.k());
      walker.step_up();
      return t;
    }
    walker.step_down();
    QPochValue<Complex> t = walker.term();
    if (extra) t *= extra(walker.k());
    return t;
  };

  while (true) {
    if (examined >= cfg.max_factors)
      throw domain_error("series did not converge within max_factors terms");
    QPochValue<Complex> t = next_term();
    ++examined;
    if (t.is_pole())
      throw pole_error("series term has a non-cancelled pole at k = " +
                       std::to_string(upward ? walker.k() - 1 : walker.k()));
    double ta = t.is_zero() ? 0.0 : std::abs(t.reg);
    if (ta > 1e250) throw domain_error("series terms diverge");
    if (!t.is_zero()) sum += t.reg;

    if (ta > 0 && last_abs > 0) ratio_hat = std::max(ratio_hat * 0.5, ta / last_abs);
    if (ta > 0) last_abs = ta;

    bool small = ta <= cfg.eps_tail * std::abs(sum);
    small_run = small ? small_run + 1 : 0;

    if (stop_examined < 0 && small_run >= cfg.window && examined >= cfg.window + 3) {
      stop_examined = examined;  // converged; explore the same length again
    }
    if (stop_examined > 0 && examined >= 2 * stop_examined) break;
  }

  double rho = std::min(ratio_hat, 0.95);
  double est_geo = last_abs > 0 ? last_abs * rho / (1.0 - rho) : 0.0;
  return EvalResult{sum, std::max(est_geo, cfg.eps_tail * std::abs(sum))};
}

EvalResult eval_phi(const PhiSeriesSpec& spec, const TailConfig& cfg) {
  if (spec.upper.size() != spec.lower.size() + 1)
    throw domain_error("phi series needs one more upper than lower parameter");
  if (std::abs(spec.q) >= 1.0) throw domain_error("phi series needs |q| < 1");
  if (near_zero(spec.z, 1.0)) return EvalResult{Complex(1), 0.0};

  if (std::abs(spec.z) >= 1.0) {
    bool terminates = false;
    for (const Complex& u : spec.upper)
      if (power_termination(u, spec.q) >= 0) terminates = true;
    if (!terminates)
      throw domain_error("phi series diverges: |z| >= 1 and no terminating upper parameter");
  }

  std::vector<Complex> lower = spec.lower;
  lower.push_back(spec.q);  // the implicit (q;q)_k
  return sum_series_direction(TermWalker<Complex>(spec.upper, lower, spec.z, spec.q), true, cfg);
}

EvalResult eval_psi(const PsiSeriesSpec& spec, const TailConfig& cfg) {
  if (spec.upper.size() != spec.lower.size())
    throw domain_error("psi series needs equal-length parameter lists");
  if (std::abs(spec.q) >= 1.0) throw domain_error("psi series needs |q| < 1");

  double num = 1.0, den = 1.0;
  for (const Complex& l : spec.lower) num *= std::abs(l);
  for (const Complex& u : spec.upper) den *= std::abs(u);
  double annulus_lo = den > 0 ? num / den : std::numeric_limits<double>::infinity();

  bool term_above = false, term_below = false;
  for (const Complex& u : spec.upper)
    if (power_termination(u, spec.q) >= 0) term_above = true;
  for (const Complex& l : spec.lower)
    if (power_termination(l / spec.q, spec.q) >= 0) term_below = true;  // l = q^{1+N}

  double za = std::abs(spec.z);
  if (!(za < 1.0 || term_above))
    throw domain_error("psi series: |z| < 1 violated and no termination from above");
  if (!(annulus_lo < za || term_below))
    throw domain_error("psi series: annulus |b1..bt/a1..at| < |z| violated and no termination from below");

  TermWalker<Complex> up(spec.upper, spec.lower, spec.z, spec.q);
  TermWalker<Complex> down = up;
  EvalResult pos = sum_series_direction(std::move(up), true, cfg);
  EvalResult neg = sum_series_direction(std::move(down), false, cfg);
  return EvalResult{pos.value + neg.value, pos.est + neg.est};
}

}  // namespace qsum
