#include "qsum/classical.hpp"

#include <cmath>

#include "qsum/algebra.hpp"

namespace qsum {

namespace {

constexpr double kFloor = 1e-300;

double rel_diff(const Complex& x, const Complex& y) {
  return std::abs(x - y) / std::max(std::abs(y), kFloor);
}

// Very-well-poised factor (1 - a q^{2k})/(1 - a) as a tagged per-term extra.
TermExtra vwp_extra(Complex a, Complex q) {
  return [a, q](long k) {
    return one_minus<Complex>(a * pow_int(q, 2 * k)) / one_minus<Complex>(a);
  };
}

EvalResult finish(const InfProductAccum& acc, Complex scalar_part, double scalar_est = 0) {
  const QPochValue<Complex>& t = acc.tagged();
  if (t.is_pole()) throw pole_error("closed form: denominator product vanishes");
  Complex v = t.is_zero() ? Complex(0) : t.reg * scalar_part;
  double est = acc.rel_est() * std::abs(t.reg * scalar_part) + scalar_est;
  return EvalResult{v, est};
}

Complex inv_factor(const Complex& x, const char* what) {
  Complex f = Complex(1) - x;
  if (near_zero(f, 1.0 + std::abs(x))) throw pole_error(std::string(what) + " vanishes");
  return Complex(1) / f;
}

void require_modulus(double v, const char* cond) {
  if (!(v < 1.0)) throw domain_error(std::string("condition ") + cond + " violated");
}

}  // namespace

double ChainReport::max_residual() const {
  double m = 0;
  for (double r : link_residuals) m = std::max(m, r);
  return m;
}

// ---------------------------------------------------------------------------
// Rogers 6phi5

EvalResult rogers_65_lhs(const Rogers65Params& p, const TailConfig& cfg) {
  if (std::abs(p.q) >= 1.0) throw domain_error("|q| < 1 violated");
  Complex arg = p.a * p.q / (p.b * p.c * p.d);
  if (std::abs(arg) >= 1.0 && power_termination(p.b, p.q) < 0 &&
      power_termination(p.c, p.q) < 0 && power_termination(p.d, p.q) < 0)
    throw domain_error("condition |aq/bcd| < 1 violated");
  TermWalker<Complex> w({p.a, p.b, p.c, p.d},
                        {p.q, p.a * p.q / p.b, p.a * p.q / p.c, p.a * p.q / p.d}, arg, p.q);
  return sum_series_direction(std::move(w), true, cfg, vwp_extra(p.a, p.q));
}

EvalResult rogers_65_rhs(const Rogers65Params& p, const TailConfig& cfg) {
  InfProductAccum acc(p.q, cfg);
  const Complex aq = p.a * p.q;
  acc.mul(aq).mul(aq / (p.b * p.c)).mul(aq / (p.b * p.d)).mul(aq / (p.c * p.d));
  acc.div(aq / p.b).div(aq / p.c).div(aq / p.d).div(aq / (p.b * p.c * p.d));
  return finish(acc, Complex(1));
}

// ---------------------------------------------------------------------------
// Unilateral 8phi7

EvalResult eval_87_lhs(const ShuklaParams& p, const TailConfig& cfg) {
  if (std::abs(p.q) >= 1.0) throw domain_error("|q| < 1 violated");
  if (near_zero(p.c, 1.0)) throw domain_error("c = 0: use the c -> 0 limit evaluator");
  Complex arg = p.a / (p.e * p.f * p.g);
  if (std::abs(arg) >= 1.0) require_modulus(std::abs(arg), "|a/efg| < 1");
  TermWalker<Complex> w(
      {p.a, p.c, p.a * p.q * p.q / p.c, p.e, p.f, p.g},
      {p.q, p.a * p.q / p.c, p.c / p.q, p.a * p.q / p.e, p.a * p.q / p.f, p.a * p.q / p.g}, arg,
      p.q);
  return sum_series_direction(std::move(w), true, cfg, vwp_extra(p.a, p.q));
}

EvalResult eval_87_rhs(const ShuklaParams& p, const TailConfig& cfg) {
  const Complex a = p.a, c = p.c, e = p.e, f = p.f, g = p.g, q = p.q;
  Complex bracket =
      Complex(1) - (Complex(1) - Complex(1) / g) * (Complex(1) - c * f / (a * q)) *
                       (Complex(1) - c * e / (a * q)) * inv_factor(c / (g * q), "(1-c/gq)") *
                       inv_factor(e * f / a, "(1-ef/a)") * inv_factor(c / (a * q), "(1-c/aq)");
  Complex pref = (Complex(1) - c / (g * q)) * inv_factor(c / q, "(1-c/q)");
  InfProductAccum acc(q, cfg);
  acc.mul(a * q).mul(a / (e * f)).mul(a * q / (e * g)).mul(a * q / (f * g));
  acc.div(a * q / e).div(a * q / f).div(a * q / g).div(a / (e * f * g));
  return finish(acc, bracket * pref);
}

// ---------------------------------------------------------------------------
// Bilateral 8psi8

EvalResult shukla_88_lhs(const ShuklaParams& p, const TailConfig& cfg) {
  if (std::abs(p.q) >= 1.0) throw domain_error("|q| < 1 violated");
  if (near_zero(p.c, 1.0)) throw domain_error("c = 0: use the c -> 0 limit evaluator");
  Complex arg = p.a * p.a / (p.b * p.e * p.f * p.g);
  // For this very-well-poised layout the annulus degenerates: both branch
  // ratios tend to |a^2/befg|, so |arg| < 1 covers the negative branch too
  // unless the series terminates below (b = a q^{-m}).
  bool term_below = power_termination(p.a * p.q / (p.b * p.q), p.q) >= 0;  // aq/b = q^{1+m}
  if (std::abs(arg) >= 1.0 && !term_below) require_modulus(std::abs(arg), "|a^2/befg| < 1");
  TermWalker<Complex> w({p.b, p.c, p.a * p.q * p.q / p.c, p.e, p.f, p.g},
                        {p.a * p.q / p.b, p.a * p.q / p.c, p.c / p.q, p.a * p.q / p.e,
                         p.a * p.q / p.f, p.a * p.q / p.g},
                        arg, p.q);
  TermWalker<Complex> wd = w;
  EvalResult up = sum_series_direction(std::move(w), true, cfg, vwp_extra(p.a, p.q));
  EvalResult dn = sum_series_direction(std::move(wd), false, cfg, vwp_extra(p.a, p.q));
  return EvalResult{up.value + dn.value, up.est + dn.est};
}

EvalResult shukla_88_rhs_form1(const ShuklaParams& p, const TailConfig& cfg) {
  const Complex a = p.a, b = p.b, c = p.c, e = p.e, f = p.f, g = p.g, q = p.q;
  Complex bracket =
      Complex(1) - (Complex(1) - b * e / a) * (Complex(1) - b * f / a) * (Complex(1) - b * g / a) *
                       inv_factor(b * q / c, "(1-bq/c)") * inv_factor(b * c / (a * q), "(1-bc/aq)") *
                       inv_factor(b * e * f * g / (a * a), "(1-befg/a^2)");
  Complex pref = (Complex(1) - c / (b * q)) * (Complex(1) - b * c / (a * q)) *
                 inv_factor(c / (a * q), "(1-c/aq)") * inv_factor(c / q, "(1-c/q)");
  InfProductAccum acc(q, cfg);
  acc.mul(q).mul(a * q).mul(q / a);
  acc.mul(a * q / (b * e)).mul(a * q / (b * f)).mul(a * q / (b * g));
  acc.mul(a * q / (e * f)).mul(a * q / (e * g)).mul(a * q / (f * g));
  acc.div(a * q / b).div(a * q / e).div(a * q / f).div(a * q / g);
  acc.div(q / b).div(q / e).div(q / f).div(q / g);
  acc.div(a * a * q / (b * e * f * g));
  return finish(acc, bracket * pref);
}

EvalResult shukla_88_rhs_form2(const ShuklaParams& p, const TailConfig& cfg) {
  const Complex a = p.a, b = p.b, c = p.c, e = p.e, f = p.f, g = p.g, q = p.q;
  Complex bracket =
      Complex(1) - (Complex(1) - a / (b * g)) * (Complex(1) - c * f / (a * q)) *
                       (Complex(1) - c * e / (a * q)) * inv_factor(c / (g * q), "(1-c/gq)") *
                       inv_factor(e * f / a, "(1-ef/a)") * inv_factor(c / (b * q), "(1-c/bq)");
  Complex pref = (Complex(1) - c / (b * q)) * (Complex(1) - c / (g * q)) *
                 inv_factor(c / (a * q), "(1-c/aq)") * inv_factor(c / q, "(1-c/q)");
  InfProductAccum acc(q, cfg);
  acc.mul(q).mul(a * q).mul(q / a);
  acc.mul(a * q / (b * e)).mul(a * q / (b * f)).mul(a * q / (b * g));
  acc.mul(a / (e * f)).mul(a * q / (e * g)).mul(a * q / (f * g));
  acc.div(a * q / b).div(a * q / e).div(a * q / f).div(a * q / g);
  acc.div(q / b).div(q / e).div(q / f).div(q / g);
  acc.div(a * a / (b * e * f * g));
  return finish(acc, bracket * pref);
}

// ---------------------------------------------------------------------------
// c -> 0 limits (the bilateral sum degenerates to a 6psi6 summation)

EvalResult bailey_66_lhs_limit(const ShuklaParams& p, const TailConfig& cfg) {
  if (std::abs(p.q) >= 1.0) throw domain_error("|q| < 1 violated");
  Complex arg = p.a * p.a * p.q / (p.b * p.e * p.f * p.g);
  bool term_below = power_termination(p.a / p.b, p.q) >= 0;
  if (std::abs(arg) >= 1.0 && !term_below) require_modulus(std::abs(arg), "|a^2q/befg| < 1");
  TermWalker<Complex> w(
      {p.b, p.e, p.f, p.g},
      {p.a * p.q / p.b, p.a * p.q / p.e, p.a * p.q / p.f, p.a * p.q / p.g}, arg, p.q);
  TermWalker<Complex> wd = w;
  EvalResult up = sum_series_direction(std::move(w), true, cfg, vwp_extra(p.a, p.q));
  EvalResult dn = sum_series_direction(std::move(wd), false, cfg, vwp_extra(p.a, p.q));
  return EvalResult{up.value + dn.value, up.est + dn.est};
}

EvalResult bailey_66_rhs_limit(const ShuklaParams& p, const TailConfig& cfg) {
  const Complex a = p.a, b = p.b, e = p.e, f = p.f, g = p.g, q = p.q;
  Complex bracket = Complex(1) - (Complex(1) - a / (b * g)) * inv_factor(e * f / a, "(1-ef/a)");
  InfProductAccum acc(q, cfg);
  acc.mul(q).mul(a * q).mul(q / a);
  acc.mul(a * q / (b * e)).mul(a * q / (b * f)).mul(a * q / (b * g));
  acc.mul(a / (e * f)).mul(a * q / (e * g)).mul(a * q / (f * g));
  acc.div(a * q / b).div(a * q / e).div(a * q / f).div(a * q / g);
  acc.div(q / b).div(q / e).div(q / f).div(q / g);
  acc.div(a * a / (b * e * f * g));
  return finish(acc, bracket);
}

// ---------------------------------------------------------------------------
// Proof replay of the unilateral summation

ChainReport proof_replay_1d(const ShuklaParams& p, const TailConfig& cfg) {
  const Complex a = p.a, c = p.c, e = p.e, f = p.f, g = p.g, q = p.q;
  ChainReport rep;

  // (1) the 8phi7 series itself
  EvalResult s1 = eval_87_lhs(p, cfg);
  rep.stages.push_back({"series", s1.value, s1.est});

  // (2) c-split: sum with argument aq/efg plus the corrected sum
  std::vector<Complex> upper{a, e, f, g};
  std::vector<Complex> lower{q, a * q / e, a * q / f, a * q / g};
  EvalResult sum1 = sum_series_direction(
      TermWalker<Complex>(upper, lower, a * q / (e * f * g), q), true, cfg, vwp_extra(a, q));
  Complex split_den = inv_factor(c / q, "(1-c/q)") * inv_factor(a * q / c, "(1-aq/c)");
  TermExtra corr = [a, q, split_den](long k) {
    QPochValue<Complex> t = one_minus<Complex>(a * pow_int(q, 2 * k));
    t /= one_minus<Complex>(a);
    t *= one_minus<Complex>(a * pow_int(q, k));
    t *= one_minus<Complex>(pow_int(q, k));
    t.scale(split_den);
    return t;
  };
  EvalResult sum2 = sum_series_direction(
      TermWalker<Complex>(upper, lower, a / (e * f * g), q), true, cfg, corr);
  rep.stages.push_back({"c-split", sum1.value + sum2.value, sum1.est + sum2.est});

  // (3) index shift k -> k+1 in the corrected sum
  Complex coeff = a * (Complex(1) - a * q) * (Complex(1) - a * q * q) * (Complex(1) - e) *
                  (Complex(1) - f) * (Complex(1) - g) / (e * f * g) * split_den *
                  inv_factor(a * q / e, "(1-aq/e)") * inv_factor(a * q / f, "(1-aq/f)") *
                  inv_factor(a * q / g, "(1-aq/g)");
  Complex aq2 = a * q * q;
  EvalResult shifted = sum_series_direction(
      TermWalker<Complex>({aq2, e * q, f * q, g * q},
                          {q, aq2 / e, aq2 / f, aq2 / g}, a / (e * f * g), q),
      true, cfg, vwp_extra(aq2, q));
  rep.stages.push_back(
      {"index-shift", sum1.value + coeff * shifted.value, sum1.est + std::abs(coeff) * shifted.est});

  // (4) both series replaced by Rogers' products
  EvalResult r1 = rogers_65_rhs({a, e, f, g, q}, cfg);
  EvalResult r2 = rogers_65_rhs({aq2, e * q, f * q, g * q, q}, cfg);
  rep.stages.push_back(
      {"rogers-products", r1.value + coeff * r2.value, r1.est + std::abs(coeff) * r2.est});

  // (5) the combined product form
  Complex bracket =
      Complex(1) - (Complex(1) - e) * (Complex(1) - f) * (Complex(1) - g) * split_den *
                       inv_factor(e * f * g / a, "(1-efg/a)");
  InfProductAccum acc(q, cfg);
  acc.mul(a * q).mul(a * q / (e * f)).mul(a * q / (e * g)).mul(a * q / (f * g));
  acc.div(a * q / e).div(a * q / f).div(a * q / g).div(a * q / (e * f * g));
  EvalResult comb = finish(acc, bracket);
  rep.stages.push_back({"combined-product", comb.value, comb.est});

  // (6) the final closed form
  EvalResult s6 = eval_87_rhs(p, cfg);
  rep.stages.push_back({"final-form", s6.value, s6.est});

  for (size_t i = 0; i + 1 < rep.stages.size(); ++i)
    rep.link_residuals.push_back(rel_diff(rep.stages[i].value, rep.stages[i + 1].value));
  return rep;
}

// ---------------------------------------------------------------------------
// b = a q^{-m} specialization chain

ChainReport specialization_check_1d(const ShuklaParams& p, long m, const TailConfig& cfg) {
  if (m < 0) throw domain_error("specialization requires m >= 0");
  const Complex a = p.a, c = p.c, e = p.e, f = p.f, g = p.g, q = p.q;
  ShuklaParams pb = p;
  pb.b = a * pow_int(q, -m);
  ChainReport rep;

  // (1) bilateral sum at b = a q^{-m}; terms below k = -m vanish exactly
  EvalResult bl = shukla_88_lhs(pb, cfg);
  rep.stages.push_back({"bilateral-sum", bl.value, bl.est});

  // (2) shifted prefactor times the shifted unilateral series
  Complex arg = a * pow_int(q, m) / (e * f * g);
  QPochValue<Complex> pref =
      one_minus<Complex>(a * pow_int(q, -2 * m)) / one_minus<Complex>(a);
  pref *= qpoch_list<Complex>({pb.b, c, a * q * q / c, e, f, g}, q, -m);
  pref /= qpoch_list<Complex>(
      {a * q / pb.b, a * q / c, c / q, a * q / e, a * q / f, a * q / g}, q, -m);
  pref.scale(pow_int(arg, -m));
  Complex prefv = pref.value();

  ShuklaParams shifted = p;
  shifted.a = a * pow_int(q, -2 * m);
  shifted.c = c * pow_int(q, -m);
  shifted.e = e * pow_int(q, -m);
  shifted.f = f * pow_int(q, -m);
  shifted.g = g * pow_int(q, -m);
  EvalResult phi = eval_87_lhs(shifted, cfg);
  rep.stages.push_back({"shifted-series", prefv * phi.value, std::abs(prefv) * phi.est});

  // (3) the shifted series replaced by its closed form
  EvalResult phir = eval_87_rhs(shifted, cfg);
  rep.stages.push_back({"shifted-closed-form", prefv * phir.value, std::abs(prefv) * phir.est});

  // (4) the b = a q^{-m} case of the bilateral closed form
  EvalResult rhs = shukla_88_rhs_form2(pb, cfg);
  rep.stages.push_back({"bilateral-closed-form", rhs.value, rhs.est});

  for (size_t i = 0; i + 1 < rep.stages.size(); ++i)
    rep.link_residuals.push_back(rel_diff(rep.stages[i].value, rep.stages[i + 1].value));
  return rep;
}

}  // namespace qsum
