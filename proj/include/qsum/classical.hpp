#pragma once

#include <string>
#include <vector>

#include "qsum/params.hpp"
#include "qsum/series.hpp"

namespace qsum {

// Rogers' nonterminating very-well-poised 6phi5 summation, series side and
// four-quotient product side.  Valid for |q| < 1, |aq/bcd| < 1.
EvalResult rogers_65_lhs(const Rogers65Params& p, const TailConfig& cfg);
EvalResult rogers_65_rhs(const Rogers65Params& p, const TailConfig& cfg);

// Unilateral very-well-poised 8phi7 summation (the b -> a case of the
// bilateral identity; p.b is ignored).  Valid for |q| < 1, |a/efg| < 1.
EvalResult eval_87_lhs(const ShuklaParams& p, const TailConfig& cfg);
EvalResult eval_87_rhs(const ShuklaParams& p, const TailConfig& cfg);

// Bilateral very-well-poised 8psi8 sum over all integers, |a^2/befg| < 1.
EvalResult shukla_88_lhs(const ShuklaParams& p, const TailConfig& cfg);

// The two printed closed forms of the 8psi8 summation.  Form 1 carries
// aq/ef and a^2q/befg in its products, form 2 carries a/ef and a^2/befg;
// both are kept verbatim and their equivalence is checked, not assumed.
EvalResult shukla_88_rhs_form1(const ShuklaParams& p, const TailConfig& cfg);
EvalResult shukla_88_rhs_form2(const ShuklaParams& p, const TailConfig& cfg);

// Analytic c -> 0 limits of both sides of the bilateral summation: the
// c-dependent term ratio degenerates to q^k (argument a^2q/befg) and every
// closed-form c-factor is replaced by its limit.  No external 6psi6
// summation is imported.
EvalResult bailey_66_lhs_limit(const ShuklaParams& p, const TailConfig& cfg);
EvalResult bailey_66_rhs_limit(const ShuklaParams& p, const TailConfig& cfg);

// A chain of equal-by-derivation quantities; link i compares stage i and
// i+1 as a relative residual.
struct StageValue {
  std::string name;
  Complex value{};
  double est = 0;
};

struct ChainReport {
  std::vector<StageValue> stages;
  std::vector<double> link_residuals;
  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

// Replays the derivation of the unilateral 8phi7 summation: series,
// c-split into two sums, index shift of the second sum, both sums replaced
// by Rogers' products, the combined product form, and the final closed form.
ChainReport proof_replay_1d(const ShuklaParams& p, const TailConfig& cfg);

// Verifies the b = a q^{-m} specialization chain of the bilateral sum:
// bilateral series, shifted prefactor times the unilateral 8phi7, the
// closed-form substitution, and the b = a q^{-m} case of form 2.
ChainReport specialization_check_1d(const ShuklaParams& p, long m, const TailConfig& cfg);

}  // namespace qsum
