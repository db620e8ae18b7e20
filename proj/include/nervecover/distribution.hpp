#pragma once

#include <cstddef>
#include <vector>

#include "nervecover/moments.hpp"
#include "nervecover/subcomplex.hpp"

namespace nervecover {

// Default absolute tolerance for probability-vector identities.
inline constexpr double distribution_tol = 1e-8;

enum class DistributionForm {
  atomic,      // P_s = P(the realized complex is exactly s)
  cumulative,  // p_s = P(s is contained in the realized complex)
};

// A probability vector over the full family of subcomplexes on n vertices,
// indexed by the family's canonical ordinals.
struct DistributionVector {
  int n = 0;
  DistributionForm form = DistributionForm::atomic;
  std::vector<double> values;
};

// Throws consistency_error when the stated form's invariants fail: atomic
// entries nonnegative summing to 1; cumulative equal to 1 on the empty
// complex and monotone along face insertions.
void validate_distribution(const DistributionVector& d, double tol = distribution_tol);

// p_s = sum of P_r over r containing s.
DistributionVector p_from_P(const DistributionVector& atomic);

// Inverse transform: P_s = sum over subsets A of the addable faces of s of
// (-1)^|A| p_{s + A} (inclusion-exclusion over the faces just above s; the
// lattice Moebius function vanishes elsewhere), with the void entry
// subtracted from the bottom row. Entries below -tol mean the input was not
// a genuine cumulative vector and raise consistency_error.
DistributionVector P_from_p(const DistributionVector& cumulative,
                            double tol = distribution_tol);

// Probability vector over pairs (s, r), r a subcomplex of s, flattened as
// s_ordinal * family_size + r_ordinal. Mass on invalid pairs is forbidden.
struct PairDistributionVector {
  int n = 0;
  DistributionForm form = DistributionForm::atomic;
  std::vector<double> values;
};

void validate_pair_distribution(const PairDistributionVector& d,
                                double tol = distribution_tol);

// p_{s,r} = sum of P_{s',r'} over s' containing s and r' containing r.
PairDistributionVector pair_p_from_P(const PairDistributionVector& atomic);

// The exact distribution of the Euler characteristic of the realized
// complex, computed along two independent routes that must agree:
// grouping the atomic vector by chi, and the moment route through the
// expansion coefficients and the inverse Vandermonde matrix.
struct ChiDistribution {
  IntegerRange range;
  std::vector<double> probabilities;  // the grouped (atomic) route
  std::vector<double> moment_route;
  std::vector<double> moments;  // mu_0..mu_N used by the moment route
  double max_discrepancy = 0.0;
};

// `d` may be in either form. The range must contain the support; width is
// capped by the moment machinery at 20. Route disagreement beyond tol
// raises consistency_error.
ChiDistribution chi_distribution(const DistributionVector& d,
                                 const IntegerRange& range,
                                 double tol = distribution_tol);

// Relative variant over pair vectors: the distribution of
// chi(K) - chi(L) for the realized pair (K, L).
ChiDistribution chi_rel_distribution(const PairDistributionVector& d,
                                     const IntegerRange& range,
                                     double tol = distribution_tol);

}  // namespace nervecover
