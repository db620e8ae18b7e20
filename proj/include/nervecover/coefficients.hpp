#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nervecover/subcomplex.hpp"

namespace nervecover {

// Coefficient arithmetic is exact 128-bit with overflow checks: the
// alternating binomial sums reach large magnitudes before cancelling.
using int128 = __int128;

std::string int128_to_string(int128 v);

int128 checked_add(int128 a, int128 b);
int128 checked_mul(int128 a, int128 b);
// base^k with 0^0 = 1; overflow checked.
int128 checked_pow(int128 base, int k);
// Binomial coefficient, exact, for n up to 63.
int128 binomial(int n, int k);

enum class Invariant { chi, face_count, chi_rel };

// Expansion coefficient of chi^k on the chain monomial of s.
//
// Computed as the parity-profile double sum
//   sum_{i<=t+ , j<=t-} (-1)^{t+ + t- - i - j} C(t+,i) C(t-,j) (i - j + l+ - l-)^k
// over the maximal-face parity counts (t+, t-) and lower-face counts
// (l+, l-). This form holds for every s and k, including k = 0 and the empty
// complex; the widely quoted vanishing rule "zero when k < r(s)" is wrong
// (the true self-vanishing threshold is k < r_top(s)), which the brute-force
// oracle and the reconstruction property confirm.
int128 c_chi(const Subcomplex& s, int k);

// Expansion coefficient of (f_d)^k: zero unless every maximal face of s has
// dimension exactly d, else sum_{i<=t} (-1)^{t-i} C(t,i) i^k.
int128 c_face_count(const Subcomplex& s, int d, int k);

// Expansion coefficient of (chi_rel)^k on the pair monomial (s, r), r a
// subcomplex of s (returns 0 otherwise). The sum ranges over parity-split
// subsets of antichain(s) minus the faces of r, and of antichain(r), with the
// relative part entering with opposite sign:
//   sum (-1)^{i+j+i'+j'} C(a+,i) C(a-,j) C(b+,i') C(b-,j')
//       * ((chi(s)-chi(r)) - (i-j) + (i'-j'))^k.
// Reduces to c_chi(s,k) at r = empty.
int128 c_chi_rel(const Subcomplex& s, const Subcomplex& r, int k);

// Inclusion-exclusion oracle for the closed forms above. The Moebius
// function of the subcomplex lattice is supported on co-antichains, so the
// sum runs over subsets T of the maximal faces:
//   c = sum_{T subset antichain(s)} (-1)^{|T|} Q(s minus T)^k,
// with Q the invariant evaluated at the (always downward-closed) complex
// s minus T. Independent of the closed-form code paths.
int128 c_bruteforce(Invariant inv, const Subcomplex& s, int k, int d = -1);

// Pair version over subsets of antichain(s) minus faces-of-r and of
// antichain(r); evaluates chi_rel on the resulting valid sub-pairs.
int128 c_bruteforce(Invariant inv, const Subcomplex& s, const Subcomplex& r,
                    int k);

// Full table over one family, aligned with enumerate_subcomplexes(n)
// ordinals. Memoized per (n, invariant, d, k).
struct CoefficientTable {
  Invariant invariant = Invariant::chi;
  int n = 0;
  int d = -1;  // face dimension for face_count, -1 otherwise
  int k = 0;
  std::vector<int128> entries;
};

std::shared_ptr<const CoefficientTable> build_coefficient_table(int n,
                                                                Invariant inv,
                                                                int k,
                                                                int d = -1);

}  // namespace nervecover
