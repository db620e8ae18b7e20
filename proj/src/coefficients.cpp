#include "nervecover/coefficients.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <tuple>

#include "nervecover/errors.hpp"

namespace nervecover {

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Negate digit-wise to keep INT128_MIN representable.
  std::string digits;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    if (d < 0) d = -d;
    digits += static_cast<char>('0' + d);
    v /= 10;
  }
  if (neg) digits += '-';
  std::reverse(digits.begin(), digits.end());
  return digits;
}

int128 checked_add(int128 a, int128 b) {
  int128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw config_error("integer overflow in coefficient arithmetic (add)");
  }
  return out;
}

int128 checked_mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw config_error("integer overflow in coefficient arithmetic (mul)");
  }
  return out;
}

int128 checked_pow(int128 base, int k) {
  if (k < 0) throw config_error("negative exponent in coefficient arithmetic");
  int128 out = 1;
  for (int i = 0; i < k; ++i) out = checked_mul(out, base);
  return out;
}

int128 binomial(int n, int k) {
  if (n < 0 || n > 63) throw config_error("binomial index out of range");
  if (k < 0 || k > n) return 0;
  static const auto table = [] {
    std::vector<std::vector<int128>> t(64);
    for (int i = 0; i < 64; ++i) {
      t[i].resize(static_cast<std::size_t>(i) + 1);
      t[i][0] = t[i][static_cast<std::size_t>(i)] = 1;
      for (int j = 1; j < i; ++j) {
        t[i][static_cast<std::size_t>(j)] =
            t[i - 1][static_cast<std::size_t>(j) - 1] + t[i - 1][static_cast<std::size_t>(j)];
      }
    }
    return t;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

namespace {

void check_k(int k) {
  if (k < 0) throw config_error("power k must be nonnegative");
}

int chi_of_bits(std::uint64_t bits) {
  int chi = 0;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) {
    const FaceMask m = static_cast<FaceMask>(std::countr_zero(b)) + 1;
    chi += (std::popcount(m) % 2 == 1) ? 1 : -1;
  }
  return chi;
}

int faces_of_dim(std::uint64_t bits, int d) {
  int count = 0;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) {
    const FaceMask m = static_cast<FaceMask>(std::countr_zero(b)) + 1;
    if (std::popcount(m) == d + 1) ++count;
  }
  return count;
}

std::uint64_t face_bit(FaceMask m) { return std::uint64_t{1} << (m - 1); }

}  // namespace

int128 c_chi(const Subcomplex& s, int k) {
  check_k(k);
  if (s.is_void()) return 0;
  const FaceProfile p = face_profile(s);
  int128 sum = 0;
  for (int i = 0; i <= p.top_even; ++i) {
    for (int j = 0; j <= p.top_odd; ++j) {
      const int sign = ((p.top - i - j) % 2 == 0) ? 1 : -1;
      const int base = i - j + p.low_even - p.low_odd;
      int128 term = checked_mul(binomial(p.top_even, i), binomial(p.top_odd, j));
      term = checked_mul(term, checked_pow(base, k));
      sum = checked_add(sum, sign > 0 ? term : -term);
    }
  }
  return sum;
}

int128 c_face_count(const Subcomplex& s, int d, int k) {
  check_k(k);
  if (s.is_void()) return 0;
  const std::vector<FaceMask> top = chain_to_antichain(s);
  for (FaceMask m : top) {
    if (face_dimension(m) != d) return 0;
  }
  const int r_top = static_cast<int>(top.size());
  int128 sum = 0;
  for (int i = 0; i <= r_top; ++i) {
    const int sign = ((r_top - i) % 2 == 0) ? 1 : -1;
    const int128 term = checked_mul(binomial(r_top, i), checked_pow(i, k));
    sum = checked_add(sum, sign > 0 ? term : -term);
  }
  return sum;
}

int128 c_chi_rel(const Subcomplex& s, const Subcomplex& r, int k) {
  check_k(k);
  if (s.is_void() || r.is_void()) return 0;
  if (!r.subset_of(s)) return 0;
  // Maximal faces of s that are not faces of r, split by dimension parity.
  int a_even = 0;
  int a_odd = 0;
  for (FaceMask m : chain_to_antichain(s)) {
    if (r.contains(m)) continue;
    (face_dimension(m) % 2 == 0 ? a_even : a_odd) += 1;
  }
  int b_even = 0;
  int b_odd = 0;
  for (FaceMask m : chain_to_antichain(r)) {
    (face_dimension(m) % 2 == 0 ? b_even : b_odd) += 1;
  }
  const int base0 = euler_char(s) - euler_char(r);
  int128 sum = 0;
  for (int i = 0; i <= a_even; ++i) {
    for (int j = 0; j <= a_odd; ++j) {
      for (int i2 = 0; i2 <= b_even; ++i2) {
        for (int j2 = 0; j2 <= b_odd; ++j2) {
          const int sign = ((i + j + i2 + j2) % 2 == 0) ? 1 : -1;
          const int base = base0 - (i - j) + (i2 - j2);
          int128 term = checked_mul(binomial(a_even, i), binomial(a_odd, j));
          term = checked_mul(term, binomial(b_even, i2));
          term = checked_mul(term, binomial(b_odd, j2));
          term = checked_mul(term, checked_pow(base, k));
          sum = checked_add(sum, sign > 0 ? term : -term);
        }
      }
    }
  }
  return sum;
}

namespace {

constexpr int brute_force_cap = 20;

// Runs the co-antichain Moebius sum: value(s minus T) over subsets T of the
// maximal faces, signed by |T|.
template <typename Value>
int128 moebius_sum(const Subcomplex& s, int k, Value&& value) {
  const std::vector<FaceMask> top = chain_to_antichain(s);
  if (static_cast<int>(top.size()) > brute_force_cap) {
    throw config_error("brute-force coefficient cap exceeded: " +
                       std::to_string(top.size()) + " maximal faces");
  }
  int128 sum = 0;
  const std::size_t limit = std::size_t{1} << top.size();
  for (std::size_t t = 0; t < limit; ++t) {
    std::uint64_t removed = 0;
    for (std::size_t b = 0; b < top.size(); ++b) {
      if (t & (std::size_t{1} << b)) removed |= face_bit(top[b]);
    }
    const int sign = (std::popcount(t) % 2 == 0) ? 1 : -1;
    const int128 term = checked_pow(value(s.bits() & ~removed), k);
    sum = checked_add(sum, sign > 0 ? term : -term);
  }
  return sum;
}

}  // namespace

int128 c_bruteforce(Invariant inv, const Subcomplex& s, int k, int d) {
  check_k(k);
  if (s.is_void()) return 0;
  switch (inv) {
    case Invariant::chi:
      return moebius_sum(s, k, [](std::uint64_t bits) { return chi_of_bits(bits); });
    case Invariant::face_count:
      if (d < 0) throw config_error("face_count invariant requires a dimension");
      return moebius_sum(s, k, [d](std::uint64_t bits) { return faces_of_dim(bits, d); });
    case Invariant::chi_rel:
      throw config_error("chi_rel brute force requires a pair of subcomplexes");
  }
  throw config_error("unknown invariant");
}

int128 c_bruteforce(Invariant inv, const Subcomplex& s, const Subcomplex& r,
                    int k) {
  check_k(k);
  if (inv != Invariant::chi_rel) {
    throw config_error("pair brute force is defined for chi_rel only");
  }
  if (s.is_void() || r.is_void()) return 0;
  if (!r.subset_of(s)) return 0;
  std::vector<FaceMask> top_s;
  for (FaceMask m : chain_to_antichain(s)) {
    if (!r.contains(m)) top_s.push_back(m);
  }
  const std::vector<FaceMask> top_r = chain_to_antichain(r);
  if (static_cast<int>(top_s.size() + top_r.size()) > brute_force_cap) {
    throw config_error("brute-force coefficient cap exceeded on pair");
  }
  int128 sum = 0;
  const std::size_t limit_s = std::size_t{1} << top_s.size();
  const std::size_t limit_r = std::size_t{1} << top_r.size();
  for (std::size_t ts = 0; ts < limit_s; ++ts) {
    std::uint64_t removed_s = 0;
    for (std::size_t b = 0; b < top_s.size(); ++b) {
      if (ts & (std::size_t{1} << b)) removed_s |= face_bit(top_s[b]);
    }
    const int chi_s = chi_of_bits(s.bits() & ~removed_s);
    const int sign_s = (std::popcount(ts) % 2 == 0) ? 1 : -1;
    for (std::size_t tr = 0; tr < limit_r; ++tr) {
      std::uint64_t removed_r = 0;
      for (std::size_t b = 0; b < top_r.size(); ++b) {
        if (tr & (std::size_t{1} << b)) removed_r |= face_bit(top_r[b]);
      }
      const int chi_r = chi_of_bits(r.bits() & ~removed_r);
      const int sign = sign_s * ((std::popcount(tr) % 2 == 0) ? 1 : -1);
      const int128 term = checked_pow(chi_s - chi_r, k);
      sum = checked_add(sum, sign > 0 ? term : -term);
    }
  }
  return sum;
}

std::shared_ptr<const CoefficientTable> build_coefficient_table(int n,
                                                                Invariant inv,
                                                                int k,
                                                                int d) {
  if (inv == Invariant::chi_rel) {
    throw config_error("coefficient tables are built per single complex; "
                       "chi_rel pair coefficients are computed on demand");
  }
  check_k(k);
  using Key = std::tuple<int, int, int, int>;
  static std::map<Key, std::shared_ptr<const CoefficientTable>> cache;
  static std::mutex mutex;
  const Key key{n, static_cast<int>(inv), d, k};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const SubcomplexFamily& family = enumerate_subcomplexes(n);
  auto table = std::make_shared<CoefficientTable>();
  table->invariant = inv;
  table->n = n;
  table->d = (inv == Invariant::face_count) ? d : -1;
  table->k = k;
  table->entries.resize(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subcomplex& s = family.at(i);
    table->entries[i] =
        (inv == Invariant::chi) ? c_chi(s, k) : c_face_count(s, d, k);
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, table);
  return table;
}

}  // namespace nervecover
