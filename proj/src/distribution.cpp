#include "nervecover/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "nervecover/coefficients.hpp"
#include "nervecover/errors.hpp"

namespace nervecover {

namespace {

// The quadratic-in-family conversions are practical through n = 5; the
// pair pipeline squares the family size again, so it stops at n = 4.
constexpr int max_single_n = 5;
constexpr int max_pair_n = 4;

const SubcomplexFamily& family_for(const DistributionVector& d, int cap) {
  if (d.n < 1 || d.n > cap) {
    throw config_error("distribution pipeline supports 1 to " +
                       std::to_string(cap) + " balls, got " +
                       std::to_string(d.n));
  }
  const SubcomplexFamily& fam = enumerate_subcomplexes(d.n);
  if (d.values.size() != fam.size()) {
    throw config_error("distribution vector has " +
                       std::to_string(d.values.size()) + " entries, family " +
                       std::to_string(fam.size()));
  }
  return fam;
}

// Faces not in s whose proper subfaces all are: exactly the faces that can
// be appended one at a time, and automatically an antichain.
std::vector<FaceMask> addable_faces(const Subcomplex& s) {
  std::vector<FaceMask> out;
  FaceMask full = (FaceMask{1} << s.n()) - 1;
  for (FaceMask f = 1; f <= full; ++f) {
    if (s.contains(f)) continue;
    bool closed = true;
    for (FaceMask sub = (f - 1) & f; sub != 0 && closed; sub = (sub - 1) & f) {
      closed = s.contains(sub);
    }
    if (closed) out.push_back(f);
  }
  return out;
}

std::uint64_t face_bit(FaceMask f) { return std::uint64_t{1} << (f - 1); }

}  // namespace

void validate_distribution(const DistributionVector& d, double tol) {
  const SubcomplexFamily& fam = family_for(d, 6);
  if (d.form == DistributionForm::atomic) {
    double sum = 0.0;
    for (double v : d.values) {
      if (v < -tol) {
        throw consistency_error("atomic distribution has a negative entry " +
                                std::to_string(v));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw consistency_error("atomic distribution sums to " +
                              std::to_string(sum));
    }
    return;
  }
  std::size_t empty_ord = fam.index_of(Subcomplex::empty(d.n));
  if (std::abs(d.values[empty_ord] - 1.0) > tol) {
    throw consistency_error("cumulative vector is " +
                            std::to_string(d.values[empty_ord]) +
                            " on the empty complex, expected 1");
  }
  // monotone along covering relations: removing one maximal face can only
  // raise the containment probability
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subcomplex& s = fam.at(i);
    if (s.is_void()) {
      if (d.values[i] > d.values[empty_ord] + tol) {
        throw consistency_error("cumulative vector increases toward void");
      }
      continue;
    }
    if (s.is_empty_complex()) continue;
    for (FaceMask f : chain_to_antichain(s)) {
      Subcomplex below =
          Subcomplex::from_bits_unchecked(d.n, s.bits() & ~face_bit(f));
      if (d.values[fam.index_of(below)] < d.values[i] - tol) {
        throw consistency_error(
            "cumulative vector is not monotone under inclusion");
      }
    }
  }
}

DistributionVector p_from_P(const DistributionVector& atomic) {
  if (atomic.form != DistributionForm::atomic) {
    throw config_error("p_from_P expects the atomic form");
  }
  const SubcomplexFamily& fam = family_for(atomic, max_single_n);
  DistributionVector out{atomic.n, DistributionForm::cumulative,
                         std::vector<double>(fam.size(), 0.0)};
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subcomplex& s = fam.at(i);
    double total = 0.0;
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (s.subset_of(fam.at(j))) total += atomic.values[j];
    }
    out.values[i] = total;
  }
  return out;
}

DistributionVector P_from_p(const DistributionVector& cumulative, double tol) {
  if (cumulative.form != DistributionForm::cumulative) {
    throw config_error("P_from_p expects the cumulative form");
  }
  const SubcomplexFamily& fam = family_for(cumulative, max_single_n);
  std::size_t void_ord = fam.index_of(Subcomplex::void_complex(cumulative.n));
  DistributionVector out{cumulative.n, DistributionForm::atomic,
                         std::vector<double>(fam.size(), 0.0)};
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subcomplex& s = fam.at(i);
    if (s.is_void()) {
      out.values[i] = cumulative.values[i];
      continue;
    }
    std::vector<FaceMask> addable = addable_faces(s);
    double total = 0.0;
    for (std::uint32_t pick = 0; pick < (1u << addable.size()); ++pick) {
      std::uint64_t bits = s.bits();
      for (std::size_t a = 0; a < addable.size(); ++a) {
        if ((pick >> a) & 1u) bits |= face_bit(addable[a]);
      }
      Subcomplex grown = Subcomplex::from_bits_unchecked(cumulative.n, bits);
      double term = cumulative.values[fam.index_of(grown)];
      total += (std::popcount(pick) % 2 == 0) ? term : -term;
    }
    if (s.is_empty_complex()) total -= cumulative.values[void_ord];
    out.values[i] = total;
  }
  for (double v : out.values) {
    if (v < -tol) {
      throw consistency_error(
          "input was not a valid cumulative vector: atomic entry " +
          std::to_string(v));
    }
  }
  return out;
}

void validate_pair_distribution(const PairDistributionVector& d, double tol) {
  if (d.n < 1 || d.n > max_pair_n) {
    throw config_error("pair pipeline supports 1 to " +
                       std::to_string(max_pair_n) + " balls, got " +
                       std::to_string(d.n));
  }
  const SubcomplexFamily& fam = enumerate_subcomplexes(d.n);
  std::size_t m = fam.size();
  if (d.values.size() != m * m) {
    throw config_error("pair vector size mismatch");
  }
  if (d.form == DistributionForm::atomic) {
    double sum = 0.0;
    for (std::size_t si = 0; si < m; ++si) {
      for (std::size_t ri = 0; ri < m; ++ri) {
        double v = d.values[si * m + ri];
        if (v < -tol) {
          throw consistency_error("pair distribution has a negative entry");
        }
        if (!fam.at(ri).subset_of(fam.at(si)) && v > tol) {
          throw consistency_error(
              "pair distribution puts mass on a non-nested pair");
        }
        sum += v;
      }
    }
    if (std::abs(sum - 1.0) > tol) {
      throw consistency_error("pair distribution sums to " +
                              std::to_string(sum));
    }
  }
}

PairDistributionVector pair_p_from_P(const PairDistributionVector& atomic) {
  if (atomic.form != DistributionForm::atomic) {
    throw config_error("pair_p_from_P expects the atomic form");
  }
  validate_pair_distribution(atomic);
  const SubcomplexFamily& fam = enumerate_subcomplexes(atomic.n);
  std::size_t m = fam.size();
  // the atomic support is typically tiny; iterate it once per output slot
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::size_t si = 0; si < m; ++si) {
    for (std::size_t ri = 0; ri < m; ++ri) {
      if (atomic.values[si * m + ri] != 0.0) support.emplace_back(si, ri);
    }
  }
  PairDistributionVector out{atomic.n, DistributionForm::cumulative,
                             std::vector<double>(m * m, 0.0)};
  for (std::size_t si = 0; si < m; ++si) {
    for (std::size_t ri = 0; ri < m; ++ri) {
      double total = 0.0;
      for (const auto& [sj, rj] : support) {
        if (fam.at(si).subset_of(fam.at(sj)) &&
            fam.at(ri).subset_of(fam.at(rj))) {
          total += atomic.values[sj * m + rj];
        }
      }
      out.values[si * m + ri] = total;
    }
  }
  return out;
}

namespace {

ChiDistribution finish_two_routes(const IntegerRange& range,
                                  std::vector<double> grouped,
                                  std::vector<double> mu, double tol) {
  ChiDistribution out;
  out.range = range;
  out.probabilities = std::move(grouped);
  out.moments = std::move(mu);
  RecoveredDistribution rec =
      distribution_from_moments({range, out.moments});
  out.moment_route = rec.p;
  for (std::size_t j = 0; j < out.probabilities.size(); ++j) {
    out.max_discrepancy =
        std::max(out.max_discrepancy,
                 std::abs(out.probabilities[j] - out.moment_route[j]));
  }
  if (out.max_discrepancy > tol) {
    std::ostringstream msg;
    msg << "the grouped and moment routes disagree by "
        << out.max_discrepancy << " on range [" << range.lo << ", "
        << range.hi << "]:";
    for (std::size_t j = 0; j < out.probabilities.size(); ++j) {
      msg << " (" << (range.lo + static_cast<long long>(j)) << ": "
          << out.probabilities[j] << " vs " << out.moment_route[j] << ")";
    }
    throw consistency_error(msg.str());
  }
  return out;
}

}  // namespace

ChiDistribution chi_distribution(const DistributionVector& d,
                                 const IntegerRange& range, double tol) {
  if (range.lo > range.hi) throw config_error("empty range");
  family_for(d, max_single_n);
  validate_distribution(d, tol);
  DistributionVector atomic =
      d.form == DistributionForm::atomic ? d : P_from_p(d, tol);
  DistributionVector cumulative =
      d.form == DistributionForm::cumulative ? d : p_from_P(d);
  const SubcomplexFamily& fam = enumerate_subcomplexes(d.n);

  long long width = range.width();
  std::vector<double> grouped(static_cast<std::size_t>(width) + 1, 0.0);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subcomplex& s = fam.at(i);
    if (s.is_void()) {
      if (std::abs(atomic.values[i]) > tol) {
        throw consistency_error("atomic mass on the void element");
      }
      continue;
    }
    long long chi = euler_char(s);
    if (chi < range.lo || chi > range.hi) {
      if (std::abs(atomic.values[i]) > tol) {
        throw config_error("range [" + std::to_string(range.lo) + ", " +
                           std::to_string(range.hi) +
                           "] does not contain the support value " +
                           std::to_string(chi));
      }
      continue;
    }
    grouped[static_cast<std::size_t>(chi - range.lo)] += atomic.values[i];
  }

  std::vector<double> mu(static_cast<std::size_t>(width) + 1, 0.0);
  for (long long k = 0; k <= width; ++k) {
    auto table =
        build_coefficient_table(d.n, Invariant::chi, static_cast<int>(k));
    double total = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      total += static_cast<double>(table->entries[i]) * cumulative.values[i];
    }
    mu[static_cast<std::size_t>(k)] = total;
  }
  return finish_two_routes(range, std::move(grouped), std::move(mu), tol);
}

ChiDistribution chi_rel_distribution(const PairDistributionVector& d,
                                     const IntegerRange& range, double tol) {
  if (range.lo > range.hi) throw config_error("empty range");
  if (d.form != DistributionForm::atomic) {
    throw config_error("the pair pipeline starts from the atomic form");
  }
  validate_pair_distribution(d, tol);
  const SubcomplexFamily& fam = enumerate_subcomplexes(d.n);
  std::size_t m = fam.size();
  PairDistributionVector cumulative = pair_p_from_P(d);

  long long width = range.width();
  std::vector<double> grouped(static_cast<std::size_t>(width) + 1, 0.0);
  for (std::size_t si = 0; si < m; ++si) {
    for (std::size_t ri = 0; ri < m; ++ri) {
      double v = d.values[si * m + ri];
      if (v == 0.0) continue;
      const Subcomplex& s = fam.at(si);
      const Subcomplex& r = fam.at(ri);
      if (s.is_void() || r.is_void()) {
        if (std::abs(v) > tol) {
          throw consistency_error("atomic mass on a void pair");
        }
        continue;
      }
      long long chi = relative_euler_char(s, r);
      if (chi < range.lo || chi > range.hi) {
        if (std::abs(v) > tol) {
          throw config_error("range does not contain the pair support value " +
                             std::to_string(chi));
        }
        continue;
      }
      grouped[static_cast<std::size_t>(chi - range.lo)] += v;
    }
  }

  std::vector<double> mu(static_cast<std::size_t>(width) + 1, 0.0);
  for (long long k = 0; k <= width; ++k) {
    double total = 0.0;
    for (std::size_t si = 0; si < m; ++si) {
      const Subcomplex& s = fam.at(si);
      if (s.is_void()) continue;
      for (std::size_t ri = 0; ri < m; ++ri) {
        const Subcomplex& r = fam.at(ri);
        if (r.is_void() || !r.subset_of(s)) continue;
        int128 c = c_chi_rel(s, r, static_cast<int>(k));
        if (c != 0) {
          total += static_cast<double>(c) * cumulative.values[si * m + ri];
        }
      }
    }
    mu[static_cast<std::size_t>(k)] = total;
  }
  return finish_two_routes(range, std::move(grouped), std::move(mu), tol);
}

}  // namespace nervecover
