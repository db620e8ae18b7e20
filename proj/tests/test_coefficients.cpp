#include "nervecover/coefficients.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "nervecover/errors.hpp"
#include "nervecover/subcomplex.hpp"

using namespace nervecover;

namespace {

Subcomplex make(int n, std::initializer_list<FaceMask> faces) {
  return Subcomplex::from_faces(n, std::vector<FaceMask>(faces));
}

int128 ipow(long long base, int k) {
  int128 out = 1;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace

TEST_CASE("checked arithmetic helpers") {
  CHECK(int128_to_string(0) == "0");
  CHECK(int128_to_string(-1) == "-1");
  CHECK(int128_to_string(int128{1} << 100) == "1267650600228229401496703205376");
  CHECK(binomial(63, 31) == binomial(63, 32));
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 7) == 0);
  CHECK(checked_pow(0, 0) == 1);
  CHECK(checked_pow(-2, 3) == -8);
  CHECK_THROWS_AS(checked_pow(31, 40), config_error);
  CHECK_THROWS_AS(checked_mul(int128{1} << 100, int128{1} << 30), config_error);
}

TEST_CASE("closed forms match the inclusion-exclusion oracle") {
  for (int n = 1; n <= 4; ++n) {
    for (const Subcomplex& s : enumerate_subcomplexes(n).all()) {
      for (int k = 0; k <= n + 2; ++k) {
        CHECK(c_chi(s, k) == c_bruteforce(Invariant::chi, s, k));
        for (int d = 0; d < n; ++d) {
          CHECK(c_face_count(s, d, k) ==
                c_bruteforce(Invariant::face_count, s, k, d));
        }
      }
    }
  }
}

TEST_CASE("pair closed form matches the pair oracle on n = 3") {
  const SubcomplexFamily& family = enumerate_subcomplexes(3);
  for (const Subcomplex& s : family.all()) {
    for (const Subcomplex& r : family.all()) {
      if (!r.subset_of(s)) continue;
      for (int k = 0; k <= 5; ++k) {
        CHECK(c_chi_rel(s, r, k) == c_bruteforce(Invariant::chi_rel, s, r, k));
      }
    }
  }
}

// The defining property of the expansion: summing coefficients over all
// subcomplexes of a realization reproduces the invariant's power. This is
// independent of both formula routes.
TEST_CASE("reconstruction over every realization") {
  for (int n = 1; n <= 4; ++n) {
    const SubcomplexFamily& family = enumerate_subcomplexes(n);
    for (const Subcomplex& t : family.all()) {
      for (int k = 0; k <= n + 2; ++k) {
        int128 chi_sum = 0;
        int128 f1_sum = 0;
        for (const Subcomplex& s : family.all()) {
          if (!s.subset_of(t)) continue;
          chi_sum += c_chi(s, k);
          f1_sum += c_face_count(s, 1, k);
        }
        CHECK(chi_sum == ipow(euler_char(t), k));
        CHECK(f1_sum == ipow(face_count(t, 1), k));
      }
    }
  }
}

TEST_CASE("pair reconstruction over every valid pair realization on n = 3") {
  const SubcomplexFamily& family = enumerate_subcomplexes(3);
  for (const Subcomplex& big : family.all()) {
    for (const Subcomplex& small : family.all()) {
      if (!small.subset_of(big)) continue;
      for (int k = 0; k <= 4; ++k) {
        int128 sum = 0;
        for (const Subcomplex& s : family.all()) {
          if (!s.subset_of(big)) continue;
          for (const Subcomplex& r : family.all()) {
            if (!r.subset_of(small) || !r.subset_of(s)) continue;
            sum += c_chi_rel(s, r, k);
          }
        }
        CHECK(sum == ipow(relative_euler_char(big, small), k));
      }
    }
  }
}

// One representative per orbit type on n = 3, with the printed coefficient
// polynomials in k: vertex 1; two vertices -2+2^k; three vertices
// 3-3*2^k+3^k; edge chain 1-2^k; edge chain plus vertex -1+2^{k+1}-3^k;
// two-edge chain 1-2^{k+1}+3^k; hollow triangle -3+3*2^k-3^k; full chain +1.
TEST_CASE("chi coefficient table for n = 3 matches the printed regression values") {
  const auto two_to = [](int k) { return ipow(2, k); };
  const auto three_to = [](int k) { return ipow(3, k); };
  const Subcomplex two_vertices = make(3, {1, 2});
  const Subcomplex three_vertices = make(3, {1, 2, 4});
  const Subcomplex edge = make(3, {1, 2, 3});
  const Subcomplex edge_plus_vertex = make(3, {1, 2, 3, 4});
  const Subcomplex two_edges = make(3, {1, 2, 4, 3, 5});
  const Subcomplex hollow = make(3, {1, 2, 4, 3, 5, 6});
  const Subcomplex full = make(3, {1, 2, 4, 3, 5, 6, 7});
  for (int k = 1; k <= 3; ++k) {
    CHECK(c_chi(make(3, {1}), k) == 1);
    CHECK(c_chi(two_vertices, k) == -2 + two_to(k));
    CHECK(c_chi(three_vertices, k) == 3 - 3 * two_to(k) + three_to(k));
    CHECK(c_chi(edge, k) == 1 - two_to(k));
    CHECK(c_chi(edge_plus_vertex, k) == -1 + 2 * two_to(k) - three_to(k));
    CHECK(c_chi(two_edges, k) == 1 - 2 * two_to(k) + three_to(k));
    CHECK(c_chi(hollow, k) == -3 + 3 * two_to(k) - three_to(k));
    CHECK(c_chi(full, k) == 1);
  }
  // Spot values quoted with the table: k=2 on two vertices, k=3 on an edge
  // chain, k=3 on the hollow triangle.
  CHECK(c_chi(two_vertices, 2) == 2);
  CHECK(c_chi(edge, 3) == -7);
  CHECK(c_chi(hollow, 3) == -6);
}

TEST_CASE("degenerate coefficient values") {
  const Subcomplex empty = Subcomplex::empty(3);
  const Subcomplex v = Subcomplex::void_complex(3);
  CHECK(c_chi(empty, 0) == 1);
  CHECK(c_chi(empty, 1) == 0);
  CHECK(c_chi(empty, 5) == 0);
  for (int k = 0; k <= 5; ++k) {
    CHECK(c_chi(v, k) == 0);
    CHECK(c_face_count(v, 1, k) == 0);
    CHECK(c_bruteforce(Invariant::chi, v, k) == 0);
  }
  // k=0 on nonempty complexes: alternating sum of ones vanishes.
  for (const Subcomplex& s : enumerate_subcomplexes(3).all()) {
    if (s.is_empty_complex()) continue;
    CHECK(c_chi(s, 0) == 0);
    CHECK(c_bruteforce(Invariant::chi, s, 0) == 0);
  }
}

TEST_CASE("true vanishing threshold is the antichain size") {
  for (const Subcomplex& s : enumerate_subcomplexes(4).all()) {
    if (s.is_void()) continue;
    const int r_top = static_cast<int>(chain_to_antichain(s).size());
    for (int k = 0; k < r_top; ++k) {
      CHECK(c_chi(s, k) == 0);
    }
  }
  // The full triangle chain has r(s) = 7 but r_top = 1: its k = 3
  // coefficient is 1 (the printed "+Fabcxyz" regression value), not 0.
  const Subcomplex full = make(3, {1, 2, 4, 3, 5, 6, 7});
  CHECK(c_chi(full, 3) == 1);
}

TEST_CASE("face count coefficient gate and values") {
  const Subcomplex one_edge = make(3, {1, 2, 3});
  CHECK(c_face_count(one_edge, 1, 1) == 1);
  const Subcomplex two_edges = make(3, {1, 2, 4, 3, 5});
  CHECK(c_face_count(two_edges, 1, 2) == 2);
  // Mixed-dimension antichain vanishes.
  const Subcomplex edge_plus_vertex = make(3, {1, 2, 3, 4});
  CHECK(c_face_count(edge_plus_vertex, 1, 3) == 0);
  CHECK(c_face_count(edge_plus_vertex, 0, 3) == 0);
  // Wrong dimension vanishes.
  CHECK(c_face_count(one_edge, 0, 2) == 0);
  CHECK(c_face_count(one_edge, 2, 2) == 0);
}

TEST_CASE("relative coefficients reduce and take pinned values") {
  const SubcomplexFamily& family = enumerate_subcomplexes(3);
  const Subcomplex empty = Subcomplex::empty(3);
  for (const Subcomplex& s : family.all()) {
    if (s.is_void()) continue;
    for (int k = 0; k <= 6; ++k) {
      CHECK(c_chi_rel(s, empty, k) == c_chi(s, k));
    }
  }
  CHECK(c_chi_rel(empty, empty, 0) == 1);
  const Subcomplex vertex = make(3, {1});
  for (int k = 1; k <= 5; ++k) {
    CHECK(c_chi_rel(vertex, vertex, k) == -1);
  }
  // Invalid pairs carry no coefficient.
  CHECK(c_chi_rel(make(3, {1}), make(3, {2}), 2) == 0);
}

TEST_CASE("coefficient tables align with the family and memoize") {
  const auto table = build_coefficient_table(3, Invariant::chi, 2);
  const SubcomplexFamily& family = enumerate_subcomplexes(3);
  REQUIRE(table->entries.size() == family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    CHECK(table->entries[i] == c_chi(family.at(i), 2));
  }
  CHECK(build_coefficient_table(3, Invariant::chi, 2).get() == table.get());
  CHECK_THROWS_AS(build_coefficient_table(3, Invariant::chi_rel, 2), config_error);
}
