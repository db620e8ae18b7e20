#include "nervecover/subcomplex.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdint>
#include <set>
#include <vector>

#include "nervecover/errors.hpp"

using namespace nervecover;

namespace {

Subcomplex make(int n, std::initializer_list<FaceMask> faces) {
  return Subcomplex::from_faces(n, std::vector<FaceMask>(faces));
}

const Subcomplex full_triangle = make(3, {1, 2, 4, 3, 5, 6, 7});
const Subcomplex hollow_triangle = make(3, {1, 2, 4, 3, 5, 6});
const Subcomplex edge_chain = make(3, {1, 2, 3});

// Independent count oracle: filter every subset of the full Boolean lattice
// on 2^n elements (empty face included) for downward closure. Downsets of
// that lattice number exactly M(n); the all-absent subset plays the role of
// the void complex and every other downset contains the empty face.
std::vector<std::uint32_t> downward_closed_filter(int n) {
  const int elements = 1 << n;
  std::vector<std::uint32_t> kept;
  for (std::uint32_t set = 0; set < (1u << elements); ++set) {
    bool closed = true;
    for (int a = 0; a < elements && closed; ++a) {
      if (!(set & (1u << a))) continue;
      for (std::uint32_t b = a;; b = (b - 1) & static_cast<std::uint32_t>(a)) {
        if (!(set & (1u << b))) {
          closed = false;
          break;
        }
        if (b == 0) break;
      }
    }
    if (closed) kept.push_back(set);
  }
  return kept;
}

}  // namespace

TEST_CASE("family sizes match the Dedekind numbers") {
  CHECK(enumerate_subcomplexes(1).size() == 3);
  CHECK(enumerate_subcomplexes(2).size() == 6);
  CHECK(enumerate_subcomplexes(3).size() == 20);
  CHECK(enumerate_subcomplexes(4).size() == 168);
  CHECK(enumerate_subcomplexes(5).size() == 7581);
}

TEST_CASE("exhaustive filter oracle reproduces the family for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    const SubcomplexFamily& family = enumerate_subcomplexes(n);
    const std::vector<std::uint32_t> filtered = downward_closed_filter(n);
    REQUIRE(filtered.size() == family.size());
    std::set<std::size_t> seen;
    for (std::uint32_t set : filtered) {
      Subcomplex s = (set == 0)
                         ? Subcomplex::void_complex(n)
                         : Subcomplex::from_bits_unchecked(n, set >> 1);
      REQUIRE((set == 0 || (set & 1u) != 0));  // nonvoid downsets contain the empty face
      seen.insert(family.index_of(s));
    }
    CHECK(seen.size() == family.size());
  }
}

TEST_CASE("enumeration range errors") {
  CHECK_THROWS_AS(enumerate_subcomplexes(0), config_error);
  CHECK_THROWS_AS(enumerate_subcomplexes(7), config_error);
}

TEST_CASE("canonical order starts with the degenerate values and is strict") {
  for (int n = 1; n <= 4; ++n) {
    const SubcomplexFamily& family = enumerate_subcomplexes(n);
    CHECK(family.at(0).is_empty_complex());
    CHECK(family.at(1).is_void());
    for (std::size_t i = 0; i + 1 < family.size(); ++i) {
      CHECK(canonical_less(family.at(i), family.at(i + 1)));
      CHECK_FALSE(canonical_less(family.at(i + 1), family.at(i)));
    }
  }
}

TEST_CASE("face order is by dimension then vertex list") {
  // {1,4} (mask 9) precedes {2,3} (mask 6) although 9 > 6 numerically.
  CHECK(face_less(0b1001, 0b0110));
  CHECK_FALSE(face_less(0b0110, 0b1001));
  CHECK(face_less(0b100, 0b011));  // vertex {3} before edge {1,2}
  CHECK(face_label(0b101) == "13");
}

TEST_CASE("antichain roundtrip over every non-void subcomplex") {
  for (int n = 1; n <= 4; ++n) {
    for (const Subcomplex& s : enumerate_subcomplexes(n).all()) {
      if (s.is_void()) continue;
      CHECK(antichain_to_chain(chain_to_antichain(s), n) == s);
    }
  }
}

TEST_CASE("void complex behavior is pinned") {
  const Subcomplex v = Subcomplex::void_complex(3);
  const Subcomplex empty = Subcomplex::empty(3);
  const Subcomplex vertex = make(3, {1});
  CHECK(v.is_void());
  CHECK(v.face_count_total() == 0);
  CHECK(subcomplex_to_text(v) == "void");
  CHECK(parse_subcomplex(3, "void") == v);
  // Containment: empty <= void <= void, nothing else relates to void.
  CHECK(empty.subset_of(v));
  CHECK(v.subset_of(v));
  CHECK_FALSE(v.subset_of(empty));
  CHECK_FALSE(v.subset_of(vertex));
  CHECK_FALSE(vertex.subset_of(v));
  // The roundtrip exclusion: void has no face-list form, so the antichain
  // image collapses to the empty complex.
  CHECK(chain_to_antichain(v).empty());
  CHECK(antichain_to_chain(chain_to_antichain(v), 3) == empty);
  CHECK(euler_char(v) == 0);
}

TEST_CASE("chain_to_antichain examples") {
  CHECK(chain_to_antichain(full_triangle) == std::vector<FaceMask>{7});
  CHECK(chain_to_antichain(Subcomplex::empty(3)).empty());
  CHECK(chain_to_antichain(hollow_triangle) == std::vector<FaceMask>({3, 5, 6}));
}

TEST_CASE("antichain_to_chain examples and validation") {
  CHECK(antichain_to_chain({7}, 3) == full_triangle);
  CHECK(antichain_to_chain({}, 3) == Subcomplex::empty(3));
  CHECK(antichain_to_chain({3, 4}, 3) == make(3, {1, 2, 3, 4}));
  CHECK_THROWS_AS(antichain_to_chain({3, 1}, 3), config_error);  // {1,2} > {1}
  CHECK_THROWS_AS(antichain_to_chain({8}, 3), config_error);     // out of range
}

TEST_CASE("from_faces validates downward closure") {
  CHECK_THROWS_AS(make(3, {3}), config_error);         // edge without vertices
  CHECK_THROWS_AS(make(3, {1, 3}), config_error);      // missing vertex 2
  CHECK_NOTHROW(make(3, {1, 2, 3}));
}

TEST_CASE("euler characteristic") {
  CHECK(euler_char(Subcomplex::empty(3)) == 0);
  CHECK(euler_char(full_triangle) == 1);
  CHECK(euler_char(hollow_triangle) == 0);
  for (int n = 1; n <= 4; ++n) {
    for (const Subcomplex& s : enumerate_subcomplexes(n).all()) {
      int alt = 0;
      for (int d = 0; d < n; ++d) {
        alt += (d % 2 == 0 ? 1 : -1) * face_count(s, d);
      }
      CHECK(euler_char(s) == alt);
    }
  }
}

TEST_CASE("relative euler characteristic") {
  CHECK(relative_euler_char(full_triangle, Subcomplex::empty(3)) == 1);
  CHECK(relative_euler_char(edge_chain, make(3, {1, 2})) == -1);
  CHECK(relative_euler_char(hollow_triangle, hollow_triangle) == 0);
  // Non-subcomplex pairs take the defined value 0, not an error.
  CHECK(relative_euler_char(make(3, {1}), make(3, {2})) == 0);
}

TEST_CASE("face_count examples") {
  CHECK(face_count(hollow_triangle, 1) == 3);
  CHECK(face_count(hollow_triangle, 2) == 0);
  CHECK(face_count(full_triangle, 0) == 3);
}

TEST_CASE("face profile examples and consistency") {
  const FaceProfile full = face_profile(full_triangle);
  CHECK(full.top_even == 1);
  CHECK(full.top_odd == 0);
  CHECK(full.low_even == 3);
  CHECK(full.low_odd == 3);
  CHECK(full.top == 1);
  CHECK(full.low == 6);
  CHECK(full.total == 7);

  const FaceProfile hollow = face_profile(hollow_triangle);
  CHECK(hollow.top_even == 0);
  CHECK(hollow.top_odd == 3);
  CHECK(hollow.low_even == 3);
  CHECK(hollow.low_odd == 0);
  CHECK(hollow.top == 3);
  CHECK(hollow.low == 3);
  CHECK(hollow.total == 6);

  const FaceProfile vertex = face_profile(make(3, {1}));
  CHECK(vertex.top_even == 1);
  CHECK(vertex.top_odd == 0);
  CHECK(vertex.low == 0);
  CHECK(vertex.total == 1);

  for (int n = 1; n <= 4; ++n) {
    for (const Subcomplex& s : enumerate_subcomplexes(n).all()) {
      const FaceProfile p = face_profile(s);
      CHECK(p.top_even + p.top_odd == p.top);
      CHECK(p.low_even + p.low_odd == p.low);
      CHECK(p.top + p.low == p.total);
      CHECK(p.total == s.face_count_total());
      CHECK(p.top == static_cast<int>(chain_to_antichain(s).size()));
    }
  }
}

TEST_CASE("text form and parse roundtrip") {
  CHECK(subcomplex_to_text(hollow_triangle) == "1+2+3+12+13+23");
  CHECK(subcomplex_to_text(Subcomplex::empty(3)) == "0");
  for (const Subcomplex& s : enumerate_subcomplexes(3).all()) {
    CHECK(parse_subcomplex(3, subcomplex_to_text(s)) == s);
  }
  CHECK_THROWS_AS(parse_subcomplex(3, "1+4"), io_error);
  CHECK_THROWS_AS(parse_subcomplex(3, "1++2"), io_error);
  CHECK_THROWS_AS(parse_subcomplex(3, "12"), config_error);  // not closed
}

TEST_CASE("index_of is a bijection onto ordinals") {
  for (int n = 1; n <= 4; ++n) {
    const SubcomplexFamily& family = enumerate_subcomplexes(n);
    for (std::size_t i = 0; i < family.size(); ++i) {
      CHECK(family.index_of(family.at(i)) == i);
    }
  }
}
