#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nervecover {

// A nonempty face on vertex labels 1..n: bit i-1 set means vertex i belongs
// to the face. The empty face is never a FaceMask; the empty complex is a
// distinct Subcomplex value.
using FaceMask = std::uint32_t;

int face_dimension(FaceMask m);

// Canonical face order: by dimension, then lexicographically by the ascending
// vertex list. Note this differs from numeric mask order: {1,4} precedes
// {2,3} because vertex 1 < vertex 2, while the masks compare the other way.
bool face_less(FaceMask a, FaceMask b);

// Vertex labels concatenated in ascending order, e.g. mask {1,3} -> "13".
std::string face_label(FaceMask m);

// The seven face counts of a complex split by maximal/lower and by parity of
// dimension: top = maximal (antichain) faces, low = the rest, even/odd by
// face dimension.
struct FaceProfile {
  int top_even = 0;
  int top_odd = 0;
  int low_even = 0;
  int low_odd = 0;
  int top = 0;
  int low = 0;
  int total = 0;
};

struct IntegerRange {
  long long lo = 0;
  long long hi = 0;
  long long width() const { return hi - lo; }
};

// A labeled subcomplex of the full simplex on n vertices, stored as a bitset
// over all 2^n - 1 possible faces (bit m-1 corresponds to FaceMask m) and
// kept downward-closed. Two degenerate values exist: the empty complex
// (no faces; global bottom of the containment order; prints as "0") and the
// adjoined void complex (the family's extra point, whose only proper subset
// is the empty complex; prints as "void"). Values are immutable.
class Subcomplex {
 public:
  static constexpr int max_vertices = 6;

  Subcomplex() = default;

  static Subcomplex empty(int n);
  static Subcomplex void_complex(int n);
  // Validates that every nonzero submask of every face is present.
  static Subcomplex from_faces(int n, const std::vector<FaceMask>& faces);
  // Internal fast path: bits must already describe a downward-closed set.
  static Subcomplex from_bits_unchecked(int n, std::uint64_t bits);

  int n() const { return n_; }
  bool is_void() const { return void_; }
  bool is_empty_complex() const { return !void_ && bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  int face_count_total() const;
  bool contains(FaceMask m) const;
  std::vector<FaceMask> faces() const;  // in canonical face order

  // Containment order: empty <= everything (including void); void's only
  // superset is void; honest complexes compare by face-set inclusion.
  bool subset_of(const Subcomplex& t) const;

  // Unique key for hashing; distinguishes void from empty.
  std::uint64_t key() const { return void_ ? ~std::uint64_t{0} : bits_; }

  bool operator==(const Subcomplex& o) const {
    return n_ == o.n_ && void_ == o.void_ && bits_ == o.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t n_ = 0;
  bool void_ = false;
};

// Canonical ordering: by face count, then lexicographically by the canonical
// face list; among the two zero-face values the empty complex precedes void.
bool canonical_less(const Subcomplex& a, const Subcomplex& b);

// Every subcomplex on n vertices in canonical order. Size equals the
// Dedekind number M(n). Built once per n and shared read-only.
class SubcomplexFamily {
 public:
  explicit SubcomplexFamily(int n);

  int n() const { return n_; }
  std::size_t size() const { return all_.size(); }
  const Subcomplex& at(std::size_t ordinal) const { return all_[ordinal]; }
  const std::vector<Subcomplex>& all() const { return all_; }
  std::size_t index_of(const Subcomplex& s) const;  // throws config_error if absent

 private:
  int n_;
  std::vector<Subcomplex> all_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> index_;  // sorted by key
};

// Cached family; n must be in [1, 6].
const SubcomplexFamily& enumerate_subcomplexes(int n);

std::vector<FaceMask> chain_to_antichain(const Subcomplex& s);
Subcomplex antichain_to_chain(const std::vector<FaceMask>& faces, int n);

int euler_char(const Subcomplex& s);
// chi(s) - chi(r) when r is a subcomplex of s; 0 otherwise by convention.
int relative_euler_char(const Subcomplex& s, const Subcomplex& r);
int face_count(const Subcomplex& s, int d);
FaceProfile face_profile(const Subcomplex& s);

// Text form used by the CLI and CSV output: faces joined by '+', e.g.
// "1+2+3+12+13+23"; the empty complex is "0", the void complex "void".
std::string subcomplex_to_text(const Subcomplex& s);
Subcomplex parse_subcomplex(int n, std::string_view text);

}  // namespace nervecover
