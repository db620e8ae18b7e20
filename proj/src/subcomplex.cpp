#include "nervecover/subcomplex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <mutex>

#include "nervecover/errors.hpp"

namespace nervecover {

int face_dimension(FaceMask m) { return std::popcount(m) - 1; }

bool face_less(FaceMask a, FaceMask b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  // Equal size: compare ascending vertex lists, i.e. lowest set bits first.
  while (a != 0 && b != 0) {
    const FaceMask la = a & (~a + 1);
    const FaceMask lb = b & (~b + 1);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

std::string face_label(FaceMask m) {
  std::string out;
  for (int v = 1; m != 0; ++v, m >>= 1) {
    if (m & 1u) out += static_cast<char>('0' + v);
  }
  return out;
}

namespace {

void check_n(int n) {
  if (n < 1 || n > Subcomplex::max_vertices) {
    throw config_error("vertex count n must be in [1, " +
                       std::to_string(Subcomplex::max_vertices) + "], got " +
                       std::to_string(n));
  }
}

std::uint64_t face_bit(FaceMask m) { return std::uint64_t{1} << (m - 1); }

}  // namespace

Subcomplex Subcomplex::empty(int n) {
  check_n(n);
  Subcomplex s;
  s.n_ = static_cast<std::uint8_t>(n);
  return s;
}

Subcomplex Subcomplex::void_complex(int n) {
  check_n(n);
  Subcomplex s;
  s.n_ = static_cast<std::uint8_t>(n);
  s.void_ = true;
  return s;
}

Subcomplex Subcomplex::from_faces(int n, const std::vector<FaceMask>& faces) {
  check_n(n);
  const FaceMask vertex_bound = (FaceMask{1} << n);
  std::uint64_t bits = 0;
  for (FaceMask m : faces) {
    if (m == 0 || m >= vertex_bound) {
      throw config_error("face mask " + std::to_string(m) +
                         " out of range for n=" + std::to_string(n));
    }
    bits |= face_bit(m);
  }
  for (FaceMask m = 1; m < vertex_bound; ++m) {
    if (!(bits & face_bit(m))) continue;
    // Every facet (submask one vertex smaller) must be present; this implies
    // closure under all submasks by induction.
    for (FaceMask v = m; v != 0; v &= v - 1) {
      const FaceMask facet = m & ~(v & (~v + 1));
      if (facet != 0 && !(bits & face_bit(facet))) {
        throw config_error("face set is not downward-closed: face " +
                           face_label(m) + " present but subface " +
                           face_label(facet) + " missing");
      }
    }
  }
  Subcomplex s;
  s.n_ = static_cast<std::uint8_t>(n);
  s.bits_ = bits;
  return s;
}

Subcomplex Subcomplex::from_bits_unchecked(int n, std::uint64_t bits) {
  Subcomplex s;
  s.n_ = static_cast<std::uint8_t>(n);
  s.bits_ = bits;
  return s;
}

int Subcomplex::face_count_total() const { return std::popcount(bits_); }

bool Subcomplex::contains(FaceMask m) const {
  return m != 0 && !void_ && (bits_ & face_bit(m)) != 0;
}

std::vector<FaceMask> Subcomplex::faces() const {
  std::vector<FaceMask> out;
  out.reserve(static_cast<std::size_t>(std::popcount(bits_)));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<FaceMask>(std::countr_zero(b)) + 1);
  }
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

bool Subcomplex::subset_of(const Subcomplex& t) const {
  if (void_) return t.void_;
  if (bits_ == 0) return true;
  if (t.void_) return false;
  return (bits_ & ~t.bits_) == 0;
}

bool canonical_less(const Subcomplex& a, const Subcomplex& b) {
  const int ca = a.is_void() ? 0 : a.face_count_total();
  const int cb = b.is_void() ? 0 : b.face_count_total();
  if (ca != cb) return ca < cb;
  if (a.is_void() != b.is_void()) return b.is_void();  // empty before void
  const std::vector<FaceMask> fa = a.faces();
  const std::vector<FaceMask> fb = b.faces();
  return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(),
                                      fb.end(), face_less);
}

namespace {

// An enumerated complex carries its face bits twice: in raw mask positions
// and remapped so that bit i means "order[i] present". The remapped form
// makes the canonical comparison O(1).
struct enum_rec {
  std::uint64_t raw = 0;
  std::uint64_t remapped = 0;
};

// Depth-first enumeration of downward-closed face sets. Faces are visited in
// ascending dimension; a face may be included only when all of its facets
// already are, so every leaf is a valid subcomplex and none is missed.
void enumerate_downsets(const std::vector<FaceMask>& order,
                        const std::vector<std::uint64_t>& facet_bits,
                        std::size_t idx, std::uint64_t raw,
                        std::uint64_t remapped, std::vector<enum_rec>& out) {
  if (idx == order.size()) {
    out.push_back({raw, remapped});
    return;
  }
  enumerate_downsets(order, facet_bits, idx + 1, raw, remapped, out);
  if ((facet_bits[idx] & ~raw) == 0) {
    enumerate_downsets(order, facet_bits, idx + 1, raw | face_bit(order[idx]),
                       remapped | (std::uint64_t{1} << idx), out);
  }
}

// canonical_less evaluated on remapped bits: by face count, then by which
// side owns the lowest differing canonical face (owning it puts a smaller
// face at the first differing list position, so that side sorts first).
// canonical_less itself stays the reference implementation; sorting M(6) =
// 7.8 million complexes with it is infeasible because it materializes face
// lists per comparison.
bool remapped_less(const enum_rec& a, const enum_rec& b) {
  const int pa = std::popcount(a.remapped);
  const int pb = std::popcount(b.remapped);
  if (pa != pb) return pa < pb;
  const std::uint64_t diff = a.remapped ^ b.remapped;
  if (diff == 0) return false;
  return (a.remapped & (diff & (~diff + 1))) != 0;
}

}  // namespace

SubcomplexFamily::SubcomplexFamily(int n) : n_(n) {
  check_n(n);
  const FaceMask vertex_bound = (FaceMask{1} << n);
  std::vector<FaceMask> order;
  for (FaceMask m = 1; m < vertex_bound; ++m) order.push_back(m);
  std::sort(order.begin(), order.end(), face_less);
  std::vector<std::uint64_t> facet_bits(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (FaceMask v = order[i]; v != 0; v &= v - 1) {
      const FaceMask facet = order[i] & ~(v & (~v + 1));
      if (facet != 0) facet_bits[i] |= face_bit(facet);
    }
  }
  std::vector<enum_rec> recs;
  enumerate_downsets(order, facet_bits, 0, 0, 0, recs);
  std::sort(recs.begin(), recs.end(), remapped_less);

  all_.reserve(recs.size() + 1);
  for (const enum_rec& r : recs) {
    all_.push_back(Subcomplex::from_bits_unchecked(n, r.raw));
  }
  // the void complex sits right after the empty complex in canonical order
  all_.insert(all_.begin() + 1, Subcomplex::void_complex(n));

  index_.reserve(all_.size());
  for (std::size_t i = 0; i < all_.size(); ++i) {
    index_.emplace_back(all_[i].key(), static_cast<std::uint32_t>(i));
  }
  std::sort(index_.begin(), index_.end());
}

std::size_t SubcomplexFamily::index_of(const Subcomplex& s) const {
  const std::uint64_t key = s.key();
  auto it = std::lower_bound(
      index_.begin(), index_.end(), key,
      [](const std::pair<std::uint64_t, std::uint32_t>& e, std::uint64_t k) {
        return e.first < k;
      });
  if (it == index_.end() || it->first != key || s.n() != n_) {
    throw config_error("subcomplex " + subcomplex_to_text(s) +
                       " is not a member of the family on n=" +
                       std::to_string(n_));
  }
  return it->second;
}

const SubcomplexFamily& enumerate_subcomplexes(int n) {
  check_n(n);
  static std::array<std::unique_ptr<SubcomplexFamily>, Subcomplex::max_vertices + 1> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (!cache[static_cast<std::size_t>(n)]) {
    cache[static_cast<std::size_t>(n)] = std::make_unique<SubcomplexFamily>(n);
  }
  return *cache[static_cast<std::size_t>(n)];
}

std::vector<FaceMask> chain_to_antichain(const Subcomplex& s) {
  std::vector<FaceMask> top;
  const std::vector<FaceMask> fs = s.faces();
  for (FaceMask m : fs) {
    bool maximal = true;
    for (FaceMask other : fs) {
      if (other != m && (m & ~other) == 0) {
        maximal = false;
        break;
      }
    }
    if (maximal) top.push_back(m);
  }
  return top;
}

Subcomplex antichain_to_chain(const std::vector<FaceMask>& faces, int n) {
  check_n(n);
  const FaceMask vertex_bound = (FaceMask{1} << n);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i] == 0 || faces[i] >= vertex_bound) {
      throw config_error("face mask " + std::to_string(faces[i]) +
                         " out of range for n=" + std::to_string(n));
    }
    for (std::size_t j = 0; j < faces.size(); ++j) {
      if (i != j && (faces[i] & ~faces[j]) == 0) {
        throw config_error("antichain input contains comparable faces " +
                           face_label(faces[i]) + " and " +
                           face_label(faces[j]));
      }
    }
  }
  std::uint64_t bits = 0;
  for (FaceMask top : faces) {
    // All nonzero submasks of top.
    for (FaceMask sub = top; sub != 0; sub = (sub - 1) & top) {
      bits |= face_bit(sub);
    }
  }
  return Subcomplex::from_bits_unchecked(n, bits);
}

int euler_char(const Subcomplex& s) {
  int chi = 0;
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
    const FaceMask m = static_cast<FaceMask>(std::countr_zero(b)) + 1;
    chi += (std::popcount(m) % 2 == 1) ? 1 : -1;
  }
  return chi;
}

int relative_euler_char(const Subcomplex& s, const Subcomplex& r) {
  if (!r.subset_of(s)) return 0;
  return euler_char(s) - euler_char(r);
}

int face_count(const Subcomplex& s, int d) {
  int count = 0;
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
    const FaceMask m = static_cast<FaceMask>(std::countr_zero(b)) + 1;
    if (std::popcount(m) == d + 1) ++count;
  }
  return count;
}

FaceProfile face_profile(const Subcomplex& s) {
  FaceProfile p;
  std::uint64_t top_bits = 0;
  for (FaceMask m : chain_to_antichain(s)) top_bits |= face_bit(m);
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
    const FaceMask m = static_cast<FaceMask>(std::countr_zero(b)) + 1;
    const bool even_dim = (std::popcount(m) % 2 == 1);
    const bool top = (top_bits & face_bit(m)) != 0;
    if (top) {
      ++p.top;
      (even_dim ? p.top_even : p.top_odd) += 1;
    } else {
      ++p.low;
      (even_dim ? p.low_even : p.low_odd) += 1;
    }
    ++p.total;
  }
  return p;
}

std::string subcomplex_to_text(const Subcomplex& s) {
  if (s.is_void()) return "void";
  if (s.is_empty_complex()) return "0";
  std::string out;
  for (FaceMask m : s.faces()) {
    if (!out.empty()) out += '+';
    out += face_label(m);
  }
  return out;
}

Subcomplex parse_subcomplex(int n, std::string_view text) {
  check_n(n);
  if (text == "void") return Subcomplex::void_complex(n);
  if (text == "0" || text.empty()) return Subcomplex::empty(n);
  std::vector<FaceMask> faces;
  FaceMask current = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      if (current == 0) {
        throw io_error("malformed subcomplex text: " + std::string(text));
      }
      faces.push_back(current);
      current = 0;
      continue;
    }
    const char c = text[i];
    if (c < '1' || c > '0' + n) {
      throw io_error("subcomplex text contains vertex out of range: " +
                     std::string(text));
    }
    current |= FaceMask{1} << (c - '1');
  }
  return Subcomplex::from_faces(n, faces);
}

}  // namespace nervecover
