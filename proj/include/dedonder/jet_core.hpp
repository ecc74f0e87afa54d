#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dedonder {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Largest multi-index length the fixed-capacity storage can hold. Generic
// sections need degree 2k+1, so k is capped at 6.
inline constexpr int kMaxIndexLength = 14;
inline constexpr int kMaxLagrangianOrder = 6;

class JetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JetConfig {
  int m = 1;
  int n = 1;
  int k = 1;

  int working_order() const { return 2 * k - 1; }
  void validate() const;
  bool operator==(const JetConfig&) const = default;
};

JetConfig make_config(int m, int n, int k);

// Non-decreasing sequence of 1-based base indices.
class MultiIndex {
 public:
  MultiIndex() = default;

  // Sorts and range-checks against m.
  static MultiIndex canonical(std::span<const int> indices, int m);
  static MultiIndex canonical(std::initializer_list<int> indices, int m);

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  int operator[](int pos) const { return idx_[pos]; }
  const std::uint8_t* begin() const { return idx_.data(); }
  const std::uint8_t* end() const { return idx_.data() + len_; }

  // canon(I ∪ {i})
  MultiIndex with(int i) const;
  // Removes the entry at position pos.
  MultiIndex without(int pos) const;
  // canon(I ∪ J)
  MultiIndex joined(const MultiIndex& other) const;
  int count(int i) const;
  std::vector<int> to_vector() const;

  // |I|! / prod count(v)!
  long multiplicity() const;

  std::string to_string() const;  // "1 1 2"

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.len_ == b.len_ && std::equal(a.begin(), a.end(), b.begin());
  }
  // Graded: by length, then lexicographic.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<std::uint8_t, kMaxIndexLength> idx_{};
  std::uint8_t len_ = 0;
};

MultiIndex canonicalize(std::span<const int> indices, int m);
long multiplicity(const MultiIndex& I);

enum class CoordKind : std::uint8_t { Base = 0, Field = 1, Jet = 2, Coefficient = 3 };

// Base(i), Field(a), Jet(a, I). The fourth kind, Coefficient(a, α), is not a
// jet coordinate: it names the undetermined Taylor coefficient c^a_α of a
// generic section and only ever appears inside Expr coefficients.
struct JetCoordinate {
  CoordKind kind = CoordKind::Base;
  std::uint8_t index = 1;  // i for Base, a otherwise
  MultiIndex multi;

  static JetCoordinate base(int i);
  static JetCoordinate field(int a);
  static JetCoordinate jet(int a, const MultiIndex& I);  // |I| = 0 gives field(a)
  static JetCoordinate coefficient(int a, const MultiIndex& alpha);

  bool is_base() const { return kind == CoordKind::Base; }
  bool is_field() const { return kind == CoordKind::Field; }
  bool is_jet() const { return kind == CoordKind::Jet; }
  bool is_coefficient() const { return kind == CoordKind::Coefficient; }
  // Field or Jet: a fibre coordinate over M.
  bool is_fibre() const { return kind == CoordKind::Field || kind == CoordKind::Jet; }

  // 0 for Base, Field and Coefficient; |I| for Jet.
  int order() const;

  // Same field index with I ∪ {i}; Field(a) maps to Jet(a, (i)).
  JetCoordinate raised(int i) const;
  // Multi-index of a fibre coordinate (empty for Field).
  const MultiIndex& fibre_index() const { return multi; }

  bool valid_for(const JetConfig& cfg) const;

  // x[i], y[a], z[a;i j], c[a;i j]
  std::string to_string() const;

  friend bool operator==(const JetCoordinate&, const JetCoordinate&) = default;
  friend std::strong_ordering operator<=>(const JetCoordinate& a, const JetCoordinate& b);
};

// Canonical multi-indices of exactly length l over [1, m], lexicographic.
std::vector<MultiIndex> enumerate_multi_indices(int m, int l);

// Base, Field, then Jet by (|I|, a, I).
std::vector<JetCoordinate> enumerate_coordinates(const JetConfig& cfg, int order);

// m + n * Σ_{l=0..order} C(m+l-1, l)
long coordinate_count(const JetConfig& cfg, int order);

// Fully symmetric part of a table over ordered tuples of length l, one entry
// per canonical multi-index. V must support +=, and * Rational.
template <class V>
std::map<MultiIndex, V> symmetrize_table(const std::map<std::vector<int>, V>& table, int m,
                                         int l) {
  std::map<MultiIndex, V> out;
  long fact = 1;
  for (int j = 2; j <= l; ++j) fact *= j;
  for (const MultiIndex& I : enumerate_multi_indices(m, l)) {
    std::vector<int> perm = I.to_vector();
    V acc{};
    // Sum over all l! orderings, repeated values included.
    std::vector<int> pos(l);
    for (int j = 0; j < l; ++j) pos[j] = j;
    do {
      std::vector<int> tuple(l);
      for (int j = 0; j < l; ++j) tuple[j] = perm[pos[j]];
      auto it = table.find(tuple);
      if (it == table.end()) throw JetError("symmetrize_table: missing tuple entry");
      acc += it->second;
    } while (std::next_permutation(pos.begin(), pos.end()));
    out.emplace(I, acc * make_rational(1, fact));
  }
  return out;
}

}  // namespace dedonder
