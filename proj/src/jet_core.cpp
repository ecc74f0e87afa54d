#include "dedonder/jet_core.hpp"

#include <sstream>

namespace dedonder {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, 1);
  r /= Rational(den, 1);
  return r;
}

void JetConfig::validate() const {
  if (m < 1 || n < 1 || k < 1) throw JetError("JetConfig requires m, n, k >= 1");
  if (m > 255 || n > 255) throw JetError("JetConfig: m and n must be below 256");
  if (k > kMaxLagrangianOrder)
    throw JetError("JetConfig: k = " + std::to_string(k) + " exceeds supported maximum " +
                   std::to_string(kMaxLagrangianOrder));
}

JetConfig make_config(int m, int n, int k) {
  JetConfig cfg{m, n, k};
  cfg.validate();
  return cfg;
}

MultiIndex MultiIndex::canonical(std::span<const int> indices, int m) {
  if (indices.size() > static_cast<std::size_t>(kMaxIndexLength))
    throw JetError("multi-index longer than " + std::to_string(kMaxIndexLength));
  MultiIndex out;
  for (int v : indices) {
    if (v < 1 || v > m)
      throw JetError("base index " + std::to_string(v) + " out of range [1, " +
                     std::to_string(m) + "]");
    out.idx_[out.len_++] = static_cast<std::uint8_t>(v);
  }
  std::sort(out.idx_.begin(), out.idx_.begin() + out.len_);
  return out;
}

MultiIndex MultiIndex::canonical(std::initializer_list<int> indices, int m) {
  return canonical(std::span<const int>(indices.begin(), indices.size()), m);
}

MultiIndex MultiIndex::with(int i) const {
  if (len_ >= kMaxIndexLength) throw JetError("multi-index capacity exceeded");
  MultiIndex out;
  int j = 0;
  bool placed = false;
  for (int p = 0; p < len_; ++p) {
    if (!placed && i < idx_[p]) {
      out.idx_[j++] = static_cast<std::uint8_t>(i);
      placed = true;
    }
    out.idx_[j++] = idx_[p];
  }
  if (!placed) out.idx_[j++] = static_cast<std::uint8_t>(i);
  out.len_ = static_cast<std::uint8_t>(j);
  return out;
}

MultiIndex MultiIndex::without(int pos) const {
  MultiIndex out;
  for (int p = 0; p < len_; ++p)
    if (p != pos) out.idx_[out.len_++] = idx_[p];
  return out;
}

MultiIndex MultiIndex::joined(const MultiIndex& other) const {
  MultiIndex out = *this;
  for (int v : other) out = out.with(v);
  return out;
}

int MultiIndex::count(int i) const {
  return static_cast<int>(std::count(begin(), end(), static_cast<std::uint8_t>(i)));
}

std::vector<int> MultiIndex::to_vector() const { return std::vector<int>(begin(), end()); }

long MultiIndex::multiplicity() const {
  // Multinomial built incrementally to stay within long for |I| <= 14.
  long result = 1;
  int seen = 0;
  int p = 0;
  while (p < len_) {
    int q = p;
    while (q < len_ && idx_[q] == idx_[p]) ++q;
    for (int r = 1; r <= q - p; ++r) {
      ++seen;
      result = result * seen / r;
    }
    p = q;
  }
  return result;
}

std::string MultiIndex::to_string() const {
  std::string s;
  for (int p = 0; p < len_; ++p) {
    if (p) s += ' ';
    s += std::to_string(idx_[p]);
  }
  return s;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (a.len_ != b.len_) return a.len_ <=> b.len_;
  for (int p = 0; p < a.len_; ++p)
    if (a.idx_[p] != b.idx_[p]) return a.idx_[p] <=> b.idx_[p];
  return std::strong_ordering::equal;
}

MultiIndex canonicalize(std::span<const int> indices, int m) {
  return MultiIndex::canonical(indices, m);
}

long multiplicity(const MultiIndex& I) { return I.multiplicity(); }

JetCoordinate JetCoordinate::base(int i) {
  if (i < 1 || i > 255) throw JetError("base index out of range");
  return {CoordKind::Base, static_cast<std::uint8_t>(i), {}};
}

JetCoordinate JetCoordinate::field(int a) {
  if (a < 1 || a > 255) throw JetError("field index out of range");
  return {CoordKind::Field, static_cast<std::uint8_t>(a), {}};
}

JetCoordinate JetCoordinate::jet(int a, const MultiIndex& I) {
  if (I.empty()) return field(a);
  if (a < 1 || a > 255) throw JetError("field index out of range");
  return {CoordKind::Jet, static_cast<std::uint8_t>(a), I};
}

JetCoordinate JetCoordinate::coefficient(int a, const MultiIndex& alpha) {
  if (a < 1 || a > 255) throw JetError("field index out of range");
  return {CoordKind::Coefficient, static_cast<std::uint8_t>(a), alpha};
}

int JetCoordinate::order() const { return kind == CoordKind::Jet ? multi.size() : 0; }

JetCoordinate JetCoordinate::raised(int i) const {
  if (!is_fibre()) throw JetError("raised() needs a fibre coordinate");
  return jet(index, multi.with(i));
}

bool JetCoordinate::valid_for(const JetConfig& cfg) const {
  switch (kind) {
    case CoordKind::Base:
      return index >= 1 && index <= cfg.m;
    case CoordKind::Field:
      return index >= 1 && index <= cfg.n;
    case CoordKind::Jet:
      if (index < 1 || index > cfg.n || multi.empty()) return false;
      if (multi.size() > cfg.working_order()) return false;
      for (int v : multi)
        if (v < 1 || v > cfg.m) return false;
      return true;
    case CoordKind::Coefficient:
      return index >= 1 && index <= cfg.n;
  }
  return false;
}

std::string JetCoordinate::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case CoordKind::Base:
      os << "x[" << int(index) << "]";
      break;
    case CoordKind::Field:
      os << "y[" << int(index) << "]";
      break;
    case CoordKind::Jet:
      os << "z[" << int(index) << ";" << multi.to_string() << "]";
      break;
    case CoordKind::Coefficient:
      os << "c[" << int(index) << ";" << multi.to_string() << "]";
      break;
  }
  return os.str();
}

std::strong_ordering operator<=>(const JetCoordinate& a, const JetCoordinate& b) {
  if (a.kind != b.kind) return a.kind <=> b.kind;
  if (a.kind == CoordKind::Jet && a.multi.size() != b.multi.size())
    return a.multi.size() <=> b.multi.size();
  if (a.index != b.index) return a.index <=> b.index;
  return a.multi <=> b.multi;
}

std::vector<MultiIndex> enumerate_multi_indices(int m, int l) {
  std::vector<MultiIndex> out;
  if (l < 0) return out;
  std::vector<int> cur(l, 1);
  while (true) {
    out.push_back(MultiIndex::canonical(cur, m));
    int p = l - 1;
    while (p >= 0 && cur[p] == m) --p;
    if (p < 0) break;
    ++cur[p];
    for (int q = p + 1; q < l; ++q) cur[q] = cur[p];
  }
  return out;
}

std::vector<JetCoordinate> enumerate_coordinates(const JetConfig& cfg, int order) {
  cfg.validate();
  if (order < 0 || order > cfg.working_order())
    throw JetError("enumerate_coordinates: order " + std::to_string(order) +
                   " outside [0, " + std::to_string(cfg.working_order()) + "]");
  std::vector<JetCoordinate> out;
  for (int i = 1; i <= cfg.m; ++i) out.push_back(JetCoordinate::base(i));
  for (int a = 1; a <= cfg.n; ++a) out.push_back(JetCoordinate::field(a));
  for (int l = 1; l <= order; ++l) {
    auto level = enumerate_multi_indices(cfg.m, l);
    for (int a = 1; a <= cfg.n; ++a)
      for (const auto& I : level) out.push_back(JetCoordinate::jet(a, I));
  }
  return out;
}

long coordinate_count(const JetConfig& cfg, int order) {
  long total = 0;
  for (int l = 0; l <= order; ++l) {
    // C(m+l-1, l)
    long c = 1;
    for (int j = 1; j <= l; ++j) c = c * (cfg.m + j - 1) / j;
    total += c;
  }
  return cfg.m + cfg.n * total;
}

}  // namespace dedonder
