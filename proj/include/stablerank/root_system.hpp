#pragma once

// Cartan data for finite crystallographic types and their products. Weights
// and roots are stored in the fundamental-weight basis; the j-th simple root
// is the j-th column of the Cartan matrix a_ij = <α_i^v, α_j>.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablerank/rational.hpp"

namespace stablerank {

/// Integer vector in the fundamental-weight basis (ω_1, ..., ω_r).
struct Weight {
  std::vector<long> coords;

  Weight() = default;
  explicit Weight(std::vector<long> c) : coords(std::move(c)) {}
  static Weight zero(std::size_t rank) { return Weight(std::vector<long>(rank, 0)); }
  static Weight fundamental(std::size_t rank, std::size_t i) {
    Weight w = zero(rank);
    w.coords.at(i) = 1;
    return w;
  }

  std::size_t rank() const { return coords.size(); }
  long operator[](std::size_t i) const { return coords[i]; }
  long& operator[](std::size_t i) { return coords[i]; }

  Weight& operator+=(const Weight& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& c : a.coords) c = -c;
    return a;
  }
  friend Weight operator*(long k, Weight a) {
    for (auto& c : a.coords) c *= k;
    return a;
  }
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ")";
    return os.str();
  }
};

struct SimpleFactor {
  char family = 'A';
  int rank = 1;
  friend bool operator==(const SimpleFactor&, const SimpleFactor&) = default;
};

struct CartanType {
  std::vector<SimpleFactor> factors;

  int rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += "x";
      s += factors[i].family;
      s += std::to_string(factors[i].rank);
    }
    return s;
  }

  friend bool operator==(const CartanType&, const CartanType&) = default;
};

inline void validate_factor(const SimpleFactor& f) {
  bool ok = false;
  switch (f.family) {
    case 'A': ok = f.rank >= 1; break;
    case 'B':
    case 'C': ok = f.rank >= 2; break;
    case 'D': ok = f.rank >= 3; break;
    case 'E': ok = f.rank >= 6 && f.rank <= 8; break;
    case 'F': ok = f.rank == 4; break;
    case 'G': ok = f.rank == 2; break;
    default: throw ValidationError(std::string("unknown Cartan family '") + f.family + "'");
  }
  if (!ok)
    throw ValidationError(std::string("invalid rank ") + std::to_string(f.rank) + " for family " + f.family);
}

/// Parses strings such as `A2`, `G2`, `A1xC3`.
inline CartanType parse_cartan_type(std::string_view text) {
  CartanType t;
  std::size_t i = 0;
  auto fail = [&]() { throw ParseError("malformed Cartan type '" + std::string(text) + "'"); };
  while (i < text.size()) {
    if (!t.factors.empty()) {
      if (text[i] != 'x' && text[i] != 'X') fail();
      ++i;
    }
    if (i >= text.size()) fail();
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++])));
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || i - start > 3) fail();
    SimpleFactor f{fam, std::stoi(std::string(text.substr(start, i - start)))};
    validate_factor(f);
    t.factors.push_back(f);
  }
  if (t.factors.empty()) fail();
  return t;
}

/// Bourbaki-numbered Cartan matrix of one simple factor.
inline std::vector<std::vector<int>> simple_cartan_matrix(const SimpleFactor& f) {
  validate_factor(f);
  const int n = f.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  switch (f.family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // α_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // α_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[2][1] = -2;
      break;
    case 'G':
      link(0, 1);
      a[0][1] = -3;  // α_1 short
      break;
  }
  return a;
}

struct Root {
  Weight weight;               // fundamental-weight coordinates
  std::vector<long> simple;    // coefficients over simple roots
  std::vector<long> coroot;    // α^v over simple coroots
  int height = 0;
};

class RootDatum {
 public:
  explicit RootDatum(CartanType type) : type_(std::move(type)) { build(); }

  const CartanType& type() const { return type_; }
  std::size_t rank() const { return cartan_.size(); }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }
  const std::vector<Root>& positive_roots() const { return roots_; }
  std::size_t num_positive_roots() const { return roots_.size(); }
  /// dim G/B
  std::size_t dimension() const { return roots_.size(); }
  const Root& simple_root(std::size_t i) const { return roots_[simple_index_[i]]; }
  std::size_t simple_root_index(std::size_t i) const { return simple_index_[i]; }
  Weight rho() const { return Weight(std::vector<long>(rank(), 1)); }
  const std::vector<Rational>& symmetrizer() const { return sym_; }

  /// Index of the positive root ±λ; second is +1 or -1. Returns {npos, 0} for non-roots.
  std::pair<std::size_t, int> find_root(const Weight& w) const {
    auto it = lookup_.find(w.coords);
    if (it != lookup_.end()) return {it->second, 1};
    it = lookup_.find((-w).coords);
    if (it != lookup_.end()) return {it->second, -1};
    return {static_cast<std::size_t>(-1), 0};
  }

  bool is_positive_root(const Weight& w) const { return find_root(w).second == 1; }

  /// <λ, α^v>
  long pairing(const Weight& lambda, const Root& alpha) const {
    long s = 0;
    for (std::size_t j = 0; j < rank(); ++j) s += alpha.coroot[j] * lambda[j];
    return s;
  }

  /// λ - <λ, α^v> α
  Weight reflect(const Weight& lambda, const Root& alpha) const {
    return lambda - pairing(lambda, alpha) * alpha.weight;
  }

  /// Simple reflection s_i; <λ, α_i^v> is just the i-th coordinate.
  Weight reflect_simple(const Weight& lambda, std::size_t i) const {
    Weight out = lambda;
    const long k = lambda[i];
    if (k != 0)
      for (std::size_t j = 0; j < rank(); ++j) out[j] -= k * cartan_[j][i];
    return out;
  }

  /// Coordinates of λ over the simple roots, via the inverse Cartan matrix.
  std::vector<Rational> root_coordinates(const Weight& lambda) const {
    std::vector<Rational> out(rank(), Rational(0));
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) out[i] += inverse_cartan_[i][j] * lambda[j];
    return out;
  }

  /// Simple-factor boundaries: factor k covers indices [offsets[k], offsets[k+1]).
  const std::vector<std::size_t>& factor_offsets() const { return offsets_; }

 private:
  void build() {
    std::size_t r = static_cast<std::size_t>(type_.rank());
    cartan_.assign(r, std::vector<int>(r, 0));
    offsets_.push_back(0);
    for (const auto& f : type_.factors) {
      auto block = simple_cartan_matrix(f);
      std::size_t o = offsets_.back();
      for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j) cartan_[o + i][o + j] = block[i][j];
      offsets_.push_back(o + block.size());
    }
    build_symmetrizer();
    build_roots();
    build_inverse();
  }

  // D_i = (α_i, α_i)/2 with a_ij D_i = a_ji D_j; one unit per component.
  void build_symmetrizer() {
    const std::size_t r = rank();
    sym_.assign(r, Rational(0));
    for (std::size_t s = 0; s < r; ++s) {
      if (sym_[s] != 0) continue;
      sym_[s] = 1;
      std::deque<std::size_t> queue{s};
      while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < r; ++j) {
          if (i == j || cartan_[i][j] == 0 || sym_[j] != 0) continue;
          sym_[j] = sym_[i] * cartan_[i][j] / cartan_[j][i];
          queue.push_back(j);
        }
      }
    }
    // normalize each component so the shortest root has D = 1
    for (std::size_t k = 0; k + 1 < offsets_.size(); ++k) {
      Rational m = sym_[offsets_[k]];
      for (std::size_t i = offsets_[k]; i < offsets_[k + 1]; ++i) m = std::min(m, sym_[i]);
      for (std::size_t i = offsets_[k]; i < offsets_[k + 1]; ++i) sym_[i] /= m;
    }
  }

  Root make_root(std::vector<long> simple) const {
    Root root;
    const std::size_t r = rank();
    root.simple = std::move(simple);
    root.weight = Weight::zero(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) root.weight[i] += cartan_[i][j] * root.simple[j];
    root.height = 0;
    for (long c : root.simple) root.height += static_cast<int>(c);
    // (α, α)/2 = ½ Σ c_j c_k a_jk D_j
    Rational half_norm = 0;
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) half_norm += Rational(root.simple[j] * root.simple[k] * cartan_[j][k]) * sym_[j];
    half_norm /= 2;
    root.coroot.assign(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
      Rational c = Rational(root.simple[j]) * sym_[j] / half_norm;
      if (!is_integer(c)) throw ValidationError("non-integral coroot coefficient");
      root.coroot[j] = c.get_num().get_si();
    }
    return root;
  }

  void build_roots() {
    const std::size_t r = rank();
    std::map<std::vector<long>, std::vector<long>> found;  // weight -> simple coords
    std::deque<std::vector<long>> queue;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<long> c(r, 0);
      c[i] = 1;
      queue.push_back(c);
    }
    while (!queue.empty()) {
      std::vector<long> c = queue.front();
      queue.pop_front();
      Root root = make_root(c);
      if (found.count(root.weight.coords)) continue;
      found.emplace(root.weight.coords, c);
      for (std::size_t i = 0; i < r; ++i) {
        // s_i β = β - <β, α_i^v> α_i stays positive unless β = α_i
        std::vector<long> next = c;
        next[i] -= root.weight[i];
        bool positive = std::all_of(next.begin(), next.end(), [](long v) { return v >= 0; }) &&
                        std::any_of(next.begin(), next.end(), [](long v) { return v > 0; });
        if (positive) queue.push_back(next);
      }
    }
    for (const auto& [w, c] : found) roots_.push_back(make_root(c));
    std::sort(roots_.begin(), roots_.end(), [](const Root& a, const Root& b) {
      if (a.height != b.height) return a.height < b.height;
      return a.simple > b.simple;
    });
    simple_index_.assign(r, 0);
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      lookup_.emplace(roots_[k].weight.coords, k);
      if (roots_[k].height == 1)
        for (std::size_t i = 0; i < r; ++i)
          if (roots_[k].simple[i] == 1) simple_index_[i] = k;
    }
  }

  void build_inverse() {
    const std::size_t r = rank();
    std::vector<std::vector<Rational>> m(r, std::vector<Rational>(2 * r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) m[i][j] = cartan_[i][j];
      m[i][r + i] = 1;
    }
    for (std::size_t col = 0; col < r; ++col) {
      std::size_t piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      Rational p = m[col][col];
      for (auto& v : m[col]) v /= p;
      for (std::size_t i = 0; i < r; ++i) {
        if (i == col || m[i][col] == 0) continue;
        Rational f = m[i][col];
        for (std::size_t j = 0; j < 2 * r; ++j) m[i][j] -= f * m[col][j];
      }
    }
    // λ = Σ λ_j ω_j, ω_j = Σ_i (A^{-1})_{ij} α_i
    inverse_cartan_.assign(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) inverse_cartan_[i][j] = m[i][r + j];
  }

  CartanType type_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::size_t> offsets_;
  std::vector<Rational> sym_;
  std::vector<Root> roots_;
  std::vector<std::size_t> simple_index_;
  std::map<std::vector<long>, std::size_t> lookup_;
  std::vector<std::vector<Rational>> inverse_cartan_;
};

inline RootDatum build_root_datum(const CartanType& type) { return RootDatum(type); }

inline RootDatum build_root_datum(std::string_view type) { return RootDatum(parse_cartan_type(type)); }

}  // namespace stablerank
