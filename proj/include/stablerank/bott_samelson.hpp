#pragma once

// Cohomology of the Bott-Samelson resolution ψ: Z -> G/B attached to a reduced
// word β of w0, and the pushforward of Chern characters of structure sheaves
// of Schubert varieties into the Schubert basis.
//
// H*(Z) is free on square-free monomials ξ_K, K ⊆ {1..n}, with relations
//   ξ_j^2 = -Σ_{i<j} <α_i^v, α_j> ξ_i ξ_j,
// where α_i = s_{β_1} ... s_{β_{i-1}}(β_i).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/bgg.hpp"
#include "stablerank/conventions.hpp"
#include "stablerank/series.hpp"
#include "stablerank/weyl.hpp"

namespace stablerank {

using SubsetMask = std::uint64_t;

inline int popcount(SubsetMask m) { return __builtin_popcountll(m); }

struct WordData {
  Word beta;                               // reduced word of w0 (0-based letters)
  std::vector<std::size_t> alpha;          // α_i as indices into the positive roots
  std::vector<std::vector<long>> cartan;   // cartan[i][j] = <α_i^v, α_j>

  std::size_t length() const { return beta.size(); }
};

inline WordData make_word_data(const WeylGroup& group, const Word& beta) {
  const RootDatum& d = group.datum();
  const std::size_t n = d.dimension();
  if (beta.size() != n || !(group.from_word(beta) == group.longest()))
    throw ValidationError("'" + word_to_string(beta) + "' is not a reduced word of w0");
  if (n > 63) throw ResourceLimit("Bott-Samelson rings beyond 63 generators are not supported");
  WordData wd;
  wd.beta = beta;
  for (std::size_t i = 0; i < n; ++i) {
    Word prefix(beta.begin(), beta.begin() + static_cast<long>(i));
    Weight a = group.act_word(prefix, d.simple_root(beta[i]).weight);
    auto [idx, sign] = d.find_root(a);
    if (sign != 1) throw ValidationError("alpha sequence left the positive roots");
    wd.alpha.push_back(idx);
  }
  wd.cartan.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      wd.cartan[i][j] = d.pairing(d.positive_roots()[wd.alpha[j]].weight, d.positive_roots()[wd.alpha[i]]);
  return wd;
}

class BsRing;

/// Rational combination of the square-free basis ξ_K of H*(Z, Q).
class BSClass {
 public:
  using TermMap = std::map<SubsetMask, Rational>;

  BSClass() = default;
  explicit BSClass(std::shared_ptr<const BsRing> ring) : ring_(std::move(ring)) {}

  const TermMap& terms() const { return terms_; }
  const std::shared_ptr<const BsRing>& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(SubsetMask k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(SubsetMask k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BSClass zero_like() const { return BSClass(ring_); }
  BSClass one_like() const {
    BSClass o(ring_);
    o.add_term(0, 1);
    return o;
  }

  BSClass& operator+=(const BSClass& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  BSClass& operator-=(const BSClass& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  BSClass& operator*=(const Rational& q) {
    if (q == 0) {
      terms_.clear();
    } else {
      for (auto& [k, c] : terms_) c *= q;
    }
    return *this;
  }
  friend BSClass operator+(BSClass a, const BSClass& b) { return a += b; }
  friend BSClass operator-(BSClass a, const BSClass& b) { return a -= b; }
  friend BSClass operator*(BSClass a, const Rational& q) { return a *= q; }
  friend BSClass operator*(const Rational& q, BSClass a) { return a *= q; }
  friend BSClass operator*(const BSClass& a, const BSClass& b);
  friend bool operator==(const BSClass& a, const BSClass& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.get_str() << "*xi{";
      bool f2 = true;
      for (int i = 0; i < 64; ++i)
        if (k >> i & 1U) {
          os << (f2 ? "" : ",") << i + 1;
          f2 = false;
        }
      os << "}";
    }
    return os.str();
  }

 private:
  std::shared_ptr<const BsRing> ring_;
  TermMap terms_;
};

class BsRing : public std::enable_shared_from_this<BsRing> {
 public:
  static std::shared_ptr<const BsRing> create(WordData wd) {
    return std::shared_ptr<const BsRing>(new BsRing(std::move(wd)));
  }

  const WordData& word_data() const { return wd_; }
  std::size_t n() const { return wd_.length(); }

  BSClass one() const { return basis(0); }
  BSClass basis(SubsetMask k) const {
    BSClass b(shared_from_this());
    b.add_term(k, 1);
    return b;
  }
  BSClass generator(std::size_t i) const { return basis(SubsetMask{1} << i); }

  /// ξ_K · ξ_j reduced to normal form. Memoized; the cache is invisible to callers.
  const BSClass::TermMap& times_generator(SubsetMask k, std::size_t j) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return times_generator_locked(k, j);
  }

  BSClass multiply(const BSClass& a, const BSClass& b) const {
    BSClass out(shared_from_this());
    for (const auto& [kb, cb] : b.terms()) {
      for (const auto& [ka, ca] : a.terms()) {
        const Rational c = ca * cb;
        if ((ka & kb) == 0) {
          out.add_term(ka | kb, c);
          continue;
        }
        BSClass::TermMap cur{{ka, Rational(1)}};
        for (std::size_t j = 0; j < n(); ++j) {
          if (!(kb >> j & 1U)) continue;
          BSClass::TermMap next;
          for (const auto& [m, mc] : cur) {
            for (const auto& [r, rc] : times_generator(m, j)) {
              auto [it, ins] = next.try_emplace(r, mc * rc);
              if (!ins) {
                it->second += mc * rc;
                if (it->second == 0) next.erase(it);
              }
            }
          }
          cur = std::move(next);
          if (cur.empty()) break;
        }
        for (const auto& [m, mc] : cur) out.add_term(m, c * mc);
      }
    }
    return out;
  }

  /// Σ_{i ≤ r} <α_i^v, α_r> ξ_i
  BSClass root_divisor(std::size_t r) const {
    BSClass out(shared_from_this());
    for (std::size_t i = 0; i <= r; ++i) out.add_term(SubsetMask{1} << i, Rational(wd_.cartan[i][r]));
    return out;
  }

 private:
  explicit BsRing(WordData wd) : wd_(std::move(wd)) {}

  const BSClass::TermMap& times_generator_locked(SubsetMask k, std::size_t j) const {
    auto key = std::make_pair(k, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    BSClass::TermMap out;
    if (!(k >> j & 1U)) {
      out.emplace(k | (SubsetMask{1} << j), 1);
    } else {
      // ξ_K ξ_j = ξ_{K\j} ξ_j^2 = -Σ_{i<j} c_ij ξ_K ξ_i
      for (std::size_t i = 0; i < j; ++i) {
        const long c = wd_.cartan[i][j];
        if (c == 0) continue;
        for (const auto& [m, mc] : times_generator_locked(k, i)) {
          Rational v = mc * Rational(-c);
          auto [pos, ins] = out.try_emplace(m, v);
          if (!ins) {
            pos->second += v;
            if (pos->second == 0) out.erase(pos);
          }
        }
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  WordData wd_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<SubsetMask, std::size_t>, BSClass::TermMap> cache_;
};

inline BSClass operator*(const BSClass& a, const BSClass& b) {
  const auto& ring = a.ring_ ? a.ring_ : b.ring_;
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_) throw ContextMismatch("classes on different Bott-Samelson rings");
  if (!ring) return BSClass();
  return ring->multiply(a, b);
}

inline BSClass bs_mul(const BSClass& a, const BSClass& b) { return a * b; }

/// td(Z) = Π_r L_r / (1 - exp(-L_r)), L_r = Σ_{i≤r} <α_i^v, α_r> ξ_i.
inline BSClass todd_Z(const BsRing& ring) {
  const Series f = todd_series(ring.n());
  BSClass one = ring.one();
  BSClass td = one;
  for (std::size_t r = 0; r < ring.n(); ++r) td = td * evaluate_series(f, ring.root_divisor(r), one);
  return td;
}

/// ch(O_{Z_K}) for K = {1..k} in the product form (-1)^k Π ξ_i^2/(1 - e^{ξ_i}).
inline BSClass ch_OZK(const BsRing& ring, std::size_t k) {
  if (k > ring.n()) throw ValidationError("k exceeds the Bott-Samelson dimension");
  const std::size_t cap = ring.n();
  Series num(cap + 2, Rational(0));
  num[2] = 1;
  Series den = exp_series(cap + 1);
  for (auto& c : den) c = -c;
  den[0] += 1;
  const Series factor = series_quotient(num, den, cap);
  BSClass one = ring.one();
  BSClass out = one;
  for (std::size_t i = 0; i < k; ++i) out = out * evaluate_series(factor, ring.generator(i), one);
  if (k % 2 == 1) out *= Rational(-1);
  return out;
}

/// Koszul form Π_{i∈K} (1 - e^{-ξ_i}) for an arbitrary subset K; the Z_i
/// cross normally, so this is ch(O_{Z_K}) for every K.
inline BSClass ch_O_subset(const BsRing& ring, SubsetMask k) {
  const Series e = exp_series(ring.n(), -1);
  Series f(e.size(), Rational(0));
  for (std::size_t i = 1; i < e.size(); ++i) f[i] = -e[i];
  BSClass one = ring.one();
  BSClass out = one;
  for (std::size_t i = 0; i < ring.n(); ++i)
    if (k >> i & 1U) out = out * evaluate_series(f, ring.generator(i), one);
  return out;
}

/// Rational combination of Schubert classes [X_w], keyed by element.
class SchubertVector {
 public:
  using TermMap = std::map<WeylElement, Rational>;

  void add(const WeylElement& w, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = terms_.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const WeylElement& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const TermMap& terms() const { return terms_; }
  friend bool operator==(const SchubertVector& a, const SchubertVector& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) s += " + ";
      first = false;
      s += it->second.get_str() + "*[X_" + it->first.to_string() + "]";
    }
    return s;
  }

 private:
  TermMap terms_;
};

/// w_K = Π_{i∈K} s_{α_i}, factors in increasing index order.
inline WeylElement subset_element(const WeylGroup& group, const WordData& wd, SubsetMask k) {
  const RootDatum& d = group.datum();
  Weight key = d.rho();
  for (std::size_t i = wd.length(); i-- > 0;)
    if (k >> i & 1U) key = d.reflect(key, d.positive_roots()[wd.alpha[i]]);
  return group.from_key(key);
}

/// ψ_*(ξ_K) = [X_{w_K w0}] when ℓ(w_K) = |K|, else 0.
inline SchubertVector pushforward(const BSClass& a, const WeylGroup& group,
                                  SchubertIndexing indexing = SchubertIndexing::Dimension) {
  const WordData& wd = a.ring()->word_data();
  const WeylElement w0 = group.longest();
  SchubertVector out;
  for (const auto& [k, c] : a.terms()) {
    WeylElement wk = subset_element(group, wd, k);
    if (wk.length() != static_cast<std::size_t>(popcount(k))) continue;
    out.add(indexing == SchubertIndexing::Dimension ? group.multiply(wk, w0) : wk, c);
  }
  return out;
}

/// ch(O_{X_w}) · td(G/B) in the Schubert basis, from the initial-segment
/// construction: β = extend_to_w0(w w0), K = {1..n-ℓ(w)}.
inline SchubertVector ch_schubert(const WeylGroup& group, const WeylElement& w,
                                  SchubertIndexing indexing = SchubertIndexing::Dimension) {
  const WeylElement v = group.multiply(w, group.longest());
  const Word beta = group.extend_to_w0(v);
  auto ring = BsRing::create(make_word_data(group, beta));
  return pushforward(ch_OZK(*ring, v.length()) * todd_Z(*ring), group, indexing);
}

/// Same class computed on the resolution of an arbitrary reduced word β of
/// w0: Z_K is cut out by deleting the positions K, where the kept positions
/// spell a reduced word of w (greedy left-descent choice).
inline SchubertVector ch_schubert_on_word(const WeylGroup& group, const std::shared_ptr<const BsRing>& ring,
                                          const BSClass& td, const WeylElement& w) {
  const Word& beta = ring->word_data().beta;
  WeylElement u = w;
  SubsetMask deleted = 0;
  for (std::size_t p = 0; p < beta.size(); ++p) {
    if (u.length() > 0 && group.is_left_descent(u, beta[p])) {
      u = group.left_multiply_simple(beta[p], u);
    } else {
      deleted |= SubsetMask{1} << p;
    }
  }
  if (u.length() != 0) throw ValidationError("word does not dominate the element");
  return pushforward(ch_O_subset(*ring, deleted) * td, group);
}

/// Rows ch(O_{X_w}) in the Schubert basis, plus the untwisted pushforward rows
/// ch(O_{X_w}) · td(G/B) they come from.
struct QMatrix {
  CartanType type;
  Convention convention;
  std::vector<WeylElement> elements;          // row/column order
  std::vector<std::vector<Rational>> q;       // q[w][w']
  std::vector<std::vector<Rational>> twisted; // coefficients of ch(O_{X_w}) td(G/B)

  std::size_t index_of(const WeylElement& w) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == w) return i;
    throw ValidationError("element not in table");
  }

  bool all_integral() const {
    for (const auto& row : q)
      for (const auto& c : row)
        if (!is_integer(c)) return false;
    return true;
  }
};

/// E[w''][w'] = D_{w''}(e^{-sρ} P_{w'}): strips the td(G/B) = e^{sρ} factor.
inline std::vector<std::vector<Rational>> untwist_matrix(const Bgg& bgg, const std::vector<WeylElement>& elements,
                                                         int rho_sign) {
  const BorelClass inv_td = bgg.exp_weight(-(static_cast<long>(rho_sign) * bgg.datum().rho()));
  std::vector<std::vector<Rational>> e(elements.size(), std::vector<Rational>(elements.size(), Rational(0)));
  for (std::size_t c = 0; c < elements.size(); ++c) {
    BorelClass g = inv_td * bgg.dual_schubert_class(elements[c]);
    for (std::size_t r = 0; r < elements.size(); ++r) {
      if (elements[r].length() < elements[c].length()) continue;
      e[r][c] = bgg.D(elements[r], g);
    }
  }
  return e;
}

inline QMatrix assemble_q_matrix(const Bgg& bgg, const std::vector<WeylElement>& elements,
                                 const std::vector<SchubertVector>& rows, const Convention& conv) {
  QMatrix out;
  out.type = bgg.datum().type();
  out.convention = conv;
  out.elements = elements;
  const std::size_t m = elements.size();
  std::map<WeylElement, std::size_t> pos;
  for (std::size_t i = 0; i < m; ++i) pos.emplace(elements[i], i);
  out.twisted.assign(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [w, c] : rows[i].terms()) out.twisted[i][pos.at(w)] = c;
  const auto e = untwist_matrix(bgg, elements, conv.rho_twist_sign);
  out.q.assign(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (out.twisted[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (e[k][j] != 0) out.q[i][j] += out.twisted[i][k] * e[k][j];
    }
  return out;
}

/// q-matrix via the per-row initial-segment construction.
inline QMatrix q_matrix(const Bgg& bgg, const Convention& conv = {}, std::uint64_t limit = kDefaultWeylLimit) {
  const auto elements = bgg.group().enumerate(limit);
  std::vector<SchubertVector> rows;
  rows.reserve(elements.size());
  for (const auto& w : elements) rows.push_back(ch_schubert(bgg.group(), w, conv.indexing));
  return assemble_q_matrix(bgg, elements, rows, conv);
}

/// q-matrix with every row computed on the single resolution of β.
inline QMatrix q_matrix_on_word(const Bgg& bgg, const Word& beta, const Convention& conv = {},
                                std::uint64_t limit = kDefaultWeylLimit) {
  const auto elements = bgg.group().enumerate(limit);
  auto ring = BsRing::create(make_word_data(bgg.group(), beta));
  const BSClass td = todd_Z(*ring);
  std::vector<SchubertVector> rows;
  rows.reserve(elements.size());
  for (const auto& w : elements) rows.push_back(ch_schubert_on_word(bgg.group(), ring, td, w));
  return assemble_q_matrix(bgg, elements, rows, conv);
}

}  // namespace stablerank
