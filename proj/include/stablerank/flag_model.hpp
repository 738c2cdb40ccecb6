#pragma once

// G/P seen through G/B: classes are W_P-invariant polynomials in the
// fundamental weights, integrals are D_w of the pullback.

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stablerank/bgg.hpp"
#include "stablerank/char_classes.hpp"
#include "stablerank/ring_model.hpp"

namespace stablerank {

class FlagModel {
 public:
  FlagModel(std::shared_ptr<const Bgg> bgg, ParabolicSubset parabolic)
      : bgg_(std::move(bgg)), parabolic_(std::move(parabolic)) {
    std::sort(parabolic_.begin(), parabolic_.end());
    parabolic_.erase(std::unique(parabolic_.begin(), parabolic_.end()), parabolic_.end());
    for (int i : parabolic_)
      if (i < 0 || static_cast<std::size_t>(i) >= bgg_->datum().rank())
        throw ValidationError("parabolic index " + std::to_string(i + 1) + " out of range");
    fiber_dim_ = group().parabolic_longest(parabolic_).length();
    const WeylElement w0 = group().longest();
    for (std::size_t a = 0; a < bgg_->datum().rank(); ++a)
      if (group().is_saturated(group().right_multiply_simple(w0, static_cast<int>(a)), parabolic_))
        h2_.push_back(static_cast<int>(a));
  }

  FlagModel(const CartanType& type, ParabolicSubset parabolic)
      : FlagModel(std::make_shared<const Bgg>(type), std::move(parabolic)) {}

  const Bgg& bgg() const { return *bgg_; }
  std::shared_ptr<const Bgg> bgg_ptr() const { return bgg_; }
  const WeylGroup& group() const { return bgg_->group(); }
  const ParabolicSubset& parabolic() const { return parabolic_; }

  /// dim G/P = |Φ+| - |Φ_I+|
  std::size_t dim() const { return bgg_->dimension() - fiber_dim_; }
  std::size_t fiber_dim() const { return fiber_dim_; }

  /// Simple roots α with w0 s_α P-saturated; their fundamental weights span H^2(G/P).
  const std::vector<int>& h2_roots() const { return h2_; }

  std::string label() const {
    std::string s = bgg_->datum().type().to_string();
    if (!parabolic_.empty()) {
      s += "/P{";
      for (std::size_t i = 0; i < parabolic_.size(); ++i) s += (i ? "," : "") + std::to_string(parabolic_[i] + 1);
      s += "}";
    }
    return s;
  }

  bool is_invariant(const BorelClass& c) const {
    return std::all_of(parabolic_.begin(), parabolic_.end(), [&](int i) { return bgg_->demazure(i, c).is_zero(); });
  }

  void require_invariant(const ChernTuple<BorelClass>& t) const {
    for (std::size_t k = 0; k < t.rank(); ++k) {
      const BorelClass& c = t.classes[k];
      if (c.degree() > 0 && c.homogeneous_part(static_cast<int>(k + 1)) != c)
        throw ValidationError("c" + std::to_string(k + 1) + " is not homogeneous of degree " + std::to_string(k + 1));
      if (!is_invariant(c))
        throw ValidationError("c" + std::to_string(k + 1) + " is not invariant under the parabolic Weyl group");
      for (const auto& [m, q] : c.terms())
        if (!is_integer(q))
          throw ValidationError("c" + std::to_string(k + 1) + " has a non-integral coefficient");
    }
  }

  /// Minimal coset representatives of W/W_P, sorted.
  std::vector<WeylElement> minimal_reps(std::uint64_t limit = kDefaultWeylLimit) const {
    std::vector<WeylElement> out;
    for (const auto& w : group().enumerate(limit))
      if (std::none_of(parabolic_.begin(), parabolic_.end(), [&](int i) { return group().is_right_descent(w, i); }))
        out.push_back(w);
    return out;
  }

  /// P-saturated (maximal) coset representatives, sorted.
  std::vector<WeylElement> saturated_reps(std::uint64_t limit = kDefaultWeylLimit) const {
    std::vector<WeylElement> out;
    for (const auto& w : group().enumerate(limit))
      if (group().is_saturated(w, parabolic_)) out.push_back(w);
    return out;
  }

  /// Whether monomials in the H^2 generators span H^{even}(G/P, Z). The
  /// coordinates of an invariant class f on the Schubert cycle of X_P(w) are
  /// D_w(f) for minimal representatives w.
  bool h2_generates(std::uint64_t limit = kDefaultWeylLimit) const {
    const auto reps = minimal_reps(limit);
    for (std::size_t d = 1; d <= dim(); ++d) {
      std::vector<WeylElement> cells;
      for (const auto& w : reps)
        if (w.length() == d) cells.push_back(w);
      std::vector<std::vector<Integer>> rows;
      std::vector<std::size_t> pick(d, 0);
      const std::size_t g = h2_.size();
      if (g > 0) {
        while (true) {
          BorelClass m = bgg_->one();
          for (std::size_t p : pick) m *= bgg_->weight_form(Weight::fundamental(bgg_->datum().rank(), h2_[p]));
          std::vector<Integer> row;
          for (const auto& w : cells) {
            Rational v = bgg_->D(w, m);
            if (!is_integer(v)) return false;
            row.push_back(v.get_num());
          }
          rows.push_back(std::move(row));
          std::size_t pos = d;
          while (pos > 0 && pick[pos - 1] + 1 == g) --pos;
          if (pos == 0) break;
          ++pick[pos - 1];
          for (std::size_t q = pos; q < d; ++q) pick[q] = pick[pos - 1];
        }
      }
      if (!spans_integer_lattice(rows, cells.size())) return false;
    }
    return true;
  }

  /// Tangent Chern classes of G/P: c(T) = Π_{α ∈ Φ+ \ Φ_I+} (1 + α).
  ChernTuple<BorelClass> tangent_chern() const {
    std::vector<BorelClass> weights;
    const RootDatum& d = bgg_->datum();
    for (const auto& r : d.positive_roots()) {
      bool in_levi = true;
      for (std::size_t i = 0; i < d.rank(); ++i)
        if (r.simple[i] != 0 && !std::binary_search(parabolic_.begin(), parabolic_.end(), static_cast<int>(i)))
          in_levi = false;
      if (!in_levi) weights.push_back(bgg_->weight_form(r.weight));
    }
    return sum_of_line_bundles(weights, bgg_->one());
  }

  /// Chern tuple of L(χ_1) ⊕ ... ⊕ L(χ_n); each χ must vanish on the coroots of P.
  ChernTuple<BorelClass> line_bundle_sum(const std::vector<Weight>& chis) const {
    std::vector<BorelClass> w;
    for (const auto& chi : chis) {
      if (chi.rank() != bgg_->datum().rank()) throw ValidationError("weight " + chi.to_string() + " has the wrong rank");
      for (int i : parabolic_)
        if (chi[static_cast<std::size_t>(i)] != 0)
          throw ValidationError("weight " + chi.to_string() + " does not descend to " + label());
      w.push_back(bgg_->weight_form(chi));
    }
    return sum_of_line_bundles(w, bgg_->one());
  }

 private:
  std::shared_ptr<const Bgg> bgg_;
  ParabolicSubset parabolic_;
  std::size_t fiber_dim_ = 0;
  std::vector<int> h2_;
};

/// Whether every simple factor is of type A or C (B2 = C2 included).
inline bool is_type_a_or_c(const CartanType& type) {
  return std::all_of(type.factors.begin(), type.factors.end(), [](const SimpleFactor& f) {
    return f.family == 'A' || f.family == 'C' || (f.family == 'B' && f.rank <= 2);
  });
}

}  // namespace stablerank
