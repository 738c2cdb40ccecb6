#pragma once

// Divided-difference calculus on S_Q(T^) = Q[x_1..x_r], x_i standing for the
// fundamental weight ω_i. Classes in H*(G/B, Q) are carried as polynomial
// representatives and never reduced modulo the invariant ideal: every number
// extracted goes through some D_w, which kills that ideal.

#include <memory>
#include <vector>

#include "stablerank/graded_poly.hpp"
#include "stablerank/weyl.hpp"

namespace stablerank {

using BorelClass = GradedPoly;

class Bgg {
 public:
  explicit Bgg(std::shared_ptr<const RootDatum> datum)
      : group_(datum),
        ctx_(make_indexed_context("x", datum->rank(), static_cast<int>(datum->dimension()))) {
    const RootDatum& d = *datum;
    for (std::size_t i = 0; i < d.rank(); ++i) simple_forms_.push_back(weight_form(d.simple_root(i).weight));
    // s_i(ω_j) = ω_j - δ_ij α_i
    for (std::size_t i = 0; i < d.rank(); ++i) {
      std::vector<GradedPoly> images;
      for (std::size_t j = 0; j < d.rank(); ++j) {
        GradedPoly img = GradedPoly::variable(ctx_, j);
        if (i == j) img -= simple_forms_[i];
        images.push_back(img);
      }
      reflection_images_.push_back(std::move(images));
    }
  }

  explicit Bgg(const CartanType& type) : Bgg(std::make_shared<const RootDatum>(type)) {}

  const WeylGroup& group() const { return group_; }
  const RootDatum& datum() const { return group_.datum(); }
  const ContextPtr& context() const { return ctx_; }
  std::size_t dimension() const { return datum().dimension(); }

  /// Linear form of a weight.
  BorelClass weight_form(const Weight& lambda) const { return GradedPoly::linear(ctx_, lambda.coords); }

  /// e^λ truncated at dim G/B.
  BorelClass exp_weight(const Weight& lambda) const { return trunc_exp(weight_form(lambda)); }

  BorelClass zero() const { return GradedPoly::zero(ctx_); }
  BorelClass one() const { return GradedPoly::one(ctx_); }

  /// x_i -> coordinates of w(ω_i).
  BorelClass weyl_act(const WeylElement& w, const BorelClass& f) const {
    check(f);
    BorelClass out = f;
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) out = out.substitute(reflection_images_[*it]);
    return out;
  }

  BorelClass reflect_simple(int i, const BorelClass& f) const {
    check(f);
    return f.substitute(reflection_images_[i]);
  }

  /// A_i f = (f - s_i f)/α_i; the division is exact or the call throws.
  BorelClass demazure(int i, const BorelClass& f) const {
    check(f);
    if (f.is_zero()) return f;
    BorelClass diff = f - f.substitute(reflection_images_[i]);
    return divide_exact(diff, simple_forms_[i]);
  }

  /// A_w = A_{i_1} ... A_{i_l} for the word (i_1, ..., i_l), rightmost first.
  BorelClass demazure_word(const Word& word, BorelClass f) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (f.is_zero()) break;
      f = demazure(*it, f);
    }
    return f;
  }

  BorelClass demazure_w(const WeylElement& w, const BorelClass& f) const { return demazure_word(w.word, f); }

  /// D_w f = (A_w f)(0). Only the degree-ℓ(w) part of f can contribute.
  Rational D(const WeylElement& w, const BorelClass& f) const {
    check(f);
    return demazure_word(w.word, f.homogeneous_part(static_cast<int>(w.length()))).constant_term();
  }

  /// ∫_{G/B} f = D_{w0} f.
  Rational integrate(const BorelClass& f) const { return D(group_.longest(), f); }

  /// Pairing of f with the Schubert class [X_w'].
  Rational schubert_pair(const BorelClass& f, const WeylElement& w) const { return D(w, f); }

  /// Homogeneous representative P_w of the class dual to [X_w]:
  /// D_v(P_w) = δ_{v,w}. Built as A_{w^{-1} w0}(ρ^n / n!).
  BorelClass dual_schubert_class(const WeylElement& w) const {
    const unsigned n = static_cast<unsigned>(dimension());
    BorelClass top = weight_form(datum().rho()).pow(n) * (1 / factorial(n));
    WeylElement u = group_.multiply(group_.inverse(w), group_.longest());
    return demazure_w(u, top);
  }

 private:
  void check(const BorelClass& f) const {
    if (!(*f.context() == *ctx_)) throw ContextMismatch("class does not belong to this flag manifold");
  }

  WeylGroup group_;
  ContextPtr ctx_;
  std::vector<GradedPoly> simple_forms_;
  std::vector<std::vector<GradedPoly>> reflection_images_;
};

}  // namespace stablerank
