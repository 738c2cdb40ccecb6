#pragma once

// Weyl group elements keyed by the image of ρ. Since ρ is regular the key
// identifies the element; the stored reduced word is a certificate and is
// always the lexicographically first one (smallest left descent first).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stablerank/root_system.hpp"

namespace stablerank {

using Word = std::vector<int>;  // 0-based simple reflection indices

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += "s" + std::to_string(w[i] + 1);
  }
  return s;
}

/// Accepts `e`, `s1*s2*s1`, `1,2,1` or `121` (1-based).
inline Word parse_word(std::string_view text, std::size_t rank) {
  Word w;
  std::string t(text);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty() || t == "e") return w;
  auto push = [&](long v) {
    if (v < 1 || static_cast<std::size_t>(v) > rank)
      throw ParseError("simple reflection index " + std::to_string(v) + " out of range");
    w.push_back(static_cast<int>(v - 1));
  };
  bool separated = t.find_first_of("s*,") != std::string::npos;
  if (!separated) {
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed word '" + t + "'");
      push(c - '0');
    }
    return w;
  }
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == 's' || t[i] == 'S') ++i;
    std::size_t start = i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (start == i) throw ParseError("malformed word '" + t + "'");
    push(std::stol(t.substr(start, i - start)));
    if (i < t.size()) {
      if (t[i] != '*' && t[i] != ',') throw ParseError("malformed word '" + t + "'");
      ++i;
      if (i == t.size()) throw ParseError("malformed word '" + t + "'");
    }
  }
  return w;
}

struct WeylElement {
  Weight key;  // w(ρ)
  Word word;   // reduced

  std::size_t length() const { return word.size(); }
  std::string to_string() const { return word_to_string(word); }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.key == b.key; }
  friend bool operator<(const WeylElement& a, const WeylElement& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  }
};

using ParabolicSubset = std::vector<int>;  // 0-based simple indices

/// Classical order of W; exact up to overflow of 64-bit range.
inline std::uint64_t weyl_group_order(const CartanType& type) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  std::uint64_t total = 1;
  for (const auto& f : type.factors) {
    std::uint64_t o = 1;
    switch (f.family) {
      case 'A': o = fact(f.rank + 1); break;
      case 'B':
      case 'C': o = (std::uint64_t{1} << f.rank) * fact(f.rank); break;
      case 'D': o = (std::uint64_t{1} << (f.rank - 1)) * fact(f.rank); break;
      case 'E': o = f.rank == 6 ? 51840 : f.rank == 7 ? 2903040 : 696729600; break;
      case 'F': o = 1152; break;
      case 'G': o = 12; break;
    }
    total *= o;
  }
  return total;
}

inline constexpr std::uint64_t kDefaultWeylLimit = 3628800;  // 10!

class WeylGroup {
 public:
  explicit WeylGroup(std::shared_ptr<const RootDatum> datum) : datum_(std::move(datum)) {}
  explicit WeylGroup(const CartanType& type) : datum_(std::make_shared<const RootDatum>(type)) {}

  const RootDatum& datum() const { return *datum_; }
  std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }
  std::size_t rank() const { return datum_->rank(); }

  WeylElement identity() const { return WeylElement{datum_->rho(), {}}; }

  WeylElement simple(int i) const { return from_word({i}); }

  /// Element with the given image of ρ; throws if the weight is not in the orbit.
  WeylElement from_key(const Weight& key) const {
    Weight mu = key;
    Word word;
    const std::size_t limit = datum_->num_positive_roots();
    while (true) {
      std::size_t i = 0;
      while (i < rank() && mu[i] >= 0) ++i;
      if (i == rank()) break;
      mu = datum_->reflect_simple(mu, i);
      word.push_back(static_cast<int>(i));
      if (word.size() > limit) throw ValidationError("weight is not in the Weyl orbit of rho");
    }
    if (mu != datum_->rho()) throw ValidationError("weight is not in the Weyl orbit of rho");
    return WeylElement{key, std::move(word)};
  }

  /// Product of an arbitrary (not necessarily reduced) word.
  WeylElement from_word(const Word& word) const {
    for (int i : word)
      if (i < 0 || static_cast<std::size_t>(i) >= rank()) throw ValidationError("simple index out of range");
    return from_key(act_word(word, datum_->rho()));
  }

  /// s_{w[0]} s_{w[1]} ... applied to λ (rightmost letter first).
  Weight act_word(const Word& word, Weight lambda) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) lambda = datum_->reflect_simple(lambda, *it);
    return lambda;
  }

  Weight act(const WeylElement& w, const Weight& lambda) const { return act_word(w.word, lambda); }

  WeylElement multiply(const WeylElement& u, const WeylElement& v) const { return from_key(act(u, v.key)); }

  WeylElement inverse(const WeylElement& w) const {
    Word rev(w.word.rbegin(), w.word.rend());
    return from_word(rev);
  }

  /// ℓ(s_i w) < ℓ(w)
  bool is_left_descent(const WeylElement& w, int i) const { return w.key[i] < 0; }

  /// ℓ(w s_i) < ℓ(w), i.e. w(α_i) is negative.
  bool is_right_descent(const WeylElement& w, int i) const {
    return !datum_->is_positive_root(act(w, datum_->simple_root(i).weight));
  }

  WeylElement left_multiply_simple(int i, const WeylElement& w) const {
    return from_key(datum_->reflect_simple(w.key, i));
  }

  WeylElement right_multiply_simple(const WeylElement& w, int i) const {
    Word word = w.word;
    word.push_back(i);
    return from_word(word);
  }

  WeylElement longest() const { return from_key(-datum_->rho()); }

  /// Every element, sorted by (length, reduced word).
  std::vector<WeylElement> enumerate(std::uint64_t limit = kDefaultWeylLimit) const {
    const std::uint64_t order = weyl_group_order(datum_->type());
    if (order > limit)
      throw ResourceLimit("|W| = " + std::to_string(order) + " exceeds the configured limit " +
                          std::to_string(limit));
    std::set<std::vector<long>> seen{datum_->rho().coords};
    std::deque<Weight> queue{datum_->rho()};
    std::vector<WeylElement> out;
    while (!queue.empty()) {
      Weight mu = queue.front();
      queue.pop_front();
      out.push_back(from_key(mu));
      for (std::size_t i = 0; i < rank(); ++i) {
        Weight nu = datum_->reflect_simple(mu, i);
        if (seen.insert(nu.coords).second) queue.push_back(nu);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Bruhat order, walking the reduced word of w only:
  /// for a left descent s of w, u ≤ w iff min(u, su) ≤ sw.
  bool bruhat_leq(const WeylElement& u, const WeylElement& w) const {
    WeylElement uu = u;
    std::size_t wlen = w.length();
    for (int s : w.word) {
      if (uu.length() > wlen) return false;
      if (uu.length() == 0) return true;
      if (is_left_descent(uu, s)) uu = left_multiply_simple(s, uu);
      --wlen;
    }
    return uu.length() == 0;
  }

  std::vector<Word> all_reduced_words(const WeylElement& w, std::size_t limit = 100000) const {
    std::map<std::vector<long>, std::vector<Word>> memo;
    std::function<const std::vector<Word>&(const Weight&)> rec = [&](const Weight& key) -> const std::vector<Word>& {
      auto it = memo.find(key.coords);
      if (it != memo.end()) return it->second;
      std::vector<Word> words;
      bool any = false;
      for (std::size_t i = 0; i < rank(); ++i) {
        if (key[i] >= 0) continue;
        any = true;
        const auto& tails = rec(datum_->reflect_simple(key, i));
        for (const auto& t : tails) {
          Word word{static_cast<int>(i)};
          word.insert(word.end(), t.begin(), t.end());
          words.push_back(std::move(word));
          if (words.size() > limit) throw ResourceLimit("too many reduced words");
        }
      }
      if (!any) words.push_back({});
      return memo.emplace(key.coords, std::move(words)).first->second;
    };
    auto words = rec(w.key);
    std::sort(words.begin(), words.end());
    return words;
  }

  /// Maximal-length representative of w W_I.
  WeylElement saturated_rep(WeylElement w, const ParabolicSubset& I) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i : I) {
        if (!is_right_descent(w, i)) {
          w = right_multiply_simple(w, i);
          changed = true;
        }
      }
    }
    return w;
  }

  /// Minimal-length representative of w W_I.
  WeylElement minimal_rep(WeylElement w, const ParabolicSubset& I) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i : I) {
        if (is_right_descent(w, i)) {
          w = right_multiply_simple(w, i);
          changed = true;
        }
      }
    }
    return w;
  }

  bool is_saturated(const WeylElement& w, const ParabolicSubset& I) const {
    return std::all_of(I.begin(), I.end(), [&](int i) { return is_right_descent(w, i); });
  }

  /// Longest element of the parabolic subgroup W_I.
  WeylElement parabolic_longest(const ParabolicSubset& I) const { return saturated_rep(identity(), I); }

  /// s_{β_k} ... s_{β_1} for the first k letters of β.
  WeylElement prefix_element(const Word& beta, std::size_t k) const {
    Word rev(beta.begin(), beta.begin() + static_cast<long>(k));
    std::reverse(rev.begin(), rev.end());
    return from_word(rev);
  }

  /// Reduced word β of w0 with s_{β_k} ... s_{β_1} = v for k = ℓ(v): the
  /// first k letters spell v^{-1}, the rest spell v w0.
  Word extend_to_w0(const WeylElement& v) const {
    Word beta = inverse(v).word;
    Word tail = multiply(v, longest()).word;
    beta.insert(beta.end(), tail.begin(), tail.end());
    return beta;
  }

  bool is_reduced_word_of(const Word& word, const WeylElement& w) const {
    return word.size() == w.length() && from_word(word) == w;
  }

 private:
  std::shared_ptr<const RootDatum> datum_;
};

}  // namespace stablerank
