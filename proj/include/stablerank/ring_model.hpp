#pragma once

// Finite presentations of H^even(X, Z): a graded basis, integral structure
// constants, integration on the top class, tangent Chern classes and an
// optional Sq^2 table on H^4. Degrees are complex degrees (H^{2d} has degree d).

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablerank/char_classes.hpp"
#include "stablerank/expression.hpp"
#include "stablerank/rational.hpp"

namespace stablerank {

struct BasisElement {
  std::string name;
  int degree = 0;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

using Coords = std::vector<Rational>;

/// Plain description of a model; turned into a RingModel by make_ring_model().
struct RingModelSpec {
  std::string name;
  int dim = 0;
  std::vector<BasisElement> basis;                           // basis[0] is the unit
  std::map<std::pair<std::size_t, std::size_t>, Coords> products;  // key i <= j; unit products implicit
  std::map<std::size_t, Rational> integrals;                 // top-degree basis index -> ∫
  std::vector<Coords> tangent;                               // c_1 .. c_k of T_X (missing ones are 0)
  std::optional<std::map<std::size_t, Coords>> sq2;          // degree-2 index -> degree-3 class mod 2
};

class RingModel;
using ModelPtr = std::shared_ptr<const RingModel>;

/// Element of a RingModel, dense over the basis.
class ModelClass {
 public:
  ModelClass() = default;
  ModelClass(ModelPtr model, Coords v) : model_(std::move(model)), v_(std::move(v)) {}

  const ModelPtr& model() const { return model_; }
  const Coords& coords() const { return v_; }
  const Rational& operator[](std::size_t i) const { return v_[i]; }
  bool is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](const Rational& q) { return q == 0; });
  }

  ModelClass& operator+=(const ModelClass& o) {
    check(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  ModelClass& operator-=(const ModelClass& o) {
    check(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  ModelClass& operator*=(const Rational& q) {
    for (auto& c : v_) c *= q;
    return *this;
  }
  friend ModelClass operator+(ModelClass a, const ModelClass& b) { return a += b; }
  friend ModelClass operator-(ModelClass a, const ModelClass& b) { return a -= b; }
  friend ModelClass operator-(ModelClass a) { return a *= Rational(-1); }
  friend ModelClass operator*(ModelClass a, const Rational& q) { return a *= q; }
  friend ModelClass operator*(const Rational& q, ModelClass a) { return a *= q; }
  friend ModelClass operator*(const ModelClass& a, const ModelClass& b);
  friend bool operator==(const ModelClass& a, const ModelClass& b) { return a.model_ == b.model_ && a.v_ == b.v_; }

  ModelClass degree_part(int d) const;
  std::string to_string() const;

 private:
  void check(const ModelClass& o) const {
    if (model_ != o.model_) throw ContextMismatch("classes belong to different models");
  }

  ModelPtr model_;
  Coords v_;
};

namespace detail {

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '_' || std::isalnum(static_cast<unsigned char>(c)); });
}

}  // namespace detail

/// True when the integer row vectors span all of Z^width.
inline bool spans_integer_lattice(std::vector<std::vector<Integer>> rows, std::size_t width) {
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < width; ++col) {
    // Euclid on the column until at most one nonzero entry remains below pivot_row.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == rows.size()) return false;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q = rows[r][col] / rows[pivot_row][col];
        for (std::size_t k = col; k < width; ++k) rows[r][k] -= q * rows[pivot_row][k];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (abs(rows[pivot_row][col]) != 1) return false;
    ++pivot_row;
  }
  return true;
}

class RingModel : public std::enable_shared_from_this<RingModel> {
 public:
  const std::string& name() const { return spec_.name; }
  int dim() const { return spec_.dim; }
  const std::vector<BasisElement>& basis() const { return spec_.basis; }
  std::size_t size() const { return spec_.basis.size(); }
  const RingModelSpec& spec() const { return spec_; }
  std::size_t top_index() const { return top_; }
  bool has_sq2() const { return spec_.sq2.has_value(); }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (spec_.basis[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<std::size_t> indices_of_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (spec_.basis[i].degree == d) out.push_back(i);
    return out;
  }

  /// Distinguished generators of H^2: the degree-1 basis elements.
  std::vector<std::size_t> h2_basis() const { return indices_of_degree(1); }

  ModelClass zero() const { return ModelClass(shared_from_this(), Coords(size(), Rational(0))); }
  ModelClass one() const { return element(0); }
  ModelClass element(std::size_t i) const {
    ModelClass z = zero();
    Coords v = z.coords();
    v.at(i) = 1;
    return ModelClass(shared_from_this(), std::move(v));
  }
  ModelClass element(const std::string& name) const {
    auto i = find(name);
    if (!i) throw ValidationError("unknown basis element '" + name + "'");
    return element(*i);
  }
  ModelClass from_coords(Coords v) const {
    if (v.size() != size()) throw ContextMismatch("coordinate vector has the wrong length");
    return ModelClass(shared_from_this(), std::move(v));
  }

  const Coords& product_of(std::size_t i, std::size_t j) const { return table_[i][j]; }

  Coords multiply(const Coords& a, const Coords& b) const {
    Coords out(size(), Rational(0));
    for (std::size_t i = 0; i < size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < size(); ++j) {
        if (b[j] == 0) continue;
        const Rational c = a[i] * b[j];
        for (const auto& [k, s] : sparse_[i][j]) out[k] += c * s;
      }
    }
    return out;
  }

  Rational integrate(const ModelClass& x) const { return x[top_] * top_integral_; }

  /// Chern classes of the tangent bundle, as a rank-dim tuple.
  ChernTuple<ModelClass> tangent_chern() const {
    std::vector<ModelClass> cs;
    for (int k = 1; k <= dim(); ++k)
      cs.push_back(static_cast<std::size_t>(k) <= spec_.tangent.size() ? from_coords(spec_.tangent[k - 1]) : zero());
    return ChernTuple<ModelClass>{std::move(cs), one()};
  }

  ModelClass todd() const { return todd_class(tangent_chern(), dim()); }

  /// Sq^2 on H^4 ⊗ Z/2, result in H^6 with coefficients reduced to {0, 1}.
  ModelClass sq2(const ModelClass& x) const {
    if (!spec_.sq2) throw ValidationError("model '" + name() + "' has no Sq2 table");
    Coords out(size(), Rational(0));
    for (std::size_t i = 0; i < size(); ++i) {
      if (x[i] == 0) continue;
      if (spec_.basis[i].degree != 2) throw ValidationError("Sq2 table only covers degree-2 classes");
      if (!is_integer(x[i])) throw ValidationError("Sq2 of a non-integral class");
      auto it = spec_.sq2->find(i);
      if (it == spec_.sq2->end()) continue;
      for (std::size_t k = 0; k < size(); ++k) out[k] += x[i] * it->second[k];
    }
    return from_coords(reduce_mod2(out));
  }

  static Coords reduce_mod2(Coords v) {
    for (auto& c : v) {
      if (!is_integer(c)) throw ValidationError("mod-2 reduction of a non-integral class");
      Integer r = c.get_num() % 2;
      if (r < 0) r += 2;
      c = Rational(r);
    }
    return v;
  }

  /// Whether monomials in H^2 span H^{2d}(X, Z) for every d (integral lattice check).
  std::optional<int> h2_generation_failure() const {
    const auto gens = h2_basis();
    for (int d = 1; d <= dim(); ++d) {
      const auto target = indices_of_degree(d);
      std::vector<std::vector<Integer>> rows;
      std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
      if (!gens.empty()) {
        // multisets of size d, non-decreasing index vectors
        while (true) {
          Coords m = one().coords();
          for (std::size_t p : pick) m = multiply(m, element(gens[p]).coords());
          std::vector<Integer> row;
          for (std::size_t t : target) row.push_back(m[t].get_num());
          rows.push_back(std::move(row));
          int pos = d - 1;
          while (pos >= 0 && pick[static_cast<std::size_t>(pos)] + 1 == gens.size()) --pos;
          if (pos < 0) break;
          ++pick[static_cast<std::size_t>(pos)];
          for (int q = pos + 1; q < d; ++q) pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(pos)];
        }
      }
      if (!spans_integer_lattice(rows, target.size())) return d;
    }
    return std::nullopt;
  }

  /// Structural equality, ignoring the model name.
  bool same_structure(const RingModel& o) const {
    return dim() == o.dim() && basis() == o.basis() && table_ == o.table_ && top_integral_ == o.top_integral_ &&
           tangent_padded() == o.tangent_padded() && spec_.sq2 == o.spec_.sq2;
  }

  friend ModelPtr make_ring_model(RingModelSpec spec);

 private:
  explicit RingModel(RingModelSpec spec) : spec_(std::move(spec)) {}

  std::vector<Coords> tangent_padded() const {
    std::vector<Coords> t = spec_.tangent;
    t.resize(static_cast<std::size_t>(dim()), Coords(size(), Rational(0)));
    return t;
  }

  void build_and_validate();

  RingModelSpec spec_;
  std::vector<std::vector<Coords>> table_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, Rational>>>> sparse_;
  std::size_t top_ = 0;
  Rational top_integral_;
};

inline ModelClass operator*(const ModelClass& a, const ModelClass& b) {
  a.check(b);
  return ModelClass(a.model_, a.model_->multiply(a.v_, b.v_));
}

inline ModelClass ModelClass::degree_part(int d) const {
  Coords v = v_;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (model_->basis()[i].degree != d) v[i] = 0;
  return ModelClass(model_, std::move(v));
}

inline std::string ModelClass::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += v_[i].get_str() + "*" + model_->basis()[i].name;
  }
  return s.empty() ? "0" : s;
}

inline void RingModel::build_and_validate() {
  std::vector<std::string> problems;
  auto report = [&] {
    if (problems.empty()) return;
    std::string msg = "model '" + spec_.name + "' failed validation:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ValidationError(msg);
  };
  const auto& b = spec_.basis;
  const std::size_t n = b.size();
  const int dim = spec_.dim;
  if (dim < 0) throw ValidationError("negative dimension");
  if (n == 0 || b[0].degree != 0) throw ValidationError("first basis element must be the degree-0 unit");
  std::set<std::string> names;
  for (const auto& e : b) {
    if (!detail::is_identifier(e.name)) problems.push_back("basis name '" + e.name + "' is not an identifier");
    if (!names.insert(e.name).second) problems.push_back("duplicate basis name '" + e.name + "'");
    if (e.degree < 0 || e.degree > dim)
      problems.push_back("basis element '" + e.name + "' has degree outside 0.." + std::to_string(dim));
  }
  if (indices_of_degree(0).size() != 1) problems.push_back("degree 0 must be spanned by the unit alone");
  report();

  table_.assign(n, std::vector<Coords>(n, Coords(n, Rational(0))));
  for (std::size_t i = 0; i < n; ++i) {
    table_[0][i][i] = 1;
    table_[i][0][i] = 1;
  }
  for (const auto& [key, v] : spec_.products) {
    auto [i, j] = key;
    if (i >= n || j >= n || v.size() != n) {
      problems.push_back("product entry out of range");
      continue;
    }
    const std::string what = b[i].name + " * " + b[j].name;
    for (std::size_t k = 0; k < n; ++k) {
      if (v[k] == 0) continue;
      if (!is_integer(v[k])) problems.push_back(what + " has non-integral coefficient on " + b[k].name);
      if (b[k].degree != b[i].degree + b[j].degree)
        problems.push_back("grading violation: " + what + " has a component on " + b[k].name + " (degree " +
                           std::to_string(b[k].degree) + ", expected " +
                           std::to_string(b[i].degree + b[j].degree) + ")");
    }
    if ((i == 0 || j == 0) && v != table_[i][j]) problems.push_back("unit violation: " + what);
    table_[i][j] = v;
    table_[j][i] = v;
  }
  report();

  sparse_.assign(n, std::vector<std::vector<std::pair<std::size_t, Rational>>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table_[i][j][k] != 0) sparse_[i][j].emplace_back(k, table_[i][j][k]);

  // associativity: (b_i b_j) b_k = b_i (b_j b_k)
  for (std::size_t i = 1; i < n && problems.empty(); ++i)
    for (std::size_t j = i; j < n && problems.empty(); ++j)
      for (std::size_t k = 1; k < n && problems.empty(); ++k) {
        Coords ei(n, Rational(0)), ek(n, Rational(0));
        ei[i] = 1;
        ek[k] = 1;
        if (multiply(table_[i][j], ek) != multiply(ei, table_[j][k]))
          problems.push_back("associativity fails on (" + b[i].name + ", " + b[j].name + ", " + b[k].name + ")");
      }

  {
    const auto tops = indices_of_degree(dim);
    if (tops.size() != 1) {
      problems.push_back("expected exactly one top-degree basis element, found " + std::to_string(tops.size()));
    } else {
      top_ = tops[0];
      for (const auto& [i, q] : spec_.integrals)
        if (i != top_) problems.push_back("integration is nonzero outside the top class on " + b.at(i).name);
      auto it = spec_.integrals.find(top_);
      top_integral_ = it == spec_.integrals.end() ? Rational(0) : it->second;
      if (top_integral_ != 1 && top_integral_ != -1)
        problems.push_back("integral of the top class must be 1 or -1, got " + top_integral_.get_str());
    }
  }
  report();

  // Poincaré duality: the pairing H^{2d} x H^{2(n-d)} -> Z is unimodular.
  for (int d = 0; d <= dim; ++d) {
    const auto lo = indices_of_degree(d), hi = indices_of_degree(dim - d);
    if (lo.size() != hi.size()) {
      problems.push_back("Poincare duality fails: rank of degree " + std::to_string(d) + " differs from degree " +
                         std::to_string(dim - d));
      continue;
    }
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i : lo) {
      std::vector<Integer> row;
      for (std::size_t j : hi) row.push_back(Rational(table_[i][j][top_] * top_integral_).get_num());
      rows.push_back(std::move(row));
    }
    if (!spans_integer_lattice(rows, hi.size()))
      problems.push_back("Poincare duality fails: pairing of degrees " + std::to_string(d) + " and " +
                         std::to_string(dim - d) + " is not unimodular");
  }

  if (spec_.tangent.size() > static_cast<std::size_t>(dim)) problems.push_back("more tangent Chern classes than dim");
  for (std::size_t k = 0; k < spec_.tangent.size(); ++k) {
    const auto& v = spec_.tangent[k];
    if (v.size() != n) {
      problems.push_back("tangent class c" + std::to_string(k + 1) + " has the wrong length");
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      if (b[i].degree != static_cast<int>(k + 1))
        problems.push_back("tangent class c" + std::to_string(k + 1) + " has a component on " + b[i].name);
      if (!is_integer(v[i])) problems.push_back("tangent class c" + std::to_string(k + 1) + " is not integral");
    }
  }

  if (spec_.sq2) {
    for (auto& [i, v] : *spec_.sq2) {
      if (i >= n || b[i].degree != 2) {
        problems.push_back("Sq2 entry on a class not in degree 2");
        continue;
      }
      if (v.size() != n) {
        problems.push_back("Sq2 entry for " + b[i].name + " has the wrong length");
        continue;
      }
      for (std::size_t k = 0; k < n; ++k)
        if (v[k] != 0 && b[k].degree != 3) problems.push_back("Sq2(" + b[i].name + ") leaves degree 3");
      try {
        v = reduce_mod2(v);
      } catch (const ValidationError&) {
        problems.push_back("Sq2(" + b[i].name + ") is not integral");
      }
    }
    std::erase_if(*spec_.sq2, [](const auto& kv) {
      return std::all_of(kv.second.begin(), kv.second.end(), [](const Rational& q) { return q == 0; });
    });
  }

  report();
}

inline ModelPtr make_ring_model(RingModelSpec spec) {
  if (spec.dim < 3 && !spec.sq2) spec.sq2.emplace();  // H^6 = 0
  std::shared_ptr<RingModel> m(new RingModel(std::move(spec)));
  m->build_and_validate();
  return m;
}

/// Z[h]/(h^{n+1}), ∫ h^n = 1, c(T) = (1+h)^{n+1}, Sq^2(h^2) = 2h^3.
inline ModelPtr projective_space(int n) {
  if (n < 1) throw ValidationError("projective space needs n >= 1");
  RingModelSpec s;
  s.name = "P" + std::to_string(n);
  s.dim = n;
  const std::size_t sz = static_cast<std::size_t>(n) + 1;
  for (int k = 0; k <= n; ++k) s.basis.push_back({k == 0 ? "one" : k == 1 ? "h" : "h" + std::to_string(k), k});
  for (std::size_t i = 1; i < sz; ++i)
    for (std::size_t j = i; j < sz; ++j) {
      Coords v(sz, Rational(0));
      if (i + j < sz) v[i + j] = 1;
      s.products[{i, j}] = v;
    }
  s.integrals[sz - 1] = 1;
  for (int k = 1; k <= n; ++k) {
    Coords v(sz, Rational(0));
    v[static_cast<std::size_t>(k)] = binomial(n + 1, k);
    s.tangent.push_back(v);
  }
  s.sq2.emplace();
  if (n >= 3) {
    (*s.sq2)[2] = Coords(sz, Rational(0));  // 2 h^3 reduced mod 2
  }
  return make_ring_model(std::move(s));
}

/// Künneth product X × Y; basis names are joined with '_'.
inline ModelPtr kunneth(const RingModel& x, const RingModel& y) {
  RingModelSpec s;
  s.name = x.name() + "x" + y.name();
  s.dim = x.dim() + y.dim();
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) pairs.emplace_back(i, j);
  // unit first, then by total degree
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return x.basis()[a.first].degree + y.basis()[a.second].degree <
           x.basis()[b.first].degree + y.basis()[b.second].degree;
  });
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [i, j] = pairs[p];
    pos[pairs[p]] = p;
    s.basis.push_back({x.basis()[i].name + "_" + y.basis()[j].name, x.basis()[i].degree + y.basis()[j].degree});
  }
  const std::size_t n = pairs.size();
  auto tensor = [&](const Coords& a, const Coords& b) {
    Coords out(n, Rational(0));
    for (std::size_t i = 0; i < nx; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < ny; ++j)
        if (b[j] != 0) out[pos.at({i, j})] += a[i] * b[j];
    }
    return out;
  };
  for (std::size_t p = 1; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) {
      const auto& [a1, b1] = pairs[p];
      const auto& [a2, b2] = pairs[q];
      s.products[{p, q}] = tensor(x.product_of(a1, a2), y.product_of(b1, b2));
    }
  s.integrals[pos.at({x.top_index(), y.top_index()})] =
      x.integrate(x.element(x.top_index())) * y.integrate(y.element(y.top_index()));

  auto unit_x = x.one().coords(), unit_y = y.one().coords();
  // c(T_{X×Y}) = c(T_X) c(T_Y)
  std::vector<Coords> cx(1, unit_x), cy(1, unit_y);
  for (const auto& c : x.tangent_chern().classes) cx.push_back(c.coords());
  for (const auto& c : y.tangent_chern().classes) cy.push_back(c.coords());
  for (int k = 1; k <= s.dim; ++k) {
    Coords v(n, Rational(0));
    for (int i = 0; i <= k; ++i) {
      const int j = k - i;
      if (i > x.dim() || j > y.dim()) continue;
      Coords t = tensor(cx[static_cast<std::size_t>(i)], cy[static_cast<std::size_t>(j)]);
      for (std::size_t m = 0; m < n; ++m) v[m] += t[m];
    }
    s.tangent.push_back(v);
  }

  // Cartan formula; Sq^1 vanishes on reductions of integral even classes and
  // Sq^2 is squaring on H^2.
  if (x.has_sq2() && y.has_sq2()) {
    s.sq2.emplace();
    auto sq2_of = [](const RingModel& m, std::size_t i) -> Coords {
      const int d = m.basis()[i].degree;
      if (d == 1) return m.product_of(i, i);
      if (d == 2) return m.sq2(m.element(i)).coords();
      return Coords(m.size(), Rational(0));
    };
    for (std::size_t p = 0; p < n; ++p) {
      if (s.basis[p].degree != 2) continue;
      const auto& [i, j] = pairs[p];
      Coords v = tensor(sq2_of(x, i), y.element(j).coords());
      Coords w = tensor(x.element(i).coords(), sq2_of(y, j));
      for (std::size_t m = 0; m < n; ++m) v[m] += w[m];
      (*s.sq2)[p] = RingModel::reduce_mod2(v);
    }
  }
  return make_ring_model(std::move(s));
}

namespace detail {

/// Linear combination of basis elements, or a bare scalar.
struct LinearValue {
  bool scalar = true;
  Rational value;
  Coords coeffs;

  friend LinearValue operator+(LinearValue a, const LinearValue& b) { return combine(std::move(a), b, 1); }
  friend LinearValue operator-(LinearValue a, const LinearValue& b) { return combine(std::move(a), b, -1); }
  friend LinearValue operator*(LinearValue a, const Rational& q) {
    a.value *= q;
    for (auto& c : a.coeffs) c *= q;
    return a;
  }
  friend LinearValue operator*(const LinearValue& a, const LinearValue& b) {
    if (a.scalar) return b * a.value;
    if (b.scalar) return a * b.value;
    throw ParseError("right-hand side must be linear in basis elements");
  }

  static LinearValue combine(LinearValue a, const LinearValue& b, int sign) {
    if (a.scalar && b.scalar) {
      a.value += sign * b.value;
      return a;
    }
    if (a.scalar && a.value != 0) throw ParseError("constant added to a basis combination; use the unit's name");
    if (b.scalar && b.value != 0) throw ParseError("constant added to a basis combination; use the unit's name");
    if (a.scalar) {
      a.scalar = false;
      a.coeffs.assign(b.coeffs.size(), Rational(0));
    }
    if (!b.scalar)
      for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += sign * b.coeffs[i];
    return a;
  }
};

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace detail

/// Parses the model text format:
///
///   name P2
///   dim 2
///   basis 0 one
///   basis 1 h
///   basis 2 p
///   mul h * h = p
///   integrate p = 1
///   tangent c1 = 3h
///   tangent c2 = 3p
///   sq2 <degree-2 name> = <degree-3 combination>
///
/// '#' starts a comment. Products with the unit are implicit; unlisted
/// products are zero. Tangent and Sq2 lines are evaluated in the finished ring.
inline ModelPtr parse_ring_model(std::istream& in) {
  RingModelSpec s;
  bool have_name = false, have_dim = false;
  std::vector<std::pair<int, std::string>> mul_lines, tangent_lines, sq2_lines, integrate_lines;
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : detail::trim(line.substr(sp));
    if (key == "name") {
      if (rest.empty()) fail("missing model name");
      s.name = rest;
      have_name = true;
    } else if (key == "dim") {
      try {
        std::size_t used = 0;
        s.dim = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(rest);
      } catch (const std::exception&) {
        fail("dim must be an integer");
      }
      have_dim = true;
    } else if (key == "basis") {
      auto words = detail::split_ws(rest);
      if (words.size() < 2) fail("basis needs a degree and at least one name");
      int deg = 0;
      try {
        deg = std::stoi(words[0]);
      } catch (const std::exception&) {
        fail("basis degree must be an integer");
      }
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!detail::is_identifier(words[i])) fail("basis name '" + words[i] + "' is not an identifier");
        s.basis.push_back({words[i], deg});
      }
    } else if (key == "mul") {
      mul_lines.emplace_back(lineno, rest);
    } else if (key == "integrate") {
      integrate_lines.emplace_back(lineno, rest);
    } else if (key == "tangent") {
      tangent_lines.emplace_back(lineno, rest);
    } else if (key == "sq2") {
      sq2_lines.emplace_back(lineno, rest);
    } else {
      fail("unknown field '" + key + "'");
    }
  }
  if (!have_name) throw ParseError("missing 'name' line");
  if (!have_dim) throw ParseError("missing 'dim' line");
  if (s.basis.empty()) throw ParseError("missing 'basis' lines");
  // unit first
  std::stable_sort(s.basis.begin(), s.basis.end(),
                   [](const BasisElement& a, const BasisElement& b) { return a.degree < b.degree; });
  const std::size_t n = s.basis.size();
  auto index = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (s.basis[i].name == name) return i;
    throw ParseError("line " + std::to_string(lineno) + ": unknown basis element '" + name + "'");
  };
  auto split_eq = [&](const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected '='");
    return std::make_pair(detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)));
  };
  std::function<detail::LinearValue(const std::string&)> linear_lookup = [&](const std::string& name) {
    detail::LinearValue v;
    v.scalar = false;
    v.coeffs.assign(n, Rational(0));
    v.coeffs[index(name)] = 1;
    return v;
  };
  auto linear = [&](const std::string& text) {
    detail::LinearValue one;
    one.value = 1;
    auto v = evaluate_expression<detail::LinearValue>(text, linear_lookup, one);
    if (v.scalar) {
      if (v.value != 0) fail("a nonzero constant must be written with the unit's name");
      return Coords(n, Rational(0));
    }
    return v.coeffs;
  };

  for (const auto& [ln, text] : mul_lines) {
    lineno = ln;
    auto [lhs, rhs] = split_eq(text);
    const auto star = lhs.find('*');
    if (star == std::string::npos) fail("expected 'a * b = ...'");
    std::size_t i = index(detail::trim(lhs.substr(0, star)));
    std::size_t j = index(detail::trim(lhs.substr(star + 1)));
    if (i > j) std::swap(i, j);
    if (s.products.count({i, j})) fail("duplicate product " + s.basis[i].name + " * " + s.basis[j].name);
    s.products[{i, j}] = linear(rhs);
  }
  for (const auto& [ln, text] : integrate_lines) {
    lineno = ln;
    auto [lhs, rhs] = split_eq(text);
    s.integrals[index(lhs)] = parse_rational(rhs);
  }
  std::vector<std::pair<std::size_t, std::string>> tangent_exprs;
  for (const auto& [ln, text] : tangent_lines) {
    lineno = ln;
    auto [lhs, rhs] = split_eq(text);
    if (lhs.size() < 2 || lhs[0] != 'c') fail("tangent lines read 'tangent cK = ...'");
    std::size_t k = 0;
    try {
      k = std::stoul(lhs.substr(1));
    } catch (const std::exception&) {
      fail("tangent lines read 'tangent cK = ...'");
    }
    if (k == 0) fail("tangent class index starts at 1");
    tangent_exprs.emplace_back(k, rhs);
  }
  std::vector<std::pair<std::size_t, std::string>> sq2_exprs;
  for (const auto& [ln, text] : sq2_lines) {
    lineno = ln;
    auto [lhs, rhs] = split_eq(text);
    sq2_exprs.emplace_back(index(lhs), rhs);
  }

  // First pass validates the ring; tangent and Sq2 lines are then evaluated in it.
  RingModelSpec ring_only = s;
  ModelPtr ring = make_ring_model(ring_only);
  std::function<ModelClass(const std::string&)> lookup = [&](const std::string& name) {
    auto i = ring->find(name);
    if (!i) throw ParseError("unknown basis element '" + name + "'");
    return ring->element(*i);
  };
  for (const auto& [k, text] : tangent_exprs) {
    if (k > s.tangent.size()) s.tangent.resize(k, Coords(n, Rational(0)));
    s.tangent[k - 1] = evaluate_expression<ModelClass>(text, lookup, ring->one()).coords();
  }
  if (!sq2_exprs.empty()) {
    s.sq2.emplace();
    for (const auto& [i, text] : sq2_exprs) (*s.sq2)[i] = evaluate_expression<ModelClass>(text, lookup, ring->one()).coords();
  }
  return make_ring_model(std::move(s));
}

inline ModelPtr load_ring_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  return parse_ring_model(in);
}

inline ModelPtr parse_ring_model_text(const std::string& text) {
  std::istringstream in(text);
  return parse_ring_model(in);
}

/// Inverse of parse_ring_model (canonical ordering).
inline std::string format_ring_model(const RingModel& m) {
  auto combo = [&](const Coords& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      const bool neg = v[k] < 0;
      const Rational a = neg ? Rational(-v[k]) : v[k];
      if (s.empty()) {
        s += neg ? "-" : "";
      } else {
        s += neg ? " - " : " + ";
      }
      if (a != 1) s += a.get_str() + "*";
      s += m.basis()[k].name;
    }
    return s.empty() ? std::string("0") : s;
  };
  std::ostringstream os;
  os << "name " << m.name() << "\n";
  os << "dim " << m.dim() << "\n";
  for (const auto& e : m.basis()) os << "basis " << e.degree << " " << e.name << "\n";
  for (std::size_t i = 1; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      const Coords& v = m.product_of(i, j);
      if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; })) continue;
      os << "mul " << m.basis()[i].name << " * " << m.basis()[j].name << " = " << combo(v) << "\n";
    }
  os << "integrate " << m.basis()[m.top_index()].name << " = " << m.integrate(m.element(m.top_index())).get_str()
     << "\n";
  const auto t = m.tangent_chern();
  for (std::size_t k = 0; k < t.rank(); ++k)
    if (!t.classes[k].is_zero()) os << "tangent c" << k + 1 << " = " << combo(t.classes[k].coords()) << "\n";
  if (m.has_sq2())
    for (std::size_t i : m.indices_of_degree(2)) {
      auto it = m.spec().sq2->find(i);
      os << "sq2 " << m.basis()[i].name << " = " << (it == m.spec().sq2->end() ? "0" : combo(it->second)) << "\n";
    }
  return os.str();
}

}  // namespace stablerank
