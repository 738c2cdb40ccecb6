#pragma once

#include <string>

namespace stablerank {

/// How ψ_*(ξ_K) is labelled: by the dimension of the Schubert variety
/// ([X_{w_K w0}], point class [X_e]) or by its codimension ([X_{w_K}]).
enum class SchubertIndexing { Dimension, Codimension };

/// Sign conventions for the flag-manifold route: td(G/B) is represented by
/// e^{sign·ρ}. Chosen by the calibration suite, never guessed.
struct Convention {
  int rho_twist_sign = 1;
  SchubertIndexing indexing = SchubertIndexing::Dimension;

  friend bool operator==(const Convention&, const Convention&) = default;
};

inline std::string to_string(SchubertIndexing s) {
  return s == SchubertIndexing::Dimension ? "dimension" : "codimension";
}

}  // namespace stablerank
