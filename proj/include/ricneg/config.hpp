#ifndef RICNEG_CONFIG_HPP
#define RICNEG_CONFIG_HPP

#include <cstddef>
#include <cstdint>

namespace ricneg {

/// Enumeration caps shared across the library. All enumerations throw
/// CapExceeded with a descriptive message when a cap is hit.
struct Caps {
  std::size_t support_cap = 1'000'000;   // dominant weights per representation
  std::size_t orbit_cap = 10'000'000;    // Weyl orbit size
  std::size_t weight_cap = 5'000'000;    // expanded weight entries
  long long rep_dim_cap = 256;           // complex dimension for explicit matrices
};

struct Tolerances {
  double jacobi = 1e-9;
  double jacobi_exact_input = 1e-12;
  double commutation = 1e-9;
  double six_conditions = 1e-8;
  double oracle_rel = 1e-9;
  double eps_accept_rel = 1e-6;   // accept max eig < -eps * spectral radius
};

struct SearchConfig {
  int budget = 2000;       // objective evaluations per restart
  int restarts = 8;
  std::uint64_t seed = 1;
  bool parallel = true;
};

}  // namespace ricneg

#endif
