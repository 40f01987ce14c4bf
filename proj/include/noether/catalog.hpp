#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "noether/lagrangian.hpp"

namespace noether::catalog {

/// 1/2 |v|^2
Lagrangian dirichlet(std::size_t n = 1);
/// 1/2 v^2 + u  (n = 1)
Lagrangian poisson();
/// 1/2 v^2 - 1/2 u^2  (n = 1); extremals on the reals are sines.
Lagrangian harmonic();
/// (v1 - v2)^2  (n = 2)
Lagrangian pair_difference();
/// 1/2 (v1 - u2)^2  (n = 2); invariant under y1 += p, y2 += p^Delta.
Lagrangian gauge_pair();
/// sqrt(v1^2 + v2^2)  (n = 2); invariant under reparametrization of time.
Lagrangian arc_length();

/// Built-in one-dimensional Lagrangians by name; throws ParseError for unknown names.
Lagrangian lookup(std::string_view name);
std::vector<std::string> names();

}  // namespace noether::catalog
