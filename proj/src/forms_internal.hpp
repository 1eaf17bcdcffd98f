#pragma once

#include <map>
#include <vector>

#include "reeb/circulation.hpp"

namespace reeb::detail {

/// Linear functional on cochains: mesh edge -> coefficient.
using Functional = std::map<int, double>;

Functional level_functional(const PLSurface& s, const Extraction& ex, int edge_id, double c);
Functional path_functional(const PLSurface& s, const std::vector<int>& path);
double apply(const Functional& l, const DiscreteOneForm& a);

}  // namespace reeb::detail
