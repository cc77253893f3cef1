#include "delo/error.hpp"

#include <sstream>

namespace delo {
namespace {

std::string describe(Degeneracy kind, const std::vector<std::size_t>& indices) {
  std::ostringstream os;
  os << "points not in general position (" << to_string(kind) << "):";
  for (std::size_t i : indices) os << ' ' << i;
  return os.str();
}

}  // namespace

DuplicatePointError::DuplicatePointError(std::size_t first, std::size_t second)
    : GeometryError("duplicate points " + std::to_string(first) + " and " +
                        std::to_string(second),
                    {first, second}) {}

const char* to_string(Degeneracy kind) noexcept {
  switch (kind) {
    case Degeneracy::not_spanning:
      return "not_spanning";
    case Degeneracy::cospherical:
      return "cospherical";
    case Degeneracy::cohyperplanar:
      return "cohyperplanar";
    case Degeneracy::dependent_simplex:
      return "dependent_simplex";
  }
  return "unknown";
}

GeneralPositionError::GeneralPositionError(Degeneracy kind,
                                           std::vector<std::size_t> indices)
    : GeometryError(describe(kind, indices), indices), kind_(kind) {}

}  // namespace delo
