#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace delo {

/// Bad arguments: dimension mismatch, non-finite values, out-of-range indices,
/// violated size guards.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures caused by the geometry of otherwise well-formed input.
/// Carries the point indices that witness the problem.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(const std::string& what, std::vector<std::size_t> indices)
      : std::runtime_error(what), indices_(std::move(indices)) {}

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Two points with identical coordinates. indices() holds the pair.
class DuplicatePointError : public GeometryError {
 public:
  DuplicatePointError(std::size_t first, std::size_t second);
};

enum class Degeneracy {
  not_spanning,      // all points on a common (k-1)-flat
  cospherical,       // k+2 points on a common sphere
  cohyperplanar,     // k+2 points on a common hyperplane
  dependent_simplex  // a simplex argument is affinely dependent
};

const char* to_string(Degeneracy kind) noexcept;

/// Input is not in general position; indices() holds the violating subset.
class GeneralPositionError : public GeometryError {
 public:
  GeneralPositionError(Degeneracy kind, std::vector<std::size_t> indices);

  Degeneracy kind() const noexcept { return kind_; }

 private:
  Degeneracy kind_;
};

}  // namespace delo
