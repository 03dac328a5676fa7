#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bnet {

// Dense nonnegative table over an ordered scope of network variables.
//
// Each scope variable carries the list of value indices still admissible;
// cells are mixed-radix over those lists with the last scope variable
// varying fastest, so size() == prod |allowed[i]| at all times. Restricting
// a variable physically removes the incompatible cells.
class PotentialTable {
 public:
  PotentialTable() = default;
  PotentialTable(std::vector<std::size_t> scope, std::vector<std::vector<std::size_t>> allowed,
                 double fill);

  // Unrestricted table: allowed[i] = {0, ..., cardinality(scope[i]) - 1}.
  static PotentialTable full(std::vector<std::size_t> scope,
                             std::span<const std::size_t> cardinalities, double fill);

  const std::vector<std::size_t>& scope() const { return scope_; }
  const std::vector<std::vector<std::size_t>>& allowed() const { return allowed_; }
  const std::vector<double>& cells() const { return cells_; }
  std::vector<double>& cells() { return cells_; }
  std::size_t size() const { return cells_.size(); }

  std::optional<std::size_t> position(std::size_t var) const;
  bool contains(std::size_t var) const { return position(var).has_value(); }
  double sum() const;

  // Deletes every cell whose `var` value differs from `value` and repacks.
  // Returns the number of cells scanned, 0 when var is outside the scope or
  // already restricted to exactly {value}. A value that has already been
  // removed leaves an empty table.
  std::size_t restrict_to(std::size_t var, std::size_t value);

  // Sets incompatible cells to zero without changing the shape. Returns the
  // number of cells scanned.
  std::size_t zero_incompatible(std::size_t var, std::size_t value);

  // Sums out every variable not in target_scope. target_scope must be a
  // subset of scope(), in scope order.
  PotentialTable marginalize_onto(std::span<const std::size_t> target_scope) const;

  // this *= numerator / denominator cell-wise, with 0/0 taken as 0. Both
  // operands share one scope that is a subset of this table's scope.
  void multiply_ratio(const PotentialTable& numerator, const PotentialTable& denominator);

  // Cell for a full assignment (one value index per network variable);
  // 0 when any scope value has been removed.
  double value_at(std::span<const std::size_t> assignment) const;

  bool operator==(const PotentialTable&) const = default;

 private:
  // Per scope position, the stride of that variable in `sub` (0 if absent).
  std::vector<std::size_t> strides_in(const PotentialTable& sub) const;
  std::vector<std::size_t> dims() const;

  std::vector<std::size_t> scope_;
  std::vector<std::vector<std::size_t>> allowed_;
  std::vector<double> cells_;
};

// Row-major strides for the given dimension sizes (last fastest).
std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims);

// Visits every cell index of a table with shape `dims` together with the
// matching index in a second table described by `strides` (0 for dimensions
// the second table lacks).
template <class Visitor>
void for_each_mapped(std::span<const std::size_t> dims, std::span<const std::size_t> strides,
                     Visitor&& visit) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  const std::size_t rank = dims.size();
  std::vector<std::size_t> counter(rank, 0);
  std::size_t mapped = 0;
  for (std::size_t i = 0; i < total; ++i) {
    visit(i, mapped);
    for (std::size_t p = rank; p-- > 0;) {
      if (++counter[p] < dims[p]) {
        mapped += strides[p];
        break;
      }
      mapped -= strides[p] * (dims[p] - 1);
      counter[p] = 0;
    }
  }
}

}  // namespace bnet
