#include "bnet/potential.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bnet {

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  std::size_t s = 1;
  for (std::size_t p = dims.size(); p-- > 0;) {
    strides[p] = s;
    s *= dims[p];
  }
  return strides;
}

PotentialTable::PotentialTable(std::vector<std::size_t> scope,
                               std::vector<std::vector<std::size_t>> allowed, double fill)
    : scope_(std::move(scope)), allowed_(std::move(allowed)) {
  if (scope_.size() != allowed_.size())
    throw std::invalid_argument("potential scope and allowed lists differ in length");
  std::size_t n = 1;
  for (const auto& a : allowed_) n *= a.size();
  cells_.assign(n, fill);
}

PotentialTable PotentialTable::full(std::vector<std::size_t> scope,
                                    std::span<const std::size_t> cardinalities, double fill) {
  std::vector<std::vector<std::size_t>> allowed;
  allowed.reserve(scope.size());
  for (std::size_t var : scope) {
    std::vector<std::size_t> values(cardinalities[var]);
    std::iota(values.begin(), values.end(), std::size_t{0});
    allowed.push_back(std::move(values));
  }
  return PotentialTable(std::move(scope), std::move(allowed), fill);
}

std::optional<std::size_t> PotentialTable::position(std::size_t var) const {
  auto it = std::find(scope_.begin(), scope_.end(), var);
  if (it == scope_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - scope_.begin());
}

double PotentialTable::sum() const { return std::accumulate(cells_.begin(), cells_.end(), 0.0); }

std::vector<std::size_t> PotentialTable::dims() const {
  std::vector<std::size_t> d;
  d.reserve(allowed_.size());
  for (const auto& a : allowed_) d.push_back(a.size());
  return d;
}

std::vector<std::size_t> PotentialTable::strides_in(const PotentialTable& sub) const {
  const auto sub_strides = row_major_strides(sub.dims());
  std::vector<std::size_t> strides(scope_.size(), 0);
  for (std::size_t q = 0; q < sub.scope_.size(); ++q) {
    auto p = position(sub.scope_[q]);
    if (!p) throw std::logic_error("sub-table scope is not contained in table scope");
    if (allowed_[*p] != sub.allowed_[q])
      throw std::logic_error("sub-table restriction differs from table restriction");
    strides[*p] = sub_strides[q];
  }
  return strides;
}

std::size_t PotentialTable::restrict_to(std::size_t var, std::size_t value) {
  auto pos = position(var);
  if (!pos) return 0;
  auto& values = allowed_[*pos];
  if (values.size() == 1 && values.front() == value) return 0;

  const std::size_t scanned = cells_.size();
  auto keep_it = std::find(values.begin(), values.end(), value);
  if (keep_it == values.end()) {
    values.clear();
    cells_.clear();
    return scanned;
  }
  const std::size_t keep = static_cast<std::size_t>(keep_it - values.begin());
  const std::size_t card = values.size();

  // Cells split into blocks of `inner` consecutive entries per value of var.
  std::size_t inner = 1;
  for (std::size_t p = *pos + 1; p < allowed_.size(); ++p) inner *= allowed_[p].size();
  const std::size_t outer = cells_.size() / (inner * card);

  std::vector<double> packed;
  packed.reserve(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    auto first = cells_.begin() + static_cast<std::ptrdiff_t>((o * card + keep) * inner);
    packed.insert(packed.end(), first, first + static_cast<std::ptrdiff_t>(inner));
  }
  cells_ = std::move(packed);
  values = {value};
  return scanned;
}

std::size_t PotentialTable::zero_incompatible(std::size_t var, std::size_t value) {
  auto pos = position(var);
  if (!pos) return 0;
  const auto& values = allowed_[*pos];
  std::size_t inner = 1;
  for (std::size_t p = *pos + 1; p < allowed_.size(); ++p) inner *= allowed_[p].size();
  const std::size_t card = values.size();
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const std::size_t digit = (i / inner) % card;
    if (values[digit] != value) cells_[i] = 0.0;
  }
  return cells_.size();
}

PotentialTable PotentialTable::marginalize_onto(std::span<const std::size_t> target_scope) const {
  std::vector<std::vector<std::size_t>> target_allowed;
  target_allowed.reserve(target_scope.size());
  for (std::size_t var : target_scope) {
    auto p = position(var);
    if (!p) throw std::logic_error("marginalization target is not contained in table scope");
    target_allowed.push_back(allowed_[*p]);
  }
  PotentialTable out({target_scope.begin(), target_scope.end()}, std::move(target_allowed), 0.0);
  const auto d = dims();
  const auto strides = strides_in(out);
  auto& dst = out.cells_;
  for_each_mapped(d, strides, [&](std::size_t i, std::size_t j) { dst[j] += cells_[i]; });
  return out;
}

void PotentialTable::multiply_ratio(const PotentialTable& numerator,
                                    const PotentialTable& denominator) {
  if (numerator.scope_ != denominator.scope_ || numerator.allowed_ != denominator.allowed_)
    throw std::logic_error("ratio operands have different shapes");
  std::vector<double> ratio(numerator.cells_.size());
  for (std::size_t k = 0; k < ratio.size(); ++k) {
    const double den = denominator.cells_[k];
    ratio[k] = den == 0.0 ? 0.0 : numerator.cells_[k] / den;
  }
  const auto d = dims();
  const auto strides = strides_in(numerator);
  for_each_mapped(d, strides, [&](std::size_t i, std::size_t j) { cells_[i] *= ratio[j]; });
}

double PotentialTable::value_at(std::span<const std::size_t> assignment) const {
  std::size_t index = 0;
  for (std::size_t p = 0; p < scope_.size(); ++p) {
    const auto& values = allowed_[p];
    auto it = std::find(values.begin(), values.end(), assignment[scope_[p]]);
    if (it == values.end()) return 0.0;
    index = index * values.size() + static_cast<std::size_t>(it - values.begin());
  }
  return cells_.empty() ? 0.0 : cells_[index];
}

}  // namespace bnet
