#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lopcut {

/// A linear ordering of the elements 1..n.
struct Permutation {
  std::vector<int> order;

  std::size_t size() const noexcept { return order.size(); }
  /// True iff `order` is a bijection onto {1..order.size()}.
  bool valid() const;
  /// position[v] for v in 1..n (index 0 unused).
  std::vector<int> positions() const;
  Permutation reversed() const;

  static Permutation identity(int n);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

std::string to_string(const Permutation& p);

/// Linear Ordering Problem instance: maximize the total weight c_ij of the
/// pairs (i, j) placed i before j. Diagonal entries are stored as 0.
class LopInstance {
 public:
  /// Throws DomainError if n < 2 or costs.size() != n*n.
  LopInstance(int n, std::vector<std::int64_t> costs, std::string name = {});

  int n() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// 1-based access, i != j.
  std::int64_t cost(int i, int j) const { return costs_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))]; }
  const std::vector<std::int64_t>& costs() const noexcept { return costs_; }

  /// Sum over i < j of (c_ij + c_ji); every ordering's value plus its
  /// reversal's value equals this.
  std::int64_t pair_total() const;

  friend bool operator==(const LopInstance&, const LopInstance&) = default;

 private:
  int n_;
  std::vector<std::int64_t> costs_;
  std::string name_;
};

/// Reads the matrix format:
///
///     # comment lines anywhere
///     n
///     c_11 ... c_1n
///     ...
///     c_n1 ... c_nn
///
/// A comment of the form "# name: <label>" sets the instance name.
/// Throws ParseError (with line number) or DomainError (n < 2).
LopInstance parse_instance(std::istream& in);
LopInstance parse_instance(std::string_view text);

void write_instance(std::ostream& out, const LopInstance& inst);
std::string serialize_instance(const LopInstance& inst);

/// Deterministic instance with off-diagonal costs uniform in [lo, hi].
LopInstance random_instance(int n, std::uint64_t seed, std::int64_t lo, std::int64_t hi);

std::int64_t permutation_value(const LopInstance& inst, const Permutation& p);

}  // namespace lopcut
