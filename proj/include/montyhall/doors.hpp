#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace monty {

// Door labels are 1-based throughout: door d of an N-door game satisfies
// 1 <= d <= N. Vectors indexed by door use slot d-1.
using Door = int;

// An immutable set of door labels, kept sorted ascending. Used for the
// host's opened set O and as a deterministic map key (lexicographic order
// on the sorted labels).
class DoorSet {
 public:
  DoorSet() = default;
  explicit DoorSet(std::vector<Door> doors) : doors_(std::move(doors)) {
    std::sort(doors_.begin(), doors_.end());
    doors_.erase(std::unique(doors_.begin(), doors_.end()), doors_.end());
  }

  const std::vector<Door>& doors() const { return doors_; }
  int size() const { return static_cast<int>(doors_.size()); }
  bool empty() const { return doors_.empty(); }
  bool contains(Door d) const {
    return std::binary_search(doors_.begin(), doors_.end(), d);
  }
  bool intersects(Door a) const { return contains(a); }
  bool intersects(Door a, Door b) const { return contains(a) || contains(b); }

  auto operator<=>(const DoorSet&) const = default;

  // "2+3" -- the set syntax used by the CLI and the model file format.
  std::string to_string() const {
    std::string out;
    for (size_t i = 0; i < doors_.size(); ++i) {
      if (i) out += '+';
      out += std::to_string(doors_[i]);
    }
    return out;
  }

 private:
  std::vector<Door> doors_;
};

// All doors 1..n except the listed exclusions, ascending.
std::vector<Door> doors_excluding(int n, std::initializer_list<Door> excluded);

// All k-subsets of `pool` (assumed sorted ascending), in ascending
// lexicographic order. Caller is responsible for keeping the count sane.
std::vector<DoorSet> k_subsets(const std::vector<Door>& pool, int k);

// Binomial coefficient as a double (exact for the desk-scale arguments
// used here; large values only feed cap checks and error messages).
double binomial(int n, int k);

}  // namespace monty
