#include "montyhall/doors.hpp"

namespace monty {

std::vector<Door> doors_excluding(int n, std::initializer_list<Door> excluded) {
  std::vector<Door> out;
  out.reserve(n);
  for (Door d = 1; d <= n; ++d) {
    bool skip = false;
    for (Door e : excluded) skip |= (d == e);
    if (!skip) out.push_back(d);
  }
  return out;
}

std::vector<DoorSet> k_subsets(const std::vector<Door>& pool, int k) {
  std::vector<DoorSet> out;
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Door> doors(k);
    for (int i = 0; i < k; ++i) doors[i] = pool[idx[i]];
    out.emplace_back(std::move(doors));
    // advance the combination
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace monty
