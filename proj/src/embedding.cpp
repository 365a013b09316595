#include "urysohn/embedding.hpp"

#include <map>

namespace urysohn {

std::vector<PermutationIsometry> permutation_closure(const std::vector<PermutationIsometry>& generators,
                                                     std::size_t degree) {
  for (const auto& g : generators)
    if (g.size() != degree || !is_permutation(g.images))
      throw std::invalid_argument("permutation_closure: generator is not a permutation of the given degree");
  std::vector<PermutationIsometry> elements{PermutationIsometry::identity(degree)};
  std::map<std::vector<std::size_t>, std::size_t> seen{{elements.front().images, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      PermutationIsometry next = elements[head] * g;
      if (seen.emplace(next.images, elements.size()).second) elements.push_back(std::move(next));
    }
  }
  return elements;
}

}  // namespace urysohn
