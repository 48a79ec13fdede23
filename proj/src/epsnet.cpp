#include "artgallery/epsnet.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace artgallery {

NetResult extract_net(const CellComplex& complex, const FractionalSolution& fractional) {
  NetResult out;
  const auto& support = fractional.support;
  if (complex.guards.size() != support.size())
    throw std::invalid_argument("extract_net: complex does not match the support");
  if (support.empty()) return out;

  // Guard indices at one position are interchangeable; use the first.
  std::vector<std::uint32_t> first(support.size());
  {
    std::map<Point, std::uint32_t> index;
    for (std::uint32_t i = 0; i < support.size(); ++i)
      first[i] = index.emplace(support[i], i).first->second;
  }

  std::set<std::vector<std::uint32_t>> ranges;
  for (const auto& c : complex.cells) {
    if (c.label.size() < fractional.T) continue;
    ++out.heavy_cells;
    std::vector<std::uint32_t> r;
    for (const auto g : c.label) r.push_back(first[g]);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (r.empty()) throw InvariantViolation("heavy cell with an empty label");
    ranges.insert(std::move(r));
  }
  out.heavy_ranges = ranges.size();

  // Net parameter 1/mass >= 1: every heavy cell sees every support point.
  if (support.size() <= fractional.T) {
    out.net.push_back(support.front());
    return out;
  }

  std::vector<std::vector<std::uint32_t>> open(ranges.begin(), ranges.end());
  while (!open.empty()) {
    std::map<std::uint32_t, std::size_t> hits;
    for (const auto& r : open)
      for (const auto g : r) ++hits[g];
    std::uint32_t pick = 0;
    std::size_t most = 0;
    for (const auto& [g, count] : hits) {
      if (count > most) {
        most = count;
        pick = g;
      }
    }
    out.net.push_back(support[pick]);
    std::erase_if(open, [&](const auto& r) { return std::binary_search(r.begin(), r.end(), pick); });
  }
  return out;
}

NetResult extract_net(const Polygon& polygon, const FractionalSolution& fractional) {
  return extract_net(build_complex(polygon, fractional.support), fractional);
}

}  // namespace artgallery
