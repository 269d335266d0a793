#include "gwqed/scan.hpp"

#include "gwqed/errors.hpp"

namespace gwqed {

void ScanResult::add_row(std::vector<double> row) {
  if (row.size() != header.size()) throw DomainError("scan row arity does not match header");
  rows.push_back(std::move(row));
}

std::vector<double> ScanResult::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw DomainError("no scan column named " + name);
  const auto c = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
  g.back() = hi;
  return g;
}

unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : std::min(hw, 16U);
}

}  // namespace gwqed
