#include "fluidc/partition.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "fluidc/graph.hpp"

namespace fluidc {

Partition::Partition(std::span<const std::uint32_t> raw_labels) {
  labels_.resize(raw_labels.size());
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  remap.reserve(64);
  for (std::size_t v = 0; v < raw_labels.size(); ++v) {
    const auto [it, inserted] =
        remap.try_emplace(raw_labels[v], static_cast<std::uint32_t>(block_sizes_.size()));
    if (inserted) block_sizes_.push_back(0);
    labels_[v] = it->second;
    ++block_sizes_[it->second];
  }
}

std::uint64_t Partition::largest_block() const {
  std::uint64_t best = 0;
  for (std::uint64_t s : block_sizes_) best = std::max(best, s);
  return best;
}

Partition load_partition(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
  std::uint64_t max_id_plus_one = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || view[first] == '#') continue;

    std::uint64_t v = 0, c = 0;
    const char* p = view.data() + first;
    const char* end = view.data() + view.size();
    auto r1 = std::from_chars(p, end, v);
    if (r1.ec != std::errc{}) throw ParseError(line_no, "expected vertex id");
    p = r1.ptr;
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    auto r2 = std::from_chars(p, end, c);
    if (r2.ec != std::errc{}) throw ParseError(line_no, "expected community id");
    p = r2.ptr;
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p != end) throw ParseError(line_no, "trailing tokens after 'v c' pair");

    entries.emplace_back(v, static_cast<std::uint32_t>(c));
    max_id_plus_one = std::max(max_id_plus_one, v + 1);
  }

  std::vector<std::uint32_t> labels(max_id_plus_one, kInvalidVertex);
  for (const auto& [v, c] : entries) {
    if (labels[v] != kInvalidVertex)
      throw std::runtime_error("community file assigns vertex " +
                               std::to_string(v) + " twice");
    labels[v] = c;
  }
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v] == kInvalidVertex)
      throw std::runtime_error("community file missing vertex " + std::to_string(v));

  return Partition(labels);
}

void save_partition(const Partition& p, std::ostream& out) {
  for (std::size_t v = 0; v < p.size(); ++v)
    out << v << " " << p.label_of(v) << "\n";
}

}  // namespace fluidc
