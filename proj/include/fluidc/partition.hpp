#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace fluidc {

// Total assignment of vertices to community labels. Labels are compacted to
// dense 0-based ids in order of first appearance, so no label is empty and
// two partitions that differ only by a relabeling compact to the same label
// vector up to permutation. Immutable after construction.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::span<const std::uint32_t> raw_labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t block_count() const { return block_sizes_.size(); }

  std::uint32_t label_of(std::size_t v) const { return labels_[v]; }
  std::span<const std::uint32_t> labels() const { return labels_; }
  const std::vector<std::uint64_t>& block_sizes() const { return block_sizes_; }

  // Size of the largest block; 0 for an empty partition.
  std::uint64_t largest_block() const;

  bool operator==(const Partition& other) const = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::vector<std::uint64_t> block_sizes_;
};

// Community file format: lines "v c"; '#' comments allowed. Every vertex in
// 0..max_id must appear exactly once.
Partition load_partition(std::istream& in);
void save_partition(const Partition& p, std::ostream& out);

}  // namespace fluidc
