#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Hot inner loops shared by the propagation algorithms and the partition
// metrics. Everything that is O(E) per superstep funnels through these three
// primitives: gathering per-neighbor community labels along a CSR adjacency
// row, and counting label agreement along a row. All kernels are pure
// integer moves/compares, so every backend produces bit-identical results;
// the scalar versions are the reference, the SIMD variants are selected at
// runtime and equivalence-tested against them.
namespace fluidc::kernels {

enum class Backend { scalar, avx2, neon };

// out[i] = table[idx[i]]
using GatherFn = void (*)(const std::uint32_t* table, const std::uint32_t* idx,
                          std::size_t n, std::uint32_t* out);
// |{ i : vals[i] == target }|
using CountEqFn = std::size_t (*)(const std::uint32_t* vals, std::size_t n,
                                  std::uint32_t target);
// |{ i : table[idx[i]] == target }|
using CountGatherEqFn = std::size_t (*)(const std::uint32_t* table,
                                        const std::uint32_t* idx, std::size_t n,
                                        std::uint32_t target);

extern GatherFn gather_u32;
extern CountEqFn count_eq_u32;
extern CountGatherEqFn count_gather_eq_u32;

// Picks the widest backend the CPU supports. Called once at startup.
void select_best();

// Force a specific backend (tests, benchmarking). Returns false and leaves
// the dispatch untouched if the backend is unavailable on this machine.
bool select(Backend backend);

Backend active();
std::string_view backend_name(Backend backend);
bool available(Backend backend);

namespace detail {
void gather_u32_scalar(const std::uint32_t* table, const std::uint32_t* idx,
                       std::size_t n, std::uint32_t* out);
std::size_t count_eq_u32_scalar(const std::uint32_t* vals, std::size_t n,
                                std::uint32_t target);
std::size_t count_gather_eq_u32_scalar(const std::uint32_t* table,
                                       const std::uint32_t* idx, std::size_t n,
                                       std::uint32_t target);
}  // namespace detail

}  // namespace fluidc::kernels
