#pragma once

// Data-parallel inner loops of the code and lattice enumerations.
//
// Every kernel has a portable scalar reference and an AVX2 variant with
// identical results; the variant is chosen at runtime from the CPU features
// (override with set_isa or the KISSLAT_ISA=scalar environment variable).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace kisslat::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
// Best supported ISA, honouring KISSLAT_ISA and set_isa.
Isa active_isa();
// Pins the ISA for the process (nullopt restores detection). Throws if the
// requested ISA is not supported by this CPU/build.
void set_isa(std::optional<Isa> isa);

// Index w counts words of Hamming weight w (w <= 32).
using WeightHistogram = std::array<std::uint64_t, 33>;

// Adds the weights of all 2^rows.size() words base ^ (GF(2) span of rows)
// to hist, visiting the combinations in Gray-code order.
void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist,
                        Isa isa = active_isa());

// keep[i] = 1 iff popcount(words[i] & h) is even for every h in checks,
// i.e. words[i] lies in the code whose parity checks are `checks`.
// Returns the number of kept words. keep.size() must equal words.size().
std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep, Isa isa = active_isa());

namespace scalar {
void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist);
std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep);
}  // namespace scalar

namespace avx2 {
bool compiled();
void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist);
std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep);
}  // namespace avx2

}  // namespace kisslat::kernels
