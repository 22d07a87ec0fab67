#include <atomic>
#include <cstdlib>
#include <string>

#include "kisslat/error.hpp"
#include "kisslat/kernels.hpp"

namespace kisslat::kernels {

namespace {

// -1: detect; otherwise the pinned Isa value.
std::atomic<int> g_pinned{-1};

Isa detect() {
  if (const char* env = std::getenv("KISSLAT_ISA"); env != nullptr && std::string_view(env) == "scalar") {
    return Isa::scalar;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  const int pinned = g_pinned.load(std::memory_order_relaxed);
  if (pinned >= 0) return static_cast<Isa>(pinned);
  static const Isa detected = detect();
  return detected;
}

void set_isa(std::optional<Isa> isa) {
  if (isa && !isa_supported(*isa)) {
    throw DomainError("ISA " + std::string(isa_name(*isa)) + " is not supported here");
  }
  g_pinned.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist, Isa isa) {
  if (isa == Isa::avx2) {
    avx2::accumulate_weights(base, rows, hist);
  } else {
    scalar::accumulate_weights(base, rows, hist);
  }
}

std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep, Isa isa) {
  if (keep.size() != words.size()) throw DomainError("filter_in_code: keep/words size mismatch");
  return isa == Isa::avx2 ? avx2::filter_in_code(checks, words, keep) : scalar::filter_in_code(checks, words, keep);
}

}  // namespace kisslat::kernels
