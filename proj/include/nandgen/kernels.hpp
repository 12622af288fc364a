#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

/*
  Bit-sliced truth-table kernels.

  A truth table of an n-input function is stored as ceil(2^n / 64) words,
  row i at bit (i % 64) of word (i / 64). Evaluating one NAND gate for every
  row at once is a word-wise ~(a & b); comparing two tables is a popcount of
  ~(a ^ b). Both loops have a scalar reference and an AVX2 variant; the
  variant is chosen once at startup from the CPU feature bits.
*/

namespace nandgen::kernels
{

enum class isa
{
  scalar,
  avx2
};

struct kernel_set
{
  isa id;
  /// out[i] = ~(a[i] & b[i]); out may alias a or b.
  void ( *nand )( std::uint64_t const* a, std::uint64_t const* b, std::uint64_t* out, std::size_t words );
  /// Number of equal bit positions over all words.
  std::size_t ( *count_equal )( std::uint64_t const* a, std::uint64_t const* b, std::size_t words );
};

kernel_set const& scalar_kernels();

/// True when the binary carries the variant and the CPU can run it.
bool isa_available( isa which );

/// Kernel set for a specific variant; throws std::invalid_argument when unavailable.
kernel_set const& kernels_for( isa which );

/// The variant selected for this process: the best available one, unless the
/// NANDGEN_ISA environment variable names another ("scalar" or "avx2").
kernel_set const& active();

std::string_view isa_name( isa which );

inline void nand( std::span<std::uint64_t const> a, std::span<std::uint64_t const> b, std::span<std::uint64_t> out )
{
  active().nand( a.data(), b.data(), out.data(), out.size() );
}

inline std::size_t count_equal( std::span<std::uint64_t const> a, std::span<std::uint64_t const> b )
{
  return active().count_equal( a.data(), b.data(), a.size() );
}

} // namespace nandgen::kernels
