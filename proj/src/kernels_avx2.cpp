#include <nandgen/kernels.hpp>

#include <immintrin.h>

#include <bit>

namespace nandgen::kernels
{

namespace detail
{

void nand_scalar( std::uint64_t const* a, std::uint64_t const* b, std::uint64_t* out, std::size_t words );

namespace
{

void nand_avx2( std::uint64_t const* a, std::uint64_t const* b, std::uint64_t* out, std::size_t words )
{
  __m256i const ones = _mm256_set1_epi64x( -1 );
  std::size_t i = 0;
  for ( ; i + 4 <= words; i += 4 )
  {
    __m256i const va = _mm256_loadu_si256( reinterpret_cast<__m256i const*>( a + i ) );
    __m256i const vb = _mm256_loadu_si256( reinterpret_cast<__m256i const*>( b + i ) );
    _mm256_storeu_si256( reinterpret_cast<__m256i*>( out + i ), _mm256_xor_si256( _mm256_and_si256( va, vb ), ones ) );
  }
  nand_scalar( a + i, b + i, out + i, words - i );
}

std::size_t count_equal_avx2( std::uint64_t const* a, std::uint64_t const* b, std::size_t words )
{
  __m256i const ones = _mm256_set1_epi64x( -1 );
  std::size_t count = 0;
  std::size_t i = 0;
  alignas( 32 ) std::uint64_t lanes[4];
  for ( ; i + 4 <= words; i += 4 )
  {
    __m256i const va = _mm256_loadu_si256( reinterpret_cast<__m256i const*>( a + i ) );
    __m256i const vb = _mm256_loadu_si256( reinterpret_cast<__m256i const*>( b + i ) );
    _mm256_store_si256( reinterpret_cast<__m256i*>( lanes ), _mm256_xor_si256( _mm256_xor_si256( va, vb ), ones ) );
    count += static_cast<std::size_t>( _mm_popcnt_u64( lanes[0] ) + _mm_popcnt_u64( lanes[1] ) +
                                       _mm_popcnt_u64( lanes[2] ) + _mm_popcnt_u64( lanes[3] ) );
  }
  for ( ; i < words; ++i )
  {
    count += static_cast<std::size_t>( _mm_popcnt_u64( ~( a[i] ^ b[i] ) ) );
  }
  return count;
}

} // namespace

kernel_set const& avx2_kernels()
{
  static constexpr kernel_set set{ isa::avx2, &nand_avx2, &count_equal_avx2 };
  return set;
}

} // namespace detail

} // namespace nandgen::kernels
