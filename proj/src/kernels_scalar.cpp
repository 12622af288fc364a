#include <nandgen/kernels.hpp>

#include <bit>

namespace nandgen::kernels
{

namespace detail
{

void nand_scalar( std::uint64_t const* a, std::uint64_t const* b, std::uint64_t* out, std::size_t words )
{
  for ( std::size_t i = 0; i < words; ++i )
  {
    out[i] = ~( a[i] & b[i] );
  }
}

std::size_t count_equal_scalar( std::uint64_t const* a, std::uint64_t const* b, std::size_t words )
{
  std::size_t count = 0;
  for ( std::size_t i = 0; i < words; ++i )
  {
    count += static_cast<std::size_t>( std::popcount( ~( a[i] ^ b[i] ) ) );
  }
  return count;
}

} // namespace detail

kernel_set const& scalar_kernels()
{
  static constexpr kernel_set set{ isa::scalar, &detail::nand_scalar, &detail::count_equal_scalar };
  return set;
}

} // namespace nandgen::kernels
