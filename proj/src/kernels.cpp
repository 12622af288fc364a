#include <nandgen/kernels.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nandgen::kernels
{

#ifdef NANDGEN_HAVE_AVX2
namespace detail
{
kernel_set const& avx2_kernels();
}
#endif

std::string_view isa_name( isa which )
{
  switch ( which )
  {
  case isa::scalar:
    return "scalar";
  case isa::avx2:
    return "avx2";
  }
  return "unknown";
}

bool isa_available( isa which )
{
  switch ( which )
  {
  case isa::scalar:
    return true;
  case isa::avx2:
#ifdef NANDGEN_HAVE_AVX2
    return __builtin_cpu_supports( "avx2" ) && __builtin_cpu_supports( "popcnt" );
#else
    return false;
#endif
  }
  return false;
}

kernel_set const& kernels_for( isa which )
{
  if ( !isa_available( which ) )
  {
    throw std::invalid_argument( "kernel variant not available: " + std::string( isa_name( which ) ) );
  }
#ifdef NANDGEN_HAVE_AVX2
  if ( which == isa::avx2 )
  {
    return detail::avx2_kernels();
  }
#endif
  return scalar_kernels();
}

namespace
{

kernel_set const& select()
{
  if ( char const* forced = std::getenv( "NANDGEN_ISA" ) )
  {
    std::string_view const name{ forced };
    if ( name == "scalar" )
    {
      return scalar_kernels();
    }
    if ( name == "avx2" && isa_available( isa::avx2 ) )
    {
      return kernels_for( isa::avx2 );
    }
  }
  if ( isa_available( isa::avx2 ) )
  {
    return kernels_for( isa::avx2 );
  }
  return scalar_kernels();
}

} // namespace

kernel_set const& active()
{
  static kernel_set const& chosen = select();
  return chosen;
}

} // namespace nandgen::kernels
