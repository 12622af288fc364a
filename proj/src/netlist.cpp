#include <nandgen/netlist.hpp>

#include <nandgen/kernels.hpp>

#include <algorithm>

namespace nandgen
{

void validate( std::uint32_t num_inputs, std::span<nand_gate const> gates )
{
  if ( num_inputs == 0 )
  {
    throw structural_error( "a circuit needs at least one external input" );
  }
  if ( gates.empty() )
  {
    throw structural_error( "a circuit needs at least one gate" );
  }
  for ( std::size_t i = 0; i < gates.size(); ++i )
  {
    for ( auto const& src : { gates[i].a, gates[i].b } )
    {
      if ( src.kind == source_kind::external && src.index >= num_inputs )
      {
        throw structural_error( "gate " + std::to_string( i ) + " reads external input " + std::to_string( src.index ) +
                                " but the circuit has " + std::to_string( num_inputs ) + " inputs" );
      }
      if ( src.kind == source_kind::gate && src.index >= i )
      {
        throw structural_error( "gate " + std::to_string( i ) + " reads gate " + std::to_string( src.index ) +
                                " (only lower-indexed gates are allowed)" );
      }
    }
  }
}

nand_genome::nand_genome( std::uint32_t num_inputs, std::vector<nand_gate> gates )
    : num_inputs_( num_inputs ), gates_( std::move( gates ) )
{
  validate( num_inputs_, gates_ );
}

input_source nand_genome::gene( std::size_t g ) const
{
  auto const& gate = gates_.at( g / 2 );
  return g % 2 == 0 ? gate.a : gate.b;
}

std::uint32_t nand_genome::allele_count( std::size_t g ) const noexcept
{
  return num_inputs_ + static_cast<std::uint32_t>( g / 2 );
}

nand_genome genome_from_alleles( std::uint32_t num_inputs, std::span<std::uint32_t const> alleles )
{
  if ( alleles.size() % 2 != 0 )
  {
    throw arity_error( "allele list must hold two entries per gate" );
  }
  std::vector<nand_gate> gates( alleles.size() / 2 );
  for ( std::size_t i = 0; i < gates.size(); ++i )
  {
    gates[i] = { input_source::from_allele( num_inputs, alleles[2 * i] ),
                 input_source::from_allele( num_inputs, alleles[2 * i + 1] ) };
  }
  return nand_genome( num_inputs, std::move( gates ) );
}

bool evaluate( nand_genome const& genome, std::span<bool const> assignment )
{
  if ( assignment.size() != genome.num_inputs() )
  {
    throw arity_error( "assignment has " + std::to_string( assignment.size() ) + " values for a circuit with " +
                       std::to_string( genome.num_inputs() ) + " inputs" );
  }
  std::vector<bool> values( genome.num_gates() );
  auto const resolve = [&]( input_source src ) {
    return src.kind == source_kind::external ? assignment[src.index] : values[src.index];
  };
  for ( std::size_t i = 0; i < genome.num_gates(); ++i )
  {
    auto const& g = genome.gate( i );
    values[i] = !( resolve( g.a ) && resolve( g.b ) );
  }
  return values.back();
}

simulator::simulator( std::uint32_t num_inputs )
    : num_inputs_( num_inputs ), words_( table_words( num_inputs ) )
{
  if ( num_inputs > max_table_inputs )
  {
    throw capacity_error( "cannot tabulate a circuit with " + std::to_string( num_inputs ) + " inputs (limit " +
                          std::to_string( max_table_inputs ) + ")" );
  }
  static constexpr std::uint64_t low_patterns[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };
  inputs_.resize( std::size_t{ num_inputs } * words_ );
  for ( std::uint32_t k = 0; k < num_inputs; ++k )
  {
    for ( std::size_t w = 0; w < words_; ++w )
    {
      std::uint64_t pattern;
      if ( k < 6 )
      {
        pattern = low_patterns[k];
      }
      else
      {
        pattern = ( w >> ( k - 6 ) ) & 1u ? ~std::uint64_t{ 0 } : 0u;
      }
      inputs_[k * words_ + w] = pattern & ( w + 1 == words_ ? last_word_mask( num_inputs ) : ~std::uint64_t{ 0 } );
    }
  }
}

std::span<std::uint64_t const> simulator::input_pattern( std::uint32_t k ) const
{
  return std::span<std::uint64_t const>( inputs_ ).subspan( k * words_, words_ );
}

std::span<std::uint64_t const> simulator::simulate( nand_genome const& genome )
{
  if ( genome.num_inputs() != num_inputs_ )
  {
    throw arity_error( "simulator built for " + std::to_string( num_inputs_ ) + " inputs got a circuit with " +
                       std::to_string( genome.num_inputs() ) );
  }
  gates_.resize( genome.num_gates() * words_ );
  auto const& kernel = kernels::active();
  auto const source = [&]( input_source src ) -> std::uint64_t const* {
    return src.kind == source_kind::external ? &inputs_[src.index * words_] : &gates_[src.index * words_];
  };
  for ( std::size_t i = 0; i < genome.num_gates(); ++i )
  {
    auto const& g = genome.gate( i );
    kernel.nand( source( g.a ), source( g.b ), &gates_[i * words_], words_ );
  }
  auto* out = &gates_[( genome.num_gates() - 1 ) * words_];
  out[words_ - 1] &= last_word_mask( num_inputs_ );
  return { out, words_ };
}

truth_table simulator::run( nand_genome const& genome )
{
  auto const out = simulate( genome );
  return truth_table::from_words( num_inputs_, std::vector<std::uint64_t>( out.begin(), out.end() ) );
}

std::size_t simulator::matches( nand_genome const& genome, truth_table const& target )
{
  if ( target.num_inputs() != genome.num_inputs() )
  {
    throw arity_error( "target has " + std::to_string( target.num_inputs() ) + " inputs, circuit has " +
                       std::to_string( genome.num_inputs() ) );
  }
  auto const out = simulate( genome );
  auto const equal = kernels::active().count_equal( out.data(), target.words().data(), words_ );
  // Padding bits are zero in both tables and always compare equal.
  return equal - ( words_ * 64 - target.num_rows() );
}

truth_table truth_table_of( nand_genome const& genome )
{
  simulator sim( genome.num_inputs() );
  return sim.run( genome );
}

fitness_value fitness( nand_genome const& genome, truth_table const& target )
{
  if ( target.num_inputs() != genome.num_inputs() )
  {
    throw arity_error( "target has " + std::to_string( target.num_inputs() ) + " inputs, circuit has " +
                       std::to_string( genome.num_inputs() ) );
  }
  simulator sim( genome.num_inputs() );
  return { static_cast<std::uint32_t>( sim.matches( genome, target ) ), static_cast<std::uint32_t>( target.num_rows() ) };
}

nand_genome prune_dead_gates( nand_genome const& genome )
{
  auto const g = genome.num_gates();
  std::vector<bool> live( g, false );
  live[g - 1] = true;
  for ( std::size_t i = g; i-- > 0; )
  {
    if ( !live[i] )
    {
      continue;
    }
    for ( auto const& src : { genome.gate( i ).a, genome.gate( i ).b } )
    {
      if ( src.kind == source_kind::gate )
      {
        live[src.index] = true;
      }
    }
  }

  std::vector<std::uint32_t> renumber( g, 0 );
  std::vector<nand_gate> kept;
  for ( std::size_t i = 0; i < g; ++i )
  {
    if ( !live[i] )
    {
      continue;
    }
    renumber[i] = static_cast<std::uint32_t>( kept.size() );
    auto remap = [&]( input_source src ) {
      return src.kind == source_kind::gate ? input_source::gate( renumber[src.index] ) : src;
    };
    kept.push_back( { remap( genome.gate( i ).a ), remap( genome.gate( i ).b ) } );
  }
  return nand_genome( genome.num_inputs(), std::move( kept ) );
}

namespace
{

void put_u32( std::string& out, std::uint32_t v )
{
  for ( int shift = 0; shift < 32; shift += 8 )
  {
    out.push_back( static_cast<char>( ( v >> shift ) & 0xFFu ) );
  }
}

} // namespace

std::string canonical_key( nand_genome const& genome )
{
  auto const pruned = prune_dead_gates( genome );
  std::string key;
  key.reserve( 8 + 8 * pruned.num_gates() );
  put_u32( key, pruned.num_inputs() );
  put_u32( key, static_cast<std::uint32_t>( pruned.num_gates() ) );
  for ( auto const& gate : pruned.gates() )
  {
    put_u32( key, gate.a.allele( pruned.num_inputs() ) );
    put_u32( key, gate.b.allele( pruned.num_inputs() ) );
  }
  return key;
}

std::string to_hex( std::string_view bytes )
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve( bytes.size() * 2 );
  for ( unsigned char c : bytes )
  {
    out.push_back( digits[c >> 4] );
    out.push_back( digits[c & 0xFu] );
  }
  return out;
}

} // namespace nandgen
