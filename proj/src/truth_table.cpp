#include <nandgen/netlist.hpp>

#include <array>
#include <bit>

namespace nandgen
{

std::size_t table_words( std::uint32_t num_inputs ) noexcept
{
  return num_inputs <= 6 ? 1u : std::size_t{ 1 } << ( num_inputs - 6 );
}

std::uint64_t last_word_mask( std::uint32_t num_inputs ) noexcept
{
  return num_inputs >= 6 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << ( std::size_t{ 1 } << num_inputs ) ) - 1;
}

truth_table::truth_table( std::uint32_t num_inputs )
    : num_inputs_( num_inputs )
{
  if ( num_inputs > max_table_inputs )
  {
    throw capacity_error( "truth table with " + std::to_string( num_inputs ) + " inputs exceeds the limit of " +
                          std::to_string( max_table_inputs ) );
  }
  words_.assign( table_words( num_inputs ), 0u );
}

truth_table truth_table::from_bits( std::string_view rows )
{
  if ( rows.size() < 2 || !std::has_single_bit( rows.size() ) )
  {
    throw format_error( "truth table length " + std::to_string( rows.size() ) + " is not a power of two >= 2" );
  }
  auto const num_inputs = static_cast<std::uint32_t>( std::countr_zero( rows.size() ) );
  truth_table table( num_inputs );
  for ( std::size_t i = 0; i < rows.size(); ++i )
  {
    char const c = rows[i];
    if ( c != '0' && c != '1' )
    {
      throw format_error( "truth table character " + std::to_string( i ) + " is not 0 or 1" );
    }
    table.set( i, c == '1' );
  }
  return table;
}

truth_table truth_table::from_words( std::uint32_t num_inputs, std::vector<std::uint64_t> words )
{
  truth_table table( num_inputs );
  if ( words.size() != table.words_.size() )
  {
    throw arity_error( "expected " + std::to_string( table.words_.size() ) + " words for " +
                       std::to_string( num_inputs ) + " inputs, got " + std::to_string( words.size() ) );
  }
  words.back() &= last_word_mask( num_inputs );
  table.words_ = std::move( words );
  return table;
}

bool truth_table::get( std::size_t row ) const
{
  if ( row >= num_rows() )
  {
    throw std::out_of_range( "truth table row out of range" );
  }
  return ( words_[row >> 6] >> ( row & 63u ) ) & 1u;
}

void truth_table::set( std::size_t row, bool value )
{
  if ( row >= num_rows() )
  {
    throw std::out_of_range( "truth table row out of range" );
  }
  auto const bit = std::uint64_t{ 1 } << ( row & 63u );
  if ( value )
  {
    words_[row >> 6] |= bit;
  }
  else
  {
    words_[row >> 6] &= ~bit;
  }
}

std::string truth_table::to_bits() const
{
  std::string out( num_rows(), '0' );
  for ( std::size_t i = 0; i < out.size(); ++i )
  {
    if ( get( i ) )
    {
      out[i] = '1';
    }
  }
  return out;
}

namespace
{

struct preset
{
  std::string_view name;
  std::string_view rows;
  std::uint32_t gates;
};

constexpr std::array<preset, 6> presets{ {
    { "and", "0001", 2 },
    { "or", "0111", 3 },
    { "nor", "1000", 4 },
    { "xor", "0110", 4 },
    { "xnor", "1001", 5 },
    { "nand", "1110", 1 },
} };

preset const* find_preset( std::string_view name )
{
  for ( auto const& p : presets )
  {
    if ( p.name == name )
    {
      return &p;
    }
  }
  return nullptr;
}

} // namespace

std::optional<truth_table> preset_table( std::string_view name )
{
  if ( auto const* p = find_preset( name ) )
  {
    return truth_table::from_bits( p->rows );
  }
  return std::nullopt;
}

std::optional<std::uint32_t> preset_gate_count( std::string_view name )
{
  if ( auto const* p = find_preset( name ) )
  {
    return p->gates;
  }
  return std::nullopt;
}

truth_table parse_target( std::string_view text )
{
  if ( text.starts_with( "tt:" ) )
  {
    return truth_table::from_bits( text.substr( 3 ) );
  }
  if ( auto table = preset_table( text ) )
  {
    return *table;
  }
  throw format_error( "unknown target '" + std::string( text ) +
                      "' (expected and, or, nor, xor, xnor, nand or tt:<bits>)" );
}

} // namespace nandgen
