#include <nandgen/oracle.hpp>

#include <nandgen/kernels.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <limits>
#include <set>

namespace nandgen
{

std::optional<std::uint64_t> genome_count( std::uint32_t num_inputs, std::uint32_t num_gates )
{
  constexpr auto limit = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for ( std::uint32_t i = 0; i < num_gates; ++i )
  {
    auto const choices = std::uint64_t{ num_inputs } + i;
    for ( int pin = 0; pin < 2; ++pin )
    {
      if ( choices != 0 && total > limit / choices )
      {
        return std::nullopt;
      }
      total *= choices;
    }
  }
  return total;
}

void check_budget( std::uint32_t num_inputs, std::uint32_t num_gates, std::uint64_t budget )
{
  auto const count = genome_count( num_inputs, num_gates );
  if ( !count || *count > budget )
  {
    throw capacity_error( "enumerating " + std::to_string( num_gates ) + "-gate circuits over " +
                          std::to_string( num_inputs ) + " inputs needs " +
                          ( count ? std::to_string( *count ) : std::string( "more than 2^64" ) ) +
                          " genomes, over the budget of " + std::to_string( budget ) );
  }
}

void enumerate_genomes( std::uint32_t num_inputs, std::uint32_t num_gates,
                        std::function<bool( nand_genome const& )> const& visit, std::uint64_t budget )
{
  if ( num_inputs == 0 || num_gates == 0 )
  {
    throw arity_error( "enumeration needs at least one input and one gate" );
  }
  check_budget( num_inputs, num_gates, budget );
  std::vector<std::uint32_t> alleles( 2 * std::size_t{ num_gates }, 0u );
  for ( ;; )
  {
    if ( !visit( genome_from_alleles( num_inputs, alleles ) ) )
    {
      return;
    }
    // Odometer increment, last gene fastest.
    std::size_t g = alleles.size();
    while ( g > 0 )
    {
      --g;
      if ( ++alleles[g] < num_inputs + g / 2 )
      {
        break;
      }
      alleles[g] = 0;
      if ( g == 0 )
      {
        return;
      }
    }
  }
}

namespace
{

/*! Depth-first walk over the allele tuple in lexicographic order. The table
 *  of gate i is computed once per (a, b) choice and shared by every suffix. */
class solution_search
{
public:
  solution_search( truth_table const& target, std::uint32_t num_gates )
      : target_( target ),
        num_inputs_( target.num_inputs() ),
        num_gates_( num_gates ),
        words_( table_words( num_inputs_ ) ),
        mask_( last_word_mask( num_inputs_ ) ),
        kernel_( kernels::active() ),
        tables_( ( num_inputs_ + num_gates_ ) * words_ ),
        alleles_( 2 * std::size_t{ num_gates } )
  {
    simulator sim( num_inputs_ );
    for ( std::uint32_t k = 0; k < num_inputs_; ++k )
    {
      std::ranges::copy( sim.input_pattern( k ), tables_.begin() + k * words_ );
    }
  }

  template<typename OnSolution>
  void run( OnSolution&& on_solution )
  {
    descend( 0, on_solution );
  }

  std::span<std::uint32_t const> alleles() const noexcept { return alleles_; }

private:
  std::uint64_t* table( std::size_t node ) noexcept { return &tables_[node * words_]; }

  bool matches_target( std::uint64_t const* out ) const noexcept
  {
    auto const target = target_.words();
    if ( words_ > 1 && std::memcmp( out, target.data(), ( words_ - 1 ) * sizeof( std::uint64_t ) ) != 0 )
    {
      return false;
    }
    return ( out[words_ - 1] & mask_ ) == target[words_ - 1];
  }

  template<typename OnSolution>
  void descend( std::uint32_t gate, OnSolution& on_solution )
  {
    auto const choices = num_inputs_ + gate;
    auto* out = table( num_inputs_ + gate );
    bool const last = gate + 1 == num_gates_;
    for ( std::uint32_t a = 0; a < choices; ++a )
    {
      alleles_[2 * gate] = a;
      for ( std::uint32_t b = 0; b < choices; ++b )
      {
        alleles_[2 * gate + 1] = b;
        kernel_.nand( table( a ), table( b ), out, words_ );
        if ( last )
        {
          if ( matches_target( out ) )
          {
            on_solution( std::span<std::uint32_t const>( alleles_ ) );
          }
        }
        else
        {
          descend( gate + 1, on_solution );
        }
      }
    }
  }

  truth_table const& target_;
  std::uint32_t num_inputs_;
  std::uint32_t num_gates_;
  std::size_t words_;
  std::uint64_t mask_;
  kernels::kernel_set const& kernel_;
  std::vector<std::uint64_t> tables_;
  std::vector<std::uint32_t> alleles_;
};

} // namespace

solution_count count_solutions( truth_table const& target, std::uint32_t num_gates, std::uint64_t budget )
{
  if ( target.num_inputs() == 0 || num_gates == 0 )
  {
    throw arity_error( "counting needs at least one input and one gate" );
  }
  check_budget( target.num_inputs(), num_gates, budget );

  solution_count result;
  std::set<std::string> keys;
  solution_search search( target, num_gates );
  search.run( [&]( std::span<std::uint32_t const> alleles ) {
    auto genome = genome_from_alleles( target.num_inputs(), alleles );
    keys.insert( canonical_key( genome ) );
    if ( !result.first )
    {
      result.first = std::move( genome );
    }
    ++result.raw;
  } );
  result.canonical = keys.size();
  return result;
}

minimality_result minimal_gates( truth_table const& target, std::uint32_t max_gates, std::uint64_t budget )
{
  if ( target.num_inputs() == 0 )
  {
    throw arity_error( "target needs at least one input" );
  }
  for ( std::uint32_t g = 1; g <= max_gates; ++g )
  {
    check_budget( target.num_inputs(), g, budget );
  }

  minimality_result result{ target, max_gates, std::nullopt, std::nullopt, 0, 0 };
  for ( std::uint32_t g = 1; g <= max_gates; ++g )
  {
    auto count = count_solutions( target, g, budget );
    if ( count.raw > 0 )
    {
      result.minimal_gates = g;
      result.witness = std::move( count.first );
      result.raw_count = count.raw;
      result.canonical_count = count.canonical;
      break;
    }
  }
  return result;
}

std::string to_json( minimality_result const& result )
{
  using json = nlohmann::ordered_json;
  json doc;
  doc["target"] = result.target.to_bits();
  doc["max_gates"] = result.max_gates;
  if ( result.minimal_gates )
  {
    doc["result"] = "found";
    doc["minimal_gates"] = *result.minimal_gates;
    doc["witness"] = json::parse( export_json( *result.witness ) );
  }
  else
  {
    doc["result"] = "none up to budget";
    doc["minimal_gates"] = nullptr;
    doc["witness"] = nullptr;
  }
  doc["raw_count"] = result.raw_count;
  doc["canonical_count"] = result.canonical_count;
  return doc.dump();
}

} // namespace nandgen
