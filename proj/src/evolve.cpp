#include <nandgen/evolve.hpp>

#include <cmath>
#include <limits>
#include <optional>

namespace nandgen
{

std::uint64_t rng::below( std::uint64_t bound )
{
  // Rejection sampling on the raw 64-bit stream; std distributions are not
  // specified bit-for-bit across standard libraries.
  auto const threshold = ( std::numeric_limits<std::uint64_t>::max() - bound + 1 ) % bound;
  for ( ;; )
  {
    auto const r = engine_();
    if ( r >= threshold )
    {
      return r % bound;
    }
  }
}

void ga_config::set_mutation_rate( double rate )
{
  if ( !( rate >= 0.0 && rate <= 1.0 ) )
  {
    throw config_error( "mutation rate must lie in [0, 1]" );
  }
  mutation_millionths = static_cast<std::uint32_t>( std::llround( rate * rate_denominator ) );
}

void ga_config::validate() const
{
  if ( population_size < 2 )
  {
    throw config_error( "population size must be at least 2" );
  }
  if ( num_gates < 1 )
  {
    throw config_error( "at least one gate per circuit is required" );
  }
  if ( mutation_millionths > rate_denominator )
  {
    throw config_error( "mutation rate must lie in [0, 1]" );
  }
}

std::uint64_t run_outcome::generations() const noexcept
{
  if ( auto const* s = std::get_if<solved>( &status ) )
  {
    return s->generation;
  }
  return std::get<exhausted>( status ).generations_run;
}

nand_genome const& run_outcome::genome() const noexcept
{
  if ( auto const* s = std::get_if<solved>( &status ) )
  {
    return s->genome;
  }
  return std::get<exhausted>( status ).best.genome;
}

nand_genome random_genome( rng& gen, std::uint32_t num_inputs, std::uint32_t num_gates )
{
  std::vector<std::uint32_t> alleles( 2 * std::size_t{ num_gates } );
  for ( std::size_t g = 0; g < alleles.size(); ++g )
  {
    auto const choices = num_inputs + static_cast<std::uint32_t>( g / 2 );
    alleles[g] = static_cast<std::uint32_t>( gen.below( choices ) );
  }
  return genome_from_alleles( num_inputs, alleles );
}

nand_genome breed( nand_genome const& parent_a, nand_genome const& parent_b, rng& gen, ga_config const& config )
{
  if ( parent_a.num_inputs() != parent_b.num_inputs() || parent_a.num_gates() != parent_b.num_gates() )
  {
    throw arity_error( "parents differ in shape" );
  }
  auto const n = parent_a.num_inputs();
  auto const half = config.inherit_half_millionths();
  std::vector<std::uint32_t> alleles( parent_a.num_genes() );
  for ( std::size_t g = 0; g < alleles.size(); ++g )
  {
    // Branch draw over 2 * denominator so that each parent gets exactly
    // (1 - m) / 2 and mutation gets m.
    auto const u = gen.below( 2 * std::uint64_t{ rate_denominator } );
    if ( u < half )
    {
      alleles[g] = parent_a.gene( g ).allele( n );
    }
    else if ( u < 2 * std::uint64_t{ half } )
    {
      alleles[g] = parent_b.gene( g ).allele( n );
    }
    else
    {
      alleles[g] = static_cast<std::uint32_t>( gen.below( parent_a.allele_count( g ) ) );
    }
  }
  return genome_from_alleles( n, alleles );
}

population evaluate_population( std::vector<nand_genome> genomes, truth_table const& target )
{
  simulator sim( target.num_inputs() );
  auto const rows = static_cast<std::uint32_t>( target.num_rows() );
  population out;
  out.reserve( genomes.size() );
  for ( auto& genome : genomes )
  {
    auto const matches = static_cast<std::uint32_t>( sim.matches( genome, target ) );
    out.push_back( { std::move( genome ), { matches, rows } } );
  }
  return out;
}

population initial_population( truth_table const& target, rng& gen, ga_config const& config )
{
  std::vector<nand_genome> genomes;
  genomes.reserve( config.population_size );
  for ( std::uint32_t i = 0; i < config.population_size; ++i )
  {
    genomes.push_back( random_genome( gen, target.num_inputs(), config.num_gates ) );
  }
  return evaluate_population( std::move( genomes ), target );
}

population step_generation( population const& current, truth_table const& target, rng& gen, ga_config const& config,
                            run_hooks const& hooks )
{
  std::vector<std::size_t> pool;
  for ( std::size_t i = 0; i < current.size(); ++i )
  {
    if ( !current[i].fit.zero() )
    {
      pool.push_back( i );
    }
  }
  if ( pool.empty() )
  {
    if ( hooks.on_reseed )
    {
      hooks.on_reseed();
    }
    return initial_population( target, gen, config );
  }

  std::vector<nand_genome> children;
  children.reserve( config.population_size );
  for ( std::uint32_t c = 0; c < config.population_size; ++c )
  {
    auto const& a = current[pool[gen.below( pool.size() )]];
    auto const& b = current[pool[gen.below( pool.size() )]];
    if ( hooks.on_parents )
    {
      hooks.on_parents( a, b );
    }
    children.push_back( breed( a.genome, b.genome, gen, config ) );
  }
  return evaluate_population( std::move( children ), target );
}

run_outcome run_evolution( ga_config const& config, truth_table const& target, run_hooks const& hooks )
{
  config.validate();
  if ( config.num_inputs != 0 && config.num_inputs != target.num_inputs() )
  {
    throw arity_error( "configured for " + std::to_string( config.num_inputs ) + " inputs but the target has " +
                       std::to_string( target.num_inputs() ) );
  }

  rng gen( config.seed );
  std::vector<trace_row> trace;
  std::optional<individual> best;

  auto current = initial_population( target, gen, config );
  for ( std::uint64_t generation = 0;; ++generation )
  {
    if ( hooks.on_generation )
    {
      hooks.on_generation( generation, current );
    }
    if ( config.trace )
    {
      double total = 0.0;
      double top = 0.0;
      for ( auto const& member : current )
      {
        total += member.fit.as_double();
        top = std::max( top, member.fit.as_double() );
      }
      trace.push_back( { generation, top, total / static_cast<double>( current.size() ) } );
    }

    for ( auto const& member : current )
    {
      if ( member.fit.perfect() )
      {
        return { solved{ member.genome, generation }, std::move( trace ) };
      }
      if ( !best || member.fit > best->fit )
      {
        best = member;
      }
    }

    if ( generation >= config.max_generations )
    {
      return { exhausted{ *best, generation }, std::move( trace ) };
    }
    current = step_generation( current, target, gen, config, hooks );
  }
}

} // namespace nandgen
