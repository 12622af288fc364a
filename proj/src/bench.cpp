#include <nandgen/bench.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace nandgen
{

ga_config experiment_entry::config_for( std::uint32_t run_index ) const
{
  ga_config config;
  config.population_size = population_size;
  config.num_gates = num_gates;
  config.num_inputs = target.num_inputs();
  config.mutation_millionths = mutation_millionths;
  config.max_generations = max_generations;
  config.seed = seed_for( run_index );
  return config;
}

experiment_entry make_entry( std::string const& target, std::uint32_t num_gates )
{
  experiment_entry entry;
  entry.target = parse_target( target );
  entry.label = target;
  entry.num_gates = num_gates;
  return entry;
}

experiment_spec paper_default_spec( std::uint64_t base_seed, std::uint32_t runs, std::uint32_t population_size )
{
  experiment_spec spec;
  for ( auto const* name : { "and", "or", "nor", "xor", "xnor" } )
  {
    auto entry = make_entry( name, *preset_gate_count( name ) );
    entry.runs = runs;
    entry.population_size = population_size;
    entry.base_seed = base_seed;
    spec.entries.push_back( std::move( entry ) );
  }
  return spec;
}

std::optional<generation_stats> summarize( std::vector<std::uint64_t> generations )
{
  if ( generations.empty() )
  {
    return std::nullopt;
  }
  std::sort( generations.begin(), generations.end() );
  auto const n = generations.size();
  generation_stats stats{};
  double sum = 0.0;
  for ( auto g : generations )
  {
    sum += static_cast<double>( g );
  }
  stats.mean = sum / static_cast<double>( n );
  stats.median = n % 2 == 1 ? static_cast<double>( generations[n / 2] )
                            : ( static_cast<double>( generations[n / 2 - 1] ) + static_cast<double>( generations[n / 2] ) ) / 2.0;
  double squares = 0.0;
  for ( auto g : generations )
  {
    auto const d = static_cast<double>( g ) - stats.mean;
    squares += d * d;
  }
  stats.stddev = n > 1 ? std::sqrt( squares / static_cast<double>( n - 1 ) ) : 0.0;
  stats.min = generations.front();
  stats.max = generations.back();
  return stats;
}

void aggregate( entry_report& report )
{
  std::vector<std::uint64_t> generations;
  std::set<std::string> keys;
  report.solve_count = 0;
  report.exhausted_count = 0;
  for ( auto const& row : report.rows )
  {
    if ( row.solved )
    {
      ++report.solve_count;
      generations.push_back( row.generations );
      keys.insert( row.distinct_key );
    }
    else
    {
      ++report.exhausted_count;
    }
  }
  report.stats = summarize( std::move( generations ) );
  report.distinct_solution_count = static_cast<std::uint32_t>( keys.size() );
}

run_row run_single( experiment_entry const& entry, std::uint32_t run_index )
{
  auto const config = entry.config_for( run_index );
  auto const outcome = run_evolution( config, entry.target );
  auto const& genome = outcome.genome();
  run_row row{ run_index, config.seed, outcome.is_solved(), outcome.generations(), genome,
               fitness( genome, entry.target ), {} };
  if ( row.solved )
  {
    row.distinct_key = to_hex( canonical_key( genome ) );
  }
  return row;
}

experiment_report run_experiment( experiment_spec const& spec, unsigned threads )
{
  struct task
  {
    std::size_t entry;
    std::uint32_t run;
  };

  experiment_report report;
  std::vector<task> tasks;
  for ( std::size_t e = 0; e < spec.entries.size(); ++e )
  {
    auto const& entry = spec.entries[e];
    try
    {
      if ( entry.runs < 1 )
      {
        throw config_error( "runs must be at least 1" );
      }
      entry.config_for( 0 ).validate();
    }
    catch ( config_error const& err )
    {
      throw config_error( "experiment entry " + std::to_string( e ) + " (" + entry.label + "): " + err.what() );
    }
    report.entries.push_back( { entry, {}, 0, 0, std::nullopt, 0 } );
    for ( std::uint32_t r = 0; r < entry.runs; ++r )
    {
      tasks.push_back( { e, r } );
    }
  }

  std::vector<std::optional<run_row>> rows( tasks.size() );
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for ( std::size_t i = next++; i < tasks.size(); i = next++ )
    {
      try
      {
        rows[i] = run_single( spec.entries[tasks[i].entry], tasks[i].run );
      }
      catch ( ... )
      {
        std::lock_guard guard( failure_lock );
        if ( !failure )
        {
          failure = std::current_exception();
        }
      }
    }
  };

  if ( threads == 0 )
  {
    threads = std::max( 1u, std::thread::hardware_concurrency() );
  }
  threads = static_cast<unsigned>( std::min<std::size_t>( threads, std::max<std::size_t>( tasks.size(), 1 ) ) );
  {
    std::vector<std::jthread> pool;
    for ( unsigned t = 1; t < threads; ++t )
    {
      pool.emplace_back( worker );
    }
    worker();
  }
  if ( failure )
  {
    std::rethrow_exception( failure );
  }

  for ( std::size_t i = 0; i < tasks.size(); ++i )
  {
    report.entries[tasks[i].entry].rows.push_back( std::move( *rows[i] ) );
  }
  for ( auto& entry : report.entries )
  {
    aggregate( entry );
  }
  return report;
}

} // namespace nandgen
