#include <nandgen/bench.hpp>

#include "reference.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

using namespace nandgen;
using namespace nandgen::testing;

namespace
{

std::vector<std::vector<std::string>> parse_csv( std::string const& text )
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in( text );
  std::string line;
  while ( std::getline( in, line ) )
  {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream cells( line );
    while ( std::getline( cells, field, ',' ) )
    {
      fields.push_back( field );
    }
    if ( !line.empty() && line.back() == ',' )
    {
      fields.emplace_back();
    }
    rows.push_back( std::move( fields ) );
  }
  return rows;
}

experiment_spec small_spec()
{
  experiment_spec spec;
  auto a = make_entry( "and", 2 );
  a.runs = 6;
  a.base_seed = 10;
  auto x = make_entry( "tt:0110", 4 );
  x.runs = 5;
  x.base_seed = 500;
  auto o = make_entry( "or", 3 );
  o.runs = 4;
  o.population_size = 12;
  o.base_seed = 3;
  spec.entries = { a, x, o };
  return spec;
}

} // namespace

TEST_CASE( "summarize" )
{
  auto const s = *summarize( { 4, 1, 3, 2 } );
  CHECK( s.mean == 2.5 );
  CHECK( s.median == 2.5 );
  CHECK( s.stddev == doctest::Approx( std::sqrt( 5.0 / 3.0 ) ) );
  CHECK( s.min == 1 );
  CHECK( s.max == 4 );
  auto const one = *summarize( { 7 } );
  CHECK( one.median == 7.0 );
  CHECK( one.stddev == 0.0 );
  CHECK( summarize( { 5, 1, 9 } )->median == 5.0 );
  CHECK_FALSE( summarize( {} ) );
}

TEST_CASE( "default experiment spec" )
{
  auto const spec = paper_default_spec( 42 );
  REQUIRE( spec.entries.size() == 5 );
  std::vector<std::pair<std::string, std::uint32_t>> shape;
  for ( auto const& e : spec.entries )
  {
    shape.emplace_back( e.label, e.num_gates );
    CHECK( e.population_size == 10 );
    CHECK( e.runs == 10 );
    CHECK( e.mutation_millionths == 100000 );
    CHECK( e.base_seed == 42 );
  }
  CHECK( shape == std::vector<std::pair<std::string, std::uint32_t>>{
                      { "and", 2 }, { "or", 3 }, { "nor", 4 }, { "xor", 4 }, { "xnor", 5 } } );

  auto const report = run_experiment( spec );
  REQUIRE( report.entries.size() == 5 );
  for ( auto const& entry : report.entries )
  {
    CHECK( entry.rows.size() == 10 );
    CHECK( entry.solve_count + entry.exhausted_count == 10 );
  }
  auto const csv = parse_csv( emit_csv( report ) );
  CHECK( csv.size() == 1 + 50 + 5 );
}

TEST_CASE( "a single run reproduces run_evolution" )
{
  auto entry = make_entry( "xor", 4 );
  entry.runs = 1;
  entry.base_seed = 99;
  auto const report = run_experiment( { { entry } } );
  auto const outcome = run_evolution( entry.config_for( 0 ), entry.target );
  auto const& row = report.entries[0].rows.at( 0 );
  CHECK( row.seed == 99 );
  CHECK( row.solved == outcome.is_solved() );
  CHECK( row.generations == outcome.generations() );
  CHECK( row.genome == outcome.genome() );
  auto const& stats = *report.entries[0].stats;
  CHECK( stats.mean == static_cast<double>( outcome.generations() ) );
  CHECK( stats.min == outcome.generations() );
  CHECK( report.entries[0].distinct_solution_count == 1 );
}

TEST_CASE( "CSV layout and aggregate consistency" )
{
  auto const report = run_experiment( small_spec() );
  auto const text = emit_csv( report );
  CHECK( text.find( '\r' ) == std::string::npos );
  auto const csv = parse_csv( text );
  REQUIRE( csv.size() == 1 + 15 + 3 );
  CHECK( text.substr( 0, text.find( '\n' ) ) ==
         "kind,target,num_gates,population_size,mutation_rate,seed,run_index,solved,generations,distinct_key,"
         "mean,median,stddev,min,max,solve_count,exhausted_count" );
  for ( auto const& row : csv )
  {
    REQUIRE( row.size() == 17 );
  }

  for ( std::size_t e = 0; e < 3; ++e )
  {
    auto const& summary = csv[16 + e];
    REQUIRE( summary[0] == "summary" );
    std::vector<double> generations;
    std::set<std::string> keys;
    std::size_t exhausted_rows = 0;
    for ( std::size_t r = 1; r <= 15; ++r )
    {
      auto const& row = csv[r];
      if ( row[1] != summary[1] )
      {
        continue;
      }
      CHECK( row[0] == "run" );
      CHECK( row[10].empty() );
      CHECK( row[16].empty() );
      if ( row[7] == "1" )
      {
        generations.push_back( std::stod( row[8] ) );
        keys.insert( row[9] );
        CHECK_FALSE( row[9].empty() );
      }
      else
      {
        ++exhausted_rows;
        CHECK( row[9].empty() );
      }
    }
    auto const n = static_cast<double>( generations.size() );
    double mean = 0;
    for ( auto g : generations )
    {
      mean += g;
    }
    mean /= n;
    double var = 0;
    for ( auto g : generations )
    {
      var += ( g - mean ) * ( g - mean );
    }
    auto sorted = generations;
    std::sort( sorted.begin(), sorted.end() );
    auto const median = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                          : ( sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2] ) / 2;
    CHECK( std::stod( summary[10] ) == doctest::Approx( mean ) );
    CHECK( std::stod( summary[11] ) == doctest::Approx( median ) );
    CHECK( std::stod( summary[12] ) == doctest::Approx( n > 1 ? std::sqrt( var / ( n - 1 ) ) : 0.0 ) );
    CHECK( std::stod( summary[13] ) == sorted.front() );
    CHECK( std::stod( summary[14] ) == sorted.back() );
    CHECK( std::stoul( summary[15] ) == generations.size() );
    CHECK( std::stoul( summary[16] ) == exhausted_rows );
    CHECK( report.entries[e].distinct_solution_count == keys.size() );
    CHECK( report.entries[e].distinct_solution_count <= report.entries[e].solve_count );
  }
}

TEST_CASE( "empty report" )
{
  auto const csv = emit_csv( {} );
  CHECK( std::count( csv.begin(), csv.end(), '\n' ) == 1 );
  CHECK( csv.starts_with( "kind,target," ) );
}

TEST_CASE( "reports do not depend on threads or entry order" )
{
  auto const spec = small_spec();
  auto const base = emit_csv( run_experiment( spec, 1 ) );
  CHECK( emit_csv( run_experiment( spec, 4 ) ) == base );
  CHECK( emit_csv( run_experiment( spec, 1 ) ) == base );

  auto reversed = spec;
  std::reverse( reversed.entries.begin(), reversed.entries.end() );
  auto const forward = run_experiment( spec );
  auto const backward = run_experiment( reversed );
  for ( std::size_t e = 0; e < 3; ++e )
  {
    auto const& f = forward.entries[e].rows;
    auto const& b = backward.entries[2 - e].rows;
    REQUIRE( f.size() == b.size() );
    for ( std::size_t r = 0; r < f.size(); ++r )
    {
      CHECK( f[r].seed == b[r].seed );
      CHECK( f[r].generations == b[r].generations );
      CHECK( f[r].genome == b[r].genome );
    }
  }
}

TEST_CASE( "distinct solutions are sound" )
{
  auto const report = run_experiment( small_spec() );
  for ( auto const& entry : report.entries )
  {
    for ( auto const& row : entry.rows )
    {
      if ( row.solved )
      {
        CHECK( reference_rows( row.genome ) == entry.entry.target.to_bits() );
        CHECK( row.distinct_key == to_hex( canonical_key( row.genome ) ) );
      }
    }
  }
}

TEST_CASE( "exhausted runs are recorded, not raised" )
{
  auto entry = make_entry( "xnor", 5 );
  entry.runs = 8;
  entry.max_generations = 0;
  auto const report = run_experiment( { { entry } } );
  auto const& e = report.entries[0];
  CHECK( e.exhausted_count > 0 );
  CHECK( e.solve_count + e.exhausted_count == 8 );
  for ( auto const& row : e.rows )
  {
    if ( !row.solved )
    {
      CHECK( row.generations == 0 );
      CHECK( row.best_fitness == fitness( row.genome, entry.target ) );
    }
  }
  if ( e.solve_count == 0 )
  {
    CHECK_FALSE( e.stats );
    auto const csv = parse_csv( emit_csv( report ) );
    CHECK( csv.back()[10].empty() );
  }
}

TEST_CASE( "config errors name the entry" )
{
  auto spec = small_spec();
  spec.entries[1].population_size = 1;
  try
  {
    run_experiment( spec );
    FAIL( "expected config_error" );
  }
  catch ( config_error const& e )
  {
    CHECK( std::string( e.what() ).find( "entry 1" ) != std::string::npos );
  }
  spec = small_spec();
  spec.entries[2].runs = 0;
  CHECK_THROWS_AS( run_experiment( spec ), config_error );
}

TEST_CASE( "experiment spec parsing" )
{
  auto const spec = parse_experiment_spec( R"({"entries":[
      {"target":"xnor","population_size":20,"runs":30,"base_seed":7},
      {"target":"tt:01101001","num_gates":6,"mutation_rate":0.05,"max_generations":500}]})" );
  REQUIRE( spec.entries.size() == 2 );
  CHECK( spec.entries[0].num_gates == 5 );
  CHECK( spec.entries[0].population_size == 20 );
  CHECK( spec.entries[0].runs == 30 );
  CHECK( spec.entries[0].base_seed == 7 );
  CHECK( spec.entries[0].mutation_millionths == 100000 );
  CHECK( spec.entries[1].target.num_inputs() == 3 );
  CHECK( spec.entries[1].mutation_millionths == 50000 );
  CHECK( spec.entries[1].max_generations == 500 );

  auto const error_at = []( std::string const& text ) -> std::string {
    try
    {
      parse_experiment_spec( text );
    }
    catch ( format_error const& e )
    {
      return e.what();
    }
    return "no error";
  };
  CHECK( error_at( R"({"entries":[{"target":"tt:0110"}]})" ).find( "/entries/0/num_gates" ) != std::string::npos );
  CHECK( error_at( R"({"entries":[{"target":"and","runs":0}]})" ).find( "/entries/0/runs" ) != std::string::npos );
  CHECK( error_at( R"({"entries":[{"target":"and","runs":"3"}]})" ).find( "/entries/0/runs" ) != std::string::npos );
  CHECK( error_at( R"({"entries":[{"target":"and"},{"target":"mux"}]})" ).find( "/entries/1/target" ) !=
         std::string::npos );
  CHECK( error_at( R"({"entries":[{"target":"and","mutation_rate":2}]})" ).find( "mutation_rate" ) !=
         std::string::npos );
  CHECK( error_at( R"({"entries":[{"target":"and","popsize":3}]})" ).find( "popsize" ) != std::string::npos );
  CHECK( error_at( R"({"entries":{}})" ).find( "/entries" ) != std::string::npos );
  CHECK( error_at( R"({"entries":[)" ).find( "byte" ) != std::string::npos );
}

TEST_CASE( "plot outputs" )
{
  auto const report = run_experiment( small_spec() );
  auto const table = emit_plot_table( report );
  CHECK( std::count( table.begin(), table.end(), '\n' ) == 4 );
  CHECK( table.starts_with( "label\tnum_gates\tpopulation_size\tmean\tstddev\n" ) );
  auto const svg = emit_plot_svg( report );
  CHECK( svg.starts_with( "<svg" ) );
  std::size_t rects = 0;
  for ( auto pos = svg.find( "<rect" ); pos != std::string::npos; pos = svg.find( "<rect", pos + 1 ) )
  {
    ++rects;
  }
  CHECK( rects == 3 );
  CHECK( svg.find( ">tt:0110<" ) != std::string::npos );
}

TEST_CASE( "number formatting round-trips" )
{
  CHECK( format_number( 0.1 ) == "0.1" );
  CHECK( format_number( 2.5 ) == "2.5" );
  CHECK( format_number( 3.0 ) == "3" );
  CHECK( std::stod( format_number( 1.0 / 3.0 ) ) == 1.0 / 3.0 );
}
